//! Monomial representations of Z_r wr S_n and their characters.
//!
//! For a weight vector k the module has one basis monomial per distinct
//! arrangement of the exponent partition; group elements act by permuting
//! variables and scaling by inverse root-of-unity powers. The character is
//! computed as the honest trace over arrangements fixed by the permutation
//! part. (A monomial matrix has at most one nonzero entry per row, so
//! diagonal entries appear exactly at the fixed arrangements; permutation
//! parts fixing several arrangements contribute several terms.)
//!
//! The symmetric-group side carries a Murnaghan-Nakayama character table,
//! used to decompose the permutation action on parking-function orbits.

use num_bigint::BigUint;

use crate::combinat::{
    conjugacy_class_size, multiset_permutations, partitions, Perm,
};
use crate::cyclotomic::{CycRat, Cyclotomic};
use crate::error::{Error, Result};
use crate::qcatalan::{
    enumerate_compositions, enumerate_weight_vectors, multinomial, WeightVector,
};

/// The monomial module attached to a weight vector: its basis is every
/// distinct arrangement of the exponent partition, in lexicographic order.
#[derive(Clone, Debug)]
pub struct MonomialModule {
    k: WeightVector,
    basis: Vec<Vec<u32>>,
}

impl MonomialModule {
    pub fn new(k: &WeightVector) -> MonomialModule {
        let basis = multiset_permutations(&k.partition());
        MonomialModule {
            k: k.clone(),
            basis,
        }
    }

    pub fn weight(&self) -> &WeightVector {
        &self.k
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }
}

/// Degree of the monomial module: the multinomial coefficient of k.
pub fn module_dimension(k: &WeightVector) -> BigUint {
    multinomial(k)
}

/// True iff r divides sum(i * k_i), i.e. the diagonal subgroup acts
/// trivially and the module descends to the quotient group.
pub fn descends_to_quotient(k: &WeightVector) -> bool {
    k.descends_to_quotient()
}

/// Character of the monomial module at (g, sigma), where g lists residues
/// mod r. Sums xi^{-sum_i g_i a_i} over the arrangements a fixed by sigma.
pub fn character_value(k: &WeightVector, g: &[u32], sigma: &Perm) -> Result<Cyclotomic> {
    let n = k.n() as usize;
    let r = k.r() as i64;
    if g.len() != n || sigma.degree() != n {
        return Err(Error::InvalidParameter(format!(
            "character at n = {n} needs {n} residues and a degree-{n} permutation, got {} and {}",
            g.len(),
            sigma.degree()
        )));
    }
    if let Some(&bad) = g.iter().find(|&&x| x as i64 >= r) {
        return Err(Error::InvalidParameter(format!(
            "residue {bad} out of range 0..{r}"
        )));
    }
    let mut trace = Cyclotomic::zero(r as usize);
    for a in multiset_permutations(&k.partition()) {
        // fixed by sigma: a_{sigma(i)} = a_i for all i
        if (0..n).all(|i| a[sigma.apply(i)] == a[i]) {
            let e: i64 = (0..n).map(|i| g[i] as i64 * a[i] as i64).sum();
            trace.add_root_power(-e);
        }
    }
    Ok(trace)
}

/// Constituents of the induced trivial representation: all weight vectors
/// with sum n for the full wreath product, or only those satisfying the
/// descent criterion when `quotient` is set. Colexicographic order.
pub fn induced_decomposition(n: u32, r: u32, quotient: bool) -> Result<Vec<WeightVector>> {
    if quotient {
        enumerate_weight_vectors(n, r)
    } else {
        enumerate_compositions(n, r)
    }
}

/// Multiplicity of the constituent in the induced trivial representation,
/// computed from the definition: average the character over S_n. The
/// result must be an exact nonnegative integer (and the decompositions
/// here are multiplicity free, so constituents give 1).
pub fn multiplicity_in_induced(k: &WeightVector, quotient: bool) -> Result<u64> {
    let n = k.n();
    if n > 5 {
        return Err(Error::SizeGuard {
            what: "multiplicity_in_induced",
            param: "n",
            max: 5,
            got: n as u64,
        });
    }
    if quotient && !k.descends_to_quotient() {
        return Err(Error::InvalidParameter(format!(
            "{:?} does not descend to the quotient (r does not divide the weighted sum)",
            k.entries()
        )));
    }
    let zeros = vec![0u32; n as usize];
    let mut sum = Cyclotomic::zero(k.r() as usize);
    for sigma in Perm::all(n as usize) {
        sum.add_assign(&character_value(k, &zeros, &sigma)?);
    }
    let n_fact: i64 = (1..=n as i64).product();
    let value = CycRat::new(sum, n_fact);
    let m = crate::cyclotomic::expect_integer(&value, "multiplicity average")?;
    if m < 0 {
        return Err(Error::Invariant(format!("negative multiplicity {m}")));
    }
    Ok(m as u64)
}

/// Irreducible S_n character value chi_mu(cycle type), by the
/// Murnaghan-Nakayama rim-hook recursion on beta sets.
pub fn sn_character(mu: &[u32], cycle_type: &[u32]) -> Result<i64> {
    validate_partition(mu, "mu")?;
    validate_partition(cycle_type, "cycle_type")?;
    let n: u32 = mu.iter().sum();
    let m: u32 = cycle_type.iter().sum();
    if n != m {
        return Err(Error::InvalidParameter(format!(
            "|mu| = {n} but |cycle type| = {m}"
        )));
    }
    if n > 12 {
        return Err(Error::SizeGuard {
            what: "sn_character",
            param: "n",
            max: 12,
            got: n as u64,
        });
    }
    Ok(murnaghan_nakayama(mu, cycle_type))
}

fn validate_partition(parts: &[u32], name: &str) -> Result<()> {
    let decreasing = parts.windows(2).all(|w| w[0] >= w[1]);
    if !decreasing || parts.contains(&0) {
        return Err(Error::InvalidParameter(format!(
            "{name} = {parts:?} is not a partition (weakly decreasing, positive parts)"
        )));
    }
    Ok(())
}

fn murnaghan_nakayama(mu: &[u32], rho: &[u32]) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let t = rho[0];
    let rest = &rho[1..];
    // beta set: mu_i + (l - 1 - i), strictly decreasing
    let l = mu.len();
    let beta: Vec<u32> = mu
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (l - 1 - i) as u32)
        .collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < t {
            continue;
        }
        let target = b - t;
        if beta.contains(&target) {
            continue;
        }
        // height of the rim hook = beads strictly between target and b
        let height = beta.iter().filter(|&&x| target < x && x < b).count();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        let mut new_beta = beta.clone();
        new_beta[i] = target;
        new_beta.sort_unstable_by(|a, b| b.cmp(a));
        let new_mu: Vec<u32> = new_beta
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (l - 1 - j) as u32)
            .filter(|&p| p > 0)
            .collect();
        total += sign * murnaghan_nakayama(&new_mu, rest);
    }
    total
}

/// The full character table of S_n: rows and columns both indexed by
/// partitions of n in reverse lexicographic order.
#[derive(Clone, Debug)]
pub struct SnCharacterTable {
    pub n: u32,
    pub partitions: Vec<Vec<u32>>,
    pub class_sizes: Vec<u64>,
    /// `values[mu_index][class_index]`.
    pub values: Vec<Vec<i64>>,
}

pub fn sn_character_table(n: u32) -> Result<SnCharacterTable> {
    if n < 1 || n > 8 {
        return Err(Error::SizeGuard {
            what: "sn_character_table",
            param: "n",
            max: 8,
            got: n as u64,
        });
    }
    let parts = partitions(n as usize);
    let class_sizes: Vec<u64> = parts.iter().map(|t| conjugacy_class_size(t)).collect();
    let mut values = Vec::with_capacity(parts.len());
    for mu in &parts {
        let row: Result<Vec<i64>> = parts.iter().map(|rho| sn_character(mu, rho)).collect();
        values.push(row?);
    }
    Ok(SnCharacterTable {
        n,
        partitions: parts,
        class_sizes,
        values,
    })
}

/// One row of the orbit multiplicity table: a parking-function orbit and
/// the multiplicity of each S_n irreducible in its permutation module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitMultiplicityRow {
    pub orbit: Vec<u8>,
    pub orbit_size: u64,
    /// Parallel to `SnCharacterTable::partitions`.
    pub multiplicities: Vec<u64>,
}

/// Decomposes the S_n permutation action on every parking-function orbit
/// against the irreducible characters. The trivial multiplicity is 1 in
/// every row: each orbit is a single transitive piece.
pub fn orbit_multiplicity_table(n: u32) -> Result<(SnCharacterTable, Vec<OrbitMultiplicityRow>)> {
    if n < 1 || n > 6 {
        return Err(Error::SizeGuard {
            what: "orbit_multiplicity_table",
            param: "n",
            max: 6,
            got: n as u64,
        });
    }
    let table = sn_character_table(n)?;
    let n_fact: u64 = (1..=n as u64).product();
    let orbits = crate::parking::orbit_decomposition(n)?;
    let mut rows = Vec::with_capacity(orbits.len());
    for (rep, orbit_size) in orbits {
        let rep_u32: Vec<u32> = rep.iter().map(|&x| x as u32).collect();
        let arrangements = multiset_permutations(&rep_u32);
        debug_assert_eq!(arrangements.len() as u64, orbit_size);
        // permutation-character value per class: fixed arrangements of a
        // class representative
        let fixed_per_class: Vec<u64> = table
            .partitions
            .iter()
            .map(|rho| {
                let sigma = Perm::with_cycle_type(rho);
                arrangements
                    .iter()
                    .filter(|a| (0..n as usize).all(|i| a[sigma.apply(i)] == a[i]))
                    .count() as u64
            })
            .collect();
        let multiplicities: Result<Vec<u64>> = (0..table.partitions.len())
            .map(|mu_idx| {
                let dot: i64 = (0..table.partitions.len())
                    .map(|c| {
                        table.class_sizes[c] as i64
                            * fixed_per_class[c] as i64
                            * table.values[mu_idx][c]
                    })
                    .sum();
                if dot < 0 || dot as u64 % n_fact != 0 {
                    return Err(Error::Invariant(format!(
                        "non-integral multiplicity {dot}/{n_fact} for orbit {rep:?}"
                    )));
                }
                Ok(dot as u64 / n_fact)
            })
            .collect();
        rows.push(OrbitMultiplicityRow {
            orbit: rep,
            orbit_size,
            multiplicities: multiplicities?,
        });
    }
    Ok((table, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcatalan::WeightVector;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn wv(entries: &[u32]) -> WeightVector {
        WeightVector::new(entries.to_vec())
    }

    #[test]
    fn module_basics() {
        let m = MonomialModule::new(&wv(&[1, 1, 0, 1]));
        assert_eq!(m.dim(), 6);
        assert_eq!(module_dimension(m.weight()), BigUint::from(6u32));
        // basis is lexicographically sorted and duplicate-free
        assert!(m.basis().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(module_dimension(&wv(&[3, 0, 0, 0])), BigUint::from(1u32));
        // length contract enforced at construction
        assert!(WeightVector::checked(vec![0, 2, 3], 4).is_err());
    }

    #[test]
    fn descent_criterion() {
        assert!(descends_to_quotient(&wv(&[3, 0, 0, 0])));
        assert!(!descends_to_quotient(&wv(&[1, 1, 1, 0])));
        assert!(descends_to_quotient(&wv(&[0, 0, 1, 2])));
    }

    #[test]
    fn character_at_identity_is_dimension() {
        for k in [wv(&[1, 1, 0, 1]), wv(&[0, 2, 1, 0]), wv(&[2, 1, 1]), wv(&[0, 0, 1, 2])] {
            let n = k.n() as usize;
            let chi = character_value(&k, &vec![0; n], &Perm::identity(n)).unwrap();
            assert_eq!(
                chi.as_integer(),
                Some(module_dimension(&k).to_i64().unwrap())
            );
        }
    }

    #[test]
    fn trivial_module_character_is_one() {
        let k = wv(&[3, 0, 0, 0]);
        for sigma in Perm::all(3) {
            for g in [[0u32, 0, 0], [1, 2, 3], [3, 3, 3]] {
                let chi = character_value(&k, &g, &sigma).unwrap();
                assert_eq!(chi.as_integer(), Some(1));
            }
        }
    }

    #[test]
    fn two_dim_example_vanishing_trace() {
        // k = (1,1), r = 2, g = (0,1), sigma = id: trace 1 + xi^{-1} = 0
        let k = wv(&[1, 1]);
        let chi = character_value(&k, &[0, 1], &Perm::identity(2)).unwrap();
        assert_eq!(chi.as_integer(), Some(0));
    }

    #[test]
    fn character_constant_on_conjugacy_classes() {
        let k = wv(&[1, 1, 0, 1]);
        let g = [1u32, 3, 2];
        for sigma in Perm::all(3) {
            for tau in Perm::all(3) {
                // conjugate (g, sigma) by (0, tau); the gamma part permutes
                let conj_sigma = tau.compose(&sigma).compose(&tau.inverse());
                let mut conj_g = [0u32; 3];
                for i in 0..3 {
                    conj_g[tau.apply(i)] = g[i];
                }
                let a = character_value(&k, &g, &sigma).unwrap();
                let b = character_value(&k, &conj_g, &conj_sigma).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn descended_characters_constant_on_diagonal_cosets() {
        for k in enumerate_weight_vectors(3, 4).unwrap() {
            for sigma in Perm::all(3) {
                let g = [1u32, 0, 2];
                let base = character_value(&k, &g, &sigma).unwrap();
                for c in 0..4u32 {
                    let shifted: Vec<u32> = g.iter().map(|&x| (x + c) % 4).collect();
                    assert_eq!(
                        character_value(&k, &shifted, &sigma).unwrap(),
                        base,
                        "k = {:?}, c = {c}",
                        k.entries()
                    );
                }
            }
        }
    }

    #[test]
    fn decomposition_counts() {
        assert_eq!(induced_decomposition(3, 4, true).unwrap().len(), 5);
        assert_eq!(induced_decomposition(3, 4, false).unwrap().len(), 20);
        let d1 = induced_decomposition(1, 2, true).unwrap();
        assert_eq!(d1.len(), 1);
        assert_eq!(d1[0].entries(), &[1, 0]);
    }

    #[test]
    fn multiplicity_free_small_cases() {
        // full wreath and quotient both multiplicity free
        for n in 1..=4u32 {
            for r in [n.max(2), n + 1] {
                for k in induced_decomposition(n, r, false).unwrap() {
                    assert_eq!(multiplicity_in_induced(&k, false).unwrap(), 1);
                }
                for k in induced_decomposition(n, r, true).unwrap() {
                    assert_eq!(multiplicity_in_induced(&k, true).unwrap(), 1);
                }
            }
        }
        // dimension count: constituent dimensions of the quotient sum to
        // the point count (n+1)^{n-1}
        for n in 1..=5u32 {
            let total: BigUint = enumerate_weight_vectors(n, n + 1)
                .unwrap()
                .iter()
                .map(module_dimension)
                .sum();
            assert_eq!(total, crate::parking::parking_count(n));
        }
    }

    #[test]
    fn quotient_multiplicity_rejects_non_descending() {
        let k = wv(&[1, 1, 1, 0]); // weighted sum 3, r = 4
        assert!(multiplicity_in_induced(&k, true).is_err());
        assert_eq!(multiplicity_in_induced(&k, false).unwrap(), 1);
    }

    #[test]
    fn murnaghan_nakayama_known_values() {
        // trivial character
        for rho in partitions(5) {
            assert_eq!(sn_character(&[5], &rho).unwrap(), 1);
        }
        // sign of a transposition
        assert_eq!(sn_character(&[1, 1, 1], &[2, 1]).unwrap(), -1);
        // dimension of the standard 2-dim S_3 irreducible
        assert_eq!(sn_character(&[2, 1], &[1, 1, 1]).unwrap(), 2);
        // sign character equals parity on every class
        for rho in partitions(6) {
            let transpositions: u32 = rho.iter().map(|&c| c - 1).sum();
            let expected = if transpositions % 2 == 0 { 1 } else { -1 };
            assert_eq!(sn_character(&[1; 6], &rho).unwrap(), expected);
        }
        assert!(sn_character(&[2, 1], &[2, 2]).is_err()); // size mismatch
        assert!(sn_character(&[1, 2], &[2, 1]).is_err()); // not a partition
    }

    #[test]
    fn character_table_column_orthogonality() {
        for n in 1..=6u32 {
            let t = sn_character_table(n).unwrap();
            let n_fact: i64 = (1..=n as i64).product();
            let classes = t.partitions.len();
            for c1 in 0..classes {
                for c2 in 0..classes {
                    let dot: i64 = (0..classes)
                        .map(|mu| t.values[mu][c1] * t.values[mu][c2])
                        .sum();
                    let expected = if c1 == c2 {
                        n_fact / t.class_sizes[c1] as i64
                    } else {
                        0
                    };
                    assert_eq!(dot, expected, "n = {n}, classes {c1},{c2}");
                }
            }
        }
    }

    #[test]
    fn dimensions_from_identity_column_square_sum() {
        for n in 1..=7u32 {
            let t = sn_character_table(n).unwrap();
            let id_class = t
                .partitions
                .iter()
                .position(|p| p.iter().all(|&x| x == 1))
                .unwrap();
            let square_sum: i64 = t.values.iter().map(|row| row[id_class].pow(2)).sum();
            let n_fact: i64 = (1..=n as i64).product();
            assert_eq!(square_sum, n_fact);
            assert!(t.values.iter().all(|row| row[id_class] > 0));
        }
    }

    #[test]
    fn pf3_multiplicity_table_matches_published_rows() {
        let (table, rows) = orbit_multiplicity_table(3).unwrap();
        let col = |p: &[u32]| {
            table
                .partitions
                .iter()
                .position(|q| q == &p.to_vec())
                .unwrap()
        };
        let (triv, two_dim, sign) = (col(&[3]), col(&[2, 1]), col(&[1, 1, 1]));
        let get = |orbit: &[u8]| {
            rows.iter()
                .find(|r| r.orbit == orbit)
                .map(|r| {
                    (
                        r.multiplicities[triv],
                        r.multiplicities[sign],
                        r.multiplicities[two_dim],
                    )
                })
                .unwrap()
        };
        assert_eq!(get(&[1, 1, 1]), (1, 0, 0));
        assert_eq!(get(&[1, 1, 2]), (1, 0, 1));
        assert_eq!(get(&[1, 1, 3]), (1, 0, 1));
        assert_eq!(get(&[1, 2, 2]), (1, 0, 1));
        assert_eq!(get(&[1, 2, 3]), (1, 1, 2));
    }

    #[test]
    fn trivial_multiplicity_is_one_in_every_orbit() {
        for n in 1..=5u32 {
            let (table, rows) = orbit_multiplicity_table(n).unwrap();
            let triv = table
                .partitions
                .iter()
                .position(|p| p == &vec![n])
                .unwrap();
            let id_class = table
                .partitions
                .iter()
                .position(|p| p.iter().all(|&x| x == 1))
                .unwrap();
            for row in &rows {
                assert_eq!(row.multiplicities[triv], 1, "orbit {:?}", row.orbit);
                // dimension check: multiplicities weighted by irreducible
                // dimensions recover the orbit size
                let dim_sum: u64 = row
                    .multiplicities
                    .iter()
                    .zip(&table.values)
                    .map(|(m, chi)| m * chi[id_class] as u64)
                    .sum();
                assert_eq!(dim_sum, row.orbit_size);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn multiplicity_average_is_integral_for_any_weight(
            entries in proptest::collection::vec(0u32..4, 2..5)
        ) {
            let total: u32 = entries.iter().sum();
            prop_assume!(total >= 1 && total <= 5);
            let k = WeightVector::new(entries);
            let m = multiplicity_in_induced(&k, false).unwrap();
            prop_assert_eq!(m, 1);
        }
    }
}
