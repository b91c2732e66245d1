//! Decides whether (Gamma wr S_n, diag(Gamma) x S_n) is a Gelfand pair for
//! an arbitrary finite Gamma.
//!
//! The test never touches irreducible characters of the wreath product:
//! the pair is Gelfand iff the centralizer algebra of the action on
//! X = Gamma^n / diag is commutative, and that algebra is spanned by the
//! orbital matrices of the suborbits of X. Commutativity reduces to the
//! symmetry p[i][j][k] = p[j][i][k] of the intersection numbers, so the
//! whole decision runs on |Gamma|^{n-1} points instead of |Gamma|^n n!
//! group elements. That is what makes the larger verdicts (7776 and 28224
//! points) quick.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::combinat::Perm;
use crate::error::{Error, Result};
use crate::groups::{coset_space, Budget, CosetSpace, FiniteGroup};
use crate::qcatalan::enumerate_weight_vectors;
use crate::repthy::multiplicity_in_induced;

/// Suborbit labelling of a coset space: the partition of X into orbits of
/// K = diag(Gamma) x S_n, with the base point's orbit labelled 0.
#[derive(Clone, Debug)]
pub struct SuborbitTable {
    space: CosetSpace,
    labels: Vec<u32>,
    reps: Vec<usize>,
    sizes: Vec<usize>,
}

impl SuborbitTable {
    pub fn space(&self) -> &CosetSpace {
        &self.space
    }

    /// Number of suborbits; equals the number of K-double cosets in the
    /// wreath product.
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn label(&self, x: usize) -> usize {
        self.labels[x] as usize
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// One representative point per suborbit, in discovery order.
    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Label of the orbital (pair class) of (u, v).
    pub fn pair_label(&self, u: usize, v: usize) -> usize {
        self.labels[self.space.translate_to_base(u, v)] as usize
    }
}

/// The K-generators acting on X, precomputed as point maps: the n - 1
/// adjacent transpositions plus one diagonal map per generator of Gamma.
/// The diagonal maps are identity for abelian Gamma but are not assumed so.
fn generator_maps(space: &CosetSpace) -> Vec<Vec<u32>> {
    let n = space.n();
    let size = space.size();
    let gamma = space.gamma();
    let mut maps = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let sigma = Perm::adjacent_transposition(n, i);
        let map: Vec<u32> = (0..size)
            .map(|x| space.k_action(gamma.identity() as u32, &sigma, x) as u32)
            .collect();
        maps.push(map);
    }
    let id = Perm::identity(n);
    for &g in gamma.generators() {
        let map: Vec<u32> = (0..size)
            .map(|x| space.k_action(g as u32, &id, x) as u32)
            .collect();
        maps.push(map);
    }
    maps
}

/// Computes the K-orbits on X by breadth-first closure from each
/// unlabelled point, base point first.
pub fn compute_suborbits(gamma: &FiniteGroup, n: u32, budget: &Budget) -> Result<SuborbitTable> {
    let space = coset_space(gamma, n, budget)?;
    let size = space.size();
    let maps = generator_maps(&space);
    let mut labels = vec![u32::MAX; size];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut queue: Vec<usize> = Vec::new();
    let starts = std::iter::once(space.base_point()).chain(0..size);
    for start in starts {
        if labels[start] != u32::MAX {
            continue;
        }
        let label = reps.len() as u32;
        reps.push(start);
        labels[start] = label;
        queue.clear();
        queue.push(start);
        let mut orbit_size = 1usize;
        while let Some(x) = queue.pop() {
            for map in &maps {
                let y = map[x] as usize;
                if labels[y] == u32::MAX {
                    labels[y] = label;
                    orbit_size += 1;
                    queue.push(y);
                }
            }
        }
        sizes.push(orbit_size);
    }
    Ok(SuborbitTable {
        space,
        labels,
        reps,
        sizes,
    })
}

/// The structure-constant tensor of the orbital basis:
/// `p[i][j][k]` counts, for a fixed pair (x0, y_k) in orbital k, the
/// points z with (x0, z) in orbital i and (z, y_k) in orbital j.
#[derive(Clone, Debug)]
pub struct IntersectionNumbers {
    m: usize,
    /// k-major layout: entry (i, j, k) lives at k*m*m + i*m + j.
    p: Vec<u32>,
}

impl IntersectionNumbers {
    pub fn count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.p[(k * self.m + i) * self.m + j]
    }
}

/// Accumulates the tensor by scanning every z in X once per suborbit
/// representative. Parallel over the representatives.
pub fn compute_intersection_numbers(
    table: &SuborbitTable,
    time_budget: Option<Duration>,
) -> Result<IntersectionNumbers> {
    let m = table.count();
    let size = table.space().size();
    let start = Instant::now();
    let slices: Result<Vec<Vec<u32>>> = table
        .representatives()
        .par_iter()
        .map(|&y_k| {
            let mut local = vec![0u32; m * m];
            for z in 0..size {
                if z % 4096 == 0 {
                    if let Some(limit) = time_budget {
                        if start.elapsed() > limit {
                            return Err(Error::TimeBudgetExceeded {
                                what: "computing intersection numbers".into(),
                                budget_secs: limit.as_secs(),
                            });
                        }
                    }
                }
                let i = table.label(z);
                let j = table.pair_label(z, y_k);
                local[i * m + j] += 1;
            }
            Ok(local)
        })
        .collect();
    let slices = slices?;
    let mut p = Vec::with_capacity(m * m * m);
    for slice in slices {
        p.extend_from_slice(&slice);
    }
    Ok(IntersectionNumbers { m, p })
}

/// Outcome of a Gelfand-pair decision, with enough context to audit it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GelfandVerdict {
    pub gamma: String,
    pub n: u32,
    pub gelfand: bool,
    pub suborbits: usize,
    /// First (i, j, k) with p[i][j][k] != p[j][i][k] when not Gelfand.
    pub witness: Option<(usize, usize, usize)>,
    pub elapsed_ms: u128,
}

/// Decides the Gelfand property of (Gamma wr S_n, diag(Gamma) x S_n) by
/// testing the orbital structure constants for symmetry in (i, j).
pub fn is_gelfand_pair(
    gamma: &FiniteGroup,
    n: u32,
    budget: &Budget,
    time_budget: Option<Duration>,
) -> Result<GelfandVerdict> {
    let start = Instant::now();
    let table = compute_suborbits(gamma, n, budget)?;
    let numbers = compute_intersection_numbers(&table, time_budget)?;
    let m = numbers.count();
    let mut witness = None;
    'scan: for i in 0..m {
        for j in i + 1..m {
            for k in 0..m {
                if numbers.get(i, j, k) != numbers.get(j, i, k) {
                    witness = Some((i, j, k));
                    break 'scan;
                }
            }
        }
    }
    Ok(GelfandVerdict {
        gamma: gamma.spec_label().to_string(),
        n,
        gelfand: witness.is_none(),
        suborbits: m,
        witness,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Cross-checks the orbital verdict for cyclic Gamma = Z_r against the
/// representation side: the verdict must be Gelfand, the suborbit count
/// must equal the number of constituents of the quotient decomposition,
/// and (for n <= 5) every constituent must appear with multiplicity one.
pub fn gelfand_cross_check_cyclic(r: u32, n: u32, budget: &Budget) -> Result<bool> {
    if n > 5 {
        return Err(Error::SizeGuard {
            what: "gelfand_cross_check_cyclic",
            param: "n",
            max: 5,
            got: n as u64,
        });
    }
    let gamma = crate::groups::make_group(&crate::groups::GroupSpec::Cyclic(r))?;
    let verdict = is_gelfand_pair(&gamma, n, budget, None)?;
    if !verdict.gelfand {
        return Ok(false);
    }
    let constituents = enumerate_weight_vectors(n, r)?;
    if constituents.len() != verdict.suborbits {
        return Ok(false);
    }
    for k in &constituents {
        if multiplicity_in_induced(k, true)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::catalan_u64;
    use crate::groups::make_group;

    fn group(s: &str) -> FiniteGroup {
        make_group(&s.parse().unwrap()).unwrap()
    }

    fn suborbits(name: &str, n: u32) -> SuborbitTable {
        compute_suborbits(&group(name), n, &Budget::default()).unwrap()
    }

    #[test]
    fn cyclic_suborbit_counts_are_catalan() {
        for n in 2..=6u32 {
            let t = suborbits(&format!("Z{}", n + 1), n);
            assert_eq!(t.count() as u64, catalan_u64(n as u64), "n = {n}");
            assert_eq!(t.sizes().iter().sum::<usize>(), t.space().size());
        }
    }

    #[test]
    fn cyclic_suborbit_sizes_match_parking_orbit_sizes() {
        // the shift bijection turns parking-function orbits into suborbits
        for n in 2..=5u32 {
            let t = suborbits(&format!("Z{}", n + 1), n);
            let mut suborbit_sizes: Vec<usize> = t.sizes().to_vec();
            suborbit_sizes.sort_unstable();
            let mut orbit_sizes: Vec<usize> = crate::parking::orbit_decomposition(n)
                .unwrap()
                .iter()
                .map(|(_, s)| *s as usize)
                .collect();
            orbit_sizes.sort_unstable();
            assert_eq!(suborbit_sizes, orbit_sizes, "n = {n}");
        }
    }

    #[test]
    fn base_point_has_label_zero_and_labels_are_invariant() {
        for (name, n) in [("Z4", 3u32), ("S3", 3), ("A4", 2), ("GL(2,3)", 2)] {
            let t = suborbits(name, n);
            assert_eq!(t.label(t.space().base_point()), 0);
            let maps = generator_maps(t.space());
            for map in &maps {
                for x in 0..t.space().size() {
                    assert_eq!(
                        t.label(map[x] as usize),
                        t.label(x),
                        "{name}: labels not K-invariant"
                    );
                }
            }
        }
    }

    #[test]
    fn intersection_row_sums_and_identity_orbital() {
        for (name, n) in [("Z4", 3u32), ("Z2", 2), ("S3", 2), ("Z3", 4)] {
            let t = suborbits(name, n);
            let p = compute_intersection_numbers(&t, None).unwrap();
            let m = p.count();
            for k in 0..m {
                for i in 0..m {
                    let row: u32 = (0..m).map(|j| p.get(i, j, k)).sum();
                    assert_eq!(row as usize, t.sizes()[i], "{name}: row sum at ({i},{k})");
                }
            }
            // the base suborbit is the identity orbital: p[0][j][k] = delta_{jk}
            for j in 0..m {
                for k in 0..m {
                    let expected = u32::from(j == k);
                    assert_eq!(p.get(0, j, k), expected, "{name}: identity orbital");
                }
            }
        }
    }

    /// Dense-matrix oracle: multiply the 0/1 orbital matrices directly and
    /// decompose the product in the orbital basis.
    fn matrix_oracle(t: &SuborbitTable) -> Vec<Vec<Vec<u32>>> {
        let size = t.space().size();
        let m = t.count();
        let mut orbital = vec![vec![vec![0u32; size]; size]; m];
        for u in 0..size {
            for v in 0..size {
                orbital[t.pair_label(u, v)][u][v] = 1;
            }
        }
        let mut p = vec![vec![vec![0u32; m]; m]; m];
        for i in 0..m {
            for j in 0..m {
                // C = A_i A_j; C[u][v] depends only on the orbital of (u, v)
                for k in 0..m {
                    let u = 0usize;
                    // find a pair (u, v) in orbital k with u = base? any
                    // pair works; pick v with pair_label(0-th rep) == k
                    let _ = u;
                    let rep_u = t.representatives()[0];
                    let mut found = None;
                    for v in 0..size {
                        if t.pair_label(rep_u, v) == k {
                            found = Some(v);
                            break;
                        }
                    }
                    let v = found.expect("every orbital meets the base row");
                    let c: u32 = (0..size)
                        .map(|z| orbital[i][rep_u][z] * orbital[j][z][v])
                        .sum();
                    p[i][j][k] = c;
                }
            }
        }
        p
    }

    #[test]
    fn tensor_matches_dense_matrix_oracle_small_spaces() {
        for (name, n) in [("Z2", 2u32), ("Z4", 3), ("Z2", 6), ("S3", 2), ("Z3", 3), ("Z5", 3)] {
            let t = suborbits(name, n);
            assert!(t.space().size() <= 64, "{name} too big for the oracle");
            let tensor = compute_intersection_numbers(&t, None).unwrap();
            let oracle = matrix_oracle(&t);
            let m = t.count();
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        assert_eq!(
                            tensor.get(i, j, k),
                            oracle[i][j][k],
                            "{name}: mismatch at ({i},{j},{k})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn abelian_pairs_are_gelfand() {
        let budget = Budget::default();
        for (name, n) in [("Z2", 2u32), ("Z3", 3), ("Z4", 3), ("Z5", 4), ("Z6", 5), ("Z7", 4)] {
            let v = is_gelfand_pair(&group(name), n, &budget, None).unwrap();
            assert!(v.gelfand, "{name}, n = {n} must be Gelfand");
            assert!(v.witness.is_none());
        }
    }

    #[test]
    fn every_group_is_gelfand_at_n_2() {
        let budget = Budget::default();
        for name in ["Z4", "S3", "S4", "A4", "GL(2,3)", "SL(3,2)"] {
            let v = is_gelfand_pair(&group(name), 2, &budget, None).unwrap();
            assert!(v.gelfand, "{name} at n = 2");
        }
    }

    #[test]
    fn a4_flips_at_n_4() {
        let budget = Budget::default();
        let a4 = group("A4");
        assert!(is_gelfand_pair(&a4, 3, &budget, None).unwrap().gelfand);
        let v = is_gelfand_pair(&a4, 4, &budget, None).unwrap();
        assert!(!v.gelfand);
        let (i, j, k) = v.witness.expect("false verdict carries a witness");
        // audit the witness against a fresh tensor
        let t = suborbits("A4", 4);
        let p = compute_intersection_numbers(&t, None).unwrap();
        assert_ne!(p.get(i, j, k), p.get(j, i, k));
    }

    #[test]
    fn cross_check_cyclic_small() {
        let budget = Budget::default();
        assert!(gelfand_cross_check_cyclic(4, 3, &budget).unwrap());
        assert!(gelfand_cross_check_cyclic(2, 2, &budget).unwrap());
        assert!(gelfand_cross_check_cyclic(5, 4, &budget).unwrap());
        // suborbit count of the r = n + 1 case is Catalan(n) = constituent count
        let t = suborbits("Z5", 4);
        assert_eq!(t.count(), 14);
    }

    #[test]
    fn time_budget_is_enforced() {
        let t = suborbits("Z7", 6);
        let err = compute_intersection_numbers(&t, Some(Duration::ZERO)).unwrap_err();
        assert!(err.is_budget());
    }
}
