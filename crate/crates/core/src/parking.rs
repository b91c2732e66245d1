//! Parking functions, their orbit structure under coordinate permutation,
//! the shift bijection onto Z_{n+1}^n / diag, ballot sequences, and
//! zero-sum multisets.
//!
//! Entries of a parking function are 1-based as usual; the coset side is
//! 0-based. The +-1 shift lives entirely in [`pollak_map`] /
//! [`pollak_inverse`], so both conventions stay clean.

use num_bigint::BigUint;
use num_traits::One;

use crate::combinat::multinomial_of_counts;
use crate::error::{Error, Result};
use crate::groups::{coset_space, make_group, Budget, CosetSpace, GroupSpec};

/// True iff every entry is >= 1 and the sorted rearrangement b satisfies
/// b_i <= i (1-based).
pub fn is_parking_function(a: &[i64]) -> bool {
    if a.iter().any(|&x| x < 1) {
        return false;
    }
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    sorted
        .iter()
        .enumerate()
        .all(|(i, &b)| b <= i as i64 + 1)
}

fn guard(n: u32, what: &'static str, max: u32) -> Result<()> {
    if n < 1 || n > max {
        return Err(Error::SizeGuard {
            what,
            param: "n",
            max: max as u64,
            got: n as u64,
        });
    }
    Ok(())
}

/// All parking functions of length n in lexicographic order,
/// duplicate-free; there are (n+1)^{n-1} of them.
///
/// Depth-first generation with a feasibility prune: a prefix with m open
/// slots extends to a parking function iff #{entries <= j} + m >= j for
/// every j, which at m = 0 is exactly the defining condition.
pub fn enumerate_parking_functions(n: u32) -> Result<Vec<Vec<u8>>> {
    guard(n, "enumerate_parking_functions", 8)?;
    let n = n as usize;
    let mut out = Vec::new();
    let mut prefix: Vec<u8> = Vec::with_capacity(n);
    let mut at_most = vec![0u32; n + 1]; // at_most[j] = #{entries <= j}, cumulative below
    fn feasible(counts: &[u32], placed: usize, n: usize) -> bool {
        let open = (n - placed) as u32;
        let mut cum = 0u32;
        for j in 1..=n {
            cum += counts[j];
            if cum + open < j as u32 {
                return false;
            }
        }
        true
    }
    fn rec(
        prefix: &mut Vec<u8>,
        counts: &mut Vec<u32>,
        n: usize,
        out: &mut Vec<Vec<u8>>,
    ) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 1..=n {
            counts[v] += 1;
            if feasible(counts, prefix.len() + 1, n) {
                prefix.push(v as u8);
                rec(prefix, counts, n, out);
                prefix.pop();
            }
            counts[v] -= 1;
        }
    }
    rec(&mut prefix, &mut at_most, n, &mut out);
    Ok(out)
}

/// The coset space Z_{n+1}^n / diag that parking functions of length n
/// biject onto.
pub fn parking_coset_space(n: u32, budget: &Budget) -> Result<CosetSpace> {
    let gamma = make_group(&GroupSpec::Cyclic(n + 1))?;
    coset_space(&gamma, n, budget)
}

/// Sends a parking function to its coset: subtract 1 from every entry,
/// reduce mod n+1, canonicalize.
pub fn pollak_map(space: &CosetSpace, a: &[u8]) -> Result<usize> {
    let n = space.n();
    if a.len() != n {
        return Err(Error::InvalidParameter(format!(
            "expected a parking function of length {n}, got length {}",
            a.len()
        )));
    }
    let as_i64: Vec<i64> = a.iter().map(|&x| x as i64).collect();
    if !is_parking_function(&as_i64) {
        return Err(Error::InvalidParameter(format!("{a:?} is not a parking function")));
    }
    let r = (n + 1) as u32;
    let tuple: Vec<u32> = a.iter().map(|&x| (x as u32 - 1) % r).collect();
    Ok(space.index_of(&tuple))
}

/// Recovers the unique parking function in the coset: exactly one diagonal
/// shift of the representative lifts (entrywise +1) to a parking function.
/// More or fewer than one would contradict the counting argument behind
/// the bijection, so that case is an internal invariant violation.
pub fn pollak_inverse(space: &CosetSpace, x: usize) -> Result<Vec<u8>> {
    let n = space.n();
    let r = (n + 1) as u32;
    let rep = space.point(x);
    let mut found: Option<Vec<u8>> = None;
    for shift in 0..r {
        let candidate: Vec<i64> = rep
            .iter()
            .map(|&v| ((v + shift) % r) as i64 + 1)
            .collect();
        if is_parking_function(&candidate) {
            if found.is_some() {
                return Err(Error::Invariant(format!(
                    "coset {x} contains two parking-function lifts"
                )));
            }
            found = Some(candidate.iter().map(|&v| v as u8).collect());
        }
    }
    found.ok_or_else(|| Error::Invariant(format!("coset {x} contains no parking-function lift")))
}

/// One row per S_n-orbit of parking functions: the non-decreasing
/// representative and the orbit size, representatives in lexicographic
/// order. Orbit sizes sum to (n+1)^{n-1}; the number of rows is the n-th
/// Catalan number.
pub fn orbit_decomposition(n: u32) -> Result<Vec<(Vec<u8>, u64)>> {
    guard(n, "orbit_decomposition", 8)?;
    let n = n as usize;
    // non-decreasing parking functions are exactly b_1 <= ... <= b_n with
    // 1 <= b_i <= i; the orbit size counts distinct rearrangements
    let mut out = Vec::new();
    let mut current: Vec<u8> = Vec::with_capacity(n);
    fn rec(current: &mut Vec<u8>, n: usize, out: &mut Vec<(Vec<u8>, u64)>) {
        let i = current.len();
        if i == n {
            let mut mult = vec![0u64; n + 1];
            for &v in current.iter() {
                mult[v as usize] += 1;
            }
            let size = multinomial_of_counts(&mult);
            out.push((current.clone(), size.try_into().expect("orbit size fits u64")));
            return;
        }
        let low = current.last().copied().unwrap_or(1);
        for v in low..=(i + 1) as u8 {
            current.push(v);
            rec(current, n, out);
            current.pop();
        }
    }
    rec(&mut current, n, &mut out);
    Ok(out)
}

/// Ballot sequences: b in N^n with all partial sums sum_{i<=j} b_i >= j
/// and total sum n, in lexicographic order. Counted by Catalan numbers.
pub fn enumerate_ballot_sequences(n: u32) -> Result<Vec<Vec<u8>>> {
    guard(n, "enumerate_ballot_sequences", 12)?;
    let n = n as usize;
    let mut out = Vec::new();
    let mut current: Vec<u8> = Vec::with_capacity(n);
    // partial-sum constraint gives the lower bound, the total gives the
    // upper; at the last position (j + 1 = n) the two coincide
    fn rec(current: &mut Vec<u8>, sum: usize, n: usize, out: &mut Vec<Vec<u8>>) {
        let j = current.len();
        if j == n {
            debug_assert_eq!(sum, n);
            out.push(current.clone());
            return;
        }
        let min = (j + 1).saturating_sub(sum);
        for b in min..=(n - sum) {
            current.push(b as u8);
            rec(current, sum + b, n, out);
            current.pop();
        }
    }
    rec(&mut current, 0, n, &mut out);
    Ok(out)
}

/// Multisets of n residues mod n+1 summing to 0, as sorted residue
/// sequences in lexicographic order. Counted by Catalan numbers.
pub fn enumerate_zero_sum_multisets(n: u32) -> Result<Vec<Vec<u8>>> {
    guard(n, "enumerate_zero_sum_multisets", 12)?;
    let n = n as usize;
    let modulus = n + 1;
    let mut out = Vec::new();
    let mut current: Vec<u8> = Vec::with_capacity(n);
    fn rec(current: &mut Vec<u8>, sum: usize, n: usize, modulus: usize, out: &mut Vec<Vec<u8>>) {
        if current.len() == n {
            if sum % modulus == 0 {
                out.push(current.clone());
            }
            return;
        }
        let low = current.last().copied().unwrap_or(0);
        for v in low..modulus as u8 {
            current.push(v);
            rec(current, sum + v as usize, n, modulus, out);
            current.pop();
        }
    }
    rec(&mut current, 0, n, modulus, &mut out);
    Ok(out)
}

/// (n+1)^{n-1}, the number of parking functions of length n.
pub fn parking_count(n: u32) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    BigUint::from(n + 1).pow(n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{catalan_u64, factorial};
    use num_traits::ToPrimitive;

    #[test]
    fn definition_examples() {
        assert!(is_parking_function(&[1, 1, 2]));
        assert!(!is_parking_function(&[2, 3, 3]));
        assert!(is_parking_function(&[3, 1, 2]));
        assert!(!is_parking_function(&[0, 1, 2])); // entries must be >= 1
        assert!(is_parking_function(&[])); // vacuous
    }

    #[test]
    fn enumeration_counts_match_formula() {
        for n in 1..=6u32 {
            let pfs = enumerate_parking_functions(n).unwrap();
            assert_eq!(
                pfs.len() as u64,
                parking_count(n).to_u64().unwrap(),
                "count at n = {n}"
            );
            // lexicographically sorted and duplicate-free
            assert!(pfs.windows(2).all(|w| w[0] < w[1]));
            // every output really is a parking function
            for pf in &pfs {
                let v: Vec<i64> = pf.iter().map(|&x| x as i64).collect();
                assert!(is_parking_function(&v));
            }
        }
        assert_eq!(enumerate_parking_functions(1).unwrap(), vec![vec![1]]);
        assert_eq!(enumerate_parking_functions(3).unwrap().len(), 16);
        assert_eq!(enumerate_parking_functions(4).unwrap().len(), 125);
        assert!(enumerate_parking_functions(9).is_err());
        assert!(enumerate_parking_functions(0).is_err());
    }

    #[test]
    fn orbit_decomposition_n3_matches_known_list() {
        let orbits = orbit_decomposition(3).unwrap();
        let expected: Vec<(Vec<u8>, u64)> = vec![
            (vec![1, 1, 1], 1),
            (vec![1, 1, 2], 3),
            (vec![1, 1, 3], 3),
            (vec![1, 2, 2], 3),
            (vec![1, 2, 3], 6),
        ];
        assert_eq!(orbits, expected);
    }

    #[test]
    fn orbit_statistics() {
        for n in 1..=6u32 {
            let orbits = orbit_decomposition(n).unwrap();
            assert_eq!(orbits.len() as u64, catalan_u64(n as u64), "orbit count at n = {n}");
            let total: u64 = orbits.iter().map(|(_, s)| s).sum();
            assert_eq!(total, parking_count(n).to_u64().unwrap());
            for (rep, size) in &orbits {
                // representative is itself a non-decreasing parking function
                assert!(rep.windows(2).all(|w| w[0] <= w[1]));
                let v: Vec<i64> = rep.iter().map(|&x| x as i64).collect();
                assert!(is_parking_function(&v));
                // orbit size = n! / prod of multiplicity factorials
                let mut mult = std::collections::BTreeMap::new();
                for &x in rep {
                    *mult.entry(x).or_insert(0u64) += 1;
                }
                let mut denom = BigUint::one();
                for &m in mult.values() {
                    denom *= factorial(m);
                }
                let expected = factorial(n as u64) / denom;
                assert_eq!(BigUint::from(*size), expected);
            }
        }
    }

    #[test]
    fn pollak_bijection_small_n() {
        for n in 1..=6u32 {
            let space = parking_coset_space(n, &Budget::default()).unwrap();
            let pfs = enumerate_parking_functions(n).unwrap();
            assert_eq!(space.size(), pfs.len());
            let mut seen = vec![false; space.size()];
            for pf in &pfs {
                let x = pollak_map(&space, pf).unwrap();
                assert!(!seen[x], "coset hit twice at n = {n}");
                seen[x] = true;
                assert_eq!(&pollak_inverse(&space, x).unwrap(), pf);
            }
            assert!(seen.iter().all(|&s| s), "not onto at n = {n}");
        }
    }

    #[test]
    fn pollak_examples() {
        let space = parking_coset_space(3, &Budget::default()).unwrap();
        // (1,1,2) |-> (0,0,1), already canonical
        let x = pollak_map(&space, &[1, 1, 2]).unwrap();
        assert_eq!(space.point(x), vec![0, 0, 1]);
        // n = 1: the single parking function (1) maps to the single point
        let one = parking_coset_space(1, &Budget::default()).unwrap();
        assert_eq!(one.size(), 1);
        assert_eq!(pollak_map(&one, &[1]).unwrap(), 0);
        assert_eq!(pollak_inverse(&one, 0).unwrap(), vec![1]);
    }

    #[test]
    fn ballot_sequences_and_zero_sum_multisets() {
        let s3 = enumerate_ballot_sequences(3).unwrap();
        let expected: Vec<Vec<u8>> = vec![
            vec![1, 1, 1],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
            vec![3, 0, 0],
        ];
        assert_eq!(s3, expected);
        assert_eq!(enumerate_ballot_sequences(1).unwrap(), vec![vec![1]]);
        assert_eq!(enumerate_ballot_sequences(10).unwrap().len(), 16796);

        let e3 = enumerate_zero_sum_multisets(3).unwrap();
        let expected: Vec<Vec<u8>> = vec![
            vec![0, 0, 0],
            vec![0, 1, 3],
            vec![0, 2, 2],
            vec![1, 1, 2],
            vec![2, 3, 3],
        ];
        assert_eq!(e3, expected);
        assert_eq!(enumerate_zero_sum_multisets(1).unwrap(), vec![vec![0]]);
        assert_eq!(enumerate_zero_sum_multisets(5).unwrap().len(), 42);
        for n in 1..=7u32 {
            assert_eq!(
                enumerate_ballot_sequences(n).unwrap().len(),
                catalan_u64(n as u64) as usize
            );
            assert_eq!(
                enumerate_zero_sum_multisets(n).unwrap().len(),
                catalan_u64(n as u64) as usize
            );
        }
    }
}
