//! Weight vectors with the divisibility constraint, exact multinomials,
//! the Catalan q-analogue built from constituent dimensions, its ballot
//! twin, and the identities both satisfy.
//!
//! Exponents of these polynomials are multinomial coefficients, which
//! outgrow any fixed width quickly, so term maps are keyed by big
//! integers throughout. No floating point enters this module.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::combinat::{for_each_composition, multinomial_of_counts};
use crate::error::{Error, Result};

/// A tuple k = (k_0, ..., k_{r-1}) of nonnegative integers with
/// sum n, indexing a monomial constituent. Carries the derived partition
/// (0^{k_0}, 1^{k_1}, ..., (r-1)^{k_{r-1}}).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    entries: Vec<u32>,
}

impl WeightVector {
    pub fn new(entries: Vec<u32>) -> WeightVector {
        assert!(!entries.is_empty(), "weight vector needs at least one slot");
        WeightVector { entries }
    }

    /// Validates the length-n contract before constructing.
    pub fn checked(entries: Vec<u32>, expected_n: u32) -> Result<WeightVector> {
        let sum: u32 = entries.iter().sum();
        if entries.is_empty() || sum != expected_n {
            return Err(Error::InvalidParameter(format!(
                "entries of {entries:?} sum to {sum}, expected n = {expected_n}"
            )));
        }
        Ok(WeightVector { entries })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// n = sum of entries.
    pub fn n(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// r = number of slots.
    pub fn r(&self) -> u32 {
        self.entries.len() as u32
    }

    /// sum of i * k_i.
    pub fn weighted_sum(&self) -> u64 {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &k)| i as u64 * k as u64)
            .sum()
    }

    /// The partition (0^{k_0}, 1^{k_1}, ...) in weakly decreasing order,
    /// zeros included, so it always has exactly n parts.
    pub fn partition(&self) -> Vec<u32> {
        let mut parts = Vec::with_capacity(self.n() as usize);
        for (i, &k) in self.entries.iter().enumerate().rev() {
            for _ in 0..k {
                parts.push(i as u32);
            }
        }
        parts
    }

    /// True iff r divides the weighted sum; equivalently the diagonal
    /// subgroup acts trivially on the associated monomial module.
    pub fn descends_to_quotient(&self) -> bool {
        self.weighted_sum() % self.r() as u64 == 0
    }
}

fn colex_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

/// All compositions of n into r nonnegative parts, colexicographic order.
pub fn enumerate_compositions(n: u32, r: u32) -> Result<Vec<WeightVector>> {
    if n < 1 || r < 1 {
        return Err(Error::InvalidParameter("need n >= 1 and r >= 1".into()));
    }
    let mut out: Vec<Vec<u32>> = Vec::new();
    for_each_composition(n, r as usize, &mut |k| out.push(k.to_vec()));
    out.sort_unstable_by(|a, b| colex_cmp(a, b));
    Ok(out.into_iter().map(WeightVector::new).collect())
}

/// The weight vectors with sum n and r dividing the weighted sum, in
/// colexicographic order. For r = n + 1 this set has Catalan(n) members.
pub fn enumerate_weight_vectors(n: u32, r: u32) -> Result<Vec<WeightVector>> {
    if n < 1 || r < 1 {
        return Err(Error::InvalidParameter("need n >= 1 and r >= 1".into()));
    }
    let mut out: Vec<Vec<u32>> = Vec::new();
    for_each_composition(n, r as usize, &mut |k| {
        let weighted: u64 = k.iter().enumerate().map(|(i, &v)| i as u64 * v as u64).sum();
        if weighted % r as u64 == 0 {
            out.push(k.to_vec());
        }
    });
    out.sort_unstable_by(|a, b| colex_cmp(a, b));
    Ok(out.into_iter().map(WeightVector::new).collect())
}

/// n! / prod k_i!, exactly.
pub fn multinomial(k: &WeightVector) -> BigUint {
    let counts: Vec<u64> = k.entries.iter().map(|&c| c as u64).collect();
    multinomial_of_counts(&counts)
}

/// An exact polynomial with arbitrary-precision exponents and
/// coefficients. Zero coefficients are never stored; iteration is always
/// in ascending exponent order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparsePolynomial {
    terms: BTreeMap<BigUint, BigInt>,
}

impl SparsePolynomial {
    pub fn zero() -> SparsePolynomial {
        SparsePolynomial::default()
    }

    pub fn add_term(&mut self, exponent: BigUint, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent.clone()).or_insert_with(BigInt::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponent: &BigUint) -> BigInt {
        self.terms.get(exponent).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Value at q = 1: the coefficient sum.
    pub fn value_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Derivative at q = 1: sum of exponent * coefficient.
    pub fn derivative_at_one(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| BigInt::from(e.clone()) * c)
            .sum()
    }

    /// Coefficients by ascending exponent.
    pub fn coefficient_vector(&self) -> Vec<BigInt> {
        self.terms.values().cloned().collect()
    }

    /// JSON form: sorted array of [exponent, coefficient] decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| serde_json::json!([e.to_string(), c.to_string()]))
                .collect(),
        )
    }
}

impl std::fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                if e.is_one() {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{e}")?;
                }
            } else if e.is_one() {
                write!(f, "{c}q")?;
            } else {
                write!(f, "{c}q^{e}")?;
            }
        }
        Ok(())
    }
}

fn poly_guard(n: u32, what: &'static str) -> Result<()> {
    if n < 1 || n > 12 {
        return Err(Error::SizeGuard {
            what,
            param: "n",
            max: 12,
            got: n as u64,
        });
    }
    Ok(())
}

/// The q-analogue built from constituent dimensions: one term
/// q^{multinomial(k)} per weight vector k with sum n and n+1 dividing the
/// weighted sum. Coefficients total Catalan(n).
pub fn cq_polynomial(n: u32) -> Result<SparsePolynomial> {
    poly_guard(n, "cq_polynomial")?;
    let mut poly = SparsePolynomial::zero();
    for k in enumerate_weight_vectors(n, n + 1)? {
        poly.add_term(multinomial(&k), BigInt::one());
    }
    Ok(poly)
}

/// The ballot-sequence twin: one term q^{n!/prod b_i!} per ballot
/// sequence b of length n.
pub fn sq_polynomial(n: u32) -> Result<SparsePolynomial> {
    poly_guard(n, "sq_polynomial")?;
    let mut poly = SparsePolynomial::zero();
    for b in crate::parking::enumerate_ballot_sequences(n)? {
        let counts: Vec<u64> = b.iter().map(|&x| x as u64).collect();
        poly.add_term(multinomial_of_counts(&counts), BigInt::one());
    }
    Ok(poly)
}

/// Outcome of comparing the two q-analogues at a given n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub n: u32,
    pub holds: bool,
    /// Smallest exponent whose coefficients differ, with both values
    /// (absent terms count as zero).
    pub first_difference: Option<(BigUint, BigInt, BigInt)>,
}

/// Structural equality of the two term maps, reporting the smallest
/// diverging exponent on failure.
pub fn verify_conjecture(n: u32) -> Result<ConjectureReport> {
    let cq = cq_polynomial(n)?;
    let sq = sq_polynomial(n)?;
    if cq == sq {
        return Ok(ConjectureReport {
            n,
            holds: true,
            first_difference: None,
        });
    }
    let mut exponents: Vec<&BigUint> = cq.terms.keys().chain(sq.terms.keys()).collect();
    exponents.sort();
    exponents.dedup();
    for e in exponents {
        let a = cq.coefficient(e);
        let b = sq.coefficient(e);
        if a != b {
            return Ok(ConjectureReport {
                n,
                holds: false,
                first_difference: Some((e.clone(), a, b)),
            });
        }
    }
    unreachable!("maps differ but no exponent diverges");
}

/// Checks r^{n-1} = sum of multinomials over the weight vectors with sum n
/// and r dividing the weighted sum, exactly.
pub fn check_r_power_identity(n: u32, r: u32) -> Result<bool> {
    if n < 1 || r < 1 || n > 16 || r > 16 {
        return Err(Error::SizeGuard {
            what: "check_r_power_identity",
            param: "n or r",
            max: 16,
            got: n.max(r) as u64,
        });
    }
    let mut sum = BigUint::zero();
    for k in enumerate_weight_vectors(n, r)? {
        sum += multinomial(&k);
    }
    Ok(sum == BigUint::from(r).pow(n - 1))
}

/// Exact summary of a polynomial: value and derivative at 1 plus the
/// ascending coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyStats {
    pub value_at_one: BigInt,
    pub derivative_at_one: BigInt,
    pub coefficients: Vec<BigInt>,
}

pub fn poly_stats(p: &SparsePolynomial) -> PolyStats {
    PolyStats {
        value_at_one: p.value_at_one(),
        derivative_at_one: p.derivative_at_one(),
        coefficients: p.coefficient_vector(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{catalan, factorial};
    use crate::parking::{enumerate_zero_sum_multisets, parking_count};

    fn wv(entries: &[u32]) -> WeightVector {
        WeightVector::new(entries.to_vec())
    }

    fn poly_from(pairs: &[(u64, i64)]) -> SparsePolynomial {
        let mut p = SparsePolynomial::zero();
        for &(e, c) in pairs {
            p.add_term(BigUint::from(e), BigInt::from(c));
        }
        p
    }

    #[test]
    fn weight_vector_basics() {
        let k = wv(&[1, 1, 0, 1]);
        assert_eq!(k.n(), 3);
        assert_eq!(k.r(), 4);
        assert_eq!(k.weighted_sum(), 4);
        assert_eq!(k.partition(), vec![3, 1, 0]);
        assert!(k.descends_to_quotient());
        assert!(WeightVector::checked(vec![0, 2, 3], 5).is_ok());
        assert!(WeightVector::checked(vec![0, 2, 3], 4).is_err());
    }

    #[test]
    fn d3_matches_published_set() {
        let d3 = enumerate_weight_vectors(3, 4).unwrap();
        let expected: Vec<Vec<u32>> = vec![
            vec![3, 0, 0, 0],
            vec![1, 1, 0, 1],
            vec![0, 2, 1, 0],
            vec![1, 0, 2, 0],
            vec![0, 0, 1, 2],
        ];
        let got: std::collections::BTreeSet<Vec<u32>> =
            d3.iter().map(|k| k.entries().to_vec()).collect();
        assert_eq!(got, expected.into_iter().collect());
        // colexicographic output order
        assert_eq!(
            d3.iter().map(|k| k.entries().to_vec()).collect::<Vec<_>>(),
            vec![
                vec![3, 0, 0, 0],
                vec![0, 2, 1, 0],
                vec![1, 0, 2, 0],
                vec![1, 1, 0, 1],
                vec![0, 0, 1, 2],
            ]
        );
    }

    #[test]
    fn small_weight_vector_sets() {
        // oracle: brute force over compositions with a direct filter
        let d2 = enumerate_weight_vectors(2, 3).unwrap();
        assert_eq!(
            d2.iter().map(|k| k.entries().to_vec()).collect::<Vec<_>>(),
            vec![vec![2, 0, 0], vec![0, 1, 1]]
        );
        let d1 = enumerate_weight_vectors(1, 2).unwrap();
        assert_eq!(d1[0].entries(), &[1, 0]);
        assert_eq!(d1.len(), 1);
    }

    #[test]
    fn weight_vector_counts_are_catalan() {
        use num_traits::ToPrimitive;
        for n in 1..=10u32 {
            let d = enumerate_weight_vectors(n, n + 1).unwrap();
            assert_eq!(d.len() as u64, catalan(n as u64).to_u64().unwrap());
            // cardinality agreement with zero-sum multisets
            if n <= 10 {
                assert_eq!(d.len(), enumerate_zero_sum_multisets(n).unwrap().len());
            }
        }
    }

    #[test]
    fn multinomial_incremental_matches_factorials() {
        // oracle: big factorial quotient
        for k in [
            wv(&[1, 1, 0, 1]),
            wv(&[3, 0, 0, 0]),
            wv(&[2, 1, 0]),
            wv(&[0, 0, 1, 2]),
            wv(&[2, 3, 4, 0, 1]),
        ] {
            let mut denom = BigUint::one();
            for &c in k.entries() {
                denom *= factorial(c as u64);
            }
            assert_eq!(multinomial(&k), factorial(k.n() as u64) / denom);
        }
        assert_eq!(multinomial(&wv(&[1, 1, 0, 1])), BigUint::from(6u32));
        assert_eq!(multinomial(&wv(&[5, 0, 0])), BigUint::one());
        assert_eq!(multinomial(&wv(&[2, 1, 0])), BigUint::from(3u32));
    }

    #[test]
    fn published_polynomials() {
        assert_eq!(cq_polynomial(3).unwrap(), poly_from(&[(1, 1), (3, 3), (6, 1)]));
        assert_eq!(
            cq_polynomial(4).unwrap(),
            poly_from(&[(1, 1), (4, 4), (6, 2), (12, 6), (24, 1)])
        );
        assert_eq!(cq_polynomial(2).unwrap(), poly_from(&[(1, 1), (2, 1)]));
        assert_eq!(sq_polynomial(3).unwrap(), poly_from(&[(1, 1), (3, 3), (6, 1)]));
        assert_eq!(sq_polynomial(1).unwrap(), poly_from(&[(1, 1)]));
        assert_eq!(format!("{}", cq_polynomial(3).unwrap()), "q + 3q^3 + q^6");
    }

    #[test]
    fn evaluations_match_closed_forms() {
        for n in 1..=10u32 {
            let p = cq_polynomial(n).unwrap();
            assert_eq!(p.value_at_one(), BigInt::from(catalan(n as u64)));
            assert_eq!(
                p.derivative_at_one(),
                BigInt::from(parking_count(n)),
                "derivative at n = {n}"
            );
        }
    }

    #[test]
    fn conjecture_small_range() {
        for n in 1..=8u32 {
            let report = verify_conjecture(n).unwrap();
            assert!(report.holds, "conjecture fails at n = {n}: {report:?}");
        }
    }

    #[test]
    fn r_power_identity_examples() {
        // 1 + 6 + 3 + 3 + 3 = 16 = 4^2 over the five n=3, r=4 vectors
        let total: BigUint = enumerate_weight_vectors(3, 4)
            .unwrap()
            .iter()
            .map(multinomial)
            .sum();
        assert_eq!(total, BigUint::from(16u32));
        assert!(check_r_power_identity(3, 4).unwrap());
        assert!(check_r_power_identity(2, 2).unwrap());
        for r in 1..=6u32 {
            assert!(check_r_power_identity(1, r).unwrap());
        }
        for n in 1..=8u32 {
            for r in 1..=8u32 {
                assert!(check_r_power_identity(n, r).unwrap(), "fails at n={n}, r={r}");
            }
        }
    }

    #[test]
    fn stats_examples() {
        let stats = poly_stats(&cq_polynomial(3).unwrap());
        assert_eq!(stats.value_at_one, BigInt::from(5));
        assert_eq!(stats.derivative_at_one, BigInt::from(16));
        assert_eq!(
            stats.coefficients,
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(1)]
        );
        let zero = poly_stats(&SparsePolynomial::zero());
        assert_eq!(zero.value_at_one, BigInt::from(0));
        assert_eq!(zero.derivative_at_one, BigInt::from(0));
        assert!(zero.coefficients.is_empty());
    }

    #[test]
    fn published_alpha_vector_n7() {
        let stats = poly_stats(&cq_polynomial(7).unwrap());
        let expected: Vec<BigInt> = [1, 7, 7, 7, 21, 42, 21, 56, 105, 35, 35, 70, 21, 1]
            .iter()
            .map(|&c| BigInt::from(c))
            .collect();
        assert_eq!(stats.coefficients, expected);
    }

    #[test]
    fn polynomial_json_shape() {
        let json = cq_polynomial(3).unwrap().to_json();
        assert_eq!(
            json,
            serde_json::json!([["1", "1"], ["3", "3"], ["6", "1"]])
        );
    }
}
