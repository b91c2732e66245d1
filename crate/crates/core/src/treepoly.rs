//! Degree polynomials of rooted plane trees and their comparison with the
//! ascending coefficient vector of the q-Catalan analogue.
//!
//! "Degree" here means child count: a tree on n vertices contributes the
//! monomial prod t_i^{d_i} where d_i counts vertices with i children, so
//! every term satisfies sum d_i = n and sum i*d_i = n - 1. Two independent
//! routes produce the polynomial: recursive enumeration over ordered child
//! forests, and the Lagrange-inversion closed form (1/n) * multinomial.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::combinat::{for_each_composition, multinomial_of_counts};
use crate::error::{Error, Result};
use crate::qcatalan::{cq_polynomial, poly_stats};

/// A polynomial over degree-type monomials, keyed by exponent vectors
/// (d_0, ..., d_{n-1}) of fixed length n.
///
/// Export order is lexicographic on the monomials read as words in
/// t_0 < t_1 < ...: the word t0 t0 t0 t3 sorts before t0 t0 t1 t2, so a
/// monomial with more t_0 factors comes first. On exponent vectors that
/// is descending lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DegreeTypePolynomial {
    terms: BTreeMap<Vec<u32>, BigUint>,
}

impl DegreeTypePolynomial {
    /// Terms in monomial-word order (descending on exponent vectors).
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigUint)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficients in monomial-word order.
    pub fn coefficient_vector(&self) -> Vec<BigUint> {
        self.terms.values().rev().cloned().collect()
    }

    /// Sum of all coefficients: the number of trees counted.
    pub fn total_mass(&self) -> BigUint {
        self.terms.values().sum()
    }

    /// JSON form: list of [exponent vector, coefficient string], in
    /// monomial-word order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms()
                .map(|(key, c)| serde_json::json!([key, c.to_string()]))
                .collect(),
        )
    }
}

impl std::fmt::Display for DegreeTypePolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if !c.is_one() {
                write!(f, "{c}")?;
            }
            let mut wrote_var = false;
            for (i, &d) in key.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                wrote_var = true;
                if d == 1 {
                    write!(f, "t{i}")?;
                } else {
                    write!(f, "t{i}^{d}")?;
                }
            }
            if !wrote_var {
                write!(f, "1")?;
            }
        }
        Ok(())
    }
}

fn tree_guard(n: u32, what: &'static str) -> Result<()> {
    if n < 2 || n > 12 {
        return Err(Error::SizeGuard {
            what,
            param: "n",
            max: 12,
            got: n as u64,
        });
    }
    Ok(())
}

/// Degree polynomial of rooted plane trees on n vertices, by recursive
/// enumeration: a tree is a root with an ordered forest of subtrees, and a
/// forest of two or more trees splits uniquely into its first tree and the
/// rest, so profile counts convolve bottom-up. Total mass is
/// Catalan(n - 1).
pub fn s_polynomial(n: u32) -> Result<DegreeTypePolynomial> {
    tree_guard(n, "s_polynomial")?;
    let n = n as usize;
    // trees[v]: profile -> count for rooted plane trees on v vertices;
    // forests[m]: (tree count j, profile) -> count for ordered forests
    let mut trees: Vec<BTreeMap<Vec<u32>, BigUint>> = vec![BTreeMap::new(); n + 1];
    let mut forests: Vec<BTreeMap<(usize, Vec<u32>), BigUint>> = vec![BTreeMap::new(); n];
    let mut leaf = vec![0u32; n];
    leaf[0] = 1;
    trees[1].insert(leaf, BigUint::one());
    for m in 1..n {
        let mut f: BTreeMap<(usize, Vec<u32>), BigUint> = BTreeMap::new();
        for (profile, count) in &trees[m] {
            f.insert((1, profile.clone()), count.clone());
        }
        for s in 1..m {
            for (first, c1) in &trees[s] {
                for ((j, rest), c2) in &forests[m - s] {
                    let mut key = first.clone();
                    for (slot, add) in key.iter_mut().zip(rest) {
                        *slot += add;
                    }
                    *f.entry((j + 1, key)).or_insert_with(BigUint::zero) += c1 * c2;
                }
            }
        }
        // a tree on m+1 vertices is a root with j children over a forest
        // of m vertices
        let mut t: BTreeMap<Vec<u32>, BigUint> = BTreeMap::new();
        for ((j, profile), count) in &f {
            let mut key = profile.clone();
            key[*j] += 1;
            *t.entry(key).or_insert_with(BigUint::zero) += count;
        }
        forests[m] = f;
        trees[m + 1] = t;
    }
    Ok(DegreeTypePolynomial {
        terms: std::mem::take(&mut trees[n]),
    })
}

/// The same polynomial from the closed form: the number of rooted plane
/// trees with profile d is (1/n) * multinomial(n; d) whenever
/// sum d_i = n and sum i*d_i = n - 1. The division is checked exact.
pub fn s_polynomial_via_lagrange(n: u32) -> Result<DegreeTypePolynomial> {
    tree_guard(n, "s_polynomial_via_lagrange")?;
    let mut terms: BTreeMap<Vec<u32>, BigUint> = BTreeMap::new();
    let mut failure: Option<Error> = None;
    for_each_composition(n, n as usize, &mut |d| {
        if failure.is_some() {
            return;
        }
        let edges: u64 = d.iter().enumerate().map(|(i, &v)| i as u64 * v as u64).sum();
        if edges != n as u64 - 1 {
            return;
        }
        let counts: Vec<u64> = d.iter().map(|&v| v as u64).collect();
        let total = multinomial_of_counts(&counts);
        let (q, rem) = (&total / n, &total % n);
        if !rem.is_zero() {
            failure = Some(Error::Invariant(format!(
                "multinomial {total} for profile {d:?} is not divisible by {n}"
            )));
            return;
        }
        terms.insert(d.to_vec(), q);
    });
    if let Some(err) = failure {
        return Err(err);
    }
    Ok(DegreeTypePolynomial { terms })
}

/// Coefficient vector in lexicographic monomial order.
pub fn coefficient_vector(p: &DegreeTypePolynomial) -> Vec<BigUint> {
    p.coefficient_vector()
}

/// Positional outcome of the vector comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositionalComparison {
    Equal,
    /// First index where the vectors disagree (or the shorter one ends).
    DivergesAt(usize),
}

/// Comparison of the tree coefficient vector v_{n+1} against the ascending
/// coefficient vector of the n-th q-Catalan polynomial. Both the
/// positional and the multiset comparison are reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaComparison {
    pub n: u32,
    pub tree_vector: Vec<BigUint>,
    pub alpha_vector: Vec<BigInt>,
    pub positional: PositionalComparison,
    pub multiset_equal: bool,
}

impl AlphaComparison {
    pub fn equal(&self) -> bool {
        self.positional == PositionalComparison::Equal
    }
}

pub fn compare_with_alpha(n: u32) -> Result<AlphaComparison> {
    if n < 1 || n > 8 {
        return Err(Error::SizeGuard {
            what: "compare_with_alpha",
            param: "n",
            max: 8,
            got: n as u64,
        });
    }
    let tree_vector = s_polynomial(n + 1)?.coefficient_vector();
    let alpha_vector = poly_stats(&cq_polynomial(n)?).coefficients;
    let tree_as_int: Vec<BigInt> = tree_vector.iter().cloned().map(BigInt::from).collect();
    let mut positional = PositionalComparison::Equal;
    if tree_as_int != alpha_vector {
        let shared = tree_as_int.len().min(alpha_vector.len());
        let idx = (0..shared)
            .find(|&i| tree_as_int[i] != alpha_vector[i])
            .unwrap_or(shared);
        positional = PositionalComparison::DivergesAt(idx);
    }
    let mut a = tree_as_int;
    let mut b = alpha_vector.clone();
    a.sort();
    b.sort();
    Ok(AlphaComparison {
        n,
        tree_vector,
        alpha_vector,
        positional,
        multiset_equal: a == b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::catalan;

    #[test]
    fn s4_matches_published_polynomial() {
        let s4 = s_polynomial(4).unwrap();
        let mut expected = BTreeMap::new();
        expected.insert(vec![1, 3, 0, 0], BigUint::from(1u32)); // t0 t1^3
        expected.insert(vec![2, 1, 1, 0], BigUint::from(3u32)); // 3 t0^2 t1 t2
        expected.insert(vec![3, 0, 0, 1], BigUint::from(1u32)); // t0^3 t3
        assert_eq!(s4.terms.clone().into_iter().collect::<BTreeMap<_, _>>(), expected);
        assert_eq!(format!("{s4}"), "t0^3t3 + 3t0^2t1t2 + t0t1^3");
        assert_eq!(
            s4.coefficient_vector(),
            vec![BigUint::from(1u32), BigUint::from(3u32), BigUint::from(1u32)]
        );
    }

    #[test]
    fn s2_is_a_single_edge() {
        let s2 = s_polynomial(2).unwrap();
        assert_eq!(s2.num_terms(), 1);
        assert_eq!(s2.coefficient_vector(), vec![BigUint::from(1u32)]);
        assert_eq!(format!("{s2}"), "t0t1");
    }

    #[test]
    fn export_order_is_monomial_word_lex() {
        // t0^3 t3 (word t0t0t0t3) sorts before t0^2 t1 t2 before t0 t1^3
        let s4 = s_polynomial(4).unwrap();
        let keys: Vec<Vec<u32>> = s4.terms().map(|(k, _)| k.clone()).collect();
        assert_eq!(
            keys,
            vec![vec![3, 0, 0, 1], vec![2, 1, 1, 0], vec![1, 3, 0, 0]]
        );
    }

    #[test]
    fn total_mass_is_catalan() {
        for n in 2..=10u32 {
            let s = s_polynomial(n).unwrap();
            assert_eq!(s.total_mass(), catalan(n as u64 - 1), "mass at n = {n}");
        }
    }

    #[test]
    fn every_term_satisfies_vertex_and_edge_identities() {
        for n in 2..=9u32 {
            for (key, _) in s_polynomial(n).unwrap().terms() {
                let vertices: u32 = key.iter().sum();
                let edges: u32 = key.iter().enumerate().map(|(i, &d)| i as u32 * d).sum();
                assert_eq!(vertices, n);
                assert_eq!(edges, n - 1);
            }
        }
    }

    #[test]
    fn enumeration_matches_lagrange_closed_form() {
        for n in 2..=10u32 {
            assert_eq!(
                s_polynomial(n).unwrap(),
                s_polynomial_via_lagrange(n).unwrap(),
                "routes disagree at n = {n}"
            );
        }
    }

    #[test]
    fn lagrange_term_examples() {
        let s4 = s_polynomial_via_lagrange(4).unwrap();
        assert_eq!(s4.terms.get(&vec![2, 1, 1, 0]), Some(&BigUint::from(3u32)));
        assert_eq!(s4.terms.get(&vec![3, 0, 0, 1]), Some(&BigUint::from(1u32)));
    }

    #[test]
    fn published_v8_vector() {
        let v8 = s_polynomial(8).unwrap().coefficient_vector();
        let expected: Vec<BigUint> = [1u32, 7, 7, 7, 21, 42, 21, 21, 35, 105, 35, 35, 70, 21, 1]
            .iter()
            .map(|&c| BigUint::from(c))
            .collect();
        assert_eq!(v8, expected);
    }

    #[test]
    fn alpha_comparison_agrees_up_to_six_and_diverges_at_seven() {
        for n in 2..=6u32 {
            let cmp = compare_with_alpha(n).unwrap();
            assert!(cmp.equal(), "expected agreement at n = {n}");
            assert!(cmp.multiset_equal);
        }
        let cmp = compare_with_alpha(7).unwrap();
        assert_eq!(cmp.positional, PositionalComparison::DivergesAt(7));
        assert!(!cmp.multiset_equal);
        assert_eq!(cmp.tree_vector.len(), 15);
        assert_eq!(cmp.alpha_vector.len(), 14);
        // the two published vectors, reproduced verbatim
        let alpha: Vec<BigInt> = [1, 7, 7, 7, 21, 42, 21, 56, 105, 35, 35, 70, 21, 1]
            .iter()
            .map(|&c| BigInt::from(c))
            .collect();
        assert_eq!(cmp.alpha_vector, alpha);
        let v8: Vec<BigUint> = [1u32, 7, 7, 7, 21, 42, 21, 21, 35, 105, 35, 35, 70, 21, 1]
            .iter()
            .map(|&c| BigUint::from(c))
            .collect();
        assert_eq!(cmp.tree_vector, v8);
    }

    #[test]
    fn guards_reject_out_of_range() {
        assert!(s_polynomial(1).is_err());
        assert!(s_polynomial(13).is_err());
        assert!(compare_with_alpha(9).is_err());
    }
}
