//! Zonal spherical functions of the pair (quotient wreath group, S_n),
//! over a cyclic base group Z_r.
//!
//! Two independent routes to the same numbers live here. The closed form
//! divides a monomial symmetric polynomial, evaluated at roots of unity,
//! by its value at 1; the definitional route averages the descended
//! character over the subgroup. Cross-checking them exactly is one of the
//! main consistency guarantees of the crate.
//!
//! A function is real-valued iff its monomial values are fixed by residue
//! negation; that exact criterion backs the floating-point tolerance scan
//! in the realness census, since a near-real cyclotomic sum could fool a
//! tolerance test alone.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::combinat::{multiset_permutations, Perm};
use crate::cyclotomic::{CycRat, Cyclotomic};
use crate::error::{Error, Result};
use crate::groups::{coset_space, make_group, Budget, CosetSpace, GroupSpec};
use crate::qcatalan::{enumerate_weight_vectors, multinomial, WeightVector};
use crate::repthy::character_value;

/// Tolerance for the floating-point side of realness checks.
pub const REALNESS_TOLERANCE: f64 = 1e-9;

/// The monomial symmetric polynomial of the partition of k, evaluated at
/// x_i = xi^{h_i}: the sum of xi^{sum a_i h_i} over distinct arrangements
/// a of the exponents. Summing distinct arrangements replaces the
/// 1/prod(k_i!) prefactor of the full symmetrization, so no rational
/// arithmetic is needed.
pub fn monomial_symmetric_value(k: &WeightVector, h: &[u32]) -> Result<Cyclotomic> {
    let n = k.n() as usize;
    let r = k.r() as usize;
    if h.len() != n {
        return Err(Error::InvalidParameter(format!(
            "expected {n} residues, got {}",
            h.len()
        )));
    }
    let mut sum = Cyclotomic::zero(r);
    for a in multiset_permutations(&k.partition()) {
        let e: i64 = a.iter().zip(h).map(|(&ai, &hi)| ai as i64 * hi as i64).sum();
        sum.add_root_power(e);
    }
    Ok(sum)
}

/// A zonal spherical function: a constituent weight vector that descends
/// to the quotient, together with its normalization m_lambda(1,...,1).
#[derive(Clone, Debug)]
pub struct SphericalFunction {
    k: WeightVector,
    normalization: i64,
}

impl SphericalFunction {
    pub fn new(k: &WeightVector) -> Result<SphericalFunction> {
        if !k.descends_to_quotient() {
            return Err(Error::InvalidParameter(format!(
                "{:?} does not descend to the quotient; no spherical function attached",
                k.entries()
            )));
        }
        let normalization = multinomial(k)
            .to_i64()
            .ok_or_else(|| Error::SizeGuard {
                what: "spherical normalization",
                param: "n",
                max: 20,
                got: k.n() as u64,
            })?;
        Ok(SphericalFunction {
            k: k.clone(),
            normalization,
        })
    }

    pub fn weight(&self) -> &WeightVector {
        &self.k
    }

    pub fn normalization(&self) -> i64 {
        self.normalization
    }

    /// Value on a coset point: m_lambda at the representative divided by
    /// m_lambda(1,...,1). Independent of the representative because the
    /// descent criterion kills constant shifts, and independent of any
    /// permutation component because m_lambda is symmetric.
    pub fn value(&self, space: &CosetSpace, x: usize) -> Result<CycRat> {
        check_space(space, &self.k)?;
        let h = space.point(x);
        let num = monomial_symmetric_value(&self.k, &h)?;
        Ok(CycRat::new(num, self.normalization))
    }
}

fn check_space(space: &CosetSpace, k: &WeightVector) -> Result<()> {
    if !space.gamma().is_cyclic_residues() || space.gamma().order() != k.r() as usize
        || space.n() != k.n() as usize
    {
        return Err(Error::InvalidParameter(format!(
            "coset space {space:?} does not match weight vector with n = {}, r = {}",
            k.n(),
            k.r()
        )));
    }
    Ok(())
}

/// Closed-form zonal value at a coset point.
pub fn zonal_value(k: &WeightVector, space: &CosetSpace, x: usize) -> Result<CycRat> {
    SphericalFunction::new(k)?.value(space, x)
}

/// Definitional zonal value at the group element (point, sigma): average
/// of the descended character against the subgroup S_n,
/// (1/n!) sum_tau chi(x^{-1} (0, tau)). Must agree with [`zonal_value`]
/// on the coset of x for every sigma.
pub fn zonal_via_definition(
    k: &WeightVector,
    space: &CosetSpace,
    x: usize,
    sigma: &Perm,
) -> Result<CycRat> {
    check_space(space, k)?;
    let n = k.n() as usize;
    if n > 4 {
        return Err(Error::SizeGuard {
            what: "zonal_via_definition",
            param: "n",
            max: 4,
            got: n as u64,
        });
    }
    if !k.descends_to_quotient() {
        return Err(Error::InvalidParameter(format!(
            "{:?} does not descend to the quotient",
            k.entries()
        )));
    }
    if sigma.degree() != n {
        return Err(Error::InvalidParameter(format!(
            "permutation degree {} does not match n = {n}",
            sigma.degree()
        )));
    }
    let r = k.r() as i64;
    let h = space.point(x);
    // x^{-1} = (g', sigma^{-1}) with g'_i = -h_{sigma(i)}
    let sigma_inv = sigma.inverse();
    let g_inv: Vec<u32> = (0..n)
        .map(|i| ((-(h[sigma.apply(i)] as i64)).rem_euclid(r)) as u32)
        .collect();
    let mut sum = Cyclotomic::zero(r as usize);
    for tau in Perm::all(n) {
        // x^{-1} (0, tau) = (g', sigma^{-1} tau)
        let pi = sigma_inv.compose(&tau);
        sum.add_assign(&character_value(k, &g_inv, &pi)?);
    }
    let n_fact: i64 = (1..=n as i64).product();
    Ok(CycRat::new(sum, n_fact))
}

/// Scatter-plot data: one complex value per coset point, in index order.
#[derive(Clone, Debug, PartialEq)]
pub struct CloudPoint {
    pub index: usize,
    pub re: f64,
    pub im: f64,
}

/// Evaluates the spherical function of k on every coset point of
/// Z_r^n / diag. The cloud is closed under complex conjugation as a
/// multiset because residue negation is a point involution conjugating
/// the values.
pub fn value_cloud(k: &WeightVector, budget: &Budget) -> Result<Vec<CloudPoint>> {
    let f = SphericalFunction::new(k)?;
    let space = cyclic_space(k.n(), k.r(), budget)?;
    (0..space.size())
        .map(|x| {
            let (re, im) = f.value(&space, x)?.to_complex();
            Ok(CloudPoint { index: x, re, im })
        })
        .collect()
}

/// The coset space Z_r^n / diag.
pub fn cyclic_space(n: u32, r: u32, budget: &Budget) -> Result<CosetSpace> {
    let gamma = make_group(&GroupSpec::Cyclic(r))?;
    coset_space(&gamma, n, budget)
}

/// Census outcome for one n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub n: u32,
    pub real_count: usize,
    pub total: usize,
    /// Weight vectors whose spherical function is real-valued.
    pub real_weights: Vec<WeightVector>,
}

/// Counts the constituents of the parking quotient (r = n + 1) whose
/// spherical function is real-valued everywhere. Each verdict is decided
/// by the exact conjugation criterion m(h) = m(-h) at every point and
/// confirmed against the 1e-9 imaginary-part tolerance; a disagreement
/// between the two would be an internal error.
pub fn realness_census(n: u32, budget: &Budget) -> Result<CensusReport> {
    if n < 1 || n > 7 {
        return Err(Error::SizeGuard {
            what: "realness_census",
            param: "n",
            max: 7,
            got: n as u64,
        });
    }
    let r = n + 1;
    let space = cyclic_space(n, r, budget)?;
    // the value at a point depends only on the multiset of residues up to
    // a constant shift (m is symmetric; the descent criterion kills
    // shifts), so evaluating one representative per shifted-multiset class
    // covers every coset point
    let mut keys: BTreeSet<Vec<u32>> = BTreeSet::new();
    for x in 0..space.size() {
        keys.insert(orbit_key(&space.point(x), r));
    }
    let keys: Vec<Vec<u32>> = keys.into_iter().collect();
    let weights = enumerate_weight_vectors(n, r)?;
    let verdicts: Result<Vec<bool>> = weights
        .par_iter()
        .map(|k| {
            let norm = multinomial(k).to_f64().unwrap_or(f64::MAX);
            let mut exact_real = true;
            let mut float_real = true;
            for h in &keys {
                let v = monomial_symmetric_value(k, h)?;
                let neg: Vec<u32> = h.iter().map(|&x| (r - x) % r).collect();
                let v_neg = monomial_symmetric_value(k, &neg)?;
                if v != v_neg {
                    exact_real = false;
                }
                let (_, im) = v.to_complex();
                if (im / norm).abs() > REALNESS_TOLERANCE {
                    float_real = false;
                }
                if !exact_real && !float_real {
                    break;
                }
            }
            if exact_real != float_real {
                return Err(Error::Invariant(format!(
                    "realness tolerance disagrees with the exact criterion at k = {:?}",
                    k.entries()
                )));
            }
            Ok(exact_real)
        })
        .collect();
    let verdicts = verdicts?;
    let real_weights: Vec<WeightVector> = weights
        .into_iter()
        .zip(&verdicts)
        .filter(|(_, &real)| real)
        .map(|(k, _)| k)
        .collect();
    Ok(CensusReport {
        n,
        real_count: real_weights.len(),
        total: verdicts.len(),
        real_weights,
    })
}

/// Smallest sorted residue tuple among all constant shifts: a canonical
/// key for the S_n x shift class of a point.
fn orbit_key(tuple: &[u32], r: u32) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for c in 0..r {
        let mut shifted: Vec<u32> = tuple.iter().map(|&v| (v + c) % r).collect();
        shifted.sort_unstable();
        if best.as_ref().is_none_or(|b| &shifted < b) {
            best = Some(shifted);
        }
    }
    best.unwrap()
}

/// Hermitian inner product (1/|X|) sum_x w1(x) conj(w2(x)) in floating
/// point. Distinct spherical functions are orthogonal; the diagonal value
/// is 1/dim.
pub fn zonal_inner_product(
    k1: &WeightVector,
    k2: &WeightVector,
    space: &CosetSpace,
) -> Result<(f64, f64)> {
    let f1 = SphericalFunction::new(k1)?;
    let f2 = SphericalFunction::new(k2)?;
    let mut re = 0.0;
    let mut im = 0.0;
    for x in 0..space.size() {
        let (a, b) = f1.value(space, x)?.to_complex();
        let (c, d) = f2.value(space, x)?.to_complex();
        // (a + bi)(c - di)
        re += a * c + b * d;
        im += b * c - a * d;
    }
    let size = space.size() as f64;
    Ok((re / size, im / size))
}
