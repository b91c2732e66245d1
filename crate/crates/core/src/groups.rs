//! Finite group constructions and the coset space they act on.
//!
//! Groups are handed out as dense element indices `0..order`, so hot loops
//! pay one table lookup (or one cheap decode) per product. Supported
//! constructions: cyclic Z_r, symmetric S_n, alternating A_n, GL(d, F_p)
//! and SL(d, F_p) for small d and p, and wreath products Gamma wr S_n.
//! The coset space Gamma^n / (diagonal) carries the group actions used by
//! the orbit and spherical-function machinery.

use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::combinat::Perm;
use crate::error::{Error, Result};

/// Enumeration budgets. `max_elements` caps group orders (wreath products
/// in particular), `max_points` caps coset-space sizes.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_elements: u64,
    pub max_points: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_elements: 50_000_000,
            max_points: 100_000,
        }
    }
}

/// Largest order for which a full multiplication table is precomputed.
const TABLE_CAP: usize = 2048;
/// Storage cap for explicitly enumerated matrix groups.
const MATRIX_ORDER_CAP: u64 = 2_000_000;
/// Degree cap for symmetric and alternating constructions.
const PERM_DEGREE_CAP: u32 = 8;

/// Parsed description of a constructible group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u32),
    Symmetric(u32),
    Alternating(u32),
    GeneralLinear { dim: u32, p: u32 },
    SpecialLinear { dim: u32, p: u32 },
}

impl GroupSpec {
    fn validate(&self) -> Result<()> {
        match *self {
            GroupSpec::Cyclic(r) => {
                if r < 1 {
                    return Err(Error::InvalidParameter("cyclic group needs r >= 1".into()));
                }
            }
            GroupSpec::Symmetric(n) | GroupSpec::Alternating(n) => {
                if n < 1 || n > PERM_DEGREE_CAP {
                    return Err(Error::SizeGuard {
                        what: "symmetric/alternating construction",
                        param: "n",
                        max: PERM_DEGREE_CAP as u64,
                        got: n as u64,
                    });
                }
            }
            GroupSpec::GeneralLinear { dim, p } | GroupSpec::SpecialLinear { dim, p } => {
                if !matches!(p, 2 | 3 | 5 | 7) {
                    return Err(Error::InvalidParameter(format!(
                        "matrix groups need a prime field size <= 7, got {p}"
                    )));
                }
                if dim < 1 || dim > 3 {
                    return Err(Error::InvalidParameter(format!(
                        "matrix groups need 1 <= d <= 3, got {dim}"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Accepts `Z4`, `S3`, `A4`, `GL(2,3)`, `SL(3,2)`, case-insensitively
    /// and with optional whitespace.
    fn from_str(s: &str) -> Result<GroupSpec> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let upper = compact.to_uppercase();
        let err = || Error::ParseGroupSpec(s.to_string());
        let spec = if let Some(rest) = upper.strip_prefix("GL(").and_then(|r| r.strip_suffix(')')) {
            let (d, p) = rest.split_once(',').ok_or_else(err)?;
            GroupSpec::GeneralLinear {
                dim: d.parse().map_err(|_| err())?,
                p: p.parse().map_err(|_| err())?,
            }
        } else if let Some(rest) = upper.strip_prefix("SL(").and_then(|r| r.strip_suffix(')')) {
            let (d, p) = rest.split_once(',').ok_or_else(err)?;
            GroupSpec::SpecialLinear {
                dim: d.parse().map_err(|_| err())?,
                p: p.parse().map_err(|_| err())?,
            }
        } else if let Some(r) = upper.strip_prefix('Z') {
            GroupSpec::Cyclic(r.parse().map_err(|_| err())?)
        } else if let Some(n) = upper.strip_prefix('S') {
            GroupSpec::Symmetric(n.parse().map_err(|_| err())?)
        } else if let Some(n) = upper.strip_prefix('A') {
            GroupSpec::Alternating(n.parse().map_err(|_| err())?)
        } else {
            return Err(err());
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupSpec::Cyclic(r) => write!(f, "Z{r}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::GeneralLinear { dim, p } => write!(f, "GL({dim},{p})"),
            GroupSpec::SpecialLinear { dim, p } => write!(f, "SL({dim},{p})"),
        }
    }
}

/// An element of a wreath product: n group entries plus a permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathElement {
    pub gamma_part: Vec<u32>,
    pub perm_part: Perm,
}

enum Rep {
    Cyclic {
        r: u32,
    },
    /// All of S_n; the element index is the Lehmer rank.
    Symmetric {
        n: u32,
    },
    /// Even permutations, stored as sorted S_n ranks.
    Alternating {
        n: u32,
        ranks: Vec<u64>,
    },
    /// Matrices packed p-adically (row major); `keys` is sorted ascending.
    Matrix {
        dim: u32,
        p: u32,
        keys: Vec<u64>,
    },
    Wreath {
        gamma: FiniteGroup,
        n: u32,
        n_fact: u64,
        gamma_pow: Vec<u64>,
    },
}

struct GroupInner {
    spec_label: String,
    order: usize,
    rep: Rep,
    identity: usize,
    mul_table: Option<Vec<u32>>,
    generators: OnceLock<Vec<usize>>,
}

/// A finite group on the index set `0..order`. Immutable after
/// construction and cheap to clone; safe to share across threads.
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<GroupInner>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.inner.spec_label, self.order())
    }
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn identity(&self) -> usize {
        self.inner.identity
    }

    pub fn spec_label(&self) -> &str {
        &self.inner.spec_label
    }

    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        if let Some(table) = &self.inner.mul_table {
            return table[a * self.inner.order + b] as usize;
        }
        self.product_direct(a, b)
    }

    fn product_direct(&self, a: usize, b: usize) -> usize {
        match &self.inner.rep {
            Rep::Cyclic { r } => ((a as u64 + b as u64) % *r as u64) as usize,
            Rep::Symmetric { n } => {
                let p = Perm::unrank(*n as usize, a);
                let q = Perm::unrank(*n as usize, b);
                p.compose(&q).rank()
            }
            Rep::Alternating { n, ranks } => {
                let p = Perm::unrank(*n as usize, ranks[a] as usize);
                let q = Perm::unrank(*n as usize, ranks[b] as usize);
                let r = p.compose(&q).rank() as u64;
                ranks.binary_search(&r).expect("closure violated")
            }
            Rep::Matrix { dim, p, keys } => {
                let ma = unpack_matrix(keys[a], *dim, *p);
                let mb = unpack_matrix(keys[b], *dim, *p);
                let prod = mat_mul(&ma, &mb, *dim, *p);
                let key = pack_matrix(&prod, *dim, *p);
                keys.binary_search(&key).expect("closure violated")
            }
            Rep::Wreath { .. } => {
                let x = self.wreath_element(a);
                let y = self.wreath_element(b);
                self.wreath_index(&self.wreath_multiply(&x, &y))
            }
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        match &self.inner.rep {
            Rep::Cyclic { r } => ((*r as u64 - a as u64) % *r as u64) as usize,
            Rep::Symmetric { n } => Perm::unrank(*n as usize, a).inverse().rank(),
            Rep::Alternating { n, ranks } => {
                let inv = Perm::unrank(*n as usize, ranks[a] as usize).inverse().rank() as u64;
                ranks.binary_search(&inv).expect("closure violated")
            }
            Rep::Matrix { dim, p, keys } => {
                let m = unpack_matrix(keys[a], *dim, *p);
                let inv = mat_inverse(&m, *dim, *p);
                keys.binary_search(&pack_matrix(&inv, *dim, *p))
                    .expect("closure violated")
            }
            Rep::Wreath { .. } => {
                let x = self.wreath_element(a);
                self.wreath_index(&self.wreath_invert(&x))
            }
        }
    }

    pub fn label(&self, a: usize) -> String {
        match &self.inner.rep {
            Rep::Cyclic { .. } => a.to_string(),
            Rep::Symmetric { n } => perm_label(&Perm::unrank(*n as usize, a)),
            Rep::Alternating { n, ranks } => {
                perm_label(&Perm::unrank(*n as usize, ranks[a] as usize))
            }
            Rep::Matrix { dim, p, keys } => {
                let m = unpack_matrix(keys[a], *dim, *p);
                let d = *dim as usize;
                let rows: Vec<String> = (0..d)
                    .map(|i| {
                        let row: Vec<String> =
                            (0..d).map(|j| m[i * d + j].to_string()).collect();
                        format!("[{}]", row.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            }
            Rep::Wreath { gamma, .. } => {
                let w = self.wreath_element(a);
                let parts: Vec<String> =
                    w.gamma_part.iter().map(|&g| gamma.label(g as usize)).collect();
                format!("({}; {})", parts.join(","), perm_label(&w.perm_part))
            }
        }
    }

    /// A small generating set, found by greedy closure. Each new generator
    /// at least doubles the generated subgroup, so at most log2(order)
    /// elements come back.
    pub fn generators(&self) -> &[usize] {
        self.inner.generators.get_or_init(|| {
            let order = self.order();
            let mut gens: Vec<usize> = Vec::new();
            let mut in_closure = vec![false; order];
            in_closure[self.identity()] = true;
            let mut closure_size = 1usize;
            for e in 0..order {
                if closure_size == order {
                    break;
                }
                if in_closure[e] {
                    continue;
                }
                gens.push(e);
                // rebuild the closure of the enlarged generating set
                let mut queue: Vec<usize> =
                    (0..order).filter(|&x| in_closure[x]).collect();
                while let Some(x) = queue.pop() {
                    for &g in &gens {
                        let y = self.product(x, g);
                        if !in_closure[y] {
                            in_closure[y] = true;
                            closure_size += 1;
                            queue.push(y);
                        }
                    }
                }
            }
            gens
        })
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&a| {
            gens.iter()
                .all(|&b| self.product(a, b) == self.product(b, a))
        })
    }

    /// True for groups built as Z_r, where element indices are residues.
    pub fn is_cyclic_residues(&self) -> bool {
        matches!(self.inner.rep, Rep::Cyclic { .. })
    }

    /// Decodes a wreath-product element index. Panics on other groups.
    pub fn wreath_element(&self, index: usize) -> WreathElement {
        let Rep::Wreath { gamma, n, n_fact, .. } = &self.inner.rep else {
            panic!("wreath_element on a non-wreath group");
        };
        let n = *n as usize;
        let perm_rank = (index as u64 % n_fact) as usize;
        let mut tuple_index = index as u64 / n_fact;
        let g = gamma.order() as u64;
        let mut gamma_part = Vec::with_capacity(n);
        for _ in 0..n {
            gamma_part.push((tuple_index % g) as u32);
            tuple_index /= g;
        }
        WreathElement {
            gamma_part,
            perm_part: Perm::unrank(n, perm_rank),
        }
    }

    /// Inverse of [`FiniteGroup::wreath_element`].
    pub fn wreath_index(&self, w: &WreathElement) -> usize {
        let Rep::Wreath { n, n_fact, gamma_pow, .. } = &self.inner.rep else {
            panic!("wreath_index on a non-wreath group");
        };
        assert_eq!(w.gamma_part.len(), *n as usize);
        let mut tuple_index = 0u64;
        for (i, &g) in w.gamma_part.iter().enumerate() {
            tuple_index += g as u64 * gamma_pow[i];
        }
        (tuple_index * n_fact + w.perm_part.rank() as u64) as usize
    }

    /// The wreath product law:
    /// `(g; sigma)(h; tau) = (g_i h_{sigma^{-1}(i)}; sigma tau)`.
    pub fn wreath_multiply(&self, x: &WreathElement, y: &WreathElement) -> WreathElement {
        let Rep::Wreath { gamma, n, .. } = &self.inner.rep else {
            panic!("wreath_multiply on a non-wreath group");
        };
        let n = *n as usize;
        let sigma_inv = x.perm_part.inverse();
        let gamma_part: Vec<u32> = (0..n)
            .map(|i| {
                let h = y.gamma_part[sigma_inv.apply(i)] as usize;
                gamma.product(x.gamma_part[i] as usize, h) as u32
            })
            .collect();
        WreathElement {
            gamma_part,
            perm_part: x.perm_part.compose(&y.perm_part),
        }
    }

    pub fn wreath_invert(&self, x: &WreathElement) -> WreathElement {
        let Rep::Wreath { gamma, n, .. } = &self.inner.rep else {
            panic!("wreath_invert on a non-wreath group");
        };
        let n = *n as usize;
        // (g; sigma)^{-1} = (g_{sigma(i)}^{-1}; sigma^{-1})
        let gamma_part: Vec<u32> = (0..n)
            .map(|i| gamma.inverse(x.gamma_part[x.perm_part.apply(i)] as usize) as u32)
            .collect();
        WreathElement {
            gamma_part,
            perm_part: x.perm_part.inverse(),
        }
    }

    fn from_rep(spec_label: String, order: usize, rep: Rep, identity: usize) -> FiniteGroup {
        let mut group = FiniteGroup {
            inner: Arc::new(GroupInner {
                spec_label,
                order,
                rep,
                identity,
                mul_table: None,
                generators: OnceLock::new(),
            }),
        };
        if order <= TABLE_CAP && !matches!(group.inner.rep, Rep::Cyclic { .. } | Rep::Wreath { .. })
        {
            let mut table = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    table[a * order + b] = group.product_direct(a, b) as u32;
                }
            }
            let inner = Arc::get_mut(&mut group.inner).expect("unique during construction");
            inner.mul_table = Some(table);
        }
        group
    }
}

fn perm_label(p: &Perm) -> String {
    let n = p.degree();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || p.apply(start) == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut cur = start;
        let mut first = true;
        while !seen[cur] {
            seen[cur] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(cur + 1).to_string());
            first = false;
            cur = p.apply(cur);
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

// matrices are stored row-major as a flat [u32; d*d] slice, entries mod p

fn pack_matrix(m: &[u32], dim: u32, p: u32) -> u64 {
    let mut key = 0u64;
    for i in (0..(dim * dim) as usize).rev() {
        key = key * p as u64 + m[i] as u64;
    }
    key
}

fn unpack_matrix(mut key: u64, dim: u32, p: u32) -> Vec<u32> {
    let mut m = vec![0u32; (dim * dim) as usize];
    for slot in m.iter_mut() {
        *slot = (key % p as u64) as u32;
        key /= p as u64;
    }
    m
}

fn mat_mul(a: &[u32], b: &[u32], dim: u32, p: u32) -> Vec<u32> {
    let d = dim as usize;
    let mut out = vec![0u32; d * d];
    for i in 0..d {
        for j in 0..d {
            let mut acc = 0u32;
            for k in 0..d {
                acc = (acc + a[i * d + k] * b[k * d + j]) % p;
            }
            out[i * d + j] = acc;
        }
    }
    out
}

fn mat_det(m: &[u32], dim: u32, p: u32) -> u32 {
    let pi = p as i64;
    let d = match dim {
        1 => m[0] as i64,
        2 => m[0] as i64 * m[3] as i64 - m[1] as i64 * m[2] as i64,
        3 => {
            let m = |i: usize, j: usize| m[i * 3 + j] as i64;
            m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
        }
        _ => unreachable!(),
    };
    d.rem_euclid(pi) as u32
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    // p is prime, a != 0: Fermat
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

fn mat_inverse(m: &[u32], dim: u32, p: u32) -> Vec<u32> {
    let det = mat_det(m, dim, p);
    assert!(det != 0, "singular matrix has no inverse");
    let det_inv = mod_inverse(det, p) as i64;
    let pi = p as i64;
    match dim {
        1 => vec![det_inv.rem_euclid(pi) as u32],
        2 => {
            let adj = [
                m[3] as i64,
                -(m[1] as i64),
                -(m[2] as i64),
                m[0] as i64,
            ];
            adj.iter()
                .map(|&v| (v * det_inv).rem_euclid(pi) as u32)
                .collect()
        }
        3 => {
            let at = |i: usize, j: usize| m[i * 3 + j] as i64;
            let cof = |i: usize, j: usize| {
                let rows: Vec<usize> = (0..3).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..3).filter(|&c| c != j).collect();
                let minor = at(rows[0], cols[0]) * at(rows[1], cols[1])
                    - at(rows[0], cols[1]) * at(rows[1], cols[0]);
                if (i + j) % 2 == 0 {
                    minor
                } else {
                    -minor
                }
            };
            let mut out = vec![0u32; 9];
            for i in 0..3 {
                for j in 0..3 {
                    // adjugate transposes the cofactor matrix
                    out[i * 3 + j] = ((cof(j, i)) * det_inv).rem_euclid(pi) as u32;
                }
            }
            out
        }
        _ => unreachable!(),
    }
}

/// Builds the group named by `spec`. Matrix groups are enumerated
/// exhaustively over all d-by-d matrices with entries in F_p.
pub fn make_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    spec.validate()?;
    let label = spec.to_string();
    match *spec {
        GroupSpec::Cyclic(r) => Ok(FiniteGroup::from_rep(
            label,
            r as usize,
            Rep::Cyclic { r },
            0,
        )),
        GroupSpec::Symmetric(n) => {
            let order: usize = (1..=n as usize).product();
            Ok(FiniteGroup::from_rep(label, order, Rep::Symmetric { n }, 0))
        }
        GroupSpec::Alternating(n) => {
            let full: usize = (1..=n as usize).product();
            let ranks: Vec<u64> = (0..full)
                .filter(|&r| Perm::unrank(n as usize, r).is_even())
                .map(|r| r as u64)
                .collect();
            let order = ranks.len();
            Ok(FiniteGroup::from_rep(
                label,
                order,
                Rep::Alternating { n, ranks },
                0,
            ))
        }
        GroupSpec::GeneralLinear { dim, p } | GroupSpec::SpecialLinear { dim, p } => {
            let special = matches!(spec, GroupSpec::SpecialLinear { .. });
            let candidates = (p as u64).pow(dim * dim);
            if candidates > MATRIX_ORDER_CAP.max(50_000_000) {
                return Err(Error::BudgetExceeded {
                    what: format!("enumerating {label}"),
                    needed: candidates as u128,
                    budget: MATRIX_ORDER_CAP as u128,
                    unit: "candidate matrices",
                });
            }
            let mut keys = Vec::new();
            for key in 0..candidates {
                let m = unpack_matrix(key, dim, p);
                let det = mat_det(&m, dim, p);
                let keep = if special { det == 1 } else { det != 0 };
                if keep {
                    keys.push(key);
                }
            }
            if keys.len() as u64 > MATRIX_ORDER_CAP {
                return Err(Error::BudgetExceeded {
                    what: format!("storing {label}"),
                    needed: keys.len() as u128,
                    budget: MATRIX_ORDER_CAP as u128,
                    unit: "elements",
                });
            }
            let mut ident = vec![0u32; (dim * dim) as usize];
            for i in 0..dim as usize {
                ident[i * dim as usize + i] = 1;
            }
            let identity = keys
                .binary_search(&pack_matrix(&ident, dim, p))
                .expect("identity matrix must be enumerated");
            let order = keys.len();
            Ok(FiniteGroup::from_rep(
                label,
                order,
                Rep::Matrix { dim, p, keys },
                identity,
            ))
        }
    }
}

/// The wreath product Gamma wr S_n on `|Gamma|^n * n!` indexed elements.
pub fn wreath_product(gamma: &FiniteGroup, n: u32, budget: &Budget) -> Result<FiniteGroup> {
    if n < 1 {
        return Err(Error::InvalidParameter("wreath product needs n >= 1".into()));
    }
    let g = gamma.order() as u128;
    let n_fact: u128 = (1..=n as u128).product();
    let order = g.pow(n) * n_fact;
    if order > budget.max_elements as u128 {
        return Err(Error::BudgetExceeded {
            what: format!("wreath product {} wr S{}", gamma.spec_label(), n),
            needed: order,
            budget: budget.max_elements as u128,
            unit: "elements",
        });
    }
    let mut gamma_pow = Vec::with_capacity(n as usize);
    let mut acc = 1u64;
    for _ in 0..n {
        gamma_pow.push(acc);
        acc *= gamma.order() as u64;
    }
    let rep = Rep::Wreath {
        gamma: gamma.clone(),
        n,
        n_fact: n_fact as u64,
        gamma_pow,
    };
    let label = format!("{} wr S{}", gamma.spec_label(), n);
    // identity: identity tuple with the identity permutation
    let group = FiniteGroup::from_rep(label, order as usize, rep, 0);
    let id = WreathElement {
        gamma_part: vec![gamma.identity() as u32; n as usize],
        perm_part: Perm::identity(n as usize),
    };
    let id_index = group.wreath_index(&id);
    if id_index == 0 {
        return Ok(group);
    }
    // gamma identity may have a nonzero index (matrix groups)
    let mut group = group;
    Arc::get_mut(&mut group.inner).expect("unique").identity = id_index;
    Ok(group)
}

struct CosetInner {
    gamma: FiniteGroup,
    n: usize,
    size: usize,
    gamma_pow: Vec<u64>,
    base_point: usize,
}

/// The coset space X = Gamma^n / (diagonal), canonical representatives
/// normalized so the first coordinate is the identity of Gamma; points are
/// indexed 0..|Gamma|^{n-1} in mixed radix over the remaining coordinates.
#[derive(Clone)]
pub struct CosetSpace {
    inner: Arc<CosetInner>,
}

impl std::fmt::Debug for CosetSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CosetSpace({}^{} / diag, {} points)",
            self.inner.gamma.spec_label(),
            self.inner.n,
            self.inner.size
        )
    }
}

/// Builds Gamma^n / (diagonal) with its K-actions. The n = 1 space is the
/// degenerate single point; it exists so length-1 bijections have a target.
pub fn coset_space(gamma: &FiniteGroup, n: u32, budget: &Budget) -> Result<CosetSpace> {
    if n < 1 {
        return Err(Error::InvalidParameter("coset space needs n >= 1".into()));
    }
    let size = (gamma.order() as u128).pow(n - 1);
    if size > budget.max_points as u128 {
        return Err(Error::BudgetExceeded {
            what: format!("coset space {}^{} / diag", gamma.spec_label(), n),
            needed: size,
            budget: budget.max_points as u128,
            unit: "points",
        });
    }
    let mut gamma_pow = Vec::with_capacity((n - 1) as usize);
    let mut acc = 1u64;
    for _ in 0..n - 1 {
        gamma_pow.push(acc);
        acc *= gamma.order() as u64;
    }
    let mut inner = CosetInner {
        gamma: gamma.clone(),
        n: n as usize,
        size: size as usize,
        gamma_pow,
        base_point: 0,
    };
    let e = inner.gamma.identity() as u32;
    let identity_tuple = vec![e; n as usize];
    inner.base_point = index_of_canonical(&inner, &identity_tuple);
    Ok(CosetSpace {
        inner: Arc::new(inner),
    })
}

fn index_of_canonical(inner: &CosetInner, tuple: &[u32]) -> usize {
    debug_assert_eq!(tuple[0] as usize, inner.gamma.identity());
    let mut idx = 0u64;
    for i in 1..inner.n {
        idx += tuple[i] as u64 * inner.gamma_pow[i - 1];
    }
    idx as usize
}

impl CosetSpace {
    pub fn gamma(&self) -> &FiniteGroup {
        &self.inner.gamma
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn size(&self) -> usize {
        self.inner.size
    }

    /// Index of the identity coset.
    pub fn base_point(&self) -> usize {
        self.inner.base_point
    }

    /// Canonical representative tuple of a point.
    pub fn point(&self, index: usize) -> Vec<u32> {
        assert!(index < self.inner.size);
        let g = self.inner.gamma.order() as u64;
        let mut tuple = Vec::with_capacity(self.inner.n);
        tuple.push(self.inner.gamma.identity() as u32);
        let mut rest = index as u64;
        for _ in 1..self.inner.n {
            tuple.push((rest % g) as u32);
            rest /= g;
        }
        tuple
    }

    /// Canonical form of an arbitrary tuple: right-multiply every
    /// coordinate by the inverse of the first, so h ~ h * delta collapses.
    pub fn canonicalize(&self, tuple: &[u32]) -> Vec<u32> {
        assert_eq!(tuple.len(), self.inner.n);
        let gamma = &self.inner.gamma;
        let c = gamma.inverse(tuple[0] as usize);
        tuple
            .iter()
            .map(|&h| gamma.product(h as usize, c) as u32)
            .collect()
    }

    /// Index of the coset containing `tuple` (canonicalizes first).
    pub fn index_of(&self, tuple: &[u32]) -> usize {
        let canonical = self.canonicalize(tuple);
        index_of_canonical(&self.inner, &canonical)
    }

    /// Action of (delta, sigma) in K = diag(Gamma) x S_n:
    /// left-multiply by the constant delta, permute coordinates, renormalize.
    pub fn k_action(&self, delta: u32, sigma: &Perm, x: usize) -> usize {
        let gamma = &self.inner.gamma;
        let h = self.point(x);
        let mut w = vec![0u32; self.inner.n];
        for (i, &hi) in h.iter().enumerate() {
            w[sigma.apply(i)] = gamma.product(delta as usize, hi as usize) as u32;
        }
        self.index_of(&w)
    }

    /// Full action of a group element (g, sigma) in Gamma wr S_n on X.
    pub fn act(&self, g: &[u32], sigma: &Perm, x: usize) -> usize {
        assert_eq!(g.len(), self.inner.n);
        let gamma = &self.inner.gamma;
        let h = self.point(x);
        let mut w = vec![0u32; self.inner.n];
        for (i, &hi) in h.iter().enumerate() {
            let j = sigma.apply(i);
            w[j] = gamma.product(g[j] as usize, hi as usize) as u32;
        }
        self.index_of(&w)
    }

    /// Canonical form of u^{-1} v, computed componentwise on the canonical
    /// representatives. Translating the pair (u, v) so that u lands on the
    /// base point; the pair orbital of (u, v) is the suborbit of the result.
    pub fn translate_to_base(&self, u: usize, v: usize) -> usize {
        let gamma = &self.inner.gamma;
        let tu = self.point(u);
        let tv = self.point(v);
        let mut w: Vec<u32> = tu
            .iter()
            .zip(&tv)
            .map(|(&a, &b)| gamma.product(gamma.inverse(a as usize), b as usize) as u32)
            .collect();
        // renormalize in place
        let c = gamma.inverse(w[0] as usize);
        for slot in w.iter_mut() {
            *slot = gamma.product(*slot as usize, c) as u32;
        }
        index_of_canonical(&self.inner, &w)
    }
}
