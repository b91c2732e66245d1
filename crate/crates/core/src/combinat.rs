//! Shared combinatorial machinery: exact factorials and binomials, Catalan
//! numbers, integer partitions, composition visitors, multiset permutations,
//! and a dense permutation type with Lehmer-code ranking.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient `C(n, k)` by the incremental product
/// `C(n, k) = prod_{i=1}^{k} (n - k + i) / i`; every division is exact.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `C(2n, n) / (n + 1)`, exactly.
pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

pub fn catalan_u64(n: u64) -> u64 {
    catalan(n).to_u64().expect("catalan overflows u64")
}

/// Multinomial coefficient `(sum counts)! / prod counts_i!`, computed as a
/// product of binomials over prefix sums so no bare factorial is formed.
pub fn multinomial_of_counts(counts: &[u64]) -> BigUint {
    let mut acc = BigUint::one();
    let mut seen = 0u64;
    for &c in counts {
        seen += c;
        acc *= binomial(seen, c);
    }
    acc
}

/// All partitions of `n` (weakly decreasing part lists), in reverse
/// lexicographic order: `(n)` first, `(1^n)` last.
pub fn partitions(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, max_part: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            current.push(part as u32);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    rec(n, n, &mut current, &mut out);
    out
}

/// Visits every composition of `n` into exactly `parts` nonnegative parts,
/// in lexicographic order on the tuple. The callback borrows the scratch
/// buffer, so nothing is materialized unless the caller collects.
pub fn for_each_composition<F: FnMut(&[u32])>(n: u32, parts: usize, f: &mut F) {
    let mut buf = vec![0u32; parts];
    fn rec<F: FnMut(&[u32])>(pos: usize, left: u32, buf: &mut Vec<u32>, f: &mut F) {
        if pos + 1 == buf.len() {
            buf[pos] = left;
            f(buf);
            return;
        }
        for v in 0..=left {
            buf[pos] = v;
            rec(pos + 1, left - v, buf, f);
        }
        buf[pos] = 0;
    }
    if parts == 0 {
        if n == 0 {
            f(&[]);
        }
        return;
    }
    rec(0, n, &mut buf, f);
}

/// Distinct rearrangements of a multiset, in lexicographic order.
/// Duplicates in `items` are handled by the classic next-permutation step.
pub fn multiset_permutations(items: &[u32]) -> Vec<Vec<u32>> {
    let mut current = items.to_vec();
    current.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(current.clone());
        if !next_permutation(&mut current) {
            return out;
        }
    }
}

/// In-place lexicographic successor; returns false once the sequence is the
/// last (weakly decreasing) arrangement.
pub fn next_permutation(seq: &mut [u32]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let mut i = seq.len() - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let pivot = i - 1;
    let mut j = seq.len() - 1;
    while seq[j] <= seq[pivot] {
        j -= 1;
    }
    seq.swap(pivot, j);
    seq[i..].reverse();
    true
}

/// A permutation of `{0, ..., n-1}` stored as its image vector:
/// `images[i] = sigma(i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || seen[x as usize] {
                return Err(Error::InvalidParameter(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[x as usize] = true;
        }
        Ok(Perm { images })
    }

    /// The adjacent transposition swapping positions `i` and `i + 1`.
    pub fn adjacent_transposition(n: usize, i: usize) -> Perm {
        assert!(i + 1 < n);
        let mut images: Vec<u32> = (0..n as u32).collect();
        images.swap(i, i + 1);
        Perm { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// Lehmer-code rank; the identity has rank 0 and ranks follow
    /// lexicographic order on image vectors.
    pub fn rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0usize;
        let mut fact = 1usize;
        // digits accumulated from the right
        let mut digits = vec![0usize; n];
        for i in 0..n {
            let mut smaller_later = 0;
            for j in i + 1..n {
                if self.images[j] < self.images[i] {
                    smaller_later += 1;
                }
            }
            digits[i] = smaller_later;
        }
        for i in (0..n).rev() {
            rank += digits[i] * fact;
            fact *= n - i;
        }
        rank
    }

    pub fn unrank(n: usize, mut rank: usize) -> Perm {
        let mut fact = vec![1usize; n.max(1)];
        for i in 1..n {
            fact[i] = fact[i - 1] * i;
        }
        let mut pool: Vec<u32> = (0..n as u32).collect();
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let f = fact[n - 1 - i];
            let d = rank / f;
            rank %= f;
            images.push(pool.remove(d));
        }
        Perm { images }
    }

    /// All `n!` permutations in lexicographic (= rank) order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut out = Vec::new();
        loop {
            out.push(Perm {
                images: images.clone(),
            });
            if !next_permutation(&mut images) {
                return out;
            }
        }
    }

    /// Cycle type as a weakly decreasing partition of the degree.
    pub fn cycle_type(&self) -> Vec<u32> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.apply(cur);
                len += 1;
            }
            cycles.push(len);
        }
        cycles.sort_unstable_by(|a, b| b.cmp(a));
        cycles
    }

    /// A canonical permutation with the given cycle type (consecutive blocks).
    pub fn with_cycle_type(cycle_type: &[u32]) -> Perm {
        let n: u32 = cycle_type.iter().sum();
        let mut images: Vec<u32> = (0..n).collect();
        let mut base = 0u32;
        for &len in cycle_type {
            for off in 0..len {
                images[(base + off) as usize] = base + (off + 1) % len;
            }
            base += len;
        }
        Perm { images }
    }

    pub fn is_even(&self) -> bool {
        let n = self.degree() as u32;
        let transpositions: u32 = self.cycle_type().iter().map(|&c| c - 1).sum();
        debug_assert!(transpositions <= n);
        transpositions % 2 == 0
    }
}

/// Size of the `S_n` conjugacy class with the given cycle type:
/// `n! / prod(i^{m_i} m_i!)` where `m_i` counts parts equal to `i`.
pub fn conjugacy_class_size(cycle_type: &[u32]) -> u64 {
    let n: u32 = cycle_type.iter().sum();
    let mut counts = std::collections::BTreeMap::new();
    for &c in cycle_type {
        *counts.entry(c).or_insert(0u64) += 1;
    }
    let mut z = BigUint::one();
    for (&part, &mult) in &counts {
        for _ in 0..mult {
            z *= part;
        }
        z *= factorial(mult);
    }
    (factorial(n as u64) / z).to_u64().expect("class size overflow")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_binomials_and_catalans() {
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(5, 7), BigUint::zero());
        let expected = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(catalan_u64(n as u64), c);
        }
        assert_eq!(catalan_u64(12), 208012);
    }

    #[test]
    fn multinomial_matches_factorial_quotient() {
        // oracle: plain factorial quotient
        let cases: &[&[u64]] = &[&[1, 1, 0, 1], &[3, 0, 0, 0], &[2, 1, 0], &[2, 3], &[4, 4, 4]];
        for counts in cases {
            let n: u64 = counts.iter().sum();
            let mut denom = BigUint::one();
            for &c in *counts {
                denom *= factorial(c);
            }
            assert_eq!(multinomial_of_counts(counts), factorial(n) / denom);
        }
        assert_eq!(multinomial_of_counts(&[1, 1, 0, 1]), BigUint::from(6u32));
        assert_eq!(multinomial_of_counts(&[2, 1, 0]), BigUint::from(3u32));
    }

    #[test]
    fn partition_counts() {
        // p(1..10) = 1, 2, 3, 5, 7, 11, 15, 22, 30, 42
        let expected = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (i, &p) in expected.iter().enumerate() {
            assert_eq!(partitions(i + 1).len(), p);
        }
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn composition_visitor_counts() {
        let mut count = 0u32;
        for_each_composition(3, 4, &mut |k| {
            assert_eq!(k.iter().sum::<u32>(), 3);
            count += 1;
        });
        assert_eq!(count, 20); // C(6,3)
    }

    #[test]
    fn multiset_permutations_distinct_and_sorted() {
        let perms = multiset_permutations(&[1, 0, 1]);
        assert_eq!(perms, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert_eq!(multiset_permutations(&[2, 2, 2]).len(), 1);
    }

    #[test]
    fn perm_rank_roundtrip_small() {
        for n in 0..=5usize {
            let all = Perm::all(n.max(1));
            for (expected_rank, p) in all.iter().enumerate() {
                assert_eq!(p.rank(), expected_rank);
                assert_eq!(&Perm::unrank(n.max(1), expected_rank), p);
            }
        }
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for n in 1..=7usize {
            let total: u64 = partitions(n)
                .iter()
                .map(|t| conjugacy_class_size(t))
                .sum();
            assert_eq!(BigUint::from(total), factorial(n as u64));
        }
    }

    proptest! {
        #[test]
        fn compose_then_inverse_is_identity(rank in 0usize..5040, other in 0usize..5040) {
            let p = Perm::unrank(7, rank);
            let q = Perm::unrank(7, other);
            prop_assert!(p.compose(&p.inverse()).is_identity());
            // (pq)^{-1} = q^{-1} p^{-1}
            prop_assert_eq!(
                p.compose(&q).inverse(),
                q.inverse().compose(&p.inverse())
            );
        }

        #[test]
        fn cycle_type_is_partition_of_degree(rank in 0usize..40320) {
            let p = Perm::unrank(8, rank);
            let ct = p.cycle_type();
            prop_assert_eq!(ct.iter().sum::<u32>(), 8);
            prop_assert!(ct.windows(2).all(|w| w[0] >= w[1]));
            prop_assert_eq!(Perm::with_cycle_type(&ct).cycle_type(), ct);
        }
    }
}
