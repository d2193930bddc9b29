//! Integer partitions of bounded length and Schur polynomials on complex
//! multisets.
//!
//! A partition is a non-increasing sequence of non-negative integers with
//! trailing zeros trimmed.  `P_l(r)` denotes the partitions of `r` into at
//! most `l` parts; it is empty when `r` is negative.  Schur polynomials are
//! evaluated by the Gelfand-Tsetlin branching rule
//!
//! ```text
//! s_mu(x_1, ..., x_n) = sum over nu interlacing mu of
//!                       s_nu(x_1, ..., x_{n-1}) * x_n^(|mu| - |nu|)
//! ```
//!
//! which is a sum of products of the variable values.  Repeated or vanishing
//! variables are harmless, unlike the bialternant ratio which degenerates to
//! 0/0 on repeated Satake parameters.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SymmetricError {
    #[error("partition parts must be non-increasing, got {0:?}")]
    NotSorted(Vec<u32>),
    #[error("partition length {len} exceeds number of variables {vars}")]
    TooLong { len: usize, vars: usize },
    #[error("multiset size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("local series block {index} has leading coefficient {lead} != 1")]
    UnnormalizedBlock { index: usize, lead: Complex64 },
}

/// A partition: finitely many non-increasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, trimming trailing zeros.  Rejects increasing runs.
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self, SymmetricError> {
        let mut parts = parts.into();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SymmetricError::NotSorted(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// The zero partition.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// A single row `(r)`, or the zero partition when `r = 0`.
    pub fn row(r: u32) -> Self {
        if r == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![r] }
        }
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts `|mu|`.
    pub fn total(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// The `i`-th part, zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = SymmetricError;
    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(mu: Partition) -> Vec<u32> {
        mu.parts
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `total` into at most `max_len` parts, in descending
/// lexicographic order.  Empty when `total` is negative.
pub fn enumerate_partitions(max_len: usize, total: i64) -> Vec<Partition> {
    if total < 0 {
        return Vec::new();
    }
    let total = total as u32;
    let mut out = Vec::new();
    let mut stack = Vec::new();
    descend(total, max_len, total, &mut stack, &mut out);
    out
}

fn descend(rem: u32, slots: usize, cap: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition { parts: stack.clone() });
        return;
    }
    if slots == 0 {
        return;
    }
    // Largest feasible first part gives descending lex order; the part must
    // leave a remainder fillable by the remaining slots.
    let hi = rem.min(cap);
    let lo = rem.div_ceil(slots as u32);
    let mut p = hi;
    while p >= lo {
        stack.push(p);
        descend(rem - p, slots - 1, p, stack, out);
        stack.pop();
        if p == 0 {
            break;
        }
        p -= 1;
    }
}

/// Number of partitions of `total` into at most `max_len` parts, by the
/// coin-style dynamic program over part sizes of the conjugate shape
/// (at most `l` parts = all parts of size at most `l`).  Independent of the
/// recursive enumeration above.
pub fn count_partitions(max_len: usize, total: i64) -> u64 {
    if total < 0 {
        return 0;
    }
    let r = total as usize;
    let mut table = vec![0u64; r + 1];
    table[0] = 1;
    for m in 1..=max_len {
        if m > r {
            break;
        }
        for j in m..=r {
            table[j] += table[j - m];
        }
    }
    table[r]
}

/// Schur polynomial `s_mu` at the multiset `values`.
///
/// The zero partition gives 1.  Errors when `mu` has more parts than there
/// are variables.
pub fn schur(mu: &Partition, values: &[Complex64]) -> Result<Complex64, SymmetricError> {
    let n = values.len();
    if mu.len() > n {
        return Err(SymmetricError::TooLong { len: mu.len(), vars: n });
    }
    // Canonical variable order makes the value independent of storage order,
    // bit for bit, not just up to rounding.
    let mut values = values.to_vec();
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let shape: Vec<u32> = (0..n).map(|i| mu.part(i)).collect();
    Ok(branch(&shape, &values))
}

fn branch(shape: &[u32], values: &[Complex64]) -> Complex64 {
    let n = values.len();
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let x = values[n - 1];
    let total: u64 = shape.iter().map(|&p| u64::from(p)).sum();
    let mut acc = Complex64::new(0.0, 0.0);
    // nu interlaces shape: shape[i+1] <= nu[i] <= shape[i].
    let mut nu: Vec<u32> = shape[1..].to_vec();
    loop {
        let sub: u64 = nu.iter().map(|&p| u64::from(p)).sum();
        acc += branch(&nu, &values[..n - 1]) * cpow(x, total - sub);
        // Odometer over the interlacing box, least significant index last.
        let mut i = nu.len();
        loop {
            if i == 0 {
                return acc;
            }
            i -= 1;
            if nu[i] < shape[i] {
                nu[i] += 1;
                for j in i + 1..nu.len() {
                    nu[j] = shape[j + 1];
                }
                break;
            }
        }
    }
}

fn cpow(x: Complex64, k: u64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Complete homogeneous symmetric polynomial `h_j`, the single-row Schur
/// value `s_(j)`.
pub fn complete_homogeneous(values: &[Complex64], j: u32) -> Complex64 {
    schur(&Partition::row(j), values).expect("single row always fits")
}

/// Power sum `p_k = sum of k-th powers`.
pub fn power_sum(values: &[Complex64], k: u32) -> Complex64 {
    values.iter().map(|&v| cpow(v, u64::from(k))).sum()
}

/// Product of all entries, the elementary symmetric polynomial `e_n`.
pub fn full_product(values: &[Complex64]) -> Complex64 {
    values.iter().product()
}

/// Coefficient of `X^r` in the product of normalized power series blocks.
///
/// Every block must start with coefficient 1; missing high-order entries are
/// treated as zero.
pub fn product_series_coefficient(
    blocks: &[Vec<Complex64>],
    r: usize,
) -> Result<Complex64, SymmetricError> {
    let one = Complex64::new(1.0, 0.0);
    for (index, b) in blocks.iter().enumerate() {
        let lead = b.first().copied().unwrap_or_default();
        if (lead - one).norm() > 1e-12 {
            return Err(SymmetricError::UnnormalizedBlock { index, lead });
        }
    }
    let mut acc = vec![Complex64::new(0.0, 0.0); r + 1];
    acc[0] = one;
    for b in blocks {
        let mut next = vec![Complex64::new(0.0, 0.0); r + 1];
        for (i, &ai) in acc.iter().enumerate() {
            if ai == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &bj) in b.iter().take(r + 1 - i).enumerate() {
                next[i + j] += ai * bj;
            }
        }
        acc = next;
    }
    Ok(acc[r])
}

/// The Cauchy pairing `sum over mu in P_n(r) of s_mu(A) * s_mu(B)` for two
/// multisets of the same size `n`.
///
/// By the Cauchy identity this is the coefficient of `X^r` in
/// `prod_{j,k} (1 - A_j B_k X)^(-1)`.
pub fn cauchy_pairing(
    a: &[Complex64],
    b: &[Complex64],
    r: i64,
) -> Result<Complex64, SymmetricError> {
    if a.len() != b.len() {
        return Err(SymmetricError::SizeMismatch(a.len(), b.len()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for mu in enumerate_partitions(a.len(), r) {
        acc += schur(&mu, a)? * schur(&mu, b)?;
    }
    Ok(acc)
}

/// Coefficient of `X^r` in `prod_{j,k} (1 - A_j B_k X)^(-1)` by direct
/// truncated power-series multiplication.  The series oracle for
/// [`cauchy_pairing`].
pub fn cauchy_product_series_coefficient(a: &[Complex64], b: &[Complex64], r: usize) -> Complex64 {
    let mut acc = vec![Complex64::new(0.0, 0.0); r + 1];
    acc[0] = Complex64::new(1.0, 0.0);
    for &aj in a {
        for &bk in b {
            let root = aj * bk;
            // Multiply by the geometric series of `root`.
            let mut next = vec![Complex64::new(0.0, 0.0); r + 1];
            for i in 0..=r {
                let mut term = acc[i];
                if i > 0 {
                    term += next[i - 1] * root;
                }
                next[i] = term;
            }
            acc = next;
        }
    }
    acc[r]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn enumerates_bounded_partitions_in_descending_lex_order() {
        let got = enumerate_partitions(2, 3);
        assert_eq!(
            got,
            vec![Partition::new([3]).unwrap(), Partition::new([2, 1]).unwrap()]
        );
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn zero_total_gives_only_the_zero_partition() {
        assert_eq!(enumerate_partitions(5, 0), vec![Partition::empty()]);
    }

    #[test]
    fn negative_total_gives_the_empty_set() {
        assert!(enumerate_partitions(1, -2).is_empty());
    }

    #[test]
    fn zero_length_only_fits_zero_total() {
        assert_eq!(enumerate_partitions(0, 0).len(), 1);
        assert!(enumerate_partitions(0, 3).is_empty());
    }

    #[test]
    fn enumeration_count_matches_dp_counter() {
        for max_len in 0..=20usize {
            for total in -1..=20i64 {
                assert_eq!(
                    enumerate_partitions(max_len, total).len() as u64,
                    count_partitions(max_len, total),
                    "l={max_len} r={total}"
                );
            }
        }
    }

    #[test]
    fn descending_lex_order_is_strict() {
        let parts = enumerate_partitions(4, 9);
        for w in parts.windows(2) {
            assert!(w[0].parts() > w[1].parts(), "{} !> {}", w[0], w[1]);
        }
    }

    #[test]
    fn schur_of_zero_partition_is_one() {
        let xs = [c(0.3, 0.7), c(-1.0, 0.0), c(0.0, 0.0)];
        assert_eq!(schur(&Partition::empty(), &xs).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn schur_single_box_is_the_sum() {
        let xs = [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        let got = schur(&Partition::row(1), &xs).unwrap();
        assert!((got - c(6.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn schur_21_at_ones_counts_tableaux() {
        // SSYT of shape (2,1) with entries <= 3: 8 of them.
        let xs = [c(1.0, 0.0); 3];
        let got = schur(&Partition::new([2, 1]).unwrap(), &xs).unwrap();
        assert!((got - c(8.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn schur_rejects_overlong_partition() {
        let xs = [c(1.0, 0.0)];
        assert_eq!(
            schur(&Partition::new([1, 1]).unwrap(), &xs),
            Err(SymmetricError::TooLong { len: 2, vars: 1 })
        );
    }

    #[test]
    fn schur_is_symmetric_under_permutation() {
        let mu = Partition::new([3, 1]).unwrap();
        let xs = [c(0.4, 0.1), c(-0.2, 0.9), c(0.0, -0.5)];
        let mut ys = xs;
        ys.swap(0, 2);
        ys.swap(1, 2);
        let a = schur(&mu, &xs).unwrap();
        let b = schur(&mu, &ys).unwrap();
        assert_eq!(a, b, "exchanged storage order must be bit-identical");
    }

    #[test]
    fn product_series_single_block_identity() {
        let blocks = vec![vec![c(1.0, 0.0), c(0.5, 0.0), c(0.25, 0.0)]];
        assert_eq!(product_series_coefficient(&blocks, 2).unwrap(), c(0.25, 0.0));
    }

    #[test]
    fn product_series_bilinear_cross_term() {
        let blocks = vec![vec![c(1.0, 0.0), c(2.0, 1.0)], vec![c(1.0, 0.0), c(-1.0, 3.0)]];
        let got = product_series_coefficient(&blocks, 1).unwrap();
        assert!((got - (c(2.0, 1.0) + c(-1.0, 3.0))).norm() < 1e-12);
    }

    #[test]
    fn product_series_direct_multiplication() {
        let blocks = vec![
            vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)],
        ];
        assert!((product_series_coefficient(&blocks, 2).unwrap() - c(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn product_series_rejects_unnormalized_leading_coefficient() {
        let blocks = vec![vec![c(2.0, 0.0), c(1.0, 0.0)]];
        assert!(matches!(
            product_series_coefficient(&blocks, 1),
            Err(SymmetricError::UnnormalizedBlock { index: 0, .. })
        ));
    }

    #[test]
    fn cauchy_pairing_r0_and_r1() {
        let a = [c(0.3, 0.2), c(-0.4, 0.5)];
        let b = [c(0.9, -0.1), c(0.2, 0.2)];
        assert_eq!(cauchy_pairing(&a, &b, 0).unwrap(), c(1.0, 0.0));
        let got = cauchy_pairing(&a, &b, 1).unwrap();
        let want = (a[0] + a[1]) * (b[0] + b[1]);
        assert!((got - want).norm() < 1e-12);
    }

    #[test]
    fn cauchy_pairing_all_ones_matches_series_oracle() {
        // Four factors (1-X)^(-1): coefficient of X^2 is C(5,3) = 10, as the
        // series oracle confirms.
        let a = [c(1.0, 0.0), c(1.0, 0.0)];
        let got = cauchy_pairing(&a, &a, 2).unwrap();
        let oracle = cauchy_product_series_coefficient(&a, &a, 2);
        assert!((got - oracle).norm() < 1e-12);
        assert!((oracle - c(10.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn cauchy_matches_series_oracle_on_seeded_multisets() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for n in 1..=4usize {
            for _ in 0..40 {
                let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
                    (0..n)
                        .map(|_| {
                            let m: f64 = rng.gen_range(0.0..2.0);
                            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                            c(m * t.cos(), m * t.sin())
                        })
                        .collect::<Vec<_>>()
                };
                let a = draw(&mut rng);
                let b = draw(&mut rng);
                for r in 0..=8usize {
                    let got = cauchy_pairing(&a, &b, r as i64).unwrap();
                    let want = cauchy_product_series_coefficient(&a, &b, r);
                    assert!(
                        (got - want).norm() <= 1e-9 * (1.0 + want.norm()),
                        "n={n} r={r}: {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn schur_homogeneity() {
        let mu = Partition::new([2, 1]).unwrap();
        let xs = [c(0.3, 0.2), c(-0.4, 0.5), c(0.1, -0.8)];
        let scale = c(1.3, -0.4);
        let scaled: Vec<C> = xs.iter().map(|&x| x * scale).collect();
        let lhs = schur(&mu, &scaled).unwrap();
        let rhs = schur(&mu, &xs).unwrap() * scale * scale * scale;
        assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm());
    }

    #[test]
    fn partition_display_and_accessors() {
        let mu = Partition::new([4, 2, 0, 0]).unwrap();
        assert_eq!(mu.to_string(), "(4,2)");
        assert_eq!(mu.len(), 2);
        assert_eq!(mu.total(), 6);
        assert_eq!(mu.part(5), 0);
    }
}
