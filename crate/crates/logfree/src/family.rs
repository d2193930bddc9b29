//! The counting pipeline for families: decorated-ideal index sets, smoothed
//! coefficient embeddings, the Gram-versus-series identity, quasi-orthogonal
//! certification on the real sphere, and the family-size bound report.
//!
//! The embedding sends a representation proxy to the vector
//! `(n, mu) -> sqrt(F_X(n)) a_pi(n, mu)` over the decorated index; the inner
//! product of two such vectors is a finite smoothed sum of Rankin-Selberg
//! coefficients, computable independently through
//! [`crate::coefficients::rs_coeff_ideal`].  That identity holds over the
//! strictly decorated entries (every `p^r || n` carries a partition of `r`
//! into at most `n - 1` parts) when both proxies share a unimodular central
//! character and the excluded set `S` contains all ramified primes.
//!
//! For `dim = 1` the index carries every `S`-coprime integer with the empty
//! decoration and character values as coefficients; those entries feed the
//! orthogonality diagnostics and size estimates, while the Gram identity
//! restricts to the strict sub-index (only the ideal 1 for `dim = 1`).

use crate::analytic::{smoothing_sum_f, TestFunction};
use crate::coefficients::{
    all_decorations, hecke_coeff, rs_coeff_ideal, CoeffError, DecoratedIdeal, SatakeData,
};
use crate::symmetric::{count_partitions, Partition};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("index would exceed the entry cap {0}")]
    CapExceeded(usize),
    #[error("ramified prime {p} must be excluded by S")]
    RamifiedPrime { p: u64 },
    #[error("vector {index} has norm {norm}, not a unit vector")]
    NonUnit { index: usize, norm: f64 },
    #[error("vectors must share a dimension")]
    DimMismatch,
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Default cap on enumerated index entries.
pub const DEFAULT_INDEX_CAP: usize = 1_000_000;

/// One decorated ideal in the index, optionally extended by a local-factor
/// block index `(a, nu)`.  The block slot is populated only when induction
/// data at the ramified places is supplied; the default pipeline excludes
/// those places through `S` and leaves it empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexEntry {
    pub ideal: u64,
    pub decorations: BTreeMap<u64, Partition>,
    pub block: Option<(usize, u32)>,
}

impl IndexEntry {
    /// Whether every prime power `p^r || ideal` carries a decoration of
    /// total `r` (the strict convention; for `dim = 1` only the ideal 1).
    pub fn is_strict(&self) -> bool {
        crate::sieve::factorize(self.ideal).into_iter().all(|(p, r)| {
            self.decorations.get(&p).is_some_and(|mu| mu.total() == u64::from(r))
        })
    }
}

/// The decorated index `I_S(X)` for dimension `n`.
#[derive(Debug, Clone)]
pub struct DecoratedIndex {
    x_scale: f64,
    excluded: Vec<u64>,
    dim: usize,
    entries: Vec<IndexEntry>,
}

impl DecoratedIndex {
    pub fn x_scale(&self) -> f64 {
        self.x_scale
    }

    pub fn excluded(&self) -> &[u64] {
        &self.excluded
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[IndexEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Enumerates the decorated index: ideals up to `x` coprime to `excluded`,
/// each with its admissible decorations, ordered by ideal then decoration.
///
/// For `dim >= 2` every `p^r || m` carries a partition of `r` into at most
/// `dim - 1` parts; for `dim = 1` each ideal appears once, undecorated.
pub fn build_index(
    x: f64,
    excluded: &[u64],
    dim: usize,
    cap: usize,
) -> Result<DecoratedIndex, FamilyError> {
    assert!(dim >= 1, "dimension must be positive");
    assert!(x >= 1.0, "index needs X >= 1");
    let mut entries = Vec::new();
    let limit = x.floor() as u64;
    for m in 1..=limit {
        if excluded.iter().any(|&p| m % p == 0) {
            continue;
        }
        if dim == 1 {
            entries.push(IndexEntry { ideal: m, decorations: BTreeMap::new(), block: None });
        } else {
            for decorations in all_decorations(m, dim) {
                entries.push(IndexEntry { ideal: m, decorations, block: None });
            }
        }
        if entries.len() > cap {
            return Err(FamilyError::CapExceeded(cap));
        }
    }
    Ok(DecoratedIndex { x_scale: x, excluded: excluded.to_vec(), dim, entries })
}

/// Extends an index by local-factor block labels: every entry is repeated
/// once per `(a, nu)` pair, in the given order.
pub fn extend_index_with_blocks(
    index: &DecoratedIndex,
    block_indices: &[(usize, u32)],
) -> DecoratedIndex {
    let mut entries = Vec::with_capacity(index.len() * block_indices.len().max(1));
    for entry in index.entries() {
        for &block in block_indices {
            entries.push(IndexEntry {
                ideal: entry.ideal,
                decorations: entry.decorations.clone(),
                block: Some(block),
            });
        }
    }
    DecoratedIndex {
        x_scale: index.x_scale,
        excluded: index.excluded.clone(),
        dim: index.dim,
        entries,
    }
}

/// `sum_{m <= x, (m, S) = 1} prod_{p^r || m} #P_{n-1}(r)`: the independent
/// multiplicative size evaluator for the strict index (`dim >= 2`); for
/// `dim = 1` it counts the `S`-coprime integers.
pub fn count_index(x: f64, excluded: &[u64], dim: usize) -> u64 {
    let limit = x.floor() as usize;
    if limit == 0 {
        return 0;
    }
    let spf = crate::sieve::smallest_prime_factors(limit);
    let mut total = 0u64;
    'outer: for m in 1..=limit {
        if excluded.iter().any(|&p| m as u64 % p == 0) {
            continue;
        }
        if dim == 1 {
            total += 1;
            continue;
        }
        let mut weight = 1u64;
        let mut rest = m;
        while rest > 1 {
            let p = spf[rest] as usize;
            let mut r = 0i64;
            while rest % p == 0 {
                rest /= p;
                r += 1;
            }
            weight *= count_partitions(dim - 1, r);
            if weight == 0 {
                continue 'outer;
            }
        }
        total += weight;
    }
    total
}

fn entry_coeff(pi: &SatakeData, entry: &IndexEntry) -> Result<Complex64, CoeffError> {
    if pi.dim() == 1 {
        return hecke_coeff(pi, entry.ideal);
    }
    let ideal = DecoratedIdeal::new(entry.ideal, entry.decorations.clone())?;
    crate::coefficients::decorated_coeff(pi, &ideal)
}

fn check_ramification(pi: &SatakeData, excluded: &[u64]) -> Result<(), FamilyError> {
    for (p, _) in crate::sieve::factorize(pi.conductor()) {
        if !excluded.contains(&p) {
            return Err(FamilyError::RamifiedPrime { p });
        }
    }
    Ok(())
}

/// The embedded vector over an index.
#[derive(Debug, Clone)]
pub struct EmbeddedVector {
    pub coords: Vec<Complex64>,
}

impl EmbeddedVector {
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &EmbeddedVector) -> Complex64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b.conj()).sum()
    }

    /// Realified coordinates: interleaved real and imaginary parts, under
    /// the identification of `C^N` with `R^(2N)`.
    pub fn realify(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.coords.len());
        for c in &self.coords {
            out.push(c.re);
            out.push(c.im);
        }
        out
    }
}

/// Embeds a proxy: coordinate `sqrt(F_X(n)) a_pi(n, mu)` at each entry.
pub fn embed(
    pi: &SatakeData,
    index: &DecoratedIndex,
    f: &TestFunction,
) -> Result<EmbeddedVector, FamilyError> {
    check_ramification(pi, &index.excluded)?;
    let mut coords = Vec::with_capacity(index.len());
    let mut smoothing_cache: BTreeMap<u64, f64> = BTreeMap::new();
    for entry in index.entries() {
        let fx = *smoothing_cache.entry(entry.ideal).or_insert_with(|| {
            smoothing_sum_f(
                entry.ideal,
                index.x_scale,
                pi.dim() as u32,
                f,
                &index.excluded,
            )
        });
        let a = entry_coeff(pi, entry)?;
        coords.push(a * fx.sqrt());
    }
    Ok(EmbeddedVector { coords })
}

/// Both sides of the Gram identity over the strictly decorated sub-index:
/// the coordinatewise inner product `<v_pi, v_pi0>` and the smoothed series
/// `sum_a a_{pi x pi0~}(a) f(a / X)`, with their difference.
#[derive(Debug, Clone, Serialize)]
pub struct GramReport {
    pub inner_re: f64,
    pub inner_im: f64,
    pub series_re: f64,
    pub series_im: f64,
    pub difference: f64,
}

pub fn gram_vs_series(
    pi: &SatakeData,
    pi0: &SatakeData,
    index: &DecoratedIndex,
    f: &TestFunction,
) -> Result<GramReport, FamilyError> {
    check_ramification(pi, &index.excluded)?;
    check_ramification(pi0, &index.excluded)?;
    let mut smoothing_cache: BTreeMap<u64, f64> = BTreeMap::new();
    let mut inner = Complex64::new(0.0, 0.0);
    for entry in index.entries() {
        if !entry.is_strict() {
            continue;
        }
        let fx = *smoothing_cache.entry(entry.ideal).or_insert_with(|| {
            smoothing_sum_f(
                entry.ideal,
                index.x_scale,
                pi.dim() as u32,
                f,
                &index.excluded,
            )
        });
        let a = entry_coeff(pi, entry)?;
        let b = entry_coeff(pi0, entry)?;
        inner += a * b.conj() * fx;
    }
    // Independent route: the smoothed Rankin-Selberg sum.
    let (_, hi) = f.support();
    let a_max = (index.x_scale * hi).floor() as u64;
    let mut series = Complex64::new(0.0, 0.0);
    for a in 1..=a_max {
        if index.excluded.iter().any(|&p| a % p == 0) {
            continue;
        }
        let weight = f.eval(a as f64 / index.x_scale);
        if weight == 0.0 {
            continue;
        }
        series += rs_coeff_ideal(pi, pi0, a)? * weight;
    }
    Ok(GramReport {
        inner_re: inner.re,
        inner_im: inner.im,
        series_re: series.re,
        series_im: series.im,
        difference: (inner - series).norm(),
    })
}

// ---------------------------------------------------------------------------
// Sphere lemma certification

/// Outcome of quasi-orthogonality certification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum CertifyOutcome {
    /// All pairs satisfy `|<u_i, u_j>| < 1/M`; hence `K <= M`.
    Ok { k: usize, m: usize },
    /// The first pair at or above the threshold.
    Violation { i: usize, j: usize, value: f64 },
}

/// Checks pairwise inner products of unit vectors in `R^M` against the
/// `1/M` threshold.  Vectors must be normalized to within `1e-9`.
pub fn quasi_orth_certify(vectors: &[Vec<f64>]) -> Result<CertifyOutcome, FamilyError> {
    let Some(first) = vectors.first() else {
        return Ok(CertifyOutcome::Ok { k: 0, m: 0 });
    };
    let m = first.len();
    for (index, v) in vectors.iter().enumerate() {
        if v.len() != m {
            return Err(FamilyError::DimMismatch);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(FamilyError::NonUnit { index, norm });
        }
    }
    let threshold = 1.0 / m as f64;
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            let dot: f64 = vectors[i].iter().zip(&vectors[j]).map(|(a, b)| a * b).sum();
            if dot.abs() >= threshold {
                return Ok(CertifyOutcome::Violation { i, j, value: dot });
            }
        }
    }
    let k = vectors.len();
    // The sphere lemma: K quasi-orthogonal unit vectors force K <= M.
    assert!(k <= m, "sphere lemma violated: {k} quasi-orthogonal vectors in R^{m}");
    Ok(CertifyOutcome::Ok { k, m })
}

/// The elementary diagnostic `0 <= |u_1 + ... + u_K|^2 <= K + K(K-1) max
/// cos`: returns `(norm_sq, bound)`.
pub fn elementary_sum_bound(vectors: &[Vec<f64>]) -> (f64, f64) {
    let Some(first) = vectors.first() else { return (0.0, 0.0) };
    let m = first.len();
    let mut sum = vec![0.0f64; m];
    for v in vectors {
        for (s, x) in sum.iter_mut().zip(v) {
            *s += x;
        }
    }
    let norm_sq: f64 = sum.iter().map(|x| x * x).sum();
    let k = vectors.len() as f64;
    let mut max_cos = f64::NEG_INFINITY;
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            let dot: f64 = vectors[i].iter().zip(&vectors[j]).map(|(a, b)| a * b).sum();
            max_cos = max_cos.max(dot);
        }
    }
    if vectors.len() < 2 {
        max_cos = 0.0;
    }
    (norm_sq, k + k * (k - 1.0) * max_cos)
}

// ---------------------------------------------------------------------------
// Family-size bound report

/// The family-size bound evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyBoundReport {
    /// `(D^(-n^2) Norm(q)^(-2) Q^(2n))^(1 + eps)`.
    pub x_unconditional: f64,
    /// `(D^(-n^2) Norm(q)^(-2) Q^(2n))^(1/2 + eps)`.
    pub x_conditional: f64,
    /// `|I_S(X)|` at the unconditional X.
    pub index_size: u64,
    /// True when the size was extrapolated rather than enumerated.
    pub index_estimated: bool,
    /// The sphere-lemma family bound `K <= 2 N`.
    pub k_bound: u64,
    /// Residue lower-bound exponent `7n/4 - 5/4 + eps` (diagnostic).
    pub residue_exponent: f64,
}

/// Evaluates the family-size bound shapes.  `S` is the prime support of
/// `norm_q`; the index dimension is enumerated exactly when feasible and
/// linearly extrapolated beyond `10^7`.
pub fn family_bound_report(
    d_disc: f64,
    n: u32,
    big_q: f64,
    norm_q: f64,
    eps: f64,
) -> FamilyBoundReport {
    let base = d_disc.powi(-((n * n) as i32)) * norm_q.powi(-2) * big_q.powi(2 * n as i32);
    let x_unconditional = base.powf(1.0 + eps);
    let x_conditional = base.powf(0.5 + eps);
    let excluded: Vec<u64> =
        crate::sieve::factorize(norm_q as u64).into_iter().map(|(p, _)| p).collect();
    let enum_cap = 1e7;
    let (index_size, index_estimated) = if x_unconditional <= enum_cap {
        (count_index(x_unconditional, &excluded, n as usize), false)
    } else {
        let sample = count_index(enum_cap, &excluded, n as usize);
        ((sample as f64 * (x_unconditional / enum_cap)) as u64, true)
    };
    FamilyBoundReport {
        x_unconditional,
        x_conditional,
        index_size,
        index_estimated,
        k_bound: 2 * index_size,
        residue_exponent: 7.0 * f64::from(n) / 4.0 - 1.25 + eps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::DirichletCharacter;
    use crate::coefficients::SamplerKind;

    #[test]
    fn index_enumeration_examples() {
        // dim 1: all coprime integers, undecorated.
        let idx = build_index(10.0, &[2], 1, DEFAULT_INDEX_CAP).unwrap();
        let ideals: Vec<u64> = idx.entries().iter().map(|e| e.ideal).collect();
        assert_eq!(ideals, vec![1, 3, 5, 7, 9]);
        // dim 2, X = 4: one decoration per ideal.
        let idx = build_index(4.0, &[], 2, DEFAULT_INDEX_CAP).unwrap();
        assert_eq!(idx.len(), 4);
        assert!(idx.entries().iter().all(|e| e.is_strict()));
        // dim 3, X = 4: the ideal 4 = 2^2 carries |P_2(2)| = 2 decorations.
        let idx = build_index(4.0, &[], 3, DEFAULT_INDEX_CAP).unwrap();
        assert_eq!(idx.len(), 5);
    }

    #[test]
    fn block_extension_crosses_entries_with_labels() {
        let index = build_index(4.0, &[], 2, DEFAULT_INDEX_CAP).unwrap();
        let extended = extend_index_with_blocks(&index, &[(0, 1), (0, 2)]);
        assert_eq!(extended.len(), 2 * index.len());
        assert!(extended.entries().iter().all(|e| e.block.is_some()));
        assert_eq!(extended.entries()[0].block, Some((0, 1)));
        assert_eq!(extended.entries()[1].block, Some((0, 2)));
    }

    #[test]
    fn index_cap_is_enforced() {
        assert!(matches!(
            build_index(100.0, &[], 2, 10),
            Err(FamilyError::CapExceeded(10))
        ));
    }

    #[test]
    fn index_count_matches_multiplicative_evaluator() {
        for dim in 2..=4usize {
            for x in [1.0, 10.0, 100.0, 400.0] {
                let idx = build_index(x, &[3], dim, DEFAULT_INDEX_CAP).unwrap();
                assert_eq!(
                    idx.len() as u64,
                    count_index(x, &[3], dim),
                    "dim={dim} x={x}"
                );
            }
        }
        // dim 1 matches the coprime count.
        assert_eq!(count_index(10.0, &[2], 1), 5);
    }

    #[test]
    fn embedding_norm_is_definitional() {
        let pi = SatakeData::sampled(2, 1, SamplerKind::Unitary, 3);
        let idx = build_index(60.0, &[], 2, DEFAULT_INDEX_CAP).unwrap();
        let f = TestFunction::UnitMassBump;
        let v = embed(&pi, &idx, &f).unwrap();
        let mut want = 0.0;
        for entry in idx.entries() {
            let fx = smoothing_sum_f(entry.ideal, 60.0, 2, &f, &[]);
            let a = entry_coeff(&pi, entry).unwrap();
            want += fx * a.norm_sqr();
        }
        assert!((v.norm() - want.sqrt()).abs() <= 1e-12 * want.sqrt().max(1.0));
    }

    #[test]
    fn embedding_requires_excluded_ramified_primes() {
        let chi = SatakeData::from_character(DirichletCharacter::primitive_characters(5).remove(0));
        let idx = build_index(50.0, &[], 1, DEFAULT_INDEX_CAP).unwrap();
        assert!(matches!(
            embed(&chi, &idx, &TestFunction::UnitMassBump),
            Err(FamilyError::RamifiedPrime { p: 5 })
        ));
    }

    #[test]
    fn trivial_character_embedding_is_pure_smoothing() {
        let pi = SatakeData::trivial_character();
        let idx = build_index(30.0, &[], 1, DEFAULT_INDEX_CAP).unwrap();
        let f = TestFunction::UnitMassBump;
        let v = embed(&pi, &idx, &f).unwrap();
        for (entry, c) in idx.entries().iter().zip(&v.coords) {
            let fx = smoothing_sum_f(entry.ideal, 30.0, 1, &f, &[]);
            assert!((c - Complex64::new(fx.sqrt(), 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn gram_identity_for_characters() {
        let f = TestFunction::UnitMassBump;
        for q in [3u64, 5, 7, 12] {
            let excluded: Vec<u64> =
                crate::sieve::factorize(q).into_iter().map(|(p, _)| p).collect();
            for chi in DirichletCharacter::primitive_characters(q) {
                let pi = SatakeData::from_character(chi);
                let idx = build_index(300.0, &excluded, 1, DEFAULT_INDEX_CAP).unwrap();
                let report = gram_vs_series(&pi, &pi, &idx, &f).unwrap();
                assert!(
                    report.difference <= 1e-9 * (1.0 + report.series_re.abs()),
                    "q={q}: {report:?}"
                );
                // Both sides equal the S-coprime smoothed count.
                let direct: f64 = (1..=300u64)
                    .filter(|a| excluded.iter().all(|&p| a % p != 0))
                    .map(|a| f.eval(a as f64 / 300.0))
                    .sum();
                assert!((report.series_re - direct).abs() < 1e-9 * direct.max(1.0));
            }
        }
    }

    #[test]
    fn gram_identity_for_gl2_fixtures() {
        let f = TestFunction::UnitMassBump;
        let idx = build_index(80.0, &[], 2, DEFAULT_INDEX_CAP).unwrap();
        for seed in 0..10u64 {
            let pi = SatakeData::sampled_unitary_with_central(2, 1, 100 + seed, seed);
            let pi0 = SatakeData::sampled_unitary_with_central(2, 1, 200 + seed, seed);
            for (a, b) in [(&pi, &pi), (&pi, &pi0)] {
                let report = gram_vs_series(a, b, &idx, &f).unwrap();
                let scale = Complex64::new(report.series_re, report.series_im).norm();
                assert!(
                    report.difference <= 1e-9 * (1.0 + scale),
                    "seed {seed}: {report:?}"
                );
            }
        }
    }

    #[test]
    fn distinct_characters_decorrelate() {
        // Orthogonality diagnostic on the dim-1 Hecke index: inner products
        // of distinct character embeddings are small next to the diagonal.
        let f = TestFunction::UnitMassBump;
        let q = 7u64;
        let idx = build_index(420.0, &[7], 1, DEFAULT_INDEX_CAP).unwrap();
        let chars = DirichletCharacter::primitive_characters(q);
        let vs: Vec<EmbeddedVector> = chars
            .iter()
            .map(|chi| {
                embed(&SatakeData::from_character(chi.clone()), &idx, &f).unwrap()
            })
            .collect();
        let diag = vs[0].inner(&vs[0]).norm();
        for i in 0..vs.len() {
            for j in 0..vs.len() {
                if i != j {
                    let off = vs[i].inner(&vs[j]).norm();
                    assert!(off < 0.3 * diag, "off-diagonal {off} vs diagonal {diag}");
                }
            }
        }
    }

    #[test]
    fn orthonormal_bases_certify() {
        for m in [4usize, 10, 50] {
            let basis: Vec<Vec<f64>> = (0..m)
                .map(|i| (0..m).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                .collect();
            assert_eq!(quasi_orth_certify(&basis).unwrap(), CertifyOutcome::Ok { k: m, m });
        }
    }

    #[test]
    fn overfull_sets_always_violate() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5fe);
        for m in [4usize, 10, 50] {
            for _trial in 0..30 {
                let vectors: Vec<Vec<f64>> = (0..m + 1)
                    .map(|_| {
                        let mut v: Vec<f64> =
                            (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
                        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                        for x in &mut v {
                            *x /= norm;
                        }
                        v
                    })
                    .collect();
                assert!(matches!(
                    quasi_orth_certify(&vectors).unwrap(),
                    CertifyOutcome::Violation { .. }
                ));
            }
        }
    }

    #[test]
    fn non_unit_vectors_are_rejected() {
        let vectors = vec![vec![1.0, 0.0], vec![0.5, 0.0]];
        assert!(matches!(
            quasi_orth_certify(&vectors),
            Err(FamilyError::NonUnit { index: 1, .. })
        ));
    }

    #[test]
    fn elementary_bound_is_respected() {
        let basis: Vec<Vec<f64>> =
            (0..5).map(|i| (0..5).map(|j| f64::from(u8::from(i == j))).collect()).collect();
        let (norm_sq, bound) = elementary_sum_bound(&basis);
        assert!((norm_sq - 5.0).abs() < 1e-12);
        assert!(norm_sq <= bound + 1e-12);
    }

    #[test]
    fn family_bound_report_examples() {
        // D = 1, q = 1, Q = 10, n = 2, eps = 0.1: X = 10^4.4.
        let report = family_bound_report(1.0, 2, 10.0, 1.0, 0.1);
        assert!((report.x_unconditional - 10f64.powf(4.4)).abs() < 1e-6 * report.x_unconditional);
        assert!(!report.index_estimated);
        // dim 2: one decoration per ideal, so N = floor(X).
        assert_eq!(report.index_size, report.x_unconditional.floor() as u64);
        assert_eq!(report.k_bound, 2 * report.index_size);
        // Conditional X is the square root with eps adjusted.
        let base = 10f64.powi(4);
        assert!((report.x_conditional - base.powf(0.6)).abs() < 1e-9 * report.x_conditional);
        // n = 1: N is about X.
        let r1 = family_bound_report(1.0, 1, 50.0, 1.0, 0.05);
        assert_eq!(r1.index_size, r1.x_unconditional.floor() as u64);
    }
}
