//! Dirichlet coefficients of standard and Rankin-Selberg L-functions for
//! representation proxies over the rationals.
//!
//! A proxy is pure Satake data: a dimension `n`, an arithmetic conductor,
//! and for each unramified prime `p` a size-`n` multiset of complex numbers.
//! No automorphic input exists here; every operation consumes only this
//! finite data.
//!
//! Conventions.  `lambda_coeff` computes the plain pair `lambda_{pi x pi0}`
//! (no conjugation).  The `rs_*` family and `naive_rs_partial` pair `pi`
//! with the *contragredient* of the second argument, whose Satake
//! parameters are the complex conjugates; this matches the self-pair
//! positivity `lambda_{pi x pi~} >= 0` and makes the Cauchy-identity
//! oracle comparisons meaningful.  Ramified primes are rejected loudly:
//! local data at `p | N` is not modeled here (see [`crate::local`]).

use crate::symmetric::{
    self, enumerate_partitions, full_product, schur, Partition, SymmetricError,
};
use crate::tol::Tolerance;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Largest prime for which Satake data is available by default.
pub const DEFAULT_P_MAX: u64 = 10_000;

#[derive(Debug, Error)]
pub enum CoeffError {
    #[error("prime {p} is ramified (divides conductor {conductor})")]
    Ramified { p: u64, conductor: u64 },
    #[error("prime {p} exceeds the working bound {p_max}")]
    OutOfRange { p: u64, p_max: u64 },
    #[error("no explicit Satake data stored for prime {0}")]
    MissingPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("central characters disagree at p={p} (|delta|={delta:.3e})")]
    CentralMismatch { p: u64, delta: f64 },
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("GRC flag violated at p={p}: |alpha|={modulus}")]
    GrcViolation { p: u64, modulus: f64 },
    #[error("explicit multiset at p={p} has size {got}, expected {want}")]
    WrongSize { p: u64, got: usize, want: usize },
    #[error("decoration invalid at p={p}: {why}")]
    BadDecoration { p: u64, why: String },
    #[error(transparent)]
    Symmetric(#[from] SymmetricError),
    #[error("fixture: {0}")]
    Fixture(String),
}

/// Deterministic sampler families for synthetic Satake data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerKind {
    /// All parameters on the unit circle.
    Unitary,
    /// Moduli at most 1 (generalized Ramanujan window).
    Grc,
    /// Moduli below `p^(1/2)` (Jacquet-Shalika window).
    JacquetShalika,
}

#[derive(Debug, Clone)]
enum Source {
    Explicit(BTreeMap<u64, Vec<Complex64>>),
    Sampled { kind: SamplerKind, seed: u64, central_seed: Option<u64> },
    Character(crate::characters::DirichletCharacter),
}

/// Satake data for one representation proxy.
#[derive(Debug, Clone)]
pub struct SatakeData {
    dim: usize,
    conductor: u64,
    p_max: u64,
    grc: bool,
    conjugated: bool,
    source: Source,
}

fn prime_rng(seed: u64, p: u64, salt: u8) -> ChaCha8Rng {
    let mut s = [0u8; 32];
    s[..8].copy_from_slice(&seed.to_le_bytes());
    s[8..16].copy_from_slice(&p.to_le_bytes());
    s[16] = salt;
    ChaCha8Rng::from_seed(s)
}

impl SatakeData {
    /// Explicit per-prime data.  Every stored multiset must have size `dim`;
    /// the GRC flag, when set, is checked against all stored moduli.
    pub fn explicit(
        dim: usize,
        conductor: u64,
        entries: BTreeMap<u64, Vec<Complex64>>,
        grc: bool,
    ) -> Result<Self, CoeffError> {
        assert!(dim >= 1, "dimension must be positive");
        for (&p, alphas) in &entries {
            if alphas.len() != dim {
                return Err(CoeffError::WrongSize { p, got: alphas.len(), want: dim });
            }
            if grc {
                for a in alphas {
                    if a.norm() > 1.0 + 1e-12 {
                        return Err(CoeffError::GrcViolation { p, modulus: a.norm() });
                    }
                }
            }
        }
        Ok(SatakeData {
            dim,
            conductor,
            p_max: DEFAULT_P_MAX,
            grc,
            conjugated: false,
            source: Source::Explicit(entries),
        })
    }

    /// Seeded sampler without a prescribed central character.
    pub fn sampled(dim: usize, conductor: u64, kind: SamplerKind, seed: u64) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        SatakeData {
            dim,
            conductor,
            p_max: DEFAULT_P_MAX,
            grc: !matches!(kind, SamplerKind::JacquetShalika),
            conjugated: false,
            source: Source::Sampled { kind, seed, central_seed: None },
        }
    }

    /// Unitary sampler with the central character pinned by `central_seed`:
    /// two proxies sharing `central_seed` have identical central values at
    /// every prime, as the mu-hat reduction requires.
    pub fn sampled_unitary_with_central(
        dim: usize,
        conductor: u64,
        seed: u64,
        central_seed: u64,
    ) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        SatakeData {
            dim,
            conductor,
            p_max: DEFAULT_P_MAX,
            grc: true,
            conjugated: false,
            source: Source::Sampled {
                kind: SamplerKind::Unitary,
                seed,
                central_seed: Some(central_seed),
            },
        }
    }

    /// The GL(1) proxy attached to a Dirichlet character.
    pub fn from_character(chi: crate::characters::DirichletCharacter) -> Self {
        SatakeData {
            dim: 1,
            conductor: chi.conductor(),
            p_max: DEFAULT_P_MAX,
            grc: true,
            conjugated: false,
            source: Source::Character(chi),
        }
    }

    /// The trivial GL(1) proxy (Riemann zeta).
    pub fn trivial_character() -> Self {
        Self::from_character(crate::characters::DirichletCharacter::trivial())
    }

    pub fn with_p_max(mut self, p_max: u64) -> Self {
        self.p_max = p_max;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn p_max(&self) -> u64 {
        self.p_max
    }

    pub fn is_grc(&self) -> bool {
        self.grc
    }

    /// The contragredient proxy: conjugated Satake parameters.
    pub fn contragredient(&self) -> Self {
        let mut out = self.clone();
        out.conjugated = !out.conjugated;
        out
    }

    fn check_prime(&self, p: u64) -> Result<(), CoeffError> {
        if !crate::sieve::is_prime_trial(p) {
            return Err(CoeffError::NotPrime(p));
        }
        if self.conductor % p == 0 {
            return Err(CoeffError::Ramified { p, conductor: self.conductor });
        }
        if p > self.p_max {
            return Err(CoeffError::OutOfRange { p, p_max: self.p_max });
        }
        Ok(())
    }

    /// The size-`n` Satake multiset at an unramified prime `p <= p_max`.
    pub fn satake(&self, p: u64) -> Result<Vec<Complex64>, CoeffError> {
        self.check_prime(p)?;
        let mut alphas = match &self.source {
            Source::Explicit(map) => {
                map.get(&p).cloned().ok_or(CoeffError::MissingPrime(p))?
            }
            Source::Character(chi) => vec![chi.eval(p)],
            Source::Sampled { kind, seed, central_seed } => {
                let mut rng = prime_rng(*seed, p, 0x01);
                match kind {
                    SamplerKind::Unitary => {
                        let phase = |rng: &mut ChaCha8Rng| {
                            rng.gen_range(0.0..std::f64::consts::TAU)
                        };
                        match central_seed {
                            None => (0..self.dim)
                                .map(|_| Complex64::from_polar(1.0, phase(&mut rng)))
                                .collect(),
                            Some(cs) => {
                                let mut crng = prime_rng(*cs, p, 0x02);
                                let theta_c = phase(&mut crng);
                                let mut thetas: Vec<f64> =
                                    (0..self.dim - 1).map(|_| phase(&mut rng)).collect();
                                let sum: f64 = thetas.iter().sum();
                                thetas.push(theta_c - sum);
                                thetas
                                    .into_iter()
                                    .map(|t| Complex64::from_polar(1.0, t))
                                    .collect()
                            }
                        }
                    }
                    SamplerKind::Grc => (0..self.dim)
                        .map(|_| {
                            let r: f64 = rng.gen_range(0.0..1.0);
                            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                            Complex64::from_polar(r, t)
                        })
                        .collect(),
                    SamplerKind::JacquetShalika => (0..self.dim)
                        .map(|_| {
                            let e: f64 = rng.gen_range(0.0..0.5);
                            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                            Complex64::from_polar((p as f64).powf(e), t)
                        })
                        .collect(),
                }
            }
        };
        if self.conjugated {
            for a in &mut alphas {
                *a = a.conj();
            }
        }
        Ok(alphas)
    }

    /// The central value `prod_j alpha_j(p)` at an unramified prime.
    pub fn central(&self, p: u64) -> Result<Complex64, CoeffError> {
        Ok(full_product(&self.satake(p)?))
    }
}

// ---------------------------------------------------------------------------
// Fixture format

/// JSON schema for Satake fixtures.
///
/// ```json
/// {"dimension": 2, "conductor": 1, "p_max": 10000, "grc": true,
///  "seed": 7, "sampler": "unitary", "central_seed": 3}
/// ```
/// or, with explicit parameter arrays (`alphas[j] = [re, im]`):
/// ```json
/// {"dimension": 2, "conductor": 1,
///  "primes": [{"p": 2, "alphas": [[0.6, 0.8], [0.6, -0.8]]}]}
/// ```
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SatakeFixture {
    pub dimension: usize,
    pub conductor: u64,
    #[serde(default = "default_p_max")]
    pub p_max: u64,
    #[serde(default)]
    pub grc: bool,
    #[serde(flatten)]
    pub data: FixtureData,
}

fn default_p_max() -> u64 {
    DEFAULT_P_MAX
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum FixtureData {
    Sampled {
        seed: u64,
        sampler: SamplerKind,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        central_seed: Option<u64>,
    },
    Explicit { primes: Vec<PrimeEntry> },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PrimeEntry {
    pub p: u64,
    pub alphas: Vec<[f64; 2]>,
}

impl SatakeData {
    pub fn from_fixture(fx: &SatakeFixture) -> Result<Self, CoeffError> {
        let data = match &fx.data {
            FixtureData::Sampled { seed, sampler, central_seed } => SatakeData {
                dim: fx.dimension,
                conductor: fx.conductor,
                p_max: fx.p_max,
                grc: !matches!(sampler, SamplerKind::JacquetShalika),
                conjugated: false,
                source: Source::Sampled {
                    kind: *sampler,
                    seed: *seed,
                    central_seed: *central_seed,
                },
            },
            FixtureData::Explicit { primes } => {
                let mut map = BTreeMap::new();
                for e in primes {
                    map.insert(
                        e.p,
                        e.alphas.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
                    );
                }
                Self::explicit(fx.dimension, fx.conductor, map, fx.grc)?
                    .with_p_max(fx.p_max)
            }
        };
        Ok(data)
    }

    pub fn to_fixture(&self) -> Result<SatakeFixture, CoeffError> {
        let data = match &self.source {
            Source::Sampled { kind, seed, central_seed } => FixtureData::Sampled {
                seed: *seed,
                sampler: *kind,
                central_seed: *central_seed,
            },
            Source::Explicit(map) => FixtureData::Explicit {
                primes: map
                    .iter()
                    .map(|(&p, alphas)| PrimeEntry {
                        p,
                        alphas: alphas.iter().map(|a| [a.re, a.im]).collect(),
                    })
                    .collect(),
            },
            Source::Character(_) => {
                return Err(CoeffError::Fixture(
                    "character-backed data has no fixture form".into(),
                ))
            }
        };
        Ok(SatakeFixture {
            dimension: self.dim,
            conductor: self.conductor,
            p_max: self.p_max,
            grc: self.grc,
            data,
        })
    }

    pub fn from_json(json: &str) -> Result<Self, CoeffError> {
        let fx: SatakeFixture =
            serde_json::from_str(json).map_err(|e| CoeffError::Fixture(e.to_string()))?;
        Self::from_fixture(&fx)
    }

    pub fn to_json(&self) -> Result<String, CoeffError> {
        serde_json::to_string_pretty(&self.to_fixture()?)
            .map_err(|e| CoeffError::Fixture(e.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Decorated ideals

/// A positive integer carrying, at each prime power `p^r || n`, a partition
/// of `r` into at most `n - 1` parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedIdeal {
    n_ideal: u64,
    decorations: BTreeMap<u64, Partition>,
}

impl DecoratedIdeal {
    /// Builds a decorated ideal, checking that every prime factor carries
    /// exactly one decoration of the right total.
    pub fn new(
        n_ideal: u64,
        decorations: BTreeMap<u64, Partition>,
    ) -> Result<Self, CoeffError> {
        let factors = crate::sieve::factorize(n_ideal);
        for &(p, r) in &factors {
            match decorations.get(&p) {
                None => {
                    return Err(CoeffError::BadDecoration {
                        p,
                        why: "prime factor is undecorated".into(),
                    })
                }
                Some(mu) if mu.total() != u64::from(r) => {
                    return Err(CoeffError::BadDecoration {
                        p,
                        why: format!("|mu| = {} but p^{} || n", mu.total(), r),
                    })
                }
                _ => {}
            }
        }
        for &p in decorations.keys() {
            if n_ideal % p != 0 {
                return Err(CoeffError::BadDecoration {
                    p,
                    why: "decorated prime does not divide the ideal".into(),
                });
            }
        }
        Ok(DecoratedIdeal { n_ideal, decorations })
    }

    /// The Hecke convention: each `p^r || n` gets the single-row decoration
    /// `(r)`, which recovers the Hecke eigenvalue.
    pub fn hecke(n_ideal: u64) -> Self {
        let decorations = crate::sieve::factorize(n_ideal)
            .into_iter()
            .map(|(p, r)| (p, Partition::row(r)))
            .collect();
        DecoratedIdeal { n_ideal, decorations }
    }

    pub fn ideal(&self) -> u64 {
        self.n_ideal
    }

    pub fn decorations(&self) -> &BTreeMap<u64, Partition> {
        &self.decorations
    }
}

// ---------------------------------------------------------------------------
// Coefficient functions

/// `a_pi(p^j)`: the complete homogeneous polynomial `h_j` of the Satake
/// multiset at `p`.
pub fn standard_coeff(pi: &SatakeData, p: u64, j: u32) -> Result<Complex64, CoeffError> {
    let alphas = pi.satake(p)?;
    Ok(symmetric::complete_homogeneous(&alphas, j))
}

/// `a_pi(m)` for general `m` with unramified support, by multiplicativity.
pub fn hecke_coeff(pi: &SatakeData, m: u64) -> Result<Complex64, CoeffError> {
    let mut acc = Complex64::new(1.0, 0.0);
    for (p, r) in crate::sieve::factorize(m) {
        acc *= standard_coeff(pi, p, r)?;
    }
    Ok(acc)
}

/// `lambda_{pi x pi0}(m)`: the plain pair, `p_k(A) * p_k(B)` at `m = p^k`
/// and zero when `m` is not a prime power.
pub fn lambda_coeff(pi: &SatakeData, pi0: &SatakeData, m: u64) -> Result<Complex64, CoeffError> {
    let factors = crate::sieve::factorize(m);
    for &(p, _) in &factors {
        pi.check_prime(p)?;
        pi0.check_prime(p)?;
    }
    if factors.len() != 1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (p, k) = factors[0];
    let a = symmetric::power_sum(&pi.satake(p)?, k);
    let b = symmetric::power_sum(&pi0.satake(p)?, k);
    Ok(a * b)
}

/// `lambda_{pi x pi~}(m)`: the self pair, `|p_k(A)|^2` at prime powers.
pub fn lambda_self(pi: &SatakeData, m: u64) -> Result<f64, CoeffError> {
    Ok(lambda_coeff(pi, &pi.contragredient(), m)?.re)
}

/// `a_pi(n, mu)`: product over prime factors of `s_{mu_p}(A_pi(p))`.
///
/// For `dim = 1` there are no genuine decorations; any decoration shape is
/// accepted and the value is the Hecke coefficient (a character value).
pub fn decorated_coeff(pi: &SatakeData, ideal: &DecoratedIdeal) -> Result<Complex64, CoeffError> {
    if pi.dim() == 1 {
        return hecke_coeff(pi, ideal.ideal());
    }
    let factors = crate::sieve::factorize(ideal.ideal());
    let mut acc = Complex64::new(1.0, 0.0);
    for (p, r) in factors {
        let mu = ideal.decorations().get(&p).ok_or_else(|| CoeffError::BadDecoration {
            p,
            why: "prime factor is undecorated".into(),
        })?;
        if mu.total() != u64::from(r) {
            return Err(CoeffError::BadDecoration {
                p,
                why: format!("|mu| = {} but p^{} || n", mu.total(), r),
            });
        }
        if mu.len() > pi.dim() - 1 {
            return Err(CoeffError::BadDecoration {
                p,
                why: format!("decoration length {} exceeds n-1 = {}", mu.len(), pi.dim() - 1),
            });
        }
        acc *= schur(mu, &pi.satake(p)?)?;
    }
    Ok(acc)
}

fn check_pairing(pi: &SatakeData, pi0: &SatakeData, p: u64) -> Result<(), CoeffError> {
    if pi.dim() != pi0.dim() {
        return Err(CoeffError::DimMismatch(pi.dim(), pi0.dim()));
    }
    let delta = (pi.central(p)? - pi0.central(p)?).norm();
    let tol = Tolerance::default();
    if delta > tol.abs + tol.rel {
        return Err(CoeffError::CentralMismatch { p, delta });
    }
    Ok(())
}

/// `a_{pi x pi0~}(p^r)` through the Schur expansion: the sum over
/// `k >= 0` and partitions of `r - nk` into at most `n - 1` parts of
/// `s_mu(A) * conj(s_mu(A'))`, with the central-character power carried by
/// the weight `(e_n(A) * conj(e_n(A')))^k`.
pub fn rs_coeff_prime_power(
    pi: &SatakeData,
    pi0: &SatakeData,
    p: u64,
    r: u32,
) -> Result<Complex64, CoeffError> {
    check_pairing(pi, pi0, p)?;
    let n = pi.dim();
    let a = pi.satake(p)?;
    let b = pi0.satake(p)?;
    let weight = full_product(&a) * full_product(&b).conj();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut w_pow = Complex64::new(1.0, 0.0);
    let mut k = 0u32;
    loop {
        let rem = i64::from(r) - i64::from(k) * n as i64;
        if rem < 0 {
            break;
        }
        for mu in enumerate_partitions(n - 1, rem) {
            acc += w_pow * schur(&mu, &a)? * schur(&mu, &b)?.conj();
        }
        w_pow *= weight;
        k += 1;
        if n == 0 {
            break;
        }
    }
    Ok(acc)
}

/// Independent verification oracle: coefficient of `X^r` in
/// `prod_{j,j'} (1 - alpha_j conj(alpha'_j') X)^(-1)` by direct truncated
/// power-series multiplication.
pub fn rs_coeff_oracle(
    pi: &SatakeData,
    pi0: &SatakeData,
    p: u64,
    r: u32,
) -> Result<Complex64, CoeffError> {
    check_pairing(pi, pi0, p)?;
    let a = pi.satake(p)?;
    let b: Vec<Complex64> = pi0.satake(p)?.iter().map(|z| z.conj()).collect();
    Ok(symmetric::cauchy_product_series_coefficient(&a, &b, r as usize))
}

/// `a_{pi x pi0~}(m)` assembled multiplicatively over the prime powers
/// dividing `m`.
pub fn rs_coeff_ideal(pi: &SatakeData, pi0: &SatakeData, m: u64) -> Result<Complex64, CoeffError> {
    let mut acc = Complex64::new(1.0, 0.0);
    for (p, r) in crate::sieve::factorize(m) {
        acc *= rs_coeff_prime_power(pi, pi0, p, r)?;
    }
    Ok(acc)
}

/// The same coefficient through the double-sum form: over `d` with
/// `d^n | m` and all decorations of `m / d^n`, weighting each `d` by the
/// central-character factor.  Must agree with [`rs_coeff_ideal`] exactly.
pub fn rs_coeff_ideal_double_sum(
    pi: &SatakeData,
    pi0: &SatakeData,
    m: u64,
) -> Result<Complex64, CoeffError> {
    let n = pi.dim();
    if n != pi0.dim() {
        return Err(CoeffError::DimMismatch(n, pi0.dim()));
    }
    let factors = crate::sieve::factorize(m);
    for &(p, _) in &factors {
        check_pairing(pi, pi0, p)?;
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for d in divisors_with_nth_power_dividing(m, n as u32) {
        let dn = d.checked_pow(n as u32).expect("d^n divides m");
        let rest = m / dn;
        let mut weight = Complex64::new(1.0, 0.0);
        for (p, e) in crate::sieve::factorize(d) {
            let w = pi.central(p)? * pi0.central(p)?.conj();
            for _ in 0..e {
                weight *= w;
            }
        }
        for deco in all_decorations(rest, n) {
            let ideal = DecoratedIdeal { n_ideal: rest, decorations: deco };
            let va = decorated_coeff_strict(pi, &ideal)?;
            let vb = decorated_coeff_strict(pi0, &ideal)?;
            acc += weight * va * vb.conj();
        }
    }
    Ok(acc)
}

/// Schur-product coefficient without the GL(1) Hecke fallback; used by the
/// double-sum form where the strict empty-decoration convention applies.
fn decorated_coeff_strict(
    pi: &SatakeData,
    ideal: &DecoratedIdeal,
) -> Result<Complex64, CoeffError> {
    let mut acc = Complex64::new(1.0, 0.0);
    for (p, _r) in crate::sieve::factorize(ideal.ideal()) {
        let mu = ideal.decorations().get(&p).ok_or_else(|| CoeffError::BadDecoration {
            p,
            why: "prime factor is undecorated".into(),
        })?;
        acc *= schur(mu, &pi.satake(p)?)?;
    }
    Ok(acc)
}

fn divisors_with_nth_power_dividing(m: u64, n: u32) -> Vec<u64> {
    let factors = crate::sieve::factorize(m);
    let mut out = vec![1u64];
    for (p, r) in factors {
        let max_e = if n == 0 { 0 } else { r / n };
        let mut next = Vec::new();
        for d in &out {
            let mut pe = 1u64;
            for e in 0..=max_e {
                if e > 0 {
                    pe *= p;
                }
                next.push(d * pe);
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}

/// All strict decoration maps of `m` into partitions of length `<= n - 1`.
pub fn all_decorations(m: u64, n: usize) -> Vec<BTreeMap<u64, Partition>> {
    let factors = crate::sieve::factorize(m);
    let mut out = vec![BTreeMap::new()];
    let max_len = n.saturating_sub(1);
    for (p, r) in factors {
        let choices = enumerate_partitions(max_len, i64::from(r));
        if choices.is_empty() {
            return Vec::new();
        }
        let mut next = Vec::new();
        for deco in &out {
            for mu in &choices {
                let mut d = deco.clone();
                d.insert(p, mu.clone());
                next.push(d);
            }
        }
        out = next;
    }
    out
}

/// Partial sum of the naive Rankin-Selberg series
/// `sum_{n <= bound, (n, N N0) = 1} a_pi(n) conj(a_pi0(n)) n^(-s)`.
///
/// Absolute convergence needs `Re(s) > 1`; smaller values are accepted and
/// simply produce a partial sum of a conditionally meaningful series.
pub fn naive_rs_partial(
    pi: &SatakeData,
    pi0: &SatakeData,
    s: Complex64,
    bound: u64,
) -> Result<Complex64, CoeffError> {
    let bad = pi.conductor() * pi0.conductor();
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..=bound {
        if crate::characters::gcd_u64(n, bad) != 1 {
            continue;
        }
        let a = hecke_coeff(pi, n)?;
        let b = hecke_coeff(pi0, n)?;
        let term = a * b.conj() * (-s * (n as f64).ln()).exp();
        acc += term;
    }
    Ok(acc)
}

/// Local factor of the naive series at `p`, truncated at `depth` terms:
/// `1 + sum_{j <= depth} a_pi(p^j) conj(a_pi0(p^j)) p^(-js)`.
pub fn naive_local_factor(
    pi: &SatakeData,
    pi0: &SatakeData,
    p: u64,
    s: Complex64,
    depth: u32,
) -> Result<Complex64, CoeffError> {
    let mut acc = Complex64::new(1.0, 0.0);
    let lp = (p as f64).ln();
    for j in 1..=depth {
        let a = standard_coeff(pi, p, j)?;
        let b = standard_coeff(pi0, p, j)?;
        acc += a * b.conj() * (-s * (f64::from(j) * lp)).exp();
    }
    Ok(acc)
}

/// Default truncation depth for `g_d` local series.
pub const G_D_DEFAULT_DEPTH: u32 = 40;

/// `g_d(s) = prod_{p | d} (1 - 1/L_p)` over the naive local factors, for
/// squarefree `d` coprime to both conductors.
pub fn g_d_factor(
    pi: &SatakeData,
    pi0: &SatakeData,
    d: u64,
    s: Complex64,
    depth: u32,
) -> Result<Complex64, CoeffError> {
    let factors = crate::sieve::factorize(d);
    if factors.iter().any(|&(_, e)| e > 1) {
        return Err(CoeffError::NotSquarefree(d));
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for (p, _) in factors {
        let local = naive_local_factor(pi, pi0, p, s, depth)?;
        acc *= Complex64::new(1.0, 0.0) - local.inv();
    }
    Ok(acc)
}

/// Both sides of the Cauchy-Schwarz comparison at an unramified prime
/// power, and whether the two inequalities hold within tolerance.
#[derive(Debug, Clone, Copy)]
pub struct CauchySchwarzCheck {
    /// `|lambda_{pi x pi0}(m)|`.
    pub cross: f64,
    /// `sqrt(lambda_{pi x pi~}(m) lambda_{pi0 x pi0~}(m))`.
    pub geometric: f64,
    /// `(lambda_{pi x pi~}(m) + lambda_{pi0 x pi0~}(m)) / 2`.
    pub arithmetic: f64,
    pub holds: bool,
}

/// Checks `|lambda_{pi x pi0}(m)| <= sqrt(...) <= (... + ...)/2` at a prime
/// power `m`.
pub fn check_cauchy_schwarz(
    pi: &SatakeData,
    pi0: &SatakeData,
    m: u64,
) -> Result<CauchySchwarzCheck, CoeffError> {
    let cross = lambda_coeff(pi, pi0, m)?.norm();
    let self_a = lambda_self(pi, m)?.max(0.0);
    let self_b = lambda_self(pi0, m)?.max(0.0);
    let geometric = (self_a * self_b).sqrt();
    let arithmetic = 0.5 * (self_a + self_b);
    let slack = 1e-9 * (1.0 + geometric.max(arithmetic));
    let holds = cross <= geometric + slack && geometric <= arithmetic + slack;
    Ok(CauchySchwarzCheck { cross, geometric, arithmetic, holds })
}
