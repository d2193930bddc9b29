//! Bernstein-Zelevinsky induction data at one finite place and the ramified
//! Rankin-Selberg local factor.
//!
//! A datum records the residue cardinality `q_v`, the block dimensions
//! `n_j` with analytic parameters `s_j = sigma_j + i t_j` (encoded as
//! `z_j = q_v^(-s_j - n_j/2)`), a partition of the block indices into twist
//! classes, and per-class torsion numbers `e_a | n`.  For two data of the
//! same combinatorial type the local factor is
//!
//! ```text
//! prod_a prod_{nu=1..n} prod_{j,k in J_a^nu}
//!     (1 - (q^nu z_j conj(z'_k))^{e_a} q^{-e_a s})^(-1)
//! ```
//!
//! with `J_a^nu = {j in J_a : n_j >= nu}`.  Supercuspidal arithmetic data
//! beyond `(m_a, e_a, z_j)` (the representations themselves, epsilon
//! factors) is not represented.

use crate::symmetric::{enumerate_partitions, full_product, schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Threshold below which a local Euler factor counts as a pole.
pub const POLE_PROXIMITY: f64 = 1e-12;

/// Default series truncation depth.
pub const DEFAULT_SERIES_DEPTH: usize = 32;

#[derive(Debug, Error)]
pub enum LocalError {
    #[error("invalid induction datum: {0}")]
    BadDatum(String),
    #[error("combinatorial types differ: {0}")]
    TypeMismatch(String),
    #[error("local factor has a pole: |1 - root*q^(-e s)| = {0:.3e} at class {1}, nu={2}")]
    PoleProximity(f64, usize, u32),
    #[error("class index {0} out of range")]
    BadClass(usize),
    #[error("nu = {0} out of range 1..={1}")]
    BadNu(u32, u32),
    #[error(transparent)]
    Symmetric(#[from] crate::symmetric::SymmetricError),
}

/// One induction block: dimension and analytic parameter `s_j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BzBlock {
    pub n_j: u32,
    pub sigma_j: f64,
    pub t_j: f64,
}

impl BzBlock {
    pub fn s(&self) -> Complex64 {
        Complex64::new(self.sigma_j, self.t_j)
    }
}

/// Bernstein-Zelevinsky combinatorial and analytic data at one place.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BzDatum {
    pub q_v: u64,
    pub blocks: Vec<BzBlock>,
    /// Set partition of block indices into twist classes `J_1, ..., J_A`.
    pub classes: Vec<Vec<usize>>,
    /// Torsion numbers, one per class, each dividing `n`.
    pub e: Vec<u32>,
}

impl BzDatum {
    pub fn new(
        q_v: u64,
        blocks: Vec<BzBlock>,
        classes: Vec<Vec<usize>>,
        e: Vec<u32>,
    ) -> Result<Self, LocalError> {
        if q_v < 2 {
            return Err(LocalError::BadDatum(format!("q_v = {q_v} < 2")));
        }
        if blocks.is_empty() {
            return Err(LocalError::BadDatum("no blocks".into()));
        }
        if blocks.iter().any(|b| b.n_j == 0) {
            return Err(LocalError::BadDatum("zero-dimensional block".into()));
        }
        for w in blocks.windows(2) {
            if w[0].sigma_j < w[1].sigma_j {
                return Err(LocalError::BadDatum(
                    "sigma_j must be non-increasing across blocks".into(),
                ));
            }
        }
        let r = blocks.len();
        let mut seen = vec![false; r];
        for class in &classes {
            for &j in class {
                if j >= r || seen[j] {
                    return Err(LocalError::BadDatum(
                        "classes must partition the block indices".into(),
                    ));
                }
                seen[j] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(LocalError::BadDatum("classes must cover every block".into()));
        }
        if e.len() != classes.len() {
            return Err(LocalError::BadDatum("one torsion number per class required".into()));
        }
        let datum = BzDatum { q_v, blocks, classes, e };
        let n = datum.total_dim();
        for &ea in &datum.e {
            if ea == 0 || n % ea != 0 {
                return Err(LocalError::BadDatum(format!("e_a = {ea} does not divide n = {n}")));
            }
        }
        Ok(datum)
    }

    /// The unramified-type datum: `n` singleton blocks in one class, `e = 1`.
    pub fn unramified(q_v: u64, s_params: &[Complex64]) -> Result<Self, LocalError> {
        let mut sp: Vec<Complex64> = s_params.to_vec();
        sp.sort_by(|a, b| b.re.total_cmp(&a.re));
        let blocks =
            sp.iter().map(|s| BzBlock { n_j: 1, sigma_j: s.re, t_j: s.im }).collect();
        BzDatum::new(q_v, blocks, vec![(0..s_params.len()).collect()], vec![1])
    }

    pub fn total_dim(&self) -> u32 {
        self.blocks.iter().map(|b| b.n_j).sum()
    }

    /// `z_j = q_v^(-s_j - n_j/2)`.
    pub fn z(&self, j: usize) -> Complex64 {
        let b = &self.blocks[j];
        let exponent = -(b.s() + Complex64::new(f64::from(b.n_j) / 2.0, 0.0));
        (exponent * (self.q_v as f64).ln()).exp()
    }

    /// Whether two data share combinatorial type (blocks, classes, torsion).
    pub fn same_type(&self, other: &Self) -> bool {
        self.q_v == other.q_v
            && self.blocks.len() == other.blocks.len()
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a.n_j == b.n_j)
            && self.classes == other.classes
            && self.e == other.e
    }

    fn class_at_least(&self, a: usize, nu: u32) -> Vec<usize> {
        self.classes[a]
            .iter()
            .copied()
            .filter(|&j| self.blocks[j].n_j >= nu)
            .collect()
    }

    /// The multiset `A^e(p; a, nu)`: parameters `(q^(nu/2) z_j)^e` over
    /// `j in J_a^nu`, padded with zeros to total size `n`.
    ///
    /// When `conjugate` is set the `z_j` are conjugated first; this is how
    /// the contragredient side enters.
    pub fn completed_multiset(&self, a: usize, nu: u32, conjugate: bool) -> Vec<Complex64> {
        let n = self.total_dim() as usize;
        let scale = (self.q_v as f64).powf(f64::from(nu) / 2.0);
        let e = self.e[a];
        let mut out: Vec<Complex64> = self
            .class_at_least(a, nu)
            .into_iter()
            .map(|j| {
                let z = if conjugate { self.z(j).conj() } else { self.z(j) };
                let base = z * scale;
                let mut acc = Complex64::new(1.0, 0.0);
                for _ in 0..e {
                    acc *= base;
                }
                acc
            })
            .collect();
        out.resize(n, Complex64::new(0.0, 0.0));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(json: &str) -> Result<Self, LocalError> {
        let raw: BzDatum =
            serde_json::from_str(json).map_err(|e| LocalError::BadDatum(e.to_string()))?;
        BzDatum::new(raw.q_v, raw.blocks, raw.classes, raw.e)
    }
}

fn ensure_same_type(sigma: &BzDatum, tau: &BzDatum) -> Result<(), LocalError> {
    if !sigma.same_type(tau) {
        return Err(LocalError::TypeMismatch(format!(
            "blocks {:?}/{:?}, classes {:?}/{:?}, e {:?}/{:?}, q {}/{}",
            sigma.blocks.iter().map(|b| b.n_j).collect::<Vec<_>>(),
            tau.blocks.iter().map(|b| b.n_j).collect::<Vec<_>>(),
            sigma.classes,
            tau.classes,
            sigma.e,
            tau.e,
            sigma.q_v,
            tau.q_v,
        )));
    }
    Ok(())
}

/// Value of the local Rankin-Selberg factor `L(s, sigma x tau~)` for two
/// same-type data.  Signals a pole when any Euler factor nearly vanishes.
pub fn local_rs_factor(
    sigma: &BzDatum,
    tau: &BzDatum,
    s: Complex64,
) -> Result<Complex64, LocalError> {
    ensure_same_type(sigma, tau)?;
    let n = sigma.total_dim();
    let lq = (sigma.q_v as f64).ln();
    let mut acc = Complex64::new(1.0, 0.0);
    for (a, &ea) in sigma.e.iter().enumerate() {
        let x_e = (-s * f64::from(ea) * lq).exp();
        for nu in 1..=n {
            let js = sigma.class_at_least(a, nu);
            let ks = tau.class_at_least(a, nu);
            let scale2 = (sigma.q_v as f64).powi(nu as i32);
            for &j in &js {
                for &k in &ks {
                    let base = sigma.z(j) * tau.z(k).conj() * scale2;
                    let mut root = Complex64::new(1.0, 0.0);
                    for _ in 0..ea {
                        root *= base;
                    }
                    let factor = Complex64::new(1.0, 0.0) - root * x_e;
                    if factor.norm() < POLE_PROXIMITY {
                        return Err(LocalError::PoleProximity(factor.norm(), a, nu));
                    }
                    acc *= factor.inv();
                }
            }
        }
    }
    Ok(acc)
}

/// Dirichlet series coefficients of the local factor up to degree `r_max`
/// in `X = q_v^(-s)`, by expanding the inverse polynomial and inverting the
/// power series.  Independent of the Schur-expansion route in
/// [`block_coeff`].
pub fn local_rs_series(
    sigma: &BzDatum,
    tau: &BzDatum,
    r_max: usize,
) -> Result<Vec<Complex64>, LocalError> {
    ensure_same_type(sigma, tau)?;
    let n = sigma.total_dim();
    // Inverse factor as a polynomial in X.
    let mut inv = vec![Complex64::new(0.0, 0.0); r_max + 1];
    inv[0] = Complex64::new(1.0, 0.0);
    for (a, &ea) in sigma.e.iter().enumerate() {
        for nu in 1..=n {
            let js = sigma.class_at_least(a, nu);
            let ks = tau.class_at_least(a, nu);
            let scale2 = (sigma.q_v as f64).powi(nu as i32);
            for &j in &js {
                for &k in &ks {
                    let base = sigma.z(j) * tau.z(k).conj() * scale2;
                    let mut root = Complex64::new(1.0, 0.0);
                    for _ in 0..ea {
                        root *= base;
                    }
                    // Multiply by (1 - root X^ea).
                    let step = ea as usize;
                    if step <= r_max {
                        for i in (step..=r_max).rev() {
                            let t = inv[i - step] * root;
                            inv[i] -= t;
                        }
                    }
                }
            }
        }
    }
    // Power-series inverse of a polynomial with constant term 1.
    let mut series = vec![Complex64::new(0.0, 0.0); r_max + 1];
    series[0] = Complex64::new(1.0, 0.0);
    for m in 1..=r_max {
        let mut s = Complex64::new(0.0, 0.0);
        for i in 1..=m {
            s += inv[i] * series[m - i];
        }
        series[m] = -s;
    }
    Ok(series)
}

/// The block coefficient `a(p^(e_a r); nu, a)` through the Schur expansion
/// on the completed multisets.
pub fn block_coeff(
    sigma: &BzDatum,
    tau: &BzDatum,
    a: usize,
    nu: u32,
    r: i64,
) -> Result<Complex64, LocalError> {
    ensure_same_type(sigma, tau)?;
    if a >= sigma.classes.len() {
        return Err(LocalError::BadClass(a));
    }
    let n = sigma.total_dim();
    if nu == 0 || nu > n {
        return Err(LocalError::BadNu(nu, n));
    }
    if r < 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let xs = sigma.completed_multiset(a, nu, false);
    let ys = tau.completed_multiset(a, nu, true);
    let weight = full_product(&xs) * full_product(&ys);
    let n = n as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut w_pow = Complex64::new(1.0, 0.0);
    let mut k = 0i64;
    loop {
        let rem = r - k * n as i64;
        if rem < 0 {
            break;
        }
        for mu in enumerate_partitions(n - 1, rem) {
            acc += w_pow * schur(&mu, &xs)? * schur(&mu, &ys)?;
        }
        w_pow *= weight;
        k += 1;
    }
    Ok(acc)
}

/// The degree-`r_max` coefficient sequence of one `(a, nu)` block in `X`:
/// entry `e_a * r` is `a(p^(e_a r); nu, a)`, other entries vanish.
pub fn block_series(
    sigma: &BzDatum,
    tau: &BzDatum,
    a: usize,
    nu: u32,
    r_max: usize,
) -> Result<Vec<Complex64>, LocalError> {
    let ea = sigma.e[a] as usize;
    let mut out = vec![Complex64::new(0.0, 0.0); r_max + 1];
    let mut r = 0usize;
    while ea * r <= r_max {
        out[ea * r] = block_coeff(sigma, tau, a, nu, r as i64)?;
        r += 1;
    }
    Ok(out)
}

/// One local root of the pair, with its Jacquet-Shalika and temperedness
/// status.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RootEntry {
    pub class: usize,
    pub nu: u32,
    pub j: usize,
    pub k: usize,
    /// `|q^nu z_j conj(z'_k)|`.
    pub modulus: f64,
    /// `q^(nu + 1 - n_j/2 - n_k/2)`, the Jacquet-Shalika ceiling.
    pub js_bound: f64,
    pub js_ok: bool,
    pub tempered_ok: bool,
}

/// Root-size audit over all classes and levels.
#[derive(Debug, Clone, Serialize)]
pub struct RootAudit {
    pub entries: Vec<RootEntry>,
    pub all_js_ok: bool,
    pub all_tempered: bool,
}

pub fn root_audit(sigma: &BzDatum, tau: &BzDatum) -> Result<RootAudit, LocalError> {
    ensure_same_type(sigma, tau)?;
    let n = sigma.total_dim();
    let q = sigma.q_v as f64;
    let mut entries = Vec::new();
    for a in 0..sigma.classes.len() {
        for nu in 1..=n {
            for &j in &sigma.class_at_least(a, nu) {
                for &k in &tau.class_at_least(a, nu) {
                    let modulus = (sigma.z(j) * tau.z(k).conj()).norm() * q.powi(nu as i32);
                    let exponent = f64::from(nu) + 1.0
                        - f64::from(sigma.blocks[j].n_j) / 2.0
                        - f64::from(tau.blocks[k].n_j) / 2.0;
                    let js_bound = q.powf(exponent);
                    entries.push(RootEntry {
                        class: a,
                        nu,
                        j,
                        k,
                        modulus,
                        js_bound,
                        js_ok: modulus < js_bound * (1.0 + 1e-12),
                        tempered_ok: modulus <= 1.0 + 1e-12,
                    });
                }
            }
        }
    }
    let all_js_ok = entries.iter().all(|e| e.js_ok);
    let all_tempered = entries.iter().all(|e| e.tempered_ok);
    Ok(RootAudit { entries, all_js_ok, all_tempered })
}

/// Seeded same-type pair generator for tests and the verification suite:
/// `q_v` from the given list, total dimension at most `n_max`, tempered or
/// Jacquet-Shalika analytic draws.
pub fn sample_same_type_pair(
    seed: u64,
    q_choices: &[u64],
    n_max: u32,
    tempered: bool,
) -> (BzDatum, BzDatum) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let q_v = q_choices[rng.gen_range(0..q_choices.len())];
    let n = rng.gen_range(1..=n_max);
    // Random composition of n into blocks.
    let mut remaining = n;
    let mut dims = Vec::new();
    while remaining > 0 {
        let d = rng.gen_range(1..=remaining);
        dims.push(d);
        remaining -= d;
    }
    // Random set partition of the blocks.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for j in 0..dims.len() {
        if !classes.is_empty() && rng.gen_bool(0.5) {
            let a = rng.gen_range(0..classes.len());
            classes[a].push(j);
        } else {
            classes.push(vec![j]);
        }
    }
    let divisors: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    let e: Vec<u32> =
        classes.iter().map(|_| divisors[rng.gen_range(0..divisors.len())]).collect();
    let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
        let mut sigmas: Vec<f64> = dims
            .iter()
            .map(|_| if tempered { 0.0 } else { rng.gen_range(-0.49..0.49) })
            .collect();
        sigmas.sort_by(|a, b| b.total_cmp(a));
        let blocks: Vec<BzBlock> = dims
            .iter()
            .zip(&sigmas)
            .map(|(&n_j, &sigma_j)| BzBlock { n_j, sigma_j, t_j: rng.gen_range(-2.0..2.0) })
            .collect();
        BzDatum::new(q_v, blocks, classes.clone(), e.clone()).expect("sampled datum is valid")
    };
    let first = draw(&mut rng);
    let second = draw(&mut rng);
    (first, second)
}
