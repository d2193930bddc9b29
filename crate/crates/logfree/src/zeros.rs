//! Zero tables and counting, zero-free-region models and `eta(x)`, the
//! zero-detection window and Dirichlet polynomial, and evaluators for the
//! density and exceptional-zero bound shapes.
//!
//! Zeros of degree >= 2 L-functions are never computed here; tables are
//! ingested from files or synthesized.  Tables store ordinates `gamma >= 0`
//! only; conjugate symmetry is implicit, so a zero with `gamma > 0` counts
//! twice and a real zero once.  Unspecified O-constants are explicit
//! `slack` inputs (default 0), so every emitted number is a formula
//! evaluation rather than a claim.

use crate::characters::DirichletCharacter;
use crate::coefficients::{lambda_coeff, CoeffError, SatakeData};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ZeroError {
    #[error("line {line}: cannot parse `{content}`")]
    Parse { line: usize, content: String },
    #[error("line {line}: beta = {beta} outside (0, 1)")]
    BetaRange { line: usize, beta: f64 },
    #[error("line {line}: ordinates must be strictly increasing")]
    NotSorted { line: usize },
    #[error("io: {0}")]
    Io(String),
    #[error("eta lives in [{lo:.6e}, {hi:.6e}], got {eta:.6e}")]
    EtaWindow { eta: f64, lo: f64, hi: f64 },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

// ---------------------------------------------------------------------------
// Zero tables

/// A table of nontrivial zeros `beta + i gamma`, stored with `gamma >= 0`
/// and strictly increasing.
#[derive(Debug, Clone)]
pub struct ZeroTable {
    zeros: Vec<(f64, f64)>,
    provenance: String,
}

impl ZeroTable {
    pub fn new(zeros: Vec<(f64, f64)>, provenance: &str) -> Result<Self, ZeroError> {
        for (i, &(beta, _)) in zeros.iter().enumerate() {
            if !(0.0 < beta && beta < 1.0) {
                return Err(ZeroError::BetaRange { line: i + 1, beta });
            }
        }
        for (i, w) in zeros.windows(2).enumerate() {
            if w[0].1 >= w[1].1 {
                return Err(ZeroError::NotSorted { line: i + 2 });
            }
        }
        Ok(ZeroTable { zeros, provenance: provenance.to_string() })
    }

    /// Parses a zeros file.  Format A: one positive ordinate per line with
    /// `beta = 1/2` implied.  Format B: two whitespace-separated decimals
    /// `beta gamma`.  Lines starting with `#` are ignored; the two formats
    /// may be mixed line by line.
    pub fn parse(text: &str, provenance: &str) -> Result<Self, ZeroError> {
        let mut zeros = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let (beta, gamma) = match fields.as_slice() {
                [g] => {
                    let gamma: f64 = g
                        .parse()
                        .map_err(|_| ZeroError::Parse { line, content: raw.to_string() })?;
                    (0.5, gamma)
                }
                [b, g] => {
                    let beta: f64 = b
                        .parse()
                        .map_err(|_| ZeroError::Parse { line, content: raw.to_string() })?;
                    let gamma: f64 = g
                        .parse()
                        .map_err(|_| ZeroError::Parse { line, content: raw.to_string() })?;
                    (beta, gamma)
                }
                _ => return Err(ZeroError::Parse { line, content: raw.to_string() }),
            };
            if !(0.0 < beta && beta < 1.0) {
                return Err(ZeroError::BetaRange { line, beta });
            }
            if gamma < 0.0 {
                return Err(ZeroError::Parse { line, content: raw.to_string() });
            }
            zeros.push((beta, gamma));
        }
        zeros.sort_by(|a, b| a.1.total_cmp(&b.1));
        for (i, w) in zeros.windows(2).enumerate() {
            if w[0].1 >= w[1].1 {
                return Err(ZeroError::NotSorted { line: i + 2 });
            }
        }
        Ok(ZeroTable { zeros, provenance: provenance.to_string() })
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ZeroError> {
        let text = std::fs::read_to_string(path).map_err(|e| ZeroError::Io(e.to_string()))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// The bundled table of the first 100 ordinates of Riemann zeta zeros.
    pub fn builtin_zeta() -> Self {
        static TABLE: &str = include_str!("../data/zeta_zeros_100.txt");
        Self::parse(TABLE, "builtin: first 100 zeta ordinates").expect("bundled table parses")
    }

    pub fn zeros(&self) -> &[(f64, f64)] {
        &self.zeros
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }
}

/// `N(sigma, T)`: the number of zeros with `beta >= sigma` and
/// `|gamma| <= T`, counting implicit conjugates (a stored zero with
/// `gamma > 0` contributes 2, a real zero contributes 1).
pub fn count_zeros(table: &ZeroTable, sigma: f64, t_cap: f64) -> u64 {
    assert!((0.0..=1.0).contains(&sigma), "sigma in [0, 1]");
    assert!(t_cap >= 0.0, "T >= 0");
    let mut count = 0u64;
    for &(beta, gamma) in table.zeros() {
        if beta >= sigma && gamma <= t_cap {
            count += if gamma > 0.0 { 2 } else { 1 };
        }
    }
    count
}

// ---------------------------------------------------------------------------
// Zero-free region models and eta(x)

/// One piece of a zero-free-region width function `Delta(t)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub enum DeltaPiece {
    /// `Delta = delta` for `t` in `[t_from, t_to]`.
    Constant { delta: f64, t_from: f64, t_to: f64 },
    /// `Delta(t) = c / (log_d + n_l log t)` for `t >= t_from`.
    Classical { c: f64, log_d: f64, n_l: f64, t_from: f64 },
}

/// A zero-free-region model: `Delta(t)` on `[3, infinity)` as a union of
/// pieces.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroFreeRegionModel {
    pub pieces: Vec<DeltaPiece>,
}

/// Default absolute constant for classical zero-free regions.
pub const DEFAULT_ZFR_CONSTANT: f64 = 0.1;

impl ZeroFreeRegionModel {
    /// The classical Dedekind-zeta shape
    /// `Delta(t) = c / (log_d + n_l log t)` on all of `[3, inf)`.
    pub fn classical(log_d: f64, n_l: u32, c: f64) -> Self {
        ZeroFreeRegionModel {
            pieces: vec![DeltaPiece::Classical { c, log_d, n_l: f64::from(n_l), t_from: 3.0 }],
        }
    }

    /// Constant width `delta` on `[3, t_cap]`, classical beyond.
    pub fn two_piece(delta: f64, t_cap: f64, log_d: f64, n_l: u32, c: f64) -> Self {
        ZeroFreeRegionModel {
            pieces: vec![
                DeltaPiece::Constant { delta, t_from: 3.0, t_to: t_cap },
                DeltaPiece::Classical { c, log_d, n_l: f64::from(n_l), t_from: t_cap },
            ],
        }
    }

    pub fn delta(&self, t: f64) -> Option<f64> {
        let mut best: Option<f64> = None;
        for piece in &self.pieces {
            let v = match *piece {
                DeltaPiece::Constant { delta, t_from, t_to } => {
                    (t >= t_from && t <= t_to).then_some(delta)
                }
                DeltaPiece::Classical { c, log_d, n_l, t_from } => {
                    (t >= t_from).then(|| c / (log_d + n_l * t.ln()))
                }
            };
            if let Some(v) = v {
                best = Some(best.map_or(v, |b: f64| b.min(v)));
            }
        }
        best
    }
}

/// `eta(x) = inf_{t >= 3} [Delta(t) log x + log t]` by closed form on each
/// piece.
///
/// On a constant piece the objective increases in `t`, so the infimum sits
/// at the left endpoint.  On a classical piece the objective in `u = log t`
/// is `c log x / (log_d + n u) + u`, minimized at
/// `u* = max(0, sqrt(c log x / n) - log_d / n)` and clamped to the piece.
pub fn eta_of_x(model: &ZeroFreeRegionModel, x: f64) -> f64 {
    assert!(x >= 3.0, "eta(x) needs x >= 3");
    eta_of_log_x(model, x.ln())
}

/// [`eta_of_x`] parameterized by `log x`, for scales where `x` itself
/// overflows.
pub fn eta_of_log_x(model: &ZeroFreeRegionModel, lx: f64) -> f64 {
    let mut best = f64::INFINITY;
    for piece in &model.pieces {
        let value = match *piece {
            DeltaPiece::Constant { delta, t_from, t_to: _ } => delta * lx + t_from.ln(),
            DeltaPiece::Classical { c, log_d, n_l, t_from } => {
                let u_star = ((c * lx / n_l).sqrt() - log_d / n_l).max(0.0);
                let u = u_star.max(t_from.ln());
                c * lx / (log_d + n_l * u) + u
            }
        };
        best = best.min(value);
    }
    best
}

/// Grid-search evaluation of `eta(x)` over `log t`, the oracle for the
/// closed form: a coarse scan over `[log 3, u_hi]` followed by two
/// refinement scans around the running minimum.
pub fn eta_of_x_grid(model: &ZeroFreeRegionModel, x: f64, points: usize) -> f64 {
    eta_of_log_x_grid(model, x.ln(), points)
}

/// [`eta_of_x_grid`] parameterized by `log x`.
pub fn eta_of_log_x_grid(model: &ZeroFreeRegionModel, lx: f64, points: usize) -> f64 {
    let objective = |u: f64| model.delta(u.exp()).map(|d| d * lx + u);
    // Scan u = log t from log 3 out to where the log t term alone dwarfs
    // any candidate minimum.
    let u_lo = 3f64.ln();
    let u_hi = (u_lo + 10.0).max(2.0 * lx.sqrt() + 50.0);
    let scan = |lo: f64, hi: f64| -> (f64, f64) {
        let mut best = f64::INFINITY;
        let mut best_u = lo;
        for i in 0..=points {
            let u = lo + (hi - lo) * i as f64 / points as f64;
            if let Some(v) = objective(u) {
                if v < best {
                    best = v;
                    best_u = u;
                }
            }
        }
        (best, best_u)
    };
    let (mut best, mut best_u) = scan(u_lo, u_hi);
    let mut step = (u_hi - u_lo) / points as f64;
    for _ in 0..2 {
        let (b, u) = scan((best_u - step).max(u_lo), (best_u + step).min(u_hi));
        if b < best {
            best = b;
            best_u = u;
        }
        step = 2.0 * step / points as f64;
    }
    best
}

/// The classical zero-free-region model for a field with `log D = log_d`
/// and degree `n_l`.
pub fn classical_delta(log_d: f64, n_l: u32, c: f64) -> ZeroFreeRegionModel {
    ZeroFreeRegionModel::classical(log_d, n_l, c)
}

/// A validated exceptional (Landau-Siegel type) zero: a real primitive
/// character together with a real zero `beta` in `[1/2, 1)`.  Absence is
/// modeled by `Option<&ExceptionalZero>` at the call sites.
#[derive(Debug, Clone)]
pub struct ExceptionalZero {
    chi: DirichletCharacter,
    beta: f64,
}

impl ExceptionalZero {
    pub fn new(chi: DirichletCharacter, beta: f64) -> Result<Self, ZeroError> {
        if !(0.5..1.0).contains(&beta) {
            return Err(ZeroError::BetaRange { line: 0, beta });
        }
        Ok(ExceptionalZero { chi, beta })
    }

    pub fn conductor(&self) -> u64 {
        self.chi.conductor()
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The `(character, beta)` pair consumed by the detection sums.
    pub fn twist(&self) -> (&DirichletCharacter, f64) {
        (&self.chi, self.beta)
    }
}

// ---------------------------------------------------------------------------
// Detection window

/// The derived zero-detection window: power-sum length `K`, the prime
/// range `[A1, A2]`, and the `|tau|` threshold for the residue indicator.
///
/// `A1 = exp(K / (300 eta))` and `A2 = exp(40 K / eta)` overflow floats for
/// realistic parameters, so the logarithms are the primary fields.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DetectionWindow {
    pub k: f64,
    pub log_a1: f64,
    pub log_a2: f64,
    /// `|tau| <= 200 eta` activates the residue indicator.
    pub tau_threshold: f64,
    /// Whether `eta >= 1/log_scale`, the advisory lower endpoint.
    pub eta_above_floor: bool,
}

impl DetectionWindow {
    pub fn a1(&self) -> f64 {
        self.log_a1.exp()
    }

    pub fn a2(&self) -> f64 {
        self.log_a2.exp()
    }

    /// The residue indicator: 1 when `|tau| <= 200 eta`, else 0.
    pub fn indicator(&self, tau: f64) -> u8 {
        u8::from(tau.abs() <= self.tau_threshold)
    }
}

/// Computes the detection window from the combined conductor scale
/// `log_scale = log(C(pi0) q Q T)`:
/// `K = 4000 (m0 m)^2 eta log_scale + slack`.
///
/// The stated eta window is `1/log_scale <= eta <= 10^-7 (m0 m)^-2`.  Only
/// the upper constraint (which the window formula needs) is a hard error;
/// realistic conductor scales put the lower endpoint far above the upper
/// one, so the lower comparison is reported through `eta_above_floor`.
pub fn detection_window_from_logs(
    eta: f64,
    log_scale: f64,
    m0: u32,
    m: u32,
    slack: f64,
) -> Result<DetectionWindow, ZeroError> {
    let mm = f64::from(m0) * f64::from(m);
    let lo = 1.0 / log_scale;
    let hi = 1.0 / (1e7 * mm * mm);
    if !(eta > 0.0 && eta <= hi) {
        return Err(ZeroError::EtaWindow { eta, lo, hi });
    }
    let k = 4000.0 * mm * mm * eta * log_scale + slack;
    Ok(DetectionWindow {
        k,
        log_a1: k / (300.0 * eta),
        log_a2: 40.0 * k / eta,
        tau_threshold: 200.0 * eta,
        eta_above_floor: eta >= lo,
    })
}

/// [`detection_window_from_logs`] with the scale given as plain parameters
/// `C(pi0)`, `q`, `Q`, `T`.
#[allow(clippy::too_many_arguments)]
pub fn detection_window(
    eta: f64,
    c_pi0: f64,
    q: f64,
    big_q: f64,
    t_cap: f64,
    m0: u32,
    m: u32,
    slack: f64,
) -> Result<DetectionWindow, ZeroError> {
    detection_window_from_logs(
        eta,
        c_pi0.ln() + q.ln() + big_q.ln() + t_cap.ln(),
        m0,
        m,
        slack,
    )
}

// ---------------------------------------------------------------------------
// Detection polynomial

/// The finite detection sum
/// `sum_{A1 < p <= u} lambda_{pi x pi0}(p) log p / p^(1 + i tau) *
/// (1 + chi(p) p^(beta - 1))`, with the character factor omitted when no
/// exceptional character is supplied.
pub fn detection_polynomial(
    pi: &SatakeData,
    pi0: &SatakeData,
    tau: f64,
    u: f64,
    a1: f64,
    chi: Option<(&DirichletCharacter, f64)>,
) -> Result<Complex64, ZeroError> {
    let mut acc = Complex64::new(0.0, 0.0);
    if u <= a1 {
        return Ok(acc);
    }
    for p in crate::sieve::primes_up_to(u.floor() as u64) {
        let pf = p as f64;
        if pf <= a1 {
            continue;
        }
        let lambda = lambda_coeff(pi, pi0, p)?;
        let twist = match chi {
            None => Complex64::new(1.0, 0.0),
            Some((chi, beta)) => Complex64::new(1.0, 0.0) + chi.eval(p) * pf.powf(beta - 1.0),
        };
        // p^{-(1 + i tau)} = (1/p) e^{-i tau log p}.
        let phase = Complex64::new(0.0, -tau * pf.ln()).exp();
        acc += lambda * twist * phase * (pf.ln() / pf);
    }
    Ok(acc)
}

/// Both sides of the summation-by-parts rearrangement of the smoothed
/// detection sum, for verification at desk scale.
///
/// Left: `eta * sum_{A1 <= p <= A2} j_k(eta log p) c_p`.  Right: boundary
/// term minus the exact piecewise integral of `j_k'(eta log u) S(u) du/u`
/// with `S(u) = sum_{A1 <= p <= u} c_p`.
pub fn sum_by_parts_check(
    pi: &SatakeData,
    pi0: &SatakeData,
    tau: f64,
    a1: f64,
    a2: f64,
    eta: f64,
    k: u32,
    chi: Option<(&DirichletCharacter, f64)>,
) -> Result<(Complex64, Complex64), ZeroError> {
    use crate::analytic::j_k;
    let mut primes = Vec::new();
    for p in crate::sieve::primes_up_to(a2.floor() as u64) {
        if (p as f64) >= a1 {
            primes.push(p);
        }
    }
    let coeff = |p: u64| -> Result<Complex64, ZeroError> {
        let pf = p as f64;
        let lambda = lambda_coeff(pi, pi0, p)?;
        let twist = match chi {
            None => Complex64::new(1.0, 0.0),
            Some((chi, beta)) => Complex64::new(1.0, 0.0) + chi.eval(p) * pf.powf(beta - 1.0),
        };
        let phase = Complex64::new(0.0, -tau * pf.ln()).exp();
        Ok(lambda * twist * phase * (pf.ln() / pf))
    };
    let mut lhs = Complex64::new(0.0, 0.0);
    for &p in &primes {
        lhs += coeff(p)? * j_k(eta * (p as f64).ln(), k);
    }
    lhs *= eta;
    // Right side.  S(u) is a step function; between consecutive jumps
    //   int j_k'(eta log u) du/u = [j_k(eta log u)] / eta
    // exactly, so the integral telescopes against the partial sums.
    let mut partial = Complex64::new(0.0, 0.0);
    let mut integral = Complex64::new(0.0, 0.0);
    for (i, &p) in primes.iter().enumerate() {
        partial += coeff(p)?;
        let from = eta * (p as f64).ln();
        let to = if i + 1 < primes.len() {
            eta * (primes[i + 1] as f64).ln()
        } else {
            eta * a2.ln()
        };
        integral += partial * (j_k(to, k) - j_k(from, k));
    }
    // eta^2 * (1/eta) * telescoped = eta * telescoped.
    let boundary = partial * eta * j_k(eta * a2.ln(), k);
    let rhs = boundary - eta * integral;
    Ok((lhs, rhs))
}

// ---------------------------------------------------------------------------
// Bound-formula evaluators

/// The analytic conductor `C(pi, t) = N prod_j (1 + |i t + mu_j|)` from the
/// arithmetic conductor and the archimedean parameters.
pub fn analytic_conductor(arithmetic_conductor: u64, mu: &[Complex64], t: f64) -> f64 {
    let mut acc = arithmetic_conductor as f64;
    for m in mu {
        acc *= 1.0 + (Complex64::new(0.0, t) + m).norm();
    }
    acc
}

/// The conductor-of-pairs decoupling bound
/// `C(pi x pi0, t) <= C(pi)^(d0) C(pi0)^d (1 + |t|)^(d d0)`.
pub fn pair_conductor_bound(c_pi: f64, d_pi: u32, c_pi0: f64, d_pi0: u32, t: f64) -> f64 {
    c_pi.powi(d_pi0 as i32)
        * c_pi0.powi(d_pi as i32)
        * (1.0 + t.abs()).powi((d_pi * d_pi0) as i32)
}

/// Which density bound to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityBoundKind {
    /// `(C(pi0) Q T)^(10^7 (m0 m)^4 (1 - sigma))`.
    LogFree,
    /// The log-free bound damped by `min(1, (1 - beta_chi) log(QT))`.
    LandauSiegel,
}

/// Evaluates the density bound formula (no implied constant).
#[allow(clippy::too_many_arguments)]
pub fn density_bound(
    kind: DensityBoundKind,
    c_pi0: f64,
    big_q: f64,
    t_cap: f64,
    m0: u32,
    m: u32,
    sigma: f64,
    beta_chi: Option<f64>,
) -> f64 {
    assert!((0.5..=1.0).contains(&sigma), "sigma in [1/2, 1]");
    let mm = f64::from(m0) * f64::from(m);
    let exponent = 1e7 * mm.powi(4) * (1.0 - sigma) * (c_pi0 * big_q * t_cap).ln();
    match kind {
        DensityBoundKind::LogFree => exponent.exp(),
        DensityBoundKind::LandauSiegel => {
            let beta = beta_chi.unwrap_or(0.5);
            let factor = ((1.0 - beta) * (big_q * t_cap).ln()).min(1.0);
            if factor <= 0.0 {
                return 0.0;
            }
            // Combine in log space so an overflowing base cannot turn a
            // vanishing damping factor into a NaN.
            (exponent + factor.ln()).exp()
        }
    }
}

/// Membership in the low-lying region
/// `sigma >= 1 - A / (10^7 (m0 m)^4 log(C(pi0) Q (T + 2)))`, `|t| <= T`.
#[allow(clippy::too_many_arguments)]
pub fn page_region(
    sigma: f64,
    t: f64,
    a: f64,
    c_pi0: f64,
    big_q: f64,
    t_cap: f64,
    m0: u32,
    m: u32,
) -> bool {
    if t.abs() > t_cap {
        return false;
    }
    let mm = f64::from(m0) * f64::from(m);
    let threshold = 1.0 - a / (1e7 * mm.powi(4) * (c_pi0 * big_q * (t_cap + 2.0)).ln());
    sigma >= threshold
}
