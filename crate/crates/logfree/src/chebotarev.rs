//! Exact prime counting by Frobenius class for desk-scale abelian fields,
//! with evaluators for the GRH, quasi-GRH, and split-prime bound shapes.
//!
//! Splitting is a congruence condition: for the cyclotomic field of
//! conductor `q` the class of an unramified `p` is `p mod q`; for a
//! quadratic field of fundamental discriminant `d` it is the Kronecker
//! symbol `(d/p)`.  All counts are exact via the segmented sieve.
//! Nonabelian splitting (which would need polynomial factorization
//! oracles) is out of scope.

use crate::characters::{gcd_u64, is_fundamental_discriminant, kronecker};
use crate::sieve::{self, SieveError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ChebotarevError {
    #[error("cyclotomic conductor must be >= 3, got {0}")]
    BadConductor(u64),
    #[error("{0} is not a fundamental discriminant")]
    BadDiscriminant(i64),
    #[error("class residue {a} is not a unit mod {q}")]
    BadResidue { a: u64, q: u64 },
    #[error(transparent)]
    Sieve(#[from] SieveError),
    #[error("epsilon must lie in (0, {max}), got {got}")]
    BadEpsilon { got: f64, max: f64 },
}

/// A desk-scale abelian field: cyclotomic of conductor `q >= 3` or
/// quadratic of fundamental discriminant `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AbelianFieldSpec {
    Cyclotomic { q: u64 },
    Quadratic { d: i64 },
}

impl AbelianFieldSpec {
    pub fn cyclotomic(q: u64) -> Result<Self, ChebotarevError> {
        if q < 3 {
            return Err(ChebotarevError::BadConductor(q));
        }
        Ok(AbelianFieldSpec::Cyclotomic { q })
    }

    pub fn quadratic(d: i64) -> Result<Self, ChebotarevError> {
        if !is_fundamental_discriminant(d) {
            return Err(ChebotarevError::BadDiscriminant(d));
        }
        Ok(AbelianFieldSpec::Quadratic { d })
    }

    /// Galois group order: `phi(q)` or 2.
    pub fn group_order(&self) -> u64 {
        match *self {
            AbelianFieldSpec::Cyclotomic { q } => euler_phi(q),
            AbelianFieldSpec::Quadratic { .. } => 2,
        }
    }

    /// Degree of the field over the rationals (equal to the group order
    /// for abelian extensions).
    pub fn degree(&self) -> u64 {
        self.group_order()
    }

    /// Discriminant proxy `log D`: `phi(q) log q` for cyclotomic fields
    /// (a configurable stand-in), `log |d|` for quadratic ones.
    pub fn log_disc(&self) -> f64 {
        match *self {
            AbelianFieldSpec::Cyclotomic { q } => {
                euler_phi(q) as f64 * (q as f64).ln()
            }
            AbelianFieldSpec::Quadratic { d } => (d.unsigned_abs() as f64).ln(),
        }
    }

    /// Whether `p` ramifies.
    pub fn ramified(&self, p: u64) -> bool {
        match *self {
            AbelianFieldSpec::Cyclotomic { q } => q % p == 0,
            AbelianFieldSpec::Quadratic { d } => d.unsigned_abs() % p == 0,
        }
    }

    /// All conjugacy classes.
    pub fn classes(&self) -> Vec<ClassSpec> {
        match *self {
            AbelianFieldSpec::Cyclotomic { q } => (1..q)
                .filter(|&a| gcd_u64(a, q) == 1)
                .map(ClassSpec::Residue)
                .collect(),
            AbelianFieldSpec::Quadratic { .. } => {
                vec![ClassSpec::Split, ClassSpec::Inert]
            }
        }
    }

    /// The identity class (complete splitting).
    pub fn identity_class(&self) -> ClassSpec {
        match *self {
            AbelianFieldSpec::Cyclotomic { .. } => ClassSpec::Residue(1),
            AbelianFieldSpec::Quadratic { .. } => ClassSpec::Split,
        }
    }
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// A Frobenius class: a unit residue for cyclotomic fields, split or inert
/// for quadratic ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassSpec {
    Residue(u64),
    Split,
    Inert,
}

impl ClassSpec {
    fn matches(&self, field: &AbelianFieldSpec, p: u64) -> Result<bool, ChebotarevError> {
        match (field, self) {
            (AbelianFieldSpec::Cyclotomic { q }, ClassSpec::Residue(a)) => {
                if gcd_u64(*a, *q) != 1 {
                    return Err(ChebotarevError::BadResidue { a: *a, q: *q });
                }
                Ok(p % q == *a)
            }
            (AbelianFieldSpec::Quadratic { d }, ClassSpec::Split) => Ok(kronecker(*d, p) == 1),
            (AbelianFieldSpec::Quadratic { d }, ClassSpec::Inert) => Ok(kronecker(*d, p) == -1),
            _ => Err(ChebotarevError::BadResidue { a: 0, q: 0 }),
        }
    }
}

/// `pi_C(x)`: the number of unramified primes `p <= x` with Frobenius
/// class `C`.  Exact, via the segmented sieve (default capacity 10^9).
pub fn pi_c(
    field: &AbelianFieldSpec,
    class: &ClassSpec,
    x: f64,
    capacity: u64,
) -> Result<u64, ChebotarevError> {
    class.matches(field, 2)?; // validate the class spec eagerly
    if x < 2.0 {
        return Ok(0);
    }
    let limit = x.floor() as u64;
    let mut count = 0u64;
    let mut err = None;
    sieve::for_each_prime(limit, capacity, |p| {
        if err.is_some() || field.ramified(p) {
            return;
        }
        match class.matches(field, p) {
            Ok(true) => count += 1,
            Ok(false) => {}
            Err(e) => err = Some(e),
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(count)
}

/// Trial-division oracle for `pi_C(x)`, independent of the segmented sieve.
pub fn pi_c_trial(
    field: &AbelianFieldSpec,
    class: &ClassSpec,
    x: f64,
) -> Result<u64, ChebotarevError> {
    let limit = if x < 2.0 { 0 } else { x.floor() as u64 };
    let mut count = 0;
    for n in 2..=limit {
        if sieve::is_prime_trial(n) && !field.ramified(n) && class.matches(field, n)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Number of unramified completely-split primes up to `x`.
pub fn split_prime_count(
    field: &AbelianFieldSpec,
    x: f64,
    capacity: u64,
) -> Result<u64, ChebotarevError> {
    pi_c(field, &field.identity_class(), x, capacity)
}

/// One exact counting run with its error term and the GRH bound shape.
#[derive(Debug, Clone, Serialize)]
pub struct PrimeCountReport {
    pub x: f64,
    pub pi_x: u64,
    pub pi_c: u64,
    /// `(|C| / |G|) pi(x)`.
    pub expected: f64,
    /// `|pi_C(x) - (|C|/|G|) pi(x)|`, computed in integer arithmetic
    /// before the final division.
    pub error: f64,
    /// `(|C|/|G|) sqrt(x) log(D x^{|G|})`, the GRH shape (no constant).
    pub grh_bound: f64,
    /// Whether `x >= (log D)^2 (log log D)^4`.
    pub grh_range_ok: bool,
}

pub fn error_report(
    field: &AbelianFieldSpec,
    class: &ClassSpec,
    x: f64,
    capacity: u64,
) -> Result<PrimeCountReport, ChebotarevError> {
    let limit = if x < 2.0 { 0 } else { x.floor() as u64 };
    let mut pi_x = 0u64;
    sieve::for_each_prime(limit, capacity, |_| pi_x += 1)?;
    let pi_class = pi_c(field, class, x, capacity)?;
    let g = field.group_order();
    // |G| pi_C - |C| pi(x) exactly, then divide once.
    let signed = (pi_class as i128) * (g as i128) - pi_x as i128;
    let error = signed.unsigned_abs() as f64 / g as f64;
    let log_d = field.log_disc();
    let grh_bound = (1.0 / g as f64) * x.sqrt() * (log_d + g as f64 * x.ln());
    let grh_range_ok = x >= log_d.powi(2) * log_d.ln().max(1.0).powi(4);
    Ok(PrimeCountReport {
        x,
        pi_x,
        pi_c: pi_class,
        expected: pi_x as f64 / g as f64,
        error,
        grh_bound,
        grh_range_ok,
    })
}

/// `#ramified(x)`: ramified primes up to `x` (those dividing the
/// discriminant data).
pub fn ramified_count(field: &AbelianFieldSpec, x: f64) -> u64 {
    let m = match *field {
        AbelianFieldSpec::Cyclotomic { q } => q,
        AbelianFieldSpec::Quadratic { d } => d.unsigned_abs(),
    };
    crate::sieve::factorize(m)
        .into_iter()
        .filter(|&(p, _)| (p as f64) <= x)
        .count() as u64
}

// ---------------------------------------------------------------------------
// Bound-shape evaluators

/// The quasi-GRH Chebotarev error shape.
#[derive(Debug, Clone, Serialize)]
pub struct QuasiGrhBound {
    /// The three-term relative factor
    /// `x^(-delta/8) + T^(-1/24) e^(-(1/24) sqrt(c log x / n_L))
    ///  + T^(-1/24) e^(-(1/24) c log x / log D)`.
    pub relative: f64,
    pub terms: [f64; 3],
    /// `(|C|/|G|) (x / log x)` times the relative factor.
    pub absolute: f64,
    /// `x >= (log D)^(16/delta)` and `T >= (log D)^24`.
    pub in_validity_range: bool,
}

/// Evaluates the quasi-GRH bound shape with configurable constant `c`.
#[allow(clippy::too_many_arguments)]
pub fn quasi_grh_bound(
    delta: f64,
    t_cap: f64,
    log_d: f64,
    n_l: u32,
    g_order: u64,
    x: f64,
    c: f64,
) -> Result<QuasiGrhBound, ChebotarevError> {
    if !(0.0 < delta && delta <= 0.5) {
        return Err(ChebotarevError::BadEpsilon { got: delta, max: 0.5 });
    }
    let lx = x.ln();
    let t_pow = t_cap.powf(-1.0 / 24.0);
    let terms = [
        x.powf(-delta / 8.0),
        t_pow * (-(c * lx / f64::from(n_l)).sqrt() / 24.0).exp(),
        t_pow * (-(c * lx / log_d) / 24.0).exp(),
    ];
    let relative = terms.iter().sum();
    let absolute = (1.0 / g_order as f64) * (x / lx) * relative;
    let in_validity_range = x >= log_d.powf(16.0 / delta) && t_cap >= log_d.powi(24);
    Ok(QuasiGrhBound { relative, terms, absolute, in_validity_range })
}

/// The class-group torsion bound shape: `log_D` of the bound
/// `D^(1/2 + eps) / M`, and the split-prime search threshold
/// `D^(1/(2 l (n-1)) - eps)`.
pub fn ev_torsion_bound(
    d_k: f64,
    n: u32,
    ell: u32,
    eps: f64,
    m_count: u64,
) -> Result<(f64, f64), ChebotarevError> {
    let denom = 2.0 * f64::from(ell) * f64::from(n - 1);
    let eps_max = 1.0 / denom;
    if !(0.0 < eps && eps < eps_max) {
        return Err(ChebotarevError::BadEpsilon { got: eps, max: eps_max });
    }
    let exponent = if m_count == 0 {
        f64::INFINITY
    } else {
        0.5 + eps - (m_count as f64).ln() / d_k.ln()
    };
    let threshold = d_k.powf(1.0 / denom - eps);
    Ok((exponent, threshold))
}
