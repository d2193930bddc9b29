//! Comparison tolerances shared across the crate.

use num_complex::Complex64;

/// Default relative tolerance for floating-point identities.
pub const DEFAULT_REL: f64 = 1e-9;

/// Default absolute tolerance for quantities expected to vanish.
pub const DEFAULT_ABS: f64 = 1e-12;

/// A relative/absolute tolerance pair.
///
/// `close(a, b)` accepts when `|a - b| <= abs + rel * max(|a|, |b|)`, the
/// usual mixed criterion: the absolute floor covers comparisons against
/// zero, the relative part scales with the operands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rel: DEFAULT_REL, abs: DEFAULT_ABS }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Self {
        Tolerance { rel, abs }
    }

    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.abs + self.rel * a.abs().max(b.abs())
    }

    pub fn close_complex(&self, a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= self.abs + self.rel * a.norm().max(b.norm())
    }

    /// `|value| <= abs`, for quantities that must vanish outright.
    pub fn is_zero(&self, value: f64) -> bool {
        value.abs() <= self.abs
    }
}

/// `|a - b| <= eps * (1 + |b|)`, the oracle-comparison criterion used by the
/// acceptance suite (relative in the oracle `b`, with floor 1).
pub fn within_of_oracle(a: Complex64, oracle: Complex64, eps: f64) -> bool {
    (a - oracle).norm() <= eps * (1.0 + oracle.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_criterion() {
        let t = Tolerance::default();
        assert!(t.close(1.0, 1.0 + 1e-10));
        assert!(!t.close(1.0, 1.0 + 1e-6));
        assert!(t.close(0.0, 1e-13));
    }

    #[test]
    fn oracle_criterion_has_unit_floor() {
        let a = Complex64::new(1e-10, 0.0);
        assert!(within_of_oracle(a, Complex64::new(0.0, 0.0), 1e-9));
    }
}
