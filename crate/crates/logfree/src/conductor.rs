//! Conductor calculus for pairs: slope lists of Weil-Deligne
//! representations, Artin and Swan exponent bounds for tensor products, and
//! an exact oracle built from direct sums of Dirichlet characters of
//! prime-power conductor.
//!
//! Everything here is exact rational or integer arithmetic; no floating
//! point.  The bound shapes are
//!
//! ```text
//! Ar(sigma x tau) <= m a + n b - min(a, b)          (general)
//! Ar(sigma x tau) <= m a + n b - 2 min(a, b)        (det sigma det tau unramified)
//! ```
//!
//! with `n = dim sigma`, `a = Ar(sigma)`, `m = dim tau`, `b = Ar(tau)`, and
//! the Swan analogue with Artin exponents replaced by Swan exponents.

use crate::characters::{CharacterError, PrimePowerCharacter};
use num_rational::Ratio;
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConductorError {
    #[error("summand has zero dimension")]
    ZeroDim,
    #[error("negative Artin exponent")]
    NegativeArtin,
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error("witness needs n >= 2 (got {0})")]
    WitnessDim(u32),
}

/// One indecomposable summand: dimension, Artin exponent, Swan exponent.
///
/// Swan is not determined by `(dim, artin)` alone, so it is carried
/// explicitly; [`Summand::character_like`] applies the one-dimensional rule
/// `Sw = max(Ar - 1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summand {
    pub dim: u32,
    pub artin: Rational,
    pub swan: Rational,
}

impl Summand {
    pub fn new(dim: u32, artin: Rational, swan: Rational) -> Result<Self, ConductorError> {
        if dim == 0 {
            return Err(ConductorError::ZeroDim);
        }
        if artin < Ratio::new(0, 1) {
            return Err(ConductorError::NegativeArtin);
        }
        Ok(Summand { dim, artin, swan })
    }

    /// Summand with the character rule `Sw = max(Ar - 1, 0)`.
    pub fn character_like(dim: u32, artin: Rational) -> Result<Self, ConductorError> {
        let one = Ratio::new(1, 1);
        let zero = Ratio::new(0, 1);
        let swan = if artin > zero { (artin - one).max(zero) } else { zero };
        Summand::new(dim, artin, swan)
    }

    /// The slope `a / n` shared by all `dim` slots of an indecomposable.
    pub fn slope(&self) -> Rational {
        self.artin / Ratio::new(i64::from(self.dim), 1)
    }
}

/// A Weil-Deligne representation as a direct sum of indecomposables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WdRep {
    summands: Vec<Summand>,
}

impl WdRep {
    pub fn new(summands: Vec<Summand>) -> Result<Self, ConductorError> {
        if summands.is_empty() {
            return Err(ConductorError::ZeroDim);
        }
        Ok(WdRep { summands })
    }

    /// From `(dim, artin)` pairs with integer exponents and the character
    /// Swan rule.
    pub fn from_pairs(pairs: &[(u32, i64)]) -> Result<Self, ConductorError> {
        let summands = pairs
            .iter()
            .map(|&(d, a)| Summand::character_like(d, Ratio::new(a, 1)))
            .collect::<Result<Vec<_>, _>>()?;
        WdRep::new(summands)
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn dim(&self) -> u32 {
        self.summands.iter().map(|s| s.dim).sum()
    }

    pub fn artin(&self) -> Rational {
        self.summands.iter().map(|s| s.artin).sum()
    }

    pub fn swan(&self) -> Rational {
        self.summands.iter().map(|s| s.swan).sum()
    }

    /// The slope list: `dim` copies of `artin/dim` per summand, gathered in
    /// non-decreasing order.
    pub fn slopes(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.dim() as usize);
        for s in &self.summands {
            for _ in 0..s.dim {
                out.push(s.slope());
            }
        }
        out.sort();
        out
    }
}

/// `m a + n b - 2 min(a, b)` when `same_det_unramified` is set, or the
/// general `m a + n b - min(a, b)` otherwise.
pub fn pair_bound(sigma: &WdRep, tau: &WdRep, same_det_unramified: bool) -> Rational {
    let n = Ratio::new(i64::from(sigma.dim()), 1);
    let m = Ratio::new(i64::from(tau.dim()), 1);
    let a = sigma.artin();
    let b = tau.artin();
    let min = a.min(b);
    let drop = if same_det_unramified { min + min } else { min };
    m * a + n * b - drop
}

/// For indecomposable blocks `(n, a)` and `(m, b)`: the bound
/// `n m max(a/n, b/m)`, exact when the slopes differ.
pub fn indecomp_pair(sigma_block: (u32, Rational), tau_block: (u32, Rational)) -> (Rational, bool) {
    let (n, a) = sigma_block;
    let (m, b) = tau_block;
    let sa = a / Ratio::new(i64::from(n), 1);
    let sb = b / Ratio::new(i64::from(m), 1);
    let bound = Ratio::new(i64::from(n) * i64::from(m), 1) * sa.max(sb);
    (bound, sa != sb)
}

/// Upper bound for the Artin exponent of the determinant: the largest slope.
pub fn det_bound(sigma: &WdRep) -> Rational {
    sigma.slopes().into_iter().next_back().unwrap_or_else(|| Ratio::new(0, 1))
}

/// The separated-slope bound: when every slope of `sigma` is at most every
/// slope of `tau`, `Ar(sigma x tau) <= dim(sigma) Ar(tau)`, an equality
/// when the slope lists are strictly separated.  `None` when the slope
/// ranges overlap.
pub fn separated_pair_bound(sigma: &WdRep, tau: &WdRep) -> Option<(Rational, bool)> {
    let top = det_bound(sigma);
    let bottom = *tau.slopes().first()?;
    if top > bottom {
        return None;
    }
    let bound = Ratio::new(i64::from(sigma.dim()), 1) * tau.artin();
    Some((bound, top < bottom))
}

/// Swan analogue of [`pair_bound`]: requires `Sw(det sigma det tau) = 0`
/// for the stronger `-2 min` form.
pub fn swan_pair_bound(sigma: &WdRep, tau: &WdRep, sw_det_zero: bool) -> Rational {
    let n = Ratio::new(i64::from(sigma.dim()), 1);
    let m = Ratio::new(i64::from(tau.dim()), 1);
    let a = sigma.swan();
    let b = tau.swan();
    let min = a.min(b);
    let drop = if sw_det_zero { min + min } else { min };
    m * a + n * b - drop
}

// ---------------------------------------------------------------------------
// Exact character-level oracle

/// A direct sum of Dirichlet characters over one prime: the exact model in
/// which tensor conductors are computable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterRep {
    p: u64,
    chars: Vec<PrimePowerCharacter>,
}

impl CharacterRep {
    pub fn new(chars: Vec<PrimePowerCharacter>) -> Result<Self, CharacterError> {
        let p = chars.first().map(|c| c.prime()).unwrap_or(2);
        for c in &chars {
            if c.prime() != p {
                return Err(CharacterError::PrimeMismatch(p, c.prime()));
            }
        }
        Ok(CharacterRep { p, chars })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn chars(&self) -> &[PrimePowerCharacter] {
        &self.chars
    }

    pub fn dim(&self) -> u32 {
        self.chars.len() as u32
    }

    pub fn artin(&self) -> u64 {
        self.chars.iter().map(|c| u64::from(c.artin_exponent())).sum()
    }

    pub fn swan(&self) -> u64 {
        self.chars.iter().map(|c| u64::from(c.swan_exponent())).sum()
    }

    /// The determinant character: the product of all summands.
    pub fn determinant(&self) -> Result<PrimePowerCharacter, CharacterError> {
        let mut acc = PrimePowerCharacter::trivial(self.p)?;
        for c in &self.chars {
            acc = acc.mul(c)?;
        }
        Ok(acc)
    }

    pub fn conjugate(&self) -> Self {
        CharacterRep { p: self.p, chars: self.chars.iter().map(|c| c.conjugate()).collect() }
    }

    /// The corresponding abstract representation, one summand per character.
    pub fn as_wd_rep(&self) -> WdRep {
        WdRep::new(
            self.chars
                .iter()
                .map(|c| {
                    Summand::character_like(1, Ratio::new(i64::from(c.artin_exponent()), 1))
                        .expect("valid character summand")
                })
                .collect(),
        )
        .expect("non-empty")
    }
}

/// Exact Artin exponent of the tensor `sigma (x) tau`: the sum over all
/// pairs of the conductor exponent of the product character.
pub fn tensor_conductor_exact(
    sigma: &CharacterRep,
    tau: &CharacterRep,
) -> Result<u64, CharacterError> {
    if sigma.prime() != tau.prime() {
        return Err(CharacterError::PrimeMismatch(sigma.prime(), tau.prime()));
    }
    let mut total = 0u64;
    for chi in sigma.chars() {
        for eta in tau.chars() {
            total += u64::from(chi.mul(eta)?.artin_exponent());
        }
    }
    Ok(total)
}

/// Exact Swan exponent of the tensor.
pub fn tensor_swan_exact(sigma: &CharacterRep, tau: &CharacterRep) -> Result<u64, CharacterError> {
    if sigma.prime() != tau.prime() {
        return Err(CharacterError::PrimeMismatch(sigma.prime(), tau.prime()));
    }
    let mut total = 0u64;
    for chi in sigma.chars() {
        for eta in tau.chars() {
            total += u64::from(chi.mul(eta)?.swan_exponent());
        }
    }
    Ok(total)
}

/// The sharpness witness: `sigma = (n-1) trivial characters + one character
/// of exponent a` and `tau` its contragredient.  The exact tensor conductor
/// is `(2n - 2) a`, meeting the det-unramified bound.
pub fn pair_bound_witness(
    p: u64,
    n: u32,
    a: u32,
) -> Result<(CharacterRep, CharacterRep, u64), ConductorError> {
    if n < 2 {
        return Err(ConductorError::WitnessDim(n));
    }
    let mut chars = Vec::new();
    for _ in 0..n - 1 {
        chars.push(PrimePowerCharacter::trivial(p)?);
    }
    if a > 0 {
        chars.push(PrimePowerCharacter::primitive(p, a, 1)?);
    } else {
        chars.push(PrimePowerCharacter::trivial(p)?);
    }
    let sigma = CharacterRep::new(chars)?;
    let tau = sigma.conjugate();
    let exact = tensor_conductor_exact(&sigma, &tau)?;
    Ok((sigma, tau, exact))
}

/// Seeded corpus of character-representation pairs for exactness checks.
///
/// With `unramified_det` set, the last summand of `tau` is adjusted so that
/// `det(sigma) det(tau)` is trivial.
pub fn sample_character_pair(
    seed: u64,
    primes: &[u64],
    max_size: usize,
    max_exponent: u32,
    unramified_det: bool,
) -> (CharacterRep, CharacterRep) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let p = primes[rng.gen_range(0..primes.len())];
    let draw_char = |rng: &mut rand_chacha::ChaCha8Rng| loop {
        let k = rng.gen_range(0..=max_exponent);
        if k == 0 {
            return PrimePowerCharacter::trivial(p).unwrap();
        }
        let c = rng.gen::<u64>();
        // Retry until the raw exponent data is primitive at level k.
        for offset in 0..8 {
            if let Ok(chi) = PrimePowerCharacter::primitive(p, k, c.wrapping_add(offset)) {
                return chi;
            }
        }
    };
    let n1 = rng.gen_range(1..=max_size);
    let n2 = rng.gen_range(1..=max_size);
    let sigma =
        CharacterRep::new((0..n1).map(|_| draw_char(&mut rng)).collect()).unwrap();
    let mut tau_chars: Vec<PrimePowerCharacter> =
        (0..n2).map(|_| draw_char(&mut rng)).collect();
    if unramified_det {
        // Replace the last summand so the total determinant cancels.
        let mut acc = sigma.determinant().unwrap();
        for c in &tau_chars[..n2 - 1] {
            acc = acc.mul(c).unwrap();
        }
        tau_chars[n2 - 1] = acc.conjugate();
    }
    let tau = CharacterRep::new(tau_chars).unwrap();
    (sigma, tau)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Ratio::new(n, 1)
    }

    fn rq(n: i64, d: i64) -> Rational {
        Ratio::new(n, d)
    }

    #[test]
    fn pair_bound_formula_arithmetic() {
        // n = m = 1, flag set, a = b: the bound vanishes.
        let s = WdRep::from_pairs(&[(1, 3)]).unwrap();
        let t = WdRep::from_pairs(&[(1, 3)]).unwrap();
        assert_eq!(pair_bound(&s, &t, true), r(0));
        // n = m, a = b: (2n - 2) a.
        let s = WdRep::from_pairs(&[(2, 5), (1, 0)]).unwrap();
        let t = WdRep::from_pairs(&[(3, 5)]).unwrap();
        assert_eq!(pair_bound(&s, &t, true), r((2 * 3 - 2) * 5));
        // n = 2, m = 3, a = 5, b = 1, no flag: 3*5 + 2*1 - 1 = 16.
        let s = WdRep::from_pairs(&[(2, 5)]).unwrap();
        let t = WdRep::from_pairs(&[(3, 1)]).unwrap();
        assert_eq!(pair_bound(&s, &t, false), r(16));
    }

    #[test]
    fn indecomposable_pair_bounds() {
        let (b, exact) = indecomp_pair((1, r(2)), (1, r(3)));
        assert_eq!((b, exact), (r(3), true));
        let (b, exact) = indecomp_pair((2, r(2)), (3, r(3)));
        assert_eq!((b, exact), (r(6), false));
        let (b, exact) = indecomp_pair((2, r(3)), (1, r(1)));
        assert_eq!((b, exact), (r(3), true));
    }

    #[test]
    fn det_bound_is_the_top_slope() {
        let single = WdRep::from_pairs(&[(1, 4)]).unwrap();
        assert_eq!(det_bound(&single), r(4));
        // Steinberg-type block (n, n-1): slope (n-1)/n.
        let st = WdRep::from_pairs(&[(4, 3)]).unwrap();
        assert_eq!(det_bound(&st), rq(3, 4));
        let mixed = WdRep::from_pairs(&[(2, 2), (1, 3), (3, 1)]).unwrap();
        assert_eq!(det_bound(&mixed), r(3));
    }

    #[test]
    fn slope_list_is_sorted_with_multiplicity() {
        let rep = WdRep::from_pairs(&[(2, 3), (1, 1)]).unwrap();
        assert_eq!(rep.slopes(), vec![r(1), rq(3, 2), rq(3, 2)]);
        assert_eq!(rep.dim(), 3);
        assert_eq!(rep.artin(), r(4));
    }

    #[test]
    fn separated_slopes_give_the_dimension_bound() {
        // Characters with strictly smaller exponents on the sigma side:
        // Ar(chi eta) = l for every pair, so the bound is an equality.
        let p = 5u64;
        let sigma = CharacterRep::new(vec![
            PrimePowerCharacter::trivial(p).unwrap(),
            PrimePowerCharacter::primitive(p, 1, 1).unwrap(),
        ])
        .unwrap();
        let tau = CharacterRep::new(vec![
            PrimePowerCharacter::primitive(p, 2, 1).unwrap(),
            PrimePowerCharacter::primitive(p, 3, 1).unwrap(),
        ])
        .unwrap();
        let (bound, exact) = separated_pair_bound(&sigma.as_wd_rep(), &tau.as_wd_rep()).unwrap();
        assert_eq!(bound, r(2 * 5));
        assert!(exact);
        assert_eq!(tensor_conductor_exact(&sigma, &tau).unwrap(), 10);
        // Overlapping slope ranges decline.
        assert!(separated_pair_bound(&tau.as_wd_rep(), &sigma.as_wd_rep()).is_none());
    }

    #[test]
    fn conductor_drop_for_conjugate_pair() {
        let chi = PrimePowerCharacter::primitive(3, 2, 1).unwrap();
        let sigma = CharacterRep::new(vec![chi.clone()]).unwrap();
        let tau = CharacterRep::new(vec![chi.conjugate()]).unwrap();
        assert_eq!(tensor_conductor_exact(&sigma, &tau).unwrap(), 0);
    }

    #[test]
    fn distinct_levels_give_the_max() {
        let chi = PrimePowerCharacter::primitive(5, 3, 1).unwrap();
        let eta = PrimePowerCharacter::primitive(5, 2, 1).unwrap();
        let prod = chi.mul(&eta).unwrap();
        assert_eq!(prod.artin_exponent(), 3);
    }

    #[test]
    fn equal_levels_never_exceed_the_level() {
        for c1 in 0..6u64 {
            for c2 in 0..6u64 {
                let a = PrimePowerCharacter::primitive(7, 2, 7 + c1).ok();
                let b = PrimePowerCharacter::primitive(7, 2, 7 + c2).ok();
                let (Some(a), Some(b)) = (a, b) else { continue };
                assert!(a.mul(&b).unwrap().artin_exponent() <= 2);
            }
        }
    }

    #[test]
    fn witness_achieves_equality() {
        for (n, a, p) in [(2u32, 2u32, 3u64), (3, 1, 3), (4, 3, 5), (2, 0, 3)] {
            let (sigma, tau, exact) = pair_bound_witness(p, n, a).unwrap();
            assert_eq!(exact, u64::from((2 * n - 2) * a), "n={n} a={a}");
            let bound = pair_bound(&sigma.as_wd_rep(), &tau.as_wd_rep(), true);
            assert_eq!(bound, r(i64::from((2 * n - 2) * a)));
            // Unramified determinant product by construction.
            let det = sigma.determinant().unwrap().mul(&tau.determinant().unwrap()).unwrap();
            assert_eq!(det.artin_exponent(), 0);
        }
    }

    #[test]
    fn exact_tensor_respects_both_bounds_on_seeded_corpus() {
        for seed in 0..2000u64 {
            let (sigma, tau) = sample_character_pair(seed, &[2, 3, 5, 7], 5, 6, true);
            let det = sigma.determinant().unwrap().mul(&tau.determinant().unwrap()).unwrap();
            assert_eq!(det.artin_exponent(), 0, "corpus construction");
            let exact = tensor_conductor_exact(&sigma, &tau).unwrap();
            let bound = pair_bound(&sigma.as_wd_rep(), &tau.as_wd_rep(), true);
            assert!(
                r(exact as i64) <= bound,
                "seed {seed}: exact {exact} > bound {bound}"
            );
            // Swan analogue on the same corpus.
            let sw_exact = tensor_swan_exact(&sigma, &tau).unwrap();
            let sw_bound = swan_pair_bound(&sigma.as_wd_rep(), &tau.as_wd_rep(), true);
            assert!(
                r(sw_exact as i64) <= sw_bound,
                "seed {seed}: swan {sw_exact} > bound {sw_bound}"
            );
        }
    }

    #[test]
    fn exact_tensor_respects_general_bound_without_det_condition() {
        for seed in 0..2000u64 {
            let (sigma, tau) = sample_character_pair(seed, &[2, 3, 5, 7], 5, 6, false);
            let exact = tensor_conductor_exact(&sigma, &tau).unwrap();
            let bound = pair_bound(&sigma.as_wd_rep(), &tau.as_wd_rep(), false);
            assert!(r(exact as i64) <= bound, "seed {seed}");
        }
    }

    #[test]
    fn det_bound_holds_for_character_reps() {
        for seed in 0..500u64 {
            let (sigma, _) = sample_character_pair(seed, &[2, 3, 5], 4, 5, false);
            let exact_det = u64::from(sigma.determinant().unwrap().artin_exponent());
            let bound = det_bound(&sigma.as_wd_rep());
            assert!(r(exact_det as i64) <= bound, "seed {seed}");
        }
    }

    #[test]
    fn swan_bound_trivial_cases() {
        let unram = WdRep::from_pairs(&[(1, 0), (2, 0)]).unwrap();
        assert_eq!(swan_pair_bound(&unram, &unram, true), r(0));
        // n = m = 1, Sw = 2 each, flag: 2 + 2 - 4 = 0.
        let s = WdRep::new(vec![Summand::new(1, r(3), r(2)).unwrap()]).unwrap();
        assert_eq!(swan_pair_bound(&s, &s, true), r(0));
    }
}
