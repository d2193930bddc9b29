//! Dirichlet characters of prime-power modulus, their products and
//! conductors, and the Kronecker symbol.
//!
//! Characters mod an odd `p^k` live on the cyclic group generated by a
//! primitive root `g` and are stored as the exponent `c` with
//! `chi(g^t) = e(ct / phi(p^k))`.  For `p = 2` and `k >= 3` the group is
//! `<-1> x <5>` and a character is a pair `(eps, c)`.  Conductors of
//! products then reduce to exact integer arithmetic on exponents, which is
//! what makes the tensor-conductor oracle in [`crate::conductor`] exact.

use num_complex::Complex64;
use std::f64::consts::TAU;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharacterError {
    #[error("modulus prime {0} is not prime")]
    NotPrime(u64),
    #[error("exponent {c} out of range for modulus {p}^{k}")]
    ExponentRange { p: u64, k: u32, c: u64 },
    #[error("characters live over different primes: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("character is not primitive: conductor exponent {actual} < declared {declared}")]
    NotPrimitive { declared: u32, actual: u32 },
    #[error("modulus overflow: {0}^{1}")]
    Overflow(u64, u32),
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn pow_u64(b: u64, e: u32) -> Option<u64> {
    b.checked_pow(e)
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mm = m as u128;
    let mut bb = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
    }
    acc as u64
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Euler phi of `p^k` for prime `p`.
fn phi_prime_power(p: u64, k: u32) -> u64 {
    if k == 0 {
        1
    } else {
        pow_u64(p, k - 1).unwrap() * (p - 1)
    }
}

/// Least primitive root mod `p^k`, odd prime `p`, `k >= 1`.
fn primitive_root(p: u64, k: u32) -> u64 {
    let phi_p = p - 1;
    let mut factors = Vec::new();
    let mut m = phi_p;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    let mut g = 2;
    loop {
        if factors.iter().all(|&q| pow_mod(g, phi_p / q, p) != 1) {
            break;
        }
        g += 1;
    }
    if k == 1 {
        return g;
    }
    // g lifts to p^k iff g^(p-1) != 1 mod p^2; otherwise g + p does.
    let p2 = p * p;
    if pow_mod(g, p - 1, p2) == 1 {
        g + p
    } else {
        g
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Rep {
    /// Odd p: exponent on the primitive root, modulo phi(p^k).
    Odd { c: u64 },
    /// p = 2, k >= 2: exponents on -1 and (for k >= 3) on 5.
    Two { eps: u8, c: u64 },
    /// Trivial modulus (k <= 1 for p = 2, or k = 0).
    Trivial,
}

/// A Dirichlet character of modulus `p^k`, stored primitively (its conductor
/// is exactly `p^k`).
#[derive(Debug, Clone)]
pub struct PrimePowerCharacter {
    p: u64,
    k: u32,
    rep: Rep,
    values: OnceLock<Vec<Complex64>>,
}

impl PartialEq for PrimePowerCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.rep == other.rep
    }
}
impl Eq for PrimePowerCharacter {}

impl PrimePowerCharacter {
    fn raw(p: u64, k: u32, rep: Rep) -> Self {
        PrimePowerCharacter { p, k, rep, values: OnceLock::new() }
    }

    /// The trivial character (conductor 1) over the prime `p`.
    pub fn trivial(p: u64) -> Result<Self, CharacterError> {
        if !is_prime_u64(p) {
            return Err(CharacterError::NotPrime(p));
        }
        Ok(Self::raw(p, 0, Rep::Trivial))
    }

    /// A character over `p` with conductor exactly `p^k`, built from raw
    /// exponent data and validated for primitivity.
    ///
    /// For odd `p`, `c` is the exponent on the primitive root modulo
    /// `phi(p^k)`.  For `p = 2`, `c` encodes `(eps, c5) = (c mod 2, c / 2)`.
    pub fn primitive(p: u64, k: u32, c: u64) -> Result<Self, CharacterError> {
        if !is_prime_u64(p) {
            return Err(CharacterError::NotPrime(p));
        }
        pow_u64(p, k).ok_or(CharacterError::Overflow(p, k))?;
        let chi = if k == 0 {
            Self::trivial(p)?
        } else if p == 2 {
            if k == 1 {
                Self::raw(p, k, Rep::Trivial)
            } else {
                let eps = (c & 1) as u8;
                let c5 = if k >= 3 { (c >> 1) % (1u64 << (k - 2)) } else { 0 };
                Self::raw(p, k, Rep::Two { eps, c: c5 })
            }
        } else {
            let phi = phi_prime_power(p, k);
            if c >= phi {
                return Err(CharacterError::ExponentRange { p, k, c });
            }
            Self::raw(p, k, Rep::Odd { c })
        };
        let actual = chi.conductor_exponent();
        if actual != chi.k {
            return Err(CharacterError::NotPrimitive { declared: chi.k, actual });
        }
        Ok(chi)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Exponent of the modulus (= conductor, characters are stored
    /// primitively).
    pub fn modulus_exponent(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        pow_u64(self.p, self.k).expect("validated at construction")
    }

    pub fn is_trivial(&self) -> bool {
        self.k == 0
    }

    /// Artin exponent: the exponent of the conductor.
    pub fn artin_exponent(&self) -> u32 {
        self.conductor_exponent()
    }

    /// Swan exponent: `max(Artin - 1, 0)` for a character.
    pub fn swan_exponent(&self) -> u32 {
        self.artin_exponent().saturating_sub(1)
    }

    fn conductor_exponent(&self) -> u32 {
        match &self.rep {
            Rep::Trivial => 0,
            Rep::Odd { c } => {
                if *c == 0 {
                    return 0;
                }
                let phi = phi_prime_power(self.p, self.k);
                let order = phi / gcd_u64(*c, phi);
                // chi factors through p^f iff its order divides phi(p^f);
                // only the p-part of the order matters.
                let mut vp = 0;
                let mut m = order;
                while m % self.p == 0 {
                    vp += 1;
                    m /= self.p;
                }
                vp + 1
            }
            Rep::Two { eps, c } => {
                if *c != 0 {
                    let comp = 1u64 << (self.k - 2);
                    let order = comp / gcd_u64(*c, comp);
                    order.trailing_zeros() + 2
                } else if *eps == 1 {
                    2
                } else {
                    0
                }
            }
        }
    }

    /// The product character, reduced to its primitive conductor.
    pub fn mul(&self, other: &Self) -> Result<Self, CharacterError> {
        if self.p != other.p {
            return Err(CharacterError::PrimeMismatch(self.p, other.p));
        }
        let p = self.p;
        let kk = self.k.max(other.k);
        let lifted = |chi: &Self| -> (u8, u64) {
            // Exponent data in the modulus-p^kk group.
            match &chi.rep {
                Rep::Trivial => (0, 0),
                Rep::Odd { c } => (0, c * pow_u64(p, kk - chi.k).unwrap()),
                Rep::Two { eps, c } => {
                    let c_lift = if kk >= 3 && chi.k >= 3 { c << (kk - chi.k) } else { 0 };
                    (*eps, c_lift)
                }
            }
        };
        let (e1, c1) = lifted(self);
        let (e2, c2) = lifted(other);
        let combined = if kk == 0 {
            Self::trivial(p)?
        } else if p == 2 {
            let eps = (e1 + e2) % 2;
            let c = if kk >= 3 { (c1 + c2) % (1u64 << (kk - 2)) } else { 0 };
            Self::raw(p, kk, Rep::Two { eps, c })
        } else {
            let phi = phi_prime_power(p, kk);
            Self::raw(p, kk, Rep::Odd { c: (c1 + c2) % phi })
        };
        // Reduce to the primitive core.
        let f = combined.conductor_exponent();
        if f == combined.k {
            return Ok(combined);
        }
        let reduced = match combined.rep {
            Rep::Trivial => Self::trivial(p)?,
            Rep::Odd { c } => {
                if f == 0 {
                    Self::trivial(p)?
                } else {
                    // The exponent scales by phi(p^kk)/phi(p^f) when the
                    // character factors through p^f.
                    let ratio = phi_prime_power(p, combined.k) / phi_prime_power(p, f);
                    Self::raw(p, f, Rep::Odd { c: c / ratio })
                }
            }
            Rep::Two { eps, c } => match f {
                0 => Self::trivial(p)?,
                2 => Self::raw(p, 2, Rep::Two { eps, c: 0 }),
                _ => Self::raw(p, f, Rep::Two { eps, c: c >> (combined.k - f) }),
            },
        };
        debug_assert_eq!(reduced.conductor_exponent(), reduced.k);
        Ok(reduced)
    }

    /// The conjugate (inverse) character.
    pub fn conjugate(&self) -> Self {
        let rep = match &self.rep {
            Rep::Trivial => Rep::Trivial,
            Rep::Odd { c } => {
                let phi = phi_prime_power(self.p, self.k);
                Rep::Odd { c: if *c == 0 { 0 } else { phi - c } }
            }
            Rep::Two { eps, c } => {
                let comp = if self.k >= 3 { 1u64 << (self.k - 2) } else { 1 };
                Rep::Two { eps: *eps, c: if *c == 0 { 0 } else { comp - c } }
            }
        };
        Self::raw(self.p, self.k, rep)
    }

    fn value_table(&self) -> &[Complex64] {
        self.values.get_or_init(|| {
            let q = self.modulus();
            assert!(q <= 1 << 22, "value table too large for modulus {q}");
            let mut table = vec![Complex64::new(0.0, 0.0); q as usize];
            match &self.rep {
                Rep::Trivial => {
                    for (a, slot) in table.iter_mut().enumerate() {
                        if gcd_u64(a as u64, q) == 1 {
                            *slot = Complex64::new(1.0, 0.0);
                        }
                    }
                }
                Rep::Odd { c } => {
                    let phi = phi_prime_power(self.p, self.k);
                    let g = primitive_root(self.p, self.k);
                    let mut a = 1u64;
                    for t in 0..phi {
                        let angle = TAU * ((*c % phi) as f64) * (t as f64) / (phi as f64);
                        table[a as usize] = Complex64::new(angle.cos(), angle.sin());
                        a = (a as u128 * g as u128 % q as u128) as u64;
                    }
                }
                Rep::Two { eps, c } => {
                    if self.k == 2 {
                        table[1] = Complex64::new(1.0, 0.0);
                        table[3] = if *eps == 1 {
                            Complex64::new(-1.0, 0.0)
                        } else {
                            Complex64::new(1.0, 0.0)
                        };
                    } else {
                        let comp = 1u64 << (self.k - 2);
                        for s in 0..2u64 {
                            let mut a = if s == 0 { 1u64 } else { q - 1 };
                            for t in 0..comp {
                                let angle = TAU
                                    * (f64::from(*eps) * (s as f64) / 2.0
                                        + (*c as f64) * (t as f64) / (comp as f64));
                                table[a as usize] = Complex64::new(angle.cos(), angle.sin());
                                a = (a as u128 * 5 % q as u128) as u64;
                            }
                        }
                    }
                }
            }
            table
        })
    }

    /// The character value at `a`; zero when `gcd(a, p^k) > 1`.
    pub fn eval(&self, a: u64) -> Complex64 {
        let q = self.modulus();
        if q == 1 {
            return Complex64::new(1.0, 0.0);
        }
        self.value_table()[(a % q) as usize]
    }
}

/// A Dirichlet character of arbitrary modulus, as a product of prime-power
/// components via the Chinese remainder theorem.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    components: Vec<PrimePowerCharacter>,
    modulus: u64,
}

impl DirichletCharacter {
    pub fn new(components: Vec<PrimePowerCharacter>) -> Self {
        let mut components = components;
        components.sort_by_key(|c| c.prime());
        components.retain(|c| !c.is_trivial());
        let modulus = components.iter().map(|c| c.modulus()).product();
        DirichletCharacter { components, modulus }
    }

    pub fn trivial() -> Self {
        DirichletCharacter { components: Vec::new(), modulus: 1 }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Conductor; equals the modulus since components are primitive.
    pub fn conductor(&self) -> u64 {
        self.modulus
    }

    pub fn eval(&self, a: u64) -> Complex64 {
        self.components.iter().map(|c| c.eval(a)).product()
    }

    pub fn conjugate(&self) -> Self {
        DirichletCharacter::new(self.components.iter().map(|c| c.conjugate()).collect())
    }

    pub fn is_trivial(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[PrimePowerCharacter] {
        &self.components
    }

    /// All primitive characters of conductor exactly `q` (the trivial one
    /// for `q = 1`), in a deterministic order.
    pub fn primitive_characters(q: u64) -> Vec<DirichletCharacter> {
        if q == 1 {
            return vec![DirichletCharacter::trivial()];
        }
        let mut factors = Vec::new();
        let mut m = q;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                let mut k = 0;
                while m % p == 0 {
                    m /= p;
                    k += 1;
                }
                factors.push((p, k));
            }
            p += 1;
        }
        if m > 1 {
            factors.push((m, 1));
        }
        let mut lists: Vec<Vec<PrimePowerCharacter>> = Vec::new();
        for &(p, k) in &factors {
            let mut local = Vec::new();
            let raw_range = if p == 2 {
                match k {
                    1 => 0..0,
                    2 => 0..2,
                    _ => 0..(1u64 << (k - 1)),
                }
            } else {
                0..phi_prime_power(p, k)
            };
            for c in raw_range {
                if let Ok(chi) = PrimePowerCharacter::primitive(p, k, c) {
                    local.push(chi);
                }
            }
            if local.is_empty() {
                return Vec::new();
            }
            lists.push(local);
        }
        let mut out = vec![Vec::new()];
        for list in &lists {
            let mut next = Vec::new();
            for partial in &out {
                for chi in list {
                    let mut v: Vec<PrimePowerCharacter> = partial.clone();
                    v.push(chi.clone());
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(DirichletCharacter::new).collect()
    }
}

/// Kronecker symbol `(d / n)`.
pub fn kronecker(d: i64, n: u64) -> i64 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut result = 1i64;
    if n % 2 == 0 {
        if d % 2 == 0 {
            return 0;
        }
        let t = match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => unreachable!("d is odd"),
        };
        while n % 2 == 0 {
            n /= 2;
            result *= t;
        }
    }
    if n == 1 {
        return result;
    }
    // n odd: Jacobi symbol via reciprocity.
    let mut num = d.rem_euclid(n as i64) as u64;
    let mut den = n;
    while num != 0 {
        while num % 2 == 0 {
            num /= 2;
            if den % 8 == 3 || den % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut num, &mut den);
        if num % 4 == 3 && den % 4 == 3 {
            result = -result;
        }
        num %= den;
    }
    if den == 1 {
        result
    } else {
        0
    }
}

/// Whether `d` is a fundamental discriminant of a quadratic field
/// (excludes 1).
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 1 || d == 0 {
        return false;
    }
    fn squarefree(m: i64) -> bool {
        let m = m.unsigned_abs();
        let mut d = 2u64;
        while d * d <= m {
            if m % (d * d) == 0 {
                return false;
            }
            d += 1;
        }
        true
    }
    if d.rem_euclid(4) == 1 {
        return squarefree(d);
    }
    if d % 4 == 0 {
        let m = d / 4;
        let r = m.rem_euclid(4);
        return (r == 2 || r == 3) && squarefree(m);
    }
    false
}
