//! The prime field `F_p` for a small prime chosen at run time.
//!
//! Elements carry their modulus. The operator impls panic on a modulus
//! mismatch; the `try_*` methods report it as [`FieldError`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Largest supported characteristic.
pub const MAX_PRIME: u32 = 97;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus mismatch: F_{0} vs F_{1}")]
    ModulusMismatch(u32, u32),
    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),
    #[error("{0} is not a prime in [2, {MAX_PRIME}]")]
    UnsupportedModulus(u32),
}

/// True when `p` is a prime with `2 <= p <= MAX_PRIME`.
pub fn is_supported_prime(p: u32) -> bool {
    (2..=MAX_PRIME).contains(&p) && (2..p).take_while(|q| q * q <= p).all(|q| !p.is_multiple_of(q))
}

pub fn check_prime(p: u32) -> Result<(), FieldError> {
    if is_supported_prime(p) {
        Ok(())
    } else {
        Err(FieldError::UnsupportedModulus(p))
    }
}

// Raw residue helpers shared by the polynomial types, which store bare `u32`
// coefficients next to a single modulus.

#[inline]
pub(crate) fn reduce(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn pow_mod(mut base: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse by Fermat; `a` must be nonzero mod `p`.
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, (p - 2) as u64, p)
}

/// An element of `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    p: u32,
}

impl Fp {
    /// Reduces `value` into `[0, p)`. The modulus is not checked for
    /// primality here; see [`Fp::try_new`].
    pub fn new(value: i64, p: u32) -> Self {
        Fp {
            value: reduce(value, p),
            p,
        }
    }

    pub fn try_new(value: i64, p: u32) -> Result<Self, FieldError> {
        check_prime(p)?;
        Ok(Fp::new(value, p))
    }

    pub fn zero(p: u32) -> Self {
        Fp { value: 0, p }
    }

    pub fn one(p: u32) -> Self {
        Fp { value: 1 % p, p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_modulus(self, other: Fp) -> Result<u32, FieldError> {
        if self.p == other.p {
            Ok(self.p)
        } else {
            Err(FieldError::ModulusMismatch(self.p, other.p))
        }
    }

    pub fn try_add(self, other: Fp) -> Result<Fp, FieldError> {
        let p = self.same_modulus(other)?;
        Ok(Fp {
            value: add_mod(self.value, other.value, p),
            p,
        })
    }

    pub fn try_sub(self, other: Fp) -> Result<Fp, FieldError> {
        let p = self.same_modulus(other)?;
        Ok(Fp {
            value: sub_mod(self.value, other.value, p),
            p,
        })
    }

    pub fn try_mul(self, other: Fp) -> Result<Fp, FieldError> {
        let p = self.same_modulus(other)?;
        Ok(Fp {
            value: mul_mod(self.value, other.value, p),
            p,
        })
    }

    pub fn inv(self) -> Result<Fp, FieldError> {
        if self.value == 0 {
            return Err(FieldError::DivisionByZero(self.p));
        }
        Ok(Fp {
            value: inv_mod(self.value, self.p),
            p: self.p,
        })
    }

    pub fn pow(self, e: u64) -> Fp {
        Fp {
            value: pow_mod(self.value, e, self.p),
            p: self.p,
        }
    }

    /// The unique `p`-th root. Frobenius is the identity on the prime field.
    pub fn pth_root(self) -> Fp {
        self
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.try_add(rhs).expect("F_p addition")
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.try_sub(rhs).expect("F_p subtraction")
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.try_mul(rhs).expect("F_p multiplication")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: sub_mod(0, self.value, self.p),
            p: self.p,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        assert_eq!(Fp::new(2, 5) + Fp::new(4, 5), Fp::new(1, 5));
        assert_eq!(Fp::new(3, 5) * Fp::new(4, 5), Fp::new(2, 5));
        assert_eq!(-Fp::new(1, 2), Fp::new(1, 2));
        assert_eq!(Fp::new(2, 5).inv().unwrap(), Fp::new(3, 5));
        assert_eq!(Fp::new(2, 3).inv().unwrap(), Fp::new(2, 3));
        assert_eq!(Fp::new(1, 7).inv().unwrap(), Fp::new(1, 7));
        assert_eq!(Fp::new(3, 5).pth_root(), Fp::new(3, 5));
        assert_eq!(Fp::new(1, 2).pth_root(), Fp::new(1, 2));
        assert_eq!(Fp::new(2, 3).pth_root(), Fp::new(2, 3));
    }

    #[test]
    fn error_paths() {
        assert_eq!(
            Fp::new(1, 5).try_add(Fp::new(1, 7)),
            Err(FieldError::ModulusMismatch(5, 7))
        );
        assert_eq!(Fp::zero(5).inv(), Err(FieldError::DivisionByZero(5)));
        assert_eq!(Fp::try_new(1, 91), Err(FieldError::UnsupportedModulus(91)));
        assert_eq!(Fp::try_new(1, 101), Err(FieldError::UnsupportedModulus(101)));
    }

    #[test]
    fn supported_primes() {
        let primes: Vec<u32> = (0..=100).filter(|&p| is_supported_prime(p)).collect();
        assert_eq!(primes.len(), 25);
        assert_eq!(primes.first(), Some(&2));
        assert_eq!(primes.last(), Some(&97));
    }

    #[test]
    fn inverse_and_root_exhaustive() {
        for p in (2..=MAX_PRIME).filter(|&p| is_supported_prime(p)) {
            for v in 0..p {
                let a = Fp::new(v as i64, p);
                if !a.is_zero() {
                    assert_eq!(a * a.inv().unwrap(), Fp::one(p));
                }
                assert_eq!(a.pth_root().pow(p as u64), a);
            }
        }
    }

    proptest! {
        #[test]
        fn ring_axioms(pi in 0usize..25, a in 0i64..1000, b in 0i64..1000, c in 0i64..1000) {
            let p = (2..=MAX_PRIME).filter(|&p| is_supported_prime(p)).nth(pi).unwrap();
            let (a, b, c) = (Fp::new(a, p), Fp::new(b, p), Fp::new(c, p));
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a - a, Fp::zero(p));
        }
    }
}
