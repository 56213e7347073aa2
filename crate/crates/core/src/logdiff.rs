//! Logarithmic 1-forms `a dlog t + sum_i b_i dx_i` with coefficients in `R`.
//!
//! The stalk at the generic point of `D` is modelled by treating every
//! `x_i` as a unit, so the pole order of a form only looks at `t`-valuations.
//! [`leading_slice`] realises the quotient `Ω¹(log D)(kD) / Ω¹(log D)(kD⁻)`
//! by reading off the `t^-k` coefficients.

use std::fmt;

use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::poly::MPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogDiffError {
    #[error("form has pole order {ord} > {k}")]
    PoleTooDeep { ord: i64, k: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogForm {
    /// Coefficient of `dlog t`.
    pub a: LaurentPoly,
    /// Coefficients of `dx_1..dx_d`.
    pub b: Vec<LaurentPoly>,
}

/// The class of a form in `Ω¹(log D)(kD)/Ω¹(log D)(kD⁻)` at the generic
/// point of `D`, i.e. its `t^-k` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueForm {
    pub k: i64,
    /// `dlog t` coefficient, a polynomial in `x`.
    pub a0: MPoly,
    /// `dx_i` coefficients, polynomials in `x`.
    pub b0: Vec<MPoly>,
}

impl ResidueForm {
    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.b0.iter().all(MPoly::is_zero)
    }

    /// Coefficients are regular along all of `D` (exponents in `x` are
    /// nonnegative by construction) and the class does not vanish.
    pub fn is_integral(&self) -> bool {
        !self.is_zero()
            && std::iter::once(&self.a0)
                .chain(&self.b0)
                .all(|c| c.terms().all(|(e, _)| e.len() == self.b0.len()))
    }
}

impl fmt::Display for ResidueForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::parse::render_poly;
        let mut parts = Vec::new();
        let mut push = |c: &MPoly, basis: String| {
            if c.is_zero() {
                return;
            }
            if c.len() == 1 && c.coeff(&vec![0; c.nvars()]).value() == 1 {
                parts.push(basis);
            } else if c.len() == 1 {
                parts.push(format!("{} {basis}", render_poly(c)));
            } else {
                parts.push(format!("({}) {basis}", render_poly(c)));
            }
        };
        push(&self.a0, "dlog t".to_string());
        for (i, b) in self.b0.iter().enumerate() {
            push(b, format!("dx{}", i + 1));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} at level {}", parts.join(" + "), self.k)
    }
}

impl LogForm {
    pub fn zero(p: u32, d: usize) -> Self {
        LogForm {
            a: LaurentPoly::zero(p, d),
            b: vec![LaurentPoly::zero(p, d); d],
        }
    }

    pub fn p(&self) -> u32 {
        self.a.p()
    }

    pub fn d(&self) -> usize {
        self.b.len()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.iter().all(LaurentPoly::is_zero)
    }

    fn components(&self) -> impl Iterator<Item = &LaurentPoly> {
        std::iter::once(&self.a).chain(self.b.iter())
    }

    /// Pole order `-min v_t` over the coefficients; `None` is `-∞` (zero form).
    pub fn ord(&self) -> Option<i64> {
        self.components().filter_map(LaurentPoly::v_t).min().map(|v| -v)
    }

    pub fn add(&self, other: &LogForm) -> LogForm {
        LogForm {
            a: &self.a + &other.a,
            b: self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &LogForm) -> LogForm {
        assert_eq!(self.d(), other.d());
        LogForm {
            a: &self.a - &other.a,
            b: self.b.iter().zip(&other.b).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self) -> LogForm {
        LogForm {
            a: -&self.a,
            b: self.b.iter().map(|x| -x).collect(),
        }
    }

    /// `f · ω`.
    pub fn scale(&self, f: &LaurentPoly) -> LogForm {
        LogForm {
            a: f * &self.a,
            b: self.b.iter().map(|x| f * x).collect(),
        }
    }
}

impl fmt::Display for LogForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.a.is_zero() {
            parts.push(format!("({}) dlog t", self.a));
        }
        for (i, b) in self.b.iter().enumerate() {
            if !b.is_zero() {
                parts.push(format!("({b}) dx{}", i + 1));
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `df = t ∂f/∂t dlog t + sum ∂f/∂x_i dx_i`.
pub fn d(f: &LaurentPoly) -> LogForm {
    LogForm {
        a: f.deriv_t_log(),
        b: (1..=f.d())
            .map(|i| f.deriv_x(i).expect("index within range"))
            .collect(),
    }
}

pub fn ord(omega: &LogForm) -> Option<i64> {
    omega.ord()
}

pub fn scale(f: &LaurentPoly, omega: &LogForm) -> LogForm {
    omega.scale(f)
}

pub fn sub(w1: &LogForm, w2: &LogForm) -> LogForm {
    w1.sub(w2)
}

/// The `t^-k` coefficients of `ω`; requires `ord(ω) <= k`.
pub fn leading_slice(omega: &LogForm, k: i64) -> Result<ResidueForm, LogDiffError> {
    if let Some(o) = omega.ord() {
        if o > k {
            return Err(LogDiffError::PoleTooDeep { ord: o, k });
        }
    }
    Ok(ResidueForm {
        k,
        a0: omega.a.slice(-k),
        b0: omega.b.iter().map(|b| b.slice(-k)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    fn t(e: i64, p: u32, d: usize) -> LaurentPoly {
        LaurentPoly::t_pow(e, p, d)
    }

    fn c(v: i64, p: u32, d: usize) -> MPoly {
        MPoly::constant(v, p, d)
    }

    #[test]
    fn differential_examples() {
        let w = d(&t(-2, 5, 0));
        assert_eq!(w.a, t(-2, 5, 0).scale(Fp::new(3, 5)));
        assert_eq!(w.ord(), Some(2));

        let f = &LaurentPoly::x(1, 5, 1) * &t(-5, 5, 1);
        let w = d(&f);
        assert!(w.a.is_zero());
        assert_eq!(w.b[0], t(-5, 5, 1));
        assert_eq!(w.ord(), Some(5));

        let g = &LaurentPoly::x(1, 3, 1) + &t(-2, 3, 1);
        assert!(d(&g.pow(3)).is_zero());
        assert_eq!(LogForm::zero(3, 1).ord(), None);
    }

    #[test]
    fn slice_examples() {
        let p = 5;
        let w = LogForm {
            a: t(-5, p, 1).scale(Fp::new(3, p)),
            b: vec![&t(-5, p, 1) + &t(-4, p, 1)],
        };
        let r = leading_slice(&w, 5).unwrap();
        assert_eq!(r.a0, c(3, p, 1));
        assert_eq!(r.b0, vec![c(1, p, 1)]);

        let r = leading_slice(&d(&t(-2, p, 1)), 5).unwrap();
        assert!(r.is_zero());

        let f = &LaurentPoly::x(1, 3, 1) * &t(-2, 3, 1);
        let r = leading_slice(&d(&f), 2).unwrap();
        assert_eq!(r.a0, MPoly::var(0, 3, 1));
        assert_eq!(r.b0, vec![c(1, 3, 1)]);

        assert_eq!(
            leading_slice(&d(&t(-3, 5, 0)), 2),
            Err(LogDiffError::PoleTooDeep { ord: 3, k: 2 })
        );
    }

    #[test]
    fn scale_and_sub() {
        let p = 5;
        let w = scale(&t(-2, p, 0), &d(&t(-3, p, 0)));
        assert_eq!(w.a, t(-5, p, 0).scale(Fp::new(2, p)));
        assert!(sub(&w, &w).is_zero());
        assert_eq!(scale(&LaurentPoly::one(p, 0), &w), w);
    }

    #[test]
    fn residue_display() {
        let r = ResidueForm {
            k: 5,
            a0: c(3, 5, 1),
            b0: vec![c(1, 5, 1)],
        };
        assert_eq!(r.to_string(), "3 dlog t + dx1 at level 5");
        assert!(r.is_integral());
    }
}
