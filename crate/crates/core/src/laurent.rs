//! The ring `R = F_p[x_1..x_d][t, t^-1]`.
//!
//! `t` is a local equation of the divisor `D`; the `x_i` are transverse
//! coordinates. A [`LaurentPoly`] stores one `x`-polynomial per power of
//! `t`, which keeps the `t`-adic valuation and slice extraction cheap.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::field::{reduce, Fp};
use crate::poly::{Exponents, MPoly};
use crate::series::{chart_vars, u_var, y_var, TwistedSeries};

/// Most transverse coordinates supported (`x1..x9`).
pub const MAX_VARS: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("variable x{index} out of range (d = {d})")]
    VariableOutOfRange { index: usize, d: usize },
    #[error("not a p-th power")]
    NotPthPower,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    p: u32,
    d: usize,
    slices: BTreeMap<i64, MPoly>,
}

impl LaurentPoly {
    pub fn zero(p: u32, d: usize) -> Self {
        assert!(d <= MAX_VARS, "at most {MAX_VARS} transverse variables");
        LaurentPoly {
            p,
            d,
            slices: BTreeMap::new(),
        }
    }

    /// `c * t^e_t * x^e_x`.
    pub fn monomial(c: i64, e_t: i64, e_x: &[u32], p: u32) -> Self {
        let mut f = Self::zero(p, e_x.len());
        f.add_term(e_t, e_x.to_vec(), reduce(c, p));
        f
    }

    pub fn constant(c: i64, p: u32, d: usize) -> Self {
        Self::monomial(c, 0, &vec![0; d], p)
    }

    pub fn one(p: u32, d: usize) -> Self {
        Self::constant(1, p, d)
    }

    /// `t^e`.
    pub fn t_pow(e: i64, p: u32, d: usize) -> Self {
        Self::monomial(1, e, &vec![0; d], p)
    }

    /// The coordinate `x_i`, 1-based as in the expression grammar.
    pub fn x(i: usize, p: u32, d: usize) -> Self {
        assert!((1..=d).contains(&i), "x{i} out of range for d = {d}");
        let mut e = vec![0; d];
        e[i - 1] = 1;
        Self::monomial(1, 0, &e, p)
    }

    /// Builds from `(t exponent, x polynomial)` pairs.
    pub fn from_slices(p: u32, d: usize, slices: impl IntoIterator<Item = (i64, MPoly)>) -> Self {
        let mut f = Self::zero(p, d);
        for (e, c) in slices {
            f.add_slice(e, &c);
        }
        f
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn slices(&self) -> impl Iterator<Item = (&i64, &MPoly)> + '_ {
        self.slices.iter()
    }

    /// The coefficient of `t^e` as a polynomial in `x`.
    pub fn slice(&self, e: i64) -> MPoly {
        self.slices
            .get(&e)
            .cloned()
            .unwrap_or_else(|| MPoly::zero(self.p, self.d))
    }

    /// All terms `(e_t, e_x, c)` in ascending `(e_t, e_x)` order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Exponents, Fp)> + '_ {
        self.slices
            .iter()
            .flat_map(|(&e, c)| c.terms().map(move |(ex, v)| (e, ex, v)))
    }

    pub fn num_terms(&self) -> usize {
        self.slices.values().map(MPoly::len).sum()
    }

    pub fn add_term(&mut self, e_t: i64, e_x: Exponents, c: u32) {
        assert_eq!(e_x.len(), self.d);
        let mut m = MPoly::zero(self.p, self.d);
        m.add_term(e_x, c);
        self.add_slice(e_t, &m);
    }

    fn add_slice(&mut self, e: i64, c: &MPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .slices
            .entry(e)
            .or_insert_with(|| MPoly::zero(c.p(), c.nvars()));
        *entry = &*entry + c;
        if entry.is_zero() {
            self.slices.remove(&e);
        }
    }

    /// `t`-adic valuation at the generic point of `D`; `None` is `+∞`.
    pub fn v_t(&self) -> Option<i64> {
        self.slices.keys().next().copied()
    }

    /// Lowest nonzero slice `(e, c)` with `c != 0`.
    pub fn lowest_slice(&self) -> Option<(i64, &MPoly)> {
        self.slices.iter().next().map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, c: Fp) -> Self {
        assert_eq!(c.modulus(), self.p);
        Self::from_slices(
            self.p,
            self.d,
            self.slices.iter().map(|(e, s)| (*e, s.scale(c.value()))),
        )
    }

    /// Multiplies by `t^a`.
    pub fn shift(&self, a: i64) -> Self {
        LaurentPoly {
            p: self.p,
            d: self.d,
            slices: self.slices.iter().map(|(e, c)| (e + a, c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.p, self.d);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `t ∂f/∂t`.
    pub fn deriv_t_log(&self) -> Self {
        Self::from_slices(
            self.p,
            self.d,
            self.slices
                .iter()
                .map(|(&e, c)| (e, c.scale(reduce(e, self.p)))),
        )
    }

    /// `∂f/∂x_i`, 1-based.
    pub fn deriv_x(&self, i: usize) -> Result<Self, LaurentError> {
        if !(1..=self.d).contains(&i) {
            return Err(LaurentError::VariableOutOfRange {
                index: i,
                d: self.d,
            });
        }
        Ok(Self::from_slices(
            self.p,
            self.d,
            self.slices.iter().map(|(&e, c)| (e, c.derivative(i - 1))),
        ))
    }

    pub fn frobenius(&self) -> Self {
        LaurentPoly {
            p: self.p,
            d: self.d,
            slices: self
                .slices
                .iter()
                .map(|(&e, c)| (e * self.p as i64, c.frobenius()))
                .collect(),
        }
    }

    pub fn is_pth_power(&self) -> bool {
        let p = self.p as i64;
        self.slices
            .iter()
            .all(|(&e, c)| e % p == 0 && c.is_pth_power())
    }

    pub fn pth_root(&self) -> Result<Self, LaurentError> {
        if !self.is_pth_power() {
            return Err(LaurentError::NotPthPower);
        }
        let p = self.p as i64;
        let mut slices = BTreeMap::new();
        for (&e, c) in &self.slices {
            slices.insert(e / p, c.pth_root().ok_or(LaurentError::NotPthPower)?);
        }
        Ok(LaurentPoly {
            p: self.p,
            d: self.d,
            slices,
        })
    }

    /// The Artin-Schreier operator `f^p - f`.
    pub fn wp(&self) -> Self {
        &self.frobenius() - self
    }

    /// Evaluates `f(t(1 + t^k u), x + t^k y)` on the blow-up chart.
    ///
    /// Exponents up to `v_t(f) + prec` are kept. When `f` has no pole the
    /// substitution is a polynomial and the result is exact.
    pub fn substitute_blowup(&self, k: u32, prec: u32) -> TwistedSeries {
        assert!(k >= 1, "twist level must be positive");
        let (p, d) = (self.p, self.d);
        let Some(v) = self.v_t() else {
            return TwistedSeries::zero(p, d, None);
        };
        let bound = (v < 0).then(|| v + prec as i64 + 1);
        let nv = chart_vars(d);
        let k = k as i64;

        // 1/(1 + t^k u) = sum_j (-1)^j t^{kj} u^j, needed only for poles.
        let inverse = bound.map(|b| {
            let rel = b - v;
            let mut slices = Vec::new();
            let mut j = 0u32;
            while (j as i64) * k < rel {
                let mut e = vec![0; nv];
                e[u_var(d)] = j;
                let c = if j.is_multiple_of(2) { 1 } else { -1 };
                slices.push((j as i64 * k, MPoly::monomial(e, c, p)));
                j += 1;
            }
            TwistedSeries::from_slices(p, d, slices, Some(rel))
        });
        let one_plus_s = &TwistedSeries::one(p, d)
            + &TwistedSeries::monomial(p, d, k, MPoly::var(u_var(d), p, nv));
        // x_i + t^k y_i
        let shifted_x: Vec<TwistedSeries> = (0..d)
            .map(|i| {
                &TwistedSeries::monomial(p, d, 0, MPoly::var(i, p, nv))
                    + &TwistedSeries::monomial(p, d, k, MPoly::var(y_var(d, i), p, nv))
            })
            .collect();

        let mut out = TwistedSeries::zero(p, d, bound);
        for (&a, coeff) in &self.slices {
            if bound.is_some_and(|b| a >= b) {
                break;
            }
            let unit = if a >= 0 {
                one_plus_s.pow(a as u32)
            } else {
                let inv = inverse.as_ref().expect("pole implies a bound");
                inv.truncate(bound.unwrap() - a).pow((-a) as u32)
            };
            let head = unit.shift(a);
            let mut tail = TwistedSeries::zero(p, d, None);
            for (ex, c) in coeff.raw_terms() {
                let mut m = TwistedSeries::monomial(p, d, 0, MPoly::constant(*c as i64, p, nv));
                for (i, &xe) in ex.iter().enumerate() {
                    if xe > 0 {
                        m = &m * &shifted_x[i].pow(xe);
                    }
                }
                tail = &tail + &m;
            }
            out = &out + &(&head * &tail);
        }
        out
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.p, other.p, "Laurent polynomials over different fields");
        assert_eq!(self.d, other.d, "Laurent polynomials in different rings");
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.slices {
            out.add_slice(*e, c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            p: self.p,
            d: self.d,
            slices: self.slices.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_compatible(rhs);
        let mut out = LaurentPoly::zero(self.p, self.d);
        for (ea, ca) in &self.slices {
            for (eb, cb) in &rhs.slices {
                out.add_slice(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::render_laurent(self))
    }
}
