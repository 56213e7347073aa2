//! Truncated `t`-expansions on the blow-up chart.
//!
//! A [`TwistedSeries`] is a finite sum `sum_e c_e(x, u, y) t^e` known modulo
//! `t^prec`. The chart coordinates are `u = ((1⊗t)/(t⊗1) - 1) / t^k` and
//! `y_i = (1⊗x_i - x_i⊗1) / t^k`; both are units at the generic point of
//! the exceptional divisor, so the valuation `v_E` is the smallest `t`
//! exponent with a nonzero coefficient.
//!
//! Coefficient variables are laid out as `x_1..x_d, u, y_1..y_d`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::laurent::LaurentPoly;
use crate::poly::MPoly;

/// Index of `u` among the coefficient variables.
pub fn u_var(d: usize) -> usize {
    d
}

/// Index of `y_i` (0-based `i`) among the coefficient variables.
pub fn y_var(d: usize, i: usize) -> usize {
    d + 1 + i
}

/// Number of coefficient variables for `d` transverse coordinates.
pub fn chart_vars(d: usize) -> usize {
    2 * d + 1
}

/// Valuation of a truncated series: the exact value, or only a lower bound
/// when every known coefficient vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesValuation {
    /// `None` stands for `+∞`.
    pub value: Option<i64>,
    pub exact: bool,
}

impl fmt::Display for SeriesValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.value, self.exact) {
            (None, _) => write!(f, "+inf"),
            (Some(v), true) => write!(f, "{v}"),
            (Some(v), false) => write!(f, ">= {v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedSeries {
    p: u32,
    d: usize,
    terms: BTreeMap<i64, MPoly>,
    /// Exclusive bound on known exponents; `None` means the expansion is exact.
    prec: Option<i64>,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl TwistedSeries {
    pub fn zero(p: u32, d: usize, prec: Option<i64>) -> Self {
        TwistedSeries {
            p,
            d,
            terms: BTreeMap::new(),
            prec,
        }
    }

    pub fn one(p: u32, d: usize) -> Self {
        Self::monomial(p, d, 0, MPoly::one(p, chart_vars(d)))
    }

    /// `coeff * t^e`, exact.
    pub fn monomial(p: u32, d: usize, e: i64, coeff: MPoly) -> Self {
        let mut s = Self::zero(p, d, None);
        s.add_slice(e, &coeff);
        s
    }

    /// `f ⊗ 1`: the Laurent polynomial pulled back along the first projection.
    pub fn from_laurent(f: &LaurentPoly) -> Self {
        let d = f.d();
        let map: Vec<usize> = (0..d).collect();
        let mut s = Self::zero(f.p(), d, None);
        for (e, c) in f.slices() {
            s.add_slice(*e, &c.embed(chart_vars(d), &map));
        }
        s
    }

    /// Builds a series from raw slices; zero slices and slices at or beyond
    /// `prec` are dropped.
    pub fn from_slices(
        p: u32,
        d: usize,
        slices: impl IntoIterator<Item = (i64, MPoly)>,
        prec: Option<i64>,
    ) -> Self {
        let mut s = Self::zero(p, d, prec);
        for (e, c) in slices {
            s.add_slice(e, &c);
        }
        s
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// True when no nonzero coefficient is known (the series may still be
    /// nonzero beyond its precision).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &MPoly)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn slice(&self, e: i64) -> MPoly {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(|| MPoly::zero(self.p, chart_vars(self.d)))
    }

    fn add_slice(&mut self, e: i64, c: &MPoly) {
        if c.is_zero() || self.prec.is_some_and(|b| e >= b) {
            return;
        }
        debug_assert_eq!(c.nvars(), chart_vars(self.d));
        let entry = self
            .terms
            .entry(e)
            .or_insert_with(|| MPoly::zero(c.p(), c.nvars()));
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Lowers the precision to `bound` (never raises it).
    pub fn truncate(&self, bound: i64) -> Self {
        let prec = min_prec(self.prec, Some(bound));
        let mut out = Self::zero(self.p, self.d, prec);
        for (e, c) in &self.terms {
            out.add_slice(*e, c);
        }
        out
    }

    /// Lower bound on the true valuation, `None` for an exact zero.
    pub fn valuation_lower_bound(&self) -> Option<i64> {
        match self.terms.keys().next() {
            Some(&e) => Some(e),
            None => self.prec,
        }
    }

    /// `v_E`: the smallest exponent with a nonzero coefficient. If nothing
    /// below the precision survives, only the bound `>= prec` is known.
    pub fn v_e(&self) -> SeriesValuation {
        match (self.terms.keys().next(), self.prec) {
            (Some(&e), _) => SeriesValuation {
                value: Some(e),
                exact: true,
            },
            (None, None) => SeriesValuation {
                value: None,
                exact: true,
            },
            (None, Some(b)) => SeriesValuation {
                value: Some(b),
                exact: false,
            },
        }
    }

    /// Multiplies by `t^a`.
    pub fn shift(&self, a: i64) -> Self {
        TwistedSeries {
            p: self.p,
            d: self.d,
            terms: self.terms.iter().map(|(e, c)| (e + a, c.clone())).collect(),
            prec: self.prec.map(|b| b + a),
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

    /// Restriction to the diagonal: `u = y = 0`.
    pub fn restrict_diagonal(&self) -> Self {
        let d = self.d;
        let vars: Vec<usize> = std::iter::once(u_var(d))
            .chain((0..d).map(|i| y_var(d, i)))
            .collect();
        let mut out = Self::zero(self.p, d, self.prec);
        for (e, c) in &self.terms {
            out.add_slice(*e, &c.set_zero(&vars));
        }
        out
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.p, other.p, "series over different fields");
        assert_eq!(self.d, other.d, "series on different charts");
    }
}

impl Add<&TwistedSeries> for &TwistedSeries {
    type Output = TwistedSeries;
    fn add(self, rhs: &TwistedSeries) -> TwistedSeries {
        self.check_compatible(rhs);
        let mut out = TwistedSeries::zero(self.p, self.d, min_prec(self.prec, rhs.prec));
        for (e, c) in self.terms.iter().chain(rhs.terms.iter()) {
            out.add_slice(*e, c);
        }
        out
    }
}

impl Neg for &TwistedSeries {
    type Output = TwistedSeries;
    fn neg(self) -> TwistedSeries {
        TwistedSeries {
            p: self.p,
            d: self.d,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            prec: self.prec,
        }
    }
}

impl Sub<&TwistedSeries> for &TwistedSeries {
    type Output = TwistedSeries;
    fn sub(self, rhs: &TwistedSeries) -> TwistedSeries {
        self + &(-rhs)
    }
}

impl Mul<&TwistedSeries> for &TwistedSeries {
    type Output = TwistedSeries;
    fn mul(self, rhs: &TwistedSeries) -> TwistedSeries {
        self.check_compatible(rhs);
        let (la, lb) = (self.valuation_lower_bound(), rhs.valuation_lower_bound());
        let (Some(la), Some(lb)) = (la, lb) else {
            // one factor is an exact zero
            return TwistedSeries::zero(self.p, self.d, None);
        };
        // (A + O(t^pa)) (B + O(t^pb)) = AB + O(t^min(pa + v(B), pb + v(A)))
        let prec = min_prec(self.prec.map(|pa| pa + lb), rhs.prec.map(|pb| pb + la));
        let mut out = TwistedSeries::zero(self.p, self.d, prec);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea + eb;
                if prec.is_some_and(|b| e >= b) {
                    break;
                }
                out.add_slice(e, &(ca * cb));
            }
        }
        out
    }
}

impl Add for TwistedSeries {
    type Output = TwistedSeries;
    fn add(self, rhs: TwistedSeries) -> TwistedSeries {
        &self + &rhs
    }
}

impl Sub for TwistedSeries {
    type Output = TwistedSeries;
    fn sub(self, rhs: TwistedSeries) -> TwistedSeries {
        &self - &rhs
    }
}

impl Mul for TwistedSeries {
    type Output = TwistedSeries;
    fn mul(self, rhs: TwistedSeries) -> TwistedSeries {
        &self * &rhs
    }
}

impl Neg for TwistedSeries {
    type Output = TwistedSeries;
    fn neg(self) -> TwistedSeries {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(p: u32, d: usize) -> MPoly {
        MPoly::var(u_var(d), p, chart_vars(d))
    }

    #[test]
    fn precision_propagates_through_products() {
        let p = 5;
        // (t^-2 + O(t^3)) * (t u) is known up to O(t^4)
        let a = TwistedSeries::monomial(p, 0, -2, MPoly::one(p, 1)).truncate(3);
        let b = TwistedSeries::monomial(p, 0, 1, u(p, 0));
        let c = &a * &b;
        assert_eq!(c.prec(), Some(4));
        assert_eq!(c.v_e(), SeriesValuation { value: Some(-1), exact: true });
    }

    #[test]
    fn valuation_of_unknown_tail_is_a_bound() {
        let s = TwistedSeries::zero(3, 1, Some(7));
        assert_eq!(s.v_e(), SeriesValuation { value: Some(7), exact: false });
        let z = TwistedSeries::zero(3, 1, None);
        assert_eq!(z.v_e(), SeriesValuation { value: None, exact: true });
    }

    #[test]
    fn sum_takes_minimum_precision() {
        let p = 3;
        let a = TwistedSeries::monomial(p, 0, 5, MPoly::one(p, 1)).truncate(10);
        let b = TwistedSeries::monomial(p, 0, 2, MPoly::one(p, 1)).truncate(4);
        let s = &a + &b;
        assert_eq!(s.prec(), Some(4));
        assert_eq!(s.terms().count(), 1);
    }
}
