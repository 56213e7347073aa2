//! The blow-up chart at the generic point of the exceptional divisor `E`:
//! tensor differences `1⊗f - f⊗1`, their valuations, and the valuation
//! bookkeeping for the six terms of
//! `K3 = K1 Š^p + f⊗1 Š^p - K1 K2 - g⊗1 Ť^p + K4 - f⊗1 K2`.

pub mod tropical;

use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::logdiff::{self, ResidueForm};
use crate::poly::MPoly;
use crate::series::{u_var, y_var, SeriesValuation, TwistedSeries};

pub use tropical::{tropical_val, TropVal, TropicalExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("f has no pole along D")]
    NoPole,
    #[error("ord(df) = {ord:?} differs from the pole order {n}")]
    NotNormalized { n: i64, ord: Option<i64> },
    #[error("leading slice at t^{0} is not linear in (u, y)")]
    NonLinear(i64),
    #[error("leading slice at t^{0} lies beyond the expansion precision")]
    Truncated(i64),
}

/// `1⊗f - f⊗1` on the chart of level `k`.
pub fn tensor_diff(f: &LaurentPoly, k: u32, prec: u32) -> TwistedSeries {
    &f.substitute_blowup(k, prec) - &TwistedSeries::from_laurent(f)
}

pub fn v_e(s: &TwistedSeries) -> SeriesValuation {
    s.v_e()
}

/// Reads `a0 u + sum b0_i y_i` off a chart coefficient, as the form
/// `a0 dlog t + sum b0_i dx_i` at level `level`. `None` unless the
/// coefficient is homogeneous of degree one in `(u, y)`.
pub fn linear_residue(c: &MPoly, d: usize, level: i64) -> Option<ResidueForm> {
    let p = c.p();
    let mut a0 = MPoly::zero(p, d);
    let mut b0 = vec![MPoly::zero(p, d); d];
    for (ex, coef) in c.terms() {
        let x = ex[..d].to_vec();
        let u = ex[u_var(d)];
        let ys: Vec<u32> = (0..d).map(|i| ex[y_var(d, i)]).collect();
        let deg = u + ys.iter().sum::<u32>();
        if deg != 1 {
            return None;
        }
        if u == 1 {
            a0.add_term(x, coef.value());
        } else {
            let i = ys.iter().position(|&y| y == 1).expect("degree one");
            b0[i].add_term(x, coef.value());
        }
    }
    Some(ResidueForm { k: level, a0, b0 })
}

/// The leading slice of `1⊗f - f⊗1`, at `t^{k-n}`, read as a log form at
/// level `n = -v_t(f)`.
pub fn leading_form(f: &LaurentPoly, k: u32) -> Result<ResidueForm, BlowupError> {
    let n = match f.v_t() {
        Some(v) if v < 0 => -v,
        _ => return Err(BlowupError::NoPole),
    };
    let ord = logdiff::d(f).ord();
    if ord != Some(n) {
        return Err(BlowupError::NotNormalized { n, ord });
    }
    let s = tensor_diff(f, k, k + 1);
    let e = k as i64 - n;
    if s.prec().is_some_and(|b| e >= b) {
        return Err(BlowupError::Truncated(e));
    }
    linear_residue(&s.slice(e), f.d(), n).ok_or(BlowupError::NonLinear(e))
}

/// The six terms of `K3`, in the order they are written above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermId {
    K1Sp,
    FSp,
    K1K2,
    GTp,
    K4,
    FK2,
}

impl TermId {
    pub const ALL: [TermId; 6] = [
        TermId::K1Sp,
        TermId::FSp,
        TermId::K1K2,
        TermId::GTp,
        TermId::K4,
        TermId::FK2,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TermId::K1Sp => "K1Sp",
            TermId::FSp => "fSp",
            TermId::K1K2 => "K1K2",
            TermId::GTp => "gTp",
            TermId::K4 => "K4",
            TermId::FK2 => "fK2",
        }
    }

    /// Sign of the term in `K3`.
    pub fn sign(self) -> i8 {
        match self {
            TermId::K1K2 | TermId::GTp | TermId::FK2 => -1,
            _ => 1,
        }
    }

    /// Whether the term involves an Artin-Schreier root.
    pub fn has_symbol(self) -> bool {
        matches!(self, TermId::K1Sp | TermId::FSp | TermId::GTp)
    }
}

impl fmt::Display for TermId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationTable {
    pub entries: Vec<(TermId, TropVal)>,
}

impl ValuationTable {
    pub fn get(&self, id: TermId) -> TropVal {
        self.entries
            .iter()
            .find(|(t, _)| *t == id)
            .map(|(_, v)| *v)
            .expect("all six terms present")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dominant {
    /// A unique term of smallest valuation.
    Single(TermId),
    /// `K4 - f⊗1 K2` as a whole, after the two tie and are expanded together.
    Combined,
    /// A tie that cannot be resolved without expanding AS roots.
    Tie(Vec<TermId>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K3Analysis {
    pub k: u32,
    pub table: ValuationTable,
    pub dominant: Dominant,
    /// `v_E(K4 - f⊗1 K2)` under exact expansion.
    pub combined: SeriesValuation,
    /// Valuation of the dominant part.
    pub dominant_val: TropVal,
    /// Leading slice of the dominant part as a log form; `None` when the
    /// dominant part involves an AS root or is not linear in `(u, y)`.
    pub residue: Option<ResidueForm>,
}

/// Precision for expanding `1⊗f - f⊗1` when the levels involved are
/// `k, n, m, r`.
pub fn default_precision(v_t: i64, k: u32, n: u32, m: u32, r: u32) -> u32 {
    (v_t + 3 * (k + n + m + r) as i64 + 10).max(k as i64 + 1) as u32
}

fn pole(f: &LaurentPoly) -> u32 {
    f.v_t().map_or(0, |v| (-v).max(0) as u32)
}

/// The exact pieces `f⊗1, g⊗1, K1, K2, K4` at level `k`.
pub struct K3Terms {
    pub f1: TwistedSeries,
    pub g1: TwistedSeries,
    pub k1: TwistedSeries,
    pub k2: TwistedSeries,
    pub k4: TwistedSeries,
}

pub fn k3_terms(
    f: &LaurentPoly,
    g: &LaurentPoly,
    h: &LaurentPoly,
    k: u32,
    prec: Option<u32>,
) -> K3Terms {
    let (n, m, r) = (pole(f), pole(g), pole(h));
    let prec_for = |x: &LaurentPoly| {
        prec.unwrap_or_else(|| default_precision(x.v_t().unwrap_or(0), k, n, m, r))
    };
    K3Terms {
        f1: TwistedSeries::from_laurent(f),
        g1: TwistedSeries::from_laurent(g),
        k1: tensor_diff(f, k, prec_for(f)),
        k2: tensor_diff(g, k, prec_for(g)),
        k4: tensor_diff(h, k, prec_for(h)),
    }
}

/// The six terms as tropical expressions, with `v(Ť) = k - n` and
/// `v(Š) = k - m`.
pub fn k3_expressions(t: &K3Terms, p: u32, k: u32, n: u32, m: u32) -> Vec<(TermId, TropicalExpr)> {
    let check_t = TropicalExpr::symbol("Ť", Ratio::from_integer(k as i64 - n as i64));
    let check_s = TropicalExpr::symbol("Š", Ratio::from_integer(k as i64 - m as i64));
    let ex = |s: &TwistedSeries| TropicalExpr::Exact(s.clone());
    vec![
        (TermId::K1Sp, TropicalExpr::product(vec![ex(&t.k1), check_s.clone().power(p)])),
        (TermId::FSp, TropicalExpr::product(vec![ex(&t.f1), check_s.power(p)])),
        (TermId::K1K2, TropicalExpr::product(vec![ex(&t.k1), ex(&t.k2)])),
        (TermId::GTp, TropicalExpr::product(vec![ex(&t.g1), check_t.power(p)])),
        (TermId::K4, ex(&t.k4)),
        (TermId::FK2, TropicalExpr::product(vec![ex(&t.f1), ex(&t.k2)])),
    ]
}

/// Valuation analysis of `K3` at level `k`.
pub fn k3_analysis(
    f: &LaurentPoly,
    g: &LaurentPoly,
    h: &LaurentPoly,
    k: u32,
    prec: Option<u32>,
) -> K3Analysis {
    let (p, d) = (f.p(), f.d());
    let (n, m) = (pole(f), pole(g));
    let terms = k3_terms(f, g, h, k, prec);
    let exprs = k3_expressions(&terms, p, k, n, m);
    let table = ValuationTable {
        entries: exprs.iter().map(|(id, e)| (*id, tropical_val(e))).collect(),
    };

    let fk2 = &terms.f1 * &terms.k2;
    let combined_series = &terms.k4 - &fk2;
    let combined = combined_series.v_e();

    let residue_of = |s: &TwistedSeries, v: TropVal| -> Option<ResidueForm> {
        let e = v.as_integer().filter(|_| v.exact)?;
        linear_residue(&s.slice(e), d, k as i64 - e)
    };

    let min = table.entries.iter().filter_map(|(_, v)| v.bound).min();
    let attained: Vec<TermId> = table
        .entries
        .iter()
        .filter(|(_, v)| v.bound == min)
        .map(|(id, _)| *id)
        .collect();

    let (dominant, dominant_val, residue) = match attained.as_slice() {
        [] => (Dominant::Tie(vec![]), TropVal::infinite(), None),
        [single] => {
            let v = table.get(*single);
            let residue = match single {
                TermId::K4 => residue_of(&terms.k4, v),
                TermId::FK2 => residue_of(&-&fk2, v),
                _ => None,
            };
            (Dominant::Single(*single), v, residue)
        }
        tied if tied.iter().all(|t| matches!(t, TermId::K4 | TermId::FK2)) => {
            // K4 and f⊗1 K2 cancel to leading order; expand them together
            // and compare against the remaining terms.
            let cv = TropVal {
                bound: combined.value.map(Ratio::from_integer),
                exact: combined.exact,
            };
            let rest_min = table
                .entries
                .iter()
                .filter(|(id, _)| !matches!(id, TermId::K4 | TermId::FK2))
                .filter_map(|(_, v)| v.bound)
                .min();
            let beats_rest = match (cv.bound, rest_min) {
                (Some(c), Some(r)) => c < r,
                (_, None) => true,
                (None, Some(_)) => false,
            };
            if cv.exact && beats_rest {
                (Dominant::Combined, cv, residue_of(&combined_series, cv))
            } else {
                (Dominant::Tie(tied.to_vec()), cv, None)
            }
        }
        tied => (Dominant::Tie(tied.to_vec()), table.get(tied[0]), None),
    };

    K3Analysis {
        k,
        table,
        dominant,
        combined,
        dominant_val,
        residue,
    }
}
