//! Swan conductor and refined Swan conductor of the rank-`p` sheaf attached
//! to `T^p - T - f`, `S^p - S - g`, `U^p - U - fS - h`.
//!
//! With `n, m, r` the pole orders of `f, g, h`:
//!
//! | case        | condition   | `k`           | `rsw`       |
//! |-------------|-------------|---------------|-------------|
//! | `One`       | `r > m + n` | `r`           | `dh`        |
//! | `Two`       | `r < m + n` | `m + n`       | `-f dg`     |
//! | `ThreeFour` | `r = m + n` | `ord(dh - f dg)` | `dh - f dg` |
//!
//! In the last case `k` must exceed `max(n + m/p, m + n/p)`.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blowup::{self, Dominant, TermId, ValuationTable};
use crate::laurent::LaurentPoly;
use crate::logdiff::{self, LogForm, ResidueForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RswError {
    #[error("{which} is not normalized: {reason}")]
    NotNormalized { which: &'static str, reason: String },
    #[error("dh = f dg identically; no refined Swan conductor at r = m + n")]
    DegenerateCaseThree,
    #[error("k = {k} does not exceed the threshold {threshold}")]
    ThresholdViolated { k: i64, threshold: Ratio<i64> },
    #[error("theorem gives {theorem} but the blow-up engine gives {}", engine.as_ref().map_or("no residue".to_string(), |e| e.to_string()))]
    VerificationMismatch {
        theorem: Box<ResidueForm>,
        engine: Option<Box<ResidueForm>>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    One,
    Two,
    ThreeFour,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::One => "One",
            Case::Two => "Two",
            Case::ThreeFour => "ThreeFour",
        })
    }
}

pub fn classify(n: u32, m: u32, r: u32) -> Case {
    match r.cmp(&(m + n)) {
        std::cmp::Ordering::Greater => Case::One,
        std::cmp::Ordering::Less => Case::Two,
        std::cmp::Ordering::Equal => Case::ThreeFour,
    }
}

/// `max(n + m/p, m + n/p)`.
pub fn threshold(n: u32, m: u32, p: u32) -> Ratio<i64> {
    let (big, small) = if n >= m { (n, m) } else { (m, n) };
    Ratio::from_integer(big as i64) + Ratio::new(small as i64, p as i64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringData {
    pub f: LaurentPoly,
    pub g: LaurentPoly,
    pub h: LaurentPoly,
    pub n: u32,
    pub m: u32,
    pub r: u32,
}

fn normalized_pole(which: &'static str, x: &LaurentPoly) -> Result<u32, RswError> {
    let err = |reason: String| RswError::NotNormalized { which, reason };
    let n = match x.v_t() {
        Some(v) if v < 0 => -v,
        _ => return Err(err("no pole along D".into())),
    };
    match logdiff::d(x).ord() {
        Some(o) if o == n => Ok(n as u32),
        o => Err(err(format!(
            "ord(d{which}) = {} but the pole order is {n}",
            o.map_or("-inf".to_string(), |o| o.to_string())
        ))),
    }
}

impl CoveringData {
    pub fn new(f: LaurentPoly, g: LaurentPoly, h: LaurentPoly) -> Result<Self, RswError> {
        if f.p() != g.p() || f.p() != h.p() || f.d() != g.d() || f.d() != h.d() {
            return Err(RswError::NotNormalized {
                which: "input",
                reason: "f, g, h live in different rings".into(),
            });
        }
        let n = normalized_pole("f", &f)?;
        let m = normalized_pole("g", &g)?;
        let r = normalized_pole("h", &h)?;
        Ok(CoveringData { f, g, h, n, m, r })
    }

    pub fn p(&self) -> u32 {
        self.f.p()
    }

    pub fn case(&self) -> Case {
        classify(self.n, self.m, self.r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RswResult {
    pub case: Case,
    /// Swan conductor.
    pub k: u32,
    pub form: ResidueForm,
    pub table: ValuationTable,
    pub integral: bool,
}

/// `dh - f dg`.
pub fn omega(c: &CoveringData) -> LogForm {
    logdiff::d(&c.h).sub(&logdiff::d(&c.g).scale(&c.f))
}

pub fn compute_rsw(c: &CoveringData) -> Result<RswResult, RswError> {
    compute_rsw_with(c, None)
}

/// As [`compute_rsw`], expanding the blow-up terms to `prec` when given.
pub fn compute_rsw_with(c: &CoveringData, prec: Option<u32>) -> Result<RswResult, RswError> {
    let case = c.case();
    let (k, w) = match case {
        Case::One => (c.r as i64, logdiff::d(&c.h)),
        Case::Two => ((c.m + c.n) as i64, logdiff::d(&c.g).scale(&-&c.f)),
        Case::ThreeFour => {
            let w = omega(c);
            let k = w.ord().ok_or(RswError::DegenerateCaseThree)?;
            let th = threshold(c.n, c.m, c.p());
            if Ratio::from_integer(k) <= th {
                return Err(RswError::ThresholdViolated { k, threshold: th });
            }
            (k, w)
        }
    };
    let form = logdiff::leading_slice(&w, k).expect("k bounds the pole order");
    let table = blowup::k3_analysis(&c.f, &c.g, &c.h, k as u32, prec).table;
    Ok(RswResult {
        case,
        k: k as u32,
        integral: form.is_integral(),
        form,
        table,
    })
}

/// Cross-checks `res` against the blow-up engine at level `res.k`.
///
/// `Ok(false)` when the valuation table does not single out the expected
/// dominant part; an error when it does but the residues differ.
pub fn verify_via_blowup(
    c: &CoveringData,
    res: &RswResult,
    prec: Option<u32>,
) -> Result<bool, RswError> {
    let a = blowup::k3_analysis(&c.f, &c.g, &c.h, res.k, prec);
    let others_positive = |skip: &[TermId]| {
        a.table
            .entries
            .iter()
            .filter(|(id, _)| !skip.contains(id))
            .all(|(_, v)| v.is_positive())
    };
    let table_ok = match res.case {
        Case::One => a.dominant == Dominant::Single(TermId::K4) && others_positive(&[TermId::K4]),
        Case::Two => a.dominant == Dominant::Single(TermId::FK2) && others_positive(&[TermId::FK2]),
        Case::ThreeFour => {
            a.dominant == Dominant::Combined
                && a.combined.exact
                && a.combined.value.is_some_and(|v| v >= 0)
                && others_positive(&[TermId::K4, TermId::FK2])
        }
    };
    if !table_ok {
        return Ok(false);
    }
    if a.residue.as_ref() != Some(&res.form) {
        return Err(RswError::VerificationMismatch {
            theorem: Box::new(res.form.clone()),
            engine: a.residue.map(Box::new),
        });
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MPoly;

    fn t(e: i64, p: u32, d: usize) -> LaurentPoly {
        LaurentPoly::t_pow(e, p, d)
    }

    fn x1(p: u32) -> LaurentPoly {
        LaurentPoly::x(1, p, 1)
    }

    fn covering(f: LaurentPoly, g: LaurentPoly, h: LaurentPoly) -> CoveringData {
        CoveringData::new(f, g, h).unwrap()
    }

    fn table_values(r: &RswResult) -> Vec<i64> {
        r.table.entries.iter().map(|(_, v)| v.as_integer().unwrap()).collect()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(2, 3, 7), Case::One);
        assert_eq!(classify(2, 3, 1), Case::Two);
        assert_eq!(classify(1, 1, 2), Case::ThreeFour);
        assert_eq!(threshold(3, 2, 5), Ratio::new(17, 5));
        assert_eq!(threshold(2, 3, 5), Ratio::new(17, 5));
    }

    #[test]
    fn case_one() {
        let c = covering(t(-2, 5, 0), t(-3, 5, 0), t(-7, 5, 0));
        let r = compute_rsw(&c).unwrap();
        assert_eq!((r.case, r.k), (Case::One, 7));
        assert_eq!(r.form.a0, MPoly::constant(3, 5, 0));
        assert!(r.integral);
        assert_eq!(table_values(&r), vec![25, 18, 9, 22, 0, 2]);
        assert_eq!(verify_via_blowup(&c, &r, None), Ok(true));
    }

    #[test]
    fn case_two() {
        let c = covering(t(-2, 5, 0), t(-3, 5, 0), t(-1, 5, 0));
        let r = compute_rsw(&c).unwrap();
        assert_eq!((r.case, r.k), (Case::Two, 5));
        assert_eq!(r.form.a0, MPoly::constant(3, 5, 0));
        assert_eq!(r.table.get(TermId::K4).as_integer(), Some(4));
        assert_eq!(r.table.get(TermId::FK2).as_integer(), Some(0));
        assert_eq!(verify_via_blowup(&c, &r, None), Ok(true));
    }

    #[test]
    fn case_three_four() {
        let p = 5;
        let c = covering(t(-2, p, 1), t(-3, p, 1), &x1(p) * &t(-5, p, 1));
        let r = compute_rsw(&c).unwrap();
        assert_eq!((r.case, r.k), (Case::ThreeFour, 5));
        assert_eq!(r.form.a0, MPoly::constant(3, p, 1));
        assert_eq!(r.form.b0, vec![MPoly::constant(1, p, 1)]);
        assert_eq!(r.form.to_string(), "3 dlog t + dx1 at level 5");
        assert_eq!(verify_via_blowup(&c, &r, None), Ok(true));
    }

    #[test]
    fn degenerate_and_threshold() {
        let p = 3;
        let c = covering(t(-1, p, 0), t(-1, p, 0), t(-2, p, 0).scale(crate::field::Fp::new(2, p)));
        assert_eq!(compute_rsw(&c), Err(RswError::DegenerateCaseThree));

        let h = &t(-2, p, 1).scale(crate::field::Fp::new(2, p)) + &(&x1(p) * &t(-1, p, 1));
        let c = covering(t(-1, p, 1), t(-1, p, 1), h);
        let w = omega(&c);
        assert_eq!(w.a, (&x1(p) * &t(-1, p, 1)).scale(crate::field::Fp::new(2, p)));
        assert_eq!(w.b[0], t(-1, p, 1));
        assert_eq!(
            compute_rsw(&c),
            Err(RswError::ThresholdViolated { k: 1, threshold: Ratio::new(4, 3) })
        );
    }

    #[test]
    fn not_normalized() {
        let err = CoveringData::new(t(-5, 5, 0), t(-3, 5, 0), t(-7, 5, 0)).unwrap_err();
        assert!(matches!(err, RswError::NotNormalized { which: "f", .. }));
        let err = CoveringData::new(t(-2, 5, 0), t(1, 5, 0), t(-7, 5, 0)).unwrap_err();
        assert!(matches!(err, RswError::NotNormalized { which: "g", .. }));
    }
}
