//! Artin-Schreier normalisation of `T^p - T - f`.
//!
//! `f` and `f + ℘(u)` define the same cover, `℘(u) = u^p - u`. Each step
//! removes the lowest slice `c t^-N` of the principal part when `p | N` and
//! `c` is a `p`-th power in `F_p[x]`; the valuation strictly increases, so at
//! most `|v_t(f)|` steps run.

use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::logdiff;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsError {
    #[error("no pole along D after normalisation: the cover is at most tamely ramified")]
    Unramified,
    #[error("no pole along D")]
    NoPole,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedAS {
    pub f0: LaurentPoly,
    /// Pole order of `f0`, the Swan conductor of the degree-`p` character.
    pub n: u32,
    /// `u` with `f0 = f + u^p - u`.
    pub witness: LaurentPoly,
}

pub fn reduce(f: &LaurentPoly) -> Result<NormalizedAS, AsError> {
    let p = f.p() as i64;
    let mut f0 = f.clone();
    let mut witness = LaurentPoly::zero(f.p(), f.d());
    while let Some((e, c)) = f0.lowest_slice() {
        if e >= 0 || e % p != 0 {
            break;
        }
        let Some(root) = c.pth_root() else { break };
        let w = LaurentPoly::from_slices(f.p(), f.d(), [(e / p, root)]);
        // f - ℘(w) = f + ℘(-w)
        f0 = &f0 - &w.wp();
        witness = &witness - &w;
    }
    match f0.v_t() {
        Some(v) if v < 0 => Ok(NormalizedAS {
            n: (-v) as u32,
            f0,
            witness,
        }),
        _ => Err(AsError::Unramified),
    }
}

/// `(n, ord(df) == n)` with `n = -v_t(f)`.
pub fn check_normalized(f: &LaurentPoly) -> Result<(u32, bool), AsError> {
    match f.v_t() {
        Some(v) if v < 0 => {
            let n = -v;
            Ok((n as u32, logdiff::d(f).ord() == Some(n)))
        }
        _ => Err(AsError::NoPole),
    }
}
