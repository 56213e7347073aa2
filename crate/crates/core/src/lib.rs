//! Exact computation of the Swan conductor and the refined Swan conductor
//! of rank-`p` Heisenberg sheaves along a smooth divisor `D = {t = 0}`.
//!
//! The ring of functions is `R = F_p[x_1..x_d][t, t^-1]`. A sheaf is given
//! by three Artin-Schreier equations `T^p - T = f`, `S^p - S = g`,
//! `U^p - U = fS + h`; [`rsw::compute_rsw`] returns the conductor and the
//! refined conductor as a log form, and [`rsw::verify_via_blowup`] checks
//! the answer against an independent valuation computation on the blow-up
//! of `X × X` along the diagonal.

pub mod asreduce;
pub mod blowup;
pub mod field;
pub mod heisenberg;
pub mod laurent;
pub mod logdiff;
pub mod oracle;
pub mod parse;
pub mod pipeline;
pub mod poly;
pub mod rsw;
pub mod series;

pub use asreduce::{reduce, NormalizedAS};
pub use field::Fp;
pub use laurent::LaurentPoly;
pub use logdiff::{LogForm, ResidueForm};
pub use parse::parse_expr;
pub use poly::MPoly;
pub use rsw::{compute_rsw, verify_via_blowup, Case, CoveringData, RswResult};
pub use series::TwistedSeries;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] field::FieldError),
    #[error(transparent)]
    Laurent(#[from] laurent::LaurentError),
    #[error(transparent)]
    Parse(#[from] parse::ParseError),
    #[error(transparent)]
    ArtinSchreier(#[from] asreduce::AsError),
    #[error(transparent)]
    Blowup(#[from] blowup::BlowupError),
    #[error(transparent)]
    Rsw(#[from] rsw::RswError),
    #[error(transparent)]
    Heisenberg(#[from] heisenberg::HeisenbergError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
}
