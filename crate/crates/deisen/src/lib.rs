//! Exact q-series arithmetic for double Eisenstein series, period-ratio
//! coefficients of Hecke eigenforms, and mechanical verification of the
//! identities relating them.
//!
//! The crate keeps every q-coefficient in a formal coefficient ring over
//! arbitrary-precision rationals, with normalized single and double zeta
//! symbols as generators, so the series-level identities can be checked
//! structurally. Constant terms involve genuine zeta values and are checked
//! by a high-precision numeric evaluator instead.
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `deisen` binary for the command-line interface.

pub mod deisenstein;
pub mod error;
pub mod hp;
pub mod lfunc;
pub mod modforms;
pub mod qseries;
pub mod rat;
pub mod verify;
pub mod zetapoly;

pub use error::{Error, Result};
pub use qseries::QSeries;
pub use rat::Rat;
pub use zetapoly::ZetaPoly;
