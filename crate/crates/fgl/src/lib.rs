//! Exact-arithmetic calculus for one-dimensional commutative formal group
//! laws over graded rational coefficient rings.
//!
//! The crate is organized bottom-up:
//!
//! - [`rat`] and [`ring`]: exact rationals and sparse weighted polynomial
//!   rings with generator-defined homomorphisms.
//! - [`series`], [`laurent`], [`biseries`]: truncated power series in one
//!   variable, finite-tailed Laurent series with residues and Lagrange
//!   inversion, and bivariate series.
//! - [`hensel`]: Hensel's lemma for polynomial equations over series rings.
//! - [`law`]: formal group laws with logarithm/exponential, `[n]`-series,
//!   formal sums, the S/P expansion and its residue route, symmetric-function
//!   data, and conjugation.
//! - [`idempotents`]: the two projections onto odd laws and the
//!   Frobenius-type `T` elements.
//! - [`witt`]: sequence groups under convolution, reversion, and their
//!   law-twisted forms.
//! - [`invol`]: involutive series, their correspondence with even series and
//!   with expansion coefficients, and coset rigidity.
//! - [`report`], [`verify`], [`cli`]: named check suites with deterministic
//!   machine-readable reports, and the command-line front end.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals, all
//! equalities are coefficientwise to the working truncation, and no floating
//! point appears anywhere.

pub mod biseries;
pub mod cli;
pub mod error;
pub mod hensel;
pub mod idempotents;
pub mod invol;
pub mod laurent;
pub mod law;
pub mod rat;
pub mod report;
pub mod ring;
pub mod series;
pub mod verify;
pub mod witt;

pub use biseries::BiSeries;
pub use error::{Error, Result};
pub use laurent::LaurentSeries;
pub use law::FormalGroupLaw;
pub use rat::Rat;
pub use report::Report;
pub use ring::{GeneratorTable, Polynomial, RingHom};
pub use series::TruncSeries;
