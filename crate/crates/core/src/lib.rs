//! Numerical laboratory for higher-order Volterra-type operators
//! `T_{g,n}[f](z) = 1/(n-1)! int_0^z (z - t)^{n-1} f(t) g'(t) dt`
//! on Hardy and weighted Bergman spaces of the unit disk.

// Negated comparisons double as NaN rejection in parameter checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod carleson;
pub mod error;
pub mod essnorm;
pub mod norms;
pub mod operators;
pub mod profile;
pub mod quadrature;
pub mod report;
pub mod scenarios;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use norms::{NormParams, Space};
pub use operators::OperatorSpec;
pub use profile::{DensityProfile, Verdict};
pub use series::{PowerSeries, SymbolSpec, C64};
