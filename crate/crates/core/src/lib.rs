//! Exact computations around Hilbert schemes of plane curve singularities,
//! HOMFLY polynomials of their links, and stable-pair wallcrossing.

pub mod braid;
pub mod hilbseries;
pub mod quiver;
pub mod report;
pub mod ring;
pub mod semimodule;
pub mod wallcross;

pub use braid::{BraidError, BraidWord, HomflyValue};
pub use hilbseries::{Backend, CompactCurveData, HilbError, HodgeData};
pub use quiver::{DimVector, QuiverError};
pub use report::CheckReport;
pub use ring::{Caps, MonomialKey, Rat, RingError, Series, Var};
pub use semimodule::{CurveGerm, GammaModule, SemimoduleError};
pub use wallcross::{InvariantTable, WallError};
