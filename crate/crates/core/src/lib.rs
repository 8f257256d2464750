//! Exact cc-differential uniformity analysis over finite fields.
//!
//! The crate computes c- and cc-difference distribution tables of functions
//! `GF(p^n) → GF(p^s)` (with `s | n`), evaluates Walsh-transform characterizations
//! in exact cyclotomic arithmetic, and checks how these quantities behave under
//! c-affine, c-EA and c-CCZ transformations.

pub mod diffspec;
pub mod equivlab;
pub mod error;
pub mod funcrep;
pub mod gf;
pub mod linalg;
pub mod repro;
pub mod walshlab;

pub use diffspec::{Ddt, Kind, Spectrum};
pub use error::{Error, Result};
pub use funcrep::{DoDescriptor, Origin, VecFunc};
pub use gf::{Elem, FieldCtx, Subfield};
pub use linalg::FpMatrix;
pub use walshlab::{CycInt, PhiPoly, WalshTable};
