//! Exact 2-isogeny descent on `E_p: y^2 = x(x^2 + p)` and its isogenous partner
//! `E'_p: y^2 = x(x^2 - 4p)` over the imaginary quadratic fields
//! Q(i), Q(sqrt(-2)), Q(sqrt(-7)) and Q(sqrt(-q)) for q = 3 (mod 8) of class number one.
//!
//! Everything is computed with exact integers: ring arithmetic in `quadfield`,
//! completions in `localfield`, point arithmetic in `curves`, Selmer groups in
//! `descent`, Tate's algorithm in `reduction`, Euler products in `lfunction`
//! and torsion in `torsion`.

pub mod arith;
pub mod curves;
pub mod descent;
pub mod error;
pub mod ffield;
pub mod lemmas;
pub mod lfunction;
pub mod localfield;
pub mod properties;
pub mod quadfield;
pub mod reduction;
pub mod torsion;
pub mod verify;

pub use error::{Error, Result};
pub use quadfield::{FieldContext, FieldFamily, FieldKind, QuadInt, SplitData, SplittingType};
pub use localfield::{FinitePlace, Place, SolvabilityVerdict, VerdictStatus};
pub use descent::{DescentReport, SelmerGroup, SelmerSide, SquareClass};
pub use reduction::{Kodaira, ReductionData};
pub use torsion::TorsionReport;

/// Default refinement depth for the local solvability search.
pub const DEFAULT_DEPTH_CAP: u32 = 40;
