//! Exact mod-`p` computation of Steenrod–Milnor operations on the
//! superalgebra `E(x_1..x_n) ⊗ P(y_1..y_n)` and on the rank-two
//! Dickson–Mui invariants.
//!
//! The crate is organised bottom-up:
//!
//! - [`gfp`]: prime-field arithmetic, Lucas binomials, `p`-adic digits.
//! - [`superpoly`]: the bigraded superalgebra with Koszul signs.
//! - [`steenrod`]: the brute-force action of `St^{S,R}` (atom table + Cartan formula).
//! - [`dickson`]: the invariants `L`, `M`, `Q`, `R`, invariance checks and
//!   Dickson–Mui normal form.
//! - [`closedform`]: closed-form right-hand sides for the action on invariants.
//! - [`harness`]: verification campaigns that compare closed forms to the oracle.

pub mod closedform;
pub mod dickson;
pub mod error;
pub mod gfp;
pub mod harness;
pub mod steenrod;
pub mod superpoly;

pub use error::{Error, Result};
pub use gfp::{FpScalar, Prime};
pub use superpoly::{Matrix, SuperMonomial, SuperPoly};
