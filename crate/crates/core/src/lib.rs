//! Exact computations with centrally extended Lie algebras of matrix
//! differential operators on the circle, their infinite-matrix models,
//! and their Fock and vacuum representations.
//!
//! Every computation is over exact rationals. The modules build on each
//! other in this order: [`numkernel`], [`diffop`], [`matliealg`],
//! [`glinf`], [`fock`], [`repmap`], [`vacuum`], [`vertexcalc`]. The
//! [`suites`] module bundles the seeded verification runs used by the
//! command-line driver and the acceptance harness.

pub mod diffop;
pub mod fock;
pub mod glinf;
pub mod matliealg;
pub mod numkernel;
pub mod repmap;
pub mod suites;
pub mod vacuum;
pub mod vertexcalc;

pub use diffop::{DiffOp, LaurentPoly};
pub use glinf::{CocycleKind, InfMat, SkewKind, WeightFn};
pub use matliealg::{EllConfig, GlHatElem, Variant};
pub use numkernel::{HalfInt, QSeries, Scalar};
