//! Exact computations with finite-dimensional modules over finitely
//! presented algebras.

pub mod algebra;
mod arith;
pub mod catalog;
pub mod error;
pub mod factor;
pub mod field;
pub mod homcalc;
pub mod homological;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod quiver;
pub mod scheme;
pub mod tubes;

pub use algebra::{Algebra, FreePresentation, ModuleRep, NCPoly, StructureAlgebra};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Scalar};
pub use linalg::Mat;
pub use poly::{PolyRing, UniPoly};
