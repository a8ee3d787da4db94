//! Exact arithmetic, geometry and generator synthesis for convex subsets of `D^n`,
//! where `D = Z[1/2]` is the ring of dyadic rationals and the only operation is
//! the midpoint `x o y = (x + y) / 2`.
//!
//! ```
//! use dyconvex::groupoid::{member, GeneratorSet};
//! use dyconvex::generators::generating_set_polytope;
//! use dyconvex::hull::convex_hull;
//!
//! # fn main() -> dyconvex::Result<()> {
//! let g = GeneratorSet::from_strs(&["0,0", "1,3", "3,0", "1,1"])?;
//! assert!(member(&"3/2,0".parse()?, &g)?);
//! assert!(!member(&"1,0".parse()?, &g)?);
//!
//! let tri = convex_hull(&g.points()[..3])?;
//! let cert = generating_set_polytope(&tri)?.reduced()?;
//! assert!(cert.validate()?);
//! # Ok(())
//! # }
//! ```

pub mod classify;
pub mod cli;
pub mod dyadic;
pub mod error;
pub mod generators;
pub mod groupoid;
pub mod hull;
pub mod lattice;
pub mod linalg;
pub mod point;

pub use dyadic::{odd_part, Dyadic};
pub use error::{Error, Result};
pub use point::{affine_combination, midpoint, unit_circle_points, DyadicPoint};
