//! Exact counting of rainbow solutions to the Sidon equation `X + Y = Z + T`
//! under colorings of `[n]` and `Z_n`.

pub mod bounds;
pub mod coloring;
pub mod counting;
pub mod enumeration;
pub mod error;
pub mod quad;
pub mod repfn;
pub mod search;

pub use coloring::{mod_coloring, parse_coloring, random_coloring, serialize_coloring, Coloring, Domain};
pub use error::{Error, Result};
pub use quad::{make_quad, ClassBreakdown, ModularSidonQuad, QuadClass, SidonQuad};

/// Exact rational arithmetic for bound formulas and inequality checks.
pub type Rational = num_rational::Ratio<i128>;
