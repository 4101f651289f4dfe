//! Combinatorial construction of even-dimensional neighbourly polytopes
//! by sewing.
//!
//! The crate works entirely on facet lists: cyclic polytopes are
//! generated from Gale's evenness condition, universal towers classify
//! facets into beyond/beneath categories, and sewing a new vertex exactly
//! beyond the alternating category union produces a larger neighbourly
//! polytope. The recursive sewing routine reduces a `2m`-dimensional
//! sewing to a chain of quotient sewings ending in a polygon, and an
//! extended variant carries the catalog of odd-dimensional universal
//! faces along so repeated sewings never re-enumerate them. Every fast
//! path has a brute-force counterpart used as a test oracle.
//!
//! ```
//! use polysew::cyclic::cyclic_polytope;
//! use polysew::neighbourly::is_neighbourly;
//! use polysew::sewing::sew;
//! use polysew::tower::find_towers;
//!
//! let p = cyclic_polytope(7, 4)?;
//! let tower = find_towers(&p, Some(1))?.remove(0);
//! let bigger = sew(&p, &tower, "s1")?;
//! assert_eq!(bigger.vertex_count(), 8);
//! assert_eq!(bigger.facet_count(), 20);
//! assert!(is_neighbourly(&bigger));
//! # Ok::<(), polysew::Error>(())
//! ```

pub mod cyclic;
mod error;
pub mod iso;
pub mod neighbourly;
pub mod polytope;
pub mod set;
pub mod sewing;
pub mod tower;
pub mod tracking;

pub use error::{Error, Result};
pub use iso::are_isomorphic;
pub use polytope::{make_polytope, QuotientMap, Ridge, SimplicialPolytope};
pub use set::{VertexId, VertexSet};
