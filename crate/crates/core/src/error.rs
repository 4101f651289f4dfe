use thiserror::Error;

use crate::set::{VertexId, VertexSet};

/// Errors reported by the polytope, tower, sewing and tracking layers.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    /// A facet does not have exactly `dim` vertices.
    #[error("facet {facet} has {} vertices, expected {expected} (not simplicial)", facet.len())]
    NonSimplicial { facet: VertexSet, expected: usize },

    /// A ridge lies in a number of facets other than two.
    #[error("ridge {ridge} lies in {count} facets, expected exactly 2")]
    BadRidge { ridge: VertexSet, count: usize },

    /// The facet adjacency graph (facets adjacent iff sharing a ridge) is disconnected.
    #[error("facet adjacency graph is disconnected")]
    Disconnected,

    /// The facet list contains a repeated entry.
    #[error("duplicate facet {facet}")]
    DuplicateFacet { facet: VertexSet },

    /// Vertex ids are capped at 64 so that vertex sets fit in a machine word.
    #[error("at most 64 vertices are supported, got {n}")]
    TooManyVertices { n: usize },

    /// Two vertices carry the same label.
    #[error("duplicate vertex label {label:?}")]
    DuplicateLabel { label: String },

    /// A declared vertex appears in no facet.
    #[error("vertex {id:?} appears in no facet")]
    UnusedVertex { id: VertexId },

    /// A vertex id is outside the polytope's vertex range.
    #[error("unknown vertex id {id} (polytope has {n} vertices)")]
    UnknownVertex { id: usize, n: usize },

    /// The given set is not a face of the polytope.
    #[error("{set} is not a face")]
    NotAFace { set: VertexSet },

    /// Quotients are only taken by faces of at most `dim - 2` vertices.
    #[error("cannot quotient by a face of {size} vertices in dimension {dim}")]
    FaceTooLarge { size: usize, dim: usize },

    /// The complex of facets containing the face fails polytope validation.
    #[error("quotient by {face} is not polytopal: {source}")]
    QuotientNotPolytopal { face: VertexSet, source: Box<Error> },

    /// Isomorphism search is limited to small vertex counts.
    #[error("isomorphism search supports at most {max} vertices, got {n}")]
    SearchTooLarge { n: usize, max: usize },

    /// Catch-all for malformed constructor arguments.
    #[error("{0}")]
    BadParameters(String),

    /// The operation requires a polytope or face of a different dimension.
    #[error("dimension {dim} unsupported: {need}")]
    BadDimension { dim: usize, need: &'static str },

    /// A tower prefix fails the universality test.
    #[error("tower prefix at level {level} ({face}) is not a universal face")]
    NotUniversalAtLevel { level: usize, face: VertexSet },

    /// A tower repeats a vertex.
    #[error("tower repeats vertex {id:?}")]
    DuplicateVertex { id: VertexId },

    /// A tower has the wrong number of pairs for the polytope's dimension.
    #[error("tower has {got} pairs, expected {expected}")]
    WrongLength { got: usize, expected: usize },

    /// The given set is not a facet.
    #[error("{set} is not a facet")]
    NotAFacet { set: VertexSet },

    /// The operation requires a neighbourly polytope of even dimension.
    #[error("polytope is not an even-dimensional neighbourly polytope")]
    NotNeighbourly,

    /// Sewing requires at least 2m + 3 vertices.
    #[error("sewing needs at least {need} vertices, got {n}")]
    TooFewVertices { n: usize, need: usize },

    /// The tower does not belong to the polytope being sewn.
    #[error("invalid tower: {source}")]
    InvalidTower { source: Box<Error> },

    /// A tracking step consulted a universal-face list that has not been built yet.
    #[error("universal {needed_dim}-face list consulted before it was built")]
    CatalogOrderViolation { needed_dim: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
