//! Neighbourliness, universal faces and missing faces.
//!
//! A `d`-polytope is neighbourly when every `floor(d/2)` vertices span a
//! face. A face `U` of an even-dimensional neighbourly polytope is
//! *universal* when joining any small enough vertex set to it still gives
//! a face; equivalently when the quotient `P/U` is again neighbourly with
//! the full complement of vertices, and (for odd-dimensional `U`)
//! equivalently when no missing face meets `U` in more than half of its
//! vertices. All three tests are implemented; they are checked against
//! each other exhaustively in the test suites.

use crate::error::{Error, Result};
use crate::polytope::SimplicialPolytope;
use crate::set::VertexSet;

/// A minimal non-face relative to a background face.
///
/// `members` joined with `relative_to` is not a face, but dropping any
/// one member restores a face. Absolute missing faces have
/// `relative_to = {}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MissingFace {
    pub members: VertexSet,
    pub relative_to: VertexSet,
}

/// Is every `floor(d/2)`-subset of the vertices a face?
pub fn is_neighbourly(p: &SimplicialPolytope) -> bool {
    let k = p.dim() / 2;
    p.vertex_set()
        .subsets_of_size(k)
        .all(|s| p.contains_face(s))
}

/// All minimal sets `M` disjoint from `g` with `[M, g]` a non-face and
/// every proper subset of `M` extending `g` to a face, ascending by
/// cardinality and lexicographically within one cardinality.
///
/// For absolute missing faces (`g` empty) of a neighbourly non-simplex
/// `2m`-polytope the enumeration stops at cardinality `m + 1`: smaller
/// sets are faces by neighbourliness and every minimal non-face has
/// exactly `m + 1` vertices there. Relative missing faces carry no such
/// bound and are enumerated in full.
pub fn missing_faces(p: &SimplicialPolytope, g: VertexSet) -> Result<Vec<MissingFace>> {
    if !p.is_face(g)? {
        return Err(Error::NotAFace { set: g });
    }
    let ground = p.vertex_set().difference(g);
    let n = p.vertex_count();
    let d = p.dim();
    let capped = g.is_empty() && d.is_multiple_of(2) && n > d + 1 && is_neighbourly(p);
    let max_size = if capped { d / 2 + 1 } else { ground.len() };

    let mut found: Vec<VertexSet> = Vec::new();
    for size in 1..=max_size {
        for m in ground.subsets_of_size(size) {
            // Any candidate containing an already-found missing face has a
            // non-face proper subset, so it cannot be minimal. Conversely a
            // candidate containing none of them has all proper subsets
            // faces, and is a missing face exactly when it is a non-face.
            if found.iter().any(|f| f.is_subset_of(m)) {
                continue;
            }
            if !p.contains_face(m.union(g)) {
                debug_assert!(m
                    .iter()
                    .all(|v| p.contains_face(m.remove(v).union(g))));
                found.push(m);
            }
        }
    }
    found.sort();
    Ok(found
        .into_iter()
        .map(|members| MissingFace {
            members,
            relative_to: g,
        })
        .collect())
}

/// Direct universality test: `u` is a facet, or `[s, u]` is a face for
/// every vertex set `s` with at most `floor((d - |u|) / 2)` members.
/// The empty face gets the bound `d/2`, so its universality coincides
/// with neighbourliness of `p`, matching the quotient form.
pub fn is_universal_face(p: &SimplicialPolytope, u: VertexSet) -> Result<bool> {
    if !p.is_face(u)? {
        return Err(Error::NotAFace { set: u });
    }
    let d = p.dim();
    if u.len() == d {
        return Ok(true);
    }
    let bound = (d - u.len()) / 2;
    let ground = p.vertex_set().difference(u);
    for size in 1..=bound {
        for s in ground.subsets_of_size(size) {
            if !p.contains_face(s.union(u)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Quotient form of the universality test: `P/u` is polytopal,
/// neighbourly and keeps all `n - |u|` remaining vertices. Facets
/// short-circuit to true; faces too large to quotient (and too small to
/// be facets) are refused.
pub fn is_universal_via_quotient(p: &SimplicialPolytope, u: VertexSet) -> Result<bool> {
    if !p.is_face(u)? {
        return Err(Error::NotAFace { set: u });
    }
    let d = p.dim();
    if u.len() == d {
        return Ok(true);
    }
    match p.quotient(u) {
        Ok((q, _)) => {
            Ok(q.vertex_count() == p.vertex_count() - u.len() && is_neighbourly(&q))
        }
        Err(Error::QuotientNotPolytopal { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Missing-face form of the universality test for odd-dimensional faces:
/// a `(2k-1)`-face `u` is universal iff `|M ∩ u| <= k` for every absolute
/// missing face `M`.
pub fn universal_via_missing(p: &SimplicialPolytope, u: VertexSet) -> Result<bool> {
    if !p.is_face(u)? {
        return Err(Error::NotAFace { set: u });
    }
    if !u.len().is_multiple_of(2) || u.is_empty() {
        return Err(Error::BadDimension {
            dim: u.len().saturating_sub(1),
            need: "the missing-face test applies to odd-dimensional faces",
        });
    }
    let k = u.len() / 2;
    let missing = missing_faces(p, VertexSet::EMPTY)?;
    Ok(missing
        .iter()
        .all(|m| m.members.intersection(u).len() <= k))
}

/// Exhaustive, sorted list of all universal `k`-faces for odd `k`, by
/// brute force over the `k`-faces.
pub fn universal_faces(p: &SimplicialPolytope, k: usize) -> Result<Vec<VertexSet>> {
    let d = p.dim();
    if !d.is_multiple_of(2) || d < 4 {
        return Err(Error::BadDimension {
            dim: d,
            need: "universal-face enumeration expects an even dimension >= 4",
        });
    }
    if k.is_multiple_of(2) || k > d - 1 {
        return Err(Error::BadDimension {
            dim: k,
            need: "face dimension must be odd and below the polytope dimension",
        });
    }
    let mut out = Vec::new();
    for candidate in p.vertex_set().subsets_of_size(k + 1) {
        if p.contains_face(candidate) && is_universal_face(p, candidate)? {
            out.push(candidate);
        }
    }
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    Ok(out)
}
