//! Shared helpers for the integration suites: corpus constructors and
//! independent brute-force oracles that deliberately avoid the library's
//! fast paths.
//!
//! Each suite uses the subset it needs.
#![allow(dead_code)]

use polysew::cyclic::cyclic_polytope;
use polysew::tower::{find_towers, UniversalTower};
use polysew::{SimplicialPolytope, VertexSet};

pub fn c64() -> SimplicialPolytope {
    cyclic_polytope(6, 4).unwrap()
}

pub fn c74() -> SimplicialPolytope {
    cyclic_polytope(7, 4).unwrap()
}

pub fn c96() -> SimplicialPolytope {
    cyclic_polytope(9, 6).unwrap()
}

pub fn towers(p: &SimplicialPolytope, limit: Option<usize>) -> Vec<UniversalTower> {
    find_towers(p, limit).unwrap()
}

/// Uncapped, definition-level missing-face enumeration: every subset of
/// the vertices is tested, a missing face being a non-face all of whose
/// one-element-smaller subsets are faces. Quadratic-exponential and
/// proud of it; only run on small polytopes.
pub fn brute_missing_faces(p: &SimplicialPolytope) -> Vec<VertexSet> {
    let n = p.vertex_count();
    assert!(n < 20, "brute-force oracle is for desk-scale inputs");
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let s = VertexSet::from_bits(mask);
        if p.is_face(s).unwrap() {
            continue;
        }
        if s.iter().all(|v| p.is_face(s.remove(v)).unwrap()) {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// All faces of `p` (subsets of facets), deduplicated and sorted. The
/// empty set is included.
pub fn all_faces(p: &SimplicialPolytope) -> Vec<VertexSet> {
    let mut faces: Vec<VertexSet> = Vec::new();
    for facet in p.facets() {
        for size in 0..=facet.len() {
            faces.extend(facet.subsets_of_size(size));
        }
    }
    faces.sort();
    faces.dedup();
    faces
}
