//! Combinatorial isomorphism of simplicial polytopes.
//!
//! Two facet lists are isomorphic when some vertex bijection carries one
//! facet set onto the other exactly. With an explicit candidate bijection
//! the check is a single relabelling; without one, a backtracking search
//! with facet-degree pruning looks for a witness (small inputs only).

use crate::error::{Error, Result};
use crate::polytope::SimplicialPolytope;
use crate::set::{VertexId, VertexSet};

/// Largest vertex count accepted by the witness search.
pub const SEARCH_LIMIT: usize = 12;

/// Checks whether `p` and `q` have the same boundary complex up to
/// relabelling.
///
/// With `mapping = Some(f)` (where `f[i]` is the image of `p`'s vertex
/// `i`), returns the mapping back iff relabelling `p`'s facets through it
/// yields exactly `q`'s facet set. With `mapping = None`, searches for a
/// witness bijection; `p` must have at most [`SEARCH_LIMIT`] vertices.
pub fn are_isomorphic(
    p: &SimplicialPolytope,
    q: &SimplicialPolytope,
    mapping: Option<&[VertexId]>,
) -> Result<Option<Vec<VertexId>>> {
    if let Some(map) = mapping {
        return apply_explicit(p, q, map);
    }
    if p.dim() != q.dim()
        || p.vertex_count() != q.vertex_count()
        || p.facet_count() != q.facet_count()
    {
        return Ok(None);
    }
    let n = p.vertex_count();
    if n > SEARCH_LIMIT {
        return Err(Error::SearchTooLarge {
            n,
            max: SEARCH_LIMIT,
        });
    }

    let p_degrees = facet_degrees(p);
    let q_degrees = facet_degrees(q);
    let mut sorted_p = p_degrees.clone();
    let mut sorted_q = q_degrees.clone();
    sorted_p.sort_unstable();
    sorted_q.sort_unstable();
    if sorted_p != sorted_q {
        return Ok(None);
    }

    let mut assignment: Vec<Option<VertexId>> = vec![None; n];
    let mut used = VertexSet::EMPTY;
    if search(p, q, &p_degrees, &q_degrees, 0, &mut assignment, &mut used) {
        Ok(Some(
            assignment.into_iter().map(|v| v.expect("complete")).collect(),
        ))
    } else {
        Ok(None)
    }
}

fn apply_explicit(
    p: &SimplicialPolytope,
    q: &SimplicialPolytope,
    map: &[VertexId],
) -> Result<Option<Vec<VertexId>>> {
    let n = p.vertex_count();
    if map.len() != n || q.vertex_count() != n {
        return Err(Error::BadParameters(format!(
            "mapping must be a bijection on {n} vertices"
        )));
    }
    let image: VertexSet = map.iter().copied().collect();
    if image.len() != n || !image.is_subset_of(q.vertex_set()) {
        return Err(Error::BadParameters(
            "mapping must be a bijection onto the target vertex set".into(),
        ));
    }
    if p.dim() != q.dim() || p.facet_count() != q.facet_count() {
        return Ok(None);
    }
    let mut mapped: Vec<VertexSet> = p
        .facets()
        .iter()
        .map(|f| f.iter().map(|v| map[v.index()]).collect())
        .collect();
    mapped.sort();
    if mapped == q.facets() {
        Ok(Some(map.to_vec()))
    } else {
        Ok(None)
    }
}

fn facet_degrees(p: &SimplicialPolytope) -> Vec<usize> {
    (0..p.vertex_count())
        .map(|i| {
            let v = VertexSet::singleton(VertexId::new_unchecked(i));
            p.facets_containing(v).count()
        })
        .collect()
}

fn search(
    p: &SimplicialPolytope,
    q: &SimplicialPolytope,
    p_degrees: &[usize],
    q_degrees: &[usize],
    next: usize,
    assignment: &mut Vec<Option<VertexId>>,
    used: &mut VertexSet,
) -> bool {
    let n = p.vertex_count();
    if next == n {
        return true;
    }
    for cand in 0..n {
        let cand_id = VertexId::new_unchecked(cand);
        if used.contains(cand_id) || q_degrees[cand] != p_degrees[next] {
            continue;
        }
        assignment[next] = Some(cand_id);
        *used = used.insert(cand_id);
        if consistent_so_far(p, q, assignment, next)
            && search(p, q, p_degrees, q_degrees, next + 1, assignment, used)
        {
            return true;
        }
        *used = used.remove(cand_id);
        assignment[next] = None;
    }
    false
}

/// Every facet of `p` that became fully assigned by mapping vertex `next`
/// must land on a facet of `q`.
fn consistent_so_far(
    p: &SimplicialPolytope,
    q: &SimplicialPolytope,
    assignment: &[Option<VertexId>],
    next: usize,
) -> bool {
    let assigned: VertexSet = (0..=next).map(VertexId::new_unchecked).collect();
    let v = VertexId::new_unchecked(next);
    for facet in p.facets() {
        if facet.contains(v) && facet.is_subset_of(assigned) {
            let image: VertexSet = facet
                .iter()
                .map(|u| assignment[u.index()].expect("assigned"))
                .collect();
            if !q.is_facet(image) {
                return false;
            }
        }
    }
    true
}
