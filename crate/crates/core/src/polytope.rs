//! Facet-list representation of simplicial polytope boundary complexes.
//!
//! A `d`-dimensional simplicial polytope is stored as its list of facets,
//! each a set of exactly `d` vertices. The constructor validates the
//! pseudo-manifold conditions that characterise boundary complexes at this
//! level: every ridge lies in exactly two facets and the facet adjacency
//! graph is connected. Everything downstream (quotients, towers, sewing)
//! works purely on this combinatorial data; no coordinates are stored.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::set::{VertexId, VertexSet};

/// Boundary complex of a simplicial polytope, given by its facet list.
///
/// Immutable after construction. Facets are kept sorted lexicographically
/// (on their sorted id lists) and duplicate-free, so derived output is
/// deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialPolytope {
    dim: usize,
    labels: Vec<String>,
    facets: Vec<VertexSet>,
}

/// A ridge (`(d-2)`-face) together with the indices of its two facets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ridge {
    pub vertices: VertexSet,
    pub facets: (usize, usize),
}

impl SimplicialPolytope {
    /// Validates and canonicalises a facet list.
    ///
    /// Checks, in order: dimension and vertex-count sanity, label
    /// uniqueness, id range, facet cardinality, duplicate facets, unused
    /// vertices, the two-facets-per-ridge condition, and connectivity of
    /// the facet adjacency graph.
    pub fn new(dim: usize, labels: Vec<String>, facets: Vec<VertexSet>) -> Result<Self> {
        if dim < 1 {
            return Err(Error::BadDimension {
                dim,
                need: "polytopes must have dimension at least 1",
            });
        }
        let n = labels.len();
        if n > VertexId::CAPACITY {
            return Err(Error::TooManyVertices { n });
        }
        if n < dim + 1 {
            return Err(Error::BadParameters(format!(
                "a {dim}-polytope needs at least {} vertices, got {n}",
                dim + 1
            )));
        }
        let mut seen = labels.to_vec();
        seen.sort();
        if let Some(dup) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel {
                label: dup[0].clone(),
            });
        }

        let vertex_range = VertexSet::full(n)?;
        let mut facets = facets;
        for facet in &facets {
            if let Some(v) = facet.difference(vertex_range).min() {
                return Err(Error::UnknownVertex { id: v.index(), n });
            }
            if facet.len() != dim {
                return Err(Error::NonSimplicial {
                    facet: *facet,
                    expected: dim,
                });
            }
        }
        facets.sort();
        if let Some(w) = facets.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateFacet { facet: w[0] });
        }

        let covered: VertexSet = facets
            .iter()
            .fold(VertexSet::EMPTY, |acc, f| acc.union(*f));
        if let Some(id) = vertex_range.difference(covered).min() {
            return Err(Error::UnusedVertex { id });
        }

        let ridge_map = ridge_incidences(dim, &facets);
        for (ridge, incident) in &ridge_map {
            if incident.len() != 2 {
                return Err(Error::BadRidge {
                    ridge: *ridge,
                    count: incident.len(),
                });
            }
        }
        if !facet_graph_connected(facets.len(), &ridge_map) {
            return Err(Error::Disconnected);
        }

        Ok(SimplicialPolytope { dim, labels, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// The set `{0, .., n-1}` of all vertex ids.
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.labels.len()).expect("validated at construction")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.index()]
    }

    pub fn id_of_label(&self, label: &str) -> Option<VertexId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(VertexId::new_unchecked)
    }

    /// Resolves a list of labels to a vertex set.
    pub fn set_from_labels<'a, I: IntoIterator<Item = &'a str>>(&self, labels: I) -> Result<VertexSet> {
        let mut set = VertexSet::EMPTY;
        for label in labels {
            let v = self.id_of_label(label).ok_or_else(|| {
                Error::BadParameters(format!("unknown vertex label {label:?}"))
            })?;
            set = set.insert(v);
        }
        Ok(set)
    }

    /// Facets in canonical (lexicographic) order.
    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn is_facet(&self, f: VertexSet) -> bool {
        self.facets.binary_search(&f).is_ok()
    }

    pub fn facet_index(&self, f: VertexSet) -> Option<usize> {
        self.facets.binary_search(&f).ok()
    }

    /// Is `s` a face? For simplicial polytopes a set is a face exactly
    /// when it is contained in some facet; the empty set always is.
    pub fn is_face(&self, s: VertexSet) -> Result<bool> {
        if let Some(v) = s.difference(self.vertex_set()).min() {
            return Err(Error::UnknownVertex {
                id: v.index(),
                n: self.labels.len(),
            });
        }
        Ok(self.contains_face(s))
    }

    /// Face test without the id-range check, for callers that already
    /// hold sets drawn from this polytope.
    pub(crate) fn contains_face(&self, s: VertexSet) -> bool {
        self.facets.iter().any(|f| s.is_subset_of(*f))
    }

    /// Facets containing `s`.
    pub fn facets_containing(&self, s: VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
        self.facets.iter().copied().filter(move |f| s.is_subset_of(*f))
    }

    /// All ridges with their two incident facets, sorted by ridge.
    pub fn ridges(&self) -> Vec<Ridge> {
        let map = ridge_incidences(self.dim, &self.facets);
        let mut out: Vec<Ridge> = map
            .into_iter()
            .map(|(vertices, incident)| Ridge {
                vertices,
                facets: (incident[0], incident[1]),
            })
            .collect();
        out.sort_by_key(|r| r.vertices);
        out
    }

    /// The quotient polytope `P/G`: facets are `{F \ G : F facet, F ⊇ G}`
    /// re-indexed densely, with the map recording the re-indexing.
    ///
    /// Quotients by faces of more than `dim - 2` vertices are refused;
    /// the degenerate conventions needed by sewing are handled by its
    /// callers instead. If the resulting complex fails polytope
    /// validation the error is reported as `QuotientNotPolytopal`.
    pub fn quotient(&self, g: VertexSet) -> Result<(SimplicialPolytope, QuotientMap)> {
        if !self.is_face(g)? {
            return Err(Error::NotAFace { set: g });
        }
        if g.is_empty() {
            return Ok((self.clone(), QuotientMap::identity(self.labels.len())));
        }
        if g.len() > self.dim - 2 {
            return Err(Error::FaceTooLarge {
                size: g.len(),
                dim: self.dim,
            });
        }
        let star: Vec<VertexSet> = self.facets_containing(g).collect();
        let support = star
            .iter()
            .fold(VertexSet::EMPTY, |acc, f| acc.union(*f))
            .difference(g);
        let to_base: Vec<VertexId> = support.to_vec();
        let map = QuotientMap::new(g, to_base.clone());
        let labels = to_base
            .iter()
            .map(|&v| self.labels[v.index()].clone())
            .collect();
        let facets = star
            .iter()
            .map(|f| {
                map.to_quotient(f.difference(g))
                    .expect("star facets lie in the quotient support")
            })
            .collect();
        match SimplicialPolytope::new(self.dim - g.len(), labels, facets) {
            Ok(q) => Ok((q, map)),
            Err(e) => Err(Error::QuotientNotPolytopal {
                face: g,
                source: Box::new(e),
            }),
        }
    }
}

impl std::fmt::Debug for SimplicialPolytope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SimplicialPolytope(dim={}, n={}, facets={:?})",
            self.dim,
            self.labels.len(),
            self.facets
        )
    }
}

/// Re-indexing bijection between a quotient polytope's vertices and the
/// vertices of the base polytope that survive the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    face: VertexSet,
    to_base: Vec<VertexId>,
}

impl QuotientMap {
    fn new(face: VertexSet, to_base: Vec<VertexId>) -> Self {
        QuotientMap { face, to_base }
    }

    pub fn identity(n: usize) -> Self {
        QuotientMap {
            face: VertexSet::EMPTY,
            to_base: (0..n).map(VertexId::new_unchecked).collect(),
        }
    }

    /// The face that was quotiented out, in base ids.
    pub fn face(&self) -> VertexSet {
        self.face
    }

    /// Number of quotient vertices.
    pub fn len(&self) -> usize {
        self.to_base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_base.is_empty()
    }

    pub fn to_base(&self, v: VertexId) -> VertexId {
        self.to_base[v.index()]
    }

    pub fn from_base(&self, v: VertexId) -> Option<VertexId> {
        self.to_base
            .binary_search(&v)
            .ok()
            .map(VertexId::new_unchecked)
    }

    /// Maps a set of quotient ids to base ids.
    pub fn set_to_base(&self, s: VertexSet) -> VertexSet {
        s.iter().map(|v| self.to_base(v)).collect()
    }

    /// Maps a set of base ids to quotient ids; `None` if any vertex does
    /// not survive the quotient.
    pub fn to_quotient(&self, s: VertexSet) -> Option<VertexSet> {
        s.iter().map(|v| self.from_base(v)).collect()
    }
}

fn ridge_incidences(dim: usize, facets: &[VertexSet]) -> HashMap<VertexSet, Vec<usize>> {
    let mut map: HashMap<VertexSet, Vec<usize>> = HashMap::new();
    for (idx, facet) in facets.iter().enumerate() {
        if dim == 1 {
            // Ridges of a segment are the empty set.
            map.entry(VertexSet::EMPTY).or_default().push(idx);
            continue;
        }
        for v in facet.iter() {
            map.entry(facet.remove(v)).or_default().push(idx);
        }
    }
    map
}

fn facet_graph_connected(count: usize, ridges: &HashMap<VertexSet, Vec<usize>>) -> bool {
    if count == 0 {
        return false;
    }
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); count];
    for incident in ridges.values() {
        for &a in incident {
            for &b in incident {
                if a != b {
                    adjacency[a].push(b);
                }
            }
        }
    }
    let mut seen = vec![false; count];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut visited = 1;
    while let Some(f) = stack.pop() {
        for &g in &adjacency[f] {
            if !seen[g] {
                seen[g] = true;
                visited += 1;
                stack.push(g);
            }
        }
    }
    visited == count
}

/// Convenience constructor used throughout tests: labels default to the
/// decimal ids `"0", "1", ..`.
pub fn make_polytope(dim: usize, n: usize, facets: Vec<VertexSet>) -> Result<SimplicialPolytope> {
    SimplicialPolytope::new(dim, (0..n).map(|i| i.to_string()).collect(), facets)
}
