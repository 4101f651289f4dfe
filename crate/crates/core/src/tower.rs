//! Universal towers and the beyond/beneath facet classification.
//!
//! A tower in a `2m`-polytope is a chain of vertex pairs
//! `(x_1, y_1), .., (x_m, y_m)` whose prefixes `Phi_j = {x_1, y_1, ..,
//! x_j, y_j}` are universal `(2j-1)`-faces; `Phi_m` is a facet. Each
//! facet `F` is classified by the largest `j` with `Phi_j ⊆ F`
//! (`Phi_0 = {}` always qualifies): the sewn vertex lies beyond `F`
//! exactly when that `j` is odd, which is the alternating union
//! `(F_1 \ F_2) ∪ (F_3 \ F_4) ∪ ..` of the prefix-containment classes.

use crate::error::{Error, Result};
use crate::neighbourly::{is_neighbourly, is_universal_face};
use crate::polytope::{QuotientMap, SimplicialPolytope};
use crate::set::{VertexId, VertexSet};

/// Which side of a facet's hyperplane the sewn vertex falls on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Beneath,
    Beyond,
}

impl Side {
    /// Beyond iff the deepest contained tower prefix has odd index.
    pub fn from_level(largest_j: usize) -> Side {
        if largest_j % 2 == 1 {
            Side::Beyond
        } else {
            Side::Beneath
        }
    }
}

/// Classification of one facet against a tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FacetClass {
    /// Index of the facet in the polytope's facet list.
    pub facet: usize,
    /// Largest `j` with `Phi_j` contained in the facet.
    pub largest_j: usize,
    pub side: Side,
}

/// A validated universal tower. Pairs keep their given orientation; the
/// `x` and `y` members play asymmetric roles in sewing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalTower {
    pairs: Vec<(VertexId, VertexId)>,
}

impl UniversalTower {
    /// Number of pairs (`m`, half the dimension of the owning polytope).
    pub fn levels(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(VertexId, VertexId)] {
        &self.pairs
    }

    pub fn pair(&self, j: usize) -> (VertexId, VertexId) {
        self.pairs[j - 1]
    }

    /// The prefix face `Phi_j`; `phi(0)` is the empty set.
    pub fn phi(&self, j: usize) -> VertexSet {
        self.pairs[..j]
            .iter()
            .flat_map(|&(x, y)| [x, y])
            .collect()
    }

    /// All tower vertices (`Phi_m`).
    pub fn vertex_set(&self) -> VertexSet {
        self.phi(self.levels())
    }
}

/// Validates pair data into a tower for `p`: pairs must be distinct
/// vertices, one pair per dimension step, and every prefix `Phi_j` a
/// universal `(2j-1)`-face.
pub fn validate_tower(
    p: &SimplicialPolytope,
    pairs: &[(VertexId, VertexId)],
) -> Result<UniversalTower> {
    let d = p.dim();
    if !d.is_multiple_of(2) {
        return Err(Error::BadDimension {
            dim: d,
            need: "towers live in even-dimensional polytopes",
        });
    }
    let m = d / 2;
    if pairs.len() != m {
        return Err(Error::WrongLength {
            got: pairs.len(),
            expected: m,
        });
    }
    let mut seen = VertexSet::EMPTY;
    for &(x, y) in pairs {
        for v in [x, y] {
            if v.index() >= p.vertex_count() {
                return Err(Error::UnknownVertex {
                    id: v.index(),
                    n: p.vertex_count(),
                });
            }
            if seen.contains(v) {
                return Err(Error::DuplicateVertex { id: v });
            }
            seen = seen.insert(v);
        }
    }
    let tower = UniversalTower {
        pairs: pairs.to_vec(),
    };
    for j in 1..=m {
        let phi = tower.phi(j);
        if !p.contains_face(phi) || !is_universal_face(p, phi)? {
            return Err(Error::NotUniversalAtLevel { level: j, face: phi });
        }
    }
    Ok(tower)
}

/// Classifies one facet: scan prefixes from the deepest down, take the
/// first contained one.
pub fn classify_facet(
    p: &SimplicialPolytope,
    t: &UniversalTower,
    facet: VertexSet,
) -> Result<FacetClass> {
    let index = p
        .facet_index(facet)
        .ok_or(Error::NotAFacet { set: facet })?;
    Ok(classify_indexed(t, index, facet))
}

fn classify_indexed(t: &UniversalTower, index: usize, facet: VertexSet) -> FacetClass {
    let mut largest_j = 0;
    for j in (1..=t.levels()).rev() {
        if t.phi(j).is_subset_of(facet) {
            largest_j = j;
            break;
        }
    }
    FacetClass {
        facet: index,
        largest_j,
        side: Side::from_level(largest_j),
    }
}

/// Classification of every facet, in facet-list order.
pub fn classify_all(p: &SimplicialPolytope, t: &UniversalTower) -> Vec<FacetClass> {
    debug_assert!(t.vertex_set().is_subset_of(p.vertex_set()));
    p.facets()
        .iter()
        .enumerate()
        .map(|(i, f)| classify_indexed(t, i, *f))
        .collect()
}

/// The quotient `P/Phi_i` together with its map and the corresponding
/// tower (the remaining pairs re-indexed through the map). `i = 0` gives
/// back copies of the inputs.
///
/// Preconditions (`i < m`, `t` a tower of `p`) are the caller's; the
/// quotient tower's validity follows from universality of `Phi_i` and is
/// re-checked in debug builds.
pub fn quotient_tower(
    p: &SimplicialPolytope,
    t: &UniversalTower,
    i: usize,
) -> (SimplicialPolytope, QuotientMap, UniversalTower) {
    let m = t.levels();
    assert!(i < m, "quotient level {i} out of range for an {m}-pair tower");
    if i == 0 {
        return (
            p.clone(),
            QuotientMap::identity(p.vertex_count()),
            t.clone(),
        );
    }
    let (q, map) = p
        .quotient(t.phi(i))
        .expect("tower prefixes are universal, so their quotients are polytopal");
    let pairs: Vec<(VertexId, VertexId)> = t.pairs[i..]
        .iter()
        .map(|&(x, y)| {
            (
                map.from_base(x).expect("tower vertex survives the quotient"),
                map.from_base(y).expect("tower vertex survives the quotient"),
            )
        })
        .collect();
    debug_assert!(validate_tower(&q, &pairs).is_ok());
    (q, map, UniversalTower { pairs })
}

/// Exhaustive depth-first tower search: universal edges as `Phi_1`,
/// extended one universal prefix at a time, pairs normalised `x < y` and
/// visited in lexicographic order. Stops after `limit` towers if given.
pub fn find_towers(
    p: &SimplicialPolytope,
    limit: Option<usize>,
) -> Result<Vec<UniversalTower>> {
    if !p.dim().is_multiple_of(2) || !is_neighbourly(p) {
        return Err(Error::NotNeighbourly);
    }
    let m = p.dim() / 2;
    let mut out = Vec::new();
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
    extend_tower(p, m, &mut pairs, limit, &mut out)?;
    Ok(out)
}

fn extend_tower(
    p: &SimplicialPolytope,
    m: usize,
    pairs: &mut Vec<(VertexId, VertexId)>,
    limit: Option<usize>,
    out: &mut Vec<UniversalTower>,
) -> Result<()> {
    if let Some(cap) = limit {
        if out.len() >= cap {
            return Ok(());
        }
    }
    if pairs.len() == m {
        out.push(UniversalTower {
            pairs: pairs.clone(),
        });
        return Ok(());
    }
    let used: VertexSet = pairs.iter().flat_map(|&(x, y)| [x, y]).collect();
    let free = p.vertex_set().difference(used);
    let candidates: Vec<VertexId> = free.to_vec();
    for (i, &x) in candidates.iter().enumerate() {
        for &y in &candidates[i + 1..] {
            let phi = used.insert(x).insert(y);
            if !p.contains_face(phi) || !is_universal_face(p, phi)? {
                continue;
            }
            pairs.push((x, y));
            extend_tower(p, m, pairs, limit, out)?;
            pairs.pop();
            if let Some(cap) = limit {
                if out.len() >= cap {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}
