//! Carrying the catalog of odd-dimensional universal faces through a
//! sewing.
//!
//! Re-enumerating universal faces from scratch after every sewing is the
//! expensive part of building long sewing chains. Instead, the sewn
//! polytope's universal `(2j-1)`-faces are assembled per quotient level
//! from three sources, mirroring the facet recursion in [`crate::sewing`]:
//!
//! * (a) *survivors*: a universal face `U` of the unsewn level survives
//!   exactly when the largest tower prefix inside it has even index `i`
//!   and `[U, z, v]` is already in the sewn `(2j+1)`-list, where `z` is
//!   the level's sewn vertex and `v` is the next tower pair's member
//!   outside `U`;
//! * (b) faces through `x` and `z`: `[U*, x, z]` for `U*` in the deeper
//!   sewn level's `(2j-3)`-list, the deeper sewn vertex read as `y`;
//! * (c) faces through `y` and `z` but not `x`: the same with roles
//!   swapped, restricted to `U*` avoiding the deeper sewn vertex.
//!
//! The `(2j-3)`-list is seeded with `{{}}` at `j = 1`, which is what
//! makes `[x, z]` and `[y, z]` the new universal edges. Within a level
//! the lists must be built in descending `j` order because (a) consults
//! the level's own `(2j+1)`-list; that ordering is enforced structurally
//! and violations surface as [`Error::CatalogOrderViolation`].

use crate::error::{Error, Result};
use crate::neighbourly::universal_faces;
use crate::polytope::SimplicialPolytope;
use crate::set::{VertexId, VertexSet};
use crate::sewing::SewingLevels;
use crate::tower::UniversalTower;

/// Sorted lists of universal faces, one per odd dimension `1, 3, ..,
/// 2m-1`. The top list equals the facet list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalCatalog {
    /// `lists[j - 1]` holds the universal `(2j-1)`-faces.
    lists: Vec<Vec<VertexSet>>,
}

impl UniversalCatalog {
    /// Computes the catalog by brute force (the oracle route).
    pub fn brute_force(p: &SimplicialPolytope) -> Result<UniversalCatalog> {
        let d = p.dim();
        if !d.is_multiple_of(2) {
            return Err(Error::BadDimension {
                dim: d,
                need: "universal catalogs live in even dimensions",
            });
        }
        let m = d / 2;
        let mut lists = Vec::with_capacity(m);
        for j in 1..=m {
            if 2 * j - 1 == d - 1 {
                lists.push(p.facets().to_vec());
            } else {
                lists.push(universal_faces(p, 2 * j - 1)?);
            }
        }
        Ok(UniversalCatalog { lists })
    }

    /// Assembles a catalog from per-dimension lists (ascending odd
    /// dimensions, one list per `j = 1..=m`), for callers that computed
    /// the lists themselves.
    pub fn from_parts(p: &SimplicialPolytope, mut lists: Vec<Vec<VertexSet>>) -> UniversalCatalog {
        for list in &mut lists {
            list.sort();
        }
        debug_assert_eq!(lists.len(), p.dim() / 2);
        debug_assert_eq!(lists.last().map(Vec::as_slice), Some(p.facets()));
        UniversalCatalog { lists }
    }

    /// Number of tracked dimensions (`m`).
    pub fn depth(&self) -> usize {
        self.lists.len()
    }

    /// The sorted list of universal `k`-faces, for odd `k` up to `2m-1`.
    pub fn for_dimension(&self, k: usize) -> Option<&[VertexSet]> {
        if k.is_multiple_of(2) {
            return None;
        }
        self.lists.get(k.div_ceil(2) - 1).map(Vec::as_slice)
    }

    /// Tracked odd dimensions, ascending.
    pub fn dimensions(&self) -> impl Iterator<Item = usize> {
        (1..=self.lists.len()).map(|j| 2 * j - 1)
    }

    /// The top list (`(2m-1)`-faces, i.e. the facets).
    pub fn top(&self) -> &[VertexSet] {
        self.lists.last().expect("catalogs are never empty")
    }
}

/// A catalog under construction: lists are filled top dimension first.
pub struct PartialCatalog {
    slots: Vec<Option<Vec<VertexSet>>>,
}

impl PartialCatalog {
    pub fn new(depth: usize) -> PartialCatalog {
        PartialCatalog {
            slots: vec![None; depth],
        }
    }

    pub fn set(&mut self, j: usize, mut list: Vec<VertexSet>) {
        list.sort();
        debug_assert!(list.windows(2).all(|w| w[0] != w[1]));
        self.slots[j - 1] = Some(list);
    }

    pub fn get(&self, j: usize) -> Option<&[VertexSet]> {
        self.slots.get(j - 1).and_then(|s| s.as_deref())
    }

    fn finish(self) -> UniversalCatalog {
        UniversalCatalog {
            lists: self
                .slots
                .into_iter()
                .map(|s| s.expect("all lists built"))
                .collect(),
        }
    }
}

/// Does the universal `(2j-1)`-face `u` of `q` stay universal after
/// sewing a new vertex onto `q` through `t`?
///
/// Requires the sewn polytope's `(2j+1)`-list to be present in
/// `sewn_so_far` (for `2j+1` the top dimension, that list is the sewn
/// facet list); consulting it before it is built is a
/// [`Error::CatalogOrderViolation`].
pub fn survives(
    sewn_so_far: &PartialCatalog,
    q: &SimplicialPolytope,
    t: &UniversalTower,
    u: VertexSet,
) -> Result<bool> {
    debug_assert!(u.len().is_multiple_of(2) && !u.is_empty());
    let j = u.len() / 2;
    let higher = sewn_so_far
        .get(j + 1)
        .ok_or(Error::CatalogOrderViolation {
            needed_dim: 2 * j + 1,
        })?;
    let m = t.levels();
    let mut largest = 0;
    for i in (1..=m).rev() {
        if t.phi(i).is_subset_of(u) {
            largest = i;
            break;
        }
    }
    // |u| < 2m, so largest < m and the next pair exists. At most one of
    // its members lies in u (otherwise `largest` was not maximal), and
    // the roles of x and y are interchangeable, so test with whichever
    // member is outside.
    let (x, y) = t.pair(largest + 1);
    let v = if u.contains(x) { y } else { x };
    debug_assert!(!u.contains(v));
    if !largest.is_multiple_of(2) {
        return Ok(false);
    }
    let z = VertexId::new(q.vertex_count())?;
    Ok(higher.binary_search(&u.insert(z).insert(v)).is_ok())
}

/// Runs the sewing recursion and carries the universal-face catalog
/// along, producing the sewn polytope together with its full catalog.
/// `catalog` must be the catalog of `p`.
pub fn sew_with_tracking(
    p: &SimplicialPolytope,
    t: &UniversalTower,
    catalog: &UniversalCatalog,
    new_label: &str,
) -> Result<(SimplicialPolytope, UniversalCatalog)> {
    let m = t.levels();
    if catalog.depth() != m {
        return Err(Error::BadParameters(format!(
            "catalog tracks {} dimensions, polytope needs {m}",
            catalog.depth()
        )));
    }
    debug_assert_eq!(catalog.top(), p.facets());

    let mut levels = SewingLevels::build(p, t)?;
    levels.run();

    // Universal faces of the unsewn quotients, from the input catalog:
    // U* is universal in P/Phi_i exactly when [U*, Phi_i] is universal
    // in P. unsewn[i][j - 1] lists the (2j-1)-faces in level-i ids.
    let mut unsewn: Vec<Vec<Vec<VertexSet>>> = Vec::with_capacity(m);
    for i in 0..m {
        let level_m = m - i;
        let phi_i = t.phi(i);
        let map = &levels.level(i).map;
        let mut per_dim = Vec::with_capacity(level_m.saturating_sub(1));
        for j in 1..level_m {
            let list: Vec<VertexSet> = catalog
                .for_dimension(2 * (j + i) - 1)
                .expect("input catalog covers all odd dimensions")
                .iter()
                .filter(|u| phi_i.is_subset_of(**u))
                .map(|u| {
                    map.to_quotient(u.difference(phi_i))
                        .expect("universal faces survive tower quotients")
                })
                .collect();
            per_dim.push(list);
        }
        unsewn.push(per_dim);
    }

    // Sewn catalogs, deepest level first; within a level, descending j.
    let mut sewn_catalogs: Vec<PartialCatalog> = Vec::new();
    for i in (0..m).rev() {
        let level = levels.level(i);
        let level_m = m - i;
        let q = &level.polytope;
        let tq = &level.tower;
        let z = level.sewn_vertex();
        let (x, y) = level.sewing_pair();
        let mut partial = PartialCatalog::new(level_m);
        partial.set(level_m, level.sewn_facets.clone());

        for j in (1..level_m).rev() {
            let mut list: Vec<VertexSet> = Vec::new();
            // (a) survivors from the unsewn level.
            for u in &unsewn[i][j - 1] {
                if survives(&partial, q, tq, *u)? {
                    list.push(*u);
                }
            }
            // (b) and (c) from the deeper sewn catalog; U_{-1} = {{}}.
            let child = levels.level(i + 1);
            let child_z = child.sewn_vertex();
            let deeper: Vec<VertexSet> = if j >= 2 {
                sewn_catalogs
                    .last()
                    .expect("deeper level already processed")
                    .get(j - 1)
                    .ok_or(Error::CatalogOrderViolation {
                        needed_dim: 2 * j - 3,
                    })?
                    .to_vec()
            } else {
                vec![VertexSet::EMPTY]
            };
            for u_star in &deeper {
                list.push(child.lift_to_parent(*u_star, y).insert(x).insert(z));
            }
            for u_star in &deeper {
                if !u_star.contains(child_z) {
                    list.push(child.lift_to_parent(*u_star, y).insert(y).insert(z));
                }
            }
            partial.set(j, list);
        }
        sewn_catalogs.push(partial);
    }

    let catalog_out = sewn_catalogs
        .pop()
        .expect("level 0 processed last")
        .finish();
    let mut labels = p.labels().to_vec();
    labels.push(new_label.to_string());
    let sewn = SimplicialPolytope::new(p.dim(), labels, levels.sewn_facets(0).to_vec())?;

    // Every new universal face through the sewn vertex meets the sewing
    // edge, and every catalog entry is a face of the output.
    debug_assert!(catalog_out.lists.iter().flatten().all(|u| {
        let xbar = VertexId::new_unchecked(p.vertex_count());
        (!u.contains(xbar) || !u.is_disjoint(t.phi(1))) && sewn.is_face(*u).unwrap_or(false)
    }));
    Ok((sewn, catalog_out))
}
