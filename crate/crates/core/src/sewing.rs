//! Sewing a vertex onto a neighbourly polytope through a universal tower.
//!
//! Two constructions of the sewn polytope are kept deliberately separate:
//!
//! * [`sew_bbp_oracle`] reads the definition off directly: keep the
//!   facets the new vertex is beneath, and join the new vertex to every
//!   ridge whose two facets lie on opposite sides.
//! * [`sew`] is the fast recursive route. Quotienting by the sewing edge
//!   turns a `2m`-dimensional sewing into a `(2m-2)`-dimensional one, so
//!   the recursion bottoms out in a polygon, where sewing is just
//!   replacing the sewing edge by two edges through the new vertex. Each
//!   level is then recovered from the one below it:
//!
//!   ```text
//!   facets of (P/Phi_i)+ =
//!     (a) facets of P/Phi_i the level-i sewn vertex is beneath,
//!     (b) [G, x_{i+1}, z_i] for each facet G of (P/Phi_{i+1})+,
//!         pulling G back with the deeper sewn vertex read as y_{i+1}
//!         (exactly the facets through x_{i+1} and z_i), and
//!     (c) [F, y_{i+1}, z_i] for each facet F of P/Phi_{i+1} that
//!         its own sewn vertex is beneath (exactly the facets through
//!         y_{i+1} and z_i but not x_{i+1}).
//!   ```
//!
//! The two routes must produce identical facet sets; the test suites
//! enforce that across the whole corpus.

use crate::error::{Error, Result};
use crate::iso::are_isomorphic;
use crate::neighbourly::{is_universal_face, missing_faces, MissingFace};
use crate::polytope::{QuotientMap, SimplicialPolytope};
use crate::set::{VertexId, VertexSet};
use crate::tower::{classify_all, quotient_tower, validate_tower, Side, UniversalTower};

/// Operation counters for one sewing run: `facets_touched` counts every
/// facet scanned or emitted across all levels, the quantity expected to
/// grow linearly in the input facet count at fixed dimension.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SewStats {
    pub facets_touched: u64,
}

/// One quotient level of the recursion: the polytope `P/Phi_i`, its map
/// back to base ids, the corresponding tower, the beneath/beyond
/// classification of its facets, and (once run) the facets of its sewn
/// polytope. The sewn vertex of level `i` takes the level's next free id.
pub(crate) struct Level {
    pub(crate) polytope: SimplicialPolytope,
    pub(crate) map: QuotientMap,
    pub(crate) tower: UniversalTower,
    pub(crate) sides: Vec<Side>,
    /// Level ids to parent-level ids (empty at level 0).
    pub(crate) to_parent: Vec<VertexId>,
    pub(crate) sewn_facets: Vec<VertexSet>,
}

impl Level {
    pub(crate) fn sewn_vertex(&self) -> VertexId {
        VertexId::new_unchecked(self.polytope.vertex_count())
    }

    /// First tower pair of this level: the sewing edge one level down.
    pub(crate) fn sewing_pair(&self) -> (VertexId, VertexId) {
        self.tower.pair(1)
    }

    /// Maps this level's ids up to the parent level; this level's sewn
    /// vertex, when present, is substituted by `sewn_as` (a vertex of the
    /// parent's sewing pair).
    pub(crate) fn lift_to_parent(&self, set: VertexSet, sewn_as: VertexId) -> VertexSet {
        let z = self.sewn_vertex();
        set.iter()
            .map(|v| if v == z { sewn_as } else { self.to_parent[v.index()] })
            .collect()
    }
}

/// Working state of the recursive sewing: the chain of quotients
/// `P/Phi_0, .., P/Phi_{m-1}` with their towers, classifications and
/// per-level sewn facet lists.
pub struct SewingLevels {
    levels: Vec<Level>,
    stats: SewStats,
}

impl SewingLevels {
    /// Builds the quotient chain, validating the tower/polytope pairing
    /// and the vertex-count guard (`n >= 2m + 3`).
    pub fn build(p: &SimplicialPolytope, t: &UniversalTower) -> Result<SewingLevels> {
        check_sewable(p, t)?;
        let m = t.levels();
        let mut levels: Vec<Level> = Vec::with_capacity(m);
        levels.push(Level {
            polytope: p.clone(),
            map: QuotientMap::identity(p.vertex_count()),
            tower: t.clone(),
            sides: classify_all(p, t).into_iter().map(|c| c.side).collect(),
            to_parent: Vec::new(),
            sewn_facets: Vec::new(),
        });
        for i in 1..m {
            let (q, map, tq) = quotient_tower(p, t, i);
            debug_assert_eq!(q.dim(), p.dim() - 2 * i);
            let parent = &levels[i - 1];
            let to_parent = (0..q.vertex_count())
                .map(|v| {
                    let base = map.to_base(VertexId::new_unchecked(v));
                    parent
                        .map
                        .from_base(base)
                        .expect("deeper quotient vertices survive shallower quotients")
                })
                .collect();
            let sides = classify_all(&q, &tq).into_iter().map(|c| c.side).collect();
            levels.push(Level {
                polytope: q,
                map,
                tower: tq,
                sides,
                to_parent,
                sewn_facets: Vec::new(),
            });
        }
        Ok(SewingLevels {
            levels,
            stats: SewStats::default(),
        })
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn level_polytope(&self, i: usize) -> &SimplicialPolytope {
        &self.levels[i].polytope
    }

    pub fn sewn_facets(&self, i: usize) -> &[VertexSet] {
        &self.levels[i].sewn_facets
    }

    pub fn stats(&self) -> SewStats {
        self.stats
    }

    pub(crate) fn level(&self, i: usize) -> &Level {
        &self.levels[i]
    }

    /// Runs the recursion, deepest level first, filling every level's
    /// sewn facet list.
    pub fn run(&mut self) {
        let m = self.levels.len();
        self.sew_polygon(m - 1);
        for i in (0..m - 1).rev() {
            self.sew_level(i);
        }
    }

    /// Base case: the deepest quotient is a polygon and its sewing edge
    /// is the last tower pair. The sewn polygon keeps every other edge
    /// and routes the sewing edge through the new vertex.
    fn sew_polygon(&mut self, i: usize) {
        let level = &self.levels[i];
        debug_assert_eq!(level.polytope.dim(), 2);
        let (x, y) = level.sewing_pair();
        let z = level.sewn_vertex();
        let mut sewn: Vec<VertexSet> = Vec::with_capacity(level.polytope.facet_count() + 1);
        let mut touched = 0;
        for (idx, edge) in level.polytope.facets().iter().enumerate() {
            touched += 1;
            if level.sides[idx] == Side::Beneath {
                sewn.push(*edge);
            }
        }
        sewn.push(VertexSet::singleton(x).insert(z));
        sewn.push(VertexSet::singleton(y).insert(z));
        touched += 2;
        sewn.sort();
        self.stats.facets_touched += touched;
        self.levels[i].sewn_facets = sewn;
    }

    fn sew_level(&mut self, i: usize) {
        let (x, y) = self.levels[i].sewing_pair();
        let z = self.levels[i].sewn_vertex();
        let mut sewn: Vec<VertexSet> = Vec::new();
        let mut touched = 0;

        // (a) beneath facets survive.
        for (idx, facet) in self.levels[i].polytope.facets().iter().enumerate() {
            touched += 1;
            if self.levels[i].sides[idx] == Side::Beneath {
                sewn.push(*facet);
            }
        }

        let child = &self.levels[i + 1];

        // (b) every facet of the deeper sewn polytope, pulled back with
        // its sewn vertex read as y, then joined with x and z.
        for facet in &child.sewn_facets {
            touched += 1;
            sewn.push(child.lift_to_parent(*facet, y).insert(x).insert(z));
        }

        // (c) beneath facets of the deeper quotient, joined with y and z.
        for (idx, facet) in child.polytope.facets().iter().enumerate() {
            touched += 1;
            if child.sides[idx] == Side::Beneath {
                sewn.push(child.lift_to_parent(*facet, y).insert(y).insert(z));
            }
        }

        sewn.sort();
        debug_assert!(sewn.windows(2).all(|w| w[0] != w[1]));
        self.stats.facets_touched += touched;
        self.levels[i].sewn_facets = sewn;
    }

    fn assemble(&self, p: &SimplicialPolytope, new_label: &str) -> Result<SimplicialPolytope> {
        let mut labels = p.labels().to_vec();
        labels.push(new_label.to_string());
        SimplicialPolytope::new(p.dim(), labels, self.levels[0].sewn_facets.clone())
    }
}

/// Sews a new vertex onto `p` through `t` by the recursive construction.
/// The new vertex takes id `n` and the given label; the result is fully
/// re-validated.
pub fn sew(
    p: &SimplicialPolytope,
    t: &UniversalTower,
    new_label: &str,
) -> Result<SimplicialPolytope> {
    sew_with_stats(p, t, new_label).map(|(q, _)| q)
}

/// [`sew`] plus operation counters, for the performance harness.
pub fn sew_with_stats(
    p: &SimplicialPolytope,
    t: &UniversalTower,
    new_label: &str,
) -> Result<(SimplicialPolytope, SewStats)> {
    let mut levels = SewingLevels::build(p, t)?;
    levels.run();
    let sewn = levels.assemble(p, new_label)?;
    Ok((sewn, levels.stats()))
}

/// Direct construction of the sewn polytope from the beyond--beneath
/// classification: beneath facets survive, and every ridge lying in one
/// beneath and one beyond facet is joined with the new vertex.
pub fn sew_bbp_oracle(
    p: &SimplicialPolytope,
    t: &UniversalTower,
    new_label: &str,
) -> Result<SimplicialPolytope> {
    check_sewable(p, t)?;
    let xbar = VertexId::new(p.vertex_count())?;
    let sides: Vec<Side> = classify_all(p, t).into_iter().map(|c| c.side).collect();
    let mut facets: Vec<VertexSet> = p
        .facets()
        .iter()
        .enumerate()
        .filter(|(idx, _)| sides[*idx] == Side::Beneath)
        .map(|(_, f)| *f)
        .collect();
    for ridge in p.ridges() {
        let (a, b) = ridge.facets;
        if sides[a] != sides[b] {
            facets.push(ridge.vertices.insert(xbar));
        }
    }
    let mut labels = p.labels().to_vec();
    labels.push(new_label.to_string());
    SimplicialPolytope::new(p.dim(), labels, facets)
}

/// Missing faces of the sewn polytope, produced without constructing it:
/// for each `j` in range,
/// * `{x_1, y_1, .., x_{2j-1}, y_{2j-1}} ∪ A` with `A` a missing face
///   relative to `Phi_{2j}`, and
/// * `{x_2, y_2, .., x_{2j}, y_{2j}} ∪ A ∪ {xbar}` with `A` a missing
///   face relative to `Phi_{2j+1}`,
///
/// with the conventions `Phi_0 = {}`, `Phi_{m+1} = P` and the missing
/// faces relative to `P` itself being `{{}}`.
pub fn sewn_missing_faces(
    p: &SimplicialPolytope,
    t: &UniversalTower,
) -> Result<Vec<MissingFace>> {
    check_sewable(p, t)?;
    let m = t.levels();
    if m < 2 {
        return Err(Error::BadDimension {
            dim: p.dim(),
            need: "the sewn missing-face formula needs dimension at least 4",
        });
    }
    let xbar = VertexId::new(p.vertex_count())?;
    let relative = |j: usize| -> Result<Vec<VertexSet>> {
        if j <= m {
            Ok(missing_faces(p, t.phi(j))?
                .into_iter()
                .map(|mf| mf.members)
                .collect())
        } else {
            // Phi_{m+1} = P: the empty set is the single missing face.
            Ok(vec![VertexSet::EMPTY])
        }
    };

    let mut out: Vec<VertexSet> = Vec::new();
    let mut j = 0;
    while 2 * j <= m + 1 {
        let prefix: VertexSet = (1..=j)
            .flat_map(|i| {
                let (x, y) = t.pair(2 * i - 1);
                [x, y]
            })
            .collect();
        for a in relative(2 * j)? {
            out.push(prefix.union(a));
        }
        j += 1;
    }
    let mut j = 0;
    while 2 * j <= m {
        let prefix: VertexSet = (1..=j)
            .flat_map(|i| {
                let (x, y) = t.pair(2 * i);
                [x, y]
            })
            .collect();
        for a in relative(2 * j + 1)? {
            out.push(prefix.union(a).insert(xbar));
        }
        j += 1;
    }
    out.sort();
    out.dedup();
    Ok(out
        .into_iter()
        .map(|members| MissingFace {
            members,
            relative_to: VertexSet::EMPTY,
        })
        .collect())
}

/// Checks the quotient-commutation isomorphism at level `i`: sewing the
/// quotient `P/Phi_i` through the quotient tower gives the same polytope
/// as quotienting the sewn `P+` by `[Phi_{i-1}, x_i, xbar]`, under the
/// explicit bijection that fixes surviving vertices and sends the
/// quotient's sewn vertex to `y_i`.
///
/// At `i = m` both sides would be 0-dimensional; the directly checkable
/// consequence is asserted instead: `[Phi_{m-1}, x_m, xbar]` is a
/// universal face of `P+`.
pub fn verify_main_theorem(
    p: &SimplicialPolytope,
    t: &UniversalTower,
    i: usize,
) -> Result<bool> {
    let m = t.levels();
    if i < 1 || i > m {
        return Err(Error::BadParameters(format!(
            "level {i} out of range 1..={m}"
        )));
    }
    let p_plus = sew(p, t, &fresh_label(p.labels(), "s"))?;
    let xbar = VertexId::new_unchecked(p.vertex_count());
    let (x_i, y_i) = t.pair(i);

    if i == m {
        let u = t.phi(m - 1).insert(x_i).insert(xbar);
        return Ok(p_plus.is_face(u)? && is_universal_face(&p_plus, u)?);
    }

    let (q, qmap, tq) = quotient_tower(p, t, i);
    let left = sew(&q, &tq, &fresh_label(q.labels(), "s"))?;
    let right_face = t.phi(i - 1).insert(x_i).insert(xbar);
    let (right, rmap) = p_plus.quotient(right_face)?;
    if left.vertex_count() != right.vertex_count() {
        return Ok(false);
    }
    let ybar = VertexId::new_unchecked(q.vertex_count());
    let mut mapping = Vec::with_capacity(left.vertex_count());
    for v in 0..left.vertex_count() {
        let v = VertexId::new_unchecked(v);
        let base = if v == ybar { y_i } else { qmap.to_base(v) };
        match rmap.from_base(base) {
            Some(w) => mapping.push(w),
            None => return Ok(false),
        }
    }
    Ok(are_isomorphic(&left, &right, Some(&mapping))?.is_some())
}

/// Per-clause outcome of the tower-survival checks on the sewn polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeftoverCheck {
    /// 1: even prefixes stay universal; 2: odd prefixes stay faces but
    /// lose universality; 3: `[Phi_{j-1}, x_j, xbar]` is universal.
    pub clause: u8,
    pub level: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftoverReport {
    pub checks: Vec<LeftoverCheck>,
}

impl LeftoverReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Verifies, on the sewn polytope, how the tower prefixes survive:
/// even-level prefixes remain universal; odd-level prefixes do not (and
/// remain faces when below the top level, where face status is left
/// unasserted); and each `[Phi_{j-1}, x_j, xbar]` is universal.
pub fn verify_tower_leftovers(
    p: &SimplicialPolytope,
    t: &UniversalTower,
) -> Result<LeftoverReport> {
    let m = t.levels();
    if m < 2 {
        return Err(Error::BadDimension {
            dim: p.dim(),
            need: "leftover checks need dimension at least 4",
        });
    }
    let p_plus = sew(p, t, &fresh_label(p.labels(), "s"))?;
    let xbar = VertexId::new_unchecked(p.vertex_count());
    let universal_in_plus = |u: VertexSet| -> Result<(bool, bool)> {
        let face = p_plus.is_face(u)?;
        let universal = face && is_universal_face(&p_plus, u)?;
        Ok((face, universal))
    };

    let mut checks = Vec::new();
    for j in 1..=m {
        let (face, universal) = universal_in_plus(t.phi(j))?;
        if j % 2 == 0 {
            checks.push(LeftoverCheck {
                clause: 1,
                level: j,
                passed: universal,
            });
        } else {
            let passed = if j < m { face && !universal } else { !universal };
            checks.push(LeftoverCheck {
                clause: 2,
                level: j,
                passed,
            });
        }
        let (x_j, _) = t.pair(j);
        let (_, universal) = universal_in_plus(t.phi(j - 1).insert(x_j).insert(xbar))?;
        checks.push(LeftoverCheck {
            clause: 3,
            level: j,
            passed: universal,
        });
    }
    Ok(LeftoverReport { checks })
}

/// Cheap structural checks binding a tower to the polytope about to be
/// sewn; full universality was certified when the tower was built and is
/// re-verified here in debug builds only, keeping the hot path linear.
fn check_sewable(p: &SimplicialPolytope, t: &UniversalTower) -> Result<()> {
    let d = p.dim();
    let n = p.vertex_count();
    let invalid = |source: Error| Error::InvalidTower {
        source: Box::new(source),
    };
    if !d.is_multiple_of(2) {
        return Err(invalid(Error::BadDimension {
            dim: d,
            need: "sewing needs an even-dimensional polytope",
        }));
    }
    let m = d / 2;
    if t.levels() != m {
        return Err(invalid(Error::WrongLength {
            got: t.levels(),
            expected: m,
        }));
    }
    if n < 2 * m + 3 {
        return Err(Error::TooFewVertices { n, need: 2 * m + 3 });
    }
    if n + 1 > VertexId::CAPACITY {
        return Err(Error::TooManyVertices { n: n + 1 });
    }
    let vertices = t.vertex_set();
    if vertices.len() != 2 * m {
        return Err(invalid(Error::DuplicateVertex {
            id: vertices.min().expect("nonempty"),
        }));
    }
    if !vertices.is_subset_of(p.vertex_set()) {
        let id = vertices.difference(p.vertex_set()).min().expect("nonempty");
        return Err(invalid(Error::UnknownVertex { id: id.index(), n }));
    }
    for j in 1..=m {
        if !p.contains_face(t.phi(j)) {
            return Err(invalid(Error::NotUniversalAtLevel {
                level: j,
                face: t.phi(j),
            }));
        }
    }
    debug_assert!(validate_tower(p, t.pairs()).is_ok());
    Ok(())
}

/// Picks a label not already in use, preferring `stem`, then `stem1`,
/// `stem2`, ..
pub fn fresh_label(existing: &[String], stem: &str) -> String {
    if !existing.iter().any(|l| l == stem) {
        return stem.to_string();
    }
    let mut k = 1;
    loop {
        let candidate = format!("{stem}{k}");
        if !existing.iter().any(|l| l == &candidate) {
            return candidate;
        }
        k += 1;
    }
}
