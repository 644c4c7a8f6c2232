//! Star-union open covers of a polyhedron, membership via carriers, the
//! nerve with witnesses, canonical maps, projections, and refinement tests.
//!
//! A cover element named `S` is a vertex subset of the base complex and
//! denotes the open set `U_S`, the union of open stars of the vertices of
//! `S`. A vertex `x` of a subdivision lies in `U_S` exactly when its
//! carrier meets `S`, which makes membership and connectivity exact
//! combinatorics.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{
    bfs_path_within, validate_edge_path, EdgePath, SimplicialComplex, SimplicialMap, Simplex,
    Vertex,
};
use crate::error::{Error, Result};

/// An open cover of the polyhedron of `base` by star-unions, together with
/// the working subdivision on which paths are evaluated.
#[derive(Debug, Clone)]
pub struct CombinatorialCover {
    base: SimplicialComplex,
    working_level: u32,
    elements: BTreeMap<String, BTreeSet<Vertex>>,
    basepoint: Vertex,
    distinguished: String,
    working: SimplicialComplex,
}

/// The nerve of a cover: one vertex per element, a simplex per family of
/// elements with a common base simplex, recorded as the witness.
#[derive(Debug, Clone)]
pub struct Nerve {
    pub complex: SimplicialComplex,
    pub witness: BTreeMap<Simplex, Simplex>,
}

/// A canonical vertex map together with the verified star condition.
#[derive(Debug, Clone)]
pub struct CanonicalMap {
    pub map: SimplicialMap,
    /// Whether the preimage of every nerve star lies in the matching
    /// element, checked per working simplex.
    pub condition_verified: bool,
}

impl CombinatorialCover {
    pub fn new(
        base: SimplicialComplex,
        working_level: u32,
        elements: BTreeMap<String, BTreeSet<Vertex>>,
        basepoint: Vertex,
        distinguished: String,
    ) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidCover("no elements".into()));
        }
        for (name, set) in &elements {
            if set.is_empty() {
                return Err(Error::InvalidCover(format!("element `{name}` is empty")));
            }
            for v in set {
                if !base.has_vertex(v) {
                    return Err(Error::InvalidCover(format!(
                        "element `{name}` uses unknown base vertex `{v}`"
                    )));
                }
            }
        }
        for v in base.vertices() {
            if !elements.values().any(|s| s.contains(v)) {
                return Err(Error::InvalidCover(format!(
                    "base vertex `{v}` is uncovered"
                )));
            }
        }
        if !elements.contains_key(&distinguished) {
            return Err(Error::UnknownElement(distinguished));
        }
        let working = base.subdivide_times(working_level);
        let cover = CombinatorialCover {
            base,
            working_level,
            elements,
            basepoint,
            distinguished,
            working,
        };
        if !cover.working.has_vertex(&cover.basepoint) {
            return Err(Error::InvalidBasepoint(format!(
                "`{}` is not a vertex of the working subdivision",
                cover.basepoint
            )));
        }
        if !cover.contains(&cover.distinguished.clone(), &cover.basepoint.clone())? {
            return Err(Error::InvalidBasepoint(format!(
                "basepoint `{}` is not in the distinguished element `{}`",
                cover.basepoint, cover.distinguished
            )));
        }
        Ok(cover)
    }

    /// The cover of `base` by open stars of its vertices: one singleton
    /// element per vertex, named after it.
    pub fn star(base: SimplicialComplex, working_level: u32, basepoint: Vertex) -> Result<Self> {
        let elements = base
            .vertices()
            .iter()
            .map(|v| (v.clone(), BTreeSet::from([v.clone()])))
            .collect();
        // The basepoint of a star cover is a base vertex; its star is the
        // distinguished element.
        let distinguished = basepoint.clone();
        CombinatorialCover::new(base, working_level, elements, basepoint, distinguished)
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn working(&self) -> &SimplicialComplex {
        &self.working
    }

    pub fn working_level(&self) -> u32 {
        self.working_level
    }

    pub fn basepoint(&self) -> &Vertex {
        &self.basepoint
    }

    pub fn distinguished(&self) -> &str {
        &self.distinguished
    }

    pub fn element_names(&self) -> Vec<String> {
        self.elements.keys().cloned().collect()
    }

    pub fn element_set(&self, name: &str) -> Result<&BTreeSet<Vertex>> {
        self.elements
            .get(name)
            .ok_or_else(|| Error::UnknownElement(name.into()))
    }

    /// Same cover with a different working level.
    pub fn with_working_level(&self, working_level: u32) -> Result<Self> {
        CombinatorialCover::new(
            self.base.clone(),
            working_level,
            self.elements.clone(),
            self.basepoint.clone(),
            self.distinguished.clone(),
        )
    }

    /// Re-expresses the same open sets over the subdivided base: an element
    /// set `S` becomes the set of subdivision vertices whose carrier meets
    /// `S`. Requires working_level >= 1 so the working subdivision is kept.
    pub fn subdivide_base(&self) -> Result<Self> {
        if self.working_level == 0 {
            return Err(Error::InvalidCover(
                "cannot push base below the working subdivision".into(),
            ));
        }
        let sub = self.base.barycentric_subdivide();
        let mut elements: BTreeMap<String, BTreeSet<Vertex>> = BTreeMap::new();
        for (name, set) in &self.elements {
            let pushed: BTreeSet<Vertex> = sub
                .vertices()
                .iter()
                .filter(|w| {
                    sub.carrier(w)
                        .map(|c| c.iter().any(|v| set.contains(v)))
                        .unwrap_or(false)
                })
                .cloned()
                .collect();
            elements.insert(name.clone(), pushed);
        }
        CombinatorialCover::new(
            sub.rebase(),
            self.working_level - 1,
            elements,
            self.basepoint.clone(),
            self.distinguished.clone(),
        )
    }

    fn carrier_meets(&self, carrier: &[Vertex], name: &str) -> Result<bool> {
        let set = self.element_set(name)?;
        Ok(carrier.iter().any(|v| set.contains(v)))
    }

    /// Whether working vertex `x` lies in `U_name`.
    pub fn contains(&self, name: &str, x: &str) -> Result<bool> {
        let carrier = self.working.carrier(x)?;
        self.carrier_meets(&carrier.clone(), name)
    }

    /// Membership for a vertex of a deeper subdivision of the base; the
    /// complex must carry carriers relative to this cover's base.
    pub fn contains_on(&self, working: &SimplicialComplex, name: &str, x: &str) -> Result<bool> {
        let carrier = working.carrier(x)?;
        self.carrier_meets(&carrier.clone(), name)
    }

    /// Whether every vertex of `p` lies in `U_name`; `p` must be valid on
    /// the working subdivision.
    pub fn path_in_element(&self, name: &str, p: &EdgePath) -> Result<bool> {
        if !validate_edge_path(&self.working, p)?.is_ok() {
            return Err(Error::MalformedPath(
                "path is not on the working subdivision".into(),
            ));
        }
        for v in &p.vertices {
            if !self.contains(name, v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Working vertices lying in `U_name`.
    pub fn element_vertices(&self, name: &str) -> Result<BTreeSet<Vertex>> {
        let mut out = BTreeSet::new();
        for v in self.working.vertices() {
            if self.contains(name, v)? {
                out.insert(v.clone());
            }
        }
        Ok(out)
    }

    /// Builds the nerve with deterministic lexicographically-least witnesses.
    pub fn build_nerve(&self) -> Nerve {
        let base_simplices = self.base.sorted_simplices();
        let mut tops: Vec<Vec<String>> = Vec::new();
        for sigma in &base_simplices {
            let members: Vec<String> = self
                .elements
                .iter()
                .filter(|(_, set)| sigma.iter().any(|v| set.contains(v)))
                .map(|(name, _)| name.clone())
                .collect();
            if !members.is_empty() {
                tops.push(members);
            }
        }
        let complex = SimplicialComplex::from_top_simplices_unchecked(&tops)
            .expect("nerve members are distinct element names");
        let mut witness = BTreeMap::new();
        for s in complex.sorted_simplices() {
            let w = base_simplices
                .iter()
                .find(|sigma| {
                    s.iter().all(|name| {
                        sigma.iter().any(|v| self.elements[name].contains(v))
                    })
                })
                .expect("every nerve simplex has a witness by construction");
            witness.insert(s.clone(), w.clone());
        }
        Nerve { complex, witness }
    }

    /// The canonical vertex map from the working subdivision to the nerve:
    /// lexicographically least containing element, basepoint forced to the
    /// distinguished element.
    pub fn canonical_vertex_map(&self, nerve: &Nerve) -> Result<CanonicalMap> {
        self.canonical_map_on(&self.working, nerve)
    }

    /// Canonical vertex map evaluated on any subdivision carrying carriers
    /// relative to this cover's base.
    pub fn canonical_map_on(
        &self,
        working: &SimplicialComplex,
        nerve: &Nerve,
    ) -> Result<CanonicalMap> {
        let mut assignment: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        for x in working.vertices() {
            if *x == self.basepoint {
                if !self.contains_on(working, &self.distinguished, x)? {
                    return Err(Error::InvalidBasepoint(format!(
                        "basepoint `{x}` left the distinguished element"
                    )));
                }
                assignment.insert(x.clone(), self.distinguished.clone());
                continue;
            }
            let elem = self
                .elements
                .keys()
                .find(|name| self.contains_on(working, name, x).unwrap_or(false))
                .ok_or_else(|| {
                    Error::InvalidCover(format!("vertex `{x}` is uncovered"))
                })?;
            assignment.insert(x.clone(), elem.clone());
        }
        let map = SimplicialMap::new(working.clone(), nerve.complex.clone(), assignment)?;
        // Star condition: whenever the image of a simplex touches the star
        // of a nerve vertex S, the open simplex lies in U_S.
        let mut condition_verified = true;
        for tau in working.simplices() {
            let img = map.apply_simplex(tau);
            let carrier = working.simplex_carrier(tau)?;
            for s in &img {
                if !self.carrier_meets(&carrier, s)? {
                    condition_verified = false;
                }
            }
        }
        Ok(CanonicalMap {
            map,
            condition_verified,
        })
    }

    /// Whether `U_S ⊆ U_T` for element sets over the same base: every base
    /// simplex meeting `S` meets `T`.
    fn element_contained(&self, s: &BTreeSet<Vertex>, t: &BTreeSet<Vertex>) -> bool {
        self.base.simplices().all(|sigma| {
            !sigma.iter().any(|v| s.contains(v)) || sigma.iter().any(|v| t.contains(v))
        })
    }

    /// Whether `U_{s_name}` of `self` is contained in `U_{t_name}` of
    /// `other`; the covers must share a base.
    pub fn element_contained_in(
        &self,
        s_name: &str,
        other: &CombinatorialCover,
        t_name: &str,
    ) -> Result<bool> {
        if self.base != other.base {
            return Err(Error::NotRefinement("different base complexes".into()));
        }
        Ok(self.element_contained(self.element_set(s_name)?, other.element_set(t_name)?))
    }

    /// Refinement test: every element of `self` contained in some element
    /// of `coarse`, witnessed by the lexicographically least choice.
    pub fn refines(&self, coarse: &CombinatorialCover) -> Result<Option<BTreeMap<String, String>>> {
        if self.base != coarse.base {
            return Err(Error::NotRefinement("different base complexes".into()));
        }
        let mut witness = BTreeMap::new();
        for (name, set) in &self.elements {
            let target = coarse
                .elements
                .iter()
                .find(|(_, t)| self.element_contained(set, t))
                .map(|(n, _)| n.clone());
            match target {
                Some(t) => {
                    witness.insert(name.clone(), t);
                }
                None => return Ok(None),
            }
        }
        Ok(Some(witness))
    }

    /// Barycentric refinement test: for every base simplex, the union of
    /// the elements of `self` meeting it is contained in a single element
    /// of `coarse`. Simplices classify points via carriers.
    pub fn is_barycentric_refinement(&self, coarse: &CombinatorialCover) -> Result<bool> {
        if self.base != coarse.base {
            return Err(Error::NotRefinement("different base complexes".into()));
        }
        for sigma in self.base.simplices() {
            let mut union: BTreeSet<Vertex> = BTreeSet::new();
            for set in self.elements.values() {
                if sigma.iter().any(|v| set.contains(v)) {
                    union.extend(set.iter().cloned());
                }
            }
            if union.is_empty() {
                continue;
            }
            if !coarse
                .elements
                .values()
                .any(|t| self.element_contained(&union, t))
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For a thick generator of `self` with breakpoint carrier `sigma`,
    /// the coarse element absorbing the star of the breakpoint: the least
    /// coarse element containing the union of all elements meeting `sigma`.
    pub fn absorbing_element(
        &self,
        coarse: &CombinatorialCover,
        sigma: &[Vertex],
    ) -> Result<Option<String>> {
        if self.base != coarse.base {
            return Err(Error::NotRefinement("different base complexes".into()));
        }
        let mut union: BTreeSet<Vertex> = BTreeSet::new();
        for set in self.elements.values() {
            if sigma.iter().any(|v| set.contains(v)) {
                union.extend(set.iter().cloned());
            }
        }
        Ok(coarse
            .elements
            .iter()
            .find(|(_, t)| self.element_contained(&union, t))
            .map(|(n, _)| n.clone()))
    }

    /// Path components of the open intersection of the named elements, as
    /// sets of base simplices connected through face incidence.
    pub fn intersection_components(&self, names: &[String]) -> Result<Vec<BTreeSet<Simplex>>> {
        let sets: Vec<&BTreeSet<Vertex>> = names
            .iter()
            .map(|n| self.element_set(n))
            .collect::<Result<_>>()?;
        let nodes: Vec<Simplex> = self
            .base
            .sorted_simplices()
            .into_iter()
            .filter(|sigma| {
                sets.iter()
                    .all(|set| sigma.iter().any(|v| set.contains(v)))
            })
            .collect();
        let mut component: Vec<Option<usize>> = vec![None; nodes.len()];
        let mut components: Vec<BTreeSet<Simplex>> = Vec::new();
        for i in 0..nodes.len() {
            if component[i].is_some() {
                continue;
            }
            let id = components.len();
            let mut stack = vec![i];
            let mut members = BTreeSet::new();
            component[i] = Some(id);
            while let Some(j) = stack.pop() {
                members.insert(nodes[j].clone());
                for (k, other) in nodes.iter().enumerate() {
                    if component[k].is_none() && faces(&nodes[j], other) {
                        component[k] = Some(id);
                        stack.push(k);
                    }
                }
            }
            components.push(members);
        }
        Ok(components)
    }

    /// Working vertices whose carrier lies in the given component (a set of
    /// base simplices).
    pub fn vertices_over_component(&self, component: &BTreeSet<Simplex>) -> Vec<Vertex> {
        self.working
            .vertices()
            .iter()
            .filter(|x| {
                self.working
                    .carrier(x)
                    .map(|c| component.contains(c))
                    .unwrap_or(false)
            })
            .cloned()
            .collect()
    }

    /// Deterministic BFS path between two working vertices inside `U_name`.
    pub fn path_within_element(&self, name: &str, from: &str, to: &str) -> Result<EdgePath> {
        let allowed = self.element_vertices(name)?;
        bfs_path_within(&self.working, &allowed, from, to).ok_or_else(|| {
            Error::DisconnectedElement(format!(
                "no path from `{from}` to `{to}` inside `{name}`"
            ))
        })
    }

    /// Deterministic BFS path between two working vertices inside the
    /// intersection of the named elements.
    pub fn path_within_intersection(
        &self,
        names: &[String],
        from: &str,
        to: &str,
    ) -> Result<EdgePath> {
        let mut allowed: Option<BTreeSet<Vertex>> = None;
        for name in names {
            let set = self.element_vertices(name)?;
            allowed = Some(match allowed {
                None => set,
                Some(prev) => prev.intersection(&set).cloned().collect(),
            });
        }
        let allowed = allowed.unwrap_or_default();
        bfs_path_within(&self.working, &allowed, from, to).ok_or_else(|| {
            Error::NotSplittable(format!(
                "no path from `{from}` to `{to}` inside the intersection of {names:?}"
            ))
        })
    }

    /// BFS path on the full working 1-skeleton from the basepoint to the
    /// first-reached vertex of `targets`.
    pub fn access_path(&self, targets: &BTreeSet<Vertex>) -> Result<EdgePath> {
        let order = self.working.bfs_order(&self.basepoint);
        let hit = order
            .iter()
            .find(|v| targets.contains(*v))
            .ok_or_else(|| Error::Disconnected("target region unreachable".into()))?;
        let all: BTreeSet<Vertex> = self.working.vertices().iter().cloned().collect();
        bfs_path_within(&self.working, &all, &self.basepoint, hit)
            .ok_or_else(|| Error::Disconnected("target region unreachable".into()))
    }
}

fn faces(a: &Simplex, b: &Simplex) -> bool {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small.iter().all(|v| large.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn c6() -> SimplicialComplex {
        SimplicialComplex::from_top_simplices(&[
            vec!["v0".into(), "v1".into()],
            vec!["v1".into(), "v2".into()],
            vec!["v2".into(), "v3".into()],
            vec!["v3".into(), "v4".into()],
            vec!["v4".into(), "v5".into()],
            vec!["v5".into(), "v0".into()],
        ])
        .unwrap()
    }

    fn d3() -> SimplicialComplex {
        SimplicialComplex::from_top_simplices(&[
            vec!["t0".into(), "t1".into()],
            vec!["t1".into(), "t2".into()],
            vec!["t2".into(), "t0".into()],
        ])
        .unwrap()
    }

    fn disc() -> SimplicialComplex {
        SimplicialComplex::from_top_simplices(&[vec!["t0".into(), "t1".into(), "t2".into()]])
            .unwrap()
    }

    pub fn arc2() -> CombinatorialCover {
        CombinatorialCover::new(
            c6(),
            1,
            BTreeMap::from([
                (
                    "P".to_string(),
                    BTreeSet::from(["v0".to_string(), "v1".to_string(), "v2".to_string()]),
                ),
                (
                    "Q".to_string(),
                    BTreeSet::from(["v3".to_string(), "v4".to_string(), "v5".to_string()]),
                ),
            ]),
            "v0".into(),
            "P".into(),
        )
        .unwrap()
    }

    #[test]
    fn arc2_membership() {
        let cover = arc2();
        // the barycenter of [v2,v3] lies in both arcs
        assert!(cover.contains("P", "(v2|v3)").unwrap());
        assert!(cover.contains("Q", "(v2|v3)").unwrap());
        assert!(!cover.contains("P", "v3").unwrap());
        assert!(cover.contains("P", "v0").unwrap());
        assert!(matches!(
            cover.contains("R", "v0"),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn arc2_path_membership() {
        let cover = arc2();
        let p = EdgePath::new(vec![
            "(v0|v5)".into(),
            "v0".into(),
            "(v0|v1)".into(),
            "v1".into(),
            "(v1|v2)".into(),
            "v2".into(),
            "(v2|v3)".into(),
        ]);
        assert!(cover.path_in_element("P", &p).unwrap());
        let q = EdgePath::new(vec!["v2".into(), "(v2|v3)".into(), "v3".into()]);
        assert!(!cover.path_in_element("P", &q).unwrap());
        assert!(cover
            .path_in_element("P", &EdgePath::constant("v0".into()))
            .unwrap());
    }

    #[test]
    fn arc2_nerve_is_an_interval() {
        let nerve = arc2().build_nerve();
        assert_eq!(nerve.complex.counts(), (2, 1, 0));
        assert!(nerve
            .complex
            .contains_simplex(&vec!["P".to_string(), "Q".to_string()]));
        // witness for the edge is the least base simplex meeting both arcs
        assert_eq!(
            nerve.witness[&vec!["P".to_string(), "Q".to_string()]],
            vec!["v0".to_string(), "v5".to_string()]
        );
    }

    #[test]
    fn star_nerve_reproduces_the_complex() {
        for k in [d3(), c6(), disc()] {
            let x0 = k.vertices()[0].clone();
            let cover = CombinatorialCover::star(k.clone(), 0, x0).unwrap();
            let nerve = cover.build_nerve();
            // singleton elements are named after their vertices, so the
            // nerve is literally the same complex
            assert_eq!(nerve.complex.sorted_simplices(), k.sorted_simplices());
        }
    }

    #[test]
    fn canonical_map_on_arc2() {
        let cover = arc2();
        let nerve = cover.build_nerve();
        let canonical = cover.canonical_vertex_map(&nerve).unwrap();
        assert!(canonical.condition_verified);
        assert_eq!(canonical.map.apply_vertex("v1"), "P");
        assert_eq!(canonical.map.apply_vertex("v4"), "Q");
        // lex-least wins on the overlap
        assert_eq!(canonical.map.apply_vertex("(v2|v3)"), "P");
        assert_eq!(canonical.map.apply_vertex("v0"), "P");
    }

    #[test]
    fn single_element_cover_maps_constantly() {
        let k = c6();
        let all: BTreeSet<String> = k.vertices().iter().cloned().collect();
        let cover = CombinatorialCover::new(
            k,
            1,
            BTreeMap::from([("ALL".to_string(), all)]),
            "v0".into(),
            "ALL".into(),
        )
        .unwrap();
        let nerve = cover.build_nerve();
        assert_eq!(nerve.complex.counts(), (1, 0, 0));
        let canonical = cover.canonical_vertex_map(&nerve).unwrap();
        assert!(canonical.condition_verified);
        assert!(cover
            .working()
            .vertices()
            .iter()
            .all(|v| canonical.map.apply_vertex(v) == "ALL"));
    }

    #[test]
    fn arc2_intersection_has_two_components() {
        let comps = arc2()
            .intersection_components(&["P".to_string(), "Q".to_string()])
            .unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps
            .iter()
            .any(|c| c.contains(&vec!["v2".to_string(), "v3".to_string()])));
        assert!(comps
            .iter()
            .any(|c| c.contains(&vec!["v0".to_string(), "v5".to_string()])));
    }

    #[test]
    fn self_intersection_is_one_component() {
        let comps = arc2().intersection_components(&["P".to_string()]).unwrap();
        assert_eq!(comps.len(), 1);
    }

    #[test]
    fn star_pairwise_intersection_single_component() {
        let cover = CombinatorialCover::star(d3(), 0, "t0".into()).unwrap();
        let comps = cover
            .intersection_components(&["t0".to_string(), "t1".to_string()])
            .unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(
            comps[0],
            BTreeSet::from([vec!["t0".to_string(), "t1".to_string()]])
        );
    }

    #[test]
    fn refinement_tests() {
        let cover = arc2();
        let k = c6();
        let all: BTreeSet<String> = k.vertices().iter().cloned().collect();
        let coarse = CombinatorialCover::new(
            k.clone(),
            1,
            BTreeMap::from([("ALL".to_string(), all)]),
            "v0".into(),
            "ALL".into(),
        )
        .unwrap();
        let witness = cover.refines(&coarse).unwrap().unwrap();
        assert_eq!(witness["P"], "ALL");
        assert!(cover.is_barycentric_refinement(&coarse).unwrap());
        // ARC2 does not barycentrically refine itself: around the carrier
        // {v2,v3} both arcs meet, and their union is the whole circle.
        assert!(!cover.is_barycentric_refinement(&cover).unwrap());
        // identity refinement
        assert!(cover.refines(&cover).unwrap().is_some());
        // coarse does not refine fine
        assert!(coarse.refines(&cover).unwrap().is_none());
    }

    #[test]
    fn star_of_subdivision_refines_arc2() {
        let fine = CombinatorialCover::star(c6().barycentric_subdivide().rebase(), 1, "v0".into())
            .unwrap();
        let coarse = arc2().subdivide_base().unwrap().with_working_level(1).unwrap();
        let witness = fine.refines(&coarse).unwrap().unwrap();
        assert_eq!(witness["v1"], "P");
        assert_eq!(witness["(v2|v3)"], "P"); // lex-least of {P,Q}
        assert!(fine.is_barycentric_refinement(&coarse).unwrap());
    }

    #[test]
    fn subdivide_base_preserves_membership() {
        let cover = arc2();
        let pushed = cover.subdivide_base().unwrap();
        assert_eq!(pushed.working_level(), 0);
        // U_P over the subdivided base holds the same working vertices
        for v in cover.working().vertices() {
            assert_eq!(
                cover.contains("P", v).unwrap(),
                pushed.contains("P", v).unwrap(),
                "membership of {v} changed"
            );
        }
    }
}
