//! Normal-generator systems for the Spanier subgroups of a cover, the
//! splitting and absorption rewrites, nerve-loop lifting, face loops of
//! triangulated disks, and the exactness report for the sequence
//! 1 → thick subgroup → π1(working) → π1(nerve) → 1.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::complex::{bfs_path_within, EdgePath, SimplicialComplex, Simplex, Vertex};
use crate::cover::{CombinatorialCover, Nerve};
use crate::error::{Error, Result};
use crate::group::membership::{membership, Budget, NormalSubgroup, Verdict};
use crate::group::presentation::{edge_path_group, induced_hom, EdgePathGroup, Homomorphism};
use crate::group::word::Word;

/// BFS inside `allowed` from `from` to the nearest vertex of `targets`.
fn bfs_to_set(
    k: &SimplicialComplex,
    allowed: &BTreeSet<Vertex>,
    from: &str,
    targets: &BTreeSet<Vertex>,
) -> Option<EdgePath> {
    if !allowed.contains(from) {
        return None;
    }
    let mut prev: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut seen: BTreeSet<Vertex> = BTreeSet::from([from.to_string()]);
    let mut queue = VecDeque::from([from.to_string()]);
    while let Some(v) = queue.pop_front() {
        if targets.contains(&v) {
            let mut path = vec![v.clone()];
            let mut cur = v;
            while let Some(p) = prev.get(&cur) {
                path.push(p.clone());
                cur = p.clone();
            }
            path.reverse();
            return Some(EdgePath::new(path));
        }
        for n in k.neighbors(&v) {
            if allowed.contains(&n) && seen.insert(n.clone()) {
                prev.insert(n.clone(), v.clone());
                queue.push_back(n);
            }
        }
    }
    None
}

/// Keeps only words that are not provably trivial in the ambient group,
/// so generator lists stay free of silent redundancy on 2-complexes.
fn drop_trivial_words(epg: &EdgePathGroup, words: Vec<Word>) -> Result<Vec<Word>> {
    let trivial = NormalSubgroup::new(
        epg.presentation.clone(),
        Vec::new(),
        "triviality filter".into(),
    )?;
    let budget = Budget::default();
    let mut kept = Vec::new();
    for w in words {
        if w.is_identity() {
            continue;
        }
        if membership(&trivial, &w, &budget)?.verdict != Verdict::In {
            kept.push(w);
        }
    }
    Ok(kept)
}

/// Edge-path presentation of the working subdivision at the cover's
/// basepoint: the ambient group for all Spanier subgroups.
pub fn working_group(cover: &CombinatorialCover) -> Result<EdgePathGroup> {
    edge_path_group(cover.working(), cover.basepoint())
}

/// One loop per non-tree edge of a spanning forest of the full subgraph
/// on the vertices over each component of each element, conjugated by a
/// deterministic access path from the basepoint.
pub fn spanier_generator_loops(cover: &CombinatorialCover) -> Result<Vec<EdgePath>> {
    let working = cover.working();
    let mut loops = Vec::new();
    for name in cover.element_names() {
        for component in cover.intersection_components(&[name.clone()])? {
            let verts: BTreeSet<Vertex> =
                cover.vertices_over_component(&component).into_iter().collect();
            if verts.is_empty() {
                continue;
            }
            // spanning forest by repeated BFS in sorted order; each tree
            // gets its own access path from the basepoint
            let mut unvisited = verts.clone();
            while let Some(root) = unvisited.iter().next().cloned() {
                let access = cover.access_path(&BTreeSet::from([root.clone()]))?;
                let root = access.end().clone();
                let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
                let mut tree_edges: BTreeSet<Simplex> = BTreeSet::new();
                let mut order = vec![root.clone()];
                let mut seen: BTreeSet<Vertex> = BTreeSet::from([root.clone()]);
                let mut queue = VecDeque::from([root.clone()]);
                while let Some(v) = queue.pop_front() {
                    for n in working.neighbors(&v) {
                        if verts.contains(&n) && seen.insert(n.clone()) {
                            parent.insert(n.clone(), v.clone());
                            let mut e = vec![v.clone(), n.clone()];
                            e.sort();
                            tree_edges.insert(e);
                            order.push(n.clone());
                            queue.push_back(n);
                        }
                    }
                }
                for v in &order {
                    unvisited.remove(v);
                }
                let tree_path_to = |v: &Vertex| -> EdgePath {
                    let mut back = vec![v.clone()];
                    let mut cur = v.clone();
                    while cur != root {
                        let p = parent[&cur].clone();
                        back.push(p.clone());
                        cur = p;
                    }
                    back.reverse();
                    EdgePath::new(back)
                };
                for e in working.edges() {
                    if seen.contains(&e[0])
                        && seen.contains(&e[1])
                        && !tree_edges.contains(&e)
                    {
                        let inner = tree_path_to(&e[0])
                            .concat(&EdgePath::new(vec![e[0].clone(), e[1].clone()]))?
                            .concat(&tree_path_to(&e[1]).reverse())?;
                        let l = access
                            .concat(&inner)?
                            .concat(&access.reverse())?
                            .reduced();
                        loops.push(l);
                    }
                }
            }
        }
    }
    Ok(loops)
}

/// The ordinary Spanier subgroup as a normal-generator system in the
/// working edge-path group.
pub fn spanier_generators(
    cover: &CombinatorialCover,
    epg: &EdgePathGroup,
) -> Result<NormalSubgroup> {
    let mut words = Vec::new();
    for l in spanier_generator_loops(cover)? {
        words.push(epg.word_of_loop(&l)?);
    }
    let words = drop_trivial_words(epg, words)?;
    NormalSubgroup::new(epg.presentation.clone(), words, "spanier".into())
}

/// A thick pair generator: out along `access`, across one intersection
/// component via `gamma1` inside `U_S`, back through the other via
/// `gamma2` inside `U_T`, and home again.
#[derive(Debug, Clone)]
pub struct ThickGenerator {
    pub access: EdgePath,
    pub gamma1: EdgePath,
    pub gamma2: EdgePath,
    pub elements: (String, String),
}

impl ThickGenerator {
    pub fn breakpoint_p(&self) -> &Vertex {
        self.gamma1.start()
    }

    pub fn breakpoint_q(&self) -> &Vertex {
        self.gamma1.end()
    }

    /// The generator as a based loop `access · γ1 · γ2 · access⁻¹`.
    pub fn loop_path(&self) -> Result<EdgePath> {
        self.access
            .concat(&self.gamma1)?
            .concat(&self.gamma2)?
            .concat(&self.access.reverse())
    }

    /// Checks the defining invariants against a cover.
    pub fn validate(&self, cover: &CombinatorialCover) -> Result<()> {
        let (s, t) = &self.elements;
        if !cover.path_in_element(s, &self.gamma1)? {
            return Err(Error::Inconsistent(format!("γ1 leaves `{s}`")));
        }
        if !cover.path_in_element(t, &self.gamma2)? {
            return Err(Error::Inconsistent(format!("γ2 leaves `{t}`")));
        }
        for x in [self.breakpoint_p(), self.breakpoint_q()] {
            if !(cover.contains(s, x)? && cover.contains(t, x)?) {
                return Err(Error::Inconsistent(format!(
                    "breakpoint `{x}` escapes the intersection"
                )));
            }
        }
        if self.access.end() != self.breakpoint_p()
            || self.gamma1.end() != self.gamma2.start()
            || self.gamma2.end() != self.breakpoint_p()
        {
            return Err(Error::Inconsistent("breakpoints do not chain".into()));
        }
        Ok(())
    }

    /// Builds the deterministic pair generator for components `d` and
    /// `d_prime` (indices into `intersection_components(&[s, t])`); equal
    /// indices give a degenerate generator with constant halves.
    pub fn between(
        cover: &CombinatorialCover,
        s: &str,
        t: &str,
        d: usize,
        d_prime: usize,
    ) -> Result<ThickGenerator> {
        let comps = cover.intersection_components(&[s.to_string(), t.to_string()])?;
        let pick = |i: usize| -> Result<Vertex> {
            let c = comps
                .get(i)
                .ok_or_else(|| Error::UnknownName(format!("component index {i}")))?;
            cover
                .vertices_over_component(c)
                .into_iter()
                .min()
                .ok_or_else(|| {
                    Error::WorkingLevelTooCoarse(format!(
                        "no working vertex lies over a component of `{s}` ∩ `{t}`; \
                         raise the working level"
                    ))
                })
        };
        let p = pick(d)?;
        let q = pick(d_prime)?;
        let working = cover.working();
        let gamma1 = bfs_path_within(working, &cover.element_vertices(s)?, &p, &q)
            .ok_or_else(|| Error::DisconnectedElement(format!("`{p}` → `{q}` inside `{s}`")))?;
        let gamma2 = bfs_path_within(working, &cover.element_vertices(t)?, &q, &p)
            .ok_or_else(|| Error::DisconnectedElement(format!("`{q}` → `{p}` inside `{t}`")))?;
        let all: BTreeSet<Vertex> = working.vertices().iter().cloned().collect();
        let access = bfs_path_within(working, &all, cover.basepoint(), &p)
            .ok_or_else(|| Error::Disconnected(format!("`{p}` unreachable")))?;
        Ok(ThickGenerator {
            access,
            gamma1,
            gamma2,
            elements: (s.to_string(), t.to_string()),
        })
    }
}

/// The full thick generator system: ordinary loops plus pair generators,
/// with a log of skipped component pairs.
#[derive(Debug, Clone)]
pub struct ThickGeneratorSet {
    pub ordinary: Vec<EdgePath>,
    pub pairs: Vec<ThickGenerator>,
    pub skipped: Vec<String>,
}

pub fn thick_spanier_generator_set(cover: &CombinatorialCover) -> Result<ThickGeneratorSet> {
    let ordinary = spanier_generator_loops(cover)?;
    let mut pairs = Vec::new();
    let mut skipped = Vec::new();
    let names = cover.element_names();
    for (i, s) in names.iter().enumerate() {
        // a component of U_S, as the set of working vertices over it
        let comps_s = cover.intersection_components(std::slice::from_ref(s))?;
        for t in names.iter().skip(i + 1) {
            let comps = cover.intersection_components(&[s.clone(), t.clone()])?;
            if comps.len() < 2 {
                continue;
            }
            let comps_t = cover.intersection_components(std::slice::from_ref(t))?;
            let host = |comps_of_elem: &[BTreeSet<Simplex>], d: &BTreeSet<Simplex>| {
                let rep = d.iter().next().expect("components are nonempty");
                comps_of_elem.iter().position(|c| c.contains(rep))
            };
            for d in 0..comps.len() {
                for d_prime in d + 1..comps.len() {
                    let same_in_s = host(&comps_s, &comps[d]) == host(&comps_s, &comps[d_prime]);
                    let same_in_t = host(&comps_t, &comps[d]) == host(&comps_t, &comps[d_prime]);
                    if !(same_in_s && same_in_t) {
                        skipped.push(format!(
                            "components {d} and {d_prime} of `{s}` ∩ `{t}` are not \
                             co-located in single components of both elements"
                        ));
                        continue;
                    }
                    pairs.push(ThickGenerator::between(cover, s, t, d, d_prime)?);
                }
            }
        }
    }
    Ok(ThickGeneratorSet {
        ordinary,
        pairs,
        skipped,
    })
}

/// The thick Spanier subgroup as a normal-generator system.
pub fn thick_spanier_generators(
    cover: &CombinatorialCover,
    epg: &EdgePathGroup,
) -> Result<NormalSubgroup> {
    let set = thick_spanier_generator_set(cover)?;
    let mut words = Vec::new();
    for l in &set.ordinary {
        words.push(epg.word_of_loop(l)?);
    }
    for g in &set.pairs {
        words.push(epg.word_of_loop(&g.loop_path()?)?);
    }
    let words = drop_trivial_words(epg, words)?;
    NormalSubgroup::new(epg.presentation.clone(), words, "thick".into())
}

/// Splits a thick generator across a path-connected intersection into two
/// ordinary single-element loops whose product is the original word.
pub fn split_thick_generator(
    g: &ThickGenerator,
    cover: &CombinatorialCover,
    epg: &EdgePathGroup,
) -> Result<(Word, Word)> {
    let (s, t) = &g.elements;
    let comps = cover.intersection_components(&[s.clone(), t.clone()])?;
    if comps.len() > 1 {
        return Err(Error::NotSplittable(format!(
            "`{s}` ∩ `{t}` has {} components",
            comps.len()
        )));
    }
    let beta = cover.path_within_intersection(
        &[s.clone(), t.clone()],
        g.breakpoint_p(),
        g.breakpoint_q(),
    )?;
    let g1 = g
        .access
        .concat(&g.gamma1)?
        .concat(&beta.reverse())?
        .concat(&g.access.reverse())?;
    let g2 = g
        .access
        .concat(&beta)?
        .concat(&g.gamma2)?
        .concat(&g.access.reverse())?;
    Ok((epg.word_of_loop(&g1)?, epg.word_of_loop(&g2)?))
}

/// A thick generator of a barycentric refinement re-tagged as an ordinary
/// generator of the coarser cover.
#[derive(Debug, Clone)]
pub struct AbsorbedGenerator {
    pub element: String,
    pub word: Word,
}

/// Absorbs a fine thick generator into a single coarse element: the star
/// of the first breakpoint meets only fine elements whose union fits in
/// one coarse element, so the whole loop `γ1 · γ2` lives there.
pub fn absorb_into_coarser(
    g: &ThickGenerator,
    fine: &CombinatorialCover,
    coarse: &CombinatorialCover,
    epg: &EdgePathGroup,
) -> Result<AbsorbedGenerator> {
    if !fine.is_barycentric_refinement(coarse)? {
        return Err(Error::NotRefinement(
            "absorption needs a barycentric refinement".into(),
        ));
    }
    let carrier = fine.working().carrier(g.breakpoint_p())?.clone();
    let element = fine.absorbing_element(coarse, &carrier)?.ok_or_else(|| {
        Error::Inconsistent(
            "no coarse element absorbs the breakpoint star despite a passing \
             refinement test"
                .into(),
        )
    })?;
    Ok(AbsorbedGenerator {
        element,
        word: epg.word_of_loop(&g.loop_path()?)?,
    })
}

pub(crate) fn require_connected_elements(cover: &CombinatorialCover) -> Result<()> {
    for name in cover.element_names() {
        let comps = cover.intersection_components(std::slice::from_ref(&name))?;
        if comps.len() > 1 {
            return Err(Error::DisconnectedElement(format!(
                "`{name}` has {} path components",
                comps.len()
            )));
        }
    }
    Ok(())
}

/// Lifts an edge loop of the nerve (based at the distinguished element)
/// to a based loop of the working subdivision, walking each nerve edge
/// through a witness region of the corresponding intersection.
pub fn lift_nerve_loop(
    e: &EdgePath,
    cover: &CombinatorialCover,
    nerve: &Nerve,
) -> Result<EdgePath> {
    require_connected_elements(cover)?;
    if e.start() != cover.distinguished() || !e.is_loop() {
        return Err(Error::BasepointMismatch(format!(
            "nerve loop must start and end at `{}`",
            cover.distinguished()
        )));
    }
    if !crate::complex::validate_edge_path(&nerve.complex, e)?.is_ok() {
        return Err(Error::MalformedPath("not an edge path of the nerve".into()));
    }
    let working = cover.working();
    let mut alpha = EdgePath::constant(cover.basepoint().clone());
    let mut current = cover.basepoint().clone();
    for pair in e.vertices.windows(2) {
        let (s, t) = (&pair[0], &pair[1]);
        if s == t {
            continue;
        }
        let inside_s = cover.element_vertices(s)?;
        let overlap: BTreeSet<Vertex> = inside_s
            .intersection(&cover.element_vertices(t)?)
            .cloned()
            .collect();
        if overlap.is_empty() {
            return Err(Error::WorkingLevelTooCoarse(format!(
                "no working vertex lies in `{s}` ∩ `{t}`; raise the working level"
            )));
        }
        let hop = bfs_to_set(working, &inside_s, &current, &overlap).ok_or_else(|| {
            Error::DisconnectedElement(format!("cannot cross `{s}` from `{current}`"))
        })?;
        current = hop.end().clone();
        alpha = alpha.concat(&hop)?;
    }
    let home = bfs_path_within(
        working,
        &cover.element_vertices(cover.distinguished())?,
        &current,
        cover.basepoint(),
    )
    .ok_or_else(|| {
        Error::DisconnectedElement(format!(
            "cannot return to the basepoint inside `{}`",
            cover.distinguished()
        ))
    })?;
    alpha.concat(&home)
}

/// Verifies that a lift maps back to its nerve loop: the canonical image
/// of the lift must equal the loop's word modulo the nerve relators.
pub fn verify_lift(
    e: &EdgePath,
    alpha: &EdgePath,
    h: &Homomorphism,
    epg_working: &EdgePathGroup,
    epg_nerve: &EdgePathGroup,
    budget: &Budget,
) -> Result<Verdict> {
    let lifted_word = h.apply(&epg_working.word_of_loop(alpha)?);
    let target = epg_nerve.word_of_loop(e)?;
    let trivial_in_nerve = NormalSubgroup::new(
        epg_nerve.presentation.clone(),
        Vec::new(),
        "lift verification".into(),
    )?;
    let diff = lifted_word.concat(&target.inverse());
    Ok(membership(&trivial_in_nerve, &diff, budget)?.verdict)
}

/// One Spanier edge loop per 2-simplex of a triangulated disk: the tree
/// path to the triangle's least vertex, once around its boundary, and
/// back. For a disk the count is E − V + 1.
pub fn face_loop_basis(disk: &SimplicialComplex, basepoint: &str) -> Result<Vec<EdgePath>> {
    let epg = edge_path_group(disk, basepoint)?;
    let mut loops = Vec::new();
    for t in disk.triangles() {
        let approach = epg.tree_path(&t[0])?;
        let around = EdgePath::new(vec![
            t[0].clone(),
            t[1].clone(),
            t[2].clone(),
            t[0].clone(),
        ]);
        loops.push(approach.concat(&around)?.concat(&approach.reverse())?);
    }
    Ok(loops)
}

/// Aggregate status of a machine-checked report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportStatus {
    Pass,
    Fail,
    Unknown,
}

/// The three phases of the exactness check for
/// 1 → thick subgroup → π1(working) → π1(nerve) → 1.
#[derive(Debug, Clone)]
pub struct ExactnessReport {
    /// (a) each nerve generator is hit by the image of its lift.
    pub surjectivity: Vec<(String, Verdict)>,
    /// (b) each thick generator maps to a relation of the nerve.
    pub thick_in_kernel: Vec<Verdict>,
    /// (c) each nerve relator lifts into the thick subgroup…
    pub relator_lifts: Vec<Verdict>,
    /// …and each ambient generator returns to itself modulo the thick
    /// subgroup after a round trip through the nerve.
    pub generator_round_trips: Vec<Verdict>,
    pub skipped_pairs: Vec<String>,
    pub status: ReportStatus,
}

pub fn exactness_report(cover: &CombinatorialCover, budget: &Budget) -> Result<ExactnessReport> {
    require_connected_elements(cover)?;
    let epg_w = working_group(cover)?;
    let nerve = cover.build_nerve();
    let epg_n = edge_path_group(&nerve.complex, cover.distinguished())?;
    let canonical = cover.canonical_vertex_map(&nerve)?;
    if !canonical.condition_verified {
        return Err(Error::Inconsistent(
            "canonical map fails its star condition".into(),
        ));
    }
    let h = induced_hom(&canonical.map, &epg_w, &epg_n)?;
    let set = thick_spanier_generator_set(cover)?;
    let thick = thick_spanier_generators(cover, &epg_w)?;
    let trivial_in_nerve =
        NormalSubgroup::new(epg_n.presentation.clone(), Vec::new(), "kernel test".into())?;

    // (a) surjectivity through lifts
    let mut surjectivity = Vec::new();
    for i in 0..epg_n.presentation.generators.len() {
        let e = epg_n.loop_for_generator(i)?;
        let alpha = lift_nerve_loop(&e, cover, &nerve)?;
        let v = verify_lift(&e, &alpha, &h, &epg_w, &epg_n, budget)?;
        surjectivity.push((epg_n.presentation.generators[i].clone(), v));
    }

    // (b) thick generators die in the nerve
    let mut thick_in_kernel = Vec::new();
    for w in &thick.normal_generators {
        let v = membership(&trivial_in_nerve, &h.apply(w), budget)?;
        thick_in_kernel.push(v.verdict);
    }

    // (c) section criterion
    let mut relator_lifts = Vec::new();
    for r in &epg_n.presentation.relators {
        let e = epg_n.loop_for_word(r)?;
        let alpha = lift_nerve_loop(&e, cover, &nerve)?;
        let w = epg_w.word_of_loop(&alpha)?;
        relator_lifts.push(membership(&thick, &w, budget)?.verdict);
    }
    let mut generator_round_trips = Vec::new();
    for i in 0..epg_w.presentation.generators.len() {
        let g = Word::generator(i);
        let image = h.apply(&g);
        let e = epg_n.loop_for_word(&image)?;
        let alpha = lift_nerve_loop(&e, cover, &nerve)?;
        let round = epg_w.word_of_loop(&alpha)?.concat(&g.inverse());
        generator_round_trips.push(membership(&thick, &round, budget)?.verdict);
    }

    let all = surjectivity
        .iter()
        .map(|(_, v)| *v)
        .chain(thick_in_kernel.iter().copied())
        .chain(relator_lifts.iter().copied())
        .chain(generator_round_trips.iter().copied());
    let mut status = ReportStatus::Pass;
    for v in all {
        match v {
            Verdict::In => {}
            Verdict::NotIn => {
                status = ReportStatus::Fail;
                break;
            }
            Verdict::Unknown => status = ReportStatus::Unknown,
        }
    }
    Ok(ExactnessReport {
        surjectivity,
        thick_in_kernel,
        relator_lifts,
        generator_round_trips,
        skipped_pairs: set.skipped,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::group::membership::Budget;

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

    fn fig8() -> SimplicialComplex {
        SimplicialComplex::from_top_simplices(&[
            vec!["a0".into(), "a1".into()],
            vec!["a1".into(), "w".into()],
            vec!["w".into(), "a0".into()],
            vec!["b0".into(), "b1".into()],
            vec!["b1".into(), "w".into()],
            vec!["w".into(), "b0".into()],
        ])
        .unwrap()
    }

    fn disc() -> SimplicialComplex {
        SimplicialComplex::from_top_simplices(&[vec!["t0".into(), "t1".into(), "t2".into()]])
            .unwrap()
    }

    fn arc2() -> CombinatorialCover {
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

    fn fig8_cover() -> CombinatorialCover {
        CombinatorialCover::new(
            fig8(),
            0,
            BTreeMap::from([
                (
                    "A".to_string(),
                    BTreeSet::from(["a0".to_string(), "a1".to_string(), "w".to_string()]),
                ),
                (
                    "B".to_string(),
                    BTreeSet::from(["b0".to_string(), "b1".to_string(), "w".to_string()]),
                ),
            ]),
            "w".into(),
            "A".into(),
        )
        .unwrap()
    }

    #[test]
    fn arc2_has_no_ordinary_generators() {
        let cover = arc2();
        assert!(spanier_generator_loops(&cover).unwrap().is_empty());
    }

    #[test]
    fn star_covers_have_no_ordinary_generators() {
        for (k, x0) in [(d3(), "t0"), (c6(), "v0"), (fig8(), "w")] {
            let cover = CombinatorialCover::star(k, 1, x0.into()).unwrap();
            assert!(spanier_generator_loops(&cover).unwrap().is_empty());
        }
    }

    #[test]
    fn fig8_cover_generates_both_loops() {
        let cover = fig8_cover();
        let epg = working_group(&cover).unwrap();
        let n = spanier_generators(&cover, &epg).unwrap();
        assert_eq!(n.normal_generators.len(), 2);
        // the closure is everything: both free generators are In
        for i in 0..2 {
            let v = membership(&n, &Word::generator(i), &Budget::default()).unwrap();
            assert_eq!(v.verdict, Verdict::In);
        }
    }

    #[test]
    fn arc2_thick_generator_is_the_circle_generator() {
        let cover = arc2();
        let epg = working_group(&cover).unwrap();
        let set = thick_spanier_generator_set(&cover).unwrap();
        assert!(set.ordinary.is_empty());
        assert_eq!(set.pairs.len(), 1);
        let g = &set.pairs[0];
        g.validate(&cover).unwrap();
        let w = epg.word_of_loop(&g.loop_path().unwrap()).unwrap();
        assert_eq!(w.len(), 1, "the pair generator winds once around");
    }

    #[test]
    fn star_d3_has_no_pair_generators() {
        let cover = CombinatorialCover::star(d3(), 1, "t0".into()).unwrap();
        let set = thick_spanier_generator_set(&cover).unwrap();
        assert!(set.pairs.is_empty());
        assert!(set.skipped.is_empty());
    }

    #[test]
    fn arc2_split_refused() {
        let cover = arc2();
        let epg = working_group(&cover).unwrap();
        let set = thick_spanier_generator_set(&cover).unwrap();
        let err = split_thick_generator(&set.pairs[0], &cover, &epg);
        assert!(matches!(err, Err(Error::NotSplittable(_))));
    }

    #[test]
    fn degenerate_split_gives_trivial_halves() {
        let cover = CombinatorialCover::star(d3(), 1, "t0".into()).unwrap();
        let epg = working_group(&cover).unwrap();
        let g = ThickGenerator::between(&cover, "t0", "t1", 0, 0).unwrap();
        let (w1, w2) = split_thick_generator(&g, &cover, &epg).unwrap();
        assert!(w1.is_identity());
        assert!(w2.is_identity());
    }

    #[test]
    fn split_product_recovers_the_word() {
        // single-element cover of C6: the "pair" is degenerate but the
        // splitting identity g = g1·g2 must hold wherever splitting runs
        let k = c6();
        let all: BTreeSet<String> = k.vertices().iter().cloned().collect();
        let cover = CombinatorialCover::new(
            k,
            1,
            BTreeMap::from([("ALL".to_string(), all.clone()), ("ALL2".to_string(), all)]),
            "v0".into(),
            "ALL".into(),
        )
        .unwrap();
        let epg = working_group(&cover).unwrap();
        let g = ThickGenerator::between(&cover, "ALL", "ALL2", 0, 0).unwrap();
        let (w1, w2) = split_thick_generator(&g, &cover, &epg).unwrap();
        let whole = epg.word_of_loop(&g.loop_path().unwrap()).unwrap();
        assert_eq!(w1.concat(&w2), whole);
    }

    #[test]
    fn arc2_generator_absorbs_into_the_trivial_cover() {
        let fine = arc2();
        let k = c6();
        let all: BTreeSet<String> = k.vertices().iter().cloned().collect();
        let coarse = CombinatorialCover::new(
            k,
            1,
            BTreeMap::from([("ALL".to_string(), all)]),
            "v0".into(),
            "ALL".into(),
        )
        .unwrap();
        let epg = working_group(&fine).unwrap();
        let set = thick_spanier_generator_set(&fine).unwrap();
        let absorbed = absorb_into_coarser(&set.pairs[0], &fine, &coarse, &epg).unwrap();
        assert_eq!(absorbed.element, "ALL");
        let original = epg
            .word_of_loop(&set.pairs[0].loop_path().unwrap())
            .unwrap();
        assert_eq!(absorbed.word, original);
    }

    #[test]
    fn lift_star_d3_nerve_generator() {
        let cover = CombinatorialCover::star(d3(), 1, "t0".into()).unwrap();
        let nerve = cover.build_nerve();
        let epg_w = working_group(&cover).unwrap();
        let epg_n = edge_path_group(&nerve.complex, "t0").unwrap();
        let canonical = cover.canonical_vertex_map(&nerve).unwrap();
        let h = induced_hom(&canonical.map, &epg_w, &epg_n).unwrap();
        let e = epg_n.loop_for_generator(0).unwrap();
        let alpha = lift_nerve_loop(&e, &cover, &nerve).unwrap();
        assert!(alpha.is_loop());
        let v = verify_lift(&e, &alpha, &h, &epg_w, &epg_n, &Budget::default()).unwrap();
        assert_eq!(v, Verdict::In);
    }

    #[test]
    fn lift_constant_nerve_loop() {
        let cover = arc2();
        let nerve = cover.build_nerve();
        let e = EdgePath::constant("P".into());
        let alpha = lift_nerve_loop(&e, &cover, &nerve).unwrap();
        assert!(alpha.is_loop());
        assert_eq!(alpha.reduced().vertices, vec!["v0".to_string()]);
    }

    #[test]
    fn lift_arc2_out_and_back() {
        let cover = arc2();
        let nerve = cover.build_nerve();
        let e = EdgePath::new(vec!["P".into(), "Q".into(), "P".into()]);
        let alpha = lift_nerve_loop(&e, &cover, &nerve).unwrap();
        assert!(alpha.is_loop());
        let epg_w = working_group(&cover).unwrap();
        let epg_n = edge_path_group(&nerve.complex, "P").unwrap();
        let canonical = cover.canonical_vertex_map(&nerve).unwrap();
        let h = induced_hom(&canonical.map, &epg_w, &epg_n).unwrap();
        let v = verify_lift(&e, &alpha, &h, &epg_w, &epg_n, &Budget::default()).unwrap();
        assert_eq!(v, Verdict::In);
    }

    #[test]
    fn face_loops_count_on_subdivided_disks() {
        for (level, expected) in [(0u32, 1usize), (1, 6), (2, 36)] {
            let disk = disc().subdivide_times(level);
            let x0 = disk.vertices()[0].clone();
            let loops = face_loop_basis(&disk, &x0).unwrap();
            let (v, e, _) = disk.counts();
            assert_eq!(loops.len(), expected);
            assert_eq!(loops.len(), e - v + 1);
            for l in &loops {
                assert!(l.is_loop());
                assert_eq!(l.start(), &x0);
            }
        }
    }

    #[test]
    fn exactness_passes_on_the_corpus() {
        let budget = Budget::default();
        let covers: Vec<CombinatorialCover> = vec![
            arc2(),
            CombinatorialCover::star(d3(), 1, "t0".into()).unwrap(),
            CombinatorialCover::star(c6(), 1, "v0".into()).unwrap(),
            CombinatorialCover::star(fig8(), 1, "w".into()).unwrap(),
            CombinatorialCover::star(disc().barycentric_subdivide().rebase(), 1, "t0".into())
                .unwrap(),
        ];
        for cover in covers {
            let report = exactness_report(&cover, &budget).unwrap();
            assert_eq!(report.status, ReportStatus::Pass);
        }
    }

    #[test]
    fn spanier_generators_are_in_thick_subgroup() {
        let cover = fig8_cover();
        let epg = working_group(&cover).unwrap();
        let ordinary = spanier_generators(&cover, &epg).unwrap();
        let thick = thick_spanier_generators(&cover, &epg).unwrap();
        for w in &ordinary.normal_generators {
            let v = membership(&thick, w, &Budget::default()).unwrap();
            assert_eq!(v.verdict, Verdict::In);
        }
    }

    #[test]
    fn refinement_monotonicity_arc2_into_all() {
        let fine = arc2();
        let k = c6();
        let all: BTreeSet<String> = k.vertices().iter().cloned().collect();
        let coarse = CombinatorialCover::new(
            k,
            1,
            BTreeMap::from([("ALL".to_string(), all)]),
            "v0".into(),
            "ALL".into(),
        )
        .unwrap();
        assert!(fine.refines(&coarse).unwrap().is_some());
        let epg = working_group(&fine).unwrap();
        let fine_thick = thick_spanier_generators(&fine, &epg).unwrap();
        let coarse_thick = thick_spanier_generators(&coarse, &epg).unwrap();
        assert!(!fine_thick.normal_generators.is_empty());
        for w in &fine_thick.normal_generators {
            let v = membership(&coarse_thick, w, &Budget::default()).unwrap();
            assert_eq!(v.verdict, Verdict::In);
        }
    }
}
