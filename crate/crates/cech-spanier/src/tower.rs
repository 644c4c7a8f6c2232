//! Towers of covers: chains of refinements with verified witnesses,
//! per-level nerve images of loops, kernel probes, shape-injectivity
//! probing, the open-subgroup basis, and the covering-space criterion.

use std::collections::BTreeMap;

use crate::complex::{EdgePath, SimplicialComplex, SimplicialMap};
use crate::cover::{CombinatorialCover, Nerve};
use crate::error::{Error, Result};
use crate::group::covering::build_covering_complex;
use crate::group::membership::{membership, Budget, NormalSubgroup, Verdict};
use crate::group::presentation::{edge_path_group, induced_hom, EdgePathGroup, Homomorphism};
use crate::group::todd_coxeter::todd_coxeter;
use crate::group::word::Word;
use crate::spanier::{spanier_generators, thick_spanier_generators, working_group};

/// How one level was verified to refine the one above it.
#[derive(Debug, Clone)]
pub enum RefinementWitness {
    /// Covers share a base; the map sends each fine element into a coarse
    /// element containing it.
    SameBase { map: BTreeMap<String, String> },
    /// The fine base is an iterated subdivision of the coarse base; the
    /// coarse cover was pushed down `pushes` times before matching.
    ViaSubdivision {
        pushes: u32,
        map: BTreeMap<String, String>,
    },
}

impl RefinementWitness {
    pub fn map(&self) -> &BTreeMap<String, String> {
        match self {
            RefinementWitness::SameBase { map } => map,
            RefinementWitness::ViaSubdivision { map, .. } => map,
        }
    }
}

/// A chain of covers, each refining its predecessor, with verified
/// witnesses. Level 0 is coarsest.
#[derive(Debug, Clone)]
pub struct CoverTower {
    pub levels: Vec<CombinatorialCover>,
    pub witnesses: Vec<RefinementWitness>,
}

/// Re-expresses `coarse` over the base of `fine` by repeated pushes to
/// the subdivided base; the working level of the result is `fine`'s.
fn push_to_common_base(
    coarse: &CombinatorialCover,
    fine: &CombinatorialCover,
) -> Result<(CombinatorialCover, u32)> {
    let mut current = coarse.clone();
    let mut pushes = 0u32;
    while current.base() != fine.base() {
        if pushes >= 8 {
            return Err(Error::NotRefinement(
                "bases do not meet within eight subdivisions".into(),
            ));
        }
        current = current.with_working_level(1)?.subdivide_base()?;
        pushes += 1;
    }
    Ok((current.with_working_level(fine.working_level())?, pushes))
}

fn witness_between(
    fine: &CombinatorialCover,
    coarse: &CombinatorialCover,
) -> Result<RefinementWitness> {
    if fine.base() == coarse.base() {
        let map = fine
            .refines(coarse)?
            .ok_or_else(|| Error::NotRefinement("no containment witness".into()))?;
        return Ok(RefinementWitness::SameBase { map });
    }
    let (pushed, pushes) = push_to_common_base(coarse, fine)?;
    let map = fine
        .refines(&pushed)?
        .ok_or_else(|| Error::NotRefinement("no containment witness after pushing".into()))?;
    if !fine.element_contained_in(fine.distinguished(), &pushed, coarse.distinguished())? {
        return Err(Error::BasepointMismatch(
            "distinguished element does not map coherently".into(),
        ));
    }
    Ok(RefinementWitness::ViaSubdivision { pushes, map })
}

impl CoverTower {
    /// Builds a tower from coarse-to-fine covers, verifying every
    /// consecutive refinement and the basepoint threading.
    pub fn new(levels: Vec<CombinatorialCover>) -> Result<CoverTower> {
        if levels.is_empty() {
            return Err(Error::Input("a tower needs at least one level".into()));
        }
        let mut witnesses = Vec::new();
        for pair in levels.windows(2) {
            let (coarse, fine) = (&pair[0], &pair[1]);
            if fine.basepoint() != coarse.basepoint() {
                return Err(Error::BasepointMismatch(format!(
                    "levels are based at `{}` and `{}`",
                    coarse.basepoint(),
                    fine.basepoint()
                )));
            }
            let w = witness_between(fine, coarse)?;
            if fine.base() == coarse.base()
                && !fine.element_contained_in(
                    fine.distinguished(),
                    coarse,
                    coarse.distinguished(),
                )?
            {
                return Err(Error::BasepointMismatch(
                    "distinguished element does not map coherently".into(),
                ));
            }
            witnesses.push(w);
        }
        Ok(CoverTower { levels, witnesses })
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// The deepest working subdivision; loops handed to tower probes live
    /// here.
    pub fn deep_working(&self) -> &SimplicialComplex {
        self.levels.last().expect("nonempty").working()
    }

    /// The deep working complex re-derived from level `k`'s base, so its
    /// carriers classify vertices relative to that level's cover.
    pub fn working_at(&self, k: usize) -> Result<SimplicialComplex> {
        let base = self.levels[k].base();
        let deep = self.deep_working();
        let mut current = base.clone();
        for _ in 0..=8 {
            if current.vertices() == deep.vertices() && {
                let a: Vec<_> = current.sorted_simplices();
                let b: Vec<_> = deep.sorted_simplices();
                a == b
            } {
                return Ok(current);
            }
            current = current.barycentric_subdivide();
        }
        Err(Error::Inconsistent(format!(
            "level {k} base does not subdivide onto the deep working complex"
        )))
    }

    /// Level `k`'s cover with its working level raised so that its
    /// working complex is the tower's deep one.
    pub fn raised(&self, k: usize) -> Result<CombinatorialCover> {
        let cover = &self.levels[k];
        let deep = self.deep_working();
        for extra in 0..=8u32 {
            let cand = cover.with_working_level(cover.working_level() + extra)?;
            if cand.working().vertices() == deep.vertices() {
                return Ok(cand);
            }
        }
        Err(Error::Inconsistent(format!(
            "level {k} cannot be raised to the deep working complex"
        )))
    }

    /// Simplicial projection between the nerves of level `fine_idx` and
    /// the coarser level `coarse_idx`, sending the distinguished element
    /// coherently.
    pub fn nerve_projection(
        &self,
        fine_idx: usize,
        coarse_idx: usize,
        fine_nerve: &Nerve,
        coarse_nerve: &Nerve,
    ) -> Result<SimplicialMap> {
        let (fine, coarse) = (&self.levels[fine_idx], &self.levels[coarse_idx]);
        let (pushed, _) = push_to_common_base(coarse, fine)?;
        let map = fine
            .refines(&pushed)?
            .ok_or_else(|| Error::NotRefinement("no containment witness".into()))?;
        let mut assignment: BTreeMap<String, String> = map;
        if !fine.element_contained_in(fine.distinguished(), &pushed, coarse.distinguished())? {
            return Err(Error::BasepointMismatch(
                "distinguished element does not map coherently".into(),
            ));
        }
        assignment.insert(
            fine.distinguished().to_string(),
            coarse.distinguished().to_string(),
        );
        SimplicialMap::new(
            fine_nerve.complex.clone(),
            coarse_nerve.complex.clone(),
            assignment,
        )
    }
}

/// A star tower over `k`: level `j` is the cover of `sd^j k` by vertex
/// stars, evaluated one subdivision deeper.
pub fn build_star_tower(
    k: &SimplicialComplex,
    depth: usize,
    basepoint: &str,
) -> Result<CoverTower> {
    if !k.is_connected() {
        return Err(Error::Disconnected("tower base must be connected".into()));
    }
    let mut levels = Vec::new();
    let mut base = k.rebase();
    for _ in 0..=depth {
        levels.push(CombinatorialCover::star(
            base.clone(),
            1,
            basepoint.to_string(),
        )?);
        base = base.barycentric_subdivide().rebase();
    }
    CoverTower::new(levels)
}

/// Per-level data for the image of a loop in the inverse system of nerve
/// groups.
#[derive(Debug, Clone)]
pub struct PsiImage {
    /// The image word in each level's nerve group.
    pub words: Vec<Word>,
    /// Rendered with each level's generator names.
    pub rendered: Vec<String>,
    /// For each consecutive pair: the projected deeper image agrees with
    /// the shallower one modulo nerve relators.
    pub coherence: Vec<Verdict>,
}

fn level_nerve_data(
    tower: &CoverTower,
    k: usize,
) -> Result<(Nerve, EdgePathGroup, Homomorphism)> {
    let cover = &tower.levels[k];
    let nerve = cover.build_nerve();
    let epg_n = edge_path_group(&nerve.complex, cover.distinguished())?;
    let working = tower.working_at(k)?;
    let canonical = cover.canonical_map_on(&working, &nerve)?;
    if !canonical.condition_verified {
        return Err(Error::Inconsistent(
            "canonical map fails its star condition".into(),
        ));
    }
    let epg_w = edge_path_group(&working, cover.basepoint())?;
    let h = induced_hom(&canonical.map, &epg_w, &epg_n)?;
    Ok((nerve, epg_n, h))
}

fn deep_group(tower: &CoverTower) -> Result<EdgePathGroup> {
    edge_path_group(
        tower.deep_working(),
        tower.levels.last().expect("nonempty").basepoint(),
    )
}

/// Images of a deep-working loop at every level, with coherence checks.
pub fn psi_image(l: &EdgePath, tower: &CoverTower, budget: &Budget) -> Result<PsiImage> {
    let epg_deep = deep_group(tower)?;
    let w = epg_deep.word_of_loop(l)?;
    let mut words = Vec::new();
    let mut rendered = Vec::new();
    let mut per_level: Vec<(Nerve, EdgePathGroup, Homomorphism)> = Vec::new();
    for k in 0..tower.levels.len() {
        let data = level_nerve_data(tower, k)?;
        let img = data.2.apply(&w);
        rendered.push(img.to_text(&data.1.presentation.generators));
        words.push(img);
        per_level.push(data);
    }
    let mut coherence = Vec::new();
    for k in 0..tower.levels.len().saturating_sub(1) {
        let proj = tower.nerve_projection(k + 1, k, &per_level[k + 1].0, &per_level[k].0)?;
        let proj_hom = induced_hom(&proj, &per_level[k + 1].1, &per_level[k].1)?;
        let projected = proj_hom.apply(&words[k + 1]);
        let diff = projected.concat(&words[k].inverse());
        let trivial = NormalSubgroup::new(
            per_level[k].1.presentation.clone(),
            Vec::new(),
            "coherence".into(),
        )?;
        coherence.push(membership(&trivial, &diff, budget)?.verdict);
    }
    Ok(PsiImage {
        words,
        rendered,
        coherence,
    })
}

/// Per-level kernel verdicts for a loop: triviality of the nerve image,
/// cross-checked against membership in the level's thick subgroup.
#[derive(Debug, Clone)]
pub struct KerPsiReport {
    pub nerve_trivial: Vec<Verdict>,
    pub in_thick: Vec<Verdict>,
    /// In the kernel at this depth iff every level's image is trivial.
    pub in_kernel_at_depth: Option<bool>,
}

pub fn ker_psi_probe(l: &EdgePath, tower: &CoverTower, budget: &Budget) -> Result<KerPsiReport> {
    let epg_deep = deep_group(tower)?;
    let w = epg_deep.word_of_loop(l)?;
    let mut nerve_trivial = Vec::new();
    let mut in_thick = Vec::new();
    for k in 0..tower.levels.len() {
        let (_, epg_n, h) = level_nerve_data(tower, k)?;
        let img = h.apply(&w);
        let trivial =
            NormalSubgroup::new(epg_n.presentation.clone(), Vec::new(), "kernel".into())?;
        nerve_trivial.push(membership(&trivial, &img, budget)?.verdict);
        let raised = tower.raised(k)?;
        let epg_raised = working_group(&raised)?;
        let thick = thick_spanier_generators(&raised, &epg_raised)?;
        let w_raised = epg_raised.word_of_loop(l)?;
        in_thick.push(membership(&thick, &w_raised, budget)?.verdict);
    }
    let in_kernel_at_depth = if nerve_trivial.iter().any(|v| *v == Verdict::NotIn) {
        Some(false)
    } else if nerve_trivial.iter().all(|v| *v == Verdict::In) {
        Some(true)
    } else {
        None
    };
    Ok(KerPsiReport {
        nerve_trivial,
        in_thick,
        in_kernel_at_depth,
    })
}

/// Enumerates reduced words of the deep group up to `word_cap` letters
/// and reports those that land in every level's thick subgroup: candidate
/// kernel elements. An empty list is injectivity evidence at this scale.
pub fn shape_injectivity_probe(
    tower: &CoverTower,
    word_cap: usize,
    budget: &Budget,
) -> Result<Vec<Word>> {
    let epg_deep = deep_group(tower)?;
    let rank = epg_deep.presentation.rank();
    let mut thicks = Vec::new();
    for k in 0..tower.levels.len() {
        let raised = tower.raised(k)?;
        let epg_raised = working_group(&raised)?;
        thicks.push(thick_spanier_generators(&raised, &epg_raised)?);
    }
    let mut candidates = Vec::new();
    let mut frontier = vec![Word::identity()];
    for _ in 0..word_cap {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..rank {
                for e in [1, -1] {
                    let extended = w.concat(&Word::from_letters(vec![(g, e)]));
                    if extended.len() != w.len() + 1 {
                        continue; // cancellation: not freely reduced
                    }
                    next.push(extended);
                }
            }
        }
        for w in &next {
            let mut everywhere = true;
            for thick in &thicks {
                if membership(thick, w, budget)?.verdict != Verdict::In {
                    everywhere = false;
                    break;
                }
            }
            if everywhere {
                candidates.push(w.clone());
            }
        }
        frontier = next;
    }
    Ok(candidates)
}

/// One entry of the shape-topology neighborhood basis.
#[derive(Debug, Clone)]
pub struct BasisEntry {
    pub level: usize,
    /// "thick" or "spanier".
    pub kind: String,
    pub subgroup: NormalSubgroup,
}

#[derive(Debug, Clone)]
pub struct OpenSubgroupBasis {
    pub entries: Vec<BasisEntry>,
    /// Per consecutive pair that passes the barycentric test: verdicts
    /// that each deeper thick generator lies in the shallower ordinary
    /// subgroup.
    pub nesting: Vec<(usize, Vec<Verdict>)>,
}

pub fn open_subgroup_basis(tower: &CoverTower, budget: &Budget) -> Result<OpenSubgroupBasis> {
    let mut entries = Vec::new();
    for k in 0..tower.levels.len() {
        let cover = &tower.levels[k];
        let epg = working_group(cover)?;
        entries.push(BasisEntry {
            level: k,
            kind: "thick".into(),
            subgroup: thick_spanier_generators(cover, &epg)?,
        });
        entries.push(BasisEntry {
            level: k,
            kind: "spanier".into(),
            subgroup: spanier_generators(cover, &epg)?,
        });
    }
    let mut nesting = Vec::new();
    for k in 0..tower.levels.len().saturating_sub(1) {
        let fine = &tower.levels[k + 1];
        let (pushed, _) = push_to_common_base(&tower.levels[k], fine)?;
        if !fine.is_barycentric_refinement(&pushed)? {
            continue;
        }
        // compare in a shared deep group over the common base
        let raised_fine = tower.raised(k + 1)?;
        let epg = working_group(&raised_fine)?;
        let fine_thick = thick_spanier_generators(&raised_fine, &epg)?;
        let mut raised_pushed = pushed.clone();
        for extra in 0..=8u32 {
            raised_pushed = pushed.with_working_level(pushed.working_level() + extra)?;
            if raised_pushed.working().vertices() == raised_fine.working().vertices() {
                break;
            }
        }
        let coarse_spanier = spanier_generators(&raised_pushed, &epg)?;
        let mut verdicts = Vec::new();
        for w in &fine_thick.normal_generators {
            verdicts.push(membership(&coarse_spanier, w, budget)?.verdict);
        }
        nesting.push((k, verdicts));
    }
    Ok(OpenSubgroupBasis { entries, nesting })
}

/// Result of the open-subgroup (covering-space) criterion.
#[derive(Debug, Clone)]
pub struct OpenSubgroupReport {
    pub verdict: Verdict,
    /// The level whose ordinary Spanier subgroup fits inside H.
    pub level_witness: Option<usize>,
    pub index: Option<usize>,
    pub covering: Option<(SimplicialComplex, SimplicialMap)>,
    pub report: String,
}

/// The simplicial map collapsing `levels`-fold subdivision of `k` back
/// onto `k`, as a composite of single-level collapses.
pub fn collapse_to_base(k: &SimplicialComplex, levels: u32) -> Result<SimplicialMap> {
    let mut maps: Vec<SimplicialMap> = Vec::new();
    let mut current = k.clone();
    for _ in 0..levels {
        maps.push(current.collapse_from_subdivision());
        current = current.barycentric_subdivide();
    }
    let mut composite = match maps.pop() {
        Some(m) => m,
        None => SimplicialMap::identity(k),
    };
    while let Some(m) = maps.pop() {
        composite = composite.compose(&m)?;
    }
    Ok(composite)
}

/// Tests openness of the subgroup generated by `h_gens` (words in the
/// edge-path group of the tower's root base) in the shape topology: finds
/// a level whose ordinary Spanier subgroup is contained in H via the
/// coset action, and realizes the corresponding covering complex.
pub fn is_open_subgroup(
    h_gens: &[Word],
    tower: &CoverTower,
    budget: &Budget,
) -> Result<OpenSubgroupReport> {
    let root = tower.levels[0].base().clone();
    let basepoint = tower.levels[0].basepoint().clone();
    let epg_root = edge_path_group(&root, &basepoint)?;
    let table = todd_coxeter(&epg_root.presentation, h_gens, budget.max_cosets)?;
    if !table.complete {
        return Ok(OpenSubgroupReport {
            verdict: Verdict::Unknown,
            level_witness: None,
            index: None,
            covering: None,
            report: format!(
                "coset enumeration of H did not close within {} cosets",
                budget.max_cosets
            ),
        });
    }
    for k in 0..tower.levels.len() {
        let cover = &tower.levels[k];
        let epg_k = working_group(cover)?;
        let spanier = spanier_generators(cover, &epg_k)?;
        // push the generators down to the root via the collapse maps
        let total = offset_of(&root, cover.working()).ok_or_else(|| {
            Error::Inconsistent(format!(
                "level {k} working complex is not a subdivision of the root"
            ))
        })?;
        let collapse = collapse_to_base(&root, total)?;
        let hom = induced_hom(&collapse, &epg_k, &epg_root)?;
        let images: Vec<Word> = spanier
            .normal_generators
            .iter()
            .map(|w| hom.apply(w))
            .collect();
        if table.normal_closure_in_core(&images)? {
            let index = table.index();
            let covering = build_covering_complex(&epg_root, &table)?;
            return Ok(OpenSubgroupReport {
                verdict: Verdict::In,
                level_witness: Some(k),
                index,
                covering: Some(covering),
                report: format!("level {k} ordinary Spanier subgroup lies in H"),
            });
        }
    }
    Ok(OpenSubgroupReport {
        verdict: Verdict::Unknown,
        level_witness: None,
        index: None,
        covering: None,
        report: "no level's Spanier subgroup verifiably lies in H".into(),
    })
}

/// How many barycentric subdivisions take `base` to a complex with the
/// same vertices as `other`, if any (up to eight).
fn offset_of(base: &SimplicialComplex, other: &SimplicialComplex) -> Option<u32> {
    let mut current = base.clone();
    for i in 0..=8u32 {
        if current.vertices() == other.vertices() {
            return Some(i);
        }
        current = current.barycentric_subdivide();
    }
    None
}
