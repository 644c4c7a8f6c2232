//! Finitely presented groups from spanning trees, and homomorphisms
//! induced by simplicial maps.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{
    validate_edge_path, EdgePath, SimplicialComplex, SimplicialMap, Simplex, Vertex,
};
use crate::error::{Error, Result};
use crate::group::word::Word;

/// A finite presentation with named generators.
#[derive(Debug, Clone)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    /// Free-form note on where the presentation came from.
    pub provenance: String,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>, provenance: String) -> Result<Self> {
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g >= generators.len() {
                    return Err(Error::MalformedWord(format!(
                        "relator uses undeclared generator index {g}"
                    )));
                }
            }
        }
        Ok(GroupPresentation {
            generators,
            relators,
            provenance,
        })
    }

    pub fn free(generators: Vec<String>, provenance: String) -> Self {
        GroupPresentation {
            generators,
            relators: Vec::new(),
            provenance,
        }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn is_free_presentation(&self) -> bool {
        self.relators.iter().all(|r| r.is_identity())
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        if let Some(g) = w.max_generator() {
            if g >= self.generators.len() {
                return Err(Error::MalformedWord(format!(
                    "word uses undeclared generator index {g}"
                )));
            }
        }
        Ok(())
    }
}

/// The edge-path presentation of the fundamental group of a connected
/// complex: a deterministic BFS spanning tree, one generator per non-tree
/// edge, one relator per 2-simplex.
#[derive(Debug, Clone)]
pub struct EdgePathGroup {
    pub presentation: GroupPresentation,
    pub complex: SimplicialComplex,
    pub basepoint: Vertex,
    /// Tree edges as sorted pairs.
    pub tree_edges: BTreeSet<Simplex>,
    /// Non-tree edges in canonical order; index = generator index.
    pub generator_edges: Vec<Simplex>,
    /// BFS parent of every non-basepoint vertex.
    parent: BTreeMap<Vertex, Vertex>,
}

/// Edge-path presentation of π1(K, basepoint).
pub fn edge_path_group(k: &SimplicialComplex, basepoint: &str) -> Result<EdgePathGroup> {
    if !k.has_vertex(basepoint) {
        return Err(Error::InvalidBasepoint(format!(
            "`{basepoint}` is not a vertex"
        )));
    }
    if !k.is_connected() {
        return Err(Error::Disconnected("edge-path group needs one component".into()));
    }
    let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut seen: BTreeSet<Vertex> = BTreeSet::from([basepoint.to_string()]);
    let mut queue = std::collections::VecDeque::from([basepoint.to_string()]);
    let mut tree_edges: BTreeSet<Simplex> = BTreeSet::new();
    while let Some(v) = queue.pop_front() {
        for n in k.neighbors(&v) {
            if seen.insert(n.clone()) {
                parent.insert(n.clone(), v.clone());
                let mut e = vec![v.clone(), n.clone()];
                e.sort();
                tree_edges.insert(e);
                queue.push_back(n);
            }
        }
    }
    let generator_edges: Vec<Simplex> = k
        .edges()
        .into_iter()
        .filter(|e| !tree_edges.contains(e))
        .collect();
    let generators: Vec<String> = (0..generator_edges.len()).map(|i| format!("x{i}")).collect();
    let mut epg = EdgePathGroup {
        presentation: GroupPresentation::free(generators, format!("edge paths at `{basepoint}`")),
        complex: k.clone(),
        basepoint: basepoint.to_string(),
        tree_edges,
        generator_edges,
        parent,
    };
    let mut relators = Vec::new();
    for t in k.triangles() {
        let (a, b, c) = (&t[0], &t[1], &t[2]);
        let r = epg
            .word_of_step(a, b)
            .concat(&epg.word_of_step(b, c))
            .concat(&epg.word_of_step(c, a));
        if !r.is_identity() {
            relators.push(r);
        }
    }
    epg.presentation.relators = relators;
    Ok(epg)
}

impl EdgePathGroup {
    /// The word contributed by traversing the edge from `a` to `b`
    /// (identity for tree edges and constant steps).
    fn word_of_step(&self, a: &str, b: &str) -> Word {
        if a == b {
            return Word::identity();
        }
        let mut e = vec![a.to_string(), b.to_string()];
        e.sort();
        match self.generator_edges.iter().position(|ge| *ge == e) {
            Some(i) => {
                let sign = if e[0] == a { 1 } else { -1 };
                Word::from_letters(vec![(i, sign)])
            }
            None => Word::identity(),
        }
    }

    /// The element represented by a based edge loop.
    pub fn word_of_loop(&self, p: &EdgePath) -> Result<Word> {
        if !validate_edge_path(&self.complex, p)?.is_ok() {
            return Err(Error::MalformedPath("loop is not an edge path".into()));
        }
        if p.start() != &self.basepoint || !p.is_loop() {
            return Err(Error::BasepointMismatch(format!(
                "loop runs `{}` → `{}`, presentation is based at `{}`",
                p.start(),
                p.end(),
                self.basepoint
            )));
        }
        let mut w = Word::identity();
        for pair in p.vertices.windows(2) {
            w = w.concat(&self.word_of_step(&pair[0], &pair[1]));
        }
        Ok(w)
    }

    /// Tree path from the basepoint to `v`.
    pub fn tree_path(&self, v: &str) -> Result<EdgePath> {
        if !self.complex.has_vertex(v) {
            return Err(Error::Lineage(v.into()));
        }
        let mut back = vec![v.to_string()];
        let mut cur = v.to_string();
        while cur != self.basepoint {
            let p = self.parent[&cur].clone();
            back.push(p.clone());
            cur = p;
        }
        back.reverse();
        Ok(EdgePath::new(back))
    }

    /// The canonical loop representing generator `i`: tree path to one
    /// endpoint, across the edge, tree path back.
    pub fn loop_for_generator(&self, i: usize) -> Result<EdgePath> {
        let e = self
            .generator_edges
            .get(i)
            .ok_or_else(|| Error::UnknownName(format!("generator index {i}")))?;
        let to_u = self.tree_path(&e[0])?;
        let back = self.tree_path(&e[1])?.reverse();
        to_u
            .concat(&EdgePath::new(vec![e[0].clone(), e[1].clone()]))?
            .concat(&back)
    }

    /// A loop realizing an arbitrary word, built from generator loops.
    pub fn loop_for_word(&self, w: &Word) -> Result<EdgePath> {
        let mut p = EdgePath::constant(self.basepoint.clone());
        for &(g, e) in &w.letters {
            let l = self.loop_for_generator(g)?;
            let l = if e == 1 { l } else { l.reverse() };
            p = p.concat(&l)?;
        }
        Ok(p)
    }
}

/// A homomorphism of presented groups given on generators. Relator
/// preservation is recorded separately by the membership oracle.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    pub source: GroupPresentation,
    pub target: GroupPresentation,
    pub images: Vec<Word>,
    /// Per source relator: the oracle's verdict that its image is trivial
    /// in the target ("in", "unknown"); empty until verified.
    pub relator_verdicts: Vec<String>,
}

impl Homomorphism {
    pub fn new(
        source: GroupPresentation,
        target: GroupPresentation,
        images: Vec<Word>,
    ) -> Result<Self> {
        if images.len() != source.generators.len() {
            return Err(Error::Inconsistent(format!(
                "{} images for {} generators",
                images.len(),
                source.generators.len()
            )));
        }
        for w in &images {
            target.check_word(w)?;
        }
        Ok(Homomorphism {
            source,
            target,
            images,
            relator_verdicts: Vec::new(),
        })
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Word::identity();
        for &(g, e) in &w.letters {
            let img = if e == 1 {
                self.images[g].clone()
            } else {
                self.images[g].inverse()
            };
            out = out.concat(&img);
        }
        out
    }

    /// Composition `other ∘ self`.
    pub fn compose(&self, other: &Homomorphism) -> Result<Homomorphism> {
        let images = self.images.iter().map(|w| other.apply(w)).collect();
        Homomorphism::new(self.source.clone(), other.target.clone(), images)
    }

    pub fn identity(p: &GroupPresentation) -> Homomorphism {
        Homomorphism {
            source: p.clone(),
            target: p.clone(),
            images: (0..p.generators.len()).map(Word::generator).collect(),
            relator_verdicts: Vec::new(),
        }
    }
}

/// The homomorphism on edge-path groups induced by a simplicial map: each
/// generator loop is pushed through the map and read off in the target.
pub fn induced_hom(
    f: &SimplicialMap,
    source: &EdgePathGroup,
    target: &EdgePathGroup,
) -> Result<Homomorphism> {
    if f.apply_vertex(&source.basepoint) != &target.basepoint {
        return Err(Error::BasepointMismatch(format!(
            "map sends `{}` to `{}`, target is based at `{}`",
            source.basepoint,
            f.apply_vertex(&source.basepoint),
            target.basepoint
        )));
    }
    let mut images = Vec::new();
    for i in 0..source.presentation.generators.len() {
        let l = source.loop_for_generator(i)?;
        images.push(target.word_of_loop(&f.apply_path(&l))?);
    }
    Homomorphism::new(
        source.presentation.clone(),
        target.presentation.clone(),
        images,
    )
}
