//! Finite abstract simplicial complexes, barycentric subdivision with
//! carrier tracking, simplicial maps, and edge paths.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// A vertex identifier. Base vertices are plain strings; subdivision
/// vertices get canonical chain-encoded names like `(v0|v1)`.
pub type Vertex = String;

/// A simplex is a sorted, duplicate-free list of vertex identifiers.
pub type Simplex = Vec<Vertex>;

/// Canonical ordering key for simplices: dimension first, then lexicographic.
pub fn simplex_key(s: &[Vertex]) -> (usize, Vec<Vertex>) {
    (s.len(), s.to_vec())
}

/// Canonical name for the barycenter of a simplex. Barycenters of
/// 0-simplices keep the vertex name, so base vertices survive subdivision
/// under the same identifier.
pub fn barycenter_name(s: &[Vertex]) -> Vertex {
    if s.len() == 1 {
        s[0].clone()
    } else {
        format!("({})", s.join("|"))
    }
}

/// A finite abstract simplicial complex, stored fully expanded (all faces).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<Vertex>,
    simplices: BTreeSet<Simplex>,
    level: u32,
    /// For each vertex, the smallest simplex of the level-0 base complex
    /// containing it. Identity singletons at level 0.
    carriers: BTreeMap<Vertex, Simplex>,
}

impl SimplicialComplex {
    /// Builds a base (level 0) complex from a list of top simplices.
    /// Identifiers are restricted so they cannot collide with the
    /// chain-encoded names minted by subdivision.
    pub fn from_top_simplices(top: &[Vec<Vertex>]) -> Result<Self> {
        Self::build(top, true)
    }

    /// Like `from_top_simplices` but accepts arbitrary vertex names; for
    /// internally derived complexes (nerves over subdivided bases, lifted
    /// covers) whose names are already canonical.
    pub fn from_top_simplices_unchecked(top: &[Vec<Vertex>]) -> Result<Self> {
        Self::build(top, false)
    }

    fn build(top: &[Vec<Vertex>], validate_names: bool) -> Result<Self> {
        let mut simplices: BTreeSet<Simplex> = BTreeSet::new();
        for tuple in top {
            if tuple.is_empty() {
                return Err(Error::MalformedSimplex("empty vertex tuple".into()));
            }
            let mut sorted = tuple.clone();
            sorted.sort();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::MalformedSimplex(format!(
                        "vertex `{}` repeated in {:?}",
                        w[0], tuple
                    )));
                }
            }
            if validate_names {
                for v in &sorted {
                    validate_identifier(v)?;
                }
            }
            // Face closure: every nonempty subset.
            for mask in 1u64..(1u64 << sorted.len()) {
                let face: Simplex = sorted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, v)| v.clone())
                    .collect();
                simplices.insert(face);
            }
        }
        let vertices: Vec<Vertex> = simplices
            .iter()
            .filter(|s| s.len() == 1)
            .map(|s| s[0].clone())
            .collect();
        let carriers = vertices
            .iter()
            .map(|v| (v.clone(), vec![v.clone()]))
            .collect();
        Ok(SimplicialComplex {
            vertices,
            simplices,
            level: 0,
            carriers,
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.carriers.contains_key(v)
    }

    pub fn contains_simplex(&self, s: &[Vertex]) -> bool {
        self.simplices.contains(s)
    }

    /// All simplices in canonical order (dimension, then lexicographic).
    pub fn sorted_simplices(&self) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = self.simplices.iter().cloned().collect();
        out.sort_by_key(|s| simplex_key(s));
        out
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    /// 1-simplices in canonical order.
    pub fn edges(&self) -> Vec<Simplex> {
        self.simplices.iter().filter(|s| s.len() == 2).cloned().collect()
    }

    /// 2-simplices in canonical order.
    pub fn triangles(&self) -> Vec<Simplex> {
        self.simplices.iter().filter(|s| s.len() == 3).cloned().collect()
    }

    pub fn dimension(&self) -> usize {
        self.simplices.iter().map(|s| s.len() - 1).max().unwrap_or(0)
    }

    /// (V, E, T) counts of vertices, edges and triangles.
    pub fn counts(&self) -> (usize, usize, usize) {
        let v = self.vertices.len();
        let e = self.simplices.iter().filter(|s| s.len() == 2).count();
        let t = self.simplices.iter().filter(|s| s.len() == 3).count();
        (v, e, t)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().fold(0i64, |acc, s| {
            if s.len() % 2 == 1 {
                acc + 1
            } else {
                acc - 1
            }
        })
    }

    /// The smallest base-complex simplex whose realization contains `v`.
    pub fn carrier(&self, v: &str) -> Result<&Simplex> {
        self.carriers.get(v).ok_or_else(|| Error::Lineage(v.into()))
    }

    /// Carrier of the open simplex spanned by `s`: the join (union) of the
    /// carriers of its vertices.
    pub fn simplex_carrier(&self, s: &[Vertex]) -> Result<Simplex> {
        let mut out: BTreeSet<Vertex> = BTreeSet::new();
        for v in s {
            out.extend(self.carrier(v)?.iter().cloned());
        }
        Ok(out.into_iter().collect())
    }

    /// Truncates to the n-skeleton.
    pub fn skeleton(&self, dim: usize) -> SimplicialComplex {
        let simplices: BTreeSet<Simplex> = self
            .simplices
            .iter()
            .filter(|s| s.len() <= dim + 1)
            .cloned()
            .collect();
        SimplicialComplex {
            vertices: self.vertices.clone(),
            simplices,
            level: self.level,
            carriers: self.carriers.clone(),
        }
    }

    /// Forgets subdivision lineage: the result is a base complex in its own
    /// right, with identity carriers.
    pub fn rebase(&self) -> SimplicialComplex {
        SimplicialComplex {
            vertices: self.vertices.clone(),
            simplices: self.simplices.clone(),
            level: 0,
            carriers: self
                .vertices
                .iter()
                .map(|v| (v.clone(), vec![v.clone()]))
                .collect(),
        }
    }

    /// Barycentric subdivision. Vertices of the result are barycenters of
    /// the simplices of `self`; simplices are chains under strict inclusion.
    /// Carriers compose down to the level-0 base of `self`.
    pub fn barycentric_subdivide(&self) -> SimplicialComplex {
        let ordered = self.sorted_simplices();
        let index: BTreeMap<&Simplex, usize> =
            ordered.iter().enumerate().map(|(i, s)| (s, i)).collect();
        // faces[i] = indices of proper faces of ordered[i]
        let mut faces: Vec<Vec<usize>> = vec![Vec::new(); ordered.len()];
        for (i, s) in ordered.iter().enumerate() {
            if s.len() == 1 {
                continue;
            }
            for mask in 1u64..(1u64 << s.len()) - 1 {
                let face: Simplex = s
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, v)| v.clone())
                    .collect();
                faces[i].push(index[&face]);
            }
        }
        // All nonempty chains sigma_0 < sigma_1 < ... under inclusion.
        let mut chains: Vec<Vec<usize>> = Vec::new();
        let mut ending_at: Vec<Vec<usize>> = vec![Vec::new(); ordered.len()];
        for i in 0..ordered.len() {
            // singleton chain
            chains.push(vec![i]);
            ending_at[i].push(chains.len() - 1);
            let mut extended: Vec<Vec<usize>> = Vec::new();
            for &f in &faces[i] {
                for &c in &ending_at[f] {
                    let mut chain = chains[c].clone();
                    chain.push(i);
                    extended.push(chain);
                }
            }
            for chain in extended {
                chains.push(chain);
                ending_at[i].push(chains.len() - 1);
            }
        }
        let mut simplices: BTreeSet<Simplex> = BTreeSet::new();
        for chain in &chains {
            let mut s: Simplex = chain
                .iter()
                .map(|&i| barycenter_name(&ordered[i]))
                .collect();
            s.sort();
            simplices.insert(s);
        }
        let mut carriers: BTreeMap<Vertex, Simplex> = BTreeMap::new();
        let mut vertices: Vec<Vertex> = Vec::new();
        for s in &ordered {
            let name = barycenter_name(s);
            let carrier = self
                .simplex_carrier(s)
                .expect("vertices of a stored simplex have carriers");
            vertices.push(name.clone());
            carriers.insert(name, carrier);
        }
        vertices.sort();
        SimplicialComplex {
            vertices,
            simplices,
            level: self.level + 1,
            carriers,
        }
    }

    /// The simplicial collapse from the barycentric subdivision back onto
    /// `self`: each barycenter goes to the least vertex of its simplex.
    /// A homotopy inverse of subdivision (every image vertex lies in the
    /// carrier of its source).
    pub fn collapse_from_subdivision(&self) -> SimplicialMap {
        let sd = self.barycentric_subdivide();
        let assignment: BTreeMap<Vertex, Vertex> = self
            .sorted_simplices()
            .iter()
            .map(|s| (barycenter_name(s), s[0].clone()))
            .collect();
        SimplicialMap::new(sd, self.clone(), assignment)
            .expect("collapsing chains lands inside their top simplex")
    }

    /// `n`-fold iterated barycentric subdivision.
    pub fn subdivide_times(&self, n: u32) -> SimplicialComplex {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.barycentric_subdivide();
        }
        out
    }

    /// Checks face closure and carrier bookkeeping exhaustively.
    pub fn validate(&self) -> Result<()> {
        for s in &self.simplices {
            for mask in 1u64..(1u64 << s.len()) {
                let face: Simplex = s
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, v)| v.clone())
                    .collect();
                if !self.simplices.contains(&face) {
                    return Err(Error::Inconsistent(format!(
                        "face {:?} of {:?} missing",
                        face, s
                    )));
                }
            }
        }
        for v in &self.vertices {
            if !self.simplices.contains(&vec![v.clone()]) {
                return Err(Error::Inconsistent(format!("singleton {{{v}}} missing")));
            }
            if !self.carriers.contains_key(v) {
                return Err(Error::Lineage(v.clone()));
            }
        }
        Ok(())
    }

    /// Neighbors of `v` in the 1-skeleton, in sorted order.
    pub fn neighbors(&self, v: &str) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .simplices
            .iter()
            .filter(|s| s.len() == 2 && s.iter().any(|x| x == v))
            .map(|s| {
                if s[0] == v {
                    s[1].clone()
                } else {
                    s[0].clone()
                }
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.vertices.first() else {
            return true;
        };
        let reached = self.bfs_order(start);
        reached.len() == self.vertices.len()
    }

    /// BFS traversal order from `start` over the 1-skeleton, deterministic
    /// via sorted adjacency.
    pub fn bfs_order(&self, start: &str) -> Vec<Vertex> {
        let mut seen: BTreeSet<Vertex> = BTreeSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(start.to_string());
        queue.push_back(start.to_string());
        while let Some(v) = queue.pop_front() {
            order.push(v.clone());
            for n in self.neighbors(&v) {
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        order
    }
}

fn validate_identifier(v: &str) -> Result<()> {
    if v.is_empty() || v.chars().any(|c| "(|)".contains(c) || c.is_whitespace()) {
        return Err(Error::MalformedSimplex(format!(
            "invalid vertex identifier `{v}`"
        )));
    }
    Ok(())
}

/// An edge path: a vertex sequence where each consecutive pair is equal
/// (constant step) or spans a 1-simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePath {
    pub vertices: Vec<Vertex>,
}

impl EdgePath {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        EdgePath { vertices }
    }

    pub fn constant(v: Vertex) -> Self {
        EdgePath { vertices: vec![v] }
    }

    pub fn start(&self) -> &Vertex {
        &self.vertices[0]
    }

    pub fn end(&self) -> &Vertex {
        self.vertices.last().unwrap()
    }

    pub fn is_loop(&self) -> bool {
        self.start() == self.end()
    }

    pub fn reverse(&self) -> EdgePath {
        let mut v = self.vertices.clone();
        v.reverse();
        EdgePath { vertices: v }
    }

    /// Concatenation; endpoints must match.
    pub fn concat(&self, other: &EdgePath) -> Result<EdgePath> {
        if self.end() != other.start() {
            return Err(Error::MalformedPath(format!(
                "cannot concatenate: `{}` != `{}`",
                self.end(),
                other.start()
            )));
        }
        let mut v = self.vertices.clone();
        v.extend(other.vertices.iter().skip(1).cloned());
        Ok(EdgePath { vertices: v })
    }

    /// Removes constant steps and immediate backtracks `x,y,x`.
    pub fn reduced(&self) -> EdgePath {
        let mut v: Vec<Vertex> = Vec::new();
        for x in &self.vertices {
            if v.last() == Some(x) {
                continue;
            }
            if v.len() >= 2 && v[v.len() - 2] == *x {
                v.pop();
                continue;
            }
            v.push(x.clone());
        }
        EdgePath { vertices: v }
    }
}

/// Outcome of edge-path validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathCheck {
    Ok,
    Violation { index: usize, reason: String },
}

impl PathCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, PathCheck::Ok)
    }
}

/// Confirms the adjacency invariant of `p` on `k`; reports the first
/// failing index otherwise. Empty sequences are malformed.
pub fn validate_edge_path(k: &SimplicialComplex, p: &EdgePath) -> Result<PathCheck> {
    if p.vertices.is_empty() {
        return Err(Error::MalformedPath("empty vertex sequence".into()));
    }
    for (i, v) in p.vertices.iter().enumerate() {
        if !k.has_vertex(v) {
            return Ok(PathCheck::Violation {
                index: i,
                reason: format!("unknown vertex `{v}`"),
            });
        }
    }
    for i in 0..p.vertices.len() - 1 {
        let (a, b) = (&p.vertices[i], &p.vertices[i + 1]);
        if a == b {
            continue; // constant step
        }
        let mut edge = vec![a.clone(), b.clone()];
        edge.sort();
        if !k.contains_simplex(&edge) {
            return Ok(PathCheck::Violation {
                index: i,
                reason: format!("no edge {{{a},{b}}}"),
            });
        }
    }
    Ok(PathCheck::Ok)
}

/// BFS shortest path between two vertices inside an allowed vertex set,
/// deterministic via sorted adjacency. `None` if unreachable.
pub fn bfs_path_within(
    k: &SimplicialComplex,
    allowed: &BTreeSet<Vertex>,
    from: &str,
    to: &str,
) -> Option<EdgePath> {
    if !allowed.contains(from) || !allowed.contains(to) {
        return None;
    }
    let mut prev: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(from.to_string());
    queue.push_back(from.to_string());
    while let Some(v) = queue.pop_front() {
        if v == to {
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

/// A simplicial map given by a vertex assignment; the image of every
/// simplex must be a (possibly degenerate) simplex of the target.
#[derive(Debug, Clone)]
pub struct SimplicialMap {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    pub assignment: BTreeMap<Vertex, Vertex>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        assignment: BTreeMap<Vertex, Vertex>,
    ) -> Result<Self> {
        for v in source.vertices() {
            let img = assignment
                .get(v)
                .ok_or_else(|| Error::Inconsistent(format!("vertex `{v}` unassigned")))?;
            if !target.has_vertex(img) {
                return Err(Error::Inconsistent(format!(
                    "image `{img}` of `{v}` is not a target vertex"
                )));
            }
        }
        let map = SimplicialMap {
            source,
            target,
            assignment,
        };
        map.validate()?;
        Ok(map)
    }

    fn validate(&self) -> Result<()> {
        for s in self.source.simplices() {
            let img = self.apply_simplex(s);
            if !self.target.contains_simplex(&img) {
                return Err(Error::Inconsistent(format!(
                    "image {:?} of simplex {:?} is not a target simplex",
                    img, s
                )));
            }
        }
        Ok(())
    }

    pub fn apply_vertex(&self, v: &str) -> &Vertex {
        &self.assignment[v]
    }

    /// Image of a simplex with repeated images collapsed.
    pub fn apply_simplex(&self, s: &[Vertex]) -> Simplex {
        let mut img: Vec<Vertex> = s.iter().map(|v| self.assignment[v].clone()).collect();
        img.sort();
        img.dedup();
        img
    }

    pub fn apply_path(&self, p: &EdgePath) -> EdgePath {
        EdgePath::new(p.vertices.iter().map(|v| self.assignment[v].clone()).collect())
    }

    /// Composition `other ∘ self`.
    pub fn compose(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        let assignment = self
            .assignment
            .iter()
            .map(|(v, w)| (v.clone(), other.assignment[w].clone()))
            .collect();
        SimplicialMap::new(self.source.clone(), other.target.clone(), assignment)
    }

    pub fn identity(k: &SimplicialComplex) -> SimplicialMap {
        SimplicialMap {
            source: k.clone(),
            target: k.clone(),
            assignment: k.vertices().iter().map(|v| (v.clone(), v.clone())).collect(),
        }
    }
}
