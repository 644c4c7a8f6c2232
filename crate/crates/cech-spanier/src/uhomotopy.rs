//! The single-step path relation induced by a cover, decided exactly by
//! dynamic programming over vertex cuts, plus a bounded one-sided search
//! for null-homotopy through elementary moves.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::complex::{validate_edge_path, EdgePath, Vertex};
use crate::cover::CombinatorialCover;
use crate::error::{Error, Result};
use crate::group::membership::{membership, Budget, MembershipVerdict};
use crate::spanier::{require_connected_elements, thick_spanier_generators, working_group};

/// A certificate that two paths admit matching block decompositions
/// through a common element sequence. Block `k` of each path runs from
/// vertex index `cuts[k]` to `cuts[k+1]` inclusive; equal consecutive
/// cuts give a degenerate single-vertex block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UChain {
    pub elements: Vec<String>,
    pub cuts_left: Vec<usize>,
    pub cuts_right: Vec<usize>,
}

impl UChain {
    /// Re-verifies the certificate against the paths and the cover.
    pub fn verify(
        &self,
        alpha: &EdgePath,
        beta: &EdgePath,
        cover: &CombinatorialCover,
    ) -> Result<bool> {
        let n = self.elements.len();
        if self.cuts_left.len() != n + 1 || self.cuts_right.len() != n + 1 {
            return Ok(false);
        }
        for (cuts, path) in [(&self.cuts_left, alpha), (&self.cuts_right, beta)] {
            if cuts[0] != 0 || cuts[n] != path.vertices.len() - 1 {
                return Ok(false);
            }
            if cuts.windows(2).any(|w| w[0] > w[1]) {
                return Ok(false);
            }
            for (k, name) in self.elements.iter().enumerate() {
                for idx in cuts[k]..=cuts[k + 1] {
                    if !cover.contains(name, &path.vertices[idx])? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Decides whether `alpha` and `beta` (same endpoints, both on the
/// working subdivision) are related by a single matching-decomposition
/// step, returning a certificate chain on success.
pub fn step_equivalent(
    alpha: &EdgePath,
    beta: &EdgePath,
    cover: &CombinatorialCover,
) -> Result<Option<UChain>> {
    for p in [alpha, beta] {
        if !validate_edge_path(cover.working(), p)?.is_ok() {
            return Err(Error::MalformedPath(
                "path is not on the working subdivision".into(),
            ));
        }
    }
    if alpha.start() != beta.start() || alpha.end() != beta.end() {
        return Err(Error::BasepointMismatch(format!(
            "endpoints differ: `{}`→`{}` vs `{}`→`{}`",
            alpha.start(),
            alpha.end(),
            beta.start(),
            beta.end()
        )));
    }
    let names = cover.element_names();
    // membership tables per element
    let mut in_elem: BTreeMap<&String, (Vec<bool>, Vec<bool>)> = BTreeMap::new();
    for name in &names {
        let a: Vec<bool> = alpha
            .vertices
            .iter()
            .map(|v| cover.contains(name, v))
            .collect::<Result<_>>()?;
        let b: Vec<bool> = beta
            .vertices
            .iter()
            .map(|v| cover.contains(name, v))
            .collect::<Result<_>>()?;
        in_elem.insert(name, (a, b));
    }
    let (la, lb) = (alpha.vertices.len(), beta.vertices.len());
    // state: (i, j, open block element index or names.len() for "closed",
    // advanced flag); BFS with predecessor tracking
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
    struct State {
        i: usize,
        j: usize,
        open: usize,
        advanced: bool,
    }
    let closed = names.len();
    let start = State {
        i: 0,
        j: 0,
        open: closed,
        advanced: false,
    };
    let mut prev: BTreeMap<State, State> = BTreeMap::new();
    let mut seen: BTreeSet<State> = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    let goal = State {
        i: la - 1,
        j: lb - 1,
        open: closed,
        advanced: false,
    };
    let mut found = start == goal;
    while let Some(s) = queue.pop_front() {
        if s == goal {
            found = true;
            break;
        }
        let push = |next: State, prev_map: &mut BTreeMap<State, State>, queue: &mut VecDeque<State>, seen: &mut BTreeSet<State>| {
            if seen.insert(next) {
                prev_map.insert(next, s);
                queue.push_back(next);
            }
        };
        if s.open == closed {
            // open a block with any element covering both current vertices
            for (ei, name) in names.iter().enumerate() {
                let (a, b) = &in_elem[name];
                if a[s.i] && b[s.j] {
                    push(
                        State {
                            open: ei,
                            advanced: false,
                            ..s
                        },
                        &mut prev,
                        &mut queue,
                        &mut seen,
                    );
                }
            }
        } else {
            let (a, b) = &in_elem[&names[s.open]];
            if s.i + 1 < la && a[s.i + 1] {
                push(
                    State {
                        i: s.i + 1,
                        advanced: true,
                        ..s
                    },
                    &mut prev,
                    &mut queue,
                    &mut seen,
                );
            }
            if s.j + 1 < lb && b[s.j + 1] {
                push(
                    State {
                        j: s.j + 1,
                        advanced: true,
                        ..s
                    },
                    &mut prev,
                    &mut queue,
                    &mut seen,
                );
            }
            // a block may close once it advanced, or degenerately at the
            // very end (both paths exhausted under a shared element)
            if s.advanced || (s.i == la - 1 && s.j == lb - 1) {
                push(
                    State {
                        open: closed,
                        advanced: false,
                        ..s
                    },
                    &mut prev,
                    &mut queue,
                    &mut seen,
                );
            }
        }
    }
    if !found {
        return Ok(None);
    }
    // reconstruct the chain: block boundaries are the states where a
    // block opens
    let mut states = vec![goal];
    let mut cur = goal;
    while let Some(&p) = prev.get(&cur) {
        states.push(p);
        cur = p;
    }
    states.reverse();
    let mut elements = Vec::new();
    let mut cuts_left = vec![0];
    let mut cuts_right = vec![0];
    for w in states.windows(2) {
        let (from, to) = (w[0], w[1]);
        if from.open == closed && to.open != closed {
            elements.push(names[to.open].clone());
        }
        if from.open != closed && to.open == closed {
            cuts_left.push(to.i);
            cuts_right.push(to.j);
        }
    }
    let chain = UChain {
        elements,
        cuts_left,
        cuts_right,
    };
    debug_assert!(chain.verify(alpha, beta, cover)?);
    Ok(Some(chain))
}

/// Limits for the bounded null-homotopy search.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    /// Maximum number of elementary moves in a witness sequence.
    pub max_moves: usize,
    /// Cap on distinct intermediate loops examined.
    pub max_loops: usize,
    /// Intermediate loops longer than this are discarded.
    pub length_cap: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_moves: 5,
            max_loops: 3000,
            length_cap: 40,
        }
    }
}

/// Outcome of the one-sided search: a witness sequence of loops, each
/// consecutive pair verified step-related, ending at the constant loop —
/// or Unknown. Never a negative answer.
#[derive(Debug, Clone)]
pub enum NullHomotopyVerdict {
    In { witness: Vec<EdgePath> },
    Unknown { report: String },
}

fn loop_key(p: &EdgePath) -> Vec<Vertex> {
    p.vertices.clone()
}

/// Candidate next loops from elementary moves: free reduction, turnback
/// shortcuts (a prefix traversed out and back), triangle swaps in both
/// directions, and single backtrack insertions.
fn candidates(gamma: &EdgePath, cover: &CombinatorialCover, cap: usize) -> Vec<EdgePath> {
    let working = cover.working();
    let mut out = Vec::new();
    let reduced = gamma.reduced();
    if reduced != *gamma {
        out.push(reduced);
    }
    for k in 1..gamma.vertices.len().saturating_sub(1) {
        let prefix = EdgePath::new(gamma.vertices[..=k].to_vec());
        if let Ok(turn) = prefix.concat(&prefix.reverse()) {
            out.push(turn);
        }
    }
    for idx in 0..gamma.vertices.len().saturating_sub(1) {
        let (a, b) = (&gamma.vertices[idx], &gamma.vertices[idx + 1]);
        if a == b {
            continue;
        }
        for t in working.triangles() {
            if t.contains(a) && t.contains(b) {
                let c = t.iter().find(|v| *v != a && *v != b).unwrap();
                let mut v = gamma.vertices.clone();
                v.insert(idx + 1, c.clone());
                out.push(EdgePath::new(v));
            }
        }
    }
    // collapse a two-step detour a,c,b to a,b when an edge exists
    for idx in 0..gamma.vertices.len().saturating_sub(2) {
        let (a, b) = (&gamma.vertices[idx], &gamma.vertices[idx + 2]);
        if a == b {
            continue;
        }
        let mut e = vec![a.clone(), b.clone()];
        e.sort();
        if working.contains_simplex(&e) {
            let mut v = gamma.vertices.clone();
            v.remove(idx + 1);
            out.push(EdgePath::new(v));
        }
    }
    // single backtrack insertion at each position
    for idx in 0..gamma.vertices.len() {
        let v0 = &gamma.vertices[idx];
        for n in working.neighbors(v0) {
            let mut v = gamma.vertices.clone();
            v.insert(idx + 1, v0.clone());
            v.insert(idx + 1, n);
            out.push(EdgePath::new(v));
        }
    }
    out.retain(|p| p.vertices.len() <= cap);
    out
}

/// Searches for a sequence of step-related loops from `l` down to the
/// constant loop at the basepoint. Sound but incomplete: only In/Unknown.
pub fn null_u_homotopic_bounded(
    l: &EdgePath,
    cover: &CombinatorialCover,
    budget: &SearchBudget,
) -> Result<NullHomotopyVerdict> {
    if !validate_edge_path(cover.working(), l)?.is_ok() {
        return Err(Error::MalformedPath("loop is not on the working subdivision".into()));
    }
    if l.start() != cover.basepoint() || !l.is_loop() {
        return Err(Error::BasepointMismatch(format!(
            "loop must start and end at `{}`",
            cover.basepoint()
        )));
    }
    let constant = EdgePath::constant(cover.basepoint().clone());
    let mut seen: BTreeSet<Vec<Vertex>> = BTreeSet::from([loop_key(l)]);
    let mut queue: VecDeque<(EdgePath, Vec<EdgePath>)> =
        VecDeque::from([(l.clone(), vec![l.clone()])]);
    let mut examined = 0usize;
    while let Some((gamma, trail)) = queue.pop_front() {
        if gamma.reduced().vertices.len() == 1 {
            let mut witness = trail.clone();
            if gamma.vertices.len() > 1 {
                // the final collapse to the constant loop is itself a step
                if step_equivalent(&gamma, &constant, cover)?.is_some() {
                    witness.push(constant.clone());
                    return Ok(NullHomotopyVerdict::In { witness });
                }
            } else {
                return Ok(NullHomotopyVerdict::In { witness });
            }
        }
        if trail.len() > budget.max_moves {
            continue;
        }
        for cand in candidates(&gamma, cover, budget.length_cap) {
            examined += 1;
            if examined > budget.max_loops {
                return Ok(NullHomotopyVerdict::Unknown {
                    report: format!("loop budget {} exhausted", budget.max_loops),
                });
            }
            if seen.contains(&loop_key(&cand)) {
                continue;
            }
            if step_equivalent(&gamma, &cand, cover)?.is_none() {
                continue;
            }
            seen.insert(loop_key(&cand));
            let mut t = trail.clone();
            t.push(cand.clone());
            queue.push_back((cand, t));
        }
    }
    Ok(NullHomotopyVerdict::Unknown {
        report: format!("no witness within {} moves", budget.max_moves),
    })
}

/// Membership of a based loop in the null-homotopy subgroup, decided via
/// the thick Spanier generators (the two subgroups coincide when every
/// element is path connected, which is checked).
pub fn nu_membership(
    l: &EdgePath,
    cover: &CombinatorialCover,
    budget: &Budget,
) -> Result<MembershipVerdict> {
    require_connected_elements(cover)?;
    let epg = working_group(cover)?;
    let thick = thick_spanier_generators(cover, &epg)?;
    let w = epg.word_of_loop(l)?;
    membership(&thick, &w, budget)
}
