//! Deterministic budgeted coset enumeration (relator-scanning strategy)
//! and coset-table utilities.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::group::presentation::GroupPresentation;
use crate::group::word::Word;

/// A (possibly partial) coset table for a subgroup of a presented group.
/// Columns come in pairs: generator and its inverse.
#[derive(Debug, Clone)]
pub struct CosetTable {
    pub generator_names: Vec<String>,
    pub subgroup_generators: Vec<Word>,
    /// table[coset][2g] = coset · g, table[coset][2g+1] = coset · g⁻¹.
    pub table: Vec<Vec<Option<usize>>>,
    pub complete: bool,
}

fn col(g: usize, e: i32) -> usize {
    if e == 1 {
        2 * g
    } else {
        2 * g + 1
    }
}

fn inv_col(c: usize) -> usize {
    c ^ 1
}

impl CosetTable {
    /// Number of cosets when complete.
    pub fn index(&self) -> Option<usize> {
        if self.complete {
            Some(self.table.len())
        } else {
            None
        }
    }

    /// Action of a word on a coset; `None` when the table is missing an
    /// entry along the way.
    pub fn act(&self, coset: usize, w: &Word) -> Option<usize> {
        let mut c = coset;
        for &(g, e) in &w.letters {
            c = self.table.get(c)?[col(g, e)]?;
        }
        Some(c)
    }

    /// Whether every listed word acts trivially on every coset, i.e. its
    /// normal closure lies inside the subgroup. Requires completeness.
    pub fn normal_closure_in_core(&self, gens: &[Word]) -> Result<bool> {
        if !self.complete {
            return Err(Error::IncompleteTable);
        }
        for w in gens {
            for c in 0..self.table.len() {
                if self.act(c, w) != Some(c) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<Option<usize>>>,
    rep: Vec<usize>,
    max_cosets: usize,
    exhausted: bool,
}

impl Enumerator {
    fn find(&mut self, mut c: usize) -> usize {
        while self.rep[c] != c {
            let up = self.rep[self.rep[c]];
            self.rep[c] = up;
            c = up;
        }
        c
    }

    fn define(&mut self, from: usize, column: usize) -> Option<usize> {
        if self.table.len() >= self.max_cosets {
            self.exhausted = true;
            return None;
        }
        let n = self.table.len();
        self.table.push(vec![None; self.cols]);
        self.rep.push(n);
        self.table[from][column] = Some(n);
        self.table[n][inv_col(column)] = Some(from);
        Some(n)
    }

    fn merge(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::from([(a, b)]);
        while let Some((a, b)) = queue.pop_front() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (winner, loser) = (a.min(b), a.max(b));
            self.rep[loser] = winner;
            for c in 0..self.cols {
                if let Some(x) = self.table[loser][c] {
                    let x = self.find(x);
                    match self.table[winner][c] {
                        Some(y) => {
                            let y = self.find(y);
                            if x != y {
                                queue.push_back((x, y));
                            }
                        }
                        None => {
                            self.table[winner][c] = Some(x);
                            match self.table[x][inv_col(c)] {
                                Some(z) => {
                                    let z = self.find(z);
                                    if z != winner {
                                        queue.push_back((z, winner));
                                    }
                                }
                                None => {
                                    self.table[x][inv_col(c)] = Some(winner);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    /// Scans `word` at `start`, filling gaps by defining cosets; records a
    /// coincidence when the two scan fronts disagree.
    fn scan_and_fill(&mut self, start: usize, word: &Word) {
        let letters: Vec<usize> = word.letters.iter().map(|&(g, e)| col(g, e)).collect();
        loop {
            let start = self.find(start);
            let mut f = start;
            let mut i = 0;
            while i < letters.len() {
                match self.table[f][letters[i]] {
                    Some(next) => {
                        f = self.find(next);
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == letters.len() {
                if f != start {
                    self.merge(f, start);
                }
                return;
            }
            let mut b = start;
            let mut j = letters.len();
            while j > i {
                match self.table[b][inv_col(letters[j - 1])] {
                    Some(prev) => {
                        b = self.find(prev);
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j == i {
                self.merge(f, b);
                return;
            }
            if j == i + 1 {
                // deduction: one missing entry bridges the fronts
                self.table[f][letters[i]] = Some(b);
                self.table[b][inv_col(letters[i])] = Some(f);
                return;
            }
            // gap of two or more: define one coset and rescan
            if self.define(f, letters[i]).is_none() {
                return;
            }
        }
    }
}

/// Enumerates cosets of the subgroup generated by `subgroup` in `p`,
/// deterministically, up to `max_cosets` simultaneously-held cosets. The
/// returned table is compacted to live cosets and flagged complete only
/// if it verifiably closes.
pub fn todd_coxeter(
    p: &GroupPresentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable> {
    for w in subgroup {
        p.check_word(w)?;
    }
    let cols = 2 * p.generators.len();
    let mut e = Enumerator {
        cols,
        table: vec![vec![None; cols]],
        rep: vec![0],
        max_cosets: max_cosets.max(1),
        exhausted: false,
    };
    for w in subgroup {
        e.scan_and_fill(0, w);
        if e.exhausted {
            break;
        }
    }
    let mut alpha = 0;
    while !e.exhausted && alpha < e.table.len() {
        if e.find(alpha) != alpha {
            alpha += 1;
            continue;
        }
        for r in &p.relators {
            e.scan_and_fill(alpha, r);
            if e.exhausted {
                break;
            }
        }
        if e.exhausted || e.find(alpha) != alpha {
            alpha += 1;
            continue;
        }
        for c in 0..cols {
            if e.table[alpha][c].is_none() && e.define(alpha, c).is_none() {
                break;
            }
        }
        alpha += 1;
    }

    // compact to live cosets
    let live: Vec<usize> = (0..e.table.len()).filter(|&c| e.find(c) == c).collect();
    let mut renumber = vec![usize::MAX; e.table.len()];
    for (new, &old) in live.iter().enumerate() {
        renumber[old] = new;
    }
    let table: Vec<Vec<Option<usize>>> = live
        .iter()
        .map(|&old| {
            (0..cols)
                .map(|c| e.table[old][c].map(|x| renumber[e.find(x)]))
                .collect()
        })
        .collect();
    let mut out = CosetTable {
        generator_names: p.generators.clone(),
        subgroup_generators: subgroup.to_vec(),
        table,
        complete: false,
    };
    if !e.exhausted {
        out.complete = verify_closed(&out, p, subgroup);
    }
    Ok(out)
}

/// Independent closure check: all entries defined, inverse columns
/// consistent, every relator fixes every coset, every subgroup generator
/// fixes coset 0.
fn verify_closed(t: &CosetTable, p: &GroupPresentation, subgroup: &[Word]) -> bool {
    for (c, row) in t.table.iter().enumerate() {
        for (ci, entry) in row.iter().enumerate() {
            match entry {
                None => return false,
                Some(x) => {
                    if t.table[*x][inv_col(ci)] != Some(c) {
                        return false;
                    }
                }
            }
        }
    }
    for r in &p.relators {
        for c in 0..t.table.len() {
            if t.act(c, r) != Some(c) {
                return false;
            }
        }
    }
    subgroup.iter().all(|w| t.act(0, w) == Some(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(n: usize) -> GroupPresentation {
        GroupPresentation::free((0..n).map(|i| format!("g{i}")).collect(), "test".into())
    }

    #[test]
    fn index_two_in_infinite_cyclic() {
        let t = todd_coxeter(&free(1), &[Word::generator(0).pow(2)], 100).unwrap();
        assert!(t.complete);
        assert_eq!(t.index(), Some(2));
        // the generator swaps the two cosets
        assert_eq!(t.act(0, &Word::generator(0)), Some(1));
        assert_eq!(t.act(1, &Word::generator(0)), Some(0));
    }

    #[test]
    fn cyclic_of_order_three() {
        let p = GroupPresentation::new(
            vec!["a".into()],
            vec![Word::generator(0).pow(3)],
            "test".into(),
        )
        .unwrap();
        let t = todd_coxeter(&p, &[], 100).unwrap();
        assert!(t.complete);
        assert_eq!(t.index(), Some(3));
    }

    #[test]
    fn infinite_group_exhausts_budget() {
        let t = todd_coxeter(&free(1), &[], 50).unwrap();
        assert!(!t.complete);
        assert!(t.index().is_none());
    }

    #[test]
    fn symmetric_group_s3() {
        // ⟨a, b | a², b², (ab)³⟩
        let a = Word::generator(0);
        let b = Word::generator(1);
        let p = GroupPresentation::new(
            vec!["a".into(), "b".into()],
            vec![a.pow(2), b.pow(2), a.concat(&b).pow(3)],
            "test".into(),
        )
        .unwrap();
        let t = todd_coxeter(&p, &[], 200).unwrap();
        assert!(t.complete);
        assert_eq!(t.index(), Some(6));
    }

    #[test]
    fn core_detection() {
        let t = todd_coxeter(&free(1), &[Word::generator(0).pow(2)], 100).unwrap();
        assert!(t.normal_closure_in_core(&[Word::generator(0).pow(2)]).unwrap());
        assert!(!t.normal_closure_in_core(&[Word::generator(0)]).unwrap());
        assert!(t.normal_closure_in_core(&[]).unwrap());
    }

    #[test]
    fn incomplete_table_refuses_core_queries() {
        let t = todd_coxeter(&free(1), &[], 10).unwrap();
        assert!(matches!(
            t.normal_closure_in_core(&[]),
            Err(Error::IncompleteTable)
        ));
    }

    #[test]
    fn coincidence_collapse_to_trivial_group() {
        // ⟨a | a² , a³⟩ is trivial; forces a genuine coincidence
        let p = GroupPresentation::new(
            vec!["a".into()],
            vec![Word::generator(0).pow(2), Word::generator(0).pow(3)],
            "test".into(),
        )
        .unwrap();
        let t = todd_coxeter(&p, &[], 100).unwrap();
        assert!(t.complete);
        assert_eq!(t.index(), Some(1));
    }
}
