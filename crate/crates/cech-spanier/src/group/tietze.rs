//! Presentation simplification by generator elimination, with tracked
//! rewriting of a query word through every substitution.

use crate::group::presentation::GroupPresentation;
use crate::group::word::Word;

/// Result of simplifying `ambient / ⟨⟨extra relators⟩⟩` while rewriting a
/// query word into the surviving generators.
#[derive(Debug, Clone)]
pub struct Simplified {
    pub presentation: GroupPresentation,
    pub query: Word,
    /// Indices into the original generator list for the survivors.
    pub kept: Vec<usize>,
}

impl Simplified {
    /// No relators left: the quotient is free on the survivors.
    pub fn is_free(&self) -> bool {
        self.presentation.relators.is_empty()
    }

    /// No generators left: the quotient is trivial.
    pub fn is_trivial(&self) -> bool {
        self.presentation.generators.is_empty()
    }
}

/// Substitutes `replacement` for generator `g` in `w` (g must not occur in
/// the replacement), then renumbers by deleting index `g`.
fn eliminate(w: &Word, g: usize, replacement: &Word) -> Word {
    let mut letters = Vec::new();
    for &(h, e) in &w.letters {
        if h == g {
            let r = if e == 1 {
                replacement.clone()
            } else {
                replacement.inverse()
            };
            letters.extend(r.letters.iter().cloned());
        } else {
            letters.push((h, e));
        }
    }
    let shifted = letters
        .into_iter()
        .map(|(h, e)| (if h > g { h - 1 } else { h }, e))
        .collect();
    Word::from_letters(shifted)
}

/// Simplifies the quotient of `p` by additional relators while tracking a
/// query word. Repeatedly drops trivial relators and eliminates any
/// generator occurring exactly once in some relator.
pub fn simplify_with_query(p: &GroupPresentation, extra: &[Word], query: &Word) -> Simplified {
    let mut generators = p.generators.clone();
    let mut kept: Vec<usize> = (0..generators.len()).collect();
    let mut relators: Vec<Word> = p
        .relators
        .iter()
        .chain(extra.iter())
        .map(|w| w.reduced())
        .collect();
    let mut query = query.reduced();

    loop {
        relators.retain(|r| !r.is_identity());
        // a generator with a single occurrence across one relator can be
        // solved for and eliminated
        let mut pick: Option<(usize, usize)> = None;
        'outer: for (ri, r) in relators.iter().enumerate() {
            for &(g, _) in &r.letters {
                let occurrences: usize = r
                    .letters
                    .iter()
                    .filter(|&&(h, _)| h == g)
                    .count();
                if occurrences == 1 {
                    pick = Some((ri, g));
                    break 'outer;
                }
            }
        }
        let Some((ri, g)) = pick else { break };
        let r = relators.remove(ri);
        // rotate r so the g-letter is first: r = g^e · tail, hence
        // g = tail⁻¹ (for e = 1) or g = tail (for e = -1)
        let pos = r.letters.iter().position(|&(h, _)| h == g).unwrap();
        let mut rot = r.letters[pos..].to_vec();
        rot.extend_from_slice(&r.letters[..pos]);
        let e = rot[0].1;
        let tail = Word::from_letters(rot[1..].to_vec());
        let replacement = if e == 1 { tail.inverse() } else { tail };
        relators = relators
            .iter()
            .map(|w| eliminate(w, g, &replacement))
            .collect();
        query = eliminate(&query, g, &replacement);
        generators.remove(g);
        kept.remove(g);
    }

    Simplified {
        presentation: GroupPresentation {
            generators,
            relators,
            provenance: format!("simplified from: {}", p.provenance),
        },
        query,
        kept,
    }
}
