//! A budgeted three-valued oracle for membership of a word in the normal
//! closure of a set of words, with re-verifiable certificates.
//!
//! The question "w ∈ ⟨⟨N⟩⟩ in G = ⟨X | R⟩" is equivalent to triviality of
//! the image of w in the quotient ⟨X | R ∪ N⟩. The pipeline runs stages
//! that are each conclusive or pass: free reduction, generator
//! elimination, abelianization, coset enumeration, and a bounded search
//! for an explicit conjugate-product expression in the free group over
//! R ∪ N.

use std::collections::{BTreeSet, VecDeque};

use crate::error::Result;
use crate::group::presentation::{GroupPresentation, Homomorphism};
use crate::group::snf::{in_row_space, smith_normal_form};
use crate::group::tietze::simplify_with_query;
use crate::group::todd_coxeter::{todd_coxeter, CosetTable};
use crate::group::word::Word;

/// A set of normal generators inside an ambient presented group; queries
/// concern the normal closure.
#[derive(Debug, Clone)]
pub struct NormalSubgroup {
    pub ambient: GroupPresentation,
    pub normal_generators: Vec<Word>,
    pub provenance: String,
}

impl NormalSubgroup {
    pub fn new(
        ambient: GroupPresentation,
        normal_generators: Vec<Word>,
        provenance: String,
    ) -> Result<Self> {
        for w in &normal_generators {
            ambient.check_word(w)?;
        }
        Ok(NormalSubgroup {
            ambient,
            normal_generators,
            provenance,
        })
    }
}

/// Resource limits for the oracle.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    /// Coset cap for the enumeration stage.
    pub max_cosets: usize,
    /// Max number of conjugate factors in a certificate.
    pub max_factors: usize,
    /// Max conjugator length considered in the certificate search.
    pub max_conjugator_len: usize,
    /// State cap for the certificate search frontier.
    pub max_states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_cosets: 5000,
            max_factors: 4,
            max_conjugator_len: 8,
            max_states: 50_000,
        }
    }
}

/// One conjugated factor of an In-certificate: `conjugator · basis[index]^sign · conjugator⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugateFactor {
    pub conjugator: Word,
    pub index: usize,
    pub sign: i32,
}

/// Evidence attached to a conclusive verdict.
#[derive(Debug, Clone)]
pub enum Certificate {
    /// The word equals this product of conjugates of words from
    /// `normal_generators ++ ambient.relators` in the free group.
    ConjugateProduct { factors: Vec<ConjugateFactor> },
    /// Generator elimination turned the quotient into a free group; the
    /// rewritten query word decides.
    FreeQuotient { rewritten: Word },
    /// Generator elimination emptied the quotient entirely.
    TrivialQuotient,
    /// Complete coset table of the quotient over the trivial subgroup;
    /// the query word's action on coset 0 decides.
    CosetAction { table: CosetTable, image_of_basepoint: usize },
    /// The abelianized image of the query is outside the relation lattice.
    Abelianization {
        diagonal: Vec<i128>,
        image: Vec<i128>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    In,
    NotIn,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct MembershipVerdict {
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    /// Which stage concluded, or what budgets were exhausted.
    pub report: String,
}

/// Decides (or declines to decide) whether `w` lies in the normal closure
/// of `n.normal_generators` inside `n.ambient`.
pub fn membership(n: &NormalSubgroup, w: &Word, budget: &Budget) -> Result<MembershipVerdict> {
    n.ambient.check_word(w)?;
    let w = w.reduced();
    if w.is_identity() {
        return Ok(MembershipVerdict {
            verdict: Verdict::In,
            certificate: Some(Certificate::ConjugateProduct { factors: vec![] }),
            report: "stage 1: freely trivial".into(),
        });
    }

    // stage 2: generator elimination on the quotient presentation
    let simplified = simplify_with_query(&n.ambient, &n.normal_generators, &w);
    if simplified.is_trivial() {
        return Ok(MembershipVerdict {
            verdict: Verdict::In,
            certificate: Some(Certificate::TrivialQuotient),
            report: "stage 2: quotient is trivial".into(),
        });
    }
    if simplified.is_free() {
        let verdict = if simplified.query.is_identity() {
            Verdict::In
        } else {
            Verdict::NotIn
        };
        return Ok(MembershipVerdict {
            verdict,
            certificate: Some(Certificate::FreeQuotient {
                rewritten: simplified.query.clone(),
            }),
            report: "stage 2: quotient is free".into(),
        });
    }

    // stage 3: abelianization of the (simplified) quotient
    let ngen = simplified.presentation.generators.len();
    let matrix: Vec<Vec<i128>> = if simplified.presentation.relators.is_empty() {
        vec![vec![0; ngen]]
    } else {
        simplified
            .presentation
            .relators
            .iter()
            .map(|r| r.exponent_vector(ngen))
            .collect()
    };
    let smith = smith_normal_form(&matrix);
    let image = simplified.query.exponent_vector(ngen);
    if !in_row_space(&smith, &image) {
        return Ok(MembershipVerdict {
            verdict: Verdict::NotIn,
            certificate: Some(Certificate::Abelianization {
                diagonal: smith.diagonal(),
                image,
            }),
            report: "stage 3: abelianized image escapes the relation lattice".into(),
        });
    }

    // stage 4: coset enumeration of the quotient over the trivial subgroup
    let table = todd_coxeter(&simplified.presentation, &[], budget.max_cosets)?;
    if table.complete {
        let c = table
            .act(0, &simplified.query)
            .expect("complete tables act totally");
        let verdict = if c == 0 { Verdict::In } else { Verdict::NotIn };
        return Ok(MembershipVerdict {
            verdict,
            certificate: Some(Certificate::CosetAction {
                table,
                image_of_basepoint: c,
            }),
            report: "stage 4: quotient enumerated".into(),
        });
    }

    // stage 5: bounded search for an explicit conjugate-product expression
    let mut basis: Vec<Word> = n.normal_generators.iter().map(|g| g.reduced()).collect();
    basis.extend(n.ambient.relators.iter().map(|r| r.reduced()));
    if let Some(factors) = conjugate_product_search(&basis, &w, budget) {
        return Ok(MembershipVerdict {
            verdict: Verdict::In,
            certificate: Some(Certificate::ConjugateProduct { factors }),
            report: "stage 5: conjugate product found".into(),
        });
    }

    Ok(MembershipVerdict {
        verdict: Verdict::Unknown,
        certificate: None,
        report: format!(
            "inconclusive at budget: cosets ≤ {}, factors ≤ {}, conjugators ≤ {}",
            budget.max_cosets, budget.max_factors, budget.max_conjugator_len
        ),
    })
}

/// Breadth-first search for factors f_1 … f_k (k ≤ max_factors), each a
/// conjugate of a basis word or its inverse, with `w = f_1 · … · f_k` in
/// the free group. States are the residuals `f_i⁻¹ · … · f_1⁻¹ · w`;
/// conjugators are drawn from prefixes of the residual, truncated to the
/// length bound.
fn conjugate_product_search(
    basis: &[Word],
    w: &Word,
    budget: &Budget,
) -> Option<Vec<ConjugateFactor>> {
    let mut queue: VecDeque<(Word, Vec<ConjugateFactor>)> =
        VecDeque::from([(w.reduced(), Vec::new())]);
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    let mut visited = 0usize;
    while let Some((residual, factors)) = queue.pop_front() {
        if residual.is_identity() {
            return Some(factors);
        }
        if factors.len() >= budget.max_factors {
            continue;
        }
        visited += 1;
        if visited > budget.max_states {
            return None;
        }
        let mut conjugators: Vec<Word> = vec![Word::identity()];
        let max_len = budget.max_conjugator_len.min(residual.len());
        for l in 1..=max_len {
            conjugators.push(Word {
                letters: residual.letters[..l].to_vec(),
            });
        }
        for (index, b) in basis.iter().enumerate() {
            if b.is_identity() {
                continue;
            }
            for sign in [1, -1] {
                let base = if sign == 1 { b.clone() } else { b.inverse() };
                for c in &conjugators {
                    let factor = base.conjugated(c);
                    let next = factor.inverse().concat(&residual);
                    if next.len() > residual.len() + b.len() + 2 * budget.max_conjugator_len {
                        continue;
                    }
                    if seen.insert(next.clone()) {
                        let mut fs = factors.clone();
                        fs.push(ConjugateFactor {
                            conjugator: c.clone(),
                            index,
                            sign,
                        });
                        queue.push_back((next, fs));
                    }
                }
            }
        }
    }
    None
}

/// Re-verifies a conjugate-product certificate by independent free-group
/// arithmetic.
pub fn verify_conjugate_product(
    n: &NormalSubgroup,
    w: &Word,
    factors: &[ConjugateFactor],
) -> bool {
    let mut basis: Vec<Word> = n.normal_generators.clone();
    basis.extend(n.ambient.relators.iter().cloned());
    let mut product = Word::identity();
    for f in factors {
        let Some(b) = basis.get(f.index) else {
            return false;
        };
        let b = if f.sign == 1 { b.clone() } else { b.inverse() };
        product = product.concat(&b.conjugated(&f.conjugator));
    }
    product.reduced() == w.reduced()
}

/// Runs the oracle over each source relator's image and records the
/// verdicts on the homomorphism. Images of genuine simplicial maps are
/// always homomorphisms; anything but `In` flags oracle weakness.
pub fn verify_homomorphism(h: &mut Homomorphism, budget: &Budget) -> Result<()> {
    let target_trivial = NormalSubgroup::new(h.target.clone(), Vec::new(), "kernel check".into())?;
    let mut verdicts = Vec::new();
    for r in &h.source.relators {
        let image = h.apply(r);
        let v = membership(&target_trivial, &image, budget)?;
        verdicts.push(match v.verdict {
            Verdict::In => "in".to_string(),
            Verdict::NotIn => "not-in".to_string(),
            Verdict::Unknown => "unknown".to_string(),
        });
    }
    h.relator_verdicts = verdicts;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(names: &[&str]) -> GroupPresentation {
        GroupPresentation::free(names.iter().map(|s| s.to_string()).collect(), "test".into())
    }

    #[test]
    fn power_in_closure_of_generator() {
        // ⟨a|⟩, N = ⟨⟨a⟩⟩: a³ is in (quotient trivial)
        let n = NormalSubgroup::new(free(&["a"]), vec![Word::generator(0)], "test".into()).unwrap();
        let v = membership(&n, &Word::generator(0).pow(3), &Budget::default()).unwrap();
        assert_eq!(v.verdict, Verdict::In);
        assert!(matches!(v.certificate, Some(Certificate::TrivialQuotient)));
    }

    #[test]
    fn nontrivial_element_of_free_group() {
        // ⟨a|⟩, N = ∅: a is not in the trivial subgroup
        let n = NormalSubgroup::new(free(&["a"]), vec![], "test".into()).unwrap();
        let v = membership(&n, &Word::generator(0), &Budget::default()).unwrap();
        assert_eq!(v.verdict, Verdict::NotIn);
    }

    #[test]
    fn conjugate_is_in_closure() {
        // ⟨a,b|⟩, N = ⟨⟨a⟩⟩: b a b⁻¹ ∈ N
        let n = NormalSubgroup::new(free(&["a", "b"]), vec![Word::generator(0)], "test".into())
            .unwrap();
        let w = Word::generator(0).conjugated(&Word::generator(1));
        let v = membership(&n, &w, &Budget::default()).unwrap();
        assert_eq!(v.verdict, Verdict::In);
    }

    #[test]
    fn commutator_escapes_abelianization_but_not_closure() {
        // ⟨a,b|⟩, N = ⟨⟨[a,b]⟩⟩: [b,a] is in the closure
        let a = Word::generator(0);
        let b = Word::generator(1);
        let comm = a.concat(&b).concat(&a.inverse()).concat(&b.inverse());
        let n = NormalSubgroup::new(free(&["a", "b"]), vec![comm.clone()], "test".into()).unwrap();
        let v = membership(&n, &comm.inverse(), &Budget::default()).unwrap();
        assert_eq!(v.verdict, Verdict::In);
        if let Some(Certificate::ConjugateProduct { factors }) = &v.certificate {
            assert!(verify_conjugate_product(&n, &comm.inverse(), factors));
        }
        // while a single a is not
        let v = membership(&n, &a, &Budget::default()).unwrap();
        assert_eq!(v.verdict, Verdict::NotIn);
    }

    #[test]
    fn finite_quotient_decides_by_cosets() {
        // ⟨a | a⁶⟩, N = ⟨⟨a²⟩⟩: a³ ∉ ⟨⟨a²⟩⟩ (quotient Z/2), a⁴ ∈
        let p = GroupPresentation::new(
            vec!["a".into()],
            vec![Word::generator(0).pow(6)],
            "test".into(),
        )
        .unwrap();
        let n = NormalSubgroup::new(p, vec![Word::generator(0).pow(2)], "test".into()).unwrap();
        let yes = membership(&n, &Word::generator(0).pow(4), &Budget::default()).unwrap();
        assert_eq!(yes.verdict, Verdict::In);
        let no = membership(&n, &Word::generator(0).pow(3), &Budget::default()).unwrap();
        assert_eq!(no.verdict, Verdict::NotIn);
    }

    #[test]
    fn identity_is_always_in() {
        let n = NormalSubgroup::new(free(&["a"]), vec![], "test".into()).unwrap();
        let v = membership(&n, &Word::identity(), &Budget::default()).unwrap();
        assert_eq!(v.verdict, Verdict::In);
    }

    #[test]
    fn certificates_reverify() {
        let n = NormalSubgroup::new(free(&["a", "b"]), vec![Word::generator(0)], "test".into())
            .unwrap();
        let w = Word::generator(0)
            .conjugated(&Word::generator(1))
            .concat(&Word::generator(0));
        let v = membership(&n, &w, &Budget::default()).unwrap();
        assert_eq!(v.verdict, Verdict::In);
        if let Some(Certificate::ConjugateProduct { factors }) = &v.certificate {
            assert!(verify_conjugate_product(&n, &w, factors));
        }
    }
}
