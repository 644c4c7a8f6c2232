//! Cross-module checks against independently derivable answers: known
//! fundamental groups, hand-computed normal forms, covering degrees, and
//! counts that follow from Euler characteristic arithmetic.

use std::collections::{BTreeMap, BTreeSet};

use cech_spanier::complex::{EdgePath, SimplicialComplex};
use cech_spanier::corpus::Corpus;
use cech_spanier::cover::CombinatorialCover;
use cech_spanier::group::covering::{build_covering_complex, lift_edge_path};
use cech_spanier::group::snf::smith_normal_form;
use cech_spanier::group::{
    edge_path_group, membership, todd_coxeter, Budget, GroupPresentation, NormalSubgroup, Verdict,
    Word,
};
use cech_spanier::spanier::{thick_spanier_generators, working_group};

fn corpus() -> Corpus {
    Corpus::load().unwrap()
}

#[test]
fn circle_group_is_infinite_cyclic_at_every_subdivision() {
    let c6 = corpus().complex("C6").unwrap();
    let mut k = c6;
    for _ in 0..3 {
        let epg = edge_path_group(&k, "v0").unwrap();
        assert_eq!(epg.presentation.rank(), 1);
        assert!(epg.presentation.relators.is_empty());
        k = k.barycentric_subdivide();
    }
}

#[test]
fn wedge_group_is_free_of_rank_two() {
    let fig8 = corpus().complex("FIG8").unwrap();
    let epg = edge_path_group(&fig8, "w").unwrap();
    assert_eq!(epg.presentation.rank(), 2);
    assert!(epg.presentation.relators.is_empty());
    // the two generator loops are independent in the abelianization
    let a = epg.loop_for_generator(0).unwrap();
    let b = epg.loop_for_generator(1).unwrap();
    let wa = epg.word_of_loop(&a).unwrap();
    let wb = epg.word_of_loop(&b).unwrap();
    assert_ne!(wa.exponent_vector(2), wb.exponent_vector(2));
}

#[test]
fn disk_group_is_trivial() {
    let disc = corpus().complex("DISC").unwrap();
    let epg = edge_path_group(&disc, "t0").unwrap();
    let trivial =
        NormalSubgroup::new(epg.presentation.clone(), Vec::new(), "oracle".into()).unwrap();
    for i in 0..epg.presentation.rank() {
        let v = membership(&trivial, &Word::generator(i), &Budget::default()).unwrap();
        assert_eq!(v.verdict, Verdict::In);
    }
}

#[test]
fn subdivision_preserves_euler_characteristic() {
    let c = corpus();
    for name in ["C6", "D3", "DISC", "FIG8"] {
        let k = c.complex(&name).unwrap();
        let chi = k.euler_characteristic();
        assert_eq!(k.barycentric_subdivide().euler_characteristic(), chi);
        assert_eq!(k.subdivide_times(2).euler_characteristic(), chi);
    }
}

#[test]
fn subdivision_counts_follow_the_chain_formula() {
    // sd of a 1-complex: V' = V + E, E' = 2E
    let c6 = corpus().complex("C6").unwrap();
    let (v, e, _) = c6.counts();
    let sd = c6.barycentric_subdivide();
    assert_eq!(sd.counts(), (v + e, 2 * e, 0));
    // sd of the full triangle: V' = 3+3+1, E' = 2·3 + 6 spokes, T' = 6
    let disc = corpus().complex("DISC").unwrap();
    assert_eq!(disc.barycentric_subdivide().counts(), (7, 12, 6));
}

#[test]
fn two_arc_nerve_is_a_single_edge_with_lex_least_witness() {
    let arc2 = corpus().cover("ARC2").unwrap();
    let nerve = arc2.build_nerve();
    assert_eq!(nerve.complex.counts(), (2, 1, 0));
    let edge: Vec<String> = vec!["P".into(), "Q".into()];
    assert_eq!(nerve.witness[&edge], vec!["v0".to_string(), "v5".to_string()]);
}

#[test]
fn two_arc_thick_generator_word_is_a_circle_generator() {
    let arc2 = corpus().cover("ARC2").unwrap();
    let epg = working_group(&arc2).unwrap();
    let thick = thick_spanier_generators(&arc2, &epg).unwrap();
    assert_eq!(thick.normal_generators.len(), 1);
    assert_eq!(thick.normal_generators[0].exponent_vector(1)[0].abs(), 1);
}

#[test]
fn smith_form_of_a_known_matrix() {
    // gcd of entries 2; gcd of 2×2 minors 4; determinant -624
    let a: Vec<Vec<i128>> = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]];
    let s = smith_normal_form(&a);
    assert_eq!(s.diagonal(), vec![2, 2, 156]);
}

#[test]
fn coset_enumeration_of_the_cyclic_quotient() {
    // one generator, relator a^6, subgroup generated by a^2: index 2
    let p = GroupPresentation::new(
        vec!["a".into()],
        vec![Word::generator(0).pow(6)],
        "oracle".into(),
    )
    .unwrap();
    let t = todd_coxeter(&p, &[Word::generator(0).pow(2)], 100).unwrap();
    assert!(t.complete);
    assert_eq!(t.index(), Some(2));
    // a^3 acts nontrivially on the cosets, a^4 trivially
    assert_eq!(t.act(0, &Word::generator(0).pow(3)), Some(1));
    assert_eq!(t.act(0, &Word::generator(0).pow(4)), Some(0));
}

#[test]
fn double_cover_of_the_circle_unrolls_loops() {
    let c6 = corpus().complex("C6").unwrap();
    let epg = edge_path_group(&c6, "v0").unwrap();
    let t = todd_coxeter(&epg.presentation, &[Word::generator(0).pow(2)], 100).unwrap();
    let (cover, projection) = build_covering_complex(&epg, &t).unwrap();
    assert_eq!(cover.counts(), (12, 12, 0));
    assert!(cover.is_connected());
    // the hexagon loop lifts to a path ending on the other sheet
    let l = epg.loop_for_generator(0).unwrap();
    let lifted = lift_edge_path(&epg, &t, &l, 0).unwrap();
    assert_ne!(lifted.start(), lifted.end());
    assert_eq!(projection.apply_vertex(lifted.end()), "v0");
}

#[test]
fn abelianization_detects_odd_powers_modulo_squares() {
    // infinite cyclic group: a^3 is not in the normal closure of a^2
    let p = GroupPresentation::new(vec!["a".into()], Vec::new(), "oracle".into()).unwrap();
    let n = NormalSubgroup::new(p, vec![Word::generator(0).pow(2)], "oracle".into()).unwrap();
    let v3 = membership(&n, &Word::generator(0).pow(3), &Budget::default()).unwrap();
    assert_eq!(v3.verdict, Verdict::NotIn);
    let v4 = membership(&n, &Word::generator(0).pow(4), &Budget::default()).unwrap();
    assert_eq!(v4.verdict, Verdict::In);
}

#[test]
fn star_membership_matches_carrier_arithmetic() {
    let k = corpus().complex("C6").unwrap();
    let cover = CombinatorialCover::new(
        k,
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
        "v0".to_string(),
        "P".to_string(),
    )
    .unwrap();
    // midpoint of [v2,v3] has carrier {v2,v3}: in both star unions
    assert!(cover.contains("P", "(v2|v3)").unwrap());
    assert!(cover.contains("Q", "(v2|v3)").unwrap());
    // midpoint of [v0,v1] has carrier {v0,v1}: only in P
    assert!(cover.contains("P", "(v0|v1)").unwrap());
    assert!(!cover.contains("Q", "(v0|v1)").unwrap());
}

#[test]
fn loop_words_multiply_along_concatenation() {
    let fig8 = corpus().complex("FIG8").unwrap();
    let epg = edge_path_group(&fig8, "w").unwrap();
    let a = epg.loop_for_generator(0).unwrap();
    let b = epg.loop_for_generator(1).unwrap();
    let ab = a.concat(&b).unwrap();
    let wa = epg.word_of_loop(&a).unwrap();
    let wb = epg.word_of_loop(&b).unwrap();
    assert_eq!(epg.word_of_loop(&ab).unwrap(), wa.concat(&wb));
    let back = a.concat(&a.reverse()).unwrap();
    assert!(epg.word_of_loop(&back).unwrap().is_identity());
}

#[test]
fn deterministic_outputs_across_repeated_construction() {
    let c = corpus();
    let a = c.cover("STAR_SD_DISC").unwrap();
    let b = c.cover("STAR_SD_DISC").unwrap();
    assert_eq!(a.working().sorted_simplices(), b.working().sorted_simplices());
    let na = a.build_nerve();
    let nb = b.build_nerve();
    assert_eq!(na.complex.sorted_simplices(), nb.complex.sorted_simplices());
    assert_eq!(na.witness, nb.witness);
    let ea = working_group(&a).unwrap();
    let eb = working_group(&b).unwrap();
    assert_eq!(ea.presentation.generators, eb.presentation.generators);
    assert_eq!(ea.presentation.relators, eb.presentation.relators);
}

#[test]
fn rebased_subdivision_names_match_the_direct_ones() {
    let c6 = corpus().complex("C6").unwrap();
    let direct = c6.subdivide_times(2);
    let staged = c6.barycentric_subdivide().rebase().barycentric_subdivide();
    assert_eq!(direct.vertices(), staged.vertices());
    assert_eq!(direct.sorted_simplices(), staged.sorted_simplices());
}

#[test]
fn edge_paths_validate_against_their_complex() {
    let c6 = corpus().complex("C6").unwrap();
    let good = EdgePath::new(vec!["v0".into(), "v1".into(), "v2".into()]);
    assert!(cech_spanier::complex::validate_edge_path(&c6, &good)
        .unwrap()
        .is_ok());
    let bad = EdgePath::new(vec!["v0".into(), "v2".into()]);
    assert!(!cech_spanier::complex::validate_edge_path(&c6, &bad)
        .unwrap()
        .is_ok());
}

#[test]
fn collapse_of_a_subdivision_is_a_simplicial_retraction() {
    let c6: SimplicialComplex = corpus().complex("C6").unwrap();
    let collapse = c6.collapse_from_subdivision();
    for v in c6.vertices() {
        assert_eq!(collapse.apply_vertex(v), v);
    }
    // the subdivided hexagon loop maps to the hexagon loop (up to reduction)
    let sd = c6.barycentric_subdivide();
    let epg_sd = edge_path_group(&sd, "v0").unwrap();
    let l = epg_sd.loop_for_generator(0).unwrap();
    let epg = edge_path_group(&c6, "v0").unwrap();
    let image = collapse.apply_path(&l);
    let w = epg.word_of_loop(&image.reduced()).unwrap();
    assert_eq!(w.exponent_vector(1)[0].abs(), 1);
}
