//! Finite covering complexes built from a complete coset table over an
//! edge-path presentation.

use crate::complex::{EdgePath, SimplicialComplex, SimplicialMap, Vertex};
use crate::error::{Error, Result};
use crate::group::presentation::EdgePathGroup;
use crate::group::todd_coxeter::CosetTable;
use crate::group::word::Word;

fn lifted_name(v: &str, coset: usize) -> Vertex {
    format!("{v}@{coset}")
}

/// Word read by traversing a single edge from `a` to `b`, looked up on the
/// presentation (identity for tree edges).
fn step_word(epg: &EdgePathGroup, a: &str, b: &str) -> Word {
    let mut e = vec![a.to_string(), b.to_string()];
    e.sort();
    match epg.generator_edges.iter().position(|ge| *ge == e) {
        Some(i) => Word::from_letters(vec![(i, if e[0] == a { 1 } else { -1 })]),
        None => Word::identity(),
    }
}

/// Builds the covering complex associated to the subgroup of a complete
/// coset table: vertices are (coset, vertex) pairs; an edge from `u` to
/// `v` reading word `g` lifts from coset `c` to coset `c·g`. Returns the
/// cover and the simplicial projection.
pub fn build_covering_complex(
    epg: &EdgePathGroup,
    table: &CosetTable,
) -> Result<(SimplicialComplex, SimplicialMap)> {
    let n = table.index().ok_or(Error::IncompleteTable)?;
    let k = &epg.complex;
    let mut top: Vec<Vec<Vertex>> = Vec::new();
    for c in 0..n {
        for v in k.vertices() {
            top.push(vec![lifted_name(v, c)]);
        }
        for e in k.edges() {
            let g = step_word(epg, &e[0], &e[1]);
            let c2 = table
                .act(c, &g)
                .ok_or(Error::IncompleteTable)?;
            top.push(vec![lifted_name(&e[0], c), lifted_name(&e[1], c2)]);
        }
        for t in k.triangles() {
            let (a, b, cc) = (&t[0], &t[1], &t[2]);
            let c_b = table.act(c, &step_word(epg, a, b)).ok_or(Error::IncompleteTable)?;
            let c_c = table
                .act(c_b, &step_word(epg, b, cc))
                .ok_or(Error::IncompleteTable)?;
            let back = table
                .act(c_c, &step_word(epg, cc, a))
                .ok_or(Error::IncompleteTable)?;
            if back != c {
                return Err(Error::Inconsistent(format!(
                    "triangle {t:?} fails to close over coset {c}"
                )));
            }
            top.push(vec![
                lifted_name(a, c),
                lifted_name(b, c_b),
                lifted_name(cc, c_c),
            ]);
        }
    }
    let cover = SimplicialComplex::from_top_simplices_unchecked(&top)?;
    let assignment = cover
        .vertices()
        .iter()
        .map(|lv| {
            let (base, _) = lv.rsplit_once('@').expect("lifted names contain @");
            (lv.clone(), base.to_string())
        })
        .collect();
    let projection = SimplicialMap::new(cover.clone(), k.clone(), assignment)?;
    Ok((cover, projection))
}

/// Lifts an edge path of the base starting at the given coset; returns
/// the lifted path (whose endpoint coset encodes the action of the path).
pub fn lift_edge_path(
    epg: &EdgePathGroup,
    table: &CosetTable,
    p: &EdgePath,
    start_coset: usize,
) -> Result<EdgePath> {
    if table.index().is_none() {
        return Err(Error::IncompleteTable);
    }
    let mut c = start_coset;
    let mut out = vec![lifted_name(p.start(), c)];
    for pair in p.vertices.windows(2) {
        if pair[0] != pair[1] {
            c = table
                .act(c, &step_word(epg, &pair[0], &pair[1]))
                .ok_or(Error::IncompleteTable)?;
        }
        out.push(lifted_name(&pair[1], c));
    }
    Ok(EdgePath::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::presentation::edge_path_group;
    use crate::group::todd_coxeter::todd_coxeter;

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

    #[test]
    fn double_cover_of_the_hexagon_is_a_twelve_cycle() {
        let k = c6();
        let epg = edge_path_group(&k, "v0").unwrap();
        let table = todd_coxeter(&epg.presentation, &[Word::generator(0).pow(2)], 100).unwrap();
        assert_eq!(table.index(), Some(2));
        let (cover, projection) = build_covering_complex(&epg, &table).unwrap();
        assert_eq!(cover.counts(), (12, 12, 0));
        assert!(cover.is_connected());
        // degree 2 everywhere
        for v in k.vertices() {
            let fiber = cover
                .vertices()
                .iter()
                .filter(|lv| projection.apply_vertex(lv) == v)
                .count();
            assert_eq!(fiber, 2);
        }
        // the fundamental group of the cover maps to an index-2 subgroup
        let cover_epg = edge_path_group(&cover, "v0@0").unwrap();
        assert_eq!(cover_epg.presentation.rank(), 1);
        let gen_loop = cover_epg.loop_for_generator(0).unwrap();
        let image = epg.word_of_loop(&projection.apply_path(&gen_loop)).unwrap();
        assert_eq!(image.exponent_vector(1)[0].abs(), 2);
    }

    #[test]
    fn index_one_gives_an_isomorphic_copy() {
        let k = c6();
        let epg = edge_path_group(&k, "v0").unwrap();
        let table = todd_coxeter(&epg.presentation, &[Word::generator(0)], 100).unwrap();
        assert_eq!(table.index(), Some(1));
        let (cover, _) = build_covering_complex(&epg, &table).unwrap();
        assert_eq!(cover.counts(), k.counts());
    }

    #[test]
    fn incomplete_table_is_rejected() {
        let k = c6();
        let epg = edge_path_group(&k, "v0").unwrap();
        let table = todd_coxeter(&epg.presentation, &[], 10).unwrap();
        assert!(matches!(
            build_covering_complex(&epg, &table),
            Err(Error::IncompleteTable)
        ));
    }

    #[test]
    fn path_lifting_tracks_the_coset_action() {
        let k = c6();
        let epg = edge_path_group(&k, "v0").unwrap();
        let table = todd_coxeter(&epg.presentation, &[Word::generator(0).pow(2)], 100).unwrap();
        let full_loop = EdgePath::new(
            ["v0", "v1", "v2", "v3", "v4", "v5", "v0"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        );
        let lift = lift_edge_path(&epg, &table, &full_loop, 0).unwrap();
        // one trip around the hexagon lands in the other sheet
        assert_eq!(lift.start(), "v0@0");
        assert_eq!(lift.end(), "v0@1");
        let double = full_loop.concat(&full_loop).unwrap();
        let lift2 = lift_edge_path(&epg, &table, &double, 0).unwrap();
        assert_eq!(lift2.end(), "v0@0");
    }
}
