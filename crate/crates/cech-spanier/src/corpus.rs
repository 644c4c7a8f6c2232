//! A small library of named complexes, covers, and towers used by the
//! command-line tool and the test suite. The data ships embedded in the
//! binary; set `CSW_CORPUS_DIR` to a directory holding a `corpus.json`
//! with the same schema to override it.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;

use crate::complex::SimplicialComplex;
use crate::cover::CombinatorialCover;
use crate::error::{Error, Result};
use crate::tower::{build_star_tower, CoverTower};

const EMBEDDED: &str = include_str!("corpus.json");

#[derive(Debug, Deserialize)]
struct ComplexSpec {
    top: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
struct CoverSpec {
    base: String,
    #[serde(default)]
    kind: Option<String>,
    #[serde(default)]
    subdivide_base_first: u32,
    working_level: u32,
    #[serde(default)]
    elements: BTreeMap<String, BTreeSet<String>>,
    basepoint: String,
    #[serde(default)]
    distinguished: Option<String>,
}

#[derive(Debug, Deserialize)]
struct TowerSpec {
    base: String,
    kind: String,
    depth: usize,
    basepoint: String,
}

#[derive(Debug, Deserialize)]
struct LoopSpec {
    cover: String,
    vertices: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct CorpusFile {
    complexes: BTreeMap<String, ComplexSpec>,
    covers: BTreeMap<String, CoverSpec>,
    #[serde(default)]
    loops: BTreeMap<String, LoopSpec>,
    #[serde(default)]
    refinements: Vec<(String, String)>,
    towers: BTreeMap<String, TowerSpec>,
}

/// Parsed corpus contents.
pub struct Corpus {
    file: CorpusFile,
}

impl Corpus {
    /// Loads the corpus, honoring the `CSW_CORPUS_DIR` override.
    pub fn load() -> Result<Corpus> {
        let text = match std::env::var("CSW_CORPUS_DIR") {
            Ok(dir) => std::fs::read_to_string(std::path::Path::new(&dir).join("corpus.json"))
                .map_err(|e| Error::Input(format!("reading corpus override: {e}")))?,
            Err(_) => EMBEDDED.to_string(),
        };
        let file: CorpusFile = serde_json::from_str(&text)
            .map_err(|e| Error::Input(format!("parsing corpus: {e}")))?;
        Ok(Corpus { file })
    }

    pub fn complex_names(&self) -> Vec<String> {
        self.file.complexes.keys().cloned().collect()
    }

    pub fn cover_names(&self) -> Vec<String> {
        self.file.covers.keys().cloned().collect()
    }

    pub fn tower_names(&self) -> Vec<String> {
        self.file.towers.keys().cloned().collect()
    }

    pub fn complex(&self, name: &str) -> Result<SimplicialComplex> {
        let spec = self
            .file
            .complexes
            .get(name)
            .ok_or_else(|| Error::UnknownName(format!("complex `{name}`")))?;
        SimplicialComplex::from_top_simplices(&spec.top)
    }

    pub fn cover(&self, name: &str) -> Result<CombinatorialCover> {
        let spec = self
            .file
            .covers
            .get(name)
            .ok_or_else(|| Error::UnknownName(format!("cover `{name}`")))?;
        let mut base = self.complex(&spec.base)?;
        if spec.subdivide_base_first > 0 {
            base = base.subdivide_times(spec.subdivide_base_first).rebase();
        }
        match spec.kind.as_deref() {
            Some("star") => {
                CombinatorialCover::star(base, spec.working_level, spec.basepoint.clone())
            }
            Some(other) => Err(Error::Input(format!("unknown cover kind `{other}`"))),
            None => {
                let distinguished = spec
                    .distinguished
                    .clone()
                    .ok_or_else(|| Error::Input("explicit cover needs `distinguished`".into()))?;
                CombinatorialCover::new(
                    base,
                    spec.working_level,
                    spec.elements.clone(),
                    spec.basepoint.clone(),
                    distinguished,
                )
            }
        }
    }

    pub fn loop_names(&self) -> Vec<String> {
        self.file.loops.keys().cloned().collect()
    }

    /// A named based loop together with the cover it lives on; the loop
    /// is validated against that cover's working subdivision.
    pub fn based_loop(&self, name: &str) -> Result<(String, crate::complex::EdgePath)> {
        let spec = self
            .file
            .loops
            .get(name)
            .ok_or_else(|| Error::UnknownName(format!("loop `{name}`")))?;
        let cover = self.cover(&spec.cover)?;
        let p = crate::complex::EdgePath::new(spec.vertices.clone());
        if !crate::complex::validate_edge_path(cover.working(), &p)?.is_ok() {
            return Err(Error::Input(format!(
                "loop `{name}` is not an edge path of its cover's working subdivision"
            )));
        }
        Ok((spec.cover.clone(), p))
    }

    /// Witnessed refinement pairs `(fine, coarse)` by cover name.
    pub fn refinement_pairs(&self) -> Vec<(String, String)> {
        self.file.refinements.clone()
    }

    pub fn tower(&self, name: &str) -> Result<CoverTower> {
        let spec = self
            .file
            .towers
            .get(name)
            .ok_or_else(|| Error::UnknownName(format!("tower `{name}`")))?;
        if spec.kind != "star" {
            return Err(Error::Input(format!("unknown tower kind `{}`", spec.kind)));
        }
        let base = self.complex(&spec.base)?;
        build_star_tower(&base, spec.depth, &spec.basepoint)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_corpus_loads_everything() {
        let c = Corpus::load().unwrap();
        for name in c.complex_names() {
            let k = c.complex(&name).unwrap();
            k.validate().unwrap();
        }
        for name in c.cover_names() {
            c.cover(&name).unwrap();
        }
        for name in c.tower_names() {
            c.tower(&name).unwrap();
        }
        for name in c.loop_names() {
            c.based_loop(&name).unwrap();
        }
        for (fine, coarse) in c.refinement_pairs() {
            c.cover(&fine).unwrap();
            c.cover(&coarse).unwrap();
        }
    }

    #[test]
    fn corpus_shapes_are_as_expected() {
        let c = Corpus::load().unwrap();
        assert_eq!(c.complex("C6").unwrap().counts(), (6, 6, 0));
        assert_eq!(c.complex("DISC").unwrap().counts(), (3, 3, 1));
        let arc2 = c.cover("ARC2").unwrap();
        assert_eq!(arc2.element_names().len(), 2);
        assert_eq!(arc2.basepoint(), "v0");
        let star = c.cover("STAR_D3").unwrap();
        assert_eq!(star.element_names().len(), 3);
        let tower = c.tower("C6_DEPTH2").unwrap();
        assert_eq!(tower.levels.len(), 3);
    }

    #[test]
    fn override_directory_is_honored() {
        // not set in tests: embedded data must load without the variable
        assert!(std::env::var("CSW_CORPUS_DIR").is_err());
        Corpus::load().unwrap();
    }
}
