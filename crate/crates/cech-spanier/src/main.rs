//! `csw` — command-line workbench for covers of finite simplicial
//! complexes: nerves, edge-path groups, Spanier subgroups, bounded
//! discrete-homotopy searches, towers, and covering complexes.
//!
//! Exit codes: 0 = pass / membership holds; 1 = violation / negative
//! answer; 2 = inconclusive within budget; 3 = malformed input.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use cech_spanier::complex::{EdgePath, SimplicialComplex};
use cech_spanier::corpus::Corpus;
use cech_spanier::cover::CombinatorialCover;
use cech_spanier::group::covering::build_covering_complex;
use cech_spanier::group::{
    edge_path_group, induced_hom, todd_coxeter, Budget, MembershipVerdict,
    NormalSubgroup, Verdict, Word,
};
use cech_spanier::spanier::{
    exactness_report, lift_nerve_loop, spanier_generator_loops, thick_spanier_generator_set,
    thick_spanier_generators, verify_lift, working_group, ReportStatus,
};
use cech_spanier::tower::{
    build_star_tower, is_open_subgroup, ker_psi_probe, psi_image, shape_injectivity_probe,
    CoverTower, RefinementWitness,
};
use cech_spanier::uhomotopy::{
    null_u_homotopic_bounded, nu_membership, step_equivalent, NullHomotopyVerdict, SearchBudget,
};
use cech_spanier::{Error, Result};

#[derive(Parser)]
#[command(name = "csw", version, about = "cover workbench for finite simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Coset limit for enumerations.
    #[arg(long, default_value_t = 5000)]
    budget_cosets: usize,
    /// Factor limit for conjugate-product searches.
    #[arg(long, default_value_t = 4)]
    budget_factors: usize,
    /// Conjugator length limit for conjugate-product searches.
    #[arg(long, default_value_t = 8)]
    budget_conjugator_len: usize,
    /// State limit for conjugate-product searches.
    #[arg(long, default_value_t = 50_000)]
    budget_states: usize,
}

impl BudgetArgs {
    fn to_budget(&self) -> Budget {
        Budget {
            max_cosets: self.budget_cosets,
            max_factors: self.budget_factors,
            max_conjugator_len: self.budget_conjugator_len,
            max_states: self.budget_states,
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    /// Move limit for the bounded null-homotopy search.
    #[arg(long, default_value_t = 5)]
    search_moves: usize,
    /// Cap on distinct loops examined during the search.
    #[arg(long, default_value_t = 3000)]
    search_loops: usize,
    /// Intermediate loops longer than this are discarded.
    #[arg(long, default_value_t = 40)]
    search_length_cap: usize,
}

impl SearchArgs {
    fn to_budget(&self) -> SearchBudget {
        SearchBudget {
            max_moves: self.search_moves,
            max_loops: self.search_loops,
            length_cap: self.search_length_cap,
        }
    }
}

#[derive(Args)]
struct TowerArgs {
    /// A named tower from the corpus.
    #[arg(long)]
    tower: Option<String>,
    /// Base complex for an ad-hoc star tower (with --depth/--basepoint).
    #[arg(long)]
    complex: Option<String>,
    #[arg(long, default_value_t = 1)]
    depth: usize,
    #[arg(long)]
    basepoint: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Builds the nerve of a cover, with witnesses and the canonical map.
    Nerve {
        #[arg(long)]
        cover: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Edge-path presentation of the fundamental group of a complex.
    Pi1 {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        basepoint: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ordinary Spanier generator loops and words for a cover.
    Spanier {
        #[arg(long)]
        cover: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Thick Spanier generators: ordinary loops plus pair generators.
    ThickSpanier {
        #[arg(long)]
        cover: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks the short exact sequence thick → working → nerve.
    Exactness {
        #[arg(long)]
        cover: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tests whether two loops are related by a single cover-sized step.
    Uhomotopy {
        #[arg(long)]
        cover: String,
        /// First loop: `gen:N` or a comma-separated vertex list.
        #[arg(long = "loop")]
        loop_a: String,
        /// Second loop (defaults to the constant loop at the basepoint).
        #[arg(long = "loop2")]
        loop_b: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Membership of a loop in the null-homotopy subgroup of a cover.
    Nu {
        #[arg(long)]
        cover: String,
        #[arg(long = "loop")]
        loop_spec: String,
        /// Use the bounded step-by-step search instead of the word oracle.
        #[arg(long)]
        search: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        search_budget: SearchArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lifts a nerve loop to the working subdivision and verifies it.
    Lift {
        #[arg(long)]
        cover: String,
        /// A loop on the nerve: `gen:N` or a comma-separated element list.
        #[arg(long = "loop")]
        loop_spec: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Describes a tower; with --loop, computes the loop's images and
    /// kernel verdicts at every level.
    Tower {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long = "loop")]
        loop_spec: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Searches short words of the deep group that die at every level.
    ProbeInjectivity {
        #[command(flatten)]
        tower: TowerArgs,
        /// Maximum word length to enumerate.
        #[arg(long, default_value_t = 4)]
        word_cap: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tests openness of a finitely generated subgroup in the tower
    /// topology and realizes the covering complex on success.
    OpenSubgroup {
        #[command(flatten)]
        tower: TowerArgs,
        /// Generator words of H over the root group's generators.
        #[arg(long = "word", required = true)]
        words: Vec<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Builds the covering complex of the subgroup generated by words.
    Covering {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        basepoint: Option<String>,
        #[arg(long = "word")]
        words: Vec<String>,
        #[arg(long, default_value_t = 5000)]
        max_cosets: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Deserialize)]
struct ComplexFile {
    top: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct CoverFile {
    top: Vec<Vec<String>>,
    working_level: u32,
    #[serde(default)]
    elements: BTreeMap<String, BTreeSet<String>>,
    basepoint: String,
    #[serde(default)]
    distinguished: Option<String>,
    #[serde(default)]
    kind: Option<String>,
}

fn looks_like_path(spec: &str) -> bool {
    spec.contains('/') || spec.ends_with(".json")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("reading `{path}`: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("parsing `{path}`: {e}")))
}

fn resolve_complex(corpus: &Corpus, spec: &str) -> Result<SimplicialComplex> {
    if looks_like_path(spec) {
        let f: ComplexFile = read_json(spec)?;
        SimplicialComplex::from_top_simplices(&f.top)
    } else {
        corpus.complex(spec)
    }
}

fn resolve_cover(corpus: &Corpus, spec: &str) -> Result<CombinatorialCover> {
    if looks_like_path(spec) {
        let f: CoverFile = read_json(spec)?;
        let base = SimplicialComplex::from_top_simplices(&f.top)?;
        match f.kind.as_deref() {
            Some("star") => CombinatorialCover::star(base, f.working_level, f.basepoint),
            Some(other) => Err(Error::Input(format!("unknown cover kind `{other}`"))),
            None => {
                let distinguished = f
                    .distinguished
                    .ok_or_else(|| Error::Input("cover file needs `distinguished`".into()))?;
                CombinatorialCover::new(base, f.working_level, f.elements, f.basepoint, distinguished)
            }
        }
    } else {
        corpus.cover(spec)
    }
}

fn resolve_tower(corpus: &Corpus, args: &TowerArgs) -> Result<CoverTower> {
    if let Some(name) = &args.tower {
        return corpus.tower(name);
    }
    let complex_spec = args
        .complex
        .as_ref()
        .ok_or_else(|| Error::Input("pass --tower NAME or --complex with --basepoint".into()))?;
    let basepoint = args
        .basepoint
        .as_ref()
        .ok_or_else(|| Error::Input("an ad-hoc tower needs --basepoint".into()))?;
    let k = resolve_complex(corpus, complex_spec)?;
    build_star_tower(&k, args.depth, basepoint)
}

/// `gen:N` for the N-th generator loop of the edge-path group based at
/// `basepoint`, or a comma-separated vertex list.
fn parse_loop(spec: &str, complex: &SimplicialComplex, basepoint: &str) -> Result<EdgePath> {
    if let Some(n) = spec.strip_prefix("gen:") {
        let i: usize = n
            .parse()
            .map_err(|_| Error::Input(format!("bad generator index `{n}`")))?;
        let epg = edge_path_group(complex, basepoint)?;
        return epg.loop_for_generator(i);
    }
    let vertices: Vec<String> = spec.split(',').map(|s| s.trim().to_string()).collect();
    let p = EdgePath::new(vertices);
    if !cech_spanier::complex::validate_edge_path(complex, &p)?.is_ok() {
        return Err(Error::Input(format!("`{spec}` is not an edge path here")));
    }
    Ok(p)
}

fn verdict_str(v: &Verdict) -> &'static str {
    match v {
        Verdict::In => "in",
        Verdict::NotIn => "not_in",
        Verdict::Unknown => "unknown",
    }
}

fn verdict_exit(v: &Verdict) -> u8 {
    match v {
        Verdict::In => 0,
        Verdict::NotIn => 1,
        Verdict::Unknown => 2,
    }
}

fn membership_json(m: &MembershipVerdict) -> Value {
    json!({
        "verdict": verdict_str(&m.verdict),
        "certificate": m.certificate.as_ref().map(|c| format!("{c:?}")),
        "report": m.report,
    })
}

fn path_json(p: &EdgePath) -> Value {
    json!(p.vertices)
}

fn subgroup_json(n: &NormalSubgroup) -> Value {
    json!({
        "ambient_generators": n.ambient.generators,
        "normal_generators": n
            .normal_generators
            .iter()
            .map(|w| w.to_text(&n.ambient.generators))
            .collect::<Vec<_>>(),
    })
}

fn emit(value: &Value, out: &Option<PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    println!("{text}");
    if let Some(path) = out {
        std::fs::write(path, text)
            .map_err(|e| Error::Input(format!("writing `{}`: {e}", path.display())))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    let corpus = Corpus::load()?;
    match cli.command {
        Command::Nerve { cover, out } => {
            let c = resolve_cover(&corpus, &cover)?;
            let nerve = c.build_nerve();
            let canonical = c.canonical_vertex_map(&nerve)?;
            let witnesses: BTreeMap<String, Vec<String>> = nerve
                .witness
                .iter()
                .map(|(s, w)| (s.join("|"), w.clone()))
                .collect();
            let (nv, ne, nt) = nerve.complex.counts();
            emit(
                &json!({
                    "elements": c.element_names(),
                    "nerve_simplices": nerve.complex.sorted_simplices(),
                    "counts": {"vertices": nv, "edges": ne, "triangles": nt},
                    "witnesses": witnesses,
                    "canonical_condition_verified": canonical.condition_verified,
                }),
                &out,
            )?;
            Ok(if canonical.condition_verified { 0 } else { 1 })
        }
        Command::Pi1 {
            complex,
            basepoint,
            out,
        } => {
            let k = resolve_complex(&corpus, &complex)?;
            let bp = basepoint.unwrap_or_else(|| k.vertices()[0].clone());
            let epg = edge_path_group(&k, &bp)?;
            emit(
                &json!({
                    "basepoint": bp,
                    "generators": epg.presentation.generators,
                    "relators": epg
                        .presentation
                        .relators
                        .iter()
                        .map(|r| r.to_text(&epg.presentation.generators))
                        .collect::<Vec<_>>(),
                    "tree_edges": epg.tree_edges.iter().collect::<Vec<_>>(),
                    "generator_edges": epg.generator_edges,
                }),
                &out,
            )?;
            Ok(0)
        }
        Command::Spanier { cover, out } => {
            let c = resolve_cover(&corpus, &cover)?;
            let epg = working_group(&c)?;
            let loops = spanier_generator_loops(&c)?;
            let sub = cech_spanier::spanier::spanier_generators(&c, &epg)?;
            emit(
                &json!({
                    "loops": loops.iter().map(path_json).collect::<Vec<_>>(),
                    "subgroup": subgroup_json(&sub),
                }),
                &out,
            )?;
            Ok(0)
        }
        Command::ThickSpanier { cover, out } => {
            let c = resolve_cover(&corpus, &cover)?;
            let epg = working_group(&c)?;
            let set = thick_spanier_generator_set(&c)?;
            let sub = thick_spanier_generators(&c, &epg)?;
            let pairs: Vec<Value> = set
                .pairs
                .iter()
                .map(|g| {
                    Ok(json!({
                        "elements": [g.elements.0.clone(), g.elements.1.clone()],
                        "access": path_json(&g.access),
                        "gamma1": path_json(&g.gamma1),
                        "gamma2": path_json(&g.gamma2),
                        "word": epg.word_of_loop(&g.loop_path()?)?
                            .to_text(&epg.presentation.generators),
                    }))
                })
                .collect::<Result<_>>()?;
            emit(
                &json!({
                    "ordinary": set.ordinary.iter().map(path_json).collect::<Vec<_>>(),
                    "pairs": pairs,
                    "skipped": set.skipped,
                    "subgroup": subgroup_json(&sub),
                }),
                &out,
            )?;
            Ok(0)
        }
        Command::Exactness { cover, budget, out } => {
            let c = resolve_cover(&corpus, &cover)?;
            let r = exactness_report(&c, &budget.to_budget())?;
            let status = match r.status {
                ReportStatus::Pass => "pass",
                ReportStatus::Fail => "fail",
                ReportStatus::Unknown => "unknown",
            };
            emit(
                &json!({
                    "surjectivity": r
                        .surjectivity
                        .iter()
                        .map(|(g, v)| json!({"generator": g, "verdict": verdict_str(v)}))
                        .collect::<Vec<_>>(),
                    "thick_in_kernel": r.thick_in_kernel.iter().map(verdict_str).collect::<Vec<_>>(),
                    "relator_lifts": r.relator_lifts.iter().map(verdict_str).collect::<Vec<_>>(),
                    "generator_round_trips": r
                        .generator_round_trips
                        .iter()
                        .map(verdict_str)
                        .collect::<Vec<_>>(),
                    "skipped_pairs": r.skipped_pairs,
                    "status": status,
                }),
                &out,
            )?;
            Ok(match r.status {
                ReportStatus::Pass => 0,
                ReportStatus::Fail => 1,
                ReportStatus::Unknown => 2,
            })
        }
        Command::Uhomotopy {
            cover,
            loop_a,
            loop_b,
            out,
        } => {
            let c = resolve_cover(&corpus, &cover)?;
            let alpha = parse_loop(&loop_a, c.working(), c.basepoint())?;
            let beta = match loop_b {
                Some(s) => parse_loop(&s, c.working(), c.basepoint())?,
                None => EdgePath::constant(c.basepoint().clone()),
            };
            match step_equivalent(&alpha, &beta, &c)? {
                Some(chain) => {
                    emit(
                        &json!({
                            "step_equivalent": true,
                            "elements": chain.elements,
                            "cuts_left": chain.cuts_left,
                            "cuts_right": chain.cuts_right,
                        }),
                        &out,
                    )?;
                    Ok(0)
                }
                None => {
                    emit(&json!({"step_equivalent": false}), &out)?;
                    Ok(1)
                }
            }
        }
        Command::Nu {
            cover,
            loop_spec,
            search,
            budget,
            search_budget,
            out,
        } => {
            let c = resolve_cover(&corpus, &cover)?;
            let l = parse_loop(&loop_spec, c.working(), c.basepoint())?;
            if search {
                match null_u_homotopic_bounded(&l, &c, &search_budget.to_budget())? {
                    NullHomotopyVerdict::In { witness } => {
                        emit(
                            &json!({
                                "verdict": "in",
                                "witness": witness.iter().map(path_json).collect::<Vec<_>>(),
                            }),
                            &out,
                        )?;
                        Ok(0)
                    }
                    NullHomotopyVerdict::Unknown { report } => {
                        emit(&json!({"verdict": "unknown", "report": report}), &out)?;
                        Ok(2)
                    }
                }
            } else {
                let m = nu_membership(&l, &c, &budget.to_budget())?;
                emit(&membership_json(&m), &out)?;
                Ok(verdict_exit(&m.verdict))
            }
        }
        Command::Lift {
            cover,
            loop_spec,
            budget,
            out,
        } => {
            let c = resolve_cover(&corpus, &cover)?;
            let nerve = c.build_nerve();
            let e = parse_loop(&loop_spec, &nerve.complex, c.distinguished())?;
            let alpha = lift_nerve_loop(&e, &c, &nerve)?;
            let epg_w = working_group(&c)?;
            let epg_n = edge_path_group(&nerve.complex, c.distinguished())?;
            let canonical = c.canonical_vertex_map(&nerve)?;
            let h = induced_hom(&canonical.map, &epg_w, &epg_n)?;
            let v = verify_lift(&e, &alpha, &h, &epg_w, &epg_n, &budget.to_budget())?;
            emit(
                &json!({
                    "nerve_loop": path_json(&e),
                    "lift": path_json(&alpha),
                    "verified": verdict_str(&v),
                }),
                &out,
            )?;
            Ok(verdict_exit(&v))
        }
        Command::Tower {
            tower,
            loop_spec,
            budget,
            out,
        } => {
            let t = resolve_tower(&corpus, &tower)?;
            let b = budget.to_budget();
            let levels: Vec<Value> = t
                .levels
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let (bv, be, bt) = c.base().counts();
                    json!({
                        "level": k,
                        "elements": c.element_names(),
                        "working_level": c.working_level(),
                        "base_counts": {"vertices": bv, "edges": be, "triangles": bt},
                    })
                })
                .collect();
            let witnesses: Vec<Value> = t
                .witnesses
                .iter()
                .map(|w| match w {
                    RefinementWitness::SameBase { map } => {
                        json!({"kind": "same_base", "map": map})
                    }
                    RefinementWitness::ViaSubdivision { pushes, map } => {
                        json!({"kind": "via_subdivision", "pushes": pushes, "map": map})
                    }
                })
                .collect();
            let mut report = json!({"levels": levels, "witnesses": witnesses});
            let mut code = 0u8;
            if let Some(spec) = loop_spec {
                let basepoint = t.levels[0].basepoint().clone();
                let l = parse_loop(&spec, t.deep_working(), &basepoint)?;
                let img = psi_image(&l, &t, &b)?;
                let ker = ker_psi_probe(&l, &t, &b)?;
                report["psi_image"] = json!({
                    "words": img.rendered,
                    "coherence": img.coherence.iter().map(verdict_str).collect::<Vec<_>>(),
                });
                report["kernel"] = json!({
                    "nerve_trivial": ker.nerve_trivial.iter().map(verdict_str).collect::<Vec<_>>(),
                    "in_thick": ker.in_thick.iter().map(verdict_str).collect::<Vec<_>>(),
                    "in_kernel_at_depth": ker.in_kernel_at_depth,
                });
                code = match ker.in_kernel_at_depth {
                    Some(true) => 0,
                    Some(false) => 1,
                    None => 2,
                };
            }
            emit(&report, &out)?;
            Ok(code)
        }
        Command::ProbeInjectivity {
            tower,
            word_cap,
            budget,
            out,
        } => {
            let t = resolve_tower(&corpus, &tower)?;
            let found = shape_injectivity_probe(&t, word_cap, &budget.to_budget())?;
            let deep = edge_path_group(t.deep_working(), t.levels[0].basepoint())?;
            emit(
                &json!({
                    "word_cap": word_cap,
                    "candidates": found
                        .iter()
                        .map(|w| w.to_text(&deep.presentation.generators))
                        .collect::<Vec<_>>(),
                }),
                &out,
            )?;
            Ok(if found.is_empty() { 0 } else { 2 })
        }
        Command::OpenSubgroup {
            tower,
            words,
            budget,
            out,
        } => {
            let t = resolve_tower(&corpus, &tower)?;
            let root = t.levels[0].base().clone();
            let epg = edge_path_group(&root, t.levels[0].basepoint())?;
            let h: Vec<Word> = words
                .iter()
                .map(|w| Word::parse(w, &epg.presentation.generators))
                .collect::<Result<_>>()?;
            let r = is_open_subgroup(&h, &t, &budget.to_budget())?;
            let covering = r.covering.as_ref().map(|(k, _)| {
                let (v, e, tr) = k.counts();
                json!({"vertices": v, "edges": e, "triangles": tr})
            });
            emit(
                &json!({
                    "verdict": verdict_str(&r.verdict),
                    "level_witness": r.level_witness,
                    "index": r.index,
                    "covering_counts": covering,
                    "report": r.report,
                }),
                &out,
            )?;
            Ok(verdict_exit(&r.verdict))
        }
        Command::Covering {
            complex,
            basepoint,
            words,
            max_cosets,
            out,
        } => {
            let k = resolve_complex(&corpus, &complex)?;
            let bp = basepoint.unwrap_or_else(|| k.vertices()[0].clone());
            let epg = edge_path_group(&k, &bp)?;
            let h: Vec<Word> = words
                .iter()
                .map(|w| Word::parse(w, &epg.presentation.generators))
                .collect::<Result<_>>()?;
            let table = todd_coxeter(&epg.presentation, &h, max_cosets)?;
            if !table.complete {
                emit(
                    &json!({
                        "complete": false,
                        "report": format!("enumeration did not close within {max_cosets} cosets"),
                    }),
                    &out,
                )?;
                return Ok(2);
            }
            let (cover_complex, _projection) = build_covering_complex(&epg, &table)?;
            let (v, e, tr) = cover_complex.counts();
            emit(
                &json!({
                    "complete": true,
                    "index": table.index(),
                    "counts": {"vertices": v, "edges": e, "triangles": tr},
                    "simplices": cover_complex.sorted_simplices(),
                }),
                &out,
            )?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
