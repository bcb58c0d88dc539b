use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nervelab::constructions::{build_c, cap_complex, collar};
use nervelab::corpus::{corpus, CorpusEntry};
use nervelab::covers::{blowup_complex, classify_cover, verify_nerve_theorem};
use nervelab::deleted_product::{deleted_product, fineness_check_sd, in_metastable_range};
use nervelab::homology::{
    abelianization, chain_homology, edge_path_presentation, homology, homology_mod_p,
    tietze_simplify, DEFAULT_TIETZE_BUDGET,
};
use nervelab::io::{facet_labels, parse_complex, parse_cover_with};
use nervelab::neighborhoods::{greedy_collapse, DerivedAmbient};
use nervelab::subdivision::{sd_n_capped, DEFAULT_MAX_FACETS};
use nervelab::verify::{run_suite, VerifyConfig, SUITES};
use nervelab::{Error, Simplex, SimplicialComplex};

#[derive(Parser)]
#[command(name = "nervelab", version, about = "Simplicial complexes, covers, nerves and derived neighborhoods")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Refuse subdivisions predicted to exceed this many facets.
    #[arg(long, env = "NERVELAB_MAX_FACETS", default_value_t = DEFAULT_MAX_FACETS, global = true)]
    max_facets: u128,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CorpusChoice {
    Full,
    Small,
}

#[derive(Subcommand)]
enum Command {
    /// Iterated barycentric subdivision.
    Sd {
        complex: PathBuf,
        #[arg(long, default_value_t = 1)]
        times: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integral or mod-p homology.
    Homology {
        complex: PathBuf,
        #[arg(long)]
        reduced: bool,
        #[arg(long = "mod", value_name = "P")]
        modulus: Option<u64>,
    },
    /// Edge-path presentation of the fundamental group, simplified.
    Pi1 {
        complex: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TIETZE_BUDGET)]
        budget: usize,
    },
    /// Nerve of a cover, with a classification of its intersections.
    Nerve {
        cover: PathBuf,
        #[arg(long)]
        drop_empty: bool,
    },
    /// Blowup complex of a cover and its homology.
    Blowup {
        cover: PathBuf,
        #[arg(long)]
        drop_empty: bool,
    },
    /// Derived neighborhood of L in the second subdivision of M.
    DerivedNbhd { ambient: PathBuf, core: PathBuf },
    /// Complement of the derived neighborhood of L.
    Complement { ambient: PathBuf, core: PathBuf },
    /// Greedy elementary collapse.
    Collapse { complex: PathBuf },
    /// The collar of a given dimension.
    Collar {
        #[arg(long)]
        dim: usize,
    },
    /// Remove a facet and attach a collar along its boundary.
    BuildC {
        sigma: PathBuf,
        /// Comma-separated labels of the facet to remove.
        #[arg(long, value_delimiter = ',', required = true)]
        facet: Vec<String>,
    },
    /// Close the free end of a collared complex.
    Cap { complex: PathBuf },
    /// Simplicial deleted product.
    DeletedProduct {
        complex: PathBuf,
        #[arg(long)]
        homology: bool,
    },
    /// Remoteness test for sd K over K.
    Fineness { complex: PathBuf },
    /// Whether 3k <= 2d - 3.
    Metastable { k: u64, d: u64 },
    /// Run a property suite.
    Verify {
        suite: String,
        files: Vec<PathBuf>,
        #[arg(long, value_enum)]
        corpus: Option<CorpusChoice>,
        #[arg(long)]
        drop_empty: bool,
    },
    /// List the bundled corpus, or print one entry.
    Corpus { name: Option<String> },
}

/// Exit 2 for usage and input problems.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(Value, String, bool), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<(String, SimplicialComplex), Failure> {
    let (name, k) = parse_complex(&read(path)?)?;
    let name = if name.is_empty() {
        path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
    } else {
        name
    };
    Ok((name, k))
}

fn complex_json(name: &str, k: &SimplicialComplex) -> Value {
    json!({ "name": name, "facets": facet_labels(k), "f_vector": k.f_vector() })
}

fn complex_text(name: &str, k: &SimplicialComplex) -> String {
    let facets: Vec<String> = k.facets().iter().map(ToString::to_string).collect();
    format!("{name}: f-vector {:?}\n{}\n", k.f_vector(), facets.join(" "))
}

fn run(cli: &Cli) -> Outcome {
    let cap = cli.max_facets;
    match &cli.command {
        Command::Sd { complex, times, out } => {
            let (name, k) = load_complex(complex)?;
            let sub = sd_n_capped(&k, *times, cap)?;
            let out_name = format!("sd{times}({name})");
            let value = json!({ "name": out_name, "facets": facet_labels(&sub) });
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&value).expect("json");
                fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            }
            let text = complex_text(&out_name, &sub);
            Ok((value, text, true))
        }
        Command::Homology { complex, reduced, modulus } => {
            let (name, k) = load_complex(complex)?;
            let h = match modulus {
                Some(p) => homology_mod_p(&k, *reduced, *p)?,
                None => homology(&k, *reduced),
            };
            let text = format!("{name}: {h}\n");
            Ok((json!({ "name": name, "homology": h }), text, true))
        }
        Command::Pi1 { complex, budget } => {
            let (name, k) = load_complex(complex)?;
            let p = edge_path_presentation(&k)?;
            let ab = abelianization(&p);
            let outcome = tietze_simplify(&p, *budget);
            let text = format!(
                "{name}\nedge-path: {p}\nsimplified ({:?}, {} moves): {}\nabelianization: {ab}\n",
                outcome.status, outcome.moves, outcome.presentation
            );
            let value = json!({
                "name": name,
                "presentation": p,
                "simplified": outcome,
                "abelianization": ab,
            });
            Ok((value, text, true))
        }
        Command::Nerve { cover, drop_empty } => {
            let cover = parse_cover_with(&read(cover)?, *drop_empty)?;
            let nerve = cover.nerve();
            let class = classify_cover(&cover)?;
            let text = format!("{}cover class: {:?}\n", complex_text("nerve", &nerve), class.class);
            Ok((json!({ "nerve": complex_json("nerve", &nerve), "classification": class }), text, true))
        }
        Command::Blowup { cover, drop_empty } => {
            let cover = parse_cover_with(&read(cover)?, *drop_empty)?;
            let blowup = blowup_complex(&cover)?;
            let h = chain_homology(&blowup.chain_complex(), false);
            let report = verify_nerve_theorem(&cover)?;
            let counts: Vec<Value> = blowup
                .bidegree_counts()
                .into_iter()
                .map(|((p, q), n)| json!({ "nerve_dim": p, "member_dim": q, "cells": n }))
                .collect();
            let text = format!("blowup: {} cells, H = {h}\nnerve theorem agrees: {}\n", blowup.len(), report.agrees());
            let value = json!({
                "cells": blowup.len(),
                "bidegrees": counts,
                "homology": h,
                "nerve_theorem": report,
            });
            Ok((value, text, true))
        }
        Command::DerivedNbhd { ambient, core } | Command::Complement { ambient, core } => {
            let (_, m) = load_complex(ambient)?;
            let (l_name, l) = load_complex(core)?;
            let amb = DerivedAmbient::with_cap(&m, cap)?;
            let (label, k) = if matches!(cli.command, Command::DerivedNbhd { .. }) {
                (format!("N({l_name})"), amb.neighborhood(&l)?)
            } else {
                (format!("complement({l_name})"), amb.complement(&l)?)
            };
            let components = k.connected_components().len();
            let mut value = complex_json(&label, &k);
            value["components"] = json!(components);
            let text = format!("{}{components} components\n", complex_text(&label, &k));
            Ok((value, text, true))
        }
        Command::Collapse { complex } => {
            let (name, k) = load_complex(complex)?;
            let outcome = greedy_collapse(&k)?;
            let text = format!("{name}: {outcome:?}\n");
            Ok((json!({ "name": name, "collapse": outcome }), text, true))
        }
        Command::Collar { dim } => {
            let g = collar(*dim)?;
            let name = format!("collar-{dim}");
            Ok((complex_json(&name, &g), complex_text(&name, &g), true))
        }
        Command::BuildC { sigma, facet } => {
            let (name, s) = load_complex(sigma)?;
            let facet = Simplex::from_labels(facet)?;
            let c = build_c(&s, &facet)?;
            let label = format!("C({name})");
            let mut value = complex_json(&label, &c.c);
            value["removed_facet"] = json!(facet.vertices().iter().map(|v| v.as_str()).collect::<Vec<_>>());
            value["collar_vertices"] = json!(c.collar_vertices.iter().map(|v| v.as_str()).collect::<Vec<_>>());
            Ok((value, complex_text(&label, &c.c), true))
        }
        Command::Cap { complex } => {
            let (name, c) = load_complex(complex)?;
            let capped = cap_complex(&c)?;
            let label = format!("cap({name})");
            Ok((complex_json(&label, &capped), complex_text(&label, &capped), true))
        }
        Command::DeletedProduct { complex, homology: with_h } => {
            let (name, k) = load_complex(complex)?;
            let dp = deleted_product(&k)?;
            let counts: Vec<Value> = dp
                .cells()
                .bidegree_counts()
                .into_iter()
                .map(|((p, q), n)| json!({ "left_dim": p, "right_dim": q, "cells": n }))
                .collect();
            let mut value = json!({
                "name": name,
                "cells": dp.cells().len(),
                "bidegrees": counts,
                "involution_free": dp.involution_is_free(),
            });
            let mut text = format!("{name}: {} cells, involution free {}\n", dp.cells().len(), dp.involution_is_free());
            if *with_h {
                let h = dp.homology(false);
                text.push_str(&format!("H = {h}\n"));
                value["homology"] = json!(h);
            }
            Ok((value, text, true))
        }
        Command::Fineness { complex } => {
            let (name, k) = load_complex(complex)?;
            let report = fineness_check_sd(&k)?;
            let ok = report.passed();
            Ok((json!({ "name": name, "fineness": report }), format!("{name}: {report:?}\n"), ok))
        }
        Command::Metastable { k, d } => {
            if *d == 0 {
                return Err(Failure("d must be at least 1".into()));
            }
            let inside = in_metastable_range(*k, *d);
            Ok((json!({ "k": k, "d": d, "metastable": inside }), format!("{inside}\n"), true))
        }
        Command::Verify { suite, files, corpus: choice, drop_empty } => verify(suite, files, *choice, *drop_empty, cap),
        Command::Corpus { name } => {
            let entries = corpus();
            match name {
                Some(n) => {
                    let e = entries
                        .iter()
                        .find(|e| &e.name == n)
                        .ok_or_else(|| Failure(format!("no corpus entry `{n}`")))?;
                    Ok((complex_json(&e.name, &e.complex), complex_text(&e.name, &e.complex), true))
                }
                None => {
                    let list: Vec<Value> = entries
                        .iter()
                        .map(|e| json!({ "name": e.name, "f_vector": e.complex.f_vector() }))
                        .collect();
                    let text: String = entries
                        .iter()
                        .map(|e| format!("{:20} {:?}\n", e.name, e.complex.f_vector()))
                        .collect();
                    Ok((json!(list), text, true))
                }
            }
        }
    }
}

fn verify(
    suite: &str,
    files: &[PathBuf],
    choice: Option<CorpusChoice>,
    drop_empty: bool,
    cap: u128,
) -> Outcome {
    if !SUITES.contains(&suite) {
        return Err(Failure(format!("unknown suite `{suite}`; expected one of {}", SUITES.join(", "))));
    }
    let mut config = match choice {
        Some(CorpusChoice::Small) => VerifyConfig::small(),
        _ => VerifyConfig::default(),
    };
    config.max_facets = cap;
    if !files.is_empty() {
        match suite {
            "nerve-theorem" => {
                let covers = files
                    .iter()
                    .map(|f| {
                        let name = f.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                        Ok((name, parse_cover_with(&read(f)?, drop_empty)?))
                    })
                    .collect::<Result<Vec<_>, Failure>>()?;
                config.covers = Some(covers);
            }
            "representation" => {
                let [k, m] = files else {
                    return Err(Failure("representation takes <K.json> <M.json>".into()));
                };
                let (name, k) = load_complex(k)?;
                let (_, m) = load_complex(m)?;
                config.pairs = Some(vec![(name, k, m)]);
            }
            _ => {
                let entries = files
                    .iter()
                    .map(|f| load_complex(f).map(|(name, complex)| CorpusEntry { name, complex }))
                    .collect::<Result<Vec<_>, Failure>>()?;
                config.complexes = Some(entries);
            }
        }
    }
    let report = run_suite(suite, &config)?;
    let ok = report.exit_code() == 0;
    Ok((serde_json::to_value(&report).expect("json"), report.to_text(), ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, text, ok)) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
                Format::Text => print!("{text}"),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("nervelab: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;
    use nervelab::corpus::corpus_small;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn small_corpus_is_a_subset() {
        let full: Vec<String> = corpus().into_iter().map(|e| e.name).collect();
        assert!(corpus_small().iter().all(|e| full.contains(&e.name)));
    }
}
