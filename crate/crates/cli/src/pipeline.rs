//! Line-based pipeline scripts.
//!
//! Grammar (one step per line, `#` starts a comment):
//!
//! ```text
//! gen <name> <n> <d>                 # cyclic polytope C(n, d)
//! sew <name> <src> <pairs> [<label>] # pairs as a:b,c:d vertex labels
//! sew-auto <name> <src> [<label>]    # first tower found, recorded
//! verify <src>                       # validation + neighbourliness +
//!                                    # facet formula; failure stops
//! report <src>                       # summary incl. provenance
//! ```
//!
//! `<name>` binds the step's polytope for later steps; references are
//! checked before anything runs. New-vertex labels default to the first
//! unused `s1`, `s2`, .. in the source polytope. Identical scripts and
//! inputs produce byte-identical outputs.

use std::collections::HashMap;
use std::path::Path;

use polysew::cyclic::{cyclic_polytope, neighbourly_facet_count};
use polysew::neighbourly::is_neighbourly;
use polysew::sewing::sew_with_stats;
use polysew::tower::find_towers;
use polysew::SimplicialPolytope;

use crate::commands::{next_s_label, parse_tower, tower_display};
use crate::format::{self, Metadata};
use crate::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Gen {
        name: String,
        n: usize,
        d: usize,
    },
    Sew {
        name: String,
        src: String,
        pairs: String,
        label: Option<String>,
    },
    SewAuto {
        name: String,
        src: String,
        label: Option<String>,
    },
    Verify {
        src: String,
    },
    Report {
        src: String,
    },
}

/// Parses a script and checks every name reference, before execution.
pub fn parse_script(text: &str) -> CliResult<Vec<Step>> {
    let mut steps = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| CliError::Parse(format!("line {}: {msg}: {raw}", lineno + 1));
        let words: Vec<&str> = line.split_whitespace().collect();
        let step = match words[0] {
            "gen" => {
                if words.len() != 4 {
                    return Err(bad("gen takes <name> <n> <d>"));
                }
                Step::Gen {
                    name: words[1].to_string(),
                    n: words[2].parse().map_err(|_| bad("n must be an integer"))?,
                    d: words[3].parse().map_err(|_| bad("d must be an integer"))?,
                }
            }
            "sew" => {
                if words.len() != 4 && words.len() != 5 {
                    return Err(bad("sew takes <name> <src> <pairs> [<label>]"));
                }
                Step::Sew {
                    name: words[1].to_string(),
                    src: words[2].to_string(),
                    pairs: words[3].to_string(),
                    label: words.get(4).map(|s| s.to_string()),
                }
            }
            "sew-auto" => {
                if words.len() != 3 && words.len() != 4 {
                    return Err(bad("sew-auto takes <name> <src> [<label>]"));
                }
                Step::SewAuto {
                    name: words[1].to_string(),
                    src: words[2].to_string(),
                    label: words.get(3).map(|s| s.to_string()),
                }
            }
            "verify" => {
                if words.len() != 2 {
                    return Err(bad("verify takes <src>"));
                }
                Step::Verify {
                    src: words[1].to_string(),
                }
            }
            "report" => {
                if words.len() != 2 {
                    return Err(bad("report takes <src>"));
                }
                Step::Report {
                    src: words[1].to_string(),
                }
            }
            other => return Err(bad(&format!("unknown step {other:?}"))),
        };
        steps.push(step);
    }

    let mut defined: Vec<&str> = Vec::new();
    for step in &steps {
        let (defines, references): (Option<&str>, Option<&str>) = match step {
            Step::Gen { name, .. } => (Some(name), None),
            Step::Sew { name, src, .. } | Step::SewAuto { name, src, .. } => {
                (Some(name), Some(src))
            }
            Step::Verify { src } | Step::Report { src } => (None, Some(src)),
        };
        if let Some(src) = references {
            if !defined.contains(&src) {
                return Err(CliError::Parse(format!(
                    "step references undefined polytope {src:?}"
                )));
            }
        }
        if let Some(name) = defines {
            if defined.contains(&name) {
                return Err(CliError::Parse(format!(
                    "polytope name {name:?} defined twice"
                )));
            }
            defined.push(name);
        }
    }
    Ok(steps)
}

/// Runs a parsed script; returns the last polytope defined, if any.
pub fn run_steps(steps: &[Step]) -> CliResult<Option<(SimplicialPolytope, Metadata)>> {
    let mut env: HashMap<String, (SimplicialPolytope, Metadata)> = HashMap::new();
    let mut last: Option<String> = None;
    for step in steps {
        match step {
            Step::Gen { name, n, d } => {
                let p = cyclic_polytope(*n, *d).map_err(|e| CliError::Usage(e.to_string()))?;
                println!("[gen] {name} = C({n},{d}): {} facets", p.facet_count());
                let meta = Metadata::line(format!("gen-cyclic n={n} d={d}"));
                env.insert(name.clone(), (p, meta));
                last = Some(name.clone());
            }
            Step::Sew {
                name,
                src,
                pairs,
                label,
            } => {
                let (p, meta) = env.get(src).expect("checked at parse").clone();
                let tower = parse_tower(&p, pairs)?;
                let label = label.clone().unwrap_or_else(|| next_s_label(p.labels()));
                let (sewn, _) = sew_with_stats(&p, &tower, &label)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                println!(
                    "[sew] {name} = {src} + {label} through {}: {} facets",
                    tower_display(&p, &tower),
                    sewn.facet_count()
                );
                let mut meta = meta;
                meta.push(format!(
                    "sew tower={} label={label}",
                    tower_display(&p, &tower)
                ));
                env.insert(name.clone(), (sewn, meta));
                last = Some(name.clone());
            }
            Step::SewAuto { name, src, label } => {
                let (p, meta) = env.get(src).expect("checked at parse").clone();
                let mut towers = find_towers(&p, Some(1))
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                let tower = towers
                    .pop()
                    .ok_or_else(|| CliError::Usage(format!("{src}: no universal tower found")))?;
                let label = label.clone().unwrap_or_else(|| next_s_label(p.labels()));
                let (sewn, _) = sew_with_stats(&p, &tower, &label)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                println!(
                    "[sew-auto] {name} = {src} + {label} through {}: {} facets",
                    tower_display(&p, &tower),
                    sewn.facet_count()
                );
                let mut meta = meta;
                meta.push(format!(
                    "sew-auto tower={} label={label}",
                    tower_display(&p, &tower)
                ));
                env.insert(name.clone(), (sewn, meta));
                last = Some(name.clone());
            }
            Step::Verify { src } => {
                let (p, _) = env.get(src).expect("checked at parse");
                if !is_neighbourly(p) {
                    return Err(CliError::Verification(format!("{src} is not neighbourly")));
                }
                let formula = neighbourly_facet_count(p.vertex_count(), p.dim());
                match formula {
                    Some(expected) if expected == p.facet_count() as u64 => {}
                    Some(expected) => {
                        return Err(CliError::Verification(format!(
                            "{src}: facet count {} != formula {expected}",
                            p.facet_count()
                        )));
                    }
                    None => {
                        return Err(CliError::Verification(format!(
                            "{src}: facet formula needs an even dimension"
                        )));
                    }
                }
                println!(
                    "[verify] {src}: ok (neighbourly, {} facets match the formula)",
                    p.facet_count()
                );
            }
            Step::Report { src } => {
                let (p, meta) = env.get(src).expect("checked at parse");
                println!(
                    "[report] {src}: dim {}, {} vertices, {} facets, neighbourly: {}",
                    p.dim(),
                    p.vertex_count(),
                    p.facet_count(),
                    if is_neighbourly(p) { "yes" } else { "no" }
                );
                for line in &meta.provenance {
                    println!("[report]   {line}");
                }
            }
        }
    }
    Ok(last.map(|name| env.remove(&name).expect("defined")))
}

pub fn cmd_pipeline(script: &Path, out: Option<&Path>) -> CliResult<()> {
    let text = std::fs::read_to_string(script).map_err(|e| CliError::io(script, e))?;
    let steps = parse_script(&text)?;
    let last = run_steps(&steps)?;
    match (last, out) {
        (Some((p, meta)), Some(path)) => {
            format::save(path, &p, &meta)?;
            println!("final polytope -> {}", path.display());
        }
        (None, Some(_)) => {
            println!("script defined no polytope; nothing written");
        }
        _ => {}
    }
    Ok(())
}
