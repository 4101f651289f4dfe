//! Implementations of the CLI subcommands.

use std::path::Path;

use polysew::cyclic::{cyclic_polytope, neighbourly_facet_count};
use polysew::neighbourly::is_neighbourly;
use polysew::sewing::{sew_bbp_oracle, sew_with_stats};
use polysew::tower::{find_towers, validate_tower, UniversalTower};
use polysew::tracking::{sew_with_tracking, UniversalCatalog};
use polysew::{SimplicialPolytope, VertexId};

use crate::format::{self, Metadata};
use crate::{CliError, CliResult};

pub fn cmd_gen_cyclic(n: usize, d: usize, out: &Path) -> CliResult<()> {
    let p = cyclic_polytope(n, d).map_err(|e| CliError::Usage(e.to_string()))?;
    let meta = Metadata::line(format!("gen-cyclic n={n} d={d}"));
    format::save(out, &p, &meta)?;
    println!(
        "wrote C({n},{d}): {} facets -> {}",
        p.facet_count(),
        out.display()
    );
    Ok(())
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOpts {
    pub neighbourly: bool,
    pub facet_formula: bool,
    pub universal_dims: bool,
}

pub fn cmd_verify(path: &Path, opts: VerifyOpts) -> CliResult<()> {
    let (p, _) = format::load(path)?;
    println!(
        "validation: ok (dim {}, {} vertices, {} facets)",
        p.dim(),
        p.vertex_count(),
        p.facet_count()
    );
    if opts.neighbourly {
        if !is_neighbourly(&p) {
            println!("neighbourly: NO");
            return Err(CliError::Verification("polytope is not neighbourly".into()));
        }
        println!("neighbourly: yes");
    }
    if opts.facet_formula {
        let m = p.dim() / 2;
        match neighbourly_facet_count(p.vertex_count(), p.dim()) {
            Some(expected) if expected == p.facet_count() as u64 => {
                println!(
                    "facet count: {} = C({},{m}) + C({},{}) ok",
                    expected,
                    p.vertex_count() - m,
                    p.vertex_count() - m - 1,
                    m - 1
                );
            }
            Some(expected) => {
                println!("facet count: {} != expected {expected}", p.facet_count());
                return Err(CliError::Verification(format!(
                    "facet count {} does not match the neighbourly formula {expected}",
                    p.facet_count()
                )));
            }
            None => {
                return Err(CliError::Verification(
                    "facet formula applies to even dimensions only".into(),
                ));
            }
        }
    }
    if opts.universal_dims {
        let catalog = brute_catalog_parallel(&p)
            .map_err(|e| CliError::Verification(e.to_string()))?;
        for dim in catalog.dimensions().collect::<Vec<_>>() {
            println!(
                "universal {dim}-faces: {}",
                catalog.for_dimension(dim).unwrap().len()
            );
        }
    }
    Ok(())
}

/// Brute-force catalog with the per-dimension enumerations optionally
/// spread over POLYSEW_THREADS scoped threads; results are joined in
/// dimension order, so the output does not depend on the thread count.
pub fn brute_catalog_parallel(p: &SimplicialPolytope) -> polysew::Result<UniversalCatalog> {
    if thread_count() <= 1 {
        return UniversalCatalog::brute_force(p);
    }
    let d = p.dim();
    if !d.is_multiple_of(2) || d < 4 {
        return UniversalCatalog::brute_force(p);
    }
    let m = d / 2;
    let lists: Vec<polysew::Result<Vec<polysew::VertexSet>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (1..=m)
            .map(|j| {
                scope.spawn(move || {
                    if 2 * j - 1 == d - 1 {
                        Ok(p.facets().to_vec())
                    } else {
                        polysew::neighbourly::universal_faces(p, 2 * j - 1)
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration threads do not panic"))
            .collect()
    });
    let mut out = Vec::with_capacity(m);
    for list in lists {
        out.push(list?);
    }
    Ok(UniversalCatalog::from_parts(p, out))
}

pub fn thread_count() -> usize {
    std::env::var("POLYSEW_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SewOpts {
    pub oracle_check: bool,
    pub track_universal: bool,
}

/// Parses a tower given as label pairs `a:b,c:d` against a polytope.
pub fn parse_tower(p: &SimplicialPolytope, spec: &str) -> CliResult<UniversalTower> {
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
    for part in spec.split(',') {
        let (a, b) = part
            .split_once(':')
            .ok_or_else(|| CliError::Usage(format!("tower pair {part:?} is not label:label")))?;
        let resolve = |label: &str| {
            p.id_of_label(label.trim())
                .ok_or_else(|| CliError::Usage(format!("unknown vertex label {label:?}")))
        };
        pairs.push((resolve(a)?, resolve(b)?));
    }
    validate_tower(p, &pairs).map_err(|e| CliError::Usage(format!("tower rejected: {e}")))
}

pub fn cmd_sew(
    input: &Path,
    tower_spec: &str,
    label: Option<String>,
    out: &Path,
    opts: SewOpts,
) -> CliResult<()> {
    let (p, mut meta) = format::load(input)?;
    let tower = parse_tower(&p, tower_spec)?;
    let label = label.unwrap_or_else(|| next_s_label(p.labels()));
    sew_to_file(&p, &tower, &label, &mut meta, out, opts)?;
    Ok(())
}

/// First unused label of the form `s1`, `s2`, ..
pub fn next_s_label(labels: &[String]) -> String {
    let mut k = 1;
    loop {
        let candidate = format!("s{k}");
        if !labels.iter().any(|l| l == &candidate) {
            return candidate;
        }
        k += 1;
    }
}

/// Runs the sewing (with tracking and oracle cross-check as requested),
/// appends provenance and writes the output file plus the optional
/// catalog sidecar.
pub fn sew_to_file(
    p: &SimplicialPolytope,
    tower: &UniversalTower,
    label: &str,
    meta: &mut Metadata,
    out: &Path,
    opts: SewOpts,
) -> CliResult<SimplicialPolytope> {
    let spec = tower_display(p, tower);
    let (sewn, catalog) = if opts.track_universal {
        let input_catalog = brute_catalog_parallel(p)
            .map_err(|e| CliError::Usage(format!("cannot build input catalog: {e}")))?;
        let (sewn, catalog) = sew_with_tracking(p, tower, &input_catalog, label)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        (sewn, Some(catalog))
    } else {
        let (sewn, _) =
            sew_with_stats(p, tower, label).map_err(|e| CliError::Usage(e.to_string()))?;
        (sewn, None)
    };
    if opts.oracle_check {
        let oracle =
            sew_bbp_oracle(p, tower, label).map_err(|e| CliError::Usage(e.to_string()))?;
        if oracle.facets() != sewn.facets() {
            return Err(CliError::OracleMismatch(format!(
                "recursive sewing and beyond-beneath oracle disagree on tower {spec}"
            )));
        }
        println!("oracle check: ok ({} facets agree)", sewn.facet_count());
    }
    meta.push(format!("sew tower={spec} label={label}"));
    format::save(out, &sewn, meta)?;
    if let Some(catalog) = catalog {
        let sidecar = format::catalog_sidecar_path(out);
        std::fs::write(&sidecar, format::catalog_to_json(&sewn, &catalog))
            .map_err(|e| CliError::io(&sidecar, e))?;
        println!("wrote universal-face catalog -> {}", sidecar.display());
    }
    println!(
        "sewed {label}: {} vertices, {} facets -> {}",
        sewn.vertex_count(),
        sewn.facet_count(),
        out.display()
    );
    Ok(sewn)
}

pub fn tower_display(p: &SimplicialPolytope, t: &UniversalTower) -> String {
    t.pairs()
        .iter()
        .map(|&(x, y)| format!("{}:{}", p.label(x), p.label(y)))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn cmd_towers(path: &Path, limit: usize) -> CliResult<()> {
    let (p, _) = format::load(path)?;
    if p.dim() % 2 == 0 && p.vertex_count() < p.dim() + 3 {
        eprintln!(
            "warning: {} vertices < {}; towers are listed but sewing will refuse this polytope",
            p.vertex_count(),
            p.dim() + 3
        );
    }
    let limit = if limit == 0 { None } else { Some(limit) };
    let towers = find_towers(&p, limit).map_err(|e| CliError::Usage(e.to_string()))?;
    for t in &towers {
        println!("{}", tower_display(&p, t));
    }
    println!("{} tower(s)", towers.len());
    Ok(())
}
