//! On-disk polytope formats.
//!
//! Two serializations are supported, chosen by file extension:
//!
//! * **JSON** (any extension except `.txt`/`.facets`) — the
//!   authoritative, versioned format. Facets reference vertices by
//!   label; optional metadata records how the polytope was produced.
//! * **Plain text** (`.txt` or `.facets`) — one facet per line for human
//!   diffing, with the vertex labels declared in id order on a header
//!   line. Labels must be whitespace-free here.
//!
//! Both emitters are deterministic: identical polytopes yield identical
//! bytes, and parsing what was emitted reproduces the polytope exactly,
//! label binding included.

use std::path::Path;

use polysew::tracking::UniversalCatalog;
use polysew::SimplicialPolytope;
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

pub const POLYTOPE_FORMAT: &str = "polysew/polytope";
pub const CATALOG_FORMAT: &str = "polysew/universal-catalog";
pub const FORMAT_VERSION: u32 = 1;

/// Provenance lines carried alongside a polytope: which generator made
/// it and which sewings it went through. Free of timestamps and paths so
/// identical runs write identical bytes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<String>,
}

impl Metadata {
    pub fn line(step: impl Into<String>) -> Metadata {
        Metadata {
            provenance: vec![step.into()],
        }
    }

    pub fn push(&mut self, step: impl Into<String>) {
        self.provenance.push(step.into());
    }
}

#[derive(Serialize, Deserialize)]
struct PolytopeFile {
    format: String,
    version: u32,
    dim: usize,
    labels: Vec<String>,
    facets: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<Metadata>,
}

pub fn to_json(p: &SimplicialPolytope, meta: &Metadata) -> String {
    let file = PolytopeFile {
        format: POLYTOPE_FORMAT.to_string(),
        version: FORMAT_VERSION,
        dim: p.dim(),
        labels: p.labels().to_vec(),
        facets: p
            .facets()
            .iter()
            .map(|f| f.iter().map(|v| p.label(v).to_string()).collect())
            .collect(),
        metadata: if meta.provenance.is_empty() {
            None
        } else {
            Some(meta.clone())
        },
    };
    let mut text = serde_json::to_string_pretty(&file).expect("serialization cannot fail");
    text.push('\n');
    text
}

pub fn from_json(text: &str) -> CliResult<(SimplicialPolytope, Metadata)> {
    let file: PolytopeFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("bad polytope file: {e}")))?;
    if file.format != POLYTOPE_FORMAT {
        return Err(CliError::Parse(format!(
            "unexpected format {:?}, wanted {POLYTOPE_FORMAT:?}",
            file.format
        )));
    }
    if file.version != FORMAT_VERSION {
        return Err(CliError::Parse(format!(
            "unsupported version {}, this build reads {FORMAT_VERSION}",
            file.version
        )));
    }
    let polytope = build_polytope(file.dim, file.labels, &file.facets)?;
    Ok((polytope, file.metadata.unwrap_or_default()))
}

pub fn to_text(p: &SimplicialPolytope) -> CliResult<String> {
    for label in p.labels() {
        if label.chars().any(char::is_whitespace) || label.is_empty() {
            return Err(CliError::Usage(format!(
                "label {label:?} cannot be written to the text format; use JSON"
            )));
        }
    }
    let mut out = String::new();
    out.push_str(&format!("# polysew facets v{FORMAT_VERSION}\n"));
    out.push_str(&format!("# dim: {}\n", p.dim()));
    out.push_str(&format!("# vertices: {}\n", p.labels().join(" ")));
    for facet in p.facets() {
        let line: Vec<&str> = facet.iter().map(|v| p.label(v)).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    Ok(out)
}

pub fn from_text(text: &str) -> CliResult<(SimplicialPolytope, Metadata)> {
    let mut dim: Option<usize> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut facets: Vec<Vec<String>> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(v) = rest.strip_prefix("dim:") {
                dim = Some(
                    v.trim()
                        .parse()
                        .map_err(|_| CliError::Parse(format!("bad dim line: {line}")))?,
                );
            } else if let Some(v) = rest.strip_prefix("vertices:") {
                labels = Some(v.split_whitespace().map(str::to_string).collect());
            }
            continue;
        }
        facets.push(line.split_whitespace().map(str::to_string).collect());
    }
    let dim = dim.ok_or_else(|| CliError::Parse("missing '# dim:' header".into()))?;
    let labels = labels.ok_or_else(|| CliError::Parse("missing '# vertices:' header".into()))?;
    let polytope = build_polytope(dim, labels, &facets)?;
    Ok((polytope, Metadata::default()))
}

fn build_polytope(
    dim: usize,
    labels: Vec<String>,
    facets: &[Vec<String>],
) -> CliResult<SimplicialPolytope> {
    let mut sets = Vec::with_capacity(facets.len());
    {
        let index: std::collections::HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        for facet in facets {
            let mut ids = Vec::with_capacity(facet.len());
            for label in facet {
                let id = index.get(label.as_str()).ok_or_else(|| {
                    CliError::Parse(format!("facet references undeclared vertex {label:?}"))
                })?;
                ids.push(*id);
            }
            sets.push(
                polysew::VertexSet::from_indices(ids)
                    .map_err(|e| CliError::Parse(e.to_string()))?,
            );
        }
    }
    SimplicialPolytope::new(dim, labels, sets)
        .map_err(|e| CliError::Verification(format!("polytope validation: {e}")))
}

fn is_text_path(path: &Path) -> bool {
    matches!(
        path.extension().and_then(|e| e.to_str()),
        Some("txt") | Some("facets")
    )
}

/// Reads a polytope from disk, dispatching on the extension. Malformed
/// files are parse errors; well-formed files describing invalid
/// polytopes are verification failures.
pub fn load(path: &Path) -> CliResult<(SimplicialPolytope, Metadata)> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    if is_text_path(path) {
        from_text(&text)
    } else {
        from_json(&text)
    }
}

/// Writes a polytope to disk, dispatching on the extension. The text
/// format drops metadata.
pub fn save(path: &Path, p: &SimplicialPolytope, meta: &Metadata) -> CliResult<()> {
    let text = if is_text_path(path) {
        to_text(p)?
    } else {
        to_json(p, meta)
    };
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

#[derive(Serialize)]
struct CatalogFile<'a> {
    format: &'a str,
    version: u32,
    lists: Vec<CatalogList>,
}

#[derive(Serialize)]
struct CatalogList {
    dim: usize,
    faces: Vec<Vec<String>>,
}

/// Serializes a universal-face catalog (the sidecar written by
/// `sew --track-universal`).
pub fn catalog_to_json(p: &SimplicialPolytope, catalog: &UniversalCatalog) -> String {
    let lists = catalog
        .dimensions()
        .map(|dim| CatalogList {
            dim,
            faces: catalog
                .for_dimension(dim)
                .expect("dimension comes from the catalog")
                .iter()
                .map(|u| u.iter().map(|v| p.label(v).to_string()).collect())
                .collect(),
        })
        .collect();
    let file = CatalogFile {
        format: CATALOG_FORMAT,
        version: FORMAT_VERSION,
        lists,
    };
    let mut text = serde_json::to_string_pretty(&file).expect("serialization cannot fail");
    text.push('\n');
    text
}

/// Path of the catalog sidecar for an output path: `x.json` ->
/// `x.catalog.json`.
pub fn catalog_sidecar_path(out: &Path) -> std::path::PathBuf {
    let stem = out
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("catalog");
    out.with_file_name(format!("{stem}.catalog.json"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use polysew::cyclic::cyclic_polytope;

    #[test]
    fn json_round_trip_is_exact() {
        let p = cyclic_polytope(7, 4).unwrap();
        let meta = Metadata::line("gen-cyclic n=7 d=4");
        let text = to_json(&p, &meta);
        let (q, meta2) = from_json(&text).unwrap();
        assert_eq!(p, q);
        assert_eq!(meta, meta2);
        assert_eq!(to_json(&q, &meta2), text);
    }

    #[test]
    fn text_round_trip_is_exact() {
        let p = cyclic_polytope(6, 4).unwrap();
        let text = to_text(&p).unwrap();
        let (q, _) = from_text(&text).unwrap();
        assert_eq!(p, q);
        assert_eq!(to_text(&q).unwrap(), text);
    }

    #[test]
    fn both_formats_round_trip_the_corpus() {
        let c74 = cyclic_polytope(7, 4).unwrap();
        let tower = polysew::tower::find_towers(&c74, Some(1)).unwrap().remove(0);
        let sewn = polysew::sewing::sew(&c74, &tower, "s1").unwrap();
        let corpus = [
            cyclic_polytope(5, 2).unwrap(),
            cyclic_polytope(6, 4).unwrap(),
            c74,
            cyclic_polytope(9, 6).unwrap(),
            sewn,
        ];
        for p in corpus {
            let json = to_json(&p, &Metadata::default());
            assert_eq!(from_json(&json).unwrap().0, p);
            let text = to_text(&p).unwrap();
            assert_eq!(from_text(&text).unwrap().0, p);
        }
    }

    #[test]
    fn unknown_labels_are_parse_errors() {
        let p = cyclic_polytope(5, 2).unwrap();
        let text = to_json(&p, &Metadata::default()).replace("\"3\",\n", "\"x\",\n");
        match from_json(&text) {
            Err(CliError::Parse(_)) => {}
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn invalid_polytopes_are_verification_failures() {
        let p = cyclic_polytope(6, 4).unwrap();
        let mut json: serde_json::Value = serde_json::from_str(&to_json(&p, &Metadata::default())).unwrap();
        let facets = json["facets"].as_array_mut().unwrap();
        facets.pop();
        let broken = serde_json::to_string(&json).unwrap();
        match from_json(&broken) {
            Err(CliError::Verification(msg)) => assert!(msg.contains("ridge"), "{msg}"),
            other => panic!("expected verification failure, got {other:?}"),
        }
    }

    #[test]
    fn sidecar_path_replaces_extension() {
        assert_eq!(
            catalog_sidecar_path(Path::new("/tmp/out.json")),
            Path::new("/tmp/out.catalog.json")
        );
        assert_eq!(
            catalog_sidecar_path(Path::new("p8.txt")),
            Path::new("p8.catalog.json")
        );
    }
}
