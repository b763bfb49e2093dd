//! Resolving graph and map arguments.
//!
//! A graph argument is a path to an edge-list file. When no such file exists,
//! its stem is tried as a named graph, so `petersen.g`, `k4.g`, `c5`, `w6.g`
//! work without fixture files. The prefixes are `k` complete, `c` cycle,
//! `p` path, `s` star, `w` wheel, `d` discrete.

use std::path::Path;

use graph_lefschetz::dynamics::{parse_inline_map, parse_map_file};
use graph_lefschetz::graph::{generate_from_spec, generate_named, parse_edge_list, FAMILIES};
use graph_lefschetz::{Graph, GraphMap};

pub struct LoadedGraph {
    pub label: String,
    pub graph: Graph,
}

fn alias(stem: &str) -> Option<(String, Graph)> {
    if FAMILIES.contains(&stem) {
        return generate_named(stem, 0).ok().map(|g| (stem.to_string(), g));
    }
    let split = stem.find(|c: char| c.is_ascii_digit())?;
    let (prefix, digits) = stem.split_at(split);
    let k: usize = digits.parse().ok()?;
    let family = match prefix.to_ascii_lowercase().as_str() {
        "k" => "complete",
        "c" => "cycle",
        "p" => "path",
        "s" => "star",
        "w" => "wheel",
        "d" => "discrete",
        _ => return None,
    };
    generate_named(family, k).ok().map(|g| (format!("{family}:{k}"), g))
}

pub fn load_graph(path: Option<&str>, named: Option<&str>) -> Result<LoadedGraph, String> {
    match (path, named) {
        (Some(_), Some(_)) => Err("give either a graph file or --named, not both".into()),
        (None, None) => Err("no graph given: pass a file or --named <name>[:<k>]".into()),
        (None, Some(spec)) => generate_from_spec(spec)
            .map(|graph| LoadedGraph {
                label: spec.to_string(),
                graph,
            })
            .map_err(|e| format!("--named {spec}: {e}")),
        (Some(path), None) => {
            let p = Path::new(path);
            match std::fs::read_to_string(p) {
                Ok(text) => parse_edge_list(&text)
                    .map(|graph| LoadedGraph {
                        label: path.to_string(),
                        graph,
                    })
                    .map_err(|e| format!("{path}: {e}")),
                Err(io) => {
                    let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or(path);
                    alias(stem)
                        .map(|(label, graph)| LoadedGraph { label, graph })
                        .ok_or_else(|| format!("{path}: {io}"))
                }
            }
        }
    }
}

pub fn load_map(g: &Graph, inline: Option<&str>, file: Option<&str>) -> Result<Option<GraphMap>, String> {
    let image = match (inline, file) {
        (Some(_), Some(_)) => return Err("give either --map or --map-file, not both".into()),
        (None, None) => return Ok(None),
        (Some(text), None) => parse_inline_map(text).map_err(|e| format!("--map: {e}"))?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            parse_map_file(&text).map_err(|e| format!("{path}: {e}"))?
        }
    };
    GraphMap::validate(g, image).map(Some).map_err(|e| format!("invalid map: {e}"))
}
