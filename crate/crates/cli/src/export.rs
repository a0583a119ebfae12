//! Sociogram renderings for external tools.

use std::fmt::Write as _;
use std::str::FromStr;

use sociokit::model::Sociogram;

use crate::error::CliError;

/// Pen width of the heaviest edge in DOT output.
pub const MAX_PENWIDTH: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    EdgeList,
}

impl FromStr for ExportFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "edge-list" => Ok(ExportFormat::EdgeList),
            other => Err(CliError::UnsupportedFormat(other.to_string())),
        }
    }
}

pub fn export(sociogram: &Sociogram, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => to_dot(sociogram),
        ExportFormat::EdgeList => to_edge_list(sociogram),
    }
}

fn quote(id: &str) -> String {
    format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz text. Nodes appear in roster order and edges in roster-index
/// order; pen width is `MAX_PENWIDTH * weight / max_weight`.
pub fn to_dot(sociogram: &Sociogram) -> String {
    let (keyword, arrow) = if sociogram.directed() {
        ("digraph", "->")
    } else {
        ("graph", "--")
    };
    let edges = sociogram.edges();
    let max = edges.iter().map(|e| e.weight).fold(0.0, f64::max);
    let mut out = String::new();
    writeln!(out, "{keyword} {} {{", sociogram.kind()).unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for p in sociogram.roster().iter() {
        writeln!(out, "  {};", quote(p.as_str())).unwrap();
    }
    for e in &edges {
        writeln!(
            out,
            "  {} {arrow} {} [weight={}, penwidth={}];",
            quote(e.from.as_str()),
            quote(e.to.as_str()),
            e.weight,
            MAX_PENWIDTH * e.weight / max
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn to_edge_list(sociogram: &Sociogram) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["from", "to", "weight"]).expect("in-memory write");
    for e in sociogram.edges() {
        w.write_record([e.from.as_str(), e.to.as_str(), &e.weight.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}
