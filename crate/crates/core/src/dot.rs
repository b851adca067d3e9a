//! Graphviz DOT export. Every element carries a `color` attribute for
//! drawing and a numeric `tcolor` so the coloring can be read back.

use std::fmt::Write;

use crate::coloring::{Color, Coloring};
use crate::graph::{ElementRef, Graph};
use crate::kempe::Mcap;

/// Hazel has no X11 name, so it goes out as a hex value.
pub const HAZEL_HEX: &str = "#8E7618";

const EXTENDED: [&str; 8] = [
    "orange", "purple", "cyan", "magenta", "brown", "pink", "olive", "navy",
];

fn draw_color(c: Color) -> String {
    match c {
        0 => HAZEL_HEX.to_string(),
        1 => "red".to_string(),
        2 => "blue".to_string(),
        3 => "green".to_string(),
        c => EXTENDED
            .get(c as usize - 4)
            .map(|s| s.to_string())
            .unwrap_or_else(|| "gray".to_string()),
    }
}

fn color_attrs(c: Color) -> String {
    let mut s = format!("color=\"{}\", tcolor={c}", draw_color(c));
    if c == 0 {
        s.push_str(", colorname=\"hazel\"");
    }
    s
}

fn header(g: &Graph, name: Option<&str>) -> String {
    let id = name
        .or(g.name())
        .unwrap_or("G")
        .replace(|ch: char| !ch.is_ascii_alphanumeric() && ch != '_', "_");
    format!("graph {id} {{\n  node [shape=circle, style=filled, fontcolor=white];\n")
}

/// Plain graph without colors.
pub fn graph_to_dot(g: &Graph, name: Option<&str>) -> String {
    let mut out = header(g, name);
    out.push_str("  node [style=solid, fontcolor=black];\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  {v};");
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

/// Colored graph; β-edges are dashed and the elements of `highlight`, if
/// given, are drawn thick.
pub fn coloring_to_dot(mu: &Coloring, name: Option<&str>, highlight: Option<&Mcap>) -> String {
    let g = mu.graph();
    let marked: Vec<ElementRef> = highlight.map(|p| p.elements()).unwrap_or_default();
    let beta = mu.beta_edges();
    let mut out = header(g, name);
    for v in 0..g.vertex_count() {
        let c = mu.vertex_color(v);
        let mut attrs = format!("label=\"{v}\", fillcolor=\"{}\", {}", draw_color(c), color_attrs(c));
        if marked.contains(&ElementRef::Vertex(v)) {
            attrs.push_str(", penwidth=3");
        }
        let _ = writeln!(out, "  {v} [{attrs}];");
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let c = mu.edge_color(e);
        let mut attrs = color_attrs(c);
        if beta.contains(&e) {
            attrs.push_str(", style=dashed");
        }
        if marked.contains(&ElementRef::Edge(e)) {
            attrs.push_str(", penwidth=3");
        }
        let _ = writeln!(out, "  {u} -- {v} [{attrs}];");
    }
    out.push_str("}\n");
    out
}

/// Reads the `tcolor` attributes back out of a DOT document produced by
/// [`coloring_to_dot`], as `(vertex colors, edge colors keyed by endpoints)`.
pub fn read_tcolors(dot: &str) -> (Vec<(usize, Color)>, Vec<((usize, usize), Color)>) {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for line in dot.lines().map(str::trim) {
        let Some((head, attrs)) = line.split_once('[') else {
            continue;
        };
        let Some(tc) = attrs
            .split(',')
            .map(str::trim)
            .find_map(|a| a.strip_prefix("tcolor="))
            .and_then(|t| t.trim_end_matches(['[', ']', ';']).parse::<Color>().ok())
        else {
            continue;
        };
        let head = head.trim();
        if let Some((u, v)) = head.split_once("--") {
            if let (Ok(u), Ok(v)) = (u.trim().parse(), v.trim().parse()) {
                edges.push(((u, v), tc));
            }
        } else if let Ok(v) = head.parse() {
            vertices.push((v, tc));
        }
    }
    (vertices, edges)
}
