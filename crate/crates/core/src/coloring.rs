//! Total assignments of colors to vertices and edges, and the checks that
//! decide whether such an assignment is semi-total or total.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ElementRef, Graph, GraphJson};

pub type Color = u16;

/// Conventional names for the first four colors; larger palettes fall back
/// to `c<k>`.
pub const COLOR_NAMES: [&str; 4] = ["hazel", "red", "blue", "green"];

pub fn color_name(c: Color) -> String {
    COLOR_NAMES
        .get(c as usize)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("c{c}"))
}

/// One broken constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Two edges at `vertex` share `color`.
    EdgeConflict {
        vertex: usize,
        edges: (usize, usize),
        color: Color,
    },
    /// `vertex` has the same color as incident `edge`.
    VertexEdge {
        vertex: usize,
        edge: usize,
        color: Color,
    },
    /// Both endpoints of `edge` have `color` (a β-edge). Only breaks totality.
    VertexAdjacent { edge: usize, color: Color },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EdgeConflict {
                vertex,
                edges: (a, b),
                color,
            } => write!(f, "edges {a} and {b} at vertex {vertex} both have color {color}"),
            Violation::VertexEdge {
                vertex,
                edge,
                color,
            } => write!(f, "vertex {vertex} and incident edge {edge} both have color {color}"),
            Violation::VertexAdjacent { edge, color } => {
                write!(f, "endpoints of edge {edge} both have color {color}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub proper_edges: bool,
    pub vertex_incidence: bool,
    pub vertex_adjacency: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_stc(&self) -> bool {
        self.proper_edges && self.vertex_incidence
    }

    pub fn is_tc(&self) -> bool {
        self.is_stc() && self.vertex_adjacency
    }

    /// Violations that break semi-totality (β-edges excluded).
    pub fn stc_violations(&self) -> Vec<Violation> {
        self.violations
            .iter()
            .filter(|v| !matches!(v, Violation::VertexAdjacent { .. }))
            .cloned()
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub color: Color,
    pub vertices: usize,
    pub edges: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassListing {
    pub classes: Vec<ClassCount>,
    pub beta: usize,
    pub gamma: usize,
    pub is_stc: bool,
    pub is_tc: bool,
    pub is_equitable: bool,
    pub lacunar_colors: Vec<Color>,
}

impl ClassListing {
    pub fn totals(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.total).collect()
    }

    pub fn element_count(&self) -> usize {
        self.classes.iter().map(|c| c.total).sum()
    }

    /// Totals sorted ascending, for comparisons that ignore color names.
    pub fn total_multiset(&self) -> Vec<usize> {
        let mut t = self.totals();
        t.sort_unstable();
        t
    }
}

/// Renders a listing one class per line as `c(v+e=t)`, followed by a summary
/// `Name(t0,t1,...)`. When repeated totals make it shorter, the summary also
/// gives the compressed multiset, e.g. `Q3(5,5,5,5)=Q3(5^4)`.
pub fn format_listing(listing: &ClassListing, name: &str) -> String {
    let mut out = String::new();
    for c in &listing.classes {
        out.push_str(&format!("{}({}+{}={})\n", c.color, c.vertices, c.edges, c.total));
    }
    let plain = listing
        .totals()
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let compressed = compress_totals(&listing.totals());
    out.push_str(&format!("{name}({plain})"));
    if compressed.len() < plain.len() {
        out.push_str(&format!("={name}({compressed})"));
    }
    out
}

fn compress_totals(totals: &[usize]) -> String {
    let mut sorted = totals.to_vec();
    sorted.sort_unstable();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&t| t == sorted[i]).count();
        parts.push(if j > 1 {
            format!("{}^{}", sorted[i], j)
        } else {
            sorted[i].to_string()
        });
        i += j;
    }
    parts.join(",")
}

/// A color for every vertex and every edge of a graph, drawn from the
/// palette `0..=Δ`. Validity is a computed property, so broken colorings can
/// be built and inspected.
#[derive(Debug, Clone)]
pub struct Coloring {
    graph: Arc<Graph>,
    vertex_colors: Vec<Color>,
    edge_colors: Vec<Color>,
}

impl PartialEq for Coloring {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.graph, &other.graph) || self.graph == other.graph)
            && self.vertex_colors == other.vertex_colors
            && self.edge_colors == other.edge_colors
    }
}

impl Eq for Coloring {}

impl Coloring {
    pub fn new(graph: Arc<Graph>, vertex_colors: Vec<Color>, edge_colors: Vec<Color>) -> Result<Self> {
        if vertex_colors.len() != graph.vertex_count() {
            return Err(Error::ColoringShape {
                what: "vertex",
                got: vertex_colors.len(),
                expected: graph.vertex_count(),
            });
        }
        if edge_colors.len() != graph.edge_count() {
            return Err(Error::ColoringShape {
                what: "edge",
                got: edge_colors.len(),
                expected: graph.edge_count(),
            });
        }
        let palette = graph.max_degree() + 1;
        if let Some(&c) = vertex_colors
            .iter()
            .chain(&edge_colors)
            .find(|&&c| c as usize >= palette)
        {
            return Err(Error::ColorOutOfRange {
                color: c as usize,
                palette,
            });
        }
        Ok(Coloring {
            graph,
            vertex_colors,
            edge_colors,
        })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn palette(&self) -> usize {
        self.graph.max_degree() + 1
    }

    pub fn vertex_colors(&self) -> &[Color] {
        &self.vertex_colors
    }

    pub fn edge_colors(&self) -> &[Color] {
        &self.edge_colors
    }

    pub fn vertex_color(&self, v: usize) -> Color {
        self.vertex_colors[v]
    }

    pub fn edge_color(&self, e: usize) -> Color {
        self.edge_colors[e]
    }

    pub fn color_of(&self, el: ElementRef) -> Color {
        match el {
            ElementRef::Vertex(v) => self.vertex_colors[v],
            ElementRef::Edge(e) => self.edge_colors[e],
        }
    }

    /// Sets one element's color. Range is checked; validity is not.
    pub fn set(&mut self, el: ElementRef, color: Color) -> Result<()> {
        let palette = self.palette();
        if color as usize >= palette {
            return Err(Error::ColorOutOfRange {
                color: color as usize,
                palette,
            });
        }
        match el {
            ElementRef::Vertex(v) => {
                self.graph.check_vertex(v)?;
                self.vertex_colors[v] = color;
            }
            ElementRef::Edge(e) => {
                self.graph.check_edge(e)?;
                self.edge_colors[e] = color;
            }
        }
        Ok(())
    }

    pub fn same_graph(&self, other: &Coloring) -> bool {
        Arc::ptr_eq(&self.graph, &other.graph) || *self.graph == *other.graph
    }

    pub fn validate(&self) -> ValidationReport {
        let g = &*self.graph;
        let mut violations = Vec::new();
        let mut proper_edges = true;
        let mut vertex_incidence = true;
        let mut vertex_adjacency = true;
        for v in 0..g.vertex_count() {
            let inc = g.incident_edges(v);
            for (i, &a) in inc.iter().enumerate() {
                for &b in &inc[i + 1..] {
                    if self.edge_colors[a] == self.edge_colors[b] {
                        proper_edges = false;
                        violations.push(Violation::EdgeConflict {
                            vertex: v,
                            edges: (a.min(b), a.max(b)),
                            color: self.edge_colors[a],
                        });
                    }
                }
                if self.edge_colors[a] == self.vertex_colors[v] {
                    vertex_incidence = false;
                    violations.push(Violation::VertexEdge {
                        vertex: v,
                        edge: a,
                        color: self.vertex_colors[v],
                    });
                }
            }
        }
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if self.vertex_colors[u] == self.vertex_colors[v] {
                vertex_adjacency = false;
                violations.push(Violation::VertexAdjacent {
                    edge: e,
                    color: self.vertex_colors[u],
                });
            }
        }
        ValidationReport {
            proper_edges,
            vertex_incidence,
            vertex_adjacency,
            violations,
        }
    }

    pub fn is_stc(&self) -> bool {
        let g = &*self.graph;
        (0..g.vertex_count()).all(|v| {
            let inc = g.incident_edges(v);
            inc.iter().enumerate().all(|(i, &a)| {
                self.edge_colors[a] != self.vertex_colors[v]
                    && inc[i + 1..]
                        .iter()
                        .all(|&b| self.edge_colors[a] != self.edge_colors[b])
            })
        })
    }

    pub fn is_tc(&self) -> bool {
        self.is_stc() && self.beta() == 0
    }

    /// Errors with the full violation list unless this is a valid STC.
    pub fn require_stc(&self) -> Result<()> {
        if self.is_stc() {
            Ok(())
        } else {
            Err(Error::NotSemiTotal(self.validate().stc_violations()))
        }
    }

    pub fn beta_edges(&self) -> Vec<usize> {
        self.graph
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| self.vertex_colors[u] == self.vertex_colors[v])
            .map(|(e, _)| e)
            .collect()
    }

    pub fn beta(&self) -> usize {
        self.graph
            .edges()
            .iter()
            .filter(|&&(u, v)| self.vertex_colors[u] == self.vertex_colors[v])
            .count()
    }

    /// Class totals `|V^c| + |E^c|` in color order.
    pub fn totals(&self) -> Vec<usize> {
        let mut t = vec![0; self.palette()];
        for &c in self.vertex_colors.iter().chain(&self.edge_colors) {
            t[c as usize] += 1;
        }
        t
    }

    pub fn gamma(&self) -> usize {
        let t = self.totals();
        t.iter().max().unwrap_or(&0) - t.iter().min().unwrap_or(&0)
    }

    pub fn is_equitable(&self) -> bool {
        self.gamma() <= 1
    }

    /// Colors used by no vertex.
    pub fn lacunar_colors(&self) -> Vec<Color> {
        let used: BTreeSet<Color> = self.vertex_colors.iter().copied().collect();
        (0..self.palette() as Color).filter(|c| !used.contains(c)).collect()
    }

    pub fn is_lacunar(&self) -> bool {
        !self.lacunar_colors().is_empty()
    }

    pub fn vertex_class(&self, c: Color) -> Vec<usize> {
        (0..self.vertex_colors.len())
            .filter(|&v| self.vertex_colors[v] == c)
            .collect()
    }

    pub fn listing(&self) -> ClassListing {
        let palette = self.palette();
        let mut classes: Vec<ClassCount> = (0..palette)
            .map(|c| ClassCount {
                color: c as Color,
                vertices: 0,
                edges: 0,
                total: 0,
            })
            .collect();
        for &c in &self.vertex_colors {
            classes[c as usize].vertices += 1;
        }
        for &c in &self.edge_colors {
            classes[c as usize].edges += 1;
        }
        for c in &mut classes {
            c.total = c.vertices + c.edges;
        }
        let max = classes.iter().map(|c| c.total).max().unwrap_or(0);
        let min = classes.iter().map(|c| c.total).min().unwrap_or(0);
        let beta = self.beta();
        let is_stc = self.is_stc();
        ClassListing {
            lacunar_colors: classes
                .iter()
                .filter(|c| c.vertices == 0)
                .map(|c| c.color)
                .collect(),
            classes,
            beta,
            gamma: max - min,
            is_stc,
            is_tc: is_stc && beta == 0,
            is_equitable: max - min <= 1,
        }
    }

    /// Elements whose colors differ between two colorings of one graph.
    pub fn diff(&self, other: &Coloring) -> Result<Vec<ElementRef>> {
        if !self.same_graph(other) {
            return Err(Error::GraphMismatch);
        }
        let vs = (0..self.vertex_colors.len())
            .filter(|&v| self.vertex_colors[v] != other.vertex_colors[v])
            .map(ElementRef::Vertex);
        let es = (0..self.edge_colors.len())
            .filter(|&e| self.edge_colors[e] != other.edge_colors[e])
            .map(ElementRef::Edge);
        Ok(vs.chain(es).collect())
    }

    pub(crate) fn from_parts_unchecked(
        graph: Arc<Graph>,
        vertex_colors: Vec<Color>,
        edge_colors: Vec<Color>,
    ) -> Self {
        Coloring {
            graph,
            vertex_colors,
            edge_colors,
        }
    }

    /// JSON form with the graph inlined.
    pub fn to_json(&self) -> ColoringJson {
        ColoringJson {
            graph: GraphRef::Inline(self.graph.to_json()),
            palette: self.palette(),
            vertex_colors: self.vertex_colors.clone(),
            edge_colors: self.edge_colors.clone(),
        }
    }

    /// JSON form referring to the graph by name.
    pub fn to_json_named(&self, name: &str) -> ColoringJson {
        ColoringJson {
            graph: GraphRef::Name(name.to_string()),
            ..self.to_json()
        }
    }

    /// Parses a coloring. A named graph reference is resolved with `resolve`.
    pub fn from_json(
        json: &ColoringJson,
        resolve: impl FnOnce(&str) -> Result<Arc<Graph>>,
    ) -> Result<Self> {
        let graph = match &json.graph {
            GraphRef::Inline(g) => Arc::new(Graph::from_json(g)?),
            GraphRef::Name(name) => resolve(name)?,
        };
        if json.palette != graph.max_degree() + 1 {
            return Err(Error::ColorOutOfRange {
                color: json.palette.saturating_sub(1),
                palette: graph.max_degree() + 1,
            });
        }
        Coloring::new(graph, json.vertex_colors.clone(), json.edge_colors.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphRef {
    Name(String),
    Inline(GraphJson),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub graph: GraphRef,
    pub palette: usize,
    pub vertex_colors: Vec<Color>,
    pub edge_colors: Vec<Color>,
}
