//! Two-color alternating paths and the swaps along them.
//!
//! An alternating path from `v0` (colored `c0`) starts with a `c1` edge and
//! then alternates `c0`, `c1`, ... It is an MCAP when it stops at a vertex
//! colored with the pair color its last edge does not have. In a semi-total
//! coloring such a path is automatically maximal: interior vertices can
//! never carry `c0` or `c1`, and the end vertex cannot continue.
//!
//! Exchanging `c0` and `c1` on the path's skeleton (both end vertices and
//! every edge) gives another semi-total coloring.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::graph::ElementRef;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mcap {
    /// `v_0 .. v_k`.
    pub vertices: Vec<usize>,
    /// `e_1 .. e_k`; `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
    pub edges: Vec<usize>,
    pub c0: Color,
    pub c1: Color,
}

impl Mcap {
    /// Number of edges.
    pub fn k(&self) -> usize {
        self.edges.len()
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// The recolored elements: both end vertices and all edges, in path order.
    pub fn skeleton(&self) -> Vec<ElementRef> {
        let mut s = Vec::with_capacity(self.k() + 2);
        s.push(ElementRef::Vertex(self.start()));
        s.extend(self.edges.iter().map(|&e| ElementRef::Edge(e)));
        s.push(ElementRef::Vertex(self.end()));
        s
    }

    /// Every vertex and edge along the path, alternating.
    pub fn elements(&self) -> Vec<ElementRef> {
        let mut out = Vec::with_capacity(2 * self.k() + 1);
        for (i, &v) in self.vertices.iter().enumerate() {
            out.push(ElementRef::Vertex(v));
            if let Some(&e) = self.edges.get(i) {
                out.push(ElementRef::Edge(e));
            }
        }
        out
    }

    /// Builds the path through `vertices` under `mu`, taking `c0` from the
    /// first vertex and `c1` from the first edge, and checks it.
    pub fn from_vertices(mu: &Coloring, vertices: &[usize]) -> Result<Mcap> {
        if vertices.len() < 2 {
            return Err(Error::PathMismatch("a path needs at least two vertices".into()));
        }
        let g = mu.graph();
        let mut edges = Vec::with_capacity(vertices.len() - 1);
        for w in vertices.windows(2) {
            g.check_vertex(w[0])?;
            g.check_vertex(w[1])?;
            edges.push(g.edge_between(w[0], w[1]).ok_or(Error::NotAdjacent(w[0], w[1]))?);
        }
        let path = Mcap {
            vertices: vertices.to_vec(),
            c0: mu.vertex_color(vertices[0]),
            c1: mu.edge_color(edges[0]),
            edges,
        };
        path.check_against(mu)?;
        Ok(path)
    }

    /// Rebuilds a path from an alternating element list
    /// `[v0, e1, v1, ..., ek, vk]`.
    pub fn from_elements(mu: &Coloring, elements: &[ElementRef]) -> Result<Mcap> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (i, el) in elements.iter().enumerate() {
            match (i % 2, el) {
                (0, ElementRef::Vertex(v)) => vertices.push(*v),
                (1, ElementRef::Edge(e)) => edges.push(*e),
                _ => {
                    return Err(Error::PathMismatch(
                        "elements must alternate vertex, edge, ..., vertex".into(),
                    ))
                }
            }
        }
        let path = Mcap::from_vertices(mu, &vertices)?;
        if path.edges != edges {
            return Err(Error::PathMismatch("edge indices do not join the listed vertices".into()));
        }
        Ok(path)
    }

    /// Checks the path is simple, connected, alternating under `mu` and ends
    /// at a terminal vertex.
    pub fn check_against(&self, mu: &Coloring) -> Result<()> {
        let g = mu.graph();
        let mismatch = |m: String| Err(Error::PathMismatch(m));
        if self.c0 == self.c1 {
            return Err(Error::EqualColors(self.c0 as usize));
        }
        if self.edges.is_empty() || self.vertices.len() != self.edges.len() + 1 {
            return mismatch("a path of k edges needs k + 1 vertices, k ≥ 1".into());
        }
        let distinct: BTreeSet<_> = self.vertices.iter().collect();
        if distinct.len() != self.vertices.len() {
            return mismatch("path repeats a vertex".into());
        }
        for (i, &e) in self.edges.iter().enumerate() {
            let (a, b) = g.check_edge(e)?;
            let (u, v) = (self.vertices[i], self.vertices[i + 1]);
            if (a, b) != (u.min(v), u.max(v)) {
                return mismatch(format!("edge {e} does not join {u} and {v}"));
            }
            let want = if i % 2 == 0 { self.c1 } else { self.c0 };
            if mu.edge_color(e) != want {
                return mismatch(format!(
                    "edge {e} has color {}, expected {want}",
                    mu.edge_color(e)
                ));
            }
        }
        if mu.vertex_color(self.start()) != self.c0 {
            return Err(Error::StartColor {
                vertex: self.start(),
                expected: self.c0 as usize,
                actual: mu.vertex_color(self.start()) as usize,
            });
        }
        let last_edge = mu.edge_color(*self.edges.last().unwrap());
        let end = mu.vertex_color(self.end());
        if (end != self.c0 && end != self.c1) || end == last_edge {
            return mismatch(format!(
                "end vertex {} has color {end}, which does not terminate the path",
                self.end()
            ));
        }
        Ok(())
    }

    /// The same path read from the other end.
    pub fn reversed(&self, mu: &Coloring) -> Mcap {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        Mcap {
            c0: mu.vertex_color(vertices[0]),
            c1: mu.edge_color(edges[0]),
            vertices,
            edges,
        }
    }

    /// Color path in subscript notation, e.g. `1_3 2_1 0_3 1`.
    pub fn signature(&self, mu: &Coloring) -> String {
        let mut parts: Vec<String> = self
            .edges
            .iter()
            .zip(&self.vertices)
            .map(|(&e, &v)| format!("{}_{}", mu.vertex_color(v), mu.edge_color(e)))
            .collect();
        parts.push(mu.vertex_color(self.end()).to_string());
        parts.join(" ")
    }
}

impl fmt::Display for Mcap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(usize::to_string).collect();
        write!(f, "({}) colors ({},{})", vs.join(","), self.c0, self.c1)
    }
}

/// Follows the alternating walk from `v0`. Returns `None` when `v0` has no
/// `c1` edge or the walk stops at a vertex that does not terminate it.
pub fn trace_alternating(mu: &Coloring, v0: usize, c0: Color, c1: Color) -> Result<Option<Mcap>> {
    mu.require_stc()?;
    mu.graph().check_vertex(v0)?;
    Ok(walk(mu, v0, c0, c1)?)
}

// The walk itself, for callers that already know `mu` is a valid STC.
fn walk(mu: &Coloring, v0: usize, c0: Color, c1: Color) -> Result<Option<Mcap>> {
    if c0 == c1 {
        return Err(Error::EqualColors(c0 as usize));
    }
    if mu.vertex_color(v0) != c0 {
        return Err(Error::StartColor {
            vertex: v0,
            expected: c0 as usize,
            actual: mu.vertex_color(v0) as usize,
        });
    }
    let g = mu.graph();
    let mut vertices = vec![v0];
    let mut edges = Vec::new();
    let mut seen = vec![false; g.vertex_count()];
    seen[v0] = true;
    let mut cur = v0;
    let mut want = c1;
    loop {
        // Properness means at most one edge of each color meets `cur`.
        let mut next = g
            .incident_edges(cur)
            .iter()
            .filter(|&&e| mu.edge_color(e) == want);
        let Some(&e) = next.next() else {
            return Ok(None);
        };
        debug_assert!(next.next().is_none(), "edge coloring is not proper");
        let w = g.other_endpoint(e, cur);
        if seen[w] {
            return Ok(None);
        }
        seen[w] = true;
        vertices.push(w);
        edges.push(e);
        let wc = mu.vertex_color(w);
        if wc == c0 || wc == c1 {
            // wc != want, since `w` is incident to an edge of color `want`
            return Ok(Some(Mcap {
                vertices,
                edges,
                c0,
                c1,
            }));
        }
        cur = w;
        want = if want == c1 { c0 } else { c1 };
    }
}

/// All MCAPs with at least two edges. Single-edge MCAPs are exactly the
/// β-edges and are handled by [`flip_beta_edge`].
///
/// Paths are found by start vertex, then `c0`, then `c1`, and each path is
/// reported once, from its lower-numbered end. A `pair` filter keeps paths
/// whose two colors are that pair, in either order.
pub fn enumerate_mcaps(mu: &Coloring, pair: Option<(Color, Color)>) -> Result<Vec<Mcap>> {
    mu.require_stc()?;
    if let Some((a, b)) = pair {
        if a == b {
            return Err(Error::EqualColors(a as usize));
        }
        let palette = mu.palette();
        for c in [a, b] {
            if c as usize >= palette {
                return Err(Error::ColorOutOfRange {
                    color: c as usize,
                    palette,
                });
            }
        }
    }
    Ok(enumerate_unchecked(mu, pair))
}

pub(crate) fn enumerate_unchecked(mu: &Coloring, pair: Option<(Color, Color)>) -> Vec<Mcap> {
    let mut out = Vec::new();
    let palette = mu.palette() as Color;
    for v in 0..mu.graph().vertex_count() {
        let c0 = mu.vertex_color(v);
        for c1 in 0..palette {
            if c1 == c0 {
                continue;
            }
            if let Some((a, b)) = pair {
                if !((c0, c1) == (a, b) || (c0, c1) == (b, a)) {
                    continue;
                }
            }
            if let Ok(Some(p)) = walk(mu, v, c0, c1) {
                if p.k() >= 2 && p.start() < p.end() {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Exchanges `c0` and `c1` on the skeleton of `path`.
pub fn swap(mu: &Coloring, path: &Mcap) -> Result<Coloring> {
    mu.require_stc()?;
    path.check_against(mu)?;
    let out = swap_unchecked(mu, path);
    if !out.is_stc() {
        return Err(Error::PostValidation(
            out.validate()
                .stc_violations()
                .first()
                .map(|v| v.to_string())
                .unwrap_or_default(),
        ));
    }
    Ok(out)
}

pub(crate) fn swap_unchecked(mu: &Coloring, path: &Mcap) -> Coloring {
    let exchange = |c: Color| {
        if c == path.c0 {
            path.c1
        } else if c == path.c1 {
            path.c0
        } else {
            c
        }
    };
    let mut out = mu.clone();
    for el in path.skeleton() {
        let c = exchange(mu.color_of(el));
        out.set(el, c).expect("colors stay in palette");
    }
    out
}

/// Recolors a β-edge `e = uv` with `μ(u) = μ(v) = c0`, `μ(e) = c1`: the
/// endpoints take `c1` and the edge takes `c0`.
pub fn flip_beta_edge(mu: &Coloring, edge: usize) -> Result<Coloring> {
    mu.require_stc()?;
    let path = beta_edge_path(mu, edge)?;
    let out = swap_unchecked(mu, &path);
    if !out.is_stc() {
        return Err(Error::PostValidation(format!("flip of edge {edge}")));
    }
    Ok(out)
}

/// The single-edge path for a β-edge, oriented from its lower endpoint.
pub fn beta_edge_path(mu: &Coloring, edge: usize) -> Result<Mcap> {
    let (u, v) = mu.graph().check_edge(edge)?;
    if mu.vertex_color(u) != mu.vertex_color(v) {
        return Err(Error::NotBetaEdge(edge));
    }
    Ok(Mcap {
        vertices: vec![u, v],
        edges: vec![edge],
        c0: mu.vertex_color(u),
        c1: mu.edge_color(edge),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepClass {
    PartialBeta,
    TotalBeta,
    PartialGamma,
    TotalGamma,
    BetaGamma { total_beta: bool, total_gamma: bool },
    Neutral,
}

impl StepClass {
    /// Classifies a move from `(β, γ)` to `(β', γ')`.
    pub fn from_scores(before: (usize, usize), after: (usize, usize)) -> StepClass {
        let beta_down = after.0 < before.0;
        let gamma_down = after.1 < before.1;
        let total_beta = after.0 == 0;
        let total_gamma = after.1 <= 1;
        match (beta_down, gamma_down) {
            (true, true) => StepClass::BetaGamma {
                total_beta,
                total_gamma,
            },
            (true, false) if total_beta => StepClass::TotalBeta,
            (true, false) => StepClass::PartialBeta,
            (false, true) if total_gamma => StepClass::TotalGamma,
            (false, true) => StepClass::PartialGamma,
            (false, false) => StepClass::Neutral,
        }
    }

    /// Stable identifier used in JSON.
    pub fn as_str(&self) -> &'static str {
        match self {
            StepClass::PartialBeta => "partial-beta",
            StepClass::TotalBeta => "total-beta",
            StepClass::PartialGamma => "partial-gamma",
            StepClass::TotalGamma => "total-gamma",
            StepClass::BetaGamma { .. } => "beta-gamma",
            StepClass::Neutral => "neutral",
        }
    }

    pub fn reduces_beta(&self) -> bool {
        matches!(
            self,
            StepClass::PartialBeta | StepClass::TotalBeta | StepClass::BetaGamma { .. }
        )
    }

    pub fn reduces_gamma(&self) -> bool {
        matches!(
            self,
            StepClass::PartialGamma | StepClass::TotalGamma | StepClass::BetaGamma { .. }
        )
    }
}

impl fmt::Display for StepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |total: bool| if total { "total" } else { "partial" };
        match self {
            StepClass::PartialBeta => f.write_str("partial β-reduction"),
            StepClass::TotalBeta => f.write_str("total β-reduction"),
            StepClass::PartialGamma => f.write_str("partial γ-reduction"),
            StepClass::TotalGamma => f.write_str("total γ-reduction"),
            StepClass::BetaGamma {
                total_beta,
                total_gamma,
            } if total_beta == total_gamma => write!(f, "{} β-γ-reduction", word(*total_beta)),
            StepClass::BetaGamma {
                total_beta,
                total_gamma,
            } => write!(
                f,
                "{} β-reduction and {} γ-reduction",
                word(*total_beta),
                word(*total_gamma)
            ),
            StepClass::Neutral => f.write_str("neutral"),
        }
    }
}

impl Serialize for StepClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

pub fn classify_step(before: &Coloring, after: &Coloring) -> Result<StepClass> {
    if !before.same_graph(after) {
        return Err(Error::GraphMismatch);
    }
    Ok(StepClass::from_scores(
        (before.beta(), before.gamma()),
        (after.beta(), after.gamma()),
    ))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::families::{cycle_graph, lcf};
    use crate::pattern::{apply_pattern, PatternString};

    fn q3_stc() -> Coloring {
        let (g, h) = lcf("[3,-3]^4").unwrap();
        let g = Arc::new(g);
        let p = PatternString::parse("1_0 1_2 0_1 2_0 1_2 1_0 2_1 0_2").unwrap();
        apply_pattern(&g, &h, &p, None).unwrap()
    }

    #[test]
    fn q3_path_and_swap() {
        let mu = q3_stc();
        assert_eq!(mu.beta(), 2);
        let p = trace_alternating(&mu, 0, 1, 3).unwrap().unwrap();
        assert_eq!(p.vertices, vec![0, 3, 2, 5]);
        assert_eq!(p.signature(&mu), "1_3 2_1 0_3 1");
        let skel: Vec<Color> = p.skeleton().iter().map(|&e| mu.color_of(e)).collect();
        assert_eq!(skel, vec![1, 3, 1, 3, 1]);
        let nu = swap(&mu, &p).unwrap();
        assert_eq!(p.signature(&nu), "3_1 2_3 0_1 3");
        assert!(nu.is_tc());
        assert_eq!(nu.totals(), vec![5, 5, 5, 5]);
        assert_eq!(mu.diff(&nu).unwrap().len(), p.k() + 2);
        assert_eq!(
            classify_step(&mu, &nu).unwrap(),
            StepClass::BetaGamma {
                total_beta: true,
                total_gamma: true
            }
        );
        // swapping back along the reversed roles restores the original
        let back = Mcap {
            c0: 3,
            c1: 1,
            ..p.clone()
        };
        assert_eq!(swap(&nu, &back).unwrap(), mu);
        assert!(enumerate_mcaps(&mu, None).unwrap().contains(&p));
    }

    #[test]
    fn no_edge_of_second_color() {
        let g = Arc::new(cycle_graph(6).unwrap());
        // vertices 0,1,2,... edges alternate: a proper TC of C6 with 3 colors
        let mu = Coloring::new(g, vec![0, 1, 2, 0, 1, 2], vec![2, 1, 0, 1, 2, 0]).unwrap();
        assert!(mu.is_tc());
        // vertex 0 has edges colored 2 (to 1) and 1 (edge 5-0 is index 1)
        for c1 in [1, 2] {
            let _ = trace_alternating(&mu, 0, 0, c1).unwrap();
        }
        assert!(trace_alternating(&mu, 0, 1, 2).is_err());
        assert!(enumerate_mcaps(&mu, Some((1, 1))).is_err());
    }

    #[test]
    fn flips_are_involutions() {
        let mu = q3_stc();
        for e in mu.beta_edges() {
            let once = flip_beta_edge(&mu, e).unwrap();
            assert!(once.is_stc());
            let twice = flip_beta_edge(&once, e).unwrap();
            assert_eq!(twice, mu);
        }
        let not_beta = (0..mu.graph().edge_count())
            .find(|e| !mu.beta_edges().contains(e))
            .unwrap();
        assert_eq!(flip_beta_edge(&mu, not_beta).unwrap_err(), Error::NotBetaEdge(not_beta));
    }

    #[test]
    fn stale_path_rejected() {
        let mu = q3_stc();
        let p = trace_alternating(&mu, 0, 1, 3).unwrap().unwrap();
        let nu = swap(&mu, &p).unwrap();
        assert!(matches!(
            swap(&nu, &p),
            Err(Error::StartColor { .. } | Error::PathMismatch(_))
        ));
    }

    #[test]
    fn from_vertices_and_elements() {
        let mu = q3_stc();
        let p = Mcap::from_vertices(&mu, &[0, 3, 2, 5]).unwrap();
        assert_eq!((p.c0, p.c1), (1, 3));
        assert_eq!(Mcap::from_elements(&mu, &p.elements()).unwrap(), p);
        assert!(Mcap::from_vertices(&mu, &[0, 3, 2]).is_err());
        assert!(Mcap::from_vertices(&mu, &[0, 2]).is_err());
    }

    #[test]
    fn classification_table() {
        use StepClass::*;
        assert_eq!(StepClass::from_scores((4, 4), (2, 2)), BetaGamma { total_beta: false, total_gamma: false });
        assert_eq!(StepClass::from_scores((2, 3), (2, 3)), Neutral);
        assert_eq!(StepClass::from_scores((2, 3), (1, 5)), PartialBeta);
        assert_eq!(StepClass::from_scores((2, 3), (0, 3)), TotalBeta);
        assert_eq!(StepClass::from_scores((0, 3), (0, 2)), PartialGamma);
        assert_eq!(StepClass::from_scores((0, 3), (0, 1)), TotalGamma);
        assert_eq!(
            BetaGamma { total_beta: false, total_gamma: false }.to_string(),
            "partial β-γ-reduction"
        );
    }
}
