//! Perfect codes, total perfect codes and the coloring properties built on
//! them.
//!
//! A perfect code here is an independent set `S` such that every vertex
//! outside `S` has exactly one neighbor in `S`. A total perfect code is a
//! set `S` such that every vertex, in `S` or not, has exactly one neighbor
//! in `S`.

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::graph::Graph;

fn membership(g: &Graph, set: &[usize]) -> Option<Vec<bool>> {
    let mut inside = vec![false; g.vertex_count()];
    for &v in set {
        *inside.get_mut(v)? = true;
    }
    Some(inside)
}

fn neighbors_inside(g: &Graph, inside: &[bool], v: usize) -> usize {
    g.neighbors(v).iter().filter(|&&w| inside[w]).count()
}

/// `false` when `set` names a vertex outside the graph.
pub fn is_perfect_code(g: &Graph, set: &[usize]) -> bool {
    let Some(inside) = membership(g, set) else {
        return false;
    };
    (0..g.vertex_count()).all(|v| {
        let k = neighbors_inside(g, &inside, v);
        if inside[v] {
            k == 0
        } else {
            k == 1
        }
    })
}

pub fn is_total_perfect_code(g: &Graph, set: &[usize]) -> bool {
    let Some(inside) = membership(g, set) else {
        return false;
    };
    (0..g.vertex_count()).all(|v| neighbors_inside(g, &inside, v) == 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCode {
    pub color: Color,
    pub vertices: Vec<usize>,
    pub is_perfect_code: bool,
    pub is_total_perfect_code: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub classes: Vec<ClassCode>,
    pub efficient_tc: bool,
    /// 0, 1 or 3 for lacunar semi-total colorings of cubic graphs.
    pub total_perfect_rank: Option<u8>,
    pub beta_structure: String,
}

pub fn code_report(mu: &Coloring) -> CodeReport {
    let g = mu.graph();
    let classes: Vec<ClassCode> = (0..mu.palette() as Color)
        .map(|c| {
            let vertices = mu.vertex_class(c);
            ClassCode {
                color: c,
                is_perfect_code: is_perfect_code(g, &vertices),
                is_total_perfect_code: is_total_perfect_code(g, &vertices),
                vertices,
            }
        })
        .collect();
    let efficient_tc = mu.is_tc() && classes.iter().all(|c| c.is_perfect_code);
    let rank = classify_stc(mu).ok();
    let beta = mu.beta_edges();
    let by_color = |c: Color| {
        beta.iter()
            .filter(|&&e| mu.vertex_color(g.edge(e).0) == c)
            .count()
    };
    let parts: Vec<String> = (0..mu.palette() as Color)
        .filter(|&c| by_color(c) > 0)
        .map(|c| format!("{} in color {c}", by_color(c)))
        .collect();
    let beta_structure = if beta.is_empty() {
        "no β-edges".to_string()
    } else {
        format!("{} β-edges: {}", beta.len(), parts.join(", "))
    };
    CodeReport {
        classes,
        efficient_tc,
        total_perfect_rank: rank,
        beta_structure,
    }
}

/// How many vertex classes of a lacunar semi-total coloring of a cubic
/// graph are total perfect codes made of β-edge endpoints: 3 when all three
/// nonempty classes are, 1 when exactly one is and it holds every β-edge,
/// and 0 otherwise.
pub fn classify_stc(mu: &Coloring) -> Result<u8> {
    let g = mu.graph();
    if !g.is_cubic() {
        return Err(Error::NotCubic);
    }
    mu.require_stc()?;
    if !mu.is_lacunar() {
        return Err(Error::NotLacunar);
    }
    let mut beta_endpoint = vec![false; g.vertex_count()];
    for e in mu.beta_edges() {
        let (u, v) = g.edge(e);
        beta_endpoint[u] = true;
        beta_endpoint[v] = true;
    }
    let qualifying: Vec<Vec<usize>> = (0..mu.palette() as Color)
        .map(|c| mu.vertex_class(c))
        .filter(|s| !s.is_empty())
        .filter(|s| is_total_perfect_code(g, s) && s.iter().all(|&v| beta_endpoint[v]))
        .collect();
    let endpoints = beta_endpoint.iter().filter(|&&b| b).count();
    Ok(match qualifying.len() {
        3 => 3,
        1 if qualifying[0].len() == endpoints => 1,
        _ => 0,
    })
}

/// Whether every vertex class of a total coloring is a perfect code.
pub fn is_efficient_tc(mu: &Coloring) -> Result<bool> {
    if !mu.is_tc() {
        return Err(Error::NotTotal);
    }
    let g = mu.graph();
    Ok((0..mu.palette() as Color).all(|c| is_perfect_code(g, &mu.vertex_class(c))))
}

/// Two colorings are edge-orthogonal when they agree on every vertex and
/// disagree on every edge.
pub fn edge_orthogonal(a: &Coloring, b: &Coloring) -> Result<bool> {
    if !a.same_graph(b) {
        return Err(Error::GraphMismatch);
    }
    Ok(a.vertex_colors() == b.vertex_colors()
        && a.edge_colors().iter().zip(b.edge_colors()).all(|(x, y)| x != y))
}

/// Every perfect code of a graph with at most 40 vertices, by backtracking.
pub fn all_perfect_codes(g: &Graph) -> Option<Vec<Vec<usize>>> {
    if g.vertex_count() > 40 {
        return None;
    }
    let n = g.vertex_count();
    // dominated[v] = number of chosen vertices in the closed neighborhood of v
    let mut dominated = vec![0u8; n];
    let mut chosen = Vec::new();
    let mut out = Vec::new();
    fn rec(
        g: &Graph,
        v: usize,
        dominated: &mut [u8],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = g.vertex_count();
        if v == n {
            if dominated.iter().all(|&d| d == 1) {
                out.push(chosen.clone());
            }
            return;
        }
        // a vertex whose whole closed neighborhood is decided must be covered
        let closed = |u: usize| std::iter::once(u).chain(g.neighbors(u).iter().copied());
        let can_take = closed(v).all(|u| dominated[u] == 0);
        if can_take {
            for u in closed(v) {
                dominated[u] += 1;
            }
            chosen.push(v);
            if closed(v).all(|u| closed(u).any(|x| x > v) || dominated[u] == 1) {
                rec(g, v + 1, dominated, chosen, out);
            }
            chosen.pop();
            for u in closed(v) {
                dominated[u] -= 1;
            }
        }
        let ok = closed(v).all(|u| dominated[u] == 1 || closed(u).any(|x| x > v));
        if ok {
            rec(g, v + 1, dominated, chosen, out);
        }
    }
    rec(g, 0, &mut dominated, &mut chosen, &mut out);
    Some(out)
}
