//! Covering maps between graphs and the colorings they pull back.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone)]
pub struct CoveringMap {
    source: Arc<Graph>,
    target: Arc<Graph>,
    map: Vec<usize>,
    fold: usize,
    edge_map: Vec<usize>,
}

impl CoveringMap {
    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Graph> {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.map
    }

    /// Target edge index of each source edge.
    pub fn edge_map(&self) -> &[usize] {
        &self.edge_map
    }

    /// Number of preimages of every target vertex.
    pub fn fold(&self) -> usize {
        self.fold
    }

    pub fn to_json(&self, source: &str, target: &str) -> CoveringJson {
        CoveringJson {
            source: source.to_string(),
            target: target.to_string(),
            map: self.map.clone(),
        }
    }
}

/// `{"source": name, "target": name, "map": [f(0), f(1), ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringJson {
    pub source: String,
    pub target: String,
    pub map: Vec<usize>,
}

/// Checks that `map` is a covering: onto, with equal fibers, and a bijection
/// from each neighborhood onto the neighborhood of its image.
pub fn verify_covering(source: &Arc<Graph>, target: &Arc<Graph>, map: &[usize]) -> Result<CoveringMap> {
    let n = source.vertex_count();
    let m = target.vertex_count();
    if map.len() != n {
        return Err(Error::MapLength {
            got: map.len(),
            expected: n,
        });
    }
    let mut fibers = vec![0usize; m];
    for &t in map {
        target.check_vertex(t)?;
        fibers[t] += 1;
    }
    if let Some(t) = fibers.iter().position(|&f| f == 0) {
        return Err(Error::NotSurjective(t));
    }
    let fold = fibers[0];
    if let Some((t, &size)) = fibers.iter().enumerate().find(|(_, &f)| f != fold) {
        return Err(Error::UnequalFibers {
            vertex: t,
            size,
            expected: fold,
        });
    }
    for v in 0..n {
        let mut image: Vec<usize> = source.neighbors(v).iter().map(|&w| map[w]).collect();
        image.sort_unstable();
        if image != target.neighbors(map[v]) {
            return Err(Error::NotLocalBijection(v));
        }
    }
    let edge_map = source
        .edges()
        .iter()
        .map(|&(u, v)| {
            target
                .edge_between(map[u], map[v])
                .expect("local bijection maps edges to edges")
        })
        .collect();
    Ok(CoveringMap {
        source: source.clone(),
        target: target.clone(),
        map: map.to_vec(),
        fold,
        edge_map,
    })
}

/// Pulls a coloring of the target back to the source: every vertex and edge
/// takes the color of its image. The result must be a semi-total coloring
/// with `β = r·β'` and `γ = r·γ'`; any deviation is reported as an error.
pub fn lift_coloring(cm: &CoveringMap, mu: &Coloring) -> Result<Coloring> {
    let t = mu.graph();
    if !Arc::ptr_eq(t, &cm.target)
        && (t.vertex_count() != cm.target.vertex_count() || t.edges() != cm.target.edges())
    {
        return Err(Error::GraphMismatch);
    }
    let (sd, td) = (cm.source.max_degree(), cm.target.max_degree());
    if sd != td {
        return Err(Error::DegreeMismatch {
            source_degree: sd,
            target_degree: td,
        });
    }
    mu.require_stc()?;
    let vc = cm.map.iter().map(|&t| mu.vertex_color(t)).collect();
    let ec = cm.edge_map.iter().map(|&t| mu.edge_color(t)).collect();
    let lifted = Coloring::new(cm.source.clone(), vc, ec)?;
    if !lifted.is_stc() {
        return Err(Error::Scaling("lifted coloring is not semi-total".into()));
    }
    let r = cm.fold;
    let (b, g) = (lifted.beta(), lifted.gamma());
    let (bp, gp) = (mu.beta(), mu.gamma());
    if b != r * bp || g != r * gp {
        return Err(Error::Scaling(format!(
            "(β, γ) = ({b}, {g}) but fold {r} times ({bp}, {gp}) is ({}, {})",
            r * bp,
            r * gp
        )));
    }
    if mu.is_tc() && !lifted.is_tc() {
        return Err(Error::Scaling("lift of a total coloring is not total".into()));
    }
    Ok(lifted)
}
