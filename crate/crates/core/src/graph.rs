//! Simple undirected graphs with canonical edge indexing.
//!
//! Vertices are `0..n`. Edges are stored as `(u, v)` with `u < v`, sorted
//! lexicographically; an edge's position in that list is its index, and every
//! other module refers to edges by that index.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex or an edge of a graph, the two kinds of element a total coloring
/// assigns colors to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementRef {
    Vertex(usize),
    Edge(usize),
}

impl fmt::Display for ElementRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementRef::Vertex(v) => write!(f, "v{v}"),
            ElementRef::Edge(e) => write!(f, "e{e}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    name: Option<String>,
    adjacency: Vec<Vec<usize>>,
    // incidence[v][i] is the index of the edge {v, adjacency[v][i]}
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an arbitrary edge list, canonicalizing each pair.
    /// Loops, repeated pairs (in either orientation) and out-of-range
    /// endpoints are rejected.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(a, b) in edge_list {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_canonical(n, edges))
    }

    fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut pairs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            pairs[u].push((v, i));
            pairs[v].push((u, i));
        }
        let mut adjacency = Vec::with_capacity(n);
        let mut incidence = Vec::with_capacity(n);
        for mut p in pairs {
            p.sort_unstable();
            adjacency.push(p.iter().map(|x| x.0).collect());
            incidence.push(p.iter().map(|x| x.1).collect());
        }
        Graph {
            n,
            edges,
            name: None,
            adjacency,
            incidence,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertices plus edges.
    pub fn element_count(&self) -> usize {
        self.n + self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.edges[index]
    }

    pub fn check_edge(&self, index: usize) -> Result<(usize, usize)> {
        self.edges.get(index).copied().ok_or(Error::EdgeOutOfRange {
            index,
            count: self.edges.len(),
        })
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Edge indices incident to `v`, parallel to [`Graph::neighbors`].
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adjacency.first().map(Vec::len)?;
        self.adjacency.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn is_cubic(&self) -> bool {
        self.n > 0 && self.regular_degree() == Some(3)
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let adj = &self.adjacency[u];
        adj.binary_search(&v).ok().map(|i| self.incidence[u][i])
    }

    pub fn other_endpoint(&self, edge: usize, v: usize) -> usize {
        let (a, b) = self.edges[edge];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &w in &self.adjacency[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adjacency[u] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        stack.push(w);
                    } else if side[w] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Checks that `cycle` is a Hamilton cycle and splits the edge set into
    /// cycle edges and chords.
    pub fn verify_hamilton(&self, cycle: &[usize]) -> Result<HamiltonDecomposition> {
        if cycle.len() != self.n || self.n < 3 {
            return Err(Error::InvalidHamilton(format!(
                "sequence has {} vertices, graph has {}",
                cycle.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &v in cycle {
            self.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidHamilton(format!("vertex {v} repeated")));
            }
        }
        let mut on_cycle = vec![false; self.edges.len()];
        let mut cycle_edges = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let (u, v) = (cycle[i], cycle[(i + 1) % self.n]);
            let e = self.edge_between(u, v).ok_or_else(|| {
                Error::InvalidHamilton(format!("consecutive vertices {u} and {v} are not adjacent"))
            })?;
            on_cycle[e] = true;
            cycle_edges.push(e);
        }
        let chords: Vec<usize> = (0..self.edges.len()).filter(|&e| !on_cycle[e]).collect();
        if self.is_cubic() {
            let mut covered = vec![0u8; self.n];
            for &e in &chords {
                let (u, v) = self.edges[e];
                covered[u] += 1;
                covered[v] += 1;
            }
            if covered.iter().any(|&c| c != 1) {
                return Err(Error::InvalidHamilton(
                    "chords of a cubic graph do not form a perfect matching".into(),
                ));
            }
        }
        Ok(HamiltonDecomposition {
            cycle: cycle.to_vec(),
            cycle_edges,
            chords,
        })
    }

    /// Connected components of the spanning subgraph on `edge_subset`, with
    /// isolated vertices dropped. Each component is relabelled `0..k` in
    /// increasing order of original vertex id.
    pub fn subgraph_components(&self, edge_subset: &[usize]) -> Result<Vec<Component>> {
        let mut sub_adj: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &e in edge_subset {
            let (u, v) = self.check_edge(e)?;
            sub_adj[u].push(v);
            sub_adj[v].push(u);
        }
        let mut comp_of = vec![usize::MAX; self.n];
        let mut components = Vec::new();
        for s in 0..self.n {
            if comp_of[s] != usize::MAX || sub_adj[s].is_empty() {
                continue;
            }
            let id = components.len();
            let mut members = vec![s];
            comp_of[s] = id;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &sub_adj[u] {
                    if comp_of[w] == usize::MAX {
                        comp_of[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        let mut local = vec![usize::MAX; self.n];
        let mut edge_lists: Vec<Vec<(usize, usize)>> = vec![Vec::new(); components.len()];
        for members in &components {
            for (i, &v) in members.iter().enumerate() {
                local[v] = i;
            }
        }
        let mut unique: Vec<usize> = edge_subset.to_vec();
        unique.sort_unstable();
        unique.dedup();
        for e in unique {
            let (u, v) = self.edges[e];
            edge_lists[comp_of[u]].push((local[u], local[v]));
        }
        components
            .into_iter()
            .zip(edge_lists)
            .map(|(members, edges)| {
                Ok(Component {
                    graph: Graph::new(members.len(), &edges)?,
                    vertex_map: members,
                })
            })
            .collect()
    }

    /// Depth-first search for a Hamilton cycle through vertex 0, visiting
    /// low-degree continuations first. Gives up after `budget` extensions.
    pub fn find_hamilton_cycle(&self, budget: u64) -> Option<Vec<usize>> {
        if self.n < 3 || !self.is_connected() {
            return None;
        }
        let mut path = vec![0];
        let mut used = vec![false; self.n];
        used[0] = true;
        let mut steps = 0u64;
        self.hamilton_dfs(&mut path, &mut used, &mut steps, budget)
            .then_some(path)
    }

    fn hamilton_dfs(
        &self,
        path: &mut Vec<usize>,
        used: &mut [bool],
        steps: &mut u64,
        budget: u64,
    ) -> bool {
        let last = *path.last().unwrap();
        if path.len() == self.n {
            return self.edge_between(last, path[0]).is_some();
        }
        *steps += 1;
        if *steps > budget {
            return false;
        }
        let mut options: Vec<(usize, usize)> = self.adjacency[last]
            .iter()
            .filter(|&&w| !used[w])
            .map(|&w| {
                let free = self.adjacency[w].iter().filter(|&&x| !used[x]).count();
                (free, w)
            })
            .collect();
        options.sort_unstable();
        for (_, w) in options {
            used[w] = true;
            path.push(w);
            if self.hamilton_dfs(path, used, steps, budget) {
                return true;
            }
            path.pop();
            used[w] = false;
        }
        false
    }

    /// Backtracking isomorphism test for small graphs (n ≤ 60). Returns
    /// `None` when either graph is too large or disconnected.
    pub fn is_isomorphic(&self, other: &Graph) -> Option<bool> {
        const LIMIT: usize = 60;
        if self.n > LIMIT || other.n > LIMIT {
            return None;
        }
        if self.n != other.n || self.edges.len() != other.edges.len() {
            return Some(false);
        }
        if self.n == 0 {
            return Some(true);
        }
        if !self.is_connected() || !other.is_connected() {
            return None;
        }
        let mut da: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut db: Vec<usize> = (0..other.n).map(|v| other.degree(v)).collect();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return Some(false);
        }
        // BFS order in self; every vertex after the first has an earlier neighbor.
        let mut order = vec![0];
        let mut parent = vec![usize::MAX; self.n];
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    order.push(w);
                }
            }
        }
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; other.n];
        for root in 0..other.n {
            if other.degree(root) != self.degree(0) {
                continue;
            }
            map[0] = root;
            used[root] = true;
            if self.iso_extend(other, &order, &parent, 1, &mut map, &mut used) {
                return Some(true);
            }
            used[root] = false;
        }
        Some(false)
    }

    fn iso_extend(
        &self,
        other: &Graph,
        order: &[usize],
        parent: &[usize],
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        let anchor = map[parent[v]];
        for &cand in other.neighbors(anchor) {
            if used[cand] || other.degree(cand) != self.degree(v) {
                continue;
            }
            let consistent = self.adjacency[v].iter().all(|&w| {
                map[w] == usize::MAX || other.edge_between(cand, map[w]).is_some()
            }) && {
                let mapped_nbrs = self.adjacency[v]
                    .iter()
                    .filter(|&&w| map[w] != usize::MAX)
                    .count();
                let used_nbrs = other.neighbors(cand).iter().filter(|&&x| used[x]).count();
                mapped_nbrs == used_nbrs
            };
            if !consistent {
                continue;
            }
            map[v] = cand;
            used[cand] = true;
            if self.iso_extend(other, order, parent, depth + 1, map, used) {
                return true;
            }
            map[v] = usize::MAX;
            used[cand] = false;
        }
        false
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            name: self.name.clone(),
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    /// Parses the Graph JSON format, which must list edges canonically.
    pub fn from_json(json: &GraphJson) -> Result<Self> {
        for (i, &[u, v]) in json.edges.iter().enumerate() {
            if u >= v {
                return Err(Error::NonCanonicalJson(format!("edge {i} is [{u}, {v}]")));
            }
            if i > 0 && json.edges[i - 1] >= json.edges[i] {
                return Err(Error::NonCanonicalJson(format!(
                    "edge {i} is not in increasing order"
                )));
            }
        }
        let pairs: Vec<(usize, usize)> = json.edges.iter().map(|&[u, v]| (u, v)).collect();
        let g = Graph::new(json.n, &pairs)?;
        Ok(match &json.name {
            Some(name) => g.with_name(name.clone()),
            None => g,
        })
    }
}

/// The external Graph JSON form: `{"name": ..., "n": ..., "edges": [[u,v],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = GraphJson::deserialize(d)?;
        Graph::from_json(&json).map_err(serde::de::Error::custom)
    }
}

/// A Hamilton cycle together with the edges it leaves out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonDecomposition {
    pub cycle: Vec<usize>,
    /// `cycle_edges[i]` joins `cycle[i]` and `cycle[i + 1]` (cyclically).
    pub cycle_edges: Vec<usize>,
    pub chords: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Component {
    pub graph: Graph,
    /// Original vertex id of each component vertex.
    pub vertex_map: Vec<usize>,
}
