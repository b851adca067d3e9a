//! Exact answers for small graphs by exhaustive backtracking: the total
//! chromatic number, the least β over semi-total colorings, and the least
//! γ over total colorings with Δ+1 colors.
//!
//! Elements are visited in BFS order from a highest-degree vertex, each
//! vertex followed by its edges back to earlier vertices. A new element may
//! only use a color at most one above the largest used so far, which removes
//! palette permutations.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::coloring::Color;
use crate::error::{Error, Result};
use crate::graph::{ElementRef, Graph};

pub const DEFAULT_CAP: usize = 26;

/// Largest element count the oracle will attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cap {
    elements: usize,
}

impl Cap {
    /// Caps above the default need `consent`.
    pub fn new(elements: usize, consent: bool) -> Result<Self> {
        if elements > DEFAULT_CAP && !consent {
            return Err(Error::CapConsent { cap: elements });
        }
        Ok(Cap { elements })
    }

    pub fn elements(&self) -> usize {
        self.elements
    }
}

impl Default for Cap {
    fn default() -> Self {
        Cap {
            elements: DEFAULT_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Query {
    TotalChromatic,
    MinBeta,
    MinGamma,
}

impl Query {
    pub fn as_str(&self) -> &'static str {
        match self {
            Query::TotalChromatic => "total_chromatic",
            Query::MinBeta => "min_beta",
            Query::MinGamma => "min_gamma",
        }
    }
}

impl std::str::FromStr for Query {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "total_chromatic" | "chi" => Ok(Query::TotalChromatic),
            "min_beta" | "beta" => Ok(Query::MinBeta),
            "min_gamma" | "gamma" => Ok(Query::MinGamma),
            _ => Err(Error::InvalidParameter(format!("unknown oracle query `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleStatus {
    Value,
    /// Only for `min_gamma`: no total coloring with Δ+1 colors exists.
    NoTotalColoring,
    CapExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub query: Query,
    pub status: OracleStatus,
    pub value: Option<usize>,
    pub elements: usize,
    pub nodes: u64,
}

impl OracleResult {
    pub fn value(&self) -> Option<usize> {
        self.value
    }
}

pub fn exact_total_chromatic(g: &Graph, cap: Cap) -> OracleResult {
    run(Query::TotalChromatic, g, cap)
}

pub fn min_beta(g: &Graph, cap: Cap) -> OracleResult {
    run(Query::MinBeta, g, cap)
}

pub fn min_gamma(g: &Graph, cap: Cap) -> OracleResult {
    run(Query::MinGamma, g, cap)
}

pub fn run(query: Query, g: &Graph, cap: Cap) -> OracleResult {
    let elements = g.element_count();
    let mut out = OracleResult {
        query,
        status: OracleStatus::CapExceeded,
        value: None,
        elements,
        nodes: 0,
    };
    if elements > cap.elements {
        return out;
    }
    let delta = g.max_degree();
    let (value, nodes) = match query {
        Query::TotalChromatic => {
            let mut nodes = 0;
            let mut k = delta + 1;
            loop {
                let mut s = Solver::new(g, k, Mode::Exists);
                let found = s.solve();
                nodes += s.nodes;
                if found.is_some() {
                    break (Some(k), nodes);
                }
                k += 1;
            }
        }
        Query::MinBeta => {
            let mut s = Solver::new(g, delta + 1, Mode::MinBeta);
            (s.solve(), s.nodes)
        }
        Query::MinGamma => {
            let mut s = Solver::new(g, delta + 1, Mode::MinGamma);
            (s.solve(), s.nodes)
        }
    };
    out.nodes = nodes;
    match value {
        Some(v) => {
            out.status = OracleStatus::Value;
            out.value = Some(v);
        }
        None => out.status = OracleStatus::NoTotalColoring,
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Exists,
    MinBeta,
    MinGamma,
}

struct Solver {
    k: usize,
    mode: Mode,
    /// earlier positions that must get a different color
    hard: Vec<Vec<usize>>,
    /// earlier adjacent vertex positions; equal colors count toward β
    soft: Vec<Vec<usize>>,
    colors: Vec<Color>,
    counts: Vec<usize>,
    best: Option<usize>,
    floor: usize,
    nodes: u64,
}

fn element_order(g: &Graph) -> Vec<ElementRef> {
    let n = g.vertex_count();
    let mut order = Vec::with_capacity(g.element_count());
    let mut seen = vec![false; n];
    let mut placed = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    // cover every component, each from its highest-degree vertex
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(ElementRef::Vertex(v));
            placed[v] = true;
            for (&w, &e) in g.neighbors(v).iter().zip(g.incident_edges(v)) {
                if placed[w] {
                    order.push(ElementRef::Edge(e));
                }
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

impl Solver {
    fn new(g: &Graph, k: usize, mode: Mode) -> Self {
        let order = element_order(g);
        let n = g.vertex_count();
        let mut pos_v = vec![usize::MAX; n];
        let mut pos_e = vec![usize::MAX; g.edge_count()];
        for (i, el) in order.iter().enumerate() {
            match *el {
                ElementRef::Vertex(v) => pos_v[v] = i,
                ElementRef::Edge(e) => pos_e[e] = i,
            }
        }
        let total = mode != Mode::MinBeta;
        let mut hard = vec![Vec::new(); order.len()];
        let mut soft = vec![Vec::new(); order.len()];
        for (i, el) in order.iter().enumerate() {
            let mut h = Vec::new();
            match *el {
                ElementRef::Vertex(v) => {
                    for (&w, &e) in g.neighbors(v).iter().zip(g.incident_edges(v)) {
                        h.push(pos_e[e]);
                        if total {
                            h.push(pos_v[w]);
                        } else if pos_v[w] < i {
                            soft[i].push(pos_v[w]);
                        }
                    }
                }
                ElementRef::Edge(e) => {
                    let (u, v) = g.edge(e);
                    for x in [u, v] {
                        h.push(pos_v[x]);
                        h.extend(g.incident_edges(x).iter().filter(|&&f| f != e).map(|&f| pos_e[f]));
                    }
                }
            }
            h.retain(|&p| p < i);
            h.sort_unstable();
            h.dedup();
            hard[i] = h;
        }
        let elements = order.len();
        Solver {
            k,
            mode,
            hard,
            soft,
            colors: vec![0; elements],
            counts: vec![0; k],
            best: None,
            floor: usize::from(elements % k != 0),
            nodes: 0,
        }
    }

    fn solve(&mut self) -> Option<usize> {
        if self.colors.is_empty() {
            return Some(0);
        }
        self.dfs(0, 0, 0);
        self.best
    }

    fn done(&self) -> bool {
        match self.mode {
            Mode::Exists => self.best.is_some(),
            Mode::MinBeta => self.best == Some(0),
            Mode::MinGamma => self.best == Some(self.floor),
        }
    }

    fn gamma_bound(&self, remaining: usize) -> usize {
        let max = *self.counts.iter().max().unwrap();
        let min = *self.counts.iter().min().unwrap();
        max.saturating_sub(min + remaining).max(self.floor)
    }

    /// Returns after the position `i` is filled in every allowed way.
    fn dfs(&mut self, i: usize, used: usize, beta: usize) {
        let len = self.colors.len();
        if i == len {
            let score = match self.mode {
                Mode::Exists => 0,
                Mode::MinBeta => beta,
                Mode::MinGamma => {
                    self.counts.iter().max().unwrap() - self.counts.iter().min().unwrap()
                }
            };
            if self.best.map_or(true, |b| score < b) {
                self.best = Some(score);
            }
            return;
        }
        let limit = self.k.min(used + 1);
        for c in 0..limit as Color {
            if self.hard[i].iter().any(|&p| self.colors[p] == c) {
                continue;
            }
            let add = self.soft[i].iter().filter(|&&p| self.colors[p] == c).count();
            let nb = beta + add;
            if self.mode == Mode::MinBeta && self.best.is_some_and(|b| nb >= b) {
                continue;
            }
            self.nodes += 1;
            self.colors[i] = c;
            self.counts[c as usize] += 1;
            let prune = self.mode == Mode::MinGamma
                && self
                    .best
                    .is_some_and(|b| self.gamma_bound(len - i - 1) >= b);
            if !prune {
                self.dfs(i + 1, used.max(c as usize + 1), nb);
            }
            self.counts[c as usize] -= 1;
            if self.done() {
                return;
            }
        }
    }
}

/// Closed forms for cycles and complete graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub total_chromatic: usize,
    pub min_beta: usize,
    pub type_one: bool,
}

/// `C_n`, `n ≥ 3`: type 1 exactly when 3 divides n, otherwise two β-edges
/// are forced.
pub fn closed_form_cycle(n: usize) -> Result<ClosedForm> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    let type_one = n % 3 == 0;
    Ok(ClosedForm {
        total_chromatic: if type_one { 3 } else { 4 },
        min_beta: if type_one { 0 } else { 2 },
        type_one,
    })
}

/// `K_n`: type 1 exactly when n is odd; for even n the least β is n/2.
pub fn closed_form_complete(n: usize) -> Result<ClosedForm> {
    if n == 0 {
        return Err(Error::InvalidParameter("complete graph needs n >= 1".into()));
    }
    let type_one = n % 2 == 1;
    Ok(ClosedForm {
        total_chromatic: if type_one { n } else { n + 1 },
        min_beta: if type_one { 0 } else { n / 2 },
        type_one,
    })
}

/// On-disk results keyed by a SHA-256 of the query and the canonical edge
/// list, so a renamed graph still hits.
#[derive(Debug, Clone)]
pub struct OracleCache {
    dir: PathBuf,
}

impl OracleCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(OracleCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(query: Query, g: &Graph) -> String {
        let mut json = g.to_json();
        json.name = None;
        let body = serde_json::to_string(&json).expect("graph JSON serializes");
        let mut h = Sha256::new();
        h.update(query.as_str().as_bytes());
        h.update(b"\n");
        h.update(body.as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, query: Query, g: &Graph) -> Option<OracleResult> {
        let text = fs::read_to_string(self.path(&Self::key(query, g))).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put(&self, g: &Graph, result: &OracleResult) -> Result<()> {
        let path = self.path(&Self::key(result.query, g));
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec_pretty(result)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}

/// Runs queries under a cap, consulting an optional cache.
#[derive(Debug, Clone, Default)]
pub struct Oracle {
    cap: Cap,
    cache: Option<OracleCache>,
}

impl Oracle {
    pub fn new(cap: Cap) -> Self {
        Oracle { cap, cache: None }
    }

    pub fn with_cache(mut self, cache: OracleCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn query(&self, query: Query, g: &Graph) -> Result<OracleResult> {
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.get(query, g)) {
            if hit.status != OracleStatus::CapExceeded {
                return Ok(hit);
            }
        }
        let result = run(query, g, self.cap);
        if let Some(cache) = &self.cache {
            if result.status != OracleStatus::CapExceeded {
                cache.put(g, &result)?;
            }
        }
        Ok(result)
    }
}
