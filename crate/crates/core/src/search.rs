//! Best-first search over swap and flip moves, and replayable traces.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, Coloring, ColoringJson};
use crate::error::{Error, Result};
use crate::graph::ElementRef;
use crate::kempe::{self, Mcap, StepClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Goal {
    /// β = 0.
    Tc,
    /// β = 0 and γ ≤ 1.
    EquitableTc,
    /// γ ≤ 1.
    EquitableStc,
    /// Lowest (β, γ) found; reached only at (0, 0).
    MinBetaGamma,
}

impl Goal {
    /// Lexicographic score to minimize.
    pub fn score(&self, beta: usize, gamma: usize) -> (usize, usize) {
        match self {
            Goal::EquitableStc => (gamma, beta),
            _ => (beta, gamma),
        }
    }

    pub fn is_met(&self, beta: usize, gamma: usize) -> bool {
        match self {
            Goal::Tc => beta == 0,
            Goal::EquitableTc => beta == 0 && gamma <= 1,
            Goal::EquitableStc => gamma <= 1,
            Goal::MinBetaGamma => beta == 0 && gamma == 0,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Goal::Tc => "tc",
            Goal::EquitableTc => "equitable_tc",
            Goal::EquitableStc => "equitable_stc",
            Goal::MinBetaGamma => "min_beta_gamma",
        }
    }
}

impl FromStr for Goal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "tc" => Ok(Goal::Tc),
            "equitable_tc" => Ok(Goal::EquitableTc),
            "equitable_stc" => Ok(Goal::EquitableStc),
            "min_beta_gamma" => Ok(Goal::MinBetaGamma),
            _ => Err(Error::InvalidParameter(format!("unknown goal `{s}`"))),
        }
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of expanded search nodes.
    pub nodes: usize,
    /// Maximum trace length, if any.
    pub max_steps: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            nodes: 100_000,
            max_steps: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    Swap(Mcap),
    Flip(usize),
}

impl Move {
    pub fn apply(&self, mu: &Coloring) -> Result<Coloring> {
        match self {
            Move::Swap(p) => kempe::swap(mu, p),
            Move::Flip(e) => kempe::flip_beta_edge(mu, *e),
        }
    }

    /// The recolored path as an MCAP (a flip is a one-edge path).
    pub fn path(&self, mu: &Coloring) -> Result<Mcap> {
        match self {
            Move::Swap(p) => Ok(p.clone()),
            Move::Flip(e) => kempe::beta_edge_path(mu, *e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub mv: Move,
    /// Path colors `(c0, c1)` under the coloring the move was applied to.
    pub colors: (Color, Color),
    pub elements: Vec<ElementRef>,
    pub before: (usize, usize),
    pub after: (usize, usize),
    pub class: StepClass,
}

impl ReductionStep {
    /// Applies `mv` to `mu` and records what happened.
    pub fn apply(mu: &Coloring, mv: Move) -> Result<(ReductionStep, Coloring)> {
        let path = mv.path(mu)?;
        let next = mv.apply(mu)?;
        let before = (mu.beta(), mu.gamma());
        let after = (next.beta(), next.gamma());
        let step = ReductionStep {
            colors: (path.c0, path.c1),
            elements: path.elements(),
            before,
            after,
            class: StepClass::from_scores(before, after),
            mv,
        };
        Ok((step, next))
    }

    pub fn to_json(&self) -> StepJson {
        StepJson {
            kind: match self.mv {
                Move::Swap(_) => "swap".into(),
                Move::Flip(_) => "flip".into(),
            },
            path: self.elements.clone(),
            colors: [self.colors.0, self.colors.1],
            before: [self.before.0, self.before.1],
            after: [self.after.0, self.after.1],
            class: self.class.as_str().into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub kind: String,
    pub path: Vec<ElementRef>,
    pub colors: [Color; 2],
    pub before: [usize; 2],
    pub after: [usize; 2],
    pub class: String,
}

impl StepJson {
    /// Rebuilds the move against `mu`, checking the recorded path and colors.
    pub fn to_move(&self, mu: &Coloring) -> Result<Move> {
        let path = Mcap::from_elements(mu, &self.path)?;
        if [path.c0, path.c1] != self.colors {
            return Err(Error::PathMismatch(format!(
                "recorded colors {:?}, coloring gives ({}, {})",
                self.colors, path.c0, path.c1
            )));
        }
        match self.kind.as_str() {
            "swap" => Ok(Move::Swap(path)),
            "flip" if path.k() == 1 => Ok(Move::Flip(path.edges[0])),
            "flip" => Err(Error::PathMismatch("a flip is a single edge".into())),
            other => Err(Error::PathMismatch(format!("unknown step kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub initial: Coloring,
    pub steps: Vec<ReductionStep>,
    pub final_coloring: Coloring,
    pub goal: Goal,
    pub goal_reached: bool,
    pub nodes_expanded: usize,
    pub budget_exhausted: bool,
}

impl ReductionTrace {
    /// A trace with no steps.
    pub fn empty(initial: Coloring, goal: Goal) -> Self {
        let reached = goal.is_met(initial.beta(), initial.gamma());
        ReductionTrace {
            final_coloring: initial.clone(),
            initial,
            steps: Vec::new(),
            goal,
            goal_reached: reached,
            nodes_expanded: 0,
            budget_exhausted: false,
        }
    }

    /// Applies a move to the end of the trace.
    pub fn push(&mut self, mv: Move) -> Result<&ReductionStep> {
        let (step, next) = ReductionStep::apply(&self.final_coloring, mv)?;
        self.final_coloring = next;
        self.goal_reached = self
            .goal
            .is_met(self.final_coloring.beta(), self.final_coloring.gamma());
        self.steps.push(step);
        Ok(self.steps.last().unwrap())
    }

    /// Replays the steps from the initial coloring.
    pub fn replay(&self) -> Result<Coloring> {
        let mut mu = self.initial.clone();
        for s in &self.steps {
            mu = s.mv.apply(&mu)?;
        }
        Ok(mu)
    }

    pub fn to_json(&self) -> TraceJson {
        TraceJson {
            initial: self.initial.to_json(),
            goal: self.goal,
            steps: self.steps.iter().map(ReductionStep::to_json).collect(),
            final_coloring: self.final_coloring.to_json(),
            goal_reached: self.goal_reached,
            nodes_expanded: self.nodes_expanded,
            budget_exhausted: self.budget_exhausted,
        }
    }

    /// Rebuilds a trace from JSON by replaying every step, recomputing all
    /// scores and classifications, and checking the recorded final coloring.
    pub fn from_json(json: &TraceJson, initial: Coloring) -> Result<Self> {
        let mut trace = ReductionTrace::empty(initial, json.goal);
        for s in &json.steps {
            let mv = s.to_move(&trace.final_coloring)?;
            trace.push(mv)?;
        }
        let (fv, fe) = (&json.final_coloring.vertex_colors, &json.final_coloring.edge_colors);
        if trace.final_coloring.vertex_colors() != fv.as_slice()
            || trace.final_coloring.edge_colors() != fe.as_slice()
        {
            return Err(Error::PathMismatch(
                "replaying the steps does not reproduce the recorded final coloring".into(),
            ));
        }
        trace.nodes_expanded = json.nodes_expanded;
        trace.budget_exhausted = json.budget_exhausted;
        Ok(trace)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub initial: ColoringJson,
    pub goal: Goal,
    pub steps: Vec<StepJson>,
    #[serde(rename = "final")]
    pub final_coloring: ColoringJson,
    pub goal_reached: bool,
    pub nodes_expanded: usize,
    pub budget_exhausted: bool,
}

/// Every move available from `mu`: swaps along MCAPs with at least two edges
/// (from either end), then flips of β-edges.
pub fn candidate_moves(mu: &Coloring) -> Vec<Move> {
    let mut moves = Vec::new();
    for p in kempe::enumerate_unchecked(mu, None) {
        let r = p.reversed(mu);
        moves.push(Move::Swap(p));
        moves.push(Move::Swap(r));
    }
    moves.extend(mu.beta_edges().into_iter().map(Move::Flip));
    moves
}

// Colors after a move, with β and class totals updated from the changed
// elements only.
struct Child {
    vertex_colors: Vec<Color>,
    edge_colors: Vec<Color>,
    beta: usize,
    totals: Vec<usize>,
}

fn expand_move(
    mu_vc: &[Color],
    mu_ec: &[Color],
    beta: usize,
    totals: &[usize],
    graph: &crate::graph::Graph,
    path: &Mcap,
) -> Child {
    let exchange = |c: Color| {
        if c == path.c0 {
            path.c1
        } else if c == path.c1 {
            path.c0
        } else {
            c
        }
    };
    let mut vc = mu_vc.to_vec();
    let mut ec = mu_ec.to_vec();
    let mut totals = totals.to_vec();
    let ends = [path.start(), path.end()];
    // β contributions of edges touching either end, before the change
    let mut touched: Vec<usize> = ends
        .iter()
        .flat_map(|&v| graph.incident_edges(v).iter().copied())
        .collect();
    touched.sort_unstable();
    touched.dedup();
    let equal = |vc: &[Color], e: usize| {
        let (a, b) = graph.edge(e);
        (vc[a] == vc[b]) as usize
    };
    let old: usize = touched.iter().map(|&e| equal(&vc, e)).sum();
    for &v in &ends {
        let c = vc[v];
        let n = exchange(c);
        totals[c as usize] -= 1;
        totals[n as usize] += 1;
        vc[v] = n;
    }
    for &e in &path.edges {
        let c = ec[e];
        let n = exchange(c);
        totals[c as usize] -= 1;
        totals[n as usize] += 1;
        ec[e] = n;
    }
    let new: usize = touched.iter().map(|&e| equal(&vc, e)).sum();
    Child {
        vertex_colors: vc,
        edge_colors: ec,
        beta: beta + new - old,
        totals,
    }
}

fn gamma_of(totals: &[usize]) -> usize {
    totals.iter().max().unwrap_or(&0) - totals.iter().min().unwrap_or(&0)
}

// FNV-1a over the color arrays, mixed with the seed; used only to order
// nodes with equal scores.
fn tie_break(seed: u64, vc: &[Color], ec: &[Color]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for &c in vc.iter().chain(ec) {
        h ^= c as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^ (h >> 29)
}

struct Node {
    vertex_colors: Vec<Color>,
    edge_colors: Vec<Color>,
    beta: usize,
    totals: Vec<usize>,
    parent: Option<(usize, Move)>,
    depth: usize,
}

/// Searches for a sequence of moves from `mu` toward `goal`.
///
/// Only moves that strictly lower the goal's score are followed, so every
/// step of the returned trace improves on the one before. Nodes are expanded
/// lowest score first; ties are broken by a hash of the coloring mixed with
/// `seed`, then by discovery order. The goal is tested as children are
/// generated. If the goal is not reached within the budget, the trace to
/// the best coloring seen is returned with `goal_reached = false`.
pub fn reduce(mu: &Coloring, goal: Goal, budget: Budget, seed: u64) -> Result<ReductionTrace> {
    mu.require_stc()?;
    if goal.is_met(mu.beta(), mu.gamma()) {
        return Ok(ReductionTrace::empty(mu.clone(), goal));
    }
    let graph = mu.graph().clone();
    let mut nodes: Vec<Node> = vec![Node {
        vertex_colors: mu.vertex_colors().to_vec(),
        edge_colors: mu.edge_colors().to_vec(),
        beta: mu.beta(),
        totals: mu.totals(),
        parent: None,
        depth: 0,
    }];
    let mut visited: HashSet<(Vec<Color>, Vec<Color>)> = HashSet::new();
    visited.insert((nodes[0].vertex_colors.clone(), nodes[0].edge_colors.clone()));
    let root_score = goal.score(nodes[0].beta, gamma_of(&nodes[0].totals));
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((root_score, 0u64, 0usize)));
    let mut best = (root_score, 0usize);
    let mut expanded = 0usize;
    let mut found = None;

    'search: while let Some(Reverse((score, _, id))) = heap.pop() {
        if expanded >= budget.nodes {
            break;
        }
        expanded += 1;
        if budget.max_steps.is_some_and(|m| nodes[id].depth >= m) {
            continue;
        }
        let current = Coloring::from_parts_unchecked(
            graph.clone(),
            nodes[id].vertex_colors.clone(),
            nodes[id].edge_colors.clone(),
        );
        for mv in candidate_moves(&current) {
            let path = mv.path(&current)?;
            let child = expand_move(
                &nodes[id].vertex_colors,
                &nodes[id].edge_colors,
                nodes[id].beta,
                &nodes[id].totals,
                &graph,
                &path,
            );
            let gamma = gamma_of(&child.totals);
            let child_score = goal.score(child.beta, gamma);
            if child_score >= score {
                continue;
            }
            let key = (child.vertex_colors, child.edge_colors);
            if !visited.insert(key.clone()) {
                continue;
            }
            let cid = nodes.len();
            nodes.push(Node {
                vertex_colors: key.0,
                edge_colors: key.1,
                beta: child.beta,
                totals: child.totals,
                parent: Some((id, mv)),
                depth: nodes[id].depth + 1,
            });
            if child_score < best.0 {
                best = (child_score, cid);
            }
            if goal.is_met(child.beta, gamma) {
                found = Some(cid);
                break 'search;
            }
            let tb = tie_break(seed, &nodes[cid].vertex_colors, &nodes[cid].edge_colors);
            heap.push(Reverse((child_score, tb, cid)));
        }
    }

    let target = found.unwrap_or(best.1);
    let mut moves = Vec::new();
    let mut at = target;
    while let Some((parent, mv)) = &nodes[at].parent {
        moves.push(mv.clone());
        at = *parent;
    }
    moves.reverse();
    let mut trace = ReductionTrace::empty(mu.clone(), goal);
    for mv in moves {
        let step = trace.push(mv)?;
        debug_assert!(goal.score(step.after.0, step.after.1) < goal.score(step.before.0, step.before.1));
    }
    trace.nodes_expanded = expanded;
    trace.budget_exhausted = found.is_none() && expanded >= budget.nodes;
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::families::lcf;
    use crate::pattern::{apply_pattern, PatternString};

    fn q3_stc() -> Coloring {
        let (g, h) = lcf("[3,-3]^4").unwrap();
        let p = PatternString::parse("1_0 1_2 0_1 2_0 1_2 1_0 2_1 0_2").unwrap();
        apply_pattern(&Arc::new(g), &h, &p, None).unwrap()
    }

    #[test]
    fn q3_reaches_equitable_tc() {
        let mu = q3_stc();
        let t = reduce(&mu, Goal::EquitableTc, Budget::default(), 0).unwrap();
        assert!(t.goal_reached);
        assert!(t.final_coloring.is_tc());
        assert!(t.final_coloring.gamma() <= 1);
        assert_eq!(t.replay().unwrap(), t.final_coloring);
    }

    #[test]
    fn already_met_gives_empty_trace() {
        let mu = q3_stc();
        let t = reduce(&mu, Goal::EquitableTc, Budget::default(), 0).unwrap();
        let again = reduce(&t.final_coloring, Goal::EquitableTc, Budget::default(), 0).unwrap();
        assert!(again.steps.is_empty());
        assert!(again.goal_reached);
    }

    #[test]
    fn incremental_scores_match() {
        let mu = q3_stc();
        for mv in candidate_moves(&mu) {
            let path = mv.path(&mu).unwrap();
            let child = expand_move(
                mu.vertex_colors(),
                mu.edge_colors(),
                mu.beta(),
                &mu.totals(),
                mu.graph(),
                &path,
            );
            let direct = mv.apply(&mu).unwrap();
            assert_eq!(child.beta, direct.beta());
            assert_eq!(child.totals, direct.totals());
            assert_eq!(child.vertex_colors, direct.vertex_colors());
        }
    }

    #[test]
    fn trace_json_roundtrip() {
        let mu = q3_stc();
        let t = reduce(&mu, Goal::Tc, Budget::default(), 7).unwrap();
        let json = serde_json::to_string(&t.to_json()).unwrap();
        let back: TraceJson = serde_json::from_str(&json).unwrap();
        let t2 = ReductionTrace::from_json(&back, mu).unwrap();
        assert_eq!(t2.final_coloring, t.final_coloring);
        assert_eq!(t2.steps, t.steps);
    }

    #[test]
    fn goal_names() {
        assert_eq!("equitable-tc".parse::<Goal>().unwrap(), Goal::EquitableTc);
        assert_eq!("min_beta_gamma".parse::<Goal>().unwrap(), Goal::MinBetaGamma);
        assert!("best".parse::<Goal>().is_err());
    }
}
