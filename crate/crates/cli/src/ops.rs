//! Operations shared by the command line and the HTTP service. Both render
//! the same structs through [`render`], so their JSON is byte-identical.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use semitotal::catalog::{catalog, CatalogEntry};
use semitotal::codes::{code_report, CodeReport};
use semitotal::coloring::{ClassListing, ColoringJson, GraphRef};
use semitotal::families::identity_hamilton;
use semitotal::kempe::{enumerate_mcaps, Mcap};
use semitotal::search::{reduce, Budget, Goal, Move, ReductionStep, ReductionTrace, StepJson, TraceJson};
use semitotal::{
    apply_pattern, default_lacunar_stc, format_listing, Color, Coloring, ElementRef, Error, Graph, GraphJson,
    HamiltonDecomposition, PatternString,
};

use crate::error::{AppError, AppResult};

const HAMILTON_SEARCH_BUDGET: u64 = 2_000_000;

pub fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

/// A catalog key names a graph in coloring files.
pub fn resolve_graph(name: &str) -> semitotal::Result<Arc<Graph>> {
    Ok(catalog(name)?.graph)
}

/// How to obtain a coloring: a graph (catalog key or inline) plus a pattern,
/// the default lacunar construction, or explicit colors.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringSpec {
    #[serde(default)]
    pub catalog: Option<String>,
    #[serde(default)]
    pub graph: Option<GraphJson>,
    #[serde(default)]
    pub hamilton: Option<Vec<usize>>,
    #[serde(default)]
    pub pattern: Option<String>,
    #[serde(default)]
    pub default_lacunar: bool,
    #[serde(default)]
    pub coloring: Option<ColoringJson>,
}

/// A coloring together with where its graph came from.
#[derive(Debug, Clone)]
pub struct Subject {
    pub coloring: Coloring,
    /// Catalog key, when the graph is a catalog graph.
    pub key: Option<String>,
    /// Short display name used in listings.
    pub label: String,
}

impl Subject {
    pub fn coloring_json(&self, mu: &Coloring) -> ColoringJson {
        match &self.key {
            Some(k) => mu.to_json_named(k),
            None => mu.to_json(),
        }
    }

    pub fn graph(&self) -> &Arc<Graph> {
        self.coloring.graph()
    }
}

fn hamilton_for(
    graph: &Graph,
    explicit: Option<&[usize]>,
    entry: Option<&CatalogEntry>,
) -> AppResult<HamiltonDecomposition> {
    if let Some(cycle) = explicit {
        return Ok(graph.verify_hamilton(cycle)?);
    }
    if let Some(h) = entry.and_then(|e| e.hamilton.clone()) {
        return Ok(h);
    }
    if let Ok(h) = identity_hamilton(graph) {
        return Ok(h);
    }
    let cycle = graph
        .find_hamilton_cycle(HAMILTON_SEARCH_BUDGET)
        .ok_or_else(|| Error::InvalidHamilton("no Hamilton cycle found; pass one explicitly".into()))?;
    Ok(graph.verify_hamilton(&cycle)?)
}

/// Builds the subject described by `spec`. Explicit colorings are checked
/// for being semi-total only when `require_stc` is set.
pub fn build_subject(spec: &ColoringSpec, require_stc: bool) -> AppResult<Subject> {
    let entry = match &spec.catalog {
        Some(k) => Some(catalog(k)?),
        None => None,
    };
    let (graph, key, label) = match (&entry, &spec.graph, &spec.coloring) {
        (Some(e), None, _) => (e.graph.clone(), Some(e.key.clone()), e.name.clone()),
        (None, Some(g), _) => {
            let g = Graph::from_json(g)?;
            let label = g.name().unwrap_or("G").to_string();
            (Arc::new(g), None, label)
        }
        (Some(_), Some(_), _) => {
            return Err(AppError::Usage("give either a catalog key or a graph, not both".into()))
        }
        (None, None, Some(c)) => match &c.graph {
            GraphRef::Name(name) => {
                let e = catalog(name)?;
                (e.graph.clone(), Some(e.key.clone()), e.name.clone())
            }
            GraphRef::Inline(g) => {
                let g = Graph::from_json(g)?;
                let label = g.name().unwrap_or("G").to_string();
                (Arc::new(g), None, label)
            }
        },
        (None, None, None) => return Err(AppError::Usage("no graph given: use a catalog key or a graph".into())),
    };

    let coloring = if let Some(c) = &spec.coloring {
        let g = graph.clone();
        let mu = Coloring::from_json(c, |_| Ok(g))?;
        if mu.graph().edges() != graph.edges() || mu.graph().vertex_count() != graph.vertex_count() {
            return Err(Error::GraphMismatch.into());
        }
        mu
    } else if let Some(p) = &spec.pattern {
        let h = hamilton_for(&graph, spec.hamilton.as_deref(), entry.as_ref())?;
        apply_pattern(&graph, &h, &PatternString::parse(p)?, None)?
    } else if spec.default_lacunar {
        let h = hamilton_for(&graph, spec.hamilton.as_deref(), entry.as_ref())?;
        default_lacunar_stc(&graph, &h)?
    } else if let Some(e) = &entry {
        match e.lacunar_stc() {
            Ok(mu) => mu,
            Err(_) => e.stored_coloring()?,
        }
    } else {
        let h = hamilton_for(&graph, spec.hamilton.as_deref(), None)?;
        default_lacunar_stc(&graph, &h)?
    };
    if require_stc {
        coloring.require_stc()?;
    }
    Ok(Subject { coloring, key, label })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ListingOut {
    pub listing: ClassListing,
    /// One `c(v+e=t)` line per color, then the summary line.
    pub text: String,
    /// Last line of `text`, e.g. `Hea(9,9,9,8)=Hea(8,9^3)`.
    pub summary: String,
}

pub fn listing_out(mu: &Coloring, label: &str) -> ListingOut {
    let listing = mu.listing();
    let text = format_listing(&listing, label);
    let summary = text.lines().last().unwrap_or_default().to_string();
    ListingOut { listing, text, summary }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidateOut {
    pub proper_edges: bool,
    pub vertex_incidence: bool,
    pub vertex_adjacency: bool,
    pub is_stc: bool,
    pub is_tc: bool,
    pub beta: usize,
    pub gamma: usize,
    pub violations: Vec<semitotal::Violation>,
}

pub fn validate_out(mu: &Coloring) -> ValidateOut {
    let r = mu.validate();
    ValidateOut {
        proper_edges: r.proper_edges,
        vertex_incidence: r.vertex_incidence,
        vertex_adjacency: r.vertex_adjacency,
        is_stc: r.is_stc(),
        is_tc: r.is_tc(),
        beta: mu.beta(),
        gamma: mu.gamma(),
        violations: r.violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct McapOut {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub colors: [Color; 2],
    pub k: usize,
    pub signature: String,
    pub elements: Vec<ElementRef>,
}

pub fn mcaps_out(mu: &Coloring, pair: Option<(Color, Color)>) -> AppResult<Vec<McapOut>> {
    Ok(enumerate_mcaps(mu, pair)?
        .into_iter()
        .map(|p| McapOut {
            signature: p.signature(mu),
            elements: p.elements(),
            k: p.k(),
            colors: [p.c0, p.c1],
            vertices: p.vertices,
            edges: p.edges,
        })
        .collect())
}

/// A path given as vertices or as alternating element references.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PathInput {
    Vertices(Vec<usize>),
    Elements(Vec<ElementRef>),
}

impl PathInput {
    pub fn to_mcap(&self, mu: &Coloring) -> AppResult<Mcap> {
        Ok(match self {
            PathInput::Vertices(v) => Mcap::from_vertices(mu, v)?,
            PathInput::Elements(e) => Mcap::from_elements(mu, e)?,
        })
    }
}

/// An edge given by endpoints or by canonical index.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeInput {
    Pair([usize; 2]),
    Index(usize),
}

impl EdgeInput {
    pub fn index(&self, g: &Graph) -> AppResult<usize> {
        match *self {
            EdgeInput::Pair([u, v]) => {
                g.check_vertex(u)?;
                g.check_vertex(v)?;
                Ok(g.edge_between(u, v).ok_or(Error::NotAdjacent(u, v))?)
            }
            EdgeInput::Index(i) => {
                g.check_edge(i)?;
                Ok(i)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MoveOut {
    pub step: StepJson,
    pub coloring: ColoringJson,
    pub listing: ListingOut,
}

pub fn move_out(subject: &Subject, step: &ReductionStep, after: &Coloring) -> MoveOut {
    MoveOut {
        step: step.to_json(),
        coloring: subject.coloring_json(after),
        listing: listing_out(after, &subject.label),
    }
}

pub fn apply_swap(mu: &Coloring, path: &PathInput) -> AppResult<(ReductionStep, Coloring)> {
    mu.require_stc()?;
    let mcap = path.to_mcap(mu)?;
    Ok(ReductionStep::apply(mu, Move::Swap(mcap))?)
}

pub fn apply_flip(mu: &Coloring, edge: EdgeInput) -> AppResult<(ReductionStep, Coloring)> {
    mu.require_stc()?;
    let e = edge.index(mu.graph())?;
    Ok(ReductionStep::apply(mu, Move::Flip(e))?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReduceOut {
    pub goal: Goal,
    pub goal_reached: bool,
    pub steps: usize,
    pub nodes_expanded: usize,
    pub budget_exhausted: bool,
    pub trace: TraceJson,
    pub listing: ListingOut,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ReduceParams {
    pub goal: Goal,
    #[serde(default)]
    pub budget: Option<usize>,
    #[serde(default)]
    pub max_steps: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

pub fn run_reduce(mu: &Coloring, params: &ReduceParams) -> AppResult<ReductionTrace> {
    let mut budget = Budget::default();
    if let Some(n) = params.budget {
        budget.nodes = n;
    }
    budget.max_steps = params.max_steps;
    Ok(reduce(mu, params.goal, budget, params.seed.unwrap_or(0))?)
}

pub fn reduce_out(subject: &Subject, trace: &ReductionTrace) -> ReduceOut {
    ReduceOut {
        goal: trace.goal,
        goal_reached: trace.goal_reached,
        steps: trace.steps.len(),
        nodes_expanded: trace.nodes_expanded,
        budget_exhausted: trace.budget_exhausted,
        trace: trace.to_json(),
        listing: listing_out(&trace.final_coloring, &subject.label),
    }
}

pub fn codes_out(mu: &Coloring) -> CodeReport {
    code_report(mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_subject_defaults_to_lacunar_stc() {
        let s = build_subject(
            &ColoringSpec {
                catalog: Some("q3".into()),
                ..Default::default()
            },
            true,
        )
        .unwrap();
        assert_eq!(s.coloring.beta(), 2);
        assert_eq!(s.label, "Q3");
        let l = listing_out(&s.coloring, &s.label);
        assert!(l.summary.starts_with("Q3("));
    }

    #[test]
    fn named_coloring_resolves_through_catalog() {
        let s = build_subject(
            &ColoringSpec {
                catalog: Some("petersen".into()),
                ..Default::default()
            },
            true,
        )
        .unwrap();
        let json = s.coloring_json(&s.coloring);
        let again = build_subject(
            &ColoringSpec {
                coloring: Some(json),
                ..Default::default()
            },
            true,
        )
        .unwrap();
        assert_eq!(again.coloring, s.coloring);
        assert_eq!(again.key.as_deref(), Some("petersen"));
    }

    #[test]
    fn path_input_forms() {
        let p: PathInput = serde_json::from_str("[0,3,2,5]").unwrap();
        assert!(matches!(p, PathInput::Vertices(_)));
        let p: PathInput = serde_json::from_str(r#"[{"vertex":0},{"edge":1},{"vertex":1}]"#).unwrap();
        assert!(matches!(p, PathInput::Elements(_)));
        let e: EdgeInput = serde_json::from_str("[0,12]").unwrap();
        assert!(matches!(e, EdgeInput::Pair([0, 12])));
    }
}
