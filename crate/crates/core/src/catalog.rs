//! Named graphs with their Hamilton cycles, color patterns, recorded move
//! sequences and covering maps.
//!
//! Graphs are stored as Graph JSON files and rebuilt from their generating
//! notation on load; any disagreement is a data error.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::families::{self, ExpansionVariant, LcfNotation};
use crate::graph::{Graph, GraphJson, HamiltonDecomposition};
use crate::pattern::{apply_pattern, default_lacunar_stc, PatternString};
use crate::search::{Goal, Move, ReductionTrace};

const SIDECAR: &str = include_str!("../data/catalog.json");
const BIGGS_SMITH_ARCS: &str = include_str!("../data/biggs_smith_arcs.json");

macro_rules! graph_files {
    ($($key:literal),* $(,)?) => {
        fn graph_text(key: &str) -> Option<&'static str> {
            match key {
                $($key => Some(include_str!(concat!("../data/graphs/", $key, ".json"))),)*
                _ => None,
            }
        }
    };
}

graph_files!(
    "biggs_smith", "cage_5_6", "coxeter", "desargues", "dodecahedron", "dyck", "fmob4",
    "foster90", "franklin", "heawood", "k33", "k4_k23", "mcgee", "mobius_kantor", "pappus",
    "petersen", "prism3_k23_k3", "prism8", "q3", "robertson", "tutte_coxeter",
);

/// Parametric key: `mobius_ladder_3k:<k>`.
pub const MOBIUS_LADDER_3K: &str = "mobius_ladder_3k";

#[derive(Debug, Clone, Deserialize)]
struct RawEntry {
    name: String,
    graph: String,
    #[serde(default)]
    lcf: Option<String>,
    #[serde(default)]
    extended_lcf: Option<String>,
    #[serde(default)]
    haar: Option<u64>,
    #[serde(default)]
    family: Option<String>,
    #[serde(default)]
    ladder: Option<usize>,
    #[serde(default)]
    expansion: Option<RawExpansion>,
    #[serde(default)]
    hamilton: Option<Vec<usize>>,
    #[serde(default)]
    pattern: Option<String>,
    #[serde(default)]
    trace: Vec<TraceStep>,
    #[serde(default)]
    cover: Option<CoverData>,
    #[serde(default)]
    coloring: Option<StoredColoring>,
    #[serde(default)]
    arcs: Option<String>,
    #[serde(default)]
    arc_errata: Vec<[usize; 2]>,
    #[serde(default)]
    expected: Expected,
}

#[derive(Debug, Clone, Deserialize)]
struct RawExpansion {
    base: String,
    variant: ExpansionVariant,
}

/// One recorded move, given by vertices so it can be checked against the
/// coloring it is applied to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceStep {
    Swap { path: Vec<usize> },
    Flip { edge: [usize; 2] },
}

impl TraceStep {
    pub fn to_move(&self, mu: &Coloring) -> Result<Move> {
        match self {
            TraceStep::Swap { path } => Ok(Move::Swap(crate::kempe::Mcap::from_vertices(mu, path)?)),
            TraceStep::Flip { edge: [u, v] } => mu
                .graph()
                .edge_between(*u, *v)
                .map(Move::Flip)
                .ok_or(Error::NotAdjacent(*u, *v)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverData {
    pub target: String,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredColoring {
    pub vertex_colors: Vec<Color>,
    pub edge_colors: Vec<Color>,
}

/// Reference values recorded with an entry.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_beta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_totals: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_beta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_totals: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_multiset: Option<Vec<usize>>,
    /// Per-step `(|V^c|, |E^c|)` for every color, after each recorded step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub listings: Option<Vec<Vec<[usize; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub girth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: String,
    pub name: String,
    pub graph: Arc<Graph>,
    pub hamilton: Option<HamiltonDecomposition>,
    pub pattern: Option<PatternString>,
    pub trace: Vec<TraceStep>,
    pub cover: Option<CoverData>,
    pub coloring: Option<StoredColoring>,
    pub expected: Expected,
    /// How the graph was built and cross-checked.
    pub source: String,
}

/// Summary used for listings of the catalog.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogInfo {
    pub key: String,
    pub name: String,
    pub n: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub hamiltonian: bool,
    pub pattern: Option<String>,
    pub trace_steps: usize,
}

impl CatalogEntry {
    /// The entry's lacunar STC: its pattern on its Hamilton cycle, or the
    /// default lacunar coloring when no pattern is recorded.
    pub fn lacunar_stc(&self) -> Result<Coloring> {
        let h = self.hamilton.as_ref().ok_or_else(|| {
            Error::CatalogData(format!("`{}` has no Hamilton cycle", self.key))
        })?;
        match &self.pattern {
            Some(p) => apply_pattern(&self.graph, h, p, None),
            None => default_lacunar_stc(&self.graph, h),
        }
    }

    /// The stored coloring, for entries that carry one.
    pub fn stored_coloring(&self) -> Result<Coloring> {
        let c = self.coloring.as_ref().ok_or_else(|| {
            Error::CatalogData(format!("`{}` has no stored coloring", self.key))
        })?;
        Coloring::new(self.graph.clone(), c.vertex_colors.clone(), c.edge_colors.clone())
    }

    /// Replays the recorded moves from the lacunar STC.
    pub fn replay_trace(&self, goal: Goal) -> Result<ReductionTrace> {
        let mut trace = ReductionTrace::empty(self.lacunar_stc()?, goal);
        for step in &self.trace {
            let mv = step.to_move(&trace.final_coloring)?;
            trace.push(mv)?;
        }
        Ok(trace)
    }

    pub fn info(&self) -> CatalogInfo {
        CatalogInfo {
            key: self.key.clone(),
            name: self.name.clone(),
            n: self.graph.vertex_count(),
            edges: self.graph.edge_count(),
            max_degree: self.graph.max_degree(),
            hamiltonian: self.hamilton.is_some(),
            pattern: self.pattern.as_ref().map(|p| p.to_string()),
            trace_steps: self.trace.len(),
        }
    }
}

fn sidecar() -> &'static BTreeMap<String, RawEntry> {
    static PARSED: OnceLock<BTreeMap<String, RawEntry>> = OnceLock::new();
    PARSED.get_or_init(|| serde_json::from_str(SIDECAR).expect("embedded catalog.json is valid"))
}

/// Fixed keys, sorted; the parametric ladder key is listed last.
pub fn catalog_keys() -> Vec<String> {
    let mut keys: Vec<String> = sidecar().keys().cloned().collect();
    keys.push(MOBIUS_LADDER_3K.to_string());
    keys
}

/// Looks up a catalog entry. The parametric key takes `:k`, as in
/// `mobius_ladder_3k:2` for Mob_6.
pub fn catalog(key: &str) -> Result<CatalogEntry> {
    if let Some(rest) = key.strip_prefix(MOBIUS_LADDER_3K) {
        let k = match rest.strip_prefix(':') {
            Some(k) => k
                .parse::<usize>()
                .ok()
                .filter(|&k| k >= 1)
                .ok_or_else(|| Error::InvalidParameter(format!("bad ladder parameter `{k}`")))?,
            None if rest.is_empty() => 1,
            None => return Err(Error::UnknownCatalogKey(key.to_string())),
        };
        return mobius_ladder_3k(k);
    }
    let raw = sidecar()
        .get(key)
        .ok_or_else(|| Error::UnknownCatalogKey(key.to_string()))?;
    load(key, raw)
}

/// Mob_{3k} with the color cycle `((0_2 1_0 2_1)^{2k})`.
pub fn mobius_ladder_3k(k: usize) -> Result<CatalogEntry> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let (g, h) = families::mobius_ladder(3 * k)?;
    Ok(CatalogEntry {
        key: format!("{MOBIUS_LADDER_3K}:{k}"),
        name: format!("Mob{}", 3 * k),
        graph: Arc::new(g),
        hamilton: Some(h),
        pattern: Some(PatternString::parse(&format!("((0_2 1_0 2_1)^{})", 2 * k))?),
        trace: Vec::new(),
        cover: None,
        coloring: None,
        expected: Expected::default(),
        source: format!("Möbius ladder on {} vertices", 6 * k),
    })
}

fn data_error(key: &str, msg: impl std::fmt::Display) -> Error {
    Error::CatalogData(format!("{key}: {msg}"))
}

fn load(key: &str, raw: &RawEntry) -> Result<CatalogEntry> {
    let file = raw
        .graph
        .strip_prefix("graphs/")
        .and_then(|f| f.strip_suffix(".json"))
        .ok_or_else(|| data_error(key, "graph path must be graphs/<key>.json"))?;
    let text = graph_text(file).ok_or_else(|| data_error(key, "graph file is not embedded"))?;
    let json: GraphJson = serde_json::from_str(text)?;
    let graph = Graph::from_json(&json)?;
    let mut sources = Vec::new();

    let same = |built: &Graph, what: &str| -> Result<()> {
        if *built == graph {
            Ok(())
        } else {
            Err(data_error(key, format!("stored graph differs from {what}")))
        }
    };
    if let Some(text) = &raw.lcf {
        let (built, _) = families::lcf(text)?;
        same(&built, "its LCF notation")?;
        sources.push(format!("LCF {text}"));
    }
    if let Some(text) = &raw.extended_lcf {
        let ext = families::from_extended_lcf(&LcfNotation::parse(text)?, graph.vertex_count())?;
        same(&ext.graph, "its extended LCF notation")?;
        sources.push(format!(
            "extended LCF {text} on {} vertices (regular degree {:?}, girth {:?})",
            graph.vertex_count(),
            ext.validation.regular_degree,
            ext.validation.girth
        ));
    }
    if let Some(fam) = &raw.family {
        let built = match fam.as_str() {
            "gp(5,2)" => families::generalized_petersen(5, 2)?,
            "prism(8)" => families::prism(8)?.0,
            other => return Err(data_error(key, format!("unknown family `{other}`"))),
        };
        same(&built, fam)?;
        sources.push(fam.clone());
    }
    if let Some(r) = raw.ladder {
        same(&families::mobius_ladder(r)?.0, "its Möbius ladder")?;
        sources.push(format!("Möbius ladder Mob{r}"));
    }
    if let Some(exp) = &raw.expansion {
        let base = match exp.base.as_str() {
            "k4" => families::complete_graph(4)?,
            "prism3" => families::prism(3)?.0,
            other => return Err(data_error(key, format!("unknown expansion base `{other}`"))),
        };
        same(&families::vertex_expand(&base, exp.variant)?, "its vertex expansion")?;
        sources.push(format!("vertex expansion of {} ({:?})", exp.base, exp.variant));
    }
    if let Some(n) = raw.haar {
        sources.push(format!("isomorphic to H({n})"));
    }
    if let Some(arcs) = &raw.arcs {
        check_arc_list(key, &raw.lcf, arcs, &raw.arc_errata)?;
        sources.push(format!("arc list cross-checked, errata {:?}", raw.arc_errata));
    }
    let e = &raw.expected;
    if e.order.is_some() || e.girth.is_some() {
        let actual = (
            Some(graph.vertex_count()),
            Some(graph.edge_count()),
            graph.girth(),
            graph.regular_degree(),
        );
        if actual != (e.order, e.size, e.girth, e.degree) {
            return Err(data_error(
                key,
                format!("(order, size, girth, degree) is {actual:?}"),
            ));
        }
    }

    let hamilton = match (&raw.hamilton, &raw.lcf, raw.ladder) {
        (Some(c), _, _) => Some(graph.verify_hamilton(c)?),
        (None, Some(_), _) | (None, None, Some(_)) => Some(families::identity_hamilton(&graph)?),
        _ => None,
    };
    let pattern = raw.pattern.as_deref().map(PatternString::parse).transpose()?;
    let graph = Arc::new(graph.with_name(raw.name.clone()));
    let entry = CatalogEntry {
        key: key.to_string(),
        name: raw.name.clone(),
        graph,
        hamilton,
        pattern,
        trace: raw.trace.clone(),
        cover: raw.cover.clone(),
        coloring: raw.coloring.clone(),
        expected: raw.expected.clone(),
        source: if sources.is_empty() {
            "explicit edge list".into()
        } else {
            sources.join("; ")
        },
    };
    if entry.pattern.is_some() {
        // patterns must give lacunar STCs
        let mu = entry.lacunar_stc().map_err(|e| data_error(key, e))?;
        if !mu.is_lacunar() {
            return Err(data_error(key, "pattern coloring is not lacunar"));
        }
    }
    Ok(entry)
}

fn check_arc_list(key: &str, lcf: &Option<String>, file: &str, errata: &[[usize; 2]]) -> Result<()> {
    if file != "biggs_smith_arcs.json" {
        return Err(data_error(key, format!("unknown arc file `{file}`")));
    }
    let notation = LcfNotation::parse(
        lcf.as_deref()
            .ok_or_else(|| data_error(key, "arc list needs an LCF"))?,
    )?;
    let offsets: Vec<i64> = notation.groups.iter().map(|g| g[0]).collect();
    let n = notation.positions() as i64;
    let arcs: Vec<(usize, usize, bool)> = serde_json::from_str(BIGGS_SMITH_ARCS)?;
    let mut mismatches = Vec::new();
    for &(x, y, _) in &arcs {
        let partner = (x as i64 + offsets[x % offsets.len()]).rem_euclid(n) as usize;
        if partner != y {
            mismatches.push([x, y]);
        }
    }
    if mismatches != errata {
        return Err(data_error(
            key,
            format!("arc list disagrees with the LCF at {mismatches:?}, documented errata are {errata:?}"),
        ));
    }
    Ok(())
}

/// The arcs marked as β-edges in the Biggs-Smith arc list, as canonical pairs.
pub fn biggs_smith_marked_arcs() -> Result<Vec<(usize, usize)>> {
    let arcs: Vec<(usize, usize, bool)> = serde_json::from_str(BIGGS_SMITH_ARCS)?;
    let mut out: Vec<_> = arcs
        .into_iter()
        .filter(|a| a.2)
        .map(|(x, y, _)| (x.min(y), x.max(y)))
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_key_loads() {
        for key in catalog_keys() {
            let e = catalog(&key).unwrap_or_else(|err| panic!("{key}: {err}"));
            assert!(e.graph.is_connected(), "{key}");
        }
    }

    #[test]
    fn unknown_key() {
        assert_eq!(catalog("nope").unwrap_err(), Error::UnknownCatalogKey("nope".into()));
        assert!(catalog("mobius_ladder_3k:0").is_err());
        assert!(catalog("mobius_ladder_3kx").is_err());
    }

    #[test]
    fn ladder_parameter() {
        let e = catalog("mobius_ladder_3k:2").unwrap();
        assert_eq!(e.graph.vertex_count(), 12);
        assert_eq!(e.pattern.unwrap().len(), 12);
    }
}
