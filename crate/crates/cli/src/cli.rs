//! The `semitotal` command line.

use std::fs;
use std::io::{self, Read};
use std::net::SocketAddr;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use semitotal::catalog::{catalog, catalog_keys};
use semitotal::coloring::ColoringJson;
use semitotal::covering::CoveringJson;
use semitotal::families;
use semitotal::oracle::{Cap, Oracle, OracleCache, OracleStatus, Query};
use semitotal::search::Goal;
use semitotal::{lift_coloring, verify_covering, Color, Graph, GraphJson};

use crate::error::{AppError, AppResult};
use crate::ops::{self, build_subject, ColoringSpec, EdgeInput, PathInput, ReduceParams, Subject};
use crate::server::{self, ServerConfig};

#[derive(Debug, Parser)]
#[command(name = "semitotal", version, about = "Semi-total colorings, path swaps and reductions")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a graph as JSON: a catalog key, or family:params
    /// (lcf:[3,-3]^4, prism:8, mobius:6, gp:5,2, cycle:7, complete:4,
    /// kmn:3,3, haar:N, fat-mobius:4).
    Gen { spec: String },
    /// List the catalog.
    Catalog,
    /// Build a coloring and print it.
    Color(SourceArgs),
    /// Check a coloring; exits 1 unless it is semi-total.
    Validate(SourceArgs),
    /// Per-color class sizes, β and γ.
    Listing(SourceArgs),
    /// Maximal color-alternating paths with at least two edges.
    Mcaps {
        #[command(flatten)]
        source: SourceArgs,
        /// Restrict to one color pair, as `c0,c1`.
        #[arg(long)]
        colors: Option<String>,
    },
    /// Swap the two colors along a path given by its vertices.
    Swap {
        #[command(flatten)]
        source: SourceArgs,
        /// Vertices `v0,v1,...`, or a JSON array of vertices or element refs.
        #[arg(long)]
        path: String,
    },
    /// Exchange colors on a β-edge and its endpoints.
    Flip {
        #[command(flatten)]
        source: SourceArgs,
        /// Edge index, or endpoints `u-v`.
        #[arg(long)]
        edge: String,
    },
    /// Search for a reduction toward a goal.
    Reduce {
        #[command(flatten)]
        source: SourceArgs,
        /// tc, equitable-tc, equitable-stc or min-beta-gamma.
        #[arg(long, default_value = "tc")]
        goal: String,
        /// Node budget.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        max_steps: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lift a coloring of the target through a covering map.
    Lift {
        #[command(flatten)]
        cover: CoverArgs,
        /// Target coloring file; defaults to the target's catalog coloring.
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// Check a covering map.
    VerifyCover(CoverArgs),
    /// Perfect and total perfect codes among the color classes.
    Codes(SourceArgs),
    /// Exact values by exhaustive search on small graphs.
    Oracle {
        /// total-chromatic, min-beta or min-gamma.
        query: String,
        #[command(flatten)]
        graph: GraphArgs,
        /// Element cap; above the default needs --consent.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        consent: bool,
        /// Directory for cached results.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Graphviz output of a coloring, optionally highlighting a path.
    ExportDot {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        highlight: Option<String>,
        /// Omit colors.
        #[arg(long)]
        graph_only: bool,
    },
    /// Run the HTTP session service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Directory of static files served at `/`.
        #[arg(long = "static")]
        static_dir: Option<PathBuf>,
        /// Directory where sessions are saved and reloaded from.
        #[arg(long)]
        persist: Option<PathBuf>,
        #[arg(long)]
        oracle_cache: Option<PathBuf>,
    },
}

/// Where a coloring comes from. Files may be `-` for stdin.
#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Catalog key.
    #[arg(long, short = 'c')]
    pub catalog: Option<String>,
    /// Graph JSON file.
    #[arg(long, short = 'g')]
    pub graph: Option<PathBuf>,
    /// Coloring JSON file (graph inline or by catalog key).
    #[arg(long)]
    pub coloring: Option<PathBuf>,
    /// Pattern string for the Hamilton cycle, e.g. `(0_1 2_0 1_2)^2`.
    #[arg(long, short = 'p')]
    pub pattern: Option<String>,
    /// Hamilton cycle `v0,v1,...`.
    #[arg(long)]
    pub hamilton: Option<String>,
    /// Use the default lacunar construction even when the catalog has a pattern.
    #[arg(long)]
    pub default_lacunar: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    #[arg(long, short = 'c')]
    pub catalog: Option<String>,
    #[arg(long, short = 'g')]
    pub graph: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CoverArgs {
    /// Source (covering) graph: catalog key. Its recorded cover is used
    /// unless --map is given.
    #[arg(long)]
    pub source: Option<String>,
    #[arg(long)]
    pub target: Option<String>,
    /// Covering JSON file `{source, target, map}`.
    #[arg(long)]
    pub map: Option<PathBuf>,
}

fn read_input(path: &PathBuf) -> AppResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(semitotal::Error::from)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path).map_err(|e| semitotal::Error::Io(format!("{}: {e}", path.display())))?)
    }
}

fn read_json<T: DeserializeOwned>(path: &PathBuf) -> AppResult<T> {
    serde_json::from_str(&read_input(path)?)
        .map_err(|e| AppError::Malformed(format!("{}: {e}", path.display())))
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> AppResult<Vec<T>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| AppError::Usage(format!("bad {what} `{text}`"))))
        .collect()
}

impl SourceArgs {
    pub fn spec(&self) -> AppResult<ColoringSpec> {
        Ok(ColoringSpec {
            catalog: self.catalog.clone(),
            graph: self.graph.as_ref().map(read_json::<GraphJson>).transpose()?,
            hamilton: self.hamilton.as_deref().map(|h| parse_list(h, "Hamilton cycle")).transpose()?,
            pattern: self.pattern.clone(),
            default_lacunar: self.default_lacunar,
            coloring: self.coloring.as_ref().map(read_json::<ColoringJson>).transpose()?,
        })
    }

    fn subject(&self, require_stc: bool) -> AppResult<Subject> {
        build_subject(&self.spec()?, require_stc)
    }
}

impl GraphArgs {
    fn load(&self) -> AppResult<(Graph, String)> {
        match (&self.catalog, &self.graph) {
            (Some(k), None) => {
                let e = catalog(k)?;
                Ok((e.graph.as_ref().clone(), e.name))
            }
            (None, Some(p)) => {
                let g = Graph::from_json(&read_json(p)?)?;
                let name = g.name().unwrap_or("G").to_string();
                Ok((g, name))
            }
            _ => Err(AppError::Usage("give exactly one of --catalog or --graph".into())),
        }
    }
}

fn parse_path(text: &str) -> AppResult<PathInput> {
    if text.trim_start().starts_with('[') {
        serde_json::from_str(text).map_err(|e| AppError::Usage(format!("bad path: {e}")))
    } else {
        Ok(PathInput::Vertices(parse_list(text, "path")?))
    }
}

fn parse_edge(text: &str) -> AppResult<EdgeInput> {
    let parts: Vec<usize> = parse_list(&text.replace('-', ","), "edge")?;
    match parts[..] {
        [e] => Ok(EdgeInput::Index(e)),
        [u, v] => Ok(EdgeInput::Pair([u, v])),
        _ => Err(AppError::Usage(format!("bad edge `{text}`"))),
    }
}

fn gen_graph(spec: &str) -> AppResult<Graph> {
    let Some((family, args)) = spec.split_once(':') else {
        return Ok(catalog(spec)?.graph.as_ref().clone());
    };
    if family == semitotal::catalog::MOBIUS_LADDER_3K {
        return Ok(catalog(spec)?.graph.as_ref().clone());
    }
    let nums = || parse_list::<usize>(args, "parameters");
    let one = || -> AppResult<usize> {
        match nums()?[..] {
            [n] => Ok(n),
            _ => Err(AppError::Usage(format!("`{family}` takes one parameter"))),
        }
    };
    let two = || -> AppResult<(usize, usize)> {
        match nums()?[..] {
            [a, b] => Ok((a, b)),
            _ => Err(AppError::Usage(format!("`{family}` takes two parameters"))),
        }
    };
    let g = match family {
        "lcf" => families::lcf(args)?.0,
        "prism" => families::prism(one()?)?.0,
        "mobius" => families::mobius_ladder(one()?)?.0,
        "gp" => {
            let (m, k) = two()?;
            families::generalized_petersen(m, k)?
        }
        "cycle" => families::cycle_graph(one()?)?,
        "complete" => families::complete_graph(one()?)?,
        "kmn" => {
            let (a, b) = two()?;
            families::complete_bipartite(a, b)?
        }
        "haar" => families::haar(args.trim().parse().map_err(|_| AppError::Usage(format!("bad Haar number `{args}`")))?)?,
        "fat-mobius" => families::fat_mobius(one()?)?,
        _ => return Err(AppError::Usage(format!("unknown family `{family}`"))),
    };
    Ok(g)
}

/// What one command produced: JSON for `--json`, text otherwise.
pub struct Output {
    pub json: String,
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn new<T: Serialize>(value: &T, text: String) -> Self {
        Output {
            json: ops::render(value),
            text,
            ok: true,
        }
    }

    fn json_only<T: Serialize>(value: &T) -> Self {
        let json = ops::render(value);
        Output {
            text: json.clone(),
            json,
            ok: true,
        }
    }

    fn failing(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

fn beta_gamma(mu: &semitotal::Coloring) -> String {
    format!("β={} γ={}", mu.beta(), mu.gamma())
}

fn cover_map(args: &CoverArgs) -> AppResult<(semitotal::CoveringMap, String, String)> {
    let (source, target, map) = match (&args.map, &args.source) {
        (Some(p), _) => {
            let c: CoveringJson = read_json(p)?;
            (args.source.clone().unwrap_or(c.source), args.target.clone().unwrap_or(c.target), c.map)
        }
        (None, Some(s)) => {
            let cover = catalog(s)?
                .cover
                .ok_or_else(|| AppError::Usage(format!("`{s}` has no recorded cover; pass --map")))?;
            if let Some(t) = &args.target {
                if *t != cover.target {
                    return Err(AppError::Usage(format!("`{s}` covers `{}`, not `{t}`", cover.target)));
                }
            }
            (s.clone(), cover.target, cover.map)
        }
        (None, None) => return Err(AppError::Usage("give --source or --map".into())),
    };
    let cm = verify_covering(&catalog(&source)?.graph, &catalog(&target)?.graph, &map)?;
    Ok((cm, source, target))
}

#[derive(Serialize)]
struct CoverOut {
    source: String,
    target: String,
    fold: usize,
    map: Vec<usize>,
    edge_map: Vec<usize>,
}

#[derive(Serialize)]
struct LiftOut {
    fold: usize,
    target_beta: usize,
    target_gamma: usize,
    coloring: ColoringJson,
    listing: ops::ListingOut,
    is_tc: bool,
    is_equitable: bool,
}

/// Runs a command other than `serve`.
pub fn run(cmd: &Command) -> AppResult<Output> {
    Ok(match cmd {
        Command::Gen { spec } => {
            let g = gen_graph(spec)?;
            Output::json_only(&g.to_json())
        }
        Command::Catalog => {
            let infos: Vec<_> = catalog_keys().iter().filter_map(|k| catalog(k).ok()).map(|e| e.info()).collect();
            let text = infos
                .iter()
                .map(|i| format!("{:<18} {:<14} n={:<4} m={:<4} Δ={}\n", i.key, i.name, i.n, i.edges, i.max_degree))
                .collect();
            Output::new(&infos, text)
        }
        Command::Color(src) => {
            let s = src.subject(true)?;
            let json = s.coloring_json(&s.coloring);
            Output::json_only(&json)
        }
        Command::Validate(src) => {
            let s = src.subject(false)?;
            let v = ops::validate_out(&s.coloring);
            let mut text = format!(
                "{}: stc={} tc={} β={} γ={}\n",
                s.label, v.is_stc, v.is_tc, v.beta, v.gamma
            );
            for violation in &v.violations {
                text.push_str(&format!("  {violation:?}\n"));
            }
            let ok = v.is_stc;
            Output::new(&v, text).failing(ok)
        }
        Command::Listing(src) => {
            let s = src.subject(false)?;
            let l = ops::listing_out(&s.coloring, &s.label);
            let text = format!("{}\n{}\n", l.text.trim_end(), beta_gamma(&s.coloring));
            Output::new(&l, text)
        }
        Command::Mcaps { source, colors } => {
            let s = source.subject(true)?;
            let pair = match colors {
                Some(c) => match parse_list::<Color>(c, "color pair")?[..] {
                    [a, b] => Some((a, b)),
                    _ => return Err(AppError::Usage("--colors takes `c0,c1`".into())),
                },
                None => None,
            };
            let paths = ops::mcaps_out(&s.coloring, pair)?;
            let text = paths
                .iter()
                .map(|p| format!("({},{}) k={} {}\n", p.colors[0], p.colors[1], p.k, p.signature))
                .collect();
            Output::new(&paths, text)
        }
        Command::Swap { source, path } => {
            let s = source.subject(true)?;
            let (step, next) = ops::apply_swap(&s.coloring, &parse_path(path)?)?;
            let out = ops::move_out(&s, &step, &next);
            let text = format!("{} {}\n{}\n", out.step.class, beta_gamma(&next), out.listing.summary);
            Output::new(&out, text)
        }
        Command::Flip { source, edge } => {
            let s = source.subject(true)?;
            let (step, next) = ops::apply_flip(&s.coloring, parse_edge(edge)?)?;
            let out = ops::move_out(&s, &step, &next);
            let text = format!("{} {}\n{}\n", out.step.class, beta_gamma(&next), out.listing.summary);
            Output::new(&out, text)
        }
        Command::Reduce {
            source,
            goal,
            budget,
            max_steps,
            seed,
        } => {
            let s = source.subject(true)?;
            let params = ReduceParams {
                goal: goal.parse::<Goal>()?,
                budget: *budget,
                max_steps: *max_steps,
                seed: Some(*seed),
            };
            let trace = ops::run_reduce(&s.coloring, &params)?;
            let out = ops::reduce_out(&s, &trace);
            let mut text = format!("{} {}\n", ops::listing_out(&s.coloring, &s.label).summary, beta_gamma(&s.coloring));
            for (i, step) in out.trace.steps.iter().enumerate() {
                let verts: Vec<String> = step
                    .path
                    .iter()
                    .filter_map(|e| match e {
                        semitotal::ElementRef::Vertex(v) => Some(v.to_string()),
                        _ => None,
                    })
                    .collect();
                text.push_str(&format!(
                    "{:>3}. {} ({},{}) [{}] β,γ {:?} -> {:?} {}\n",
                    i + 1,
                    step.kind,
                    step.colors[0],
                    step.colors[1],
                    verts.join(" "),
                    step.before,
                    step.after,
                    step.class
                ));
            }
            text.push_str(&format!(
                "goal {} {}; {} nodes\n{}\n",
                out.goal,
                if out.goal_reached { "reached" } else { "not reached" },
                out.nodes_expanded,
                out.listing.summary
            ));
            Output::new(&out, text)
        }
        Command::Lift { cover, coloring } => {
            let (cm, source, target) = cover_map(cover)?;
            let spec = ColoringSpec {
                catalog: coloring.is_none().then(|| target.clone()),
                coloring: coloring.as_ref().map(read_json::<ColoringJson>).transpose()?,
                ..Default::default()
            };
            let t = build_subject(&spec, true)?;
            let lifted = lift_coloring(&cm, &t.coloring)?;
            let label = catalog(&source)?.name;
            let out = LiftOut {
                fold: cm.fold(),
                target_beta: t.coloring.beta(),
                target_gamma: t.coloring.gamma(),
                coloring: lifted.to_json_named(&source),
                listing: ops::listing_out(&lifted, &label),
                is_tc: lifted.is_tc(),
                is_equitable: lifted.is_equitable(),
            };
            let text = format!(
                "{}-fold lift {} → {}: {} ({}) → {}\n{}\n",
                out.fold,
                source,
                target,
                beta_gamma(&t.coloring),
                ops::listing_out(&t.coloring, &t.label).summary,
                beta_gamma(&lifted),
                out.listing.summary
            );
            Output::new(&out, text)
        }
        Command::VerifyCover(args) => {
            let (cm, source, target) = cover_map(args)?;
            let out = CoverOut {
                fold: cm.fold(),
                map: cm.vertex_map().to_vec(),
                edge_map: cm.edge_map().to_vec(),
                source,
                target,
            };
            let text = format!("{} → {}: {}-fold covering\n", out.source, out.target, out.fold);
            Output::new(&out, text)
        }
        Command::Codes(src) => {
            let s = src.subject(false)?;
            let r = ops::codes_out(&s.coloring);
            let mut text = String::new();
            for c in &r.classes {
                text.push_str(&format!(
                    "color {}: {} vertices, perfect={} total-perfect={}\n",
                    c.color,
                    c.vertices.len(),
                    c.is_perfect_code,
                    c.is_total_perfect_code
                ));
            }
            text.push_str(&format!(
                "efficient TC: {}; total-perfect rank: {}\n{}\n",
                r.efficient_tc,
                r.total_perfect_rank.map_or("-".to_string(), |k| k.to_string()),
                r.beta_structure
            ));
            Output::new(&r, text)
        }
        Command::Oracle {
            query,
            graph,
            cap,
            consent,
            cache,
        } => {
            let q: Query = query.parse()?;
            let (g, name) = graph.load()?;
            let cap = match cap {
                Some(c) => Cap::new(*c, *consent)?,
                None => Cap::default(),
            };
            let mut oracle = Oracle::new(cap);
            if let Some(dir) = cache {
                oracle = oracle.with_cache(OracleCache::new(dir.clone())?);
            }
            let r = oracle.query(q, &g)?;
            let shown = match r.status {
                OracleStatus::Value => r.value.map_or("-".into(), |v| v.to_string()),
                OracleStatus::NoTotalColoring => "no total coloring with Δ+1 colors".into(),
                OracleStatus::CapExceeded => format!("cap exceeded ({} elements)", r.elements),
            };
            let text = format!("{name} {}: {shown} ({} nodes)\n", q.as_str(), r.nodes);
            let ok = r.status != OracleStatus::CapExceeded;
            Output::new(&r, text).failing(ok)
        }
        Command::ExportDot {
            source,
            highlight,
            graph_only,
        } => {
            let s = source.subject(false)?;
            let dot = if *graph_only {
                semitotal::dot::graph_to_dot(s.graph(), Some(&s.label))
            } else {
                let mcap = match highlight {
                    Some(h) => Some(parse_path(h)?.to_mcap(&s.coloring)?),
                    None => None,
                };
                semitotal::dot::coloring_to_dot(&s.coloring, Some(&s.label), mcap.as_ref())
            };
            Output {
                json: ops::render(&serde_json::json!({ "dot": dot })),
                text: dot,
                ok: true,
            }
        }
        Command::Serve { .. } => return Err(AppError::Usage("serve is not a one-shot command".into())),
    })
}

/// Entry point; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    if let Command::Serve {
        port,
        host,
        static_dir,
        persist,
        oracle_cache,
    } = &cli.command
    {
        let addr: SocketAddr = match format!("{host}:{port}").parse() {
            Ok(a) => a,
            Err(e) => {
                eprintln!("error: bad address: {e}");
                return 2;
            }
        };
        let config = ServerConfig {
            static_dir: static_dir.clone(),
            persist_dir: persist.clone(),
            oracle_cache: oracle_cache.clone(),
        };
        let rt = match tokio::runtime::Runtime::new() {
            Ok(rt) => rt,
            Err(e) => {
                eprintln!("error: {e}");
                return 1;
            }
        };
        return match rt.block_on(server::serve(addr, config)) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        };
    }
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                print!("{}", out.json);
            } else {
                print!("{}", out.text);
                if !out.text.ends_with('\n') {
                    println!();
                }
            }
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            if cli.json {
                print!("{}", ops::render(&e.body()));
            }
            eprintln!("error: {e}");
            if matches!(e, AppError::Usage(_)) {
                2
            } else {
                1
            }
        }
    }
}
