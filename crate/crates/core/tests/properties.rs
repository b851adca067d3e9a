use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use semitotal::catalog::{catalog, catalog_keys};
use semitotal::families::{complete_graph, cycle_graph, lcf};
use semitotal::kempe::{enumerate_mcaps, flip_beta_edge, swap, Mcap};
use semitotal::search::{reduce, Budget, Goal};
use semitotal::{lift_coloring, verify_covering, Coloring, Graph, PatternString};

fn seeds() -> &'static Vec<Coloring> {
    static SEEDS: OnceLock<Vec<Coloring>> = OnceLock::new();
    SEEDS.get_or_init(|| {
        catalog_keys()
            .iter()
            .filter_map(|k| catalog(k).ok()?.lacunar_stc().ok())
            .filter(|mu| mu.graph().vertex_count() <= 40)
            .collect()
    })
}

/// Walks `steps` random swaps from a seed coloring, choosing by `picks`.
fn walk(seed: usize, picks: &[usize]) -> Coloring {
    let mut mu = seeds()[seed % seeds().len()].clone();
    for &p in picks {
        let paths = enumerate_mcaps(&mu, None).unwrap();
        if paths.is_empty() {
            break;
        }
        mu = swap(&mu, &paths[p % paths.len()]).unwrap();
    }
    mu
}

fn small_graph(which: usize) -> Arc<Graph> {
    Arc::new(match which % 4 {
        0 => cycle_graph(5).unwrap(),
        1 => complete_graph(4).unwrap(),
        2 => lcf("[3,-3]^4").unwrap().0,
        _ => cycle_graph(6).unwrap(),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn swaps_stay_semi_total(seed in 0usize..64, picks in prop::collection::vec(0usize..1000, 0..12), last in 0usize..1000) {
        let mu = walk(seed, &picks);
        let paths = enumerate_mcaps(&mu, None).unwrap();
        prop_assume!(!paths.is_empty());
        let p = &paths[last % paths.len()];
        let nu = swap(&mu, p).unwrap();
        prop_assert!(nu.is_stc());
        // exactly the skeleton changes
        let mut changed = mu.diff(&nu).unwrap();
        let mut skeleton = p.skeleton();
        changed.sort();
        skeleton.sort();
        prop_assert_eq!(changed, skeleton);
        prop_assert_eq!(nu.totals().iter().sum::<usize>(), nu.graph().element_count());
    }

    #[test]
    fn swap_and_flip_are_involutions(seed in 0usize..64, picks in prop::collection::vec(0usize..1000, 0..8), last in 0usize..1000) {
        let mu = walk(seed, &picks);
        let paths = enumerate_mcaps(&mu, None).unwrap();
        if let Some(p) = paths.get(last % paths.len().max(1)) {
            let nu = swap(&mu, p).unwrap();
            let back = Mcap::from_vertices(&nu, &p.vertices).unwrap();
            prop_assert_eq!(swap(&nu, &back).unwrap(), mu.clone());
        }
        let beta = mu.beta_edges();
        if let Some(&e) = beta.get(last % beta.len().max(1)) {
            let f = flip_beta_edge(&mu, e).unwrap();
            prop_assert!(f.is_stc());
            prop_assert_eq!(flip_beta_edge(&f, e).unwrap(), mu);
        }
    }

    #[test]
    fn tc_iff_stc_without_beta_edges(which in 0usize..4, raw in prop::collection::vec(0u16..4, 40)) {
        let g = small_graph(which);
        let pal = g.max_degree() as u16 + 1;
        let vc: Vec<u16> = raw.iter().take(g.vertex_count()).map(|c| c % pal).collect();
        let ec: Vec<u16> = raw.iter().skip(g.vertex_count()).take(g.edge_count()).map(|c| c % pal).collect();
        let mu = Coloring::new(g, vc, ec).unwrap();
        prop_assert_eq!(mu.is_tc(), mu.is_stc() && mu.beta() == 0);
        let l = mu.listing();
        prop_assert_eq!(l.totals().iter().sum::<usize>(), l.element_count());
        prop_assert_eq!(l.gamma <= 1, l.is_equitable);
        let json = serde_json::to_string(&mu.to_json()).unwrap();
        let back = Coloring::from_json(&serde_json::from_str(&json).unwrap(), |n| Err(semitotal::Error::UnknownCatalogKey(n.into()))).unwrap();
        prop_assert_eq!(back, mu);
    }

    #[test]
    fn lifts_scale(picks in prop::collection::vec(0usize..1000, 0..10)) {
        let q3 = catalog("q3").unwrap();
        let p8 = catalog("prism8").unwrap();
        let cm = verify_covering(&p8.graph, &q3.graph, &p8.cover.unwrap().map).unwrap();
        let mut mu = q3.lacunar_stc().unwrap();
        for p in picks {
            let paths = enumerate_mcaps(&mu, None).unwrap();
            mu = swap(&mu, &paths[p % paths.len()]).unwrap();
        }
        let lifted = lift_coloring(&cm, &mu).unwrap();
        prop_assert_eq!(lifted.beta(), 2 * mu.beta());
        prop_assert_eq!(lifted.gamma(), 2 * mu.gamma());
        prop_assert_eq!(lifted.is_tc(), mu.is_tc());
    }

    #[test]
    fn reduce_traces_are_monotone(seed in 0usize..64, picks in prop::collection::vec(0usize..1000, 0..6), rng in any::<u64>(), goal in 0usize..4) {
        let mu = walk(seed, &picks);
        let goal = [Goal::Tc, Goal::EquitableTc, Goal::EquitableStc, Goal::MinBetaGamma][goal];
        let tr = reduce(&mu, goal, Budget { nodes: 500, max_steps: None }, rng).unwrap();
        let mut prev = goal.score(mu.beta(), mu.gamma());
        for s in &tr.steps {
            let next = goal.score(s.after.0, s.after.1);
            prop_assert!(next < prev);
            prev = next;
        }
        prop_assert_eq!(tr.replay().unwrap(), tr.final_coloring.clone());
        prop_assert!(goal.score(tr.final_coloring.beta(), tr.final_coloring.gamma()) <= goal.score(mu.beta(), mu.gamma()));
    }

    #[test]
    fn pattern_text_round_trips(tokens in prop::collection::vec((0u16..4, 0u16..4), 1..30), k in 1usize..4) {
        let body: Vec<String> = tokens.iter().map(|(v, e)| format!("{v}_{e}")).collect();
        let text = format!("({})^{k}", body.join(" "));
        let p = PatternString::parse(&text).unwrap();
        prop_assert_eq!(p.len(), tokens.len() * k);
        let again = PatternString::parse(&p.to_string()).unwrap();
        prop_assert_eq!(again.tokens(), p.tokens());
    }
}
