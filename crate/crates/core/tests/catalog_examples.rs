use std::sync::Arc;

use semitotal::catalog::{catalog, catalog_keys, mobius_ladder_3k};
use semitotal::codes::{
    classify_stc, code_report, edge_orthogonal, is_efficient_tc, is_perfect_code, is_total_perfect_code,
};
use semitotal::families::{complete_bipartite, identity_hamilton, prism};
use semitotal::kempe::{classify_step, enumerate_mcaps, swap, Mcap, StepClass};
use semitotal::search::{reduce, Budget, Goal};
use semitotal::{default_lacunar_stc, format_listing, Coloring, ElementRef, Violation};

fn lacunar(key: &str) -> Coloring {
    catalog(key).unwrap().lacunar_stc().unwrap()
}

#[test]
fn every_catalog_entry_loads() {
    for key in catalog_keys() {
        let e = catalog(&key).unwrap_or_else(|err| panic!("{key}: {err}"));
        assert!(e.graph.is_connected(), "{key}");
        if let Some(p) = &e.pattern {
            assert_eq!(p.len(), e.graph.vertex_count(), "{key}");
        }
    }
}

#[test]
fn k33_lacunar_stc_has_three_beta_edges() {
    let mu = lacunar("k33");
    let report = mu.validate();
    assert!(report.is_stc());
    assert!(!report.is_tc());
    assert_eq!(mu.beta(), 3);
    assert_eq!(report.violations.len(), 3);
    assert!(report
        .violations
        .iter()
        .all(|v| matches!(v, Violation::VertexAdjacent { .. })));
    assert_eq!(classify_stc(&mu).unwrap(), 3);
}

#[test]
fn vertex_matching_incident_edge_is_reported() {
    let mut mu = lacunar("q3");
    let e = mu.graph().incident_edges(0)[0];
    let c = mu.edge_color(e);
    mu.set(ElementRef::Vertex(0), c).unwrap();
    let report = mu.validate();
    assert!(!report.is_stc());
    assert!(report
        .violations
        .contains(&Violation::VertexEdge { vertex: 0, edge: e, color: c }));
}

#[test]
fn beta_edge_counts() {
    assert_eq!(lacunar("q3").beta_edges().len(), 2);
    let fos = lacunar("foster90");
    assert_eq!(fos.beta_edges().len(), 15);
    let l = fos.listing();
    assert_eq!(l.totals(), vec![60, 60, 60, 45]);
    assert_eq!(l.gamma, 15);
    assert_eq!(l.lacunar_colors, vec![3]);
    let (q3, tc) = {
        let mu = lacunar("q3");
        let p = Mcap::from_vertices(&mu, &[0, 3, 2, 5]).unwrap();
        let nu = swap(&mu, &p).unwrap();
        (mu, nu)
    };
    assert!(tc.beta_edges().is_empty());
    assert_eq!(q3.beta(), 2);
}

#[test]
fn listings_of_final_colorings() {
    let e = catalog("heawood").unwrap();
    let tr = e.replay_trace(Goal::EquitableTc).unwrap();
    let l = tr.final_coloring.listing();
    assert_eq!(l.totals(), vec![9, 9, 9, 8]);
    assert!(l.is_equitable && l.is_tc);
    assert!(format_listing(&l, "Hea").ends_with("Hea(9,9,9,8)=Hea(8,9^3)"));

    let bs = catalog("biggs_smith").unwrap().replay_trace(Goal::EquitableStc).unwrap();
    let l = bs.final_coloring.listing();
    assert_eq!(l.totals(), vec![64, 64, 64, 63]);
    assert_eq!(l.gamma, 1);
    assert_eq!((l.classes[3].vertices, l.classes[3].edges), (24, 39));
    assert_eq!((l.classes[0].vertices, l.classes[0].edges), (26, 38));

    let q3 = catalog("q3").unwrap().replay_trace(Goal::EquitableTc).unwrap();
    assert!(format_listing(&q3.final_coloring.listing(), "Q3").ends_with("=Q3(5^4)"));
}

#[test]
fn mobius_ladder_beta_edges_are_rungs() {
    let e = mobius_ladder_3k(2).unwrap();
    let mu = e.lacunar_stc().unwrap();
    let h = e.hamilton.as_ref().unwrap();
    let mut beta = mu.beta_edges();
    beta.sort_unstable();
    let mut chords = h.chords.clone();
    chords.sort_unstable();
    assert_eq!(beta, chords);
    assert_eq!(beta.len(), 6);
    for c in 0..3 {
        assert!(is_total_perfect_code(mu.graph(), &mu.vertex_class(c)));
    }
}

#[test]
fn default_lacunar_colorings() {
    let tc = catalog("tutte_coxeter").unwrap();
    let h = tc.hamilton.as_ref().unwrap();
    let mu = default_lacunar_stc(&tc.graph, h).unwrap();
    assert_eq!(mu.beta(), 5);
    // no seam repair: the plain i mod 3 sequence
    for (i, &v) in h.cycle.iter().enumerate() {
        assert_eq!(mu.vertex_color(v) as usize, (2 * i) % 3);
    }

    let mc = catalog("mcgee").unwrap();
    let mu = default_lacunar_stc(&mc.graph, mc.hamilton.as_ref().unwrap()).unwrap();
    assert_eq!(mu.beta(), 4);

    let hea = catalog("heawood").unwrap();
    let h = hea.hamilton.as_ref().unwrap();
    let mu = default_lacunar_stc(&hea.graph, h).unwrap();
    assert!(mu.is_stc() && mu.is_lacunar());
    assert_eq!(mu, default_lacunar_stc(&hea.graph, h).unwrap());
    assert_eq!(hea.lacunar_stc().unwrap().beta(), 2);
}

#[test]
fn step_classification_examples() {
    let mu = lacunar("q3");
    let nu = swap(&mu, &Mcap::from_vertices(&mu, &[0, 3, 2, 5]).unwrap()).unwrap();
    let class = classify_step(&mu, &nu).unwrap();
    assert!(matches!(class, StepClass::BetaGamma { total_beta: true, .. }) || class == StepClass::TotalBeta);
    assert_eq!(classify_step(&mu, &mu).unwrap(), StepClass::Neutral);
    assert_eq!(
        StepClass::from_scores((4, 4), (2, 2)),
        StepClass::BetaGamma {
            total_beta: false,
            total_gamma: false
        }
    );
    assert_eq!(StepClass::from_scores((4, 4), (2, 2)).to_string(), "partial β-γ-reduction");
}

#[test]
fn reduce_examples() {
    let pap = reduce(&lacunar("pappus"), Goal::EquitableTc, Budget::default(), 0).unwrap();
    assert!(pap.goal_reached && pap.steps.len() <= 3);
    let mut t = pap.final_coloring.totals();
    t.sort_unstable();
    assert_eq!(t, vec![11, 11, 11, 12]);

    let dod = reduce(&lacunar("dodecahedron"), Goal::EquitableTc, Budget::default(), 0).unwrap();
    assert!(dod.goal_reached, "{:?}", dod.final_coloring.listing());
    let mut t = dod.final_coloring.totals();
    t.sort_unstable();
    assert_eq!(t, vec![12, 12, 13, 13]);

    // already at the goal: nothing to do
    let tc = pap.final_coloring.clone();
    let again = reduce(&tc, Goal::EquitableTc, Budget::default(), 0).unwrap();
    assert!(again.goal_reached && again.steps.is_empty());
}

#[test]
fn reduce_is_deterministic() {
    let mu = lacunar("dyck");
    let a = reduce(&mu, Goal::EquitableTc, Budget::default(), 3).unwrap();
    let b = reduce(&mu, Goal::EquitableTc, Budget::default(), 3).unwrap();
    assert_eq!(
        serde_json::to_string(&a.to_json()).unwrap(),
        serde_json::to_string(&b.to_json()).unwrap()
    );
}

#[test]
fn robertson_runs_with_five_colors() {
    let e = catalog("robertson").unwrap();
    assert_eq!(e.graph.max_degree(), 4);
    // not cubic, so build an STC from the cycle and a proper coloring of the rest
    let h = e.hamilton.as_ref().unwrap();
    assert!(default_lacunar_stc(&e.graph, h).is_err());
    let mu = Coloring::new(e.graph.clone(), vec![0; 19], vec![0; 38]).unwrap();
    assert!(!mu.is_stc());
    assert_eq!(mu.palette(), 5);
}

#[test]
fn perfect_code_examples() {
    let fos = catalog("foster90").unwrap();
    let h = fos.hamilton.as_ref().unwrap();
    let residue = |r: usize| -> Vec<usize> {
        h.cycle.iter().enumerate().filter(|(i, _)| i % 3 == r).map(|(_, &v)| v).collect()
    };
    // residue 1 is a total perfect code, so its chords stay inside it; the
    // other two residues are then chord-matched to each other and each of
    // their vertices sees the other class twice, so neither is a perfect code
    let tpc: Vec<usize> = (0..3).filter(|&r| is_total_perfect_code(&fos.graph, &residue(r))).collect();
    assert_eq!(tpc, vec![1]);
    for r in [0, 2] {
        assert!(!is_perfect_code(&fos.graph, &residue(r)), "residue {r}");
        let other = residue(2 - r);
        assert!(other.iter().all(|&v| {
            fos.graph.neighbors(v).iter().filter(|w| residue(r).contains(w)).count() == 2
        }));
    }
    let all: Vec<usize> = (0..fos.graph.vertex_count()).collect();
    assert!(!is_perfect_code(&fos.graph, &all));
    // the total perfect class induces 15 disjoint β-edges, not 17
    let mu = fos.lacunar_stc().unwrap();
    assert_eq!(mu.beta(), 15);
    assert_eq!(classify_stc(&mu).unwrap(), 1);
    assert_eq!(classify_stc(&lacunar("tutte_coxeter")).unwrap(), 1);
}

#[test]
fn classify_rejects_bad_input() {
    let tc = catalog("q3").unwrap().replay_trace(Goal::EquitableTc).unwrap().final_coloring;
    assert_eq!(classify_stc(&tc).unwrap_err(), semitotal::Error::NotLacunar);
    let k34 = Arc::new(complete_bipartite(3, 4).unwrap());
    let mu = Coloring::new(k34, vec![0; 7], vec![0; 12]).unwrap();
    assert_eq!(classify_stc(&mu).unwrap_err(), semitotal::Error::NotCubic);
}

#[test]
fn efficient_total_colorings() {
    let q3 = catalog("q3").unwrap().replay_trace(Goal::EquitableTc).unwrap().final_coloring;
    assert!(is_efficient_tc(&q3).unwrap());
    let pet = catalog("petersen").unwrap().stored_coloring().unwrap();
    assert_eq!(pet.totals(), vec![6, 6, 6, 7]);
    assert!(!is_efficient_tc(&pet).unwrap());
    assert_eq!(is_efficient_tc(&lacunar("q3")).unwrap_err(), semitotal::Error::NotTotal);
    let report = code_report(&q3);
    assert!(report.efficient_tc);
    assert_eq!(report.total_perfect_rank, None);
}

/// Two total colorings of the 4-prism with the same vertex colors and
/// disjoint edge colors.
#[test]
fn orthogonal_edge_colorings() {
    let (g, _) = prism(4).unwrap();
    let g = Arc::new(g);
    let vc = vec![0, 1, 2, 3, 2, 3, 0, 1];
    // edges in canonical order, built from (top i, rung i, bottom i) colors
    let build = |top: [u16; 4], rung: [u16; 4], bottom: [u16; 4]| {
        let mut ec = vec![0; g.edge_count()];
        for i in 0..4 {
            let j = (i + 1) % 4;
            ec[g.edge_between(i, j).unwrap()] = top[i];
            ec[g.edge_between(i, 4 + i).unwrap()] = rung[i];
            ec[g.edge_between(4 + i, 4 + j).unwrap()] = bottom[i];
        }
        Coloring::new(g.clone(), vc.clone(), ec).unwrap()
    };
    let a = build([3, 0, 1, 2], [1, 2, 3, 0], [0, 1, 2, 3]);
    let b = build([2, 3, 0, 1], [3, 0, 1, 2], [1, 2, 3, 0]);
    assert!(a.is_tc() && b.is_tc());
    assert!(edge_orthogonal(&a, &b).unwrap());
    assert!(!edge_orthogonal(&a, &a).unwrap());
}

#[test]
fn mcaps_are_listed_from_the_lower_end() {
    let mu = lacunar("heawood");
    let paths = enumerate_mcaps(&mu, Some((3, 0))).unwrap();
    let same = enumerate_mcaps(&mu, Some((0, 3))).unwrap();
    assert_eq!(paths, same);
    assert!(paths.iter().all(|p| p.start() < p.end() && p.k() >= 2));
    assert!(paths.iter().any(|p| p.vertices == [1, 10, 9, 4, 3, 12] || p.vertices == [12, 3, 4, 9, 10, 1]));
}

#[test]
fn identity_cycles_match_lcf_graphs() {
    let e = catalog("dyck").unwrap();
    let h = identity_hamilton(&e.graph).unwrap();
    assert_eq!(h.chords.len(), 16);
}
