use cayley_cliques::cayley::GraphKind;
use cayley_cliques::verify::{
    check_hypotheses, find_counterexamples, peisert_threshold, sweep, verify_case, CaseParams, HypothesisRegime,
    KindTag, SweepConfig, Verdict,
};
use cayley_cliques::Error;

fn small_sweep(max_order: u64) -> SweepConfig {
    SweepConfig {
        max_order,
        kinds: vec![KindTag::Paley, KindTag::Peisert],
        ..SweepConfig::default()
    }
}

#[test]
fn sweep_reports_are_sound() {
    let reports = sweep(&small_sweep(2500)).unwrap();
    assert!(!reports.is_empty());
    for r in &reports {
        let regime = check_hypotheses(&r.case).unwrap();
        assert_eq!(r.hypothesis_regime, regime);
        if !r.maximal_subfield_clique {
            assert_eq!(r.verdict, Verdict::Vacuous);
            continue;
        }
        assert!(r.subfield_clique);
        assert_eq!(r.maximal_clique, r.witnesses.is_empty());
        assert_ne!(r.verdict, Verdict::Violation, "{}", r.case);
        let expected = match (regime.is_below_threshold(), r.maximal_clique) {
            (_, true) => Verdict::Consistent,
            (true, false) => Verdict::CounterexampleBelowThreshold,
            (false, false) => Verdict::Violation,
        };
        assert_eq!(r.verdict, expected);
        if r.verdict == Verdict::CounterexampleBelowThreshold {
            if let GraphKind::GeneralizedPeisert { d } = r.case.kind {
                assert!(r.case.q() as f64 <= peisert_threshold(r.case.n, d));
            }
        }
        if let Some(ext) = &r.extended_clique {
            assert_eq!(Some(ext.len()), r.extended_clique_size);
            assert!(ext.len() > r.case.q() as usize);
        }
    }
}

#[test]
fn witnesses_are_common_neighbours() {
    use cayley_cliques::cayley::CayleyGraph;
    use cayley_cliques::ff::build_field;
    use std::sync::Arc;
    for r in find_counterexamples(&small_sweep(729)).unwrap().counterexamples {
        let t = Arc::new(build_field(r.case.p, r.case.full_degree()).unwrap());
        let g = CayleyGraph::new(t.clone(), r.case.kind.clone()).unwrap();
        let base = t.subfield_elements(r.case.s).unwrap();
        for &w in &r.witnesses {
            let mut c = base.clone();
            c.push(w);
            assert!(g.is_clique(&c));
        }
        assert_eq!(r.witnesses, g.common_neighbors(&base));
    }
}

#[test]
fn sweeps_are_deterministic_across_worker_counts() {
    let one = sweep(&small_sweep(2200)).unwrap();
    let four = sweep(&SweepConfig {
        workers: 4,
        ..small_sweep(2200)
    })
    .unwrap();
    assert_eq!(one, four);
    let keys: Vec<_> = one
        .iter()
        .map(|r| (r.case.p, r.case.s, r.case.n, r.case.d(), r.case.kind.tag()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn smallest_counterexample_is_gf81() {
    let found = find_counterexamples(&small_sweep(81)).unwrap();
    assert!(found.violations.is_empty());
    let cases: Vec<_> = found.counterexamples.iter().map(|r| r.case.clone()).collect();
    let expected: Vec<_> = [4, 8, 20, 40]
        .map(|d| CaseParams::new(3, 1, 4, GraphKind::GeneralizedPeisert { d }))
        .to_vec();
    assert_eq!(cases, expected);
    let sizes: Vec<_> = found
        .counterexamples
        .iter()
        .map(|r| (r.witnesses.len(), r.extended_clique_size))
        .collect();
    assert_eq!(sizes, vec![(12, Some(9)), (12, Some(9)), (6, Some(9)), (12, Some(9))]);

    let none = find_counterexamples(&small_sweep(50)).unwrap();
    assert!(none.counterexamples.is_empty() && none.violations.is_empty());
}

#[test]
fn threshold_regimes() {
    let c = CaseParams::new(3, 1, 3, GraphKind::GeneralizedPaley { d: 2 });
    assert_eq!(check_hypotheses(&c).unwrap(), HypothesisRegime::BelowThreshold);
    let c = CaseParams::new(5, 1, 2, GraphKind::GeneralizedPaley { d: 2 });
    assert_eq!(check_hypotheses(&c).unwrap(), HypothesisRegime::Theorem1);
    let r = verify_case(&c).unwrap();
    assert_eq!(r.verdict, Verdict::Consistent);
}

#[test]
fn invalid_sweeps_are_rejected() {
    let bad = SweepConfig {
        workers: 0,
        ..SweepConfig::default()
    };
    assert!(matches!(sweep(&bad), Err(Error::InvalidConfig(_))));
    let bad = SweepConfig {
        max_order: 1 << 30,
        ..SweepConfig::default()
    };
    assert!(matches!(sweep(&bad), Err(Error::InvalidConfig(_))));
}
