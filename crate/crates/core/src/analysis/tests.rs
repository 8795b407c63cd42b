use super::*;
use crate::fixtures;
use crate::netlist::parse_netlist;
use crate::synthesis::{dims_synthesize, synthesize_dsop, CdVariant};

fn values_of(d: &[NetValue]) -> Vec<(&str, u8)> {
    d.iter().map(|v| (v.net.as_str(), v.value)).collect()
}

fn one(n: &Netlist, sc: Scenario) -> ExplorationResult {
    explore(n, &EnvSpec::single(sc), Limits::default()).unwrap()
}

#[test]
fn c_element_holds_on_disagreement() {
    let n = parse_netlist("input a:wire\ninput b:wire\noutput y:wire\ngate c1 C a b -> y\n").unwrap();
    let mut s = CircuitState::spacer(&n).unwrap();
    s.values[n.find_net("a").unwrap().index()] = true;
    assert!(enabled_transitions(&n, &s).unwrap().is_empty());
}

#[test]
fn nand_with_high_inputs_falls() {
    let n = parse_netlist("input a:wire\ninput b:wire\noutput y:wire\ngate g NAND a b -> y\n").unwrap();
    let mut s = CircuitState::spacer(&n).unwrap();
    assert!(s.values[n.find_net("y").unwrap().index()]);
    s.values[n.find_net("a").unwrap().index()] = true;
    s.values[n.find_net("b").unwrap().index()] = true;
    let t = enabled_transitions(&n, &s).unwrap();
    assert_eq!(t.len(), 1);
    assert_eq!(t[0].source, TransitionSource::Gate("g".into()));
    assert!(!t[0].value);
}

#[test]
fn empty_netlist_is_one_state() {
    let n = Netlist::new("empty");
    let r = explore(&n, &EnvSpec::all_codewords(&n).unwrap(), Limits::default()).unwrap();
    assert_eq!(r.scenarios.len(), 1);
    assert!(detect_deadlock(&r).is_empty());
    // spacer, then the two phase advances
    assert_eq!(r.stats().states, 3);
}

#[test]
fn nand5_gate_orphan_on_net2() {
    let n = fixtures::nand5_decomposed();
    let r = one(&n, fixtures::nand5_t_first_scenario());
    assert!(r.stats().states < 10_000);
    let orphans: Vec<Orphan> = detect_orphans(&r).into_iter().filter(|o| o.kind == OrphanKind::Gate).collect();
    assert_eq!(orphans.len(), 1, "{orphans:#?}");
    assert_eq!(orphans[0].net, "net2");
    assert_eq!(orphans[0].phase, Phase::Rtz);
    replay(&n, &orphans[0].trace).unwrap();
    assert!(detect_deadlock(&r).is_empty());
}

#[test]
fn drcl_late_arrivals() {
    let n = fixtures::drcl_ab_cd();
    let found = |sc| -> Vec<(OrphanKind, String)> { detect_orphans(&one(&n, sc)).into_iter().map(|o| (o.kind, o.net)).collect() };
    assert_eq!(
        found(fixtures::drcl_late_zero_scenario()),
        [(OrphanKind::Wire, "b.0".into()), (OrphanKind::Wire, "d.0".into())]
    );
    assert_eq!(found(fixtures::drcl_late_one_scenario()), [(OrphanKind::Gate, "Y.1".into())]);
}

#[test]
fn isochronic_inputs_acknowledge_through_detector() {
    let mut n = fixtures::drcl_ab_cd_with_cd();
    let wire = |n: &Netlist| {
        let r = one(n, fixtures::drcl_late_zero_scenario());
        detect_orphans(&r).into_iter().filter(|o| o.kind == OrphanKind::Wire).map(|o| o.net).collect::<Vec<_>>()
    };
    assert_eq!(wire(&n), ["b.0", "d.0"]);
    n.mark_inputs_isochronic();
    assert!(wire(&n).is_empty());
}

#[test]
fn method1_deadlocks_after_valid_phase() {
    for (variant, want) in [
        (CdVariant::Or, [("cd1", 0), ("cd2", 0), ("cd3", 0), ("cd4", 0), ("or2", 0), ("or1", 1)]),
        (CdVariant::Nor, [("cd1", 0), ("cd2", 0), ("cd3", 0), ("cd4", 0), ("nor2", 1), ("nor1", 0)]),
    ] {
        let n = fixtures::method1_f(variant);
        let r = explore(&n, &EnvSpec::codewords(&n, [0b0101]), Limits::default()).unwrap();
        let all = detect_deadlock(&r);
        // the NOR detector can also drop D early in the valid phase
        let d = all.iter().find(|d| d.phase == Phase::Rtz).unwrap_or_else(|| panic!("{variant}: {all:#?}"));
        assert_eq!(values_of(&d.cd_inputs), want);
        assert_eq!(d.cd_output.as_ref().unwrap().value, 1);
        let replayed = replay(&n, &d.trace).unwrap();
        let snap: Vec<bool> = d.snapshot.iter().map(|v| v.value == 1).collect();
        assert_eq!(replayed, snap);
        assert_eq!(classify(&r), IndicationClass::NotSelfTimed);
    }
}

#[test]
fn method1_kernel_join_violates_cover() {
    let n = fixtures::method1_f(CdVariant::Or);
    let r = explore(&n, &EnvSpec::codewords(&n, [0b0010]), Limits::default()).unwrap();
    let kernel = n.driver(n.find_net("kernel1").unwrap()).unwrap().id.clone();
    let hit = check_monotonic_cover(&r)
        .into_iter()
        .find(|m| m.kind == MccKind::NonDisjoint && m.gate.as_deref() == Some(kernel.as_str()))
        .expect("kernel finding");
    assert_eq!(hit.asserted_inputs, ["int5", "int6"]);
    replay(&n, &hit.trace).unwrap();
}

#[test]
fn dims_and2_is_strong_and_live() {
    let n = dims_synthesize(&fixtures::and2(), "F").unwrap();
    let r = explore(&n, &EnvSpec::all_codewords(&n).unwrap(), Limits::default()).unwrap();
    assert!(detect_deadlock(&r).is_empty());
    assert_eq!(classify(&r), IndicationClass::Strong);
    for (cw, sc) in r.scenarios.iter().enumerate() {
        assert_eq!(sc.observed, [ObservedOutputs { phase_index: 0, outputs: vec![Some(cw == 3)] }]);
    }
}

#[test]
fn classification_examples() {
    assert_eq!(classify_indication(&fixtures::c_element_joint(), Limits::default()), Ok(IndicationClass::Strong));
    assert_eq!(
        classify_indication(&fixtures::drcl_ab_cd_with_cd(), Limits::default()),
        Ok(IndicationClass::EarlyOutput)
    );
}

#[test]
fn dsop_f_is_live_and_disjoint() {
    let n = synthesize_dsop(&fixtures::function_f(), true, "F").unwrap();
    let r = explore(&n, &EnvSpec::all_codewords(&n).unwrap(), Limits::default()).unwrap();
    assert!(detect_deadlock(&r).is_empty());
    assert!(check_monotonic_cover(&r).iter().all(|m| m.kind != MccKind::NonDisjoint));
    let f = fixtures::function_f();
    for (cw, sc) in r.scenarios.iter().enumerate() {
        assert_eq!(sc.observed.len(), 1);
        assert_eq!(sc.observed[0].outputs, vec![f.value(cw as u64)]);
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let n = fixtures::method1_f(CdVariant::Or);
    let env = EnvSpec::all_codewords(&n).unwrap();
    let seq = ExploreOptions { execution: Execution::Sequential, ..ExploreOptions::default() };
    let a = explore_with(&n, &env, &seq).unwrap();
    let b = explore_with(&n, &env, &ExploreOptions::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn state_limit_is_reported() {
    let n = fixtures::method1_f(CdVariant::Or);
    let limits = Limits { max_states: 50, max_depth: 10_000 };
    let r = explore(&n, &EnvSpec::codewords(&n, [0]), limits).unwrap();
    assert_eq!(r.limit_exceeded(), Some(LimitKind::States));
    assert!(r.stats().states <= 50 + 16);
    assert_eq!(
        classify_indication(&n, limits),
        Err(AnalysisError::LimitExceeded(LimitKind::States))
    );
}

#[test]
fn depth_limit_is_reported() {
    let n = fixtures::nand5_decomposed();
    let r = explore(&n, &EnvSpec::single(fixtures::nand5_t_first_scenario()), Limits { max_states: 1000, max_depth: 3 }).unwrap();
    assert_eq!(r.limit_exceeded(), Some(LimitKind::Depth));
}

#[test]
fn replay_rejects_illegal_steps() {
    let n = fixtures::nand5_decomposed();
    let bad = Trace {
        scenario: "x".into(),
        events: vec![TraceEvent {
            seq: 1,
            net: "N".into(),
            value: 0,
            source: "m2".into(),
            phase: Phase::Valid,
        }],
    };
    assert!(matches!(replay(&n, &bad), Err(AnalysisError::Replay { seq: 1, .. })));
}

#[test]
fn invalid_netlist_is_rejected() {
    let n = parse_netlist("input a:wire\noutput y:wire\ngate g AND a z -> y\n").unwrap();
    assert!(matches!(explore(&n, &EnvSpec::default(), Limits::default()), Err(AnalysisError::Invalid(_))));
}

#[test]
fn report_selects_checks_and_serializes() {
    let n = fixtures::nand5_decomposed();
    let r = one(&n, fixtures::nand5_t_first_scenario());
    let rep = report(&r, Checks::parse("orphans").unwrap(), Some("naive"));
    assert!(rep.deadlocks.is_empty() && rep.mcc.is_empty());
    assert!(rep.classification.is_none());
    let json: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
    let orphans = json["orphans"].as_array().unwrap();
    let gate = orphans.iter().find(|o| o["kind"] == "gate").unwrap();
    assert_eq!(gate["net"], "net2");
    assert!(gate["trace"]["events"].as_array().unwrap().len() > 5);
    let text = rep.to_text();
    assert!(text.contains("gate orphan on net2"), "{text}");
    assert!(Checks::parse("deadlock,bogus").is_err());
}
