use cyquot_core::ambient::FixedOnY;
use cyquot_core::pipeline::{
    builtin_names, run_example, run_example_with, ExampleDef, ExampleReport,
};
use cyquot_core::Execution;

#[test]
fn reports_round_trip_through_json() {
    for name in builtin_names() {
        let rep = run_example(&ExampleDef::builtin(name).unwrap()).unwrap();
        let text = serde_json::to_string(&rep).unwrap();
        let back: ExampleReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rep, "{name}");
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

#[test]
fn definitions_round_trip_through_json() {
    for name in builtin_names() {
        let def = ExampleDef::builtin(name).unwrap();
        let again = ExampleDef::from_json(&serde_json::to_string(&def).unwrap()).unwrap();
        assert_eq!(again, def);
    }
}

#[test]
fn execution_modes_agree_on_every_example() {
    for name in builtin_names() {
        let def = ExampleDef::builtin(name).unwrap();
        assert_eq!(
            run_example_with(Execution::Sequential, &def).unwrap(),
            run_example_with(Execution::Parallel, &def).unwrap()
        );
    }
}

#[test]
fn expectations_are_data() {
    // Changing the expected count turns the check red without touching code.
    let mut def = ExampleDef::builtin("fermat5").unwrap();
    def.expect.fixed_on_y.insert("g".into(), 4);
    let rep = run_example(&def).unwrap();
    assert!(!rep.passed);
    assert!(!rep.check("fixed points of g on Y").unwrap().passed);
}

#[test]
fn divisor_override_changes_intersections() {
    // A (2,2) class on P2xP2 has degree 2 on each fixed line, but every
    // invariant section vanishes on {x2 = 0} x (0:1:0): there the only
    // monomials carry y1^2, of weight 2 mod 3. So that line lies in Y.
    let mut def = ExampleDef::builtin("p2p2").unwrap();
    def.divisor = Some(vec![2, 2]);
    def.expect = Default::default();
    let rep = run_example(&def).unwrap();
    let g = rep.element("g").unwrap();
    let degrees: Vec<u64> = g.components.iter().filter_map(|c| c.y_degree).collect();
    assert_eq!(degrees, vec![2, 2, 2]);
    assert_eq!(g.on_y, FixedOnY::NonIsolated);
}

#[test]
fn klein_element_reports() {
    let rep = run_example(&ExampleDef::builtin("p1x4-klein").unwrap()).unwrap();
    for w in ["g", "h"] {
        let e = rep.element(w).unwrap();
        assert_eq!(e.order, 2);
        assert_eq!(e.on_y, FixedOnY::Isolated(16));
        assert_eq!(e.lefschetz.as_ref().unwrap().trace_exponents, vec![1]);
    }
    let gh = rep.element("gh").unwrap();
    assert_eq!(gh.fixed_dimension, Some(2));
    assert_eq!(gh.on_y, FixedOnY::NonIsolated);
}

#[test]
fn d16_orbits() {
    let rep = run_example(&ExampleDef::builtin("d16xz2").unwrap()).unwrap();
    assert!(rep.passed, "{:#?}", rep.checks);
    let o = rep.orbits.unwrap();
    assert_eq!(o.family.len(), 16);
    assert_eq!(o.orbits.components, 32);
    assert_eq!(o.orbits.orbit_sizes, vec![4, 4, 8, 16]);
    assert_eq!(rep.order_statistics.values().sum::<usize>(), 32);
}
