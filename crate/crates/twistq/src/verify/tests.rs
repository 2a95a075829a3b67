use super::*;

fn session(text: &str) -> Session {
    Session::build(Scenario::parse(text).unwrap()).unwrap()
}

fn run(text: &str, checks: Option<&[&str]>) -> SuiteReport {
    let opts = RunOptions { selection: checks.map(|c| c.iter().map(|s| s.to_string()).collect()), jobs: None };
    run_suite(&session(text), &opts).unwrap()
}

fn status(r: &SuiteReport, id: &str) -> Status {
    r.checks.iter().find(|c| c.id == id).unwrap().status
}

#[test]
fn moyal_suite_passes() {
    let r = run(bundled("moyal_r2").unwrap(), None);
    println!("{}", r.to_table());
    assert!(r.ok(), "{}", r.to_table());
    assert_eq!(r.summary.passed, CATALOG.len());
    let control = r.checks.iter().find(|c| c.id == "quasi.control").unwrap();
    assert_eq!(
        control.note.as_deref(),
        Some("R = 1⊗1: algebra fails at h^1, module fails at h^1, left-linear fails at h^1")
    );
}

#[test]
fn jordanian_suite_passes() {
    let r = run(bundled("jordanian_line").unwrap(), None);
    assert!(r.ok(), "{}", r.to_table());
    assert_eq!(r.summary.skipped, 0, "{}", r.to_table());
}

#[test]
fn zero_theta_passes_and_commutes() {
    let text = bundled("moyal_r2").unwrap().replace("theta d1 d2 = 1", "theta d1 d2 = 0").replace(
        "star x1 | x2 = x1 x2 + 1/2 h\ncommutator x1 | x2 = h",
        "star x1 | x2 = x1 x2\ncommutator x1 | x2 = 0",
    );
    let r = run(&text, None);
    assert!(r.ok(), "{}", r.to_table());
    let s = session(&text);
    assert!(s.twist.is_identity());
    let control = r.checks.iter().find(|c| c.id == "quasi.control").unwrap();
    assert_eq!(control.note.as_deref(), Some("twist is the identity"));
}

#[test]
fn dropped_cocycle_term_fails_and_skips_downstream() {
    let text = bundled("moyal_r2").unwrap().replace("theta d1 d2 = 1", "theta d1 d2 = 1\nfault = drop-order 2");
    let r = run(&text, Some(&["twist.cocycle", "star.associativity", "conn.leibniz"]));
    assert!(!r.ok());
    let c = r.checks.iter().find(|c| c.id == "twist.cocycle").unwrap();
    assert_eq!(c.status, Status::Fail);
    assert_eq!(c.first_order, Some(2));
    assert!(c.sample.is_some());
    assert_eq!(status(&r, "twist.normalization"), Status::Pass);
    assert_eq!(status(&r, "star.associativity"), Status::Skip);
    assert_eq!(status(&r, "conn.leibniz"), Status::Skip);
}

#[test]
fn trivial_r_fault_breaks_quasi_commutativity() {
    let text = bundled("moyal_r2").unwrap().replace("theta d1 d2 = 1", "theta d1 d2 = 1\nfault = trivial-r");
    let r = run(&text, Some(&["quasi.algebra"]));
    let c = r.checks.iter().find(|c| c.id == "quasi.algebra").unwrap();
    assert_eq!(status(&r, "rmatrix.triangular"), Status::Pass);
    assert_eq!(c.status, Status::Fail);
    assert_eq!(c.first_order, Some(1));
}

#[test]
fn selection_pulls_in_dependencies_in_catalog_order() {
    let r = run(bundled("moyal_r2").unwrap(), Some(&["star.unit"]));
    let ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, ["twist.normalization", "star.unit"]);
    let s = session(bundled("moyal_r2").unwrap());
    let bad = RunOptions { selection: Some(vec!["no.such".into()]), jobs: Some(1) };
    assert!(matches!(run_suite(&s, &bad), Err(Error::Config(_))));
}

#[test]
fn reports_are_byte_identical_across_runs_and_job_counts() {
    let s = session(bundled("moyal_r2").unwrap());
    let sel = Some(vec!["dquant.inverse".to_string(), "tensor-r.laws".into(), "conn.affine".into()]);
    let a = run_suite(&s, &RunOptions { selection: sel.clone(), jobs: Some(1) }).unwrap();
    let s2 = session(bundled("moyal_r2").unwrap());
    let b = run_suite(&s2, &RunOptions { selection: sel, jobs: Some(4) }).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_table(), b.to_table());
}

#[test]
fn fingerprint_tracks_text_order_and_degree() {
    let base = Scenario::parse(bundled("moyal_r2").unwrap()).unwrap();
    let f = fingerprint(&base);
    assert_eq!(f.len(), 64);
    assert_eq!(f, fingerprint(&base.clone().with_overrides(None, None, Some(5)).unwrap()));
    assert_ne!(f, fingerprint(&base.clone().with_overrides(Some(3), None, None).unwrap()));
    assert_ne!(f, fingerprint(&base.clone().with_overrides(None, Some(5), None).unwrap()));
    let edited = Scenario::parse(&format!("{}\n# comment", bundled("moyal_r2").unwrap())).unwrap();
    assert_ne!(f, fingerprint(&edited));
}

#[test]
fn catalog_is_complete_and_well_formed() {
    for a in REQUIRED_ANCHORS {
        assert!(CATALOG.iter().any(|c| c.anchor == *a), "no check for `{a}`");
    }
    for (i, c) in CATALOG.iter().enumerate() {
        assert!(CATALOG[i + 1..].iter().all(|d| d.id != c.id), "duplicate id {}", c.id);
        for n in c.needs {
            let j = CATALOG.iter().position(|d| d.id == *n).unwrap_or_else(|| panic!("{} needs unknown {n}", c.id));
            assert!(j < i, "{} is listed before its dependency {n}", c.id);
        }
    }
}

#[test]
fn report_matches_schema_and_round_trips() {
    let r = run(bundled("moyal_r2").unwrap(), Some(&["twist.cocycle", "star.expectations"]));
    let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    let value: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert!(compiled.is_valid(&value));
    let back: SuiteReport = serde_json::from_value(value).unwrap();
    assert_eq!(back.to_json(), r.to_json());
    let mut broken: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    broken["checks"][0]["status"] = "maybe".into();
    assert!(!compiled.is_valid(&broken));
}

#[test]
fn table_has_one_row_per_check() {
    let r = run(bundled("moyal_r2").unwrap(), Some(&["star.expectations"]));
    let t = r.to_table();
    for c in &r.checks {
        assert_eq!(t.lines().filter(|l| l.starts_with(&format!("{} ", c.id))).count(), 1);
    }
    assert!(t.contains("x1 ⋆ x2 = x1 x2 + 1/2 h"));
}

fn parse_err(text: &str) -> String {
    match Scenario::parse(text).and_then(Session::build) {
        Err(Error::Parse(m)) => m,
        Err(e) => panic!("expected a parse diagnostic, got {e}"),
        Ok(_) => panic!("expected a parse diagnostic"),
    }
}

const MINIMAL: &str = "[scenario]\norder = 1\ndim = 1\n[algebra]\ngenerators = E\nfield E = 1\n";

#[test]
fn diagnostics_carry_line_numbers() {
    assert!(Session::build(Scenario::parse(MINIMAL).unwrap()).is_ok());
    let cases = [
        ("[scenario]\norder = x\n", "line 2"),
        ("order = 1\n", "line 1"),
        ("[scenario]\norder = 1\ndim = 1\n[bogus]\n", "line 4"),
        (&format!("{MINIMAL}[twist]\nkind = moyal\ntheta E F = 1\n"), "line 9"),
        (&format!("{MINIMAL}[module V]\nrank = 1\naction E = 1, 0; 0, 1\n"), "line 9"),
        (&format!("{MINIMAL}[connection c]\non = V\nforms = dx1\n"), "line 7"),
        (&format!("{MINIMAL}[module V]\nrank = 1\n[connection c]\non = V\nforms = dx1 dx1 +\n"), "line 11"),
        (&format!("{MINIMAL}[expect]\nstar x1 x1 = x1\n"), "line 8"),
        ("[scenario]\norder = 1\ndim = 2\n[algebra]\ngenerators = E\nfield E = 1\n", "line 6"),
        ("[scenario\n", "line 1"),
    ];
    for (text, want) in cases {
        let m = parse_err(text);
        assert!(m.starts_with(want), "{text:?}: {m}");
    }
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn parser_never_panics(lines in proptest::collection::vec("[\\[\\]a-z0-9 =,;|#x^/+-]{0,24}", 0..12)) {
            let _ = Scenario::parse(&lines.join("\n")).and_then(Session::build);
        }

        #[test]
        fn mutated_bundled_scenarios_never_panic(cut in 0usize..2000, junk in "[a-z=\\[\\] ]{0,8}") {
            let text = bundled("moyal_r2").unwrap();
            let cut = cut.min(text.len());
            let cut = (0..=cut).rev().find(|&i| text.is_char_boundary(i)).unwrap();
            let mutated = format!("{}{}{}", &text[..cut], junk, &text[cut..]);
            let _ = Scenario::parse(&mutated);
        }
    }
}
