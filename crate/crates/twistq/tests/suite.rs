use twistq::fixtures::{jordanian_line, moyal_plane};
use twistq::verify::{bundled, run_suite, RunOptions, Scenario, Session, Status};

fn session(name: &str, order: Option<usize>) -> Session {
    let sc = Scenario::parse(bundled(name).unwrap()).unwrap().with_overrides(order, None, None).unwrap();
    Session::build(sc).unwrap()
}

#[test]
fn jordanian_suite_holds_at_higher_order() {
    let r = run_suite(&session("jordanian_line", Some(3)), &RunOptions::default()).unwrap();
    assert!(r.ok(), "{}", r.to_table());
    assert_eq!(r.order, 3);
}

#[test]
fn twist_identities_hold_through_order_four() {
    for n in 1..=4 {
        for fx in [moyal_plane(n).unwrap(), jordanian_line(n).unwrap()] {
            assert!(fx.twist.cocycle().pass, "cocycle at N={n}");
            assert!(fx.twist.normalization().pass, "normalization at N={n}");
        }
    }
}

#[test]
fn session_star_matches_fixture_star() {
    let s = session("moyal_r2", None);
    let fx = moyal_plane(2).unwrap();
    for (f, g) in [("x1", "x2"), ("x2", "x1"), ("x1^2", "x2^2"), ("1 + x1", "x2 - x1 x2")] {
        let a = s.deformed.star(&s.poly(f).unwrap(), &s.poly(g).unwrap()).render();
        let b = fx.deformed.star(&fx.poly(f), &fx.poly(g)).render();
        assert_eq!(a, b, "{f} ⋆ {g}");
    }
}

#[test]
fn scenario_selection_is_honoured() {
    let text = format!("{}\n[suite]\nchecks = star.unit\n", bundled("moyal_r2").unwrap());
    let s = Session::build(Scenario::parse(&text).unwrap()).unwrap();
    let r = run_suite(&s, &RunOptions::default()).unwrap();
    assert_eq!(r.checks.len(), 2);
    assert!(r.checks.iter().all(|c| c.status == Status::Pass));
}
