use super::*;
use crate::fixtures::{jordanian_line, line_bundle, moyal_plane, nilpotent_plane};
use crate::hopf::drop_order;

fn form(fx: &crate::fixtures::Fixture, mask: u16, coeff: &str) -> Elem {
    Elem::from_poly(&[mask], &fx.poly(coeff))
}

#[test]
fn lie_derivative_on_forms() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let om = env.omega();
    let l = env.hopf.gen(2);
    assert_eq!(env.act(&om, &l, &form(&fx, 0b10, "1")), form(&fx, 0b01, "1"));
    assert!(env.act(&om, &l, &form(&fx, 0b01, "1")).is_zero());
    let lhs = env.act(&om, &l, &form(&fx, 0b10, "x2"));
    assert_eq!(lhs, form(&fx, 0b01, "x2").add(&form(&fx, 0b10, "x1")));
}

#[test]
fn exterior_derivative() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let om = env.omega();
    assert_eq!(env.d_fun(&fx.poly("x1")), form(&fx, 0b01, "1"));
    assert_eq!(env.d(&form(&fx, 0b01, "x2")).render(&om), "-dx1∧dx2");
    let keys = env.form_keys(2, 2);
    let xis = vec![env.hopf.gen(0), env.hopf.gen(2), env.hopf.word(&[2, 2])];
    let (dd, leib, equi) = env.check_calculus(&keys, &xis);
    assert!(dd.pass && leib.pass && equi.pass);
}

#[test]
fn left_star_action_example() {
    let fx = moyal_plane(2).unwrap();
    let w = &fx.deformed;
    let om = fx.env.omega();
    let v = w.left_act(&fx.poly("x1"), &om, &form(&fx, 0b01, "x2"));
    assert_eq!(v.render(&om), "x1 x2 dx1 + 1/2 h dx1");
    let u = fx.undeformed.left_act(&fx.poly("x1"), &om, &form(&fx, 0b01, "x2"));
    assert_eq!(u.render(&om), "x1 x2 dx1");
}

#[test]
fn tensor_over_star_algebra() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let v = Module::of(&[&line_bundle(env, "V").unwrap()]);
    let e = Elem::from_poly(&[0], &fx.poly("x1"));
    let f = Elem::from_poly(&[0], &fx.poly("x2"));
    let t = fx.deformed.tensor_over(&v, &e, &v, &f);
    let vv = v.tensor(&v);
    assert_eq!(t.render(&vv), "x1 x2 + 1/2 h");
    let t = fx.undeformed.tensor_over(&v, &e, &v, &f);
    assert_eq!(t.render(&vv), "x1 x2");
}

#[test]
fn bimodule_structure_moyal() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let v = Module::of(&[&nilpotent_plane(env, "V").unwrap()]);
    let keys = env.module_keys(&v, 1);
    let fs = env.sample_polys(1);
    let xis = vec![env.hopf.gen(0), env.hopf.gen(2)];
    for w in [&fx.undeformed, &fx.deformed] {
        assert!(w.bimodule_axioms(&v, &keys, &fs).pass, "{}", w.label);
        assert!(w.action_covariance(&v, &xis, &keys, &fs).pass, "{}", w.label);
        assert!(w.quasi_commutative_module(&v, &keys, &fs).pass, "{}", w.label);
    }
    assert!(env.covariance(&v, &xis, &keys, &fs).pass);
}

#[test]
fn negative_control_breaks_quasi_commutativity() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let om = env.omega();
    let keys = env.form_keys(1, 1);
    let fs = env.sample_polys(1);
    let bad = fx.negative_control();
    let o = bad.quasi_commutative_module(&om, &keys, &fs);
    assert!(!o.pass);
    assert_eq!(o.first_order, Some(1));
}

#[test]
fn graded_star_wedge() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let keys = env.form_keys(1, 1);
    for w in [&fx.undeformed, &fx.deformed] {
        assert!(w.graded_quasi_commutative(&keys).pass);
        assert!(w.star_leibniz(&keys).pass);
    }
    assert!(!fx.negative_control().graded_quasi_commutative(&keys).pass);
}

#[test]
fn phi_is_invertible_equivariant_and_coherent() {
    let fx = moyal_plane(3).unwrap();
    let env = &fx.env;
    let v = Module::of(&[&nilpotent_plane(env, "V").unwrap()]);
    let om = env.omega();
    let sp = Space::of(&[&v, &om]);
    let keys: Vec<Key> = sp.basis_keys(env.n, 1).into_iter().step_by(3).collect();
    let xis = vec![env.hopf.gen(0), env.hopf.gen(2)];
    let (inv, equi) = fx.deformed.phi_checks(&sp, &keys, &xis);
    assert!(inv.pass && equi.pass);

    let a = Module::algebra();
    let sp3 = Space::of(&[&v, &a, &om]);
    let keys3: Vec<Key> = sp3.basis_keys(env.n, 1).into_iter().step_by(5).collect();
    assert!(fx.deformed.coherence(&sp3, &keys3, None).pass);
    let broken = drop_order(fx.twist.f_inv(), 2);
    let alg = Space::of(&[&a, &a, &a]);
    let keys_a = alg.basis_keys(env.n, 2);
    assert!(fx.deformed.coherence(&alg, &keys_a, None).pass);
    let o = fx.deformed.coherence(&alg, &keys_a, Some(&broken));
    assert!(!o.pass);
    assert_eq!(o.first_order, Some(2));
}

#[test]
fn jordanian_bimodule() {
    let fx = jordanian_line(2).unwrap();
    let env = &fx.env;
    let om = env.omega();
    let keys = env.form_keys(1, 1);
    let fs = env.sample_polys(1);
    let w = &fx.deformed;
    assert!(w.bimodule_axioms(&om, &keys, &fs).pass);
    assert!(w.quasi_commutative_module(&om, &keys, &fs).pass);
    assert!(w.graded_quasi_commutative(&keys).pass);
    assert!(w.star_leibniz(&keys).pass);
    let xis = vec![env.hopf.gen(0), env.hopf.gen(1)];
    assert!(w.action_covariance(&om, &xis, &keys, &fs).pass);
}

#[test]
fn bad_module_action_is_rejected() {
    let fx = moyal_plane(1).unwrap();
    let env = &fx.env;
    let mut act = vec![Vec::new(); 3];
    act[2] = vec![vec![fx.poly("x1")]];
    assert!(Atom::plain(env, "bad", 1, act).is_err());
}
