use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fixtures::{jordanian_line, line_bundle, moyal_plane, nilpotent_plane, Fixture};

fn rank_one(fx: &Fixture, name: &str, omega: &str) -> Connection {
    let v = Module::of(&[&line_bundle(&fx.env, name).unwrap()]);
    Connection::parse(&fx.env, name, &v, omega).unwrap()
}

fn on_unit(fx: &Fixture, m: &Map, c: &Connection) -> String {
    render_on_basis(&fx.env, m, &c.module)
}

#[test]
fn basis_images_and_curvature() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let triv = rank_one(&fx, "V", "0");
    let k = Key { labels: vec![0], exps: vec![1, 0] };
    let vo = triv.module.tensor(&env.omega());
    assert_eq!(triv.map.on_key(&k).render(&vo), "dx1");
    let c = rank_one(&fx, "V", "x1 dx2");
    assert_eq!(on_unit(&fx, &c.map, &c), "x1 dx2");
    assert_eq!(on_unit(&fx, &fx.undeformed.curvature(&c), &c), "dx1∧dx2");
    let flat = rank_one(&fx, "V", "x2 dx1 + x1 dx2");
    assert_eq!(on_unit(&fx, &fx.undeformed.curvature(&flat), &flat), "0");
    assert_eq!(on_unit(&fx, &fx.undeformed.curvature(&triv), &triv), "0");
    let top = Key { labels: vec![0, 3], exps: vec![0, 0] };
    assert!(fx.undeformed.ext(&c).on_key(&top).is_zero());
}

#[test]
fn curvature_matches_structure_equation() {
    let fx = moyal_plane(1).unwrap();
    let env = &fx.env;
    let v = Module::of(&[&nilpotent_plane(env, "V").unwrap()]);
    let c = Connection::parse(env, "V", &v, "x1 dx2, dx1; x2 dx2, 0").unwrap();
    let r = fx.undeformed.curvature(&c);
    let om = |s: &str| parse_form(s, 2, 1).unwrap();
    let w = [[om("x1 dx2"), om("dx1")], [om("x2 dx2"), om("0")]];
    for s in 0..2 {
        let mut expect = Elem::zero();
        for t in 0..2 {
            let mut e = env.d(&w[t][s]);
            for u in 0..2 {
                e.add_assign(&env.wedge(&w[t][u], &w[u][s]));
            }
            for (k, c) in &e.terms {
                expect.push(Key { labels: vec![t as u16, k.labels[0]], exps: k.exps.clone() }, c.clone());
            }
        }
        let got = r.on_key(&Key { labels: vec![s as u16], exps: vec![0, 0] });
        assert_eq!(*got, expect);
    }
}

#[test]
fn leibniz_rules_and_quotients() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let v = Module::of(&[&nilpotent_plane(env, "V").unwrap()]);
    let c = Connection::parse(env, "V", &v, "x1 dx2, dx1; x2 dx2, x1 x2 dx1").unwrap();
    let q = quantize(&fx.twist, env, &c);
    let keys = env.module_keys(&v, 1);
    let fs = env.sample_polys(1);
    let vo = v.tensor(&env.omega());
    let fkeys = env.module_keys(&env.omega(), 1);
    for (w, conn) in [(&fx.undeformed, &c), (&fx.deformed, &q)] {
        assert!(w.right_leibniz(conn, &keys, &fs).pass);
        assert!(w.braided_leibniz(conn, &keys, &fs).pass);
        assert!(w.ext_well_defined(conn, &keys, &fkeys, &fs).pass);
        assert!(w.curvature_linearity(conn, &keys, &fs).pass);
    }
    let ctl = Arc::new(fx.negative_control());
    let o = ctl.braided_leibniz(&q, &keys, &fs);
    assert!(!o.pass);
    assert_eq!(o.first_order, Some(1));
    // The deformed world does not accept the classical connection.
    assert!(!fx.deformed.right_leibniz(&c, &keys, &fs).pass);
    assert!(!q.map.compare(&c.map, &env.module_keys(&v, 2), 2).pass);
    let _ = vo;
}

#[test]
fn quantization_keeps_the_classical_part() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let triv = rank_one(&fx, "V", "0");
    let q = quantize(&fx.twist, env, &triv);
    let keys = env.module_keys(&triv.module, 2);
    assert!(q.map.compare(&triv.map, &keys, 2).pass);
    let c = rank_one(&fx, "V", "x1 dx2");
    let q = quantize(&fx.twist, env, &c);
    let vo = c.module.tensor(&env.omega());
    let k = Key { labels: vec![0], exps: vec![0, 1] };
    assert_eq!(q.map.on_key(&k).render(&vo), "x1 x2 dx2 + dx2 + 1/2 h dx2");
}

#[test]
fn affine_structure() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let v = Module::of(&[&nilpotent_plane(env, "V").unwrap()]);
    let c = Connection::parse(env, "V", &v, "x1 dx2, 0; 0, dx1").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let vo = v.tensor(&env.omega());
    let p = OpMatrix::random(env, &v, &vo, true, &mut rng);
    let shifted = c.shifted(env, &p);
    let keys = env.module_keys(&v, 1);
    let fs = env.sample_polys(1);
    assert!(fx.undeformed.right_leibniz(&shifted, &keys, &fs).pass);
    let diff = shifted.op.as_ref().unwrap().sub(c.op.as_ref().unwrap());
    assert!(diff.is_right_linear());
    let lhs = quantize(&fx.twist, env, &shifted);
    let rhs = quantize(&fx.twist, env, &c).shifted(env, &d_quantize(&fx.twist, env, &p));
    assert!(lhs.op.as_ref().unwrap().compare(rhs.op.as_ref().unwrap()).pass);
    assert!(crate::morphism::right_linearity(&fx.deformed, &d_quantize(&fx.twist, env, &p), &keys, &fs).pass);
}

#[test]
fn sums_of_connections() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let a = rank_one(&fx, "V", "x1 dx2");
    let b = rank_one(&fx, "W", "x2 dx1");
    let (qa, qb) = (quantize(&fx.twist, env, &a), quantize(&fx.twist, env, &b));
    let vw = a.module.tensor(&b.module);
    let keys = env.module_keys(&vw, 1);
    let fs = env.sample_polys(1);
    let ka = env.module_keys(&a.module, 1);
    let xis = vec![env.hopf.gen(0), env.hopf.gen(2)];
    for (w, x, y) in [(&fx.undeformed, &a, &b), (&fx.deformed, &qa, &qb)] {
        assert!(w.sum_well_defined(x, y, &ka, &ka, &fs).pass);
        assert!(w.sum_leibniz(x, y, &keys, &fs).pass);
        let o = w.sum_equivariance(x, y, &xis, &keys);
        assert!(o.pass, "{o:?}");
    }
    // The classical sum is ∇_V ⊗ id + id ⊗ ∇_W.
    let s = fx.undeformed.sum(&a, &b);
    let unit = Key { labels: vec![0, 0], exps: vec![0, 0] };
    assert_eq!(s.map.on_key(&unit).render(&vw.tensor(&env.omega())), "x1 dx2 + x2 dx1");
    let trivial = fx.deformed.sum(&rank_one(&fx, "V", "0"), &rank_one(&fx, "W", "0"));
    let d = Connection::parse(env, "d", &vw, "0").unwrap();
    assert!(trivial.map.compare(&d.map, &env.module_keys(&vw, 2), 2).pass);
}

#[test]
fn sum_associativity_and_diagram() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let a = rank_one(&fx, "U", "x1 dx2");
    let b = rank_one(&fx, "V", "x2 dx1");
    let c = rank_one(&fx, "W", "x1 dx1");
    let three = a.module.tensor(&b.module).tensor(&c.module);
    let keys = env.module_keys(&three, 1);
    let q = |x: &Connection| quantize(&fx.twist, env, x);
    assert!(fx.undeformed.sum_associativity(&a, &b, &c, &keys).pass);
    let o = fx.deformed.sum_associativity(&q(&a), &q(&b), &q(&c), &keys);
    assert!(o.pass, "{o:?}");

    let keys2 = env.module_keys(&a.module.tensor(&b.module), 2);
    let top = fx.deformed.sum(&q(&a), &q(&b));
    let bottom = d_quantize_map(&fx.twist, env, &fx.undeformed.sum(&a, &b).map);
    let o = top.map.compare(&bottom, &keys2, 2);
    assert!(o.pass, "{o:?}");
    // Mixing in a classical factor breaks the diagram.
    let mixed = fx.deformed.sum(&q(&a), &b);
    assert!(!mixed.map.compare(&bottom, &keys2, 2).pass);
}

#[test]
fn curvature_of_sums() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let a = rank_one(&fx, "V", "x1 dx2");
    let b = rank_one(&fx, "W", "x2 dx1 + x1 x2 dx2");
    let keys = env.module_keys(&a.module.tensor(&b.module), 1);
    let q = |x: &Connection| quantize(&fx.twist, env, x);
    for (w, x, y) in [(&fx.undeformed, a.clone(), b.clone()), (&fx.deformed, q(&a), q(&b))] {
        let (id, _) = w.curvature_sum(&x, &y, &keys);
        assert!(id.pass, "{id:?}");
    }
    let e = rank_one(&fx, "E", "dx1");
    let (id, vanish) = fx.deformed.curvature_sum(&q(&e), &q(&b), &keys);
    assert!(id.pass && vanish.pass);
    let (_, vanish) = fx.deformed.curvature_sum(&q(&a), &q(&b), &keys);
    assert!(!vanish.pass);
}

#[test]
fn flat_connection_twists_to_curved() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let c = rank_one(&fx, "V", "x2 dx1 + x1 dx2");
    let keys = env.module_keys(&c.module, 1);
    let t = twisted_curvature(&fx.undeformed, &fx.deformed, &fx.twist, &c, &keys);
    assert!(t.identity.pass, "{:?}", t.identity);
    assert_eq!(on_unit(&fx, &t.classical, &c), "0");
    assert_eq!(on_unit(&fx, &t.quantized_classical, &c), "0");
    assert_eq!(on_unit(&fx, &t.quantized, &c), "-h dx1∧dx2");
    let triv = rank_one(&fx, "V", "0");
    let t = twisted_curvature(&fx.undeformed, &fx.deformed, &fx.twist, &triv, &keys);
    assert!(t.identity.pass);
    assert!(t.quantized.compare(&t.classical, &keys, 2).pass);
}

#[test]
fn jordanian_connection() {
    let fx = jordanian_line(2).unwrap();
    let env = &fx.env;
    let c = rank_one(&fx, "V", "x1 dx1");
    let q = quantize(&fx.twist, env, &c);
    let keys = env.module_keys(&c.module, 1);
    let fs = env.sample_polys(1);
    assert!(fx.deformed.right_leibniz(&q, &keys, &fs).pass);
    assert!(fx.deformed.braided_leibniz(&q, &keys, &fs).pass);
    let t = twisted_curvature(&fx.undeformed, &fx.deformed, &fx.twist, &c, &keys);
    assert!(t.identity.pass);
}

#[test]
fn dual_connections_classical_and_twisted() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let atom = line_bundle(env, "V").unwrap();
    let v = Module::of(&[&atom]);
    let c = Connection::parse(env, "V", &v, "x1 dx2").unwrap();
    let dual = atom.dual("V'");
    let vd = Module::of(&[&dual]);
    let keys = env.module_keys(&vd, 1);
    let fs = env.sample_polys(1);
    let r = dual_connections(&fx.undeformed, &c, &dual, &keys, &fs).unwrap();
    assert!(r.all().pass);
    assert_eq!(render_on_basis(env, &r.right, &vd), "-x1 dx2");
    let unit = Key { labels: vec![0], exps: vec![0, 0] };
    assert_eq!(r.left.on_key(&unit).render(&env.omega().tensor(&vd)), "-x1 dx2");

    let q = quantize(&fx.twist, env, &c);
    let r = dual_connections(&fx.deformed, &q, &dual, &keys, &fs).unwrap();
    assert!(r.all().pass, "{:?}", r.all());

    let atom = nilpotent_plane(env, "N").unwrap();
    let n = Module::of(&[&atom]);
    let c = Connection::parse(env, "N", &n, "x1 dx2, dx1; x2 dx1, 0").unwrap();
    let dual = atom.dual("N'");
    let keys = env.module_keys(&Module::of(&[&dual]), 1);
    let r = dual_connections(&fx.deformed, &quantize(&fx.twist, env, &c), &dual, &keys, &fs).unwrap();
    assert!(r.all().pass, "{:?}", r.all());

    let hp = &env.hopf;
    let h = crate::series::DeformationSeries::monomial(2, 1, crate::series::Scalar::from_integer(1.into()));
    let r = hp.texp(&hp.tensor(&[&hp.gen(0), &hp.gen(0)]).scale(&h)).unwrap();
    let braided = crate::hopf::RMatrix::explicit(hp, r, None).unwrap();
    let w = Arc::new(World::new(env.clone(), None, braided, "braided"));
    assert!(dual_connections(&w, &c, &dual, &keys, &fs).is_err());
}

#[test]
fn connection_grid_errors() {
    let fx = moyal_plane(1).unwrap();
    let env = &fx.env;
    let v = Module::of(&[&nilpotent_plane(env, "V").unwrap()]);
    assert!(Connection::parse(env, "V", &v, "dx1").is_err());
    assert!(Connection::parse(env, "V", &v, "dx1∧dx2, 0; 0, 0").is_err());
    assert!(Connection::parse(env, "V", &v, "dy, 0; 0, 0").is_err());
}
