use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fixtures::{jordanian_line, line_bundle, moyal_plane, nilpotent_plane};

fn sample(keys: Vec<Key>, step: usize) -> Vec<Key> {
    keys.into_iter().step_by(step).collect()
}


#[test]
fn adjoint_examples() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let a = Module::algebra();
    let lx = OpMatrix::left_mul(env, &a, &fx.poly("x1"));
    let d1 = env.hopf.gen(0);
    assert_eq!(adjoint(env.as_ref(), &d1, &lx), OpMatrix::left_mul(env, &a, &fx.poly("1")));
    assert_eq!(adjoint(env.as_ref(), &env.hopf.unit(), &lx), lx);
    let om = env.omega();
    let id = OpMatrix::identity(env, &om);
    assert!(adjoint(env.as_ref(), &env.hopf.word(&[2]), &id).data.is_empty());
    assert_eq!(adjoint(fx.deformed.as_ref(), &d1, &lx), adjoint(env.as_ref(), &d1, &lx));
}

#[test]
fn quantized_left_multiplication_is_star_product() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let a = Module::algebra();
    let q = d_quantize(&fx.twist, env, &OpMatrix::left_mul(env, &a, &fx.poly("x1")));
    for g in ["x2", "x1 x2", "x2^2"] {
        let got = q.apply(env, &Elem::from_poly(&[], &fx.poly(g))).coefficient(&[]);
        assert_eq!(got, env.real.star(Some(&fx.twist), &fx.poly("x1"), &fx.poly(g)));
    }
    assert!(!q.is_right_linear());
}

#[test]
fn quantization_identities_moyal() {
    let fx = moyal_plane(3).unwrap();
    let env = &fx.env;
    let v = Module::of(&[&nilpotent_plane(env, "V").unwrap()]);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..6 {
        let p = OpMatrix::random(env, &v, &v, false, &mut rng);
        let q = OpMatrix::random(env, &v, &v, false, &mut rng);
        let xi = env.hopf.gen(i % 3);
        let r = quantization_identities(&fx.deformed, &fx.twist, &p, &q, &xi);
        assert!(r.homomorphism.pass, "{:?}", r.homomorphism);
        assert!(r.intertwining.pass, "{:?}", r.intertwining);
        assert!(r.inverse.pass, "{:?}", r.inverse);
        assert!(r.alternative.pass, "{:?}", r.alternative);
    }
}

#[test]
fn quantization_identities_jordanian() {
    let fx = jordanian_line(2).unwrap();
    let env = &fx.env;
    let om = env.omega();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..3 {
        let p = OpMatrix::random(env, &om, &om, false, &mut rng);
        let q = OpMatrix::random(env, &om, &om, false, &mut rng);
        let r = quantization_identities(&fx.deformed, &fx.twist, &p, &q, &env.hopf.gen(i % 2));
        assert!(r.homomorphism.pass && r.intertwining.pass && r.inverse.pass && r.alternative.pass, "{r:?}");
    }
}

#[test]
fn adjoint_action_laws() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let om = env.omega();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let p = OpMatrix::random(env, &om, &om, false, &mut rng);
    let q = OpMatrix::random(env, &om, &om, false, &mut rng);
    let (xi, eta) = (env.hopf.gen(2), env.hopf.gen(0));
    assert!(adjoint_laws(env.as_ref(), &xi, &eta, &p, &q).pass);
    assert!(adjoint_laws(fx.deformed.as_ref(), &xi, &eta, &p, &q).pass);
}

#[test]
fn right_and_quasi_left_linearity() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let v = Module::of(&[&nilpotent_plane(env, "V").unwrap()]);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let p = OpMatrix::random(env, &v, &v, true, &mut rng);
    assert!(p.is_right_linear());
    let keys = env.module_keys(&v, 1);
    let fs = env.sample_polys(1);
    assert!(right_linearity(&fx.undeformed, &p, &keys, &fs).pass);
    assert!(quasi_left_linearity(&fx.undeformed, &p, &keys, &fs).pass);
    let dp = d_quantize(&fx.twist, env, &p);
    assert!(right_linearity(&fx.deformed, &dp, &keys, &fs).pass);
    assert!(quasi_left_linearity(&fx.deformed, &dp, &keys, &fs).pass);
    let o = quasi_left_linearity(&fx.negative_control(), &dp, &keys, &fs);
    assert!(!o.pass);
    assert_eq!(o.first_order, Some(1));
}

#[test]
fn braiding_basics() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let om = env.omega();
    let v = Module::of(&[&line_bundle(env, "V").unwrap()]);
    let flip = fx.undeformed.braiding(std::slice::from_ref(&om), std::slice::from_ref(&v));
    let k = Key { labels: vec![1, 0], exps: vec![1, 0, 0, 1] };
    let img = flip.on_key(&k);
    assert_eq!(*img, Elem::basis(Key { labels: vec![0, 1], exps: vec![0, 1, 1, 0] }, 2));
    let tau = fx.deformed.braiding(std::slice::from_ref(&om), std::slice::from_ref(&v));
    let img = tau.on_key(&k);
    assert_eq!(img.terms.len(), 2, "{}", img.render_raw());
    let back = a_level(&fx.deformed, &tau);
    let plain = a_level(&fx.undeformed, &flip);
    let keys = env.module_keys(&om.tensor(&v), 2);
    assert!(back.compare(&plain, &keys, 2).pass);
}

#[test]
fn braid_relations_on_forms() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let om = env.omega();
    let sp2 = Space::of(&[&om, &om]);
    let sp3 = Space::of(&[&om, &om, &om]);
    let keys2 = sample(sp2.basis_keys(env.n, 1), 5);
    let keys3 = sample(sp3.basis_keys(env.n, 1), 97);
    let keys_a = sample(env.module_keys(&om.tensor(&om).tensor(&om), 2), 23);
    let xis = vec![env.hopf.gen(2)];
    for w in [&fx.undeformed, &fx.deformed] {
        let r = braid_relations(w, [&om, &om, &om], &keys2, &keys3, &keys_a, &xis);
        assert!(r.inverse.pass && r.equivariance.pass, "{r:?}");
        assert!(r.relations.pass && r.relations_a.pass, "{r:?}");
    }
}

#[test]
fn tensor_r_laws_and_fault() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let v = Module::of(&[&line_bundle(env, "V").unwrap()]);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut m = || OpMatrix::random(env, &v, &v, false, &mut rng).to_map(env);
    let maps = [m(), m(), m(), m(), m()];
    let refs = [&maps[0], &maps[1], &maps[2], &maps[3], &maps[4]];
    let keys2 = Space::of(&[&v, &v]).basis_keys(env.n, 1);
    let keys3 = sample(Space::of(&[&v, &v, &v]).basis_keys(env.n, 1), 4);
    let xis = vec![env.hopf.gen(2), env.hopf.gen(0)];
    for w in [&fx.undeformed, &fx.deformed] {
        let l = tensor_r_laws(w, refs, &xis, &keys2, &keys3, false);
        assert!(l.equivariance.pass, "{:?}", l.equivariance);
        assert!(l.associativity.pass, "{:?}", l.associativity);
        assert!(l.composition.pass, "{:?}", l.composition);
        assert!(l.factorization.pass, "{:?}", l.factorization);
    }
    let lx = OpMatrix::left_mul(env, &v, &fx.poly("x1")).to_map(env);
    let ly = OpMatrix::left_mul(env, &v, &fx.poly("x2")).to_map(env);
    let id = OpMatrix::identity(env, &v).to_map(env);
    let good = tensor_r_laws(&fx.deformed, [&lx, &id, &id, &id, &ly], &[], &keys2, &[], false);
    assert!(good.composition.pass);
    let bad = tensor_r_laws(&fx.deformed, [&lx, &id, &id, &id, &ly], &[], &keys2, &[], true);
    assert!(!bad.composition.pass);
    assert_eq!(bad.composition.first_order, Some(1));
}

#[test]
fn quantization_diagram_commutes() {
    let fx = moyal_plane(2).unwrap();
    let env = &fx.env;
    let v = Module::of(&[&line_bundle(env, "V").unwrap()]);
    let w = Module::of(&[&line_bundle(env, "W").unwrap()]);
    let p = OpMatrix::left_mul(env, &v, &fx.poly("x1"));
    let q = OpMatrix::left_mul(env, &w, &fx.poly("x2"));
    let keys = Space::of(&[&v, &w]).basis_keys(env.n, 1);
    let keys_a = env.module_keys(&v.tensor(&w), 2);
    let (k, al) = quantization_diagram(&fx.undeformed, &fx.deformed, &fx.twist, &p, &q, &keys, &keys_a);
    assert!(k.pass, "{k:?}");
    assert!(al.pass, "{al:?}");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let p = OpMatrix::random(env, &v, &v, false, &mut rng);
    let q = OpMatrix::random(env, &w, &w, false, &mut rng);
    let (k, _) = quantization_diagram(&fx.undeformed, &fx.deformed, &fx.twist, &p, &q, &keys, &[]);
    assert!(k.pass, "{k:?}");
}

#[test]
fn maps_compose_on_blocks() {
    let fx = moyal_plane(1).unwrap();
    let env: &Arc<Env> = &fx.env;
    let om = env.omega();
    let sp = Space::of(&[&om, &om]);
    let id = Map::identity(&Space::single(om.clone()), 1);
    let lifted = Map::on_blocks(env, &sp, 1, &id);
    let keys = sp.basis_keys(env.n, 1);
    assert!(lifted.compare(&Map::identity(&sp, 1), &keys, 1).pass);
}
