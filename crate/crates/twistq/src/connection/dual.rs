//! Left and right connections on the dual of a free module.
//!
//! `V'` carries the dual basis `e'^s` and the contragredient action. The
//! evaluation `⟨e'^s, e_t f⟩ = δ_st f` is `A`-bilinear and equivariant, so
//! in the deformed world the `⋆`-pairing is evaluation after `join`.

use std::sync::Arc;

use super::{basis, Connection};
use crate::bimod::{Atom, Elem, HopfView, Key, Module, Space, World};
use crate::error::{Error, Result};
use crate::funcalg::Poly;
use crate::morphism::{adjoint_map, Map};
use crate::outcome::Outcome;

/// Contracts atoms `i` and `i + 1` of a module element by the evaluation.
fn contract(v: &Elem, i: usize) -> Elem {
    let mut out = Elem::zero();
    for (k, c) in &v.terms {
        if k.labels[i] == k.labels[i + 1] {
            let mut labels = k.labels.clone();
            labels.drain(i..i + 2);
            out.push(Key { labels, exps: k.exps.clone() }, c.clone());
        }
    }
    out
}

/// The dual connections of a connection on a single free atom.
pub struct DualReport {
    pub module: Module,
    /// `∇': V' → Ω ⊗ V'`.
    pub left: Map,
    /// `∇_{V'}: V' → V' ⊗ Ω`.
    pub right: Map,
    pub left_leibniz: Outcome,
    pub right_leibniz: Outcome,
    pub left_pairing: Outcome,
    pub right_pairing: Outcome,
}

impl DualReport {
    pub fn all(&self) -> Outcome {
        Outcome::all([
            self.left_leibniz.clone(),
            self.right_leibniz.clone(),
            self.left_pairing.clone(),
            self.right_pairing.clone(),
        ])
    }
}

struct Pairing {
    world: Arc<World>,
    v: Module,
    vd: Module,
}

impl Pairing {
    /// `⟨v', v⟩ ∈ A`.
    fn pair(&self, vd: &Elem, v: &Elem) -> Poly {
        let w = &self.world;
        contract(&w.join(&Space::of(&[&self.vd, &self.v]), &w.env.tensor(&[vd, v])), 0).coefficient(&[])
    }

    /// `⟨v' ⊗ id, x⟩ ∈ Ω` for `x ∈ V ⊗ Ω`.
    fn pair_first(&self, vd: &Elem, x: &Elem) -> Elem {
        let w = &self.world;
        let vo = self.v.tensor(&w.env.omega());
        contract(&w.join(&Space::of(&[&self.vd, &vo]), &w.env.tensor(&[vd, x])), 0)
    }
}

/// Builds `∇'` and `∇_{V'}` in a world and checks both Leibniz rules and
/// the defining pairings on non-basis samples. `dual` must be the dual
/// atom of the connection's module.
pub fn dual_connections(
    world: &Arc<World>,
    c: &Connection,
    dual: &Arc<Atom>,
    keys: &[Key],
    fs: &[Poly],
) -> Result<DualReport> {
    if c.module.len() != 1 {
        return Err(Error::Precondition("dual connections need a module with a single free atom".into()));
    }
    let env = world.env.clone();
    if !world.r.triangular(&env.hopf).pass {
        return Err(Error::Precondition("the right dual connection needs a triangular R-matrix".into()));
    }
    let o = world.order();
    let om = env.omega();
    let vd = Module::of(&[dual]);
    let rank = dual.rank();
    if rank != c.module.atoms[0].rank() {
        return Err(Error::Shape("dual atom has the wrong rank".into()));
    }
    let pairing = Arc::new(Pairing { world: world.clone(), v: c.module.clone(), vd: vd.clone() });
    let e = |r: usize| basis(&Key { labels: vec![r as u16], exps: vec![0; env.n] }, o);
    let images: Arc<Vec<Arc<Elem>>> =
        Arc::new((0..rank).map(|r| c.map.on_key(&Key { labels: vec![r as u16], exps: vec![0; env.n] })).collect());

    let (p, ims, vd2, om2) = (pairing.clone(), images.clone(), vd.clone(), om.clone());
    let left = Map::new(Space::single(vd.clone()), Space::single(om.tensor(&vd)), move |k| {
        let v = basis(k, o);
        let mut out = Elem::zero();
        for (r, img) in ims.iter().enumerate() {
            let er = basis(&Key { labels: vec![r as u16], exps: vec![0; p.world.env.n] }, o);
            let coef = p.world.env.d_fun(&p.pair(&v, &er)).sub(&p.pair_first(&v, img));
            out.add_assign(&p.world.tensor_over(&om2, &coef, &vd2, &er));
        }
        out
    });

    let hp = env.hopf.clone();
    let adj: Arc<Vec<_>> = Arc::new(
        world
            .r_bar()
            .terms
            .iter()
            .map(|(ws, s)| (hp.word(&ws[0]), adjoint_map(world, &hp.word(&ws[1]), &c.map), s.clone()))
            .collect(),
    );
    let (p, vd2, om2, adj2) = (pairing.clone(), vd.clone(), om.clone(), adj.clone());
    let right = Map::new(Space::single(vd.clone()), Space::single(vd.tensor(&om)), move |k| {
        let v = basis(k, o);
        let w = &p.world;
        let mut out = Elem::zero();
        for r in 0..rank {
            let ek = Key { labels: vec![r as u16], exps: vec![0; w.env.n] };
            let er = basis(&ek, o);
            let mut coef = w.env.d_fun(&p.pair(&v, &er));
            for (a, m, s) in adj2.iter() {
                let av = w.act_space(&Space::single(vd2.clone()), a, &v);
                coef.add_scaled(&p.pair_first(&av, &m.on_key(&ek)), &s.neg_ref());
            }
            out.add_assign(&w.tensor_over(&vd2, &er, &om2, &coef));
        }
        out
    });

    let vk: Vec<Key> = keys.to_vec();
    let mut left_leibniz = Outcome::ok();
    let mut right_leibniz = Outcome::ok();
    for k in &vk {
        let v = basis(k, o);
        for a in fs {
            let da = env.d_fun(a);
            let lhs = left.apply(&world.left_act(a, &vd, &v));
            let rhs = world.tensor_over(&om, &da, &vd, &v).add(&world.left_act(a, &om.tensor(&vd), &left.on_key(k)));
            left_leibniz = left_leibniz.merge(lhs.compare(&rhs));
            let lhs = right.apply(&world.right_act(&vd, &v, a));
            let rhs = world.right_act(&vd.tensor(&om), &right.on_key(k), a).add(&world.tensor_over(&vd, &v, &om, &da));
            right_leibniz = right_leibniz.merge(lhs.compare(&rhs));
        }
    }

    // Pairings against `v = e_t ⋆ f`, which is not a basis element.
    let v_mod = c.module.clone();
    let swap = world.swap_last(&vd, &om, &v_mod);
    let mut left_pairing = Outcome::ok();
    let mut right_pairing = Outcome::ok();
    for k in &vk {
        let vp = basis(k, o);
        for t in 0..rank {
            for f in fs {
                let v = world.right_act(&v_mod, &e(t), f);
                let base = env.d_fun(&pairing.pair(&vp, &v));
                let rhs = base.sub(&pairing.pair_first(&vp, &c.map.apply(&v)));
                let x = left.on_key(k);
                let lhs = contract(&world.join(&Space::of(&[&om.tensor(&vd), &v_mod]), &env.tensor(&[&*x, &v])), 1);
                left_pairing = left_pairing.merge(lhs.compare(&rhs));

                let mut rhs = base.clone();
                for (a, m, s) in adj.iter() {
                    let av = world.act_space(&Space::single(vd.clone()), a, &vp);
                    rhs.add_scaled(&pairing.pair_first(&av, &m.apply(&v)), &s.neg_ref());
                }
                let x = right.on_key(k);
                let joined = world.join(&Space::of(&[&vd.tensor(&om), &v_mod]), &env.tensor(&[&*x, &v]));
                let lhs = contract(&swap.apply(&joined), 0);
                right_pairing = right_pairing.merge(lhs.compare(&rhs));
            }
        }
    }

    Ok(DualReport { module: vd, left, right, left_leibniz, right_leibniz, left_pairing, right_pairing })
}
