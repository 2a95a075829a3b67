//! Right connections on free bimodules, their extension to forms,
//! curvature, quantization, braided sums and dual connections.
//!
//! A connection on `V` is a map `V → V ⊗_A Ω` with `Ω` as the last atom of
//! the target. Everything is expressed through a [`World`], so the same
//! code computes `∇`, its quantization `D̃_F(∇)` and their sums; in the
//! deformed world the `⋆`-actions, `⊗_{A⋆}` and `∧⋆` are used throughout.

mod dual;

pub use dual::{dual_connections, DualReport};

use std::sync::Arc;

use crate::bimod::{parse_form, Elem, Env, HopfView, Key, Module, Space, World};
use crate::error::{Error, Result};
use crate::funcalg::{DiffOp, Poly};
use crate::hopf::{HopfElement, Twist};
use crate::morphism::{a_level, adjoint_map, d_quantize, d_quantize_map, Map, OpMatrix};
use crate::outcome::Outcome;

/// A connection together with its module; `op` is present when the
/// connection is given symbolically.
#[derive(Clone, Debug)]
pub struct Connection {
    pub name: String,
    pub module: Module,
    pub map: Map,
    pub op: Option<OpMatrix>,
}

impl Connection {
    /// `∇(e_s f) = Σ_t e_t ⊗ ω_ts f + e_s ⊗ df`; `omega[t][s]` are elements of `Ω`.
    pub fn from_forms(env: &Arc<Env>, name: &str, module: &Module, omega: &[Vec<Elem>]) -> Result<Self> {
        let labels = module.labels();
        let k = labels.len();
        if omega.len() != k || omega.iter().any(|r| r.len() != k) {
            return Err(Error::Shape(format!("connection `{name}` needs a {k}×{k} grid of forms")));
        }
        let tgt = module.tensor(&env.omega());
        let mut op = OpMatrix::zero(module, &tgt);
        for (t, row) in omega.iter().enumerate() {
            for (s, form) in row.iter().enumerate() {
                for (key, c) in &form.terms {
                    if crate::bimod::mask_degree(key.labels[0]) != 1 {
                        return Err(Error::Shape(format!("connection `{name}` has a coefficient that is not a 1-form")));
                    }
                    let mut tl = labels[t].clone();
                    tl.push(key.labels[0]);
                    let p = Poly::monomial(key.exps.clone(), c.clone());
                    op.data.entry((tl, labels[s].clone())).or_default().add_assign(&DiffOp::mult(p, env.n));
                }
            }
        }
        for l in &labels {
            for i in 0..env.n {
                let mut tl = l.clone();
                tl.push(1 << i);
                let mut alpha = vec![0; env.n];
                alpha[i] = 1;
                op.data.entry((tl, l.clone())).or_default().add_assign(&DiffOp::partial(alpha, env.order()));
            }
        }
        op.data.retain(|_, d| !d.is_zero());
        Ok(Self::from_op(env, name, op))
    }

    /// Parses a grid of form literals, rows separated by `;` and entries by `,`.
    pub fn parse(env: &Arc<Env>, name: &str, module: &Module, text: &str) -> Result<Self> {
        let mut grid = Vec::new();
        for row in text.split(';') {
            let mut r = Vec::new();
            for entry in row.split(',') {
                r.push(parse_form(entry.trim(), env.n, env.order())?);
            }
            grid.push(r);
        }
        Self::from_forms(env, name, module, &grid)
    }

    pub fn from_op(env: &Arc<Env>, name: &str, op: OpMatrix) -> Self {
        Connection { name: name.into(), module: op.src.clone(), map: op.to_map(env), op: Some(op) }
    }

    pub fn from_map(name: &str, module: &Module, map: Map) -> Self {
        Connection { name: name.into(), module: module.clone(), map, op: None }
    }

    /// `∇ + P` for `P: V → V ⊗_A Ω`.
    pub fn shifted(&self, env: &Arc<Env>, p: &OpMatrix) -> Self {
        match &self.op {
            Some(op) => Self::from_op(env, &self.name, op.add(p)),
            None => Self::from_map(&self.name, &self.module, self.map.add(&p.to_map(env))),
        }
    }

    /// `ξ ▶ ∇` in a world; an `A`-linear map unless `ε(ξ) ≠ 0`.
    pub fn adjoint(&self, world: &Arc<World>, xi: &HopfElement) -> Self {
        Self::from_map(&self.name, &self.module, adjoint_map(world, xi, &self.map))
    }
}

/// `D̃_F(∇)`, symbolic when possible.
pub fn quantize(twist: &Twist, env: &Arc<Env>, c: &Connection) -> Connection {
    let name = format!("{}⋆", c.name);
    match &c.op {
        Some(op) => Connection::from_op(env, &name, d_quantize(twist, env, op)),
        None => Connection::from_map(&name, &c.module, d_quantize_map(twist, env, &c.map)),
    }
}

/// `Σ_α (f̄^α ▶ P) ∘ (f̄_α ▶ Q)` on evaluated maps with undeformed actions.
pub fn star_compose_maps(twist: &Twist, env: &Arc<Env>, p: &Map, q: &Map) -> Map {
    let hp = &env.hopf;
    let mut parts = Vec::new();
    for (ws, c) in &twist.f_inv().terms {
        let a = adjoint_map(env, &hp.word(&ws[0]), p);
        let b = adjoint_map(env, &hp.word(&ws[1]), q);
        parts.push((c.clone(), a.compose(&b)));
    }
    Map::combine(&q.src, &p.tgt, parts)
}

fn basis(k: &Key, order: usize) -> Elem {
    Elem::basis(k.clone(), order)
}

impl World {
    /// `∇(v ⊗ θ) = (∇v) ∧ θ + v ⊗ dθ` on a ground-ring element of `[V, Ω]`.
    pub fn ext_k(&self, c: &Connection, x: &Elem) -> Elem {
        let env = &self.env;
        let v = &c.module;
        let om = env.omega();
        let sp = Space::of(&[v, &om]);
        let vo = v.tensor(&om);
        let mut out = Elem::zero();
        for (k, coef) in &x.terms {
            let (_, kv, kt) = crate::morphism::split_key(&sp, k, 0, 1, env.n);
            let theta = basis(&kt, self.order());
            let nv = c.map.on_key(&kv);
            let nv: &Elem = &nv;
            let first = self.join(&Space::of(&[&vo, &om]), &env.tensor(&[nv, &theta]));
            out.add_scaled(&env.wedge_at(&first, v.len()), coef);
            let second = self.join(&sp, &env.tensor(&[&basis(&kv, self.order()), &env.d(&theta)]));
            out.add_scaled(&second, coef);
        }
        out
    }

    /// The extension of `∇` to `V ⊗_A Ω`.
    pub fn ext(self: &Arc<Self>, c: &Connection) -> Map {
        let vo = Space::single(c.module.tensor(&self.env.omega()));
        let (w, c2) = (self.clone(), c.clone());
        let sp = Space::of(&[&c.module, &self.env.omega()]);
        Map::new(vo.clone(), vo, move |k| w.ext_k(&c2, &w.split(&sp, &basis(k, w.order()))))
    }

    /// `R_∇ = ∇ ∘ ∇`.
    pub fn curvature(self: &Arc<Self>, c: &Connection) -> Map {
        self.ext(c).compose(&c.map)
    }

    /// `∇(v ⋆ a) = (∇v) ⋆ a + v ⊗ da`.
    pub fn right_leibniz(&self, c: &Connection, keys: &[Key], fs: &[Poly]) -> Outcome {
        let env = &self.env;
        let om = env.omega();
        let vo = c.module.tensor(&om);
        let mut out = Outcome::ok();
        for k in keys {
            let v = basis(k, self.order());
            for a in fs {
                let lhs = c.map.apply(&self.right_act(&c.module, &v, a));
                let rhs = self
                    .right_act(&vo, &c.map.apply(&v), a)
                    .add(&self.tensor_over(&c.module, &v, &om, &env.d_fun(a)));
                out = out.merge(lhs.compare(&rhs));
            }
        }
        out
    }

    /// `∇(a ⋆ v) = (R̄^α ▷ a) ⋆ (R̄_α ▶ ∇)(v) + (R_α ▷ v) ⊗ (R^α ▷ da)`.
    pub fn braided_leibniz(self: &Arc<Self>, c: &Connection, keys: &[Key], fs: &[Poly]) -> Outcome {
        let env = &self.env;
        let hp = &env.hopf;
        let om = env.omega();
        let vo = c.module.tensor(&om);
        let adj: Vec<_> = self
            .r_bar()
            .terms
            .iter()
            .map(|(ws, s)| (ws[0].clone(), adjoint_map(self, &hp.word(&ws[1]), &c.map), s.clone()))
            .collect();
        let mut out = Outcome::ok();
        for k in keys {
            let v = basis(k, self.order());
            for a in fs {
                let lhs = c.map.apply(&self.left_act(a, &c.module, &v));
                let mut rhs = Elem::zero();
                for (w, m, s) in &adj {
                    let ra = env.real.word_op(w).apply(a);
                    rhs.add_scaled(&self.left_act(&ra, &vo, &m.on_key(k)), s);
                }
                let da = env.d_fun(a);
                for (ws, s) in &self.r.r().terms {
                    let rv = env.act(&c.module, &hp.word(&ws[1]), &v);
                    let rda = env.act(&om, &hp.word(&ws[0]), &da);
                    rhs.add_scaled(&self.tensor_over(&c.module, &rv, &om, &rda), s);
                }
                out = out.merge(lhs.compare(&rhs));
            }
        }
        out
    }

    /// Images of `v ⋆ a ⊗ θ` and `v ⊗ a ⋆ θ` under the extension agree.
    pub fn ext_well_defined(&self, c: &Connection, vkeys: &[Key], fkeys: &[Key], fs: &[Poly]) -> Outcome {
        let env = &self.env;
        let om = env.omega();
        let mut out = Outcome::ok();
        for kv in vkeys {
            let v = basis(kv, self.order());
            for kt in fkeys {
                let t = basis(kt, self.order());
                for a in fs {
                    let l = self.ext_k(c, &env.tensor(&[&self.right_act(&c.module, &v, a), &t]));
                    let r = self.ext_k(c, &env.tensor(&[&v, &self.left_act(a, &om, &t)]));
                    out = out.merge(l.compare(&r));
                }
            }
        }
        out
    }

    /// `R(v ⋆ a) = R(v) ⋆ a`.
    pub fn curvature_linearity(self: &Arc<Self>, c: &Connection, keys: &[Key], fs: &[Poly]) -> Outcome {
        let r = self.curvature(c);
        let vo = c.module.tensor(&self.env.omega());
        let mut out = Outcome::ok();
        for k in keys {
            let v = basis(k, self.order());
            for a in fs {
                let lhs = r.apply(&self.right_act(&c.module, &v, a));
                let rhs = self.right_act(&vo, &r.on_key(k), a);
                out = out.merge(lhs.compare(&rhs));
            }
        }
        out
    }

    /// `left ⊗ mid ⊗ right → left ⊗ right ⊗ mid` by `τ⁻¹` on the last two factors.
    pub fn swap_last(self: &Arc<Self>, left: &Module, mid: &Module, right: &Module) -> Map {
        let tau = a_level(self, &self.braiding_inv(std::slice::from_ref(mid), std::slice::from_ref(right)));
        let inner = Map::on_blocks(&self.env, &Space::of(&[left, &mid.tensor(right)]), 1, &tau);
        a_level(self, &inner)
    }

    /// `left ⊗ mid ⊗ right ⊗ tail → left ⊗ right ⊗ mid ⊗ tail`.
    fn swap_inner(self: &Arc<Self>, left: &Module, mid: &Module, right: &Module, tail: &Module) -> Map {
        let tau = a_level(self, &self.braiding_inv(std::slice::from_ref(mid), std::slice::from_ref(right)));
        let inner = Map::on_blocks(&self.env, &Space::of(&[left, &mid.tensor(right), tail]), 1, &tau);
        a_level(self, &inner)
    }

    /// Ground-ring parts of the sum: `τ⁻¹_{23} ∘ π ∘ (P ⊗ id)` and `π ∘ (id ⊗_R Q)`.
    fn sum_parts(self: &Arc<Self>, v: &Module, w: &Module, p: &Map, q: &Map) -> Map {
        let env = &self.env;
        let om = env.omega();
        let src = Space::of(&[v, w]);
        let tgt = Space::single(v.tensor(w).tensor(&om));
        let swap = self.swap_last(v, &om, w);
        let hp = &env.hopf;
        let adj: Vec<_> = self
            .r_bar()
            .terms
            .iter()
            .map(|(ws, s)| (hp.word(&ws[0]), adjoint_map(self, &hp.word(&ws[1]), q), s.clone()))
            .collect();
        let (me, p2, v2, w2, src2) = (self.clone(), p.clone(), v.clone(), w.clone(), src.clone());
        Map::new(src, tgt, move |k| {
            let n = me.env.n;
            let o = me.order();
            let (_, kv, kw) = crate::morphism::split_key(&src2, k, 0, 1, n);
            let vo = v2.tensor(&me.env.omega());
            let first = me.join(&Space::of(&[&vo, &w2]), &me.env.tensor(&[&*p2.on_key(&kv), &basis(&kw, o)]));
            let mut out = swap.apply(&first);
            let wo = w2.tensor(&me.env.omega());
            let bv = basis(&kv, o);
            for (a, qa, s) in &adj {
                let av = me.act_space(&Space::single(v2.clone()), a, &bv);
                let part = me.join(&Space::of(&[&v2, &wo]), &me.env.tensor(&[&av, &*qa.on_key(&kw)]));
                out.add_scaled(&part, s);
            }
            out
        })
    }

    /// `∇_V ⊕_R ∇_W` on `V ⊗_A W`.
    pub fn sum(self: &Arc<Self>, a: &Connection, b: &Connection) -> Connection {
        let (v, w) = (&a.module, &b.module);
        let mk = self.sum_parts(v, w, &a.map, &b.map);
        let sp = Space::of(&[v, w]);
        let vw = v.tensor(w);
        let (me, mk2) = (self.clone(), mk.clone());
        let map = Map::new(Space::single(vw.clone()), mk.tgt.clone(), move |k| {
            mk2.apply(&me.split(&sp, &basis(k, me.order())))
        });
        Connection::from_map(&format!("{}⊕{}", a.name, b.name), &vw, map)
    }

    /// The ground-ring formula of the sum takes the same value on
    /// `v ⋆ a ⊗ w` and `v ⊗ a ⋆ w`.
    pub fn sum_well_defined(
        self: &Arc<Self>,
        a: &Connection,
        b: &Connection,
        vkeys: &[Key],
        wkeys: &[Key],
        fs: &[Poly],
    ) -> Outcome {
        let mk = self.sum_parts(&a.module, &b.module, &a.map, &b.map);
        let env = &self.env;
        let mut out = Outcome::ok();
        for kv in vkeys {
            let v = basis(kv, self.order());
            for kw in wkeys {
                let w = basis(kw, self.order());
                for f in fs {
                    let l = mk.apply(&env.tensor(&[&self.right_act(&a.module, &v, f), &w]));
                    let r = mk.apply(&env.tensor(&[&v, &self.left_act(f, &b.module, &w)]));
                    out = out.merge(l.compare(&r));
                }
            }
        }
        out
    }

    /// `ξ ▶ (∇_V ⊕ ∇_W)` against the sum formula applied to `ξ ▶ ∇_V` and
    /// `ξ ▶ ∇_W`. The identity legs of the two `⊗_R` products absorb the
    /// other coproduct leg through the counit.
    pub fn sum_equivariance(
        self: &Arc<Self>,
        a: &Connection,
        b: &Connection,
        xis: &[HopfElement],
        keys: &[Key],
    ) -> Outcome {
        let s = self.sum(a, b);
        let mut out = Outcome::ok();
        for xi in xis {
            let lhs = adjoint_map(self, xi, &s.map);
            let rhs = self.sum(&a.adjoint(self, xi), &b.adjoint(self, xi)).map;
            out = out.merge(lhs.compare(&rhs, keys, self.order()));
        }
        out
    }

    /// `(∇_V ⊕ ∇_W) ⊕ ∇_Z = ∇_V ⊕ (∇_W ⊕ ∇_Z)` on `V ⊗ W ⊗ Z`.
    pub fn sum_associativity(self: &Arc<Self>, a: &Connection, b: &Connection, c: &Connection, keys: &[Key]) -> Outcome {
        let l = self.sum(&self.sum(a, b), c);
        let r = self.sum(a, &self.sum(b, c));
        l.map.compare(&r.map, keys, self.order())
    }

    /// Right Leibniz rule of the sum on `V ⊗ W`.
    pub fn sum_leibniz(self: &Arc<Self>, a: &Connection, b: &Connection, keys: &[Key], fs: &[Poly]) -> Outcome {
        self.right_leibniz(&self.sum(a, b), keys, fs)
    }

    /// `(id ⊗ ∧) ∘ τ⁻¹_{23} ∘ π ∘ (P ⊗_R Q)` on ground-ring elements of `[V, W]`.
    fn wedge_pair(self: &Arc<Self>, v: &Module, w: &Module, p: &Map, q: &Map) -> Map {
        let env = &self.env;
        let om = env.omega();
        let pq = self.tensor_r(p, q);
        let vo = v.tensor(&om);
        let swap = self.swap_inner(v, &om, w, &om);
        let pos = v.len() + w.len();
        let (me, vo2, wo) = (self.clone(), vo.clone(), w.tensor(&om));
        Map::new(pq.src.clone(), Space::single(v.tensor(w).tensor(&om)), move |k| {
            let joined = me.join(&Space::of(&[&vo2, &wo]), &pq.on_key(k));
            me.env.wedge_at(&swap.apply(&joined), pos)
        })
    }

    /// Both sides of the curvature-sum identity, and the second line alone.
    pub fn curvature_sum(self: &Arc<Self>, a: &Connection, b: &Connection, keys: &[Key]) -> (Outcome, Outcome) {
        let (v, w) = (&a.module, &b.module);
        let hp = self.env.hopf.clone();
        let o = self.order();
        let lhs = self.curvature(&self.sum(a, b));
        let first = self.sum_parts(v, w, &self.curvature(a), &self.curvature(b));
        let mut parts = vec![(self.env.one(), self.wedge_pair(v, w, &a.map, &b.map))];
        for (ws, c) in &self.r_bar().terms {
            let l = adjoint_map(self, &hp.word(&ws[0]), &a.map);
            let r = adjoint_map(self, &hp.word(&ws[1]), &b.map);
            parts.push((c.neg_ref(), self.wedge_pair(v, w, &l, &r)));
        }
        let second = Map::combine(&first.src, &first.tgt, parts);
        let sp = Space::of(&[v, w]);
        let (me, f2, s2, sp2) = (self.clone(), first.clone(), second.clone(), sp.clone());
        let rhs = Map::new(lhs.src.clone(), lhs.tgt.clone(), move |k| {
            let x = me.split(&sp2, &basis(k, o));
            f2.apply(&x).add(&s2.apply(&x))
        });
        let mut vanish = Outcome::ok();
        for k in keys {
            let x = self.split(&sp, &basis(k, o));
            vanish = vanish.merge(second.apply(&x).compare(&Elem::zero()));
        }
        (lhs.compare(&rhs, keys, o), vanish)
    }
}

/// `R_{D̃_F(∇)} = D̃_F(∇ ∘⋆ ∇)`; also returns the classical curvature,
/// `D̃_F(R_∇)` and `R_{D̃_F(∇)}`.
pub struct TwistedCurvature {
    pub identity: Outcome,
    pub classical: Map,
    pub quantized_classical: Map,
    pub quantized: Map,
}

pub fn twisted_curvature(
    undeformed: &Arc<World>,
    deformed: &Arc<World>,
    twist: &Twist,
    c: &Connection,
    keys: &[Key],
) -> TwistedCurvature {
    let env = &deformed.env;
    let q = quantize(twist, env, c);
    let quantized = deformed.curvature(&q);
    let ext = undeformed.ext(c);
    let star = star_compose_maps(twist, env, &ext, &c.map);
    let rhs = d_quantize_map(twist, env, &star);
    let identity = quantized.compare(&rhs, keys, env.order());
    let classical = undeformed.curvature(c);
    let quantized_classical = d_quantize_map(twist, env, &classical);
    TwistedCurvature { identity, classical, quantized_classical, quantized }
}

/// Renders a map `V → V ⊗ Ω` on the basis of `V`.
pub fn render_on_basis(env: &Env, map: &Map, module: &Module) -> String {
    let tgt = module.tensor(&env.omega());
    let mut rows = Vec::new();
    for l in module.labels() {
        let k = Key { labels: l.clone(), exps: vec![0; env.n] };
        let img = map.on_key(&k);
        if module.labels().len() == 1 {
            rows.push(img.render(&tgt));
        } else {
            rows.push(format!("{} ↦ {}", module.render_labels(&l), img.render(&tgt)));
        }
    }
    rows.join("\n")
}

#[cfg(test)]
mod tests;
