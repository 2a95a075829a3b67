//! Linear maps between free bimodules and their tensor products.
//!
//! Two representations coexist. An [`OpMatrix`] is a matrix of
//! differential operators between single modules; it is closed under
//! composition, the adjoint actions and the quantization map, and
//! comparisons are exact operator identities. A [`Map`] is an evaluated
//! map between spaces (ground-ring tensor products), memoized per basis key;
//! it is what braidings, `⊗_R` products and everything assembled from them
//! produce.

mod braid;

pub use braid::{braid_relations, tensor_r_laws, BraidReport, TensorLaws};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::One;
use rand::Rng;

use crate::bimod::{compose_data, Elem, Env, HopfView, Key, Module, OpMatrixData, Space, World};
use crate::funcalg::{lowest, DiffOp, Mono, Poly};
use crate::hopf::{HopfElement, Twist};
use crate::outcome::Outcome;
use crate::series::{DeformationSeries, Scalar};

/// `P: src → tgt` with `P(e_s f) = Σ_t e_t D_ts(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpMatrix {
    pub src: Module,
    pub tgt: Module,
    pub data: OpMatrixData,
}

impl OpMatrix {
    pub fn zero(src: &Module, tgt: &Module) -> Self {
        OpMatrix { src: src.clone(), tgt: tgt.clone(), data: BTreeMap::new() }
    }

    pub fn identity(env: &Env, m: &Module) -> Self {
        Self::action(env, m, &env.hopf.unit())
    }

    /// `ξ ▷ −` on a module.
    pub fn action(env: &Env, m: &Module, xi: &HopfElement) -> Self {
        let mut out = Self::zero(m, m);
        for (w, c) in &xi.terms {
            for (k, d) in env.word_matrix(m, w).iter() {
                out.data.entry(k.clone()).or_default().add_assign(&d.scale(c));
            }
        }
        out.prune();
        out
    }

    /// `l_f`: multiplication by `f` on every basis element.
    pub fn left_mul(env: &Env, m: &Module, f: &Poly) -> Self {
        let mut out = Self::zero(m, m);
        for l in m.labels() {
            out.data.insert((l.clone(), l), DiffOp::mult(f.clone(), env.n));
        }
        out.prune();
        out
    }

    /// Entry `(t, s)` set to `f · (ξ ▷ −)` acting on the coefficient.
    pub fn smash(env: &Env, src: &Module, tgt: &Module, entries: &[(Vec<u16>, Vec<u16>, Poly, HopfElement)]) -> Self {
        let mut out = Self::zero(src, tgt);
        for (t, s, f, xi) in entries {
            let d = env.real.op(xi).premul(f);
            out.data.entry((t.clone(), s.clone())).or_default().add_assign(&d);
        }
        out.prune();
        out
    }

    /// Random operator with small integer coefficients; entries are
    /// multiplications only when `right_linear` is set.
    pub fn random(env: &Env, src: &Module, tgt: &Module, right_linear: bool, rng: &mut impl Rng) -> Self {
        let n = env.n;
        let o = env.order();
        let mut entries = Vec::new();
        let gens = env.hopf.lie().dim();
        for t in tgt.labels() {
            for s in src.labels() {
                for _ in 0..rng.gen_range(0..=2) {
                    let mut e = vec![0u16; n];
                    e[rng.gen_range(0..n)] = rng.gen_range(0..=1);
                    let c = Scalar::from_integer(rng.gen_range(-2i64..=2).into());
                    let f = Poly::monomial(e, DeformationSeries::constant(o, c));
                    let xi = if right_linear || rng.gen_bool(0.5) {
                        env.hopf.unit()
                    } else {
                        env.hopf.gen(rng.gen_range(0..gens))
                    };
                    entries.push((t.clone(), s.clone(), f, xi));
                }
            }
        }
        Self::smash(env, src, tgt, &entries)
    }

    fn prune(&mut self) {
        self.data.retain(|_, d| !d.is_zero());
    }

    pub fn apply(&self, env: &Env, v: &Elem) -> Elem {
        crate::bimod::apply_data(&self.data, v, env.order())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &OpMatrix) -> OpMatrix {
        debug_assert!(self.src == inner.tgt, "composition through mismatched modules");
        OpMatrix { src: inner.src.clone(), tgt: self.tgt.clone(), data: compose_data(&self.data, &inner.data) }
    }

    pub fn add(&self, o: &OpMatrix) -> OpMatrix {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &OpMatrix) {
        for (k, d) in &o.data {
            self.data.entry(k.clone()).or_default().add_assign(d);
        }
        self.prune();
    }

    pub fn sub(&self, o: &OpMatrix) -> OpMatrix {
        self.add(&o.scale_scalar(&-Scalar::one()))
    }

    pub fn scale(&self, s: &DeformationSeries) -> OpMatrix {
        let mut out = self.clone();
        for d in out.data.values_mut() {
            *d = d.scale(s);
        }
        out.prune();
        out
    }

    pub fn scale_scalar(&self, s: &Scalar) -> OpMatrix {
        let mut out = self.clone();
        for d in out.data.values_mut() {
            *d = d.scale_scalar(s);
        }
        out.prune();
        out
    }

    /// No derivatives in any entry.
    pub fn is_right_linear(&self) -> bool {
        self.data.values().all(|d| d.order() == 0)
    }

    pub fn compare(&self, other: &OpMatrix) -> Outcome {
        let diff = self.sub(other);
        let mut flat: BTreeMap<(Vec<u16>, Vec<u16>, Mono, Mono), DeformationSeries> = BTreeMap::new();
        for ((t, s), d) in &diff.data {
            for (a, p) in &d.terms {
                for (m, c) in &p.terms {
                    flat.insert((t.clone(), s.clone(), a.clone(), m.clone()), c.clone());
                }
            }
        }
        match lowest(&flat) {
            None => Outcome::ok(),
            Some((v, k)) => {
                let d = &diff.data[&(k.0.clone(), k.1.clone())];
                Outcome::fail(v, format!("entry {:?}←{:?}: {}", k.0, k.1, d.render()))
            }
        }
    }

    pub fn render(&self) -> String {
        if self.data.is_empty() {
            return "0".into();
        }
        self.data
            .iter()
            .map(|((t, s), d)| {
                format!("[{} ← {}] {}", self.tgt.render_labels(t), self.src.render_labels(s), d.render())
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_map(&self, env: &Arc<Env>) -> Map {
        let op = self.clone();
        let env2 = env.clone();
        Map::new(Space::single(self.src.clone()), Space::single(self.tgt.clone()), move |k| {
            op.apply(&env2, &Elem::basis(k.clone(), env2.order()))
        })
    }
}

/// `ξ ▶ P = ξ₁ ▷ ∘ P ∘ S(ξ₂) ▷` with the coproduct and antipode of `view`.
pub fn adjoint(view: &dyn HopfView, xi: &HopfElement, p: &OpMatrix) -> OpMatrix {
    let env = view.env();
    let hp = &env.hopf;
    let mut out = OpMatrix::zero(&p.src, &p.tgt);
    for (ws, c) in &view.coproduct(xi).terms {
        let left = OpMatrix::action(env, &p.tgt, &hp.word(&ws[0]));
        let right = OpMatrix::action(env, &p.src, &view.antipode(&hp.word(&ws[1])));
        out.add_assign(&left.compose(p).compose(&right).scale(c));
    }
    out
}

/// `D_F(P) = (f̄^α ▶ P) ∘ f̄_α ▷`.
pub fn d_quantize(twist: &Twist, env: &Env, p: &OpMatrix) -> OpMatrix {
    let hp = &env.hopf;
    let mut out = OpMatrix::zero(&p.src, &p.tgt);
    for (ws, c) in &twist.f_inv().terms {
        let a = adjoint(env, &hp.word(&ws[0]), p);
        out.add_assign(&a.compose(&OpMatrix::action(env, &p.src, &hp.word(&ws[1]))).scale(c));
    }
    out
}

/// `D_F(P) = f^β ▷ ∘ P ∘ S(f_β) χ⁻¹ ▷`.
pub fn d_quantize_alt(twist: &Twist, env: &Env, p: &OpMatrix) -> OpMatrix {
    let hp = &env.hopf;
    let mut out = OpMatrix::zero(&p.src, &p.tgt);
    for (ws, c) in &twist.f().terms {
        let left = OpMatrix::action(env, &p.tgt, &hp.word(&ws[0]));
        let r = hp.mul(&hp.antipode(&hp.word(&ws[1])), twist.chi_inv());
        out.add_assign(&left.compose(p).compose(&OpMatrix::action(env, &p.src, &r)).scale(c));
    }
    out
}

/// `D_F⁻¹(P) = f̄^α ▷ ∘ P ∘ χ S(f̄_α) ▷`.
pub fn d_quantize_inv(twist: &Twist, env: &Env, p: &OpMatrix) -> OpMatrix {
    let hp = &env.hopf;
    let mut out = OpMatrix::zero(&p.src, &p.tgt);
    for (ws, c) in &twist.f_inv().terms {
        let left = OpMatrix::action(env, &p.tgt, &hp.word(&ws[0]));
        let r = hp.mul(twist.chi(), &hp.antipode(&hp.word(&ws[1])));
        out.add_assign(&left.compose(p).compose(&OpMatrix::action(env, &p.src, &r)).scale(c));
    }
    out
}

/// `P ∘⋆ Q = (f̄^α ▶ P) ∘ (f̄_α ▶ Q)`.
pub fn star_compose(twist: &Twist, env: &Env, p: &OpMatrix, q: &OpMatrix) -> OpMatrix {
    let hp = &env.hopf;
    let mut out = OpMatrix::zero(&q.src, &p.tgt);
    for (ws, c) in &twist.f_inv().terms {
        let a = adjoint(env, &hp.word(&ws[0]), p);
        let b = adjoint(env, &hp.word(&ws[1]), q);
        out.add_assign(&a.compose(&b).scale(c));
    }
    out
}

type KeyFn = dyn Fn(&Key) -> Elem + Send + Sync;

/// Evaluated linear map between spaces, memoized per basis key.
#[derive(Clone)]
pub struct Map {
    pub src: Space,
    pub tgt: Space,
    eval: Arc<KeyFn>,
    memo: Arc<Mutex<HashMap<Key, Arc<Elem>>>>,
}

impl fmt::Debug for Map {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Map").field("src", &self.src).field("tgt", &self.tgt).finish()
    }
}

impl Map {
    pub fn new(src: Space, tgt: Space, f: impl Fn(&Key) -> Elem + Send + Sync + 'static) -> Self {
        Map { src, tgt, eval: Arc::new(f), memo: Arc::new(Mutex::new(HashMap::new())) }
    }

    pub fn identity(space: &Space, order: usize) -> Self {
        Map::new(space.clone(), space.clone(), move |k| Elem::basis(k.clone(), order))
    }

    pub fn on_key(&self, k: &Key) -> Arc<Elem> {
        if let Some(hit) = self.memo.lock().unwrap().get(k) {
            return hit.clone();
        }
        let v = Arc::new((self.eval)(k));
        self.memo.lock().unwrap().insert(k.clone(), v.clone());
        v
    }

    pub fn apply(&self, v: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (k, c) in &v.terms {
            out.add_scaled(&self.on_key(k), c);
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Map) -> Map {
        let (a, b) = (self.clone(), inner.clone());
        Map::new(inner.src.clone(), self.tgt.clone(), move |k| a.apply(&b.on_key(k)))
    }

    /// `Σ c_i M_i` over maps with common source and target.
    pub fn combine(src: &Space, tgt: &Space, parts: Vec<(DeformationSeries, Map)>) -> Map {
        Map::new(src.clone(), tgt.clone(), move |k| {
            let mut out = Elem::zero();
            for (c, m) in &parts {
                out.add_scaled(&m.on_key(k), c);
            }
            out
        })
    }

    pub fn sub(&self, other: &Map) -> Map {
        let (a, b) = (self.clone(), other.clone());
        Map::new(self.src.clone(), self.tgt.clone(), move |k| a.on_key(k).sub(&b.on_key(k)))
    }

    pub fn add(&self, other: &Map) -> Map {
        let (a, b) = (self.clone(), other.clone());
        Map::new(self.src.clone(), self.tgt.clone(), move |k| a.on_key(k).add(&b.on_key(k)))
    }

    /// Applies `inner` to blocks `start..start + inner.src.arity()` of `full`.
    pub fn on_blocks(env: &Arc<Env>, full: &Space, start: usize, inner: &Map) -> Map {
        let len = inner.src.arity();
        let mut tgt = full.blocks[..start].to_vec();
        tgt.extend(inner.tgt.blocks.iter().cloned());
        tgt.extend(full.blocks[start + len..].iter().cloned());
        let (full2, inner2, n) = (full.clone(), inner.clone(), env.n);
        Map::new(full.clone(), Space { blocks: tgt }, move |k| {
            let (pre, mid, post) = split_key(&full2, k, start, len, n);
            let img = inner2.on_key(&mid);
            let mut out = Elem::zero();
            for (ik, c) in &img.terms {
                let mut labels = pre.labels.clone();
                labels.extend_from_slice(&ik.labels);
                labels.extend_from_slice(&post.labels);
                let mut exps = pre.exps.clone();
                exps.extend_from_slice(&ik.exps);
                exps.extend_from_slice(&post.exps);
                out.push(Key { labels, exps }, c.clone());
            }
            out
        })
    }

    pub fn compare(&self, other: &Map, keys: &[Key], order: usize) -> Outcome {
        let mut out = Outcome::ok();
        for k in keys {
            let o = self.on_key(k).compare(&other.on_key(k));
            if !o.pass {
                let sample = format!("on {}: {}", Elem::basis(k.clone(), order).render_raw(), o.sample.unwrap_or_default());
                out = out.merge(Outcome { sample: Some(sample), ..o });
            }
        }
        out
    }
}

/// Splits a key into the parts before, inside and after a block range.
pub(crate) fn split_key(space: &Space, k: &Key, start: usize, len: usize, n: usize) -> (Key, Key, Key) {
    let lstart: usize = space.blocks[..start].iter().map(|b| b.len()).sum();
    let lmid: usize = space.blocks[start..start + len].iter().map(|b| b.len()).sum();
    let part = |l0: usize, l1: usize, e0: usize, e1: usize| Key {
        labels: k.labels[l0..l1].to_vec(),
        exps: k.exps[e0..e1].to_vec(),
    };
    (
        part(0, lstart, 0, start * n),
        part(lstart, lstart + lmid, start * n, (start + len) * n),
        part(lstart + lmid, k.labels.len(), (start + len) * n, k.exps.len()),
    )
}

/// `ξ ▶ M` on an evaluated map, using the coproduct and antipode of `view`.
pub fn adjoint_map<V: HopfView + Send + Sync + 'static>(view: &Arc<V>, xi: &HopfElement, m: &Map) -> Map {
    let hp = view.env().hopf.clone();
    let mut parts = Vec::new();
    for (ws, c) in &view.coproduct(xi).terms {
        parts.push((hp.word(&ws[0]), view.antipode(&hp.word(&ws[1])), c.clone()));
    }
    let (v, m2) = (view.clone(), m.clone());
    let order = hp.ctx().order;
    Map::new(m.src.clone(), m.tgt.clone(), move |k| {
        let base = Elem::basis(k.clone(), order);
        let mut out = Elem::zero();
        for (l, r, c) in &parts {
            let inner = m2.apply(&v.act_space(&m2.src, r, &base));
            out.add_scaled(&v.act_space(&m2.tgt, l, &inner), c);
        }
        out
    })
}

/// `D_F(M) = (f̄^α ▶ M) ∘ f̄_α ▷` on an evaluated map, with undeformed actions.
pub fn d_quantize_map(twist: &Twist, env: &Arc<Env>, m: &Map) -> Map {
    let mut parts = Vec::new();
    for (ws, c) in &twist.f_inv().terms {
        let a = adjoint_map(env, &env.hopf.word(&ws[0]), m);
        let b = env.hopf.word(&ws[1]);
        let (envc, src) = (env.clone(), m.src.clone());
        let act = Map::new(m.src.clone(), m.src.clone(), move |k| {
            envc.act_space(&src, &b, &Elem::basis(k.clone(), envc.order()))
        });
        parts.push((c.clone(), a.compose(&act)));
    }
    Map::combine(&m.src, &m.tgt, parts)
}

/// `ξ ▷ −` on a space as an evaluated map.
pub fn action_map<V: HopfView + Send + Sync + 'static>(view: &Arc<V>, space: &Space, xi: &HopfElement) -> Map {
    let (v, sp, x) = (view.clone(), space.clone(), xi.clone());
    let order = view.env().order();
    Map::new(space.clone(), space.clone(), move |k| v.act_space(&sp, &x, &Elem::basis(k.clone(), order)))
}

/// The ground-ring-level map of a world, descended to the tensor product over `A`:
/// `join ∘ M ∘ split`.
pub fn a_level(world: &Arc<World>, m: &Map) -> Map {
    let (w, m2) = (world.clone(), m.clone());
    let src = Space::single(m.src.flatten());
    let tgt = Space::single(m.tgt.flatten());
    let order = world.order();
    Map::new(src, tgt, move |k| {
        let s = w.split(&m2.src, &Elem::basis(k.clone(), order));
        w.join(&m2.tgt, &m2.apply(&s))
    })
}

/// `D_F(P)(v ⋆ a) = D_F(P)(v) ⋆ a` for right-linear `P`, in the deformed world.
pub fn right_linearity(world: &World, q: &OpMatrix, keys: &[Key], fs: &[Poly]) -> Outcome {
    let env = &world.env;
    let mut out = Outcome::ok();
    for k in keys {
        let v = Elem::basis(k.clone(), env.order());
        for a in fs {
            let lhs = q.apply(env, &world.right_act(&q.src, &v, a));
            let rhs = world.right_act(&q.tgt, &q.apply(env, &v), a);
            out = out.merge(lhs.compare(&rhs));
        }
    }
    out
}

/// `Q(a ⋆ w) = (R̄^α ▷ a) ⋆ (R̄_α ▶ Q)(w)` in a world.
pub fn quasi_left_linearity(world: &World, q: &OpMatrix, keys: &[Key], fs: &[Poly]) -> Outcome {
    let env = &world.env;
    let hp = &env.hopf;
    let mut adj: Vec<(crate::hopf::Word, OpMatrix, DeformationSeries)> = Vec::new();
    for (ws, c) in &world.r_bar().terms {
        adj.push((ws[0].clone(), adjoint(world, &hp.word(&ws[1]), q), c.clone()));
    }
    let mut out = Outcome::ok();
    for k in keys {
        let v = Elem::basis(k.clone(), env.order());
        for a in fs {
            let lhs = q.apply(env, &world.left_act(a, &q.src, &v));
            let mut rhs = Elem::zero();
            for (w, m, c) in &adj {
                let ra = env.real.word_op(w).apply(a);
                rhs.add_scaled(&world.left_act(&ra, &q.tgt, &m.apply(env, &v)), c);
            }
            out = out.merge(lhs.compare(&rhs));
        }
    }
    out
}

/// Pointwise identities of the quantization map on a pair of samples.
#[derive(Clone, Debug, Default)]
pub struct QuantizationReport {
    /// `D_F(P ∘⋆ Q) = D_F(P) ∘ D_F(Q)`.
    pub homomorphism: Outcome,
    /// `D_F(ξ ▶ P) = ξ ▶_F D_F(P)`.
    pub intertwining: Outcome,
    /// `D_F ∘ D_F⁻¹ = id` and `D_F⁻¹ ∘ D_F = id`.
    pub inverse: Outcome,
    /// Both closed forms of `D_F` agree.
    pub alternative: Outcome,
}

impl QuantizationReport {
    pub fn merge(self, o: QuantizationReport) -> Self {
        QuantizationReport {
            homomorphism: self.homomorphism.merge(o.homomorphism),
            intertwining: self.intertwining.merge(o.intertwining),
            inverse: self.inverse.merge(o.inverse),
            alternative: self.alternative.merge(o.alternative),
        }
    }
}

/// Checks the quantization identities for endomorphisms `p`, `q` and a Hopf element.
pub fn quantization_identities(
    deformed: &World,
    twist: &Twist,
    p: &OpMatrix,
    q: &OpMatrix,
    xi: &HopfElement,
) -> QuantizationReport {
    let env = &deformed.env;
    let dp = d_quantize(twist, env, p);
    let dq = d_quantize(twist, env, q);
    let homomorphism = d_quantize(twist, env, &star_compose(twist, env, p, q)).compare(&dp.compose(&dq));
    let intertwining = d_quantize(twist, env, &adjoint(env.as_ref(), xi, p)).compare(&adjoint(deformed, xi, &dp));
    let inverse = d_quantize_inv(twist, env, &dp)
        .compare(p)
        .merge(d_quantize(twist, env, &d_quantize_inv(twist, env, q)).compare(q));
    let alternative = d_quantize_alt(twist, env, p).compare(&dp);
    QuantizationReport { homomorphism, intertwining, inverse, alternative }
}

/// `ξ ▶ (P ∘ Q) = (ξ₁ ▶ P) ∘ (ξ₂ ▶ Q)` and `(ξη) ▶ P = ξ ▶ (η ▶ P)` in a world.
pub fn adjoint_laws(view: &dyn HopfView, xi: &HopfElement, eta: &HopfElement, p: &OpMatrix, q: &OpMatrix) -> Outcome {
    let hp = &view.env().hopf;
    let lhs = adjoint(view, xi, &p.compose(q));
    let mut rhs = OpMatrix::zero(&q.src, &p.tgt);
    for (ws, c) in &view.coproduct(xi).terms {
        let a = adjoint(view, &hp.word(&ws[0]), p);
        let b = adjoint(view, &hp.word(&ws[1]), q);
        rhs.add_assign(&a.compose(&b).scale(c));
    }
    let action = adjoint(view, &hp.mul(xi, eta), p).compare(&adjoint(view, xi, &adjoint(view, eta, p)));
    lhs.compare(&rhs).merge(action)
}

/// `φ ∘ (D_F(P) ⊗_{R^F} D_F(Q)) = D_F((f̄^α ▶ P) ⊗_R (f̄_α ▶ Q)) ∘ φ`, on
/// ground-ring tensors (first outcome) and over `A` (second outcome).
pub fn quantization_diagram(
    undeformed: &Arc<World>,
    deformed: &Arc<World>,
    twist: &Twist,
    p: &OpMatrix,
    q: &OpMatrix,
    keys: &[Key],
    keys_a: &[Key],
) -> (Outcome, Outcome) {
    let env = &deformed.env;
    let hp = &env.hopf;
    let o = env.order();
    let dp = d_quantize(twist, env, p).to_map(env);
    let dq = d_quantize(twist, env, q).to_map(env);
    let (pm, qm) = (p.to_map(env), q.to_map(env));
    let mut k_parts = Vec::new();
    let mut a_parts = Vec::new();
    for (ws, c) in &twist.f_inv().terms {
        let a = adjoint_map(env, &hp.word(&ws[0]), &pm);
        let b = adjoint_map(env, &hp.word(&ws[1]), &qm);
        k_parts.push((c.clone(), undeformed.tensor_r(&a, &b)));
        a_parts.push((c.clone(), undeformed.tensor_r_a(&a, &b)));
    }
    let k_inner = Map::combine(&Space::of(&[&p.src, &q.src]), &Space::of(&[&p.tgt, &q.tgt]), k_parts);
    let a_inner = Map::combine(
        &Space::single(p.src.tensor(&q.src)),
        &Space::single(p.tgt.tensor(&q.tgt)),
        a_parts,
    );
    let phi = |sp: &Space| {
        let (e, sp2, inv) = (env.clone(), sp.clone(), twist.f_inv().clone());
        Map::new(sp.clone(), sp.clone(), move |k| e.act_blocks(&sp2, &inv, &Elem::basis(k.clone(), e.order())))
    };
    let lhs = phi(&k_inner.tgt).compose(&deformed.tensor_r(&dp, &dq));
    let rhs = d_quantize_map(twist, env, &k_inner).compose(&phi(&k_inner.src));
    let k_level = lhs.compare(&rhs, keys, o);
    let lhs = deformed.tensor_r_a(&dp, &dq);
    let rhs = d_quantize_map(twist, env, &a_inner);
    (k_level, lhs.compare(&rhs, keys_a, o))
}

#[cfg(test)]
mod tests;
