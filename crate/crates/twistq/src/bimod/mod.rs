//! Free `H`-equivariant `A`-bimodules with central basis, their tensor
//! products over `A` and over the ground ring, and the `H`-action on both.
//!
//! A [`Module`] is an ordered list of [`Atom`]s and stands for their tensor
//! product over `A`; the empty list is `A` itself. Since every basis is
//! central, an element of a module is a sum of basis tuples with a single
//! polynomial coefficient. A [`Space`] is an ordered list of modules and
//! stands for their tensor product over the ground ring; its keys carry one
//! exponent block per module.

mod forms;
mod world;

pub(crate) use forms::apply_data;
pub use forms::{d_matrix, form_label, forms_atom, mask_degree, parse_form, wedge_mask};
pub use world::World;

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::funcalg::{lowest, monomials, render_items, render_mono, DiffOp, KeyDegree, Mono, Poly, Realization};
use crate::hopf::{Hopf, HopfElement, TensorElement, Word};
use crate::outcome::Outcome;
use crate::series::{accumulate, DeformationSeries, Scalar};

static NEXT_ATOM: AtomicU32 = AtomicU32::new(1);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomKind {
    Plain,
    /// The de Rham complex; labels are bitmasks of `dx` indices.
    Forms,
}

/// A free bimodule `V` with basis `e_1..e_k` and `g ▷ e_s = Σ_t e_t M_g[t][s]`.
#[derive(Debug)]
pub struct Atom {
    id: u32,
    pub name: String,
    pub kind: AtomKind,
    pub labels: Vec<String>,
    pub degrees: Vec<usize>,
    /// Per generator, sparse `(target, source) → M_g[t][s]`.
    pub action: Vec<BTreeMap<(u16, u16), Poly>>,
}

impl Atom {
    /// A plain module of the given rank. `action[g]` is a rank × rank grid
    /// (row = target) or empty for `g ▷ e = 0`. Checks
    /// `M_{[a,b]} = X_a(M_b) − X_b(M_a) + [M_a, M_b]`.
    pub fn plain(env: &Env, name: &str, rank: usize, action: Vec<Vec<Vec<Poly>>>) -> Result<Arc<Atom>> {
        let m = env.hopf.lie().dim();
        if rank == 0 || rank > 64 {
            return Err(Error::Config(format!("module `{name}` needs rank 1..=64")));
        }
        if action.len() != m {
            return Err(Error::Config(format!("module `{name}` needs one action matrix per generator")));
        }
        let mut sparse = Vec::with_capacity(m);
        for (g, grid) in action.iter().enumerate() {
            let mut map = BTreeMap::new();
            if grid.is_empty() {
                sparse.push(map);
                continue;
            }
            if grid.len() != rank || grid.iter().any(|r| r.len() != rank) {
                return Err(Error::Config(format!(
                    "action matrix of `{}` on `{name}` must be {rank}×{rank}",
                    env.hopf.names()[g]
                )));
            }
            for (t, row) in grid.iter().enumerate() {
                for (s, p) in row.iter().enumerate() {
                    if !p.is_zero() {
                        map.insert((t as u16, s as u16), p.clone());
                    }
                }
            }
            sparse.push(map);
        }
        let labels = if rank == 1 { vec!["e".to_string()] } else { (1..=rank).map(|i| format!("e{i}")).collect() };
        let atom = Atom {
            id: NEXT_ATOM.fetch_add(1, Ordering::Relaxed),
            name: name.to_string(),
            kind: AtomKind::Plain,
            labels,
            degrees: vec![0; rank],
            action: sparse,
        };
        atom.check_brackets(env)?;
        Ok(Arc::new(atom))
    }

    pub(crate) fn raw(
        name: &str,
        kind: AtomKind,
        labels: Vec<String>,
        degrees: Vec<usize>,
        action: Vec<BTreeMap<(u16, u16), Poly>>,
    ) -> Atom {
        Atom { id: NEXT_ATOM.fetch_add(1, Ordering::Relaxed), name: name.to_string(), kind, labels, degrees, action }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// The dual module with the dual basis and `g ▷ e'^s = -Σ_t e'^t M_g[s][t]`.
    pub fn dual(&self, name: &str) -> Arc<Atom> {
        let action = self
            .action
            .iter()
            .map(|m| m.iter().map(|((t, s), p)| ((*s, *t), p.scale_scalar(&-Scalar::from_integer(1.into())))).collect())
            .collect();
        let labels = self.labels.iter().map(|l| format!("{l}'")).collect();
        Arc::new(Atom::raw(name, self.kind, labels, self.degrees.clone(), action))
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    fn dense(&self, g: usize) -> Vec<Vec<Poly>> {
        let k = self.rank();
        let mut out = vec![vec![Poly::zero(); k]; k];
        for ((t, s), p) in &self.action[g] {
            out[*t as usize][*s as usize] = p.clone();
        }
        out
    }

    fn check_brackets(&self, env: &Env) -> Result<()> {
        let lie = env.hopf.lie();
        let k = self.rank();
        for a in 0..lie.dim() {
            for b in (a + 1)..lie.dim() {
                let ma = self.dense(a);
                let mb = self.dense(b);
                for t in 0..k {
                    for s in 0..k {
                        let mut lhs = env.real.apply_field(a, &mb[t][s]).sub(&env.real.apply_field(b, &ma[t][s]));
                        for u in 0..k {
                            lhs.add_assign(&ma[t][u].mul(&mb[u][s]).sub(&mb[t][u].mul(&ma[u][s])));
                        }
                        let mut rhs = Poly::zero();
                        for (c, v) in lie.bracket(a, b) {
                            rhs.add_assign(&self.dense(c)[t][s].scale_scalar(&v));
                        }
                        if lhs != rhs {
                            return Err(Error::Config(format!(
                                "action on `{}` is not compatible with [{}, {}] at entry ({}, {})",
                                self.name,
                                env.hopf.names()[a],
                                env.hopf.names()[b],
                                t + 1,
                                s + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Tensor product over `A` of a list of atoms.
#[derive(Clone, Debug, Default)]
pub struct Module {
    pub atoms: Vec<Arc<Atom>>,
}

impl PartialEq for Module {
    fn eq(&self, o: &Self) -> bool {
        self.ids() == o.ids()
    }
}

impl Eq for Module {}

impl Module {
    /// The algebra `A` as a module over itself.
    pub fn algebra() -> Self {
        Module { atoms: Vec::new() }
    }

    pub fn of(atoms: &[&Arc<Atom>]) -> Self {
        Module { atoms: atoms.iter().map(|a| (*a).clone()).collect() }
    }

    pub fn ids(&self) -> Vec<u32> {
        self.atoms.iter().map(|a| a.id).collect()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// `self ⊗_A other`.
    pub fn tensor(&self, other: &Module) -> Module {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Module { atoms }
    }

    pub fn slice(&self, from: usize, to: usize) -> Module {
        Module { atoms: self.atoms[from..to].to_vec() }
    }

    /// All basis tuples.
    pub fn labels(&self) -> Vec<Vec<u16>> {
        let mut out = vec![Vec::new()];
        for a in &self.atoms {
            let mut next = Vec::new();
            for l in &out {
                for i in 0..a.rank() {
                    let mut v = l.clone();
                    v.push(i as u16);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    /// Basis tuples whose form atoms have the given total degree.
    pub fn labels_of_degree(&self, deg: usize) -> Vec<Vec<u16>> {
        self.labels().into_iter().filter(|l| self.degree(l) == deg).collect()
    }

    pub fn degree(&self, labels: &[u16]) -> usize {
        self.atoms.iter().zip(labels).map(|(a, &l)| a.degrees[l as usize]).sum()
    }

    pub fn name(&self) -> String {
        if self.atoms.is_empty() {
            "A".into()
        } else {
            self.atoms.iter().map(|a| a.name.as_str()).collect::<Vec<_>>().join("⊗")
        }
    }

    pub fn render_labels(&self, labels: &[u16]) -> String {
        self.atoms
            .iter()
            .zip(labels)
            .map(|(a, &l)| a.labels[l as usize].clone())
            .collect::<Vec<_>>()
            .join(" ⊗ ")
    }
}

/// Tensor product over the ground ring of a list of modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    pub blocks: Vec<Module>,
}

impl Space {
    pub fn single(m: Module) -> Self {
        Space { blocks: vec![m] }
    }

    pub fn of(blocks: &[&Module]) -> Self {
        Space { blocks: blocks.iter().map(|m| (*m).clone()).collect() }
    }

    pub fn arity(&self) -> usize {
        self.blocks.len()
    }

    /// The tensor product over `A` of all blocks.
    pub fn flatten(&self) -> Module {
        let mut m = Module::algebra();
        for b in &self.blocks {
            m = m.tensor(b);
        }
        m
    }

    /// `(label range, exponent range)` of block `i` inside a key.
    pub fn block_ranges(&self, i: usize, n: usize) -> (std::ops::Range<usize>, std::ops::Range<usize>) {
        let start: usize = self.blocks[..i].iter().map(|b| b.len()).sum();
        (start..start + self.blocks[i].len(), i * n..(i + 1) * n)
    }

    /// Basis tuples times monomials of degree at most `d` in every block.
    pub fn basis_keys(&self, n: usize, d: usize) -> Vec<Key> {
        let mons = monomials(n, d);
        let mut out = vec![Key { labels: Vec::new(), exps: Vec::new() }];
        for b in &self.blocks {
            let mut next = Vec::new();
            for k in &out {
                for l in b.labels() {
                    for m in &mons {
                        let mut nk = k.clone();
                        nk.labels.extend_from_slice(&l);
                        nk.exps.extend_from_slice(m);
                        next.push(nk);
                    }
                }
            }
            out = next;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    pub labels: Vec<u16>,
    pub exps: Vec<u16>,
}

impl KeyDegree for Key {
    fn key_degree(&self) -> usize {
        self.exps.iter().map(|&x| x as usize).sum()
    }
}

/// Element of a module or a space; the ambient object is tracked by the caller.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Elem {
    pub terms: BTreeMap<Key, DeformationSeries>,
}

impl Elem {
    pub fn zero() -> Self {
        Elem::default()
    }

    pub fn basis(key: Key, order: usize) -> Self {
        let mut e = Elem::zero();
        e.terms.insert(key, DeformationSeries::one(order));
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, k: Key, c: DeformationSeries) {
        accumulate(&mut self.terms, k, c);
    }

    pub fn add_assign(&mut self, o: &Elem) {
        for (k, c) in &o.terms {
            accumulate(&mut self.terms, k.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, o: &Elem, s: &DeformationSeries) {
        for (k, c) in &o.terms {
            accumulate(&mut self.terms, k.clone(), c.mul_ref(s));
        }
    }

    pub fn add(&self, o: &Elem) -> Elem {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn sub(&self, o: &Elem) -> Elem {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            accumulate(&mut out.terms, k.clone(), c.neg_ref());
        }
        out
    }

    pub fn scale(&self, s: &DeformationSeries) -> Elem {
        let mut out = Elem::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn scale_scalar(&self, s: &Scalar) -> Elem {
        let mut out = Elem::zero();
        if s.is_zero() {
            return out;
        }
        for (k, c) in &self.terms {
            out.terms.insert(k.clone(), c.scale(s));
        }
        out
    }

    /// The element `Σ e_labels · p` of a single module.
    pub fn from_poly(labels: &[u16], p: &Poly) -> Elem {
        let mut e = Elem::zero();
        for (m, c) in &p.terms {
            e.push(Key { labels: labels.to_vec(), exps: m.clone() }, c.clone());
        }
        e
    }

    /// The coefficient polynomial of a basis tuple in a single module.
    pub fn coefficient(&self, labels: &[u16]) -> Poly {
        let mut p = Poly::zero();
        for (k, c) in &self.terms {
            if k.labels == labels {
                accumulate(&mut p.terms, k.exps.clone(), c.clone());
            }
        }
        p
    }

    pub fn compare(&self, other: &Elem) -> Outcome {
        let d = self.sub(other);
        match lowest(&d.terms) {
            None => Outcome::ok(),
            Some((v, k)) => {
                let c = d.terms[&k].part(v);
                let mut one = Elem::zero();
                one.terms.insert(k, c);
                Outcome::fail(v, one.render_raw())
            }
        }
    }

    /// Low-level rendering with label indices; used in diagnostics.
    pub fn render_raw(&self) -> String {
        let mut items = Vec::new();
        for (k, c) in &self.terms {
            for (p, q) in c.coeffs().iter().enumerate() {
                if !q.is_zero() {
                    items.push((p, k.clone(), q.clone()));
                }
            }
        }
        render_items(items, |k| {
            let vars = render_mono(&k.exps);
            let labels = k.labels.iter().map(|l| format!("e{l}")).collect::<Vec<_>>().join("⊗");
            [vars, format!("[{labels}]")].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join(" ")
        })
    }

    /// Renders an element of a single module, `x1 dx2 + 1/2 dx1` style.
    pub fn render(&self, module: &Module) -> String {
        let mut items = Vec::new();
        for (k, c) in &self.terms {
            for (p, q) in c.coeffs().iter().enumerate() {
                if !q.is_zero() {
                    items.push((p, k.clone(), q.clone()));
                }
            }
        }
        render_items(items, |k| {
            let vars = render_mono(&k.exps);
            let mut parts: Vec<String> = Vec::new();
            for (a, &l) in module.atoms.iter().zip(&k.labels) {
                let name = &a.labels[l as usize];
                let trivial = (a.kind == AtomKind::Plain && a.rank() == 1) || (a.kind == AtomKind::Forms && l == 0);
                if !trivial {
                    parts.push(name.clone());
                }
            }
            let basis = parts.join(" ⊗ ");
            [vars, basis].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join(" ")
        })
    }
}

/// Session-wide context: the Hopf algebra, its realization and the forms
/// atom, together with caches for word actions.
pub struct Env {
    pub hopf: Arc<Hopf>,
    pub real: Arc<Realization>,
    pub n: usize,
    pub forms: Arc<Atom>,
    word_mats: Mutex<HashMap<(Vec<u32>, Word), Arc<OpMatrixData>>>,
    key_acts: Mutex<HashMap<(Vec<u32>, Word, Key), Arc<Elem>>>,
    deltas: Mutex<HashMap<(usize, Word), Arc<TensorElement>>>,
}

/// Coproduct, antipode and the induced action on ground-ring tensors.
/// Implemented by [`Env`] (the undeformed Hopf algebra) and by [`World`].
pub trait HopfView: Sync {
    fn env(&self) -> &Env;
    fn coproduct(&self, xi: &HopfElement) -> TensorElement;
    fn antipode(&self, xi: &HopfElement) -> HopfElement;

    /// `Δ^{(k)}(ξ)` with `k` legs.
    fn iterated_coproduct(&self, xi: &HopfElement, k: usize) -> TensorElement {
        let hp = &self.env().hopf;
        let mut t = hp.as_tensor(xi);
        for _ in 1..k {
            t = hp.split_leg(&t, 0, |x| self.coproduct(x));
        }
        t
    }

    /// `ξ ▷ v` on a ground-ring tensor.
    fn act_space(&self, space: &Space, xi: &HopfElement, v: &Elem) -> Elem {
        let env = self.env();
        if space.arity() == 1 {
            return env.act(&space.blocks[0], xi, v);
        }
        env.act_blocks(space, &self.iterated_coproduct(xi, space.arity()), v)
    }

    /// Replaces leg `i` of a two-leg tensor by `sizes[i]` legs via the coproduct.
    fn expand_legs(&self, t: &TensorElement, sizes: &[usize]) -> TensorElement {
        let hp = &self.env().hopf;
        let mut out = t.clone();
        for leg in (0..sizes.len()).rev() {
            for _ in 1..sizes[leg] {
                out = hp.split_leg(&out, leg, |x| self.coproduct(x));
            }
        }
        out
    }
}

impl HopfView for Env {
    fn env(&self) -> &Env {
        self
    }

    fn coproduct(&self, xi: &HopfElement) -> TensorElement {
        self.hopf.coproduct(xi)
    }

    fn antipode(&self, xi: &HopfElement) -> HopfElement {
        self.hopf.antipode(xi)
    }

    fn iterated_coproduct(&self, xi: &HopfElement, k: usize) -> TensorElement {
        cached_iterated(&self.deltas, &self.hopf, xi, k, |x| self.hopf.coproduct(x))
    }
}

/// Iterated coproduct with a per-word cache.
pub(crate) fn cached_iterated(
    cache: &Mutex<HashMap<(usize, Word), Arc<TensorElement>>>,
    hp: &Hopf,
    xi: &HopfElement,
    k: usize,
    delta: impl Fn(&HopfElement) -> TensorElement,
) -> TensorElement {
    let mut out = TensorElement::zero(k);
    for (w, c) in &xi.terms {
        let hit = cache.lock().unwrap().get(&(k, w.clone())).cloned();
        let t = match hit {
            Some(t) => t,
            None => {
                let mut t = hp.as_tensor(&hp.word(w));
                for _ in 1..k {
                    t = hp.split_leg(&t, 0, &delta);
                }
                let t = Arc::new(t);
                cache.lock().unwrap().insert((k, w.clone()), t.clone());
                t
            }
        };
        out = out.add(&t.scale(c));
    }
    out
}

/// Sparse matrix of differential operators, `(target labels, source labels) → D`.
pub type OpMatrixData = BTreeMap<(Vec<u16>, Vec<u16>), DiffOp>;

impl std::fmt::Debug for Env {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Env").field("n", &self.n).field("hopf", &self.hopf).finish()
    }
}

impl Env {
    pub fn new(hopf: Arc<Hopf>, real: Arc<Realization>) -> Self {
        let n = real.dim();
        let forms = Arc::new(forms_atom(&hopf, &real));
        Env {
            hopf,
            real,
            n,
            forms,
            word_mats: Mutex::new(HashMap::new()),
            key_acts: Mutex::new(HashMap::new()),
            deltas: Mutex::new(HashMap::new()),
        }
    }

    pub fn order(&self) -> usize {
        self.hopf.ctx().order
    }

    pub fn one(&self) -> DeformationSeries {
        self.hopf.ctx().one()
    }

    pub fn omega(&self) -> Module {
        Module::of(&[&self.forms])
    }

    /// Operator matrix of a generator on a module: the atoms' action
    /// matrices plus `X_g` on the coefficient.
    pub fn gen_matrix(&self, m: &Module, g: usize) -> OpMatrixData {
        let n = self.n;
        let mut out: OpMatrixData = BTreeMap::new();
        let field = {
            let mut d = DiffOp::zero();
            for i in 0..n {
                let c = &self.real.field(g)[i];
                if !c.is_zero() {
                    let mut alpha = vec![0; n];
                    alpha[i] = 1;
                    d.terms.insert(alpha, c.clone());
                }
            }
            d
        };
        for l in m.labels() {
            if !field.is_zero() {
                out.entry((l.clone(), l.clone())).or_default().add_assign(&field);
            }
            for (i, atom) in m.atoms.iter().enumerate() {
                for ((t, s), p) in &atom.action[g] {
                    if *s == l[i] {
                        let mut tl = l.clone();
                        tl[i] = *t;
                        out.entry((tl, l.clone())).or_default().add_assign(&DiffOp::mult(p.clone(), n));
                    }
                }
            }
        }
        out.retain(|_, d| !d.is_zero());
        out
    }

    /// Operator matrix of a PBW word on a module.
    pub fn word_matrix(&self, m: &Module, w: &[u8]) -> Arc<OpMatrixData> {
        let key = (m.ids(), w.to_vec());
        if let Some(hit) = self.word_mats.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let mat = if w.is_empty() {
            let mut id = BTreeMap::new();
            for l in m.labels() {
                id.insert((l.clone(), l), DiffOp::identity(self.n, self.order()));
            }
            id
        } else {
            let first = self.gen_matrix(m, w[0] as usize);
            let rest = self.word_matrix(m, &w[1..]);
            compose_data(&first, &rest)
        };
        let mat = Arc::new(mat);
        self.word_mats.lock().unwrap().insert(key, mat.clone());
        mat
    }

    /// `w ▷ (e_L x^e)` in a single module.
    pub fn act_word_key(&self, m: &Module, w: &[u8], key: &Key) -> Arc<Elem> {
        let ck = (m.ids(), w.to_vec(), key.clone());
        if let Some(hit) = self.key_acts.lock().unwrap().get(&ck) {
            return hit.clone();
        }
        let mat = self.word_matrix(m, w);
        let mono = Poly::monomial(key.exps.clone(), self.one());
        let mut out = Elem::zero();
        for ((t, s), d) in mat.iter() {
            if *s == key.labels {
                out.add_assign(&Elem::from_poly(t, &d.apply(&mono)));
            }
        }
        let out = Arc::new(out);
        self.key_acts.lock().unwrap().insert(ck, out.clone());
        out
    }

    /// `ξ ▷ v` in a single module.
    pub fn act(&self, m: &Module, xi: &HopfElement, v: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (k, c) in &v.terms {
            for (w, d) in &xi.terms {
                out.add_scaled(&self.act_word_key(m, w, k), &c.mul_ref(d));
            }
        }
        out
    }

    /// Leg `i` of `t` acts on block `i` of the space.
    pub fn act_blocks(&self, space: &Space, t: &TensorElement, v: &Elem) -> Elem {
        assert_eq!(t.arity, space.arity(), "tensor arity must match the number of blocks");
        let n = self.n;
        let mut out = Elem::zero();
        for (k, c) in &v.terms {
            let subkeys: Vec<Key> = (0..space.arity())
                .map(|i| {
                    let (lr, er) = space.block_ranges(i, n);
                    Key { labels: k.labels[lr].to_vec(), exps: k.exps[er].to_vec() }
                })
                .collect();
            for (ws, d) in &t.terms {
                let coef = c.mul_ref(d);
                let mut acc: Vec<(Key, DeformationSeries)> =
                    vec![(Key { labels: Vec::new(), exps: Vec::new() }, coef)];
                for (i, w) in ws.iter().enumerate() {
                    let img = self.act_word_key(&space.blocks[i], w, &subkeys[i]);
                    let mut next = Vec::with_capacity(acc.len() * img.terms.len());
                    for (pk, pc) in &acc {
                        for (ik, ic) in &img.terms {
                            let mut nk = pk.clone();
                            nk.labels.extend_from_slice(&ik.labels);
                            nk.exps.extend_from_slice(&ik.exps);
                            next.push((nk, pc.mul_ref(ic)));
                        }
                    }
                    acc = next;
                    if acc.is_empty() {
                        break;
                    }
                }
                for (nk, nc) in acc {
                    out.push(nk, nc);
                }
            }
        }
        out
    }

    /// Canonical projection onto the tensor product over `A`.
    pub fn pi(&self, _space: &Space, v: &Elem) -> Elem {
        let n = self.n;
        let mut out = Elem::zero();
        for (k, c) in &v.terms {
            let mut e = vec![0u16; n];
            for (j, x) in k.exps.iter().enumerate() {
                e[j % n] += x;
            }
            out.push(Key { labels: k.labels.clone(), exps: e }, c.clone());
        }
        out
    }

    /// Section of `pi` placing all coefficients in the last block.
    pub fn section(&self, space: &Space, v: &Elem) -> Elem {
        let n = self.n;
        let k = space.arity();
        let mut out = Elem::zero();
        for (key, c) in &v.terms {
            let mut e = vec![0u16; n * k];
            e[(k - 1) * n..].copy_from_slice(&key.exps);
            out.push(Key { labels: key.labels.clone(), exps: e }, c.clone());
        }
        out
    }

    /// `v ⊗ w ⊗ ...` over the ground ring.
    pub fn tensor(&self, parts: &[&Elem]) -> Elem {
        let mut acc = Elem::basis(Key { labels: Vec::new(), exps: Vec::new() }, self.order());
        for p in parts {
            let mut next = Elem::zero();
            for (ak, ac) in &acc.terms {
                for (pk, pc) in &p.terms {
                    let mut k = ak.clone();
                    k.labels.extend_from_slice(&pk.labels);
                    k.exps.extend_from_slice(&pk.exps);
                    next.push(k, ac.mul_ref(pc));
                }
            }
            acc = next;
        }
        acc
    }

    /// Right multiplication `v · f` in a single module.
    pub fn right_mul(&self, v: &Elem, f: &Poly) -> Elem {
        let mut out = Elem::zero();
        for (k, c) in &v.terms {
            for (m, d) in &f.terms {
                let e: Mono = k.exps.iter().zip(m).map(|(a, b)| a + b).collect();
                out.push(Key { labels: k.labels.clone(), exps: e }, c.mul_ref(d));
            }
        }
        out
    }

    /// Covariance `ξ ▷ (v · f) = (ξ₁ ▷ v)(ξ₂ ▷ f)` on sample keys and monomials.
    pub fn covariance(&self, m: &Module, xis: &[HopfElement], keys: &[Key], fs: &[Poly]) -> Outcome {
        let mut out = Outcome::ok();
        for xi in xis {
            let d = self.hopf.coproduct(xi);
            for k in keys {
                let v = Elem::basis(k.clone(), self.order());
                for f in fs {
                    let lhs = self.act(m, xi, &self.right_mul(&v, f));
                    let mut rhs = Elem::zero();
                    for (ws, c) in &d.terms {
                        let a = self.act_word_key(m, &ws[0], k);
                        let b = self.real.word_op(&ws[1]).apply(f);
                        rhs.add_scaled(&self.right_mul(&a, &b), c);
                    }
                    out = out.merge(lhs.compare(&rhs));
                }
            }
        }
        out
    }

    /// Keys of a single module: all labels times monomials up to degree `d`.
    pub fn module_keys(&self, m: &Module, d: usize) -> Vec<Key> {
        Space::single(m.clone()).basis_keys(self.n, d)
    }

    pub fn sample_polys(&self, d: usize) -> Vec<Poly> {
        monomials(self.n, d).into_iter().map(|e| Poly::monomial(e, self.one())).collect()
    }
}

/// `a ∘ b` for sparse operator matrices.
pub fn compose_data(a: &OpMatrixData, b: &OpMatrixData) -> OpMatrixData {
    let mut by_row: HashMap<&Vec<u16>, Vec<(&Vec<u16>, &DiffOp)>> = HashMap::new();
    for ((t, s), d) in b {
        by_row.entry(t).or_default().push((s, d));
    }
    let mut out: OpMatrixData = BTreeMap::new();
    for ((t, mid), d1) in a {
        if let Some(row) = by_row.get(mid) {
            for (s, d2) in row {
                let c = d1.compose(d2);
                if !c.is_zero() {
                    out.entry((t.clone(), (*s).clone())).or_default().add_assign(&c);
                }
            }
        }
    }
    out.retain(|_, d| !d.is_zero());
    out
}

#[cfg(test)]
mod tests;
