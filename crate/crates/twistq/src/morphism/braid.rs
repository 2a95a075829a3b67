//! The braiding `τ_R`, its inverse, and the `R`-tensor product of maps.

use std::sync::Arc;

use super::{a_level, adjoint_map, Map};
use crate::bimod::{Elem, Env, HopfView, Key, Module, Space, World};
use crate::hopf::{HopfElement, TensorElement};
use crate::outcome::Outcome;

/// Moves the first `p` blocks of a key behind the rest.
fn rotate_key(space: &Space, k: &Key, p: usize, n: usize) -> Key {
    let l0: usize = space.blocks[..p].iter().map(|b| b.len()).sum();
    let mut labels = k.labels[l0..].to_vec();
    labels.extend_from_slice(&k.labels[..l0]);
    let mut exps = k.exps[p * n..].to_vec();
    exps.extend_from_slice(&k.exps[..p * n]);
    Key { labels, exps }
}

impl World {
    fn swap_with(self: &Arc<Self>, left: &[Module], right: &[Module], t: TensorElement) -> Map {
        let mut src = left.to_vec();
        src.extend(right.iter().cloned());
        let mut tgt = right.to_vec();
        tgt.extend(left.iter().cloned());
        let (src, tgt) = (Space { blocks: src }, Space { blocks: tgt });
        let t = self.expand_legs(&t, &[right.len(), left.len()]);
        let (w, s2, t2, p) = (self.clone(), src.clone(), tgt.clone(), left.len());
        Map::new(src, tgt, move |k| {
            let rk = rotate_key(&s2, k, p, w.env.n);
            w.env.act_blocks(&t2, &t, &Elem::basis(rk, w.order()))
        })
    }

    /// `τ(w ⊗ v) = R̄^α ▷ v ⊗ R̄_α ▷ w`, from `left ⊗ right` to `right ⊗ left`.
    pub fn braiding(self: &Arc<Self>, left: &[Module], right: &[Module]) -> Map {
        self.swap_with(left, right, self.r_bar().clone())
    }

    /// `τ⁻¹(x ⊗ y) = R_α ▷ y ⊗ R^α ▷ x`, from `left ⊗ right` to `right ⊗ left`.
    pub fn braiding_inv(self: &Arc<Self>, left: &[Module], right: &[Module]) -> Map {
        self.swap_with(left, right, self.r.r().flip())
    }

    /// `(P ⊗_R Q)(v ⊗ w) = P(R̄^α ▷ v) ⊗ (R̄_α ▶ Q)(w)` with a given `R̄`.
    pub fn tensor_r_with(self: &Arc<Self>, p: &Map, q: &Map, r_bar: &TensorElement) -> Map {
        let hp = &self.env.hopf;
        let mut parts = Vec::new();
        for (ws, c) in &r_bar.terms {
            parts.push((hp.word(&ws[0]), adjoint_map(self, &hp.word(&ws[1]), q), c.clone()));
        }
        let mut src = p.src.blocks.clone();
        src.extend(q.src.blocks.iter().cloned());
        let mut tgt = p.tgt.blocks.clone();
        tgt.extend(q.tgt.blocks.iter().cloned());
        let (src, tgt) = (Space { blocks: src }, Space { blocks: tgt });
        let (w, p2, src2, k1) = (self.clone(), p.clone(), src.clone(), p.src.arity());
        Map::new(src, tgt, move |k| {
            let n = w.env.n;
            let (_, left, right) = super::split_key(&src2, k, 0, k1, n);
            let lv = Elem::basis(left, w.order());
            let mut out = Elem::zero();
            for (a, qa, c) in &parts {
                let pv = p2.apply(&w.act_space(&p2.src, a, &lv));
                let qw = qa.on_key(&right);
                out.add_scaled(&w.env.tensor(&[&pv, &qw]), c);
            }
            out
        })
    }

    pub fn tensor_r(self: &Arc<Self>, p: &Map, q: &Map) -> Map {
        let rb = self.r_bar().clone();
        self.tensor_r_with(p, q, &rb)
    }

    /// `⊗_R` of single-module maps, descended to the tensor product over `A`.
    pub fn tensor_r_a(self: &Arc<Self>, p: &Map, q: &Map) -> Map {
        a_level(self, &self.tensor_r(p, q))
    }
}

/// Outcomes of the `⊗_R` laws on one set of samples.
#[derive(Clone, Debug, Default)]
pub struct TensorLaws {
    /// `ξ ▶ (P ⊗_R Q) = (ξ₁ ▶ P) ⊗_R (ξ₂ ▶ Q)`.
    pub equivariance: Outcome,
    /// `(P ⊗_R Q) ⊗_R Z = P ⊗_R (Q ⊗_R Z)`.
    pub associativity: Outcome,
    /// `(P̃ ⊗_R Q̃) ∘ (P ⊗_R Q) = (P̃ ∘ (R̄^α ▶ P)) ⊗_R ((R̄_α ▶ Q̃) ∘ Q)`.
    pub composition: Outcome,
    /// `(P ⊗_R id) ∘ (id ⊗_R Q) = P ⊗_R Q`.
    pub factorization: Outcome,
}

/// Checks the `⊗_R` laws. `maps` holds `P, Q, Z, P̃, Q̃` on single
/// modules with `P̃ ∘ P` and `Q̃ ∘ Q` composable. With `flip_fault` the
/// right side of the composition law uses the legs of `R̄` swapped.
pub fn tensor_r_laws(
    world: &Arc<World>,
    maps: [&Map; 5],
    xis: &[HopfElement],
    keys2: &[Key],
    keys3: &[Key],
    flip_fault: bool,
) -> TensorLaws {
    let [p, q, z, pt, qt] = maps;
    let env: &Arc<Env> = &world.env;
    let hp = &env.hopf;
    let o = world.order();
    let pq = world.tensor_r(p, q);

    let mut equivariance = Outcome::ok();
    for xi in xis {
        let lhs = adjoint_map(world, xi, &pq);
        let mut parts = Vec::new();
        for (ws, c) in &world.coproduct(xi).terms {
            let a = adjoint_map(world, &hp.word(&ws[0]), p);
            let b = adjoint_map(world, &hp.word(&ws[1]), q);
            parts.push((c.clone(), world.tensor_r(&a, &b)));
        }
        let rhs = Map::combine(&pq.src, &pq.tgt, parts);
        equivariance = equivariance.merge(lhs.compare(&rhs, keys2, o));
    }

    let left = world.tensor_r(&pq, z);
    let right = world.tensor_r(p, &world.tensor_r(q, z));
    let associativity = left.compare(&right, keys3, o);

    let lhs = world.tensor_r(pt, qt).compose(&pq);
    let rb = if flip_fault { world.r_bar().flip() } else { world.r_bar().clone() };
    let mut parts = Vec::new();
    for (ws, c) in &rb.terms {
        let a = pt.compose(&adjoint_map(world, &hp.word(&ws[0]), p));
        let b = adjoint_map(world, &hp.word(&ws[1]), qt).compose(q);
        parts.push((c.clone(), world.tensor_r(&a, &b)));
    }
    let rhs = Map::combine(&pq.src, &lhs.tgt, parts);
    let composition = lhs.compare(&rhs, keys2, o);

    let fact = world.tensor_r(p, &Map::identity(&q.tgt, o)).compose(&world.tensor_r(&Map::identity(&p.src, o), q));
    let factorization = fact.compare(&pq, keys2, o);

    TensorLaws { equivariance, associativity, composition, factorization }
}

/// Braid relations, `τ∘τ⁻¹ = id` and equivariance of the braiding.
#[derive(Clone, Debug, Default)]
pub struct BraidReport {
    pub inverse: Outcome,
    pub equivariance: Outcome,
    /// Both hexagon-type relations for `τ⁻¹` on ground-ring triples.
    pub relations: Outcome,
    /// The same relations after descent to the tensor product over `A`.
    pub relations_a: Outcome,
}

/// Runs the braid checks on `X ⊗ Y ⊗ Z`.
pub fn braid_relations(
    world: &Arc<World>,
    mods: [&Module; 3],
    keys2: &[Key],
    keys3: &[Key],
    keys_a: &[Key],
    xis: &[HopfElement],
) -> BraidReport {
    let [x, y, z] = mods;
    let env = &world.env;
    let o = world.order();
    let c = |m: &Module| vec![m.clone()];

    let tau_inv = world.braiding_inv(&c(x), &c(y));
    let tau = world.braiding(&c(y), &c(x));
    let inverse = tau.compose(&tau_inv).compare(&Map::identity(&tau_inv.src, o), keys2, o);

    let mut equivariance = Outcome::ok();
    for xi in xis {
        for k in keys2 {
            let v = Elem::basis(k.clone(), o);
            let lhs = tau_inv.apply(&world.act_space(&tau_inv.src, xi, &v));
            let rhs = world.act_space(&tau_inv.tgt, xi, &tau_inv.apply(&v));
            equivariance = equivariance.merge(lhs.compare(&rhs));
        }
    }

    let sp3 = Space::of(&[x, y, z]);
    // τ⁻¹_{X,Y⊗Z} = (id ⊗ τ⁻¹_{X,Z})(τ⁻¹_{X,Y} ⊗ id)
    let lhs = world.braiding_inv(&c(x), &[y.clone(), z.clone()]);
    let step1 = Map::on_blocks(env, &sp3, 0, &world.braiding_inv(&c(x), &c(y)));
    let step2 = Map::on_blocks(env, &step1.tgt, 1, &world.braiding_inv(&c(x), &c(z)));
    let mut relations = lhs.compare(&step2.compose(&step1), keys3, o);
    // τ⁻¹_{X⊗Y,Z} = (τ⁻¹_{X,Z} ⊗ id)(id ⊗ τ⁻¹_{Y,Z})
    let lhs = world.braiding_inv(&[x.clone(), y.clone()], &c(z));
    let step1 = Map::on_blocks(env, &sp3, 1, &world.braiding_inv(&c(y), &c(z)));
    let step2 = Map::on_blocks(env, &step1.tgt, 0, &world.braiding_inv(&c(x), &c(z)));
    relations = relations.merge(lhs.compare(&step2.compose(&step1), keys3, o));

    let ta = |l: &Module, r: &Module| a_level(world, &world.braiding_inv(&c(l), &c(r)));
    let yz = y.tensor(z);
    let xy = x.tensor(y);
    let lhs = ta(x, &yz);
    let s1 = a_level(world, &Map::on_blocks(env, &Space::of(&[&xy, z]), 0, &ta(x, y)));
    let s2 = a_level(world, &Map::on_blocks(env, &Space::of(&[y, &x.tensor(z)]), 1, &ta(x, z)));
    let mut relations_a = lhs.compare(&s2.compose(&s1), keys_a, o);
    let lhs = ta(&xy, z);
    let s1 = a_level(world, &Map::on_blocks(env, &Space::of(&[x, &yz]), 1, &ta(y, z)));
    let s2 = a_level(world, &Map::on_blocks(env, &Space::of(&[&x.tensor(z), y]), 0, &ta(x, z)));
    relations_a = relations_a.merge(lhs.compare(&s2.compose(&s1), keys_a, o));

    BraidReport { inverse, equivariance, relations, relations_a }
}
