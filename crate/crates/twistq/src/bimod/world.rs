//! Undeformed and twist-deformed worlds over a common environment.
//!
//! A deformed tensor product `V⋆ ⊗_{A⋆} W⋆` is stored through the
//! isomorphism `φ = π ∘ F⁻¹▷` as an element of the ordinary `V ⊗_A W`.
//! [`World::join`] is that map on ground-ring tensors and [`World::split`]
//! is a right inverse (`F▷` after the canonical section). In the undeformed
//! world both reduce to `π` and the section. Because `φ` is `H`-equivariant
//! and the algebras `H` and `H^F` coincide, single-module actions are the
//! same in every world; only coproducts, antipodes and `R` differ.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::One;

use super::{cached_iterated, Elem, Env, HopfView, Key, Module, Space};
use crate::funcalg::Poly;
use crate::hopf::{HopfElement, RMatrix, TensorElement, Twist, Word};
use crate::outcome::Outcome;
use crate::series::Scalar;

pub struct World {
    pub env: Arc<Env>,
    pub twist: Option<Arc<Twist>>,
    pub r: RMatrix,
    pub label: String,
    deltas: Mutex<HashMap<(usize, Word), Arc<TensorElement>>>,
}

impl std::fmt::Debug for World {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("World").field("label", &self.label).finish()
    }
}

impl HopfView for World {
    fn env(&self) -> &Env {
        &self.env
    }

    fn coproduct(&self, xi: &HopfElement) -> TensorElement {
        match &self.twist {
            Some(tw) => tw.coproduct(xi),
            None => self.env.hopf.coproduct(xi),
        }
    }

    fn antipode(&self, xi: &HopfElement) -> HopfElement {
        match &self.twist {
            Some(tw) => tw.antipode(xi),
            None => self.env.hopf.antipode(xi),
        }
    }

    fn iterated_coproduct(&self, xi: &HopfElement, k: usize) -> TensorElement {
        match &self.twist {
            Some(tw) => cached_iterated(&self.deltas, &self.env.hopf, xi, k, |x| tw.coproduct(x)),
            None => self.env.iterated_coproduct(xi, k),
        }
    }
}

impl World {
    pub fn new(env: Arc<Env>, twist: Option<Arc<Twist>>, r: RMatrix, label: &str) -> Self {
        World { env, twist, r, label: label.into(), deltas: Mutex::new(HashMap::new()) }
    }

    /// `(H, R)` acting on the undeformed objects.
    pub fn undeformed(env: Arc<Env>, r: RMatrix) -> Self {
        Self::new(env, None, r, "undeformed")
    }

    /// `(H^F, R^F)` acting on the twisted objects.
    pub fn deformed(env: Arc<Env>, twist: Arc<Twist>, base: &RMatrix) -> Self {
        let r = RMatrix::twisted(&twist, base);
        Self::new(env, Some(twist), r, "deformed")
    }

    pub fn is_deformed(&self) -> bool {
        self.twist.is_some()
    }

    pub fn order(&self) -> usize {
        self.env.order()
    }

    /// `R̄^α ⊗ R̄_α`.
    pub fn r_bar(&self) -> &TensorElement {
        self.r.r_inv()
    }

    /// Action of an arity-k tensor `t ∈ H^{⊗k}` leg by leg.
    pub fn act_tensor(&self, space: &Space, t: &TensorElement, v: &Elem) -> Elem {
        self.env.act_blocks(space, t, v)
    }

    /// `π ∘ F_k⁻¹▷`: ground-ring tensor to the representative over `A`.
    pub fn join(&self, space: &Space, v: &Elem) -> Elem {
        match &self.twist {
            Some(tw) if space.arity() > 1 => {
                let (_, inv) = tw.iterated(space.arity());
                self.env.pi(space, &self.env.act_blocks(space, &inv, v))
            }
            _ => self.env.pi(space, v),
        }
    }

    /// `F_k▷ ∘ section`, a right inverse of [`World::join`].
    pub fn split(&self, space: &Space, v: &Elem) -> Elem {
        let s = self.env.section(space, v);
        match &self.twist {
            Some(tw) if space.arity() > 1 => {
                let (fwd, _) = tw.iterated(space.arity());
                self.env.act_blocks(space, &fwd, &s)
            }
            _ => s,
        }
    }

    /// `a ⋆ v`.
    pub fn left_act(&self, a: &Poly, m: &Module, v: &Elem) -> Elem {
        let sp = Space::of(&[&Module::algebra(), m]);
        self.join(&sp, &self.env.tensor(&[&Elem::from_poly(&[], a), v]))
    }

    /// `v ⋆ a`.
    pub fn right_act(&self, m: &Module, v: &Elem, a: &Poly) -> Elem {
        let sp = Space::of(&[m, &Module::algebra()]);
        self.join(&sp, &self.env.tensor(&[v, &Elem::from_poly(&[], a)]))
    }

    pub fn star(&self, f: &Poly, g: &Poly) -> Poly {
        self.env.real.star(self.twist.as_deref(), f, g)
    }

    /// `v ⊗_{A⋆} w` as a representative over `A`.
    pub fn tensor_over(&self, m1: &Module, v: &Elem, m2: &Module, w: &Elem) -> Elem {
        self.join(&Space::of(&[m1, m2]), &self.env.tensor(&[v, w]))
    }

    /// `θ ∧⋆ θ'` for elements of `Ω`.
    pub fn wedge(&self, a: &Elem, b: &Elem) -> Elem {
        let om = self.env.omega();
        let joined = self.tensor_over(&om, a, &om, b);
        self.env.wedge_at(&joined, 0)
    }

    fn basis(&self, k: &Key) -> Elem {
        Elem::basis(k.clone(), self.order())
    }

    /// Bimodule axioms for the `⋆`-actions on a module.
    pub fn bimodule_axioms(&self, m: &Module, keys: &[Key], fs: &[Poly]) -> Outcome {
        let mut out = Outcome::ok();
        for k in keys {
            let v = self.basis(k);
            for a in fs {
                for b in fs {
                    let ab = self.star(a, b);
                    out = out.merge(self.left_act(&ab, m, &v).compare(&self.left_act(a, m, &self.left_act(b, m, &v))));
                    out = out
                        .merge(self.right_act(m, &v, &ab).compare(&self.right_act(m, &self.right_act(m, &v, a), b)));
                    out = out.merge(
                        self.right_act(m, &self.left_act(a, m, &v), b)
                            .compare(&self.left_act(a, m, &self.right_act(m, &v, b))),
                    );
                }
            }
        }
        out
    }

    /// `ξ ▷ (a ⋆ v) = (ξ_{1W} ▷ a) ⋆ (ξ_{2W} ▷ v)` and the right-handed version.
    pub fn action_covariance(&self, m: &Module, xis: &[HopfElement], keys: &[Key], fs: &[Poly]) -> Outcome {
        let env = &self.env;
        let mut out = Outcome::ok();
        for xi in xis {
            let d = self.coproduct(xi);
            for k in keys {
                let v = self.basis(k);
                for a in fs {
                    let lhs = env.act(m, xi, &self.left_act(a, m, &v));
                    let mut rhs = Elem::zero();
                    for (ws, c) in &d.terms {
                        let fa = env.real.word_op(&ws[0]).apply(a);
                        let gv = env.act_word_key(m, &ws[1], k);
                        rhs.add_scaled(&self.left_act(&fa, m, &gv), c);
                    }
                    out = out.merge(lhs.compare(&rhs));
                    let lhs = env.act(m, xi, &self.right_act(m, &v, a));
                    let mut rhs = Elem::zero();
                    for (ws, c) in &d.terms {
                        let gv = env.act_word_key(m, &ws[0], k);
                        let fa = env.real.word_op(&ws[1]).apply(a);
                        rhs.add_scaled(&self.right_act(m, &gv, &fa), c);
                    }
                    out = out.merge(lhs.compare(&rhs));
                }
            }
        }
        out
    }

    /// `v ⋆ a = (R̄^α ▷ a) ⋆ (R̄_α ▷ v)`.
    pub fn quasi_commutative_module(&self, m: &Module, keys: &[Key], fs: &[Poly]) -> Outcome {
        let env = &self.env;
        let mut out = Outcome::ok();
        for k in keys {
            let v = self.basis(k);
            for a in fs {
                let lhs = self.right_act(m, &v, a);
                let mut rhs = Elem::zero();
                for (ws, c) in &self.r_bar().terms {
                    let ra = env.real.word_op(&ws[0]).apply(a);
                    let rv = env.act_word_key(m, &ws[1], k);
                    rhs.add_scaled(&self.left_act(&ra, m, &rv), c);
                }
                out = out.merge(lhs.compare(&rhs));
            }
        }
        out
    }

    /// `θ ∧⋆ θ' = (−1)^{|θ||θ'|} (R̄^α ▷ θ') ∧⋆ (R̄_α ▷ θ)`.
    pub fn graded_quasi_commutative(&self, keys: &[Key]) -> Outcome {
        let env = &self.env;
        let om = env.omega();
        let mut out = Outcome::ok();
        for k1 in keys {
            for k2 in keys {
                let lhs = self.wedge(&self.basis(k1), &self.basis(k2));
                let p = super::mask_degree(k1.labels[0]) * super::mask_degree(k2.labels[0]);
                let sign = if p.is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
                let mut rhs = Elem::zero();
                for (ws, c) in &self.r_bar().terms {
                    let a = env.act_word_key(&om, &ws[0], k2);
                    let b = env.act_word_key(&om, &ws[1], k1);
                    rhs.add_scaled(&self.wedge(&a, &b), c);
                }
                out = out.merge(lhs.compare(&rhs.scale_scalar(&sign)));
            }
        }
        out
    }

    /// `d(θ ∧⋆ θ') = dθ ∧⋆ θ' + (−1)^{|θ|} θ ∧⋆ dθ'`.
    pub fn star_leibniz(&self, keys: &[Key]) -> Outcome {
        let env = &self.env;
        let mut out = Outcome::ok();
        for k1 in keys {
            for k2 in keys {
                let (a, b) = (self.basis(k1), self.basis(k2));
                let lhs = env.d(&self.wedge(&a, &b));
                let sign = if super::mask_degree(k1.labels[0]).is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
                let rhs = self.wedge(&env.d(&a), &b).add(&self.wedge(&a, &env.d(&b)).scale_scalar(&sign));
                out = out.merge(lhs.compare(&rhs));
            }
        }
        out
    }

    /// `φ⁻¹ ∘ φ = id` on ground-ring tensors, `join ∘ split = id` over `A`,
    /// and `φ(ξ ▷_F x) = ξ ▷ φ(x)`.
    pub fn phi_checks(&self, space: &Space, keys: &[Key], xis: &[HopfElement]) -> (Outcome, Outcome) {
        let env = &self.env;
        let Some(tw) = &self.twist else {
            return (Outcome::ok(), Outcome::ok());
        };
        let k = space.arity();
        let (fwd, inv) = tw.iterated(k);
        let flat = Space::single(space.flatten());
        let mut invert = Outcome::ok();
        let mut equi = Outcome::ok();
        for key in keys {
            let x = self.basis(key);
            let y = env.act_blocks(space, &inv, &x);
            invert = invert.merge(env.act_blocks(space, &fwd, &y).compare(&x));
            let a = env.pi(space, &x);
            invert = invert.merge(self.join(space, &self.split(space, &a)).compare(&a));
            for xi in xis {
                let lhs = self.join(space, &self.act_space(space, xi, &x));
                let rhs = env.act_space(&flat, xi, &self.join(space, &x));
                equi = equi.merge(lhs.compare(&rhs));
            }
        }
        (invert, equi)
    }

    /// `φ_{V⊗W,Z} ∘ (φ_{V,W} ⊗ id) = φ_{V,W⊗Z} ∘ (id ⊗ φ_{W,Z})` on three
    /// blocks, with `F⁻¹` optionally replaced by a corrupted copy.
    pub fn coherence(&self, space: &Space, keys: &[Key], f_inv: Option<&TensorElement>) -> Outcome {
        let env = &self.env;
        let hp = &env.hopf;
        let Some(tw) = &self.twist else {
            return Outcome::ok();
        };
        assert_eq!(space.arity(), 3);
        let g = f_inv.unwrap_or(tw.f_inv());
        let left = hp.tmul(&hp.coproduct_leg(g, 0), &g.embed(3, &[0, 1]));
        let right = hp.tmul(&hp.coproduct_leg(g, 1), &g.embed(3, &[1, 2]));
        let mut out = Outcome::ok();
        for k in keys {
            let x = self.basis(k);
            let l = env.act_blocks(space, &left, &x);
            let r = env.act_blocks(space, &right, &x);
            out = out.merge(env.pi(space, &l).compare(&env.pi(space, &r)));
        }
        out
    }
}
