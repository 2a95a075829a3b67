//! The de Rham calculus on affine n-space: basis `dx^I` indexed by
//! bitmasks, the Lie-derivative action, `∧` and `d`, all with coefficients
//! on the right.

use std::collections::BTreeMap;

use num_traits::One;

use super::{Atom, AtomKind, Elem, Env, Key, OpMatrixData};
use crate::funcalg::{DiffOp, Poly, Realization};
use crate::hopf::Hopf;
use crate::outcome::Outcome;
use crate::series::Scalar;

pub fn mask_degree(mask: u16) -> usize {
    mask.count_ones() as usize
}

fn indices(mask: u16) -> Vec<usize> {
    (0..16).filter(|i| mask & (1 << i) != 0).collect()
}

/// `dx^{s_1} ∧ ... ∧ dx^{s_p}` as `sign · dx^I`, or `None` on a repeat.
fn sort_wedge(seq: &[usize]) -> Option<(u16, i64)> {
    let mut mask = 0u16;
    for &i in seq {
        if mask & (1 << i) != 0 {
            return None;
        }
        mask |= 1 << i;
    }
    let mut inv = 0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inv += 1;
            }
        }
    }
    Some((mask, if inv % 2 == 0 { 1 } else { -1 }))
}

/// `dx^I ∧ dx^J`.
pub fn wedge_mask(i: u16, j: u16) -> Option<(u16, i64)> {
    let mut seq = indices(i);
    seq.extend(indices(j));
    sort_wedge(&seq)
}

pub fn form_label(mask: u16) -> String {
    if mask == 0 {
        "1".into()
    } else {
        indices(mask).iter().map(|i| format!("dx{}", i + 1)).collect::<Vec<_>>().join("∧")
    }
}

/// `Ω^•` with `g ▷ dx^i = Σ_j dx^j ∂_j X_g^i`, extended as a derivation of `∧`.
pub fn forms_atom(hopf: &Hopf, real: &Realization) -> Atom {
    let n = real.dim();
    let size = 1u16 << n;
    let labels = (0..size).map(form_label).collect();
    let degrees = (0..size).map(mask_degree).collect();
    let mut action = Vec::new();
    for g in 0..hopf.lie().dim() {
        let mut m: BTreeMap<(u16, u16), Poly> = BTreeMap::new();
        for src in 0..size {
            let idx = indices(src);
            for (pos, &i) in idx.iter().enumerate() {
                for j in 0..n {
                    let c = real.field(g)[i].deriv(j);
                    if c.is_zero() {
                        continue;
                    }
                    let mut seq = idx.clone();
                    seq[pos] = j;
                    if let Some((t, sign)) = sort_wedge(&seq) {
                        let e = m.entry((t, src)).or_default();
                        e.add_assign(&c.scale_scalar(&Scalar::from_integer(sign.into())));
                    }
                }
            }
        }
        m.retain(|_, p| !p.is_zero());
        action.push(m);
    }
    Atom::raw("Ω", AtomKind::Forms, labels, degrees, action)
}

/// `d(dx^I f) = (−1)^{|I|} dx^I ∧ df` on a single-atom forms module.
pub fn d_matrix(env: &Env) -> OpMatrixData {
    let n = env.n;
    let mut out: OpMatrixData = BTreeMap::new();
    for src in 0..(1u16 << n) {
        for i in 0..n {
            if let Some((t, sign)) = wedge_mask(src, 1 << i) {
                let s = if mask_degree(src).is_multiple_of(2) { sign } else { -sign };
                let mut alpha = vec![0; n];
                alpha[i] = 1;
                let d = DiffOp::partial(alpha, env.order()).scale_scalar(&Scalar::from_integer(s.into()));
                out.entry((vec![t], vec![src])).or_default().add_assign(&d);
            }
        }
    }
    out
}

impl Env {
    /// Applies `d` to an element of `Ω`.
    pub fn d(&self, theta: &Elem) -> Elem {
        let mat = d_matrix(self);
        apply_data(&mat, theta, self.one().order())
    }

    /// `df` as an element of `Ω`.
    pub fn d_fun(&self, f: &Poly) -> Elem {
        self.d(&Elem::from_poly(&[0], f))
    }

    /// Wedge of atoms `i` and `i + 1` of a module, both forms atoms.
    pub fn wedge_at(&self, v: &Elem, i: usize) -> Elem {
        let mut out = Elem::zero();
        for (k, c) in &v.terms {
            if let Some((m, sign)) = wedge_mask(k.labels[i], k.labels[i + 1]) {
                let mut labels = k.labels.clone();
                labels[i] = m;
                labels.remove(i + 1);
                out.push(Key { labels, exps: k.exps.clone() }, c.scale(&Scalar::from_integer(sign.into())));
            }
        }
        out
    }

    /// `θ ∧ θ'` for forms given as elements of `Ω`.
    pub fn wedge(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                if let Some((m, sign)) = wedge_mask(ka.labels[0], kb.labels[0]) {
                    let e = ka.exps.iter().zip(&kb.exps).map(|(x, y)| x + y).collect();
                    let c = ca.mul_ref(cb).scale(&Scalar::from_integer(sign.into()));
                    out.push(Key { labels: vec![m], exps: e }, c);
                }
            }
        }
        out
    }

    /// Forms samples `dx^I x^e` with `|I| ≤ max_deg`.
    pub fn form_keys(&self, max_form: usize, d: usize) -> Vec<Key> {
        self.module_keys(&self.omega(), d)
            .into_iter()
            .filter(|k| mask_degree(k.labels[0]) <= max_form)
            .collect()
    }

    /// `d∘d = 0`, graded Leibniz for `∧`, and `ξ ▷ dθ = d(ξ ▷ θ)`.
    pub fn check_calculus(&self, keys: &[Key], xis: &[crate::hopf::HopfElement]) -> (Outcome, Outcome, Outcome) {
        let om = self.omega();
        let mut dd = Outcome::ok();
        let mut leib = Outcome::ok();
        let mut equi = Outcome::ok();
        for k in keys {
            let t = Elem::basis(k.clone(), self.order());
            dd = dd.merge(self.d(&self.d(&t)).compare(&Elem::zero()));
            for xi in xis {
                equi = equi.merge(self.act(&om, xi, &self.d(&t)).compare(&self.d(&self.act(&om, xi, &t))));
            }
            for k2 in keys {
                let u = Elem::basis(k2.clone(), self.order());
                let p = mask_degree(k.labels[0]);
                let lhs = self.d(&self.wedge(&t, &u));
                let sign = if p.is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
                let rhs = self.wedge(&self.d(&t), &u).add(&self.wedge(&t, &self.d(&u)).scale_scalar(&sign));
                leib = leib.merge(lhs.compare(&rhs));
            }
        }
        (dd, leib, equi)
    }
}

/// Applies a sparse operator matrix to an element of its source module.
pub(crate) fn apply_data(mat: &OpMatrixData, v: &Elem, order: usize) -> Elem {
    let mut out = Elem::zero();
    for (k, c) in &v.terms {
        let mono = Poly::monomial(k.exps.clone(), crate::series::DeformationSeries::one(order));
        for ((t, s), d) in mat {
            if *s == k.labels {
                out.add_scaled(&Elem::from_poly(t, &d.apply(&mono)), c);
            }
        }
    }
    out
}

/// Parses a form literal such as `x1 dx2 + 1/2 h dx1∧dx2`.
pub fn parse_form(text: &str, n: usize, order: usize) -> crate::error::Result<Elem> {
    use crate::error::Error;
    use crate::series::DeformationSeries;
    let mut out = Elem::zero();
    for t in crate::funcalg::parse_terms(text, n)? {
        let mut seq = Vec::new();
        for tok in &t.extra {
            for piece in tok.split('∧').filter(|s| !s.is_empty()) {
                let i: usize = piece
                    .strip_prefix("dx")
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown factor `{piece}` in `{text}`")))?;
                if i == 0 || i > n {
                    return Err(Error::Parse(format!("`{piece}` outside dx1..dx{n}")));
                }
                seq.push(i - 1);
            }
        }
        if let Some((mask, sign)) = sort_wedge(&seq) {
            if t.hpow <= order {
                let c = DeformationSeries::monomial(order, t.hpow, t.coeff.clone() * Scalar::from_integer(sign.into()));
                out.push(Key { labels: vec![mask], exps: t.exps.clone() }, c);
            }
        }
    }
    Ok(out)
}
