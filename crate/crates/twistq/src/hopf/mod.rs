//! Universal enveloping algebras in PBW normal form over the truncated
//! series ring, with primitive coproduct, counit and antipode, twists and
//! R-matrices.
//!
//! Normal form: a word is a non-decreasing list of generator indices in
//! declaration order. Out-of-order neighbours are straightened by
//! `x_j x_i = x_i x_j + [x_j, x_i]`; the pair (inversions, length) strictly
//! decreases, so straightening terminates.

mod lie;
mod rmatrix;
mod twist;

pub use lie::LiePresentation;
pub use rmatrix::RMatrix;
pub use twist::{drop_order, Twist, TwistSpec};

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::outcome::Outcome;
use crate::series::{accumulate, Ctx, DeformationSeries, Scalar};

/// PBW word; generator indices in non-decreasing order once normalized.
pub type Word = Vec<u8>;

/// Element of `U(g)` with series coefficients, keyed by normal-form words.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HopfElement {
    pub terms: BTreeMap<Word, DeformationSeries>,
}

/// Element of the `k`-fold tensor power of `U(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub arity: usize,
    pub terms: BTreeMap<Vec<Word>, DeformationSeries>,
}

impl HopfElement {
    pub fn zero() -> Self {
        HopfElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            accumulate(&mut out.terms, w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&DeformationSeries::constant(self.order_hint(other), -Scalar::one())))
    }

    fn order_hint(&self, other: &Self) -> usize {
        self.terms
            .values()
            .chain(other.terms.values())
            .next()
            .map(|s| s.order())
            .unwrap_or(0)
    }

    pub fn scale(&self, s: &DeformationSeries) -> Self {
        let mut out = HopfElement::zero();
        for (w, c) in &self.terms {
            accumulate(&mut out.terms, w.clone(), c.mul_ref(s));
        }
        out
    }

    pub fn coeff(&self, w: &[u8]) -> Option<&DeformationSeries> {
        self.terms.get(w)
    }
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        TensorElement { arity, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity, "tensor arity mismatch");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            accumulate(&mut out.terms, w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity, "tensor arity mismatch");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            accumulate(&mut out.terms, w.clone(), c.neg_ref());
        }
        out
    }

    pub fn scale(&self, s: &DeformationSeries) -> Self {
        let mut out = TensorElement::zero(self.arity);
        for (w, c) in &self.terms {
            accumulate(&mut out.terms, w.clone(), c.mul_ref(s));
        }
        out
    }

    /// Permutes legs: leg `i` of the result is leg `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.arity);
        let mut out = TensorElement::zero(self.arity);
        for (ws, c) in &self.terms {
            let nw: Vec<Word> = perm.iter().map(|&p| ws[p].clone()).collect();
            accumulate(&mut out.terms, nw, c.clone());
        }
        out
    }

    /// Swaps the two legs of an arity-2 element (`T_21`).
    pub fn flip(&self) -> Self {
        self.permute(&[1, 0])
    }

    /// Places the legs of `self` at `legs` inside an arity-`arity` tensor,
    /// with units elsewhere (`F_12`, `F_13`, `F_23`, ...).
    pub fn embed(&self, arity: usize, legs: &[usize]) -> Self {
        assert_eq!(legs.len(), self.arity);
        let mut out = TensorElement::zero(arity);
        for (ws, c) in &self.terms {
            let mut nw = vec![Word::new(); arity];
            for (i, &l) in legs.iter().enumerate() {
                nw[l] = ws[i].clone();
            }
            accumulate(&mut out.terms, nw, c.clone());
        }
        out
    }

    /// Lowest order at which `self` and `other` differ, with the offending term.
    pub fn compare(&self, other: &Self, names: &[String]) -> Outcome {
        let d = self.sub(other);
        let mut best: Option<(usize, String)> = None;
        for (ws, c) in &d.terms {
            if let Some(v) = c.valuation() {
                if best.as_ref().is_none_or(|b| v < b.0) {
                    best = Some((v, format!("({}) · {}", c.part(v).render_compact(), render_words(ws, names))));
                }
            }
        }
        match best {
            None => Outcome::ok(),
            Some((v, s)) => Outcome::fail(v, s),
        }
    }

    /// `Σ coeff · w1 ⊗ w2 [⊗ w3 ...]`, zero as `0`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(ws, c)| format!("({}) · {}", c.render_compact(), render_words(ws, names)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub fn render_word(w: &[u8], names: &[String]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.iter().map(|&g| names[g as usize].as_str()).collect::<Vec<_>>().join(" ")
    }
}

fn render_words(ws: &[Word], names: &[String]) -> String {
    ws.iter().map(|w| render_word(w, names)).collect::<Vec<_>>().join(" ⊗ ")
}

type NormalForm = Arc<Vec<(Word, Scalar)>>;

/// `U(g)` with its Hopf structure at a fixed truncation order.
pub struct Hopf {
    ctx: Ctx,
    lie: LiePresentation,
    nf_cache: Mutex<HashMap<Word, NormalForm>>,
}

impl std::fmt::Debug for Hopf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Hopf").field("ctx", &self.ctx).field("lie", &self.lie).finish()
    }
}

impl Hopf {
    pub fn new(ctx: Ctx, lie: LiePresentation) -> Self {
        Hopf { ctx, lie, nf_cache: Mutex::new(HashMap::new()) }
    }

    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    pub fn lie(&self) -> &LiePresentation {
        &self.lie
    }

    pub fn names(&self) -> &[String] {
        self.lie.names()
    }

    pub fn unit(&self) -> HopfElement {
        self.scalar(self.ctx.one())
    }

    pub fn scalar(&self, s: DeformationSeries) -> HopfElement {
        let mut e = HopfElement::zero();
        accumulate(&mut e.terms, Word::new(), s);
        e
    }

    pub fn gen(&self, i: usize) -> HopfElement {
        self.word(&[i as u8])
    }

    /// Normal form of an arbitrary word with coefficient one.
    pub fn word(&self, w: &[u8]) -> HopfElement {
        self.pbw_normalize(w, &self.ctx.one())
    }

    /// Straightens `coeff * x_{w0} x_{w1} ...` into PBW normal form.
    pub fn pbw_normalize(&self, w: &[u8], coeff: &DeformationSeries) -> HopfElement {
        let mut out = HopfElement::zero();
        for (nw, c) in self.normal_form(w).iter() {
            accumulate(&mut out.terms, nw.clone(), coeff.scale(c));
        }
        out
    }

    fn normal_form(&self, w: &[u8]) -> NormalForm {
        if w.windows(2).all(|p| p[0] <= p[1]) {
            return Arc::new(vec![(w.to_vec(), Scalar::one())]);
        }
        if self.lie.is_abelian() {
            let mut s = w.to_vec();
            s.sort_unstable();
            return Arc::new(vec![(s, Scalar::one())]);
        }
        if let Some(hit) = self.nf_cache.lock().unwrap().get(w) {
            return hit.clone();
        }
        let i = w.windows(2).position(|p| p[0] > p[1]).unwrap();
        let (a, b) = (w[i] as usize, w[i + 1] as usize);
        let mut acc: BTreeMap<Word, Scalar> = BTreeMap::new();
        let mut push = |k: Word, c: Scalar| {
            let e = acc.entry(k).or_insert_with(Scalar::zero);
            *e += c;
        };
        let mut swapped = w.to_vec();
        swapped.swap(i, i + 1);
        for (k, c) in self.normal_form(&swapped).iter() {
            push(k.clone(), c.clone());
        }
        // x_a x_b = x_b x_a + [x_a, x_b]
        for (l, cl) in self.lie.bracket(a, b) {
            let mut shorter = w[..i].to_vec();
            shorter.push(l as u8);
            shorter.extend_from_slice(&w[i + 2..]);
            for (k, c) in self.normal_form(&shorter).iter() {
                push(k.clone(), c * &cl);
            }
        }
        let res: NormalForm = Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        self.nf_cache.lock().unwrap().insert(w.to_vec(), res.clone());
        res
    }

    pub fn mul(&self, a: &HopfElement, b: &HopfElement) -> HopfElement {
        let mut out = HopfElement::zero();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                let c = ca.mul_ref(cb);
                if c.is_zero() {
                    continue;
                }
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                for (nw, s) in self.normal_form(&w).iter() {
                    accumulate(&mut out.terms, nw.clone(), c.scale(s));
                }
            }
        }
        out
    }

    pub fn mul_all(&self, xs: &[&HopfElement]) -> HopfElement {
        xs.iter().fold(self.unit(), |acc, x| self.mul(&acc, x))
    }

    /// Primitive coproduct: the image of a normal-form word is the sum over
    /// splittings into a subword and its complement (both stay sorted).
    pub fn coproduct(&self, a: &HopfElement) -> TensorElement {
        let mut out = TensorElement::zero(2);
        for (w, c) in &a.terms {
            for (l, r, mult) in word_coproduct(w) {
                accumulate(&mut out.terms, vec![l, r], c.scale(&Scalar::from_integer(mult.into())));
            }
        }
        out
    }

    pub fn counit(&self, a: &HopfElement) -> DeformationSeries {
        a.terms.get(&Word::new()).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    /// `S(x_1 ... x_k) = (-1)^k x_k ... x_1`, normalized.
    pub fn antipode(&self, a: &HopfElement) -> HopfElement {
        let mut out = HopfElement::zero();
        for (w, c) in &a.terms {
            let mut r = w.clone();
            r.reverse();
            let sign = if w.len() % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            for (nw, s) in self.normal_form(&r).iter() {
                accumulate(&mut out.terms, nw.clone(), c.scale(&(s * &sign)));
            }
        }
        out
    }

    /// Pure tensor `a_1 ⊗ ... ⊗ a_k`.
    pub fn tensor(&self, parts: &[&HopfElement]) -> TensorElement {
        let mut out = TensorElement::zero(parts.len());
        let mut acc: Vec<(Vec<Word>, DeformationSeries)> = vec![(Vec::new(), self.ctx.one())];
        for p in parts {
            let mut next = Vec::new();
            for (ws, c) in &acc {
                for (w, d) in &p.terms {
                    let cd = c.mul_ref(d);
                    if cd.is_zero() {
                        continue;
                    }
                    let mut nw = ws.clone();
                    nw.push(w.clone());
                    next.push((nw, cd));
                }
            }
            acc = next;
        }
        for (ws, c) in acc {
            accumulate(&mut out.terms, ws, c);
        }
        out
    }

    pub fn tensor_unit(&self, arity: usize) -> TensorElement {
        let mut t = TensorElement::zero(arity);
        t.terms.insert(vec![Word::new(); arity], self.ctx.one());
        t
    }

    pub fn tmul(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        assert_eq!(a.arity, b.arity, "tensor arity mismatch");
        let mut out = TensorElement::zero(a.arity);
        let mut legcache: HashMap<(usize, Word, Word), NormalForm> = HashMap::new();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                let c = ca.mul_ref(cb);
                if c.is_zero() {
                    continue;
                }
                let mut acc: Vec<(Vec<Word>, Scalar)> = vec![(Vec::new(), Scalar::one())];
                for leg in 0..a.arity {
                    let nf = legcache
                        .entry((leg, wa[leg].clone(), wb[leg].clone()))
                        .or_insert_with(|| {
                            let mut w = wa[leg].clone();
                            w.extend_from_slice(&wb[leg]);
                            self.normal_form(&w)
                        })
                        .clone();
                    let mut next = Vec::with_capacity(acc.len() * nf.len());
                    for (ws, s) in &acc {
                        for (nw, t) in nf.iter() {
                            let mut v = ws.clone();
                            v.push(nw.clone());
                            next.push((v, s * t));
                        }
                    }
                    acc = next;
                }
                for (ws, s) in acc {
                    accumulate(&mut out.terms, ws, c.scale(&s));
                }
            }
        }
        out
    }

    pub fn tmul_all(&self, xs: &[&TensorElement]) -> TensorElement {
        let arity = xs[0].arity;
        xs.iter().fold(self.tensor_unit(arity), |acc, x| self.tmul(&acc, x))
    }

    /// Applies a map on `U(g)` to one leg.
    pub fn map_leg(
        &self,
        t: &TensorElement,
        leg: usize,
        f: impl Fn(&HopfElement) -> HopfElement,
    ) -> TensorElement {
        let mut out = TensorElement::zero(t.arity);
        let mut memo: HashMap<Word, HopfElement> = HashMap::new();
        for (ws, c) in &t.terms {
            let img = memo.entry(ws[leg].clone()).or_insert_with(|| f(&self.word(&ws[leg])));
            for (w, d) in &img.terms {
                let mut nw = ws.clone();
                nw[leg] = w.clone();
                accumulate(&mut out.terms, nw, c.mul_ref(d));
            }
        }
        out
    }

    /// Replaces leg `leg` by the two legs of a coproduct-like map.
    pub fn split_leg(
        &self,
        t: &TensorElement,
        leg: usize,
        f: impl Fn(&HopfElement) -> TensorElement,
    ) -> TensorElement {
        let mut out = TensorElement::zero(t.arity + 1);
        let mut memo: HashMap<Word, TensorElement> = HashMap::new();
        for (ws, c) in &t.terms {
            let img = memo.entry(ws[leg].clone()).or_insert_with(|| f(&self.word(&ws[leg])));
            for (pair, d) in &img.terms {
                let mut nw = ws[..leg].to_vec();
                nw.push(pair[0].clone());
                nw.push(pair[1].clone());
                nw.extend_from_slice(&ws[leg + 1..]);
                accumulate(&mut out.terms, nw, c.mul_ref(d));
            }
        }
        out
    }

    /// `(id ⊗ .. Δ .. ⊗ id)` on leg `leg`.
    pub fn coproduct_leg(&self, t: &TensorElement, leg: usize) -> TensorElement {
        self.split_leg(t, leg, |x| self.coproduct(x))
    }

    /// `(id ⊗ .. ε .. ⊗ id)` on leg `leg`; the arity drops by one.
    pub fn counit_leg(&self, t: &TensorElement, leg: usize) -> TensorElement {
        let mut out = TensorElement::zero(t.arity - 1);
        for (ws, c) in &t.terms {
            if ws[leg].is_empty() {
                let mut nw = ws.clone();
                nw.remove(leg);
                accumulate(&mut out.terms, nw, c.clone());
            }
        }
        out
    }

    /// Multiplies legs `leg` and `leg + 1` together.
    pub fn contract_legs(&self, t: &TensorElement, leg: usize) -> TensorElement {
        let mut out = TensorElement::zero(t.arity - 1);
        for (ws, c) in &t.terms {
            let mut w = ws[leg].clone();
            w.extend_from_slice(&ws[leg + 1]);
            for (nw, s) in self.normal_form(&w).iter() {
                let mut v = ws[..leg].to_vec();
                v.push(nw.clone());
                v.extend_from_slice(&ws[leg + 2..]);
                accumulate(&mut out.terms, v, c.scale(s));
            }
        }
        out
    }

    /// Views an arity-1 tensor as an element.
    pub fn as_element(&self, t: &TensorElement) -> HopfElement {
        assert_eq!(t.arity, 1);
        let mut e = HopfElement::zero();
        for (ws, c) in &t.terms {
            accumulate(&mut e.terms, ws[0].clone(), c.clone());
        }
        e
    }

    pub fn as_tensor(&self, e: &HopfElement) -> TensorElement {
        let mut t = TensorElement::zero(1);
        for (w, c) in &e.terms {
            t.terms.insert(vec![w.clone()], c.clone());
        }
        t
    }

    /// Truncated exponential of an element of order `h`.
    pub fn texp(&self, x: &TensorElement) -> Result<TensorElement> {
        self.require_nilpotent(x)?;
        let mut out = self.tensor_unit(x.arity);
        let mut pow = self.tensor_unit(x.arity);
        for k in 1..=self.ctx.order {
            pow = self.tmul(&pow, x).scale(&self.ctx.constant(Scalar::new(1.into(), (k as i64).into())));
            if pow.is_zero() {
                break;
            }
            out = out.add(&pow);
        }
        Ok(out)
    }

    fn require_nilpotent(&self, x: &TensorElement) -> Result<()> {
        if x.terms.values().any(|c| !c.coeff(0).is_zero()) {
            return Err(Error::NonInvertible("exponent must vanish at order h^0".into()));
        }
        Ok(())
    }

    /// Inverse of `1 + G` with `G = O(h)`, as `sum_k (-G)^k`.
    pub fn tinverse(&self, t: &TensorElement) -> Result<TensorElement> {
        let one = self.tensor_unit(t.arity);
        let g = t.sub(&one);
        if g.terms.values().any(|c| !c.coeff(0).is_zero()) {
            return Err(Error::NonInvertible(
                "order-by-order inversion needs the h^0 part to be 1⊗..⊗1".into(),
            ));
        }
        let mg = g.scale(&self.ctx.int(-1));
        let mut out = one.clone();
        let mut pow = one;
        for _ in 1..=self.ctx.order {
            pow = self.tmul(&pow, &mg);
            if pow.is_zero() {
                break;
            }
            out = out.add(&pow);
        }
        Ok(out)
    }

    pub fn inverse(&self, x: &HopfElement) -> Result<HopfElement> {
        Ok(self.as_element(&self.tinverse(&self.as_tensor(x))?))
    }

    /// Antipode axiom `μ(S⊗id)Δ(ξ) = ε(ξ)1 = μ(id⊗S)Δ(ξ)` for a given coproduct and antipode.
    pub fn antipode_axiom(
        &self,
        xi: &HopfElement,
        delta: impl Fn(&HopfElement) -> TensorElement,
        s: impl Fn(&HopfElement) -> HopfElement,
    ) -> Outcome {
        let d = delta(xi);
        let eps = self.tensor(&[&self.scalar(self.counit(xi))]);
        let left = self.contract_legs(&self.map_leg(&d, 0, &s), 0);
        let right = self.contract_legs(&self.map_leg(&d, 1, &s), 0);
        left.compare(&eps, self.names()).merge(right.compare(&eps, self.names()))
    }

    /// `(Δ⊗id)Δ(ξ) = (id⊗Δ)Δ(ξ)` for a given coproduct.
    pub fn coassociativity(&self, xi: &HopfElement, delta: impl Fn(&HopfElement) -> TensorElement) -> Outcome {
        let d = delta(xi);
        let l = self.split_leg(&d, 0, &delta);
        let r = self.split_leg(&d, 1, &delta);
        l.compare(&r, self.names())
    }

    /// `(ε⊗id)Δ(ξ) = ξ = (id⊗ε)Δ(ξ)`.
    pub fn counit_axiom(&self, xi: &HopfElement, delta: impl Fn(&HopfElement) -> TensorElement) -> Outcome {
        let d = delta(xi);
        let x = self.as_tensor(xi);
        self.counit_leg(&d, 0).compare(&x, self.names()).merge(self.counit_leg(&d, 1).compare(&x, self.names()))
    }

    /// All normal-form words of length at most `max_len`.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let m = self.lie.dim() as u8;
        let mut out = vec![Word::new()];
        let mut frontier = vec![Word::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                let start = w.last().copied().unwrap_or(0);
                for g in start..m {
                    let mut v = w.clone();
                    v.push(g);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

/// Splittings of a sorted word into (subword, complement) with multiplicities.
fn word_coproduct(w: &[u8]) -> Vec<(Word, Word, i64)> {
    let mut acc: BTreeMap<(Word, Word), i64> = BTreeMap::new();
    let k = w.len();
    if k > 20 {
        panic!("word too long for coproduct expansion");
    }
    for mask in 0u32..(1u32 << k) {
        let mut l = Word::new();
        let mut r = Word::new();
        for (i, &g) in w.iter().enumerate() {
            if mask & (1 << i) != 0 {
                l.push(g);
            } else {
                r.push(g);
            }
        }
        *acc.entry((l, r)).or_insert(0) += 1;
    }
    acc.into_iter().map(|((l, r), m)| (l, r, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn s(n: i64) -> Scalar {
        Scalar::from_integer(BigInt::from(n))
    }

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|x| x.to_string()).collect()
    }

    fn abelian2(order: usize) -> Hopf {
        Hopf::new(Ctx::new(order), LiePresentation::abelian(names(&["d1", "d2"])).unwrap())
    }

    fn sl2(order: usize) -> Hopf {
        let lie = LiePresentation::from_brackets(names(&["H", "E"]), &[(0, 1, vec![(1, s(2))])]).unwrap();
        Hopf::new(Ctx::new(order), lie)
    }

    #[test]
    fn pbw_examples() {
        let a = abelian2(2);
        assert_eq!(a.word(&[1, 0]), a.word(&[0, 1]));
        assert_eq!(a.word(&[]), a.unit());
        // E·H = H·E − 2E, from [E, H] = −2E
        let g = sl2(2);
        let lhs = g.word(&[1, 0]);
        let rhs = g.word(&[0, 1]).add(&g.gen(1).scale(&g.ctx().int(-2)));
        assert_eq!(lhs, rhs);
        assert_eq!(g.mul(&g.gen(1), &g.gen(0)), rhs);
    }

    #[test]
    fn coproduct_examples() {
        let a = abelian2(2);
        let u = a.unit();
        assert_eq!(a.coproduct(&u), a.tensor(&[&u, &u]));
        let d1 = a.gen(0);
        assert_eq!(a.coproduct(&d1), a.tensor(&[&d1, &u]).add(&a.tensor(&[&u, &d1])));
        let d2 = a.gen(1);
        let d12 = a.mul(&d1, &d2);
        let expect = a
            .tensor(&[&d12, &u])
            .add(&a.tensor(&[&d1, &d2]))
            .add(&a.tensor(&[&d2, &d1]))
            .add(&a.tensor(&[&u, &d12]));
        assert_eq!(a.coproduct(&d12), expect);
    }

    #[test]
    fn counit_and_antipode_examples() {
        let a = abelian2(2);
        assert_eq!(a.counit(&a.unit()), a.ctx().one());
        assert!(a.counit(&a.gen(0)).is_zero());
        let x = a.unit().add(&a.word(&[0, 1]).scale(&a.ctx().h()));
        assert_eq!(a.counit(&x), a.ctx().one());
        assert_eq!(a.antipode(&a.unit()), a.unit());
        assert_eq!(a.antipode(&a.gen(0)), a.gen(0).scale(&a.ctx().int(-1)));
        assert_eq!(a.antipode(&a.word(&[0, 1])), a.word(&[0, 1]));
    }

    #[test]
    fn hopf_axioms_on_sl2_words() {
        let g = sl2(2);
        for w in g.words_up_to(3) {
            let xi = g.word(&w);
            assert!(g.antipode_axiom(&xi, |x| g.coproduct(x), |x| g.antipode(x)).pass);
            assert!(g.coassociativity(&xi, |x| g.coproduct(x)).pass);
            assert!(g.counit_axiom(&xi, |x| g.coproduct(x)).pass);
        }
    }

    #[test]
    fn cocommutative_flip() {
        let g = sl2(2);
        for w in g.words_up_to(3) {
            let d = g.coproduct(&g.word(&w));
            assert_eq!(d.flip(), d);
        }
    }

    #[test]
    fn inverse_requires_unit_leading_term() {
        let a = abelian2(3);
        let u = a.unit();
        let t = a.tensor(&[&u, &u]).add(&a.tensor(&[&a.gen(0), &a.gen(1)]).scale(&a.ctx().h()));
        let inv = a.tinverse(&t).unwrap();
        assert_eq!(a.tmul(&t, &inv), a.tensor_unit(2));
        let bad = a.tensor(&[&a.gen(0), &u]);
        assert!(a.tinverse(&bad).is_err());
    }
}
