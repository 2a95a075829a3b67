use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Hopf, HopfElement, TensorElement, Word};
use crate::error::{Error, Result};
use crate::outcome::Outcome;
use crate::series::{DeformationSeries, Scalar};

/// How a twist is produced.
#[derive(Clone, Debug)]
pub enum TwistSpec {
    /// `F = 1⊗1`.
    Identity,
    /// `F = exp(-(h/2) θ^{ab} X_a ⊗ X_b)`; each entry `(a, b, v)` sets
    /// `θ^{ab} = v` and `θ^{ba} = -v`.
    Moyal { theta: Vec<(usize, usize, Scalar)> },
    /// `F = exp(½ H ⊗ log(1 + hE))` for `[H, E] = 2E`.
    Jordanian { h: usize, e: usize },
    /// User-supplied `F`, with an optional inverse.
    Explicit { f: TensorElement, f_inv: Option<TensorElement> },
}

/// A verified (or deliberately unverified) Drinfeld twist together with
/// the derived data used everywhere else: `χ`, `χ⁻¹`, the twisted
/// coproduct and antipode, and the iterated inverse twists.
pub struct Twist {
    hopf: Arc<Hopf>,
    f: TensorElement,
    f_inv: TensorElement,
    chi: HopfElement,
    chi_inv: HopfElement,
    delta_cache: Mutex<HashMap<Word, TensorElement>>,
    antipode_cache: Mutex<HashMap<Word, HopfElement>>,
    iterated: Mutex<HashMap<usize, (TensorElement, TensorElement)>>,
}

impl std::fmt::Debug for Twist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Twist").field("f", &self.render()).finish()
    }
}

impl Twist {
    /// Builds the twist and rejects it unless `F F⁻¹ = 1⊗1`, normalization
    /// and the cocycle condition (direct and inverse form) hold to order N.
    pub fn build(hopf: Arc<Hopf>, spec: &TwistSpec) -> Result<Twist> {
        let (f, f_inv) = Self::expand(&hopf, spec)?;
        let tw = Self::unchecked(hopf, f, f_inv)?;
        let inv = tw.inverse_check();
        if !inv.pass {
            return Err(rejected("F·F⁻¹ ≠ 1⊗1", &inv));
        }
        let norm = tw.normalization();
        if !norm.pass {
            return Err(rejected("normalization fails", &norm));
        }
        let co = tw.cocycle();
        if !co.pass {
            return Err(rejected("cocycle condition fails", &co));
        }
        Ok(tw)
    }

    /// Skips validation. Used for fault injection and for reporting on
    /// candidate twists that `build` would reject.
    pub fn unchecked(hopf: Arc<Hopf>, f: TensorElement, f_inv: TensorElement) -> Result<Twist> {
        if f.arity != 2 || f_inv.arity != 2 {
            return Err(Error::Shape("a twist lives in H⊗H".into()));
        }
        let chi = hopf.as_element(&hopf.contract_legs(&hopf.map_leg(&f, 1, |x| hopf.antipode(x)), 0));
        let chi_inv = hopf.as_element(&hopf.contract_legs(&hopf.map_leg(&f_inv, 0, |x| hopf.antipode(x)), 0));
        Ok(Twist {
            hopf,
            f,
            f_inv,
            chi,
            chi_inv,
            delta_cache: Mutex::new(HashMap::new()),
            antipode_cache: Mutex::new(HashMap::new()),
            iterated: Mutex::new(HashMap::new()),
        })
    }

    /// Computes `F` and `F⁻¹` for a specification without checking them.
    pub fn expand(hopf: &Hopf, spec: &TwistSpec) -> Result<(TensorElement, TensorElement)> {
        let ctx = hopf.ctx();
        match spec {
            TwistSpec::Identity => Ok((hopf.tensor_unit(2), hopf.tensor_unit(2))),
            TwistSpec::Moyal { theta } => {
                let m = hopf.lie().dim();
                let mut gens = Vec::new();
                let mut x = TensorElement::zero(2);
                for (a, b, v) in theta {
                    if *a >= m || *b >= m {
                        return Err(Error::Config("Moyal θ names an unknown generator".into()));
                    }
                    if a == b && !v.is_zero() {
                        return Err(Error::Config("Moyal θ must be antisymmetric".into()));
                    }
                    gens.extend([*a, *b]);
                    let ga = hopf.gen(*a);
                    let gb = hopf.gen(*b);
                    let c = ctx.h().scale(&(v * Scalar::new((-1).into(), 2.into())));
                    let term = hopf.tensor(&[&ga, &gb]).sub(&hopf.tensor(&[&gb, &ga]));
                    x = x.add(&term.scale(&c));
                }
                for &a in &gens {
                    for &b in &gens {
                        if !hopf.lie().bracket(a, b).is_empty() {
                            return Err(Error::Config(format!(
                                "Moyal twist needs commuting generators, but [{}, {}] ≠ 0",
                                hopf.names()[a],
                                hopf.names()[b]
                            )));
                        }
                    }
                }
                let minus = x.scale(&ctx.int(-1));
                Ok((hopf.texp(&x)?, hopf.texp(&minus)?))
            }
            TwistSpec::Jordanian { h, e } => {
                let (h, e) = (*h, *e);
                let m = hopf.lie().dim();
                if h >= m || e >= m {
                    return Err(Error::Config("Jordanian twist names an unknown generator".into()));
                }
                let br = hopf.lie().bracket(h, e);
                let two = Scalar::from_integer(BigInt::from(2));
                if br != vec![(e, two)] {
                    return Err(Error::Config(format!(
                        "Jordanian twist needs [{0}, {1}] = 2 {1}",
                        hopf.names()[h],
                        hopf.names()[e]
                    )));
                }
                // σ = log(1 + hE) = Σ_{k≥1} (-1)^{k+1} h^k E^k / k
                let mut sigma = HopfElement::zero();
                for k in 1..=ctx.order {
                    let sign: i64 = if k % 2 == 1 { 1 } else { -1 };
                    let c = DeformationSeries::monomial(ctx.order, k, Scalar::new(sign.into(), (k as i64).into()));
                    sigma = sigma.add(&hopf.word(&vec![e as u8; k]).scale(&c));
                }
                let half = ctx.constant(Scalar::new(1.into(), 2.into()));
                let x = hopf.tensor(&[&hopf.gen(h), &sigma]).scale(&half);
                let minus = x.scale(&ctx.int(-1));
                Ok((hopf.texp(&x)?, hopf.texp(&minus)?))
            }
            TwistSpec::Explicit { f, f_inv } => {
                let inv = match f_inv {
                    Some(i) => i.clone(),
                    None => hopf.tinverse(f)?,
                };
                Ok((f.clone(), inv))
            }
        }
    }

    pub fn hopf(&self) -> &Arc<Hopf> {
        &self.hopf
    }

    pub fn f(&self) -> &TensorElement {
        &self.f
    }

    /// `F⁻¹ = f̄^α ⊗ f̄_α`.
    pub fn f_inv(&self) -> &TensorElement {
        &self.f_inv
    }

    /// `χ = f^α S(f_α)`.
    pub fn chi(&self) -> &HopfElement {
        &self.chi
    }

    /// `χ⁻¹ = S(f̄^α) f̄_α`.
    pub fn chi_inv(&self) -> &HopfElement {
        &self.chi_inv
    }

    pub fn is_identity(&self) -> bool {
        self.f == self.hopf.tensor_unit(2) && self.f_inv == self.hopf.tensor_unit(2)
    }

    pub fn render(&self) -> String {
        self.f.render(self.hopf.names())
    }

    pub fn inverse_check(&self) -> Outcome {
        let one = self.hopf.tensor_unit(2);
        let names = self.hopf.names();
        self.hopf
            .tmul(&self.f, &self.f_inv)
            .compare(&one, names)
            .merge(self.hopf.tmul(&self.f_inv, &self.f).compare(&one, names))
    }

    /// `(ε⊗id)F = 1 = (id⊗ε)F`.
    pub fn normalization(&self) -> Outcome {
        let one = self.hopf.tensor_unit(1);
        let names = self.hopf.names();
        self.hopf
            .counit_leg(&self.f, 0)
            .compare(&one, names)
            .merge(self.hopf.counit_leg(&self.f, 1).compare(&one, names))
    }

    /// `F₁₂ (Δ⊗id)F = F₂₃ (id⊗Δ)F` and
    /// `((Δ⊗id)F⁻¹) F₁₂⁻¹ = ((id⊗Δ)F⁻¹) F₂₃⁻¹`.
    pub fn cocycle(&self) -> Outcome {
        let hp = &self.hopf;
        let names = hp.names();
        let f12 = self.f.embed(3, &[0, 1]);
        let f23 = self.f.embed(3, &[1, 2]);
        let lhs = hp.tmul(&f12, &hp.coproduct_leg(&self.f, 0));
        let rhs = hp.tmul(&f23, &hp.coproduct_leg(&self.f, 1));
        let direct = lhs.compare(&rhs, names);
        let g12 = self.f_inv.embed(3, &[0, 1]);
        let g23 = self.f_inv.embed(3, &[1, 2]);
        let lhs = hp.tmul(&hp.coproduct_leg(&self.f_inv, 0), &g12);
        let rhs = hp.tmul(&hp.coproduct_leg(&self.f_inv, 1), &g23);
        direct.merge(lhs.compare(&rhs, names))
    }

    /// `Δ^F(ξ) = F Δ(ξ) F⁻¹`.
    pub fn coproduct(&self, xi: &HopfElement) -> TensorElement {
        let mut out = TensorElement::zero(2);
        for (w, c) in &xi.terms {
            let hit = self.delta_cache.lock().unwrap().get(w).cloned();
            let d = match hit {
                Some(d) => d,
                None => {
                    let d = self.hopf.tmul_all(&[&self.f, &self.hopf.coproduct(&self.hopf.word(w)), &self.f_inv]);
                    self.delta_cache.lock().unwrap().insert(w.clone(), d.clone());
                    d
                }
            };
            out = out.add(&d.scale(c));
        }
        out
    }

    /// `S^F(ξ) = χ S(ξ) χ⁻¹`.
    pub fn antipode(&self, xi: &HopfElement) -> HopfElement {
        let mut out = HopfElement::zero();
        for (w, c) in &xi.terms {
            let hit = self.antipode_cache.lock().unwrap().get(w).cloned();
            let s = match hit {
                Some(s) => s,
                None => {
                    let s = self.hopf.mul_all(&[&self.chi, &self.hopf.antipode(&self.hopf.word(w)), &self.chi_inv]);
                    self.antipode_cache.lock().unwrap().insert(w.clone(), s.clone());
                    s
                }
            };
            out = out.add(&s.scale(c));
        }
        out
    }

    /// `(F_k, F_k⁻¹)` in `H^{⊗k}`: `F_k⁻¹ = ((Δ^{(k-2)}⊗id)F⁻¹)(F_{k-1}⁻¹⊗1)`,
    /// the composite of nested pairwise inverse twists.
    pub fn iterated(&self, k: usize) -> (TensorElement, TensorElement) {
        if let Some(hit) = self.iterated.lock().unwrap().get(&k) {
            return hit.clone();
        }
        let hp = &self.hopf;
        let res = if k <= 1 {
            (hp.tensor_unit(1), hp.tensor_unit(1))
        } else if k == 2 {
            (self.f.clone(), self.f_inv.clone())
        } else {
            let (_, prev_inv) = self.iterated(k - 1);
            let mut outer = self.f_inv.clone();
            for _ in 0..k - 2 {
                outer = hp.coproduct_leg(&outer, 0);
            }
            let legs: Vec<usize> = (0..k - 1).collect();
            let inv = hp.tmul(&outer, &prev_inv.embed(k, &legs));
            let fwd = hp.tinverse(&inv).expect("iterated twist has unit leading term");
            (fwd, inv)
        };
        self.iterated.lock().unwrap().insert(k, res.clone());
        res
    }
}

fn rejected(reason: &str, o: &Outcome) -> Error {
    Error::TwistRejected {
        reason: match &o.sample {
            Some(s) => format!("{reason}: {s}"),
            None => reason.to_string(),
        },
        order: o.first_order.unwrap_or(0),
    }
}

/// Removes the `h^k` part of every coefficient; fault injection helper.
pub fn drop_order(t: &TensorElement, k: usize) -> TensorElement {
    let mut out = TensorElement::zero(t.arity);
    for (ws, c) in &t.terms {
        let mut coeffs = c.coeffs().to_vec();
        if k < coeffs.len() {
            coeffs[k] = Scalar::zero();
        }
        let s = DeformationSeries::from_coeffs(c.order(), coeffs);
        if !s.is_zero() {
            out.terms.insert(ws.clone(), s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::LiePresentation;
    use crate::series::Ctx;

    fn s(n: i64) -> Scalar {
        Scalar::from_integer(BigInt::from(n))
    }

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|x| x.to_string()).collect()
    }

    fn plane(order: usize) -> Arc<Hopf> {
        Arc::new(Hopf::new(Ctx::new(order), LiePresentation::abelian(names(&["d1", "d2"])).unwrap()))
    }

    fn moyal(order: usize) -> Twist {
        Twist::build(plane(order), &TwistSpec::Moyal { theta: vec![(0, 1, s(1))] }).unwrap()
    }

    fn sl2(order: usize) -> Arc<Hopf> {
        let lie = LiePresentation::from_brackets(names(&["H", "E"]), &[(0, 1, vec![(1, s(2))])]).unwrap();
        Arc::new(Hopf::new(Ctx::new(order), lie))
    }

    #[test]
    fn moyal_first_order() {
        let tw = moyal(2);
        let hp = tw.hopf();
        let u = hp.unit();
        let (d1, d2) = (hp.gen(0), hp.gen(1));
        let half = hp.ctx().h().scale(&Scalar::new((-1).into(), 2.into()));
        let first = hp.tensor(&[&d1, &d2]).sub(&hp.tensor(&[&d2, &d1])).scale(&half);
        let expect = hp.tensor(&[&u, &u]).add(&first);
        let trunc = |t: &TensorElement| {
            let mut o = TensorElement::zero(2);
            for (k, v) in &t.terms {
                let p = DeformationSeries::from_coeffs(2, v.coeffs()[..2].to_vec());
                if !p.is_zero() {
                    o.terms.insert(k.clone(), p);
                }
            }
            o
        };
        assert_eq!(trunc(tw.f()), expect);
    }

    #[test]
    fn zero_theta_is_identity() {
        let tw = Twist::build(plane(3), &TwistSpec::Moyal { theta: vec![(0, 1, s(0))] }).unwrap();
        assert!(tw.is_identity());
    }

    #[test]
    fn non_normalized_twist_is_rejected() {
        let hp = plane(2);
        let f = hp.tensor_unit(2).add(&hp.tensor(&[&hp.gen(0), &hp.unit()]).scale(&hp.ctx().h()));
        let r = Twist::build(hp, &TwistSpec::Explicit { f, f_inv: None });
        assert!(matches!(r, Err(Error::TwistRejected { order: 1, .. })), "{r:?}");
    }

    #[test]
    fn symmetric_twist_fails_cocycle_at_second_order() {
        let hp = Arc::new(Hopf::new(Ctx::new(3), LiePresentation::abelian(names(&["d"])).unwrap()));
        let d = hp.gen(0);
        let f = hp.tensor_unit(2).add(&hp.tensor(&[&d, &d]).scale(&hp.ctx().h()));
        let inv = hp.tinverse(&f).unwrap();
        let tw = Twist::unchecked(hp, f, inv).unwrap();
        assert!(tw.normalization().pass);
        assert_eq!(tw.cocycle().first_order, Some(2));
    }

    #[test]
    fn builtins_pass_up_to_order_five() {
        for n in 1..=5 {
            let tw = moyal(n);
            assert!(tw.cocycle().pass && tw.normalization().pass);
        }
        for n in 1..=4 {
            let tw = Twist::build(sl2(n), &TwistSpec::Jordanian { h: 0, e: 1 }).unwrap();
            assert!(tw.cocycle().pass, "order {n}");
        }
    }

    #[test]
    fn twisted_coproduct_examples() {
        let tw = moyal(3);
        let hp = tw.hopf();
        assert_eq!(tw.coproduct(&hp.unit()), hp.tensor_unit(2));
        assert_eq!(tw.coproduct(&hp.gen(0)), hp.coproduct(&hp.gen(0)));
        assert_eq!(tw.antipode(&hp.gen(0)), hp.antipode(&hp.gen(0)));
        let j = Twist::build(sl2(2), &TwistSpec::Jordanian { h: 0, e: 1 }).unwrap();
        let hp = j.hopf();
        let e = hp.gen(1);
        let diff = j.coproduct(&e).sub(&hp.coproduct(&e));
        assert_eq!(diff.compare(&TensorElement::zero(2), hp.names()).first_order, Some(1));
        let sd = j.antipode(&e).sub(&hp.antipode(&e));
        assert!(!sd.is_zero());
    }

    #[test]
    fn twisted_hopf_axioms_jordanian() {
        let tw = Twist::build(sl2(3), &TwistSpec::Jordanian { h: 0, e: 1 }).unwrap();
        let hp = tw.hopf().clone();
        assert_eq!(hp.mul(&tw.chi().clone(), tw.chi_inv()), hp.unit());
        for w in hp.words_up_to(2) {
            let xi = hp.word(&w);
            assert!(hp.coassociativity(&xi, |x| tw.coproduct(x)).pass);
            assert!(hp.counit_axiom(&xi, |x| tw.coproduct(x)).pass);
            assert!(hp.antipode_axiom(&xi, |x| tw.coproduct(x), |x| tw.antipode(x)).pass);
        }
    }

    #[test]
    fn dropping_second_order_breaks_cocycle_at_second_order() {
        let tw = moyal(3);
        let bad_f = drop_order(tw.f(), 2);
        let hp = tw.hopf().clone();
        let inv = hp.tinverse(&bad_f).unwrap();
        let bad = Twist::unchecked(hp, bad_f, inv).unwrap();
        assert_eq!(bad.cocycle().first_order, Some(2));
    }

    #[test]
    fn iterated_inverse_twists_agree_with_other_bracketing() {
        let tw = Twist::build(sl2(2), &TwistSpec::Jordanian { h: 0, e: 1 }).unwrap();
        let hp = tw.hopf();
        let (_, inv3) = tw.iterated(3);
        let other = hp.tmul(&hp.coproduct_leg(tw.f_inv(), 1), &tw.f_inv().embed(3, &[1, 2]));
        assert_eq!(inv3, other);
    }
}
