use std::sync::Arc;

use super::{Hopf, HopfElement, TensorElement, Twist};
use crate::error::{Error, Result};
use crate::outcome::Outcome;

/// Universal R-matrix with its inverse; `R^α ⊗ R_α` and `R̄^α ⊗ R̄_α`.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    r: TensorElement,
    r_inv: TensorElement,
}

impl RMatrix {
    pub fn trivial(hopf: &Hopf) -> Self {
        RMatrix { r: hopf.tensor_unit(2), r_inv: hopf.tensor_unit(2) }
    }

    /// `R^F = F₂₁ R F⁻¹` with inverse `F R⁻¹ F₂₁⁻¹`.
    pub fn twisted(twist: &Twist, base: &RMatrix) -> Self {
        let hp = twist.hopf();
        let r = hp.tmul_all(&[&twist.f().flip(), &base.r, twist.f_inv()]);
        let r_inv = hp.tmul_all(&[twist.f(), &base.r_inv, &twist.f_inv().flip()]);
        RMatrix { r, r_inv }
    }

    pub fn explicit(hopf: &Hopf, r: TensorElement, r_inv: Option<TensorElement>) -> Result<Self> {
        if r.arity != 2 {
            return Err(Error::Shape("an R-matrix lives in H⊗H".into()));
        }
        let r_inv = match r_inv {
            Some(i) => i,
            None => hopf.tinverse(&r)?,
        };
        let m = RMatrix { r, r_inv };
        if !m.inverse_check(hopf).pass {
            return Err(Error::NonInvertible("R·R⁻¹ ≠ 1⊗1".into()));
        }
        Ok(m)
    }

    /// Swaps `R` and `R⁻¹`, the fault used for negative controls.
    pub fn inverted(&self) -> Self {
        RMatrix { r: self.r_inv.clone(), r_inv: self.r.clone() }
    }

    pub fn r(&self) -> &TensorElement {
        &self.r
    }

    pub fn r_inv(&self) -> &TensorElement {
        &self.r_inv
    }

    pub fn is_trivial(&self, hopf: &Hopf) -> bool {
        self.r == hopf.tensor_unit(2)
    }

    pub fn inverse_check(&self, hopf: &Hopf) -> Outcome {
        hopf.tmul(&self.r, &self.r_inv).compare(&hopf.tensor_unit(2), hopf.names())
    }

    /// `R₁₂ R₁₃ R₂₃ = R₂₃ R₁₃ R₁₂`.
    pub fn yang_baxter(&self, hopf: &Hopf) -> Outcome {
        let r12 = self.r.embed(3, &[0, 1]);
        let r13 = self.r.embed(3, &[0, 2]);
        let r23 = self.r.embed(3, &[1, 2]);
        let lhs = hopf.tmul_all(&[&r12, &r13, &r23]);
        let rhs = hopf.tmul_all(&[&r23, &r13, &r12]);
        lhs.compare(&rhs, hopf.names())
    }

    /// `R₂₁ R = 1⊗1`.
    pub fn triangular(&self, hopf: &Hopf) -> Outcome {
        hopf.tmul(&self.r.flip(), &self.r).compare(&hopf.tensor_unit(2), hopf.names())
    }

    /// `R Δ(ξ) R⁻¹ = Δ^op(ξ)` for a coproduct, together with
    /// `(Δ⊗id)R = R₁₃R₂₃` and `(id⊗Δ)R = R₁₃R₁₂`.
    pub fn quasitriangular(
        &self,
        hopf: &Arc<Hopf>,
        samples: &[HopfElement],
        delta: impl Fn(&HopfElement) -> TensorElement,
    ) -> Outcome {
        let names = hopf.names();
        let mut out = Outcome::ok();
        for xi in samples {
            let d = delta(xi);
            let lhs = hopf.tmul_all(&[&self.r, &d, &self.r_inv]);
            out = out.merge(lhs.compare(&d.flip(), names));
        }
        let split = |t: &TensorElement, leg: usize| hopf.split_leg(t, leg, &delta);
        let r13 = self.r.embed(3, &[0, 2]);
        let r23 = self.r.embed(3, &[1, 2]);
        let r12 = self.r.embed(3, &[0, 1]);
        out = out.merge(split(&self.r, 0).compare(&hopf.tmul(&r13, &r23), names));
        out.merge(split(&self.r, 1).compare(&hopf.tmul(&r13, &r12), names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{LiePresentation, TwistSpec};
    use crate::series::{Ctx, Scalar};
    use num_bigint::BigInt;

    fn plane(order: usize) -> Arc<Hopf> {
        let names = vec!["d1".to_string(), "d2".to_string()];
        Arc::new(Hopf::new(Ctx::new(order), LiePresentation::abelian(names).unwrap()))
    }

    #[test]
    fn trivial_is_triangular_and_braided() {
        let hp = plane(2);
        let r = RMatrix::trivial(&hp);
        assert!(r.yang_baxter(&hp).pass);
        assert!(r.triangular(&hp).pass);
    }

    #[test]
    fn moyal_r_matrix_is_exponential() {
        let hp = plane(3);
        let tw = Twist::build(hp.clone(), &TwistSpec::Moyal { theta: vec![(0, 1, Scalar::from_integer(BigInt::from(1)))] })
            .unwrap();
        let rf = RMatrix::twisted(&tw, &RMatrix::trivial(&hp));
        // F₂₁F⁻¹ = exp(h (d1⊗d2 − d2⊗d1))
        let (d1, d2) = (hp.gen(0), hp.gen(1));
        let x = hp.tensor(&[&d1, &d2]).sub(&hp.tensor(&[&d2, &d1])).scale(&hp.ctx().h());
        assert_eq!(rf.r(), &hp.texp(&x).unwrap());
        assert!(rf.yang_baxter(&hp).pass);
        assert!(rf.triangular(&hp).pass);
        assert!(rf.quasitriangular(&hp, &[d1.clone(), d2.clone()], |x| tw.coproduct(x)).pass);
    }

    #[test]
    fn symmetric_r_is_not_triangular() {
        let hp = plane(2);
        let d1 = hp.gen(0);
        let r = hp.tensor_unit(2).add(&hp.tensor(&[&d1, &d1]).scale(&hp.ctx().h()));
        let m = RMatrix::explicit(&hp, r, None).unwrap();
        assert_eq!(m.triangular(&hp).first_order, Some(1));
        let d2 = hp.gen(1);
        let r = hp.tensor_unit(2).add(&hp.tensor(&[&d1, &d2]).scale(&hp.ctx().h()));
        assert!(RMatrix::explicit(&hp, r, None).unwrap().yang_baxter(&hp).pass);
    }

    #[test]
    fn identity_twist_keeps_r() {
        let hp = plane(2);
        let tw = Twist::build(hp.clone(), &TwistSpec::Identity).unwrap();
        let r = RMatrix::trivial(&hp);
        assert_eq!(RMatrix::twisted(&tw, &r), r);
    }
}
