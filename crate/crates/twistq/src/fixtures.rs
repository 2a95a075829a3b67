//! Two ready-made settings used by tests, benchmarks and the default
//! scenarios: the Moyal plane with a non-abelian symmetry and the
//! Jordanian line.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::bimod::{Atom, Env, World};
use crate::error::Result;
use crate::funcalg::{Poly, Realization};
use crate::hopf::{Hopf, LiePresentation, RMatrix, Twist, TwistSpec};
use crate::series::{Ctx, Scalar};

/// Everything a check needs: the environment, the twist and both worlds.
pub struct Fixture {
    pub env: Arc<Env>,
    pub twist: Arc<Twist>,
    pub base: RMatrix,
    pub undeformed: Arc<World>,
    pub deformed: Arc<World>,
}

impl Fixture {
    pub fn new(env: Arc<Env>, twist: Arc<Twist>, base: RMatrix) -> Self {
        let undeformed = Arc::new(World::undeformed(env.clone(), base.clone()));
        let deformed = Arc::new(World::deformed(env.clone(), twist.clone(), &base));
        Fixture { env, twist, base, undeformed, deformed }
    }

    /// Same twist, but with `R = 1⊗1` in the deformed world. Not triangular
    /// for a non-trivial twist, so quasi-commutativity must fail.
    pub fn negative_control(&self) -> World {
        World::new(self.env.clone(), Some(self.twist.clone()), RMatrix::trivial(&self.env.hopf), "control")
    }

    pub fn poly(&self, text: &str) -> Poly {
        Poly::parse(text, self.env.n, self.env.order()).expect("fixture polynomial")
    }

    pub fn order(&self) -> usize {
        self.env.order()
    }
}

fn q(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// `g = span{d1, d2, L}` with `[d1, L] = d2`, acting on the plane by
/// `∂1, ∂2, x1 ∂2`, deformed by `F = exp(-(h/2)(d1⊗d2 − d2⊗d1))`.
pub fn moyal_plane(order: usize) -> Result<Fixture> {
    let lie = LiePresentation::from_brackets(names(&["d1", "d2", "L"]), &[(0, 2, vec![(1, q(1))])])?;
    let hp = Arc::new(Hopf::new(Ctx::new(order), lie));
    let p = |s: &str| Poly::parse(s, 2, order);
    let fields = vec![vec![p("1")?, p("0")?], vec![p("0")?, p("1")?], vec![p("0")?, p("x1")?]];
    let real = Arc::new(Realization::new(&hp, 2, fields)?);
    let twist = Arc::new(Twist::build(hp.clone(), &TwistSpec::Moyal { theta: vec![(0, 1, q(1))] })?);
    let env = Arc::new(Env::new(hp.clone(), real));
    Ok(Fixture::new(env, twist, RMatrix::trivial(&hp)))
}

/// `[H, E] = 2E` acting on the line by `H = -2 x1 ∂1`, `E = ∂1`, deformed
/// by `F = exp(½ H ⊗ log(1 + hE))`.
pub fn jordanian_line(order: usize) -> Result<Fixture> {
    let lie = LiePresentation::from_brackets(names(&["H", "E"]), &[(0, 1, vec![(1, q(2))])])?;
    let hp = Arc::new(Hopf::new(Ctx::new(order), lie));
    let p = |s: &str| Poly::parse(s, 1, order);
    let fields = vec![vec![p("-2 x1")?], vec![p("1")?]];
    let real = Arc::new(Realization::new(&hp, 1, fields)?);
    let twist = Arc::new(Twist::build(hp.clone(), &TwistSpec::Jordanian { h: 0, e: 1 })?);
    let env = Arc::new(Env::new(hp.clone(), real));
    Ok(Fixture::new(env, twist, RMatrix::trivial(&hp)))
}

/// Rank-one module with trivial action.
pub fn line_bundle(env: &Env, name: &str) -> Result<Arc<Atom>> {
    Atom::plain(env, name, 1, vec![Vec::new(); env.hopf.lie().dim()])
}

/// Rank-two module on the Moyal plane where `L` acts by `[[0, 1], [0, 0]]`.
pub fn nilpotent_plane(env: &Env, name: &str) -> Result<Arc<Atom>> {
    let o = env.order();
    let c = |s: &str| Poly::parse(s, env.n, o);
    let mut act = vec![Vec::new(); env.hopf.lie().dim()];
    act[2] = vec![vec![c("0")?, c("1")?], vec![c("0")?, c("0")?]];
    Atom::plain(env, name, 2, act)
}
