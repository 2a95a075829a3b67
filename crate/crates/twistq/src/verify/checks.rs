//! The check catalog.

use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rayon::prelude::*;

use super::{CheckDef, Session, Verdict};
use crate::bimod::{Key, Module, Space, World};
use crate::connection::{dual_connections, quantize, render_on_basis, twisted_curvature, Connection};
use crate::error::{Error, Result};
use crate::funcalg::Poly;
use crate::hopf::{HopfElement, RMatrix};
use crate::morphism::{
    adjoint, adjoint_laws, braid_relations, d_quantize, d_quantize_map, quantization_diagram, quantization_identities,
    quasi_left_linearity, right_linearity, tensor_r_laws, BraidReport, OpMatrix, QuantizationReport,
};
use crate::outcome::Outcome;

type R = Result<Verdict>;

fn done(o: Outcome) -> R {
    Ok(Verdict::Checked { outcome: o, note: None })
}

fn noted(o: Outcome, note: impl Into<String>) -> R {
    Ok(Verdict::Checked { outcome: o, note: Some(note.into()) })
}

fn skip(why: &str) -> R {
    Ok(Verdict::Skipped(why.into()))
}

fn sample<T: Clone>(xs: Vec<T>, step: usize) -> Vec<T> {
    xs.into_iter().step_by(step.max(1)).collect()
}

impl Session {
    fn worlds(&self) -> [&Arc<World>; 2] {
        [&self.undeformed, &self.deformed]
    }

    /// Generators and one product of two of them.
    fn xis(&self) -> Vec<HopfElement> {
        let hp = &self.env.hopf;
        let m = hp.lie().dim();
        let mut out: Vec<HopfElement> = (0..m).map(|g| hp.gen(g)).collect();
        if m > 1 {
            out.push(hp.mul(&hp.gen(m - 1), &hp.gen(0)));
        }
        out
    }

    fn gens(&self) -> Vec<HopfElement> {
        (0..self.env.hopf.lie().dim()).map(|g| self.env.hopf.gen(g)).collect()
    }

    fn fs(&self) -> Vec<Poly> {
        self.env.sample_polys(self.scenario.degree)
    }

    fn fs_low(&self) -> Vec<Poly> {
        self.env.sample_polys(self.scenario.degree.min(1))
    }

    fn all_modules(&self) -> Vec<Module> {
        let mut out: Vec<Module> = self.modules.iter().map(|(_, a)| Module::of(&[a])).collect();
        if self.scenario.calculus {
            out.push(self.env.omega());
        }
        out
    }

    /// The first declared module, or the forms.
    fn primary(&self) -> Module {
        self.modules.first().map(|(_, a)| Module::of(&[a])).unwrap_or_else(|| self.env.omega())
    }

    /// The first declared rank-one module, or the primary one.
    fn line(&self) -> Module {
        self.modules
            .iter()
            .find(|(_, a)| a.rank() == 1)
            .map(|(_, a)| Module::of(&[a]))
            .unwrap_or_else(|| self.primary())
    }

    /// A module with a non-trivial action, preferring declared ones.
    fn acted(&self) -> Module {
        self.modules
            .iter()
            .find(|(_, a)| a.action.iter().any(|g| !g.is_empty()))
            .map(|(_, a)| Module::of(&[a]))
            .unwrap_or_else(|| if self.scenario.calculus { self.env.omega() } else { self.primary() })
    }

    fn keys(&self, m: &Module) -> Vec<Key> {
        self.env.module_keys(m, 1)
    }

    fn quantized(&self) -> &[Connection] {
        self.quantized.get_or_init(|| self.connections.iter().map(|c| quantize(&self.twist, &self.env, c)).collect())
    }

    fn pair(&self) -> Option<(usize, usize)> {
        let lines: Vec<usize> = (0..self.connections.len()).filter(|&i| self.connections[i].module.atoms[0].rank() == 1).collect();
        let distinct = |i: usize, j: usize| self.connections[i].module != self.connections[j].module;
        for &i in &lines {
            for &j in &lines {
                if i < j && distinct(i, j) {
                    return Some((i, j));
                }
            }
        }
        match self.connections.len() {
            0 => None,
            1 => Some((0, 0)),
            _ => Some((0, 1)),
        }
    }

    fn triple(&self) -> Option<[usize; 3]> {
        let mut picked: Vec<usize> = Vec::new();
        for (i, c) in self.connections.iter().enumerate() {
            if c.module.atoms[0].rank() == 1 && picked.iter().all(|&j| self.connections[j].module != c.module) {
                picked.push(i);
            }
        }
        (picked.len() >= 3).then(|| [picked[0], picked[1], picked[2]])
    }

    fn equivariant(&self, c: &Connection) -> bool {
        match &c.op {
            Some(op) => self.gens().iter().all(|g| adjoint(self.env.as_ref(), g, op).data.is_empty()),
            None => false,
        }
    }

    fn quant_report(&self) -> &QuantizationReport {
        self.quant_report.get_or_init(|| {
            let env = &self.env;
            let m = self.primary();
            let n = self.scenario.samples;
            let gens = self.xis();
            let mut rng = ChaCha8Rng::seed_from_u64(self.scenario.seed ^ 0x5eed_0001);
            let mut pairs: Vec<(OpMatrix, OpMatrix)> = (0..n)
                .map(|_| (OpMatrix::random(env, &m, &m, false, &mut rng), OpMatrix::random(env, &m, &m, false, &mut rng)))
                .collect();
            for (i, (_, p)) in self.morphisms.iter().enumerate() {
                for (_, q) in &self.morphisms[i..] {
                    if p.src == q.tgt && p.tgt == p.src && q.tgt == q.src {
                        pairs.push((p.clone(), q.clone()));
                    }
                }
            }
            pairs
                .par_iter()
                .enumerate()
                .map(|(i, (p, q))| quantization_identities(&self.deformed, &self.twist, p, q, &gens[i % gens.len()]))
                .reduce(
                    || QuantizationReport {
                        homomorphism: Outcome::ok(),
                        intertwining: Outcome::ok(),
                        inverse: Outcome::ok(),
                        alternative: Outcome::ok(),
                    },
                    QuantizationReport::merge,
                )
        })
    }

    fn braid_report(&self) -> &[BraidReport; 2] {
        self.braid_report.get_or_init(|| {
            let env = &self.env;
            let m = if self.scenario.calculus { env.omega() } else { self.primary() };
            let keys2 = sample(Space::of(&[&m, &m]).basis_keys(env.n, 1), 5);
            let keys3 = sample(Space::of(&[&m, &m, &m]).basis_keys(env.n, 1), 97);
            let keys_a = sample(env.module_keys(&m.tensor(&m).tensor(&m), 2), 23);
            let xis = self.gens();
            let run = |w: &Arc<World>| braid_relations(w, [&m, &m, &m], &keys2, &keys3, &keys_a, &xis);
            [run(&self.undeformed), run(&self.deformed)]
        })
    }
}

fn hopf_axioms(s: &Session, _: &mut ChaCha8Rng) -> R {
    let hp = &s.env.hopf;
    let mut o = Outcome::ok();
    for w in hp.words_up_to(2) {
        let xi = hp.word(&w);
        o = o
            .merge(hp.antipode_axiom(&xi, |x| hp.coproduct(x), |x| hp.antipode(x)))
            .merge(hp.coassociativity(&xi, |x| hp.coproduct(x)))
            .merge(hp.counit_axiom(&xi, |x| hp.coproduct(x)));
    }
    done(o)
}

fn twist_normalization(s: &Session, _: &mut ChaCha8Rng) -> R {
    done(s.twist.normalization().merge(s.twist.inverse_check()))
}

fn twist_cocycle(s: &Session, _: &mut ChaCha8Rng) -> R {
    done(s.twist.cocycle())
}

fn twisted_hopf(s: &Session, _: &mut ChaCha8Rng) -> R {
    let hp = &s.env.hopf;
    let tw = &s.twist;
    let mut o = Outcome::ok();
    for w in hp.words_up_to(2) {
        let xi = hp.word(&w);
        o = o
            .merge(hp.antipode_axiom(&xi, |x| tw.coproduct(x), |x| tw.antipode(x)))
            .merge(hp.coassociativity(&xi, |x| tw.coproduct(x)))
            .merge(hp.counit_axiom(&xi, |x| tw.coproduct(x)));
    }
    done(o)
}

fn star_associativity(s: &Session, _: &mut ChaCha8Rng) -> R {
    let samples = s.env.sample_polys(s.scenario.star_degree);
    let real = &s.env.real;
    let o = real.associativity(Some(&s.twist), &samples);
    noted(o, format!("{} monomials, all triples", samples.len()))
}

fn star_unit(s: &Session, _: &mut ChaCha8Rng) -> R {
    let one = s.poly("1")?;
    let mut o = Outcome::ok();
    for f in s.env.sample_polys(s.scenario.star_degree) {
        o = o.merge(s.deformed.star(&one, &f).compare(&f)).merge(s.deformed.star(&f, &one).compare(&f));
    }
    done(o)
}

fn star_covariance(s: &Session, _: &mut ChaCha8Rng) -> R {
    done(s.env.real.covariance(&s.twist, &s.xis(), &s.fs()))
}

fn star_expectations(s: &Session, _: &mut ChaCha8Rng) -> R {
    if s.scenario.expectations.is_empty() {
        return skip("no expectations declared");
    }
    let mut o = Outcome::ok();
    let mut shown = Vec::new();
    for e in &s.scenario.expectations {
        let (f, g, want) = (s.poly(&e.f.text)?, s.poly(&e.g.text)?, s.poly(&e.value.text)?);
        let got = if e.commutator { s.env.real.star_commutator(Some(&s.twist), &f, &g) } else { s.deformed.star(&f, &g) };
        let op = if e.commutator { "[,]⋆" } else { "⋆" };
        let c = got.compare(&want);
        if !c.pass {
            o = o.merge(Outcome::fail(
                c.first_order.unwrap_or(0),
                format!("line {}: {} {op} {} = {}, expected {}", e.value.line, f.render(), g.render(), got.render(), want.render()),
            ));
        }
        shown.push(format!("{} {op} {} = {}", f.render(), g.render(), got.render()));
    }
    noted(o, shown.join("; "))
}

fn module_algebra(s: &Session, _: &mut ChaCha8Rng) -> R {
    done(s.env.real.module_algebra(&s.env.hopf, &s.xis(), &s.fs()))
}

fn bimod_deformed(s: &Session, _: &mut ChaCha8Rng) -> R {
    let fs = s.fs_low();
    let xis = s.gens();
    let mut o = Outcome::ok();
    for m in s.all_modules() {
        let keys = s.keys(&m);
        for w in s.worlds() {
            o = o.merge(w.bimodule_axioms(&m, &keys, &fs)).merge(w.action_covariance(&m, &xis, &keys, &fs));
        }
    }
    done(o)
}

fn calculus_derham(s: &Session, _: &mut ChaCha8Rng) -> R {
    if !s.scenario.calculus {
        return skip("no calculus");
    }
    let keys = s.env.form_keys(2, 1);
    let (dd, leib, _) = s.env.check_calculus(&keys, &[]);
    let lk = s.env.form_keys(1, 1);
    done(Outcome::all([dd, leib, s.deformed.star_leibniz(&lk), s.undeformed.star_leibniz(&lk)]))
}

fn calculus_covariance(s: &Session, _: &mut ChaCha8Rng) -> R {
    if !s.scenario.calculus {
        return skip("no calculus");
    }
    let keys = s.env.form_keys(2, 1);
    let mut o = Outcome::ok();
    for k in &keys {
        let t = crate::bimod::Elem::basis(k.clone(), s.env.order());
        for xi in s.xis() {
            let om = s.env.omega();
            o = o.merge(s.env.act(&om, &xi, &s.env.d(&t)).compare(&s.env.d(&s.env.act(&om, &xi, &t))));
        }
    }
    done(o)
}

fn adjoint_laws_check(s: &Session, rng: &mut ChaCha8Rng) -> R {
    let m = s.primary();
    let gens = s.gens();
    let mut o = Outcome::ok();
    for (i, xi) in gens.iter().enumerate() {
        let eta = &gens[(i + 1) % gens.len()];
        let p = OpMatrix::random(&s.env, &m, &m, false, rng);
        let q = OpMatrix::random(&s.env, &m, &m, false, rng);
        o = o.merge(adjoint_laws(s.env.as_ref(), xi, eta, &p, &q)).merge(adjoint_laws(s.deformed.as_ref(), xi, eta, &p, &q));
    }
    done(o)
}

fn samples_note(s: &Session) -> String {
    format!("{} seeded samples on {}", s.scenario.samples, s.primary().name())
}

fn dquant_homomorphism(s: &Session, _: &mut ChaCha8Rng) -> R {
    noted(s.quant_report().homomorphism.clone().merge(s.quant_report().alternative.clone()), samples_note(s))
}

fn dquant_intertwining(s: &Session, _: &mut ChaCha8Rng) -> R {
    noted(s.quant_report().intertwining.clone(), samples_note(s))
}

fn dquant_inverse(s: &Session, _: &mut ChaCha8Rng) -> R {
    noted(s.quant_report().inverse.clone(), samples_note(s))
}

fn dquant_restriction(s: &Session, rng: &mut ChaCha8Rng) -> R {
    let m = s.primary();
    let keys = s.keys(&m);
    let fs = s.fs_low();
    let mut o = Outcome::ok();
    for _ in 0..3 {
        let p = OpMatrix::random(&s.env, &m, &m, true, rng);
        let dp = d_quantize(&s.twist, &s.env, &p);
        o = o.merge(right_linearity(&s.undeformed, &p, &keys, &fs)).merge(right_linearity(&s.deformed, &dp, &keys, &fs));
    }
    done(o)
}

fn rmatrix_yang_baxter(s: &Session, _: &mut ChaCha8Rng) -> R {
    let hp = &s.env.hopf;
    let xis = s.xis();
    let mut o = s.base.yang_baxter(hp).merge(s.deformed.r.yang_baxter(hp));
    o = o.merge(s.base.quasitriangular(hp, &xis, |x| hp.coproduct(x)));
    o = o.merge(s.deformed.r.quasitriangular(hp, &xis, |x| s.twist.coproduct(x)));
    done(o.merge(s.deformed.r.inverse_check(hp)))
}

fn rmatrix_triangular(s: &Session, _: &mut ChaCha8Rng) -> R {
    let hp = &s.env.hopf;
    done(s.base.triangular(hp).merge(s.deformed.r.triangular(hp)))
}

fn braid_equivariance(s: &Session, _: &mut ChaCha8Rng) -> R {
    let [u, d] = s.braid_report();
    done(Outcome::all([u.inverse.clone(), u.equivariance.clone(), d.inverse.clone(), d.equivariance.clone()]))
}

fn braid_rel(s: &Session, _: &mut ChaCha8Rng) -> R {
    let [u, d] = s.braid_report();
    done(u.relations.clone().merge(d.relations.clone()))
}

fn braid_descent(s: &Session, _: &mut ChaCha8Rng) -> R {
    let [u, d] = s.braid_report();
    done(u.relations_a.clone().merge(d.relations_a.clone()))
}

fn tensor_r(s: &Session, rng: &mut ChaCha8Rng) -> R {
    let env = &s.env;
    let v = s.line();
    let maps: Vec<_> = (0..5).map(|_| OpMatrix::random(env, &v, &v, false, rng).to_map(env)).collect();
    let refs = [&maps[0], &maps[1], &maps[2], &maps[3], &maps[4]];
    let keys2 = Space::of(&[&v, &v]).basis_keys(env.n, 1);
    let keys3 = sample(Space::of(&[&v, &v, &v]).basis_keys(env.n, 1), 4);
    let xis = s.gens();
    let mut o = Outcome::ok();
    for w in s.worlds() {
        let l = tensor_r_laws(w, refs, &xis, &keys2, &keys3, false);
        o = o.merge(Outcome::all([l.equivariance, l.associativity, l.composition, l.factorization]));
    }
    done(o)
}

fn phi_invertible(s: &Session, _: &mut ChaCha8Rng) -> R {
    let env = &s.env;
    let (v, w) = (s.primary(), if s.scenario.calculus { env.omega() } else { s.line() });
    let sp = Space::of(&[&v, &w]);
    let keys = sample(sp.basis_keys(env.n, 1), 3);
    let (inv, equi) = s.deformed.phi_checks(&sp, &keys, &s.xis());
    done(inv.merge(equi))
}

fn phi_diagram(s: &Session, rng: &mut ChaCha8Rng) -> R {
    let env = &s.env;
    let (p, q) = match s.morphisms.as_slice() {
        [(_, p), (_, q), ..] => (p.clone(), q.clone()),
        _ => {
            let v = s.line();
            let x1 = Poly::var(env.n, 0, env.order());
            (OpMatrix::left_mul(env, &v, &x1), OpMatrix::random(env, &v, &v, false, rng))
        }
    };
    let keys = sample(Space::of(&[&p.src, &q.src]).basis_keys(env.n, 1), 2);
    let keys_a = sample(env.module_keys(&p.src.tensor(&q.src), 2), 2);
    let (k, a) = quantization_diagram(&s.undeformed, &s.deformed, &s.twist, &p, &q, &keys, &keys_a);
    done(k.merge(a))
}

fn phi_coherence(s: &Session, _: &mut ChaCha8Rng) -> R {
    let env = &s.env;
    let a = Module::algebra();
    let v = s.primary();
    let w = if s.scenario.calculus { env.omega() } else { s.line() };
    let sp3 = Space::of(&[&v, &a, &w]);
    let keys3 = sample(sp3.basis_keys(env.n, 1), 5);
    let alg = Space::of(&[&a, &a, &a]);
    let keys_a = alg.basis_keys(env.n, s.scenario.degree.min(2));
    done(s.deformed.coherence(&sp3, &keys3, None).merge(s.deformed.coherence(&alg, &keys_a, None)))
}

fn quasi_algebra(s: &Session, _: &mut ChaCha8Rng) -> R {
    let real = &s.env.real;
    let fs = s.fs();
    done(real.quasi_commutative(None, &s.base, &fs).merge(real.quasi_commutative(Some(&s.twist), &s.deformed.r, &fs)))
}

fn quasi_module(s: &Session, _: &mut ChaCha8Rng) -> R {
    let fs = s.fs_low();
    let mut o = Outcome::ok();
    for m in s.all_modules() {
        for w in s.worlds() {
            o = o.merge(w.quasi_commutative_module(&m, &s.keys(&m), &fs));
        }
    }
    done(o)
}

fn quasi_left(s: &Session, rng: &mut ChaCha8Rng) -> R {
    let m = s.acted();
    let keys = s.keys(&m);
    let fs = s.fs_low();
    let p = OpMatrix::random(&s.env, &m, &m, true, rng);
    let dp = d_quantize(&s.twist, &s.env, &p);
    done(quasi_left_linearity(&s.undeformed, &p, &keys, &fs).merge(quasi_left_linearity(&s.deformed, &dp, &keys, &fs)))
}

/// Passes when the control world `R = 1⊗1` violates at least one of the
/// quasi-commutativity identities, or when there is nothing to detect.
fn quasi_control(s: &Session, rng: &mut ChaCha8Rng) -> R {
    let hp = &s.env.hopf;
    if s.twist.is_identity() {
        return noted(Outcome::ok(), "twist is the identity");
    }
    if s.deformed.r.is_trivial(hp) {
        return noted(Outcome::ok(), "deformed R-matrix is trivial");
    }
    let fs = s.fs();
    let trivial = RMatrix::trivial(hp);
    let m = s.acted();
    let keys = s.keys(&m);
    let p = OpMatrix::random(&s.env, &m, &m, true, rng);
    let dp = d_quantize(&s.twist, &s.env, &p);
    let controls = [
        ("algebra", s.env.real.quasi_commutative(Some(&s.twist), &trivial, &fs)),
        ("module", s.control.quasi_commutative_module(&m, &keys, &s.fs_low())),
        ("left-linear", quasi_left_linearity(&s.control, &dp, &keys, &s.fs_low())),
    ];
    let seen: Vec<String> = controls
        .iter()
        .map(|(what, c)| match c.first_order {
            Some(k) if !c.pass => format!("{what} fails at h^{k}"),
            _ => format!("{what} holds"),
        })
        .collect();
    let o = if controls.iter().any(|(_, c)| !c.pass) {
        Outcome::ok()
    } else {
        Outcome::fail(0, "every quasi-commutativity identity holds with R = 1⊗1")
    };
    noted(o, format!("R = 1⊗1: {}", seen.join(", ")))
}

fn graded_quasi(s: &Session, _: &mut ChaCha8Rng) -> R {
    if !s.scenario.calculus {
        return skip("no calculus");
    }
    let keys = s.env.form_keys(1, 1);
    done(s.undeformed.graded_quasi_commutative(&keys).merge(s.deformed.graded_quasi_commutative(&keys)))
}

fn no_connections(s: &Session) -> Option<R> {
    s.connections.is_empty().then(|| skip("no connections declared"))
}

fn conn_leibniz(s: &Session, _: &mut ChaCha8Rng) -> R {
    if let Some(r) = no_connections(s) {
        return r;
    }
    let fs = s.fs();
    let mut o = Outcome::ok();
    for (c, q) in s.connections.iter().zip(s.quantized()) {
        let keys = s.keys(&c.module);
        o = o.merge(s.undeformed.right_leibniz(c, &keys, &fs)).merge(s.deformed.right_leibniz(q, &keys, &fs));
    }
    done(o)
}

fn conn_affine(s: &Session, rng: &mut ChaCha8Rng) -> R {
    if let Some(r) = no_connections(s) {
        return r;
    }
    let env = &s.env;
    let fs = s.fs_low();
    let mut o = Outcome::ok();
    for c in &s.connections {
        let Some(op) = &c.op else { continue };
        let vo = c.module.tensor(&env.omega());
        let p = OpMatrix::random(env, &c.module, &vo, true, rng);
        let shifted = c.shifted(env, &p);
        let keys = s.keys(&c.module);
        o = o.merge(s.undeformed.right_leibniz(&shifted, &keys, &fs));
        let diff = shifted.op.as_ref().expect("shifted keeps the symbolic form").sub(op);
        if !diff.is_right_linear() {
            o = o.merge(Outcome::fail(0, format!("difference of connections on {} is not right-linear", c.name)));
        }
        let dp = d_quantize(&s.twist, env, &p);
        let lhs = quantize(&s.twist, env, &shifted);
        let rhs = quantize(&s.twist, env, c).shifted(env, &dp);
        match (&lhs.op, &rhs.op) {
            (Some(l), Some(r)) => o = o.merge(l.compare(r)),
            _ => o = o.merge(lhs.map.compare(&rhs.map, &keys, env.order())),
        }
        o = o.merge(right_linearity(&s.deformed, &dp, &keys, &fs));
    }
    done(o)
}

fn conn_braided(s: &Session, _: &mut ChaCha8Rng) -> R {
    if let Some(r) = no_connections(s) {
        return r;
    }
    let fs = s.fs_low();
    let mut o = Outcome::ok();
    for (c, q) in s.connections.iter().zip(s.quantized()) {
        let keys = s.keys(&c.module);
        o = o.merge(s.undeformed.braided_leibniz(c, &keys, &fs)).merge(s.deformed.braided_leibniz(q, &keys, &fs));
    }
    done(o)
}

fn conn_sum(s: &Session, _: &mut ChaCha8Rng) -> R {
    let Some((i, j)) = s.pair() else { return skip("no connections declared") };
    let fs = s.fs_low();
    let (c, q) = (&s.connections, s.quantized());
    let (ka, kb) = (s.keys(&c[i].module), s.keys(&c[j].module));
    let keys = s.keys(&c[i].module.tensor(&c[j].module));
    let mut o = Outcome::ok();
    for (w, a, b) in [(&s.undeformed, &c[i], &c[j]), (&s.deformed, &q[i], &q[j])] {
        o = o.merge(w.sum_well_defined(a, b, &ka, &kb, &fs)).merge(w.sum_leibniz(a, b, &keys, &fs));
    }
    noted(o, format!("{} ⊕ {}", c[i].name, c[j].name))
}

fn conn_sum_equivariance(s: &Session, _: &mut ChaCha8Rng) -> R {
    let Some((i, j)) = s.pair() else { return skip("no connections declared") };
    let (c, q) = (&s.connections, s.quantized());
    let keys = s.keys(&c[i].module.tensor(&c[j].module));
    let xis = s.gens();
    let mut o = Outcome::ok();
    for (w, a, b) in [(&s.undeformed, &c[i], &c[j]), (&s.deformed, &q[i], &q[j])] {
        o = o.merge(w.sum_equivariance(a, b, &xis, &keys));
    }
    done(o)
}

fn conn_sum_assoc(s: &Session, _: &mut ChaCha8Rng) -> R {
    let Some([i, j, k]) = s.triple() else { return skip("needs three connections on distinct rank-one modules") };
    let (c, q) = (&s.connections, s.quantized());
    let three = c[i].module.tensor(&c[j].module).tensor(&c[k].module);
    let keys = s.keys(&three);
    let o = s.undeformed.sum_associativity(&c[i], &c[j], &c[k], &keys);
    let o = o.merge(s.deformed.sum_associativity(&q[i], &q[j], &q[k], &keys));
    noted(o, format!("({} ⊕ {}) ⊕ {}", c[i].name, c[j].name, c[k].name))
}

fn conn_sum_diagram(s: &Session, _: &mut ChaCha8Rng) -> R {
    let Some((i, j)) = s.pair() else { return skip("no connections declared") };
    let (c, q) = (&s.connections, s.quantized());
    let env = &s.env;
    let keys = s.keys(&c[i].module.tensor(&c[j].module));
    let top = s.deformed.sum(&q[i], &q[j]);
    let bottom = d_quantize_map(&s.twist, env, &s.undeformed.sum(&c[i], &c[j]).map);
    done(top.map.compare(&bottom, &keys, env.order()))
}

fn conn_dual(s: &Session, _: &mut ChaCha8Rng) -> R {
    if let Some(r) = no_connections(s) {
        return r;
    }
    let fs = s.fs_low();
    let mut o = Outcome::ok();
    let mut names = Vec::new();
    for (c, q) in s.connections.iter().zip(s.quantized()).take(3) {
        if c.module.len() != 1 {
            continue;
        }
        let atom = &c.module.atoms[0];
        let dual = atom.dual(&format!("{}'", atom.name));
        let keys = s.keys(&Module::of(&[&dual]));
        for (w, x) in [(&s.undeformed, c), (&s.deformed, q)] {
            match dual_connections(w, x, &dual, &keys, &fs) {
                Ok(r) => o = o.merge(r.all()),
                Err(Error::Precondition(why)) => return skip(&why),
                Err(e) => return Err(e),
            }
        }
        names.push(c.name.clone());
    }
    noted(o, format!("duals of {}", names.join(", ")))
}

fn curv_extension(s: &Session, _: &mut ChaCha8Rng) -> R {
    if let Some(r) = no_connections(s) {
        return r;
    }
    let fs = s.fs_low();
    let fkeys = s.env.form_keys(1, 0);
    let mut o = Outcome::ok();
    for (c, q) in s.connections.iter().zip(s.quantized()) {
        let keys = s.keys(&c.module);
        o = o
            .merge(s.undeformed.ext_well_defined(c, &keys, &fkeys, &fs))
            .merge(s.deformed.ext_well_defined(q, &keys, &fkeys, &fs));
    }
    done(o)
}

fn curv_linearity(s: &Session, _: &mut ChaCha8Rng) -> R {
    if let Some(r) = no_connections(s) {
        return r;
    }
    let fs = s.fs_low();
    let mut o = Outcome::ok();
    for (c, q) in s.connections.iter().zip(s.quantized()) {
        let keys = s.keys(&c.module);
        o = o.merge(s.undeformed.curvature_linearity(c, &keys, &fs)).merge(s.deformed.curvature_linearity(q, &keys, &fs));
    }
    done(o)
}

fn curv_sum(s: &Session, _: &mut ChaCha8Rng) -> R {
    let Some((i, j)) = s.pair() else { return skip("no connections declared") };
    let (c, q) = (&s.connections, s.quantized());
    let keys = s.keys(&c[i].module.tensor(&c[j].module));
    let mut o = Outcome::ok();
    for (w, a, b) in [(&s.undeformed, &c[i], &c[j]), (&s.deformed, &q[i], &q[j])] {
        o = o.merge(w.curvature_sum(a, b, &keys).0);
    }
    let mut notes = vec![format!("{} ⊕ {}", c[i].name, c[j].name)];
    let line = |k: usize| c[k].module.atoms[0].rank() == 1;
    if let Some(e) = (0..c.len()).find(|&k| line(k) && s.equivariant(&c[k])) {
        if let Some(f) = (0..c.len()).find(|&k| line(k) && c[k].module != c[e].module) {
            let keys = s.keys(&c[e].module.tensor(&c[f].module));
            let (id, vanish) = s.deformed.curvature_sum(&q[e], &q[f], &keys);
            o = o.merge(id).merge(vanish);
            notes.push(format!("mixed term vanishes for equivariant {} ⊕ {}", c[e].name, c[f].name));
        }
    }
    noted(o, notes.join("; "))
}

fn curv_twisted(s: &Session, _: &mut ChaCha8Rng) -> R {
    if let Some(r) = no_connections(s) {
        return r;
    }
    let env = &s.env;
    let mut o = Outcome::ok();
    let mut notes = Vec::new();
    for c in &s.connections {
        let keys = s.keys(&c.module);
        let t = twisted_curvature(&s.undeformed, &s.deformed, &s.twist, c, &keys);
        o = o.merge(t.identity);
        let zero = crate::morphism::Map::new(t.classical.src.clone(), t.classical.tgt.clone(), |_| crate::bimod::Elem::zero());
        let flat = t.classical.compare(&zero, &keys, env.order()).pass;
        let qflat = t.quantized.compare(&zero, &keys, env.order());
        if flat && !qflat.pass {
            notes.push(format!(
                "{} is flat but its quantization has curvature {}",
                c.name,
                render_on_basis(env, &t.quantized, &c.module)
            ));
        }
    }
    if notes.is_empty() {
        done(o)
    } else {
        noted(o, notes.join("; "))
    }
}

macro_rules! check {
    ($id:literal, $anchor:literal, [$($n:literal),*], $f:expr) => {
        CheckDef { id: $id, anchor: $anchor, needs: &[$($n),*], run: $f }
    };
}

/// Every registered check, dependencies first.
pub static CATALOG: &[CheckDef] = &[
    check!("hopf.axioms", "Hopf algebra axioms of the enveloping algebra", [], hopf_axioms),
    check!("twist.normalization", "twist normalization property", [], twist_normalization),
    check!("twist.cocycle", "twist 2-cocycle property", [], twist_cocycle),
    check!("twisted.hopf", "twisted Hopf algebra axioms", ["hopf.axioms", "twist.cocycle", "twist.normalization"], twisted_hopf),
    check!("module.algebra", "module algebra property of the realization", ["hopf.axioms"], module_algebra),
    check!("star.associativity", "associativity of the star product", ["twist.cocycle", "twist.normalization"], star_associativity),
    check!("star.unit", "unit of the star product", ["twist.normalization"], star_unit),
    check!("star.covariance", "covariance of the star product", ["twisted.hopf", "module.algebra"], star_covariance),
    check!("star.expectations", "expected star products and commutators", ["star.associativity"], star_expectations),
    check!("bimod.deformed", "star bimodule axioms and covariance", ["star.associativity", "star.covariance"], bimod_deformed),
    check!("calculus.derham", "nilpotent differential with graded Leibniz rule", ["bimod.deformed"], calculus_derham),
    check!("calculus.covariance", "equivariance of the exterior derivative", [], calculus_covariance),
    check!("adjoint.laws", "adjoint action on linear maps", ["hopf.axioms"], adjoint_laws_check),
    check!("dquant.homomorphism", "quantization map is multiplicative", ["twisted.hopf"], dquant_homomorphism),
    check!("dquant.intertwining", "quantization map intertwines adjoint actions", ["twisted.hopf", "adjoint.laws"], dquant_intertwining),
    check!("dquant.inverse", "quantization map is invertible", ["twist.normalization"], dquant_inverse),
    check!("dquant.restriction", "quantization preserves right linearity", ["dquant.homomorphism", "bimod.deformed"], dquant_restriction),
    check!("rmatrix.yang-baxter", "Yang-Baxter equation and quasitriangularity", ["twisted.hopf"], rmatrix_yang_baxter),
    check!("rmatrix.triangular", "triangularity of the twisted R-matrix", ["twisted.hopf"], rmatrix_triangular),
    check!("braid.equivariance", "braiding is invertible and equivariant", ["rmatrix.yang-baxter"], braid_equivariance),
    check!("braid.relations", "braid relations on triple tensor products", ["braid.equivariance"], braid_rel),
    check!("tensor-r.laws", "tensor product of maps over an R-matrix", ["braid.equivariance"], tensor_r),
    check!("phi.invertible", "invertibility of the deformed tensor isomorphism", ["twisted.hopf"], phi_invertible),
    check!("phi.diagram", "quantization commutes with tensor products of maps", ["tensor-r.laws", "dquant.homomorphism", "phi.invertible"], phi_diagram),
    check!("phi.coherence", "coherence of the tensor isomorphisms", ["phi.invertible"], phi_coherence),
    check!("quasi.algebra", "quasi-commutativity of the star algebra", ["rmatrix.triangular", "star.associativity"], quasi_algebra),
    check!("quasi.module", "quasi-commutativity of star modules", ["quasi.algebra", "bimod.deformed"], quasi_module),
    check!("quasi.left-linear", "quasi-left linearity of right-linear maps", ["quasi.module", "dquant.restriction"], quasi_left),
    check!("quasi.control", "quasi-commutativity fails for the trivial R-matrix", ["quasi.left-linear"], quasi_control),
    check!("calculus.graded-quasi", "graded quasi-commutativity of forms", ["quasi.algebra", "calculus.derham"], graded_quasi),
    check!("braid.descent", "braiding descends to tensor products over the algebra", ["braid.relations", "quasi.module"], braid_descent),
    check!("conn.leibniz", "right Leibniz rule for connections and their quantization", ["bimod.deformed", "calculus.derham", "dquant.restriction"], conn_leibniz),
    check!("conn.affine", "quantization is an affine isomorphism of connections", ["conn.leibniz"], conn_affine),
    check!("conn.braided-leibniz", "braided Leibniz rule for left actions", ["conn.leibniz", "quasi.module"], conn_braided),
    check!("conn.sum", "sum of connections is well defined", ["conn.braided-leibniz", "braid.descent", "phi.coherence"], conn_sum),
    check!("conn.sum-equivariance", "equivariance of the sum of connections", ["conn.sum"], conn_sum_equivariance),
    check!("conn.sum-associativity", "associativity of the sum of connections", ["conn.sum"], conn_sum_assoc),
    check!("conn.sum-diagram", "quantization commutes with sums of connections", ["conn.sum", "phi.diagram"], conn_sum_diagram),
    check!("conn.dual", "dual connections and their pairings", ["conn.leibniz", "rmatrix.triangular"], conn_dual),
    check!("curv.extension", "extension of a connection to forms", ["conn.leibniz", "calculus.graded-quasi"], curv_extension),
    check!("curv.linearity", "curvature is right linear", ["curv.extension"], curv_linearity),
    check!("curv.sum", "curvature of a sum of connections", ["curv.linearity", "conn.sum"], curv_sum),
    check!("curv.twisted", "curvature of a quantized connection", ["curv.linearity", "conn.affine"], curv_twisted),
];

/// Identities the catalog must cover, each named by its check anchor.
pub const REQUIRED_ANCHORS: &[&str] = &[
    "Hopf algebra axioms of the enveloping algebra",
    "twist normalization property",
    "twist 2-cocycle property",
    "twisted Hopf algebra axioms",
    "associativity of the star product",
    "unit of the star product",
    "covariance of the star product",
    "star bimodule axioms and covariance",
    "quantization map is multiplicative",
    "quantization map intertwines adjoint actions",
    "quantization preserves right linearity",
    "Yang-Baxter equation and quasitriangularity",
    "triangularity of the twisted R-matrix",
    "braiding is invertible and equivariant",
    "braid relations on triple tensor products",
    "tensor product of maps over an R-matrix",
    "invertibility of the deformed tensor isomorphism",
    "quantization commutes with tensor products of maps",
    "coherence of the tensor isomorphisms",
    "quasi-commutativity of the star algebra",
    "quasi-commutativity of star modules",
    "quasi-left linearity of right-linear maps",
    "nilpotent differential with graded Leibniz rule",
    "equivariance of the exterior derivative",
    "right Leibniz rule for connections and their quantization",
    "quantization is an affine isomorphism of connections",
    "graded quasi-commutativity of forms",
    "braided Leibniz rule for left actions",
    "braiding descends to tensor products over the algebra",
    "sum of connections is well defined",
    "associativity of the sum of connections",
    "dual connections and their pairings",
    "quantization commutes with sums of connections",
    "extension of a connection to forms",
    "curvature is right linear",
    "curvature of a sum of connections",
    "curvature of a quantized connection",
];
