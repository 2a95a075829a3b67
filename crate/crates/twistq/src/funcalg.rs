//! Polynomial functions on affine n-space with series coefficients, the
//! realization of Lie generators as vector fields, differential operators
//! in Weyl normal form, and the star product.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hopf::{Hopf, HopfElement, RMatrix, TensorElement, Twist, Word};
use crate::outcome::Outcome;
use crate::series::{accumulate, fmt_scalar, parse_scalar, DeformationSeries, Scalar};

/// Exponent vector of a monomial `x1^e1 ... xn^en`.
pub type Mono = Vec<u16>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    pub terms: BTreeMap<Mono, DeformationSeries>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(n: usize, s: DeformationSeries) -> Self {
        Self::monomial(vec![0; n], s)
    }

    pub fn monomial(e: Mono, s: DeformationSeries) -> Self {
        let mut p = Poly::zero();
        accumulate(&mut p.terms, e, s);
        p
    }

    pub fn var(n: usize, i: usize, order: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(e, DeformationSeries::one(order))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &Poly) {
        for (e, c) in &o.terms {
            accumulate(&mut self.terms, e.clone(), c.clone());
        }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            accumulate(&mut out.terms, e.clone(), c.neg_ref());
        }
        out
    }

    pub fn scale(&self, s: &DeformationSeries) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            accumulate(&mut out.terms, e.clone(), c.mul_ref(s));
        }
        out
    }

    pub fn scale_scalar(&self, s: &Scalar) -> Poly {
        let mut out = Poly::zero();
        if s.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c.scale(s));
        }
        out
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Mono = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                accumulate(&mut out.terms, e, ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn mul_mono(&self, m: &[u16]) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let e: Mono = e.iter().zip(m).map(|(a, b)| a + b).collect();
            out.terms.insert(e, c.clone());
        }
        out
    }

    /// `∂_i`.
    pub fn deriv(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                accumulate(&mut out.terms, f, c.scale(&Scalar::from_integer(BigInt::from(e[i]))));
            }
        }
        out
    }

    /// `∂^α`.
    pub fn deriv_multi(&self, alpha: &[u16]) -> Poly {
        let mut out = Poly::zero();
        'terms: for (e, c) in &self.terms {
            let mut f = e.clone();
            let mut k = Scalar::one();
            for i in 0..alpha.len() {
                if e[i] < alpha[i] {
                    continue 'terms;
                }
                for j in 0..alpha[i] {
                    k *= Scalar::from_integer(BigInt::from(e[i] - j));
                }
                f[i] -= alpha[i];
            }
            accumulate(&mut out.terms, f, c.scale(&k));
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }

    /// The `h^0` part.
    pub fn classical(&self) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            accumulate(&mut out.terms, e.clone(), c.part(0));
        }
        out
    }

    /// Lowest order at which `self` and `other` differ.
    pub fn compare(&self, other: &Poly) -> Outcome {
        let d = self.sub(other);
        match lowest(&d.terms) {
            None => Outcome::ok(),
            Some((v, e)) => Outcome::fail(v, render_term_sample(&d, &e, v)),
        }
    }

    /// Canonical rendering, ordered by `h`-power ascending then degree
    /// descending: `x1 x2 + 1/2 h`.
    pub fn render(&self) -> String {
        let mut items = Vec::new();
        for (e, c) in &self.terms {
            for (k, q) in c.coeffs().iter().enumerate() {
                if !q.is_zero() {
                    items.push((k, e.clone(), q.clone()));
                }
            }
        }
        render_items(items, |e| render_mono(e))
    }

    /// Parses `3/2 x1^2 x2 + h x1`.
    pub fn parse(text: &str, n: usize, order: usize) -> Result<Poly> {
        let mut p = Poly::zero();
        for t in parse_terms(text, n)? {
            if !t.extra.is_empty() {
                return Err(Error::Parse(format!("unexpected `{}` in polynomial", t.extra.join(" "))));
            }
            if t.hpow <= order {
                accumulate(&mut p.terms, t.exps, DeformationSeries::monomial(order, t.hpow, t.coeff));
            }
        }
        Ok(p)
    }
}

pub(crate) fn lowest<K: Clone>(terms: &BTreeMap<K, DeformationSeries>) -> Option<(usize, K)> {
    let mut best: Option<(usize, K)> = None;
    for (k, c) in terms {
        if let Some(v) = c.valuation() {
            if best.as_ref().is_none_or(|b| v < b.0) {
                best = Some((v, k.clone()));
            }
        }
    }
    best
}

fn render_term_sample(p: &Poly, e: &Mono, v: usize) -> String {
    let c = &p.terms[e];
    let mut one = Poly::zero();
    one.terms.insert(e.clone(), c.part(v));
    one.render()
}

pub fn render_mono(e: &[u16]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
        .collect();
    parts.join(" ")
}

/// Joins `(h-power, key, coefficient)` items into `a + b - c`, sorted by
/// `h`-power ascending, then by key degree descending.
pub(crate) fn render_items<K: Ord + Clone>(
    mut items: Vec<(usize, K, Scalar)>,
    key: impl Fn(&K) -> String,
) -> String
where
    K: KeyDegree,
{
    if items.is_empty() {
        return "0".into();
    }
    items.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.key_degree().cmp(&a.1.key_degree())).then(b.1.cmp(&a.1)));
    let mut out = String::new();
    for (i, (k, e, q)) in items.iter().enumerate() {
        let neg = q.is_negative();
        let mag = q.abs();
        let mut factors = Vec::new();
        if !mag.is_one() {
            factors.push(fmt_scalar(&mag));
        }
        match k {
            0 => {}
            1 => factors.push("h".into()),
            _ => factors.push(format!("h^{k}")),
        }
        let body = key(e);
        if !body.is_empty() {
            factors.push(body);
        }
        if factors.is_empty() {
            factors.push("1".into());
        }
        let term = factors.join(" ");
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    out
}

pub(crate) trait KeyDegree {
    fn key_degree(&self) -> usize;
}

impl KeyDegree for Mono {
    fn key_degree(&self) -> usize {
        self.iter().map(|&x| x as usize).sum()
    }
}

/// One parsed additive term.
#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub coeff: Scalar,
    pub hpow: usize,
    pub exps: Mono,
    /// Tokens that are neither numbers, `h` nor variables, in order.
    pub extra: Vec<String>,
}

pub(crate) fn parse_terms(text: &str, n: usize) -> Result<Vec<Term>> {
    let spaced = text.replace('+', " + ").replace('-', " - ").replace('*', " ");
    let mut terms = Vec::new();
    let mut cur: Option<Term> = None;
    let mut sign = Scalar::one();
    let fresh = |sign: &Scalar| Term { coeff: sign.clone(), hpow: 0, exps: vec![0; n], extra: Vec::new() };
    let mut expect_term = true;
    for tok in spaced.split_whitespace() {
        match tok {
            "+" | "-" => {
                if let Some(t) = cur.take() {
                    terms.push(t);
                    sign = Scalar::one();
                } else if !expect_term {
                    return Err(Error::Parse(format!("dangling `{tok}` in `{text}`")));
                }
                if tok == "-" {
                    sign = -sign;
                }
                expect_term = true;
            }
            _ => {
                let t = cur.get_or_insert_with(|| fresh(&sign));
                expect_term = false;
                apply_factor(t, tok, n, text)?;
            }
        }
    }
    match cur {
        Some(t) => terms.push(t),
        None if terms.is_empty() && !text.trim().is_empty() => {
            return Err(Error::Parse(format!("no terms in `{text}`")))
        }
        None if !terms.is_empty() => return Err(Error::Parse(format!("trailing operator in `{text}`"))),
        None => return Err(Error::Parse("empty expression".into())),
    }
    Ok(terms)
}

fn apply_factor(t: &mut Term, tok: &str, n: usize, text: &str) -> Result<()> {
    let bad = || Error::Parse(format!("bad factor `{tok}` in `{text}`"));
    if tok.starts_with(|c: char| c.is_ascii_digit()) {
        t.coeff *= parse_scalar(tok)?;
        return Ok(());
    }
    let (base, pow) = match tok.split_once('^') {
        Some((b, p)) if !tok.starts_with("dx") => (b, p.parse::<usize>().map_err(|_| bad())?),
        _ => (tok, 1),
    };
    if base == "h" {
        t.hpow += pow;
        return Ok(());
    }
    if let Some(idx) = base.strip_prefix('x') {
        let i: usize = idx.parse().map_err(|_| bad())?;
        if i == 0 || i > n {
            return Err(Error::Parse(format!("variable `{base}` outside 1..={n}")));
        }
        t.exps[i - 1] += pow as u16;
        return Ok(());
    }
    if tok.chars().next().is_some_and(|c| c.is_alphabetic()) {
        t.extra.push(tok.to_string());
        return Ok(());
    }
    Err(bad())
}

/// All monomials in `n` variables of total degree at most `d`, by degree.
pub fn monomials(n: usize, d: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    for deg in 0..=d {
        let mut cur = vec![0u16; n];
        fill(&mut out, &mut cur, 0, deg);
    }
    out
}

fn fill(out: &mut Vec<Mono>, cur: &mut Mono, i: usize, left: usize) {
    if i + 1 == cur.len() || cur.is_empty() {
        if !cur.is_empty() {
            cur[i] = left as u16;
            out.push(cur.clone());
            cur[i] = 0;
        } else if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for k in (0..=left).rev() {
        cur[i] = k as u16;
        fill(out, cur, i + 1, left - k);
    }
    cur[i] = 0;
}

/// Differential operator `Σ_α p_α ∂^α` with the multipliers on the left.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiffOp {
    pub terms: BTreeMap<Mono, Poly>,
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp::default()
    }

    pub fn identity(n: usize, order: usize) -> Self {
        Self::mult(Poly::constant(n, DeformationSeries::one(order)), n)
    }

    /// Multiplication by `p`.
    pub fn mult(p: Poly, n: usize) -> Self {
        let mut d = DiffOp::zero();
        if !p.is_zero() {
            d.terms.insert(vec![0; n], p);
        }
        d
    }

    /// `∂^α`.
    pub fn partial(alpha: Mono, order: usize) -> Self {
        let n = alpha.len();
        let mut d = DiffOp::zero();
        d.terms.insert(alpha, Poly::constant(n, DeformationSeries::one(order)));
        d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_assign(&mut self, o: &DiffOp) {
        for (a, p) in &o.terms {
            let e = self.terms.entry(a.clone()).or_default();
            e.add_assign(p);
            if e.is_zero() {
                self.terms.remove(a);
            }
        }
    }

    pub fn add(&self, o: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn sub(&self, o: &DiffOp) -> DiffOp {
        self.add(&o.scale_scalar(&-Scalar::one()))
    }

    pub fn scale(&self, s: &DeformationSeries) -> DiffOp {
        let mut out = DiffOp::zero();
        for (a, p) in &self.terms {
            let q = p.scale(s);
            if !q.is_zero() {
                out.terms.insert(a.clone(), q);
            }
        }
        out
    }

    pub fn scale_scalar(&self, s: &Scalar) -> DiffOp {
        let mut out = DiffOp::zero();
        for (a, p) in &self.terms {
            let q = p.scale_scalar(s);
            if !q.is_zero() {
                out.terms.insert(a.clone(), q);
            }
        }
        out
    }

    /// Left multiplication by `p`.
    pub fn premul(&self, p: &Poly) -> DiffOp {
        let mut out = DiffOp::zero();
        for (a, q) in &self.terms {
            let r = p.mul(q);
            if !r.is_zero() {
                out.terms.insert(a.clone(), r);
            }
        }
        out
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, p) in &self.terms {
            out.add_assign(&p.mul(&f.deriv_multi(a)));
        }
        out
    }

    /// `self ∘ other` via `∂^α g = Σ_γ C(α,γ) (∂^γ g) ∂^{α-γ}`.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for (alpha, f) in &self.terms {
            for gamma in sub_multi_indices(alpha) {
                let binom = multi_binomial(alpha, &gamma);
                let rest: Mono = alpha.iter().zip(&gamma).map(|(a, g)| a - g).collect();
                for (beta, g) in &other.terms {
                    let dg = g.deriv_multi(&gamma);
                    if dg.is_zero() {
                        continue;
                    }
                    let coef = f.mul(&dg).scale_scalar(&binom);
                    let idx: Mono = rest.iter().zip(beta).map(|(a, b)| a + b).collect();
                    let mut single = DiffOp::zero();
                    if !coef.is_zero() {
                        single.terms.insert(idx, coef);
                    }
                    out.add_assign(&single);
                }
            }
        }
        out
    }

    /// Highest derivative order.
    pub fn order(&self) -> usize {
        self.terms.keys().map(|a| a.iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(a, p)| {
                let d = render_partial(a);
                if d.is_empty() {
                    format!("({})", p.render())
                } else {
                    format!("({}) {}", p.render(), d)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn render_partial(a: &[u16]) -> String {
    a.iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("∂{}", i + 1) } else { format!("∂{}^{k}", i + 1) })
        .collect::<Vec<_>>()
        .join(" ")
}

fn sub_multi_indices(a: &[u16]) -> Vec<Mono> {
    let mut out = vec![Vec::new()];
    for &k in a {
        let mut next = Vec::new();
        for v in &out {
            for j in 0..=k {
                let mut w = v.clone();
                w.push(j);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn multi_binomial(a: &[u16], g: &[u16]) -> Scalar {
    let mut r = BigInt::one();
    for (&n, &k) in a.iter().zip(g) {
        let mut c = BigInt::one();
        for j in 0..k {
            c = c * BigInt::from(n - j) / BigInt::from(j + 1);
        }
        r *= c;
    }
    Scalar::from_integer(r)
}

/// Vector fields `X_a = Σ_i X_a^i ∂_i` realizing the Lie generators on
/// `A = K[x1..xn]`.
pub struct Realization {
    n: usize,
    order: usize,
    fields: Vec<Vec<Poly>>,
    word_ops: Mutex<HashMap<Word, Arc<DiffOp>>>,
}

impl std::fmt::Debug for Realization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Realization").field("n", &self.n).field("fields", &self.fields).finish()
    }
}

impl Realization {
    /// Checks `[X_a, X_b] = Σ_k c^k_{ab} X_k` component by component.
    pub fn new(hopf: &Hopf, n: usize, fields: Vec<Vec<Poly>>) -> Result<Self> {
        let lie = hopf.lie();
        let order = hopf.ctx().order;
        if fields.len() != lie.dim() || fields.iter().any(|f| f.len() != n) {
            return Err(Error::Realization(format!(
                "need {} vector fields with {n} components each",
                lie.dim()
            )));
        }
        let r = Realization { n, order, fields, word_ops: Mutex::new(HashMap::new()) };
        for a in 0..lie.dim() {
            for b in (a + 1)..lie.dim() {
                for i in 0..n {
                    let lhs = r.apply_field(a, &r.fields[b][i]).sub(&r.apply_field(b, &r.fields[a][i]));
                    let mut rhs = Poly::zero();
                    for (k, c) in lie.bracket(a, b) {
                        rhs.add_assign(&r.fields[k][i].scale_scalar(&c));
                    }
                    if lhs != rhs {
                        return Err(Error::Realization(format!(
                            "[{}, {}] is realized as {} in component {}, expected {}",
                            hopf.names()[a],
                            hopf.names()[b],
                            lhs.render(),
                            i + 1,
                            rhs.render()
                        )));
                    }
                }
            }
        }
        Ok(r)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn field(&self, g: usize) -> &[Poly] {
        &self.fields[g]
    }

    /// `X_g(f)`.
    pub fn apply_field(&self, g: usize, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for i in 0..self.n {
            if !self.fields[g][i].is_zero() {
                out.add_assign(&self.fields[g][i].mul(&f.deriv(i)));
            }
        }
        out
    }

    /// The operator of a PBW word: the composition of its letters.
    pub fn word_op(&self, w: &[u8]) -> Arc<DiffOp> {
        if let Some(hit) = self.word_ops.lock().unwrap().get(w) {
            return hit.clone();
        }
        let op = if w.is_empty() {
            DiffOp::identity(self.n, self.order)
        } else {
            let g = w[0] as usize;
            let mut first = DiffOp::zero();
            for i in 0..self.n {
                if !self.fields[g][i].is_zero() {
                    let mut alpha = vec![0; self.n];
                    alpha[i] = 1;
                    first.terms.insert(alpha, self.fields[g][i].clone());
                }
            }
            first.compose(&self.word_op(&w[1..]))
        };
        let op = Arc::new(op);
        self.word_ops.lock().unwrap().insert(w.to_vec(), op.clone());
        op
    }

    pub fn op(&self, xi: &HopfElement) -> DiffOp {
        let mut out = DiffOp::zero();
        for (w, c) in &xi.terms {
            out.add_assign(&self.word_op(w).scale(c));
        }
        out
    }

    /// `ξ ▷ f`.
    pub fn act(&self, xi: &HopfElement, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in &xi.terms {
            out.add_assign(&self.word_op(w).apply(f).scale(c));
        }
        out
    }

    /// `Σ c (T₁ ▷ f)(T₂ ▷ g)` for an arity-2 tensor `T`.
    pub fn bilinear(&self, t: &TensorElement, f: &Poly, g: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ws, c) in &t.terms {
            let a = self.word_op(&ws[0]).apply(f);
            if a.is_zero() {
                continue;
            }
            let b = self.word_op(&ws[1]).apply(g);
            out.add_assign(&a.mul(&b).scale(c));
        }
        out
    }

    /// `f ⋆ g = (f̄^α ▷ f)(f̄_α ▷ g)`; the commutative product without a twist.
    pub fn star(&self, twist: Option<&Twist>, f: &Poly, g: &Poly) -> Poly {
        match twist {
            Some(tw) => self.bilinear(tw.f_inv(), f, g),
            None => f.mul(g),
        }
    }

    pub fn star_commutator(&self, twist: Option<&Twist>, f: &Poly, g: &Poly) -> Poly {
        self.star(twist, f, g).sub(&self.star(twist, g, f))
    }

    /// `a ⋆ b = (R̄^α ▷ b) ⋆ (R̄_α ▷ a)` on all pairs of sample monomials.
    pub fn quasi_commutative(&self, twist: Option<&Twist>, r: &RMatrix, samples: &[Poly]) -> Outcome {
        let mut out = Outcome::ok();
        for a in samples {
            for b in samples {
                let lhs = self.star(twist, a, b);
                let mut rhs = Poly::zero();
                for (ws, c) in &r.r_inv().terms {
                    let rb = self.word_op(&ws[0]).apply(b);
                    let ra = self.word_op(&ws[1]).apply(a);
                    rhs.add_assign(&self.star(twist, &rb, &ra).scale(c));
                }
                out = out.merge(lhs.compare(&rhs));
            }
        }
        out
    }

    /// `(f ⋆ g) ⋆ k = f ⋆ (g ⋆ k)` on all triples.
    pub fn associativity(&self, twist: Option<&Twist>, samples: &[Poly]) -> Outcome {
        let mut out = Outcome::ok();
        let mut pair: HashMap<(usize, usize), Poly> = HashMap::new();
        for i in 0..samples.len() {
            for j in 0..samples.len() {
                pair.insert((i, j), self.star(twist, &samples[i], &samples[j]));
            }
        }
        for i in 0..samples.len() {
            for j in 0..samples.len() {
                for k in 0..samples.len() {
                    let lhs = self.star(twist, &pair[&(i, j)], &samples[k]);
                    let rhs = self.star(twist, &samples[i], &pair[&(j, k)]);
                    out = out.merge(lhs.compare(&rhs));
                    if !out.pass {
                        return out;
                    }
                }
            }
        }
        out
    }

    /// `ξ ▷ (f ⋆ g) = (ξ_{1F} ▷ f) ⋆ (ξ_{2F} ▷ g)`.
    pub fn covariance(&self, twist: &Twist, xis: &[HopfElement], samples: &[Poly]) -> Outcome {
        let mut out = Outcome::ok();
        for xi in xis {
            let d = twist.coproduct(xi);
            for f in samples {
                for g in samples {
                    let lhs = self.act(xi, &self.star(Some(twist), f, g));
                    let mut rhs = Poly::zero();
                    for (ws, c) in &d.terms {
                        let a = self.word_op(&ws[0]).apply(f);
                        let b = self.word_op(&ws[1]).apply(g);
                        rhs.add_assign(&self.star(Some(twist), &a, &b).scale(c));
                    }
                    out = out.merge(lhs.compare(&rhs));
                }
            }
        }
        out
    }

    /// `ξ ▷ (fg) = (ξ₁ ▷ f)(ξ₂ ▷ g)` and `ξ ▷ 1 = ε(ξ)`.
    pub fn module_algebra(&self, hopf: &Hopf, xis: &[HopfElement], samples: &[Poly]) -> Outcome {
        let mut out = Outcome::ok();
        let one = Poly::constant(self.n, DeformationSeries::one(self.order));
        for xi in xis {
            let d = hopf.coproduct(xi);
            out = out.merge(self.act(xi, &one).compare(&one.scale(&hopf.counit(xi))));
            for f in samples {
                for g in samples {
                    out = out.merge(self.act(xi, &f.mul(g)).compare(&self.bilinear(&d, f, g)));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{LiePresentation, TwistSpec};
    use crate::series::Ctx;

    fn q(n: i64) -> Scalar {
        Scalar::from_integer(BigInt::from(n))
    }

    fn plane(order: usize) -> (Arc<Hopf>, Realization) {
        let names: Vec<String> = ["d1", "d2", "L"].iter().map(|s| s.to_string()).collect();
        let lie = LiePresentation::from_brackets(names, &[(0, 2, vec![(1, q(1))])]).unwrap();
        let hp = Arc::new(Hopf::new(Ctx::new(order), lie));
        let p = |s: &str| Poly::parse(s, 2, order).unwrap();
        let fields = vec![vec![p("1"), p("0")], vec![p("0"), p("1")], vec![p("0"), p("x1")]];
        let real = Realization::new(&hp, 2, fields).unwrap();
        (hp, real)
    }

    fn moyal(hp: &Arc<Hopf>, theta: i64) -> Twist {
        Twist::build(hp.clone(), &TwistSpec::Moyal { theta: vec![(0, 1, q(theta))] }).unwrap()
    }

    #[test]
    fn parse_and_render() {
        let p = Poly::parse("3/2 x1^2 x2 + h x1 - 2", 2, 2).unwrap();
        assert_eq!(p.render(), "3/2 x1^2 x2 - 2 + h x1");
        assert_eq!(Poly::parse("x1 x2 + 1/2 h", 2, 2).unwrap().render(), "x1 x2 + 1/2 h");
        assert_eq!(Poly::zero().render(), "0");
        assert!(Poly::parse("x3", 2, 2).is_err());
        assert!(Poly::parse("x1 +", 2, 2).is_err());
        assert!(Poly::parse("x1 dx2", 2, 2).is_err());
        assert_eq!(Poly::parse("-x1", 2, 1).unwrap().render(), "-x1");
    }

    #[test]
    fn act_examples() {
        let (hp, real) = plane(2);
        let p = |s: &str| Poly::parse(s, 2, 2).unwrap();
        assert_eq!(real.act(&hp.gen(0), &p("x1 x2")), p("x2"));
        assert_eq!(real.act(&hp.unit(), &p("x1 x2 + 3")), p("x1 x2 + 3"));
        assert_eq!(real.act(&hp.word(&[0, 1]), &p("x1 x2")), p("1"));
    }

    #[test]
    fn bad_realization_is_rejected() {
        let (hp, _) = plane(1);
        let p = |s: &str| Poly::parse(s, 2, 1).unwrap();
        let fields = vec![vec![p("1"), p("0")], vec![p("0"), p("1")], vec![p("0"), p("x2")]];
        assert!(matches!(Realization::new(&hp, 2, fields), Err(Error::Realization(_))));
    }

    #[test]
    fn weyl_composition_matches_application() {
        let (hp, real) = plane(2);
        let p = |s: &str| Poly::parse(s, 2, 2).unwrap();
        let a = real.op(&hp.word(&[0, 2]));
        let b = real.op(&hp.word(&[2, 2]));
        let f = p("x1^3 x2^2 + x2");
        assert_eq!(a.compose(&b).apply(&f), a.apply(&b.apply(&f)));
    }

    #[test]
    fn moyal_star_examples() {
        let (hp, real) = plane(2);
        let tw = moyal(&hp, 1);
        let p = |s: &str| Poly::parse(s, 2, 2).unwrap();
        assert_eq!(real.star(Some(&tw), &p("x1"), &p("x2")), p("x1 x2 + 1/2 h"));
        assert_eq!(real.star(Some(&tw), &p("x2"), &p("x1")), p("x1 x2 - 1/2 h"));
        assert_eq!(real.star_commutator(Some(&tw), &p("x1"), &p("x2")), p("h"));
        assert_eq!(real.star(Some(&tw), &p("x1^2"), &p("1")), p("x1^2"));
        let flat = moyal(&hp, 0);
        assert_eq!(real.star(Some(&flat), &p("x1"), &p("x2")), p("x1 x2"));
    }

    #[test]
    fn star_laws_on_low_degree_monomials() {
        let (hp, real) = plane(2);
        let tw = moyal(&hp, 1);
        let ms: Vec<Poly> = monomials(2, 2).into_iter().map(|e| Poly::monomial(e, hp.ctx().one())).collect();
        assert!(real.associativity(Some(&tw), &ms).pass);
        let xis: Vec<HopfElement> = hp.words_up_to(2).iter().map(|w| hp.word(w)).collect();
        assert!(real.covariance(&tw, &xis, &ms[..4]).pass);
        assert!(real.module_algebra(&hp, &xis, &ms).pass);
        let rf = RMatrix::twisted(&tw, &RMatrix::trivial(&hp));
        assert!(real.quasi_commutative(Some(&tw), &rf, &ms).pass);
        let bad = real.quasi_commutative(Some(&tw), &RMatrix::trivial(&hp), &ms);
        assert_eq!(bad.first_order, Some(1));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2, 4).len(), 15);
        assert_eq!(monomials(1, 4).len(), 5);
        assert_eq!(monomials(3, 2).len(), 10);
    }
}
