//! The scenario format and the session built from it.
//!
//! A scenario is a line-oriented text file made of `[section]` headers and
//! `key = value` lines; `#` starts a comment. Grammar:
//!
//! ```text
//! [scenario]      name, order, dim, degree, star-degree, samples, seed, calculus
//! [algebra]       generators = a b c
//!                 bracket a b = <linear combination of generators>
//!                 field a = <poly>, <poly>, ...        (one per coordinate)
//! [twist]         kind = identity | moyal | jordanian
//!                 theta a b = <rational>               (moyal)
//!                 h = <gen>, e = <gen>                 (jordanian)
//!                 fault = drop-order <k> | trivial-r
//! [rmatrix]       kind = trivial | exp
//!                 term a b = <rational>                (R = exp(h Σ c X_a ⊗ X_b))
//! [module NAME]   rank = <k>
//!                 action a = <row>; <row>; ...         (rows of comma-separated polys)
//! [morphism NAME] on = <module>
//!                 kind = mul <poly> | act <gen> | random | random-linear
//! [connection NAME]
//!                 on = <module>
//!                 forms = <row>; <row>; ...            (1-form literals)
//! [expect]        star <f> | <g> = <poly>
//!                 commutator <f> | <g> = <poly>
//! [suite]         checks = all | <id>, <id>, ...
//! ```

use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bimod::{Atom, Env, Module, World};
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::funcalg::{Poly, Realization};
use crate::hopf::{drop_order, Hopf, LiePresentation, RMatrix, TensorElement, Twist, TwistSpec};
use crate::morphism::{BraidReport, OpMatrix, QuantizationReport};
use crate::series::{parse_scalar, Ctx, DeformationSeries, Scalar};


/// A literal together with the line it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Lit {
    pub line: usize,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TwistDecl {
    Identity,
    Moyal(Vec<(usize, usize, Scalar)>),
    Jordanian { h: usize, e: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Fault {
    /// Removes the `h^k` part of `F`; `F⁻¹` is recomputed from the result.
    DropOrder(usize),
    /// The deformed world keeps `R = 1⊗1`.
    TrivialR,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleDecl {
    pub name: String,
    pub line: usize,
    pub rank: usize,
    pub actions: Vec<(usize, Lit)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MorphKind {
    Mul(Lit),
    Act(usize),
    Random,
    RandomLinear,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MorphDecl {
    pub name: String,
    pub line: usize,
    pub module: String,
    pub kind: MorphKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConnDecl {
    pub name: String,
    pub line: usize,
    pub module: String,
    pub forms: Lit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expect {
    pub commutator: bool,
    pub f: Lit,
    pub g: Lit,
    pub value: Lit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub source: String,
    pub order: usize,
    pub dim: usize,
    pub degree: usize,
    pub star_degree: usize,
    pub samples: usize,
    pub seed: u64,
    pub calculus: bool,
    pub generators: Vec<String>,
    pub brackets: Vec<(usize, usize, Vec<(usize, Scalar)>)>,
    pub fields: Vec<Option<Vec<Lit>>>,
    pub twist: TwistDecl,
    pub fault: Option<Fault>,
    pub rmatrix: Vec<(usize, usize, Scalar)>,
    pub modules: Vec<ModuleDecl>,
    pub morphisms: Vec<MorphDecl>,
    pub connections: Vec<ConnDecl>,
    pub expectations: Vec<Expect>,
    pub checks: Option<Vec<String>>,
}

fn err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

fn num<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| err(line, format!("`{key}` expects a non-negative integer, got `{v}`")))
}

fn scalar(line: usize, v: &str) -> Result<Scalar> {
    parse_scalar(v.trim()).map_err(|_| err(line, format!("`{v}` is not a rational number")))
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Scenario,
    Algebra,
    Twist,
    RMatrix,
    Module(usize),
    Morphism(usize),
    Connection(usize),
    Expect,
    Suite,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario> {
        let mut sc = Scenario {
            name: "scenario".into(),
            source: text.to_string(),
            order: 0,
            dim: 0,
            degree: 2,
            star_degree: 0,
            samples: 8,
            seed: 0,
            calculus: true,
            generators: Vec::new(),
            brackets: Vec::new(),
            fields: Vec::new(),
            twist: TwistDecl::Identity,
            fault: None,
            rmatrix: Vec::new(),
            modules: Vec::new(),
            morphisms: Vec::new(),
            connections: Vec::new(),
            expectations: Vec::new(),
            checks: None,
        };
        let mut section = Section::None;
        let mut twist_kind: Option<(usize, String)> = None;
        let mut theta = Vec::new();
        let mut jord: (Option<usize>, Option<usize>) = (None, None);
        let mut r_kind = "trivial".to_string();
        let mut module_on: Vec<Option<String>> = Vec::new();
        let mut conn_parts: Vec<(Option<String>, Option<Lit>)> = Vec::new();
        let mut morph_parts: Vec<(Option<String>, Option<MorphKind>)> = Vec::new();
        let mut morph_names: Vec<(String, usize)> = Vec::new();
        let mut conn_names: Vec<(String, usize)> = Vec::new();
        let mut seen_order = false;
        let mut seen_dim = false;

        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(head) = line.strip_prefix('[') {
                let head = head.strip_suffix(']').ok_or_else(|| err(ln, "unterminated section header"))?;
                let mut parts = head.split_whitespace();
                let kind = parts.next().unwrap_or("");
                let name = parts.next();
                if parts.next().is_some() {
                    return Err(err(ln, "section headers take at most one name"));
                }
                let need_name = |what: &str| name.map(str::to_string).ok_or_else(|| err(ln, format!("[{what}] needs a name")));
                section = match kind {
                    "scenario" => Section::Scenario,
                    "algebra" => Section::Algebra,
                    "twist" => Section::Twist,
                    "rmatrix" => Section::RMatrix,
                    "expect" => Section::Expect,
                    "suite" => Section::Suite,
                    "module" => {
                        let n = need_name("module")?;
                        if sc.modules.iter().any(|m| m.name == n) {
                            return Err(err(ln, format!("module `{n}` declared twice")));
                        }
                        sc.modules.push(ModuleDecl { name: n, line: ln, rank: 0, actions: Vec::new() });
                        module_on.push(None);
                        Section::Module(sc.modules.len() - 1)
                    }
                    "morphism" => {
                        let n = need_name("morphism")?;
                        if morph_names.iter().any(|(m, _)| *m == n) {
                            return Err(err(ln, format!("morphism `{n}` declared twice")));
                        }
                        morph_names.push((n, ln));
                        morph_parts.push((None, None));
                        Section::Morphism(morph_parts.len() - 1)
                    }
                    "connection" => {
                        let n = need_name("connection")?;
                        if conn_names.iter().any(|(m, _)| *m == n) {
                            return Err(err(ln, format!("connection `{n}` declared twice")));
                        }
                        conn_names.push((n, ln));
                        conn_parts.push((None, None));
                        Section::Connection(conn_parts.len() - 1)
                    }
                    other => return Err(err(ln, format!("unknown section `[{other}]`"))),
                };
                continue;
            }
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| err(ln, format!("expected `key = value`, got `{line}`")))?;
            let lhs: Vec<&str> = lhs.split_whitespace().collect();
            let rhs = rhs.trim();
            let key = *lhs.first().ok_or_else(|| err(ln, "missing key"))?;
            let args = &lhs[1..];
            let no_args = || if args.is_empty() { Ok(()) } else { Err(err(ln, format!("`{key}` takes no arguments"))) };
            let gen = |name: &str, sc: &Scenario| {
                sc.generators.iter().position(|g| g == name).ok_or_else(|| err(ln, format!("unknown generator `{name}`")))
            };
            let lit = || Lit { line: ln, text: rhs.to_string() };
            match section {
                Section::None => return Err(err(ln, "entry outside of any section")),
                Section::Scenario => {
                    no_args()?;
                    match key {
                        "name" => sc.name = rhs.to_string(),
                        "order" => {
                            sc.order = num(ln, key, rhs)?;
                            seen_order = true;
                        }
                        "dim" => {
                            sc.dim = num(ln, key, rhs)?;
                            seen_dim = true;
                        }
                        "degree" => sc.degree = num(ln, key, rhs)?,
                        "star-degree" => sc.star_degree = num(ln, key, rhs)?,
                        "samples" => sc.samples = num(ln, key, rhs)?,
                        "seed" => sc.seed = num(ln, key, rhs)?,
                        "calculus" => {
                            sc.calculus = match rhs {
                                "de-rham" => true,
                                "none" => false,
                                o => return Err(err(ln, format!("calculus is `de-rham` or `none`, got `{o}`"))),
                            }
                        }
                        o => return Err(err(ln, format!("unknown scenario key `{o}`"))),
                    }
                }
                Section::Algebra => match key {
                    "generators" => {
                        no_args()?;
                        if !sc.generators.is_empty() {
                            return Err(err(ln, "generators declared twice"));
                        }
                        sc.generators = rhs.split_whitespace().map(str::to_string).collect();
                        if sc.generators.is_empty() {
                            return Err(err(ln, "at least one generator is required"));
                        }
                        sc.fields = vec![None; sc.generators.len()];
                    }
                    "bracket" => {
                        let [a, b] = args else { return Err(err(ln, "usage: bracket <a> <b> = <combination>")) };
                        let (a, b) = (gen(a, &sc)?, gen(b, &sc)?);
                        let comb = parse_lincomb(ln, rhs, &sc.generators)?;
                        sc.brackets.push((a, b, comb));
                    }
                    "field" => {
                        let [a] = args else { return Err(err(ln, "usage: field <generator> = <poly>, ...")) };
                        let a = gen(a, &sc)?;
                        if sc.fields[a].is_some() {
                            return Err(err(ln, format!("field of `{}` declared twice", sc.generators[a])));
                        }
                        sc.fields[a] = Some(rhs.split(',').map(|s| Lit { line: ln, text: s.trim().to_string() }).collect());
                    }
                    o => return Err(err(ln, format!("unknown algebra key `{o}`"))),
                },
                Section::Twist => match key {
                    "kind" => {
                        no_args()?;
                        twist_kind = Some((ln, rhs.to_string()));
                    }
                    "theta" => {
                        let [a, b] = args else { return Err(err(ln, "usage: theta <a> <b> = <rational>")) };
                        theta.push((gen(a, &sc)?, gen(b, &sc)?, scalar(ln, rhs)?));
                    }
                    "h" => jord.0 = Some(gen(rhs, &sc)?),
                    "e" => jord.1 = Some(gen(rhs, &sc)?),
                    "fault" => {
                        no_args()?;
                        let parts: Vec<&str> = rhs.split_whitespace().collect();
                        sc.fault = Some(match parts.as_slice() {
                            ["drop-order", k] => Fault::DropOrder(num(ln, "drop-order", k)?),
                            ["trivial-r"] => Fault::TrivialR,
                            _ => return Err(err(ln, format!("unknown fault `{rhs}`"))),
                        });
                    }
                    o => return Err(err(ln, format!("unknown twist key `{o}`"))),
                },
                Section::RMatrix => match key {
                    "kind" => {
                        no_args()?;
                        r_kind = rhs.to_string();
                    }
                    "term" => {
                        let [a, b] = args else { return Err(err(ln, "usage: term <a> <b> = <rational>")) };
                        sc.rmatrix.push((gen(a, &sc)?, gen(b, &sc)?, scalar(ln, rhs)?));
                    }
                    o => return Err(err(ln, format!("unknown rmatrix key `{o}`"))),
                },
                Section::Module(m) => match key {
                    "rank" => {
                        no_args()?;
                        sc.modules[m].rank = num(ln, key, rhs)?;
                    }
                    "action" => {
                        let [a] = args else { return Err(err(ln, "usage: action <generator> = <rows>")) };
                        let a = gen(a, &sc)?;
                        sc.modules[m].actions.push((a, lit()));
                    }
                    "on" => {
                        module_on[m] = Some(rhs.to_string());
                    }
                    o => return Err(err(ln, format!("unknown module key `{o}`"))),
                },
                Section::Morphism(m) => match key {
                    "on" => morph_parts[m].0 = Some(rhs.to_string()),
                    "kind" => {
                        let (head, rest) = rhs.split_once(char::is_whitespace).unwrap_or((rhs, ""));
                        let rest = rest.trim();
                        morph_parts[m].1 = Some(match head {
                            "mul" if !rest.is_empty() => MorphKind::Mul(Lit { line: ln, text: rest.to_string() }),
                            "act" if !rest.is_empty() => MorphKind::Act(gen(rest, &sc)?),
                            "random" if rest.is_empty() => MorphKind::Random,
                            "random-linear" if rest.is_empty() => MorphKind::RandomLinear,
                            _ => return Err(err(ln, format!("unknown morphism kind `{rhs}`"))),
                        });
                    }
                    o => return Err(err(ln, format!("unknown morphism key `{o}`"))),
                },
                Section::Connection(c) => match key {
                    "on" => conn_parts[c].0 = Some(rhs.to_string()),
                    "forms" => conn_parts[c].1 = Some(lit()),
                    o => return Err(err(ln, format!("unknown connection key `{o}`"))),
                },
                Section::Expect => {
                    let commutator = match key {
                        "star" => false,
                        "commutator" => true,
                        o => return Err(err(ln, format!("unknown expectation `{o}`"))),
                    };
                    let joined = args.join(" ");
                    let (f, g) = joined.split_once('|').ok_or_else(|| err(ln, "usage: star <f> | <g> = <poly>"))?;
                    sc.expectations.push(Expect {
                        commutator,
                        f: Lit { line: ln, text: f.trim().to_string() },
                        g: Lit { line: ln, text: g.trim().to_string() },
                        value: lit(),
                    });
                }
                Section::Suite => match key {
                    "checks" => {
                        no_args()?;
                        sc.checks = if rhs == "all" {
                            None
                        } else {
                            Some(rhs.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
                        };
                    }
                    o => return Err(err(ln, format!("unknown suite key `{o}`"))),
                },
            }
        }

        if !seen_order || sc.order == 0 {
            return Err(err(0, "[scenario] needs `order` ≥ 1"));
        }
        if !seen_dim || sc.dim == 0 {
            return Err(err(0, "[scenario] needs `dim` ≥ 1"));
        }
        if sc.degree == 0 {
            return Err(err(0, "`degree` must be ≥ 1"));
        }
        if sc.star_degree == 0 {
            sc.star_degree = sc.degree;
        }
        if sc.generators.is_empty() {
            return Err(err(0, "[algebra] needs `generators`"));
        }
        for (g, f) in sc.fields.iter().enumerate() {
            match f {
                None => return Err(err(0, format!("generator `{}` has no `field`", sc.generators[g]))),
                Some(v) if v.len() != sc.dim => {
                    return Err(err(v[0].line, format!("field needs {} components, got {}", sc.dim, v.len())))
                }
                _ => {}
            }
        }
        sc.twist = match twist_kind {
            None => TwistDecl::Identity,
            Some((ln, k)) => match k.as_str() {
                "identity" => TwistDecl::Identity,
                "moyal" => {
                    if theta.is_empty() {
                        return Err(err(ln, "a Moyal twist needs at least one `theta` entry"));
                    }
                    TwistDecl::Moyal(theta)
                }
                "jordanian" => match jord {
                    (Some(h), Some(e)) => TwistDecl::Jordanian { h, e },
                    _ => return Err(err(ln, "a Jordanian twist needs `h` and `e`")),
                },
                o => return Err(err(ln, format!("unknown twist kind `{o}`"))),
            },
        };
        match r_kind.as_str() {
            "trivial" if sc.rmatrix.is_empty() => {}
            "exp" if !sc.rmatrix.is_empty() => {}
            "trivial" => return Err(err(0, "`term` entries need `kind = exp`")),
            "exp" => return Err(err(0, "`kind = exp` needs at least one `term`")),
            o => return Err(err(0, format!("unknown rmatrix kind `{o}`"))),
        }
        for (m, d) in sc.modules.iter().enumerate() {
            if d.rank == 0 {
                return Err(err(d.line, format!("module `{}` needs `rank` ≥ 1", d.name)));
            }
            if module_on[m].is_some() {
                return Err(err(d.line, "modules do not take `on`"));
            }
        }
        let known = |name: &str| sc.modules.iter().any(|m| m.name == name);
        for ((name, line), (on, kind)) in morph_names.into_iter().zip(morph_parts) {
            let module = on.ok_or_else(|| err(line, format!("morphism `{name}` needs `on`")))?;
            if !known(&module) && module != "Omega" {
                return Err(err(line, format!("morphism `{name}` refers to unknown module `{module}`")));
            }
            let kind = kind.ok_or_else(|| err(line, format!("morphism `{name}` needs `kind`")))?;
            sc.morphisms.push(MorphDecl { name, line, module, kind });
        }
        for ((name, line), (on, forms)) in conn_names.into_iter().zip(conn_parts) {
            let module = on.ok_or_else(|| err(line, format!("connection `{name}` needs `on`")))?;
            if !known(&module) {
                return Err(err(line, format!("connection `{name}` refers to unknown module `{module}`")));
            }
            let forms = forms.ok_or_else(|| err(line, format!("connection `{name}` needs `forms`")))?;
            sc.connections.push(ConnDecl { name, line, module, forms });
        }
        Ok(sc)
    }

    /// Applies command-line overrides.
    pub fn with_overrides(mut self, order: Option<usize>, degree: Option<usize>, seed: Option<u64>) -> Result<Scenario> {
        if let Some(o) = order {
            if o == 0 {
                return Err(Error::Config("order must be ≥ 1".into()));
            }
            self.order = o;
        }
        if let Some(d) = degree {
            if d == 0 {
                return Err(Error::Config("degree must be ≥ 1".into()));
            }
            if self.star_degree < d {
                self.star_degree = d;
            }
            self.degree = d;
        }
        if let Some(s) = seed {
            self.seed = s;
        }
        Ok(self)
    }
}

/// `2 E`, `d2 - 1/2 d1`, `0`.
fn parse_lincomb(line: usize, text: &str, names: &[String]) -> Result<Vec<(usize, Scalar)>> {
    let spaced = text.replace('+', " + ").replace('-', " - ");
    let mut out: Vec<(usize, Scalar)> = Vec::new();
    let mut sign = Scalar::from_integer(1.into());
    let mut coeff: Option<Scalar> = None;
    for tok in spaced.split_whitespace() {
        match tok {
            "+" => {}
            "-" => sign = -sign,
            "0" if out.is_empty() && coeff.is_none() => return Ok(Vec::new()),
            t => {
                if let Some(g) = names.iter().position(|n| n == t) {
                    let c = coeff.take().unwrap_or_else(|| Scalar::from_integer(1.into())) * sign.clone();
                    out.push((g, c));
                    sign = Scalar::from_integer(1.into());
                } else if coeff.is_none() {
                    coeff = Some(parse_scalar(t).map_err(|_| err(line, format!("unknown generator `{t}`")))?);
                } else {
                    return Err(err(line, format!("unexpected `{t}` in `{text}`")));
                }
            }
        }
    }
    if coeff.is_some() {
        return Err(err(line, format!("dangling coefficient in `{text}`")));
    }
    out.retain(|(_, c)| !c.is_zero());
    Ok(out)
}

/// Everything a suite run needs, constructed from a scenario.
pub struct Session {
    pub scenario: Scenario,
    pub env: Arc<Env>,
    pub twist: Arc<Twist>,
    pub base: RMatrix,
    pub undeformed: Arc<World>,
    pub deformed: Arc<World>,
    /// The deformed world with `R = 1⊗1`, for negative controls.
    pub control: Arc<World>,
    pub modules: Vec<(String, Arc<Atom>)>,
    pub morphisms: Vec<(String, OpMatrix)>,
    pub connections: Vec<Connection>,
    pub(super) quantized: OnceLock<Vec<Connection>>,
    pub(super) quant_report: OnceLock<QuantizationReport>,
    pub(super) braid_report: OnceLock<[BraidReport; 2]>,
}

fn poly(l: &Lit, n: usize, order: usize) -> Result<Poly> {
    Poly::parse(&l.text, n, order).map_err(|e| err(l.line, e))
}

impl Session {
    pub fn build(sc: Scenario) -> Result<Session> {
        let order = sc.order;
        let n = sc.dim;
        let lie = LiePresentation::from_brackets(sc.generators.clone(), &sc.brackets).map_err(|e| err(0, e))?;
        let hp = Arc::new(Hopf::new(Ctx::new(order), lie));
        let mut fields = Vec::new();
        for f in sc.fields.iter().flatten() {
            fields.push(f.iter().map(|l| poly(l, n, order)).collect::<Result<Vec<_>>>()?);
        }
        let real = Arc::new(Realization::new(&hp, n, fields).map_err(|e| err(0, e))?);
        let env = Arc::new(Env::new(hp.clone(), real));

        let spec = match &sc.twist {
            TwistDecl::Identity => TwistSpec::Identity,
            TwistDecl::Moyal(t) => TwistSpec::Moyal { theta: t.clone() },
            TwistDecl::Jordanian { h, e } => TwistSpec::Jordanian { h: *h, e: *e },
        };
        let (mut f, mut f_inv) = Twist::expand(&hp, &spec).map_err(|e| err(0, e))?;
        if let Some(Fault::DropOrder(k)) = sc.fault {
            f = drop_order(&f, k);
            f_inv = hp.tinverse(&f)?;
        }
        let twist = Arc::new(Twist::unchecked(hp.clone(), f, f_inv)?);

        let base = if sc.rmatrix.is_empty() {
            RMatrix::trivial(&hp)
        } else {
            let h = DeformationSeries::monomial(order, 1, Scalar::from_integer(1.into()));
            let mut x = TensorElement::zero(2);
            for (a, b, c) in &sc.rmatrix {
                x = x.add(&hp.tensor(&[&hp.gen(*a), &hp.gen(*b)]).scale(&h.scale(c)));
            }
            RMatrix::explicit(&hp, hp.texp(&x)?, None)?
        };
        let undeformed = Arc::new(World::undeformed(env.clone(), base.clone()));
        let deformed = match sc.fault {
            Some(Fault::TrivialR) => Arc::new(World::new(env.clone(), Some(twist.clone()), RMatrix::trivial(&hp), "deformed")),
            _ => Arc::new(World::deformed(env.clone(), twist.clone(), &base)),
        };
        let control = Arc::new(World::new(env.clone(), Some(twist.clone()), RMatrix::trivial(&hp), "control"));

        let mut modules = Vec::new();
        for m in &sc.modules {
            let mut action = vec![Vec::new(); sc.generators.len()];
            for (g, l) in &m.actions {
                let mut grid = Vec::new();
                for row in l.text.split(';') {
                    grid.push(row.split(',').map(|e| poly(&Lit { line: l.line, text: e.trim().into() }, n, order)).collect::<Result<Vec<_>>>()?);
                }
                if grid.len() != m.rank || grid.iter().any(|r| r.len() != m.rank) {
                    return Err(err(l.line, format!("action needs a {0}×{0} grid", m.rank)));
                }
                action[*g] = grid;
            }
            let atom = Atom::plain(&env, &m.name, m.rank, action).map_err(|e| err(m.line, e))?;
            modules.push((m.name.clone(), atom));
        }
        let module_of = |name: &str| -> Module {
            if name == "Omega" {
                return env.omega();
            }
            let atom = &modules.iter().find(|(n, _)| n == name).expect("checked at parse time").1;
            Module::of(&[atom])
        };

        let mut morphisms = Vec::new();
        for (i, m) in sc.morphisms.iter().enumerate() {
            let md = module_of(&m.module);
            let mut rng = ChaCha8Rng::seed_from_u64(sc.seed.wrapping_mul(31).wrapping_add(i as u64));
            let op = match &m.kind {
                MorphKind::Mul(l) => OpMatrix::left_mul(&env, &md, &poly(l, n, order)?),
                MorphKind::Act(g) => OpMatrix::action(&env, &md, &hp.gen(*g)),
                MorphKind::Random => OpMatrix::random(&env, &md, &md, false, &mut rng),
                MorphKind::RandomLinear => OpMatrix::random(&env, &md, &md, true, &mut rng),
            };
            morphisms.push((m.name.clone(), op));
        }

        let mut connections = Vec::new();
        if !sc.connections.is_empty() && !sc.calculus {
            return Err(err(sc.connections[0].line, "connections need `calculus = de-rham`"));
        }
        for c in &sc.connections {
            let md = module_of(&c.module);
            let conn = Connection::parse(&env, &c.name, &md, &c.forms.text).map_err(|e| err(c.forms.line, e))?;
            connections.push(conn);
        }

        for e in &sc.expectations {
            for l in [&e.f, &e.g, &e.value] {
                poly(l, n, order)?;
            }
        }

        Ok(Session {
            scenario: sc,
            env,
            twist,
            base,
            undeformed,
            deformed,
            control,
            modules,
            morphisms,
            connections,
            quantized: OnceLock::new(),
            quant_report: OnceLock::new(),
            braid_report: OnceLock::new(),
        })
    }

    pub fn module(&self, name: &str) -> Option<Module> {
        if name == "Omega" {
            return Some(self.env.omega());
        }
        self.modules.iter().find(|(n, _)| n == name).map(|(_, a)| Module::of(&[a]))
    }

    pub fn connection(&self, name: &str) -> Option<&Connection> {
        self.connections.iter().find(|c| c.name == name)
    }

    pub fn poly(&self, text: &str) -> Result<Poly> {
        Poly::parse(text, self.env.n, self.env.order())
    }
}
