//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistq::bimod::{Module, Space};
use twistq::connection::{render_on_basis, twisted_curvature, Connection};
use twistq::fixtures::{jordanian_line, line_bundle, moyal_plane, nilpotent_plane, Fixture};
use twistq::morphism::{
    braid_relations, d_quantize, quantization_diagram, quantization_identities, quasi_left_linearity, tensor_r_laws,
    OpMatrix,
};
use twistq::verify::{bundled, run_suite, RunOptions, Scenario, Session, Status, SuiteReport, CATALOG};
use twistq::Outcome;

type Verdict = Result<String, String>;

fn need(o: &Outcome, what: &str) -> Result<(), String> {
    if o.pass {
        Ok(())
    } else {
        Err(format!("{what} fails at h^{:?}: {}", o.first_order, o.sample.clone().unwrap_or_default()))
    }
}

fn refute(o: &Outcome, what: &str) -> Result<(), String> {
    match (o.pass, o.first_order) {
        (false, Some(1)) => Ok(()),
        (false, k) => Err(format!("{what} control fails first at h^{k:?}, expected h^1")),
        (true, _) => Err(format!("{what} control unexpectedly passes")),
    }
}

fn sample<T>(xs: Vec<T>, step: usize) -> Vec<T> {
    xs.into_iter().step_by(step).collect()
}

fn suite(checks: &[&str]) -> Result<SuiteReport, String> {
    let sc = Scenario::parse(bundled("moyal_r2").unwrap()).map_err(|e| e.to_string())?;
    let sc = sc.with_overrides(None, None, None).map_err(|e| e.to_string())?;
    let s = Session::build(sc).map_err(|e| e.to_string())?;
    let opts = RunOptions { selection: Some(checks.iter().map(|c| c.to_string()).collect()), jobs: None };
    run_suite(&s, &opts).map_err(|e| e.to_string())
}

fn all_pass(r: &SuiteReport) -> Result<(), String> {
    match r.checks.iter().find(|c| c.status != Status::Pass) {
        None => Ok(()),
        Some(c) => Err(format!("{} is {}: {}", c.id, c.status.as_str(), c.sample.clone().or(c.note.clone()).unwrap_or_default())),
    }
}

fn twist_validity() -> Verdict {
    let mut slowest = Duration::ZERO;
    for n in [2, 3, 4] {
        for (name, build) in [("Moyal", moyal_plane as fn(usize) -> _), ("Jordanian", jordanian_line)] {
            let t = Instant::now();
            let fx = build(n).map_err(|e| e.to_string())?;
            need(&fx.twist.cocycle(), &format!("{name} cocycle at N={n}"))?;
            need(&fx.twist.normalization(), &format!("{name} normalization at N={n}"))?;
            let dt = t.elapsed();
            if dt > Duration::from_secs(10) {
                return Err(format!("{name} at N={n} took {dt:?}"));
            }
            slowest = slowest.max(dt);
        }
    }
    Ok(format!("Moyal and Jordanian at N = 2, 3, 4; slowest {:.2?}", slowest))
}

fn star_algebra() -> Verdict {
    let fx = moyal_plane(2).map_err(|e| e.to_string())?;
    let samples = fx.env.sample_polys(4);
    need(&fx.env.real.associativity(Some(&fx.twist), &samples), "associativity")?;
    let c = fx.env.real.star_commutator(Some(&fx.twist), &fx.poly("x1"), &fx.poly("x2"));
    need(&c.compare(&fx.poly("h")), "[x1, x2] = h")?;
    Ok(format!("{} monomials up to degree 4, all triples; [x1, x2]⋆ = {}", samples.len(), c.render()))
}

fn quantization_map() -> Verdict {
    let fx = moyal_plane(3).map_err(|e| e.to_string())?;
    let env = &fx.env;
    let v = Module::of(&[&nilpotent_plane(env, "V").map_err(|e| e.to_string())?]);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..50 {
        let p = OpMatrix::random(env, &v, &v, false, &mut rng);
        let q = OpMatrix::random(env, &v, &v, false, &mut rng);
        let r = quantization_identities(&fx.deformed, &fx.twist, &p, &q, &env.hopf.gen(i % 3));
        need(&r.homomorphism, &format!("homomorphism on sample {i}"))?;
        need(&r.intertwining, &format!("intertwining on sample {i}"))?;
        need(&r.inverse, &format!("inverse on sample {i}"))?;
    }
    Ok("50 seeded samples at N = 3".into())
}

fn braided_structure() -> Verdict {
    let fx = moyal_plane(3).map_err(|e| e.to_string())?;
    let env = &fx.env;
    let hp = &env.hopf;
    need(&fx.deformed.r.yang_baxter(hp), "Yang-Baxter")?;
    need(&fx.deformed.r.triangular(hp), "triangularity")?;
    let om = env.omega();
    let keys2 = sample(Space::of(&[&om, &om]).basis_keys(env.n, 1), 5);
    let keys3 = sample(Space::of(&[&om, &om, &om]).basis_keys(env.n, 1), 97);
    let keys_a = sample(env.module_keys(&om.tensor(&om).tensor(&om), 2), 23);
    let r = braid_relations(&fx.deformed, [&om, &om, &om], &keys2, &keys3, &keys_a, &[hp.gen(2)]);
    need(&r.relations, "braid relations")?;
    need(&r.relations_a, "braid relations over the algebra")?;
    Ok(format!("N = 3, {} triple-tensor samples of forms", keys3.len()))
}

fn tensor_laws() -> Verdict {
    let fx = moyal_plane(2).map_err(|e| e.to_string())?;
    let env = &fx.env;
    let v = Module::of(&[&line_bundle(env, "V").map_err(|e| e.to_string())?]);
    let w = Module::of(&[&line_bundle(env, "W").map_err(|e| e.to_string())?]);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let maps: Vec<_> = (0..5).map(|_| OpMatrix::random(env, &v, &v, false, &mut rng).to_map(env)).collect();
    let refs = [&maps[0], &maps[1], &maps[2], &maps[3], &maps[4]];
    let keys2 = Space::of(&[&v, &v]).basis_keys(env.n, 1);
    let keys3 = sample(Space::of(&[&v, &v, &v]).basis_keys(env.n, 1), 4);
    let l = tensor_r_laws(&fx.deformed, refs, &[env.hopf.gen(2), env.hopf.gen(0)], &keys2, &keys3, false);
    need(&l.equivariance, "equivariance")?;
    need(&l.associativity, "associativity")?;
    need(&l.composition, "composition")?;
    let p = OpMatrix::left_mul(env, &v, &fx.poly("x1"));
    let q = OpMatrix::random(env, &w, &w, false, &mut rng);
    let keys = Space::of(&[&v, &w]).basis_keys(env.n, 1);
    let keys_a = env.module_keys(&v.tensor(&w), 2);
    let (k, a) = quantization_diagram(&fx.undeformed, &fx.deformed, &fx.twist, &p, &q, &keys, &keys_a);
    need(&k, "quantization diagram")?;
    need(&a, "quantization diagram over the algebra")?;
    let alg = Module::algebra();
    let sp3 = Space::of(&[&v, &alg, &env.omega()]);
    need(&fx.deformed.coherence(&sp3, &sample(sp3.basis_keys(env.n, 1), 5), None), "coherence")?;
    Ok("three clauses, quantization diagram and coherence at N = 2".into())
}

fn quasi_commutativity() -> Verdict {
    let fx: Fixture = moyal_plane(2).map_err(|e| e.to_string())?;
    let env = &fx.env;
    let control = std::sync::Arc::new(fx.negative_control());
    let fs = env.sample_polys(2);
    let fs1 = env.sample_polys(1);
    let v = Module::of(&[&nilpotent_plane(env, "V").map_err(|e| e.to_string())?]);
    let keys = env.module_keys(&v, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let dp = d_quantize(&fx.twist, env, &OpMatrix::random(env, &v, &v, true, &mut rng));
    need(&env.real.quasi_commutative(Some(&fx.twist), &fx.deformed.r, &fs), "algebra")?;
    need(&fx.deformed.quasi_commutative_module(&v, &keys, &fs1), "module")?;
    need(&quasi_left_linearity(&fx.deformed, &dp, &keys, &fs1), "left linearity")?;
    refute(&env.real.quasi_commutative(Some(&fx.twist), &control.r, &fs), "algebra")?;
    refute(&control.quasi_commutative_module(&v, &keys, &fs1), "module")?;
    refute(&quasi_left_linearity(&control, &dp, &keys, &fs1), "left linearity")?;
    Ok("all three hold with the twisted R and fail at h^1 with R = 1⊗1".into())
}

fn connections() -> Verdict {
    let t = Instant::now();
    let ids: Vec<&str> = CATALOG.iter().map(|c| c.id).filter(|id| id.starts_with("conn.")).collect();
    let r = suite(&ids)?;
    all_pass(&r)?;
    let dt = t.elapsed();
    if dt > Duration::from_secs(120) {
        return Err(format!("took {dt:?}"));
    }
    Ok(format!("{} checks at N = 2 in {:.2?}", r.checks.len(), dt))
}

fn curvature() -> Verdict {
    let r = suite(&["curv.sum", "curv.twisted"])?;
    all_pass(&r)?;
    let note = r.checks.iter().find(|c| c.id == "curv.sum").and_then(|c| c.note.clone()).unwrap_or_default();
    if !note.contains("mixed term vanishes") {
        return Err("no equivariant pair was exercised".into());
    }
    let fx = moyal_plane(2).map_err(|e| e.to_string())?;
    let env = &fx.env;
    let v = Module::of(&[&line_bundle(env, "V").map_err(|e| e.to_string())?]);
    let c = Connection::parse(env, "flat", &v, "x1 dx2 + x2 dx1").map_err(|e| e.to_string())?;
    let keys = env.module_keys(&v, 1);
    let t = twisted_curvature(&fx.undeformed, &fx.deformed, &fx.twist, &c, &keys);
    need(&t.identity, "twisted curvature identity")?;
    let classical = render_on_basis(env, &t.classical, &v);
    let quantized = render_on_basis(env, &t.quantized, &v);
    let gap = t.quantized.compare(&t.classical, &keys, 2);
    if classical != "0" || gap.first_order != Some(1) {
        return Err(format!("flat connection: classical {classical}, quantized {quantized}"));
    }
    Ok(format!("sum identity, equivariant vanishing, flat connection twists to {quantized}"))
}

fn determinism() -> Verdict {
    let dir = std::env::temp_dir().join(format!("twistq-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut outs = Vec::new();
    for (i, jobs) in ["1", "4"].iter().enumerate() {
        let p = dir.join(format!("run{i}.json"));
        let o = Command::new(env!("CARGO_BIN_EXE_twistq"))
            .args(["report", "bundled:moyal_r2", p.to_str().unwrap(), "--seed", "99", "--jobs", jobs])
            .output()
            .map_err(|e| e.to_string())?;
        if o.status.code() != Some(0) {
            return Err(format!("report exited with {:?}", o.status.code()));
        }
        outs.push(std::fs::read(&p).map_err(|e| e.to_string())?);
    }
    let _ = std::fs::remove_dir_all(&dir);
    if outs[0] != outs[1] {
        return Err("reports differ".into());
    }
    Ok(format!("two full-suite reports, {} identical bytes", outs[0].len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("twist validity", twist_validity),
        ("star algebra", star_algebra),
        ("quantization map", quantization_map),
        ("braided structure", braided_structure),
        ("tensor product laws", tensor_laws),
        ("quasi-commutativity", quasi_commutativity),
        ("connections", connections),
        ("curvature", curvature),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(detail) => println!("PASS {} {name}: {detail} [{:.1?}]", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{:.1?}]", i + 1, t.elapsed());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
