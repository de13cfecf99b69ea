//! Acceptance suite: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::result::Result;
use std::process::Command as Proc;
use std::time::{Duration, Instant};

use dicrit_cli::json::path_from_json;
use dicrit_cli::parse::{parse_generators, Vars};
use dicrit_cli::{run, Command, Format, Report, Request};
use dicrit_core::idealcalc::{closure_ideal, colength, membership, power};
use dicrit_core::nearpoints::transform_ideal;
use dicrit_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<(), String>;
type Criterion = fn() -> Result<String, String>;

const TIME_LIMIT: Duration = Duration::from_secs(10);
const INSTANCES: u64 = 200;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn request(command: Command, exprs: &[&str]) -> Request {
    Request::new(command, exprs)
}

fn exec(req: &Request) -> Result<Report, String> {
    let t = Instant::now();
    let rep = run(req).map_err(|e| format!("{:?} {:?}: {e}", req.command, req.exprs))?;
    ensure!(t.elapsed() < TIME_LIMIT, "{:?} took {:?}", req.command, t.elapsed());
    Ok(rep)
}

fn with_vars(mut r: Request, a: &str, b: &str) -> Request {
    r.vars = Some([a.into(), b.into()]);
    r
}

fn values(rec: &dicrit_cli::report::Record) -> Vec<(String, i64)> {
    rec.values.0.clone()
}

fn val(rec: &dicrit_cli::report::Record, name: &str) -> Option<i64> {
    rec.values.0.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
}

/// Requests whose machine output must be reproducible.
fn golden_requests() -> Vec<Request> {
    let mut out = vec![
        request(Command::Dicriticals, &["y^2/x^3"]),
        request(Command::ClosureMember, &["x^2*y", "x^3, y^2"]),
        request(Command::ReductionCheck, &["x^3, y^2", "x^3, y^2, x^2*y"]),
        request(Command::Basepoints, &["x^3, x^2*y, y^7"]),
        request(Command::IdealDicriticals, &["x^3, x^2*y, y^7"]),
        request(Command::AtInfinity, &["x^4*y^4 - x"]),
        request(Command::AtInfinity, &["X^3 - Y^2"]),
        request(Command::AtInfinity, &["X^2*Y^3"]),
        request(Command::AtInfinity, &["X^4"]),
    ];
    for m in 1..=5 {
        out.push(request(Command::AbhyankarFamily, &[&m.to_string()]));
    }
    out
}

// ---- criterion 1 ----------------------------------------------------------

fn criterion_1() -> Check {
    let rep = exec(&request(Command::Dicriticals, &["y^2/x^3"]))?;
    ensure!(rep.records.len() == 1, "expected one dicritical, got {}", rep.records.len());
    let r = &rep.records[0];
    ensure!(values(r) == vec![("x".into(), 2), ("y".into(), 3)], "values {:?}", values(r));
    ensure!(r.index == 1 && r.degree == Some(1), "index {} degree {:?}", r.index, r.degree);
    let rep = exec(&request(Command::ClosureMember, &["x^2*y", "x^3, y^2"]))?;
    ensure!(rep.decision == Some(true), "x^2 y not integral over (x^3, y^2)");
    let rep = exec(&request(Command::ReductionCheck, &["x^3, y^2", "x^3, y^2, x^2*y"]))?;
    ensure!(rep.decision == Some(true) && rep.witness == Some(1), "reduction {:?} {:?}", rep.decision, rep.witness);
    Ok(())
}

// ---- criterion 2 ----------------------------------------------------------

fn same_ideal(a: &LocalIdeal, b: &LocalIdeal) -> Result<bool, String> {
    let l = Limits::default();
    for (x, y) in [(a, b), (b, a)] {
        for g in x.gens() {
            if !membership(g, y, &l).map_err(|e| e.to_string())? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn criterion_2() -> Check {
    let rep = exec(&request(Command::Basepoints, &["x^3, x^2*y, y^7"]))?;
    let nodes = rep.data["nodes"].as_array().ok_or("no nodes")?;
    let zs: Vec<u64> = nodes.iter().map(|n| n["zariski"].as_u64().unwrap_or(99)).collect();
    ensure!(zs == vec![1, 0, 2], "Zariski numbers {zs:?}");
    let parents: Vec<Value> = nodes.iter().map(|n| n["parent"].clone()).collect();
    ensure!(parents == vec![Value::Null, 0.into(), 1.into()], "not a chain: {parents:?}");
    let recs: Vec<(usize, u32)> =
        rep.records.iter().map(|r| (r.path.as_array().map_or(99, Vec::len), r.index)).collect();
    ensure!(recs == vec![(0, 1), (2, 2)], "dicritical set {recs:?}");
    // The transform at R1, read back in its own coordinates.
    let k = FieldTower::rationals();
    let coords: Vec<&str> = nodes[1]["coordinates"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    ensure!(coords == ["y", "x1"], "coordinates {coords:?}");
    let vars = Vars::new("y", "x1");
    let text = nodes[1]["ideal"].as_str().unwrap().trim_matches(|c| c == '(' || c == ')');
    let got = LocalIdeal::new(parse_generators(text, &vars, &k).map_err(|e| e.to_string())?).unwrap();
    let want = LocalIdeal::new(parse_generators("x1^3, x1^2, y^4", &vars, &k).unwrap()).unwrap();
    ensure!(same_ideal(&got, &want)?, "transform at R1 is {text}");
    Ok(())
}

// ---- criterion 3 ----------------------------------------------------------

fn criterion_3() -> Check {
    let rep = exec(&request(Command::AtInfinity, &["x^4*y^4 - x"]))?;
    let points = rep.data["points"].as_array().ok_or("no points")?;
    ensure!(points.len() == 2, "{} points", points.len());

    let p0 = &points[0];
    ensure!(p0["point"] == "[1 : 0 : 0]", "first point {}", p0["point"]);
    let idx: Vec<usize> = p0["records"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap() as usize).collect();
    ensure!(idx.len() == 1, "{} dicriticals at [1:0:0]", idx.len());
    let r = &rep.records[idx[0]];
    ensure!(val(r, "y") == Some(7) && val(r, "z") == Some(4), "values {:?}", values(r));
    ensure!(r.degree == Some(1), "degree {:?}", r.degree);
    ensure!(p0["ideal_values"][0] == 32, "v(J1) = {}", p0["ideal_values"][0]);
    let j1 = p0["ideal"].as_str().unwrap().trim_matches(|c| c == '(' || c == ')').to_string();
    let eq = exec(&with_vars(request(Command::ClosureEquals, &[&j1, "y^4 - z^7, z^8, y^3*z^3, y^2*z^5, y^5"]), "z", "y"))?;
    ensure!(eq.decision == Some(true), "closure of J1 is not the simple complete ideal");

    let p1 = &points[1];
    ensure!(p1["point"] == "[0 : 1 : 0]", "second point {}", p1["point"]);
    let idx: Vec<usize> = p1["records"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap() as usize).collect();
    ensure!(idx.len() == 1, "{} dicriticals at [0:1:0]", idx.len());
    let r = &rep.records[idx[0]];
    ensure!(r.degree == Some(4), "degree {:?}", r.degree);
    let j2 = p1["ideal"].as_str().unwrap().trim_matches(|c| c == '(' || c == ')').to_string();
    let target = "x^4, x^3*z^2, x^2*z^4, x*z^6, z^8";
    let eq = exec(&with_vars(request(Command::ClosureEquals, &[&j2, target]), "z", "x"))?;
    ensure!(eq.decision == Some(true), "closure of J2 is not (x, z^2)^4");
    // Transform of J2 along the dicritical's path: its closure is the fourth power of the maximal ideal.
    let k = FieldTower::rationals();
    let path = path_from_json(&k, &r.path).map_err(|e| e.to_string())?;
    let mut t = LocalIdeal::new(parse_generators(&j2, &Vars::new("z", "x"), &k).unwrap()).unwrap();
    for s in path.steps() {
        t = transform_ideal(&t, s).map_err(|e| e.to_string())?;
    }
    let m4 = power(&LocalIdeal::maximal(&k), 4);
    ensure!(closure_equals(&t, &m4, &Limits::default()).unwrap_or(false), "transform is {}", t.format(["z", "x1"]));
    Ok(())
}

// ---- criterion 4 ----------------------------------------------------------

fn total(rep: &Report) -> usize {
    rep.records.len()
}

fn criterion_4() -> Check {
    for n in 1..=6 {
        let rep = exec(&request(Command::AtInfinity, &[&format!("X^{n}")]))?;
        ensure!(total(&rep) == 1, "X^{n}: {} dicriticals", total(&rep));
    }
    for (m, n) in [(1, 1), (1, 2), (2, 3), (3, 2), (2, 5), (3, 4)] {
        let rep = exec(&request(Command::AtInfinity, &[&format!("X^{m}*Y^{n}")]))?;
        ensure!(total(&rep) == 2, "X^{m} Y^{n}: {} dicriticals", total(&rep));
    }
    let rep = exec(&request(Command::AtInfinity, &["X^3 - Y^2"]))?;
    ensure!(total(&rep) == 1, "X^3 - Y^2: {} dicriticals", total(&rep));
    let r = &rep.records[0];
    ensure!(val(r, "X") == Some(-2) && val(r, "Y") == Some(-3), "values {:?}", values(r));
    // Independent value of X^3 = x^3 / z^3 on the reported divisor.
    let k = FieldTower::rationals();
    let v = PrimeDivisor::new(path_from_json(&k, &r.path).map_err(|e| e.to_string())?);
    let x3 = RationalFn::new(BiPoly::from_i64s(&k, &[((0, 3), 1)]), BiPoly::from_i64s(&k, &[((3, 0), 1)])).unwrap();
    let got = v.value_rational(&x3).map_err(|e| e.to_string())?;
    ensure!(got == -6, "v(X^3) = {got}");
    Ok(())
}

// ---- criterion 5 ----------------------------------------------------------

fn criterion_5() -> Result<String, String> {
    let k = FieldTower::rationals();
    for m in 1..=5u32 {
        let rep = exec(&request(Command::AbhyankarFamily, &[&m.to_string()]))?;
        ensure!(rep.data["order"] == m, "I_{m} has order {}", rep.data["order"]);
        let text = rep.data["I"].as_str().unwrap().trim_matches(|c| c == '(' || c == ')');
        let gens = parse_generators(text, &Vars::new("x", "y"), &k).map_err(|e| e.to_string())?;
        ensure!(gens.len() == m as usize + 1, "I_{m} has {} minimal generators", gens.len());
        ensure!(gens.iter().all(|g| g.len() == 1), "I_{m} generators are not monomials: {text}");
        ensure!(rep.data["valuative"] == true && rep.data["direct"] == true, "J_{m} is not a reduction of I_{m}");
        ensure!(rep.records.iter().all(|r| r.index == 1), "J_{m} has an index above 1");
        ensure!(rep.records.len() == m as usize, "J_{m} has {} dicriticals", rep.records.len());
        // Support is S_0, ..., S_{m-1}: j affine steps through the origin.
        for (j, r) in rep.records.iter().enumerate() {
            let steps = r.path.as_array().unwrap();
            ensure!(steps.len() == j && steps.iter().all(|s| s["chart"] == "affine" && s["c"] == "0"), "support {}", r.path);
        }
    }
    Ok("support {S_0, ..., S_(m-1)}".into())
}

// ---- criterion 6 ----------------------------------------------------------

/// Brute-force Newton polyhedron test: `(i, j)` dominates a point on a segment
/// between two exponents, with the segment parameter in steps of 1/t.
fn newton_contains(exps: &[(u32, u32)], (i, j): (u32, u32)) -> bool {
    let (i, j) = (i as i64, j as i64);
    exps.iter().any(|&(a0, a1)| {
        exps.iter().any(|&(b0, b1)| {
            let (a0, a1, b0, b1) = (a0 as i64, a1 as i64, b0 as i64, b1 as i64);
            (1..=12i64).any(|t| (0..=t).any(|s| s * a0 + (t - s) * b0 <= t * i && s * a1 + (t - s) * b1 <= t * j))
        })
    })
}

fn err(e: dicrit_core::Error) -> String {
    e.to_string()
}

fn prop_additivity(k: &FieldTower, r: &mut ChaCha8Rng) -> Check {
    let v = PrimeDivisor::new(sample::path(k, r, 4));
    let f = sample::poly(k, r, 6, 4);
    let g = sample::poly(k, r, 6, 4);
    let (a, b, c) = (v.value(&(&f * &g)).map_err(err)?, v.value(&f).map_err(err)?, v.value(&g).map_err(err)?);
    ensure!(a == b + c, "v(fg) = {a}, v(f) + v(g) = {}", b + c);
    Ok(())
}

fn prop_power(k: &FieldTower, r: &mut ChaCha8Rng) -> Check {
    let l = Limits::default();
    let j = sample::ideal(k, r, 2, 3);
    let once: Vec<_> = dicritical_set(&j, &l).map_err(err)?.into_iter().map(|d| (d.divisor, 2 * d.index)).collect();
    let twice: Vec<_> = dicritical_set(&power(&j, 2), &l).map_err(err)?.into_iter().map(|d| (d.divisor, d.index)).collect();
    ensure!(once == twice, "J = {}", j.format(["x", "y"]));
    Ok(())
}

fn prop_transform(k: &FieldTower, r: &mut ChaCha8Rng) -> Check {
    let l = Limits::default();
    let j = sample::ideal(k, r, 2, 6);
    let tree = base_point_tree(&j, &l).map_err(err)?;
    let all = dicritical_set(&j, &l).map_err(err)?;
    for node in &tree.nodes {
        let n = node.path.len();
        let below: Vec<_> = all
            .iter()
            .filter(|d| d.divisor.path().starts_with(&node.path))
            .map(|d| (d.divisor.path().suffix(n).steps().to_vec(), d.index))
            .collect();
        let local: Vec<_> = dicritical_set(&node.ideal, &l)
            .map_err(err)?
            .into_iter()
            .map(|d| (d.divisor.path().steps().to_vec(), d.index))
            .collect();
        ensure!(below == local, "J = {} at depth {n}", j.format(["x", "y"]));
    }
    Ok(())
}

/// Random `(a, b)` without common factor and not the unit ideal.
fn two_generated(k: &FieldTower, r: &mut ChaCha8Rng) -> LocalIdeal {
    loop {
        let j = sample::ideal(k, r, 2, 6).residual();
        if !j.is_unit() && j.gens().len() == 2 {
            return j;
        }
    }
}

fn prop_rees(k: &FieldTower, r: &mut ChaCha8Rng) -> Check {
    let l = Limits::default();
    let j = two_generated(k, r);
    for node in &base_point_tree(&j, &l).map_err(err)?.nodes {
        let cert = rees_certificate(&j, &PrimeDivisor::new(node.path.clone())).map_err(err)?;
        ensure!(cert == (node.zariski > 0), "J = {} node {:?}", j.format(["x", "y"]), node.path.steps());
    }
    Ok(())
}

fn prop_newton(k: &FieldTower, r: &mut ChaCha8Rng) -> Check {
    let l = Limits::default();
    let exps = sample::monomial_exponents(r, 6);
    let j = LocalIdeal::new(exps.iter().map(|&(a, b)| BiPoly::monomial(k, k.one(), a, b)).collect()).unwrap();
    for _ in 0..3 {
        let (a, b) = (r.gen_range(0..=6), r.gen_range(0..=6));
        let got = closure_membership(&BiPoly::monomial(k, k.one(), a, b), &j, &l).map_err(err)?;
        ensure!(got == newton_contains(&exps, (a, b)), "x^{a} y^{b} over {exps:?}");
    }
    Ok(())
}

fn prop_idempotent(k: &FieldTower, r: &mut ChaCha8Rng) -> Check {
    let l = Limits::default();
    let j = sample::primary_ideal(k, r, 2, 4);
    let c = closure_ideal(&j, &l).map_err(err)?;
    ensure!(closure_equals(&j, &c, &l).map_err(err)?, "J = {}", j.format(["x", "y"]));
    ensure!(closure_equals(&c, &c, &l).map_err(err)?, "closure of J = {} is not complete", j.format(["x", "y"]));
    let complete = colength(&j, &l).map_err(err)? == closure_colength(&j, &l).map_err(err)?;
    ensure!(closure_equals(&j, &j, &l).map_err(err)? == complete, "J = {}", j.format(["x", "y"]));
    Ok(())
}

fn prop_factorization(k: &FieldTower, r: &mut ChaCha8Rng) -> Check {
    let l = Limits::default();
    let j = sample::ideal(k, r, 2, 4);
    let fac = zariski_factorization(&j, &l).map_err(err)?;
    let simples = fac
        .exponents
        .iter()
        .map(|(p, n)| Ok((PrimeDivisor::new(p.clone()).simple_ideal(&l)?, *n)))
        .collect::<dicrit_core::Result<Vec<_>>>()
        .map_err(err)?;
    let mut probes: Vec<_> = fac.exponents.iter().map(|(p, _)| PrimeDivisor::new(p.clone())).collect();
    probes.push(PrimeDivisor::new(sample::path(k, r, 3)));
    for v in probes {
        let mut rhs = v.value(&fac.principal).map_err(err)?;
        for (s, n) in &simples {
            rhs += n * v.value_of_ideal(s).map_err(err)?;
        }
        let lhs = v.value_of_ideal(&j).map_err(err)?;
        ensure!(lhs == rhs, "J = {}: v(J) = {lhs}, factorization gives {rhs}", j.format(["x", "y"]));
    }
    Ok(())
}

type Property = fn(&FieldTower, &mut ChaCha8Rng) -> Check;

fn criterion_6() -> Result<String, String> {
    let props: [(&str, Property); 7] = [
        ("additivity", prop_additivity),
        ("power", prop_power),
        ("transform", prop_transform),
        ("rees", prop_rees),
        ("newton", prop_newton),
        ("idempotence", prop_idempotent),
        ("factorization", prop_factorization),
    ];
    let mut count = 0;
    for (name, prop) in props {
        for k in [FieldTower::rationals(), FieldTower::prime(5).unwrap()] {
            for seed in 0..INSTANCES {
                let mut r = ChaCha8Rng::seed_from_u64(seed);
                prop(&k, &mut r).map_err(|e| format!("{name} over {} seed {seed}: {e}", k.base()))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances"))
}

// ---- criterion 7 ----------------------------------------------------------

fn cli_output(req: &Request) -> Result<Vec<u8>, String> {
    let mut cmd = Proc::new(env!("CARGO_BIN_EXE_dicrit"));
    cmd.args(["--format", "machine", "--field", &req.field]);
    if let Some([a, b]) = &req.vars {
        cmd.args(["--vars", &format!("{a},{b}")]);
    }
    cmd.arg(req.command.name());
    cmd.args(&req.exprs);
    let t = Instant::now();
    let out = cmd.output().map_err(|e| e.to_string())?;
    ensure!(t.elapsed() < TIME_LIMIT, "{} took {:?}", req.command.name(), t.elapsed());
    ensure!(out.status.success(), "{} {:?} exited with {}", req.command.name(), req.exprs, out.status);
    Ok(out.stdout)
}

fn criterion_7() -> Result<String, String> {
    let reqs = golden_requests();
    for req in &reqs {
        let a = cli_output(req)?;
        let b = cli_output(req)?;
        ensure!(a == b, "{} {:?} differs between runs", req.command.name(), req.exprs);
        let mut lib = req.clone();
        lib.format = Format::Machine;
        let doc = run(&lib).map_err(|e| e.to_string())?.to_machine();
        ensure!(a == format!("{doc}\n").into_bytes(), "{} {:?}: binary and library disagree", req.command.name(), req.exprs);
    }
    Ok(format!("{} requests", reqs.len()))
}

fn main() {
    let criteria: [(&str, Criterion); 7] = [
        ("cusp quotient y^2/x^3", || criterion_1().map(|_| String::new())),
        ("base points of (x^3, x^2 y, y^7)", || criterion_2().map(|_| String::new())),
        ("x^4 y^4 - x at infinity", || criterion_3().map(|_| String::new())),
        ("dicritical counts at infinity", || criterion_4().map(|_| String::new())),
        ("Abhyankar family m = 1..5", criterion_5),
        ("property suites over Q and F5", criterion_6),
        ("deterministic machine output", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(note) if note.is_empty() => println!("criterion {}: PASS  {name} ({secs:.2} s)", i + 1),
            Ok(note) => println!("criterion {}: PASS  {name}: {note} ({secs:.2} s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e} ({secs:.2} s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
