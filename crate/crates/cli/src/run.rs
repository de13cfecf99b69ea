//! Requests and their dispatch onto the engine.

use std::result::Result;

use clap::ValueEnum;
use dicrit_core::idealcalc::{closure_data, colength, minimalize, reduction_direct, reduction_valuative};
use dicrit_core::*;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::json::{path_from_json, path_to_json};
use crate::parse::{parse_generators, parse_polynomial, parse_rational, Vars};
use crate::report::{chart_names, Exponent, FactorizationOut, Record, Report, RequestEcho, Values};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Dicritical divisors of a rational function `a/b`.
    Dicriticals,
    /// Dicritical divisors and Zariski indices of an ideal.
    IdealDicriticals,
    /// Base-point tree of an ideal.
    Basepoints,
    /// Principal part and simple-ideal exponents of the closure.
    ZariskiFactor,
    /// Whether `f` is integral over an ideal: `f` then the ideal.
    ClosureMember,
    /// Whether the second ideal is the integral closure of the first.
    ClosureEquals,
    /// Colength of an ideal and of its integral closure.
    Colength,
    /// Whether the first ideal is a reduction of the second.
    ReductionCheck,
    /// Whether a rational function is a special pencil.
    SpecialPencil,
    /// Rees certificate of a two-generated ideal at `--path`.
    ReesCertificate,
    /// Simple ideal of the divisor at `--path`.
    SimpleIdeal,
    /// Dicritical divisors of a polynomial at the line at infinity.
    AtInfinity,
    /// Member `m` of the Abhyankar family: `(F_m, G_m)` and `I_m`.
    AbhyankarFamily,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Clone, Debug)]
pub struct Request {
    pub command: Command,
    /// `Q` or `Fp:<p>`.
    pub field: String,
    /// Explicit variable names; `None` picks the command default.
    pub vars: Option<[String; 2]>,
    pub exprs: Vec<String>,
    /// Divisor path as JSON.
    pub path: Option<String>,
    pub depth: usize,
    pub nodes: usize,
    pub nmax: Option<usize>,
    pub format: Format,
}

impl Request {
    pub fn new(command: Command, exprs: &[&str]) -> Self {
        Request {
            command,
            field: "Q".into(),
            vars: None,
            exprs: exprs.iter().map(|s| s.to_string()).collect(),
            path: None,
            depth: 64,
            nodes: 4096,
            nmax: None,
            format: Format::Machine,
        }
    }

    fn limits(&self) -> Limits {
        Limits { max_depth: self.depth, max_nodes: self.nodes, n_max: self.nmax, ..Limits::default() }
    }

    fn vars(&self) -> Vars {
        match (&self.vars, self.command) {
            (Some([a, b]), _) => Vars::new(a, b),
            (None, Command::AtInfinity) => Vars::new("X", "Y").with_alias(0, "x").with_alias(1, "y"),
            (None, _) => Vars::new("x", "y"),
        }
    }
}

pub fn parse_field(spec: &str) -> Result<FieldTower, CliError> {
    let s = spec.trim();
    if s == "Q" {
        return Ok(FieldTower::rationals());
    }
    let p = s
        .strip_prefix("Fp:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| CliError::Usage(format!("field must be Q or Fp:<p>, found '{spec}'")))?;
    Ok(FieldTower::prime(p)?)
}

struct Ctx<'a> {
    req: &'a Request,
    k: FieldTower,
    vars: Vars,
    limits: Limits,
}

impl Ctx<'_> {
    fn names(&self) -> [&str; 2] {
        self.vars.primary()
    }

    fn expect_exprs(&self, n: usize, what: &str) -> Result<(), CliError> {
        if self.req.exprs.len() != n {
            return Err(CliError::Usage(format!("{} expects {what}", self.req.command.name())));
        }
        Ok(())
    }

    fn ideal(&self, i: usize) -> Result<LocalIdeal, CliError> {
        Ok(LocalIdeal::new(parse_generators(&self.req.exprs[i], &self.vars, &self.k)?)?)
    }

    fn path(&self) -> Result<QdtPath, CliError> {
        let text = self.req.path.as_ref().ok_or_else(|| CliError::Usage("--path is required".into()))?;
        let v: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("--path: {e}")))?;
        path_from_json(&self.k, &v)
    }

    fn record(&self, r: &DicriticalRecord) -> Record {
        let n = self.names();
        Record {
            path: path_to_json(r.divisor.path()),
            index: r.index,
            values: Values(vec![(n[0].into(), r.values[0] as i64), (n[1].into(), r.values[1] as i64)]),
            degree: r.degree,
        }
    }

    fn factorization(&self, f: &Factorization) -> FactorizationOut {
        FactorizationOut {
            principal: f.principal.format(self.names()),
            exponents: f.exponents.iter().map(|(p, e)| Exponent { path: path_to_json(p), exponent: *e }).collect(),
        }
    }
}

/// Runs a request; errors carry their exit codes.
pub fn run(req: &Request) -> Result<Report, CliError> {
    let k = parse_field(&req.field)?;
    let vars = req.vars();
    let path_echo = match &req.path {
        Some(p) => Some(serde_json::from_str(p).map_err(|e| CliError::Input(format!("--path: {e}")))?),
        None => None,
    };
    let names = vars.primary().map(String::from);
    let mut report = Report {
        request: RequestEcho {
            command: req.command.name(),
            vars: names,
            expressions: req.exprs.clone(),
            path: path_echo,
            depth: req.depth,
            nodes: req.nodes,
            nmax: req.nmax,
        },
        field: k.base().to_string(),
        records: Vec::new(),
        factorization: None,
        decision: None,
        witness: None,
        diagnostics: Vec::new(),
        data: Value::Null,
    };
    let cx = Ctx { req, k, vars, limits: req.limits() };
    dispatch(&cx, &mut report)?;
    Ok(report)
}

fn dispatch(cx: &Ctx, out: &mut Report) -> Result<(), CliError> {
    let names = cx.names();
    let l = &cx.limits;
    match cx.req.command {
        Command::Dicriticals => {
            cx.expect_exprs(1, "one rational function")?;
            let z = parse_rational(&cx.req.exprs[0], &cx.vars, &cx.k)?;
            let recs = dicritical_of_rational(&z, l)?;
            if z.is_regular_or_inverse() {
                out.diagnostics.push("z or 1/z is regular at the origin".into());
            }
            out.records = recs.iter().map(|r| cx.record(r)).collect();
            out.data = json!({ "function": z.format(names) });
        }
        Command::IdealDicriticals => {
            cx.expect_exprs(1, "one ideal")?;
            let j = cx.ideal(0)?;
            out.records = dicritical_set(&j, l)?.iter().map(|r| cx.record(r)).collect();
            out.data = json!({ "ideal": j.format(names) });
        }
        Command::Basepoints => {
            cx.expect_exprs(1, "one ideal")?;
            let j = cx.ideal(0)?;
            let tree = base_point_tree(&j, l)?;
            let nodes: Vec<Value> = tree
                .nodes
                .iter()
                .map(|n| {
                    let cn = chart_names(&n.path, names);
                    json!({
                        "path": path_to_json(&n.path),
                        "parent": n.parent,
                        "children": n.children,
                        "zariski": n.zariski,
                        "coordinates": cn,
                        "ideal": n.ideal.format([&cn[0], &cn[1]]),
                    })
                })
                .collect();
            out.records = dicritical_set(&j, l)?.iter().map(|r| cx.record(r)).collect();
            out.data = json!({ "principal": tree.principal.format(names), "nodes": nodes });
        }
        Command::ZariskiFactor => {
            cx.expect_exprs(1, "one ideal")?;
            let j = cx.ideal(0)?;
            out.factorization = Some(cx.factorization(&zariski_factorization(&j, l)?));
            out.records = dicritical_set(&j, l)?.iter().map(|r| cx.record(r)).collect();
        }
        Command::ClosureMember => {
            cx.expect_exprs(2, "a polynomial and an ideal")?;
            let f = parse_polynomial(&cx.req.exprs[0], &cx.vars, &cx.k)?;
            let j = cx.ideal(1)?;
            let data = closure_data(&j, l)?;
            out.decision = Some(data.contains(&f)?);
            let checks: Vec<Value> = data
                .required
                .iter()
                .map(|(v, need)| {
                    let got = if f.is_zero() { Value::Null } else { json!(v.value(&f).ok()) };
                    json!({ "path": path_to_json(v.path()), "required": need, "value": got })
                })
                .collect();
            out.factorization = Some(cx.factorization(&data.factorization));
            out.data = json!({ "checks": checks });
        }
        Command::ClosureEquals => {
            cx.expect_exprs(2, "two ideals")?;
            let (j, kk) = (cx.ideal(0)?, cx.ideal(1)?);
            out.decision = Some(closure_equals(&j, &kk, l)?);
            out.data = json!({
                "colength": colength(&kk, l)?,
                "closure_colength": closure_colength(&j, l)?,
            });
        }
        Command::Colength => {
            cx.expect_exprs(1, "one ideal")?;
            let j = cx.ideal(0)?;
            let c = colength(&j, l)?;
            let cc = closure_colength(&j, l)?;
            out.witness = Some(c as u64);
            out.decision = Some(c == cc);
            out.diagnostics.push("decision: the ideal is integrally closed; witness: its colength".into());
            out.data = json!({ "colength": c, "closure_colength": cc });
        }
        Command::ReductionCheck => {
            cx.expect_exprs(2, "two ideals, the candidate reduction first")?;
            let (j, i) = (cx.ideal(0)?, cx.ideal(1)?);
            let rep = is_reduction(&j, &i, l)?;
            out.decision = Some(rep.decision);
            out.witness = rep.witness.map(|w| w as u64);
            out.data = json!({ "valuative": rep.valuative, "direct": rep.witness.is_some() });
        }
        Command::SpecialPencil => {
            cx.expect_exprs(1, "one rational function")?;
            let z = parse_rational(&cx.req.exprs[0], &cx.vars, &cx.k)?;
            let d = special_pencil_test(&z)?;
            out.decision = Some(d.special);
            out.witness = d.witness.map(u64::from);
            out.data = json!({ "function": z.format(names) });
        }
        Command::ReesCertificate => {
            cx.expect_exprs(1, "one two-generated ideal and --path")?;
            let j = cx.ideal(0)?;
            let v = PrimeDivisor::new(cx.path()?);
            out.decision = Some(rees_certificate(&j, &v)?);
            let vals: Vec<u32> = j.gens().iter().map(|g| v.value(g)).collect::<Result<_, dicrit_core::Error>>()?;
            out.data = json!({ "generator_values": vals });
        }
        Command::SimpleIdeal => {
            cx.expect_exprs(0, "no expressions, only --path")?;
            let v = PrimeDivisor::new(cx.path()?);
            let p = v.simple_ideal(l)?;
            out.data = json!({
                "ideal": p.format(names),
                "threshold": v.simple_threshold()?,
                "multiplicities": v.intermediate_multiplicities()?,
                "orders": v.simple_orders(),
                "colength": colength(&p, l)?,
            });
        }
        Command::AtInfinity => at_infinity(cx, out)?,
        Command::AbhyankarFamily => {
            cx.expect_exprs(1, "the family index m")?;
            let m: u32 = cx.req.exprs[0]
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("m must be a positive integer, found '{}'", cx.req.exprs[0])))?;
            let fam = abhyankar_family(m, &cx.k, l)?;
            let j = LocalIdeal::new(vec![fam.f.clone(), fam.g.clone()])?;
            let gens = minimalize(&fam.ideal, l)?;
            let n_max = l.n_max.unwrap_or(colength(&fam.ideal, l)?);
            let direct = reduction_direct(&j, &fam.ideal, n_max, l)?;
            let valuative = reduction_valuative(&j, &fam.ideal, l)?;
            out.decision = Some(valuative && direct.is_some());
            out.witness = direct.map(|w| w as u64);
            out.records = dicritical_set(&j, l)?.iter().map(|r| cx.record(r)).collect();
            out.data = json!({
                "m": m,
                "F": fam.f.format(names),
                "G": fam.g.format(names),
                "I": gens.format(names),
                "order": fam.ideal.order(),
                "minimal_generators": gens.gens().len(),
                "valuative": valuative,
                "direct": direct.is_some(),
            });
        }
    }
    Ok(())
}

fn at_infinity(cx: &Ctx, out: &mut Report) -> Result<(), CliError> {
    cx.expect_exprs(1, "one polynomial")?;
    let f = parse_polynomial(&cx.req.exprs[0], &cx.vars, &cx.k)?;
    let rep = dicriticals_at_infinity(&f, &cx.limits)?;
    let global = cx.names();
    let mut points = Vec::new();
    for p in &rep.points {
        let pt = &p.point;
        let chart = pt.chart_names();
        let (label, zeta) = match &pt.kind {
            InfinityKind::Finite { zeta, c } => (format!("[1 : {} : 0]", pt.field.format(c)), Some(zeta.format(global[1]))),
            InfinityKind::Vertical => ("[0 : 1 : 0]".to_string(), None),
        };
        let mut idx = Vec::new();
        for (r, g) in p.records.iter().zip(&p.global_values) {
            idx.push(out.records.len());
            out.records.push(Record {
                path: path_to_json(r.divisor.path()),
                index: r.index,
                values: Values(vec![
                    (chart[0].into(), r.values[0] as i64),
                    (chart[1].into(), r.values[1] as i64),
                    (global[0].into(), g[0]),
                    (global[1].into(), g[1]),
                ]),
                degree: r.degree,
            });
        }
        let ideal_value: Vec<u32> =
            p.records.iter().map(|r| r.divisor.value_of_ideal(&pt.ideal)).collect::<Result<_, dicrit_core::Error>>()?;
        points.push(json!({
            "point": label,
            "zeta": zeta,
            "extended": pt.is_extended(),
            "coordinates": chart,
            "function": pt.z.format(chart),
            "ideal": pt.ideal.format(chart),
            "pencil_witness": pt.pencil_witness,
            "records": idx,
            "ideal_values": ideal_value,
        }));
    }
    out.data = json!({
        "degree": f.total_degree(),
        "total": rep.total(),
        "points": points,
    });
    Ok(())
}
