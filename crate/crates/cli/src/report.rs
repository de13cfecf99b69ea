//! The output document and its two renderings.

use dicrit_core::{Chart, QdtPath};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

/// Ordered `name -> value` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Values(pub Vec<(String, i64)>);

impl Serialize for Values {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub path: Value,
    pub index: u32,
    pub values: Values,
    pub degree: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Exponent {
    pub path: Value,
    pub exponent: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationOut {
    pub principal: String,
    pub exponents: Vec<Exponent>,
}

/// Echo of the request that produced a report.
#[derive(Clone, Debug, Serialize)]
pub struct RequestEcho {
    pub command: String,
    pub vars: [String; 2],
    pub expressions: Vec<String>,
    pub path: Option<Value>,
    pub depth: usize,
    pub nodes: usize,
    pub nmax: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub request: RequestEcho,
    pub field: String,
    pub records: Vec<Record>,
    pub factorization: Option<FactorizationOut>,
    pub decision: Option<bool>,
    pub witness: Option<u64>,
    pub diagnostics: Vec<String>,
    /// Command-specific details.
    pub data: Value,
}

impl Report {
    pub fn to_machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let r = &self.request;
        out.push_str(&format!("command   {}\n", r.command));
        out.push_str(&format!("field     {}\n", self.field));
        for e in &r.expressions {
            out.push_str(&format!("input     {e}\n"));
        }
        if let Some(p) = &r.path {
            out.push_str(&format!("path      {}\n", path_text(p)));
        }
        if !self.records.is_empty() {
            let rows: Vec<[String; 5]> = self
                .records
                .iter()
                .enumerate()
                .map(|(i, rec)| {
                    let vals = rec.values.0.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
                    let deg = rec.degree.map_or("-".into(), |d| d.to_string());
                    [i.to_string(), path_text(&rec.path), rec.index.to_string(), vals, deg]
                })
                .collect();
            out.push_str("\nrecords\n");
            out.push_str(&table(&["#", "path", "index", "values", "degree"], &rows));
        }
        if let Some(f) = &self.factorization {
            out.push_str(&format!("\nprincipal {}\n", f.principal));
            let rows: Vec<[String; 2]> = f.exponents.iter().map(|e| [path_text(&e.path), e.exponent.to_string()]).collect();
            if !rows.is_empty() {
                out.push_str(&table(&["path", "exponent"], &rows));
            }
        }
        if let Some(d) = self.decision {
            out.push_str(&format!("\ndecision  {d}\n"));
        }
        if let Some(w) = self.witness {
            out.push_str(&format!("witness   {w}\n"));
        }
        if !self.data.is_null() {
            out.push('\n');
            value_text(&self.data, 0, &mut out);
        }
        for d in &self.diagnostics {
            out.push_str(&format!("note      {d}\n"));
        }
        out
    }
}

fn table<const N: usize>(head: &[&str; N], rows: &[[String; N]]) -> String {
    let mut w: [usize; N] = head.map(str::len);
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let s: Vec<String> = cells.iter().enumerate().map(|(i, c)| format!("{c:<width$}", width = w[i])).collect();
        format!("  {}\n", s.join("  ").trim_end())
    };
    let mut out = line(head.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

/// Compact rendering of a serialized path: `A(c)`, `A(c; minpoly)`, `I`.
pub fn path_text(p: &Value) -> String {
    let Some(steps) = p.as_array() else {
        return p.to_string();
    };
    if steps.is_empty() {
        return "root".into();
    }
    steps
        .iter()
        .map(|s| match s["chart"].as_str() {
            Some("infinity") => "I".to_string(),
            _ => match s.get("extension") {
                Some(Value::Object(e)) => format!("A({}; {})", scalar_text(&s["c"]), scalar_text(&e["minpoly"])),
                _ => format!("A({})", scalar_text(&s["c"])),
            },
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar_text).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn value_text(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    _ if k == "path" => out.push_str(&format!("{pad}{k}  {}\n", path_text(x))),
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}\n"));
                        value_text(x, indent + 2, out);
                    }
                    Value::Array(a) if a.iter().any(Value::is_object) => {
                        out.push_str(&format!("{pad}{k}\n"));
                        for (i, item) in a.iter().enumerate() {
                            out.push_str(&format!("{pad}  [{i}]\n"));
                            value_text(item, indent + 4, out);
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}  {}\n", scalar_text(x))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
}

/// Names of the local coordinates at the end of a path, derived from the
/// root names: the exceptional coordinate keeps a name, the other one gets
/// the next index (`x`, `x1`, `x2`, ...).
pub fn chart_names(path: &QdtPath, root: [&str; 2]) -> [String; 2] {
    let mut cur = [(root[0].to_string(), 0u32), (root[1].to_string(), 0u32)];
    for s in path.steps() {
        let [u, w] = cur.clone();
        cur = match s.chart {
            Chart::Affine(_) => [u, (w.0, w.1 + 1)],
            Chart::Infinity => [w, (u.0, u.1 + 1)],
        };
    }
    cur.map(|(n, i)| if i == 0 { n } else { format!("{n}{i}") })
}
