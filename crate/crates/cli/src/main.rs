use std::process::ExitCode;

use clap::Parser;
use dicrit_cli::{run, Command, Format, Request};

/// Dicritical divisors, base points, Zariski factorizations, integral
/// closures and reductions in two-dimensional regular local rings.
#[derive(Parser, Debug)]
#[command(name = "dicrit", version)]
struct Args {
    /// Ground field: Q or Fp:<p>.
    #[arg(long, default_value = "Q")]
    field: String,
    /// Bound on the depth of base points.
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..=10_000))]
    depth: u32,
    /// Bound on the number of base points.
    #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u32).range(1..=1_000_000))]
    nodes: u32,
    /// Largest reduction exponent tried (default: colength of the larger ideal).
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=10_000))]
    nmax: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Variable names, comma separated (default x,y; X,Y for at-infinity).
    #[arg(long)]
    vars: Option<String>,
    /// Divisor path as a JSON array of steps.
    #[arg(long)]
    path: Option<String>,
    #[arg(value_enum)]
    command: Command,
    /// Expressions; ideals are comma separated generator lists.
    #[arg(allow_hyphen_values = true)]
    exprs: Vec<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let vars = match args.vars.as_deref().map(|v| v.split(',').map(str::trim).collect::<Vec<_>>()) {
        None => None,
        Some(v) if v.len() == 2 && v.iter().all(|s| is_name(s)) && v[0] != v[1] => Some([v[0].to_string(), v[1].to_string()]),
        Some(_) => {
            eprintln!("error: --vars takes two distinct names, e.g. x,y");
            return ExitCode::from(2);
        }
    };
    let req = Request {
        command: args.command,
        field: args.field,
        vars,
        exprs: args.exprs,
        path: args.path,
        depth: args.depth as usize,
        nodes: args.nodes as usize,
        nmax: args.nmax.map(|n| n as usize),
        format: args.format,
    };
    match run(&req) {
        Ok(report) => {
            match req.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Machine => println!("{}", report.to_machine()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if req.format == Format::Machine {
                let doc = serde_json::json!({ "error": { "family": e.family(), "message": e.to_string() } });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn is_name(s: &str) -> bool {
    let mut c = s.chars();
    c.next().is_some_and(|f| f.is_alphabetic() || f == '_') && c.all(|ch| ch.is_alphanumeric() || ch == '_')
}
