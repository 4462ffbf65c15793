use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nilvar::exactalg::{FieldCtx, PrimeField, DEFAULT_PRIME, DEFAULT_TRIALS};
use nilvar::io::{load_quiver, pimod_to_json};
use nilvar::multiset::RootMultiset;
use nilvar::par::{ExecMode, TrialConfig};
use nilvar::quiver::DimVector;
use nilvar::starops::StarEngine;
use nilvar::suites::{run_suite, SUITES};
use nilvar::Error;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "nilvar", version, about = "Components of Lusztig's nilpotent varieties and the extension product")]
struct Cli {
    /// Built-in quiver (A2, A3, A4, ..., D4) or path to a quiver JSON file.
    #[arg(long, global = true, default_value = "A2")]
    quiver: String,
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Run trials on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the positive roots.
    Roots,
    /// List the components of Λ(d) by root multiset.
    Components { d: DimVector },
    /// Generic extension product m * n.
    Star { m: RootMultiset, n: RootMultiset },
    /// Whether the component of m is rigid.
    Rigid { m: RootMultiset },
    /// Strong and weak commutativity of m and n.
    Commute { m: RootMultiset, n: RootMultiset },
    /// The dual component.
    Dual { m: RootMultiset },
    /// Crystal graph of left f_i from the empty multiset.
    Crystal {
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Compare (m * n) * k with m * (n * k).
    Assoc { m: RootMultiset, n: RootMultiset, k: RootMultiset },
    /// Generic dim Ext¹ over all pairs of components of Λ(d).
    ExtTable { d: DimVector },
    /// Run a named invariant suite ("all" runs every suite).
    Check {
        suite: String,
        /// Largest total dimension of the components involved.
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
    },
    /// Dump a random point of the conormal stratum of m as JSON.
    Sample { m: RootMultiset },
}

struct Failure {
    code: u8,
    message: String,
    stdout: Option<String>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoMajority { .. } | Error::VerificationFailed(..) => 3,
            Error::RouteDisagreement(_)
            | Error::NegativeExt(_)
            | Error::HomMatrixSingular
            | Error::Inconsistent
            | Error::NoNonnegativeSolution
            | Error::Assertion(_) => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
            stdout: None,
        }
    }
}

fn render(format: Format, text: String, value: Value) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&value).expect("json"),
        Format::Text | Format::Dot => text,
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let field = PrimeField::new(cli.prime)?;
    let mode = if cli.sequential {
        ExecMode::Sequential
    } else {
        ExecMode::Parallel
    };
    let cfg = TrialConfig::new(field, cli.seed, cli.trials as usize).with_mode(mode);
    let q = load_quiver(&cli.quiver)?;
    let engine = || StarEngine::new(&q, cfg);
    let fmt = cli.format;

    Ok(match cli.command {
        Command::Roots => {
            let roots = q.positive_roots()?;
            let names: Vec<String> = roots.roots().iter().map(ToString::to_string).collect();
            render(fmt, names.join("\n"), json!(names))
        }
        Command::Components { d } => {
            let cs = engine()?.enumerate_components(&d)?;
            let names: Vec<String> = cs.iter().map(ToString::to_string).collect();
            render(fmt, names.join("\n"), json!(names))
        }
        Command::Star { m, n } => {
            let r = engine()?.star_product(&m, &n)?;
            let text = format!(
                "{}\nagreement {}/{}, min ext1 {}",
                r.result, r.agreement, r.trials, r.min_ext1
            );
            render(fmt, text, json!(r))
        }
        Command::Rigid { m } => {
            let e = engine()?;
            let v = nilvar::pimod::is_rigid_component(e.catalog(), &m, e.config())?;
            let word = if v.rigid { "rigid" } else { "not rigid" };
            let text = format!("{m}: {word} ({}/{} trials)", v.agreement, v.trials);
            let value = json!({
                "component": m,
                "rigid": v.rigid,
                "trials": v.trials,
                "agreement": v.agreement,
            });
            render(fmt, text, value)
        }
        Command::Commute { m, n } => {
            let c = engine()?.commute(&m, &n)?;
            let text = format!("strong: {}\nweak: {}", c.strong, c.weak);
            render(fmt, text, json!(c))
        }
        Command::Dual { m } => {
            let d = engine()?.dual_component(&m)?;
            render(fmt, d.to_string(), json!({ "component": m, "dual": d }))
        }
        Command::Crystal { depth, dot } => {
            let g = engine()?.crystal_graph(depth)?;
            if dot || fmt == Format::Dot {
                g.to_dot(&q)
            } else {
                let text = g
                    .edges
                    .iter()
                    .map(|&(a, b, i)| format!("{} -f{}-> {}", g.nodes[a], q.name(i), g.nodes[b]))
                    .collect::<Vec<_>>()
                    .join("\n");
                let edges: Vec<Value> = g
                    .edges
                    .iter()
                    .map(|&(a, b, i)| {
                        json!({ "from": g.nodes[a], "to": g.nodes[b], "label": format!("f{}", q.name(i)) })
                    })
                    .collect();
                render(fmt, text, json!({ "nodes": g.nodes, "edges": edges }))
            }
        }
        Command::Assoc { m, n, k } => {
            let r = engine()?.associativity_probe(&m, &n, &k)?;
            let text = format!("left: {}\nright: {}\nequal: {}", r.left, r.right, r.equal);
            render(fmt, text, json!(r))
        }
        Command::ExtTable { d } => {
            let t = engine()?.ext_table(&d)?;
            let width = t.components.iter().map(|c| c.to_string().len()).max().unwrap_or(1);
            let text = t
                .components
                .iter()
                .zip(&t.values)
                .map(|(c, row)| {
                    let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                    format!("{:<width$}  {}", c.to_string(), cells.join(" "))
                })
                .collect::<Vec<_>>()
                .join("\n");
            render(fmt, text, json!(t))
        }
        Command::Check { suite, max_dim } => {
            let e = engine()?;
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let reports = names
                .iter()
                .map(|s| run_suite(&e, s, max_dim))
                .collect::<nilvar::Result<Vec<_>>>()?;
            let text = reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
            let out = render(fmt, text, json!(reports));
            if reports.iter().all(|r| r.passed()) {
                out
            } else {
                let failed = reports.iter().filter(|r| !r.passed()).count();
                return Err(Failure {
                    code: 4,
                    message: format!("{failed} suite(s) failed"),
                    stdout: Some(out),
                });
            }
        }
        Command::Sample { m } => {
            let e = engine()?;
            let x = e.sample(&m, &mut FieldCtx::new(field, cli.seed))?;
            serde_json::to_string_pretty(&pimod_to_json(&q, &x)).expect("json")
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{}", out.trim_end());
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(out) = f.stdout {
                println!("{}", out.trim_end());
            }
            eprintln!("nilvar: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
