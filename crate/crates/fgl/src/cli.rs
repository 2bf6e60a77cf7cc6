//! Command-line front end: universal-ring tables, idempotent application,
//! and the named verification suites.
//!
//! Output on stdout is byte-deterministic for a fixed invocation (timing
//! goes to stderr), so runs can be diffed. Exit codes: 0 on success, 1 when
//! a verification suite reports a failure, 2 for usage or input errors.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::idempotents::{e2, epsilon2, epsilon2_generator_images, kozma_closure_holds, kozma_t};
use crate::law::FormalGroupLaw;
use crate::report::Report;
use crate::ring::{GeneratorTable, Polynomial};
use crate::series::TruncSeries;
use crate::verify::{self, Config};

/// Working precisions above this are refused: everything is exact, so cost
/// grows quickly with the truncation order.
pub const PRECISION_CAP: usize = 64;

#[derive(Parser)]
#[command(
    name = "fgl",
    about = "Exact calculus for one-dimensional commutative formal group laws",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a table computed over the universal coefficient ring.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        /// Series are exact through this degree; the universal ring carries
        /// generators m1 .. m(precision - 1). At most 64.
        #[arg(long, default_value_t = 8)]
        precision: usize,
        /// Modulus for the `kozma` table; must be prime.
        #[arg(long)]
        prime: Option<u32>,
        /// Largest index k for the `kozma` table (default: precision / prime).
        #[arg(long)]
        max_k: Option<u32>,
        #[command(flatten)]
        emit: EmitOpts,
    },
    /// Apply an odd-law projection to a formal group law read from a file.
    Apply {
        #[arg(value_enum)]
        idem: IdemKind,
        /// Law file: {"generators": [{"name", "weight"}...], "log": series}.
        #[arg(long)]
        fgl: PathBuf,
        /// Optionally truncate the input law to this precision first.
        #[arg(long)]
        precision: Option<usize>,
        #[command(flatten)]
        emit: EmitOpts,
    },
    /// Run a named verification suite and report each check.
    Verify {
        /// One of: series-calculus, fgl-axioms, idempotents, witt-groups,
        /// involutions, all.
        suite: String,
        #[arg(long, default_value_t = 8)]
        precision: usize,
        /// Seed for the randomized checks; fixed seed means fixed bytes out.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random samples per randomized check.
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[command(flatten)]
        emit: EmitOpts,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    /// Expansion coefficients c_1, c_3, ... of the universal law.
    CCoeffs,
    /// The recursive elements T_(l,k) for a prime modulus l.
    Kozma,
    /// Generator images of the parity projection onto odd laws.
    Epsilon2Images,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdemKind {
    Epsilon2,
    E2,
}

#[derive(Args)]
struct EmitOpts {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Parses the process arguments, runs the selected command, and returns the
/// process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    let (label, outcome) = dispatch(cli.cmd);
    let code = match outcome {
        Ok(done) => {
            let body = done.body;
            match done.emit_to {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 2;
                    }
                }
                None => print!("{body}"),
            }
            done.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    eprintln!("# {label}: {:.3}s", start.elapsed().as_secs_f64());
    code
}

struct Done {
    body: String,
    code: i32,
    emit_to: Option<PathBuf>,
}

fn dispatch(cmd: Cmd) -> (&'static str, Result<Done>) {
    match cmd {
        Cmd::Table {
            kind,
            precision,
            prime,
            max_k,
            emit,
        } => ("table", cmd_table(kind, precision, prime, max_k, emit)),
        Cmd::Apply {
            idem,
            fgl,
            precision,
            emit,
        } => ("apply", cmd_apply(idem, &fgl, precision, emit)),
        Cmd::Verify {
            suite,
            precision,
            seed,
            trials,
            emit,
        } => ("verify", cmd_verify(&suite, precision, seed, trials, emit)),
    }
}

fn check_precision(precision: usize) -> Result<()> {
    if !(2..=PRECISION_CAP).contains(&precision) {
        return Err(Error::BadJson(format!(
            "precision must be between 2 and {PRECISION_CAP}, got {precision}"
        )));
    }
    Ok(())
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// One table row: a name, the exact value, and its rendered form.
struct Row {
    name: String,
    value: Polynomial,
}

fn table_json(kind: &str, precision: usize, rows: &[Row], report: &Report) -> Value {
    let entries: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "value": serde_json::to_value(&r.value).expect("polynomial serializes"),
                "rendered": r.value.render(),
            })
        })
        .collect();
    json!({
        "table": {"kind": kind, "precision": precision, "entries": entries},
        "report": report.to_json(),
    })
}

fn table_text(rows: &[Row], report: &Report) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&format!("{} = {}\n", r.name, r.value.render()));
    }
    out.push('\n');
    out.push_str(&report.render_text());
    out.push('\n');
    out
}

fn finish_table(
    kind: &str,
    precision: usize,
    rows: Vec<Row>,
    report: Report,
    emit: EmitOpts,
) -> Result<Done> {
    let body = match emit.format {
        Format::Json => {
            let v = table_json(kind, precision, &rows, &report);
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        Format::Text => table_text(&rows, &report),
    };
    Ok(Done {
        body,
        code: if report.pass() { 0 } else { 1 },
        emit_to: emit.out,
    })
}

fn cmd_table(
    kind: TableKind,
    precision: usize,
    prime: Option<u32>,
    max_k: Option<u32>,
    emit: EmitOpts,
) -> Result<Done> {
    check_precision(precision)?;
    if !matches!(kind, TableKind::Kozma) && (prime.is_some() || max_k.is_some()) {
        return Err(Error::BadJson(
            "--prime and --max-k only apply to the kozma table".into(),
        ));
    }
    let trunc = precision + 1;
    match kind {
        TableKind::CCoeffs => {
            let law = FormalGroupLaw::universal(trunc);
            let c = law.c_coefficients()?;
            let rows: Vec<Row> = c
                .iter()
                .enumerate()
                .map(|(i, p)| Row {
                    name: format!("c{}", 2 * i + 1),
                    value: p.clone(),
                })
                .collect();
            let mut report = Report::new("table-c-coeffs");
            report.record(
                "c-coeffs-routes-agree",
                law.c_via_residue(c.len()).and_then(|res| {
                    if res == c {
                        Ok(format!(
                            "triangular solve and residue formula agree on {} coefficients",
                            c.len()
                        ))
                    } else {
                        Err(Error::AxiomViolation(
                            "the two computation routes disagree".into(),
                        ))
                    }
                }),
            );
            finish_table("c-coeffs", precision, rows, report, emit)
        }
        TableKind::Kozma => {
            let ell = prime.unwrap_or(2);
            if !is_prime(ell) {
                return Err(Error::BadJson(format!("--prime {ell} is not prime")));
            }
            let kmax = match max_k {
                Some(k) => k,
                None => precision as u32 / ell,
            };
            if kmax == 0 || (ell * kmax) as usize > precision {
                return Err(Error::BadJson(format!(
                    "kozma table needs 1 <= max-k and prime * max-k <= precision, \
                     got prime {ell}, max-k {kmax}, precision {precision}"
                )));
            }
            let mut rows = Vec::new();
            for k in 1..=kmax {
                let t = kozma_t(ell, k, precision)?;
                rows.push(Row {
                    name: format!("T({ell},{k})"),
                    value: t.value,
                });
            }
            let mut report = Report::new("table-kozma");
            report.record(
                "kozma-closure",
                kozma_closure_holds(ell, trunc).and_then(|ok| {
                    if ok {
                        Ok(format!(
                            "group-sum closure for modulus {ell} at truncation {trunc}"
                        ))
                    } else {
                        Err(Error::AxiomViolation(format!(
                            "group-sum closure fails for modulus {ell}"
                        )))
                    }
                }),
            );
            finish_table("kozma", precision, rows, report, emit)
        }
        TableKind::Epsilon2Images => {
            let table = GeneratorTable::universal(precision.saturating_sub(1));
            let hom = epsilon2_generator_images(&table)?;
            let rows: Vec<Row> = (0..table.len())
                .map(|i| Row {
                    name: table.name(i).to_string(),
                    value: hom.image(i).clone(),
                })
                .collect();
            let mut report = Report::new("table-epsilon2-images");
            report.record(
                "epsilon2-images-match-law",
                epsilon2(&FormalGroupLaw::universal(trunc)).and_then(|e| {
                    for i in 0..table.len() {
                        if hom.image(i) != e.law.log().coeff(i + 2) {
                            return Err(Error::AxiomViolation(format!(
                                "image of m{} differs from the projected logarithm",
                                i + 1
                            )));
                        }
                    }
                    Ok("images agree with the logarithm of the projected law".to_string())
                }),
            );
            finish_table("epsilon2-images", precision, rows, report, emit)
        }
    }
}

fn series_lines(out: &mut String, name: &str, s: &TruncSeries, var: &str) {
    out.push_str(&format!("{name} = {}\n", s.render(var)));
}

fn cmd_apply(
    idem: IdemKind,
    path: &PathBuf,
    precision: Option<usize>,
    emit: EmitOpts,
) -> Result<Done> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Error::BadJson(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&raw)
        .map_err(|e| Error::BadJson(format!("{} is not JSON: {e}", path.display())))?;
    let mut law = FormalGroupLaw::from_json(&v)?;
    if let Some(p) = precision {
        check_precision(p)?;
        let n = (p + 1).min(law.truncation());
        law = FormalGroupLaw::from_log(law.log().truncated(n))?;
    }

    let (result, attached_name, attached, images) = match idem {
        IdemKind::Epsilon2 => {
            let e = epsilon2(&law)?;
            let images = e.hom.as_ref().map(|h| {
                (0..h.source().len())
                    .map(|i| (h.source().name(i).to_string(), h.image(i).clone()))
                    .collect::<Vec<_>>()
            });
            (e.law, "phi", e.phi, images)
        }
        IdemKind::E2 => {
            let e = e2(&law)?;
            (e.law, "theta", e.theta, None)
        }
    };

    let body = match emit.format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("law".into(), result.to_json());
            obj.insert(
                "minus_one".into(),
                serde_json::to_value(result.minus_one()).expect("series serializes"),
            );
            obj.insert(
                attached_name.into(),
                serde_json::to_value(&attached).expect("series serializes"),
            );
            if let Some(images) = &images {
                let rows: Vec<Value> = images
                    .iter()
                    .map(|(name, p)| {
                        json!({
                            "generator": name,
                            "image": serde_json::to_value(p).expect("polynomial serializes"),
                            "rendered": p.render(),
                        })
                    })
                    .collect();
                obj.insert("images".into(), Value::Array(rows));
            }
            format!(
                "{}\n",
                serde_json::to_string_pretty(&Value::Object(obj)).expect("json")
            )
        }
        Format::Text => {
            let mut out = String::new();
            series_lines(&mut out, "log", result.log(), "X");
            series_lines(&mut out, "[-1]", result.minus_one(), "X");
            series_lines(&mut out, attached_name, &attached, "X");
            if let Some(images) = &images {
                for (name, p) in images {
                    out.push_str(&format!("{name} -> {}\n", p.render()));
                }
            }
            out
        }
    };
    Ok(Done {
        body,
        code: 0,
        emit_to: emit.out,
    })
}

fn cmd_verify(
    suite: &str,
    precision: usize,
    seed: u64,
    trials: usize,
    emit: EmitOpts,
) -> Result<Done> {
    check_precision(precision)?;
    if trials == 0 {
        return Err(Error::BadJson("--trials must be at least 1".into()));
    }
    let cfg = Config {
        precision,
        seed,
        trials,
    };
    let report = verify::run_suite(suite, &cfg)?;
    let body = match emit.format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&report.to_json()).expect("json")
        ),
        Format::Text => format!("{}\n", report.render_text()),
    };
    Ok(Done {
        body,
        code: if report.pass() { 0 } else { 1 },
        emit_to: emit.out,
    })
}

/// Shared by tests and examples: the universal table used for a precision.
pub fn universal_table_for(precision: usize) -> Arc<GeneratorTable> {
    GeneratorTable::universal(precision.saturating_sub(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_bounds_are_enforced() {
        assert!(check_precision(2).is_ok());
        assert!(check_precision(64).is_ok());
        assert!(check_precision(1).is_err());
        assert!(check_precision(65).is_err());
    }

    #[test]
    fn primality_is_checked() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(5));
        assert!(!is_prime(1));
        assert!(!is_prime(4));
        assert!(!is_prime(9));
        assert!(is_prime(31));
    }
}
