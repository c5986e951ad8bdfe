//! The `qfourier` command line: seeded runs that print a summary or one
//! [`RunRecord`] JSON line per trial.
//!
//! Exit status is 0 on success, 1 when an algorithm runs out of budget and
//! 2 for usage errors.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algorithms::{
    auto_q, deutsch_jozsa, deutsch_xor_distribution, deutsch_xor_original, factor, identify_linear_fk, linear_fk_table,
    simon_solve, FactorMethod, ShorCircuit, SimonInstance,
};
use crate::error::Error;
use crate::fourier::ft_matrix;
use crate::group::GroupSpec;
use crate::kitaev::{kitaev_order_with, KitaevOptions};
use crate::record::RunRecord;
use crate::rng::seeded_rng;
use crate::truth_table::TruthTable;

#[derive(Debug, Parser)]
#[command(
    name = "qfourier",
    version,
    about = "Seeded statevector runs of Fourier-based quantum algorithms"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Seed of the first trial; trial i uses seed + i.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print one JSON record per trial.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 1)]
    trials: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DjKind {
    Constant0,
    Constant1,
    /// f(x) = leading bit of x.
    Balanced,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Shor,
    Kitaev,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// One-query XOR test on a function B -> B (all four when no oracle).
    DeutschXor {
        #[arg(long)]
        oracle: Option<PathBuf>,
    },
    /// Constant vs balanced on B^n with one query.
    DeutschJozsa {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        oracle: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "balanced")]
        kind: DjKind,
    },
    /// Reads k from f_k(x) = k.x with one query.
    IdentifyFk {
        #[arg(long)]
        n: Option<usize>,
        /// k as a bit string, most significant first.
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        oracle: Option<PathBuf>,
    },
    /// Recovers xi from a 2-to-1 function with f(x) = f(x xor xi).
    Simon {
        #[arg(long)]
        n: Option<usize>,
        /// Builds f(x) = min(x, x xor xi).
        #[arg(long)]
        xi: Option<String>,
        #[arg(long)]
        oracle: Option<PathBuf>,
        #[arg(long)]
        max_samples: Option<usize>,
    },
    /// Order of y mod N by sampling c from the DFT_q circuit.
    Shor {
        #[arg(long = "N")]
        modulus: u64,
        #[arg(long)]
        y: u64,
        /// Defaults to the least power of two >= N^2.
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 64)]
        max_reps: usize,
    },
    /// Order of y mod N by eigenphase estimation.
    Kitaev {
        #[arg(long = "N")]
        modulus: u64,
        #[arg(long)]
        y: u64,
        /// Defaults to 1 + ceil(log2 N).
        #[arg(long)]
        bits: Option<usize>,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
    },
    /// A nontrivial divisor of N.
    Factor {
        #[arg(long = "N")]
        modulus: u64,
        #[arg(long, value_enum, default_value = "shor")]
        method: Method,
    },
    /// Prints the Fourier matrix of Z_n1 x .. x Z_nk.
    FtDump {
        /// Comma-separated moduli, e.g. 2,2.
        #[arg(long)]
        group: String,
    },
}

/// Runs the command line and returns the process exit status.
pub fn run_cli<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    if cli.common.trials == 0 {
        let _ = writeln!(err, "error: --trials must be at least 1");
        return 2;
    }
    for i in 0..cli.common.trials {
        let seed = cli.common.seed.wrapping_add(i);
        let start = Instant::now();
        match run_one(&cli.command, seed) {
            Ok((mut record, summary)) => {
                record.wall_time_ms = start.elapsed().as_millis() as u64;
                let _ = if cli.common.json {
                    writeln!(out, "{}", record.to_json())
                } else {
                    writeln!(out, "{summary}")
                };
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return exit_code(&e);
            }
        }
    }
    0
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExhausted { .. } | Error::InconsistentStages { .. } | Error::ZeroNorm => 1,
        _ => 2,
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn read_table(path: &PathBuf) -> Result<TruthTable, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    TruthTable::parse(&text)
}

fn parse_bits(s: &str, what: &str) -> Result<(u64, usize), Error> {
    if s.is_empty() || s.len() > 63 || !s.chars().all(|c| c == '0' || c == '1') {
        return Err(usage(format!("--{what} must be a bit string, got '{s}'")));
    }
    Ok((u64::from_str_radix(s, 2).map_err(|e| usage(e.to_string()))?, s.len()))
}

fn bits(v: u64, n: usize) -> String {
    format!("{v:0n$b}")
}

fn table_n(table: &TruthTable, n: Option<usize>) -> Result<usize, Error> {
    let g = table.group();
    if !g.is_boolean() {
        return Err(usage(format!("oracle domain ({g}) is not B^n")));
    }
    match n {
        Some(n) if n != g.rank() => Err(usage(format!(
            "--n {n} disagrees with the oracle's domain B^{}",
            g.rank()
        ))),
        _ => Ok(g.rank()),
    }
}

type Outcome = Result<(RunRecord, String), Error>;

fn run_one(cmd: &Command, seed: u64) -> Outcome {
    let mut rng = seeded_rng(seed);
    match cmd {
        Command::DeutschXor { oracle } => {
            let tables = match oracle {
                Some(p) => vec![read_table(p)?],
                None => {
                    let b1 = GroupSpec::boolean(1)?;
                    [[0, 0], [1, 1], [0, 1], [1, 0]]
                        .iter()
                        .map(|v| TruthTable::new(&b1, v.to_vec()))
                        .collect::<Result<_, _>>()?
                }
            };
            let mut rec = RunRecord::new("deutsch-xor", seed);
            let mut results = Vec::new();
            let mut lines = Vec::new();
            let mut dists = Vec::new();
            for t in &tables {
                let v = deutsch_xor_original(t, &mut rng)?;
                let d = deutsch_xor_distribution(t)?;
                rec.oracle_queries += v.queries_used as u64;
                rec.samples.push(json!(v.measured_label));
                lines.push(format!(
                    "f = {:?}: {:?} (P(inconclusive) = {})",
                    t.values(),
                    v.outcome,
                    d.p_inconclusive
                ));
                results.push(json!({ "f": t.values(), "verdict": v.outcome }));
                dists.push(d);
            }
            rec.post("distribution", &dists);
            rec.result = Value::Array(results);
            Ok((rec, lines.join("\n")))
        }
        Command::DeutschJozsa { n, oracle, kind } => {
            let (table, n) = match oracle {
                Some(p) => {
                    let t = read_table(p)?;
                    let n = table_n(&t, *n)?;
                    (t, n)
                }
                None => {
                    let n = n.ok_or_else(|| usage("deutsch-jozsa needs --n or --oracle"))?;
                    let g = GroupSpec::boolean(n)?;
                    let top = n - 1;
                    let t = match kind {
                        DjKind::Constant0 => TruthTable::from_label_fn(&g, 2, |_| 0)?,
                        DjKind::Constant1 => TruthTable::from_label_fn(&g, 2, |_| 1)?,
                        DjKind::Balanced => TruthTable::from_label_fn(&g, 2, |x| (x >> top) & 1)?,
                    };
                    (t, n)
                }
            };
            let v = deutsch_jozsa(&table, n, &mut rng)?;
            let mut rec = RunRecord::new("deutsch-jozsa", seed).param("n", n);
            rec.samples.push(json!(v.measured_label.map(|l| bits(l, n))));
            rec.post("probability", v.probability);
            rec.oracle_queries = v.queries_used as u64;
            rec.result = json!(v.outcome);
            let summary = format!("{:?} (one query, outcome probability {:.6})", v.outcome, v.probability);
            Ok((rec, summary))
        }
        Command::IdentifyFk { n, k, oracle } => {
            let (table, n) = match (oracle, k) {
                (Some(p), None) => {
                    let t = read_table(p)?;
                    let n = table_n(&t, *n)?;
                    (t, n)
                }
                (None, Some(k)) => {
                    let (kv, len) = parse_bits(k, "k")?;
                    let n = n.unwrap_or(len);
                    (linear_fk_table(kv, n)?, n)
                }
                _ => return Err(usage("identify-fk needs exactly one of --k and --oracle")),
            };
            let (k, p, queries) = identify_linear_fk(&table, n, &mut rng)?;
            let mut rec = RunRecord::new("identify-fk", seed).param("n", n);
            rec.samples.push(json!(bits(k, n)));
            rec.post("probability", p);
            rec.oracle_queries = queries as u64;
            rec.result = json!(bits(k, n));
            Ok((rec, format!("k = {} (probability {p:.6}, {queries} query)", bits(k, n))))
        }
        Command::Simon {
            n,
            xi,
            oracle,
            max_samples,
        } => {
            let inst = match (oracle, xi) {
                (Some(p), None) => {
                    let t = read_table(p)?;
                    table_n(&t, *n)?;
                    SimonInstance::from_table(t)?
                }
                (None, Some(x)) => {
                    let (xv, len) = parse_bits(x, "xi")?;
                    SimonInstance::canonical(n.unwrap_or(len), xv)?
                }
                _ => return Err(usage("simon needs exactly one of --xi and --oracle")),
            };
            let n = inst.n();
            let cap = max_samples.unwrap_or_else(|| inst.default_max_samples());
            let sol = simon_solve(&inst, &mut rng, cap)?;
            let mut rec = RunRecord::new("simon", seed).param("n", n).param("max_samples", cap);
            rec.samples = sol.samples.iter().map(|&y| json!(bits(y, n))).collect();
            rec.post("rank", n - 1);
            rec.oracle_queries = sol.oracle_queries as u64;
            rec.result = json!(bits(sol.xi, n));
            let summary = format!("xi = {} after {} samples", bits(sol.xi, n), sol.samples.len());
            Ok((rec, summary))
        }
        Command::Shor {
            modulus,
            y,
            q,
            max_reps,
        } => {
            let q = match q {
                Some(q) => *q,
                None => auto_q(*modulus)?,
            };
            let circ = ShorCircuit::new(*y, *modulus, q)?;
            let run = circ.find_order(&mut rng, *max_reps)?;
            let mut rec = RunRecord::new("shor", seed)
                .param("N", modulus)
                .param("y", y)
                .param("q", q)
                .param("max_reps", max_reps);
            rec.samples = run.samples.iter().map(|&c| json!(c)).collect();
            rec.post("repetitions", run.repetitions);
            rec.oracle_queries = run.repetitions as u64;
            rec.result = json!(run.recovered_r);
            let summary = format!(
                "order of {y} mod {modulus} is {} ({} samples, q = {q})",
                run.recovered_r.unwrap_or(0),
                run.repetitions
            );
            Ok((rec, summary))
        }
        Command::Kitaev {
            modulus,
            y,
            bits: l,
            epsilon,
        } => {
            let opts = KitaevOptions {
                epsilon: *epsilon,
                bits: *l,
                ..KitaevOptions::default()
            };
            let run = kitaev_order_with(*y, *modulus, &opts, &mut rng)?;
            let mut rec = RunRecord::new("kitaev", seed)
                .param("N", modulus)
                .param("y", y)
                .param("bits", run.bits)
                .param("epsilon", epsilon);
            rec.samples = run.samples().into_iter().map(|c| json!(c)).collect();
            let stages: Vec<Value> = run
                .estimates
                .iter()
                .map(|e| {
                    json!(e
                        .stages
                        .iter()
                        .map(
                            |s| json!({ "j": s.j, "t": s.t, "y_count": s.y_count, "p0_hat": s.p0_hat, "bits": s.bits })
                        )
                        .collect::<Vec<_>>())
                })
                .collect();
            rec.post("stages", stages);
            rec.post("samples_per_stage", run.samples_per_stage);
            rec.post("inconsistent", run.inconsistent);
            // each stage spends t cosine and t quadrature PROCs
            rec.oracle_queries = (run.estimates.len() * run.bits * 2 * run.samples_per_stage) as u64;
            rec.result = json!(run.recovered_r);
            let summary = format!(
                "order of {y} mod {modulus} is {} ({} estimates of {} bits)",
                run.recovered_r.unwrap_or(0),
                run.estimates.len(),
                run.bits
            );
            Ok((rec, summary))
        }
        Command::Factor { modulus, method } => {
            let m = match method {
                Method::Shor => FactorMethod::Shor,
                Method::Kitaev => FactorMethod::Kitaev,
            };
            let run = factor(*modulus, m, &mut rng)?;
            let mut rec = RunRecord::new("factor", seed).param("N", modulus).param("method", m);
            rec.samples = run.attempts.iter().map(|a| json!(a.y)).collect();
            rec.post("attempts", &run.attempts);
            rec.oracle_queries = run.attempts.iter().map(|a| a.samples as u64).sum();
            rec.result = json!(run.divisor);
            let summary = format!("{modulus} = {} x {}", run.divisor, modulus / run.divisor);
            Ok((rec, summary))
        }
        Command::FtDump { group } => {
            let moduli = group
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<u64>()
                        .map_err(|_| usage(format!("bad modulus '{s}' in --group")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let g = GroupSpec::new(&moduli)?;
            let text = ft_matrix(&g)?.to_text();
            let mut rec = RunRecord::new("ft-dump", seed).param("group", g.to_string());
            rec.result = json!(text);
            Ok((rec, text.trim_end().to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("qfourier").chain(args.iter().copied());
        let code = run_cli(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(&["ft-dump", "--group", "2,2"]).0, 0);
        assert_eq!(run(&["bogus"]).0, 2);
        assert_eq!(run(&["shor", "--N", "15", "--y", "5"]).0, 2);
        assert_eq!(run(&["simon", "--xi", "0110", "--max-samples", "0"]).0, 1);
        assert_eq!(run(&["--help"]).0, 0);
    }

    #[test]
    fn simon_example() {
        let (code, out, _) = run(&["simon", "--n", "4", "--xi", "0110", "--seed", "1", "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["result"], "0110");
    }
}
