use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use weingarten::verify::{self, Suite};
use weingarten::weingarten::{index_pairings, wg_matrix_formula};
use weingarten::{
    conjecture_check, estimate_monomial, format_rational, full_cycle_poly, full_cycle_properties, gram, integrate_orth,
    integrate_unit, partitions_of, truncated_trace_moment, wg, wg_matrix_oracle, zonal_table, Dim, Group, MonomialSpec,
    Partition, RatMatrix, Rational,
};

#[derive(Parser, Debug)]
#[command(name = "wgcalc", version, about = "Exact Weingarten calculus for O(d) and U(d)")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weingarten function of a single coset type.
    Wg {
        #[arg(long, default_value = "orth")]
        group: Group,
        #[arg(long)]
        coset: Partition,
        #[command(flatten)]
        dim: DimArgs,
    },
    /// Weingarten values for every coset type of weight n.
    Table {
        #[arg(long, default_value = "orth")]
        group: Group,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        dim: DimArgs,
    },
    /// Exact Haar integral of a monomial in the matrix entries.
    Integrate {
        #[arg(long)]
        group: Group,
        #[arg(long)]
        d: i64,
        /// Factors as "i,j;k,l;..." with a trailing * for conjugates.
        #[arg(long)]
        entries: MonomialSpec,
    },
    /// Moment of the trace of the upper-left k x k corner, of order 2n.
    Truncated {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        d: i64,
    },
    /// Numerator polynomial P_n of the full-cycle orthogonal Weingarten value.
    Fullcycle {
        #[arg(long)]
        n: usize,
        /// Check degree, leading and constant coefficients, and coefficient positivity.
        #[arg(long)]
        check: bool,
    },
    /// Gram matrix d^loops over pair partitions.
    Gram {
        #[arg(long, default_value = "orth")]
        group: Group,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: i64,
        /// Also print the pseudo-inverse and compare it with the character formula.
        #[arg(long)]
        oracle: bool,
    },
    /// Zonal spherical function values omega^lambda_rho.
    ZonalTable {
        #[arg(long)]
        n: usize,
    },
    /// Monte Carlo estimate of a monomial integral.
    Mc {
        #[arg(long)]
        group: Group,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        entries: MonomialSpec,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Agreement threshold in standard errors.
        #[arg(long, default_value_t = 4.0)]
        sigmas: f64,
    },
    /// Run a battery of exact checks.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct DimArgs {
    #[arg(long)]
    d: Option<i64>,
    /// Keep d as an indeterminate (the default).
    #[arg(long)]
    symbolic: bool,
}

impl DimArgs {
    fn dim(&self) -> Dim {
        match self.d {
            Some(d) if !self.symbolic => Dim::Fixed(d),
            _ => Dim::Symbolic,
        }
    }
}

enum Failure {
    Usage(String),
    Check,
}

impl From<weingarten::Error> for Failure {
    fn from(e: weingarten::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn dim_json(dim: Dim) -> Value {
    match dim {
        Dim::Symbolic => json!("symbolic"),
        Dim::Fixed(d) => json!(d),
    }
}

fn value_json(value: &weingarten::WgValue) -> Value {
    let mut out = json!({
        "group": value.group,
        "coset": value.coset,
        "n": value.n,
        "d": dim_json(value.dim),
        "value": value.to_string(),
    });
    if let Some(r) = value.symbolic() {
        out["coefficients"] = serde_json::to_value(r).expect("serializable");
    }
    out
}

fn matrix_json(m: &RatMatrix) -> Value {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_rational).collect::<Vec<_>>())
        .collect()
}

fn print_matrix(m: &RatMatrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(format_rational).collect();
        println!("{}", row.join(" "));
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Wg { group, coset, dim } => {
            let value = wg(group, &coset, dim.dim())?;
            if json {
                print_json(&value_json(&value));
            } else {
                println!("{value}");
            }
        }
        Command::Table { group, n, dim } => {
            let values = partitions_of(n)
                .iter()
                .map(|mu| wg(group, mu, dim.dim()))
                .collect::<weingarten::Result<Vec<_>>>()?;
            if json {
                print_json(&values.iter().map(value_json).collect());
            } else {
                for v in &values {
                    println!("({})\t{v}", v.coset);
                }
            }
        }
        Command::Integrate { group, d, entries } => {
            let value = match group {
                Group::Orthogonal => integrate_orth(&entries, d)?,
                Group::Unitary => integrate_unit(&entries, d)?,
            };
            if json {
                print_json(&json!({
                    "group": group,
                    "d": d,
                    "entries": entries,
                    "value": format_rational(&value),
                }));
            } else {
                println!("{}", format_rational(&value));
            }
        }
        Command::Truncated { n, k, d } => {
            let value = truncated_trace_moment(n, k, d)?;
            if json {
                print_json(&json!({ "n": n, "k": k, "d": d, "value": format_rational(&value) }));
            } else {
                println!("{}", format_rational(&value));
            }
        }
        Command::Fullcycle { n, check } => return fullcycle(n, check, json),
        Command::Gram { group, n, d, oracle } => {
            let g = gram(n, group, d)?;
            let pairings: Vec<String> = index_pairings(n, group).iter().map(|m| m.to_string()).collect();
            let compared = if oracle {
                let w = wg_matrix_oracle(n, group, d)?;
                let matches = wg_matrix_formula(n, group, d)? == w;
                Some((w, matches))
            } else {
                None
            };
            if json {
                let mut out = json!({ "group": group, "n": n, "d": d, "pairings": pairings, "gram": matrix_json(&g) });
                if let Some((w, matches)) = &compared {
                    out["oracle"] = matrix_json(w);
                    out["formula_matches"] = json!(matches);
                }
                print_json(&out);
            } else {
                println!("# pairings: {}", pairings.join(" "));
                print_matrix(&g);
                if let Some((w, matches)) = &compared {
                    println!("# pseudo-inverse");
                    print_matrix(w);
                    println!("{} formula = pseudo-inverse", verdict(*matches));
                }
            }
            if matches!(compared, Some((_, false))) {
                return Err(Failure::Check);
            }
        }
        Command::ZonalTable { n } => {
            let table = zonal_table(n)?;
            if json {
                print_json(&table.to_json());
            } else {
                let header: Vec<String> = table.partitions().iter().map(|p| format!("({p})")).collect();
                println!("lambda\\rho\t{}", header.join("\t"));
                for (lambda, row) in table.partitions().iter().zip(table.rows()) {
                    let cells: Vec<String> = row.iter().map(format_rational).collect();
                    println!("({lambda})\t{}", cells.join("\t"));
                }
            }
        }
        Command::Mc {
            group,
            d,
            entries,
            samples,
            seed,
            sigmas,
        } => {
            let est = estimate_monomial(&entries, group, d, samples, seed)?;
            let exact: Option<Rational> = match group {
                Group::Orthogonal => integrate_orth(&entries, d as i64).ok(),
                Group::Unitary => integrate_unit(&entries, d as i64).ok(),
            };
            let exact_f = exact.as_ref().and_then(|x| x.to_f64());
            let zscore = exact_f.map(|x| est.zscore(x));
            if json {
                print_json(&json!({
                    "group": group,
                    "d": d,
                    "entries": entries,
                    "samples": est.samples,
                    "seed": est.seed,
                    "mean": est.mean,
                    "stderr": est.stderr,
                    "exact": exact.as_ref().map(format_rational),
                    "zscore": zscore,
                }));
            } else {
                println!(
                    "mean {:.6} stderr {:.6} ({} samples, seed {})",
                    est.mean, est.stderr, est.samples, est.seed
                );
                if let (Some(x), Some(z)) = (&exact, zscore) {
                    println!("exact {} z {z:+.3} {}", format_rational(x), verdict(z.abs() <= sigmas));
                }
            }
            if zscore.is_some_and(|z| z.abs() > sigmas) {
                return Err(Failure::Check);
            }
        }
        Command::Verify { suite, nmax } => {
            let report = verify::run(suite, nmax)?;
            if json {
                print_json(&serde_json::to_value(&report).expect("serializable"));
            } else {
                for c in &report.checks {
                    println!("{c}");
                }
                let failed = report.checks.iter().filter(|c| !c.passed).count();
                println!("{suite}: {} passed, {failed} failed", report.checks.len() - failed);
            }
            if !report.passed() {
                return Err(Failure::Check);
            }
        }
    }
    Ok(())
}

fn fullcycle(n: usize, check: bool, json: bool) -> Outcome {
    let poly = full_cycle_poly(n)?;
    let descending: Vec<String> = poly.coeffs().iter().rev().map(format_rational).collect();
    let mut out = json!({ "n": n, "poly": poly.to_string(), "coefficients": poly });
    let mut ok = true;
    let mut lines = Vec::new();
    if check {
        if n >= 2 {
            let r = full_cycle_properties(n)?;
            ok &= r.passed();
            lines.push(format!(
                "{} degree {} (expected {})",
                verdict(r.degree_ok()),
                r.degree,
                r.expected_degree
            ));
            lines.push(format!(
                "{} leading coefficient {} (c_{} = {})",
                verdict(r.leading_ok()),
                format_rational(&r.leading),
                n - 1,
                format_rational(&r.catalan)
            ));
            lines.push(format!(
                "{} constant term {} (formula {})",
                verdict(r.constant_ok()),
                format_rational(&r.constant),
                format_rational(&r.constant_formula)
            ));
            out["properties"] = serde_json::to_value(&r).expect("serializable");
        }
        let positive = conjecture_check(n)?.rows.last().is_some_and(|row| row.2);
        ok &= positive;
        lines.push(format!("{} coefficients are nonnegative integers", verdict(positive)));
        out["nonnegative_integer_coefficients"] = json!(positive);
    }
    if json {
        print_json(&out);
    } else {
        println!("P_{n}(d) = {poly}");
        println!("{}", descending.join(","));
        for l in lines {
            println!("{l}");
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("WG_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("WG_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
