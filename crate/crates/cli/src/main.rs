use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use qhankel::bench::run_bench;
use qhankel::exact::from_f64;
use qhankel::format::{envelope, mat_csv, mat_json, rat_json};
use qhankel::validate::run_validation;
use qhankel::verify::{default_grid, filter_family, random_grid, run_sweep};
use qhankel::{
    build, closed_det, closed_inverse, identity_residual, invertible_params, parse_rat, Error,
    Family, InverseVariant, Mat, Rat, Result, TruncationSpec, VerifyOptions,
};

/// Exact closed-form determinants and inverses of q-Hankel moment matrices.
#[derive(Parser)]
#[command(name = "qhankel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normalized Hankel matrix of size n+1.
    Build {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Closed-form determinant.
    Det {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Closed-form inverse.
    Invert {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        /// Use the inverse formulas exactly as printed, sign misprints included.
        #[arg(long)]
        as_printed: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check every closed form against its oracle over a parameter grid.
    Verify {
        /// Restrict to one family (default: all three).
        #[arg(long, value_enum)]
        family: Option<Tag>,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Draw random rational parameters instead of the fixed grid.
        #[arg(long)]
        seed: Option<u64>,
        /// Random points per family (with --seed).
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Include per-phase timings (makes output run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Time closed-form inversion against elimination.
    Bench {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_delimiter = ',', num_args = 0.., default_values_t = [4, 8, 16])]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Floating-point checks of orthogonality and moments on the measures.
    Validate {
        /// Restrict to one family (default: all three).
        #[arg(long, value_enum)]
        family: Option<Tag>,
        #[arg(long, default_value = "1")]
        a: String,
        #[arg(long, default_value = "1")]
        b: String,
        #[arg(long, default_value = "1/4")]
        t: String,
        /// Rational or decimal.
        #[arg(long, default_value = "1/2")]
        q: String,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Truncation: terms kept on each side of the support.
        #[arg(long = "K", default_value_t = 200)]
        k: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Tag {
    Jacobi,
    Laguerre,
    Hermite2,
}

impl Tag {
    fn name(self) -> &'static str {
        match self {
            Tag::Jacobi => "jacobi",
            Tag::Laguerre => "laguerre",
            Tag::Hermite2 => "hermite2",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Tag,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    q: String,
}

fn required(v: &Option<String>, flag: &str, tag: Tag) -> Result<Rat> {
    match v {
        Some(s) => parse_rat(s),
        None => Err(Error::Parse(format!(
            "--{flag} is required for {}",
            tag.name()
        ))),
    }
}

impl FamilyArgs {
    fn family(&self) -> Result<Family> {
        let q = parse_rat(&self.q)?;
        match self.family {
            Tag::Jacobi => Family::jacobi(
                required(&self.a, "a", self.family)?,
                required(&self.b, "b", self.family)?,
                q,
            ),
            Tag::Laguerre => Family::laguerre(required(&self.t, "t", self.family)?, q),
            Tag::Hermite2 => Family::hermite2(q),
        }
    }
}

fn family_inputs(f: &Family) -> Value {
    let mut m = serde_json::Map::new();
    m.insert("family".into(), json!(f.tag()));
    for (k, v) in f.params() {
        m.insert(k.into(), json!(v));
    }
    Value::Object(m)
}

fn with(mut base: Value, extra: Value) -> Value {
    if let (Some(b), Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

/// Write to stdout; a closed pipe (e.g. `| head`) ends the process quietly.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write output: {e}");
        std::process::exit(2);
    }
}

fn print_json(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("JSON values always serialize"));
    emit("\n");
}

fn print_matrix(command: &str, inputs: Value, m: &Mat, format: Format) {
    match format {
        Format::Json => print_json(&envelope(command, inputs, mat_json(m))),
        Format::Csv => emit(&mat_csv(m)),
    }
}

/// Validate accepts decimals as well as `num/den`.
fn parse_real(s: &str) -> Result<Rat> {
    parse_rat(s).or_else(|e| match s.trim().parse::<f64>() {
        Ok(x) => from_f64(x),
        Err(_) => Err(e),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build { family, n, format } => {
            let f = family.family()?;
            if !invertible_params(&f, n) {
                eprintln!("warning: {f} violates the invertibility conditions at n={n}");
            }
            let m = build(&f, n)?;
            print_matrix(
                "build",
                with(family_inputs(&f), json!({"n": n})),
                &m,
                format,
            );
        }
        Command::Det { family, n, format } => {
            let f = family.family()?;
            let d = closed_det(&f, n)?;
            match format {
                Format::Json => print_json(&envelope(
                    "det",
                    with(family_inputs(&f), json!({"n": n})),
                    rat_json(&d),
                )),
                Format::Csv => emit(&format!("{d}\n")),
            }
        }
        Command::Invert {
            family,
            n,
            as_printed,
            format,
        } => {
            let f = family.family()?;
            let variant = InverseVariant {
                corrected: !as_printed,
            };
            let inv = closed_inverse(&f, n, variant)?;
            if as_printed {
                let r = identity_residual(&build(&f, n)?, &inv)?;
                if !r.is_zero() {
                    eprintln!(
                        "warning: printed formula does not invert the matrix (identity residual {r})"
                    );
                }
            }
            let inputs = with(family_inputs(&f), json!({"n": n, "as_printed": as_printed}));
            print_matrix("invert", inputs, &inv, format);
        }
        Command::Verify {
            family,
            n_max,
            seed,
            points,
            jobs,
            timings,
        } => {
            let mut grid = match seed {
                Some(s) => random_grid(s, points, n_max),
                None => default_grid(),
            };
            if let Some(tag) = family {
                grid = filter_family(grid, tag.name());
            }
            let reports = run_sweep(
                &grid,
                VerifyOptions {
                    n_max,
                    jobs,
                    timings,
                },
            )?;
            let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
            let unexpected: usize = reports
                .iter()
                .map(|r| r.checks.iter().filter(|c| !c.pass).count())
                .sum();
            let expected_fail: usize = reports
                .iter()
                .flat_map(|r| &r.checks)
                .filter(|c| c.pass && c.expect == qhankel::verify::Expect::Fails)
                .count();
            let inputs = json!({
                "family": family.map(Tag::name),
                "n_max": n_max,
                "seed": seed,
                "points": seed.map(|_| points),
            });
            let results = json!({
                "summary": {
                    "points": grid.len(),
                    "reports": reports.len(),
                    "checks": checks,
                    "expected_failures": expected_fail,
                    "unexpected": unexpected,
                },
                "reports": reports,
            });
            print_json(&envelope("verify", inputs, results));
            if unexpected > 0 {
                eprintln!("verify: {unexpected} unexpected check outcomes");
                return Ok(ExitCode::from(1));
            }
        }
        Command::Bench {
            family,
            n_list,
            repeats,
            format,
        } => {
            let f = family.family()?;
            let rows = run_bench(&f, &n_list, repeats)?;
            match format {
                Format::Json => {
                    let inputs = with(
                        family_inputs(&f),
                        json!({"n_list": n_list, "repeats": repeats}),
                    );
                    print_json(&envelope("bench", inputs, json!(rows)));
                }
                Format::Csv => {
                    let mut csv = String::from(
                        "n,closed_ns,elim_ns,ratio,det_closed_ns,det_elim_ns,det_ratio\n",
                    );
                    for r in &rows {
                        csv += &format!(
                            "{},{},{},{:.6},{},{},{:.6}\n",
                            r.n,
                            r.closed_ns,
                            r.elim_ns,
                            r.ratio,
                            r.det_closed_ns,
                            r.det_elim_ns,
                            r.det_ratio
                        );
                    }
                    emit(&csv);
                }
            }
        }
        Command::Validate {
            family,
            a,
            b,
            t,
            q,
            c,
            k,
            tol,
        } => {
            let q = parse_real(&q)?;
            let all = [
                Family::jacobi(parse_real(&a)?, parse_real(&b)?, q.clone())?,
                Family::laguerre(parse_real(&t)?, q.clone())?,
                Family::hermite2(q.clone())?,
            ];
            let families: Vec<Family> = all
                .into_iter()
                .filter(|f| family.is_none_or(|tag| tag.name() == f.tag()))
                .collect();
            let report = run_validation(&families, c, TruncationSpec::new(k, tol)?)?;
            let inputs = json!({
                "family": family.map(Tag::name),
                "q": q.to_string(),
                "c": c,
                "K": k,
                "tol": tol,
            });
            print_json(&envelope("validate", inputs, json!(report)));
            if !report.all_pass() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_arithmetic_pole() { 3 } else { 2 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qhankel::rat;

    #[test]
    fn decimals_only_where_allowed() {
        assert_eq!(parse_real("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_real("1/3").unwrap(), rat(1, 3));
        assert!(parse_real("x").is_err());
        assert!(parse_rat("0.5").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
