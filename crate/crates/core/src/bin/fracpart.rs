use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::Float;

use fracpart::circle;
use fracpart::jensen::{self, JensenReport};
use fracpart::numkernel::format::to_significant;
use fracpart::oracle;
use fracpart::tables::{TableArtifact, TableId};
use fracpart::{AlphaValue, Error, Precision};

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(name = "fracpart", version, about = "Fractional partition functions p_alpha(n)")]
struct Cli {
    /// Working precision in decimal digits.
    #[arg(long, global = true, env = "FRACPART_DIGITS", default_value_t = Precision::DEFAULT_DIGITS)]
    digits: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Args)]
struct AlphaArg {
    /// Exponent alpha: a rational, a decimal, or an expression in e, pi, sqrt.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
}

#[derive(Subcommand)]
enum Command {
    /// Exact coefficients p_alpha(0..=n) from the generating function.
    Oracle {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long)]
        n: usize,
    },
    /// Truncated circle-method series with its certified tail bound.
    Series {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long)]
        n: u64,
        /// Keep the first m terms of every k-sum.
        #[arg(long, conflicts_with = "delta")]
        terms: Option<u64>,
        /// Truncation parameter delta.
        #[arg(long, required_unless_present = "terms")]
        delta: Option<String>,
    },
    /// Certified exact value of p_alpha(n) for rational alpha.
    Exact {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long)]
        n: u64,
        /// Also report the guaranteed and empirical term counts.
        #[arg(long)]
        report_terms: bool,
    },
    /// Jensen polynomial, its renormalization and hyperbolicity.
    Jensen {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Scan shifts 0..=horizon and report the empirical threshold.
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Recompute a reference table and diff it against the golden copy.
    Table {
        /// T1..T6
        table: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { EXIT_USAGE } else { EXIT_DOMAIN })
        }
    }
}

fn run(cli: &Cli) -> fracpart::Result<ExitCode> {
    let prec = Precision::digits(cli.digits)?;
    match &cli.command {
        Command::Oracle { alpha, n } => {
            let table = oracle::coeffs(&AlphaValue::parse(&alpha.alpha)?, *n, prec);
            match cli.format {
                Format::Json => println!("{}", table.to_json()?),
                Format::Csv => print!("{}", table.to_csv()),
                Format::Plain => {
                    for i in 0..table.len() {
                        println!("{i}\t{}", table.render(i));
                    }
                }
            }
        }
        Command::Series { alpha, n, terms, delta } => {
            let alpha = AlphaValue::parse(&alpha.alpha)?;
            let approx = match (terms, delta) {
                (Some(m), _) => circle::partial_series_terms(&alpha, *n, *m, prec)?,
                (None, Some(text)) => {
                    let delta = Float::parse(text)
                        .map(|p| Float::with_val(prec.bits(), p))
                        .map_err(|_| Error::InvalidArgument(format!("delta '{text}' is not a decimal")))?;
                    circle::partial_series(&alpha, *n, &delta, prec)?
                }
                (None, None) => unreachable!("clap requires --terms or --delta"),
            };
            let record = approx.to_record();
            match cli.format {
                Format::Json => println!("{}", approx.to_json()?),
                Format::Csv => {
                    println!("alpha,n,delta,value,tail_bound,terms");
                    println!(
                        "{},{},{},{},{},{}",
                        record.alpha,
                        record.n,
                        record.delta,
                        record.value,
                        record.tail_bound,
                        approx.total_terms()
                    );
                }
                Format::Plain => {
                    println!("value       {}", to_significant(&approx.value, 20));
                    println!("tail bound  {}", record.tail_bound);
                    println!("delta       {}", to_significant(&approx.delta, 20));
                    println!("terms       {} {:?}", approx.total_terms(), approx.terms_per_m);
                }
            }
        }
        Command::Exact { alpha, n, report_terms } => {
            let parsed = AlphaValue::parse(&alpha.alpha)?;
            let r = parsed
                .as_rational()
                .ok_or_else(|| Error::IrrationalAlpha(alpha.alpha.clone()))?;
            let a = r
                .numer()
                .to_i64()
                .ok_or_else(|| Error::InvalidArgument("alpha numerator too large".into()))?;
            let b = r
                .denom()
                .to_u64()
                .ok_or_else(|| Error::InvalidArgument("alpha denominator too large".into()))?;
            let value = match circle::exact_value(a, b, *n) {
                Err(Error::WorkLimit(cap)) => {
                    eprintln!("note: certified series needs more than {cap} terms; value taken from the coefficient recurrence");
                    oracle::coeffs(&parsed, *n as usize, prec)
                        .exact_at(*n as usize)
                        .cloned()
                        .expect("rational alpha gives exact coefficients")
                }
                other => other?,
            };
            let text = format!("{}/{}", value.numer(), value.denom());
            let counts = if *report_terms {
                Some((circle::guaranteed_terms(a, b, *n)?, circle::empirical_min_terms(a, b, *n)?))
            } else {
                None
            };
            match (cli.format, counts) {
                (Format::Json, c) => {
                    let mut record = serde_json::json!({ "alpha": parsed, "n": n, "value": text });
                    if let Some((m, star)) = c {
                        record["M"] = m.to_string().into();
                        record["M*"] = star.into();
                    }
                    println!("{record}");
                }
                (Format::Csv, Some((m, star))) => println!("n,value,M,M*\n{n},{text},{m},{star}"),
                (Format::Csv, None) => println!("n,value\n{n},{text}"),
                (Format::Plain, Some((m, star))) => println!("{text}\nM = {m}\nM* = {star}"),
                (Format::Plain, None) => println!("{text}"),
            }
        }
        Command::Jensen { alpha, d, n, horizon } => {
            let alpha = AlphaValue::parse(&alpha.alpha)?;
            if let Some(h) = horizon {
                let rows = jensen::scan(&alpha, *d, 0, *h, prec)?;
                let threshold = jensen::hyperbolicity_threshold(&alpha, *d, *h, prec)?;
                match cli.format {
                    Format::Csv => print!("{}", jensen::scan_to_csv(&rows)?),
                    Format::Json => println!(
                        "{}",
                        serde_json::json!({ "alpha": alpha, "d": d, "horizon": h, "threshold": threshold })
                    ),
                    Format::Plain => match threshold {
                        Some(t) => println!("hyperbolic for every n in [{t}, {h}]"),
                        None => println!("not hyperbolic at n = {h}"),
                    },
                }
                return Ok(ExitCode::SUCCESS);
            }
            let report = JensenReport::new(&alpha, *d, *n, prec)?;
            match cli.format {
                Format::Json => println!("{}", report.to_json()?),
                Format::Csv => {
                    println!("kind,{}", (0..=*d).map(|i| format!("x{i}")).collect::<Vec<_>>().join(","));
                    println!("raw,{}", report.raw.coefficient_strings(12).join(","));
                    if let Some(r) = &report.renormalized {
                        println!("renormalized,{}", r.coefficient_strings(6).join(","));
                    }
                }
                Format::Plain => {
                    println!("J     {}", report.raw.render(12));
                    if let Some(r) = &report.renormalized {
                        println!("Jhat  {}", r.render(6));
                        println!("H_{d}   {}", jensen::hermite(*d));
                    }
                    if let Some(dist) = &report.hermite_distance {
                        println!("distance to Hermite  {dist}");
                    }
                    println!("hyperbolic = {}", report.hyperbolic);
                }
            }
        }
        Command::Table { table } => {
            let id: TableId = table.parse()?;
            let artifact = TableArtifact::compute(id, prec)?;
            match cli.format {
                Format::Json => println!("{}", artifact.to_json()?),
                Format::Csv => print!("{}", artifact.to_csv()?),
                Format::Plain => print!("{}", artifact.to_plain()?),
            }
            let diff = artifact.diff()?;
            eprint!("{}", diff.render());
            if !diff.is_clean() {
                return Ok(ExitCode::from(EXIT_MISMATCH));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
