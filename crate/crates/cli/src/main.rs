//! `dowling` — command-line surface over the exact r-Whitney / r-Dowling
//! library: triangle export, polynomial evaluation, generating-function
//! series, the set-partition oracle, and the identity verification suite.
//!
//! Exit codes: 0 success (and all identities pass for `verify`),
//! 1 verification failure, 2 usage or precondition error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dowling_core::dowling::{dowling_bivariate, eval_poly};
use dowling_core::hyper::{ogf_hypergeometric, ogf_partial_fractions, whitney_ogf};
use dowling_core::identities::{run_grid, ParamGrid, ZeroPow, ALL_IDENTITIES};
use dowling_core::partitions::partition_oracle;
use dowling_core::series::{egf_rhs, TruncatedSeries};
use dowling_core::whitney::rstirling2;
use dowling_core::{format_rat, parse_rat, WhitneyParams, WhitneyTable};

#[derive(Parser)]
#[command(name = "dowling", version, about = "Exact r-Whitney triangles, r-Dowling polynomials, and identity verification")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit the W_{m,r}(n,k) triangle as (n, k, value) rows
    Table {
        #[arg(long)]
        m: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        max_n: u32,
    },
    /// Evaluate the bivariate r-Dowling polynomial D_{m,r}(n; x, y)
    Eval {
        #[arg(long)]
        m: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Print generating-function coefficients
    Series {
        /// egf, ogf-2f1, ogf-pf, or whitney-ogf
        #[arg(long)]
        kind: SeriesKind,
        #[arg(long)]
        m: String,
        #[arg(long)]
        r: String,
        /// Evaluation point x (nonnegative integer); ignored by whitney-ogf
        #[arg(long, default_value_t = 0)]
        x: u32,
        #[arg(long, default_value = "1")]
        y: String,
        /// Whitney column for whitney-ogf
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value_t = 10)]
        order: u32,
    },
    /// Run the identity verification suite over a parameter grid
    Verify {
        /// Grid config path; falls back to $DOWLING_GRID, then the built-in default
        #[arg(long)]
        grid: Option<PathBuf>,
        /// Restrict to these identity ids (comma separated, repeatable)
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Exhaustive set-partition count, cross-checked against W_{1,r}(n,k)
    Oracle {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        r: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let (text, code) = match &cli.cmd {
        Cmd::Table { m, r, max_n } => (cmd_table(cli, m, r, *max_n)?, ExitCode::SUCCESS),
        Cmd::Eval { m, r, n, x, y } => (cmd_eval(cli, m, r, *n, x, y)?, ExitCode::SUCCESS),
        Cmd::Series { kind, m, r, x, y, k, order } => {
            (cmd_series(cli, *kind, m, r, *x, y, *k, *order)?, ExitCode::SUCCESS)
        }
        Cmd::Verify { grid, only } => cmd_verify(cli, grid.as_deref(), only)?,
        Cmd::Oracle { n, k, r } => (cmd_oracle(cli, *n, *k, *r)?, ExitCode::SUCCESS),
    };
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string())?,
        None => print!("{text}"),
    }
    Ok(code)
}

fn parse_params(m: &str, r: &str) -> Result<WhitneyParams, String> {
    let m = parse_rat(m).map_err(|e| e.to_string())?;
    let r = parse_rat(r).map_err(|e| e.to_string())?;
    WhitneyParams::new(m, r).map_err(|e| e.to_string())
}

fn cmd_table(cli: &Cli, m: &str, r: &str, max_n: u32) -> Result<String, String> {
    let params = parse_params(m, r)?;
    let table = WhitneyTable::build(&params, max_n);
    Ok(match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_jsonl(),
        Format::Table => {
            let mut out = String::new();
            for n in 0..=max_n {
                for (k, v) in table.row(n).iter().enumerate() {
                    out.push_str(&format!("{} {} {}\n", n, k, format_rat(v)));
                }
            }
            out
        }
    })
}

fn cmd_eval(cli: &Cli, m: &str, r: &str, n: u32, x: &str, y: &str) -> Result<String, String> {
    let params = parse_params(m, r)?;
    let x = parse_rat(x).map_err(|e| e.to_string())?;
    let y = parse_rat(y).map_err(|e| e.to_string())?;
    let poly = dowling_bivariate(&params, n);
    let value = eval_poly(&poly, &x, &y);
    Ok(match cli.format {
        Format::Json => {
            let mut obj = poly.to_json();
            obj["x"] = format_rat(&x).into();
            obj["y"] = format_rat(&y).into();
            obj["value"] = format_rat(&value).into();
            format!("{obj}\n")
        }
        _ => format!("{}\n", format_rat(&value)),
    })
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    Egf,
    #[value(name = "ogf-2f1")]
    Ogf2f1,
    OgfPf,
    WhitneyOgf,
}

#[allow(clippy::too_many_arguments)]
fn cmd_series(
    cli: &Cli,
    kind: SeriesKind,
    m: &str,
    r: &str,
    x: u32,
    y: &str,
    k: u32,
    order: u32,
) -> Result<String, String> {
    let params = parse_params(m, r)?;
    let y = parse_rat(y).map_err(|e| e.to_string())?;
    let series: TruncatedSeries = match kind {
        SeriesKind::Egf => egf_rhs(&params, x, &y, order),
        SeriesKind::Ogf2f1 => ogf_hypergeometric(&params, x, &y, order).map_err(|e| e.to_string())?,
        SeriesKind::OgfPf => ogf_partial_fractions(&params, x, &y, order),
        SeriesKind::WhitneyOgf => TruncatedSeries::new(
            whitney_ogf(&params, k)
                .series_at_zero(order)
                .map_err(|e| e.to_string())?,
        ),
    };
    Ok(match cli.format {
        Format::Json => format!("{}\n", series.to_json()),
        Format::Csv => {
            let mut out = String::from("n,coefficient\n");
            for (n, c) in series.coeffs().iter().enumerate() {
                out.push_str(&format!("{},{}\n", n, format_rat(c)));
            }
            out
        }
        Format::Table => {
            let cells: Vec<String> = series.coeffs().iter().map(format_rat).collect();
            format!("{}\n", cells.join(", "))
        }
    })
}

fn cmd_verify(
    cli: &Cli,
    grid_path: Option<&std::path::Path>,
    only: &[String],
) -> Result<(String, ExitCode), String> {
    let grid = match grid_path
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("DOWLING_GRID").map(PathBuf::from))
    {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| format!("cannot read grid config {}: {e}", path.display()))?;
            ParamGrid::parse(&text).map_err(|e| e.to_string())?
        }
        None => ParamGrid::default(),
    };
    let ids: Vec<&str> = if only.is_empty() {
        ALL_IDENTITIES.to_vec()
    } else {
        only.iter().map(String::as_str).collect()
    };
    let report = run_grid(&grid, &ids, ZeroPow::One).map_err(|e| e.to_string())?;
    let text = match cli.format {
        Format::Json => format!("{}\n", report.to_json()),
        _ => report.to_table(),
    };
    let code = if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    };
    Ok((text, code))
}

fn cmd_oracle(cli: &Cli, n: u32, k: u32, r: u32) -> Result<String, String> {
    let count = partition_oracle(n, k, r).map_err(|e| e.to_string())?;
    let expected = rstirling2(n, k, r);
    let verdict = if count == expected { "match" } else { "MISMATCH" };
    Ok(match cli.format {
        Format::Json => format!(
            "{}\n",
            serde_json::json!({
                "n": n, "k": k, "r": r,
                "count": format_rat(&count),
                "rstirling2": format_rat(&expected),
                "verdict": verdict,
            })
        ),
        _ => format!("{} ({})\n", format_rat(&count), verdict),
    })
}
