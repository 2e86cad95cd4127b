//! Command-line interface for the quantum Kähler structure-constant engine.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error,
//! 3 internal degeneracy.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qkahler::comb::{phi_map, RecursionFormula};
use qkahler::gw::{GwEngine, GwError, Mode, StructKey};
use qkahler::mirror::{invert_map, mirror_map, mirror_transform};
use qkahler::polyd::{poly_d_with_jobs, PolyBuildError};
use qkahler::qring::{fano_ring_table, table_rows};

mod verify;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "qkahler",
    about = "Exact structure constants of the quantum Kähler sub-ring of projective hypersurfaces",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Persistent cache file (default: $QKAHLER_CACHE_DIR/cache.json).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Worker threads for polynomial construction.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the degree-d polynomial grouped by z-monomial support.
    Poly {
        #[arg(long)]
        degree: u32,
    },
    /// Print the degree-d recursion formula.
    Recursion {
        #[arg(long)]
        degree: u32,
    },
    /// Compute a single structure constant L_n^{N,k,d}.
    Compute {
        #[arg(long = "N")]
        big_n: i64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value = "fano")]
        mode: String,
    },
    /// Export the multiplication table of the sub-ring of M_N^k.
    Table {
        #[arg(long = "N")]
        big_n: i64,
        #[arg(long)]
        k: u32,
        /// Largest curve degree; defaults to the largest degree the
        /// selection rule admits.
        #[arg(long)]
        dmax: Option<u32>,
    },
    /// Virtual structure constants at N = k.
    Virtual {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        dmax: u32,
    },
    /// Mirror map, its inverse, and the transformed Calabi-Yau series.
    Mirror {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        dmax: u32,
        /// Single series index (default: every m in 2..=k-3).
        #[arg(long)]
        m: Option<u32>,
    },
    /// Run a verification suite against the shipped reference tables.
    Verify {
        /// One of: poly-tables, appendix-a, residues, biglnumber,
        /// hypergeom, ring, all.
        suite: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        dmax: Option<u32>,
    },
}

fn cache_path(cli: &Cli) -> Option<PathBuf> {
    cli.cache.clone().or_else(|| {
        std::env::var_os("QKAHLER_CACHE_DIR").map(|dir| PathBuf::from(dir).join("cache.json"))
    })
}

fn engine_with(cli: &Cli, d_max: u32) -> Result<GwEngine, CliError> {
    let engine = GwEngine::with_degrees_jobs(d_max, cli.jobs.max(1))?;
    Ok(match cache_path(cli) {
        Some(path) => engine.with_cache_file(&path),
        None => engine,
    })
}

/// Errors mapped onto process exit codes.
pub enum CliError {
    /// Parameter combinations rejected by the modules: exit 2.
    Usage(String),
    /// Unrecoverable residue degeneracy: exit 3.
    Degenerate(String),
}

impl From<GwError> for CliError {
    fn from(e: GwError) -> Self {
        match e {
            GwError::Build(PolyBuildError::Degenerate { .. }) => {
                CliError::Degenerate(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<PolyBuildError> for CliError {
    fn from(e: PolyBuildError) -> Self {
        match e {
            PolyBuildError::Degenerate { .. } => CliError::Degenerate(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<qkahler::qring::RingError> for CliError {
    fn from(e: qkahler::qring::RingError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<qkahler::mirror::MirrorError> for CliError {
    fn from(e: qkahler::mirror::MirrorError) -> Self {
        match e {
            qkahler::mirror::MirrorError::Gw(g) => g.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(CliError::Degenerate(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    match &cli.cmd {
        Cmd::Poly { degree } => {
            let p = poly_d_with_jobs(*degree, cli.jobs.max(1))?;
            match cli.format {
                Format::Text => println!("{}", p.render_grouped()),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&p.to_records()).expect("serialize")
                ),
            }
            Ok(true)
        }
        Cmd::Recursion { degree } => {
            let f = phi_map(&poly_d_with_jobs(*degree, cli.jobs.max(1))?);
            print_recursion(&f, cli.format);
            Ok(true)
        }
        Cmd::Compute {
            big_n,
            k,
            d,
            n,
            mode,
        } => {
            let mode: Mode = mode.parse().map_err(CliError::Usage)?;
            let engine = engine_with(cli, *d)?;
            let key = StructKey {
                big_n: *big_n,
                k: *k,
                d: *d,
                n: *n,
            };
            let value = engine.compute(mode, key)?;
            let _ = engine.save_cache();
            match cli.format {
                Format::Text => println!("{}", value),
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "mode": mode.as_str(),
                        "N": big_n, "k": k, "d": d, "n": n,
                        "value": value.to_string(),
                    })
                ),
            }
            Ok(true)
        }
        Cmd::Table { big_n, k, dmax } => {
            let nk = *big_n - *k as i64;
            if nk < 1 {
                return Err(CliError::Usage(format!(
                    "table needs N >= k+1, got N = {}, k = {}",
                    big_n, k
                )));
            }
            let d_max = dmax.unwrap_or_else(|| ((*big_n - 1) / nk).max(1) as u32);
            let engine = engine_with(cli, d_max)?;
            let table = fano_ring_table(&engine, *big_n, *k, d_max)?;
            let _ = engine.save_cache();
            let rows = table_rows(&table);
            match cli.format {
                Format::Text => {
                    for (m, pairs) in rows {
                        let cells: Vec<String> = pairs
                            .iter()
                            .map(|(d, v)| format!("d={}: {}", d, v))
                            .collect();
                        println!("m={:<4} {}", m, cells.join("   "));
                    }
                }
                Format::Json => {
                    let rows: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(m, pairs)| {
                            serde_json::json!({
                                "m": m,
                                "constants": pairs.iter().map(|(d, v)| {
                                    serde_json::json!({"d": d, "value": v.to_string()})
                                }).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({"N": big_n, "k": k, "dmax": d_max, "rows": rows})
                    );
                }
            }
            Ok(true)
        }
        Cmd::Virtual { k, dmax } => {
            let engine = engine_with(cli, *dmax)?;
            let table = engine.virtual_constants(*k, *dmax)?;
            let _ = engine.save_cache();
            match cli.format {
                Format::Text => print!("{}", table.render()),
                Format::Json => println!("{}", table.to_json()),
            }
            Ok(true)
        }
        Cmd::Mirror { k, dmax, m } => {
            let engine = engine_with(cli, *dmax)?;
            let tmx = mirror_map(&engine, *k, *dmax)?;
            let s = invert_map(&tmx).map_err(|e| CliError::Usage(e.to_string()))?;
            let ms: Vec<u32> = match m {
                Some(m) => vec![*m],
                None if *k >= 5 => (2..=k - 3).collect(),
                None => Vec::new(),
            };
            match cli.format {
                Format::Text => {
                    println!("t(x) - x = {}", tmx.render("x"));
                    println!("x(t) - t = {}", s.render("t"));
                    for m in ms {
                        let series = mirror_transform(&engine, *k, m, *dmax)?;
                        println!("L_{}(e^t) = {}", m, series.render("t"));
                    }
                }
                Format::Json => {
                    let mut out = serde_json::json!({
                        "k": k,
                        "order": dmax,
                        "mirror_map": tmx.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "inverse_map": s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    });
                    let mut rows = Vec::new();
                    for m in ms {
                        let series = mirror_transform(&engine, *k, m, *dmax)?;
                        rows.push(serde_json::json!({
                            "m": m,
                            "coefficients": series.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        }));
                    }
                    out["series"] = serde_json::Value::Array(rows);
                    println!("{}", out);
                }
            }
            let _ = engine.save_cache();
            Ok(true)
        }
        Cmd::Verify { suite, k, dmax } => verify::run_suite(cli, suite, *k, *dmax),
    }
}

fn print_recursion(f: &RecursionFormula, format: Format) {
    match format {
        Format::Text => {
            println!("L[n]^{{N,k,{}}} =", f.d);
            for line in f.render().lines() {
                println!("  + {}", line);
            }
        }
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&f.to_records()).expect("serialize")
        ),
    }
}
