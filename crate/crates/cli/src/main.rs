use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lagorb::chevalley::{build_chevalley_algebra, LieAlgebra};
use lagorb::formats::{format_index_set, format_roots, write_orbit_csv, CocycleFile, RootSetFile};
use lagorb::ideals::{
    certify_closed_orbit, enumerate_abelian_ideals, enumerate_ad_nilpotent_ideals, is_abelian, orbit_table,
    ClosureCertificate, DEFAULT_RANK_CAP, RANK_CAP_ENV,
};
use lagorb::lagrange::{Cocycle, Subalgebra};
use lagorb::rootsys::{CartanType, RootSystem};
use lagorb::suite::{run_suite, SuiteConfig, DEFAULT_TYPES};
use lagorb::Error;

/// Exact computations with Lagrangian subalgebras of g ⋉ g* and abelian ideals of Borel subalgebras.
#[derive(Parser, Debug)]
#[command(name = "lagorb", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Largest rank accepted (F4 and G2 are always accepted).
    #[arg(long, env = RANK_CAP_ENV, default_value_t = DEFAULT_RANK_CAP, global = true)]
    max_rank: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count abelian ideals of the Borel subalgebra and compare with 2^rank.
    PetersonTable {
        /// Comma-separated types, e.g. A1,A2,B3.
        #[arg(long, default_value = DEFAULT_TYPES)]
        types: String,
    },
    /// List the ad-nilpotent ideals of the Borel subalgebra.
    Enumerate {
        #[arg(long = "type")]
        cartan_type: CartanType,
        /// Only list abelian ideals.
        #[arg(long)]
        abelian_only: bool,
    },
    /// Decide whether the orbit through l(a, f) is closed. Exit 0 if closed, 2 if not.
    Certify {
        #[arg(long = "type")]
        cartan_type: CartanType,
        /// JSON file {"type": ..., "roots": [[...], ...]} spanning a.
        #[arg(long)]
        ideal: PathBuf,
        /// JSON file {"subalgebra": {"basis": ...}, "F": ...}; defaults to f = 0.
        #[arg(long)]
        cocycle: Option<PathBuf>,
    },
    /// One row per abelian ideal: parabolic type of its normalizer and orbit dimension.
    OrbitTable {
        #[arg(long = "type")]
        cartan_type: CartanType,
    },
    /// Run every invariant suite.
    Selftest {
        #[arg(long, default_value = DEFAULT_TYPES)]
        types: String,
        /// Re-verify the action contracts as exact subspace equalities.
        #[arg(long)]
        debug_verify: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled group elements and functionals per type.
        #[arg(long, default_value_t = 3)]
        samples: usize,
    },
}

/// A failure that maps to exit code 1.
#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    // argument errors exit with 1, keeping 2 for "not closed" and failed checks
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let mut out = io::stdout().lock();
    match &cli.command {
        Command::PetersonTable { types } => peterson_table(cli, &mut out, types),
        Command::Enumerate {
            cartan_type,
            abelian_only,
        } => enumerate(cli, &mut out, *cartan_type, *abelian_only),
        Command::Certify {
            cartan_type,
            ideal,
            cocycle,
        } => certify(cli, &mut out, *cartan_type, ideal, cocycle.as_deref()),
        Command::OrbitTable { cartan_type } => orbit(cli, &mut out, *cartan_type),
        Command::Selftest {
            types,
            debug_verify,
            seed,
            samples,
        } => selftest(cli, &mut out, types, *debug_verify, *seed, *samples),
    }
}

fn algebra_for(t: CartanType, cap: usize) -> Result<LieAlgebra, Failure> {
    t.check_rank_cap(cap)?;
    Ok(build_chevalley_algebra(&RootSystem::of_type(t))?)
}

fn emit_json<T: Serialize>(out: &mut impl Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn emit_rows(out: &mut impl Write, format: Format, headers: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(headers)?;
            for r in rows {
                w.write_record(r)?;
            }
            w.flush()
        }
        _ => {
            let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
            for r in rows {
                for (w, cell) in widths.iter_mut().zip(r) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(headers.to_vec()))?;
            for r in rows {
                writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct PetersonRow {
    #[serde(rename = "type")]
    cartan_type: String,
    rank: usize,
    ad_nilpotent: Option<usize>,
    abelian: Option<usize>,
    expected: usize,
    matches: bool,
    error: Option<String>,
}

fn peterson_table(cli: &Cli, out: &mut impl Write, types: &str) -> CmdResult {
    let types = CartanType::parse_list(types)?;
    let rows: Vec<PetersonRow> = types
        .iter()
        .map(|&t| {
            let rs = RootSystem::of_type(t);
            let expected = 1usize << t.rank;
            match enumerate_ad_nilpotent_ideals(&rs, cli.max_rank) {
                Ok(ideals) => {
                    let abelian = ideals.iter().filter(|i| is_abelian(&rs, i)).count();
                    PetersonRow {
                        cartan_type: t.to_string(),
                        rank: t.rank,
                        ad_nilpotent: Some(ideals.len()),
                        abelian: Some(abelian),
                        expected,
                        matches: abelian == expected,
                        error: None,
                    }
                }
                Err(e) => PetersonRow {
                    cartan_type: t.to_string(),
                    rank: t.rank,
                    ad_nilpotent: None,
                    abelian: None,
                    expected,
                    matches: false,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    if cli.format == Format::Json {
        emit_json(out, &rows)?;
    } else {
        let opt = |x: Option<usize>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
        let table: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    r.cartan_type.clone(),
                    r.rank.to_string(),
                    opt(r.ad_nilpotent),
                    opt(r.abelian),
                    r.expected.to_string(),
                    r.matches.to_string(),
                    r.error.clone().unwrap_or_default(),
                ]
            })
            .collect();
        let headers = ["type", "rank", "ad_nilpotent", "abelian", "2^rank", "match", "error"];
        emit_rows(out, cli.format, &headers, &table)?;
    }
    Ok(if rows.iter().all(|r| r.matches) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

#[derive(Serialize)]
struct IdealRow {
    roots: Vec<Vec<i32>>,
    dim: usize,
    abelian: bool,
}

fn enumerate(cli: &Cli, out: &mut impl Write, t: CartanType, abelian_only: bool) -> CmdResult {
    let rs = RootSystem::of_type(t);
    let ideals = if abelian_only {
        enumerate_abelian_ideals(&rs, cli.max_rank)?
    } else {
        enumerate_ad_nilpotent_ideals(&rs, cli.max_rank)?
    };
    let rows: Vec<IdealRow> = ideals
        .iter()
        .map(|i| IdealRow {
            roots: i.roots.iter().map(|r| r.0.clone()).collect(),
            dim: i.len(),
            abelian: is_abelian(&rs, i),
        })
        .collect();
    if cli.format == Format::Json {
        emit_json(out, &rows)?;
    } else {
        let table: Vec<Vec<String>> = ideals
            .iter()
            .zip(&rows)
            .map(|(i, r)| vec![t.to_string(), format_roots(&i.roots), r.dim.to_string(), r.abelian.to_string()])
            .collect();
        emit_rows(out, cli.format, &["type", "lambda", "dim", "abelian"], &table)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn certify(cli: &Cli, out: &mut impl Write, t: CartanType, ideal: &Path, cocycle: Option<&Path>) -> CmdResult {
    let roots: RootSetFile = read_json(ideal)?;
    if roots.cartan_type != t {
        return Err(Failure(format!(
            "{}: file is for type {}, but --type is {t}",
            ideal.display(),
            roots.cartan_type
        )));
    }
    let algebra = algebra_for(t, cli.max_rank)?;
    let a = Subalgebra::from_roots(&algebra, &roots.roots)?;
    let c = match cocycle {
        None => Cocycle::zero(a),
        Some(path) => {
            let file: CocycleFile = read_json(path)?;
            let c = file
                .to_cocycle(&algebra)
                .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            if c.domain().span() != a.span() {
                return Err(Failure(format!(
                    "{}: cocycle subalgebra does not span the same space as {}",
                    path.display(),
                    ideal.display()
                )));
            }
            c
        }
    };
    let cert: ClosureCertificate = certify_closed_orbit(&c)?;
    if !cert.check(&c)? {
        return Err(Failure("certificate failed its own check".into()));
    }
    match cli.format {
        Format::Json => emit_json(out, &cert)?,
        _ => {
            let witness = serde_json::to_string(&cert.witness).map_err(|e| Failure(e.to_string()))?;
            let verdict = format!("{:?}", cert.verdict);
            emit_rows(out, cli.format, &["verdict", "witness"], &[vec![verdict, witness]])?;
        }
    }
    Ok(if cert.is_closed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn orbit(cli: &Cli, out: &mut impl Write, t: CartanType) -> CmdResult {
    let algebra = algebra_for(t, cli.max_rank)?;
    let rows = orbit_table(&algebra, cli.max_rank)?;
    match cli.format {
        Format::Json => emit_json(out, &rows)?,
        Format::Csv => write_orbit_csv(&rows, &mut *out)?,
        Format::Table => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        t.to_string(),
                        format_roots(&r.ideal.roots),
                        r.dim_a.to_string(),
                        format_index_set(&r.parabolic_j),
                        r.orbit_dim.to_string(),
                        r.certified_closed.to_string(),
                    ]
                })
                .collect();
            let headers = ["type", "lambda", "dim_a", "parabolic_J", "orbit_dim", "certified_closed"];
            emit_rows(out, cli.format, &headers, &table)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn selftest(cli: &Cli, out: &mut impl Write, types: &str, debug_verify: bool, seed: u64, samples: usize) -> CmdResult {
    let config = SuiteConfig {
        types: CartanType::parse_list(types)?,
        seed,
        debug_verify,
        samples,
        rank_cap: cli.max_rank,
    };
    let report = run_suite(&config);
    if cli.format == Format::Json {
        emit_json(out, &report)?;
    } else {
        let table: Vec<Vec<String>> = report
            .outcomes
            .iter()
            .map(|o| {
                vec![
                    o.cartan_type.clone(),
                    o.check.clone(),
                    if o.passed { "pass" } else { "FAIL" }.to_string(),
                    o.cases.to_string(),
                    o.detail.clone(),
                ]
            })
            .collect();
        emit_rows(out, cli.format, &["type", "check", "result", "cases", "detail"], &table)?;
        if cli.format == Format::Table {
            writeln!(out, "{} passed, {} failed", report.passed, report.failed)?;
        }
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}
