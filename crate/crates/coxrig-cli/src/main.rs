//! `coxrig`: exact Coxeter-matrix tools from the command line.
//!
//! Subcommands: `check` (class membership report), `spherical` (maximal
//! spherical and independent families), `iso` (diagram isomorphism of two
//! files), `abelianize` (odd components and image dimensions), `verify`
//! (brute-force rigidity sweep), `census` (class statistics over all
//! matrices of a rank and label alphabet). Everything is deterministic:
//! fixed inputs and flags give byte-identical output.

mod json;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use coxrig::class::{check_class_membership, ClassReport};
use coxrig::finite::{maximal_independent_subsets, maximal_spherical_subsets};
use coxrig::gf2::{odd_components, pi_image_with};
use coxrig::iso::diagram_isomorphic;
use coxrig::matrix::{CoxeterMatrix, GeneratorSubset, Label};
use coxrig::oracle::{rigidity_verdict, OracleError, SearchLimits};
use coxrig::parse::parse_coxeter_file;

use json::{matrix_json, report_json, subset_json, verdict_json};

#[derive(Parser)]
#[command(name = "coxrig", about = "Exact Coxeter matrix tools", version)]
struct Cli {
    /// Emit machine-readable JSON instead of human text.
    #[arg(long, global = true)]
    json: bool,

    /// Coset cap for every enumeration this invocation performs.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_cosets: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the four class conditions of a matrix file.
    Check { file: String },
    /// List maximal spherical subsets, the strong-even core, and the
    /// maximal independent subsets of the core.
    Spherical { file: String },
    /// Search for a label-preserving bijection between two matrix files.
    Iso { file_a: String, file_b: String },
    /// Odd components of the matrix and abelianized image dimensions.
    Abelianize { file: String },
    /// Sweep all Coxeter generating sets of the realized finite group and
    /// bucket them by diagram isomorphism.
    Verify {
        file: String,
        #[command(flatten)]
        limits: LimitArgs,
        /// Debug: dump the completed coset table to stderr, one line per
        /// coset with its image under each generator. Not a stable
        /// interface.
        #[arg(long)]
        dump_table: bool,
    },
    /// Stream one record per symmetric matrix of the given rank over a
    /// label alphabet.
    Census {
        #[arg(long)]
        rank: usize,
        /// Comma-separated labels, each an integer >= 2 or "inf".
        #[arg(long)]
        labels: String,
    },
}

#[derive(Args)]
struct LimitArgs {
    /// Largest group order the sweep will accept.
    #[arg(long, default_value_t = 200)]
    max_order: usize,
    /// Largest candidate generating set size.
    #[arg(long, default_value_t = 6)]
    max_gens: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Check { file } => check(cli, file),
        Command::Spherical { file } => spherical(cli, file),
        Command::Iso { file_a, file_b } => iso(cli, file_a, file_b),
        Command::Abelianize { file } => abelianize(cli, file),
        Command::Verify { file, limits, dump_table } => verify(cli, file, limits, *dump_table),
        Command::Census { rank, labels } => census(*rank, labels),
    }
}

fn load(path: &str) -> Result<CoxeterMatrix, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    parse_coxeter_file(&text).map_err(|e| format!("{path}: {e}"))
}

fn print_report_human(report: &ClassReport) {
    println!("in class: {}", report.in_class);
    for (i, ok) in report.conditions.iter().enumerate() {
        println!("condition ({i}): {}", if *ok { "holds" } else { "fails" });
    }
    for witness in &report.witnesses {
        println!("witness: {witness:?}");
    }
    println!("evenness: {}", report.evenness.as_str());
    println!("strong-even core: {}", report.s_bar);
    let pairs: Vec<String> =
        report.odd_pairs.iter().map(|&(i, j)| format!("{{{},{}}}", i + 1, j + 1)).collect();
    println!("odd pairs: [{}]", pairs.join(", "));
}

fn check(cli: &Cli, file: &str) -> Result<ExitCode, String> {
    let matrix = load(file)?;
    let report = check_class_membership(&matrix);
    if cli.json {
        println!("{}", report_json(&report));
    } else {
        print_report_human(&report);
    }
    Ok(ExitCode::from(if report.in_class { 0 } else { 1 }))
}

fn spherical(cli: &Cli, file: &str) -> Result<ExitCode, String> {
    let matrix = load(file)?;
    let report = check_class_membership(&matrix);
    let family = maximal_spherical_subsets(&matrix);
    let independent = maximal_independent_subsets(&matrix, &report.s_bar);
    if cli.json {
        let value = json!({
            "maximal_spherical": family.iter().map(subset_json).collect::<Vec<_>>(),
            "s_bar": subset_json(&report.s_bar),
            "maximal_independent": independent.iter().map(subset_json).collect::<Vec<_>>(),
        });
        println!("{value}");
    } else {
        println!("maximal spherical subsets:");
        for t in family.iter() {
            println!("  {t}");
        }
        println!("strong-even core: {}", report.s_bar);
        println!("maximal independent subsets of the core:");
        for t in independent.iter() {
            println!("  {t}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn iso(cli: &Cli, file_a: &str, file_b: &str) -> Result<ExitCode, String> {
    let a = load(file_a)?;
    let b = load(file_b)?;
    match diagram_isomorphic(&a, &b) {
        Some(bijection) => {
            if cli.json {
                let map: Vec<usize> = bijection.map().iter().map(|&v| v + 1).collect();
                println!("{}", json!({"isomorphic": true, "map": map}));
            } else {
                let assignments: Vec<String> = bijection
                    .map()
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| format!("{} -> {}", i + 1, v + 1))
                    .collect();
                println!("isomorphic: {}", assignments.join(", "));
            }
            Ok(ExitCode::SUCCESS)
        }
        None => {
            if cli.json {
                println!("{}", json!({"isomorphic": false}));
            } else {
                println!("not isomorphic");
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn abelianize(cli: &Cli, file: &str) -> Result<ExitCode, String> {
    let matrix = load(file)?;
    let components = odd_components(&matrix);
    let report = check_class_membership(&matrix);
    let family = maximal_spherical_subsets(&matrix);
    let mut subsets: Vec<GeneratorSubset> = family.members().to_vec();
    subsets.push(report.s_bar.clone());
    subsets.push(GeneratorSubset::full(matrix.rank()));
    subsets.sort();
    subsets.dedup();
    let images: Vec<(GeneratorSubset, usize)> = subsets
        .into_iter()
        .map(|s| {
            let dim = pi_image_with(&components, &s).dim();
            (s, dim)
        })
        .collect();
    if cli.json {
        let value = json!({
            "k": components.count,
            "components": components
                .partition()
                .iter()
                .map(|part| part.iter().map(|v| v + 1).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "images": images
                .iter()
                .map(|(s, dim)| json!({"subset": subset_json(s), "dim": dim}))
                .collect::<Vec<_>>(),
        });
        println!("{value}");
    } else {
        println!("k = {} odd components", components.count);
        for (id, part) in components.partition().iter().enumerate() {
            let members: Vec<String> = part.iter().map(|v| (v + 1).to_string()).collect();
            println!("  component {id}: {{{}}}", members.join(","));
        }
        for (s, dim) in &images {
            println!("dim pi(W_{s}) = {dim}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(cli: &Cli, file: &str, limits: &LimitArgs, dump_table: bool) -> Result<ExitCode, String> {
    let matrix = load(file)?;
    let limits = SearchLimits {
        max_order: limits.max_order,
        max_gens: limits.max_gens,
        max_cosets: cli.max_cosets,
    };
    if dump_table {
        // Best effort: the verdict below owns the exit semantics.
        match coxrig::group::todd_coxeter(&matrix, limits.max_cosets) {
            Ok(real) => {
                for x in 0..real.order() as u32 {
                    let row: Vec<String> = (0..real.rank())
                        .map(|g| real.gen_perm(g)[x as usize].to_string())
                        .collect();
                    eprintln!("{x}: {}", row.join(" "));
                }
            }
            Err(e) => eprintln!("table dump unavailable: {e}"),
        }
    }
    match rigidity_verdict(&matrix, &limits) {
        Ok(verdict) => {
            if cli.json {
                println!("{}", verdict_json(&verdict));
            } else {
                println!(
                    "classes found: {} (exhausted: {})",
                    verdict.classes.len(),
                    verdict.exhausted
                );
                for (i, class) in verdict.classes.iter().enumerate() {
                    println!(
                        "class {i}: {}",
                        coxrig::parse::serialize(&class.matrix).replace('\n', "; ")
                    );
                }
                println!("rigid: {}", verdict.rigid);
            }
            let code = if verdict.classes.len() > 1 {
                1
            } else if verdict.exhausted {
                0
            } else {
                2
            };
            Ok(ExitCode::from(code))
        }
        Err(OracleError::LimitExceeded(message)) => {
            eprintln!("limits hit: {message}");
            Ok(ExitCode::from(2))
        }
        Err(OracleError::Engine(e)) => {
            eprintln!("limits hit: {e}");
            Ok(ExitCode::from(2))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn parse_labels(list: &str) -> Result<Vec<Label>, String> {
    list.split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok == "inf" {
                Ok(Label::Infinite)
            } else {
                let v: u32 = tok
                    .parse()
                    .map_err(|_| format!("invalid label {tok:?}; expected an integer or inf"))?;
                if v < 2 {
                    return Err(format!("label {v} is below 2"));
                }
                Ok(Label::Finite(v))
            }
        })
        .collect()
}

// Census output is always one JSON record per line; it exists for
// scripted consumption and streams in constant memory.
fn census(rank: usize, labels: &str) -> Result<ExitCode, String> {
    if rank < 1 {
        return Err("census rank must be at least 1".to_string());
    }
    if rank > 8 {
        return Err("census rank capped at 8".to_string());
    }
    let alphabet = parse_labels(labels)?;
    if alphabet.is_empty() {
        return Err("census needs at least one label".to_string());
    }
    let npairs = rank * (rank - 1) / 2;
    let pairs: Vec<(usize, usize)> =
        (0..rank).flat_map(|i| ((i + 1)..rank).map(move |j| (i, j))).collect();
    // Odometer over label positions, first pair most significant.
    let mut digits = vec![0usize; npairs];
    loop {
        let assignments: Vec<(usize, usize, Label)> =
            pairs.iter().zip(&digits).map(|(&(i, j), &d)| (i, j, alphabet[d])).collect();
        let matrix =
            CoxeterMatrix::from_pairs(rank, &assignments).expect("census assignments are valid");
        let report = check_class_membership(&matrix);
        let record = json!({
            "matrix": matrix_json(&matrix),
            "in_class": report.in_class,
            "evenness": report.evenness.as_str(),
        });
        println!("{record}");
        // Advance the odometer from the least significant (last) pair.
        let mut pos = npairs;
        loop {
            if pos == 0 {
                return Ok(ExitCode::SUCCESS);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < alphabet.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}
