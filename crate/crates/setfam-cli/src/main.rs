//! `setfam` — batch front end for exact set-family computations: named
//! constructions, predicate checks, sharp-structure detection, the
//! split-and-shorten transform, extremal search, and the verification
//! bundles, with machine-readable output and reproducible manifests.
//!
//! Exit codes: 0 all checks passed, 1 a requested check failed, 2 usage or
//! input-format error, 3 domain error (valid syntax, unsupported value).

mod verify;

use std::cell::RefCell;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use setfam::constructions::build_from_label_str;
use setfam::dyadic::DyadicRational;
use setfam::error::SetFamError;
use setfam::family::Family;
use setfam::genset::generating_set;
use setfam::search::{solve_with_threads, SearchMode, SearchProblem};
use setfam::transforms::{find_sharp_pairs, find_sharp_triples, split_shorten_transform_with_log};

#[derive(Parser)]
#[command(
    name = "setfam",
    version,
    about = "Exact computation with finite set families under simultaneous \
             r-wise k-intersection constraints"
)]
struct Cli {
    /// Write a JSON manifest (command, inputs, outputs, seed) for this run.
    #[arg(long, global = true, value_name = "PATH")]
    manifest_out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliSearchMode {
    Exhaustive,
    BranchAndBound,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyScope {
    /// Exhaustively recompute the small-ground extremal weights.
    Smalln,
    /// Exact-arithmetic weight comparisons across the F_n constructions.
    Crossover,
    /// Seeded randomized corpora for the structural lemmas.
    Lemmas,
    /// All of the above.
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named family (Fn:<n>, katona:<n>:<k>, extend:<base>:<k>)
    /// and report its cardinality and exact weight.
    Construct {
        label: String,
        /// Write the family file here; without it the family text goes to
        /// stdout after the summary.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Evaluate predicates on a family file; exit 0 iff all requested hold.
    Check {
        path: PathBuf,
        /// Require the family to be R-wise K-intersecting (repeatable).
        #[arg(long = "pred", value_name = "R:K")]
        preds: Vec<String>,
        /// Require the family to be left-compressed.
        #[arg(long)]
        lc: bool,
        /// Require almost-triviality (members of size <= n-3 contain 1).
        #[arg(long)]
        almost_trivial: bool,
    },
    /// List sharp pairs and sharp triples among the generators of an up-set.
    Sharp { path: PathBuf },
    /// Apply the split-and-shorten transform to a left-compressed up-set,
    /// emitting before/after weights and the step-by-step witness log.
    Transform {
        path: PathBuf,
        /// Write the transformed family file here.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Maximize family weight under two intersection constraints.
    Search {
        #[arg(long)]
        n: u8,
        /// First constraint: r1-wise k1-intersecting.
        #[arg(long, default_value_t = 3)]
        r1: u32,
        #[arg(long, default_value_t = 1)]
        k1: u32,
        /// Second constraint: r2-wise k2-intersecting.
        #[arg(long, default_value_t = 2)]
        r2: u32,
        #[arg(long, default_value_t = 3)]
        k2: u32,
        #[arg(long, value_enum, default_value_t = CliSearchMode::Exhaustive)]
        mode: CliSearchMode,
        /// Restrict the search to left-compressed families.
        #[arg(long)]
        lc: bool,
        /// Stop after this many nodes and report proven=false.
        #[arg(long, env = "SETFAM_NODE_BUDGET")]
        node_budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Write the full JSON report (optimum, families, nodes, millis,
        /// proven) here.  The millis field is wall time and is the one
        /// value exempt from byte-identical reproducibility.
        #[arg(long, value_name = "PATH")]
        json_out: Option<PathBuf>,
    },
    /// Re-derive published values and run the randomized property corpora.
    Verify {
        #[arg(value_enum)]
        scope: VerifyScope,
        /// Seed for the randomized corpora (lemmas scope).
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

pub(crate) enum CliError {
    /// Exit 1: a requested check failed (diagnostics already printed).
    CheckFailed,
    /// Exit 2: bad invocation or malformed input.
    Usage(String),
    /// Exit 3: valid syntax but out of the supported domain.
    Domain(String),
}

impl From<SetFamError> for CliError {
    fn from(e: SetFamError) -> Self {
        match e {
            SetFamError::Parse { .. } => CliError::Usage(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

fn main() {
    // Die quietly when a downstream pager or `head` closes the pipe,
    // instead of panicking on the next print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(CliError::CheckFailed) => 1,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            3
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut inputs: Vec<String> = Vec::new();
    let mut outputs: Vec<String> = Vec::new();
    let mut seed_used: Option<u64> = None;

    let outcome = match &cli.command {
        Command::Construct { label, out } => {
            if let Some(p) = out {
                outputs.push(p.display().to_string());
            }
            cmd_construct(label, out.as_deref(), &mut inputs)
        }
        Command::Check {
            path,
            preds,
            lc,
            almost_trivial,
        } => {
            inputs.push(path.display().to_string());
            cmd_check(path, preds, *lc, *almost_trivial)
        }
        Command::Sharp { path } => {
            inputs.push(path.display().to_string());
            cmd_sharp(path)
        }
        Command::Transform { path, out } => {
            inputs.push(path.display().to_string());
            if let Some(p) = out {
                outputs.push(p.display().to_string());
            }
            cmd_transform(path, out.as_deref())
        }
        Command::Search {
            n,
            r1,
            k1,
            r2,
            k2,
            mode,
            lc,
            node_budget,
            threads,
            json_out,
        } => {
            if let Some(p) = json_out {
                outputs.push(p.display().to_string());
            }
            let problem = SearchProblem {
                n: *n,
                r1: *r1,
                k1: *k1,
                r2: *r2,
                k2: *k2,
                mode: match mode {
                    CliSearchMode::Exhaustive => SearchMode::Exhaustive,
                    CliSearchMode::BranchAndBound => SearchMode::BranchAndBound,
                },
                restrict_lc: *lc,
                node_budget: *node_budget,
            };
            cmd_search(&problem, *threads, json_out.as_deref())
        }
        Command::Verify { scope, seed } => {
            seed_used = Some(*seed);
            verify::run(*scope, *seed)
        }
    };

    // A manifest describes any run that got past argument validation,
    // including runs whose checks failed.
    if matches!(outcome, Ok(()) | Err(CliError::CheckFailed)) {
        if let Some(path) = &cli.manifest_out {
            let manifest = json!({
                "command": std::env::args().skip(1).collect::<Vec<_>>(),
                "inputs": inputs,
                "outputs": outputs,
                "seed": seed_used,
            });
            write_text(path, &format!("{manifest}\n"))?;
        }
    }
    outcome
}

fn load_family(path: &Path) -> Result<Family, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Family::from_text(&text).map_err(CliError::from)
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

/// Renders a weight as `num/2^exp` plus, when the exponent is small enough
/// to stay readable, the exact decimal expansion.
fn print_weight(prefix: &str, w: &DyadicRational) {
    println!("{prefix}: {w}");
    if w.exponent() <= 20 {
        println!("decimal: {}", w.to_decimal_string());
    }
}

fn cmd_construct(
    label: &str,
    out: Option<&Path>,
    inputs: &mut Vec<String>,
) -> Result<(), CliError> {
    let seen_paths = RefCell::new(Vec::new());
    let resolver = |p: &str| -> setfam::error::Result<Family> {
        seen_paths.borrow_mut().push(p.to_string());
        let text = fs::read_to_string(p).map_err(|e| SetFamError::Parse {
            line: 0,
            message: format!("cannot read {p}: {e}"),
        })?;
        Family::from_text(&text)
    };
    let named = build_from_label_str(label, &resolver)?;
    inputs.extend(seen_paths.into_inner());

    println!("label: {}", named.label);
    println!("sets: {}", named.family.len());
    print_weight("weight", &named.family.weight());
    match out {
        Some(path) => write_text(path, &named.family.to_text())?,
        None => {
            println!();
            print!("{}", named.family.to_text());
        }
    }
    Ok(())
}

fn parse_pred(s: &str) -> Result<(u32, u32), CliError> {
    let err = || {
        CliError::Usage(format!(
            "--pred takes R:K with R >= 1 (e.g. 2:3), got {s:?}"
        ))
    };
    let (r, k) = s.split_once(':').ok_or_else(err)?;
    let r: u32 = r.trim().parse().map_err(|_| err())?;
    let k: u32 = k.trim().parse().map_err(|_| err())?;
    if r == 0 {
        return Err(err());
    }
    Ok((r, k))
}

fn cmd_check(
    path: &Path,
    preds: &[String],
    lc: bool,
    almost_trivial: bool,
) -> Result<(), CliError> {
    let fam = load_family(path)?;
    let mut all_hold = true;
    let mut pred_rows = Vec::new();
    for pred in preds {
        let (r, k) = parse_pred(pred)?;
        let holds = fam.is_r_wise_k_intersecting(r, k);
        all_hold &= holds;
        pred_rows.push(json!({"r": r, "k": k, "holds": holds}));
    }
    let mut report = json!({
        "n": fam.n(),
        "sets": fam.len(),
        "weight": serde_json::to_value(fam.weight()).expect("weight serializes"),
        "predicates": pred_rows,
    });
    if lc {
        let holds = fam.is_left_compressed();
        all_hold &= holds;
        report["left_compressed"] = json!(holds);
    }
    if almost_trivial {
        let holds = setfam::transforms::is_almost_trivial(&fam);
        all_hold &= holds;
        report["almost_trivial"] = json!(holds);
    }
    println!("{report}");
    if all_hold {
        Ok(())
    } else {
        Err(CliError::CheckFailed)
    }
}

fn cmd_sharp(path: &Path) -> Result<(), CliError> {
    let fam = load_family(path)?;
    let g = generating_set(&fam)?;
    let mut records = Vec::new();
    for p in find_sharp_pairs(&g) {
        records.push(json!({
            "kind": "pair",
            "members": [p.a.elements(), p.b.elements()],
            "i": p.i,
            "j": p.j,
        }));
    }
    for t in find_sharp_triples(&g) {
        records.push(json!({
            "kind": "triple",
            "members": [t.a.elements(), t.b.elements(), t.c.elements()],
            "i": null,
            "j": null,
        }));
    }
    println!("{}", serde_json::Value::Array(records));
    Ok(())
}

fn cmd_transform(path: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let fam = load_family(path)?;
    let outcome = split_shorten_transform_with_log(&fam)?;
    let report = json!({
        "before": {
            "sets": fam.len(),
            "weight": serde_json::to_value(fam.weight()).expect("weight serializes"),
        },
        "after": {
            "sets": outcome.family.len(),
            "weight": serde_json::to_value(outcome.family.weight()).expect("weight serializes"),
        },
        "steps": serde_json::to_value(&outcome.steps).expect("steps serialize"),
    });
    println!("{report}");
    if let Some(p) = out {
        write_text(p, &outcome.family.to_text())?;
    }
    Ok(())
}

fn cmd_search(
    problem: &SearchProblem,
    threads: usize,
    json_out: Option<&Path>,
) -> Result<(), CliError> {
    let report = solve_with_threads(problem, threads)?;
    print_weight("optimum", &report.optimum);
    println!("maximizers: {}", report.optimal_families.len());
    println!("nodes: {}", report.nodes_explored);
    println!("proven: {}", report.proof_of_optimality);
    if let Some(path) = json_out {
        write_text(path, &format!("{}\n", report.to_json()))?;
    }
    Ok(())
}
