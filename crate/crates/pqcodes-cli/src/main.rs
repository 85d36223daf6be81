//! Command-line driver: enumeration, verification, lattice profiling,
//! decomposition, code search, and the four-word counterexample generator.
//!
//! The exit-code contract is fixed so the binary is scriptable in CI:
//! 0 success, 1 usage or parse error, 2 desk-scale cap exceeded,
//! 3 at least one requested check failed (the report is still written).
//!
//! Output paths given as relative paths are placed under the directory
//! named by `PQCODES_CACHE_DIR` when that variable is set.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use pqcodes::catalog::{append_codes, CatalogError};
use pqcodes::code::{CheckOutcome, CheckReport, CodeError, Observation, Witness};
use pqcodes::decomp::{decompose_all, indecomposable_bases, DecompError, Decomposition};
use pqcodes::field::FieldError;
use pqcodes::json::{
    canonical_code_json, code_doc, field_doc, parse_code, parse_field, CodeDoc, FieldDoc,
    JsonError, ParseMode, SCHEMA_VERSION,
};
use pqcodes::lattice::{LatticeCheck, LatticeError, LatticeProfile};
use pqcodes::search::{BranchOrder, SearchError};
use pqcodes::subspace::{
    enumerate_grassmannian, enumerate_projective_space, Subspace, SubspaceError,
};
use pqcodes::{
    build_lattice_from_code, build_projective_lattice, remark_counterexample,
    search_max_linear_code, FieldSpec, SearchConfig, SubspaceCode,
};

const EXIT_USAGE: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_CHECK: u8 = 3;

#[derive(Parser)]
#[command(
    name = "pqcodes",
    version,
    about = "Verification and search toolkit for linear codes of subspaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List P_q(n) or the Grassmannian G_q(n, k) with per-dimension counts
    Enumerate(EnumerateArgs),
    /// Run selected checks on a code document and report each outcome
    Verify(VerifyArgs),
    /// Profile the subspace lattice of a code or of all of P_q(n)
    Lattice(LatticeArgs),
    /// List indecomposable codewords and every word's unique decomposition
    Decompose(DecomposeArgs),
    /// Search for maximum-size codes, writing a catalog and a summary
    Search(SearchArgs),
    /// Emit the four-word code that is linear but not closed under meets
    Counterexample(CounterexampleArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    /// Field order (a prime power up to 9)
    #[arg(long)]
    q: u8,
    /// Ambient dimension
    #[arg(long)]
    n: usize,
    /// Restrict the listing to subspaces of this dimension
    #[arg(long)]
    k: Option<usize>,
    /// Emit a JSON document instead of text
    #[arg(long)]
    json: bool,
    /// Write the listing here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Code document (JSON) to check
    #[arg(long)]
    code: PathBuf,
    /// Comma-separated list of checks to run
    #[arg(long, value_delimiter = ',', default_value = "all")]
    checks: Vec<CheckSelector>,
    /// Accept non-canonical basis rows and re-reduce them
    #[arg(long)]
    lenient: bool,
    /// Also write the full JSON report here
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print the JSON report on stdout instead of text
    #[arg(long)]
    json: bool,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum CheckSelector {
    /// Group axioms plus the isometry condition
    Linearity,
    /// Consequence checks lemma2.dim through lemma7.b
    Lemmas,
    /// Union-intersection iff and the direct-sum identity
    Uit,
    /// Closure of the word set under meets and joins
    Closure,
    /// Sublattice profile and the size-height bound
    Lattice,
    /// Unique decomposition into indecomposables
    Decomposition,
    /// Everything above
    All,
}

#[derive(Args)]
struct LatticeArgs {
    /// Code document whose words form the lattice
    #[arg(long, conflicts_with = "projective")]
    code: Option<PathBuf>,
    /// Use all of P_q(n) instead of a code file
    #[arg(long, requires = "q", requires = "n")]
    projective: bool,
    /// Field order (with --projective)
    #[arg(long)]
    q: Option<u8>,
    /// Ambient dimension (with --projective)
    #[arg(long)]
    n: Option<usize>,
    /// Write the Hasse diagram in DOT format here
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Accept non-canonical basis rows and re-reduce them
    #[arg(long)]
    lenient: bool,
    /// Print the profile as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Code document (JSON) to decompose
    #[arg(long)]
    code: PathBuf,
    /// Accept non-canonical basis rows and re-reduce them
    #[arg(long)]
    lenient: bool,
    /// Print the decomposition as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Run configuration (JSON)
    #[arg(long)]
    config: PathBuf,
    /// Catalog destination, overriding the config's path
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Summary destination, overriding the config's path
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Parse the config, echo its canonical serialization, and exit
    #[arg(long)]
    check_config: bool,
    /// Print the summary JSON on stdout instead of a text line
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CounterexampleArgs {
    /// Ambient dimension (at least 3)
    #[arg(long)]
    n: usize,
    /// Field order (must be 2)
    #[arg(long, default_value_t = 2)]
    q: u8,
    /// Write the code document here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the code document on stdout instead of a text summary
    #[arg(long)]
    json: bool,
}

/// On-disk search configuration.  The declaration order is the canonical
/// key order: a parsed config re-serializes byte-identically, and the same
/// config yields byte-identical catalog and summary files.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    schema: String,
    command: String,
    field: FieldDoc,
    n: usize,
    max_words: usize,
    branch_order: BranchOrder,
    parallel_width: usize,
    time_budget_ms: Option<u64>,
    /// Recorded for downstream randomized validation; the exhaustive
    /// search itself is deterministic and does not consume it.
    seed: u64,
    parse_mode: ParseMode,
    catalog: Option<String>,
    summary: Option<String>,
}

#[derive(Serialize)]
struct SummaryDoc {
    schema: String,
    command: String,
    field: FieldDoc,
    n: usize,
    max_size: usize,
    codes_found: usize,
    exhausted: bool,
    nodes: u64,
    prunes: u64,
    seed: u64,
}

#[derive(Serialize)]
struct EnumerationDoc {
    schema: String,
    n: usize,
    field: FieldDoc,
    k: Option<usize>,
    counts: Vec<usize>,
    total: usize,
    subspaces: Vec<Vec<Vec<u8>>>,
}

#[derive(Serialize)]
struct VerifyDoc {
    schema: String,
    passed: bool,
    sections: Vec<Section>,
}

#[derive(Serialize)]
struct Section {
    name: String,
    report: CheckReport,
}

#[derive(Serialize)]
struct LatticeDoc {
    schema: String,
    profile: LatticeProfile,
}

#[derive(Serialize)]
struct DecompositionDoc {
    schema: String,
    indecomposables: Vec<usize>,
    unique: bool,
    bases: Vec<Vec<usize>>,
    decompositions: Vec<Decomposition>,
}

/// A terminal failure carrying its contractual exit code.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn check_failed(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_CHECK,
        message: message.into(),
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        usage(e.to_string())
    }
}

impl From<SubspaceError> for Failure {
    fn from(e: SubspaceError) -> Self {
        let code = match e {
            SubspaceError::ScaleCap { .. } => EXIT_CAP,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<CodeError> for Failure {
    fn from(e: CodeError) -> Self {
        usage(e.to_string())
    }
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        let code = match &e {
            JsonError::Subspace(SubspaceError::ScaleCap { .. }) => EXIT_CAP,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        let code = match &e {
            SearchError::TooManyWords { .. }
            | SearchError::Subspace(SubspaceError::ScaleCap { .. }) => EXIT_CAP,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        let code = match &e {
            LatticeError::ScaleCap { .. } => EXIT_CAP,
            LatticeError::NoMeet(..)
            | LatticeError::NoJoin(..)
            | LatticeError::NotMeetClosed(..)
            | LatticeError::NotJoinClosed(..) => EXIT_CHECK,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<DecompError> for Failure {
    fn from(e: DecompError) -> Self {
        let code = match &e {
            DecompError::NotLinear
            | DecompError::NotClosedUnderIntersection
            | DecompError::NotDisjoint(..)
            | DecompError::NoDecomposition { .. }
            | DecompError::AmbiguousDecomposition { .. } => EXIT_CHECK,
            DecompError::FamilyTooLarge { .. } => EXIT_CAP,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version are not usage errors.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Lattice(args) => cmd_lattice(args),
        Command::Decompose(args) => cmd_decompose(args),
        Command::Search(args) => cmd_search(args),
        Command::Counterexample(args) => cmd_counterexample(args),
    }
}

// ---------------------------------------------------------------- helpers

/// Relative output paths land under PQCODES_CACHE_DIR when it is set.
fn resolve_out(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    match env::var_os("PQCODES_CACHE_DIR") {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn write_out(path: &Path, content: &str) -> Result<PathBuf, Failure> {
    let path = resolve_out(path);
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| usage(format!("cannot create {}: {e}", parent.display())))?;
        }
    }
    fs::write(&path, content).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_code(path: &Path, mode: ParseMode) -> Result<SubspaceCode, Failure> {
    let text = read_text(path)?;
    let doc: CodeDoc = serde_json::from_str(&text)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(parse_code(&doc, mode)?)
}

fn parse_mode(lenient: bool) -> ParseMode {
    if lenient {
        ParseMode::Lenient
    } else {
        ParseMode::Strict
    }
}

/// Writes to stdout, treating a closed pipe as success so that piping
/// into `head` does not abort the run.
fn out(content: &str) -> Result<(), Failure> {
    use std::io::Write;
    match std::io::stdout().write_all(content.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(usage(format!("cannot write to stdout: {e}"))),
    }
}

fn emit(dest: Option<&Path>, content: &str) -> Result<(), Failure> {
    match dest {
        Some(path) => {
            write_out(path, content)?;
            Ok(())
        }
        None => out(content),
    }
}

// -------------------------------------------------------------- enumerate

fn cmd_enumerate(args: EnumerateArgs) -> Result<(), Failure> {
    let field = FieldSpec::gf(args.q)?;
    let (subspaces, counts) = match args.k {
        Some(k) => {
            let grass = enumerate_grassmannian(args.n, k, &field)?;
            let count = grass.len();
            (grass.into_elements(), vec![count])
        }
        None => {
            let all = enumerate_projective_space(args.n, &field)?;
            let mut counts = vec![0usize; args.n + 1];
            for s in &all {
                counts[s.dim()] += 1;
            }
            (all, counts)
        }
    };
    let total = subspaces.len();

    let rendered = if args.json {
        let doc = EnumerationDoc {
            schema: SCHEMA_VERSION.to_string(),
            n: args.n,
            field: field_doc(&field),
            k: args.k,
            counts,
            total,
            subspaces: subspaces.iter().map(|s| s.basis().to_vec()).collect(),
        };
        serde_json::to_string(&doc)? + "\n"
    } else {
        let mut text = String::new();
        for s in &subspaces {
            text.push_str(&s.label());
            text.push('\n');
        }
        let count_line: Vec<String> = counts.iter().map(ToString::to_string).collect();
        text.push_str(&count_line.join(" "));
        text.push('\n');
        text.push_str(&format!(
            "{total} subspace{}\n",
            if total == 1 { "" } else { "s" }
        ));
        text
    };
    emit(args.out.as_deref(), &rendered)
}

// ----------------------------------------------------------------- verify

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let code = load_code(&args.code, parse_mode(args.lenient))?;
    let selectors = expand_selectors(&args.checks);

    let mut sections = Vec::new();
    for selector in selectors {
        sections.push(run_selector(selector, &code)?);
    }
    let passed = sections.iter().all(|s| s.report.passed);

    let doc = VerifyDoc {
        schema: SCHEMA_VERSION.to_string(),
        passed,
        sections,
    };
    let json = serde_json::to_string(&doc)? + "\n";
    if let Some(report) = &args.report {
        write_out(report, &json)?;
    }
    if args.json {
        out(&json)?;
    } else {
        out(&render_verify(&doc))?;
    }

    if passed {
        Ok(())
    } else {
        let failing = doc.sections.iter().filter(|s| !s.report.passed).count();
        Err(check_failed(format!(
            "{failing} of {} selected checks failed",
            doc.sections.len()
        )))
    }
}

fn expand_selectors(requested: &[CheckSelector]) -> Vec<CheckSelector> {
    let all = [
        CheckSelector::Linearity,
        CheckSelector::Lemmas,
        CheckSelector::Uit,
        CheckSelector::Closure,
        CheckSelector::Lattice,
        CheckSelector::Decomposition,
    ];
    let mut out = Vec::new();
    for &sel in requested {
        match sel {
            CheckSelector::All => out.extend(all),
            other => out.push(other),
        }
    }
    out.dedup();
    out
}

fn selector_name(selector: CheckSelector) -> &'static str {
    match selector {
        CheckSelector::Linearity => "linearity",
        CheckSelector::Lemmas => "lemmas",
        CheckSelector::Uit => "uit",
        CheckSelector::Closure => "closure",
        CheckSelector::Lattice => "lattice",
        CheckSelector::Decomposition => "decomposition",
        CheckSelector::All => "all",
    }
}

fn run_selector(selector: CheckSelector, code: &SubspaceCode) -> Result<Section, Failure> {
    let report = match selector {
        CheckSelector::Linearity => code.is_linear().map_err(Failure::from)?,
        CheckSelector::Lemmas => {
            prereq_guard(code.verify_lemma_suite(), "lemma.prereq")?
        }
        CheckSelector::Uit => {
            prereq_guard(code.verify_union_intersection(), "uit.prereq")?
        }
        CheckSelector::Closure => closure_report(code)?,
        CheckSelector::Lattice => lattice_report(code)?,
        CheckSelector::Decomposition => decomposition_report(code)?,
        CheckSelector::All => unreachable!("expanded before dispatch"),
    };
    Ok(Section {
        name: selector_name(selector).to_string(),
        report,
    })
}

/// A NotLinear error from a consequence suite means the suite's
/// precondition failed: report that as a failed check, not a crash.
fn prereq_guard(
    result: Result<CheckReport, CodeError>,
    prereq: &str,
) -> Result<CheckReport, Failure> {
    match result {
        Ok(report) => Ok(report),
        Err(CodeError::NotLinear) => Ok(failed_precondition(
            prereq,
            "the group or isometry checks fail, so this suite's precondition does not hold",
        )),
        Err(e) => Err(e.into()),
    }
}

fn failed_precondition(check: &str, detail: &str) -> CheckReport {
    let outcome = CheckOutcome {
        check: check.to_string(),
        passed: false,
        violations: 1,
        witness: Some(Witness {
            indices: vec![],
            detail: detail.to_string(),
        }),
    };
    CheckReport {
        passed: false,
        checks: vec![outcome],
        observations: vec![],
    }
}

fn assemble(checks: Vec<CheckOutcome>, observations: Vec<Observation>) -> CheckReport {
    CheckReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
        observations,
    }
}

/// Scans all unordered pairs for meets and joins that fall outside the
/// word set; the first missing one becomes the witness.
fn closure_report(code: &SubspaceCode) -> Result<CheckReport, Failure> {
    let m = code.len();
    let scan = |op: fn(&Subspace, &Subspace) -> Result<Subspace, SubspaceError>,
                    check: &str,
                    symbol: &str|
     -> Result<CheckOutcome, Failure> {
        let mut missing = 0usize;
        let mut witness = None;
        for i in 0..m {
            for j in i + 1..m {
                let x = op(code.word(i), code.word(j))?;
                if code.find(&x).is_none() {
                    missing += 1;
                    if witness.is_none() {
                        witness = Some(Witness {
                            indices: vec![i, j],
                            detail: format!(
                                "X{i} {symbol} X{j} = {} is not a codeword",
                                x.label()
                            ),
                        });
                    }
                }
            }
        }
        Ok(CheckOutcome {
            check: check.to_string(),
            passed: missing == 0,
            violations: missing,
            witness,
        })
    };
    let meet = scan(Subspace::intersect, "closure.meet", "∩")?;
    let join = scan(Subspace::sum, "closure.join", "+")?;
    Ok(assemble(vec![meet, join], vec![]))
}

fn lattice_outcome(check: &str, lc: &LatticeCheck) -> CheckOutcome {
    CheckOutcome {
        check: check.to_string(),
        passed: lc.holds,
        violations: usize::from(!lc.holds),
        witness: lc.witness.as_ref().map(|w| Witness {
            indices: w.indices.clone(),
            detail: w.detail.clone(),
        }),
    }
}

fn profile_summary(profile: &LatticeProfile) -> String {
    let d = if profile.distributive.holds {
        "distributive"
    } else {
        "not distributive"
    };
    let g = if profile.geometric.holds {
        "geometric"
    } else {
        "not geometric"
    };
    format!(
        "{d}, {g}, height {}, {} atoms",
        profile.height,
        profile.atoms.len()
    )
}

fn lattice_report(code: &SubspaceCode) -> Result<CheckReport, Failure> {
    match build_lattice_from_code(code) {
        Ok(lattice) => {
            let profile = lattice.profile();
            let birkhoff = lattice.check_birkhoff_bound()?;
            let mut checks = vec![
                lattice_outcome("lattice.modular", &profile.modular),
                lattice_outcome("lattice.distributive", &profile.distributive),
                lattice_outcome("lattice.geometric", &profile.geometric),
            ];
            checks.extend(birkhoff.checks);
            let mut observations = vec![Observation {
                name: "lattice.profile".to_string(),
                indices: vec![],
                detail: profile_summary(&profile),
            }];
            observations.extend(birkhoff.observations);
            Ok(assemble(checks, observations))
        }
        Err(LatticeError::NotMeetClosed(i, j)) => Ok(assemble(
            vec![CheckOutcome {
                check: "lattice.meetclosed".to_string(),
                passed: false,
                violations: 1,
                witness: Some(Witness {
                    indices: vec![i, j],
                    detail: format!("words {i} and {j} have an intersection outside the code"),
                }),
            }],
            vec![],
        )),
        Err(LatticeError::NotJoinClosed(i, j)) => Ok(assemble(
            vec![CheckOutcome {
                check: "lattice.joinclosed".to_string(),
                passed: false,
                violations: 1,
                witness: Some(Witness {
                    indices: vec![i, j],
                    detail: format!("words {i} and {j} have a sum outside the code"),
                }),
            }],
            vec![],
        )),
        Err(e) => Err(e.into()),
    }
}

fn decomposition_report(code: &SubspaceCode) -> Result<CheckReport, Failure> {
    let outcome = indecomposable_bases(code).and_then(|b| decompose_all(code).map(|d| (b, d)));
    match outcome {
        Ok((basis, decompositions)) => {
            let k = basis.indecomposables.len();
            let size_matches = code.len() == 1usize << k;
            let checks = vec![
                CheckOutcome {
                    check: "basis.unique".to_string(),
                    passed: basis.unique,
                    violations: usize::from(!basis.unique),
                    witness: (!basis.unique).then(|| Witness {
                        indices: vec![],
                        detail: format!("{} spanning bases found", basis.bases.len()),
                    }),
                },
                CheckOutcome {
                    check: "decomp.count".to_string(),
                    passed: size_matches,
                    violations: usize::from(!size_matches),
                    witness: (!size_matches).then(|| Witness {
                        indices: vec![],
                        detail: format!("M = {} but 2^{k} indecomposables", code.len()),
                    }),
                },
            ];
            let observations = vec![Observation {
                name: "decomp.summary".to_string(),
                indices: basis.indecomposables.clone(),
                detail: format!(
                    "{k} indecomposables; all {} words decompose uniquely",
                    decompositions.len()
                ),
            }];
            Ok(assemble(checks, observations))
        }
        Err(DecompError::NotLinear) => Ok(failed_precondition(
            "decomp.prereq.linear",
            "decomposition requires a code passing the linearity checks",
        )),
        Err(DecompError::NotClosedUnderIntersection) => Ok(failed_precondition(
            "decomp.prereq.closed",
            "decomposition requires a code closed under intersection",
        )),
        Err(DecompError::NoDecomposition { word }) => Ok(assemble(
            vec![CheckOutcome {
                check: "decomp.exists".to_string(),
                passed: false,
                violations: 1,
                witness: Some(Witness {
                    indices: vec![word],
                    detail: format!("word {word} admits no decomposition"),
                }),
            }],
            vec![],
        )),
        Err(DecompError::AmbiguousDecomposition { word, count }) => Ok(assemble(
            vec![CheckOutcome {
                check: "decomp.unique".to_string(),
                passed: false,
                violations: 1,
                witness: Some(Witness {
                    indices: vec![word],
                    detail: format!("word {word} admits {count} distinct decompositions"),
                }),
            }],
            vec![],
        )),
        Err(e) => Err(e.into()),
    }
}

fn render_verify(doc: &VerifyDoc) -> String {
    let mut text = String::new();
    for section in &doc.sections {
        if section.report.passed {
            text.push_str(&format!("{} PASS\n", section.name));
        } else {
            text.push_str(&format!("{} FAIL\n", section.name));
            for outcome in section.report.violations() {
                text.push_str(&format!(
                    "  {}: {} violation{}",
                    outcome.check,
                    outcome.violations,
                    if outcome.violations == 1 { "" } else { "s" }
                ));
                if let Some(w) = &outcome.witness {
                    let indices: Vec<String> = w.indices.iter().map(ToString::to_string).collect();
                    if indices.is_empty() {
                        text.push_str(&format!("; {}", w.detail));
                    } else {
                        text.push_str(&format!(
                            "; witness ({}): {}",
                            indices.join(", "),
                            w.detail
                        ));
                    }
                }
                text.push('\n');
            }
        }
        for obs in &section.report.observations {
            text.push_str(&format!("  note {}: {}\n", obs.name, obs.detail));
        }
    }
    text.push_str(if doc.passed { "overall PASS\n" } else { "overall FAIL\n" });
    text
}

// ---------------------------------------------------------------- lattice

fn cmd_lattice(args: LatticeArgs) -> Result<(), Failure> {
    let lattice = if let Some(path) = &args.code {
        let code = load_code(path, parse_mode(args.lenient))?;
        build_lattice_from_code(&code)?
    } else if args.projective {
        let q = args.q.ok_or_else(|| usage("--projective needs --q"))?;
        let n = args.n.ok_or_else(|| usage("--projective needs --n"))?;
        build_projective_lattice(n, &FieldSpec::gf(q)?)?
    } else {
        return Err(usage("pass --code FILE or --projective --q Q --n N"));
    };

    if let Some(dot) = &args.dot {
        write_out(dot, &lattice.to_dot())?;
    }

    let profile = lattice.profile();
    if args.json {
        let doc = LatticeDoc {
            schema: SCHEMA_VERSION.to_string(),
            profile,
        };
        out(&(serde_json::to_string(&doc)? + "\n"))
    } else {
        let render = |name: &str, lc: &LatticeCheck| match (&lc.holds, &lc.witness) {
            (true, _) => format!("{name} yes\n"),
            (false, Some(w)) => format!("{name} no — witness {:?}: {}\n", w.indices, w.detail),
            (false, None) => format!("{name} no\n"),
        };
        out(&format!(
            "size {}\n{}{}{}height {}\natoms {}\n",
            profile.size,
            render("modular", &profile.modular),
            render("distributive", &profile.distributive),
            render("geometric", &profile.geometric),
            profile.height,
            profile.atoms.len()
        ))
    }
}

// -------------------------------------------------------------- decompose

fn cmd_decompose(args: DecomposeArgs) -> Result<(), Failure> {
    let code = load_code(&args.code, parse_mode(args.lenient))?;
    let basis = indecomposable_bases(&code)?;
    let decompositions = decompose_all(&code)?;

    if args.json {
        let doc = DecompositionDoc {
            schema: SCHEMA_VERSION.to_string(),
            indecomposables: basis.indecomposables,
            unique: basis.unique,
            bases: basis.bases,
            decompositions,
        };
        out(&(serde_json::to_string(&doc)? + "\n"))
    } else {
        let ind: Vec<String> = basis.indecomposables.iter().map(ToString::to_string).collect();
        let mut text = format!(
            "indecomposables: {}\nunique spanning basis: {}\n",
            ind.join(" "),
            if basis.unique { "yes" } else { "no" }
        );
        for dec in &decompositions {
            // parts index into the indecomposable list; print word indices.
            let words: Vec<String> = dec
                .parts
                .iter()
                .map(|&p| basis.indecomposables[p].to_string())
                .collect();
            if words.is_empty() {
                text.push_str(&format!("word {} = zero (empty sum)\n", dec.target));
            } else {
                text.push_str(&format!("word {} = {}\n", dec.target, words.join(" ⊞ ")));
            }
        }
        out(&text)
    }
}

// ----------------------------------------------------------------- search

fn cmd_search(args: SearchArgs) -> Result<(), Failure> {
    let text = read_text(&args.config)?;
    let config: RunConfig = serde_json::from_str(&text)
        .map_err(|e| usage(format!("{}: {e}", args.config.display())))?;
    if config.schema != SCHEMA_VERSION {
        return Err(usage(format!(
            "unsupported schema {:?}; this build reads {SCHEMA_VERSION:?}",
            config.schema
        )));
    }
    if config.command != "search" {
        return Err(usage(format!(
            "config command is {:?}; this subcommand runs \"search\"",
            config.command
        )));
    }
    if args.check_config {
        return out(&(serde_json::to_string(&config)? + "\n"));
    }

    let field = parse_field(&config.field)?;
    let mut cfg = SearchConfig::new(config.n, field.clone());
    cfg.max_words = config.max_words;
    cfg.branch_order = config.branch_order;
    cfg.parallel_width = config.parallel_width;
    cfg.time_budget = config.time_budget_ms.map(Duration::from_millis);

    let started = Instant::now();
    let outcome = search_max_linear_code(&cfg)?;
    // Wall time goes to stderr only, so the summary file stays
    // byte-identical across runs of the same config.
    eprintln!(
        "search walked {} nodes in {:.1?}",
        outcome.stats.nodes,
        started.elapsed()
    );

    let catalog_path = args
        .catalog
        .clone()
        .or_else(|| config.catalog.as_ref().map(PathBuf::from));
    if let Some(path) = &catalog_path {
        let resolved = resolve_out(path);
        if let Some(parent) = resolved.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent)
                    .map_err(|e| usage(format!("cannot create {}: {e}", parent.display())))?;
            }
        }
        append_codes(&resolved, &outcome.codes)?;
    }

    let summary = SummaryDoc {
        schema: SCHEMA_VERSION.to_string(),
        command: config.command.clone(),
        field: field_doc(&field),
        n: config.n,
        max_size: outcome.max_size,
        codes_found: outcome.codes.len(),
        exhausted: outcome.exhausted,
        nodes: outcome.stats.nodes,
        prunes: outcome.stats.prunes,
        seed: config.seed,
    };
    let summary_json = serde_json::to_string(&summary)? + "\n";
    let summary_path = args
        .summary
        .clone()
        .or_else(|| config.summary.as_ref().map(PathBuf::from));
    if let Some(path) = &summary_path {
        write_out(path, &summary_json)?;
    }

    if args.json {
        out(&summary_json)
    } else {
        out(&format!(
            "max size {} ({}; {} codes, {} nodes, {} prunes)\n",
            summary.max_size,
            if summary.exhausted {
                "exhausted"
            } else {
                "budget expired"
            },
            summary.codes_found,
            summary.nodes,
            summary.prunes
        ))
    }
}

// ---------------------------------------------------------- counterexample

fn cmd_counterexample(args: CounterexampleArgs) -> Result<(), Failure> {
    let field = FieldSpec::gf(args.q)?;
    let code = remark_counterexample(&field, args.n)?;
    let doc = code_doc(&code);
    let json = canonical_code_json(&doc)? + "\n";

    if let Some(out) = &args.out {
        write_out(out, &json)?;
    }
    if args.json {
        out(&json)
    } else {
        let mut text = format!("{} words in GF({})^{}\n", code.len(), args.q, args.n);
        for (i, word) in code.words().iter().enumerate() {
            text.push_str(&format!("{i}: {}\n", word.label()));
        }
        text.push_str("linear but not closed under intersection: X1 ∩ X2 is missing\n");
        out(&text)
    }
}
