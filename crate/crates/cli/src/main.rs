//! `schubert`: command-line front end for `schubert-galois`.
//!
//! Exit status: 0 on success, 2 on unparseable input or a failed
//! precondition, 1 when a computed result contradicts the catalog.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use schubert_galois::counting::count_solutions;
use schubert_galois::fieldlinalg::primes_from;
use schubert_galois::gr48::{self, Family, SampleRecord, SamplingConfig, Status};
use schubert_galois::partitions::{parse_problem, GrassContext, SchubertProblem};
use schubert_galois::reduction::{reduce, ReductionOutcome};
use schubert_galois::transitivity::{enumerate_candidates, verdict, IndexDatum, Ruling};
use schubert_galois::vakil2n::{certify_alternating, reduced_gr2_problems};

#[derive(Parser, Debug)]
#[command(
    name = "schubert",
    version,
    about = "Solution counts and Galois groups of Schubert problems"
)]
struct Cli {
    /// One JSON record per output line.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true, env = "SCHUBERT_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of solutions of a problem, e.g. "4,8: (2,2)^4".
    Count { problem: String },
    /// Reduce a problem and print the moves.
    Reduce { problem: String },
    /// Index data (S, d) satisfying the excess equation, with rulings.
    Candidates { problem: String },
    /// Certify at-least-alternating Galois groups on Gr(2,n).
    #[command(name = "certify-gr2")]
    CertifyGr2 {
        #[arg(long)]
        n: usize,
        /// One problem; without it every reduced problem on Gr(2,n).
        #[arg(long)]
        problem: Option<String>,
        /// Print the certificate tree.
        #[arg(long)]
        tree: bool,
    },
    /// Problems on Gr(4,8).
    #[command(subcommand)]
    Gr48(Gr48Command),
}

#[derive(Subcommand, Debug)]
enum Gr48Command {
    /// Every reduced problem with at least the given number of solutions.
    Enumerate {
        #[arg(long, default_value_t = 2)]
        min_solutions: usize,
    },
    /// Status of one reduced problem.
    Classify {
        #[arg(long)]
        problem: String,
    },
    /// Frobenius cycle-type sampling for an imprimitive family.
    Frobenius(FrobeniusArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FamilyArg {
    Derksen,
    D4a,
    D4b,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Derksen => Family::Derksen,
            FamilyArg::D4a => Family::D4a,
            FamilyArg::D4b => Family::D4b,
        }
    }
}

#[derive(Args, Debug)]
struct FrobeniusArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// A comma-separated prime list (`101,103`), or a count of consecutive
    /// primes from `--prime-start`. A single prime needs a trailing comma.
    #[arg(long, default_value = "10")]
    primes: String,
    #[arg(long, default_value_t = 1009)]
    prime_start: u64,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Redraws per (prime, trial) after degenerate instances.
    #[arg(long, default_value_t = 16)]
    max_attempts: usize,
}

enum Failure {
    Usage(String),
    Inconsistent(String),
}

type Outcome = Result<(), Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn problem(text: &str) -> Result<SchubertProblem, Failure> {
    parse_problem(text).map_err(usage)
}

/// Counts fit in JSON numbers when they fit in `u64`; larger ones are strings.
fn count_value(r: &BigUint) -> Value {
    match u64::try_from(r) {
        Ok(v) => json!(v),
        Err(_) => json!(r.to_string()),
    }
}

struct Out {
    json: bool,
    w: io::StdoutLock<'static>,
}

impl Out {
    fn record(&mut self, v: Value) {
        let _ = writeln!(self.w, "{v}");
    }

    fn text(&mut self, s: impl std::fmt::Display) {
        let _ = writeln!(self.w, "{s}");
    }
}

fn run_count(out: &mut Out, text: &str) -> Outcome {
    let sp = problem(text)?;
    let r = count_solutions(&sp);
    if out.json {
        out.record(json!({"problem": sp, "count": count_value(&r)}));
    } else {
        out.text(format!("r={r}"));
    }
    Ok(())
}

fn run_reduce(out: &mut Out, text: &str) -> Outcome {
    let sp = problem(text)?;
    let (outcome, trace) = reduce(&sp);
    if out.json {
        for m in &trace.moves {
            out.record(serde_json::to_value(m).expect("serializable"));
        }
        out.record(json!({"input": sp, "outcome": outcome}));
        return Ok(());
    }
    out.text(format!("input:   {sp}"));
    if trace.is_empty() {
        out.text("already reduced");
    } else {
        out.text(format!("{trace}").trim_end());
    }
    match outcome {
        ReductionOutcome::Reduced(p) => out.text(format!("reduced: {p}")),
        ReductionOutcome::Point => out.text("reduced: a point (one solution)"),
        ReductionOutcome::Trivial => out.text("reduced: no solutions"),
    }
    Ok(())
}

fn ruling_text(r: &Ruling) -> String {
    match r {
        Ruling::Dense => "dense".into(),
        Ruling::EmptyStratum => "empty stratum".into(),
        Ruling::Nonempty { available, required } => format!("empty: needs {required} > {available}"),
        Ruling::ForcesNonReduced { positions, detail } => format!("forces non-reduced at {positions:?}: {detail}"),
        Ruling::MeetForced { position } => format!("meet forced by #{position}"),
        Ruling::LineAndSpan {
            l_available,
            l_required,
            m_available,
            m_required,
        } => format!("line/span: L {l_required}>{l_available} or M {m_required}>{m_available}"),
    }
}

fn run_candidates(out: &mut Out, text: &str) -> Outcome {
    let sp = problem(text)?;
    let dim = sp.flag_dimension() as i64;
    let rulings = verdict(&sp).ok();
    let ruled = |idx: &IndexDatum| -> Option<Ruling> {
        rulings
            .as_ref()
            .filter(|v| !v.via_dual)
            .and_then(|v| v.records.iter().find(|r| &r.datum == idx))
            .map(|r| r.ruling.clone())
    };
    if !out.json {
        out.text(format!("{sp}  N={dim}"));
    }
    for idx in enumerate_candidates(&sp) {
        let d = dim + idx.dimension_offset(&sp);
        let ruling = ruled(&idx);
        if out.json {
            out.record(json!({"d": idx.d, "sets": idx.sets, "dimension": d, "ruling": ruling}));
        } else {
            let r = ruling.as_ref().map(ruling_text).unwrap_or_else(|| "no ruling".into());
            out.text(format!("{idx}  dim={d}  {r}"));
        }
    }
    if let Some(v) = &rulings {
        if out.json {
            out.record(json!({"verdict": v.kind, "via_dual": v.via_dual}));
        } else {
            out.text(format!(
                "verdict: {:?}{}",
                v.kind,
                if v.via_dual { " (via dual)" } else { "" }
            ));
        }
    }
    Ok(())
}

fn run_certify(out: &mut Out, n: usize, text: Option<&str>, tree: bool) -> Outcome {
    let problems = match text {
        Some(t) => {
            let sp = problem(t)?;
            if sp.context() != GrassContext::new(2, n).map_err(usage)? {
                return Err(Failure::Usage(format!("{sp} is not on Gr(2,{n})")));
            }
            vec![sp]
        }
        None => reduced_gr2_problems(n),
    };
    let mut failed = 0;
    for sp in &problems {
        let cert = certify_alternating(sp).map_err(usage)?;
        cert.check().map_err(Failure::Inconsistent)?;
        if !cert.is_alternating() {
            failed += 1;
        }
        let root = cert.root_node();
        if out.json {
            let mut rec = json!({
                "problem": sp,
                "r": root.r.to_string(),
                "verdict": cert.verdict(),
                "rule": root.rule,
                "nodes": cert.nodes.len(),
                "fail_nodes": cert.fail_count(),
            });
            if tree {
                rec["certificate"] = serde_json::to_value(&cert).expect("serializable");
            }
            out.record(rec);
        } else {
            out.text(format!(
                "{:<40} r={:<6} {:?} via {:?} ({} nodes)",
                sp.to_string(),
                root.r,
                cert.verdict(),
                root.rule,
                cert.nodes.len()
            ));
            if tree {
                out.text(&cert);
            }
        }
    }
    if !out.json {
        out.text(format!("{} problems, {} not certified", problems.len(), failed));
    }
    Ok(())
}

fn run_enumerate(out: &mut Out, min: usize) -> Outcome {
    let ctx = GrassContext::new(4, 8).expect("valid");
    let all = gr48::enumerate_reduced(ctx, min);
    for sp in &all {
        if out.json {
            out.record(json!({"problem": sp, "r": count_solutions(sp).to_string()}));
        }
    }
    if out.json {
        out.record(json!({"total": all.len(), "min_solutions": min}));
    } else {
        let imprimitive = all
            .iter()
            .filter(|sp| {
                gr48::classify(sp)
                    .map(|s| s.status != Status::AtLeastAlternatingPerPaper)
                    .unwrap_or(false)
            })
            .count();
        out.text(format!("{} problems", all.len()));
        out.text(format!("{imprimitive} in the imprimitive catalog"));
    }
    Ok(())
}

fn run_classify(out: &mut Out, text: &str) -> Outcome {
    let sp = problem(text)?;
    let st = gr48::classify(&sp).map_err(usage)?;
    if out.json {
        out.record(serde_json::to_value(&st).expect("serializable"));
    } else {
        out.text(&st);
    }
    Ok(())
}

fn parse_primes(spec: &str, start: u64) -> Result<Vec<u64>, Failure> {
    let primes = if spec.contains(',') {
        spec.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<u64>().map_err(|_| usage(format!("bad prime `{s}`"))))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        let count: usize = spec
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad prime count `{spec}`")))?;
        primes_from(start.max(5), count)
    };
    if primes.is_empty() {
        return Err(usage("no primes given"));
    }
    for &p in &primes {
        if p < 5 || !schubert_galois::fieldlinalg::is_prime(p) {
            return Err(usage(format!("{p} is not a prime >= 5")));
        }
    }
    Ok(primes)
}

fn record_json(r: &SampleRecord) -> Value {
    serde_json::to_value(r).expect("serializable")
}

fn run_frobenius(out: &mut Out, args: &FrobeniusArgs) -> Outcome {
    let config = SamplingConfig {
        family: args.family.into(),
        primes: parse_primes(&args.primes, args.prime_start)?,
        trials: args.trials,
        seed: args.seed,
        max_attempts: args.max_attempts,
    };
    let report = gr48::run_sampling(&config);
    if out.json {
        out.record(json!({"config": config}));
        for r in &report.records {
            out.record(record_json(r));
        }
        out.record(json!({
            "seed": config.seed,
            "unflagged": report.unflagged,
            "flagged": report.flagged,
            "errors": report.errors,
            "frequencies": report.frequencies,
            "verdict": report.verdict,
            "summary": report.verdict.as_ref().map(|v| v.summary()),
        }));
    } else {
        out.text(format!(
            "family {}  seed {}  {} primes from {} to {}  {} trials each",
            config.family,
            config.seed,
            config.primes.len(),
            config.primes[0],
            config.primes[config.primes.len() - 1],
            config.trials
        ));
        for r in report.records.iter().filter(|r| r.error.is_some()) {
            out.text(format!(
                "ERROR p={} trial={} attempt={} seed={}: {}",
                r.prime,
                r.trial,
                r.attempt,
                r.seed,
                r.error.as_deref().unwrap_or("")
            ));
        }
        out.text(format!(
            "{} samples, {} degenerate redraws, {} errors",
            report.unflagged, report.flagged, report.errors
        ));
        for (t, f) in &report.frequencies {
            out.text(format!("  {t:<14} {f:.3}"));
        }
        match &report.verdict {
            Some(v) => out.text(format!("verdict: {}", v.summary())),
            None => out.text("verdict: no samples"),
        }
    }
    if report.is_consistent() {
        Ok(())
    } else {
        Err(Failure::Inconsistent(match &report.verdict {
            Some(v) if report.errors == 0 => v.summary(),
            _ => format!("{} samples failed verification", report.errors),
        }))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = Out {
        json: cli.json,
        w: io::stdout().lock(),
    };
    let result = match &cli.command {
        Command::Count { problem } => run_count(&mut out, problem),
        Command::Reduce { problem } => run_reduce(&mut out, problem),
        Command::Candidates { problem } => run_candidates(&mut out, problem),
        Command::CertifyGr2 { n, problem, tree } => run_certify(&mut out, *n, problem.as_deref(), *tree),
        Command::Gr48(Gr48Command::Enumerate { min_solutions }) => run_enumerate(&mut out, *min_solutions),
        Command::Gr48(Gr48Command::Classify { problem }) => run_classify(&mut out, problem),
        Command::Gr48(Gr48Command::Frobenius(args)) => run_frobenius(&mut out, args),
    };
    let _ = out.w.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nRun `schubert --help` for usage.");
            ExitCode::from(2)
        }
        Err(Failure::Inconsistent(msg)) => {
            eprintln!("inconsistency: {msg}");
            ExitCode::from(1)
        }
    }
}
