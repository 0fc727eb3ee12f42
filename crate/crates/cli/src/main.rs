use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use aued::catalog::{self, Status};
use aued::code::{min_asymmetric_distance, Code};
use aued::construct;
use aued::designs::{self, ResolvablePacking};
use aued::search::{self, SearchLimits};
use aued::simulate::{self, Campaign};
use aued::{bounds, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "aued", version, about = "Construct, verify and search t-EC-AUED codes")]
struct Cli {
    /// Print one JSON object per report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and print it in the code text format.
    Construct(ConstructArgs),
    /// Evaluate the GBT lower bound on n_q(a,T).
    Bound(BoundArgs),
    /// Check a code's minimum asymmetric distance.
    Verify(VerifyArgs),
    /// Exact search for maximum sizes and shortest lengths.
    Search(SearchArgs),
    /// Run error-injection trials against a code.
    Simulate(SimulateArgs),
    /// Verify a resolvable design and derive its code.
    Design(DesignArgs),
    /// Bundled assets, known values and reproduction runs.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Trivial,
    C1,
    C2,
    Rs,
    Mds,
    Mirror,
    Debruijn,
    Juxtapose,
    Circulant,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    a: Option<u64>,
    #[arg(long = "T")]
    t: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    /// Input code files (mirror, juxtapose) or a seed file (circulant).
    #[arg(long = "input")]
    inputs: Vec<PathBuf>,
    /// Write the code here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    a: u64,
    #[arg(long = "T")]
    t: u64,
    /// Also print the known value of n_q(a,T), if any.
    #[arg(long)]
    known: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Code file; reads stdin when absent or `-`.
    #[arg(long)]
    code: Option<PathBuf>,
    /// Required minimum asymmetric distance.
    #[arg(long = "T")]
    t: Option<usize>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    q: u16,
    /// Target code size; with it, finds the shortest length.
    #[arg(long)]
    a: Option<usize>,
    #[arg(long = "T")]
    t: usize,
    /// Fixed length; finds the largest code size.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 8)]
    nmax: usize,
    /// Largest q^n to enumerate.
    #[arg(long, env = "AUED_SEARCH_CAP", default_value_t = search::DEFAULT_CAP)]
    cap: usize,
    /// Branch-and-bound node budget per probe.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    code: PathBuf,
    /// Correction radius; the code must be t-EC-AUED.
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ratio of symmetric to unidirectional trials.
    #[arg(long, default_value = "1:1")]
    mix: String,
    /// Smallest unidirectional error weight.
    #[arg(long)]
    uni_min: Option<usize>,
    /// Largest unidirectional error weight.
    #[arg(long)]
    uni_max: Option<usize>,
}

#[derive(Args)]
struct DesignArgs {
    /// Design file; see the README for the format.
    #[arg(long, conflicts_with = "affine")]
    file: Option<PathBuf>,
    /// Generate AG(2,q) instead of reading a file.
    #[arg(long)]
    affine: Option<u64>,
    /// Generate the round-robin one-factorization of K_m.
    #[arg(long, conflicts_with_all = ["file", "affine"])]
    round_robin: Option<usize>,
    /// Delete this parallel class first.
    #[arg(long)]
    drop_class: Option<usize>,
    /// Print the mirrored code instead of the report.
    #[arg(long)]
    emit_code: bool,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List bundled assets and reproduction targets.
    List,
    /// Run a reproduction target.
    Reproduce {
        #[arg(long)]
        target: String,
        /// Print every check, not only failures.
        #[arg(long)]
        verbose: bool,
    },
    /// Known value of n_q(a,T).
    Show {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        a: u64,
        #[arg(long = "T")]
        t: u64,
        /// Also print the witness code.
        #[arg(long)]
        witness: bool,
    },
    /// Print a bundled asset file.
    Asset { name: String },
}

/// Failures that map to exit status 1 rather than 2.
enum Failure {
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) | Error::Budget(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn emit(json: bool, value: Value, text: impl FnOnce() -> String) {
    if json {
        println!("{value}");
    } else {
        print!("{}", text());
    }
}

fn to_value(v: impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| usage(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn read_code(path: &PathBuf) -> Result<Code, Failure> {
    Ok(Code::from_text(&read_input(Some(path))?)?)
}

fn need<T: Copy>(v: Option<T>, name: &str, method: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("--{name} is required for {method}")))
}

fn construct(args: &ConstructArgs, json: bool) -> Outcome {
    let code = match args.method {
        Method::Trivial => construct::trivial_code(
            need(args.q, "q", "trivial")?,
            need(args.a, "a", "trivial")?,
            need(args.t, "T", "trivial")?,
        )?,
        Method::C1 => construct::construction_one(need(args.k, "k", "c1")?)?,
        Method::C2 => construct::construction_two(need(args.k, "k", "c2")?)?,
        Method::Rs => construct::extended_rs_code(need(args.q, "q", "rs")?)?,
        Method::Mds => construct::mds_mirror_code(need(args.q, "q", "mds")?)?,
        Method::Debruijn => construct::debruijn_code(need(args.n, "n", "debruijn")?, need(args.q, "q", "debruijn")?)?,
        Method::Mirror => {
            let [input] = args.inputs.as_slice() else {
                return Err(usage("mirror takes exactly one --input"));
            };
            construct::mirror_concatenate(&read_code(input)?)?
        }
        Method::Juxtapose => {
            if args.inputs.len() < 2 {
                return Err(usage("juxtapose takes at least two --input files"));
            }
            let codes = args.inputs.iter().map(read_code).collect::<Result<Vec<_>, _>>()?;
            construct::juxtapose_all(&codes)?
        }
        Method::Circulant => {
            let [input] = args.inputs.as_slice() else {
                return Err(usage("circulant takes exactly one seed --input"));
            };
            designs::develop_circulant(&designs::parse_seed(&read_input(Some(input))?)?)?
        }
    };
    match &args.out {
        Some(path) => {
            fs::write(path, code.to_text()).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            emit(json, json!({"written": path, "size": code.size(), "length": code.length()}), || {
                format!("wrote {} words of length {} to {}\n", code.size(), code.length(), path.display())
            });
        }
        None => emit(json, to_value(&code), || code.to_text()),
    }
    Ok(())
}

fn bound(args: &BoundArgs, json: bool) -> Outcome {
    let report = bounds::gbt(args.q, args.a, args.t)?;
    let known = if args.known {
        catalog::known(args.q, args.a, args.t)
    } else {
        None
    };
    let mut value = to_value(report);
    if args.known {
        value["known"] = to_value(&known);
    }
    emit(json, value, || {
        let mut s = format!("{report}\n");
        if let Some(k) = &known {
            s.push_str(&format!("{k}\n"));
        }
        s
    });
    Ok(())
}

fn verify(args: &VerifyArgs, json: bool) -> Outcome {
    let code = Code::from_text(&read_input(args.code.as_ref())?)?;
    if code.size() < 2 {
        emit(json, json!({"size": code.size(), "pass": true}), || {
            "a single word is vacuously t-EC-AUED for every t\n".to_owned()
        });
        return Ok(());
    }
    let summary = min_asymmetric_distance(&code)?;
    let pass = args.t.is_none_or(|t| summary.min_asymmetric >= t);
    let cert = match args.t {
        Some(t) if pass => Some(search::certify(&code, t)?),
        _ => None,
    };
    let (i, j) = summary.arg_pair;
    let value = json!({
        "q": code.q(),
        "length": code.length(),
        "size": code.size(),
        "min_asymmetric": summary.min_asymmetric,
        "min_hamming": summary.min_hamming,
        "arg_pair": [i, j],
        "T": args.t,
        "pass": pass,
        "verdict": cert.as_ref().map(|c| c.verdict),
        "gbt": cert.as_ref().map(|c| c.gbt),
    });
    emit(json, value, || {
        let mut s = format!(
            "q={} length={} size={} min_d_as={} min_d_H={} (words {i}, {j})\n",
            code.q(),
            code.length(),
            code.size(),
            summary.min_asymmetric,
            summary.min_hamming
        );
        match (args.t, &cert) {
            (Some(t), Some(c)) => s.push_str(&format!(
                "pass: {}-EC-AUED (T={t}); GBT={} verdict={}\n",
                t - 1,
                c.gbt,
                c.verdict
            )),
            (Some(t), None) => s.push_str(&format!(
                "fail: words {i} ({}) and {j} ({}) have asymmetric distance {} < {t}\n",
                code.word(i),
                code.word(j),
                summary.min_asymmetric
            )),
            (None, _) => {}
        }
        s
    });
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "minimum asymmetric distance {} is below {}",
            summary.min_asymmetric,
            args.t.unwrap_or(0)
        )))
    }
}

fn search_cmd(args: &SearchArgs, json: bool) -> Outcome {
    let limits = SearchLimits {
        cap: args.cap,
        node_budget: args.budget,
    };
    match (args.a, args.n) {
        (Some(a), None) => {
            let fallback = catalog::known(args.q as u64, a as u64, args.t as u64)
                .and_then(|k| k.recipe)
                .and_then(|r| r.build().ok());
            let cert = search::min_length(args.q, a, args.t, args.nmax, &limits, fallback.as_ref())?;
            emit(json, to_value(&cert), || cert.to_string());
        }
        (None, Some(n)) => {
            let r = search::max_code_size(args.q, n, args.t, &limits)?;
            let value = json!({"q": args.q, "n": n, "T": args.t, "size": r.size, "nodes": r.nodes, "witness": r.witness});
            emit(json, value, || {
                format!(
                    "max size for q={} n={n} T={}: {} ({} nodes)\nwitness:\n{}",
                    args.q,
                    args.t,
                    r.size,
                    r.nodes,
                    r.witness.to_text()
                )
            });
        }
        _ => return Err(usage("give exactly one of --a (shortest length) or --n (largest size)")),
    }
    Ok(())
}

fn parse_mix(mix: &str) -> Result<(u64, u64), Failure> {
    let bad = || usage(format!("--mix must look like SYM:UNI, got {mix:?}"));
    let (s, u) = mix.split_once(':').ok_or_else(bad)?;
    let s: u64 = s.trim().parse().map_err(|_| bad())?;
    let u: u64 = u.trim().parse().map_err(|_| bad())?;
    if s + u == 0 {
        return Err(bad());
    }
    Ok((s, u))
}

fn simulate_cmd(args: &SimulateArgs, json: bool) -> Outcome {
    let code = read_code(&args.code)?;
    let (s, u) = parse_mix(&args.mix)?;
    let sym = (args.trials as u128 * s as u128 / (s + u) as u128) as u64;
    let uni_weights = match (args.uni_min, args.uni_max) {
        (None, None) => None,
        (lo, hi) => Some(lo.unwrap_or(1)..=hi.unwrap_or(code.length())),
    };
    let campaign = Campaign {
        symmetric_trials: sym,
        unidirectional_trials: args.trials - sym,
        seed: args.seed,
        symmetric_weights: None,
        unidirectional_weights: uni_weights,
    };
    let stats = simulate::run_trials(&code, args.t, &campaign)?;
    let total = stats.total();
    let value = json!({
        "seed": args.seed,
        "t": args.t,
        "symmetric": stats.symmetric,
        "unidirectional": stats.unidirectional,
        "total": total,
    });
    emit(json, value, || {
        let mut s = format!("{:<15} {:>10} {:>10} {:>10} {:>12}\n", "errors", "trials", "corrected", "detected", "miscorrected");
        for (name, c) in [("symmetric", stats.symmetric), ("unidirectional", stats.unidirectional), ("total", total)] {
            s.push_str(&format!(
                "{name:<15} {:>10} {:>10} {:>10} {:>12}\n",
                c.trials, c.corrected, c.detected, c.miscorrected
            ));
        }
        s
    });
    if total.miscorrected > 0 || stats.symmetric.corrected != stats.symmetric.trials {
        return Err(Failure::Verification("decoder guarantee violated".to_owned()));
    }
    Ok(())
}

fn design_cmd(args: &DesignArgs, json: bool) -> Outcome {
    let mut p: ResolvablePacking = match (&args.file, args.affine, args.round_robin) {
        (Some(path), None, None) => designs::parse_design(&read_input(Some(path))?)?,
        (None, Some(q), None) => designs::affine_plane(q)?,
        (None, None, Some(m)) => designs::round_robin(m)?,
        _ => return Err(usage("give one of --file, --affine or --round-robin")),
    };
    if let Some(c) = args.drop_class {
        p = designs::delete_parallel_class(&p, c)?;
    }
    let report = designs::verify_resolvable(&p);
    let pc = designs::resolvable_packing_code(&p)?;
    if args.emit_code {
        emit(json, to_value(&pc.code), || pc.code.to_text());
        return Ok(());
    }
    let cert = search::certify(&pc.code, pc.claimed_distance)?;
    let value = json!({
        "report": report,
        "q": pc.q,
        "size": pc.code.size(),
        "length": pc.code.length(),
        "claimed_distance": pc.claimed_distance,
        "min_asymmetric": pc.code.min_asymmetric(),
        "gbt": cert.gbt,
        "verdict": cert.verdict,
    });
    emit(json, value, || {
        format!(
            "points={} blocks={} classes={} block_size={} lambda={} balanced={}\n\
             code: q={} size={} length={} d_as={} (guaranteed {}) GBT={} verdict={}\n",
            report.points,
            report.blocks,
            report.classes,
            report.block_size.map_or_else(|| "mixed".to_owned(), |k| k.to_string()),
            report.lambda,
            report.balanced,
            pc.q,
            pc.code.size(),
            pc.code.length(),
            pc.code.min_asymmetric().unwrap_or(0),
            pc.claimed_distance,
            cert.gbt,
            cert.verdict
        )
    });
    Ok(())
}

fn catalog_cmd(action: &CatalogAction, json: bool) -> Outcome {
    match action {
        CatalogAction::List => {
            let value = json!({
                "assets": catalog::assets(),
                "targets": catalog::TARGETS.iter().map(|(id, d)| json!({"id": id, "description": d})).collect::<Vec<_>>(),
            });
            emit(json, value, || {
                let mut s = String::from("assets:\n");
                for a in catalog::assets() {
                    s.push_str(&format!(
                        "  {:<14} {:?}: q={} size={} length={} d_as={}\n",
                        a.name, a.kind, a.q, a.size, a.length, a.distance
                    ));
                }
                s.push_str("targets:\n");
                for (id, d) in catalog::TARGETS {
                    s.push_str(&format!("  {id:<26} {d}\n"));
                }
                s
            });
            Ok(())
        }
        CatalogAction::Reproduce { target, verbose } => {
            let report = catalog::reproduce(target)?;
            emit(json, to_value(&report), || {
                if *verbose {
                    return report.to_string();
                }
                let passed = report.checks.iter().filter(|c| c.passed).count();
                let mut s = format!(
                    "{}: {} ({passed}/{} checks passed)\n",
                    report.target,
                    if report.passed() { "pass" } else { "FAIL" },
                    report.checks.len()
                );
                for c in report.failures() {
                    s.push_str(&format!("  [FAIL] {}: {}\n", c.name, c.detail));
                }
                for k in &report.skipped {
                    s.push_str(&format!("  [skipped] {k}\n"));
                }
                s
            });
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification(format!("target {target} failed")))
            }
        }
        CatalogAction::Show { q, a, t, witness } => {
            let Some(kv) = catalog::known(*q, *a, *t) else {
                return Err(usage(format!("no known value for q={q} a={a} T={t}")));
            };
            let code = match (&kv.recipe, witness) {
                (Some(r), true) => Some(r.build()?),
                _ => None,
            };
            let mut value = to_value(&kv);
            if let Some(c) = &code {
                value["witness"] = to_value(c);
            }
            emit(json, value, || {
                let mut s = format!("{kv}\n");
                if let Some(c) = &code {
                    s.push_str(&c.to_text());
                }
                if kv.status == Status::LowerUpperGap {
                    s.push_str("  (not settled)\n");
                }
                s
            });
            Ok(())
        }
        CatalogAction::Asset { name } => {
            let a = catalog::asset(name)?;
            let code = catalog::load_code(name)?;
            emit(json, json!({"asset": a, "code": code}), || a.text().to_owned());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let json = cli.json;
    let result = match &cli.command {
        Command::Construct(a) => construct(a, json),
        Command::Bound(a) => bound(a, json),
        Command::Verify(a) => verify(a, json),
        Command::Search(a) => search_cmd(a, json),
        Command::Simulate(a) => simulate_cmd(a, json),
        Command::Design(a) => design_cmd(a, json),
        Command::Catalog { action } => catalog_cmd(action, json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("aued: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("aued: {msg}");
            ExitCode::from(2)
        }
    }
}
