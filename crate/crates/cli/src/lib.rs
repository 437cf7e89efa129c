//! The `subdiv` command line.
//!
//! [`run`] does all the work and returns the complete output, so callers
//! (the binary, tests) never see a half-written answer. Exit statuses:
//! 0 success, 1 honest failure with a JSON reason on stdout, 2 malformed
//! input with a JSON reason on stderr.

pub mod experiment;

use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use digraph_subdiv::arborescence::find_branching;
use digraph_subdiv::dichromatic::{
    dichromatic_number, dicolour_with, find_subdivision_auto, find_subdivision_dic, find_subdivision_reducible,
    greedy_embed_forest,
};
use digraph_subdiv::finders::{find_blocked_path, find_c_k_1, find_triple_path, find_two_block_cycle};
use digraph_subdiv::generate::GenSpec;
use digraph_subdiv::oracle::{oracle_subdivision, DEFAULT_BUDGET};
use digraph_subdiv::{verify_subdivision, Digraph, Error, PatternSpec, Result, SubdivisionCertificate};
use serde_json::{json, Value};

use experiment::Suite;

const EXPERIMENT_HELP: &str = "\
Output is a tab-separated table with a header row and these columns, in order:
  suite           suite name
  trial           trial index
  genspec         host descriptor family:params:seed (replayable with `gen`)
  params          suite parameters
  n               host vertex count
  min_out_degree  host minimum out-degree
  success         finder returned a certificate (true/false)
  verified        certificate accepted by the verifier (true/false, `-` if none)
  millis          finder wall time; `-` unless --timing is given

Trial i runs on a host generated with a seed derived from --seed and i, so a
table is reproducible from its master seed, and `--replay FILE` reruns the
exact descriptors recorded in an earlier table.";

#[derive(Parser)]
#[command(name = "subdiv", version, about = "Find, verify and test subdivisions of small digraphs in large ones")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct HostArg {
    /// Host digraph in edge-list format; standard input when absent or `-`.
    #[arg(long, value_name = "FILE")]
    host: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PatternArg {
    /// Named pattern `kind:p1,p2,...`, e.g. `directed_cycle:3` or `transitive_tournament:3`.
    #[arg(long, value_name = "DESCRIPTOR")]
    pattern: Option<String>,
    /// Pattern digraph in edge-list format.
    #[arg(long, value_name = "FILE")]
    pattern_file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Smaller of the peeling and the source/sink reduction requirement.
    Auto,
    /// Arc peeling down to a spanning forest.
    Peel,
    /// Repeated deletion of 2-sources and 2-sinks.
    Reducible,
    /// Greedy embedding; the pattern must be an oriented forest.
    Forest,
}

#[derive(Subcommand)]
enum Command {
    /// Blocked oriented path starting at a given vertex.
    FindPath {
        /// Block lengths, alternating forward and backward, e.g. `2,1,2`.
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        blocks: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[command(flatten)]
        host: HostArg,
    },
    /// Cycle with two blocks of lengths k and 1, C(k,1).
    FindCycle {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        host: HostArg,
    },
    /// Cycle with two blocks, C(k1,k2).
    FindTwoBlock {
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        #[command(flatten)]
        host: HostArg,
    },
    /// Two (x,y)-dipaths plus a (y,x)-dipath, P(k1,k2;k3).
    FindTriple {
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        #[arg(long)]
        k3: usize,
        #[command(flatten)]
        host: HostArg,
    },
    /// Complete in-arborescence B(depth, branching).
    FindInarb {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        branching: usize,
        #[command(flatten)]
        host: HostArg,
    },
    /// Subdivision of an arbitrary pattern, driven by the dichromatic number.
    FindDic {
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[command(flatten)]
        host: HostArg,
    },
    /// Exact dichromatic number with a witness colouring, or a k-dicolouring.
    Dicolour {
        /// Ask for a dicolouring with at most this many classes instead.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        host: HostArg,
    },
    /// Check a certificate against a host.
    Verify {
        #[arg(long, value_name = "FILE")]
        cert: PathBuf,
        #[command(flatten)]
        host: HostArg,
    },
    /// Exhaustive search; small hosts only.
    Oracle {
        #[command(flatten)]
        pattern: PatternArg,
        /// Search nodes to expand before giving up.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        host: HostArg,
    },
    /// Generate a host digraph.
    Gen {
        /// Family and parameters, e.g. `exact_outdegree:100,9` or `gnp:12,0.5`.
        #[arg(long)]
        family: String,
        #[arg(long)]
        seed: u64,
    },
    /// Run a seeded experiment suite and print a table.
    #[command(after_help = EXPERIMENT_HELP)]
    Experiment {
        #[arg(long, value_enum, required_unless_present = "replay")]
        suite: Option<Suite>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Master seed.
        #[arg(long, required_unless_present = "replay")]
        seed: Option<u64>,
        /// Suite parameters; defaults depend on the suite.
        #[arg(long)]
        params: Option<String>,
        /// Host family without seed; defaults to out-regular hosts at the
        /// degree the construction needs.
        #[arg(long)]
        family: Option<String>,
        /// Rerun the trials recorded in an earlier table.
        #[arg(long, value_name = "FILE", conflicts_with_all = ["suite", "seed", "params", "family"])]
        replay: Option<PathBuf>,
        /// Record wall times (makes the table nondeterministic).
        #[arg(long)]
        timing: bool,
    },
}

/// Everything a run writes, plus its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

enum Answer {
    Text(String),
    /// Honest negative answer, printed as JSON with exit status 1.
    Refused(Value),
}

/// Parses `args` (including the program name) and runs the command, reading
/// standard input from `stdin` when a verb needs it.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(cli.command, stdin) {
        Ok(Answer::Text(stdout)) => Output { code: 0, stdout, stderr: String::new() },
        Ok(Answer::Refused(v)) => Output { code: 1, stdout: line(&v), stderr: String::new() },
        Err(e) if e.is_input_error() => Output {
            code: 2,
            stdout: String::new(),
            stderr: line(&json!({"status": "error", "reason": e.tag(), "message": e.to_string()})),
        },
        Err(e) => Output {
            code: 1,
            stdout: line(&json!({"status": "failure", "reason": e.tag(), "message": e.to_string()})),
            stderr: String::new(),
        },
    }
}

fn line(v: &Value) -> String {
    let mut s = v.to_string();
    s.push('\n');
    s
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn read_host(arg: &HostArg, stdin: &mut dyn Read) -> Result<Digraph> {
    let text = match &arg.host {
        Some(p) if p.as_os_str() != "-" => read_file(p)?,
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::InvalidArgument(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    Digraph::parse_edge_list(&text)
}

fn read_pattern(arg: &PatternArg) -> Result<PatternSpec> {
    match (&arg.pattern, &arg.pattern_file) {
        (Some(desc), _) => PatternSpec::from_descriptor(desc),
        (None, Some(path)) => {
            let d = Digraph::parse_edge_list(&read_file(path)?).map_err(|e| Error::InvalidPattern(e.to_string()))?;
            Ok(PatternSpec::custom(d))
        }
        (None, None) => Err(Error::InvalidArgument("a pattern is required".into())),
    }
}

fn certificate(found: Result<SubdivisionCertificate>) -> Result<Answer> {
    Ok(Answer::Text(found?.to_json()))
}

fn execute(command: Command, stdin: &mut dyn Read) -> Result<Answer> {
    // Options are checked before any host is read.
    match command {
        Command::FindPath { blocks, start, host } => {
            PatternSpec::blocked_path(&blocks)?;
            let d = read_host(&host, stdin)?;
            certificate(find_blocked_path(&d, start, &blocks))
        }
        Command::FindCycle { k, host } => {
            if k == 0 {
                return Err(Error::InvalidPattern("C(k,1) needs k >= 1".into()));
            }
            let d = read_host(&host, stdin)?;
            certificate(find_c_k_1(&d, k))
        }
        Command::FindTwoBlock { k1, k2, host } => {
            if k1 == 0 || k2 == 0 {
                return Err(Error::InvalidPattern("two-block cycle lengths must be positive".into()));
            }
            let d = read_host(&host, stdin)?;
            certificate(find_two_block_cycle(&d, k1, k2))
        }
        Command::FindTriple { k1, k2, k3, host } => {
            PatternSpec::triple_path(k1, k2, k3)?;
            let d = read_host(&host, stdin)?;
            certificate(find_triple_path(&d, k1, k2, k3))
        }
        Command::FindInarb { depth, branching, host } => {
            PatternSpec::branching(depth, branching)?;
            let d = read_host(&host, stdin)?;
            certificate(find_branching(&d, depth, branching))
        }
        Command::FindDic { pattern, method, host } => {
            let f = read_pattern(&pattern)?;
            if matches!(method, Method::Forest) && !f.is_oriented_forest() {
                return Err(Error::InvalidPattern("--method forest needs an oriented forest".into()));
            }
            let d = read_host(&host, stdin)?;
            certificate(match method {
                Method::Auto => find_subdivision_auto(&d, &f),
                Method::Peel => find_subdivision_dic(&d, &f),
                Method::Reducible => find_subdivision_reducible(&d, &f),
                Method::Forest => greedy_embed_forest(&d, &f),
            })
        }
        Command::Dicolour { k, host } => {
            let d = read_host(&host, stdin)?;
            let colouring = match k {
                None => dichromatic_number(&d)?,
                Some(k) => match dicolour_with(&d, k)? {
                    Some(c) => c,
                    None => {
                        return Ok(Answer::Refused(json!({
                            "status": "failure",
                            "reason": "not_found",
                            "message": format!("no dicolouring with {k} classes"),
                        })))
                    }
                },
            };
            Ok(Answer::Text(line(&json!({"k": colouring.k(), "classes": colouring.classes}))))
        }
        Command::Verify { cert, host } => {
            let text = read_file(&cert)?;
            let d = read_host(&host, stdin)?;
            let cert = SubdivisionCertificate::from_json(&text)?;
            let verdict = verify_subdivision(&d, &cert);
            let violations: Vec<Value> = verdict
                .violations
                .iter()
                .map(|v| json!({"kind": v.kind.to_string(), "arc": v.arc, "detail": v.detail}))
                .collect();
            if verdict.ok {
                Ok(Answer::Text(line(&json!({"status": "ok", "host_hash": cert.host_hash}))))
            } else {
                Ok(Answer::Refused(json!({"status": "rejected", "reason": "invalid_certificate", "violations": violations})))
            }
        }
        Command::Oracle { pattern, budget, host } => {
            let f = read_pattern(&pattern)?;
            let d = read_host(&host, stdin)?;
            match oracle_subdivision(&d, &f, budget)? {
                Some(cert) => Ok(Answer::Text(cert.to_json())),
                None => Ok(Answer::Refused(json!({
                    "status": "failure",
                    "reason": "not_found",
                    "message": "the host contains no subdivision of the pattern",
                }))),
            }
        }
        Command::Gen { family, seed } => {
            let spec: GenSpec = format!("{family}:{seed}").parse()?;
            let d = spec.generate()?;
            Ok(Answer::Text(format!("# genspec {spec}\n{}", d.to_edge_list())))
        }
        Command::Experiment { suite, trials, seed, params, family, replay, timing } => {
            let plan = match replay {
                Some(path) => experiment::replay(&read_file(&path)?)?,
                None => {
                    let (suite, seed) = suite.zip(seed).expect("clap enforces --suite and --seed");
                    experiment::plan(suite, trials, seed, params.as_deref(), family.as_deref())?
                }
            };
            Ok(Answer::Text(experiment::run(&plan, timing)?))
        }
    }
}
