//! Seeded experiment suites and their tab-separated tables.

use std::fmt::Write;
use std::time::Instant;

use clap::ValueEnum;
use digraph_subdiv::arborescence::{f_bound, find_branching};
use digraph_subdiv::dichromatic::find_subdivision_auto;
use digraph_subdiv::finders::{find_blocked_path, find_c_k_1, find_triple_path, find_two_block_cycle};
use digraph_subdiv::generate::{trial_seed, GenSpec};
use digraph_subdiv::{verify_subdivision, Error, PatternSpec, Result};

/// Column order of every experiment table.
pub const COLUMNS: [&str; 9] = ["suite", "trial", "genspec", "params", "n", "min_out_degree", "success", "verified", "millis"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Blocked oriented path from vertex 0; params are the block lengths.
    BlockedPath,
    /// C(k,1); params is k.
    CycleK1,
    /// C(k1,k2); params are k1,k2.
    TwoBlock,
    /// P(k1,k2;k3); params are k1,k2,k3.
    Triple,
    /// In-arborescence B(k,l); params are k,l.
    Inarb,
    /// Subdivision of a pattern in a dense random digraph; params is a
    /// pattern descriptor such as `directed_cycle:3`.
    Dic,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::BlockedPath => "blocked-path",
            Suite::CycleK1 => "cycle-k1",
            Suite::TwoBlock => "two-block",
            Suite::Triple => "triple",
            Suite::Inarb => "inarb",
            Suite::Dic => "dic",
        }
    }

    fn default_params(self) -> &'static str {
        match self {
            Suite::BlockedPath => "2,1,2",
            Suite::CycleK1 => "5",
            Suite::TwoBlock => "2,3",
            Suite::Triple => "2,2,2",
            Suite::Inarb => "2,2",
            Suite::Dic => "directed_cycle:3",
        }
    }

    /// Host family (descriptor without seed) used when none is given: out-regular
    /// hosts at exactly the degree the construction needs.
    pub fn default_family(self, params: &str) -> Result<String> {
        let job = Job::parse(self, params)?;
        let (n, d) = match job {
            Job::Path(ks) => (60, ks.iter().sum::<usize>().max(1)),
            Job::CycleK1(k) => (40, k),
            Job::TwoBlock(k1, k2) => (60, 2 * (k1 + k2) - 1),
            Job::Triple(k1, k2, k3) => (60, (3 * k1.max(k2) + 2 * k1.min(k2) + k3).saturating_sub(5).max(1)),
            Job::Inarb(k, l) => {
                let f = if k == 0 { 1 } else if l == 1 { k } else { usize::try_from(&f_bound(k, &l.into())?).unwrap_or(usize::MAX) };
                if f > 10_000 {
                    return Err(Error::InvalidArgument(format!(
                        "B({k},{l}) needs out-degree {f}; pass --family explicitly"
                    )));
                }
                (f.max(1) * 4 + 6, f.max(1))
            }
            Job::Dic(_) => return Ok("gnp:12,0.85".into()),
        };
        Ok(format!("exact_outdegree:{n},{d}"))
    }
}

enum Job {
    Path(Vec<usize>),
    CycleK1(usize),
    TwoBlock(usize, usize),
    Triple(usize, usize, usize),
    Inarb(usize, usize),
    Dic(PatternSpec),
}

impl Job {
    fn parse(suite: Suite, params: &str) -> Result<Job> {
        if suite == Suite::Dic {
            return Ok(Job::Dic(PatternSpec::from_descriptor(params)?));
        }
        let nums = params
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::InvalidArgument(format!("bad parameter `{p}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let arity = |k: usize| {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("suite {} takes {k} parameter(s)", suite.name())))
            }
        };
        // Build the pattern once so bad parameters are rejected up front.
        Ok(match suite {
            Suite::BlockedPath => {
                PatternSpec::blocked_path(&nums)?;
                Job::Path(nums)
            }
            Suite::CycleK1 => {
                arity(1)?;
                if nums[0] == 0 {
                    return Err(Error::InvalidPattern("C(k,1) needs k >= 1".into()));
                }
                Job::CycleK1(nums[0])
            }
            Suite::TwoBlock => {
                arity(2)?;
                if nums[0] == 0 || nums[1] == 0 {
                    return Err(Error::InvalidPattern("two-block cycle lengths must be positive".into()));
                }
                Job::TwoBlock(nums[0], nums[1])
            }
            Suite::Triple => {
                arity(3)?;
                PatternSpec::triple_path(nums[0], nums[1], nums[2])?;
                Job::Triple(nums[0], nums[1], nums[2])
            }
            Suite::Inarb => {
                arity(2)?;
                PatternSpec::branching(nums[0], nums[1])?;
                Job::Inarb(nums[0], nums[1])
            }
            Suite::Dic => unreachable!(),
        })
    }
}

/// One row of an experiment table, before formatting.
pub struct Trial {
    pub suite: Suite,
    pub index: usize,
    pub spec: GenSpec,
    pub params: String,
}

/// Trials of a fresh run: trial `i` uses the seed derived from `master` and `i`.
pub fn plan(suite: Suite, trials: usize, master: u64, params: Option<&str>, family: Option<&str>) -> Result<Vec<Trial>> {
    let params = params.unwrap_or(suite.default_params()).to_string();
    Job::parse(suite, &params)?;
    let family = match family {
        Some(f) => f.to_string(),
        None => suite.default_family(&params)?,
    };
    let base: GenSpec = format!("{family}:0").parse()?;
    Ok((0..trials)
        .map(|i| Trial { suite, index: i, spec: base.with_seed(trial_seed(master, i as u64)), params: params.clone() })
        .collect())
}

/// Trials recorded in an earlier table, read back from their descriptors.
pub fn replay(table: &str) -> Result<Vec<Trial>> {
    let mut out = Vec::new();
    for (no, line) in table.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') || line.starts_with("suite\t") {
            continue;
        }
        let err = |message: String| Error::Parse { line: no + 1, message };
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != COLUMNS.len() {
            return Err(err(format!("expected {} columns, found {}", COLUMNS.len(), cols.len())));
        }
        let suite = Suite::from_str(cols[0], false).map_err(|_| err(format!("unknown suite `{}`", cols[0])))?;
        let index = cols[1].parse().map_err(|e| err(format!("bad trial index: {e}")))?;
        let spec: GenSpec = cols[2].parse().map_err(|e: Error| err(e.to_string()))?;
        Job::parse(suite, cols[3]).map_err(|e| err(e.to_string()))?;
        out.push(Trial { suite, index, spec, params: cols[3].to_string() });
    }
    Ok(out)
}

/// Runs the trials and formats the table. Timings are nondeterministic, so
/// they are only recorded when asked for; otherwise the column holds `-`
/// and the table is a pure function of its descriptors.
pub fn run(trials: &[Trial], timing: bool) -> Result<String> {
    let mut table = COLUMNS.join("\t");
    table.push('\n');
    for t in trials {
        let host = t.spec.generate()?;
        let job = Job::parse(t.suite, &t.params)?;
        let start = Instant::now();
        let found = match &job {
            Job::Path(ks) => find_blocked_path(&host, 0, ks),
            Job::CycleK1(k) => find_c_k_1(&host, *k),
            Job::TwoBlock(k1, k2) => find_two_block_cycle(&host, *k1, *k2),
            Job::Triple(k1, k2, k3) => find_triple_path(&host, *k1, *k2, *k3),
            Job::Inarb(k, l) => find_branching(&host, *k, *l),
            Job::Dic(f) => find_subdivision_auto(&host, f),
        };
        let millis = start.elapsed().as_millis();
        let (success, verified) = match &found {
            Ok(cert) => ("true", if verify_subdivision(&host, cert).ok { "true" } else { "false" }),
            Err(_) => ("false", "-"),
        };
        let millis = if timing { millis.to_string() } else { "-".into() };
        let _ = writeln!(
            table,
            "{}\t{}\t{}\t{}\t{}\t{}\t{success}\t{verified}\t{millis}",
            t.suite.name(),
            t.index,
            t.spec,
            t.params,
            host.vertex_count(),
            host.min_out_degree(),
        );
    }
    Ok(table)
}
