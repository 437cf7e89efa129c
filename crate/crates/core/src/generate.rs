//! Seeded instance generators. A [`GenSpec`] prints as the one-line
//! descriptor `family:params:seed` and parses back to the same value.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{families, Digraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Every vertex gets `d` uniformly random out-neighbours, then every
    /// other arc is added with probability `p`.
    RandomMinOutdegree { n: usize, d: usize, p: f64 },
    ExactOutdegree { n: usize, d: usize },
    RandomTournament { n: usize },
    BidirectedComplete { n: usize },
    TransitiveTournament { n: usize },
    /// Each ordered pair is an arc independently with probability `p`.
    Gnp { n: usize, p: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub family: Family,
    pub seed: u64,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(bad(format!("probability {p} outside [0,1]")))
    }
}

impl GenSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        GenSpec { family, seed }
    }

    pub fn generate(&self) -> Result<Digraph> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        match self.family {
            Family::RandomMinOutdegree { n, d, p } => {
                check_probability(p)?;
                let base = out_regular(n, d, &mut rng)?;
                if p == 0.0 {
                    return Ok(base);
                }
                let mut arcs: Vec<(usize, usize)> = base.arcs().collect();
                for u in 0..n {
                    for v in 0..n {
                        if u != v && !base.has_arc(u, v) && rng.gen_bool(p) {
                            arcs.push((u, v));
                        }
                    }
                }
                Digraph::new(n, arcs)
            }
            Family::ExactOutdegree { n, d } => out_regular(n, d, &mut rng),
            Family::RandomTournament { n } => {
                let mut arcs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
                for u in 0..n {
                    for v in u + 1..n {
                        arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
                    }
                }
                Digraph::new(n, arcs)
            }
            Family::BidirectedComplete { n } => Ok(families::complete_digraph(n)),
            Family::TransitiveTournament { n } => Ok(families::transitive_tournament(n)),
            Family::Gnp { n, p } => {
                check_probability(p)?;
                let mut arcs = Vec::new();
                for u in 0..n {
                    for v in 0..n {
                        if u != v && rng.gen_bool(p) {
                            arcs.push((u, v));
                        }
                    }
                }
                Digraph::new(n, arcs)
            }
        }
    }

    /// Derives a reproducible per-trial spec from a master seed.
    pub fn with_seed(&self, seed: u64) -> Self {
        GenSpec { family: self.family.clone(), seed }
    }
}

fn out_regular(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Result<Digraph> {
    if d >= n.max(1) {
        return Err(bad(format!("out-degree {d} impossible on {n} vertices")));
    }
    let mut arcs = Vec::with_capacity(n * d);
    for u in 0..n {
        for i in sample(rng, n - 1, d).into_iter() {
            arcs.push((u, if i < u { i } else { i + 1 }));
        }
    }
    Digraph::new(n, arcs)
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::RandomMinOutdegree { n, d, p } if p == 0.0 => write!(f, "random_min_outdegree:{n},{d}")?,
            Family::RandomMinOutdegree { n, d, p } => write!(f, "random_min_outdegree:{n},{d},{p}")?,
            Family::ExactOutdegree { n, d } => write!(f, "exact_outdegree:{n},{d}")?,
            Family::RandomTournament { n } => write!(f, "random_tournament:{n}")?,
            Family::BidirectedComplete { n } => write!(f, "bidirected_complete:{n}")?,
            Family::TransitiveTournament { n } => write!(f, "transitive_tournament:{n}")?,
            Family::Gnp { n, p } => write!(f, "gnp:{n},{p}")?,
        }
        write!(f, ":{}", self.seed)
    }
}

impl FromStr for GenSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let [name, params, seed] = parts[..] else {
            return Err(bad(format!("descriptor `{s}` is not family:params:seed")));
        };
        let seed: u64 = seed.parse().map_err(|e| bad(format!("bad seed `{seed}`: {e}")))?;
        let fields: Vec<&str> = params.split(',').map(str::trim).collect();
        let int = |i: usize| -> Result<usize> {
            let f = fields.get(i).ok_or_else(|| bad(format!("{name} needs more parameters")))?;
            f.parse().map_err(|e| bad(format!("bad parameter `{f}`: {e}")))
        };
        let float = |i: usize| -> Result<f64> {
            let f = fields.get(i).ok_or_else(|| bad(format!("{name} needs more parameters")))?;
            f.parse().map_err(|e| bad(format!("bad parameter `{f}`: {e}")))
        };
        let arity = |k: &[usize]| -> Result<()> {
            if k.contains(&fields.len()) {
                Ok(())
            } else {
                Err(bad(format!("{name} takes {k:?} parameters, got {}", fields.len())))
            }
        };
        let family = match name {
            "random_min_outdegree" => {
                arity(&[2, 3])?;
                let p = if fields.len() == 3 { float(2)? } else { 0.0 };
                Family::RandomMinOutdegree { n: int(0)?, d: int(1)?, p }
            }
            "exact_outdegree" => {
                arity(&[2])?;
                Family::ExactOutdegree { n: int(0)?, d: int(1)? }
            }
            "random_tournament" => {
                arity(&[1])?;
                Family::RandomTournament { n: int(0)? }
            }
            "bidirected_complete" => {
                arity(&[1])?;
                Family::BidirectedComplete { n: int(0)? }
            }
            "transitive_tournament" => {
                arity(&[1])?;
                Family::TransitiveTournament { n: int(0)? }
            }
            "gnp" => {
                arity(&[2])?;
                Family::Gnp { n: int(0)?, p: float(1)? }
            }
            other => return Err(bad(format!("unknown family `{other}`"))),
        };
        Ok(GenSpec { family, seed })
    }
}

/// Seed of trial `index` under a master seed (splitmix64 step).
pub fn trial_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
