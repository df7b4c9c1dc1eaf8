//! Experiment descriptions.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::domains::GoalCorner;
use crate::planners::PlannerConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Domain {
    Hanoi,
    NineRooms,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Hanoi => "hanoi",
            Domain::NineRooms => "nine_rooms",
        })
    }
}

impl FromStr for Domain {
    type Err = String;

    fn from_str(s: &str) -> Result<Domain, String> {
        match s {
            "hanoi" => Ok(Domain::Hanoi),
            "nine_rooms" | "nine-rooms" => Ok(Domain::NineRooms),
            other => Err(format!("unknown domain '{other}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Variant {
    Deterministic,
    Stochastic,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Deterministic => "det",
            Variant::Stochastic => "stoch",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Algorithm {
    Apmi,
    Aopmi,
    Oomi,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Apmi => "apmi",
            Algorithm::Aopmi => "aopmi",
            Algorithm::Oomi => "oomi",
        })
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Algorithm, String> {
        match s {
            "apmi" => Ok(Algorithm::Apmi),
            "aopmi" => Ok(Algorithm::Aopmi),
            "oomi" => Ok(Algorithm::Oomi),
            other => Err(format!("unknown algorithm '{other}'")),
        }
    }
}

/// One experiment: a domain instance plus the algorithm and its settings.
#[derive(Clone, Debug)]
pub struct RunSpec {
    pub domain: Domain,
    /// Disc count (Hanoi) or hierarchy level (Nine Rooms).
    pub size: usize,
    pub variant: Variant,
    /// Slip probability; `None` uses the benchmark defaults (0.4 for Hanoi,
    /// 0.05 for Nine Rooms). Ignored for deterministic runs.
    pub slip: Option<f64>,
    pub algorithm: Algorithm,
    pub config: PlannerConfig,
    /// Subgoal proportionality constant; `None` uses the domain default.
    pub subgoal_k: Option<f64>,
    pub goal_corner: GoalCorner,
    /// Seed for the Monte-Carlo checks in `verify`; planning ignores it.
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl RunSpec {
    pub fn new(domain: Domain, size: usize, variant: Variant, algorithm: Algorithm) -> RunSpec {
        RunSpec {
            domain,
            size,
            variant,
            slip: None,
            algorithm,
            config: PlannerConfig::default(),
            subgoal_k: None,
            goal_corner: GoalCorner::default(),
            seed: 0,
            out: None,
        }
    }

    pub fn with_eps(mut self, eps: f64) -> RunSpec {
        self.config.eps = eps;
        self
    }

    pub fn effective_slip(&self) -> f64 {
        match self.variant {
            Variant::Deterministic => 0.0,
            Variant::Stochastic => self.slip.unwrap_or(match self.domain {
                Domain::Hanoi => 0.4,
                Domain::NineRooms => 0.05,
            }),
        }
    }

    /// Sort key for order-stable report assembly.
    pub fn sort_key(&self) -> (Domain, Variant, usize, Algorithm) {
        (self.domain, self.variant, self.size, self.algorithm)
    }
}
