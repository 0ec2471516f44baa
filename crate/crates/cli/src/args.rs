use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use sbmatch::graph::WeightMode;
use sbmatch::loadbalance::{BaselinePolicy, Capacity};

/// `--b` value: a uniform bound or `@path` to a per-vertex file.
#[derive(Debug, Clone, PartialEq)]
pub enum BArg {
    Uniform(i64),
    File(PathBuf),
}

impl FromStr for BArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.strip_prefix('@') {
            Some("") => Err("expected a path after `@`".into()),
            Some(path) => Ok(BArg::File(path.into())),
            None => s
                .parse()
                .map(BArg::Uniform)
                .map_err(|_| format!("expected an integer or @file, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightArg {
    Native,
    Random { lo: f64, hi: f64, mode: WeightMode },
}

impl FromStr for WeightArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "native" {
            return Ok(WeightArg::Native);
        }
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || format!("expected `native` or `random:lo:hi[:int]`, got {s:?}");
        if parts.len() < 3 || parts.len() > 4 || parts[0] != "random" {
            return Err(bad());
        }
        let lo: f64 = parts[1].parse().map_err(|_| bad())?;
        let hi: f64 = parts[2].parse().map_err(|_| bad())?;
        let mode = match parts.get(3) {
            None => WeightMode::Real,
            Some(&"int") => WeightMode::Integer,
            Some(_) => return Err(bad()),
        };
        Ok(WeightArg::Random { lo, hi, mode })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityArg(pub Capacity);

impl FromStr for CapacityArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(CapacityArg(Capacity::Auto)),
            "inf" => Ok(CapacityArg(Capacity::Unbounded)),
            _ => s
                .parse()
                .map(|c| CapacityArg(Capacity::Fixed(c)))
                .map_err(|_| format!("expected auto, inf or a non-negative integer, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Greedy,
    Lazy,
    Llg,
    Pllg,
}

impl From<AlgorithmArg> for sbmatch::run::Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        use sbmatch::run::Algorithm;
        match a {
            AlgorithmArg::Greedy => Algorithm::Greedy,
            AlgorithmArg::Lazy => Algorithm::Lazy,
            AlgorithmArg::Llg => Algorithm::Llg,
            AlgorithmArg::Pllg => Algorithm::Pllg,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum BaselineArg {
    None,
    RoundRobin,
    FirstFitCounter,
}

impl BaselineArg {
    pub fn policy(self) -> Option<BaselinePolicy> {
        match self {
            BaselineArg::None => None,
            BaselineArg::RoundRobin => Some(BaselinePolicy::RoundRobin),
            BaselineArg::FirstFitCounter => Some(BaselinePolicy::FirstFitCounter),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BaselineArg::None => "none",
            BaselineArg::RoundRobin => "round_robin",
            BaselineArg::FirstFitCounter => "first_fit_counter",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    G500,
    Ssca,
}

/// Graph, bounds and objective shared by `match` and `bench`.
#[derive(Debug, Args)]
pub struct Instance {
    /// Matrix Market input graph
    #[arg(long)]
    pub input: PathBuf,
    /// vertex bound: an integer, or @file with one integer per vertex
    #[arg(long, default_value = "1")]
    pub b: BArg,
    /// exponent of the concave objective, in [0, 1]
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// `native` keeps file weights; `random:lo:hi[:int]` redraws them
    #[arg(long, default_value = "random:1:5")]
    pub weights: WeightArg,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}
