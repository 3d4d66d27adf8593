//! Fold-assignment strategies: proportional random splitting, iterative pixel
//! stratification (IPS) and the Wasserstein-driven evolutionary search (WDES).

mod ips;
mod random;
mod wdes;

pub use ips::ips_split;
pub use random::random_split;
pub use wdes::{
    evolve_generation, swap_neighbors, wdes_split, EvolutionTrace, GaConfig, Individual,
};

pub(crate) use random::random_assignment;

use serde::{Deserialize, Serialize};

/// The available splitting strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Random,
    Ips,
    Wdes,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Random, Method::Ips, Method::Wdes];

    pub fn name(self) -> &'static str {
        match self {
            Method::Random => "random",
            Method::Ips => "ips",
            Method::Wdes => "wdes",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "random" => Ok(Method::Random),
            "ips" => Ok(Method::Ips),
            "wdes" => Ok(Method::Wdes),
            other => Err(format!("unknown method '{other}' (expected random, ips or wdes)")),
        }
    }
}

/// Runs `method` with the given spec; `ga` is only consulted for WDES.
pub fn split_with(
    method: Method,
    dataset: &crate::LabeledDataset,
    spec: &crate::SplitSpec,
    ga: &GaConfig,
) -> crate::Result<crate::FoldAssignment> {
    match method {
        Method::Random => random_split(dataset, spec),
        Method::Ips => ips_split(dataset, spec),
        Method::Wdes => wdes_split(dataset, spec, ga).map(|(a, _)| a),
    }
}
