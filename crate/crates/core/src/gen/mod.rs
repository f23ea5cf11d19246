//! Seeded instance generators for the benchmark families and the
//! hardness constructions, each with its structural claim machine-checked
//! after generation.

mod geometric;
mod hardness;
mod planar;
mod trees;

pub use geometric::gen_random_geometric;
pub use hardness::{
    gen_fig3_family, gen_nae3sat, gen_star_plus, nae_satisfiable, parse_clauses, Clause,
    Fig3Instance, Lit, NaeInstance, StarPlusInstance,
};
pub use planar::{gen_planar, gen_series_parallel, is_planar_graph, is_series_parallel};
pub use trees::{gen_caterpillar, gen_random_tree, is_caterpillar, is_tree};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("invalid parameters: {0}")]
    Invalid(String),
}

/// A seeded request for one instance of a random family.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum InstanceSpec {
    RandomGeometric { n: usize, density: f64, seed: u64 },
    Caterpillar { n: usize, diameter: Option<usize>, seed: u64 },
    RandomTree { n: usize, seed: u64 },
    SeriesParallel { n: usize, density: f64, seed: u64 },
    Planar { n: usize, density: f64, seed: u64 },
    Fig3 { l: usize },
}

/// Output of [`InstanceSpec::generate`].
pub enum GeneratedInstance {
    Geometric(crate::GeometricGraph),
    Crossing(crate::CrossingGraph),
    Fig3(Fig3Instance),
}

impl InstanceSpec {
    pub fn generate(&self) -> Result<GeneratedInstance, GenError> {
        Ok(match *self {
            InstanceSpec::RandomGeometric { n, density, seed } => {
                GeneratedInstance::Geometric(gen_random_geometric(n, density, seed)?)
            }
            InstanceSpec::Caterpillar { n, diameter, seed } => {
                GeneratedInstance::Crossing(gen_caterpillar(n, diameter, seed)?)
            }
            InstanceSpec::RandomTree { n, seed } => {
                GeneratedInstance::Crossing(gen_random_tree(n, seed)?)
            }
            InstanceSpec::SeriesParallel { n, density, seed } => {
                GeneratedInstance::Crossing(gen_series_parallel(n, density, seed)?)
            }
            InstanceSpec::Planar { n, density, seed } => {
                GeneratedInstance::Crossing(gen_planar(n, density, seed)?)
            }
            InstanceSpec::Fig3 { l } => GeneratedInstance::Fig3(gen_fig3_family(l)?),
        })
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            InstanceSpec::RandomGeometric { .. } => "random-geometric",
            InstanceSpec::Caterpillar { .. } => "caterpillar",
            InstanceSpec::RandomTree { .. } => "random-tree",
            InstanceSpec::SeriesParallel { .. } => "series-parallel",
            InstanceSpec::Planar { .. } => "planar",
            InstanceSpec::Fig3 { .. } => "fig3-family",
        }
    }
}
