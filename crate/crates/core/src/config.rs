use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use strata_algebra::GroebnerLimits;

use crate::error::{CoreError, Result};
use crate::reduction::DEFAULT_BUDGET;

/// Resource caps and plumbing shared by the pipeline stages.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    pub max_degree: u32,
    pub max_basis: usize,
    pub max_reductions: usize,
    /// Reduction step budget.
    pub budget: usize,
    /// Reference circuits tried before a presentation is declared undecided.
    pub max_circuits: usize,
    pub workers: usize,
    pub cache: Option<PathBuf>,
    pub catalogs: Vec<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        let g = GroebnerLimits::default();
        Config {
            max_degree: g.max_degree,
            max_basis: g.max_basis,
            max_reductions: g.max_reductions,
            budget: DEFAULT_BUDGET,
            max_circuits: 8,
            workers: 1,
            cache: None,
            catalogs: Vec::new(),
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        let caps = [self.max_degree as usize, self.max_basis, self.max_reductions, self.budget, self.max_circuits];
        if caps.contains(&0) {
            return Err(CoreError::Input("resource caps must be positive".into()));
        }
        if self.workers == 0 {
            return Err(CoreError::Input("worker count must be at least 1".into()));
        }
        Ok(())
    }

    pub fn limits(&self) -> GroebnerLimits {
        GroebnerLimits { max_basis: self.max_basis, max_degree: self.max_degree, max_reductions: self.max_reductions }
    }
}
