//! Resource limits shared by the evaluator and the command line.

use crate::canon::CanonBudget;
use crate::error::{Error, Result};
use crate::ring::{DEFAULT_FACTOR_BUDGET, DEFAULT_PRODUCT_BUDGET};
use crate::simplicial::DEFAULT_SIMPLEX_BUDGET;
use crate::spectral::{DEFAULT_EIGEN_BUDGET, DEFAULT_INVERSE_BUDGET};
use crate::topology::DEFAULT_LINALG_BUDGET;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Simplices produced by any clique enumeration.
    pub simplices: usize,
    /// Cells handed to exact rank computations.
    pub linalg: usize,
    /// Cells of a connection matrix to invert exactly.
    pub inverse: usize,
    /// Dimension of a floating eigensolve.
    pub eigen: usize,
    /// Search nodes for canonical labeling.
    pub canon: usize,
    /// Candidate products examined by a factor search.
    pub factor: usize,
    /// Vertices of any product graph.
    pub product: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            simplices: DEFAULT_SIMPLEX_BUDGET,
            linalg: DEFAULT_LINALG_BUDGET,
            inverse: DEFAULT_INVERSE_BUDGET,
            eigen: DEFAULT_EIGEN_BUDGET,
            canon: CanonBudget::default().max_nodes,
            factor: DEFAULT_FACTOR_BUDGET,
            product: DEFAULT_PRODUCT_BUDGET,
        }
    }
}

impl Budgets {
    /// Applies overrides written as `key=value` pairs separated by commas,
    /// e.g. `simplices=5000,linalg=800`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("budget override {item:?} is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("budget value {value:?} is not a count")))?;
            let slot = match key.trim() {
                "simplices" => &mut self.simplices,
                "linalg" => &mut self.linalg,
                "inverse" => &mut self.inverse,
                "eigen" => &mut self.eigen,
                "canon" => &mut self.canon,
                "factor" => &mut self.factor,
                "product" => &mut self.product,
                other => return Err(Error::Invalid(format!("unknown budget {other:?}"))),
            };
            *slot = value;
        }
        Ok(self)
    }

    pub fn canon_budget(&self) -> CanonBudget {
        CanonBudget { max_nodes: self.canon }
    }
}
