//! Exact verification of R-matrix identities, L-operators on evaluation
//! modules, Gauss decompositions and the Drinfeld-type relations of the
//! quantum affine algebra of type C.
//!
//! Everything is exact: rational functions in `q` (or a pinned rational
//! `q`) and in the spectral parameter, with identities in several
//! variables certified on evaluation grids.

pub mod field;
pub mod drinfeld;
pub mod gauss;
pub mod rep;
pub mod report;
pub mod rmatrix;
pub mod suite;
pub mod tensor;

use field::{GridPolicy, QMode};
use std::collections::BTreeMap;

/// Settings shared by every check.
#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub mode: QMode,
    /// Negative control: each suite breaks one ingredient.
    pub perturb: bool,
    /// Truncation order for series and mode windows.
    pub trunc: usize,
    pub policy: GridPolicy,
    /// Shuffles the default evaluation parameters; 0 keeps them sorted.
    pub seed: u64,
    /// Explicit evaluation parameters overriding the defaults.
    pub eval_params: Option<Vec<field::Scalar>>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { mode: QMode::Symbolic, perturb: false, trunc: 4, policy: GridPolicy::default(), seed: 0, eval_params: None }
    }
}

impl CheckOptions {
    pub fn with_mode(mut self, mode: QMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_trunc(mut self, k: usize) -> Self {
        self.trunc = k;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_eval_params(mut self, params: Vec<field::Scalar>) -> Self {
        self.eval_params = Some(params);
        self
    }

    pub fn perturbed(mut self) -> Self {
        self.perturb = true;
        self
    }

    /// Report parameters common to all suites.
    pub fn params(&self) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        p.insert("q-mode".into(), self.mode.label());
        p.insert("trunc".into(), self.trunc.to_string());
        p.insert("seed".into(), self.seed.to_string());
        if self.perturb {
            p.insert("perturb".into(), "true".into());
        }
        p
    }
}
