use serde::{Deserialize, Serialize};

/// Tunables shared by the comparison kernel and the witness search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Config {
    /// Exponents up to `2^exact_threshold_bits` are evaluated in exact rational arithmetic.
    pub exact_threshold_bits: u32,
    /// Skip the exact path entirely (used to test the directed-rounding path).
    pub force_directed: bool,
    /// Starting working precision of the directed-rounding path.
    pub start_precision_bits: u32,
    /// Finest dyadic grid `j / 2^m` scanned by the witness search.
    pub grid_depth: u32,
    /// Number of slack halvings tried per factored term in bounded evaluation.
    pub budget_halvings: u32,
    /// Largest cut level tried by the minimal cut search.
    pub max_cut_level: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            exact_threshold_bits: 16,
            force_directed: false,
            start_precision_bits: 128,
            grid_depth: 12,
            budget_halvings: 8,
            max_cut_level: 64,
        }
    }
}
