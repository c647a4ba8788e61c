//! Caps and budgets shared by the enumeration-heavy operations.

use serde::{Deserialize, Serialize};

pub const DEFAULT_ORDER_CAP: usize = 128;
pub const DEFAULT_CLOSURE_CAP: usize = 5040;
pub const DEFAULT_DEGREE_CAP: usize = 2;
/// Degrees above this are refused even when the configured cap is raised.
pub const HARD_DEGREE_CAP: usize = 3;
/// Bound on `|G|ⁿ⁺¹·rank(A)`, the number of rows in the largest differential.
pub const DEFAULT_SIZE_BUDGET: usize = 1 << 22;
pub const DEFAULT_ENDOMORPHISM_CAP: u64 = 81;
pub const DEFAULT_LATTICE_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub order_cap: usize,
    pub closure_cap: usize,
    pub degree_cap: usize,
    pub size_budget: usize,
    pub endomorphism_cap: u64,
    pub lattice_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            order_cap: DEFAULT_ORDER_CAP,
            closure_cap: DEFAULT_CLOSURE_CAP,
            degree_cap: DEFAULT_DEGREE_CAP,
            size_budget: DEFAULT_SIZE_BUDGET,
            endomorphism_cap: DEFAULT_ENDOMORPHISM_CAP,
            lattice_cap: DEFAULT_LATTICE_CAP,
        }
    }
}

impl Limits {
    /// Defaults overridden by `COHOMOFORGE_ORDER_CAP`, `COHOMOFORGE_CLOSURE_CAP`,
    /// `COHOMOFORGE_DEGREE_CAP`, `COHOMOFORGE_SIZE_BUDGET`,
    /// `COHOMOFORGE_ENDOMORPHISM_CAP` and `COHOMOFORGE_LATTICE_CAP`.
    pub fn from_env() -> Self {
        fn var<T: std::str::FromStr>(name: &str, default: T) -> T {
            std::env::var(name)
                .ok()
                .and_then(|v| v.trim().parse().ok())
                .unwrap_or(default)
        }
        let d = Limits::default();
        Limits {
            order_cap: var("COHOMOFORGE_ORDER_CAP", d.order_cap),
            closure_cap: var("COHOMOFORGE_CLOSURE_CAP", d.closure_cap),
            degree_cap: var("COHOMOFORGE_DEGREE_CAP", d.degree_cap),
            size_budget: var("COHOMOFORGE_SIZE_BUDGET", d.size_budget),
            endomorphism_cap: var("COHOMOFORGE_ENDOMORPHISM_CAP", d.endomorphism_cap),
            lattice_cap: var("COHOMOFORGE_LATTICE_CAP", d.lattice_cap),
        }
    }
}
