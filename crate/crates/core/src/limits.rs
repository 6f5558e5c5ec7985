//! Guardrail caps for the exponential searches.

use std::env;

pub const PRODUCT_CAP_ENV: &str = "ZEROCAP_PRODUCT_CAP";
pub const STATE_CAP_ENV: &str = "ZEROCAP_STATE_CAP";
pub const ENUM_CAP_ENV: &str = "ZEROCAP_ENUM_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum vertex count of a strong product.
    pub product_cap: usize,
    /// Maximum vertex count for the exact clique cover search.
    pub clique_cover_cap: usize,
    /// Maximum number of input words enumerated by code searches.
    pub enum_cap: usize,
    /// Maximum number of states produced by `dmc_to_avc`.
    pub state_cap: usize,
    /// Maximum state-set size for the enumerative symmetrizability test.
    pub symmetrizer_enum_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            product_cap: 10_000,
            clique_cover_cap: 64,
            enum_cap: 1_000_000,
            state_cap: 10_000,
            symmetrizer_enum_states: 16,
        }
    }
}

impl Limits {
    /// Defaults overridden by `ZEROCAP_PRODUCT_CAP`, `ZEROCAP_STATE_CAP` and
    /// `ZEROCAP_ENUM_CAP` when they hold positive integers.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        let read = |name: &str| {
            env::var(name)
                .ok()
                .and_then(|v| v.trim().parse::<usize>().ok())
                .filter(|&v| v > 0)
        };
        if let Some(v) = read(PRODUCT_CAP_ENV) {
            limits.product_cap = v;
        }
        if let Some(v) = read(STATE_CAP_ENV) {
            limits.state_cap = v;
        }
        if let Some(v) = read(ENUM_CAP_ENV) {
            limits.enum_cap = v;
        }
        limits
    }
}
