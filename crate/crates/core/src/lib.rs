//! Exact-arithmetic toolkit for zero-error information theory.
//!
//! * [`exact_num`]: rationals, computable reals and budgeted sign tests.
//! * [`graph`]: strong products, independence number, clique cover.
//! * [`channel`]: DMCs, confusability graphs, zero-error codes.
//! * [`bounds`]: certified intervals for `Θ(G)` and `C0(W)`, threshold
//!   semi-decision.
//! * [`ahlswede`]: DMC / 0-1 AVC / graph constructions and the `C_max = 0`
//!   test.
//! * [`avc`]: symmetrizability and the average-error capacity of 0-1 AVCs.
//! * [`formats`]: JSON documents for channels, graphs and AVCs.

pub mod ahlswede;
pub mod avc;
mod bitset;
pub mod bounds;
pub mod channel;
pub mod exact_num;
pub mod formats;
pub mod graph;
pub mod limits;

pub use ahlswede::{avc_to_dmc, cmax_is_zero, dmc_to_avc, graph_to_channel, ZeroOneAvc};
pub use bounds::{c0_bounds, semidecide_c0_above, semidecide_theta_above, theta_bounds, BoundInterval};
pub use channel::{confusability_graph, is_useless, max_zero_error_code, ApproxChannel, Channel, ZeroErrorCode};
pub use exact_num::{real_from_rational, sign_negative, sign_positive, specker_real, ApproxReal, Rational, StepPredicate, Verdict};
pub use graph::{clique_cover_number, independence_number, is_complete, strong_power, strong_product, Graph};
pub use limits::Limits;
