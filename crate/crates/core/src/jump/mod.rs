//! Jumps of `x -> [x]_q` at rationals and the constants bounding their sums.

mod constants;
mod jumps;

pub use constants::{beta_root, h1_series, h2_continuant_series, h2_series, phi_series, BetaRoot, Bounded};
pub use jumps::{
    formal_total_jump, formal_total_jump_with_budget, jump_at, jump_numeric, jump_star, jump_symbolic,
    numeric_total_jump, telescoped_total_jump, words_up_to_weight, JumpMode, JumpRecord, JumpValue, TotalJumpReport,
    DEFAULT_ENUMERATION_BUDGET,
};
