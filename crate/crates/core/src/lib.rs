//! Dual-rail self-timed logic workbench.
//!
//! - [`boolean`]: functions, minimized covers, factoring, DSOP algebra.
//! - [`netlist`]: gate-level IR with dual-rail ports and a text format.
//! - [`synthesis`]: generators from functions to dual-rail netlists.
//! - [`analysis`]: unbounded-delay exploration of 4-phase return-to-zero
//!   handshakes with deadlock, orphan, monotonic-cover and indication checks.
//! - [`fixtures`]: the canned example circuits used by `adw reproduce`.

pub mod analysis;
pub mod boolean;
pub mod fixtures;
pub mod netlist;
pub mod synthesis;
