//! Numerical toolkit for the simultaneous (classical, quantum) capacity region
//! of finite-dimensional quantum channels.
//!
//! The crate is layered: [`qcore`] holds dense density-operator linear algebra,
//! [`channel`] represents channels by Kraus operators, [`infoquant`] evaluates
//! entropic quantities of ensembles sent through a channel and [`region`]
//! optimises over ensembles to trace out the trade-off curve.

pub mod channel;
pub mod error;
pub mod infoquant;
pub mod optim;
pub mod qcore;
pub mod region;

pub use error::{Error, Result};
