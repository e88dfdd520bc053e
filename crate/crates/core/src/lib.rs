//! Shift graphs `G_{N,2}`, the critical core `W` of `G_{2^n+1,2}`, the
//! good-sequence calculus relating subset sequences to colorings, and exact
//! colorability engines used to check the structure of `W` mechanically.

pub mod chromatic;
pub mod diagram;
pub mod error;
pub mod goodseq;
pub mod shift;
pub mod verify;

pub use error::{Error, Result};
pub use shift::{critical_core, CriticalCore, InducedSubgraph, Interval, ShiftGraph, Vertex};
