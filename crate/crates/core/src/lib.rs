//! Exact computations over finite frames: step functions with rational
//! values, their cozero elements, prime-ideal cuts, and the lattice of
//! cozero parts. Every check is decided by exact arithmetic and finite
//! search; there are no tolerances anywhere.

pub mod corpus;
pub mod cozpart;
pub mod cuts;
pub mod lattice;
pub mod rational;
pub mod realfunc;
pub mod report;
pub mod verify;

#[cfg(test)]
pub(crate) mod testkit;

pub use cozpart::{CozError, CozPart};
pub use cuts::{CutDescription, CutError, PrimeIdeal};
pub use lattice::{Frame, FrameDoc, FrameElement, FrameId, LatticeError};
pub use rational::Rational;
pub use realfunc::{CutSide, FuncError, FunctionDoc, Idempotent, Op, StepFunction};
pub use report::PropertyReport;
pub use verify::{Suite, VerifyConfig, ALL_SUITES};
