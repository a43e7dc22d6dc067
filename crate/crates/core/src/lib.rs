//! Numerical certification toolkit for the coefficient inequality
//! `|A_n(a, b, w)| <= A_n(a, b, 1)` of `(1 + w z)^a (1 - z)^(-b)`, odd `n`.
//!
//! The crate is `no_std` (with `alloc`). Everything is pure binary64
//! arithmetic on top of `libm`, so results are reproducible bit for bit
//! across runs and worker counts.
//!
//! Layout, bottom up:
//!
//! * [`specfun`]: gamma, incomplete gamma, Pochhammer, principal powers, `R(s, phi)`.
//! * [`quad`]: tanh-sinh quadrature with algebraic endpoint handling.
//! * [`coeffs`]: the coefficients `A_n`, the scaled hypergeometric `w_n` and
//!   their Laplace representation.
//! * [`kernels`]: Watson-expansion coefficients and remainder kernels with
//!   their boundary limits.
//! * [`bounds`]: `H`, its decomposition, the lower bound `P_n` and the
//!   monotonicity functions `J`, `F1`, `F2`.
//! * [`minimize`]: deterministic grid-plus-refinement box minimization and
//!   the headline infima.
//! * [`verify`]: end-to-end identity and inequality suites.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounds;
pub mod coeffs;
pub mod constants;
mod error;
pub mod exec;
pub mod kernels;
pub mod minimize;
mod point;
pub mod quad;
pub mod rng;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use exec::{Executor, Sequential};
pub use point::ParameterPoint;
