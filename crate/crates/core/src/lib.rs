//! Exact computation of `h_n(t)`, a Morris-type constant term that arises in
//! the Ehrhart polynomial `H_n(t)` of the Birkhoff polytope.
//!
//! The crate is organized by pipeline stage:
//!
//! - [`arith`]: rationals, dense polynomials, Γ at half-integers.
//! - [`morris`]: the Morris constant term through its Γ-product formula.
//! - [`oracle`]: brute-force constant-term extraction used as ground truth.
//! - [`recursion`]: synthesis of the linear recursion satisfied by `h_n(t)`.
//! - [`reconstruct`]: the explicit polynomial `h_n(t)` and its checks.
//! - [`genfun`]: the numerator `h*_n(y)` of the generating function.
//! - [`cli`]: command implementations, JSON output and the result cache.

pub mod arith;
pub mod cli;
pub mod error;
pub mod genfun;
pub mod morris;
pub mod oracle;
pub mod reconstruct;
pub mod recursion;
pub mod serde_rational;

pub use error::{Error, Result};

/// `N = floor((n-1)^2 / 4)`, the radius of the vanishing window of `h_n`.
pub fn window_radius(n: u32) -> i64 {
    let m = i64::from(n) - 1;
    m * m / 4
}
