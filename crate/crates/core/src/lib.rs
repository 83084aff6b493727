//! Exact symbolic solver for systems of homogeneous linear partial
//! differential equations with constant coefficients.
//!
//! A system is encoded as a submodule M ⊆ R^k of a free module over the
//! polynomial ring R = ℚ[x1..xn], each generator column reading x_i as the
//! operator ∂/∂z_i.  The engine computes a differential primary
//! decomposition of M: the associated primes of R^k/M together with, for
//! each prime P, a finite set of Noetherian multipliers — vectors of
//! polynomials B(x, z) such that the functions B(x, z)·exp(xᵗz), for x on
//! the variety of P, span the local solution space.  Every distributional
//! solution of the system is an integral superposition of these kernels.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals,
//! residue fields of primes are realized symbolically, and returned
//! multipliers are re-verified against the module by applying them as
//! differential operators before anything is reported.

pub mod assoc;
pub mod cli;
pub mod duality;
pub mod error;
pub mod factor;
pub mod frobenius;
pub mod gcd;
pub mod groebner;
pub mod json;
pub mod linalg;
pub mod modops;
pub mod net;
pub mod render;
pub mod field;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod residue;
pub mod resolution;
pub mod solver;

pub use error::{Error, Result};
