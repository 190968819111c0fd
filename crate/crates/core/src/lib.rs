//! Exact computation of the T-equivariant Gromov-Witten theory of the
//! Hilbert scheme of n points in the plane.
//!
//! Everything is computed over the field `Q(t1, t2)` of rational functions
//! in the two equivariant parameters, with truncated power series in the
//! degree variable `q` and the Givental variable `z` on top. No floating
//! point anywhere.
//!
//! The layers, bottom up:
//!
//! - [`algebra`]: arbitrary-precision rationals, sparse bivariate
//!   polynomials and rational functions, truncated series, matrices,
//!   Bernoulli data, rational reconstruction of series.
//! - [`partitions`]: integer partitions, Young-diagram statistics,
//!   fixed-point tangent weights, symmetric-group characters.
//! - [`fock`]: the Nakajima-basis Fock model of cohomology, the three
//!   pairings, and the divisor quantum-multiplication matrix.
//! - [`jack`]: Jack symmetric functions and the fixed-point basis.
//! - [`frobenius`]: eigenvalue/idempotent data of the small quantum ring
//!   as exact q-series, and the associated topological field theory.
//! - [`rmatrix`]: the order-by-order solution of the quantum differential
//!   equation for the R-matrix, anchored at q = 0 by closed Bernoulli
//!   forms, plus the independent series solutions.
//! - [`cohft`]: stable graphs, psi-class intersection numbers, and the
//!   graph-sum reconstruction of higher-genus invariants.
//! - [`crepant`]: the symmetric-product side's closed forms and the
//!   crepant-resolution comparison under -q = e^{iu}.
//! - [`selftest`]: the runnable acceptance suite shared by the test
//!   harness and the CLI.

pub mod algebra;
pub mod cohft;
pub mod crepant;
pub mod error;
pub mod fock;
pub mod frobenius;
pub mod jack;
pub mod partitions;
pub mod rmatrix;
pub mod selftest;

pub use algebra::{
    bernoulli_number, bernoulli_polynomial, rational_reconstruct, Mat, QRational, QSeries,
    Rational, Ring, Scalar, Series, ZMatrixSeries,
};
pub use error::Error;
pub use partitions::Partition;
