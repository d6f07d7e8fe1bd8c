//! Mod-2 cohomology of the Lie algebras `L_k` of polynomial vector fields on
//! the line.
//!
//! `L_k` is spanned by `e_i = t^{i+1} d/dt` for `i >= k`, with bracket
//! `[e_a, e_b] = (b - a) e_{a+b}`. Over the two-element field its
//! Chevalley-Eilenberg complex splits into finite graded slices `C^q_(n)`,
//! and this crate provides:
//!
//! * [`partitions`]: the partition combinatorics that index the bases
//!   (regular, dense and special partitions, canonical decompositions,
//!   leading parts, marked partitions and their order).
//! * [`gf2`]: bit-packed linear algebra over GF(2).
//! * [`complex`]: cochains, the wedge product, the coboundary `δ_k`, the
//!   boundary `d`, the `e_r`-action and memoized graded slices.
//! * [`monomials`]: e-monomials, ε-monomials and the generator cocycles.
//! * [`cohomology`]: brute-force cohomology, class coordinates, cup
//!   products and the dimension formulas as checkable predictions.
//! * [`conjecture`]: the bigraded exterior algebra on `E, X_i, Y_i` and the
//!   evidence scans around its presentation of `H*(L_1)`.
//! * [`verify`]: suites that run every check over configurable ranges.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod cohomology;
pub mod complex;
pub mod conjecture;
pub mod error;
pub mod gf2;
pub mod monomials;
pub mod partitions;
pub mod report;
pub mod verify;

pub use cohomology::{Class, Cohomology, CohomologyBasis, Engine, Poincare};
pub use complex::{Cochain, Complex, GradedSlice, Monomial};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
pub use monomials::{EMonomial, EpsMonomial};
pub use partitions::{KContext, MarkedPartition, Partition};
pub use report::CheckReport;
