//! Workbench for the arithmetic of positive definite binary quadratic forms
//! at desk scale: class groups under Gauss composition, subset-sum growth in
//! finite abelian groups, genus-level local representation criteria with the
//! half-dimensional sieve constants, and counting censuses that compare
//! observed counts against the analytic predictions.
//!
//! Layout:
//! - [`qforms`]: forms, reduction, composition, class-group enumeration, the
//!   discriminant character, and prime-to-class assignment.
//! - [`grouptheory`]: subset sums `s(A)`, greedy growth transcripts, the
//!   three-alternative classifier, and additive-combinatorics diagnostics
//!   (additive energy, Kneser check, near-subgroup witnesses).
//! - [`genus`]: genus partitions via the square subgroup, assigned
//!   characters, the class set representing a squarefree integer, the local
//!   criteria table, and the sieve constants `C0`, `theta`, `Omega_D`.
//! - [`census`]: sieve tables, representation bitmaps, and the counting
//!   experiments (exceptional integers, primes by class, shifted primes,
//!   almost-prime counts, ideal counts).

pub mod census;
pub mod genus;
pub mod grouptheory;
pub mod primes;
pub mod qforms;

mod error;
mod numeric;

pub use error::Error;
pub use qforms::{ClassGroup, ClassIndex, Discriminant, QuadForm, ReducedForm};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
