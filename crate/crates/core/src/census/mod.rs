//! Desk-scale counting machinery.
//!
//! The census pipeline has four layers.  [`SieveTables`] precompute
//! smallest prime factors, squarefree flags, primes and their character
//! values up to a bound.  [`RepresentationBitmaps`] record, bit per
//! integer, which reduced forms represent each n — exact ground truth
//! obtained by enumerating lattice points of each form's ellipse.  [`li`]
//! supplies the logarithmic integral that normalizes prime counts.  The
//! experiments combine the three into observed-versus-predicted reports
//! ([`CensusReport`]) whose CSV output is bit-identical across thread
//! counts, runtime column aside.
//!
//! Memory is budgeted before any large allocation (default 4 GiB, override
//! with `GENUSLAB_MEM_MB`); counts beyond the budget go through the
//! segmented variants.

mod bitmaps;
mod experiments;
mod li;
mod tables;

pub use bitmaps::{u_f, u_f_segmented, RepresentationBitmaps};
pub use experiments::{
    corollary4_count, exceptional_count, ideal_count, is_exceptional, k_factor_histogram,
    lemma3_count, lemma4_count, lemma5_count, prime_class_histogram,
    shifted_prime_exceptional_count, split_reciprocal_sum, u_f_report, CensusReport, CensusRow,
    PrimeClassHistogram, DELTA_GRID,
};
pub use li::li;
pub use tables::{build_tables, SieveTables};
