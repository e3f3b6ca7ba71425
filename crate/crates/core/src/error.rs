use thiserror::Error;

/// Errors shared across the crate. Numeric preconditions (discriminant shape,
/// primitivity, primality, squarefreeness) are validated at module
/// boundaries; internal invariant violations panic instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a negative discriminant (need D < 0 and D = 0 or 1 mod 4)")]
    BadDiscriminant(i64),

    #[error("form ({0}, {1}, {2}) is not positive definite")]
    NotPositiveDefinite(i64, i64, i64),

    #[error("form ({0}, {1}, {2}) is imprimitive")]
    ImprimitiveForm(i64, i64, i64),

    #[error("{0} is not prime")]
    NotPrime(i64),

    #[error("prime {p} is inert for discriminant {d}: chi_D(p) = -1")]
    InertPrime { p: i64, d: i64 },

    #[error("{0} is not squarefree")]
    NotSquarefree(i64),

    #[error("{0} is not positive")]
    NotPositive(i64),

    #[error("cyclic orders {0:?} do not form a divisibility chain")]
    NotInvariantFactors(Vec<u64>),

    #[error("group of order {order} exceeds the desk-scale limit {limit}")]
    GroupTooLarge { order: usize, limit: usize },

    #[error("subgroup lattice exceeds {0} subgroups; group is out of desk scale")]
    SubgroupLatticeTooLarge(usize),

    #[error(
        "measure fails the near-subgroup hypothesis at kappa = {kappa}: \
         ||mu*mu||_2 = {conv_l2}, (1 - kappa)||mu||_2 = {required}"
    )]
    ConvolutionHypothesis {
        kappa: f64,
        conv_l2: f64,
        required: f64,
    },

    #[error("no subgroup has order in the search window ({lo}, {hi})")]
    NoSubgroupInWindow { lo: f64, hi: f64 },

    #[error("middle coefficient of ({0}, {1}, {2}) is odd; the local criteria need 2 | b")]
    OddMiddleCoefficient(i64, i64, i64),

    #[error("gcd({m}, {d}) = {g} > 2; the local criteria need gcd(m, D) <= 2")]
    NotCoprimeEnough { m: i64, d: i64, g: i64 },

    #[error("memory budget exceeded: need about {need_mb} MiB, cap is {cap_mb} MiB (use segmented mode)")]
    MemoryBudget { need_mb: u64, cap_mb: u64 },

    #[error("{0}")]
    InvalidArgument(String),
}
