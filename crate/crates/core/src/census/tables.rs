//! Shared sieve tables: smallest prime factors, squarefree mask, prime list
//! and per-prime character values, built once per (X, D) and read by every
//! counting experiment.

use crate::qforms::kronecker;
use crate::{Discriminant, Error, Result};

/// Memory cap in MiB for sieve tables and representation bitmaps, read from
/// GENUSLAB_MEM_MB (default 4096).
pub(crate) fn memory_cap_mb() -> u64 {
    std::env::var("GENUSLAB_MEM_MB")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(4096)
}

pub(crate) fn charge_memory(bytes: u64) -> Result<()> {
    let need_mb = bytes.div_ceil(1 << 20);
    let cap_mb = memory_cap_mb();
    if need_mb > cap_mb {
        return Err(Error::MemoryBudget { need_mb, cap_mb });
    }
    Ok(())
}

/// Immutable sieve tables over [1, X] for an active discriminant D.
pub struct SieveTables {
    limit: u64,
    d: i64,
    // spf[n] = least prime dividing n (0 for n ≤ 1); u32 suffices for the
    // desk-scale X ≤ 2·10⁸.
    spf: Vec<u32>,
    squarefree: Vec<u64>,
    primes: Vec<u64>,
    chi: Vec<i8>,
}

/// Builds the tables: spf by least-prime sieve, squarefree mask by clearing
/// p² strides, primes from the spf fixpoints, χ_D per prime.
pub fn build_tables(x: u64, d: i64) -> Result<SieveTables> {
    Discriminant::new(d)?;
    if x < 2 {
        return Err(Error::InvalidArgument(format!("table limit {x} below 2")));
    }
    if x > u32::MAX as u64 {
        return Err(Error::InvalidArgument(format!("table limit {x} exceeds the u32 spf range")));
    }
    // spf 4(X+1) bytes, mask (X+1)/8, prime list ≈ 9X/ln X.
    charge_memory(4 * (x + 1) + (x + 1) / 8 + (9.3 * x as f64 / (x as f64).ln()) as u64)?;

    let n = (x + 1) as usize;
    let mut spf = vec![0u32; n];
    for i in 2..n {
        if spf[i] == 0 {
            for j in (i..n).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
            }
        }
    }
    let mut squarefree = vec![u64::MAX; n.div_ceil(64)];
    squarefree[0] &= !1; // 0 is not squarefree
    let mut p = 2u64;
    while p * p <= x {
        if spf[p as usize] == p as u32 {
            let mut j = p * p;
            while j <= x {
                squarefree[(j / 64) as usize] &= !(1 << (j % 64));
                j += p * p;
            }
        }
        p += 1;
    }
    let primes: Vec<u64> = (2..n).filter(|&i| spf[i] == i as u32).map(|i| i as u64).collect();
    let chi: Vec<i8> = primes.iter().map(|&p| kronecker(d, p as i64) as i8).collect();
    Ok(SieveTables { limit: x, d, spf, squarefree, primes, chi })
}

impl SieveTables {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn disc(&self) -> i64 {
        self.d
    }

    /// Least prime factor of n (n ≥ 2).
    pub fn spf(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    pub fn is_squarefree(&self, n: u64) -> bool {
        self.squarefree[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// χ_D of the i-th prime, aligned with [`primes`](Self::primes).
    pub fn chi(&self) -> &[i8] {
        &self.chi
    }

    /// Distinct prime factors of n ≤ X via the spf chain.
    pub fn distinct_primes(&self, mut n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        out
    }
}
