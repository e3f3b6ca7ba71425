//! Compensated floating-point accumulation shared by the Euler-product and
//! census sums.

use rayon::prelude::*;

/// Kahan-compensated accumulator: adding many near-cancelling terms keeps
/// the error at one ulp of the running sum instead of growing with the
/// term count.
#[derive(Clone, Copy, Default)]
pub(crate) struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    pub(crate) fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(self) -> f64 {
        self.sum
    }
}

// Fixed block width for parallel reduction; the blocks are combined in
// index order, so thread count never changes the result.
const SUM_BLOCK: usize = 4096;

/// Σ term(v) over a slice, compensated within fixed blocks and across the
/// ordered block results; bit-identical under any parallelism.
pub(crate) fn blocked_sum(values: &[u64], term: impl Fn(u64) -> f64 + Sync) -> f64 {
    let partials: Vec<f64> = values
        .par_chunks(SUM_BLOCK)
        .map(|block| {
            let mut acc = Compensated::default();
            for &v in block {
                acc.add(term(v));
            }
            acc.value()
        })
        .collect();
    let mut total = Compensated::default();
    for s in partials {
        total.add(s);
    }
    total.value()
}
