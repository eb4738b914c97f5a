//! Certified evaluation of Erdos sums F(S) = sum over a in S of 1/(a ln a).
//!
//! Every sum is evaluated with per-chunk compensated (Kahan-Babuska)
//! accumulation over fixed-size index chunks, followed by an exact-order
//! pairwise reduction of the chunk results. The chunk decomposition depends
//! only on the configured chunk size, never on the number of worker threads,
//! so results are bit-identical for any thread count.
//!
//! Alongside each value a rigorous error bound is tracked:
//!
//!   error <= sum over terms of (2 ulp(term) + term * 2 eps)   [rounding + log]
//!          + 2 eps * sum of |terms| per chunk                  [compensated accumulation]
//!          + ceil(log2 chunks) * eps * total                   [pairwise reduction]
//!
//! all rounded up. Since every term is positive, sum |t| is the chunk sum
//! itself; the bound works out to a few units of eps * value, around 1e-15
//! for the sums this crate certifies -- many orders below the margins that
//! get compared against it.
//!
//! # Pair enumeration
//!
//! The prime-pair sum supports two enumerations of the products p*q with
//! p, q <= bound:
//!
//! * [`PairEnumeration::OrderedPairs`] (default): every ordered pair (p, q)
//!   contributes, i.e. each product with p != q is counted twice. Evaluated
//!   over the triangle p <= q with off-diagonal weight 2, which is what the
//!   reported term count refers to: k(k+1)/2 evaluations for k = pi(bound).
//! * [`PairEnumeration::DistinctProducts`]: each distinct product pq
//!   contributes exactly once -- the Erdos sum of the semiprime *set*.
//!
//! The two differ materially (the off-diagonal mass doubles), so reports
//! always record which enumeration produced a number.

use crate::error::{Error, Result};
use crate::primitive::PrimitiveSequence;
use crate::sieve::PrimeTable;
use rayon::prelude::*;
use serde::Serialize;

/// Default number of pair indices per accumulation chunk.
pub const DEFAULT_CHUNK_SIZE: usize = 1 << 20;

/// Largest bound for which bound^2 fits in 64-bit integer arithmetic.
pub const MAX_PAIR_BOUND: u64 = u32::MAX as u64;

/// Per-term error budget in units of eps * term: 2 ulp for the arithmetic
/// (multiply, divide, conversion) plus 2 ulp for the stored logarithms.
const TERM_ERR_ULPS: f64 = 4.0;

/// Accumulation budget in units of eps * chunk sum. Kahan-Babuska-Neumaier
/// summation of n terms is off by at most (2 eps + O(n eps^2)) * sum |t|;
/// 4 eps covers that with slack for the bound arithmetic itself.
const ACCUM_ERR_ULPS: f64 = 4.0;

/// A certified partial sum: the computed value, a rigorous bound on
/// |value - exact|, and the number of summand evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumResult {
    pub value: f64,
    pub error_bound: f64,
    pub term_count: u64,
}

impl SumResult {
    fn empty() -> Self {
        SumResult { value: 0.0, error_bound: 0.0, term_count: 0 }
    }
}

/// How prime pairs (p, q) are enumerated in the pair-product sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairEnumeration {
    /// All ordered pairs: products with p != q count twice.
    OrderedPairs,
    /// Each distinct product pq counts once (the semiprime set sum).
    DistinctProducts,
}

impl PairEnumeration {
    pub fn label(self) -> &'static str {
        match self {
            PairEnumeration::OrderedPairs => "ordered-pairs",
            PairEnumeration::DistinctProducts => "distinct-products",
        }
    }
}

/// Tuning and enumeration options shared by the summation operations.
#[derive(Debug, Clone, Copy)]
pub struct SumConfig {
    /// Pair indices per accumulation chunk. Changing it changes the exact
    /// floating-point result (never beyond the error bounds); keeping it
    /// fixed makes results independent of thread count.
    pub chunk_size: usize,
    /// Whether the diagonal p = q (prime squares) is included.
    pub include_prime_squares: bool,
    pub enumeration: PairEnumeration,
}

impl Default for SumConfig {
    fn default() -> Self {
        SumConfig {
            chunk_size: DEFAULT_CHUNK_SIZE,
            include_prime_squares: true,
            enumeration: PairEnumeration::OrderedPairs,
        }
    }
}

/// The summand 1/(a ln a), correctly rounded to within a couple of ulp.
///
/// a = 1 is rejected: ln 1 = 0, and 1 divides everything anyway, so it can
/// never sit in a primitive sequence next to another term.
pub fn term(a: u64) -> Result<f64> {
    if a < 2 {
        return Err(Error::TermDomain { a });
    }
    let x = a as f64;
    Ok(1.0 / (x * x.ln()))
}

/// Certified sum of term(p) over all primes p <= bound.
pub fn sum_primes(table: &PrimeTable, bound: u64) -> Result<SumResult> {
    sum_primes_with(table, bound, &SumConfig::default())
}

pub fn sum_primes_with(table: &PrimeTable, bound: u64, cfg: &SumConfig) -> Result<SumResult> {
    if bound < 2 {
        return Err(Error::BoundTooSmall { bound });
    }
    if bound > table.limit() {
        return Err(Error::OutOfRange { x: bound, limit: table.limit() });
    }
    let count = table.prime_count(bound)? as usize;
    let primes = &table.primes()[..count];
    let logs = &table.logs()[..count];

    let chunk = cfg.chunk_size.max(1);
    let n_chunks = count.div_ceil(chunk);
    let chunks: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk;
            let hi = (lo + chunk).min(count);
            let mut acc = Kbn::default();
            for i in lo..hi {
                acc.add(1.0 / (primes[i] as f64 * logs[i]));
            }
            let s = acc.value();
            (s, chunk_error(s))
        })
        .collect();

    let (value, error_bound) = reduce_chunks(&chunks);
    Ok(SumResult { value, error_bound, term_count: count as u64 })
}

/// Certified sum of term(p*q) over prime pairs with p, q <= bound.
///
/// Uses the default configuration: ordered-pair enumeration with the
/// diagonal included. See the module docs for what that means.
pub fn sum_semiprimes(table: &PrimeTable, bound: u64) -> Result<SumResult> {
    sum_semiprimes_with(table, bound, &SumConfig::default())
}

pub fn sum_semiprimes_with(table: &PrimeTable, bound: u64, cfg: &SumConfig) -> Result<SumResult> {
    if bound < 2 {
        return Err(Error::BoundTooSmall { bound });
    }
    if bound > MAX_PAIR_BOUND {
        return Err(Error::PairCapacity { bound, max: MAX_PAIR_BOUND });
    }
    if bound > table.limit() {
        return Err(Error::OutOfRange { x: bound, limit: table.limit() });
    }
    let count = table.prime_count(bound)? as usize;
    let primes = &table.primes()[..count];
    let logs = &table.logs()[..count];

    let k = count as u64;
    let diag = cfg.include_prime_squares;
    let total = triangle_count(k, diag);
    if total == 0 {
        return Ok(SumResult::empty());
    }

    let chunk = cfg.chunk_size.max(1) as u64;
    let n_chunks = total.div_ceil(chunk);
    let chunks: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk;
            let hi = (lo + chunk).min(total);
            pair_chunk(primes, logs, lo, hi, diag, cfg.enumeration)
        })
        .collect();

    let (value, error_bound) = reduce_chunks(&chunks);
    Ok(SumResult { value, error_bound, term_count: total })
}

/// Certified sum of term(a) over an explicit validated sequence.
pub fn sum_sequence(seq: &PrimitiveSequence) -> SumResult {
    sum_sequence_with(seq, &SumConfig::default())
}

pub fn sum_sequence_with(seq: &PrimitiveSequence, cfg: &SumConfig) -> SumResult {
    let elems = seq.elements();
    if elems.is_empty() {
        return SumResult::empty();
    }
    let chunk = cfg.chunk_size.max(1);
    let n_chunks = elems.len().div_ceil(chunk);
    let chunks: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk;
            let hi = (lo + chunk).min(elems.len());
            let mut acc = Kbn::default();
            for &a in &elems[lo..hi] {
                let x = a as f64;
                acc.add(1.0 / (x * x.ln()));
            }
            let s = acc.value();
            (s, chunk_error(s))
        })
        .collect();
    let (value, error_bound) = reduce_chunks(&chunks);
    SumResult { value, error_bound, term_count: elems.len() as u64 }
}

/// Sum of one pair-sum row: all pairs (p_j, p_row) with j <= row (j < row if
/// the diagonal is excluded), chunked deterministically. Returns
/// (value, error bound, evaluations). Used by the incremental crossover scan.
pub(crate) fn pair_row_sum(
    primes: &[u64],
    logs: &[f64],
    row: usize,
    diag: bool,
    enumeration: PairEnumeration,
    chunk_size: usize,
) -> (f64, f64, u64) {
    let cols = if diag { row + 1 } else { row };
    if cols == 0 {
        return (0.0, 0.0, 0);
    }
    let chunk = chunk_size.max(1);
    let n_chunks = cols.div_ceil(chunk);
    let p = primes[row] as f64;
    let lp = logs[row];
    let w = match enumeration {
        PairEnumeration::OrderedPairs => 2.0,
        PairEnumeration::DistinctProducts => 1.0,
    };

    let one_chunk = |lo: usize, hi: usize| -> (f64, f64) {
        let mut acc = Kbn::default();
        for j in lo..hi.min(row) {
            acc.add(w / ((p * primes[j] as f64) * (lp + logs[j])));
        }
        if diag && hi > row {
            // the diagonal entry (p, p) always has weight 1
            acc.add(1.0 / ((p * p) * (lp + lp)));
        }
        let s = acc.value();
        (s, chunk_error(s))
    };

    let chunks: Vec<(f64, f64)> = if n_chunks == 1 {
        vec![one_chunk(0, cols)]
    } else {
        (0..n_chunks)
            .into_par_iter()
            .map(|c| one_chunk(c * chunk, ((c + 1) * chunk).min(cols)))
            .collect()
    };
    let (value, err) = reduce_chunks(&chunks);
    (value, err, cols as u64)
}

/// Number of triangle positions for k primes.
fn triangle_count(k: u64, diag: bool) -> u64 {
    if diag {
        k * (k + 1) / 2
    } else {
        k * (k - 1) / 2
    }
}

/// Flat index of the first pair in row i (pairs are laid out row-major over
/// the triangle, a single 64-bit counter across the whole sum).
/// i*k - i*(i-1)/2 resp. i*k - i*(i+1)/2, factored to avoid underflow at i = 0.
fn row_offset(i: u64, k: u64, diag: bool) -> u64 {
    if diag {
        i * (2 * k - i + 1) / 2
    } else {
        i * (2 * k - i - 1) / 2
    }
}

/// Largest row whose offset is <= idx.
fn row_of(idx: u64, k: u64, diag: bool) -> u64 {
    let mut lo = 0u64;
    let mut hi = k;
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if row_offset(mid, k, diag) <= idx {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Accumulate the pairs with flat indices in [lo, hi).
fn pair_chunk(
    primes: &[u64],
    logs: &[f64],
    lo: u64,
    hi: u64,
    diag: bool,
    enumeration: PairEnumeration,
) -> (f64, f64) {
    let k = primes.len() as u64;
    let w = match enumeration {
        PairEnumeration::OrderedPairs => 2.0,
        PairEnumeration::DistinctProducts => 1.0,
    };
    let mut acc = Kbn::default();
    let mut idx = lo;
    let mut i = row_of(lo, k, diag);
    while idx < hi {
        let row_start = row_offset(i, k, diag);
        let row_end = row_offset(i + 1, k, diag);
        let first_col = if diag { i } else { i + 1 };
        let j0 = (first_col + (idx - row_start)) as usize;
        let j1 = (first_col + (hi.min(row_end) - row_start)) as usize;

        let p = primes[i as usize] as f64;
        let lp = logs[i as usize];
        let mut j = j0;
        if diag && j == i as usize && j < j1 {
            acc.add(1.0 / ((p * p) * (lp + lp)));
            j += 1;
        }
        // hot loop: no transcendental calls, ln(pq) comes from the table
        for jj in j..j1 {
            acc.add(w / ((p * primes[jj] as f64) * (lp + logs[jj])));
        }

        idx = hi.min(row_end);
        i += 1;
    }
    let s = acc.value();
    (s, chunk_error(s))
}

/// Kahan-Babuska (Neumaier) compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct Kbn {
    sum: f64,
    c: f64,
}

impl Kbn {
    #[inline]
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// Rigorous error bound contributed by one chunk with the given (positive) sum.
#[inline]
fn chunk_error(chunk_sum: f64) -> f64 {
    (TERM_ERR_ULPS + ACCUM_ERR_ULPS) * f64::EPSILON * chunk_sum
}

/// Fixed-structure pairwise reduction of chunk values plus the combined
/// error bound (chunk bounds, plus the reduction's own rounding).
fn reduce_chunks(chunks: &[(f64, f64)]) -> (f64, f64) {
    if chunks.is_empty() {
        return (0.0, 0.0);
    }
    let values: Vec<f64> = chunks.iter().map(|&(v, _)| v).collect();
    let value = pairwise_sum(&values);
    let chunk_err: f64 = chunks.iter().map(|&(_, e)| e).sum();
    let depth = usize::BITS - (chunks.len() - 1).leading_zeros(); // ceil(log2 n)
    let reduce_err = (depth as f64 + 1.0) * f64::EPSILON * value.abs();
    // rounded up: absorb the rounding of the bound arithmetic itself
    let error_bound = (chunk_err + reduce_err) * (1.0 + 1e-9);
    (value, error_bound)
}

/// Sum with a fixed binary-tree association, independent of thread count.
fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}
