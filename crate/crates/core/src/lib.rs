//! Certified evaluation of Erdos sums F(S) = sum over a in S of 1/(a ln a),
//! built around one comparison: the prime-pair-product sum against the prime
//! sum at a threshold.
//!
//! A sequence of integers is *primitive* if no term divides another. The
//! Erdos sum of any primitive sequence converges and is bounded by e^gamma
//! (< 1.7811). The classical conjecture is that among primitive sequences
//! the primes maximize it; this crate evaluates both sides of that comparison
//! over explicit finite ranges with rigorous error bounds, checks primitivity
//! of the sequences involved, and searches for the threshold where the pair
//! sum overtakes the prime sum.
//!
//! The main pieces:
//!
//! * [`sieve`] -- segmented prime generation with precomputed logarithms.
//! * [`sum`] -- deterministic, parallel, compensated summation with
//!   certified error bounds, over primes, prime pairs and explicit
//!   sequences. Pair sums support two enumerations (ordered pairs vs
//!   distinct products) that differ materially; see the module docs.
//! * [`primitive`] -- primitivity validation with witness reporting, plus a
//!   structural certificate for the pair-products / high-primes construction.
//! * [`counterexample`] -- the verdict report, the crossover scan, and
//!   serialization.
//!
//! The `erdosum` binary wraps all of it for the command line.

pub mod counterexample;
pub mod error;
pub mod primitive;
pub mod sieve;
pub mod sum;

pub use counterexample::{
    crossover, tail_estimate, verify, verify_with_table, CounterexampleReport, CrossoverOutcome,
    CrossoverResult, HistorySample, CLARK_SUM_BOUND, ERDOS_SUM_BOUND,
};
pub use error::{Error, Result};
pub use primitive::{
    certificate_for_checked, certify_construction, check_primitive, read_sequence_file,
    CertificateKind, PrimitiveSequence, PrimitivityCertificate,
};
pub use sieve::{is_prime, sieve_primes, sieve_primes_with_segment, PrimeTable, SIEVE_CEILING};
pub use sum::{
    sum_primes, sum_primes_with, sum_semiprimes, sum_semiprimes_with, sum_sequence,
    sum_sequence_with, term, PairEnumeration, SumConfig, SumResult, DEFAULT_CHUNK_SIZE,
    MAX_PAIR_BOUND,
};
