//! Brute-force high-precision oracle for the certified sums.
//!
//! Everything here is evaluated at 256-bit precision (~77 decimal digits)
//! with direct ln(p*q) calls, deliberately sharing nothing with the f64
//! implementation path it checks: no prime-pair log splitting, no chunking,
//! no compensation.

// shared by several test binaries; not all of them use every helper
#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};

pub const PREC: usize = 256;
pub const RM: RoundingMode = RoundingMode::ToEven;

pub struct Oracle {
    cc: Consts,
}

impl Oracle {
    pub fn new() -> Self {
        Oracle { cc: Consts::new().expect("constants cache") }
    }

    /// 1/(a ln a), directly.
    pub fn term(&mut self, a: u64) -> BigFloat {
        let x = BigFloat::from_u64(a, PREC);
        let ln = x.ln(PREC, RM, &mut self.cc);
        BigFloat::from_u64(1, PREC).div(&x.mul(&ln, PREC, RM), PREC, RM)
    }

    /// Sum of term(p) over the primes <= bound (primes must be sorted).
    pub fn sum_primes(&mut self, primes: &[u64], bound: u64) -> BigFloat {
        let k = primes.partition_point(|&p| p <= bound);
        let mut s = BigFloat::from_u64(0, PREC);
        for &p in &primes[..k] {
            let t = self.term(p);
            s = s.add(&t, PREC, RM);
        }
        s
    }

    /// Pair-product sum over p, q <= bound. `ordered` doubles the p != q
    /// terms, `diag` includes the squares.
    pub fn sum_pairs(&mut self, primes: &[u64], bound: u64, diag: bool, ordered: bool) -> BigFloat {
        let k = primes.partition_point(|&p| p <= bound);
        let two = BigFloat::from_u64(2, PREC);
        let mut s = BigFloat::from_u64(0, PREC);
        for i in 0..k {
            for j in i..k {
                if i == j && !diag {
                    continue;
                }
                let mut t = self.term(primes[i] * primes[j]);
                if ordered && i != j {
                    t = t.mul(&two, PREC, RM);
                }
                s = s.add(&t, PREC, RM);
            }
        }
        s
    }

    /// Sum of term(a) over explicit elements.
    pub fn sum_elements(&mut self, elements: &[u64]) -> BigFloat {
        let mut s = BigFloat::from_u64(0, PREC);
        for &a in elements {
            let t = self.term(a);
            s = s.add(&t, PREC, RM);
        }
        s
    }
}

/// Assert |value - oracle| <= bound, comparing in high precision.
pub fn assert_within(value: f64, bound: f64, oracle: &BigFloat, what: &str) {
    let v = BigFloat::from_f64(value, PREC);
    let diff = v.sub(oracle, PREC, RM).abs();
    let b = BigFloat::from_f64(bound, PREC);
    assert!(
        diff <= b,
        "{what}: |{value} - {oracle}| = {diff} exceeds certified bound {bound:e}"
    );
}
