//! C ABI for the erdosum library.
//!
//! Conventions: opaque handles for the prime table, status codes for every
//! fallible call, results written through out-pointers. All functions are
//! panic-safe (a caught panic reports `ERDOSUM_STATUS_INTERNAL_ERROR`).
//! The generated header lives at `include/erdosum.h`.

use erdosum::{PairEnumeration, PrimeTable, SumConfig};
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErdosumStatus {
    Ok = 0,
    NullPointer = 1,
    /// A precondition on the arguments was violated (bound or threshold too
    /// small, term below 2, zero stride, ...).
    DomainError = 2,
    /// A query exceeded the table limit.
    OutOfRange = 3,
    /// The request exceeds a capacity ceiling (sieve limit, pair products).
    CapacityError = 4,
    /// The sequence is not primitive; the witness out-parameters are filled.
    NotPrimitive = 5,
    IoError = 6,
    /// A table cache failed validation, or a path was not valid UTF-8.
    InvalidInput = 7,
    InternalError = 8,
}

/// Opaque prime table handle. Create with `erdosum_table_new` or
/// `erdosum_table_load`, release with `erdosum_table_free`.
pub struct ErdosumTable(PrimeTable);

/// A certified partial sum.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct ErdosumSumResult {
    pub value: f64,
    pub error_bound: f64,
    pub term_count: u64,
}

/// The verification verdict for one threshold.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct ErdosumReport {
    pub threshold: u64,
    /// Nonzero when pairs were enumerated as ordered pairs (p != q twice).
    pub ordered_pairs: bool,
    pub includes_prime_squares: bool,
    pub semiprime_sum: ErdosumSumResult,
    pub prime_sum: ErdosumSumResult,
    pub margin: f64,
    pub certified: bool,
    pub erdos_bound: f64,
    pub clark_bound: f64,
}

fn status_of(e: &erdosum::Error) -> ErdosumStatus {
    use erdosum::Error::*;
    match e {
        SieveCapacity { .. } | PairCapacity { .. } => ErdosumStatus::CapacityError,
        OutOfRange { .. } => ErdosumStatus::OutOfRange,
        TermDomain { .. } | BoundTooSmall { .. } | ThresholdTooSmall { .. }
        | TailDomain { .. } | ElementTooSmall { .. } | ZeroStride => ErdosumStatus::DomainError,
        NotPrimitive { .. } => ErdosumStatus::NotPrimitive,
        Io(_) => ErdosumStatus::IoError,
        InvalidCache { .. } | ParseSequence { .. } => ErdosumStatus::InvalidInput,
    }
}

fn guarded(f: impl FnOnce() -> ErdosumStatus) -> ErdosumStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(ErdosumStatus::InternalError)
}

fn config(include_prime_squares: bool, ordered_pairs: bool, chunk_size: u64) -> SumConfig {
    SumConfig {
        chunk_size: if chunk_size == 0 {
            erdosum::DEFAULT_CHUNK_SIZE
        } else {
            chunk_size as usize
        },
        include_prime_squares,
        enumeration: if ordered_pairs {
            PairEnumeration::OrderedPairs
        } else {
            PairEnumeration::DistinctProducts
        },
    }
}

fn sum_out(r: erdosum::SumResult) -> ErdosumSumResult {
    ErdosumSumResult {
        value: r.value,
        error_bound: r.error_bound,
        term_count: r.term_count,
    }
}

unsafe fn path_arg(ptr: *const c_char) -> Result<&'static Path, ErdosumStatus> {
    if ptr.is_null() {
        return Err(ErdosumStatus::NullPointer);
    }
    match CStr::from_ptr(ptr).to_str() {
        Ok(s) => Ok(Path::new(s)),
        Err(_) => Err(ErdosumStatus::InvalidInput),
    }
}

/// Sieve all primes up to `limit` and return an owned table handle.
///
/// # Safety
/// `out` must be a valid pointer. On `Ok` it receives a table that must be
/// released with `erdosum_table_free`.
#[no_mangle]
pub unsafe extern "C" fn erdosum_table_new(
    limit: u64,
    out: *mut *mut ErdosumTable,
) -> ErdosumStatus {
    if out.is_null() {
        return ErdosumStatus::NullPointer;
    }
    guarded(|| match erdosum::sieve_primes(limit) {
        Ok(t) => {
            *out = Box::into_raw(Box::new(ErdosumTable(t)));
            ErdosumStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Load a table from a binary cache file written by `erdosum_table_save`.
///
/// # Safety
/// `path` must be a NUL-terminated string, `out` a valid pointer; see
/// `erdosum_table_new` for ownership.
#[no_mangle]
pub unsafe extern "C" fn erdosum_table_load(
    path: *const c_char,
    out: *mut *mut ErdosumTable,
) -> ErdosumStatus {
    if out.is_null() {
        return ErdosumStatus::NullPointer;
    }
    let path = match path_arg(path) {
        Ok(p) => p,
        Err(s) => return s,
    };
    guarded(|| match PrimeTable::load_cache(path) {
        Ok(t) => {
            *out = Box::into_raw(Box::new(ErdosumTable(t)));
            ErdosumStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Write the table as a binary cache file.
///
/// # Safety
/// `table` must be a live handle, `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn erdosum_table_save(
    table: *const ErdosumTable,
    path: *const c_char,
) -> ErdosumStatus {
    if table.is_null() {
        return ErdosumStatus::NullPointer;
    }
    let path = match path_arg(path) {
        Ok(p) => p,
        Err(s) => return s,
    };
    guarded(|| match (*table).0.save_cache(path) {
        Ok(()) => ErdosumStatus::Ok,
        Err(e) => status_of(&e),
    })
}

/// Release a table handle. A null pointer is ignored.
///
/// # Safety
/// `table` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn erdosum_table_free(table: *mut ErdosumTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Inclusive limit the table was sieved to; 0 for a null handle.
///
/// # Safety
/// `table` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn erdosum_table_limit(table: *const ErdosumTable) -> u64 {
    if table.is_null() {
        return 0;
    }
    (*table).0.limit()
}

/// pi(x): number of primes <= x in the table.
///
/// # Safety
/// `table` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn erdosum_prime_count(
    table: *const ErdosumTable,
    x: u64,
    out: *mut u64,
) -> ErdosumStatus {
    if table.is_null() || out.is_null() {
        return ErdosumStatus::NullPointer;
    }
    guarded(|| match (*table).0.prime_count(x) {
        Ok(n) => {
            *out = n;
            ErdosumStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// The summand 1/(a ln a); requires a >= 2.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn erdosum_term(a: u64, out: *mut f64) -> ErdosumStatus {
    if out.is_null() {
        return ErdosumStatus::NullPointer;
    }
    guarded(|| match erdosum::term(a) {
        Ok(t) => {
            *out = t;
            ErdosumStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Certified Erdos sum over primes <= bound.
///
/// # Safety
/// `table` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn erdosum_sum_primes(
    table: *const ErdosumTable,
    bound: u64,
    out: *mut ErdosumSumResult,
) -> ErdosumStatus {
    if table.is_null() || out.is_null() {
        return ErdosumStatus::NullPointer;
    }
    guarded(|| match erdosum::sum_primes(&(*table).0, bound) {
        Ok(r) => {
            *out = sum_out(r);
            ErdosumStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Certified pair-product Erdos sum over p, q <= bound.
///
/// `ordered_pairs` selects the enumeration (see the library docs); products
/// with p != q count twice when it is set. `chunk_size` of 0 means default.
///
/// # Safety
/// `table` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn erdosum_sum_semiprimes(
    table: *const ErdosumTable,
    bound: u64,
    include_prime_squares: bool,
    ordered_pairs: bool,
    chunk_size: u64,
    out: *mut ErdosumSumResult,
) -> ErdosumStatus {
    if table.is_null() || out.is_null() {
        return ErdosumStatus::NullPointer;
    }
    let cfg = config(include_prime_squares, ordered_pairs, chunk_size);
    guarded(|| match erdosum::sum_semiprimes_with(&(*table).0, bound, &cfg) {
        Ok(r) => {
            *out = sum_out(r);
            ErdosumStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Compare the pair sum against the prime sum at `threshold`; `certified` in
/// the report means the margin strictly exceeds both error bounds combined.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn erdosum_verify(
    threshold: u64,
    include_prime_squares: bool,
    ordered_pairs: bool,
    out: *mut ErdosumReport,
) -> ErdosumStatus {
    if out.is_null() {
        return ErdosumStatus::NullPointer;
    }
    let cfg = config(include_prime_squares, ordered_pairs, 0);
    guarded(|| match erdosum::verify(threshold, &cfg) {
        Ok(r) => {
            *out = ErdosumReport {
                threshold: r.threshold,
                ordered_pairs,
                includes_prime_squares: r.includes_prime_squares,
                semiprime_sum: sum_out(r.semiprime_sum),
                prime_sum: sum_out(r.prime_sum),
                margin: r.margin,
                certified: r.certified,
                erdos_bound: r.erdos_bound,
                clark_bound: r.clark_bound,
            };
            ErdosumStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Heuristic tail estimate 1/ln(x) for the prime sum beyond x. NON-RIGOROUS:
/// context only, never part of a certified quantity. Requires x >= 3.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn erdosum_tail_estimate(x: u64, out: *mut f64) -> ErdosumStatus {
    if out.is_null() {
        return ErdosumStatus::NullPointer;
    }
    guarded(|| match erdosum::tail_estimate(x) {
        Ok(t) => {
            *out = t;
            ErdosumStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Check that no element divides another. Returns `Ok` for a primitive
/// sequence; on `NotPrimitive` the witness pair (a divides b) is written to
/// `witness_a` / `witness_b` when those pointers are non-null.
///
/// # Safety
/// `elements` must point to `len` readable u64 values (null only if len is 0).
#[no_mangle]
pub unsafe extern "C" fn erdosum_check_primitive(
    elements: *const u64,
    len: usize,
    witness_a: *mut u64,
    witness_b: *mut u64,
) -> ErdosumStatus {
    if elements.is_null() && len != 0 {
        return ErdosumStatus::NullPointer;
    }
    let slice = if len == 0 {
        &[][..]
    } else {
        std::slice::from_raw_parts(elements, len)
    };
    guarded(|| match erdosum::check_primitive(slice.to_vec()) {
        Ok(_) => ErdosumStatus::Ok,
        Err(erdosum::Error::NotPrimitive { a, b }) => {
            if !witness_a.is_null() {
                *witness_a = a;
            }
            if !witness_b.is_null() {
                *witness_b = b;
            }
            ErdosumStatus::NotPrimitive
        }
        Err(e) => status_of(&e),
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn erdosum_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
