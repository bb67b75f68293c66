//! C interface to `genfactor`.
//!
//! Instances and factors cross the boundary as opaque handles created by
//! `gf_*_parse` (or a generator) and released with the matching `*_free`.
//! Every fallible call returns a [`GfStatus`]; on anything other than
//! `GF_STATUS_OK` a message is available from [`gf_last_error`] on the same
//! thread. Strings returned by the library are freed with
//! [`gf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use genfactor::egcc::{check_consistency_with, parse_model, Consistency};
use genfactor::gadgets::selection_gadget;
use genfactor::{Budget, Decision, DegreeList, EdgeWeighting, Error, FastPath, Instance, SolveOptions};

/// A parsed instance.
pub struct GfInstance(Instance);

/// An edge weighting, typically a factor of some instance.
pub struct GfFactor(EdgeWeighting);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Structural = 4,
    Precondition = 5,
    Budget = 6,
    Model = 7,
    Input = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfDecision {
    No = 0,
    Yes = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfFastPath {
    Auto = 0,
    On = 1,
    Off = 2,
}

/// Solver settings. Pass NULL to `gf_solve` for the defaults: automatic
/// fast path, one worker, stop at the first witness.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GfSolveOptions {
    pub fast_path: GfFastPath,
    /// Worker threads; 0 is treated as 1.
    pub workers: u32,
    /// Keep exploring after a witness is found so the counters cover the
    /// whole search.
    pub count_all: bool,
}

/// Counters reported by `gf_solve`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct GfSolveStats {
    pub k: u64,
    pub modules_found: u64,
    pub contracted_edge_count: u64,
    pub x_subsets_explored: u64,
    pub forests_explored: u64,
    pub forest_solves: u64,
    pub fast_path: bool,
    pub rejected_early: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GfStatus {
    match e {
        Error::Parse { .. } => GfStatus::Parse,
        Error::Structural(_) => GfStatus::Structural,
        Error::Precondition(_) => GfStatus::Precondition,
        Error::Budget { .. } => GfStatus::Budget,
        Error::Model(_) => GfStatus::Model,
        Error::Input(_) => GfStatus::Input,
    }
}

struct Failure(GfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(GfStatus::NullArgument, format!("{what} is NULL"))
}

/// Runs `body`, turning errors and panics into a status and a stored message.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> GfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => GfStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            GfStatus::Panic
        }
    }
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(GfStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn write_decision(d: Decision, decision: *mut GfDecision, witness: *mut *mut GfFactor) {
    if !witness.is_null() {
        *witness = ptr::null_mut();
    }
    match d {
        Decision::Yes(phi) => {
            *decision = GfDecision::Yes;
            if !witness.is_null() {
                *witness = Box::into_raw(Box::new(GfFactor(phi)));
            }
        }
        Decision::No => *decision = GfDecision::No,
    }
}

/// Message for the last failed call on this thread, or NULL if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an instance from its text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gf_instance_parse(text: *const c_char, out: *mut *mut GfInstance) -> GfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let inst = genfactor::parse_instance(c_str(text, "text")?)?;
        *out = Box::into_raw(Box::new(GfInstance(inst)));
        Ok(())
    })
}

/// # Safety
/// `inst` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf_instance_free(inst: *mut GfInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Canonical text of the instance, or NULL if `inst` is NULL. Free with
/// `gf_string_free`.
///
/// # Safety
/// `inst` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_instance_serialize(inst: *const GfInstance) -> *mut c_char {
    match inst.as_ref() {
        Some(i) => into_c_string(genfactor::serialize_instance(&i.0)),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `inst` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_instance_num_u(inst: *const GfInstance) -> u32 {
    inst.as_ref().map_or(0, |i| i.0.num_u() as u32)
}

/// # Safety
/// `inst` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_instance_num_v(inst: *const GfInstance) -> u32 {
    inst.as_ref().map_or(0, |i| i.0.num_v() as u32)
}

/// # Safety
/// `inst` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_instance_num_edges(inst: *const GfInstance) -> u32 {
    inst.as_ref().map_or(0, |i| i.0.edges().len() as u32)
}

/// Parses a factor from its text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gf_factor_parse(text: *const c_char, out: *mut *mut GfFactor) -> GfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let phi = genfactor::parse_factor(c_str(text, "text")?)?;
        *out = Box::into_raw(Box::new(GfFactor(phi)));
        Ok(())
    })
}

/// # Safety
/// `factor` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf_factor_free(factor: *mut GfFactor) {
    if !factor.is_null() {
        drop(Box::from_raw(factor));
    }
}

/// # Safety
/// `factor` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_factor_serialize(factor: *const GfFactor) -> *mut c_char {
    match factor.as_ref() {
        Some(f) => into_c_string(genfactor::serialize_factor(&f.0)),
        None => ptr::null_mut(),
    }
}

/// Weight on `(u, v)`; 0 for pairs the factor does not mention.
///
/// # Safety
/// `factor` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_factor_weight(factor: *const GfFactor, u: u32, v: u32) -> u32 {
    factor.as_ref().map_or(0, |f| f.0.get(u, v))
}

/// Checks `factor` against `inst`. A weight on a non-edge is an error
/// (`GF_STATUS_STRUCTURAL`). Otherwise `*valid` is set, and if `violation`
/// is not NULL it receives a description of the first violation (or NULL
/// when valid), to be freed with `gf_string_free`.
///
/// # Safety
/// Handles must be live; `valid` must be writable; `violation` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn gf_verify(
    inst: *const GfInstance,
    factor: *const GfFactor,
    valid: *mut bool,
    violation: *mut *mut c_char,
) -> GfStatus {
    guard(|| {
        let inst = handle(inst, "inst")?;
        let factor = handle(factor, "factor")?;
        if valid.is_null() {
            return Err(null("valid"));
        }
        if !violation.is_null() {
            *violation = ptr::null_mut();
        }
        let v = genfactor::verify_factor(&inst.0, &factor.0)?;
        *valid = v.is_none();
        if let (Some(v), false) = (v, violation.is_null()) {
            *violation = into_c_string(v.to_string());
        }
        Ok(())
    })
}

/// Decides `inst` with the parameterized solver. On YES and a non-NULL
/// `witness`, a new factor handle is stored there; otherwise `*witness` is
/// set to NULL. `options` and `stats` may be NULL.
///
/// # Safety
/// `inst` must be live; `decision` writable; the others NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn gf_solve(
    inst: *const GfInstance,
    options: *const GfSolveOptions,
    decision: *mut GfDecision,
    witness: *mut *mut GfFactor,
    stats: *mut GfSolveStats,
) -> GfStatus {
    guard(|| {
        let inst = handle(inst, "inst")?;
        if decision.is_null() {
            return Err(null("decision"));
        }
        let mut opts = SolveOptions::default();
        if let Some(o) = options.as_ref() {
            opts.fast_path = match o.fast_path {
                GfFastPath::Auto => FastPath::Auto,
                GfFastPath::On => FastPath::On,
                GfFastPath::Off => FastPath::Off,
            };
            opts.workers = o.workers.max(1) as usize;
            opts.count_all = o.count_all;
        }
        let (d, s) = genfactor::solve(&inst.0, &opts)?;
        if let Some(out) = stats.as_mut() {
            *out = GfSolveStats {
                k: s.k as u64,
                modules_found: s.modules_found as u64,
                contracted_edge_count: s.contracted_edge_count as u64,
                x_subsets_explored: s.x_subsets_explored,
                forests_explored: s.forests_explored,
                forest_solves: s.forest_solves,
                fast_path: s.fast_path,
                rejected_early: s.rejected_early,
            };
        }
        write_decision(d, decision, witness);
        Ok(())
    })
}

/// Decides `inst` by exhaustive search. `max_nodes = 0` uses the default
/// node budget and `time_limit_ms = 0` means no time limit. Running out of
/// budget returns `GF_STATUS_BUDGET`, which means "unknown".
///
/// # Safety
/// As for `gf_solve`.
#[no_mangle]
pub unsafe extern "C" fn gf_oracle(
    inst: *const GfInstance,
    max_nodes: u64,
    time_limit_ms: u64,
    decision: *mut GfDecision,
    witness: *mut *mut GfFactor,
) -> GfStatus {
    guard(|| {
        let inst = handle(inst, "inst")?;
        if decision.is_null() {
            return Err(null("decision"));
        }
        let mut budget = if max_nodes == 0 { Budget::default() } else { Budget::nodes(max_nodes) };
        if time_limit_ms > 0 {
            budget = budget.with_time_limit(Duration::from_millis(time_limit_ms));
        }
        let d = genfactor::solve_bruteforce(&inst.0, &budget)?;
        write_decision(d, decision, witness);
        Ok(())
    })
}

/// Builds the selection gadget for the strictly increasing values
/// `values[0..len]` with `r >= 1` outputs.
///
/// # Safety
/// `values` must point to `len` readable integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_selection_gadget(
    values: *const u32,
    len: usize,
    r: u32,
    out: *mut *mut GfInstance,
) -> GfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        if values.is_null() && len > 0 {
            return Err(null("values"));
        }
        let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(values, len) };
        if slice.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Failure(GfStatus::Input, "values must be strictly increasing".into()));
        }
        let g = selection_gadget(&DegreeList::new(slice.iter().copied()), r)?;
        *out = Box::into_raw(Box::new(GfInstance(g.instance)));
        Ok(())
    })
}

/// Checks a cardinality-constraint model given as JSON. When consistent
/// and `assignment` is not NULL, it receives one `variable value` line per
/// variable, to be freed with `gf_string_free`.
///
/// # Safety
/// `model` must be a NUL-terminated string; `consistent` writable;
/// `assignment` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn gf_egcc_check(
    model: *const c_char,
    consistent: *mut bool,
    assignment: *mut *mut c_char,
) -> GfStatus {
    guard(|| {
        let m = parse_model(c_str(model, "model")?)?;
        if consistent.is_null() {
            return Err(null("consistent"));
        }
        if !assignment.is_null() {
            *assignment = ptr::null_mut();
        }
        match check_consistency_with(&m, &SolveOptions::default())? {
            Consistency::Consistent(a) => {
                *consistent = true;
                if !assignment.is_null() {
                    let lines: String = a.iter().map(|(x, d)| format!("{x} {d}\n")).collect();
                    *assignment = into_c_string(lines);
                }
            }
            Consistency::Inconsistent => *consistent = false,
        }
        Ok(())
    })
}
