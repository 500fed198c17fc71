//! C interface to the enumeration engine.
//!
//! Objects are opaque handles created by `skc_*_new`/`skc_*_run` and
//! released by the matching `skc_*_free`. Every fallible call returns an
//! [`SkcStatus`]; the message of the most recent failure on the calling
//! thread is available from [`skc_last_error`]. Strings handed out by the
//! library are released with [`skc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::ptr;

use skewcensus::aut::{automorphisms, AutGroup};
use skewcensus::catalog::{make_spec, TypeLabel};
use skewcensus::census::{run_census, CensusReport};
use skewcensus::error::Error;
use skewcensus::formulas;
use skewcensus::gamma::search::{Budget, SearchMode, SearchOptions, SearchStatus};
use skewcensus::group::{build_group, GroupTable};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameters = 2,
    UnsupportedShape = 3,
    UndefinedCell = 4,
    NonIntegral = 5,
    /// The search stopped at its budget; results are partial.
    Incomplete = 6,
    Internal = 7,
    OutOfRange = 8,
}

/// Search mode for [`skc_census_run`].
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum SkcMode {
    #[default]
    Full = 0,
    Pruned = 1,
}

/// A group of order `p²q` together with its automorphism group.
pub struct SkcGroup {
    table: GroupTable,
    aut: AutGroup,
}

/// The summary of one enumeration.
pub struct SkcCensus {
    report: CensusReport,
}

/// Search limits; zero means unlimited.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SkcOptions {
    pub mode: SkcMode,
    pub workers: u32,
    pub max_nodes: u64,
    pub max_seconds: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn fail(e: Error) -> SkcStatus {
    let code = match e {
        Error::InvalidParameters(_) => SkcStatus::InvalidParameters,
        Error::UnsupportedShape(_) => SkcStatus::UnsupportedShape,
        Error::UndefinedCell(_) => SkcStatus::UndefinedCell,
        Error::NonIntegral { .. } => SkcStatus::NonIntegral,
        _ => SkcStatus::Internal,
    };
    set_error(e.to_string());
    code
}

fn null(what: &str) -> SkcStatus {
    set_error(format!("{} is null", what));
    SkcStatus::NullPointer
}

/// `k = 0` stands for "no parameter" (types other than 8).
fn opt_k(k: u32) -> Option<u32> {
    (k != 0).then_some(k)
}

fn label(family: u8, k: u32, q: u32) -> Result<TypeLabel, Error> {
    match (family, k) {
        (8, 0) => Err(Error::InvalidParameters("type 8 needs k".into())),
        (8, _) if q < 2 => Err(Error::InvalidParameters(format!("q = {} must be prime", q))),
        (8, _) => Ok(TypeLabel::eight(k, q)),
        _ => Ok(TypeLabel::new(family)),
    }
}

/// Run `f`, turning a panic into [`SkcStatus::Internal`] instead of
/// unwinding into C.
fn guard(f: impl FnOnce() -> SkcStatus) -> SkcStatus {
    std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        SkcStatus::Internal
    })
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn skc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn skc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Build the catalog group of type `family` (5..11) at `(p, q)`. `k` is
/// the type-8 parameter and is ignored (pass 0) for other types.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn skc_group_new(family: u8, p: u32, q: u32, k: u32, out: *mut *mut SkcGroup) -> SkcStatus {
    if out.is_null() {
        return null("out");
    }
    *out = ptr::null_mut();
    guard(|| {
        let built = make_spec(family, p, q, if family == 8 { opt_k(k) } else { None })
            .and_then(|spec| build_group(&spec))
            .and_then(|table| automorphisms(&table).map(|aut| (table, aut)));
        match built {
            Ok((table, aut)) => {
                *out = Box::into_raw(Box::new(SkcGroup { table, aut }));
                SkcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `group` must be null or a handle from [`skc_group_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn skc_group_free(group: *mut SkcGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// `|G|`, or 0 for a null handle.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skc_group_order(group: *const SkcGroup) -> u64 {
    group.as_ref().map_or(0, |g| g.table.n as u64)
}

/// `|Aut(G)|`, or 0 for a null handle.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skc_group_aut_order(group: *const SkcGroup) -> u64 {
    group.as_ref().map_or(0, |g| g.aut.order() as u64)
}

/// Product of `a` and `b` (element indices `(i·p + j)·q + m` for
/// `a1^i a2^j b^m`).
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn skc_group_mul(group: *const SkcGroup, a: u32, b: u32, out: *mut u32) -> SkcStatus {
    let Some(g) = group.as_ref() else { return null("group") };
    if out.is_null() {
        return null("out");
    }
    let n = g.table.n as u32;
    if a >= n || b >= n {
        set_error(format!("element index out of range 0..{}", n));
        return SkcStatus::OutOfRange;
    }
    *out = g.table.mul[(a * n + b) as usize];
    SkcStatus::Ok
}

/// Enumerate every gamma function on the catalog group and summarize the
/// result. On [`SkcStatus::Incomplete`] the handle is still produced and
/// describes the partial enumeration.
///
/// # Safety
/// `options` must be null (defaults) or valid; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skc_census_run(
    family: u8,
    p: u32,
    q: u32,
    k: u32,
    options: *const SkcOptions,
    out: *mut *mut SkcCensus,
) -> SkcStatus {
    if out.is_null() {
        return null("out");
    }
    *out = ptr::null_mut();
    let o = options.as_ref().copied().unwrap_or_default();
    let opts = SearchOptions {
        mode: match o.mode {
            SkcMode::Full => SearchMode::Full,
            SkcMode::Pruned => SearchMode::PruneSymmetry,
        },
        budget: Budget {
            max_nodes: (o.max_nodes > 0).then_some(o.max_nodes),
            max_seconds: (o.max_seconds > 0.0).then_some(o.max_seconds),
        },
        workers: (o.workers > 0).then_some(o.workers as usize),
    };
    guard(|| {
        let report = match make_spec(family, p, q, if family == 8 { opt_k(k) } else { None })
            .and_then(|spec| run_census(&spec, &opts))
        {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        let complete = report.status == SearchStatus::Complete;
        *out = Box::into_raw(Box::new(SkcCensus { report }));
        if complete {
            SkcStatus::Ok
        } else {
            set_error("search budget exhausted");
            SkcStatus::Incomplete
        }
    })
}

/// # Safety
/// `census` must be null or a handle from [`skc_census_run`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn skc_census_free(census: *mut SkcCensus) {
    if !census.is_null() {
        drop(Box::from_raw(census));
    }
}

/// Total number of gamma functions found.
///
/// # Safety
/// `census` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skc_census_total(census: *const SkcCensus) -> u64 {
    census.as_ref().map_or(0, |c| c.report.gamma_total)
}

/// Number of target types `Γ` present.
///
/// # Safety
/// `census` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skc_census_target_count(census: *const SkcCensus) -> u32 {
    census.as_ref().map_or(0, |c| c.report.by_target.len() as u32)
}

/// The `index`-th target: its type, type-8 parameter (0 if none), `e′`
/// and number of `Aut(G)`-classes. Any output pointer may be null.
///
/// # Safety
/// `census` must be a live handle; non-null outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn skc_census_target(
    census: *const SkcCensus,
    index: u32,
    family: *mut u8,
    k: *mut u32,
    e_prime: *mut u64,
    classes: *mut u64,
) -> SkcStatus {
    let Some(c) = census.as_ref() else { return null("census") };
    let Some(t) = c.report.by_target.get(index as usize) else {
        set_error(format!("target index {} out of range", index));
        return SkcStatus::OutOfRange;
    };
    if let Some(f) = family.as_mut() {
        *f = t.target.family;
    }
    if let Some(kk) = k.as_mut() {
        *kk = t.target.k.unwrap_or(0);
    }
    if let Some(e) = e_prime.as_mut() {
        *e = t.e_prime;
    }
    if let Some(n) = classes.as_mut() {
        *n = t.class_count();
    }
    SkcStatus::Ok
}

/// Whether every verification cell passed (1) or not (0).
///
/// # Safety
/// `census` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skc_census_passed(census: *const SkcCensus) -> i32 {
    census.as_ref().map_or(0, |c| c.report.passed() as i32)
}

/// The census as a JSON document. Release with [`skc_string_free`].
///
/// # Safety
/// `census` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn skc_census_to_json(census: *const SkcCensus, out: *mut *mut c_char) -> SkcStatus {
    let Some(c) = census.as_ref() else { return null("census") };
    if out.is_null() {
        return null("out");
    }
    let json = skewcensus::report::census_json(std::slice::from_ref(&c.report));
    *out = CString::new(json).expect("json has no nul bytes").into_raw();
    SkcStatus::Ok
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn skc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Closed-form `e′(Γ, G)` at `(p, q)`. `gamma_k` and `g_k` are type-8
/// parameters (0 otherwise).
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn skc_formula_e_prime(
    gamma_family: u8,
    gamma_k: u32,
    g_family: u8,
    g_k: u32,
    p: u32,
    q: u32,
    out: *mut u64,
) -> SkcStatus {
    if out.is_null() {
        return null("out");
    }
    guard(|| {
        let value = label(gamma_family, gamma_k, q)
            .and_then(|gamma| Ok((gamma, label(g_family, g_k, q)?)))
            .and_then(|(gamma, g)| formulas::expected_e_prime(&gamma, &g, p, q));
        match value {
            Ok(v) => match u64::try_from(v) {
                Ok(v) => {
                    *out = v;
                    SkcStatus::Ok
                }
                Err(_) => {
                    set_error("value does not fit in 64 bits");
                    SkcStatus::OutOfRange
                }
            },
            Err(e) => fail(e),
        }
    })
}
