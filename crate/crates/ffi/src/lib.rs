//! C interface to `linkgroup`.
//!
//! Diagrams and presentations cross the boundary as opaque handles that the
//! caller frees with the matching `_free` function. Strings returned through
//! `char **out` parameters are owned by the caller and released with
//! [`lg_string_free`]. Every fallible call returns an [`LgStatus`]; on any
//! status other than `LG_STATUS_OK` a description is available from
//! [`lg_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use linkgroup::diagram::{parse_diagram, DiagramError, LinkDiagram};
use linkgroup::gem::{is_gem, FourGraph};
use linkgroup::homology::first_homology;
use linkgroup::presentation::{
    fundamental_group, parse_presentation, serialize, tietze_simplify, Dialect, GroupPresentation,
    DEFAULT_TIETZE_BUDGET,
};
use linkgroup::quotients::{distinguish_profiles, profile, Catalog, Outcome, ProfileConfig, MAX_INDEX};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    /// The result was produced but some entry hit its search budget.
    Budget = 5,
    Panic = 6,
    InvalidArgument = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LgDialect {
    Native = 0,
    Gap = 1,
    Plain = 2,
}

impl From<LgDialect> for Dialect {
    fn from(d: LgDialect) -> Self {
        match d {
            LgDialect::Native => Dialect::Native,
            LgDialect::Gap => Dialect::Gap,
            LgDialect::Plain => Dialect::Plain,
        }
    }
}

/// A validated link diagram.
pub struct LgDiagram(LinkDiagram);

/// A finitely presented group.
pub struct LgPresentation(GroupPresentation);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let clean: Vec<u8> = message.bytes().filter(|&b| b != 0).collect();
    let c = CString::new(clean).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(LgStatus, String);

type FfiResult = Result<LgStatus, Failure>;

fn guard(f: impl FnOnce() -> FfiResult) -> LgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => {
            if status == LgStatus::Ok {
                set_error("");
            }
            status
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LgStatus::Panic
        }
    }
}

unsafe fn input_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(LgStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(LgStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(LgStatus::NullPointer, "null handle".into()))
}

unsafe fn out_ptr<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure(LgStatus::NullPointer, "null output pointer".into()))
}

fn into_c_string(s: String) -> *mut c_char {
    let clean: Vec<u8> = s.into_bytes().into_iter().filter(|&b| b != 0).collect();
    CString::new(clean).expect("NUL bytes removed").into_raw()
}

fn diagram_failure(e: DiagramError) -> Failure {
    let status = match e {
        DiagramError::Syntax { .. } => LgStatus::Parse,
        _ => LgStatus::Validation,
    };
    Failure(status, e.to_string())
}

/// Parses and validates a PD-JSON diagram.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lg_diagram_parse(json: *const c_char, out: *mut *mut LgDiagram) -> LgStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let d = parse_diagram(input_str(json)?).map_err(diagram_failure)?;
        *out = Box::into_raw(Box::new(LgDiagram(d)));
        Ok(LgStatus::Ok)
    })
}

/// # Safety
/// `d` must be null or a handle from `lg_diagram_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lg_diagram_free(d: *mut LgDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Fundamental group of the closed manifold obtained by surgery on `d`.
///
/// # Safety
/// `d` must be a live diagram handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lg_diagram_fundamental_group(
    d: *const LgDiagram,
    out: *mut *mut LgPresentation,
) -> LgStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let d = handle(d)?;
        *out = Box::into_raw(Box::new(LgPresentation(fundamental_group(&d.0))));
        Ok(LgStatus::Ok)
    })
}

/// Parses native presentation text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lg_presentation_parse(text: *const c_char, out: *mut *mut LgPresentation) -> LgStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let p = parse_presentation(input_str(text)?).map_err(|e| Failure(LgStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(LgPresentation(p)));
        Ok(LgStatus::Ok)
    })
}

/// # Safety
/// `p` must be null or a presentation handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lg_presentation_free(p: *mut LgPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live presentation handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lg_presentation_serialize(
    p: *const LgPresentation,
    dialect: LgDialect,
    out: *mut *mut c_char,
) -> LgStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        *out = into_c_string(serialize(&handle(p)?.0, dialect.into()));
        Ok(LgStatus::Ok)
    })
}

/// # Safety
/// `p` must be a live presentation handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lg_presentation_simplify(p: *const LgPresentation, out: *mut *mut LgPresentation) -> LgStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let s = tietze_simplify(&handle(p)?.0, DEFAULT_TIETZE_BUDGET);
        *out = Box::into_raw(Box::new(LgPresentation(s)));
        Ok(LgStatus::Ok)
    })
}

/// Number of generators, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live presentation handle.
#[no_mangle]
pub unsafe extern "C" fn lg_presentation_generator_count(p: *const LgPresentation) -> usize {
    p.as_ref().map_or(0, |p| p.0.generators().len())
}

/// Number of relators, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live presentation handle.
#[no_mangle]
pub unsafe extern "C" fn lg_presentation_relator_count(p: *const LgPresentation) -> usize {
    p.as_ref().map_or(0, |p| p.0.relators().len())
}

/// Invariant factors of the first homology as a JSON array.
///
/// # Safety
/// `p` must be a live presentation handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lg_presentation_homology_json(p: *const LgPresentation, out: *mut *mut c_char) -> LgStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let h: Vec<String> = first_homology(&handle(p)?.0).iter().map(|x| x.to_string()).collect();
        *out = into_c_string(format!("[{}]", h.join(", ")));
        Ok(LgStatus::Ok)
    })
}

/// # Safety
/// `p` must be a live presentation handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lg_presentation_is_perfect(p: *const LgPresentation, out: *mut bool) -> LgStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = first_homology(&handle(p)?.0).is_empty();
        Ok(LgStatus::Ok)
    })
}

fn check_k(k: u32) -> Result<usize, Failure> {
    let k = k as usize;
    if (2..=MAX_INDEX).contains(&k) {
        Ok(k)
    } else {
        Err(Failure(
            LgStatus::InvalidArgument,
            format!("k must be between 2 and {MAX_INDEX}"),
        ))
    }
}

/// Invariant profile over the built-in catalog with subgroup indices up to
/// `k`. Returns `LG_STATUS_BUDGET` (with `*out` set) if any entry hit
/// `budget`.
///
/// # Safety
/// `p` must be a live presentation handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lg_profile_json(
    p: *const LgPresentation,
    k: u32,
    budget: u64,
    out: *mut *mut c_char,
) -> LgStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let p = handle(p)?;
        let k = check_k(k)?;
        let catalog = Catalog::builtin();
        let pr = profile(&p.0, &ProfileConfig { catalog: &catalog, k, budget });
        *out = into_c_string(pr.to_json());
        Ok(if pr.has_budget_flags() { LgStatus::Budget } else { LgStatus::Ok })
    })
}

/// Verdict JSON comparing `p` and `q`; `*distinguished` is set when a
/// witness was found.
///
/// # Safety
/// `p` and `q` must be live presentation handles; `out` and
/// `distinguished` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lg_distinguish_json(
    p: *const LgPresentation,
    q: *const LgPresentation,
    k: u32,
    budget: u64,
    out: *mut *mut c_char,
    distinguished: *mut bool,
) -> LgStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let flag = out_ptr(distinguished)?;
        let (p, q) = (handle(p)?, handle(q)?);
        let k = check_k(k)?;
        let catalog = Catalog::builtin();
        let cfg = ProfileConfig { catalog: &catalog, k, budget };
        let (a, b) = (profile(&p.0, &cfg), profile(&q.0, &cfg));
        let v = distinguish_profiles(&a, &b);
        *flag = v.outcome == Outcome::Distinguished;
        *out = into_c_string(v.to_json());
        Ok(if v.skipped.is_empty() { LgStatus::Ok } else { LgStatus::Budget })
    })
}

/// Gem report for a 4-colored graph given as JSON.
///
/// # Safety
/// `graph_json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lg_gem_check_json(graph_json: *const c_char, out: *mut *mut c_char) -> LgStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let g = FourGraph::from_json(input_str(graph_json)?).map_err(|e| Failure(LgStatus::Validation, e.to_string()))?;
        *out = into_c_string(is_gem(&g).to_json());
        Ok(LgStatus::Ok)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn lg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
