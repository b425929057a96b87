//! C interface to `signet`.
//!
//! Nets live behind an opaque [`SignetNet`] handle created by
//! [`signet_net_parse`], [`signet_net_load`] or [`signet_translate`] and
//! released with [`signet_net_free`]. Every fallible call returns a
//! [`SignetStatus`]; on failure [`signet_last_error`] describes what went
//! wrong. Strings handed out by the library must be released with
//! [`signet_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use signet::expr::{parse_expr, to_dnf};
use signet::firing::outcomes;
use signet::io::{export_dot, parse_document, render_document, save_net, Graph, IoError};
use signet::{check_equivalence, explore, positive_projection, translate_lpn, validate_net, DualMarking, Net, Verdict};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignetStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidNet = 4,
    IoError = 5,
    TranslationRejected = 6,
    FireError = 7,
    BoundExceeded = 8,
    Panic = 9,
}

/// Outcome of [`signet_check_equivalence`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignetVerdict {
    Equivalent = 0,
    NotEquivalent = 1,
    Unknown = 2,
}

/// A net together with its optional initial marking.
pub struct SignetNet {
    net: Net,
    marking: Option<DualMarking>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

type Outcome<T> = Result<T, (SignetStatus, String)>;

// Runs `f`, turning errors and panics into a status plus the thread's last error.
fn guard(f: impl FnOnce() -> Outcome<()>) -> SignetStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SignetStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SignetStatus::Panic
        }
    }
}

fn io_status(e: IoError) -> (SignetStatus, String) {
    let status = match e {
        IoError::Io { .. } => SignetStatus::IoError,
        IoError::Invalid(_) => SignetStatus::InvalidNet,
        _ => SignetStatus::ParseError,
    };
    (status, e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Outcome<&'a str> {
    if s.is_null() {
        return Err((SignetStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| (SignetStatus::InvalidUtf8, e.to_string()))
}

unsafe fn read_net<'a>(net: *const SignetNet) -> Outcome<&'a SignetNet> {
    net.as_ref().ok_or((SignetStatus::NullArgument, "null net handle".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Outcome<()> {
    if out.is_null() {
        return Err((SignetStatus::NullArgument, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

fn boxed(net: Net, marking: Option<DualMarking>) -> *mut SignetNet {
    Box::into_raw(Box::new(SignetNet { net, marking }))
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn signet_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn signet_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a JSON net document. The net must pass validation.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn signet_net_parse(json: *const c_char, out: *mut *mut SignetNet) -> SignetStatus {
    guard(|| {
        let text = read_str(json)?;
        let (net, marking) = parse_document(text).map_err(io_status)?;
        write_out(out, boxed(net, marking))
    })
}

/// Reads a net document from disk.
///
/// # Safety
/// `path` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn signet_net_load(path: *const c_char, out: *mut *mut SignetNet) -> SignetStatus {
    guard(|| {
        let path = read_str(path)?;
        let (net, marking) = signet::io::load_net(path).map_err(io_status)?;
        write_out(out, boxed(net, marking))
    })
}

/// Releases a net handle. Null is ignored.
///
/// # Safety
/// `net` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn signet_net_free(net: *mut SignetNet) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Canonical JSON text of the net and its marking.
///
/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn signet_net_to_json(net: *const SignetNet, out: *mut *mut c_char) -> SignetStatus {
    guard(|| {
        let n = read_net(net)?;
        write_out(out, into_c_string(render_document(&n.net, n.marking.as_ref())))
    })
}

/// Writes the canonical document to `path`.
///
/// # Safety
/// `net` must be a live handle; `path` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn signet_net_save(net: *const SignetNet, path: *const c_char) -> SignetStatus {
    guard(|| {
        let n = read_net(net)?;
        let path = read_str(path)?;
        save_net(&n.net, n.marking.as_ref(), path).map_err(io_status)
    })
}

/// Number of places, or 0 for a null handle.
///
/// # Safety
/// `net` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn signet_net_place_count(net: *const SignetNet) -> usize {
    net.as_ref().map_or(0, |n| n.net.place_count())
}

/// Number of transitions, or 0 for a null handle.
///
/// # Safety
/// `net` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn signet_net_transition_count(net: *const SignetNet) -> usize {
    net.as_ref().map_or(0, |n| n.net.transitions().len())
}

/// Stores the number of structural violations in `count`. Handles obtained
/// from this library are always valid, so this is mostly a sanity check.
///
/// # Safety
/// `net` must be a live handle; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn signet_net_validate(net: *const SignetNet, count: *mut usize) -> SignetStatus {
    guard(|| {
        let n = read_net(net)?;
        write_out(count, validate_net(&n.net).len())
    })
}

/// Outcomes of firing `transition` at the net's marking, one per line.
/// An empty string means the transition cannot fire.
///
/// # Safety
/// `net` must be a live handle, `transition` a nul-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn signet_fire(
    net: *const SignetNet,
    transition: *const c_char,
    out: *mut *mut c_char,
) -> SignetStatus {
    guard(|| {
        let n = read_net(net)?;
        let name = read_str(transition)?;
        let t = n.net.transition_id(name).ok_or((SignetStatus::FireError, format!("no transition named {name}")))?;
        let m = n.marking.clone().unwrap_or_else(|| DualMarking::zeros(n.net.place_count()));
        let outs = outcomes(&n.net, t, &m).map_err(|e| (SignetStatus::FireError, e.to_string()))?;
        let lines: Vec<String> = outs
            .iter()
            .map(|o| {
                if n.net.class().is_signed() {
                    o.marking.to_string()
                } else {
                    positive_projection(&o.marking).to_string()
                }
            })
            .collect();
        write_out(out, into_c_string(lines.join("\n")))
    })
}

/// Translates an LPN into an LSPN carrying the matching initial marking.
/// On rejection the report is available through [`signet_last_error`].
///
/// # Safety
/// `lpn` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn signet_translate(lpn: *const SignetNet, out: *mut *mut SignetNet) -> SignetStatus {
    guard(|| {
        let n = read_net(lpn)?;
        let m0 = initial_plain(n)?;
        let tr = translate_lpn(&n.net, &m0).map_err(|e| (SignetStatus::TranslationRejected, e.0.to_string()))?;
        write_out(out, boxed(tr.lspn, Some(tr.initial)))
    })
}

fn initial_plain(n: &SignetNet) -> Outcome<signet::Marking> {
    let m = n.marking.clone().unwrap_or_else(|| DualMarking::zeros(n.net.place_count()));
    if !m.is_plain() {
        return Err((SignetStatus::ParseError, "LPN marking carries negative tokens".into()));
    }
    Ok(positive_projection(&m))
}

/// Compares an LPN with an LSPN; a null `lspn` means "translate `lpn`".
/// `report`, when not null, receives the witness or counterexample text.
/// Returns `BoundExceeded` (with `Unknown` stored) when `max_states` is hit.
///
/// # Safety
/// `lpn` must be a live handle, `lspn` null or a live handle, `verdict`
/// writable and `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn signet_check_equivalence(
    lpn: *const SignetNet,
    lspn: *const SignetNet,
    max_states: usize,
    verdict: *mut SignetVerdict,
    report: *mut *mut c_char,
) -> SignetStatus {
    guard(|| {
        let left = read_net(lpn)?;
        let m0 = initial_plain(left)?;
        let (right, initial) = match lspn.as_ref() {
            Some(r) => {
                let initial =
                    r.marking.clone().unwrap_or_else(|| signet::translate::assign_initial_tokens(&m0, &r.net));
                (r.net.clone(), initial)
            }
            None => {
                let tr =
                    translate_lpn(&left.net, &m0).map_err(|e| (SignetStatus::TranslationRejected, e.0.to_string()))?;
                (tr.lspn, tr.initial)
            }
        };
        let v = check_equivalence(&left.net, &m0, &right, &initial, max_states)
            .map_err(|e| (SignetStatus::ParseError, e.to_string()))?;
        let tag = match v.verdict {
            Verdict::Equivalent => SignetVerdict::Equivalent,
            Verdict::NotEquivalent => SignetVerdict::NotEquivalent,
            Verdict::Unknown => SignetVerdict::Unknown,
        };
        write_out(verdict, tag)?;
        if !report.is_null() {
            let mut text = format!("verdict: {}\n", v.verdict);
            for (m, image) in &v.witness {
                text.push_str(&format!("{m} <-> {image}\n"));
            }
            if let Some(c) = &v.counterexample {
                text.push_str(&format!("counterexample: {c}\n"));
            }
            report.write(into_c_string(text));
        }
        if v.verdict == Verdict::Unknown {
            return Err((SignetStatus::BoundExceeded, format!("exploration stopped at {max_states} states")));
        }
        Ok(())
    })
}

/// Explores from the net's marking and renders the reachability graph in
/// Graphviz syntax. Returns `BoundExceeded` (and still writes `out`) when
/// `max_states` is hit.
///
/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn signet_explore_dot(
    net: *const SignetNet,
    max_states: usize,
    out: *mut *mut c_char,
) -> SignetStatus {
    guard(|| {
        let n = read_net(net)?;
        let m0 = n.marking.clone().unwrap_or_else(|| DualMarking::zeros(n.net.place_count()));
        let lts = explore(&n.net, &m0, max_states).map_err(|e| (SignetStatus::ParseError, e.to_string()))?;
        write_out(out, into_c_string(export_dot(&n.net, Graph::Lts(&lts))))?;
        if !lts.is_complete() {
            return Err((SignetStatus::BoundExceeded, format!("exploration stopped at {max_states} states")));
        }
        Ok(())
    })
}

/// Canonical DNF of an expression, e.g. `(p1 & p3) | (p2 & p3)`.
///
/// # Safety
/// `expr` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn signet_dnf(expr: *const c_char, out: *mut *mut c_char) -> SignetStatus {
    guard(|| {
        let text = read_str(expr)?;
        let e = parse_expr(text).map_err(|e| (SignetStatus::ParseError, e.to_string()))?;
        let d = to_dnf(&e).map_err(|e| (SignetStatus::ParseError, e.to_string()))?;
        write_out(out, into_c_string(d.to_string()))
    })
}
