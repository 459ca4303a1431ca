//! C ABI over `mrd_storage`.
//!
//! Handles are opaque and owned by the caller until passed to the matching
//! `*_free`. Structured data crosses the boundary as UTF-8 JSON; strings
//! and buffers returned through out-pointers are released with
//! [`mrd_string_free`] and [`mrd_bytes_free`]. On any status other than
//! `MRD_STATUS_OK`, [`mrd_last_error`] describes the failure on the calling
//! thread. Node indices in JSON are 1-based, as in scenario files.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mrd_storage::bounds::{self, BoundParams};
use mrd_storage::concat::{Scheme, SchemeDescriptor};
use mrd_storage::field::ExtElem;
use mrd_storage::payload::NodeFile;
use mrd_storage::scenario::{validate_event, ScenarioConfig};
use mrd_storage::sim::{Event, EventRecord, SystemState};
use mrd_storage::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MrdStatus {
    Ok = 0,
    /// null pointer or non-UTF-8 string
    InvalidArgument = 1,
    /// malformed JSON or a value of the wrong shape
    Parse = 2,
    /// parameters violate a construction or bound precondition
    InvalidParameters = 3,
    /// too many errors or erasures for the decoder
    DecodeFailure = 4,
    /// repair could not be completed
    RepairFailure = 5,
    /// more compromised nodes than the scheme tolerates
    AdversaryLimit = 6,
    /// a panic was caught at the boundary
    Internal = 7,
}

/// Opaque scheme handle.
pub struct MrdScheme(Scheme);

/// Opaque simulator handle.
pub struct MrdSim(SystemState);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(MrdStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::DecodeFailure | Error::TooManyErasures { .. } | Error::InsufficientNodes { .. } => {
                MrdStatus::DecodeFailure
            }
            Error::RepairFailure(_) | Error::GroupUnrepairable { .. } | Error::InadmissibleHelpers(_) => {
                MrdStatus::RepairFailure
            }
            Error::AdversaryLimit { .. } | Error::DoubleCorruption(_) => MrdStatus::AdversaryLimit,
            Error::Malformed(_) => MrdStatus::Parse,
            _ => MrdStatus::InvalidParameters,
        };
        Fail(status, e.to_string())
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail(MrdStatus::Parse, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MrdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            MrdStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside mrd-storage");
            MrdStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(MrdStatus::InvalidArgument, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(MrdStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn null_check<T>(p: *const T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(MrdStatus::InvalidArgument, format!("{what} is null")))
    } else {
        Ok(())
    }
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(MrdStatus::Internal, "interior NUL in output".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn mrd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mrd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a byte buffer returned by this library.
///
/// # Safety
/// `data` and `len` must be exactly as returned, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mrd_bytes_free(data: *mut u8, len: usize) {
    if !data.is_null() {
        drop(Box::from_raw(ptr::slice_from_raw_parts_mut(data, len)));
    }
}

/// Builds a scheme from its JSON descriptor.
///
/// # Safety
/// `descriptor_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mrd_scheme_new(descriptor_json: *const c_char, out: *mut *mut MrdScheme) -> MrdStatus {
    guard(|| {
        null_check(out, "out")?;
        let desc: SchemeDescriptor = serde_json::from_str(read_str(descriptor_json, "descriptor")?)?;
        let scheme = Scheme::from_descriptor(&desc)?;
        *out = Box::into_raw(Box::new(MrdScheme(scheme)));
        Ok(())
    })
}

/// # Safety
/// `scheme` must come from [`mrd_scheme_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mrd_scheme_free(scheme: *mut MrdScheme) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}

/// Number of storage nodes, or 0 for a null handle.
///
/// # Safety
/// `scheme` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mrd_scheme_nodes(scheme: *const MrdScheme) -> usize {
    scheme.as_ref().map_or(0, |s| s.0.n())
}

/// Outer-code dimension (symbols per stripe), or 0 for a null handle.
///
/// # Safety
/// `scheme` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mrd_scheme_file_len(scheme: *const MrdScheme) -> usize {
    scheme.as_ref().map_or(0, |s| s.0.file_len())
}

/// Symbols stored per node, or 0 for a null handle.
///
/// # Safety
/// `scheme` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mrd_scheme_alpha(scheme: *const MrdScheme) -> usize {
    scheme.as_ref().map_or(0, |s| s.0.alpha())
}

/// Fully pinned descriptor of the scheme as JSON.
///
/// # Safety
/// `scheme` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mrd_scheme_descriptor(scheme: *const MrdScheme, out: *mut *mut c_char) -> MrdStatus {
    guard(|| {
        null_check(scheme, "scheme")?;
        null_check(out, "out")?;
        put_string(out, serde_json::to_string(&(*scheme).0.descriptor())?)
    })
}

/// Encodes `len` bytes into a JSON node file.
///
/// # Safety
/// `payload` must point to `len` readable bytes (or be null with `len == 0`).
#[no_mangle]
pub unsafe extern "C" fn mrd_encode(
    scheme: *const MrdScheme,
    payload: *const u8,
    len: usize,
    nodes_json: *mut *mut c_char,
) -> MrdStatus {
    guard(|| {
        null_check(scheme, "scheme")?;
        null_check(nodes_json, "nodes_json")?;
        let data = if len == 0 {
            &[][..]
        } else {
            null_check(payload, "payload")?;
            std::slice::from_raw_parts(payload, len)
        };
        let file = NodeFile::encode(&(*scheme).0, data)?;
        put_string(nodes_json, serde_json::to_string(&file)?)
    })
}

/// Decodes a JSON node file (absent nodes as `null`) back to its payload.
///
/// # Safety
/// `nodes_json` must be a NUL-terminated string; `out` and `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn mrd_decode(nodes_json: *const c_char, out: *mut *mut u8, out_len: *mut usize) -> MrdStatus {
    guard(|| {
        null_check(out, "out")?;
        null_check(out_len, "out_len")?;
        let file: NodeFile = serde_json::from_str(read_str(nodes_json, "nodes_json")?)?;
        let bytes = file.decode()?.into_boxed_slice();
        *out_len = bytes.len();
        *out = if bytes.is_empty() {
            ptr::null_mut()
        } else {
            Box::into_raw(bytes) as *mut u8
        };
        Ok(())
    })
}

/// Evaluates every bound whose parameters are present in `params_json`.
///
/// # Safety
/// `params_json` must be a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mrd_bounds(params_json: *const c_char, out: *mut *mut c_char) -> MrdStatus {
    guard(|| {
        null_check(out, "out")?;
        let p: BoundParams = serde_json::from_str(read_str(params_json, "params_json")?)?;
        put_string(out, serde_json::to_string(&bounds::evaluate_all(&p))?)
    })
}

/// Runs a scenario config and returns its report; `success` receives 1 when
/// every check in the report was met.
///
/// # Safety
/// `config_json` must be a NUL-terminated string; `report` and `success` writable.
#[no_mangle]
pub unsafe extern "C" fn mrd_run_scenario(
    config_json: *const c_char,
    report: *mut *mut c_char,
    success: *mut i32,
) -> MrdStatus {
    guard(|| {
        null_check(report, "report")?;
        null_check(success, "success")?;
        let cfg = ScenarioConfig::from_json(read_str(config_json, "config_json")?)?;
        let rep = cfg.run()?;
        *success = i32::from(rep.success);
        put_string(report, serde_json::to_string(&rep)?)
    })
}

/// Starts a simulator on `scheme`. `file_json` is a JSON array of symbols
/// (coefficient arrays); null draws a random file from `seed`.
///
/// # Safety
/// `scheme` must be live; `file_json` null or NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mrd_sim_new(
    scheme: *const MrdScheme,
    file_json: *const c_char,
    seed: u64,
    verification: bool,
    out: *mut *mut MrdSim,
) -> MrdStatus {
    guard(|| {
        null_check(scheme, "scheme")?;
        null_check(out, "out")?;
        let scheme = (*scheme).0.clone();
        let file: Vec<ExtElem> = if file_json.is_null() {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            (0..scheme.file_len()).map(|_| scheme.field().random(&mut rng)).collect()
        } else {
            let file: Vec<ExtElem> = serde_json::from_str(read_str(file_json, "file_json")?)?;
            for x in &file {
                scheme.field().check(x)?;
            }
            file
        };
        let state = SystemState::new(scheme, file, seed, verification)?;
        *out = Box::into_raw(Box::new(MrdSim(state)));
        Ok(())
    })
}

/// # Safety
/// `sim` must come from [`mrd_sim_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mrd_sim_free(sim: *mut MrdSim) {
    if !sim.is_null() {
        drop(Box::from_raw(sim));
    }
}

/// Applies one event (scenario syntax, 1-based) and returns its record.
/// Failures inside the event are reported in the record, not the status.
///
/// # Safety
/// `sim` must be live; `event_json` NUL-terminated; `record` writable.
#[no_mangle]
pub unsafe extern "C" fn mrd_sim_apply(sim: *mut MrdSim, event_json: *const c_char, record: *mut *mut c_char) -> MrdStatus {
    guard(|| {
        null_check(sim, "sim")?;
        null_check(record, "record")?;
        let state = &mut (*sim).0;
        let event: Event = serde_json::from_str(read_str(event_json, "event_json")?)?;
        let event = validate_event(state.scheme(), &event)?;
        let r = state.apply(event);
        let shown = EventRecord {
            seq: r.seq + 1,
            event: r.event.shifted(1),
            outcome: r.outcome.shifted(1),
            aggregate_rank: r.aggregate_rank,
        };
        put_string(record, serde_json::to_string(&shown)?)
    })
}

/// Rank over the base field of the difference between stored and true
/// content, or 0 for a null handle.
///
/// # Safety
/// `sim` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn mrd_sim_aggregate_rank(sim: *const MrdSim) -> usize {
    sim.as_ref().map_or(0, |s| s.0.aggregate_error_rank())
}
