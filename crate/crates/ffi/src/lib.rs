//! C ABI for the guard solver.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free`. Every call returns an [`MgStatus`], and the
//! message of the last failure on the calling thread is available from
//! [`mg_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mirror_guard::cover::Mode;
use mirror_guard::pipeline::{render_svg, solve, Instance, Run, SvgOptions};
use mirror_guard::polygon::SimplePolygon;
use mirror_guard::scr::LineLevel;
use mirror_guard::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInstance = 3,
    LineBudgetExceeded = 4,
    OutOfRange = 5,
    Failed = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MgLineLevel {
    Full = 0,
    Pairs = 1,
    Visible = 2,
    Edges = 3,
}

/// A polygon with mirrors plus solver options.
pub struct MgInstance(Instance);

/// The result of [`mg_solve`].
pub struct MgRun {
    inst: Instance,
    run: Run,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: MgStatus, msg: &str) -> MgStatus {
    set_error(msg);
    status
}

fn from_error(e: &Error) -> MgStatus {
    let status = match e {
        Error::InvalidPolygon(_) | Error::InvalidInstance(_) | Error::NotAMirror(_) => MgStatus::InvalidInstance,
        Error::LineBudgetExceeded(_) => MgStatus::LineBudgetExceeded,
        _ => MgStatus::Failed,
    };
    fail(status, &e.to_string())
}

fn guarded(f: impl FnOnce() -> MgStatus) -> MgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(MgStatus::Panic, "internal panic"),
    }
}

fn give_string(s: String, out: *mut *mut c_char) -> MgStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            MgStatus::Ok
        }
        Err(_) => fail(MgStatus::Failed, "output contains a NUL byte"),
    }
}

/// Message of the last failed call on this thread; empty if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a JSON instance: `{"vertices": [[x, y], ...], "mirrors": [...],
/// "options": {...}}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_instance_from_json(json: *const c_char, out: *mut *mut MgInstance) -> MgStatus {
    guarded(|| {
        if json.is_null() || out.is_null() {
            return fail(MgStatus::NullPointer, "null argument");
        }
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            return fail(MgStatus::InvalidUtf8, "instance is not UTF-8");
        };
        match Instance::from_json(text) {
            Ok(i) => {
                *out = Box::into_raw(Box::new(MgInstance(i)));
                MgStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Builds an instance from `n` integer vertices given as `xy[2 * i]`,
/// `xy[2 * i + 1]` and `n_mirrors` mirror edge indices (edge `i` runs
/// from vertex `i` to vertex `i + 1`). Options start at their defaults.
///
/// # Safety
/// `xy` must hold `2 * n` values, `mirrors` `n_mirrors` values (it may be
/// null when `n_mirrors` is 0), and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mg_instance_new(
    xy: *const i64,
    n: usize,
    mirrors: *const usize,
    n_mirrors: usize,
    out: *mut *mut MgInstance,
) -> MgStatus {
    guarded(|| {
        if xy.is_null() || out.is_null() || (mirrors.is_null() && n_mirrors > 0) {
            return fail(MgStatus::NullPointer, "null argument");
        }
        let flat = std::slice::from_raw_parts(xy, 2 * n);
        let coords: Vec<[i64; 2]> = flat.chunks_exact(2).map(|c| [c[0], c[1]]).collect();
        let m = if n_mirrors == 0 { &[][..] } else { std::slice::from_raw_parts(mirrors, n_mirrors) };
        if let Some(&bad) = m.iter().find(|&&e| e >= n) {
            return fail(MgStatus::InvalidInstance, &format!("mirror edge {bad} out of range"));
        }
        match SimplePolygon::from_coords(&coords, Some(m)) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(MgInstance(Instance::new(p, Default::default()))));
                MgStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `inst` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mg_instance_free(inst: *mut MgInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Non-zero `direct_only` ignores the mirrors.
///
/// # Safety
/// `inst` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn mg_instance_set_direct_only(inst: *mut MgInstance, direct_only: c_int) -> MgStatus {
    let Some(i) = inst.as_mut() else {
        return fail(MgStatus::NullPointer, "null instance");
    };
    i.0.options.mode = if direct_only != 0 { Mode::DirectOnly } else { Mode::Reflection };
    MgStatus::Ok
}

/// # Safety
/// `inst` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn mg_instance_set_line_level(inst: *mut MgInstance, level: MgLineLevel, cap: usize) -> MgStatus {
    let Some(i) = inst.as_mut() else {
        return fail(MgStatus::NullPointer, "null instance");
    };
    i.0.options.line_level = match level {
        MgLineLevel::Full => LineLevel::Full,
        MgLineLevel::Pairs => LineLevel::Pairs,
        MgLineLevel::Visible => LineLevel::Visible,
        MgLineLevel::Edges => LineLevel::Edges,
    };
    if cap > 0 {
        i.0.options.line_cap = cap;
    }
    MgStatus::Ok
}

/// Exact cover with at most `cap` candidate subsets; 0 disables it.
///
/// # Safety
/// `inst` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn mg_instance_set_exact_cover(inst: *mut MgInstance, cap: usize) -> MgStatus {
    let Some(i) = inst.as_mut() else {
        return fail(MgStatus::NullPointer, "null instance");
    };
    i.0.options.exact_cover = cap > 0;
    if cap > 0 {
        i.0.options.exact_cap = cap;
    }
    MgStatus::Ok
}

/// Sampled coverage check after solving; 0 samples skips it.
///
/// # Safety
/// `inst` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn mg_instance_set_verify(inst: *mut MgInstance, samples: usize, seed: u64) -> MgStatus {
    let Some(i) = inst.as_mut() else {
        return fail(MgStatus::NullPointer, "null instance");
    };
    i.0.options.samples = samples;
    i.0.options.seed = seed;
    MgStatus::Ok
}

/// Runs the solver. The instance stays owned by the caller.
///
/// # Safety
/// `inst` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_solve(inst: *const MgInstance, out: *mut *mut MgRun) -> MgStatus {
    guarded(|| {
        let (Some(i), false) = (inst.as_ref(), out.is_null()) else {
            return fail(MgStatus::NullPointer, "null argument");
        };
        match solve(&i.0) {
            Ok(run) => {
                *out = Box::into_raw(Box::new(MgRun { inst: i.0.clone(), run }));
                MgStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `run` must come from [`mg_solve`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mg_run_free(run: *mut MgRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

/// Number of chosen guards; 0 for a null handle.
///
/// # Safety
/// `run` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn mg_run_guard_count(run: *const MgRun) -> usize {
    run.as_ref().map_or(0, |r| r.run.solution.guards.len())
}

/// Guard `i` rounded to doubles.
///
/// # Safety
/// `run` must be a valid handle; `x` and `y` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mg_run_guard(run: *const MgRun, i: usize, x: *mut f64, y: *mut f64) -> MgStatus {
    let Some(r) = run.as_ref() else {
        return fail(MgStatus::NullPointer, "null run");
    };
    if x.is_null() || y.is_null() {
        return fail(MgStatus::NullPointer, "null output");
    }
    let Some(g) = r.run.solution.guards.get(i) else {
        return fail(MgStatus::OutOfRange, &format!("guard {i} out of range"));
    };
    let (gx, gy) = g.to_f64();
    *x = gx;
    *y = gy;
    MgStatus::Ok
}

/// 1 if verification ran and passed, 0 if it failed, -1 if it did not run.
///
/// # Safety
/// `run` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn mg_run_verified(run: *const MgRun) -> c_int {
    match run.as_ref().and_then(|r| r.run.report.verify.as_ref()) {
        Some(v) => v.pass as c_int,
        None => -1,
    }
}

/// The run report as JSON. Free the string with [`mg_string_free`].
///
/// # Safety
/// `run` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_run_report_json(run: *const MgRun, with_timings: c_int, out: *mut *mut c_char) -> MgStatus {
    let Some(r) = run.as_ref() else {
        return fail(MgStatus::NullPointer, "null run");
    };
    if out.is_null() {
        return fail(MgStatus::NullPointer, "null output");
    }
    give_string(r.run.report.to_json(with_timings != 0), out)
}

/// SVG drawing of the run; a negative `cell` draws no guarding-regions.
///
/// # Safety
/// `run` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_run_svg(run: *const MgRun, cell: i64, out: *mut *mut c_char) -> MgStatus {
    guarded(|| {
        let Some(r) = run.as_ref() else {
            return fail(MgStatus::NullPointer, "null run");
        };
        if out.is_null() {
            return fail(MgStatus::NullPointer, "null output");
        }
        let opts = SvgOptions { selected_scr: usize::try_from(cell).ok(), reflected: None };
        give_string(render_svg(&r.inst, &r.run, &opts), out)
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
