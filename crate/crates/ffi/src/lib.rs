//! C ABI for the `cfp` library.
//!
//! Instances and solutions are opaque heap handles released with their
//! `*_free` function. Every fallible call returns a [`CfpStatus`]; on
//! failure [`cfp_last_error_message`] describes the error for the calling
//! thread. Strings returned through `char **` are owned by the caller and
//! released with [`cfp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cfp::reduction::decide_cfp1_via_cfp2;
use cfp::solvers::{decide, DecisionQuery};
use cfp::{CfpError, Method, Objective, SolveOptions};

/// Opaque instance handle.
pub struct CfpInstance(cfp::CfpInstance);

/// Opaque solution handle.
pub struct CfpSolution(cfp::CfpSolution);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Guard = 5,
    UndefinedEfficacy = 6,
    Failed = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfpObjective {
    F1 = 0,
    Efficacy = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfpMethod {
    Oracle = 0,
    Exact = 1,
    Heuristic = 2,
}

/// Objective values of a solution. `efficacy_num / efficacy_den` is in
/// lowest terms and only meaningful when `efficacy_defined` is true.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CfpReport {
    pub n1: u64,
    pub e: u64,
    pub v: u64,
    pub f1: u64,
    pub efficacy_defined: bool,
    pub efficacy_num: u64,
    pub efficacy_den: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(CfpStatus, String);

impl From<CfpError> for Failure {
    fn from(e: CfpError) -> Self {
        let status = match e {
            CfpError::Parse { .. } => CfpStatus::Parse,
            CfpError::Guard(_) => CfpStatus::Guard,
            CfpError::UndefinedEfficacy => CfpStatus::UndefinedEfficacy,
            CfpError::InvalidArgument(_)
            | CfpError::ThresholdOutOfRange(_)
            | CfpError::DimensionMismatch(_)
            | CfpError::CellOutOfRange { .. }
            | CfpError::InvalidInstance(_) => CfpStatus::InvalidArgument,
            _ => CfpStatus::Failed,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CfpStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, records any error or panic, and returns the status.
fn guarded(f: impl FnOnce() -> Result<(), Failure>) -> CfpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            CfpStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            CfpStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(text: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if text.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| Failure(CfpStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn slice_arg<'a, T>(data: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    let c = CString::new(text).map_err(|_| Failure(CfpStatus::Failed, "output contains NUL".into()))?;
    write_out(out, c.into_raw(), "out")
}

fn options(threads: usize) -> SolveOptions {
    SolveOptions {
        threads: (threads > 0).then_some(threads),
        ..SolveOptions::default()
    }
}

fn report(r: &cfp::ObjectiveReport) -> CfpReport {
    let (defined, num, den) = match r.f2 {
        Some(q) => (true, q.num() as u64, q.den() as u64),
        None => (false, 0, 0),
    };
    CfpReport {
        n1: r.n1,
        e: r.e,
        v: r.v,
        f1: r.f1,
        efficacy_defined: defined,
        efficacy_num: num,
        efficacy_den: den,
    }
}

/// Message for the most recent failed call on this thread; empty after a
/// successful call. Valid until the next call into this library.
#[no_mangle]
pub extern "C" fn cfp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cfp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an instance from its text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfp_instance_parse(text: *const c_char, out: *mut *mut CfpInstance) -> CfpStatus {
    guarded(|| {
        let inst = cfp::io::parse_instance(str_arg(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(CfpInstance(inst))), "out")
    })
}

/// Builds an unweighted instance from `m * p` row-major bytes (0 or 1).
///
/// # Safety
/// `data` must point to `m * p` readable bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfp_instance_from_dense(
    data: *const u8,
    m: usize,
    p: usize,
    out: *mut *mut CfpInstance,
) -> CfpStatus {
    guarded(|| {
        let len = m
            .checked_mul(p)
            .ok_or_else(|| Failure(CfpStatus::InvalidArgument, "m * p overflows".into()))?;
        let cells = slice_arg(data, len, "data")?;
        if let Some(bad) = cells.iter().find(|&&b| b > 1) {
            return Err(Failure(
                CfpStatus::InvalidArgument,
                format!("entry {bad} is not 0 or 1"),
            ));
        }
        let matrix = cfp::BoolMatrix::from_fn(m, p, |i, j| cells[i * p + j] == 1)?;
        write_out(
            out,
            Box::into_raw(Box::new(CfpInstance(cfp::CfpInstance::new(matrix)))),
            "out",
        )
    })
}

/// # Safety
/// `inst` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cfp_instance_free(inst: *mut CfpInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of machines (rows); 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cfp_instance_machines(inst: *const CfpInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.machines())
}

/// Number of parts (columns); 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cfp_instance_parts(inst: *const CfpInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.parts())
}

/// Weighted number of ones; 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cfp_instance_n1(inst: *const CfpInstance) -> u64 {
    inst.as_ref().map_or(0, |i| i.0.n1())
}

/// Serializes an instance to its text format.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfp_instance_write(inst: *const CfpInstance, out: *mut *mut c_char) -> CfpStatus {
    guarded(|| write_string(out, cfp::io::write_instance(&handle(inst, "instance")?.0)))
}

/// Parses a solution and checks it against `inst`.
///
/// # Safety
/// `inst` must be a live handle, `text` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cfp_solution_parse(
    inst: *const CfpInstance,
    text: *const c_char,
    out: *mut *mut CfpSolution,
) -> CfpStatus {
    guarded(|| {
        let inst = handle(inst, "instance")?;
        let sol = cfp::io::parse_solution(str_arg(text, "text")?, &inst.0)?;
        write_out(out, Box::into_raw(Box::new(CfpSolution(sol))), "out")
    })
}

/// Builds a solution from cell labels, checking lengths and label range
/// against `inst`. Labels need not be canonical.
///
/// # Safety
/// The arrays must hold `machines` and `parts` readable elements.
#[no_mangle]
pub unsafe extern "C" fn cfp_solution_new(
    inst: *const CfpInstance,
    machine_cells: *const usize,
    machines: usize,
    part_cells: *const usize,
    parts: usize,
    out: *mut *mut CfpSolution,
) -> CfpStatus {
    guarded(|| {
        let inst = handle(inst, "instance")?;
        let sol = cfp::CfpSolution::new(
            slice_arg(machine_cells, machines, "machine_cells")?.to_vec(),
            slice_arg(part_cells, parts, "part_cells")?.to_vec(),
        );
        if let Some(v) = cfp::validate(&inst.0, &sol).into_iter().find(|v| v.is_structural()) {
            return Err(Failure(CfpStatus::InvalidArgument, v.to_string()));
        }
        write_out(out, Box::into_raw(Box::new(CfpSolution(sol))), "out")
    })
}

/// # Safety
/// `sol` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cfp_solution_free(sol: *mut CfpSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// Number of distinct cells used; 0 for a null handle.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cfp_solution_num_cells(sol: *const CfpSolution) -> usize {
    sol.as_ref().map_or(0, |s| s.0.num_cells())
}

/// Copies the machine labels into `out`, which must hold exactly `len`
/// elements, `len` being the machine count.
///
/// # Safety
/// `sol` must be a live handle and `out` writable for `len` elements.
#[no_mangle]
pub unsafe extern "C" fn cfp_solution_machine_cells(sol: *const CfpSolution, out: *mut usize, len: usize) -> CfpStatus {
    guarded(|| copy_labels(handle(sol, "solution")?.0.machine_cells(), out, len))
}

/// Copies the part labels into `out`; see [`cfp_solution_machine_cells`].
///
/// # Safety
/// `sol` must be a live handle and `out` writable for `len` elements.
#[no_mangle]
pub unsafe extern "C" fn cfp_solution_part_cells(sol: *const CfpSolution, out: *mut usize, len: usize) -> CfpStatus {
    guarded(|| copy_labels(handle(sol, "solution")?.0.part_cells(), out, len))
}

unsafe fn copy_labels(labels: &[usize], out: *mut usize, len: usize) -> Result<(), Failure> {
    if len != labels.len() {
        return Err(Failure(
            CfpStatus::InvalidArgument,
            format!("buffer holds {len} labels, solution has {}", labels.len()),
        ));
    }
    if len > 0 {
        if out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(labels.as_ptr(), out, len);
    }
    Ok(())
}

/// Serializes a solution to its text format.
///
/// # Safety
/// `sol` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfp_solution_write(sol: *const CfpSolution, out: *mut *mut c_char) -> CfpStatus {
    guarded(|| write_string(out, cfp::io::write_solution(&handle(sol, "solution")?.0)))
}

/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfp_evaluate(
    inst: *const CfpInstance,
    sol: *const CfpSolution,
    out: *mut CfpReport,
) -> CfpStatus {
    guarded(|| {
        let r = cfp::evaluate(&handle(inst, "instance")?.0, &handle(sol, "solution")?.0)?;
        write_out(out, report(&r), "out")
    })
}

/// Optimizes `inst`. `seed` is used by the heuristic only; `threads = 0`
/// uses all cores. `out_best` receives a new solution handle and
/// `out_report` (may be null) its report.
///
/// # Safety
/// `inst` must be a live handle; `out_best` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfp_solve(
    inst: *const CfpInstance,
    objective: CfpObjective,
    method: CfpMethod,
    seed: u64,
    threads: usize,
    out_best: *mut *mut CfpSolution,
    out_report: *mut CfpReport,
) -> CfpStatus {
    guarded(|| {
        let inst = handle(inst, "instance")?;
        if out_best.is_null() {
            return Err(null("out_best"));
        }
        let objective = match objective {
            CfpObjective::F1 => Objective::F1,
            CfpObjective::Efficacy => Objective::Efficacy,
        };
        let method = match method {
            CfpMethod::Oracle => Method::Oracle,
            CfpMethod::Exact => Method::Exact,
            CfpMethod::Heuristic => Method::Heuristic { seed, max_iters: 1000 },
        };
        let result = cfp::solve(&inst.0, objective, method, &options(threads))?;
        if !out_report.is_null() {
            out_report.write(report(&result.report));
        }
        write_out(out_best, Box::into_raw(Box::new(CfpSolution(result.best))), "out_best")
    })
}

/// Decides whether some solution has `e + v <= c`, with the exact solver
/// or, if `via_reduction`, through an efficacy solve on the extended matrix.
///
/// # Safety
/// `inst` must be a live handle; `out_yes` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfp_decide_f1(
    inst: *const CfpInstance,
    c: u64,
    via_reduction: bool,
    threads: usize,
    out_yes: *mut bool,
) -> CfpStatus {
    guarded(|| {
        let inst = handle(inst, "instance")?;
        let opts = options(threads);
        let decision = if via_reduction {
            decide_cfp1_via_cfp2(&inst.0, c, |i| cfp::solve(i, Objective::Efficacy, Method::Exact, &opts))?
        } else {
            decide(&inst.0, DecisionQuery::F1AtMost(c), Method::Exact, &opts)?
        };
        write_out(out_yes, decision.is_yes(), "out_yes")
    })
}
