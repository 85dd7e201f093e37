//! C ABI over `polar_morse`.
//!
//! Jobs and reports are opaque handles owned by the caller and released with
//! the matching `*_free` function. Every fallible call returns a
//! [`PmStatus`]; on failure [`pm_last_error`] describes what went wrong on
//! the calling thread. Strings returned by the library are freed with
//! [`pm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use polar_morse::cli::{self, JobSpec, OutputFormat, Report};
use polar_morse::error::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Syntax error in the germ description.
    Parse = 3,
    /// Well-formed text describing an invalid germ or job.
    InvalidInput = 4,
    NoAdmissibleLinearForm = 5,
    /// The pipeline failed for reasons other than the input.
    Computation = 6,
    NotFound = 7,
    /// A Rust panic was caught at the boundary.
    Internal = 8,
}

/// Parsed germ description plus run options.
pub struct PmJob(JobSpec);

/// Result of running a job.
pub struct PmReport(Report);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> PmStatus {
    match e {
        Error::Parse { .. } => PmStatus::Parse,
        Error::InvalidGerm(_) | Error::NotLinearForm | Error::VariableMismatch { .. } => {
            PmStatus::InvalidInput
        }
        Error::NoAdmissibleLinearForm { .. } => PmStatus::NoAdmissibleLinearForm,
        _ => PmStatus::Computation,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (PmStatus, String)>) -> PmStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PmStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            PmStatus::Internal
        }
    }
}

fn fail(e: Error) -> (PmStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (PmStatus, String) {
    (PmStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (PmStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (PmStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Message for the most recent failure on this thread, or null. Valid until
/// the next library call on the same thread.
#[no_mangle]
pub extern "C" fn pm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn pm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a germ description.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pm_job_parse(text: *const c_char, out: *mut *mut PmJob) -> PmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(text, "text")?;
        let job = cli::parse_input(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(PmJob(job)));
        Ok(())
    })
}

/// # Safety
/// `job` must come from [`pm_job_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pm_job_free(job: *mut PmJob) {
    if !job.is_null() {
        drop(Box::from_raw(job));
    }
}

/// Seed for random linear forms.
///
/// # Safety
/// `job` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pm_job_set_seed(job: *mut PmJob, seed: u64) -> PmStatus {
    guard(|| {
        let job = job.as_mut().ok_or_else(|| null("job"))?;
        job.0.options.seed = seed;
        Ok(())
    })
}

/// Discards any given linear form and searches `attempts` seeded random
/// ones with coefficients in `[-bound, bound]` instead.
///
/// # Safety
/// `job` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pm_job_use_random_l(job: *mut PmJob, attempts: u32, bound: u32) -> PmStatus {
    guard(|| {
        let job = job.as_mut().ok_or_else(|| null("job"))?;
        if bound == 0 {
            return Err((PmStatus::InvalidInput, "coefficient bound must be positive".into()));
        }
        job.0.l = None;
        job.0.options.random_l_attempts = attempts;
        job.0.options.coefficient_bound = bound;
        Ok(())
    })
}

/// Runs the full pipeline. A report is produced even when some stratum
/// fails; check [`pm_report_success`].
///
/// # Safety
/// `job` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pm_job_run(job: *const PmJob, out: *mut *mut PmReport) -> PmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let job = job.as_ref().ok_or_else(|| null("job"))?;
        let report = cli::run(&job.0).map_err(fail)?;
        *out = Box::into_raw(Box::new(PmReport(report)));
        Ok(())
    })
}

/// # Safety
/// `report` must come from [`pm_job_run`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pm_report_free(report: *mut PmReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// True when every stratum has a Morse number and all checks passed.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pm_report_success(report: *const PmReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.success())
}

/// Number of positive-dimensional strata in the report.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pm_report_stratum_count(report: *const PmReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.strata.len())
}

/// Morse number of the named stratum.
///
/// # Safety
/// `report` must be a live handle, `stratum` a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pm_report_morse_number(
    report: *const PmReport,
    stratum: *const c_char,
    out: *mut u64,
) -> PmStatus {
    guard(|| {
        let report = report.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let name = read_str(stratum, "stratum")?;
        let s = report
            .0
            .strata
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| (PmStatus::NotFound, format!("no stratum named '{name}'")))?;
        match s.morse_number {
            Some(m) => {
                *out = m;
                Ok(())
            }
            None => Err((
                PmStatus::Computation,
                s.error.clone().unwrap_or_else(|| "no Morse number".into()),
            )),
        }
    })
}

unsafe fn render(report: *const PmReport, format: OutputFormat) -> *mut c_char {
    clear_error();
    match report.as_ref() {
        Some(r) => into_c_string(cli::render_report(&r.0, format)),
        None => {
            set_error("report is null");
            ptr::null_mut()
        }
    }
}

/// Structured (JSON) report; free with [`pm_string_free`].
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pm_report_to_json(report: *const PmReport) -> *mut c_char {
    render(report, OutputFormat::Structured)
}

/// Text table report; free with [`pm_string_free`].
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pm_report_to_text(report: *const PmReport) -> *mut c_char {
    render(report, OutputFormat::Text)
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
