use std::ffi::{CStr, CString};
use std::ptr;

use polar_morse_ffi::*;

const UMBRELLA: &str = include_str!("../../core/fixtures/umbrella.germ");

unsafe fn parse(text: &str) -> (PmStatus, *mut PmJob) {
    let text = CString::new(text).unwrap();
    let mut job = ptr::null_mut();
    (pm_job_parse(text.as_ptr(), &mut job), job)
}

unsafe fn last_error() -> String {
    CStr::from_ptr(pm_last_error()).to_string_lossy().into_owned()
}

#[test]
fn umbrella_through_the_abi() {
    unsafe {
        let (status, job) = parse(UMBRELLA);
        assert_eq!(status, PmStatus::Ok);
        let mut report = ptr::null_mut();
        assert_eq!(pm_job_run(job, &mut report), PmStatus::Ok);
        assert!(pm_report_success(report));
        assert_eq!(pm_report_stratum_count(report), 2);

        let mut m = 0u64;
        for (name, expected) in [("V", 1), ("W", 5)] {
            let name = CString::new(name).unwrap();
            assert_eq!(pm_report_morse_number(report, name.as_ptr(), &mut m), PmStatus::Ok);
            assert_eq!(m, expected);
        }
        let missing = CString::new("Q").unwrap();
        assert_eq!(pm_report_morse_number(report, missing.as_ptr(), &mut m), PmStatus::NotFound);
        assert!(last_error().contains("'Q'"));

        let text = pm_report_to_text(report);
        assert!(CStr::from_ptr(text).to_str().unwrap().contains("W 2 8 3 5"));
        pm_string_free(text);
        let json = pm_report_to_json(report);
        let parsed = polar_morse::cli::parse_report(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(parsed.morse_pairs.len(), 2);
        pm_string_free(json);

        pm_report_free(report);
        pm_job_free(job);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let (status, job) = parse("vars x y\nf x^2 + w\n");
        assert_eq!(status, PmStatus::Parse);
        assert!(job.is_null());
        assert!(last_error().contains("undeclared variable 'w'"));

        let (status, _) = parse("vars x y\nstratum X dim 2 closure 0\nf x^2 + y^2\n");
        assert_eq!(status, PmStatus::InvalidInput);

        let mut out = ptr::null_mut();
        assert_eq!(pm_job_parse(ptr::null(), &mut out), PmStatus::NullPointer);
        assert_eq!(pm_job_run(ptr::null(), &mut ptr::null_mut()), PmStatus::NullPointer);
        assert!(!pm_report_success(ptr::null()));
        assert!(pm_report_to_json(ptr::null()).is_null());
        pm_job_free(ptr::null_mut());
        pm_report_free(ptr::null_mut());
        pm_string_free(ptr::null_mut());
    }
}

#[test]
fn seeded_random_forms_are_reproducible() {
    unsafe {
        let run = |seed| {
            let (_, job) = parse(UMBRELLA);
            assert_eq!(pm_job_use_random_l(job, 5, 10), PmStatus::Ok);
            assert_eq!(pm_job_set_seed(job, seed), PmStatus::Ok);
            let mut report = ptr::null_mut();
            assert_eq!(pm_job_run(job, &mut report), PmStatus::Ok);
            let json = pm_report_to_json(report);
            let s = CStr::from_ptr(json).to_str().unwrap().to_owned();
            pm_string_free(json);
            pm_report_free(report);
            pm_job_free(job);
            s
        };
        assert_eq!(run(11), run(11));
        let (_, job) = parse(UMBRELLA);
        assert_eq!(pm_job_use_random_l(job, 5, 0), PmStatus::InvalidInput);
        pm_job_free(job);
    }
}

#[test]
fn header_declares_the_api() {
    let header = include_str!("../include/polar_morse.h");
    for name in ["pm_job_parse", "pm_job_run", "pm_report_to_json", "pm_last_error", "PmStatus"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
