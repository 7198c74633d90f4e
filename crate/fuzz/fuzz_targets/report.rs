#![no_main]
use libfuzzer_sys::fuzz_target;
use wmha_core::report::Report;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(report) = Report::from_json(text) else { return };
    assert_eq!(Report::from_json(&report.to_json()).ok(), Some(report.clone()));
    let _ = report.to_text();
});
