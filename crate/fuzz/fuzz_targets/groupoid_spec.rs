#![no_main]
use libfuzzer_sys::fuzz_target;
use wmha_core::groupoid::{build_groupoid, validate_groupoid, GroupoidSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = GroupoidSpec::from_json(text) else { return };
    // Re-serialized specs parse back to themselves.
    assert_eq!(GroupoidSpec::from_json(&spec.to_json()).ok(), Some(spec.clone()));
    if text.len() > 2048 {
        return;
    }
    if let Ok(g) = build_groupoid(&spec) {
        let window = g.window(3);
        if window.len() <= 64 {
            let _ = validate_groupoid(g.as_ref(), &window);
        }
    }
});
