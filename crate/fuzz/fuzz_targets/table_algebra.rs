#![no_main]
use libfuzzer_sys::fuzz_target;
use wmha_core::algebra::{check_algebra, Algebra, TableAlgebraJson};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = TableAlgebraJson::from_json(text) else { return };
    if spec.basis.len() > 16 {
        return;
    }
    if let Ok(alg) = spec.build("fuzz") {
        let _ = check_algebra(&alg, &alg.window(0));
        // A built table serializes to a spec that builds the same table.
        let again = TableAlgebraJson::from_algebra(&alg);
        assert!(again.build("fuzz").is_ok());
    }
});
