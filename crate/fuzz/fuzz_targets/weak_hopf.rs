#![no_main]
use libfuzzer_sys::fuzz_target;
use wmha_core::wmha::weak_hopf::{verify_table_coproduct, weak_hopf_adapter, WeakHopfJson};
use wmha_core::wmha::VerifyOptions;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = WeakHopfJson::from_json(text) else { return };
    if spec.algebra.basis.len() > 4 {
        return;
    }
    let Ok(input) = spec.build() else { return };
    let opts = VerifyOptions { extension_samples: 1, transforms: false, cap: 4096, ..VerifyOptions::default() };
    let (_, plain) = verify_table_coproduct(&input, &opts);
    let adapted = weak_hopf_adapter(&input, &opts);
    // The adapter only ever narrows a positive verdict.
    if adapted.verdict.is_positive() {
        assert!(plain.verdict.is_positive());
    }
});
