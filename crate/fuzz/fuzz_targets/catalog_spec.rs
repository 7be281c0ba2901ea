#![no_main]

use libfuzzer_sys::fuzz_target;
use semilab::spec::{parse_number, CatalogSpec};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_number(s);
        if let Ok(spec) = CatalogSpec::parse(s) {
            let _ = spec.to_symbol();
            let _ = spec.to_amplitude();
        }
    }
});
