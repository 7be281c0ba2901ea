#![no_main]

use libfuzzer_sys::fuzz_target;
use semilab::{Config, Experiment};

fuzz_target!(|data: &[u8]| {
    let s = String::from_utf8_lossy(data);
    if let Ok(config) = Config::parse(&s) {
        let _ = Experiment::from_config(&config);
    }
});
