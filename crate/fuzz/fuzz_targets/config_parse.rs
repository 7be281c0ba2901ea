#![no_main]

use libfuzzer_sys::fuzz_target;
use semilab::config::MAX_CONFIG_LEN;
use semilab::Config;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(config) = Config::parse(s) {
            // canonical rendering re-parses to the same entries, unless
            // the added spacing pushed it past the size limit
            let rendered = config.render();
            if rendered.len() <= MAX_CONFIG_LEN {
                let again = Config::parse(&rendered).expect("rendered config parses");
                assert_eq!(config.kind(), again.kind());
                assert_eq!(config.echo(), again.echo());
            }
        }
    }
});
