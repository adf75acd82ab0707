#![no_main]

use apolar::io::parse_field;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(f) = parse_field(text) {
            assert_eq!(parse_field(&f.to_string()), Ok(f));
        }
    }
});
