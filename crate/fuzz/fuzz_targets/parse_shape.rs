#![no_main]

use apolar::theorems::{sample, ShapeSource};
use libfuzzer_sys::fuzz_target;

// A shape that parses either draws a form or reports it cannot.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(source) = text.parse::<ShapeSource>() {
        let _ = sample(&source, 0, 0);
    }
});
