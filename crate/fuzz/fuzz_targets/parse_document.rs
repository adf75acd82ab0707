#![no_main]

use apolar::io::{parse_document, render_document, validate, ValidateOptions};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = parse_document(text) {
        assert_eq!(parse_document(&render_document(&doc)).as_ref(), Ok(&doc));
        // Validation may reject, but never panics.
        let _ = validate(&doc.form, &doc.vars, ValidateOptions { auto_normalize: true });
    }
});
