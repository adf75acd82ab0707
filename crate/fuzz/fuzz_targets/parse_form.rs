#![no_main]

use apolar::dp::VariableSet;
use apolar::io::parse_form;
use apolar::linalg::Field;
use libfuzzer_sys::fuzz_target;

// Whatever parses must render to text that parses back to the same form.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let vars = VariableSet::new(&["W", "X", "Y", "Z"]).unwrap();
    for field in [Field::Rational, Field::prime(65537).unwrap()] {
        if let Ok(f) = parse_form(text, &vars, field) {
            let again = parse_form(&f.render(&vars), &vars, field).expect("rendered form parses");
            assert_eq!(again, f);
        }
    }
});
