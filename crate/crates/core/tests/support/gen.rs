//! Small random normal forms for comparing against the oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use apolar::dp::{DualForm, Exponent, VariableSet};
use apolar::io::{validate, NormalForm, ValidateOptions};
use apolar::linalg::Field;

pub fn vars(nvars: usize) -> VariableSet {
    let names: &[&str] = match nvars {
        2 => &["W", "Z"],
        3 => &["W", "Y", "Z"],
        4 => &["W", "X", "Y", "Z"],
        _ => panic!("2 to 4 variables"),
    };
    VariableSet::new(names).unwrap()
}

/// A valid normal form with `n = 2` or `3` and socle degree at most `max_j`,
/// over `field`. About one in five has the `W^[j]` shape.
pub fn small_form(seed: u64, max_j: u32, field: Field) -> NormalForm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let nvars = rng.gen_range(3..=4);
        let j = rng.gen_range(3..=max_j);
        let v = vars(nvars);
        let mut f = DualForm::zero(nvars, field);
        for _ in 0..rng.gen_range(1..=5) {
            let mut e = vec![0u32; nvars];
            let mut left = j;
            for slot in e.iter_mut().skip(1).take(nvars - 2) {
                *slot = rng.gen_range(0..=left);
                left -= *slot;
            }
            e[nvars - 1] = left;
            f.add_term(Exponent::new(e), field.from_i64(rng.gen_range(-3..=3)));
        }
        let w_exp = if rng.gen_bool(0.2) {
            Exponent::unit(nvars, 0).bump(0, j - 1)
        } else {
            Exponent::unit(nvars, 0).bump(nvars - 1, j - 1)
        };
        f.add_term(w_exp, field.from_i64(rng.gen_range(1..=3)));
        if let Ok(nf) = validate(&f, &v, ValidateOptions { auto_normalize: true }) {
            return nf;
        }
    }
}

/// The same form read over another field.
pub fn over(nf: &NormalForm, field: Field) -> NormalForm {
    let text = nf.form.render(&nf.vars);
    let f = apolar::io::parse_form(&text, &nf.vars, field).unwrap();
    validate(&f, &nf.vars, ValidateOptions::default()).unwrap()
}
