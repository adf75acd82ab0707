//! Worked examples with their expected generator counts.

/// Why an entry's expectations are informational rather than binding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Caveat {
    /// The form as written is malformed; this is a repaired reading.
    Transcribed(&'static str),
    /// The stated counts and the stated verdicts disagree.
    ProseDiscrepancy(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusForm {
    pub name: String,
    pub vars: &'static [&'static str],
    pub text: String,
    /// Expected `(μ(I), μ(J))`.
    pub expect_mu: Option<(usize, usize)>,
    pub expect_generic: Option<bool>,
    /// The form has an `X_i Z^[j-1]` term and is analyzed after removing it.
    pub needs_normalization: bool,
    pub caveat: Option<Caveat>,
}

impl CorpusForm {
    /// Expectations that must match exactly.
    pub fn is_binding(&self) -> bool {
        self.caveat.is_none()
    }

    /// Renders as a form file.
    pub fn to_document(&self) -> String {
        let mut out = format!("label: {}\nvars: {}\n", self.name, self.vars.join(" "));
        out.push_str(&format!("form: {}\n", self.text));
        if let Some((i, j)) = self.expect_mu {
            out.push_str(&format!("expect.muI: {i}\nexpect.muJ: {j}\n"));
        }
        if let Some(g) = self.expect_generic {
            out.push_str(&format!("expect.generic: {g}\n"));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub label: &'static str,
    pub summary: &'static str,
    pub forms: Vec<CorpusForm>,
}

const WXYZ: &[&str] = &["W", "X", "Y", "Z"];
const WTXYZ: &[&str] = &["W", "T", "X", "Y", "Z"];

/// `prefix·(t_1 + t_2 + ..)` written out term by term; a leading
/// coefficient of a term stays in front.
fn block(prefix: &str, sum: &str) -> String {
    sum.split('+')
        .map(|t| {
            let t = t.trim();
            let split = t.find(|c: char| c.is_ascii_alphabetic()).expect("term has a variable");
            let (coeff, rest) = t.split_at(split);
            format!("{coeff}{prefix}{rest}")
        })
        .collect::<Vec<_>>()
        .join("+")
}

fn join(parts: &[&str]) -> String {
    parts.join("+")
}

fn form(
    name: &str,
    vars: &'static [&'static str],
    text: String,
    mu: Option<(usize, usize)>,
    generic: Option<bool>,
) -> CorpusForm {
    CorpusForm {
        name: name.to_string(),
        vars,
        text,
        expect_mu: mu,
        expect_generic: generic,
        needs_normalization: false,
        caveat: None,
    }
}

/// `G` of the sweep entry, before any shift.
pub fn sweep_base() -> String {
    join(&[
        "Y^[3]Z^[10]+Y^[4]Z^[9]+Y^[5]Z^[8]+Y^[2]Z^[11]",
        &block("X^[6]", "Y^[4]Z^[3]+Y^[2]Z^[5]+Z^[7]"),
        &block("X^[7]", "Y^[3]Z^[3]+YZ^[5]+Z^[6]"),
    ])
}

/// Every displayed example form, plus the shifts of the sweep entry.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();

    let mut unshifted = form(
        "shift-pair/F",
        WXYZ,
        "X^[6]Y^[2]+XY^[3]Z^[4]+YZ^[7]+WZ^[7]".into(),
        Some((9, 5)),
        Some(true),
    );
    unshifted.needs_normalization = true;
    out.push(CorpusEntry {
        label: "shift-pair",
        summary: "F' = X^[2]·G and its two-fold X-derivative F, both generic",
        forms: vec![
            form(
                "shift-pair/F'",
                WXYZ,
                "X^[8]Y^[2]+X^[3]Y^[3]Z^[4]+X^[2]YZ^[7]+WZ^[9]".into(),
                Some((13, 9)),
                Some(true),
            ),
            unshifted,
        ],
    });

    let conv = "Y^[6]Z^[2]+Y^[7]Z+Y^[8]+Z^[8]";
    out.push(CorpusEntry {
        label: "converse-of-restrict",
        summary: "F is not generic but its X-shift F' is",
        forms: vec![
            form(
                "converse-of-restrict/F",
                WXYZ,
                join(&["Y^[5]Z^[8]+Y^[4]Z^[9]", &block("X^[5]", conv), "WZ^[12]"]),
                Some((11, 8)),
                Some(false),
            ),
            form(
                "converse-of-restrict/F'",
                WXYZ,
                join(&["XY^[5]Z^[8]+XY^[4]Z^[9]", &block("X^[6]", conv), "WZ^[13]"]),
                Some((13, 9)),
                Some(true),
            ),
        ],
    });

    // X^t G + W Z^[12+t] and Y^t G + W Z^[12+t].
    let mut sweep = vec![form(
        "shift-sweep/t=0",
        WXYZ,
        join(&[&sweep_base(), "WZ^[12]"]),
        None,
        Some(false),
    )];
    for t in 1..=4 {
        sweep.push(form(
            &format!("shift-sweep/X^{t}"),
            WXYZ,
            join(&[&block(&format!("X^[{t}]"), &sweep_base()), &format!("WZ^[{}]", 12 + t)]),
            None,
            Some(t == 4),
        ));
    }
    for t in 1..=5 {
        sweep.push(form(
            &format!("shift-sweep/Y^{t}"),
            WXYZ,
            join(&[&block(&format!("Y^[{t}]"), &sweep_base()), &format!("WZ^[{}]", 12 + t)]),
            None,
            Some(t == 5),
        ));
    }
    out.push(CorpusEntry {
        label: "shift-sweep",
        summary: "X^t G stays non-generic for t <= 3 and turns generic at t = 4; Y^t G at t = 5",
        forms: sweep,
    });

    let transcribed = Caveat::Transcribed("written with unbalanced parentheses; read homogeneously as shown");
    let mut c5 = vec![
        form(
            "codim-five/F",
            WTXYZ,
            "Y^[3]Z^[9]+Y^[4]Z^[8]+T^[3]Z^[9]+X^[3]Y^[4]Z^[4]T+X^[3]Z^[9]+WZ^[11]".into(),
            Some((14, 10)),
            Some(false),
        ),
        form(
            "codim-five/F'",
            WTXYZ,
            "XY^[3]Z^[9]+XY^[4]Z^[8]+XT^[3]Z^[9]+X^[4]Y^[4]Z^[4]T+X^[4]Z^[9]+WZ^[12]".into(),
            Some((16, 11)),
            Some(true),
        ),
    ];
    for f in &mut c5 {
        f.caveat = Some(transcribed);
    }
    out.push(CorpusEntry {
        label: "codim-five",
        summary: "five variables: t^4 obstructs F, while the X-shift F' is generic",
        forms: c5,
    });

    out.push(CorpusEntry {
        label: "large-block-exponent",
        summary: "a > p > every Y-degree in the block: not generic, beta = 7",
        forms: vec![form(
            "large-block-exponent",
            WXYZ,
            join(&[
                "Y^[10]Z^[5]+Y^[9]Z^[6]+Y^[6]Z^[9]",
                &block("X^[11]", "Y^[2]Z^[2]+Z^[4]"),
                "WZ^[14]",
            ]),
            Some((9, 6)),
            Some(false),
        )],
    });

    out.push(CorpusEntry {
        label: "coefficient-sensitivity",
        summary: "changing one coefficient from 1 to 2 flips genericity",
        forms: vec![
            form(
                "coefficient-sensitivity/c=1",
                WXYZ,
                join(&[
                    "Y^[3]Z^[8]+Y^[4]Z^[7]",
                    &block("X^[5]", "Y^[4]Z^[2]+Y^[3]Z^[3]+Z^[6]"),
                    "WZ^[10]",
                ]),
                Some((9, 5)),
                Some(true),
            ),
            form(
                "coefficient-sensitivity/c=2",
                WXYZ,
                join(&[
                    "Y^[3]Z^[8]+Y^[4]Z^[7]",
                    &block("X^[5]", "2.Y^[4]Z^[2]+Y^[3]Z^[3]+Z^[6]"),
                    "WZ^[10]",
                ]),
                Some((11, 8)),
                Some(false),
            ),
        ],
    });

    let g0 = "Y^[4]Z^[10]+Y^[3]Z^[11]";
    out.push(CorpusEntry {
        label: "single-block-generic",
        summary: "one block with deg_Y G_1 = p: generic",
        forms: vec![form(
            "single-block-generic",
            WXYZ,
            join(&[g0, &block("X^[8]", "Y^[4]Z^[2]+Y^[3]Z^[3]+Y^[2]Z^[4]+Z^[6]"), "WZ^[13]"]),
            Some((11, 7)),
            Some(true),
        )],
    });
    out.push(CorpusEntry {
        label: "single-block-nongeneric",
        summary: "one block with deg_Y G_1 > p: not generic",
        forms: vec![form(
            "single-block-nongeneric",
            WXYZ,
            join(&[
                g0,
                &block("X^[8]", "Y^[5]Z+Y^[4]Z^[2]+Y^[3]Z^[3]+Y^[2]Z^[4]+Z^[6]"),
                "WZ^[13]",
            ]),
            Some((11, 8)),
            Some(false),
        )],
    });

    let discrepancy = Caveat::ProseDiscrepancy(
        "the counts say the first form is not generic (9 < 6 + 4) and the second is (9 = 5 + 4); \
         the stated verdicts say the opposite",
    );
    let mut outside = vec![
        form(
            "single-block-outside-hypotheses/a",
            WXYZ,
            join(&["Y^[4]Z^[7]+Y^[3]Z^[8]", &block("X^[4]", "Y^[4]Z^[3]+Z^[7]"), "WZ^[10]"]),
            Some((9, 6)),
            None,
        ),
        form(
            "single-block-outside-hypotheses/b",
            WXYZ,
            join(&["Y^[4]Z^[7]", &block("X^[4]", "Y^[4]Z^[3]+Z^[7]"), "WZ^[10]"]),
            Some((9, 5)),
            None,
        ),
    ];
    for f in &mut outside {
        f.caveat = Some(discrepancy);
    }
    out.push(CorpusEntry {
        label: "single-block-outside-hypotheses",
        summary: "a < deg G_1, where the single-block criterion does not apply",
        forms: outside,
    });

    let g0 = "Y^[5]Z^[12]+Y^[4]Z^[13]";
    out.push(CorpusEntry {
        label: "tm2-converse-fails",
        summary: "both satisfy the hypotheses with deg_Y G_3 = p; one is generic, one is not",
        forms: vec![
            form(
                "tm2-converse-fails/generic",
                WXYZ,
                join(&[
                    g0,
                    &block("X^[8]", "Y^[4]Z^[5]+Y^[3]Z^[6]+Y^[2]Z^[7]+YZ^[8]"),
                    &block("X^[9]", "Y^[4]Z^[4]+Y^[3]Z^[5]"),
                    &block("X^[10]", "Y^[5]Z^[2]+Y^[4]Z^[3]+Y^[3]Z^[4]+Z^[7]"),
                    "WZ^[16]",
                ]),
                None,
                Some(true),
            ),
            form(
                "tm2-converse-fails/nongeneric",
                WXYZ,
                join(&[
                    g0,
                    &block("X^[7]", "Y^[4]Z^[6]+Y^[3]Z^[7]+Y^[2]Z^[8]+YZ^[9]"),
                    &block("X^[9]", "Y^[4]Z^[4]+Y^[3]Z^[5]"),
                    &block("X^[11]", "Y^[5]Z+Y^[4]Z^[2]+Y^[3]Z^[3]+Z^[6]"),
                    "WZ^[16]",
                ]),
                None,
                Some(false),
            ),
        ],
    });

    let b1 = block("X^[9]", "Y^[4]Z^[4]");
    let b2 = block("X^[10]", "Y^[6]Z+Y^[2]Z^[5]+Y^[3]Z^[4]+Z^[7]");
    out.push(CorpusEntry {
        label: "tm2-hypothesis-needed",
        summary: "F breaks deg_Y G_i < p and is generic; G meets it, has deg_Y G_n != p and is not",
        forms: vec![
            form(
                "tm2-hypothesis-needed/F",
                WXYZ,
                join(&[g0, &b1, &b2, &block("X^[12]", "YZ^[4]+Z^[5]"), "WZ^[16]"]),
                Some((15, 11)),
                Some(true),
            ),
            form(
                "tm2-hypothesis-needed/G",
                WXYZ,
                join(&[g0, &b1, &b2, "WZ^[16]"]),
                Some((15, 12)),
                Some(false),
            ),
        ],
    });

    out
}
