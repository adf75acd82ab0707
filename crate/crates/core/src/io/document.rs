use crate::dp::{DualForm, VariableSet};
use crate::io::parse::{parse_form, ParseError};
use crate::linalg::Field;

/// Values a form file asserts about its own analysis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expectations {
    pub mu_i: Option<usize>,
    pub mu_j: Option<usize>,
    pub generic: Option<bool>,
}

/// A parsed form file:
///
/// ```text
/// # comment
/// label: example
/// vars: W X Y Z
/// socle: Z
/// field: Q
/// form: Y^[4]Z^[7]+Y^[3]Z^[8]+X^[4]Y^[4]Z^[3]+X^[4]Z^[7]+WZ^[10]
/// expect.muI: 9
/// ```
///
/// `vars` and `form` are required. `socle` defaults to the variable named
/// `Z` (else the last), `w` to the variable named `W` (else the first),
/// `field` to `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormDocument {
    pub label: Option<String>,
    pub cite: Option<String>,
    pub notes: Vec<String>,
    /// Variables as declared.
    pub declared: Vec<String>,
    /// Variables reordered with `W` first and `Z` last.
    pub vars: VariableSet,
    pub field: Field,
    pub form: DualForm,
    pub expect: Expectations,
}

fn at(line: usize, error: ParseError) -> ParseError {
    ParseError::AtLine {
        line,
        error: Box::new(error),
    }
}

/// Parses a field spec: `Q` or `p=<prime>` with the prime below `2^63`.
pub fn parse_field(text: &str) -> Result<Field, ParseError> {
    let t = text.trim();
    if t == "Q" || t == "q" {
        return Ok(Field::Rational);
    }
    let Some(p) = t.strip_prefix("p=").map(str::trim) else {
        return Err(ParseError::Header(format!(
            "unknown field '{t}' (expected Q or p=<prime>)"
        )));
    };
    let p: u64 = p.parse().map_err(|_| ParseError::Header(format!("bad prime '{p}'")))?;
    if p >= 1 << 63 {
        return Err(ParseError::Header(format!("prime {p} is too large")));
    }
    Field::prime(p).map_err(|_| ParseError::Header(format!("{p} is not prime")))
}

pub fn parse_document(text: &str) -> Result<FormDocument, ParseError> {
    parse_document_with(text, None)
}

/// `parse_document`, with `field` replacing the file's own field line.
pub fn parse_document_with(text: &str, field: Option<Field>) -> Result<FormDocument, ParseError> {
    let mut fields: Vec<(usize, &str, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(at(
                i + 1,
                ParseError::Header(format!("expected 'key: value', got '{line}'")),
            ));
        };
        let key = key.trim();
        let repeatable = key == "note";
        if !repeatable && fields.iter().any(|(_, k, _)| *k == key) {
            return Err(at(i + 1, ParseError::Header(format!("duplicate key '{key}'"))));
        }
        fields.push((i + 1, key, value.trim()));
    }
    let find = |k: &str| fields.iter().find(|(_, key, _)| *key == k).map(|&(l, _, v)| (l, v));

    for &(line, key, _) in &fields {
        if !matches!(
            key,
            "label"
                | "cite"
                | "note"
                | "vars"
                | "socle"
                | "w"
                | "field"
                | "form"
                | "expect.muI"
                | "expect.muJ"
                | "expect.generic"
        ) {
            return Err(at(line, ParseError::Header(format!("unknown key '{key}'"))));
        }
    }

    let (vline, vtext) = find("vars").ok_or(ParseError::Header("missing 'vars:' line".into()))?;
    let declared: Vec<String> = vtext
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect();
    if declared.len() < 2 {
        return Err(at(vline, ParseError::Header("need at least two variables".into())));
    }
    let pick = |key: &str, named: &str, fallback: &String| -> Result<String, ParseError> {
        match find(key) {
            Some((_, v)) if declared.iter().any(|d| d == v) => Ok(v.to_string()),
            Some((l, v)) => Err(at(l, ParseError::Header(format!("'{v}' is not a declared variable")))),
            None if declared.iter().any(|d| d == named) => Ok(named.to_string()),
            None => Ok(fallback.clone()),
        }
    };
    let z = pick("socle", "Z", declared.last().expect("two variables"))?;
    let w = pick("w", "W", &declared[0])?;
    let vars = VariableSet::with_roles(&declared, &w, &z).map_err(|e| match e {
        crate::error::Error::Parse(p) => at(vline, p),
        other => at(vline, ParseError::Header(other.to_string())),
    })?;

    let field = match (field, find("field")) {
        (Some(f), _) => f,
        (None, Some((l, v))) => parse_field(v).map_err(|e| at(l, e))?,
        (None, None) => Field::Rational,
    };
    let (fline, ftext) = find("form").ok_or(ParseError::Header("missing 'form:' line".into()))?;
    let form = parse_form(ftext, &vars, field).map_err(|e| at(fline, e))?;

    let number = |key: &str| -> Result<Option<usize>, ParseError> {
        find(key)
            .map(|(l, v)| {
                v.parse()
                    .map_err(|_| at(l, ParseError::Header(format!("'{key}' needs a count, got '{v}'"))))
            })
            .transpose()
    };
    let generic = find("expect.generic")
        .map(|(l, v)| match v {
            "true" | "yes" => Ok(true),
            "false" | "no" => Ok(false),
            _ => Err(at(
                l,
                ParseError::Header(format!("'expect.generic' needs true/false, got '{v}'")),
            )),
        })
        .transpose()?;

    Ok(FormDocument {
        label: find("label").map(|(_, v)| v.to_string()),
        cite: find("cite").map(|(_, v)| v.to_string()),
        notes: fields
            .iter()
            .filter(|(_, k, _)| *k == "note")
            .map(|(_, _, v)| v.to_string())
            .collect(),
        declared,
        vars,
        field,
        form,
        expect: Expectations {
            mu_i: number("expect.muI")?,
            mu_j: number("expect.muJ")?,
            generic,
        },
    })
}

/// Renders a document back into the file format; `parse_document` of the
/// result reproduces it.
pub fn render_document(doc: &FormDocument) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: &str| {
        out.push_str(k);
        out.push_str(": ");
        out.push_str(v);
        out.push('\n');
    };
    if let Some(l) = &doc.label {
        line("label", l);
    }
    if let Some(c) = &doc.cite {
        line("cite", c);
    }
    for n in &doc.notes {
        line("note", n);
    }
    line("vars", &doc.declared.join(" "));
    line("w", doc.vars.dual_name(doc.vars.w()));
    line("socle", doc.vars.dual_name(doc.vars.z()));
    line("field", &doc.field.to_string());
    line("form", &doc.form.render(&doc.vars));
    if let Some(m) = doc.expect.mu_i {
        line("expect.muI", &m.to_string());
    }
    if let Some(m) = doc.expect.mu_j {
        line("expect.muJ", &m.to_string());
    }
    if let Some(g) = doc.expect.generic {
        line("expect.generic", if g { "true" } else { "false" });
    }
    out
}
