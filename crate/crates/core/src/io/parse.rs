use num_bigint::BigInt;
use thiserror::Error;

use crate::dp::{DualForm, Exponent, VariableSet};
use crate::linalg::Field;

/// Errors from the form grammar and the document format. Positions are
/// byte offsets into the parsed text.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unknown variable '{name}' at {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("malformed exponent at {pos}: {detail}")]
    MalformedExponent { pos: usize, detail: String },
    #[error("form is zero")]
    ZeroForm,
    #[error("unexpected '{ch}' at {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("bad coefficient at {pos}: {detail}")]
    BadCoefficient { pos: usize, detail: String },
    #[error("{0}")]
    Header(String),
    #[error("line {line}: {error}")]
    AtLine { line: usize, error: Box<ParseError> },
}

impl ParseError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::UnknownVariable { .. } => "unknown-variable",
            ParseError::MalformedExponent { .. } => "malformed-exponent",
            ParseError::ZeroForm => "zero-form",
            ParseError::UnexpectedChar { .. } => "unexpected-char",
            ParseError::UnexpectedEnd => "unexpected-end",
            ParseError::BadCoefficient { .. } => "bad-coefficient",
            ParseError::Header(_) => "bad-header",
            ParseError::AtLine { error, .. } => error.code(),
        }
    }
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    vars: &'a VariableSet,
    field: Field,
    end: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.end, |&(p, _)| p)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.at += 1;
        c
    }

    fn unexpected(&self) -> ParseError {
        match self.chars.get(self.at) {
            Some(&(pos, ch)) => ParseError::UnexpectedChar { ch, pos },
            None => ParseError::UnexpectedEnd,
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.at += 1;
        }
        s
    }

    fn coefficient(&mut self) -> Result<Option<(BigInt, BigInt)>, ParseError> {
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(None);
        }
        let pos = self.pos();
        let num: BigInt = self.digits().parse().expect("digits");
        let den = if self.peek() == Some('/') {
            self.at += 1;
            let d = self.digits();
            if d.is_empty() {
                return Err(ParseError::BadCoefficient {
                    pos,
                    detail: "missing denominator".into(),
                });
            }
            d.parse().expect("digits")
        } else {
            BigInt::from(1)
        };
        if den == BigInt::from(0) {
            return Err(ParseError::BadCoefficient {
                pos,
                detail: "zero denominator".into(),
            });
        }
        Ok(Some((num, den)))
    }

    /// Longest declared name that is a prefix of the letter-digit run here.
    fn variable(&mut self) -> Result<Option<usize>, ParseError> {
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return Ok(None);
        }
        let pos = self.pos();
        let mut run = String::new();
        run.push(self.chars[self.at].1);
        let mut k = self.at + 1;
        while let Some(&(_, c)) = self.chars.get(k).filter(|(_, c)| c.is_ascii_digit()) {
            run.push(c);
            k += 1;
        }
        for len in (1..=run.len()).rev() {
            if let Some(i) = self.vars.index_of(&run[..len]) {
                self.at += len;
                return Ok(Some(i));
            }
        }
        Err(ParseError::UnknownVariable { name: run, pos })
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        let pos = self.pos();
        self.at += 1;
        let malformed = |detail: &str| ParseError::MalformedExponent {
            pos,
            detail: detail.into(),
        };
        if self.bump() != Some('[') {
            return Err(malformed("expected '[' after '^'"));
        }
        let d = self.digits();
        if d.is_empty() {
            return Err(malformed("expected digits"));
        }
        if self.bump() != Some(']') {
            return Err(malformed("expected ']'"));
        }
        d.parse::<u32>().map_err(|_| malformed("exponent too large"))
    }

    fn term(&mut self, negative: bool, form: &mut DualForm) -> Result<(), ParseError> {
        let coeff_pos = self.pos();
        let coeff = self.coefficient()?;
        if coeff.is_some() && matches!(self.peek(), Some('*' | '.')) {
            self.at += 1;
        }
        let mut exps = vec![0u32; self.vars.len()];
        let mut factors = 0;
        while let Some(v) = self.variable()? {
            let pos = self.pos();
            let k = self.exponent()?;
            exps[v] = exps[v].checked_add(k).ok_or(ParseError::MalformedExponent {
                pos,
                detail: "exponent too large".into(),
            })?;
            factors += 1;
            if matches!(self.peek(), Some('*' | '.'))
                && self
                    .chars
                    .get(self.at + 1)
                    .is_some_and(|(_, c)| c.is_ascii_alphabetic())
            {
                self.at += 1;
            }
        }
        if factors == 0 {
            return Err(self.unexpected());
        }
        if exps.iter().try_fold(0u32, |a, &b| a.checked_add(b)).is_none() {
            return Err(ParseError::MalformedExponent {
                pos: coeff_pos,
                detail: "total degree too large".into(),
            });
        }
        let (num, den) = coeff.unwrap_or((BigInt::from(1), BigInt::from(1)));
        let num = if negative { -num } else { num };
        let c = self.field.from_ratio(&num, &den).ok_or(ParseError::BadCoefficient {
            pos: coeff_pos,
            detail: format!("denominator vanishes in {}", self.field),
        })?;
        form.add_term(Exponent::new(exps), c);
        Ok(())
    }
}

/// Parses `form := sign? term (sign term)*`, `term := coeff? factor+`,
/// `factor := name ('^[' uint ']')?`. Whitespace is ignored everywhere.
/// Repeated variables in a term add exponents; repeated monomials add
/// coefficients. A form that sums to zero is an error.
pub fn parse_form(text: &str, vars: &VariableSet, field: Field) -> Result<DualForm, ParseError> {
    let mut cur = Cursor {
        chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        at: 0,
        vars,
        field,
        end: text.len(),
    };
    let mut form = DualForm::zero(vars.len(), field);
    let mut negative = match cur.peek() {
        Some('-') => {
            cur.at += 1;
            true
        }
        Some('+') => {
            cur.at += 1;
            false
        }
        None => return Err(ParseError::UnexpectedEnd),
        _ => false,
    };
    loop {
        cur.term(negative, &mut form)?;
        negative = match cur.bump() {
            None => break,
            Some('+') => false,
            Some('-') => true,
            Some(_) => {
                cur.at -= 1;
                return Err(cur.unexpected());
            }
        };
    }
    if form.is_zero() {
        return Err(ParseError::ZeroForm);
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> VariableSet {
        VariableSet::new(&["W", "X", "Y", "Z"]).unwrap()
    }

    fn q(text: &str) -> Result<DualForm, ParseError> {
        parse_form(text, &vars(), Field::Rational)
    }

    #[test]
    fn parses_and_renders() {
        let f = q("X^[8]Y^[2] + X^[3]Y^[3]Z^[4] + X^[2]YZ^[7] + WZ^[9]").unwrap();
        assert_eq!(f.degree(), Some(10));
        assert_eq!(f.len(), 4);
        assert_eq!(q(&f.render(&vars())).unwrap(), f);
    }

    #[test]
    fn coefficients() {
        let f = q("-3/4 X^[2] + 2*Y Z - 1/2.W^[2]").unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(q(&f.render(&vars())).unwrap(), f);
    }

    #[test]
    fn repeated_variables_add_exponents_without_binomials() {
        assert_eq!(q("XX^[2]").unwrap(), q("X^[3]").unwrap());
        assert_eq!(q("XY+YX").unwrap(), q("2XY").unwrap());
    }

    #[test]
    fn error_codes() {
        assert_eq!(q("X^[2]+Q").unwrap_err().code(), "unknown-variable");
        assert_eq!(q("X^2").unwrap_err().code(), "malformed-exponent");
        assert_eq!(q("X^[]").unwrap_err().code(), "malformed-exponent");
        assert_eq!(q("XY-YX").unwrap_err(), ParseError::ZeroForm);
        assert_eq!(q("X+").unwrap_err(), ParseError::UnexpectedEnd);
        assert_eq!(q("").unwrap_err(), ParseError::UnexpectedEnd);
        assert_eq!(q("3").unwrap_err(), ParseError::UnexpectedEnd);
        assert_eq!(q("1/0X").unwrap_err().code(), "bad-coefficient");
        assert_eq!(q("X)").unwrap_err().code(), "unexpected-char");
    }

    #[test]
    fn longest_match_names() {
        let v = VariableSet::new(&["W", "X1", "X12", "Z"]).unwrap();
        let f = parse_form("X12X1Z", &v, Field::Rational).unwrap();
        let (e, _) = f.terms().next().unwrap();
        assert_eq!(e.as_slice(), &[0, 1, 1, 1]);
    }

    #[test]
    fn prime_field_coefficients() {
        let p = Field::prime(7).unwrap();
        assert!(parse_form("1/7X", &vars(), p).is_err());
        assert_eq!(parse_form("7X+Y", &vars(), p).unwrap().len(), 1);
    }
}
