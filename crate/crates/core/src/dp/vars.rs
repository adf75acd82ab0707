use crate::error::Result;
use crate::io::ParseError;

/// Ordered variable names. Index 0 plays the role of `W`/`w`, the last
/// index the role of `Z`/`z`; the indices in between are `X_1..X_{n-1}`.
///
/// Dual names are stored as declared; ring names are their lowercase.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableSet {
    names: Vec<String>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_digit())
}

impl VariableSet {
    /// Variables in the given order. Requires at least one variable; the
    /// normal-form logic additionally needs two.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return Err(ParseError::Header("no variables declared".into()).into());
        }
        for (i, a) in names.iter().enumerate() {
            if !valid_name(a) {
                return Err(
                    ParseError::Header(format!("invalid variable name '{a}' (a letter followed by digits)")).into(),
                );
            }
            if names[..i].iter().any(|b| b.eq_ignore_ascii_case(a)) {
                return Err(ParseError::Header(format!("duplicate variable '{a}'")).into());
            }
        }
        Ok(VariableSet { names })
    }

    /// Reorders `declared` so that `w` comes first and `z` last, keeping
    /// the declared order of the rest.
    pub fn with_roles<S: AsRef<str>>(declared: &[S], w: &str, z: &str) -> Result<Self> {
        let declared: Vec<&str> = declared.iter().map(AsRef::as_ref).collect();
        if w == z {
            return Err(ParseError::Header("W and Z must be distinct".into()).into());
        }
        for role in [w, z] {
            if !declared.contains(&role) {
                return Err(ParseError::Header(format!("'{role}' is not a declared variable")).into());
            }
        }
        let mut names = vec![w];
        names.extend(declared.iter().copied().filter(|&s| s != w && s != z));
        names.push(z);
        Self::new(&names)
    }

    /// Total number of variables, `n + 1`.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Number of variables of `R'`, i.e. all but `w`.
    pub fn n(&self) -> usize {
        self.names.len() - 1
    }

    pub fn dual_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn ring_name(&self, i: usize) -> String {
        self.names[i].to_ascii_lowercase()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn w(&self) -> usize {
        0
    }

    pub fn z(&self) -> usize {
        self.names.len() - 1
    }

    /// Indices of `x_1..x_{n-1}`.
    pub fn middle(&self) -> std::ops::Range<usize> {
        1..self.names.len().saturating_sub(1)
    }
}
