//! The `.toric` input format.
//!
//! Line oriented. `#` starts a comment. Keys are `key = value`; facets and
//! matrix rows use `facet:` / `lambda:` with whitespace-separated integers.
//!
//! ```text
//! name = cube
//! n = 3
//! m = 6
//! field = mod2          # integral (default) | mod2
//! mode = manifold       # manifold (default) | singular
//! max-degree = 14       # optional
//! trust-sphere = false  # optional
//! facet: 1 2 3
//! ...
//! lambda: 1 0 0 0 0 1
//! ...
//! ```
//!
//! Vertices are numbered from 1. Each `lambda:` line is one row of the
//! `n x m` matrix.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::charfun::{reduce_mod2, validate_integral, CharError, CharMatrixF2, CharMatrixZ};
use crate::combinatorics::{ComplexError, SimplicialComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Manifold,
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    #[default]
    Integral,
    Mod2,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Manifold => "manifold",
            Mode::Singular => "singular",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "manifold" => Ok(Mode::Manifold),
            "singular" => Ok(Mode::Singular),
            _ => Err(format!("unknown mode `{s}` (expected manifold or singular)")),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Integral => "integral",
            Field::Mod2 => "mod2",
        })
    }
}

impl FromStr for Field {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "integral" => Ok(Field::Integral),
            "mod2" => Ok(Field::Mod2),
            _ => Err(format!("unknown field `{s}` (expected integral or mod2)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Validation(String),
}

impl SpecError {
    pub fn syntax_line(&self) -> Option<usize> {
        match self {
            SpecError::Syntax { line, .. } => Some(*line),
            SpecError::Validation(_) => None,
        }
    }
}

impl From<ComplexError> for SpecError {
    fn from(e: ComplexError) -> Self {
        SpecError::Validation(format!("combinatorics: {e}"))
    }
}

impl From<CharError> for SpecError {
    fn from(e: CharError) -> Self {
        SpecError::Validation(format!("charfun: {e}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProblemSpec {
    pub name: String,
    pub n: usize,
    pub m: usize,
    /// 1-based.
    pub facets: Vec<Vec<usize>>,
    /// `n` rows of length `m`.
    pub lambda: Vec<Vec<i64>>,
    pub field: Field,
    pub mode: Mode,
    pub max_degree: Option<i64>,
    pub trust_sphere: bool,
}

impl ProblemSpec {
    pub fn complex(&self) -> Result<SimplicialComplex, SpecError> {
        Ok(SimplicialComplex::new(&self.facets, self.m, self.n)?)
    }

    /// Validates `lambda` (over the integers unless the field is mod 2) and
    /// returns its reduction.
    pub fn char_mod2(&self, k: &SimplicialComplex) -> Result<CharMatrixF2, SpecError> {
        match self.field {
            Field::Integral => {
                let z = CharMatrixZ::new(self.lambda.clone())?;
                validate_integral(k, &z)?;
            }
            Field::Mod2 => {
                for (r, row) in self.lambda.iter().enumerate() {
                    if let Some(x) = row.iter().find(|x| !matches!(x, 0 | 1)) {
                        return Err(SpecError::Validation(format!(
                            "charfun: mod-2 row {} contains {x}; entries must be 0 or 1",
                            r + 1
                        )));
                    }
                }
            }
        }
        Ok(reduce_mod2(&self.lambda, k)?)
    }

    /// Checks the complex and matrix; parse errors are already excluded.
    pub fn validate(&self) -> Result<(), SpecError> {
        let k = self.complex()?;
        self.char_mod2(&k).map(|_| ())
    }

    /// Same problem with `lambda` replaced by its reduction mod 2.
    pub fn reduced_mod2(&self) -> ProblemSpec {
        ProblemSpec {
            lambda: self
                .lambda
                .iter()
                .map(|r| r.iter().map(|x| x.rem_euclid(2)).collect())
                .collect(),
            field: Field::Mod2,
            ..self.clone()
        }
    }

    pub fn real_dimension(&self) -> usize {
        2 * self.n
    }
}

fn syntax(line: usize, message: impl Into<String>) -> SpecError {
    SpecError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_ints<T: FromStr>(line: usize, text: &str) -> Result<Vec<T>, SpecError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse()
                .map_err(|_| syntax(line, format!("`{tok}` is not an integer")))
        })
        .collect()
}

/// Parses and validates a spec.
pub fn parse_spec(text: &str) -> Result<ProblemSpec, SpecError> {
    let spec = parse_unvalidated(text)?;
    spec.validate()?;
    Ok(spec)
}

/// Parses without the combinatorial checks.
pub fn parse_unvalidated(text: &str) -> Result<ProblemSpec, SpecError> {
    let mut name = None;
    let mut n = None;
    let mut m = None;
    let mut field = Field::default();
    let mut mode = Mode::default();
    let mut max_degree = None;
    let mut trust_sphere = false;
    let mut facets = Vec::new();
    let mut lambda = Vec::new();
    let mut last = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("facet:") {
            let f: Vec<usize> = parse_ints(line, rest)?;
            if f.is_empty() {
                return Err(syntax(line, "facet has no vertices"));
            }
            facets.push(f);
            continue;
        }
        if let Some(rest) = content.strip_prefix("lambda:") {
            let r: Vec<i64> = parse_ints(line, rest)?;
            if r.is_empty() {
                return Err(syntax(line, "lambda row is empty"));
            }
            lambda.push(r);
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(syntax(line, format!("expected `key = value`, `facet:` or `lambda:`, found `{content}`")));
        };
        let (key, value) = (key.trim(), value.trim());
        let number = |v: &str| -> Result<usize, SpecError> {
            v.parse().map_err(|_| syntax(line, format!("`{v}` is not a nonnegative integer")))
        };
        match key {
            "name" => name = Some(value.to_string()),
            "n" => n = Some(number(value)?),
            "m" => m = Some(number(value)?),
            "field" => field = value.parse().map_err(|e: String| syntax(line, e))?,
            "mode" => mode = value.parse().map_err(|e: String| syntax(line, e))?,
            "max-degree" => {
                max_degree = Some(
                    value
                        .parse()
                        .map_err(|_| syntax(line, format!("`{value}` is not an integer")))?,
                )
            }
            "trust-sphere" => {
                trust_sphere = match value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(syntax(line, "trust-sphere must be true or false")),
                }
            }
            _ => return Err(syntax(line, format!("unknown key `{key}`"))),
        }
    }
    let end = last + 1;
    let n = n.ok_or_else(|| syntax(end.max(1), "missing `n = ...`"))?;
    let m = m.ok_or_else(|| syntax(end, "missing `m = ...`"))?;
    if facets.is_empty() {
        return Err(syntax(end, "no `facet:` lines"));
    }
    if lambda.is_empty() {
        return Err(syntax(end, "no `lambda:` lines"));
    }
    Ok(ProblemSpec {
        name: name.unwrap_or_else(|| "unnamed".to_string()),
        n,
        m,
        facets,
        lambda,
        field,
        mode,
        max_degree,
        trust_sphere,
    })
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

/// Writes a spec in the format `parse_spec` reads.
pub fn render_spec(spec: &ProblemSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!("name = {}\n", spec.name));
    out.push_str(&format!("n = {}\nm = {}\n", spec.n, spec.m));
    out.push_str(&format!("field = {}\nmode = {}\n", spec.field, spec.mode));
    if let Some(d) = spec.max_degree {
        out.push_str(&format!("max-degree = {d}\n"));
    }
    if spec.trust_sphere {
        out.push_str("trust-sphere = true\n");
    }
    out.push('\n');
    for f in &spec.facets {
        out.push_str(&format!("facet: {}\n", join(f)));
    }
    out.push('\n');
    for r in &spec.lambda {
        out.push_str(&format!("lambda: {}\n", join(r)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = "\
# CP2 # CP2 over the square
name = square
n = 2
m = 4
facet: 1 2
facet: 2 3
facet: 3 4
facet: 4 1
lambda: 0 1 -1 1
lambda: 1 0 1 -2
";

    #[test]
    fn parses_square() {
        let s = parse_spec(SQUARE).unwrap();
        assert_eq!(s.name, "square");
        assert_eq!((s.n, s.m), (2, 4));
        assert_eq!(s.facets.len(), 4);
        assert_eq!(s.lambda[1], vec![1, 0, 1, -2]);
        assert_eq!(s.field, Field::Integral);
        assert_eq!(s.mode, Mode::Manifold);
    }

    #[test]
    fn round_trip() {
        let s = parse_spec(SQUARE).unwrap();
        assert_eq!(parse_spec(&render_spec(&s)).unwrap(), s);
        let mut t = s.reduced_mod2();
        t.max_degree = Some(12);
        t.trust_sphere = true;
        t.mode = Mode::Singular;
        assert_eq!(parse_spec(&render_spec(&t)).unwrap(), t);
    }

    #[test]
    fn empty_file_is_line_one() {
        assert_eq!(parse_spec("").unwrap_err().syntax_line(), Some(1));
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let bad = SQUARE.replace("facet: 3 4", "facet: 3 x");
        assert_eq!(parse_spec(&bad).unwrap_err().syntax_line(), Some(7));
        let bad = SQUARE.replace("m = 4", "m: 4");
        assert_eq!(parse_spec(&bad).unwrap_err().syntax_line(), Some(4));
        let bad = SQUARE.replace("name = square", "colour = red");
        assert_eq!(parse_spec(&bad).unwrap_err().syntax_line(), Some(2));
        let bad = format!("{SQUARE}mode = orbifold\n");
        assert_eq!(parse_spec(&bad).unwrap_err().syntax_line(), Some(11));
    }

    #[test]
    fn validation_errors() {
        let bad = SQUARE.replace("lambda: 1 0 1 -2", "lambda: 1 0 1 2");
        let err = parse_spec(&bad).unwrap_err();
        assert!(matches!(err, SpecError::Validation(_)), "{err}");
        assert!(err.to_string().contains("[3, 4]"), "{err}");
        let bad = SQUARE.replace("facet: 4 1", "facet: 4 5");
        assert!(matches!(parse_spec(&bad), Err(SpecError::Validation(_))));
        let mut s = parse_unvalidated(SQUARE).unwrap();
        s.field = Field::Mod2;
        assert!(s.validate().unwrap_err().to_string().contains("must be 0 or 1"));
    }
}
