//! TOML definition files: a Lie algebra with a metric, and optionally a
//! one-form `Q` and a triple of complex structures.
//!
//! ```toml
//! dim = 4
//! labels = ["X", "Y", "Z", "W"]
//! metric = [["1", "0", "0", "0"], ...]   # optional, identity when omitted
//! Q = ["1/2", "0", "0", "0"]             # optional
//!
//! [[brackets]]                           # unlisted pairs are zero
//! i = "X"
//! j = "Y"
//! coeffs = ["0", "1", "0", "0"]
//!
//! [hypercomplex]                         # optional
//! j1 = [["0", "-1", "0", "0"], ...]
//! j2 = [...]
//! j3 = [...]
//! ```
//!
//! All numbers are exact rationals written as strings, `"p/q"` or `"p"`.

use std::fmt;
use std::ops::Range;

use randers_core::scalar::{format_scalar, parse_scalar};
use randers_core::{AlgebraVector, ComplexStructureTriple, JacobiViolation, LieAlgebra, Matrix, MetricTensor, Scalar};
use serde::{Deserialize, Serialize};
use toml::Spanned;

/// Position in the source text, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl Location {
    fn of(source: &str, span: Range<usize>) -> Self {
        let before = &source[..span.start.min(source.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Self { line, column }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

fn at(loc: &Option<Location>) -> String {
    loc.map_or_else(String::new, |l| format!("{l}: "))
}

#[derive(Debug, thiserror::Error)]
pub enum DefinitionError {
    /// Malformed TOML or a field of the wrong type.
    #[error("{0}")]
    Syntax(#[from] toml::de::Error),

    /// A field that cannot be read, e.g. a bad rational literal.
    #[error("{}{field}: {message}", at(location))]
    Field { field: String, location: Option<Location>, message: String },

    /// Well-formed input describing an invalid object.
    #[error("{}{field}: {message}", at(location))]
    Invalid { field: String, location: Option<Location>, message: String },

    #[error("Jacobi identity fails on {} basis triple(s)", violations.len())]
    Jacobi { labels: Vec<String>, violations: Vec<JacobiViolation> },
}

impl DefinitionError {
    /// Input could not be read, as opposed to describing an invalid object.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Self::Syntax(_) | Self::Field { .. })
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "S: Deserialize<'de>"))]
struct RawDefinition<S> {
    dim: usize,
    labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metric: Option<Vec<Vec<S>>>,
    #[serde(rename = "Q", default, skip_serializing_if = "Option::is_none")]
    q: Option<Vec<S>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    brackets: Vec<RawBracket<S>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hypercomplex: Option<RawTriple<S>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBracket<S> {
    i: S,
    j: S,
    coeffs: Vec<S>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTriple<S> {
    j1: Vec<Vec<S>>,
    j2: Vec<Vec<S>>,
    j3: Vec<Vec<S>>,
}

type Text = Spanned<String>;

/// Contents of a definition file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definition {
    pub algebra: LieAlgebra,
    pub metric: MetricTensor,
    pub q: Option<AlgebraVector>,
    pub hypercomplex: Option<ComplexStructureTriple>,
}

impl Definition {
    /// Parses and validates, including the Jacobi identity.
    pub fn parse(source: &str) -> Result<Self, DefinitionError> {
        let def = Self::parse_unchecked(source)?;
        let violations = def.algebra.jacobi_check();
        if !violations.is_empty() {
            return Err(DefinitionError::Jacobi { labels: def.algebra.labels().to_vec(), violations });
        }
        Ok(def)
    }

    /// Parses and checks everything except the Jacobi identity.
    pub fn parse_unchecked(source: &str) -> Result<Self, DefinitionError> {
        let raw: RawDefinition<Text> = toml::from_str(source)?;
        Reader { source }.read(raw)
    }

    /// Canonical TOML form. Parsing it gives back an equal definition.
    pub fn to_toml(&self) -> String {
        let n = self.algebra.dim();
        let labels = self.algebra.labels();
        let vector = |v: &[Scalar]| v.iter().map(format_scalar).collect::<Vec<_>>();
        let matrix = |m: &Matrix| m.to_rows().iter().map(|r| vector(r)).collect::<Vec<_>>();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let b = self.algebra.basis_bracket(i, j);
                if !b.is_zero() {
                    brackets.push(RawBracket { i: labels[i].clone(), j: labels[j].clone(), coeffs: vector(b) });
                }
            }
        }
        let raw = RawDefinition {
            dim: n,
            labels: labels.to_vec(),
            metric: (self.metric.gram() != &Matrix::identity(n)).then(|| matrix(self.metric.gram())),
            q: self.q.as_ref().map(|q| vector(q)),
            brackets,
            hypercomplex: self.hypercomplex.as_ref().map(|t| RawTriple {
                j1: matrix(&t.j1),
                j2: matrix(&t.j2),
                j3: matrix(&t.j3),
            }),
        };
        toml::to_string(&raw).expect("definition serializes")
    }
}

struct Reader<'a> {
    source: &'a str,
}

impl Reader<'_> {
    fn loc(&self, t: &Text) -> Option<Location> {
        Some(Location::of(self.source, t.span()))
    }

    fn scalar(&self, field: &str, t: &Text) -> Result<Scalar, DefinitionError> {
        parse_scalar(t.get_ref()).map_err(|_| DefinitionError::Field {
            field: field.to_string(),
            location: self.loc(t),
            message: format!("{:?} is not a rational of the form p/q", t.get_ref()),
        })
    }

    fn vector(&self, field: &str, items: &[Text], dim: usize) -> Result<AlgebraVector, DefinitionError> {
        if items.len() != dim {
            return Err(DefinitionError::Field {
                field: field.to_string(),
                location: items.first().and_then(|t| self.loc(t)),
                message: format!("expected {dim} entries, found {}", items.len()),
            });
        }
        let coeffs = items
            .iter()
            .enumerate()
            .map(|(k, t)| self.scalar(&format!("{field}[{k}]"), t))
            .collect::<Result<_, _>>()?;
        Ok(AlgebraVector::new(coeffs))
    }

    fn matrix(&self, field: &str, rows: &[Vec<Text>], dim: usize) -> Result<Matrix, DefinitionError> {
        if rows.len() != dim {
            return Err(DefinitionError::Field {
                field: field.to_string(),
                location: rows.first().and_then(|r| r.first()).and_then(|t| self.loc(t)),
                message: format!("expected {dim} rows, found {}", rows.len()),
            });
        }
        let rows = rows
            .iter()
            .enumerate()
            .map(|(r, row)| self.vector(&format!("{field}[{r}]"), row, dim).map(AlgebraVector::into_inner))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(rows).expect("rows have equal length"))
    }

    fn label(&self, field: &str, t: &Text, labels: &[String]) -> Result<usize, DefinitionError> {
        labels.iter().position(|l| l == t.get_ref()).ok_or_else(|| DefinitionError::Field {
            field: field.to_string(),
            location: self.loc(t),
            message: format!("unknown basis label {:?}", t.get_ref()),
        })
    }

    fn read(&self, raw: RawDefinition<Text>) -> Result<Definition, DefinitionError> {
        let n = raw.dim;
        let structural = |field: &str, message: String| DefinitionError::Field {
            field: field.to_string(),
            location: None,
            message,
        };
        if n == 0 {
            return Err(structural("dim", "must be positive".into()));
        }
        if raw.labels.len() != n {
            return Err(structural("labels", format!("expected {n} labels, found {}", raw.labels.len())));
        }
        for (k, l) in raw.labels.iter().enumerate() {
            if raw.labels[..k].contains(l) {
                return Err(structural("labels", format!("duplicate label {l:?}")));
            }
        }

        let mut entries = Vec::with_capacity(raw.brackets.len());
        let mut first_loc = Vec::with_capacity(raw.brackets.len());
        for (k, b) in raw.brackets.iter().enumerate() {
            let field = format!("brackets[{k}]");
            let i = self.label(&format!("{field}.i"), &b.i, &raw.labels)?;
            let j = self.label(&format!("{field}.j"), &b.j, &raw.labels)?;
            entries.push((i, j, self.vector(&format!("{field}.coeffs"), &b.coeffs, n)?));
            first_loc.push((field, self.loc(&b.i)));
        }
        let algebra = LieAlgebra::from_brackets(raw.labels.clone(), entries).map_err(|e| {
            let (field, location) = match &e {
                randers_core::Error::NotAntisymmetric { i, j, .. } => first_loc
                    .iter()
                    .zip(&raw.brackets)
                    .filter(|(_, b)| {
                        let pair = (b.i.get_ref(), b.j.get_ref());
                        pair == (&raw.labels[*j], &raw.labels[*i]) || pair == (&raw.labels[*i], &raw.labels[*j])
                    })
                    .map(|(fl, _)| fl.clone())
                    .next_back()
                    .unwrap_or(("brackets".into(), None)),
                _ => ("brackets".into(), None),
            };
            DefinitionError::Invalid { field, location, message: e.to_string() }
        })?;

        let metric = match &raw.metric {
            None => MetricTensor::identity(n),
            Some(rows) => {
                let gram = self.matrix("metric", rows, n)?;
                let location = rows.first().and_then(|r| r.first()).and_then(|t| self.loc(t));
                MetricTensor::new(gram).map_err(|e| DefinitionError::Invalid {
                    field: "metric".into(),
                    location,
                    message: e.to_string(),
                })?
            }
        };

        let q = raw.q.as_ref().map(|items| self.vector("Q", items, n)).transpose()?;

        let hypercomplex = match &raw.hypercomplex {
            None => None,
            Some(t) => Some(
                ComplexStructureTriple::new(
                    self.matrix("hypercomplex.j1", &t.j1, n)?,
                    self.matrix("hypercomplex.j2", &t.j2, n)?,
                    self.matrix("hypercomplex.j3", &t.j3, n)?,
                )
                .expect("matrices are checked square"),
            ),
        };

        Ok(Definition { algebra, metric, q, hypercomplex })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use randers_core::algebra::catalog;
    use randers_core::scalar::rat;

    const CASE_FOUR: &str = r#"
dim = 4
labels = ["X", "Y", "Z", "W"]
Q = ["1/3", "0", "0", "0"]

[[brackets]]
i = "X"
j = "Y"
coeffs = ["0", "1", "0", "0"]

[[brackets]]
i = "X"
j = "Z"
coeffs = ["0", "0", "1/2", "0"]

[[brackets]]
i = "X"
j = "W"
coeffs = ["0", "0", "0", "1/2"]

[[brackets]]
i = "Z"
j = "W"
coeffs = ["0", "1/2", "0", "0"]
"#;

    #[test]
    fn parses_catalog_case() {
        let d = Definition::parse(CASE_FOUR).unwrap();
        assert_eq!(d.algebra, catalog(4).unwrap());
        assert_eq!(d.metric, MetricTensor::identity(4));
        assert_eq!(d.q, Some(AlgebraVector::basis(4, 0).scale(&rat(1, 3))));
        assert!(d.hypercomplex.is_none());
    }

    #[test]
    fn round_trip() {
        let d = Definition::parse(CASE_FOUR).unwrap();
        let text = d.to_toml();
        assert_eq!(Definition::parse(&text).unwrap(), d);
        assert_eq!(Definition::parse(&text).unwrap().to_toml(), text);
    }

    #[test]
    fn bad_rational_reports_location() {
        let src = CASE_FOUR.replace(r#"["0", "0", "1/2", "0"]"#, r#"["0", "0", "0.5", "0"]"#);
        let err = Definition::parse(&src).unwrap_err();
        assert!(err.is_parse_error());
        let DefinitionError::Field { field, location, .. } = &err else { panic!("{err}") };
        assert_eq!(field, "brackets[1].coeffs[2]");
        assert_eq!(location.unwrap().line, 14);
        assert!(err.to_string().starts_with("line 14, column 21"), "{err}");
    }

    #[test]
    fn syntax_error_reports_line() {
        let err = Definition::parse("dim = 4\nlabels = [\"X\"\n").unwrap_err();
        assert!(matches!(err, DefinitionError::Syntax(_)));
        assert!(err.to_string().contains("line"), "{err}");
    }

    #[test]
    fn unknown_label_and_field() {
        let src = CASE_FOUR.replacen("i = \"X\"", "i = \"V\"", 1);
        let err = Definition::parse(&src).unwrap_err();
        assert!(err.to_string().contains("brackets[0].i"), "{err}");
        let err = Definition::parse(&format!("extra = 1\n{CASE_FOUR}")).unwrap_err();
        assert!(matches!(err, DefinitionError::Syntax(_)));
    }

    #[test]
    fn inconsistent_transpose_is_invalid() {
        let src = format!("{CASE_FOUR}\n[[brackets]]\ni = \"Y\"\nj = \"X\"\ncoeffs = [\"0\", \"1\", \"0\", \"0\"]\n");
        let err = Definition::parse(&src).unwrap_err();
        assert!(!err.is_parse_error());
        assert!(err.to_string().contains("brackets[4]"), "{err}");
    }

    #[test]
    fn jacobi_failure() {
        let src = CASE_FOUR.replacen(r#"["0", "0", "1/2", "0"]"#, r#"["0", "0", "1", "0"]"#, 1);
        let DefinitionError::Jacobi { violations: v, .. } = Definition::parse(&src).unwrap_err() else { panic!() };
        assert_eq!(v.len(), 1);
        assert!(Definition::parse_unchecked(&src).is_ok());
    }

    #[test]
    fn metric_must_be_positive_definite() {
        let src = format!(
            "metric = [[\"1\",\"0\",\"0\",\"0\"],[\"0\",\"-1\",\"0\",\"0\"],[\"0\",\"0\",\"1\",\"0\"],[\"0\",\"0\",\"0\",\"1\"]]\n{CASE_FOUR}"
        );
        let err = Definition::parse(&src).unwrap_err();
        assert!(matches!(err, DefinitionError::Invalid { ref field, .. } if field == "metric"), "{err}");
    }
}
