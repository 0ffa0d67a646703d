//! Curve description files.
//!
//! A document is one JSON object:
//!
//! ```text
//! {"name":"chain23","components":[{"genus":2},{"genus":3}],"nodes":[[0,1]],
//!  "degree":5,"bounds":[[0,5],[0,5]]}
//! ```
//!
//! `components` is required and `nodes` defaults to empty. Degree data is
//! optional: `degree` alone, `degree` with `bounds` (one inclusive range per
//! component), `degree` with `multidegrees`, or `multidegrees` alone. Unknown
//! fields are rejected. Every error carries a 1-based line and column.

mod json;

use std::fmt;
use std::ops::RangeInclusive;

use thiserror::Error;

use crate::curve::{enumerate_multidegrees, NodalCurve};
use crate::error::CurveError;
use json::{Reader, Spanned, Value};

/// Largest genus accepted per component.
pub const MAX_GENUS: i64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    Syntax,
    UnknownField,
    TypeMismatch,
    SemanticViolation,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Syntax => "syntax error",
            ErrorKind::UnknownField => "unknown field",
            ErrorKind::TypeMismatch => "type mismatch",
            ErrorKind::SemanticViolation => "invalid curve",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub kind: ErrorKind,
}

impl ParseError {
    fn new(pos: Position, kind: ErrorKind, message: impl Into<String>) -> Self {
        ParseError {
            line: pos.line,
            column: pos.column,
            message: message.into(),
            kind,
        }
    }
}

/// Where the multidegrees of a document come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultidegreeSource {
    /// Inclusive per-component ranges, enumerated against `degree`.
    Bounds(Vec<RangeInclusive<i64>>),
    Explicit(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveDocument {
    pub name: Option<String>,
    pub curve: NodalCurve,
    pub degree: Option<i64>,
    pub multidegrees: Option<MultidegreeSource>,
}

impl CurveDocument {
    pub fn new(curve: NodalCurve) -> Self {
        CurveDocument {
            name: None,
            curve,
            degree: None,
            multidegrees: None,
        }
    }

    /// The multidegree list this document describes, enumerating bounds if
    /// necessary.
    pub fn resolved_multidegrees(&self) -> Result<Option<Vec<Vec<i64>>>, CurveError> {
        match (&self.multidegrees, self.degree) {
            (None, _) => Ok(None),
            (Some(MultidegreeSource::Explicit(list)), _) => Ok(Some(list.clone())),
            (Some(MultidegreeSource::Bounds(bounds)), Some(d)) => {
                enumerate_multidegrees(&self.curve, d, bounds).map(Some)
            }
            // rejected by the parser; treat as nothing to enumerate
            (Some(MultidegreeSource::Bounds(_)), None) => Ok(None),
        }
    }
}

/// Parses raw bytes, reporting invalid UTF-8 at the offending byte.
pub fn parse_curve_bytes(bytes: &[u8]) -> Result<CurveDocument, ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse_curve(text),
        Err(e) => {
            let valid = std::str::from_utf8(&bytes[..e.valid_up_to()]).expect("valid prefix");
            let line = valid.matches('\n').count() + 1;
            let column = valid.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            Err(ParseError::new(
                Position { line, column },
                ErrorKind::Syntax,
                "invalid UTF-8",
            ))
        }
    }
}

pub fn parse_curve(source: &str) -> Result<CurveDocument, ParseError> {
    let root = Reader::new(source).document()?;
    Schema.document(&root)
}

/// Canonical single-line form; `parse_curve` reads it back to an equal
/// document.
pub fn serialize_curve(doc: &CurveDocument) -> String {
    let mut out = String::from("{");
    if let Some(name) = &doc.name {
        out.push_str("\"name\":");
        out.push_str(&serde_json::to_string(name).expect("strings serialize"));
        out.push(',');
    }
    out.push_str("\"components\":[");
    let comps: Vec<String> = doc
        .curve
        .components()
        .iter()
        .map(|c| format!("{{\"genus\":{}}}", c.genus))
        .collect();
    out.push_str(&comps.join(","));
    out.push_str("],\"nodes\":[");
    let nodes: Vec<String> = doc
        .curve
        .nodes()
        .iter()
        .map(|n| format!("[{},{}]", n.left, n.right))
        .collect();
    out.push_str(&nodes.join(","));
    out.push(']');
    if let Some(d) = doc.degree {
        out.push_str(&format!(",\"degree\":{d}"));
    }
    match &doc.multidegrees {
        None => {}
        Some(MultidegreeSource::Bounds(bounds)) => {
            let parts: Vec<String> = bounds
                .iter()
                .map(|r| format!("[{},{}]", r.start(), r.end()))
                .collect();
            out.push_str(&format!(",\"bounds\":[{}]", parts.join(",")));
        }
        Some(MultidegreeSource::Explicit(list)) => {
            let parts: Vec<String> = list
                .iter()
                .map(|d| {
                    let xs: Vec<String> = d.iter().map(i64::to_string).collect();
                    format!("[{}]", xs.join(","))
                })
                .collect();
            out.push_str(&format!(",\"multidegrees\":[{}]", parts.join(",")));
        }
    }
    out.push('}');
    out
}

struct Schema;

fn err(at: &Spanned, kind: ErrorKind, message: impl Into<String>) -> ParseError {
    ParseError::new(at.pos, kind, message)
}

fn mismatch(at: &Spanned, want: &str) -> ParseError {
    err(
        at,
        ErrorKind::TypeMismatch,
        format!("expected {want}, found {}", at.value.kind_name()),
    )
}

impl Schema {
    fn object<'v>(
        &self,
        at: &'v Spanned,
        allowed: &[&str],
    ) -> Result<Vec<(&'v str, &'v Spanned, &'v Spanned)>, ParseError> {
        let Value::Object(fields) = &at.value else {
            return Err(mismatch(at, "an object"));
        };
        let mut out: Vec<(&str, &Spanned, &Spanned)> = Vec::new();
        for (key, value) in fields {
            let Value::String(name) = &key.value else {
                unreachable!("object keys are strings")
            };
            if !allowed.contains(&name.as_str()) {
                return Err(err(
                    key,
                    ErrorKind::UnknownField,
                    format!("unknown field `{name}`"),
                ));
            }
            if out.iter().any(|(n, _, _)| *n == name) {
                return Err(err(
                    key,
                    ErrorKind::SemanticViolation,
                    format!("duplicate field `{name}`"),
                ));
            }
            out.push((name.as_str(), key, value));
        }
        Ok(out)
    }

    fn array<'v>(&self, at: &'v Spanned) -> Result<&'v [Spanned], ParseError> {
        match &at.value {
            Value::Array(items) => Ok(items),
            _ => Err(mismatch(at, "an array")),
        }
    }

    fn integer(&self, at: &Spanned) -> Result<i64, ParseError> {
        match &at.value {
            Value::Number {
                integer: Some(v), ..
            } => Ok(*v),
            Value::Number { text, .. } if !text.contains(['.', 'e', 'E']) => Err(err(
                at,
                ErrorKind::TypeMismatch,
                format!("integer {text} is out of range"),
            )),
            _ => Err(mismatch(at, "an integer")),
        }
    }

    fn pair<'v>(
        &self,
        at: &'v Spanned,
    ) -> Result<(i64, i64, &'v Spanned, &'v Spanned), ParseError> {
        let items = self.array(at)?;
        if items.len() != 2 {
            return Err(err(
                at,
                ErrorKind::TypeMismatch,
                format!(
                    "expected a two-element array, found {} elements",
                    items.len()
                ),
            ));
        }
        Ok((
            self.integer(&items[0])?,
            self.integer(&items[1])?,
            &items[0],
            &items[1],
        ))
    }

    fn document(&self, root: &Spanned) -> Result<CurveDocument, ParseError> {
        let fields = self.object(
            root,
            &[
                "name",
                "components",
                "nodes",
                "degree",
                "bounds",
                "multidegrees",
            ],
        )?;
        let get = |name: &str| {
            fields
                .iter()
                .find(|(n, _, _)| *n == name)
                .map(|(_, k, v)| (*k, *v))
        };

        let name = match get("name") {
            None => None,
            Some((_, v)) => match &v.value {
                Value::String(s) => Some(s.clone()),
                _ => return Err(mismatch(v, "a string")),
            },
        };

        let (_, components) = get("components").ok_or_else(|| {
            err(
                root,
                ErrorKind::SemanticViolation,
                "missing required field `components`",
            )
        })?;
        let mut genera = Vec::new();
        for item in self.array(components)? {
            let record = self.object(item, &["genus"])?;
            let (_, _, g) = record.first().copied().ok_or_else(|| {
                err(
                    item,
                    ErrorKind::SemanticViolation,
                    "component is missing `genus`",
                )
            })?;
            let genus = self.integer(g)?;
            if !(0..=MAX_GENUS).contains(&genus) {
                return Err(err(
                    g,
                    ErrorKind::SemanticViolation,
                    format!("genus must lie in 0..={MAX_GENUS}, found {genus}"),
                ));
            }
            genera.push(genus as u32);
        }
        if genera.is_empty() {
            return Err(err(
                components,
                ErrorKind::SemanticViolation,
                "a curve needs at least one component",
            ));
        }
        let m = genera.len();

        let mut nodes = Vec::new();
        if let Some((_, v)) = get("nodes") {
            for item in self.array(v)? {
                let (l, r, lt, rt) = self.pair(item)?;
                for (id, token) in [(l, lt), (r, rt)] {
                    if id < 0 || id as usize >= m {
                        return Err(err(
                            token,
                            ErrorKind::SemanticViolation,
                            format!(
                                "node references component {id}, but the curve has {m} components"
                            ),
                        ));
                    }
                }
                nodes.push((l as usize, r as usize));
            }
        }
        let curve =
            NodalCurve::new(&genera, &nodes).expect("component references were checked above");

        let degree = match get("degree") {
            None => None,
            Some((_, v)) => Some(self.integer(v)?),
        };

        let multidegrees = match (get("bounds"), get("multidegrees")) {
            (Some(_), Some((key, _))) => {
                return Err(err(
                    key,
                    ErrorKind::SemanticViolation,
                    "`bounds` and `multidegrees` are mutually exclusive",
                ))
            }
            (Some((key, v)), None) => {
                if degree.is_none() {
                    return Err(err(
                        key,
                        ErrorKind::SemanticViolation,
                        "`bounds` requires `degree`",
                    ));
                }
                let items = self.array(v)?;
                if items.len() != m {
                    return Err(err(
                        v,
                        ErrorKind::SemanticViolation,
                        format!(
                            "expected {m} ranges (one per component), found {}",
                            items.len()
                        ),
                    ));
                }
                let mut ranges = Vec::with_capacity(m);
                for item in items {
                    let (lo, hi, _, _) = self.pair(item)?;
                    if lo > hi {
                        return Err(err(
                            item,
                            ErrorKind::SemanticViolation,
                            format!("empty range [{lo},{hi}]"),
                        ));
                    }
                    ranges.push(lo..=hi);
                }
                Some(MultidegreeSource::Bounds(ranges))
            }
            (None, Some((_, v))) => {
                let mut list = Vec::new();
                for item in self.array(v)? {
                    let entries = self.array(item)?;
                    if entries.len() != m {
                        return Err(err(
                            item,
                            ErrorKind::SemanticViolation,
                            format!(
                                "multidegree has {} entries, the curve has {m} components",
                                entries.len()
                            ),
                        ));
                    }
                    let d = entries
                        .iter()
                        .map(|e| self.integer(e))
                        .collect::<Result<Vec<_>, _>>()?;
                    if let Some(total) = degree {
                        let sum: i128 = d.iter().map(|&x| x as i128).sum();
                        if sum != total as i128 {
                            return Err(err(
                                item,
                                ErrorKind::SemanticViolation,
                                format!("multidegree sums to {sum}, but degree is {total}"),
                            ));
                        }
                    }
                    list.push(d);
                }
                Some(MultidegreeSource::Explicit(list))
            }
            (None, None) => None,
        };

        Ok(CurveDocument {
            name,
            curve,
            degree,
            multidegrees,
        })
    }
}
