//! Minimal ARFF reader covering the attribute types phishing corpora use:
//! nominal, integer, real and numeric. String and date attributes are
//! rejected, as are sparse data rows.

use std::path::Path;

use crate::dataset::{Dataset, Feature, FeatureClass, FeatureKind};
use crate::error::{Error, Result};

#[derive(Debug)]
struct Attribute {
    name: String,
    decl: AttrDecl,
}

#[derive(Debug)]
enum AttrDecl {
    Numeric { integer: bool },
    Nominal { values: Vec<String> },
}

/// Load an ARFF file. The decision attribute is the one named `Result` or
/// `class` (case-insensitive), falling back to the last attribute;
/// `label_attr` overrides the lookup.
pub fn load_arff(path: impl AsRef<Path>, label_attr: Option<&str>) -> Result<Dataset> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path)?;

    let mut relation = None;
    let mut attributes: Vec<Attribute> = Vec::new();
    let mut data_rows: Vec<Vec<String>> = Vec::new();
    let mut in_data = false;

    for raw_line in text.lines() {
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if in_data {
            if line.starts_with('{') {
                return Err(Error::MalformedHeader {
                    reason: "sparse data rows are not supported".into(),
                });
            }
            data_rows.push(split_row(line));
            continue;
        }
        let lower = line.to_ascii_lowercase();
        if lower.starts_with("@relation") {
            relation = Some(unquote(line["@relation".len()..].trim()).to_string());
        } else if lower.starts_with("@attribute") {
            attributes.push(parse_attribute(line["@attribute".len()..].trim())?);
        } else if lower.starts_with("@data") {
            in_data = true;
        } else {
            return Err(Error::MalformedHeader { reason: format!("unrecognized line {line:?}") });
        }
    }

    if attributes.is_empty() {
        return Err(Error::MalformedHeader { reason: "no @attribute declarations".into() });
    }
    if !in_data || data_rows.is_empty() {
        return Err(Error::EmptyFile { path: display });
    }

    let label_idx = match label_attr {
        Some(name) => attributes
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::UnknownLabelColumn { name: name.to_string() })?,
        None => attributes
            .iter()
            .position(|a| a.name.eq_ignore_ascii_case("result") || a.name.eq_ignore_ascii_case("class"))
            .unwrap_or(attributes.len() - 1),
    };

    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); attributes.len() - 1];
    let mut labels: Vec<String> = Vec::new();
    for (row_idx, row) in data_rows.iter().enumerate() {
        let row_no = row_idx + 1;
        if row.len() != attributes.len() {
            return Err(Error::RaggedRow { row: row_no, got: row.len(), expected: attributes.len() });
        }
        let mut feat = 0usize;
        for (col_idx, token) in row.iter().enumerate() {
            let attr = &attributes[col_idx];
            if token.is_empty() || token == "?" {
                return Err(Error::MissingValue { row: row_no, col: attr.name.clone() });
            }
            if col_idx == label_idx {
                labels.push(token.clone());
                continue;
            }
            columns[feat].push(decode_value(attr, token, row_no)?);
            feat += 1;
        }
    }

    let features = attributes
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != label_idx)
        .enumerate()
        .map(|(feat_idx, (_, a))| describe(a, &columns[feat_idx]))
        .collect();
    let name = relation.unwrap_or_else(|| {
        path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or(display)
    });
    let label_name = attributes[label_idx].name.clone();
    Dataset::new(name, features, columns, labels, label_name)
}

fn describe(attr: &Attribute, col: &[f64]) -> Feature {
    let kind = match &attr.decl {
        AttrDecl::Numeric { integer: true } => FeatureKind::Discrete,
        AttrDecl::Numeric { integer: false } => FeatureKind::Continuous,
        AttrDecl::Nominal { values } => {
            if values.len() <= 2 {
                FeatureKind::Binary
            } else {
                FeatureKind::Categorical
            }
        }
    };
    let (min, max) = col.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
        (lo.min(v), hi.max(v))
    });
    Feature {
        name: attr.name.clone(),
        kind,
        class: FeatureClass::Unknown,
        observed_min: min,
        observed_max: max,
    }
}

/// Numeric value for a data token. Nominal tokens keep their own numeric
/// code when the declared values all parse (e.g. `{-1,0,1}`); otherwise the
/// code is the token's index in declaration order.
fn decode_value(attr: &Attribute, token: &str, row: usize) -> Result<f64> {
    match &attr.decl {
        AttrDecl::Numeric { .. } => token.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
            Error::NonNumericValue { row, col: attr.name.clone(), value: token.to_string() }
        }),
        AttrDecl::Nominal { values } => {
            let idx = values.iter().position(|v| v == token).ok_or_else(|| {
                Error::NonNumericValue { row, col: attr.name.clone(), value: token.to_string() }
            })?;
            let numeric: Option<Vec<f64>> =
                values.iter().map(|v| v.parse::<f64>().ok().filter(|x| x.is_finite())).collect();
            Ok(match numeric {
                Some(codes) => codes[idx],
                None => idx as f64,
            })
        }
    }
}

fn parse_attribute(rest: &str) -> Result<Attribute> {
    let rest = rest.trim();
    let (name, type_part) = if let Some(stripped) = rest.strip_prefix('\'') {
        let end = stripped.find('\'').ok_or_else(|| Error::MalformedHeader {
            reason: format!("unterminated attribute name quote in {rest:?}"),
        })?;
        (stripped[..end].to_string(), stripped[end + 1..].trim())
    } else if let Some(stripped) = rest.strip_prefix('"') {
        let end = stripped.find('"').ok_or_else(|| Error::MalformedHeader {
            reason: format!("unterminated attribute name quote in {rest:?}"),
        })?;
        (stripped[..end].to_string(), stripped[end + 1..].trim())
    } else {
        let mut parts = rest.splitn(2, char::is_whitespace);
        let name = parts.next().unwrap_or_default().to_string();
        (name, parts.next().unwrap_or_default().trim())
    };
    if name.is_empty() || type_part.is_empty() {
        return Err(Error::MalformedHeader { reason: format!("incomplete attribute {rest:?}") });
    }

    if type_part.starts_with('{') {
        let inner = type_part
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::MalformedHeader {
                reason: format!("unterminated nominal specification for {name:?}"),
            })?;
        let values: Vec<String> =
            inner.split(',').map(|v| unquote(v.trim()).to_string()).collect();
        if values.is_empty() || values.iter().any(|v| v.is_empty()) {
            return Err(Error::MalformedHeader {
                reason: format!("empty nominal value for {name:?}"),
            });
        }
        return Ok(Attribute { name, decl: AttrDecl::Nominal { values } });
    }
    match type_part.to_ascii_lowercase().as_str() {
        "numeric" | "real" => Ok(Attribute { name, decl: AttrDecl::Numeric { integer: false } }),
        "integer" => Ok(Attribute { name, decl: AttrDecl::Numeric { integer: true } }),
        other => Err(Error::UnsupportedAttributeType {
            name,
            kind: other.split_whitespace().next().unwrap_or(other).to_string(),
        }),
    }
}

fn split_row(line: &str) -> Vec<String> {
    line.split(',').map(|t| unquote(t.trim()).to_string()).collect()
}

fn unquote(s: &str) -> &str {
    let s = s.trim();
    if s.len() >= 2 && ((s.starts_with('\'') && s.ends_with('\'')) || (s.starts_with('"') && s.ends_with('"'))) {
        &s[1..s.len() - 1]
    } else {
        s
    }
}
