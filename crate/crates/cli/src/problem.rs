//! Problem files: a line-oriented section/key-value format describing one
//! map, a list of named points, and default options.
//!
//! ```text
//! # comments start with '#'
//! [map]
//! k = 1
//! d = 2
//! F0 = X0^2 + t*X1^2
//! F1 = X1^2
//!
//! [points]
//! p = ["0", "1"]
//!
//! [options]
//! budget = 10
//! iters = 8
//! ```
//!
//! All validation happens at parse time: homogeneity, dimension, and the
//! morphism certificate. Errors carry the 1-based line and column they were
//! detected at.

use heightgap_core::error::{Error, Result};
use heightgap_core::forms::HomogeneousForm;
use heightgap_core::parse::{parse_unipoly, parse_xpoly};
use heightgap_core::poly::UniPoly;
use heightgap_core::projective::ProjectivePoint;
use heightgap_core::{endo_build, Endomorphism};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Options {
    pub budget: Option<usize>,
    pub iters: Option<usize>,
    pub max_deg: Option<usize>,
    pub coeff_bound: Option<i64>,
    pub threads: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub map: Endomorphism,
    pub points: Vec<(String, ProjectivePoint)>,
    pub options: Options,
}

impl PartialEq for ProblemFile {
    fn eq(&self, other: &Self) -> bool {
        self.map.forms() == other.map.forms()
            && self.points == other.points
            && self.options == other.options
    }
}

fn err_at(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::syntax(line, col, msg)
}

/// Shifts a syntax error produced while parsing an embedded literal so that
/// it points into the surrounding file.
fn rebase(e: Error, line: usize, col_offset: usize) -> Error {
    match e {
        Error::Syntax {
            line: l,
            col,
            message,
        } if l == 1 => Error::Syntax {
            line,
            col: col + col_offset - 1,
            message,
        },
        Error::Syntax { message, .. } => Error::Syntax {
            line,
            col: col_offset,
            message,
        },
        other => other,
    }
}

#[derive(PartialEq, Clone, Copy)]
enum Section {
    None,
    Map,
    Points,
    Options,
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut section = Section::None;
    let mut k: Option<usize> = None;
    let mut d: Option<usize> = None;
    // (index, literal, line, value column)
    let mut form_entries: Vec<(usize, String, usize, usize)> = Vec::new();
    let mut point_entries: Vec<(String, String, usize, usize)> = Vec::new();
    let mut options = Options::default();
    let mut map_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(name) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = match name.trim() {
                "map" => {
                    map_line = lineno;
                    Section::Map
                }
                "points" => Section::Points,
                "options" => Section::Options,
                other => {
                    return Err(err_at(
                        lineno,
                        raw.find('[').unwrap_or(0) + 1,
                        format!("unknown section '{other}'"),
                    ))
                }
            };
            continue;
        }
        let Some(eq_pos) = line.find('=') else {
            return Err(err_at(lineno, 1, "expected 'key = value'"));
        };
        let key = line[..eq_pos].trim();
        let value = line[eq_pos + 1..].trim();
        let value_col = raw.find(value).map(|p| p + 1).unwrap_or(eq_pos + 2);
        match section {
            Section::None => {
                return Err(err_at(lineno, 1, "entries must appear inside a section"));
            }
            Section::Map => match key {
                "k" => {
                    k = Some(value.parse().map_err(|_| {
                        err_at(lineno, value_col, "k must be a positive integer")
                    })?);
                }
                "d" => {
                    d = Some(value.parse().map_err(|_| {
                        err_at(lineno, value_col, "d must be a positive integer")
                    })?);
                }
                _ => {
                    let Some(i) = key
                        .strip_prefix('F')
                        .and_then(|s| s.parse::<usize>().ok())
                    else {
                        return Err(err_at(
                            lineno,
                            1,
                            format!("unknown map key '{key}' (expected k, d, or F0..Fk)"),
                        ));
                    };
                    form_entries.push((i, value.to_string(), lineno, value_col));
                }
            },
            Section::Points => {
                point_entries.push((key.to_string(), value.to_string(), lineno, value_col));
            }
            Section::Options => {
                let parse_usize = |v: &str| -> Result<usize> {
                    v.parse()
                        .map_err(|_| err_at(lineno, value_col, "expected a nonnegative integer"))
                };
                match key {
                    "budget" => options.budget = Some(parse_usize(value)?),
                    "iters" => options.iters = Some(parse_usize(value)?),
                    "max_deg" => options.max_deg = Some(parse_usize(value)?),
                    "threads" => options.threads = Some(parse_usize(value)?),
                    "coeff_bound" => {
                        options.coeff_bound = Some(value.parse().map_err(|_| {
                            err_at(lineno, value_col, "expected an integer")
                        })?)
                    }
                    other => {
                        return Err(err_at(lineno, 1, format!("unknown option '{other}'")));
                    }
                }
            }
        }
    }

    let k = k.ok_or_else(|| err_at(map_line.max(1), 1, "missing 'k' in [map]"))?;
    let d = d.ok_or_else(|| err_at(map_line.max(1), 1, "missing 'd' in [map]"))?;
    if form_entries.is_empty() {
        return Err(err_at(map_line.max(1), 1, "missing coordinate forms F0..Fk"));
    }
    form_entries.sort_by_key(|(i, ..)| *i);
    let expect: Vec<usize> = (0..=k).collect();
    let got: Vec<usize> = form_entries.iter().map(|(i, ..)| *i).collect();
    if got != expect {
        return Err(err_at(
            form_entries[0].2,
            1,
            format!("expected exactly the forms F0..F{k}"),
        ));
    }
    let mut forms = Vec::with_capacity(k + 1);
    for (i, literal, lineno, col) in &form_entries {
        let xp = parse_xpoly(literal, k).map_err(|e| rebase(e, *lineno, *col))?;
        let form = HomogeneousForm::from_xpoly(&xp, d, *i)
            .map_err(|e| anchor_semantic(e, *lineno, *col))?;
        forms.push(form);
    }
    let map = endo_build(forms).map_err(|e| anchor_semantic(e, map_line.max(1), 1))?;

    let mut points = Vec::with_capacity(point_entries.len());
    for (name, literal, lineno, col) in &point_entries {
        let coords = parse_point_array(literal, *lineno, *col)?;
        if coords.len() != k + 1 {
            return Err(err_at(
                *lineno,
                *col,
                format!("point needs k+1 = {} coordinates, got {}", k + 1, coords.len()),
            ));
        }
        let point = ProjectivePoint::from_polys(coords)
            .map_err(|e| anchor_semantic(e, *lineno, *col))?;
        points.push((name.clone(), point));
    }

    Ok(ProblemFile {
        map,
        points,
        options,
    })
}

/// Attaches a location to validation errors that are not lexical.
fn anchor_semantic(e: Error, line: usize, col: usize) -> Error {
    match e {
        Error::Syntax { .. } => e,
        Error::InhomogeneousInput { index, expected } => Error::syntax(
            line,
            col,
            format!("form F{index} is not homogeneous of degree {expected}"),
        ),
        Error::NotAMorphism => Error::syntax(
            line,
            col,
            "the coordinate forms share a projective zero: not a morphism",
        ),
        Error::DegreeTooSmall(d) => {
            Error::syntax(line, col, format!("map degree must be at least 2, got {d}"))
        }
        Error::NotAPoint => Error::syntax(line, col, "all coordinates are zero"),
        Error::DimensionMismatch { expected, got } => Error::syntax(
            line,
            col,
            format!("dimension mismatch: expected k = {expected}, got k = {got}"),
        ),
        other => other,
    }
}

/// Parses `["lit", "lit", ...]`.
fn parse_point_array(s: &str, line: usize, col: usize) -> Result<Vec<UniPoly>> {
    let bytes = s.as_bytes();
    let mut pos = 0usize;
    let mut out = Vec::new();
    let fail = |pos: usize, msg: &str| err_at(line, col + pos, msg.to_string());
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos >= bytes.len() || bytes[pos] != b'[' {
        return Err(fail(pos, "expected '[' to open the coordinate array"));
    }
    pos += 1;
    loop {
        skip_ws(&mut pos);
        if pos < bytes.len() && bytes[pos] == b']' {
            pos += 1;
            break;
        }
        if pos >= bytes.len() || bytes[pos] != b'"' {
            return Err(fail(pos, "expected a quoted polynomial literal"));
        }
        let start = pos + 1;
        let end = s[start..]
            .find('"')
            .map(|p| start + p)
            .ok_or_else(|| fail(start, "unterminated string"))?;
        let literal = &s[start..end];
        let poly = parse_unipoly(literal).map_err(|e| rebase(e, line, col + start))?;
        out.push(poly);
        pos = end + 1;
        skip_ws(&mut pos);
        if pos < bytes.len() && bytes[pos] == b',' {
            pos += 1;
            continue;
        }
        if pos < bytes.len() && bytes[pos] == b']' {
            pos += 1;
            break;
        }
        return Err(fail(pos, "expected ',' or ']'"));
    }
    skip_ws(&mut pos);
    if pos != bytes.len() {
        return Err(fail(pos, "trailing input after the coordinate array"));
    }
    Ok(out)
}

/// Canonical text form; reparsing yields an identical problem.
#[allow(dead_code)] // exercised by the round-trip tests
pub fn serialize_problem(p: &ProblemFile) -> String {
    let mut out = String::new();
    out.push_str("[map]\n");
    out.push_str(&format!("k = {}\n", p.map.k()));
    out.push_str(&format!("d = {}\n", p.map.degree()));
    for (i, form) in p.map.forms().iter().enumerate() {
        out.push_str(&format!("F{i} = {form}\n"));
    }
    if !p.points.is_empty() {
        out.push_str("\n[points]\n");
        for (name, point) in &p.points {
            out.push_str(&format!("{name} = {point}\n"));
        }
    }
    let o = &p.options;
    if o != &Options::default() {
        out.push_str("\n[options]\n");
        if let Some(v) = o.budget {
            out.push_str(&format!("budget = {v}\n"));
        }
        if let Some(v) = o.iters {
            out.push_str(&format!("iters = {v}\n"));
        }
        if let Some(v) = o.max_deg {
            out.push_str(&format!("max_deg = {v}\n"));
        }
        if let Some(v) = o.coeff_bound {
            out.push_str(&format!("coeff_bound = {v}\n"));
        }
        if let Some(v) = o.threads {
            out.push_str(&format!("threads = {v}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "\
# the quadratic family at its critical point
[map]
k = 1
d = 2
F0 = X0^2 + t*X1^2
F1 = X1^2

[points]
p = [\"0\", \"1\"]

[options]
budget = 10
iters = 8
";

    #[test]
    fn parses_minimal_file() {
        let p = parse_problem(MINIMAL).unwrap();
        assert_eq!(p.map.k(), 1);
        assert_eq!(p.map.degree(), 2);
        assert_eq!(p.points.len(), 1);
        assert_eq!(p.points[0].0, "p");
        assert_eq!(p.options.budget, Some(10));
        assert_eq!(p.options.iters, Some(8));
    }

    #[test]
    fn round_trips_through_serialization() {
        let p = parse_problem(MINIMAL).unwrap();
        let text = serialize_problem(&p);
        let q = parse_problem(&text).unwrap();
        assert_eq!(p, q);
        assert_eq!(text, serialize_problem(&q));
    }

    #[test]
    fn inhomogeneous_form_is_located() {
        let bad = "[map]\nk = 1\nd = 2\nF0 = X0^2 + X1^3\nF1 = X1^2\n";
        match parse_problem(bad).unwrap_err() {
            Error::Syntax { line, col, message } => {
                assert_eq!(line, 4);
                assert!(col >= 6, "col = {col}");
                assert!(message.contains("homogeneous"), "{message}");
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn shared_zero_is_reported_as_not_a_morphism() {
        let bad = "[map]\nk = 1\nd = 2\nF0 = X0^2\nF1 = t*X0*X1\n";
        match parse_problem(bad).unwrap_err() {
            Error::Syntax { line, message, .. } => {
                assert_eq!(line, 1);
                assert!(message.contains("not a morphism"), "{message}");
            }
            other => panic!("expected anchored morphism error, got {other:?}"),
        }
    }

    #[test]
    fn bad_literal_column_is_anchored() {
        let bad = "[map]\nk = 1\nd = 2\nF0 = X0^2 + %\nF1 = X1^2\n";
        match parse_problem(bad).unwrap_err() {
            Error::Syntax { line, col, .. } => {
                assert_eq!(line, 4);
                assert_eq!(col, 13);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn wrong_coordinate_count_is_rejected() {
        let bad = "[map]\nk = 1\nd = 2\nF0 = X0^2\nF1 = X1^2\n\n[points]\np = [\"1\", \"2\", \"3\"]\n";
        match parse_problem(bad).unwrap_err() {
            Error::Syntax { line, message, .. } => {
                assert_eq!(line, 8);
                assert!(message.contains("k+1"), "{message}");
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }
}
