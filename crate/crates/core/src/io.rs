//! Edge-list files, numeric grids and number formatting.
//!
//! Edge-list format: `#` lines and blank lines are ignored; the first
//! remaining line is `n m`, followed by exactly `m` lines `u v` with 0-based
//! vertex ids separated by whitespace.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Validation};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Edge { line: usize, source: GraphError },
    #[error("missing `n m` header line")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCount { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), ParseError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    let number = |s: &str| {
        s.parse::<usize>().map_err(|_| ParseError::Syntax {
            line,
            message: format!("`{s}` is not a non-negative integer"),
        })
    };
    match fields.as_slice() {
        [a, b] => Ok((number(a)?, number(b)?)),
        _ => Err(ParseError::Syntax {
            line,
            message: format!("expected two integers, got `{text}`"),
        }),
    }
}

/// Parses the edge-list format with strict validation.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    parse_edge_list_with(text, Validation::Strict)
}

pub fn parse_edge_list_with(text: &str, mode: Validation) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, declared) = parse_pair(header_line, header)?;

    let mut pairs = Vec::with_capacity(declared);
    let mut seen = HashSet::with_capacity(declared);
    for (line, text) in lines {
        let (u, v) = parse_pair(line, text)?;
        for w in [u, v] {
            if w >= n {
                return Err(ParseError::Edge {
                    line,
                    source: GraphError::VertexOutOfRange { vertex: w, n },
                });
            }
        }
        if mode == Validation::Strict {
            if u == v {
                return Err(ParseError::Edge {
                    line,
                    source: GraphError::SelfLoop(u),
                });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(ParseError::Edge {
                    line,
                    source: GraphError::DuplicateEdge(u.min(v), u.max(v)),
                });
            }
        }
        pairs.push((u, v));
    }
    if pairs.len() != declared {
        return Err(ParseError::EdgeCount {
            declared,
            found: pairs.len(),
        });
    }
    Ok(Graph::from_edge_list_with(n, &pairs, mode)?)
}

pub fn read_edge_list(path: impl AsRef<Path>, mode: Validation) -> Result<Graph, ParseError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_edge_list_with(&text, mode)
}

/// Serializes `g` in the edge-list format, edges in canonical order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("empty grid")]
    Empty,
    #[error("cannot parse `{0}` as a number")]
    BadNumber(String),
    #[error("bad range `{0}`: {1}")]
    BadRange(String, &'static str),
}

fn parse_number(s: &str) -> Result<f64, GridError> {
    let s = s.trim();
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(GridError::BadNumber(s.to_string())),
    }
}

/// Rounds away accumulated representation error from `start + i·step`.
fn snap(x: f64) -> f64 {
    let snapped = (x * 1e12).round() / 1e12;
    if snapped == 0.0 {
        0.0
    } else {
        snapped
    }
}

/// Parses a grid of reals.
///
/// - `x1,x2,...`: explicit list (a single number is a one-point grid);
/// - `start:stop:step`: linear, both ends included when `stop` lies on the
///   lattice;
/// - `start:stop:logK`: `K` log-spaced points from `start` up to but
///   excluding `stop`, so `1e-3:1:log40` stays inside `(0, 1)`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, GridError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(GridError::Empty);
    }
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [_] => s.split(',').map(parse_number).collect(),
        [start, stop, step] => {
            let (start, stop) = (parse_number(start)?, parse_number(stop)?);
            let step = step.trim();
            if let Some(count) = step.strip_prefix("log") {
                let count: usize = count
                    .parse()
                    .map_err(|_| GridError::BadRange(s.to_string(), "logK needs an integer K"))?;
                if count == 0 {
                    return Err(GridError::BadRange(s.to_string(), "K must be positive"));
                }
                if start <= 0.0 || stop <= start {
                    return Err(GridError::BadRange(
                        s.to_string(),
                        "log grids need 0 < start < stop",
                    ));
                }
                let (lo, hi) = (start.log10(), stop.log10());
                Ok((0..count)
                    .map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / count as f64))
                    .collect())
            } else {
                let step = parse_number(step)?;
                if step <= 0.0 || stop < start {
                    return Err(GridError::BadRange(
                        s.to_string(),
                        "need step > 0 and stop >= start",
                    ));
                }
                let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
                Ok((0..count).map(|i| snap(start + step * i as f64)).collect())
            }
        }
        _ => Err(GridError::BadRange(
            s.to_string(),
            "expected a list or start:stop:step",
        )),
    }
}

/// Formats `x` with 12 significant digits, `%.12g` style.
pub fn format_sig(x: f64) -> String {
    format_sig_digits(x, 12)
}

pub fn format_sig_digits(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { "-" } else { "+" };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
