//! Text format for maps `F^n -> F^n`.
//!
//! ```text
//! # comments and blank lines are ignored
//! form: polymap
//! coordinate 1: 3*x1
//! coordinate 2: 2*x2 + 1
//! ```
//!
//! A `table` file lists one `input -> output` row per point (`→` is also
//! accepted), entries separated by commas. A `linear` file holds
//! `matrix: 1,0;0,1`; rows may also continue on the following lines.

use lpreserve_core::linalg::join_scalars;
use lpreserve_core::poly::parse::{parse_constant, parse_poly};
use lpreserve_core::preserver::{MapForm, VectorMap};
use lpreserve_core::{FieldSpec, Matrix, MultiPoly, Scalar};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct MapFileError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> MapFileError {
    MapFileError { line, message: message.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_vector(text: &str, field: &FieldSpec, line: usize) -> Result<Vec<Scalar>, MapFileError> {
    text.split(',')
        .map(|e| parse_constant(e.trim(), field).map_err(|e| err(line, e.to_string())))
        .collect()
}

pub fn parse_map(text: &str, field: &FieldSpec, n: usize) -> Result<VectorMap, MapFileError> {
    let mut lines = content_lines(text);
    let (first, header) = lines.next().ok_or_else(|| err(1, "empty map file"))?;
    let form = header
        .strip_prefix("form:")
        .map(str::trim)
        .ok_or_else(|| err(first, "expected `form: table|polymap|linear`"))?;
    match form {
        "polymap" => {
            let mut coords: Vec<Option<MultiPoly>> = vec![None; n];
            for (line, l) in lines {
                let rest = l.strip_prefix("coordinate").ok_or_else(|| err(line, "expected `coordinate i: <poly>`"))?;
                let (idx, poly) = rest.split_once(':').ok_or_else(|| err(line, "missing `:`"))?;
                let i: usize = idx.trim().parse().map_err(|_| err(line, format!("bad coordinate index `{}`", idx.trim())))?;
                if i == 0 || i > n {
                    return Err(err(line, format!("coordinate {i} out of range 1..={n}")));
                }
                if coords[i - 1].is_some() {
                    return Err(err(line, format!("coordinate {i} given twice")));
                }
                coords[i - 1] = Some(parse_poly(poly.trim(), n, field).map_err(|e| err(line, e.to_string()))?);
            }
            let polys = coords
                .into_iter()
                .enumerate()
                .map(|(i, p)| p.ok_or_else(|| err(first, format!("coordinate {} missing", i + 1))))
                .collect::<Result<Vec<_>, _>>()?;
            VectorMap::poly(polys).map_err(|e| err(first, e.to_string()))
        }
        "linear" => {
            let mut rows = Vec::new();
            let mut start = None;
            for (line, l) in lines {
                let body = match (l.strip_prefix("matrix:"), start) {
                    (Some(b), None) => {
                        start = Some(line);
                        b.trim()
                    }
                    (Some(_), Some(_)) => return Err(err(line, "second `matrix:` entry")),
                    (None, None) => return Err(err(line, "expected `matrix: ...`")),
                    (None, Some(_)) => l,
                };
                if !body.is_empty() {
                    rows.push(body.trim_end_matches(';').to_string());
                }
            }
            let start = start.ok_or_else(|| err(first, "missing `matrix:`"))?;
            let m = Matrix::parse(&rows.join(";"), field).map_err(|e| err(start, e.to_string()))?;
            if m.rows() != n || m.cols() != n {
                return Err(err(start, format!("matrix is {}x{}, expected {n}x{n}", m.rows(), m.cols())));
            }
            VectorMap::linear(m).map_err(|e| err(start, e.to_string()))
        }
        "table" => {
            let mut rows = Vec::new();
            for (line, l) in lines {
                let (x, y) = l
                    .split_once("->")
                    .or_else(|| l.split_once('→'))
                    .ok_or_else(|| err(line, "expected `input -> output`"))?;
                let (x, y) = (parse_vector(x, field, line)?, parse_vector(y, field, line)?);
                if x.len() != n || y.len() != n {
                    return Err(err(line, format!("expected {n} entries on each side")));
                }
                rows.push((x, y));
            }
            VectorMap::table(field, n, &rows).map_err(|e| err(first, e.to_string()))
        }
        other => Err(err(first, format!("unknown form `{other}`"))),
    }
}

/// Inverse of [`parse_map`].
pub fn write_map(map: &VectorMap) -> String {
    let mut out = String::new();
    match map.form() {
        MapForm::Poly(ps) => {
            out.push_str("form: polymap\n");
            for (i, p) in ps.iter().enumerate() {
                out.push_str(&format!("coordinate {}: {p}\n", i + 1));
            }
        }
        MapForm::Linear(m) => out.push_str(&format!("form: linear\nmatrix: {m}\n")),
        MapForm::Table(t) => {
            out.push_str("form: table\n");
            let elems = map.field().elements().expect("tables are finite");
            for (x, y) in lpreserve_core::linalg::Tuples::new(&elems, map.dim()).zip(t) {
                out.push_str(&format!("{} -> {}\n", join_scalars(&x), join_scalars(y)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_forms() {
        let f = FieldSpec::galois(5).unwrap();
        let poly = parse_map("form: polymap\ncoordinate 2: 2*x2 + 1\n# swap order\ncoordinate 1: 3*x1\n", &f, 2).unwrap();
        assert_eq!(poly.apply(&[f.from_i64(1), f.from_i64(1)]).unwrap(), vec![f.from_i64(3), f.from_i64(3)]);
        let lin = parse_map("form: linear\nmatrix:\n1,2\n3,4\n", &f, 2).unwrap();
        assert_eq!(parse_map(&write_map(&lin), &f, 2).unwrap(), lin);
        let table = lin.to_table().unwrap();
        let text = write_map(&table);
        assert_eq!(parse_map(&text, &f, 2).unwrap(), table);
        assert_eq!(parse_map(&write_map(&poly), &f, 2).unwrap(), poly);
        let arrow = parse_map("form: table\n0 → 1\n1 → 2\n2 → 3\n3 → 4\n4 → 0\n", &f, 1).unwrap();
        assert_eq!(arrow.apply(&[f.from_i64(4)]).unwrap(), vec![f.zero()]);
    }

    #[test]
    fn diagnostics() {
        let f = FieldSpec::galois(5).unwrap();
        assert_eq!(parse_map("", &f, 2).unwrap_err().line, 1);
        assert_eq!(parse_map("form: polymap\ncoordinate 1: x1\n", &f, 2).unwrap_err().message, "coordinate 2 missing");
        assert_eq!(parse_map("form: polymap\ncoordinate 3: x1\n", &f, 2).unwrap_err().line, 2);
        assert!(parse_map("form: linear\nmatrix: 1,0;0\n", &f, 2).is_err());
        assert!(parse_map("form: table\n0 -> 1\n", &f, 1).is_err());
        assert!(parse_map("form: spline\n", &f, 1).is_err());
    }
}
