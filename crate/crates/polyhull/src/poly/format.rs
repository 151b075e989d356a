//! The `.poly` text format.
//!
//! A file carries exactly one representation. Line 1 is `H d` or `V d`
//! where `d` is the ambient dimension. An `H` file then has sections
//! `INEQ` and `EQ` whose rows are the `d+1` scalars `a0 a1 .. ad` of
//! `a0 + a.x >= 0` (resp. `= 0`); a `V` file has `PTS`, `RAYS` and `LIN`
//! whose rows are plain `d`-coordinate vectors. Every section starts with
//! a `rows cols` count line. `#` starts a comment and blank lines are
//! skipped. The writer always emits every section of the representation,
//! in the order above, one space between scalars, so equal representations
//! serialize to identical bytes.

use std::fmt;

use crate::arith::Scalar;
use crate::linalg::Matrix;

use super::{HRep, Polytope, VRep};

/// One parsed (or to-be-written) `.poly` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyFile<S: Scalar> {
    H(HRep<S>),
    V(VRep<S>),
}

/// A syntax or structure error, tagged with the 1-based source line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseFileError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseFileError {}

fn err(line: usize, message: impl Into<String>) -> ParseFileError {
    ParseFileError {
        line,
        message: message.into(),
    }
}

/// True if any non-comment token of the file mentions the symbol `t`,
/// i.e. the file needs the Puiseux scalar type rather than rationals.
pub fn uses_symbolic_t(text: &str) -> bool {
    text.lines().any(|l| {
        let code = l.split('#').next().unwrap_or("");
        code.contains('t')
    })
}

impl<S: Scalar> PolyFile<S> {
    pub fn ambient_dim(&self) -> usize {
        match self {
            PolyFile::H(h) => h.ambient_dim(),
            PolyFile::V(v) => v.ambient_dim(),
        }
    }

    pub fn into_polytope(self) -> Polytope<S> {
        match self {
            PolyFile::H(h) => Polytope::from_hrep(h),
            PolyFile::V(v) => Polytope::from_vrep(v),
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseFileError> {
        let mut lines = significant_lines(text);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| err(1, "empty file, expected `H d` or `V d`"))?;
        let mut parts = header.split_whitespace();
        let kind = parts.next().unwrap();
        let dim_tok = parts
            .next()
            .ok_or_else(|| err(line_no, "missing dimension after representation letter"))?;
        if parts.next().is_some() {
            return Err(err(line_no, "trailing tokens after `H d` / `V d` header"));
        }
        let d: usize = dim_tok
            .parse()
            .map_err(|_| err(line_no, format!("bad dimension `{dim_tok}`")))?;
        match kind {
            "H" => {
                let mut ineq = None;
                let mut eq = None;
                while let Some((l, name)) = lines.next() {
                    let slot = match name {
                        "INEQ" => &mut ineq,
                        "EQ" => &mut eq,
                        other => {
                            return Err(err(l, format!("unknown section `{other}` in an H file")))
                        }
                    };
                    if slot.is_some() {
                        return Err(err(l, format!("duplicate section `{name}`")));
                    }
                    *slot = Some(read_section(&mut lines, l, d + 1)?.0);
                }
                let ineq = ineq.unwrap_or_else(|| Matrix::empty(d + 1));
                let eq = eq.unwrap_or_else(|| Matrix::empty(d + 1));
                Ok(PolyFile::H(HRep::from_matrices(d, ineq, eq)))
            }
            "V" => {
                let mut pts = None;
                let mut rays = None;
                let mut lin = None;
                while let Some((l, name)) = lines.next() {
                    let slot = match name {
                        "PTS" => &mut pts,
                        "RAYS" => &mut rays,
                        "LIN" => &mut lin,
                        other => {
                            return Err(err(l, format!("unknown section `{other}` in a V file")))
                        }
                    };
                    if slot.is_some() {
                        return Err(err(l, format!("duplicate section `{name}`")));
                    }
                    *slot = Some(read_section(&mut lines, l, d)?);
                }
                let mut v = VRep::new(d);
                if let Some((m, _)) = pts {
                    for row in m.iter_rows() {
                        v.push_point(row);
                    }
                }
                for (section, name, push) in [
                    (rays, "RAYS", VRep::push_ray as fn(&mut VRep<S>, &[S])),
                    (lin, "LIN", VRep::push_lineality),
                ] {
                    if let Some((m, row_lines)) = section {
                        for (row, l) in m.iter_rows().zip(row_lines) {
                            if row.iter().all(|x: &S| x.is_zero()) {
                                return Err(err(l, format!("zero row in {name}")));
                            }
                            push(&mut v, row);
                        }
                    }
                }
                Ok(PolyFile::V(v))
            }
            other => Err(err(
                line_no,
                format!("expected `H d` or `V d`, found `{other}`"),
            )),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            PolyFile::H(h) => {
                out.push_str(&format!("H {}\n", h.ambient_dim()));
                write_section(&mut out, "INEQ", &h.inequalities, 0);
                write_section(&mut out, "EQ", &h.equations, 0);
            }
            PolyFile::V(v) => {
                out.push_str(&format!("V {}\n", v.ambient_dim()));
                write_section(&mut out, "PTS", &v.points, 1);
                write_section(&mut out, "RAYS", &v.rays, 1);
                write_section(&mut out, "LIN", &v.lineality, 1);
            }
        }
        out
    }
}

/// Non-blank lines with comments stripped, paired with 1-based numbers.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let code = l.split('#').next().unwrap_or("").trim();
        if code.is_empty() {
            None
        } else {
            Some((i + 1, code))
        }
    })
}

fn read_section<'a, S: Scalar>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    section_line: usize,
    want_cols: usize,
) -> Result<(Matrix<S>, Vec<usize>), ParseFileError> {
    let (l, counts) = lines
        .next()
        .ok_or_else(|| err(section_line, "section missing its `rows cols` line"))?;
    let mut it = counts.split_whitespace();
    let rows: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(l, "expected `rows cols`"))?;
    let cols: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(l, "expected `rows cols`"))?;
    if it.next().is_some() {
        return Err(err(l, "trailing tokens after `rows cols`"));
    }
    if cols != want_cols {
        return Err(err(
            l,
            format!("section has {cols} columns, the header dimension needs {want_cols}"),
        ));
    }
    let mut m = Matrix::empty(want_cols);
    let mut row_lines = Vec::with_capacity(rows);
    for _ in 0..rows {
        let (l, row_text) = lines
            .next()
            .ok_or_else(|| err(l, format!("section ends after {} of {rows} rows", m.rows())))?;
        let mut row = Vec::with_capacity(want_cols);
        for tok in row_text.split_whitespace() {
            let x: S = tok
                .parse()
                .map_err(|e| err(l, format!("bad scalar `{tok}`: {e}")))?;
            row.push(x);
        }
        if row.len() != want_cols {
            return Err(err(
                l,
                format!("row has {} entries, expected {want_cols}", row.len()),
            ));
        }
        m.push_row(row);
        row_lines.push(l);
    }
    Ok((m, row_lines))
}

/// `skip` leading entries of each row are dropped (the stored homogeneous
/// coordinate of V-representation rows).
fn write_section<S: Scalar>(out: &mut String, name: &str, m: &Matrix<S>, skip: usize) {
    out.push_str(name);
    out.push('\n');
    out.push_str(&format!("{} {}\n", m.rows(), m.cols() - skip));
    for row in m.iter_rows() {
        let mut first = true;
        for x in &row[skip..] {
            if !first {
                out.push(' ');
            }
            out.push_str(&x.to_string());
            first = false;
        }
        out.push('\n');
    }
}
