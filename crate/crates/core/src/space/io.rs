//! The `%matspace v1` text format and its JSON mirror.

use serde::{Deserialize, Serialize};

use super::{MatSpace, SpaceKind};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Mat;

const HEADER: &str = "%matspace v1";

/// Serializes a space; blocks are the canonical basis matrices.
pub fn write_matspace(s: &MatSpace) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(&format!("field {}\n", s.field().q()));
    out.push_str(&format!("kind {}\n", s.kind().name()));
    match s.kind() {
        SpaceKind::Rect(p) => out.push_str(&format!("size {} {}\n", s.n(), p)),
        _ => out.push_str(&format!("size {}\n", s.n())),
    }
    out.push_str(&format!("dim {}\n", s.dim()));
    for (k, b) in s.basis().iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        write_block(&mut out, b);
    }
    out
}

pub(crate) fn write_block(out: &mut String, m: &Mat) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn keyed<'a>(lines: &[(usize, &'a str)], idx: usize, key: &str) -> Result<(usize, Vec<&'a str>)> {
    let &(ln, text) = lines.get(idx).ok_or_else(|| perr(idx + 1, format!("missing `{key}` line")))?;
    let mut parts = text.split_whitespace();
    if parts.next() != Some(key) {
        return Err(perr(ln, format!("expected `{key}`")));
    }
    Ok((ln, parts.collect()))
}

fn num(ln: usize, s: &str) -> Result<usize> {
    s.parse().map_err(|_| perr(ln, format!("not a number: {s}")))
}

/// Parses the text format. The basis is re-reduced, so the result is
/// canonical regardless of the blocks' order.
pub fn parse_matspace(text: &str) -> Result<MatSpace> {
    let all: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).collect();
    let head: Vec<(usize, &str)> = all.iter().copied().filter(|(_, l)| !l.is_empty()).take(5).collect();
    match head.first() {
        Some(&(_, l)) if l == HEADER => {}
        Some(&(ln, _)) => return Err(perr(ln, format!("expected `{HEADER}`"))),
        None => return Err(perr(1, "empty input")),
    }
    let (ln, v) = keyed(&head, 1, "field")?;
    let q = match v.as_slice() {
        [q] => num(ln, q)? as u32,
        _ => return Err(perr(ln, "expected `field <q>`")),
    };
    let field = Field::new(q).map_err(|e| perr(ln, e.to_string()))?;
    let (ln, v) = keyed(&head, 2, "kind")?;
    let kind_name = match v.as_slice() {
        [k] => *k,
        _ => return Err(perr(ln, "expected `kind <sym|alt|rect>`")),
    };
    let (ln, v) = keyed(&head, 3, "size")?;
    let (n, kind) = match (kind_name, v.as_slice()) {
        ("sym", [n]) => (num(ln, n)?, SpaceKind::Sym),
        ("alt", [n]) => (num(ln, n)?, SpaceKind::Alt),
        ("rect", [n, p]) => (num(ln, n)?, SpaceKind::Rect(num(ln, p)?)),
        ("sym" | "alt" | "rect", _) => return Err(perr(ln, "wrong number of sizes for this kind")),
        (other, _) => return Err(perr(ln, format!("unknown kind `{other}`"))),
    };
    let cols = match kind {
        SpaceKind::Rect(p) => p,
        _ => n,
    };
    let (dim_ln, v) = keyed(&head, 4, "dim")?;
    let d = match v.as_slice() {
        [d] => num(dim_ln, d)?,
        _ => return Err(perr(dim_ln, "expected `dim <d>`")),
    };

    let body_start = all.iter().position(|&(ln, _)| ln == dim_ln).unwrap() + 1;
    let mut blocks: Vec<Mat> = Vec::with_capacity(d);
    let mut current: Vec<Elem> = Vec::new();
    let mut rows_in_block = 0;
    let mut flush = |current: &mut Vec<Elem>, rows: &mut usize, ln: usize| -> Result<()> {
        if *rows == 0 {
            return Ok(());
        }
        if *rows != n {
            return Err(perr(ln, format!("block has {} rows, expected {n}", rows)));
        }
        blocks.push(Mat::from_data(field, n, cols, std::mem::take(current)).map_err(|e| perr(ln, e.to_string()))?);
        *rows = 0;
        Ok(())
    };
    let mut last_ln = dim_ln;
    for &(ln, line) in &all[body_start..] {
        last_ln = ln;
        if line.is_empty() {
            flush(&mut current, &mut rows_in_block, ln)?;
            continue;
        }
        let vals: Vec<Elem> = line
            .split_whitespace()
            .map(|t| {
                let x: u32 = t.parse().map_err(|_| perr(ln, format!("not an element: {t}")))?;
                if !field.is_valid(x) {
                    return Err(perr(ln, format!("element {x} out of range for GF({q})")));
                }
                Ok(x as Elem)
            })
            .collect::<Result<_>>()?;
        if vals.len() != cols {
            return Err(perr(ln, format!("row has {} entries, expected {cols}", vals.len())));
        }
        current.extend(vals);
        rows_in_block += 1;
        if rows_in_block > n {
            return Err(perr(ln, format!("block has more than {n} rows")));
        }
    }
    flush(&mut current, &mut rows_in_block, last_ln)?;
    if blocks.len() != d {
        return Err(perr(dim_ln, format!("declared dim {d} but found {} blocks", blocks.len())));
    }
    let s = MatSpace::make(field, kind, n, &blocks)?;
    if s.dim() != d {
        return Err(perr(dim_ln, format!("blocks span a space of dimension {}, not {d}", s.dim())));
    }
    Ok(s)
}

/// JSON mirror of the text format, with the same field names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatSpaceJson {
    pub field: u32,
    pub kind: String,
    pub size: Vec<usize>,
    pub dim: usize,
    pub basis: Vec<Vec<Vec<Elem>>>,
}

impl From<&MatSpace> for MatSpaceJson {
    fn from(s: &MatSpace) -> Self {
        let size = match s.kind() {
            SpaceKind::Rect(p) => vec![s.n(), p],
            _ => vec![s.n()],
        };
        MatSpaceJson {
            field: s.field().q(),
            kind: s.kind().name().to_string(),
            size,
            dim: s.dim(),
            basis: s.basis().iter().map(|b| (0..b.rows()).map(|i| b.row(i).to_vec()).collect()).collect(),
        }
    }
}

impl TryFrom<MatSpaceJson> for MatSpace {
    type Error = Error;
    fn try_from(j: MatSpaceJson) -> Result<Self> {
        let field = Field::new(j.field)?;
        let (n, kind) = match (j.kind.as_str(), j.size.as_slice()) {
            ("sym", [n]) => (*n, SpaceKind::Sym),
            ("alt", [n]) => (*n, SpaceKind::Alt),
            ("rect", [n, p]) => (*n, SpaceKind::Rect(*p)),
            _ => return Err(Error::Config(format!("bad kind/size: {} {:?}", j.kind, j.size))),
        };
        let mats: Vec<Mat> = j.basis.iter().map(|rows| Mat::from_rows(field, rows)).collect::<Result<_>>()?;
        let s = MatSpace::make(field, kind, n, &mats)?;
        if s.dim() != j.dim {
            return Err(Error::Config(format!("declared dim {} but basis spans {}", j.dim, s.dim())));
        }
        Ok(s)
    }
}

impl Serialize for MatSpace {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        MatSpaceJson::from(self).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for MatSpace {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = MatSpaceJson::deserialize(de)?;
        MatSpace::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        for q in Field::SUPPORTED {
            let f = Field::new(q).unwrap();
            for kind in [SpaceKind::Sym, SpaceKind::Alt, SpaceKind::Rect(2)] {
                let s = MatSpace::full(f, kind, 3);
                let text = write_matspace(&s);
                assert_eq!(parse_matspace(&text).unwrap(), s);
                let json = serde_json::to_string(&s).unwrap();
                assert_eq!(serde_json::from_str::<MatSpace>(&json).unwrap(), s);
            }
        }
    }

    #[test]
    fn exact_layout() {
        let f = Field::new(3).unwrap();
        let s = MatSpace::make(f, SpaceKind::Alt, 2, &[Mat::alt_unit(f, 2, 0, 1)]).unwrap();
        assert_eq!(write_matspace(&s), "%matspace v1\nfield 3\nkind alt\nsize 2\ndim 1\n0 1\n2 0\n");
        let z = MatSpace::zero(f, SpaceKind::Sym, 2);
        assert_eq!(write_matspace(&z), "%matspace v1\nfield 3\nkind sym\nsize 2\ndim 0\n");
        assert_eq!(parse_matspace(&write_matspace(&z)).unwrap(), z);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let bad = "%matspace v1\nfield 6\n";
        assert!(matches!(parse_matspace(bad), Err(Error::Parse { line: 2, .. })));
        let bad = "%matspace v1\nfield 3\nkind alt\nsize 2\ndim 1\n0 1\n1 0\n";
        assert!(matches!(parse_matspace(bad), Err(Error::KindMismatch(_))));
        let bad = "%matspace v1\nfield 3\nkind sym\nsize 2\ndim 2\n1 0\n0 0\n";
        assert!(matches!(parse_matspace(bad), Err(Error::Parse { line: 5, .. })));
        let bad = "%matspace v1\nfield 3\nkind sym\nsize 2\ndim 1\n1 0 0\n0 0\n";
        assert!(matches!(parse_matspace(bad), Err(Error::Parse { line: 6, .. })));
    }
}
