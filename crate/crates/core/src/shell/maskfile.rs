use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::masks::FilterMask;

use super::export::fmt_real;

/// A mask with the metadata needed to regenerate it.
///
/// ```text
/// name: case1
/// case: case1
/// params: beta=1.5707963267948966e0 gamma=0e0
/// rows: 6
/// cols: 6
/// origin: 0 0
/// coeffs:
/// <rows lines of cols values>
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct MaskFile {
    pub name: String,
    pub case: String,
    pub params: Vec<(String, f64)>,
    pub mask: FilterMask,
}

impl MaskFile {
    pub fn new(name: &str, case: &str, params: Vec<(String, f64)>, mask: FilterMask) -> Self {
        MaskFile { name: name.into(), case: case.into(), params, mask }
    }

    pub fn param(&self, key: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }
}

pub fn render_mask(file: &MaskFile) -> String {
    let m = &file.mask;
    let mut out = String::new();
    out.push_str(&format!("name: {}\n", file.name));
    out.push_str(&format!("case: {}\n", file.case));
    let params: Vec<String> = file.params.iter().map(|(k, v)| format!("{k}={}", fmt_real(*v))).collect();
    out.push_str(&format!("params: {}\n", params.join(" ")));
    out.push_str(&format!("rows: {}\ncols: {}\n", m.rows(), m.cols()));
    out.push_str(&format!("origin: {} {}\n", m.origin().0, m.origin().1));
    out.push_str("coeffs:\n");
    for row in m.to_rows() {
        let cells: Vec<String> = row.iter().map(|v| fmt_real(*v)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_f64(s: &str) -> Result<f64> {
    let v: f64 = s.parse().map_err(|_| parse_err(format!("bad number {s:?}")))?;
    if !v.is_finite() {
        return Err(parse_err(format!("non-finite value {s:?}")));
    }
    Ok(v)
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| parse_err(format!("bad integer {s:?}")))
}

pub fn parse_mask(text: &str) -> Result<MaskFile> {
    let mut name = String::new();
    let mut case = String::new();
    let mut params = Vec::new();
    let mut rows = None;
    let mut cols = None;
    let mut origin = (0, 0);
    let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    for line in lines.by_ref() {
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| parse_err(format!("expected `key: value`, got {line:?}")))?;
        let value = value.trim();
        match key.trim() {
            "name" => name = value.to_string(),
            "case" => case = value.to_string(),
            "params" => {
                for item in value.split_whitespace() {
                    let (k, v) = item
                        .split_once('=')
                        .ok_or_else(|| parse_err(format!("bad parameter {item:?}")))?;
                    params.push((k.to_string(), parse_f64(v)?));
                }
            }
            "rows" => rows = Some(parse_usize(value)?),
            "cols" => cols = Some(parse_usize(value)?),
            "origin" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                let [a, b] = parts[..] else {
                    return Err(parse_err(format!("bad origin {value:?}")));
                };
                let p = |s: &str| s.parse::<i32>().map_err(|_| parse_err(format!("bad origin {value:?}")));
                origin = (p(a)?, p(b)?);
            }
            "coeffs" => break,
            other => return Err(parse_err(format!("unknown field {other:?}"))),
        }
    }
    let (rows, cols) = match (rows, cols) {
        (Some(r), Some(c)) => (r, c),
        _ => return Err(parse_err("missing rows or cols")),
    };
    let mut grid = Vec::with_capacity(rows);
    for line in lines {
        let row = line.split_whitespace().map(parse_f64).collect::<Result<Vec<_>>>()?;
        if row.len() != cols {
            return Err(Error::WrongSize {
                expected: format!("{cols} values per row"),
                got: format!("{} in row {}", row.len(), grid.len()),
            });
        }
        grid.push(row);
    }
    if grid.len() != rows {
        return Err(Error::WrongSize { expected: format!("{rows} rows"), got: format!("{} rows", grid.len()) });
    }
    let mask = FilterMask::with_origin(rows, cols, origin, grid.concat())?;
    Ok(MaskFile { name, case, params, mask })
}

pub fn read_mask(path: impl AsRef<Path>) -> Result<MaskFile> {
    parse_mask(&fs::read_to_string(path)?)
}

pub fn write_mask(path: impl AsRef<Path>, file: &MaskFile) -> Result<()> {
    fs::write(path, render_mask(file))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::masks::{case1_mask, Case1Params};
    use proptest::prelude::*;

    fn sample() -> MaskFile {
        let m = case1_mask(Case1Params::new(1.1, -0.4)).unwrap();
        MaskFile::new("c1", "case1", vec![("beta".into(), 1.1), ("gamma".into(), -0.4)], m)
    }

    #[test]
    fn roundtrip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.txt");
        let f = sample();
        write_mask(&path, &f).unwrap();
        let back = read_mask(&path).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.param("gamma"), Some(-0.4));
        assert_eq!(render_mask(&back), render_mask(&f));
    }

    #[test]
    fn rejects_ragged() {
        let text = render_mask(&sample());
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        lines[9].push_str(" 0.5");
        let broken = lines.join("\n");
        assert!(matches!(parse_mask(&broken), Err(Error::WrongSize { .. })));
        let short: String = text.lines().take(12).map(|l| format!("{l}\n")).collect();
        assert!(matches!(parse_mask(&short), Err(Error::WrongSize { .. })));
    }

    #[test]
    fn rejects_non_finite() {
        let text = "rows: 1\ncols: 2\ncoeffs:\n0.5 NaN\n";
        assert!(matches!(parse_mask(text), Err(Error::Parse(_))));
        let text = "rows: 1\ncols: 2\ncoeffs:\ninf 0.5\n";
        assert!(matches!(parse_mask(text), Err(Error::Parse(_))));
        assert!(parse_mask("rows: 1\ncols: 2\ncoeffs:\n0.5 0.5\n").is_ok());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_mask("hello").is_err());
        assert!(parse_mask("coeffs:\n1\n").is_err());
        assert!(parse_mask("rows: 1\ncols: 1\norigin: 1\ncoeffs:\n1\n").is_err());
    }

    proptest! {
        #[test]
        fn bitwise_roundtrip(vals in proptest::collection::vec(-1e3f64..1e3, 12), ox in -3i32..3, oy in -3i32..3) {
            let m = FilterMask::with_origin(3, 4, (ox, oy), vals).unwrap();
            let f = MaskFile::new("r", "custom", vec![("t".into(), 0.1)], m);
            let back = parse_mask(&render_mask(&f)).unwrap();
            for (a, b) in back.mask.coeffs().iter().zip(f.mask.coeffs()) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
            prop_assert_eq!(back, f);
        }
    }
}
