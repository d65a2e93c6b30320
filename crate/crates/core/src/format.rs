//! Plain-text `.aqc` (code) and `.pkg` (packing) files.
//!
//! ```text
//! aqc v1
//! field p=2 e=1 f=0,1 h=2 g=1,1,1
//! code n=6 r=3
//! 1,0 0,1 ...
//! ```
//!
//! ```text
//! pkg v1
//! field p=2 e=1 f=0,1 h=2 g=1,1,1
//! packing r=3 blocks=7
//! block dim=1
//! 0 0 1
//! ...
//! ```
//!
//! Polynomial coefficients are ascending. An `F_q` element is written as its
//! `e` base-`p` digits joined by `:` (a bare digit when `e = 1`); an
//! `F_{q^h}` element as its `h` coordinates joined by `,`. In a `.pkg` file
//! `h` and `g` are optional.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use crate::code::AdditiveCode;
use crate::error::{Error, Result};
use crate::field::{BaseField, FieldTower};
use crate::linalg::Matrix;
use crate::packing::Packing;
use crate::subspace::Subspace;

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn base_header(gf: &BaseField) -> String {
    format!("field p={} e={} f={}", gf.p(), gf.e(), join(gf.modulus(), ","))
}

/// The `field ...` header line for a tower.
pub fn field_header(tower: &FieldTower) -> String {
    let gf = tower.base();
    format!(
        "{} h={} g={}",
        base_header(gf),
        tower.h(),
        join(tower.modulus().iter().map(|&c| gf.format_element(c)), ",")
    )
}

/// Parsed `key=value` pairs of a header line after its leading keyword.
fn keyvals(line: &str, lineno: usize, keyword: &str) -> Result<HashMap<String, String>> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(Error::parse(lineno, format!("expected a `{keyword}` line")));
    }
    let mut out = HashMap::new();
    for p in parts {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Error::parse(lineno, format!("expected key=value, found {p:?}")))?;
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::parse(lineno, format!("duplicate key {k}")));
        }
    }
    Ok(out)
}

fn num<T: std::str::FromStr>(kv: &HashMap<String, String>, key: &str, lineno: usize) -> Result<T> {
    kv.get(key)
        .ok_or_else(|| Error::parse(lineno, format!("missing {key}=")))?
        .parse()
        .map_err(|_| Error::parse(lineno, format!("bad value for {key}")))
}

/// Parses a field header; the tower is present when `h` and `g` are.
fn parse_field(line: &str, lineno: usize) -> Result<(Arc<BaseField>, Option<FieldTower>)> {
    let kv = keyvals(line, lineno, "field")?;
    let p: u32 = num(&kv, "p", lineno)?;
    let e: usize = num(&kv, "e", lineno)?;
    let f: Vec<u32> = kv
        .get("f")
        .ok_or_else(|| Error::parse(lineno, "missing f="))?
        .split(',')
        .map(|c| c.parse().map_err(|_| Error::parse(lineno, format!("bad coefficient {c:?} in f"))))
        .collect::<Result<_>>()?;
    if f.len() != e + 1 {
        return Err(Error::parse(lineno, format!("f has degree {}, expected e={e}", f.len() as i64 - 1)));
    }
    let base = Arc::new(BaseField::with_modulus(p, f).map_err(|err| Error::parse(lineno, err.to_string()))?);
    let tower = match (kv.get("h"), kv.get("g")) {
        (None, None) => None,
        (Some(_), Some(g)) => {
            let h: usize = num(&kv, "h", lineno)?;
            let g: Vec<u32> = g
                .split(',')
                .map(|c| {
                    base.parse_element(c)
                        .ok_or_else(|| Error::parse(lineno, format!("bad coefficient {c:?} in g")))
                })
                .collect::<Result<_>>()?;
            if g.len() != h + 1 {
                return Err(Error::parse(lineno, format!("g has degree {}, expected h={h}", g.len() as i64 - 1)));
            }
            let t = FieldTower::with_modulus(base.clone(), g)
                .map_err(|err| Error::parse(lineno, err.to_string()))?;
            Some(t)
        }
        _ => return Err(Error::parse(lineno, "h= and g= must appear together")),
    };
    Ok((base, tower))
}

/// Non-empty lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty())
}

fn expect_magic<'a>(
    it: &mut impl Iterator<Item = (usize, &'a str)>,
    magic: &str,
) -> Result<()> {
    match it.next() {
        Some((_, l)) if l.trim() == magic => Ok(()),
        Some((n, l)) => Err(Error::parse(n, format!("expected {magic:?}, found {l:?}"))),
        None => Err(Error::parse(1, "empty file")),
    }
}

fn next_line<'a>(it: &mut impl Iterator<Item = (usize, &'a str)>, what: &str) -> Result<(usize, &'a str)> {
    it.next()
        .ok_or_else(|| Error::parse(0, format!("unexpected end of file, expected {what}")))
}

/// Serializes a code.
pub fn write_code(code: &AdditiveCode) -> String {
    let tower = code.tower();
    let mut out = String::new();
    out.push_str("aqc v1\n");
    out.push_str(&field_header(tower));
    out.push('\n');
    out.push_str(&format!("code n={} r={}\n", code.n(), code.r()));
    for row in code.generator() {
        out.push_str(&join(row.iter().map(|a| tower.format_element(a)), " "));
        out.push('\n');
    }
    out
}

/// Parses a code.
pub fn read_code(text: &str) -> Result<AdditiveCode> {
    let mut it = lines(text);
    expect_magic(&mut it, "aqc v1")?;
    let (ln, line) = next_line(&mut it, "field header")?;
    let (_, tower) = parse_field(line, ln)?;
    let tower = Arc::new(tower.ok_or_else(|| Error::parse(ln, "code files need h= and g="))?);
    let (ln, line) = next_line(&mut it, "code header")?;
    let kv = keyvals(line, ln, "code")?;
    let n: usize = num(&kv, "n", ln)?;
    let r: usize = num(&kv, "r", ln)?;
    let h = tower.h();
    let mut expanded = Matrix::zeros(0, n * h);
    for i in 0..r {
        let (ln, line) = next_line(&mut it, &format!("generator row {}", i + 1))?;
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != n {
            return Err(Error::parse(ln, format!("expected {n} entries, found {}", entries.len())));
        }
        let mut flat = Vec::with_capacity(n * h);
        for e in entries {
            let a = tower
                .parse_element(e)
                .ok_or_else(|| Error::parse(ln, format!("bad element {e:?}")))?;
            flat.extend_from_slice(a.coords());
        }
        expanded.push_row(&flat)?;
    }
    if let Some((ln, l)) = it.next() {
        return Err(Error::parse(ln, format!("trailing content {l:?}")));
    }
    AdditiveCode::from_expanded(tower, n, expanded)
}

/// Serializes a packing; the tower, when given, is recorded in the header.
pub fn write_packing(packing: &Packing, tower: Option<&FieldTower>) -> String {
    let gf = packing.field();
    let mut out = String::from("pkg v1\n");
    match tower {
        Some(t) => out.push_str(&field_header(t)),
        None => out.push_str(&base_header(gf)),
    }
    out.push('\n');
    out.push_str(&format!("packing r={} blocks={}\n", packing.ambient(), packing.len()));
    for b in packing.blocks() {
        out.push_str(&format!("block dim={}\n", b.dim()));
        for row in b.basis().iter_rows() {
            out.push_str(&join(row.iter().map(|&c| gf.format_element(c)), " "));
            out.push('\n');
        }
    }
    out
}

/// Parses a packing and, when the header has one, its tower.
pub fn read_packing(text: &str) -> Result<(Packing, Option<FieldTower>)> {
    let mut it = lines(text);
    expect_magic(&mut it, "pkg v1")?;
    let (ln, line) = next_line(&mut it, "field header")?;
    let (gf, tower) = parse_field(line, ln)?;
    let (ln, line) = next_line(&mut it, "packing header")?;
    let kv = keyvals(line, ln, "packing")?;
    let r: usize = num(&kv, "r", ln)?;
    let count: usize = num(&kv, "blocks", ln)?;
    let mut blocks = Vec::with_capacity(count);
    for i in 0..count {
        let (ln, line) = next_line(&mut it, &format!("block {}", i + 1))?;
        let kv = keyvals(line, ln, "block")?;
        let dim: usize = num(&kv, "dim", ln)?;
        let mut rows = Matrix::zeros(0, r);
        for _ in 0..dim {
            let (ln, line) = next_line(&mut it, "block row")?;
            let row: Vec<u32> = line
                .split_whitespace()
                .map(|c| {
                    gf.parse_element(c)
                        .ok_or_else(|| Error::parse(ln, format!("bad element {c:?}")))
                })
                .collect::<Result<_>>()?;
            if row.len() != r {
                return Err(Error::parse(ln, format!("expected {r} coordinates, found {}", row.len())));
            }
            rows.push_row(&row)?;
        }
        let block = Subspace::row_space(&gf, &rows);
        if block.dim() != dim {
            return Err(Error::parse(ln, format!("block {} rows have rank {}, not {dim}", i + 1, block.dim())));
        }
        blocks.push(block);
    }
    if let Some((ln, l)) = it.next() {
        return Err(Error::parse(ln, format!("trailing content {l:?}")));
    }
    Ok((Packing::new(gf, r, blocks)?, tower))
}

pub fn save_code(path: &Path, code: &AdditiveCode) -> Result<()> {
    Ok(std::fs::write(path, write_code(code))?)
}

pub fn load_code(path: &Path) -> Result<AdditiveCode> {
    read_code(&std::fs::read_to_string(path)?)
}

pub fn save_packing(path: &Path, packing: &Packing, tower: Option<&FieldTower>) -> Result<()> {
    Ok(std::fs::write(path, write_packing(packing, tower))?)
}

pub fn load_packing(path: &Path) -> Result<(Packing, Option<FieldTower>)> {
    read_packing(&std::fs::read_to_string(path)?)
}
