//! MOLINT: a line-based text format for molecular integrals.
//!
//! ```text
//! # comment
//! format molint 1
//! modes 4
//! two_body_scale 2.0        # optional, default 1
//! constant 0.0              # optional, default 0
//! meta basis STO-3G         # optional free text, repeatable
//! 1body 1 1 -1.25246357
//! 2body 1 2 2 1 0.33724438
//! ```
//!
//! Indices are 1-based. One-body entries are mirrored: `1body i j v` implies
//! `1body j i v`, and listing both with different values is an error.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralTable {
    pub modes: usize,
    /// `(i, j)` -> value, 0-based.
    pub one_body: BTreeMap<(usize, usize), f64>,
    /// `(i, j, k, l)` -> raw file value, 0-based.
    pub two_body: BTreeMap<(usize, usize, usize, usize), f64>,
    pub two_body_scale: f64,
    pub constant: f64,
    pub metadata: Vec<String>,
}

impl IntegralTable {
    pub fn new(modes: usize) -> Self {
        Self {
            modes,
            one_body: BTreeMap::new(),
            two_body: BTreeMap::new(),
            two_body_scale: 1.0,
            constant: 0.0,
            metadata: Vec::new(),
        }
    }

    /// One-body value with 1-based indices.
    pub fn h1(&self, i: usize, j: usize) -> Option<f64> {
        self.one_body.get(&(i.checked_sub(1)?, j.checked_sub(1)?)).copied()
    }

    /// Raw two-body value with 1-based indices.
    pub fn h2(&self, i: usize, j: usize, k: usize, l: usize) -> Option<f64> {
        self.two_body
            .get(&(i.checked_sub(1)?, j.checked_sub(1)?, k.checked_sub(1)?, l.checked_sub(1)?))
            .copied()
    }

    pub fn validate(&self) -> Result<()> {
        for (&(i, j), &v) in &self.one_body {
            if i >= self.modes || j >= self.modes {
                return Err(Error::Validation(format!(
                    "one-body index ({}, {}) outside {} modes",
                    i + 1,
                    j + 1,
                    self.modes
                )));
            }
            match self.one_body.get(&(j, i)) {
                Some(&w) if w == v => {}
                _ => {
                    return Err(Error::Validation(format!(
                        "one-body entries ({}, {}) and ({}, {}) are not symmetric",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )))
                }
            }
        }
        for &(i, j, k, l) in self.two_body.keys() {
            if [i, j, k, l].iter().any(|&x| x >= self.modes) {
                return Err(Error::Validation(format!(
                    "two-body index ({}, {}, {}, {}) outside {} modes",
                    i + 1,
                    j + 1,
                    k + 1,
                    l + 1,
                    self.modes
                )));
            }
        }
        if !self.two_body_scale.is_finite() || !self.constant.is_finite() {
            return Err(Error::Validation("non-finite scale or constant".into()));
        }
        Ok(())
    }

    /// Writes the table back in MOLINT form. Values use the shortest
    /// representation that parses back to the same `f64`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("format molint 1\n");
        for m in &self.metadata {
            let _ = writeln!(out, "meta {m}");
        }
        let _ = writeln!(out, "modes {}", self.modes);
        let _ = writeln!(out, "two_body_scale {:?}", self.two_body_scale);
        let _ = writeln!(out, "constant {:?}", self.constant);
        for (&(i, j), v) in &self.one_body {
            let _ = writeln!(out, "1body {} {} {v:?}", i + 1, j + 1);
        }
        for (&(i, j, k, l), v) in &self.two_body {
            let _ = writeln!(out, "2body {} {} {} {} {v:?}", i + 1, j + 1, k + 1, l + 1);
        }
        out
    }
}

pub fn parse_integral_file(text: &str) -> Result<IntegralTable> {
    let mut modes: Option<usize> = None;
    let mut table = IntegralTable::new(0);
    let mut raw_one_body: Vec<(usize, usize, usize, f64)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let keyword = fields.next().unwrap_or_default();
        let rest: Vec<&str> = fields.collect();
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };

        match keyword {
            "format" => {
                if rest != ["molint", "1"] {
                    return Err(err(format!("unsupported format declaration {:?}", rest.join(" "))));
                }
            }
            "modes" => {
                let [m] = rest[..] else {
                    return Err(err("expected `modes <M>`".into()));
                };
                if modes.is_some() {
                    return Err(err("duplicate `modes` directive".into()));
                }
                let m: usize = m.parse().map_err(|_| err(format!("invalid mode count {m:?}")))?;
                modes = Some(m);
                table.modes = m;
            }
            "two_body_scale" | "constant" => {
                let [v] = rest[..] else {
                    return Err(err(format!("expected `{keyword} <real>`")));
                };
                let v = parse_real(v, line_no)?;
                if keyword == "constant" {
                    table.constant = v;
                } else {
                    table.two_body_scale = v;
                }
            }
            "meta" => {
                let text = raw.split('#').next().unwrap_or("").trim();
                table.metadata.push(text["meta".len()..].trim().to_string());
            }
            "1body" | "2body" => {
                let arity = if keyword == "1body" { 2 } else { 4 };
                if rest.len() != arity + 1 {
                    return Err(err(format!("`{keyword}` takes {arity} indices and a value")));
                }
                let m = modes.ok_or_else(|| err("`modes` must precede integral entries".into()))?;
                let mut index = Vec::with_capacity(arity);
                for s in &rest[..arity] {
                    let i: usize = s.parse().map_err(|_| err(format!("invalid index {s:?}")))?;
                    if i == 0 || i > m {
                        return Err(Error::Range {
                            line: line_no,
                            index: i,
                            modes: m,
                        });
                    }
                    index.push(i - 1);
                }
                let value = parse_real(rest[arity], line_no)?;
                if arity == 2 {
                    raw_one_body.push((line_no, index[0], index[1], value));
                } else {
                    let key = (index[0], index[1], index[2], index[3]);
                    if table.two_body.insert(key, value).is_some() {
                        return Err(err("duplicate two-body entry".into()));
                    }
                }
            }
            other => return Err(err(format!("unknown directive {other:?}"))),
        }
    }

    if modes.is_none() {
        return Err(Error::Parse {
            line: 0,
            message: "missing `modes` directive".into(),
        });
    }

    for (line_no, i, j, v) in raw_one_body {
        for key in [(i, j), (j, i)] {
            match table.one_body.get(&key) {
                Some(&w) if w != v => {
                    return Err(Error::Validation(format!(
                        "line {line_no}: one-body ({}, {}) = {v} conflicts with ({}, {}) = {w}",
                        i + 1,
                        j + 1,
                        key.0 + 1,
                        key.1 + 1
                    )))
                }
                _ => {
                    table.one_body.insert(key, v);
                }
            }
        }
    }

    table.validate()?;
    Ok(table)
}

fn parse_real(s: &str, line: usize) -> Result<f64> {
    let v: f64 = s.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid number {s:?}"),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("non-finite number {s:?}"),
        });
    }
    Ok(v)
}
