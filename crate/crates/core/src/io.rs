//! Plain-text file formats for generator matrices, check sets, and words.
//!
//! Field elements are written as their integer indices. Parsers report the
//! 1-based line number of the first malformed line.

use std::fmt::Write as _;

use thiserror::Error;

use crate::code::{GeneratorMatrix, ParityCheck};
use crate::field::{Elem, Field};
use crate::linalg::Matrix;
use crate::ortho::{OrthogonalCheckSet, Tier};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        msg: msg.into(),
    })
}

/// Non-blank lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn numbers<T: std::str::FromStr>(line: usize, s: &str) -> Result<Vec<T>, ParseError> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<T>()
                .or_else(|_| err(line, format!("bad number {tok:?}")))
        })
        .collect()
}

fn elem(line: usize, v: u32, q: u32) -> Result<Elem, ParseError> {
    if v >= q {
        return err(line, format!("field element {v} out of range for q={q}"));
    }
    Ok(Elem(v as u8))
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_generator(g: &GeneratorMatrix) -> String {
    let mut out = format!("{} {} {}", g.q, g.m, g.l);
    if let Some(a) = &g.alpha {
        write!(out, " {}", join(a)).unwrap();
    }
    writeln!(out, "\n{} {}", g.k(), g.n()).unwrap();
    for row in g.matrix.row_iter() {
        writeln!(out, "{}", join(row.iter().map(|e| e.index()))).unwrap();
    }
    out
}

pub fn parse_generator(text: &str) -> Result<GeneratorMatrix, ParseError> {
    let mut it = lines(text);
    let Some((ln, head)) = it.next() else {
        return err(1, "empty generator file");
    };
    let head: Vec<usize> = numbers(ln, head)?;
    if head.len() < 3 {
        return err(ln, "expected `q m l [alpha...]`");
    }
    let (q, m, l) = (head[0] as u32, head[1], head[2]);
    let alpha = match head.len() - 3 {
        0 => None,
        x if x == l => Some(head[3..].to_vec()),
        _ => return err(ln, format!("expected {l} alpha entries")),
    };
    if Field::new(q).is_err() {
        return err(ln, format!("unsupported field order {q}"));
    }
    let Some((ln, dims)) = it.next() else {
        return err(ln + 1, "missing `k n` line");
    };
    let dims: Vec<usize> = numbers(ln, dims)?;
    let [k, n] = dims[..] else {
        return err(ln, "expected `k n`");
    };
    let mut data = Vec::with_capacity(k * n);
    let mut last = ln;
    for _ in 0..k {
        let Some((ln, row)) = it.next() else {
            return err(last + 1, format!("expected {k} matrix rows"));
        };
        let vals: Vec<u32> = numbers(ln, row)?;
        if vals.len() != n {
            return err(ln, format!("expected {n} entries, found {}", vals.len()));
        }
        for v in vals {
            data.push(elem(ln, v, q)?);
        }
        last = ln;
    }
    if let Some((ln, _)) = it.next() {
        return err(ln, "trailing content");
    }
    Ok(GeneratorMatrix {
        q,
        m,
        l,
        alpha,
        matrix: Matrix::from_vec(k, n, data),
    })
}

/// Check sets for a whole code, as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckSetFile {
    pub q: u32,
    pub m: usize,
    pub l: usize,
    pub alpha: Vec<usize>,
    pub sets: Vec<OrthogonalCheckSet>,
}

fn check_line(chk: &ParityCheck, center: usize) -> String {
    let mut out = chk.weight().to_string();
    let first = chk.entries().iter().filter(|e| e.0 == center);
    let rest = chk.entries().iter().filter(|e| e.0 != center);
    for (p, c) in first.chain(rest) {
        write!(out, " {p}:{}", c.index()).unwrap();
    }
    out
}

/// Header `q m l alpha_1 alpha_2 centers`, then per center `P pos count`
/// and one line `w pos:coef ...` per check, center entry first.
pub fn write_checks(file: &CheckSetFile) -> String {
    let mut out = format!(
        "{} {} {} {} {}\n",
        file.q,
        file.m,
        file.l,
        join(&file.alpha),
        file.sets.len()
    );
    for set in &file.sets {
        writeln!(out, "P {} {}", set.center(), set.len()).unwrap();
        for chk in set.checks() {
            writeln!(out, "{}", check_line(chk, set.center())).unwrap();
        }
    }
    out
}

pub fn parse_checks(text: &str) -> Result<CheckSetFile, ParseError> {
    let mut it = lines(text);
    let Some((ln, head)) = it.next() else {
        return err(1, "empty check-set file");
    };
    let head: Vec<usize> = numbers(ln, head)?;
    if head.len() < 4 {
        return err(ln, "expected `q m l alpha... centers`");
    }
    let (q, m, l) = (head[0] as u32, head[1], head[2]);
    if head.len() != 4 + l {
        return err(ln, format!("expected {l} alpha entries"));
    }
    let Ok(field) = Field::new(q) else {
        return err(ln, format!("unsupported field order {q}"));
    };
    let alpha = head[3..3 + l].to_vec();
    let centers = head[3 + l];
    let mut sets = Vec::with_capacity(centers);
    let mut last = ln;
    for _ in 0..centers {
        let Some((ln, line)) = it.next() else {
            return err(last + 1, format!("expected {centers} centers"));
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "P" {
            return err(ln, "expected `P <pos> <count>`");
        }
        let nums: Vec<usize> = numbers(ln, &toks[1..].join(" "))?;
        let (center, count) = (nums[0], nums[1]);
        last = ln;
        let mut checks = Vec::with_capacity(count);
        let mut tiers = Vec::with_capacity(count);
        for _ in 0..count {
            let Some((ln, line)) = it.next() else {
                return err(
                    last + 1,
                    format!("expected {count} checks for center {center}"),
                );
            };
            let mut toks = line.split_whitespace();
            let w: usize = toks
                .next()
                .and_then(|t| t.parse().ok())
                .map_or_else(|| err(ln, "missing weight"), Ok)?;
            let mut entries = Vec::with_capacity(w);
            for tok in toks {
                let Some((p, c)) = tok.split_once(':') else {
                    return err(ln, format!("expected pos:coef, found {tok:?}"));
                };
                let (Ok(p), Ok(c)) = (p.parse::<usize>(), c.parse::<u32>()) else {
                    return err(ln, format!("bad entry {tok:?}"));
                };
                let c = elem(ln, c, q)?;
                if c.is_zero() {
                    return err(ln, "zero coefficient");
                }
                entries.push((p, c));
            }
            let chk = ParityCheck::from_entries(entries, &field);
            if chk.weight() != w {
                return err(
                    ln,
                    format!(
                        "weight {w} does not match {} distinct entries",
                        chk.weight()
                    ),
                );
            }
            tiers.push(match w {
                3 => Tier::Weight3,
                5 => Tier::Weight5,
                _ => return err(ln, format!("unexpected check weight {w}")),
            });
            checks.push(chk);
            last = ln;
        }
        sets.push(OrthogonalCheckSet::new(center, checks, tiers));
    }
    if let Some((ln, _)) = it.next() {
        return err(ln, "trailing content");
    }
    Ok(CheckSetFile {
        q,
        m,
        l,
        alpha,
        sets,
    })
}

/// One word per line.
pub fn write_words(words: &[Vec<Elem>]) -> String {
    let mut out = String::new();
    for w in words {
        writeln!(out, "{}", join(w.iter().map(|e| e.index()))).unwrap();
    }
    out
}

pub fn parse_words(text: &str, q: u32, n: usize) -> Result<Vec<Vec<Elem>>, ParseError> {
    lines(text)
        .map(|(ln, line)| {
            let vals: Vec<u32> = numbers(ln, line)?;
            if vals.len() != n {
                return err(ln, format!("expected {n} symbols, found {}", vals.len()));
            }
            vals.into_iter().map(|v| elem(ln, v, q)).collect()
        })
        .collect()
}
