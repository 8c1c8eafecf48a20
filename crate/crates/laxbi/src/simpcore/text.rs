//! Line-oriented interchange format.
//!
//! ```text
//! complex dim=2 bound=1,1 cells=9
//! cell 0 deg=0,0
//! cell 4 deg=1,0 h=1:-/-,0:-/-
//! ```
//! A face reference is `cell:word` with one degeneracy word per direction
//! (`-` for the empty word, otherwise decreasing indices joined by `.`).

use std::fmt::Write as _;

use super::{delta, Complex, SimpError, Simplex};

const KEYS: [&str; 2] = ["h", "v"];

fn word(w: &[usize]) -> String {
    if w.is_empty() {
        "-".into()
    } else {
        w.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn print<const D: usize>(x: &Complex<D>) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "complex dim={} bound={} cells={}",
        D,
        join(&x.bound()),
        x.len()
    )
    .unwrap();
    for (i, c) in x.cells().iter().enumerate() {
        write!(s, "cell {} deg={}", i, join(&c.deg)).unwrap();
        for d in 0..D {
            if c.faces[d].is_empty() {
                continue;
            }
            let refs: Vec<String> = c.faces[d]
                .iter()
                .map(|f| {
                    let ws: Vec<String> = f
                        .ops
                        .iter()
                        .map(|o| word(&delta::word_of_surjection(o)))
                        .collect();
                    format!("{}:{}", f.cell, ws.join("/"))
                })
                .collect();
            write!(s, " {}={}", KEYS[d], refs.join(",")).unwrap();
        }
        s.push('\n');
    }
    s
}

fn perr(line: usize, msg: impl Into<String>) -> SimpError {
    SimpError::Parse {
        line,
        msg: msg.into(),
    }
}

fn nums(line: usize, s: &str, sep: char) -> Result<Vec<usize>, SimpError> {
    s.split(sep)
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| perr(line, format!("bad number '{t}'")))
        })
        .collect()
}

pub fn parse<const D: usize>(text: &str) -> Result<Complex<D>, SimpError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
    let (ln, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let mut dim = None;
    let mut bound = None;
    let mut count = None;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("complex") {
        return Err(perr(ln + 1, "expected 'complex' header"));
    }
    for t in toks {
        let (k, v) = t
            .split_once('=')
            .ok_or_else(|| perr(ln + 1, "malformed header field"))?;
        match k {
            "dim" => dim = Some(nums(ln + 1, v, ',')?[0]),
            "bound" => bound = Some(nums(ln + 1, v, ',')?),
            "cells" => count = Some(nums(ln + 1, v, ',')?[0]),
            _ => return Err(perr(ln + 1, format!("unknown header field '{k}'"))),
        }
    }
    if dim != Some(D) {
        return Err(perr(ln + 1, format!("expected dim={D}")));
    }
    let bound = bound.ok_or_else(|| perr(ln + 1, "missing bound"))?;
    if bound.len() != D {
        return Err(perr(ln + 1, "bound has wrong arity"));
    }
    let mut out = Complex::new(std::array::from_fn(|d| bound[d]));
    for (ln, l) in lines {
        let ln = ln + 1;
        let mut toks = l.split_whitespace();
        if toks.next() != Some("cell") {
            return Err(perr(ln, "expected 'cell'"));
        }
        let id: usize = toks
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| perr(ln, "missing cell id"))?;
        if id != out.len() {
            return Err(perr(ln, "cell ids must be consecutive"));
        }
        let degtok = toks
            .next()
            .and_then(|t| t.strip_prefix("deg="))
            .ok_or_else(|| perr(ln, "missing deg"))?;
        let deg = nums(ln, degtok, ',')?;
        if deg.len() != D {
            return Err(perr(ln, "deg has wrong arity"));
        }
        let deg: [usize; D] = std::array::from_fn(|d| deg[d]);
        let mut faces: [Vec<Simplex<D>>; D] = std::array::from_fn(|_| Vec::new());
        for t in toks {
            let (k, v) = t
                .split_once('=')
                .ok_or_else(|| perr(ln, "malformed face list"))?;
            let d = KEYS[..D]
                .iter()
                .position(|x| *x == k)
                .ok_or_else(|| perr(ln, format!("unknown key '{k}'")))?;
            let mut fdeg = deg;
            if fdeg[d] == 0 {
                return Err(perr(ln, "faces given in a direction of degree 0"));
            }
            fdeg[d] -= 1;
            for r in v.split(',') {
                let (c, ws) = r
                    .split_once(':')
                    .ok_or_else(|| perr(ln, "malformed face reference"))?;
                let c: usize = c.parse().map_err(|_| perr(ln, "bad face cell"))?;
                if c >= out.len() {
                    return Err(perr(ln, "face refers to a later cell"));
                }
                let ws: Vec<&str> = ws.split('/').collect();
                if ws.len() != D {
                    return Err(perr(ln, "wrong number of degeneracy words"));
                }
                let cdeg = out.cell(c).deg;
                let mut ops: [Vec<usize>; D] = std::array::from_fn(|_| Vec::new());
                for e in 0..D {
                    let w = if ws[e] == "-" {
                        Vec::new()
                    } else {
                        nums(ln, ws[e], '.')?
                    };
                    ops[e] = delta::surjection_of_word(&w, cdeg[e])
                        .filter(|s| s.len() == fdeg[e] + 1)
                        .ok_or_else(|| {
                            perr(ln, "degeneracy word not in normal form or of wrong length")
                        })?;
                }
                faces[d].push(Simplex { cell: c, ops });
            }
        }
        out.add_cell(deg, faces)
            .map_err(|e| perr(ln, e.to_string()))?;
    }
    if count != Some(out.len()) {
        return Err(perr(ln + 1, "cell count does not match header"));
    }
    Ok(out)
}
