use std::collections::HashMap;
use std::fmt;

use crate::protoexact::{BiSimplicialGroupoid, SimplicialGroupoid};
use crate::simpcore::delta::{codegeneracy, coface};
use crate::simpcore::SimplicialSet;

use super::comma::{functor_equiv, iso_comma, GroupoidCospan};
use super::simplicial::simplex_label;
use super::SegError;

/// A commuting square of simplicial operators
///
/// ```text
/// X_p --a--> X_q
///  |b         |c
///  v          v
/// X_q' --d--> X_r
/// ```
/// with `a, b, c, d` given as monotone maps of ordinals (`a: [q] -> [p]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpSquare {
    pub label: String,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
}

fn after(first: &[usize], then: &[usize]) -> Vec<usize> {
    first.iter().map(|&i| then[i]).collect()
}

/// Triangulation squares: for `2 ≤ n`, `n + 1 ≤ nmax`, `0 < i < n`.
pub fn triangulation_squares(nmax: usize) -> Vec<(usize, OpSquare)> {
    let mut out = Vec::new();
    for n in 2..nmax {
        for i in 1..n {
            out.push((
                n + 1,
                OpSquare {
                    label: format!("2-Segal n={n} i={i} upper"),
                    a: coface(n + 1, n + 1),
                    c: coface(n, i),
                    b: coface(n + 1, i),
                    d: coface(n, n),
                },
            ));
            out.push((
                n + 1,
                OpSquare {
                    label: format!("2-Segal n={n} i={i} lower"),
                    a: coface(n + 1, 0),
                    c: coface(n, i),
                    b: coface(n + 1, i + 1),
                    d: coface(n, 0),
                },
            ));
        }
    }
    out
}

/// Unitality squares: for `1 ≤ n`, `n + 1 ≤ nmax`, `0 ≤ i < n`.
pub fn unitality_squares(nmax: usize) -> Vec<(usize, OpSquare)> {
    let mut out = Vec::new();
    for n in 1..nmax {
        for i in 0..n {
            out.push((
                n,
                OpSquare {
                    label: format!("unital n={n} i={i} last"),
                    a: codegeneracy(n, i),
                    c: coface(n + 1, n + 1),
                    b: coface(n, n),
                    d: codegeneracy(n - 1, i),
                },
            ));
            out.push((
                n,
                OpSquare {
                    label: format!("unital n={n} i={i} first"),
                    a: codegeneracy(n, i + 1),
                    c: coface(n + 1, 0),
                    b: coface(n, 0),
                    d: codegeneracy(n - 1, i),
                },
            ));
        }
    }
    out
}

/// Segal squares `X_n -> X_{n-1} ×_{X_0} X_1` for `2 ≤ n ≤ nmax`.
pub fn segal_squares(nmax: usize) -> Vec<(usize, OpSquare)> {
    (2..=nmax)
        .map(|n| {
            (
                n,
                OpSquare {
                    label: format!("Segal n={n}"),
                    a: coface(n, n),
                    c: vec![n - 1],
                    b: vec![n - 1, n],
                    d: vec![0],
                },
            )
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareCheck {
    pub label: String,
    pub witness: Option<String>,
}

impl SquareCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SegReport {
    pub checks: Vec<SquareCheck>,
}

impl SegReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(SquareCheck::passed)
    }

    pub fn first_failure(&self) -> Option<&SquareCheck> {
        self.checks.iter().find(|c| !c.passed())
    }
}

impl fmt::Display for SegReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "square {}: pass", c.label)?,
                Some(w) => writeln!(f, "square {}: FAIL witness: {w}", c.label)?,
            }
        }
        write!(
            f,
            "verdict: {} ({} squares)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len()
        )
    }
}

/// Checks that `X_p -> X_q ×^h_{X_r} X_q'` is an equivalence of groupoids.
pub fn check_square(
    x: &dyn SimplicialGroupoid,
    p: usize,
    sq: &OpSquare,
) -> Result<SquareCheck, SegError> {
    let q = sq.a.len() - 1;
    let q2 = sq.b.len() - 1;
    let r = sq.c.len() - 1;
    debug_assert_eq!(after(&sq.c, &sq.a), after(&sq.d, &sq.b), "{}", sq.label);
    let (fa, fb) = (x.op(p, &sq.a)?, x.op(p, &sq.b)?);
    let (fc, fd) = (x.op(q, &sq.c)?, x.op(q2, &sq.d)?);
    let comma = iso_comma(&GroupoidCospan {
        left: x.level(q),
        f: &fc,
        right: x.level(q2),
        h: &fd,
        apex: x.level(r),
    })?;
    let mut phi = Vec::with_capacity(x.level(p).len());
    for v in 0..x.level(p).len() {
        let z = x.level(r).aut(fc.on_class[fa.on_class[v]]);
        let ac = x.cell(p, &sq.a, &sq.c, v)?;
        let bd = x.cell(p, &sq.b, &sq.d, v)?;
        phi.push(z.mul(bd, z.inv(ac)));
    }
    let witness = match comma.induced(&fa, &fb, &phi) {
        Err(w) => Some(w),
        Ok(g) => functor_equiv(&g, x.level(p), &comma.groupoid).err(),
    };
    Ok(SquareCheck {
        label: sq.label.clone(),
        witness,
    })
}

fn run(
    x: &dyn SimplicialGroupoid,
    nmax: usize,
    squares: Vec<(usize, OpSquare)>,
) -> Result<SegReport, SegError> {
    if x.max_level() < nmax {
        return Err(SegError::LevelMissing {
            level: nmax,
            max: x.max_level(),
        });
    }
    let mut checks = Vec::new();
    for (p, sq) in squares {
        checks.push(check_square(x, p, &sq)?);
    }
    Ok(SegReport { checks })
}

/// Unital 2-Segal condition through level `nmax`.
pub fn check_2segal(x: &dyn SimplicialGroupoid, nmax: usize) -> Result<SegReport, SegError> {
    let mut squares = triangulation_squares(nmax);
    squares.extend(unitality_squares(nmax));
    run(x, nmax, squares)
}

/// Segal condition through level `nmax`.
pub fn check_segal(x: &dyn SimplicialGroupoid, nmax: usize) -> Result<SegReport, SegError> {
    run(x, nmax, segal_squares(nmax))
}

/// The 2-Segal check on a simplicial set using strict pullbacks of sets.
pub fn check_2segal_strict(x: &SimplicialSet, nmax: usize) -> SegReport {
    let mut squares = triangulation_squares(nmax);
    squares.extend(unitality_squares(nmax));
    let checks = squares
        .into_iter()
        .map(|(p, sq)| strict_square(x, p, &sq))
        .collect();
    SegReport { checks }
}

fn strict_square(x: &SimplicialSet, p: usize, sq: &OpSquare) -> SquareCheck {
    let apply = |s: &crate::simpcore::Simplex<1>, t: &[usize]| x.apply(s, &[t.to_vec()]);
    let q2 = sq.b.len() - 1;
    let q = sq.a.len() - 1;
    let mut by_image: HashMap<_, Vec<_>> = HashMap::new();
    for y2 in x.simplices([q2]) {
        by_image.entry(apply(&y2, &sq.d)).or_default().push(y2);
    }
    let mut image = HashMap::new();
    for v in x.simplices([p]) {
        let key = (apply(&v, &sq.a), apply(&v, &sq.b));
        if let Some(u) = image.insert(key.clone(), v.clone()) {
            return SquareCheck {
                label: sq.label.clone(),
                witness: Some(format!(
                    "{} and {} have the same boundary ({}, {})",
                    simplex_label(&u),
                    simplex_label(&v),
                    simplex_label(&key.0),
                    simplex_label(&key.1)
                )),
            };
        }
    }
    for y in x.simplices([q]) {
        for y2 in by_image.get(&apply(&y, &sq.c)).into_iter().flatten() {
            if !image.contains_key(&(y.clone(), y2.clone())) {
                return SquareCheck {
                    label: sq.label.clone(),
                    witness: Some(format!(
                        "pair ({}, {}) has no filler",
                        simplex_label(&y),
                        simplex_label(y2)
                    )),
                };
            }
        }
    }
    SquareCheck {
        label: sq.label.clone(),
        witness: None,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DoubleReport {
    pub rows: Vec<(usize, SegReport)>,
    pub columns: Vec<(usize, SegReport)>,
}

impl DoubleReport {
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .chain(&self.columns)
            .all(|(_, r)| r.passed())
    }
}

impl fmt::Display for DoubleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, list) in [("row", &self.rows), ("column", &self.columns)] {
            for (i, r) in list {
                let fail = r.first_failure();
                writeln!(
                    f,
                    "{name} {i}: {} squares, {}{}",
                    r.checks.len(),
                    if fail.is_none() { "pass" } else { "FAIL" },
                    fail.map(|c| format!(
                        " at {}: {}",
                        c.label,
                        c.witness.as_deref().unwrap_or("")
                    ))
                    .unwrap_or_default()
                )?;
            }
        }
        write!(
            f,
            "verdict: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Runs the 2-Segal check on every row `X_{•,k}` and column `X_{n,•}`
/// within the bounds of `x`.
pub fn check_double_2segal(x: &dyn BiSimplicialGroupoid) -> Result<DoubleReport, SegError> {
    let (nmax, kmax) = x.bounds();
    let mut out = DoubleReport::default();
    for k in 0..=kmax {
        out.rows.push((k, check_2segal(x.row(k).as_ref(), nmax)?));
    }
    for n in 0..=nmax {
        out.columns
            .push((n, check_2segal(x.column(n).as_ref(), kmax)?));
    }
    Ok(out)
}
