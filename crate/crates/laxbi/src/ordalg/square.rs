use std::collections::HashMap;

use super::{AlgError, AlgMorphism};

/// A possibly non-commuting square
/// ```text
/// X' --top--> Y'
/// |left       |right
/// X  --bottom-> Y
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgSquare {
    pub top: AlgMorphism,
    pub left: AlgMorphism,
    pub bottom: AlgMorphism,
    pub right: AlgMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PpFailure {
    Shape,
    /// Condition (1): the underlying square of sets is not a pullback.
    NotPullback,
    /// Condition (2) fails over the given element of `X`.
    LeftFiber(usize),
    /// Condition (3) fails over the given element of `Y'`.
    TopFiber(usize),
}

impl AlgSquare {
    pub fn check_pseudo_pullback(&self) -> Result<(), PpFailure> {
        let (t, l, b, r) = (&self.top, &self.left, &self.bottom, &self.right);
        if t.source() != l.source()
            || l.target() != b.source()
            || t.target() != r.source()
            || b.target() != r.target()
        {
            return Err(PpFailure::Shape);
        }
        let (tm, lm, bm, rm) = (t.map(), l.map(), b.map(), r.map());
        let mut pairs = HashMap::new();
        for x in 0..t.source() {
            if bm[lm[x]] != rm[tm[x]] || pairs.insert((lm[x], tm[x]), x).is_some() {
                return Err(PpFailure::NotPullback);
            }
        }
        let want: usize = (0..r.target())
            .map(|y| b.fiber(y).len() * r.fiber(y).len())
            .sum();
        if pairs.len() != want {
            return Err(PpFailure::NotPullback);
        }
        for x in 0..l.target() {
            let img: Vec<usize> = l.fiber(x).iter().map(|&e| tm[e]).collect();
            if img != r.fiber(bm[x]) {
                return Err(PpFailure::LeftFiber(x));
            }
        }
        for y in 0..t.target() {
            let img: Vec<usize> = t.fiber(y).iter().map(|&e| lm[e]).collect();
            if img != b.fiber(rm[y]) {
                return Err(PpFailure::TopFiber(y));
            }
        }
        Ok(())
    }

    pub fn is_pseudo_pullback(&self) -> bool {
        self.check_pseudo_pullback().is_ok()
    }
}

/// The pseudo-pullback of `p: X -> Y` and `q: Z -> Y`. Elements of the apex
/// are the pairs `(x, z)` with `p(x) = q(z)`, listed lexicographically; they
/// are returned alongside the square.
pub fn pseudo_pullback(
    p: &AlgMorphism,
    q: &AlgMorphism,
) -> Result<(AlgSquare, Vec<(usize, usize)>), AlgError> {
    if p.target() != q.target() {
        return Err(AlgError::TypeMismatch(format!(
            "targets {} and {} differ",
            p.target(),
            q.target()
        )));
    }
    let (pm, qm) = (p.map(), q.map());
    let mut pairs = Vec::new();
    for x in 0..p.source() {
        for z in 0..q.source() {
            if pm[x] == qm[z] {
                pairs.push((x, z));
            }
        }
    }
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &pr)| (pr, i)).collect();
    let left = AlgMorphism::new(
        pairs.len(),
        (0..p.source())
            .map(|x| q.fiber(pm[x]).iter().map(|&z| index[&(x, z)]).collect())
            .collect(),
    )?;
    let top = AlgMorphism::new(
        pairs.len(),
        (0..q.source())
            .map(|z| p.fiber(qm[z]).iter().map(|&x| index[&(x, z)]).collect())
            .collect(),
    )?;
    Ok((
        AlgSquare {
            top,
            left,
            bottom: p.clone(),
            right: q.clone(),
        },
        pairs,
    ))
}
