use std::collections::HashMap;
use std::sync::Arc;

use super::{interval_domain, Assign, LaxError};
use crate::ordalg::{compose_alg, AlgMorphism, AlgSquare};
use crate::simpcore::{pushout, std_map, BiSimplicialSet, BisimplicialMap, StdSum};
use crate::spanengine::{CellFunctor, SpanMor};
use crate::twistposet::chain;

/// Which direction of a bisimplicial set carries the simplicial data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    /// `X ⊠ Δ¹`.
    Horizontal,
    /// `Δ¹ ⊠ X`.
    Vertical,
}

impl Dir {
    fn dims(self, n: usize) -> [usize; 2] {
        match self {
            Dir::Horizontal => [n, 1],
            Dir::Vertical => [1, n],
        }
    }

    fn verts(self, v: Vec<usize>) -> [Vec<usize>; 2] {
        match self {
            Dir::Horizontal => [v, vec![0, 1]],
            Dir::Vertical => [vec![0, 1], v],
        }
    }
}

pub(crate) fn arc(s: &StdSum<2>) -> Arc<BiSimplicialSet> {
    Arc::new(s.complex.clone())
}

pub(crate) fn sum_map(
    src: &StdSum<2>,
    s: &Arc<BiSimplicialSet>,
    tgt: &StdSum<2>,
    t: &Arc<BiSimplicialSet>,
    a: &Assign,
) -> BisimplicialMap {
    std_map(src, s.clone(), tgt, t.clone(), a).expect("vertex maps are monotone and in range")
}

/// `α(p)`: `X·Δ¹ -> ⊔_y Δ^{|p⁻¹(y)|} <- Y·Δ¹`, the copy of `x` going to the
/// spine edge at its fiber position and the copy of `y` to the long edge.
pub fn alpha_span(p: &AlgMorphism, dir: Dir) -> SpanMor {
    let left = StdSum::new(&vec![[1, 1]; p.source()]);
    let right = StdSum::new(&vec![[1, 1]; p.target()]);
    let apex = StdSum::new(
        &p.fibers()
            .iter()
            .map(|f| dir.dims(f.len()))
            .collect::<Vec<_>>(),
    );
    let (la, aa, ra) = (arc(&left), arc(&apex), arc(&right));
    let (map, pos) = (p.map(), p.positions());
    let lass: Assign = (0..p.source())
        .map(|x| (map[x], dir.verts(vec![pos[x], pos[x] + 1])))
        .collect();
    let rass: Assign = (0..p.target())
        .map(|y| (y, dir.verts(vec![0, p.fiber(y).len()])))
        .collect();
    SpanMor::new(
        sum_map(&left, &la, &apex, &aa, &lass),
        sum_map(&right, &ra, &apex, &aa, &rass),
    )
    .expect("legs share the apex")
}

/// Offset of the block of `y` inside the fiber of `g` over `g(y)`, when each
/// `y'` contributes `size(y')`.
pub(crate) fn block_offset(g: &AlgMorphism, y: usize, size: impl Fn(usize) -> usize) -> usize {
    let z = g.map()[y];
    g.fiber(z)
        .iter()
        .take_while(|&&y2| y2 != y)
        .map(|&y2| size(y2))
        .sum()
}

/// Cut `c` of a fiber `f` sent to the start of the `c`-th block, when each
/// element `x` of `f` is replaced by `size(x)` elements.
pub(crate) fn block_cuts(f: &[usize], size: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut out = vec![0];
    for &x in f {
        out.push(out.last().unwrap() + size(x));
    }
    out
}

/// The lax structure of `α` on a composable pair.
#[derive(Clone, Debug)]
pub struct AlphaLax {
    /// `α(p₂) ∘ α(p₁)`, whose apex is the pushout over `α(X₁)`.
    pub lower: SpanMor,
    /// `α(p₂ p₁)`.
    pub upper: SpanMor,
    /// The comparison from the lower apex to the upper one.
    pub comparison: BisimplicialMap,
}

pub fn alpha_lax(p1: &AlgMorphism, p2: &AlgMorphism, dir: Dir) -> Result<AlphaLax, LaxError> {
    let p21 = compose_alg(p1, p2)?;
    let (a1, a2, upper) = (
        alpha_span(p1, dir),
        alpha_span(p2, dir),
        alpha_span(&p21, dir),
    );
    let po = pushout(&a1.right_leg, &a2.left_leg)?;
    let lower = SpanMor::new(
        a1.left_leg.then(&po.legs[1])?,
        a2.right_leg.then(&po.legs[2])?,
    )?;
    let s1 = StdSum::new(
        &p1.fibers()
            .iter()
            .map(|f| dir.dims(f.len()))
            .collect::<Vec<_>>(),
    );
    let s2 = StdSum::new(
        &p2.fibers()
            .iter()
            .map(|f| dir.dims(f.len()))
            .collect::<Vec<_>>(),
    );
    let su = StdSum::new(
        &p21.fibers()
            .iter()
            .map(|f| dir.dims(f.len()))
            .collect::<Vec<_>>(),
    );
    let size1 = |x: usize| p1.fiber(x).len();
    let map2 = p2.map();
    let c1: Assign = (0..p1.target())
        .map(|x| {
            let off = block_offset(p2, x, size1);
            (map2[x], dir.verts((off..=off + size1(x)).collect()))
        })
        .collect();
    let c2: Assign = (0..p2.target())
        .map(|z| (z, dir.verts(block_cuts(p2.fiber(z), size1))))
        .collect();
    let m1 = sum_map(&s1, &a1.apex, &su, &upper.apex, &c1);
    let m2 = sum_map(&s2, &a2.apex, &su, &upper.apex, &c2);
    let m0 = a1.right_leg.then(&m1)?;
    let comparison = po.induced(&upper.apex, &[m0, m1, m2])?;
    Ok(AlphaLax {
        lower,
        upper,
        comparison,
    })
}

/// The bisimplicial span of a pseudo-pullback square
/// `X' -> Y'`, `X' -> X`, `p₁ = bottom: X -> Y`, `p₂ = right: Y' -> Y`:
/// apex `⊔_y Δ^{|p₁⁻¹ y|, |p₂⁻¹ y|}`, unit squares from `X'` and full
/// diagonals from `Y`.
pub fn square_to_bispan(sq: &AlgSquare) -> Result<SpanMor, LaxError> {
    sq.check_pseudo_pullback()
        .map_err(LaxError::NotPseudoPullback)?;
    let (p1, p2) = (&sq.bottom, &sq.right);
    let left = StdSum::new(&vec![[1, 1]; sq.top.source()]);
    let right = StdSum::new(&vec![[1, 1]; p1.target()]);
    let apex = StdSum::new(
        &(0..p1.target())
            .map(|y| [p1.fiber(y).len(), p2.fiber(y).len()])
            .collect::<Vec<_>>(),
    );
    let (la, aa, ra) = (arc(&left), arc(&apex), arc(&right));
    let (q1, q2) = (sq.left.map(), sq.top.map());
    let (pos1, pos2, m1) = (p1.positions(), p2.positions(), p1.map());
    let lass: Assign = (0..sq.top.source())
        .map(|x| {
            let (h, v) = (pos1[q1[x]], pos2[q2[x]]);
            (m1[q1[x]], [vec![h, h + 1], vec![v, v + 1]])
        })
        .collect();
    let rass: Assign = (0..p1.target())
        .map(|y| (y, [vec![0, p1.fiber(y).len()], vec![0, p2.fiber(y).len()]]))
        .collect();
    Ok(SpanMor::new(
        sum_map(&left, &la, &apex, &aa, &lass),
        sum_map(&right, &ra, &apex, &aa, &rass),
    )?)
}

/// Data of a chain for [`chain_functor`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    /// `X_0 -> X_1 -> ... -> X_n`, `chain[a]: X_a -> X_{a+1}`.
    Alg,
    /// `Y_n -> ... -> Y_0`, `chain[b-1]: Y_b -> Y_{b-1}`.
    Coalg,
}

/// `α(θ)^h` (or `χ(θ)^v`) as a functor on the intervals of `[n]`:
/// `[a;a'] ↦ ⊔ Δ^{|fiber|}` over the fibers of the composite between the
/// ends of the interval.
pub fn chain_functor(
    size0: usize,
    chain_maps: &[AlgMorphism],
    kind: ChainKind,
) -> Result<CellFunctor<(usize, usize)>, LaxError> {
    let n = chain_maps.len();
    let mut sizes = vec![size0];
    for (i, f) in chain_maps.iter().enumerate() {
        let (s, t) = match kind {
            ChainKind::Alg => (f.source(), f.target()),
            ChainKind::Coalg => (f.target(), f.source()),
        };
        if s != sizes[i] {
            return Err(LaxError::InvalidInput(format!("chain breaks at {i}")));
        }
        sizes.push(t);
    }
    // comp[(a, a')] for a ≤ a': the composite from the far end to the summand end.
    let mut comp = HashMap::new();
    for a in 0..=n {
        comp.insert((a, a), AlgMorphism::identity(sizes[a]));
        for a2 in a + 1..=n {
            let prev = comp[&(a, a2 - 1)].clone();
            let step = &chain_maps[a2 - 1];
            let c = match kind {
                ChainKind::Alg => compose_alg(&prev, step)?,
                ChainKind::Coalg => compose_alg(step, &prev)?,
            };
            comp.insert((a, a2), c);
        }
    }
    let dir = match kind {
        ChainKind::Alg => Dir::Horizontal,
        ChainKind::Coalg => Dir::Vertical,
    };
    let domain = interval_domain(&chain(n));
    let sums: Vec<StdSum<2>> = domain
        .elements()
        .iter()
        .map(|&iv| {
            StdSum::new(
                &comp[&iv]
                    .fibers()
                    .iter()
                    .map(|f| dir.dims(f.len()))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let arcs: Vec<_> = sums.iter().map(arc).collect();
    let mut covers = HashMap::new();
    for (i, j) in domain.covers() {
        let ((a2, b2), (a, b)) = (*domain.element(i), *domain.element(j));
        let small = &comp[&(a2, b2)];
        let assign: Assign = match kind {
            ChainKind::Alg => {
                // Summands live over X_{b2}; extend the source end to a, then the far end to b.
                let low = &comp[&(a, a2)];
                let up = &comp[&(b2, b)];
                let wide = &comp[&(a, b2)];
                let up_map = up.map();
                (0..small.target())
                    .map(|y| {
                        let cuts = block_cuts(small.fiber(y), |x| low.fiber(x).len());
                        let off = block_offset(up, y, |y2| wide.fiber(y2).len());
                        (
                            up_map[y],
                            dir.verts(cuts.into_iter().map(|c| c + off).collect()),
                        )
                    })
                    .collect()
            }
            ChainKind::Coalg => {
                // Summands live over Y_{a2}; extend the far end to b, then the summand end to a.
                let high = &comp[&(b2, b)];
                let down = &comp[&(a, a2)];
                let wide = &comp[&(a2, b)];
                let down_map = down.map();
                (0..small.target())
                    .map(|y| {
                        let cuts = block_cuts(small.fiber(y), |x| high.fiber(x).len());
                        let off = block_offset(down, y, |y2| wide.fiber(y2).len());
                        (
                            down_map[y],
                            dir.verts(cuts.into_iter().map(|c| c + off).collect()),
                        )
                    })
                    .collect()
            }
        };
        covers.insert(
            (i, j),
            sum_map(&sums[i], &arcs[i], &sums[j], &arcs[j], &assign),
        );
    }
    Ok(CellFunctor::from_covers(domain, arcs, covers)?)
}
