use std::collections::HashMap;

use super::alpha::{arc, block_cuts, block_offset, sum_map};
use super::{interval_domain, Assign, LaxError};
use crate::ordalg::{AlgSquare, PyrDiagram};
use crate::simpcore::StdSum;
use crate::spanengine::CellFunctor;
use crate::twistposet::GrothPosets;

/// An interval of `Pyr(Ω_φ)` transported to level 0: the corner `[l0;r0]`,
/// the opposite corner `[l1;r1]`, with `l0 ≤ l1 ≤ r1 ≤ r0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Coords {
    pub l0: usize,
    pub l1: usize,
    pub r0: usize,
    pub r1: usize,
}

impl Coords {
    pub fn is_valid(&self) -> bool {
        self.l0 <= self.l1 && self.l1 <= self.r1 && self.r1 <= self.r0
    }

    pub fn contains(&self, inner: &Coords) -> bool {
        self.l0 <= inner.l0 && inner.l1 <= self.l1 && self.r1 <= inner.r1 && inner.r0 <= self.r0
    }

    /// The square `θ[l0;r0] -> θ[l1;r0]`, `θ[l0;r0] -> θ[l0;r1]` over `θ[l1;r1]`.
    pub fn square(&self, d: &PyrDiagram) -> AlgSquare {
        AlgSquare {
            top: d.left(self.l0, self.l1, self.r0),
            left: d.right(self.l0, self.r0, self.r1),
            bottom: d.left(self.l0, self.l1, self.r1),
            right: d.right(self.l1, self.r0, self.r1),
        }
    }
}

/// `⊔_{y ∈ θ[l1;r1]} Δ^{|λ⁻¹ y|, |ρ⁻¹ y|}` for the two paths into `θ[l1;r1]`.
pub fn apex(d: &PyrDiagram, c: Coords) -> StdSum<2> {
    let h = d.left(c.l0, c.l1, c.r1);
    let v = d.right(c.l1, c.r0, c.r1);
    let dims: Vec<[usize; 2]> = (0..d.value(c.l1, c.r1))
        .map(|y| [h.fiber(y).len(), v.fiber(y).len()])
        .collect();
    StdSum::new(&dims)
}

/// Vertex data of the map `apex(inner) -> apex(outer)`, built from four
/// elementary moves of the corners.
pub fn apex_map(d: &PyrDiagram, inner: Coords, outer: Coords) -> Assign {
    assert!(inner.is_valid() && outer.is_valid() && outer.contains(&inner));
    let mut c = inner;
    let hf = d.left(c.l0, c.l1, c.r1);
    let vf = d.right(c.l1, c.r0, c.r1);
    let mut state: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..d.value(c.l1, c.r1))
        .map(|y| {
            (
                y,
                (0..=hf.fiber(y).len()).collect(),
                (0..=vf.fiber(y).len()).collect(),
            )
        })
        .collect();
    if outer.l1 > c.l1 {
        let g = d.left(c.l1, outer.l1, c.r1);
        let small = d.left(c.l0, c.l1, c.r1);
        let gm = g.map();
        for (y, h, _) in state.iter_mut() {
            let off = block_offset(&g, *y, |y2| small.fiber(y2).len());
            h.iter_mut().for_each(|x| *x += off);
            *y = gm[*y];
        }
        c.l1 = outer.l1;
    }
    if outer.r1 < c.r1 {
        let g = d.right(c.l1, c.r1, outer.r1);
        let small = d.right(c.l1, c.r0, c.r1);
        let gm = g.map();
        for (y, _, v) in state.iter_mut() {
            let off = block_offset(&g, *y, |y2| small.fiber(y2).len());
            v.iter_mut().for_each(|x| *x += off);
            *y = gm[*y];
        }
        c.r1 = outer.r1;
    }
    if outer.l0 < c.l0 {
        let k = d.left(outer.l0, c.l0, c.r1);
        let hf = d.left(c.l0, c.l1, c.r1);
        for (y, h, _) in state.iter_mut() {
            let cuts = block_cuts(hf.fiber(*y), |x| k.fiber(x).len());
            h.iter_mut().for_each(|x| *x = cuts[*x]);
        }
        c.l0 = outer.l0;
    }
    if outer.r0 > c.r0 {
        let k = d.right(c.l1, outer.r0, c.r0);
        let vf = d.right(c.l1, c.r0, c.r1);
        for (y, _, v) in state.iter_mut() {
            let cuts = block_cuts(vf.fiber(*y), |x| k.fiber(x).len());
            v.iter_mut().for_each(|x| *x = cuts[*x]);
        }
    }
    state.into_iter().map(|(y, h, v)| (y, [h, v])).collect()
}

/// Level-0 coordinates of the intervals of `Ω_φ`.
pub fn omega_coords(g: &GrothPosets, (w, w2): (usize, usize)) -> Coords {
    let (((i, j), b), ((i2, j2), b2)) = (*g.omega.element(w), *g.omega.element(w2));
    let phi = &g.phi;
    Coords {
        l0: phi.apply(b, 0, i),
        l1: phi.apply(b2, 0, i2),
        r0: phi.apply(b, 0, j),
        r1: phi.apply(b2, 0, j2),
    }
}

/// The master diagram: one functor on the intervals of `Ω_φ` per element of `S`.
#[derive(Clone, Debug)]
pub struct MasterDiagram {
    pub per: Vec<CellFunctor<(usize, usize)>>,
}

/// Builds the master diagram of the bialgebra data `diagrams` (one per
/// element of `S`, all at level 0).
pub fn master_diagram(
    g: &GrothPosets,
    diagrams: &[&PyrDiagram],
) -> Result<MasterDiagram, LaxError> {
    let domain = interval_domain(&g.omega);
    let coords: Vec<Coords> = domain
        .elements()
        .iter()
        .map(|&iv| omega_coords(g, iv))
        .collect();
    let mut per = Vec::with_capacity(diagrams.len());
    for d in diagrams {
        if d.n() != g.phi.dim(0) {
            return Err(LaxError::InvalidInput(format!(
                "diagram of length {} over level 0 of length {}",
                d.n(),
                g.phi.dim(0)
            )));
        }
        let mut cache: HashMap<Coords, StdSum<2>> = HashMap::new();
        let sums: Vec<StdSum<2>> = coords
            .iter()
            .map(|&c| cache.entry(c).or_insert_with(|| apex(d, c)).clone())
            .collect();
        let arcs: Vec<_> = sums.iter().map(arc).collect();
        let mut covers = HashMap::new();
        for (i, j) in domain.covers() {
            let a = apex_map(d, coords[i], coords[j]);
            covers.insert((i, j), sum_map(&sums[i], &arcs[i], &sums[j], &arcs[j], &a));
        }
        per.push(CellFunctor::from_covers(domain.clone(), arcs, covers)?);
    }
    Ok(MasterDiagram { per })
}

impl MasterDiagram {
    /// The first pair of nested intervals of `Pyr(V_φ)` (as `Ω_φ` intervals)
    /// whose map is not an isomorphism.
    pub fn vertical_failure(
        &self,
        g: &GrothPosets,
    ) -> Option<(usize, (usize, usize), (usize, usize))> {
        let v = &g.v;
        let n = v.len();
        let ivs: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).filter(move |&y| v.le(x, y)).map(move |y| (x, y)))
            .collect();
        for (s, f) in self.per.iter().enumerate() {
            for &(x, y) in &ivs {
                for &(x2, y2) in &ivs {
                    if (x, y) != (x2, y2) && v.le(x2, x) && v.le(y, y2) {
                        let a = f.domain.index_of(&(g.nu[x], g.nu[y])).unwrap();
                        let b = f.domain.index_of(&(g.nu[x2], g.nu[y2])).unwrap();
                        if !f.map(a, b).unwrap().is_iso() {
                            return Some((s, (x, y), (x2, y2)));
                        }
                    }
                }
            }
        }
        None
    }
}
