use std::sync::Arc;

use super::{BiSimplicialSet, Complex, SMap, SimpError, Simplex, SimplicialSet};

/// `X ⊠ Y` together with the index of the pair cell `(x, y)`.
#[derive(Clone, Debug)]
pub struct BoxProduct {
    pub complex: BiSimplicialSet,
    pub index: Vec<Vec<usize>>,
}

pub fn box_product(x: &SimplicialSet, y: &SimplicialSet) -> BiSimplicialSet {
    box_product_indexed(x, y).complex
}

pub fn box_product_indexed(x: &SimplicialSet, y: &SimplicialSet) -> BoxProduct {
    let mut pairs: Vec<(usize, usize)> = (0..x.len())
        .flat_map(|a| (0..y.len()).map(move |b| (a, b)))
        .collect();
    pairs.sort_by_key(|&(a, b)| (x.cell(a).deg[0] + y.cell(b).deg[0], a, b));
    let mut index = vec![vec![usize::MAX; y.len()]; x.len()];
    let mut out = Complex::new([x.bound()[0], y.bound()[0]]);
    for (a, b) in pairs {
        let (p, q) = (x.cell(a).deg[0], y.cell(b).deg[0]);
        let h = x.cell(a).faces[0]
            .iter()
            .map(|f| Simplex {
                cell: index[f.cell][b],
                ops: [f.ops[0].clone(), (0..=q).collect()],
            })
            .collect();
        let v = y.cell(b).faces[0]
            .iter()
            .map(|f| Simplex {
                cell: index[a][f.cell],
                ops: [(0..=p).collect(), f.ops[0].clone()],
            })
            .collect();
        let id = out.push_unchecked(super::Cell {
            deg: [p, q],
            faces: [h, v],
        });
        index[a][b] = id;
    }
    BoxProduct {
        complex: out,
        index,
    }
}

/// `f ⊠ g` between given box products.
pub fn box_product_map(
    f: &SMap<1>,
    g: &SMap<1>,
    src: (&BoxProduct, Arc<BiSimplicialSet>),
    tgt: (&BoxProduct, Arc<BiSimplicialSet>),
) -> Result<SMap<2>, SimpError> {
    let mut images = vec![None; src.1.len()];
    for a in 0..f.source.len() {
        for b in 0..g.source.len() {
            let (fa, gb) = (&f.images[a], &g.images[b]);
            images[src.0.index[a][b]] = Some(Simplex {
                cell: tgt.0.index[fa.cell][gb.cell],
                ops: [fa.ops[0].clone(), gb.ops[0].clone()],
            });
        }
    }
    SMap::new(
        src.1,
        tgt.1,
        images.into_iter().map(Option::unwrap).collect(),
    )
}

/// `X^h = X ⊠ Δ¹` on objects and maps.
pub fn horizontal(x: &SimplicialSet) -> BoxProduct {
    box_product_indexed(x, &SimplicialSet::standard(1))
}

/// `X^v = Δ¹ ⊠ X`.
pub fn vertical(x: &SimplicialSet) -> BoxProduct {
    box_product_indexed(&SimplicialSet::standard(1), x)
}

pub fn horizontal_map(
    f: &SMap<1>,
) -> Result<(SMap<2>, Arc<BiSimplicialSet>, Arc<BiSimplicialSet>), SimpError> {
    let (s, t) = (horizontal(&f.source), horizontal(&f.target));
    let one = Arc::new(SimplicialSet::standard(1));
    let (sa, ta) = (Arc::new(s.complex.clone()), Arc::new(t.complex.clone()));
    let m = box_product_map(f, &SMap::identity(one), (&s, sa.clone()), (&t, ta.clone()))?;
    Ok((m, sa, ta))
}

pub fn vertical_map(
    f: &SMap<1>,
) -> Result<(SMap<2>, Arc<BiSimplicialSet>, Arc<BiSimplicialSet>), SimpError> {
    let (s, t) = (vertical(&f.source), vertical(&f.target));
    let one = Arc::new(SimplicialSet::standard(1));
    let (sa, ta) = (Arc::new(s.complex.clone()), Arc::new(t.complex.clone()));
    let m = box_product_map(&SMap::identity(one), f, (&s, sa.clone()), (&t, ta.clone()))?;
    Ok((m, sa, ta))
}
