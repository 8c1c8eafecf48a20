//! Finite simplicial and bisimplicial sets, their maps, colimits and
//! isomorphism search.

mod colimit;
mod complex;
pub mod delta;
mod iso;
mod maps;
mod product;
mod standard;
pub mod text;

use thiserror::Error;

pub use colimit::{colim, coproduct, pushout, Colimit, Diagram};
pub use complex::{BiSimplicialSet, Cell, Complex, Simplex, SimplicialSet};
pub use iso::{find_iso, find_natural_iso, isomorphic};
pub use maps::{same_complex, BisimplicialMap, SMap};
pub use product::{
    box_product, box_product_indexed, box_product_map, horizontal, horizontal_map, vertical,
    vertical_map, BoxProduct,
};
pub use standard::{std_map, StdSum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimpError {
    #[error("degree {deg:?} exceeds bound {bound:?}")]
    BoundExceeded { deg: Vec<usize>, bound: Vec<usize> },
    #[error("invalid cell {cell}: {reason}")]
    InvalidCell { cell: usize, reason: String },
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("diagram does not commute: {0}")]
    NonCommutingDiagram(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn delta(n: usize) -> Arc<SimplicialSet> {
        Arc::new(SimplicialSet::standard(n))
    }

    #[test]
    fn box_product_counts() {
        let sq = box_product(&SimplicialSet::standard(1), &SimplicialSet::standard(1));
        assert_eq!(
            sq.profile(),
            vec![([0, 0], 4), ([0, 1], 2), ([1, 0], 2), ([1, 1], 1)]
        );
        let x = box_product(&SimplicialSet::standard(2), &SimplicialSet::standard(1));
        assert_eq!(x.count([1, 1]), 18);
        assert_eq!(x.simplices([1, 1]).len(), 18);
        assert!(isomorphic(&x, &BiSimplicialSet::standard(2, 1)));
        assert!(!isomorphic(
            &BiSimplicialSet::standard(2, 1),
            &BiSimplicialSet::standard(1, 2)
        ));
    }

    #[test]
    fn unit_of_box_product() {
        let y = SimplicialSet::standard(2);
        let p = box_product(&SimplicialSet::standard(0), &y);
        assert_eq!(p.nondeg_count([0, 2]), 1);
        assert_eq!(p.nondeg_count([1, 0]), 0);
    }

    #[test]
    fn simplex_enumeration_matches_hom_counts() {
        for n in 0..4 {
            for k in 0..3 {
                let x = BiSimplicialSet::standard(n, k);
                for p in 0..3 {
                    for q in 0..3 {
                        let want = delta::count_monotone(p, n) * delta::count_monotone(q, k);
                        assert_eq!(x.count([p, q]), want);
                        let all = x.simplices([p, q]);
                        let mut dedup = all.clone();
                        dedup.sort();
                        dedup.dedup();
                        assert_eq!(dedup.len() as u128, want);
                    }
                }
            }
        }
    }

    #[test]
    fn simplicial_identities_on_all_simplices() {
        let x = BiSimplicialSet::standard(2, 1);
        for p in 0..4 {
            for q in 0..3 {
                for s in x.simplices([p, q]) {
                    for j in 0..=p {
                        for i in 0..=p {
                            // s_i then d_j
                            let sd = x.face(&x.degeneracy(&s, 0, i), 0, j);
                            if j == i || j == i + 1 {
                                assert_eq!(sd, s);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pushout_along_vertical_edge() {
        // two Δ^{1,1} glued along a vertical edge Δ^{0,1}
        let sq = StdSum::<2>::new(&[[1, 1]]);
        let edge = StdSum::<2>::new(&[[0, 1]]);
        let (sa, ea) = (Arc::new(sq.complex.clone()), Arc::new(edge.complex.clone()));
        let f = std_map(
            &edge,
            ea.clone(),
            &sq,
            sa.clone(),
            &[(0, [vec![1], vec![0, 1]])],
        )
        .unwrap();
        let g = std_map(
            &edge,
            ea.clone(),
            &sq,
            sa.clone(),
            &[(0, [vec![0], vec![0, 1]])],
        )
        .unwrap();
        let po = pushout(&f, &g).unwrap();
        assert_eq!(po.object.nondeg_count([1, 1]), 2);
        assert_eq!(po.object.nondeg_count([0, 0]), 6);
        // the glued object is (two edges sharing a vertex) ⊠ Δ¹
        let two = StdSum::<1>::new(&[[1], [1]]);
        let pt = StdSum::<1>::new(&[[0]]);
        let (ta, pa) = (Arc::new(two.complex.clone()), Arc::new(pt.complex.clone()));
        let a = std_map(&pt, pa.clone(), &two, ta.clone(), &[(0, [vec![1]])]).unwrap();
        let b = std_map(&pt, pa, &two, ta, &[(1, [vec![0]])]).unwrap();
        let mut diag = Diagram::new(vec![a.source.clone(), a.target.clone()]);
        diag.arrow(0, 1, a);
        diag.arrow(0, 1, b);
        let path = colim(&diag).unwrap();
        assert!(isomorphic(
            &po.object,
            &box_product(&path.object, &SimplicialSet::standard(1))
        ));
    }

    #[test]
    fn pushout_along_identity_is_a_copy() {
        let x = Arc::new(BiSimplicialSet::standard(1, 1));
        let id = SMap::identity(x.clone());
        let po = pushout(&id, &id).unwrap();
        assert!(isomorphic(&po.object, &x));
        assert!(po.legs.iter().all(|l| l.is_iso()));
    }

    #[test]
    fn coproduct_scales_counts() {
        let x = Arc::new(BiSimplicialSet::standard(1, 1));
        let c = coproduct(vec![x.clone(), x.clone(), x.clone()]).unwrap();
        assert_eq!(c.object.nondeg_count([1, 1]), 3);
        assert_eq!(c.object.nondeg_count([0, 0]), 12);
    }

    #[test]
    fn degenerate_collapse() {
        // collapse the edge of Δ¹ to a point: pushout of Δ¹ <- ∂Δ¹ -> Δ⁰
        let d1 = delta(1);
        let bd = StdSum::<1>::new(&[[0], [0]]);
        let pt = StdSum::<1>::new(&[[0]]);
        let one = StdSum::<1>::new(&[[1]]);
        let ba = Arc::new(bd.complex.clone());
        let f = std_map(
            &bd,
            ba.clone(),
            &one,
            d1.clone(),
            &[(0, [vec![0]]), (0, [vec![1]])],
        )
        .unwrap();
        let g = std_map(
            &bd,
            ba,
            &pt,
            Arc::new(pt.complex.clone()),
            &[(0, [vec![0]]), (0, [vec![0]])],
        )
        .unwrap();
        let po = pushout(&f, &g).unwrap();
        // the circle: one vertex, one edge
        assert_eq!(po.object.profile(), vec![([0], 1), ([1], 1)]);
        // now squash the edge to a degenerate one
        let e = std_map(
            &one,
            d1.clone(),
            &pt,
            Arc::new(pt.complex.clone()),
            &[(0, [vec![0, 0]])],
        )
        .unwrap();
        let po2 = pushout(&SMap::identity(d1.clone()), &e).unwrap();
        assert_eq!(po2.object.profile(), vec![([0], 1)]);
    }

    #[test]
    fn universal_map() {
        let d1 = delta(1);
        let two = StdSum::<1>::new(&[[1], [1]]);
        let pt = StdSum::<1>::new(&[[0]]);
        let (ta, pa) = (Arc::new(two.complex.clone()), Arc::new(pt.complex.clone()));
        let a = std_map(&pt, pa.clone(), &two, ta.clone(), &[(0, [vec![1]])]).unwrap();
        let b = std_map(&pt, pa.clone(), &two, ta.clone(), &[(1, [vec![0]])]).unwrap();
        let mut diag = Diagram::new(vec![pa.clone(), ta.clone()]);
        diag.arrow(0, 1, a);
        diag.arrow(0, 1, b);
        let co = colim(&diag).unwrap();
        assert_eq!(co.object.profile(), vec![([0], 3), ([1], 2)]);
        let d2 = delta(2);
        let s2 = StdSum::<1>::new(&[[2]]);
        let into = std_map(
            &two,
            ta.clone(),
            &s2,
            d2.clone(),
            &[(0, [vec![0, 1]]), (0, [vec![1, 2]])],
        )
        .unwrap();
        let p_into = std_map(&pt, pa.clone(), &s2, d2.clone(), &[(0, [vec![1]])]).unwrap();
        let u = co.induced(&d2, &[p_into.clone(), into.clone()]).unwrap();
        assert!(u.is_cell_injective());
        let bad = std_map(
            &two,
            ta,
            &s2,
            d2.clone(),
            &[(0, [vec![0, 1]]), (0, [vec![0, 2]])],
        )
        .unwrap();
        assert!(co.induced(&d2, &[p_into, bad]).is_err());
        let _ = d1;
    }

    #[test]
    fn text_round_trip() {
        let x = BiSimplicialSet::standard(2, 1);
        let t = text::print(&x);
        let y: BiSimplicialSet = text::parse(&t).unwrap();
        assert_eq!(x, y);
        assert_eq!(text::print(&y), t);
        let z = SimplicialSet::standard(3);
        assert_eq!(text::parse::<1>(&text::print(&z)).unwrap(), z);
        assert!(text::parse::<1>("complex dim=1 bound=1 cells=1\ncell 0 deg=1\n").is_err());
    }

    #[test]
    fn bound_is_enforced() {
        let mut x = SimplicialSet::new([0]);
        assert!(matches!(
            x.add_cell([1], [vec![]]),
            Err(SimpError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn relabelled_square_is_found() {
        let sq = BiSimplicialSet::standard(1, 1);
        let t = text::print(&sq);
        let again: BiSimplicialSet = text::parse(&t).unwrap();
        let iso = find_iso(&Arc::new(sq), &Arc::new(again)).unwrap();
        assert!(iso.is_iso());
    }
}
