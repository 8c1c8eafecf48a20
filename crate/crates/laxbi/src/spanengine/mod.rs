//! Cospans of bisimplicial sets and functors on twisted arrow posets valued
//! in them. Every limit of the opposite category is computed here as a
//! colimit of bisimplicial sets.

mod cell;
mod span;

use thiserror::Error;

use crate::simpcore::SimpError;

pub use cell::{
    cart_domain, cell_domain, rke_cartesian, sing_wedge_domain, validate_cell, CellFunctor,
    CellKey, CellReport, Pointwise,
};
pub use span::{compose_span, SpanMor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpanError {
    #[error(
        "right boundary of the first span is not isomorphic to the left boundary of the second"
    )]
    BoundaryMismatch,
    #[error("input is not a functor: {0}")]
    NonFunctorialInput(String),
    #[error("paths disagree: {0}")]
    NonFunctorial(String),
    #[error("ill-typed cell data: {0}")]
    IllTyped(String),
    #[error(transparent)]
    Simp(#[from] SimpError),
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::*;
    use crate::simpcore::{std_map, BiSimplicialSet, StdSum};
    use crate::twistposet::{groth_posets, DeltaOpSimplex, FinPoset, GrothPosets};

    /// `τ(t, [x;y]) = c_t · Δ^{h(y)-h(x), v(y)-v(x)}` for monotone labels `h`, `v`.
    fn labelled(
        domain: FinPoset<CellKey>,
        copies: &[usize],
        h: &[usize],
        v: &[usize],
    ) -> CellFunctor<CellKey> {
        let sums: Vec<StdSum<2>> = domain
            .elements()
            .iter()
            .map(|&(u, (x, y))| {
                let c: usize = (0..copies.len())
                    .filter(|t| u >> t & 1 == 1)
                    .map(|t| copies[t])
                    .sum();
                StdSum::new(&vec![[h[y] - h[x], v[y] - v[x]]; c])
            })
            .collect();
        let arcs: Vec<Arc<BiSimplicialSet>> =
            sums.iter().map(|s| Arc::new(s.complex.clone())).collect();
        let mut covers = HashMap::new();
        for (i, j) in domain.covers() {
            let ((u, (x, _)), (u2, (x2, _))) = (*domain.element(i), *domain.element(j));
            let (oh, ov) = (h[x] - h[x2], v[x] - v[x2]);
            let mut assign = Vec::new();
            let mut off = 0;
            for t in 0..copies.len() {
                if u2 >> t & 1 == 1 {
                    if u >> t & 1 == 1 {
                        for c in 0..copies[t] {
                            let d = sums[i].dims[assign.len()];
                            assign.push((
                                off + c,
                                [(oh..=oh + d[0]).collect(), (ov..=ov + d[1]).collect()],
                            ));
                        }
                    }
                    off += copies[t];
                }
            }
            covers.insert(
                (i, j),
                std_map(
                    &sums[i],
                    arcs[i].clone(),
                    &sums[j],
                    arcs[j].clone(),
                    &assign,
                )
                .unwrap(),
            );
        }
        CellFunctor::from_covers(domain, arcs, covers).unwrap()
    }

    fn below_weights(g: &GrothPosets, w: &[usize]) -> Vec<usize> {
        (0..g.m.len())
            .map(|x| {
                (0..g.m.len())
                    .filter(|&z| z != x && g.m.le(z, x))
                    .map(|z| w[z])
                    .sum()
            })
            .collect()
    }

    #[test]
    fn nothing_to_extend() {
        let g = groth_posets(&DeltaOpSimplex::constant(0, 0));
        let p = labelled(sing_wedge_domain(&g.m, 1, &g.wedge), &[2], &[0], &[0]);
        let e = rke_cartesian(&p, &g.m, 1).unwrap();
        assert_eq!(e.len(), 2);
        assert!(Arc::ptr_eq(e.value_at(&(1, (0, 0))).unwrap(), &p.values[0]));
        assert!(e.value_at(&(0, (0, 0))).unwrap().is_empty());
    }

    #[test]
    fn middle_value_is_a_pushout() {
        let g = groth_posets(&DeltaOpSimplex::constant(2, 0));
        let p = labelled(
            sing_wedge_domain(&g.m, 1, &g.wedge),
            &[1],
            &[0, 1, 2],
            &[0, 0, 0],
        );
        let e = rke_cartesian(&p, &g.m, 1).unwrap();
        let top = e.value_at(&(1, (0, 2))).unwrap();
        // Two edges glued at a vertex: a spine, not a 2-simplex.
        assert_eq!(top.nondeg_count([0, 0]), 3);
        assert_eq!(top.nondeg_count([1, 0]), 2);
        assert_eq!(top.nondeg_count([2, 0]), 0);
        assert!(validate_cell(&e, &g, 1).unwrap().passed());
    }

    #[test]
    fn pair_gives_coproduct() {
        let g = groth_posets(&DeltaOpSimplex::active_2_1());
        let p = labelled(
            sing_wedge_domain(&g.m, 2, &g.wedge),
            &[1, 2],
            &below_weights(&g, &[1; 5]),
            &[0; 5],
        );
        let e = rke_cartesian(&p, &g.m, 2).unwrap();
        for &(x, y) in &g.wedge {
            let both = e.value_at(&(3, (x, y))).unwrap();
            let one = e.value_at(&(1, (x, y))).unwrap();
            let two = e.value_at(&(2, (x, y))).unwrap();
            assert_eq!(both.len(), one.len() + two.len());
        }
        let report = validate_cell(&e, &g, 2).unwrap();
        assert_eq!(report.not_cartesian, None);
    }

    #[test]
    fn vertical_failure_has_witness() {
        let g = groth_posets(&DeltaOpSimplex::constant(0, 1));
        let dom = cart_domain(&g.m, 1);
        let ok = labelled(dom.clone(), &[1], &[0, 0], &[0, 0]);
        assert!(validate_cell(&ok, &g, 1).unwrap().passed());
        // Give the long vertical interval a second vertex.
        let bot = g.m.index_of(&(0, 1)).unwrap();
        let top = g.m.index_of(&(0, 0)).unwrap();
        let mut values = ok.values.clone();
        let mut covers = HashMap::new();
        let long = dom.index_of(&(1, (bot, top))).unwrap();
        values[long] = Arc::new(StdSum::new(&[[0, 0], [0, 0]]).complex);
        for (i, j) in dom.covers() {
            let f = if j == long {
                let images = (0..values[i].len()).map(|_| values[j].nondeg(0)).collect();
                crate::simpcore::SMap::new(values[i].clone(), values[j].clone(), images).unwrap()
            } else {
                ok.map(i, j).unwrap().clone()
            };
            covers.insert((i, j), f);
        }
        let bad = CellFunctor::from_covers(dom, values, covers).unwrap();
        let report = validate_cell(&bad, &g, 1).unwrap();
        assert_eq!(report.not_cartesian, None);
        let (a, b) = report.not_vertical.unwrap();
        assert_eq!(b, (1, (bot, top)));
        assert!(a == (1, (bot, bot)) || a == (1, (top, top)));
    }

    #[test]
    fn nonempty_empty_subset_is_not_cartesian() {
        let g = groth_posets(&DeltaOpSimplex::constant(0, 0));
        let dom = cart_domain(&g.m, 1);
        let mut values = vec![Arc::new(BiSimplicialSet::standard(0, 0)); 2];
        values[1] = values[0].clone();
        let mut covers = HashMap::new();
        covers.insert((0, 1), crate::simpcore::SMap::identity(values[0].clone()));
        let tau = CellFunctor::from_covers(dom, values, covers).unwrap();
        assert_eq!(
            validate_cell(&tau, &g, 1).unwrap().not_cartesian,
            Some((0, (0, 0)))
        );
    }

    #[test]
    fn non_functorial_input_is_rejected() {
        let g = groth_posets(&DeltaOpSimplex::constant(2, 0));
        let good = labelled(cart_domain(&g.m, 1), &[1], &[0, 1, 2], &[0, 0, 0]);
        let mut covers = HashMap::new();
        let dom = good.domain.clone();
        for (i, j) in dom.covers() {
            covers.insert((i, j), good.map(i, j).unwrap().clone());
        }
        // Swap the endpoint inclusions of [0;1]; the two routes [1;1] -> [0;2] then disagree.
        let e = dom.index_of(&(1, (0, 1))).unwrap();
        let (a, b) = (
            dom.index_of(&(1, (0, 0))).unwrap(),
            dom.index_of(&(1, (1, 1))).unwrap(),
        );
        let fa = covers[&(a, e)].clone();
        let fb = covers[&(b, e)].clone();
        covers.insert(
            (a, e),
            crate::simpcore::SMap {
                source: fa.source.clone(),
                target: fa.target.clone(),
                images: fb.images.clone(),
            },
        );
        covers.insert(
            (b, e),
            crate::simpcore::SMap {
                source: fb.source.clone(),
                target: fb.target.clone(),
                images: fa.images.clone(),
            },
        );
        assert!(matches!(
            CellFunctor::from_covers(dom, good.values.clone(), covers),
            Err(SpanError::NonFunctorial(_))
        ));
    }

    fn random_partial() -> impl Strategy<Value = (GrothPosets, usize, CellFunctor<CellKey>)> {
        let phis = DeltaOpSimplex::enumerate(1, 2);
        (0..phis.len(), 1..3usize).prop_flat_map(move |(p, s)| {
            let g = groth_posets(&phis[p]);
            let n = g.m.len();
            (
                Just(g),
                Just(s),
                prop::collection::vec(1..3usize, s),
                prop::collection::vec(0..2usize, n),
                prop::collection::vec(0..2usize, n),
            )
                .prop_map(|(g, s, copies, wh, wv)| {
                    let (h, v) = (below_weights(&g, &wh), below_weights(&g, &wv));
                    let p = labelled(sing_wedge_domain(&g.m, s, &g.wedge), &copies, &h, &v);
                    (g, s, p)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn extension_is_idempotent((g, s, p) in random_partial()) {
            let e = rke_cartesian(&p, &g.m, s).unwrap();
            prop_assert_eq!(validate_cell(&e, &g, s).unwrap().not_cartesian, None);
            let keep: Vec<usize> = p.domain.elements().iter().map(|k| e.domain.index_of(k).unwrap()).collect();
            let back = e.restrict(&keep);
            for i in 0..p.len() {
                prop_assert!(Arc::ptr_eq(&back.values[i], &p.values[i]));
            }
            let again = rke_cartesian(&back, &g.m, s).unwrap();
            prop_assert!(e.natural_iso(&again).is_some());
        }
    }
}
