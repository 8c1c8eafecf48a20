//! Finite sets with ordered fibers, pseudo-pullbacks, the free categories
//! `Pyr^nc(n)` and validation of bialgebra functors.

mod bialg;
mod morphism;
mod pyr;
mod square;

use thiserror::Error;

pub use bialg::{chain_sizes, BialgFailure, BialgFunctor, Endpoint, PyrDiagram};
pub use morphism::{compose_alg, AlgMorphism};
pub use pyr::{pyrnc_map, PyrEdge, PyrNC, PyrNCFunctor, PyrPath, Side};
pub use square::{pseudo_pullback, AlgSquare, PpFailure};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("invalid fibers: {0}")]
    InvalidFibers(String),
    #[error("map {0:?} is not monotone")]
    NonMonotone(Vec<usize>),
    #[error("parse error: {0}")]
    Parse(String),
}

#[cfg(test)]
pub(crate) mod testing {
    use super::AlgMorphism;
    use proptest::prelude::*;

    /// Random morphism `source -> target` with shuffled fibers.
    pub fn alg(source: usize, target: usize) -> impl Strategy<Value = AlgMorphism> {
        prop::collection::vec((0..target, any::<u16>()), source).prop_map(move |v| {
            let mut fibers = vec![Vec::new(); target];
            let mut idx: Vec<usize> = (0..v.len()).collect();
            idx.sort_by_key(|&i| v[i].1);
            for i in idx {
                fibers[v[i].0].push(i);
            }
            AlgMorphism::new(v.len(), fibers).unwrap()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::testing::alg;
    use super::*;
    use proptest::prelude::*;

    fn m() -> AlgMorphism {
        AlgMorphism::mult()
    }

    fn all_orders(f: &AlgMorphism) -> Vec<AlgMorphism> {
        fn perms(xs: &[usize]) -> Vec<Vec<usize>> {
            if xs.is_empty() {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for i in 0..xs.len() {
                let mut rest = xs.to_vec();
                let x = rest.remove(i);
                for mut p in perms(&rest) {
                    p.insert(0, x);
                    out.push(p);
                }
            }
            out
        }
        let mut out = vec![Vec::new()];
        for fib in f.fibers() {
            out = out
                .into_iter()
                .flat_map(|acc: Vec<Vec<usize>>| {
                    perms(fib).into_iter().map(move |p| {
                        let mut a = acc.clone();
                        a.push(p);
                        a
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|fs| AlgMorphism::new(f.source(), fs).unwrap())
            .collect()
    }

    #[test]
    fn enumeration_counts() {
        // 3 -> 2 with fibers ≤ 2: 6 maps hit both sides, 2 orders each.
        assert_eq!(AlgMorphism::enumerate(3, 2, 2).len(), 12);
        // Ordered maps 3 -> 2: (n + 1)!/1! = 24.
        assert_eq!(AlgMorphism::enumerate(3, 2, 3).len(), 24);
        assert_eq!(
            AlgMorphism::enumerate(0, 0, 1),
            vec![AlgMorphism::identity(0)]
        );
    }

    #[test]
    fn pseudo_pullback_of_multiplication() {
        let (sq, pairs) = pseudo_pullback(&m(), &m()).unwrap();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        // y_{i,j} = (i, j): left fibers (y_{i,1}, y_{i,2}), top fibers (y_{1,j}, y_{2,j})
        assert_eq!(sq.left.fibers(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(sq.top.fibers(), &[vec![0, 2], vec![1, 3]]);
        assert!(sq.is_pseudo_pullback());
        assert_eq!(
            compose_alg(&sq.left, &m()).unwrap().fibers(),
            &[vec![0, 1, 2, 3]]
        );
        assert_eq!(
            compose_alg(&sq.top, &m()).unwrap().fibers(),
            &[vec![0, 2, 1, 3]]
        );
    }

    #[test]
    fn pseudo_pullback_orders_are_unique() {
        let (sq, _) = pseudo_pullback(&m(), &m()).unwrap();
        let mut good = 0;
        for top in all_orders(&sq.top) {
            for left in all_orders(&sq.left) {
                let s = AlgSquare {
                    top: top.clone(),
                    left,
                    ..sq.clone()
                };
                good += s.is_pseudo_pullback() as usize;
            }
        }
        assert_eq!(good, 1);
    }

    #[test]
    fn pullback_along_identity() {
        let p = AlgMorphism::new(3, vec![vec![2, 0], vec![1]]).unwrap();
        let (sq, _) = pseudo_pullback(&p, &AlgMorphism::identity(2)).unwrap();
        assert_eq!(sq.top.fibers(), p.fibers());
    }

    #[test]
    fn pyr_shapes() {
        let p0 = PyrNC::new(0);
        assert_eq!((p0.objects.len(), p0.edges.len()), (1, 0));
        let p2 = PyrNC::new(2);
        assert_eq!((p2.objects.len(), p2.edges.len()), (6, 6));
        assert_eq!(p2.paths_between(p2.object(0, 2), p2.object(1, 1)).len(), 2);
        let f = pyrnc_map(&[0, 2], 2).unwrap();
        let e = f.source.edge(f.source.object(0, 1), Side::Left).unwrap();
        let path = &f.on_edges[e];
        let t = &f.target;
        assert_eq!(path.edges.len(), 2);
        assert_eq!((path.src, path.tgt), (t.object(0, 2), t.object(2, 2)));
        assert_eq!(t.edges[path.edges[0]].tgt, t.object(1, 2));
        assert!(matches!(
            pyrnc_map(&[1, 0], 2),
            Err(AlgError::NonMonotone(_))
        ));
    }

    fn example_diagram() -> PyrDiagram {
        PyrDiagram::from_spans(
            2,
            &[
                (AlgMorphism::identity(2), m()),
                (m(), AlgMorphism::identity(2)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn example_square_is_bialgebra_datum() {
        let d = example_diagram();
        assert_eq!(d.value(0, 2), 4);
        let sq = d.middle_square([0, 1, 2]);
        let (want, _) = pseudo_pullback(&m(), &m()).unwrap();
        assert_eq!(sq, want);
        assert!(BialgFunctor::from_singletons(vec![d])
            .unwrap()
            .validate()
            .is_ok());
    }

    #[test]
    fn reversed_order_fails_at_identity() {
        let mut d = example_diagram();
        let e = d.pyr.edge(d.pyr.object(0, 2), Side::Left).unwrap();
        let mut fibers = d.maps[e].fibers().to_vec();
        fibers[0].reverse();
        d.maps[e] = AlgMorphism::new(4, fibers).unwrap();
        let f = BialgFunctor::from_singletons(vec![d]).unwrap();
        match f.validate() {
            Err(BialgFailure::NotPseudoCartesian { phi, .. }) => assert_eq!(phi, vec![0, 1, 2]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trivial_and_endpoint_functors() {
        let d = PyrDiagram::new(0, vec![5], vec![]).unwrap();
        assert!(BialgFunctor::from_singletons(vec![d])
            .unwrap()
            .validate()
            .is_ok());
        let f = BialgFunctor::embed_endpoints(2, &[m()], Endpoint::Alg).unwrap();
        assert!(f.validate().is_ok());
        assert_eq!(f.singleton(0).value(0, 1), 2);
        let chain = [m(), AlgMorphism::identity(1)];
        let a = BialgFunctor::embed_endpoints(2, &chain, Endpoint::Alg).unwrap();
        let c = BialgFunctor::embed_endpoints(1, &[AlgMorphism::identity(1), m()], Endpoint::Coalg)
            .unwrap();
        assert!(a.validate().is_ok() && c.validate().is_ok());
        for u in [[0, 1, 2], [0, 0, 2], [0, 2, 2]] {
            let sq = a.singleton(0).middle_square(u);
            assert!(sq.top == sq.bottom || sq.left.is_bijection() || sq.right.is_bijection());
        }
    }

    #[test]
    fn cocartesian_pushforward() {
        let a = example_diagram();
        let b =
            PyrDiagram::from_alg_chain(1, &[AlgMorphism::identity(1), AlgMorphism::identity(1)])
                .unwrap();
        let f = BialgFunctor::from_singletons(vec![a, b]).unwrap();
        assert!(f.validate().is_ok());
        let g = f.pushforward(&[Some(0), Some(0)], 1, &[0, 2]).unwrap();
        assert!(g.validate().is_ok());
        assert_eq!(g.singleton(0).value(0, 1), 5);
        let h = f.pushforward(&[None, Some(0)], 1, &[0, 1, 2]).unwrap();
        assert_eq!(h.singleton(0).value(0, 2), 1);
        let mut broken = f.clone();
        broken.cart.get_mut(&(1, 1)).unwrap()[0] = AlgMorphism::from_map(&[1, 2, 3, 4], 5).unwrap();
        assert!(matches!(
            broken.validate(),
            Err(BialgFailure::NotFunctorial { .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        for f in [
            m(),
            AlgMorphism::identity(0),
            AlgMorphism::new(3, vec![vec![], vec![2, 0, 1]]).unwrap(),
        ] {
            assert_eq!(f.to_string().parse::<AlgMorphism>().unwrap(), f);
        }
        assert!("alg src=2 tgt=1 fibers=0".parse::<AlgMorphism>().is_err());
    }

    proptest! {
        #[test]
        fn composition_associative_unital(
            (f, g, h) in (0usize..=6, 1usize..=4, 1usize..=3, 1usize..=3)
                .prop_flat_map(|(a, b, c, d)| (alg(a, b), alg(b, c), alg(c, d)))
        ) {
            let l = compose_alg(&compose_alg(&f, &g).unwrap(), &h).unwrap();
            let r = compose_alg(&f, &compose_alg(&g, &h).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            prop_assert_eq!(compose_alg(&AlgMorphism::identity(f.source()), &f).unwrap(), f.clone());
            prop_assert_eq!(compose_alg(&f, &AlgMorphism::identity(f.target())).unwrap(), f);
        }

        #[test]
        fn pseudo_pullback_is_set_pullback(
            (p, q) in (0usize..=4, 0usize..=4, 1usize..=3).prop_flat_map(|(a, b, c)| (alg(a, c), alg(b, c)))
        ) {
            let (sq, pairs) = pseudo_pullback(&p, &q).unwrap();
            let (pm, qm) = (p.map(), q.map());
            let brute: Vec<_> = (0..p.source()).flat_map(|x| (0..q.source()).map(move |z| (x, z))).filter(|&(x, z)| pm[x] == qm[z]).collect();
            prop_assert_eq!(&pairs, &brute);
            prop_assert!(sq.is_pseudo_pullback());
            let a = compose_alg(&sq.top, &q).unwrap();
            let b = compose_alg(&sq.left, &p).unwrap();
            prop_assert!(a.same_underlying(&b));
        }

        #[test]
        fn endpoint_functors_validate(
            chain in (1usize..=3, 1usize..=3, 1usize..=3).prop_flat_map(|(a, b, c)| (alg(a, b), alg(b, c)))
        ) {
            let (f, g) = chain;
            let x0 = f.source();
            prop_assert!(BialgFunctor::embed_endpoints(x0, &[f.clone(), g.clone()], Endpoint::Alg).unwrap().validate().is_ok());
            let y0 = g.target();
            prop_assert!(BialgFunctor::embed_endpoints(y0, &[g, f], Endpoint::Coalg).unwrap().validate().is_ok());
        }
    }
}
