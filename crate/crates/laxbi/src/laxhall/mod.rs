//! Lax (co)algebra structures as cospans of bisimplicial sets, and the cells
//! of bialgebra simplices on `Cart × Pyr` built from a master diagram.

mod alpha;
mod beta;
mod master;
mod text;

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

use crate::ordalg::{AlgError, PpFailure};
use crate::simpcore::SimpError;
use crate::spanengine::SpanError;
use crate::twistposet::{FinPoset, PosetError};

pub use alpha::{alpha_lax, alpha_span, chain_functor, square_to_bispan, AlphaLax, ChainKind, Dir};
pub use beta::{
    beta_simplex, check_alpha_beta_compat, check_inert_equiv, check_simplicial, pull_cell,
    BetaSimplex, CompatReport, InertReport, NatIso, UnstrBialgSimplex,
};
pub use master::{apex, apex_map, master_diagram, omega_coords, Coords, MasterDiagram};

/// Vertex data of a map of standard sums: per source summand, the target
/// summand and the images of its vertices in each direction.
pub type Assign = Vec<(usize, [Vec<usize>; 2])>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaxError {
    #[error("square is not a pseudo-pullback: {0:?}")]
    NotPseudoPullback(PpFailure),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("simplex is not inert")]
    NotInert,
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Simp(#[from] SimpError),
    #[error(transparent)]
    Span(#[from] SpanError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// The intervals `[x;y]` of `p`, ordered by containment.
pub fn interval_domain<T: Clone + Eq + Hash + Debug>(p: &FinPoset<T>) -> FinPoset<(usize, usize)> {
    let n = p.len();
    let ivs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| p.le(x, y)).map(move |y| (x, y)))
        .collect();
    FinPoset::new(ivs, |&(x, y), &(x2, y2)| p.le(x2, x) && p.le(y, y2))
        .expect("containment is a partial order")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordalg::{pseudo_pullback, AlgMorphism, BialgFunctor, Endpoint, PyrDiagram};
    use crate::simpcore::{isomorphic, pushout, BiSimplicialSet};
    use crate::twistposet::DeltaOpSimplex;

    fn m() -> AlgMorphism {
        AlgMorphism::mult()
    }

    fn id(n: usize) -> AlgMorphism {
        AlgMorphism::identity(n)
    }

    fn tops(x: &BiSimplicialSet, deg: [usize; 2]) -> Vec<crate::simpcore::Simplex<2>> {
        (0..x.len())
            .filter(|&c| x.cell(c).deg == deg)
            .map(|c| x.nondeg(c))
            .collect()
    }

    fn is_standard(x: &BiSimplicialSet, p: usize, q: usize) -> bool {
        isomorphic(x, &BiSimplicialSet::standard(p, q))
    }

    /// The `(m, m)` span pair over the active map `[1] -> [2]`.
    fn mm_simplex() -> UnstrBialgSimplex {
        let d = PyrDiagram::from_spans(2, &[(id(2), m()), (m(), id(2))]).unwrap();
        UnstrBialgSimplex::from_base(
            BialgFunctor::from_singletons(vec![d]).unwrap(),
            DeltaOpSimplex::active_2_1(),
        )
        .unwrap()
    }

    #[test]
    fn alpha_of_multiplication() {
        let a = alpha_span(&m(), Dir::Horizontal);
        assert!(is_standard(&a.apex, 2, 1));
        // Spine edges 01 and 12, long edge 02.
        let s = crate::simpcore::StdSum::new(&[[2, 1]]);
        let top = |v: Vec<usize>| s.simplex(0, &[v, vec![0, 1]]);
        let edges = tops(&a.left, [1, 1]);
        assert_eq!(a.left_leg.apply(&edges[0]), top(vec![0, 1]));
        assert_eq!(a.left_leg.apply(&edges[1]), top(vec![1, 2]));
        assert_eq!(
            a.right_leg.apply(&tops(&a.right, [1, 1])[0]),
            top(vec![0, 2])
        );
        let b = alpha_span(&m().coproduct(&id(1)), Dir::Horizontal);
        assert!(isomorphic(
            &b.apex,
            &BiSimplicialSet::coproduct(&[
                &BiSimplicialSet::standard(2, 1),
                &BiSimplicialSet::standard(1, 1)
            ])
            .0
        ));
        let c = alpha_span(&id(3), Dir::Vertical);
        assert!(c.left_leg.is_iso() && c.right_leg.is_iso());
    }

    #[test]
    fn lax_comparison_into_the_three_simplex() {
        let l = alpha_lax(&m().coproduct(&id(1)), &m(), Dir::Horizontal).unwrap();
        assert!(is_standard(&l.upper.apex, 3, 1));
        assert!(l.comparison.is_cell_injective());
        assert!(!l.comparison.is_iso());
        // Two triangles sharing an edge: the spine union, no 3-simplex.
        assert_eq!(l.lower.apex.nondeg_count([2, 1]), 2);
        assert_eq!(l.lower.apex.nondeg_count([3, 1]), 0);
        let unit = alpha_lax(&m(), &id(1), Dir::Vertical).unwrap();
        assert!(unit.comparison.is_iso());
    }

    #[test]
    fn lax_comparison_is_injective_for_small_fibers() {
        let surjective = |p: &AlgMorphism| p.fibers().iter().all(|f| !f.is_empty());
        for (a, b, c) in [
            (2, 1, 1),
            (3, 2, 1),
            (4, 2, 1),
            (3, 2, 2),
            (4, 3, 2),
            (4, 2, 2),
        ] {
            for p1 in AlgMorphism::enumerate(a, b, 2)
                .into_iter()
                .filter(surjective)
            {
                for p2 in AlgMorphism::enumerate(b, c, 2)
                    .into_iter()
                    .filter(surjective)
                {
                    let l = alpha_lax(&p1, &p2, Dir::Horizontal).unwrap();
                    assert!(l.comparison.is_cell_injective(), "{p1:?} then {p2:?}");
                }
            }
        }
        // An empty fiber collapses a spine edge in the pushout.
        let p1 = AlgMorphism::new(1, vec![vec![], vec![0]]).unwrap();
        assert!(!alpha_lax(&p1, &m(), Dir::Horizontal)
            .unwrap()
            .comparison
            .is_cell_injective());
    }

    #[test]
    fn bispan_of_the_multiplication_square() {
        let (sq, _) = pseudo_pullback(&m(), &m()).unwrap();
        let s = square_to_bispan(&sq).unwrap();
        assert!(is_standard(&s.apex, 2, 2));
        assert_eq!(tops(&s.left, [1, 1]).len(), 4);
        // The four unit squares are distinct and the right leg hits the full diagonal.
        let mut squares: Vec<_> = tops(&s.left, [1, 1])
            .iter()
            .map(|x| s.left_leg.apply(x))
            .collect();
        squares.sort();
        squares.dedup();
        assert_eq!(squares.len(), 4);
        let top = s.right_leg.apply(&tops(&s.right, [1, 1])[0]);
        assert_eq!(
            top,
            crate::simpcore::StdSum::new(&[[2, 2]]).simplex(0, &[vec![0, 2], vec![0, 2]])
        );
        let ids = crate::ordalg::AlgSquare {
            top: id(2),
            left: id(2),
            bottom: id(2),
            right: id(2),
        };
        let t = square_to_bispan(&ids).unwrap();
        assert!(t.left_leg.is_iso() && t.right_leg.is_iso());
        let bad = crate::ordalg::AlgSquare {
            top: id(2),
            left: id(2),
            bottom: m(),
            right: m(),
        };
        assert!(matches!(
            square_to_bispan(&bad),
            Err(LaxError::NotPseudoPullback(_))
        ));
    }

    #[test]
    fn master_diagram_is_vertically_constant() {
        let u = mm_simplex();
        let b = beta_simplex(&u).unwrap();
        assert_eq!(b.master.vertical_failure(&b.groth), None);
        let g = crate::twistposet::groth_posets(&DeltaOpSimplex::constant(1, 1));
        let d = PyrDiagram::from_spans(1, &[(m(), m())]).unwrap();
        let md = master_diagram(&g, &[&d]).unwrap();
        assert_eq!(md.vertical_failure(&g), None);
        // Objects are X·Δ^{1,1}.
        let f = &md.per[0];
        for (i, &(w, w2)) in f.domain.elements().iter().enumerate() {
            if w == w2 {
                let ((a, c), b) = *g.omega.element(w);
                let size = d.value(g.phi.apply(b, 0, a), g.phi.apply(b, 0, c));
                assert!(isomorphic(
                    &f.values[i],
                    &BiSimplicialSet::standard(1, 1).copies(size)
                ));
            }
        }
    }

    #[test]
    fn witness_of_the_lax_compatibility() {
        let b = beta_simplex(&mm_simplex()).unwrap();
        assert!(b.validate().unwrap().passed());
        assert!(is_standard(b.value(1, (0, 1), (2, 0)).unwrap(), 2, 2));
        assert!(b.value(0, (0, 1), (2, 0)).unwrap().is_empty());
    }

    #[test]
    fn edge_over_identity_glues_along_the_middle() {
        // X₀ <-p- Y -q-> X₁ with p = q = m.
        let d = PyrDiagram::from_spans(1, &[(m(), m())]).unwrap();
        let u = UnstrBialgSimplex::from_base(
            BialgFunctor::from_singletons(vec![d]).unwrap(),
            DeltaOpSimplex::constant(1, 1),
        )
        .unwrap();
        let b = beta_simplex(&u).unwrap();
        assert!(b.validate().unwrap().passed());
        let (v, h) = (
            alpha_span(&m(), Dir::Vertical),
            alpha_span(&m(), Dir::Horizontal),
        );
        let expected = pushout(&v.left_leg, &h.left_leg).unwrap();
        assert!(isomorphic(
            b.value(1, (0, 1), (1, 0)).unwrap(),
            &expected.object
        ));
        assert!(isomorphic(
            b.value(1, (0, 0), (0, 0)).unwrap(),
            &BiSimplicialSet::standard(1, 1)
        ));
    }

    #[test]
    fn single_object_simplex() {
        let d = PyrDiagram::from_spans(3, &[]).unwrap();
        let u = UnstrBialgSimplex::from_base(
            BialgFunctor::from_singletons(vec![d]).unwrap(),
            DeltaOpSimplex::constant(0, 0),
        )
        .unwrap();
        let b = beta_simplex(&u).unwrap();
        assert!(isomorphic(
            b.value(1, (0, 0), (0, 0)).unwrap(),
            &BiSimplicialSet::standard(1, 1).copies(3)
        ));
    }

    #[test]
    fn alpha_compatibility_examples() {
        let one =
            check_alpha_beta_compat(&DeltaOpSimplex::constant(1, 1), 2, &[m()], Endpoint::Alg)
                .unwrap();
        assert!(one.passed());
        // Over the active edge the composite appears at level 1, while level 0
        // carries the glued pair of triangles.
        let chain = [m().coproduct(&id(1)), m()];
        let phi = DeltaOpSimplex::active_2_1();
        assert!(check_alpha_beta_compat(&phi, 3, &chain, Endpoint::Alg)
            .unwrap()
            .passed());
        let u = UnstrBialgSimplex::from_base(
            BialgFunctor::embed_endpoints(3, &chain, Endpoint::Alg).unwrap(),
            phi,
        )
        .unwrap();
        let b = beta_simplex(&u).unwrap();
        assert!(is_standard(b.value(1, (0, 1), (1, 1)).unwrap(), 3, 1));
        let lower = alpha_lax(&chain[0], &chain[1], Dir::Horizontal)
            .unwrap()
            .lower;
        assert!(isomorphic(b.value(1, (0, 0), (2, 0)).unwrap(), &lower.apex));
        let co = check_alpha_beta_compat(
            &DeltaOpSimplex::active_2_1(),
            1,
            &[m(), m().coproduct(&id(1))],
            Endpoint::Coalg,
        )
        .unwrap();
        assert!(co.passed());
        assert!(
            check_alpha_beta_compat(&DeltaOpSimplex::constant(0, 0), 2, &[], Endpoint::Alg)
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn inert_edges_are_equivalences() {
        let d = PyrDiagram::from_spans(2, &[(id(2), m()), (m(), id(2))]).unwrap();
        let e = PyrDiagram::from_spans(1, &[(m(), m()), (id(1), id(1))]).unwrap();
        let t = BialgFunctor::from_singletons(vec![d, e]).unwrap();
        for phi in [
            DeltaOpSimplex::new(vec![2, 1], vec![vec![0, 1]]).unwrap(),
            DeltaOpSimplex::new(vec![2, 1], vec![vec![1, 2]]).unwrap(),
            DeltaOpSimplex::constant(2, 1),
        ] {
            let u = UnstrBialgSimplex::from_base(t.clone(), phi).unwrap();
            assert!(check_inert_equiv(&u)
                .unwrap()
                .iter()
                .all(InertReport::passed));
        }
        let active = UnstrBialgSimplex::from_base(
            t,
            DeltaOpSimplex::new(vec![2, 1], vec![vec![0, 2]]).unwrap(),
        )
        .unwrap();
        assert_eq!(check_inert_equiv(&active).unwrap_err(), LaxError::NotInert);
    }

    #[test]
    fn non_isomorphic_transport_is_rejected() {
        let u = mm_simplex();
        let mut gamma = u.gamma.clone();
        let o = gamma[0][1].iter().position(|c| c.source() == 2).unwrap();
        gamma[0][1][o] = AlgMorphism::from_map(&[0, 0], 2).unwrap();
        assert!(matches!(
            UnstrBialgSimplex::new(u.f.clone(), u.phi.clone(), u.theta.clone(), gamma),
            Err(LaxError::InvalidInput(_))
        ));
    }

    #[test]
    fn restriction_commutes_with_the_cell() {
        let u = mm_simplex();
        for psi in [
            vec![0],
            vec![1],
            vec![0, 0],
            vec![1, 1],
            vec![0, 1],
            vec![0, 0, 1],
            vec![0, 1, 1],
        ] {
            assert!(check_simplicial(&u, &psi).unwrap(), "{psi:?}");
        }
    }

    #[test]
    fn simplex_text_round_trip() {
        let u = mm_simplex();
        let s = u.to_text();
        let v = UnstrBialgSimplex::parse(&s).unwrap();
        assert_eq!(v.to_text(), s);
        assert_eq!((v.f, v.theta, v.gamma), (u.f, u.theta, u.gamma));
        let cut: String = s.lines().filter(|l| !l.starts_with("gamma")).map(|l| format!("{l}\n")).collect();
        assert!(UnstrBialgSimplex::parse(&cut).is_err());
        assert!(matches!(UnstrBialgSimplex::parse("unstr k=x\n"), Err(LaxError::Parse { .. })));
    }

    #[test]
    fn intervals_of_a_chain() {
        let d = interval_domain(&crate::twistposet::chain(2));
        assert_eq!(d.len(), 6);
        let (a, b) = (d.index_of(&(1, 1)).unwrap(), d.index_of(&(0, 2)).unwrap());
        assert!(d.le(a, b) && !d.le(b, a));
    }
}
