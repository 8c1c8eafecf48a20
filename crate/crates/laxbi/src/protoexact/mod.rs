//! Finite augmented proto-exact categories, their axioms, and the plain,
//! iterated and monoidal S-constructions as skeletal finite groupoids.

mod category;
mod check;
mod construct;
mod diagram;
mod groupoid;
pub mod shape;

use thiserror::Error;

pub use category::{FinCat, ProtoExactCat, VectData};
pub use check::{
    check_proto_exact, find_pullback, find_pushout, is_bicartesian, is_pullback, is_pushout,
    ConditionResult, ExactReport, Square,
};
pub use construct::{
    coordinate_map, core_groupoid, green_diagrams, restriction_functor, s1_to_core, s2_groupoid,
    s_construction, s_groupoid, BiSimplicialGroupoid, DiagramSimplicial, Family, GreenDiagrams,
    SBisimplicial, SMode, SimplicialGroupoid,
};
pub use diagram::{
    automorphisms, canonical, compose_family, enumerate_diagrams, inverse_family, Budget, Diagram,
    DiagramGroupoid, IsoFamily,
};
pub use groupoid::{FinGroup, FinGroupoid, GroupoidFunctor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("enumeration of {what} exceeded the budget of {limit}")]
    TooLarge { what: String, limit: usize },
    #[error("missing: {0}")]
    Missing(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::shape::arr_shape;
    use super::*;
    use crate::simpcore::delta::monotone_maps;
    use crate::twistposet::chain;

    fn vect22() -> ProtoExactCat {
        ProtoExactCat::vect(2, 2).unwrap()
    }

    fn isos(c: &FinCat, a: usize) -> usize {
        c.hom(a, a).filter(|&f| c.is_iso(f)).count()
    }

    #[test]
    fn fixture_sizes() {
        let a = ProtoExactCat::arr(&chain(2));
        assert_eq!(a.cat.objects(), 6);
        assert_eq!(a.null.iter().filter(|&&z| z).count(), 3);
        let v1 = ProtoExactCat::vect(2, 1).unwrap();
        assert_eq!(v1.cat.objects(), 2);
        assert_eq!(v1.cat.hom(1, 1).len(), 2);
        let v = vect22();
        assert_eq!(v.cat.len(), 31);
        assert_eq!(isos(&v.cat, 2), 6);
        assert_eq!(ProtoExactCat::vect(2, 3).unwrap().cat.len(), 689);
        assert_eq!(isos(&ProtoExactCat::vect(3, 2).unwrap().cat, 2), 48);
        assert!(matches!(
            ProtoExactCat::vect(4, 1),
            Err(ExactError::BadParams(_))
        ));
    }

    #[test]
    fn vect_matrices() {
        let v = vect22();
        let d = v.vect.as_ref().unwrap();
        // Injections 1 -> 2: the three nonzero vectors of F_2^2.
        assert_eq!(v.cat.hom(1, 2).filter(|&f| v.mono[f]).count(), 3);
        assert_eq!(v.cat.hom(2, 1).filter(|&f| v.epi[f]).count(), 3);
        let f = d.morphism(&v.cat, 1, 2, &[1, 1]);
        assert_eq!(d.matrix(&v.cat, f), vec![1, 1]);
        let s = d.direct_sum(&v.cat, &[v.cat.id(1), v.cat.id(1)]);
        assert_eq!(s, v.cat.id(2));
        assert_eq!(d.direct_sum(&v.cat, &[]), v.cat.id(0));
    }

    #[test]
    fn axioms_hold_for_fixtures() {
        for a in [
            ProtoExactCat::arr(&chain(2)),
            ProtoExactCat::arr(&chain(3)),
            ProtoExactCat::terminal(),
            vect22(),
            ProtoExactCat::vect(3, 1).unwrap(),
        ] {
            let r = check_proto_exact(&a);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn removing_a_surjection_breaks_pullback_stability() {
        let mut a = vect22();
        let d = a.vect.clone().unwrap();
        let f = d.morphism(&a.cat, 2, 1, &[1, 0]);
        assert!(a.epi[f]);
        a.epi[f] = false;
        let r = check_proto_exact(&a);
        let c6 = r.condition(6);
        assert!(!c6.passed());
        assert!(
            c6.witness
                .as_ref()
                .unwrap()
                .contains(&format!("non-admissible {f}")),
            "{r}"
        );
    }

    #[test]
    fn squares_in_vect() {
        let v = vect22();
        let c = &v.cat;
        let d = v.vect.as_ref().unwrap();
        // 0 -> 1 -> 1 -> 0 style: the square 1 <- 0 -> 1 with pushout 2.
        let i0 = d.morphism(c, 0, 1, &[]);
        let s = find_pushout(c, i0, i0).unwrap();
        assert_eq!(c.tgt(s.right), 2);
        let p = find_pullback(c, s.right, s.bottom).unwrap();
        assert_eq!(c.src(p.top), 0);
        assert!(is_bicartesian(c, &s));
    }

    #[test]
    fn text_round_trip() {
        for a in [
            ProtoExactCat::arr(&chain(2)),
            ProtoExactCat::terminal(),
            vect22(),
        ] {
            let t = a.to_text();
            let b = ProtoExactCat::parse(&t).unwrap();
            assert_eq!(b.to_text(), t);
            assert_eq!(
                check_proto_exact(&b).passed(),
                check_proto_exact(&a).passed()
            );
        }
        assert!(ProtoExactCat::parse(
            "protoexact objects=1 morphisms=1\nobject 0 x -\nmorphism 0 0 0 I\n"
        )
        .is_err());
    }

    #[test]
    fn small_s_groupoids() {
        let v = vect22();
        let s0 = s_groupoid(&v, 0, Budget::default()).unwrap();
        assert_eq!(s0.groupoid.aut_orders(), vec![1]);
        let s1 = s_groupoid(&v, 1, Budget::default()).unwrap();
        assert_eq!(s1.groupoid.aut_orders(), vec![1, 1, 6]);
        let s2 = s_groupoid(&v, 2, Budget::default()).unwrap();
        assert_eq!(s2.len(), 6);
        // Flags 0 ⊆ V1 ⊆ V2 by dimension pairs, with parabolic stabilisers.
        let (n01, n02) = (
            s2.shape.node(&[0, 1]).unwrap(),
            s2.shape.node(&[0, 2]).unwrap(),
        );
        let mut dims: Vec<(u32, u32, usize)> = s2
            .reps
            .iter()
            .zip(&s2.groupoid.classes)
            .map(|(d, g)| (d.obj[n01], d.obj[n02], g.order()))
            .collect();
        dims.sort();
        assert_eq!(
            dims,
            vec![
                (0, 0, 1),
                (0, 1, 1),
                (0, 2, 6),
                (1, 1, 1),
                (1, 2, 2),
                (2, 2, 6)
            ]
        );
        for (d, _) in s2.reps.iter().zip(0..) {
            assert!(d.is_valid(&v, &s2.shape));
        }
    }

    #[test]
    fn flags_over_arr() {
        let a = ProtoExactCat::arr(&chain(2));
        let s1 = s_groupoid(&a, 1, Budget::default()).unwrap();
        // S_1 is the set of objects (a poset has no nontrivial isos).
        assert_eq!(s1.groupoid.aut_orders(), vec![1; 6]);
        let s2 = s_groupoid(&a, 2, Budget::default()).unwrap();
        // Pairs ij -> ij' of monos: i ≤ j ≤ j'.
        assert_eq!(s2.len(), 10);
    }

    #[test]
    fn budgets_fail_loudly() {
        let r = s_groupoid(&vect22(), 3, Budget { max_classes: 3 });
        assert!(matches!(r, Err(ExactError::TooLarge { .. })));
    }

    #[test]
    fn canonical_forms_are_invariant() {
        let v = vect22();
        let shape = arr_shape(2);
        let s2 = s_groupoid(&v, 2, Budget::default()).unwrap();
        let c = &v.cat;
        for (x, d) in s2.reps.iter().enumerate() {
            // Transport by every family of automorphisms of the objects.
            let mut fams: Vec<Vec<u32>> = vec![vec![]];
            for &o in &d.obj {
                fams = fams
                    .into_iter()
                    .flat_map(|f| {
                        c.hom(o as usize, o as usize)
                            .filter(|&g| c.is_iso(g))
                            .map(move |g| {
                                let mut f = f.clone();
                                f.push(g as u32);
                                f
                            })
                    })
                    .collect();
            }
            for g in fams {
                let e = d.act(c, &shape, &g);
                let (y, psi) = s2.classify(c, &e).unwrap();
                assert_eq!(y, x);
                assert_eq!(&e.act(c, &shape, &psi), d);
            }
        }
    }

    #[test]
    fn simplicial_identities_up_to_recorded_cells() {
        let s = s_construction(Arc::new(vect22()), 3, Budget::default()).unwrap();
        for n in 0..=3 {
            for m in 0..=3 {
                for t1 in monotone_maps(m, n) {
                    for l in 0..=3 {
                        for t2 in monotone_maps(l, m) {
                            let f1 = s.op(n, &t1).unwrap();
                            let f2 = s.op(m, &t2).unwrap();
                            let t: Vec<usize> = t2.iter().map(|&i| t1[i]).collect();
                            let direct = s.op(n, &t).unwrap();
                            let both = f1.then(&f2);
                            assert_eq!(both.on_class, direct.on_class);
                            let cells: Vec<usize> = (0..s.level(n).len())
                                .map(|x| s.cell(n, &t1, &t2, x).unwrap())
                                .collect();
                            assert_eq!(both, direct.conjugate(s.level(l), &cells));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn iterated_and_monoidal_levels() {
        let v = vect22();
        let b = Budget::default();
        let s11 = s2_groupoid(&v, 1, 1, SMode::Iterated, b).unwrap();
        assert_eq!(s11.groupoid.aut_orders(), vec![1, 1, 6]);
        for n in 0..=3 {
            let plain = s_groupoid(&v, n, b).unwrap().groupoid.aut_orders();
            assert_eq!(
                s2_groupoid(&v, n, 1, SMode::Iterated, b)
                    .unwrap()
                    .groupoid
                    .aut_orders(),
                plain
            );
            assert_eq!(
                s2_groupoid(&v, n, 1, SMode::Monoidal, b)
                    .unwrap()
                    .groupoid
                    .aut_orders(),
                plain
            );
        }
        // Pairs of classes with total dimension at most 2.
        let m12 = s2_groupoid(&v, 1, 2, SMode::Monoidal, b).unwrap();
        assert_eq!(m12.groupoid.aut_orders(), vec![1, 1, 1, 1, 6, 6]);
        let g = green_diagrams(&v, b).unwrap();
        assert_eq!(
            s2_groupoid(&v, 2, 2, SMode::Iterated, b).unwrap().len(),
            g.cross.len()
        );
    }

    #[test]
    fn green_diagram_counts() {
        let v = vect22();
        let g = green_diagrams(&v, Budget::default()).unwrap();
        assert_eq!(g.grid.len(), g.cross.len());
        assert!(g.frame.len() > g.cross.len());
        g.to_cross
            .validate(&g.grid.groupoid, &g.cross.groupoid)
            .unwrap();
        g.to_frame
            .validate(&g.grid.groupoid, &g.frame.groupoid)
            .unwrap();
        let t = green_diagrams(&ProtoExactCat::terminal(), Budget::default()).unwrap();
        assert_eq!((t.grid.len(), t.cross.len(), t.frame.len()), (1, 1, 1));
    }

    #[test]
    fn group_tables() {
        let z3 = FinGroup::cyclic(3);
        assert!(z3.is_hom(&z3, &[0, 2, 1]));
        assert!(!z3.is_hom(&z3, &[0, 1, 1]));
        assert!(FinGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        let g =
            FinGroupoid::discrete(2).disjoint_union(&FinGroupoid::delooping(FinGroup::cyclic(2)));
        assert_eq!(
            FinGroupoid::parse_dump(&g.dump()).unwrap().aut_orders(),
            vec![1, 1, 2]
        );
        let core = core_groupoid(&vect22());
        assert_eq!(core.aut_orders(), vec![1, 1, 6]);
    }
}
