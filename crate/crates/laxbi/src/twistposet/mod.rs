//! Twisted arrow posets, the Grothendieck posets `M_φ` and `Ω_φ`, free
//! completions and the cone functor.

mod cone;
mod groth;
mod poset;
mod simplex;

use std::collections::HashMap;

use thiserror::Error;

pub use cone::{cone_functor, kappa_bar, pyr_of, ConeFunctor, OplaxSpanFunctor, PyrFunctor};
pub use groth::{
    groth_posets, m_elements, m_of_gamma, m_of_nat, m_poset, omega_of_gamma, omega_of_nat,
    omega_poset, GrothPosets, OmegaElem,
};
pub use poset::{
    chain, completion_join, completion_meet, free_completion, product, pyr, Completion, FinPoset,
};
pub use simplex::{DeltaOpSimplex, NatTrans};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("incoherent oplax data: {0}")]
    IncoherentOplaxData(String),
}

/// Outcome of every cone functor check for one `φ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeReport {
    pub normal: bool,
    pub associative: bool,
    pub functor: bool,
    pub up_closed: bool,
    pub monotone: bool,
    /// `κ ∘ Pyr(V_φ ↪ M_φ) = ↑ ∘ Pyr(ν_φ)`.
    pub vertical: bool,
    pub vertical_collapse: bool,
    /// Every `ψ: [k'] -> [k]` (`k' ≤ k`) along which naturality fails.
    pub natural_failures: Vec<Vec<usize>>,
    pub natural_inclusion: bool,
}

impl ConeReport {
    pub fn all_pass(&self) -> bool {
        self.normal
            && self.associative
            && self.functor
            && self.up_closed
            && self.monotone
            && self.vertical
            && self.vertical_collapse
            && self.natural_failures.is_empty()
            && self.natural_inclusion
    }
}

/// True when consecutive values of `ψ` differ by at most one.
pub fn has_no_gaps(psi: &[usize]) -> bool {
    psi.windows(2).all(|w| w[1] <= w[0] + 1)
}

/// Runs every cone functor check for `φ`, reusing cone functors in `cache`.
pub fn cone_report(
    phi: &DeltaOpSimplex,
    cache: &mut HashMap<DeltaOpSimplex, ConeFunctor>,
) -> ConeReport {
    let c = cache
        .entry(phi.clone())
        .or_insert_with(|| cone_functor(phi))
        .clone();
    let mut r = ConeReport {
        normal: c.oplax.check_normal().is_ok(),
        associative: c.oplax.check_legs().is_ok()
            && c.oplax.check_components().is_ok()
            && c.oplax.check_associative().is_ok(),
        functor: c.oplax.to_functor().is_ok(),
        up_closed: c.check_up_closed().is_ok(),
        monotone: c.check_monotone().is_ok(),
        vertical: c.check_vertical().is_ok(),
        vertical_collapse: c.check_vertical_collapse().is_ok(),
        natural_failures: Vec::new(),
        natural_inclusion: true,
    };
    for m in 0..=phi.k() {
        for psi in crate::simpcore::delta::monotone_maps(m, phi.k()) {
            let sub = phi.compose(&psi).expect("monotone ψ");
            let other = cache
                .entry(sub.clone())
                .or_insert_with(|| cone_functor(&sub));
            if c.check_natural_with(&psi, other).is_err() {
                r.natural_failures.push(psi.clone());
            }
            r.natural_inclusion &= c.check_natural_inclusion(&psi, other).is_ok();
        }
    }
    r
}

/// All cone functor checks for `φ` as a single result.
pub fn check_cone(phi: &DeltaOpSimplex) -> Result<(), PosetError> {
    let r = cone_report(phi, &mut HashMap::new());
    if r.all_pass() {
        Ok(())
    } else {
        Err(PosetError::IncoherentOplaxData(format!("{r:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pyr_sizes() {
        assert_eq!(pyr(&chain(0)).len(), 1);
        for n in 0..=5 {
            assert_eq!(pyr(&chain(n)).len(), (n + 1) * (n + 2) / 2);
            pyr(&chain(n)).check().unwrap();
        }
    }

    #[test]
    fn constant_simplices() {
        for n in 0..=3 {
            for k in 0..=3 {
                let g = groth_posets(&DeltaOpSimplex::constant(n, k));
                assert!(g.m.find_iso(&product(&chain(n), &chain(k))).is_some());
                assert!(g
                    .omega
                    .find_iso(&product(&pyr(&chain(n)), &chain(k)))
                    .is_some());
                let w = g.wedge_poset();
                let wn = chain(n);
                let wk = chain(k);
                let short = |p: &FinPoset<usize>| {
                    let q = pyr(p);
                    let keep: Vec<usize> = (0..q.len())
                        .filter(|&i| q.element(i).1 - q.element(i).0 <= 1)
                        .collect();
                    q.subposet(&keep)
                };
                assert!(w.find_iso(&product(&short(&wn), &short(&wk))).is_some());
            }
        }
    }

    #[test]
    fn active_counts() {
        let g = groth_posets(&DeltaOpSimplex::active_2_1());
        assert_eq!((g.m.len(), g.omega.len(), g.wedge.len()), (5, 9, 11));
        g.wedge_poset().check().unwrap();
        let vrel = (0..5)
            .flat_map(|x| (0..5).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y && g.v.le(x, y))
            .count();
        assert_eq!(vrel, 2);
    }

    #[test]
    fn length_zero() {
        let g = groth_posets(&DeltaOpSimplex::constant(3, 0));
        assert!(g.m.find_iso(&chain(3)).is_some());
        assert!(g.omega.find_iso(&pyr(&chain(3))).is_some());
        assert!((0..4).all(|x| (0..4).all(|y| g.v.le(x, y) == (x == y))));
    }

    #[test]
    fn reindexing() {
        let phi = DeltaOpSimplex::active_2_1();
        let id = NatTrans::identity(&phi);
        assert_eq!(m_of_nat(&id), (0..5).collect::<Vec<_>>());
        assert_eq!(omega_of_nat(&id), (0..9).collect::<Vec<_>>());
        let row = m_of_gamma(&phi, &[0]).unwrap();
        let m = m_poset(&phi);
        assert_eq!(
            row.iter().map(|&i| *m.element(i)).collect::<Vec<_>>(),
            vec![(0, 0), (1, 0), (2, 0)]
        );
        // M(γ ∘ γ') = M(γ) ∘ M(γ')
        let phi = DeltaOpSimplex::new(vec![2, 1, 3], vec![vec![0, 2], vec![0, 0, 1, 1]]).unwrap();
        let (g1, g2) = (vec![0, 2, 2], vec![0, 1]);
        let comp: Vec<usize> = g2.iter().map(|&c| g1[c]).collect();
        let a = m_of_gamma(&phi, &comp).unwrap();
        let inner = m_of_gamma(&phi.compose(&g1).unwrap(), &g2).unwrap();
        let outer = m_of_gamma(&phi, &g1).unwrap();
        assert_eq!(a, inner.iter().map(|&i| outer[i]).collect::<Vec<_>>());
        let o = omega_of_gamma(&phi, &g1).unwrap();
        assert!(omega_poset(&phi.compose(&g1).unwrap()).is_monotone_map(&omega_poset(&phi), &o));
    }

    #[test]
    fn natural_transformation_maps() {
        let src = DeltaOpSimplex::edge(1, vec![0, 1]).unwrap();
        let tgt = DeltaOpSimplex::edge(2, vec![0, 2]).unwrap();
        let eta = NatTrans::new(src.clone(), tgt.clone(), vec![vec![0, 2], vec![0, 1]]).unwrap();
        assert!(m_poset(&src).is_monotone_map(&m_poset(&tgt), &m_of_nat(&eta)));
        assert!(omega_poset(&src).is_monotone_map(&omega_poset(&tgt), &omega_of_nat(&eta)));
        assert!(NatTrans::new(src, tgt, vec![vec![0, 1], vec![0, 1]]).is_err());
    }

    #[test]
    fn completions() {
        assert_eq!(free_completion(&chain(1)).poset.len(), 3);
        assert_eq!(
            free_completion(&product(&chain(1), &chain(1))).poset.len(),
            6
        );
        let c = free_completion(&chain(2));
        let q = chain(2);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(q.le(i, j), c.poset.le(c.up[i], c.up[j]));
            }
        }
        let c = free_completion(&product(&chain(1), &chain(2)));
        let els = c.poset.elements();
        for a in els {
            for b in els {
                let meet = c.poset.index_of(&completion_meet(a, b)).unwrap();
                let join = c.poset.index_of(&completion_join(a, b)).unwrap();
                let (ia, ib) = (c.poset.index_of(a).unwrap(), c.poset.index_of(b).unwrap());
                assert!(c.poset.le(meet, ia) && c.poset.le(meet, ib));
                assert!(c.poset.le(ia, join) && c.poset.le(ib, join));
                for z in 0..els.len() {
                    if c.poset.le(z, ia) && c.poset.le(z, ib) {
                        assert!(c.poset.le(z, meet));
                    }
                }
            }
        }
    }

    #[test]
    fn cone_regions_of_active_simplex() {
        let g = groth_posets(&DeltaOpSimplex::active_2_1());
        let ix = |a, b| g.m.index_of(&(a, b)).unwrap();
        let rows = |s: fixedbitset::FixedBitSet| -> Vec<OmegaElem> {
            s.ones().map(|i| *g.omega.element(i)).collect()
        };
        let top = rows(kappa_bar(&g, ix(0, 1), ix(1, 1)));
        assert_eq!(top, vec![((0, 0), 1), ((0, 1), 1), ((1, 1), 1)]);
        let bottom = rows(kappa_bar(&g, ix(0, 0), ix(2, 0)));
        assert_eq!(bottom.len(), 6);
        assert!(bottom.iter().all(|e| e.1 == 0));
        assert_eq!(rows(kappa_bar(&g, ix(1, 0), ix(1, 0))), vec![((1, 1), 0)]);
        assert_eq!(rows(kappa_bar(&g, ix(0, 1), ix(2, 0))).len(), 9);
    }

    #[test]
    fn cone_coherence_small() {
        let mut cache = HashMap::new();
        for phi in DeltaOpSimplex::enumerate(2, 2) {
            let r = cone_report(&phi, &mut cache);
            assert!(
                r.normal && r.associative && r.functor && r.up_closed && r.monotone,
                "{phi:?}"
            );
            assert!(r.vertical_collapse && r.natural_inclusion, "{phi:?}");
            assert!(
                r.natural_failures.iter().all(|psi| !has_no_gaps(psi)),
                "{phi:?}"
            );
            let injective = phi
                .maps()
                .iter()
                .all(|m| crate::simpcore::delta::is_injective(m));
            assert!(!injective || r.vertical, "{phi:?}");
        }
        for phi in DeltaOpSimplex::enumerate(1, 2) {
            let injective = phi
                .maps()
                .iter()
                .all(|m| crate::simpcore::delta::is_injective(m));
            assert_eq!(check_cone(&phi).is_ok(), injective, "{phi:?}");
        }
    }

    #[test]
    fn cone_counterexamples() {
        // φ collapsing [1] onto [0]: the vertical interval [(0,1);(0,0)] also
        // contains (1,1), so its region is larger than [ν x; ν x'].
        let c = cone_functor(&DeltaOpSimplex::edge(0, vec![0, 0]).unwrap());
        assert!(c.check_vertical().is_err());
        assert!(c.check_vertical_collapse().is_ok());
        // ψ = [0,2] skips level 1, whose point ([1;1],1) lies in the region of
        // [(0,2);(1,0)] but is not comparable to anything in the image.
        let phi = DeltaOpSimplex::new(vec![1, 1, 0], vec![vec![0, 1], vec![0]]).unwrap();
        let c = cone_functor(&phi);
        assert!(c.check_natural(&[0, 2]).is_err());
        let other = cone_functor(&phi.compose(&[0, 2]).unwrap());
        assert!(c.check_natural_inclusion(&[0, 2], &other).is_ok());
        assert!(c.check_natural(&[0, 1]).is_ok() && c.check_natural(&[1, 2]).is_ok());
    }

    #[test]
    fn oplax_round_trip() {
        let c = cone_functor(&DeltaOpSimplex::constant(2, 0));
        let f = c.oplax.to_functor().unwrap();
        let back = OplaxSpanFunctor::from_functor(c.groth.m.clone(), &f);
        assert_eq!(back.to_functor().unwrap(), f);
        let mut bad = c.oplax.clone();
        let key = (0, 2);
        bad.spans.insert(key, bad.objects[0].clone());
        assert!(matches!(
            bad.to_functor(),
            Err(PosetError::IncoherentOplaxData(_))
        ));
    }

    #[test]
    fn dump_lists_covers() {
        let d = chain(2).dump();
        assert!(d.contains("cover 0 1") && d.contains("cover 1 2") && !d.contains("cover 0 2"));
    }

    fn simplex() -> impl Strategy<Value = DeltaOpSimplex> {
        (
            0usize..=3,
            prop::collection::vec(0usize..=4, 4),
            any::<u64>(),
        )
            .prop_map(|(k, dims, seed)| {
                let dims = dims[..=k].to_vec();
                let mut s = seed;
                let maps = (0..k)
                    .map(|b| {
                        let all = crate::simpcore::delta::monotone_maps(dims[b + 1], dims[b]);
                        s = s
                            .wrapping_mul(6364136223846793005)
                            .wrapping_add(1442695040888963407);
                        all[(s >> 33) as usize % all.len()].clone()
                    })
                    .collect();
                DeltaOpSimplex::new(dims, maps).unwrap()
            })
    }

    proptest! {
        #[test]
        fn grothendieck_posets_are_posets(phi in simplex()) {
            let g = groth_posets(&phi);
            prop_assert!(g.m.check().is_ok());
            prop_assert!(g.v.check().is_ok());
            prop_assert!(g.omega.check().is_ok());
            prop_assert!(g.v.is_monotone_map(&g.m, &(0..g.m.len()).collect::<Vec<_>>()));
        }
    }
}
