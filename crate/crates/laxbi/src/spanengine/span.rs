use std::sync::Arc;

use super::SpanError;
use crate::simpcore::{
    find_iso, find_natural_iso, pushout, same_complex, BiSimplicialSet, BisimplicialMap, SMap,
};

/// A cospan `left -> apex <- right` of bisimplicial sets.
#[derive(Clone, Debug)]
pub struct SpanMor {
    pub left: Arc<BiSimplicialSet>,
    pub apex: Arc<BiSimplicialSet>,
    pub right: Arc<BiSimplicialSet>,
    pub left_leg: BisimplicialMap,
    pub right_leg: BisimplicialMap,
}

impl SpanMor {
    pub fn new(left_leg: BisimplicialMap, right_leg: BisimplicialMap) -> Result<Self, SpanError> {
        if !same_complex(&left_leg.target, &right_leg.target) {
            return Err(SpanError::IllTyped("legs have different targets".into()));
        }
        Ok(SpanMor {
            left: left_leg.source.clone(),
            apex: left_leg.target.clone(),
            right: right_leg.source.clone(),
            left_leg,
            right_leg,
        })
    }

    pub fn identity(x: Arc<BiSimplicialSet>) -> Self {
        let id = SMap::identity(x.clone());
        SpanMor {
            left: x.clone(),
            apex: x.clone(),
            right: x,
            left_leg: id.clone(),
            right_leg: id,
        }
    }

    /// Isomorphic as cospans: compatible isomorphisms of all three objects.
    pub fn isomorphic(&self, other: &SpanMor) -> bool {
        let left = [self.left.clone(), self.apex.clone(), self.right.clone()];
        let right = [other.left.clone(), other.apex.clone(), other.right.clone()];
        let edges = [
            (0, 1, &self.left_leg, &other.left_leg),
            (2, 1, &self.right_leg, &other.right_leg),
        ];
        find_natural_iso(&left, &right, &edges).is_some()
    }
}

/// `t ∘ s`: glue the apexes along the shared boundary.
pub fn compose_span(s: &SpanMor, t: &SpanMor) -> Result<SpanMor, SpanError> {
    let glue = if same_complex(&s.right, &t.left) {
        t.left_leg.clone()
    } else {
        let iso = find_iso(&s.right, &t.left).ok_or(SpanError::BoundaryMismatch)?;
        iso.then(&t.left_leg)?
    };
    let po = pushout(&s.right_leg, &glue)?;
    Ok(SpanMor {
        left: s.left.clone(),
        apex: po.object.clone(),
        right: t.right.clone(),
        left_leg: s.left_leg.then(&po.legs[1])?,
        right_leg: t.right_leg.then(&po.legs[2])?,
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::simpcore::{std_map, StdSum};

    fn arc(s: &StdSum<2>) -> Arc<BiSimplicialSet> {
        Arc::new(s.complex.clone())
    }

    /// A cospan of standard sums given by vertex assignments.
    fn span(
        left: &[[usize; 2]],
        apex: &[[usize; 2]],
        right: &[[usize; 2]],
        la: &[(usize, [Vec<usize>; 2])],
        ra: &[(usize, [Vec<usize>; 2])],
    ) -> SpanMor {
        let (l, a, r) = (StdSum::new(left), StdSum::new(apex), StdSum::new(right));
        let aa = arc(&a);
        let ll = std_map(&l, arc(&l), &a, aa.clone(), la).unwrap();
        let rl = std_map(&r, arc(&r), &a, aa, ra).unwrap();
        SpanMor::new(ll, rl).unwrap()
    }

    fn h(v: &[usize]) -> [Vec<usize>; 2] {
        [v.to_vec(), vec![0, 1]]
    }

    #[test]
    fn glued_triangles() {
        // (m ⊔ id) then m, in horizontal form.
        let first = span(
            &[[1, 1]; 3],
            &[[2, 1], [1, 1]],
            &[[1, 1]; 2],
            &[(0, h(&[0, 1])), (0, h(&[1, 2])), (1, h(&[0, 1]))],
            &[(0, h(&[0, 2])), (1, h(&[0, 1]))],
        );
        let second = span(
            &[[1, 1]; 2],
            &[[2, 1]],
            &[[1, 1]],
            &[(0, h(&[0, 1])), (0, h(&[1, 2]))],
            &[(0, h(&[0, 2]))],
        );
        let c = compose_span(&first, &second).unwrap();
        assert_eq!(c.apex.nondeg_count([2, 1]), 2);
        assert_eq!(c.apex.nondeg_count([2, 0]), 4);
        assert_eq!(c.apex.nondeg_count([1, 0]), 2 * 5);
        assert_eq!(c.apex.nondeg_count([0, 0]), 2 * 4);
    }

    #[test]
    fn mismatched_boundaries() {
        let a = span(
            &[[1, 1]],
            &[[1, 1]],
            &[[1, 1]],
            &[(0, h(&[0, 1]))],
            &[(0, h(&[0, 1]))],
        );
        let b = span(
            &[[1, 1]; 2],
            &[[1, 1]; 2],
            &[[1, 1]],
            &[(0, h(&[0, 1])), (1, h(&[0, 1]))],
            &[(0, h(&[0, 1]))],
        );
        assert!(matches!(
            compose_span(&a, &b),
            Err(SpanError::BoundaryMismatch)
        ));
    }

    type Assign = Vec<(usize, [Vec<usize>; 2])>;

    /// Cospans between copies of `Δ^{1,1}` with random apex and legs.
    fn random_span(left: usize, right: usize) -> impl Strategy<Value = SpanMor> {
        prop::collection::vec((0..3usize, 0..3usize), 1..3).prop_flat_map(move |apex| {
            let dims: Vec<[usize; 2]> = apex.iter().map(|&(a, b)| [a, b]).collect();
            let leg = |n: usize, dims: Vec<[usize; 2]>| {
                let k = dims.len();
                prop::collection::vec((0..k, any::<[usize; 4]>()), n).prop_map(move |v| {
                    v.into_iter()
                        .map(|(s, r)| {
                            let d = dims[s];
                            let mut x = [r[0] % (d[0] + 1), r[1] % (d[0] + 1)];
                            let mut y = [r[2] % (d[1] + 1), r[3] % (d[1] + 1)];
                            x.sort();
                            y.sort();
                            (s, [x.to_vec(), y.to_vec()])
                        })
                        .collect::<Assign>()
                })
            };
            (
                Just(dims.clone()),
                leg(left, dims.clone()),
                leg(right, dims),
            )
                .prop_map(move |(d, la, ra)| {
                    span(&vec![[1, 1]; left], &d, &vec![[1, 1]; right], &la, &ra)
                })
        })
    }

    /// Spans with a shared boundary object so that composition is literal.
    fn chain3() -> impl Strategy<Value = (SpanMor, SpanMor, SpanMor)> {
        (1..3usize, 1..3usize, 1..3usize, 1..3usize)
            .prop_flat_map(|(a, b, c, d)| (random_span(a, b), random_span(b, c), random_span(c, d)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn composition_is_associative((s, t, u) in chain3()) {
            let left = compose_span(&compose_span(&s, &t).unwrap(), &u).unwrap();
            let right = compose_span(&s, &compose_span(&t, &u).unwrap()).unwrap();
            prop_assert!(left.isomorphic(&right));
        }

        #[test]
        fn composition_is_unital(s in random_span(2, 1)) {
            let l = compose_span(&SpanMor::identity(s.left.clone()), &s).unwrap();
            let r = compose_span(&s, &SpanMor::identity(s.right.clone())).unwrap();
            prop_assert!(l.isomorphic(&s));
            prop_assert!(r.isomorphic(&s));
        }
    }
}
