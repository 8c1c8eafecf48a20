//! Hall numbers: groupoid cardinalities, product and coproduct structure
//! constants from short exact sequences, law checks, and the comparison of
//! `Δμ` with `μ̄²Δ²`.

mod green;
mod table;

use thiserror::Error;

use crate::protoexact::ExactError;

pub use green::{green_compare, GreenEntry, GreenReport};
pub use table::{gcard, hall_table, verify_laws, HallTable, LawReport, LawsReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HallError {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Exact(ExactError),
}

impl From<ExactError> for HallError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::TooLarge { what, limit } => HallError::BudgetExceeded(format!("{what} needs more than {limit} classes")),
            e => HallError::Exact(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use num::{BigInt, BigRational, One};

    use super::*;
    use crate::protoexact::{core_groupoid, Budget, FinGroup, FinGroupoid, ProtoExactCat};

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(r))
    }

    fn vect(q: usize, d: usize) -> ProtoExactCat {
        ProtoExactCat::vect(q, d).unwrap()
    }

    /// All subspaces of `F_p^n`, each as the sorted set of its vectors.
    fn subspaces(p: usize, n: usize) -> Vec<BTreeSet<Vec<usize>>> {
        let vectors: Vec<Vec<usize>> = (0..p.pow(n as u32)).map(|c| (0..n).map(|i| c / p.pow(i as u32) % p).collect()).collect();
        let mut found: BTreeSet<BTreeSet<Vec<usize>>> = BTreeSet::new();
        found.insert([vec![0; n]].into_iter().collect());
        loop {
            let mut next = found.clone();
            for s in &found {
                for v in &vectors {
                    let mut t = s.clone();
                    for w in s {
                        for k in 0..p {
                            t.insert((0..n).map(|i| (w[i] + k * v[i]) % p).collect());
                        }
                    }
                    next.insert(t);
                }
            }
            if next.len() == found.len() {
                return found.into_iter().collect();
            }
            found = next;
        }
    }

    fn dim_of(p: usize, s: &BTreeSet<Vec<usize>>) -> usize {
        (0..).find(|&k| p.pow(k as u32) == s.len()).unwrap()
    }

    #[test]
    fn cardinalities() {
        assert_eq!(gcard(&FinGroupoid::discrete(4)), q(4, 1));
        assert_eq!(gcard(&FinGroupoid::delooping(FinGroup::cyclic(2))), q(1, 2));
        assert_eq!(gcard(&core_groupoid(&vect(2, 2))), q(13, 6));
        let (a, b) = (FinGroupoid::discrete(2), FinGroupoid::delooping(FinGroup::cyclic(3)));
        assert_eq!(gcard(&a.disjoint_union(&b)), gcard(&a) + gcard(&b));
    }

    #[test]
    fn products_count_subspaces() {
        for (p, dmax) in [(2, 3), (3, 2)] {
            let t = hall_table(&vect(p, dmax), Budget::default()).unwrap();
            let subs = subspaces(p, dmax);
            for c in 0..=dmax {
                let here = subspaces(p, c);
                for b in 0..=c {
                    let count = here.iter().filter(|s| dim_of(p, s) == b).count() as i64;
                    assert_eq!(t.g(c, c - b, b), q(count, 1), "q={p} c={c} b={b}");
                    assert_eq!(t.d(c, c - b, b), q(count, 1));
                }
            }
            assert!(subs.len() > dmax);
            // Nothing else is nonzero.
            assert!(t.product.keys().all(|&(c, a, b)| a + b == c));
        }
        let t = hall_table(&vect(2, 2), Budget::default()).unwrap();
        assert_eq!(t.g(2, 1, 1), q(3, 1));
        assert_eq!(t.d(2, 1, 1), q(3, 1));
        for a in 0..3 {
            assert_eq!(t.g(a, 0, a), BigRational::one());
            assert_eq!(t.g(a, a, 0), BigRational::one());
        }
        assert_eq!(t.unchecked, vec![(1, 2), (2, 1), (2, 2)]);
    }

    #[test]
    fn triple_product_counts_complete_flags() {
        let t = hall_table(&vect(2, 3), Budget::default()).unwrap();
        let subs = subspaces(2, 3);
        let flags = subs
            .iter()
            .filter(|v| dim_of(2, v) == 1)
            .map(|v| subs.iter().filter(|w| dim_of(2, w) == 2 && v.is_subset(w)).count())
            .sum::<usize>();
        assert_eq!(flags, 21);
        assert_eq!(t.triple_product(1, 1, 1, 3), (q(21, 1), q(21, 1)));
        assert_eq!(t.triple_coproduct(3, 1, 1, 1), (q(21, 1), q(21, 1)));
    }

    #[test]
    fn laws_hold_within_budget() {
        for d in 1..=3 {
            let r = verify_laws(&hall_table(&vect(2, d), Budget::default()).unwrap());
            assert!(r.passed(), "{r}");
            assert!(r.associativity.checked > 0);
        }
        let r = verify_laws(&hall_table(&vect(2, 1), Budget::default()).unwrap());
        assert_eq!(r.associativity.checked, 4);
        assert!(verify_laws(&hall_table(&ProtoExactCat::arr(&crate::twistposet::chain(2)), Budget::default()).unwrap()).passed());
    }

    #[test]
    fn perturbed_constant_is_reported() {
        let mut t = hall_table(&vect(2, 3), Budget::default()).unwrap();
        *t.product.get_mut(&(3, 2, 1)).unwrap() += BigRational::one();
        let r = verify_laws(&t);
        assert!(!r.passed());
        assert!(r.coassociativity.violations.is_empty());
        assert!(r.associativity.violations.iter().any(|v| v.contains("[3]")));
    }

    #[test]
    fn constants_ignore_the_skeleton() {
        let a = vect(2, 2);
        let t = hall_table(&a, Budget::default()).unwrap();
        for o in 0..3 {
            let b = a.duplicate_object(o).unwrap();
            let u = hall_table(&b, Budget::default()).unwrap();
            assert_eq!(u.product, t.product);
            assert_eq!(u.coproduct, t.coproduct);
            assert_eq!(u.labels, t.labels);
        }
    }

    #[test]
    fn table_text_round_trip() {
        let t = hall_table(&vect(2, 2), Budget::default()).unwrap();
        let s = t.to_text();
        assert_eq!(HallTable::parse(&s).unwrap(), t);
        assert!(format!("{t}").contains("= 3"));
        assert!(matches!(HallTable::parse("hall basis=1 budget=1 dmax=-\n"), Err(HallError::Parse { .. })));
    }

    #[test]
    fn budget_overflow_is_an_error() {
        let r = hall_table(&vect(2, 2), Budget { max_classes: 2 });
        assert!(matches!(r, Err(HallError::BudgetExceeded(_))));
    }

    #[test]
    fn laxness_for_vect() {
        let r = green_compare(&vect(2, 2), Budget::default()).unwrap();
        let e = r.entry((1, 1), (1, 1)).unwrap();
        assert_eq!((e.cross.clone(), e.frame.clone()), (q(9, 1), q(2, 1)));
        assert!(r.routes_agree(), "{r}");
        assert!(r.is_lax());
        assert!(r.grid_to_cross.is_ok());
        assert!(r.grid_to_frame.is_err());
        assert_eq!(r.verdict(), "LAX (expected)");
    }

    #[test]
    fn trivial_category_is_strict() {
        let r = green_compare(&ProtoExactCat::terminal(), Budget::default()).unwrap();
        assert!(r.routes_agree());
        assert!(!r.is_lax());
        assert!(r.grid_to_frame.is_ok());
        assert_eq!(r.verdict(), "STRICT");
    }
}
