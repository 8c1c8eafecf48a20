use std::collections::HashMap;

use crate::protoexact::{
    BiSimplicialGroupoid, ExactError, FinCat, FinGroupoid, GroupoidFunctor, SimplicialGroupoid,
};
use crate::simpcore::{delta, SimpError, Simplex, SimplicialSet};

fn check_theta(n: usize, theta: &[usize], top: usize) -> Result<usize, ExactError> {
    if theta.is_empty() || !delta::is_monotone(theta, n) || n > top || theta.len() - 1 > top {
        return Err(ExactError::BadParams(format!(
            "operator {theta:?} on level {n} outside 0..={top}"
        )));
    }
    Ok(theta.len() - 1)
}

/// A simplicial set seen as a simplicial groupoid with trivial
/// automorphisms, up to a chosen top level.
#[derive(Clone, Debug)]
pub struct DiscreteSimplicial {
    pub set: SimplicialSet,
    levels: Vec<FinGroupoid>,
    simplices: Vec<Vec<Simplex<1>>>,
    index: Vec<HashMap<Simplex<1>, usize>>,
}

impl DiscreteSimplicial {
    pub fn new(set: SimplicialSet, top: usize) -> Self {
        let simplices: Vec<Vec<Simplex<1>>> = (0..=top).map(|n| set.simplices([n])).collect();
        let index = simplices
            .iter()
            .map(|s| s.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect())
            .collect();
        let levels = simplices
            .iter()
            .map(|s| {
                let mut g = FinGroupoid::discrete(s.len());
                g.labels = s.iter().map(simplex_label).collect();
                g
            })
            .collect();
        DiscreteSimplicial {
            set,
            levels,
            simplices,
            index,
        }
    }

    pub fn simplices(&self, n: usize) -> &[Simplex<1>] {
        &self.simplices[n]
    }
}

pub(crate) fn simplex_label(x: &Simplex<1>) -> String {
    let w = delta::word_of_surjection(&x.ops[0]);
    if w.is_empty() {
        format!("c{}", x.cell)
    } else {
        format!(
            "c{}:{}",
            x.cell,
            w.iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(".")
        )
    }
}

impl SimplicialGroupoid for DiscreteSimplicial {
    fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    fn level(&self, n: usize) -> &FinGroupoid {
        &self.levels[n]
    }

    fn op(&self, n: usize, theta: &[usize]) -> Result<GroupoidFunctor, ExactError> {
        let m = check_theta(n, theta, self.max_level())?;
        let on_class = self.simplices[n]
            .iter()
            .map(|x| self.index[m][&self.set.apply(x, &[theta.to_vec()])])
            .collect();
        Ok(GroupoidFunctor {
            on_class,
            on_aut: vec![vec![0]; self.simplices[n].len()],
        })
    }

    fn cell(
        &self,
        n: usize,
        theta1: &[usize],
        theta2: &[usize],
        _x: usize,
    ) -> Result<usize, ExactError> {
        let m = check_theta(n, theta1, self.max_level())?;
        check_theta(m, theta2, self.max_level())?;
        Ok(0)
    }
}

/// A constant simplicial groupoid: every level is `G` and every operator
/// the identity.
#[derive(Clone, Debug)]
pub struct ConstantSimplicial {
    pub groupoid: FinGroupoid,
    pub top: usize,
}

impl SimplicialGroupoid for ConstantSimplicial {
    fn max_level(&self) -> usize {
        self.top
    }

    fn level(&self, _n: usize) -> &FinGroupoid {
        &self.groupoid
    }

    fn op(&self, n: usize, theta: &[usize]) -> Result<GroupoidFunctor, ExactError> {
        check_theta(n, theta, self.top)?;
        Ok(GroupoidFunctor::identity(&self.groupoid))
    }

    fn cell(
        &self,
        n: usize,
        theta1: &[usize],
        theta2: &[usize],
        _x: usize,
    ) -> Result<usize, ExactError> {
        let m = check_theta(n, theta1, self.top)?;
        check_theta(m, theta2, self.top)?;
        Ok(0)
    }
}

/// The constant bisimplicial groupoid on `G`.
#[derive(Clone, Debug)]
pub struct ConstantBisimplicial {
    pub groupoid: FinGroupoid,
    pub nmax: usize,
    pub kmax: usize,
}

impl BiSimplicialGroupoid for ConstantBisimplicial {
    fn bounds(&self) -> (usize, usize) {
        (self.nmax, self.kmax)
    }

    fn row(&self, _k: usize) -> Box<dyn SimplicialGroupoid + '_> {
        Box::new(ConstantSimplicial {
            groupoid: self.groupoid.clone(),
            top: self.nmax,
        })
    }

    fn column(&self, _n: usize) -> Box<dyn SimplicialGroupoid + '_> {
        Box::new(ConstantSimplicial {
            groupoid: self.groupoid.clone(),
            top: self.kmax,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathSide {
    /// `n ↦ X_{n+1}` with a new initial vertex.
    Initial,
    /// `n ↦ X_{n+1}` with a new final vertex.
    Final,
}

/// A path space of a simplicial groupoid: the join of `[0]` with `[n]` on
/// one side.
pub struct PathSpace<'a> {
    pub base: &'a dyn SimplicialGroupoid,
    pub side: PathSide,
}

impl PathSpace<'_> {
    fn extend_on(&self, n: usize, theta: &[usize]) -> Vec<usize> {
        match self.side {
            PathSide::Initial => std::iter::once(0)
                .chain(theta.iter().map(|&t| t + 1))
                .collect(),
            PathSide::Final => theta
                .iter()
                .copied()
                .chain(std::iter::once(n + 1))
                .collect(),
        }
    }
}

impl SimplicialGroupoid for PathSpace<'_> {
    fn max_level(&self) -> usize {
        self.base.max_level().saturating_sub(1)
    }

    fn level(&self, n: usize) -> &FinGroupoid {
        self.base.level(n + 1)
    }

    fn op(&self, n: usize, theta: &[usize]) -> Result<GroupoidFunctor, ExactError> {
        self.base.op(n + 1, &self.extend_on(n, theta))
    }

    fn cell(
        &self,
        n: usize,
        theta1: &[usize],
        theta2: &[usize],
        x: usize,
    ) -> Result<usize, ExactError> {
        let m = theta1.len().saturating_sub(1);
        self.base.cell(
            n + 1,
            &self.extend_on(n, theta1),
            &self.extend_on(m, theta2),
            x,
        )
    }
}

/// The nerve of a finite category as a simplicial set with nondegenerate
/// cells up to dimension `top`.
pub fn nerve(cat: &FinCat, top: usize) -> Result<SimplicialSet, SimpError> {
    let mut x = SimplicialSet::new([top]);
    // Chains of non-identity morphisms, keyed by their morphism list
    // (objects for length zero).
    let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    for o in 0..cat.objects() {
        ids.insert((o, vec![]), x.add_cell([0], [vec![]])?);
    }
    // Eilenberg–Zilber form of an arbitrary chain starting at `start`.
    let ez =
        |ids: &HashMap<(usize, Vec<usize>), usize>, start: usize, chain: &[usize]| -> Simplex<1> {
            let mut kept = Vec::new();
            let mut surj = vec![0];
            for &f in chain {
                if f != cat.id(cat.src(f)) {
                    kept.push(f);
                }
                surj.push(kept.len());
            }
            let s = kept.first().map_or(start, |&f| cat.src(f));
            Simplex {
                cell: ids[&(s, kept)],
                ops: [surj],
            }
        };
    let mut layer: Vec<Vec<usize>> = (0..cat.objects()).map(|_| vec![]).collect();
    let mut starts: Vec<usize> = (0..cat.objects()).collect();
    for n in 1..=top {
        let mut next = Vec::new();
        let mut next_starts = Vec::new();
        for (chain, &start) in layer.iter().zip(&starts) {
            let end = chain.last().map_or(start, |&f| cat.tgt(f));
            for f in cat.out(end).filter(|&f| f != cat.id(end)) {
                let mut c = chain.clone();
                c.push(f);
                let mut faces = Vec::with_capacity(n + 1);
                for i in 0..=n {
                    let (s, sub): (usize, Vec<usize>) = if i == 0 {
                        (cat.tgt(c[0]), c[1..].to_vec())
                    } else if i == n {
                        (cat.src(c[0]), c[..n - 1].to_vec())
                    } else {
                        let mut sub = c[..i - 1].to_vec();
                        sub.push(cat.compose(c[i - 1], c[i]));
                        sub.extend_from_slice(&c[i + 1..]);
                        (cat.src(c[0]), sub)
                    };
                    faces.push(ez(&ids, s, &sub));
                }
                let id = x.add_cell([n], [faces])?;
                ids.insert((start, c.clone()), id);
                next.push(c);
                next_starts.push(start);
            }
        }
        layer = next;
        starts = next_starts;
    }
    Ok(x)
}
