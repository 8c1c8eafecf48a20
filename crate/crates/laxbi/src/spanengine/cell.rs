use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use super::SpanError;
use crate::simpcore::{
    colim, find_natural_iso, same_complex, BiSimplicialSet, BisimplicialMap, Colimit, Diagram, SMap,
};
use crate::twistposet::{FinPoset, GrothPosets};

/// A functor from a finite poset to bisimplicial sets. The poset order is the
/// direction of the maps: `i ≤ j` gives `values[i] -> values[j]`.
#[derive(Clone, Debug)]
pub struct CellFunctor<K> {
    pub domain: FinPoset<K>,
    pub values: Vec<Arc<BiSimplicialSet>>,
    maps: HashMap<(usize, usize), BisimplicialMap>,
}

/// Objects `(U, [x;y])` of `Cart(S) × Pyr(M)`: a subset bitmask and an
/// interval given by indices into `M`.
pub type CellKey = (usize, (usize, usize));

fn topological(domain: &FinPoset<impl Clone + Eq + Hash + Debug>) -> Vec<usize> {
    let n = domain.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (0..n).filter(|&j| domain.le(j, i)).count());
    order
}

impl<K: Clone + Eq + Hash + Debug> CellFunctor<K> {
    /// Builds the functor from maps along covering pairs, checking types and
    /// that all paths between two objects agree.
    pub fn from_covers(
        domain: FinPoset<K>,
        values: Vec<Arc<BiSimplicialSet>>,
        mut covers: HashMap<(usize, usize), BisimplicialMap>,
    ) -> Result<Self, SpanError> {
        let n = domain.len();
        if values.len() != n {
            return Err(SpanError::IllTyped(format!(
                "{} values for {n} objects",
                values.len()
            )));
        }
        let cover_list = domain.covers();
        let mut succ = vec![Vec::new(); n];
        for &(i, j) in &cover_list {
            let f = covers.remove(&(i, j)).ok_or_else(|| {
                SpanError::IllTyped(format!(
                    "missing map {:?} -> {:?}",
                    domain.element(i),
                    domain.element(j)
                ))
            })?;
            if !same_complex(&f.source, &values[i]) || !same_complex(&f.target, &values[j]) {
                return Err(SpanError::IllTyped(format!(
                    "map {:?} -> {:?} is ill-typed",
                    domain.element(i),
                    domain.element(j)
                )));
            }
            succ[i].push((j, f));
        }
        if let Some(&(i, j)) = covers.keys().next() {
            return Err(SpanError::IllTyped(format!(
                "{:?} -> {:?} is not a covering pair",
                domain.element(i),
                domain.element(j)
            )));
        }
        let mut maps = HashMap::new();
        for &i in topological(&domain).iter().rev() {
            maps.insert((i, i), SMap::identity(values[i].clone()));
            for j in 0..n {
                if i == j || !domain.le(i, j) {
                    continue;
                }
                let (k, f) = succ[i]
                    .iter()
                    .find(|(k, _)| domain.le(*k, j))
                    .expect("a cover below every strict relation");
                let g = f.then(&maps[&(*k, j)])?;
                for (k2, f2) in &succ[i] {
                    if domain.le(*k2, j) && !f2.then(&maps[&(*k2, j)])?.same_as(&g) {
                        return Err(SpanError::NonFunctorial(format!(
                            "{:?} -> {:?} via {:?} and {:?}",
                            domain.element(i),
                            domain.element(j),
                            domain.element(*k),
                            domain.element(*k2)
                        )));
                    }
                }
                maps.insert((i, j), g);
            }
        }
        Ok(CellFunctor {
            domain,
            values,
            maps,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The map `values[i] -> values[j]` for `i ≤ j`.
    pub fn map(&self, i: usize, j: usize) -> Option<&BisimplicialMap> {
        self.maps.get(&(i, j))
    }

    pub fn value_at(&self, key: &K) -> Option<&Arc<BiSimplicialSet>> {
        self.domain.index_of(key).map(|i| &self.values[i])
    }

    /// Precomposition with a monotone map `along: domain -> self.domain`.
    pub fn pullback<L: Clone + Eq + Hash + Debug>(
        &self,
        domain: FinPoset<L>,
        along: &[usize],
    ) -> Result<CellFunctor<L>, SpanError> {
        if along.len() != domain.len() || !domain.is_monotone_map(&self.domain, along) {
            return Err(SpanError::IllTyped(
                "pullback along a non-monotone map".into(),
            ));
        }
        let values = along.iter().map(|&i| self.values[i].clone()).collect();
        let mut maps = HashMap::new();
        for i in 0..domain.len() {
            for j in 0..domain.len() {
                if domain.le(i, j) {
                    maps.insert((i, j), self.maps[&(along[i], along[j])].clone());
                }
            }
        }
        Ok(CellFunctor {
            domain,
            values,
            maps,
        })
    }

    /// Restriction to the given objects.
    pub fn restrict(&self, keep: &[usize]) -> CellFunctor<K> {
        let domain = self.domain.subposet(keep);
        self.pullback(domain, keep)
            .expect("inclusions are monotone")
    }

    /// The colimit of the functor over the given objects, with the legs in
    /// the order of `objects`. When the objects have a maximum its value is
    /// used directly.
    pub fn colimit_over(&self, objects: &[usize]) -> Result<Pointwise, SpanError> {
        if let Some(&top) = objects
            .iter()
            .find(|&&t| objects.iter().all(|&o| self.domain.le(o, t)))
        {
            let legs = objects
                .iter()
                .map(|&o| self.maps[&(o, top)].clone())
                .collect();
            return Ok(Pointwise {
                object: self.values[top].clone(),
                legs,
                colimit: None,
                top: Some(top),
            });
        }
        let mut diag = Diagram::new(objects.iter().map(|&o| self.values[o].clone()).collect());
        let pos: HashMap<usize, usize> = objects.iter().enumerate().map(|(p, &o)| (o, p)).collect();
        for &(i, j) in &self.domain.covers() {
            if let (Some(&a), Some(&b)) = (pos.get(&i), pos.get(&j)) {
                diag.arrow(a, b, self.maps[&(i, j)].clone());
            }
        }
        let c = colim(&diag)?;
        Ok(Pointwise {
            object: c.object.clone(),
            legs: c.legs.clone(),
            colimit: Some(c),
            top: None,
        })
    }

    /// Isomorphisms `values[i] -> other.values[i]` natural along all covers.
    pub fn natural_iso(&self, other: &CellFunctor<K>) -> Option<Vec<BisimplicialMap>> {
        if self.domain != other.domain {
            return None;
        }
        let covers = self.domain.covers();
        let edges: Vec<_> = covers
            .iter()
            .map(|&(i, j)| (i, j, &self.maps[&(i, j)], &other.maps[&(i, j)]))
            .collect();
        find_natural_iso(&self.values, &other.values, &edges)
    }
}

/// A pointwise colimit together with its universal cocone.
#[derive(Clone, Debug)]
pub struct Pointwise {
    pub object: Arc<BiSimplicialSet>,
    pub legs: Vec<BisimplicialMap>,
    colimit: Option<Colimit<2>>,
    /// Position-free marker: the domain index of the maximum, if there is one.
    top: Option<usize>,
}

impl Pointwise {
    /// The map out of the colimit induced by a cocone indexed like `legs`.
    /// `objects` is the index list the colimit was taken over.
    pub fn induced(
        &self,
        objects: &[usize],
        target: &Arc<BiSimplicialSet>,
        cocone: &[BisimplicialMap],
    ) -> Result<BisimplicialMap, SpanError> {
        match (&self.colimit, self.top) {
            (Some(c), _) => Ok(c.induced(target, cocone)?),
            (None, Some(top)) => {
                let p = objects
                    .iter()
                    .position(|&o| o == top)
                    .expect("maximum among the objects");
                Ok(cocone[p].clone())
            }
            (None, None) => unreachable!("pointwise value without a colimit or a maximum"),
        }
    }
}

/// `Cart(S) × Pyr(M)`, or the sub-poset on the given masks and intervals,
/// ordered in the direction of the maps (sub-intervals and subsets map into
/// larger ones).
pub fn cell_domain(
    m: &FinPoset<(usize, usize)>,
    masks: &[usize],
    intervals: &[(usize, usize)],
) -> FinPoset<CellKey> {
    let els: Vec<CellKey> = masks
        .iter()
        .flat_map(|&u| intervals.iter().map(move |&w| (u, w)))
        .collect();
    FinPoset::new(els, |&(u, (x, y)), &(u2, (x2, y2))| {
        u & !u2 == 0 && m.le(x2, x) && m.le(y, y2)
    })
    .expect("product of posets")
}

fn all_intervals(m: &FinPoset<(usize, usize)>) -> Vec<(usize, usize)> {
    (0..m.len())
        .flat_map(|x| {
            (0..m.len())
                .filter(move |&y| m.le(x, y))
                .map(move |y| (x, y))
        })
        .collect()
}

pub fn cart_domain(m: &FinPoset<(usize, usize)>, s: usize) -> FinPoset<CellKey> {
    let masks: Vec<usize> = (0..1usize << s).collect();
    cell_domain(m, &masks, &all_intervals(m))
}

pub fn sing_wedge_domain(
    m: &FinPoset<(usize, usize)>,
    s: usize,
    wedge: &[(usize, usize)],
) -> FinPoset<CellKey> {
    let masks: Vec<usize> = (0..s).map(|t| 1 << t).collect();
    cell_domain(m, &masks, wedge)
}

fn contained(m: &FinPoset<(usize, usize)>, inner: (usize, usize), outer: (usize, usize)) -> bool {
    m.le(outer.0, inner.0) && m.le(inner.1, outer.1)
}

/// Objects of `partial` lying under `(u, w)`: singletons in `u`, intervals inside `w`.
fn comma(
    partial: &CellFunctor<CellKey>,
    m: &FinPoset<(usize, usize)>,
    (u, w): CellKey,
) -> Vec<usize> {
    (0..partial.len())
        .filter(|&j| {
            let (t, w2) = *partial.domain.element(j);
            t & !u == 0 && contained(m, w2, w)
        })
        .collect()
}

/// The cartesian extension of a functor on `Sing(S) × Wedge(M)` to
/// `Cart(S) × Pyr(M)`: pointwise colimits over the objects underneath.
pub fn rke_cartesian(
    partial: &CellFunctor<CellKey>,
    m: &FinPoset<(usize, usize)>,
    s: usize,
) -> Result<CellFunctor<CellKey>, SpanError> {
    for &(t, (x, y)) in partial.domain.elements() {
        if t.count_ones() != 1 || t >> s != 0 || !m.le(x, y) {
            return Err(SpanError::NonFunctorialInput(format!(
                "object ({t}, ({x}, {y})) is not in Sing × Pyr"
            )));
        }
    }
    let domain = cart_domain(m, s);
    let mut points = Vec::with_capacity(domain.len());
    for d in domain.elements() {
        let objs = comma(partial, m, *d);
        let pw = partial.colimit_over(&objs)?;
        points.push((objs, pw));
    }
    let mut covers = HashMap::new();
    for (i, j) in domain.covers() {
        let (objs, pw) = &points[i];
        let (objs2, pw2) = &points[j];
        let cocone: Vec<_> = objs
            .iter()
            .map(|o| pw2.legs[objs2.iter().position(|p| p == o).unwrap()].clone())
            .collect();
        covers.insert((i, j), pw.induced(objs, &pw2.object, &cocone)?);
    }
    let values = points.iter().map(|(_, pw)| pw.object.clone()).collect();
    CellFunctor::from_covers(domain, values, covers)
}

/// Outcome of [`validate_cell`]; `None` means the check passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CellReport {
    /// An object where the comparison from the extension is not an isomorphism.
    pub not_cartesian: Option<CellKey>,
    /// A morphism `(Id, v)` with `v` in `Pyr(V)` sent to a non-isomorphism.
    pub not_vertical: Option<(CellKey, CellKey)>,
}

impl CellReport {
    pub fn passed(&self) -> bool {
        self.not_cartesian.is_none() && self.not_vertical.is_none()
    }
}

/// Checks that `tau` on `Cart(S) × Pyr(M_φ)` is cartesian and vertically constant.
pub fn validate_cell(
    tau: &CellFunctor<CellKey>,
    g: &GrothPosets,
    s: usize,
) -> Result<CellReport, SpanError> {
    let m = &g.m;
    if tau.domain != cart_domain(m, s) {
        return Err(SpanError::IllTyped(
            "cell is not defined on Cart(S) × Pyr(M)".into(),
        ));
    }
    let keep: Vec<usize> = sing_wedge_domain(m, s, &g.wedge)
        .elements()
        .iter()
        .map(|k| tau.domain.index_of(k).unwrap())
        .collect();
    let partial = tau.restrict(&keep);
    let mut report = CellReport::default();
    for d in 0..tau.len() {
        let key = *tau.domain.element(d);
        let objs = comma(&partial, m, key);
        let cocone: Vec<_> = objs
            .iter()
            .map(|&j| tau.map(keep[j], d).unwrap().clone())
            .collect();
        let cmp = partial
            .colimit_over(&objs)?
            .induced(&objs, &tau.values[d], &cocone)?;
        if !cmp.is_iso() {
            report.not_cartesian = Some(key);
            break;
        }
    }
    let v = &g.v;
    let is_v = |(x, y): (usize, usize)| v.le(x, y);
    'outer: for i in 0..tau.len() {
        for j in 0..tau.len() {
            let (a, b) = (*tau.domain.element(i), *tau.domain.element(j));
            if i != j
                && a.0 == b.0
                && is_v(a.1)
                && is_v(b.1)
                && v.le(b.1 .0, a.1 .0)
                && v.le(a.1 .1, b.1 .1)
                && !tau.map(i, j).unwrap().is_iso()
            {
                report.not_vertical = Some((a, b));
                break 'outer;
            }
        }
    }
    Ok(report)
}
