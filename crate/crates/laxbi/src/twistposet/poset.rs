use std::collections::HashMap;
use std::fmt::{self, Debug, Write};
use std::hash::Hash;

use super::PosetError;

/// A finite poset with an explicit order table.
#[derive(Clone)]
pub struct FinPoset<T> {
    elements: Vec<T>,
    leq: Vec<Vec<bool>>,
    index: HashMap<T, usize>,
}

impl<T: Clone + Eq + Hash + Debug> FinPoset<T> {
    /// Builds the poset and checks reflexivity, antisymmetry and transitivity.
    pub fn new(elements: Vec<T>, le: impl Fn(&T, &T) -> bool) -> Result<Self, PosetError> {
        let leq: Vec<Vec<bool>> = elements
            .iter()
            .map(|x| elements.iter().map(|y| le(x, y)).collect())
            .collect();
        let p = Self::from_table(elements, leq);
        p.check()?;
        Ok(p)
    }

    pub(crate) fn from_table(elements: Vec<T>, leq: Vec<Vec<bool>>) -> Self {
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, x)| (x, i))
            .collect();
        FinPoset {
            elements,
            leq,
            index,
        }
    }

    pub fn check(&self) -> Result<(), PosetError> {
        let n = self.len();
        if self.index.len() != n {
            return Err(PosetError::NotPartialOrder("repeated element".into()));
        }
        for i in 0..n {
            if !self.leq[i][i] {
                return Err(PosetError::NotPartialOrder(format!(
                    "{:?} is not reflexive",
                    self.elements[i]
                )));
            }
            for j in 0..n {
                if i != j && self.leq[i][j] && self.leq[j][i] {
                    return Err(PosetError::NotPartialOrder(format!(
                        "{:?} and {:?} violate antisymmetry",
                        self.elements[i], self.elements[j]
                    )));
                }
                if self.leq[i][j] && (0..n).any(|l| self.leq[j][l] && !self.leq[i][l]) {
                    return Err(PosetError::NotPartialOrder("not transitive".into()));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn le_elem(&self, x: &T, y: &T) -> bool {
        self.leq[self.index[x]][self.index[y]]
    }

    /// Covering pairs `i ⋖ j`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j
                    && self.leq[i][j]
                    && !(0..n).any(|l| l != i && l != j && self.leq[i][l] && self.leq[l][j])
                {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Sub-poset on the given elements (by index), in the given order.
    pub fn subposet(&self, keep: &[usize]) -> FinPoset<T> {
        let elements = keep.iter().map(|&i| self.elements[i].clone()).collect();
        let leq = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.leq[i][j]).collect())
            .collect();
        FinPoset::from_table(elements, leq)
    }

    pub fn is_up_closed(&self, set: &[bool]) -> bool {
        (0..self.len()).all(|i| !set[i] || (0..self.len()).all(|j| !self.leq[i][j] || set[j]))
    }

    pub fn up_closure(&self, set: &[bool]) -> Vec<bool> {
        (0..self.len())
            .map(|j| (0..self.len()).any(|i| set[i] && self.leq[i][j]))
            .collect()
    }

    pub fn is_monotone_map<U: Clone + Eq + Hash + Debug>(
        &self,
        target: &FinPoset<U>,
        map: &[usize],
    ) -> bool {
        map.len() == self.len()
            && (0..self.len())
                .all(|i| (0..self.len()).all(|j| !self.leq[i][j] || target.le(map[i], map[j])))
    }

    /// Poset isomorphism by backtracking, if any.
    pub fn find_iso<U: Clone + Eq + Hash + Debug>(
        &self,
        other: &FinPoset<U>,
    ) -> Option<Vec<usize>> {
        if self.len() != other.len() {
            return None;
        }
        let deg = |leq: &Vec<Vec<bool>>, i: usize| {
            (
                leq[i].iter().filter(|&&b| b).count(),
                leq.iter().filter(|r| r[i]).count(),
            )
        };
        let mut map = vec![usize::MAX; self.len()];
        let mut used = vec![false; self.len()];
        fn go<T, U>(
            a: &FinPoset<T>,
            b: &FinPoset<U>,
            i: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            deg: &dyn Fn(&Vec<Vec<bool>>, usize) -> (usize, usize),
        ) -> bool {
            if i == a.elements.len() {
                return true;
            }
            for c in 0..b.elements.len() {
                if used[c] || deg(&a.leq, i) != deg(&b.leq, c) {
                    continue;
                }
                if (0..i)
                    .all(|j| a.leq[i][j] == b.leq[c][map[j]] && a.leq[j][i] == b.leq[map[j]][c])
                {
                    map[i] = c;
                    used[c] = true;
                    if go(a, b, i + 1, map, used, deg) {
                        return true;
                    }
                    used[c] = false;
                }
            }
            false
        }
        go(self, other, 0, &mut map, &mut used, &deg).then_some(map)
    }

    /// Elements and covering relation, one per line.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        writeln!(s, "poset elements={}", self.len()).unwrap();
        for (i, x) in self.elements.iter().enumerate() {
            writeln!(s, "elem {i} {x:?}").unwrap();
        }
        for (i, j) in self.covers() {
            writeln!(s, "cover {i} {j}").unwrap();
        }
        s
    }
}

impl<T: PartialEq> PartialEq for FinPoset<T> {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.leq == other.leq
    }
}

impl<T: Eq> Eq for FinPoset<T> {}

impl<T: Debug> Debug for FinPoset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinPoset")
            .field("elements", &self.elements)
            .finish()
    }
}

/// The chain `[n]`.
pub fn chain(n: usize) -> FinPoset<usize> {
    FinPoset::from_table(
        (0..=n).collect(),
        (0..=n).map(|i| (0..=n).map(|j| i <= j).collect()).collect(),
    )
}

pub fn product<T, U>(p: &FinPoset<T>, q: &FinPoset<U>) -> FinPoset<(T, U)>
where
    T: Clone + Eq + Hash + Debug,
    U: Clone + Eq + Hash + Debug,
{
    let mut elements = Vec::new();
    let mut idx = Vec::new();
    for (i, x) in p.elements.iter().enumerate() {
        for (j, y) in q.elements.iter().enumerate() {
            elements.push((x.clone(), y.clone()));
            idx.push((i, j));
        }
    }
    let leq = idx
        .iter()
        .map(|&(i, j)| {
            idx.iter()
                .map(|&(k, l)| p.leq[i][k] && q.leq[j][l])
                .collect()
        })
        .collect();
    FinPoset::from_table(elements, leq)
}

/// The twisted arrow poset: intervals `x ≤ y` (as index pairs), with
/// `[x;y] ≤ [x';y']` iff `[x';y'] ⊆ [x;y]`.
pub fn pyr<T: Clone + Eq + Hash + Debug>(p: &FinPoset<T>) -> FinPoset<(usize, usize)> {
    let mut elements = Vec::new();
    for x in 0..p.len() {
        for y in 0..p.len() {
            if p.leq[x][y] {
                elements.push((x, y));
            }
        }
    }
    let leq = elements
        .iter()
        .map(|&(x, y)| {
            elements
                .iter()
                .map(|&(x2, y2)| p.leq[x][x2] && p.leq[y2][y])
                .collect()
        })
        .collect();
    FinPoset::from_table(elements, leq)
}

/// Up-closed subsets ordered by reverse inclusion, with the embedding `q ↦ ↑q`.
pub struct Completion {
    pub poset: FinPoset<Vec<bool>>,
    pub up: Vec<usize>,
}

/// Enumerates the free completion; exponential, meant for small posets.
pub fn free_completion<T: Clone + Eq + Hash + Debug>(q: &FinPoset<T>) -> Completion {
    let n = q.len();
    let mut sets = Vec::new();
    let mut cur = vec![false; n];
    fn go<T: Clone + Eq + Hash + Debug>(
        q: &FinPoset<T>,
        i: usize,
        cur: &mut Vec<bool>,
        out: &mut Vec<Vec<bool>>,
    ) {
        if i == cur.len() {
            if q.is_up_closed(cur) {
                out.push(cur.clone());
            }
            return;
        }
        go(q, i + 1, cur, out);
        cur[i] = true;
        go(q, i + 1, cur, out);
        cur[i] = false;
    }
    go(q, 0, &mut cur, &mut sets);
    let leq = sets
        .iter()
        .map(|a| sets.iter().map(|b| (0..n).all(|i| !b[i] || a[i])).collect())
        .collect();
    let poset = FinPoset::from_table(sets, leq);
    let up = (0..n)
        .map(|i| {
            poset
                .index_of(&(0..n).map(|j| q.leq[i][j]).collect())
                .unwrap()
        })
        .collect();
    Completion { poset, up }
}

/// Meet and join in the completion: union and intersection of up-sets.
pub fn completion_meet(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(x, y)| *x || *y).collect()
}

pub fn completion_join(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(x, y)| *x && *y).collect()
}
