use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use super::ExactError;

/// A finite group by multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinGroup {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl FinGroup {
    pub fn trivial() -> Self {
        FinGroup {
            n: 1,
            mul: vec![0],
            inv: vec![0],
        }
    }

    pub fn cyclic(n: usize) -> Self {
        FinGroup::from_table(
            (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
        )
        .unwrap()
    }

    /// `table[a][b] = a·b`.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, ExactError> {
        let n = table.len();
        let bad = |m: &str| Err(ExactError::BadParams(format!("not a group: {m}")));
        if n == 0
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return bad("table shape");
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return bad("element 0 is not the identity");
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
                Some(b) => inv[a] = b as u32,
                None => return bad("missing inverse"),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad("not associative");
                    }
                }
            }
        }
        Ok(FinGroup {
            n,
            mul: table.into_iter().flatten().map(|x| x as u32).collect(),
            inv,
        })
    }

    /// The group generated by closing `elements` (containing the identity
    /// first) under `compose`; returns the group and the element list.
    pub fn from_elements<T: Clone + Eq + Hash>(
        elements: Vec<T>,
        compose: impl Fn(&T, &T) -> T,
    ) -> (Self, Vec<T>) {
        let index: HashMap<T, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let n = elements.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                mul.push(index[&compose(a, b)] as u32);
            }
        }
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| mul[a * n + b] == 0).unwrap() as u32)
            .collect();
        (FinGroup { n, mul, inv }, elements)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn is_hom(&self, target: &FinGroup, map: &[usize]) -> bool {
        map.len() == self.n
            && map.iter().all(|&x| x < target.n)
            && (0..self.n)
                .all(|a| (0..self.n).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }
}

/// A skeletal finite groupoid: one automorphism group per iso class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroupoid {
    pub classes: Vec<FinGroup>,
    pub labels: Vec<String>,
}

impl FinGroupoid {
    pub fn new(classes: Vec<FinGroup>, labels: Vec<String>) -> Self {
        FinGroupoid { classes, labels }
    }

    pub fn discrete(n: usize) -> Self {
        FinGroupoid {
            classes: vec![FinGroup::trivial(); n],
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    /// One object with automorphism group `g`.
    pub fn delooping(g: FinGroup) -> Self {
        FinGroupoid {
            classes: vec![g],
            labels: vec!["*".into()],
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn aut(&self, c: usize) -> &FinGroup {
        &self.classes[c]
    }

    pub fn disjoint_union(&self, other: &FinGroupoid) -> FinGroupoid {
        FinGroupoid {
            classes: self.classes.iter().chain(&other.classes).cloned().collect(),
            labels: self.labels.iter().chain(&other.labels).cloned().collect(),
        }
    }

    /// Sorted automorphism group orders, one per class.
    pub fn aut_orders(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.classes.iter().map(FinGroup::order).collect();
        v.sort_unstable();
        v
    }

    /// Dump: one line per iso class with its automorphism group order.
    pub fn dump(&self) -> String {
        let mut s = format!("groupoid classes={}\n", self.len());
        for (i, (g, l)) in self.classes.iter().zip(&self.labels).enumerate() {
            s += &format!("class {i} aut={} {l}\n", g.order());
        }
        s
    }

    /// Parses the output of [`FinGroupoid::dump`] as a groupoid with cyclic
    /// automorphism groups of the recorded orders (enough for counting).
    pub fn parse_dump(text: &str) -> Result<FinGroupoid, ExactError> {
        let err = |line: usize, msg: &str| ExactError::Parse {
            line,
            msg: msg.into(),
        };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.starts_with('#'));
        let n: usize = lines
            .next()
            .and_then(|(_, l)| l.strip_prefix("groupoid classes="))
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| err(1, "expected 'groupoid classes=N'"))?;
        let mut classes = Vec::new();
        let mut labels = Vec::new();
        for (i, l) in lines.take(n) {
            let mut t = l.splitn(4, ' ');
            let (Some("class"), Some(_), Some(a)) = (t.next(), t.next(), t.next()) else {
                return Err(err(i + 1, "expected class line"));
            };
            let order: usize = a
                .strip_prefix("aut=")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| err(i + 1, "bad aut"))?;
            classes.push(FinGroup::cyclic(order.max(1)));
            labels.push(t.next().unwrap_or("").to_string());
        }
        if classes.len() != n {
            return Err(err(n + 1, "missing class lines"));
        }
        Ok(FinGroupoid { classes, labels })
    }
}

impl fmt::Display for FinGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.dump().trim_end())
    }
}

/// A functor between skeletal groupoids: a map on classes and, per class,
/// a homomorphism of automorphism groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidFunctor {
    pub on_class: Vec<usize>,
    pub on_aut: Vec<Vec<usize>>,
}

impl GroupoidFunctor {
    pub fn identity(g: &FinGroupoid) -> Self {
        GroupoidFunctor {
            on_class: (0..g.len()).collect(),
            on_aut: g.classes.iter().map(|a| (0..a.order()).collect()).collect(),
        }
    }

    pub fn validate(&self, source: &FinGroupoid, target: &FinGroupoid) -> Result<(), ExactError> {
        if self.on_class.len() != source.len() || self.on_aut.len() != source.len() {
            return Err(ExactError::BadParams(
                "functor has the wrong number of classes".into(),
            ));
        }
        for (c, &d) in self.on_class.iter().enumerate() {
            if d >= target.len() || !source.aut(c).is_hom(target.aut(d), &self.on_aut[c]) {
                return Err(ExactError::BadParams(format!(
                    "functor is not a homomorphism at class {c}"
                )));
            }
        }
        Ok(())
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &GroupoidFunctor) -> GroupoidFunctor {
        GroupoidFunctor {
            on_class: self.on_class.iter().map(|&d| g.on_class[d]).collect(),
            on_aut: self
                .on_aut
                .iter()
                .zip(&self.on_class)
                .map(|(h, &d)| h.iter().map(|&a| g.on_aut[d][a]).collect())
                .collect(),
        }
    }

    /// Conjugates each automorphism map by `theta[c] ∈ Aut(F c)`:
    /// `a ↦ θ F(a) θ⁻¹`. Naturally isomorphic skeletal functors differ by
    /// such a conjugation.
    pub fn conjugate(&self, target: &FinGroupoid, theta: &[usize]) -> GroupoidFunctor {
        let on_aut = self
            .on_aut
            .iter()
            .zip(&self.on_class)
            .zip(theta)
            .map(|((h, &d), &t)| {
                let g = target.aut(d);
                h.iter().map(|&a| g.mul(g.mul(t, a), g.inv(t))).collect()
            })
            .collect();
        GroupoidFunctor {
            on_class: self.on_class.clone(),
            on_aut,
        }
    }
}
