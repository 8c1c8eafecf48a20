use std::collections::HashMap;

use super::AlgError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `[a;b] -> [a+1;b]`
    Left,
    /// `[a;b] -> [a;b-1]`
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PyrEdge {
    pub src: usize,
    pub tgt: usize,
    pub side: Side,
}

/// A path in the free category: a source object and a list of edge indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PyrPath {
    pub src: usize,
    pub tgt: usize,
    pub edges: Vec<usize>,
}

/// The free category on subintervals of `[n]` with left/right shrinking edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PyrNC {
    pub n: usize,
    pub objects: Vec<(usize, usize)>,
    pub edges: Vec<PyrEdge>,
    index: HashMap<(usize, usize), usize>,
}

impl PyrNC {
    pub fn new(n: usize) -> Self {
        let mut objects = Vec::new();
        for len in (0..=n).rev() {
            for a in 0..=n - len {
                objects.push((a, a + len));
            }
        }
        let index: HashMap<(usize, usize), usize> =
            objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let mut edges = Vec::new();
        for (i, &(a, b)) in objects.iter().enumerate() {
            if a < b {
                edges.push(PyrEdge {
                    src: i,
                    tgt: index[&(a + 1, b)],
                    side: Side::Left,
                });
                edges.push(PyrEdge {
                    src: i,
                    tgt: index[&(a, b - 1)],
                    side: Side::Right,
                });
            }
        }
        PyrNC {
            n,
            objects,
            edges,
            index,
        }
    }

    pub fn object(&self, a: usize, b: usize) -> usize {
        self.index[&(a, b)]
    }

    pub fn edge(&self, src: usize, side: Side) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| e.src == src && e.side == side)
    }

    pub fn identity(&self, o: usize) -> PyrPath {
        PyrPath {
            src: o,
            tgt: o,
            edges: Vec::new(),
        }
    }

    /// Left moves `[a;b] -> [a2;b]`.
    pub fn left_path(&self, a: usize, a2: usize, b: usize) -> PyrPath {
        let edges = (a..a2)
            .map(|t| self.edge(self.object(t, b), Side::Left).unwrap())
            .collect();
        PyrPath {
            src: self.object(a, b),
            tgt: self.object(a2, b),
            edges,
        }
    }

    /// Right moves `[a;b] -> [a;b2]`.
    pub fn right_path(&self, a: usize, b: usize, b2: usize) -> PyrPath {
        let edges = (b2 + 1..=b)
            .rev()
            .map(|t| self.edge(self.object(a, t), Side::Right).unwrap())
            .collect();
        PyrPath {
            src: self.object(a, b),
            tgt: self.object(a, b2),
            edges,
        }
    }

    pub fn concat(&self, p: &PyrPath, q: &PyrPath) -> PyrPath {
        assert_eq!(p.tgt, q.src, "paths are not composable");
        PyrPath {
            src: p.src,
            tgt: q.tgt,
            edges: p.edges.iter().chain(&q.edges).copied().collect(),
        }
    }

    /// All paths between two objects.
    pub fn paths_between(&self, s: usize, t: usize) -> Vec<PyrPath> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.paths_rec(s, s, t, &mut cur, &mut out);
        out
    }

    fn paths_rec(
        &self,
        s: usize,
        at: usize,
        t: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<PyrPath>,
    ) {
        if at == t {
            out.push(PyrPath {
                src: s,
                tgt: t,
                edges: cur.clone(),
            });
            return;
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.src == at {
                cur.push(i);
                self.paths_rec(s, e.tgt, t, cur, out);
                cur.pop();
            }
        }
    }
}

/// The functor `Pyr^nc(φ): Pyr^nc(n) -> Pyr^nc(m)` for monotone `φ: [n] -> [m]`.
#[derive(Clone, Debug)]
pub struct PyrNCFunctor {
    pub source: PyrNC,
    pub target: PyrNC,
    pub on_objects: Vec<usize>,
    pub on_edges: Vec<PyrPath>,
}

pub fn pyrnc_map(phi: &[usize], m: usize) -> Result<PyrNCFunctor, AlgError> {
    if !crate::simpcore::delta::is_monotone(phi, m) {
        return Err(AlgError::NonMonotone(phi.to_vec()));
    }
    let source = PyrNC::new(phi.len() - 1);
    let target = PyrNC::new(m);
    let on_objects = source
        .objects
        .iter()
        .map(|&(a, b)| target.object(phi[a], phi[b]))
        .collect();
    let on_edges = source
        .edges
        .iter()
        .map(|e| {
            let (a, b) = source.objects[e.src];
            match e.side {
                Side::Left => target.left_path(phi[a], phi[a + 1], phi[b]),
                Side::Right => target.right_path(phi[a], phi[b], phi[b - 1]),
            }
        })
        .collect();
    Ok(PyrNCFunctor {
        source,
        target,
        on_objects,
        on_edges,
    })
}

impl PyrNCFunctor {
    pub fn on_path(&self, p: &PyrPath) -> PyrPath {
        let mut out = self.target.identity(self.on_objects[p.src]);
        for &e in &p.edges {
            out = self.target.concat(&out, &self.on_edges[e]);
        }
        out
    }
}
