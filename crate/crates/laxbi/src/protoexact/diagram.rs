use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::check::{is_pullback, is_pushout, Square};
use super::shape::{EdgeKind, Shape};
use super::{ExactError, FinCat, FinGroup, FinGroupoid, ProtoExactCat};

/// A diagram on a [`Shape`]: an object per node and a morphism per edge.
/// A prefix diagram covers the first nodes and the edges among them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    pub obj: Vec<u32>,
    pub mor: Vec<u32>,
}

/// Natural isomorphisms are families of isomorphisms, one per node.
pub type IsoFamily = Vec<u32>;

/// `a ∘ b`, componentwise.
pub fn compose_family(cat: &FinCat, a: &[u32], b: &[u32]) -> IsoFamily {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| cat.compose(y as usize, x as usize) as u32)
        .collect()
}

pub fn inverse_family(cat: &FinCat, a: &[u32]) -> IsoFamily {
    a.iter()
        .map(|&x| cat.inverse(x as usize).expect("not an isomorphism") as u32)
        .collect()
}

pub fn identity_family(cat: &FinCat, d: &Diagram) -> IsoFamily {
    d.obj.iter().map(|&o| cat.id(o as usize) as u32).collect()
}

impl Diagram {
    pub fn empty() -> Self {
        Diagram {
            obj: Vec::new(),
            mor: Vec::new(),
        }
    }

    /// Transport along a family `g` with `g[v]: obj[v] -> ·`.
    pub fn act(&self, cat: &FinCat, shape: &Shape, g: &[u32]) -> Diagram {
        let inv = inverse_family(cat, g);
        let obj = g.iter().map(|&x| cat.tgt(x as usize) as u32).collect();
        let mor = self
            .mor
            .iter()
            .enumerate()
            .map(|(e, &f)| {
                let edge = shape.edges[e];
                cat.compose(
                    cat.compose(inv[edge.src] as usize, f as usize),
                    g[edge.tgt] as usize,
                ) as u32
            })
            .collect();
        Diagram { obj, mor }
    }

    /// The composite along a directed path from `u` to `v`.
    pub fn eval(
        &self,
        cat: &FinCat,
        shape: &Shape,
        u: usize,
        v: usize,
    ) -> Result<usize, ExactError> {
        let path = shape
            .path(u, v)
            .ok_or_else(|| ExactError::BadParams(format!("no path from node {u} to node {v}")))?;
        Ok(path.iter().fold(cat.id(self.obj[u] as usize), |acc, &e| {
            cat.compose(acc, self.mor[e] as usize)
        }))
    }

    /// Restriction along a node map `small -> big` whose edges go to paths.
    pub fn restrict(
        &self,
        cat: &FinCat,
        big: &Shape,
        small: &Shape,
        map: &[usize],
    ) -> Result<Diagram, ExactError> {
        let obj = map.iter().map(|&v| self.obj[v]).collect();
        let mor = small
            .edges
            .iter()
            .map(|e| {
                self.eval(cat, big, map[e.src], map[e.tgt])
                    .map(|f| f as u32)
            })
            .collect::<Result<_, _>>()?;
        Ok(Diagram { obj, mor })
    }

    /// Checks every local exactness condition of the shape.
    pub fn is_valid(&self, x: &ProtoExactCat, shape: &Shape) -> bool {
        let c = &x.cat;
        if self.obj.len() != shape.len() || self.mor.len() != shape.edges.len() {
            return false;
        }
        let nodes_ok = (0..shape.len()).all(|v| !shape.null[v] || x.null[self.obj[v] as usize]);
        let edges_ok = shape.edges.iter().zip(&self.mor).all(|(e, &f)| {
            let f = f as usize;
            c.src(f) == self.obj[e.src] as usize
                && c.tgt(f) == self.obj[e.tgt] as usize
                && admissible(x, e.kind, f)
        });
        nodes_ok && edges_ok && shape.squares.iter().all(|s| square_ok(c, s, &self.mor))
    }
}

fn admissible(x: &ProtoExactCat, kind: EdgeKind, f: usize) -> bool {
    match kind {
        EdgeKind::Mono => x.mono[f],
        EdgeKind::Epi => x.epi[f],
    }
}

fn square_ok(c: &FinCat, s: &super::shape::ShapeSquare, mor: &[u32]) -> bool {
    let sq = Square {
        top: mor[s.top] as usize,
        left: mor[s.left] as usize,
        right: mor[s.right] as usize,
        bottom: mor[s.bottom] as usize,
    };
    sq.commutes(c) && (!s.bicartesian || (is_pullback(c, &sq) && is_pushout(c, &sq)))
}

/// The block of node `v` after transport by the partial family `g`
/// (defined on nodes `..=v`): target object, then transported edges.
fn block(
    cat: &FinCat,
    shape: &Shape,
    d: &Diagram,
    g: &[u32],
    ginv: &[u32],
    v: usize,
    out: &mut Vec<u32>,
) {
    out.clear();
    out.push(cat.tgt(g[v] as usize) as u32);
    for e in shape.edge_range(v) {
        let edge = shape.edges[e];
        out.push(cat.compose(
            cat.compose(ginv[edge.src] as usize, d.mor[e] as usize),
            g[edge.tgt] as usize,
        ) as u32);
    }
}

/// Canonical form of the prefix of `d` on its first `t` nodes: the
/// lexicographically least transport, with one transport achieving it.
pub fn canonical(cat: &FinCat, shape: &Shape, d: &Diagram, t: usize) -> (Diagram, IsoFamily) {
    let mut branches: Vec<(IsoFamily, IsoFamily)> = vec![(Vec::new(), Vec::new())];
    let mut canon = Diagram {
        obj: Vec::with_capacity(t),
        mor: Vec::with_capacity(shape.edges_before(t)),
    };
    let mut buf = Vec::new();
    let mut best: Vec<u32> = Vec::new();
    for v in 0..t {
        let mut next: Vec<(IsoFamily, IsoFamily)> = Vec::new();
        best.clear();
        for (g, ginv) in &branches {
            for iso in cat.isos_from(d.obj[v] as usize) {
                let (mut g2, mut ginv2) = (g.clone(), ginv.clone());
                g2.push(iso as u32);
                ginv2.push(cat.inverse(iso).unwrap() as u32);
                block(cat, shape, d, &g2, &ginv2, v, &mut buf);
                if next.is_empty() || buf < best {
                    best.clone_from(&buf);
                    next.clear();
                    next.push((g2, ginv2));
                } else if buf == best {
                    next.push((g2, ginv2));
                }
            }
        }
        canon.obj.push(best[0]);
        canon.mor.extend_from_slice(&best[1..]);
        branches = next;
    }
    let psi = branches.swap_remove(0).0;
    (canon, psi)
}

/// Automorphisms of a canonical diagram, identity first.
pub fn automorphisms(cat: &FinCat, shape: &Shape, d: &Diagram) -> Vec<IsoFamily> {
    let mut branches: Vec<(IsoFamily, IsoFamily)> = vec![(Vec::new(), Vec::new())];
    let mut buf = Vec::new();
    for v in 0..d.obj.len() {
        let o = d.obj[v] as usize;
        let want: Vec<u32> = std::iter::once(d.obj[v])
            .chain(shape.edge_range(v).map(|e| d.mor[e]))
            .collect();
        let mut next = Vec::new();
        for (g, ginv) in &branches {
            for iso in cat.hom(o, o).filter(|&f| cat.is_iso(f)) {
                let (mut g2, mut ginv2) = (g.clone(), ginv.clone());
                g2.push(iso as u32);
                ginv2.push(cat.inverse(iso).unwrap() as u32);
                block(cat, shape, d, &g2, &ginv2, v, &mut buf);
                if buf == want {
                    next.push((g2, ginv2));
                }
            }
        }
        branches = next;
    }
    let id = identity_family(cat, d);
    let mut auts: Vec<IsoFamily> = branches
        .into_iter()
        .map(|(g, _)| g)
        .filter(|g| *g != id)
        .collect();
    auts.sort();
    auts.insert(0, id);
    auts
}

/// Enumeration limits; exceeding them is an error, never a truncation.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Maximum number of iso classes of prefix diagrams at any stage.
    pub max_classes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_classes: 200_000,
        }
    }
}

/// The skeletal groupoid of valid diagrams on a shape: canonical
/// representatives, their automorphism families and group tables.
#[derive(Clone, Debug)]
pub struct DiagramGroupoid {
    pub shape: Arc<Shape>,
    pub reps: Vec<Diagram>,
    pub auts: Vec<Vec<IsoFamily>>,
    pub groupoid: FinGroupoid,
    aut_index: Vec<HashMap<IsoFamily, usize>>,
    index: HashMap<Diagram, usize>,
}

impl DiagramGroupoid {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// The class of a valid diagram and a transport onto its representative.
    pub fn classify(&self, cat: &FinCat, d: &Diagram) -> Result<(usize, IsoFamily), ExactError> {
        let (c, psi) = canonical(cat, &self.shape, d, self.shape.len());
        match self.index.get(&c) {
            Some(&i) => Ok((i, psi)),
            None => Err(ExactError::Missing(format!(
                "diagram with objects {:?} is outside the enumerated classes",
                d.obj
            ))),
        }
    }

    pub fn aut_element(&self, class: usize, g: &[u32]) -> Result<usize, ExactError> {
        self.aut_index[class].get(g).copied().ok_or_else(|| {
            ExactError::Missing(format!(
                "family {g:?} is not an automorphism of class {class}"
            ))
        })
    }
}

/// Enumerates all valid diagrams on `shape` up to isomorphism, node by node
/// over canonical prefixes. `prefix_ok` may prune prefixes by their objects.
pub fn enumerate_diagrams(
    x: &ProtoExactCat,
    shape: Arc<Shape>,
    budget: Budget,
    prefix_ok: Option<&dyn Fn(&[u32]) -> bool>,
) -> Result<DiagramGroupoid, ExactError> {
    let c = &x.cat;
    let mut states: BTreeSet<Diagram> = BTreeSet::from([Diagram::empty()]);
    for v in 0..shape.len() {
        let mut next = BTreeSet::new();
        for p in &states {
            let mut found = false;
            for o in 0..c.objects() {
                if (shape.null[v] && !x.null[o]) || (found && shape.is_determined(v)) {
                    continue;
                }
                let mut d = p.clone();
                d.obj.push(o as u32);
                if let Some(ok) = prefix_ok {
                    if !ok(&d.obj) {
                        continue;
                    }
                }
                let mut sols = Vec::new();
                extend(
                    x,
                    &shape,
                    &mut d,
                    shape.edge_range(v).start,
                    shape.edge_range(v).end,
                    shape.is_determined(v),
                    &mut sols,
                );
                for s in sols {
                    found = true;
                    next.insert(canonical(c, &shape, &s, v + 1).0);
                    if next.len() > budget.max_classes {
                        return Err(ExactError::TooLarge {
                            what: "diagram classes".into(),
                            limit: budget.max_classes,
                        });
                    }
                }
            }
        }
        states = next;
    }
    Ok(build_groupoid(c, shape, states.into_iter().collect()))
}

fn extend(
    x: &ProtoExactCat,
    shape: &Shape,
    d: &mut Diagram,
    e: usize,
    end: usize,
    first_only: bool,
    out: &mut Vec<Diagram>,
) {
    if e == end {
        out.push(d.clone());
        return;
    }
    let c = &x.cat;
    let edge = shape.edges[e];
    for f in c.hom(d.obj[edge.src] as usize, d.obj[edge.tgt] as usize) {
        if !admissible(x, edge.kind, f) {
            continue;
        }
        d.mor.push(f as u32);
        if shape
            .squares_completed_by(e)
            .iter()
            .all(|&s| square_ok(c, &shape.squares[s], &d.mor))
        {
            extend(x, shape, d, e + 1, end, first_only, out);
        }
        d.mor.pop();
        if first_only && !out.is_empty() {
            return;
        }
    }
}

fn build_groupoid(c: &FinCat, shape: Arc<Shape>, reps: Vec<Diagram>) -> DiagramGroupoid {
    let mut auts = Vec::new();
    let mut aut_index = Vec::new();
    let mut classes = Vec::new();
    let mut labels = Vec::new();
    for d in &reps {
        let elems = automorphisms(c, &shape, d);
        let (g, elems) = FinGroup::from_elements(elems, |a, b| compose_family(c, a, b));
        aut_index.push(
            elems
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, e)| (e, i))
                .collect(),
        );
        auts.push(elems);
        classes.push(g);
        labels.push(
            (0..shape.len())
                .filter(|&v| !shape.null[v])
                .map(|v| format!("{}={}", shape.label(v), c.name(d.obj[v] as usize)))
                .collect::<Vec<_>>()
                .join(" "),
        );
    }
    let index = reps
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, d)| (d, i))
        .collect();
    DiagramGroupoid {
        shape,
        reps,
        auts,
        groupoid: FinGroupoid::new(classes, labels),
        aut_index,
        index,
    }
}
