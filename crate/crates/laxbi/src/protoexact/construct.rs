use std::sync::Arc;

use super::diagram::{
    compose_family, enumerate_diagrams, inverse_family, Budget, Diagram, DiagramGroupoid, IsoFamily,
};
use super::shape::{
    arr_shape, copies_shape, green_cross, green_frame, green_grid, grid_shape, Shape,
};
use super::{ExactError, FinGroupoid, GroupoidFunctor, ProtoExactCat};

/// A simplicial object in skeletal finite groupoids, up to a top level.
///
/// `op(n, θ)` is the functor `X_n -> X_m` of a monotone `θ: [m] -> [n]`
/// (given as its list of values). Composites agree with `op` of the
/// composite on classes, and on automorphisms up to the natural isomorphism
/// returned by `cell`.
pub trait SimplicialGroupoid {
    fn max_level(&self) -> usize;
    fn level(&self, n: usize) -> &FinGroupoid;
    fn op(&self, n: usize, theta: &[usize]) -> Result<GroupoidFunctor, ExactError>;
    /// For `θ1: [m] -> [n]`, `θ2: [l] -> [m]` and a class `x` of `X_n`: the
    /// automorphism of `z = X(θ1θ2)x = X(θ2)X(θ1)x` comparing the two.
    fn cell(
        &self,
        n: usize,
        theta1: &[usize],
        theta2: &[usize],
        x: usize,
    ) -> Result<usize, ExactError>;
}

/// A bisimplicial object given by its rows `X_{•,k}` and columns `X_{n,•}`.
pub trait BiSimplicialGroupoid {
    fn bounds(&self) -> (usize, usize);
    fn row(&self, k: usize) -> Box<dyn SimplicialGroupoid + '_>;
    fn column(&self, n: usize) -> Box<dyn SimplicialGroupoid + '_>;
}

/// How simplicial operators act on the diagrams of each level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `Arr([n])`, restriction along `Arr(θ)`.
    Plain,
    /// `Arr([n]) × Arr([k])` with `k` fixed, acting on the first factor.
    IterRow(usize),
    /// `Arr([n]) × Arr([k])` with `n` fixed, acting on the second factor.
    IterCol(usize),
    /// `k` copies of `Arr([n])` with `k` fixed, acting on each copy.
    MonRow(usize),
    /// `k` copies of `Arr([n])` with `n` fixed; factors are merged by direct
    /// sum and dropped at the ends.
    MonCol(usize),
}

impl Family {
    pub fn shape(&self, level: usize) -> Shape {
        match *self {
            Family::Plain => arr_shape(level),
            Family::IterRow(k) => grid_shape(level, k),
            Family::IterCol(n) => grid_shape(n, level),
            Family::MonRow(k) => copies_shape(level, k),
            Family::MonCol(n) => copies_shape(n, level),
        }
    }

    fn node_map(&self, small: &Shape, big: &Shape, theta: &[usize]) -> Vec<usize> {
        small
            .coords
            .iter()
            .map(|p| {
                let q: Vec<usize> = match *self {
                    Family::Plain => vec![theta[p[0]], theta[p[1]]],
                    Family::IterRow(_) => vec![theta[p[0]], theta[p[1]], p[2], p[3]],
                    Family::IterCol(_) => vec![p[0], p[1], theta[p[2]], theta[p[3]]],
                    Family::MonRow(_) => vec![p[0], theta[p[1]], theta[p[2]]],
                    Family::MonCol(_) => unreachable!(),
                };
                big.node(&q).expect("operator leaves the shape")
            })
            .collect()
    }

    /// Copies of the source merged into factor `j` of `θ^*`: those `l` with
    /// `θ(j) < l ≤ θ(j+1)` (copies numbered from 0).
    fn blocks(theta: &[usize]) -> Vec<std::ops::Range<usize>> {
        theta.windows(2).map(|w| w[0]..w[1]).collect()
    }
}

/// A simplicial groupoid of exact diagrams with enumerated levels.
#[derive(Clone, Debug)]
pub struct DiagramSimplicial {
    pub cat: Arc<ProtoExactCat>,
    pub family: Family,
    pub levels: Vec<Arc<DiagramGroupoid>>,
}

impl DiagramSimplicial {
    pub fn build(
        cat: Arc<ProtoExactCat>,
        family: Family,
        top: usize,
        budget: Budget,
    ) -> Result<Self, ExactError> {
        let levels = (0..=top)
            .map(|n| level_groupoid(&cat, family, n, budget).map(Arc::new))
            .collect::<Result<_, _>>()?;
        Ok(DiagramSimplicial {
            cat,
            family,
            levels,
        })
    }

    fn check(&self, n: usize, theta: &[usize]) -> Result<usize, ExactError> {
        let m = theta
            .len()
            .checked_sub(1)
            .ok_or_else(|| ExactError::BadParams("empty operator".into()))?;
        if n >= self.levels.len() || m >= self.levels.len() {
            return Err(ExactError::Missing(format!(
                "level {} not built (top {})",
                n.max(m),
                self.levels.len() - 1
            )));
        }
        if theta.windows(2).any(|w| w[0] > w[1]) || theta.iter().any(|&t| t > n) {
            return Err(ExactError::BadParams(format!(
                "{theta:?} is not a monotone map into [{n}]"
            )));
        }
        Ok(m)
    }

    /// `θ^* d` for a diagram at level `n`.
    pub fn apply(&self, n: usize, theta: &[usize], d: &Diagram) -> Result<Diagram, ExactError> {
        let m = self.check(n, theta)?;
        let (big, small) = (&self.levels[n].shape, &self.levels[m].shape);
        let c = &self.cat.cat;
        match self.family {
            Family::MonCol(pn_level) => {
                let v = self.cat.vect.as_ref().ok_or_else(|| {
                    ExactError::Unsupported("direct sums need the vect fixture".into())
                })?;
                let per = arr_shape(pn_level);
                let pn = per.len();
                let edge_in = |shape: &Shape, copy: usize, e: usize| {
                    let pe = per.edges[e];
                    shape
                        .edges
                        .iter()
                        .position(|x| x.src == copy * pn + pe.src && x.tgt == copy * pn + pe.tgt)
                        .unwrap()
                };
                let mut obj = Vec::with_capacity(small.len());
                let mut mor = vec![0u32; small.edges.len()];
                for (j, b) in Family::blocks(theta).into_iter().enumerate() {
                    for u in 0..pn {
                        obj.push(b.clone().map(|l| d.obj[l * pn + u]).sum::<u32>());
                    }
                    for e in 0..per.edges.len() {
                        let fs: Vec<usize> = b
                            .clone()
                            .map(|l| d.mor[edge_in(big, l, e)] as usize)
                            .collect();
                        mor[edge_in(small, j, e)] = v.direct_sum(c, &fs) as u32;
                    }
                }
                Ok(Diagram { obj, mor })
            }
            _ => d.restrict(c, big, small, &self.family.node_map(small, big, theta)),
        }
    }

    /// `θ^*` on a family of isomorphisms of a diagram at level `n`.
    pub fn apply_iso(&self, n: usize, theta: &[usize], g: &[u32]) -> Result<IsoFamily, ExactError> {
        let m = self.check(n, theta)?;
        let (big, small) = (&self.levels[n].shape, &self.levels[m].shape);
        match self.family {
            Family::MonCol(pn_level) => {
                let v = self.cat.vect.as_ref().ok_or_else(|| {
                    ExactError::Unsupported("direct sums need the vect fixture".into())
                })?;
                let pn = arr_shape(pn_level).len();
                let mut out = Vec::with_capacity(small.len());
                for b in Family::blocks(theta) {
                    for u in 0..pn {
                        let fs: Vec<usize> = b.clone().map(|l| g[l * pn + u] as usize).collect();
                        out.push(v.direct_sum(&self.cat.cat, &fs) as u32);
                    }
                }
                Ok(out)
            }
            _ => Ok(self
                .family
                .node_map(small, big, theta)
                .iter()
                .map(|&v| g[v])
                .collect()),
        }
    }

    /// Class of `θ^* x` and the transport onto its representative.
    pub fn transport(
        &self,
        n: usize,
        theta: &[usize],
        x: usize,
    ) -> Result<(usize, IsoFamily), ExactError> {
        let m = self.check(n, theta)?;
        let d = self.apply(n, theta, &self.levels[n].reps[x])?;
        self.levels[m].classify(&self.cat.cat, &d)
    }
}

fn level_groupoid(
    cat: &ProtoExactCat,
    family: Family,
    level: usize,
    budget: Budget,
) -> Result<DiagramGroupoid, ExactError> {
    let shape = Arc::new(family.shape(level));
    match family {
        Family::MonRow(_) | Family::MonCol(_) => {
            let v = cat.vect.as_ref().ok_or_else(|| {
                ExactError::Unsupported("the monoidal construction needs the vect fixture".into())
            })?;
            let dmax = v.dmax as u32;
            // The corner (0, n) of each copy; their dimensions add up to at most dmax.
            let corners: Vec<usize> = (0..shape.len())
                .filter(|&u| {
                    shape.coords[u][1] == 0
                        && shape.coords[u][2] == shape.coords.iter().map(|p| p[2]).max().unwrap()
                })
                .collect();
            let ok = move |objs: &[u32]| {
                corners
                    .iter()
                    .filter(|&&u| u < objs.len())
                    .map(|&u| objs[u])
                    .sum::<u32>()
                    <= dmax
            };
            enumerate_diagrams(cat, shape, budget, Some(&ok))
        }
        _ => enumerate_diagrams(cat, shape, budget, None),
    }
}

impl SimplicialGroupoid for DiagramSimplicial {
    fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    fn level(&self, n: usize) -> &FinGroupoid {
        &self.levels[n].groupoid
    }

    fn op(&self, n: usize, theta: &[usize]) -> Result<GroupoidFunctor, ExactError> {
        let m = self.check(n, theta)?;
        let c = &self.cat.cat;
        let (src, tgt) = (&self.levels[n], &self.levels[m]);
        let mut on_class = Vec::new();
        let mut on_aut = Vec::new();
        for x in 0..src.len() {
            let (y, psi) = self.transport(n, theta, x)?;
            let psi_inv = inverse_family(c, &psi);
            let mut h = Vec::new();
            for a in &src.auts[x] {
                let moved = self.apply_iso(n, theta, a)?;
                h.push(tgt.aut_element(
                    y,
                    &compose_family(c, &compose_family(c, &psi, &moved), &psi_inv),
                )?);
            }
            on_class.push(y);
            on_aut.push(h);
        }
        Ok(GroupoidFunctor { on_class, on_aut })
    }

    fn cell(
        &self,
        n: usize,
        theta1: &[usize],
        theta2: &[usize],
        x: usize,
    ) -> Result<usize, ExactError> {
        let m = self.check(n, theta1)?;
        self.check(m, theta2)?;
        let c = &self.cat.cat;
        let theta: Vec<usize> = theta2.iter().map(|&i| theta1[i]).collect();
        let l = theta.len() - 1;
        let (z, psi) = self.transport(n, &theta, x)?;
        let (y, psi1) = self.transport(n, theta1, x)?;
        let (z2, psi2) = self.transport(m, theta2, y)?;
        if z != z2 {
            return Err(ExactError::Missing(format!(
                "operators do not compose on class {x}"
            )));
        }
        let moved = self.apply_iso(m, theta2, &psi1)?;
        let g = compose_family(
            c,
            &compose_family(c, &psi2, &moved),
            &inverse_family(c, &psi),
        );
        self.levels[l].aut_element(z, &g)
    }
}

/// `S_n(A)`: exact diagrams `Arr([n]) -> A` up to isomorphism.
pub fn s_groupoid(
    a: &ProtoExactCat,
    n: usize,
    budget: Budget,
) -> Result<DiagramGroupoid, ExactError> {
    enumerate_diagrams(a, Arc::new(arr_shape(n)), budget, None)
}

/// The simplicial groupoid `S_•(A)` up to level `top`.
pub fn s_construction(
    a: Arc<ProtoExactCat>,
    top: usize,
    budget: Budget,
) -> Result<DiagramSimplicial, ExactError> {
    DiagramSimplicial::build(a, Family::Plain, top, budget)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SMode {
    /// Exact diagrams on `Arr([n]) × Arr([k])`.
    Iterated,
    /// Exact diagrams `Arr([n]) -> A^k` for the direct-sum monoid on vect,
    /// with total corner dimension bounded by the fixture.
    Monoidal,
}

pub fn s2_groupoid(
    a: &ProtoExactCat,
    n: usize,
    k: usize,
    mode: SMode,
    budget: Budget,
) -> Result<DiagramGroupoid, ExactError> {
    let family = match mode {
        SMode::Iterated => Family::IterRow(k),
        SMode::Monoidal => Family::MonRow(k),
    };
    level_groupoid(a, family, n, budget)
}

/// The bisimplicial groupoid of the iterated or monoidal construction on
/// `n ≤ nmax`, `k ≤ kmax`.
#[derive(Clone, Debug)]
pub struct SBisimplicial {
    pub cat: Arc<ProtoExactCat>,
    pub mode: SMode,
    /// `grid[n][k]`.
    pub grid: Vec<Vec<Arc<DiagramGroupoid>>>,
}

impl SBisimplicial {
    pub fn build(
        a: Arc<ProtoExactCat>,
        mode: SMode,
        nmax: usize,
        kmax: usize,
        budget: Budget,
    ) -> Result<Self, ExactError> {
        let grid = (0..=nmax)
            .map(|n| {
                (0..=kmax)
                    .map(|k| s2_groupoid(&a, n, k, mode, budget).map(Arc::new))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        Ok(SBisimplicial { cat: a, mode, grid })
    }

    pub fn row_simplicial(&self, k: usize) -> DiagramSimplicial {
        let family = match self.mode {
            SMode::Iterated => Family::IterRow(k),
            SMode::Monoidal => Family::MonRow(k),
        };
        DiagramSimplicial {
            cat: self.cat.clone(),
            family,
            levels: self.grid.iter().map(|r| r[k].clone()).collect(),
        }
    }

    pub fn column_simplicial(&self, n: usize) -> DiagramSimplicial {
        let family = match self.mode {
            SMode::Iterated => Family::IterCol(n),
            SMode::Monoidal => Family::MonCol(n),
        };
        DiagramSimplicial {
            cat: self.cat.clone(),
            family,
            levels: self.grid[n].clone(),
        }
    }
}

impl BiSimplicialGroupoid for SBisimplicial {
    fn bounds(&self) -> (usize, usize) {
        (self.grid.len() - 1, self.grid[0].len() - 1)
    }

    fn row(&self, k: usize) -> Box<dyn SimplicialGroupoid + '_> {
        Box::new(self.row_simplicial(k))
    }

    fn column(&self, n: usize) -> Box<dyn SimplicialGroupoid + '_> {
        Box::new(self.column_simplicial(n))
    }
}

/// The skeletal core of `A`, with automorphism groups of objects.
pub fn core_groupoid(a: &ProtoExactCat) -> FinGroupoid {
    let c = &a.cat;
    let classes = a
        .object_classes()
        .iter()
        .map(|cl| {
            let o = cl[0];
            let mut elems: Vec<usize> = c
                .hom(o, o)
                .filter(|&f| c.is_iso(f) && f != c.id(o))
                .collect();
            elems.insert(0, c.id(o));
            super::FinGroup::from_elements(elems, |&x, &y| c.compose(y, x)).0
        })
        .collect();
    let labels = a
        .object_classes()
        .iter()
        .map(|cl| c.name(cl[0]).to_string())
        .collect();
    FinGroupoid::new(classes, labels)
}

/// The functor `S_1(A) -> core(A)` picking the object `01`.
pub fn s1_to_core(a: &ProtoExactCat, s1: &DiagramGroupoid) -> Result<GroupoidFunctor, ExactError> {
    let c = &a.cat;
    let classes = a.object_classes();
    let core = core_groupoid(a);
    let v = s1
        .shape
        .node(&[0, 1])
        .ok_or_else(|| ExactError::BadParams("not an S_1 groupoid".into()))?;
    let mut on_class = Vec::new();
    let mut on_aut = Vec::new();
    for (x, d) in s1.reps.iter().enumerate() {
        let o = d.obj[v] as usize;
        let k = classes.iter().position(|cl| cl.contains(&o)).unwrap();
        let rep = classes[k][0];
        // Transport Aut(o) onto Aut(rep) along a fixed isomorphism.
        let t = c.hom(o, rep).find(|&f| c.is_iso(f)).unwrap();
        let ti = c.inverse(t).unwrap();
        let mut elems: Vec<usize> = c
            .hom(rep, rep)
            .filter(|&f| c.is_iso(f) && f != c.id(rep))
            .collect();
        elems.insert(0, c.id(rep));
        on_class.push(k);
        on_aut.push(
            s1.auts[x]
                .iter()
                .map(|g| {
                    let h = c.compose(c.compose(ti, g[v] as usize), t);
                    elems.iter().position(|&e| e == h).unwrap()
                })
                .collect(),
        );
        debug_assert_eq!(core.aut(k).order(), elems.len());
    }
    Ok(GroupoidFunctor { on_class, on_aut })
}

/// The functor between diagram groupoids induced by restriction along a
/// node map `small -> big`.
pub fn restriction_functor(
    a: &ProtoExactCat,
    big: &DiagramGroupoid,
    small: &DiagramGroupoid,
    map: &[usize],
) -> Result<GroupoidFunctor, ExactError> {
    let c = &a.cat;
    let mut on_class = Vec::new();
    let mut on_aut = Vec::new();
    for (x, d) in big.reps.iter().enumerate() {
        let r = d.restrict(c, &big.shape, &small.shape, map)?;
        let (y, psi) = small.classify(c, &r)?;
        let psi_inv = inverse_family(c, &psi);
        let mut h = Vec::new();
        for g in &big.auts[x] {
            let moved: IsoFamily = map.iter().map(|&v| g[v]).collect();
            h.push(small.aut_element(
                y,
                &compose_family(c, &compose_family(c, &psi, &moved), &psi_inv),
            )?);
        }
        on_class.push(y);
        on_aut.push(h);
    }
    Ok(GroupoidFunctor { on_class, on_aut })
}

/// Node map `small -> big` matching coordinates.
pub fn coordinate_map(small: &Shape, big: &Shape) -> Result<Vec<usize>, ExactError> {
    small
        .coords
        .iter()
        .map(|p| {
            big.node(p)
                .ok_or_else(|| ExactError::BadParams(format!("node {p:?} missing")))
        })
        .collect()
}

/// Grids of short exact sequences, crosses and frames, with the two
/// restriction functors out of the grids.
#[derive(Clone, Debug)]
pub struct GreenDiagrams {
    pub grid: DiagramGroupoid,
    pub cross: DiagramGroupoid,
    pub frame: DiagramGroupoid,
    pub to_cross: GroupoidFunctor,
    pub to_frame: GroupoidFunctor,
}

pub fn green_diagrams(a: &ProtoExactCat, budget: Budget) -> Result<GreenDiagrams, ExactError> {
    let grid = enumerate_diagrams(a, Arc::new(green_grid()), budget, None)?;
    let cross = enumerate_diagrams(a, Arc::new(green_cross()), budget, None)?;
    let frame = enumerate_diagrams(a, Arc::new(green_frame()), budget, None)?;
    let to_cross = restriction_functor(
        a,
        &grid,
        &cross,
        &coordinate_map(&cross.shape, &grid.shape)?,
    )?;
    let to_frame = restriction_functor(
        a,
        &grid,
        &frame,
        &coordinate_map(&frame.shape, &grid.shape)?,
    )?;
    Ok(GreenDiagrams {
        grid,
        cross,
        frame,
        to_cross,
        to_frame,
    })
}
