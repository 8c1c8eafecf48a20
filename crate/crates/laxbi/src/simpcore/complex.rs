use super::delta;
use super::SimpError;

/// A simplex of a `D`-fold simplicial set in Eilenberg–Zilber form: a
/// nondegenerate cell together with one monotone surjection per direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex<const D: usize> {
    pub cell: usize,
    pub ops: [Vec<usize>; D],
}

impl<const D: usize> Simplex<D> {
    pub fn nondeg(cell: usize, deg: [usize; D]) -> Self {
        Simplex {
            cell,
            ops: std::array::from_fn(|d| delta::identity(deg[d])),
        }
    }

    pub fn deg(&self) -> [usize; D] {
        std::array::from_fn(|d| self.ops[d].len() - 1)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.ops.iter().all(|s| delta::is_identity(s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell<const D: usize> {
    pub deg: [usize; D],
    /// `faces[d][i]` is the `i`-th face in direction `d`.
    pub faces: [Vec<Simplex<D>>; D],
}

/// A finite `D`-fold simplicial set presented by its nondegenerate cells.
///
/// Faces of a cell always refer to cells inserted earlier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex<const D: usize> {
    bound: [usize; D],
    cells: Vec<Cell<D>>,
}

pub type SimplicialSet = Complex<1>;
pub type BiSimplicialSet = Complex<2>;

impl<const D: usize> Complex<D> {
    pub fn new(bound: [usize; D]) -> Self {
        Complex {
            bound,
            cells: Vec::new(),
        }
    }

    pub fn bound(&self) -> [usize; D] {
        self.bound
    }

    pub fn cells(&self) -> &[Cell<D>] {
        &self.cells
    }

    pub fn cell(&self, c: usize) -> &Cell<D> {
        &self.cells[c]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn nondeg(&self, c: usize) -> Simplex<D> {
        Simplex::nondeg(c, self.cells[c].deg)
    }

    /// Number of nondegenerate cells of the given degree.
    pub fn nondeg_count(&self, deg: [usize; D]) -> usize {
        self.cells.iter().filter(|c| c.deg == deg).count()
    }

    pub fn check_deg(&self, deg: [usize; D]) -> Result<(), SimpError> {
        if (0..D).any(|d| deg[d] > self.bound[d]) {
            return Err(SimpError::BoundExceeded {
                deg: deg.to_vec(),
                bound: self.bound.to_vec(),
            });
        }
        Ok(())
    }

    /// Adds a nondegenerate cell, validating face data and simplicial identities.
    pub fn add_cell(
        &mut self,
        deg: [usize; D],
        faces: [Vec<Simplex<D>>; D],
    ) -> Result<usize, SimpError> {
        let id = self.cells.len();
        self.check_deg(deg)?;
        let bad = |reason: String| SimpError::InvalidCell { cell: id, reason };
        for d in 0..D {
            let want = if deg[d] == 0 { 0 } else { deg[d] + 1 };
            if faces[d].len() != want {
                return Err(bad(format!(
                    "direction {d}: expected {want} faces, got {}",
                    faces[d].len()
                )));
            }
            for (i, f) in faces[d].iter().enumerate() {
                if f.cell >= id {
                    return Err(bad(format!(
                        "face {d}/{i} refers to unknown cell {}",
                        f.cell
                    )));
                }
                let mut fd = deg;
                fd[d] -= 1;
                let cd = self.cells[f.cell].deg;
                for e in 0..D {
                    if f.ops[e].len() != fd[e] + 1 || !delta::is_surjective(&f.ops[e], cd[e]) {
                        return Err(bad(format!(
                            "face {d}/{i} has malformed operator in direction {e}"
                        )));
                    }
                }
            }
        }
        // simplicial identities d_i d_j = d_{j-1} d_i (i < j), and mixed commutation
        for d in 0..D {
            let n = if deg[d] >= 2 { faces[d].len() } else { 0 };
            for j in 0..n {
                for i in 0..j {
                    let a = self.face(&faces[d][j], d, i);
                    let b = self.face(&faces[d][i], d, j - 1);
                    if a != b {
                        return Err(bad(format!("identity d{i}d{j} fails in direction {d}")));
                    }
                }
            }
            for e in d + 1..D {
                for i in 0..faces[d].len() {
                    for j in 0..faces[e].len() {
                        let a = self.face(&faces[d][i], e, j);
                        let b = self.face(&faces[e][j], d, i);
                        if a != b {
                            return Err(bad(format!("faces {d}/{i} and {e}/{j} do not commute")));
                        }
                    }
                }
            }
        }
        self.cells.push(Cell { deg, faces });
        Ok(id)
    }

    /// Applies the simplicial operator `theta` (`theta[d]: [m_d] -> [deg_d]`).
    pub fn apply(&self, x: &Simplex<D>, theta: &[Vec<usize>; D]) -> Simplex<D> {
        let mut surj: [Vec<usize>; D] = std::array::from_fn(|_| Vec::new());
        let mut inj: [Vec<usize>; D] = std::array::from_fn(|_| Vec::new());
        for d in 0..D {
            let (s, i) = delta::factor(&delta::after(&x.ops[d], &theta[d]));
            surj[d] = s;
            inj[d] = i;
        }
        let base = self.restrict_cell(x.cell, inj);
        Simplex {
            cell: base.cell,
            ops: std::array::from_fn(|d| delta::after(&base.ops[d], &surj[d])),
        }
    }

    /// The image of cell `c` under injections `iota[d]: [r_d] -> [deg_d]`.
    fn restrict_cell(&self, c: usize, mut iota: [Vec<usize>; D]) -> Simplex<D> {
        let deg = self.cells[c].deg;
        for d in 0..D {
            if iota[d].len() != deg[d] + 1 {
                let i = (0..=deg[d])
                    .find(|t| !iota[d].contains(t))
                    .expect("injection misses a vertex");
                for t in iota[d].iter_mut() {
                    if *t > i {
                        *t -= 1;
                    }
                }
                let f = &self.cells[c].faces[d][i];
                return self.apply(f, &iota);
            }
        }
        Simplex::nondeg(c, deg)
    }

    pub fn face(&self, x: &Simplex<D>, d: usize, i: usize) -> Simplex<D> {
        let deg = x.deg();
        let theta = std::array::from_fn(|e| {
            if e == d {
                delta::coface(deg[e], i)
            } else {
                delta::identity(deg[e])
            }
        });
        self.apply(x, &theta)
    }

    pub fn degeneracy(&self, x: &Simplex<D>, d: usize, i: usize) -> Simplex<D> {
        let deg = x.deg();
        let theta = std::array::from_fn(|e| {
            if e == d {
                delta::codegeneracy(deg[e], i)
            } else {
                delta::identity(deg[e])
            }
        });
        self.apply(x, &theta)
    }

    /// All simplices of a given degree, in canonical order.
    pub fn simplices(&self, deg: [usize; D]) -> Vec<Simplex<D>> {
        let mut out = Vec::new();
        for (c, cell) in self.cells.iter().enumerate() {
            if (0..D).any(|d| cell.deg[d] > deg[d]) {
                continue;
            }
            let choices: Vec<Vec<Vec<usize>>> = (0..D)
                .map(|d| delta::surjections(deg[d], cell.deg[d]))
                .collect();
            let mut idx = [0usize; D];
            'outer: loop {
                out.push(Simplex {
                    cell: c,
                    ops: std::array::from_fn(|d| choices[d][idx[d]].clone()),
                });
                for d in (0..D).rev() {
                    idx[d] += 1;
                    if idx[d] < choices[d].len() {
                        continue 'outer;
                    }
                    idx[d] = 0;
                }
                break;
            }
        }
        out
    }

    /// Number of simplices of a given degree.
    pub fn count(&self, deg: [usize; D]) -> u128 {
        self.cells
            .iter()
            .filter(|c| (0..D).all(|d| c.deg[d] <= deg[d]))
            .map(|c| (0..D).map(|d| binom(deg[d], c.deg[d])).product::<u128>())
            .sum()
    }

    /// Re-checks every cell; used after parsing.
    pub fn validate(&self) -> Result<(), SimpError> {
        let mut fresh = Complex::new(self.bound);
        for c in &self.cells {
            fresh.add_cell(c.deg, c.faces.clone())?;
        }
        Ok(())
    }

    /// Disjoint union; returns the union and the cell offset of each summand.
    pub fn coproduct(parts: &[&Complex<D>]) -> (Complex<D>, Vec<usize>) {
        let mut bound = [0; D];
        for p in parts {
            for d in 0..D {
                bound[d] = bound[d].max(p.bound[d]);
            }
        }
        let mut out = Complex::new(bound);
        let mut offsets = Vec::new();
        for p in parts {
            let off = out.cells.len();
            offsets.push(off);
            for c in &p.cells {
                let faces = std::array::from_fn(|d| {
                    c.faces[d]
                        .iter()
                        .map(|f| Simplex {
                            cell: f.cell + off,
                            ops: f.ops.clone(),
                        })
                        .collect()
                });
                out.cells.push(Cell { deg: c.deg, faces });
            }
        }
        (out, offsets)
    }

    /// `n` disjoint copies.
    pub fn copies(&self, n: usize) -> Complex<D> {
        let parts: Vec<&Complex<D>> = (0..n).map(|_| self).collect();
        let mut out = Complex::coproduct(&parts).0;
        out.bound = self.bound;
        out
    }

    pub(crate) fn push_unchecked(&mut self, cell: Cell<D>) -> usize {
        self.cells.push(cell);
        self.cells.len() - 1
    }

    pub fn with_bound(mut self, bound: [usize; D]) -> Result<Self, SimpError> {
        for c in &self.cells {
            for d in 0..D {
                if c.deg[d] > bound[d] {
                    return Err(SimpError::BoundExceeded {
                        deg: c.deg.to_vec(),
                        bound: bound.to_vec(),
                    });
                }
            }
        }
        self.bound = bound;
        Ok(self)
    }

    /// Histogram of nondegenerate cells by degree, sorted.
    pub fn profile(&self) -> Vec<([usize; D], usize)> {
        let mut m = std::collections::BTreeMap::new();
        for c in &self.cells {
            *m.entry(c.deg).or_insert(0) += 1;
        }
        m.into_iter().collect()
    }
}

fn binom(m: usize, p: usize) -> u128 {
    // number of surjections [m] -> [p]
    if p > m {
        return 0;
    }
    let (a, b) = (m as u128, p as u128);
    let mut r = 1u128;
    for i in 0..b {
        r = r * (a - i) / (i + 1);
    }
    r
}

impl SimplicialSet {
    /// The standard simplex `Δ^n`.
    pub fn standard(n: usize) -> SimplicialSet {
        super::standard::StdSum::new(&[[n]]).complex
    }
}

impl BiSimplicialSet {
    /// The standard bisimplex `Δ^{n,k}`.
    pub fn standard(n: usize, k: usize) -> BiSimplicialSet {
        super::standard::StdSum::new(&[[n, k]]).complex
    }
}
