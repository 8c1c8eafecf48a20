//! Disjoint unions of standard (bi)simplices and the maps between them
//! induced by monotone maps of vertices.

use std::collections::HashMap;
use std::sync::Arc;

use super::{delta, Complex, SMap, SimpError, Simplex};

/// `⊔_i Δ^{dims_i}` with a lookup from (summand, vertex subsets) to cells.
#[derive(Clone, Debug)]
pub struct StdSum<const D: usize> {
    pub dims: Vec<[usize; D]>,
    pub complex: Complex<D>,
    index: HashMap<(usize, [u64; D]), usize>,
}

fn subsets_by_size(n: usize) -> Vec<u64> {
    let mut v: Vec<u64> = (1..(1u64 << (n + 1))).collect();
    v.sort_by_key(|m| (m.count_ones(), *m));
    v
}

fn elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

impl<const D: usize> StdSum<D> {
    pub fn new(dims: &[[usize; D]]) -> Self {
        let mut bound = [0; D];
        for s in dims {
            for d in 0..D {
                bound[d] = bound[d].max(s[d]);
            }
        }
        let mut complex = Complex::new(bound);
        let mut index = HashMap::new();
        for (k, s) in dims.iter().enumerate() {
            let subs: Vec<Vec<u64>> = (0..D).map(|d| subsets_by_size(s[d])).collect();
            let mut all: Vec<[u64; D]> = Vec::new();
            let mut idx = [0usize; D];
            'outer: loop {
                all.push(std::array::from_fn(|d| subs[d][idx[d]]));
                for d in (0..D).rev() {
                    idx[d] += 1;
                    if idx[d] < subs[d].len() {
                        continue 'outer;
                    }
                    idx[d] = 0;
                }
                break;
            }
            all.sort_by_key(|m| (m.iter().map(|x| x.count_ones()).sum::<u32>(), *m));
            for m in all {
                let deg: [usize; D] = std::array::from_fn(|d| m[d].count_ones() as usize - 1);
                let faces = std::array::from_fn(|d| {
                    if deg[d] == 0 {
                        return Vec::new();
                    }
                    elements(m[d])
                        .into_iter()
                        .map(|v| {
                            let mut f = m;
                            f[d] &= !(1u64 << v);
                            let mut fdeg = deg;
                            fdeg[d] -= 1;
                            Simplex::nondeg(index[&(k, f)], fdeg)
                        })
                        .collect()
                });
                let id = complex.push_unchecked(super::Cell { deg, faces });
                index.insert((k, m), id);
            }
        }
        StdSum {
            dims: dims.to_vec(),
            complex,
            index,
        }
    }

    /// The cell spanned by the given vertex subsets of summand `k`.
    pub fn cell(&self, k: usize, subsets: [u64; D]) -> usize {
        self.index[&(k, subsets)]
    }

    /// The top cell of summand `k`.
    pub fn top(&self, k: usize) -> usize {
        let s = self.dims[k];
        self.cell(k, std::array::from_fn(|d| (1u64 << (s[d] + 1)) - 1))
    }

    /// The simplex of summand `k` with vertex sequences `verts[d]` (monotone, possibly repeating).
    pub fn simplex(&self, k: usize, verts: &[Vec<usize>; D]) -> Simplex<D> {
        let mut masks = [0u64; D];
        let mut ops: [Vec<usize>; D] = std::array::from_fn(|_| Vec::new());
        for d in 0..D {
            let (s, i) = delta::factor(&verts[d]);
            for v in i {
                masks[d] |= 1 << v;
            }
            ops[d] = s;
        }
        Simplex {
            cell: self.cell(k, masks),
            ops,
        }
    }
}

/// The map `src -> tgt` sending summand `k` to summand `assign[k].0` via the
/// vertex maps `assign[k].1`.
pub fn std_map<const D: usize>(
    src: &StdSum<D>,
    src_arc: Arc<Complex<D>>,
    tgt: &StdSum<D>,
    tgt_arc: Arc<Complex<D>>,
    assign: &[(usize, [Vec<usize>; D])],
) -> Result<SMap<D>, SimpError> {
    let mut images = vec![None; src.complex.len()];
    for (&(k, m), &c) in &src.index {
        let (t, vm) = &assign[k];
        if *t >= tgt.dims.len() || (0..D).any(|d| vm[d].len() != src.dims[k][d] + 1) {
            return Err(SimpError::InvalidMap(format!(
                "bad assignment for summand {k}"
            )));
        }
        let verts: [Vec<usize>; D] =
            std::array::from_fn(|d| elements(m[d]).into_iter().map(|v| vm[d][v]).collect());
        for d in 0..D {
            if !delta::is_monotone(&verts[d], tgt.dims[*t][d]) {
                return Err(SimpError::InvalidMap(format!(
                    "vertex map of summand {k} is not monotone"
                )));
            }
        }
        images[c] = Some(tgt.simplex(*t, &verts));
    }
    SMap::new(
        src_arc,
        tgt_arc,
        images.into_iter().map(Option::unwrap).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_simplex_counts() {
        let d2 = Complex::<1>::standard(2);
        assert_eq!(d2.len(), 7);
        assert_eq!(d2.count([1]), 6);
        d2.validate().unwrap();
        let sq = Complex::<2>::standard(1, 1);
        assert_eq!(sq.nondeg_count([0, 0]), 4);
        assert_eq!(sq.nondeg_count([1, 0]), 2);
        assert_eq!(sq.nondeg_count([0, 1]), 2);
        assert_eq!(sq.nondeg_count([1, 1]), 1);
        sq.validate().unwrap();
    }

    #[test]
    fn vertex_map_induces_map() {
        let a = StdSum::<1>::new(&[[1], [1]]);
        let b = StdSum::<1>::new(&[[2]]);
        let f = std_map(
            &a,
            Arc::new(a.complex.clone()),
            &b,
            Arc::new(b.complex.clone()),
            &[(0, [vec![0, 1]]), (0, [vec![1, 2]])],
        )
        .unwrap();
        assert!(f.images.iter().all(|s| s.is_nondegenerate()));
        let g = std_map(
            &b,
            Arc::new(b.complex.clone()),
            &a,
            Arc::new(a.complex.clone()),
            &[(0, [vec![0, 0, 1]])],
        )
        .unwrap();
        assert!(!g.images[b.top(0)].is_nondegenerate());
    }
}
