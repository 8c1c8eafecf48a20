use super::PosetError;
use crate::simpcore::delta;

/// An element of `N_k(Δ^op)`: objects `[n_0], ..., [n_k]` and maps
/// `maps[b] = φ_{b+1,b}: [n_{b+1}] -> [n_b]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaOpSimplex {
    dims: Vec<usize>,
    maps: Vec<Vec<usize>>,
}

impl DeltaOpSimplex {
    pub fn new(dims: Vec<usize>, maps: Vec<Vec<usize>>) -> Result<Self, PosetError> {
        if dims.is_empty() || maps.len() + 1 != dims.len() {
            return Err(PosetError::ShapeMismatch(
                "need k+1 objects and k maps".into(),
            ));
        }
        for (b, m) in maps.iter().enumerate() {
            if m.len() != dims[b + 1] + 1 || !delta::is_monotone(m, dims[b]) {
                return Err(PosetError::ShapeMismatch(format!(
                    "map {b} is not a monotone [{}] -> [{}]",
                    dims[b + 1],
                    dims[b]
                )));
            }
        }
        Ok(DeltaOpSimplex { dims, maps })
    }

    pub fn constant(n: usize, k: usize) -> Self {
        DeltaOpSimplex {
            dims: vec![n; k + 1],
            maps: vec![delta::identity(n); k],
        }
    }

    /// The 1-simplex `[n] ← [m]` given by a single map `[m] -> [n]`.
    pub fn edge(n: usize, map: Vec<usize>) -> Result<Self, PosetError> {
        DeltaOpSimplex::new(vec![n, map.len() - 1], vec![map])
    }

    /// The unique active `[2] ↞ [1]`.
    pub fn active_2_1() -> Self {
        DeltaOpSimplex::edge(2, vec![0, 2]).unwrap()
    }

    pub fn k(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, b: usize) -> usize {
        self.dims[b]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    /// `φ_{b,b2}: [n_b] -> [n_{b2}]` for `b ≥ b2`.
    pub fn phi(&self, b: usize, b2: usize) -> Vec<usize> {
        assert!(b >= b2);
        let mut m = delta::identity(self.dims[b]);
        for c in (b2..b).rev() {
            m = m.iter().map(|&x| self.maps[c][x]).collect();
        }
        m
    }

    pub fn apply(&self, b: usize, b2: usize, a: usize) -> usize {
        (b2..b).rev().fold(a, |x, c| self.maps[c][x])
    }

    /// `φγ` for monotone `γ: [m] -> [k]`.
    pub fn compose(&self, gamma: &[usize]) -> Result<Self, PosetError> {
        if !delta::is_monotone(gamma, self.k()) {
            return Err(PosetError::ShapeMismatch(
                "γ is not monotone into [k]".into(),
            ));
        }
        let dims = gamma.iter().map(|&g| self.dims[g]).collect();
        let maps = gamma.windows(2).map(|w| self.phi(w[1], w[0])).collect();
        DeltaOpSimplex::new(dims, maps)
    }

    /// A 1-simplex is inert when its map is an interval inclusion.
    pub fn is_inert(&self) -> bool {
        self.maps
            .iter()
            .all(|m| m.windows(2).all(|w| w[1] == w[0] + 1))
    }

    /// A 1-simplex is active when its map preserves endpoints.
    pub fn is_active(&self) -> bool {
        self.maps
            .iter()
            .enumerate()
            .all(|(b, m)| m[0] == 0 && *m.last().unwrap() == self.dims[b])
    }

    /// Every simplex with `k ≤ kmax` and all `n_b ≤ nmax`.
    pub fn enumerate(kmax: usize, nmax: usize) -> Vec<DeltaOpSimplex> {
        let mut out = Vec::new();
        for k in 0..=kmax {
            let mut partial = vec![(vec![], vec![])];
            for b in 0..=k {
                let mut next = Vec::new();
                for (dims, maps) in &partial {
                    for n in 0..=nmax {
                        let mut d: Vec<usize> = dims.clone();
                        d.push(n);
                        if b == 0 {
                            next.push((d, maps.clone()));
                            continue;
                        }
                        for m in delta::monotone_maps(n, dims[b - 1]) {
                            let mut ms: Vec<Vec<usize>> = maps.clone();
                            ms.push(m);
                            next.push((d.clone(), ms));
                        }
                    }
                }
                partial = next;
            }
            out.extend(
                partial
                    .into_iter()
                    .map(|(d, m)| DeltaOpSimplex { dims: d, maps: m }),
            );
        }
        out
    }
}

/// A natural transformation `η: φ' ⇒ φ` with components `η_b: [n'_b] -> [n_b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    pub source: DeltaOpSimplex,
    pub target: DeltaOpSimplex,
    pub components: Vec<Vec<usize>>,
}

impl NatTrans {
    pub fn new(
        source: DeltaOpSimplex,
        target: DeltaOpSimplex,
        components: Vec<Vec<usize>>,
    ) -> Result<Self, PosetError> {
        let k = source.k();
        if target.k() != k || components.len() != k + 1 {
            return Err(PosetError::ShapeMismatch(
                "natural transformation between different lengths".into(),
            ));
        }
        for (b, c) in components.iter().enumerate() {
            if c.len() != source.dim(b) + 1 || !delta::is_monotone(c, target.dim(b)) {
                return Err(PosetError::ShapeMismatch(format!(
                    "component {b} is ill-typed"
                )));
            }
        }
        for b in 1..=k {
            for a in 0..=source.dim(b) {
                if target.maps[b - 1][components[b][a]] != components[b - 1][source.maps[b - 1][a]]
                {
                    return Err(PosetError::ShapeMismatch(format!("not natural at {b}")));
                }
            }
        }
        Ok(NatTrans {
            source,
            target,
            components,
        })
    }

    pub fn identity(phi: &DeltaOpSimplex) -> Self {
        let components = phi.dims.iter().map(|&n| delta::identity(n)).collect();
        NatTrans {
            source: phi.clone(),
            target: phi.clone(),
            components,
        }
    }
}
