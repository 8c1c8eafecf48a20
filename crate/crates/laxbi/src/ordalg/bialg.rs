use std::collections::BTreeMap;

use super::{
    compose_alg, pseudo_pullback, pyrnc_map, AlgError, AlgMorphism, AlgSquare, PpFailure, PyrNC,
    PyrPath, Side,
};
use crate::simpcore::delta;

/// An `Alg`-valued diagram on `Pyr^nc(n)`: a set size per interval and a
/// morphism per generating edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PyrDiagram {
    pub pyr: PyrNC,
    pub values: Vec<usize>,
    pub maps: Vec<AlgMorphism>,
}

impl PyrDiagram {
    pub fn new(n: usize, values: Vec<usize>, maps: Vec<AlgMorphism>) -> Result<Self, AlgError> {
        let pyr = PyrNC::new(n);
        if values.len() != pyr.objects.len() || maps.len() != pyr.edges.len() {
            return Err(AlgError::TypeMismatch("diagram has the wrong shape".into()));
        }
        for (e, f) in pyr.edges.iter().zip(&maps) {
            if f.source() != values[e.src] || f.target() != values[e.tgt] {
                return Err(AlgError::TypeMismatch(format!(
                    "edge {:?} -> {:?} is ill-typed",
                    pyr.objects[e.src], pyr.objects[e.tgt]
                )));
            }
        }
        Ok(PyrDiagram { pyr, values, maps })
    }

    pub fn n(&self) -> usize {
        self.pyr.n
    }

    pub fn value(&self, a: usize, b: usize) -> usize {
        self.values[self.pyr.object(a, b)]
    }

    pub fn path_image(&self, p: &PyrPath) -> AlgMorphism {
        let mut out = AlgMorphism::identity(self.values[p.src]);
        for &e in &p.edges {
            out = compose_alg(&out, &self.maps[e]).expect("typed diagram");
        }
        out
    }

    /// `[a;b] -> [a2;b]`.
    pub fn left(&self, a: usize, a2: usize, b: usize) -> AlgMorphism {
        self.path_image(&self.pyr.left_path(a, a2, b))
    }

    /// `[a;b] -> [a;b2]`.
    pub fn right(&self, a: usize, b: usize, b2: usize) -> AlgMorphism {
        self.path_image(&self.pyr.right_path(a, b, b2))
    }

    /// The middle square of the image of `Pyr^nc(φ)` for `φ = (u0, u1, u2)`.
    pub fn middle_square(&self, u: [usize; 3]) -> AlgSquare {
        let [u0, u1, u2] = u;
        AlgSquare {
            top: self.left(u0, u1, u2),
            left: self.right(u0, u2, u1),
            bottom: self.left(u0, u1, u1),
            right: self.right(u1, u2, u1),
        }
    }

    /// The first `φ: [2] -> [n]` whose middle square is not a pseudo-pullback.
    pub fn pseudo_cartesian_failure(&self) -> Option<(Vec<usize>, PpFailure)> {
        for phi in delta::monotone_maps(2, self.n()) {
            if let Err(f) = self
                .middle_square([phi[0], phi[1], phi[2]])
                .check_pseudo_pullback()
            {
                return Some((phi, f));
            }
        }
        None
    }

    /// Precomposition with `Pyr^nc(φ)` for `φ: [n'] -> [n]`.
    pub fn pushforward(&self, phi: &[usize]) -> Result<PyrDiagram, AlgError> {
        let f = pyrnc_map(phi, self.n())?;
        let values = f.on_objects.iter().map(|&o| self.values[o]).collect();
        let maps = f.on_edges.iter().map(|p| self.path_image(p)).collect();
        PyrDiagram::new(phi.len() - 1, values, maps)
    }

    pub fn coproduct(&self, other: &PyrDiagram) -> Result<PyrDiagram, AlgError> {
        if self.n() != other.n() {
            return Err(AlgError::TypeMismatch(
                "coproduct of diagrams of different lengths".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(f, g)| f.coproduct(g))
            .collect();
        PyrDiagram::new(self.n(), values, maps)
    }

    pub fn empty(n: usize) -> PyrDiagram {
        let pyr = PyrNC::new(n);
        let values = vec![0; pyr.objects.len()];
        let maps = vec![AlgMorphism::identity(0); pyr.edges.len()];
        PyrDiagram { pyr, values, maps }
    }

    /// The pseudo-cartesian diagram generated by a chain of spans
    /// `X_i <- Y_i -> X_{i+1}` (each given as `(left leg, right leg)`).
    pub fn from_spans(
        x0: usize,
        spans: &[(AlgMorphism, AlgMorphism)],
    ) -> Result<PyrDiagram, AlgError> {
        let n = spans.len();
        let pyr = PyrNC::new(n);
        let mut values = vec![0; pyr.objects.len()];
        let mut maps: Vec<Option<AlgMorphism>> = vec![None; pyr.edges.len()];
        let mut x = x0;
        for (i, (l, r)) in spans.iter().enumerate() {
            if l.source() != r.source() || l.target() != x {
                return Err(AlgError::TypeMismatch(format!(
                    "span {i} does not match its neighbours"
                )));
            }
            values[pyr.object(i, i)] = x;
            values[pyr.object(i, i + 1)] = l.source();
            let o = pyr.object(i, i + 1);
            maps[pyr.edge(o, Side::Right).unwrap()] = Some(l.clone());
            maps[pyr.edge(o, Side::Left).unwrap()] = Some(r.clone());
            x = r.target();
        }
        values[pyr.object(n, n)] = x;
        for len in 2..=n {
            for a in 0..=n - len {
                let b = a + len;
                let p = maps[pyr.edge(pyr.object(a, b - 1), Side::Left).unwrap()]
                    .clone()
                    .unwrap();
                let q = maps[pyr.edge(pyr.object(a + 1, b), Side::Right).unwrap()]
                    .clone()
                    .unwrap();
                let (sq, pairs) = pseudo_pullback(&p, &q)?;
                let o = pyr.object(a, b);
                values[o] = pairs.len();
                maps[pyr.edge(o, Side::Left).unwrap()] = Some(sq.top);
                maps[pyr.edge(o, Side::Right).unwrap()] = Some(sq.left);
            }
        }
        PyrDiagram::new(n, values, maps.into_iter().map(Option::unwrap).collect())
    }

    /// `[a;b] ↦ X_a` for a chain `X_0 -> X_1 -> ... -> X_n`.
    pub fn from_alg_chain(x0: usize, chain: &[AlgMorphism]) -> Result<PyrDiagram, AlgError> {
        let sizes = chain_sizes(x0, chain)?;
        let pyr = PyrNC::new(chain.len());
        let values = pyr.objects.iter().map(|&(a, _)| sizes[a]).collect();
        let maps = pyr
            .edges
            .iter()
            .map(|e| {
                let (a, _) = pyr.objects[e.src];
                match e.side {
                    Side::Left => chain[a].clone(),
                    Side::Right => AlgMorphism::identity(sizes[a]),
                }
            })
            .collect();
        PyrDiagram::new(chain.len(), values, maps)
    }

    /// `[a;b] ↦ Y_b` for a chain `Y_n -> ... -> Y_0`, given as
    /// `chain[b-1]: Y_b -> Y_{b-1}`.
    pub fn from_coalg_chain(y0: usize, chain: &[AlgMorphism]) -> Result<PyrDiagram, AlgError> {
        let mut sizes = vec![y0];
        for (b, f) in chain.iter().enumerate() {
            if f.target() != sizes[b] {
                return Err(AlgError::TypeMismatch(format!(
                    "coalgebra chain breaks at {}",
                    b + 1
                )));
            }
            sizes.push(f.source());
        }
        let pyr = PyrNC::new(chain.len());
        let values = pyr.objects.iter().map(|&(_, b)| sizes[b]).collect();
        let maps = pyr
            .edges
            .iter()
            .map(|e| {
                let (_, b) = pyr.objects[e.src];
                match e.side {
                    Side::Right => chain[b - 1].clone(),
                    Side::Left => AlgMorphism::identity(sizes[b]),
                }
            })
            .collect();
        PyrDiagram::new(chain.len(), values, maps)
    }
}

pub fn chain_sizes(x0: usize, chain: &[AlgMorphism]) -> Result<Vec<usize>, AlgError> {
    let mut sizes = vec![x0];
    for (a, f) in chain.iter().enumerate() {
        if f.source() != sizes[a] {
            return Err(AlgError::TypeMismatch(format!(
                "algebra chain breaks at {a}"
            )));
        }
        sizes.push(f.target());
    }
    Ok(sizes)
}

/// A functor `Cart(S) × Pyr^nc(n) -> Alg`. `diagrams[U]` is indexed by the
/// bitmask of `U ⊆ S`; `cart[(U, t)]` holds, per object, the map
/// `F(U) -> F(U ∪ {t})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BialgFunctor {
    pub s: usize,
    pub n: usize,
    pub diagrams: Vec<PyrDiagram>,
    pub cart: BTreeMap<(usize, usize), Vec<AlgMorphism>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BialgFailure {
    IllTyped(String),
    NotFunctorial {
        mask: usize,
        detail: String,
    },
    NotCocartesian {
        u: usize,
        v: usize,
        object: (usize, usize),
    },
    NotPseudoCartesian {
        mask: usize,
        phi: Vec<usize>,
        failure: PpFailure,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    /// `[a;b] ↦ a`, for algebra data.
    Alg,
    /// `[a;b] ↦ b`, for coalgebra data.
    Coalg,
}

impl BialgFunctor {
    /// The cocartesian extension of one diagram per element of `S`:
    /// `F(U) = ⊔_{s ∈ U} F({s})` in increasing order of `s`.
    pub fn from_singletons(per: Vec<PyrDiagram>) -> Result<Self, AlgError> {
        let s = per.len();
        let n = per.first().map_or(0, |d| d.n());
        if per.iter().any(|d| d.n() != n) {
            return Err(AlgError::TypeMismatch(
                "singleton diagrams of different lengths".into(),
            ));
        }
        let mut diagrams = Vec::with_capacity(1 << s);
        for mask in 0..1usize << s {
            let mut d = PyrDiagram::empty(n);
            for (t, p) in per.iter().enumerate() {
                if mask >> t & 1 == 1 {
                    d = d.coproduct(p)?;
                }
            }
            diagrams.push(d);
        }
        let mut cart = BTreeMap::new();
        for mask in 0..1usize << s {
            for t in (0..s).filter(|t| mask >> t & 1 == 0) {
                let big = mask | 1 << t;
                let maps = (0..diagrams[0].values.len())
                    .map(|o| {
                        let mut img = Vec::new();
                        let mut off = 0;
                        for (u, p) in per.iter().enumerate() {
                            if big >> u & 1 == 1 {
                                if mask >> u & 1 == 1 {
                                    img.extend(off..off + p.values[o]);
                                }
                                off += p.values[o];
                            }
                        }
                        AlgMorphism::from_map(&img, off).unwrap()
                    })
                    .collect();
                cart.insert((mask, t), maps);
            }
        }
        Ok(BialgFunctor {
            s,
            n,
            diagrams,
            cart,
        })
    }

    /// `ι_a` / `ι_c`: precomposition with an endpoint projection.
    pub fn embed_endpoints(
        size0: usize,
        chain: &[AlgMorphism],
        end: Endpoint,
    ) -> Result<Self, AlgError> {
        let d = match end {
            Endpoint::Alg => PyrDiagram::from_alg_chain(size0, chain)?,
            Endpoint::Coalg => PyrDiagram::from_coalg_chain(size0, chain)?,
        };
        BialgFunctor::from_singletons(vec![d])
    }

    pub fn singleton(&self, t: usize) -> &PyrDiagram {
        &self.diagrams[1 << t]
    }

    /// Composite inclusion `F(U) -> F(W)` for `U ⊆ W`, adding elements in increasing order.
    pub fn inclusion(&self, u: usize, w: usize, object: usize) -> AlgMorphism {
        let mut cur = u;
        let mut out = AlgMorphism::identity(self.diagrams[u].values[object]);
        for t in 0..self.s {
            if w >> t & 1 == 1 && cur >> t & 1 == 0 {
                out = compose_alg(&out, &self.cart[&(cur, t)][object]).unwrap();
                cur |= 1 << t;
            }
        }
        out
    }

    /// `(f, φ)_* F`: `V ↦ F(f⁻¹ V)` precomposed with `Pyr^nc(φ)`, where
    /// `f[s]` is the image of `s` (`None` for the base point).
    pub fn pushforward(
        &self,
        f: &[Option<usize>],
        t_size: usize,
        phi: &[usize],
    ) -> Result<Self, AlgError> {
        if f.len() != self.s || f.iter().flatten().any(|&t| t >= t_size) {
            return Err(AlgError::TypeMismatch("pointed map does not match".into()));
        }
        let pre = |v: usize| {
            (0..self.s)
                .filter(|&s| f[s].is_some_and(|t| v >> t & 1 == 1))
                .fold(0, |m, s| m | 1 << s)
        };
        let diagrams = (0..1usize << t_size)
            .map(|v| self.diagrams[pre(v)].pushforward(phi))
            .collect::<Result<Vec<_>, _>>()?;
        let pf = pyrnc_map(phi, self.n)?;
        let mut cart = BTreeMap::new();
        for v in 0..1usize << t_size {
            for t in (0..t_size).filter(|t| v >> t & 1 == 0) {
                let maps = pf
                    .on_objects
                    .iter()
                    .map(|&o| self.inclusion(pre(v), pre(v | 1 << t), o))
                    .collect();
                cart.insert((v, t), maps);
            }
        }
        Ok(BialgFunctor {
            s: t_size,
            n: phi.len() - 1,
            diagrams,
            cart,
        })
    }

    pub fn validate(&self) -> Result<(), BialgFailure> {
        let full = 1usize << self.s;
        if self.diagrams.len() != full {
            return Err(BialgFailure::IllTyped("wrong number of subsets".into()));
        }
        let objs = self.diagrams[0].values.len();
        for (mask, d) in self.diagrams.iter().enumerate() {
            if d.n() != self.n {
                return Err(BialgFailure::IllTyped(format!(
                    "subset {mask} has the wrong length"
                )));
            }
        }
        for mask in 0..full {
            for t in (0..self.s).filter(|t| mask >> t & 1 == 0) {
                let maps = self.cart.get(&(mask, t)).ok_or_else(|| {
                    BialgFailure::IllTyped(format!("missing Cart map ({mask},{t})"))
                })?;
                let big = mask | 1 << t;
                for o in 0..objs {
                    if maps.len() != objs
                        || maps[o].source() != self.diagrams[mask].values[o]
                        || maps[o].target() != self.diagrams[big].values[o]
                    {
                        return Err(BialgFailure::IllTyped(format!(
                            "Cart map ({mask},{t}) is ill-typed"
                        )));
                    }
                }
                // naturality in the Pyr^nc direction
                for (e, edge) in self.diagrams[0].pyr.edges.iter().enumerate() {
                    let a = compose_alg(&maps[edge.src], &self.diagrams[big].maps[e]).unwrap();
                    let b = compose_alg(&self.diagrams[mask].maps[e], &maps[edge.tgt]).unwrap();
                    if a != b {
                        return Err(BialgFailure::NotFunctorial {
                            mask,
                            detail: format!("Cart map ({mask},{t}) is not natural at edge {e}"),
                        });
                    }
                }
                // commuting squares of Cart
                for t2 in (t + 1..self.s).filter(|t2| mask >> t2 & 1 == 0) {
                    for o in 0..objs {
                        let a = compose_alg(&maps[o], &self.cart[&(big, t2)][o]).unwrap();
                        let b = compose_alg(
                            &self.cart[&(mask, t2)][o],
                            &self.cart[&(mask | 1 << t2, t)][o],
                        )
                        .unwrap();
                        if a != b {
                            return Err(BialgFailure::NotFunctorial {
                                mask,
                                detail: format!("square adding {t},{t2} does not commute"),
                            });
                        }
                    }
                }
            }
        }
        // cocartesian: empty at ∅, disjoint unions are coproducts
        for o in 0..objs {
            if self.diagrams[0].values[o] != 0 {
                return Err(BialgFailure::NotCocartesian {
                    u: 0,
                    v: 0,
                    object: self.diagrams[0].pyr.objects[o],
                });
            }
            for u in 1..full {
                for v in u + 1..full {
                    if u & v != 0 {
                        continue;
                    }
                    let (iu, iv) = (self.inclusion(u, u | v, o), self.inclusion(v, u | v, o));
                    let mut hit = vec![0u8; self.diagrams[u | v].values[o]];
                    for y in iu.map().into_iter().chain(iv.map()) {
                        hit[y] += 1;
                    }
                    if hit.iter().any(|&h| h != 1) {
                        return Err(BialgFailure::NotCocartesian {
                            u,
                            v,
                            object: self.diagrams[0].pyr.objects[o],
                        });
                    }
                }
            }
        }
        for (mask, d) in self.diagrams.iter().enumerate() {
            if let Some((phi, failure)) = d.pseudo_cartesian_failure() {
                return Err(BialgFailure::NotPseudoCartesian { mask, phi, failure });
            }
        }
        Ok(())
    }
}
