use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use fixedbitset::FixedBitSet;

use super::groth::{groth_posets, m_of_gamma, omega_of_gamma, GrothPosets, OmegaElem};
use super::poset::{pyr, FinPoset};
use super::simplex::DeltaOpSimplex;
use super::PosetError;

/// A normal oplax functor `P ⇸ Span(Q̂)` where `Q̂` is the completion of a
/// finite poset `Q` by up-sets. All legs and components are inclusions, so
/// the data is an up-set per object and per relation `x ≤ y`.
#[derive(Clone, Debug)]
pub struct OplaxSpanFunctor<T> {
    pub source: FinPoset<T>,
    pub objects: Vec<FixedBitSet>,
    pub spans: HashMap<(usize, usize), FixedBitSet>,
}

fn union(a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut u = a.clone();
    u.union_with(b);
    u
}

impl<T: Clone + Eq + Hash + Debug> OplaxSpanFunctor<T> {
    /// Identities go to identity spans.
    pub fn check_normal(&self) -> Result<(), PosetError> {
        for x in 0..self.source.len() {
            if self.spans.get(&(x, x)) != Some(&self.objects[x]) {
                return Err(PosetError::IncoherentOplaxData(format!(
                    "{:?} is not sent to an identity",
                    self.source.element(x)
                )));
            }
        }
        Ok(())
    }

    /// Both legs of every span are morphisms of the completion.
    pub fn check_legs(&self) -> Result<(), PosetError> {
        for (&(x, y), s) in &self.spans {
            if !self.objects[x].is_subset(s) || !self.objects[y].is_subset(s) {
                return Err(PosetError::IncoherentOplaxData(format!(
                    "legs of ({x},{y}) are not inclusions"
                )));
            }
        }
        Ok(())
    }

    /// The component `F(x≤y) ∘ F(y≤z) -> F(x≤z)` exists for every chain; the
    /// composite span has apex the union over `F(y)`.
    pub fn check_components(&self) -> Result<(), PosetError> {
        for (&(x, y), s1) in &self.spans {
            for z in 0..self.source.len() {
                if let Some(s2) = self.spans.get(&(y, z)) {
                    if !union(s1, s2).is_subset(&self.spans[&(x, z)]) {
                        return Err(PosetError::IncoherentOplaxData(format!(
                            "no component for {x} ≤ {y} ≤ {z}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Associativity: both ways of composing components out of
    /// `F(w≤x) ∘ F(x≤y) ∘ F(y≤z)` land in `F(w≤z)` through the intermediate
    /// components. In a posetal target this is all there is to check.
    pub fn check_associative(&self) -> Result<(), PosetError> {
        let n = self.source.len();
        let s = |a: usize, b: usize| &self.spans[&(a, b)];
        for w in 0..n {
            for x in (0..n).filter(|&x| self.source.le(w, x)) {
                for y in (0..n).filter(|&y| self.source.le(x, y)) {
                    let wxy = union(s(w, x), s(x, y));
                    for z in (0..n).filter(|&z| self.source.le(y, z)) {
                        let left = union(&wxy, s(y, z));
                        let via_wy = union(s(w, y), s(y, z));
                        let via_xz = union(s(w, x), s(x, z));
                        if !(left.is_subset(&via_wy) && left.is_subset(&via_xz))
                            || !via_wy.is_subset(s(w, z))
                            || !via_xz.is_subset(s(w, z))
                        {
                            return Err(PosetError::IncoherentOplaxData(format!(
                                "associativity fails at {w} ≤ {x} ≤ {y} ≤ {z}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check(&self) -> Result<(), PosetError> {
        self.check_normal()?;
        self.check_legs()?;
        self.check_components()?;
        self.check_associative()
    }

    /// The corresponding functor on `Pyr(source)`: `[x;y] ↦ F(x ≤ y)`.
    pub fn to_functor(&self) -> Result<PyrFunctor, PosetError> {
        self.check()?;
        let domain = pyr(&self.source);
        let values = domain
            .elements()
            .iter()
            .map(|p| self.spans[p].clone())
            .collect();
        let f = PyrFunctor { domain, values };
        f.check()?;
        Ok(f)
    }

    /// The oplax functor of a functor on `Pyr(source)`.
    pub fn from_functor(source: FinPoset<T>, f: &PyrFunctor) -> Self {
        let spans: HashMap<(usize, usize), FixedBitSet> = f
            .domain
            .elements()
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, f.values[i].clone()))
            .collect();
        let objects = (0..source.len()).map(|x| spans[&(x, x)].clone()).collect();
        OplaxSpanFunctor {
            source,
            objects,
            spans,
        }
    }
}

/// An up-set valued functor on a twisted arrow poset: `u ≤ v` gives
/// `values[u] ⊇ values[v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PyrFunctor {
    pub domain: FinPoset<(usize, usize)>,
    pub values: Vec<FixedBitSet>,
}

impl PyrFunctor {
    pub fn check(&self) -> Result<(), PosetError> {
        for u in 0..self.domain.len() {
            for v in 0..self.domain.len() {
                if self.domain.le(u, v) && !self.values[v].is_subset(&self.values[u]) {
                    return Err(PosetError::IncoherentOplaxData(format!(
                        "no map {:?} -> {:?}",
                        self.domain.element(u),
                        self.domain.element(v)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The cone functor of `φ` with its ambient posets.
#[derive(Clone, Debug)]
pub struct ConeFunctor {
    pub groth: GrothPosets,
    /// `Pyr(Ω_φ)`, whose up-sets are the values.
    pub pyr_omega: FinPoset<(usize, usize)>,
    /// `↑p` for every `p ∈ Pyr(Ω_φ)`.
    pub up: Vec<FixedBitSet>,
    /// `κ̄[x;y]` for every `x ≤ y`.
    pub regions: HashMap<(usize, usize), FixedBitSet>,
    pub oplax: OplaxSpanFunctor<(usize, usize)>,
}

/// `κ̄_φ[x;x']` as a subset of `Ω_φ` (indices of `M_φ`).
pub fn kappa_bar(g: &GrothPosets, x: usize, x2: usize) -> FixedBitSet {
    let (a, b) = *g.m.element(x);
    let (a2, b2) = *g.m.element(x2);
    let phi = &g.phi;
    let mut out = FixedBitSet::with_capacity(g.omega.len());
    for (w, &((i, j), c)) in g.omega.elements().iter().enumerate() {
        let _: OmegaElem = ((i, j), c);
        if b >= c && c >= b2 && phi.apply(b, c, a) <= i && phi.apply(c, b2, j) <= a2 {
            out.insert(w);
        }
    }
    out
}

/// `Pyr` of a subset of `Ω_φ`, as a subset of `Pyr(Ω_φ)`.
pub fn pyr_of(pyr_omega: &FinPoset<(usize, usize)>, region: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(pyr_omega.len());
    for (p, &(u, v)) in pyr_omega.elements().iter().enumerate() {
        if region.contains(u) && region.contains(v) {
            out.insert(p);
        }
    }
    out
}

pub fn cone_functor(phi: &DeltaOpSimplex) -> ConeFunctor {
    let groth = groth_posets(phi);
    let pyr_omega = pyr(&groth.omega);
    let np = pyr_omega.len();
    let up = (0..np)
        .map(|p| {
            let mut s = FixedBitSet::with_capacity(np);
            s.extend((0..np).filter(|&q| pyr_omega.le(p, q)));
            s
        })
        .collect();
    let n = groth.m.len();
    let mut regions = HashMap::new();
    let mut spans = HashMap::new();
    for x in 0..n {
        for y in (0..n).filter(|&y| groth.m.le(x, y)) {
            let r = kappa_bar(&groth, x, y);
            spans.insert((x, y), pyr_of(&pyr_omega, &r));
            regions.insert((x, y), r);
        }
    }
    let objects = (0..n).map(|x| spans[&(x, x)].clone()).collect();
    let oplax = OplaxSpanFunctor {
        source: groth.m.clone(),
        objects,
        spans,
    };
    ConeFunctor {
        groth,
        pyr_omega,
        up,
        regions,
        oplax,
    }
}

impl ConeFunctor {
    pub fn value(&self, x: usize, y: usize) -> &FixedBitSet {
        &self.oplax.spans[&(x, y)]
    }

    pub fn region(&self, x: usize, y: usize) -> &FixedBitSet {
        &self.regions[&(x, y)]
    }

    fn up_closure(&self, set: impl Iterator<Item = usize>) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.pyr_omega.len());
        for p in set {
            out.union_with(&self.up[p]);
        }
        out
    }

    /// Every value is an up-set of `Pyr(Ω_φ)`.
    pub fn check_up_closed(&self) -> Result<(), PosetError> {
        for (p, s) in &self.oplax.spans {
            if self.up_closure(s.ones()) != *s {
                return Err(PosetError::IncoherentOplaxData(format!(
                    "value at {p:?} is not up-closed"
                )));
            }
        }
        Ok(())
    }

    /// `κ̄` is monotone for interval inclusion.
    pub fn check_monotone(&self) -> Result<(), PosetError> {
        let m = &self.groth.m;
        for (&(x, y), big) in &self.regions {
            for (&(x2, y2), small) in &self.regions {
                if m.le(x, x2) && m.le(y2, y) && !small.is_subset(big) {
                    return Err(PosetError::IncoherentOplaxData(format!(
                        "κ̄ not monotone at {:?}",
                        (x, y)
                    )));
                }
            }
        }
        Ok(())
    }

    /// The representing interval of `κ[x;x']` when it is `↑` of a point of
    /// `Pyr(Ω_φ)`, i.e. when `κ̄[x;x']` is an interval of `Ω_φ`.
    pub fn representative(&self, x: usize, y: usize) -> Option<(usize, usize)> {
        let g = &self.groth;
        let region = self.region(x, y);
        let lo = region
            .ones()
            .find(|&u| region.ones().all(|w| g.omega.le(u, w)))?;
        let hi = region
            .ones()
            .find(|&v| region.ones().all(|w| g.omega.le(w, v)))?;
        let interval = (0..g.omega.len())
            .all(|w| region.contains(w) == (g.omega.le(lo, w) && g.omega.le(w, hi)));
        interval.then_some((lo, hi))
    }

    /// Restriction to `Pyr(V_φ)` agrees with `↑ ∘ Pyr(ν_φ)`: for every
    /// vertical `x ≤ x'`, `κ[x;x'] = ↑[ν x; ν x']`.
    pub fn check_vertical(&self) -> Result<(), PosetError> {
        let g = &self.groth;
        for (x, y) in self.vertical_pairs() {
            let rep = self.pyr_omega.index_of(&(g.nu[x], g.nu[y])).unwrap();
            if self.value(x, y) != &self.up[rep] {
                return Err(PosetError::IncoherentOplaxData(format!(
                    "κ[{:?};{:?}] is not ↑[ν x; ν x']",
                    g.m.element(x),
                    g.m.element(y)
                )));
            }
        }
        Ok(())
    }

    /// The form of vertical constancy that holds for every `φ`: each
    /// `κ̄[x;x']` with `x ≤ x'` vertical contains `ν x` and `ν x'`, and every
    /// one of its points is carried by `φ` to the single point `a'` of
    /// level `b'`, where `x' = (a', b')`.
    pub fn check_vertical_collapse(&self) -> Result<(), PosetError> {
        let g = &self.groth;
        let phi = &g.phi;
        for (x, y) in self.vertical_pairs() {
            let (a2, b2) = *g.m.element(y);
            let region = self.region(x, y);
            let collapses = region.ones().all(|w| {
                let ((i, j), c) = *g.omega.element(w);
                phi.apply(c, b2, i) == a2 && phi.apply(c, b2, j) == a2
            });
            if !region.contains(g.nu[x]) || !region.contains(g.nu[y]) || !collapses {
                return Err(PosetError::IncoherentOplaxData(format!(
                    "vertical interval {:?} does not collapse",
                    (x, y)
                )));
            }
        }
        Ok(())
    }

    fn vertical_pairs(&self) -> Vec<(usize, usize)> {
        let g = &self.groth;
        let n = g.m.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| g.is_vertical(x, y))
            .collect()
    }

    /// Naturality along `ψ: [k'] -> [k]`: the up-closure of the image of
    /// `κ_{φψ}[x;x']` under `Pyr(Ω(ψ))` is `κ_φ[M(ψ)x; M(ψ)x']`. `other`
    /// must be the cone functor of `φψ`.
    pub fn check_natural_with(&self, psi: &[usize], other: &ConeFunctor) -> Result<(), PosetError> {
        self.natural_compare(psi, other, false)
    }

    /// The inclusion half of naturality, which holds for every `ψ`: the
    /// image of `κ_{φψ}[x;x']` lies in `κ_φ[M(ψ)x; M(ψ)x']`.
    pub fn check_natural_inclusion(
        &self,
        psi: &[usize],
        other: &ConeFunctor,
    ) -> Result<(), PosetError> {
        self.natural_compare(psi, other, true)
    }

    fn natural_compare(
        &self,
        psi: &[usize],
        other: &ConeFunctor,
        inclusion_only: bool,
    ) -> Result<(), PosetError> {
        let phi = &self.groth.phi;
        let m_psi = m_of_gamma(phi, psi)?;
        let o_psi = omega_of_gamma(phi, psi)?;
        let pyr_map: Vec<usize> = other
            .pyr_omega
            .elements()
            .iter()
            .map(|&(u, v)| self.pyr_omega.index_of(&(o_psi[u], o_psi[v])).unwrap())
            .collect();
        for (&(x, y), s) in &other.oplax.spans {
            let img = self.up_closure(s.ones().map(|i| pyr_map[i]));
            let want = self.value(m_psi[x], m_psi[y]);
            if if inclusion_only {
                !img.is_subset(want)
            } else {
                &img != want
            } {
                return Err(PosetError::IncoherentOplaxData(format!(
                    "not natural along {psi:?} at {:?}",
                    (x, y)
                )));
            }
        }
        Ok(())
    }

    pub fn check_natural(&self, psi: &[usize]) -> Result<(), PosetError> {
        let other = cone_functor(&self.groth.phi.compose(psi)?);
        self.check_natural_with(psi, &other)
    }
}
