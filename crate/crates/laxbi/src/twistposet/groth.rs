use super::poset::{pyr, FinPoset};
use super::simplex::{DeltaOpSimplex, NatTrans};
use super::PosetError;

/// An element `([i;j], b)` of `Ω_φ`.
pub type OmegaElem = ((usize, usize), usize);

/// `M_φ`, `V_φ`, `Wedge(M_φ)`, `Ω_φ` and `ν_φ: V_φ -> Ω_φ`.
#[derive(Clone, Debug)]
pub struct GrothPosets {
    pub phi: DeltaOpSimplex,
    /// Elements `(a, b)`.
    pub m: FinPoset<(usize, usize)>,
    /// Same elements as `m`, related only along `φ`.
    pub v: FinPoset<(usize, usize)>,
    /// `Wedge(M_φ)` as intervals (pairs of indices of `m`).
    pub wedge: Vec<(usize, usize)>,
    pub omega: FinPoset<OmegaElem>,
    /// `ν_φ` on indices of `m`.
    pub nu: Vec<usize>,
}

pub fn m_elements(phi: &DeltaOpSimplex) -> Vec<(usize, usize)> {
    (0..=phi.k())
        .flat_map(|b| (0..=phi.dim(b)).map(move |a| (a, b)))
        .collect()
}

pub fn m_poset(phi: &DeltaOpSimplex) -> FinPoset<(usize, usize)> {
    let els = m_elements(phi);
    let leq = els
        .iter()
        .map(|&(a, b)| {
            els.iter()
                .map(|&(a2, b2)| b >= b2 && phi.apply(b, b2, a) <= a2)
                .collect()
        })
        .collect();
    FinPoset::from_table(els, leq)
}

pub fn omega_poset(phi: &DeltaOpSimplex) -> FinPoset<OmegaElem> {
    let els: Vec<OmegaElem> = (0..=phi.k())
        .flat_map(|b| {
            let n = phi.dim(b);
            (0..=n).flat_map(move |i| (i..=n).map(move |j| ((i, j), b)))
        })
        .collect();
    let leq = els
        .iter()
        .map(|&((i, j), b)| {
            els.iter()
                .map(|&((i2, j2), b2)| {
                    b >= b2 && phi.apply(b, b2, i) <= i2 && j2 <= phi.apply(b, b2, j)
                })
                .collect()
        })
        .collect();
    FinPoset::from_table(els, leq)
}

pub fn groth_posets(phi: &DeltaOpSimplex) -> GrothPosets {
    let m = m_poset(phi);
    let els = m.elements().to_vec();
    let vleq = els
        .iter()
        .map(|&(a, b)| {
            els.iter()
                .map(|&(a2, b2)| b >= b2 && phi.apply(b, b2, a) == a2)
                .collect()
        })
        .collect();
    let v = FinPoset::from_table(els.clone(), vleq);
    let mut wedge = Vec::new();
    for &(a, b) in &els {
        let x = m.index_of(&(a, b)).unwrap();
        for b2 in [b, b.saturating_sub(1)] {
            for a2 in a..=(a + 1).min(phi.dim(b)) {
                let y = m.index_of(&(phi.apply(b, b2, a2), b2)).unwrap();
                if !wedge.contains(&(x, y)) {
                    wedge.push((x, y));
                }
            }
        }
    }
    let omega = omega_poset(phi);
    let nu = els
        .iter()
        .map(|&(a, b)| omega.index_of(&((a, a), b)).unwrap())
        .collect();
    GrothPosets {
        phi: phi.clone(),
        m,
        v,
        wedge,
        omega,
        nu,
    }
}

impl GrothPosets {
    /// `Wedge(M_φ)` as a sub-poset of `Pyr(M_φ)`.
    pub fn wedge_poset(&self) -> FinPoset<(usize, usize)> {
        let p = pyr(&self.m);
        let keep: Vec<usize> = self.wedge.iter().map(|w| p.index_of(w).unwrap()).collect();
        p.subposet(&keep)
    }

    pub fn is_vertical(&self, x: usize, y: usize) -> bool {
        self.v.le(x, y)
    }
}

/// `M(η)`, as a map of indices.
pub fn m_of_nat(eta: &NatTrans) -> Vec<usize> {
    let src = m_poset(&eta.source);
    let tgt = m_poset(&eta.target);
    src.elements()
        .iter()
        .map(|&(a, b)| tgt.index_of(&(eta.components[b][a], b)).unwrap())
        .collect()
}

/// `Ω(η)`, as a map of indices.
pub fn omega_of_nat(eta: &NatTrans) -> Vec<usize> {
    let src = omega_poset(&eta.source);
    let tgt = omega_poset(&eta.target);
    src.elements()
        .iter()
        .map(|&((i, j), b)| {
            tgt.index_of(&((eta.components[b][i], eta.components[b][j]), b))
                .unwrap()
        })
        .collect()
}

/// `M(γ): M_{φγ} -> M_φ`.
pub fn m_of_gamma(phi: &DeltaOpSimplex, gamma: &[usize]) -> Result<Vec<usize>, PosetError> {
    let src = m_poset(&phi.compose(gamma)?);
    let tgt = m_poset(phi);
    Ok(src
        .elements()
        .iter()
        .map(|&(a, c)| tgt.index_of(&(a, gamma[c])).unwrap())
        .collect())
}

/// `Ω(γ): Ω_{φγ} -> Ω_φ`.
pub fn omega_of_gamma(phi: &DeltaOpSimplex, gamma: &[usize]) -> Result<Vec<usize>, PosetError> {
    let src = omega_poset(&phi.compose(gamma)?);
    let tgt = omega_poset(phi);
    Ok(src
        .elements()
        .iter()
        .map(|&(ij, c)| tgt.index_of(&(ij, gamma[c])).unwrap())
        .collect())
}
