use std::sync::Arc;

use super::{delta, Complex, SimpError, Simplex};

/// A map of `D`-fold simplicial sets, given on nondegenerate cells.
#[derive(Clone, Debug)]
pub struct SMap<const D: usize> {
    pub source: Arc<Complex<D>>,
    pub target: Arc<Complex<D>>,
    pub images: Vec<Simplex<D>>,
}

pub type BisimplicialMap = SMap<2>;

impl<const D: usize> SMap<D> {
    /// Builds a map, checking degrees and compatibility with all faces.
    pub fn new(
        source: Arc<Complex<D>>,
        target: Arc<Complex<D>>,
        images: Vec<Simplex<D>>,
    ) -> Result<Self, SimpError> {
        if images.len() != source.len() {
            return Err(SimpError::InvalidMap(format!(
                "{} images for {} cells",
                images.len(),
                source.len()
            )));
        }
        for (c, img) in images.iter().enumerate() {
            let deg = source.cell(c).deg;
            if img.cell >= target.len() || img.deg() != deg {
                return Err(SimpError::InvalidMap(format!(
                    "cell {c} has an ill-typed image"
                )));
            }
            let td = target.cell(img.cell).deg;
            if (0..D).any(|d| !delta::is_surjective(&img.ops[d], td[d])) {
                return Err(SimpError::InvalidMap(format!(
                    "cell {c} has a malformed image operator"
                )));
            }
        }
        let m = SMap {
            source,
            target,
            images,
        };
        for c in 0..m.source.len() {
            for d in 0..D {
                for (i, f) in m.source.cell(c).faces[d].iter().enumerate() {
                    if m.apply(f) != m.target.face(&m.images[c], d, i) {
                        return Err(SimpError::InvalidMap(format!(
                            "cell {c} does not commute with face {d}/{i}"
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn identity(x: Arc<Complex<D>>) -> Self {
        let images = (0..x.len()).map(|c| x.nondeg(c)).collect();
        SMap {
            source: x.clone(),
            target: x,
            images,
        }
    }

    pub fn apply(&self, x: &Simplex<D>) -> Simplex<D> {
        self.target.apply(&self.images[x.cell], &x.ops)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SMap<D>) -> Result<SMap<D>, SimpError> {
        if !same_complex(&self.target, &g.source) {
            return Err(SimpError::InvalidMap(
                "composition of non-composable maps".into(),
            ));
        }
        Ok(SMap {
            source: self.source.clone(),
            target: g.target.clone(),
            images: self.images.iter().map(|s| g.apply(s)).collect(),
        })
    }

    /// Bijective on nondegenerate cells.
    pub fn is_iso(&self) -> bool {
        if self.source.len() != self.target.len() {
            return false;
        }
        let mut seen = vec![false; self.target.len()];
        for s in &self.images {
            if !s.is_nondegenerate() || seen[s.cell] {
                return false;
            }
            seen[s.cell] = true;
        }
        true
    }

    /// Injective on nondegenerate cells, with nondegenerate images.
    pub fn is_cell_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.images
            .iter()
            .all(|s| s.is_nondegenerate() && !std::mem::replace(&mut seen[s.cell], true))
    }

    pub fn same_as(&self, other: &SMap<D>) -> bool {
        self.images == other.images && same_complex(&self.target, &other.target)
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<SMap<D>> {
        if !self.is_iso() {
            return None;
        }
        let mut images = vec![None; self.target.len()];
        for (c, s) in self.images.iter().enumerate() {
            images[s.cell] = Some(self.source.nondeg(c));
        }
        Some(SMap {
            source: self.target.clone(),
            target: self.source.clone(),
            images: images.into_iter().map(Option::unwrap).collect(),
        })
    }
}

pub fn same_complex<const D: usize>(a: &Arc<Complex<D>>, b: &Arc<Complex<D>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
