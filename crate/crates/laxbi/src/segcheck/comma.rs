use std::collections::HashMap;

use crate::protoexact::{FinGroup, FinGroupoid, GroupoidFunctor};

use super::SegError;

/// A cospan `G --F--> K <--H-- G'` of skeletal finite groupoids.
#[derive(Clone, Copy, Debug)]
pub struct GroupoidCospan<'a> {
    pub left: &'a FinGroupoid,
    pub f: &'a GroupoidFunctor,
    pub right: &'a FinGroupoid,
    pub h: &'a GroupoidFunctor,
    pub apex: &'a FinGroupoid,
}

impl GroupoidCospan<'_> {
    fn validate(&self) -> Result<(), SegError> {
        self.f
            .validate(self.left, self.apex)
            .map_err(|e| SegError::BadCospan(format!("left leg: {e}")))?;
        self.h
            .validate(self.right, self.apex)
            .map_err(|e| SegError::BadCospan(format!("right leg: {e}")))
    }

    /// `(a, a')·φ = H(a') φ F(a)⁻¹`.
    fn act(&self, c: usize, c2: usize, a: usize, a2: usize, phi: usize) -> usize {
        let k = self.apex.aut(self.f.on_class[c]);
        k.mul(
            k.mul(self.h.on_aut[c2][a2], phi),
            k.inv(self.f.on_aut[c][a]),
        )
    }
}

/// The iso-comma groupoid of a cospan: objects `(g, g', φ: F g ≅ H g')`,
/// morphisms pairs `(a, a')` with `H(a') φ = φ' F(a)`.
///
/// Classes are orbits of `Aut(g) × Aut(g')` on `Aut(k)`; automorphism
/// groups are the stabilisers, with elements stored as pairs.
#[derive(Clone, Debug)]
pub struct IsoComma {
    pub groupoid: FinGroupoid,
    /// `(g, g', φ)` representing each class.
    pub objects: Vec<(usize, usize, usize)>,
    /// Stabiliser elements `(a, a')` per class, identity first.
    pub auts: Vec<Vec<(usize, usize)>>,
    pub proj_left: GroupoidFunctor,
    pub proj_right: GroupoidFunctor,
    left: Vec<FinGroup>,
    right: Vec<FinGroup>,
    lookup: HashMap<(usize, usize, usize), (usize, (usize, usize))>,
    aut_index: Vec<HashMap<(usize, usize), usize>>,
}

pub fn iso_comma(c: &GroupoidCospan) -> Result<IsoComma, SegError> {
    c.validate()?;
    let mut objects = Vec::new();
    let mut auts = Vec::new();
    let mut classes = Vec::new();
    let mut labels = Vec::new();
    let mut lookup = HashMap::new();
    for g in 0..c.left.len() {
        let k = c.f.on_class[g];
        for g2 in (0..c.right.len()).filter(|&g2| c.h.on_class[g2] == k) {
            let (ga, gb) = (c.left.aut(g), c.right.aut(g2));
            for phi in 0..c.apex.aut(k).order() {
                if lookup.contains_key(&(g, g2, phi)) {
                    continue;
                }
                let class = objects.len();
                let mut stab = Vec::new();
                for a in 0..ga.order() {
                    for a2 in 0..gb.order() {
                        let psi = c.act(g, g2, a, a2, phi);
                        if psi == phi {
                            stab.push((a, a2));
                        }
                        // phi = (a, a')⁻¹·psi
                        lookup
                            .entry((g, g2, psi))
                            .or_insert((class, (ga.inv(a), gb.inv(a2))));
                    }
                }
                let (group, stab) = FinGroup::from_elements(stab, |&(a, a2), &(b, b2)| {
                    (ga.mul(a, b), gb.mul(a2, b2))
                });
                objects.push((g, g2, phi));
                auts.push(stab);
                classes.push(group);
                labels.push(format!(
                    "({}, {}, {phi})",
                    c.left.labels[g], c.right.labels[g2]
                ));
            }
        }
    }
    let aut_index: Vec<HashMap<(usize, usize), usize>> = auts
        .iter()
        .map(|s| s.iter().enumerate().map(|(i, &p)| (p, i)).collect())
        .collect();
    let proj_left = GroupoidFunctor {
        on_class: objects.iter().map(|o| o.0).collect(),
        on_aut: auts
            .iter()
            .map(|s| s.iter().map(|p| p.0).collect())
            .collect(),
    };
    let proj_right = GroupoidFunctor {
        on_class: objects.iter().map(|o| o.1).collect(),
        on_aut: auts
            .iter()
            .map(|s| s.iter().map(|p| p.1).collect())
            .collect(),
    };
    Ok(IsoComma {
        groupoid: FinGroupoid::new(classes, labels),
        objects,
        auts,
        proj_left,
        proj_right,
        left: c.left.classes.clone(),
        right: c.right.classes.clone(),
        lookup,
        aut_index,
    })
}

impl IsoComma {
    /// The class of `(g, g', φ)` and a pair `(t, t')` moving `φ` onto the
    /// class representative.
    pub fn classify(&self, g: usize, g2: usize, phi: usize) -> Option<(usize, (usize, usize))> {
        self.lookup.get(&(g, g2, phi)).copied()
    }

    /// The functor `X -> G ×_K G'` induced by `A: X -> G`, `B: X -> G'` and
    /// isomorphisms `φ_x: F A x ≅ H B x`. Fails with a description when the
    /// data is not natural.
    pub fn induced(
        &self,
        a: &GroupoidFunctor,
        b: &GroupoidFunctor,
        phi: &[usize],
    ) -> Result<GroupoidFunctor, String> {
        let mut on_class = Vec::new();
        let mut on_aut = Vec::new();
        for x in 0..a.on_class.len() {
            let (y, y2) = (a.on_class[x], b.on_class[x]);
            let (class, (t, t2)) = self
                .classify(y, y2, phi[x])
                .ok_or_else(|| format!("class {x}: no comma object ({y}, {y2}, {})", phi[x]))?;
            let (gl, gr) = (&self.left[y], &self.right[y2]);
            let mut h = Vec::new();
            for (&u, &u2) in a.on_aut[x].iter().zip(&b.on_aut[x]) {
                let p = (
                    gl.mul(gl.mul(t, u), gl.inv(t)),
                    gr.mul(gr.mul(t2, u2), gr.inv(t2)),
                );
                h.push(
                    *self.aut_index[class]
                        .get(&p)
                        .ok_or_else(|| format!("class {x}: automorphism not compatible with φ"))?,
                );
            }
            on_class.push(class);
            on_aut.push(h);
        }
        Ok(GroupoidFunctor { on_class, on_aut })
    }
}

/// Whether a functor of skeletal groupoids is an equivalence: bijective on
/// classes and an isomorphism on every automorphism group. The error names
/// a witness class.
pub fn functor_equiv(
    f: &GroupoidFunctor,
    source: &FinGroupoid,
    target: &FinGroupoid,
) -> Result<(), String> {
    f.validate(source, target).map_err(|e| e.to_string())?;
    let mut hit: Vec<Option<usize>> = vec![None; target.len()];
    for (x, &y) in f.on_class.iter().enumerate() {
        if let Some(x0) = hit[y] {
            return Err(format!(
                "classes {} and {} both map to {}",
                source.labels[x0], source.labels[x], target.labels[y]
            ));
        }
        hit[y] = Some(x);
    }
    if let Some(y) = hit.iter().position(Option::is_none) {
        return Err(format!("class {} is not in the image", target.labels[y]));
    }
    for (x, &y) in f.on_class.iter().enumerate() {
        let mut seen = vec![false; target.aut(y).order()];
        for &a in &f.on_aut[x] {
            seen[a] = true;
        }
        if source.aut(x).order() != target.aut(y).order() || seen.iter().any(|s| !s) {
            return Err(format!(
                "automorphisms of {} (order {}) do not match those of {} (order {})",
                source.labels[x],
                source.aut(x).order(),
                target.labels[y],
                target.aut(y).order()
            ));
        }
    }
    Ok(())
}

/// Equivalence of bare skeletal groupoids by their multisets of
/// automorphism group orders.
pub fn groupoid_equiv(g: &FinGroupoid, h: &FinGroupoid) -> bool {
    g.aut_orders() == h.aut_orders()
}
