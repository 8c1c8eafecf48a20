use std::collections::HashMap;

use super::alpha::{chain_functor, ChainKind};
use super::master::{master_diagram, MasterDiagram};
use super::LaxError;
use crate::ordalg::{compose_alg, pyrnc_map, AlgMorphism, BialgFunctor, Endpoint};
use crate::spanengine::{
    cart_domain, rke_cartesian, sing_wedge_domain, validate_cell, CellFunctor, CellKey, CellReport,
};
use crate::twistposet::{
    groth_posets, kappa_bar, m_of_gamma, DeltaOpSimplex, FinPoset, GrothPosets,
};

/// Components of a natural isomorphism of bialgebra functors, indexed by
/// subset bitmask and then by `Pyr^nc` object.
pub type NatIso = Vec<Vec<AlgMorphism>>;

/// A `k`-simplex of the unstraightened bialgebra category: pointed maps
/// `f_i: f(i) -> f(i+1)`, the simplex `φ`, functors `θ_i` over
/// `(f(i), φ(i))` and isomorphisms `γ_i: (f_i, φ_i)_* θ_i ≅ θ_{i+1}`.
#[derive(Clone, Debug)]
pub struct UnstrBialgSimplex {
    pub f: Vec<Vec<Option<usize>>>,
    pub phi: DeltaOpSimplex,
    pub theta: Vec<BialgFunctor>,
    pub gamma: Vec<NatIso>,
}

fn identity_iso(t: &BialgFunctor) -> NatIso {
    t.diagrams
        .iter()
        .map(|d| d.values.iter().map(|&v| AlgMorphism::identity(v)).collect())
        .collect()
}

fn compose_f(f: &[Option<usize>], g: &[Option<usize>]) -> Vec<Option<usize>> {
    f.iter().map(|x| x.and_then(|y| g[y])).collect()
}

fn compose_iso(a: &NatIso, b: &NatIso) -> Result<NatIso, LaxError> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            x.iter()
                .zip(y)
                .map(|(p, q)| compose_alg(p, q).map_err(LaxError::from))
                .collect()
        })
        .collect()
}

/// `(f, φ)_* γ` for an isomorphism `γ` between functors on `f`'s source.
fn pushforward_iso(
    gamma: &NatIso,
    s: usize,
    n: usize,
    f: &[Option<usize>],
    t_size: usize,
    phi: &[usize],
) -> Result<NatIso, LaxError> {
    let pf = pyrnc_map(phi, n)?;
    let pre = |v: usize| {
        (0..s)
            .filter(|&x| f[x].is_some_and(|t| v >> t & 1 == 1))
            .fold(0, |m, x| m | 1 << x)
    };
    Ok((0..1usize << t_size)
        .map(|v| {
            pf.on_objects
                .iter()
                .map(|&o| gamma[pre(v)][o].clone())
                .collect()
        })
        .collect())
}

impl UnstrBialgSimplex {
    pub fn new(
        f: Vec<Vec<Option<usize>>>,
        phi: DeltaOpSimplex,
        theta: Vec<BialgFunctor>,
        gamma: Vec<NatIso>,
    ) -> Result<Self, LaxError> {
        let k = phi.k();
        if theta.len() != k + 1 || f.len() != k || gamma.len() != k {
            return Err(LaxError::InvalidInput(
                "simplex data of the wrong length".into(),
            ));
        }
        for (i, t) in theta.iter().enumerate() {
            t.validate()
                .map_err(|e| LaxError::InvalidInput(format!("θ_{i}: {e:?}")))?;
            if t.n != phi.dim(i) {
                return Err(LaxError::InvalidInput(format!(
                    "θ_{i} has length {} over [{}]",
                    t.n,
                    phi.dim(i)
                )));
            }
        }
        for i in 0..k {
            let pf = theta[i].pushforward(&f[i], theta[i + 1].s, &phi.maps()[i])?;
            check_iso(&pf, &theta[i + 1], &gamma[i])
                .map_err(|e| LaxError::InvalidInput(format!("γ_{i}: {e}")))?;
        }
        Ok(UnstrBialgSimplex {
            f,
            phi,
            theta,
            gamma,
        })
    }

    /// The simplex whose later functors are the pushforwards of `θ_0`
    /// along `φ`, with identity transports and identity pointed maps.
    pub fn from_base(theta0: BialgFunctor, phi: DeltaOpSimplex) -> Result<Self, LaxError> {
        let s = theta0.s;
        let ident: Vec<Option<usize>> = (0..s).map(Some).collect();
        let mut theta = vec![theta0];
        for i in 0..phi.k() {
            let next = theta[i].pushforward(&ident, s, &phi.maps()[i])?;
            theta.push(next);
        }
        let gamma = theta[1..].iter().map(identity_iso).collect();
        Self::new(vec![ident; phi.k()], phi, theta, gamma)
    }

    pub fn k(&self) -> usize {
        self.phi.k()
    }

    pub fn s(&self) -> usize {
        self.theta[0].s
    }

    /// `ψ^* u` for a monotone `ψ: [k'] -> [k]`.
    pub fn restrict(&self, psi: &[usize]) -> Result<Self, LaxError> {
        let phi = self.phi.compose(psi)?;
        let theta: Vec<BialgFunctor> = psi.iter().map(|&b| self.theta[b].clone()).collect();
        let mut f = Vec::new();
        let mut gamma = Vec::new();
        for w in psi.windows(2) {
            let (b, b2) = (w[0], w[1]);
            let mut ff: Vec<Option<usize>> = (0..self.theta[b].s).map(Some).collect();
            let mut g = identity_iso(&self.theta[b]);
            for c in b..b2 {
                // g: (f_{b,c}, φ_{b,c})_* θ_b ≅ θ_c, pushed one step further.
                let pushed = pushforward_iso(
                    &g,
                    self.theta[c].s,
                    self.phi.dim(c),
                    &self.f[c],
                    self.theta[c + 1].s,
                    &self.phi.maps()[c],
                )?;
                g = compose_iso(&pushed, &self.gamma[c])?;
                ff = compose_f(&ff, &self.f[c]);
            }
            f.push(ff);
            gamma.push(g);
        }
        Self::new(f, phi, theta, gamma)
    }
}

fn check_iso(src: &BialgFunctor, tgt: &BialgFunctor, gamma: &NatIso) -> Result<(), String> {
    if src.s != tgt.s || src.n != tgt.n || gamma.len() != src.diagrams.len() {
        return Err("shape mismatch".into());
    }
    for (mask, (a, b)) in src.diagrams.iter().zip(&tgt.diagrams).enumerate() {
        let g = &gamma[mask];
        if g.len() != a.values.len() {
            return Err(format!("subset {mask} has the wrong number of components"));
        }
        for (o, c) in g.iter().enumerate() {
            if !c.is_bijection() || c.source() != a.values[o] || c.target() != b.values[o] {
                return Err(format!("component ({mask}, {o}) is not an isomorphism"));
            }
        }
        for (e, edge) in a.pyr.edges.iter().enumerate() {
            let l = compose_alg(&g[edge.src], &b.maps[e]).map_err(|e| e.to_string())?;
            let r = compose_alg(&a.maps[e], &g[edge.tgt]).map_err(|e| e.to_string())?;
            if l != r {
                return Err(format!("not natural along edge {e} of subset {mask}"));
            }
        }
    }
    for (&(mask, t), maps) in &src.cart {
        for (o, m) in maps.iter().enumerate() {
            let l = compose_alg(&gamma[mask][o], &tgt.cart[&(mask, t)][o])
                .map_err(|e| e.to_string())?;
            let r = compose_alg(m, &gamma[mask | 1 << t][o]).map_err(|e| e.to_string())?;
            if l != r {
                return Err(format!("not natural along the inclusion ({mask}, {t})"));
            }
        }
    }
    Ok(())
}

/// The cell of a simplex on `Cart(f(0)) × Pyr(M_φ)`, with the data it was built from.
#[derive(Clone, Debug)]
pub struct BetaSimplex {
    pub groth: GrothPosets,
    pub s: usize,
    pub master: MasterDiagram,
    pub partial: CellFunctor<CellKey>,
    pub cell: CellFunctor<CellKey>,
}

impl BetaSimplex {
    pub fn validate(&self) -> Result<CellReport, LaxError> {
        Ok(validate_cell(&self.cell, &self.groth, self.s)?)
    }

    /// The value at `(U, [x;y])` for elements `x`, `y` of `M_φ`.
    pub fn value(
        &self,
        mask: usize,
        x: (usize, usize),
        y: (usize, usize),
    ) -> Option<&std::sync::Arc<crate::simpcore::BiSimplicialSet>> {
        let m = &self.groth.m;
        self.cell
            .value_at(&(mask, (m.index_of(&x)?, m.index_of(&y)?)))
    }
}

/// Master diagram, colimits over the cone regions on `Sing × Wedge`, then the
/// cartesian extension.
pub fn beta_simplex(u: &UnstrBialgSimplex) -> Result<BetaSimplex, LaxError> {
    let g = groth_posets(&u.phi);
    let s = u.s();
    let diagrams: Vec<_> = (0..s).map(|t| u.theta[0].singleton(t)).collect();
    let master = master_diagram(&g, &diagrams)?;
    let domain = sing_wedge_domain(&g.m, s, &g.wedge);
    let mut points = Vec::with_capacity(domain.len());
    for &(mask, (x, y)) in domain.elements() {
        let t = mask.trailing_zeros() as usize;
        let f = &master.per[t];
        let region = kappa_bar(&g, x, y);
        let objs: Vec<usize> = (0..f.len())
            .filter(|&i| {
                region.contains(f.domain.element(i).0) && region.contains(f.domain.element(i).1)
            })
            .collect();
        let pw = f.colimit_over(&objs)?;
        points.push((objs, pw));
    }
    let mut covers = HashMap::new();
    for (i, j) in domain.covers() {
        let ((objs, pw), (objs2, pw2)) = (&points[i], &points[j]);
        let mut cocone = Vec::with_capacity(objs.len());
        for o in objs {
            let p = objs2.iter().position(|q| q == o).ok_or_else(|| {
                LaxError::InvalidInput(format!(
                    "cone regions are not nested along {:?} -> {:?}",
                    domain.element(i),
                    domain.element(j)
                ))
            })?;
            cocone.push(pw2.legs[p].clone());
        }
        covers.insert((i, j), pw.induced(objs, &pw2.object, &cocone)?);
    }
    let values = points.iter().map(|(_, pw)| pw.object.clone()).collect();
    let partial = CellFunctor::from_covers(domain, values, covers)?;
    let cell = rke_cartesian(&partial, &g.m, s)?;
    Ok(BetaSimplex {
        groth: g,
        s,
        master,
        partial,
        cell,
    })
}

/// Precomposition of a cell on `Cart(S) × Pyr(M)` with `Cart(T) -> Cart(S)`,
/// `V ↦ f⁻¹ V`, and `Pyr(p)` for a monotone `p: P -> M`.
pub fn pull_cell(
    cell: &CellFunctor<CellKey>,
    f: &[Option<usize>],
    t_size: usize,
    p_poset: &FinPoset<(usize, usize)>,
    p: &[usize],
) -> Result<CellFunctor<CellKey>, LaxError> {
    let domain = cart_domain(p_poset, t_size);
    let pre = |v: usize| {
        (0..f.len())
            .filter(|&x| f[x].is_some_and(|t| v >> t & 1 == 1))
            .fold(0, |m, x| m | 1 << x)
    };
    let along: Vec<usize> = domain
        .elements()
        .iter()
        .map(|&(v, (x, y))| {
            cell.domain
                .index_of(&(pre(v), (p[x], p[y])))
                .ok_or_else(|| LaxError::InvalidInput("pullback leaves the domain".into()))
        })
        .collect::<Result<_, _>>()?;
    Ok(cell.pullback(domain, &along)?)
}

/// Outcome of [`check_inert_equiv`] for one edge of the simplex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InertReport {
    pub cell: CellReport,
    /// A vertical comparison `(mask, top interval, middle interval)` that is
    /// not an isomorphism.
    pub non_iso_vertical: Option<(usize, (usize, usize), (usize, usize))>,
    pub top_row_matches: bool,
    pub bottom_row_matches: bool,
}

impl InertReport {
    pub fn passed(&self) -> bool {
        self.cell.passed()
            && self.non_iso_vertical.is_none()
            && self.top_row_matches
            && self.bottom_row_matches
    }
}

/// For every edge `i -> i+1` of an inert simplex, pulls the cell back to
/// `Cart f(i+1) × Pyr([m] × [1])` and checks that the two rows are the
/// cells of the endpoints and that the vertical comparisons are isomorphisms.
pub fn check_inert_equiv(u: &UnstrBialgSimplex) -> Result<Vec<InertReport>, LaxError> {
    if !u.phi.is_inert() {
        return Err(LaxError::NotInert);
    }
    let mut out = Vec::new();
    for i in 0..u.k() {
        let e = u.restrict(&[i, i + 1])?;
        let m = e.phi.dim(1);
        let phi = e.phi.maps()[0].clone();
        let beta = beta_simplex(&e)?;
        let t_size = e.theta[1].s;
        let grid = FinPoset::new(
            (0..=m).flat_map(|a| [(a, 1), (a, 0)]).collect(),
            |&(a, b), &(a2, b2)| a <= a2 && b >= b2,
        )
        .expect("product order");
        let gm = &beta.groth.m;
        let p: Vec<usize> = grid
            .elements()
            .iter()
            .map(|&(a, b)| {
                if b == 1 {
                    gm.index_of(&(a, 1)).unwrap()
                } else {
                    gm.index_of(&(phi[a], 0)).unwrap()
                }
            })
            .collect();
        let pulled = pull_cell(&beta.cell, &e.f[0], t_size, &grid, &p)?;
        let mut report = InertReport {
            cell: beta.validate()?,
            ..Default::default()
        };
        'outer: for mask in 0..1usize << t_size {
            for a in 0..=m {
                for a2 in a..=m {
                    let idx = |x: (usize, usize), y: (usize, usize)| {
                        pulled
                            .domain
                            .index_of(&(
                                mask,
                                (grid.index_of(&x).unwrap(), grid.index_of(&y).unwrap()),
                            ))
                            .unwrap()
                    };
                    let top = idx((a, 1), (a2, 1));
                    let mid = idx((a, 1), (a2, 0));
                    let bot = idx((a, 0), (a2, 0));
                    for (from, name) in [(top, ((a, 1), (a2, 1))), (bot, ((a, 0), (a2, 0)))] {
                        if !pulled.map(from, mid).unwrap().is_iso() {
                            report.non_iso_vertical = Some((mask, (name.0 .0, name.1 .0), (a, a2)));
                            break 'outer;
                        }
                    }
                }
            }
        }
        // Rows against the cells of the two endpoints.
        let line = FinPoset::new(
            (0..=m).map(|a| (a, 0)).collect(),
            |x: &(usize, usize), y| x.0 <= y.0,
        )
        .expect("chain");
        let top_map: Vec<usize> = (0..=m).map(|a| grid.index_of(&(a, 1)).unwrap()).collect();
        let bot_map: Vec<usize> = (0..=m).map(|a| grid.index_of(&(a, 0)).unwrap()).collect();
        let ident: Vec<Option<usize>> = (0..t_size).map(Some).collect();
        let top_row = pull_cell(&pulled, &ident, t_size, &line, &top_map)?;
        let bot_row = pull_cell(&pulled, &ident, t_size, &line, &bot_map)?;
        let b1 = beta_simplex(&e.restrict(&[1])?)?;
        let b0 = beta_simplex(&e.restrict(&[0])?)?;
        let lm = &b1.groth.m;
        let top_expected = pull_cell(
            &b1.cell,
            &ident,
            t_size,
            &line,
            &(0..=m)
                .map(|a| lm.index_of(&(a, 0)).unwrap())
                .collect::<Vec<_>>(),
        )?;
        let l0 = &b0.groth.m;
        let bot_expected = pull_cell(
            &b0.cell,
            &e.f[0],
            t_size,
            &line,
            &(0..=m)
                .map(|a| l0.index_of(&(phi[a], 0)).unwrap())
                .collect::<Vec<_>>(),
        )?;
        report.top_row_matches = top_row.natural_iso(&top_expected).is_some();
        report.bottom_row_matches = bot_row.natural_iso(&bot_expected).is_some();
        out.push(report);
    }
    Ok(out)
}

/// Outcome of [`check_alpha_beta_compat`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatReport {
    pub cell: CellReport,
    /// The cell agrees with the cartesian extension of `α(θ) ∘ Pyr(p_φ)`
    /// restricted to `Sing × Wedge`.
    pub matches: bool,
    /// First wedge interval where the values already differ.
    pub wedge_mismatch: Option<((usize, usize), (usize, usize))>,
}

impl CompatReport {
    pub fn passed(&self) -> bool {
        self.cell.passed() && self.matches
    }
}

/// Compares the cell of the bialgebra simplex `ι(θ)` with the lax algebra
/// (or coalgebra) structure `α(θ_0)`, pulled back along `p_φ(a, b) = φ_{b,0}(a)`.
pub fn check_alpha_beta_compat(
    phi: &DeltaOpSimplex,
    size0: usize,
    chain_maps: &[AlgMorphism],
    end: Endpoint,
) -> Result<CompatReport, LaxError> {
    let theta0 = BialgFunctor::embed_endpoints(size0, chain_maps, end)?;
    let u = UnstrBialgSimplex::from_base(theta0, phi.clone())?;
    let beta = beta_simplex(&u)?;
    let kind = match end {
        Endpoint::Alg => ChainKind::Alg,
        Endpoint::Coalg => ChainKind::Coalg,
    };
    let alpha = chain_functor(size0, chain_maps, kind)?;
    let g = &beta.groth;
    let p: Vec<usize> =
        g.m.elements()
            .iter()
            .map(|&(a, b)| phi.apply(b, 0, a))
            .collect();
    let dom = sing_wedge_domain(&g.m, 1, &g.wedge);
    let along: Vec<usize> = dom
        .elements()
        .iter()
        .map(|&(_, (x, y))| alpha.domain.index_of(&(p[x], p[y])).unwrap())
        .collect();
    let partial = alpha.pullback(dom, &along)?;
    let expected = rke_cartesian(&partial, &g.m, 1)?;
    let wedge_mismatch = (0..partial.len())
        .find(|&i| !crate::simpcore::isomorphic(&partial.values[i], &beta.partial.values[i]))
        .map(|i| {
            let (_, (x, y)) = *partial.domain.element(i);
            (*g.m.element(x), *g.m.element(y))
        });
    Ok(CompatReport {
        cell: beta.validate()?,
        matches: beta.cell.natural_iso(&expected).is_some(),
        wedge_mismatch,
    })
}

/// `β(ψ^* u)` against the restriction of `β(u)` along `Cart(f_{0,ψ0}) × Pyr(M(ψ))`.
pub fn check_simplicial(u: &UnstrBialgSimplex, psi: &[usize]) -> Result<bool, LaxError> {
    let beta = beta_simplex(u)?;
    let r = u.restrict(psi)?;
    let direct = beta_simplex(&r)?;
    let mut f: Vec<Option<usize>> = (0..u.s()).map(Some).collect();
    for c in 0..psi[0] {
        f = compose_f(&f, &u.f[c]);
    }
    let mpsi = m_of_gamma(&u.phi, psi)?;
    let pulled = pull_cell(&beta.cell, &f, r.s(), &direct.groth.m, &mpsi)?;
    Ok(pulled.natural_iso(&direct.cell).is_some())
}
