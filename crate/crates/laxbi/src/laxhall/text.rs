//! Line-oriented format for bialgebra simplices.
//!
//! ```text
//! unstr k=1
//! phi dims=2,1 maps=0.2
//! theta 0 s=1 n=2
//! diagram 0 0 values=0.0.0.0.0.0
//! edge 0 0 0 alg src=0 tgt=0 fibers=none
//! cart 0 0 0 0 alg src=0 tgt=1 fibers=-
//! f 0 map=0
//! gamma 0 0 0 alg src=0 tgt=0 fibers=none
//! ```
//! Lists are joined by `.` with `-` for an empty list; a pointed map sends
//! `x` to the basepoint.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{LaxError, UnstrBialgSimplex};
use crate::ordalg::{AlgMorphism, BialgFunctor, PyrDiagram};
use crate::twistposet::DeltaOpSimplex;

fn list(xs: &[usize]) -> String {
    if xs.is_empty() {
        "-".into()
    } else {
        xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
    }
}

fn perr(line: usize, msg: impl Into<String>) -> LaxError {
    LaxError::Parse { line, msg: msg.into() }
}

fn parse_list(line: usize, s: &str) -> Result<Vec<usize>, LaxError> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split('.')
        .map(|t| t.parse().map_err(|_| perr(line, format!("bad number '{t}'"))))
        .collect()
}

fn field<'a>(line: usize, tok: Option<&'a str>, key: &str) -> Result<&'a str, LaxError> {
    tok.and_then(|t| t.strip_prefix(key)?.strip_prefix('='))
        .ok_or_else(|| perr(line, format!("expected {key}=")))
}

fn index(line: usize, tok: Option<&str>) -> Result<usize, LaxError> {
    tok.and_then(|t| t.parse().ok()).ok_or_else(|| perr(line, "expected an index"))
}

fn alg(line: usize, rest: &[&str]) -> Result<AlgMorphism, LaxError> {
    rest.join(" ").parse().map_err(|e| perr(line, format!("{e}")))
}

#[derive(Default)]
struct PartialTheta {
    s: usize,
    n: usize,
    values: BTreeMap<usize, Vec<usize>>,
    edges: BTreeMap<(usize, usize), AlgMorphism>,
    cart: BTreeMap<(usize, usize, usize), AlgMorphism>,
}

impl UnstrBialgSimplex {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "unstr k={}", self.k()).unwrap();
        let maps: Vec<String> = self.phi.maps().iter().map(|m| list(m)).collect();
        writeln!(
            s,
            "phi dims={} maps={}",
            list(self.phi.dims()),
            if maps.is_empty() { "none".into() } else { maps.join("|") }
        )
        .unwrap();
        for (i, t) in self.theta.iter().enumerate() {
            writeln!(s, "theta {i} s={} n={}", t.s, t.n).unwrap();
            for (mask, d) in t.diagrams.iter().enumerate() {
                writeln!(s, "diagram {i} {mask} values={}", list(&d.values)).unwrap();
                for (e, m) in d.maps.iter().enumerate() {
                    writeln!(s, "edge {i} {mask} {e} {m}").unwrap();
                }
            }
            for (&(mask, u), maps) in &t.cart {
                for (o, m) in maps.iter().enumerate() {
                    writeln!(s, "cart {i} {mask} {u} {o} {m}").unwrap();
                }
            }
        }
        for (i, f) in self.f.iter().enumerate() {
            let xs: Vec<String> = f.iter().map(|x| x.map_or("x".into(), |y| y.to_string())).collect();
            writeln!(s, "f {i} map={}", if xs.is_empty() { "-".into() } else { xs.join(".") }).unwrap();
        }
        for (i, g) in self.gamma.iter().enumerate() {
            for (mask, comps) in g.iter().enumerate() {
                for (o, m) in comps.iter().enumerate() {
                    writeln!(s, "gamma {i} {mask} {o} {m}").unwrap();
                }
            }
        }
        s
    }

    /// Parses [`UnstrBialgSimplex::to_text`] output and validates the result.
    pub fn parse(text: &str) -> Result<Self, LaxError> {
        let mut k = None;
        let mut phi = None;
        let mut thetas: BTreeMap<usize, PartialTheta> = BTreeMap::new();
        let mut f: BTreeMap<usize, Vec<Option<usize>>> = BTreeMap::new();
        let mut gamma: BTreeMap<(usize, usize, usize), AlgMorphism> = BTreeMap::new();
        for (ln, l) in text.lines().enumerate() {
            let ln = ln + 1;
            let toks: Vec<&str> = l.split_whitespace().collect();
            let Some(&head) = toks.first().filter(|h| !h.starts_with('#')) else {
                continue;
            };
            let mut it = toks[1..].iter().copied();
            match head {
                "unstr" => k = Some(field(ln, it.next(), "k")?.parse::<usize>().map_err(|_| perr(ln, "bad k"))?),
                "phi" => {
                    let dims = parse_list(ln, field(ln, it.next(), "dims")?)?;
                    let maps = match field(ln, it.next(), "maps")? {
                        "none" => Vec::new(),
                        m => m.split('|').map(|x| parse_list(ln, x)).collect::<Result<_, _>>()?,
                    };
                    phi = Some(DeltaOpSimplex::new(dims, maps).map_err(|e| perr(ln, e.to_string()))?);
                }
                "theta" => {
                    let i = index(ln, it.next())?;
                    let s = field(ln, it.next(), "s")?.parse().map_err(|_| perr(ln, "bad s"))?;
                    let n = field(ln, it.next(), "n")?.parse().map_err(|_| perr(ln, "bad n"))?;
                    thetas.insert(i, PartialTheta { s, n, ..Default::default() });
                }
                "diagram" | "edge" | "cart" => {
                    let i = index(ln, it.next())?;
                    let t = thetas.get_mut(&i).ok_or_else(|| perr(ln, "undeclared theta"))?;
                    let mask = index(ln, it.next())?;
                    match head {
                        "diagram" => {
                            t.values.insert(mask, parse_list(ln, field(ln, it.next(), "values")?)?);
                        }
                        "edge" => {
                            let e = index(ln, it.next())?;
                            t.edges.insert((mask, e), alg(ln, &toks[4..])?);
                        }
                        _ => {
                            let u = index(ln, it.next())?;
                            let o = index(ln, it.next())?;
                            t.cart.insert((mask, u, o), alg(ln, &toks[5..])?);
                        }
                    }
                }
                "f" => {
                    let i = index(ln, it.next())?;
                    let m = field(ln, it.next(), "map")?;
                    let xs = if m == "-" {
                        Vec::new()
                    } else {
                        m.split('.')
                            .map(|x| match x {
                                "x" => Ok(None),
                                _ => x.parse().map(Some).map_err(|_| perr(ln, format!("bad entry '{x}'"))),
                            })
                            .collect::<Result<_, _>>()?
                    };
                    f.insert(i, xs);
                }
                "gamma" => {
                    let i = index(ln, it.next())?;
                    let mask = index(ln, it.next())?;
                    let o = index(ln, it.next())?;
                    gamma.insert((i, mask, o), alg(ln, &toks[4..])?);
                }
                _ => return Err(perr(ln, format!("unknown record '{head}'"))),
            }
        }
        let k = k.ok_or_else(|| perr(1, "missing 'unstr' header"))?;
        let phi = phi.ok_or_else(|| perr(1, "missing 'phi' record"))?;
        if phi.k() != k {
            return Err(perr(1, "phi does not have k maps"));
        }
        let mut theta = Vec::new();
        for i in 0..=k {
            let t = thetas.remove(&i).ok_or_else(|| perr(1, format!("missing theta {i}")))?;
            let mut diagrams = Vec::new();
            for mask in 0..1usize << t.s {
                let values = t.values.get(&mask).cloned().ok_or_else(|| perr(1, format!("theta {i}: missing diagram {mask}")))?;
                let maps = t.edges.range((mask, 0)..(mask + 1, 0)).map(|(_, m)| m.clone()).collect();
                diagrams.push(PyrDiagram::new(t.n, values, maps).map_err(|e| perr(1, format!("theta {i} diagram {mask}: {e}")))?);
            }
            let mut cart: BTreeMap<(usize, usize), Vec<AlgMorphism>> = BTreeMap::new();
            for (&(mask, u, _), m) in &t.cart {
                cart.entry((mask, u)).or_default().push(m.clone());
            }
            theta.push(BialgFunctor { s: t.s, n: t.n, diagrams, cart });
        }
        let f: Vec<_> = (0..k).map(|i| f.remove(&i).ok_or_else(|| perr(1, format!("missing f {i}")))).collect::<Result<_, _>>()?;
        let mut gs = vec![Vec::new(); k];
        for ((i, mask, _), m) in gamma {
            let g: &mut Vec<Vec<AlgMorphism>> = gs.get_mut(i).ok_or_else(|| perr(1, format!("gamma {i} out of range")))?;
            if g.len() <= mask {
                g.resize(mask + 1, Vec::new());
            }
            g[mask].push(m);
        }
        UnstrBialgSimplex::new(f, phi, theta, gs)
    }
}
