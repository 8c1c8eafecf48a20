use std::fmt;

use super::AlgError;

/// A map of finite sets `{0..source} -> {0..target}` with a total order on
/// every fiber. `fibers[y]` lists `p⁻¹(y)` in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgMorphism {
    source: usize,
    fibers: Vec<Vec<usize>>,
}

impl AlgMorphism {
    pub fn new(source: usize, fibers: Vec<Vec<usize>>) -> Result<Self, AlgError> {
        let mut seen = vec![false; source];
        for f in &fibers {
            for &x in f {
                if x >= source || std::mem::replace(&mut seen[x], true) {
                    return Err(AlgError::InvalidFibers(format!(
                        "element {x} repeated or out of range"
                    )));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(AlgError::InvalidFibers(
                "fibers do not cover the source".into(),
            ));
        }
        Ok(AlgMorphism { source, fibers })
    }

    /// Fibers ordered by the natural order of the source.
    pub fn from_map(map: &[usize], target: usize) -> Result<Self, AlgError> {
        let mut fibers = vec![Vec::new(); target];
        for (x, &y) in map.iter().enumerate() {
            if y >= target {
                return Err(AlgError::InvalidFibers(format!("image {y} out of range")));
            }
            fibers[y].push(x);
        }
        Ok(AlgMorphism {
            source: map.len(),
            fibers,
        })
    }

    pub fn identity(n: usize) -> Self {
        AlgMorphism {
            source: n,
            fibers: (0..n).map(|x| vec![x]).collect(),
        }
    }

    /// The multiplication `m: 2 -> 1`.
    pub fn mult() -> Self {
        AlgMorphism {
            source: 2,
            fibers: vec![vec![0, 1]],
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.fibers.len()
    }

    pub fn fibers(&self) -> &[Vec<usize>] {
        &self.fibers
    }

    pub fn fiber(&self, y: usize) -> &[usize] {
        &self.fibers[y]
    }

    pub fn map(&self) -> Vec<usize> {
        let mut m = vec![0; self.source];
        for (y, f) in self.fibers.iter().enumerate() {
            for &x in f {
                m[x] = y;
            }
        }
        m
    }

    /// Position of each source element within its fiber.
    pub fn positions(&self) -> Vec<usize> {
        let mut m = vec![0; self.source];
        for f in &self.fibers {
            for (i, &x) in f.iter().enumerate() {
                m[x] = i;
            }
        }
        m
    }

    pub fn max_fiber(&self) -> usize {
        self.fibers.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_bijection(&self) -> bool {
        self.fibers.iter().all(|f| f.len() == 1)
    }

    pub fn same_underlying(&self, other: &AlgMorphism) -> bool {
        self.source == other.source && self.target() == other.target() && self.map() == other.map()
    }

    /// `self ⊔ other`.
    pub fn coproduct(&self, other: &AlgMorphism) -> AlgMorphism {
        let mut fibers = self.fibers.clone();
        fibers.extend(
            other
                .fibers
                .iter()
                .map(|f| f.iter().map(|x| x + self.source).collect()),
        );
        AlgMorphism {
            source: self.source + other.source,
            fibers,
        }
    }

    /// Every morphism `source -> target` whose fibers have at most
    /// `max_fiber` elements, with every fiber order.
    pub fn enumerate(source: usize, target: usize, max_fiber: usize) -> Vec<AlgMorphism> {
        fn go(
            x: usize,
            source: usize,
            fibers: &mut Vec<Vec<usize>>,
            max: usize,
            out: &mut Vec<AlgMorphism>,
        ) {
            if x == source {
                out.push(AlgMorphism {
                    source,
                    fibers: fibers.clone(),
                });
                return;
            }
            for y in 0..fibers.len() {
                if fibers[y].len() < max {
                    for pos in 0..=fibers[y].len() {
                        fibers[y].insert(pos, x);
                        go(x + 1, source, fibers, max, out);
                        fibers[y].remove(pos);
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(
            0,
            source,
            &mut vec![Vec::new(); target],
            max_fiber,
            &mut out,
        );
        out
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Option<AlgMorphism> {
        if !self.is_bijection() || self.source != self.target() {
            return None;
        }
        AlgMorphism::from_map(
            &self.fibers.iter().map(|f| f[0]).collect::<Vec<_>>(),
            self.source,
        )
        .ok()
    }
}

/// `g ∘ f` with fibers ordered as an ordinal sum: first by the position in
/// the fiber of `g`, then within the fiber of `f`.
pub fn compose_alg(f: &AlgMorphism, g: &AlgMorphism) -> Result<AlgMorphism, AlgError> {
    if f.target() != g.source {
        return Err(AlgError::TypeMismatch(format!(
            "target {} vs source {}",
            f.target(),
            g.source
        )));
    }
    let fibers = g
        .fibers
        .iter()
        .map(|gf| {
            gf.iter()
                .flat_map(|&y| f.fibers[y].iter().copied())
                .collect()
        })
        .collect();
    Ok(AlgMorphism {
        source: f.source,
        fibers,
    })
}

fn list(xs: &[usize]) -> String {
    if xs.is_empty() {
        "-".into()
    } else {
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl fmt::Display for AlgMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fibers: Vec<String> = self.fibers.iter().map(|x| list(x)).collect();
        write!(
            f,
            "alg src={} tgt={} fibers={}",
            self.source,
            self.target(),
            if fibers.is_empty() {
                "none".into()
            } else {
                fibers.join("|")
            }
        )
    }
}

impl std::str::FromStr for AlgMorphism {
    type Err = AlgError;

    fn from_str(s: &str) -> Result<Self, AlgError> {
        let bad = |m: &str| AlgError::Parse(m.to_string());
        let mut toks = s.split_whitespace();
        if toks.next() != Some("alg") {
            return Err(bad("expected 'alg'"));
        }
        let mut field = |k: &str| -> Result<String, AlgError> {
            toks.next()
                .and_then(|t| t.strip_prefix(k))
                .and_then(|t| t.strip_prefix('='))
                .map(str::to_string)
                .ok_or_else(|| bad(&format!("missing field {k}")))
        };
        let src: usize = field("src")?.parse().map_err(|_| bad("bad src"))?;
        let tgt: usize = field("tgt")?.parse().map_err(|_| bad("bad tgt"))?;
        let fs = field("fibers")?;
        let fibers: Vec<Vec<usize>> = if fs == "none" {
            Vec::new()
        } else {
            fs.split('|')
                .map(|f| {
                    if f == "-" {
                        Ok(Vec::new())
                    } else {
                        f.split('.')
                            .map(|x| x.parse().map_err(|_| bad("bad element")))
                            .collect()
                    }
                })
                .collect::<Result<_, _>>()?
        };
        if fibers.len() != tgt {
            return Err(bad("fiber count does not match tgt"));
        }
        AlgMorphism::new(src, fibers)
    }
}
