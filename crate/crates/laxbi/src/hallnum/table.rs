use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};

use crate::protoexact::{core_groupoid, s_groupoid, Budget, FinGroupoid, ProtoExactCat};

use super::HallError;

/// `Σ 1/|Aut|` over the iso classes.
pub fn gcard(g: &FinGroupoid) -> BigRational {
    g.classes.iter().map(|c| BigRational::new(BigInt::one(), BigInt::from(c.order()))).sum()
}

pub(crate) fn ratio(p: usize, q: usize) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Structure constants of the Hall product and coproduct on the iso classes
/// of objects.
///
/// `product[(c, a, b)] = g^c_{a,b}` counts subobjects `b' ⊆ c` with
/// `b' ≅ b` and `c/b' ≅ a` (so `a` is the quotient and `b` the sub), as
/// `Σ |Aut c| / |Aut x|` over classes of short exact sequences `x`.
/// `coproduct[(c, a, b)] = d_c^{a,b}` is read off the same sequences with
/// the same weight. Zero constants are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallTable {
    pub labels: Vec<String>,
    pub aut: Vec<usize>,
    /// Dimension of each basis class, for vector-space fixtures.
    pub dims: Option<Vec<usize>>,
    pub dmax: Option<usize>,
    pub budget: usize,
    pub product: BTreeMap<(usize, usize, usize), BigRational>,
    pub coproduct: BTreeMap<(usize, usize, usize), BigRational>,
    /// Pairs `(a, b)` whose products leave the truncated category.
    pub unchecked: Vec<(usize, usize)>,
}

pub fn hall_table(x: &ProtoExactCat, budget: Budget) -> Result<HallTable, HallError> {
    let core = core_groupoid(x);
    let classes = x.object_classes();
    let class_of: Vec<usize> = {
        let mut v = vec![0; x.cat.objects()];
        for (k, cl) in classes.iter().enumerate() {
            for &o in cl {
                v[o] = k;
            }
        }
        v
    };
    let s2 = s_groupoid(x, 2, budget)?;
    let node = |p: [usize; 2]| s2.shape.node(&p).expect("S_2 shape");
    let (sub, mid, quot) = (node([0, 1]), node([0, 2]), node([1, 2]));
    let mut product: BTreeMap<(usize, usize, usize), BigRational> = BTreeMap::new();
    for (d, g) in s2.reps.iter().zip(&s2.groupoid.classes) {
        let (b, c, a) = (class_of[d.obj[sub] as usize], class_of[d.obj[mid] as usize], class_of[d.obj[quot] as usize]);
        *product.entry((c, a, b)).or_insert_with(BigRational::zero) += ratio(core.aut(c).order(), g.order());
    }
    let coproduct = product.clone();
    let dims = x.vect.as_ref().map(|_| classes.iter().map(|cl| x.dim(cl[0]).unwrap()).collect::<Vec<_>>());
    let dmax = x.vect.as_ref().map(|v| v.dmax);
    let n = classes.len();
    let mut unchecked = Vec::new();
    if let (Some(dims), Some(dmax)) = (&dims, dmax) {
        for a in 0..n {
            for b in 0..n {
                if dims[a] + dims[b] > dmax {
                    unchecked.push((a, b));
                }
            }
        }
    }
    Ok(HallTable {
        labels: classes.iter().map(|cl| format!("[{}]", x.cat.name(cl[0]))).collect(),
        aut: core.classes.iter().map(|g| g.order()).collect(),
        dims,
        dmax,
        budget: budget.max_classes,
        product,
        coproduct,
        unchecked,
    })
}

impl HallTable {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `g^c_{a,b}`.
    pub fn g(&self, c: usize, a: usize, b: usize) -> BigRational {
        self.product.get(&(c, a, b)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `d_c^{a,b}`.
    pub fn d(&self, c: usize, a: usize, b: usize) -> BigRational {
        self.coproduct.get(&(c, a, b)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Whether every intermediate of a triple product of `a, b, c` stays in
    /// the truncated category.
    pub fn in_budget(&self, parts: &[usize]) -> bool {
        match (&self.dims, self.dmax) {
            (Some(d), Some(m)) => parts.iter().map(|&p| d[p]).sum::<usize>() <= m,
            _ => true,
        }
    }

    /// Coefficient of `d` in `(a·b)·c` and in `a·(b·c)`.
    pub fn triple_product(&self, a: usize, b: usize, c: usize, d: usize) -> (BigRational, BigRational) {
        let n = self.len();
        let left = (0..n).map(|e| self.g(e, a, b) * self.g(d, e, c)).sum();
        let right = (0..n).map(|f| self.g(f, b, c) * self.g(d, a, f)).sum();
        (left, right)
    }

    /// Coefficient of `a⊗b⊗c` in `(Δ⊗1)Δ(d)` and in `(1⊗Δ)Δ(d)`.
    pub fn triple_coproduct(&self, d: usize, a: usize, b: usize, c: usize) -> (BigRational, BigRational) {
        let n = self.len();
        let left = (0..n).map(|e| self.d(d, e, c) * self.d(e, a, b)).sum();
        let right = (0..n).map(|f| self.d(d, a, f) * self.d(f, b, c)).sum();
        (left, right)
    }

    /// Interchange format: header, basis lines, nonzero constants, then
    /// unchecked pairs.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "hall basis={} budget={} dmax={}\n",
            self.len(),
            self.budget,
            self.dmax.map_or("-".to_string(), |d| d.to_string())
        );
        for (i, (l, a)) in self.labels.iter().zip(&self.aut).enumerate() {
            let dim = self.dims.as_ref().map_or("-".to_string(), |d| d[i].to_string());
            s += &format!("basis {i} {l} aut={a} dim={dim}\n");
        }
        for ((c, a, b), v) in &self.product {
            s += &format!("product {c} {a} {b} {v}\n");
        }
        for ((c, a, b), v) in &self.coproduct {
            s += &format!("coproduct {c} {a} {b} {v}\n");
        }
        for (a, b) in &self.unchecked {
            s += &format!("unchecked {a} {b}\n");
        }
        s
    }

    pub fn parse(text: &str) -> Result<HallTable, HallError> {
        let err = |line: usize, msg: &str| HallError::Parse { line, msg: msg.into() };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
        let (_, head) = lines.next().ok_or_else(|| err(1, "empty input"))?;
        let mut h = head.split_whitespace();
        if h.next() != Some("hall") {
            return Err(err(1, "expected 'hall'"));
        }
        let mut field = |key: &str| -> Result<String, HallError> {
            h.next().and_then(|t| t.strip_prefix(key)).map(str::to_string).ok_or_else(|| err(1, &format!("expected {key}")))
        };
        let n: usize = field("basis=")?.parse().map_err(|_| err(1, "bad basis"))?;
        let budget: usize = field("budget=")?.parse().map_err(|_| err(1, "bad budget"))?;
        let dmax = match field("dmax=")?.as_str() {
            "-" => None,
            d => Some(d.parse().map_err(|_| err(1, "bad dmax"))?),
        };
        let mut t = HallTable {
            labels: Vec::new(),
            aut: Vec::new(),
            dims: dmax.map(|_| Vec::new()),
            dmax,
            budget,
            product: BTreeMap::new(),
            coproduct: BTreeMap::new(),
            unchecked: Vec::new(),
        };
        for (i, l) in lines {
            let line = i + 1;
            let w: Vec<&str> = l.split_whitespace().collect();
            let idx = |s: &str| -> Result<usize, HallError> {
                s.parse::<usize>().ok().filter(|&k| k < n).ok_or_else(|| err(line, "bad index"))
            };
            match w.as_slice() {
                ["basis", i, label, aut, dim] => {
                    if idx(i)? != t.labels.len() {
                        return Err(err(line, "basis lines out of order"));
                    }
                    t.labels.push(label.to_string());
                    t.aut.push(aut.strip_prefix("aut=").and_then(|a| a.parse().ok()).ok_or_else(|| err(line, "bad aut"))?);
                    if let Some(d) = t.dims.as_mut() {
                        d.push(dim.strip_prefix("dim=").and_then(|a| a.parse().ok()).ok_or_else(|| err(line, "bad dim"))?);
                    }
                }
                [kind @ ("product" | "coproduct"), c, a, b, v] => {
                    let v = BigRational::from_str(v).map_err(|_| err(line, "bad rational"))?;
                    let map = if *kind == "product" { &mut t.product } else { &mut t.coproduct };
                    map.insert((idx(c)?, idx(a)?, idx(b)?), v);
                }
                ["unchecked", a, b] => t.unchecked.push((idx(a)?, idx(b)?)),
                _ => return Err(err(line, "unrecognised line")),
            }
        }
        if t.labels.len() != n {
            return Err(err(0, "missing basis lines"));
        }
        Ok(t)
    }
}

/// Aligned listing of the nonzero constants.
impl fmt::Display for HallTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "hall table: {} classes, budget {}, dmax {}",
            self.len(),
            self.budget,
            self.dmax.map_or("-".to_string(), |d| d.to_string())
        )?;
        let w = self.labels.iter().map(String::len).max().unwrap_or(1);
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(f, "  class {l:>w$}  |Aut| = {}", self.aut[i])?;
        }
        for ((c, a, b), v) in &self.product {
            writeln!(f, "  g^{:<w$} _{:>w$},{:<w$} = {v}", self.labels[*c], self.labels[*a], self.labels[*b])?;
        }
        for ((c, a, b), v) in &self.coproduct {
            writeln!(f, "  d_{:<w$} ^{:>w$},{:<w$} = {v}", self.labels[*c], self.labels[*a], self.labels[*b])?;
        }
        for (a, b) in &self.unchecked {
            writeln!(f, "  unchecked {},{}", self.labels[*a], self.labels[*b])?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawReport {
    pub checked: usize,
    pub unchecked: usize,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawsReport {
    pub associativity: LawReport,
    pub coassociativity: LawReport,
}

impl LawsReport {
    pub fn passed(&self) -> bool {
        self.associativity.violations.is_empty() && self.coassociativity.violations.is_empty()
    }
}

impl fmt::Display for LawsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, r) in [("associativity", &self.associativity), ("coassociativity", &self.coassociativity)] {
            writeln!(
                f,
                "{name}: {} checked, {} unchecked, {}",
                r.checked,
                r.unchecked,
                if r.violations.is_empty() { "pass".to_string() } else { format!("{} violations", r.violations.len()) }
            )?;
            for v in &r.violations {
                writeln!(f, "  violation: {v}")?;
            }
        }
        write!(f, "verdict: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Checks associativity and coassociativity on every triple whose
/// intermediates fit the budget; the others are counted as unchecked.
pub fn verify_laws(t: &HallTable) -> LawsReport {
    let n = t.len();
    let mut out = LawsReport::default();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !t.in_budget(&[a, b, c]) {
                    out.associativity.unchecked += 1;
                    out.coassociativity.unchecked += 1;
                    continue;
                }
                out.associativity.checked += 1;
                out.coassociativity.checked += 1;
                for d in 0..n {
                    let (l, r) = t.triple_product(a, b, c, d);
                    if l != r {
                        out.associativity.violations.push(format!(
                            "({}·{})·{} = {l} but {}·({}·{}) = {r} at {}",
                            t.labels[a], t.labels[b], t.labels[c], t.labels[a], t.labels[b], t.labels[c], t.labels[d]
                        ));
                    }
                    let (l, r) = t.triple_coproduct(d, a, b, c);
                    if l != r {
                        out.coassociativity.violations.push(format!(
                            "coefficient of {}⊗{}⊗{} in the two double coproducts of {}: {l} vs {r}",
                            t.labels[a], t.labels[b], t.labels[c], t.labels[d]
                        ));
                    }
                }
            }
        }
    }
    out
}
