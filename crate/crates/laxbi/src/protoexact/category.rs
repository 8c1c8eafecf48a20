use std::fmt::Debug;
use std::hash::Hash;

use crate::twistposet::FinPoset;

use super::ExactError;

/// A finite category stored as tables. Morphisms are sorted by
/// `(source, target)`, so every hom-set and every out-list is a contiguous
/// range of ids.
#[derive(Clone, Debug)]
pub struct FinCat {
    names: Vec<String>,
    src: Vec<u32>,
    tgt: Vec<u32>,
    /// `hom_start[a * n + b]`; one extra entry at the end.
    hom_start: Vec<u32>,
    ident: Vec<u32>,
    comp_off: Vec<usize>,
    comp: Vec<u32>,
    inverse: Vec<Option<u32>>,
}

impl FinCat {
    /// Builds a category from hom-set sizes `homs[a][b]`, the identity
    /// positions within `Hom(a,a)`, and composition on local indices:
    /// `compose(a, b, c, i, j)` is the index in `Hom(a,c)` of `g∘f` for
    /// `f = Hom(a,b)[i]`, `g = Hom(b,c)[j]`.
    pub fn from_fn(
        names: Vec<String>,
        homs: &[Vec<usize>],
        ident: &[usize],
        mut compose: impl FnMut(usize, usize, usize, usize, usize) -> usize,
    ) -> Result<FinCat, ExactError> {
        let n = names.len();
        if homs.len() != n || homs.iter().any(|r| r.len() != n) || ident.len() != n {
            return Err(ExactError::BadParams(
                "hom table has the wrong shape".into(),
            ));
        }
        let mut hom_start = Vec::with_capacity(n * n + 1);
        let (mut src, mut tgt) = (Vec::new(), Vec::new());
        for a in 0..n {
            for b in 0..n {
                hom_start.push(src.len() as u32);
                for _ in 0..homs[a][b] {
                    src.push(a as u32);
                    tgt.push(b as u32);
                }
            }
        }
        hom_start.push(src.len() as u32);
        let mut cat = FinCat {
            names,
            src,
            tgt,
            hom_start,
            ident: Vec::new(),
            comp_off: Vec::new(),
            comp: Vec::new(),
            inverse: Vec::new(),
        };
        for (a, &i) in ident.iter().enumerate() {
            if i >= homs[a][a] {
                return Err(ExactError::BadParams(format!("object {a} has no identity")));
            }
            cat.ident.push(cat.hom(a, a).start as u32 + i as u32);
        }
        for f in 0..cat.len() {
            cat.comp_off.push(cat.comp.len());
            let (a, b) = (cat.src[f] as usize, cat.tgt[f] as usize);
            let i = f - cat.hom(a, b).start;
            for c in 0..n {
                for j in 0..homs[b][c] {
                    let k = compose(a, b, c, i, j);
                    if k >= homs[a][c] {
                        return Err(ExactError::BadParams(format!(
                            "composite out of range in Hom({a},{c})"
                        )));
                    }
                    cat.comp.push(cat.hom(a, c).start as u32 + k as u32);
                }
            }
        }
        cat.inverse = (0..cat.len())
            .map(|f| {
                let (a, b) = (cat.src[f] as usize, cat.tgt[f] as usize);
                cat.hom(b, a)
                    .find(|&g| {
                        cat.compose(f, g) == cat.ident[a] as usize
                            && cat.compose(g, f) == cat.ident[b] as usize
                    })
                    .map(|g| g as u32)
            })
            .collect();
        Ok(cat)
    }

    /// Checks the identity and associativity laws.
    pub fn validate(&self) -> Result<(), ExactError> {
        for f in 0..self.len() {
            let (a, b) = (self.src(f), self.tgt(f));
            if self.compose(self.id(a), f) != f || self.compose(f, self.id(b)) != f {
                return Err(ExactError::BadParams(format!(
                    "identity law fails at morphism {f}"
                )));
            }
            for g in self.out(b) {
                for h in self.out(self.tgt(g)) {
                    if self.compose(self.compose(f, g), h) != self.compose(f, self.compose(g, h)) {
                        return Err(ExactError::BadParams(format!(
                            "associativity fails at ({f},{g},{h})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn len(&self) -> usize {
        self.src.len()
    }

    pub fn is_empty(&self) -> bool {
        self.src.is_empty()
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f] as usize
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.tgt[f] as usize
    }

    pub fn id(&self, a: usize) -> usize {
        self.ident[a] as usize
    }

    pub fn hom(&self, a: usize, b: usize) -> std::ops::Range<usize> {
        let n = self.objects();
        self.hom_start[a * n + b] as usize..self.hom_start[a * n + b + 1] as usize
    }

    /// All morphisms out of `a`.
    pub fn out(&self, a: usize) -> std::ops::Range<usize> {
        let n = self.objects();
        self.hom_start[a * n] as usize..self.hom_start[a * n + n] as usize
    }

    /// `g ∘ f`; requires `tgt(f) == src(g)`.
    pub fn compose(&self, f: usize, g: usize) -> usize {
        debug_assert_eq!(self.tgt(f), self.src(g));
        self.comp[self.comp_off[f] + g - self.out(self.src(g)).start] as usize
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.inverse[f].map(|g| g as usize)
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse[f].is_some()
    }

    /// Isomorphisms with source `a`, ordered by id.
    pub fn isos_from(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.out(a).filter(|&f| self.is_iso(f))
    }
}

/// Matrices over `F_q` behind the skeletal vector-space fixture.
#[derive(Clone, Debug)]
pub struct VectData {
    pub q: usize,
    pub dmax: usize,
}

impl VectData {
    fn entries(&self, code: usize, rows: usize, cols: usize) -> Vec<usize> {
        let mut c = code;
        (0..rows * cols)
            .map(|_| {
                let e = c % self.q;
                c /= self.q;
                e
            })
            .collect()
    }

    fn code(&self, entries: &[usize]) -> usize {
        entries.iter().rev().fold(0, |acc, &e| acc * self.q + e)
    }

    /// Row-major entries of morphism `f: a -> b` (a `b × a` matrix).
    pub fn matrix(&self, cat: &FinCat, f: usize) -> Vec<usize> {
        let (a, b) = (cat.src(f), cat.tgt(f));
        self.entries(f - cat.hom(a, b).start, b, a)
    }

    pub fn morphism(&self, cat: &FinCat, a: usize, b: usize, entries: &[usize]) -> usize {
        cat.hom(a, b).start + self.code(entries)
    }

    pub fn rank(&self, rows: usize, cols: usize, m: &[usize]) -> usize {
        let q = self.q;
        let mut m = m.to_vec();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| m[r * cols + c] != 0) else {
                continue;
            };
            for k in 0..cols {
                m.swap(p * cols + k, rank * cols + k);
            }
            let inv = (1..q).find(|&x| x * m[rank * cols + c] % q == 1).unwrap();
            for r in 0..rows {
                if r != rank && m[r * cols + c] != 0 {
                    let t = m[r * cols + c] * inv % q;
                    for k in 0..cols {
                        m[r * cols + k] =
                            (m[r * cols + k] + q * q - t * m[rank * cols + k] % q) % q;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Block-diagonal sum of morphisms.
    pub fn direct_sum(&self, cat: &FinCat, fs: &[usize]) -> usize {
        let a: usize = fs.iter().map(|&f| cat.src(f)).sum();
        let b: usize = fs.iter().map(|&f| cat.tgt(f)).sum();
        let mut m = vec![0; a * b];
        let (mut r0, mut c0) = (0, 0);
        for &f in fs {
            let (fa, fb) = (cat.src(f), cat.tgt(f));
            let e = self.matrix(cat, f);
            for r in 0..fb {
                for c in 0..fa {
                    m[(r0 + r) * a + c0 + c] = e[r * fa + c];
                }
            }
            r0 += fb;
            c0 += fa;
        }
        self.morphism(cat, a, b, &m)
    }
}

/// A finite category with null objects and admissible monomorphisms and
/// epimorphisms. Null morphisms are recorded per morphism.
#[derive(Clone, Debug)]
pub struct ProtoExactCat {
    pub cat: FinCat,
    pub null: Vec<bool>,
    pub null_mor: Vec<bool>,
    pub mono: Vec<bool>,
    pub epi: Vec<bool>,
    /// Present for the vector-space fixture.
    pub vect: Option<VectData>,
}

impl ProtoExactCat {
    pub fn new(
        cat: FinCat,
        null: Vec<bool>,
        null_mor: Vec<bool>,
        mono: Vec<bool>,
        epi: Vec<bool>,
    ) -> Result<Self, ExactError> {
        if null.len() != cat.objects()
            || [&null_mor, &mono, &epi]
                .iter()
                .any(|v| v.len() != cat.len())
        {
            return Err(ExactError::BadParams(
                "flag vectors have the wrong length".into(),
            ));
        }
        Ok(ProtoExactCat {
            cat,
            null,
            null_mor,
            mono,
            epi,
            vect: None,
        })
    }

    /// The terminal category with everything null, admissible mono and epi.
    pub fn terminal() -> Self {
        let cat = FinCat::from_fn(vec!["*".into()], &[vec![1]], &[0], |_, _, _, _, _| 0).unwrap();
        ProtoExactCat::new(cat, vec![true], vec![true], vec![true], vec![true]).unwrap()
    }

    /// `Arr(X)`: objects `ij` with `i ≤ j`, a morphism `ij -> i'j'` iff
    /// `i ≤ i'` and `j ≤ j'`; monos fix `i`, epis fix `j`; the null objects
    /// are the `ii` with their identities.
    pub fn arr<T: Clone + Eq + Hash + Debug>(x: &FinPoset<T>) -> Self {
        let objs: Vec<(usize, usize)> = (0..x.len())
            .flat_map(|i| (0..x.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| x.le(i, j))
            .collect();
        let le = |p: (usize, usize), q: (usize, usize)| x.le(p.0, q.0) && x.le(p.1, q.1);
        let homs: Vec<Vec<usize>> = objs
            .iter()
            .map(|&p| objs.iter().map(|&q| le(p, q) as usize).collect())
            .collect();
        let names = objs.iter().map(|&(i, j)| format!("{i}{j}")).collect();
        let cat = FinCat::from_fn(names, &homs, &vec![0; objs.len()], |_, _, _, _, _| 0).unwrap();
        let null = objs.iter().map(|&(i, j)| i == j).collect();
        let pair = |f: usize| (objs[cat.src(f)], objs[cat.tgt(f)]);
        let null_mor = (0..cat.len())
            .map(|f| cat.src(f) == cat.tgt(f) && objs[cat.src(f)].0 == objs[cat.src(f)].1)
            .collect();
        let mono = (0..cat.len())
            .map(|f| pair(f).0 .0 == pair(f).1 .0)
            .collect();
        let epi = (0..cat.len())
            .map(|f| pair(f).0 .1 == pair(f).1 .1)
            .collect();
        ProtoExactCat::new(cat, null, null_mor, mono, epi).unwrap()
    }

    /// Skeletal `F_q`-vector spaces of dimension at most `dmax` (`q` prime).
    pub fn vect(q: usize, dmax: usize) -> Result<Self, ExactError> {
        if q < 2 || (2..q).any(|d| q % d == 0) {
            return Err(ExactError::BadParams(format!("q = {q} is not prime")));
        }
        let size = |a: usize, b: usize| q.checked_pow((a * b) as u32);
        if size(dmax, dmax).map_or(true, |s| s > 1 << 16) {
            return Err(ExactError::BadParams(format!(
                "vect({q},{dmax}) is too large"
            )));
        }
        let v = VectData { q, dmax };
        let n = dmax + 1;
        let homs: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| size(a, b).unwrap()).collect())
            .collect();
        let ident: Vec<usize> = (0..n)
            .map(|a| {
                let e: Vec<usize> = (0..a * a).map(|k| (k / a == k % a) as usize).collect();
                v.code(&e)
            })
            .collect();
        let mats: Vec<Vec<Vec<Vec<usize>>>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| (0..homs[a][b]).map(|c| v.entries(c, b, a)).collect())
                    .collect()
            })
            .collect();
        let names = (0..n).map(|d| d.to_string()).collect();
        let cat = FinCat::from_fn(names, &homs, &ident, |a, b, c, i, j| {
            let (f, g) = (&mats[a][b][i], &mats[b][c][j]);
            let mut h = vec![0; c * a];
            for r in 0..c {
                for s in 0..a {
                    h[r * a + s] = (0..b).map(|t| g[r * b + t] * f[t * a + s]).sum::<usize>() % q;
                }
            }
            v.code(&h)
        })?;
        let rank = |f: usize| v.rank(cat.tgt(f), cat.src(f), &v.matrix(&cat, f));
        let mono = (0..cat.len()).map(|f| rank(f) == cat.src(f)).collect();
        let epi = (0..cat.len()).map(|f| rank(f) == cat.tgt(f)).collect();
        let null = (0..n).map(|d| d == 0).collect();
        let null_mor = (0..cat.len())
            .map(|f| cat.src(f) == 0 && cat.tgt(f) == 0)
            .collect();
        let mut a = ProtoExactCat::new(cat, null, null_mor, mono, epi)?;
        a.vect = Some(v);
        Ok(a)
    }

    /// Dimension of an object of the vector-space fixture.
    pub fn dim(&self, a: usize) -> Option<usize> {
        self.vect.as_ref().map(|_| a)
    }

    /// Isomorphism classes of objects, as sorted lists.
    pub fn object_classes(&self) -> Vec<Vec<usize>> {
        let c = &self.cat;
        let mut seen = vec![false; c.objects()];
        let mut out = Vec::new();
        for a in 0..c.objects() {
            if !seen[a] {
                let class: Vec<usize> = (0..c.objects())
                    .filter(|&b| c.hom(a, b).any(|f| c.is_iso(f)))
                    .collect();
                for &b in &class {
                    seen[b] = true;
                }
                out.push(class);
            }
        }
        out
    }

    /// An equivalent category with one more object, an isomorphic copy of
    /// `o` appended at the end. The vector-space data is dropped.
    pub fn duplicate_object(&self, o: usize) -> Result<ProtoExactCat, ExactError> {
        let c = &self.cat;
        let n = c.objects();
        let base = |a: usize| if a == n { o } else { a };
        let mut names: Vec<String> = (0..n).map(|a| c.name(a).to_string()).collect();
        names.push(format!("{}'", c.name(o)));
        let homs: Vec<Vec<usize>> = (0..=n).map(|a| (0..=n).map(|b| c.hom(base(a), base(b)).len()).collect()).collect();
        let ident: Vec<usize> = (0..=n).map(|a| c.id(base(a)) - c.hom(base(a), base(a)).start).collect();
        let cat = FinCat::from_fn(names, &homs, &ident, |a, b, d, i, j| {
            let f = c.hom(base(a), base(b)).start + i;
            let g = c.hom(base(b), base(d)).start + j;
            c.compose(f, g) - c.hom(base(a), base(d)).start
        })?;
        let lift = |v: &[bool]| -> Vec<bool> { (0..cat.len()).map(|f| v[c.hom(base(cat.src(f)), base(cat.tgt(f))).start + (f - cat.hom(cat.src(f), cat.tgt(f)).start)]).collect() };
        let (null_mor, mono, epi) = (lift(&self.null_mor), lift(&self.mono), lift(&self.epi));
        let mut null = self.null.clone();
        null.push(self.null[o]);
        ProtoExactCat::new(cat, null, null_mor, mono, epi)
    }

    /// Textual form: object lines, morphism lines with flags, and the full
    /// composition table.
    pub fn to_text(&self) -> String {
        let c = &self.cat;
        let mut s = format!("protoexact objects={} morphisms={}\n", c.objects(), c.len());
        for a in 0..c.objects() {
            s += &format!(
                "object {a} {} {}\n",
                c.name(a),
                if self.null[a] { "null" } else { "-" }
            );
        }
        for f in 0..c.len() {
            let mut flags = String::new();
            for (on, ch) in [
                (self.mono[f], 'M'),
                (self.epi[f], 'E'),
                (self.null_mor[f], 'N'),
                (c.id(c.src(f)) == f, 'I'),
            ] {
                if on {
                    flags.push(ch);
                }
            }
            if flags.is_empty() {
                flags.push('-');
            }
            s += &format!("morphism {f} {} {} {flags}\n", c.src(f), c.tgt(f));
        }
        for f in 0..c.len() {
            let row: Vec<String> = c
                .out(c.tgt(f))
                .map(|g| c.compose(f, g).to_string())
                .collect();
            s += &format!(
                "compose {f} {}\n",
                if row.is_empty() {
                    "-".into()
                } else {
                    row.join(" ")
                }
            );
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, ExactError> {
        let err = |line: usize, msg: &str| ExactError::Parse {
            line: line + 1,
            msg: msg.to_string(),
        };
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
        let (l0, head) = lines.next().ok_or_else(|| err(0, "empty input"))?;
        let head: Vec<&str> = head.split_whitespace().collect();
        let field = |t: &str, k: &str| {
            t.strip_prefix(k)
                .and_then(|t| t.strip_prefix('='))
                .and_then(|t| t.parse::<usize>().ok())
        };
        let (n, m) = match head.as_slice() {
            ["protoexact", o, mo] => (field(o, "objects"), field(mo, "morphisms")),
            _ => (None, None),
        };
        let (n, m) = n
            .zip(m)
            .ok_or_else(|| err(l0, "expected 'protoexact objects=N morphisms=M'"))?;
        let mut names = vec![String::new(); n];
        let mut null = vec![false; n];
        let mut ends = vec![None; m];
        let mut flags = vec![String::new(); m];
        let mut rows: Vec<Option<Vec<usize>>> = vec![None; m];
        for (ln, line) in lines {
            let t: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| s.parse::<usize>().map_err(|_| err(ln, "bad number"));
            match t[0] {
                "object" if t.len() == 4 => {
                    let a = num(t[1])?;
                    if a >= n {
                        return Err(err(ln, "object out of range"));
                    }
                    names[a] = t[2].to_string();
                    null[a] = t[3] == "null";
                }
                "morphism" if t.len() == 5 => {
                    let f = num(t[1])?;
                    let (a, b) = (num(t[2])?, num(t[3])?);
                    if f >= m || a >= n || b >= n {
                        return Err(err(ln, "morphism out of range"));
                    }
                    ends[f] = Some((a, b));
                    flags[f] = t[4].to_string();
                }
                "compose" if t.len() >= 3 => {
                    let f = num(t[1])?;
                    if f >= m {
                        return Err(err(ln, "morphism out of range"));
                    }
                    rows[f] = Some(if t[2] == "-" {
                        Vec::new()
                    } else {
                        t[2..].iter().map(|s| num(s)).collect::<Result<_, _>>()?
                    });
                }
                _ => return Err(err(ln, "unrecognised line")),
            }
        }
        let ends: Vec<(usize, usize)> = ends
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| err(0, "missing morphism line"))?;
        if ends.windows(2).any(|w| w[0] > w[1]) {
            return Err(err(0, "morphisms must be sorted by (source, target)"));
        }
        let mut homs = vec![vec![0; n]; n];
        let mut local = vec![0; m];
        for (f, &(a, b)) in ends.iter().enumerate() {
            local[f] = homs[a][b];
            homs[a][b] += 1;
        }
        let start: Vec<usize> = ends.iter().enumerate().map(|(f, _)| f - local[f]).collect();
        let mut ident = vec![usize::MAX; n];
        for f in 0..m {
            if flags[f].contains('I') {
                ident[ends[f].0] = local[f];
            }
        }
        if ident.contains(&usize::MAX) {
            return Err(err(0, "every object needs an identity"));
        }
        let rows: Vec<Vec<usize>> = rows
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| err(0, "missing compose line"))?;
        let mut first = vec![m; n * n];
        for (f, &(a, b)) in ends.iter().enumerate().rev() {
            first[a * n + b] = f;
        }
        let out_start: Vec<usize> = (0..n)
            .map(|b| ends.iter().position(|&(a, _)| a == b).unwrap_or(m))
            .collect();
        let mut bad = false;
        let cat = FinCat::from_fn(names, &homs, &ident, |a, b, c, i, j| {
            let f = first[a * n + b] + i;
            let g = first[b * n + c] + j;
            match rows[f].get(g - out_start[b]) {
                Some(&h) if h < m && ends[h] == (a, c) => h - start[h],
                _ => {
                    bad = true;
                    0
                }
            }
        })?;
        if bad {
            return Err(err(0, "composition table is incomplete or ill-typed"));
        }
        cat.validate()?;
        let flag = |c: char| flags.iter().map(|s| s.contains(c)).collect::<Vec<_>>();
        ProtoExactCat::new(cat, null, flag('N'), flag('M'), flag('E'))
    }
}
