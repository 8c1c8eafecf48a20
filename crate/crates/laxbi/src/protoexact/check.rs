use std::collections::HashMap;
use std::fmt;

use super::{FinCat, ProtoExactCat};

/// A commutative square `a -top-> b -right-> d`, `a -left-> c -bottom-> d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Square {
    pub top: usize,
    pub left: usize,
    pub right: usize,
    pub bottom: usize,
}

impl Square {
    pub fn commutes(&self, c: &FinCat) -> bool {
        c.compose(self.top, self.right) == c.compose(self.left, self.bottom)
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "square top={} left={} right={} bottom={}",
            self.top, self.left, self.right, self.bottom
        )
    }
}

/// Universal property of the pullback, checked against every test object.
pub fn is_pullback(c: &FinCat, s: &Square) -> bool {
    let (a, b, cc) = (c.src(s.top), c.tgt(s.top), c.tgt(s.left));
    (0..c.objects()).all(|t| {
        let mut by_image: HashMap<usize, usize> = HashMap::new();
        for x in c.hom(t, b) {
            *by_image.entry(c.compose(x, s.right)).or_default() += 1;
        }
        let pairs: usize = c
            .hom(t, cc)
            .map(|y| by_image.get(&c.compose(y, s.bottom)).copied().unwrap_or(0))
            .sum();
        let hom = c.hom(t, a);
        if hom.len() != pairs {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        hom.into_iter()
            .all(|w| seen.insert((c.compose(w, s.top), c.compose(w, s.left))))
    })
}

/// Universal property of the pushout.
pub fn is_pushout(c: &FinCat, s: &Square) -> bool {
    let (b, cc, d) = (c.tgt(s.top), c.tgt(s.left), c.tgt(s.right));
    (0..c.objects()).all(|t| {
        let mut by_image: HashMap<usize, usize> = HashMap::new();
        for x in c.hom(b, t) {
            *by_image.entry(c.compose(s.top, x)).or_default() += 1;
        }
        let pairs: usize = c
            .hom(cc, t)
            .map(|y| by_image.get(&c.compose(s.left, y)).copied().unwrap_or(0))
            .sum();
        let hom = c.hom(d, t);
        if hom.len() != pairs {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        hom.into_iter()
            .all(|w| seen.insert((c.compose(s.right, w), c.compose(s.bottom, w))))
    })
}

pub fn is_bicartesian(c: &FinCat, s: &Square) -> bool {
    is_pullback(c, s) && is_pushout(c, s)
}

/// Some pushout of the span `b <-top- a -left-> c`.
pub fn find_pushout(c: &FinCat, top: usize, left: usize) -> Option<Square> {
    let (b, cc) = (c.tgt(top), c.tgt(left));
    for d in 0..c.objects() {
        for right in c.hom(b, d) {
            let target = c.compose(top, right);
            for bottom in c.hom(cc, d) {
                let s = Square {
                    top,
                    left,
                    right,
                    bottom,
                };
                if c.compose(left, bottom) == target && is_pushout(c, &s) {
                    return Some(s);
                }
            }
        }
    }
    None
}

/// Some pullback of the cospan `b -right-> d <-bottom- c`.
pub fn find_pullback(c: &FinCat, right: usize, bottom: usize) -> Option<Square> {
    let (b, cc) = (c.src(right), c.src(bottom));
    for a in 0..c.objects() {
        for top in c.hom(a, b) {
            let target = c.compose(top, right);
            for left in c.hom(a, cc) {
                let s = Square {
                    top,
                    left,
                    right,
                    bottom,
                };
                if c.compose(left, bottom) == target && is_pullback(c, &s) {
                    return Some(s);
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionResult {
    pub condition: u8,
    pub name: &'static str,
    pub witness: Option<String>,
}

impl ConditionResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactReport {
    pub conditions: Vec<ConditionResult>,
}

impl ExactReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(ConditionResult::passed)
    }

    pub fn condition(&self, k: u8) -> &ConditionResult {
        &self.conditions[k as usize - 1]
    }
}

impl fmt::Display for ExactReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.conditions {
            match &c.witness {
                None => writeln!(f, "condition {} {}: pass", c.condition, c.name)?,
                Some(w) => writeln!(f, "condition {} {}: FAIL {w}", c.condition, c.name)?,
            }
        }
        write!(
            f,
            "verdict: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Checks the six axioms of an augmented proto-exact category in their
/// 1-categorical form, with a witness for the first violation of each.
pub fn check_proto_exact(x: &ProtoExactCat) -> ExactReport {
    let c = &x.cat;
    let conditions = vec![
        ConditionResult {
            condition: 1,
            name: "subcategories",
            witness: subcategories(x),
        },
        ConditionResult {
            condition: 2,
            name: "null isos",
            witness: (0..c.len())
                .find(|&f| x.null_mor[f] && !c.is_iso(f))
                .map(|f| format!("null morphism {f} is not invertible")),
        },
        ConditionResult {
            condition: 3,
            name: "null sub/quotients",
            witness: nulls(x),
        },
        ConditionResult {
            condition: 4,
            name: "bicartesian",
            witness: bicartesian(x),
        },
        ConditionResult {
            condition: 5,
            name: "mono pushouts",
            witness: pushouts(x),
        },
        ConditionResult {
            condition: 6,
            name: "epi pullbacks",
            witness: pullbacks(x),
        },
    ];
    ExactReport { conditions }
}

fn subcategories(x: &ProtoExactCat) -> Option<String> {
    let c = &x.cat;
    let classes: [(&str, &Vec<bool>); 3] = [("N", &x.null_mor), ("M", &x.mono), ("E", &x.epi)];
    for (name, flags) in classes {
        for a in 0..c.objects() {
            let present = name != "N" || x.null[a];
            if present && !flags[c.id(a)] {
                return Some(format!("{name} misses the identity of object {a}"));
            }
        }
        for f in (0..c.len()).filter(|&f| flags[f]) {
            for g in c.out(c.tgt(f)).filter(|&g| flags[g]) {
                if !flags[c.compose(f, g)] {
                    return Some(format!("{name} is not closed under composition: {g}∘{f}"));
                }
            }
        }
        // Inclusions are full on isomorphisms between objects they contain.
        for f in (0..c.len()).filter(|&f| c.is_iso(f) && !flags[f]) {
            let inside = name != "N" || (x.null[c.src(f)] && x.null[c.tgt(f)]);
            if inside {
                return Some(format!("isomorphism {f} is missing from {name}"));
            }
        }
    }
    for f in 0..c.len() {
        if x.null_mor[f] && !(x.null[c.src(f)] && x.null[c.tgt(f)]) {
            return Some(format!("null morphism {f} leaves the null objects"));
        }
        if x.null_mor[f] && !(x.mono[f] && x.epi[f]) {
            return Some(format!("null morphism {f} is not in M and E"));
        }
    }
    None
}

/// Condition 3: for each `a`, the category of null subobjects `z -> a` in
/// `M` is equivalent to a point and initial in `M/a`; dually for null
/// quotients in `E`.
fn nulls(x: &ProtoExactCat) -> Option<String> {
    let c = &x.cat;
    for a in 0..c.objects() {
        for (dual, flags) in [(false, &x.mono), (true, &x.epi)] {
            let kind = if dual { "quotient" } else { "subobject" };
            // Objects of the comma category: admissible maps between a null z and a.
            let objs: Vec<usize> = (0..c.objects())
                .filter(|&z| x.null[z])
                .flat_map(|z| if dual { c.hom(a, z) } else { c.hom(z, a) })
                .filter(|&m| flags[m])
                .collect();
            let null_end = |m: usize| if dual { c.tgt(m) } else { c.src(m) };
            // Morphisms m -> m': null n with m'∘n = m (or n∘m = m').
            let arrows = |m: usize, m2: usize| -> usize {
                let (z, z2) = (null_end(m), null_end(m2));
                c.hom(z, z2)
                    .filter(|&n| x.null_mor[n])
                    .filter(|&n| {
                        if dual {
                            c.compose(m, n) == m2
                        } else {
                            c.compose(n, m2) == m
                        }
                    })
                    .count()
            };
            if objs.is_empty() {
                return Some(format!("object {a} has no null {kind}"));
            }
            for &m in &objs {
                for &m2 in &objs {
                    if arrows(m, m2) != 1 {
                        return Some(format!(
                            "null {kind}s {m} and {m2} of object {a} are not uniquely isomorphic"
                        ));
                    }
                }
            }
            // Initiality in M/a (finality in a\E): for every admissible f
            // between x and a, the factorisations through null objects form a
            // nonempty connected category.
            let others: Vec<usize> = (0..c.len())
                .filter(|&f| flags[f] && if dual { c.src(f) == a } else { c.tgt(f) == a })
                .collect();
            for f in others {
                let xo = if dual { c.tgt(f) } else { c.src(f) };
                let mut facs = Vec::new();
                for &m in &objs {
                    let z = null_end(m);
                    let hs = if dual { c.hom(xo, z) } else { c.hom(z, xo) };
                    for h in hs.filter(|&h| flags[h]) {
                        let ok = if dual {
                            c.compose(f, h) == m
                        } else {
                            c.compose(h, f) == m
                        };
                        if ok {
                            facs.push((m, h));
                        }
                    }
                }
                if facs.is_empty() {
                    return Some(format!(
                        "admissible {f} at object {a} does not factor through a null {kind}"
                    ));
                }
                let mut parent: Vec<usize> = (0..facs.len()).collect();
                fn root(p: &mut [usize], i: usize) -> usize {
                    if p[i] == i {
                        i
                    } else {
                        let r = root(p, p[i]);
                        p[i] = r;
                        r
                    }
                }
                for i in 0..facs.len() {
                    for j in 0..facs.len() {
                        let ((m, h), (m2, h2)) = (facs[i], facs[j]);
                        let (z, z2) = (null_end(m), null_end(m2));
                        let linked = c.hom(z, z2).any(|n| {
                            x.null_mor[n]
                                && if dual {
                                    c.compose(m, n) == m2 && c.compose(h, n) == h2
                                } else {
                                    c.compose(n, m2) == m && c.compose(n, h2) == h
                                }
                        });
                        if linked {
                            let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                            parent[ri] = rj;
                        }
                    }
                }
                let r0 = root(&mut parent, 0);
                if (0..facs.len()).any(|i| root(&mut parent, i) != r0) {
                    return Some(format!(
                        "factorisations of {f} through null {kind}s of object {a} are disconnected"
                    ));
                }
            }
        }
    }
    None
}

fn bicartesian(x: &ProtoExactCat) -> Option<String> {
    let c = &x.cat;
    for top in (0..c.len()).filter(|&f| x.mono[f]) {
        let a = c.src(top);
        for left in c.out(a).filter(|&f| x.epi[f]) {
            for right in c.out(c.tgt(top)).filter(|&f| x.epi[f]) {
                let d = c.tgt(right);
                let target = c.compose(top, right);
                for bottom in c.hom(c.tgt(left), d).filter(|&f| x.mono[f]) {
                    if c.compose(left, bottom) != target {
                        continue;
                    }
                    let s = Square {
                        top,
                        left,
                        right,
                        bottom,
                    };
                    let (pb, po) = (is_pullback(c, &s), is_pushout(c, &s));
                    if pb != po {
                        return Some(format!(
                            "{s} is {}",
                            if pb {
                                "a pullback but not a pushout"
                            } else {
                                "a pushout but not a pullback"
                            }
                        ));
                    }
                }
            }
        }
    }
    None
}

fn pushouts(x: &ProtoExactCat) -> Option<String> {
    let c = &x.cat;
    for top in (0..c.len()).filter(|&f| x.mono[f]) {
        for left in c.out(c.src(top)).filter(|&f| x.epi[f]) {
            let Some(s) = find_pushout(c, top, left) else {
                return Some(format!("span top={top} left={left} has no pushout"));
            };
            // Every pushout is s.bottom followed by an iso.
            let d = c.tgt(s.bottom);
            if let Some(g) = c.isos_from(d).find(|&g| !x.mono[c.compose(s.bottom, g)]) {
                return Some(format!(
                    "pushout of mono {top} along epi {left} gives non-admissible {}",
                    c.compose(s.bottom, g)
                ));
            }
        }
    }
    None
}

fn pullbacks(x: &ProtoExactCat) -> Option<String> {
    let c = &x.cat;
    for right in (0..c.len()).filter(|&f| x.epi[f]) {
        let d = c.tgt(right);
        for bottom in (0..c.objects())
            .flat_map(|cc| c.hom(cc, d))
            .filter(|&f| x.mono[f])
        {
            let Some(s) = find_pullback(c, right, bottom) else {
                return Some(format!(
                    "cospan right={right} bottom={bottom} has no pullback"
                ));
            };
            let a = c.src(s.left);
            if let Some(g) = (0..c.objects())
                .flat_map(|t| c.hom(t, a))
                .find(|&g| c.is_iso(g) && !x.epi[c.compose(g, s.left)])
            {
                return Some(format!(
                    "pullback of epi {right} along mono {bottom} gives non-admissible {}",
                    c.compose(g, s.left)
                ));
            }
        }
    }
    None
}
