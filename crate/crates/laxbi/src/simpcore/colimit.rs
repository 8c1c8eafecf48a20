use std::collections::VecDeque;
use std::sync::Arc;

use super::{delta, maps::same_complex, Complex, SMap, SimpError, Simplex};

/// A finite diagram: objects and arrows `(source index, target index, map)`.
#[derive(Clone, Debug)]
pub struct Diagram<const D: usize> {
    pub objects: Vec<Arc<Complex<D>>>,
    pub arrows: Vec<(usize, usize, SMap<D>)>,
}

/// A colimit with its universal cocone. `reps[c]` names an (object, cell)
/// whose image is the new cell `c`.
#[derive(Clone, Debug)]
pub struct Colimit<const D: usize> {
    pub object: Arc<Complex<D>>,
    pub legs: Vec<SMap<D>>,
    pub reps: Vec<(usize, usize)>,
}

impl<const D: usize> Diagram<D> {
    pub fn new(objects: Vec<Arc<Complex<D>>>) -> Self {
        Diagram {
            objects,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(&mut self, s: usize, t: usize, f: SMap<D>) {
        self.arrows.push((s, t, f));
    }

    fn check_typed(&self) -> Result<(), SimpError> {
        for (k, (s, t, f)) in self.arrows.iter().enumerate() {
            if *s >= self.objects.len()
                || *t >= self.objects.len()
                || !same_complex(&f.source, &self.objects[*s])
                || !same_complex(&f.target, &self.objects[*t])
            {
                return Err(SimpError::NonCommutingDiagram(format!(
                    "arrow {k} is ill-typed"
                )));
            }
        }
        Ok(())
    }

    /// Checks that all parallel paths of length at most two agree, which is
    /// what commutativity means for the thin shapes used here.
    pub fn check_commutes(&self) -> Result<(), SimpError> {
        self.check_typed()?;
        let mut paths: Vec<(usize, usize, SMap<D>, String)> = self
            .arrows
            .iter()
            .enumerate()
            .map(|(k, (s, t, f))| (*s, *t, f.clone(), format!("{k}")))
            .collect();
        for (a, (s, t, f)) in self.arrows.iter().enumerate() {
            for (b, (s2, u, g)) in self.arrows.iter().enumerate() {
                if t == s2 {
                    paths.push((*s, *u, f.then(g)?, format!("{a}.{b}")));
                }
            }
        }
        for i in 0..paths.len() {
            for j in i + 1..paths.len() {
                let (p, q) = (&paths[i], &paths[j]);
                if p.0 == q.0 && p.1 == q.1 && !p.2.same_as(&q.2) {
                    return Err(SimpError::NonCommutingDiagram(format!(
                        "paths {} and {} differ",
                        p.3, q.3
                    )));
                }
            }
        }
        Ok(())
    }
}

struct Quotient<'a, const D: usize> {
    union: &'a Complex<D>,
    parent: Vec<usize>,
    collapse: Vec<Option<Simplex<D>>>,
}

impl<const D: usize> Quotient<'_, D> {
    fn find(&mut self, mut c: usize) -> usize {
        while self.parent[c] != c {
            self.parent[c] = self.parent[self.parent[c]];
            c = self.parent[c];
        }
        c
    }

    fn norm(&mut self, mut x: Simplex<D>) -> Simplex<D> {
        loop {
            let r = self.find(x.cell);
            match &self.collapse[r] {
                Some(z) => x = self.union.apply(z, &x.ops),
                None => {
                    x.cell = r;
                    return x;
                }
            }
        }
    }
}

/// Colimit of a finite diagram, computed as a quotient of the disjoint union.
pub fn colim<const D: usize>(diag: &Diagram<D>) -> Result<Colimit<D>, SimpError> {
    diag.check_typed()?;
    let parts: Vec<&Complex<D>> = diag.objects.iter().map(|o| o.as_ref()).collect();
    let (union, offsets) = Complex::coproduct(&parts);
    let n = union.len();
    let mut q = Quotient {
        union: &union,
        parent: (0..n).collect(),
        collapse: vec![None; n],
    };
    let shift = |o: usize, s: &Simplex<D>| Simplex {
        cell: s.cell + offsets[o],
        ops: s.ops.clone(),
    };

    let mut queue: VecDeque<(Simplex<D>, Simplex<D>)> = VecDeque::new();
    for (s, t, f) in &diag.arrows {
        for c in 0..f.source.len() {
            queue.push_back((shift(*s, &f.source.nondeg(c)), shift(*t, &f.images[c])));
        }
    }
    while let Some((x, y)) = queue.pop_front() {
        let x = q.norm(x);
        let y = q.norm(y);
        if x == y {
            continue;
        }
        match (x.is_nondegenerate(), y.is_nondegenerate()) {
            (true, true) => {
                let (a, b) = (x.cell.min(y.cell), x.cell.max(y.cell));
                q.parent[b] = a;
                for d in 0..D {
                    for (fa, fb) in union.cell(a).faces[d].iter().zip(&union.cell(b).faces[d]) {
                        queue.push_back((fa.clone(), fb.clone()));
                    }
                }
            }
            (true, false) | (false, true) => {
                let (x, y) = if x.is_nondegenerate() { (x, y) } else { (y, x) };
                for d in 0..D {
                    for (i, f) in union.cell(x.cell).faces[d].iter().enumerate() {
                        queue.push_back((f.clone(), union.face(&y, d, i)));
                    }
                }
                q.collapse[x.cell] = Some(y);
            }
            (false, false) => {
                if x.ops == y.ops {
                    queue.push_back((union.nondeg(x.cell), union.nondeg(y.cell)));
                } else {
                    let sx: [Vec<usize>; D] =
                        std::array::from_fn(|d| delta::min_section(&x.ops[d]));
                    let sy: [Vec<usize>; D] =
                        std::array::from_fn(|d| delta::min_section(&y.ops[d]));
                    queue.push_back((union.nondeg(x.cell), union.apply(&y, &sx)));
                    queue.push_back((union.nondeg(y.cell), union.apply(&x, &sy)));
                }
                queue.push_back((x, y));
            }
        }
    }

    let mut roots: Vec<usize> = (0..n)
        .filter(|&c| q.find(c) == c && q.collapse[c].is_none())
        .collect();
    roots.sort_by_key(|&c| {
        (
            union.cell(c).deg.iter().sum::<usize>(),
            union.cell(c).deg,
            c,
        )
    });
    let mut new_index = vec![usize::MAX; n];
    for (k, &r) in roots.iter().enumerate() {
        new_index[r] = k;
    }
    let mut bound = [0; D];
    for o in &diag.objects {
        for d in 0..D {
            bound[d] = bound[d].max(o.bound()[d]);
        }
    }
    let mut out = Complex::new(bound);
    for &r in &roots {
        let cell = union.cell(r);
        let faces = std::array::from_fn(|d| {
            cell.faces[d]
                .iter()
                .map(|f| {
                    let s = q.norm(f.clone());
                    Simplex {
                        cell: new_index[s.cell],
                        ops: s.ops,
                    }
                })
                .collect()
        });
        out.add_cell(cell.deg, faces)?;
    }
    let object = Arc::new(out);
    let mut legs = Vec::new();
    for (o, obj) in diag.objects.iter().enumerate() {
        let images = (0..obj.len())
            .map(|c| {
                let s = q.norm(Simplex::nondeg(c + offsets[o], obj.cell(c).deg));
                Simplex {
                    cell: new_index[s.cell],
                    ops: s.ops,
                }
            })
            .collect();
        legs.push(SMap {
            source: obj.clone(),
            target: object.clone(),
            images,
        });
    }
    let reps = roots
        .iter()
        .map(|&r| {
            let o = offsets.iter().rposition(|&off| off <= r).unwrap();
            // skip empty objects sharing an offset
            let o = (0..=o)
                .rev()
                .find(|&o| r - offsets[o] < diag.objects[o].len())
                .unwrap();
            (o, r - offsets[o])
        })
        .collect();
    Ok(Colimit { object, legs, reps })
}

impl<const D: usize> Colimit<D> {
    /// The map out of the colimit induced by a compatible cocone.
    pub fn induced(
        &self,
        target: &Arc<Complex<D>>,
        cocone: &[SMap<D>],
    ) -> Result<SMap<D>, SimpError> {
        if cocone.len() != self.legs.len()
            || cocone.iter().any(|c| !same_complex(&c.target, target))
        {
            return Err(SimpError::NonCommutingDiagram("cocone is ill-typed".into()));
        }
        let target = target.clone();
        let images = self
            .reps
            .iter()
            .map(|&(o, c)| cocone[o].images[c].clone())
            .collect();
        let map = SMap::new(self.object.clone(), target, images)?;
        for (o, leg) in self.legs.iter().enumerate() {
            if !leg.then(&map)?.same_as(&cocone[o]) {
                return Err(SimpError::NonCommutingDiagram(format!(
                    "test cocone leg {o} is not compatible"
                )));
            }
        }
        Ok(map)
    }
}

/// Pushout of `f: A -> B` and `g: A -> C`; legs are for `A`, `B`, `C`.
pub fn pushout<const D: usize>(f: &SMap<D>, g: &SMap<D>) -> Result<Colimit<D>, SimpError> {
    let mut diag = Diagram::new(vec![f.source.clone(), f.target.clone(), g.target.clone()]);
    diag.arrow(0, 1, f.clone());
    diag.arrow(0, 2, g.clone());
    colim(&diag)
}

pub fn coproduct<const D: usize>(parts: Vec<Arc<Complex<D>>>) -> Result<Colimit<D>, SimpError> {
    colim(&Diagram::new(parts))
}
