//! Isomorphism search by constraint propagation and backtracking.

use std::sync::Arc;

use super::{Complex, SMap};

struct Search<'a, const D: usize> {
    left: &'a [Arc<Complex<D>>],
    right: &'a [Arc<Complex<D>>],
    edges: &'a [(usize, usize, &'a SMap<D>, &'a SMap<D>)],
    /// rev[e][c]: cells of the edge source whose image under the left map lies on cell c
    rev: Vec<Vec<Vec<usize>>>,
    assign: Vec<Vec<Option<usize>>>,
    used: Vec<Vec<bool>>,
    trail: Vec<(usize, usize)>,
}

impl<const D: usize> Search<'_, D> {
    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (o, c) = self.trail.pop().unwrap();
            let d = self.assign[o][c].take().unwrap();
            self.used[o][d] = false;
        }
    }

    fn propagate(&mut self, o: usize, c: usize, d: usize) -> bool {
        let mut stack = vec![(o, c, d)];
        while let Some((o, c, d)) = stack.pop() {
            match self.assign[o][c] {
                Some(e) if e == d => continue,
                Some(_) => return false,
                None => {}
            }
            if self.used[o][d] {
                return false;
            }
            let (lc, rc) = (self.left[o].cell(c), self.right[o].cell(d));
            if lc.deg != rc.deg {
                return false;
            }
            self.assign[o][c] = Some(d);
            self.used[o][d] = true;
            self.trail.push((o, c));
            for k in 0..D {
                for (f, g) in lc.faces[k].iter().zip(&rc.faces[k]) {
                    if f.ops != g.ops {
                        return false;
                    }
                    stack.push((o, f.cell, g.cell));
                }
            }
            for (e, &(s, t, fl, fr)) in self.edges.iter().enumerate() {
                if s == o {
                    let (a, b) = (&fl.images[c], &fr.images[d]);
                    if a.ops != b.ops {
                        return false;
                    }
                    stack.push((t, a.cell, b.cell));
                }
                if t == o {
                    for &x in &self.rev[e][c] {
                        if let Some(y) = self.assign[s][x] {
                            let (a, b) = (&fl.images[x], &fr.images[y]);
                            if b.cell != d || a.ops != b.ops {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn solve(&mut self, order: &[(usize, usize)], pos: usize) -> bool {
        let mut pos = pos;
        while pos < order.len() && self.assign[order[pos].0][order[pos].1].is_some() {
            pos += 1;
        }
        if pos == order.len() {
            return true;
        }
        let (o, c) = order[pos];
        let deg = self.left[o].cell(c).deg;
        for d in 0..self.right[o].len() {
            if self.used[o][d] || self.right[o].cell(d).deg != deg {
                continue;
            }
            let mark = self.trail.len();
            if self.propagate(o, c, d) && self.solve(order, pos + 1) {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// Finds isomorphisms `left[o] -> right[o]` commuting with the paired edge maps
/// `(s, t, left map, right map)`.
pub fn find_natural_iso<const D: usize>(
    left: &[Arc<Complex<D>>],
    right: &[Arc<Complex<D>>],
    edges: &[(usize, usize, &SMap<D>, &SMap<D>)],
) -> Option<Vec<SMap<D>>> {
    if left.len() != right.len() {
        return None;
    }
    for (l, r) in left.iter().zip(right) {
        if l.profile() != r.profile() {
            return None;
        }
    }
    let rev = edges
        .iter()
        .map(|&(_, t, fl, _)| {
            let mut v = vec![Vec::new(); left[t].len()];
            for (x, img) in fl.images.iter().enumerate() {
                v[img.cell].push(x);
            }
            v
        })
        .collect();
    let mut s = Search {
        left,
        right,
        edges,
        rev,
        assign: left.iter().map(|x| vec![None; x.len()]).collect(),
        used: right.iter().map(|x| vec![false; x.len()]).collect(),
        trail: Vec::new(),
    };
    let mut order: Vec<(usize, usize)> = left
        .iter()
        .enumerate()
        .flat_map(|(o, x)| (0..x.len()).map(move |c| (o, c)))
        .collect();
    order.sort_by_key(|&(o, c)| {
        (
            o,
            std::cmp::Reverse(left[o].cell(c).deg.iter().sum::<usize>()),
            c,
        )
    });
    if !s.solve(&order, 0) {
        return None;
    }
    Some(
        (0..left.len())
            .map(|o| SMap {
                source: left[o].clone(),
                target: right[o].clone(),
                images: s.assign[o]
                    .iter()
                    .map(|d| right[o].nondeg(d.unwrap()))
                    .collect(),
            })
            .collect(),
    )
}

pub fn find_iso<const D: usize>(x: &Arc<Complex<D>>, y: &Arc<Complex<D>>) -> Option<SMap<D>> {
    find_natural_iso(std::slice::from_ref(x), std::slice::from_ref(y), &[]).map(|mut v| v.remove(0))
}

pub fn isomorphic<const D: usize>(x: &Complex<D>, y: &Complex<D>) -> bool {
    find_iso(&Arc::new(x.clone()), &Arc::new(y.clone())).is_some()
}
