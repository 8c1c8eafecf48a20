use std::collections::{HashMap, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Mono,
    Epi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub tgt: usize,
    pub kind: EdgeKind,
}

/// A square of shape edges `a->b`, `a->c`, `b->d`, `c->d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShapeSquare {
    pub top: usize,
    pub left: usize,
    pub right: usize,
    pub bottom: usize,
    pub bicartesian: bool,
}

/// The indexing shape of an exact diagram. Nodes are listed in processing
/// order and the edges touching node `v` and earlier nodes occupy the range
/// `edge_range(v)`.
#[derive(Clone, Debug)]
pub struct Shape {
    pub coords: Vec<Vec<usize>>,
    pub null: Vec<bool>,
    pub edges: Vec<Edge>,
    pub squares: Vec<ShapeSquare>,
    edge_end: Vec<usize>,
    /// Squares indexed by their last edge.
    squares_at: Vec<Vec<usize>>,
    determined: Vec<bool>,
    index: HashMap<Vec<usize>, usize>,
}

impl Shape {
    /// `nodes` in processing order; squares given by their corner nodes.
    pub fn new(
        nodes: Vec<(Vec<usize>, bool)>,
        edges: Vec<(usize, usize, EdgeKind)>,
        squares: Vec<([usize; 4], bool)>,
    ) -> Shape {
        let (coords, null): (Vec<_>, Vec<_>) = nodes.into_iter().unzip();
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|(src, tgt, kind)| Edge { src, tgt, kind })
            .collect();
        edges.sort_by_key(|e| (e.src.max(e.tgt), e.src.min(e.tgt), e.src));
        let n = coords.len();
        let mut edge_end = vec![0; n + 1];
        for (v, end) in edge_end.iter_mut().enumerate().skip(1) {
            *end = edges.iter().filter(|e| e.src.max(e.tgt) < v).count();
        }
        let find = |s: usize, t: usize| {
            edges
                .iter()
                .position(|e| e.src == s && e.tgt == t)
                .expect("square edge missing")
        };
        let squares: Vec<ShapeSquare> = squares
            .into_iter()
            .map(|([a, b, c, d], bicartesian)| ShapeSquare {
                top: find(a, b),
                left: find(a, c),
                right: find(b, d),
                bottom: find(c, d),
                bicartesian,
            })
            .collect();
        let mut squares_at = vec![Vec::new(); edges.len()];
        let mut determined = vec![false; n];
        for (i, s) in squares.iter().enumerate() {
            let es = [s.top, s.left, s.right, s.bottom];
            squares_at[*es.iter().max().unwrap()].push(i);
            if s.bicartesian {
                let (a, d) = (edges[s.top].src, edges[s.right].tgt);
                let (b, c) = (edges[s.top].tgt, edges[s.left].tgt);
                if d > a.max(b).max(c) {
                    determined[d] = true;
                }
                if a > b.max(c).max(d) {
                    determined[a] = true;
                }
            }
        }
        let index = coords
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        Shape {
            coords,
            null,
            edges,
            squares,
            edge_end,
            squares_at,
            determined,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn node(&self, coords: &[usize]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn edge_range(&self, v: usize) -> std::ops::Range<usize> {
        self.edge_end[v]..self.edge_end[v + 1]
    }

    /// Number of edges among the first `t` nodes.
    pub fn edges_before(&self, t: usize) -> usize {
        self.edge_end[t]
    }

    pub fn squares_completed_by(&self, e: usize) -> &[usize] {
        &self.squares_at[e]
    }

    /// Whether the node is fixed up to unique isomorphism by earlier nodes
    /// (a corner of a bicartesian square whose other corners come first).
    pub fn is_determined(&self, v: usize) -> bool {
        self.determined[v]
    }

    /// Edges of a directed path from `u` to `v`, if any.
    pub fn path(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let mut prev: Vec<Option<usize>> = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        seen[u] = true;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                let mut path = Vec::new();
                let mut y = v;
                while let Some(e) = prev[y] {
                    path.push(e);
                    y = self.edges[e].src;
                }
                path.reverse();
                return Some(path);
            }
            for (i, e) in self.edges.iter().enumerate() {
                if e.src == x && !seen[e.tgt] {
                    seen[e.tgt] = true;
                    prev[e.tgt] = Some(i);
                    queue.push_back(e.tgt);
                }
            }
        }
        None
    }

    pub fn label(&self, v: usize) -> String {
        let c = &self.coords[v];
        match c.len() {
            2 => format!("{}{}", c[0], c[1]),
            3 => format!("{}:{}{}", c[0], c[1], c[2]),
            4 => format!("{}{}|{}{}", c[0], c[1], c[2], c[3]),
            _ => c
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(","),
        }
    }
}

fn arr_nodes(n: usize) -> Vec<(usize, usize)> {
    (0..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect()
}

/// Edges and squares of the staircase `Arr([n])` on pairs `(i, j)`.
fn arr_parts(
    n: usize,
) -> (
    Vec<((usize, usize), (usize, usize), EdgeKind)>,
    Vec<[(usize, usize); 4]>,
) {
    let mut edges = Vec::new();
    let mut squares = Vec::new();
    for (i, j) in arr_nodes(n) {
        if j < n {
            edges.push(((i, j), (i, j + 1), EdgeKind::Mono));
        }
        if i < j {
            edges.push(((i, j), (i + 1, j), EdgeKind::Epi));
        }
        if i < j && j < n {
            squares.push([(i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1)]);
        }
    }
    (edges, squares)
}

/// `Arr([n])`: nodes `(i, j)` with `i ≤ j`, horizontal monos, vertical
/// epis, null diagonal, all elementary squares bicartesian.
pub fn arr_shape(n: usize) -> Shape {
    let nodes = arr_nodes(n);
    let idx: HashMap<(usize, usize), usize> =
        nodes.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let (edges, squares) = arr_parts(n);
    Shape::new(
        nodes.iter().map(|&(i, j)| (vec![i, j], i == j)).collect(),
        edges
            .into_iter()
            .map(|(u, v, k)| (idx[&u], idx[&v], k))
            .collect(),
        squares
            .into_iter()
            .map(|s| (s.map(|p| idx[&p]), true))
            .collect(),
    )
}

/// `Arr([n]) × Arr([k])`: every row and column slice is a staircase; mixed
/// squares only commute.
pub fn grid_shape(n: usize, k: usize) -> Shape {
    let (a, b) = (arr_nodes(n), arr_nodes(k));
    let nodes: Vec<[usize; 4]> = a
        .iter()
        .flat_map(|&(i, j)| b.iter().map(move |&(x, y)| [i, j, x, y]))
        .collect();
    let idx: HashMap<[usize; 4], usize> = nodes.iter().enumerate().map(|(t, &p)| (p, t)).collect();
    let (ea, sa) = arr_parts(n);
    let (eb, sb) = arr_parts(k);
    let mut edges = Vec::new();
    let mut squares = Vec::new();
    for &(x, y) in &b {
        for &((i, j), (i2, j2), kind) in &ea {
            edges.push((idx[&[i, j, x, y]], idx[&[i2, j2, x, y]], kind));
        }
        for s in &sa {
            squares.push((s.map(|(i, j)| idx[&[i, j, x, y]]), true));
        }
    }
    for &(i, j) in &a {
        for &((x, y), (x2, y2), kind) in &eb {
            edges.push((idx[&[i, j, x, y]], idx[&[i, j, x2, y2]], kind));
        }
        for s in &sb {
            squares.push((s.map(|(x, y)| idx[&[i, j, x, y]]), true));
        }
    }
    for &((i, j), (i2, j2), _) in &ea {
        for &((x, y), (x2, y2), _) in &eb {
            squares.push((
                [
                    idx[&[i, j, x, y]],
                    idx[&[i2, j2, x, y]],
                    idx[&[i, j, x2, y2]],
                    idx[&[i2, j2, x2, y2]],
                ],
                false,
            ));
        }
    }
    Shape::new(
        nodes
            .iter()
            .map(|p| (p.to_vec(), p[0] == p[1] || p[2] == p[3]))
            .collect(),
        edges,
        squares,
    )
}

/// `k` disjoint copies of `Arr([n])`, copy-major, with coordinates
/// `(copy, i, j)`.
pub fn copies_shape(n: usize, k: usize) -> Shape {
    let base = arr_shape(n);
    let m = base.len();
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    let mut squares = Vec::new();
    for c in 0..k {
        nodes.extend(
            base.coords
                .iter()
                .zip(&base.null)
                .map(|(p, &z)| (vec![c, p[0], p[1]], z)),
        );
        edges.extend(
            base.edges
                .iter()
                .map(|e| (c * m + e.src, c * m + e.tgt, e.kind)),
        );
        squares.extend(base.squares.iter().map(|s| {
            let (t, l) = (base.edges[s.top], base.edges[s.left]);
            (
                [t.src, t.tgt, l.tgt, base.edges[s.right].tgt].map(|v| c * m + v),
                true,
            )
        }));
    }
    Shape::new(nodes, edges, squares)
}

/// Positions in a short exact line: sub, middle, quotient.
pub const GREEN_POS: [&str; 3] = ["01", "02", "12"];

/// A shape of short exact lines on cells `(r, c)` of the 3×3 grid, with
/// `r, c` indexing sub/middle/quotient. Every complete row and column is a
/// line with its own null node (coordinates `(3, r)` for rows and `(4, c)`
/// for columns); complete 2×2 blocks are commuting squares. Cells are
/// processed in the given order, each line's null node right after the
/// first two of its cells.
pub fn green_shape(cells: &[(usize, usize)]) -> Shape {
    let has = |p: (usize, usize)| cells.contains(&p);
    let mut lines: Vec<([(usize, usize); 3], Vec<usize>)> = Vec::new();
    for r in 0..3 {
        if (0..3).all(|c| has((r, c))) {
            lines.push(([(r, 0), (r, 1), (r, 2)], vec![3, r]));
        }
    }
    for c in 0..3 {
        if (0..3).all(|r| has((r, c))) {
            lines.push(([(0, c), (1, c), (2, c)], vec![4, c]));
        }
    }
    let mut order: Vec<(Vec<usize>, bool)> = Vec::new();
    let mut placed: Vec<(usize, usize)> = Vec::new();
    for &p in cells {
        order.push((vec![p.0, p.1], false));
        placed.push(p);
        for (l, z) in &lines {
            let ready =
                placed.contains(&l[0]) && placed.contains(&l[1]) && (l[0] == p || l[1] == p);
            if ready && !order.iter().any(|(c, _)| c == z) {
                order.push((z.clone(), true));
            }
        }
    }
    let idx: HashMap<Vec<usize>, usize> = order
        .iter()
        .enumerate()
        .map(|(i, (c, _))| (c.clone(), i))
        .collect();
    let at = |p: (usize, usize)| idx[&vec![p.0, p.1]];
    let mut edges = Vec::new();
    let mut squares = Vec::new();
    for (l, z) in &lines {
        let (s, m, q, z) = (at(l[0]), at(l[1]), at(l[2]), idx[z]);
        edges.extend([
            (s, m, EdgeKind::Mono),
            (m, q, EdgeKind::Epi),
            (s, z, EdgeKind::Epi),
            (z, q, EdgeKind::Mono),
        ]);
        squares.push(([s, m, z, q], true));
    }
    for r in 0..2 {
        for c in 0..2 {
            let block = [(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)];
            if block.iter().all(|&p| has(p)) {
                squares.push((block.map(at), false));
            }
        }
    }
    Shape::new(order, edges, squares)
}

/// The full 3×3 grid of short exact rows and columns.
pub fn green_grid() -> Shape {
    green_shape(&[
        (1, 1),
        (0, 1),
        (1, 0),
        (1, 2),
        (2, 1),
        (0, 0),
        (0, 2),
        (2, 0),
        (2, 2),
    ])
}

/// The middle row and column.
pub fn green_cross() -> Shape {
    green_shape(&[(1, 1), (0, 1), (1, 0), (1, 2), (2, 1)])
}

/// The border rows and columns.
pub fn green_frame() -> Shape {
    green_shape(&[
        (0, 1),
        (0, 0),
        (0, 2),
        (1, 0),
        (2, 0),
        (2, 1),
        (2, 2),
        (1, 2),
    ])
}
