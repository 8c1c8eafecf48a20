use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, Zero};

use crate::protoexact::{green_diagrams, Budget, DiagramGroupoid, ProtoExactCat};
use crate::segcheck::functor_equiv;

use super::table::{hall_table, ratio, HallTable};
use super::HallError;

/// One matrix entry of `Δμ` and `μ̄²Δ²` from input `a⊗b` to output
/// `a'⊗b'` (first factor the quotient, second the sub).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenEntry {
    pub input: (usize, usize),
    pub output: (usize, usize),
    /// `Δμ` through crosses.
    pub cross: BigRational,
    /// `Δμ` through full 3×3 grids.
    pub grid: BigRational,
    /// `Σ_c g^c_{a,b} d_c^{a',b'}` from the Hall table.
    pub hall: BigRational,
    /// `μ̄²Δ²` through frames.
    pub frame: BigRational,
    /// `μ̄²Δ²` from the Hall table, summing over the four corners.
    pub frame_hall: BigRational,
}

#[derive(Clone, Debug)]
pub struct GreenReport {
    pub labels: Vec<String>,
    pub budget: usize,
    pub dmax: Option<usize>,
    pub entries: Vec<GreenEntry>,
    /// Nonzero entries whose input or output lies past the dimension bound,
    /// where the truncation cuts off middle objects.
    pub truncated: usize,
    /// Whether grids -> crosses is an equivalence, with a witness otherwise.
    pub grid_to_cross: Result<(), String>,
    /// Whether grids -> frames is an equivalence, with a witness otherwise.
    pub grid_to_frame: Result<(), String>,
}

impl GreenReport {
    pub fn entry(&self, input: (usize, usize), output: (usize, usize)) -> Option<&GreenEntry> {
        self.entries.iter().find(|e| e.input == input && e.output == output)
    }

    /// Crosses, grids and the Hall table agree entrywise, and so do the two
    /// frame computations.
    pub fn routes_agree(&self) -> bool {
        self.entries.iter().all(|e| e.cross == e.grid && e.cross == e.hall && e.frame == e.frame_hall)
    }

    /// Whether the two composites differ somewhere.
    pub fn is_lax(&self) -> bool {
        self.entries.iter().any(|e| e.cross != e.frame)
    }

    pub fn verdict(&self) -> &'static str {
        match (self.routes_agree(), self.is_lax()) {
            (false, _) => "MISMATCH",
            (true, true) => "LAX (expected)",
            (true, false) => "STRICT",
        }
    }
}

impl fmt::Display for GreenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "green budget={} dmax={}", self.budget, self.dmax.map_or("-".to_string(), |d| d.to_string()))?;
        let l = &self.labels;
        for e in &self.entries {
            writeln!(
                f,
                "entry in={},{} out={},{} cross={} grid={} hall={} frame={} frame_hall={}",
                l[e.input.0], l[e.input.1], l[e.output.0], l[e.output.1], e.cross, e.grid, e.hall, e.frame, e.frame_hall
            )?;
        }
        writeln!(f, "truncated entries: {}", self.truncated)?;
        let eq = |r: &Result<(), String>| match r {
            Ok(()) => "equivalence".to_string(),
            Err(w) => format!("not an equivalence: {w}"),
        };
        writeln!(f, "grid->cross: {}", eq(&self.grid_to_cross))?;
        writeln!(f, "grid->frame: {}", eq(&self.grid_to_frame))?;
        write!(f, "verdict: {}", self.verdict())
    }
}

type Key = ((usize, usize), (usize, usize));

/// `Σ_X weight(X) / |Aut X|` grouped by input and output classes, with
/// `weight = Π |Aut numer| / Π |Aut denom|` over the listed cells.
fn route(g: &DiagramGroupoid, class_of: &[usize], t: &HallTable, numer: &[[usize; 2]], denom: &[[usize; 2]]) -> BTreeMap<Key, BigRational> {
    let node = |p: [usize; 2]| g.shape.node(&p).expect("green shape cell");
    let cls = |d: &crate::protoexact::Diagram, p: [usize; 2]| class_of[d.obj[node(p)] as usize];
    let mut out: BTreeMap<Key, BigRational> = BTreeMap::new();
    for (d, aut) in g.reps.iter().zip(&g.groupoid.classes) {
        let key = ((cls(d, [2, 1]), cls(d, [0, 1])), (cls(d, [1, 2]), cls(d, [1, 0])));
        let num: usize = numer.iter().map(|&p| t.aut[cls(d, p)]).product();
        let den: usize = denom.iter().map(|&p| t.aut[cls(d, p)]).product::<usize>() * aut.order();
        *out.entry(key).or_insert_with(BigRational::zero) += ratio(num, den);
    }
    out
}

/// Compares `Δμ` (via crosses and via grids) with `μ̄²Δ²` (via frames) on
/// all basis tensors, together with the Hall-table formulas for both.
pub fn green_compare(x: &ProtoExactCat, budget: Budget) -> Result<GreenReport, HallError> {
    let t = hall_table(x, budget)?;
    let g = green_diagrams(x, budget)?;
    let classes = x.object_classes();
    let mut class_of = vec![0; x.cat.objects()];
    for (k, cl) in classes.iter().enumerate() {
        for &o in cl {
            class_of[o] = k;
        }
    }
    let ends = [[0, 1], [2, 1], [1, 0], [1, 2]];
    let corners = [[0, 0], [0, 2], [2, 0], [2, 2]];
    let cross = route(&g.cross, &class_of, &t, &[[1, 1]], &[]);
    let grid = route(&g.grid, &class_of, &t, &[[1, 1]], &[]);
    let frame = route(&g.frame, &class_of, &t, &ends, &corners);
    let n = t.len();
    let mut entries = Vec::new();
    let mut truncated = 0;
    for a in 0..n {
        for b in 0..n {
            for a2 in 0..n {
                for b2 in 0..n {
                    let key = ((a, b), (a2, b2));
                    let get = |m: &BTreeMap<Key, BigRational>| m.get(&key).cloned().unwrap_or_else(BigRational::zero);
                    let hall: BigRational = (0..n).map(|c| t.g(c, a, b) * t.d(c, a2, b2)).sum();
                    // Split b and a along the rows, then multiply the columns.
                    let mut frame_hall = BigRational::zero();
                    for k00 in 0..n {
                        for k02 in 0..n {
                            for k20 in 0..n {
                                for k22 in 0..n {
                                    frame_hall += t.d(b, k02, k00) * t.d(a, k22, k20) * t.g(b2, k20, k00) * t.g(a2, k22, k02);
                                }
                            }
                        }
                    }
                    let e = GreenEntry { input: (a, b), output: (a2, b2), cross: get(&cross), grid: get(&grid), hall, frame: get(&frame), frame_hall };
                    if [&e.cross, &e.grid, &e.hall, &e.frame, &e.frame_hall].iter().any(|v| !v.is_zero()) {
                        if t.in_budget(&[a, b]) && t.in_budget(&[a2, b2]) {
                            entries.push(e);
                        } else {
                            truncated += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(GreenReport {
        labels: t.labels.clone(),
        budget: budget.max_classes,
        dmax: t.dmax,
        entries,
        truncated,
        grid_to_cross: functor_equiv(&g.to_cross, &g.grid.groupoid, &g.cross.groupoid),
        grid_to_frame: functor_equiv(&g.to_frame, &g.grid.groupoid, &g.frame.groupoid),
    })
}
