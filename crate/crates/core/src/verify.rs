//! Exact k-fold covering and exact k-fold tiling checks.

use num_traits::Zero;

use crate::decompose::CoveringInstance;
use crate::depth::min_depth;
use crate::error::{Error, Result};
use crate::geom::{Point, StairPolygon};
use crate::rational::{format_rational, Rational};

/// Minimum coverage depth of the window and a point attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageCertificate {
    pub min_depth: usize,
    pub witness: Point,
}

pub fn coverage_certificate(inst: &CoveringInstance) -> CoverageCertificate {
    let zero = Rational::zero();
    let m = min_depth(inst.translates(), &zero, inst.l(), &zero, inst.l(), None);
    CoverageCertificate { min_depth: m.depth, witness: m.witness }
}

/// Every point of `[0, l)²` lies in at least `k` translates.
pub fn is_k_fold_covering(inst: &CoveringInstance) -> bool {
    let zero = Rational::zero();
    let k = inst.k() as usize;
    min_depth(inst.translates(), &zero, inst.l(), &zero, inst.l(), Some(k)).depth >= k
}

/// A point of the window together with the number of cells containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityWitness {
    pub point: Point,
    pub multiplicity: usize,
}

/// Outcome of the exact tiling check. `under` is the first grid cell (in x
/// then y order) covered fewer than `k` times, `over` the first covered more
/// than `k` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingReport {
    pub k: usize,
    pub under: Option<MultiplicityWitness>,
    pub over: Option<MultiplicityWitness>,
}

impl TilingReport {
    pub fn is_exact(&self) -> bool {
        self.under.is_none() && self.over.is_none()
    }

    pub fn counterexample(&self) -> Option<&MultiplicityWitness> {
        self.under.as_ref().or(self.over.as_ref())
    }
}

/// Checks that every point of `[0, l)²` lies in exactly `k` cells.
///
/// All cells are half-open with the same orientation, so multiplicity is
/// constant on each cell of the grid spanned by all breaks and equals its
/// value at the cell's lower-left corner. Coordinates are compressed to
/// indices and multiplicities accumulated with a 2D difference array.
pub fn verify_exact_tiling(cells: &[StairPolygon], k: usize, l: &Rational) -> Result<TilingReport> {
    let zero = Rational::zero();
    for (i, c) in cells.iter().enumerate() {
        if *c.left() < zero || *c.bottom() < zero || c.right() > l || c.top() > l {
            return Err(Error::Precondition(format!(
                "cell {i} ({c:?}) leaves the window [0, {})^2",
                format_rational(l)
            )));
        }
    }
    let mut xs: Vec<Rational> = vec![zero.clone(), l.clone()];
    let mut ys: Vec<Rational> = vec![zero, l.clone()];
    for c in cells {
        xs.extend(c.x_breaks().iter().cloned());
        ys.extend(c.y_breaks().iter().cloned());
    }
    xs.sort();
    xs.dedup();
    ys.sort();
    ys.dedup();

    let (nx, ny) = (xs.len(), ys.len());
    let idx = |v: &[Rational], r: &Rational| v.binary_search(r).expect("break registered");
    let mut diff = vec![0i64; (nx + 1) * (ny + 1)];
    let at = |i: usize, j: usize| i * (ny + 1) + j;
    for c in cells {
        for rect in c.to_rects() {
            let (a, b) = (idx(&xs, &rect.x0), idx(&xs, &rect.x1));
            let (p, q) = (idx(&ys, &rect.y0), idx(&ys, &rect.y1));
            diff[at(a, p)] += 1;
            diff[at(b, p)] -= 1;
            diff[at(a, q)] -= 1;
            diff[at(b, q)] += 1;
        }
    }
    for i in 0..=nx {
        for j in 1..=ny {
            diff[at(i, j)] += diff[at(i, j - 1)];
        }
    }
    for i in 1..=nx {
        for j in 0..=ny {
            diff[at(i, j)] += diff[at(i - 1, j)];
        }
    }

    let mut report = TilingReport { k, under: None, over: None };
    // grid cells [xs[i], xs[i+1]) x [ys[j], ys[j+1]) inside the window
    for i in 0..nx - 1 {
        for j in 0..ny - 1 {
            let m = usize::try_from(diff[at(i, j)]).expect("multiplicity is a count");
            let slot = if m < k {
                &mut report.under
            } else if m > k {
                &mut report.over
            } else {
                continue;
            };
            if slot.is_none() {
                *slot = Some(MultiplicityWitness {
                    point: Point::new(xs[i].clone(), ys[j].clone()),
                    multiplicity: m,
                });
            }
        }
        if report.under.is_some() && report.over.is_some() {
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn quarters() -> Vec<StairPolygon> {
        let h = rat(1, 2);
        vec![
            StairPolygon::rect(int(0), h.clone(), int(0), h.clone()).unwrap(),
            StairPolygon::rect(h.clone(), int(1), int(0), h.clone()).unwrap(),
            StairPolygon::rect(int(0), h.clone(), h.clone(), int(1)).unwrap(),
            StairPolygon::rect(h.clone(), int(1), h.clone(), int(1)).unwrap(),
        ]
    }

    #[test]
    fn quarters_tile_exactly_once() {
        let r = verify_exact_tiling(&quarters(), 1, &int(1)).unwrap();
        assert!(r.is_exact());
    }

    #[test]
    fn missing_quarter_is_reported() {
        let mut cells = quarters();
        cells.pop();
        let r = verify_exact_tiling(&cells, 1, &int(1)).unwrap();
        let w = r.under.unwrap();
        assert_eq!(w.multiplicity, 0);
        assert_eq!(w.point, Point::new(rat(1, 2), rat(1, 2)));
        assert!(r.over.is_none());
    }

    #[test]
    fn duplicated_quarter_is_reported() {
        let mut cells = quarters();
        cells.push(cells[0].clone());
        let r = verify_exact_tiling(&cells, 1, &int(1)).unwrap();
        let w = r.over.unwrap();
        assert_eq!(w.multiplicity, 2);
        assert_eq!(w.point, Point::new(int(0), int(0)));
    }

    #[test]
    fn cells_outside_the_window_are_rejected() {
        let cells = vec![StairPolygon::rect(int(0), int(2), int(0), int(1)).unwrap()];
        assert!(verify_exact_tiling(&cells, 1, &int(1)).is_err());
    }

    #[test]
    fn empty_cell_list_fails_everywhere() {
        let r = verify_exact_tiling(&[], 1, &int(1)).unwrap();
        assert_eq!(r.under.unwrap().multiplicity, 0);
    }
}
