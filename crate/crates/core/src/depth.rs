//! Exact coverage depth of a half-open rectangle by closed triangle
//! translates.
//!
//! Depth is constant on every open face of the arrangement formed by the
//! lines `x = c`, `y = c` and `x + y = c` supporting the triangle edges and
//! the rectangle sides. The sweep visits vertical sample lines (every event
//! abscissa and every slab midpoint); on each line the triangles cut closed
//! y-intervals, and depth is evaluated at every interval endpoint and every
//! gap midpoint. Faces, edges and vertices of the arrangement are all hit.
//!
//! All coordinates are rescaled to integers first (common denominator times
//! four, which absorbs both rounds of midpoints), so the sweep runs on `i128`
//! whenever the magnitudes allow and on `BigInt` otherwise.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::geom::{Point, TriTranslate};
use crate::rational::{common_denominator, Rational};

/// Minimum depth and a point attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthMin {
    pub depth: usize,
    pub witness: Point,
}

/// Number of triangles containing `p`.
pub fn depth_at(tris: &[TriTranslate], p: &Point) -> usize {
    tris.iter().filter(|t| t.contains(p)).count()
}

/// Minimum over `[x0,x1) × [y0,y1)` of the number of triangles containing a
/// point. With `stop_below = Some(k)` the sweep returns as soon as a point of
/// depth `< k` is found; the returned depth is then attained at the witness
/// and `< k`, but need not be the global minimum.
///
/// Panics if the rectangle is empty.
pub fn min_depth(
    tris: &[TriTranslate],
    x0: &Rational,
    x1: &Rational,
    y0: &Rational,
    y1: &Rational,
    stop_below: Option<usize>,
) -> DepthMin {
    let problem = Scaled::new(tris, x0, x1, y0, y1);
    let (depth, (wx, wy)) = match &problem.kernel {
        Kernel::Small { tris, unit, rect } => {
            let (d, (x, y)) = min_over_samples(tris, unit, rect, stop_below);
            (d, (BigInt::from(x), BigInt::from(y)))
        }
        Kernel::Big { tris, unit, rect } => min_over_samples(tris, unit, rect, stop_below),
    };
    DepthMin { depth, witness: problem.unscale(wx, wy) }
}

/// Distinct sets of triangles (by index into `tris`) containing some sample
/// point of the arrangement inside the rectangle, each with one such point.
/// Every combinatorially distinct containment pattern in the rectangle
/// appears.
pub fn containment_classes(
    tris: &[TriTranslate],
    x0: &Rational,
    x1: &Rational,
    y0: &Rational,
    y1: &Rational,
) -> Vec<(Vec<usize>, Point)> {
    let problem = Scaled::new(tris, x0, x1, y0, y1);
    let mut classes: BTreeMap<Vec<usize>, (BigInt, BigInt)> = BTreeMap::new();
    match &problem.kernel {
        Kernel::Small { tris: st, unit, rect } => {
            visit_samples(st, unit, rect, |x, y, _| {
                let set = members(st, unit, x, y, &problem.index);
                classes
                    .entry(set)
                    .or_insert_with(|| (BigInt::from(*x), BigInt::from(*y)));
                ControlFlow::Continue(())
            });
        }
        Kernel::Big { tris: bt, unit, rect } => {
            visit_samples(bt, unit, rect, |x, y, _| {
                let set = members(bt, unit, x, y, &problem.index);
                classes.entry(set).or_insert_with(|| (x.clone(), y.clone()));
                ControlFlow::Continue(())
            });
        }
    }
    classes
        .into_iter()
        .map(|(set, (x, y))| (set, problem.unscale(x, y)))
        .collect()
}

fn members<I: Integer + Signed + Clone>(
    tris: &[(I, I)],
    unit: &I,
    x: &I,
    y: &I,
    index: &[usize],
) -> Vec<usize> {
    tris.iter()
        .zip(index)
        .filter(|((vx, vy), _)| {
            x >= vx && y >= vy && x.clone() + y.clone() <= vx.clone() + vy.clone() + unit.clone()
        })
        .map(|(_, &i)| i)
        .collect()
}

enum Kernel {
    Small { tris: Vec<(i128, i128)>, unit: i128, rect: [i128; 4] },
    Big { tris: Vec<(BigInt, BigInt)>, unit: BigInt, rect: [BigInt; 4] },
}

struct Scaled {
    scale: BigInt,
    /// Original index of each triangle kept in the kernel.
    index: Vec<usize>,
    kernel: Kernel,
}

impl Scaled {
    fn new(tris: &[TriTranslate], x0: &Rational, x1: &Rational, y0: &Rational, y1: &Rational) -> Self {
        assert!(x0 < x1 && y0 < y1, "empty rectangle");
        let index: Vec<usize> = tris
            .iter()
            .enumerate()
            .filter(|(_, t)| t.meets_rect(x0, x1, y0, y1))
            .map(|(i, _)| i)
            .collect();
        let den = common_denominator(
            [x0, x1, y0, y1]
                .into_iter()
                .chain(index.iter().flat_map(|&i| [&tris[i].v.x, &tris[i].v.y])),
        );
        let scale = den * BigInt::from(4);
        let to_int = |r: &Rational| -> BigInt { r.numer() * (&scale / r.denom()) };
        let big_tris: Vec<(BigInt, BigInt)> = index
            .iter()
            .map(|&i| (to_int(&tris[i].v.x), to_int(&tris[i].v.y)))
            .collect();
        let big_rect = [to_int(x0), to_int(x1), to_int(y0), to_int(y1)];

        // sums of three terms must stay well inside i128
        let limit = BigInt::one() << 120;
        let fits = scale < limit
            && big_rect.iter().all(|v| v.abs() < limit)
            && big_tris.iter().all(|(a, b)| a.abs() < limit && b.abs() < limit);
        let kernel = if fits {
            let conv = |v: &BigInt| v.to_i128().expect("checked magnitude");
            Kernel::Small {
                tris: big_tris.iter().map(|(a, b)| (conv(a), conv(b))).collect(),
                unit: conv(&scale),
                rect: [
                    conv(&big_rect[0]),
                    conv(&big_rect[1]),
                    conv(&big_rect[2]),
                    conv(&big_rect[3]),
                ],
            }
        } else {
            Kernel::Big { tris: big_tris, unit: scale.clone(), rect: big_rect }
        };
        Scaled { scale, index, kernel }
    }

    fn unscale(&self, x: BigInt, y: BigInt) -> Point {
        Point::new(Rational::new(x, self.scale.clone()), Rational::new(y, self.scale.clone()))
    }
}

fn min_over_samples<I>(tris: &[(I, I)], unit: &I, rect: &[I; 4], stop_below: Option<usize>) -> (usize, (I, I))
where
    I: Integer + Signed + Clone,
{
    let mut best: Option<(usize, (I, I))> = None;
    visit_samples(tris, unit, rect, |x, y, depth| {
        if best.as_ref().is_none_or(|(b, _)| depth < *b) {
            best = Some((depth, (x.clone(), y.clone())));
            if depth == 0 || stop_below.is_some_and(|k| depth < k) {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    best.expect("a non-empty rectangle has at least one sample")
}

/// Calls `visit(x, y, depth)` on every sample point of the arrangement inside
/// the half-open rectangle.
fn visit_samples<I, F>(tris: &[(I, I)], unit: &I, rect: &[I; 4], mut visit: F)
where
    I: Integer + Signed + Clone,
    F: FnMut(&I, &I, usize) -> ControlFlow<()>,
{
    let [x0, x1, y0, y1] = rect;
    let two = I::one() + I::one();
    let hyp: Vec<I> = tris
        .iter()
        .map(|(x, y)| x.clone() + y.clone() + unit.clone())
        .collect();

    let mut horizontals: Vec<I> = tris.iter().map(|(_, y)| y.clone()).collect();
    horizontals.push(y0.clone());
    horizontals.push(y1.clone());

    let mut events: Vec<I> = vec![x0.clone()];
    events.extend(tris.iter().map(|(x, _)| x.clone()));
    for d in &hyp {
        events.extend(horizontals.iter().map(|h| d.clone() - h.clone()));
    }
    events.retain(|e| e >= x0 && e < x1);
    events.sort();
    events.dedup();

    let mut samples: Vec<I> = Vec::with_capacity(2 * events.len());
    for (i, e) in events.iter().enumerate() {
        samples.push(e.clone());
        let next = events.get(i + 1).unwrap_or(x1);
        samples.push((e.clone() + next.clone()) / two.clone());
    }

    let mut starts: Vec<I> = Vec::with_capacity(tris.len());
    let mut ends: Vec<I> = Vec::with_capacity(tris.len());
    let mut ys: Vec<I> = Vec::with_capacity(4 * tris.len() + 4);
    for x in &samples {
        starts.clear();
        ends.clear();
        for ((vx, vy), d) in tris.iter().zip(&hyp) {
            if vx <= x {
                let top = d.clone() - x.clone();
                if &top >= vy {
                    starts.push(vy.clone());
                    ends.push(top);
                }
            }
        }
        starts.sort();
        ends.sort();

        ys.clear();
        ys.push(y0.clone());
        ys.push(y1.clone());
        ys.extend(
            starts
                .iter()
                .chain(ends.iter())
                .filter(|v| *v > y0 && *v < y1)
                .cloned(),
        );
        ys.sort();
        ys.dedup();
        let len = ys.len();
        for i in 0..len - 1 {
            let mid = (ys[i].clone() + ys[i + 1].clone()) / two.clone();
            ys.push(mid);
        }
        ys.retain(|y| y < y1);

        for y in &ys {
            let entered = starts.partition_point(|s| s <= y);
            let left = ends.partition_point(|e| e < y);
            if visit(x, y, entered - left).is_break() {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn tri(a: Rational, b: Rational) -> TriTranslate {
        TriTranslate::new(Point::new(a, b))
    }

    fn four() -> Vec<TriTranslate> {
        vec![
            tri(int(0), int(0)),
            tri(int(0), rat(1, 2)),
            tri(rat(1, 2), int(0)),
            tri(rat(1, 2), rat(1, 2)),
        ]
    }

    #[test]
    fn four_translates_cover_the_unit_square_once() {
        let m = min_depth(&four(), &int(0), &int(1), &int(0), &int(1), None);
        assert_eq!(m.depth, 1);
        assert_eq!(depth_at(&four(), &m.witness), 1);
    }

    #[test]
    fn single_triangle_leaves_a_hole() {
        let m = min_depth(&[tri(int(0), int(0))], &int(0), &int(1), &int(0), &int(1), None);
        assert_eq!(m.depth, 0);
        assert!(m.witness.sum() > int(1));
        assert!(m.witness.x < int(1) && m.witness.y < int(1));
    }

    #[test]
    fn no_triangles_means_depth_zero() {
        let m = min_depth(&[], &int(0), &int(1), &int(0), &int(1), None);
        assert_eq!(m.depth, 0);
    }

    #[test]
    fn huge_denominators_fall_back_to_bigint() {
        let big = Rational::new(BigInt::one(), BigInt::one() << 130);
        let t = vec![tri(-big.clone(), -big.clone())];
        let m = min_depth(&t, &int(0), &rat(1, 4), &int(0), &rat(1, 4), None);
        assert_eq!(m.depth, 1);
        let classes = containment_classes(&t, &int(0), &rat(1, 4), &int(0), &rat(1, 4));
        assert_eq!(classes.len(), 1);
    }

    #[test]
    fn early_exit_reports_a_shallow_point() {
        let m = min_depth(&four(), &int(0), &int(1), &int(0), &int(1), Some(2));
        assert!(m.depth < 2);
        assert_eq!(depth_at(&four(), &m.witness), m.depth);
    }

    #[test]
    fn classes_report_their_members() {
        let tris = four();
        let classes = containment_classes(&tris, &int(0), &int(1), &int(0), &int(1));
        assert!(classes.len() > 4);
        for (set, p) in &classes {
            let expect: Vec<usize> = (0..tris.len()).filter(|&i| tris[i].contains(p)).collect();
            assert_eq!(&expect, set);
        }
        // (1/2, 1/2) lies in all four
        assert!(classes.iter().any(|(s, _)| s.len() == 4));
    }
}
