//! Points, the strict order on them, triangle translates, half-open
//! rectangles and half-open stair polygons.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, in_half_open, Rational};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn sum(&self) -> Rational {
        &self.x + &self.y
    }

    /// Componentwise `>=`.
    pub fn dominates(&self, other: &Point) -> bool {
        self.x >= other.x && self.y >= other.y
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Point) -> Point {
        Point {
            x: self.x.clone().max(other.x.clone()),
            y: self.y.clone().max(other.y.clone()),
        }
    }

    /// Compares under the sum-then-x order; `Less` means `self ≺ other`.
    pub fn order_cmp(&self, other: &Point) -> Ordering {
        self.sum()
            .cmp(&other.sum())
            .then_with(|| self.x.cmp(&other.x))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `p ≺ q`: smaller coordinate sum, or equal sums and smaller x.
///
/// On points with equal sum and equal x the points coincide, so this is a
/// strict total order.
pub fn precedes(p: &Point, q: &Point) -> bool {
    p.order_cmp(q) == Ordering::Less
}

/// The closed triangle `T + v` where `T` has vertices (0,0), (1,0), (0,1).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriTranslate {
    pub v: Point,
}

impl fmt::Debug for TriTranslate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T+{:?}", self.v)
    }
}

impl TriTranslate {
    pub fn new(v: Point) -> Self {
        TriTranslate { v }
    }

    /// Value of `x + y` along the hypotenuse.
    pub fn hypotenuse_sum(&self) -> Rational {
        self.v.sum() + Rational::one()
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.x >= self.v.x && p.y >= self.v.y && p.sum() <= self.hypotenuse_sum()
    }

    /// Both closed triangles share a point. The componentwise max of the two
    /// vertices is the lowest candidate; it lies in both iff the sets meet.
    pub fn intersects(&self, other: &TriTranslate) -> bool {
        let corner = self.v.join(&other.v);
        let lim = self.v.sum().min(other.v.sum()) + Rational::one();
        corner.sum() <= lim
    }

    /// `self` cuts `other`: distinct, intersecting, and `other.v ≺ self.v`.
    pub fn cuts(&self, other: &TriTranslate) -> bool {
        self != other && self.intersects(other) && precedes(&other.v, &self.v)
    }

    /// Meets the half-open square `[x0,x1) × [y0,y1)`.
    pub fn meets_rect(&self, x0: &Rational, x1: &Rational, y0: &Rational, y1: &Rational) -> bool {
        let px = self.v.x.clone().max(x0.clone());
        let py = self.v.y.clone().max(y0.clone());
        px < *x1 && py < *y1 && &px + &py <= self.hypotenuse_sum()
    }
}

/// `t1` cuts `t2`.
pub fn cuts(t1: &TriTranslate, t2: &TriTranslate) -> bool {
    t1.cuts(t2)
}

/// Lower-left corner of `T_i ∩ T_j` for a cutter `cutter` of `target`.
///
/// Inside `target`, the intersection is the right triangle with this corner
/// whose hypotenuse lies on the hypotenuse of `target`.
pub fn cut_apex(target: &TriTranslate, cutter: &TriTranslate) -> Result<Point> {
    if !cutter.cuts(target) {
        return Err(Error::Precondition(format!(
            "{cutter:?} does not cut {target:?}"
        )));
    }
    Ok(target.v.join(&cutter.v))
}

/// `[x0, x1) × [y0, y1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HalfOpenRect {
    pub x0: Rational,
    pub x1: Rational,
    pub y0: Rational,
    pub y1: Rational,
}

impl fmt::Debug for HalfOpenRect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}) x [{}, {})",
            format_rational(&self.x0),
            format_rational(&self.x1),
            format_rational(&self.y0),
            format_rational(&self.y1)
        )
    }
}

impl HalfOpenRect {
    pub fn new(x0: Rational, x1: Rational, y0: Rational, y1: Rational) -> Result<Self> {
        if x0 >= x1 || y0 >= y1 {
            return Err(Error::InvalidRect(format!(
                "empty rectangle [{}, {}) x [{}, {})",
                format_rational(&x0),
                format_rational(&x1),
                format_rational(&y0),
                format_rational(&y1)
            )));
        }
        Ok(HalfOpenRect { x0, x1, y0, y1 })
    }

    pub fn contains(&self, p: &Point) -> bool {
        in_half_open(&p.x, &self.x0, &self.x1) && in_half_open(&p.y, &self.y0, &self.y1)
    }

    pub fn area(&self) -> Rational {
        (&self.x1 - &self.x0) * (&self.y1 - &self.y0)
    }

    /// First point (in lexicographic order of the segment parameter) of the
    /// closed axis-parallel segment that lies in this rectangle.
    pub fn first_hit(&self, seg: &Segment) -> Option<Point> {
        if seg.a.y == seg.b.y {
            let y = &seg.a.y;
            if !in_half_open(y, &self.y0, &self.y1) {
                return None;
            }
            let lo = seg.a.x.clone().min(seg.b.x.clone()).max(self.x0.clone());
            let hi = seg.a.x.clone().max(seg.b.x.clone());
            (lo < self.x1 && lo <= hi).then(|| Point::new(lo, y.clone()))
        } else {
            let x = &seg.a.x;
            if !in_half_open(x, &self.x0, &self.x1) {
                return None;
            }
            let lo = seg.a.y.clone().min(seg.b.y.clone()).max(self.y0.clone());
            let hi = seg.a.y.clone().max(seg.b.y.clone());
            (lo < self.y1 && lo <= hi).then(|| Point::new(x.clone(), lo))
        }
    }
}

/// Closed axis-parallel segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

/// Half-open r-stair polygon `⋃_{i=0..r} [x_i, x_{i+1}) × [y_{r+1}, y_i)`.
///
/// `x_breaks` is strictly increasing, `y_breaks` strictly decreasing, both of
/// length `r + 2`. Strict monotonicity makes the representation unique.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StairPolygon {
    x_breaks: Vec<Rational>,
    y_breaks: Vec<Rational>,
}

impl fmt::Debug for StairPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<_> = self.x_breaks.iter().map(format_rational).collect();
        let ys: Vec<_> = self.y_breaks.iter().map(format_rational).collect();
        write!(f, "Stair(x: {}; y: {})", xs.join(", "), ys.join(", "))
    }
}

impl StairPolygon {
    pub fn new(x_breaks: Vec<Rational>, y_breaks: Vec<Rational>) -> Result<Self> {
        if x_breaks.len() < 2 || x_breaks.len() != y_breaks.len() {
            return Err(Error::InvalidStair(format!(
                "need matching break lists of length >= 2, got {} and {}",
                x_breaks.len(),
                y_breaks.len()
            )));
        }
        if x_breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidStair("x breaks must be strictly increasing".into()));
        }
        if y_breaks.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidStair("y breaks must be strictly decreasing".into()));
        }
        Ok(StairPolygon { x_breaks, y_breaks })
    }

    /// `[x0, x1) × [y0, y1)` as a 0-stair polygon.
    pub fn rect(x0: Rational, x1: Rational, y0: Rational, y1: Rational) -> Result<Self> {
        StairPolygon::new(vec![x0, x1], vec![y1, y0])
    }

    /// Builds the normalized stair polygon with columns `[xs[i], xs[i+1]) ×
    /// [bottom, tops[i])`.
    ///
    /// Zero-width columns are dropped, adjacent columns of equal height are
    /// merged, and everything from the first column with `top <= bottom` on is
    /// discarded. Returns `None` when nothing is left. Tops must be
    /// non-increasing across non-empty columns.
    pub fn from_profile(
        xs: &[Rational],
        tops: &[Rational],
        bottom: &Rational,
    ) -> Result<Option<Self>> {
        if xs.len() != tops.len() + 1 {
            return Err(Error::InvalidStair(format!(
                "profile with {} breaks needs {} tops, got {}",
                xs.len(),
                xs.len().saturating_sub(1),
                tops.len()
            )));
        }
        let mut out_x: Vec<Rational> = Vec::new();
        let mut out_top: Vec<Rational> = Vec::new();
        for (w, top) in xs.windows(2).zip(tops) {
            if w[0] >= w[1] {
                if w[0] > w[1] {
                    return Err(Error::InvalidStair("profile breaks out of order".into()));
                }
                continue;
            }
            if top <= bottom {
                break;
            }
            match out_top.last() {
                Some(last) if last == top => {
                    *out_x.last_mut().expect("nonempty") = w[1].clone();
                }
                Some(last) if last < top => {
                    return Err(Error::InvalidStair("column tops must not increase".into()));
                }
                _ => {
                    if out_x.is_empty() {
                        out_x.push(w[0].clone());
                    }
                    out_x.push(w[1].clone());
                    out_top.push(top.clone());
                }
            }
        }
        if out_top.is_empty() {
            return Ok(None);
        }
        let mut ys = out_top;
        ys.push(bottom.clone());
        Ok(Some(StairPolygon::new(out_x, ys)?))
    }

    pub fn x_breaks(&self) -> &[Rational] {
        &self.x_breaks
    }

    pub fn y_breaks(&self) -> &[Rational] {
        &self.y_breaks
    }

    /// Number of stairs `r`.
    pub fn stair_count(&self) -> usize {
        self.x_breaks.len() - 2
    }

    pub fn bottom(&self) -> &Rational {
        self.y_breaks.last().expect("at least two breaks")
    }

    pub fn left(&self) -> &Rational {
        &self.x_breaks[0]
    }

    pub fn right(&self) -> &Rational {
        self.x_breaks.last().expect("at least two breaks")
    }

    pub fn top(&self) -> &Rational {
        &self.y_breaks[0]
    }

    /// Lower-left vertex `(x_0, y_{r+1})`.
    pub fn anchor(&self) -> Point {
        Point::new(self.left().clone(), self.bottom().clone())
    }

    /// Reflex corners `(x_j, y_j)` for `j = 1..=r`.
    pub fn inner_corners(&self) -> Vec<Point> {
        let r = self.stair_count();
        (1..=r)
            .map(|j| Point::new(self.x_breaks[j].clone(), self.y_breaks[j].clone()))
            .collect()
    }

    /// Outer corners `(x_{j+1}, y_j)` for `j = 0..=r`; the supremum points of
    /// each column.
    pub fn outer_corners(&self) -> Vec<Point> {
        (0..=self.stair_count())
            .map(|j| Point::new(self.x_breaks[j + 1].clone(), self.y_breaks[j].clone()))
            .collect()
    }

    /// Index of the column whose half-open x-range holds `x`.
    fn column_of(&self, x: &Rational) -> Option<usize> {
        if x < self.left() || x >= self.right() {
            return None;
        }
        // last break <= x
        let idx = self.x_breaks.partition_point(|b| b <= x);
        Some(idx - 1)
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self.column_of(&p.x) {
            Some(j) => in_half_open(&p.y, self.bottom(), &self.y_breaks[j]),
            None => false,
        }
    }

    /// Topological interior: strict inequalities on every face.
    pub fn interior_contains(&self, p: &Point) -> bool {
        if p.x <= *self.left() || p.y <= *self.bottom() {
            return false;
        }
        match self.column_of(&p.x) {
            Some(j) => p.y < self.y_breaks[j],
            None => false,
        }
    }

    /// Membership in the topological closure.
    pub fn closure_contains(&self, p: &Point) -> bool {
        if p.y < *self.bottom() {
            return false;
        }
        self.x_breaks
            .windows(2)
            .zip(&self.y_breaks)
            .any(|(w, top)| w[0] <= p.x && p.x <= w[1] && p.y <= *top)
    }

    pub fn area(&self) -> Rational {
        let bottom = self.bottom();
        self.x_breaks
            .windows(2)
            .zip(&self.y_breaks)
            .map(|(w, top)| (&w[1] - &w[0]) * (top - bottom))
            .fold(Rational::zero(), |acc, a| acc + a)
    }

    /// Column decomposition; pairwise disjoint, union equals `self`.
    pub fn to_rects(&self) -> Vec<HalfOpenRect> {
        let bottom = self.bottom();
        self.x_breaks
            .windows(2)
            .zip(&self.y_breaks)
            .map(|(w, top)| HalfOpenRect {
                x0: w[0].clone(),
                x1: w[1].clone(),
                y0: bottom.clone(),
                y1: top.clone(),
            })
            .collect()
    }

    /// `self ∩ [0, l)²`, or `None` when empty.
    pub fn clip_to_window(&self, l: &Rational) -> Option<StairPolygon> {
        let zero = Rational::zero();
        self.clip_to_rect(&zero, l, &zero, l)
    }

    /// `self ∩ ([x0, x1) × [y0, y1))`, or `None` when empty.
    pub fn clip_to_rect(
        &self,
        x0: &Rational,
        x1: &Rational,
        y0: &Rational,
        y1: &Rational,
    ) -> Option<StairPolygon> {
        let bottom = self.bottom().clone().max(y0.clone());
        let mut xs = Vec::with_capacity(self.x_breaks.len());
        let mut tops = Vec::with_capacity(self.y_breaks.len());
        for (w, top) in self.x_breaks.windows(2).zip(&self.y_breaks) {
            let a = w[0].clone().max(x0.clone());
            let b = w[1].clone().min(x1.clone());
            if a >= b {
                continue;
            }
            if xs.is_empty() {
                xs.push(a);
            }
            xs.push(b);
            tops.push(top.clone().min(y1.clone()));
        }
        if tops.is_empty() {
            return None;
        }
        StairPolygon::from_profile(&xs, &tops, &bottom).expect("clipped profile stays monotone")
    }

    /// `closure(self) \ self`: the closed staircase running from the top-left
    /// corner along the column tops and risers down to the bottom-right corner.
    pub fn open_boundary(&self) -> Vec<Segment> {
        let r = self.stair_count();
        let mut segs = Vec::with_capacity(2 * r + 2);
        for j in 0..=r {
            let top = &self.y_breaks[j];
            segs.push(Segment {
                a: Point::new(self.x_breaks[j].clone(), top.clone()),
                b: Point::new(self.x_breaks[j + 1].clone(), top.clone()),
            });
            segs.push(Segment {
                a: Point::new(self.x_breaks[j + 1].clone(), top.clone()),
                b: Point::new(self.x_breaks[j + 1].clone(), self.y_breaks[j + 1].clone()),
            });
        }
        segs
    }

    /// A point of `closure(self) \ self` lying in `other`, if any.
    pub fn open_boundary_hit(&self, other: &StairPolygon) -> Option<Point> {
        let rects = other.to_rects();
        self.open_boundary()
            .iter()
            .find_map(|seg| rects.iter().find_map(|r| r.first_hit(seg)))
    }

    /// Contained in the closed triangle `t`.
    pub fn fits_in(&self, t: &TriTranslate) -> bool {
        let lim = t.hypotenuse_sum();
        self.anchor().dominates(&t.v) && self.outer_corners().iter().all(|c| c.sum() <= lim)
    }
}
