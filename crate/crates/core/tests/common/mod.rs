//! Independent oracles and fixture generators shared by the integration
//! tests. Nothing here calls the geometry predicates under test; coordinates
//! are rescaled to `i128` and every predicate is re-derived from scratch.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tricover::audit::IndexedStair;
use tricover::decompose::{CellRegion, DecompositionResult};
use tricover::lattice::{lattice_covers, lattice_instance, perturb_instance, Lattice};
use tricover::rational::{int, rat, Rational};
use tricover::verify::is_k_fold_covering;
use tricover::{CoveringInstance, Point, StairPolygon};

/// Common integer scale for a set of rationals: four times the lcm of their
/// denominators, so midpoints of midpoints stay integral.
pub struct Scale {
    factor: Rational,
}

impl Scale {
    pub fn new<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Self {
        let lcm = values
            .into_iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        Scale { factor: Rational::from(lcm * 4) }
    }

    pub fn of(&self, v: &Rational) -> i128 {
        let s = v * &self.factor;
        assert!(s.is_integer());
        s.to_integer().to_i128().expect("scaled coordinate fits in i128")
    }

    pub fn back(&self, v: i128) -> Rational {
        Rational::from(BigInt::from(v)) / &self.factor
    }
}

pub type P = (i128, i128);

fn orient(a: P, b: P, c: P) -> i128 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn on_segment(a: P, b: P, p: P) -> bool {
    p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

fn segments_meet(a: P, b: P, c: P, d: P) -> bool {
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if o1.signum() * o2.signum() < 0 && o3.signum() * o4.signum() < 0 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// Closed, counter-clockwise triangle membership by orientation signs.
fn in_triangle(t: [P; 3], p: P) -> bool {
    (0..3).all(|i| orient(t[i], t[(i + 1) % 3], p) >= 0)
}

/// The three corners of the scaled translate with vertex `v` and leg `unit`.
pub fn corners(v: P, unit: i128) -> [P; 3] {
    [v, (v.0 + unit, v.1), (v.0, v.1 + unit)]
}

/// Generic convex-polygon intersection: a vertex of one inside the other or
/// two crossing edges.
pub fn triangles_meet(a: [P; 3], b: [P; 3]) -> bool {
    if a.iter().any(|&p| in_triangle(b, p)) || b.iter().any(|&p| in_triangle(a, p)) {
        return true;
    }
    (0..3).any(|i| (0..3).any(|j| segments_meet(a[i], a[(i + 1) % 3], b[j], b[(j + 1) % 3])))
}

/// Strict order: smaller coordinate sum, then smaller x.
pub fn before(p: P, q: P) -> bool {
    (p.0 + p.1, p.0) < (q.0 + q.1, q.0)
}

enum Region {
    Empty,
    Stair { xs: Vec<i128>, ys: Vec<i128>, bound: Option<i128> },
}

impl Region {
    fn contains(&self, (x, y): P) -> bool {
        match self {
            Region::Empty => false,
            Region::Stair { xs, ys, bound } => {
                if x < xs[0] || x >= *xs.last().unwrap() || y < *ys.last().unwrap() {
                    return false;
                }
                let col = xs.iter().rposition(|&b| b <= x).unwrap();
                y < ys[col] && bound.is_none_or(|s| x + y <= s)
            }
        }
    }
}

fn sorted_dedup(mut v: Vec<i128>) -> Vec<i128> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Every value together with the midpoints of consecutive values.
fn with_midpoints(v: &[i128]) -> Vec<i128> {
    let mut out = Vec::with_capacity(2 * v.len());
    for (i, &a) in v.iter().enumerate() {
        out.push(a);
        if let Some(&b) = v.get(i + 1) {
            assert_eq!((a + b) % 2, 0, "scale leaves midpoints integral");
            out.push((a + b) / 2);
        }
    }
    out
}

/// Sample points of the arrangement of `verticals`, `horizontals` and
/// diagonals `x + y = d` that lie in `[0, side)²`: one point on every face,
/// edge and vertex.
pub fn arrangement_samples(verticals: &[i128], horizontals: &[i128], diagonals: &[i128], side: i128) -> Vec<P> {
    let mut xs: Vec<i128> = verticals.to_vec();
    xs.extend([0, side]);
    for &d in diagonals {
        for &h in horizontals.iter().chain(&[0, side]) {
            xs.push(d - h);
        }
    }
    let xs: Vec<i128> = sorted_dedup(xs).into_iter().filter(|&x| (0..=side).contains(&x)).collect();
    let mut out = Vec::new();
    for x in with_midpoints(&xs) {
        if x >= side {
            continue;
        }
        let mut ys: Vec<i128> = horizontals.to_vec();
        ys.extend([0, side]);
        ys.extend(diagonals.iter().map(|d| d - x));
        let ys: Vec<i128> = sorted_dedup(ys).into_iter().filter(|&y| (0..=side).contains(&y)).collect();
        out.extend(with_midpoints(&ys).into_iter().filter(|&y| y < side).map(|y| (x, y)));
    }
    out
}

/// Checks every cell of `res` against the set formula
/// `S_i = [0,l)² ∩ T_i ∖ {p : p lies in >= k cutters of T_i}` at every
/// sample point of the arrangement relevant to `T_i`. Returns the number of
/// points checked, or a description of the first disagreement.
pub fn cell_oracle_check(inst: &CoveringInstance, res: &DecompositionResult) -> Result<usize, String> {
    let tris = inst.translates();
    let n = tris.len();
    let k = inst.k() as usize;
    let mut values: Vec<&Rational> = vec![inst.l()];
    for t in tris {
        values.push(&t.v.x);
        values.push(&t.v.y);
    }
    for c in &res.cells {
        let s = c.region.staircase();
        values.extend(s.x_breaks());
        values.extend(s.y_breaks());
    }
    let sc = Scale::new(values);
    let unit = sc.of(&int(1));
    let side = sc.of(inst.l());
    let vs: Vec<P> = tris.iter().map(|t| (sc.of(&t.v.x), sc.of(&t.v.y))).collect();
    let mut checked = 0;

    for i in 0..n {
        let ti = corners(vs[i], unit);
        let cutters: Vec<usize> = (0..n)
            .filter(|&j| j != i && triangles_meet(ti, corners(vs[j], unit)) && before(vs[i], vs[j]))
            .collect();
        let region = match res.cell(i) {
            None => {
                if !res.empty.contains(&i) {
                    return Err(format!("translate {i} has neither a cell nor an empty marker"));
                }
                Region::Empty
            }
            Some(cell) => {
                let s = cell.region.staircase();
                let bound = match &cell.region {
                    CellRegion::Stair(_) => None,
                    CellRegion::Clipped { sum_bound, .. } => Some(sc.of(sum_bound)),
                };
                Region::Stair {
                    xs: s.x_breaks().iter().map(|x| sc.of(x)).collect(),
                    ys: s.y_breaks().iter().map(|y| sc.of(y)).collect(),
                    bound,
                }
            }
        };

        let mut verticals = vec![vs[i].0];
        let mut horizontals = vec![vs[i].1];
        let mut diagonals = vec![vs[i].0 + vs[i].1 + unit];
        for &j in &cutters {
            verticals.push(vs[j].0);
            horizontals.push(vs[j].1);
            diagonals.push(vs[j].0 + vs[j].1 + unit);
        }
        if let Region::Stair { xs, ys, bound } = &region {
            verticals.extend(xs);
            horizontals.extend(ys);
            diagonals.extend(bound.iter());
        }
        // samples outside the closed bounding box of T_i are outside both sets
        let lo = (vs[i].0.max(0), vs[i].1.max(0));
        for p in arrangement_samples(&verticals, &horizontals, &diagonals, side) {
            if p.0 < lo.0 || p.1 < lo.1 || p.0 > vs[i].0 + unit || p.1 > vs[i].1 + unit {
                if region.contains(p) {
                    return Err(format!("cell {i} contains {p:?} outside its triangle's box"));
                }
                continue;
            }
            let depth = cutters.iter().filter(|&&j| in_triangle(corners(vs[j], unit), p)).count();
            let expected = in_triangle(ti, p) && depth < k;
            let got = region.contains(p);
            checked += 1;
            if expected != got {
                return Err(format!(
                    "cell {i} at ({}, {}): oracle {expected}, computed {got}",
                    sc.back(p.0),
                    sc.back(p.1)
                ));
            }
            // spot-check the library's own membership test on the same point
            if checked % 61 == 0 {
                let q = Point::new(sc.back(p.0), sc.back(p.1));
                let lib = res.cell(i).is_some_and(|c| c.region.contains(&q));
                if lib != got {
                    return Err(format!("cell {i}: library membership disagrees at {q}"));
                }
            }
        }
    }
    Ok(checked)
}

/// Stair cells of `res` paired with their translate indices.
pub fn indexed_stairs(res: &DecompositionResult) -> Vec<IndexedStair> {
    res.cells
        .iter()
        .map(|c| (c.index, c.region.as_stair().expect("stair cell").clone()))
        .collect()
}

/// A random lattice that covers the plane `k` times: either a shrunk copy of
/// the lattice with basis `(1, 0)`, `(1/(2k+1), 1/(2k+1))` or a rejection
/// sample of Hermite bases on a `1/48` grid.
pub fn random_covering_lattice(rng: &mut ChaCha8Rng, k: u32) -> Lattice {
    let m = 2 * i64::from(k) + 1;
    if rng.gen_bool(0.5) {
        let base = Lattice::from_hermite(int(1), rat(1, m), rat(1, m)).unwrap();
        let f = rat(rng.gen_range(36..=48), 48);
        let lat = base.scaled(&f).unwrap();
        assert!(lattice_covers(&lat, k as usize));
        return lat;
    }
    loop {
        let a = rng.gen_range(24..=72i64);
        let c = rng.gen_range(2..=24i64);
        // det = a c / 48², kept below 1/(2k+1)
        if a * c * m > 48 * 48 || a * c * m * 2 < 48 * 48 {
            continue;
        }
        let b = rng.gen_range(0..a);
        let lat = Lattice::from_hermite(rat(a, 48), rat(b, 48), rat(c, 48)).unwrap();
        if lattice_covers(&lat, k as usize) {
            return lat;
        }
    }
}

/// Outcome of [`random_covering`].
pub struct Generated {
    pub instance: CoveringInstance,
    pub lattice: Lattice,
    pub perturbed: bool,
}

/// A verified k-fold covering with at most `max_n` translates, built from a
/// random covering lattice and a random covering-preserving perturbation.
pub fn random_covering(seed: u64, k: u32, max_n: usize) -> Generated {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let lattice = random_covering_lattice(&mut rng, k);
        let mut l = rat(rng.gen_range(2..=6), 4);
        let base = loop {
            let inst = lattice_instance(&lattice, k, &l).unwrap();
            if inst.len() <= max_n {
                break Some(inst);
            }
            if l <= rat(1, 4) {
                break None;
            }
            l -= rat(1, 4);
        };
        let Some(base) = base else { continue };
        let magnitude = rat(1, 1 << rng.gen_range(4..=6));
        let (instance, perturbed) = match perturb_instance(&base, &magnitude, rng.gen(), 6) {
            Ok(p) => (p, true),
            Err(_) => (base, false),
        };
        assert!(is_k_fold_covering(&instance));
        return Generated { instance, lattice, perturbed };
    }
}

/// Largest area `Σ (x_{j+1} - x_j)(1 - x_{j+1})` over breaks
/// `0 = x_0 < ... < x_{r+1} < 1` on the grid `(1/n) Z`, i.e. the largest
/// r-stair polygon in `T` with grid breaks (anchoring at the origin and
/// pushing outer corners onto the hypotenuse never loses area). Exact, in
/// units of `1/n²`.
pub fn max_grid_stair_area(r: usize, n: i64) -> Rational {
    // best[m][x]: best area of m columns with right end x
    let cols = r + 1;
    let neg = i64::MIN;
    let mut best = vec![vec![neg; n as usize]; cols + 1];
    best[0][0] = 0;
    for m in 1..=cols {
        for x in 1..n {
            let mut v = neg;
            for prev in 0..x {
                let b = best[m - 1][prev as usize];
                if b != neg {
                    v = v.max(b + (x - prev) * (n - x));
                }
            }
            best[m][x as usize] = v;
        }
    }
    let top = best[cols].iter().copied().max().unwrap();
    assert!(top != neg, "grid too coarse for {cols} columns");
    rat(top, n * n)
}

/// Brute force over every increasing break sequence on the grid; small `n`
/// only.
pub fn max_grid_stair_area_brute(r: usize, n: i64) -> Rational {
    fn rec(prev: i64, left: usize, n: i64, acc: i64, best: &mut i64) {
        if left == 0 {
            *best = (*best).max(acc);
            return;
        }
        for x in prev + 1..n {
            rec(x, left - 1, n, acc + (x - prev) * (n - x), best);
        }
    }
    let mut best = i64::MIN;
    rec(0, r + 1, n, 0, &mut best);
    rat(best, n * n)
}

pub fn pt(x: Rational, y: Rational) -> Point {
    Point::new(x, y)
}

pub fn rect(x0: i64, x1: i64, y0: i64, y1: i64) -> StairPolygon {
    StairPolygon::rect(int(x0), int(x1), int(y0), int(y1)).unwrap()
}

/// The covering of `[0,1)²` by the four translates at `{0, 1/2}²`.
pub fn four_translates() -> CoveringInstance {
    CoveringInstance::new(
        1,
        int(1),
        vec![
            pt(int(0), int(0)),
            pt(int(0), rat(1, 2)),
            pt(rat(1, 2), int(0)),
            pt(rat(1, 2), rat(1, 2)),
        ],
    )
    .unwrap()
}
