//! Lattice coverings: materializing lattice translates over a window, exact
//! lattice multiplicity on a fundamental domain, search for dense k-fold
//! lattice coverings, and covering-preserving perturbations.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::lattice_density_formula;
use crate::decompose::CoveringInstance;
use crate::depth::{min_depth, DepthMin};
use crate::error::{Error, Result};
use crate::geom::{Point, TriTranslate};
use crate::rational::{common_denominator, format_rational, int, rat, Rational};
use crate::verify::is_k_fold_covering;

/// The lattice `{ i u + j v : i, j ∈ Z }` with `det(u, v) > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    u: Point,
    v: Point,
}

impl Lattice {
    pub fn new(u: Point, v: Point) -> Result<Self> {
        let det = &u.x * &v.y - &u.y * &v.x;
        if !det.is_positive() {
            return Err(Error::DegenerateLattice(format!(
                "basis {u}, {v} has determinant {}",
                format_rational(&det)
            )));
        }
        Ok(Lattice { u, v })
    }

    /// The lattice with basis `(a, 0)`, `(b, c)`.
    pub fn from_hermite(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        Lattice::new(Point::new(a, Rational::zero()), Point::new(b, c))
    }

    /// `Z²`.
    pub fn integer() -> Self {
        Lattice::from_hermite(int(1), int(0), int(1)).expect("unit basis")
    }

    pub fn u(&self) -> &Point {
        &self.u
    }

    pub fn v(&self) -> &Point {
        &self.v
    }

    pub fn det(&self) -> Rational {
        &self.u.x * &self.v.y - &self.u.y * &self.v.x
    }

    /// `|T| / det = (1/2) / det`.
    pub fn density(&self) -> Rational {
        rat(1, 2) / self.det()
    }

    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        let s = |p: &Point| Point::new(&p.x * factor, &p.y * factor);
        Lattice::new(s(&self.u), s(&self.v))
    }

    /// The unique basis `(a, 0)`, `(b, c)` of this lattice with `a, c > 0`
    /// and `0 <= b < a`, returned as `(a, b, c)`.
    pub fn hermite(&self) -> (Rational, Rational, Rational) {
        let (u, v) = (&self.u, &self.v);
        let den = Rational::from(common_denominator([&u.y, &v.y]));
        let p = (&u.y * &den).to_integer();
        let q = (&v.y * &den).to_integer();
        // w0 spans the x-axis sublattice, w1 completes a unimodular basis
        let (w0, mut w1) = if p.is_zero() {
            (u.clone(), v.clone())
        } else if q.is_zero() {
            (v.clone(), u.clone())
        } else {
            let e = p.extended_gcd(&q);
            let g = e.gcd;
            (
                combine(&(&q / &g), u, &(-(&p / &g)), v),
                combine(&e.x, u, &e.y, v),
            )
        };
        let a = w0.x.abs();
        if w1.y.is_negative() {
            w1 = Point::new(-&w1.x, -&w1.y);
        }
        let b = &w1.x - &a * (&w1.x / &a).floor();
        (a, b, w1.y)
    }

    /// Lattice points `λ` with `T + λ` meeting `[x0, x1) × [y0, y1)`, sorted
    /// by `≺`.
    pub fn translates_meeting(
        &self,
        x0: &Rational,
        x1: &Rational,
        y0: &Rational,
        y1: &Rational,
    ) -> Vec<TriTranslate> {
        let (a, b, c) = self.hermite();
        let one = int(1);
        // any vertex of a meeting triangle lies in [x0 - 1, x1) × [y0 - 1, y1)
        let j_lo = ((y0 - &one) / &c).ceil().to_integer();
        let j_hi = (y1 / &c).ceil().to_integer();
        let mut out = Vec::new();
        let mut j = j_lo;
        while j < j_hi {
            let jq = Rational::from(j.clone());
            let (ox, y) = (&jq * &b, &jq * &c);
            let i_lo = ((x0 - &one - &ox) / &a).ceil().to_integer();
            let i_hi = ((x1 - &ox) / &a).ceil().to_integer();
            let mut i = i_lo;
            while i < i_hi {
                let x = Rational::from(i.clone()) * &a + &ox;
                let t = TriTranslate::new(Point::new(x, y.clone()));
                if t.meets_rect(x0, x1, y0, y1) {
                    out.push(t);
                }
                i += 1;
            }
            j += 1;
        }
        out.sort_by(|s, t| s.v.order_cmp(&t.v));
        out
    }
}

fn combine(i: &BigInt, u: &Point, j: &BigInt, v: &Point) -> Point {
    let (i, j) = (Rational::from(i.clone()), Rational::from(j.clone()));
    Point::new(&i * &u.x + &j * &v.x, &i * &u.y + &j * &v.y)
}

/// All lattice translates meeting `[0, l)²`, as an instance with
/// multiplicity target `k`.
pub fn lattice_instance(lat: &Lattice, k: u32, l: &Rational) -> Result<CoveringInstance> {
    if !l.is_positive() {
        return Err(Error::InvalidInstance(format!(
            "window side must be positive, got {}",
            format_rational(l)
        )));
    }
    let zero = Rational::zero();
    let tris = lat.translates_meeting(&zero, l, &zero, l);
    CoveringInstance::new(k, l.clone(), tris.into_iter().map(|t| t.v).collect())
}

/// Minimum depth over the plane with a witness, evaluated on the
/// fundamental domain `[0, a) × [0, c)` of the Hermite basis.
pub fn lattice_depth(lat: &Lattice, stop_below: Option<usize>) -> DepthMin {
    let (a, _, c) = lat.hermite();
    let zero = Rational::zero();
    let tris = lat.translates_meeting(&zero, &a, &zero, &c);
    min_depth(&tris, &zero, &a, &zero, &c, stop_below)
}

/// Exact minimum number of lattice translates of `T` containing a point of
/// the plane.
pub fn lattice_multiplicity(lat: &Lattice) -> usize {
    lattice_depth(lat, None).depth
}

/// Whether the lattice translates cover the plane at least `k` times.
pub fn lattice_covers(lat: &Lattice, k: usize) -> bool {
    lattice_depth(lat, Some(k)).depth >= k
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCoverReport {
    pub lattice: Lattice,
    pub k: u32,
    pub multiplicity: usize,
    pub det: Rational,
    pub density: Rational,
    /// `(2k + 1) / 2`
    pub target_density: Rational,
    /// `1 / (2k + 1)`
    pub target_det: Rational,
    /// `density / target_density - 1`
    pub relative_gap: Rational,
    pub evaluations: usize,
}

impl LatticeCoverReport {
    fn new(lattice: Lattice, k: u32, multiplicity: usize, evaluations: usize) -> Self {
        let det = lattice.det();
        let density = lattice.density();
        let target_density = lattice_density_formula(k);
        let relative_gap = &density / &target_density - int(1);
        LatticeCoverReport {
            lattice,
            k,
            multiplicity,
            det,
            density,
            target_det: rat(1, 2 * i64::from(k) + 1),
            target_density,
            relative_gap,
            evaluations,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Maximum number of multiplicity evaluations.
    pub budget: usize,
    /// Seed parameters of the first round lie on the grid `(1/seed_grid) Z`.
    pub seed_grid: u32,
    /// Number of further seed rounds, each on a grid twice as fine.
    pub grid_levels: u32,
    /// Upper bound on the seed parameters `a` and `c`.
    pub a_max: Rational,
    /// Number of best feasible seeds refined by descent.
    pub starts: usize,
    /// Descent moves are `step · (da, db, dc)` with `|d*| <= reach`.
    pub reach: i64,
    /// Number of halvings of the descent step before stopping.
    pub refinements: u32,
    /// A lattice known to be good, e.g. from an earlier run.
    pub warm_start: Option<Lattice>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: 200_000,
            seed_grid: 12,
            grid_levels: 3,
            a_max: int(2),
            starts: 8,
            reach: 2,
            refinements: 16,
            warm_start: None,
        }
    }
}

const BATCH: usize = 64;

type Params = (Rational, Rational, Rational);

fn params_lattice(p: &Params) -> Option<Lattice> {
    if !p.0.is_positive() || !p.2.is_positive() {
        return None;
    }
    Lattice::from_hermite(p.0.clone(), p.1.clone(), p.2.clone()).ok()
}

fn reduced(p: Params) -> Params {
    let (a, b, c) = p;
    let b = &b - &a * (&b / &a).floor();
    (a, b, c)
}

fn det(p: &Params) -> Rational {
    &p.0 * &p.2
}

/// Larger determinant first, then lexicographic parameters.
fn rank(p: &Params, q: &Params) -> Ordering {
    det(q).cmp(&det(p)).then_with(|| p.cmp(q))
}

struct Evaluator {
    k: usize,
    budget: usize,
    used: usize,
}

impl Evaluator {
    /// The first `want` feasible candidates in order. Candidates are
    /// evaluated in fixed-size parallel batches, so the result and the
    /// evaluation count do not depend on the thread count; nothing past the
    /// budget is evaluated.
    fn feasible_prefix(&mut self, cands: &[Params], want: usize) -> Vec<Params> {
        let mut out = Vec::new();
        for chunk in cands.chunks(BATCH) {
            let room = self.budget - self.used;
            if room == 0 || out.len() >= want {
                break;
            }
            let chunk = &chunk[..chunk.len().min(room)];
            let k = self.k;
            let ok: Vec<bool> = chunk
                .par_iter()
                .map(|p| params_lattice(p).is_some_and(|lat| lattice_covers(&lat, k)))
                .collect();
            for (i, (p, hit)) in chunk.iter().zip(ok).enumerate() {
                if hit {
                    out.push(p.clone());
                    if out.len() == want {
                        self.used += i + 1;
                        return out;
                    }
                }
            }
            self.used += chunk.len();
        }
        out
    }

    fn first_feasible(&mut self, cands: &[Params]) -> Option<Params> {
        self.feasible_prefix(cands, 1).pop()
    }
}

fn descend(
    eval: &mut Evaluator,
    mut best: Params,
    mut step: Rational,
    area_cap: &Rational,
    config: &SearchConfig,
) -> Params {
    let r = config.reach.max(1);
    let mut halvings = 0;
    while halvings <= config.refinements && eval.used < eval.budget {
        let d0 = det(&best);
        let mut cands: Vec<Params> = Vec::new();
        for da in -r..=r {
            for db in -r..=r {
                for dc in -r..=r {
                    let a = &best.0 + &step * int(da);
                    let c = &best.2 + &step * int(dc);
                    if !a.is_positive() || !c.is_positive() {
                        continue;
                    }
                    let nd = &a * &c;
                    if nd <= d0 || nd > *area_cap {
                        continue;
                    }
                    cands.push(reduced((a, &best.1 + &step * int(db), c)));
                }
            }
        }
        cands.sort_by(rank);
        cands.dedup();
        match eval.first_feasible(&cands) {
            Some(p) => best = p,
            None => {
                step /= int(2);
                halvings += 1;
            }
        }
    }
    best
}

/// Searches Hermite bases `(a, 0)`, `(b, c)` for a k-fold lattice covering
/// of maximal determinant.
///
/// Each round enumerates seeds on a rational grid whose determinant exceeds
/// the incumbent's and respects the area bound `det <= 1/(2k)`, in order of
/// decreasing determinant. The best `starts` feasible seeds are refined by
/// pattern descent over moves `step · (da, db, dc)` with step halving, and
/// the next round doubles the grid resolution. Every accepted lattice is
/// certified by the exact multiplicity oracle. A result denser than
/// `(2k + 1)/2 - 1e-9` is reported as [`Error::OptimalityViolated`].
pub fn search_optimal_lattice(k: u32, config: &SearchConfig) -> Result<LatticeCoverReport> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    if config.seed_grid == 0 {
        return Err(Error::Precondition("seed grid must be positive".into()));
    }
    let area_cap = rat(1, 2 * i64::from(k));
    let mut eval = Evaluator { k: k as usize, budget: config.budget, used: 0 };
    let better = |p: &Params, best: &Option<Params>| {
        best.as_ref().is_none_or(|b| rank(p, b) == Ordering::Less)
    };

    let mut best: Option<Params> = None;
    if let Some(lat) = &config.warm_start {
        if let Some(p) = eval.first_feasible(&[lat.hermite()]) {
            let step = rat(1, 2 * i64::from(config.seed_grid));
            best = Some(descend(&mut eval, p, step, &area_cap, config));
        }
    }

    let mut g = i64::from(config.seed_grid);
    for level in 0..=config.grid_levels {
        if eval.used >= eval.budget {
            break;
        }
        let floor_det = best.as_ref().map(det);
        let top = (&config.a_max * int(g)).floor().to_integer();
        let top: i64 = top.try_into().unwrap_or(i64::MAX).max(1);
        let mut seeds: Vec<Params> = Vec::new();
        for i in 1..=top {
            for j in 1..=top {
                let (a, c) = (rat(i, g), rat(j, g));
                let d = &a * &c;
                if d > area_cap || floor_det.as_ref().is_some_and(|f| d <= *f) {
                    continue;
                }
                for m in 0..i {
                    // points of the coarser grid were seeds already
                    if level > 0 && i % 2 == 0 && j % 2 == 0 && m % 2 == 0 {
                        continue;
                    }
                    seeds.push((a.clone(), rat(m, g), c.clone()));
                }
            }
        }
        seeds.sort_by(rank);
        for s in eval.feasible_prefix(&seeds, config.starts.max(1)) {
            let p = descend(&mut eval, s, rat(1, 2 * g), &area_cap, config);
            if better(&p, &best) {
                best = Some(p);
            }
        }
        g *= 2;
    }
    let Some(best) = best else {
        return Err(Error::InfeasibleWithinBudget { k, evaluations: eval.used });
    };

    let lattice = params_lattice(&best).expect("feasible parameters are a lattice");
    let multiplicity = lattice_multiplicity(&lattice);
    let report = LatticeCoverReport::new(lattice, k, multiplicity, eval.used);
    let floor = &report.target_density - rat(1, 1_000_000_000);
    if report.density < floor {
        return Err(Error::OptimalityViolated {
            density: format_rational(&report.density),
            optimum: format_rational(&report.target_density),
        });
    }
    Ok(report)
}

/// Moves translates of a k-fold covering by random offsets from
/// `magnitude · {-1, -15/16, ..., 15/16, 1}²`, keeping an offset only if the
/// instance stays a k-fold covering of the window with distinct translates.
///
/// Each translate gets up to `retries` proposals and stays put if none is
/// accepted. Fails if no translate could be moved at all.
pub fn perturb_instance(
    inst: &CoveringInstance,
    magnitude: &Rational,
    seed: u64,
    retries: usize,
) -> Result<CoveringInstance> {
    if magnitude.is_negative() {
        return Err(Error::Negative(format_rational(magnitude)));
    }
    if magnitude.is_zero() {
        return Ok(inst.clone());
    }
    if !is_k_fold_covering(inst) {
        return Err(Error::Precondition("input is not a k-fold covering".into()));
    }
    let k = inst.k() as usize;
    let l = inst.l();
    let zero = Rational::zero();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tris: Vec<TriTranslate> = inst.translates().to_vec();
    let mut moved = 0usize;
    for i in 0..tris.len() {
        let old = tris[i].v.clone();
        // only points of the old triangle can lose depth
        let x0 = old.x.clone().max(zero.clone());
        let y0 = old.y.clone().max(zero.clone());
        let x1 = (&old.x + int(2)).min(l.clone());
        let y1 = (&old.y + int(2)).min(l.clone());
        let local = x0 < x1 && y0 < y1;
        for _ in 0..retries {
            let (dx, dy) = loop {
                let d = (rng.gen_range(-16i64..=16), rng.gen_range(-16i64..=16));
                if d != (0, 0) {
                    break d;
                }
            };
            let cand = Point::new(&old.x + magnitude * rat(dx, 16), &old.y + magnitude * rat(dy, 16));
            if tris.iter().any(|t| t.v == cand) {
                continue;
            }
            tris[i] = TriTranslate::new(cand);
            if !local || min_depth(&tris, &x0, &x1, &y0, &y1, Some(k)).depth >= k {
                moved += 1;
                break;
            }
            tris[i] = TriTranslate::new(old.clone());
        }
    }
    if moved == 0 {
        return Err(Error::PerturbationExhausted { index: 0, retries });
    }
    let out = CoveringInstance::new(inst.k(), l.clone(), tris.into_iter().map(|t| t.v).collect())?;
    debug_assert!(is_k_fold_covering(&out));
    Ok(out)
}
