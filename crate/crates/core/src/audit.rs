//! Property audits of a decomposition.
//!
//! Each audit checks one structural property of the cells on a concrete
//! instance and either passes, fails with a re-checkable counterexample, or
//! is skipped because a property it depends on does not hold. The `check_*`
//! functions evaluate a property unconditionally; the `audit_*` wrappers
//! apply the precondition guard first.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::decompose::{CoveringInstance, DecompositionResult};
use crate::depth::containment_classes;
use crate::error::Result;
use crate::geom::{Point, StairPolygon, TriTranslate};
use crate::rational::Rational;
use crate::verify::{verify_exact_tiling, TilingReport};

/// A stair cell labelled with the index of its translate.
pub type IndexedStair = (usize, StairPolygon);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AuditId {
    StairCells,
    CutTransitivity,
    MinimalCut,
    AtMostK,
    AtLeastK,
    ExactTiling,
    BoundaryCut,
    BoundaryDisjunction,
    InnerCorners,
    CornerCount,
    CornerSum,
    StairSum,
}

impl AuditId {
    pub const ALL: [AuditId; 12] = [
        AuditId::StairCells,
        AuditId::CutTransitivity,
        AuditId::MinimalCut,
        AuditId::AtMostK,
        AuditId::AtLeastK,
        AuditId::ExactTiling,
        AuditId::BoundaryCut,
        AuditId::BoundaryDisjunction,
        AuditId::InnerCorners,
        AuditId::CornerCount,
        AuditId::CornerSum,
        AuditId::StairSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AuditId::StairCells => "stair-cells",
            AuditId::CutTransitivity => "cut-transitivity",
            AuditId::MinimalCut => "minimal-cut",
            AuditId::AtMostK => "at-most-k",
            AuditId::AtLeastK => "at-least-k",
            AuditId::ExactTiling => "exact-tiling",
            AuditId::BoundaryCut => "boundary-cut",
            AuditId::BoundaryDisjunction => "boundary-disjunction",
            AuditId::InnerCorners => "inner-corners",
            AuditId::CornerCount => "corner-count",
            AuditId::CornerSum => "corner-sum",
            AuditId::StairSum => "stair-sum",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            AuditId::StairCells => "every non-empty cell is a half-open stair polygon inside its triangle, anchored at its vertex when that lies in the window",
            AuditId::CutTransitivity => "T1 cuts T2 and T2 cuts T3 with a common point imply T1 cuts T3",
            AuditId::MinimalCut => "among triangles sharing a point, the order-minimal one is cut by all others",
            AuditId::AtMostK => "no point of the window lies in more than k cells",
            AuditId::AtLeastK => "every point of the window lies in at least k cells",
            AuditId::ExactTiling => "the cells form an exact k-fold tiling of the window",
            AuditId::BoundaryCut => "if T_i cuts T_j then R_i and S_j are disjoint",
            AuditId::BoundaryDisjunction => "for every pair, R_i misses S_j or R_j misses S_i",
            AuditId::InnerCorners => "every inner corner of S_i lies in some S_j anchored on the same vertical line",
            AuditId::CornerCount => "n_i >= r_i - k + 1 for every cell",
            AuditId::CornerSum => "sum of n_i <= k N'",
            AuditId::StairSum => "sum of r_i <= (2k - 1) N'",
        }
    }
}

impl fmt::Display for AuditId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Concrete data that reproduces a failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Translate / cell indices involved.
    pub indices: Vec<usize>,
    pub point: Option<Point>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Counterexample),
    Skipped(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn failed(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Fail(c) => Some(c),
            _ => None,
        }
    }

    fn fail(indices: Vec<usize>, point: Option<Point>, detail: impl Into<String>) -> Verdict {
        Verdict::Fail(Counterexample { indices, point, detail: detail.into() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditEntry {
    pub id: AuditId,
    pub verdict: Verdict,
}

/// Per-cell stair count `r_i`, corner count `n_i` and area.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellStat {
    pub index: usize,
    pub r: usize,
    pub n: usize,
    pub area: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerCounts {
    pub cells: Vec<CellStat>,
    pub sum_r: usize,
    pub sum_n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub k: u32,
    pub l: Rational,
    /// Number of translates `N`.
    pub n_translates: usize,
    /// Number of non-empty cells `N'`.
    pub n_cells: usize,
    pub entries: Vec<AuditEntry>,
    /// Present when every cell is a stair polygon.
    pub counts: Option<CornerCounts>,
}

impl AuditReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.verdict.passed())
    }

    pub fn verdict(&self, id: AuditId) -> Option<&Verdict> {
        self.entries.iter().find(|e| e.id == id).map(|e| &e.verdict)
    }
}

/// Every cell is a stair polygon contained in its triangle, and its anchor
/// is the triangle vertex whenever that vertex lies in the window.
pub fn audit_stair_cells(inst: &CoveringInstance, res: &DecompositionResult) -> Verdict {
    for cell in &res.cells {
        let t = &inst.translates()[cell.index];
        let Some(s) = cell.region.as_stair() else {
            let stair = cell.region.staircase();
            let corner = stair
                .outer_corners()
                .into_iter()
                .find(|c| c.sum() > t.hypotenuse_sum());
            return Verdict::fail(
                vec![cell.index],
                corner,
                "cell keeps part of its hypotenuse; not a stair polygon",
            );
        };
        if !s.fits_in(t) {
            return Verdict::fail(vec![cell.index], Some(s.anchor()), "cell leaves its triangle");
        }
        if inst.window_contains(&t.v) && s.anchor() != t.v {
            return Verdict::fail(
                vec![cell.index],
                Some(s.anchor()),
                "cell anchor differs from the triangle vertex",
            );
        }
    }
    Verdict::Pass
}

fn common_point(ts: &[&TriTranslate]) -> bool {
    let corner = ts
        .iter()
        .skip(1)
        .fold(ts[0].v.clone(), |acc, t| acc.join(&t.v));
    let lim = ts
        .iter()
        .map(|t| t.hypotenuse_sum())
        .min()
        .expect("non-empty");
    corner.sum() <= lim
}

/// Transitivity of an abstract relation `cuts(a, b)` over all triples with
/// `common(a, b, c)`. No geometry involved.
pub fn check_cut_transitivity<C, M>(n: usize, cuts: C, common: M) -> Verdict
where
    C: Fn(usize, usize) -> bool + Sync,
    M: Fn(usize, usize, usize) -> bool + Sync,
{
    let found = (0..n).into_par_iter().find_map_first(|a| {
        for b in 0..n {
            if b == a || !cuts(a, b) {
                continue;
            }
            for c in 0..n {
                if c == a || c == b || !cuts(b, c) {
                    continue;
                }
                if common(a, b, c) && !cuts(a, c) {
                    return Some((a, b, c));
                }
            }
        }
        None
    });
    match found {
        None => Verdict::Pass,
        Some((a, b, c)) => Verdict::fail(
            vec![a, b, c],
            None,
            format!("T{a} cuts T{b} and T{b} cuts T{c}, but T{a} does not cut T{c}"),
        ),
    }
}

/// Transitivity of cutting over all triples of triangles with a common
/// point.
pub fn audit_cut_transitivity(tris: &[TriTranslate]) -> Verdict {
    let verdict = check_cut_transitivity(
        tris.len(),
        |a, b| tris[a].cuts(&tris[b]),
        |a, b, c| common_point(&[&tris[a], &tris[b], &tris[c]]),
    );
    match verdict {
        Verdict::Fail(mut c) => {
            let (a, b, d) = (c.indices[0], c.indices[1], c.indices[2]);
            c.point = Some(tris[a].v.join(&tris[b].v).join(&tris[d].v));
            Verdict::Fail(c)
        }
        v => v,
    }
}

/// On every containment pattern of the window `[0,l)²`, the order-minimal
/// triangle containing the sample point is cut by all the others there.
pub fn audit_minimal_cut(tris: &[TriTranslate], l: &Rational) -> Verdict {
    let zero = Rational::zero();
    for (set, p) in containment_classes(tris, &zero, l, &zero, l) {
        if set.len() < 2 {
            continue;
        }
        let min = *set
            .iter()
            .min_by(|&&a, &&b| tris[a].v.order_cmp(&tris[b].v))
            .expect("non-empty");
        if let Some(&other) = set.iter().find(|&&j| j != min && !tris[j].cuts(&tris[min])) {
            return Verdict::fail(
                vec![min, other],
                Some(p),
                format!("T{other} contains the point but does not cut the minimal T{min}"),
            );
        }
    }
    Verdict::Pass
}

fn cells_containing(cells: &[IndexedStair], p: &Point) -> Vec<usize> {
    cells
        .iter()
        .filter(|(_, s)| s.contains(p))
        .map(|(i, _)| *i)
        .collect()
}

fn stairs_of(cells: &[IndexedStair]) -> Vec<StairPolygon> {
    cells.iter().map(|(_, s)| s.clone()).collect()
}

/// The at-most-k and at-least-k halves of the exact tiling check.
pub fn audit_disjointness(cells: &[IndexedStair], k: usize, l: &Rational) -> Result<(Verdict, Verdict)> {
    let report = verify_exact_tiling(&stairs_of(cells), k, l)?;
    Ok(disjointness_verdicts(cells, &report))
}

fn disjointness_verdicts(cells: &[IndexedStair], report: &TilingReport) -> (Verdict, Verdict) {
    let k = report.k;
    let at_most = match &report.over {
        None => Verdict::Pass,
        Some(w) => Verdict::fail(
            cells_containing(cells, &w.point),
            Some(w.point.clone()),
            format!("point lies in {} > {k} cells", w.multiplicity),
        ),
    };
    let at_least = match &report.under {
        None => Verdict::Pass,
        Some(w) => Verdict::fail(
            cells_containing(cells, &w.point),
            Some(w.point.clone()),
            format!("point lies in {} < {k} cells", w.multiplicity),
        ),
    };
    (at_most, at_least)
}

fn tiling_verdict(cells: &[IndexedStair], report: &TilingReport) -> Verdict {
    match report.counterexample() {
        None => Verdict::Pass,
        Some(w) => Verdict::fail(
            cells_containing(cells, &w.point),
            Some(w.point.clone()),
            format!("point lies in {} cells, expected {}", w.multiplicity, report.k),
        ),
    }
}

/// Whenever `T_i` cuts `T_j`, the open boundary `R_i = closure(S_i) \ S_i`
/// misses `S_j`.
pub fn audit_boundary_cut(tris: &[TriTranslate], cells: &[IndexedStair]) -> Verdict {
    let found = cells.par_iter().find_map_first(|(i, si)| {
        cells.iter().find_map(|(j, sj)| {
            if i == j || !tris[*i].cuts(&tris[*j]) {
                return None;
            }
            si.open_boundary_hit(sj).map(|p| (*i, *j, p))
        })
    });
    match found {
        None => Verdict::Pass,
        Some((i, j, p)) => Verdict::fail(
            vec![i, j],
            Some(p),
            format!("T{i} cuts T{j} but R{i} meets S{j}"),
        ),
    }
}

/// For every pair, `R_i ∩ S_j = ∅` or `R_j ∩ S_i = ∅`.
pub fn audit_boundary_disjunction(cells: &[IndexedStair]) -> Verdict {
    let found = (0..cells.len()).into_par_iter().find_map_first(|a| {
        let (i, si) = &cells[a];
        cells[a + 1..].iter().find_map(|(j, sj)| {
            let p = si.open_boundary_hit(sj)?;
            let q = sj.open_boundary_hit(si)?;
            Some((*i, *j, p, q))
        })
    });
    match found {
        None => Verdict::Pass,
        Some((i, j, p, q)) => Verdict::fail(
            vec![i, j],
            Some(p.clone()),
            format!("R{i} meets S{j} at {p} and R{j} meets S{i} at {q}"),
        ),
    }
}

/// Every inner corner of `S_i` lies in some other `S_j` whose anchor has the
/// corner's x-coordinate. No precondition guard.
pub fn check_inner_corners(cells: &[IndexedStair]) -> Verdict {
    for (i, si) in cells {
        for z in si.inner_corners() {
            let ok = cells
                .iter()
                .any(|(j, sj)| j != i && sj.contains(&z) && *sj.left() == z.x);
            if !ok {
                return Verdict::fail(
                    vec![*i],
                    Some(z),
                    format!("no cell other than S{i} contains the corner with its anchor on that vertical"),
                );
            }
        }
    }
    Verdict::Pass
}

fn tiling_guard(cells: &[IndexedStair], k: usize, l: &Rational) -> std::result::Result<(), String> {
    match verify_exact_tiling(&stairs_of(cells), k, l) {
        Ok(r) if r.is_exact() => Ok(()),
        Ok(_) => Err("precondition failed: cells are not an exact k-fold tiling".into()),
        Err(e) => Err(format!("precondition failed: {e}")),
    }
}

/// [`check_inner_corners`] behind the exact-tiling guard.
pub fn audit_inner_corners(cells: &[IndexedStair], k: usize, l: &Rational) -> Verdict {
    match tiling_guard(cells, k, l) {
        Ok(()) => check_inner_corners(cells),
        Err(why) => Verdict::Skipped(why),
    }
}

/// `r_i` and `n_i = #{j : anchor(S_j) ∈ Int(S_i) ∪ Z(S_i)}` for every cell.
pub fn corner_counts(cells: &[IndexedStair]) -> CornerCounts {
    let anchors: Vec<Point> = cells.iter().map(|(_, s)| s.anchor()).collect();
    let stats: Vec<CellStat> = cells
        .par_iter()
        .map(|(i, s)| {
            let corners = s.inner_corners();
            let n = anchors
                .iter()
                .filter(|a| s.interior_contains(a) || corners.contains(a))
                .count();
            CellStat { index: *i, r: s.stair_count(), n, area: s.area() }
        })
        .collect();
    let sum_r = stats.iter().map(|c| c.r).sum();
    let sum_n = stats.iter().map(|c| c.n).sum();
    CornerCounts { cells: stats, sum_r, sum_n }
}

/// `n_i >= r_i - k + 1` for every cell. No precondition guard.
pub fn check_corner_count(counts: &CornerCounts, k: usize) -> Verdict {
    match counts.cells.iter().find(|c| c.n + k < c.r + 1) {
        None => Verdict::Pass,
        Some(c) => Verdict::fail(
            vec![c.index],
            None,
            format!("n = {} < r - k + 1 = {} - {k} + 1", c.n, c.r),
        ),
    }
}

/// `Σ n_i <= k N'`. No precondition guard.
pub fn check_corner_sum(counts: &CornerCounts, k: usize) -> Verdict {
    let bound = k * counts.cells.len();
    if counts.sum_n <= bound {
        Verdict::Pass
    } else {
        Verdict::fail(
            counts.cells.iter().map(|c| c.index).collect(),
            None,
            format!("sum n = {} > k N' = {bound}", counts.sum_n),
        )
    }
}

/// `Σ r_i <= (2k - 1) N'`. No precondition guard.
pub fn check_stair_sum(counts: &CornerCounts, k: usize) -> Verdict {
    let bound = (2 * k - 1) * counts.cells.len();
    if counts.sum_r <= bound {
        Verdict::Pass
    } else {
        Verdict::fail(
            counts.cells.iter().map(|c| c.index).collect(),
            None,
            format!("sum r = {} > (2k - 1) N' = {bound}", counts.sum_r),
        )
    }
}

/// Corner counts with the three count inequalities behind their guards: the
/// corner-sum check needs an exact tiling, the corner-count and stair-sum
/// checks additionally need the boundary disjunction.
pub fn audit_corner_counts(cells: &[IndexedStair], k: usize, l: &Rational) -> (CornerCounts, [Verdict; 3]) {
    let counts = corner_counts(cells);
    let tiling = tiling_guard(cells, k, l);
    let disjunction = audit_boundary_disjunction(cells);
    let verdicts = match tiling {
        Err(why) => [
            Verdict::Skipped(why.clone()),
            Verdict::Skipped(why.clone()),
            Verdict::Skipped(why),
        ],
        Ok(()) => {
            let sum = check_corner_sum(&counts, k);
            if disjunction.passed() {
                [check_corner_count(&counts, k), sum, check_stair_sum(&counts, k)]
            } else {
                let why = "precondition failed: boundary disjunction does not hold".to_string();
                [Verdict::Skipped(why.clone()), sum, Verdict::Skipped(why)]
            }
        }
    };
    (counts, verdicts)
}

/// Runs every audit on a decomposition of `inst`.
pub fn audit(inst: &CoveringInstance, res: &DecompositionResult) -> AuditReport {
    let k = inst.k() as usize;
    let l = inst.l();
    let tris = inst.translates();
    let mut entries = vec![
        AuditEntry { id: AuditId::StairCells, verdict: audit_stair_cells(inst, res) },
        AuditEntry { id: AuditId::CutTransitivity, verdict: audit_cut_transitivity(tris) },
        AuditEntry { id: AuditId::MinimalCut, verdict: audit_minimal_cut(tris, l) },
    ];

    let cells: Option<Vec<IndexedStair>> = res
        .cells
        .iter()
        .map(|c| c.region.as_stair().map(|s| (c.index, s.clone())))
        .collect();
    let Some(cells) = cells else {
        let why = "precondition failed: some cells are not stair polygons".to_string();
        for id in &AuditId::ALL[3..] {
            entries.push(AuditEntry { id: *id, verdict: Verdict::Skipped(why.clone()) });
        }
        return AuditReport {
            k: inst.k(),
            l: l.clone(),
            n_translates: inst.len(),
            n_cells: res.cells.len(),
            entries,
            counts: None,
        };
    };

    let tiling = verify_exact_tiling(&stairs_of(&cells), k, l).expect("decomposition cells lie in the window");
    let (at_most, at_least) = disjointness_verdicts(&cells, &tiling);
    entries.push(AuditEntry { id: AuditId::AtMostK, verdict: at_most });
    entries.push(AuditEntry { id: AuditId::AtLeastK, verdict: at_least });
    entries.push(AuditEntry { id: AuditId::ExactTiling, verdict: tiling_verdict(&cells, &tiling) });
    entries.push(AuditEntry { id: AuditId::BoundaryCut, verdict: audit_boundary_cut(tris, &cells) });
    let disjunction = audit_boundary_disjunction(&cells);
    entries.push(AuditEntry { id: AuditId::BoundaryDisjunction, verdict: disjunction.clone() });

    let counts = corner_counts(&cells);
    let tiling_skip = "precondition failed: cells are not an exact k-fold tiling";
    let disjunction_skip = "precondition failed: boundary disjunction does not hold";
    let exact = tiling.is_exact();
    let guarded = |needs_disjunction: bool, run: &dyn Fn() -> Verdict| {
        if !exact {
            Verdict::Skipped(tiling_skip.into())
        } else if needs_disjunction && !disjunction.passed() {
            Verdict::Skipped(disjunction_skip.into())
        } else {
            run()
        }
    };
    entries.push(AuditEntry {
        id: AuditId::InnerCorners,
        verdict: guarded(false, &|| check_inner_corners(&cells)),
    });
    entries.push(AuditEntry {
        id: AuditId::CornerCount,
        verdict: guarded(true, &|| check_corner_count(&counts, k)),
    });
    entries.push(AuditEntry {
        id: AuditId::CornerSum,
        verdict: guarded(false, &|| check_corner_sum(&counts, k)),
    });
    entries.push(AuditEntry {
        id: AuditId::StairSum,
        verdict: guarded(true, &|| check_stair_sum(&counts, k)),
    });

    AuditReport {
        k: inst.k(),
        l: l.clone(),
        n_translates: inst.len(),
        n_cells: cells.len(),
        entries,
        counts: Some(counts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::decompose;
    use crate::rational::{int, rat};

    fn pt(a: Rational, b: Rational) -> Point {
        Point::new(a, b)
    }

    fn rect(x0: i64, x1: i64, y0: i64, y1: i64) -> StairPolygon {
        StairPolygon::rect(int(x0), int(x1), int(y0), int(y1)).unwrap()
    }

    fn four() -> CoveringInstance {
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

    #[test]
    fn four_translates_pass_everything() {
        let inst = four();
        let report = audit(&inst, &decompose(&inst));
        for e in &report.entries {
            assert!(e.verdict.passed(), "{} -> {:?}", e.id, e.verdict);
        }
        let counts = report.counts.unwrap();
        assert_eq!(counts.sum_r, 0);
        assert_eq!(counts.sum_n, 0);
    }

    #[test]
    fn lone_triangle_fails_stair_cells_and_skips_the_rest() {
        let inst = CoveringInstance::new(1, int(1), vec![pt(int(0), int(0))]).unwrap();
        let report = audit(&inst, &decompose(&inst));
        assert!(report.verdict(AuditId::StairCells).unwrap().failed());
        assert!(matches!(report.verdict(AuditId::StairSum), Some(Verdict::Skipped(_))));
        assert!(!report.all_passed());
    }

    #[test]
    fn duplicate_triangles_break_the_minimal_cut_property() {
        let t = TriTranslate::new(pt(int(0), int(0)));
        let v = audit_minimal_cut(&[t.clone(), t], &int(1));
        assert!(v.failed());
    }

    #[test]
    fn intransitive_relation_is_caught() {
        // a cuts b, b cuts c, a does not cut c
        let cuts = |a: usize, b: usize| (a, b) == (0, 1) || (a, b) == (1, 2);
        let v = check_cut_transitivity(3, cuts, |_, _, _| true);
        assert_eq!(v.counterexample().unwrap().indices, vec![0, 1, 2]);
        assert!(check_cut_transitivity(3, cuts, |_, _, _| false).passed());
    }

    #[test]
    fn stacked_squares_exceed_k() {
        let cells = vec![(0, rect(0, 1, 0, 1)), (1, rect(0, 1, 0, 1))];
        let (most, least) = audit_disjointness(&cells, 1, &int(1)).unwrap();
        let c = most.counterexample().unwrap();
        assert_eq!(c.indices, vec![0, 1]);
        assert!(least.passed());
    }

    #[test]
    fn empty_cell_list_misses_every_point() {
        let (most, least) = audit_disjointness(&[], 1, &int(1)).unwrap();
        assert!(most.passed());
        assert!(least.failed());
    }

    #[test]
    fn crossing_bars_violate_both_boundary_properties() {
        let cells = vec![(0, rect(0, 3, 1, 2)), (1, rect(1, 2, 0, 3))];
        // T0 cuts T1: intersecting, v1 precedes v0
        let tris = vec![
            TriTranslate::new(pt(rat(1, 2), int(0))),
            TriTranslate::new(pt(int(0), int(0))),
        ];
        let v = audit_boundary_cut(&tris, &cells);
        let c = v.counterexample().unwrap();
        assert_eq!(c.indices, vec![0, 1]);
        let p = c.point.clone().unwrap();
        assert!(cells[0].1.closure_contains(&p) && !cells[0].1.contains(&p));
        assert!(cells[1].1.contains(&p));
        assert!(audit_boundary_disjunction(&cells).failed());
    }

    #[test]
    fn boundary_audits_are_vacuous_on_a_single_cell() {
        let cells = vec![(0, rect(0, 1, 0, 1))];
        let tris = vec![TriTranslate::new(pt(int(0), int(0)))];
        assert!(audit_boundary_cut(&tris, &cells).passed());
        assert!(audit_boundary_disjunction(&cells).passed());
    }

    #[test]
    fn inner_corner_check_is_guarded_by_the_tiling() {
        let l_shape = StairPolygon::new(vec![int(0), int(1), int(2)], vec![int(2), int(1), int(0)]).unwrap();
        let cells = vec![(0, l_shape.clone())];
        assert!(matches!(audit_inner_corners(&cells, 1, &int(2)), Verdict::Skipped(_)));
        assert!(check_inner_corners(&cells).failed());

        let tiling = vec![(0, l_shape), (1, rect(1, 2, 1, 2))];
        assert!(audit_inner_corners(&tiling, 1, &int(2)).passed());
    }

    #[test]
    fn corner_counts_on_an_isolated_two_stair() {
        let s = StairPolygon::new(
            vec![int(0), int(1), int(2), int(3)],
            vec![int(3), int(2), int(1), int(0)],
        )
        .unwrap();
        let counts = corner_counts(&[(0, s)]);
        assert_eq!(counts.sum_r, 2);
        assert_eq!(counts.sum_n, 0);
        assert!(check_corner_count(&counts, 1).failed());
        assert!(check_stair_sum(&counts, 1).failed());
        assert!(check_corner_sum(&counts, 1).passed());
    }

    #[test]
    fn anchors_inside_big_cells_overflow_the_corner_sum() {
        let big = rect(0, 4, 0, 4);
        let tiny = |x: i64| (x as usize + 2, rect(x, x + 1, 1, 2));
        let cells = vec![(0, big.clone()), (1, big), tiny(1), tiny(2), tiny(3)];
        let counts = corner_counts(&cells);
        assert_eq!(counts.sum_n, 6);
        assert!(check_corner_sum(&counts, 1).failed());
    }
}
