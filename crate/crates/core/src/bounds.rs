//! Area bounds for stair polygons inside the canonical triangle and the
//! density inequality chain they feed.

use num_traits::Zero;

use crate::decompose::{CoveringInstance, DecompositionResult};
use crate::error::{Error, Result};
use crate::geom::{StairPolygon, TriTranslate};
use crate::rational::{format_rational, int, rat, Rational};
use crate::verify::verify_exact_tiling;

/// Largest area of a half-open r-stair polygon inside `T`: `(r+1) / (2(r+2))`.
pub fn max_stair_area(r: i64) -> Result<Rational> {
    if r < 0 {
        return Err(Error::Negative(r.to_string()));
    }
    Ok(rat(r + 1, 2 * (r + 2)))
}

/// The concave increasing extension `(x+1) / (2(x+2))` of
/// [`max_stair_area`] to real `x >= 0`.
pub fn stair_area_envelope(x: &Rational) -> Result<Rational> {
    if *x < Rational::zero() {
        return Err(Error::Negative(format_rational(x)));
    }
    Ok((x + int(1)) / (int(2) * (x + int(2))))
}

/// Optimal k-fold lattice covering density of `T`, `(2k + 1) / 2`.
pub fn lattice_density_formula(k: u32) -> Rational {
    let closed = rat(2 * i64::from(k) + 1, 2);
    debug_assert_eq!(closed, lattice_density_from_area(k));
    closed
}

/// The same density as `k |T| / A(2k - 1)` with `|T| = 1/2`.
pub fn lattice_density_from_area(k: u32) -> Rational {
    let k = i64::from(k);
    let a = max_stair_area(2 * k - 1).expect("2k - 1 >= 0 for k >= 1");
    int(k) * rat(1, 2) / a
}

/// The r-stair polygon with uniform breaks `x_i = i/(r+2)`,
/// `y_j = (r+1-j)/(r+2)`; its outer corners sit on the hypotenuse of `T`.
pub fn max_stair_in_t(r: i64) -> Result<StairPolygon> {
    if r < 0 {
        return Err(Error::Negative(r.to_string()));
    }
    let d = r + 2;
    let xs = (0..=r + 1).map(|i| rat(i, d)).collect();
    let ys = (0..=r + 1).map(|j| rat(r + 1 - j, d)).collect();
    StairPolygon::new(xs, ys)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    AtMost,
}

/// One link `lhs (=|<=) rhs` of the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLink {
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub relation: Relation,
    pub holds: bool,
}

/// Cell-level data used by the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellBound {
    pub index: usize,
    pub r: usize,
    pub area: Rational,
    pub bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainValues {
    /// `l²`
    pub window_area: Rational,
    /// `Σ|S_i| / k`
    pub tiled_area: Rational,
    /// `Σ A(r_i) / k`
    pub stair_bound: Rational,
    /// `(N'/k) B(Σr_i / N')`
    pub concave_bound: Rational,
    /// `(N'/k) A(2k - 1)`
    pub cell_count_bound: Rational,
    /// `(N/k) A(2k - 1)`
    pub translate_count_bound: Rational,
}

impl ChainValues {
    pub fn named(&self) -> [(&'static str, &Rational); 6] {
        [
            ("window_area", &self.window_area),
            ("tiled_area", &self.tiled_area),
            ("stair_bound", &self.stair_bound),
            ("concave_bound", &self.concave_bound),
            ("cell_count_bound", &self.cell_count_bound),
            ("translate_count_bound", &self.translate_count_bound),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub k: u32,
    pub l: Rational,
    pub n_translates: usize,
    pub n_cells: usize,
    pub sum_r: usize,
    pub cells: Vec<CellBound>,
    /// `None` when the preconditions fail; see `invalid`.
    pub chain: Option<ChainValues>,
    pub links: Vec<ChainLink>,
    /// Why the chain was not evaluated.
    pub invalid: Option<String>,
}

impl BoundReport {
    pub fn passes(&self) -> bool {
        self.invalid.is_none()
            && self.links.iter().all(|l| l.holds)
            && self.cells.iter().all(|c| c.area <= c.bound)
    }

    /// `(N/k) A(2k - 1) - l²`.
    pub fn slack(&self) -> Option<Rational> {
        self.chain
            .as_ref()
            .map(|c| &c.translate_count_bound - &c.window_area)
    }
}

/// Evaluates every link of
/// `l² = Σ|S_i|/k <= ΣA(r_i)/k <= (N'/k)B(Σr_i/N') <= (N'/k)A(2k-1) <= (N/k)A(2k-1)`
/// exactly. The chain is only asserted when the cells are stair polygons
/// inside their triangles forming an exact k-fold tiling of the window.
pub fn density_chain(inst: &CoveringInstance, res: &DecompositionResult) -> BoundReport {
    let k = inst.k();
    let l = inst.l().clone();
    let mut report = BoundReport {
        k,
        l: l.clone(),
        n_translates: inst.len(),
        n_cells: res.cells.len(),
        sum_r: 0,
        cells: Vec::new(),
        chain: None,
        links: Vec::new(),
        invalid: None,
    };
    let Some(stairs) = res.stairs() else {
        report.invalid = Some("some cells are not stair polygons".into());
        return report;
    };
    for (cell, s) in res.cells.iter().zip(&stairs) {
        let r = s.stair_count();
        report.cells.push(CellBound {
            index: cell.index,
            r,
            area: s.area(),
            bound: max_stair_area(r as i64).expect("non-negative"),
        });
    }
    report.sum_r = report.cells.iter().map(|c| c.r).sum();

    let fits = res
        .cells
        .iter()
        .zip(&stairs)
        .all(|(c, s)| fits_some_translate(s, &inst.translates()[c.index]));
    if !fits {
        report.invalid = Some("a cell does not fit in its triangle".into());
        return report;
    }
    match verify_exact_tiling(&stairs, k as usize, &l) {
        Ok(t) if t.is_exact() => {}
        Ok(_) => {
            report.invalid = Some("cells are not an exact k-fold tiling of the window".into());
            return report;
        }
        Err(e) => {
            report.invalid = Some(e.to_string());
            return report;
        }
    }

    let kq = int(i64::from(k));
    let n_cells = int(report.n_cells as i64);
    let n_all = int(report.n_translates as i64);
    let top = max_stair_area(2 * i64::from(k) - 1).expect("k >= 1");
    let sum = |it: &mut dyn Iterator<Item = Rational>| it.fold(Rational::zero(), |a, b| a + b);

    let window_area = &l * &l;
    let tiled_area = sum(&mut report.cells.iter().map(|c| c.area.clone())) / &kq;
    let stair_bound = sum(&mut report.cells.iter().map(|c| c.bound.clone())) / &kq;
    let mean_r = int(report.sum_r as i64) / &n_cells;
    let concave_bound = &n_cells / &kq * stair_area_envelope(&mean_r).expect("non-negative");
    let cell_count_bound = &n_cells / &kq * &top;
    let translate_count_bound = &n_all / &kq * &top;

    let link = |lhs, rhs, relation, a: &Rational, b: &Rational| ChainLink {
        lhs,
        rhs,
        relation,
        holds: match relation {
            Relation::Equal => a == b,
            Relation::AtMost => a <= b,
        },
    };
    report.links = vec![
        link("window_area", "tiled_area", Relation::Equal, &window_area, &tiled_area),
        link("tiled_area", "stair_bound", Relation::AtMost, &tiled_area, &stair_bound),
        link("stair_bound", "concave_bound", Relation::AtMost, &stair_bound, &concave_bound),
        link("concave_bound", "cell_count_bound", Relation::AtMost, &concave_bound, &cell_count_bound),
        link(
            "cell_count_bound",
            "translate_count_bound",
            Relation::AtMost,
            &cell_count_bound,
            &translate_count_bound,
        ),
        link("window_area", "translate_count_bound", Relation::AtMost, &window_area, &translate_count_bound),
    ];
    report.chain = Some(ChainValues {
        window_area,
        tiled_area,
        stair_bound,
        concave_bound,
        cell_count_bound,
        translate_count_bound,
    });
    report
}

fn fits_some_translate(s: &StairPolygon, t: &TriTranslate) -> bool {
    s.fits_in(t)
}
