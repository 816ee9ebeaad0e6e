//! Cutting a finite normal covering of the window `[0, l)²` into stair cells.
//!
//! For translate `T_i`, the cutters `C_i` are the translates that cut it.
//! Inside `T_i` every cutter `T_j` occupies exactly the orthant above its cut
//! apex `max(v_i, v_j)` (the hypotenuse of `T_j` lies beyond that of `T_i`),
//! so the union of all k-wise cutter intersections restricted to `T_i` is the
//! set of points dominating at least `k` apexes. The cell
//! `S_i = [0,l)² ∩ (T_i \ U_i)` is therefore the window-clipped orthant of
//! `v_i` minus the k-th dominance level of the apex multiset, further cut by
//! the hypotenuse of `T_i` when that has not already been removed.

use std::collections::HashSet;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{cut_apex, Point, StairPolygon, TriTranslate};
use crate::rational::{format_rational, Rational};

/// A finite family of distinct translates that should cover `[0, l)²` at
/// least `k` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringInstance {
    k: u32,
    l: Rational,
    translates: Vec<TriTranslate>,
}

impl CoveringInstance {
    pub fn new(k: u32, l: Rational, vertices: Vec<Point>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInstance("k must be positive".into()));
        }
        if !l.is_positive() {
            return Err(Error::InvalidInstance(format!(
                "window side must be positive, got {}",
                format_rational(&l)
            )));
        }
        if vertices.is_empty() {
            return Err(Error::InvalidInstance("no translates".into()));
        }
        let mut seen = HashSet::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if !seen.insert(v) {
                return Err(Error::InvalidInstance(format!(
                    "translate {i} at {v} duplicates an earlier translate"
                )));
            }
        }
        let translates = vertices.into_iter().map(TriTranslate::new).collect();
        Ok(CoveringInstance { k, l, translates })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> &Rational {
        &self.l
    }

    pub fn translates(&self) -> &[TriTranslate] {
        &self.translates
    }

    pub fn len(&self) -> usize {
        self.translates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.translates.is_empty()
    }

    pub fn window_contains(&self, p: &Point) -> bool {
        let zero = Rational::zero();
        p.x >= zero && p.y >= zero && p.x < self.l && p.y < self.l
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.translates.len() {
            return Err(Error::IndexOutOfRange { index: i, len: self.translates.len() });
        }
        Ok(())
    }
}

/// Indices `j` with `T_j` cutting `T_i`.
pub fn cutter_set(inst: &CoveringInstance, i: usize) -> Result<Vec<usize>> {
    inst.check_index(i)?;
    let target = &inst.translates[i];
    Ok(inst
        .translates
        .iter()
        .enumerate()
        .filter(|(_, t)| t.cuts(target))
        .map(|(j, _)| j)
        .collect())
}

/// The point set of a decomposition cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellRegion {
    /// A half-open stair polygon lying inside its triangle.
    Stair(StairPolygon),
    /// `stair ∩ {x + y <= sum_bound}`: the hypotenuse was not removed by the
    /// cutters, so the cell is not a stair polygon. Only happens on inputs
    /// that are not k-fold coverings.
    Clipped { stair: StairPolygon, sum_bound: Rational },
}

impl CellRegion {
    pub fn contains(&self, p: &Point) -> bool {
        match self {
            CellRegion::Stair(s) => s.contains(p),
            CellRegion::Clipped { stair, sum_bound } => stair.contains(p) && p.sum() <= *sum_bound,
        }
    }

    pub fn as_stair(&self) -> Option<&StairPolygon> {
        match self {
            CellRegion::Stair(s) => Some(s),
            CellRegion::Clipped { .. } => None,
        }
    }

    pub fn is_stair(&self) -> bool {
        self.as_stair().is_some()
    }

    /// The staircase part (for clipped cells, before the hypotenuse cut).
    pub fn staircase(&self) -> &StairPolygon {
        match self {
            CellRegion::Stair(s) => s,
            CellRegion::Clipped { stair, .. } => stair,
        }
    }
}

/// `[0,l)² ∩ (T_i \ U_i)`, or `None` when empty.
pub fn stair_cell(inst: &CoveringInstance, i: usize) -> Result<Option<CellRegion>> {
    let cutters = cutter_set(inst, i)?;
    let target = &inst.translates[i];
    let zero = Rational::zero();
    let l = &inst.l;

    let x0 = target.v.x.clone().max(zero.clone());
    let y0 = target.v.y.clone().max(zero);
    if x0 >= *l || y0 >= *l {
        return Ok(None);
    }

    let mut apexes: Vec<Point> = cutters
        .iter()
        .map(|&j| cut_apex(target, &inst.translates[j]))
        .collect::<Result<_>>()?;
    apexes.sort_by(|a, b| a.x.cmp(&b.x));

    let mut xs = vec![x0.clone()];
    xs.extend(apexes.iter().filter(|a| a.x > x0 && a.x < *l).map(|a| a.x.clone()));
    xs.push(l.clone());
    xs.dedup();

    // y-values of the apexes already passed, kept sorted so the k-th
    // smallest is the column top
    let k = inst.k as usize;
    let mut active: Vec<Rational> = Vec::with_capacity(apexes.len());
    let mut next = 0;
    let mut tops = Vec::with_capacity(xs.len() - 1);
    for x in &xs[..xs.len() - 1] {
        while next < apexes.len() && apexes[next].x <= *x {
            let y = &apexes[next].y;
            let pos = active.partition_point(|a| a <= y);
            active.insert(pos, y.clone());
            next += 1;
        }
        let top = match active.get(k - 1) {
            Some(kth) => kth.clone().min(l.clone()),
            None => l.clone(),
        };
        tops.push(top);
    }

    let Some(stair) = StairPolygon::from_profile(&xs, &tops, &y0)? else {
        return Ok(None);
    };
    if stair.fits_in(target) {
        return Ok(Some(CellRegion::Stair(stair)));
    }
    let sum_bound = target.hypotenuse_sum();
    if stair.anchor().sum() > sum_bound {
        return Ok(None);
    }
    Ok(Some(CellRegion::Clipped { stair, sum_bound }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Index of the generating translate.
    pub index: usize,
    pub region: CellRegion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionResult {
    /// Non-empty cells, ordered by translate index.
    pub cells: Vec<Cell>,
    /// Translates whose cell is empty.
    pub empty: Vec<usize>,
}

impl DecompositionResult {
    /// Indices of cells that kept part of their hypotenuse.
    pub fn non_stair(&self) -> Vec<usize> {
        self.cells
            .iter()
            .filter(|c| !c.region.is_stair())
            .map(|c| c.index)
            .collect()
    }

    /// All cells as stair polygons, or `None` if any cell is not one.
    pub fn stairs(&self) -> Option<Vec<StairPolygon>> {
        self.cells
            .iter()
            .map(|c| c.region.as_stair().cloned())
            .collect()
    }

    pub fn cell(&self, index: usize) -> Option<&Cell> {
        self.cells
            .binary_search_by_key(&index, |c| c.index)
            .ok()
            .map(|pos| &self.cells[pos])
    }
}

/// Cells of every translate. Cells are independent and computed in parallel;
/// the result order does not depend on scheduling.
pub fn decompose(inst: &CoveringInstance) -> DecompositionResult {
    let regions: Vec<Option<CellRegion>> = (0..inst.len())
        .into_par_iter()
        .map(|i| stair_cell(inst, i).expect("index in range"))
        .collect();
    let mut cells = Vec::new();
    let mut empty = Vec::new();
    for (index, region) in regions.into_iter().enumerate() {
        match region {
            Some(region) => cells.push(Cell { index, region }),
            None => empty.push(index),
        }
    }
    DecompositionResult { cells, empty }
}
