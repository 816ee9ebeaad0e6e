//! Machine-readable reports. Every rational is an exact string, so a report
//! read back from disk compares equal to the one that was written.

use serde::{Deserialize, Serialize};
use tricover::audit::{AuditReport, CornerCounts, Verdict};
use tricover::bounds::{BoundReport, Relation};
use tricover::decompose::{CellRegion, DecompositionResult};
use tricover::lattice::LatticeCoverReport;
use tricover::rational::format_rational;
use tricover::verify::{CoverageCertificate, MultiplicityWitness, TilingReport};
use tricover::CoveringInstance;

use crate::io::{point_text, LoadedInstance, PointText, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub passed: bool,
    pub instance: InstanceSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covering: Option<CoveringRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tiling: Option<TilingRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub k: u32,
    pub l: String,
    pub n_translates: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Present when the input used a non-canonical triangle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalization: Option<NormalizationRecord>,
}

/// Translation vectors `t` of the input map to `inverse · t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationRecord {
    pub triangle: [PointText; 3],
    pub inverse: [[String; 2]; 2],
}

impl InstanceSummary {
    pub fn new(loaded: &LoadedInstance) -> Self {
        let inst = &loaded.instance;
        InstanceSummary {
            k: inst.k(),
            l: format_rational(inst.l()),
            n_translates: inst.len(),
            name: loaded.metadata.as_ref().and_then(|m| m.name.clone()),
            normalization: loaded.normalization.as_ref().map(|n| NormalizationRecord {
                triangle: [point_text(&n.triangle[0]), point_text(&n.triangle[1]), point_text(&n.triangle[2])],
                inverse: [
                    [format_rational(&n.inverse[0][0]), format_rational(&n.inverse[0][1])],
                    [format_rational(&n.inverse[1][0]), format_rational(&n.inverse[1][1])],
                ],
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringRecord {
    pub k_fold: bool,
    pub min_depth: usize,
    /// A window point of minimum depth.
    pub witness: PointText,
}

impl CoveringRecord {
    pub fn new(inst: &CoveringInstance, cert: &CoverageCertificate) -> Self {
        CoveringRecord {
            k_fold: cert.min_depth >= inst.k() as usize,
            min_depth: cert.min_depth,
            witness: point_text(&cert.witness),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    /// Index of the generating translate.
    pub index: usize,
    /// `"stair"` or `"clipped"`.
    pub kind: String,
    pub x_breaks: Vec<String>,
    pub y_breaks: Vec<String>,
    /// Clipped cells keep only points with `x + y <= sum_bound`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sum_bound: Option<String>,
    pub r: usize,
    /// Area of the staircase part.
    pub area: String,
    pub anchor: PointText,
    pub inner_corners: Vec<PointText>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub n_cells: usize,
    pub cells: Vec<CellRecord>,
    /// Translates with an empty cell.
    pub empty: Vec<usize>,
}

impl DecompositionRecord {
    pub fn new(res: &DecompositionResult) -> Self {
        let cells = res
            .cells
            .iter()
            .map(|c| {
                let s = c.region.staircase();
                let (kind, sum_bound) = match &c.region {
                    CellRegion::Stair(_) => ("stair", None),
                    CellRegion::Clipped { sum_bound, .. } => ("clipped", Some(format_rational(sum_bound))),
                };
                CellRecord {
                    index: c.index,
                    kind: kind.into(),
                    x_breaks: s.x_breaks().iter().map(format_rational).collect(),
                    y_breaks: s.y_breaks().iter().map(format_rational).collect(),
                    sum_bound,
                    r: s.stair_count(),
                    area: format_rational(&s.area()),
                    anchor: point_text(&s.anchor()),
                    inner_corners: s.inner_corners().iter().map(point_text).collect(),
                }
            })
            .collect();
        DecompositionRecord { n_cells: res.cells.len(), cells, empty: res.empty.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub point: PointText,
    pub multiplicity: usize,
}

impl WitnessRecord {
    fn new(w: &MultiplicityWitness) -> Self {
        WitnessRecord { point: point_text(&w.point), multiplicity: w.multiplicity }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingRecord {
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub under: Option<WitnessRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over: Option<WitnessRecord>,
    /// Why the check did not run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl TilingRecord {
    pub fn new(t: &TilingReport) -> Self {
        TilingRecord {
            exact: t.is_exact(),
            under: t.under.as_ref().map(WitnessRecord::new),
            over: t.over.as_ref().map(WitnessRecord::new),
            skipped: None,
        }
    }

    pub fn skipped(reason: String) -> Self {
        TilingRecord { exact: false, under: None, over: None, skipped: Some(reason) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    pub indices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<PointText>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntryRecord {
    pub id: String,
    pub statement: String,
    /// `"pass"`, `"fail"` or `"skipped"`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCountRecord {
    pub index: usize,
    pub r: usize,
    pub n: usize,
    pub area: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsRecord {
    pub sum_r: usize,
    pub sum_n: usize,
    pub cells: Vec<CellCountRecord>,
}

impl CountsRecord {
    fn new(c: &CornerCounts) -> Self {
        CountsRecord {
            sum_r: c.sum_r,
            sum_n: c.sum_n,
            cells: c
                .cells
                .iter()
                .map(|s| CellCountRecord { index: s.index, r: s.r, n: s.n, area: format_rational(&s.area) })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub all_passed: bool,
    pub entries: Vec<AuditEntryRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<CountsRecord>,
}

impl AuditRecord {
    pub fn new(a: &AuditReport) -> Self {
        let entries = a
            .entries
            .iter()
            .map(|e| {
                let (status, reason, counterexample) = match &e.verdict {
                    Verdict::Pass => ("pass", None, None),
                    Verdict::Skipped(why) => ("skipped", Some(why.clone()), None),
                    Verdict::Fail(c) => (
                        "fail",
                        None,
                        Some(CounterexampleRecord {
                            indices: c.indices.clone(),
                            point: c.point.as_ref().map(point_text),
                            detail: c.detail.clone(),
                        }),
                    ),
                };
                AuditEntryRecord {
                    id: e.id.name().into(),
                    statement: e.id.statement().into(),
                    status: status.into(),
                    reason,
                    counterexample,
                }
            })
            .collect();
        AuditRecord { all_passed: a.all_passed(), entries, counts: a.counts.as_ref().map(CountsRecord::new) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkRecord {
    pub lhs: String,
    /// `"="` or `"<="`.
    pub relation: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellBoundRecord {
    pub index: usize,
    pub r: usize,
    pub area: String,
    /// Largest area of an `r`-stair polygon inside a triangle.
    pub bound: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub passes: bool,
    pub n_cells: usize,
    pub sum_r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invalid: Option<String>,
    /// Chain values from the window area up to the translate-count bound.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chain: Vec<NamedValue>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub links: Vec<LinkRecord>,
    /// Translate-count bound minus the window area.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slack: Option<String>,
    pub cells: Vec<CellBoundRecord>,
}

impl BoundsRecord {
    pub fn new(b: &BoundReport) -> Self {
        BoundsRecord {
            passes: b.passes(),
            n_cells: b.n_cells,
            sum_r: b.sum_r,
            invalid: b.invalid.clone(),
            chain: b
                .chain
                .as_ref()
                .map(|c| {
                    c.named()
                        .iter()
                        .map(|(name, v)| NamedValue { name: (*name).into(), value: format_rational(v) })
                        .collect()
                })
                .unwrap_or_default(),
            links: b
                .links
                .iter()
                .map(|l| LinkRecord {
                    lhs: l.lhs.into(),
                    relation: match l.relation {
                        Relation::Equal => "=",
                        Relation::AtMost => "<=",
                    }
                    .into(),
                    rhs: l.rhs.into(),
                    holds: l.holds,
                })
                .collect(),
            slack: b.slack().as_ref().map(format_rational),
            cells: b
                .cells
                .iter()
                .map(|c| CellBoundRecord {
                    index: c.index,
                    r: c.r,
                    area: format_rational(&c.area),
                    bound: format_rational(&c.bound),
                })
                .collect(),
        }
    }
}

impl Report {
    pub fn new(command: &str, loaded: &LoadedInstance) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            passed: false,
            instance: InstanceSummary::new(loaded),
            covering: None,
            decomposition: None,
            tiling: None,
            audit: None,
            bounds: None,
        }
    }

    /// Conjunction of every section present.
    pub fn settle(&mut self) {
        self.passed = self.covering.as_ref().is_none_or(|c| c.k_fold)
            && self
                .decomposition
                .as_ref()
                .is_none_or(|d| d.cells.iter().all(|c| c.kind == "stair"))
            && self.tiling.as_ref().is_none_or(|t| t.exact)
            && self.audit.as_ref().is_none_or(|a| a.all_passed)
            && self.bounds.as_ref().is_none_or(|b| b.passes);
    }

    /// Short human-readable summary, one fact per line.
    pub fn summary(&self) -> String {
        let mut out = Vec::new();
        let i = &self.instance;
        out.push(format!("instance: k = {}, l = {}, {} translates", i.k, i.l, i.n_translates));
        if let Some(n) = &i.normalization {
            out.push(format!(
                "normalized from triangle ({}, {}), ({}, {}), ({}, {})",
                n.triangle[0][0], n.triangle[0][1], n.triangle[1][0], n.triangle[1][1], n.triangle[2][0], n.triangle[2][1]
            ));
        }
        if let Some(c) = &self.covering {
            let verdict = if c.k_fold {
                format!("{}-fold covering", i.k)
            } else {
                format!("not a {}-fold covering", i.k)
            };
            out.push(format!(
                "covering: {verdict} (minimum depth {} at ({}, {}))",
                c.min_depth, c.witness[0], c.witness[1]
            ));
        }
        if let Some(d) = &self.decomposition {
            let clipped = d.cells.iter().filter(|c| c.kind != "stair").count();
            out.push(format!("cells: {} non-empty, {} empty, {} not stair polygons", d.n_cells, d.empty.len(), clipped));
        }
        if let Some(t) = &self.tiling {
            let line = match (&t.skipped, t.under.as_ref().or(t.over.as_ref())) {
                (Some(why), _) => format!("tiling: skipped ({why})"),
                (None, None) => format!("tiling: exact {}-fold", i.k),
                (None, Some(w)) => format!(
                    "tiling: not exact, multiplicity {} at ({}, {})",
                    w.multiplicity, w.point[0], w.point[1]
                ),
            };
            out.push(line);
        }
        if let Some(a) = &self.audit {
            for e in &a.entries {
                let mut line = format!("audit {:<22} {}", e.id, e.status);
                if let Some(r) = &e.reason {
                    line.push_str(&format!(" ({r})"));
                }
                if let Some(c) = &e.counterexample {
                    line.push_str(&format!(": {} {:?}", c.detail, c.indices));
                    if let Some(p) = &c.point {
                        line.push_str(&format!(" at ({}, {})", p[0], p[1]));
                    }
                }
                out.push(line);
            }
            if let Some(c) = &a.counts {
                out.push(format!("corners: sum r = {}, sum n = {}", c.sum_r, c.sum_n));
            }
        }
        if let Some(b) = &self.bounds {
            if let Some(why) = &b.invalid {
                out.push(format!("bounds: not evaluated ({why})"));
            }
            for v in &b.chain {
                out.push(format!("bound {:<22} {}", v.name, v.value));
            }
            for l in &b.links {
                let mark = if l.holds { "holds" } else { "FAILS" };
                out.push(format!("link {} {} {}: {mark}", l.lhs, l.relation, l.rhs));
            }
            if let Some(s) = &b.slack {
                out.push(format!("slack: {s}"));
            }
        }
        out.push(format!("result: {}", if self.passed { "pass" } else { "fail" }));
        out.join("\n") + "\n"
    }
}

/// Result of a lattice search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimizeReport {
    pub schema_version: u32,
    pub k: u32,
    pub a: String,
    pub b: String,
    pub c: String,
    pub det: String,
    pub density: String,
    pub target_density: String,
    /// `density / target_density - 1`, exact.
    pub relative_gap: String,
    pub multiplicity: usize,
    pub evaluations: usize,
    /// Density equals `(2k + 1) / 2` exactly.
    pub attains_target: bool,
}

impl OptimizeReport {
    pub fn new(r: &LatticeCoverReport) -> Self {
        let (a, b, c) = r.lattice.hermite();
        OptimizeReport {
            schema_version: SCHEMA_VERSION,
            k: r.k,
            a: format_rational(&a),
            b: format_rational(&b),
            c: format_rational(&c),
            det: format_rational(&r.det),
            density: format_rational(&r.density),
            target_density: format_rational(&r.target_density),
            relative_gap: format_rational(&r.relative_gap),
            multiplicity: r.multiplicity,
            evaluations: r.evaluations,
            attains_target: r.density == r.target_density,
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "k = {}: lattice (a, b, c) = ({}, {}, {}), det {}, density {} (target {}, relative gap {}), \
             multiplicity {}, {} evaluations\n",
            self.k,
            self.a,
            self.b,
            self.c,
            self.det,
            self.density,
            self.target_density,
            self.relative_gap,
            self.multiplicity,
            self.evaluations
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_instance;
    use tricover::audit::audit;
    use tricover::bounds::density_chain;
    use tricover::decompose;
    use tricover::verify::{coverage_certificate, verify_exact_tiling};

    fn full_report(text: &str) -> Report {
        let loaded = parse_instance(text).unwrap();
        let inst = &loaded.instance;
        let res = decompose(inst);
        let mut report = Report::new("test", &loaded);
        report.covering = Some(CoveringRecord::new(inst, &coverage_certificate(inst)));
        report.decomposition = Some(DecompositionRecord::new(&res));
        report.tiling = Some(match res.stairs() {
            Some(s) => TilingRecord::new(&verify_exact_tiling(&s, inst.k() as usize, inst.l()).unwrap()),
            None => TilingRecord::skipped("clipped".into()),
        });
        report.audit = Some(AuditRecord::new(&audit(inst, &res)));
        report.bounds = Some(BoundsRecord::new(&density_chain(inst, &res)));
        report.settle();
        report
    }

    #[test]
    fn reports_round_trip_losslessly() {
        let texts = [
            r#"{"k": 1, "l": "1", "translates": [["0","0"],["0","1/2"],["1/2","0"],["1/2","1/2"]]}"#,
            r#"{"k": 1, "l": "1", "translates": [["0","0"]]}"#,
            r#"{"k": 1, "l": "1", "triangle": [["0","0"],["2","0"],["2","2"]], "translates": [["0","0"],["1","1"]]}"#,
        ];
        for text in texts {
            let report = full_report(text);
            let json = crate::io::to_json(&report);
            let back: Report = serde_json::from_str(&json).unwrap();
            assert_eq!(back, report);
        }
    }

    #[test]
    fn verdict_is_the_conjunction_of_sections() {
        let good = full_report(r#"{"k": 1, "l": "1", "translates": [["0","0"],["0","1/2"],["1/2","0"],["1/2","1/2"]]}"#);
        assert!(good.passed);
        assert_eq!(good.bounds.as_ref().unwrap().slack.as_deref(), Some("1/3"));
        let bad = full_report(r#"{"k": 1, "l": "1", "translates": [["0","0"]]}"#);
        assert!(!bad.passed);
        assert!(bad.summary().contains("not a 1-fold covering"));
    }
}
