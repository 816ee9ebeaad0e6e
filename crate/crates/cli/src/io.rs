//! Instance and results files. All rationals travel as exact strings
//! (`"p/q"` or an integer), never as floats.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use tricover::lattice::{Lattice, LatticeCoverReport};
use tricover::rational::{format_rational, parse_rational, Rational};
use tricover::{CoveringInstance, Point};

pub const SCHEMA_VERSION: u32 = 1;

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

pub type PointText = [String; 2];

pub fn point_text(p: &Point) -> PointText {
    [format_rational(&p.x), format_rational(&p.y)]
}

fn parse_field(text: &str, field: &str) -> Result<Rational> {
    parse_rational(text).with_context(|| format!("field `{field}`: cannot parse {text:?} as a rational"))
}

fn parse_point(p: &PointText, field: &str) -> Result<Point> {
    Ok(Point::new(
        parse_field(&p[0], &format!("{field}[0]"))?,
        parse_field(&p[1], &format!("{field}[1]"))?,
    ))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

/// On-disk form of a covering instance.
///
/// Without `triangle`, each entry of `translates` is the right-angle vertex
/// of a translate of `T = conv{(0,0), (1,0), (0,1)}`. With
/// `triangle = [a, b, c]`, entries are translation vectors of that triangle;
/// they are mapped to the canonical frame by the linear map sending `b - a`
/// to `(1, 0)` and `c - a` to `(0, 1)`, and `l` is the window side in the
/// canonical frame.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub k: u32,
    pub l: String,
    pub translates: Vec<PointText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangle: Option<[PointText; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

/// The affine map taking the input triangle to `T`:
/// `p ↦ inverse · (p - origin)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub triangle: [Point; 3],
    pub inverse: [[Rational; 2]; 2],
}

impl Normalization {
    fn new(triangle: [Point; 3]) -> Result<Self> {
        let [a, b, c] = &triangle;
        let (m00, m10) = (&b.x - &a.x, &b.y - &a.y);
        let (m01, m11) = (&c.x - &a.x, &c.y - &a.y);
        let det = &m00 * &m11 - &m01 * &m10;
        if det == Rational::from_integer(0.into()) {
            bail!("field `triangle`: the three vertices are collinear");
        }
        let inverse = [[&m11 / &det, -(&m01 / &det)], [-(&m10 / &det), &m00 / &det]];
        Ok(Normalization { triangle, inverse })
    }

    /// Image of a translation vector (the linear part only).
    pub fn map_vector(&self, v: &Point) -> Point {
        let m = &self.inverse;
        Point::new(&m[0][0] * &v.x + &m[0][1] * &v.y, &m[1][0] * &v.x + &m[1][1] * &v.y)
    }
}

#[derive(Clone, Debug)]
pub struct LoadedInstance {
    pub instance: CoveringInstance,
    pub normalization: Option<Normalization>,
    pub metadata: Option<Metadata>,
}

pub fn parse_instance(text: &str) -> Result<LoadedInstance> {
    let file: InstanceFile = serde_json::from_str(text).context("malformed instance file")?;
    if file.schema_version != SCHEMA_VERSION {
        bail!(
            "field `schema_version`: unsupported version {} (expected {SCHEMA_VERSION})",
            file.schema_version
        );
    }
    let l = parse_field(&file.l, "l")?;
    let normalization = match &file.triangle {
        None => None,
        Some(t) => Some(Normalization::new([
            parse_point(&t[0], "triangle[0]")?,
            parse_point(&t[1], "triangle[1]")?,
            parse_point(&t[2], "triangle[2]")?,
        ])?),
    };
    let mut vertices = Vec::with_capacity(file.translates.len());
    for (i, p) in file.translates.iter().enumerate() {
        let v = parse_point(p, &format!("translates[{i}]"))?;
        vertices.push(match &normalization {
            Some(n) => n.map_vector(&v),
            None => v,
        });
    }
    let instance = CoveringInstance::new(file.k, l, vertices).context("invalid instance")?;
    Ok(LoadedInstance { instance, normalization, metadata: file.metadata })
}

pub fn read_instance(path: &Path) -> Result<LoadedInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("in {}", path.display()))
}

/// Canonical-frame instance file.
pub fn instance_file(inst: &CoveringInstance, metadata: Option<Metadata>) -> InstanceFile {
    InstanceFile {
        schema_version: SCHEMA_VERSION,
        k: inst.k(),
        l: format_rational(inst.l()),
        translates: inst.translates().iter().map(|t| point_text(&t.v)).collect(),
        triangle: None,
        metadata,
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Best known lattice for one multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StoredLattice {
    pub k: u32,
    /// Hermite basis `(a, 0)`, `(b, c)`.
    pub a: String,
    pub b: String,
    pub c: String,
    pub det: String,
    pub density: String,
    pub multiplicity: usize,
}

impl StoredLattice {
    pub fn from_report(r: &LatticeCoverReport) -> Self {
        let (a, b, c) = r.lattice.hermite();
        StoredLattice {
            k: r.k,
            a: format_rational(&a),
            b: format_rational(&b),
            c: format_rational(&c),
            det: format_rational(&r.det),
            density: format_rational(&r.density),
            multiplicity: r.multiplicity,
        }
    }

    pub fn lattice(&self) -> Result<Lattice> {
        let a = parse_field(&self.a, "a")?;
        let b = parse_field(&self.b, "b")?;
        let c = parse_field(&self.c, "c")?;
        Lattice::from_hermite(a, b, c).context("stored lattice is degenerate")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultsFile {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub lattices: Vec<StoredLattice>,
}

impl Default for ResultsFile {
    fn default() -> Self {
        ResultsFile { schema_version: SCHEMA_VERSION, lattices: Vec::new() }
    }
}

impl ResultsFile {
    pub fn get(&self, k: u32) -> Option<&StoredLattice> {
        self.lattices.iter().find(|s| s.k == k)
    }

    /// Stores `entry` unless a lattice with a determinant at least as large
    /// is already known for its `k`. Returns whether the file changed.
    pub fn offer(&mut self, entry: StoredLattice) -> Result<bool> {
        let det = parse_field(&entry.det, "det")?;
        if let Some(old) = self.lattices.iter_mut().find(|s| s.k == entry.k) {
            if parse_field(&old.det, "det")? >= det {
                return Ok(false);
            }
            *old = entry;
        } else {
            self.lattices.push(entry);
            self.lattices.sort_by_key(|s| s.k);
        }
        Ok(true)
    }
}

pub fn read_results(path: &Path) -> Result<ResultsFile> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let file: ResultsFile =
        serde_json::from_str(&text).with_context(|| format!("malformed results file {}", path.display()))?;
    if file.schema_version != SCHEMA_VERSION {
        bail!("unsupported results schema version {}", file.schema_version);
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tricover::rational::{int, rat};

    const FOUR: &str = r#"{
        "schema_version": 1,
        "k": 1,
        "l": "1",
        "translates": [["0", "0"], ["0", "1/2"], ["1/2", "0"], ["1/2", "1/2"]],
        "metadata": {"name": "four"}
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let loaded = parse_instance(FOUR).unwrap();
        assert_eq!(loaded.instance.len(), 4);
        assert_eq!(loaded.metadata.as_ref().unwrap().name.as_deref(), Some("four"));
        let text = to_json(&instance_file(&loaded.instance, loaded.metadata.clone()));
        let again = parse_instance(&text).unwrap();
        assert_eq!(again.instance, loaded.instance);
        assert_eq!(to_json(&instance_file(&again.instance, again.metadata)), text);
    }

    #[test]
    fn duplicates_are_rejected() {
        let text = FOUR.replace(r#"["1/2", "1/2"]"#, r#"["0", "2/4"]"#);
        let err = format!("{:#}", parse_instance(&text).unwrap_err());
        assert!(err.contains("duplicates"), "{err}");
    }

    #[test]
    fn bad_rationals_name_their_field() {
        let text = FOUR.replace(r#"["1/2", "0"]"#, r#"["0.5", "0"]"#);
        let err = format!("{:#}", parse_instance(&text).unwrap_err());
        assert!(err.contains("translates[2][0]"), "{err}");
        let err = format!("{:#}", parse_instance(&FOUR.replace(r#""l": "1""#, r#""l": "1/0""#)).unwrap_err());
        assert!(err.contains("`l`"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = format!("{:#}", parse_instance("{\n  \"k\": 1,\n  \"l\": }").unwrap_err());
        assert!(err.contains("line 3"), "{err}");
    }

    #[test]
    fn affine_header_maps_to_the_canonical_triangle() {
        // the triangle (0,0), (2,0), (0,2): translates scale by 1/2
        let text = r#"{
            "k": 1, "l": "1",
            "triangle": [["0", "0"], ["2", "0"], ["0", "2"]],
            "translates": [["0", "0"], ["1", "0"], ["0", "1"], ["1", "1"]]
        }"#;
        let loaded = parse_instance(text).unwrap();
        let vs: Vec<Point> = loaded.instance.translates().iter().map(|t| t.v.clone()).collect();
        assert_eq!(vs[3], Point::new(rat(1, 2), rat(1, 2)));
        assert!(loaded.normalization.is_some());

        // a sheared triangle
        let text = r#"{
            "k": 1, "l": "1",
            "triangle": [["1", "1"], ["2", "1"], ["2", "2"]],
            "translates": [["1", "1"]]
        }"#;
        let loaded = parse_instance(text).unwrap();
        assert_eq!(loaded.instance.translates()[0].v, Point::new(int(0), int(1)));
    }

    #[test]
    fn collinear_triangles_are_rejected() {
        let text = r#"{"k": 1, "l": "1", "triangle": [["0","0"],["1","1"],["2","2"]], "translates": [["0","0"]]}"#;
        assert!(parse_instance(text).is_err());
    }

    #[test]
    fn unknown_fields_and_versions_are_rejected() {
        assert!(parse_instance(&FOUR.replace("\"k\"", "\"kk\"")).is_err());
        assert!(parse_instance(&FOUR.replace("\"schema_version\": 1", "\"schema_version\": 9")).is_err());
    }

    #[test]
    fn results_keep_the_best_lattice() {
        let mut file = ResultsFile::default();
        let entry = |det: &str| StoredLattice {
            k: 1,
            a: "1".into(),
            b: "1/3".into(),
            c: det.into(),
            det: det.into(),
            density: "0".into(),
            multiplicity: 1,
        };
        assert!(file.offer(entry("1/4")).unwrap());
        assert!(!file.offer(entry("1/5")).unwrap());
        assert!(file.offer(entry("1/3")).unwrap());
        assert_eq!(file.get(1).unwrap().det, "1/3");
        let text = to_json(&file);
        assert_eq!(serde_json::from_str::<ResultsFile>(&text).unwrap(), file);
    }
}
