//! SVG rendering of a decomposition. Output is a pure function of the input:
//! coordinates are printed with a fixed number of decimals and colors are
//! derived from cell indices.

use std::fmt::Write;

use tricover::decompose::{CellRegion, DecompositionResult};
use tricover::rational::to_f64;
use tricover::{CoveringInstance, Point, StairPolygon};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;

struct Frame {
    scale: f64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        MARGIN + x * self.scale
    }

    fn y(&self, y: f64) -> f64 {
        MARGIN + SIZE - y * self.scale
    }

    fn pt(&self, p: (f64, f64)) -> String {
        format!("{:.3},{:.3}", self.x(p.0), self.y(p.1))
    }
}

fn fp(p: &Point) -> (f64, f64) {
    (to_f64(&p.x), to_f64(&p.y))
}

fn fill(index: usize) -> String {
    // golden-angle hue steps keep neighbouring indices apart
    let hue = (index as f64 * 137.507_764) % 360.0;
    format!("hsl({hue:.1},70%,72%)")
}

/// Counter-clockwise outline starting at the anchor.
fn stair_outline(s: &StairPolygon) -> Vec<(f64, f64)> {
    let xs: Vec<f64> = s.x_breaks().iter().map(to_f64).collect();
    let ys: Vec<f64> = s.y_breaks().iter().map(to_f64).collect();
    let r = s.stair_count();
    let bottom = ys[r + 1];
    let mut pts = vec![(xs[0], bottom), (xs[r + 1], bottom)];
    for j in (0..=r).rev() {
        pts.push((xs[j + 1], ys[j]));
        pts.push((xs[j], ys[j]));
    }
    pts
}

/// The part of a convex or simple polygon with `x + y <= bound`.
fn clip_below_diagonal(poly: &[(f64, f64)], bound: f64) -> Vec<(f64, f64)> {
    let inside = |p: (f64, f64)| p.0 + p.1 <= bound;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        if inside(a) {
            out.push(a);
        }
        if inside(a) != inside(b) {
            let t = (bound - a.0 - a.1) / ((b.0 - a.0) + (b.1 - a.1));
            out.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

fn polygon(frame: &Frame, pts: &[(f64, f64)], attrs: &str) -> String {
    let list: Vec<String> = pts.iter().map(|&p| frame.pt(p)).collect();
    format!("<polygon points=\"{}\" {attrs}/>\n", list.join(" "))
}

fn line(frame: &Frame, a: (f64, f64), b: (f64, f64), attrs: &str) -> String {
    format!(
        "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" {attrs}/>\n",
        frame.x(a.0),
        frame.y(a.1),
        frame.x(b.0),
        frame.y(b.1)
    )
}

/// Renders the window, the translates (clipped to the window), and every
/// cell. Closed edges of a cell are solid, open edges dashed; anchors are
/// filled dots and inner corners hollow circles.
pub fn render(inst: &CoveringInstance, res: &DecompositionResult) -> String {
    let l = to_f64(inst.l());
    let frame = Frame { scale: SIZE / l };
    let full = SIZE + 2.0 * MARGIN;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{full:.0}\" height=\"{full:.0}\" \
         viewBox=\"0 0 {full:.0} {full:.0}\">"
    );
    let _ = writeln!(
        s,
        "<defs><clipPath id=\"window\"><rect x=\"{m:.3}\" y=\"{m:.3}\" width=\"{w:.3}\" height=\"{w:.3}\"/></clipPath></defs>",
        m = MARGIN,
        w = SIZE
    );
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    s.push_str("<g class=\"cells\" stroke=\"none\">\n");
    for cell in &res.cells {
        let outline = stair_outline(cell.region.staircase());
        let pts = match &cell.region {
            CellRegion::Stair(_) => outline,
            CellRegion::Clipped { sum_bound, .. } => clip_below_diagonal(&outline, to_f64(sum_bound)),
        };
        let attrs = format!("fill=\"{}\" data-index=\"{}\"", fill(cell.index), cell.index);
        s.push_str(&polygon(&frame, &pts, &attrs));
    }
    s.push_str("</g>\n");

    s.push_str("<g class=\"translates\" clip-path=\"url(#window)\" fill=\"none\" stroke=\"#999\" stroke-width=\"0.5\">\n");
    for t in inst.translates() {
        let (x, y) = fp(&t.v);
        s.push_str(&polygon(&frame, &[(x, y), (x + 1.0, y), (x, y + 1.0)], ""));
    }
    s.push_str("</g>\n");

    s.push_str("<g class=\"edges\" stroke=\"black\" stroke-width=\"1.2\">\n");
    let dashed = "stroke-dasharray=\"4 3\"";
    for cell in &res.cells {
        let st = cell.region.staircase();
        let (a, top) = (fp(&st.anchor()), to_f64(st.top()));
        let right = to_f64(st.right());
        match &cell.region {
            CellRegion::Stair(_) => {
                s.push_str(&line(&frame, a, (right, a.1), ""));
                s.push_str(&line(&frame, a, (a.0, top), ""));
                for seg in st.open_boundary() {
                    s.push_str(&line(&frame, fp(&seg.a), fp(&seg.b), dashed));
                }
            }
            CellRegion::Clipped { sum_bound, .. } => {
                // every edge of a clipped cell lies in the cell except where
                // it follows the staircase; draw the outline solid
                let pts = clip_below_diagonal(&stair_outline(st), to_f64(sum_bound));
                s.push_str(&polygon(&frame, &pts, "fill=\"none\""));
            }
        }
    }
    s.push_str("</g>\n");

    s.push_str("<g class=\"corners\" stroke=\"black\" stroke-width=\"1\">\n");
    for cell in &res.cells {
        let st = cell.region.staircase();
        let a = frame.pt(fp(&st.anchor()));
        let (ax, ay) = a.split_once(',').expect("formatted pair");
        let _ = writeln!(s, "<circle cx=\"{ax}\" cy=\"{ay}\" r=\"2.5\" fill=\"black\"/>");
        for c in st.inner_corners() {
            let p = frame.pt(fp(&c));
            let (cx, cy) = p.split_once(',').expect("formatted pair");
            let _ = writeln!(s, "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"2.5\" fill=\"white\"/>");
        }
    }
    s.push_str("</g>\n");

    let _ = writeln!(
        s,
        "<rect x=\"{m:.3}\" y=\"{m:.3}\" width=\"{w:.3}\" height=\"{w:.3}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>",
        m = MARGIN,
        w = SIZE
    );
    s.push_str("</svg>\n");
    s
}
