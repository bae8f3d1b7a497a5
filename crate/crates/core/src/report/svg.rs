use std::fmt::Write;

use crate::plcov::{BranchReport, PLCovering};
use crate::rat::Rat;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 520.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 600.0;
const PLOT_TOP: f64 = 30.0;
const PLOT_BOTTOM: f64 = 330.0;
const BAR_Y: f64 = 370.0;
const STEP_TOP: f64 = 410.0;
const STEP_BOTTOM: f64 = 500.0;

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn new(cov: &PLCovering) -> Frame {
        let (a, b) = cov.base();
        let ys: Vec<f64> = cov
            .segments()
            .iter()
            .flat_map(|s| [s.start().y.to_f64(), s.end().y.to_f64()])
            .collect();
        let lo = ys.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (lo, hi) = if !lo.is_finite() {
            (-1.0, 1.0)
        } else if hi - lo < 1e-12 {
            (lo - 1.0, hi + 1.0)
        } else {
            let pad = (hi - lo) * 0.1;
            (lo - pad, hi + pad)
        };
        Frame {
            x0: a.to_f64(),
            x1: b.to_f64(),
            y0: lo,
            y1: hi,
        }
    }

    fn x(&self, x: &Rat) -> f64 {
        LEFT + (x.to_f64() - self.x0) / (self.x1 - self.x0) * (RIGHT - LEFT)
    }

    fn y(&self, y: &Rat) -> f64 {
        PLOT_BOTTOM - (y.to_f64() - self.y0) / (self.y1 - self.y0) * (PLOT_BOTTOM - PLOT_TOP)
    }
}

/// The covering, its branching locus, the base interval with the
/// ramification set, and the fiber-cardinality step function.
pub fn render_svg(cov: &PLCovering, report: &BranchReport) -> String {
    let fr = Frame::new(cov);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(WIDTH),
        h = num(HEIGHT)
    );
    s.push_str("<g class=\"segments\" stroke=\"black\" stroke-width=\"2\">\n");
    for seg in cov.segments() {
        let (p, q) = (seg.start(), seg.end());
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(fr.x(&p.x)),
            num(fr.y(&p.y)),
            num(fr.x(&q.x)),
            num(fr.y(&q.y))
        );
    }
    s.push_str("</g>\n<g class=\"branching\" fill=\"red\">\n");
    for p in &report.branching {
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="5"/>"#,
            num(fr.x(&p.x)),
            num(fr.y(&p.y))
        );
    }
    let (a, b) = cov.base();
    let _ = writeln!(
        s,
        "</g>\n<g class=\"base\" stroke=\"black\">\n<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke-width=\"4\"/>",
        num(fr.x(a)),
        num(BAR_Y),
        num(fr.x(b)),
        num(BAR_Y)
    );
    for r in &report.ramification {
        let _ = writeln!(
            s,
            r#"<line class="ramification" x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="red" stroke-width="2"/>"#,
            num(BAR_Y - 8.0),
            num(BAR_Y + 8.0),
            x = num(fr.x(r))
        );
    }
    s.push_str("</g>\n<g class=\"fiber-count\" stroke=\"blue\" fill=\"blue\">\n");
    let top = report.max_fiber().max(1) as f64;
    let level = |c: usize| STEP_BOTTOM - c as f64 / top * (STEP_BOTTOM - STEP_TOP);
    for piece in &report.d_profile {
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke-width="2"/>"#,
            num(fr.x(&piece.lo)),
            num(fr.x(&piece.hi)),
            y = num(level(piece.count))
        );
    }
    for (x, c) in &report.critical_fibers {
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="3"/>"#,
            num(fr.x(x)),
            num(level(*c))
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}

/// The step function as CSV rows `lo,hi,count`; critical values appear as
/// degenerate rows with `lo = hi`.
pub fn fiber_csv(report: &BranchReport) -> String {
    let mut rows: Vec<(Rat, Rat, usize)> = report
        .d_profile
        .iter()
        .map(|p| (p.lo.clone(), p.hi.clone(), p.count))
        .chain(
            report
                .critical_fibers
                .iter()
                .map(|(x, c)| (x.clone(), x.clone(), *c)),
        )
        .collect();
    rows.sort();
    let mut s = String::from("lo,hi,count\n");
    for (lo, hi, c) in rows {
        let _ = writeln!(s, "{lo},{hi},{c}");
    }
    s
}
