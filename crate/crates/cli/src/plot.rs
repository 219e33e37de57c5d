//! Static SVG line plot of a toy-model sweep: `I(p)` solid, `I~(p)` dashed.

use std::fmt::Write as _;

use qudit_entropy::toymodel::SweepRecord;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 55.0;
const TICKS: usize = 5;

struct Frame {
    x_min: f64,
    x_max: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, p: f64) -> f64 {
        LEFT + (p - self.x_min) / (self.x_max - self.x_min) * (WIDTH - LEFT - RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        HEIGHT - BOTTOM - v / self.y_max * (HEIGHT - TOP - BOTTOM)
    }
}

fn polyline(frame: &Frame, points: &[(f64, f64)], style: &str) -> String {
    let coords: Vec<String> =
        points.iter().map(|&(p, v)| format!("{:.2},{:.2}", frame.x(p), frame.y(v))).collect();
    format!("  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"{style} points=\"{}\"/>\n", coords.join(" "))
}

/// Renders the valid records of a sweep. Output depends only on the records.
pub fn sweep_svg(records: &[SweepRecord]) -> String {
    let valid: Vec<&SweepRecord> = records.iter().filter(|r| r.valid).collect();
    let solid: Vec<(f64, f64)> = valid.iter().filter_map(|r| Some((r.p, r.i?))).collect();
    let dashed: Vec<(f64, f64)> = valid.iter().filter_map(|r| Some((r.p, r.i_tilde?))).collect();

    let x_min = records.first().map_or(0.0, |r| r.p);
    let x_max = records.last().map_or(1.0, |r| r.p).max(x_min + f64::EPSILON);
    let peak = solid.iter().chain(&dashed).map(|&(_, v)| v).fold(0.0, f64::max);
    let y_max = if peak > 0.0 { peak * 1.05 } else { 1.0 };
    let frame = Frame { x_min, x_max, y_max };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(svg, "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
    let (x0, y0) = (frame.x(x_min), frame.y(0.0));
    let (x1, y1) = (frame.x(x_max), frame.y(y_max));
    let _ = writeln!(
        svg,
        "  <path d=\"M{x0:.2},{y1:.2} L{x0:.2},{y0:.2} L{x1:.2},{y0:.2}\" fill=\"none\" stroke=\"black\"/>"
    );
    for k in 0..=TICKS {
        let p = x_min + (x_max - x_min) * k as f64 / TICKS as f64;
        let x = frame.x(p);
        let _ = writeln!(svg, "  <line x1=\"{x:.2}\" y1=\"{y0:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"black\"/>", y0 + 5.0);
        let _ = writeln!(
            svg,
            "  <text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"middle\">{p:.4}</text>",
            y0 + 18.0
        );
        let v = y_max * k as f64 / TICKS as f64;
        let y = frame.y(v);
        let _ = writeln!(svg, "  <line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{x0:.2}\" y2=\"{y:.2}\" stroke=\"black\"/>", x0 - 5.0);
        let _ = writeln!(
            svg,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"end\">{v:.3}</text>",
            x0 - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        svg,
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\">p</text>",
        (LEFT + WIDTH - RIGHT) / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        svg,
        "  <text x=\"18\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">nats</text>",
        (TOP + HEIGHT - BOTTOM) / 2.0,
        (TOP + HEIGHT - BOTTOM) / 2.0
    );
    svg.push_str(&polyline(&frame, &solid, ""));
    svg.push_str(&polyline(&frame, &dashed, " stroke-dasharray=\"6,4\""));
    let lx = LEFT + 15.0;
    let _ = writeln!(svg, "  <line x1=\"{lx:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1.5\"/>", TOP + 5.0, lx + 30.0, TOP + 5.0);
    let _ = writeln!(svg, "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">I(p)</text>", lx + 36.0, TOP + 9.0);
    let _ = writeln!(
        svg,
        "  <line x1=\"{lx:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>",
        TOP + 22.0,
        lx + 30.0,
        TOP + 22.0
    );
    let _ = writeln!(svg, "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">Ĩ(p)</text>", lx + 36.0, TOP + 26.0);
    svg.push_str("</svg>\n");
    svg
}
