//! Deployment diagrams as SVG 1.1: the barrier axis on top and one lane per
//! sensor with its origin, movement arrow and coverage interval.

use std::fmt::Write;

use crate::model::{ProblemInstance, Solution};

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 60.0;
const AXIS_Y: f64 = 30.0;
const FIRST_LANE: f64 = 64.0;
const LANE: f64 = 28.0;

fn px(v: f64) -> f64 {
    MARGIN + v * (WIDTH - 2.0 * MARGIN)
}

/// Renders `sol` over `inst`. Powered-down sensors (and every sensor of an
/// unachievable solution) are drawn hollow without a coverage interval.
pub fn render_svg(inst: &ProblemInstance<f64>, sol: &Solution<f64>) -> String {
    let n = inst.len();
    let height = FIRST_LANE + LANE * n as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    );
    out.push_str(concat!(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto">"#,
        r##"<path d="M0,0 L10,5 L0,10 z" fill="#333"/></marker></defs>"##,
        "\n"
    ));
    let _ = writeln!(
        out,
        r##"<line class="axis" x1="{:.3}" y1="{AXIS_Y}" x2="{:.3}" y2="{AXIS_Y}" stroke="#000" stroke-width="2"/>"##,
        px(0.0),
        px(1.0)
    );
    for (v, label) in [(0.0, "0"), (1.0, "1")] {
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">{label}</text>"#,
            px(v),
            AXIS_Y - 8.0
        );
    }
    for (i, s) in inst.sensors().iter().enumerate() {
        let lane = FIRST_LANE + LANE * i as f64;
        let (y, r) = (sol.y.get(i).copied().unwrap_or(s.x), sol.r.get(i).copied().unwrap_or(0.0));
        let active = sol.achievable && r > 0.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="end" font-family="sans-serif" font-size="11">s{}</text>"#,
            MARGIN - 12.0,
            lane + 4.0,
            i + 1
        );
        if active {
            let _ = writeln!(
                out,
                r##"<rect class="coverage" x="{:.3}" y="{:.3}" width="{:.3}" height="12" fill="#4a90d9" fill-opacity="0.35"/>"##,
                px(y - r),
                lane - 6.0,
                px(y + r) - px(y - r)
            );
        }
        if (px(y) - px(s.x)).abs() > 1e-3 {
            let _ = writeln!(
                out,
                r##"<line class="move" x1="{:.3}" y1="{lane:.3}" x2="{:.3}" y2="{lane:.3}" stroke="#333" marker-end="url(#arrow)"/>"##,
                px(s.x),
                px(y)
            );
        }
        let _ = writeln!(
            out,
            r##"<circle class="origin" cx="{:.3}" cy="{lane:.3}" r="2.5" fill="#999"/>"##,
            px(s.x)
        );
        let fill = if active { "#000" } else { "none" };
        let _ = writeln!(
            out,
            r##"<circle class="sensor" cx="{:.3}" cy="{lane:.3}" r="4" fill="{fill}" stroke="#000"/>"##,
            px(y)
        );
    }
    out.push_str("</svg>\n");
    out
}
