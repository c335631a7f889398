//! Scatter-plot artifacts for dataset embeddings: a fixed-layout SVG and a
//! CSV data table over a chosen pair of delta dimensions.

use std::fmt::Write as _;

use super::{AsymmetryDim, DatasetEmbedding};

/// The two renderings produced by [`emit_scatter`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScatterArtifact {
    pub svg: String,
    pub csv: String,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
/// Deltas live in [-1, 1]; a little headroom keeps edge points visible.
const DOMAIN: f64 = 1.1;

fn project_x(value: f64) -> f64 {
    MARGIN + (value + DOMAIN) / (2.0 * DOMAIN) * (WIDTH - 2.0 * MARGIN)
}

fn project_y(value: f64) -> f64 {
    // SVG y grows downward
    HEIGHT - MARGIN - (value + DOMAIN) / (2.0 * DOMAIN) * (HEIGHT - 2.0 * MARGIN)
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Plot embeddings over the `(x, y)` dimension pair. The SVG shows labeled
/// points and the origin axes; the CSV lists one `name,x,y` row per
/// embedding in input order. Both outputs are byte-deterministic.
pub fn emit_scatter(
    embeddings: &[DatasetEmbedding],
    x: AsymmetryDim,
    y: AsymmetryDim,
) -> ScatterArtifact {
    let mut csv = format!("name,{},{}\n", x.name(), y.name());
    for e in embeddings {
        let _ = writeln!(
            csv,
            "{},{:.6},{:.6}",
            csv_field(&e.name),
            e.component(x),
            e.component(y)
        );
    }

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"Helvetica, sans-serif\">"
    );
    svg.push_str("  <rect width=\"640\" height=\"480\" fill=\"#FFFFFF\"/>\n");
    // origin axes
    let (ox, oy) = (project_x(0.0), project_y(0.0));
    let _ = writeln!(
        svg,
        "  <line x1=\"{:.1}\" y1=\"{oy:.1}\" x2=\"{:.1}\" y2=\"{oy:.1}\" stroke=\"#888888\"/>",
        MARGIN,
        WIDTH - MARGIN
    );
    let _ = writeln!(
        svg,
        "  <line x1=\"{ox:.1}\" y1=\"{:.1}\" x2=\"{ox:.1}\" y2=\"{:.1}\" stroke=\"#888888\"/>",
        MARGIN,
        HEIGHT - MARGIN
    );
    // ticks
    for tick in [-1.0f64, -0.5, 0.5, 1.0] {
        let tx = project_x(tick);
        let ty = project_y(tick);
        let _ = writeln!(
            svg,
            "  <line x1=\"{tx:.1}\" y1=\"{:.1}\" x2=\"{tx:.1}\" y2=\"{:.1}\" stroke=\"#888888\"/>",
            oy - 4.0,
            oy + 4.0
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{tx:.1}\" y=\"{:.1}\" font-size=\"10\" text-anchor=\"middle\" \
             fill=\"#555555\">{tick}</text>",
            oy + 16.0
        );
        let _ = writeln!(
            svg,
            "  <line x1=\"{:.1}\" y1=\"{ty:.1}\" x2=\"{:.1}\" y2=\"{ty:.1}\" stroke=\"#888888\"/>",
            ox - 4.0,
            ox + 4.0
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" text-anchor=\"end\" \
             fill=\"#555555\">{tick}</text>",
            ox - 7.0,
            ty + 3.0
        );
    }
    // axis labels
    let _ = writeln!(
        svg,
        "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
        WIDTH / 2.0,
        HEIGHT - 18.0,
        x.axis_label()
    );
    let _ = writeln!(
        svg,
        "  <text x=\"18\" y=\"{:.1}\" font-size=\"13\" text-anchor=\"middle\" \
         transform=\"rotate(-90 18 {:.1})\">{}</text>",
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        y.axis_label()
    );
    for e in embeddings {
        let px = project_x(e.component(x));
        let py = project_y(e.component(y));
        let _ = writeln!(
            svg,
            "  <circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"4\" fill=\"#D62728\"/>"
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\">{}</text>",
            px + 6.0,
            py - 5.0,
            e.name
        );
    }
    svg.push_str("</svg>\n");
    ScatterArtifact { svg, csv }
}
