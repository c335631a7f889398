//! Renderer-agnostic dialogue-flow diagrams and their DOT/SVG/JSON emitters.
//!
//! Box opacity is the unigram share of the label; start/end arrow opacity is
//! the share of dialogues beginning/ending with the label; label-to-label
//! arrow opacity is the bigram count relative to the largest bigram count.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use super::{ClassificationDetail, FlowError, FlowStats, QrfaLabel};

/// A diagram node: the start circle, a QRFA box, or the end circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Node {
    Start,
    Label(QrfaLabel),
    End,
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Start => f.write_str("start"),
            Node::Label(l) => f.write_str(l.tag()),
            Node::End => f.write_str("end"),
        }
    }
}

/// Compact arrow name: `<Q` from start, `A>` into end, `QA` between labels.
fn arrow_key(from: Node, to: Node) -> String {
    match (from, to) {
        (Node::Start, Node::Label(l)) => format!("<{}", l.tag()),
        (Node::Label(l), Node::End) => format!("{}>", l.tag()),
        (Node::Label(a), Node::Label(b)) => format!("{}{}", a.tag(), b.tag()),
        (from, to) => format!("{from}->{to}"),
    }
}

/// Opacity percentages for every box and observed arrow.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramSpec {
    /// All four labels, including zero-opacity ones; sums to 100.
    pub boxes: BTreeMap<QrfaLabel, f64>,
    /// Only arrows with a nonzero count.
    pub arrows: BTreeMap<(Node, Node), f64>,
}

/// Derive the diagram opacities from flow statistics.
pub fn to_diagram(stats: &FlowStats) -> Result<DiagramSpec, FlowError> {
    let total = stats.unigram_total();
    if total == 0 || stats.dialogue_count == 0 {
        return Err(FlowError::NoAnalyzableTurns);
    }
    let mut boxes = BTreeMap::new();
    for label in QrfaLabel::ALL {
        boxes.insert(label, 100.0 * stats.unigram(label) as f64 / total as f64);
    }
    let d = stats.dialogue_count as f64;
    let max_pair = stats.max_pair();
    let mut arrows = BTreeMap::new();
    for label in QrfaLabel::ALL {
        let start = stats.start(label);
        if start > 0 {
            arrows.insert(
                (Node::Start, Node::Label(label)),
                (100.0 * start as f64 / d).min(100.0),
            );
        }
        let end = stats.end(label);
        if end > 0 {
            arrows.insert(
                (Node::Label(label), Node::End),
                (100.0 * end as f64 / d).min(100.0),
            );
        }
    }
    for from in QrfaLabel::ALL {
        for to in QrfaLabel::ALL {
            let count = stats.pair(from, to);
            if count > 0 {
                arrows.insert(
                    (Node::Label(from), Node::Label(to)),
                    100.0 * count as f64 / max_pair as f64,
                );
            }
        }
    }
    Ok(DiagramSpec { boxes, arrows })
}

fn alpha_hex(percent: f64) -> String {
    let clamped = percent.clamp(0.0, 100.0);
    format!("{:02X}", (255.0 * clamped / 100.0).round() as u8)
}

const BOX_COLOR: &str = "#1F77B4";
const ARROW_COLOR: &str = "#000000";

/// Render the diagram as Graphviz DOT. Output is byte-deterministic: nodes in
/// fixed order, arrows sorted lexicographically by endpoint names.
pub fn emit_dot(spec: &DiagramSpec) -> String {
    let mut out = String::new();
    out.push_str("digraph dialogue_flow {\n");
    out.push_str("    rankdir=LR;\n");
    out.push_str("    node [fontname=\"Helvetica\"];\n");
    out.push_str("    start [shape=circle];\n");
    out.push_str("    end [shape=circle];\n");
    for label in QrfaLabel::ALL {
        let opacity = spec.boxes.get(&label).copied().unwrap_or(0.0);
        let _ = writeln!(
            out,
            "    {} [shape=box, style=\"rounded,filled\", fillcolor=\"{}{}\"];",
            label.tag(),
            BOX_COLOR,
            alpha_hex(opacity)
        );
    }
    let mut edges: Vec<(String, String, f64)> = spec
        .arrows
        .iter()
        .map(|(&(from, to), &opacity)| (from.to_string(), to.to_string(), opacity))
        .collect();
    edges.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    for (from, to, opacity) in edges {
        let _ = writeln!(
            out,
            "    {from} -> {to} [color=\"{}{}\", label=\"{opacity:.1}\"];",
            ARROW_COLOR,
            alpha_hex(opacity)
        );
    }
    out.push_str("}\n");
    out
}

fn node_anchor(node: Node) -> (f64, f64) {
    match node {
        Node::Start => (60.0, 210.0),
        Node::Label(QrfaLabel::Q) => (215.0, 90.0),
        Node::Label(QrfaLabel::R) => (425.0, 90.0),
        Node::Label(QrfaLabel::F) => (215.0, 330.0),
        Node::Label(QrfaLabel::A) => (425.0, 330.0),
        Node::End => (580.0, 210.0),
    }
}

/// Render the diagram as a fixed-layout SVG; no external layout engine is
/// involved and the output is byte-deterministic.
pub fn emit_svg(spec: &DiagramSpec) -> String {
    let mut out = String::new();
    out.push_str(concat!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" ",
        "viewBox=\"0 0 640 420\" font-family=\"Helvetica, sans-serif\">\n",
        "  <defs>\n",
        "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" ",
        "markerWidth=\"7\" markerHeight=\"7\" orient=\"auto-start-reverse\">\n",
        "      <path d=\"M 0 0 L 10 5 L 0 10 z\"/>\n",
        "    </marker>\n",
        "  </defs>\n",
        "  <rect width=\"640\" height=\"420\" fill=\"#FFFFFF\"/>\n",
    ));
    // arrows first so boxes sit on top of the line ends
    for (&(from, to), &opacity) in &spec.arrows {
        let (x1, y1) = node_anchor(from);
        let (x2, y2) = node_anchor(to);
        let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
        let _ = writeln!(
            out,
            "  <line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" \
             stroke=\"{ARROW_COLOR}\" stroke-width=\"2\" stroke-opacity=\"{:.4}\" \
             marker-end=\"url(#arrow)\"/>",
            opacity / 100.0
        );
        let _ = writeln!(
            out,
            "  <text x=\"{mx:.1}\" y=\"{:.1}\" font-size=\"11\" fill=\"#444444\" \
             text-anchor=\"middle\">{} {opacity:.1}%</text>",
            my - 4.0,
            arrow_key(from, to)
        );
    }
    for (x, y, name) in [(60.0, 210.0, "start"), (580.0, 210.0, "end")] {
        let _ = writeln!(
            out,
            "  <circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"24\" fill=\"#FFFFFF\" stroke=\"#000000\"/>"
        );
        let _ = writeln!(
            out,
            "  <text x=\"{x:.1}\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"middle\">{name}</text>",
            y + 4.0
        );
    }
    for label in QrfaLabel::ALL {
        let opacity = spec.boxes.get(&label).copied().unwrap_or(0.0);
        let (cx, cy) = node_anchor(Node::Label(label));
        let (x, y) = (cx - 50.0, cy - 28.0);
        let _ = writeln!(
            out,
            "  <rect x=\"{x:.1}\" y=\"{y:.1}\" width=\"100\" height=\"56\" rx=\"10\" \
             fill=\"{BOX_COLOR}\" fill-opacity=\"{:.4}\" stroke=\"#000000\"/>",
            opacity / 100.0
        );
        let _ = writeln!(
            out,
            "  <text x=\"{cx:.1}\" y=\"{:.1}\" font-size=\"14\" text-anchor=\"middle\">{} {opacity:.1}%</text>",
            cy + 5.0,
            label.tag()
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Serialize stats, opacities, the class verdict, and the criterion values
/// into one JSON document.
pub fn stats_json(
    stats: &FlowStats,
    spec: &DiagramSpec,
    detail: &ClassificationDetail,
) -> serde_json::Value {
    let unigrams: serde_json::Map<String, serde_json::Value> = QrfaLabel::ALL
        .iter()
        .map(|l| (l.tag().to_string(), stats.unigram(*l).into()))
        .collect();
    let mut bigrams = serde_json::Map::new();
    for label in QrfaLabel::ALL {
        if stats.start(label) > 0 {
            bigrams.insert(format!("<{}", label.tag()), stats.start(label).into());
        }
        if stats.end(label) > 0 {
            bigrams.insert(format!("{}>", label.tag()), stats.end(label).into());
        }
    }
    for from in QrfaLabel::ALL {
        for to in QrfaLabel::ALL {
            let count = stats.pair(from, to);
            if count > 0 {
                bigrams.insert(format!("{}{}", from.tag(), to.tag()), count.into());
            }
        }
    }
    let boxes: serde_json::Map<String, serde_json::Value> = spec
        .boxes
        .iter()
        .map(|(l, pct)| (l.tag().to_string(), (*pct).into()))
        .collect();
    let arrows: serde_json::Map<String, serde_json::Value> = spec
        .arrows
        .iter()
        .map(|(&(from, to), pct)| (arrow_key(from, to), (*pct).into()))
        .collect();
    serde_json::json!({
        "d": stats.dialogue_count,
        "skipped_dialogues": stats.skipped,
        "unigrams": unigrams,
        "bigrams": bigrams,
        "opacities": {"boxes": boxes, "arrows": arrows},
        "class": detail.class,
        "criterion": {
            "qa": detail.qa,
            "rf": detail.rf,
            "relative_difference": detail.relative_difference,
            "epsilon": detail.epsilon,
        },
    })
}
