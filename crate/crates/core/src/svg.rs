//! Plain SVG emitters: line plot, horizontal bar chart and a circular
//! network layout. No styling beyond what is needed to read the data.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::network::Network;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 50.0;

/// Node radius in pixels at the largest node value; radius is proportional
/// to the value.
pub const NODE_RADIUS_MAX: f64 = 24.0;
/// Edge stroke width in pixels at the largest edge value; width is
/// proportional to the value.
pub const EDGE_WIDTH_MAX: f64 = 8.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn header(s: &mut String, w: f64, h: f64) {
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(s, "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>");
}

/// Line plot of `(x, y)` points with labelled axes and a marker at each point.
pub fn line_plot(points: &[(f64, f64)], title: &str, x_label: &str, y_label: &str) -> String {
    let mut s = String::new();
    header(&mut s, WIDTH, HEIGHT);
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{}</text>",
        WIDTH / 2.0,
        escape(title)
    );
    if !points.is_empty() {
        let (xmin, xmax) = bounds(points.iter().map(|p| p.0));
        let (ymin, ymax) = bounds(points.iter().map(|p| p.1));
        let sx = |x: f64| MARGIN + (x - xmin) / (xmax - xmin) * (WIDTH - 2.0 * MARGIN);
        let sy = |y: f64| HEIGHT - MARGIN - (y - ymin) / (ymax - ymin) * (HEIGHT - 2.0 * MARGIN);
        let _ = writeln!(
            s,
            "<polyline fill=\"none\" stroke=\"black\" points=\"{}\"/>",
            points
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect::<Vec<_>>()
                .join(" ")
        );
        for &(x, y) in points {
            let _ = writeln!(s, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"black\"/>", sx(x), sy(y));
            let _ = writeln!(
                s,
                "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"11\">{}</text>",
                sx(x),
                HEIGHT - MARGIN + 16.0,
                x
            );
        }
        let _ = writeln!(
            s,
            "<text x=\"4\" y=\"{:.2}\" font-size=\"11\">{ymax:.1}</text>\n<text x=\"4\" y=\"{:.2}\" font-size=\"11\">{ymin:.1}</text>",
            MARGIN,
            HEIGHT - MARGIN
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"13\">{}</text>",
        WIDTH / 2.0,
        HEIGHT - 10.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        "<text x=\"14\" y=\"{}\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 14 {})\">{}</text>",
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(y_label)
    );
    s.push_str("</svg>\n");
    s
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

/// Horizontal bars, one per `(label, value)`, in the given order.
pub fn bar_chart(items: &[(String, f64)], title: &str) -> String {
    let row_h = 18.0;
    let height = MARGIN + row_h * items.len() as f64 + 20.0;
    let label_w = 140.0;
    let max = items.iter().map(|i| i.1).fold(0.0, f64::max);
    let mut s = String::new();
    header(&mut s, WIDTH, height);
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{}</text>",
        WIDTH / 2.0,
        escape(title)
    );
    for (i, (label, v)) in items.iter().enumerate() {
        let y = MARGIN + row_h * i as f64;
        let w = if max > 0.0 { v / max * (WIDTH - label_w - 80.0) } else { 0.0 };
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-size=\"12\">{}</text>",
            label_w - 6.0,
            y + 13.0,
            escape(label)
        );
        let _ = writeln!(
            s,
            "<rect x=\"{label_w}\" y=\"{y:.2}\" width=\"{w:.2}\" height=\"{:.2}\" fill=\"steelblue\"/>",
            row_h - 4.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\">{v}</text>",
            label_w + w + 4.0,
            y + 13.0
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Deterministic circular layout. Node radius ∝ node value
/// ([`NODE_RADIUS_MAX`] at the maximum); edge width ∝ edge value
/// ([`EDGE_WIDTH_MAX`] at the maximum) with opacity 0.2 + 0.8·value/max.
pub fn network(net: &Network) -> String {
    let size = 640.0;
    let c = size / 2.0;
    let ring = size / 2.0 - 70.0;
    let n = net.nodes.len();
    let start = usize::from(net.centered && n > 0);
    let on_ring = n - start;
    let pos: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            if i < start {
                (c, c)
            } else {
                let a = 2.0 * PI * (i - start) as f64 / on_ring.max(1) as f64 - PI / 2.0;
                (c + ring * a.cos(), c + ring * a.sin())
            }
        })
        .collect();
    let node_max = net.nodes.iter().map(|x| x.1).max().unwrap_or(0).max(1) as f64;
    let edge_max = net.edges.iter().map(|e| e.2).fold(0.0, f64::max);

    let mut s = String::new();
    header(&mut s, size, size);
    for &(a, b, w) in &net.edges {
        let frac = if edge_max > 0.0 { w / edge_max } else { 0.0 };
        let _ = writeln!(
            s,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"steelblue\" stroke-width=\"{:.3}\" stroke-opacity=\"{:.3}\"/>",
            pos[a].0,
            pos[a].1,
            pos[b].0,
            pos[b].1,
            EDGE_WIDTH_MAX * frac,
            0.2 + 0.8 * frac
        );
    }
    for (i, (term, v)) in net.nodes.iter().enumerate() {
        let r = NODE_RADIUS_MAX * *v as f64 / node_max;
        let _ = writeln!(
            s,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{r:.3}\" fill=\"orange\" stroke=\"black\"/>",
            pos[i].0, pos[i].1
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"12\">{}</text>",
            pos[i].0,
            pos[i].1 - r - 4.0,
            escape(term)
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn network_scales_linearly() {
        let net = Network {
            name: "g".into(),
            node_attr: "degree".into(),
            edge_attr: "llr".into(),
            integer_edges: false,
            centered: true,
            nodes: vec![("a".into(), 2), ("b".into(), 1), ("c".into(), 1)],
            edges: vec![(0, 1, 10.0), (0, 2, 5.0)],
        };
        let svg = network(&net);
        assert!(svg.contains("r=\"24.000\""));
        assert!(svg.contains("r=\"12.000\""));
        assert!(svg.contains("stroke-width=\"8.000\""));
        assert!(svg.contains("stroke-width=\"4.000\""));
        assert!(svg.contains("<circle cx=\"320.00\" cy=\"320.00\""));
    }

    #[test]
    fn plots_are_well_formed() {
        let p = line_plot(&[(2.0, 10.0), (3.0, 8.0), (4.0, 9.0)], "BIC", "k", "BIC");
        assert!(p.starts_with("<svg") && p.ends_with("</svg>\n"));
        assert_eq!(p.matches("<circle").count(), 3);
        let b = bar_chart(&[("work".into(), 914.0), ("a<b".into(), 1.0)], "top");
        assert!(b.contains("a&lt;b"));
        // single point must not divide by zero
        assert!(!line_plot(&[(1.0, 1.0)], "", "", "").contains("NaN"));
    }
}
