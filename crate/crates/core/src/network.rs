//! Undirected weighted term graphs and their GraphML / DOT serializations.

use std::fmt::Write as _;

/// Integer-valued node attribute (degree or frequency) and a numeric edge
/// attribute (LLR or co-occurrence count).
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    pub name: String,
    pub node_attr: String,
    pub edge_attr: String,
    /// Whether the edge attribute holds integers.
    pub integer_edges: bool,
    /// Draw the first node at the center in SVG output.
    pub centered: bool,
    pub nodes: Vec<(String, u64)>,
    pub edges: Vec<(usize, usize, f64)>,
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Shortest round-trip representation, or an integer when requested.
pub(crate) fn fmt_value(x: f64, integer: bool) -> String {
    if integer {
        format!("{}", x.round() as i64)
    } else {
        format!("{x}")
    }
}

impl Network {
    pub fn to_graphml(&self) -> String {
        let edge_type = if self.integer_edges { "long" } else { "double" };
        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        s.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
        s.push_str("  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n");
        let _ = writeln!(
            s,
            "  <key id=\"{0}\" for=\"node\" attr.name=\"{0}\" attr.type=\"long\"/>",
            xml_escape(&self.node_attr)
        );
        let _ = writeln!(
            s,
            "  <key id=\"{0}\" for=\"edge\" attr.name=\"{0}\" attr.type=\"{1}\"/>",
            xml_escape(&self.edge_attr),
            edge_type
        );
        let _ = writeln!(s, "  <graph id=\"{}\" edgedefault=\"undirected\">", xml_escape(&self.name));
        for (i, (term, value)) in self.nodes.iter().enumerate() {
            let _ = writeln!(
                s,
                "    <node id=\"n{i}\"><data key=\"label\">{}</data><data key=\"{}\">{value}</data></node>",
                xml_escape(term),
                xml_escape(&self.node_attr)
            );
        }
        for (i, &(a, b, w)) in self.edges.iter().enumerate() {
            let _ = writeln!(
                s,
                "    <edge id=\"e{i}\" source=\"n{a}\" target=\"n{b}\"><data key=\"{}\">{}</data></edge>",
                xml_escape(&self.edge_attr),
                fmt_value(w, self.integer_edges)
            );
        }
        s.push_str("  </graph>\n</graphml>\n");
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph {} {{", dot_quote(&self.name));
        for (term, value) in &self.nodes {
            let _ = writeln!(s, "  {} [{}={value}];", dot_quote(term), self.node_attr);
        }
        for &(a, b, w) in &self.edges {
            let _ = writeln!(
                s,
                "  {} -- {} [{}={}];",
                dot_quote(&self.nodes[a].0),
                dot_quote(&self.nodes[b].0),
                self.edge_attr,
                fmt_value(w, self.integer_edges)
            );
        }
        s.push_str("}\n");
        s
    }

    /// Node degree recomputed from the edge list.
    pub fn degrees(&self) -> Vec<u64> {
        let mut d = vec![0; self.nodes.len()];
        for &(a, b, _) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Network {
        Network {
            name: "work".into(),
            node_attr: "degree".into(),
            edge_attr: "llr".into(),
            integer_edges: false,
            centered: true,
            nodes: vec![("work".into(), 2), ("from_home".into(), 1), ("a\"b<c".into(), 1)],
            edges: vec![(0, 1, 88.09), (0, 2, 1.5)],
        }
    }

    #[test]
    fn dot_output() {
        assert_eq!(
            sample().to_dot(),
            "graph \"work\" {\n  \"work\" [degree=2];\n  \"from_home\" [degree=1];\n  \"a\\\"b<c\" [degree=1];\n  \"work\" -- \"from_home\" [llr=88.09];\n  \"work\" -- \"a\\\"b<c\" [llr=1.5];\n}\n"
        );
    }

    #[test]
    fn graphml_output_is_escaped() {
        let g = sample().to_graphml();
        assert!(g.contains("<data key=\"label\">a&quot;b&lt;c</data>"));
        assert!(g.contains("<edge id=\"e0\" source=\"n0\" target=\"n1\"><data key=\"llr\">88.09</data></edge>"));
        assert!(g.contains("attr.name=\"degree\" attr.type=\"long\""));
        assert_eq!(g.matches("<node ").count(), 3);
        assert_eq!(sample().degrees(), [2, 1, 1]);
    }
}
