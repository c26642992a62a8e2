//! Graphviz export of Hasse diagrams.
//!
//! One node per element, one arrow per cover, drawn bottom-up. Output is a
//! pure function of the inputs, so identical posets give identical bytes.

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Render a Hasse diagram in DOT. `labels` names the elements, `covers`
/// lists `(upper, lower)` pairs; arrows point from the lower element to the
/// upper one.
pub fn hasse_dot(name: &str, labels: &[String], covers: &[(usize, usize)]) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{}\" {{\n", escape(name)));
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=box, fontname=\"monospace\"];\n");
    for (i, label) in labels.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", escape(label)));
    }
    for &(upper, lower) in covers {
        out.push_str(&format!("  n{lower} -> n{upper};\n"));
    }
    out.push_str("}\n");
    out
}
