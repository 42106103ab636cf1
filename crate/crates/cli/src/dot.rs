use std::fmt::Write;

use fmsched::petri::Marking;
use fmsched::PlaceTimedNet;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

/// The place-timed net as a DOT digraph: places as circles labelled with
/// their initial tokens and delay, transitions as bars.
pub fn net_dot(net: &PlaceTimedNet) -> String {
    let pn = net.net();
    let mut s = String::from("digraph net {\n  rankdir=LR;\n");
    for p in pn.place_ids() {
        let name = pn.place_name(p);
        let tokens = net.m0().get(p);
        let label = match net.delay(p) {
            0 => format!("{name}\\n{tokens}"),
            d => format!("{name}\\n{tokens} | d={d}"),
        };
        let _ = writeln!(
            s,
            "  {} [shape=circle, label={}];",
            quote(name),
            quote(&label)
        );
    }
    for t in pn.transition_ids() {
        let _ = writeln!(
            s,
            "  {} [shape=box, height=0.1, style=filled, fillcolor=black, fontcolor=white];",
            quote(pn.transition_name(t))
        );
    }
    for t in pn.transition_ids() {
        let tn = quote(pn.transition_name(t));
        for &(p, w) in pn.inputs(t) {
            let _ = write!(s, "  {} -> {tn}", quote(pn.place_name(p)));
            let _ = writeln!(
                s,
                "{};",
                if w > 1 {
                    format!(" [label={w}]")
                } else {
                    String::new()
                }
            );
        }
        for &(p, w) in pn.outputs(t) {
            let _ = write!(s, "  {tn} -> {}", quote(pn.place_name(p)));
            let _ = writeln!(
                s,
                "{};",
                if w > 1 {
                    format!(" [label={w}]")
                } else {
                    String::new()
                }
            );
        }
    }
    s.push_str("}\n");
    s
}

/// A marking graph as DOT; node `i` is labelled `Mi` and its marking.
pub fn graph_dot(name: &str, nodes: &[Marking], edges: &[(usize, String, usize)]) -> String {
    let mut s = format!("digraph {name} {{\n");
    for (i, m) in nodes.iter().enumerate() {
        let _ = writeln!(s, "  M{i} [label={}];", quote(&format!("M{i}\\n{m}")));
    }
    for (src, label, dst) in edges {
        let _ = writeln!(s, "  M{src} -> M{dst} [label={}];", quote(label));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use fmsched::{fixtures, parse_instance};

    #[test]
    fn net_dot_lists_every_node() {
        let net = PlaceTimedNet::build(&parse_instance(fixtures::EXAMPLE1).unwrap());
        let dot = net_dot(&net);
        assert_eq!(dot.matches("shape=circle").count(), 15);
        assert_eq!(dot.matches("shape=box").count(), 10);
        assert!(dot.contains("\"pS1\" -> \"t111\""));
        assert!(dot.contains("p111\\n0 | d=25"));
    }

    #[test]
    fn graph_dot_edges() {
        let nodes = vec![Marking::new(vec![1, 0]), Marking::new(vec![0, 1])];
        let dot = graph_dot("g", &nodes, &[(0, "t".into(), 1)]);
        assert!(dot.contains("M0 -> M1 [label=\"t\"];"));
        assert!(dot.contains("M1\\n[0,1]"));
    }
}
