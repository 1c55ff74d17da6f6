//! Graphviz export.

use std::fmt::Write;

use crate::axial::Gkm;
use crate::linalg::IntVector;

/// What to print on each edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Annotate {
    #[default]
    None,
    /// The weight of the forward dart.
    Weights,
    /// The congruence vectors of both darts.
    Congruence,
}

fn tuple(v: &IntVector) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per vertex and one undirected edge per pair of darts, in id order.
pub fn emit_dot(gkm: &Gkm, annotate: Annotate) -> String {
    let g = gkm.graph();
    let mut out = String::from("graph gkm {\n");
    for v in g.vertex_ids() {
        let _ = writeln!(out, "  {};", quote(v));
    }
    let mut reps: Vec<usize> = g.edge_representatives().collect();
    reps.sort_by(|&a, &b| g.dart_id(a).cmp(g.dart_id(b)));
    for d in reps {
        let r = g.reverse(d);
        let label = match annotate {
            Annotate::None => None,
            Annotate::Weights => Some(tuple(&gkm.axial().label(d).to_vec())),
            Annotate::Congruence => Some(format!(
                "{}: {}\\n{}: {}",
                g.dart_id(d),
                tuple(&gkm.invariant().vector(d).to_vec()),
                g.dart_id(r),
                tuple(&gkm.invariant().vector(r).to_vec())
            )),
        };
        let _ = write!(out, "  {} -- {}", quote(g.vertex_id(g.source(d))), quote(g.vertex_id(g.target(d))));
        match label {
            Some(l) => {
                let _ = writeln!(out, " [label=\"{l}\"];");
            }
            None => out.push_str(";\n"),
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn octahedron_counts() {
        let dot = emit_dot(&families::gen_grassmannian(2), Annotate::None);
        assert_eq!(dot.matches(" -- ").count(), 12);
        assert_eq!(dot.lines().filter(|l| l.ends_with(";") && !l.contains(" -- ")).count(), 6);
        assert!(!dot.contains("label"));
    }

    #[test]
    fn s6_congruence_labels() {
        let dot = emit_dot(&families::gen_s6(), Annotate::Congruence);
        assert!(dot.contains("e1: (-2,1,1)"), "{dot}");
        assert_eq!(dot.matches(" -- ").count(), 3);
    }

    #[test]
    fn weights_labels() {
        let dot = emit_dot(&families::gen_s6(), Annotate::Weights);
        assert!(dot.contains("[label=\"(-1,-1)\"]"), "{dot}");
    }
}
