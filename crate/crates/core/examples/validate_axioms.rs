//! Building a graph by hand and reading the axiom report.

use gkm::axial::{validate_axial, AxialFunction, SpanMode};
use gkm::graph::{GraphBuilder, GraphError};
use gkm::linalg::int_vector;

fn main() {
    let g = GraphBuilder::new()
        .vertices(["p", "q", "r"])
        .edge("pq", "p", "q")
        .edge("qr", "q", "r")
        .edge("rp", "r", "p")
        .build()
        .expect("triangle");

    let weights = |w: [[i64; 2]; 3]| {
        AxialFunction::antisymmetric(&g, 2, |d| {
            let k = ["pq", "qr", "rp"].iter().position(|&s| s == g.dart_id(d)).unwrap();
            int_vector(&w[k])
        })
        .unwrap()
    };

    let good = weights([[1, 0], [-1, 1], [0, -1]]);
    println!("{}\n", validate_axial(&g, &good, None, SpanMode::Integer));

    let flat = weights([[1, 0], [1, 0], [1, 0]]);
    println!("{}\n", validate_axial(&g, &flat, None, SpanMode::Integer));

    let doubled = weights([[2, 0], [-2, 2], [0, -2]]);
    println!("integer span:\n{}", validate_axial(&g, &doubled, None, SpanMode::Integer));
    println!("rational span:\n{}\n", validate_axial(&g, &doubled, None, SpanMode::Rational));

    let looped = GraphBuilder::new().vertex("p").edge("l", "p", "p").build();
    assert!(matches!(looped, Err(GraphError::LoopEdge { .. })));
    println!("{}", looped.unwrap_err());
}
