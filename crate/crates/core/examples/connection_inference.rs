//! Recovering the connection from the weights, and what happens when the
//! weights at a vertex are not 3-independent.

use gkm::axial::{infer_connection, AxialFunction, ConnectionError, Gkm};
use gkm::graph::GraphBuilder;
use gkm::linalg::int_vector;

fn complete_graph(positions: &[[i64; 3]]) -> (gkm::OrientedGraph, AxialFunction) {
    let k = positions.len();
    let mut b = GraphBuilder::new().vertices((0..k).map(|v| v.to_string()));
    for i in 0..k {
        for j in i + 1..k {
            b = b.edge(format!("{i}-{j}"), i.to_string(), j.to_string());
        }
    }
    let g = b.build().expect("complete graph");
    let alpha = AxialFunction::antisymmetric(&g, 3, |d| {
        let (s, t) = (g.source(d), g.target(d));
        int_vector(&[
            positions[t][0] - positions[s][0],
            positions[t][1] - positions[s][1],
            positions[t][2] - positions[s][2],
        ])
    })
    .expect("three coordinates");
    (g, alpha)
}

fn main() {
    // vertices of a simplex: weights at each vertex are independent
    let (g, alpha) = complete_graph(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    let conn = infer_connection(&g, &alpha).expect("unique connection");
    for d in 0..g.dart_count() {
        let pairs: Vec<String> = conn
            .pairs(d)
            .iter()
            .map(|&(a, b)| format!("{}->{}", g.dart_id(a), g.dart_id(b)))
            .collect();
        println!("{:>5}: {}", g.dart_id(d), pairs.join(" "));
    }
    let gkm = Gkm::new(g, alpha, Some(conn)).expect("valid");
    println!("{}", gkm.validate());

    // vertices in a plane: several partners fit
    let (g, alpha) = complete_graph(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]);
    match infer_connection(&g, &alpha) {
        Err(e @ ConnectionError::AmbiguousConnection { .. }) => println!("flat square: {e}"),
        Err(e) => println!("flat square: {e}"),
        Ok(_) => println!("flat square: unexpectedly unique"),
    }
}
