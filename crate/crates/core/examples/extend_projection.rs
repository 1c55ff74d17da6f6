//! Project the K4 graph of CP^3 down to a 2-torus, then rebuild a maximal
//! extension from the group of axial functions and check it.

use gkm::axgroup::{axial_group_basis, SolveMethod};
use gkm::extension::{extend_axial, project_axial, verify_extension, ExtensionError};
use gkm::families::gen_projective;
use gkm::linalg::{join, IntegerMatrix};

fn main() {
    let cp3 = gen_projective(3);

    let drop = IntegerMatrix::from_i64_rows(&[[1, 0, 0], [0, 1, 0]]);
    if let Err(ExtensionError::AxiomViolation(report)) = project_axial(&cp3, &drop) {
        println!("forgetting a3 outright fails:\n{report}\n");
    }

    let pi = IntegerMatrix::from_i64_rows(&[[1, 0, 1], [0, 1, 1]]);
    let small = project_axial(&cp3, &pi).expect("generic projection");
    let rank = axial_group_basis(&small, SolveMethod::Propagate).rank;
    println!("projected to ({}, {})-type; group rank {rank}", small.valence(), small.torus_rank());

    let ext = extend_axial(&small, rank).expect("rank is attainable");
    let g = ext.gkm.graph();
    for d in g.edge_representatives() {
        println!(
            "  {:>4}: ({}) -> ({})",
            g.dart_id(d),
            join(ext.gkm.axial().label(d)),
            join(small.axial().label(d))
        );
    }
    println!("projection:\n{}", ext.projection);

    let check = verify_extension(&small, &ext.gkm).unwrap();
    println!("is an extension: {}", check.is_extension);
    println!("congruence vectors unchanged: {}", ext.gkm.invariant() == small.invariant());

    match extend_axial(&small, rank + 1) {
        Err(e) => println!("target {}: {e}", rank + 1),
        Ok(_) => unreachable!(),
    }
}
