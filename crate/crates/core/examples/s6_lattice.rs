//! The two-vertex, three-edge graph of S^6: its connection, congruence
//! vectors, and the lattice of axial functions.

use gkm::axgroup::{axial_group_basis, canonical_elements, SolveMethod};
use gkm::congruence::permutation_matrix;
use gkm::families::gen_s6;
use gkm::linalg::join;

fn main() {
    let gkm = gen_s6();
    let g = gkm.graph();

    println!("weights");
    for d in 0..g.dart_count() {
        println!("  {:>4}: ({})", g.dart_id(d), join(gkm.axial().label(d)));
    }

    println!("congruence vectors");
    for d in 0..g.dart_count() {
        println!("  {:>4}: ({})", g.dart_id(d), join(gkm.invariant().vector(d)));
    }

    let e1 = g.dart("e1").unwrap();
    println!("permutation matrix of e1:\n{}", permutation_matrix(&gkm, e1));

    let basis = axial_group_basis(&gkm, SolveMethod::Propagate);
    println!("rank {}", basis.rank);
    for (i, f) in basis.elements.iter().enumerate() {
        println!("  f{}: p -> ({})  q -> ({})", i + 1, join(f.at(0)), join(f.at(1)));
    }

    // the elements read off the weights sit inside the lattice
    for (i, f) in canonical_elements(&gkm).iter().enumerate() {
        println!("  from weights, a{}: p -> ({})", i + 1, join(f.at(0)));
    }
}
