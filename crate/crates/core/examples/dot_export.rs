//! Graphviz text for the octahedron J(4,2), with weights or congruence
//! vectors on the edges. Pipe into `dot -Tsvg`.

use gkm::dot::{emit_dot, Annotate};
use gkm::families::{gen_grassmannian, gen_s6};

fn main() {
    let mode = match std::env::args().nth(1).as_deref() {
        Some("congruence") => Annotate::Congruence,
        Some("none") => Annotate::None,
        _ => Annotate::Weights,
    };
    print!("{}", emit_dot(&gen_grassmannian(2), mode));
    print!("{}", emit_dot(&gen_s6(), Annotate::Congruence));
}
