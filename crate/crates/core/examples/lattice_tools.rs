//! The integer linear algebra underneath: Hermite form, kernels, and
//! completing a family inside a lattice.

use gkm::linalg::{
    complete_inside_lattice, hermite_normal_form, int_vector, integer_kernel_basis, invariant_factors, join,
    IntegerMatrix,
};

fn main() {
    let m = IntegerMatrix::from_i64_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
    let (h, u) = hermite_normal_form(&m);
    println!("M =\n{m}\nH =\n{h}\nU =\n{u}");
    let factors: Vec<String> = invariant_factors(&m).iter().map(ToString::to_string).collect();
    println!("invariant factors: {}", factors.join(", "));

    let sum = IntegerMatrix::from_i64_rows(&[[1, 1, 1]]);
    for v in integer_kernel_basis(&sum) {
        println!("kernel of x+y+z: ({})", join(&v));
    }

    let lattice = vec![int_vector(&[1, 0]), int_vector(&[0, 1])];
    let done = complete_inside_lattice(&[int_vector(&[2, 0])], &lattice).unwrap();
    for v in &done.completion {
        println!("completion: ({})", join(v));
    }
    println!("index of (2,0) in its line: {}", done.index);
}
