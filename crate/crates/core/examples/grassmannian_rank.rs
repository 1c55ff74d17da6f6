//! Rank of the group of axial functions on Johnson graphs J(n+2, 2).
//!
//! The torus rank is n + 1 and the rank of the group is also n + 1, so the
//! Grassmannian weights admit no proper extension.

use std::time::Instant;

use gkm::axgroup::{axial_group_basis, SolveMethod};
use gkm::extension::extend_axial;
use gkm::families::gen_grassmannian;

fn main() {
    let max_n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    println!("{:>3} {:>8} {:>8} {:>6} {:>12} {:>12}", "n", "vertices", "valence", "rank", "propagate", "full");
    for n in 1..=max_n {
        let gkm = gen_grassmannian(n);
        let t = Instant::now();
        let prop = axial_group_basis(&gkm, SolveMethod::Propagate);
        let tp = t.elapsed();
        let t = Instant::now();
        let full = axial_group_basis(&gkm, SolveMethod::FullSystem);
        let tf = t.elapsed();
        assert_eq!(prop.canonical_matrix, full.canonical_matrix);
        println!(
            "{:>3} {:>8} {:>8} {:>6} {:>12?} {:>12?}",
            n,
            gkm.graph().vertex_count(),
            gkm.valence(),
            prop.rank,
            tp,
            tf
        );
    }
    let gkm = gen_grassmannian(3);
    if let Err(e) = extend_axial(&gkm, 5) {
        println!("J(5,2), target 5: {e}");
    }
}
