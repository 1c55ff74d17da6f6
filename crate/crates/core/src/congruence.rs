//! The invariant function: per dart, the vector of congruence coefficients
//! in the ordering of the out-darts at its source. It does not change under
//! extension of the axial function.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::axial::{congruence_coefficient, AxialFunction, Connection, Gkm, NotProportional};
use crate::graph::OrientedGraph;
use crate::linalg::{IntVector, IntegerMatrix};

/// `(c_e(e_1), ..., c_e(e_m))` for the ordered out-darts `e_j` at `i(e)`.
pub type CongruenceVector = IntVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFunction {
    vectors: Vec<CongruenceVector>,
}

impl InvariantFunction {
    pub fn vector(&self, dart: usize) -> &[BigInt] {
        &self.vectors[dart]
    }

    pub fn vectors(&self) -> &[CongruenceVector] {
        &self.vectors
    }
}

pub(crate) fn invariant_vectors(
    g: &OrientedGraph,
    alpha: &AxialFunction,
    conn: &Connection,
) -> Result<InvariantFunction, NotProportional> {
    let mut vectors = Vec::with_capacity(g.dart_count());
    for e in 0..g.dart_count() {
        let v = g
            .out_darts(g.source(e))
            .iter()
            .map(|&ep| congruence_coefficient(g, alpha, conn, e, ep))
            .collect::<Result<Vec<_>, _>>()?;
        vectors.push(v);
    }
    Ok(InvariantFunction { vectors })
}

/// Recomputes the invariant function from the labels and connection.
pub fn invariant_function(gkm: &Gkm) -> Result<InvariantFunction, NotProportional> {
    invariant_vectors(gkm.graph(), gkm.axial(), gkm.connection())
}

/// `σ` with `∇_e(e_{j,i(e)}) = e_{σ(j),t(e)}`.
pub fn permutation(g: &OrientedGraph, conn: &Connection, e: usize) -> Vec<usize> {
    g.out_darts(g.source(e))
        .iter()
        .map(|&ep| g.position(conn.apply(e, ep).expect("connection is total")))
        .collect()
}

/// `N_e v`: moves the entry at position `j` to position `σ(j)`.
pub fn apply_permutation(g: &OrientedGraph, conn: &Connection, e: usize, v: &[BigInt]) -> IntVector {
    let sigma = permutation(g, conn, e);
    let mut out = vec![BigInt::zero(); v.len()];
    for (j, x) in v.iter().enumerate() {
        out[sigma[j]] = x.clone();
    }
    out
}

/// The `m x m` permutation matrix `N_e : Z E_i(e) -> Z E_t(e)`.
pub fn permutation_matrix(gkm: &Gkm, e: usize) -> IntegerMatrix {
    let sigma = permutation(gkm.graph(), gkm.connection(), e);
    let m = sigma.len();
    let mut n = IntegerMatrix::zeros(m, m);
    for (j, &s) in sigma.iter().enumerate() {
        n[(s, j)] = BigInt::one();
    }
    n
}
