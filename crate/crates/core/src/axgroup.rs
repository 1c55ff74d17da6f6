//! The group of axial functions of a GKM graph.
//!
//! An element assigns every vertex `p` a vector `f(p)` in `Z^m` (coordinates
//! follow the out-dart ordering at `p`) such that for every dart `e: p -> q`
//!
//! ```text
//! N_e f(p) - f(q) = f(q)_ē · c(ē)
//! ```
//!
//! The relation for `e` forces `f(q)_ē = -f(p)_e`, so `f(q)` is determined by
//! `f(p)`: `f(q) = N_e f(p) + f(p)_e · c(ē)`. Two solvers are provided:
//! propagation along a spanning tree with constraints from the remaining
//! edges, and the full linear system over all vertices. Both return the same
//! canonical lattice.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::axial::Gkm;
use crate::congruence::apply_permutation;
use crate::linalg::{self, IntVector, IntegerMatrix};

/// A vertex-indexed family of vectors in `Z^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxialElement {
    values: Vec<IntVector>,
}

impl AxialElement {
    pub fn new(values: Vec<IntVector>) -> Self {
        AxialElement { values }
    }

    /// Splits a flat vector of `|V| * m` coordinates.
    pub fn from_flat(flat: &[BigInt], m: usize) -> Self {
        if m == 0 {
            return AxialElement { values: Vec::new() };
        }
        AxialElement { values: flat.chunks(m).map(<[BigInt]>::to_vec).collect() }
    }

    /// `f(v)`.
    pub fn at(&self, v: usize) -> &[BigInt] {
        &self.values[v]
    }

    pub fn values(&self) -> &[IntVector] {
        &self.values
    }

    pub fn flatten(&self) -> IntVector {
        self.values.iter().flatten().cloned().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolveMethod {
    /// Spanning-tree propagation from the base vertex.
    #[default]
    Propagate,
    /// One block of relations per edge over all `|V| * m` unknowns.
    FullSystem,
}

/// Lattice basis of the group of axial functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxialGroupBasis {
    pub elements: Vec<AxialElement>,
    pub rank: usize,
    /// Hermite normal form of the flattened elements; its rows are the
    /// elements, so equal lattices give equal matrices.
    pub canonical_matrix: IntegerMatrix,
}

impl AxialGroupBasis {
    fn from_flat(vectors: Vec<IntVector>, m: usize, dim: usize) -> Self {
        let canonical_matrix = linalg::canonical_basis(&vectors, dim);
        let elements = canonical_matrix
            .to_rows()
            .iter()
            .map(|r| AxialElement::from_flat(r, m))
            .collect::<Vec<_>>();
        AxialGroupBasis { rank: elements.len(), elements, canonical_matrix }
    }

    /// The basis restricted to one vertex, as vectors in `Z^m`.
    pub fn restrict(&self, v: usize) -> Vec<IntVector> {
        self.elements.iter().map(|f| f.at(v).to_vec()).collect()
    }

    pub fn flat_vectors(&self) -> Vec<IntVector> {
        self.canonical_matrix.to_rows()
    }
}

/// `f(q)` from `f(p)` along `e: p -> q`.
pub fn propagate(gkm: &Gkm, f_at_p: &[BigInt], e: usize) -> IntVector {
    let g = gkm.graph();
    let mut out = apply_permutation(g, gkm.connection(), e, f_at_p);
    let coeff = &f_at_p[g.position(e)];
    if !coeff.is_zero() {
        for (o, c) in out.iter_mut().zip(gkm.invariant().vector(g.reverse(e))) {
            *o += coeff * c;
        }
    }
    out
}

/// Matrix form of [`propagate`]: `f(q) = P_e f(p)`.
pub fn transfer_matrix(gkm: &Gkm, e: usize) -> IntegerMatrix {
    let m = gkm.valence();
    let mut p = IntegerMatrix::zeros(m, m);
    for j in 0..m {
        let mut unit = vec![BigInt::zero(); m];
        unit[j] = BigInt::one();
        for (i, x) in propagate(gkm, &unit, e).into_iter().enumerate() {
            p[(i, j)] = x;
        }
    }
    p
}

/// `N_e f(p) - f(q) - f(q)_ē c(ē)` for `e: p -> q`; zero iff the defining
/// relation holds at `e`.
pub fn relation_residual(gkm: &Gkm, f: &AxialElement, e: usize) -> IntVector {
    let g = gkm.graph();
    let (p, q, rev) = (g.source(e), g.target(e), g.reverse(e));
    let moved = apply_permutation(g, gkm.connection(), e, f.at(p));
    let fq = f.at(q);
    let coeff = &fq[g.position(rev)];
    moved
        .iter()
        .zip(fq)
        .zip(gkm.invariant().vector(rev))
        .map(|((a, b), c)| a - b - coeff * c)
        .collect()
}

/// The relation holds at every dart.
pub fn is_axial_element(gkm: &Gkm, f: &AxialElement) -> bool {
    (0..gkm.graph().dart_count()).all(|e| relation_residual(gkm, f, e).iter().all(Zero::is_zero))
}

/// Basis using the smallest vertex id as base vertex.
pub fn axial_group_basis(gkm: &Gkm, method: SolveMethod) -> AxialGroupBasis {
    axial_group_basis_from(gkm, method, gkm.graph().smallest_vertex())
}

/// Basis with an explicit base vertex (only used by the propagation solver).
pub fn axial_group_basis_from(gkm: &Gkm, method: SolveMethod, base: usize) -> AxialGroupBasis {
    let m = gkm.valence();
    let dim = m * gkm.graph().vertex_count();
    let flat = match method {
        SolveMethod::Propagate => solve_by_propagation(gkm, base),
        SolveMethod::FullSystem => linalg::integer_kernel_basis(&full_system_matrix(gkm, false)),
    };
    AxialGroupBasis::from_flat(flat, m, dim)
}

/// Every vertex value as a matrix image of `x = f(base)`: `f(v) = T_v x`.
fn transfer_to_all(gkm: &Gkm, base: usize) -> (Vec<IntegerMatrix>, HashSet<usize>) {
    let g = gkm.graph();
    let m = gkm.valence();
    let (order, parent) = g.bfs_tree(base);
    let mut t: Vec<Option<IntegerMatrix>> = vec![None; g.vertex_count()];
    t[base] = Some(IntegerMatrix::identity(m));
    let mut tree = HashSet::new();
    for &v in &order {
        if let Some(d) = parent[v] {
            tree.insert(d);
            tree.insert(g.reverse(d));
            let tp = t[g.source(d)].as_ref().expect("BFS visits parents first");
            t[v] = Some(transfer_matrix(gkm, d).mul(tp));
        }
    }
    (t.into_iter().map(|x| x.expect("graph is connected")).collect(), tree)
}

fn solve_by_propagation(gkm: &Gkm, base: usize) -> Vec<IntVector> {
    let g = gkm.graph();
    let m = gkm.valence();
    let (t, tree) = transfer_to_all(gkm, base);
    let mut rows: Vec<IntVector> = Vec::new();
    for e in g.edge_representatives() {
        if tree.contains(&e) {
            continue;
        }
        let (p, q) = (g.source(e), g.target(e));
        let lhs = transfer_matrix(gkm, e).mul(&t[p]);
        for i in 0..m {
            let row: IntVector = (0..m).map(|j| &lhs[(i, j)] - &t[q][(i, j)]).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let constraints = IntegerMatrix::from_rows(rows, m);
    linalg::integer_kernel_basis(&constraints)
        .into_iter()
        .map(|x| t.iter().flat_map(|tv| tv.mul_vec(&x)).collect())
        .collect()
}

/// Coefficient matrix of the defining relations over the unknowns
/// `f(v)_j` (index `v * m + j`). One block per undirected edge, or per dart
/// when `both_orientations` is set.
pub fn full_system_matrix(gkm: &Gkm, both_orientations: bool) -> IntegerMatrix {
    let g = gkm.graph();
    let m = gkm.valence();
    let dim = m * g.vertex_count();
    let darts: Vec<usize> = if both_orientations {
        (0..g.dart_count()).collect()
    } else {
        g.edge_representatives().collect()
    };
    let mut a = IntegerMatrix::zeros(darts.len() * m, dim);
    for (k, &e) in darts.iter().enumerate() {
        let (p, q, rev) = (g.source(e), g.target(e), g.reverse(e));
        let sigma = crate::congruence::permutation(g, gkm.connection(), e);
        let c = gkm.invariant().vector(rev);
        let rev_pos = g.position(rev);
        // row i: f(p)_{σ⁻¹(i)} - f(q)_i - c_i f(q)_{pos(ē)} = 0
        for (j, &s) in sigma.iter().enumerate() {
            a[(k * m + s, p * m + j)] += BigInt::one();
        }
        for i in 0..m {
            a[(k * m + i, q * m + i)] -= BigInt::one();
            a[(k * m + i, q * m + rev_pos)] -= &c[i];
        }
    }
    a
}

/// The `n` elements read off the labels: `f_i(p)_j` is the `i`-th
/// coordinate of the weight of the `j`-th out-dart at `p`.
pub fn canonical_elements(gkm: &Gkm) -> Vec<AxialElement> {
    let g = gkm.graph();
    (0..gkm.torus_rank())
        .map(|i| {
            AxialElement::new(
                (0..g.vertex_count())
                    .map(|v| g.out_darts(v).iter().map(|&d| gkm.axial().label(d)[i].clone()).collect())
                    .collect(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::linalg::int_vector;

    #[test]
    fn zero_propagates_to_zero() {
        let gkm = families::gen_grassmannian(2);
        let z = vec![BigInt::zero(); gkm.valence()];
        for e in 0..gkm.graph().dart_count() {
            assert!(propagate(&gkm, &z, e).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn s6_propagation_negates() {
        let gkm = families::gen_s6();
        let f = int_vector(&[3, -5, 2]);
        for e in 0..gkm.graph().dart_count() {
            let fq = propagate(&gkm, &f, e);
            assert_eq!(fq, int_vector(&[-3, 5, -2]));
        }
    }

    #[test]
    fn propagation_round_trip() {
        let gkm = families::gen_grassmannian(2);
        let g = gkm.graph();
        let f = int_vector(&[1, -2, 3, 7]);
        for e in 0..g.dart_count() {
            let back = propagate(&gkm, &propagate(&gkm, &f, e), g.reverse(e));
            assert_eq!(back, f);
        }
    }

    #[test]
    fn both_orientations_give_same_kernel() {
        let gkm = families::gen_grassmannian(2);
        let one = linalg::integer_kernel_basis(&full_system_matrix(&gkm, false));
        let two = linalg::integer_kernel_basis(&full_system_matrix(&gkm, true));
        assert_eq!(one, two);
    }

    #[test]
    fn canonical_elements_are_members() {
        for gkm in [families::gen_s6(), families::gen_projective(3), families::gen_grassmannian(3)] {
            for f in canonical_elements(&gkm) {
                assert!(is_axial_element(&gkm, &f));
            }
        }
    }

    #[test]
    fn s6_canonical_elements() {
        let gkm = families::gen_s6();
        let p = gkm.graph().vertex("p").unwrap();
        let f = canonical_elements(&gkm);
        assert_eq!(f[0].at(p), int_vector(&[1, 0, -1]).as_slice());
        assert_eq!(f[1].at(p), int_vector(&[0, 1, -1]).as_slice());
    }

    #[test]
    fn projective_two_canonical_element() {
        let gkm = families::gen_projective(2);
        let v0 = gkm.graph().vertex("0").unwrap();
        let f = canonical_elements(&gkm);
        assert_eq!(f[0].at(v0), int_vector(&[1, 0]).as_slice());
    }

    #[test]
    fn single_edge_has_rank_one() {
        let gkm = families::gen_projective(1);
        assert_eq!(axial_group_basis(&gkm, SolveMethod::Propagate).rank, 1);
        assert_eq!(axial_group_basis(&gkm, SolveMethod::FullSystem).rank, 1);
    }
}
