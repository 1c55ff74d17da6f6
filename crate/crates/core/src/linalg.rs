//! Exact integer matrices and the lattice routines built on them.
//!
//! Everything here works over arbitrary-precision integers. The one
//! canonical form is the row-style Hermite normal form: rows in echelon
//! order, positive pivots, entries above each pivot reduced into
//! `[0, pivot)`, zero rows at the bottom. Two generating sets span the same
//! lattice exactly when their reduced forms agree entry for entry.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// An integer vector; lattice elements are always stored this way.
pub type IntVector = Vec<BigInt>;

/// Converts machine integers into an [`IntVector`].
pub fn int_vector(values: &[i64]) -> IntVector {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("chosen vector {index} is not an integer combination of the lattice basis")]
    NotInLattice { index: usize },
    #[error("chosen vectors are linearly dependent")]
    LinearlyDependent,
    #[error("vector {index} has length {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows * cols");
        IntegerMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(rows: Vec<IntVector>, cols: usize) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend(row);
        }
        IntegerMatrix::new(n, cols, entries)
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        IntegerMatrix::from_rows(rows.iter().map(|r| int_vector(r.as_ref())).collect(), cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> IntVector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<IntVector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut t = IntegerMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> IntVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|r| dot(self.row(r), v))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = &self[(r, c)];
                    if r == c {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Number of rows with at least one nonzero entry.
    pub fn nonzero_rows(&self) -> usize {
        (0..self.rows)
            .filter(|&r| self.row(r).iter().any(|e| !e.is_zero()))
            .count()
    }

    /// Keeps only the first `n` rows.
    pub fn truncate_rows(&self, n: usize) -> IntegerMatrix {
        let n = n.min(self.rows);
        IntegerMatrix::new(n, self.cols, self.entries[..n * self.cols].to_vec())
    }
}

impl Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", join(self.row(r)))?;
        }
        Ok(())
    }
}

/// Formats an integer vector as `a, b, c`.
pub fn join(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

// rows[target] -= q * rows[source], touching only columns `from..`
fn sub_row_multiple(rows: &mut [IntVector], target: usize, source: usize, q: &BigInt, from: usize) {
    debug_assert_ne!(target, source);
    let (t, s) = if target < source {
        let (lo, hi) = rows.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    if q.is_one() {
        for (x, y) in t[from..].iter_mut().zip(&s[from..]) {
            if !y.is_zero() {
                *x -= y;
            }
        }
    } else {
        for (x, y) in t[from..].iter_mut().zip(&s[from..]) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
    }
}

fn negate_row(row: &mut [BigInt]) {
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = -&*x;
        }
    }
}

fn identity_rows(n: usize) -> Vec<IntVector> {
    (0..n)
        .map(|i| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::one();
            r
        })
        .collect()
}

/// Brings `h` into row Hermite normal form in place, mirroring every row
/// operation on `u` when given. Returns the pivot column of each nonzero row.
fn echelonize(h: &mut [IntVector], mut u: Option<&mut Vec<IntVector>>, cols: usize) -> Vec<usize> {
    let nrows = h.len();
    let mut pivots = Vec::new();
    let mut p = 0;
    for col in 0..cols {
        if p == nrows {
            break;
        }
        // Euclid across rows: move the smallest entry up, reduce the rest by it.
        loop {
            let best = (p..nrows)
                .filter(|&r| !h[r][col].is_zero())
                .min_by(|&a, &b| h[a][col].magnitude().cmp(h[b][col].magnitude()));
            let Some(best) = best else { break };
            h.swap(p, best);
            if let Some(u) = u.as_deref_mut() {
                u.swap(p, best);
            }
            let mut clean = true;
            for r in p + 1..nrows {
                if h[r][col].is_zero() {
                    continue;
                }
                let q = h[r][col].div_floor(&h[p][col]);
                sub_row_multiple(h, r, p, &q, col);
                if let Some(u) = u.as_deref_mut() {
                    sub_row_multiple(u, r, p, &q, 0);
                }
                if !h[r][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[p][col].is_zero() {
            continue;
        }
        if h[p][col].is_negative() {
            negate_row(&mut h[p][col..]);
            if let Some(u) = u.as_deref_mut() {
                negate_row(&mut u[p]);
            }
        }
        for r in 0..p {
            if h[r][col].is_zero() {
                continue;
            }
            let q = h[r][col].div_floor(&h[p][col]);
            if q.is_zero() {
                continue;
            }
            sub_row_multiple(h, r, p, &q, col);
            if let Some(u) = u.as_deref_mut() {
                sub_row_multiple(u, r, p, &q, 0);
            }
        }
        pivots.push(col);
        p += 1;
    }
    pivots
}

/// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `U * M = H`.
pub fn hermite_normal_form(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let mut h = m.to_rows();
    let mut u = identity_rows(m.rows());
    echelonize(&mut h, Some(&mut u), m.cols());
    (
        IntegerMatrix::from_rows(h, m.cols()),
        IntegerMatrix::from_rows(u, m.rows()),
    )
}

/// Rank over the rationals.
pub fn rank(m: &IntegerMatrix) -> usize {
    let mut h = m.to_rows();
    echelonize(&mut h, None, m.cols()).len()
}

/// Canonical basis of the lattice generated by `vectors` in `Z^dim`: the
/// nonzero rows of its Hermite normal form.
pub fn canonical_basis(vectors: &[IntVector], dim: usize) -> IntegerMatrix {
    let mut h: Vec<IntVector> = vectors.to_vec();
    for v in &h {
        assert_eq!(v.len(), dim, "vector length must equal the ambient dimension");
    }
    let r = echelonize(&mut h, None, dim).len();
    h.truncate(r);
    IntegerMatrix::from_rows(h, dim)
}

/// Lattice basis of `{x in Z^cols : M x = 0}`, canonicalized.
///
/// The transformation matrix from the Hermite form of `M^T` carries the
/// kernel in its trailing rows; because that matrix is unimodular the basis
/// is primitive.
pub fn integer_kernel_basis(m: &IntegerMatrix) -> Vec<IntVector> {
    let cols = m.cols();
    if cols == 0 {
        return Vec::new();
    }
    // Row-reduce first: same kernel, at most `cols` rows left.
    let mut h = m.to_rows();
    let r = echelonize(&mut h, None, cols).len();
    h.truncate(r);

    let mut t: Vec<IntVector> = (0..cols)
        .map(|j| h.iter().map(|row| row[j].clone()).collect())
        .collect();
    let mut u = identity_rows(cols);
    let piv = echelonize(&mut t, Some(&mut u), r).len();
    let mut kernel: Vec<IntVector> = u.split_off(piv);
    let k = echelonize(&mut kernel, None, cols).len();
    kernel.truncate(k);
    kernel
}

/// Nonzero invariant factors of `m` (the Smith normal form diagonal), in
/// divisibility order.
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut a = m.to_rows();
    let (nr, nc) = (m.rows(), m.cols());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for r in t..nr {
                for c in t..nc {
                    if a[r][c].is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((br, bc)) => a[r][c].magnitude() < a[br][bc].magnitude(),
                    };
                    if better {
                        best = Some((r, c));
                    }
                }
            }
            let Some((br, bc)) = best else {
                return snf_chain(diag);
            };
            a.swap(t, br);
            for row in a.iter_mut() {
                row.swap(t, bc);
            }
            let mut clean = true;
            for r in t + 1..nr {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                sub_row_multiple(&mut a, r, t, &q, t);
                if !a[r][t].is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..nc {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    if !row[t].is_zero() {
                        let d = &q * &row[t];
                        row[c] -= d;
                    }
                }
                if !a[t][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    snf_chain(diag)
}

fn snf_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// True when the integer span of `vectors` is all of `Z^dim`.
pub fn spans_integer_lattice(vectors: &[IntVector], dim: usize) -> bool {
    let m = IntegerMatrix::from_rows(vectors.to_vec(), dim);
    let f = invariant_factors(&m);
    f.len() == dim && f.iter().all(One::is_one)
}

/// True when `vectors` span `Q^dim`.
pub fn spans_rational_space(vectors: &[IntVector], dim: usize) -> bool {
    rank(&IntegerMatrix::from_rows(vectors.to_vec(), dim)) == dim
}

/// Finds an integer `X` with `A X = B`, if one exists.
pub fn solve_integer(a: &IntegerMatrix, b: &IntegerMatrix) -> Option<IntegerMatrix> {
    assert_eq!(a.rows(), b.rows(), "A and B must have the same row count");
    let (m, k, n) = (a.rows(), a.cols(), b.cols());
    // U A^T = H, hence A U^T = H^T, a column echelon form.
    let mut h = a.transpose().to_rows();
    let mut u = identity_rows(k);
    let piv = echelonize(&mut h, Some(&mut u), m);
    let mut x = IntegerMatrix::zeros(k, n);
    for col in 0..n {
        let rhs = b.column(col);
        let mut y = vec![BigInt::zero(); k];
        for (t, &pr) in piv.iter().enumerate() {
            let mut num = rhs[pr].clone();
            for s in 0..t {
                num -= &h[s][pr] * &y[s];
            }
            let (q, rem) = num.div_rem(&h[t][pr]);
            if !rem.is_zero() {
                return None;
            }
            y[t] = q;
        }
        for i in 0..m {
            let lhs: BigInt = (0..piv.len()).map(|s| &h[s][i] * &y[s]).sum();
            if lhs != rhs[i] {
                return None;
            }
        }
        for i in 0..k {
            x[(i, col)] = (0..piv.len()).map(|t| &u[t][i] * &y[t]).sum();
        }
    }
    Some(x)
}

/// Outcome of [`complete_inside_lattice`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCompletion {
    /// Lattice vectors that extend the chosen ones to a maximal independent
    /// family; together with a basis of the saturation of the chosen span they
    /// form a basis of the lattice.
    pub completion: Vec<IntVector>,
    /// Index of the chosen span inside its saturation (1 when primitive).
    pub index: BigInt,
}

/// Extends `chosen` by vectors of the lattice spanned by `lattice`.
pub fn complete_inside_lattice(
    chosen: &[IntVector],
    lattice: &[IntVector],
) -> Result<LatticeCompletion, LinalgError> {
    let dim = lattice.first().or(chosen.first()).map_or(0, Vec::len);
    for (index, v) in lattice.iter().chain(chosen).enumerate() {
        if v.len() != dim {
            return Err(LinalgError::DimensionMismatch {
                index,
                expected: dim,
                found: v.len(),
            });
        }
    }
    let basis: Vec<IntVector> = if rank(&IntegerMatrix::from_rows(lattice.to_vec(), dim)) == lattice.len() {
        lattice.to_vec()
    } else {
        canonical_basis(lattice, dim).to_rows()
    };
    let k = basis.len();
    let basis_t = IntegerMatrix::from_rows(basis.clone(), dim).transpose();

    // Lattice coordinates of each chosen vector.
    let mut coords = Vec::with_capacity(chosen.len());
    for (index, v) in chosen.iter().enumerate() {
        let rhs = IntegerMatrix::from_rows(vec![v.clone()], dim).transpose();
        let y = solve_integer(&basis_t, &rhs).ok_or(LinalgError::NotInLattice { index })?;
        coords.push(y.column(0));
    }
    let s = coords.len();
    let y = IntegerMatrix::from_rows(coords, k);
    if rank(&y) != s {
        return Err(LinalgError::LinearlyDependent);
    }
    let index = invariant_factors(&y).iter().product::<BigInt>();

    // Saturation of the chosen span, in coordinates.
    let orth = integer_kernel_basis(&y);
    let sat = if orth.is_empty() {
        identity_rows(k)
    } else {
        integer_kernel_basis(&IntegerMatrix::from_rows(orth, k))
    };
    debug_assert_eq!(sat.len(), s);

    // U S^T = H puts S V = [B | 0] with V = U^T; the trailing rows of V^{-1}
    // complement the saturation.
    let mut st = IntegerMatrix::from_rows(sat, k).transpose().to_rows();
    let mut u = identity_rows(k);
    echelonize(&mut st, Some(&mut u), s);
    let (_, u_inv) = hermite_normal_form(&IntegerMatrix::from_rows(u, k));
    let complement: Vec<IntVector> = (s..k).map(|i| u_inv.column(i)).collect();
    let complement = if complement.is_empty() {
        complement
    } else {
        canonical_basis(&complement, k).to_rows()
    };

    let completion = complement
        .iter()
        .map(|c| {
            (0..dim)
                .map(|j| (0..k).map(|i| &c[i] * &basis[i][j]).sum())
                .collect()
        })
        .collect();
    Ok(LatticeCompletion { completion, index })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det2(m: &IntegerMatrix) -> BigInt {
        &m[(0, 0)] * &m[(1, 1)] - &m[(0, 1)] * &m[(1, 0)]
    }

    #[test]
    fn identity_is_its_own_form() {
        let id = IntegerMatrix::identity(3);
        let (h, u) = hermite_normal_form(&id);
        assert!(h.is_identity());
        assert!(u.is_identity());
    }

    #[test]
    fn zero_matrix_form() {
        let z = IntegerMatrix::zeros(2, 3);
        let (h, u) = hermite_normal_form(&z);
        assert!(h.is_zero());
        assert!(u.is_identity());
        assert_eq!(rank(&z), 0);
    }

    #[test]
    fn two_by_two_keeps_determinant() {
        let m = IntegerMatrix::from_i64_rows(&[[2, 4], [1, 3]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(det2(&h).abs(), BigInt::from(2));
        assert_eq!(det2(&u).abs(), BigInt::one());
        assert_eq!(u.mul(&m), h);
        assert_eq!(h, IntegerMatrix::from_i64_rows(&[[1, 1], [0, 2]]));
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(integer_kernel_basis(&IntegerMatrix::identity(4)).is_empty());
    }

    #[test]
    fn kernel_of_sum_functional() {
        let m = IntegerMatrix::from_i64_rows(&[[1, 1, 1]]);
        let k = integer_kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(v.iter().sum::<BigInt>().is_zero());
        }
        // primitive: the kernel lattice has index 1 in its rational span
        let f = invariant_factors(&IntegerMatrix::from_rows(k, 3));
        assert!(f.iter().all(One::is_one));
    }

    #[test]
    fn kernel_with_no_columns() {
        assert!(integer_kernel_basis(&IntegerMatrix::zeros(3, 0)).is_empty());
        let k = integer_kernel_basis(&IntegerMatrix::zeros(0, 2));
        assert_eq!(IntegerMatrix::from_rows(k, 2), IntegerMatrix::identity(2));
    }

    #[test]
    fn invariant_factors_of_diagonal() {
        let m = IntegerMatrix::from_i64_rows(&[[2, 0], [0, 3]]);
        assert_eq!(invariant_factors(&m), int_vector(&[1, 6]));
        let m = IntegerMatrix::from_i64_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        assert_eq!(invariant_factors(&m), int_vector(&[2, 6, 12]));
    }

    #[test]
    fn spanning_checks() {
        let v = vec![int_vector(&[2, 0]), int_vector(&[0, 1])];
        assert!(!spans_integer_lattice(&v, 2));
        assert!(spans_rational_space(&v, 2));
        let v = vec![int_vector(&[1, 0]), int_vector(&[0, 1]), int_vector(&[-1, -1])];
        assert!(spans_integer_lattice(&v, 2));
    }

    #[test]
    fn solve_small_systems() {
        let a = IntegerMatrix::from_i64_rows(&[[1, 0], [0, 1], [1, 1]]);
        let b = IntegerMatrix::from_i64_rows(&[[3], [4], [7]]);
        let x = solve_integer(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);
        let b = IntegerMatrix::from_i64_rows(&[[3], [4], [8]]);
        assert!(solve_integer(&a, &b).is_none());
        let a = IntegerMatrix::from_i64_rows(&[[2]]);
        assert!(solve_integer(&a, &IntegerMatrix::from_i64_rows(&[[3]])).is_none());
    }

    #[test]
    fn complete_standard_basis() {
        let lattice = IntegerMatrix::identity(3).to_rows();
        let c = complete_inside_lattice(&[int_vector(&[1, 0, 0])], &lattice).unwrap();
        assert_eq!(c.completion, vec![int_vector(&[0, 1, 0]), int_vector(&[0, 0, 1])]);
        assert!(c.index.is_one());
    }

    #[test]
    fn complete_empty_prefix() {
        let lattice = vec![int_vector(&[1, 2, 0]), int_vector(&[0, 3, 1])];
        let c = complete_inside_lattice(&[], &lattice).unwrap();
        assert_eq!(c.completion, lattice);
    }

    #[test]
    fn complete_reports_index() {
        let lattice = IntegerMatrix::identity(2).to_rows();
        let c = complete_inside_lattice(&[int_vector(&[2, 0])], &lattice).unwrap();
        assert_eq!(c.completion, vec![int_vector(&[0, 1])]);
        assert_eq!(c.index, BigInt::from(2));
    }

    #[test]
    fn complete_rejects_outsiders() {
        let lattice = vec![int_vector(&[2, 0]), int_vector(&[0, 1])];
        let err = complete_inside_lattice(&[int_vector(&[1, 0])], &lattice).unwrap_err();
        assert_eq!(err, LinalgError::NotInLattice { index: 0 });
        let err = complete_inside_lattice(
            &[int_vector(&[2, 0]), int_vector(&[4, 0])],
            &lattice,
        )
        .unwrap_err();
        assert_eq!(err, LinalgError::LinearlyDependent);
    }
}
