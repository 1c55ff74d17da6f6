#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use gkm::axial::{AxialFunction, Gkm};
use gkm::extension::project_axial;
use gkm::families::{gen_grassmannian, gen_projective, gen_s6};
use gkm::linalg::{IntVector, IntegerMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every builtin fixture used by the suites.
pub fn fixtures() -> Vec<(String, Gkm)> {
    let mut out = vec![("s6".to_string(), gen_s6())];
    for m in 1..=5 {
        out.push((format!("projective({m})"), gen_projective(m)));
    }
    for n in 1..=6 {
        out.push((format!("grassmannian({n})"), gen_grassmannian(n)));
    }
    out
}

/// Fixtures small enough for per-vertex and per-ordering sweeps.
pub fn small_fixtures() -> Vec<(String, Gkm)> {
    fixtures()
        .into_iter()
        .filter(|(_, g)| g.graph().vertex_count() <= 15)
        .collect()
}

/// Product of random elementary operations on the identity.
pub fn random_unimodular(rng: &mut ChaCha8Rng, k: usize) -> IntegerMatrix {
    let mut rows: Vec<IntVector> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    if k < 2 {
        if rng.gen_bool(0.5) {
            for x in rows.iter_mut().flatten() {
                *x = -x.clone();
            }
        }
        return IntegerMatrix::from_rows(rows, k);
    }
    for _ in 0..3 * k {
        let i = rng.gen_range(0..k);
        let mut j = rng.gen_range(0..k - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..4) {
            0 => rows.swap(i, j),
            1 => rows[i] = rows[i].iter().map(|x| -x).collect(),
            _ => {
                let c = BigInt::from(*[-2i64, -1, 1, 2].choose(rng).unwrap());
                let add: IntVector = rows[j].iter().map(|x| x * &c).collect();
                for (a, b) in rows[i].iter_mut().zip(add) {
                    *a += b;
                }
            }
        }
    }
    IntegerMatrix::from_rows(rows, k)
}

/// Valid projections of projective graphs along random surjections.
pub fn random_projections(seed: u64, count: usize) -> Vec<(String, Gkm, IntegerMatrix)> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 100 * count, "too few valid projections");
        let m = r.gen_range(2..=5);
        let n = r.gen_range(2..=m);
        let u = random_unimodular(&mut r, m);
        let pi = u.truncate_rows(n);
        if let Ok(p) = project_axial(&gen_projective(m), &pi) {
            out.push((format!("projective({m}) along {pi:?}"), p, pi));
        }
    }
    out
}

/// Fixtures with weights changed by random unimodular matrices.
pub fn random_weight_changes(seed: u64, count: usize) -> Vec<(String, Gkm)> {
    let mut r = rng(seed);
    let pool: Vec<(String, Gkm)> = fixtures()
        .into_iter()
        .filter(|(_, g)| g.graph().vertex_count() <= 10)
        .collect();
    (0..count)
        .map(|_| {
            let (name, g) = pool.choose(&mut r).unwrap();
            let u = random_unimodular(&mut r, g.torus_rank());
            let labels = g.axial().labels().iter().map(|w| u.mul_vec(w)).collect();
            let alpha = AxialFunction::new(g.torus_rank(), labels).unwrap();
            (format!("{name} changed by {u:?}"), g.with_axial(alpha).expect("unimodular change keeps axioms"))
        })
        .collect()
}

/// Random per-vertex orderings.
pub fn shuffled_orderings(g: &Gkm, r: &mut ChaCha8Rng) -> BTreeMap<String, Vec<String>> {
    g.graph()
        .ordering_lists()
        .into_iter()
        .map(|(v, mut list)| {
            list.shuffle(r);
            (v, list)
        })
        .collect()
}

/// Rank over Q by plain Gaussian elimination on fractions.
pub fn rational_rank(rows: &[IntVector], cols: usize) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for j in c..cols {
                    let d = &f * &m[rank][j];
                    m[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn ints(v: &[i64]) -> IntVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Determinant over Q.
pub fn rational_det(rows: &[IntVector]) -> BigRational {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for i in c + 1..n {
            let f = &m[i][c] / &pivot;
            for j in c..n {
                let d = &f * &m[c][j];
                m[i][j] -= d;
            }
        }
    }
    det
}
