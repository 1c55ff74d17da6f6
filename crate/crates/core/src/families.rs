//! Builtin GKM graphs: complete graphs with projective-space weights, the
//! three-edge graph of `S^6`, and Johnson graphs `J(n+2, 2)` with the
//! Grassmannian weights.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::axial::{AxialFunction, Connection, Gkm};
use crate::graph::{GraphBuilder, OrientedGraph};
use crate::linalg::{int_vector, IntVector};

/// `a_k` in `Z^n` with `a_0 = 0` (or `a_{n+1} = 0` for the Johnson family).
fn basis(n: usize, k: Option<usize>) -> IntVector {
    let mut v = vec![BigInt::from(0); n];
    if let Some(k) = k {
        v[k] = BigInt::from(1);
    }
    v
}

fn sub(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Complete graph on `0..=m` with `α(i -> j) = a_j - a_i` and `a_0 = 0`.
/// Edge `i-j` (for `i < j`) is the dart from `i` to `j`.
///
/// # Panics
/// If `m == 0`.
pub fn gen_projective(m: usize) -> Gkm {
    assert!(m >= 1, "projective family needs m >= 1");
    let a = |k: usize| basis(m, k.checked_sub(1));
    let mut b = GraphBuilder::new().vertices((0..=m).map(|v| v.to_string()));
    let mut weights = BTreeMap::new();
    for i in 0..=m {
        for j in i + 1..=m {
            let id = format!("{i}-{j}");
            weights.insert(id.clone(), sub(&a(j), &a(i)));
            b = b.edge(id, i.to_string(), j.to_string());
        }
    }
    let g = b.build().expect("complete graph is regular and connected");
    let alpha = AxialFunction::antisymmetric(&g, m, |d| weights[g.dart_id(d)].clone()).expect("arity m");
    Gkm::new(g, alpha, None).expect("projective weights form a GKM graph")
}

/// Two vertices `p`, `q` joined by `e1`, `e2`, `e3` with weights
/// `(1,0)`, `(0,1)`, `(-1,-1)`.
pub fn gen_s6() -> Gkm {
    let g = GraphBuilder::new()
        .vertices(["p", "q"])
        .edge("e1", "p", "q")
        .edge("e2", "p", "q")
        .edge("e3", "p", "q")
        .build()
        .expect("three parallel edges");
    let weights: BTreeMap<&str, IntVector> = [
        ("e1", int_vector(&[1, 0])),
        ("e2", int_vector(&[0, 1])),
        ("e3", int_vector(&[-1, -1])),
    ]
    .into_iter()
    .collect();
    let alpha = AxialFunction::antisymmetric(&g, 2, |d| weights[g.dart_id(d)].clone()).expect("arity 2");
    Gkm::new(g, alpha, None).expect("S^6 weights form a GKM graph")
}

/// Vertex id of the 2-subset `{i, j}` of `1..=n+2`.
pub fn johnson_vertex_id(i: usize, j: usize) -> String {
    let (i, j) = (i.min(j), i.max(j));
    format!("{i},{j}")
}

fn parse_pair(id: &str) -> Option<(usize, usize)> {
    let (a, b) = id.split_once(',')?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

/// The dart between two 2-subsets that share one element.
pub fn johnson_dart(g: &OrientedGraph, from: (usize, usize), to: (usize, usize)) -> Option<usize> {
    let (f, t) = (norm(from), norm(to));
    let id = if f < t {
        format!("{},{}>{},{}", f.0, f.1, t.0, t.1)
    } else {
        format!("{},{}>{},{}~", t.0, t.1, f.0, f.1)
    };
    g.dart(&id)
}

fn norm((a, b): (usize, usize)) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// For a dart `{s,r} -> {s,k}`, returns `(s, r, k)`.
pub fn johnson_dart_shape(g: &OrientedGraph, d: usize) -> Option<(usize, usize, usize)> {
    let (a, b) = parse_pair(g.vertex_id(g.source(d)))?;
    let (c, e) = parse_pair(g.vertex_id(g.target(d)))?;
    let s = [a, b].into_iter().find(|x| *x == c || *x == e)?;
    let r = if s == a { b } else { a };
    let k = if s == c { e } else { c };
    Some((s, r, k))
}

/// Johnson graph `J(n+2, 2)` with `α({s,r} -> {s,k}) = a_k - a_r`,
/// `a_1, ..., a_{n+1}` the basis of `Z^{n+1}` and `a_{n+2} = 0`.
///
/// At `{i,j}` with `i < j` the out-darts are ordered `{i,k}` for increasing
/// `k`, then `{j,k}` for increasing `k`. The connection is the closed form of
/// [`grassmannian_connection`].
///
/// # Panics
/// If `n == 0`.
pub fn gen_grassmannian(n: usize) -> Gkm {
    assert!(n >= 1, "Grassmannian family needs n >= 1");
    let top = n + 2;
    let pairs: Vec<(usize, usize)> = (1..=top).flat_map(|i| (i + 1..=top).map(move |j| (i, j))).collect();
    let mut b = GraphBuilder::new().vertices(pairs.iter().map(|&(i, j)| johnson_vertex_id(i, j)));
    for (x, &p) in pairs.iter().enumerate() {
        for &q in &pairs[x + 1..] {
            if p.0 == q.0 || p.0 == q.1 || p.1 == q.0 || p.1 == q.1 {
                let id = format!("{},{}>{},{}", p.0, p.1, q.0, q.1);
                b = b.edge(id, johnson_vertex_id(p.0, p.1), johnson_vertex_id(q.0, q.1));
            }
        }
    }
    let g = b.build().expect("Johnson graph is regular and connected");

    let mut lists = BTreeMap::new();
    for &(i, j) in &pairs {
        let mut list = Vec::with_capacity(2 * n);
        for (keep, drop) in [(i, j), (j, i)] {
            for k in (1..=top).filter(|&k| k != i && k != j) {
                let d = johnson_dart(&g, (keep, drop), (keep, k)).expect("adjacent subsets");
                list.push(g.dart_id(d).to_string());
            }
        }
        lists.insert(johnson_vertex_id(i, j), list);
    }
    let g = g.with_ordering(&lists).expect("every out-dart listed once");

    let a = |k: usize| basis(n + 1, (k <= n + 1).then(|| k - 1));
    let alpha = AxialFunction::antisymmetric(&g, n + 1, |d| {
        let (_, r, k) = johnson_dart_shape(&g, d).expect("Johnson dart");
        sub(&a(k), &a(r))
    })
    .expect("arity n+1");
    let conn = grassmannian_connection(&g);
    Gkm::new(g, alpha, Some(conn)).expect("Grassmannian weights form a GKM graph")
}

/// Closed-form connection on a Johnson graph built by [`gen_grassmannian`].
/// Along `e: {s,r} -> {s,k}`:
///
/// * `{s,r} -> {s,l}` goes to `{s,k} -> {s,l}`,
/// * `{s,r} -> {r,l}` goes to `{s,k} -> {k,l}`,
/// * `{s,r} -> {r,k}` goes to `{s,k} -> {r,k}`,
/// * `e` goes to its reverse.
///
/// # Panics
/// If `g` does not use the Johnson vertex and dart naming.
pub fn grassmannian_connection(g: &OrientedGraph) -> Connection {
    let maps = (0..g.dart_count())
        .map(|e| {
            let (s, r, k) = johnson_dart_shape(g, e).expect("Johnson dart");
            g.out_darts(g.source(e))
                .iter()
                .map(|&ep| {
                    let image = if ep == e {
                        g.reverse(e)
                    } else {
                        let (s2, _, l) = johnson_dart_shape(g, ep).expect("Johnson dart");
                        let (from, to) = match (s2 == s, l == k) {
                            (true, _) => ((s, k), (s, l)),
                            (false, true) => ((s, k), (r, k)),
                            (false, false) => ((s, k), (k, l)),
                        };
                        johnson_dart(g, from, to).expect("image dart exists")
                    };
                    (ep, image)
                })
                .collect()
        })
        .collect();
    Connection::new(maps)
}
