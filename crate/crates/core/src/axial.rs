//! Axial functions, connections, and the axioms tying them to a graph.
//!
//! A label assigns each dart a weight in `Z^n`. Together with a connection
//! (one bijection of out-dart sets per dart) it forms a GKM graph when:
//!
//! 1. reversing a dart negates its weight,
//! 2. the weights at each vertex are pairwise linearly independent,
//! 3. the connection sends `e` to its reverse, is inverted by the reverse
//!    dart, and moves every weight by an integer multiple of `α(e)`,
//! 4. the weights at each vertex span the weight lattice.
//!
//! Axiom 4 is checked over `Z` by default; [`SpanMode::Rational`] relaxes it
//! to a rank condition.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::congruence::{self, InvariantFunction};
use crate::graph::{GraphError, OrientedGraph};
use crate::linalg::{self, IntVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxialError {
    #[error("axial function has {found} labels for {expected} darts")]
    LabelCount { expected: usize, found: usize },
    #[error("label of dart {dart} has length {found}, expected torus rank {expected}")]
    Arity {
        dart: usize,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("no out-dart at the target of `{dart}` matches `{out_dart}`")]
    NoMatch { dart: String, out_dart: String },
    #[error("`{out_dart}` has several partners along `{dart}` ({}); supply the connection explicitly", .candidates.join(", "))]
    AmbiguousConnection {
        dart: String,
        out_dart: String,
        candidates: Vec<String>,
    },
    #[error("inferred map along `{dart}` is not a bijection")]
    NotBijective { dart: String },
    #[error("inferred maps along `{dart}` and its reverse are not mutually inverse")]
    InconsistentReverse { dart: String },
    #[error("connection references unknown dart `{0}`")]
    UnknownDart(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("α(∇_{dart}({out_dart})) - α({out_dart}) is not an integer multiple of α({dart})")]
pub struct NotProportional {
    pub dart: String,
    pub out_dart: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GkmError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Axial(#[from] AxialError),
    #[error(transparent)]
    Connection(#[from] ConnectionError),
    #[error("axioms violated:\n{0}")]
    Invalid(ValidationReport),
}

/// Dart labels in `Z^n`, indexed by dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxialFunction {
    torus_rank: usize,
    labels: Vec<IntVector>,
}

impl AxialFunction {
    pub fn new(torus_rank: usize, labels: Vec<IntVector>) -> Result<Self, AxialError> {
        for (dart, l) in labels.iter().enumerate() {
            if l.len() != torus_rank {
                return Err(AxialError::Arity { dart, expected: torus_rank, found: l.len() });
            }
        }
        Ok(AxialFunction { torus_rank, labels })
    }

    /// Labels every dart of `g`; `label` is only consulted on edge
    /// representatives and reverse darts get the negated weight.
    pub fn antisymmetric<F>(g: &OrientedGraph, torus_rank: usize, mut label: F) -> Result<Self, AxialError>
    where
        F: FnMut(usize) -> IntVector,
    {
        let mut labels = vec![Vec::new(); g.dart_count()];
        for d in g.edge_representatives() {
            let w = label(d);
            labels[g.reverse(d)] = w.iter().map(|x| -x).collect();
            labels[d] = w;
        }
        AxialFunction::new(torus_rank, labels)
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn label(&self, dart: usize) -> &[BigInt] {
        &self.labels[dart]
    }

    pub fn labels(&self) -> &[IntVector] {
        &self.labels
    }

    /// `α_(p)` in the vertex ordering.
    pub fn at_vertex(&self, g: &OrientedGraph, v: usize) -> Vec<IntVector> {
        g.out_darts(v).iter().map(|&d| self.labels[d].clone()).collect()
    }

    fn check_count(&self, g: &OrientedGraph) -> Result<(), AxialError> {
        if self.labels.len() != g.dart_count() {
            return Err(AxialError::LabelCount { expected: g.dart_count(), found: self.labels.len() });
        }
        Ok(())
    }
}

/// For each dart `e`, a bijection from the out-darts at `i(e)` to the
/// out-darts at `t(e)`, stored as `(e', ∇_e(e'))` pairs sorted by `e'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    maps: Vec<Vec<(usize, usize)>>,
}

impl Connection {
    pub fn new(mut maps: Vec<Vec<(usize, usize)>>) -> Self {
        for m in maps.iter_mut() {
            m.sort_unstable();
        }
        Connection { maps }
    }

    /// `∇_e(e')`, if defined.
    pub fn apply(&self, e: usize, e_prime: usize) -> Option<usize> {
        let m = self.maps.get(e)?;
        m.binary_search_by_key(&e_prime, |&(a, _)| a).ok().map(|i| m[i].1)
    }

    pub fn pairs(&self, e: usize) -> &[(usize, usize)] {
        &self.maps[e]
    }

    pub fn dart_count(&self) -> usize {
        self.maps.len()
    }
}

/// `Some(c)` when `diff = c * base`.
pub fn proportionality(diff: &[BigInt], base: &[BigInt]) -> Option<BigInt> {
    let c = match base.iter().position(|b| !b.is_zero()) {
        Some(k) => {
            let (q, r) = diff[k].div_rem(&base[k]);
            if !r.is_zero() {
                return None;
            }
            q
        }
        None => BigInt::zero(),
    };
    diff.iter().zip(base).all(|(d, b)| *d == &c * b).then_some(c)
}

fn difference(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn pairwise_independent(u: &[BigInt], v: &[BigInt]) -> bool {
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if &u[i] * &v[j] != &u[j] * &v[i] {
                return true;
            }
        }
    }
    false
}

/// Infers the connection from the labels alone.
///
/// For each `e` and each `e'` at `i(e)` other than `e`, the partner is the
/// unique out-dart `e''` at `t(e)` (other than the reverse of `e`) with
/// `α(e'') - α(e')` in `Z α(e)`. Unique partners exist when the weights at
/// every vertex are three-independent.
pub fn infer_connection(g: &OrientedGraph, alpha: &AxialFunction) -> Result<Connection, ConnectionError> {
    let mut maps = Vec::with_capacity(g.dart_count());
    for e in 0..g.dart_count() {
        let (p, q, rev) = (g.source(e), g.target(e), g.reverse(e));
        let base = alpha.label(e);
        let mut pairs = Vec::with_capacity(g.valence());
        for &ep in g.out_darts(p) {
            if ep == e {
                pairs.push((e, rev));
                continue;
            }
            let candidates: Vec<usize> = g
                .out_darts(q)
                .iter()
                .copied()
                .filter(|&epp| epp != rev)
                .filter(|&epp| proportionality(&difference(alpha.label(epp), alpha.label(ep)), base).is_some())
                .collect();
            match candidates.as_slice() {
                [] => {
                    return Err(ConnectionError::NoMatch {
                        dart: g.dart_id(e).into(),
                        out_dart: g.dart_id(ep).into(),
                    })
                }
                [one] => pairs.push((ep, *one)),
                many => {
                    return Err(ConnectionError::AmbiguousConnection {
                        dart: g.dart_id(e).into(),
                        out_dart: g.dart_id(ep).into(),
                        candidates: many.iter().map(|&d| g.dart_id(d).to_string()).collect(),
                    })
                }
            }
        }
        let mut images: Vec<usize> = pairs.iter().map(|&(_, b)| b).collect();
        images.sort_unstable();
        images.dedup();
        if images.len() != pairs.len() {
            return Err(ConnectionError::NotBijective { dart: g.dart_id(e).into() });
        }
        maps.push(pairs);
    }
    let conn = Connection::new(maps);
    for e in 0..g.dart_count() {
        let rev = g.reverse(e);
        for &(a, b) in conn.pairs(e) {
            if conn.apply(rev, b) != Some(a) {
                return Err(ConnectionError::InconsistentReverse { dart: g.dart_id(e).into() });
            }
        }
    }
    Ok(conn)
}

/// `c_e(e')`: the integer with `α(∇_e(e')) - α(e') = c_e(e') α(e)`.
pub fn congruence_coefficient(
    g: &OrientedGraph,
    alpha: &AxialFunction,
    conn: &Connection,
    e: usize,
    e_prime: usize,
) -> Result<BigInt, NotProportional> {
    let err = || NotProportional { dart: g.dart_id(e).into(), out_dart: g.dart_id(e_prime).into() };
    let image = conn.apply(e, e_prime).ok_or_else(err)?;
    proportionality(&difference(alpha.label(image), alpha.label(e_prime)), alpha.label(e)).ok_or_else(err)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    Antisymmetry,
    PairwiseIndependence,
    Connection,
    Effectiveness,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [
        Axiom::Antisymmetry,
        Axiom::PairwiseIndependence,
        Axiom::Connection,
        Axiom::Effectiveness,
    ];

    pub fn number(self) -> usize {
        match self {
            Axiom::Antisymmetry => 1,
            Axiom::PairwiseIndependence => 2,
            Axiom::Connection => 3,
            Axiom::Effectiveness => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::PairwiseIndependence => "pairwise independence",
            Axiom::Connection => "connection",
            Axiom::Effectiveness => "effectiveness",
        }
    }
}

/// A vertex and/or darts where an axiom fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub vertex: Option<String>,
    pub darts: Vec<String>,
    pub reason: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = &self.vertex {
            write!(f, "at vertex {v}")?;
            if !self.darts.is_empty() {
                write!(f, ", ")?;
            }
        }
        if !self.darts.is_empty() {
            write!(f, "darts {}", self.darts.join(", "))?;
        }
        write!(f, ": {}", self.reason)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomStatus {
    Passed,
    Failed(Vec<Witness>),
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub results: Vec<(Axiom, AxiomStatus)>,
}

impl ValidationReport {
    pub fn status(&self, axiom: Axiom) -> &AxiomStatus {
        &self.results.iter().find(|(a, _)| *a == axiom).expect("every axiom is reported").1
    }

    pub fn passed(&self, axiom: Axiom) -> bool {
        matches!(self.status(axiom), AxiomStatus::Passed)
    }

    pub fn witnesses(&self, axiom: Axiom) -> &[Witness] {
        match self.status(axiom) {
            AxiomStatus::Failed(w) => w,
            _ => &[],
        }
    }

    /// No axiom failed (skipped ones count as not failed).
    pub fn is_valid(&self) -> bool {
        self.results.iter().all(|(_, s)| !matches!(s, AxiomStatus::Failed(_)))
    }

    /// Every axiom was checked and passed.
    pub fn is_complete_pass(&self) -> bool {
        self.results.iter().all(|(_, s)| matches!(s, AxiomStatus::Passed))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (axiom, status)) in self.results.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "axiom ({}) {}: ", axiom.number(), axiom.name())?;
            match status {
                AxiomStatus::Passed => write!(f, "pass")?,
                AxiomStatus::Skipped => write!(f, "skipped (no connection)")?,
                AxiomStatus::Failed(ws) => {
                    write!(f, "FAIL")?;
                    for w in ws {
                        write!(f, "\n  {w}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// How axiom 4 reads "spans the weight lattice".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpanMode {
    /// Integer span is all of `Z^n`.
    #[default]
    Integer,
    /// Rational span is all of `Q^n`.
    Rational,
}

fn status(ws: Vec<Witness>) -> AxiomStatus {
    if ws.is_empty() {
        AxiomStatus::Passed
    } else {
        AxiomStatus::Failed(ws)
    }
}

/// Checks all four axioms; axiom 3 only when a connection is supplied.
pub fn validate_axial(
    g: &OrientedGraph,
    alpha: &AxialFunction,
    conn: Option<&Connection>,
    mode: SpanMode,
) -> ValidationReport {
    assert_eq!(alpha.labels.len(), g.dart_count(), "α must label every dart");
    let n = alpha.torus_rank();

    let mut anti = Vec::new();
    for e in g.edge_representatives() {
        let r = g.reverse(e);
        let negated: IntVector = alpha.label(r).iter().map(|x| -x).collect();
        if alpha.label(e) != negated.as_slice() {
            anti.push(Witness {
                vertex: None,
                darts: vec![g.dart_id(e).into(), g.dart_id(r).into()],
                reason: "α(ē) ≠ -α(e)".into(),
            });
        }
    }

    let mut pairwise = Vec::new();
    for v in 0..g.vertex_count() {
        let out = g.out_darts(v);
        for (i, &a) in out.iter().enumerate() {
            for &b in &out[i + 1..] {
                if !pairwise_independent(alpha.label(a), alpha.label(b)) {
                    pairwise.push(Witness {
                        vertex: Some(g.vertex_id(v).into()),
                        darts: vec![g.dart_id(a).into(), g.dart_id(b).into()],
                        reason: "weights are linearly dependent".into(),
                    });
                }
            }
        }
    }

    let connection = match conn {
        None => AxiomStatus::Skipped,
        Some(c) => status(connection_witnesses(g, alpha, c)),
    };

    let mut effective = Vec::new();
    for v in 0..g.vertex_count() {
        let weights = alpha.at_vertex(g, v);
        let ok = match mode {
            SpanMode::Integer => linalg::spans_integer_lattice(&weights, n),
            SpanMode::Rational => linalg::spans_rational_space(&weights, n),
        };
        if !ok {
            effective.push(Witness {
                vertex: Some(g.vertex_id(v).into()),
                darts: Vec::new(),
                reason: match mode {
                    SpanMode::Integer => format!("weights do not span Z^{n}"),
                    SpanMode::Rational => format!("weights do not span Q^{n}"),
                },
            });
        }
    }

    ValidationReport {
        results: vec![
            (Axiom::Antisymmetry, status(anti)),
            (Axiom::PairwiseIndependence, status(pairwise)),
            (Axiom::Connection, connection),
            (Axiom::Effectiveness, status(effective)),
        ],
    }
}

fn connection_witnesses(g: &OrientedGraph, alpha: &AxialFunction, conn: &Connection) -> Vec<Witness> {
    let mut ws = Vec::new();
    if conn.dart_count() != g.dart_count() {
        ws.push(Witness {
            vertex: None,
            darts: Vec::new(),
            reason: format!("connection covers {} darts, graph has {}", conn.dart_count(), g.dart_count()),
        });
        return ws;
    }
    let wit = |e: usize, reason: String| Witness {
        vertex: None,
        darts: vec![g.dart_id(e).to_string()],
        reason,
    };
    for e in 0..g.dart_count() {
        let (p, q, rev) = (g.source(e), g.target(e), g.reverse(e));
        let mut dom: Vec<usize> = conn.pairs(e).iter().map(|&(a, _)| a).collect();
        let mut cod: Vec<usize> = conn.pairs(e).iter().map(|&(_, b)| b).collect();
        dom.sort_unstable();
        cod.sort_unstable();
        let mut out_p = g.out_darts(p).to_vec();
        let mut out_q = g.out_darts(q).to_vec();
        out_p.sort_unstable();
        out_q.sort_unstable();
        if dom != out_p || cod != out_q {
            ws.push(wit(e, "∇_e is not a bijection E_i(e) → E_t(e)".into()));
            continue;
        }
        if conn.apply(e, e) != Some(rev) {
            ws.push(wit(e, "∇_e(e) ≠ ē".into()));
        }
        if conn.pairs(e).iter().any(|&(a, b)| conn.apply(rev, b) != Some(a)) {
            ws.push(wit(e, "∇_ē ≠ ∇_e⁻¹".into()));
        }
        for &(a, _) in conn.pairs(e) {
            if congruence_coefficient(g, alpha, conn, e, a).is_err() {
                ws.push(Witness {
                    vertex: None,
                    darts: vec![g.dart_id(e).into(), g.dart_id(a).into()],
                    reason: "α(∇_e(e')) - α(e') is not an integer multiple of α(e)".into(),
                });
            }
        }
    }
    ws
}

/// A validated GKM graph: graph, axial function, connection, and its
/// invariant function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gkm {
    graph: OrientedGraph,
    axial: AxialFunction,
    connection: Connection,
    invariant: InvariantFunction,
    span_mode: SpanMode,
}

impl Gkm {
    /// Validates with the integer reading of axiom 4. A missing connection
    /// is inferred.
    pub fn new(graph: OrientedGraph, axial: AxialFunction, connection: Option<Connection>) -> Result<Gkm, GkmError> {
        Gkm::with_span_mode(graph, axial, connection, SpanMode::Integer)
    }

    pub fn with_span_mode(
        graph: OrientedGraph,
        axial: AxialFunction,
        connection: Option<Connection>,
        span_mode: SpanMode,
    ) -> Result<Gkm, GkmError> {
        axial.check_count(&graph)?;
        let connection = match connection {
            Some(c) => c,
            None => infer_connection(&graph, &axial)?,
        };
        let report = validate_axial(&graph, &axial, Some(&connection), span_mode);
        if !report.is_valid() {
            return Err(GkmError::Invalid(report));
        }
        let invariant = congruence::invariant_vectors(&graph, &axial, &connection)
            .expect("axiom 3 passed, so every coefficient is an integer");
        Ok(Gkm { graph, axial, connection, invariant, span_mode })
    }

    pub fn graph(&self) -> &OrientedGraph {
        &self.graph
    }

    pub fn axial(&self) -> &AxialFunction {
        &self.axial
    }

    pub fn connection(&self) -> &Connection {
        &self.connection
    }

    pub fn invariant(&self) -> &InvariantFunction {
        &self.invariant
    }

    pub fn span_mode(&self) -> SpanMode {
        self.span_mode
    }

    /// Valence `m`.
    pub fn valence(&self) -> usize {
        self.graph.valence()
    }

    /// Torus rank `n`.
    pub fn torus_rank(&self) -> usize {
        self.axial.torus_rank()
    }

    pub fn congruence_coefficient(&self, e: usize, e_prime: usize) -> Result<BigInt, NotProportional> {
        congruence_coefficient(&self.graph, &self.axial, &self.connection, e, e_prime)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_axial(&self.graph, &self.axial, Some(&self.connection), self.span_mode)
    }

    /// Same graph and connection, different labels.
    pub fn with_axial(&self, axial: AxialFunction) -> Result<Gkm, GkmError> {
        Gkm::with_span_mode(self.graph.clone(), axial, Some(self.connection.clone()), self.span_mode)
    }

    /// Same data under different per-vertex orderings.
    pub fn reordered(&self, lists: &std::collections::BTreeMap<String, Vec<String>>) -> Result<Gkm, GkmError> {
        let graph = self.graph.with_ordering(lists)?;
        Gkm::with_span_mode(graph, self.axial.clone(), Some(self.connection.clone()), self.span_mode)
    }
}
