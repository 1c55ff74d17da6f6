//! Connected regular multigraphs built from darts (oriented half-edges).
//!
//! Every undirected edge contributes two darts exchanged by the reversal
//! involution. Parallel edges are allowed, loops are not. Vertices and darts
//! carry string ids; internally they are addressed by dense indices.

use std::collections::{BTreeMap, HashMap, VecDeque};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("dart `{dart}` is a loop at vertex `{vertex}`")]
    LoopEdge { dart: String, vertex: String },
    #[error("graph is disconnected: vertex `{vertex}` is unreachable from `{root}`")]
    Disconnected { root: String, vertex: String },
    #[error("vertex `{vertex}` has {found} out-darts, expected {expected}")]
    NonRegular {
        vertex: String,
        expected: usize,
        found: usize,
    },
    #[error("reversal is not a fixed-point-free involution swapping endpoints at dart `{dart}`")]
    BadInvolution { dart: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown dart `{0}`")]
    UnknownDart(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("ordering at vertex `{vertex}` is not a permutation of its out-darts")]
    BadOrdering { vertex: String },
    #[error("graph has no vertices")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dart {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// Per-vertex order of the out-darts, plus each dart's position in the
/// order at its source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrdering {
    out: Vec<Vec<usize>>,
    position: Vec<usize>,
}

impl VertexOrdering {
    fn from_lists(out: Vec<Vec<usize>>, dart_count: usize) -> Self {
        let mut position = vec![usize::MAX; dart_count];
        for list in &out {
            for (j, &d) in list.iter().enumerate() {
                position[d] = j;
            }
        }
        VertexOrdering { out, position }
    }

    pub fn out_darts(&self, vertex: usize) -> &[usize] {
        &self.out[vertex]
    }

    pub fn position(&self, dart: usize) -> usize {
        self.position[dart]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    vertices: Vec<String>,
    darts: Vec<Dart>,
    reversal: Vec<usize>,
    valence: usize,
    ordering: VertexOrdering,
    vertex_index: HashMap<String, usize>,
    dart_index: HashMap<String, usize>,
}

impl OrientedGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn dart_count(&self) -> usize {
        self.darts.len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn valence(&self) -> usize {
        self.valence
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn dart_id(&self, d: usize) -> &str {
        &self.darts[d].id
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn dart(&self, id: &str) -> Option<usize> {
        self.dart_index.get(id).copied()
    }

    pub fn source(&self, d: usize) -> usize {
        self.darts[d].source
    }

    pub fn target(&self, d: usize) -> usize {
        self.darts[d].target
    }

    pub fn reverse(&self, d: usize) -> usize {
        self.reversal[d]
    }

    pub fn ordering(&self) -> &VertexOrdering {
        &self.ordering
    }

    /// Out-darts of `v` in the vertex ordering.
    pub fn out_darts(&self, v: usize) -> &[usize] {
        self.ordering.out_darts(v)
    }

    /// Index of `d` in the ordering of its source vertex.
    pub fn position(&self, d: usize) -> usize {
        self.ordering.position(d)
    }

    /// One dart per undirected edge: the lower-indexed one of each pair.
    pub fn edge_representatives(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.darts.len()).filter(move |&d| d < self.reversal[d])
    }

    /// Vertex with the lexicographically smallest id.
    pub fn smallest_vertex(&self) -> usize {
        (0..self.vertices.len())
            .min_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b]))
            .expect("graph has vertices")
    }

    /// Breadth-first spanning tree from `root`, scanning out-darts by id.
    /// Returns the visit order and, for each non-root vertex, the tree dart
    /// that reaches it.
    pub fn bfs_tree(&self, root: usize) -> (Vec<usize>, Vec<Option<usize>>) {
        let mut parent = vec![None; self.vertices.len()];
        let mut seen = vec![false; self.vertices.len()];
        let mut order = Vec::with_capacity(self.vertices.len());
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut out: Vec<usize> = self.out_darts(v).to_vec();
            out.sort_by(|&a, &b| self.darts[a].id.cmp(&self.darts[b].id));
            for d in out {
                let w = self.darts[d].target;
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        (order, parent)
    }

    /// Same graph with new per-vertex orderings (lists of dart ids).
    pub fn with_ordering(&self, lists: &BTreeMap<String, Vec<String>>) -> Result<OrientedGraph, GraphError> {
        let out = resolve_orderings(self, lists)?;
        let mut g = self.clone();
        g.ordering = VertexOrdering::from_lists(out, self.darts.len());
        Ok(g)
    }

    /// Orderings as id lists, keyed by vertex id.
    pub fn ordering_lists(&self) -> BTreeMap<String, Vec<String>> {
        (0..self.vertices.len())
            .map(|v| {
                (
                    self.vertices[v].clone(),
                    self.out_darts(v).iter().map(|&d| self.darts[d].id.clone()).collect(),
                )
            })
            .collect()
    }

    /// True when both graphs have the same vertices, darts, reversal and
    /// orderings (ids included).
    pub fn same_structure(&self, other: &OrientedGraph) -> bool {
        self.vertices == other.vertices
            && self.darts == other.darts
            && self.reversal == other.reversal
            && self.ordering == other.ordering
    }
}

fn resolve_orderings(
    g: &OrientedGraph,
    lists: &BTreeMap<String, Vec<String>>,
) -> Result<Vec<Vec<usize>>, GraphError> {
    let mut out: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| g.out_darts(v).to_vec()).collect();
    for (vid, list) in lists {
        let v = g.vertex(vid).ok_or_else(|| GraphError::UnknownVertex(vid.clone()))?;
        let mut resolved = Vec::with_capacity(list.len());
        for id in list {
            let d = g.dart(id).ok_or_else(|| GraphError::UnknownDart(id.clone()))?;
            resolved.push(d);
        }
        let mut a = resolved.clone();
        a.sort_unstable();
        let mut b = out[v].clone();
        b.sort_unstable();
        if a != b {
            return Err(GraphError::BadOrdering { vertex: vid.clone() });
        }
        out[v] = resolved;
    }
    Ok(out)
}

/// Incremental description of a graph; `build` checks every invariant.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    darts: Vec<(String, String, String, String)>,
    orderings: BTreeMap<String, Vec<String>>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: impl Into<String>) -> Self {
        self.vertices.push(id.into());
        self
    }

    pub fn vertices<I, S>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertices.extend(ids.into_iter().map(Into::into));
        self
    }

    /// Undirected edge `id` from `a` to `b`: darts `id` (a to b) and `id~`.
    pub fn edge(self, id: impl Into<String>, a: impl Into<String>, b: impl Into<String>) -> Self {
        let id = id.into();
        let rev = reverse_dart_id(&id);
        self.dart_pair(id, rev, a, b)
    }

    /// Explicit pair of mutually reverse darts `forward: a -> b`, `backward: b -> a`.
    pub fn dart_pair(
        mut self,
        forward: impl Into<String>,
        backward: impl Into<String>,
        a: impl Into<String>,
        b: impl Into<String>,
    ) -> Self {
        self.darts.push((forward.into(), backward.into(), a.into(), b.into()));
        self
    }

    pub fn ordering<I, S>(mut self, vertex: impl Into<String>, darts: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.orderings
            .insert(vertex.into(), darts.into_iter().map(Into::into).collect());
        self
    }

    pub fn build(self) -> Result<OrientedGraph, GraphError> {
        if self.vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut vertex_index = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateId(v.clone()));
            }
        }
        let lookup = |id: &str| {
            vertex_index
                .get(id)
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
        };
        let mut darts = Vec::with_capacity(2 * self.darts.len());
        let mut reversal = Vec::with_capacity(2 * self.darts.len());
        for (fwd, bwd, a, b) in &self.darts {
            let (s, t) = (lookup(a)?, lookup(b)?);
            if s == t {
                return Err(GraphError::LoopEdge {
                    dart: fwd.clone(),
                    vertex: a.clone(),
                });
            }
            if fwd == bwd {
                return Err(GraphError::BadInvolution { dart: fwd.clone() });
            }
            let k = darts.len();
            darts.push(Dart { id: fwd.clone(), source: s, target: t });
            darts.push(Dart { id: bwd.clone(), source: t, target: s });
            reversal.push(k + 1);
            reversal.push(k);
        }
        let mut dart_index = HashMap::new();
        for (i, d) in darts.iter().enumerate() {
            if dart_index.insert(d.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateId(d.id.clone()));
            }
        }
        build_checked(self.vertices, darts, reversal, vertex_index, dart_index, &self.orderings)
    }
}

/// Builds from raw darts and an explicit reversal table, checking that the
/// table is a fixed-point-free involution that swaps endpoints.
pub fn build_from_darts(
    vertices: Vec<String>,
    darts: Vec<(String, String, String)>,
    reversal: &[(String, String)],
    orderings: &BTreeMap<String, Vec<String>>,
) -> Result<OrientedGraph, GraphError> {
    if vertices.is_empty() {
        return Err(GraphError::Empty);
    }
    let mut vertex_index = HashMap::new();
    for (i, v) in vertices.iter().enumerate() {
        if vertex_index.insert(v.clone(), i).is_some() {
            return Err(GraphError::DuplicateId(v.clone()));
        }
    }
    let mut ds = Vec::with_capacity(darts.len());
    let mut dart_index = HashMap::new();
    for (id, a, b) in darts {
        let s = *vertex_index.get(&a).ok_or_else(|| GraphError::UnknownVertex(a.clone()))?;
        let t = *vertex_index.get(&b).ok_or_else(|| GraphError::UnknownVertex(b.clone()))?;
        if s == t {
            return Err(GraphError::LoopEdge { dart: id, vertex: a });
        }
        if dart_index.insert(id.clone(), ds.len()).is_some() {
            return Err(GraphError::DuplicateId(id));
        }
        ds.push(Dart { id, source: s, target: t });
    }
    let mut rev = vec![usize::MAX; ds.len()];
    for (x, y) in reversal {
        let dx = *dart_index.get(x).ok_or_else(|| GraphError::UnknownDart(x.clone()))?;
        let dy = *dart_index.get(y).ok_or_else(|| GraphError::UnknownDart(y.clone()))?;
        for (from, to) in [(dx, dy), (dy, dx)] {
            if rev[from] != usize::MAX && rev[from] != to {
                return Err(GraphError::BadInvolution { dart: ds[from].id.clone() });
            }
            rev[from] = to;
        }
    }
    for d in 0..ds.len() {
        let r = rev[d];
        if r == usize::MAX || r == d || rev[r] != d || ds[r].source != ds[d].target || ds[r].target != ds[d].source {
            return Err(GraphError::BadInvolution { dart: ds[d].id.clone() });
        }
    }
    build_checked(vertices, ds, rev, vertex_index, dart_index, orderings)
}

fn build_checked(
    vertices: Vec<String>,
    darts: Vec<Dart>,
    reversal: Vec<usize>,
    vertex_index: HashMap<String, usize>,
    dart_index: HashMap<String, usize>,
    orderings: &BTreeMap<String, Vec<String>>,
) -> Result<OrientedGraph, GraphError> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for (i, d) in darts.iter().enumerate() {
        out[d.source].push(i);
    }
    for list in out.iter_mut() {
        list.sort_by(|&a, &b| darts[a].id.cmp(&darts[b].id));
    }
    let valence = out[0].len();
    for (v, list) in out.iter().enumerate() {
        if list.len() != valence {
            return Err(GraphError::NonRegular {
                vertex: vertices[v].clone(),
                expected: valence,
                found: list.len(),
            });
        }
    }
    let dart_count = darts.len();
    let mut g = OrientedGraph {
        vertices,
        darts,
        reversal,
        valence,
        ordering: VertexOrdering::from_lists(out, dart_count),
        vertex_index,
        dart_index,
    };
    let (order, _) = g.bfs_tree(0);
    if order.len() != g.vertices.len() {
        let mut seen = vec![false; g.vertices.len()];
        for v in order {
            seen[v] = true;
        }
        let missing = seen.iter().position(|s| !s).unwrap_or(0);
        return Err(GraphError::Disconnected {
            root: g.vertices[0].clone(),
            vertex: g.vertices[missing].clone(),
        });
    }
    if !orderings.is_empty() {
        let out = resolve_orderings(&g, orderings)?;
        g.ordering = VertexOrdering::from_lists(out, dart_count);
    }
    Ok(g)
}

/// Id of the reverse dart of edge `id` under the `X` / `X~` convention.
pub fn reverse_dart_id(id: &str) -> String {
    format!("{id}~")
}
