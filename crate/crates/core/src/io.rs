//! JSON interchange format.
//!
//! ```json
//! {
//!   "torus_rank": 2,
//!   "vertices": ["p", "q"],
//!   "edges": [
//!     {"id": "e1", "endpoints": ["p", "q"], "weight": [1, 0]}
//!   ],
//!   "connection": [{"dart": "e1", "mapping": [["e1", "e1~"], ["e2", "e3~"]]}],
//!   "orderings": {"p": ["e1", "e2", "e3"]}
//! }
//! ```
//!
//! Edge `X` gives the dart `X` along `endpoints` and its reverse `X~` with the
//! negated weight. `connection` and `orderings` are optional: a missing
//! connection is inferred from the weights and missing orderings are
//! lexicographic by dart id.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axial::{infer_connection, AxialFunction, Connection, Gkm, GkmError, SpanMode};
use crate::graph::{reverse_dart_id, GraphBuilder, GraphError, OrientedGraph};
use crate::linalg::IntVector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GkmDocument {
    pub torus_rank: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<Vec<ConnectionRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orderings: Option<BTreeMap<String, Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: String,
    pub endpoints: (String, String),
    #[serde(with = "int_list")]
    pub weight: IntVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionRecord {
    pub dart: String,
    pub mapping: Vec<(String, String)>,
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("dart `{0}` does not follow the `X` / `X~` naming and cannot be written")]
    DartNaming(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gkm(#[from] GkmError),
}

/// Arbitrary-size integers as plain JSON numbers.
mod int_list {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::ser::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Number;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let nums = v
            .iter()
            .map(|x| Number::from_str(&x.to_string()).map_err(S::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        nums.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Number>::deserialize(d)?
            .iter()
            .map(|n| {
                BigInt::from_str(&n.to_string()).map_err(|_| D::Error::custom(format!("`{n}` is not an integer")))
            })
            .collect()
    }
}

/// Parses a document; graph and axiom checks happen in [`GkmDocument::to_gkm`].
pub fn parse_gkm(text: &str) -> Result<GkmDocument, IoError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let doc: GkmDocument = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        match inner.classify() {
            serde_json::error::Category::Data => IoError::Schema { path, message: strip_position(&inner) },
            _ => IoError::Parse { line: inner.line(), column: inner.column(), message: strip_position(&inner) },
        }
    })?;
    de.end().map_err(|e| IoError::Parse { line: e.line(), column: e.column(), message: strip_position(&e) })?;
    for (i, edge) in doc.edges.iter().enumerate() {
        if edge.weight.len() != doc.torus_rank {
            return Err(IoError::Schema {
                path: format!("edges[{i}].weight"),
                message: format!("expected {} entries, found {}", doc.torus_rank, edge.weight.len()),
            });
        }
    }
    Ok(doc)
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(k) => s[..k].to_string(),
        None => s,
    }
}

/// Pretty-printed JSON with arrays of scalars kept on one line.
pub fn emit_gkm(doc: &GkmDocument) -> String {
    let pretty = serde_json::to_string_pretty(doc).expect("documents always serialize");
    let mut s = inline_flat_arrays(&pretty);
    s.push('\n');
    s
}

fn inline_flat_arrays(text: &str) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '"' {
            let end = string_end(&chars, i);
            out.extend(&chars[i..end]);
            i = end;
            continue;
        }
        if c == '[' {
            if let Some((end, items)) = flat_array(&chars, i) {
                out.push('[');
                out.push_str(&items.join(", "));
                out.push(']');
                i = end;
                continue;
            }
        }
        out.push(c);
        i += 1;
    }
    out
}

/// Index just past the string literal starting at `start`.
fn string_end(chars: &[char], start: usize) -> usize {
    let mut i = start + 1;
    while i < chars.len() {
        match chars[i] {
            '\\' => i += 2,
            '"' => return i + 1,
            _ => i += 1,
        }
    }
    chars.len()
}

/// Items of the array at `start` if it holds no arrays or objects.
fn flat_array(chars: &[char], start: usize) -> Option<(usize, Vec<String>)> {
    let mut items = Vec::new();
    let mut cur = String::new();
    let mut i = start + 1;
    while i < chars.len() {
        match chars[i] {
            '"' => {
                let end = string_end(chars, i);
                cur.extend(&chars[i..end]);
                i = end;
                continue;
            }
            '[' | '{' => return None,
            ']' => {
                if !cur.is_empty() {
                    items.push(cur);
                }
                return Some((i + 1, items));
            }
            ',' => items.push(std::mem::take(&mut cur)),
            c if c.is_whitespace() => {}
            c => cur.push(c),
        }
        i += 1;
    }
    None
}

impl GkmDocument {
    /// Describes `gkm`. The connection is written only when inference would
    /// not recover it, and orderings only where they differ from the default.
    pub fn from_gkm(gkm: &Gkm) -> Result<Self, IoError> {
        let g = gkm.graph();
        let mut edges = Vec::with_capacity(g.edge_count());
        for d in g.edge_representatives() {
            let r = g.reverse(d);
            let forward = if g.dart_id(r) == reverse_dart_id(g.dart_id(d)) {
                d
            } else if g.dart_id(d) == reverse_dart_id(g.dart_id(r)) {
                r
            } else {
                return Err(IoError::DartNaming(g.dart_id(d).to_string()));
            };
            edges.push(EdgeRecord {
                id: g.dart_id(forward).to_string(),
                endpoints: (
                    g.vertex_id(g.source(forward)).to_string(),
                    g.vertex_id(g.target(forward)).to_string(),
                ),
                weight: gkm.axial().label(forward).to_vec(),
            });
        }
        edges.sort_by(|a, b| a.id.cmp(&b.id));

        let connection = match infer_connection(g, gkm.axial()) {
            Ok(c) if &c == gkm.connection() => None,
            _ => Some(
                (0..g.dart_count())
                    .map(|e| ConnectionRecord {
                        dart: g.dart_id(e).to_string(),
                        mapping: gkm
                            .connection()
                            .pairs(e)
                            .iter()
                            .map(|&(a, b)| (g.dart_id(a).to_string(), g.dart_id(b).to_string()))
                            .collect(),
                    })
                    .collect(),
            ),
        };

        let mut orderings = BTreeMap::new();
        for (v, list) in g.ordering_lists() {
            let mut sorted = list.clone();
            sorted.sort();
            if sorted != list {
                orderings.insert(v, list);
            }
        }

        Ok(GkmDocument {
            torus_rank: gkm.torus_rank(),
            vertices: g.vertex_ids().to_vec(),
            edges,
            connection,
            orderings: (!orderings.is_empty()).then_some(orderings),
        })
    }

    pub fn graph(&self) -> Result<OrientedGraph, IoError> {
        let mut b = GraphBuilder::new().vertices(self.vertices.iter().cloned());
        for e in &self.edges {
            b = b.edge(e.id.clone(), e.endpoints.0.clone(), e.endpoints.1.clone());
        }
        for (v, list) in self.orderings.iter().flatten() {
            b = b.ordering(v.clone(), list.iter().cloned());
        }
        Ok(b.build()?)
    }

    /// Graph, labels and (if present) connection, without checking axioms.
    pub fn to_parts(&self) -> Result<(OrientedGraph, AxialFunction, Option<Connection>), IoError> {
        let g = self.graph()?;
        let mut labels = vec![Vec::new(); g.dart_count()];
        for e in &self.edges {
            let d = g.dart(&e.id).expect("edge darts exist");
            labels[g.reverse(d)] = e.weight.iter().map(|x| -x).collect::<Vec<BigInt>>();
            labels[d] = e.weight.clone();
        }
        let alpha = AxialFunction::new(self.torus_rank, labels).map_err(GkmError::from)?;
        let conn = match &self.connection {
            None => None,
            Some(records) => Some(self.resolve_connection(&g, records)?),
        };
        Ok((g, alpha, conn))
    }

    fn resolve_connection(&self, g: &OrientedGraph, records: &[ConnectionRecord]) -> Result<Connection, IoError> {
        let mut maps: Vec<Option<Vec<(usize, usize)>>> = vec![None; g.dart_count()];
        let lookup = |id: &str, path: String| {
            g.dart(id).ok_or_else(|| IoError::Schema { path, message: format!("unknown dart `{id}`") })
        };
        for (i, r) in records.iter().enumerate() {
            let e = lookup(&r.dart, format!("connection[{i}].dart"))?;
            let pairs = r
                .mapping
                .iter()
                .enumerate()
                .map(|(k, (a, b))| {
                    let path = format!("connection[{i}].mapping[{k}]");
                    Ok((lookup(a, path.clone())?, lookup(b, path)?))
                })
                .collect::<Result<Vec<_>, IoError>>()?;
            if maps[e].replace(pairs).is_some() {
                return Err(IoError::Schema {
                    path: format!("connection[{i}].dart"),
                    message: format!("dart `{}` listed twice", r.dart),
                });
            }
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(e, m)| {
                m.ok_or_else(|| IoError::Schema {
                    path: "connection".into(),
                    message: format!("no entry for dart `{}`", g.dart_id(e)),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Connection::new(maps))
    }

    /// Builds and validates the GKM graph.
    pub fn to_gkm(&self, span_mode: SpanMode) -> Result<Gkm, IoError> {
        let (g, alpha, conn) = self.to_parts()?;
        Ok(Gkm::with_span_mode(g, alpha, conn, span_mode)?)
    }
}
