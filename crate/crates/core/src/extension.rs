//! Extending an axial function to a larger torus, projecting it back down,
//! and recognising extensions.
//!
//! An extension of `(Γ, α, ∇)` is `(Γ, α̃, ∇)` with `α̃` in `Z^ℓ` and an
//! integer matrix `π` with `π α̃ = α` on every dart. Elements `f_1, ..., f_ℓ`
//! of the group of axial functions give `α̃(e_{j,p}) = (f_1(p)_j, ..., f_ℓ(p)_j)`;
//! starting from the elements read off `α` itself makes `π = [I_n | 0]`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::axgroup::{axial_group_basis, canonical_elements, AxialElement, SolveMethod};
use crate::axial::{validate_axial, Axiom, AxialFunction, Connection, Gkm, GkmError, SpanMode, ValidationReport};
use crate::graph::OrientedGraph;
use crate::linalg::{self, IntVector, IntegerMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("target rank {target} exceeds the rank {rank} of the group of axial functions")]
    RankExceeded { target: usize, rank: usize },
    #[error("target rank {target} is below the torus rank {torus_rank}")]
    BelowBaseRank { target: usize, torus_rank: usize },
    #[error("extended weights do not span the lattice at vertex `{vertex}`")]
    EffectivenessUnachievable { vertex: String },
    #[error("projection is {rows}x{cols}; it needs {expected_cols} columns and at most as many rows")]
    ProjectionShape { rows: usize, cols: usize, expected_cols: usize },
    #[error("projection is not onto Z^{0}")]
    NotSurjective(usize),
    #[error("projected weights break the axioms:\n{0}")]
    AxiomViolation(ValidationReport),
    #[error("graphs or orderings differ")]
    GraphMismatch,
    #[error(transparent)]
    Gkm(#[from] GkmError),
}

/// A validated extension built from elements of the group.
#[derive(Debug, Clone)]
pub struct ExtensionResult {
    pub gkm: Gkm,
    /// `[I_n | 0]`, so `projection * α̃(e) = α(e)`.
    pub projection: IntegerMatrix,
    pub chosen_elements: Vec<AxialElement>,
    pub report: ValidationReport,
    /// The completion had to be replaced by the saturation of its span.
    pub saturated: bool,
}

impl ExtensionResult {
    pub fn extended_axial(&self) -> &AxialFunction {
        self.gkm.axial()
    }
}

/// Weights `α̃(e_{j,p}) = (f_1(p)_j, ..., f_ℓ(p)_j)`.
pub fn axial_from_elements(gkm: &Gkm, elements: &[AxialElement]) -> AxialFunction {
    let g = gkm.graph();
    let mut labels = vec![Vec::new(); g.dart_count()];
    for (d, label) in labels.iter_mut().enumerate() {
        let (p, j) = (g.source(d), g.position(d));
        *label = elements.iter().map(|f| f.at(p)[j].clone()).collect();
    }
    AxialFunction::new(elements.len(), labels).expect("every label has one entry per element")
}

fn coordinate_projection(n: usize, l: usize) -> IntegerMatrix {
    let mut pi = IntegerMatrix::zeros(n, l);
    for i in 0..n {
        pi[(i, i)] = BigInt::one();
    }
    pi
}

/// Extends `gkm` to an `(m, target)`-type GKM graph with the same graph and
/// connection.
pub fn extend_axial(gkm: &Gkm, target: usize) -> Result<ExtensionResult, ExtensionError> {
    let n = gkm.torus_rank();
    let m = gkm.valence();
    if target < n {
        return Err(ExtensionError::BelowBaseRank { target, torus_rank: n });
    }
    let basis = axial_group_basis(gkm, SolveMethod::Propagate);
    if target > basis.rank {
        return Err(ExtensionError::RankExceeded { target, rank: basis.rank });
    }

    let base: Vec<AxialElement> = canonical_elements(gkm);
    let base_flat: Vec<IntVector> = base.iter().map(AxialElement::flatten).collect();
    let completion = linalg::complete_inside_lattice(&base_flat, &basis.flat_vectors())
        .expect("the label elements lie in the group and are independent");
    if !completion.index.is_one() {
        log::warn!("label elements span a sublattice of index {} in their saturation", completion.index);
    }
    let mut chosen = base.clone();
    chosen.extend(completion.completion.iter().take(target - n).map(|v| AxialElement::from_flat(v, m)));

    let attempt = try_extension(gkm, &chosen)?;
    let (ext, chosen, saturated) = match attempt {
        Ok(ext) => (ext, chosen, false),
        Err(report) => {
            log::info!("extension fails axiom 4; retrying with the saturation of the chosen span");
            let dim = m * gkm.graph().vertex_count();
            let flat: Vec<IntVector> = chosen.iter().map(AxialElement::flatten).collect();
            let sat = saturation(&flat, dim);
            let retry = linalg::complete_inside_lattice(&base_flat, &sat).expect("label elements lie in the saturation");
            let mut chosen = base;
            chosen.extend(retry.completion.iter().map(|v| AxialElement::from_flat(v, m)));
            match try_extension(gkm, &chosen)? {
                Ok(ext) => (ext, chosen, true),
                Err(second) => return Err(unachievable(if second.is_valid() { report } else { second })),
            }
        }
    };
    let report = ext.validate();
    Ok(ExtensionResult {
        gkm: ext,
        projection: coordinate_projection(n, target),
        chosen_elements: chosen,
        report,
        saturated,
    })
}

fn try_extension(gkm: &Gkm, chosen: &[AxialElement]) -> Result<Result<Gkm, ValidationReport>, ExtensionError> {
    match gkm.with_axial(axial_from_elements(gkm, chosen)) {
        Ok(ext) => Ok(Ok(ext)),
        Err(GkmError::Invalid(report)) => Ok(Err(report)),
        Err(e) => Err(e.into()),
    }
}

fn unachievable(report: ValidationReport) -> ExtensionError {
    let only_effectiveness = Axiom::ALL
        .iter()
        .all(|&a| a == Axiom::Effectiveness || report.passed(a));
    match report.witnesses(Axiom::Effectiveness).first().and_then(|w| w.vertex.clone()) {
        Some(vertex) if only_effectiveness => ExtensionError::EffectivenessUnachievable { vertex },
        _ => ExtensionError::AxiomViolation(report),
    }
}

/// Basis of `Q-span(vectors) ∩ Z^dim`.
fn saturation(vectors: &[IntVector], dim: usize) -> Vec<IntVector> {
    let orth = linalg::integer_kernel_basis(&IntegerMatrix::from_rows(vectors.to_vec(), dim));
    if orth.is_empty() {
        return (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
    }
    linalg::integer_kernel_basis(&IntegerMatrix::from_rows(orth, dim))
}

/// `(Γ, π α, ∇)` for an integer surjection `π: Z^ℓ -> Z^n`.
pub fn project_axial(gkm: &Gkm, pi: &IntegerMatrix) -> Result<Gkm, ExtensionError> {
    let l = gkm.torus_rank();
    let n = pi.rows();
    if pi.cols() != l || n > l {
        return Err(ExtensionError::ProjectionShape {
            rows: pi.rows(),
            cols: pi.cols(),
            expected_cols: l,
        });
    }
    let factors = linalg::invariant_factors(pi);
    if factors.len() != n || !factors.iter().all(One::is_one) {
        return Err(ExtensionError::NotSurjective(n));
    }
    let labels = gkm.axial().labels().iter().map(|w| pi.mul_vec(w)).collect();
    let alpha = AxialFunction::new(n, labels).expect("π has n rows");
    match gkm.with_axial(alpha) {
        Ok(g) => Ok(g),
        Err(GkmError::Invalid(report)) => Err(ExtensionError::AxiomViolation(report)),
        Err(e) => Err(e.into()),
    }
}

/// Outcome of [`verify_extension`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionCheck {
    pub is_extension: bool,
    /// `π` with `π α̃ = α` on every dart, when one exists.
    pub projection: Option<IntegerMatrix>,
    pub reason: Option<String>,
}

impl ExtensionCheck {
    fn no(reason: impl Into<String>) -> Self {
        ExtensionCheck { is_extension: false, projection: None, reason: Some(reason.into()) }
    }
}

/// Decides whether `candidate` is an extension of `base`.
pub fn verify_extension(base: &Gkm, candidate: &Gkm) -> Result<ExtensionCheck, ExtensionError> {
    verify_extension_parts(base, candidate.graph(), candidate.axial(), candidate.connection())
}

/// [`verify_extension`] for candidate data that has not been validated.
pub fn verify_extension_parts(
    base: &Gkm,
    graph: &OrientedGraph,
    axial: &AxialFunction,
    connection: &Connection,
) -> Result<ExtensionCheck, ExtensionError> {
    if !base.graph().same_structure(graph) || axial.labels().len() != graph.dart_count() {
        return Err(ExtensionError::GraphMismatch);
    }
    if connection != base.connection() {
        return Ok(ExtensionCheck::no("connections differ"));
    }
    let report = validate_axial(graph, axial, Some(connection), SpanMode::Integer);
    if !report.is_valid() {
        let failed: Vec<&str> = Axiom::ALL.iter().filter(|&&a| !report.passed(a)).map(|a| a.name()).collect();
        return Ok(ExtensionCheck::no(format!("candidate fails: {}", failed.join(", "))));
    }
    // α̃^T X = α^T over all darts; π = X^T
    let l = axial.torus_rank();
    let n = base.torus_rank();
    let lhs = IntegerMatrix::from_rows(axial.labels().to_vec(), l);
    let rhs = IntegerMatrix::from_rows(base.axial().labels().to_vec(), n);
    match linalg::solve_integer(&lhs, &rhs) {
        Some(x) => {
            let pi = x.transpose();
            let commutes = (0..graph.dart_count()).all(|d| pi.mul_vec(axial.label(d)) == base.axial().label(d));
            if commutes {
                Ok(ExtensionCheck { is_extension: true, projection: Some(pi), reason: None })
            } else {
                Ok(ExtensionCheck::no("no integer projection carries the candidate weights to the base weights"))
            }
        }
        None => Ok(ExtensionCheck::no("no integer projection carries the candidate weights to the base weights")),
    }
}
