//! GKM graphs, their group of axial functions, and maximal extensions of
//! their axial functions.

pub mod axgroup;
pub mod axial;
pub mod cli;
pub mod extension;
pub mod congruence;
pub mod dot;
pub mod families;
pub mod graph;
pub mod io;
pub mod linalg;

pub use axgroup::{axial_group_basis, AxialElement, AxialGroupBasis, SolveMethod};
pub use axial::{AxialFunction, Connection, Gkm, GkmError, SpanMode, ValidationReport};
pub use graph::{GraphBuilder, OrientedGraph};
pub use linalg::{IntVector, IntegerMatrix};
