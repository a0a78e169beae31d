//! Delzant polytopes, closures of complex subtori, and submanifolds with
//! corners.
//!
//! Given a Delzant polytope and a rational-slope affine subspace V of R^n,
//! this crate builds the per-vertex monomial defining systems for the
//! closure of the subtorus C(V) (complex side) and for the closure of
//! D(V) = Phi^{-1}(V) in the polytope (symplectic side), decides whether
//! those closures are smooth by stratified Jacobian rank analysis,
//! enumerates the codimension-1 slopes that pass at every vertex, and
//! computes Legendre transforms, traced D(V) curves, and their
//! intersections.
//!
//! Modules:
//! - [`lattice`]: exact integer linear algebra (HNF, SNF, kernels).
//! - [`polytope`]: Delzant validation, vertex charts, transitions.
//! - [`subspace`]: affine subspaces, orthogonal bases, defining systems,
//!   the subtorus action.
//! - [`smoothness`]: stratified rank analysis and the embedding decision.
//! - [`classify`]: standard local models and codimension-1 classification.
//! - [`geometry`]: Guillemin potential, Legendre kernels, curves,
//!   intersections.
//! - [`io`]: file formats, argument grammars, CSV/SVG output.

pub mod catalog;
pub mod classify;
pub mod geometry;
pub mod io;
pub mod lattice;
pub mod polytope;
pub mod smoothness;
pub mod subspace;
pub mod tol;

pub use classify::{classify_codim1, local_model_member, transport_slope, ClassificationSet};
pub use geometry::{intersect_curves, legendre_inverse, potential_grad, trace_curve};
pub use lattice::{
    hermite_normal_form, integer_kernel_basis, primitive_part, smith_invariant_factors,
    unimodular_inverse, IntMatrix, PrimitiveVec,
};
pub use polytope::{DelzantPolytope, Halfspace, VertexChart};
pub use smoothness::{analyze_vertex, is_embedded_toric, AnalysisConfig, SmoothnessVerdict};
pub use subspace::{
    build_system, eval_system, jacobian, ortho_basis, AffineSubspace, ExponentSystem, OrthoBasis,
    Side, TorusElement,
};
