//! conelab — metric projections onto closed convex cones and the order
//! structure they induce.
//!
//! The library provides:
//!
//! - a catalog of cone descriptors (orthant, Lorentz, monotone, finitely
//!   generated, halfspace intersection, symbolic dual) with membership and
//!   the induced pre-order x ≤_K y ⟺ y − x ∈ K ([`cone`]);
//! - metric projections for every descriptor and the Moreau decomposition
//!   x = P_K(x) − P_{K*}(−x) with ⟨P_K(x), P_{K*}(−x)⟩ = 0 ([`projection`]);
//! - the lattice-like operations x ⊓_K y = P_{x−K}(y), x ⊔_K y = P_{x+K}(y)
//!   and their dual-cone analogues, plus a sampled invariance checker
//!   ([`lattice`]);
//! - seeded randomized falsifiers for isotonicity and subadditivity of
//!   projections, and for the duality "P_K is K-isotone ⟺ P_{K*} is
//!   K*-subadditive" ([`order`]);
//! - a projection fixed-point solver x ← P_K(x − αf(x)) for cone
//!   complementarity problems ([`ncp`]).
//!
//! All randomness is seeded and per-sample, so every check is reproducible
//! bit for bit on a given platform.

pub mod cone;
pub mod error;
mod vecs;
pub mod lattice;
pub mod ncp;
pub mod order;
pub mod projection;
pub mod sample;

pub use cone::{catalog, dual, leq, membership, ConeDescriptor, Direction, Tolerance};
pub use error::{ConeError, Result};
pub use lattice::{check_invariance, lattice_op, OpKind};
pub use ncp::{NcpInstance, NcpMap, NcpProblem, NcpSolution};
pub use order::{
    check_cross_subadditive, check_duality, check_isotone, check_subadditive, reverify_witness,
    Property, PropertyReport, Verdict, Witness,
};
pub use projection::{
    distance, moreau_decompose, project, project_translated, Method, ProjectionResult, Sign,
};
