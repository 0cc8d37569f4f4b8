//! The discrete KdV hierarchy, its extension by the `t¹_d` flows, and the
//! changes of variables relating it to the hierarchy of topological type and
//! to the DR hierarchy.

mod dr;
mod lax;
mod miura;
mod nogo;
mod qcb;
mod reconstruct;

pub use dr::{dr_checks, dr_flows, DrReport};
pub use lax::{dispersionless_dk2_coefficient, dkdv_flow, lax_flows};
pub use miura::{chart_map, miura_transport, Chart, MiuraMap};
pub use nogo::{nogo_check, nogo_commutator, NogoReport};
pub use qcb::{
    b_tilde_antisymmetry_residual, build_qcb, lambda_identity_residual, q_binomial_identity_residual, qcb_commutator_parts,
    qcb_explicit_parts, topological_flows, Qcb,
};
pub use reconstruct::{
    extended_flow, reconstruct_extended_flow, seed_coefficient, OrderCertificate, Reconstruction,
};

use crate::diffpoly::DiffPoly;
use crate::evenop::{make_named, EvenOp, NamedOp};

/// Number of `ε²` steps an even operator needs to act exactly at truncation
/// `trunc`.
pub(crate) fn op_depth(trunc: u32) -> usize {
    (trunc / 2) as usize
}

pub(crate) fn named(name: NamedOp, trunc: u32) -> EvenOp {
    make_named(name, op_depth(trunc))
}

/// Applies `K` to `p` with enough terms for `p`'s truncation.
pub(crate) fn apply_named(name: NamedOp, p: &DiffPoly) -> DiffPoly {
    named(name, p.truncation()).apply(p)
}
