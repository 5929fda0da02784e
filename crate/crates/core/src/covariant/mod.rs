//! The exterior-power covariant `T_k(A) = B_1 ∧ … ∧ B_{n−k−1}` with
//! `B_i = A^i − Tr(A^i)/n·I`, weighted sum-of-squares certificates built from
//! its Plücker coordinates, the commutator map `γ`, and the highest-weight
//! witness.

pub mod basis;
pub mod certificate;
pub mod gamma;
mod minors;
pub mod sample;
pub mod symbolic;
pub mod wedge;
pub mod witness;

pub use basis::{trace_zero_basis, BasisElement, TraceZeroBasis};
pub use certificate::{emit_certificate, CertPoly, SosCertificate, SosTerm, Verification};
pub use gamma::{gamma_apply, kernel_containment, rank_of_tk_star, GammaImage, KernelReport};
pub use sample::{cayley, partitions, random_orthogonal, random_symmetric, sample_ek};
pub use wedge::{
    compute_tk, compute_tk_in, gram_sos_value, proportionality_constant, proportionality_constant_with,
    vanishing_test, WedgeVector,
};
pub use witness::{highest_weight_witness, torus_weight_check, HighestWeightWitness};
