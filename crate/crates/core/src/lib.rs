//! Exact spectral data of commuting matrix tuples over the rationals.
//!
//! A d-tuple of commuting n×n rational matrices determines a zero-cycle of
//! length n in affine d-space (its joint generalized eigenvalues with
//! multiplicities). This crate computes that cycle, the polarization of a
//! tuple (the coefficients of the characteristic polynomial of a symbolic
//! linear combination of the matrices, as homogeneous forms in the d
//! direction variables), and decides whether a given coefficient vector is
//! the Chow point of some cycle. Everything is exact: scalars are
//! arbitrary-precision rationals and every comparison is structural
//! equality, never a tolerance.
//!
//! The crate is `no_std` (with `alloc`); IO, JSON formats, and the command
//! line front end live in the companion `sdtool` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod chow;
pub mod commuting;
pub mod error;
pub mod linalg;
pub mod multiform;
pub mod rational;

pub use chow::{
    attach_point, b_membership, cayley_fiber_length, chow_point, f_v_poly, sd_consistency,
    spectral_data, MembershipResult, Poly, SdReport, ZeroCycle,
};
pub use commuting::{
    cayley_hamilton_verify, check_commute, conjugate_tuple, gld_transform, polarize,
    random_commuting, trace_word, verify_trace_identity, ChVerification, CommutingTuple,
    GenProfile, MatrixTuple,
};
pub use error::{CommuteWitness, Error};
pub use linalg::{
    char_poly, generalized_eigenspace, kernel_basis, rational_roots, Matrix, UniPoly,
};
pub use multiform::{
    elementary_symmetric_forms, newton_power_sums, rank_one_quadratic_test, BasePoint, Monomial,
    MultiForm, RankOneResult,
};
pub use rational::Rat;
