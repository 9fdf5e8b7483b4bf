//! Nodal geometry of eigenfunctions of Schrödinger operators on finite graphs.
//!
//! The crate computes full spectra of graph operators, extracts strong nodal
//! domains together with their region and island structure, and evaluates
//! the known upper bounds on nodal domain counts and eigenvalue multiplicities
//! numerically, one [`bounds::BoundReport`] per inequality.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod experiment;
pub mod graph;
pub mod linalg;
pub mod nodal;
pub mod spectral;
