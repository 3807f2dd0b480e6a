//! qmw: a workbench for finite medial quandles.
//!
//! A medial quandle decomposes into an affine mesh: a family of finite
//! abelian groups connected by homomorphisms and constants whose sum
//! operation reconstructs the quandle. This crate builds quandles from
//! tables or meshes, decomposes them back, decides isomorphism through
//! mesh homology, classifies structural properties, and counts or lists
//! isomorphism classes order by order.
//!
//! See the `examples/` directory for one runnable walkthrough per
//! capability, or the `qmw` binary for the same operations on files.

pub mod abelian;
pub mod classify;
pub mod cli;
pub mod enumerate;
pub mod mesh;
pub mod perm;
pub mod quandle;
