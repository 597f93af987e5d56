//! Computational tools for the stability of circulant graphs.
//!
//! A graph Γ is stable when Aut(Γ×K₂) = Aut(Γ)×ℤ₂. This crate decides
//! stability of circulants Cay(ℤ_n, S) both by brute-force automorphism
//! computation and by arithmetic criteria, and checks the supporting algebra:
//! two-fold automorphisms, Schur rings, chain automorphisms, the replacement
//! property and first cohomology of permutation modules over F₂.

pub mod chains;
pub mod cohomology;
pub mod error;
pub mod gf2;
pub mod graph;
mod json;
pub mod perm;
pub mod permgrp;
pub mod schur;
pub mod twofold;
pub mod zn;

pub use error::{Error, Result};
