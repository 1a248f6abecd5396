//! Finite pointfree topology.
//!
//! The crate works with finite pseudocomplemented distributive lattices
//! (pcd-lattices) and the structure built on top of them:
//!
//! - [`fixpoint`]: least and greatest fixpoints of finite inductive definitions;
//! - [`lattice`]: pcd-lattices, bases, pseudocomplements, the well-inside
//!   relation, regularity and compactness checks, sub-pcd-lattice closure;
//! - [`relation`]: interpolative cores, strong inclusions, scales;
//! - [`framemap`]: continuous maps given by their inverse image on a basis;
//! - [`compactify`]: round-ideal frames, the map `μ`, extension of maps,
//!   compactifications and their ordering;
//! - [`io`]: text formats, random instance generation and DOT export.
//!
//! Everything is finite and exhaustively checkable. Heavy inner loops use
//! rayon when the `parallel` feature is enabled (the default); see [`par`].

pub mod check;
pub mod compactify;
mod error;
pub mod fixpoint;
pub mod framemap;
pub mod io;
pub mod lattice;
pub mod par;
pub mod relation;

pub use error::{Error, Precondition, Result};

/// Index of an element inside a [`lattice::PcdLattice`].
pub type Elem = usize;
