//! Text formats, seeded instance generation and DOT export.
//!
//! Documents are line oriented. A header line opens a document and the lines
//! after it, up to the next header, fill it in:
//!
//! ```text
//! # the diamond, given by its covering pairs
//! lattice d lattice
//! elements 0 a b 1
//! le 0 a
//! le 0 b
//! le a 1
//! le b 1
//!
//! lattice v poset-downsets      # downsets of a two-point antichain
//! elements p q
//!
//! relation r d
//! pair 0 a
//!
//! map f d v                     # to b x:  f⁻(b) = x
//! basis {p} {q}
//! to {p} a
//! to {q} b
//!
//! compactification k d
//! maps f
//! ```
//!
//! Element order is declaration order in `lattice` mode and increasing
//! downset mask in `poset-downsets` mode, where elements are named
//! `{p,q}`-style after their points.

mod dot;
mod format;
mod generate;
mod resolve;

pub use dot::{export_dot, export_frame_dot};
pub use format::{
    parse, render_all, CompactificationDocument, Document, LatticeDocument, MapDocument, Mode, RelationDocument,
};
pub use generate::{
    generate, generate_downsets, random_interpolating_seed, random_monotone, random_poset, random_subrelation, rng,
    MAX_GENERATED_POINTS,
};
pub use resolve::{
    build_lattice, compactification_document, lattice_document, map_document, parse_lattice, poset_document,
    relation_document, Bundle,
};
