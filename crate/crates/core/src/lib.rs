//! Virtual spatial graphs as decorated Gauss codes.
//!
//! A [`VsgCode`] records a directed multigraph together with the sequence of
//! classical crossings met along each edge and the cyclic order of edge ends
//! at each vertex. Everything else is derived from it: planar diagrams with
//! virtual crossings ([`realize`]), Reidemeister move rewriting ([`moves`]),
//! and the invariants in [`yamada`], [`group`], [`quandle`] and [`links`].

pub mod catalog;
pub mod code;
pub mod diagram;
pub mod error;
pub mod group;
pub mod links;
pub mod moves;
pub mod poly;
pub mod quandle;
pub mod realize;
pub mod yamada;

pub use code::{
    arrow_sets, canonical_form, shadow, validate, Arrow, ArrowSets, Edge, End, HalfEdge,
    Passage, Role, ShadowCode, Sign, ValidationReport, Violation, VsgCode,
};
pub use error::{Error, Result};
pub use poly::LaurentPoly;
