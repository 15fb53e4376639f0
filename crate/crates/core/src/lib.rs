//! Dimensions of the higher cotangent cohomology modules T^i of rational
//! surface singularities, computed from the resolution dual graph.
//!
//! The graph side ([`resgraph`], [`blowup`], [`formulas`]) evaluates the
//! dimension formulas over the tree of infinitely near singular points. The
//! [`harrison`] module is an independent brute-force engine for Harrison and
//! Hochschild cohomology of fat points, used to cross-check the closed
//! forms in [`series`].

pub mod blowup;
pub mod catalog;
pub mod exact;
pub mod formulas;
pub mod harrison;
pub mod resgraph;
pub mod selftest;
pub mod series;
