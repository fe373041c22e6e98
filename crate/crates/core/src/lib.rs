//! Untangling straight-line red-blue perfect matchings by flips.
//!
//! A configuration is a perfect matching between `n` red and `n` blue points
//! drawn with straight segments. A *flip* replaces two crossing segments by
//! the two non-crossing segments on the same four endpoints; it strictly
//! shortens total length, so repeated flips always terminate in a
//! crossing-free matching. This crate provides:
//!
//! * exact rational predicates ([`geometry`]),
//! * the matching/flip model and pair-state classification ([`matching`]),
//! * greedy, policy-driven and exhaustive untangling ([`engine`]),
//! * the projection potentials bounding sequence length ([`potential`]),
//! * per-flip state tracking of spectator pairs ([`tracking`]),
//! * star/butterfly/fence constructions and samplers ([`generators`]),
//! * a compiler from rectilinear planar monotone 3-SAT to hardness
//!   instances, with enumeration-backed gadget verification ([`sat`]),
//! * JSON serialization of matchings and flip sequences ([`json`]).

pub mod engine;
pub mod generators;
pub mod geometry;
pub mod json;
pub mod matching;
pub mod potential;
pub mod sat;
pub mod tracking;

pub use geometry::{Color, Coord, Orientation, Point, Segment};
pub use matching::{Flip, Matching, PairState};
