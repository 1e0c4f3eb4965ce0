//! Push-forwards, diagonals, intersection products and pull-backs.

mod ambient;
mod morphism;

pub use morphism::{diagonal_cycle, graph, pushforward, pushforward_into, Morphism};
pub use ambient::{intersect_cycles, intersection_degree, pullback_cycle, AmbientContext, AmbientShape};
