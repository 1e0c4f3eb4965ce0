//! Tropical linear spaces, the refinements `F^n_k`, and the Cartier
//! descriptions of their diagonals.

mod curves;
mod diagonal;
mod fans;
mod relations;
mod rewrite;
mod star;

pub use diagonal::{
    diagonal_divisors_rn, fnn, symbol_function, DiagonalRepresentation, SymbolicFunction,
};
pub use curves::{psi_carrier, psi_curve, psi_function, second_curve};
pub use fans::{build_fnk, build_lnk, fnk_cycle, fnk_symbolic, minus_e, RaySymbol};
pub use rewrite::{
    apply_symbolic, rewrite_diagonal, rewrite_unverified, rewrite_symbolic, symbols_used,
    verify_linear_space_representation,
};
pub use relations::{admissible_relations, relations_check, Relation};
pub use star::{lnk_star, star_diagonal};
pub(crate) use star::star_diagonal_at;
