//! Piecewise affine functions, their divisors and formal expressions in them.

mod divisor;
mod expression;
mod plf;

pub use divisor::{divisor, divisor_with_shifted_normals};
pub use expression::{apply_expression, apply_product, CartierExpression};
pub use plf::{
    add_functions, max_poly_function, pullback_function, ray_function, scale_function, PLFunction,
};
