//! Polyhedra, polyhedral complexes and weighted tropical cycles.

mod cell;
mod complex;
mod cycle;
mod dd;
mod overlay;

pub use cell::{
    cone_from_generators, dehomogenize, direction, homogenize, intersect_cells, Cell, Facet,
};
pub use complex::{common_refinement, Complex};
pub(crate) use complex::refine_tagged;
pub use cycle::{
    cell_product, cross, cycles_equal, degree, is_balanced, star, stellar_subdivide, translate,
    BalanceReport, TropicalCycle, ZeroCycleSummary,
};
pub(crate) use cycle::tangent_cone;
pub(crate) use overlay::overlay;
