//! Diagonals of star fans of linear spaces.

use crate::error::{Error, Result};
use crate::exactmath::{RatVec, Rational};
use crate::intersect::diagonal_cycle;
use crate::polyhedra::{cross, cycles_equal, star, Cell, TropicalCycle};

use super::diagonal::DiagonalRepresentation;
use super::fans::build_lnk;
use super::rewrite::rewrite_diagonal;

/// The star of `L^n_k` at the relative interior point `x` of `tau`.
pub fn lnk_star(n: usize, k: usize, tau: &Cell, x: &[Rational]) -> Result<TropicalCycle> {
    let l = build_lnk(n, k)?;
    if !l.all_faces().contains(tau) {
        return Err(Error::Support(format!("cell is not a cell of L^{n}_{k}")));
    }
    star(&l, tau, x)
}

/// The tuples of the diagonal of `L^n_k`, localized at `(x, x)` for `x` in
/// the relative interior of `tau`, verified against the diagonal of the star.
pub fn star_diagonal(n: usize, k: usize, tau: &Cell) -> Result<DiagonalRepresentation> {
    let x = tau.relint_point();
    star_diagonal_at(n, k, tau, &x)
}

pub(crate) fn star_diagonal_at(n: usize, k: usize, tau: &Cell, x: &[Rational]) -> Result<DiagonalRepresentation> {
    let s = lnk_star(n, k, tau, x)?;
    let rep = rewrite_diagonal(n, n - k)?;
    let xx: RatVec = x.iter().chain(x).cloned().collect();
    let mut tuples = Vec::with_capacity(rep.tuples().len());
    for t in rep.tuples() {
        tuples.push(t.iter().map(|f| f.localize(&xx)).collect::<Result<Vec<_>>>()?);
    }
    let local = DiagonalRepresentation { codim: rep.codim, blocks: vec![tuples], symbolic: rep.symbolic.clone() };
    let got = local.apply(&cross(&s, &s))?;
    if !cycles_equal(&got, &diagonal_cycle(&s)) {
        return Err(Error::Verification("localized tuples do not cut out the diagonal of the star".into()));
    }
    Ok(local)
}
