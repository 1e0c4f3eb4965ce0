//! Divisors of piecewise affine functions on cycles.

use num_bigint::BigInt;
use num_traits::Zero;

use super::plf::PLFunction;
use crate::error::{Error, Result};
use crate::exactmath::{dot, dot_rat_int, IntVec, Rational};
use crate::polyhedra::{overlay, refine_tagged, Cell, TropicalCycle};

#[derive(Clone)]
struct Contribution {
    weight: BigInt,
    normal: IntVec,
    form: usize,
}

/// The divisor `phi . X`.
///
/// Cells of `X` are first subdivided by the carrier of `phi`. The weight of a
/// codimension-one cell `tau` is
/// `sum w(sigma) phi_sigma(u_sigma) - phi_tau(sum w(sigma) u_sigma)`
/// over the cells `sigma` having `tau` as a facet, with linear parts of the
/// forms applied to the primitive normals `u_sigma`. Applying a function to a
/// zero-dimensional cycle gives the empty cycle.
pub fn divisor(phi: &PLFunction, x: &TropicalCycle) -> Result<TropicalCycle> {
    divisor_impl(phi, x, false)
}

/// Same as [`divisor`] but with every primitive normal replaced by another
/// valid representative, shifted by a lattice vector of the facet. The
/// result must not change; exposed for testing that independence.
#[doc(hidden)]
pub fn divisor_with_shifted_normals(phi: &PLFunction, x: &TropicalCycle) -> Result<TropicalCycle> {
    divisor_impl(phi, x, true)
}

fn divisor_impl(phi: &PLFunction, x: &TropicalCycle, shifted: bool) -> Result<TropicalCycle> {
    let n = x.ambient_dim();
    if phi.ambient_dim() != n {
        return Err(Error::Dimension("function and cycle live in different spaces".into()));
    }
    if x.is_empty() || x.dim() == 0 {
        return Ok(TropicalCycle::empty(n, x.dim().saturating_sub(1)));
    }
    let pieces = refine_tagged(x, phi.carrier())?;
    let mut items: Vec<(Cell, Vec<Contribution>)> = Vec::new();
    for (p, w, k) in &pieces {
        for (fi, tau) in p.facet_cells() {
            let mut u = p.primitive_normal(fi);
            if shifted {
                if let Some(v) = tau.direction_lattice().first() {
                    u = u.iter().zip(v).map(|(a, b)| a + b).collect();
                }
            }
            items.push((tau, vec![Contribution { weight: w.clone(), normal: u, form: *k }]));
        }
    }
    let forms = phi.forms();
    let mut out = Vec::new();
    for (tau, contribs) in overlay(items) {
        let mut s = vec![BigInt::zero(); n + 1];
        let mut val = Rational::zero();
        for c in &contribs {
            for (a, b) in s.iter_mut().zip(&c.normal) {
                *a += &c.weight * b;
            }
            val += dot_rat_int(&forms[c.form], &c.normal) * Rational::from_integer(c.weight.clone());
        }
        if !tau.equations().iter().all(|e| dot(e, &s).is_zero()) {
            return Err(Error::Invalid("cycle is not balanced".into()));
        }
        val -= dot_rat_int(&forms[contribs[0].form], &s);
        if !val.is_integer() {
            return Err(Error::NonIntegralWeight(val.to_string()));
        }
        out.push((tau, val.to_integer()));
    }
    Ok(TropicalCycle::from_normalized(n, x.dim() - 1, out))
}
