//! Formal integer polynomials in piecewise affine functions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::divisor::divisor;
use super::plf::PLFunction;
use crate::error::{Error, Result};
use crate::polyhedra::TropicalCycle;

/// `sum_i coeff_i * f_{i,1} ... f_{i,r_i}`, applied to cycles by iterated
/// divisors. Factors may live on different carriers; each divisor step
/// refines the current cycle by the carrier of the factor it applies.
#[derive(Clone, Debug, Default)]
pub struct CartierExpression {
    terms: Vec<(BigInt, Vec<PLFunction>)>,
}

impl CartierExpression {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn new(terms: Vec<(BigInt, Vec<PLFunction>)>) -> Self {
        Self { terms: terms.into_iter().filter(|(c, _)| !c.is_zero()).collect() }
    }

    pub fn monomial(factors: Vec<PLFunction>) -> Self {
        Self::new(vec![(BigInt::one(), factors)])
    }

    pub fn terms(&self) -> &[(BigInt, Vec<PLFunction>)] {
        &self.terms
    }

    pub fn push(&mut self, coeff: BigInt, factors: Vec<PLFunction>) {
        if !coeff.is_zero() {
            self.terms.push((coeff, factors));
        }
    }

    /// Concatenation of terms.
    pub fn plus(&self, other: &CartierExpression) -> CartierExpression {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        CartierExpression { terms }
    }

    /// Product of expressions, expanded.
    pub fn times(&self, other: &CartierExpression) -> CartierExpression {
        let mut terms = Vec::new();
        for (a, fa) in &self.terms {
            for (b, fb) in &other.terms {
                let mut f = fa.clone();
                f.extend(fb.iter().cloned());
                terms.push((a * b, f));
            }
        }
        CartierExpression { terms }
    }
}

/// `f_1 ... f_r . X`, applying the last factor first.
pub fn apply_product(factors: &[PLFunction], x: &TropicalCycle) -> Result<TropicalCycle> {
    let mut cur = x.clone();
    for f in factors.iter().rev() {
        if cur.is_empty() {
            break;
        }
        cur = divisor(f, &cur)?;
    }
    if factors.len() > x.dim() {
        return Ok(TropicalCycle::empty(x.ambient_dim(), 0));
    }
    Ok(cur)
}

/// `P . X`, the sum over terms of the iterated divisors.
pub fn apply_expression(p: &CartierExpression, x: &TropicalCycle) -> Result<TropicalCycle> {
    let n = x.ambient_dim();
    let degrees: Vec<usize> = p.terms.iter().map(|(_, f)| f.len()).collect();
    if degrees.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::Invalid("expression is not homogeneous".into()));
    }
    let Some(&deg) = degrees.first() else {
        return Ok(TropicalCycle::empty(n, x.dim()));
    };
    let dim = x.dim().saturating_sub(deg);
    let mut parts = Vec::new();
    for (c, factors) in &p.terms {
        let y = apply_product(factors, x)?;
        if !y.is_empty() {
            parts.push(y.scale(c));
        }
    }
    TropicalCycle::sum(n, dim, parts)
}
