//! Incremental double description over the integers.
//!
//! A cone is kept as a lineality basis plus its extreme rays modulo
//! lineality. Each ray remembers which of the constraints added so far vanish
//! on it; adjacency of two rays is decided combinatorially from those sets.

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::exactmath::{dot, lincomb, make_primitive, IntVec};

#[derive(Clone, Debug)]
pub(crate) struct DoubleDescription {
    pub lin: Vec<IntVec>,
    pub rays: Vec<IntVec>,
    /// `zeros[i]` holds the indices of constraints vanishing on `rays[i]`.
    pub zeros: Vec<FixedBitSet>,
    pub constraints: usize,
}

impl DoubleDescription {
    /// The whole space `R^dim`.
    pub fn full(dim: usize) -> Self {
        let lin = (0..dim)
            .map(|i| {
                let mut v = vec![Zero::zero(); dim];
                v[i] = num_bigint::BigInt::from(1);
                v
            })
            .collect();
        Self { lin, rays: Vec::new(), zeros: Vec::new(), constraints: 0 }
    }

    /// Starts from a known cone. `zeros` are relative to `constraints`
    /// inequalities already describing it.
    pub fn from_cone(
        lin: Vec<IntVec>,
        rays: Vec<IntVec>,
        zeros: Vec<FixedBitSet>,
        constraints: usize,
    ) -> Self {
        Self { lin, rays, zeros, constraints }
    }

    pub fn is_zero_cone(&self) -> bool {
        self.lin.is_empty() && self.rays.is_empty()
    }

    fn grow(&mut self) {
        self.constraints += 1;
        for z in &mut self.zeros {
            z.grow(self.constraints);
        }
    }

    /// Intersects with `{x : a.x >= 0}` or, if `equality`, with `{x : a.x = 0}`.
    pub fn add(&mut self, a: &[num_bigint::BigInt], equality: bool) {
        let idx = self.constraints;
        self.grow();
        let width = self.constraints;

        if let Some(pi) = self.lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut p = self.lin.swap_remove(pi);
            let mut ap = dot(a, &p);
            if ap.is_negative() {
                p.iter_mut().for_each(|x| *x = -&*x);
                ap = -ap;
            }
            for l in &mut self.lin {
                let al = dot(a, l);
                if !al.is_zero() {
                    *l = lincomb(&ap, l, &-al, &p);
                    make_primitive(l);
                }
            }
            for (r, z) in self.rays.iter_mut().zip(&mut self.zeros) {
                let ar = dot(a, r);
                if !ar.is_zero() {
                    *r = lincomb(&ap, r, &-ar, &p);
                    make_primitive(r);
                }
                z.insert(idx);
            }
            if !equality {
                let mut z = FixedBitSet::with_capacity(width);
                z.insert_range(..idx);
                self.rays.push(p);
                self.zeros.push(z);
            }
            return;
        }

        let vals: Vec<_> = self.rays.iter().map(|r| dot(a, r)).collect();
        let pos: Vec<usize> = (0..vals.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..vals.len()).filter(|&i| vals[i].is_negative()).collect();

        let mut new_rays = Vec::new();
        let mut new_zeros = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = self.zeros[p].clone();
                common.intersect_with(&self.zeros[q]);
                if !self.adjacent(p, q, &common) {
                    continue;
                }
                let mut r = lincomb(&vals[p], &self.rays[q], &-&vals[q], &self.rays[p]);
                make_primitive(&mut r);
                common.insert(idx);
                new_rays.push(r);
                new_zeros.push(common);
            }
        }

        let mut rays = Vec::new();
        let mut zeros = Vec::new();
        for (i, v) in vals.iter().enumerate() {
            let keep = if equality { v.is_zero() } else { !v.is_negative() };
            if keep {
                let mut z = self.zeros[i].clone();
                if v.is_zero() {
                    z.insert(idx);
                }
                rays.push(std::mem::take(&mut self.rays[i]));
                zeros.push(z);
            }
        }
        rays.extend(new_rays);
        zeros.extend(new_zeros);
        self.rays = rays;
        self.zeros = zeros;
    }

    fn adjacent(&self, p: usize, q: usize, common: &FixedBitSet) -> bool {
        (0..self.rays.len())
            .filter(|&r| r != p && r != q)
            .all(|r| !common.is_subset(&self.zeros[r]))
    }
}
