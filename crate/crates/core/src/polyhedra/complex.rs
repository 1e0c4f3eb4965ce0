//! Polyhedral complexes used as carriers of piecewise affine functions.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::cell::Cell;
use super::cycle::{is_balanced, TropicalCycle};
use super::overlay::{interiors_meet, overlay};
use crate::error::{Error, Result};
use crate::exactmath::{index_of, saturated_basis, IntVec};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

struct Inner {
    id: u64,
    ambient: usize,
    cells: Vec<Cell>,
    complete: bool,
}

/// A polyhedral complex given by its maximal cells.
#[derive(Clone)]
pub struct Complex(Arc<Inner>);

impl std::fmt::Debug for Complex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Complex")
            .field("ambient", &self.0.ambient)
            .field("cells", &self.0.cells)
            .finish()
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ambient == other.0.ambient && self.0.cells == other.0.cells)
    }
}

impl Eq for Complex {}

impl Complex {
    /// Builds a complex from a list of cells; cells contained in another
    /// listed cell are dropped. The face-to-face property is not checked
    /// here, see [`Complex::validate`].
    pub fn new(ambient: usize, cells: Vec<Cell>) -> Result<Complex> {
        if let Some(c) = cells.iter().find(|c| c.ambient_dim() != ambient) {
            return Err(Error::Dimension(format!(
                "cell in R^{} inside a complex in R^{ambient}",
                c.ambient_dim()
            )));
        }
        let set: BTreeSet<Cell> = cells.into_iter().collect();
        let all: Vec<Cell> = set.into_iter().collect();
        let maximal: Vec<Cell> = all
            .iter()
            .filter(|c| !all.iter().any(|d| d != *c && d.dim() > c.dim() && d.contains_cell(c)))
            .cloned()
            .collect();
        let complete = compute_complete(ambient, &maximal);
        Ok(Complex(Arc::new(Inner {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            ambient,
            cells: maximal,
            complete,
        })))
    }

    /// The complex of maximal cells of a cycle.
    pub fn from_cycle(x: &TropicalCycle) -> Complex {
        Complex::new(x.ambient_dim(), x.cells().iter().map(|(c, _)| c.clone()).collect())
            .expect("cells share the ambient space")
    }

    /// A unique identifier of this carrier value.
    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.ambient
    }

    /// Maximal cells, sorted.
    pub fn cells(&self) -> &[Cell] {
        &self.0.cells
    }

    /// Whether the support is all of `R^n`.
    pub fn is_complete(&self) -> bool {
        self.0.complete
    }

    pub fn is_fan(&self) -> bool {
        self.0.cells.iter().all(Cell::is_fan_cone)
    }

    /// All cells of the complex, sorted.
    pub fn faces(&self) -> Vec<Cell> {
        let mut set = BTreeSet::new();
        for c in &self.0.cells {
            set.extend(c.faces());
        }
        set.into_iter().collect()
    }

    /// Checks the face-to-face property exactly.
    pub fn validate(&self) -> Result<()> {
        let cells = &self.0.cells;
        for i in 0..cells.len() {
            let fi: BTreeSet<Cell> = cells[i].faces().into_iter().collect();
            for j in i + 1..cells.len() {
                if let Some(c) = cells[i].intersect(&cells[j]) {
                    if !fi.contains(&c) || !cells[j].faces().contains(&c) {
                        return Err(Error::Invalid(format!(
                            "cells {i} and {j} do not meet in a common face"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Rays (one-dimensional cones, as primitive directions) of a pointed fan.
    pub fn rays(&self) -> Vec<IntVec> {
        let mut set = BTreeSet::new();
        for c in &self.0.cells {
            for r in c.rays() {
                if r[0].is_zero() {
                    set.insert(r[1..].to_vec());
                }
            }
        }
        set.into_iter().collect()
    }

    /// Every maximal cone is pointed and simplicial.
    pub fn is_simplicial(&self) -> bool {
        self.0.cells.iter().all(|c| {
            c.is_fan_cone() && c.lineality_dim() == 0 && c.directions().len() == c.dim()
        })
    }

    /// Every maximal cone is generated by part of a lattice basis.
    pub fn is_unimodular(&self) -> bool {
        let n = self.0.ambient;
        self.is_simplicial()
            && self.0.cells.iter().all(|c| {
                let gens = c.directions();
                let basis = saturated_basis(&gens, n);
                index_of(&gens, &basis, n).is_ok_and(|i| i.is_one())
            })
    }
}

fn compute_complete(ambient: usize, cells: &[Cell]) -> bool {
    if cells.is_empty() || cells.iter().any(|c| c.dim() != ambient) {
        return false;
    }
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            if interiors_meet(&cells[i], &cells[j], ambient) {
                return false;
            }
        }
    }
    let cyc = TropicalCycle::new(
        ambient,
        ambient,
        cells.iter().map(|c| (c.clone(), BigInt::one())).collect(),
    );
    match cyc {
        Ok(c) => is_balanced(&c).balanced,
        Err(_) => false,
    }
}

/// A piece of a refined cycle: cell, weight and index of a carrier cell
/// containing it.
pub(crate) type TaggedPiece = (Cell, BigInt, usize);

fn separated(carrier_cell: &Cell, c: &Cell) -> bool {
    use crate::exactmath::dot;
    carrier_cell.equations().iter().any(|e| {
        c.rays().iter().any(|r| !dot(e, r).is_zero()) || c.lineality().iter().any(|l| !dot(e, l).is_zero())
    }) || carrier_cell.facets().iter().any(|f| {
        let mut strict = false;
        for r in c.rays() {
            let v = dot(&f.normal, r);
            if v.is_positive() {
                return false;
            }
            strict |= v.is_negative();
        }
        for l in c.lineality() {
            if !dot(&f.normal, l).is_zero() {
                return false;
            }
        }
        strict
    })
}

/// Subdivides each cell of `x` by the cells of `carrier`, tagging every
/// piece with the index of the carrier cell containing it.
pub(crate) fn refine_tagged(x: &TropicalCycle, carrier: &Complex) -> Result<Vec<TaggedPiece>> {
    if x.ambient_dim() != carrier.ambient_dim() {
        return Err(Error::Dimension("carrier and cycle live in different spaces".into()));
    }
    let d = x.dim();
    let mut out = Vec::new();
    for (sigma, w) in x.cells() {
        let mut pieces: Vec<(Cell, usize)> = Vec::new();
        let mut seen = BTreeSet::new();
        for (k, rho) in carrier.cells().iter().enumerate() {
            if rho.dim() < d || separated(rho, sigma) {
                continue;
            }
            if rho.contains_cell(sigma) {
                pieces = vec![(sigma.clone(), k)];
                break;
            }
            if let Some(p) = rho.intersect(sigma) {
                if p.dim() == d && seen.insert(p.clone()) {
                    pieces.push((p, k));
                }
            }
        }
        if !carrier.is_complete() {
            let mut items: Vec<(Cell, BigInt)> = vec![(sigma.clone(), BigInt::from(-1))];
            let cover = overlay(pieces.iter().map(|(p, _)| (p.clone(), BigInt::one())).collect());
            items.extend(cover.into_iter().map(|(p, _)| (p, BigInt::one())));
            if overlay(items).iter().any(|(_, v)| v.is_negative()) {
                return Err(Error::NotCovered);
            }
        } else if pieces.is_empty() {
            return Err(Error::NotCovered);
        }
        out.extend(pieces.into_iter().map(|(p, k)| (p, w.clone(), k)));
    }
    Ok(out)
}

/// A refinement of `x` in which every cell lies in a cell of `carrier`.
pub fn common_refinement(x: &TropicalCycle, carrier: &Complex) -> Result<TropicalCycle> {
    let pieces = refine_tagged(x, carrier)?;
    let mut cells: Vec<(Cell, BigInt)> = pieces.into_iter().map(|(c, w, _)| (c, w)).collect();
    cells.sort();
    cells.dedup_by(|a, b| a.0 == b.0);
    Ok(TropicalCycle::from_normalized(x.ambient_dim(), x.dim(), cells))
}
