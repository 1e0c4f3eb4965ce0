//! Overlay of weighted cell soups.
//!
//! Cells of equal dimension are grouped by affine span. Within a group,
//! cells whose relative interiors meet are cut by every facet hyperplane of
//! their connected overlap component; the resulting pieces are chambers of a
//! common hyperplane arrangement, so equal pieces coincide exactly and their
//! payloads can be summed.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::cell::Cell;
use crate::exactmath::{dot, neg, Echelon, IntVec};

pub(crate) trait Payload: Clone {
    fn merge(&mut self, other: Self);
    fn is_null(&self) -> bool;
}

impl Payload for BigInt {
    fn merge(&mut self, other: Self) {
        *self += other;
    }
    fn is_null(&self) -> bool {
        self.is_zero()
    }
}

impl<T: Clone> Payload for Vec<T> {
    fn merge(&mut self, other: Self) {
        self.extend(other);
    }
    fn is_null(&self) -> bool {
        self.is_empty()
    }
}

fn separated_by_facet(a: &Cell, b: &Cell) -> bool {
    a.facets().iter().any(|f| {
        b.rays().iter().all(|r| !dot(&f.normal, r).is_positive())
            && b.lineality().iter().all(|l| dot(&f.normal, l).is_zero())
    })
}

/// Whether two cells of dimension `d` in the same span overlap in a set of
/// dimension `d`.
pub(crate) fn interiors_meet(a: &Cell, b: &Cell, d: usize) -> bool {
    if a == b {
        return true;
    }
    if separated_by_facet(a, b) || separated_by_facet(b, a) {
        return false;
    }
    a.intersect(b).is_some_and(|c| c.dim() == d)
}

fn splits(c: &Cell, h: &[BigInt]) -> bool {
    if c.lineality().iter().any(|l| !dot(h, l).is_zero()) {
        return true;
    }
    let mut pos = false;
    let mut negv = false;
    for r in c.rays() {
        let v = dot(h, r);
        pos |= v.is_positive();
        negv |= v.is_negative();
    }
    pos && negv
}

/// Cuts `cell` by all hyperplanes, keeping full-dimensional pieces.
pub(crate) fn chop(cell: &Cell, hyperplanes: &[IntVec]) -> Vec<Cell> {
    let mut pieces = vec![cell.clone()];
    for h in hyperplanes {
        let mut next = Vec::with_capacity(pieces.len());
        for p in pieces {
            if !splits(&p, h) {
                next.push(p);
                continue;
            }
            let d = p.dim();
            for side in [h.clone(), neg(h)] {
                if let Some(q) = p.cut(&side, false) {
                    if q.dim() == d {
                        next.push(q);
                    }
                }
            }
        }
        pieces = next;
    }
    pieces
}

fn sign_normalized(v: &IntVec) -> IntVec {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => neg(v),
        _ => v.clone(),
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Normalizes a soup of equal-dimensional cells: overlapping cells are cut
/// into common pieces and payloads summed; null payloads are dropped.
/// The output is sorted by cell.
pub(crate) fn overlay<P: Payload>(items: Vec<(Cell, P)>) -> Vec<(Cell, P)> {
    let mut groups: BTreeMap<Echelon, BTreeMap<Cell, P>> = BTreeMap::new();
    for (c, p) in items {
        let g = groups.entry(c.span_key().clone()).or_default();
        match g.get_mut(&c) {
            Some(q) => q.merge(p),
            None => {
                g.insert(c, p);
            }
        }
    }
    let mut out: BTreeMap<Cell, P> = BTreeMap::new();
    for (_, group) in groups {
        let cells: Vec<(Cell, P)> = group.into_iter().collect();
        let k = cells.len();
        let d = cells[0].0.dim();
        let mut parent: Vec<usize> = (0..k).collect();
        for i in 0..k {
            for j in i + 1..k {
                if find(&mut parent, i) == find(&mut parent, j) {
                    continue;
                }
                if interiors_meet(&cells[i].0, &cells[j].0, d) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..k {
            let r = find(&mut parent, i);
            comps.entry(r).or_default().push(i);
        }
        for (_, members) in comps {
            if members.len() == 1 {
                let (c, p) = cells[members[0]].clone();
                add_piece(&mut out, c, p);
                continue;
            }
            let hyperplanes: Vec<IntVec> = members
                .iter()
                .flat_map(|&i| cells[i].0.facets().iter().filter(|f| !f.at_infinity))
                .map(|f| sign_normalized(&f.normal))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            for &i in &members {
                for piece in chop(&cells[i].0, &hyperplanes) {
                    add_piece(&mut out, piece, cells[i].1.clone());
                }
            }
        }
    }
    out.into_iter().filter(|(_, p)| !p.is_null()).collect()
}

fn add_piece<P: Payload>(out: &mut BTreeMap<Cell, P>, c: Cell, p: P) {
    match out.get_mut(&c) {
        Some(q) => q.merge(p),
        None => {
            out.insert(c, p);
        }
    }
}
