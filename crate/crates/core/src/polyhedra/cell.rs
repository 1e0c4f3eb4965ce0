//! Rational polyhedra stored as homogenized cones.
//!
//! A polyhedron `P` in `R^n` is kept as the closed cone over `{1} x P` in
//! `R^{1+n}`: vertices `v` become rays `(1, v)` scaled to integers,
//! recession rays `r` become `(0, r)` and lineality directions `(0, l)`.
//! A fan cone is simply a cell with the single vertex at the origin.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::dd::DoubleDescription;
use crate::exactmath::{
    bezout, dot, echelon, integer_kernel, is_zero_vec, primitive, rat_to_primitive, Echelon,
    IntVec, RatVec, Rational,
};

/// A facet `{normal . x = 0}` of the homogenized cone, valid as
/// `normal . x >= 0`. The normal is reduced modulo the equations of the cell.
#[derive(Clone, Debug)]
pub struct Facet {
    pub normal: IntVec,
    /// Indices into [`Cell::rays`] of the rays lying on the facet.
    pub incidence: FixedBitSet,
    /// The facet contains no vertex: it is the face "at infinity" of an
    /// unbounded polyhedron and does not correspond to a face of `P`.
    pub at_infinity: bool,
}

struct Inner {
    ambient: usize,
    lin: Vec<IntVec>,
    rays: Vec<IntVec>,
    dim: usize,
    span: Echelon,
    equations: Vec<IntVec>,
    facets: Vec<Facet>,
}

/// A nonempty rational polyhedron, cheap to clone.
#[derive(Clone)]
pub struct Cell(Arc<Inner>);

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ambient == other.0.ambient
                && self.0.rays == other.0.rays
                && self.0.lin == other.0.lin)
    }
}

impl Eq for Cell {}

impl Hash for Cell {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.ambient.hash(state);
        self.0.rays.hash(state);
        self.0.lin.hash(state);
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.dim, self.0.ambient, &self.0.rays, &self.0.lin).cmp(&(
            other.0.dim,
            other.0.ambient,
            &other.0.rays,
            &other.0.lin,
        ))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &IntVec| {
            v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        };
        write!(f, "Cell{{dim {}; rays", self.0.dim)?;
        for r in &self.0.rays {
            write!(f, " [{}]", show(r))?;
        }
        if !self.0.lin.is_empty() {
            write!(f, "; lin")?;
            for l in &self.0.lin {
                write!(f, " [{}]", show(l))?;
            }
        }
        write!(f, "}}")
    }
}

pub(crate) fn unit(m: usize, i: usize) -> IntVec {
    let mut v = vec![BigInt::zero(); m];
    v[i] = BigInt::one();
    v
}

/// `(1, x)` scaled to a primitive integer vector.
pub fn homogenize(x: &[Rational]) -> IntVec {
    let mut v = Vec::with_capacity(x.len() + 1);
    v.push(Rational::one());
    v.extend_from_slice(x);
    rat_to_primitive(&v)
}

/// Inverse of [`homogenize`]; `v[0]` must be positive.
pub fn dehomogenize(v: &[BigInt]) -> RatVec {
    v[1..].iter().map(|x| Rational::new(x.clone(), v[0].clone())).collect()
}

/// `(0, r)`.
pub fn direction(r: &[BigInt]) -> IntVec {
    let mut v = Vec::with_capacity(r.len() + 1);
    v.push(BigInt::zero());
    v.extend_from_slice(r);
    v
}

impl Cell {
    /// Builds a cell from lineality generators, extreme rays modulo that
    /// lineality, and a list of valid inequalities containing every facet.
    /// Returns `None` if there is no vertex, i.e. the polyhedron is empty.
    pub(crate) fn from_extreme(
        ambient: usize,
        lin_gens: &[IntVec],
        extreme: &[IntVec],
        candidates: &[IntVec],
    ) -> Option<Cell> {
        let m = ambient + 1;
        let lin_ech = echelon(lin_gens, m);
        let rays: Vec<IntVec> = extreme
            .iter()
            .map(|r| lin_ech.reduce(r))
            .filter(|r| !is_zero_vec(r))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if !rays.iter().any(|r| r[0].is_positive()) {
            return None;
        }
        let lin = lin_ech.rows;
        let mut all = lin.clone();
        all.extend(rays.iter().cloned());
        let span = echelon(&all, m);
        let dim = span.rank() - 1;
        let eq_ech = echelon(&span.orthogonal_complement(), m);

        let e0 = unit(m, 0);
        let mut groups: Vec<(FixedBitSet, IntVec)> = Vec::new();
        for a in std::iter::once(&e0).chain(candidates) {
            let mut inc = FixedBitSet::with_capacity(rays.len());
            for (i, r) in rays.iter().enumerate() {
                if dot(a, r).is_zero() {
                    inc.insert(i);
                }
            }
            if inc.count_ones(..) == rays.len() {
                continue;
            }
            if groups.iter().any(|(g, _)| inc.is_subset(g)) {
                continue;
            }
            groups.retain(|(g, _)| !g.is_subset(&inc));
            groups.push((inc, a.clone()));
        }
        let mut facets: Vec<Facet> = groups
            .into_iter()
            .map(|(incidence, a)| {
                let at_infinity = !incidence.ones().any(|i| rays[i][0].is_positive());
                Facet { normal: eq_ech.reduce(&a), incidence, at_infinity }
            })
            .collect();
        facets.sort_by(|a, b| a.normal.cmp(&b.normal));

        Some(Cell(Arc::new(Inner {
            ambient,
            lin,
            rays,
            dim,
            span,
            equations: eq_ech.rows,
            facets,
        })))
    }

    /// The cell generated by homogenized lineality generators and rays.
    pub fn from_generators(ambient: usize, lin_gens: &[IntVec], gens: &[IntVec]) -> Option<Cell> {
        let m = ambient + 1;
        let gens: Vec<IntVec> = gens
            .iter()
            .filter(|g| !is_zero_vec(g))
            .map(|g| primitive(g.clone()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut dual = DoubleDescription::full(m);
        for l in lin_gens {
            dual.add(l, true);
        }
        let nl = lin_gens.len();
        for g in &gens {
            dual.add(g, false);
        }
        // facets through each generator
        let nf = dual.rays.len();
        let through: Vec<FixedBitSet> = (0..gens.len())
            .map(|j| {
                let mut s = FixedBitSet::with_capacity(nf);
                for (i, z) in dual.zeros.iter().enumerate() {
                    if z.contains(nl + j) {
                        s.insert(i);
                    }
                }
                s
            })
            .collect();
        let mut lin: Vec<IntVec> = lin_gens.to_vec();
        let mut pointed = Vec::new();
        for (j, g) in gens.iter().enumerate() {
            if through[j].count_ones(..) == nf {
                lin.push(g.clone());
            } else {
                pointed.push(j);
            }
        }
        let extreme: Vec<IntVec> = pointed
            .iter()
            .filter(|&&j| {
                !pointed
                    .iter()
                    .any(|&h| through[j].is_subset(&through[h]) && through[j] != through[h])
            })
            .map(|&j| gens[j].clone())
            .collect();
        Cell::from_extreme(ambient, &lin, &extreme, &dual.rays)
    }

    /// Fan cone generated by integer directions in `R^n`, apex at the origin.
    pub fn cone(ambient: usize, gens: &[IntVec]) -> Cell {
        let mut hg: Vec<IntVec> = gens.iter().map(|g| direction(g)).collect();
        hg.push(unit(ambient + 1, 0));
        Cell::from_generators(ambient, &[], &hg).expect("cone contains the origin")
    }

    /// Fan cone with lineality directions.
    pub fn cone_with_lineality(ambient: usize, gens: &[IntVec], lin: &[IntVec]) -> Cell {
        let mut hg: Vec<IntVec> = gens.iter().map(|g| direction(g)).collect();
        hg.push(unit(ambient + 1, 0));
        let hl: Vec<IntVec> = lin.iter().map(|g| direction(g)).collect();
        Cell::from_generators(ambient, &hl, &hg).expect("cone contains the origin")
    }

    /// Polyhedron `conv(vertices) + cone(rays) + span(lineality)`.
    pub fn polyhedron(
        ambient: usize,
        vertices: &[RatVec],
        rays: &[IntVec],
        lineality: &[IntVec],
    ) -> Option<Cell> {
        let mut hg: Vec<IntVec> = vertices.iter().map(|v| homogenize(v)).collect();
        hg.extend(rays.iter().map(|r| direction(r)));
        let hl: Vec<IntVec> = lineality.iter().map(|g| direction(g)).collect();
        Cell::from_generators(ambient, &hl, &hg)
    }

    pub fn point(x: &[Rational]) -> Cell {
        Cell::from_extreme(x.len(), &[], &[homogenize(x)], &[]).expect("a point is nonempty")
    }

    pub fn origin(ambient: usize) -> Cell {
        Cell::from_extreme(ambient, &[], &[unit(ambient + 1, 0)], &[]).expect("nonempty")
    }

    /// The whole space `R^n` as a single cell.
    pub fn whole_space(ambient: usize) -> Cell {
        let lin: Vec<IntVec> = (1..=ambient).map(|i| unit(ambient + 1, i)).collect();
        Cell::from_extreme(ambient, &lin, &[unit(ambient + 1, 0)], &[]).expect("nonempty")
    }

    /// `{x : ineq_i . (1,x) >= 0, eq_j . (1,x) = 0}` for homogeneous
    /// covectors `(offset, c)`.
    pub fn from_constraints(ambient: usize, ineqs: &[IntVec], eqs: &[IntVec]) -> Option<Cell> {
        let m = ambient + 1;
        let mut dd = DoubleDescription::full(m);
        let e0 = unit(m, 0);
        dd.add(&e0, false);
        for e in eqs {
            dd.add(e, true);
        }
        for a in ineqs {
            dd.add(a, false);
        }
        let mut cands = vec![e0];
        cands.extend(ineqs.iter().cloned());
        Cell::from_extreme(ambient, &dd.lin, &dd.rays, &cands)
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.ambient
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    /// Homogenized extreme rays modulo lineality, canonical and sorted.
    pub fn rays(&self) -> &[IntVec] {
        &self.0.rays
    }

    /// Homogenized lineality basis in canonical echelon form.
    pub fn lineality(&self) -> &[IntVec] {
        &self.0.lin
    }

    pub fn lineality_dim(&self) -> usize {
        self.0.lin.len()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.0.facets
    }

    pub fn equations(&self) -> &[IntVec] {
        &self.0.equations
    }

    pub fn span(&self) -> &Echelon {
        &self.0.span
    }

    pub fn vertices(&self) -> Vec<RatVec> {
        self.0.rays.iter().filter(|r| r[0].is_positive()).map(|r| dehomogenize(r)).collect()
    }

    /// Recession rays in `R^n` (excluding lineality).
    pub fn directions(&self) -> Vec<IntVec> {
        self.0.rays.iter().filter(|r| r[0].is_zero()).map(|r| r[1..].to_vec()).collect()
    }

    pub fn lineality_directions(&self) -> Vec<IntVec> {
        self.0.lin.iter().map(|r| r[1..].to_vec()).collect()
    }

    /// Whether the apex of this cell is the origin, so that it is a cone.
    pub fn is_fan_cone(&self) -> bool {
        let mut v = self.0.rays.iter().filter(|r| r[0].is_positive());
        matches!((v.next(), v.next()), (Some(r), None) if r[1..].iter().all(Zero::is_zero))
    }

    pub fn is_bounded(&self) -> bool {
        self.0.lin.is_empty() && self.0.rays.iter().all(|r| r[0].is_positive())
    }

    fn satisfies(&self, v: &[BigInt], strict: bool) -> bool {
        self.0.equations.iter().all(|e| dot(e, v).is_zero())
            && self.0.facets.iter().all(|f| {
                let s = dot(&f.normal, v);
                if strict {
                    s.is_positive()
                } else {
                    !s.is_negative()
                }
            })
    }

    pub fn contains_homog(&self, v: &[BigInt]) -> bool {
        self.satisfies(v, false)
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        self.satisfies(&homogenize(x), false)
    }

    pub fn contains_point_relint(&self, x: &[Rational]) -> bool {
        self.satisfies(&homogenize(x), true)
    }

    pub fn contains_homog_relint(&self, v: &[BigInt]) -> bool {
        self.satisfies(v, true)
    }

    /// Whether `other` is a subset of `self`.
    pub fn contains_cell(&self, other: &Cell) -> bool {
        other.0.rays.iter().all(|r| self.contains_homog(r))
            && other.0.lin.iter().all(|l| {
                self.0.equations.iter().all(|e| dot(e, l).is_zero())
                    && self.0.facets.iter().all(|f| dot(&f.normal, l).is_zero())
            })
    }

    /// Homogenized point in the relative interior.
    pub fn relint_homog(&self) -> IntVec {
        let m = self.0.ambient + 1;
        let mut s = vec![BigInt::zero(); m];
        for r in &self.0.rays {
            for (a, b) in s.iter_mut().zip(r) {
                *a += b;
            }
        }
        primitive(s)
    }

    pub fn relint_point(&self) -> RatVec {
        dehomogenize(&self.relint_homog())
    }

    /// Intersection of two cells of the same ambient space.
    pub fn intersect(&self, other: &Cell) -> Option<Cell> {
        assert_eq!(self.0.ambient, other.0.ambient, "ambient dimension mismatch");
        if self == other || self.contains_cell(other) {
            return Some(other.clone());
        }
        if other.contains_cell(self) {
            return Some(self.clone());
        }
        let nf = self.0.facets.len();
        let zeros: Vec<FixedBitSet> = (0..self.0.rays.len())
            .map(|i| {
                let mut z = FixedBitSet::with_capacity(nf);
                for (j, f) in self.0.facets.iter().enumerate() {
                    if f.incidence.contains(i) {
                        z.insert(j);
                    }
                }
                z
            })
            .collect();
        let mut dd = DoubleDescription::from_cone(
            self.0.lin.clone(),
            self.0.rays.clone(),
            zeros,
            nf,
        );
        for e in &other.0.equations {
            dd.add(e, true);
        }
        for f in &other.0.facets {
            dd.add(&f.normal, false);
            if dd.is_zero_cone() {
                return None;
            }
        }
        let cands: Vec<IntVec> = self
            .0
            .facets
            .iter()
            .chain(&other.0.facets)
            .map(|f| f.normal.clone())
            .collect();
        Cell::from_extreme(self.0.ambient, &dd.lin, &dd.rays, &cands)
    }

    /// Intersection with the closed halfspace `a . x >= 0` (homogeneous `a`),
    /// or with the hyperplane if `equality`.
    pub fn cut(&self, a: &[BigInt], equality: bool) -> Option<Cell> {
        let vals: Vec<BigInt> = self.0.rays.iter().map(|r| dot(a, r)).collect();
        let lin_ok = self.0.lin.iter().all(|l| dot(a, l).is_zero());
        if lin_ok && vals.iter().all(|v| !v.is_negative()) && (!equality || vals.iter().all(Zero::is_zero)) {
            return Some(self.clone());
        }
        let nf = self.0.facets.len();
        let zeros: Vec<FixedBitSet> = (0..self.0.rays.len())
            .map(|i| {
                let mut z = FixedBitSet::with_capacity(nf);
                for (j, f) in self.0.facets.iter().enumerate() {
                    if f.incidence.contains(i) {
                        z.insert(j);
                    }
                }
                z
            })
            .collect();
        let mut dd =
            DoubleDescription::from_cone(self.0.lin.clone(), self.0.rays.clone(), zeros, nf);
        dd.add(a, equality);
        let mut cands: Vec<IntVec> = self.0.facets.iter().map(|f| f.normal.clone()).collect();
        if !equality {
            cands.push(a.to_vec());
        }
        Cell::from_extreme(self.0.ambient, &dd.lin, &dd.rays, &cands)
    }

    /// The face of rays listed in `incidence`; `None` if it lies at infinity.
    pub fn face(&self, incidence: &FixedBitSet) -> Option<Cell> {
        let rays: Vec<IntVec> = incidence.ones().map(|i| self.0.rays[i].clone()).collect();
        let cands: Vec<IntVec> = self.0.facets.iter().map(|f| f.normal.clone()).collect();
        Cell::from_extreme(self.0.ambient, &self.0.lin, &rays, &cands)
    }

    /// Codimension-one faces together with the index of the defining facet.
    pub fn facet_cells(&self) -> Vec<(usize, Cell)> {
        self.0
            .facets
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.at_infinity)
            .filter_map(|(i, f)| self.face(&f.incidence).map(|c| (i, c)))
            .collect()
    }

    /// All nonempty faces, including the cell itself, sorted.
    pub fn faces(&self) -> Vec<Cell> {
        let mut seen: BTreeSet<Cell> = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(c) = stack.pop() {
            if !seen.insert(c.clone()) {
                continue;
            }
            for (_, f) in c.facet_cells() {
                if !seen.contains(&f) {
                    stack.push(f);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Lattice basis of the direction lattice `span(P - P) ∩ Z^n`,
    /// homogenized (first coordinate zero).
    pub fn direction_lattice(&self) -> Vec<IntVec> {
        let mut eqs = self.0.equations.clone();
        eqs.push(unit(self.0.ambient + 1, 0));
        integer_kernel(&eqs, self.0.ambient + 1)
    }

    /// A lattice vector generating the direction lattice of `self` modulo the
    /// direction lattice of the facet `facet`, pointing into `self`.
    pub fn primitive_normal(&self, facet: usize) -> IntVec {
        let a = &self.0.facets[facet].normal;
        let basis = self.direction_lattice();
        let vals: Vec<BigInt> = basis.iter().map(|b| dot(a, b)).collect();
        let (g, coeffs) = bezout(&vals);
        debug_assert!(g.is_positive());
        let mut u = vec![BigInt::zero(); self.0.ambient + 1];
        for (c, b) in coeffs.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in u.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        u
    }

    /// Affine span as a canonical key shared by all cells with the same span.
    pub fn span_key(&self) -> &Echelon {
        &self.0.span
    }
}


/// The cone spanned by `gens` in `R^n`.
pub fn cone_from_generators(n: usize, gens: &[IntVec]) -> Cell {
    Cell::cone(n, gens)
}

/// `a` intersected with `b`; `None` when they are disjoint.
pub fn intersect_cells(a: &Cell, b: &Cell) -> Option<Cell> {
    a.intersect(b)
}
