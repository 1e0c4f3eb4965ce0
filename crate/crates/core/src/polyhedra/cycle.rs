//! Weighted tropical cycles.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::cell::{direction, homogenize, unit, Cell};
use super::overlay::overlay;
use crate::error::{Error, Result};
use crate::exactmath::{dot, echelon, is_zero_vec, primitive, IntVec, LatticeVector, RatVec, Rational};

/// A pure-dimensional weighted rational polyhedral complex in `R^n`.
///
/// Cells are stored in a normalized form: cells with overlapping relative
/// interiors have been cut into common pieces, weights summed and zero
/// weights dropped. Two cycles describing the same cycle with different
/// subdivisions compare equal under [`cycles_equal`], not under `==`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCycle {
    ambient: usize,
    dim: usize,
    cells: Vec<(Cell, BigInt)>,
}

/// Result of a balancing check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    pub balanced: bool,
    /// A codimension-one cell where balancing fails and the weighted sum of
    /// primitive normals there.
    pub witness: Option<(Cell, IntVec)>,
}

/// Points and weights of a zero-dimensional cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCycleSummary {
    pub points: Vec<RatVec>,
    pub weights: Vec<BigInt>,
}

impl TropicalCycle {
    pub fn empty(ambient: usize, dim: usize) -> Self {
        Self { ambient, dim, cells: Vec::new() }
    }

    /// Builds and normalizes a cycle from weighted cells of dimension `dim`.
    pub fn new(ambient: usize, dim: usize, cells: Vec<(Cell, BigInt)>) -> Result<Self> {
        for (c, _) in &cells {
            if c.ambient_dim() != ambient {
                return Err(Error::Dimension(format!(
                    "cell in R^{} inside a cycle in R^{ambient}",
                    c.ambient_dim()
                )));
            }
            if c.dim() != dim {
                return Err(Error::Dimension(format!(
                    "cell of dimension {} in a cycle of dimension {dim}",
                    c.dim()
                )));
            }
        }
        Ok(Self { ambient, dim, cells: overlay(cells) })
    }

    /// Trusts that the cells are already normalized; only sorts them.
    pub(crate) fn from_normalized(ambient: usize, dim: usize, mut cells: Vec<(Cell, BigInt)>) -> Self {
        cells.retain(|(_, w)| !w.is_zero());
        cells.sort();
        Self { ambient, dim, cells }
    }

    /// Fan cycle with all listed cones of weight one.
    pub fn from_cones(ambient: usize, dim: usize, cones: &[Vec<IntVec>]) -> Result<Self> {
        let cells = cones.iter().map(|g| (Cell::cone(ambient, g), BigInt::one())).collect();
        Self::new(ambient, dim, cells)
    }

    /// `[R^n]`: the whole space with weight one.
    pub fn whole_space(ambient: usize) -> Self {
        Self { ambient, dim: ambient, cells: vec![(Cell::whole_space(ambient), BigInt::one())] }
    }

    /// A single point with a weight.
    pub fn point(x: &[Rational], weight: BigInt) -> Self {
        Self::from_normalized(x.len(), 0, vec![(Cell::point(x), weight)])
    }

    pub fn origin(ambient: usize) -> Self {
        Self::from_normalized(ambient, 0, vec![(Cell::origin(ambient), BigInt::one())])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[(Cell, BigInt)] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn weight_of(&self, cell: &Cell) -> Option<&BigInt> {
        self.cells.iter().find(|(c, _)| c == cell).map(|(_, w)| w)
    }

    pub fn is_fan(&self) -> bool {
        self.cells.iter().all(|(c, _)| c.is_fan_cone())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "ambient R^{} vs R^{}",
                self.ambient, other.ambient
            )));
        }
        if self.dim != other.dim && !self.is_empty() && !other.is_empty() {
            return Err(Error::Dimension(format!("cycle dimension {} vs {}", self.dim, other.dim)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if other.is_empty() {
            return Ok(self.clone());
        }
        if self.is_empty() {
            return Ok(other.clone());
        }
        let mut cells = self.cells.clone();
        cells.extend(other.cells.iter().cloned());
        Self::new(self.ambient, self.dim, cells)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::empty(self.ambient, self.dim);
        }
        let cells = self.cells.iter().map(|(cell, w)| (cell.clone(), w * c)).collect();
        Self { ambient: self.ambient, dim: self.dim, cells }
    }

    /// Sum of a list of cycles of the same dimension.
    pub fn sum(ambient: usize, dim: usize, parts: impl IntoIterator<Item = TropicalCycle>) -> Result<Self> {
        let mut cells = Vec::new();
        for p in parts {
            if p.is_empty() {
                continue;
            }
            if p.ambient != ambient || p.dim != dim {
                return Err(Error::Dimension("summands of different shape".into()));
            }
            cells.extend(p.cells);
        }
        Self::new(ambient, dim, cells)
    }

    /// Whether the point lies in the support.
    pub fn support_contains(&self, x: &[Rational]) -> bool {
        let h = homogenize(x);
        self.cells.iter().any(|(c, _)| c.contains_homog(&h))
    }

    /// Whether every cell of `other` lies in the support of `self`.
    pub fn support_contains_cycle(&self, other: &TropicalCycle) -> bool {
        if other.is_empty() {
            return true;
        }
        if self.is_empty() || self.ambient != other.ambient {
            return false;
        }
        let mut items: Vec<(Cell, BigInt)> = Vec::new();
        for (oc, _) in &other.cells {
            let mut pieces: Vec<Cell> = Vec::new();
            for (c, _) in &self.cells {
                if c.contains_cell(oc) {
                    pieces = vec![oc.clone()];
                    break;
                }
                if let Some(p) = c.intersect(oc) {
                    if p.dim() == oc.dim() {
                        pieces.push(p);
                    }
                }
            }
            if pieces.is_empty() {
                return false;
            }
            items.push((oc.clone(), BigInt::from(-1)));
            // pieces from distinct cells may overlap when self is not a
            // complex; count each region once by normalizing pieces first
            let mut dedup: Vec<(Cell, BigInt)> = Vec::new();
            for p in overlay(pieces.into_iter().map(|p| (p, BigInt::one())).collect()) {
                dedup.push((p.0, BigInt::one()));
            }
            items.extend(dedup);
        }
        overlay(items).iter().all(|(_, w)| !w.is_negative())
    }

    /// All faces of all cells, sorted.
    pub fn all_faces(&self) -> Vec<Cell> {
        let mut set = BTreeSet::new();
        for (c, _) in &self.cells {
            set.extend(c.faces());
        }
        set.into_iter().collect()
    }

    /// Points and weights of a zero-dimensional cycle.
    pub fn summary(&self) -> Result<ZeroCycleSummary> {
        if self.dim != 0 && !self.is_empty() {
            return Err(Error::Dimension(format!("cycle has dimension {}", self.dim)));
        }
        Ok(ZeroCycleSummary {
            points: self.cells.iter().map(|(c, _)| c.vertices()[0].clone()).collect(),
            weights: self.cells.iter().map(|(_, w)| w.clone()).collect(),
        })
    }
}

/// Sum of weights of a zero-dimensional cycle.
pub fn degree(x: &TropicalCycle) -> Result<BigInt> {
    Ok(x.summary()?.weights.iter().sum())
}

/// Equality as cycles, independent of the chosen subdivisions.
pub fn cycles_equal(x: &TropicalCycle, y: &TropicalCycle) -> bool {
    if x.ambient != y.ambient {
        return false;
    }
    if x.is_empty() || y.is_empty() {
        return x.is_empty() && y.is_empty();
    }
    if x.dim != y.dim {
        return false;
    }
    if x == y {
        return true;
    }
    x.sub(y).map(|d| d.is_empty()).unwrap_or(false)
}

/// Weighted primitive normals of every cell around each of its finite
/// facets, as `(facet cell, weight, u)`.
pub(crate) fn facet_normals<'a>(
    cells: impl IntoIterator<Item = (&'a Cell, &'a BigInt)>,
) -> Vec<(Cell, BigInt, IntVec, &'a Cell)> {
    let mut out = Vec::new();
    for (c, w) in cells {
        for (fi, f) in c.facet_cells() {
            out.push((f, w.clone(), c.primitive_normal(fi), c));
        }
    }
    out
}

/// Balancing check at every codimension-one cell.
pub fn is_balanced(x: &TropicalCycle) -> BalanceReport {
    if x.is_empty() || x.dim == 0 {
        return BalanceReport { balanced: true, witness: None };
    }
    let items: Vec<(Cell, Vec<IntVec>)> = facet_normals(x.cells.iter().map(|(c, w)| (c, w)))
        .into_iter()
        .map(|(f, w, u, _)| (f, vec![u.iter().map(|a| a * &w).collect::<IntVec>()]))
        .collect();
    for (tau, vecs) in overlay(items) {
        let mut s = vec![BigInt::zero(); x.ambient + 1];
        for v in &vecs {
            for (a, b) in s.iter_mut().zip(v) {
                *a += b;
            }
        }
        if !tau.equations().iter().all(|e| dot(e, &s).is_zero()) {
            let residual = s[1..].to_vec();
            return BalanceReport { balanced: false, witness: Some((tau, residual)) };
        }
    }
    BalanceReport { balanced: true, witness: None }
}

/// Product of two cells, in `R^{n+m}`.
pub fn cell_product(a: &Cell, b: &Cell) -> Cell {
    let (n, m) = (a.ambient_dim(), b.ambient_dim());
    let embed = |v: &[BigInt], first: bool| -> IntVec {
        let mut out = vec![BigInt::zero(); n + m + 1];
        if first {
            for (i, x) in v[1..].iter().enumerate() {
                out[1 + i] = x.clone();
            }
        } else {
            for (i, x) in v[1..].iter().enumerate() {
                out[1 + n + i] = x.clone();
            }
        }
        out[0] = v[0].clone();
        out
    };
    let mut rays = Vec::new();
    for r in a.rays() {
        if r[0].is_zero() {
            rays.push(embed(r, true));
        }
    }
    for s in b.rays() {
        if s[0].is_zero() {
            rays.push(embed(s, false));
        }
    }
    for v in a.rays().iter().filter(|r| r[0].is_positive()) {
        for w in b.rays().iter().filter(|r| r[0].is_positive()) {
            let mut p = vec![&v[0] * &w[0]];
            p.extend(v[1..].iter().map(|x| x * &w[0]));
            p.extend(w[1..].iter().map(|x| x * &v[0]));
            rays.push(primitive(p));
        }
    }
    let mut lin: Vec<IntVec> = a.lineality().iter().map(|l| embed(l, true)).collect();
    lin.extend(b.lineality().iter().map(|l| embed(l, false)));
    let mut cands = Vec::new();
    for f in a.facets() {
        let mut c = f.normal.clone();
        c.extend(std::iter::repeat_n(BigInt::zero(), m));
        cands.push(c);
    }
    for f in b.facets() {
        let mut c = vec![f.normal[0].clone()];
        c.extend(std::iter::repeat_n(BigInt::zero(), n));
        c.extend(f.normal[1..].iter().cloned());
        cands.push(c);
    }
    Cell::from_extreme(n + m, &lin, &rays, &cands).expect("product of nonempty cells")
}

/// Cartesian product of cycles; weights multiply.
pub fn cross(x: &TropicalCycle, y: &TropicalCycle) -> TropicalCycle {
    let mut cells = Vec::with_capacity(x.cells.len() * y.cells.len());
    for (a, wa) in &x.cells {
        for (b, wb) in &y.cells {
            cells.push((cell_product(a, b), wa * wb));
        }
    }
    TropicalCycle::from_normalized(x.ambient + y.ambient, x.dim + y.dim, cells)
}

/// Tangent cone of `cell` at the homogenized point `p` of it.
pub(crate) fn tangent_cone(cell: &Cell, p: &[BigInt]) -> Cell {
    let n = cell.ambient_dim();
    let mut gens = vec![unit(n + 1, 0)];
    for r in cell.rays() {
        if r[0].is_zero() {
            gens.push(r.clone());
        } else {
            // r / r0 - p / p0, scaled by r0 * p0
            let mut d: IntVec = r[1..].iter().zip(&p[1..]).map(|(a, b)| a * &p[0] - b * &r[0]).collect();
            if !is_zero_vec(&d) {
                d = primitive(d);
                gens.push(direction(&d));
            }
        }
    }
    Cell::from_generators(n, cell.lineality(), &gens).expect("tangent cone contains the origin")
}

/// The star of `x` at the point `point` in the relative interior of `tau`.
pub fn star(x: &TropicalCycle, tau: &Cell, point: &[Rational]) -> Result<TropicalCycle> {
    if !tau.contains_point_relint(point) {
        return Err(Error::NotInRelativeInterior);
    }
    let h = homogenize(point);
    let cells: Vec<(Cell, BigInt)> = x
        .cells
        .iter()
        .filter(|(c, _)| c.contains_homog(&h))
        .map(|(c, w)| (tangent_cone(c, &h), w.clone()))
        .collect();
    if cells.is_empty() {
        return Err(Error::NotInSupport);
    }
    TropicalCycle::new(x.ambient, x.dim, cells)
}

/// Stellar subdivision of a fan cycle along the ray through `r`.
pub fn stellar_subdivide(x: &TropicalCycle, r: &LatticeVector) -> Result<TropicalCycle> {
    if !x.is_fan() {
        return Err(Error::Invalid("stellar subdivision needs a fan cycle".into()));
    }
    let n = x.ambient;
    if r.dim() != n || r.is_zero() {
        return Err(Error::Dimension("subdivision ray".into()));
    }
    let dr = direction(&primitive(r.coords().to_vec()));
    if !x.cells.iter().any(|(c, _)| c.contains_homog(&dr)) {
        return Err(Error::NotInSupport);
    }
    let mut cells = Vec::new();
    for (c, w) in &x.cells {
        let inside = c.contains_homog(&dr);
        let is_ray = c.rays().contains(&dr);
        let in_lin = !c.lineality().is_empty() && echelon(c.lineality(), n + 1).contains(&dr);
        if !inside || is_ray || in_lin {
            cells.push((c.clone(), w.clone()));
            continue;
        }
        for f in c.facets() {
            if f.at_infinity || dot(&f.normal, &dr).is_zero() {
                continue;
            }
            let mut gens: Vec<IntVec> = f.incidence.ones().map(|i| c.rays()[i].clone()).collect();
            gens.push(dr.clone());
            let piece = Cell::from_generators(n, c.lineality(), &gens).expect("nonempty");
            if piece.dim() == c.dim() {
                cells.push((piece, w.clone()));
            }
        }
    }
    TropicalCycle::new(n, x.dim, cells)
}

/// Translate a cycle by a rational vector.
pub fn translate(x: &TropicalCycle, t: &[Rational]) -> TropicalCycle {
    let cells = x
        .cells
        .iter()
        .map(|(c, w)| {
            let verts: Vec<RatVec> = c
                .vertices()
                .iter()
                .map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect())
                .collect();
            (
                Cell::polyhedron(x.ambient, &verts, &c.directions(), &c.lineality_directions())
                    .expect("nonempty"),
                w.clone(),
            )
        })
        .collect();
    TropicalCycle::from_normalized(x.ambient, x.dim, cells)
}
