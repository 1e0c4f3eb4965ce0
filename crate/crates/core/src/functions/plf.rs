//! Piecewise affine functions on polyhedral complexes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{dot_rat_int, IntMatrix, IntVec, RatVec, Rational};
use crate::polyhedra::{homogenize, tangent_cone, Cell, Complex};

/// A continuous function, affine on every maximal cell of its carrier.
///
/// The form of cell `i` is a homogeneous covector `(offset, c)` so that the
/// value at `x` is `offset + c . x`.
#[derive(Clone, Debug)]
pub struct PLFunction {
    carrier: Complex,
    forms: Vec<RatVec>,
}

impl PLFunction {
    /// Builds a function and checks that neighbouring forms agree on shared
    /// faces.
    pub fn new(carrier: Complex, forms: Vec<RatVec>) -> Result<Self> {
        let f = Self::new_unchecked(carrier, forms)?;
        f.check_continuity()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(carrier: Complex, forms: Vec<RatVec>) -> Result<Self> {
        if forms.len() != carrier.cells().len() {
            return Err(Error::Invalid(format!(
                "{} forms for {} cells",
                forms.len(),
                carrier.cells().len()
            )));
        }
        if forms.iter().any(|f| f.len() != carrier.ambient_dim() + 1) {
            return Err(Error::Dimension("form length".into()));
        }
        Ok(Self { carrier, forms })
    }

    /// The function `offset + c . x` on a carrier.
    pub fn affine(carrier: Complex, form: RatVec) -> Result<Self> {
        let forms = vec![form; carrier.cells().len()];
        Self::new_unchecked(carrier, forms)
    }

    pub fn zero(carrier: Complex) -> Self {
        let n = carrier.ambient_dim();
        let forms = vec![vec![Rational::zero(); n + 1]; carrier.cells().len()];
        Self { carrier, forms }
    }

    pub fn carrier(&self) -> &Complex {
        &self.carrier
    }

    pub fn forms(&self) -> &[RatVec] {
        &self.forms
    }

    pub fn ambient_dim(&self) -> usize {
        self.carrier.ambient_dim()
    }

    fn check_continuity(&self) -> Result<()> {
        let cells = self.carrier.cells();
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                if self.forms[i] == self.forms[j] {
                    continue;
                }
                if let Some(c) = cells[i].intersect(&cells[j]) {
                    let gens = c.rays().iter().chain(c.lineality());
                    for g in gens {
                        if dot_rat_int(&self.forms[i], g) != dot_rat_int(&self.forms[j], g) {
                            return Err(Error::Invalid(format!(
                                "forms of cells {i} and {j} disagree on their common face"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Value at a point of the carrier support.
    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational> {
        let h = homogenize(x);
        let i = self
            .carrier
            .cells()
            .iter()
            .position(|c| c.contains_homog(&h))
            .ok_or(Error::NotInSupport)?;
        let mut v = self.forms[i][0].clone();
        for (c, xi) in self.forms[i][1..].iter().zip(x) {
            v += c * xi;
        }
        Ok(v)
    }

    pub fn scale(&self, c: &BigInt) -> PLFunction {
        let c = Rational::from_integer(c.clone());
        let forms = self.forms.iter().map(|f| f.iter().map(|x| x * &c).collect()).collect();
        PLFunction { carrier: self.carrier.clone(), forms }
    }

    pub fn neg(&self) -> PLFunction {
        self.scale(&BigInt::from(-1))
    }

    /// Pointwise sum, on the common refinement of the carriers.
    pub fn add(&self, other: &PLFunction) -> Result<PLFunction> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::Dimension("functions on different spaces".into()));
        }
        if self.carrier == other.carrier {
            let forms = self
                .forms
                .iter()
                .zip(&other.forms)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect();
            return Ok(PLFunction { carrier: self.carrier.clone(), forms });
        }
        let mut cells = Vec::new();
        let mut forms = Vec::new();
        let mut seen = BTreeSet::new();
        for (a, fa) in self.carrier.cells().iter().zip(&self.forms) {
            for (b, fb) in other.carrier.cells().iter().zip(&other.forms) {
                if let Some(c) = a.intersect(b) {
                    if seen.insert(c.clone()) {
                        cells.push(c);
                        forms.push(fa.iter().zip(fb).map(|(x, y)| x + y).collect::<RatVec>());
                    }
                }
            }
        }
        // keep the maximal intersections only
        let keep: Vec<bool> = (0..cells.len())
            .map(|i| {
                !(0..cells.len()).any(|j| {
                    j != i && cells[j].dim() > cells[i].dim() && cells[j].contains_cell(&cells[i])
                })
            })
            .collect();
        let pairs: Vec<(Cell, RatVec)> = cells
            .into_iter()
            .zip(forms)
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(p, _)| p)
            .collect();
        let carrier = Complex::new(self.ambient_dim(), pairs.iter().map(|(c, _)| c.clone()).collect())?;
        let forms = carrier
            .cells()
            .iter()
            .map(|c| pairs.iter().find(|(d, _)| d == c).map(|(_, f)| f.clone()).expect("cell kept"))
            .collect();
        Ok(PLFunction { carrier, forms })
    }

    pub fn sub(&self, other: &PLFunction) -> Result<PLFunction> {
        self.add(&other.neg())
    }

    /// Sum of integer multiples of functions.
    pub fn combination(terms: &[(BigInt, &PLFunction)]) -> Result<PLFunction> {
        let mut it = terms.iter();
        let (c0, f0) = it.next().ok_or_else(|| Error::Invalid("empty combination".into()))?;
        let mut acc = f0.scale(c0);
        for (c, f) in it {
            acc = acc.add(&f.scale(c))?;
        }
        Ok(acc)
    }

    /// The function `max(terms_j . (1, x))` on a carrier on which it must be
    /// affine cellwise.
    pub fn max_of_affine(carrier: Complex, terms: &[RatVec]) -> Result<PLFunction> {
        let mut forms = Vec::with_capacity(carrier.cells().len());
        for c in carrier.cells() {
            let p = c.relint_homog();
            let best = terms
                .iter()
                .max_by(|a, b| dot_rat_int(a, &p).cmp(&dot_rat_int(b, &p)))
                .ok_or_else(|| Error::Invalid("no terms".into()))?;
            for t in terms {
                let diff: RatVec = best.iter().zip(t).map(|(x, y)| x - y).collect();
                let ok = c.rays().iter().all(|r| !dot_rat_int(&diff, r).is_negative())
                    && c.lineality().iter().all(|l| dot_rat_int(&diff, l).is_zero());
                if !ok {
                    return Err(Error::NotLinear);
                }
            }
            forms.push(best.clone());
        }
        Self::new_unchecked(carrier, forms)
    }

    /// Composition with the affine map whose homogenized matrix is `m`
    /// (`(n+1) x (k+1)`, first row `(1, 0, ..., 0)`), carried by the preimages
    /// of the carrier cells.
    pub fn pullback_homogeneous(&self, m: &IntMatrix) -> Result<PLFunction> {
        let n = self.ambient_dim();
        if m.rows() != n + 1 {
            return Err(Error::Dimension("map target does not match function domain".into()));
        }
        let k = m.cols() - 1;
        let pull = |a: &IntVec| -> IntVec { (0..=k).map(|j| (0..=n).map(|i| &a[i] * &m[(i, j)]).sum()).collect() };
        let mut cells: Vec<(Cell, RatVec)> = Vec::new();
        for (c, f) in self.carrier.cells().iter().zip(&self.forms) {
            let ineqs: Vec<IntVec> = c.facets().iter().map(|f| pull(&f.normal)).collect();
            let eqs: Vec<IntVec> = c.equations().iter().map(pull).collect();
            if let Some(p) = Cell::from_constraints(k, &ineqs, &eqs) {
                let form: RatVec = (0..=k)
                    .map(|j| {
                        (0..=n)
                            .map(|i| &f[i] * Rational::from_integer(m[(i, j)].clone()))
                            .sum()
                    })
                    .collect();
                cells.push((p, form));
            }
        }
        if cells.is_empty() {
            return Err(Error::NotCovered);
        }
        let carrier = Complex::new(k, cells.iter().map(|(c, _)| c.clone()).collect())?;
        let forms = carrier
            .cells()
            .iter()
            .map(|c| cells.iter().find(|(d, _)| d == c).map(|(_, f)| f.clone()).expect("kept"))
            .collect();
        Ok(PLFunction { carrier, forms })
    }

    /// Linear parts of the function at the point `x`, carried by the tangent
    /// cones there: the function on the star at `x`.
    pub fn localize(&self, x: &[Rational]) -> Result<PLFunction> {
        let h = homogenize(x);
        let mut cells = Vec::new();
        let mut forms = Vec::new();
        for (c, f) in self.carrier.cells().iter().zip(&self.forms) {
            if c.contains_homog(&h) {
                cells.push(tangent_cone(c, &h));
                let mut lf = f.clone();
                lf[0] = Rational::zero();
                forms.push(lf);
            }
        }
        if cells.is_empty() {
            return Err(Error::NotInSupport);
        }
        let pairs: Vec<(Cell, RatVec)> = cells.into_iter().zip(forms).collect();
        let carrier = Complex::new(self.ambient_dim(), pairs.iter().map(|(c, _)| c.clone()).collect())?;
        let forms = carrier
            .cells()
            .iter()
            .map(|c| pairs.iter().find(|(d, _)| d == c).map(|(_, f)| f.clone()).expect("kept"))
            .collect();
        Ok(PLFunction { carrier, forms })
    }
}

/// The function that is one on the primitive generator of `ray` and zero on
/// all other rays, linear on every cone of a simplicial fan.
pub fn ray_function(fan: &Complex, ray: &[BigInt]) -> Result<PLFunction> {
    let n = fan.ambient_dim();
    if ray.len() != n {
        return Err(Error::Dimension("ray length".into()));
    }
    if !fan.is_simplicial() {
        return Err(Error::NotSimplicial("carrier has non-simplicial cones".into()));
    }
    let ray = crate::exactmath::primitive(ray.to_vec());
    if !fan.rays().contains(&ray) {
        return Err(Error::Invalid("not a ray of the fan".into()));
    }
    let mut forms = Vec::new();
    for c in fan.cells() {
        let gens = c.directions();
        let m = IntMatrix::from_rows_with_cols(&gens, n);
        let b: RatVec = gens
            .iter()
            .map(|g| if *g == ray { Rational::from_integer(1.into()) } else { Rational::zero() })
            .collect();
        let sol = crate::exactmath::solve_rational(&m, &b)
            .ok_or_else(|| Error::NotSimplicial("dependent rays".into()))?;
        let mut f = vec![Rational::zero()];
        f.extend(sol.particular);
        forms.push(f);
    }
    PLFunction::new_unchecked(fan.clone(), forms)
}

/// `max{0, x_1, ..., x_n}` on a carrier.
pub fn max_poly_function(n: usize, carrier: &Complex) -> Result<PLFunction> {
    if carrier.ambient_dim() != n {
        return Err(Error::Dimension("carrier dimension".into()));
    }
    let mut terms = vec![vec![Rational::zero(); n + 1]];
    for i in 1..=n {
        let mut t = vec![Rational::zero(); n + 1];
        t[i] = Rational::from_integer(1.into());
        terms.push(t);
    }
    PLFunction::max_of_affine(carrier.clone(), &terms)
}

pub fn add_functions(a: &PLFunction, b: &PLFunction) -> Result<PLFunction> {
    a.add(b)
}

pub fn scale_function(c: &BigInt, f: &PLFunction) -> PLFunction {
    f.scale(c)
}

/// `phi o f`, carried by the preimages of the carrier cells of `phi`.
pub fn pullback_function(f: &crate::intersect::Morphism, phi: &PLFunction) -> Result<PLFunction> {
    if f.target_dim() != phi.ambient_dim() {
        return Err(Error::Dimension("map target does not match function domain".into()));
    }
    phi.pullback_homogeneous(&f.homogeneous())
}
