//! Integer affine maps and push-forwards of cycles along them.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{index_of, IntMatrix, IntVec};
use crate::polyhedra::{Cell, TropicalCycle};

/// `x -> A x + t` from `Z^source` to `Z^target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    matrix: IntMatrix,
    translation: IntVec,
}

impl Morphism {
    pub fn new(matrix: IntMatrix, translation: IntVec) -> Result<Self> {
        if translation.len() != matrix.rows() {
            return Err(Error::Dimension("translation length differs from target dimension".into()));
        }
        Ok(Self { matrix, translation })
    }

    pub fn linear(matrix: IntMatrix) -> Self {
        let t = vec![BigInt::zero(); matrix.rows()];
        Self { matrix, translation: t }
    }

    pub fn identity(n: usize) -> Self {
        Self::linear(IntMatrix::identity(n))
    }

    /// `x -> (x, x)`.
    pub fn diagonal(n: usize) -> Self {
        let mut m = IntMatrix::zeros(2 * n, n);
        for i in 0..n {
            m[(i, i)] = 1.into();
            m[(n + i, i)] = 1.into();
        }
        Self::linear(m)
    }

    /// Projection of `R^{a+b}` onto the first `a` coordinates.
    pub fn first_projection(a: usize, b: usize) -> Self {
        let mut m = IntMatrix::zeros(a, a + b);
        for i in 0..a {
            m[(i, i)] = 1.into();
        }
        Self::linear(m)
    }

    /// Projection of `R^{a+b}` onto the last `b` coordinates.
    pub fn second_projection(a: usize, b: usize) -> Self {
        let mut m = IntMatrix::zeros(b, a + b);
        for i in 0..b {
            m[(i, a + i)] = 1.into();
        }
        Self::linear(m)
    }

    /// `x -> (x, f(x))`.
    pub fn graph_map(&self) -> Morphism {
        let (m, n) = (self.target_dim(), self.source_dim());
        let mut a = IntMatrix::zeros(n + m, n);
        let mut t = vec![BigInt::zero(); n + m];
        for i in 0..n {
            a[(i, i)] = 1.into();
        }
        for i in 0..m {
            for j in 0..n {
                a[(n + i, j)] = self.matrix[(i, j)].clone();
            }
            t[n + i] = self.translation[i].clone();
        }
        Morphism { matrix: a, translation: t }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Morphism) -> Result<Morphism> {
        if first.target_dim() != self.source_dim() {
            return Err(Error::Dimension("maps cannot be composed".into()));
        }
        let matrix = self.matrix.mul(&first.matrix);
        let mut translation = self.matrix.apply(&first.translation);
        for (a, b) in translation.iter_mut().zip(&self.translation) {
            *a += b;
        }
        Ok(Morphism { matrix, translation })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn translation(&self) -> &[BigInt] {
        &self.translation
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    /// The homogenized matrix `(x0, x) -> (x0, A x + x0 t)`.
    pub fn homogeneous(&self) -> IntMatrix {
        let (m, n) = (self.target_dim(), self.source_dim());
        let mut h = IntMatrix::zeros(m + 1, n + 1);
        h[(0, 0)] = 1.into();
        for i in 0..m {
            h[(i + 1, 0)] = self.translation[i].clone();
            for j in 0..n {
                h[(i + 1, j + 1)] = self.matrix[(i, j)].clone();
            }
        }
        h
    }

    /// Image of a cell.
    pub fn image(&self, c: &Cell) -> Cell {
        let h = self.homogeneous();
        let rays: Vec<IntVec> = c.rays().iter().map(|r| h.apply(r)).collect();
        let lin: Vec<IntVec> = c.lineality().iter().map(|l| h.apply(l)).collect();
        Cell::from_generators(self.target_dim(), &lin, &rays).expect("image of a nonempty cell")
    }
}

/// Push-forward `f_* X`: images of cells on which `f` is injective, weighted
/// by the lattice index of the image of the cell lattice.
pub fn pushforward(f: &Morphism, x: &TropicalCycle) -> Result<TropicalCycle> {
    if f.source_dim() != x.ambient_dim() {
        return Err(Error::Dimension("map source does not match cycle".into()));
    }
    let m = f.target_dim();
    let h = f.homogeneous();
    let mut cells = Vec::new();
    for (c, w) in x.cells() {
        let img = f.image(c);
        if img.dim() != c.dim() {
            continue;
        }
        let mapped: Vec<IntVec> = c.direction_lattice().iter().map(|b| h.apply(b)).collect();
        let idx = index_of(&mapped, &img.direction_lattice(), m + 1)?;
        cells.push((img, w * idx));
    }
    TropicalCycle::new(m, x.dim(), cells)
}

/// As [`pushforward`], first checking that the image of `x` lies in the
/// support of `target`.
pub fn pushforward_into(f: &Morphism, x: &TropicalCycle, target: &TropicalCycle) -> Result<TropicalCycle> {
    let y = pushforward(f, x)?;
    for (c, _) in x.cells() {
        let img = f.image(c);
        let probe = TropicalCycle::new(f.target_dim(), img.dim(), vec![(img, BigInt::from(1))])?;
        if !target.support_contains_cycle(&probe) {
            return Err(Error::Support("image leaves the target support".into()));
        }
    }
    Ok(y)
}

/// `x -> (x, x)` pushed forward: the diagonal of `C x C`.
pub fn diagonal_cycle(c: &TropicalCycle) -> TropicalCycle {
    pushforward(&Morphism::diagonal(c.ambient_dim()), c).expect("diagonal map fits the cycle")
}

/// `Gamma_f`: push-forward of `x` along `x -> (x, f(x))`.
pub fn graph(f: &Morphism, x: &TropicalCycle) -> Result<TropicalCycle> {
    pushforward(&f.graph_map(), x)
}
