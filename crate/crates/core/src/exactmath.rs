//! Exact integer and rational arithmetic and the lattice linear algebra the
//! rest of the crate is built on.
//!
//! Everything is arbitrary precision. Internally vectors are plain
//! `Vec<BigInt>`; [`LatticeVector`] and [`IntMatrix`] are the public faces.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;
pub type IntVec = Vec<BigInt>;
pub type RatVec = Vec<Rational>;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn ivec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    let mut s = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn dot_rat_int(a: &[Rational], b: &[BigInt]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * Rational::from_integer(y.clone());
        }
    }
    s
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn gcd_of(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in v {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

/// Divides by the entry gcd in place. Direction (sign) is kept.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = gcd_of(v);
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
}

pub fn primitive(mut v: IntVec) -> IntVec {
    make_primitive(&mut v);
    v
}

/// Scales a rational vector by a positive factor to a primitive integer vector.
pub fn rat_to_primitive(v: &[Rational]) -> IntVec {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let out: IntVec = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    primitive(out)
}

pub fn scale(v: &[BigInt], c: &BigInt) -> IntVec {
    v.iter().map(|x| x * c).collect()
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[BigInt]) -> IntVec {
    a.iter().map(|x| -x).collect()
}

/// `ca * a + cb * b`.
pub fn lincomb(ca: &BigInt, a: &[BigInt], cb: &BigInt, b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| ca * x + cb * y).collect()
}

pub fn to_rat(v: &[BigInt]) -> RatVec {
    v.iter().cloned().map(Rational::from_integer).collect()
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn parse_integer(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

/// A point of the integer lattice `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(IntVec);

impl LatticeVector {
    pub fn new(coords: IntVec) -> Self {
        Self(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self(ivec(coords))
    }

    /// The `i`-th standard basis vector of `Z^n`, `i` counted from one. Index 0
    /// gives `e_0 = -e_1 - ... - e_n`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); n];
        if i == 0 {
            v.iter_mut().for_each(|x| *x = int(-1));
        } else {
            v[i - 1] = BigInt::one();
        }
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_inner(self) -> IntVec {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.0)
    }
}

impl std::ops::Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(neg(&self.0))
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

pub fn primitive_vector(v: &LatticeVector) -> Result<LatticeVector> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(LatticeVector(primitive(v.0.clone())))
}

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[IntVec]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols(rows: &[IntVec], cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self { rows: rows.len(), cols, data: rows.iter().flatten().cloned().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(&rows.iter().map(|r| ivec(r)).collect::<Vec<_>>())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<IntVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigInt]) -> IntVec {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        bareiss_determinant(self.to_rows())
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

fn bareiss_determinant(mut m: Vec<IntVec>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Row Hermite normal form: returns `(H, U)` with `H = U * M`, `U`
/// unimodular, `H` upper echelon with positive pivots and the entries above
/// each pivot reduced into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pr = 0;
    for col in 0..h.cols {
        if pr == h.rows {
            break;
        }
        for i in pr + 1..h.rows {
            if h[(i, col)].is_zero() {
                continue;
            }
            let a = h[(pr, col)].clone();
            let b = h[(i, col)].clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let ag = &a / &g;
            let bg = &b / &g;
            for mat in [&mut h, &mut u] {
                for j in 0..mat.cols {
                    let p = mat[(pr, j)].clone();
                    let q = mat[(i, j)].clone();
                    mat[(pr, j)] = &x * &p + &y * &q;
                    mat[(i, j)] = -&bg * &p + &ag * &q;
                }
            }
        }
        if h[(pr, col)].is_zero() {
            continue;
        }
        if h[(pr, col)].is_negative() {
            for mat in [&mut h, &mut u] {
                for j in 0..mat.cols {
                    mat[(pr, j)] = -&mat[(pr, j)];
                }
            }
        }
        let piv = h[(pr, col)].clone();
        for k in 0..pr {
            let q = h[(k, col)].div_floor(&piv);
            if q.is_zero() {
                continue;
            }
            for mat in [&mut h, &mut u] {
                for j in 0..mat.cols {
                    let sub = &q * &mat[(pr, j)];
                    mat[(k, j)] -= sub;
                }
            }
        }
        pr += 1;
    }
    (h, u)
}

/// Canonical echelon data of a rational row space: rows are primitive
/// integer multiples of the reduced row echelon form with positive pivots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Echelon {
    pub rows: Vec<IntVec>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Zeroes the pivot coordinates of `v` by subtracting row multiples and
    /// rescales by a positive factor to a primitive vector. Two vectors with
    /// the same class modulo the row space map to positive multiples of the
    /// same result.
    pub fn reduce(&self, v: &[BigInt]) -> IntVec {
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c].is_zero() {
                continue;
            }
            let a = row[c].clone();
            let b = v[c].clone();
            v = lincomb(&a, &v, &-b, row);
            make_primitive(&mut v);
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Basis of the orthogonal complement `{y : y . row = 0}`.
    pub fn orthogonal_complement(&self) -> Vec<IntVec> {
        let mut out = Vec::new();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        for f in (0..self.ncols).filter(|&f| !is_pivot[f]) {
            let mut x: RatVec = vec![Rational::zero(); self.ncols];
            x[f] = Rational::one();
            for (row, &c) in self.rows.iter().zip(&self.pivots) {
                x[c] = -Rational::new(row[f].clone(), row[c].clone());
            }
            out.push(rat_to_primitive(&x));
        }
        out
    }
}

/// Integer Gauss-Jordan elimination producing the canonical [`Echelon`].
pub fn echelon(vectors: &[IntVec], ncols: usize) -> Echelon {
    let mut rows: Vec<IntVec> = vectors
        .iter()
        .filter(|v| !is_zero_vec(v))
        .map(|v| primitive(v.clone()))
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        if rows[r][col].is_negative() {
            rows[r] = neg(&rows[r]);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let a = rows[r][col].clone();
            let b = rows[i][col].clone();
            let mut nv = lincomb(&a, &rows[i], &-b, &rows[r]);
            make_primitive(&mut nv);
            rows[i] = nv;
        }
        pivots.push(col);
        r += 1;
        // drop rows that became zero
        let (keep, _): (Vec<_>, Vec<_>) = rows.drain(r..).partition(|v| !is_zero_vec(v));
        rows.extend(keep);
    }
    rows.truncate(r);
    Echelon { rows, pivots, ncols }
}

pub fn rank(vectors: &[IntVec], ncols: usize) -> usize {
    echelon(vectors, ncols).rank()
}

/// Basis of the integer kernel lattice `{z in Z^n : E z = 0}`.
pub fn integer_kernel(equations: &[IntVec], n: usize) -> Vec<IntVec> {
    if equations.is_empty() {
        return (0..n)
            .map(|i| {
                let mut v = vec![BigInt::zero(); n];
                v[i] = BigInt::one();
                v
            })
            .collect();
    }
    let et = IntMatrix::from_rows_with_cols(equations, n).transpose();
    let (h, u) = hnf(&et);
    (0..h.rows())
        .filter(|&i| is_zero_vec(h.row(i)))
        .map(|i| u.row(i).to_vec())
        .collect()
}

/// Lattice basis of `span(vectors) ∩ Z^n`.
pub fn saturated_basis(vectors: &[IntVec], n: usize) -> Vec<IntVec> {
    let e = echelon(vectors, n);
    if e.rank() == 0 {
        return Vec::new();
    }
    integer_kernel(&e.orthogonal_complement(), n)
}

/// Solution of `M x = b` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: RatVec,
    pub kernel: Vec<IntVec>,
}

/// Solves `M x = b` exactly. `None` means the system is inconsistent.
pub fn solve_rational(m: &IntMatrix, b: &[Rational]) -> Option<Solution> {
    assert_eq!(m.rows(), b.len());
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<RatVec> = (0..rows)
        .map(|i| {
            let mut r = to_rat(m.row(i));
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..=cols {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows {
            break;
        }
    }
    if a[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][cols].clone();
    }
    let mut kernel = Vec::new();
    for f in (0..cols).filter(|f| !pivots.contains(f)) {
        let mut k = vec![Rational::zero(); cols];
        k[f] = Rational::one();
        for (i, &c) in pivots.iter().enumerate() {
            k[c] = -a[i][f].clone();
        }
        let mut k = rat_to_primitive(&k);
        if k.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
            k = neg(&k);
        }
        kernel.push(k);
    }
    Some(Solution { particular: x, kernel })
}

/// Index of the lattice generated by `sub` inside the lattice generated by
/// `lattice`. Both must be linearly independent and span the same space.
pub fn lattice_index(sub: &[LatticeVector], lattice: &[LatticeVector]) -> Result<BigInt> {
    let n = sub
        .first()
        .or(lattice.first())
        .map_or(0, LatticeVector::dim);
    let s: Vec<IntVec> = sub.iter().map(|v| v.0.clone()).collect();
    let l: Vec<IntVec> = lattice.iter().map(|v| v.0.clone()).collect();
    index_of(&s, &l, n)
}

pub(crate) fn index_of(sub: &[IntVec], lattice: &[IntVec], n: usize) -> Result<BigInt> {
    if rank(sub, n) != sub.len() || rank(lattice, n) != lattice.len() {
        return Err(Error::Dependent);
    }
    let mut all = sub.to_vec();
    all.extend_from_slice(lattice);
    if sub.len() != lattice.len() || rank(&all, n) != lattice.len() {
        return Err(Error::SpanMismatch);
    }
    if sub.is_empty() {
        return Ok(BigInt::one());
    }
    // Coordinates of each sub vector in the lattice basis.
    let lt = IntMatrix::from_rows_with_cols(lattice, n).transpose();
    let mut coords = Vec::with_capacity(sub.len());
    for v in sub {
        let sol = solve_rational(&lt, &to_rat(v)).ok_or(Error::SpanMismatch)?;
        if sol.particular.iter().any(|x| !x.is_integer()) {
            return Err(Error::NotSublattice);
        }
        coords.push(sol.particular.iter().map(|x| x.to_integer()).collect::<IntVec>());
    }
    let (h, _) = hnf(&IntMatrix::from_rows(&coords));
    let mut idx = BigInt::one();
    for i in 0..h.rows() {
        idx *= &h[(i, i)];
    }
    Ok(idx.abs())
}

/// Writes `target` as an integer combination `Σ c_i basis_i` minimising
/// nothing in particular: the Bezout vector of the values `f(basis_i)`.
/// Returns `(g, c)` where `g = gcd(values)` and `Σ c_i values_i = g`.
pub(crate) fn bezout(values: &[BigInt]) -> (BigInt, IntVec) {
    let mut g = BigInt::zero();
    let mut coeffs = vec![BigInt::zero(); values.len()];
    for (i, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let eg = g.extended_gcd(v);
        // new g = x * g + y * v
        for c in coeffs.iter_mut().take(i) {
            *c = &*c * &eg.x;
        }
        coeffs[i] = eg.y.clone();
        g = eg.gcd;
    }
    if g.is_negative() {
        g = -g;
        coeffs.iter_mut().for_each(|c| *c = -&*c);
    }
    (g, coeffs)
}
