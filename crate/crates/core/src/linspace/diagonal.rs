//! Cartier descriptions of diagonals of tropical linear spaces.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::fans::{build_fnk, RaySymbol};
use crate::error::{Error, Result};
use crate::functions::{apply_product, ray_function, CartierExpression, PLFunction};
use crate::polyhedra::{Complex, TropicalCycle};

/// `F^n_n`, built once per `n` so that all ray functions share one carrier.
pub fn fnn(n: usize) -> Complex {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Complex>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().expect("cache lock").get(&n) {
        return c.clone();
    }
    let c = build_fnk(n, n).expect("k = n is valid");
    cache.lock().expect("cache lock").entry(n).or_insert(c).clone()
}

/// The ray function of a named ray of `F^n_n`.
pub fn symbol_function(n: usize, s: RaySymbol) -> Result<PLFunction> {
    ray_function(&fnn(n), &s.vector(n))
}

/// An integer combination of ray functions of `F^n_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SymbolicFunction(pub BTreeMap<RaySymbol, BigInt>);

impl SymbolicFunction {
    pub fn symbol(s: RaySymbol) -> Self {
        Self(BTreeMap::from([(s, BigInt::one())]))
    }

    pub fn add_term(&mut self, s: RaySymbol, c: &BigInt) {
        let e = self.0.entry(s).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&s);
        }
    }

    pub fn plus(&self, other: &SymbolicFunction) -> SymbolicFunction {
        let mut out = self.clone();
        for (s, c) in &other.0 {
            out.add_term(*s, c);
        }
        out
    }

    pub fn scaled(&self, c: &BigInt) -> SymbolicFunction {
        let mut out = SymbolicFunction::default();
        for (s, a) in &self.0 {
            out.add_term(*s, &(a * c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// The function on `F^n_n`.
    pub fn to_function(&self, n: usize) -> Result<PLFunction> {
        let carrier = fnn(n);
        let mut acc = PLFunction::zero(carrier);
        for (s, c) in &self.0 {
            acc = acc.add(&symbol_function(n, *s)?.scale(c))?;
        }
        Ok(acc)
    }

    /// Parses `"T1+T2+T3+B-2A-2D"`.
    pub fn parse(text: &str) -> Result<SymbolicFunction> {
        let mut out = SymbolicFunction::default();
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "0" {
            return Ok(out);
        }
        let mut i = 0;
        let b = t.as_bytes();
        while i < b.len() {
            let mut sign = BigInt::one();
            if b[i] == b'+' || b[i] == b'-' {
                if b[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: BigInt = if i > start {
                t[start..i].parse().map_err(|_| Error::Parse(text.into()))?
            } else {
                BigInt::one()
            };
            let start = i;
            i += 1;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            if start >= b.len() {
                return Err(Error::Parse(format!("dangling sign in {text:?}")));
            }
            let sym = RaySymbol::parse(&t[start..i])?;
            out.add_term(sym, &(sign * coeff));
        }
        Ok(out)
    }
}

impl fmt::Display for SymbolicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        // T's first, then B, A, D as in the usual display
        let rank = |s: &RaySymbol| match s {
            RaySymbol::T(i) => (0, *i),
            RaySymbol::Bi(i) => (1, *i),
            RaySymbol::B => (2, 0),
            RaySymbol::A => (3, 0),
            RaySymbol::D(m) => (4, *m),
        };
        let mut items: Vec<(&RaySymbol, &BigInt)> = self.0.iter().collect();
        items.sort_by_key(|(s, _)| rank(s));
        for (k, (s, c)) in items.into_iter().enumerate() {
            let neg = c < &BigInt::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, "-")?,
                (_, false) => write!(f, "+")?,
            }
            if !a.is_one() {
                write!(f, "{a}")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// `(T_1 + B) ... (T_n + B) (A + D)^k` on `F^n_n`, whose divisor on `[F^n_n]`
/// is the diagonal of `L^n_{n-k}`.
pub fn diagonal_divisors_rn(n: usize, k: usize) -> Result<CartierExpression> {
    if k > n {
        return Err(Error::Invalid(format!("k = {k} exceeds n = {n}")));
    }
    let mut factors = Vec::new();
    for i in 1..=n {
        let f = SymbolicFunction::symbol(RaySymbol::T(i)).plus(&SymbolicFunction::symbol(RaySymbol::B));
        factors.push(f.to_function(n)?);
    }
    let m = SymbolicFunction::symbol(RaySymbol::A).plus(&SymbolicFunction::symbol(RaySymbol::D(0)));
    let mf = m.to_function(n)?;
    for _ in 0..k {
        factors.push(mf.clone());
    }
    Ok(CartierExpression::monomial(factors))
}

/// A sum of products of Cartier divisors cutting out a diagonal.
///
/// The representation is a product of blocks, each block a sum of tuples
/// of functions: `prod_b (sum_i h^b_{i,1} ... h^b_{i,c_b})`. A linear space
/// has a single block; products of spaces use one block per factor.
#[derive(Clone, Debug)]
pub struct DiagonalRepresentation {
    pub codim: usize,
    pub blocks: Vec<Vec<Vec<PLFunction>>>,
    /// For representations on `F^n_n`: the functions of the single block as
    /// combinations of named rays.
    pub symbolic: Option<Vec<Vec<SymbolicFunction>>>,
}

impl DiagonalRepresentation {
    pub fn single(codim: usize, tuples: Vec<Vec<PLFunction>>) -> Self {
        Self { codim, blocks: vec![tuples], symbolic: None }
    }

    /// Tuples of a single-block representation.
    pub fn tuples(&self) -> &[Vec<PLFunction>] {
        &self.blocks[0]
    }

    /// `sum_i h_{i,1} ... h_{i,c} . X`, block by block.
    pub fn apply(&self, x: &TropicalCycle) -> Result<TropicalCycle> {
        let mut cur = x.clone();
        for block in &self.blocks {
            let depth = block.first().map_or(0, Vec::len);
            let dim = cur.dim().saturating_sub(depth);
            let mut parts = Vec::with_capacity(block.len());
            for tuple in block {
                parts.push(apply_product(tuple, &cur)?);
            }
            cur = TropicalCycle::sum(cur.ambient_dim(), dim, parts)?;
        }
        Ok(cur)
    }
}
