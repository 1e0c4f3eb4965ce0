//! The fans `L^n_k` and the refinements `F^n_k` of `L^n_k x L^n_k`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactmath::IntVec;
use crate::polyhedra::{Cell, Complex, TropicalCycle};

/// `-e_i` in `R^n`, where `e_0 = -(e_1 + ... + e_n)`.
pub fn minus_e(n: usize, i: usize) -> IntVec {
    let mut v = vec![BigInt::from(0); n];
    if i == 0 {
        v.iter_mut().for_each(|x| *x = BigInt::one());
    } else {
        v[i - 1] = BigInt::from(-1);
    }
    v
}

/// Named rays of `F^n_n` in `R^n x R^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RaySymbol {
    /// `(-e_i | 0)` for `i = 1..n`.
    T(usize),
    /// `(-e_0 | 0)`.
    A,
    /// `(0 | -e_0)`.
    B,
    /// `(0 | -e_i)` for `i = 1..n`.
    Bi(usize),
    /// `(-e_mu | -e_mu)` for `mu = 0..n`; `D(0)` is the ray called `D`.
    D(usize),
}

impl RaySymbol {
    pub fn vector(&self, n: usize) -> IntVec {
        let zero = vec![BigInt::from(0); n];
        let (a, b) = match *self {
            RaySymbol::T(i) => (minus_e(n, i), zero),
            RaySymbol::A => (minus_e(n, 0), zero),
            RaySymbol::B => (zero, minus_e(n, 0)),
            RaySymbol::Bi(i) => (zero, minus_e(n, i)),
            RaySymbol::D(m) => (minus_e(n, m), minus_e(n, m)),
        };
        let mut v = a;
        v.extend(b);
        v
    }

    /// `(-e_i | 0)` for any `i = 0..n`.
    pub fn left(i: usize) -> RaySymbol {
        if i == 0 {
            RaySymbol::A
        } else {
            RaySymbol::T(i)
        }
    }

    /// `(0 | -e_i)` for any `i = 0..n`.
    pub fn right(i: usize) -> RaySymbol {
        if i == 0 {
            RaySymbol::B
        } else {
            RaySymbol::Bi(i)
        }
    }

    pub fn parse(s: &str) -> Result<RaySymbol> {
        let bad = || Error::Parse(format!("unknown ray symbol {s:?}"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        match s {
            "A" => Ok(RaySymbol::A),
            "B" => Ok(RaySymbol::B),
            "D" => Ok(RaySymbol::D(0)),
            _ if s.starts_with("T") => Ok(RaySymbol::T(num(&s[1..])?)),
            _ if s.starts_with("B") => Ok(RaySymbol::Bi(num(&s[1..])?)),
            _ if s.starts_with("D") => Ok(RaySymbol::D(num(&s[1..])?)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for RaySymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RaySymbol::T(i) => write!(f, "T{i}"),
            RaySymbol::A => write!(f, "A"),
            RaySymbol::B => write!(f, "B"),
            RaySymbol::Bi(i) => write!(f, "B{i}"),
            RaySymbol::D(0) => write!(f, "D"),
            RaySymbol::D(m) => write!(f, "D{m}"),
        }
    }
}

/// Subsets of `{0..n}` of size `k`, lexicographic.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::Invalid(format!("k = {k} exceeds n = {n}")));
    }
    Ok(())
}

/// The tropical linear space `L^n_k`: cones on `{-e_i : i in I}` for proper
/// subsets `I` of `{0..n}` with `|I| = k`, all of weight one.
pub fn build_lnk(n: usize, k: usize) -> Result<TropicalCycle> {
    check_nk(n, k)?;
    let cones: Vec<(Cell, BigInt)> = subsets(n, k)
        .into_iter()
        .map(|s| {
            let gens: Vec<IntVec> = s.iter().map(|&i| minus_e(n, i)).collect();
            (Cell::cone(n, &gens), BigInt::one())
        })
        .collect();
    TropicalCycle::new(n, k, cones)
}

/// Maximal cones of `F^n_k` as sets of ray symbols.
pub fn fnk_symbolic(n: usize, k: usize) -> Result<Vec<BTreeSet<RaySymbol>>> {
    check_nk(n, k)?;
    let mut todo: Vec<BTreeSet<RaySymbol>> = Vec::new();
    let sides = subsets(n, k);
    for i in &sides {
        for j in &sides {
            let mut s = BTreeSet::new();
            s.extend(i.iter().map(|&a| RaySymbol::left(a)));
            s.extend(j.iter().map(|&b| RaySymbol::right(b)));
            todo.push(s);
        }
    }
    let mut done = BTreeSet::new();
    while let Some(cone) = todo.pop() {
        let clash = (0..=n).find(|&i| {
            cone.contains(&RaySymbol::left(i)) && cone.contains(&RaySymbol::right(i))
        });
        match clash {
            None => {
                done.insert(cone);
            }
            Some(i) => {
                for drop in [RaySymbol::right(i), RaySymbol::left(i)] {
                    let mut c = cone.clone();
                    c.remove(&drop);
                    c.insert(RaySymbol::D(i));
                    todo.push(c);
                }
            }
        }
    }
    Ok(done.into_iter().collect())
}

/// The refinement `F^n_k` of `L^n_k x L^n_k` as a complex of maximal cones.
pub fn build_fnk(n: usize, k: usize) -> Result<Complex> {
    let cones = fnk_symbolic(n, k)?;
    let cells = cones
        .iter()
        .map(|c| {
            let gens: Vec<IntVec> = c.iter().map(|s| s.vector(n)).collect();
            Cell::cone(2 * n, &gens)
        })
        .collect();
    Complex::new(2 * n, cells)
}

/// `[F^n_k]`: the fan `F^n_k` as a cycle with all weights one.
pub fn fnk_cycle(n: usize, k: usize) -> Result<TropicalCycle> {
    let f = build_fnk(n, k)?;
    TropicalCycle::new(2 * n, 2 * k, f.cells().iter().map(|c| (c.clone(), BigInt::one())).collect())
}
