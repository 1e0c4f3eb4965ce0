//! Rewriting `prod (T_i + B) (A + D)^k` as `Q (B + D)^k (A + D)^k` modulo the
//! vanishing relations, which yields Cartier divisors cutting the diagonal
//! out of `L^n_{n-k} x L^n_{n-k}`.
//!
//! Monomials are `T_S B^s D^t M^m` with `M = A + D` and `S` a set of indices.
//! Applied to `L^n_{n-k} x R^n`, a factor `M^m` cuts the first factor down to
//! dimension `d - m` (`d = n - k`), so the relations are tested against
//! `d' = d - m`:
//! * `s >= 1`: zero as soon as `|S| + t > d'`,
//! * `s = 0`: zero as soon as `|S| + [t > 0] > d'`.
//!
//! A nonzero monomial with `s >= k` contributes `T_S B^{s-k} D^t M^m` to `Q`
//! and leaves the correction `-sum_j C(k,j) T_S B^{s-j} D^{t+j} M^m`, where
//! `B D^u = B M^u` by `A B = 0`. Monomials are processed in increasing
//! `t + m`, so corrections meet their like terms before being processed.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::diagonal::{DiagonalRepresentation, SymbolicFunction};
use super::fans::{build_lnk, RaySymbol};
use crate::error::{Error, Result};
use crate::intersect::diagonal_cycle;
use crate::polyhedra::{cross, cycles_equal, TropicalCycle};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    tm: usize,
    t: usize,
    m: usize,
    s: usize,
    set: Vec<usize>,
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn vanishes(d: usize, k: &Key) -> bool {
    if k.m > d {
        return true;
    }
    let dp = d - k.m;
    if k.s >= 1 {
        k.set.len() + k.t > dp
    } else {
        k.set.len() + usize::from(k.t > 0) > dp
    }
}

fn subsets_of(n: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .map(|mask| (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect())
        .collect()
}

/// The monomials of `Q`, as `(coefficient, S, B-power, D-power, M-power)`.
pub(crate) fn rewrite_terms(n: usize, k: usize) -> Result<Vec<(BigInt, Vec<usize>, usize, usize, usize)>> {
    if k > n {
        return Err(Error::Invalid(format!("k = {k} exceeds n = {n}")));
    }
    let d = n - k;
    let mut queue: BTreeMap<Key, BigInt> = BTreeMap::new();
    for set in subsets_of(n) {
        let s = n - set.len();
        let key = Key { tm: 0, t: 0, m: 0, s, set };
        *queue.entry(key).or_insert_with(BigInt::zero) += 1;
    }
    let mut q: BTreeMap<(Vec<usize>, usize, usize, usize), BigInt> = BTreeMap::new();
    while let Some((key, alpha)) = queue.pop_first() {
        if alpha.is_zero() || vanishes(d, &key) {
            continue;
        }
        if key.s < k {
            return Err(Error::Verification(format!(
                "monomial T{:?} B^{} D^{} M^{} survives rewriting",
                key.set, key.s, key.t, key.m
            )));
        }
        *q.entry((key.set.clone(), key.s - k, key.t, key.m)).or_insert_with(BigInt::zero) += &alpha;
        for j in 1..=k {
            let c = -(&alpha * binom(k, j));
            let s = key.s - j;
            let (t, m) = if s >= 1 { (0, key.m + key.t + j) } else { (key.t + j, key.m) };
            let nk = Key { tm: t + m, t, m, s, set: key.set.clone() };
            *queue.entry(nk).or_insert_with(BigInt::zero) += c;
        }
    }
    Ok(q
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((set, s, t, m), c)| (c, set, s, t, m))
        .collect())
}

/// Turns monomials of degree `d` into tuples of `d` functions, merging
/// monomials that agree in all but their last factor.
fn tuples_from_terms(
    d: usize,
    terms: &[(BigInt, Vec<usize>, usize, usize, usize)],
) -> Vec<Vec<SymbolicFunction>> {
    let m_fn = SymbolicFunction::symbol(RaySymbol::A).plus(&SymbolicFunction::symbol(RaySymbol::D(0)));
    let mut grouped: BTreeMap<Vec<SymbolicFunction>, SymbolicFunction> = BTreeMap::new();
    let mut order: Vec<Vec<SymbolicFunction>> = Vec::new();
    for (c, set, s, t, m) in terms {
        let mut factors: Vec<SymbolicFunction> = Vec::with_capacity(d);
        factors.extend(set.iter().map(|&i| SymbolicFunction::symbol(RaySymbol::T(i))));
        factors.extend((0..*s).map(|_| SymbolicFunction::symbol(RaySymbol::B)));
        factors.extend((0..*t).map(|_| SymbolicFunction::symbol(RaySymbol::D(0))));
        factors.extend((0..*m).map(|_| m_fn.clone()));
        debug_assert_eq!(factors.len(), d);
        if d == 0 {
            return vec![Vec::new()];
        }
        let last = factors.pop().expect("d >= 1").scaled(c);
        if !grouped.contains_key(&factors) {
            order.push(factors.clone());
        }
        let e = grouped.entry(factors).or_default();
        *e = e.plus(&last);
    }
    order
        .into_iter()
        .filter_map(|head| {
            let last = grouped.remove(&head).expect("grouped");
            if last.is_zero() {
                return None;
            }
            let mut t = head;
            t.push(last);
            Some(t)
        })
        .collect()
}

/// Symbolic tuples `h_{i,1} ... h_{i,n-k}` of the rewriting, not verified.
pub fn rewrite_symbolic(n: usize, k: usize) -> Result<Vec<Vec<SymbolicFunction>>> {
    let terms = rewrite_terms(n, k)?;
    Ok(tuples_from_terms(n - k, &terms))
}

/// Tuples `h_{i,j}` with `sum_i h_{i,1} ... h_{i,n-k} . [L x L] = diagonal`
/// for `L = L^n_{n-k}`, checked by direct computation.
/// Verified results are cached per `(n, k)`.
pub fn rewrite_diagonal(n: usize, k: usize) -> Result<DiagonalRepresentation> {
    static CACHE: OnceLock<Mutex<BTreeMap<(usize, usize), DiagonalRepresentation>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().expect("cache lock").get(&(n, k)) {
        return Ok(r.clone());
    }
    let rep = rewrite_unverified(n, k)?;
    verify_linear_space_representation(n, n - k, &rep)?;
    cache.lock().expect("cache lock").insert((n, k), rep.clone());
    Ok(rep)
}

/// The tuples of [`rewrite_diagonal`] without the numeric check.
pub fn rewrite_unverified(n: usize, k: usize) -> Result<DiagonalRepresentation> {
    let sym = rewrite_symbolic(n, k)?;
    let mut tuples = Vec::with_capacity(sym.len());
    for t in &sym {
        tuples.push(t.iter().map(|f| f.to_function(n)).collect::<Result<Vec<_>>>()?);
    }
    let mut rep = DiagonalRepresentation::single(n - k, tuples);
    rep.symbolic = Some(sym);
    Ok(rep)
}

/// Checks `rep . [L x L] = diagonal of L` for `L = L^n_dim`.
pub fn verify_linear_space_representation(
    n: usize,
    dim: usize,
    rep: &DiagonalRepresentation,
) -> Result<()> {
    let l = build_lnk(n, dim)?;
    let got = rep.apply(&cross(&l, &l))?;
    if !cycles_equal(&got, &diagonal_cycle(&l)) {
        return Err(Error::Verification(format!(
            "representation does not reproduce the diagonal of L^{n}_{dim}"
        )));
    }
    Ok(())
}

/// Distinct symbols used by a set of tuples.
pub fn symbols_used(tuples: &[Vec<SymbolicFunction>]) -> BTreeSet<RaySymbol> {
    tuples.iter().flatten().flat_map(|f| f.0.keys().copied()).collect()
}

/// Applies symbolic tuples to a cycle in `R^{2n}`.
pub fn apply_symbolic(n: usize, tuples: &[Vec<SymbolicFunction>], x: &TropicalCycle) -> Result<TropicalCycle> {
    let mut fs = Vec::new();
    for t in tuples {
        fs.push(t.iter().map(|f| f.to_function(n)).collect::<Result<Vec<_>>>()?);
    }
    let codim = tuples.first().map_or(0, Vec::len);
    DiagonalRepresentation::single(codim, fs).apply(x)
}
