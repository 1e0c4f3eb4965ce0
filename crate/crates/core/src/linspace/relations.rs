//! Products of ray functions of `F^n_n` that vanish on `C x R^n` for every
//! subcycle `C` of `L^n_{n-k}`.

use std::collections::BTreeSet;

use super::diagonal::symbol_function;
use super::fans::{build_lnk, RaySymbol};
use crate::error::{Error, Result};
use crate::functions::apply_product;
use crate::polyhedra::{cross, TropicalCycle};

/// One of the three vanishing products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `A . B`.
    AB,
    /// `v_1 ... v_{n-k+r}` with distinct `v`s from `T_1..T_n, D`.
    V { r: usize, vs: Vec<RaySymbol> },
    /// `B . D^s . v_1 ... v_{n-k-s+r}`.
    BDV { s: usize, r: usize, vs: Vec<RaySymbol> },
}

impl Relation {
    /// The factors of the product, last one applied first.
    pub fn factors(&self) -> Vec<RaySymbol> {
        match self {
            Relation::AB => vec![RaySymbol::A, RaySymbol::B],
            Relation::V { vs, .. } => vs.clone(),
            Relation::BDV { s, vs, .. } => {
                let mut f = vec![RaySymbol::B];
                f.extend(std::iter::repeat_n(RaySymbol::D(0), *s));
                f.extend(vs.iter().copied());
                f
            }
        }
    }

    fn validate(&self, n: usize, k: usize) -> Result<()> {
        let check_vs = |vs: &[RaySymbol], want: isize| -> Result<()> {
            if want < 0 || vs.len() as isize != want {
                return Err(Error::Invalid(format!("expected {want} factors v, got {}", vs.len())));
            }
            let distinct: BTreeSet<_> = vs.iter().collect();
            if distinct.len() != vs.len() {
                return Err(Error::Invalid("factors v must be pairwise distinct".into()));
            }
            for v in vs {
                let ok = matches!(v, RaySymbol::T(i) if (1..=n).contains(i)) || *v == RaySymbol::D(0);
                if !ok {
                    return Err(Error::Invalid(format!("{v} is not one of T_1..T_{n}, D")));
                }
            }
            Ok(())
        };
        let d = (n - k) as isize;
        match self {
            Relation::AB => Ok(()),
            Relation::V { r, vs } => {
                if *r == 0 {
                    return Err(Error::Invalid("r must be positive".into()));
                }
                check_vs(vs, d + *r as isize)
            }
            Relation::BDV { s, r, vs } => {
                if *r == 0 || *s == 0 {
                    return Err(Error::Invalid("r and s must be positive".into()));
                }
                check_vs(vs, d - *s as isize + *r as isize)
            }
        }
    }
}

/// Whether the relation applied to `C x [R^n]` gives the empty cycle.
pub fn relations_check(c: &TropicalCycle, n: usize, k: usize, which: &Relation) -> Result<bool> {
    if k > n {
        return Err(Error::Invalid(format!("k = {k} exceeds n = {n}")));
    }
    if c.ambient_dim() != n {
        return Err(Error::Dimension(format!("cycle lives in R^{}, not R^{n}", c.ambient_dim())));
    }
    which.validate(n, k)?;
    if !build_lnk(n, n - k)?.support_contains_cycle(c) {
        return Err(Error::Support(format!("cycle is not contained in L^{n}_{}", n - k)));
    }
    let fs = which
        .factors()
        .into_iter()
        .map(|s| symbol_function(n, s))
        .collect::<Result<Vec<_>>>()?;
    let x = cross(c, &TropicalCycle::whole_space(n));
    Ok(apply_product(&fs, &x)?.is_empty())
}

/// All relations with at most `n + 1` factors `v`, and `s` up to `n - k + 1`.
pub fn admissible_relations(n: usize, k: usize) -> Vec<Relation> {
    let mut pool: Vec<RaySymbol> = (1..=n).map(RaySymbol::T).collect();
    pool.push(RaySymbol::D(0));
    let choose = |m: usize| -> Vec<Vec<RaySymbol>> {
        (0u32..(1 << pool.len()))
            .filter(|mask| mask.count_ones() as usize == m)
            .map(|mask| (0..pool.len()).filter(|i| mask & (1 << i) != 0).map(|i| pool[i]).collect())
            .collect()
    };
    let d = n - k;
    let mut out = vec![Relation::AB];
    for r in 1.. {
        let m = d + r;
        if m > pool.len() {
            break;
        }
        out.extend(choose(m).into_iter().map(|vs| Relation::V { r, vs }));
    }
    for s in 1..=d + 1 {
        for r in 1.. {
            let m = (d + r).checked_sub(s);
            match m {
                None => continue,
                Some(m) if m > pool.len() => break,
                Some(m) => out.extend(choose(m).into_iter().map(|vs| Relation::BDV { s, r, vs })),
            }
        }
    }
    out
}
