//! Fixtures shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropint_core::exactmath::*;
use tropint_core::intersect::{pushforward, Morphism};
use tropint_core::linspace::*;
use tropint_core::polyhedra::*;

pub fn r(v: &[i64]) -> RatVec {
    v.iter().map(|&x| rat(x, 1)).collect()
}

pub fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn point(v: &[i64], w: i64) -> TropicalCycle {
    TropicalCycle::point(&r(v), b(w))
}

/// The affine line `p + R v`.
pub fn line(p: &[i64], v: &[i64]) -> TropicalCycle {
    let m = Morphism::linear(IntMatrix::from_rows(&v.iter().map(|&x| ivec(&[x])).collect::<Vec<_>>()));
    translate(&pushforward(&m, &TropicalCycle::whole_space(1)).unwrap(), &r(p))
}

/// The classical line through the origin in `L^3_2` made of the rays
/// `-e_I` and `-e_J` for a splitting `{0,1,2,3} = I + J`.
pub fn split_line(i: [usize; 2]) -> TropicalCycle {
    let j: Vec<usize> = (0..4).filter(|x| !i.contains(x)).collect();
    let sum = |s: &[usize]| -> IntVec {
        let mut v = vec![b(0); 3];
        for &a in s {
            for (x, y) in v.iter_mut().zip(minus_e(3, a)) {
                *x += y;
            }
        }
        v
    };
    TropicalCycle::from_cones(3, 1, &[vec![sum(&i)], vec![sum(&j)]]).unwrap()
}

/// Curves in `L^3_2`, fans and curves with a vertex away from the origin.
pub fn curves_l32() -> Vec<TropicalCycle> {
    let l31 = build_lnk(3, 1).unwrap();
    vec![
        split_line([0, 1]),
        split_line([0, 2]).scale(&b(2)),
        split_line([0, 3]),
        l31.clone(),
        translate(&l31, &r(&[2, 2, 2])),
        translate(&l31, &r(&[0, 0, -1])),
        psi_curve().unwrap(),
        second_curve(),
    ]
}

/// Points of `L^3_2` with weights.
pub fn points_l32() -> Vec<TropicalCycle> {
    vec![point(&[0, 0, 0], 1), point(&[2, 2, 1], 3), point(&[-1, 0, 0], -2), point(&[0, 1, 1], 1)]
}

/// Subcycles of `L^2_1`.
pub fn pool_l21() -> Vec<TropicalCycle> {
    let l = build_lnk(2, 1).unwrap();
    vec![l.clone(), l.scale(&b(-3)), point(&[0, 0], 1), point(&[-2, 0], 2), point(&[1, 1], -1)]
}

/// A random subcycle of `L^3_2` of dimension `dim`, a small integer
/// combination of pool members.
pub fn random_l32(rng: &mut ChaCha8Rng, dim: usize) -> TropicalCycle {
    let pool = match dim {
        0 => points_l32(),
        1 => curves_l32(),
        _ => vec![build_lnk(3, 2).unwrap()],
    };
    let a = &pool[rng.gen_range(0..pool.len())];
    let c = &pool[rng.gen_range(0..pool.len())];
    let x = a.scale(&b(rng.gen_range(1..=2)));
    if rng.gen_bool(0.3) {
        x.add(&c.scale(&b(rng.gen_range(-1..=1)))).unwrap()
    } else {
        x
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
