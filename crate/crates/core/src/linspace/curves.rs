//! Two curves in `L^3_2` with negative intersection product.
//!
//! `psi` is the difference of the ray functions of `(1,1,1)` and `(-1,-1,0)`
//! on the refinement of `L^3_2` that splits `<-e_1,-e_2>` along `-e_1-e_2`
//! and `<-e_0,-e_3>` along `-e_0-e_3`. Its divisor is the curve `C`.
//!
//! The second curve `D` is the fan curve with rays `(-2,-3,0)`, `(0,1,1)`
//! and `(2,2,-1)`, all of weight one.

use num_bigint::BigInt;

use super::fans::{build_lnk, minus_e};
use crate::error::Result;
use crate::exactmath::{add, IntVec};
use crate::functions::{divisor, ray_function, PLFunction};
use crate::polyhedra::{Cell, Complex, TropicalCycle};

fn iv(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// The refinement of `L^3_2` on which `psi` is linear.
pub fn psi_carrier() -> Complex {
    let e = |i| minus_e(3, i);
    let e12 = add(&e(1), &e(2));
    let e03 = add(&e(0), &e(3));
    let mut cones: Vec<Vec<IntVec>> = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            match (i, j) {
                (1, 2) => {
                    cones.push(vec![e(1), e12.clone()]);
                    cones.push(vec![e(2), e12.clone()]);
                }
                (0, 3) => {
                    cones.push(vec![e(0), e03.clone()]);
                    cones.push(vec![e(3), e03.clone()]);
                }
                _ => cones.push(vec![e(i), e(j)]),
            }
        }
    }
    let cells = cones.iter().map(|g| Cell::cone(3, g)).collect();
    Complex::new(3, cells).expect("cones in R^3")
}

/// `psi = u_(1,1,1) - u_(-1,-1,0)`.
pub fn psi_function() -> Result<PLFunction> {
    let f = psi_carrier();
    let a = ray_function(&f, &iv(&[1, 1, 1]))?;
    let b = ray_function(&f, &iv(&[-1, -1, 0]))?;
    a.sub(&b)
}

/// The curve `C = psi . [L^3_2]`.
pub fn psi_curve() -> Result<TropicalCycle> {
    divisor(&psi_function()?, &build_lnk(3, 2)?)
}

/// The curve `D`.
pub fn second_curve() -> TropicalCycle {
    let rays = [iv(&[-2, -3, 0]), iv(&[0, 1, 1]), iv(&[2, 2, -1])];
    let cones: Vec<Vec<IntVec>> = rays.iter().map(|r| vec![r.clone()]).collect();
    TropicalCycle::from_cones(3, 1, &cones).expect("rays in R^3")
}
