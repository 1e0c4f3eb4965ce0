mod common;

use common::*;
use tropint_core::exactmath::*;
use tropint_core::functions::*;
use tropint_core::intersect::*;
use tropint_core::linspace::*;
use tropint_core::polyhedra::*;

fn lin(n: usize, k: usize) -> AmbientContext {
    AmbientContext::linear_space(n, k).unwrap()
}

fn pair(x: &AmbientContext, y: &AmbientContext) -> AmbientContext {
    AmbientContext::product(&[x.clone(), y.clone()]).unwrap()
}

fn matrix(rows: &[&[i64]]) -> Morphism {
    Morphism::linear(IntMatrix::from_i64(rows))
}

#[test]
fn pulling_back_the_whole_target() {
    // (x, y) -> x from the tropical line to R
    let (x, y) = (lin(2, 1), lin(1, 1));
    let f = matrix(&[&[1, 0]]);
    let got = pullback_cycle(&f, y.ambient(), &pair(&x, &y)).unwrap();
    assert!(cycles_equal(&got, x.ambient()));
}

#[test]
fn identity_pullback() {
    let x = lin(2, 1);
    let ctx = pair(&x, &x);
    for c in pool_l21() {
        assert!(cycles_equal(&pullback_cycle(&Morphism::identity(2), &c, &ctx).unwrap(), &c));
    }
}

#[test]
fn divisors_pull_back_with_the_cycle() {
    // C = max(0, x) . R is the origin of R
    let (x, y) = (lin(2, 1), lin(1, 1));
    let f = matrix(&[&[1, 0]]);
    let m = max_poly_function(1, &Complex::from_cycle(&build_lnk(1, 1).unwrap())).unwrap();
    let c = divisor(&m, y.ambient()).unwrap();
    let lhs = pullback_cycle(&f, &c, &pair(&x, &y)).unwrap();
    let rhs = divisor(&pullback_function(&f, &m).unwrap(), x.ambient()).unwrap();
    assert!(cycles_equal(&lhs, &rhs));
    assert!(!lhs.is_empty());
    // C = max(0, x, y) . R^2 is the tropical line; pull back along its inclusion
    let (x, y) = (lin(2, 1), lin(2, 2));
    let m = max_poly_function(2, &Complex::from_cycle(&build_lnk(2, 2).unwrap())).unwrap();
    let c = divisor(&m, y.ambient()).unwrap();
    let inc = Morphism::identity(2);
    let lhs = pullback_cycle(&inc, &c, &pair(&x, &y)).unwrap();
    let rhs = divisor(&pullback_function(&inc, &m).unwrap(), x.ambient()).unwrap();
    assert!(cycles_equal(&lhs, &rhs));
    assert!(cycles_equal(&lhs, &point(&[0, 0], 1)));
}

#[test]
fn projection_formula() {
    // f: L^2_1 -> R^2 the inclusion
    let (x, y) = (lin(2, 1), lin(2, 2));
    let ctx = pair(&x, &y);
    let f = Morphism::identity(2);
    let cs = [translate(x.ambient(), &r(&[1, 2])), line(&[-1, 0], &[0, 1]), line(&[0, 0], &[1, 2])];
    let ds = [x.ambient().clone(), x.ambient().scale(&b(2)), point(&[-3, 0], 1)];
    for c in &cs {
        for d in &ds {
            let lhs = intersect_cycles(c, &pushforward(&f, d).unwrap(), &y).unwrap();
            let pulled = pullback_cycle(&f, c, &ctx).unwrap();
            let rhs = pushforward(&f, &intersect_cycles(&pulled, d, &x).unwrap()).unwrap();
            assert!(cycles_equal(&lhs, &rhs), "{c:?} {d:?}");
        }
    }
}

#[test]
fn pullbacks_compose() {
    // f: L^2_1 -> R^2 the inclusion, g: R^2 -> R, (x, y) -> x + y
    let (x, y, z) = (lin(2, 1), lin(2, 2), lin(1, 1));
    let f = Morphism::identity(2);
    let g = matrix(&[&[1, 1]]);
    let gf = g.compose(&f).unwrap();
    for c in [point(&[3], 1), point(&[-2], 2), point(&[0], 1)] {
        let lhs = pullback_cycle(&gf, &c, &pair(&x, &z)).unwrap();
        let inner = pullback_cycle(&g, &c, &pair(&y, &z)).unwrap();
        let rhs = pullback_cycle(&f, &inner, &pair(&x, &y)).unwrap();
        assert!(cycles_equal(&lhs, &rhs));
        assert!(!lhs.is_empty());
    }
}

#[test]
fn pullback_is_multiplicative() {
    // f: L^2_1 x R -> R^2, (x, y, z) -> (x, z)
    let x = pair(&lin(2, 1), &lin(1, 1));
    let y = lin(2, 2);
    let ctx = pair(&x, &y);
    let f = matrix(&[&[1, 0, 0], &[0, 0, 1]]);
    let cs = [
        (line(&[-1, 0], &[0, 1]), line(&[0, 2], &[1, 0])),
        (translate(&build_lnk(2, 1).unwrap(), &r(&[1, 0])), line(&[0, 0], &[1, 1])),
    ];
    for (c, c2) in &cs {
        let lhs = pullback_cycle(&f, &intersect_cycles(c, c2, &y).unwrap(), &ctx).unwrap();
        let pc = pullback_cycle(&f, c, &ctx).unwrap();
        let pc2 = pullback_cycle(&f, c2, &ctx).unwrap();
        let rhs = intersect_cycles(&pc, &pc2, &x).unwrap();
        assert!(cycles_equal(&lhs, &rhs));
        assert!(!lhs.is_empty());
    }
}

#[test]
fn projection_pullback_is_a_product() {
    // p: L^2_1 x R -> R
    let (c, d) = (lin(2, 1), lin(1, 1));
    let x = pair(&c, &d);
    let p = Morphism::second_projection(2, 1);
    let ctx = pair(&x, &d);
    for e in [point(&[2], 1), point(&[-1], 3), d.ambient().clone()] {
        let got = pullback_cycle(&p, &e, &ctx).unwrap();
        assert!(cycles_equal(&got, &cross(c.ambient(), &e)));
    }
}

#[test]
fn inclusion_into_a_star() {
    // D is the star of L^3_2 along the ray -e_0, C its lineality line
    let d = AmbientContext::star(3, 2, &r(&[1, 1, 1])).unwrap();
    let c = lin(1, 1);
    let iota = matrix(&[&[-1], &[-1], &[-1]]);
    let ctx = pair(&c, &d);
    let big_c = pushforward(&iota, c.ambient()).unwrap();
    assert!(d.ambient().support_contains_cycle(&big_c));
    let es = [build_lnk(3, 1).unwrap(), translate(&build_lnk(3, 1).unwrap(), &r(&[2, 2, 2])), d.ambient().clone()];
    for e in &es {
        let pulled = pullback_cycle(&iota, e, &ctx).unwrap();
        let want = intersect_cycles(&big_c, e, &d).unwrap();
        assert!(cycles_equal(&pushforward(&iota, &pulled).unwrap(), &want));
    }
}

#[test]
fn pullback_rejects_bad_input() {
    let (x, y) = (lin(2, 1), lin(1, 1));
    assert!(pullback_cycle(&matrix(&[&[1, 0]]), y.ambient(), &x).is_err());
    // (x, y) -> (x, x) leaves the tropical line
    let bad = matrix(&[&[1, 0], &[1, 0]]);
    assert!(pullback_cycle(&bad, &build_lnk(2, 1).unwrap(), &pair(&x, &lin(2, 1))).is_err());
}
