use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropint_core::exactmath::*;
use tropint_core::linspace::{build_lnk, minus_e};
use tropint_core::polyhedra::*;
use tropint_core::Error;

fn r(v: &[i64]) -> RatVec {
    v.iter().map(|&x| rat(x, 1)).collect()
}

fn w(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Point-membership oracle for full-dimensional simplicial cones: the unique
/// coordinates of `p` in the generators are all nonnegative.
fn in_simplicial_cone(gens: &[IntVec], p: &[Rational]) -> bool {
    let m = IntMatrix::from_rows_with_cols(gens, p.len()).transpose();
    match solve_rational(&m, p) {
        Some(s) => s.kernel.is_empty() && s.particular.iter().all(|c| *c >= rat(0, 1)),
        None => false,
    }
}

#[test]
fn cone_from_generators_examples() {
    let c = cone_from_generators(3, &[minus_e(3, 1), minus_e(3, 2)]);
    assert_eq!(c.dim(), 2);
    assert_eq!(c.facets().iter().filter(|f| !f.at_infinity).count(), 2);
    let ray = cone_from_generators(3, &[ivec(&[1, 1, 1])]);
    assert_eq!(ray.directions(), vec![minus_e(3, 0)]);
    let red = cone_from_generators(2, &[ivec(&[2, 0]), ivec(&[1, 0])]);
    assert_eq!(red.directions(), vec![ivec(&[1, 0])]);
    assert_eq!(cone_from_generators(2, &[]), Cell::origin(2));
}

#[test]
fn intersect_cells_examples() {
    let a = cone_from_generators(3, &[minus_e(3, 1), minus_e(3, 2)]);
    let b = cone_from_generators(3, &[minus_e(3, 2), minus_e(3, 3)]);
    assert_eq!(intersect_cells(&a, &a).unwrap(), a);
    assert_eq!(intersect_cells(&a, &b).unwrap(), cone_from_generators(3, &[minus_e(3, 2)]));
    let p = Cell::point(&r(&[1, 1, 1]));
    assert!(intersect_cells(&a, &p).is_none());
}

#[test]
fn intersect_cells_agrees_with_membership_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rand_gens = |rng: &mut ChaCha8Rng| -> Vec<IntVec> {
        loop {
            let g: Vec<IntVec> = (0..3).map(|_| (0..3).map(|_| int(rng.gen_range(-3..=3))).collect()).collect();
            if rank(&g, 3) == 3 {
                return g;
            }
        }
    };
    for _ in 0..25 {
        let (ga, gb) = (rand_gens(&mut rng), rand_gens(&mut rng));
        let (a, b) = (Cell::cone(3, &ga), Cell::cone(3, &gb));
        let i = intersect_cells(&a, &b).expect("cones share the origin");
        for x in -3..=3 {
            for y in -3..=3 {
                for z in -3..=3 {
                    let p = r(&[x, y, z]);
                    let want = in_simplicial_cone(&ga, &p) && in_simplicial_cone(&gb, &p);
                    assert_eq!(i.contains_point(&p), want, "point {p:?}");
                }
            }
        }
    }
}

#[test]
fn facet_description_round_trips() {
    let cells = [
        cone_from_generators(3, &[minus_e(3, 0), minus_e(3, 1), minus_e(3, 2)]),
        Cell::polyhedron(2, &[r(&[0, 0]), r(&[2, 0]), r(&[0, 3])], &[], &[]).unwrap(),
        Cell::polyhedron(2, &[r(&[1, 1])], &[ivec(&[1, 0])], &[ivec(&[0, 1])]).unwrap(),
    ];
    for c in &cells {
        let ineqs: Vec<IntVec> = c.facets().iter().map(|f| f.normal.clone()).collect();
        let back = Cell::from_constraints(c.ambient_dim(), &ineqs, c.equations()).unwrap();
        assert_eq!(&back, c);
    }
}

#[test]
fn cross_examples() {
    let l11 = build_lnk(1, 1).unwrap();
    let sq = cross(&l11, &l11);
    assert_eq!(sq.cells().len(), 4);
    assert!(sq.cells().iter().all(|(_, w)| *w == BigInt::from(1)));
    assert!(cycles_equal(&sq, &TropicalCycle::whole_space(2)));
    let l32 = build_lnk(3, 2).unwrap();
    let emb = cross(&l32, &TropicalCycle::origin(1));
    assert_eq!(emb.dim(), 2);
    assert_eq!(emb.cells().len(), 6);
    let ray2 = TropicalCycle::new(1, 1, vec![(Cell::cone(1, &[ivec(&[1])]), w(2))]).unwrap();
    let ray3 = TropicalCycle::new(1, 1, vec![(Cell::cone(1, &[ivec(&[-1])]), w(3))]).unwrap();
    assert_eq!(cross(&ray2, &ray3).cells()[0].1, w(6));
}

#[test]
fn star_examples() {
    let l = build_lnk(3, 2).unwrap();
    let origin = Cell::origin(3);
    assert!(cycles_equal(&star(&l, &origin, &r(&[0, 0, 0])).unwrap(), &l));
    let sigma = Cell::cone(3, &[minus_e(3, 1), minus_e(3, 2)]);
    let s = star(&l, &sigma, &r(&[-1, -2, 0])).unwrap();
    assert_eq!(s.cells().len(), 1);
    assert_eq!(s.cells()[0].0.lineality_dim(), 2);
    let ray = Cell::cone(3, &[minus_e(3, 1)]);
    let s = star(&l, &ray, &r(&[-1, 0, 0])).unwrap();
    assert!(is_balanced(&s).balanced);
    assert!(s.cells().iter().all(|(c, _)| c.lineality_dim() == 1));
    assert_eq!(s.cells().len(), 3);
    assert!(matches!(star(&l, &ray, &r(&[0, 0, 0])), Err(Error::NotInRelativeInterior)));
}

#[test]
fn stars_of_linear_spaces_are_balanced() {
    for n in 1..=4 {
        for k in 0..=n {
            let l = build_lnk(n, k).unwrap();
            for tau in l.all_faces() {
                let x = tau.relint_point();
                let s = star(&l, &tau, &x).unwrap();
                assert!(is_balanced(&s).balanced, "L^{n}_{k} at {x:?}");
                assert_eq!(s.dim(), k);
            }
        }
    }
}

#[test]
fn stellar_subdivision_examples() {
    let l = build_lnk(3, 2).unwrap();
    let f = stellar_subdivide(&l, &LatticeVector::from_i64(&[-1, -1, 0])).unwrap();
    let f = stellar_subdivide(&f, &LatticeVector::from_i64(&[1, 1, 0])).unwrap();
    assert_eq!(f.cells().len(), 8);
    assert!(cycles_equal(&f, &l));
    let carrier = tropint_core::linspace::psi_carrier();
    let mut got: Vec<Cell> = f.cells().iter().map(|(c, _)| c.clone()).collect();
    got.sort();
    assert_eq!(got, carrier.cells().to_vec());
    let same = stellar_subdivide(&l, &LatticeVector::from_i64(&[-1, 0, 0])).unwrap();
    assert_eq!(same, l);
    assert!(matches!(
        stellar_subdivide(&l, &LatticeVector::from_i64(&[1, 0, 0])),
        Err(Error::NotInSupport)
    ));
    let ab = stellar_subdivide(&stellar_subdivide(&l, &LatticeVector::from_i64(&[-1, -1, 0])).unwrap(), &LatticeVector::from_i64(&[0, -1, -2])).unwrap();
    let ba = stellar_subdivide(&stellar_subdivide(&l, &LatticeVector::from_i64(&[0, -1, -2])).unwrap(), &LatticeVector::from_i64(&[-1, -1, 0])).unwrap();
    assert_eq!(ab, ba);
}

#[test]
fn common_refinement_examples() {
    let l = build_lnk(3, 2).unwrap();
    let own = Complex::from_cycle(&l);
    assert_eq!(common_refinement(&l, &own).unwrap(), l);
    let quadrants = Complex::new(
        2,
        [[1, 1], [-1, 1], [-1, -1], [1, -1]]
            .iter()
            .map(|&[a, b]| Cell::cone(2, &[ivec(&[a, 0]), ivec(&[0, b])]))
            .collect(),
    )
    .unwrap();
    let r2 = common_refinement(&TropicalCycle::whole_space(2), &quadrants).unwrap();
    assert_eq!(r2.cells().len(), 4);
    assert!(r2.cells().iter().all(|(_, w)| *w == BigInt::from(1)));
    let line = TropicalCycle::from_cones(2, 1, &[vec![ivec(&[1, 1])], vec![ivec(&[-1, -1])]]).unwrap();
    let ray_only = Complex::new(2, vec![Cell::cone(2, &[ivec(&[1, 1])])]).unwrap();
    assert!(matches!(common_refinement(&line, &ray_only), Err(Error::NotCovered)));
}

#[test]
fn refinement_by_f33_lands_in_cones() {
    let f = tropint_core::linspace::fnn(3);
    let d = TropicalCycle::from_cones(3, 1, &[vec![minus_e(3, 1)], vec![minus_e(3, 2)], vec![minus_e(3, 0)], vec![minus_e(3, 3)]]).unwrap();
    let x = cross(&build_lnk(3, 1).unwrap(), &d);
    let refined = common_refinement(&x, &f).unwrap();
    assert!(cycles_equal(&refined, &x));
    for (c, _) in refined.cells() {
        assert!(f.cells().iter().any(|g| g.contains_cell(c)));
    }
}

#[test]
fn balancing_examples() {
    assert!(is_balanced(&build_lnk(3, 2).unwrap()).balanced);
    assert!(is_balanced(&build_lnk(2, 2).unwrap()).balanced);
    let ray = TropicalCycle::from_cones(2, 1, &[vec![ivec(&[1, 0])]]).unwrap();
    let rep = is_balanced(&ray);
    assert!(!rep.balanced);
    let (tau, residual) = rep.witness.unwrap();
    assert_eq!(tau, Cell::origin(2));
    assert_eq!(residual, ivec(&[1, 0]));
}

#[test]
fn affine_curve_balances_at_vertices() {
    // tropical line with vertex (1,2)
    let v = r(&[1, 2]);
    let cells = [ivec(&[-1, 0]), ivec(&[0, -1]), ivec(&[1, 1])]
        .iter()
        .map(|d| (Cell::polyhedron(2, &[v.clone()], &[d.clone()], &[]).unwrap(), w(1)))
        .collect();
    let x = TropicalCycle::new(2, 1, cells).unwrap();
    assert!(is_balanced(&x).balanced);
    assert!(cycles_equal(&translate(&build_lnk(2, 1).unwrap(), &v), &x));
}

#[test]
fn cycles_equal_examples() {
    let l = build_lnk(2, 2).unwrap();
    let sub = stellar_subdivide(&l, &LatticeVector::from_i64(&[1, 2])).unwrap();
    assert!(cycles_equal(&l, &sub));
    let changed = TropicalCycle::new(2, 2, l.cells().iter().enumerate().map(|(i, (c, _))| (c.clone(), w(1 + i as i64 / 2))).collect()).unwrap();
    assert!(!cycles_equal(&l, &changed));
    let quadrants = TropicalCycle::from_cones(
        2,
        2,
        &[[1, 1], [-1, 1], [-1, -1], [1, -1]].iter().map(|&[a, b]| vec![ivec(&[a, 0]), ivec(&[0, b])]).collect::<Vec<_>>(),
    )
    .unwrap();
    assert!(cycles_equal(&l, &quadrants));
    assert!(cycles_equal(&l, &TropicalCycle::whole_space(2)));
}

#[test]
fn degree_examples() {
    let m = TropicalCycle::point(&r(&[0, 0, 0]), w(-1));
    assert_eq!(degree(&m).unwrap(), w(-1));
    assert_eq!(degree(&TropicalCycle::empty(3, 0)).unwrap(), w(0));
    let two = TropicalCycle::point(&r(&[1, 0]), w(1)).add(&TropicalCycle::point(&r(&[0, 1]), w(2))).unwrap();
    assert_eq!(degree(&two).unwrap(), w(3));
    assert!(degree(&build_lnk(2, 1).unwrap()).is_err());
}

#[test]
fn linear_space_counts() {
    let l = build_lnk(3, 2).unwrap();
    assert_eq!(l.cells().len(), 6);
    assert_eq!(l.all_faces().len(), 11);
    let rays: std::collections::BTreeSet<IntVec> = l.cells().iter().flat_map(|(c, _)| c.directions()).collect();
    assert_eq!(rays.len(), 4);
    assert_eq!(build_lnk(3, 0).unwrap(), TropicalCycle::origin(3));
    assert!(matches!(build_lnk(2, 3), Err(Error::Invalid(_))));
}

#[test]
fn l22_covers_the_plane() {
    let l = build_lnk(2, 2).unwrap();
    for x in -4..=4 {
        for y in -4..=4 {
            assert!(l.support_contains(&[rat(x, 2), rat(y, 3)]));
        }
    }
}

/// Random small fan cycles in the plane: stars with weighted rays, balanced
/// by construction.
fn plane_fan(rays: &[(i64, i64)], weights: &[i64]) -> Option<TropicalCycle> {
    let mut cells = Vec::new();
    let mut sum = [0i64, 0];
    for (&(a, b), &wt) in rays.iter().zip(weights) {
        if (a, b) == (0, 0) {
            return None;
        }
        let p = primitive(ivec(&[a, b]));
        let pa: i64 = p[0].to_string().parse().unwrap();
        let pb: i64 = p[1].to_string().parse().unwrap();
        sum[0] += wt * pa;
        sum[1] += wt * pb;
        cells.push((Cell::cone(2, &[p]), w(wt)));
    }
    if sum != [0, 0] {
        let g = num_integer::Integer::gcd(&sum[0], &sum[1]);
        let back = ivec(&[-sum[0] / g, -sum[1] / g]);
        cells.push((Cell::cone(2, &[back]), w(g)));
    }
    TropicalCycle::new(2, 1, cells).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cycles_equal_is_an_equivalence(
        rays in prop::collection::vec((-3i64..=3, -3i64..=3), 1..=3),
        weights in prop::collection::vec(1i64..=3, 3),
        split in (-3i64..=3, -3i64..=3),
    ) {
        let Some(x) = plane_fan(&rays, &weights) else { return Ok(()); };
        prop_assert!(is_balanced(&x).balanced);
        prop_assert!(cycles_equal(&x, &x));
        let y = x.scale(&w(2)).sub(&x).unwrap();
        prop_assert!(cycles_equal(&x, &y) && cycles_equal(&y, &x));
        if split != (0, 0) && x.support_contains(&r(&[split.0, split.1])) {
            let z = stellar_subdivide(&y, &LatticeVector::from_i64(&[split.0, split.1])).unwrap();
            prop_assert!(cycles_equal(&y, &z) && cycles_equal(&x, &z));
        }
        let other = x.scale(&w(3));
        prop_assert!(!cycles_equal(&x, &other));
    }

    #[test]
    fn cross_preserves_balancing(
        rays in prop::collection::vec((-2i64..=2, -2i64..=2), 1..=2),
        weights in prop::collection::vec(1i64..=2, 2),
    ) {
        let Some(x) = plane_fan(&rays, &weights) else { return Ok(()); };
        let y = build_lnk(1, 1).unwrap();
        prop_assert!(is_balanced(&cross(&x, &y)).balanced);
        prop_assert!(is_balanced(&cross(&y, &x)).balanced);
    }
}
