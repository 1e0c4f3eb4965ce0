use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropint_core::exactmath::*;
use tropint_core::Error;

fn lv(v: &[i64]) -> LatticeVector {
    LatticeVector::from_i64(v)
}

#[test]
fn primitive_vector_examples() {
    assert_eq!(primitive_vector(&lv(&[2, 4])).unwrap(), lv(&[1, 2]));
    assert_eq!(primitive_vector(&lv(&[0, 0, 5])).unwrap(), lv(&[0, 0, 1]));
    assert_eq!(primitive_vector(&lv(&[-3, 6, -9])).unwrap(), lv(&[-1, 2, -3]));
    let err = primitive_vector(&lv(&[0, 0])).unwrap_err();
    assert!(matches!(err, Error::ZeroVector));
    assert_eq!(err.to_string(), "zero vector has no primitive representative");
}

#[test]
fn hnf_small_examples() {
    let id = IntMatrix::identity(3);
    assert_eq!(hnf(&id), (id.clone(), id.clone()));
    let swap = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
    assert_eq!(hnf(&swap).0, IntMatrix::identity(2));
}

/// Row reduction by elementary unimodular steps on machine integers: move
/// the smallest nonzero entry of the column up, subtract multiples, repeat.
fn oracle_hnf(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut h = m.to_vec();
    let rows = h.len();
    let cols = h[0].len();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        loop {
            let nz: Vec<usize> = (pr..rows).filter(|&i| h[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&i| h[i][c].abs()).unwrap();
            h.swap(pr, best);
            let mut done = true;
            for i in pr + 1..rows {
                let q = h[i][c].div_euclid(h[pr][c]);
                for j in 0..cols {
                    h[i][j] -= q * h[pr][j];
                }
                if h[i][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[pr][c] == 0 {
            continue;
        }
        if h[pr][c] < 0 {
            for x in h[pr].iter_mut() {
                *x = -*x;
            }
        }
        for k in 0..pr {
            let q = h[k][c].div_euclid(h[pr][c]);
            for j in 0..cols {
                h[k][j] -= q * h[pr][j];
            }
        }
        pr += 1;
    }
    h
}

fn to_matrix(m: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(&m.iter().map(|r| ivec(r)).collect::<Vec<_>>())
}

#[test]
fn hnf_matches_oracle_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let m: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let (h, u) = hnf(&to_matrix(&m));
        assert_eq!(h, to_matrix(&oracle_hnf(&m)), "matrix {m:?}");
        assert_eq!(u.mul(&to_matrix(&m)), h);
        assert_eq!(u.determinant().abs(), BigInt::one());
    }
}

#[test]
fn lattice_index_examples() {
    let std2 = [lv(&[1, 0]), lv(&[0, 1])];
    assert_eq!(lattice_index(&[lv(&[2, 0]), lv(&[0, 1])], &std2).unwrap(), BigInt::from(2));
    assert_eq!(lattice_index(&[lv(&[2])], &[lv(&[1])]).unwrap(), BigInt::from(2));
    assert_eq!(lattice_index(&[lv(&[1, 2]), lv(&[3, 4])], &std2).unwrap(), BigInt::from(2));
    assert!(matches!(
        lattice_index(&[lv(&[1, 0])], &[lv(&[0, 1])]),
        Err(Error::SpanMismatch)
    ));
    assert!(matches!(
        lattice_index(&[lv(&[1, 0]), lv(&[2, 0])], &std2),
        Err(Error::Dependent)
    ));
}

#[test]
fn solve_rational_examples() {
    let s = solve_rational(&IntMatrix::identity(2), &[rat(1, 2), rat(3, 1)]).unwrap();
    assert_eq!(s.particular, vec![rat(1, 2), rat(3, 1)]);
    assert!(s.kernel.is_empty());
    let s = solve_rational(&IntMatrix::from_i64(&[&[1, 1]]), &[rat(0, 1)]).unwrap();
    assert_eq!(s.particular, vec![rat(0, 1), rat(0, 1)]);
    assert_eq!(s.kernel, vec![ivec(&[1, -1])]);
    assert!(solve_rational(&IntMatrix::from_i64(&[&[1, 1], &[1, 1]]), &[rat(0, 1), rat(1, 1)]).is_none());
}

#[test]
fn solve_rational_random_consistent_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let m: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let x: Vec<Rational> = (0..cols).map(|_| rat(rng.gen_range(-7..=7), rng.gen_range(1..=4))).collect();
        let mm = to_matrix(&m);
        let b: Vec<Rational> = (0..rows).map(|i| dot_rat_int(&x, mm.row(i))).collect();
        let s = solve_rational(&mm, &b).expect("consistent by construction");
        for i in 0..rows {
            assert_eq!(dot_rat_int(&s.particular, mm.row(i)), b[i]);
            for k in &s.kernel {
                assert!(dot(k, mm.row(i)).is_zero());
            }
        }
    }
}

#[test]
fn rational_strings() {
    assert_eq!(format_rational(&rat(-3, 1)), "-3");
    assert_eq!(format_rational(&rat(2, 4)), "1/2");
    assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("x").is_err());
}

fn small_vec() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-50i64..=50, 1..=5).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

proptest! {
    #[test]
    fn primitive_is_scale_invariant(v in small_vec(), k in 1i64..=20) {
        let scaled: Vec<i64> = v.iter().map(|x| x * k).collect();
        prop_assert_eq!(primitive_vector(&lv(&scaled)).unwrap(), primitive_vector(&lv(&v)).unwrap());
    }

    #[test]
    fn primitive_has_unit_content(v in small_vec()) {
        let p = primitive_vector(&lv(&v)).unwrap();
        prop_assert_eq!(gcd_of(p.coords()), BigInt::one());
    }

    #[test]
    fn hnf_is_canonical_and_unimodular(m in small_matrix()) {
        let mm = to_matrix(&m);
        let (h, u) = hnf(&mm);
        prop_assert_eq!(u.mul(&mm), h.clone());
        prop_assert_eq!(u.determinant().abs(), BigInt::one());
        prop_assert_eq!(hnf(&h).0, h);
    }

    #[test]
    fn index_of_a_basis_in_itself_is_one(m in small_matrix()) {
        let rows: Vec<LatticeVector> = m.iter().map(|r| lv(r)).collect();
        let n = m[0].len();
        if rank(&rows.iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>(), n) == rows.len() {
            prop_assert_eq!(lattice_index(&rows, &rows).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn index_in_standard_lattice_is_abs_det(m in (1usize..=3).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-6i64..=6, n), n))) {
        let mm = to_matrix(&m);
        let det = mm.determinant();
        prop_assume!(!det.is_zero());
        let n = m.len();
        let std: Vec<LatticeVector> = (0..n).map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            lv(&e)
        }).collect();
        let rows: Vec<LatticeVector> = m.iter().map(|r| lv(r)).collect();
        prop_assert_eq!(lattice_index(&rows, &std).unwrap(), det.abs());
    }

    #[test]
    fn index_is_multiplicative_in_towers(
        a in (2usize..=2).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i64..=4, n), n)),
        b in (2usize..=2).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i64..=4, n), n)),
    ) {
        // C = A B: [Z^2 : C] = [Z^2 : B] [B : C] with the rows of C = A * rows of B
        let (ma, mb) = (to_matrix(&a), to_matrix(&b));
        prop_assume!(!ma.determinant().is_zero() && !mb.determinant().is_zero());
        let mc = ma.mul(&mb);
        let lat = |m: &IntMatrix| -> Vec<LatticeVector> { m.to_rows().into_iter().map(LatticeVector::new).collect() };
        let std = lat(&IntMatrix::identity(2));
        let outer = lattice_index(&lat(&mc), &std).unwrap();
        let inner = lattice_index(&lat(&mc), &lat(&mb)).unwrap() * lattice_index(&lat(&mb), &std).unwrap();
        prop_assert_eq!(outer, inner);
    }
}

#[test]
fn lattice_vector_basis_uses_minus_sum_for_e0() {
    assert_eq!(LatticeVector::basis(3, 0), lv(&[-1, -1, -1]));
    assert_eq!(LatticeVector::basis(3, 2), lv(&[0, 1, 0]));
    assert!(LatticeVector::basis(3, 0).coords().iter().all(Signed::is_negative));
}
