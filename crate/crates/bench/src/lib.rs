//! Fixtures shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropint_core::exactmath::IntMatrix;
use tropint_core::functions::PLFunction;
use tropint_core::intersect::AmbientContext;
use tropint_core::linspace::{build_lnk, psi_curve, psi_function, second_curve};
use tropint_core::polyhedra::TropicalCycle;

/// A dense integer matrix with entries in `-9..=9`, fixed by `seed`.
pub fn matrix(rows: usize, cols: usize, seed: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
    let refs: Vec<&[i64]> = data.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64(&refs)
}

/// The two curves of the negative self-intersection example and their ambient.
pub struct ClosingExample {
    pub ambient: AmbientContext,
    pub psi: PLFunction,
    pub plane: TropicalCycle,
    pub c: TropicalCycle,
    pub d: TropicalCycle,
}

pub fn closing_example() -> ClosingExample {
    ClosingExample {
        ambient: AmbientContext::linear_space(3, 2).expect("L^3_2"),
        psi: psi_function().expect("psi"),
        plane: build_lnk(3, 2).expect("L^3_2"),
        c: psi_curve().expect("C"),
        d: second_curve(),
    }
}
