//! Seeded random inputs for the identity checks and the test suites.

use rand::Rng;

use crate::linalg::{hermitian_eigen, DenseMatrix};
use crate::scalar::Scalar;
use crate::structured::CoefficientBand;

/// Minimum eigenvalue gap accepted by [`random_hermitian_separated`].
pub const MIN_GAP: f64 = 1e-4;

/// Hermitian matrix with entries uniform in the unit square (real diagonal).
pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> DenseMatrix {
    let mut a = DenseMatrix::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = Scalar::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in i + 1..n {
            let z = Scalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    a
}

/// Random Hermitian matrix whose eigenvalues are separated by at least
/// [`MIN_GAP`]; redraws otherwise.
pub fn random_hermitian_separated<R: Rng>(rng: &mut R, n: usize) -> DenseMatrix {
    loop {
        let a = random_hermitian(rng, n);
        if well_separated(&a) {
            return a;
        }
    }
}

fn well_separated(a: &DenseMatrix) -> bool {
    let gap = |m: &DenseMatrix| -> f64 {
        let v = match hermitian_eigen(m) {
            Ok(s) => s.values(),
            Err(_) => return 0.0,
        };
        v.windows(2).map(|w| (w[1] - w[0]).norm()).fold(f64::INFINITY, f64::min)
    };
    gap(a) >= MIN_GAP
}

/// Hermitian positive definite `G G* + n I` with `G` uniform.
pub fn random_hermitian_definite<R: Rng>(rng: &mut R, n: usize) -> DenseMatrix {
    let mut g = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = Scalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    let gg = g.matmul(&g.conj_transpose()).expect("square factors");
    gg.add(&DenseMatrix::identity(n).scaled(Scalar::new(n as f64, 0.0))).expect("same shape")
}

/// Band of `len` entries, each a random rational `p/q` with `|p| ≤ 9` and
/// `1 ≤ q ≤ 9`.
pub fn random_rational_band<R: Rng>(rng: &mut R, len: usize) -> CoefficientBand {
    let values: Vec<f64> = (0..len)
        .map(|_| rng.gen_range(-9..=9) as f64 / rng.gen_range(1..=9) as f64)
        .collect();
    CoefficientBand::real(&values)
}
