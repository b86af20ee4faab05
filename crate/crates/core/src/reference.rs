//! Dense numerical oracles for generalized and polynomial eigenproblems,
//! plus residual and spectrum-matching metrics.
//!
//! Hermitian-definite pencils go through a Cholesky reduction and Jacobi.
//! Everything else uses the characteristic polynomial `det(λB − A)`,
//! sampled on a circle and interpolated by a discrete Fourier transform,
//! whose roots are then polished on the determinant itself.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    backward_substitute_adjoint, cholesky, forward_substitute, hermitian_eigen, vec_norm2, vec_norm_inf,
    DenseMatrix, Lu, HERMITIAN_RTOL,
};
use crate::poly::{poly_roots, Polynomial};
use crate::scalar::{re, Scalar};
use crate::solution::{EigenPair, EigenSolution, Provenance};

/// Largest pencil handled through the characteristic polynomial.
pub const GENERAL_PATH_MAX_N: usize = 16;
pub const INVERSE_ITERATION_MAX: usize = 50;
/// Roots closer than this (relative) are treated as one repeated eigenvalue.
pub const REPEAT_RTOL: f64 = 1e-8;
const POLISH_MAX_ITER: usize = 60;
const POLISH_STEP_RTOL: f64 = 1e-14;
/// Interpolated coefficients below this fraction of the largest are dropped.
const DEGREE_DROP_RTOL: f64 = 1e-10;
/// Passes spent moving the interpolation circle before rooting.
const RECENTRE_MAX: usize = 4;

/// `‖Ax − λBx‖∞ / ((‖A‖∞ + |λ|‖B‖∞) ‖x‖∞)`.
pub fn residual_gevp(a: &DenseMatrix, b: &DenseMatrix, lambda: Scalar, x: &[Scalar]) -> Result<f64> {
    let xn = vec_norm_inf(x);
    if xn == 0.0 {
        return Err(Error::ZeroVector);
    }
    let ax = a.matvec(x)?;
    let bx = b.matvec(x)?;
    let r: Vec<Scalar> = ax.iter().zip(&bx).map(|(p, q)| p - lambda * q).collect();
    let scale = (a.norm_inf() + lambda.norm() * b.norm_inf()) * xn;
    if scale == 0.0 {
        return Ok(vec_norm_inf(&r));
    }
    Ok(vec_norm_inf(&r) / scale)
}

/// `‖P(λ)x‖∞ / (Σ_k ‖A_k‖∞ |λ|^k ‖x‖∞)` for `P(λ) = Σ_k λ^k A_k`.
pub fn residual_pevp(coeffs: &[DenseMatrix], lambda: Scalar, x: &[Scalar]) -> Result<f64> {
    let xn = vec_norm_inf(x);
    if xn == 0.0 {
        return Err(Error::ZeroVector);
    }
    let p = evaluate_matrix_polynomial(coeffs, lambda)?;
    let r = p.matvec(x)?;
    let scale: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(k, a)| a.norm_inf() * lambda.norm().powi(k as i32))
        .sum::<f64>()
        * xn;
    Ok(if scale == 0.0 { vec_norm_inf(&r) } else { vec_norm_inf(&r) / scale })
}

fn evaluate_matrix_polynomial(coeffs: &[DenseMatrix], z: Scalar) -> Result<DenseMatrix> {
    let mut acc = coeffs.last().ok_or_else(|| Error::Invalid("empty matrix polynomial".into()))?.clone();
    for a in coeffs.iter().rev().skip(1) {
        acc = acc.scaled(z).add(a)?;
    }
    Ok(acc)
}

fn check_pencil(a: &DenseMatrix, b: &DenseMatrix) -> Result<()> {
    if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::ShapeMismatch(format!(
            "pencil needs square matrices of equal size, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

/// All eigenpairs of `A x = λ B x`, unit-norm vectors, ascending by real part.
pub fn solve_gevp_numeric(a: &DenseMatrix, b: &DenseMatrix) -> Result<EigenSolution> {
    check_pencil(a, b)?;
    if Lu::factor_checked(b).is_err() {
        return Err(Error::SingularB);
    }
    if a.is_hermitian(HERMITIAN_RTOL) && b.is_hermitian(HERMITIAN_RTOL) {
        if let Ok(l) = cholesky(b) {
            return solve_hermitian_definite(a, &l);
        }
    }
    solve_general(a, b)
}

/// `L⁻¹ A L⁻*` followed by Jacobi; `x = L⁻* y`.
fn solve_hermitian_definite(a: &DenseMatrix, l: &DenseMatrix) -> Result<EigenSolution> {
    let n = a.rows();
    // Columns of W = L⁻¹ A, then rows of C = W L⁻* via (L⁻¹ W*)*.
    let mut w = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let col: Vec<Scalar> = (0..n).map(|i| a[(i, j)]).collect();
        for (i, v) in forward_substitute(l, &col).into_iter().enumerate() {
            w[(i, j)] = v;
        }
    }
    let wh = w.conj_transpose();
    let mut c = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let col: Vec<Scalar> = (0..n).map(|i| wh[(i, j)]).collect();
        for (i, v) in forward_substitute(l, &col).into_iter().enumerate() {
            c[(j, i)] = v.conj();
        }
    }
    let c = c.add(&c.conj_transpose())?.scaled(re(0.5));
    let eig = hermitian_eigen(&c)?;
    let pairs = eig
        .pairs
        .into_iter()
        .map(|p| {
            let mut x = backward_substitute_adjoint(l, &p.vector);
            normalize(&mut x);
            EigenPair::new(p.mode, p.value, x)
        })
        .collect();
    Ok(EigenSolution::new(pairs, Provenance::Numeric))
}

fn normalize(x: &mut [Scalar]) {
    let norm = vec_norm2(x);
    if norm > 0.0 {
        x.iter_mut().for_each(|z| *z /= norm);
    }
}

fn solve_general(a: &DenseMatrix, b: &DenseMatrix) -> Result<EigenSolution> {
    let n = a.rows();
    if n > GENERAL_PATH_MAX_N {
        return Err(Error::TooLargeForGeneralPath { n, max: GENERAL_PATH_MAX_N });
    }
    let (mut values, _) = pencil_eigenvalues(a, b)?;
    values.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    let mut pairs: Vec<EigenPair> = Vec::with_capacity(n);
    for (i, &lambda) in values.iter().enumerate() {
        let previous: Vec<Vec<Scalar>> = pairs
            .iter()
            .filter(|p| (p.value - lambda).norm() < REPEAT_RTOL * lambda.norm().max(1.0))
            .map(|p| p.vector.clone())
            .collect();
        let x = inverse_iteration(a, b, lambda, &previous)?;
        pairs.push(EigenPair::new(i + 1, lambda, x));
    }
    Ok(EigenSolution::new(pairs, Provenance::Numeric))
}

/// Finite eigenvalues of `λB − A` from its determinant; the second value
/// is the detected polynomial degree (below `n` when `B` is singular).
pub fn pencil_eigenvalues(a: &DenseMatrix, b: &DenseMatrix) -> Result<(Vec<Scalar>, usize)> {
    check_pencil(a, b)?;
    let n = a.rows();
    let det_at = |z: Scalar| -> Result<Scalar> { Ok(Lu::factor(&b.scaled(z).sub(a)?)?.det()) };

    // Start from a radius from the norms and recentre it on the geometric
    // mean of the root moduli so the coefficients stay balanced.
    let mut rho = (a.norm_inf() / b.norm_inf().max(f64::MIN_POSITIVE)).max(1e-3);
    let mut roots: Vec<Scalar>;
    let mut recentred = 0;
    loop {
        let coeffs = interpolate_on_circle(&det_at, n, rho)?;
        let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            return Err(Error::SingularPencil { mode: 0 });
        }
        let mut trimmed = coeffs;
        while trimmed.len() > 1 && trimmed.last().is_some_and(|c| c.norm() <= DEGREE_DROP_RTOL * max) {
            trimmed.pop();
        }
        if trimmed.len() == 1 && recentred == RECENTRE_MAX {
            return Ok((Vec::new(), 0));
        }
        let deg = trimmed.len() - 1;
        // Negligible low coefficients stand for roots near zero.
        let lo = trimmed.iter().position(|c| c.norm() > DEGREE_DROP_RTOL * max).unwrap_or(deg);
        let scale = if deg > lo {
            (trimmed[lo].norm() / trimmed[deg].norm()).powf(1.0 / (deg - lo) as f64)
        } else {
            1.0
        };
        if recentred < RECENTRE_MAX && (deg == 0 || !(0.5..=2.0).contains(&scale)) {
            recentred += 1;
            rho *= if deg == 0 { 4.0 } else { scale };
            continue;
        }
        roots = poly_roots(&Polynomial::new(trimmed))?.into_iter().map(|w| w * rho).collect();
        break;
    }
    let degree = roots.len();
    polish(a, b, &mut roots)?;
    Ok((roots, degree))
}

/// Coefficients `d_j` of `f(ρw) = Σ d_j w^j` (degree ≤ `n`) from samples at
/// the `n+1` roots of unity.
fn interpolate_on_circle(f: &dyn Fn(Scalar) -> Result<Scalar>, n: usize, rho: f64) -> Result<Vec<Scalar>> {
    let m = n + 1;
    let samples: Vec<Scalar> = (0..m)
        .map(|k| f(Scalar::from_polar(rho, 2.0 * PI * k as f64 / m as f64)))
        .collect::<Result<_>>()?;
    Ok((0..m)
        .map(|j| {
            samples
                .iter()
                .enumerate()
                .map(|(k, &s)| s * Scalar::from_polar(1.0, -2.0 * PI * ((j * k) % m) as f64 / m as f64))
                .sum::<Scalar>()
                / m as f64
        })
        .collect())
}

/// Simultaneous Aberth polish on `det(zB − A)` using the logarithmic
/// derivative `tr((zB − A)⁻¹ B)`.
fn polish(a: &DenseMatrix, b: &DenseMatrix, roots: &mut [Scalar]) -> Result<()> {
    let n = a.rows();
    let mut done = vec![false; roots.len()];
    for _ in 0..POLISH_MAX_ITER {
        let mut all_done = true;
        for k in 0..roots.len() {
            if done[k] {
                continue;
            }
            let z = roots[k];
            let lu = Lu::factor(&b.scaled(z).sub(a)?)?;
            if lu.min_pivot() == 0.0 {
                done[k] = true;
                continue;
            }
            let mut log_deriv = Scalar::default();
            for i in 0..n {
                let col: Vec<Scalar> = (0..n).map(|r| b[(r, i)]).collect();
                log_deriv += lu.solve(&col)?[i];
            }
            let repulsion: Scalar = (0..roots.len())
                .filter(|&j| j != k)
                .map(|j| Scalar::new(1.0, 0.0) / (z - roots[j]))
                .filter(|v| v.is_finite())
                .sum();
            let step = Scalar::new(1.0, 0.0) / (log_deriv - repulsion);
            if !step.is_finite() {
                done[k] = true;
                continue;
            }
            roots[k] = z - step;
            if step.norm() <= POLISH_STEP_RTOL * roots[k].norm().max(1e-300) {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    Ok(())
}

/// Eigenvector of `A x = λ B x` by inverse iteration with the shift
/// `λ(1 + 1e-10) + 1e-12`, orthogonalized against `previous` (vectors of
/// the same repeated eigenvalue). Returns a unit vector.
pub fn inverse_iteration(
    a: &DenseMatrix,
    b: &DenseMatrix,
    lambda: Scalar,
    previous: &[Vec<Scalar>],
) -> Result<Vec<Scalar>> {
    check_pencil(a, b)?;
    let n = a.rows();
    let shift = lambda * (1.0 + 1e-10) + 1e-12;
    let lu = Lu::factor(&a.sub(&b.scaled(shift))?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    let random_vector = |rng: &mut ChaCha8Rng| -> Vec<Scalar> {
        (0..n).map(|_| Scalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
    };
    let mut x = random_vector(&mut rng);
    let mut best: Option<(f64, Vec<Scalar>)> = None;
    for _ in 0..INVERSE_ITERATION_MAX {
        orthogonalize(&mut x, previous);
        normalize(&mut x);
        let mut y = lu.solve(&b.matvec(&x)?)?;
        if !y.iter().all(|z| z.is_finite()) || vec_norm2(&y) == 0.0 {
            // Stagnation: restart from a fresh random vector.
            x = random_vector(&mut rng);
            continue;
        }
        orthogonalize(&mut y, previous);
        normalize(&mut y);
        let r = residual_gevp(a, b, lambda, &y)?;
        if best.as_ref().is_none_or(|(rb, _)| r < *rb) {
            best = Some((r, y.clone()));
        }
        if r < 1e-14 {
            break;
        }
        x = y;
    }
    best.map(|(_, v)| v).ok_or(Error::NoConvergence { iterations: INVERSE_ITERATION_MAX })
}

fn orthogonalize(x: &mut [Scalar], basis: &[Vec<Scalar>]) {
    for v in basis {
        let vv = crate::linalg::vdot(v, v);
        if vv.norm() == 0.0 {
            continue;
        }
        let c = crate::linalg::vdot(v, x) / vv;
        x.iter_mut().zip(v).for_each(|(xi, vi)| *xi -= c * vi);
    }
}

/// Companion linearization `𝒜 v = λ ℬ v` of `Σ_k λ^k A_k` of size `nq`:
/// block super-identity in `𝒜` with last block row `−A_0 … −A_{q−1}`, and
/// `ℬ = diag(I, …, I, A_q)`.
pub fn companion_linearization(coeffs: &[DenseMatrix]) -> Result<(DenseMatrix, DenseMatrix)> {
    if coeffs.len() < 2 {
        return Err(Error::Invalid("matrix polynomial needs degree >= 1".into()));
    }
    let n = coeffs[0].rows();
    if coeffs.iter().any(|c| !c.is_square() || c.rows() != n) {
        return Err(Error::ShapeMismatch("all polynomial coefficients must be n x n".into()));
    }
    let q = coeffs.len() - 1;
    let size = n * q;
    let mut big_a = DenseMatrix::zeros(size, size);
    let mut big_b = DenseMatrix::identity(size);
    for blk in 0..q - 1 {
        for i in 0..n {
            big_a[(blk * n + i, (blk + 1) * n + i)] = re(1.0);
        }
    }
    let last = (q - 1) * n;
    for (k, c) in coeffs.iter().take(q).enumerate() {
        for i in 0..n {
            for j in 0..n {
                big_a[(last + i, k * n + j)] = -c[(i, j)];
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            big_b[(last + i, last + j)] = coeffs[q][(i, j)];
        }
    }
    Ok((big_a, big_b))
}

/// Eigenvalues of a polynomial eigenproblem through its companion
/// linearization.
#[derive(Debug, Clone, PartialEq)]
pub struct PevpNumeric {
    pub values: Vec<Scalar>,
    /// Fewer than `nq` finite eigenvalues were found (singular `A_q`).
    pub degree_drop: bool,
}

pub fn solve_pevp_numeric(coeffs: &[DenseMatrix]) -> Result<PevpNumeric> {
    let (big_a, big_b) = companion_linearization(coeffs)?;
    let expected = big_a.rows();
    let (mut values, degree) = pencil_eigenvalues(&big_a, &big_b)?;
    values.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(PevpNumeric { values, degree_drop: degree < expected })
}

/// One analytic eigenvalue paired with its nearest numeric partner.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchedPair {
    pub mode: usize,
    #[serde(skip)]
    pub analytic: Scalar,
    #[serde(skip)]
    pub numeric: Scalar,
    pub distance: f64,
    /// `distance / max(1, |analytic|)`.
    pub scaled_distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    /// Numeric eigenvalues, ascending by (real, imaginary).
    pub spectrum: Vec<Scalar>,
    pub max_residual: f64,
    pub pairs: Vec<MatchedPair>,
    pub max_distance: f64,
    pub max_scaled_distance: f64,
    pub count_mismatch: bool,
}

impl OracleReport {
    pub fn partner(&self, mode: usize) -> Option<&MatchedPair> {
        self.pairs.iter().find(|p| p.mode == mode)
    }
}

/// Greedy nearest-neighbour pairing of eigenvalue lists: `(index into a,
/// index into b, distance)`, visiting `a` in sorted order.
pub fn match_values(a: &[Scalar], b: &[Scalar]) -> Vec<(usize, usize, f64)> {
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by(|&i, &j| a[i].re.total_cmp(&a[j].re).then(a[i].im.total_cmp(&a[j].im)));
    let mut used = vec![false; b.len()];
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    for i in order {
        let best = (0..b.len())
            .filter(|&j| !used[j])
            .map(|j| (j, (a[i] - b[j]).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1));
        if let Some((j, d)) = best {
            used[j] = true;
            out.push((i, j, d));
        }
    }
    out
}

/// Pairs analytic with numeric eigenvalues. Unequal counts set the mismatch
/// flag and pair as many as possible.
pub fn match_spectra(analytic: &EigenSolution, numeric: &EigenSolution) -> OracleReport {
    let av = analytic.values();
    let nv = numeric.values();
    let pairs: Vec<MatchedPair> = match_values(&av, &nv)
        .into_iter()
        .map(|(i, j, d)| MatchedPair {
            mode: analytic.pairs[i].mode,
            analytic: av[i],
            numeric: nv[j],
            distance: d,
            scaled_distance: d / av[i].norm().max(1.0),
        })
        .collect();
    OracleReport {
        spectrum: numeric.sorted_values(),
        max_residual: numeric.max_residual().unwrap_or(0.0),
        max_distance: pairs.iter().map(|p| p.distance).fold(0.0, f64::max),
        max_scaled_distance: pairs.iter().map(|p| p.scaled_distance).fold(0.0, f64::max),
        count_mismatch: av.len() != nv.len(),
        pairs,
    }
}
