//! Closed-form eigenpairs of the structured families.
//!
//! Every generator tags its pairs with the mode index `j` that produced
//! them; the free eigenvector constant is fixed to 1.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::kron_vec;
use crate::poly::{poly_roots, quadratic_roots, Polynomial};
use crate::reference::inverse_iteration;
use crate::scalar::{checked_div, re, Scalar};
use crate::solution::{EigenPair, EigenSolution, Provenance};
use crate::structured::{
    build_fem_p3, validate_toeplitz_hankel, CoefficientBand, HankelVariant, FEM_P2_MASS,
    FEM_P2_STIFFNESS,
};

/// Symbols smaller than this times the band's absolute sum count as zero.
pub const SYMBOL_RTOL: f64 = 1e-12;
/// Leading quadratic coefficients below this (relative) are degenerate.
pub const QUADRATIC_RTOL: f64 = 1e-14;
/// Below this relative size `λβ_3 − α_3` counts as zero in the corner-block vector.
const FACTOR_RTOL: f64 = 1e-10;

/// `α_0 + 2 Σ_{l≥1} α_l cos(lθ)`.
pub fn symbol(band: &CoefficientBand, theta: f64) -> Scalar {
    band.values()
        .iter()
        .enumerate()
        .skip(1)
        .fold(band.get(0), |acc, (l, &a)| acc + a * (2.0 * (l as f64 * theta).cos()))
}

/// Mode grid of one Toeplitz-plus-Hankel variant at dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeGrid {
    pub variant: HankelVariant,
    pub n: usize,
    pub h: f64,
}

impl ModeGrid {
    pub fn new(variant: HankelVariant, n: usize) -> Self {
        let nf = n as f64;
        let h = match variant {
            HankelVariant::Set1 => 1.0 / (nf + 1.0),
            HankelVariant::Set2 | HankelVariant::Set4 => 1.0 / nf,
            HankelVariant::Set3 => 1.0 / (nf - 1.0),
        };
        Self { variant, n, h }
    }

    /// `(mode index, j)` pairs: `j = 1..n` for the sine families and
    /// `j = 0..n−1` for the cosine ones, whose mode index is `j + 1`.
    pub fn modes(&self) -> Vec<(usize, usize)> {
        match self.variant {
            HankelVariant::Set1 | HankelVariant::Set2 => (1..=self.n).map(|j| (j, j)).collect(),
            HankelVariant::Set3 | HankelVariant::Set4 => (0..self.n).map(|j| (j + 1, j)).collect(),
        }
    }

    pub fn theta(&self, j: usize) -> f64 {
        j as f64 * PI * self.h
    }

    /// Unnormalized eigenvector of frequency `j`.
    pub fn vector(&self, j: usize) -> Vec<Scalar> {
        let (jf, h) = (j as f64, self.h);
        (1..=self.n)
            .map(|k| {
                let kf = k as f64;
                re(match self.variant {
                    HankelVariant::Set1 => (jf * PI * kf * h).sin(),
                    HankelVariant::Set2 => (jf * PI * (kf - 0.5) * h).sin(),
                    HankelVariant::Set3 => (jf * PI * (kf - 1.0) * h).cos(),
                    HankelVariant::Set4 => (jf * PI * (kf - 0.5) * h).cos(),
                })
            })
            .collect()
    }
}

/// Eigenpairs of `(T ∓ H)(α) x = λ (T ∓ H)(β) x`: `λ_j = symbol(α, θ_j) / symbol(β, θ_j)`.
/// Bands of different length are zero-padded to the common bandwidth.
pub fn gevp_eigenpairs(
    alpha: &CoefficientBand,
    beta: &CoefficientBand,
    n: usize,
    variant: HankelVariant,
) -> Result<EigenSolution> {
    let len = alpha.values().len().max(beta.values().len());
    validate_toeplitz_hankel(len - 1, n)?;
    let grid = ModeGrid::new(variant, n);
    let beta_scale = beta.abs_sum();
    let mut pairs = Vec::with_capacity(n);
    for (mode, j) in grid.modes() {
        let theta = grid.theta(j);
        let denom = symbol(beta, theta);
        if denom.norm() < SYMBOL_RTOL * beta_scale || beta_scale == 0.0 {
            return Err(Error::SingularPencil { mode });
        }
        pairs.push(EigenPair::new(mode, symbol(alpha, theta) / denom, grid.vector(j)));
    }
    Ok(EigenSolution::new(pairs, Provenance::Analytic).with_h(grid.h))
}

/// Coefficients `(â, b̂, ĉ)` of the per-mode quadratic `â λ² + b̂ λ + ĉ` of
/// the corner-overlapped pencil, at `ζ = cos(jπh)`.
pub fn corner_block_quadratic(alpha: &[Scalar; 4], beta: &[Scalar; 4], zeta: f64) -> [Scalar; 3] {
    let [a0, a1, a2, a3] = *alpha;
    let [b0, b1, b2, b3] = *beta;
    let a_hat = b0 * b3 - b1 * b1 * 2.0 + (b2 * b3 - b1 * b1) * (2.0 * zeta);
    let b_hat = a1 * b1 * 4.0 - b0 * a3 - a0 * b3 - (b2 * a3 - a1 * b1 * 2.0 + a2 * b3) * (2.0 * zeta);
    let c_hat = a0 * a3 - a1 * a1 * 2.0 + (a2 * a3 - a1 * a1) * (2.0 * zeta);
    [a_hat, b_hat, c_hat]
}

/// Corner-overlapped eigenvector: even entries `sin(jπkh)`, odd entries
/// `factor · (x_{2k} + x_{2k+2})`.
fn corner_vector(half_n: usize, j: usize, h: f64, factor: Scalar) -> Vec<Scalar> {
    let dim = 2 * half_n + 1;
    let even = |k: usize| -> f64 {
        if k == 0 || k == half_n + 1 {
            0.0
        } else {
            (j as f64 * PI * k as f64 * h).sin()
        }
    };
    (1..=dim)
        .map(|i| {
            if i % 2 == 0 {
                re(even(i / 2))
            } else {
                let k = (i - 1) / 2;
                factor * (even(k) + even(k + 1))
            }
        })
        .collect()
}

/// Vector of the isolated mode `λ = α_3/β_3`: odd entries `(−1)^k`, even zero.
fn alternating_vector(half_n: usize) -> Vec<Scalar> {
    (0..2 * half_n + 1)
        .map(|i| match (i % 2, (i / 2) % 2) {
            (0, 0) => re(1.0),
            (0, _) => re(-1.0),
            _ => re(0.0),
        })
        .collect()
}

/// Eigenpairs of the corner-overlapped pencil `G(α) x = λ G(β) x`.
///
/// For `j = 1..half_n` the two roots of the per-mode quadratic give modes
/// `2j − 1` (minus branch) and `2j` (plus branch); mode `2·half_n + 1` is
/// `α_3/β_3`. A quadratic-branch eigenvector whose odd-entry factor has a
/// vanishing denominator is recovered by inverse iteration and noted.
pub fn corner_block_eigenpairs(
    alpha: &[Scalar; 4],
    beta: &[Scalar; 4],
    half_n: usize,
) -> Result<EigenSolution> {
    if half_n < 1 {
        return Err(Error::TooSmall { what: "half_n", got: half_n, min: 1 });
    }
    let h = 1.0 / (half_n as f64 + 1.0);
    let mut pairs = Vec::with_capacity(2 * half_n + 1);
    let mut notes = Vec::new();
    let mut pencil = None;
    for j in 1..=half_n {
        let zeta = (j as f64 * PI * h).cos();
        let [a, b, c] = corner_block_quadratic(alpha, beta, zeta);
        let scale = a.norm().max(b.norm()).max(c.norm());
        let mut branch = Vec::with_capacity(2);
        if a.norm() < QUADRATIC_RTOL * scale || scale == 0.0 {
            if b.norm() < QUADRATIC_RTOL * scale || scale == 0.0 {
                return Err(Error::DegenerateQuadratic { mode: 2 * j - 1 });
            }
            notes.push(format!("mode {}: degenerate quadratic, linear root only", 2 * j - 1));
            branch.push((2 * j - 1, -c / b));
        } else {
            let (plus, minus) = quadratic_roots(a, b, c);
            branch.push((2 * j - 1, minus));
            branch.push((2 * j, plus));
        }
        for (mode, lambda) in branch {
            let den = lambda * beta[3] - alpha[3];
            let den_scale = (lambda * beta[3]).norm() + alpha[3].norm();
            let factor = if den.norm() > FACTOR_RTOL * den_scale {
                checked_div(alpha[1] - lambda * beta[1], den).ok()
            } else {
                None
            };
            let vector = match factor {
                Some(factor) if factor.is_finite() => corner_vector(half_n, j, h, factor),
                _ => {
                    notes.push(format!("mode {mode}: odd-entry factor undefined, vector from inverse iteration"));
                    if pencil.is_none() {
                        pencil = Some((
                            crate::structured::build_corner_block(alpha, half_n)?,
                            crate::structured::build_corner_block(beta, half_n)?,
                        ));
                    }
                    let (ga, gb) = pencil.as_ref().expect("pencil built above");
                    inverse_iteration(ga, gb, lambda, &[])?
                }
            };
            pairs.push(EigenPair::new(mode, lambda, vector));
        }
    }
    let isolated = checked_div(alpha[3], beta[3])?;
    pairs.push(EigenPair::new(2 * half_n + 1, isolated, alternating_vector(half_n)));
    let mut sol = EigenSolution::new(pairs, Provenance::Analytic).with_h(h);
    sol.notes = notes;
    Ok(sol)
}

/// Which closed-form branch a quadratic FEM eigenvalue comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FemP2Branch {
    Acoustic,
    Isolated,
    Optical,
}

impl FemP2Branch {
    pub fn of_mode(mode: usize, n_elems: usize) -> Self {
        match mode.cmp(&n_elems) {
            std::cmp::Ordering::Less => Self::Acoustic,
            std::cmp::Ordering::Equal => Self::Isolated,
            std::cmp::Ordering::Greater => Self::Optical,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Acoustic => "acoustic",
            Self::Isolated => "10n^2",
            Self::Optical => "optical",
        }
    }
}

/// `Λ = λh²` of the quadratic FEM pencil at `ζ`; `sign` picks the branch.
fn fem_p2_scaled_root(zeta: f64, sign: f64) -> f64 {
    let disc = (124.0 + 112.0 * zeta - 11.0 * zeta * zeta).sqrt();
    4.0 * (13.0 + 2.0 * zeta + sign * disc) / (3.0 - zeta)
}

/// Eigenpairs of the quadratic FEM stiffness/mass pencil on `n_elems` cells.
///
/// Modes `1..n−1` are the lower branch at `ζ = cos(jπh)`, mode `n` is
/// `10n²`, and modes `n+1..2n−1` are the upper branch at `ζ = cos((j−n)πh)`.
pub fn fem_p2_eigenpairs(n_elems: usize) -> Result<EigenSolution> {
    if n_elems < 2 {
        return Err(Error::TooSmall { what: "n_elems", got: n_elems, min: 2 });
    }
    let n = n_elems;
    let h = 1.0 / n as f64;
    let n2 = (n * n) as f64;
    let half_n = n - 1;
    let mut pairs = Vec::with_capacity(2 * n - 1);
    for mode in 1..2 * n {
        let pair = match FemP2Branch::of_mode(mode, n) {
            FemP2Branch::Isolated => EigenPair::new(mode, re(10.0 * n2), alternating_vector(half_n)),
            branch => {
                let (j, sign) = if branch == FemP2Branch::Acoustic { (mode, -1.0) } else { (mode - n, 1.0) };
                let zeta = (j as f64 * PI * h).cos();
                let lambda_h2 = fem_p2_scaled_root(zeta, sign);
                let factor = (40.0 + lambda_h2) / (80.0 - 8.0 * lambda_h2);
                EigenPair::new(mode, re(lambda_h2 * n2), corner_vector(half_n, j, h, re(factor)))
            }
        };
        pairs.push(pair);
    }
    Ok(EigenSolution::new(pairs, Provenance::Analytic).with_h(h))
}

/// Stiffness and mass bands `(α, β)` of the quadratic FEM pencil, with the
/// `1/h` and `h` factors applied.
pub fn fem_p2_bands(n_elems: usize) -> ([Scalar; 4], [Scalar; 4]) {
    let h = 1.0 / n_elems as f64;
    (FEM_P2_STIFFNESS.map(|v| re(v / h)), FEM_P2_MASS.map(|v| re(v * h)))
}

/// Per-mode cubic `(4+ζ)Λ³ − 30(18−ζ)Λ² + 360(32+3ζ)Λ − 25200(1−ζ)` of the
/// cubic FEM pencil, ascending coefficients.
pub fn fem_p3_cubic(zeta: f64) -> Polynomial {
    Polynomial::from_real(&[
        -25200.0 * (1.0 - zeta),
        360.0 * (32.0 + 3.0 * zeta),
        -30.0 * (18.0 - zeta),
        4.0 + zeta,
    ])
}

/// The `3n − 1` eigenvalues of the cubic FEM pencil, ascending: three cubic
/// roots per `ζ = cos(jπ/n)`, `j = 1..n−1`, scaled by `n²`, plus `10n²`
/// and `42n²`.
pub fn fem_p3_eigenvalues(n_elems: usize) -> Result<Vec<Scalar>> {
    if n_elems < 2 {
        return Err(Error::TooSmall { what: "n_elems", got: n_elems, min: 2 });
    }
    let n = n_elems;
    let n2 = (n * n) as f64;
    let mut values = Vec::with_capacity(3 * n - 1);
    for j in 1..n {
        let zeta = (j as f64 * PI / n as f64).cos();
        // The cubic has real roots; drop round-off imaginary parts.
        values.extend(poly_roots(&fem_p3_cubic(zeta))?.into_iter().map(|r| re(r.re * n2)));
    }
    values.push(re(10.0 * n2));
    values.push(re(42.0 * n2));
    values.sort_by(|a, b| a.re.total_cmp(&b.re));
    Ok(values)
}

/// Closed-form eigenvalues of the cubic FEM pencil with eigenvectors from
/// inverse iteration; modes are ranks in ascending order.
pub fn fem_p3_eigenpairs(n_elems: usize) -> Result<EigenSolution> {
    let values = fem_p3_eigenvalues(n_elems)?;
    let (k, m) = build_fem_p3(n_elems)?;
    let mut pairs: Vec<EigenPair> = Vec::with_capacity(values.len());
    for (i, &lambda) in values.iter().enumerate() {
        let previous: Vec<Vec<Scalar>> = pairs
            .iter()
            .filter(|p| (p.value - lambda).norm() < 1e-8 * lambda.norm().max(1.0))
            .map(|p| p.vector.clone())
            .collect();
        pairs.push(EigenPair::new(i + 1, lambda, inverse_iteration(&k, &m, lambda, &previous)?));
    }
    let mut sol = EigenSolution::new(pairs, Provenance::Analytic).with_h(1.0 / n_elems as f64);
    sol.notes.push("eigenvectors recovered by inverse iteration".into());
    Ok(sol)
}

/// `P(λ) = Σ_k λ^k A_k` with every `A_k` a Toeplitz-plus-Hankel matrix of
/// the same variant and dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialPencil {
    bands: Vec<CoefficientBand>,
    variant: HankelVariant,
    n: usize,
}

impl PolynomialPencil {
    /// `bands[k]` defines `A_k`; bands are padded to the common bandwidth.
    pub fn new(bands: Vec<CoefficientBand>, variant: HankelVariant, n: usize) -> Result<Self> {
        if bands.len() < 2 {
            return Err(Error::Invalid("a polynomial pencil needs q >= 1 (two or more bands)".into()));
        }
        let len = bands.iter().map(|b| b.values().len()).max().unwrap_or(1);
        validate_toeplitz_hankel(len - 1, n)?;
        let bands = bands.into_iter().map(|b| b.padded(len)).collect();
        Ok(Self { bands, variant, n })
    }

    pub fn bands(&self) -> &[CoefficientBand] {
        &self.bands
    }

    pub fn variant(&self) -> HankelVariant {
        self.variant
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.bands.len() - 1
    }

    /// The dense coefficient matrices `A_0..A_q`.
    pub fn materialize(&self) -> Result<Vec<crate::linalg::DenseMatrix>> {
        self.bands
            .iter()
            .map(|b| crate::structured::assemble_toeplitz_hankel(b, self.n, self.variant))
            .collect()
    }
}

/// The roots shared by one mode of a polynomial pencil.
#[derive(Debug, Clone, PartialEq)]
pub struct PevpMode {
    pub mode: usize,
    pub theta: f64,
    pub roots: Vec<Scalar>,
    /// The leading symbol vanished and fewer than `q` roots were returned.
    pub degree_drop: bool,
    pub vector: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PevpSolution {
    pub modes: Vec<PevpMode>,
    pub h: f64,
}

impl PevpSolution {
    pub fn values(&self) -> Vec<Scalar> {
        self.modes.iter().flat_map(|m| m.roots.iter().copied()).collect()
    }

    pub fn any_degree_drop(&self) -> bool {
        self.modes.iter().any(|m| m.degree_drop)
    }

    /// Flattened view; root `r` of mode `j` gets index `(j−1)·q + r + 1`.
    pub fn to_eigen_solution(&self, q: usize) -> EigenSolution {
        let pairs = self
            .modes
            .iter()
            .flat_map(|m| {
                m.roots
                    .iter()
                    .enumerate()
                    .map(move |(r, &root)| EigenPair::new((m.mode - 1) * q + r + 1, root, m.vector.clone()))
            })
            .collect();
        EigenSolution::new(pairs, Provenance::Analytic).with_h(self.h)
    }
}

/// Per-mode roots of `Σ_k λ^k symbol(α^(k), θ_j)`, sharing the variant's
/// eigenvector across the `q` roots of a mode.
pub fn pevp_eigenpairs(pencil: &PolynomialPencil) -> Result<PevpSolution> {
    let grid = ModeGrid::new(pencil.variant, pencil.n);
    let mut modes = Vec::with_capacity(pencil.n);
    for (mode, j) in grid.modes() {
        let theta = grid.theta(j);
        let mut coeffs: Vec<Scalar> = pencil.bands.iter().map(|b| symbol(b, theta)).collect();
        let q = coeffs.len() - 1;
        while coeffs.len() > 1 {
            let k = coeffs.len() - 1;
            let scale = pencil.bands[k].abs_sum();
            if coeffs[k].norm() < SYMBOL_RTOL * scale || scale == 0.0 {
                coeffs.pop();
            } else {
                break;
            }
        }
        let roots = if coeffs.len() > 1 {
            poly_roots(&Polynomial::new(coeffs.clone()))?
        } else {
            Vec::new()
        };
        modes.push(PevpMode {
            mode,
            theta,
            degree_drop: coeffs.len() - 1 < q,
            roots,
            vector: grid.vector(j),
        });
    }
    Ok(PevpSolution { modes, h: grid.h })
}

/// Eigenpairs of the tensor pencil `(A⊗D + B⊗C) z = η (B⊗D) z`:
/// `η = λ_j + μ_k`, `z = x_j ⊗ y_k`, indexed `j·|right| + k` (0-based, plus one).
pub fn tensor_eigenpairs(left: &EigenSolution, right: &EigenSolution) -> EigenSolution {
    let mut pairs = Vec::with_capacity(left.len() * right.len());
    for (a, x) in left.pairs.iter().enumerate() {
        for (b, y) in right.pairs.iter().enumerate() {
            pairs.push(EigenPair::new(
                a * right.len() + b + 1,
                x.value + y.value,
                kron_vec(&x.vector, &y.vector),
            ));
        }
    }
    let provenance = if left.provenance == Provenance::Analytic && right.provenance == Provenance::Analytic {
        Provenance::Analytic
    } else {
        Provenance::Numeric
    };
    EigenSolution::new(pairs, provenance)
}

/// Eigenpairs of `c1·A x = λ c2·B x` from those of `A x = λ B x`:
/// eigenvalues are multiplied by `c1/c2`.
pub fn scale_pencil(sol: &EigenSolution, c1: Scalar, c2: Scalar) -> Result<EigenSolution> {
    if c1.norm() == 0.0 || c2.norm() == 0.0 {
        return Err(Error::ZeroScale);
    }
    let factor = c1 / c2;
    let mut out = sol.clone();
    for p in &mut out.pairs {
        p.value *= factor;
        p.residual = None;
    }
    Ok(out)
}
