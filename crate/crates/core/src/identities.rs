//! Eigenvector-eigenvalue identities for Hermitian matrices and pencils,
//! and the trigonometric identities they imply for tridiagonal Toeplitz
//! matrices.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, vdot, DenseMatrix, Lu, HERMITIAN_RTOL};
use crate::reference::solve_gevp_numeric;
use crate::scalar::{re, Scalar};

/// Spectral gaps below this make both sides ill-conditioned.
pub const GAP_WARNING: f64 = 1e-6;
/// Trigonometric denominators below this are rejected.
pub const TRIG_DENOMINATOR_MIN: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub kind: String,
    #[serde(serialize_with = "ser_scalar")]
    pub lhs: Scalar,
    #[serde(serialize_with = "ser_scalar")]
    pub rhs: Scalar,
    pub abs_diff: f64,
    pub rel_diff: f64,
    pub n: usize,
    pub j: Option<usize>,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub warnings: Vec<String>,
}

fn ser_scalar<S: serde::Serializer>(z: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&z.re)?;
    t.serialize_element(&z.im)?;
    t.end()
}

impl IdentityReport {
    fn new(kind: &str, lhs: Scalar, rhs: Scalar, n: usize) -> Self {
        let abs_diff = (lhs - rhs).norm();
        Self {
            kind: kind.to_string(),
            lhs,
            rhs,
            abs_diff,
            rel_diff: abs_diff / lhs.norm().max(rhs.norm()).max(1e-30),
            n,
            j: None,
            k: None,
            l: None,
            warnings: Vec::new(),
        }
    }
}

/// The `(n−1)×(n−1)` matrix without row and column `k` (1-based).
pub fn minor_remove(a: &DenseMatrix, k: usize) -> Result<DenseMatrix> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::ShapeMismatch("minor of a non-square matrix".into()));
    }
    if n < 2 || k < 1 || k > n {
        return Err(Error::IndexOutOfRange { index: k, len: n });
    }
    let mut m = DenseMatrix::zeros(n - 1, n - 1);
    for (ri, i) in (0..n).filter(|&i| i != k - 1).enumerate() {
        for (rj, j) in (0..n).filter(|&j| j != k - 1).enumerate() {
            m[(ri, rj)] = a[(i, j)];
        }
    }
    Ok(m)
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i < 1 || i > n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    Ok(())
}

fn product(it: impl Iterator<Item = Scalar>) -> Scalar {
    it.fold(re(1.0), |acc, z| acc * z)
}

fn min_gap(values: &[Scalar]) -> f64 {
    let mut gap = f64::INFINITY;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            gap = gap.min((a - b).norm());
        }
    }
    gap
}

fn gap_warning(values: &[Scalar]) -> Option<String> {
    let gap = min_gap(values);
    (gap < GAP_WARNING).then(|| format!("near-degenerate spectrum (gap {gap:.3e}); identity is ill-conditioned"))
}

/// `|x_{j,k}|² Π_{l≠j}(λ_j − λ_l)` against `Π_l(λ_j − μ_l^{(k)})`, with
/// ascending spectra of `A` and of its `k`-minor.
pub fn eve_identity_evp(a: &DenseMatrix, j: usize, k: usize) -> Result<IdentityReport> {
    if !a.is_hermitian(HERMITIAN_RTOL) {
        return Err(Error::NotHermitian { asymmetry: a.hermitian_defect() });
    }
    let n = a.rows();
    check_index(j, n)?;
    let minor = minor_remove(a, k)?;
    let eig = hermitian_eigen(a)?;
    let mu = hermitian_eigen(&minor)?.values();
    let lambda = eig.values();
    let lj = lambda[j - 1];
    let x = &eig.pairs[j - 1].vector;
    let lhs = x[k - 1].norm_sqr() * product((0..n).filter(|&l| l != j - 1).map(|l| lj - lambda[l]));
    let rhs = product(mu.iter().map(|m| lj - m));
    let mut report = IdentityReport::new("eve", lhs, rhs, n);
    (report.j, report.k) = (Some(j), Some(k));
    report.warnings.extend(gap_warning(&lambda));
    Ok(report)
}

/// Which side of the generalized identity to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GeviForm {
    /// Eigenvalue products of `B` and its minor, `η` ascending.
    Literal,
    /// `|x_{j,k}|² Q′(λ_j) = η_j P^{(k)}(λ_j)` with `η_j = x_j* B x_j`.
    ProofForm,
}

/// The eigenvector-eigenvalue identity for a Hermitian pencil `(A, B)`,
/// with eigenvectors normalized to `x*x = 1`.
pub fn eve_identity_gevp(
    a: &DenseMatrix,
    b: &DenseMatrix,
    j: usize,
    k: usize,
    form: GeviForm,
) -> Result<IdentityReport> {
    for m in [a, b] {
        if !m.is_hermitian(HERMITIAN_RTOL) {
            return Err(Error::NotHermitian { asymmetry: m.hermitian_defect() });
        }
    }
    let n = a.rows();
    check_index(j, n)?;
    let (am, bm) = (minor_remove(a, k)?, minor_remove(b, k)?);
    let det_b = Lu::factor_checked(b).map_err(|_| Error::SingularB)?.det();
    let det_bm = Lu::factor(&bm)?.det();
    let sol = solve_gevp_numeric(a, b)?;
    let view = sol.sorted_view();
    let lambda: Vec<Scalar> = view.iter().map(|p| p.value).collect();
    let x = &view[j - 1].vector;
    let lj = lambda[j - 1];
    let mu = solve_gevp_numeric(&am, &bm)?.sorted_values();
    let gaps = product((0..n).filter(|&l| l != j - 1).map(|l| lj - lambda[l]));
    let minor_gaps = product(mu.iter().map(|m| lj - m));
    let weight = x[k - 1].norm_sqr();

    let (kind, lhs, rhs) = match form {
        GeviForm::ProofForm => {
            let eta_j = vdot(x, &b.matvec(x)?);
            ("gevp-eve-proof", weight * det_b * gaps, eta_j * det_bm * minor_gaps)
        }
        GeviForm::Literal => {
            let eta = hermitian_eigen(b)?.values();
            let eta_minor = hermitian_eigen(&bm)?.values();
            let num = product(eta_minor.iter().copied());
            let den = product((0..n).filter(|&l| l != j - 1).map(|l| eta[l]));
            ("gevp-eve-literal", weight * gaps, num / den * minor_gaps)
        }
    };
    let mut report = IdentityReport::new(kind, lhs, rhs, n);
    (report.j, report.k) = (Some(j), Some(k));
    report.warnings.extend(gap_warning(&lambda));
    Ok(report)
}

/// Which trigonometric identity to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TrigKind {
    /// Removing the first row and column.
    Ti31,
    /// Removing row and column `l`.
    Ti3,
    /// Removing row and column `l` of a tridiagonal pencil.
    Ti3g,
}

impl TrigKind {
    /// Whether a violation means a bug rather than a known limitation.
    pub fn is_proven(self) -> bool {
        !matches!(self, Self::Ti3g)
    }
}

/// Bands `(α_0, α_1)` and `(β_0, β_1)` of a tridiagonal pencil.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TridiagonalBands {
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
}

fn checked_factor(v: f64) -> Result<f64> {
    if v.abs() < TRIG_DENOMINATOR_MIN {
        return Err(Error::SingularDenominator { value: v });
    }
    Ok(v)
}

/// Evaluates `(2/(n+1)) sin²(klπ/(n+1))` against the product expression of
/// the chosen identity. `l` is ignored by `Ti31`; `Ti3` with `l ∈ {1, n}`
/// is evaluated as `Ti31`; `bands` are used by `Ti3g` only.
pub fn trig_identity(
    kind: TrigKind,
    n: usize,
    k: usize,
    l: usize,
    bands: Option<TridiagonalBands>,
) -> Result<IdentityReport> {
    if n < 2 {
        return Err(Error::TooSmall { what: "n", got: n, min: 2 });
    }
    check_index(k, n)?;
    let np1 = n as f64 + 1.0;
    let others = (1..=n).filter(|&j| j != k);
    let (name, l_used, lhs, rhs, warnings) = match kind {
        TrigKind::Ti31 => ("ti31", 1, ti_lhs(n, k, 1), ti31_rhs(n, k)?, Vec::new()),
        TrigKind::Ti3 => {
            check_index(l, n)?;
            if l == 1 || l == n {
                ("ti3", l, ti_lhs(n, k, l), ti31_rhs(n, k)?, Vec::new())
            } else {
                let num = (1..l).map(|j| cos_gap(k, n + 1, j, l)).product::<f64>()
                    * (l..n).map(|j| cos_gap(k, n + 1, j - l + 1, n - l + 1)).product::<f64>();
                let mut den = 1.0;
                for j in others {
                    den *= checked_factor(cos_gap(k, n + 1, j, n + 1))?;
                }
                ("ti3", l, ti_lhs(n, k, l), num / den, Vec::new())
            }
        }
        TrigKind::Ti3g => {
            check_index(l, n)?;
            let TridiagonalBands { alpha, beta } =
                bands.ok_or_else(|| Error::Invalid("ti3g needs alpha and beta bands".into()))?;
            let b_sym = |t: f64| beta[0] + 2.0 * beta[1] * t.cos();
            let ratio = |t: f64| -> Result<f64> { Ok((alpha[0] + 2.0 * alpha[1] * t.cos()) / checked_factor(b_sym(t))?) };
            let theta_k = k as f64 * PI / np1;
            let fk = ratio(theta_k)?;
            let pre_num = (1..n).map(|j| b_sym(j as f64 * PI / n as f64)).product::<f64>();
            let mut pre_den = 1.0;
            let mut pi3 = 1.0;
            for j in others {
                let t = j as f64 * PI / np1;
                pre_den *= checked_factor(b_sym(t))?;
                pi3 *= checked_factor(fk - ratio(t)?)?;
            }
            let mut pi1 = 1.0;
            for j in 1..l {
                pi1 *= fk - ratio(j as f64 * PI / l as f64)?;
            }
            let mut pi2 = 1.0;
            for j in l..n {
                pi2 *= fk - ratio((j - l + 1) as f64 * PI / (n - l + 1) as f64)?;
            }
            let mut warnings = Vec::new();
            if l != 1 && l != n && beta[1] != 0.0 {
                warnings.push(
                    "prefactor samples the mass minor at cos(jπ/n), exact only for l ∈ {1, n} or β_1 = 0".into(),
                );
            }
            ("ti3g", l, ti_lhs(n, k, l), pre_num / pre_den * pi1 * pi2 / pi3, warnings)
        }
    };
    let mut report = IdentityReport::new(name, re(lhs), re(rhs), n);
    (report.k, report.l) = (Some(k), Some(l_used));
    report.warnings = warnings;
    Ok(report)
}

/// `sin(pπ/q)`, exactly zero when `q` divides `p`.
fn sin_pi_ratio(p: usize, q: usize) -> f64 {
    if p.is_multiple_of(q) {
        0.0
    } else {
        (p as f64 * PI / q as f64).sin()
    }
}

/// `cos(aπ/b) − cos(cπ/d)` as `−2 sin(½(x+y)) sin(½(x−y))`, exactly zero
/// when the angles coincide.
fn cos_gap(a: usize, b: usize, c: usize, d: usize) -> f64 {
    if a * d == c * b {
        return 0.0;
    }
    let (x, y) = (a as f64 * PI / b as f64, c as f64 * PI / d as f64);
    -2.0 * (0.5 * (x + y)).sin() * (0.5 * (x - y)).sin()
}

fn ti_lhs(n: usize, k: usize, l: usize) -> f64 {
    2.0 / (n as f64 + 1.0) * sin_pi_ratio(k * l, n + 1).powi(2)
}

fn ti31_rhs(n: usize, k: usize) -> Result<f64> {
    let num: f64 = (1..n).map(|j| cos_gap(k, n + 1, j, n)).product();
    let mut den = 1.0;
    for j in (1..=n).filter(|&j| j != k) {
        den *= checked_factor(cos_gap(k, n + 1, j, n + 1))?;
    }
    Ok(num / den)
}
