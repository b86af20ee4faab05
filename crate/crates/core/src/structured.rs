//! Builders for the structured matrix families: banded symmetric Toeplitz
//! matrices with four kinds of Hankel boundary correction, corner-overlapped
//! block-diagonal matrices, the 1D quadratic and cubic finite element
//! stiffness/mass pairs, and tensor-product pencils.
//!
//! Indices in the doc comments are 1-based to match the usual matrix
//! notation; the code itself is 0-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, DenseMatrix};
use crate::scalar::{re, Scalar};

/// The band `(α_0, …, α_m)`; the bandwidth is `m = len − 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientBand {
    values: Vec<Scalar>,
}

impl CoefficientBand {
    pub fn new(values: Vec<Scalar>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Invalid("a band needs at least α_0".into()));
        }
        Ok(Self { values })
    }

    pub fn real(values: &[f64]) -> Self {
        Self {
            values: values.iter().map(|&v| re(v)).collect(),
        }
    }

    pub fn bandwidth(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// `α_l`, zero beyond the bandwidth.
    pub fn get(&self, l: usize) -> Scalar {
        self.values.get(l).copied().unwrap_or_default()
    }

    /// Copy extended with zeros to `len` entries (never truncates).
    pub fn padded(&self, len: usize) -> Self {
        let mut values = self.values.clone();
        values.resize(len.max(values.len()), Scalar::default());
        Self { values }
    }

    pub fn abs_sum(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum()
    }
}

/// Which Hankel boundary correction is paired with the Toeplitz part.
///
/// `Set1`/`Set2` are subtracted (Dirichlet-like sine modes), `Set3`/`Set4`
/// are added (Neumann-like cosine modes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HankelVariant {
    Set1,
    Set2,
    Set3,
    Set4,
}

impl HankelVariant {
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Self::Set1),
            2 => Ok(Self::Set2),
            3 => Ok(Self::Set3),
            4 => Ok(Self::Set4),
            other => Err(Error::Invalid(format!("variant must be 1..=4, got {other}"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Self::Set1 => 1,
            Self::Set2 => 2,
            Self::Set3 => 3,
            Self::Set4 => 4,
        }
    }

    /// +1 when the Hankel part is added, −1 when subtracted.
    pub fn sign(self) -> f64 {
        match self {
            Self::Set1 | Self::Set2 => -1.0,
            Self::Set3 | Self::Set4 => 1.0,
        }
    }
}

/// Shared precondition of every Toeplitz-plus-Hankel builder:
/// `1 ≤ m ≤ n − 1` (so `n ≥ 2`) and corrections that do not collide.
pub fn validate_toeplitz_hankel(m: usize, n: usize) -> Result<()> {
    if m < 1 || m + 1 > n {
        return Err(Error::BadBandwidth { m, n, min: 1, max: n.saturating_sub(1) });
    }
    if 2 * m - 1 > n {
        return Err(Error::OverlapError { m, n });
    }
    Ok(())
}

/// Symmetric banded Toeplitz matrix with `T[j, j+k] = α_|k|` for `|k| ≤ m`.
pub fn build_toeplitz(band: &CoefficientBand, n: usize) -> Result<DenseMatrix> {
    let m = band.bandwidth();
    if m < 1 || m + 1 > n {
        return Err(Error::BadBandwidth {
            m,
            n,
            min: 1,
            max: n.saturating_sub(1),
        });
    }
    let mut t = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in i.saturating_sub(m)..(i + m + 1).min(n) {
            t[(i, j)] = band.get(i.abs_diff(j));
        }
    }
    Ok(t)
}

/// Places `value` at (row, col) (1-based) and at its persymmetric mirror.
fn put_persymmetric(h: &mut DenseMatrix, row: usize, col: usize, value: Scalar) {
    let n = h.rows();
    h[(row - 1, col - 1)] += value;
    h[(n - row, n - col)] += value;
}

/// The Hankel boundary correction of the chosen variant.
///
/// * `Set1`: `H[j, k] = α_{j+k}` for `j = 1..m−1`, `k = 1..m−j` (empty when `m = 1`).
/// * `Set2`, `Set4`: `H[j, k] = α_{j+k−1}` for `j = 1..m`, `k = 1..m−j+1`.
/// * `Set3`: `H[1, 1] = −α_0/2` and `H[j+1, k+1] = α_{j+k}` for `j = 1..m−1`, `k = 1..m−j`.
///
/// The bottom-right corner is the persymmetric reflection of the top-left;
/// where the two corners meet, their contributions add.
pub fn build_hankel(band: &CoefficientBand, n: usize, variant: HankelVariant) -> Result<DenseMatrix> {
    let m = band.bandwidth();
    validate_toeplitz_hankel(m, n)?;
    let mut h = DenseMatrix::zeros(n, n);
    match variant {
        HankelVariant::Set1 => {
            for j in 1..m {
                for k in 1..=m - j {
                    put_persymmetric(&mut h, j, k, band.get(j + k));
                }
            }
        }
        HankelVariant::Set2 | HankelVariant::Set4 => {
            for j in 1..=m {
                for k in 1..=m + 1 - j {
                    put_persymmetric(&mut h, j, k, band.get(j + k - 1));
                }
            }
        }
        HankelVariant::Set3 => {
            put_persymmetric(&mut h, 1, 1, -band.get(0) / 2.0);
            for j in 1..m {
                for k in 1..=m - j {
                    put_persymmetric(&mut h, j + 1, k + 1, band.get(j + k));
                }
            }
        }
    }
    Ok(h)
}

/// `T − H` for `Set1`/`Set2`, `T + H` for `Set3`/`Set4`.
pub fn assemble_toeplitz_hankel(
    band: &CoefficientBand,
    n: usize,
    variant: HankelVariant,
) -> Result<DenseMatrix> {
    let t = build_toeplitz(band, n)?;
    let h = build_hankel(band, n, variant)?;
    if variant.sign() < 0.0 {
        t.sub(&h)
    } else {
        t.add(&h)
    }
}

/// Corner-overlapped block-diagonal matrix of dimension `2·half_n + 1`.
///
/// `xi = (ξ_0, ξ_1, ξ_2, ξ_3)`: odd (1-based) diagonal entries are `ξ_3`,
/// even ones `ξ_0`, the first off-diagonal is `ξ_1` and the entries
/// `(2j, 2j+2)` coupling consecutive even nodes are `ξ_2`.
pub fn build_corner_block(xi: &[Scalar; 4], half_n: usize) -> Result<DenseMatrix> {
    if half_n < 1 {
        return Err(Error::TooSmall { what: "half_n", got: half_n, min: 1 });
    }
    let dim = 2 * half_n + 1;
    let mut g = DenseMatrix::zeros(dim, dim);
    for i in 0..dim {
        // 0-based even index = 1-based odd row.
        g[(i, i)] = if i % 2 == 0 { xi[3] } else { xi[0] };
        if i + 1 < dim {
            g[(i, i + 1)] = xi[1];
            g[(i + 1, i)] = xi[1];
        }
        if i % 2 == 1 && i + 2 < dim {
            g[(i, i + 2)] = xi[2];
            g[(i + 2, i)] = xi[2];
        }
    }
    Ok(g)
}

/// Quadratic element stiffness band `(ξ_0..ξ_3)` before the `1/h` factor.
pub const FEM_P2_STIFFNESS: [f64; 4] = [14.0 / 3.0, -8.0 / 3.0, 1.0 / 3.0, 16.0 / 3.0];
/// Quadratic element mass band `(ξ_0..ξ_3)` before the `h` factor.
pub const FEM_P2_MASS: [f64; 4] = [4.0 / 15.0, 1.0 / 15.0, -1.0 / 30.0, 8.0 / 15.0];

fn real4(v: [f64; 4]) -> [Scalar; 4] {
    v.map(re)
}

/// Stiffness and mass of quadratic Lagrange elements on `n_elems` uniform
/// cells of `[0, 1]` with homogeneous Dirichlet ends; dimension `2n − 1`.
pub fn build_fem_p2(n_elems: usize) -> Result<(DenseMatrix, DenseMatrix)> {
    if n_elems < 2 {
        return Err(Error::TooSmall { what: "n_elems", got: n_elems, min: 2 });
    }
    let h = 1.0 / n_elems as f64;
    let k = build_corner_block(&real4(FEM_P2_STIFFNESS), n_elems - 1)?.scaled(re(1.0 / h));
    let m = build_corner_block(&real4(FEM_P2_MASS), n_elems - 1)?.scaled(re(h));
    Ok((k, m))
}

/// Element stiffness of the cubic Lagrange element (equispaced nodes),
/// times `40 h`.
const P3_ELEMENT_STIFFNESS_X40: [[f64; 4]; 4] = [
    [148.0, -189.0, 54.0, -13.0],
    [-189.0, 432.0, -297.0, 54.0],
    [54.0, -297.0, 432.0, -189.0],
    [-13.0, 54.0, -189.0, 148.0],
];

/// Element mass of the cubic Lagrange element, times `1680 / h`.
const P3_ELEMENT_MASS_X1680: [[f64; 4]; 4] = [
    [128.0, 99.0, -36.0, 19.0],
    [99.0, 648.0, -81.0, -36.0],
    [-36.0, -81.0, 648.0, 99.0],
    [19.0, -36.0, 99.0, 128.0],
];

/// Stiffness and mass of cubic Lagrange elements on `n_elems` uniform cells
/// with Dirichlet ends; dimension `3n − 1`. Consecutive 4×4 element blocks
/// overlap at the shared vertex.
pub fn build_fem_p3(n_elems: usize) -> Result<(DenseMatrix, DenseMatrix)> {
    if n_elems < 2 {
        return Err(Error::TooSmall { what: "n_elems", got: n_elems, min: 2 });
    }
    let h = 1.0 / n_elems as f64;
    let global_nodes = 3 * n_elems + 1;
    let dim = global_nodes - 2;
    let mut k = DenseMatrix::zeros(dim, dim);
    let mut m = DenseMatrix::zeros(dim, dim);
    for e in 0..n_elems {
        for a in 0..4 {
            for b in 0..4 {
                let (ga, gb) = (3 * e + a, 3 * e + b);
                // Drop the two boundary vertices (global nodes 0 and 3n).
                if ga == 0 || gb == 0 || ga == global_nodes - 1 || gb == global_nodes - 1 {
                    continue;
                }
                k[(ga - 1, gb - 1)] += re(P3_ELEMENT_STIFFNESS_X40[a][b] / (40.0 * h));
                m[(ga - 1, gb - 1)] += re(P3_ELEMENT_MASS_X1680[a][b] * h / 1680.0);
            }
        }
    }
    Ok((k, m))
}

/// `lhs = A ⊗ D + B ⊗ C`, `rhs = B ⊗ D` for the pencils (A, B) and (C, D).
pub fn assemble_tensor_pencil(
    a: &DenseMatrix,
    b: &DenseMatrix,
    c: &DenseMatrix,
    d: &DenseMatrix,
) -> Result<(DenseMatrix, DenseMatrix)> {
    let square_pair = |x: &DenseMatrix, y: &DenseMatrix| {
        x.is_square() && y.is_square() && x.rows() == y.rows()
    };
    if !square_pair(a, b) || !square_pair(c, d) {
        return Err(Error::ShapeMismatch(
            "tensor assembly needs square A, B of equal size and square C, D of equal size".into(),
        ));
    }
    let lhs = kron(a, d).add(&kron(b, c))?;
    Ok((lhs, kron(b, d)))
}

/// Which member of a pencil a spec materializes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PencilSide {
    /// Stiffness or left-hand matrix.
    Lhs,
    /// Mass or right-hand matrix.
    Rhs,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Identity,
    Toeplitz { band: CoefficientBand },
    ToeplitzHankel { variant: HankelVariant, band: CoefficientBand },
    CornerBlock { xi: [Scalar; 4] },
    FemP2 { side: PencilSide },
    FemP3 { side: PencilSide },
    TensorAssembly { left: Box<PencilSpec>, right: Box<PencilSpec>, side: PencilSide },
}

/// A matrix-family descriptor; `n` is the materialized dimension and
/// `scale` multiplies every entry.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuredSpec {
    pub family: Family,
    pub n: usize,
    pub scale: Scalar,
}

impl StructuredSpec {
    pub fn new(family: Family, n: usize) -> Self {
        Self { family, n, scale: re(1.0) }
    }

    pub fn with_scale(mut self, scale: Scalar) -> Self {
        self.scale = scale;
        self
    }

    /// Checks that `n` is consistent with the family.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        match &self.family {
            Family::Identity => {
                if n == 0 {
                    return Err(Error::TooSmall { what: "n", got: n, min: 1 });
                }
            }
            Family::Toeplitz { band } => {
                let m = band.bandwidth();
                if m < 1 || m + 1 > n {
                    return Err(Error::BadBandwidth { m, n, min: 1, max: n.saturating_sub(1) });
                }
            }
            Family::ToeplitzHankel { band, .. } => validate_toeplitz_hankel(band.bandwidth(), n)?,
            Family::CornerBlock { .. } => {
                if n < 3 || n.is_multiple_of(2) {
                    return Err(Error::Invalid(format!(
                        "corner-overlapped dimension must be odd and >= 3, got {n}"
                    )));
                }
            }
            Family::FemP2 { .. } => {
                if n < 3 || n.is_multiple_of(2) {
                    return Err(Error::Invalid(format!(
                        "quadratic FEM dimension is 2n-1 with n >= 2, got {n}"
                    )));
                }
            }
            Family::FemP3 { .. } => {
                if n < 5 || n % 3 != 2 {
                    return Err(Error::Invalid(format!(
                        "cubic FEM dimension is 3n-1 with n >= 2, got {n}"
                    )));
                }
            }
            Family::TensorAssembly { left, right, .. } => {
                left.validate()?;
                right.validate()?;
                if left.dim() * right.dim() != n {
                    return Err(Error::ShapeMismatch(format!(
                        "tensor dimension {}x{} != {n}",
                        left.dim(),
                        right.dim()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn materialize(&self) -> Result<DenseMatrix> {
        self.validate()?;
        let n = self.n;
        let m = match &self.family {
            Family::Identity => DenseMatrix::identity(n),
            Family::Toeplitz { band } => build_toeplitz(band, n)?,
            Family::ToeplitzHankel { variant, band } => assemble_toeplitz_hankel(band, n, *variant)?,
            Family::CornerBlock { xi } => build_corner_block(xi, (n - 1) / 2)?,
            Family::FemP2 { side } => pick(build_fem_p2(n.div_ceil(2))?, *side),
            Family::FemP3 { side } => pick(build_fem_p3((n + 1) / 3)?, *side),
            Family::TensorAssembly { left, right, side } => {
                let (a, b) = left.materialize()?;
                let (c, d) = right.materialize()?;
                pick(assemble_tensor_pencil(&a, &b, &c, &d)?, *side)
            }
        };
        Ok(if self.scale == re(1.0) { m } else { m.scaled(self.scale) })
    }
}

fn pick(pair: (DenseMatrix, DenseMatrix), side: PencilSide) -> DenseMatrix {
    match side {
        PencilSide::Lhs => pair.0,
        PencilSide::Rhs => pair.1,
    }
}

/// A generalized eigenproblem `A x = λ B x` described by two specs.
#[derive(Debug, Clone, PartialEq)]
pub struct PencilSpec {
    pub a: StructuredSpec,
    pub b: StructuredSpec,
}

impl PencilSpec {
    /// Both bands are zero-padded to the wider bandwidth.
    pub fn toeplitz_hankel(
        variant: HankelVariant,
        alpha: CoefficientBand,
        beta: CoefficientBand,
        n: usize,
    ) -> Self {
        let len = alpha.values().len().max(beta.values().len());
        let (alpha, beta) = (alpha.padded(len), beta.padded(len));
        Self {
            a: StructuredSpec::new(Family::ToeplitzHankel { variant, band: alpha }, n),
            b: StructuredSpec::new(Family::ToeplitzHankel { variant, band: beta }, n),
        }
    }

    pub fn corner_block(alpha: [Scalar; 4], beta: [Scalar; 4], half_n: usize) -> Self {
        let n = 2 * half_n + 1;
        Self {
            a: StructuredSpec::new(Family::CornerBlock { xi: alpha }, n),
            b: StructuredSpec::new(Family::CornerBlock { xi: beta }, n),
        }
    }

    pub fn fem_p2(n_elems: usize) -> Self {
        let n = 2 * n_elems - 1;
        Self {
            a: StructuredSpec::new(Family::FemP2 { side: PencilSide::Lhs }, n),
            b: StructuredSpec::new(Family::FemP2 { side: PencilSide::Rhs }, n),
        }
    }

    pub fn fem_p3(n_elems: usize) -> Self {
        let n = 3 * n_elems - 1;
        Self {
            a: StructuredSpec::new(Family::FemP3 { side: PencilSide::Lhs }, n),
            b: StructuredSpec::new(Family::FemP3 { side: PencilSide::Rhs }, n),
        }
    }

    pub fn tensor(left: PencilSpec, right: PencilSpec) -> Self {
        let n = left.dim() * right.dim();
        let (left, right) = (Box::new(left), Box::new(right));
        Self {
            a: StructuredSpec::new(
                Family::TensorAssembly { left: left.clone(), right: right.clone(), side: PencilSide::Lhs },
                n,
            ),
            b: StructuredSpec::new(Family::TensorAssembly { left, right, side: PencilSide::Rhs }, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.a.n
    }

    pub fn validate(&self) -> Result<()> {
        self.a.validate()?;
        self.b.validate()?;
        if self.a.n != self.b.n {
            return Err(Error::ShapeMismatch(format!("pencil sizes {} vs {}", self.a.n, self.b.n)));
        }
        Ok(())
    }

    pub fn materialize(&self) -> Result<(DenseMatrix, DenseMatrix)> {
        self.validate()?;
        Ok((self.a.materialize()?, self.b.materialize()?))
    }
}
