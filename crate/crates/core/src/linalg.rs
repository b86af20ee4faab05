//! Dense complex linear algebra: storage, LU with partial pivoting,
//! Cholesky, Kronecker products and a cyclic Jacobi Hermitian eigensolver.
//!
//! Everything here is desk scale. Storage is row-major,
//! `data[i * cols + j] = A[i, j]`, with 0-based indices.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::solution::{EigenPair, EigenSolution, Provenance};

/// Relative pivot threshold used by [`lu_solve`].
pub const PIVOT_RTOL: f64 = 1e-13;
/// Relative asymmetry accepted by the Hermitian checks.
pub const HERMITIAN_RTOL: f64 = 1e-12;
/// Jacobi stops when the off-diagonal Frobenius norm drops below this
/// fraction of the Frobenius norm of the input.
pub const JACOBI_RTOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::new(1.0, 0.0);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch("matrix dimensions must be positive".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "expected {} entries for {rows}x{cols}, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row slices. Panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Scalar::new(x, 0.0)))
            .collect();
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_diagonal(diag: &[Scalar]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn scaled(&self, c: Scalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Scalar, Scalar) -> Scalar) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Scalar::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    /// Largest entrywise deviation from Hermitian symmetry.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, rtol: f64) -> bool {
        self.is_square() && self.hermitian_defect() <= rtol * self.max_abs().max(f64::MIN_POSITIVE)
    }

    /// Exact (complex) symmetry `A = Aᵀ`, not Hermitian symmetry.
    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_persymmetric(&self, tol: f64) -> bool {
        let n = self.rows;
        self.is_square()
            && (0..n).all(|i| (0..n).all(|j| (self[(i, j)] - self[(n - 1 - j, n - 1 - i)]).norm() <= tol))
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

pub fn vec_norm_inf(x: &[Scalar]) -> f64 {
    x.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn vec_norm2(x: &[Scalar]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `Σ conj(a_i) b_i`.
pub fn vdot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// LU factorization `PA = LU` with partial pivoting.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    lu: Vec<Scalar>,
    perm: Vec<usize>,
    sign: f64,
    min_pivot: f64,
}

impl Lu {
    /// Factors without a singularity check; a zero pivot is left in place
    /// and makes [`Lu::det`] return zero.
    pub fn factor(a: &DenseMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::ShapeMismatch("LU needs a square matrix".into()));
        }
        let n = a.rows();
        let mut lu = a.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut min_pivot = f64::INFINITY;
        for k in 0..n {
            let (p, best) = (k..n)
                .map(|i| (i, lu[i * n + k].norm()))
                .fold((k, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
            min_pivot = min_pivot.min(best);
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[k * n + k];
            if best == 0.0 {
                continue;
            }
            for i in k + 1..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                if factor == Scalar::new(0.0, 0.0) {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= factor * u;
                }
            }
        }
        Ok(Self {
            n,
            lu,
            perm,
            sign,
            min_pivot,
        })
    }

    /// Factors and rejects pivots below `PIVOT_RTOL · ‖A‖∞`.
    pub fn factor_checked(a: &DenseMatrix) -> Result<Self> {
        let lu = Self::factor(a)?;
        let threshold = PIVOT_RTOL * a.norm_inf();
        if !(lu.min_pivot > threshold) {
            return Err(Error::SingularMatrix {
                pivot: lu.min_pivot,
                threshold,
            });
        }
        Ok(lu)
    }

    pub fn min_pivot(&self) -> f64 {
        self.min_pivot
    }

    pub fn det(&self) -> Scalar {
        let mut d = Scalar::new(self.sign, 0.0);
        for k in 0..self.n {
            d *= self.lu[k * self.n + k];
        }
        d
    }

    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::ShapeMismatch(format!("rhs length {} for n = {n}", b.len())));
        }
        let mut x: Vec<Scalar> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[i * n + j] * x[j];
            }
            let d = self.lu[i * n + i];
            if d == Scalar::new(0.0, 0.0) {
                return Err(Error::SingularMatrix {
                    pivot: 0.0,
                    threshold: 0.0,
                });
            }
            x[i] = s / d;
        }
        Ok(x)
    }
}

/// Solves `Ax = b` by LU with partial pivoting.
pub fn lu_solve(a: &DenseMatrix, b: &[Scalar]) -> Result<Vec<Scalar>> {
    Lu::factor_checked(a)?.solve(b)
}

pub fn det(a: &DenseMatrix) -> Result<Scalar> {
    Ok(Lu::factor(a)?.det())
}

/// Lower-triangular Cholesky factor `A = L L*` of a Hermitian positive
/// definite matrix.
pub fn cholesky(a: &DenseMatrix) -> Result<DenseMatrix> {
    if !a.is_hermitian(HERMITIAN_RTOL) {
        return Err(Error::NotHermitian {
            asymmetry: a.hermitian_defect(),
        });
    }
    let n = a.rows();
    let mut l = DenseMatrix::zeros(n, n);
    let scale = a.max_abs();
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if !(d > 1e-14 * scale) {
            return Err(Error::NotPositiveDefinite);
        }
        let d = d.sqrt();
        l[(j, j)] = Scalar::new(d, 0.0);
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / d;
        }
    }
    Ok(l)
}

/// Solves `L y = b` for lower-triangular `L`.
pub fn forward_substitute(l: &DenseMatrix, b: &[Scalar]) -> Vec<Scalar> {
    let n = l.rows();
    let mut y = b.to_vec();
    for i in 0..n {
        let mut s = y[i];
        for k in 0..i {
            s -= l[(i, k)] * y[k];
        }
        y[i] = s / l[(i, i)];
    }
    y
}

/// Solves `L* x = y` for lower-triangular `L`.
pub fn backward_substitute_adjoint(l: &DenseMatrix, y: &[Scalar]) -> Vec<Scalar> {
    let n = l.rows();
    let mut x = y.to_vec();
    for i in (0..n).rev() {
        let mut s = x[i];
        for k in i + 1..n {
            s -= l[(k, i)].conj() * x[k];
        }
        x[i] = s / l[(i, i)].conj();
    }
    x
}

/// Kronecker product: block `(i, j)` of the result is `A[i, j] · B`.
pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let (p, q) = (b.rows(), b.cols());
    let mut out = DenseMatrix::zeros(a.rows() * p, a.cols() * q);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a[(i, j)];
            for k in 0..p {
                for l in 0..q {
                    out[(i * p + k, j * q + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

pub fn kron_vec(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().flat_map(|&a| y.iter().map(move |&b| a * b)).collect()
}

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Eigenvalues come back real and ascending, eigenvectors
/// unit-norm.
pub fn hermitian_eigen(a: &DenseMatrix) -> Result<EigenSolution> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("eigensolver needs a square matrix".into()));
    }
    if !a.is_hermitian(HERMITIAN_RTOL) {
        return Err(Error::NotHermitian {
            asymmetry: a.hermitian_defect(),
        });
    }
    let n = a.rows();
    let mut w = a.clone();
    // Symmetrize so that the stored triangle pairs are exact conjugates.
    for i in 0..n {
        w[(i, i)] = Scalar::new(w[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (w[(i, j)] + w[(j, i)].conj()) * 0.5;
            w[(i, j)] = avg;
            w[(j, i)] = avg.conj();
        }
    }
    let mut v = DenseMatrix::identity(n);
    let target = JACOBI_RTOL * a.norm_fro();

    let off_norm = |w: &DenseMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += 2.0 * w[(i, j)].norm_sqr();
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&w) <= target;
    let mut sweeps = 0;
    while !converged && sweeps < JACOBI_MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = w[(p, q)];
                let r = apq.norm();
                if r == 0.0 || r < 1e-300 {
                    continue;
                }
                let app = w[(p, p)].re;
                let aqq = w[(q, q)].re;
                // Phase that makes the (p, q) entry real, then a real rotation.
                let phase = apq / r;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U restricted to (p, q): [[c, s], [-s·conj(phase), c·conj(phase)]].
                let u_pp = Scalar::new(c, 0.0);
                let u_pq = Scalar::new(s, 0.0);
                let u_qp = -phase.conj() * s;
                let u_qq = phase.conj() * c;
                // W <- W U (columns p, q).
                for i in 0..n {
                    let wip = w[(i, p)];
                    let wiq = w[(i, q)];
                    w[(i, p)] = wip * u_pp + wiq * u_qp;
                    w[(i, q)] = wip * u_pq + wiq * u_qq;
                }
                // W <- U* W (rows p, q).
                for j in 0..n {
                    let wpj = w[(p, j)];
                    let wqj = w[(q, j)];
                    w[(p, j)] = u_pp.conj() * wpj + u_qp.conj() * wqj;
                    w[(q, j)] = u_pq.conj() * wpj + u_qq.conj() * wqj;
                }
                w[(p, q)] = Scalar::new(0.0, 0.0);
                w[(q, p)] = Scalar::new(0.0, 0.0);
                w[(p, p)] = Scalar::new(w[(p, p)].re, 0.0);
                w[(q, q)] = Scalar::new(w[(q, q)].re, 0.0);
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * u_pp + viq * u_qp;
                    v[(i, q)] = vip * u_pq + viq * u_qq;
                }
            }
        }
        converged = off_norm(&w) <= target;
    }
    if !converged {
        return Err(Error::NoConvergence { iterations: sweeps });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| w[(x, x)].re.total_cmp(&w[(y, y)].re));
    let pairs = order
        .iter()
        .enumerate()
        .map(|(rank, &col)| {
            let mut vector: Vec<Scalar> = (0..n).map(|i| v[(i, col)]).collect();
            let norm = vec_norm2(&vector);
            vector.iter_mut().for_each(|z| *z /= norm);
            EigenPair::new(rank + 1, Scalar::new(w[(col, col)].re, 0.0), vector)
        })
        .collect();
    Ok(EigenSolution::new(pairs, Provenance::Numeric))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::re;

    fn close(a: Scalar, b: Scalar, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn lu_solve_identity() {
        let x = lu_solve(&DenseMatrix::identity(2), &[re(1.0), re(2.0)]).unwrap();
        assert_eq!(x, vec![re(1.0), re(2.0)]);
    }

    #[test]
    fn lu_solve_second_difference() {
        let a = DenseMatrix::from_real_rows(&[&[2.0, -1.0], &[-1.0, 2.0]]);
        let x = lu_solve(&a, &[re(1.0), re(0.0)]).unwrap();
        assert!(close(x[0], re(2.0 / 3.0), 1e-15));
        assert!(close(x[1], re(1.0 / 3.0), 1e-15));
    }

    #[test]
    fn lu_solve_zero_matrix_is_singular() {
        let a = DenseMatrix::zeros(2, 2);
        assert!(matches!(
            lu_solve(&a, &[re(1.0), re(1.0)]),
            Err(Error::SingularMatrix { .. })
        ));
    }

    #[test]
    fn determinant_with_pivoting() {
        let a = DenseMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert!(close(det(&a).unwrap(), re(-1.0), 1e-15));
    }

    #[test]
    fn hermitian_eigen_2x2() {
        let a = DenseMatrix::from_real_rows(&[&[2.0, -1.0], &[-1.0, 2.0]]);
        let sol = hermitian_eigen(&a).unwrap();
        let vals = sol.values();
        assert!(close(vals[0], re(1.0), 1e-14));
        assert!(close(vals[1], re(3.0), 1e-14));
    }

    #[test]
    fn hermitian_eigen_scalar() {
        let sol = hermitian_eigen(&DenseMatrix::from_real_rows(&[&[5.0]])).unwrap();
        assert_eq!(sol.values(), vec![re(5.0)]);
    }

    #[test]
    fn hermitian_eigen_rejects_nilpotent() {
        let a = DenseMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eigen(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn hermitian_eigen_complex_entries() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let a = DenseMatrix::from_vec(
            2,
            2,
            vec![re(2.0), Scalar::new(0.0, 1.0), Scalar::new(0.0, -1.0), re(2.0)],
        )
        .unwrap();
        let sol = hermitian_eigen(&a).unwrap();
        assert!(close(sol.values()[0], re(1.0), 1e-14));
        assert!(close(sol.values()[1], re(3.0), 1e-14));
        for p in &sol.pairs {
            let ax = a.matvec(&p.vector).unwrap();
            for (l, r) in ax.iter().zip(&p.vector) {
                assert!(close(*l, p.value * r, 1e-13));
            }
        }
    }

    #[test]
    fn kron_identity_factor_is_block_diagonal() {
        let m = DenseMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let k = kron(&DenseMatrix::identity(2), &m);
        let expected = DenseMatrix::from_real_rows(&[
            &[1.0, 2.0, 0.0, 0.0],
            &[3.0, 4.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 2.0],
            &[0.0, 0.0, 3.0, 4.0],
        ]);
        assert_eq!(k, expected);
    }

    #[test]
    fn kron_scalar_factor() {
        let a = DenseMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert_eq!(kron(&a, &DenseMatrix::from_real_rows(&[&[1.0]])), a);
    }

    #[test]
    fn kron_row_by_column() {
        let a = DenseMatrix::from_real_rows(&[&[1.0, 2.0]]);
        let b = DenseMatrix::from_real_rows(&[&[3.0], &[4.0]]);
        let k = kron(&a, &b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        // Entrywise definition: K[(i p + k), (j q + l)] = A[i, j] B[k, l].
        assert_eq!(k, DenseMatrix::from_real_rows(&[&[3.0, 6.0], &[4.0, 8.0]]));
    }

    #[test]
    fn cholesky_reconstructs() {
        let a = DenseMatrix::from_real_rows(&[&[4.0, 2.0], &[2.0, 3.0]]);
        let l = cholesky(&a).unwrap();
        let back = l.matmul(&l.conj_transpose()).unwrap();
        assert!(back.sub(&a).unwrap().max_abs() < 1e-14);
        let indefinite = DenseMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 1.0]]);
        assert_eq!(cholesky(&indefinite), Err(Error::NotPositiveDefinite));
    }
}
