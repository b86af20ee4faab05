//! C ABI over `structeig`.
//!
//! Matrices and eigensolutions cross the boundary as opaque handles that the
//! caller releases with [`se_matrix_free`] and [`se_solution_free`]. Complex
//! data travels as separate real and imaginary arrays. Every fallible call
//! returns an [`SeStatus`]; the message of the last failure on the calling
//! thread is available from [`se_last_error_message`].
//!
//! Pointer contract shared by every function: handles are null or live
//! values returned by this library, input arrays hold at least the stated
//! number of elements, and output pointers are null or valid for writes.
//! Null handles and outputs are reported, never dereferenced.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use structeig::analytic::{fem_p2_eigenpairs, fem_p3_eigenpairs, gevp_eigenpairs};
use structeig::identities::{eve_identity_evp, trig_identity, TrigKind};
use structeig::reference::solve_gevp_numeric;
use structeig::structured::{build_fem_p2, build_fem_p3, CoefficientBand, HankelVariant, PencilSpec};
use structeig::{DenseMatrix, EigenSolution, Error, Scalar};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Singular = 3,
    NoConvergence = 4,
    OutOfRange = 5,
    Unsupported = 6,
    Panic = 7,
}

impl From<&Error> for SeStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::SingularMatrix { .. }
            | Error::SingularPencil { .. }
            | Error::SingularB
            | Error::SingularDenominator { .. }
            | Error::DivisionByZero
            | Error::DegenerateQuadratic { .. } => SeStatus::Singular,
            Error::NoConvergence { .. } => SeStatus::NoConvergence,
            Error::IndexOutOfRange { .. } => SeStatus::OutOfRange,
            Error::TooLargeForGeneralPath { .. } => SeStatus::Unsupported,
            _ => SeStatus::InvalidArgument,
        }
    }
}

/// Opaque dense complex matrix.
pub struct SeMatrix(DenseMatrix);

/// Opaque list of eigenpairs.
pub struct SeSolution(EigenSolution);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: SeStatus, msg: impl Into<String>) -> SeStatus {
    set_error(msg);
    status
}

/// Runs `f`, converting library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), SeStatus>) -> SeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SeStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(SeStatus::Panic, "internal panic"),
    }
}

fn lib<T>(r: structeig::Result<T>) -> Result<T, SeStatus> {
    r.map_err(|e| fail(SeStatus::from(&e), e.to_string()))
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), SeStatus> {
    if p.is_null() {
        Err(fail(SeStatus::NullPointer, format!("{name} is null")))
    } else {
        Ok(())
    }
}

/// Reads `len` complex values; a null `im` means all imaginary parts are zero.
unsafe fn read_complex(re: *const f64, im: *const f64, len: usize, name: &str) -> Result<Vec<Scalar>, SeStatus> {
    non_null(re, name)?;
    let re = std::slice::from_raw_parts(re, len);
    Ok(if im.is_null() {
        re.iter().map(|&r| Scalar::new(r, 0.0)).collect()
    } else {
        let im = std::slice::from_raw_parts(im, len);
        re.iter().zip(im).map(|(&r, &i)| Scalar::new(r, i)).collect()
    })
}

unsafe fn read_band(re: *const f64, im: *const f64, len: usize, name: &str) -> Result<CoefficientBand, SeStatus> {
    lib(CoefficientBand::new(read_complex(re, im, len, name)?))
}

fn variant(v: u32) -> Result<HankelVariant, SeStatus> {
    lib(u8::try_from(v)
        .map_err(|_| Error::Invalid(format!("variant must be 1..=4, got {v}")))
        .and_then(HankelVariant::from_index))
}

unsafe fn emit<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

/// Copies the last error message of this thread into `buf` (NUL terminated,
/// truncated to `len` bytes) and returns the full message length, or 0 when
/// there is no error. Passing a null `buf` only queries the length.
///
/// # Safety
///
/// `buf` is null or writable for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn se_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len - 1);
                ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
            bytes.len()
        }
    })
}

/// Toeplitz-plus-Hankel pencil (A, B) of size `n`. Bands hold `m + 1`
/// coefficients `α_0..α_m`; `*_im` may be null for real bands.
///
/// # Safety
///
/// Band arrays hold their stated lengths; see the crate-level pointer contract.
#[no_mangle]
pub unsafe extern "C" fn se_pencil_toeplitz_hankel(
    variant_index: u32,
    n: usize,
    alpha_re: *const f64,
    alpha_im: *const f64,
    alpha_len: usize,
    beta_re: *const f64,
    beta_im: *const f64,
    beta_len: usize,
    out_a: *mut *mut SeMatrix,
    out_b: *mut *mut SeMatrix,
) -> SeStatus {
    guard(|| {
        non_null(out_a, "out_a")?;
        non_null(out_b, "out_b")?;
        let alpha = read_band(alpha_re, alpha_im, alpha_len, "alpha_re")?;
        let beta = read_band(beta_re, beta_im, beta_len, "beta_re")?;
        let (a, b) = lib(PencilSpec::toeplitz_hankel(variant(variant_index)?, alpha, beta, n).materialize())?;
        emit(out_a, SeMatrix(a));
        emit(out_b, SeMatrix(b));
        Ok(())
    })
}

/// Stiffness and mass matrices of quadratic (`degree` 2) or cubic
/// (`degree` 3) finite elements on `n_elems` uniform elements.
///
/// # Safety
///
/// See the crate-level pointer contract.
#[no_mangle]
pub unsafe extern "C" fn se_pencil_fem(
    degree: u32,
    n_elems: usize,
    out_k: *mut *mut SeMatrix,
    out_m: *mut *mut SeMatrix,
) -> SeStatus {
    guard(|| {
        non_null(out_k, "out_k")?;
        non_null(out_m, "out_m")?;
        let (k, m) = match degree {
            2 => lib(build_fem_p2(n_elems))?,
            3 => lib(build_fem_p3(n_elems))?,
            d => return Err(fail(SeStatus::InvalidArgument, format!("degree must be 2 or 3, got {d}"))),
        };
        emit(out_k, SeMatrix(k));
        emit(out_m, SeMatrix(m));
        Ok(())
    })
}

/// Matrix from row-major real and imaginary parts (`im` may be null).
///
/// # Safety
///
/// `re` (and `im` when non-null) hold `rows * cols` values.
#[no_mangle]
pub unsafe extern "C" fn se_matrix_from_rows(
    rows: usize,
    cols: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut SeMatrix,
) -> SeStatus {
    guard(|| {
        non_null(out, "out")?;
        let len = rows.checked_mul(cols).ok_or_else(|| fail(SeStatus::InvalidArgument, "size overflow"))?;
        let data = read_complex(re, im, len, "re")?;
        emit(out, SeMatrix(lib(DenseMatrix::from_vec(rows, cols, data))?));
        Ok(())
    })
}

/// # Safety
///
/// See the crate-level pointer contract.
#[no_mangle]
pub unsafe extern "C" fn se_matrix_rows(m: *const SeMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.rows())
}

/// # Safety
///
/// See the crate-level pointer contract.
#[no_mangle]
pub unsafe extern "C" fn se_matrix_cols(m: *const SeMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.cols())
}

/// Entry `(i, j)`, zero-based.
///
/// # Safety
///
/// See the crate-level pointer contract.
#[no_mangle]
pub unsafe extern "C" fn se_matrix_get(m: *const SeMatrix, i: usize, j: usize, re: *mut f64, im: *mut f64) -> SeStatus {
    guard(|| {
        non_null(m, "matrix")?;
        non_null(re, "re")?;
        non_null(im, "im")?;
        let m = &(*m).0;
        if i >= m.rows() || j >= m.cols() {
            return Err(fail(SeStatus::OutOfRange, format!("entry ({i}, {j}) outside {}x{}", m.rows(), m.cols())));
        }
        *re = m[(i, j)].re;
        *im = m[(i, j)].im;
        Ok(())
    })
}

/// # Safety
///
/// `m` is null or a matrix handle not freed before; it is dangling afterwards.
#[no_mangle]
pub unsafe extern "C" fn se_matrix_free(m: *mut SeMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Closed-form eigenpairs of the Toeplitz-plus-Hankel pencil.
///
/// # Safety
///
/// Band arrays hold their stated lengths; see the crate-level pointer contract.
#[no_mangle]
pub unsafe extern "C" fn se_gevp_analytic(
    variant_index: u32,
    n: usize,
    alpha_re: *const f64,
    alpha_im: *const f64,
    alpha_len: usize,
    beta_re: *const f64,
    beta_im: *const f64,
    beta_len: usize,
    out: *mut *mut SeSolution,
) -> SeStatus {
    guard(|| {
        non_null(out, "out")?;
        let alpha = read_band(alpha_re, alpha_im, alpha_len, "alpha_re")?;
        let beta = read_band(beta_re, beta_im, beta_len, "beta_re")?;
        emit(out, SeSolution(lib(gevp_eigenpairs(&alpha, &beta, n, variant(variant_index)?))?));
        Ok(())
    })
}

/// Closed-form eigenpairs of the finite element pencil of the given degree.
///
/// # Safety
///
/// See the crate-level pointer contract.
#[no_mangle]
pub unsafe extern "C" fn se_fem_analytic(degree: u32, n_elems: usize, out: *mut *mut SeSolution) -> SeStatus {
    guard(|| {
        non_null(out, "out")?;
        let sol = match degree {
            2 => lib(fem_p2_eigenpairs(n_elems))?,
            3 => lib(fem_p3_eigenpairs(n_elems))?,
            d => return Err(fail(SeStatus::InvalidArgument, format!("degree must be 2 or 3, got {d}"))),
        };
        emit(out, SeSolution(sol));
        Ok(())
    })
}

/// Dense numerical eigenpairs of `A x = λ B x`.
///
/// # Safety
///
/// See the crate-level pointer contract.
#[no_mangle]
pub unsafe extern "C" fn se_gevp_numeric(a: *const SeMatrix, b: *const SeMatrix, out: *mut *mut SeSolution) -> SeStatus {
    guard(|| {
        non_null(a, "a")?;
        non_null(b, "b")?;
        non_null(out, "out")?;
        emit(out, SeSolution(lib(solve_gevp_numeric(&(*a).0, &(*b).0))?));
        Ok(())
    })
}

/// # Safety
///
/// See the crate-level pointer contract.
#[no_mangle]
pub unsafe extern "C" fn se_solution_len(s: *const SeSolution) -> usize {
    s.as_ref().map_or(0, |s| s.0.len())
}

/// Length of every eigenvector in the solution.
///
/// # Safety
///
/// See the crate-level pointer contract.
#[no_mangle]
pub unsafe extern "C" fn se_solution_dim(s: *const SeSolution) -> usize {
    s.as_ref().and_then(|s| s.0.pairs.first()).map_or(0, |p| p.vector.len())
}

/// Eigenvalue and mode index of the `index`-th pair (zero-based).
///
/// # Safety
///
/// See the crate-level pointer contract.
#[no_mangle]
pub unsafe extern "C" fn se_solution_value(
    s: *const SeSolution,
    index: usize,
    re: *mut f64,
    im: *mut f64,
    mode: *mut usize,
) -> SeStatus {
    guard(|| {
        non_null(s, "solution")?;
        non_null(re, "re")?;
        non_null(im, "im")?;
        let pairs = &(*s).0.pairs;
        let p = pairs
            .get(index)
            .ok_or_else(|| fail(SeStatus::OutOfRange, format!("pair {index} of {}", pairs.len())))?;
        *re = p.value.re;
        *im = p.value.im;
        if !mode.is_null() {
            *mode = p.mode;
        }
        Ok(())
    })
}

/// Copies the `index`-th eigenvector into `re`/`im`, each of length `len`.
///
/// # Safety
///
/// `re` and `im` are writable for `len` values.
#[no_mangle]
pub unsafe extern "C" fn se_solution_vector(
    s: *const SeSolution,
    index: usize,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> SeStatus {
    guard(|| {
        non_null(s, "solution")?;
        non_null(re, "re")?;
        non_null(im, "im")?;
        let pairs = &(*s).0.pairs;
        let p = pairs
            .get(index)
            .ok_or_else(|| fail(SeStatus::OutOfRange, format!("pair {index} of {}", pairs.len())))?;
        if len != p.vector.len() {
            return Err(fail(SeStatus::InvalidArgument, format!("buffer length {len}, vector length {}", p.vector.len())));
        }
        let (re, im) = (std::slice::from_raw_parts_mut(re, len), std::slice::from_raw_parts_mut(im, len));
        for (i, z) in p.vector.iter().enumerate() {
            re[i] = z.re;
            im[i] = z.im;
        }
        Ok(())
    })
}

/// # Safety
///
/// `s` is null or a solution handle not freed before; it is dangling afterwards.
#[no_mangle]
pub unsafe extern "C" fn se_solution_free(s: *mut SeSolution) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Both sides of the eigenvector-eigenvalue identity for Hermitian `a`
/// (`j`, `k` one-based).
///
/// # Safety
///
/// See the crate-level pointer contract.
#[no_mangle]
pub unsafe extern "C" fn se_eve_identity(
    a: *const SeMatrix,
    j: usize,
    k: usize,
    lhs: *mut f64,
    rhs: *mut f64,
) -> SeStatus {
    guard(|| {
        non_null(a, "a")?;
        non_null(lhs, "lhs")?;
        non_null(rhs, "rhs")?;
        let r = lib(eve_identity_evp(&(*a).0, j, k))?;
        *lhs = r.lhs.re;
        *rhs = r.rhs.re;
        Ok(())
    })
}

/// Both sides of the trigonometric identity with a row removed
/// (`l` in 1..=n; `l == 1` is the first-row special case).
///
/// # Safety
///
/// See the crate-level pointer contract.
#[no_mangle]
pub unsafe extern "C" fn se_trig_identity(n: usize, k: usize, l: usize, lhs: *mut f64, rhs: *mut f64) -> SeStatus {
    guard(|| {
        non_null(lhs, "lhs")?;
        non_null(rhs, "rhs")?;
        let r = lib(trig_identity(TrigKind::Ti3, n, k, l, None))?;
        *lhs = r.lhs.re;
        *rhs = r.rhs.re;
        Ok(())
    })
}
