//! Complex polynomials and an all-roots solver.
//!
//! Degrees one and two are solved in closed form. Higher degrees use the
//! Aberth–Ehrlich simultaneous iteration, started on a circle enclosing
//! every root.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const TRIM_RTOL: f64 = 1e-14;
pub const ABERTH_MAX_ITER: usize = 500;
pub const ABERTH_STEP_TOL: f64 = 1e-13;
/// Irrational angular offset for the initial guesses.
const START_ANGLE: f64 = 0.4;

/// `coeffs[k]` multiplies `λ^k`. Leading coefficients below
/// `TRIM_RTOL · max |coeff|` are trimmed on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        let mut coeffs = coeffs;
        let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() <= TRIM_RTOL * max) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Scalar::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Scalar::new(c, 0.0)).collect())
    }

    /// Monic polynomial `Π (λ − r)`.
    pub fn from_roots(roots: &[Scalar]) -> Self {
        let mut c = vec![Scalar::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Scalar::new(0.0, 0.0); c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        Self { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative by Horner's scheme.
    pub fn eval_with_derivative(&self, z: Scalar) -> (Scalar, Scalar) {
        let mut p = Scalar::new(0.0, 0.0);
        let mut dp = Scalar::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `Σ |c_k| |z|^k`, the scale against which a residual is judged.
    pub fn magnitude_bound(&self, z: Scalar) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }
}

/// All roots of `p`, counted with multiplicity.
pub fn poly_roots(p: &Polynomial) -> Result<Vec<Scalar>> {
    let deg = p.degree();
    if deg == 0 {
        return Err(Error::Invalid("polynomial must have degree >= 1".into()));
    }
    let c = p.coeffs();
    // Zero roots factor out exactly.
    let zeros = c.iter().take_while(|z| z.norm() == 0.0).count();
    let reduced = &c[zeros..];
    let mut roots = vec![Scalar::new(0.0, 0.0); zeros];
    match reduced.len() - 1 {
        0 => {}
        1 => roots.push(-reduced[0] / reduced[1]),
        2 => {
            let (r1, r2) = quadratic_roots(reduced[2], reduced[1], reduced[0]);
            roots.push(r1);
            roots.push(r2);
        }
        _ => roots.extend(aberth(&Polynomial {
            coeffs: reduced.to_vec(),
        })?),
    }
    Ok(roots)
}

/// Roots of `a λ² + b λ + c` by the cancellation-free formula. The first
/// root takes the `+√` branch of `(−b ± √(b² − 4ac)) / 2a`.
pub fn quadratic_roots(a: Scalar, b: Scalar, c: Scalar) -> (Scalar, Scalar) {
    let disc = (b * b - a * c * 4.0).sqrt();
    let plus = (-b + disc) / (a * 2.0);
    let minus = (-b - disc) / (a * 2.0);
    // Recompute the root that suffers cancellation through Vieta.
    let (big, small_is_plus) = if (-b + disc).norm() >= (-b - disc).norm() {
        (plus, false)
    } else {
        (minus, true)
    };
    if big.norm() == 0.0 {
        return (plus, minus);
    }
    let other = c / (a * big);
    if small_is_plus {
        (other, big)
    } else {
        (big, other)
    }
}

fn aberth(p: &Polynomial) -> Result<Vec<Scalar>> {
    let c = p.coeffs();
    let deg = p.degree();
    let lead = c[deg];
    let radius = 1.0 + c[..deg].iter().map(|ck| (ck / lead).norm()).fold(0.0, f64::max);
    let mut z: Vec<Scalar> = (0..deg)
        .map(|k| Scalar::from_polar(radius, 2.0 * PI * k as f64 / deg as f64 + START_ANGLE))
        .collect();
    let mut done = vec![false; deg];
    let backward_tol = 4.0 * deg as f64 * f64::EPSILON;

    for _ in 0..ABERTH_MAX_ITER {
        let mut all_done = true;
        for k in 0..deg {
            if done[k] {
                continue;
            }
            let (pv, dpv) = p.eval_with_derivative(z[k]);
            // Stop once the residual is at rounding level for this z.
            if pv.norm() <= backward_tol * p.magnitude_bound(z[k]) {
                done[k] = true;
                continue;
            }
            let ratio = pv / dpv;
            let repulsion: Scalar = (0..deg)
                .filter(|&j| j != k)
                .map(|j| Scalar::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let step = ratio / (Scalar::new(1.0, 0.0) - ratio * repulsion);
            let step = if step.re.is_finite() && step.im.is_finite() {
                step
            } else {
                ratio
            };
            z[k] -= step;
            if step.norm() <= ABERTH_STEP_TOL * z[k].norm().max(1.0) {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence {
        iterations: ABERTH_MAX_ITER,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::re;

    fn sort(mut v: Vec<Scalar>) -> Vec<Scalar> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    fn check_residuals(p: &Polynomial, roots: &[Scalar]) {
        for &r in roots {
            assert!(p.eval(r).norm() <= 1e-10 * p.magnitude_bound(r), "root {r}");
        }
    }

    #[test]
    fn factorable_quadratic() {
        let p = Polynomial::from_real(&[2.0, -3.0, 1.0]);
        let r = sort(poly_roots(&p).unwrap());
        assert!((r[0] - re(1.0)).norm() < 1e-15);
        assert!((r[1] - re(2.0)).norm() < 1e-15);
    }

    #[test]
    fn imaginary_pair() {
        let p = Polynomial::from_real(&[1.0, 0.0, 1.0]);
        let r = sort(poly_roots(&p).unwrap());
        assert!((r[0] - Scalar::new(0.0, -1.0)).norm() < 1e-15);
        assert!((r[1] - Scalar::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn cube_roots_of_unity() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 0.0, 1.0]);
        let roots = poly_roots(&p).unwrap();
        assert_eq!(roots.len(), 3);
        check_residuals(&p, &roots);
        for k in 0..3 {
            let w = Scalar::from_polar(1.0, 2.0 * PI * k as f64 / 3.0);
            assert!(roots.iter().any(|r| (r - w).norm() < 1e-12), "missing {w}");
        }
    }

    #[test]
    fn trims_leading_zeros() {
        let p = Polynomial::from_real(&[1.0, 2.0, 0.0, 1e-20]);
        assert_eq!(p.degree(), 1);
        assert!((poly_roots(&p).unwrap()[0] - re(-0.5)).norm() < 1e-15);
    }

    #[test]
    fn zero_roots_factor_out() {
        let p = Polynomial::from_real(&[0.0, 0.0, -1.0, 0.0, 1.0]);
        let roots = sort(poly_roots(&p).unwrap());
        assert_eq!(roots.len(), 4);
        check_residuals(&p, &roots);
        assert_eq!(roots.iter().filter(|r| r.norm() == 0.0).count(), 2);
    }

    #[test]
    fn constant_is_rejected() {
        assert!(poly_roots(&Polynomial::from_real(&[3.0])).is_err());
    }

    #[test]
    fn quadratic_branch_order() {
        // λ² − 3λ + 2: the + branch of (3 ± 1)/2 is 2.
        let (plus, minus) = quadratic_roots(re(1.0), re(-3.0), re(2.0));
        assert!((plus - re(2.0)).norm() < 1e-15);
        assert!((minus - re(1.0)).norm() < 1e-15);
    }
}
