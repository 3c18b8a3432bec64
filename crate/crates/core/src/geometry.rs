//! Cross and inner products, norms, orthogonality, collinearity, the complex
//! vector angle and the canonical basis.
//!
//! The inner product is `Σ u$i · cnj(v$i)`: linear in the first argument,
//! conjugate-linear in the second.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cacs, cnj, cx, modulus, CScalar, Real, C64};
use crate::vector::{is_cvector_zero, vector_map2, vector_to_cvector, CVector, Vector};

/// Modulus slack accepted past 1 before the angle argument is rescaled onto
/// the unit circle.
pub const ANGLE_CLAMP_SLACK: f64 = 1e-12;

/// Complex cross product of two 3-vectors.
pub fn ccross<T: Real>(u: &CVector<T>, v: &CVector<T>) -> Result<CVector<T>> {
    if u.dim() != 3 || v.dim() != 3 {
        return Err(Error::Dimension(format!(
            "ccross needs dimension 3, got {} and {}",
            u.dim(),
            v.dim()
        )));
    }
    let (a, b) = (u.as_slice(), v.as_slice());
    Vector::new(vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ])
}

/// Inner product `u · v = Σ u$i · cnj(v$i)`.
pub fn cdot<T: Real>(u: &CVector<T>, v: &CVector<T>) -> Result<CScalar<T>> {
    let terms = vector_map2(|a, b| a * cnj(b), u, v)?;
    Ok(terms.iter().fold(cx(T::zero()), |s, t| s + t))
}

/// `Re(v · v)`. The sum is real by construction (each term is `|v$i|²`), so no
/// tolerance test is made.
pub fn cnorm2<T: Real>(v: &CVector<T>) -> T {
    v.iter()
        .fold(T::zero(), |s, z| s + z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone())
}

pub fn cnorm(v: &CVector<f64>) -> f64 {
    cnorm2(v).sqrt()
}

/// Exact orthogonality: `u · v = 0`.
pub fn corthogonal<T: Real>(u: &CVector<T>, v: &CVector<T>) -> Result<bool> {
    let d = cdot(u, v)?;
    Ok(d.re.is_zero() && d.im.is_zero())
}

/// Floating orthogonality: `|u · v| <= tol · max(1, ‖u‖‖v‖)`.
pub fn corthogonal_tol(u: &CVector<f64>, v: &CVector<f64>, tol: f64) -> Result<bool> {
    Ok(orthogonality_residual(u, v)? <= tol)
}

/// `|u · v| / max(1, ‖u‖‖v‖)`.
pub fn orthogonality_residual(u: &CVector<f64>, v: &CVector<f64>) -> Result<f64> {
    let d = cdot(u, v)?;
    Ok(modulus(&d) / (cnorm(u) * cnorm(v)).max(1.0))
}

/// `∃a. v = a % u ∨ u = a % v`, decided exactly by vanishing of every 2×2
/// minor `u$i v$j − u$j v$i`.
pub fn collinear_cvectors<T: Real>(u: &CVector<T>, v: &CVector<T>) -> Result<bool> {
    if u.dim() != v.dim() {
        return Err(Error::dim_mismatch("collinear_cvectors", u.dim(), v.dim()));
    }
    let (a, b) = (u.as_slice(), v.as_slice());
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let m = &a[i] * &b[j] - &a[j] * &b[i];
            if !(m.re.is_zero() && m.im.is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Cauchy–Schwarz equality residual `|‖u·v‖ − ‖u‖‖v‖| / (1 + ‖u‖‖v‖)`.
pub fn collinearity_residual(u: &CVector<f64>, v: &CVector<f64>) -> Result<f64> {
    let d = cdot(u, v)?;
    let p = cnorm(u) * cnorm(v);
    Ok((modulus(&d) - p).abs() / (1.0 + p))
}

/// Floating collinearity through the Cauchy–Schwarz equality case.
pub fn collinear_cvectors_tol(u: &CVector<f64>, v: &CVector<f64>, tol: f64) -> Result<bool> {
    Ok(collinearity_residual(u, v)? <= tol)
}

/// A complex vector angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleResult {
    pub value: C64,
}

/// `π/2` when either vector is zero, otherwise `cacs((u·v) / (‖u‖‖v‖))`.
pub fn cvector_angle(u: &CVector<f64>, v: &CVector<f64>) -> Result<AngleResult> {
    if u.dim() != v.dim() {
        return Err(Error::dim_mismatch("cvector_angle", u.dim(), v.dim()));
    }
    if is_cvector_zero(u) || is_cvector_zero(v) {
        return Ok(AngleResult {
            value: Complex::new(FRAC_PI_2, 0.0),
        });
    }
    let mut arg = cdot(u, v)? / (cnorm(u) * cnorm(v));
    let m = modulus(&arg);
    if m > 1.0 && m <= 1.0 + ANGLE_CLAMP_SLACK {
        arg /= m;
        if arg.im.abs() <= ANGLE_CLAMP_SLACK {
            arg.im = 0.0;
        }
    }
    Ok(AngleResult { value: cacs(&arg) })
}

/// `k`-th canonical basis vector of dimension `n`.
pub fn cbasis<T: Real>(k: usize, n: usize) -> Result<CVector<T>> {
    if k == 0 || k > n {
        return Err(Error::Index { index: k, dim: n });
    }
    let basis = Vector::from_fn(n, |i| if i == k { T::one() } else { T::zero() })?;
    Ok(vector_to_cvector(&basis))
}
