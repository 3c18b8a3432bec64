//! Complex scalars over two interchangeable real backends.
//!
//! [`Real`] is implemented by `f64` (floating) and [`Exact`] (arbitrary
//! precision rationals). Everything else in the crate is generic over it, so
//! the same identity can be checked with zero residual on the exact backend
//! and with a tolerance on the floating one. Operations that need `sqrt`,
//! `cos` or `acos` only exist for `f64`.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, the exact backend.
pub type Exact = BigRational;

/// A complex number over a real backend.
pub type CScalar<T> = Complex<T>;

/// Floating complex scalar.
pub type C64 = Complex<f64>;

/// A real scalar backend.
pub trait Real:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// `true` when arithmetic is exact (no rounding).
    const EXACT: bool;

    /// Lossy conversion used for reporting residuals.
    fn to_f64_lossy(&self) -> f64;

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

impl Real for f64 {
    const EXACT: bool = false;

    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

impl Real for BigRational {
    const EXACT: bool = true;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Embeds a real number: `r + 0i`.
pub fn cx<T: Real>(r: T) -> CScalar<T> {
    Complex::new(r, T::zero())
}

/// The imaginary unit.
pub fn ii<T: Real>() -> CScalar<T> {
    Complex::new(T::zero(), T::one())
}

/// Builds an exact rational `num/den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Exact {
    BigRational::new(num.into(), den.into())
}

/// Exact complex scalar from integer-ratio parts.
pub fn exact(re: (i64, i64), im: (i64, i64)) -> CScalar<Exact> {
    Complex::new(ratio(re.0, re.1), ratio(im.0, im.1))
}

pub fn add<T: Real>(a: &CScalar<T>, b: &CScalar<T>) -> CScalar<T> {
    a + b
}

pub fn sub<T: Real>(a: &CScalar<T>, b: &CScalar<T>) -> CScalar<T> {
    a - b
}

pub fn mul<T: Real>(a: &CScalar<T>, b: &CScalar<T>) -> CScalar<T> {
    a * b
}

pub fn neg<T: Real>(a: &CScalar<T>) -> CScalar<T> {
    -a.clone()
}

/// Complex conjugate.
pub fn cnj<T: Real>(z: &CScalar<T>) -> CScalar<T> {
    Complex::new(z.re.clone(), -z.im.clone())
}

/// `sqrt(re² + im²)`, computed without intermediate overflow.
pub fn modulus(z: &C64) -> f64 {
    z.re.hypot(z.im)
}

/// Returns the real part of `z` when `|Im z| <= tol`.
///
/// On the exact backend pass `tol = 0` for the literal "has no imaginary
/// part" test.
pub fn real_of_complex<T: Real>(z: &CScalar<T>, tol: &T) -> Result<T> {
    let im = z.im.abs();
    if &im > tol {
        return Err(Error::NotReal(im.to_f64_lossy()));
    }
    Ok(z.re.clone())
}

/// Complex cosine: `cos(a+bi) = cos a cosh b − i sin a sinh b`.
pub fn ccos(z: &C64) -> Result<C64> {
    let w = Complex::new(z.re.cos() * z.im.cosh(), -(z.re.sin() * z.im.sinh()));
    if !w.re.is_finite() || !w.im.is_finite() {
        return Err(Error::Overflow("ccos"));
    }
    Ok(w)
}

/// Principal complex arccosine, `π/2 + i·ln(iz + sqrt(1 − z²))`.
///
/// Continuous on `[-1, 1]` where it agrees with the real arccosine.
pub fn cacs(z: &C64) -> C64 {
    let one = Complex::new(1.0, 0.0);
    let i = Complex::new(0.0, 1.0);
    let root = (one - z * z).sqrt();
    let w = Complex::new(std::f64::consts::FRAC_PI_2, 0.0) + i * (i * z + root).ln();
    // real inputs in [-1, 1] must give a real angle; drop rounding noise
    if z.im == 0.0 && z.re.abs() <= 1.0 {
        return Complex::new(w.re.clamp(0.0, std::f64::consts::PI), 0.0);
    }
    w
}

/// Largest of `|Δre|`, `|Δim|`.
pub fn scalar_abs_diff<T: Real>(a: &CScalar<T>, b: &CScalar<T>) -> T {
    let d = a - b;
    T::max_of(d.re.abs(), d.im.abs())
}
