//! Monochromatic plane waves at a planar interface between two media.
//!
//! A wave is `(r, t) ↦ e^{−i(k⊙r − ωt)}·(E, H)` with a real wavevector `k`.
//! The interface normal points along the direction of propagation into the
//! second medium, so a valid incident/reflected/transmitted triple has
//! `k_i⊙n ≥ 0`, `k_r⊙n ≤ 0` and `k_t⊙n ≥ 0`.
//!
//! [`solve_interface`] builds the reflected and transmitted waves for a
//! TE-polarized incident wave (E parallel to the interface) from phase
//! matching and the Fresnel TE coefficients; [`verify_triple`] checks any
//! triple against the validity, norm and boundary-condition constraints and
//! the two laws (plane of incidence, reflection).

use std::f64::consts::PI;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::geometry::{ccross, cdot, cnorm};
use crate::rng::SeededRng;
use crate::scalar::{cx, modulus, C64};
use crate::vector::{cvector_add, cvector_smul, vector_to_cvector, CVector, RVector, Vector};

/// Impedance of free space in ohms.
pub const ETA0_VACUUM: f64 = 376.730_313_668;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Accepted deviation of a plane normal from unit length.
pub const UNIT_NORMAL_TOL: f64 = 1e-12;
/// Below this `‖k_tan‖ / ‖k‖` the incidence is treated as normal.
pub const NORMAL_INCIDENCE_TOL: f64 = 1e-12;

pub type Point = RVector<f64>;
pub type Time = f64;
/// `(E, H)` at one point and time.
pub type Fields = (CVector<f64>, CVector<f64>);

pub fn point(x: f64, y: f64, z: f64) -> Point {
    Vector::new(vec![x, y, z]).expect("nonempty")
}

fn c3(parts: [C64; 3]) -> CVector<f64> {
    Vector::new(parts.to_vec()).expect("nonempty")
}

fn dot3(a: &RVector<f64>, b: &RVector<f64>) -> f64 {
    let (a, b) = (a.as_slice(), b.as_slice());
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: &RVector<f64>, b: &RVector<f64>) -> RVector<f64> {
    let (a, b) = (a.as_slice(), b.as_slice());
    point(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
}

fn norm3(a: &RVector<f64>) -> f64 {
    dot3(a, a).sqrt()
}

fn axpy(s: f64, x: &RVector<f64>, y: &RVector<f64>) -> RVector<f64> {
    let (x, y) = (x.as_slice(), y.as_slice());
    point(s * x[0] + y[0], s * x[1] + y[1], s * x[2] + y[2])
}

fn scale3(s: f64, x: &RVector<f64>) -> RVector<f64> {
    let x = x.as_slice();
    point(s * x[0], s * x[1], s * x[2])
}

fn finite3(v: &RVector<f64>) -> bool {
    v.iter().all(|x| x.is_finite())
}

fn cfinite3(v: &CVector<f64>) -> bool {
    v.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

fn require_dim3<A>(what: &str, v: &Vector<A>) -> Result<()> {
    if v.dim() != 3 {
        return Err(Error::Dimension(format!("{what} must have dimension 3, got {}", v.dim())));
    }
    Ok(())
}

/// Largest component modulus.
fn sup_norm(v: &CVector<f64>) -> f64 {
    v.iter().map(modulus).fold(0.0, f64::max)
}

/// `max_i |a_i − b_i| / max(‖a‖∞, ‖b‖∞)`, zero when both sides vanish.
fn relative_gap(a: &CVector<f64>, b: &CVector<f64>) -> f64 {
    let scale = sup_norm(a).max(sup_norm(b));
    if scale == 0.0 {
        return 0.0;
    }
    let d = a
        .iter()
        .zip(b)
        .map(|(x, y)| modulus(&(x - y)))
        .fold(0.0, f64::max);
    d / scale
}

/// `|u·v| / (‖u‖‖v‖)`, zero when either vector vanishes.
fn orth_residual(u: &CVector<f64>, v: &CVector<f64>) -> f64 {
    let p = cnorm(u) * cnorm(v);
    if p == 0.0 {
        return 0.0;
    }
    modulus(&cdot(u, v).expect("equal dimensions")) / p
}

/// Anything that yields `(E, H)` at a point and time.
pub trait FieldSampler {
    fn sample(&self, r: &Point, t: Time) -> Fields;
}

impl<F: Fn(&Point, Time) -> Fields> FieldSampler for F {
    fn sample(&self, r: &Point, t: Time) -> Fields {
        self(r, t)
    }
}

/// Pointwise sum of fields.
pub struct Superposition<'a>(pub Vec<&'a dyn FieldSampler>);

impl FieldSampler for Superposition<'_> {
    fn sample(&self, r: &Point, t: Time) -> Fields {
        let zero = || c3([cx(0.0); 3]);
        self.0.iter().fold((zero(), zero()), |(e, h), f| {
            let (de, dh) = f.sample(r, t);
            (cvector_add(&e, &de).expect("dim 3"), cvector_add(&h, &dh).expect("dim 3"))
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWave {
    pub k: RVector<f64>,
    pub omega: f64,
    pub e: CVector<f64>,
    pub h: CVector<f64>,
}

impl PlaneWave {
    pub fn new(k: RVector<f64>, omega: f64, e: CVector<f64>, h: CVector<f64>) -> Result<Self> {
        require_dim3("wavevector", &k)?;
        require_dim3("E amplitude", &e)?;
        require_dim3("H amplitude", &h)?;
        Ok(PlaneWave { k, omega, e, h })
    }

    /// Wave whose H amplitude is `(n/η₀)·k̂ × E`.
    pub fn with_h_from_e(k: RVector<f64>, omega: f64, e: CVector<f64>, n: f64, eta0: f64) -> Result<Self> {
        require_dim3("wavevector", &k)?;
        require_dim3("E amplitude", &e)?;
        let h = h_from_e(&k, &e, n, eta0)?;
        Ok(PlaneWave { k, omega, e, h })
    }

    pub fn is_finite(&self) -> bool {
        finite3(&self.k) && self.omega.is_finite() && cfinite3(&self.e) && cfinite3(&self.h)
    }
}

impl FieldSampler for PlaneWave {
    fn sample(&self, r: &Point, t: Time) -> Fields {
        evaluate_plane_wave(self, r, t)
    }
}

/// `H = (n/η₀)·k̂ × E`.
pub fn h_from_e(k: &RVector<f64>, e: &CVector<f64>, n: f64, eta0: f64) -> Result<CVector<f64>> {
    let kn = norm3(k);
    if kn == 0.0 {
        return Err(Error::Usage("H completion needs a nonzero wavevector".into()));
    }
    let khat = vector_to_cvector(&scale3(1.0 / kn, k));
    Ok(cvector_smul(&cx(n / eta0), &ccross(&khat, e)?))
}

/// `(e^{−i(k⊙r − ωt)} E, e^{−i(k⊙r − ωt)} H)`.
pub fn evaluate_plane_wave(w: &PlaneWave, r: &Point, t: Time) -> Fields {
    let phase = Complex::new(0.0, -(dot3(&w.k, r) - w.omega * t)).exp();
    (cvector_smul(&phase, &w.e), cvector_smul(&phase, &w.h))
}

/// Worst `E ⊥ H` residual of a field over the samples.
pub fn emf_residual(f: &dyn FieldSampler, samples: &[(Point, Time)]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Usage("at least one sample point is required".into()));
    }
    let mut worst = 0.0f64;
    for (r, t) in samples {
        let (e, h) = f.sample(r, *t);
        require_dim3("sampled E", &e)?;
        require_dim3("sampled H", &h)?;
        worst = worst.max(orth_residual(&e, &h));
    }
    Ok(worst)
}

/// `E ⊥ H` within `tol` (relative to `‖E‖‖H‖`) at every sample.
pub fn is_valid_emf(f: &dyn FieldSampler, samples: &[(Point, Time)], tol: f64) -> Result<bool> {
    Ok(emf_residual(f, samples)? <= tol)
}

/// Largest of the relative residuals of `E ⊥ k`, `H ⊥ k` and `E ⊥ H`;
/// `None` when `ω ≤ 0`, `k = 0` or a value is not finite.
pub fn wave_residual(w: &PlaneWave) -> Option<f64> {
    if !w.is_finite() || !(w.omega > 0.0) || norm3(&w.k) == 0.0 {
        return None;
    }
    let k = vector_to_cvector(&w.k);
    Some(orth_residual(&w.e, &k).max(orth_residual(&w.h, &k)).max(orth_residual(&w.e, &w.h)))
}

pub fn is_valid_wave(w: &PlaneWave, tol: f64) -> bool {
    matches!(wave_residual(w), Some(r) if r <= tol)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plane {
    pub p0: Point,
    pub normal: RVector<f64>,
}

impl Plane {
    pub fn new(p0: Point, normal: RVector<f64>) -> Result<Self> {
        require_dim3("plane anchor", &p0)?;
        check_unit_normal(&normal)?;
        if !finite3(&p0) {
            return Err(Error::Usage("plane anchor must be finite".into()));
        }
        Ok(Plane { p0, normal })
    }
}

fn check_unit_normal(n: &RVector<f64>) -> Result<()> {
    require_dim3("normal", n)?;
    let len = norm3(n);
    if !len.is_finite() || (len - 1.0).abs() > UNIT_NORMAL_TOL {
        return Err(Error::Usage(format!("normal must have unit length, got {len}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Interface {
    pub n1: f64,
    pub n2: f64,
    pub plane: Plane,
}

impl Interface {
    pub fn new(n1: f64, n2: f64, plane: Plane) -> Result<Self> {
        for (name, n) in [("n1", n1), ("n2", n2)] {
            if !(n.is_finite() && n > 0.0) {
                return Err(Error::Usage(format!("{name} must be finite and > 0, got {n}")));
            }
        }
        Ok(Interface { n1, n2, plane })
    }

    pub fn normal(&self) -> &RVector<f64> {
        &self.plane.normal
    }
}

/// Relative residuals `(E, H)` of the tangential continuity conditions
/// `n × E₁ = n × E₂` and `n × H₁ = n × H₂` at `(p, t)`.
pub fn boundary_residual(
    f1: &dyn FieldSampler,
    f2: &dyn FieldSampler,
    n: &RVector<f64>,
    p: &Point,
    t: Time,
) -> Result<(f64, f64)> {
    check_unit_normal(n)?;
    let nc = vector_to_cvector(n);
    let (e1, h1) = f1.sample(p, t);
    let (e2, h2) = f2.sample(p, t);
    let e = relative_gap(&ccross(&nc, &e1)?, &ccross(&nc, &e2)?);
    let h = relative_gap(&ccross(&nc, &h1)?, &ccross(&nc, &h2)?);
    Ok((e, h))
}

/// Both tangential continuity conditions hold within `tol` (relative).
pub fn boundary_conditions(
    f1: &dyn FieldSampler,
    f2: &dyn FieldSampler,
    n: &RVector<f64>,
    p: &Point,
    t: Time,
    tol: f64,
) -> Result<bool> {
    let (e, h) = boundary_residual(f1, f2, n, p, t)?;
    Ok(e <= tol && h <= tol)
}

/// `‖v − (2(u⊙w)w − u)‖ / max(1, ‖u‖)`.
pub fn sym_residual(u: &RVector<f64>, v: &RVector<f64>, w: &RVector<f64>) -> Result<f64> {
    check_unit_normal(w)?;
    require_dim3("u", u)?;
    require_dim3("v", v)?;
    let mirror = axpy(2.0 * dot3(u, w), w, &scale3(-1.0, u));
    Ok(norm3(&axpy(-1.0, &mirror, v)) / norm3(u).max(1.0))
}

/// `v` is the mirror image `2(u⊙w)w − u` of `u` about the unit axis `w`.
pub fn are_sym_wrt(u: &RVector<f64>, v: &RVector<f64>, w: &RVector<f64>, tol: f64) -> Result<bool> {
    Ok(sym_residual(u, v, w)? <= tol)
}

/// Orthonormal right-handed `(x, y, z)` with `z = n` and `x` normal to the
/// plane of incidence: `x = normalize(k_tan × n)` where `k_tan` is the part
/// of `k` parallel to the interface, `y = z × x`. At normal incidence, `x` is
/// the first canonical axis `e_j` with `|n_j| < 0.9`, orthogonalized against
/// `n`.
pub fn incident_basis(w_i: &PlaneWave, iface: &Interface) -> Result<[RVector<f64>; 3]> {
    let n = iface.normal();
    let k = &w_i.k;
    let kn = norm3(k);
    if !(kn > 0.0) || !finite3(k) {
        return Err(Error::Usage("incident wavevector must be finite and nonzero".into()));
    }
    let k_tan = axpy(-dot3(k, n), n, k);
    let x = if norm3(&k_tan) > NORMAL_INCIDENCE_TOL * kn {
        cross3(&k_tan, n)
    } else {
        let j = n.iter().position(|c| c.abs() < 0.9).expect("a unit vector has a small component");
        let mut e = point(0.0, 0.0, 0.0).into_vec();
        e[j] = 1.0;
        let e = Vector::new(e).expect("nonempty");
        axpy(-dot3(&e, n), n, &e)
    };
    let x = scale3(1.0 / norm3(&x), &x);
    let y = cross3(n, &x);
    Ok([x, y, n.clone()])
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveTriple {
    pub incident: PlaneWave,
    pub reflected: PlaneWave,
    pub transmitted: PlaneWave,
    pub k0: f64,
    pub eta0: f64,
}

/// A solved interface with the Fresnel coefficients and angles (radians).
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub triple: WaveTriple,
    pub r: f64,
    pub t: f64,
    pub theta_i: f64,
    pub theta_r: f64,
    pub theta_t: f64,
}

/// Angle between a wavevector and the normal axis, in `[0, π/2]`.
fn axis_angle(k: &RVector<f64>, n: &RVector<f64>) -> f64 {
    let kn = dot3(k, n);
    norm3(&axpy(-kn, n, k)).atan2(kn.abs())
}

/// Angles of incidence, reflection and transmission of a triple.
pub fn triple_angles(tr: &WaveTriple, iface: &Interface) -> (f64, f64, f64) {
    let n = iface.normal();
    (
        axis_angle(&tr.incident.k, n),
        axis_angle(&tr.reflected.k, n),
        axis_angle(&tr.transmitted.k, n),
    )
}

/// Reflected and transmitted waves for a TE-polarized incident wave.
///
/// `k_r = k_i − 2(k_i⊙n)n`; `k_t` keeps the tangential part of `k_i` and
/// takes the normal part `√((k₀n₂)² − ‖k_tan‖²)`. Amplitudes are
/// `r·E_i` and `t·E_i` with
/// `r = (n₁cosθᵢ − n₂cosθₜ)/(n₁cosθᵢ + n₂cosθₜ)`, `t = 2n₁cosθᵢ/(n₁cosθᵢ + n₂cosθₜ)`,
/// times the constant phase `e^{−i(k_i − k_x)⊙p₀}` that aligns the waves on a
/// plane not through the origin. H amplitudes of the two new waves are
/// `(n/η₀)·k̂ × E`. `tol` bounds the relative slack of the preconditions.
pub fn solve_interface(incident: &PlaneWave, iface: &Interface, k0: f64, eta0: f64, tol: f64) -> Result<Solution> {
    for (name, x) in [("k0", k0), ("eta0", eta0)] {
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::Usage(format!("{name} must be finite and > 0, got {x}")));
        }
    }
    match wave_residual(incident) {
        None => {
            return Err(Error::Usage(
                "incident wave needs omega > 0, a nonzero wavevector and finite values".into(),
            ))
        }
        Some(r) if r > tol => {
            return Err(Error::Usage(format!(
                "incident wave violates E ⊥ k, H ⊥ k or E ⊥ H (residual {r:e})"
            )))
        }
        Some(_) => {}
    }
    let n = iface.normal();
    let (n1, n2) = (iface.n1, iface.n2);
    let k = &incident.k;
    let kn = norm3(k);
    if (kn - k0 * n1).abs() > tol * k0 * n1 {
        return Err(Error::Usage(format!(
            "norm clause ‖k_i‖ = k0·n1 violated: ‖k_i‖ = {kn}, k0·n1 = {}",
            k0 * n1
        )));
    }
    let k_dot_n = dot3(k, n);
    if k_dot_n.abs() <= tol * kn {
        return Err(Error::DegenerateIncidence(
            "incident wavevector lies in the interface (k_i⊙n = 0)".into(),
        ));
    }
    if k_dot_n < 0.0 {
        return Err(Error::Usage(
            "k_i⊙n < 0: the normal must point along the incident direction into medium 2".into(),
        ));
    }
    let e_n = modulus(&cdot(&incident.e, &vector_to_cvector(n))?);
    if e_n > tol * cnorm(&incident.e) {
        return Err(Error::Unsupported(format!(
            "only TE polarization is solved; incident E has a normal component of {e_n:e}"
        )));
    }
    let k_tan = axpy(-k_dot_n, n, k);
    let kt_len = norm3(&k_tan);
    let k2 = k0 * n2;
    if kt_len > k2 {
        return Err(Error::Unsupported(format!(
            "total internal reflection: (n1/n2)·sin θi = {} > 1",
            kt_len / k2
        )));
    }
    let kt_normal = ((k2 - kt_len) * (k2 + kt_len)).sqrt();
    let k_r = axpy(-2.0 * k_dot_n, n, k);
    let k_t = axpy(kt_normal, n, &k_tan);

    let cos_i = k_dot_n / kn;
    let cos_t = kt_normal / k2;
    let denom = n1 * cos_i + n2 * cos_t;
    let r = (n1 * cos_i - n2 * cos_t) / denom;
    let t = 2.0 * n1 * cos_i / denom;

    let p0 = &iface.plane.p0;
    let aligned = |coeff: f64, kx: &RVector<f64>| -> CVector<f64> {
        let shift = dot3(&axpy(-1.0, kx, k), p0);
        let phase = Complex::new(0.0, -shift).exp() * coeff;
        cvector_smul(&phase, &incident.e)
    };
    let reflected = PlaneWave::with_h_from_e(k_r.clone(), incident.omega, aligned(r, &k_r), n1, eta0)?;
    let transmitted = PlaneWave::with_h_from_e(k_t.clone(), incident.omega, aligned(t, &k_t), n2, eta0)?;
    let triple = WaveTriple {
        incident: incident.clone(),
        reflected,
        transmitted,
        k0,
        eta0,
    };
    let (theta_i, theta_r, theta_t) = triple_angles(&triple, iface);
    Ok(Solution {
        triple,
        r,
        t,
        theta_i,
        theta_r,
        theta_t,
    })
}

/// Mirror residual of `k_r` against `−k_i` about the interface normal.
pub fn reflection_residual(tr: &WaveTriple, iface: &Interface) -> Result<f64> {
    sym_residual(&scale3(-1.0, &tr.incident.k), &tr.reflected.k, iface.normal())
}

/// `are_sym_wrt(−k_i, k_r, n)`, i.e. `θᵢ = θᵣ` with `k_r` in the plane of incidence.
pub fn check_law_of_reflection(tr: &WaveTriple, iface: &Interface, tol: f64) -> Result<bool> {
    Ok(reflection_residual(tr, iface)? <= tol)
}

/// `max |k⊙x| / ‖k‖` over the three wavevectors, with `x` from
/// [`incident_basis`].
pub fn plane_of_incidence_residual(tr: &WaveTriple, iface: &Interface) -> Result<f64> {
    let [x, _, _] = incident_basis(&tr.incident, iface)?;
    let (a, b, c) = map_triple(
        |w: &PlaneWave| {
            let len = norm3(&w.k);
            if len == 0.0 {
                0.0
            } else {
                dot3(&w.k, &x).abs() / len
            }
        },
        (&tr.incident, &tr.reflected, &tr.transmitted),
    );
    Ok(a.max(b).max(c))
}

/// All three wavevectors lie in the plane of incidence.
pub fn check_plane_of_incidence(tr: &WaveTriple, iface: &Interface, tol: f64) -> Result<bool> {
    Ok(plane_of_incidence_residual(tr, iface)? <= tol)
}

pub fn map_triple<A, B>(f: impl Fn(A) -> B, (a, b, c): (A, A, A)) -> (B, B, B) {
    (f(a), f(b), f(c))
}

/// Sample points on the interface plane and sample times: `p = p₀ + α·y + β·x`
/// with `α, β` uniform within ten incident wavelengths and `t` uniform over
/// ten periods. Drawn from `SeededRng::new(seed)` in the order α, β per point,
/// then the times.
pub fn plane_samples(
    incident: &PlaneWave,
    iface: &Interface,
    points: usize,
    times: usize,
    seed: u64,
) -> Result<(Vec<Point>, Vec<Time>)> {
    let [x, y, _] = incident_basis(incident, iface)?;
    if !(incident.omega > 0.0) {
        return Err(Error::Usage("sampling times needs omega > 0".into()));
    }
    let span = 10.0 * 2.0 * PI / norm3(&incident.k);
    let period = 2.0 * PI / incident.omega;
    let mut rng = SeededRng::new(seed);
    let pts = (0..points)
        .map(|_| {
            let a = rng.uniform(-span, span);
            let b = rng.uniform(-span, span);
            axpy(b, &x, &axpy(a, &y, &iface.plane.p0))
        })
        .collect();
    let ts = (0..times).map(|_| rng.uniform(0.0, 10.0 * period)).collect();
    Ok((pts, ts))
}

/// Worst `(E, H)` boundary residuals of incident + reflected against
/// transmitted over every point/time pair.
pub fn triple_boundary_residual(tr: &WaveTriple, iface: &Interface, points: &[Point], times: &[Time]) -> Result<(f64, f64)> {
    let upper = Superposition(vec![&tr.incident, &tr.reflected]);
    let mut worst = (0.0f64, 0.0f64);
    for p in points {
        for &t in times {
            let (e, h) = boundary_residual(&upper, &tr.transmitted, iface.normal(), p, t)?;
            worst = (worst.0.max(e), worst.1.max(h));
        }
    }
    Ok(worst)
}

/// One named verification result. `residual` is `None` for checks that are
/// plain predicates or when the quantity is undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub residual: Option<f64>,
    pub tolerance: f64,
}

impl Check {
    fn measured(name: &'static str, residual: Option<f64>, tolerance: f64) -> Self {
        let pass = matches!(residual, Some(r) if r <= tolerance);
        Check { name, pass, residual, tolerance }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub tol_geom: f64,
    pub tol_bc: f64,
    pub points: usize,
    pub times: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tol_geom: 1e-9,
            tol_bc: 1e-9,
            points: 10,
            times: 5,
            seed: 0,
        }
    }
}

pub const CHECK_VALID_EMF: &str = "valid_emf";
pub const CHECK_VALID_WAVES: &str = "valid_waves";
pub const CHECK_NORMS: &str = "norms";
pub const CHECK_BOUNDARY: &str = "boundary_conditions";
pub const CHECK_REFLECTION: &str = "law_of_reflection";
pub const CHECK_PLANE_OF_INCIDENCE: &str = "plane_of_incidence";
pub const CHECK_SIGNS: &str = "wavevector_signs";
pub const CHECK_NONZERO: &str = "nonzero_amplitudes";
pub const CHECK_ENERGY: &str = "energy";

fn rel_err(actual: f64, want: f64) -> f64 {
    if want == 0.0 {
        actual.abs()
    } else {
        (actual - want).abs() / want.abs()
    }
}

/// Checks a triple against every interface constraint and both laws.
///
/// - `valid_emf`: `E ⊥ H` of each wave at the samples
/// - `valid_waves`: `ω > 0`, `k ≠ 0`, `E ⊥ k`, `H ⊥ k`, `E ⊥ H` for each wave
/// - `norms`: `‖k_i‖ = ‖k_r‖ = k₀n₁`, `‖k_t‖ = k₀n₂`, `‖H‖ = ‖E‖·n/η₀` (relative)
/// - `boundary_conditions`: tangential continuity at the samples (`tol_bc`)
/// - `law_of_reflection`, `plane_of_incidence`: the two laws
/// - `wavevector_signs`: `k_i⊙n ≥ 0`, `k_r⊙n ≤ 0`, `k_t⊙n ≥ 0` (slack relative to `‖k‖`)
/// - `nonzero_amplitudes`: `E_i ≠ 0` and `E_r ≠ 0`
/// - `energy`: `|r|² + (n₂cosθₜ / n₁cosθᵢ)|t|² = 1` from amplitude ratios
pub fn verify_triple(tr: &WaveTriple, iface: &Interface, opts: &VerifyOptions) -> Result<Vec<Check>> {
    let waves = [&tr.incident, &tr.reflected, &tr.transmitted];
    if waves.iter().any(|w| !w.is_finite()) || !tr.k0.is_finite() || !tr.eta0.is_finite() {
        return Err(Error::Usage("triple contains non-finite values".into()));
    }
    let (tg, tb) = (opts.tol_geom, opts.tol_bc);
    let (points, times) = plane_samples(&tr.incident, iface, opts.points, opts.times, opts.seed)?;
    let samples: Vec<(Point, Time)> = points
        .iter()
        .flat_map(|p| times.iter().map(move |&t| (p.clone(), t)))
        .collect();

    let mut checks = Vec::new();

    let emf = waves
        .iter()
        .map(|w| emf_residual(*w, &samples))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    checks.push(Check::measured(CHECK_VALID_EMF, Some(emf), tg));

    let wave = waves
        .iter()
        .map(|w| wave_residual(w))
        .try_fold(0.0f64, |acc, r| r.map(|r| acc.max(r)));
    checks.push(Check::measured(CHECK_VALID_WAVES, wave, tg));

    let (n1, n2) = (iface.n1, iface.n2);
    let media = [n1, n1, n2];
    let mut norms = 0.0f64;
    for (w, nm) in waves.iter().zip(media) {
        norms = norms.max(rel_err(norm3(&w.k), tr.k0 * nm));
        norms = norms.max(rel_err(cnorm(&w.h), cnorm(&w.e) * nm / tr.eta0));
    }
    checks.push(Check::measured(CHECK_NORMS, Some(norms), tg));

    let (be, bh) = triple_boundary_residual(tr, iface, &points, &times)?;
    checks.push(Check::measured(CHECK_BOUNDARY, Some(be.max(bh)), tb));

    checks.push(Check::measured(CHECK_REFLECTION, Some(reflection_residual(tr, iface)?), tg));
    checks.push(Check::measured(
        CHECK_PLANE_OF_INCIDENCE,
        Some(plane_of_incidence_residual(tr, iface)?),
        tg,
    ));

    let n = iface.normal();
    let signed = |w: &PlaneWave, sign: f64| {
        let len = norm3(&w.k);
        if len == 0.0 {
            0.0
        } else {
            (-sign * dot3(&w.k, n) / len).max(0.0)
        }
    };
    let signs = signed(&tr.incident, 1.0)
        .max(signed(&tr.reflected, -1.0))
        .max(signed(&tr.transmitted, 1.0));
    checks.push(Check::measured(CHECK_SIGNS, Some(signs), tg));

    let (ei, er, et) = map_triple(|w: &PlaneWave| cnorm(&w.e), (waves[0], waves[1], waves[2]));
    checks.push(Check {
        name: CHECK_NONZERO,
        pass: ei > 0.0 && er > 0.0,
        residual: None,
        tolerance: 0.0,
    });

    let (cos_i, cos_t) = (
        dot3(&tr.incident.k, n).abs() / norm3(&tr.incident.k),
        dot3(&tr.transmitted.k, n).abs() / norm3(&tr.transmitted.k),
    );
    let energy = (ei > 0.0 && cos_i > 0.0 && cos_t.is_finite()).then(|| {
        let (rr, tt) = ((er / ei).powi(2), (et / ei).powi(2));
        (rr + (n2 * cos_t) / (n1 * cos_i) * tt - 1.0).abs()
    });
    checks.push(Check::measured(CHECK_ENERGY, energy, tg));

    Ok(checks)
}

/// A randomized TE configuration with its scene constants.
#[derive(Debug, Clone, PartialEq)]
pub struct TeConfiguration {
    pub incident: PlaneWave,
    pub interface: Interface,
    pub k0: f64,
    pub eta0: f64,
}

/// Draws a valid TE configuration: `θᵢ ∈ [0°, 80°]`, `n₁, n₂ ∈ [1, 2.5]`
/// redrawn until there is no total internal reflection, a uniformly random
/// azimuth, `k₀ ∈ [1e6, 1e7]`, a random unit normal, an anchor within ten
/// wavelengths of the origin and a random complex amplitude along `x`.
pub fn random_te_configuration(rng: &mut SeededRng) -> TeConfiguration {
    let theta = rng.uniform(0.0, 80.0).to_radians();
    let (n1, n2) = loop {
        let n1 = rng.uniform(1.0, 2.5);
        let n2 = rng.uniform(1.0, 2.5);
        if n1 / n2 * theta.sin() <= 1.0 {
            break (n1, n2);
        }
    };
    let phi = rng.uniform(0.0, 2.0 * PI);
    let k0 = rng.uniform(1e6, 1e7);

    let polar = rng.uniform(-1.0, 1.0).acos();
    let az = rng.uniform(0.0, 2.0 * PI);
    let normal = point(polar.sin() * az.cos(), polar.sin() * az.sin(), polar.cos());
    let normal = scale3(1.0 / norm3(&normal), &normal);

    let lambda = 2.0 * PI / (k0 * n1);
    let p0 = point(
        rng.uniform(-10.0, 10.0) * lambda,
        rng.uniform(-10.0, 10.0) * lambda,
        rng.uniform(-10.0, 10.0) * lambda,
    );
    let plane = Plane::new(p0, normal.clone()).expect("unit normal");
    let interface = Interface::new(n1, n2, plane).expect("positive indices");

    // tangential frame (u, v) of the plane
    let seed_axis = if normal.as_slice()[0].abs() < 0.9 { point(1.0, 0.0, 0.0) } else { point(0.0, 1.0, 0.0) };
    let u = axpy(-dot3(&seed_axis, &normal), &normal, &seed_axis);
    let u = scale3(1.0 / norm3(&u), &u);
    let v = cross3(&normal, &u);
    let dir = axpy(
        theta.cos(),
        &normal,
        &axpy(theta.sin() * phi.sin(), &v, &scale3(theta.sin() * phi.cos(), &u)),
    );
    let k = scale3(k0 * n1 / norm3(&dir), &dir);

    let eta0 = ETA0_VACUUM;
    let omega = k0 * SPEED_OF_LIGHT;
    let probe = PlaneWave::new(k.clone(), omega, c3([cx(0.0); 3]), c3([cx(0.0); 3])).expect("dim 3");
    let [x, _, _] = incident_basis(&probe, &interface).expect("nonzero k");
    let amp = Complex::from_polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2.0 * PI));
    let e = cvector_smul(&amp, &vector_to_cvector(&x));
    let incident = PlaneWave::with_h_from_e(k, omega, e, n1, eta0).expect("nonzero k");
    TeConfiguration {
        incident,
        interface,
        k0,
        eta0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::cvector_max_abs_diff;

    use proptest::prelude::*;

    fn cv(parts: [(f64, f64); 3]) -> CVector<f64> {
        c3(parts.map(|(a, b)| Complex::new(a, b)))
    }

    fn z_interface(n1: f64, n2: f64) -> Interface {
        Interface::new(n1, n2, Plane::new(point(0.0, 0.0, 0.0), point(0.0, 0.0, 1.0)).unwrap()).unwrap()
    }

    /// Incident TE wave in the xz-plane at angle `theta` with E along y.
    fn te_wave(theta: f64, n1: f64, k0: f64) -> PlaneWave {
        let k = point(theta.sin(), 0.0, theta.cos());
        let k = scale3(k0 * n1, &k);
        PlaneWave::with_h_from_e(k, k0 * SPEED_OF_LIGHT, cv([(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)]), n1, ETA0_VACUUM).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let w = te_wave(0.3, 1.0, 2.0);
        let (e, h) = evaluate_plane_wave(&w, &point(0.0, 0.0, 0.0), 0.0);
        assert_eq!((e, h), (w.e.clone(), w.h.clone()));
        // k⊙r = 2π brings the phase back to 1
        let r = scale3(2.0 * PI / dot3(&w.k, &w.k), &w.k);
        let (e, _) = evaluate_plane_wave(&w, &r, 0.0);
        assert!(cvector_max_abs_diff(&e, &w.e).unwrap() <= 1e-14);
    }

    #[test]
    fn valid_emf_examples() {
        let w = te_wave(0.2, 1.3, 5.0);
        let samples = vec![(point(0.1, 0.2, 0.3), 0.5), (point(-1.0, 4.0, 2.0), 3.0)];
        assert!(is_valid_emf(&w, &samples, 1e-12).unwrap());
        let e1 = cv([(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        let e2 = cv([(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        let (a, b) = (e1.clone(), e2.clone());
        let same = move |_: &Point, _: Time| (a.clone(), a.clone());
        let basis = move |_: &Point, _: Time| (e1.clone(), b.clone());
        assert!(!is_valid_emf(&same, &samples, 1e-12).unwrap());
        assert!(is_valid_emf(&basis, &samples, 1e-12).unwrap());
        assert!(matches!(is_valid_emf(&basis, &[], 1e-12), Err(Error::Usage(_))));
    }

    #[test]
    fn valid_wave_examples() {
        let k0 = 3.0;
        let n = 1.5;
        let w = PlaneWave::new(
            point(0.0, 0.0, k0),
            1.0,
            cv([(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]),
            cv([(0.0, 0.0), (n / ETA0_VACUUM, 0.0), (0.0, 0.0)]),
        )
        .unwrap();
        assert!(is_valid_wave(&w, 1e-12));
        assert!(!is_valid_wave(&PlaneWave { omega: 0.0, ..w.clone() }, 1e-12));
        assert!(!is_valid_wave(&PlaneWave { k: point(0.0, 0.0, 0.0), ..w.clone() }, 1e-12));
        assert!(!is_valid_wave(&PlaneWave { e: cv([(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]), ..w }, 1e-12));
    }

    #[test]
    fn boundary_examples() {
        let n = point(0.0, 0.0, 1.0);
        let p = point(0.3, -0.2, 0.0);
        let w = te_wave(0.4, 1.0, 2.0);
        assert!(boundary_conditions(&w, &w, &n, &p, 0.7, 1e-12).unwrap());
        // differ only along n
        let shifted = PlaneWave { e: cvector_add(&w.e, &cv([(0.0, 0.0), (0.0, 0.0), (5.0, 2.0)])).unwrap(), ..w.clone() };
        assert!(boundary_conditions(&w, &shifted, &n, &p, 0.7, 1e-12).unwrap());
        // differ tangentially
        let bent = PlaneWave { e: cvector_add(&w.e, &cv([(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)])).unwrap(), ..w.clone() };
        assert!(!boundary_conditions(&w, &bent, &n, &p, 0.7, 1e-12).unwrap());
        assert!(matches!(boundary_conditions(&w, &w, &point(0.0, 0.0, 2.0), &p, 0.0, 1e-12), Err(Error::Usage(_))));
    }

    #[test]
    fn symmetry_examples() {
        let w = point(0.0, 0.0, 1.0);
        assert!(are_sym_wrt(&point(-1.0, 0.0, 1.0), &point(1.0, 0.0, 1.0), &w, 1e-15).unwrap());
        assert!(are_sym_wrt(&point(0.0, 0.0, 3.0), &point(0.0, 0.0, 3.0), &w, 1e-15).unwrap());
        assert!(are_sym_wrt(&point(2.0, -1.0, 0.0), &point(-2.0, 1.0, 0.0), &w, 1e-15).unwrap());
        assert!(!are_sym_wrt(&point(2.0, -1.0, 0.0), &point(2.0, -1.0, 0.0), &w, 1e-15).unwrap());
        assert!(matches!(are_sym_wrt(&w, &w, &point(1.0, 1.0, 0.0), 1e-9), Err(Error::Usage(_))));
    }

    #[test]
    fn incident_basis_examples() {
        let s = 0.5f64.sqrt();
        let w = PlaneWave::new(point(s, 0.0, -s), 1.0, c3([cx(0.0); 3]), c3([cx(0.0); 3])).unwrap();
        let [x, y, z] = incident_basis(&w, &z_interface(1.0, 1.0)).unwrap();
        assert!(norm3(&axpy(-1.0, &x, &point(0.0, -1.0, 0.0))) <= 1e-15);
        assert_eq!(z, point(0.0, 0.0, 1.0));
        for (a, b) in [(&x, &y), (&y, &z), (&x, &z)] {
            assert!(dot3(a, b).abs() <= 1e-15);
        }
        assert!(dot3(&w.k, &x).abs() <= 1e-15);
        // right-handed
        assert!(norm3(&axpy(-1.0, &cross3(&x, &y), &z)) <= 1e-15);
        // normal incidence falls back to a fixed tangential axis
        let nw = PlaneWave { k: point(0.0, 0.0, 2.0), ..w };
        let [x, _, _] = incident_basis(&nw, &z_interface(1.0, 1.0)).unwrap();
        assert_eq!(x, point(1.0, 0.0, 0.0));
    }

    #[test]
    fn fresnel_at_normal_incidence() {
        let iface = z_interface(1.0, 1.5);
        let sol = solve_interface(&te_wave(0.0, 1.0, 1e6), &iface, 1e6, ETA0_VACUUM, 1e-9).unwrap();
        assert!((sol.r + 0.2).abs() <= 1e-15);
        assert!((sol.t - 0.8).abs() <= 1e-15);
        assert_eq!(sol.theta_t, 0.0);
        let checks = verify_triple(&sol.triple, &iface, &VerifyOptions::default()).unwrap();
        assert!(checks.iter().all(|c| c.pass), "{checks:#?}");
        let energy = checks.iter().find(|c| c.name == CHECK_ENERGY).unwrap();
        assert!(energy.residual.unwrap() <= 1e-15);
    }

    #[test]
    fn snell_at_thirty_degrees() {
        let iface = z_interface(1.0, 1.5);
        let sol = solve_interface(&te_wave(30f64.to_radians(), 1.0, 2e6), &iface, 2e6, ETA0_VACUUM, 1e-9).unwrap();
        assert!((sol.theta_t.sin() - 1.0 / 3.0).abs() <= 1e-15);
        assert!((sol.theta_t - (1.0f64 / 3.0).asin()).abs() <= 1e-12);
        assert!((sol.theta_r - sol.theta_i).abs() <= 1e-15);
    }

    #[test]
    fn equal_media_pass_through() {
        let iface = z_interface(1.4, 1.4);
        let w = te_wave(0.5, 1.4, 1e6);
        let sol = solve_interface(&w, &iface, 1e6, ETA0_VACUUM, 1e-9).unwrap();
        assert_eq!(sol.r, 0.0);
        assert_eq!(sol.t, 1.0);
        assert!(norm3(&axpy(-1.0, &sol.triple.transmitted.k, &w.k)) <= 1e-9 * norm3(&w.k));
        let checks = verify_triple(&sol.triple, &iface, &VerifyOptions::default()).unwrap();
        for c in &checks {
            assert_eq!(c.pass, c.name != CHECK_NONZERO, "{c:?}");
        }
    }

    #[test]
    fn solver_rejections() {
        let k0 = 1e6;
        let glass_to_air = z_interface(1.5, 1.0);
        let steep = te_wave(60f64.to_radians(), 1.5, k0);
        assert!(matches!(solve_interface(&steep, &glass_to_air, k0, ETA0_VACUUM, 1e-9), Err(Error::Unsupported(_))));

        let iface = z_interface(1.0, 1.5);
        let mut tm = te_wave(0.3, 1.0, k0);
        // E in the plane of incidence, orthogonal to k
        tm.e = cv([(0.3f64.cos(), 0.0), (0.0, 0.0), (-(0.3f64.sin()), 0.0)]);
        tm.h = h_from_e(&tm.k, &tm.e, 1.0, ETA0_VACUUM).unwrap();
        assert!(matches!(solve_interface(&tm, &iface, k0, ETA0_VACUUM, 1e-9), Err(Error::Unsupported(_))));

        let grazing = te_wave(PI / 2.0, 1.0, k0);
        assert!(matches!(solve_interface(&grazing, &iface, k0, ETA0_VACUUM, 1e-9), Err(Error::DegenerateIncidence(_))));

        let w = te_wave(0.3, 1.0, k0);
        let err = solve_interface(&w, &iface, 2.0 * k0, ETA0_VACUUM, 1e-9).unwrap_err();
        assert!(matches!(&err, Error::Usage(m) if m.contains("k0·n1")));

        let backwards = PlaneWave { k: scale3(-1.0, &w.k), h: scale_c(-1.0, &w.h), ..w.clone() };
        assert!(matches!(solve_interface(&backwards, &iface, k0, ETA0_VACUUM, 1e-9), Err(Error::Usage(_))));
    }

    fn scale_c(s: f64, v: &CVector<f64>) -> CVector<f64> {
        cvector_smul(&cx(s), v)
    }

    #[test]
    fn checkers_reject_perturbed_triples() {
        let iface = z_interface(1.0, 1.5);
        let sol = solve_interface(&te_wave(0.4, 1.0, 1e6), &iface, 1e6, ETA0_VACUUM, 1e-9).unwrap();
        let tr = &sol.triple;
        assert!(check_law_of_reflection(tr, &iface, 1e-9).unwrap());
        assert!(check_plane_of_incidence(tr, &iface, 1e-9).unwrap());

        let mut bad = tr.clone();
        let kr = bad.reflected.k.as_slice().to_vec();
        bad.reflected.k = point(kr[0], kr[1], kr[2] * 1.1);
        assert!(!check_law_of_reflection(&bad, &iface, 1e-9).unwrap());

        // rotate k_t by 5° about the interface normal, out of the incidence plane
        let mut bad = tr.clone();
        let kt = bad.transmitted.k.as_slice().to_vec();
        let (s, c) = 5f64.to_radians().sin_cos();
        bad.transmitted.k = point(c * kt[0] - s * kt[1], s * kt[0] + c * kt[1], kt[2]);
        assert!(!check_plane_of_incidence(&bad, &iface, 1e-9).unwrap());
    }

    #[test]
    fn normal_incidence_reflection_is_reversal() {
        let iface = z_interface(1.0, 2.0);
        let sol = solve_interface(&te_wave(0.0, 1.0, 1e6), &iface, 1e6, ETA0_VACUUM, 1e-9).unwrap();
        assert_eq!(sol.triple.reflected.k, scale3(-1.0, &sol.triple.incident.k));
        assert!(check_law_of_reflection(&sol.triple, &iface, 1e-15).unwrap());
        assert!(check_plane_of_incidence(&sol.triple, &iface, 1e-15).unwrap());
    }

    #[test]
    fn map_triple_examples() {
        assert_eq!(map_triple(|x: i32| x, (1, 2, 3)), (1, 2, 3));
        assert_eq!(map_triple(|x: i32| x * x, (4, 4, 4)), (16, 16, 16));
        let iface = z_interface(1.0, 1.5);
        let sol = solve_interface(&te_wave(0.2, 1.0, 1e6), &iface, 1e6, ETA0_VACUUM, 1e-9).unwrap();
        let tr = &sol.triple;
        let (a, b, c) = map_triple(|w: &PlaneWave| norm3(&w.k), (&tr.incident, &tr.reflected, &tr.transmitted));
        assert!(rel_err(a, 1e6) <= 1e-15 && rel_err(b, 1e6) <= 1e-15 && rel_err(c, 1.5e6) <= 1e-15);
    }

    #[test]
    fn off_origin_plane_keeps_boundary_conditions() {
        let plane = Plane::new(point(1e-6, -2e-6, 3.3e-6), point(0.0, 0.0, 1.0)).unwrap();
        let iface = Interface::new(1.2, 1.9, plane).unwrap();
        let sol = solve_interface(&te_wave(0.7, 1.2, 4e6), &iface, 4e6, ETA0_VACUUM, 1e-9).unwrap();
        let checks = verify_triple(&sol.triple, &iface, &VerifyOptions::default()).unwrap();
        assert!(checks.iter().all(|c| c.pass), "{checks:#?}");
    }

    #[test]
    fn incident_amplitude_zero_fails_nonzero_clause() {
        let iface = z_interface(1.0, 1.5);
        let sol = solve_interface(&te_wave(0.3, 1.0, 1e6), &iface, 1e6, ETA0_VACUUM, 1e-9).unwrap();
        let mut tr = sol.triple;
        tr.incident.e = c3([cx(0.0); 3]);
        tr.incident.h = c3([cx(0.0); 3]);
        let checks = verify_triple(&tr, &iface, &VerifyOptions::default()).unwrap();
        let nz = checks.iter().find(|c| c.name == CHECK_NONZERO).unwrap();
        assert!(!nz.pass);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn solved_configurations_satisfy_every_constraint(seed in any::<u64>()) {
            let cfg = random_te_configuration(&mut SeededRng::new(seed));
            let sol = solve_interface(&cfg.incident, &cfg.interface, cfg.k0, cfg.eta0, 1e-9).unwrap();
            let opts = VerifyOptions { seed, ..VerifyOptions::default() };
            let checks = verify_triple(&sol.triple, &cfg.interface, &opts).unwrap();
            for c in &checks {
                prop_assert!(c.pass, "{:?}", c);
            }
            prop_assert!((sol.theta_i - sol.theta_r).abs() <= 1e-9);
            let norms = checks.iter().find(|c| c.name == CHECK_NORMS).unwrap();
            prop_assert!(norms.residual.unwrap() <= 1e-12);
        }

        #[test]
        fn phase_is_unimodular(seed in any::<u64>(), x in -1e-5f64..1e-5, y in -1e-5f64..1e-5, t in 0.0f64..1e-13) {
            let cfg = random_te_configuration(&mut SeededRng::new(seed));
            let w = &cfg.incident;
            let (e, h) = evaluate_plane_wave(w, &point(x, y, -x), t);
            for (a, b) in e.iter().zip(&w.e).chain(h.iter().zip(&w.h)) {
                prop_assert!((modulus(a) - modulus(b)).abs() <= 1e-12 * modulus(b).max(1e-300));
            }
        }

        #[test]
        fn mirror_is_an_involution(u in proptest::array::uniform3(-10.0f64..10.0), polar in 0.0f64..PI, az in 0.0f64..(2.0 * PI)) {
            let w = point(polar.sin() * az.cos(), polar.sin() * az.sin(), polar.cos());
            let w = scale3(1.0 / norm3(&w), &w);
            let u = point(u[0], u[1], u[2]);
            let v = axpy(2.0 * dot3(&u, &w), &w, &scale3(-1.0, &u));
            prop_assert!(are_sym_wrt(&u, &v, &w, 1e-12).unwrap());
            prop_assert!(are_sym_wrt(&v, &u, &w, 1e-12).unwrap());
        }
    }
}
