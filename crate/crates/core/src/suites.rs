//! Randomized property suites, runnable from the CLI and the acceptance
//! target alike.
//!
//! Trial `t` of a suite run with seed `s` draws every operand from
//! `SeededRng::for_trial(s, t)`, so a failing trial is reproduced from the
//! printed `(seed, trial)` pair. Exact properties run on the rational backend
//! and pass only on equality; floating properties carry a tolerance.
//!
//! | suite | contents |
//! |-------|----------|
//! | `table1` | flatten/unflatten bijection and operator transport |
//! | `table2` | vector-space axioms |
//! | `table3` | cross product |
//! | `table4` | inner product |
//! | `table5` | norms, Cauchy–Schwarz, triangle, Pythagoras, angle |
//! | `table6` | matrix algebra against a triple-loop oracle |
//! | `table7` | vector series and the linearity checker |
//! | `interface` | plane-wave interface solver against both laws and the boundary conditions |

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{
    cdot, ccross, cnorm, cnorm2, collinear_cvectors, collinear_cvectors_tol, collinearity_residual,
    cvector_angle,
};
use crate::matrix::{cmatrix_add, cmatrix_cnj, cmatrix_cvector_mul, cmatrix_mul, CMatrix};
use crate::optics::{
    plane_of_incidence_residual, plane_samples, random_te_configuration, reflection_residual,
    solve_interface, triple_boundary_residual, verify_triple, Check, VerifyOptions, CHECK_ENERGY,
    CHECK_NORMS, CHECK_SIGNS, CHECK_VALID_WAVES,
};
use crate::rng::SeededRng;
use crate::scalar::{ccos, cnj, cx, modulus, CScalar, Exact, Real};
use crate::series::{
    check_clinear, cinfsum, cinfsum_componentwise, csummable, real_infsum, IndexSet, LinearityLaw,
    VectorSequence,
};
use crate::vector::{
    cvector_add, cvector_cnj, cvector_im, cvector_max_abs_diff, cvector_neg, cvector_re,
    cvector_smul, cvector_sub, cvector_zero, flatten, is_cvector_zero, unflatten, vector_map,
    vector_map2, CVector, RVector, Vector,
};

/// Suite names accepted by [`run_suite`], in `all` order.
pub const SUITES: [&str; 8] = [
    "table1", "table2", "table3", "table4", "table5", "table6", "table7", "interface",
];

const ALIASES: [(&str, &str); 7] = [
    ("flatten", "table1"),
    ("vector-space", "table2"),
    ("cross", "table3"),
    ("inner-product", "table4"),
    ("norms", "table5"),
    ("matrix", "table6"),
    ("series", "table7"),
];

/// Canonical suite name for a name or alias.
pub fn resolve_suite(name: &str) -> Option<&'static str> {
    SUITES
        .iter()
        .copied()
        .find(|s| *s == name)
        .or_else(|| ALIASES.iter().find(|(a, _)| *a == name).map(|(_, s)| *s))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub trials: u64,
    /// Vector dimensions drawn per trial (suites with fixed shapes ignore it).
    pub dims: RangeInclusive<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            trials: 1000,
            dims: 1..=8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub trial: u64,
    /// Seed of the trial generator, `seed + trial`.
    pub trial_seed: u64,
    pub residual: f64,
    pub operands: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub checked: u64,
    pub failures: u64,
    pub worst_residual: f64,
    /// Zero for exact properties.
    pub tolerance: f64,
    pub first_failure: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub seed: u64,
    pub trials: u64,
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.failures == 0 && p.checked > 0)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }

    /// Human-readable summary, one line per property plus counterexamples.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {} (seed {}, {} trials)", self.suite, self.seed, self.trials);
        for p in &self.properties {
            let status = if p.failures == 0 && p.checked > 0 { "ok  " } else { "FAIL" };
            let _ = writeln!(
                out,
                "  {status} {:<31} {:>6}/{:<6} worst residual {:.3e} (tol {:.0e})",
                p.name,
                p.checked - p.failures,
                p.checked,
                p.worst_residual,
                p.tolerance
            );
            if let Some(c) = &p.first_failure {
                let _ = writeln!(
                    out,
                    "       counterexample: seed {} trial {} (trial seed {}), residual {:e}",
                    self.seed, c.trial, c.trial_seed, c.residual
                );
                for (name, value) in &c.operands {
                    let _ = writeln!(out, "         {name} = {value}");
                }
            }
        }
        out
    }
}

type Operands = Vec<(String, String)>;

struct Recorder {
    seed: u64,
    props: Vec<PropertyResult>,
}

impl Recorder {
    fn new(seed: u64, specs: &[(&'static str, f64)]) -> Self {
        let props = specs
            .iter()
            .map(|&(name, tolerance)| PropertyResult {
                name,
                checked: 0,
                failures: 0,
                worst_residual: 0.0,
                tolerance,
                first_failure: None,
            })
            .collect();
        Recorder { seed, props }
    }

    fn record(&mut self, name: &str, trial: u64, pass: bool, residual: f64, operands: impl FnOnce() -> Operands) {
        let seed = self.seed;
        let p = self
            .props
            .iter_mut()
            .find(|p| p.name == name)
            .unwrap_or_else(|| panic!("unregistered property {name}"));
        p.checked += 1;
        if residual.is_nan() {
            p.worst_residual = f64::NAN;
        } else if !p.worst_residual.is_nan() {
            p.worst_residual = p.worst_residual.max(residual);
        }
        if !pass {
            p.failures += 1;
            if p.first_failure.is_none() {
                p.first_failure = Some(Counterexample {
                    trial,
                    trial_seed: seed.wrapping_add(trial),
                    residual,
                    operands: operands(),
                });
            }
        }
    }

    /// Floating property: passes when `residual <= tolerance`.
    fn within(&mut self, name: &str, trial: u64, residual: f64, operands: impl FnOnce() -> Operands) {
        let tol = self.props.iter().find(|p| p.name == name).map(|p| p.tolerance).unwrap_or(0.0);
        self.record(name, trial, residual <= tol, residual, operands);
    }

    /// Exact vector property: passes on equality.
    fn same<T: Real>(&mut self, name: &str, trial: u64, a: &CVector<T>, b: &CVector<T>, operands: impl FnOnce() -> Operands) {
        let residual = cvector_max_abs_diff(a, b).map(|d| d.to_f64_lossy()).unwrap_or(f64::NAN);
        self.record(name, trial, a == b, residual, operands);
    }

    fn finish(self, suite: &'static str, trials: u64) -> SuiteReport {
        SuiteReport {
            suite,
            seed: self.seed,
            trials,
            properties: self.props,
        }
    }
}

fn show_c<T: Real>(z: &CScalar<T>) -> String {
    format!("[{}, {}]", z.re, z.im)
}

fn show<T: Real>(v: &CVector<T>) -> String {
    let parts: Vec<String> = v.iter().map(show_c).collect();
    format!("[{}]", parts.join(", "))
}

fn show_r<T: Real>(v: &RVector<T>) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn show_m<T: Real>(m: &CMatrix<T>) -> String {
    let rows: Vec<String> = (1..=m.rows()).map(|i| show(m.row(i).expect("in range"))).collect();
    format!("[{}]", rows.join(", "))
}

fn op(name: &str, value: String) -> (String, String) {
    (name.to_string(), value)
}

fn dim_of(rng: &mut SeededRng, dims: &RangeInclusive<usize>) -> usize {
    rng.usize_in(*dims.start(), *dims.end())
}

fn random_cmatrix(rng: &mut SeededRng, rows: usize, cols: usize) -> CMatrix<Exact> {
    CMatrix::from_fn(rows, cols, |_, _| rng.cexact()).expect("positive shape")
}

/// Runs one suite (`"all"` is handled by the caller via [`SUITES`]).
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let suite = resolve_suite(name).ok_or_else(|| {
        Error::Usage(format!("unknown suite {name:?}; expected one of {} or all", SUITES.join(", ")))
    })?;
    if opts.trials == 0 {
        return Err(Error::Usage("trials must be >= 1".into()));
    }
    if *opts.dims.start() == 0 || opts.dims.start() > opts.dims.end() {
        return Err(Error::Usage(format!(
            "dims must be a nonempty range of positive integers, got {}..{}",
            opts.dims.start(),
            opts.dims.end()
        )));
    }
    let report = match suite {
        "table1" => table1(opts),
        "table2" => table2(opts),
        "table3" => table3(opts),
        "table4" => table4(opts),
        "table5" => table5(opts),
        "table6" => table6(opts),
        "table7" => table7(opts),
        "interface" => interface(opts),
        _ => unreachable!("resolved suite names are exhaustive"),
    }?;
    Ok(report)
}

fn table1(o: &SuiteOptions) -> Result<SuiteReport> {
    let mut rec = Recorder::new(
        o.seed,
        &[
            ("unflatten_flatten", 0.0),
            ("flatten_unflatten", 0.0),
            ("flatten_map_neg", 0.0),
            ("flatten_map_cnj", 0.0),
            ("flatten_map2_add", 0.0),
            ("map2_component", 0.0),
        ],
    );
    for t in 0..o.trials {
        let mut rng = SeededRng::for_trial(o.seed, t);
        let n = dim_of(&mut rng, &o.dims);
        let u = rng.cvector_exact(n);
        let v = rng.cvector_exact(n);
        let r: RVector<Exact> = Vector::from_fn(2 * n, |_| rng.rational())?;
        let which = rng.usize_in(0, 2);

        rec.same("unflatten_flatten", t, &unflatten(&flatten(&u))?, &u, || vec![op("v", show(&u))]);
        let back = flatten(&unflatten(&r)?);
        let (a, b) = (unflatten(&back)?, unflatten(&r)?);
        rec.record("flatten_unflatten", t, back == r, cvector_max_abs_diff(&a, &b)?.to_f64_lossy(), || {
            vec![op("r", show_r(&r))]
        });

        let neg_real = vector_map(|x: &Exact| -x.clone(), &flatten(&u));
        rec.same("flatten_map_neg", t, &unflatten(&flatten(&cvector_neg(&u)))?, &unflatten(&neg_real)?, || {
            vec![op("v", show(&u))]
        });
        // conjugation flattens to negation of the imaginary half
        let fl = flatten(&u);
        let cnj_real = Vector::from_fn(2 * n, |i| {
            let x = fl.as_slice()[i - 1].clone();
            if i > n {
                -x
            } else {
                x
            }
        })?;
        rec.same("flatten_map_cnj", t, &unflatten(&flatten(&cvector_cnj(&u)))?, &unflatten(&cnj_real)?, || {
            vec![op("v", show(&u))]
        });
        let sum_real = vector_map2(|a: &Exact, b: &Exact| a + b, &flatten(&u), &flatten(&v))?;
        rec.same(
            "flatten_map2_add",
            t,
            &unflatten(&flatten(&cvector_add(&u, &v)?))?,
            &unflatten(&sum_real)?,
            || vec![op("u", show(&u)), op("v", show(&v))],
        );

        let f = |a: &CScalar<Exact>, b: &CScalar<Exact>| match which {
            0 => a + b,
            1 => a * b,
            _ => a - b,
        };
        let w = vector_map2(f, &u, &v)?;
        let direct = Vector::from_fn(n, |i| f(u.component(i).expect("in range"), v.component(i).expect("in range")))?;
        rec.same("map2_component", t, &w, &direct, || {
            vec![op("f", ["add", "mul", "sub"][which].to_string()), op("u", show(&u)), op("v", show(&v))]
        });
    }
    Ok(rec.finish("table1", o.trials))
}

fn table2(o: &SuiteOptions) -> Result<SuiteReport> {
    let mut rec = Recorder::new(
        o.seed,
        &[
            ("add_assoc", 0.0),
            ("add_comm", 0.0),
            ("add_unit", 0.0),
            ("add_inverse", 0.0),
            ("vector_distrib", 0.0),
            ("scalar_distrib", 0.0),
            ("mul_assoc", 0.0),
            ("scalar_unit", 0.0),
        ],
    );
    for t in 0..o.trials {
        let mut rng = SeededRng::for_trial(o.seed, t);
        let n = dim_of(&mut rng, &o.dims);
        let u = rng.cvector_exact(n);
        let v = rng.cvector_exact(n);
        let w = rng.cvector_exact(n);
        let a = rng.cexact();
        let b = rng.cexact();
        let zero = cvector_zero::<Exact>(n)?;
        let uvw = || vec![op("u", show(&u)), op("v", show(&v)), op("w", show(&w))];
        let uab = || vec![op("u", show(&u)), op("a", show_c(&a)), op("b", show_c(&b))];

        rec.same(
            "add_assoc",
            t,
            &cvector_add(&cvector_add(&u, &v)?, &w)?,
            &cvector_add(&u, &cvector_add(&v, &w)?)?,
            uvw,
        );
        rec.same("add_comm", t, &cvector_add(&u, &v)?, &cvector_add(&v, &u)?, uvw);
        rec.same("add_unit", t, &cvector_add(&zero, &u)?, &u, uvw);
        rec.same("add_inverse", t, &cvector_add(&cvector_neg(&u), &u)?, &zero, uvw);
        rec.same(
            "vector_distrib",
            t,
            &cvector_smul(&a, &cvector_add(&u, &v)?),
            &cvector_add(&cvector_smul(&a, &u), &cvector_smul(&a, &v))?,
            || vec![op("a", show_c(&a)), op("u", show(&u)), op("v", show(&v))],
        );
        rec.same(
            "scalar_distrib",
            t,
            &cvector_smul(&(&a + &b), &u),
            &cvector_add(&cvector_smul(&a, &u), &cvector_smul(&b, &u))?,
            uab,
        );
        rec.same(
            "mul_assoc",
            t,
            &cvector_smul(&a, &cvector_smul(&b, &u)),
            &cvector_smul(&(&a * &b), &u),
            uab,
        );
        rec.same("scalar_unit", t, &cvector_smul(&cx(Exact::one()), &u), &u, uab);
    }
    Ok(rec.finish("table2", o.trials))
}

fn table3(o: &SuiteOptions) -> Result<SuiteReport> {
    let mut rec = Recorder::new(
        o.seed,
        &[
            ("cross_left_zero", 0.0),
            ("cross_right_zero", 0.0),
            ("cross_irreflexive", 0.0),
            ("cross_antisymmetric", 0.0),
            ("cross_left_distrib_add", 0.0),
            ("cross_right_distrib_add", 0.0),
            ("cross_left_smul", 0.0),
            ("cross_right_smul", 0.0),
            ("cross_zero_iff_collinear", 0.0),
        ],
    );
    let zero = cvector_zero::<Exact>(3)?;
    for t in 0..o.trials {
        let mut rng = SeededRng::for_trial(o.seed, t);
        let u = rng.cvector_exact(3);
        let v = rng.cvector_exact(3);
        let w = rng.cvector_exact(3);
        let a = rng.cexact();
        let uvw = || vec![op("u", show(&u)), op("v", show(&v)), op("w", show(&w)), op("a", show_c(&a))];

        rec.same("cross_left_zero", t, &ccross(&zero, &u)?, &zero, uvw);
        rec.same("cross_right_zero", t, &ccross(&u, &zero)?, &zero, uvw);
        rec.same("cross_irreflexive", t, &ccross(&u, &u)?, &zero, uvw);
        rec.same("cross_antisymmetric", t, &cvector_neg(&ccross(&u, &v)?), &ccross(&v, &u)?, uvw);
        rec.same(
            "cross_left_distrib_add",
            t,
            &ccross(&cvector_add(&u, &v)?, &w)?,
            &cvector_add(&ccross(&u, &w)?, &ccross(&v, &w)?)?,
            uvw,
        );
        rec.same(
            "cross_right_distrib_add",
            t,
            &ccross(&u, &cvector_add(&v, &w)?)?,
            &cvector_add(&ccross(&u, &v)?, &ccross(&u, &w)?)?,
            uvw,
        );
        rec.same(
            "cross_left_smul",
            t,
            &ccross(&cvector_smul(&a, &u), &v)?,
            &cvector_smul(&a, &ccross(&u, &v)?),
            uvw,
        );
        rec.same(
            "cross_right_smul",
            t,
            &ccross(&u, &cvector_smul(&a, &v))?,
            &cvector_smul(&a, &ccross(&u, &v)?),
            uvw,
        );

        // a constructed multiple (zero cross product) and a random pair
        let m = cvector_smul(&a, &u);
        let mult_ok = ccross(&u, &m)? == zero && collinear_cvectors(&u, &m)?;
        let rand_ok = (ccross(&u, &v)? == zero) == collinear_cvectors(&u, &v)?;
        rec.record("cross_zero_iff_collinear", t, mult_ok && rand_ok, if mult_ok && rand_ok { 0.0 } else { 1.0 }, uvw);
    }
    Ok(rec.finish("table3", o.trials))
}

fn table4(o: &SuiteOptions) -> Result<SuiteReport> {
    let mut rec = Recorder::new(
        o.seed,
        &[
            ("conjugate_symmetry", 0.0),
            ("smul_linearity", 0.0),
            ("add_linearity", 0.0),
            ("zero_length_iff_zero", 0.0),
            ("self_dot_im_zero", 0.0),
            ("self_dot_re_nonneg", 0.0),
        ],
    );
    for t in 0..o.trials {
        let mut rng = SeededRng::for_trial(o.seed, t);
        let n = dim_of(&mut rng, &o.dims);
        let x = rng.cvector_exact(n);
        let y = rng.cvector_exact(n);
        let z = rng.cvector_exact(n);
        let c = rng.cexact();
        let ops = || vec![op("x", show(&x)), op("y", show(&y)), op("z", show(&z)), op("c", show_c(&c))];
        let s = |a: CScalar<Exact>| Vector::new(vec![a]).expect("nonempty");

        rec.same("conjugate_symmetry", t, &s(cdot(&x, &y)?), &s(cnj(&cdot(&y, &x)?)), ops);
        rec.same("smul_linearity", t, &s(cdot(&cvector_smul(&c, &x), &y)?), &s(&c * cdot(&x, &y)?), ops);
        rec.same(
            "add_linearity",
            t,
            &s(cdot(&cvector_add(&x, &y)?, &z)?),
            &s(cdot(&x, &z)? + cdot(&y, &z)?),
            ops,
        );
        let zero = cvector_zero::<Exact>(n)?;
        let zl = |v: &CVector<Exact>| -> Result<bool> {
            let d = cdot(v, v)?;
            Ok((d.re.is_zero() && d.im.is_zero()) == is_cvector_zero(v))
        };
        let ok = zl(&x)? && zl(&zero)?;
        rec.record("zero_length_iff_zero", t, ok, if ok { 0.0 } else { 1.0 }, ops);
        let xx = cdot(&x, &x)?;
        rec.record("self_dot_im_zero", t, xx.im.is_zero(), xx.im.to_f64_lossy().abs(), ops);
        let neg = xx.re < Exact::zero();
        rec.record("self_dot_re_nonneg", t, !neg, if neg { -xx.re.to_f64_lossy() } else { 0.0 }, ops);
    }
    Ok(rec.finish("table4", o.trials))
}

fn table5(o: &SuiteOptions) -> Result<SuiteReport> {
    let mut rec = Recorder::new(
        o.seed,
        &[
            ("cauchy_schwarz", 1e-12),
            ("triangle", 1e-12),
            ("cauchy_schwarz_equality", 1e-9),
            ("pythagoras_orthogonal", 0.0),
            ("pythagoras_reverse_real_part", 0.0),
            ("dot_angle_identity", 1e-9),
            ("angle_range", 0.0),
        ],
    );
    let (lo, hi) = (*o.dims.start(), *o.dims.end());
    for t in 0..o.trials {
        let mut rng = SeededRng::for_trial(o.seed, t);
        let n = dim_of(&mut rng, &o.dims);
        let x = rng.cvector_float(n, 10.0);
        let y = rng.cvector_float(n, 10.0);
        let a = rng.cfloat(3.0);
        let fops = || vec![op("x", show(&x)), op("y", show(&y)), op("a", show_c(&a))];
        let (nx, ny) = (cnorm(&x), cnorm(&y));

        let cs = (modulus(&cdot(&x, &y)?) - nx * ny).max(0.0) / (nx * ny).max(f64::MIN_POSITIVE);
        rec.within("cauchy_schwarz", t, cs, fops);
        let tri = (cnorm(&cvector_add(&x, &y)?) - (nx + ny)).max(0.0) / (nx + ny).max(f64::MIN_POSITIVE);
        rec.within("triangle", t, tri, fops);
        rec.within("cauchy_schwarz_equality", t, collinearity_residual(&x, &cvector_smul(&a, &x))?, fops);

        // exact Pythagoras on a constructed orthogonal pair
        let ex = rng.cvector_exact(n);
        let ex = if is_cvector_zero(&ex) { crate::geometry::cbasis(1, n)? } else { ex };
        let ez = rng.cvector_exact(n);
        let coeff = cdot(&ez, &ex)? / cdot(&ex, &ex)?;
        let ey = cvector_sub(&ez, &cvector_smul(&coeff, &ex))?;
        let orth = cdot(&ex, &ey)?;
        let lhs = cnorm2(&cvector_add(&ex, &ey)?);
        let rhs = cnorm2(&ex) + cnorm2(&ey);
        let ok = orth.re.is_zero() && orth.im.is_zero() && lhs == rhs;
        rec.record("pythagoras_orthogonal", t, ok, (lhs - rhs).to_f64_lossy().abs(), || {
            vec![op("x", show(&ex)), op("y", show(&ey))]
        });
        // reverse: equality of squared norms exactly when Re(x·y) = 0; odd
        // trials use y = i·c·x, which has Re(x·y) = 0 without x ⊥ y
        let ry = if t % 2 == 1 {
            cvector_smul(&Complex::new(Exact::zero(), rng.rational()), &ex)
        } else {
            ez.clone()
        };
        let eq = cnorm2(&cvector_add(&ex, &ry)?) == cnorm2(&ex) + cnorm2(&ry);
        let re_zero = cdot(&ex, &ry)?.re.is_zero();
        rec.record("pythagoras_reverse_real_part", t, eq == re_zero, if eq == re_zero { 0.0 } else { 1.0 }, || {
            vec![op("x", show(&ex)), op("y", show(&ry))]
        });

        if nx > 1e-3 && ny > 1e-3 {
            let ang = cvector_angle(&x, &y)?.value;
            let rhs = cx(nx * ny) * ccos(&ang)?;
            let gap = modulus(&(cdot(&x, &y)? - rhs)) / (nx * ny);
            rec.within("dot_angle_identity", t, gap, fops);
        }

        // non-collinear pairs need dimension >= 2
        if hi >= 2 {
            let m = rng.usize_in(lo.max(2), hi);
            let p = rng.cvector_float(m, 10.0);
            let q = rng.cvector_float(m, 10.0);
            if !collinear_cvectors_tol(&p, &q, 1e-9)? {
                let re = cvector_angle(&p, &q)?.value.re;
                let outside = (-re).max(re - PI).max(0.0);
                rec.record("angle_range", t, re > 0.0 && re < PI, outside, || {
                    vec![op("x", show(&p)), op("y", show(&q))]
                });
            }
        }
    }
    Ok(rec.finish("table5", o.trials))
}

/// Entry `(i, j)` of `a·b` by the textbook triple loop over raw entries.
fn oracle_mul(a: &CMatrix<Exact>, b: &CMatrix<Exact>) -> Vec<Vec<CScalar<Exact>>> {
    let mut out = vec![vec![cx(Exact::zero()); b.cols()]; a.rows()];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for k in 0..a.cols() {
                let x = &a.row(i + 1).expect("in range").as_slice()[k];
                let y = &b.row(k + 1).expect("in range").as_slice()[j];
                *cell = &*cell + x * y;
            }
        }
    }
    out
}

fn matrix_gap(a: &CMatrix<Exact>, b: &CMatrix<Exact>) -> f64 {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return f64::NAN;
    }
    (1..=a.rows())
        .map(|i| {
            cvector_max_abs_diff(a.row(i).expect("in range"), b.row(i).expect("in range"))
                .map(|d| d.to_f64_lossy())
                .unwrap_or(f64::NAN)
        })
        .fold(0.0, f64::max)
}

fn table6(o: &SuiteOptions) -> Result<SuiteReport> {
    let mut rec = Recorder::new(
        o.seed,
        &[
            ("mul_matches_oracle", 0.0),
            ("mul_assoc", 0.0),
            ("left_distrib", 0.0),
            ("right_distrib", 0.0),
            ("cnj_of_product", 0.0),
            ("mul_identity", 0.0),
            ("cvector_mul_is_column_product", 0.0),
        ],
    );
    for t in 0..o.trials {
        let mut rng = SeededRng::for_trial(o.seed, t);
        let (m, n, p) = (rng.usize_in(1, 5), rng.usize_in(1, 5), rng.usize_in(1, 5));
        let a = random_cmatrix(&mut rng, m, n);
        let b = random_cmatrix(&mut rng, n, p);
        let ab = cmatrix_mul(&a, &b)?;
        let oracle = oracle_mul(&a, &b);
        let ok = (1..=m).all(|i| (1..=p).all(|j| ab.entry(i, j).expect("in range") == &oracle[i - 1][j - 1]));
        let om = CMatrix::from_rows(oracle.into_iter().map(|r| Vector::new(r).expect("nonempty")).collect())?;
        rec.record("mul_matches_oracle", t, ok, matrix_gap(&ab, &om), || {
            vec![op("a", show_m(&a)), op("b", show_m(&b))]
        });

        let (q, r, s, u) = (rng.usize_in(1, 4), rng.usize_in(1, 4), rng.usize_in(1, 4), rng.usize_in(1, 4));
        let x = random_cmatrix(&mut rng, q, r);
        let y = random_cmatrix(&mut rng, r, s);
        let z = random_cmatrix(&mut rng, s, u);
        let lhs = cmatrix_mul(&cmatrix_mul(&x, &y)?, &z)?;
        let rhs = cmatrix_mul(&x, &cmatrix_mul(&y, &z)?)?;
        let xyz = || vec![op("x", show_m(&x)), op("y", show_m(&y)), op("z", show_m(&z))];
        rec.record("mul_assoc", t, lhs == rhs, matrix_gap(&lhs, &rhs), xyz);

        let y2 = random_cmatrix(&mut rng, r, s);
        let lhs = cmatrix_mul(&x, &cmatrix_add(&y, &y2)?)?;
        let rhs = cmatrix_add(&cmatrix_mul(&x, &y)?, &cmatrix_mul(&x, &y2)?)?;
        rec.record("left_distrib", t, lhs == rhs, matrix_gap(&lhs, &rhs), || {
            vec![op("x", show_m(&x)), op("y", show_m(&y)), op("y'", show_m(&y2))]
        });
        let x2 = random_cmatrix(&mut rng, q, r);
        let lhs = cmatrix_mul(&cmatrix_add(&x, &x2)?, &y)?;
        let rhs = cmatrix_add(&cmatrix_mul(&x, &y)?, &cmatrix_mul(&x2, &y)?)?;
        rec.record("right_distrib", t, lhs == rhs, matrix_gap(&lhs, &rhs), || {
            vec![op("x", show_m(&x)), op("x'", show_m(&x2)), op("y", show_m(&y))]
        });

        let lhs = cmatrix_cnj(&ab);
        let rhs = cmatrix_mul(&cmatrix_cnj(&a), &cmatrix_cnj(&b))?;
        rec.record("cnj_of_product", t, lhs == rhs, matrix_gap(&lhs, &rhs), || {
            vec![op("a", show_m(&a)), op("b", show_m(&b))]
        });
        let lhs = cmatrix_mul(&CMatrix::identity(m)?, &a)?;
        let rhs = cmatrix_mul(&a, &CMatrix::identity(n)?)?;
        let ok = lhs == a && rhs == a;
        rec.record("mul_identity", t, ok, matrix_gap(&lhs, &a).max(matrix_gap(&rhs, &a)), || {
            vec![op("a", show_m(&a))]
        });

        let v = rng.cvector_exact(n);
        let mv = cmatrix_cvector_mul(&a, &v)?;
        let col = cmatrix_mul(&a, &CMatrix::column(&v))?.col(1)?;
        rec.same("cvector_mul_is_column_product", t, &mv, &col, || {
            vec![op("a", show_m(&a)), op("v", show(&v))]
        });
    }
    Ok(rec.finish("table6", o.trials))
}

fn geometric_seq(ratio: f64, base: CVector<f64>) -> VectorSequence<f64> {
    VectorSequence::new(base.dim(), IndexSet::From(0), move |n| cvector_smul(&cx(ratio.powi(n as i32)), &base))
}

fn table7(o: &SuiteOptions) -> Result<SuiteReport> {
    const TOL: f64 = 1e-13;
    const BUDGET: u64 = 2_000;
    let mut rec = Recorder::new(
        o.seed,
        &[
            ("geometric_half_sum", 1e-10),
            ("geometric_closed_form", 1e-10),
            ("flatten_matches_componentwise", 1e-12),
            ("sum_linear_in_sequence", 2e-12),
            ("summable_iff_parts_summable", 0.0),
            ("constant_series_rejected", 0.0),
            ("matrix_map_clinear", 1e-12),
            ("cnj_not_clinear_witness_i", 0.0),
            ("cnj_real_linear_after_flatten", 1e-12),
        ],
    );
    for t in 0..o.trials {
        let mut rng = SeededRng::for_trial(o.seed, t);
        let n = dim_of(&mut rng, &o.dims);
        let trial_seed = o.seed.wrapping_add(t);

        if t == 0 {
            let one_i = Vector::new(vec![cx(1.0), Complex::new(0.0, 1.0)])?;
            let out = cinfsum(&geometric_seq(0.5, one_i.clone()), &TOL, BUDGET)?;
            let want = Vector::new(vec![cx(2.0), Complex::new(0.0, 2.0)])?;
            let gap = if out.converged { cvector_max_abs_diff(&out.value, &want)? } else { f64::INFINITY };
            rec.within("geometric_half_sum", t, gap, || vec![op("base", show(&one_i))]);
        }

        let r = rng.uniform(-0.8, 0.8);
        let base = rng.cvector_float(n, 1.0);
        let seq = geometric_seq(r, base.clone());
        let flat = cinfsum(&seq, &TOL, BUDGET)?;
        let comp = cinfsum_componentwise(&seq, &TOL, BUDGET)?;
        let ops = || vec![op("ratio", r.to_string()), op("base", show(&base))];
        let closed = cvector_smul(&cx(1.0 / (1.0 - r)), &base);
        let gap = |s: &crate::series::CSumOutcome<f64>, w: &CVector<f64>| -> Result<f64> {
            Ok(if s.converged { cvector_max_abs_diff(&s.value, w)? } else { f64::INFINITY })
        };
        rec.within("geometric_closed_form", t, gap(&flat, &closed)?, ops);
        rec.within(
            "flatten_matches_componentwise",
            t,
            if comp.converged { gap(&flat, &comp.value)? } else { f64::INFINITY },
            ops,
        );

        let a = rng.cfloat(0.7);
        let r2 = rng.uniform(-0.8, 0.8);
        let base2 = rng.cvector_float(n, 1.0);
        let (bf, bg) = (base.clone(), base2.clone());
        let h = VectorSequence::new(n, IndexSet::From(0), move |k| {
            let f = cvector_smul(&cx(r.powi(k as i32)), &bf);
            let g = cvector_smul(&cx(r2.powi(k as i32)), &bg);
            cvector_add(&cvector_smul(&a, &f), &g).expect("equal dims")
        });
        let sg = cinfsum(&geometric_seq(r2, base2.clone()), &TOL, BUDGET)?;
        let sh = cinfsum(&h, &TOL, BUDGET)?;
        let lin = cvector_add(&cvector_smul(&a, &flat.value), &sg.value)?;
        let lin_gap = if flat.converged && sg.converged && sh.converged {
            cvector_max_abs_diff(&sh.value, &lin)?
        } else {
            f64::INFINITY
        };
        rec.within("sum_linear_in_sequence", t, lin_gap, || {
            vec![op("a", show_c(&a)), op("r_f", r.to_string()), op("f", show(&base)), op("r_g", r2.to_string()), op("g", show(&base2))]
        });

        // geometric real part with a geometric or harmonic imaginary part
        let rre = rng.uniform(-0.9, 0.9);
        let rim = rng.uniform(-1.2, 1.2);
        let harmonic = rng.usize_in(0, 1) == 1;
        let mixed = VectorSequence::new(1, IndexSet::From(1), move |k| {
            let im = if harmonic { 1.0 / k as f64 } else { rim.powi(k as i32) };
            Vector::new(vec![Complex::new(rre.powi(k as i32), im)]).expect("nonempty")
        });
        let whole = csummable(&mixed, &1e-9, BUDGET)?.summable;
        let re = real_infsum(1, mixed.index_set(), |k| Ok(cvector_re(&mixed.term(k)?)), &1e-9, BUDGET)?.converged;
        let im = real_infsum(1, mixed.index_set(), |k| Ok(cvector_im(&mixed.term(k)?)), &1e-9, BUDGET)?.converged;
        let ok = whole == (re && im);
        rec.record("summable_iff_parts_summable", t, ok, if ok { 0.0 } else { 1.0 }, || {
            vec![op("re ratio", rre.to_string()), op("im", if harmonic { "1/n".into() } else { format!("{rim}^n") })]
        });

        let c = rng.cvector_float(n, 1.0);
        let c = if is_cvector_zero(&c) { cvector_add(&c, &Vector::from_fn(n, |_| cx(1.0))?)? } else { c };
        let cc = c.clone();
        let constant = VectorSequence::new(n, IndexSet::From(0), move |_| cc.clone());
        let s = csummable(&constant, &1e-9, BUDGET)?;
        rec.record("constant_series_rejected", t, !s.summable, if s.summable { 1.0 } else { 0.0 }, || {
            vec![op("term", show(&c))]
        });

        let out_dim = dim_of(&mut rng, &o.dims);
        let mat = CMatrix::from_fn(out_dim, n, |_, _| rng.cfloat(2.0))?;
        let lin = check_clinear(|v| cmatrix_cvector_mul(&mat, v).expect("shape"), n, out_dim, 4, 1e-12, trial_seed)?;
        let worst = lin.additivity.worst_residual.max(lin.homogeneity.worst_residual);
        rec.within("matrix_map_clinear", t, worst, || vec![op("m", show_m_f(&mat))]);

        let cj = check_clinear(cvector_cnj, n, n, 2, 1e-12, trial_seed)?;
        let witness = cj
            .counterexample(LinearityLaw::Homogeneity)
            .is_some_and(|c| c.trial == 0 && c.scalar == Some(Complex::new(0.0, 1.0)));
        let ok = !cj.is_clinear() && witness;
        rec.record("cnj_not_clinear_witness_i", t, ok, if ok { 0.0 } else { 1.0 }, || {
            vec![op("dim", n.to_string())]
        });
        let real = cj.real_additivity.worst_residual.max(cj.real_homogeneity.worst_residual);
        rec.within("cnj_real_linear_after_flatten", t, real, || vec![op("dim", n.to_string())]);
    }
    Ok(rec.finish("table7", o.trials))
}

fn show_m_f(m: &CMatrix<f64>) -> String {
    let rows: Vec<String> = (1..=m.rows()).map(|i| show(m.row(i).expect("in range"))).collect();
    format!("[{}]", rows.join(", "))
}

fn check_residual(checks: &[Check], name: &str) -> f64 {
    checks
        .iter()
        .find(|c| c.name == name)
        .and_then(|c| c.residual)
        .unwrap_or(f64::INFINITY)
}

fn interface(o: &SuiteOptions) -> Result<SuiteReport> {
    let mut rec = Recorder::new(
        o.seed,
        &[
            ("law_of_reflection", 1e-9),
            ("angle_of_reflection", 1e-9),
            ("plane_of_incidence", 1e-9),
            ("boundary_conditions", 1e-9),
            ("wavevector_norms", 1e-12),
            ("valid_waves", 1e-9),
            ("wavevector_signs", 1e-9),
            ("energy", 1e-9),
        ],
    );
    for t in 0..o.trials {
        let trial_seed = o.seed.wrapping_add(t);
        let cfg = random_te_configuration(&mut SeededRng::for_trial(o.seed, t));
        let ops = || vec![op("configuration", format!("{cfg:?}"))];
        let sol = solve_interface(&cfg.incident, &cfg.interface, cfg.k0, cfg.eta0, 1e-9)?;
        let tr = &sol.triple;
        let iface = &cfg.interface;

        rec.within("law_of_reflection", t, reflection_residual(tr, iface)?, ops);
        rec.within("angle_of_reflection", t, (sol.theta_i - sol.theta_r).abs(), ops);
        rec.within("plane_of_incidence", t, plane_of_incidence_residual(tr, iface)?, ops);
        let (pts, times) = plane_samples(&tr.incident, iface, 10, 5, trial_seed)?;
        let (be, bh) = triple_boundary_residual(tr, iface, &pts, &times)?;
        rec.within("boundary_conditions", t, be.max(bh), ops);

        let k_norm = |k: &RVector<f64>| k.iter().map(|x| x * x).sum::<f64>().sqrt();
        let norms = [
            (k_norm(&tr.incident.k), cfg.k0 * iface.n1),
            (k_norm(&tr.reflected.k), cfg.k0 * iface.n1),
            (k_norm(&tr.transmitted.k), cfg.k0 * iface.n2),
        ]
        .iter()
        .map(|(a, b)| (a - b).abs() / b)
        .fold(0.0, f64::max);
        rec.within("wavevector_norms", t, norms, ops);

        let opts = VerifyOptions { seed: trial_seed, ..VerifyOptions::default() };
        let checks = verify_triple(tr, iface, &opts)?;
        rec.within("valid_waves", t, check_residual(&checks, CHECK_VALID_WAVES), ops);
        rec.within("wavevector_signs", t, check_residual(&checks, CHECK_SIGNS), ops);
        rec.within("energy", t, check_residual(&checks, CHECK_ENERGY), ops);
        debug_assert!(check_residual(&checks, CHECK_NORMS).is_finite());
    }
    Ok(rec.finish("interface", o.trials))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(seed: u64, trials: u64) -> SuiteOptions {
        SuiteOptions { seed, trials, dims: 1..=8 }
    }

    #[test]
    fn every_suite_passes_a_short_run() {
        for s in SUITES {
            let rep = run_suite(s, &quick(42, 40)).unwrap();
            assert!(rep.passed(), "{}", rep.render());
        }
    }

    #[test]
    fn runs_are_reproducible() {
        let a = run_suite("table5", &quick(7, 30)).unwrap();
        let b = run_suite("table5", &quick(7, 30)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn vector_space_suite_counts_every_axiom_per_trial() {
        let rep = run_suite("vector-space", &quick(1, 25)).unwrap();
        assert_eq!(rep.suite, "table2");
        assert_eq!(rep.properties.len(), 8);
        assert!(rep.properties.iter().all(|p| p.checked == 25 && p.worst_residual == 0.0));
    }

    #[test]
    fn bad_requests() {
        assert!(matches!(run_suite("bogus", &quick(0, 1)), Err(Error::Usage(_))));
        assert!(matches!(run_suite("table1", &quick(0, 0)), Err(Error::Usage(_))));
        let empty = SuiteOptions { seed: 0, trials: 1, dims: 0..=3 };
        assert!(matches!(run_suite("table1", &empty), Err(Error::Usage(_))));
    }

    #[test]
    fn oracle_agrees_on_known_product() {
        // [[i, 0], [0, 1]] · [[1, 1], [0, i]] = [[i, i], [0, i]]
        let c = |re: i64, im: i64| crate::scalar::exact((re, 1), (im, 1));
        let a = CMatrix::from_rows(vec![
            Vector::new(vec![c(0, 1), c(0, 0)]).unwrap(),
            Vector::new(vec![c(0, 0), c(1, 0)]).unwrap(),
        ])
        .unwrap();
        let b = CMatrix::from_rows(vec![
            Vector::new(vec![c(1, 0), c(1, 0)]).unwrap(),
            Vector::new(vec![c(0, 0), c(0, 1)]).unwrap(),
        ])
        .unwrap();
        let o = oracle_mul(&a, &b);
        assert_eq!(o, vec![vec![c(0, 1), c(0, 1)], vec![c(0, 0), c(0, 1)]]);
    }

    #[test]
    fn failures_carry_a_reproducible_counterexample() {
        let mut rec = Recorder::new(5, &[("p", 1e-3)]);
        rec.within("p", 0, 1e-4, Vec::new);
        rec.within("p", 3, 0.5, || vec![op("x", "[1, 2]".into())]);
        let rep = rec.finish("table1", 4);
        assert!(!rep.passed());
        let p = rep.property("p").unwrap();
        assert_eq!((p.checked, p.failures), (2, 1));
        let c = p.first_failure.as_ref().unwrap();
        assert_eq!((c.trial, c.trial_seed), (3, 8));
        assert!(rep.render().contains("seed 5 trial 3"));
    }
}
