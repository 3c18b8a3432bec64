//! The `cxvec` command line: scene and triple files in, verification reports
//! out, plus the randomized property suites.
//!
//! Exit codes: 0 every check passed, 1 input error, 2 a check failed,
//! 3 unsupported physics (total internal reflection, non-TE incidence,
//! grazing incidence).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex;
use serde::{de::DeserializeOwned, Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::optics::{
    h_from_e, point, solve_interface, triple_angles, verify_triple, Check, Interface, Plane, PlaneWave,
    VerifyOptions, WaveTriple,
};
use crate::scalar::C64;
use crate::suites::{resolve_suite, run_suite, SuiteOptions, SUITES};
use crate::vector::{CVector, RVector, Vector};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

pub const DEFAULT_TOL: f64 = 1e-9;

/// A complex number as `[re, im]`.
pub type Pair = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub media: Media,
    pub interface: SceneInterface,
    pub incident: SceneWave,
    pub constants: Constants,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Seed for boundary sampling; `--seed` overrides it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Media {
    pub n1: f64,
    pub n2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneInterface {
    pub p0: [f64; 3],
    pub normal: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneWave {
    pub k: [f64; 3],
    pub omega: f64,
    #[serde(rename = "E")]
    pub e: [Pair; 3],
    /// Completed as `(n1/η₀)·k̂ × E` when absent.
    #[serde(rename = "H", default, skip_serializing_if = "Option::is_none")]
    pub h: Option<[Pair; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constants {
    pub k0: f64,
    pub eta0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_tol")]
    pub geometry: f64,
    #[serde(default = "default_tol")]
    pub boundary: f64,
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            geometry: DEFAULT_TOL,
            boundary: DEFAULT_TOL,
        }
    }
}

/// A fully specified wave (H required), as used in triple files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveFile {
    pub k: [f64; 3],
    pub omega: f64,
    #[serde(rename = "E")]
    pub e: [Pair; 3],
    #[serde(rename = "H")]
    pub h: [Pair; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleFile {
    pub incident: WaveFile,
    pub reflected: WaveFile,
    pub transmitted: WaveFile,
    pub k0: f64,
    pub eta0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub solved: Solved,
    pub checks: Vec<CheckEntry>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Solved {
    pub k_r: [f64; 3],
    pub k_t: [f64; 3],
    /// `null` when the incident amplitude is zero.
    pub r_coeff: Option<f64>,
    pub t_coeff: Option<f64>,
    pub theta_i_deg: f64,
    pub theta_r_deg: f64,
    pub theta_t_deg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub residual: Option<f64>,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub seed: u64,
    pub tool_version: String,
    /// SHA-256 of the scene file bytes, hex.
    pub scene_hash: String,
    /// SHA-256 of the triple file bytes (`check` only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple_hash: Option<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Parser, Debug)]
#[command(name = "cxvec", version, about = "Complex vector algebra checks and a plane-wave interface solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve reflection/transmission for a scene and verify the result.
    Solve {
        /// Scene JSON file.
        scene: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
        /// Geometry tolerance (norms, reflection, plane of incidence); overrides the scene.
        #[arg(long, value_parser = parse_tol)]
        tol_geom: Option<f64>,
        /// Relative boundary-condition tolerance; overrides the scene.
        #[arg(long, value_parser = parse_tol)]
        tol_bc: Option<f64>,
        /// Seed for boundary sampling (overrides the scene's `seed`).
        #[arg(long)]
        seed: Option<u64>,
        /// Also write the solved wave triple as JSON.
        #[arg(long)]
        emit_triple: Option<PathBuf>,
    },
    /// Verify a given wave triple against a scene without solving.
    Check {
        /// Scene JSON file.
        scene: PathBuf,
        /// Wave triple JSON, e.g. from `solve --emit-triple`.
        triple: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
        /// Geometry tolerance (norms, reflection, plane of incidence); overrides the scene.
        #[arg(long, value_parser = parse_tol)]
        tol_geom: Option<f64>,
        /// Relative boundary-condition tolerance; overrides the scene.
        #[arg(long, value_parser = parse_tol)]
        tol_bc: Option<f64>,
        /// Seed for boundary sampling (overrides the scene's `seed`).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run randomized property suites (table1..table7, interface, or all).
    Axioms {
        /// Suite name or alias, or `all`.
        suite: String,
        /// Trial `t` draws from seed + t.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Inclusive dimension range `A..B`, or a single dimension.
        #[arg(long, default_value = "1..8", value_parser = parse_dims)]
        dims: RangeInclusive<usize>,
    },
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x.is_finite() && x >= 0.0 {
        Ok(x)
    } else {
        Err("tolerance must be finite and >= 0".into())
    }
}

/// `A..B` (inclusive), `A..=B` or `N`.
pub fn parse_dims(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad dimension {t:?}: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if a == 0 || a > b {
        return Err(format!("dims must satisfy 1 <= A <= B, got {a}..{b}"));
    }
    Ok(a..=b)
}

/// An input or physics failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unsupported(_) | Error::DegenerateIncidence(_) => EXIT_UNSUPPORTED,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Runs the CLI on `args` (including the program name), writing to the
/// given streams, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
        }
    };
    let result = match cli.command {
        Command::Solve {
            scene,
            out: path,
            tol_geom,
            tol_bc,
            seed,
            emit_triple,
        } => cmd_solve(&scene, path.as_deref(), tol_geom, tol_bc, seed, emit_triple.as_deref(), out, err),
        Command::Check {
            scene,
            triple,
            out: path,
            tol_geom,
            tol_bc,
            seed,
        } => cmd_check(&scene, &triple, path.as_deref(), tol_geom, tol_bc, seed, out, err),
        Command::Axioms {
            suite,
            seed,
            trials,
            dims,
        } => cmd_axioms(&suite, seed, trials, dims, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path, what: &str) -> Result<(T, Vec<u8>), Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::input(format!("cannot read {what} {}: {e}", path.display())))?;
    let mut de = serde_json::Deserializer::from_slice(&bytes);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        Failure::input(format!(
            "{what} {}: line {} column {}: field `{field}`: {inner}",
            path.display(),
            inner.line(),
            inner.column()
        ))
    })?;
    de.end()
        .map_err(|e| Failure::input(format!("{what} {}: trailing data: {e}", path.display())))?;
    Ok((value, bytes))
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn rvec(a: [f64; 3]) -> RVector<f64> {
    point(a[0], a[1], a[2])
}

fn cvec(a: [Pair; 3]) -> CVector<f64> {
    Vector::new(a.iter().map(|p| Complex::new(p[0], p[1])).collect()).expect("nonempty")
}

fn arr(v: &RVector<f64>) -> [f64; 3] {
    let s = v.as_slice();
    [s[0], s[1], s[2]]
}

fn pairs(v: &CVector<f64>) -> [Pair; 3] {
    let s = v.as_slice();
    [[s[0].re, s[0].im], [s[1].re, s[1].im], [s[2].re, s[2].im]]
}

fn require_finite(field: &str, xs: &[f64]) -> Result<(), Failure> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Failure::input(format!("{field}: values must be finite")))
    }
}

fn require_positive(field: &str, x: f64) -> Result<(), Failure> {
    if x > 0.0 {
        Ok(())
    } else {
        Err(Failure::input(format!("{field}: must be > 0, got {x}")))
    }
}

/// A validated scene.
struct Setup {
    interface: Interface,
    incident: PlaneWave,
    k0: f64,
    eta0: f64,
    tolerances: Tolerances,
    seed: Option<u64>,
}

fn validate_scene(scene: &Scene) -> Result<Setup, Failure> {
    let s = scene;
    require_finite("media", &[s.media.n1, s.media.n2])?;
    require_finite("interface.p0", &s.interface.p0)?;
    require_finite("interface.normal", &s.interface.normal)?;
    require_finite("incident.k", &s.incident.k)?;
    require_finite("incident.omega", &[s.incident.omega])?;
    require_finite("incident.E", s.incident.e.as_flattened())?;
    if let Some(h) = &s.incident.h {
        require_finite("incident.H", h.as_flattened())?;
    }
    require_finite("constants", &[s.constants.k0, s.constants.eta0])?;
    require_finite("tolerances", &[s.tolerances.geometry, s.tolerances.boundary])?;
    require_positive("media.n1", s.media.n1)?;
    require_positive("media.n2", s.media.n2)?;
    require_positive("constants.k0", s.constants.k0)?;
    require_positive("constants.eta0", s.constants.eta0)?;
    require_positive("incident.omega", s.incident.omega)?;
    if s.tolerances.geometry < 0.0 || s.tolerances.boundary < 0.0 {
        return Err(Failure::input("tolerances: must be >= 0"));
    }

    let plane = Plane::new(rvec(s.interface.p0), rvec(s.interface.normal))
        .map_err(|e| Failure::input(format!("interface.normal: {e}")))?;
    let interface = Interface::new(s.media.n1, s.media.n2, plane)?;
    let k = rvec(s.incident.k);
    if s.incident.k.iter().all(|&x| x == 0.0) {
        return Err(Failure::input("incident.k: wavevector must be nonzero"));
    }
    let e = cvec(s.incident.e);
    let h = match s.incident.h {
        Some(h) => cvec(h),
        None => h_from_e(&k, &e, s.media.n1, s.constants.eta0)?,
    };
    let incident = PlaneWave::new(k, s.incident.omega, e, h)?;
    Ok(Setup {
        interface,
        incident,
        k0: s.constants.k0,
        eta0: s.constants.eta0,
        tolerances: s.tolerances.clone(),
        seed: s.seed,
    })
}

fn wave_from_file(field: &str, w: &WaveFile) -> Result<PlaneWave, Failure> {
    require_finite(&format!("{field}.k"), &w.k)?;
    require_finite(&format!("{field}.omega"), &[w.omega])?;
    require_finite(&format!("{field}.E"), w.e.as_flattened())?;
    require_finite(&format!("{field}.H"), w.h.as_flattened())?;
    Ok(PlaneWave::new(rvec(w.k), w.omega, cvec(w.e), cvec(w.h))?)
}

fn wave_to_file(w: &PlaneWave) -> WaveFile {
    WaveFile {
        k: arr(&w.k),
        omega: w.omega,
        e: pairs(&w.e),
        h: pairs(&w.h),
    }
}

pub fn triple_to_file(tr: &WaveTriple) -> TripleFile {
    TripleFile {
        incident: wave_to_file(&tr.incident),
        reflected: wave_to_file(&tr.reflected),
        transmitted: wave_to_file(&tr.transmitted),
        k0: tr.k0,
        eta0: tr.eta0,
    }
}

/// `(E_x · E_i) / (E_i · E_i)` with the anchor phase `e^{−i(k_i − k_x)⊙p₀}`
/// taken out, real part; `None` when `E_i = 0`.
fn amplitude_ratio(tr: &WaveTriple, x: &PlaneWave, iface: &Interface) -> Option<f64> {
    let ei = &tr.incident.e;
    let denom: f64 = ei.iter().map(|z| z.norm_sqr()).sum();
    if denom == 0.0 {
        return None;
    }
    let num: C64 = x.e.iter().zip(ei).map(|(a, b)| a * b.conj()).sum();
    let p0 = iface.plane.p0.as_slice();
    let shift: f64 = tr
        .incident
        .k
        .iter()
        .zip(&x.k)
        .zip(p0)
        .map(|((a, b), p)| (a - b) * p)
        .sum();
    Some((num / denom * Complex::new(0.0, shift).exp()).re)
}

fn check_entries(checks: Vec<Check>) -> Vec<CheckEntry> {
    checks
        .into_iter()
        .map(|c| CheckEntry {
            name: c.name.to_string(),
            pass: c.pass,
            residual: c.residual.filter(|r| r.is_finite()),
            tolerance: c.tolerance,
        })
        .collect()
}

fn solved_block(tr: &WaveTriple, iface: &Interface, r: Option<f64>, t: Option<f64>) -> Solved {
    let (ti, tr_, tt) = triple_angles(tr, iface);
    Solved {
        k_r: arr(&tr.reflected.k),
        k_t: arr(&tr.transmitted.k),
        r_coeff: r,
        t_coeff: t,
        theta_i_deg: ti.to_degrees(),
        theta_r_deg: tr_.to_degrees(),
        theta_t_deg: tt.to_degrees(),
    }
}

fn emit_report(report: &Report, path: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let json = serde_json::to_string_pretty(report).expect("reports serialize") + "\n";
    match path {
        Some(p) => fs::write(p, &json).map_err(|e| Failure::input(format!("cannot write {}: {e}", p.display())))?,
        None => out
            .write_all(json.as_bytes())
            .map_err(|e| Failure::input(format!("cannot write report: {e}")))?,
    }
    for c in &report.checks {
        let residual = c.residual.map_or("n/a".to_string(), |r| format!("{r:.3e}"));
        let _ = writeln!(
            err,
            "{:<20} {}  residual {residual:<10} tol {:.0e}",
            c.name,
            if c.pass { "pass" } else { "FAIL" },
            c.tolerance
        );
    }
    Ok(if report.passed() { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

fn verify_options(setup: &Setup, tol_geom: Option<f64>, tol_bc: Option<f64>, seed: u64) -> VerifyOptions {
    VerifyOptions {
        tol_geom: tol_geom.unwrap_or(setup.tolerances.geometry),
        tol_bc: tol_bc.unwrap_or(setup.tolerances.boundary),
        seed,
        ..VerifyOptions::default()
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    scene_path: &Path,
    out_path: Option<&Path>,
    tol_geom: Option<f64>,
    tol_bc: Option<f64>,
    seed: Option<u64>,
    emit_triple: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let (scene, bytes): (Scene, _) = read_json(scene_path, "scene")?;
    let setup = validate_scene(&scene)?;
    let seed = seed.or(setup.seed).unwrap_or(0);
    let opts = verify_options(&setup, tol_geom, tol_bc, seed);

    let k_len = setup.incident.k.iter().map(|x| x * x).sum::<f64>().sqrt();
    let want = setup.k0 * setup.interface.n1;
    if (k_len - want).abs() > opts.tol_geom * want {
        return Err(Failure::input(format!(
            "incident.k: norm clause ‖k_i‖ = k0·n1 violated (‖k_i‖ = {k_len}, k0·n1 = {want})"
        )));
    }
    let sol = solve_interface(&setup.incident, &setup.interface, setup.k0, setup.eta0, opts.tol_geom)?;
    if let Some(p) = emit_triple {
        let json = serde_json::to_string_pretty(&triple_to_file(&sol.triple)).expect("triples serialize") + "\n";
        fs::write(p, json).map_err(|e| Failure::input(format!("cannot write {}: {e}", p.display())))?;
    }
    let checks = verify_triple(&sol.triple, &setup.interface, &opts)?;
    let report = Report {
        solved: solved_block(&sol.triple, &setup.interface, Some(sol.r), Some(sol.t)),
        checks: check_entries(checks),
        provenance: Provenance {
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            scene_hash: sha256_hex(&bytes),
            triple_hash: None,
        },
    };
    emit_report(&report, out_path, out, err)
}

#[allow(clippy::too_many_arguments)]
fn cmd_check(
    scene_path: &Path,
    triple_path: &Path,
    out_path: Option<&Path>,
    tol_geom: Option<f64>,
    tol_bc: Option<f64>,
    seed: Option<u64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let (scene, scene_bytes): (Scene, _) = read_json(scene_path, "scene")?;
    let (tf, triple_bytes): (TripleFile, _) = read_json(triple_path, "triple")?;
    let setup = validate_scene(&scene)?;
    let seed = seed.or(setup.seed).unwrap_or(0);
    let opts = verify_options(&setup, tol_geom, tol_bc, seed);

    if tf.k0 != setup.k0 || tf.eta0 != setup.eta0 {
        return Err(Failure::input(format!(
            "triple: k0/eta0 ({}, {}) differ from the scene constants ({}, {})",
            tf.k0, tf.eta0, setup.k0, setup.eta0
        )));
    }
    let tr = WaveTriple {
        incident: wave_from_file("incident", &tf.incident)?,
        reflected: wave_from_file("reflected", &tf.reflected)?,
        transmitted: wave_from_file("transmitted", &tf.transmitted)?,
        k0: setup.k0,
        eta0: setup.eta0,
    };
    if tr.incident.k.iter().all(|&x| x == 0.0) {
        return Err(Failure::input("triple incident.k: wavevector must be nonzero"));
    }
    let checks = verify_triple(&tr, &setup.interface, &opts)?;
    let r = amplitude_ratio(&tr, &tr.reflected, &setup.interface);
    let t = amplitude_ratio(&tr, &tr.transmitted, &setup.interface);
    let report = Report {
        solved: solved_block(&tr, &setup.interface, r, t),
        checks: check_entries(checks),
        provenance: Provenance {
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            scene_hash: sha256_hex(&scene_bytes),
            triple_hash: Some(sha256_hex(&triple_bytes)),
        },
    };
    emit_report(&report, out_path, out, err)
}

fn cmd_axioms(suite: &str, seed: u64, trials: u64, dims: RangeInclusive<usize>, out: &mut dyn Write) -> Result<i32, Failure> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else {
        vec![resolve_suite(suite).ok_or_else(|| {
            Failure::input(format!("unknown suite {suite:?}; expected one of {}, all", SUITES.join(", ")))
        })?]
    };
    let opts = SuiteOptions { seed, trials, dims };
    let mut all_passed = true;
    for name in names {
        let report = run_suite(name, &opts)?;
        all_passed &= report.passed();
        out.write_all(report.render().as_bytes())
            .map_err(|e| Failure::input(format!("cannot write output: {e}")))?;
    }
    Ok(if all_passed { EXIT_PASS } else { EXIT_CHECK_FAILED })
}
