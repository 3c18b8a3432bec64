//! Summability and infinite sums of complex-vector sequences, and a
//! randomized linearity checker.
//!
//! Summation is reduced to real vectors: a sequence is summable when the real
//! and imaginary parts are, and its sum is the unflattened sum of the
//! flattened sequence. Convergence is decided numerically by a windowed Cauchy
//! test: with `W = max(10, max_terms / 10)`, a run converges at the first `n`
//! for which every real coordinate of the last `W` partial sums spreads over
//! at most `tol`. Running out of `max_terms` is reported as a value, not an
//! error.

use std::collections::VecDeque;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::rng::SeededRng;
use crate::scalar::{modulus, Real, C64};
use crate::vector::{
    complex_vector, cvector_add, cvector_im, cvector_max_abs_diff, cvector_re, cvector_smul,
    flatten, radd, rscale, unflatten, CVector, RVector, Vector,
};

/// Which indices a sequence is summed over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexSet {
    /// `n0, n0 + 1, n0 + 2, ...`
    From(u64),
    /// An explicit finite set; duplicates count once.
    Finite(Vec<u64>),
}

type Term<T> = Box<dyn Fn(u64) -> CVector<T> + Send + Sync>;

/// A complex-vector valued sequence `f: index → complex^dim` over an index set.
pub struct VectorSequence<T> {
    dim: usize,
    index_set: IndexSet,
    term: Term<T>,
}

impl<T: Real> VectorSequence<T> {
    pub fn new(
        dim: usize,
        index_set: IndexSet,
        term: impl Fn(u64) -> CVector<T> + Send + Sync + 'static,
    ) -> Self {
        VectorSequence {
            dim,
            index_set,
            term: Box::new(term),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index_set
    }

    /// Term `n`, checked against the declared dimension.
    pub fn term(&self, n: u64) -> Result<CVector<T>> {
        let v = (self.term)(n);
        if v.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "term {n} has dimension {}, sequence declares {}",
                v.dim(),
                self.dim
            )));
        }
        Ok(v)
    }
}

/// Result of a summation run.
#[derive(Debug, Clone, PartialEq)]
pub struct SumOutcome<V, T> {
    pub converged: bool,
    /// The limit when `converged`, otherwise the last partial sum.
    pub value: V,
    pub terms_used: u64,
    /// Largest coordinate spread over the final Cauchy window.
    pub residual: T,
}

pub type CSumOutcome<T> = SumOutcome<CVector<T>, T>;
pub type RSumOutcome<T> = SumOutcome<RVector<T>, T>;

/// A summability decision.
#[derive(Debug, Clone, PartialEq)]
pub struct Summability<T> {
    pub summable: bool,
    /// Set when the decision is "not summable" only because `max_terms` ran
    /// out before the Cauchy window settled.
    pub budget_exhausted: bool,
    pub terms_used: u64,
    pub residual: T,
}

/// Cauchy window length used for a term budget.
pub fn cauchy_window(max_terms: u64) -> usize {
    (max_terms / 10).max(10) as usize
}

/// Sums a real-vector sequence over `index_set` with the windowed Cauchy test.
pub fn real_infsum<T: Real>(
    dim: usize,
    index_set: &IndexSet,
    term: impl Fn(u64) -> Result<RVector<T>>,
    tol: &T,
    max_terms: u64,
) -> Result<RSumOutcome<T>> {
    if max_terms == 0 {
        return Err(Error::Usage("max_terms must be >= 1".into()));
    }
    let zero = Vector::from_fn(dim, |_| T::zero())?;
    let checked = |n: u64| -> Result<RVector<T>> {
        let v = term(n)?;
        if v.dim() != dim {
            return Err(Error::dim_mismatch("sequence term", dim, v.dim()));
        }
        Ok(v)
    };
    match index_set {
        IndexSet::Finite(indices) => {
            let mut idx = indices.clone();
            idx.sort_unstable();
            idx.dedup();
            let mut sum = zero;
            for &n in &idx {
                sum = radd(&sum, &checked(n)?)?;
            }
            Ok(SumOutcome {
                converged: true,
                value: sum,
                terms_used: idx.len() as u64,
                residual: T::zero(),
            })
        }
        IndexSet::From(start) => {
            let w = cauchy_window(max_terms);
            let mut window = SlidingRange::new(dim, w);
            let mut sum = zero;
            let mut spread = None;
            for used in 1..=max_terms {
                sum = radd(&sum, &checked(start + used - 1)?)?;
                window.push(used, &sum);
                if used >= w as u64 {
                    let s = window.spread();
                    let settled = &s <= tol;
                    spread = Some(s);
                    if settled {
                        return Ok(SumOutcome {
                            converged: true,
                            value: sum,
                            terms_used: used,
                            residual: spread.expect("just set"),
                        });
                    }
                }
            }
            let residual = spread.unwrap_or_else(|| window.spread());
            Ok(SumOutcome {
                converged: false,
                value: sum,
                terms_used: max_terms,
                residual,
            })
        }
    }
}

/// Per-coordinate max and min over the last `len` pushed vectors, kept in
/// monotonic queues so each push is amortized O(dim).
struct SlidingRange<T> {
    len: u64,
    max: Vec<VecDeque<(u64, T)>>,
    min: Vec<VecDeque<(u64, T)>>,
}

impl<T: Real> SlidingRange<T> {
    fn new(dim: usize, len: usize) -> Self {
        SlidingRange {
            len: len as u64,
            max: vec![VecDeque::new(); dim],
            min: vec![VecDeque::new(); dim],
        }
    }

    fn push(&mut self, idx: u64, v: &RVector<T>) {
        for (i, x) in v.iter().enumerate() {
            let (hi, lo) = (&mut self.max[i], &mut self.min[i]);
            while hi.back().is_some_and(|(_, y)| y <= x) {
                hi.pop_back();
            }
            while lo.back().is_some_and(|(_, y)| y >= x) {
                lo.pop_back();
            }
            hi.push_back((idx, x.clone()));
            lo.push_back((idx, x.clone()));
            for q in [hi, lo] {
                while q.front().is_some_and(|(j, _)| *j + self.len <= idx) {
                    q.pop_front();
                }
            }
        }
    }

    fn spread(&self) -> T {
        self.max
            .iter()
            .zip(&self.min)
            .map(|(hi, lo)| hi[0].1.clone() - lo[0].1.clone())
            .fold(T::zero(), T::max_of)
    }
}

/// `csummable s f ⇔ summable s (re ∘ f) ∧ summable s (im ∘ f)`.
pub fn csummable<T: Real>(
    seq: &VectorSequence<T>,
    tol: &T,
    max_terms: u64,
) -> Result<Summability<T>> {
    let re = real_infsum(seq.dim, &seq.index_set, |n| Ok(cvector_re(&seq.term(n)?)), tol, max_terms)?;
    let im = real_infsum(seq.dim, &seq.index_set, |n| Ok(cvector_im(&seq.term(n)?)), tol, max_terms)?;
    let summable = re.converged && im.converged;
    Ok(Summability {
        summable,
        budget_exhausted: !summable,
        terms_used: re.terms_used.max(im.terms_used),
        residual: T::max_of(re.residual, im.residual),
    })
}

/// Summability of the flattened sequence, `summable s (flatten ∘ f)`.
pub fn csummable_flat<T: Real>(
    seq: &VectorSequence<T>,
    tol: &T,
    max_terms: u64,
) -> Result<Summability<T>> {
    let run = real_infsum(2 * seq.dim, &seq.index_set, |n| Ok(flatten(&seq.term(n)?)), tol, max_terms)?;
    Ok(Summability {
        summable: run.converged,
        budget_exhausted: !run.converged,
        terms_used: run.terms_used,
        residual: run.residual,
    })
}

/// `cinfsum s f = unflatten (infsum s (flatten ∘ f))`.
pub fn cinfsum<T: Real>(seq: &VectorSequence<T>, tol: &T, max_terms: u64) -> Result<CSumOutcome<T>> {
    let run = real_infsum(2 * seq.dim, &seq.index_set, |n| Ok(flatten(&seq.term(n)?)), tol, max_terms)?;
    Ok(SumOutcome {
        converged: run.converged,
        value: unflatten(&run.value)?,
        terms_used: run.terms_used,
        residual: run.residual,
    })
}

/// Sum assembled from separate real and imaginary infinite sums.
pub fn cinfsum_componentwise<T: Real>(
    seq: &VectorSequence<T>,
    tol: &T,
    max_terms: u64,
) -> Result<CSumOutcome<T>> {
    let re = real_infsum(seq.dim, &seq.index_set, |n| Ok(cvector_re(&seq.term(n)?)), tol, max_terms)?;
    let im = real_infsum(seq.dim, &seq.index_set, |n| Ok(cvector_im(&seq.term(n)?)), tol, max_terms)?;
    Ok(SumOutcome {
        converged: re.converged && im.converged,
        value: complex_vector(&re.value, &im.value)?,
        terms_used: re.terms_used.max(im.terms_used),
        residual: T::max_of(re.residual, im.residual),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinearityLaw {
    /// `f(u + v) = f(u) + f(v)`
    Additivity,
    /// `f(a % u) = a % f(u)` for complex `a`
    Homogeneity,
    /// additivity of `flatten ∘ f ∘ unflatten`
    RealAdditivity,
    /// `g(c x) = c g(x)` for real `c`, `g = flatten ∘ f ∘ unflatten`
    RealHomogeneity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearityCounterexample {
    pub law: LinearityLaw,
    pub trial: u64,
    pub residual: f64,
    pub u: CVector<f64>,
    pub v: Option<CVector<f64>>,
    pub scalar: Option<C64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct LawTally {
    pub checked: usize,
    pub failed: usize,
    pub worst_residual: f64,
}

impl LawTally {
    fn record(&mut self, residual: f64, tol: f64) -> bool {
        self.checked += 1;
        self.worst_residual = self.worst_residual.max(residual);
        let fail = !(residual <= tol);
        if fail {
            self.failed += 1;
        }
        fail
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearityReport {
    pub trials: u64,
    pub additivity: LawTally,
    pub homogeneity: LawTally,
    pub real_additivity: LawTally,
    pub real_homogeneity: LawTally,
    /// At most one counterexample per law (the first found).
    pub counterexamples: Vec<LinearityCounterexample>,
}

impl LinearityReport {
    /// Complex linearity: no additivity or homogeneity counterexample.
    pub fn is_clinear(&self) -> bool {
        self.additivity.failed == 0 && self.homogeneity.failed == 0
    }

    /// Real linearity of the flattened map.
    pub fn is_real_linear(&self) -> bool {
        self.real_additivity.failed == 0 && self.real_homogeneity.failed == 0
    }

    pub fn counterexample(&self, law: LinearityLaw) -> Option<&LinearityCounterexample> {
        self.counterexamples.iter().find(|c| c.law == law)
    }
}

fn relative_gap(a: &CVector<f64>, b: &CVector<f64>) -> Result<f64> {
    let scale = a.iter().chain(b).map(modulus).fold(1.0f64, f64::max);
    Ok(cvector_max_abs_diff(a, b)? / scale)
}

/// Randomized falsification of complex linearity of `f: C^in_dim → C^out_dim`.
///
/// Trial `t` draws operands from `SeededRng::for_trial(seed, t)`; the
/// homogeneity scalar of trial 0 is `i`. Residuals are max componentwise
/// differences relative to `max(1, largest modulus involved)`.
pub fn check_clinear(
    f: impl Fn(&CVector<f64>) -> CVector<f64>,
    in_dim: usize,
    out_dim: usize,
    trials: u64,
    tol: f64,
    seed: u64,
) -> Result<LinearityReport> {
    if trials == 0 {
        return Err(Error::Usage("trials must be >= 1".into()));
    }
    let apply = |x: &CVector<f64>| -> Result<CVector<f64>> {
        let y = f(x);
        if y.dim() != out_dim {
            return Err(Error::dim_mismatch("linear map output", out_dim, y.dim()));
        }
        Ok(y)
    };
    let flat = |x: &RVector<f64>| -> Result<RVector<f64>> { Ok(flatten(&apply(&unflatten(x)?)?)) };

    let mut report = LinearityReport {
        trials,
        additivity: LawTally::default(),
        homogeneity: LawTally::default(),
        real_additivity: LawTally::default(),
        real_homogeneity: LawTally::default(),
        counterexamples: Vec::new(),
    };
    let note = |report: &mut LinearityReport, c: LinearityCounterexample| {
        if report.counterexample(c.law).is_none() {
            report.counterexamples.push(c);
        }
    };

    for t in 0..trials {
        let mut rng = SeededRng::for_trial(seed, t);
        let u = rng.cvector_float(in_dim, 1.0);
        let v = rng.cvector_float(in_dim, 1.0);
        let a = if t == 0 { Complex::new(0.0, 1.0) } else { rng.cfloat(2.0) };
        let c = rng.uniform(-2.0, 2.0);

        let lhs = apply(&cvector_add(&u, &v)?)?;
        let rhs = cvector_add(&apply(&u)?, &apply(&v)?)?;
        let r = relative_gap(&lhs, &rhs)?;
        if report.additivity.record(r, tol) {
            let c = LinearityCounterexample { law: LinearityLaw::Additivity, trial: t, residual: r, u: u.clone(), v: Some(v.clone()), scalar: None };
            note(&mut report, c);
        }

        let lhs = apply(&cvector_smul(&a, &u))?;
        let rhs = cvector_smul(&a, &apply(&u)?);
        let r = relative_gap(&lhs, &rhs)?;
        if report.homogeneity.record(r, tol) {
            let c = LinearityCounterexample { law: LinearityLaw::Homogeneity, trial: t, residual: r, u: u.clone(), v: None, scalar: Some(a) };
            note(&mut report, c);
        }

        let (x, y) = (flatten(&u), flatten(&v));
        let lhs = unflatten(&flat(&radd(&x, &y)?)?)?;
        let rhs = unflatten(&radd(&flat(&x)?, &flat(&y)?)?)?;
        let r = relative_gap(&lhs, &rhs)?;
        if report.real_additivity.record(r, tol) {
            let c = LinearityCounterexample { law: LinearityLaw::RealAdditivity, trial: t, residual: r, u: u.clone(), v: Some(v.clone()), scalar: None };
            note(&mut report, c);
        }

        let lhs = unflatten(&flat(&rscale(&c, &x))?)?;
        let rhs = unflatten(&rscale(&c, &flat(&x)?))?;
        let r = relative_gap(&lhs, &rhs)?;
        if report.real_homogeneity.record(r, tol) {
            let cx = LinearityCounterexample { law: LinearityLaw::RealHomogeneity, trial: t, residual: r, u: u.clone(), v: None, scalar: Some(Complex::new(c, 0.0)) };
            note(&mut report, cx);
        }
    }
    Ok(report)
}
