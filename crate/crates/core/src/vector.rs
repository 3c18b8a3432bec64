//! Finite vectors, the componentwise combinators and complex-vector arithmetic.
//!
//! [`Vector<A>`] is a sequence of `A` with a runtime dimension `>= 1`. Complex
//! vectors ([`CVector`]) and real vectors ([`RVector`]) are instances of it,
//! and so are matrices (vectors of rows). Components are addressed 1..=dim in
//! the public API.
//!
//! Every complex-vector operation is defined by delegation to
//! [`vector_const`], [`vector_map`] or [`vector_map2`] with the matching
//! scalar operation, and [`flatten`]/[`unflatten`] give the bijection with
//! real vectors of twice the dimension (real parts first, then imaginary
//! parts).

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cnj, cx, scalar_abs_diff, CScalar, Real};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector<A> {
    comps: Vec<A>,
}

pub type CVector<T> = Vector<CScalar<T>>;
pub type RVector<T> = Vector<T>;

impl<A> Vector<A> {
    pub fn new(comps: Vec<A>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::Dimension("vectors must have dimension >= 1".into()));
        }
        Ok(Vector { comps })
    }

    /// Builds a vector from a function of the 1-based index.
    pub fn from_fn(dim: usize, f: impl FnMut(usize) -> A) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("vectors must have dimension >= 1".into()));
        }
        Ok(Vector {
            comps: (1..=dim).map(f).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    /// Component `i`, 1-based.
    pub fn component(&self, i: usize) -> Result<&A> {
        if i == 0 || i > self.comps.len() {
            return Err(Error::Index {
                index: i,
                dim: self.comps.len(),
            });
        }
        Ok(&self.comps[i - 1])
    }

    pub fn iter(&self) -> std::slice::Iter<'_, A> {
        self.comps.iter()
    }

    pub fn as_slice(&self) -> &[A] {
        &self.comps
    }

    pub fn into_vec(self) -> Vec<A> {
        self.comps
    }
}

impl<A: fmt::Debug> fmt::Debug for Vector<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.comps.iter()).finish()
    }
}

impl<'a, A> IntoIterator for &'a Vector<A> {
    type Item = &'a A;
    type IntoIter = std::slice::Iter<'a, A>;

    fn into_iter(self) -> Self::IntoIter {
        self.comps.iter()
    }
}

/// Every component equal to `k`.
pub fn vector_const<A: Clone>(k: A, dim: usize) -> Result<Vector<A>> {
    Vector::from_fn(dim, |_| k.clone())
}

/// `(vector_map f v)$i = f(v$i)`
pub fn vector_map<A, B>(f: impl Fn(&A) -> B, v: &Vector<A>) -> Vector<B> {
    Vector {
        comps: v.comps.iter().map(f).collect(),
    }
}

/// `(vector_map2 f u v)$i = f(u$i, v$i)`; dimensions must agree.
pub fn vector_map2<A, B, C>(
    f: impl Fn(&A, &B) -> C,
    u: &Vector<A>,
    v: &Vector<B>,
) -> Result<Vector<C>> {
    if u.dim() != v.dim() {
        return Err(Error::dim_mismatch("vector_map2", u.dim(), v.dim()));
    }
    Ok(Vector {
        comps: u.comps.iter().zip(&v.comps).map(|(a, b)| f(a, b)).collect(),
    })
}

pub fn cvector_zero<T: Real>(dim: usize) -> Result<CVector<T>> {
    vector_const(cx(T::zero()), dim)
}

pub fn cvector_add<T: Real>(u: &CVector<T>, v: &CVector<T>) -> Result<CVector<T>> {
    vector_map2(|a, b| a + b, u, v)
}

pub fn cvector_neg<T: Real>(v: &CVector<T>) -> CVector<T> {
    vector_map(|a: &CScalar<T>| -a.clone(), v)
}

pub fn cvector_sub<T: Real>(u: &CVector<T>, v: &CVector<T>) -> Result<CVector<T>> {
    cvector_add(u, &cvector_neg(v))
}

/// Scalar multiplication `a % v`.
pub fn cvector_smul<T: Real>(a: &CScalar<T>, v: &CVector<T>) -> CVector<T> {
    vector_map(|x| a * x, v)
}

pub fn cvector_cnj<T: Real>(v: &CVector<T>) -> CVector<T> {
    vector_map(cnj, v)
}

pub fn cvector_re<T: Real>(v: &CVector<T>) -> RVector<T> {
    vector_map(|z: &CScalar<T>| z.re.clone(), v)
}

pub fn cvector_im<T: Real>(v: &CVector<T>) -> RVector<T> {
    vector_map(|z: &CScalar<T>| z.im.clone(), v)
}

/// `re$i + i·im$i` componentwise.
pub fn complex_vector<T: Real>(re: &RVector<T>, im: &RVector<T>) -> Result<CVector<T>> {
    vector_map2(|x, y| Complex::new(x.clone(), y.clone()), re, im)
}

pub fn vector_to_cvector<T: Real>(r: &RVector<T>) -> CVector<T> {
    vector_map(|x: &T| cx(x.clone()), r)
}

/// Real parts in components `1..=N`, imaginary parts in `N+1..=2N`.
pub fn flatten<T: Real>(v: &CVector<T>) -> RVector<T> {
    pastecart(&cvector_re(v), &cvector_im(v))
}

/// Inverse of [`flatten`]; the input dimension must be even.
pub fn unflatten<T: Real>(r: &RVector<T>) -> Result<CVector<T>> {
    if r.dim() % 2 != 0 {
        return Err(Error::Dimension(format!(
            "unflatten needs an even dimension, got {}",
            r.dim()
        )));
    }
    let n = r.dim() / 2;
    let (re, im) = r.comps.split_at(n);
    complex_vector(&Vector { comps: re.to_vec() }, &Vector { comps: im.to_vec() })
}

fn pastecart<A: Clone>(a: &Vector<A>, b: &Vector<A>) -> Vector<A> {
    Vector {
        comps: a.comps.iter().chain(&b.comps).cloned().collect(),
    }
}

/// Largest `|Δre|`/`|Δim|` over all components.
pub fn cvector_max_abs_diff<T: Real>(u: &CVector<T>, v: &CVector<T>) -> Result<T> {
    let d = vector_map2(scalar_abs_diff, u, v)?;
    Ok(d.comps.into_iter().fold(T::zero(), T::max_of))
}

/// Tolerance equality: max componentwise absolute difference `<= tol`.
pub fn cvector_approx_eq<T: Real>(u: &CVector<T>, v: &CVector<T>, tol: &T) -> bool {
    matches!(cvector_max_abs_diff(u, v), Ok(d) if &d <= tol)
}

pub fn is_cvector_zero<T: Real>(v: &CVector<T>) -> bool {
    v.iter().all(|z| z.re.is_zero() && z.im.is_zero())
}

/// Real dot product `u ⊙ v`.
pub fn rdot<T: Real>(u: &RVector<T>, v: &RVector<T>) -> Result<T> {
    let p = vector_map2(|a: &T, b: &T| a.clone() * b.clone(), u, v)?;
    Ok(p.comps.into_iter().fold(T::zero(), |s, x| s + x))
}

pub fn radd<T: Real>(u: &RVector<T>, v: &RVector<T>) -> Result<RVector<T>> {
    vector_map2(|a: &T, b: &T| a.clone() + b.clone(), u, v)
}

pub fn rsub<T: Real>(u: &RVector<T>, v: &RVector<T>) -> Result<RVector<T>> {
    vector_map2(|a: &T, b: &T| a.clone() - b.clone(), u, v)
}

pub fn rscale<T: Real>(a: &T, v: &RVector<T>) -> RVector<T> {
    vector_map(|x: &T| a.clone() * x.clone(), v)
}

/// Real 3D cross product.
pub fn rcross<T: Real>(u: &RVector<T>, v: &RVector<T>) -> Result<RVector<T>> {
    if u.dim() != 3 || v.dim() != 3 {
        return Err(Error::Dimension(format!(
            "cross product needs dimension 3, got {} and {}",
            u.dim(),
            v.dim()
        )));
    }
    let (a, b) = (&u.comps, &v.comps);
    let c = |i: usize, j: usize| a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
    Ok(Vector {
        comps: vec![c(1, 2), c(2, 0), c(0, 1)],
    })
}

/// Euclidean norm of a real vector.
pub fn rnorm(v: &RVector<f64>) -> f64 {
    v.iter().fold(0.0f64, |acc, x| acc.hypot(*x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{exact, ratio, Exact};

    use proptest::prelude::*;

    fn cv(parts: &[(f64, f64)]) -> CVector<f64> {
        Vector::new(parts.iter().map(|&(a, b)| Complex::new(a, b)).collect()).unwrap()
    }

    fn rv(parts: &[f64]) -> RVector<f64> {
        Vector::new(parts.to_vec()).unwrap()
    }

    fn rational() -> impl Strategy<Value = Exact> {
        (-30i64..=30, 1i64..=9).prop_map(|(n, d)| ratio(n, d))
    }

    fn cexact() -> impl Strategy<Value = CScalar<Exact>> {
        (rational(), rational()).prop_map(|(re, im)| Complex::new(re, im))
    }

    fn cvec_exact(dim: usize) -> impl Strategy<Value = CVector<Exact>> {
        proptest::collection::vec(cexact(), dim).prop_map(|c| Vector::new(c).unwrap())
    }

    fn cvec_pair() -> impl Strategy<Value = (CVector<Exact>, CVector<Exact>)> {
        (1usize..=8).prop_flat_map(|n| (cvec_exact(n), cvec_exact(n)))
    }

    #[test]
    fn const_and_components() {
        let k = Complex::new(2.0, 1.0);
        let v = vector_const(k, 3).unwrap();
        assert_eq!(v, cv(&[(2.0, 1.0); 3]));
        for i in 1..=3 {
            assert_eq!(*v.component(i).unwrap(), k);
        }
        assert_eq!(cvector_zero::<f64>(4).unwrap(), cv(&[(0.0, 0.0); 4]));
        assert!(matches!(vector_const(k, 0), Err(Error::Dimension(_))));
        assert!(matches!(v.component(0), Err(Error::Index { index: 0, dim: 3 })));
        assert!(matches!(v.component(4), Err(Error::Index { index: 4, dim: 3 })));
    }

    #[test]
    fn maps() {
        let v = cv(&[(1.0, 1.0), (2.0, -1.0)]);
        assert_eq!(vector_map(|z: &Complex<f64>| *z, &v), v);
        assert_eq!(vector_map(cnj, &v), cv(&[(1.0, -1.0), (2.0, 1.0)]));
        let s = vector_map2(|a, b| a + b, &cv(&[(1.0, 0.0), (2.0, 0.0)]), &cv(&[(3.0, 0.0), (4.0, 0.0)]));
        assert_eq!(s.unwrap(), cv(&[(4.0, 0.0), (6.0, 0.0)]));
        let ones = vector_const(cx(1.0), 2).unwrap();
        assert_eq!(vector_map2(|a, b| a * b, &v, &ones).unwrap(), v);
        let three = cv(&[(1.0, 0.0); 3]);
        let bad = vector_map2(|a: &Complex<f64>, b: &Complex<f64>| a + b, &v, &three);
        assert!(matches!(bad, Err(Error::Dimension(_))));
    }

    #[test]
    fn re_im_decomposition() {
        let v = cv(&[(1.0, 2.0), (3.0, 0.0)]);
        assert_eq!(cvector_re(&v), rv(&[1.0, 3.0]));
        assert_eq!(cvector_im(&v), rv(&[2.0, 0.0]));
        assert_eq!(complex_vector(&rv(&[1.0, 3.0]), &rv(&[2.0, 0.0])).unwrap(), v);
        assert_eq!(complex_vector(&cvector_re(&v), &cvector_im(&v)).unwrap(), v);
        let r = rv(&[0.0, 0.0, 1.0]);
        assert_eq!(vector_to_cvector(&r), cv(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]));
        assert_eq!(cvector_im(&vector_to_cvector(&r)), rv(&[0.0, 0.0, 0.0]));
        assert!(complex_vector(&rv(&[1.0]), &rv(&[1.0, 2.0])).is_err());
    }

    #[test]
    fn flatten_layout() {
        let v = cv(&[(1.0, 2.0), (3.0, 4.0)]);
        assert_eq!(flatten(&v), rv(&[1.0, 3.0, 2.0, 4.0]));
        assert_eq!(unflatten(&rv(&[1.0, 3.0, 2.0, 4.0])).unwrap(), v);
        assert_eq!(flatten(&cvector_zero::<f64>(3).unwrap()), rv(&[0.0; 6]));
        assert!(matches!(unflatten(&rv(&[1.0, 2.0, 3.0])), Err(Error::Dimension(_))));
    }

    #[test]
    fn vector_space_examples() {
        let u = Vector::new(vec![exact((1, 2), (3, 1)), exact((-2, 1), (0, 1))]).unwrap();
        let z = cvector_zero(2).unwrap();
        assert_eq!(cvector_add(&u, &z).unwrap(), u);
        assert_eq!(cvector_add(&u, &cvector_neg(&u)).unwrap(), z);
        assert_eq!(cvector_smul(&cx(ratio(1, 1)), &u), u);
        assert_eq!(cvector_sub(&u, &u).unwrap(), z);
    }

    #[test]
    fn real_cross() {
        let x = rv(&[1.0, 0.0, 0.0]);
        let y = rv(&[0.0, 1.0, 0.0]);
        assert_eq!(rcross(&x, &y).unwrap(), rv(&[0.0, 0.0, 1.0]));
        assert!(rcross(&rv(&[1.0, 0.0]), &y).is_err());
        assert_eq!(rnorm(&rv(&[3.0, 4.0])), 5.0);
    }

    proptest! {
        #[test]
        fn flatten_bijection((u, _v) in cvec_pair()) {
            prop_assert_eq!(unflatten(&flatten(&u)).unwrap(), u.clone());
            let r = flatten(&u);
            prop_assert_eq!(flatten(&unflatten(&r).unwrap()), r);
        }

        #[test]
        fn flatten_transports_maps((u, v) in cvec_pair()) {
            // negation
            prop_assert_eq!(flatten(&cvector_neg(&u)), vector_map(|x: &Exact| -x.clone(), &flatten(&u)));
            // addition
            prop_assert_eq!(
                flatten(&cvector_add(&u, &v).unwrap()),
                radd(&flatten(&u), &flatten(&v)).unwrap()
            );
        }

        #[test]
        fn map2_componentwise((u, v) in cvec_pair(), op in 0usize..3) {
            let f = |a: &CScalar<Exact>, b: &CScalar<Exact>| match op {
                0 => a + b,
                1 => a * b,
                _ => a - b,
            };
            let w = vector_map2(f, &u, &v).unwrap();
            for i in 1..=u.dim() {
                prop_assert_eq!(w.component(i).unwrap(), &f(u.component(i).unwrap(), v.component(i).unwrap()));
            }
        }

        #[test]
        fn approx_eq_is_reflexive(parts in proptest::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 1..8)) {
            let v = cv(&parts);
            prop_assert!(cvector_approx_eq(&v, &v, &0.0));
        }
    }
}
