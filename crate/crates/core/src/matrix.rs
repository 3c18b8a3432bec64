//! Complex matrices stored as vectors of row vectors.
//!
//! Negation, conjugation, addition and scalar multiplication are the vector
//! combinators applied row by row; multiplication sums `m1$i$k * m2$k$j`.

use crate::error::{Error, Result};
use crate::scalar::{cx, CScalar, Real};
use crate::vector::{
    cvector_add, cvector_cnj, cvector_neg, cvector_smul, vector_map, vector_map2, CVector, Vector,
};

#[derive(Clone, PartialEq)]
pub struct CMatrix<T> {
    rows: Vector<CVector<T>>,
}

impl<T: Real> std::fmt::Debug for CMatrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.rows.fmt(f)
    }
}

impl<T: Real> CMatrix<T> {
    /// Builds a matrix from its rows; all rows must share one length.
    pub fn from_rows(rows: Vec<CVector<T>>) -> Result<Self> {
        let rows = Vector::new(rows)?;
        let n = rows.as_slice()[0].dim();
        if let Some(bad) = rows.iter().find(|r| r.dim() != n) {
            return Err(Error::dim_mismatch("ragged matrix rows", n, bad.dim()));
        }
        Ok(CMatrix { rows })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> CScalar<T>,
    ) -> Result<Self> {
        let rows = Vector::from_fn(rows, |i| Vector::from_fn(cols, |j| f(i, j)))?;
        let rows = rows.into_vec().into_iter().collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn zero(rows: usize, cols: usize) -> Result<Self> {
        Self::from_fn(rows, cols, |_, _| cx(T::zero()))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, n, |i, j| cx(if i == j { T::one() } else { T::zero() }))
    }

    /// `dim × 1` matrix holding `v`.
    pub fn column(v: &CVector<T>) -> Self {
        CMatrix {
            rows: vector_map(|z: &CScalar<T>| Vector::new(vec![z.clone()]).expect("dim 1"), v),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows.dim()
    }

    pub fn cols(&self) -> usize {
        self.rows.as_slice()[0].dim()
    }

    /// Entry `m$i$j`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> Result<&CScalar<T>> {
        self.rows.component(i)?.component(j)
    }

    pub fn row(&self, i: usize) -> Result<&CVector<T>> {
        self.rows.component(i)
    }

    /// Column `j` as a vector.
    pub fn col(&self, j: usize) -> Result<CVector<T>> {
        let entries = self
            .rows
            .iter()
            .map(|r| r.component(j).cloned())
            .collect::<Result<Vec<_>>>()?;
        Vector::new(entries)
    }
}

pub fn cmatrix_neg<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    CMatrix {
        rows: vector_map(cvector_neg, &m.rows),
    }
}

pub fn cmatrix_cnj<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    CMatrix {
        rows: vector_map(cvector_cnj, &m.rows),
    }
}

pub fn cmatrix_add<T: Real>(m1: &CMatrix<T>, m2: &CMatrix<T>) -> Result<CMatrix<T>> {
    if m1.cols() != m2.cols() {
        return Err(Error::dim_mismatch("cmatrix_add columns", m1.cols(), m2.cols()));
    }
    let rows = vector_map2(cvector_add, &m1.rows, &m2.rows)?;
    let rows = rows.into_vec().into_iter().collect::<Result<Vec<_>>>()?;
    CMatrix::from_rows(rows)
}

pub fn cmatrix_smul<T: Real>(a: &CScalar<T>, m: &CMatrix<T>) -> CMatrix<T> {
    CMatrix {
        rows: vector_map(|r| cvector_smul(a, r), &m.rows),
    }
}

/// `(m1 m2)$i$j = Σ_k m1$i$k · m2$k$j`.
pub fn cmatrix_mul<T: Real>(m1: &CMatrix<T>, m2: &CMatrix<T>) -> Result<CMatrix<T>> {
    if m1.cols() != m2.rows() {
        return Err(Error::dim_mismatch("cmatrix_mul inner dimension", m1.cols(), m2.rows()));
    }
    let inner = m1.cols();
    CMatrix::from_fn(m1.rows(), m2.cols(), |i, j| {
        (1..=inner).fold(cx(T::zero()), |s, k| {
            s + m1.rows.as_slice()[i - 1].as_slice()[k - 1].clone()
                * m2.rows.as_slice()[k - 1].as_slice()[j - 1].clone()
        })
    })
}

/// `(m v)$i = Σ_k m$i$k · v$k`.
pub fn cmatrix_cvector_mul<T: Real>(m: &CMatrix<T>, v: &CVector<T>) -> Result<CVector<T>> {
    if m.cols() != v.dim() {
        return Err(Error::dim_mismatch("cmatrix_cvector_mul", m.cols(), v.dim()));
    }
    let sums = vector_map(
        |row: &CVector<T>| {
            row.iter()
                .zip(v)
                .fold(cx(T::zero()), |s, (a, b)| s + a * b)
        },
        &m.rows,
    );
    Ok(sums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{exact, ratio, Exact};
    use crate::vector::cvector_zero;

    use num_complex::Complex;
    use proptest::prelude::*;

    fn m(rows: &[&[(i64, i64)]]) -> CMatrix<Exact> {
        CMatrix::from_rows(
            rows.iter()
                .map(|r| Vector::new(r.iter().map(|&(a, b)| exact((a, 1), (b, 1))).collect()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    /// Triple loop over plain nested Vecs, no shared code with cmatrix_mul.
    fn naive_mul(a: &CMatrix<Exact>, b: &CMatrix<Exact>) -> Vec<Vec<CScalar<Exact>>> {
        let a: Vec<Vec<_>> = (1..=a.rows()).map(|i| a.row(i).unwrap().as_slice().to_vec()).collect();
        let b: Vec<Vec<_>> = (1..=b.rows()).map(|i| b.row(i).unwrap().as_slice().to_vec()).collect();
        let mut out = vec![vec![exact((0, 1), (0, 1)); b[0].len()]; a.len()];
        for i in 0..a.len() {
            for j in 0..b[0].len() {
                for k in 0..b.len() {
                    out[i][j] = &out[i][j] + &a[i][k] * &b[k][j];
                }
            }
        }
        out
    }

    fn as_nested(a: &CMatrix<Exact>) -> Vec<Vec<CScalar<Exact>>> {
        (1..=a.rows()).map(|i| a.row(i).unwrap().as_slice().to_vec()).collect()
    }

    fn cexact() -> impl Strategy<Value = CScalar<Exact>> {
        ((-9i64..=9, 1i64..=5), (-9i64..=9, 1i64..=5))
            .prop_map(|((a, b), (c, d))| Complex::new(ratio(a, b), ratio(c, d)))
    }

    fn mat(r: usize, c: usize) -> impl Strategy<Value = CMatrix<Exact>> {
        proptest::collection::vec(proptest::collection::vec(cexact(), c), r).prop_map(|rows| {
            CMatrix::from_rows(rows.into_iter().map(|r| Vector::new(r).unwrap()).collect()).unwrap()
        })
    }

    #[test]
    fn elementwise_examples() {
        let a = m(&[&[(1, 2), (0, -1)], &[(3, 0), (-2, 5)]]);
        assert_eq!(cmatrix_add(&a, &cmatrix_neg(&a)).unwrap(), CMatrix::zero(2, 2).unwrap());
        assert_eq!(cmatrix_cnj(&cmatrix_cnj(&a)), a);
        assert_eq!(cmatrix_smul(&exact((1, 1), (0, 1)), &a), a);
        assert!(cmatrix_add(&a, &CMatrix::zero(2, 3).unwrap()).is_err());
        assert!(cmatrix_add(&a, &CMatrix::zero(3, 2).unwrap()).is_err());
        assert_eq!(*a.entry(2, 2).unwrap(), exact((-2, 1), (5, 1)));
        assert!(a.entry(3, 1).is_err());
        assert!(CMatrix::from_rows(vec![
            Vector::new(vec![exact((1, 1), (0, 1))]).unwrap(),
            Vector::new(vec![exact((1, 1), (0, 1)); 2]).unwrap()
        ])
        .is_err());
    }

    #[test]
    fn mul_examples() {
        let a = m(&[&[(1, 2), (0, -1), (4, 0)], &[(3, 0), (-2, 5), (0, 0)]]);
        assert_eq!(cmatrix_mul(&CMatrix::identity(2).unwrap(), &a).unwrap(), a);
        // [[i,0],[0,1]]·[[1,1],[0,i]] = [[i,i],[0,i]]
        let p = m(&[&[(0, 1), (0, 0)], &[(0, 0), (1, 0)]]);
        let q = m(&[&[(1, 0), (1, 0)], &[(0, 0), (0, 1)]]);
        assert_eq!(cmatrix_mul(&p, &q).unwrap(), m(&[&[(0, 1), (0, 1)], &[(0, 0), (0, 1)]]));
        assert_eq!(as_nested(&cmatrix_mul(&p, &q).unwrap()), naive_mul(&p, &q));
        assert!(matches!(cmatrix_mul(&a, &p), Err(Error::Dimension(_))));
    }

    #[test]
    fn matrix_vector_examples() {
        let v = Vector::new(vec![exact((0, 1), (1, 1)), exact((1, 1), (0, 1))]).unwrap();
        assert_eq!(cmatrix_cvector_mul(&CMatrix::identity(2).unwrap(), &v).unwrap(), v);
        let z = CMatrix::<Exact>::zero(3, 2).unwrap();
        assert_eq!(cmatrix_cvector_mul(&z, &v).unwrap(), cvector_zero(3).unwrap());
        // [[1, i]]·(i, 1) = (2i)
        let row = m(&[&[(1, 0), (0, 1)]]);
        assert_eq!(
            cmatrix_cvector_mul(&row, &v).unwrap(),
            Vector::new(vec![exact((0, 1), (2, 1))]).unwrap()
        );
        assert!(cmatrix_cvector_mul(&row, &Vector::new(vec![exact((1, 1), (0, 1))]).unwrap()).is_err());
    }

    proptest! {
        #[test]
        fn mul_matches_triple_loop((a, b) in (1usize..=5, 1usize..=5, 1usize..=5).prop_flat_map(|(r, k, c)| (mat(r, k), mat(k, c)))) {
            prop_assert_eq!(as_nested(&cmatrix_mul(&a, &b).unwrap()), naive_mul(&a, &b));
        }

        #[test]
        fn mul_associative((a, b, c) in (1usize..=4, 1usize..=4, 1usize..=4, 1usize..=4).prop_flat_map(|(p, q, r, s)| (mat(p, q), mat(q, r), mat(r, s)))) {
            let left = cmatrix_mul(&cmatrix_mul(&a, &b).unwrap(), &c).unwrap();
            let right = cmatrix_mul(&a, &cmatrix_mul(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn mul_distributes((a, b, c, d) in (1usize..=4, 1usize..=4, 1usize..=4).prop_flat_map(|(p, q, r)| (mat(p, q), mat(q, r), mat(q, r), mat(p, q)))) {
            prop_assert_eq!(
                cmatrix_mul(&a, &cmatrix_add(&b, &c).unwrap()).unwrap(),
                cmatrix_add(&cmatrix_mul(&a, &b).unwrap(), &cmatrix_mul(&a, &c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                cmatrix_mul(&cmatrix_add(&a, &d).unwrap(), &b).unwrap(),
                cmatrix_add(&cmatrix_mul(&a, &b).unwrap(), &cmatrix_mul(&d, &b).unwrap()).unwrap()
            );
            prop_assert_eq!(
                cmatrix_cnj(&cmatrix_mul(&a, &b).unwrap()),
                cmatrix_mul(&cmatrix_cnj(&a), &cmatrix_cnj(&b)).unwrap()
            );
        }

        #[test]
        fn matrix_vector_is_column_product((a, v) in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| (mat(r, c), mat(c, 1)))) {
            let v = v.col(1).unwrap();
            let direct = cmatrix_cvector_mul(&a, &v).unwrap();
            let via = cmatrix_mul(&a, &CMatrix::column(&v)).unwrap().col(1).unwrap();
            prop_assert_eq!(direct, via);
        }
    }
}
