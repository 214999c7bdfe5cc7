use nalgebra::DMatrix;

use super::poly::Poly;
use super::scalar::to_f64;
use super::word::Letter;
use crate::error::{Error, Result};

/// A tuple of real symmetric `n x n` matrices substituted for `x1..xg`, plus
/// an optional matrix for `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPoint {
    xs: Vec<DMatrix<f64>>,
    h: Option<DMatrix<f64>>,
}

/// Copies the upper triangle onto the lower one.
pub(crate) fn mirror_upper(mut m: DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    for i in 0..n {
        for j in 0..i {
            m[(i, j)] = m[(j, i)];
        }
    }
    m
}

impl MatrixPoint {
    /// Builds a point from square matrices of a common size. Each matrix is
    /// made symmetric by mirroring its upper triangle.
    pub fn new(xs: Vec<DMatrix<f64>>, h: Option<DMatrix<f64>>) -> Result<MatrixPoint> {
        let n = xs
            .first()
            .or(h.as_ref())
            .map(|m| m.nrows())
            .ok_or_else(|| Error::Dimension("no matrices supplied".into()))?;
        for m in xs.iter().chain(h.iter()) {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::Dimension(format!(
                    "expected {n}x{n}, got {}x{}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(MatrixPoint {
            xs: xs.into_iter().map(mirror_upper).collect(),
            h: h.map(mirror_upper),
        })
    }

    pub fn n(&self) -> usize {
        self.xs
            .first()
            .or(self.h.as_ref())
            .map(|m| m.nrows())
            .unwrap_or(0)
    }

    pub fn xs(&self) -> &[DMatrix<f64>] {
        &self.xs
    }

    pub fn h(&self) -> Option<&DMatrix<f64>> {
        self.h.as_ref()
    }

    pub fn with_h(&self, h: DMatrix<f64>) -> Result<MatrixPoint> {
        MatrixPoint::new(self.xs.clone(), Some(h))
    }
}

/// Substitutes the point into `p`: each word becomes the product of its
/// letters' matrices and the constant term becomes a multiple of `I_n`.
pub fn evaluate(p: &Poly, pt: &MatrixPoint) -> Result<DMatrix<f64>> {
    if pt.xs.len() < p.num_vars() {
        return Err(Error::Dimension(format!(
            "polynomial has {} variables but point supplies {} matrices",
            p.num_vars(),
            pt.xs.len()
        )));
    }
    let n = pt.n();
    let mut acc = DMatrix::<f64>::zeros(n, n);
    for (w, c) in p.terms() {
        let mut prod = DMatrix::<f64>::identity(n, n);
        for l in w.letters() {
            let m = match l {
                Letter::X(i) => &pt.xs[usize::from(*i) - 1],
                Letter::H => pt.h.as_ref().ok_or(Error::MissingDirectionMatrix)?,
            };
            prod = &prod * m;
        }
        acc += prod * to_f64(c);
    }
    Ok(acc)
}
