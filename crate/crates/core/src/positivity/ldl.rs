use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Largest absolute entry.
pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.abs()))
}

fn check_symmetric(m: &DMatrix<f64>) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::Dimension(format!("{}x{} matrix is not square", m.nrows(), m.ncols())));
    }
    let skew = max_abs(&(m - m.transpose()));
    if skew.is_nan() || skew > 1e-12 * max_abs(m).max(1.0) {
        return Err(Error::NonSymmetricMatrix { skew });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct LdlResult {
    pub pivots: Vec<f64>,
    pub psd: bool,
}

/// Symmetric elimination with diagonal pivoting, largest remaining
/// `|diagonal|` first. Once every remaining diagonal is within `tol` of zero
/// the rest of the matrix must vanish within `tol` for the result to be PSD.
pub fn ldl_pivots(m: &DMatrix<f64>, tol: f64) -> Result<LdlResult> {
    check_symmetric(m)?;
    let mut a = (m + m.transpose()) * 0.5;
    let mut rest: Vec<usize> = (0..a.nrows()).collect();
    let mut pivots = Vec::with_capacity(rest.len());
    let mut psd = true;
    while !rest.is_empty() {
        let (pos, &k) = rest
            .iter()
            .enumerate()
            .max_by(|(_, &i), (_, &j)| a[(i, i)].abs().total_cmp(&a[(j, j)].abs()))
            .unwrap();
        let d = a[(k, k)];
        if d.abs() <= tol {
            for &i in &rest {
                pivots.push(a[(i, i)]);
                for &j in &rest {
                    if i != j && a[(i, j)].abs() > tol {
                        psd = false;
                    }
                }
            }
            break;
        }
        pivots.push(d);
        if d < -tol {
            psd = false;
        }
        rest.swap_remove(pos);
        for &i in &rest {
            let f = a[(i, k)] / d;
            for &j in &rest {
                a[(i, j)] -= f * a[(k, j)];
            }
        }
    }
    Ok(LdlResult { pivots, psd })
}

/// Smallest eigenvalue (`+inf` for an empty matrix).
pub fn min_eigenvalue(m: &DMatrix<f64>) -> Result<f64> {
    check_symmetric(m)?;
    if m.is_empty() {
        return Ok(f64::INFINITY);
    }
    let sym = (m + m.transpose()) * 0.5;
    Ok(SymmetricEigen::new(sym).eigenvalues.min())
}
