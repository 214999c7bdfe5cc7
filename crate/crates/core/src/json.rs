//! Canonical JSON helpers: rationals as `"num/den"`, doubles with 17
//! significant digits, matrices as row-major nested arrays.

use nalgebra::DMatrix;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::ncpoly::{format_scalar, Scalar};

/// Formats a double with 17 significant digits (`null` when not finite).
pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

/// A double serialized with [`format_f64`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F17(pub f64);

impl Serialize for F17 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawValue::from_string(format_f64(self.0))
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

/// A rational serialized as `"num/den"`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rat<'a>(pub &'a Scalar);

impl Serialize for Rat<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(self.0))
    }
}

pub fn serialize_scalar<S: Serializer>(c: &Scalar, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_scalar(c))
}

pub fn serialize_scalars<S: Serializer>(cs: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(cs.len()))?;
    for c in cs {
        seq.serialize_element(&Rat(c))?;
    }
    seq.end()
}

pub fn serialize_scalar_matrix<S: Serializer>(m: &[Vec<Scalar>], s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m
        .iter()
        .map(|r| r.iter().map(format_scalar).collect())
        .collect();
    rows.serialize(s)
}

pub fn serialize_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    F17(*x).serialize(s)
}

pub fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<F17>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| F17(m[(i, j)])).collect())
        .collect()
}

pub fn serialize_matrix<S: Serializer>(m: &DMatrix<f64>, s: S) -> Result<S::Ok, S::Error> {
    matrix_rows(m).serialize(s)
}

pub fn serialize_matrices<S: Serializer>(ms: &[DMatrix<f64>], s: S) -> Result<S::Ok, S::Error> {
    let all: Vec<Vec<Vec<F17>>> = ms.iter().map(matrix_rows).collect();
    all.serialize(s)
}

pub fn serialize_opt_matrix<S: Serializer>(m: &Option<DMatrix<f64>>, s: S) -> Result<S::Ok, S::Error> {
    m.as_ref().map(matrix_rows).serialize(s)
}

/// Compact JSON with struct field order preserved.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("value serializes")
}
