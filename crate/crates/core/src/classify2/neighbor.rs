use std::collections::BTreeMap;

use serde::Serialize;

use crate::calculus::laplacian;
use crate::error::{Error, Result};
use crate::ncpoly::{Poly, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Right,
    Left,
}

/// `p = sum_t x^t p_t + remainder` (right) or `p = sum_t p_t x^t + remainder`
/// (left), with `|t| = m` and the remainder collecting words shorter than `m`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NeighborDecomposition {
    pub side: Side,
    pub m: usize,
    pub parts: BTreeMap<Word, Poly>,
    pub remainder: Poly,
}

impl NeighborDecomposition {
    pub fn reconstruct(&self) -> Poly {
        let g = self.remainder.num_vars();
        let mut out = self.remainder.clone();
        for (t, pt) in &self.parts {
            for (w, c) in pt.terms() {
                let word = match self.side {
                    Side::Right => t.concat(w),
                    Side::Left => w.concat(t),
                };
                out.add_term(word, c.clone());
            }
        }
        debug_assert_eq!(out.num_vars(), g);
        out
    }
}

pub(crate) fn split(p: &Poly, m: usize, side: Side) -> NeighborDecomposition {
    let g = p.num_vars();
    let mut parts: BTreeMap<Word, Poly> = BTreeMap::new();
    let mut remainder = Poly::zero(g);
    for (w, c) in p.terms() {
        if w.len() < m {
            remainder.add_term(w.clone(), c.clone());
            continue;
        }
        let (t, rest) = match side {
            Side::Right => (w.slice(0, m), w.slice(m, w.len())),
            Side::Left => (w.slice(w.len() - m, w.len()), w.slice(0, w.len() - m)),
        };
        parts
            .entry(t)
            .or_insert_with(|| Poly::zero(g))
            .add_term(rest, c.clone());
    }
    NeighborDecomposition {
        side,
        m,
        parts,
        remainder,
    }
}

fn checked_split(p: &Poly, m: usize, side: Side) -> Result<NeighborDecomposition> {
    if p.contains_h() {
        return Err(Error::ContainsDirection);
    }
    let bound = p.degree().unwrap_or(0);
    if m == 0 || m >= bound {
        return Err(Error::InvalidArgument(format!(
            "split length {m} must lie strictly between 0 and the degree {bound}"
        )));
    }
    Ok(split(p, m, side))
}

pub fn right_neighbor(p: &Poly, m: usize) -> Result<NeighborDecomposition> {
    checked_split(p, m, Side::Right)
}

pub fn left_neighbor(p: &Poly, m: usize) -> Result<NeighborDecomposition> {
    checked_split(p, m, Side::Left)
}

/// Words `t` whose right neighbor `p_t` is not harmonic.
pub fn neighbor_harmonicity_check(p: &Poly, m: usize) -> Result<Vec<Word>> {
    if !p.is_zero() && p.homogeneous_degree().is_none() {
        return Err(Error::NotHomogeneous);
    }
    let dec = checked_split(p, m, Side::Right)?;
    let mut failing = Vec::new();
    for (t, pt) in &dec.parts {
        if !laplacian(pt)?.is_zero() {
            failing.push(t.clone());
        }
    }
    Ok(failing)
}
