//! Exact linear algebra over the rationals.
//!
//! Nullspaces are computed by sparse fraction-free elimination over integers:
//! each row is scaled to a primitive integer vector and rows are combined as
//! `a*r - b*e`, dividing out the content after every step. Rationals only
//! appear during back substitution.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ncpoly::{Poly, Scalar, Word};

/// Sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow<T> = Vec<(usize, T)>;

fn primitive(row: SparseRow<Scalar>) -> SparseRow<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let ints: SparseRow<BigInt> = row
        .into_iter()
        .map(|(j, c)| (j, (c * BigRational::from_integer(lcm.clone())).to_integer()))
        .collect();
    normalize(ints)
}

fn normalize(mut row: SparseRow<BigInt>) -> SparseRow<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for (_, c) in &mut row {
            *c /= &g;
        }
    }
    if row.first().is_some_and(|(_, c)| c.is_negative()) {
        for (_, c) in &mut row {
            *c = -&*c;
        }
    }
    row
}

/// `a*r - b*e` for sparse integer rows.
fn combine(a: &BigInt, r: &SparseRow<BigInt>, b: &BigInt, e: &SparseRow<BigInt>) -> SparseRow<BigInt> {
    let mut out = Vec::with_capacity(r.len() + e.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < e.len() {
        let take_r = j >= e.len() || (i < r.len() && r[i].0 < e[j].0);
        let take_e = i >= r.len() || (j < e.len() && e[j].0 < r[i].0);
        if take_r {
            out.push((r[i].0, a * &r[i].1));
            i += 1;
        } else if take_e {
            out.push((e[j].0, -(b * &e[j].1)));
            j += 1;
        } else {
            let v = a * &r[i].1 - b * &e[j].1;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form keyed by leading column.
struct Echelon {
    rows: BTreeMap<usize, SparseRow<BigInt>>,
}

impl Echelon {
    fn insert(&mut self, mut row: SparseRow<BigInt>) {
        loop {
            let Some(&(lead, ref lc)) = row.first() else {
                return;
            };
            match self.rows.get(&lead) {
                None => {
                    self.rows.insert(lead, row);
                    return;
                }
                Some(e) => {
                    let ec = &e[0].1;
                    let g = lc.gcd(ec);
                    let (a, b) = (ec / &g, lc / &g);
                    row = normalize(combine(&a, &row, &b, e));
                }
            }
        }
    }
}

/// Basis of `{v : A v = 0}` for the sparse matrix `A` with `ncols` columns,
/// returned in reduced row echelon form (leading entries 1, increasing
/// leading columns).
pub fn nullspace(rows: impl IntoIterator<Item = SparseRow<Scalar>>, ncols: usize) -> Vec<Vec<Scalar>> {
    let mut ech = Echelon {
        rows: BTreeMap::new(),
    };
    for r in rows {
        let r: SparseRow<Scalar> = r.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        ech.insert(primitive(r));
    }
    let pivots: BTreeSet<usize> = ech.rows.keys().copied().collect();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x: Vec<Scalar> = vec![Scalar::zero(); ncols];
        x[f] = Scalar::one();
        for (&lead, row) in ech.rows.iter().rev() {
            let mut s = Scalar::zero();
            for (j, c) in &row[1..] {
                if !x[*j].is_zero() {
                    s += &x[*j] * BigRational::from_integer(c.clone());
                }
            }
            if !s.is_zero() {
                x[lead] = -s / BigRational::from_integer(row[0].1.clone());
            }
        }
        basis.push(x);
    }
    rref(basis).0
}

/// Reduced row echelon form of dense rational rows; zero rows are dropped.
/// Returns the rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Scalar>>) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Scalar>>) -> usize {
    rref(rows).1.len()
}

/// Coordinates of the given polynomials over the union of their words.
pub fn coordinate_rows(polys: &[&Poly]) -> (Vec<Word>, Vec<Vec<Scalar>>) {
    let words: BTreeSet<Word> = polys.iter().flat_map(|p| p.words().cloned()).collect();
    let words: Vec<Word> = words.into_iter().collect();
    let rows = polys
        .iter()
        .map(|p| words.iter().map(|w| p.coeff(w)).collect())
        .collect();
    (words, rows)
}

/// Rank of a list of polynomials viewed as vectors.
pub fn poly_rank(polys: &[&Poly]) -> usize {
    let (_, rows) = coordinate_rows(polys);
    if rows.iter().all(|r| r.is_empty()) {
        return 0;
    }
    rank(rows)
}

/// Reduced echelon basis (leading coefficient 1) of the span of `polys`.
pub fn span_basis(polys: &[&Poly], num_vars: usize) -> Vec<Poly> {
    let (words, rows) = coordinate_rows(polys);
    if words.is_empty() {
        return Vec::new();
    }
    rref(rows)
        .0
        .into_iter()
        .map(|row| {
            Poly::from_terms(num_vars, words.iter().cloned().zip(row))
                .expect("words come from polynomials in the same variables")
        })
        .collect()
}

/// Solves `target = sum_k c_k gens[k]` exactly. When the generators are
/// dependent, free coefficients are set to zero. `None` if `target` is not in
/// the span.
pub fn solve_in_span(target: &Poly, gens: &[&Poly]) -> Option<Vec<Scalar>> {
    let mut all: Vec<&Poly> = gens.to_vec();
    all.push(target);
    let (words, cols) = coordinate_rows(&all);
    let k = gens.len();
    // augmented system: one row per word, columns = generators + target
    let rows: Vec<Vec<Scalar>> = (0..words.len())
        .map(|w| (0..=k).map(|j| cols[j][w].clone()).collect())
        .collect();
    if rows.is_empty() {
        return Some(vec![Scalar::zero(); k]);
    }
    let (red, pivots) = rref(rows);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut sol = vec![Scalar::zero(); k];
    for (row, &p) in red.iter().zip(&pivots) {
        sol[p] = row[k].clone();
    }
    Some(sol)
}

/// Inverse of a square rational matrix, if it exists.
pub fn inverse(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let aug: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}
