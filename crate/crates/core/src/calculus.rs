//! Noncommutative directional derivative and Laplacian, and the collapse to
//! commuting variables.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncpoly::{format_scalar, Letter, Poly, Scalar, Word};

fn require_h_free(p: &Poly) -> Result<()> {
    if p.contains_h() {
        return Err(Error::ContainsDirection);
    }
    Ok(())
}

fn check_index(p: &Poly, i: usize) -> Result<()> {
    if i == 0 || i > p.num_vars() {
        return Err(Error::VarOutOfRange {
            index: i,
            num_vars: p.num_vars(),
        });
    }
    Ok(())
}

/// `D[p, x_i, h]`: the sum over every occurrence of `x_i` of the word with
/// that occurrence replaced by `h`.
pub fn directional_derivative(p: &Poly, i: usize) -> Result<Poly> {
    check_index(p, i)?;
    require_h_free(p)?;
    Ok(replace_occurrences(p, i))
}

fn replace_occurrences(p: &Poly, i: usize) -> Poly {
    let target = Letter::X(i as u16);
    let mut out = Poly::zero(p.num_vars());
    for (w, c) in p.terms() {
        for (pos, l) in w.letters().iter().enumerate() {
            if *l == target {
                out.add_term(w.with_letter(pos, Letter::H), c.clone());
            }
        }
    }
    out
}

/// `Lap[p, h] = sum_i D[D[p, x_i, h], x_i, h]`.
///
/// Each ordered pair of distinct `x_i` positions in a word is replaced by
/// `h h`, which reproduces the second `t`-derivative including its factor 2.
pub fn laplacian(p: &Poly) -> Result<Poly> {
    require_h_free(p)?;
    let mut out = Poly::zero(p.num_vars());
    let two = Scalar::from_integer(2.into());
    for (w, c) in p.terms() {
        let letters = w.letters();
        let coeff = c * &two;
        for a in 0..letters.len() {
            for b in a + 1..letters.len() {
                if letters[a] == letters[b] {
                    let mut nl = letters.to_vec();
                    nl[a] = Letter::H;
                    nl[b] = Letter::H;
                    out.add_term(Word::new(nl), coeff.clone());
                }
            }
        }
    }
    Ok(out)
}

pub fn is_harmonic(p: &Poly) -> Result<bool> {
    Ok(laplacian(p)?.is_zero())
}

/// A polynomial in commuting variables `x1..xg` and `h`, keyed by exponent
/// vectors `(e_1, .., e_g, e_h)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommPoly {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl CommPoly {
    pub fn zero(num_vars: usize) -> CommPoly {
        CommPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    /// Multiplies by `h^k`.
    pub fn times_h_power(&self, k: u32) -> CommPoly {
        CommPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[self.num_vars] += k;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut factors = vec![format!("({c})")];
                for (k, &ek) in e.iter().enumerate() {
                    let name = if k == self.num_vars {
                        "h".to_string()
                    } else {
                        format!("x{}", k + 1)
                    };
                    match ek {
                        0 => {}
                        1 => factors.push(name),
                        _ => factors.push(format!("{name}^{ek}")),
                    }
                }
                factors.join("*")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[derive(Serialize)]
struct CommTermJson {
    coeff: String,
    exponents: Vec<u32>,
}

#[derive(Serialize)]
struct CommPolyJson {
    terms: Vec<CommTermJson>,
}

impl Serialize for CommPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CommPolyJson {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| CommTermJson {
                    coeff: format_scalar(c),
                    exponents: e.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// Lets every letter commute: words map to their letter counts.
pub fn commutative_collapse(p: &Poly) -> CommPoly {
    let g = p.num_vars();
    let mut out = CommPoly::zero(g);
    for (w, c) in p.terms() {
        let mut e = vec![0u32; g + 1];
        for l in w.letters() {
            match l {
                Letter::X(i) => e[usize::from(*i) - 1] += 1,
                Letter::H => e[g] += 1,
            }
        }
        out.add_term(e, c.clone());
    }
    out
}

/// The ordinary Laplacian `sum_i d^2/dx_i^2` over the commuting variables.
pub fn commutative_laplacian(cp: &CommPoly) -> Result<CommPoly> {
    let g = cp.num_vars;
    let mut out = CommPoly::zero(g);
    for (e, c) in &cp.terms {
        if e[g] != 0 {
            return Err(Error::ContainsDirection);
        }
        for i in 0..g {
            if e[i] >= 2 {
                let mut ne = e.clone();
                ne[i] -= 2;
                let f = Scalar::from_integer((i64::from(e[i]) * i64::from(e[i] - 1)).into());
                out.add_term(ne, c * f);
            }
        }
    }
    Ok(out)
}
