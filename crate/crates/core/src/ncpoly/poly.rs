use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{format_scalar, int, is_one, parse_scalar, Scalar};
use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// A polynomial in the free algebra on `x1..xg` and `h` with rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    num_vars: usize,
    terms: BTreeMap<Word, Scalar>,
}

/// Shape summary of a polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeProfile {
    pub total_degree: Option<usize>,
    pub h_degree_per_word: Vec<(Word, usize)>,
    pub homogeneous_degree: Option<usize>,
    pub is_symmetric: bool,
}

impl Poly {
    pub fn zero(num_vars: usize) -> Poly {
        Poly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Scalar) -> Poly {
        Poly::monomial(num_vars, Word::empty(), c)
    }

    pub fn one(num_vars: usize) -> Poly {
        Poly::constant(num_vars, int(1))
    }

    /// The variable `x_i` (1-based). Panics if `i` is out of range.
    pub fn var(num_vars: usize, i: usize) -> Poly {
        assert!(i >= 1 && i <= num_vars, "x{i} out of range");
        Poly::monomial(num_vars, Word::from_vars(&[i as u16]), int(1))
    }

    /// The direction letter `h`.
    pub fn direction(num_vars: usize) -> Poly {
        Poly::monomial(num_vars, Word::new(vec![Letter::H]), int(1))
    }

    pub fn monomial(num_vars: usize, word: Word, c: Scalar) -> Poly {
        let mut p = Poly::zero(num_vars);
        p.add_term(word, c);
        p
    }

    /// Builds a polynomial from `(word, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Poly>
    where
        I: IntoIterator<Item = (Word, Scalar)>,
    {
        let mut p = Poly::zero(num_vars);
        for (w, c) in terms {
            let m = w.max_var();
            if m > num_vars {
                return Err(Error::VarOutOfRange { index: m, num_vars });
            }
            p.add_term(w, c);
        }
        Ok(p)
    }

    /// Convenience constructor over variable-only words with integer
    /// coefficients, e.g. `Poly::from_ints(2, &[(1, &[1, 2]), (-1, &[2, 1])])`.
    pub fn from_ints(num_vars: usize, terms: &[(i64, &[u16])]) -> Poly {
        Poly::from_terms(
            num_vars,
            terms.iter().map(|(c, w)| (Word::from_vars(w), int(*c))),
        )
        .expect("variable index in range")
    }

    pub(crate) fn add_term(&mut self, word: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Terms in canonical (ascending) word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same polynomial viewed in a larger (or equal) variable count.
    pub fn with_num_vars(&self, num_vars: usize) -> Result<Poly> {
        Poly::from_terms(num_vars, self.terms.iter().map(|(w, c)| (w.clone(), c.clone())))
    }

    fn check_vars(&self, other: &Poly) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::VarsMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        let mut out = Poly::zero(self.num_vars);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.num_vars);
        }
        Poly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    pub fn transpose(&self) -> Poly {
        Poly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.transpose(), c.clone()))
                .collect(),
        }
    }

    /// Length of the longest word; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// Common word length if all words share one. The zero polynomial is
    /// reported as `None` since it has no degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Word::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(w, c)| self.terms.get(&w.transpose()) == Some(c))
    }

    pub fn contains_h(&self) -> bool {
        self.terms.keys().any(|w| w.h_count() > 0)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile {
            total_degree: self.degree(),
            h_degree_per_word: self
                .terms
                .keys()
                .map(|w| (w.clone(), w.h_count()))
                .collect(),
            homogeneous_degree: self.homogeneous_degree(),
            is_symmetric: self.is_symmetric(),
        }
    }

    /// `p^k`, with `p^0 = 1`.
    pub fn pow(&self, k: usize) -> Poly {
        let mut out = Poly::one(self.num_vars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Canonical text form: terms from the greatest word down, integer or
    /// `num/den` coefficients, unit coefficients omitted.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let coeff = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            if w.is_empty() {
                out.push_str(&coeff);
            } else if is_one(&mag) {
                out.push_str(&w.render());
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&w.render());
            }
        }
        out
    }

    /// Canonical compact JSON: `{"g":..,"terms":[{"coeff":"n/d","word":[..]}]}`
    /// with terms in ascending canonical order and `h` encoded as 0.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("poly serializes")
    }

    pub fn from_json(text: &str) -> Result<Poly> {
        let raw: PolyJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })?;
        raw.try_into()
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TermJson {
    pub coeff: String,
    pub word: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct PolyJson {
    pub g: usize,
    pub terms: Vec<TermJson>,
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> Self {
        PolyJson {
            g: p.num_vars,
            terms: p
                .terms
                .iter()
                .map(|(w, c)| TermJson {
                    coeff: format_scalar(c),
                    word: w.letters().iter().map(|l| l.code()).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for Poly {
    type Error = Error;

    fn try_from(raw: PolyJson) -> Result<Poly> {
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let c = parse_scalar(&t.coeff).ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("bad coefficient {:?}", t.coeff),
            })?;
            let word = t
                .word
                .iter()
                .map(|&code| {
                    Letter::from_code(code).ok_or_else(|| Error::Parse {
                        pos: 0,
                        msg: format!("bad letter code {code}"),
                    })
                })
                .collect::<Result<Word>>()?;
            terms.push((word, c));
        }
        Poly::from_terms(raw.g, terms)
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

// Operator forms panic on a variable-count mismatch; use the `checked_*`
// methods when operands come from user input.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("variable counts agree")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$checked(&rhs).expect("variable counts agree")
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$checked(rhs).expect("variable counts agree")
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$checked(&rhs).expect("variable counts agree")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
