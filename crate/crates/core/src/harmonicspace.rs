//! Harmonic polynomials: the real and imaginary parts of `(x1 + i x2)^d`, and
//! exact harmonic bases in any number of variables.

use std::collections::HashMap;

use num_traits::Zero;

use crate::calculus::laplacian;
use crate::error::{Error, Result};
use crate::exact::{nullspace, SparseRow};
use crate::ncpoly::{Letter, Poly, Scalar, Word};

/// `(Re, Im)` of `gamma^d` with `gamma = x1 + i x2`, built from
/// `Re_d = x1 Re_{d-1} - x2 Im_{d-1}` and `Im_d = x1 Im_{d-1} + x2 Re_{d-1}`.
pub fn gamma_power_parts(d: usize) -> Result<(Poly, Poly)> {
    if d < 1 {
        return Err(Error::InvalidArgument("gamma power needs d >= 1".into()));
    }
    let x1 = Poly::var(2, 1);
    let x2 = Poly::var(2, 2);
    let (mut re, mut im) = (x1.clone(), x2.clone());
    for _ in 1..d {
        let next_re = &x1 * &re - &x2 * &im;
        let next_im = &x1 * &im + &x2 * &re;
        re = next_re;
        im = next_im;
    }
    Ok((re, im))
}

/// Coefficient matrix of the Laplacian on degree-`d` words.
///
/// Column `c` holds the coefficients of `Lap[cols[c]]` over the row words,
/// which are all degree-`d` words with exactly two `h` letters.
#[derive(Clone, Debug)]
pub struct LaplacianMatrix {
    pub rows: Vec<Word>,
    pub cols: Vec<Word>,
    pub entries: Vec<SparseRow<Scalar>>,
}

impl LaplacianMatrix {
    pub fn dense(&self) -> Vec<Vec<Scalar>> {
        self.entries
            .iter()
            .map(|r| {
                let mut row = vec![Scalar::zero(); self.cols.len()];
                for (j, c) in r {
                    row[*j] = c.clone();
                }
                row
            })
            .collect()
    }
}

fn two_h_words(g: usize, d: usize) -> Vec<Word> {
    if d < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rest in Word::enumerate(g, d - 2) {
        for a in 0..d {
            for b in a + 1..d {
                let mut letters = Vec::with_capacity(d);
                let mut it = rest.letters().iter();
                for pos in 0..d {
                    if pos == a || pos == b {
                        letters.push(Letter::H);
                    } else {
                        letters.push(*it.next().unwrap());
                    }
                }
                out.push(Word::new(letters));
            }
        }
    }
    out.sort();
    out
}

pub fn laplacian_coefficient_matrix(g: usize, d: usize) -> LaplacianMatrix {
    let cols = Word::enumerate(g, d);
    let rows = two_h_words(g, d);
    let index: HashMap<&Word, usize> = rows.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut entries: Vec<SparseRow<Scalar>> = vec![Vec::new(); rows.len()];
    for (c, w) in cols.iter().enumerate() {
        let lap = laplacian(&Poly::monomial(g, w.clone(), Scalar::from_integer(1.into())))
            .expect("variable words are h-free");
        for (rw, coeff) in lap.terms() {
            entries[index[rw]].push((c, coeff.clone()));
        }
    }
    LaplacianMatrix {
        rows,
        cols,
        entries,
    }
}

/// Exact basis of the homogeneous degree-`d` harmonic polynomials in `g`
/// variables, in reduced echelon form over the canonical word order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicBasis {
    pub g: usize,
    pub d: usize,
    pub elements: Vec<Poly>,
    /// Canonical enumeration of the degree-`d` words used as coordinates.
    pub word_index: Vec<Word>,
    /// Leading (pivot) word position of each element in `word_index`.
    pub pivots: Vec<usize>,
}

impl HarmonicBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn pivot_words(&self) -> Vec<Word> {
        self.pivots.iter().map(|&p| self.word_index[p].clone()).collect()
    }
}

pub fn harmonic_basis(g: usize, d: usize) -> Result<HarmonicBasis> {
    if g < 1 || d < 1 {
        return Err(Error::InvalidArgument("harmonic basis needs g >= 1 and d >= 1".into()));
    }
    let lm = laplacian_coefficient_matrix(g, d);
    let ncols = lm.cols.len();
    let vectors = nullspace(lm.entries, ncols);
    let mut elements = Vec::with_capacity(vectors.len());
    let mut pivots = Vec::with_capacity(vectors.len());
    for v in &vectors {
        pivots.push(v.iter().position(|c| !c.is_zero()).expect("nonzero basis vector"));
        let p = Poly::from_terms(
            g,
            lm.cols.iter().cloned().zip(v.iter().cloned()),
        )?;
        elements.push(p);
    }
    Ok(HarmonicBasis {
        g,
        d,
        elements,
        word_index: lm.cols,
        pivots,
    })
}

/// Exact coordinates of `p` in the basis, or `None` when `p` is outside the
/// span.
pub fn express_in_basis(p: &Poly, basis: &HarmonicBasis) -> Result<Option<Vec<Scalar>>> {
    if p.num_vars() != basis.g {
        return Err(Error::VarsMismatch {
            left: p.num_vars(),
            right: basis.g,
        });
    }
    if !p.is_zero() && p.homogeneous_degree() != Some(basis.d) {
        return Err(Error::NotHomogeneous);
    }
    if p.contains_h() {
        return Err(Error::ContainsDirection);
    }
    let coords: Vec<Scalar> = basis
        .pivots
        .iter()
        .map(|&pv| p.coeff(&basis.word_index[pv]))
        .collect();
    let mut rebuilt = Poly::zero(basis.g);
    for (c, e) in coords.iter().zip(&basis.elements) {
        rebuilt = rebuilt + e.scale(c);
    }
    Ok((rebuilt == *p).then_some(coords))
}

/// For each basis element, the first word (canonical order) that occurs in it
/// and in no other element. `None` if some element has no such word.
pub fn check_independence_property(basis: &HarmonicBasis) -> Option<Vec<Word>> {
    let mut counts: HashMap<&Word, usize> = HashMap::new();
    for e in &basis.elements {
        for w in e.words() {
            *counts.entry(w).or_default() += 1;
        }
    }
    basis
        .elements
        .iter()
        .map(|e| e.words().find(|w| counts[w] == 1).cloned())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::directional_derivative;
    use crate::exact::poly_rank;
    use crate::ncpoly::parse;

    fn p2(s: &str) -> Poly {
        parse(s, 2).unwrap()
    }

    /// Independent expansion of (x1 + i x2)^d: enumerate every word and
    /// multiply the unit factors 1 (for x1) and i (for x2).
    fn gamma_by_enumeration(d: usize) -> (Poly, Poly) {
        let mut re = Poly::zero(2);
        let mut im = Poly::zero(2);
        for w in Word::enumerate(2, d) {
            let k = w.letters().iter().filter(|l| **l == Letter::X(2)).count();
            // i^k
            let (r, i) = match k % 4 {
                0 => (1, 0),
                1 => (0, 1),
                2 => (-1, 0),
                _ => (0, -1),
            };
            re = re + Poly::monomial(2, w.clone(), Scalar::from_integer(r.into()));
            im = im + Poly::monomial(2, w, Scalar::from_integer(i.into()));
        }
        (re, im)
    }

    #[test]
    fn gamma_low_degrees() {
        assert_eq!(gamma_power_parts(1).unwrap(), (p2("x1"), p2("x2")));
        assert_eq!(gamma_power_parts(2).unwrap(), (p2("x1^2 - x2^2"), p2("x1*x2 + x2*x1")));
        assert!(gamma_power_parts(0).is_err());
    }

    #[test]
    fn gamma_matches_enumeration() {
        for d in 1..=8 {
            let (re, im) = gamma_power_parts(d).unwrap();
            assert_eq!((re.clone(), im.clone()), gamma_by_enumeration(d), "d = {d}");
            assert!(re.is_symmetric() && im.is_symmetric());
            assert_eq!(re.homogeneous_degree(), Some(d));
            assert_eq!(re.len() + im.len(), 1 << d);
        }
    }

    #[test]
    fn degree_three_span_matches_hand_basis() {
        let (re, im) = gamma_power_parts(3).unwrap();
        let a = p2("x2^3 - x1^2*x2 - x2*x1^2 - x1*x2*x1");
        let b = p2("-x1^3 + x1*x2^2 + x2^2*x1 + x2*x1*x2");
        assert_eq!(poly_rank(&[&re, &im, &a, &b]), 2);
    }

    #[test]
    fn symmetry_identities() {
        for d in 1..=12 {
            let (re, im) = gamma_power_parts(d).unwrap();
            let d = |p: &Poly, i| directional_derivative(p, i).unwrap();
            assert_eq!(d(&re, 1), d(&im, 2));
            assert_eq!(d(&re, 2), -d(&im, 1));
            assert!(laplacian(&re).unwrap().is_zero());
            assert!(laplacian(&im).unwrap().is_zero());
            assert_eq!(poly_rank(&[&re, &im]), 2);
        }
    }

    #[test]
    fn coefficient_matrix_shapes() {
        let lm = laplacian_coefficient_matrix(2, 3);
        assert_eq!(lm.cols.len(), 8);
        assert_eq!(lm.rows.len(), 6);
        assert_eq!(crate::exact::rank(lm.dense()), 6);

        let lm = laplacian_coefficient_matrix(1, 2);
        assert_eq!(lm.cols.len(), 1);
        assert_eq!(lm.dense(), vec![vec![Scalar::from_integer(2.into())]]);
        assert_eq!(harmonic_basis(1, 2).unwrap().dim(), 0);

        assert_eq!(laplacian_coefficient_matrix(2, 2).cols.len(), 4);
        assert_eq!(harmonic_basis(2, 2).unwrap().dim(), 3);
    }

    #[test]
    fn small_bases() {
        let b = harmonic_basis(2, 2).unwrap();
        assert_eq!(b.elements, vec![p2("x1^2 - x2^2"), p2("x1*x2"), p2("x2*x1")]);
        assert_eq!(
            check_independence_property(&b).unwrap(),
            vec![Word::from_vars(&[1, 1]), Word::from_vars(&[1, 2]), Word::from_vars(&[2, 1])]
        );
        assert_eq!(harmonic_basis(3, 2).unwrap().dim(), 8);
        assert_eq!(harmonic_basis(2, 1).unwrap().dim(), 2);
    }

    #[test]
    fn degree_five_is_gamma_span() {
        let b = harmonic_basis(2, 5).unwrap();
        assert_eq!(b.dim(), 2);
        let (re, im) = gamma_power_parts(5).unwrap();
        let mut all: Vec<&Poly> = b.elements.iter().collect();
        all.push(&re);
        all.push(&im);
        assert_eq!(poly_rank(&all), 2);
    }

    #[test]
    fn expressing_in_basis() {
        let b4 = harmonic_basis(2, 4).unwrap();
        let (re4, _) = gamma_power_parts(4).unwrap();
        let coords = express_in_basis(&re4, &b4).unwrap().unwrap();
        let mut rebuilt = Poly::zero(2);
        for (c, e) in coords.iter().zip(&b4.elements) {
            rebuilt = rebuilt + e.scale(c);
        }
        assert_eq!(rebuilt, re4);

        let b3 = harmonic_basis(2, 3).unwrap();
        assert_eq!(express_in_basis(&p2("x2^3"), &b3).unwrap(), None);
        assert_eq!(
            express_in_basis(&Poly::zero(2), &b3).unwrap(),
            Some(vec![Scalar::zero(), Scalar::zero()])
        );
        assert!(express_in_basis(&p2("x1^2"), &b3).is_err());
    }

    #[test]
    fn independence_witnesses() {
        for d in 1..=8 {
            let b = harmonic_basis(2, d).unwrap();
            let w = check_independence_property(&b).expect("witness exists");
            assert_eq!(w.len(), b.dim());
            // pivots are themselves valid witnesses
            for (k, pw) in b.pivot_words().iter().enumerate() {
                for (j, e) in b.elements.iter().enumerate() {
                    assert_eq!(e.coeff(pw).is_zero(), j != k);
                }
            }
        }
    }

    #[test]
    fn independence_single_element() {
        let single = HarmonicBasis {
            g: 2,
            d: 2,
            elements: vec![p2("x1*x2 + x2*x1")],
            word_index: Word::enumerate(2, 2),
            pivots: vec![1],
        };
        assert_eq!(check_independence_property(&single), Some(vec![Word::from_vars(&[1, 2])]));
    }
}
