//! Border vector and middle matrix of a symmetric polynomial that is
//! quadratic in `h`: `q = sum_ij m_i^T h Z_ij h m_j`.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ncpoly::{evaluate, Letter, MatrixPoint, Poly, Scalar, Word};

/// `border[i] = m_i` stands for the border entry `h m_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiddleMatrixRep {
    pub g: usize,
    pub border: Vec<Word>,
    pub z: Vec<Vec<Poly>>,
}

fn split_two_h(w: &Word) -> Option<(Word, Word, Word)> {
    let hs: Vec<usize> = w
        .letters()
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_h())
        .map(|(i, _)| i)
        .collect();
    match hs[..] {
        [a, b] => Some((w.slice(0, a), w.slice(a + 1, b), w.slice(b + 1, w.len()))),
        _ => None,
    }
}

impl MiddleMatrixRep {
    pub fn extract(q: &Poly) -> Result<MiddleMatrixRep> {
        let mut parts = Vec::with_capacity(q.len());
        for (w, c) in q.terms() {
            let (left, mid, right) = split_two_h(w).ok_or_else(|| Error::NotQuadraticInDirection {
                word: w.render(),
            })?;
            parts.push((left.transpose(), mid, right, c.clone()));
        }
        if !q.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let border: Vec<Word> = parts
            .iter()
            .flat_map(|(l, _, r, _)| [l.clone(), r.clone()])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let n = border.len();
        let g = q.num_vars();
        let mut z = vec![vec![Poly::zero(g); n]; n];
        for (l, mid, r, c) in parts {
            let i = border.binary_search(&l).expect("border word");
            let j = border.binary_search(&r).expect("border word");
            z[i][j].add_term(mid, c);
        }
        Ok(MiddleMatrixRep { g, border, z })
    }

    /// The border entries `h m_i` as words.
    pub fn border_words(&self) -> Vec<Word> {
        self.border
            .iter()
            .map(|m| Word::new(vec![Letter::H]).concat(m))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.border.len()
    }

    pub fn is_empty(&self) -> bool {
        self.border.is_empty()
    }

    /// `Z` entry for the border pair `(m_i, m_j)`, zero if either is absent.
    pub fn entry(&self, mi: &Word, mj: &Word) -> Poly {
        match (self.border.binary_search(mi), self.border.binary_search(mj)) {
            (Ok(i), Ok(j)) => self.z[i][j].clone(),
            _ => Poly::zero(self.g),
        }
    }

    pub fn reconstruct(&self) -> Poly {
        let h = Word::new(vec![Letter::H]);
        let mut out = Poly::zero(self.g);
        for (i, mi) in self.border.iter().enumerate() {
            let left = mi.transpose().concat(&h);
            for (j, mj) in self.border.iter().enumerate() {
                let right = h.concat(mj);
                for (w, c) in self.z[i][j].terms() {
                    out.add_term(left.concat(w).concat(&right), c.clone());
                }
            }
        }
        out
    }

    /// First `(i, j)` (0-based, row-major) with `Z_ii = 0` and `Z_ij != 0`.
    pub fn zeroes_violation(&self) -> Option<(usize, usize)> {
        (0..self.len())
            .filter(|&i| self.z[i][i].is_zero())
            .find_map(|i| (0..self.len()).find(|&j| !self.z[i][j].is_zero()).map(|j| (i, j)))
    }

    /// The block matrix `[Z_ij(X)]`, symmetrized as `(M + M^T) / 2`.
    pub fn evaluate_middle(&self, xs: &[DMatrix<f64>]) -> Result<DMatrix<f64>> {
        let pt = MatrixPoint::new(xs.to_vec(), None)?;
        let n = pt.n();
        let size = self.len() * n;
        let mut m = DMatrix::zeros(size, size);
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.z[i][j].is_zero() {
                    continue;
                }
                let block = evaluate(&self.z[i][j], &pt)?;
                m.view_mut((i * n, j * n), (n, n)).copy_from(&block);
            }
        }
        Ok((&m + m.transpose()) * 0.5)
    }
}

impl Serialize for MiddleMatrixRep {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let border: Vec<String> = self.border_words().iter().map(Word::render).collect();
        let mut st = s.serialize_struct("MiddleMatrixRep", 2)?;
        st.serialize_field("border", &border)?;
        st.serialize_field("Z", &self.z)?;
        st.end()
    }
}

/// The value of a constant polynomial, `None` for anything else.
pub fn constant_value(p: &Poly) -> Option<Scalar> {
    match p.len() {
        0 => Some(Scalar::from_integer(0.into())),
        1 => {
            let (w, c) = p.terms().next().unwrap();
            w.is_empty().then(|| c.clone())
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::laplacian;
    use crate::ncpoly::parse;
    use proptest::prelude::*;

    fn p2(s: &str) -> Poly {
        parse(s, 2).unwrap()
    }

    fn w(v: &[u16]) -> Word {
        Word::from_vars(v)
    }

    #[test]
    fn worked_example() {
        let q = p2("3*x1*h*x2^2*h*x1 + h*x1*x2*x1*h - h*x1*h*x2^2 - x2^2*h*x1*h + 5*x1*x2*h*x2*h*x2*x1");
        let rep = MiddleMatrixRep::extract(&q).unwrap();
        assert_eq!(rep.border, vec![w(&[]), w(&[1]), w(&[2, 1]), w(&[2, 2])]);
        let zero = Poly::zero(2);
        let expected = [
            ["x1*x2*x1", "0", "0", "-x1"],
            ["0", "3*x2^2", "0", "0"],
            ["0", "0", "5*x2", "0"],
            ["-x1", "0", "0", "0"],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(rep.z[i][j], p2(expected[i][j]), "Z[{i}][{j}]");
            }
        }
        assert_eq!(rep.reconstruct(), q);
        assert_eq!(rep.zeroes_violation(), Some((3, 0)));
        assert_eq!(rep.entry(&w(&[1, 1]), &w(&[])), zero);

        let one = DMatrix::identity(1, 1);
        let m = rep.evaluate_middle(&[one.clone(), one]).unwrap();
        let expected = DMatrix::from_row_slice(
            4,
            4,
            &[1., 0., 0., -1., 0., 3., 0., 0., 0., 0., 5., 0., -1., 0., 0., 0.],
        );
        assert_eq!(m, expected);
    }

    #[test]
    fn trivial_cases() {
        let rep = MiddleMatrixRep::extract(&p2("h^2")).unwrap();
        assert_eq!(rep.border, vec![Word::empty()]);
        assert_eq!(rep.z, vec![vec![Poly::one(2)]]);
        assert_eq!(rep.reconstruct(), p2("h^2"));
        assert_eq!(rep.zeroes_violation(), None);
        let x = DMatrix::from_row_slice(2, 2, &[0.3, 1.0, 1.0, -2.0]);
        assert_eq!(rep.evaluate_middle(&[x.clone(), x]).unwrap(), DMatrix::identity(2, 2));

        let rep = MiddleMatrixRep {
            g: 2,
            border: vec![w(&[]), w(&[1])],
            z: vec![vec![Poly::zero(2), p2("x1")], vec![p2("x1"), Poly::zero(2)]],
        };
        assert_eq!(rep.zeroes_violation(), Some((0, 1)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            MiddleMatrixRep::extract(&p2("h*x1*h + x1*h")),
            Err(Error::NotQuadraticInDirection { .. })
        ));
        assert_eq!(MiddleMatrixRep::extract(&p2("h*x1*h*x2")), Err(Error::NotSymmetric));
    }

    #[test]
    fn laplacian_of_x1_fourth() {
        let rep = MiddleMatrixRep::extract(&laplacian(&p2("x1^4")).unwrap()).unwrap();
        assert_eq!(rep.border, vec![w(&[]), w(&[1]), w(&[1, 1])]);
        let expected = [["2*x1^2", "2*x1", "2"], ["2*x1", "2", "0"], ["2", "0", "0"]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(rep.z[i][j], p2(expected[i][j]));
            }
        }
        assert_eq!(rep.zeroes_violation(), Some((2, 0)));
        assert_eq!(constant_value(&rep.z[1][1]), Some(Scalar::from_integer(2.into())));
    }

    #[test]
    fn json_shape() {
        let rep = MiddleMatrixRep::extract(&p2("h^2")).unwrap();
        assert_eq!(
            serde_json::to_string(&rep).unwrap(),
            r#"{"border":["h"],"Z":[[{"g":2,"terms":[{"coeff":"1/1","word":[]}]}]]}"#
        );
    }

    fn arb_two_h_poly() -> impl Strategy<Value = Poly> {
        let word = (
            proptest::collection::vec(1u16..=2, 0..3),
            proptest::collection::vec(1u16..=2, 0..3),
            proptest::collection::vec(1u16..=2, 0..3),
        );
        proptest::collection::vec((word, -5i64..=5), 1..6).prop_map(|terms| {
            let mut p = Poly::zero(2);
            let h = Word::new(vec![Letter::H]);
            for ((l, m, r), c) in terms {
                let word = w(&l).concat(&h).concat(&w(&m)).concat(&h).concat(&w(&r));
                p = p + Poly::monomial(2, word, Scalar::from_integer(c.into()));
            }
            &p + &p.transpose()
        })
    }

    proptest! {
        #[test]
        fn round_trip(q in arb_two_h_poly()) {
            let rep = MiddleMatrixRep::extract(&q).unwrap();
            prop_assert_eq!(rep.reconstruct(), q);
            for i in 0..rep.len() {
                for j in 0..rep.len() {
                    prop_assert_eq!(rep.z[i][j].transpose(), rep.z[j][i].clone());
                }
            }
            prop_assert!(rep.border.windows(2).all(|p| p[0] < p[1]));
        }
    }
}
