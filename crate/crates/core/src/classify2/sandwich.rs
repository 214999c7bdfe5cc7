use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::neighbor::{split, Side};
use crate::calculus::{directional_derivative, laplacian};
use crate::error::{Error, Result};
use crate::harmonicspace::{check_independence_property, express_in_basis, harmonic_basis, HarmonicBasis};
use crate::ncpoly::{format_scalar, Letter, Poly, Scalar};

/// `p = sum_{m,i,j} phi[m][i][j] gamma_m x_i gamma_j` over a harmonic basis
/// `gamma` of degree `(d - 1) / 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SandwichTensor {
    pub basis: HarmonicBasis,
    pub phi: Vec<Vec<Vec<Scalar>>>,
}

impl SandwichTensor {
    pub fn reconstruct(&self) -> Poly {
        let g = self.basis.g;
        let mut out = Poly::zero(g);
        for (m, gm) in self.basis.elements.iter().enumerate() {
            for i in 0..g {
                let left = gm * &Poly::var(g, i + 1);
                for (j, gj) in self.basis.elements.iter().enumerate() {
                    let c = &self.phi[m][i][j];
                    if !c.is_zero() {
                        out = out + (&left * gj).scale(c);
                    }
                }
            }
        }
        out
    }

    fn inner(&self, m: usize, i: usize) -> Poly {
        let g = self.basis.g;
        self.basis
            .elements
            .iter()
            .enumerate()
            .fold(Poly::zero(g), |acc, (j, gj)| acc + gj.scale(&self.phi[m][i][j]))
    }

    fn outer(&self, i: usize, j: usize) -> Poly {
        let g = self.basis.g;
        self.basis
            .elements
            .iter()
            .enumerate()
            .fold(Poly::zero(g), |acc, (m, gm)| acc + gm.scale(&self.phi[m][i][j]))
    }

    /// The three polynomials whose vanishing is equivalent to harmonicity:
    /// `sum_m gamma_m h sum_i D[sum_j phi_mij gamma_j, x_i]`,
    /// `sum_j (sum_i D[sum_m phi_mij gamma_m, x_i]) h gamma_j` and
    /// `sum_{l,i,j} D[sum_m phi_mij gamma_m, x_l] x_i D[gamma_j, x_l]`.
    /// The Laplacian of the reconstruction is twice their sum.
    pub fn vanishing_terms(&self) -> Result<[Poly; 3]> {
        let g = self.basis.g;
        let h = Poly::direction(g);
        let k = self.basis.elements.len();
        let mut t1 = Poly::zero(g);
        let mut t2 = Poly::zero(g);
        let mut t3 = Poly::zero(g);
        for (m, gm) in self.basis.elements.iter().enumerate() {
            let mut s = Poly::zero(g);
            for i in 0..g {
                s = s + directional_derivative(&self.inner(m, i), i + 1)?;
            }
            t1 = t1 + &(gm * &h) * &s;
        }
        for (j, gj) in self.basis.elements.iter().enumerate() {
            let mut s = Poly::zero(g);
            for i in 0..g {
                s = s + directional_derivative(&self.outer(i, j), i + 1)?;
            }
            t2 = t2 + &(&s * &h) * gj;
        }
        for l in 1..=g {
            for i in 0..g {
                let xi = Poly::var(g, i + 1);
                for j in 0..k {
                    let left = directional_derivative(&self.outer(i, j), l)?;
                    let right = directional_derivative(&self.basis.elements[j], l)?;
                    t3 = t3 + &(&left * &xi) * &right;
                }
            }
        }
        Ok([t1, t2, t3])
    }
}

impl Serialize for SandwichTensor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let phi: Vec<Vec<Vec<String>>> = self
            .phi
            .iter()
            .map(|a| a.iter().map(|b| b.iter().map(format_scalar).collect()).collect())
            .collect();
        let mut st = s.serialize_struct("SandwichTensor", 2)?;
        st.serialize_field("basis", &self.basis.elements)?;
        st.serialize_field("phi", &phi)?;
        st.end()
    }
}

/// Sandwich decomposition of a harmonic polynomial of odd degree `d >= 3`.
pub fn odd_sandwich(p: &Poly, d: usize) -> Result<SandwichTensor> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::InvalidArgument(format!("sandwich needs odd degree >= 3, got {d}")));
    }
    if p.contains_h() {
        return Err(Error::ContainsDirection);
    }
    if !p.is_zero() && p.homogeneous_degree() != Some(d) {
        return Err(Error::NotHomogeneous);
    }
    if !laplacian(p)?.is_zero() {
        return Err(Error::InvalidArgument("polynomial is not harmonic".into()));
    }
    let g = p.num_vars();
    let k = (d - 1) / 2;
    let basis = harmonic_basis(g, k)?;
    if check_independence_property(&basis).is_none() {
        return Err(Error::NoIndependenceProperty);
    }
    let n = basis.dim();
    let mut phi = vec![vec![vec![Scalar::zero(); n]; g]; n];

    // p = sum_{t,i} x^t x_i p_{t,i} with p_{t,i} = sum_j mu_j(t,i) gamma_j
    let dec = split(p, k + 1, Side::Right);
    let mut lefts = vec![vec![Poly::zero(g); g]; n];
    for (ti, pti) in &dec.parts {
        let Letter::X(var) = ti.letters()[k] else {
            unreachable!("h-free input")
        };
        let t = ti.slice(0, k);
        let mu = express_in_basis(pti, &basis)?
            .ok_or_else(|| Error::Infeasible(format!("neighbor of {} is not harmonic", ti.render())))?;
        for (j, c) in mu.into_iter().enumerate() {
            if !c.is_zero() {
                lefts[j][var as usize - 1].add_term(t.clone(), c);
            }
        }
    }
    // p^{j,i} = sum_t mu_j(t,i) x^t = sum_m phi_mij gamma_m
    for (j, row) in lefts.iter().enumerate() {
        for (i, pji) in row.iter().enumerate() {
            let coords = express_in_basis(pji, &basis)?
                .ok_or_else(|| Error::Infeasible("left factor is not harmonic".into()))?;
            for (m, c) in coords.into_iter().enumerate() {
                phi[m][i][j] = c;
            }
        }
    }
    let tensor = SandwichTensor { basis, phi };
    if tensor.reconstruct() != *p {
        return Err(Error::Infeasible("sandwich does not reproduce the polynomial".into()));
    }
    Ok(tensor)
}
