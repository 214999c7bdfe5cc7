use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::neighbor::{neighbor_harmonicity_check, split, Side};
use crate::calculus::{directional_derivative, laplacian};
use crate::error::{Error, Result};
use crate::exact::{inverse, solve_in_span, span_basis};
use crate::harmonicspace::{check_independence_property, gamma_power_parts, harmonic_basis, HarmonicBasis};
use crate::json::serialize_scalar_matrix;
use crate::ncpoly::{format_scalar, Poly, Scalar};

type Matrix = Vec<Vec<Scalar>>;

fn zeros(r: usize, c: usize) -> Matrix {
    vec![vec![Scalar::zero(); c]; r]
}

fn transpose(m: &Matrix, cols: usize) -> Matrix {
    let mut t = zeros(cols, m.len());
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            t[j][i] = v.clone();
        }
    }
    t
}

fn mul(a: &Matrix, b: &Matrix, bcols: usize) -> Matrix {
    let mut out = zeros(a.len(), bcols);
    for (i, row) in a.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for j in 0..bcols {
                if !b[k][j].is_zero() {
                    out[i][j] += v * &b[k][j];
                }
            }
        }
    }
    out
}

/// `sum_ab m_ab vec_a^T vec_b`.
fn quadratic_form(m: &Matrix, vec: &[Poly], g: usize) -> Poly {
    let mut out = Poly::zero(g);
    for (a, row) in m.iter().enumerate() {
        let left = vec[a].transpose();
        for (b, c) in row.iter().enumerate() {
            if !c.is_zero() {
                out = out + (&left * &vec[b]).scale(c);
            }
        }
    }
    out
}

/// Harmonic basis rearranged so that it is closed under transposition:
/// symmetric elements `s`, pairs `u` and `v = u^T`, and antisymmetric
/// leftovers `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpandedBasis {
    pub elements: Vec<Poly>,
    pub s: usize,
    pub u: usize,
    pub a: usize,
}

impl ExpandedBasis {
    pub fn from_basis(basis: &HarmonicBasis) -> ExpandedBasis {
        let g = basis.g;
        let sym: Vec<Poly> = basis.elements.iter().map(|b| b + &b.transpose()).collect();
        let anti: Vec<Poly> = basis.elements.iter().map(|b| b - &b.transpose()).collect();
        let sym = span_basis(&sym.iter().collect::<Vec<_>>(), g);
        let anti = span_basis(&anti.iter().collect::<Vec<_>>(), g);
        let pairs = sym.len().min(anti.len());
        let ns = sym.len() - pairs;
        let half = Scalar::new(1.into(), 2.into());
        let us: Vec<Poly> = sym[ns..]
            .iter()
            .zip(&anti)
            .map(|(s, a)| (s + a).scale(&half))
            .collect();
        let mut elements: Vec<Poly> = sym[..ns].to_vec();
        elements.extend(us.iter().cloned());
        elements.extend(us.iter().map(Poly::transpose));
        elements.extend(anti[pairs..].iter().cloned());
        ExpandedBasis {
            elements,
            s: ns,
            u: pairs,
            a: anti.len() - pairs,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `e_k^T = sign * e_{image}`.
    fn transpose_of(&self, k: usize) -> (usize, i32) {
        let (s, u) = (self.s, self.u);
        if k < s {
            (k, 1)
        } else if k < s + u {
            (k + u, 1)
        } else if k < s + 2 * u {
            (k - u, 1)
        } else {
            (k, -1)
        }
    }
}

/// `p = sum_ab phi_ab e_a^T e_b` over an expanded harmonic basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GramForm {
    pub basis: HarmonicBasis,
    pub expanded: ExpandedBasis,
    pub phi: Matrix,
    pub raw: Matrix,
}

impl GramForm {
    pub fn reconstruct(&self) -> Poly {
        quadratic_form(&self.phi, &self.expanded.elements, self.basis.g)
    }

    pub fn is_psd(&self) -> bool {
        congruence(&self.phi).1
    }
}

impl Serialize for GramForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Groups {
            s: usize,
            u: usize,
            a: usize,
        }
        struct M<'a>(&'a Matrix);
        impl Serialize for M<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                serialize_scalar_matrix(self.0, s)
            }
        }
        let mut st = s.serialize_struct("GramForm", 4)?;
        st.serialize_field("basis", &self.expanded.elements)?;
        st.serialize_field(
            "groups",
            &Groups {
                s: self.expanded.s,
                u: self.expanded.u,
                a: self.expanded.a,
            },
        )?;
        st.serialize_field("phi", &M(&self.phi))?;
        st.serialize_field("raw", &M(&self.raw))?;
        st.end()
    }
}

/// Builds the Gram form of a symmetric homogeneous polynomial of even degree
/// from its right neighbors at half degree.
pub fn gram_from_neighbors(p: &Poly) -> Result<GramForm> {
    if p.contains_h() {
        return Err(Error::ContainsDirection);
    }
    if !p.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let d = p.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if d == 0 || d % 2 == 1 {
        return Err(Error::InvalidArgument(format!("Gram form needs positive even degree, got {d}")));
    }
    let k = d / 2;
    let g = p.num_vars();
    let failing = neighbor_harmonicity_check(p, k)?;
    if !failing.is_empty() {
        return Err(Error::NeighborNotHarmonic {
            failing: failing.len(),
        });
    }
    let basis = harmonic_basis(g, k)?;
    if check_independence_property(&basis).is_none() {
        return Err(Error::NoIndependenceProperty);
    }
    let expanded = ExpandedBasis::from_basis(&basis);
    let gens: Vec<&Poly> = expanded.elements.iter().collect();
    let n = gens.len();

    // p = sum_t x^t p_t with p_t = sum_b mu_b(t) e_b, so p = sum_b L_b e_b
    let dec = split(p, k, Side::Right);
    let mut lefts = vec![Poly::zero(g); n];
    for (t, pt) in &dec.parts {
        let mu = solve_in_span(pt, &gens)
            .ok_or_else(|| Error::Infeasible(format!("neighbor of {} is outside the harmonic span", t.render())))?;
        for (b, c) in mu.into_iter().enumerate() {
            if !c.is_zero() {
                lefts[b].add_term(t.clone(), c);
            }
        }
    }
    // L_b = sum_a chi_ab e_a = sum_a chi_ab sign_a e_{pi(a)}^T
    let mut raw = zeros(n, n);
    for (b, lb) in lefts.iter().enumerate() {
        let chi = solve_in_span(lb, &gens)
            .ok_or_else(|| Error::Infeasible("left factor is outside the harmonic span".into()))?;
        for (a, c) in chi.into_iter().enumerate() {
            let (img, sign) = expanded.transpose_of(a);
            raw[img][b] = if sign < 0 { -c } else { c };
        }
    }
    let half = Scalar::new(1.into(), 2.into());
    let phi: Matrix = (0..n)
        .map(|i| (0..n).map(|j| (&raw[i][j] + &raw[j][i]) * &half).collect())
        .collect();
    let gram = GramForm {
        basis,
        expanded,
        phi,
        raw,
    };
    if gram.reconstruct() != *p {
        return Err(Error::Infeasible("Gram form does not reproduce the polynomial".into()));
    }
    Ok(gram)
}

/// Rational congruence diagonalization by repeated rank-one reduction:
/// `phi = sum_i d_i r_i r_i^T`. The flag is true iff `phi` is PSD.
pub fn congruence(phi: &Matrix) -> (Vec<(Scalar, Vec<Scalar>)>, bool) {
    let n = phi.len();
    let mut a = phi.clone();
    let mut out = Vec::new();
    let mut psd = true;
    loop {
        let w: Vec<usize> = if let Some(i) = (0..n).find(|&i| !a[i][i].is_zero()) {
            vec![i]
        } else if let Some((i, j)) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        {
            // zero diagonal with a nonzero off-diagonal: use e_i + e_j
            psd = false;
            vec![i, j]
        } else {
            break;
        };
        let aw: Vec<Scalar> = (0..n).map(|r| w.iter().map(|&c| a[r][c].clone()).sum()).collect();
        let d: Scalar = w.iter().map(|&c| aw[c].clone()).sum();
        let r: Vec<Scalar> = aw.iter().map(|v| v / &d).collect();
        for i in 0..n {
            for j in 0..n {
                if !r[i].is_zero() && !r[j].is_zero() {
                    a[i][j] -= &d * &r[i] * &r[j];
                }
            }
        }
        if d.is_negative() {
            psd = false;
        }
        out.push((d, r));
    }
    (out, psd)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SosTerm {
    pub d: Scalar,
    pub r: Poly,
}

impl Serialize for SosTerm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SosTerm", 2)?;
        st.serialize_field("d", &format_scalar(&self.d))?;
        st.serialize_field("R", &self.r)?;
        st.end()
    }
}

/// `p = sum_i d_i R_i^T R_i` with harmonic `R_i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SosDecomposition {
    pub num_vars: usize,
    pub terms: Vec<SosTerm>,
}

impl SosDecomposition {
    fn from_congruence(parts: Vec<(Scalar, Vec<Scalar>)>, vec: &[Poly], g: usize) -> SosDecomposition {
        let terms = parts
            .into_iter()
            .map(|(d, r)| {
                let mut poly = Poly::zero(g);
                for (c, e) in r.iter().zip(vec) {
                    if !c.is_zero() {
                        poly = poly + e.scale(c);
                    }
                }
                SosTerm { d, r: poly }
            })
            .collect();
        SosDecomposition { num_vars: g, terms }
    }

    pub fn reconstruct(&self) -> Poly {
        self.terms.iter().fold(Poly::zero(self.num_vars), |acc, t| {
            acc + (&t.r.transpose() * &t.r).scale(&t.d)
        })
    }

    pub fn all_positive(&self) -> bool {
        self.terms.iter().all(|t| t.d.is_positive())
    }

    pub fn all_harmonic(&self) -> Result<bool> {
        for t in &self.terms {
            if !laplacian(&t.r)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Text form `d * (R)^T (R) + ...`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|t| {
                let d = Poly::constant(self.num_vars, t.d.clone()).render();
                format!("{d} * ({})^T ({})", t.r.render(), t.r.render())
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Congruence diagonalization of the Gram form; pivots may have either sign.
pub fn sos_decompose(p: &Poly) -> Result<SosDecomposition> {
    let gram = gram_from_neighbors(p)?;
    let (parts, _) = congruence(&gram.phi);
    let dec = SosDecomposition::from_congruence(parts, &gram.expanded.elements, p.num_vars());
    debug_assert_eq!(dec.reconstruct(), *p);
    Ok(dec)
}

/// Checks `Lap(sum d R^T R) = 2 sum d sum_j D[R, x_j]^T D[R, x_j]` exactly.
pub fn laplacian_sos_identity_check(dec: &SosDecomposition) -> Result<bool> {
    let g = dec.num_vars;
    let lhs = laplacian(&dec.reconstruct())?;
    let mut rhs = Poly::zero(g);
    for t in &dec.terms {
        for j in 1..=g {
            let dr = directional_derivative(&t.r, j)?;
            rhs = rhs + (&dr.transpose() * &dr).scale(&t.d);
        }
    }
    Ok(lhs == rhs.scale(&Scalar::from_integer(2.into())))
}

/// Sum of squares with positive weights plus a harmonic remainder:
/// `p = sum d_i R_i^T R_i + harmonic_remainder`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SosCertificate {
    pub sos: SosDecomposition,
    pub harmonic_remainder: Poly,
}

impl SosCertificate {
    /// Re-verifies every claim of the certificate exactly.
    pub fn verify(&self, p: &Poly) -> Result<bool> {
        Ok(self.sos.all_positive()
            && self.sos.all_harmonic()?
            && self.sos.reconstruct() + self.harmonic_remainder.clone() == *p
            && laplacian(&self.harmonic_remainder)?.is_zero())
    }
}

/// Positive sum-of-squares-of-harmonics certificate for `p`, if one is
/// found. The plain Gram form is tried first; in two variables the Gram
/// form may then be moved by multiples of `Re/Im gamma^d`, which changes `p`
/// only by a harmonic polynomial.
pub fn sos_certificate(p: &Poly) -> Result<Option<SosCertificate>> {
    let gram = gram_from_neighbors(p)?;
    let g = p.num_vars();
    let (parts, psd) = congruence(&gram.phi);
    if psd {
        return Ok(Some(SosCertificate {
            sos: SosDecomposition::from_congruence(parts, &gram.expanded.elements, g),
            harmonic_remainder: Poly::zero(g),
        }));
    }
    if g != 2 {
        return Ok(None);
    }
    let k = gram.basis.d;
    let (re, im) = gamma_power_parts(k)?;
    // c-basis: Re, Im, then expanded elements completing a basis
    let mut cbasis = vec![re, im];
    for e in &gram.expanded.elements {
        let refs: Vec<&Poly> = cbasis.iter().collect();
        if solve_in_span(e, &refs).is_none() {
            cbasis.push(e.clone());
        }
    }
    let n = gram.expanded.len();
    if cbasis.len() != n {
        return Ok(None);
    }
    let refs: Vec<&Poly> = cbasis.iter().collect();
    let mut t = zeros(n, n);
    for (a, e) in gram.expanded.elements.iter().enumerate() {
        let coords = solve_in_span(e, &refs).expect("c-basis spans the harmonic space");
        t[a] = coords;
    }
    // e = T c  =>  phi_c = T^T phi T
    let phi_c = mul(&mul(&transpose(&t, n), &gram.phi, n), &t, n);
    let trace = &phi_c[0][0] + &phi_c[1][1];
    let half = Scalar::new(1.into(), 2.into());
    let mut block = vec![vec![&trace * &half, Scalar::zero()], vec![Scalar::zero(), &trace * &half]];
    if n > 2 {
        let rest: Matrix = phi_c[2..].iter().map(|r| r[2..].to_vec()).collect();
        if let Some(rinv) = inverse(&rest) {
            let q: Matrix = phi_c[..2].iter().map(|r| r[2..].to_vec()).collect();
            let qt = transpose(&q, n - 2);
            let schur = mul(&mul(&q, &rinv, n - 2), &qt, 2);
            let slack = (&trace - &schur[0][0] - &schur[1][1]) * &half;
            block = schur;
            block[0][0] += &slack;
            block[1][1] += &slack;
        }
    }
    let mut shifted = phi_c;
    for i in 0..2 {
        for j in 0..2 {
            shifted[i][j] = block[i][j].clone();
        }
    }
    let (parts, psd) = congruence(&shifted);
    if !psd {
        return Ok(None);
    }
    let sos = SosDecomposition::from_congruence(parts, &cbasis, g);
    let remainder = p - &sos.reconstruct();
    if !laplacian(&remainder)?.is_zero() {
        return Ok(None);
    }
    Ok(Some(SosCertificate {
        sos,
        harmonic_remainder: remainder,
    }))
}
