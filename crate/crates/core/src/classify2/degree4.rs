use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exact::solve_in_span;
use crate::ncpoly::{format_scalar, Poly, Scalar};

/// Coefficients `B1..B6` of a member of the two-variable degree-4 family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree4Coeffs {
    pub b: [Scalar; 6],
}

impl Degree4Coeffs {
    pub fn new(b: [Scalar; 6]) -> Degree4Coeffs {
        Degree4Coeffs { b }
    }

    pub fn from_ints(b: [i64; 6]) -> Degree4Coeffs {
        Degree4Coeffs {
            b: b.map(|v| Scalar::from_integer(v.into())),
        }
    }

    pub fn g(&self) -> Scalar {
        &self.b[0] + &self.b[4]
    }

    pub fn hh(&self) -> Scalar {
        &self.b[0] + &self.b[5]
    }

    pub fn jj(&self) -> Scalar {
        &self.b[1] - &self.b[2]
    }

    pub fn k(&self) -> Scalar {
        &self.b[0] + &self.b[3]
    }

    /// `Hh * G - (Jj^2 + K^2)`.
    pub fn margin(&self) -> Scalar {
        let (j, k) = (self.jj(), self.k());
        self.hh() * self.g() - (&j * &j + &k * &k)
    }

    pub fn to_poly(&self) -> Poly {
        family_generators()
            .iter()
            .zip(&self.b)
            .fold(Poly::zero(2), |acc, (gen, c)| acc + gen.scale(c))
    }

    /// Family coordinates of `p`, or `None` if `p` is not in the family.
    pub fn from_poly(p: &Poly) -> Option<Degree4Coeffs> {
        if p.num_vars() != 2 {
            return None;
        }
        let gens = family_generators();
        let refs: Vec<&Poly> = gens.iter().collect();
        let sol = solve_in_span(p, &refs)?;
        Some(Degree4Coeffs {
            b: sol.try_into().expect("six generators"),
        })
    }
}

/// `s^2, su + vs, sv + us, u^2 + v^2, uv, vu` with `s = x1^2 - x2^2`,
/// `u = x1 x2`, `v = x2 x1`.
pub fn family_generators() -> [Poly; 6] {
    let s = Poly::from_ints(2, &[(1, &[1, 1]), (-1, &[2, 2])]);
    let u = Poly::from_ints(2, &[(1, &[1, 2])]);
    let v = Poly::from_ints(2, &[(1, &[2, 1])]);
    [
        &s * &s,
        &(&s * &u) + &(&v * &s),
        &(&s * &v) + &(&u * &s),
        &(&u * &u) + &(&v * &v),
        &u * &v,
        &v * &u,
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Region {
    StrictlyInside,
    Boundary,
    Violated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InequalityRecord {
    pub coeffs: Degree4Coeffs,
    pub region: Region,
}

impl Serialize for InequalityRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let c = &self.coeffs;
        let b: Vec<String> = c.b.iter().map(format_scalar).collect();
        let mut st = s.serialize_struct("InequalityRecord", 7)?;
        st.serialize_field("region", &self.region)?;
        st.serialize_field("B", &b)?;
        st.serialize_field("G", &format_scalar(&c.g()))?;
        st.serialize_field("H", &format_scalar(&c.hh()))?;
        st.serialize_field("J", &format_scalar(&c.jj()))?;
        st.serialize_field("K", &format_scalar(&c.k()))?;
        st.serialize_field("margin", &format_scalar(&c.margin()))?;
        st.end()
    }
}

/// Exact test of `Hh G > J^2 + K^2` and `Hh > 0`.
pub fn degree4_inequalities(c: &Degree4Coeffs) -> InequalityRecord {
    let margin = c.margin();
    let hh = c.hh();
    let region = if margin.is_positive() && hh.is_positive() {
        Region::StrictlyInside
    } else if margin.is_zero() && !hh.is_negative() && !c.g().is_negative() {
        Region::Boundary
    } else {
        Region::Violated
    };
    InequalityRecord {
        coeffs: c.clone(),
        region,
    }
}

/// Monomial groups of the general symmetric degree-4 polynomial in the
/// parameters `A1..A10`.
pub fn general_degree4_generators() -> [Poly; 10] {
    let w = |t: &[(i64, &[u16])]| Poly::from_ints(2, t);
    [
        w(&[(1, &[1, 1, 1, 1])]),
        w(&[(1, &[1, 1, 1, 2]), (1, &[2, 1, 1, 1])]),
        w(&[(1, &[1, 1, 2, 1]), (1, &[1, 2, 1, 1])]),
        w(&[(1, &[1, 1, 2, 2]), (1, &[2, 2, 1, 1])]),
        w(&[(1, &[1, 2, 1, 2]), (1, &[2, 1, 2, 1])]),
        w(&[(1, &[1, 2, 2, 1])]),
        w(&[(1, &[1, 2, 2, 2]), (1, &[2, 2, 2, 1])]),
        w(&[(1, &[2, 1, 1, 2])]),
        w(&[(1, &[2, 1, 2, 2]), (1, &[2, 2, 1, 2])]),
        w(&[(1, &[2, 2, 2, 2])]),
    ]
}

pub fn general_degree4(a: &[Scalar; 10]) -> Poly {
    general_degree4_generators()
        .iter()
        .zip(a)
        .fold(Poly::zero(2), |acc, (gen, c)| acc + gen.scale(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly_rank;
    use crate::harmonicspace::gamma_power_parts;
    use crate::ncpoly::parse;

    fn p2(s: &str) -> Poly {
        parse(s, 2).unwrap()
    }

    #[test]
    fn generators_match_expanded_forms() {
        let g = family_generators();
        assert_eq!(g[0], p2("x1^4 - x1^2*x2^2 - x2^2*x1^2 + x2^4"));
        assert_eq!(g[1], p2("x1^3*x2 + x2*x1^3 - x2*x1*x2^2 - x2^2*x1*x2"));
        assert_eq!(g[2], p2("x1^2*x2*x1 + x1*x2*x1^2 - x1*x2^3 - x2^3*x1"));
        assert_eq!(g[3], p2("x1*x2*x1*x2 + x2*x1*x2*x1"));
        assert_eq!(g[4], p2("x1*x2^2*x1"));
        assert_eq!(g[5], p2("x2*x1^2*x2"));
        let refs: Vec<&Poly> = g.iter().collect();
        assert_eq!(poly_rank(&refs), 6);
        assert!(g.iter().all(Poly::is_symmetric));
    }

    #[test]
    fn regions() {
        let r = |b| degree4_inequalities(&Degree4Coeffs::from_ints(b)).region;
        assert_eq!(r([1, 0, 0, 0, 1, 1]), Region::StrictlyInside);
        assert_eq!(r([1, 0, 0, 0, 0, 0]), Region::Boundary);
        assert_eq!(r([0, 0, 0, 0, 1, 0]), Region::Boundary);
        assert_eq!(r([0, 0, 0, 2, 1, 1]), Region::Violated);
        assert_eq!(r([-1, 0, 0, 0, 0, 0]), Region::Violated);
        assert_eq!(r([0, 0, 0, 0, -1, -1]), Region::Violated);
    }

    #[test]
    fn membership() {
        let c = Degree4Coeffs::from_ints([3, -1, 2, 0, 5, 7]);
        assert_eq!(Degree4Coeffs::from_poly(&c.to_poly()), Some(c));
        assert_eq!(Degree4Coeffs::from_poly(&p2("x1^4")), None);
        let (re4, im4) = gamma_power_parts(4).unwrap();
        assert_eq!(
            Degree4Coeffs::from_poly(&re4),
            Some(Degree4Coeffs::from_ints([1, 0, 0, -1, -1, -1]))
        );
        assert_eq!(
            Degree4Coeffs::from_poly(&im4),
            Some(Degree4Coeffs::from_ints([0, 1, 1, 0, 0, 0]))
        );
    }

    #[test]
    fn general_parameterization_covers_symmetric_quartics() {
        let gens = general_degree4_generators();
        let refs: Vec<&Poly> = gens.iter().collect();
        assert_eq!(poly_rank(&refs), 10);
        for f in family_generators() {
            assert!(solve_in_span(&f, &refs).is_some());
        }
    }
}
