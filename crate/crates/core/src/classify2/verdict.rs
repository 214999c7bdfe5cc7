use nalgebra::DMatrix;
use num_traits::Signed;
use serde::Serialize;

use super::degree4::{degree4_inequalities, Degree4Coeffs, InequalityRecord, Region};
use super::gram::{sos_certificate, SosCertificate};
use crate::calculus::laplacian;
use crate::error::{Error, Result};
use crate::exact::{poly_rank, solve_in_span};
use crate::harmonicspace::gamma_power_parts;
use crate::json::serialize_scalar;
use crate::ncpoly::{evaluate, format_scalar, MatrixPoint, Poly, Scalar, Word};
use crate::positivity::{max_abs, min_eigenvalue, sample_matrix_positive, SampleConfig, SplitMix64, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    Harmonic,
    PurelySubharmonicCertified,
    SubharmonicBoundaryCertified,
    NotSubharmonic,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    #[serde(serialize_with = "serialize_scalar")]
    pub c0: Scalar,
    #[serde(serialize_with = "serialize_scalar")]
    pub c1: Scalar,
    #[serde(serialize_with = "serialize_scalar")]
    pub c2: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// `Lap p = 2 (A1 + A2) h^2`.
    Degree2 {
        #[serde(serialize_with = "serialize_scalar")]
        a1_plus_a2: Scalar,
    },
    Inequalities(InequalityRecord),
    Membership(Membership),
    Sos(SosCertificate),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<String>,
}

impl Verdict {
    fn new(kind: VerdictKind) -> Verdict {
        Verdict {
            kind,
            certificate: None,
            witness: None,
            obstruction: None,
        }
    }

    fn certified(kind: VerdictKind, c: Certificate) -> Verdict {
        Verdict {
            certificate: Some(c),
            ..Verdict::new(kind)
        }
    }

    fn refuted(witness: Option<Witness>, obstruction: String) -> Verdict {
        Verdict {
            witness,
            obstruction: Some(obstruction),
            ..Verdict::new(VerdictKind::NotSubharmonic)
        }
    }
}

/// `(Re gamma^d)^2`, `Re gamma^{2d}`, `Im gamma^{2d}`.
pub fn high_even_generators(d: usize) -> Result<[Poly; 3]> {
    let (re, _) = gamma_power_parts(d)?;
    let (re2, im2) = gamma_power_parts(2 * d)?;
    Ok([&re * &re, re2, im2])
}

/// Solves `p = c0 (Re gamma^d)^2 + c1 Re gamma^{2d} + c2 Im gamma^{2d}` for a
/// polynomial of degree `2d`, `d > 2`.
pub fn high_even_membership(p: &Poly) -> Result<Option<Membership>> {
    if p.num_vars() != 2 {
        return Err(Error::InvalidArgument("membership is defined for two variables".into()));
    }
    let deg = p.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if deg % 2 == 1 || deg < 6 {
        return Err(Error::InvalidArgument(format!("degree {deg} is not 2d with d > 2")));
    }
    let gens = high_even_generators(deg / 2)?;
    let refs: Vec<&Poly> = gens.iter().collect();
    if poly_rank(&refs) != 3 {
        return Err(Error::Infeasible("membership generators are dependent".into()));
    }
    Ok(solve_in_span(p, &refs).map(|c| {
        let [c0, c1, c2]: [Scalar; 3] = c.try_into().expect("three generators");
        Membership { c0, c1, c2 }
    }))
}

/// Tag for the odd-degree sign-flip draws.
const ODD_TAG: u64 = 0x4f44_445f_4649_4950;
const ODD_TRIES: usize = 16;

/// For odd degree `Lap(-X)[H] = -Lap(X)[H]`, so any sampled point with a
/// positive eigenvalue yields a witness at `-X`.
fn odd_witness(lap: &Poly, cfg: &SampleConfig) -> Result<Option<Witness>> {
    let g = lap.num_vars();
    for &n in &cfg.sizes {
        for s in 0..ODD_TRIES.min(cfg.samples_per_size.max(1)) {
            let draw = |slot: usize| {
                SplitMix64::keyed(cfg.seed ^ ODD_TAG, &[n as u64, s as u64, slot as u64])
                    .symmetric_matrix(n, cfg.entry_range)
            };
            let xs: Vec<DMatrix<f64>> = (0..g).map(draw).collect();
            let h = draw(g);
            for sign in [1.0, -1.0] {
                let xs_t: Vec<DMatrix<f64>> = xs.iter().map(|x| x * sign).collect();
                let pt = MatrixPoint::new(xs_t.clone(), Some(h.clone()))?;
                let e = min_eigenvalue(&evaluate(lap, &pt)?)?;
                if e < -cfg.tol {
                    return Ok(Some(Witness {
                        n,
                        xs: xs_t,
                        h: Some(h),
                        min_eig: e,
                        sample_index: s,
                    }));
                }
            }
        }
    }
    Ok(sample_matrix_positive(lap, cfg)?.witness().cloned())
}

fn sampled_witness(lap: &Poly, cfg: &SampleConfig) -> Result<Option<Witness>> {
    Ok(sample_matrix_positive(lap, cfg)?.witness().cloned())
}

fn two_var_check(p: &Poly) -> Result<usize> {
    if p.num_vars() != 2 {
        return Err(Error::InvalidArgument(format!(
            "classification is defined for two variables, got {}",
            p.num_vars()
        )));
    }
    if p.contains_h() {
        return Err(Error::ContainsDirection);
    }
    if p.is_zero() {
        return Ok(0);
    }
    let d = p.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if d > 2 && !p.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(d)
}

/// Classifies a homogeneous polynomial in two variables.
pub fn classify(p: &Poly, cfg: &SampleConfig) -> Result<Verdict> {
    cfg.validate()?;
    let d = two_var_check(p)?;
    let lap = laplacian(p)?;
    if lap.is_zero() {
        let mut v = Verdict::new(VerdictKind::Harmonic);
        if d >= 6 && d % 2 == 0 {
            v.certificate = high_even_membership(p)?.map(Certificate::Membership);
        }
        return Ok(v);
    }
    if d % 2 == 1 {
        let w = odd_witness(&lap, cfg)?;
        return Ok(Verdict::refuted(
            w,
            format!("odd degree {d} with nonzero Laplacian has no subharmonic form"),
        ));
    }
    match d {
        2 => {
            let a = p.coeff(&Word::from_vars(&[1, 1])) + p.coeff(&Word::from_vars(&[2, 2]));
            if a.is_positive() {
                Ok(Verdict::certified(
                    VerdictKind::PurelySubharmonicCertified,
                    Certificate::Degree2 { a1_plus_a2: a },
                ))
            } else {
                let w = sampled_witness(&lap, cfg)?;
                Ok(Verdict::refuted(w, format!("A1 + A2 = {} < 0", format_scalar(&a))))
            }
        }
        4 => classify_degree4(p, &lap, cfg),
        _ => match high_even_membership(p)? {
            None => {
                let w = sampled_witness(&lap, cfg)?;
                Ok(Verdict::refuted(
                    w,
                    format!("not in the span of (Re g^{0})^2, Re g^{1}, Im g^{1}", d / 2, d),
                ))
            }
            Some(m) if m.c0.is_positive() => Ok(Verdict::certified(
                VerdictKind::PurelySubharmonicCertified,
                Certificate::Membership(m),
            )),
            Some(m) => {
                let w = sampled_witness(&lap, cfg)?;
                let why = format!("c0 = {} < 0", format_scalar(&m.c0));
                let mut v = Verdict::refuted(w, why);
                v.certificate = Some(Certificate::Membership(m));
                Ok(v)
            }
        },
    }
}

fn classify_degree4(p: &Poly, lap: &Poly, cfg: &SampleConfig) -> Result<Verdict> {
    let Some(coeffs) = Degree4Coeffs::from_poly(p) else {
        let w = sampled_witness(lap, cfg)?;
        return Ok(Verdict::refuted(
            w,
            "not in the degree-4 family: the middle matrix of the Laplacian has a zero diagonal entry with a nonzero off-diagonal entry".into(),
        ));
    };
    let record = degree4_inequalities(&coeffs);
    match record.region {
        Region::StrictlyInside => Ok(Verdict::certified(
            VerdictKind::PurelySubharmonicCertified,
            Certificate::Inequalities(record),
        )),
        Region::Boundary => {
            if let Some(cert) = sos_certificate(p).or_else(|e| match e {
                Error::NeighborNotHarmonic { .. } | Error::Infeasible(_) => Ok(None),
                e => Err(e),
            })? {
                return Ok(Verdict::certified(
                    VerdictKind::SubharmonicBoundaryCertified,
                    Certificate::Sos(cert),
                ));
            }
            match sampled_witness(lap, cfg)? {
                Some(w) => Ok(Verdict::refuted(Some(w), "boundary point without certificate".into())),
                None => Ok(Verdict {
                    certificate: Some(Certificate::Inequalities(record)),
                    ..Verdict::new(VerdictKind::Unknown)
                }),
            }
        }
        Region::Violated => {
            let w = sampled_witness(lap, cfg)?;
            let mut v = Verdict::refuted(
                w,
                format!(
                    "degree-4 inequalities fail: H G - J^2 - K^2 = {}, H = {}",
                    format_scalar(&coeffs.margin()),
                    format_scalar(&coeffs.hh())
                ),
            );
            v.certificate = Some(Certificate::Inequalities(record));
            Ok(v)
        }
    }
}

/// Exact re-verification of the certificate attached to a verdict.
pub fn verify_certificate(p: &Poly, v: &Verdict) -> Result<bool> {
    let lap = laplacian(p)?;
    Ok(match (&v.kind, &v.certificate) {
        (VerdictKind::Harmonic, _) => lap.is_zero(),
        (VerdictKind::PurelySubharmonicCertified, Some(Certificate::Degree2 { a1_plus_a2 })) => {
            a1_plus_a2.is_positive() && lap == Poly::direction(2).pow(2).scale(&(a1_plus_a2 * Scalar::from_integer(2.into())))
        }
        (VerdictKind::PurelySubharmonicCertified, Some(Certificate::Inequalities(r))) => {
            r.region == Region::StrictlyInside && r.coeffs.to_poly() == *p
        }
        (VerdictKind::PurelySubharmonicCertified, Some(Certificate::Membership(m))) => {
            let d = p.homogeneous_degree().unwrap_or(0) / 2;
            let [a, b, c] = high_even_generators(d)?;
            m.c0.is_positive() && a.scale(&m.c0) + b.scale(&m.c1) + c.scale(&m.c2) == *p
        }
        (VerdictKind::SubharmonicBoundaryCertified, Some(Certificate::Sos(c))) => c.verify(p)?,
        (VerdictKind::NotSubharmonic, _) => match &v.witness {
            Some(w) => {
                let e = w.recheck(&lap)?;
                e < 0.0 && (e - w.min_eig).abs() <= 1e-10 * (1.0 + max_abs(&evaluate(&lap, &w.point()?)?))
            }
            None => v.obstruction.is_some(),
        },
        _ => false,
    })
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            VerdictKind::Harmonic => "Harmonic",
            VerdictKind::PurelySubharmonicCertified => "PurelySubharmonicCertified",
            VerdictKind::SubharmonicBoundaryCertified => "SubharmonicBoundaryCertified",
            VerdictKind::NotSubharmonic => "NotSubharmonic",
            VerdictKind::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}
