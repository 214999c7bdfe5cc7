use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use super::ldl::{ldl_pivots, min_eigenvalue};
use super::rng::SplitMix64;
use crate::calculus::laplacian;
use crate::error::{Error, Result};
use crate::json::{serialize_f64, serialize_matrices, serialize_opt_matrix};
use crate::middlematrix::MiddleMatrixRep;
use crate::ncpoly::{evaluate, MatrixPoint, Poly};

/// Tag separating the `H` draws of [`subharmonic_at_point`] from the streams
/// used by [`sample_matrix_positive`].
const POINT_H_TAG: u64 = 0x4856_5f50_4f49_4e54;

#[derive(Clone, Debug, PartialEq)]
pub struct SampleConfig {
    pub seed: u64,
    pub sizes: Vec<usize>,
    pub samples_per_size: usize,
    pub h_samples: usize,
    pub tol: f64,
    pub entry_range: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            seed: 0,
            sizes: vec![1, 2, 3, 4],
            samples_per_size: 200,
            h_samples: 50,
            tol: 1e-9,
            entry_range: 1.0,
        }
    }
}

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return Err(Error::InvalidArgument("sizes must be nonempty and >= 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidArgument("tol must be positive".into()));
        }
        if !(self.entry_range > 0.0 && self.entry_range.is_finite()) {
            return Err(Error::InvalidArgument("entry range must be positive".into()));
        }
        Ok(())
    }
}

/// A point at which a polynomial is not PSD.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub n: usize,
    #[serde(rename = "X", serialize_with = "serialize_matrices")]
    pub xs: Vec<DMatrix<f64>>,
    #[serde(rename = "H", serialize_with = "serialize_opt_matrix")]
    pub h: Option<DMatrix<f64>>,
    #[serde(serialize_with = "serialize_f64")]
    pub min_eig: f64,
    pub sample_index: usize,
}

impl Witness {
    pub fn point(&self) -> Result<MatrixPoint> {
        MatrixPoint::new(self.xs.clone(), self.h.clone())
    }

    /// Recomputes the smallest eigenvalue of `p` at this point.
    pub fn recheck(&self, p: &Poly) -> Result<f64> {
        min_eigenvalue(&evaluate(p, &self.point()?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleStats {
    pub samples_tested: usize,
    #[serde(serialize_with = "serialize_f64")]
    pub min_eig_seen: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "witness")]
pub enum SampleOutcome {
    NoCounterexampleFound,
    Counterexample(Witness),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleVerdict {
    #[serde(flatten)]
    pub outcome: SampleOutcome,
    pub stats: SampleStats,
}

impl SampleVerdict {
    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            SampleOutcome::Counterexample(w) => Some(w),
            SampleOutcome::NoCounterexampleFound => None,
        }
    }

    pub fn found_counterexample(&self) -> bool {
        self.witness().is_some()
    }
}

fn draw_point(cfg: &SampleConfig, g: usize, with_h: bool, n: usize, s: usize) -> (Vec<DMatrix<f64>>, Option<DMatrix<f64>>) {
    let draw = |slot: usize| {
        SplitMix64::keyed(cfg.seed, &[n as u64, s as u64, slot as u64]).symmetric_matrix(n, cfg.entry_range)
    };
    let xs = (0..g).map(draw).collect();
    let h = with_h.then(|| draw(g));
    (xs, h)
}

/// Seeded search for a matrix point where `p` has an eigenvalue below
/// `-tol`. Sizes are scanned in the configured order; within a size samples
/// run in parallel and the lowest index wins.
pub fn sample_matrix_positive(p: &Poly, cfg: &SampleConfig) -> Result<SampleVerdict> {
    cfg.validate()?;
    if !p.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let g = p.num_vars();
    let with_h = p.contains_h();
    let mut tested = 0;
    let mut min_seen = f64::INFINITY;
    for &n in &cfg.sizes {
        let eigs: Vec<f64> = (0..cfg.samples_per_size)
            .into_par_iter()
            .map(|s| {
                let (xs, h) = draw_point(cfg, g, with_h, n, s);
                let pt = MatrixPoint::new(xs, h)?;
                min_eigenvalue(&evaluate(p, &pt)?)
            })
            .collect::<Result<_>>()?;
        for (s, &e) in eigs.iter().enumerate() {
            tested += 1;
            min_seen = min_seen.min(e);
            if e < -cfg.tol {
                let (xs, h) = draw_point(cfg, g, with_h, n, s);
                return Ok(SampleVerdict {
                    outcome: SampleOutcome::Counterexample(Witness {
                        n,
                        xs,
                        h,
                        min_eig: e,
                        sample_index: s,
                    }),
                    stats: SampleStats {
                        samples_tested: tested,
                        min_eig_seen: min_seen,
                    },
                });
            }
        }
    }
    Ok(SampleVerdict {
        outcome: SampleOutcome::NoCounterexampleFound,
        stats: SampleStats {
            samples_tested: tested,
            min_eig_seen: min_seen,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "witness")]
pub enum PointVerdict {
    /// The middle matrix is PSD at `X`, so `Lap p (X)[H]` is PSD for every `H`.
    CertifiedAllH,
    CounterexampleH(Witness),
    Unknown,
}

/// Checks subharmonicity of `p` at the fixed point `xs`.
pub fn subharmonic_at_point(p: &Poly, xs: &[DMatrix<f64>], cfg: &SampleConfig) -> Result<PointVerdict> {
    cfg.validate()?;
    if p.contains_h() {
        return Err(Error::ContainsDirection);
    }
    if !p.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let pt = MatrixPoint::new(xs.to_vec(), None)?;
    if pt.xs().len() < p.num_vars() {
        return Err(Error::Dimension(format!(
            "polynomial has {} variables but point supplies {} matrices",
            p.num_vars(),
            pt.xs().len()
        )));
    }
    let lap = laplacian(p)?;
    let rep = MiddleMatrixRep::extract(&lap)?;
    if ldl_pivots(&rep.evaluate_middle(pt.xs())?, cfg.tol)?.psd {
        return Ok(PointVerdict::CertifiedAllH);
    }
    let n = pt.n();
    for k in 0..cfg.h_samples {
        let h = SplitMix64::keyed(cfg.seed ^ POINT_H_TAG, &[n as u64, k as u64, 0])
            .symmetric_matrix(n, cfg.entry_range);
        let e = min_eigenvalue(&evaluate(&lap, &pt.with_h(h.clone())?)?)?;
        if e < -cfg.tol {
            return Ok(PointVerdict::CounterexampleH(Witness {
                n,
                xs: pt.xs().to_vec(),
                h: Some(h),
                min_eig: e,
                sample_index: k,
            }));
        }
    }
    Ok(PointVerdict::Unknown)
}
