//! Plain-text forms of engine results.

use std::fmt::Write;

use nalgebra::DMatrix;
use num_traits::Zero;
use ncharm_core::classify2::{Certificate, SandwichTensor, SosCertificate};
use ncharm_core::json::{format_f64, to_json};
use ncharm_core::ncpoly::format_scalar;
use ncharm_core::positivity::{PointVerdict, SampleOutcome};
use ncharm_core::{HarmonicBasis, MiddleMatrixRep, SampleVerdict, Verdict, VerdictKind, Witness};

pub fn matrix(m: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format_f64(m[(i, j)])).collect();
        writeln!(out, "[{}]", row.join(", ")).unwrap();
    }
    out
}

pub fn witness(w: &Witness) -> String {
    format!(
        "witness: n = {}, min_eig = {}, sample {}\n{}\n",
        w.n,
        format_f64(w.min_eig),
        w.sample_index,
        to_json(w)
    )
}

pub fn basis(b: &HarmonicBasis) -> String {
    let mut out = format!("dimension {}\n", b.dim());
    for e in &b.elements {
        writeln!(out, "{}", e.render()).unwrap();
    }
    out
}

pub fn middle_matrix(rep: &MiddleMatrixRep) -> String {
    let border: Vec<String> = rep.border_words().iter().map(|w| w.render()).collect();
    let mut out = format!("border: {}\n", border.join(", "));
    for (i, row) in rep.z.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            writeln!(out, "Z[{}][{}] = {}", i + 1, j + 1, z.render()).unwrap();
        }
    }
    out
}

pub fn sos(c: &SosCertificate) -> String {
    format!(
        "sos: {}\nharmonic remainder: {}\n",
        c.sos.render(),
        c.harmonic_remainder.render()
    )
}

pub fn sandwich(t: &SandwichTensor) -> String {
    let mut out = format!("basis (degree {}):\n", t.basis.d);
    for (m, e) in t.basis.elements.iter().enumerate() {
        writeln!(out, "  g{} = {}", m + 1, e.render()).unwrap();
    }
    for (m, by_var) in t.phi.iter().enumerate() {
        for (i, row) in by_var.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    writeln!(out, "phi[g{}][x{}][g{}] = {}", m + 1, i + 1, j + 1, format_scalar(c)).unwrap();
                }
            }
        }
    }
    out
}

pub fn verdict(v: &Verdict) -> String {
    let mut out = format!("kind: {}\n", v.kind);
    match &v.certificate {
        Some(Certificate::Degree2 { a1_plus_a2 }) => {
            writeln!(out, "certified: Lap p = 2 (A1 + A2) h^2 with A1 + A2 = {}", format_scalar(a1_plus_a2)).unwrap();
        }
        Some(Certificate::Inequalities(r)) => {
            let c = &r.coeffs;
            let b: Vec<String> = c.b.iter().map(format_scalar).collect();
            writeln!(out, "region: {:?}", r.region).unwrap();
            writeln!(out, "B = [{}]", b.join(", ")).unwrap();
            writeln!(
                out,
                "G = {}, H = {}, J = {}, K = {}",
                format_scalar(&c.g()),
                format_scalar(&c.hh()),
                format_scalar(&c.jj()),
                format_scalar(&c.k())
            )
            .unwrap();
            writeln!(out, "H*G - J^2 - K^2 = {}", format_scalar(&c.margin())).unwrap();
        }
        Some(Certificate::Membership(m)) => {
            writeln!(
                out,
                "p = c0 (Re gamma^k)^2 + c1 Re gamma^2k + c2 Im gamma^2k with c0 = {}, c1 = {}, c2 = {}",
                format_scalar(&m.c0),
                format_scalar(&m.c1),
                format_scalar(&m.c2)
            )
            .unwrap();
        }
        Some(Certificate::Sos(c)) => out.push_str(&sos(c)),
        None => {}
    }
    if let Some(o) = &v.obstruction {
        writeln!(out, "obstruction: {o}").unwrap();
    }
    if let Some(w) = &v.witness {
        out.push_str(&witness(w));
    }
    if v.kind == VerdictKind::Unknown {
        out.push_str("no certificate and no counterexample found\n");
    }
    out
}

pub fn sample(s: &SampleVerdict) -> String {
    let mut out = match &s.outcome {
        SampleOutcome::NoCounterexampleFound => "no counterexample found (not a certificate)\n".to_string(),
        SampleOutcome::Counterexample(w) => format!("counterexample found\n{}", witness(w)),
    };
    writeln!(
        out,
        "samples tested: {}, min eigenvalue seen: {}",
        s.stats.samples_tested,
        format_f64(s.stats.min_eig_seen)
    )
    .unwrap();
    out
}

pub fn point_verdict(v: &PointVerdict) -> String {
    match v {
        PointVerdict::CertifiedAllH => "certified for all H at this point\n".into(),
        PointVerdict::CounterexampleH(w) => format!("counterexample direction found\n{}", witness(w)),
        PointVerdict::Unknown => "middle matrix not PSD; no counterexample direction found\n".into(),
    }
}
