use std::io::Read;
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use ncharm_core::{parse, Error, Poly};
use serde::Deserialize;

/// A failure that ends the run with exit code 2.
#[derive(Debug)]
pub struct Failure(pub String);

impl Failure {
    pub fn engine(e: Error) -> Failure {
        Failure(e.to_string())
    }

    /// Engine error annotated with the offending position in `src`.
    pub fn in_source(e: Error, origin: &str, src: &str) -> Failure {
        match e {
            Error::Parse { pos, .. } if !src.starts_with('{') => Failure(annotate(&e, origin, src, pos)),
            e => Failure(format!("{origin}: {e}")),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::engine(e)
    }
}

fn annotate(e: &Error, origin: &str, src: &str, pos: usize) -> String {
    let line_start = src[..pos.min(src.len())].rfind('\n').map_or(0, |i| i + 1);
    let line_end = src[line_start..].find('\n').map_or(src.len(), |i| line_start + i);
    let line = &src[line_start..line_end];
    let lineno = src[..line_start].matches('\n').count() + 1;
    let col = src[line_start..pos.min(src.len())].chars().count();
    format!(
        "{origin}:{lineno}:{}: {e}\n  {line}\n  {}^",
        col + 1,
        " ".repeat(col)
    )
}

/// Where the polynomial text comes from.
pub enum Source<'a> {
    Inline(&'a str),
    File(&'a Path),
    Stdin,
}

impl<'a> Source<'a> {
    pub fn pick(inline: Option<&'a str>, file: Option<&'a PathBuf>) -> Result<Source<'a>, Failure> {
        match (inline, file) {
            (Some(_), Some(_)) => Err(Failure(
                "both an inline polynomial and --file were given; pass only one".into(),
            )),
            (Some(s), None) => Ok(Source::Inline(s)),
            (None, Some(p)) if p.as_os_str() == "-" => Ok(Source::Stdin),
            (None, Some(p)) => Ok(Source::File(p)),
            (None, None) => Ok(Source::Stdin),
        }
    }

    fn read(&self) -> Result<(String, String), Failure> {
        match self {
            Source::Inline(s) => Ok(("<argument>".into(), s.to_string())),
            Source::File(p) => std::fs::read_to_string(p)
                .map(|s| (p.display().to_string(), s))
                .map_err(|e| Failure(format!("{}: {e}", p.display()))),
            Source::Stdin => {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Failure(format!("<stdin>: {e}")))?;
                Ok(("<stdin>".into(), s))
            }
        }
    }
}

/// Reads a polynomial in text or JSON form. JSON input must agree with
/// `vars`.
pub fn load_poly(src: &Source, vars: usize) -> Result<Poly, Failure> {
    let (origin, text) = src.read()?;
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Failure(format!("{origin}: empty input")));
    }
    if trimmed.starts_with('{') {
        let p = Poly::from_json(trimmed).map_err(|e| Failure::in_source(e, &origin, trimmed))?;
        if p.num_vars() != vars {
            return Err(Failure::in_source(
                Error::VarsMismatch {
                    left: p.num_vars(),
                    right: vars,
                },
                &origin,
                trimmed,
            ));
        }
        return Ok(p);
    }
    parse(trimmed, vars).map_err(|e| Failure::in_source(e, &origin, trimmed))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointFile {
    #[serde(rename = "X")]
    xs: Vec<Vec<Vec<f64>>>,
    #[serde(rename = "H", default)]
    h: Option<Vec<Vec<f64>>>,
}

fn to_matrix(rows: &[Vec<f64>], what: &str) -> Result<DMatrix<f64>, Failure> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Failure(format!("{what} is not square")));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

/// Reads `{"X": [[[..]], ..], "H": [[..]]}` with row-major matrices.
pub fn load_point(path: &Path) -> Result<(Vec<DMatrix<f64>>, Option<DMatrix<f64>>), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let raw: PointFile = serde_json::from_str(&text).map_err(|e| {
        Failure(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))
    })?;
    let xs = raw
        .xs
        .iter()
        .enumerate()
        .map(|(i, m)| to_matrix(m, &format!("X{}", i + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    let h = raw.h.as_deref().map(|m| to_matrix(m, "H")).transpose()?;
    Ok((xs, h))
}
