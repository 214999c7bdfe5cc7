//! `ncharm`: derivatives, Laplacians, harmonic bases, middle matrices and
//! subharmonicity verdicts for polynomials in noncommuting symmetric
//! variables.
//!
//! Exit status: 0 on success; 1 when `classify` refutes subharmonicity, a
//! counterexample is found by `sample` or `eval --subharmonic`, or `sos`
//! finds no certificate; 2 on usage, parse or validation errors.

mod input;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ncharm_core::calculus::{commutative_collapse, commutative_laplacian};
use ncharm_core::classify2::{odd_sandwich, sos_certificate};
use ncharm_core::json::{format_f64, matrix_rows, to_json, F17};
use ncharm_core::positivity::{min_eigenvalue, sample_matrix_positive, subharmonic_at_point, PointVerdict};
use ncharm_core::{
    classify, directional_derivative, evaluate, harmonic_basis, laplacian, MatrixPoint, MiddleMatrixRep,
    SampleConfig, VerdictKind,
};
use serde::Serialize;

use input::{load_point, load_poly, Failure, Source};

#[derive(Parser, Debug)]
#[command(name = "ncharm", version, about = "Harmonic and subharmonic noncommutative polynomials")]
struct Cli {
    /// Number of variables x1..xg.
    #[arg(long, global = true, default_value_t = 2)]
    vars: usize,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every random draw.
    #[arg(long, global = true, env = "NCHARM_SEED", default_value_t = 0)]
    seed: u64,
    /// Eigenvalue tolerance for numeric PSD tests.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PolyInput {
    /// Polynomial text such as "x1^2*x2 - 1/2*x2". Read from stdin when
    /// neither this nor --file is given.
    #[arg(allow_hyphen_values = true)]
    poly: Option<String>,
    /// Read the polynomial (text or JSON) from a file; "-" is stdin.
    #[arg(short, long)]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Sampling {
    /// Matrix sizes to sample, in order.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
    sizes: Vec<usize>,
    /// Samples per size.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Random directions tried per point.
    #[arg(long, default_value_t = 50)]
    h_samples: usize,
    /// Matrix entries are drawn uniformly from [-range, range].
    #[arg(long, default_value_t = 1.0)]
    range: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Directional derivative D[p, x_i] in direction h.
    Derive {
        /// Variable index i.
        #[arg(long)]
        var: usize,
        #[command(flatten)]
        input: PolyInput,
    },
    /// Noncommutative Laplacian.
    Laplacian {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Checks that collapsing the Laplacian equals h^2 times the commutative
    /// Laplacian of the collapse.
    CollapseCheck {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Exact basis of the harmonic polynomials of a given degree.
    HarmonicBasis {
        #[arg(long)]
        degree: usize,
    },
    /// Border vector and middle matrix of a polynomial quadratic in h. Input
    /// without h is replaced by its Laplacian.
    MiddleMatrix {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Classifies a homogeneous symmetric polynomial in two variables.
    Classify {
        #[command(flatten)]
        input: PolyInput,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Sum of squares of harmonics plus a harmonic remainder.
    Sos {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Sandwich decomposition of an odd-degree harmonic polynomial.
    OddSandwich {
        /// Degree; inferred from the polynomial unless it is zero.
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        input: PolyInput,
    },
    /// Evaluates at a matrix point given as JSON {"X": [...], "H": [...]}.
    Eval {
        #[arg(long)]
        point: PathBuf,
        /// Instead of evaluating, decide subharmonicity at X for every H.
        #[arg(long)]
        subharmonic: bool,
        #[command(flatten)]
        input: PolyInput,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Seeded search for a point where the polynomial is not PSD.
    Sample {
        #[command(flatten)]
        input: PolyInput,
        #[command(flatten)]
        sampling: Sampling,
    },
}

struct Output {
    text: String,
    json: String,
    code: u8,
}

impl Output {
    fn new<T: Serialize + ?Sized>(text: String, value: &T) -> Output {
        Output {
            text,
            json: to_json(value),
            code: 0,
        }
    }

    fn code(mut self, code: u8) -> Output {
        self.code = code;
        self
    }
}

impl Cli {
    fn config(&self, s: &Sampling) -> SampleConfig {
        SampleConfig {
            seed: self.seed,
            sizes: s.sizes.clone(),
            samples_per_size: s.samples,
            h_samples: s.h_samples,
            tol: self.tol,
            entry_range: s.range,
        }
    }

    fn poly(&self, input: &PolyInput) -> Result<ncharm_core::Poly, Failure> {
        let src = Source::pick(input.poly.as_deref(), input.file.as_ref())?;
        load_poly(&src, self.vars)
    }
}

#[derive(Serialize)]
struct CollapseReport {
    lhs: ncharm_core::CommPoly,
    rhs: ncharm_core::CommPoly,
    holds: bool,
}

#[derive(Serialize)]
struct BasisReport<'a> {
    g: usize,
    d: usize,
    dimension: usize,
    elements: &'a [ncharm_core::Poly],
}

#[derive(Serialize)]
struct EvalReport {
    n: usize,
    value: Vec<Vec<F17>>,
    min_eig: F17,
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    if cli.vars == 0 {
        return Err(Failure("--vars must be at least 1".into()));
    }
    Ok(match &cli.command {
        Command::Derive { var, input } => {
            let d = directional_derivative(&cli.poly(input)?, *var)?;
            Output::new(format!("{}\n", d.render()), &d)
        }
        Command::Laplacian { input } => {
            let l = laplacian(&cli.poly(input)?)?;
            Output::new(format!("{}\n", l.render()), &l)
        }
        Command::CollapseCheck { input } => {
            let p = cli.poly(input)?;
            let lhs = commutative_collapse(&laplacian(&p)?);
            let rhs = commutative_laplacian(&commutative_collapse(&p))?.times_h_power(2);
            let holds = lhs == rhs;
            let text = format!(
                "collapse(Lap p) = {}\nh^2 Delta(collapse p) = {}\nidentity {}\n",
                lhs.render(),
                rhs.render(),
                if holds { "holds" } else { "FAILS" }
            );
            Output::new(text, &CollapseReport { lhs, rhs, holds }).code(if holds { 0 } else { 1 })
        }
        Command::HarmonicBasis { degree } => {
            let b = harmonic_basis(cli.vars, *degree)?;
            let report = BasisReport {
                g: b.g,
                d: b.d,
                dimension: b.dim(),
                elements: &b.elements,
            };
            Output::new(render::basis(&b), &report)
        }
        Command::MiddleMatrix { input } => {
            let p = cli.poly(input)?;
            let q = if p.contains_h() { p } else { laplacian(&p)? };
            let rep = MiddleMatrixRep::extract(&q)?;
            Output::new(render::middle_matrix(&rep), &rep)
        }
        Command::Classify { input, sampling } => {
            let v = classify(&cli.poly(input)?, &cli.config(sampling))?;
            let code = u8::from(v.kind == VerdictKind::NotSubharmonic);
            Output::new(render::verdict(&v), &v).code(code)
        }
        Command::Sos { input } => match sos_certificate(&cli.poly(input)?)? {
            Some(c) => Output::new(render::sos(&c), &c),
            None => Output::new("no certificate found\n".into(), &serde_json::Value::Null).code(1),
        },
        Command::OddSandwich { degree, input } => {
            let p = cli.poly(input)?;
            let d = match degree.or(p.homogeneous_degree()) {
                Some(d) => d,
                None => return Err(Failure("cannot infer the degree of 0; pass --degree".into())),
            };
            let t = odd_sandwich(&p, d)?;
            Output::new(render::sandwich(&t), &t)
        }
        Command::Eval {
            point,
            subharmonic,
            input,
            sampling,
        } => {
            let p = cli.poly(input)?;
            let (xs, h) = load_point(point)?;
            if *subharmonic {
                let v = subharmonic_at_point(&p, &xs, &cli.config(sampling))?;
                let code = u8::from(matches!(v, PointVerdict::CounterexampleH(_)));
                Output::new(render::point_verdict(&v), &v).code(code)
            } else {
                let m = evaluate(&p, &MatrixPoint::new(xs, h)?)?;
                let e = if p.is_symmetric() { min_eigenvalue(&m)? } else { f64::NAN };
                let text = format!("n = {}\nmin_eig = {}\n{}", m.nrows(), format_f64(e), render::matrix(&m));
                let report = EvalReport {
                    n: m.nrows(),
                    value: matrix_rows(&m),
                    min_eig: F17(e),
                };
                Output::new(text, &report)
            }
        }
        Command::Sample { input, sampling } => {
            let s = sample_matrix_positive(&cli.poly(input)?, &cli.config(sampling))?;
            let code = u8::from(s.found_counterexample());
            Output::new(render::sample(&s), &s).code(code)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let body = if cli.json { out.json + "\n" } else { out.text };
            if stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(out.code)
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
