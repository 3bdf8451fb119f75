//! Self-checks over fixed parameter grids, shared by the CLI `check`
//! command and the test suites.

use std::fmt;
use std::str::FromStr;

use crate::catalog;
use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::modes::{boundary_behavior, mode, BoundaryBehavior, ModeResult};
use crate::moments::{mean, raw_moment_numeric, MomentResult};
use crate::numeric::{maximize_scalar, Quadrature, QuadratureResult, UniformStream};
use crate::params::{ExtendedP, IFParams, Subfamily};

pub const GRID_P: [ExtendedP; 6] = [
    ExtendedP::Finite(0.0),
    ExtendedP::Finite(0.5),
    ExtendedP::Finite(1.0),
    ExtendedP::Finite(5.0),
    ExtendedP::Finite(1e3),
    ExtendedP::Infinite,
];
pub const GRID_B: [f64; 6] = [-3.0, -1.0, -0.5, 0.5, 1.0, 2.0];
pub const GRID_Q: [f64; 4] = [0.5, 1.0, 2.0, 5.0];
pub const GRID_C: [f64; 2] = [1.0, 200.0];
pub const GRID_X0: [f64; 2] = [0.0, 1.0];

/// Probability levels of the round-trip check.
pub const PROBABILITY_LEVELS: [f64; 13] = [1e-6, 0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 1.0 - 1e-6];

/// The 6×6×4×2×2 grid used by the normalization and round-trip checks.
pub fn reference_grid() -> Vec<IFParams> {
    let mut out = Vec::with_capacity(576);
    for p in GRID_P {
        for b in GRID_B {
            for q in GRID_Q {
                for c in GRID_C {
                    for x0 in GRID_X0 {
                        out.push(IFParams { p, b, c, q, x0 });
                    }
                }
            }
        }
    }
    out
}

/// ∫ pdf over the support, integrated in v = ln((x - x0)/c).
pub fn total_mass(params: &IFParams, tol: f64) -> Result<QuadratureResult> {
    let dist = Distribution::new(*params)?;
    let ln_c = params.c.ln();
    Quadrature::new(tol).integrate(
        |v| (dist.log_pdf_at_log_excess(v) + ln_c + v).exp(),
        f64::NEG_INFINITY,
        f64::INFINITY,
    )
}

/// ∫_{x0}^{x} pdf, integrated in the same coordinates as `total_mass`.
pub fn integrated_cdf(params: &IFParams, x: f64, tol: f64) -> Result<QuadratureResult> {
    let dist = Distribution::new(*params)?;
    if !(x > params.x0) {
        return Err(Error::Domain(format!("x must exceed x0 = {}", params.x0)));
    }
    let ln_c = params.c.ln();
    let v_hi = ((x - params.x0) / params.c).ln();
    Quadrature::new(tol).integrate(|v| (dist.log_pdf_at_log_excess(v) + ln_c + v).exp(), f64::NEG_INFINITY, v_hi)
}

/// Parameter sets with closed-form modes, covering interior, boundary and
/// asymptote cases of one subfamily.
pub fn mode_cases(subfamily: Subfamily) -> Vec<IFParams> {
    const QS: [f64; 7] = [0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0];
    let mut out = Vec::new();
    for (i, q) in QS.into_iter().enumerate() {
        let c = if i % 2 == 0 { 1.0 } else { 2.5 };
        let x0 = if i % 3 == 0 { 0.0 } else { 1.5 };
        match subfamily {
            Subfamily::IF1 => {
                for b in [1.5, 2.5, 4.0, -1.5 / q, -3.0 / q, 1.0, -1.0 / q, 0.5] {
                    out.push(IFParams::new(0.0, b, c, q, x0));
                }
            }
            Subfamily::IF2 => {
                for b in [0.3, 1.0, 2.0, 4.0, -1.5 / q, -3.0 / q, -1.0 / q, -0.5 / q] {
                    out.push(IFParams::new(ExtendedP::Infinite, b, c, q, x0));
                }
            }
            Subfamily::IF3 => {
                for p in [0.1, 0.5, 1.0, 3.0, 10.0, 100.0, 1000.0, 2.5] {
                    out.push(IFParams::new(p, 1.0, c, q, x0));
                }
            }
            Subfamily::General => {
                for (p, b) in [(0.5, 2.0), (2.0, 0.7), (3.0, -1.5), (0.2, 3.0)] {
                    out.push(IFParams::new(p, b, c, q, x0));
                }
            }
        }
    }
    out
}

/// Argmax of the density by golden-section search in ln(x - x0) over
/// [x0 + δ, x0 + 50c] with δ = 1e-9 c.
pub fn golden_mode(params: &IFParams) -> Result<f64> {
    let dist = Distribution::new(*params)?;
    let lo = (1e-9f64).ln();
    let hi = 50f64.ln();
    let (v, _) = maximize_scalar(|v| dist.log_pdf_at_log_excess(v), lo, hi, 1e-12)?;
    Ok(params.x0 + params.c * v.exp())
}

/// Fixed arguments for every tabulated mean, one satisfying and (where a
/// constraint exists) one violating the constraint.
pub fn mean_fixtures() -> Vec<(&'static str, Vec<f64>)> {
    vec![
        ("pareto_iv", vec![0.5, 2.0, 3.0, 1.0]),
        ("pareto_iv", vec![3.0, 2.0, 2.0, 1.0]),
        ("lindsay_burr_iii", vec![-2.0, 1.5, 2.0, 0.5]),
        ("lindsay_burr_iii", vec![-0.5, 1.5, 2.0, 0.5]),
        ("dagum", vec![-3.0, 2.0, 1.5]),
        ("dagum", vec![-1.0, 2.0, 1.5]),
        ("pareto_ii", vec![2.0, 3.0, 1.0]),
        ("pareto_ii", vec![2.0, 1.0, 1.0]),
        ("pareto_iii", vec![0.4, 2.0, 1.0]),
        ("pareto_iii", vec![1.5, 2.0, 1.0]),
        ("tadikamalla_burr_xii", vec![2.0, 1.5, 2.0]),
        ("tadikamalla_burr_xii", vec![0.5, 1.5, 2.0]),
        ("fisk", vec![3.0, 2.0]),
        ("fisk", vec![1.0, 2.0]),
        ("lomax", vec![3.0, 4.0]),
        ("lomax", vec![3.0, 0.8]),
        ("pareto_i", vec![1.0, 2.0]),
        ("pareto_i", vec![1.0, 1.0]),
        ("burr_xii", vec![2.0, 3.0]),
        ("burr_xii", vec![0.25, 2.0]),
        ("weibull", vec![2.0, 1.5, 1.0]),
        ("frechet", vec![2.0, 3.0, 0.5]),
        ("frechet", vec![2.0, 1.0, 0.5]),
        ("gumbel_ii", vec![1.5, 2.5]),
        ("gumbel_ii", vec![1.5, 0.7]),
        ("rayleigh", vec![2.0]),
        ("inverse_rayleigh", vec![1.5]),
        ("exponential", vec![3.0]),
        ("inverse_exponential", vec![1.0]),
        ("generalized_lomax", vec![3.0, 2.0, 2.5]),
        ("generalized_lomax", vec![3.0, 2.0, 1.0]),
        ("stoppa", vec![2.0, 1.0, 3.0]),
        ("stoppa", vec![2.0, 1.0, 0.9]),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Normalization,
    Roundtrip,
    Moments,
    Modes,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Normalization, Suite::Roundtrip, Suite::Moments, Suite::Modes];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Normalization => "normalization",
            Suite::Roundtrip => "roundtrip",
            Suite::Moments => "moments",
            Suite::Modes => "modes",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s.trim())
            .ok_or_else(|| Error::Domain(format!("unknown suite `{s}` (normalization, roundtrip, moments, modes)")))
    }
}

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub tol: f64,
    pub cases: usize,
    pub worst: f64,
    pub worst_case: String,
    /// One line per violated case.
    pub failures: Vec<String>,
    /// Per-row detail lines worth printing even on success.
    pub details: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, tol: f64) -> Self {
        Self { suite, tol, cases: 0, worst: 0.0, worst_case: String::new(), failures: Vec::new(), details: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, label: impl Fn() -> String, deviation: f64) {
        self.cases += 1;
        if deviation > self.worst || deviation.is_nan() {
            self.worst = deviation;
            self.worst_case = label();
        }
        if !(deviation <= self.tol) {
            self.failures.push(format!("{} deviation {deviation:e}", label()));
        }
    }

    fn fail(&mut self, label: String, err: &Error) {
        self.cases += 1;
        self.failures.push(format!("{label}: {err}"));
    }
}

pub fn run(suite: Suite, tol: f64) -> Result<SuiteReport> {
    if !(tol > 0.0) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    Ok(match suite {
        Suite::Normalization => normalization(tol),
        Suite::Roundtrip => roundtrip(tol),
        Suite::Moments => moments(tol),
        Suite::Modes => modes(tol),
    })
}

fn normalization(tol: f64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Normalization, tol);
    for params in reference_grid() {
        match total_mass(&params, 1e-10) {
            Ok(r) if r.converged => rep.record(|| params.to_string(), (r.value - 1.0).abs()),
            Ok(r) => rep.fail(params.to_string(), &Error::Numeric(format!("no convergence, mass {}", r.value))),
            Err(e) => rep.fail(params.to_string(), &e),
        }
    }
    rep
}

/// Round trip through the excess coordinates, where every level is
/// representable whatever x0 is.
fn roundtrip(tol: f64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Roundtrip, tol);
    for params in reference_grid() {
        let dist = match Distribution::new(params) {
            Ok(d) => d,
            Err(e) => {
                rep.fail(params.to_string(), &e);
                continue;
            }
        };
        for y in PROBABILITY_LEVELS {
            let back = dist.quantile_excess(y).and_then(|d| dist.cdf_excess(d));
            match back {
                Ok(v) => rep.record(|| format!("{params} y={y}"), (v - y).abs()),
                Err(e) => rep.fail(format!("{params} y={y}"), &e),
            }
        }
    }
    rep
}

fn moments(tol: f64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Moments, tol);
    let mut rng = UniformStream::new(0x7ab1e);
    let mut cases = mean_fixtures();
    for e in catalog::entries().iter().filter(|e| e.mean.is_some()) {
        for _ in 0..3 {
            cases.push((e.name, e.draw_args(&mut rng)));
        }
    }
    for (name, args) in cases {
        let label = format!("{name}{args:?}");
        match check_mean_row(name, &args) {
            Ok(MeanCheck::Agree { closed, numeric }) => {
                let dev = (closed - numeric).abs() / (1.0 + closed.abs());
                rep.details.push(format!("{label} closed={closed} numeric={numeric} delta={dev:e}"));
                rep.record(|| label.clone(), dev);
            }
            Ok(MeanCheck::BothNonExistent(constraint)) => {
                rep.details.push(format!("{label} nonexistent ({constraint})"));
                rep.record(|| label.clone(), 0.0);
            }
            Ok(MeanCheck::Mismatch(msg)) => rep.fail(label, &Error::Numeric(msg)),
            Err(e) => rep.fail(label, &e),
        }
    }
    rep
}

/// Result of comparing a tabulated mean with the moment engine.
#[derive(Debug, Clone, PartialEq)]
pub enum MeanCheck {
    Agree { closed: f64, numeric: f64 },
    BothNonExistent(String),
    Mismatch(String),
}

/// Tabulated mean against `mean` and against quadrature of x·pdf.
pub fn check_mean_row(name: &str, args: &[f64]) -> Result<MeanCheck> {
    let entry = catalog::entry(name)?;
    let params = entry.map(args)?;
    let table = entry.tabulated_mean(args)?;
    let engine = mean(&params)?;
    match (&table, &engine) {
        (MomentResult::Finite { value: t, .. }, MomentResult::Finite { value: m, .. }) => {
            if (t - m).abs() > 1e-9 * t.abs().max(1.0) {
                return Ok(MeanCheck::Mismatch(format!("tabulated {t} but moment engine {m}")));
            }
            let numeric = raw_moment_numeric(&params, 1)?
                .value()
                .ok_or_else(|| Error::Numeric("numeric path reports no mean".into()))?;
            Ok(MeanCheck::Agree { closed: *t, numeric })
        }
        (MomentResult::NonExistent { constraint }, MomentResult::NonExistent { .. }) => {
            Ok(MeanCheck::BothNonExistent(constraint.clone()))
        }
        _ => Ok(MeanCheck::Mismatch(format!("tabulated {table:?} but moment engine {engine:?}"))),
    }
}

fn modes(tol: f64) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Modes, tol);
    for sub in [Subfamily::IF1, Subfamily::IF2, Subfamily::IF3] {
        for params in mode_cases(sub) {
            let label = params.to_string();
            match mode_deviation(&params) {
                Ok(dev) => rep.record(|| label.clone(), dev),
                Err(e) => rep.fail(label, &e),
            }
        }
    }
    rep
}

/// Distance in units of c between the closed-form mode and the golden
/// section oracle. Asymptote cases contribute zero when the boundary
/// classification agrees.
pub fn mode_deviation(params: &IFParams) -> Result<f64> {
    let m = mode(params)?;
    let c = params.c;
    match m {
        ModeResult::AsymptoteAtBoundary => {
            let diverges = boundary_behavior(params) == BoundaryBehavior::DivergesToInfinity
                && Distribution::new(*params)?.pdf(params.x0)? == f64::INFINITY;
            if diverges {
                Ok(0.0)
            } else {
                Err(Error::Numeric("asymptote reported but the density is finite at x0".into()))
            }
        }
        ModeResult::Boundary(x) => Ok((golden_mode(params)? - x).abs() / c),
        ModeResult::Interior { x, .. } => Ok((golden_mode(params)? - x).abs() / c),
    }
}
