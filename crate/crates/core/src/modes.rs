use std::fmt;
use std::str::FromStr;

use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::numeric::{find_root, maximize_scalar, softplus, Bracket};
use crate::params::{ExtendedP, IFParams, ParamName, Subfamily};

/// Grid value written for a mode on the boundary x0.
pub const SENTINEL_BOUNDARY: f64 = -1.0;
/// Grid value written when the density has a vertical asymptote at x0.
pub const SENTINEL_ASYMPTOTE: f64 = -2.0;

/// Points in the sign-change scan of the mode equation.
pub const ROOT_SCAN_POINTS: usize = 1000;
const T_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryBehavior {
    DivergesToInfinity,
    FinitePositive(f64),
    ZeroAtBoundary,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeResult {
    Boundary(f64),
    Interior { x: f64, density: f64 },
    AsymptoteAtBoundary,
}

impl ModeResult {
    /// The value written into a mode grid cell.
    pub fn grid_value(&self) -> f64 {
        match *self {
            ModeResult::Boundary(_) => SENTINEL_BOUNDARY,
            ModeResult::Interior { x, .. } => x,
            ModeResult::AsymptoteAtBoundary => SENTINEL_ASYMPTOTE,
        }
    }
}

/// Threshold products such as bq = -1 are compared up to a few ulps so
/// that b = -1/q typed as a decimal still lands on the boundary case.
fn at(value: f64, target: f64) -> bool {
    (value - target).abs() <= 4.0 * f64::EPSILON * target.abs()
}

/// Behaviour of the density as x → x0⁺.
///
/// Near x0 the density behaves like (x-x0)^{b(p+1)-1} for b > 0 and like
/// (x-x0)^{-bq-1} for b < 0.
pub fn boundary_behavior(params: &IFParams) -> BoundaryBehavior {
    let IFParams { b, c, q, .. } = *params;
    if b < 0.0 {
        let bq = b * q;
        return if at(bq, -1.0) {
            BoundaryBehavior::FinitePositive(1.0 / c)
        } else if bq > -1.0 {
            BoundaryBehavior::DivergesToInfinity
        } else {
            BoundaryBehavior::ZeroAtBoundary
        };
    }
    match params.p {
        ExtendedP::Infinite => BoundaryBehavior::ZeroAtBoundary,
        ExtendedP::Finite(p) => {
            let e = b * (p + 1.0);
            if at(e, 1.0) {
                // b q^{p+1} (p+1)^{(p+q+1)/q} / c, with b = 1/(p+1)
                let direct = b * q.powf(p + 1.0) * (p + 1.0).powf((p + q + 1.0) / q) / c;
                let v = if direct.is_finite() && direct > 0.0 {
                    direct
                } else {
                    (b.ln() + (p + 1.0) * q.ln() + (p + q + 1.0) / q * p.ln_1p() - c.ln()).exp()
                };
                BoundaryBehavior::FinitePositive(v)
            } else if e < 1.0 {
                BoundaryBehavior::DivergesToInfinity
            } else {
                BoundaryBehavior::ZeroAtBoundary
            }
        }
    }
}

/// Residual of the mode equation in t = G^{-q}/(p+1), divided by t^{-1/q}
/// and evaluated from the logit τ = ln(t/(1-t)).
fn residual_logit(b: f64, q: f64, p: f64, tau: f64) -> f64 {
    let ln_t = -softplus(-tau);
    let t = ln_t.exp();
    let one_m_t = (-softplus(tau)).exp();
    let one_m_s = -(ln_t / q).exp_m1();
    (b - 1.0) * one_m_t - b * (q + 1.0) * one_m_s * one_m_t + p * b * q * one_m_s * t
}

/// (b-1) t^{-1/q}(1-t) - b(q+1)(t^{-1/q}-1)(1-t) + pbq(t^{-1/q}-1)t.
pub fn mode_equation(params: &IFParams, t: f64) -> Result<f64> {
    let p = finite_p(params)?;
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Domain(format!("mode equation needs t in (0, 1), got {t}")));
    }
    let s = t.powf(-1.0 / params.q);
    let IFParams { b, q, .. } = *params;
    Ok((b - 1.0) * s * (1.0 - t) - b * (q + 1.0) * (s - 1.0) * (1.0 - t) + p * b * q * (s - 1.0) * t)
}

fn finite_p(params: &IFParams) -> Result<f64> {
    params.validate()?;
    params.p.finite().ok_or_else(|| Error::Domain("the mode equation needs a finite p".into()))
}

/// Roots of the mode equation in logit coordinates, ascending.
fn logit_roots(params: &IFParams) -> Result<Vec<f64>> {
    let p = finite_p(params)?;
    let IFParams { b, q, .. } = *params;
    let f = |tau: f64| residual_logit(b, q, p, tau);
    let lo = (T_EPS / (1.0 - T_EPS)).ln();
    let hi = -lo;
    let step = (hi - lo) / (ROOT_SCAN_POINTS - 1) as f64;
    let mut roots = Vec::new();
    let mut prev_tau = lo;
    let mut prev = f(lo);
    for i in 1..ROOT_SCAN_POINTS {
        let tau = if i == ROOT_SCAN_POINTS - 1 { hi } else { lo + step * i as f64 };
        let cur = f(tau);
        if prev == 0.0 {
            roots.push(prev_tau);
        } else if prev.signum() != cur.signum() && cur != 0.0 {
            roots.push(find_root(f, Bracket::new(prev_tau, tau)?, T_EPS)?);
        }
        prev_tau = tau;
        prev = cur;
    }
    if prev == 0.0 {
        roots.push(prev_tau);
    }
    roots.dedup_by(|a, b| (*a - *b).abs() <= T_EPS);
    Ok(roots)
}

/// All roots t ∈ (0, 1) of the mode equation found by the grid scan.
pub fn solve_mode_equation(params: &IFParams) -> Result<Vec<f64>> {
    Ok(logit_roots(params)?.into_iter().map(|tau| (-softplus(-tau)).exp()).collect())
}

/// ln((x - x0)/c) for a root given by ln t.
fn ln_excess_from_ln_t(params: &IFParams, ln_t: f64) -> f64 {
    let p = params.p.finite().unwrap_or_default();
    (-p.ln_1p() / params.q + (-ln_t / params.q).exp_m1().ln()) / params.b
}

/// x(t) = x0 + c (p+1)^{-1/(bq)} (t^{-1/q} - 1)^{1/b}.
pub fn x_of_t(params: &IFParams, t: f64) -> Result<f64> {
    finite_p(params)?;
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Domain(format!("t must lie in (0, 1), got {t}")));
    }
    Ok(params.x0 + params.c * ln_excess_from_ln_t(params, t.ln()).exp())
}

/// Mode from the general solver together with the number of roots found.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralMode {
    pub mode: ModeResult,
    pub root_count: usize,
}

/// Solves the mode equation numerically even where a closed form exists.
pub fn mode_general(params: &IFParams) -> Result<GeneralMode> {
    let roots = logit_roots(params)?;
    let dist = Distribution::new(*params)?;
    let root_count = roots.len();
    let boundary_density = match dist.boundary() {
        BoundaryBehavior::DivergesToInfinity => {
            return Ok(GeneralMode { mode: ModeResult::AsymptoteAtBoundary, root_count })
        }
        BoundaryBehavior::FinitePositive(v) => v,
        BoundaryBehavior::ZeroAtBoundary => 0.0,
    };
    let mut best: Option<(f64, f64)> = None;
    for tau in roots {
        let d = params.c * ln_excess_from_ln_t(params, -softplus(-tau)).exp();
        if !(d > 0.0 && d.is_finite()) {
            continue;
        }
        let density = dist.pdf_excess(d)?;
        if best.is_none_or(|(_, f)| density > f) {
            best = Some((params.x0 + d, density));
        }
    }
    let mode = match best {
        Some((x, density)) if density > boundary_density => ModeResult::Interior { x, density },
        Some(_) => ModeResult::Boundary(params.x0),
        None if boundary_density > 0.0 => ModeResult::Boundary(params.x0),
        None => fallback_maximum(&dist)?,
    };
    Ok(GeneralMode { mode, root_count })
}

fn fallback_maximum(dist: &Distribution) -> Result<ModeResult> {
    let x0 = dist.params().x0;
    let hi = dist.quantile(0.999)?;
    let (x, density) = maximize_scalar(|x| dist.pdf(x).unwrap_or(0.0), x0, hi, 1e-12)?;
    if x <= x0 {
        Ok(ModeResult::Boundary(x0))
    } else {
        Ok(ModeResult::Interior { x, density })
    }
}

fn interior(dist: &Distribution, x: f64) -> Result<ModeResult> {
    let density = dist.pdf(x)?;
    Ok(ModeResult::Interior { x, density })
}

/// Global maximiser of the density.
pub fn mode(params: &IFParams) -> Result<ModeResult> {
    let dist = Distribution::new(*params)?;
    let IFParams { b, c, q, x0, .. } = *params;
    let bq = b * q;
    match params.classify() {
        Subfamily::IF1 => {
            if at(bq, -1.0) || at(b, 1.0) {
                Ok(ModeResult::Boundary(x0))
            } else if bq < -1.0 || b > 1.0 {
                interior(&dist, x0 + c * ((b - 1.0) / (bq + 1.0)).powf(1.0 / b))
            } else {
                Ok(ModeResult::AsymptoteAtBoundary)
            }
        }
        Subfamily::IF2 => {
            if at(bq, -1.0) {
                Ok(ModeResult::Boundary(x0))
            } else if bq < -1.0 || b > 0.0 {
                interior(&dist, x0 + c * (bq / (bq + 1.0)).powf(1.0 / bq))
            } else {
                Ok(ModeResult::AsymptoteAtBoundary)
            }
        }
        Subfamily::IF3 => {
            let p = params.p.finite().unwrap_or_default();
            let inner = ((q + 1.0) / ((p + 1.0) * q + 1.0)).powf(-1.0 / q) - 1.0;
            interior(&dist, x0 + c * (p + 1.0).powf(-1.0 / q) * inner)
        }
        Subfamily::General => Ok(mode_general(params)?.mode),
    }
}

/// One axis of a mode grid: `steps` evenly spaced values of a parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: ParamName,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(param: ParamName, lo: f64, hi: f64, steps: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::Domain(format!("axis {param} needs finite lo <= hi, got [{lo}, {hi}]")));
        }
        if steps == 0 {
            return Err(Error::Domain(format!("axis {param} needs at least one step")));
        }
        Ok(Self { param, lo, hi, steps })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let n = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i == self.steps - 1 { self.hi } else { self.lo + (self.hi - self.lo) * i as f64 / n })
            .collect()
    }
}

impl FromStr for Axis {
    type Err = Error;

    /// `name:lo:hi:steps`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::Domain(format!("axis must look like name:lo:hi:steps, got `{s}`")));
        }
        let num = |v: &str| v.trim().parse::<f64>().map_err(|_| Error::Domain(format!("bad axis bound `{v}`")));
        let steps = parts[3]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Domain(format!("bad axis step count `{}`", parts[3])))?;
        Axis::new(parts[0].parse()?, num(parts[1])?, num(parts[2])?, steps)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.param, self.lo, self.hi, self.steps)
    }
}

/// Mode x-values over two axes, rows following `axis1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeGrid {
    pub axis1: Axis,
    pub axis2: Axis,
    pub rows: Vec<f64>,
    pub cols: Vec<f64>,
    /// `cells[i][j]` is the mode at `rows[i]`, `cols[j]`, or a sentinel.
    pub cells: Vec<Vec<f64>>,
}

pub fn mode_grid(template: &IFParams, axis1: Axis, axis2: Axis) -> Result<ModeGrid> {
    if axis1.param == axis2.param {
        return Err(Error::Domain(format!("both axes vary {}", axis1.param)));
    }
    let rows = axis1.values();
    let cols = axis2.values();
    let mut cells = Vec::with_capacity(rows.len());
    for &r in &rows {
        let mut line = Vec::with_capacity(cols.len());
        for &c in &cols {
            let params = axis2.param.substitute(axis1.param.substitute(*template, r), c);
            params.validate().map_err(|e| Error::Domain(format!("{}={r}, {}={c}: {e}", axis1.param, axis2.param)))?;
            line.push(mode(&params)?.grid_value());
        }
        cells.push(line);
    }
    Ok(ModeGrid { axis1, axis2, rows, cols, cells })
}
