use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::numeric::{beta, gamma, ln_gamma, Quadrature, QuadratureResult};
use crate::params::{ExtendedP, IFParams, Subfamily};

/// Relative tolerance of the numeric moment path.
pub const MOMENT_REL_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Provenance {
    ClosedForm,
    Numeric { abs_error: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum MomentResult {
    Finite { value: f64, provenance: Provenance },
    NonExistent { constraint: String },
}

impl MomentResult {
    pub fn value(&self) -> Option<f64> {
        match self {
            MomentResult::Finite { value, .. } => Some(*value),
            MomentResult::NonExistent { .. } => None,
        }
    }

    fn closed(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(MomentResult::Finite { value, provenance: Provenance::ClosedForm })
        } else {
            Err(Error::Numeric(format!("closed form evaluated to {value}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Existence {
    pub exists: bool,
    /// The condition the moment order has to satisfy, empty when every
    /// order exists.
    pub constraint: String,
}

fn check_order(r: u32) -> Result<()> {
    if r == 0 {
        Err(Error::Domain("moment order must be a positive integer".into()))
    } else {
        Ok(())
    }
}

/// Whether E[X^r] is finite.
///
/// For b > 0 the right tail decays like x^{-bq-1} whatever p is. For b < 0
/// and finite p it decays like x^{b(p+1)-1}, so the bound is r < -b(p+1);
/// at p = ∞ the tail is stretched-exponential and every moment exists.
pub fn moment_exists(params: &IFParams, r: u32) -> Result<Existence> {
    params.validate()?;
    check_order(r)?;
    let IFParams { b, q, .. } = *params;
    let r = r as f64;
    let (exists, constraint) = if b > 0.0 {
        (r < b * q, "requires r < bq")
    } else {
        match params.p {
            ExtendedP::Finite(p) => (r < -b * (p + 1.0), "requires r < -b(p+1)"),
            ExtendedP::Infinite => (true, ""),
        }
    };
    Ok(Existence { exists, constraint: constraint.to_string() })
}

fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Σ_i C(r,i) x0^i c^{r-i} m(r-i) where m(j) is E[U^j] of the standardised excess.
fn binomial_shift(params: &IFParams, r: u32, mut standard: impl FnMut(u32) -> Result<f64>) -> Result<f64> {
    let mut total = 0.0;
    for i in 0..=r {
        let j = r - i;
        let coef = binomial(r, i) * params.x0.powi(i as i32);
        if coef == 0.0 {
            continue;
        }
        total += coef * params.c.powi(j as i32) * standard(j)?;
    }
    Ok(total)
}

fn if1_standard(b: f64, q: f64, j: u32) -> Result<f64> {
    let j = j as f64;
    Ok(q * beta(q - j / b, 1.0 + j / b)?)
}

fn if2_standard(b: f64, q: f64, j: u32) -> Result<f64> {
    gamma(1.0 - j as f64 / (b * q))
}

fn if3_standard(p: f64, q: f64, j: u32) -> Result<f64> {
    let mut inner = 0.0;
    for k in 0..=j {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        inner += binomial(j, k) * sign * beta(1.0 - (j - k) as f64 / q, p + 1.0)?;
    }
    Ok((p + 1.0).powf(1.0 - j as f64 / q) * inner)
}

fn nonexistent(e: Existence) -> MomentResult {
    MomentResult::NonExistent { constraint: e.constraint }
}

/// E[X^r], in closed form for the three named subfamilies.
pub fn raw_moment(params: &IFParams, r: u32) -> Result<MomentResult> {
    let e = moment_exists(params, r)?;
    if !e.exists {
        return Ok(nonexistent(e));
    }
    let IFParams { b, q, .. } = *params;
    match params.classify() {
        Subfamily::IF1 => MomentResult::closed(binomial_shift(params, r, |j| if1_standard(b, q, j))?),
        Subfamily::IF2 => MomentResult::closed(binomial_shift(params, r, |j| if2_standard(b, q, j))?),
        Subfamily::IF3 => {
            let p = params.p.finite().unwrap_or_default();
            MomentResult::closed(binomial_shift(params, r, |j| if3_standard(p, q, j))?)
        }
        Subfamily::General => raw_moment_numeric(params, r),
    }
}

/// E[X^r] by quadrature regardless of subfamily.
pub fn raw_moment_numeric(params: &IFParams, r: u32) -> Result<MomentResult> {
    let e = moment_exists(params, r)?;
    if !e.exists {
        return Ok(nonexistent(e));
    }
    let dist = Distribution::new(*params)?;
    let res = standard_integral(&dist, |lx| r as f64 * lx)?;
    let scale = params.c.powi(r as i32);
    numeric_result(res.value * scale, res.abs_error_estimate * scale)
}

fn numeric_result(value: f64, abs_error: f64) -> Result<MomentResult> {
    if !value.is_finite() {
        return Err(Error::Numeric(format!("numeric moment evaluated to {value}")));
    }
    Ok(MomentResult::Finite { value, provenance: Provenance::Numeric { abs_error: abs_error.max(f64::MIN_POSITIVE) } })
}

/// ln(xi + e^v) without overflowing for large v.
fn ln_shifted(xi: f64, v: f64) -> f64 {
    if xi == 0.0 {
        v
    } else if v > xi.ln() {
        v + (xi * (-v).exp()).ln_1p()
    } else {
        xi.ln() + (v.exp() / xi).ln_1p()
    }
}

/// ∫ exp(h(ln(x0/c + U))) dF over the standardised excess U = e^v.
fn standard_integral(dist: &Distribution, mut h: impl FnMut(f64) -> f64) -> Result<QuadratureResult> {
    standard_integral_to(dist, f64::INFINITY, &mut h)
}

fn standard_integral_to(dist: &Distribution, v_hi: f64, h: &mut impl FnMut(f64) -> f64) -> Result<QuadratureResult> {
    let p = dist.params();
    let xi = p.x0 / p.c;
    let ln_c = p.c.ln();
    let integrand = |v: f64| {
        let ln_f = dist.log_pdf_at_log_excess(v) + ln_c + v;
        if ln_f == f64::NEG_INFINITY {
            return 0.0;
        }
        (h(ln_shifted(xi, v)) + ln_f).exp()
    };
    let res = Quadrature::new(f64::MIN_POSITIVE).rel_tol(MOMENT_REL_TOL).max_subintervals(6000).integrate(
        integrand,
        f64::NEG_INFINITY,
        v_hi,
    )?;
    if !res.converged {
        return Err(Error::Numeric(format!(
            "moment quadrature did not converge (value {}, error estimate {})",
            res.value, res.abs_error_estimate
        )));
    }
    Ok(res)
}

/// ∫_{x0}^{upper} x^r f(x) dx, without any existence check.
pub fn truncated_raw_moment(params: &IFParams, r: u32, upper: f64) -> Result<QuadratureResult> {
    check_order(r)?;
    let dist = Distribution::new(*params)?;
    if upper.is_nan() || upper <= params.x0 {
        return Err(Error::Domain(format!("upper limit must exceed x0 = {}", params.x0)));
    }
    let v_hi = ((upper - params.x0) / params.c).ln();
    let scale = params.c.powi(r as i32);
    let res = standard_integral_to(&dist, v_hi, &mut |lx| r as f64 * lx)?;
    Ok(QuadratureResult { value: res.value * scale, abs_error_estimate: res.abs_error_estimate * scale, ..res })
}

/// Ratio Γ(a)Γ(b)/Γ(c).
fn gamma_ratio(a: f64, b: f64, c: f64) -> Result<f64> {
    if a.max(b).max(c) < 170.0 {
        Ok(gamma(a)? * gamma(b)? / gamma(c)?)
    } else {
        Ok((ln_gamma(a)? + ln_gamma(b)? - ln_gamma(c)?).exp())
    }
}

pub fn mean(params: &IFParams) -> Result<MomentResult> {
    let e = moment_exists(params, 1)?;
    if !e.exists {
        return Ok(nonexistent(e));
    }
    let IFParams { b, c, q, x0, .. } = *params;
    match params.classify() {
        Subfamily::IF1 => MomentResult::closed(x0 + c * gamma_ratio(q - 1.0 / b, 1.0 + 1.0 / b, q)?),
        Subfamily::IF2 => MomentResult::closed(x0 + c * gamma(1.0 - 1.0 / (b * q))?),
        Subfamily::IF3 => {
            let p = params.p.finite().unwrap_or_default();
            let bracket = beta(1.0 - 1.0 / q, p + 1.0)? - 1.0 / (p + 1.0);
            MomentResult::closed(x0 + c * (p + 1.0).powf(1.0 - 1.0 / q) * bracket)
        }
        Subfamily::General => raw_moment_numeric(params, 1),
    }
}

pub fn variance(params: &IFParams) -> Result<MomentResult> {
    let e = moment_exists(params, 2)?;
    if !e.exists {
        return Ok(nonexistent(e));
    }
    let IFParams { b, c, q, .. } = *params;
    let c2 = c * c;
    match params.classify() {
        Subfamily::IF1 => {
            let m1 = q * beta(q - 1.0 / b, 1.0 + 1.0 / b)?;
            let m2 = q * beta(q - 2.0 / b, 1.0 + 2.0 / b)?;
            MomentResult::closed(c2 * (m2 - m1 * m1))
        }
        Subfamily::IF2 => {
            let g1 = gamma(1.0 - 1.0 / (b * q))?;
            MomentResult::closed(c2 * (gamma(1.0 - 2.0 / (b * q))? - g1 * g1))
        }
        Subfamily::IF3 => {
            let p = params.p.finite().unwrap_or_default();
            let b1 = beta(1.0 - 1.0 / q, p + 1.0)?;
            let b2 = beta(1.0 - 2.0 / q, p + 1.0)?;
            let inv = 1.0 / (p + 1.0);
            let first = (p + 1.0).powf(1.0 - 2.0 / q) * (b2 - 2.0 * b1 + inv);
            let second = (p + 1.0).powf(2.0 - 2.0 / q) * (b1 - inv).powi(2);
            MomentResult::closed(c2 * (first - second))
        }
        Subfamily::General => variance_numeric(params),
    }
}

/// Variance by quadrature of the central second moment.
pub fn variance_numeric(params: &IFParams) -> Result<MomentResult> {
    let e = moment_exists(params, 2)?;
    if !e.exists {
        return Ok(nonexistent(e));
    }
    let dist = Distribution::new(*params)?;
    let m = standard_integral(&dist, |lx| lx)?.value;
    // (x - m)^2 in log form
    let ln_m = m.ln();
    let res = standard_integral(&dist, |lx| {
        let ln_dev = if lx > ln_m + 1.0 { lx + (-(ln_m - lx).exp()).ln_1p() } else { (lx.exp() - m).abs().ln() };
        2.0 * ln_dev
    })?;
    if !(res.value > 0.0) {
        return Err(Error::Numeric(format!("numeric variance is not positive ({})", res.value)));
    }
    let c2 = params.c * params.c;
    numeric_result(res.value * c2, res.abs_error_estimate * c2)
}
