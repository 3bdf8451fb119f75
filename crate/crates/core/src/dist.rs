use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::modes::{boundary_behavior, BoundaryBehavior};
use crate::numeric::{log1mexp, softplus, UniformStream};
use crate::params::{ExtendedP, IFParams, Subfamily};

/// The p-exponential e_p(x) = (1 - x/(p+1))^p on [0, p+1], with e_∞(x) = e^{-x}.
pub fn p_exponential(p: ExtendedP, x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain(format!("p-exponential needs x >= 0, got {x}")));
    }
    match p {
        ExtendedP::Infinite => Ok((-x).exp()),
        ExtendedP::Finite(p) => {
            if p.is_nan() || p < 0.0 || !p.is_finite() {
                return Err(Error::InvalidParameter("p must be nonnegative".into()));
            }
            if x > p + 1.0 {
                return Err(Error::Domain(format!("p-exponential needs x <= p+1 = {}, got {x}", p + 1.0)));
            }
            if p == 0.0 {
                return Ok(1.0);
            }
            Ok((p * (-x / (p + 1.0)).ln_1p()).exp())
        }
    }
}

/// G(x) = (p+1)^{-1/q} + ((x - x0)/c)^b, the shifted power inside the density.
/// At p = ∞ the offset vanishes.
pub fn g_big(params: &IFParams, x: f64) -> Result<f64> {
    params.validate()?;
    if x.is_nan() || x < params.x0 {
        return Err(Error::Domain(format!("G needs x >= x0 = {}, got {x}", params.x0)));
    }
    let u = (x - params.x0) / params.c;
    let k = match params.p {
        ExtendedP::Finite(p) => (p + 1.0).powf(-1.0 / params.q),
        ExtendedP::Infinite => 0.0,
    };
    Ok(k + u.powf(params.b))
}

/// A validated member of the family.
///
/// Everything is evaluated from v = ln((x - x0)/c) so both tails and the
/// neighbourhood of x0 stay accurate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Distribution {
    params: IFParams,
    // ln(|b| q / c)
    ln_norm: f64,
    // ln(p+1), zero when p is infinite (unused there)
    ln_p1: f64,
    boundary: BoundaryBehavior,
}

impl Distribution {
    pub fn new(params: IFParams) -> Result<Self> {
        params.validate()?;
        let ln_p1 = params.p.finite().map_or(0.0, |p| p.ln_1p());
        Ok(Self {
            params,
            ln_norm: (params.b.abs() * params.q / params.c).ln(),
            ln_p1,
            boundary: boundary_behavior(&params),
        })
    }

    pub fn params(&self) -> &IFParams {
        &self.params
    }

    pub fn subfamily(&self) -> Subfamily {
        self.params.classify()
    }

    pub fn boundary(&self) -> BoundaryBehavior {
        self.boundary
    }

    /// ln(1 - w) with w = G^{-q}/(p+1) = (1 + a)^{-q} and ln a = `la`.
    fn ln_one_minus_w(&self, la: f64) -> f64 {
        let q = self.params.q;
        if la < -36.0 {
            // 1 - (1+a)^{-q} = qa(1 - (q+1)a/2 + ...)
            q.ln() + la - 0.5 * (1.0 + q) * la.exp()
        } else {
            log1mexp(q * softplus(la))
        }
    }

    fn ln_a(&self, v: f64) -> f64 {
        self.params.b * v + self.ln_p1 / self.params.q
    }

    /// ln f at x = x0 + c e^v, for finite v.
    fn ln_pdf_v(&self, v: f64) -> f64 {
        let IFParams { b, q, .. } = self.params;
        match self.params.p {
            ExtendedP::Finite(p) => {
                let la = self.ln_a(v);
                let mut out = self.ln_norm + (b - 1.0) * v + (q + 1.0) / q * self.ln_p1 - (q + 1.0) * softplus(la);
                if p != 0.0 {
                    out += p * self.ln_one_minus_w(la);
                }
                out
            }
            ExtendedP::Infinite => self.ln_norm + (-b * q - 1.0) * v - (-b * q * v).exp(),
        }
    }

    /// ln of the b > 0 cdf, i.e. (p+1) ln(1 - w) or -u^{-bq}.
    fn ln_upper(&self, v: f64) -> f64 {
        let IFParams { b, q, .. } = self.params;
        match self.params.p {
            ExtendedP::Finite(p) => (p + 1.0) * self.ln_one_minus_w(self.ln_a(v)),
            ExtendedP::Infinite => -(-b * q * v).exp(),
        }
    }

    fn cdf_v(&self, v: f64) -> f64 {
        let c = self.ln_upper(v);
        if self.params.b > 0.0 {
            c.exp()
        } else {
            -c.exp_m1()
        }
    }

    fn sf_v(&self, v: f64) -> f64 {
        let c = self.ln_upper(v);
        if self.params.b > 0.0 {
            -c.exp_m1()
        } else {
            c.exp()
        }
    }

    fn ln_hazard_v(&self, v: f64) -> f64 {
        let IFParams { b, q, .. } = self.params;
        if b > 0.0 {
            return self.ln_pdf_v(v) - (-self.ln_upper(v).exp_m1()).ln();
        }
        match self.params.p {
            ExtendedP::Finite(_) => {
                let la = self.ln_a(v);
                self.ln_norm + (b - 1.0) * v + (q + 1.0) / q * self.ln_p1
                    - (q + 1.0) * softplus(la)
                    - self.ln_one_minus_w(la)
            }
            ExtendedP::Infinite => self.ln_norm + (-b * q - 1.0) * v,
        }
    }

    fn boundary_density(&self) -> f64 {
        match self.boundary {
            BoundaryBehavior::DivergesToInfinity => f64::INFINITY,
            BoundaryBehavior::FinitePositive(v) => v,
            BoundaryBehavior::ZeroAtBoundary => 0.0,
        }
    }

    fn log_excess(&self, d: f64) -> f64 {
        (d / self.params.c).ln()
    }

    fn check_x(x: f64) -> Result<()> {
        if x.is_nan() {
            Err(Error::Domain("x must not be NaN".into()))
        } else {
            Ok(())
        }
    }

    /// Density; zero below x0 and the boundary limit at x0.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        if x < self.params.x0 {
            return Ok(0.0);
        }
        self.pdf_excess(x - self.params.x0)
    }

    /// Density at x0 + d for an excess d >= 0. Use this instead of `pdf`
    /// when d is below the resolution of x0.
    pub fn pdf_excess(&self, d: f64) -> Result<f64> {
        Self::check_x(d)?;
        if d < 0.0 {
            return Ok(0.0);
        }
        if d == 0.0 {
            return Ok(self.boundary_density());
        }
        if d == f64::INFINITY {
            return Ok(0.0);
        }
        Ok(self.ln_pdf_v(self.log_excess(d)).exp())
    }

    /// Log density, defined only on the open support x > x0.
    pub fn log_pdf(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        if x <= self.params.x0 {
            return Err(Error::Domain(format!("log density needs x > x0 = {}, got {x}", self.params.x0)));
        }
        if x == f64::INFINITY {
            return Ok(f64::NEG_INFINITY);
        }
        Ok(self.ln_pdf_v(self.log_excess(x - self.params.x0)))
    }

    /// Log density at x = x0 + c e^v. The density of the standardised
    /// excess (X - x0)/c at e^v is `exp(log_pdf_at_log_excess(v)) * c`.
    pub fn log_pdf_at_log_excess(&self, v: f64) -> f64 {
        if v == f64::NEG_INFINITY {
            return self.boundary_density().ln();
        }
        if v == f64::INFINITY {
            return f64::NEG_INFINITY;
        }
        self.ln_pdf_v(v)
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        if x <= self.params.x0 {
            return Ok(0.0);
        }
        self.cdf_excess(x - self.params.x0)
    }

    pub fn cdf_excess(&self, d: f64) -> Result<f64> {
        Self::check_x(d)?;
        if d <= 0.0 {
            return Ok(0.0);
        }
        if d == f64::INFINITY {
            return Ok(1.0);
        }
        Ok(self.cdf_v(self.log_excess(d)))
    }

    pub fn survival(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        if x <= self.params.x0 {
            return Ok(1.0);
        }
        self.survival_excess(x - self.params.x0)
    }

    pub fn survival_excess(&self, d: f64) -> Result<f64> {
        Self::check_x(d)?;
        if d <= 0.0 {
            return Ok(1.0);
        }
        if d == f64::INFINITY {
            return Ok(0.0);
        }
        Ok(self.sf_v(self.log_excess(d)))
    }

    /// f/S on the open support.
    pub fn hazard(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        if x <= self.params.x0 {
            return Err(Error::Domain(format!("hazard needs x > x0 = {}, got {x}", self.params.x0)));
        }
        if x == f64::INFINITY {
            return Err(Error::Domain("hazard needs finite x".into()));
        }
        Ok(self.ln_hazard_v(self.log_excess(x - self.params.x0)).exp())
    }

    /// Excess d such that F(x0 + d) = y.
    pub fn quantile_excess(&self, y: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&y) {
            return Err(Error::Domain(format!("quantile level must lie in [0, 1], got {y}")));
        }
        if y == 0.0 {
            return Ok(0.0);
        }
        if y == 1.0 {
            return Ok(f64::INFINITY);
        }
        let (ln_y, ln_1my) = (y.ln(), (-y).ln_1p());
        // the b < 0 quantile is the b > 0 formula evaluated at 1 - y
        let d = if self.params.b > 0.0 {
            self.upper_quantile_excess(ln_y, ln_1my)
        } else {
            self.upper_quantile_excess(ln_1my, ln_y)
        };
        Ok(d)
    }

    /// The b > 0 form of the inverse cdf in terms of ln y and ln(1 - y),
    /// used with the sign of b as given.
    fn upper_quantile_excess(&self, ln_y: f64, ln_1my: f64) -> f64 {
        let IFParams { b, c, q, .. } = self.params;
        let ln_d = match self.params.p {
            ExtendedP::Finite(0.0) => {
                // ((1-y)^{-1/q} - 1)^{1/b}
                c.ln() + (-ln_1my / q).exp_m1().ln() / b
            }
            ExtendedP::Finite(p) => {
                // (p+1)^{-1/(bq)} ((1 - y^{1/(p+1)})^{-1/q} - 1)^{1/b}
                let ln_om = log1mexp(-ln_y / (p + 1.0));
                c.ln() - self.ln_p1 / (b * q) + (-ln_om / q).exp_m1().ln() / b
            }
            ExtendedP::Infinite => c.ln() + (-ln_y).ln() * (-1.0 / (b * q)),
        };
        ln_d.exp()
    }

    pub fn quantile(&self, y: f64) -> Result<f64> {
        Ok(self.params.x0 + self.quantile_excess(y)?)
    }

    pub fn median(&self) -> f64 {
        let IFParams { b, c, q, x0, .. } = self.params;
        let excess = match self.params.p {
            ExtendedP::Finite(0.0) => (LN_2 / q).exp_m1().powf(1.0 / b),
            ExtendedP::Finite(p) => {
                let inner = -(-LN_2 / (p + 1.0)).exp_m1();
                (p + 1.0).powf(-1.0 / (b * q)) * (-inner.ln() / q).exp_m1().powf(1.0 / b)
            }
            ExtendedP::Infinite => LN_2.powf(-1.0 / (b * q)),
        };
        x0 + c * excess
    }

    /// `n` draws by inverse transform from a seeded stream.
    pub fn sample(&self, n: usize, seed: u64) -> Vec<f64> {
        self.samples(seed).take(n).collect()
    }

    /// Endless inverse-transform draws.
    pub fn samples(&self, seed: u64) -> impl Iterator<Item = f64> + '_ {
        UniformStream::new(seed).map(move |u| self.quantile(u).expect("uniform draws lie strictly inside (0, 1)"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(p: impl Into<ExtendedP>, b: f64, c: f64, q: f64, x0: f64) -> Distribution {
        Distribution::new(IFParams::new(p, b, c, q, x0)).unwrap()
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    #[test]
    fn p_exponential_values() {
        assert_eq!(p_exponential(ExtendedP::Finite(0.0), 0.7).unwrap(), 1.0);
        assert!(close(p_exponential(ExtendedP::Finite(1.0), 1.0).unwrap(), 0.5, 1e-15));
        assert!(close(p_exponential(ExtendedP::Finite(2.0), 1.0).unwrap(), 4.0 / 9.0, 1e-15));
        assert!(close(p_exponential(ExtendedP::Infinite, 2.0).unwrap(), (-2.0f64).exp(), 1e-15));
        assert_eq!(p_exponential(ExtendedP::Finite(2.0), 3.0).unwrap(), 0.0);
        assert!(p_exponential(ExtendedP::Finite(2.0), 3.5).is_err());
        assert!(p_exponential(ExtendedP::Finite(2.0), -0.1).is_err());
        let big = p_exponential(ExtendedP::Finite(1e12), 2.0).unwrap();
        assert!(close(big, (-2.0f64).exp(), 1e-10));
    }

    #[test]
    fn g_big_values() {
        let p = IFParams::new(3.0, 1.0, 1.0, 2.0, 0.0);
        assert!(close(g_big(&p, 0.0).unwrap(), 0.5, 1e-15));
        assert!(close(g_big(&p, 1.5).unwrap(), 2.0, 1e-15));
        let inv = IFParams::new(3.0, -1.0, 1.0, 2.0, 0.0);
        assert_eq!(g_big(&inv, 0.0).unwrap(), f64::INFINITY);
        assert!(g_big(&p, -1.0).is_err());
    }

    #[test]
    fn pareto_one_closed_forms() {
        // Pareto I with x0 = 1, q = 1: f = 1/x^2, F = 1 - 1/x.
        let d = dist(0.0, 1.0, 1.0, 1.0, 1.0);
        assert!(close(d.pdf(2.0).unwrap(), 0.25, 1e-15));
        assert!(close(d.cdf(2.0).unwrap(), 0.5, 1e-15));
        assert!(close(d.survival(4.0).unwrap(), 0.25, 1e-15));
        assert!(close(d.hazard(4.0).unwrap(), 0.25, 1e-14));
        assert_eq!(d.quantile(0.75).unwrap(), 4.0);
        assert_eq!(d.pdf(0.5).unwrap(), 0.0);
        assert_eq!(d.cdf(0.5).unwrap(), 0.0);
    }

    #[test]
    fn pareto_one_quantile_exact() {
        let d = dist(0.0, 1.0, 1.0, 2.0, 1.0);
        assert_eq!(d.quantile(0.75).unwrap(), 2.0);
    }

    #[test]
    fn weibull_log_pdf_reference() {
        // q = 3 Weibull with c = 1 at x = 0.5
        // b = -1, p = ∞: f = 3 x^2 exp(-x^3)
        let d = dist(ExtendedP::Infinite, -1.0, 1.0, 3.0, 0.0);
        let expected = (3.0f64 * 0.25).ln() - 0.125;
        assert!(close(d.log_pdf(0.5).unwrap(), expected, 1e-14));
        assert!(close(d.log_pdf(0.5).unwrap(), -0.4126820724517809, 1e-14));
    }

    #[test]
    fn exponential_end() {
        // b = -1, q = 1, p = ∞ is the exponential
        let d = dist(ExtendedP::Infinite, -1.0, 2.0, 1.0, 0.0);
        for x in [0.1, 1.0, 5.0, 40.0] {
            assert!(close(d.pdf(x).unwrap(), 0.5 * (-x / 2.0).exp(), 1e-14));
            assert!(close(d.survival(x).unwrap(), (-x / 2.0).exp(), 1e-14));
            assert!(close(d.hazard(x).unwrap(), 0.5, 1e-14));
        }
        assert_eq!(d.pdf(0.0).unwrap(), 0.5);
    }

    #[test]
    fn if3_median_reference() {
        let d = dist(1.0, 1.0, 1.0, 2.0, 0.0);
        assert!(close(d.median(), 0.599456183689829, 1e-13));
        assert!(close(d.cdf(d.median()).unwrap(), 0.5, 1e-14));
    }

    #[test]
    fn median_matches_quantile() {
        for p in [ExtendedP::Finite(0.0), ExtendedP::Finite(0.5), ExtendedP::Finite(40.0), ExtendedP::Infinite] {
            for b in [-2.0, -0.5, 0.7, 3.0] {
                let d = dist(p, b, 3.0, 1.5, 0.25);
                assert!(close(d.median(), d.quantile(0.5).unwrap(), 1e-13), "{p} {b}");
            }
        }
    }

    #[test]
    fn quantile_endpoints() {
        for b in [-1.5, 2.0] {
            let d = dist(1.0, b, 1.0, 2.0, 3.0);
            assert_eq!(d.quantile(0.0).unwrap(), 3.0);
            assert_eq!(d.quantile(1.0).unwrap(), f64::INFINITY);
            assert!(d.quantile(1.5).is_err());
            assert!(d.quantile(f64::NAN).is_err());
        }
    }

    #[test]
    fn boundary_value_from_pdf() {
        // b(p+1) = 1 exactly: p = 1, b = 0.5
        let p = IFParams::new(1.0, 0.5, 2.0, 3.0, 0.0);
        let d = Distribution::new(p).unwrap();
        let expected = 0.5 * 3.0f64.powi(2) * 2.0f64.powf(5.0 / 3.0) / 2.0;
        assert!(close(d.pdf(0.0).unwrap(), expected, 1e-14));
        assert!(close(d.pdf_excess(1e-12).unwrap(), expected, 1e-5));
        assert_eq!(dist(1.0, 1.0, 200.0, 2.0, 0.0).pdf(0.0).unwrap(), 0.0);
        assert_eq!(dist(0.0, 0.5, 1.0, 2.0, 0.0).pdf(0.0).unwrap(), f64::INFINITY);
    }

    #[test]
    fn tiny_excess_stays_accurate() {
        // b(p+1) < 1: the density diverges like u^{b(p+1)-1}
        let d = dist(0.5, 0.5, 1.0, 1.0, 0.0);
        let u: f64 = 1e-300;
        // |b| q G^{-q-1} (q u^b (p+1)^{1/q})^p u^{b-1} with G -> (p+1)^{-1/q}
        let lead = 0.5 * 1.5f64.powf(2.0) * 1.5f64.powf(0.5) * u.powf(-0.25);
        let f = d.pdf_excess(u).unwrap();
        assert!(f.is_finite() && f > 0.0);
        assert!(close(f, lead, 1e-6), "{f} vs {lead}");
    }

    #[test]
    fn complements_sum_to_one() {
        for b in [-2.0, 1.3] {
            let d = dist(2.0, b, 1.0, 1.5, 0.0);
            for x in [1e-3, 0.3, 1.0, 7.0, 1e3] {
                let s = d.cdf(x).unwrap() + d.survival(x).unwrap();
                assert!((s - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn log_pdf_domain() {
        let d = dist(1.0, 1.0, 1.0, 1.0, 2.0);
        assert!(d.log_pdf(2.0).is_err());
        assert!(d.hazard(1.0).is_err());
        assert!(d.pdf(f64::NAN).is_err());
    }

    #[test]
    fn sampling_is_seeded() {
        let d = dist(1.0, 1.0, 1.0, 2.0, 0.0);
        assert_eq!(d.sample(50, 9), d.sample(50, 9));
        assert_ne!(d.sample(50, 9), d.sample(50, 10));
        assert!(d.sample(1000, 1).iter().all(|x| *x > 0.0 && x.is_finite()));
    }
}
