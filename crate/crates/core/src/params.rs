use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The interpolation parameter p ∈ [0, ∞]. The power-law end is
/// `Finite(0.0)` and the exponential cut-off end is the distinct
/// `Infinite` tag, never an IEEE infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedP {
    Finite(f64),
    Infinite,
}

impl ExtendedP {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedP::Finite(v) => Some(v),
            ExtendedP::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedP::Infinite)
    }

    pub fn is_zero(self) -> bool {
        self == ExtendedP::Finite(0.0)
    }

    fn validate(self) -> Result<()> {
        match self {
            ExtendedP::Finite(v) if v.is_nan() => Err(Error::InvalidParameter("p must not be NaN".into())),
            ExtendedP::Finite(v) if !v.is_finite() => {
                Err(Error::InvalidParameter("p must be finite or given as the inf tag".into()))
            }
            ExtendedP::Finite(v) if v < 0.0 => Err(Error::InvalidParameter("p must be nonnegative".into())),
            _ => Ok(()),
        }
    }
}

impl From<f64> for ExtendedP {
    /// `f64::INFINITY` maps to the `Infinite` tag.
    fn from(v: f64) -> Self {
        if v == f64::INFINITY {
            ExtendedP::Infinite
        } else {
            ExtendedP::Finite(v)
        }
    }
}

impl fmt::Display for ExtendedP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedP::Finite(v) => write!(f, "{v}"),
            ExtendedP::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtendedP {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(ExtendedP::Infinite);
        }
        let v: f64 =
            s.parse().map_err(|_| Error::InvalidParameter(format!("p must be a number or `inf`, got `{s}`")))?;
        let p = ExtendedP::from(v);
        p.validate()?;
        Ok(p)
    }
}

/// The five parameters of the family.
///
/// `b` is the shape (its sign switches between the family and its inverse),
/// `c` the scale, `q` the tail weight and `x0` the lower end of the support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IFParams {
    pub p: ExtendedP,
    pub b: f64,
    pub c: f64,
    pub q: f64,
    pub x0: f64,
}

/// Which of the named four-parameter subfamilies a parameter set belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subfamily {
    /// p = 0, the power-law end.
    IF1,
    /// p = ∞, the exponential cut-off end.
    IF2,
    /// 0 < p < ∞ and b = 1.
    IF3,
    General,
}

impl fmt::Display for Subfamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subfamily::IF1 => "IF1",
            Subfamily::IF2 => "IF2",
            Subfamily::IF3 => "IF3",
            Subfamily::General => "General",
        })
    }
}

impl IFParams {
    pub fn new(p: impl Into<ExtendedP>, b: f64, c: f64, q: f64, x0: f64) -> Self {
        Self { p: p.into(), b, c, q, x0 }
    }

    /// Checks every constraint, reporting the first violation by name.
    pub fn validate(&self) -> Result<()> {
        self.p.validate()?;
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must be finite")))
            }
        };
        finite("b", self.b)?;
        finite("c", self.c)?;
        finite("q", self.q)?;
        finite("x0", self.x0)?;
        if self.b == 0.0 {
            return Err(Error::InvalidParameter("b must be nonzero".into()));
        }
        if self.c <= 0.0 {
            return Err(Error::InvalidParameter("c must be positive".into()));
        }
        if self.q <= 0.0 {
            return Err(Error::InvalidParameter("q must be positive".into()));
        }
        if self.x0 < 0.0 {
            return Err(Error::InvalidParameter("x0 must be nonnegative".into()));
        }
        Ok(())
    }

    /// Exact comparisons: p = 0 and b = 1 must be hit exactly.
    pub fn classify(&self) -> Subfamily {
        match self.p {
            ExtendedP::Infinite => Subfamily::IF2,
            ExtendedP::Finite(0.0) => Subfamily::IF1,
            ExtendedP::Finite(_) if self.b == 1.0 => Subfamily::IF3,
            ExtendedP::Finite(_) => Subfamily::General,
        }
    }

    /// Same parameters with `b` negated: the inverse family.
    pub fn inverse(&self) -> Self {
        Self { b: -self.b, ..*self }
    }
}

impl fmt::Display for IFParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, b={}, c={}, q={}, x0={})", self.p, self.b, self.c, self.q, self.x0)
    }
}

/// Names the five parameters, for grids and sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamName {
    P,
    B,
    C,
    Q,
    X0,
}

impl ParamName {
    pub fn as_str(self) -> &'static str {
        match self {
            ParamName::P => "p",
            ParamName::B => "b",
            ParamName::C => "c",
            ParamName::Q => "q",
            ParamName::X0 => "x0",
        }
    }

    /// Returns `params` with this parameter replaced by `value`.
    pub fn substitute(self, params: IFParams, value: f64) -> IFParams {
        let mut out = params;
        match self {
            ParamName::P => out.p = ExtendedP::from(value),
            ParamName::B => out.b = value,
            ParamName::C => out.c = value,
            ParamName::Q => out.q = value,
            ParamName::X0 => out.x0 = value,
        }
        out
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ParamName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "p" => Ok(ParamName::P),
            "b" => Ok(ParamName::B),
            "c" => Ok(ParamName::C),
            "q" => Ok(ParamName::Q),
            "x0" => Ok(ParamName::X0),
            other => Err(Error::Domain(format!("unknown parameter name `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_names_the_constraint() {
        let err = IFParams::new(0.0, 0.0, 1.0, 1.0, 0.0).validate().unwrap_err();
        assert_eq!(err.to_string(), "b must be nonzero");
        let cases = [
            (IFParams::new(0.0, 1.0, 0.0, 1.0, 0.0), "c must be positive"),
            (IFParams::new(0.0, 1.0, 1.0, -1.0, 0.0), "q must be positive"),
            (IFParams::new(0.0, 1.0, 1.0, 1.0, -0.5), "x0 must be nonnegative"),
            (IFParams::new(-1.0, 1.0, 1.0, 1.0, 0.0), "p must be nonnegative"),
            (IFParams::new(f64::NAN, 1.0, 1.0, 1.0, 0.0), "p must not be NaN"),
            (IFParams::new(0.0, f64::NAN, 1.0, 1.0, 0.0), "b must be finite"),
        ];
        for (params, msg) in cases {
            assert_eq!(params.validate().unwrap_err().to_string(), msg);
        }
        assert!(IFParams::new(1.0, 1.0, 200.0, 2.0, 0.0).validate().is_ok());
        assert!(IFParams::new(ExtendedP::Infinite, -1.0, 1.0, 1.0, 0.0).validate().is_ok());
    }

    #[test]
    fn classification() {
        assert_eq!(IFParams::new(0.0, 2.0, 1.0, 1.0, 0.0).classify(), Subfamily::IF1);
        assert_eq!(IFParams::new(ExtendedP::Infinite, -1.0, 1.0, 1.0, 0.0).classify(), Subfamily::IF2);
        assert_eq!(IFParams::new(3.0, 1.0, 1.0, 1.0, 0.0).classify(), Subfamily::IF3);
        assert_eq!(IFParams::new(3.0, 2.0, 1.0, 1.0, 0.0).classify(), Subfamily::General);
        // exact thresholds only
        assert_eq!(IFParams::new(3.0, 1.0 + 1e-15, 1.0, 1.0, 0.0).classify(), Subfamily::General);
        assert_eq!(IFParams::new(1e-300, 2.0, 1.0, 1.0, 0.0).classify(), Subfamily::General);
    }

    #[test]
    fn parse_extended_p() {
        assert_eq!("inf".parse::<ExtendedP>().unwrap(), ExtendedP::Infinite);
        assert_eq!("2.5".parse::<ExtendedP>().unwrap(), ExtendedP::Finite(2.5));
        assert!("-1".parse::<ExtendedP>().is_err());
        assert!("abc".parse::<ExtendedP>().is_err());
        assert_eq!(ExtendedP::from(f64::INFINITY), ExtendedP::Infinite);
    }
}
