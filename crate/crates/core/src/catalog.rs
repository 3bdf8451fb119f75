//! Named special cases of the family and the tree that links them.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::moments::{MomentResult, Provenance};
use crate::numeric::{beta, gamma, UniformStream};
use crate::params::{ExtendedP, IFParams};

/// Sign or range restriction on one free parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgRule {
    Positive,
    Negative,
    NonZero,
    NonNegative,
    AboveOne,
}

impl ArgRule {
    fn admits(self, v: f64) -> bool {
        v.is_finite()
            && match self {
                ArgRule::Positive => v > 0.0,
                ArgRule::Negative => v < 0.0,
                ArgRule::NonZero => v != 0.0,
                ArgRule::NonNegative => v >= 0.0,
                ArgRule::AboveOne => v > 1.0,
            }
    }

    /// A value drawn from a moderate range that satisfies the rule.
    fn draw(self, rng: &mut UniformStream) -> f64 {
        let u = rng.next_open();
        match self {
            ArgRule::Positive => 0.3 + 3.7 * u,
            ArgRule::Negative => -(0.3 + 3.7 * u),
            ArgRule::NonZero => {
                let v = 0.3 + 3.7 * u;
                if rng.next_open() < 0.5 {
                    -v
                } else {
                    v
                }
            }
            ArgRule::NonNegative => 3.0 * u,
            ArgRule::AboveOne => 1.1 + 4.9 * u,
        }
    }
}

impl fmt::Display for ArgRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArgRule::Positive => "> 0",
            ArgRule::Negative => "< 0",
            ArgRule::NonZero => "!= 0",
            ArgRule::NonNegative => ">= 0",
            ArgRule::AboveOne => "> 1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arg {
    pub name: &'static str,
    pub rule: ArgRule,
}

const fn arg(name: &'static str, rule: ArgRule) -> Arg {
    Arg { name, rule }
}

use ArgRule::*;

/// A tabulated closed-form mean with the condition under which it holds.
#[derive(Clone, Copy)]
pub struct MeanRow {
    pub formula: &'static str,
    /// Empty when the mean always exists.
    pub constraint: &'static str,
    /// `None` when the constraint is violated.
    eval: fn(&[f64]) -> Result<Option<f64>>,
}

impl fmt::Debug for MeanRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MeanRow").field("formula", &self.formula).field("constraint", &self.constraint).finish()
    }
}

/// One named distribution: its free parameters and the map into the family.
#[derive(Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub title: &'static str,
    pub args: &'static [Arg],
    /// The map into (p, b, c, q, x0) written in terms of `args`.
    pub image: &'static str,
    /// Longest path from the five-parameter root in the tree.
    pub depth: usize,
    map: fn(&[f64]) -> IFParams,
    args_of: fn(&IFParams) -> Vec<f64>,
    member: fn(&IFParams) -> bool,
    pub mean: Option<MeanRow>,
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogEntry")
            .field("name", &self.name)
            .field("args", &self.args)
            .field("depth", &self.depth)
            .finish()
    }
}

impl CatalogEntry {
    pub fn arg_names(&self) -> Vec<&'static str> {
        self.args.iter().map(|a| a.name).collect()
    }

    /// Parameters for argument values given in `args` order.
    pub fn map(&self, values: &[f64]) -> Result<IFParams> {
        if values.len() != self.args.len() {
            return Err(Error::InvalidParameter(format!(
                "{} takes {} arguments ({}), got {}",
                self.name,
                self.args.len(),
                self.arg_names().join(", "),
                values.len()
            )));
        }
        for (a, &v) in self.args.iter().zip(values) {
            if !a.rule.admits(v) {
                return Err(Error::InvalidParameter(format!("{}: {} must be {}, got {v}", self.name, a.name, a.rule)));
            }
        }
        let params = (self.map)(values);
        params.validate()?;
        Ok(params)
    }

    pub fn matches(&self, params: &IFParams) -> bool {
        (self.member)(params)
    }

    /// The entry's own arguments for a member parameter set.
    pub fn args_of(&self, params: &IFParams) -> Option<Vec<f64>> {
        self.matches(params).then(|| (self.args_of)(params))
    }

    /// Random valid arguments.
    pub fn draw_args(&self, rng: &mut UniformStream) -> Vec<f64> {
        self.args.iter().map(|a| a.rule.draw(rng)).collect()
    }

    /// Evaluates the tabulated mean at the given arguments.
    pub fn tabulated_mean(&self, values: &[f64]) -> Result<MomentResult> {
        let row = self.mean.ok_or_else(|| Error::Domain(format!("{} has no tabulated mean", self.name)))?;
        self.map(values)?;
        match (row.eval)(values)? {
            Some(value) => Ok(MomentResult::Finite { value, provenance: Provenance::ClosedForm }),
            None => Ok(MomentResult::NonExistent {
                constraint: if row.constraint.is_empty() {
                    "not defined".into()
                } else {
                    format!("requires {}", row.constraint)
                },
            }),
        }
    }
}

fn fin(p: &IFParams) -> Option<f64> {
    p.p.finite()
}
fn is0(p: &IFParams) -> bool {
    p.p.is_zero()
}
fn is_inf(p: &IFParams) -> bool {
    p.p.is_infinite()
}
fn interior_p(p: &IFParams) -> bool {
    fin(p).is_some_and(|v| v > 0.0)
}
fn stoppa_x0(p: f64, c: f64, q: f64) -> f64 {
    c * (p + 1.0).powf(-1.0 / q)
}
fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= 4.0 * f64::EPSILON * a.abs().max(b.abs())
}
fn when(ok: bool, v: impl FnOnce() -> Result<f64>) -> Result<Option<f64>> {
    if ok {
        v().map(Some)
    } else {
        Ok(None)
    }
}
fn burr_mean(b: f64, q: f64) -> Result<f64> {
    Ok(q * beta(q - 1.0 / b, 1.0 + 1.0 / b)?)
}

const INF: ExtendedP = ExtendedP::Infinite;

fn mk(p: ExtendedP, b: f64, c: f64, q: f64, x0: f64) -> IFParams {
    IFParams { p, b, c, q, x0 }
}
fn p0() -> ExtendedP {
    ExtendedP::Finite(0.0)
}

static ENTRIES: [CatalogEntry; 24] = [
    CatalogEntry {
        name: "if1",
        title: "IF1",
        image: "(0, b, c, q, x0)",
        args: &[arg("b", NonZero), arg("c", Positive), arg("q", Positive), arg("x0", NonNegative)],
        depth: 1,
        map: |a| mk(p0(), a[0], a[1], a[2], a[3]),
        args_of: |p| vec![p.b, p.c, p.q, p.x0],
        member: is0,
        mean: None,
    },
    CatalogEntry {
        name: "if2",
        title: "IF2",
        image: "(inf, b, c, q, x0)",
        args: &[arg("b", NonZero), arg("c", Positive), arg("q", Positive), arg("x0", NonNegative)],
        depth: 1,
        map: |a| mk(INF, a[0], a[1], a[2], a[3]),
        args_of: |p| vec![p.b, p.c, p.q, p.x0],
        member: is_inf,
        mean: None,
    },
    CatalogEntry {
        name: "if3",
        title: "IF3",
        image: "(p, 1, c, q, x0)",
        args: &[arg("p", Positive), arg("c", Positive), arg("q", Positive), arg("x0", NonNegative)],
        depth: 1,
        map: |a| mk(ExtendedP::Finite(a[0]), 1.0, a[1], a[2], a[3]),
        args_of: |p| vec![fin(p).unwrap_or_default(), p.c, p.q, p.x0],
        member: |p| interior_p(p) && p.b == 1.0,
        mean: None,
    },
    CatalogEntry {
        name: "pareto_iv",
        title: "Pareto IV",
        image: "(0, 1/gamma, c, q, x0)",
        args: &[arg("gamma", Positive), arg("c", Positive), arg("q", Positive), arg("x0", NonNegative)],
        depth: 2,
        map: |a| mk(p0(), 1.0 / a[0], a[1], a[2], a[3]),
        args_of: |p| vec![1.0 / p.b, p.c, p.q, p.x0],
        member: |p| is0(p) && p.b > 0.0,
        mean: Some(MeanRow {
            formula: "x0 + c q B(q - gamma, 1 + gamma)",
            constraint: "gamma < q",
            eval: |a| when(a[0] < a[2], || Ok(a[3] + a[1] * a[2] * beta(a[2] - a[0], 1.0 + a[0])?)),
        }),
    },
    CatalogEntry {
        name: "lindsay_burr_iii",
        title: "Lindsay-Burr III",
        image: "(0, b, c, q, x0)",
        args: &[arg("b", Negative), arg("c", Positive), arg("q", Positive), arg("x0", NonNegative)],
        depth: 2,
        map: |a| mk(p0(), a[0], a[1], a[2], a[3]),
        args_of: |p| vec![p.b, p.c, p.q, p.x0],
        member: |p| is0(p) && p.b < 0.0,
        mean: Some(MeanRow {
            formula: "x0 + c q B(q - 1/b, 1 + 1/b)",
            constraint: "b < -1",
            eval: |a| when(a[0] < -1.0, || Ok(a[3] + a[1] * burr_mean(a[0], a[2])?)),
        }),
    },
    CatalogEntry {
        name: "dagum",
        title: "Dagum",
        image: "(0, b, c, q, 0)",
        args: &[arg("b", Negative), arg("c", Positive), arg("q", Positive)],
        depth: 3,
        map: |a| mk(p0(), a[0], a[1], a[2], 0.0),
        args_of: |p| vec![p.b, p.c, p.q],
        member: |p| is0(p) && p.b < 0.0 && p.x0 == 0.0,
        mean: Some(MeanRow {
            formula: "c q B(q - 1/b, 1 + 1/b)",
            constraint: "b < -1",
            eval: |a| when(a[0] < -1.0, || Ok(a[1] * burr_mean(a[0], a[2])?)),
        }),
    },
    CatalogEntry {
        name: "pareto_ii",
        title: "Pareto II",
        image: "(0, 1, c, q, x0)",
        args: &[arg("c", Positive), arg("q", Positive), arg("x0", NonNegative)],
        depth: 3,
        map: |a| mk(p0(), 1.0, a[0], a[1], a[2]),
        args_of: |p| vec![p.c, p.q, p.x0],
        member: |p| is0(p) && p.b == 1.0,
        mean: Some(MeanRow {
            formula: "x0 + c/(q - 1)",
            constraint: "q > 1",
            eval: |a| when(a[1] > 1.0, || Ok(a[2] + a[0] / (a[1] - 1.0))),
        }),
    },
    CatalogEntry {
        name: "pareto_iii",
        title: "Pareto III",
        image: "(0, 1/gamma, c, 1, x0)",
        args: &[arg("gamma", Positive), arg("c", Positive), arg("x0", NonNegative)],
        depth: 3,
        map: |a| mk(p0(), 1.0 / a[0], a[1], 1.0, a[2]),
        args_of: |p| vec![1.0 / p.b, p.c, p.x0],
        member: |p| is0(p) && p.b > 0.0 && p.q == 1.0,
        mean: Some(MeanRow {
            formula: "x0 + c Gamma(1 - gamma) Gamma(1 + gamma)",
            constraint: "gamma < 1",
            eval: |a| when(a[0] < 1.0, || Ok(a[2] + a[1] * gamma(1.0 - a[0])? * gamma(1.0 + a[0])?)),
        }),
    },
    CatalogEntry {
        name: "tadikamalla_burr_xii",
        title: "Tadikamalla-Burr XII",
        image: "(0, b, c, q, 0)",
        args: &[arg("b", Positive), arg("c", Positive), arg("q", Positive)],
        depth: 3,
        map: |a| mk(p0(), a[0], a[1], a[2], 0.0),
        args_of: |p| vec![p.b, p.c, p.q],
        member: |p| is0(p) && p.b > 0.0 && p.x0 == 0.0,
        mean: Some(MeanRow {
            formula: "c q B(q - 1/b, 1 + 1/b)",
            constraint: "bq > 1",
            eval: |a| when(a[0] * a[2] > 1.0, || Ok(a[1] * burr_mean(a[0], a[2])?)),
        }),
    },
    CatalogEntry {
        name: "fisk",
        title: "Fisk",
        image: "(0, b, c, 1, 0)",
        args: &[arg("b", Positive), arg("c", Positive)],
        depth: 4,
        map: |a| mk(p0(), a[0], a[1], 1.0, 0.0),
        args_of: |p| vec![p.b, p.c],
        member: |p| is0(p) && p.b > 0.0 && p.q == 1.0 && p.x0 == 0.0,
        mean: Some(MeanRow {
            formula: "c Gamma(1 - 1/b) Gamma(1 + 1/b)",
            constraint: "b > 1",
            eval: |a| when(a[0] > 1.0, || Ok(a[1] * gamma(1.0 - 1.0 / a[0])? * gamma(1.0 + 1.0 / a[0])?)),
        }),
    },
    CatalogEntry {
        name: "lomax",
        title: "Lomax",
        image: "(0, 1, c, q, 0)",
        args: &[arg("c", Positive), arg("q", Positive)],
        depth: 4,
        map: |a| mk(p0(), 1.0, a[0], a[1], 0.0),
        args_of: |p| vec![p.c, p.q],
        member: |p| is0(p) && p.b == 1.0 && p.x0 == 0.0,
        mean: Some(MeanRow {
            formula: "c/(q - 1)",
            constraint: "q > 1",
            eval: |a| when(a[1] > 1.0, || Ok(a[0] / (a[1] - 1.0))),
        }),
    },
    CatalogEntry {
        name: "pareto_i",
        title: "Pareto I",
        image: "(0, 1, x0, q, x0)",
        args: &[arg("x0", Positive), arg("q", Positive)],
        depth: 4,
        map: |a| mk(p0(), 1.0, a[0], a[1], a[0]),
        args_of: |p| vec![p.x0, p.q],
        member: |p| is0(p) && p.b == 1.0 && p.x0 > 0.0 && p.c == p.x0,
        mean: Some(MeanRow {
            formula: "q x0/(q - 1)",
            constraint: "q > 1",
            eval: |a| when(a[1] > 1.0, || Ok(a[1] / (a[1] - 1.0) * a[0])),
        }),
    },
    CatalogEntry {
        name: "burr_xii",
        title: "Burr XII",
        image: "(0, b, 1, q, 0)",
        args: &[arg("b", Positive), arg("q", Positive)],
        depth: 4,
        map: |a| mk(p0(), a[0], 1.0, a[1], 0.0),
        args_of: |p| vec![p.b, p.q],
        member: |p| is0(p) && p.b > 0.0 && p.c == 1.0 && p.x0 == 0.0,
        mean: Some(MeanRow {
            formula: "q B(q - 1/b, 1 + 1/b)",
            constraint: "bq > 1",
            eval: |a| when(a[0] * a[1] > 1.0, || burr_mean(a[0], a[1])),
        }),
    },
    CatalogEntry {
        name: "weibull",
        title: "Weibull",
        image: "(inf, -1, c, q, x0)",
        args: &[arg("c", Positive), arg("q", Positive), arg("x0", NonNegative)],
        depth: 2,
        map: |a| mk(INF, -1.0, a[0], a[1], a[2]),
        args_of: |p| vec![p.c, p.q, p.x0],
        member: |p| is_inf(p) && p.b == -1.0,
        mean: Some(MeanRow {
            formula: "x0 + c Gamma(1 + 1/q)",
            constraint: "",
            eval: |a| Ok(Some(a[2] + a[0] * gamma(1.0 + 1.0 / a[1])?)),
        }),
    },
    CatalogEntry {
        name: "weibull_2p",
        title: "Weibull (two-parameter)",
        image: "(inf, -1, c, q, 0)",
        args: &[arg("c", Positive), arg("q", Positive)],
        depth: 3,
        map: |a| mk(INF, -1.0, a[0], a[1], 0.0),
        args_of: |p| vec![p.c, p.q],
        member: |p| is_inf(p) && p.b == -1.0 && p.x0 == 0.0,
        mean: None,
    },
    CatalogEntry {
        name: "frechet",
        title: "Frechet",
        image: "(inf, 1, c, q, x0)",
        args: &[arg("c", Positive), arg("q", Positive), arg("x0", NonNegative)],
        depth: 2,
        map: |a| mk(INF, 1.0, a[0], a[1], a[2]),
        args_of: |p| vec![p.c, p.q, p.x0],
        member: |p| is_inf(p) && p.b == 1.0,
        mean: Some(MeanRow {
            formula: "x0 + c Gamma(1 - 1/q)",
            constraint: "q > 1",
            eval: |a| when(a[1] > 1.0, || Ok(a[2] + a[0] * gamma(1.0 - 1.0 / a[1])?)),
        }),
    },
    CatalogEntry {
        name: "frechet_2p",
        title: "Frechet (two-parameter)",
        image: "(inf, 1, c, q, 0)",
        args: &[arg("c", Positive), arg("q", Positive)],
        depth: 3,
        map: |a| mk(INF, 1.0, a[0], a[1], 0.0),
        args_of: |p| vec![p.c, p.q],
        member: |p| is_inf(p) && p.b == 1.0 && p.x0 == 0.0,
        mean: None,
    },
    CatalogEntry {
        name: "gumbel_ii",
        title: "Gumbel II",
        image: "(inf, 1, c, q, 0)",
        args: &[arg("c", Positive), arg("q", Positive)],
        depth: 3,
        map: |a| mk(INF, 1.0, a[0], a[1], 0.0),
        args_of: |p| vec![p.c, p.q],
        member: |p| is_inf(p) && p.b == 1.0 && p.x0 == 0.0,
        mean: Some(MeanRow {
            formula: "c Gamma(1 - 1/q)",
            constraint: "q > 1",
            eval: |a| when(a[1] > 1.0, || Ok(a[0] * gamma(1.0 - 1.0 / a[1])?)),
        }),
    },
    CatalogEntry {
        name: "rayleigh",
        title: "Rayleigh",
        image: "(inf, -1, c, 2, 0)",
        args: &[arg("c", Positive)],
        depth: 4,
        map: |a| mk(INF, -1.0, a[0], 2.0, 0.0),
        args_of: |p| vec![p.c],
        member: |p| is_inf(p) && p.b == -1.0 && p.q == 2.0 && p.x0 == 0.0,
        mean: Some(MeanRow { formula: "c sqrt(pi)/2", constraint: "", eval: |a| Ok(Some(a[0] / 2.0 * PI.sqrt())) }),
    },
    CatalogEntry {
        name: "inverse_rayleigh",
        title: "Inverse Rayleigh",
        image: "(inf, 1, c, 2, 0)",
        args: &[arg("c", Positive)],
        depth: 4,
        map: |a| mk(INF, 1.0, a[0], 2.0, 0.0),
        args_of: |p| vec![p.c],
        member: |p| is_inf(p) && p.b == 1.0 && p.q == 2.0 && p.x0 == 0.0,
        mean: Some(MeanRow { formula: "c sqrt(pi)", constraint: "", eval: |a| Ok(Some(a[0] * PI.sqrt())) }),
    },
    CatalogEntry {
        name: "exponential",
        title: "Exponential",
        image: "(inf, -1, c, 1, 0)",
        args: &[arg("c", Positive)],
        depth: 4,
        map: |a| mk(INF, -1.0, a[0], 1.0, 0.0),
        args_of: |p| vec![p.c],
        member: |p| is_inf(p) && p.b == -1.0 && p.q == 1.0 && p.x0 == 0.0,
        mean: Some(MeanRow { formula: "c", constraint: "", eval: |a| Ok(Some(a[0])) }),
    },
    CatalogEntry {
        name: "inverse_exponential",
        title: "Inverse Exponential",
        image: "(inf, 1, c, 1, 0)",
        args: &[arg("c", Positive)],
        depth: 4,
        map: |a| mk(INF, 1.0, a[0], 1.0, 0.0),
        args_of: |p| vec![p.c],
        member: |p| is_inf(p) && p.b == 1.0 && p.q == 1.0 && p.x0 == 0.0,
        mean: Some(MeanRow { formula: "not defined", constraint: "", eval: |_| Ok(None) }),
    },
    CatalogEntry {
        name: "generalized_lomax",
        title: "Generalized Lomax",
        image: "(m-1, 1, c, q, 0)",
        args: &[arg("m", AboveOne), arg("c", Positive), arg("q", Positive)],
        depth: 2,
        map: |a| mk(ExtendedP::Finite(a[0] - 1.0), 1.0, a[1], a[2], 0.0),
        args_of: |p| vec![fin(p).unwrap_or_default() + 1.0, p.c, p.q],
        member: |p| interior_p(p) && p.b == 1.0 && p.x0 == 0.0,
        mean: Some(MeanRow {
            formula: "c m^(1 - 1/q) (B(1 - 1/q, m) - 1/m)",
            constraint: "q > 1",
            eval: |a| {
                let (m, c, q) = (a[0], a[1], a[2]);
                when(q > 1.0, || Ok(c * m.powf(1.0 - 1.0 / q) * (beta(1.0 - 1.0 / q, m)? - 1.0 / m)))
            },
        }),
    },
    CatalogEntry {
        name: "stoppa",
        title: "Stoppa",
        image: "(m-1, 1, c, q, c*m^(-1/q))",
        args: &[arg("m", AboveOne), arg("c", Positive), arg("q", Positive)],
        depth: 2,
        map: |a| mk(ExtendedP::Finite(a[0] - 1.0), 1.0, a[1], a[2], a[1] * a[0].powf(-1.0 / a[2])),
        args_of: |p| vec![fin(p).unwrap_or_default() + 1.0, p.c, p.q],
        member: |p| interior_p(p) && p.b == 1.0 && near(p.x0, stoppa_x0(fin(p).unwrap_or_default(), p.c, p.q)),
        mean: Some(MeanRow {
            formula: "c m^(1 - 1/q) B(1 - 1/q, m)",
            constraint: "q > 1",
            eval: |a| {
                let (m, c, q) = (a[0], a[1], a[2]);
                when(q > 1.0, || Ok(c * m.powf(1.0 - 1.0 / q) * beta(1.0 - 1.0 / q, m)?))
            },
        }),
    },
];

pub fn entries() -> &'static [CatalogEntry] {
    &ENTRIES
}

pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    let key = name.trim().to_ascii_lowercase().replace('-', "_");
    ENTRIES.iter().find(|e| e.name == key).ok_or_else(|| Error::UnknownDistribution(name.to_string()))
}

/// Parameters of a named distribution from `(argument, value)` pairs.
pub fn named(name: &str, args: &[(&str, f64)]) -> Result<IFParams> {
    let e = entry(name)?;
    e.map(&ordered_args(e, args)?)
}

fn ordered_args(e: &CatalogEntry, args: &[(&str, f64)]) -> Result<Vec<f64>> {
    for (k, _) in args {
        if !e.args.iter().any(|a| a.name == *k) {
            return Err(Error::InvalidParameter(format!(
                "{} does not take `{k}` (arguments: {})",
                e.name,
                e.arg_names().join(", ")
            )));
        }
    }
    e.args
        .iter()
        .map(|a| {
            let mut hits = args.iter().filter(|(k, _)| *k == a.name);
            match (hits.next(), hits.next()) {
                (Some((_, v)), None) => Ok(*v),
                (None, _) => Err(Error::InvalidParameter(format!("{} requires `{}`", e.name, a.name))),
                (Some(_), Some(_)) => Err(Error::InvalidParameter(format!("`{}` given twice", a.name))),
            }
        })
        .collect()
}

/// Every entry containing `params`, most specific first.
pub fn resolve(params: &IFParams) -> Vec<&'static str> {
    if params.validate().is_err() {
        return Vec::new();
    }
    let mut hits: Vec<(usize, &CatalogEntry)> = ENTRIES.iter().enumerate().filter(|(_, e)| e.matches(params)).collect();
    hits.sort_by(|(ia, a), (ib, b)| b.depth.cmp(&a.depth).then(a.args.len().cmp(&b.args.len())).then(ia.cmp(ib)));
    hits.into_iter().map(|(_, e)| e.name).collect()
}

/// The tabulated mean of a named distribution.
pub fn tabulated_mean(name: &str, args: &[(&str, f64)]) -> Result<MomentResult> {
    let e = entry(name)?;
    e.tabulated_mean(&ordered_args(e, args)?)
}

/// A specialization in the tree. `apply` imposes the condition on a member
/// of the parent.
#[derive(Clone, Copy)]
pub struct TreeEdge {
    /// `None` for the root with all five parameters free.
    pub parent: Option<&'static str>,
    pub child: &'static str,
    pub condition: &'static str,
    pub apply: fn(IFParams) -> IFParams,
}

impl fmt::Debug for TreeEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -[{}]-> {}", self.parent.unwrap_or("if"), self.condition, self.child)
    }
}

const fn edge(
    parent: Option<&'static str>,
    child: &'static str,
    condition: &'static str,
    apply: fn(IFParams) -> IFParams,
) -> TreeEdge {
    TreeEdge { parent, child, condition, apply }
}

static EDGES: [TreeEdge; 32] = [
    edge(None, "if1", "p = 0", |p| IFParams { p: ExtendedP::Finite(0.0), ..p }),
    edge(None, "if3", "b = 1", |p| IFParams { b: 1.0, ..p }),
    edge(None, "if2", "p = inf", |p| IFParams { p: INF, ..p }),
    edge(Some("if1"), "pareto_iv", "b > 0", |p| IFParams { b: p.b.abs(), ..p }),
    edge(Some("if1"), "lindsay_burr_iii", "b < 0", |p| IFParams { b: -p.b.abs(), ..p }),
    edge(Some("lindsay_burr_iii"), "dagum", "x0 = 0", |p| IFParams { x0: 0.0, ..p }),
    edge(Some("pareto_iv"), "pareto_iii", "q = 1", |p| IFParams { q: 1.0, ..p }),
    edge(Some("pareto_iv"), "tadikamalla_burr_xii", "x0 = 0", |p| IFParams { x0: 0.0, ..p }),
    edge(Some("pareto_iv"), "pareto_ii", "b = 1", |p| IFParams { b: 1.0, ..p }),
    edge(Some("if3"), "pareto_ii", "p = 0", |p| IFParams { p: ExtendedP::Finite(0.0), ..p }),
    edge(Some("if3"), "generalized_lomax", "x0 = 0", |p| IFParams { x0: 0.0, ..p }),
    edge(Some("if3"), "stoppa", "x0 = c(p+1)^(-1/q)", |p| IFParams {
        x0: stoppa_x0(fin(&p).unwrap_or_default(), p.c, p.q),
        ..p
    }),
    edge(Some("if3"), "frechet", "p = inf", |p| IFParams { p: INF, ..p }),
    edge(Some("if2"), "frechet", "b = 1", |p| IFParams { b: 1.0, ..p }),
    edge(Some("if2"), "weibull", "b = -1", |p| IFParams { b: -1.0, ..p }),
    edge(Some("pareto_iii"), "fisk", "x0 = 0", |p| IFParams { x0: 0.0, ..p }),
    edge(Some("tadikamalla_burr_xii"), "fisk", "q = 1", |p| IFParams { q: 1.0, ..p }),
    edge(Some("tadikamalla_burr_xii"), "burr_xii", "c = 1", |p| IFParams { c: 1.0, ..p }),
    edge(Some("tadikamalla_burr_xii"), "lomax", "b = 1", |p| IFParams { b: 1.0, ..p }),
    edge(Some("pareto_ii"), "lomax", "x0 = 0", |p| IFParams { x0: 0.0, ..p }),
    edge(Some("pareto_ii"), "pareto_i", "x0 = c", |p| IFParams { x0: p.c, ..p }),
    edge(Some("generalized_lomax"), "lomax", "p = 0", |p| IFParams { p: ExtendedP::Finite(0.0), ..p }),
    // x0 = c(p+1)^(-1/q) follows p to 0 and to infinity
    edge(Some("stoppa"), "pareto_i", "p = 0", |p| IFParams { p: ExtendedP::Finite(0.0), x0: p.c, ..p }),
    edge(Some("generalized_lomax"), "gumbel_ii", "p = inf", |p| IFParams { p: INF, ..p }),
    edge(Some("stoppa"), "gumbel_ii", "p = inf", |p| IFParams { p: INF, x0: 0.0, ..p }),
    edge(Some("frechet"), "gumbel_ii", "x0 = 0", |p| IFParams { x0: 0.0, ..p }),
    edge(Some("gumbel_ii"), "inverse_exponential", "q = 1", |p| IFParams { q: 1.0, ..p }),
    edge(Some("gumbel_ii"), "inverse_rayleigh", "q = 2", |p| IFParams { q: 2.0, ..p }),
    edge(Some("weibull"), "weibull_2p", "x0 = 0", |p| IFParams { x0: 0.0, ..p }),
    edge(Some("weibull_2p"), "rayleigh", "q = 2", |p| IFParams { q: 2.0, ..p }),
    edge(Some("weibull_2p"), "exponential", "q = 1", |p| IFParams { q: 1.0, ..p }),
    edge(Some("frechet"), "frechet_2p", "x0 = 0", |p| IFParams { x0: 0.0, ..p }),
];

/// All specializations, including the mirrored b < 0 branch.
pub fn edges() -> impl Iterator<Item = &'static TreeEdge> {
    EDGES.iter()
}

/// Parents of an entry with the specializing conditions.
pub fn parents(name: &str) -> Vec<(&'static str, &'static str)> {
    edges().filter(|e| e.child == name).map(|e| (e.parent.unwrap_or("if"), e.condition)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(r: MomentResult) -> f64 {
        r.value().expect("finite mean")
    }

    #[test]
    fn maps() {
        assert_eq!(named("exponential", &[("c", 1.0)]).unwrap(), IFParams::new(INF, -1.0, 1.0, 1.0, 0.0));
        assert_eq!(named("pareto_i", &[("x0", 1.0), ("q", 2.0)]).unwrap(), IFParams::new(0.0, 1.0, 1.0, 2.0, 1.0));
        assert_eq!(named("burr_xii", &[("b", 2.0), ("q", 3.0)]).unwrap(), IFParams::new(0.0, 2.0, 1.0, 3.0, 0.0));
        let s = named("stoppa", &[("m", 2.0), ("c", 1.0), ("q", 3.0)]).unwrap();
        assert_eq!(s, IFParams::new(1.0, 1.0, 1.0, 3.0, 2f64.powf(-1.0 / 3.0)));
        assert_eq!(
            named("weibull", &[("c", 2.0), ("q", 3.0), ("x0", 1.0)]).unwrap(),
            IFParams::new(INF, -1.0, 2.0, 3.0, 1.0)
        );
    }

    #[test]
    fn map_errors() {
        assert!(matches!(named("nope", &[]), Err(Error::UnknownDistribution(_))));
        assert!(named("dagum", &[("b", 1.0), ("c", 1.0), ("q", 1.0)]).is_err());
        assert!(named("lomax", &[("c", 1.0)]).is_err());
        assert!(named("lomax", &[("c", 1.0), ("q", 2.0), ("b", 1.0)]).is_err());
        assert!(named("generalized_lomax", &[("m", 1.0), ("c", 1.0), ("q", 1.0)]).is_err());
    }

    #[test]
    fn resolve_examples() {
        let r = resolve(&IFParams::new(INF, -1.0, 3.0, 1.0, 0.0));
        assert_eq!(r, vec!["exponential", "weibull_2p", "weibull", "if2"]);
        let r = resolve(&IFParams::new(0.0, 1.0, 2.0, 3.0, 2.0));
        assert_eq!(&r[..3], &["pareto_i", "pareto_ii", "pareto_iv"]);
        assert!(resolve(&IFParams::new(2.5, 1.7, 1.0, 1.0, 0.0)).is_empty());
        let g = resolve(&IFParams::new(INF, 1.0, 2.0, 3.0, 0.0));
        assert!(g.contains(&"gumbel_ii") && g.contains(&"frechet_2p"));
    }

    #[test]
    fn tabulated_examples() {
        let r = tabulated_mean("rayleigh", &[("c", 2.0)]).unwrap();
        assert!((value(r) - PI.sqrt()).abs() < 1e-15);
        assert!(tabulated_mean("inverse_exponential", &[("c", 1.0)]).unwrap().value().is_none());
        assert_eq!(value(tabulated_mean("lomax", &[("c", 3.0), ("q", 4.0)]).unwrap()), 1.0);
        assert!(tabulated_mean("weibull_2p", &[("c", 1.0), ("q", 1.0)]).is_err());
        match tabulated_mean("lomax", &[("c", 3.0), ("q", 0.5)]).unwrap() {
            MomentResult::NonExistent { constraint } => assert_eq!(constraint, "requires q > 1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn depth_is_longest_path() {
        for e in entries() {
            let expected = parents(e.name)
                .iter()
                .map(|(p, _)| if *p == "if" { 1 } else { entry(p).unwrap().depth + 1 })
                .max()
                .unwrap();
            assert_eq!(e.depth, expected, "{}", e.name);
        }
    }

    #[test]
    fn entries_are_unique() {
        for (i, a) in entries().iter().enumerate() {
            for b in &entries()[i + 1..] {
                assert_ne!(a.name, b.name);
            }
        }
    }

    #[test]
    fn image_matches_map() {
        let mut rng = UniformStream::new(11);
        for e in entries() {
            let args = e.draw_args(&mut rng);
            let p = e.map(&args).unwrap();
            let slots: Vec<&str> = e.image[1..e.image.len() - 1].split(", ").collect();
            assert_eq!(slots.len(), 5, "{}", e.image);
            let got = [p.p.finite().unwrap_or(f64::INFINITY), p.b, p.c, p.q, p.x0];
            for (slot, g) in slots.iter().zip(got) {
                let want = match e.args.iter().position(|a| a.name == *slot) {
                    Some(i) => args[i],
                    None => match *slot {
                        "inf" => f64::INFINITY,
                        "1/gamma" => 1.0 / args[0],
                        "m-1" => args[0] - 1.0,
                        "c*m^(-1/q)" => args[1] * args[0].powf(-1.0 / args[2]),
                        lit => lit.parse().unwrap(),
                    },
                };
                assert_eq!(g, want, "{} slot {slot}", e.name);
            }
        }
    }
}
