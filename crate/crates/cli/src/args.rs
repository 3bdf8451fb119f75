use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use interfam::modes::Axis;
use interfam::verify::Suite;
use interfam::{named, ExtendedP, IFParams, ParamName};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "interfam",
    version,
    about = "Evaluate, sample and inspect the interpolating family of size distributions"
)]
pub struct Cli {
    #[command(flatten)]
    pub params: ParamFlags,
    #[command(subcommand)]
    pub command: Command,
}

/// Either the five parameters or a catalog name with its own arguments.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamFlags {
    /// Interpolation parameter, `inf` for the cut-off limit
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub p: Option<ExtendedP>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub x0: Option<f64>,
    /// Named distribution (see `catalog list`)
    #[arg(long, global = true)]
    pub dist: Option<String>,
    /// Catalog argument used by the Pareto III and IV entries
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// Catalog argument m = p + 1 of the Stoppa and generalized Lomax entries
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub m: Option<f64>,
    /// Key-value file with p, b, c, q, x0; flags override it
    #[arg(long, global = true, value_name = "PATH")]
    pub params: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Pdf,
    Logpdf,
    Cdf,
    Sf,
    Hazard,
    Quantile,
}

impl What {
    pub fn as_str(self) -> &'static str {
        match self {
            What::Pdf => "pdf",
            What::Logpdf => "logpdf",
            What::Cdf => "cdf",
            What::Sf => "sf",
            What::Hazard => "hazard",
            What::Quantile => "quantile",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function at a list of points, CSV `x,value`
    Eval {
        #[arg(long, value_enum)]
        what: What,
        /// Comma separated points (probabilities for `quantile`)
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        at: Vec<f64>,
    },
    /// Subfamily, median, mean, variance and mode with provenance
    Summary,
    /// Inverse-transform samples, one per line after an `x` header
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file, stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Density curves over an x grid, one column per value of the varied parameter
    Curve(CurveArgs),
    /// Mode over a two-parameter grid, -1 boundary and -2 asymptote
    Modegrid {
        /// `name:lo:hi:steps`, rows
        #[arg(long, allow_hyphen_values = true)]
        axis1: Axis,
        /// `name:lo:hi:steps`, columns
        #[arg(long, allow_hyphen_values = true)]
        axis2: Axis,
    },
    /// Named special cases
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run a self-check suite; exit 2 on any violation
    Check {
        /// All suites when omitted
        #[arg(long)]
        suite: Option<Suite>,
        /// Defaults to 1e-9 for roundtrip and 1e-6 otherwise
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// One CSV record per entry
    List,
    /// Parameter map, parents and tabulated mean of one entry
    Show { name: String },
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Parameter to sweep; the other four stay at their base values
    #[arg(long)]
    pub vary: Option<ParamName>,
    /// Comma separated sweep values (`inf` allowed for p)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub values: Vec<String>,
    /// Predefined sweep, 1 to 6
    #[arg(long, conflicts_with_all = ["vary", "values"])]
    pub panel: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = CurveWhat::Pdf)]
    pub what: CurveWhat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveWhat {
    Pdf,
    Cdf,
    Sf,
}

/// Base point of the density sweeps.
pub const CURVE_BASE: [(ParamName, f64); 5] =
    [(ParamName::P, 1.0), (ParamName::B, 1.0), (ParamName::C, 200.0), (ParamName::Q, 2.0), (ParamName::X0, 0.0)];

/// The six predefined sweeps, one per parameter with b split by sign.
pub const PANELS: [(ParamName, &[f64]); 6] = [
    (ParamName::P, &[0.0, 1.0, 10.0, f64::INFINITY]),
    (ParamName::B, &[0.5, 1.0, 2.0, 4.0]),
    (ParamName::B, &[-0.5, -1.0, -2.0, -4.0]),
    (ParamName::C, &[100.0, 200.0, 400.0]),
    (ParamName::Q, &[0.5, 1.0, 2.0, 4.0]),
    (ParamName::X0, &[0.0, 100.0, 200.0]),
];

const NAMES: [ParamName; 5] = [ParamName::P, ParamName::B, ParamName::C, ParamName::Q, ParamName::X0];

fn slot(name: ParamName) -> usize {
    NAMES.iter().position(|n| *n == name).expect("every name has a slot")
}

fn parse_p(v: &str) -> Result<f64, CliError> {
    let p: ExtendedP = v.parse()?;
    Ok(p.finite().unwrap_or(f64::INFINITY))
}

fn read_file(path: &PathBuf) -> Result<[Option<f64>; 5], CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut out = [None; 5];
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(['=', ':'])
            .or_else(|| line.split_once(char::is_whitespace))
            .ok_or_else(|| CliError::Validation(format!("{}:{}: expected `key = value`", path.display(), no + 1)))?;
        let name: ParamName = key.trim().parse()?;
        let value = value.trim();
        let v = if name == ParamName::P {
            parse_p(value)?
        } else {
            value
                .parse()
                .map_err(|_| CliError::Validation(format!("{}:{}: bad number `{value}`", path.display(), no + 1)))?
        };
        out[slot(name)] = Some(v);
    }
    Ok(out)
}

impl ParamFlags {
    fn five(&self) -> [Option<f64>; 5] {
        [self.p.map(|p| p.finite().unwrap_or(f64::INFINITY)), self.b, self.c, self.q, self.x0]
    }

    /// Resolves the flags with `defaults` filling any parameter still unset.
    pub fn resolve_with(&self, defaults: &[(ParamName, f64)]) -> Result<IFParams, CliError> {
        if let Some(name) = &self.dist {
            return self.resolve_named(name);
        }
        if let Some(flag) = [("gamma", self.gamma), ("m", self.m)].iter().find(|(_, v)| v.is_some()) {
            return Err(CliError::Validation(format!("--{} only applies together with --dist", flag.0)));
        }
        let mut values = match &self.params {
            Some(path) => read_file(path)?,
            None => [None; 5],
        };
        for (slot, flag) in values.iter_mut().zip(self.five()) {
            if flag.is_some() {
                *slot = flag;
            }
        }
        for (name, v) in defaults {
            let s = &mut values[slot(*name)];
            if s.is_none() {
                *s = Some(*v);
            }
        }
        let mut got = [0.0; 5];
        for (i, v) in values.iter().enumerate() {
            got[i] = v.ok_or_else(|| CliError::Validation(format!("missing parameter --{}", NAMES[i])))?;
        }
        let params = IFParams::new(got[0], got[1], got[2], got[3], got[4]);
        params.validate()?;
        Ok(params)
    }

    /// Resolves with x0 defaulting to 0.
    pub fn resolve(&self) -> Result<IFParams, CliError> {
        self.resolve_with(&[(ParamName::X0, 0.0)])
    }

    fn resolve_named(&self, name: &str) -> Result<IFParams, CliError> {
        if self.params.is_some() {
            return Err(CliError::Validation("--params and --dist are mutually exclusive".into()));
        }
        let mut args: Vec<(&str, f64)> = Vec::new();
        if let Some(p) = self.p {
            let v = p.finite().ok_or_else(|| CliError::Validation("a named distribution takes a finite p".into()))?;
            args.push(("p", v));
        }
        for (k, v) in
            [("b", self.b), ("c", self.c), ("q", self.q), ("x0", self.x0), ("gamma", self.gamma), ("m", self.m)]
        {
            if let Some(v) = v {
                args.push((k, v));
            }
        }
        Ok(named(name, &args)?)
    }
}

impl CurveArgs {
    /// The swept parameter and its values.
    pub fn sweep(&self) -> Result<(ParamName, Vec<f64>), CliError> {
        if let Some(n) = self.panel {
            let (name, values) = PANELS
                .get(n.wrapping_sub(1))
                .ok_or_else(|| CliError::Validation(format!("--panel must be 1 to {}, got {n}", PANELS.len())))?;
            return Ok((*name, values.to_vec()));
        }
        let name = self.vary.unwrap_or(ParamName::P);
        if self.values.is_empty() {
            let (_, values) = PANELS.iter().find(|(n, _)| *n == name).expect("a panel per parameter");
            return Ok((name, values.to_vec()));
        }
        let values = self
            .values
            .iter()
            .map(|v| {
                if name == ParamName::P {
                    parse_p(v)
                } else {
                    v.trim().parse().map_err(|_| CliError::Validation(format!("bad sweep value `{v}`")))
                }
            })
            .collect::<Result<Vec<f64>, _>>()?;
        Ok((name, values))
    }
}
