use std::fs::File;
use std::io::{self, BufWriter, Write};

use interfam::catalog::{self, CatalogEntry};
use interfam::modes::Axis;
use interfam::verify::{self, Suite};
use interfam::{
    mean, mode, mode_grid, resolve, variance, BoundaryBehavior, Distribution, IFParams, ModeResult, MomentResult,
    ParamName, Provenance, Subfamily,
};

use crate::args::{CatalogAction, Cli, Command, CurveArgs, CurveWhat, What, CURVE_BASE};
use crate::format::{csv_field, g17};
use crate::CliError;

type Out<'a> = &'a mut dyn Write;

pub fn run(cli: &Cli, out: Out) -> Result<(), CliError> {
    match &cli.command {
        Command::Eval { what, at } => eval(&Distribution::new(cli.params.resolve()?)?, *what, at, out),
        Command::Summary => summary(&cli.params.resolve()?, out),
        Command::Sample { n, seed, out: path } => {
            let dist = Distribution::new(cli.params.resolve()?)?;
            match path {
                Some(path) => {
                    let file = File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    let mut w = BufWriter::new(file);
                    sample(&dist, *n, *seed, &mut w)?;
                    w.flush()?;
                    Ok(())
                }
                None => sample(&dist, *n, *seed, out),
            }
        }
        Command::Curve(req) => curve(&cli.params.resolve_with(&CURVE_BASE)?, req, out),
        Command::Modegrid { axis1, axis2 } => {
            let defaults =
                [(axis1.param, axis1.lo), (axis2.param, axis2.lo), (ParamName::C, 1.0), (ParamName::X0, 0.0)];
            modegrid(&cli.params.resolve_with(&defaults)?, *axis1, *axis2, out)
        }
        Command::Catalog { action: CatalogAction::List } => catalog_list(out),
        Command::Catalog { action: CatalogAction::Show { name } } => catalog_show(catalog::entry(name)?, out),
        Command::Check { suite, tol } => check(*suite, *tol, out),
    }
}

fn eval(dist: &Distribution, what: What, at: &[f64], out: Out) -> Result<(), CliError> {
    let head = if what == What::Quantile { "y" } else { "x" };
    writeln!(out, "{head},{}", what.as_str())?;
    for &x in at {
        let v = match what {
            What::Pdf => dist.pdf(x),
            What::Logpdf => dist.log_pdf(x),
            What::Cdf => dist.cdf(x),
            What::Sf => dist.survival(x),
            What::Hazard => dist.hazard(x),
            What::Quantile => dist.quantile(x),
        }?;
        writeln!(out, "{},{}", g17(x), g17(v))?;
    }
    Ok(())
}

fn provenance(p: &Provenance) -> &'static str {
    match p {
        Provenance::ClosedForm => "closed-form",
        Provenance::Numeric { .. } => "numeric",
    }
}

fn moment_row(out: Out, field: &str, m: &MomentResult) -> io::Result<()> {
    match m {
        MomentResult::Finite { value, provenance: p } => {
            writeln!(out, "{field},finite,{},{}", provenance(p), g17(*value))
        }
        MomentResult::NonExistent { constraint } => writeln!(out, "{field},nonexistent,,{}", csv_field(constraint)),
    }
}

/// Fixed rows, in this order: subfamily, catalog, boundary, median, mean,
/// variance, mode.
fn summary(params: &IFParams, out: Out) -> Result<(), CliError> {
    let dist = Distribution::new(*params)?;
    let sub = params.classify();
    let m1 = mean(params)?;
    let m2 = variance(params)?;
    let md = mode(params)?;
    writeln!(out, "field,status,provenance,value")?;
    writeln!(out, "params,,,{}", csv_field(&params.to_string()))?;
    writeln!(out, "subfamily,,,{sub}")?;
    writeln!(out, "catalog,,,{}", resolve(params).join(";"))?;
    match dist.boundary() {
        BoundaryBehavior::DivergesToInfinity => writeln!(out, "boundary,diverges,closed-form,inf")?,
        BoundaryBehavior::FinitePositive(v) => writeln!(out, "boundary,finite,closed-form,{}", g17(v))?,
        BoundaryBehavior::ZeroAtBoundary => writeln!(out, "boundary,zero,closed-form,0")?,
    }
    writeln!(out, "median,finite,closed-form,{}", g17(dist.median()))?;
    moment_row(out, "mean", &m1)?;
    moment_row(out, "variance", &m2)?;
    let how = if sub == Subfamily::General { "numeric" } else { "closed-form" };
    match md {
        ModeResult::Interior { x, .. } => writeln!(out, "mode,interior,{how},{}", g17(x))?,
        ModeResult::Boundary(x) => writeln!(out, "mode,boundary,{how},{}", g17(x))?,
        ModeResult::AsymptoteAtBoundary => writeln!(out, "mode,asymptote,{how},{}", g17(params.x0))?,
    }
    Ok(())
}

fn sample(dist: &Distribution, n: usize, seed: u64, out: Out) -> Result<(), CliError> {
    writeln!(out, "x")?;
    for x in dist.samples(seed).take(n) {
        writeln!(out, "{}", g17(x))?;
    }
    Ok(())
}

fn curve(base: &IFParams, req: &CurveArgs, out: Out) -> Result<(), CliError> {
    let (name, values) = req.sweep()?;
    if req.points < 2 {
        return Err(CliError::Validation("--points must be at least 2".into()));
    }
    let lo = req.from.unwrap_or(base.x0);
    let hi = req.to.unwrap_or(lo + 1000.0);
    if !(lo >= base.x0) {
        return Err(CliError::Validation(format!("--from must be >= x0 = {}", g17(base.x0))));
    }
    if !(hi > lo && hi.is_finite()) {
        return Err(CliError::Validation("--to must be finite and above --from".into()));
    }
    let dists = values
        .iter()
        .map(|&v| {
            let p = name.substitute(*base, v);
            p.validate().map_err(|e| CliError::Validation(format!("{name}={}: {e}", g17(v))))?;
            Ok(Distribution::new(p)?)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    write!(out, "x")?;
    for v in &values {
        write!(out, ",{name}={}", g17(*v))?;
    }
    writeln!(out)?;
    let n = req.points - 1;
    for i in 0..=n {
        let x = if i == n { hi } else { lo + (hi - lo) * i as f64 / n as f64 };
        write!(out, "{}", g17(x))?;
        for d in &dists {
            let v = match req.what {
                CurveWhat::Pdf => d.pdf(x),
                CurveWhat::Cdf => d.cdf(x),
                CurveWhat::Sf => d.survival(x),
            }?;
            write!(out, ",{}", g17(v))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn modegrid(template: &IFParams, axis1: Axis, axis2: Axis, out: Out) -> Result<(), CliError> {
    let grid = mode_grid(template, axis1, axis2)?;
    write!(out, "{}/{}", axis1.param, axis2.param)?;
    for c in &grid.cols {
        write!(out, ",{}", g17(*c))?;
    }
    writeln!(out)?;
    for (r, line) in grid.rows.iter().zip(&grid.cells) {
        write!(out, "{}", g17(*r))?;
        for v in line {
            write!(out, ",{}", g17(*v))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn arguments(e: &CatalogEntry) -> String {
    e.args.iter().map(|a| format!("{} {}", a.name, a.rule)).collect::<Vec<_>>().join("; ")
}

fn parent_list(e: &CatalogEntry) -> String {
    catalog::parents(e.name).iter().map(|(p, cond)| format!("{p} [{cond}]")).collect::<Vec<_>>().join("; ")
}

fn catalog_list(out: Out) -> Result<(), CliError> {
    writeln!(out, "name,title,arity,depth,arguments,map,parents,mean,mean_constraint")?;
    for e in catalog::entries() {
        let (formula, constraint) = e.mean.map_or(("", ""), |m| (m.formula, m.constraint));
        let fields = [
            e.name.to_string(),
            e.title.to_string(),
            e.args.len().to_string(),
            e.depth.to_string(),
            arguments(e),
            e.image.to_string(),
            parent_list(e),
            formula.to_string(),
            constraint.to_string(),
        ];
        writeln!(out, "{}", fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(","))?;
    }
    Ok(())
}

fn catalog_show(e: &CatalogEntry, out: Out) -> Result<(), CliError> {
    writeln!(out, "name: {}", e.name)?;
    writeln!(out, "title: {}", e.title)?;
    writeln!(out, "arguments: {}", arguments(e))?;
    writeln!(out, "map (p, b, c, q, x0): {}", e.image)?;
    writeln!(out, "parents: {}", parent_list(e))?;
    match e.mean {
        Some(m) if m.constraint.is_empty() => writeln!(out, "mean: {}", m.formula)?,
        Some(m) => writeln!(out, "mean: {} (requires {})", m.formula, m.constraint)?,
        None => writeln!(out, "mean: none tabulated")?,
    }
    Ok(())
}

fn default_tol(suite: Suite) -> f64 {
    match suite {
        Suite::Roundtrip => 1e-9,
        _ => 1e-6,
    }
}

fn check(suite: Option<Suite>, tol: Option<f64>, out: Out) -> Result<(), CliError> {
    let suites = match suite {
        Some(s) => vec![s],
        None => Suite::ALL.to_vec(),
    };
    let mut ok = true;
    writeln!(out, "suite,cases,tol,worst,worst_case,result")?;
    for s in suites {
        let rep = verify::run(s, tol.unwrap_or_else(|| default_tol(s)))?;
        writeln!(
            out,
            "{},{},{},{},{},{}",
            s,
            rep.cases,
            g17(rep.tol),
            g17(rep.worst),
            csv_field(&rep.worst_case),
            if rep.passed() { "pass" } else { "fail" }
        )?;
        for d in &rep.details {
            writeln!(out, "# {d}")?;
        }
        for f in &rep.failures {
            writeln!(out, "# FAIL {f}")?;
        }
        ok &= rep.passed();
    }
    if ok {
        Ok(())
    } else {
        out.flush()?;
        Err(CliError::CheckFailed)
    }
}
