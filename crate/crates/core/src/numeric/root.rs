use crate::error::{Error, Result};

/// A search interval `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Self { lo, hi })
        } else {
            Err(Error::Domain(format!("invalid bracket [{lo}, {hi}]")))
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

const MAX_ITER: usize = 500;

fn finite(x: f64, fx: f64) -> Result<f64> {
    if fx.is_nan() {
        Err(Error::Numeric(format!("function returned NaN at {x}")))
    } else {
        Ok(fx)
    }
}

/// Brent's method on a sign-changing bracket. Returns once the bracket has
/// shrunk below `tol` (or an exact zero is hit). Every step either
/// interpolates inside the current bracket or bisects it, so convergence is
/// guaranteed.
pub fn find_root<F>(mut f: F, bracket: Bracket, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("root tolerance must be positive, got {tol}")));
    }
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let mut fa = finite(a, f(a))?;
    let mut fb = finite(b, f(b))?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo: a, hi: b });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = finite(b, f(b))?;
    }
    Err(Error::Numeric(format!("root finding did not converge in {MAX_ITER} iterations")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_roots() {
        let r = find_root(|x| x - 0.3, Bracket::new(0.0, 1.0).unwrap(), 1e-12).unwrap();
        assert!((r - 0.3).abs() < 1e-12);
        let r = find_root(|x| x * x - 2.0, Bracket::new(1.0, 2.0).unwrap(), 1e-12).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn no_sign_change() {
        let err = find_root(|x| x * x + 1.0, Bracket::new(-1.0, 1.0).unwrap(), 1e-12).unwrap_err();
        assert!(matches!(err, Error::NoSignChange { .. }));
    }

    #[test]
    fn invalid_bracket() {
        assert!(Bracket::new(1.0, 1.0).is_err());
        assert!(Bracket::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn discontinuous_sign_change_still_converges() {
        // worst case for interpolation; bisection fallback must take over
        let r = find_root(|x| if x < 0.123 { -1.0 } else { 1.0 }, Bracket::new(0.0, 1.0).unwrap(), 1e-12).unwrap();
        assert!((r - 0.123).abs() < 1e-11);
    }

    #[test]
    fn residual_is_small() {
        let f = |x: f64| x.powi(3) - 2.0 * x - 5.0;
        let tol = 1e-10;
        let r = find_root(f, Bracket::new(2.0, 3.0).unwrap(), tol).unwrap();
        let slope = 3.0 * r * r - 2.0;
        assert!(f(r).abs() <= 10.0 * slope * tol);
    }
}
