use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the maximum of `f` on `[lo, hi]`.
///
/// For unimodal `f` the returned argmax is within `tol` of the maximizer,
/// down to the √ε resolution limit of comparing function values near a
/// smooth peak. The endpoints are compared against the interior optimum
/// at the end, so monotone functions return the correct endpoint.
pub fn maximize_scalar<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Domain(format!("invalid interval [{lo}, {hi}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_nan() {
            Err(Error::Numeric(format!("objective returned NaN at {x}")))
        } else {
            Ok(y)
        }
    };
    let (f_lo, f_hi) = (eval(lo)?, eval(hi)?);
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = eval(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = eval(x2)?;
        }
        if x1 >= x2 {
            break;
        }
    }
    let (mut best_x, mut best_f) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    if f_lo > best_f {
        best_x = lo;
        best_f = f_lo;
    }
    if f_hi > best_f {
        best_x = hi;
        best_f = f_hi;
    }
    Ok((best_x, best_f))
}
