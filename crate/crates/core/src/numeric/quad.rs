use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1]. Gauss nodes are the
// odd-indexed Kronrod nodes. No node sits on an endpoint.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    /// Whether the error estimate met the requested tolerance.
    pub converged: bool,
    pub evaluations: usize,
}

/// Adaptive Gauss-Kronrod integrator with global error control.
///
/// Semi-infinite ranges use x = a + t/(1-t). The half of the range that maps
/// to t > 1/2 is parametrized by s = 1 - t so that the far tail keeps full
/// floating-point resolution.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    abs_tol: f64,
    rel_tol: f64,
    max_subintervals: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self::new(super::QUAD_TOL)
    }
}

impl Quadrature {
    pub fn new(abs_tol: f64) -> Self {
        Self { abs_tol, rel_tol: 0.0, max_subintervals: 4000 }
    }

    pub fn rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn max_subintervals(mut self, n: usize) -> Self {
        self.max_subintervals = n.max(1);
        self
    }

    pub fn integrate<F>(&self, mut f: F, lo: f64, hi: f64) -> Result<QuadratureResult>
    where
        F: FnMut(f64) -> f64,
    {
        if !(self.abs_tol > 0.0 || self.rel_tol > 0.0) || self.abs_tol < 0.0 || self.rel_tol < 0.0 {
            return Err(Error::Domain("integration tolerance must be positive".into()));
        }
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::Domain(format!("integration requires lo < hi, got [{lo}, {hi}]")));
        }
        let segments = Segment::cover(lo, hi);
        let mut state = Adaptive::new(&mut f);
        for seg in segments {
            state.seed(seg)?;
        }
        state.run(self)
    }
}

/// ∫_lo^hi f(x) dx to absolute tolerance `tol`; `hi` may be +∞.
pub fn integrate<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    Quadrature::new(tol).integrate(f, lo, hi)
}

/// A finite parameter interval together with the map back to x.
#[derive(Debug, Clone, Copy)]
enum Segment {
    Finite {
        lo: f64,
        hi: f64,
    },
    /// x = a ± t/(1-t), t in (0, 1/2].
    Near {
        a: f64,
        sign: f64,
    },
    /// x = a ± (1-s)/s, s in (0, 1/2).
    Far {
        a: f64,
        sign: f64,
    },
}

impl Segment {
    fn cover(lo: f64, hi: f64) -> Vec<Segment> {
        match (lo.is_finite(), hi.is_finite()) {
            (true, true) => vec![Segment::Finite { lo, hi }],
            (true, false) => vec![Segment::Near { a: lo, sign: 1.0 }, Segment::Far { a: lo, sign: 1.0 }],
            (false, true) => vec![Segment::Near { a: hi, sign: -1.0 }, Segment::Far { a: hi, sign: -1.0 }],
            (false, false) => vec![
                Segment::Near { a: 0.0, sign: 1.0 },
                Segment::Far { a: 0.0, sign: 1.0 },
                Segment::Near { a: 0.0, sign: -1.0 },
                Segment::Far { a: 0.0, sign: -1.0 },
            ],
        }
    }

    fn range(&self) -> (f64, f64) {
        match *self {
            Segment::Finite { lo, hi } => (lo, hi),
            Segment::Near { .. } | Segment::Far { .. } => (0.0, 0.5),
        }
    }

    #[inline]
    fn point(&self, t: f64) -> f64 {
        match *self {
            Segment::Finite { .. } => t,
            Segment::Near { a, sign } => a + sign * t / (1.0 - t),
            Segment::Far { a, sign } => a + sign * (1.0 - t) / t,
        }
    }

    /// y · dx/dt, divided stepwise so that 1/t² never overflows on its own.
    #[inline]
    fn weight(&self, t: f64, y: f64) -> f64 {
        match *self {
            Segment::Finite { .. } => y,
            Segment::Near { .. } => {
                let omt = 1.0 - t;
                y / omt / omt
            }
            Segment::Far { .. } => y / t / t,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    seg: usize,
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

struct Adaptive<'f, F> {
    f: &'f mut F,
    segments: Vec<Segment>,
    heap: BinaryHeap<Piece>,
    /// Pieces too narrow to split further; kept out of the heap.
    frozen: Vec<Piece>,
    evaluations: usize,
}

impl<'f, F: FnMut(f64) -> f64> Adaptive<'f, F> {
    fn new(f: &'f mut F) -> Self {
        Self { f, segments: Vec::new(), heap: BinaryHeap::new(), frozen: Vec::new(), evaluations: 0 }
    }

    fn seed(&mut self, seg: Segment) -> Result<()> {
        self.segments.push(seg);
        let (lo, hi) = seg.range();
        let piece = self.rule(self.segments.len() - 1, lo, hi)?;
        self.heap.push(piece);
        Ok(())
    }

    fn eval(&mut self, seg: usize, t: f64) -> Result<f64> {
        let segment = self.segments[seg];
        let x = segment.point(t);
        let y = (self.f)(x);
        self.evaluations += 1;
        if y.is_nan() {
            return Err(Error::Numeric(format!("integrand returned NaN at x = {x}")));
        }
        if y.is_infinite() {
            return Err(Error::Numeric(format!("integrand is infinite at x = {x}")));
        }
        let v = segment.weight(t, y);
        if !v.is_finite() {
            return Err(Error::Numeric(format!("transformed integrand overflows at x = {x}")));
        }
        Ok(v)
    }

    fn rule(&mut self, seg: usize, lo: f64, hi: f64) -> Result<Piece> {
        let center = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let fc = self.eval(seg, center)?;
        let mut res_k = fc * WGK[7];
        let mut res_g = fc * WG[3];
        let mut res_abs = res_k.abs();
        let mut fv1 = [0.0; 7];
        let mut fv2 = [0.0; 7];
        for j in 0..7 {
            let dx = half * XGK[j];
            let f1 = self.eval(seg, center - dx)?;
            let f2 = self.eval(seg, center + dx)?;
            fv1[j] = f1;
            fv2[j] = f2;
            res_k += WGK[j] * (f1 + f2);
            res_abs += WGK[j] * (f1.abs() + f2.abs());
            if j % 2 == 1 {
                res_g += WG[j / 2] * (f1 + f2);
            }
        }
        let mean = 0.5 * res_k;
        let mut res_asc = WGK[7] * (fc - mean).abs();
        for j in 0..7 {
            res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
        }
        let scale = half.abs();
        let value = res_k * half;
        res_abs *= scale;
        res_asc *= scale;
        let mut err = ((res_k - res_g) * half).abs();
        if res_asc != 0.0 && err != 0.0 {
            err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
        }
        if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
            err = err.max(50.0 * f64::EPSILON * res_abs);
        }
        Ok(Piece { seg, lo, hi, value, error: err })
    }

    fn totals(&self) -> (f64, f64) {
        // Compensated re-summation; the running totals in `run` drift.
        let mut value = 0.0;
        let mut comp = 0.0;
        let mut error = 0.0;
        for p in self.heap.iter().chain(self.frozen.iter()) {
            let y = p.value - comp;
            let t = value + y;
            comp = (t - value) - y;
            value = t;
            error += p.error;
        }
        (value, error)
    }

    fn run(mut self, cfg: &Quadrature) -> Result<QuadratureResult> {
        let target = |value: f64| cfg.abs_tol.max(cfg.rel_tol * value.abs());
        let (mut value, mut error) = self.totals();
        let mut pieces = self.heap.len();
        while error > target(value) && pieces < cfg.max_subintervals {
            let Some(worst) = self.heap.pop() else { break };
            let mid = 0.5 * (worst.lo + worst.hi);
            let width = worst.hi - worst.lo;
            if mid <= worst.lo || mid >= worst.hi || width <= 1e3 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE) {
                self.frozen.push(worst);
                if self.heap.is_empty() {
                    break;
                }
                continue;
            }
            let left = self.rule(worst.seg, worst.lo, mid)?;
            let right = self.rule(worst.seg, mid, worst.hi)?;
            self.heap.push(left);
            self.heap.push(right);
            pieces += 1;
            value += left.value + right.value - worst.value;
            error += left.error + right.error - worst.error;
            if error <= target(value) {
                (value, error) = self.totals();
            }
        }
        (value, error) = self.totals();
        Ok(QuadratureResult {
            value,
            abs_error_estimate: error,
            converged: error <= target(value),
            evaluations: self.evaluations,
        })
    }
}
