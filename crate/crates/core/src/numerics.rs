//! Shared numerical kernels: adaptive Gauss-Kronrod quadrature on finite and
//! semi-infinite intervals, and bracketing root finding.
//!
//! Semi-infinite integrals are truncated according to the decay class of the
//! integrand. Algebraic tails are reported as divergent rather than truncated.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Tolerances and truncation policy shared by every quadrature and root find.
///
/// `abs_tol` and `root_tol` are absolute when handed to [`integrate`] and
/// [`find_root`]; domain code calls [`NumericsConfig::at_scale`] first so the
/// defaults read as multiples of the problem's characteristic energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericsConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Subinterval budget per breakpoint-delimited segment.
    pub max_subdivisions: usize,
    /// Truncation distance for exponential tails, in units of the decay scale.
    pub tail_cutoff_exponential: f64,
    /// Truncation distance for Gaussian tails, in units of sigma.
    pub tail_cutoff_gaussian: f64,
    pub root_tol: f64,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        NumericsConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 60,
            tail_cutoff_exponential: 45.0,
            tail_cutoff_gaussian: 12.0,
            root_tol: 1e-12,
        }
    }
}

impl NumericsConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("rel_tol", self.rel_tol),
            ("abs_tol", self.abs_tol),
            ("tail_cutoff_exponential", self.tail_cutoff_exponential),
            ("tail_cutoff_gaussian", self.tail_cutoff_gaussian),
            ("root_tol", self.root_tol),
        ];
        for (name, value) in positive {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::domain(name, format!("must be positive, got {value}")));
            }
        }
        if self.max_subdivisions < 10 {
            return Err(Error::domain(
                "max_subdivisions",
                format!("must be at least 10, got {}", self.max_subdivisions),
            ));
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    /// Absolute tolerances rescaled to a problem whose energies are of order `scale`.
    pub fn at_scale(&self, scale: f64) -> Self {
        let scale = if scale > 0.0 && scale.is_finite() { scale } else { 1.0 };
        NumericsConfig {
            abs_tol: self.abs_tol * scale,
            root_tol: self.root_tol * scale,
            ..*self
        }
    }
}

/// Result of a quadrature: the value and the achieved error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

/// Decay class of an integrand beyond the lower limit of a semi-infinite integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailClass {
    /// Decays like `exp(-x / scale)`.
    Exponential(f64),
    /// Decays like `exp(-x^2 / 2 scale^2)`.
    Gaussian(f64),
    /// Power-law decay; treated as non-integrable.
    Algebraic,
}

impl TailClass {
    /// Distance past which the tail is dropped, or `None` for algebraic decay.
    pub fn cutoff(&self, cfg: &NumericsConfig) -> Option<f64> {
        match *self {
            TailClass::Exponential(scale) => Some(cfg.tail_cutoff_exponential * scale),
            TailClass::Gaussian(scale) => Some(cfg.tail_cutoff_gaussian * scale),
            TailClass::Algebraic => None,
        }
    }
}

// Gauss-Kronrod 7/15 nodes and weights, abscissae in descending order.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn eval<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFinite { x })
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = eval(f, center)?;

    let mut gauss = f_center * WG[3];
    let mut kronrod = f_center * WGK[7];
    let mut abs_sum = kronrod.abs();
    let mut values = [(0.0, 0.0); 7];

    for (j, node) in XGK.iter().take(7).enumerate() {
        let dx = half * node;
        let lo = eval(f, center - dx)?;
        let hi = eval(f, center + dx)?;
        values[j] = (lo, hi);
        kronrod += WGK[j] * (lo + hi);
        abs_sum += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (lo + hi);
        }
    }

    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (f_center - mean).abs();
    for (j, (lo, hi)) in values.iter().enumerate() {
        asc += WGK[j] * ((lo - mean).abs() + (hi - mean).abs());
    }

    let value = kronrod * half;
    let abs_value = abs_sum * half.abs();
    let asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * abs_value;
    if abs_value > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && floor > error {
        error = floor;
    }

    Ok(Panel {
        a,
        b,
        value,
        error,
        abs_value,
    })
}

/// Integrates `f` over `[a, b]` with adaptive 15-point Gauss-Kronrod panels.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &NumericsConfig) -> Result<Integral> {
    integrate_with_breakpoints(f, a, b, &[], cfg)
}

/// Like [`integrate`], but pre-splits `[a, b]` at every breakpoint strictly
/// inside it. Use this for known kinks and steps.
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    cfg: &NumericsConfig,
) -> Result<Integral> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("integration limits", format!("[{a}, {b}] not finite")));
    }
    if a > b {
        return Err(Error::domain("integration limits", format!("a = {a} > b = {b}")));
    }
    if a == b {
        return Ok(Integral {
            value: 0.0,
            abs_error: 0.0,
            evaluations: 0,
        });
    }

    let mut edges: Vec<f64> = breakpoints.iter().copied().filter(|&x| x > a && x < b).collect();
    edges.push(a);
    edges.push(b);
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in edges.windows(2) {
        heap.push(kronrod15(&f, w[0], w[1])?);
        evaluations += 15;
    }
    let budget = cfg.max_subdivisions * (edges.len() - 1);

    // Panels too narrow to bisect are retired here.
    let mut frozen_value = 0.0;
    let mut frozen_error = 0.0;
    let mut frozen_abs = 0.0;

    loop {
        let (mut value, mut error, mut abs_value) = (frozen_value, frozen_error, frozen_abs);
        for p in heap.iter() {
            value += p.value;
            error += p.error;
            abs_value += p.abs_value;
        }
        let tol = cfg
            .abs_tol
            .max(cfg.rel_tol * value.abs())
            .max(100.0 * f64::EPSILON * abs_value);
        if error <= tol {
            return Ok(Integral {
                value,
                abs_error: error,
                evaluations,
            });
        }
        let exhausted = heap.len() >= budget;
        let worst = match heap.pop() {
            Some(p) if !exhausted => p,
            _ => {
                return Err(Error::NonConvergence {
                    a,
                    b,
                    estimate: value,
                    abs_error: error,
                })
            }
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b || (worst.b - worst.a) < 1e3 * f64::EPSILON * mid.abs() {
            frozen_value += worst.value;
            frozen_error += worst.error;
            frozen_abs += worst.abs_value;
            continue;
        }
        heap.push(kronrod15(&f, worst.a, mid)?);
        heap.push(kronrod15(&f, mid, worst.b)?);
        evaluations += 30;
    }
}

/// Integrates `f` over `[a, ∞)` by truncating at `a + cutoff` per the tail class.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    decay: TailClass,
    cfg: &NumericsConfig,
) -> Result<Integral> {
    let cutoff = decay.cutoff(cfg).ok_or(Error::DivergentTail)?;
    integrate(f, a, a + cutoff, cfg)
}

/// Integrates `f` over `(-∞, b]`; the tail class describes decay below `b`.
pub fn integrate_semi_infinite_below<F: Fn(f64) -> f64>(
    f: F,
    b: f64,
    decay: TailClass,
    cfg: &NumericsConfig,
) -> Result<Integral> {
    let cutoff = decay.cutoff(cfg).ok_or(Error::DivergentTail)?;
    integrate(f, b - cutoff, b, cfg)
}

const MAX_ROOT_ITERATIONS: usize = 300;

/// Brent's method on a sign-changing bracket `[lo, hi]`.
///
/// Falls back to bisection whenever interpolation does not shrink the
/// bracket fast enough, so monotone discontinuous functions converge to the
/// jump location.
pub fn find_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, cfg: &NumericsConfig) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa.is_nan() || fb.is_nan() {
        return Err(Error::NonFinite {
            x: if fa.is_nan() { a } else { b },
        });
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoBracket {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ROOT_ITERATIONS {
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

        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * cfg.root_tol;
        let half = 0.5 * (c - b);
        if half.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }

        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * half * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(half) };
        fb = f(b);
        if fb.is_nan() {
            return Err(Error::NonFinite { x: b });
        }
    }

    Err(Error::RootIterationLimit {
        iterations: MAX_ROOT_ITERATIONS,
        last_x: b,
    })
}
