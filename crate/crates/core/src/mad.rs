//! Probability densities on uniform grids, their medians and mean absolute
//! deviations, and randomized checks of the MAD sandwich inequalities for
//! cross-correlations and two-component mixtures.
//!
//! Grid sample `i` sits at `origin + i * step` and carries mass
//! `step * densities[i]`, spread uniformly over the cell of width `step`
//! centred on it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::numerics::{integrate_with_breakpoints, NumericsConfig};

const NORMALIZATION_TOL: f64 = 1e-8;
const SYMMETRY_TOL: f64 = 1e-6;
// Below this many multiply-adds the direct sum beats the FFT.
const DIRECT_CORRELATION_LIMIT: usize = 1 << 18;

#[derive(Debug, Clone, PartialEq)]
pub struct GridPdf {
    origin: f64,
    step: f64,
    densities: Vec<f64>,
}

impl GridPdf {
    /// Wraps already-normalized samples.
    pub fn new(origin: f64, step: f64, densities: Vec<f64>) -> Result<Self> {
        check_grid(origin, step, &densities)?;
        let mass = step * densities.iter().sum::<f64>();
        if (mass - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::domain("densities", format!("total mass {mass} differs from 1")));
        }
        Ok(GridPdf {
            origin,
            step,
            densities,
        })
    }

    /// Samples `f` at `n` grid points and rescales to unit mass.
    pub fn from_fn<F: Fn(f64) -> f64>(origin: f64, step: f64, n: usize, f: F) -> Result<Self> {
        let densities = (0..n).map(|i| f(origin + i as f64 * step)).collect();
        Self::normalized(origin, step, densities)
    }

    /// Rescales arbitrary non-negative samples to unit mass.
    pub fn normalized(origin: f64, step: f64, mut densities: Vec<f64>) -> Result<Self> {
        check_grid(origin, step, &densities)?;
        let mass = step * densities.iter().sum::<f64>();
        if mass <= 0.0 || mass.is_nan() {
            return Err(Error::domain("densities", "total mass is zero"));
        }
        densities.iter_mut().for_each(|d| *d /= mass);
        Ok(GridPdf {
            origin,
            step,
            densities,
        })
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn densities(&self) -> &[f64] {
        &self.densities
    }

    pub fn len(&self) -> usize {
        self.densities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.densities.is_empty()
    }

    pub fn x(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.step
    }

    /// The density of `-X`.
    pub fn reflected(&self) -> GridPdf {
        let n = self.densities.len();
        GridPdf {
            origin: -self.x(n - 1),
            step: self.step,
            densities: self.densities.iter().rev().copied().collect(),
        }
    }

    /// Piecewise-linear cumulative distribution consistent with [`grid_median`].
    pub fn cdf(&self, x: f64) -> f64 {
        self.cdf_from(&self.cell_masses_below(), x)
    }

    /// `below[i]`: total mass of the cells left of cell `i`.
    fn cell_masses_below(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.densities
            .iter()
            .map(|d| {
                let below = acc;
                acc += self.step * d;
                below
            })
            .collect()
    }

    fn cdf_from(&self, below: &[f64], x: f64) -> f64 {
        let h = self.step;
        let u = (x - self.origin) / h + 0.5;
        if u <= 0.0 {
            return 0.0;
        }
        let cell = u.floor() as usize;
        if cell >= self.densities.len() {
            return 1.0;
        }
        (below[cell] + (u - cell as f64) * h * self.densities[cell]).min(1.0)
    }

    pub fn mean(&self) -> f64 {
        self.step
            * self
                .densities
                .iter()
                .enumerate()
                .map(|(i, d)| self.x(i) * d)
                .sum::<f64>()
    }

    /// Mean absolute deviation about an arbitrary centre.
    pub fn mad_about(&self, center: f64) -> f64 {
        self.step
            * self
                .densities
                .iter()
                .enumerate()
                .map(|(i, d)| (self.x(i) - center).abs() * d)
                .sum::<f64>()
    }
}

fn check_grid(origin: f64, step: f64, densities: &[f64]) -> Result<()> {
    if !origin.is_finite() {
        return Err(Error::domain("origin", "must be finite"));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::domain("step", format!("must be positive, got {step}")));
    }
    if densities.is_empty() {
        return Err(Error::domain("densities", "grid is empty"));
    }
    if let Some(bad) = densities.iter().find(|d| !(d.is_finite() && **d >= 0.0)) {
        return Err(Error::domain(
            "densities",
            format!("values must be finite and non-negative, found {bad}"),
        ));
    }
    Ok(())
}

/// Point where the cumulative mass crosses 1/2, interpolating within the cell.
pub fn grid_median(f: &GridPdf) -> f64 {
    let h = f.step;
    let mut cumulative = 0.0;
    for (i, &d) in f.densities.iter().enumerate() {
        let mass = h * d;
        if mass > 0.0 && cumulative + mass >= 0.5 {
            let frac = ((0.5 - cumulative) / mass).clamp(0.0, 1.0);
            return f.x(i) - 0.5 * h + frac * h;
        }
        cumulative += mass;
    }
    f.x(f.len() - 1)
}

pub fn grid_mad(f: &GridPdf) -> f64 {
    f.mad_about(grid_median(f))
}

fn same_step(f: &GridPdf, g: &GridPdf) -> Result<()> {
    if (f.step - g.step).abs() > 1e-12 * f.step.max(g.step) {
        return Err(Error::StepMismatch(f.step, g.step));
    }
    Ok(())
}

/// `(f ⋆ g)(x) = Σ_y f(y) g(y - x) step`, the density of `Y - Z` for
/// independent `Y ~ f`, `Z ~ g`.
pub fn grid_cross_correlate(f: &GridPdf, g: &GridPdf) -> Result<GridPdf> {
    same_step(f, g)?;
    let h = f.step;
    let ng = g.len();
    let reversed: Vec<f64> = g.densities.iter().rev().copied().collect();
    let mut out = convolve(&f.densities, &reversed);
    for v in &mut out {
        *v = (*v * h).max(0.0);
    }
    let origin = f.origin - g.origin - (ng - 1) as f64 * h;
    GridPdf::normalized(origin, h, out)
}

fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len() + b.len() - 1;
    if a.len().saturating_mul(b.len()) <= DIRECT_CORRELATION_LIMIT {
        let mut out = vec![0.0; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        return out;
    }
    let size = n.next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(size);
    let inverse = planner.plan_fft_inverse(size);
    let pad = |v: &[f64]| {
        let mut buf: Vec<Complex<f64>> = v.iter().map(|&x| Complex::new(x, 0.0)).collect();
        buf.resize(size, Complex::new(0.0, 0.0));
        buf
    };
    let mut fa = pad(a);
    let mut fb = pad(b);
    forward.process(&mut fa);
    forward.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    inverse.process(&mut fa);
    let scale = 1.0 / size as f64;
    fa[..n].iter().map(|c| c.re * scale).collect()
}

/// `p_f f + (1 - p_f) g` on the union of the two grids, which must be aligned.
pub fn grid_mixture(f: &GridPdf, g: &GridPdf, p_f: f64) -> Result<GridPdf> {
    same_step(f, g)?;
    check_probability("p_f", p_f)?;
    let h = f.step;
    let offset = (g.origin - f.origin) / h;
    let shift = offset.round();
    if (offset - shift).abs() > 1e-6 {
        return Err(Error::domain("origin", "grids are not aligned"));
    }
    let origin = f.origin.min(g.origin);
    let start_f = ((f.origin - origin) / h).round() as usize;
    let start_g = ((g.origin - origin) / h).round() as usize;
    let n = (start_f + f.len()).max(start_g + g.len());
    let mut out = vec![0.0; n];
    for (i, d) in f.densities.iter().enumerate() {
        out[start_f + i] += p_f * d;
    }
    for (i, d) in g.densities.iter().enumerate() {
        out[start_g + i] += (1.0 - p_f) * d;
    }
    GridPdf::normalized(origin, h, out)
}

fn check_probability(name: &'static str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::domain(name, format!("must lie in [0, 1], got {p}")))
    }
}

/// Outcome of checking one sandwich inequality `lower ≤ value ≤ upper`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaReport {
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub values: LemmaValues,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaValues {
    pub mad: f64,
    pub lower: f64,
    pub upper: f64,
    pub tolerance: f64,
}

impl LemmaReport {
    fn new(mad: f64, lower: f64, upper: f64, tolerance: f64) -> Self {
        LemmaReport {
            lower_ok: mad >= lower - tolerance,
            upper_ok: mad <= upper + tolerance,
            values: LemmaValues {
                mad,
                lower,
                upper,
                tolerance,
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

fn discretization_tol(step: f64, d_f: f64, d_g: f64) -> f64 {
    5.0 * step * (1.0 + d_f + d_g)
}

/// `max(D(f), D(g)) ≤ D(f ⋆ g) ≤ D(f) + D(g)`.
pub fn verify_lemma1(f: &GridPdf, g: &GridPdf) -> Result<LemmaReport> {
    let h = grid_cross_correlate(f, g)?;
    let (d_f, d_g) = (grid_mad(f), grid_mad(g));
    Ok(LemmaReport::new(
        grid_mad(&h),
        d_f.max(d_g),
        d_f + d_g,
        discretization_tol(f.step, d_f, d_g),
    ))
}

/// Largest violation of `F(m + d) + F(m - d) = 1` over the grid cells.
fn asymmetry(f: &GridPdf, median: f64) -> f64 {
    let h = f.step;
    let reach = (f.x(f.len() - 1) - median).abs().max((median - f.origin).abs()) + h;
    let count = (reach / (0.5 * h)).ceil() as usize;
    let below = f.cell_masses_below();
    (0..=count)
        .map(|k| {
            let d = 0.5 * h * k as f64;
            (f.cdf_from(&below, median + d) + f.cdf_from(&below, median - d) - 1.0).abs()
        })
        .fold(0.0, f64::max)
}

/// For `f`, `g` symmetric about their medians, with `p_g = 1 - p_f`:
/// `max(p_f D(f) + p_g D(g), min(p_f, p_g)(m_f - m_g)) ≤ D(mix)
/// ≤ p_f D(f) + p_g D(g) + min(p_f, p_g)(m_f - m_g)`.
pub fn verify_lemma2(f: &GridPdf, g: &GridPdf, p_f: f64) -> Result<LemmaReport> {
    check_probability("p_f", p_f)?;
    let (mut f, mut g, mut p_f) = (f, g, p_f);
    let (mut m_f, mut m_g) = (grid_median(f), grid_median(g));
    for (pdf, m) in [(f, m_f), (g, m_g)] {
        let a = asymmetry(pdf, m);
        if a > SYMMETRY_TOL {
            return Err(Error::AsymmetricInput(a));
        }
    }
    if m_f < m_g {
        std::mem::swap(&mut f, &mut g);
        std::mem::swap(&mut m_f, &mut m_g);
        p_f = 1.0 - p_f;
    }
    let p_g = 1.0 - p_f;
    let mix = grid_mixture(f, g, p_f)?;
    let (d_f, d_g) = (grid_mad(f), grid_mad(g));
    let weighted = p_f * d_f + p_g * d_g;
    let separation = p_f.min(p_g) * (m_f - m_g);
    Ok(LemmaReport::new(
        grid_mad(&mix),
        weighted.max(separation),
        weighted + separation,
        discretization_tol(f.step, d_f, d_g),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathologicalExample {
    pub eta: f64,
    /// Total mass of `h`, which is not normalized.
    pub mixture_mass: f64,
    /// `∫ |y| h(y) dy`, taken about `y = 0`, the median of every `g(·|y)`.
    pub mad: f64,
    /// `min_y D(g)|_y`, attained at `y = 0`.
    pub min_kernel_mad: f64,
}

/// `h(y) = ∫ f(x) g(x|y) dx` with `f` uniform on `(-1/2, 1/2)` and `g(·|y)`
/// three point masses: `(1-η)/2` at `y ± (|y| + 1)` and `η` at `y`.
pub fn pathological_h(y: f64, eta: f64) -> f64 {
    let uniform = |x: f64| if x.abs() < 0.5 { 1.0 } else { 0.0 };
    let side = 0.5 * (1.0 - eta);
    side * uniform(y + y.abs() + 1.0) + side * uniform(y - y.abs() - 1.0) + eta * uniform(y)
}

/// Mass and MAD of [`pathological_h`], integrated over its compact support.
pub fn pathological_counterexample(eta: f64) -> Result<PathologicalExample> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::domain("eta", format!("must lie in (0, 1], got {eta}")));
    }
    let cfg = NumericsConfig::default();
    let breaks = [-0.5, 0.0, 0.5];
    let mass = integrate_with_breakpoints(|y| pathological_h(y, eta), -2.0, 2.0, &breaks, &cfg)?;
    let mad = integrate_with_breakpoints(|y| y.abs() * pathological_h(y, eta), -2.0, 2.0, &breaks, &cfg)?;
    Ok(PathologicalExample {
        eta,
        mixture_mass: mass.value,
        mad: mad.value,
        min_kernel_mad: 1.0 - eta,
    })
}

/// Grid used by the randomized suites: `[-8, 8]` with step `1/512`.
pub const SUITE_HALF_WIDTH: f64 = 8.0;
pub const SUITE_STEP: f64 = 1.0 / 512.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BumpShape {
    Uniform,
    Triangular,
    Gaussian,
}

/// One mixture component: a bump centred at `center` with half-width (or
/// standard deviation, for Gaussians) `width`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub shape: BumpShape,
    pub center: f64,
    pub width: f64,
    pub weight: f64,
}

impl Bump {
    fn density(&self, x: f64) -> f64 {
        let z = (x - self.center) / self.width;
        let unit = match self.shape {
            BumpShape::Uniform => {
                if z.abs() <= 1.0 {
                    0.5
                } else {
                    0.0
                }
            }
            BumpShape::Triangular => (1.0 - z.abs()).max(0.0),
            BumpShape::Gaussian => (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt(),
        };
        self.weight * unit / self.width
    }
}

fn suite_points() -> usize {
    (2.0 * SUITE_HALF_WIDTH / SUITE_STEP).round() as usize + 1
}

/// Samples a bump mixture on the suite grid.
pub fn bumps_on_grid(bumps: &[Bump]) -> Result<GridPdf> {
    let origin = -SUITE_HALF_WIDTH;
    GridPdf::from_fn(origin, SUITE_STEP, suite_points(), |x| {
        bumps.iter().map(|b| b.density(x)).sum()
    })
}

/// A bump sampled at integer offsets from a grid-point centre, so the
/// samples are exactly mirror-symmetric about it.
pub fn symmetric_bump_on_grid(shape: BumpShape, center_index: usize, width: f64) -> Result<GridPdf> {
    let n = suite_points();
    let bump = Bump {
        shape,
        center: 0.0,
        width,
        weight: 1.0,
    };
    let densities = (0..n)
        .map(|i| {
            let offset = (i as f64 - center_index as f64) * SUITE_STEP;
            bump.density(offset.abs())
        })
        .collect();
    GridPdf::normalized(-SUITE_HALF_WIDTH, SUITE_STEP, densities)
}

fn random_shape(rng: &mut ChaCha8Rng) -> BumpShape {
    match rng.random_range(0..3) {
        0 => BumpShape::Uniform,
        1 => BumpShape::Triangular,
        _ => BumpShape::Gaussian,
    }
}

/// One to four bumps whose bulk lies inside the suite grid.
pub fn random_bumps(rng: &mut ChaCha8Rng) -> Vec<Bump> {
    let count = rng.random_range(1..=4);
    (0..count)
        .map(|_| {
            let shape = random_shape(rng);
            let width = rng.random_range(0.05..1.5);
            let reach = match shape {
                BumpShape::Gaussian => 6.0 * width,
                _ => width,
            };
            let limit = (SUITE_HALF_WIDTH / 2.0 - reach).max(0.0);
            Bump {
                shape,
                center: rng.random_range(-limit..=limit),
                width,
                weight: rng.random_range(0.1..1.0),
            }
        })
        .collect()
}

/// Parameters of one symmetric component drawn for the mixture lemma.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricComponent {
    pub shape: BumpShape,
    pub center_index: usize,
    pub width: f64,
}

impl SymmetricComponent {
    pub fn center(&self) -> f64 {
        -SUITE_HALF_WIDTH + self.center_index as f64 * SUITE_STEP
    }

    pub fn to_grid(&self) -> Result<GridPdf> {
        symmetric_bump_on_grid(self.shape, self.center_index, self.width)
    }
}

pub fn random_symmetric_component(rng: &mut ChaCha8Rng) -> SymmetricComponent {
    let shape = random_shape(rng);
    let width = rng.random_range(0.05..1.0);
    let reach = match shape {
        BumpShape::Gaussian => 7.0 * width,
        _ => width,
    };
    let limit = SUITE_HALF_WIDTH - reach - 0.01;
    let center: f64 = rng.random_range(-limit..=limit);
    SymmetricComponent {
        shape,
        center_index: ((center + SUITE_HALF_WIDTH) / SUITE_STEP).round() as usize,
        width,
    }
}

/// Seed of trial `index` in a suite seeded with `seed`; distinct for the two lemmas.
pub fn trial_seed(seed: u64, lemma: u8, index: usize) -> u64 {
    let mixed = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add((lemma as u64) << 56)
        .wrapping_add(index as u64);
    mixed ^ (mixed >> 29)
}

#[derive(Debug, Clone, PartialEq)]
pub enum TrialInput {
    CrossCorrelation {
        f: Vec<Bump>,
        g: Vec<Bump>,
    },
    Mixture {
        f: SymmetricComponent,
        g: SymmetricComponent,
        p_f: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub lemma: u8,
    pub index: usize,
    pub seed: u64,
    pub input: TrialInput,
    pub report: LemmaReport,
}

/// One cross-correlation trial, reproducible from `trial_seed`.
pub fn lemma1_trial(seed: u64, index: usize) -> Result<TrialOutcome> {
    let trial = trial_seed(seed, 1, index);
    let mut rng = ChaCha8Rng::seed_from_u64(trial);
    let f = random_bumps(&mut rng);
    let g = random_bumps(&mut rng);
    let report = verify_lemma1(&bumps_on_grid(&f)?, &bumps_on_grid(&g)?)?;
    Ok(TrialOutcome {
        lemma: 1,
        index,
        seed: trial,
        input: TrialInput::CrossCorrelation { f, g },
        report,
    })
}

/// One mixture trial, reproducible from `trial_seed`.
pub fn lemma2_trial(seed: u64, index: usize) -> Result<TrialOutcome> {
    let trial = trial_seed(seed, 2, index);
    let mut rng = ChaCha8Rng::seed_from_u64(trial);
    let f = random_symmetric_component(&mut rng);
    let g = random_symmetric_component(&mut rng);
    let p_f = rng.random_range(0.01..0.99);
    let report = verify_lemma2(&f.to_grid()?, &g.to_grid()?, p_f)?;
    Ok(TrialOutcome {
        lemma: 2,
        index,
        seed: trial,
        input: TrialInput::Mixture { f, g, p_f },
        report,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaSuiteReport {
    pub trials: usize,
    pub seed: u64,
    pub outcomes: Vec<TrialOutcome>,
}

impl LemmaSuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &TrialOutcome> {
        self.outcomes.iter().filter(|o| !o.report.passed())
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Runs `trials` trials of each lemma.
pub fn run_lemma_suite(trials: usize, seed: u64) -> Result<LemmaSuiteReport> {
    if trials == 0 {
        return Err(Error::domain("trials", "must be at least 1"));
    }
    let mut outcomes = Vec::with_capacity(2 * trials);
    for i in 0..trials {
        outcomes.push(lemma1_trial(seed, i)?);
    }
    for i in 0..trials {
        outcomes.push(lemma2_trial(seed, i)?);
    }
    Ok(LemmaSuiteReport { trials, seed, outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn uniform(a: f64, b: f64, step: f64) -> GridPdf {
        let n = ((b - a) / step).round() as usize + 1;
        GridPdf::from_fn(a, step, n, |_| 1.0).unwrap()
    }

    fn gaussian(sigma: f64, half_width: f64, step: f64) -> GridPdf {
        let n = (2.0 * half_width / step).round() as usize + 1;
        GridPdf::from_fn(-half_width, step, n, |x| (-0.5 * (x / sigma).powi(2)).exp()).unwrap()
    }

    const SQRT_2_OVER_PI: f64 = 0.7978845608028654;

    #[test]
    fn rejects_bad_grids() {
        assert!(GridPdf::new(0.0, 0.0, vec![1.0]).is_err());
        assert!(GridPdf::new(0.0, 1.0, vec![]).is_err());
        assert!(GridPdf::new(0.0, 1.0, vec![0.5, -0.1]).is_err());
        assert!(GridPdf::new(0.0, 1.0, vec![0.5, 0.4]).is_err());
        assert!(GridPdf::new(0.0, 1.0, vec![0.5, 0.5]).is_ok());
        assert!(GridPdf::normalized(0.0, 1.0, vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn uniform_median_and_mad() {
        let step = 1e-3;
        let f = uniform(0.0, 1.0, step);
        assert_abs_diff_eq!(grid_median(&f), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(grid_mad(&f), 0.25, epsilon = 2.0 * step);
    }

    #[test]
    fn triangle_median_is_zero() {
        let f = GridPdf::from_fn(-1.0, 1e-3, 2001, |x| 1.0 - x.abs()).unwrap();
        assert_abs_diff_eq!(grid_median(&f), 0.0, epsilon = 1e-9);
        // ∫|x|(1-|x|)dx = 1/3
        assert_abs_diff_eq!(grid_mad(&f), 1.0 / 3.0, epsilon = 1e-5);
    }

    #[test]
    fn uniform_mixture_median() {
        let step = 1e-3;
        let f = GridPdf::from_fn(0.0, step, 3001, |x| {
            if x < 1.0 - 1e-9 {
                0.25
            } else if x > 2.0 + 1e-9 {
                0.75
            } else {
                0.0
            }
        })
        .unwrap();
        assert_abs_diff_eq!(grid_median(&f), 2.0 + 1.0 / 3.0, epsilon = step);
    }

    #[test]
    fn gaussian_mad() {
        let f = gaussian(1.0, 10.0, 1e-3);
        assert_abs_diff_eq!(grid_mad(&f), SQRT_2_OVER_PI, epsilon = 1e-4);
    }

    #[test]
    fn logistic_mad() {
        let f = GridPdf::from_fn(-60.0, 1e-3, 120_001, |x| {
            let e = (-x.abs()).exp();
            e / ((1.0 + e) * (1.0 + e))
        })
        .unwrap();
        assert_abs_diff_eq!(grid_mad(&f), 2.0 * std::f64::consts::LN_2, epsilon = 1e-4);
    }

    #[test]
    fn median_lies_where_cdf_is_half() {
        let f = uniform(-0.3, 2.0, 0.01);
        assert_abs_diff_eq!(f.cdf(grid_median(&f)), 0.5, epsilon = 1e-12);
        assert_eq!(f.cdf(-10.0), 0.0);
        assert_eq!(f.cdf(10.0), 1.0);
    }

    #[test]
    fn correlation_with_spike_shifts() {
        let step = 1e-2;
        let f = gaussian(0.7, 5.0, step);
        let spike = GridPdf::new(1.5, step, vec![1.0 / step]).unwrap();
        let h = grid_cross_correlate(&f, &spike).unwrap();
        assert_abs_diff_eq!(grid_median(&h), grid_median(&f) - 1.5, epsilon = 2.0 * step);
        assert_abs_diff_eq!(grid_mad(&h), grid_mad(&f), epsilon = 2.0 * step);
        let report = verify_lemma1(&f, &spike).unwrap();
        assert!(report.passed());
        assert_abs_diff_eq!(report.values.mad, report.values.lower, epsilon = 1e-9);
    }

    #[test]
    fn gaussian_variances_add() {
        let step = 2e-3;
        let f = gaussian(0.6, 8.0, step);
        let g = gaussian(0.8, 8.0, step);
        let h = grid_cross_correlate(&f, &g).unwrap();
        assert_abs_diff_eq!(grid_mad(&h), SQRT_2_OVER_PI, epsilon = 1e-3);
        let report = verify_lemma1(&f, &g).unwrap();
        assert!(report.passed());
        assert_abs_diff_eq!(report.values.lower, 0.8 * SQRT_2_OVER_PI, epsilon = 1e-3);
        assert_abs_diff_eq!(report.values.upper, 1.4 * SQRT_2_OVER_PI, epsilon = 1e-3);
    }

    #[test]
    fn fft_matches_direct_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a: Vec<f64> = (0..700).map(|_| rng.random::<f64>()).collect();
        let b: Vec<f64> = (0..900).map(|_| rng.random::<f64>()).collect();
        assert!(a.len() * b.len() > DIRECT_CORRELATION_LIMIT);
        let fast = convolve(&a, &b);
        for k in [0, 1, 350, 899, 1200, 1598] {
            let direct: f64 = (0..a.len())
                .filter(|&i| k >= i && k - i < b.len())
                .map(|i| a[i] * b[k - i])
                .sum();
            assert_abs_diff_eq!(fast[k], direct, epsilon = 1e-10 * direct.max(1.0));
        }
    }

    #[test]
    fn asymmetric_correlation_median_brute_force() {
        // Small grids: exhaustively enumerate Y - Z.
        let step = 0.25;
        let f = GridPdf::normalized(0.0, step, vec![4.0, 3.0, 2.0, 1.0, 0.5, 0.25]).unwrap();
        let g = GridPdf::normalized(-0.5, step, vec![1.0, 2.0, 3.0, 2.0, 1.0]).unwrap();
        let h = grid_cross_correlate(&f, &g).unwrap();
        let mut brute = std::collections::BTreeMap::new();
        for (i, &a) in f.densities().iter().enumerate() {
            for (j, &b) in g.densities().iter().enumerate() {
                let k = i as i64 - j as i64;
                *brute.entry(k).or_insert(0.0) += a * b * step * step;
            }
        }
        for (k, mass) in brute {
            let x = f.origin() - g.origin() + k as f64 * step;
            let idx = ((x - h.origin()) / step).round() as usize;
            assert_abs_diff_eq!(h.densities()[idx] * step, mass, epsilon = 1e-14);
        }
        let expected = grid_median(&f) - grid_median(&g);
        assert_abs_diff_eq!(grid_median(&h), expected, epsilon = 2.0 * step);
    }

    #[test]
    fn step_mismatch() {
        let f = uniform(0.0, 1.0, 0.1);
        let g = uniform(0.0, 1.0, 0.2);
        assert_eq!(grid_cross_correlate(&f, &g).unwrap_err(), Error::StepMismatch(0.1, 0.2));
    }

    #[test]
    fn reflection_preserves_mad() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let f = bumps_on_grid(&random_bumps(&mut rng)).unwrap();
            let r = f.reflected();
            assert_abs_diff_eq!(grid_mad(&r), grid_mad(&f), epsilon = 2.0 * f.step());
            assert_abs_diff_eq!(grid_median(&r), -grid_median(&f), epsilon = 2.0 * f.step());
        }
    }

    #[test]
    fn median_minimizes_mad() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let f = bumps_on_grid(&random_bumps(&mut rng)).unwrap();
            let m = grid_median(&f);
            let best = f.mad_about(m);
            for _ in 0..20 {
                let offset: f64 = rng.random_range(-3.0..3.0);
                if offset.abs() < 1e-3 {
                    continue;
                }
                assert!(f.mad_about(m + offset) > best);
            }
        }
    }

    #[test]
    fn mixture_with_equal_medians() {
        let f = symmetric_bump_on_grid(BumpShape::Gaussian, 4096, 0.5).unwrap();
        let g = symmetric_bump_on_grid(BumpShape::Triangular, 4096, 2.0).unwrap();
        let r = verify_lemma2(&f, &g, 0.4).unwrap();
        assert!(r.passed());
        assert_abs_diff_eq!(r.values.lower, r.values.upper, epsilon = 1e-15);
        assert_abs_diff_eq!(r.values.mad, r.values.lower, epsilon = r.values.tolerance);
    }

    #[test]
    fn separated_unit_mad_mixture() {
        // Uniform of half-width 2 has MAD 1; centres at ±5.
        let c = 4096;
        let offset = (5.0 / SUITE_STEP) as usize;
        let f = symmetric_bump_on_grid(BumpShape::Uniform, c + offset, 2.0).unwrap();
        let g = symmetric_bump_on_grid(BumpShape::Uniform, c - offset, 2.0).unwrap();
        assert_abs_diff_eq!(grid_mad(&f), 1.0, epsilon = 2.0 * SUITE_STEP);
        let r = verify_lemma2(&f, &g, 0.3).unwrap();
        assert!(r.passed());
        assert_abs_diff_eq!(r.values.lower, 3.0, epsilon = 1e-2);
        assert_abs_diff_eq!(r.values.upper, 4.0, epsilon = 1e-2);
        assert!(r.values.mad >= 3.0 && r.values.mad <= 4.0);
        // Argument order does not matter.
        let swapped = verify_lemma2(&g, &f, 0.7).unwrap();
        assert_abs_diff_eq!(swapped.values.mad, r.values.mad, epsilon = 1e-12);
    }

    #[test]
    fn asymmetric_input_rejected() {
        let f = GridPdf::from_fn(0.0, 1e-2, 301, |x| (-x).exp()).unwrap();
        assert!(matches!(verify_lemma2(&f, &f, 0.5), Err(Error::AsymmetricInput(_))));
    }

    #[test]
    fn pathological_values() {
        let p = pathological_counterexample(0.2).unwrap();
        assert_abs_diff_eq!(p.mixture_mass, 0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(p.mad, 0.05, epsilon = 1e-12);
        assert_abs_diff_eq!(p.min_kernel_mad, 0.8, epsilon = 1e-15);
        let small = pathological_counterexample(1e-6).unwrap();
        assert!(small.mad < 1e-6);
        let one = pathological_counterexample(1.0).unwrap();
        assert_abs_diff_eq!(one.mad, 0.25, epsilon = 1e-12);
        assert!(pathological_counterexample(0.0).is_err());
    }

    #[test]
    fn suite_is_reproducible() {
        let a = run_lemma_suite(5, 42).unwrap();
        let b = run_lemma_suite(5, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.all_passed());
        assert_ne!(trial_seed(42, 1, 0), trial_seed(42, 2, 0));
        assert!(run_lemma_suite(0, 1).is_err());
    }
}
