//! Finite-time driving of the dot level: the occupation relaxes toward the
//! instantaneous steady state at rate `Γ_tot` while the work `∫ p dμ`
//! accumulates, with instantaneous quenches charged `Δμ · p`.

use std::io::{self, Write};

use crate::dot::{half_occupation_level, occupation, DotSystem};
use crate::error::{Error, Result};
use crate::leads::BroadeningKernel;
use crate::numerics::NumericsConfig;

/// Local error target for the occupation per accepted step.
pub const STEPPER_TOL: f64 = 1e-9;
/// Largest allowed step, in units of `1 / Γ_tot`.
pub const MAX_STEP_RATE_PRODUCT: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentShape {
    Linear,
    Instantaneous,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub mu_start: f64,
    pub mu_end: f64,
    pub duration: f64,
    pub shape: SegmentShape,
}

impl Segment {
    pub fn linear(mu_start: f64, mu_end: f64, duration: f64) -> Self {
        Segment {
            mu_start,
            mu_end,
            duration,
            shape: SegmentShape::Linear,
        }
    }

    pub fn quench(mu_start: f64, mu_end: f64) -> Self {
        Segment {
            mu_start,
            mu_end,
            duration: 0.0,
            shape: SegmentShape::Instantaneous,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialOccupation {
    SteadyState,
    Fixed(f64),
}

/// A piecewise gate schedule `μ(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolSchedule {
    segments: Vec<Segment>,
    initial_occupation: InitialOccupation,
}

impl ProtocolSchedule {
    pub fn new(segments: Vec<Segment>, initial_occupation: InitialOccupation) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::domain("segments", "schedule is empty"));
        }
        for (i, s) in segments.iter().enumerate() {
            if !(s.mu_start.is_finite() && s.mu_end.is_finite()) {
                return Err(Error::domain("segments", format!("segment {i} has a non-finite level")));
            }
            if !(s.duration >= 0.0 && s.duration.is_finite()) {
                return Err(Error::domain(
                    "segments",
                    format!("segment {i} has invalid duration {}", s.duration),
                ));
            }
            if s.shape == SegmentShape::Instantaneous && s.duration != 0.0 {
                return Err(Error::domain(
                    "segments",
                    format!("instantaneous segment {i} must have zero duration"),
                ));
            }
            if i > 0 && segments[i - 1].mu_end != s.mu_start {
                return Err(Error::domain(
                    "segments",
                    format!("segment {i} does not start where segment {} ends", i - 1),
                ));
            }
        }
        if let InitialOccupation::Fixed(p) = initial_occupation {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::domain(
                    "initial_occupation",
                    format!("must lie in [0, 1], got {p}"),
                ));
            }
        }
        Ok(ProtocolSchedule {
            segments,
            initial_occupation,
        })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn initial_occupation(&self) -> InitialOccupation {
        self.initial_occupation
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub mu: f64,
    pub p: f64,
    /// Cumulative work done on the dot.
    pub work: f64,
}

/// Samples at every accepted step. A quench adds a sample at the same `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory always holds the initial sample")
    }

    pub fn total_work(&self) -> f64 {
        self.last().work
    }

    /// Writes `t,mu,p,work` rows with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "t,mu,p,work")?;
        for s in &self.samples {
            writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", s.t, s.mu, s.p, s.work)?;
        }
        Ok(())
    }
}

/// `dp/dt = Γ_tot (p_ss(μ) - p)`.
pub fn relaxation_rate(p: f64, mu: f64, sys: &DotSystem, cfg: &NumericsConfig) -> Result<f64> {
    Ok(sys.rates().total() * (occupation(mu, sys, cfg)? - p))
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// Fifth-order weights minus embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

struct Ramp<'a> {
    sys: &'a DotSystem,
    cfg: &'a NumericsConfig,
    mu_start: f64,
    slope: f64,
    rate: f64,
}

impl Ramp<'_> {
    fn mu(&self, tau: f64) -> f64 {
        self.mu_start + self.slope * tau
    }

    /// Derivatives of `(p, W)` at local time `tau`.
    fn rhs(&self, tau: f64, p: f64) -> Result<[f64; 2]> {
        let target = occupation(self.mu(tau), self.sys, self.cfg)?;
        Ok([self.rate * (target - p), p * self.slope])
    }
}

fn integrate_ramp(
    ramp: &Ramp<'_>,
    duration: f64,
    dt_max: f64,
    t0: f64,
    mu_end: f64,
    state: &mut [f64; 2],
    samples: &mut Vec<Sample>,
) -> Result<()> {
    let mut tau = 0.0;
    let mut h = dt_max.min(duration);
    let mut k1 = ramp.rhs(0.0, state[0])?;
    let work_scale = ramp.slope.abs() * duration + f64::MIN_POSITIVE;
    while tau < duration {
        let last = tau + h >= duration * (1.0 - 1e-14);
        let h_step = if last { duration - tau } else { h };
        let mut k = [[0.0; 2]; 7];
        k[0] = k1;
        for s in 1..7 {
            let mut p = state[0];
            for (j, kj) in k.iter().enumerate().take(s) {
                p += h_step * A[s][j] * kj[0];
            }
            k[s] = ramp.rhs(tau + C[s] * h_step, p)?;
        }
        let mut next = *state;
        let mut err = [0.0; 2];
        for c in 0..2 {
            for s in 0..6 {
                next[c] += h_step * A[6][s] * k[s][c];
            }
            for s in 0..7 {
                err[c] += h_step * E[s] * k[s][c];
            }
        }
        let ratio = (err[0].abs() / STEPPER_TOL).max(err[1].abs() / (STEPPER_TOL * work_scale));
        if ratio <= 1.0 {
            tau = if last { duration } else { tau + h_step };
            next[0] = next[0].clamp(0.0, 1.0);
            *state = next;
            k1 = k[6];
            let mu = if last { mu_end } else { ramp.mu(tau) };
            samples.push(Sample {
                t: t0 + tau,
                mu,
                p: state[0],
                work: state[1],
            });
        }
        let factor = if ratio == 0.0 {
            5.0
        } else {
            (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0)
        };
        h = (h_step * factor).min(dt_max);
        if h < duration * 1e-15 {
            return Err(Error::NonConvergence {
                a: t0 + tau,
                b: t0 + duration,
                estimate: state[0],
                abs_error: err[0].abs(),
            });
        }
    }
    Ok(())
}

/// Integrates the occupation and cumulative work through `sched`.
///
/// Linear segments of zero duration are treated as quenches.
pub fn simulate(sys: &DotSystem, sched: &ProtocolSchedule, dt_max: f64, cfg: &NumericsConfig) -> Result<Trajectory> {
    let rate = sys.rates().total();
    let cap = MAX_STEP_RATE_PRODUCT / rate;
    if dt_max.is_nan() || dt_max <= 0.0 || dt_max > cap * (1.0 + 1e-12) {
        return Err(Error::StepTooLarge { dt: dt_max, cap });
    }
    let mu0 = sched.segments[0].mu_start;
    let p0 = match sched.initial_occupation {
        InitialOccupation::SteadyState => occupation(mu0, sys, cfg)?,
        InitialOccupation::Fixed(p) => p,
    };
    let mut samples = vec![Sample {
        t: 0.0,
        mu: mu0,
        p: p0,
        work: 0.0,
    }];
    let mut state = [p0, 0.0];
    let mut t = 0.0;
    for seg in &sched.segments {
        if seg.shape == SegmentShape::Instantaneous || seg.duration == 0.0 {
            state[1] += (seg.mu_end - seg.mu_start) * state[0];
            samples.push(Sample {
                t,
                mu: seg.mu_end,
                p: state[0],
                work: state[1],
            });
            continue;
        }
        let ramp = Ramp {
            sys,
            cfg,
            mu_start: seg.mu_start,
            slope: (seg.mu_end - seg.mu_start) / seg.duration,
            rate,
        };
        integrate_ramp(&ramp, seg.duration, dt_max, t, seg.mu_end, &mut state, &mut samples)?;
        t += seg.duration;
    }
    Ok(Trajectory { samples })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErasureTarget {
    Zero,
    One,
}

/// Default distance of the turning point, in units of the dominant scale:
/// 40 for exponential tails, 12 when a Gaussian kernel dominates.
pub fn default_cutoff_multiplier(sys: &DotSystem) -> f64 {
    match sys.kernel() {
        BroadeningKernel::Gaussian { sigma } if *sigma > sys.max_thermal_energy() => 12.0,
        _ => 40.0,
    }
}

/// Slow ramp from `μ_½` out past the far edge of the bias window, then a quench back.
///
/// The turning point is `cutoff · scale` beyond the farther of `μ_½` and the
/// electrode potential on that side, so the level always clears the bias window.
pub fn make_erasure_schedule(
    sys: &DotSystem,
    target: ErasureTarget,
    ramp_duration: f64,
    cutoff_multiplier: f64,
    cfg: &NumericsConfig,
) -> Result<ProtocolSchedule> {
    if !(ramp_duration >= 0.0 && ramp_duration.is_finite()) {
        return Err(Error::domain(
            "ramp_duration",
            format!("must be non-negative, got {ramp_duration}"),
        ));
    }
    if !(cutoff_multiplier > 0.0 && cutoff_multiplier.is_finite()) {
        return Err(Error::domain(
            "cutoff_multiplier",
            format!("must be positive, got {cutoff_multiplier}"),
        ));
    }
    let mu_half = half_occupation_level(sys, cfg)?.mu;
    let reach = cutoff_multiplier * sys.dominant_scale();
    let turn = match target {
        ErasureTarget::Zero => mu_half.max(sys.source().chemical_potential()) + reach,
        ErasureTarget::One => mu_half.min(sys.drain().chemical_potential()) - reach,
    };
    let ramp = if ramp_duration > 0.0 {
        Segment::linear(mu_half, turn, ramp_duration)
    } else {
        Segment::quench(mu_half, turn)
    };
    ProtocolSchedule::new(
        vec![ramp, Segment::quench(turn, mu_half)],
        InitialOccupation::SteadyState,
    )
}

/// Outcome of erasing to zero and then running the protocol backwards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reversibility {
    pub net_work: f64,
    /// `|p - 1/2|` at the end.
    pub p_error: f64,
}

/// Erasure to zero followed by its time reverse: quench out, ramp back.
pub fn reversibility_check(
    sys: &DotSystem,
    ramp_duration: f64,
    dt_max: f64,
    cfg: &NumericsConfig,
) -> Result<Reversibility> {
    let forward = make_erasure_schedule(
        sys,
        ErasureTarget::Zero,
        ramp_duration,
        default_cutoff_multiplier(sys),
        cfg,
    )?;
    let ramp = forward.segments[0];
    let mut segments = forward.segments.clone();
    segments.push(Segment::quench(ramp.mu_start, ramp.mu_end));
    segments.push(Segment {
        mu_start: ramp.mu_end,
        mu_end: ramp.mu_start,
        ..ramp
    });
    let schedule = ProtocolSchedule::new(segments, InitialOccupation::SteadyState)?;
    let traj = simulate(sys, &schedule, dt_max, cfg)?;
    Ok(Reversibility {
        net_work: traj.total_work(),
        p_error: (traj.last().p - 0.5).abs(),
    })
}
