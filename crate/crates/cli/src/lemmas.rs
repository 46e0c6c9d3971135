//! Randomized check of the MAD sandwich inequalities, run in parallel with
//! a deterministic report.

use std::fmt::Write;

use qdot_erasure::mad::{
    bumps_on_grid, lemma1_trial, lemma2_trial, random_bumps, trial_seed, verify_lemma1, GridPdf, TrialInput,
    TrialOutcome, SUITE_STEP,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaRun {
    pub trials: usize,
    pub seed: u64,
    pub outcomes: Vec<TrialOutcome>,
    /// Cross-correlation with a one-cell spike: `D(f ⋆ g)` must equal `D(f)`.
    pub near_delta: Option<NearDelta>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NearDelta {
    pub outcome: TrialOutcome,
    pub tight: bool,
}

impl LemmaRun {
    pub fn violations(&self) -> usize {
        let trials = self.outcomes.iter().filter(|o| !o.report.passed()).count();
        let spike = self
            .near_delta
            .as_ref()
            .is_some_and(|n| !(n.outcome.report.passed() && n.tight));
        trials + usize::from(spike)
    }

    pub fn report(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "lemma suite: trials={} seed={}", self.trials, self.seed);
        for lemma in [1u8, 2] {
            let of: Vec<_> = self.outcomes.iter().filter(|o| o.lemma == lemma).collect();
            let failed = of.iter().filter(|o| !o.report.passed()).count();
            let worst = of
                .iter()
                .map(|o| {
                    let v = o.report.values;
                    (v.mad - v.lower).min(v.upper - v.mad) / v.tolerance
                })
                .fold(f64::INFINITY, f64::min);
            let _ = writeln!(
                s,
                "lemma {lemma}: {}/{} passed, smallest margin {:.6} tolerances",
                of.len() - failed,
                of.len(),
                worst
            );
        }
        if let Some(n) = &self.near_delta {
            let v = n.outcome.report.values;
            let _ = writeln!(
                s,
                "near-delta: D(f*g)={:.12} D(f)={:.12} {}",
                v.mad,
                v.lower,
                if n.outcome.report.passed() && n.tight {
                    "tight"
                } else {
                    "FAILED"
                }
            );
        }
        for o in self.outcomes.iter().filter(|o| !o.report.passed()) {
            let v = o.report.values;
            let _ = writeln!(
                s,
                "VIOLATION lemma {} trial {} seed {}: D={} lower={} upper={} tol={} input={}",
                o.lemma,
                o.index,
                o.seed,
                v.mad,
                v.lower,
                v.upper,
                v.tolerance,
                describe(&o.input)
            );
        }
        s
    }
}

fn describe(input: &TrialInput) -> String {
    format!("{input:?}")
}

pub fn run_lemmas(trials: usize, seed: u64, near_delta: bool) -> qdot_erasure::Result<LemmaRun> {
    if trials == 0 {
        return Err(qdot_erasure::Error::Domain {
            name: "trials",
            reason: "must be at least 1".into(),
        });
    }
    let jobs: Vec<(u8, usize)> = (0..trials).map(|i| (1, i)).chain((0..trials).map(|i| (2, i))).collect();
    let outcomes = jobs
        .par_iter()
        .map(|&(lemma, i)| {
            if lemma == 1 {
                lemma1_trial(seed, i)
            } else {
                lemma2_trial(seed, i)
            }
        })
        .collect::<qdot_erasure::Result<Vec<_>>>()?;
    let near_delta = if near_delta {
        Some(near_delta_trial(seed)?)
    } else {
        None
    };
    Ok(LemmaRun {
        trials,
        seed,
        outcomes,
        near_delta,
    })
}

/// Random `f` against a single-cell spike at the origin.
pub fn near_delta_trial(seed: u64) -> qdot_erasure::Result<NearDelta> {
    let trial = trial_seed(seed, 3, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(trial);
    let bumps = random_bumps(&mut rng);
    let f = bumps_on_grid(&bumps)?;
    let spike = GridPdf::new(0.0, SUITE_STEP, vec![1.0 / SUITE_STEP])?;
    let report = verify_lemma1(&f, &spike)?;
    let v = report.values;
    Ok(NearDelta {
        tight: (v.mad - v.lower).abs() <= v.tolerance,
        outcome: TrialOutcome {
            lemma: 1,
            index: 0,
            seed: trial,
            input: TrialInput::CrossCorrelation {
                f: bumps,
                g: Vec::new(),
            },
            report,
        },
    })
}
