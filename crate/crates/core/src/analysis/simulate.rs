//! Monte Carlo estimation of the decoding failure rate.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decoder::{decode, CheckMatrix, Step};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::subspace::{sample_homogeneous, sample_semi_homogeneous, sample_subspace};

use super::bounds::{failure_bound, DecoderShape, FailureBound};

/// Outcome of one trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TrialOutcome {
    Success,
    Failed(Step),
    /// Decoding returned, but not the planted error (or failed its final check).
    Wrong,
}

impl TrialOutcome {
    /// The `step_failed` CSV field: empty on success.
    pub fn label(&self) -> &'static str {
        match self {
            TrialOutcome::Success => "",
            TrialOutcome::Failed(Step::SupportRecovery) => "I",
            TrialOutcome::Failed(Step::CoefficientRecovery) => "II",
            TrialOutcome::Wrong => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: u64,
    pub outcome: TrialOutcome,
    /// Seed for `ChaCha8Rng::seed_from_u64` reproducing this trial alone.
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct Simulation {
    pub shape: DecoderShape,
    pub master_seed: u64,
    pub failures_step1: u64,
    pub failures_step2: u64,
    pub failures_other: u64,
    pub successes: u64,
    pub bound: FailureBound,
    pub records: Vec<TrialRecord>,
}

impl Simulation {
    pub fn trials(&self) -> u64 {
        self.records.len() as u64
    }

    pub fn failures(&self) -> u64 {
        self.failures_step1 + self.failures_step2 + self.failures_other
    }

    pub fn rate(&self) -> f64 {
        if self.records.is_empty() {
            0.0
        } else {
            self.failures() as f64 / self.trials() as f64
        }
    }

    /// bound + 3·sqrt(bound·(1 − bound) / trials), with the bound capped at 1.
    pub fn tolerance(&self) -> f64 {
        let b = self.bound.total().min(1.0);
        b + 3.0 * (b * (1.0 - b) / self.trials().max(1) as f64).sqrt()
    }

    /// CSV with columns `trial,step_failed,seed`.
    pub fn csv(&self) -> String {
        let mut out = String::from("trial,step_failed,seed\n");
        for r in &self.records {
            out.push_str(&format!("{},{},{}\n", r.trial, r.outcome.label(), r.seed));
        }
        out
    }
}

/// Seed of trial `trial` under `master`: the first output of ChaCha8 keyed by
/// `master` on stream `trial`.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(trial);
    rng.next_u64()
}

/// One trial: uniform row supports, semi-homogeneous H with exact row
/// supports, E uniform over cols × samples matrices with entries in a
/// uniform t-dimensional support, then decode H·E.
pub fn run_trial(ctx: &FieldCtx, shape: &DecoderShape, seed: u64) -> Result<TrialOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let supports = (0..shape.rows).map(|_| sample_subspace(ctx, shape.w, &mut rng)).collect::<Result<Vec<_>>>()?;
    let h = sample_semi_homogeneous(shape.rows, shape.cols, &supports, &mut rng)?;
    let support = sample_subspace(ctx, shape.t, &mut rng)?;
    let e = sample_homogeneous(shape.cols, shape.samples, &support, &mut rng, false)?;
    let s = h.mat_mul(&e)?;
    let check = CheckMatrix::new(h, shape.w)?;
    Ok(match decode(&check, &s, shape.t) {
        Ok(d) if d.error == e => TrialOutcome::Success,
        Ok(_) => TrialOutcome::Wrong,
        Err(Error::Decode(f)) => match f.step() {
            Some(step) => TrialOutcome::Failed(step),
            None => TrialOutcome::Wrong,
        },
        Err(other) => return Err(other),
    })
}

/// Runs `trials` independent trials. Results depend only on the arguments,
/// not on thread scheduling.
pub fn simulate_failure(shape: &DecoderShape, trials: u64, master_seed: u64) -> Result<Simulation> {
    let bound = failure_bound(shape)?;
    let ctx = FieldCtx::new(shape.q, shape.m, None)?;
    let one = |trial: u64| -> Result<TrialRecord> {
        let seed = trial_seed(master_seed, trial);
        Ok(TrialRecord { trial, outcome: run_trial(&ctx, shape, seed)?, seed })
    };
    #[cfg(feature = "parallel")]
    let records: Vec<TrialRecord> = {
        use rayon::prelude::*;
        (0..trials).into_par_iter().map(one).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let records: Vec<TrialRecord> = (0..trials).map(one).collect::<Result<_>>()?;

    let count = |o: TrialOutcome| records.iter().filter(|r| r.outcome == o).count() as u64;
    Ok(Simulation {
        shape: *shape,
        master_seed,
        failures_step1: count(TrialOutcome::Failed(Step::SupportRecovery)),
        failures_step2: count(TrialOutcome::Failed(Step::CoefficientRecovery)),
        failures_other: count(TrialOutcome::Wrong),
        successes: count(TrialOutcome::Success),
        bound,
        records,
    })
}
