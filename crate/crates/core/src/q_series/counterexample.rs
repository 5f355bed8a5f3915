//! Staged construction of a stream whose q-series has radius at most `R*`.
//!
//! Stage `m` extends the current prefix `P` by a block `2, 3, ..., 3`. The
//! block length is chosen so that the series of `[[P, 2, 3, 3, ...]]` has a
//! coefficient `beta_n` with `|beta_n|^{1/n} >= 1/(R* + 1/m)`; later stages
//! keep those coefficients fixed, so the limit stream inherits every stage
//! inequality.

use serde::Serialize;

use super::series::{ln_abs, q_real_series};
use crate::cf_core::{weight, CFStream};
use crate::error::{Error, Result};

/// `R* = (3 - sqrt 5)/2`.
pub const R_STAR: f64 = 0.381_966_011_250_105_1;

/// Default per-stage coefficient budget.
pub const DEFAULT_STAGE_BUDGET: usize = 5000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageRecord {
    pub stage: usize,
    /// Block boundary `n_m`; also the coefficient index that certifies the stage.
    pub n: usize,
    /// `1/(R* + 1/m)`.
    pub threshold: f64,
    /// `|beta_{n_m}|^{1/n_m}` for the stage's candidate stream.
    pub achieved: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthSchedule {
    pub stages: Vec<StageRecord>,
    /// Digits fixed by the construction; the stream continues with `2, 3, 3, ...`.
    pub prefix: Vec<u32>,
}

impl GrowthSchedule {
    /// The limiting stream `[[prefix, 2, 3, 3, ...]]`.
    pub fn stream(&self) -> CFStream {
        let mut head = self.prefix.clone();
        head.push(2);
        CFStream::periodic(head, vec![3]).expect("digits are 2 and 3")
    }

    /// Re-check every stage inequality on the final stream's own coefficients.
    pub fn verify(&self) -> Result<Vec<bool>> {
        let top = self.stages.iter().map(|s| s.n).max().unwrap_or(0);
        let series = q_real_series(&self.stream(), top + 1)?;
        Ok(self
            .stages
            .iter()
            .map(|s| {
                let c = series.coeff(s.n as i64).unwrap();
                root_abs(&c, s.n) >= s.threshold
            })
            .collect())
    }
}

fn root_abs(c: &num_bigint::BigInt, n: usize) -> f64 {
    use num_traits::Zero;
    if c.is_zero() {
        0.0
    } else {
        (ln_abs(c) / n as f64).exp()
    }
}

/// Run `stages` stages with at most `budget` coefficients searched per stage.
pub fn counterexample_stream(stages: usize, budget: usize) -> Result<(CFStream, GrowthSchedule)> {
    let mut prefix: Vec<u32> = Vec::new();
    let mut records = Vec::with_capacity(stages);
    let mut n_prev = 0usize;
    for m in 1..=stages {
        let threshold = 1.0 / (R_STAR + 1.0 / m as f64);
        let mut head = prefix.clone();
        head.push(2);
        let candidate = CFStream::periodic(head, vec![3])?;
        let limit = n_prev + budget;
        let mut order = (n_prev + 64).min(limit + 1);
        let found = loop {
            let series = q_real_series(&candidate, order)?;
            let hit = (n_prev + 1..order).find(|&n| {
                // The next stage changes digit n+1, which leaves coefficients
                // below the weight of the first n digits untouched.
                let shared = weight(&block_prefix(&prefix, n_prev, n));
                shared > n as u64 && root_abs(&series.coeff(n as i64).unwrap(), n) >= threshold
            });
            if let Some(n) = hit {
                break Some((n, root_abs(&series.coeff(n as i64).unwrap(), n)));
            }
            if order > limit {
                break None;
            }
            order = (order * 2).min(limit + 1);
        };
        let Some((n, achieved)) = found else {
            return Err(Error::SearchBudgetExceeded { stage: m, budget });
        };
        prefix = block_prefix(&prefix, n_prev, n);
        records.push(StageRecord { stage: m, n, threshold, achieved });
        n_prev = n;
    }
    let schedule = GrowthSchedule { stages: records, prefix };
    Ok((schedule.stream(), schedule))
}

/// `prefix` followed by the block `2, 3, ..., 3` ending at position `n`.
fn block_prefix(prefix: &[u32], n_prev: usize, n: usize) -> Vec<u32> {
    let mut p = prefix.to_vec();
    p.push(2);
    p.extend(std::iter::repeat(3).take(n - n_prev - 1));
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_star_constant() {
        assert!((R_STAR - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-16);
    }

    #[test]
    fn three_stages_verify() {
        let (_, sched) = counterexample_stream(3, DEFAULT_STAGE_BUDGET).unwrap();
        assert_eq!(sched.stages.len(), 3);
        let ns: Vec<usize> = sched.stages.iter().map(|s| s.n).collect();
        assert!(ns.windows(2).all(|w| w[0] < w[1]), "{ns:?}");
        assert!(sched.verify().unwrap().iter().all(|&ok| ok));
    }

    #[test]
    fn tiny_budget_fails_cleanly() {
        let err = counterexample_stream(6, 3).unwrap_err();
        assert!(matches!(err, Error::SearchBudgetExceeded { .. }));
    }
}
