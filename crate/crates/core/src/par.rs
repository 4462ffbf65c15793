//! Trial-parallel execution.
//!
//! With the `parallel` feature (default) independent trials and sweeps run
//! on the rayon pool; without it, or with [`ExecMode::Sequential`], they run
//! in order on the calling thread. Results always come back in index order,
//! so output does not depend on scheduling.

use crate::exactalg::{FieldCtx, PrimeField, DEFAULT_TRIALS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    #[default]
    Parallel,
    Sequential,
}

impl ExecMode {
    /// Whether work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == ExecMode::Parallel
    }
}

/// `f(0), …, f(n-1)` in order.
pub fn map_indexed<T, F>(n: usize, mode: ExecMode, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = mode;
    (0..n).map(f).collect()
}

pub fn map_slice<S, T, F>(items: &[S], mode: ExecMode, f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    map_indexed(items.len(), mode, |k| f(&items[k]))
}

/// Field, seed, trial count and execution mode for randomized answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialConfig {
    pub field: PrimeField,
    pub seed: u64,
    pub trials: usize,
    pub mode: ExecMode,
}

impl TrialConfig {
    pub fn new(field: PrimeField, seed: u64, trials: usize) -> Self {
        Self {
            field,
            seed,
            trials: trials.max(1),
            mode: ExecMode::default(),
        }
    }

    pub fn with_mode(mut self, mode: ExecMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn ctx(&self, trial: usize) -> FieldCtx {
        FieldCtx::for_trial(self.field, self.seed, trial as u64)
    }

    /// Run `f` once per trial, each with its own context.
    pub fn run<T, F>(&self, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&mut FieldCtx) -> T + Sync + Send,
    {
        map_indexed(self.trials, self.mode, |t| f(&mut self.ctx(t)))
    }
}

impl Default for TrialConfig {
    fn default() -> Self {
        Self::new(PrimeField::default(), 0, DEFAULT_TRIALS)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let a = map_indexed(50, ExecMode::Parallel, |k| k * k);
        let b = map_indexed(50, ExecMode::Sequential, |k| k * k);
        assert_eq!(a, b);
        let cfg = TrialConfig::default();
        let p = cfg.run(|ctx| ctx.random_elem());
        let s = cfg.with_mode(ExecMode::Sequential).run(|ctx| ctx.random_elem());
        assert_eq!(p, s);
        assert_eq!(p.len(), 7);
    }
}
