//! Deterministic derivative-free maximization over products of simplices and
//! boxes.
//!
//! [`maximize`] scans a coarse lattice, keeps the best `multistarts` points and
//! refines each with a pattern search whose polls are projected back onto the
//! blocks. Objectives return `None` for infeasible points. Given the same
//! configuration the result is bit-identical regardless of the thread count.

mod grid;
mod ridge;
mod schemes;
mod search;
mod space;

use thiserror::Error;

use crate::model::{ModelError, OptimizerConfig};
use crate::schemes::SchemeError;

pub use grid::{grid_scan, GRID_BUDGET};
pub use schemes::{
    optimize_bme_back, optimize_bme_dpc, optimize_bme_succ, optimize_ddf, optimize_ddf_fixed_time, optimize_dpc,
    optimize_scheme, optimize_schemes, optimize_ssrd,
};
pub use space::{Block, SearchSpace};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptimizerError {
    #[error("no feasible point found")]
    NoFeasiblePoint,
    #[error("grid exceeds the evaluation budget of {limit} points")]
    Budget { limit: u64 },
    #[error("invalid search space: {0}")]
    InvalidSpace(String),
    #[error(transparent)]
    Config(#[from] ModelError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// Best point found and its value.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub point: Vec<f64>,
    pub value: f64,
    /// Objective evaluations spent, grid included.
    pub evaluations: u64,
}

/// Maximizes `objective` over `space`.
pub fn maximize<F>(objective: F, space: &SearchSpace, cfg: &OptimizerConfig) -> Result<Optimum, OptimizerError>
where
    F: Fn(&[f64]) -> Option<f64> + Sync,
{
    search::run(search::Objective::Value(&objective), space, cfg, &[])
}

/// Like [`maximize`], with extra starting points refined alongside the best
/// grid points. Seeds are projected onto the space first.
pub fn maximize_seeded<F>(
    objective: F,
    space: &SearchSpace,
    cfg: &OptimizerConfig,
    seeds: &[Vec<f64>],
) -> Result<Optimum, OptimizerError>
where
    F: Fn(&[f64]) -> Option<f64> + Sync,
{
    search::run(search::Objective::Value(&objective), space, cfg, seeds)
}

/// Maximizes `min_i c_i(x)` where `terms(x, c)` fills `c` (length `n_terms`,
/// at most 8) and returns `false` for infeasible points.
///
/// Knowing the individual terms lets the search step along ridges where
/// several of them are equal, which plain polling resolves poorly.
pub fn maximize_min_seeded<F>(
    terms: F,
    n_terms: usize,
    space: &SearchSpace,
    cfg: &OptimizerConfig,
    seeds: &[Vec<f64>],
) -> Result<Optimum, OptimizerError>
where
    F: Fn(&[f64], &mut [f64]) -> bool + Sync,
{
    maximize_min_constrained(terms, n_terms, 0, space, cfg, seeds)
}

/// [`maximize_min_seeded`] with inequality constraints: `terms` writes the
/// `n_terms` values followed by `n_constraints` slacks, and the point is
/// feasible only if every slack is non-negative. Knowing the slacks lets the
/// search step along constraint boundaries instead of only bouncing off them.
pub fn maximize_min_constrained<F>(
    terms: F,
    n_terms: usize,
    n_constraints: usize,
    space: &SearchSpace,
    cfg: &OptimizerConfig,
    seeds: &[Vec<f64>],
) -> Result<Optimum, OptimizerError>
where
    F: Fn(&[f64], &mut [f64]) -> bool + Sync,
{
    if n_terms == 0 || n_terms + n_constraints > search::MAX_TERMS {
        return Err(OptimizerError::InvalidSpace(format!(
            "{n_terms} terms and {n_constraints} constraints; at most {} values supported",
            search::MAX_TERMS
        )));
    }
    let objective = search::Objective::MinOf { terms: &terms, count: n_terms, constraints: n_constraints };
    search::run(objective, space, cfg, seeds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> OptimizerConfig {
        OptimizerConfig::for_schemes()
    }

    #[test]
    fn smooth_peak_in_box() {
        let s = SearchSpace::new().interval(0.0, 1.0);
        let o = maximize(|x| Some(-(x[0] - 0.3).powi(2)), &s, &cfg()).unwrap();
        assert!((o.point[0] - 0.3).abs() < 1e-6, "{:?}", o.point);
        assert!(o.value.abs() < 1e-9);
    }

    #[test]
    fn symmetric_minimax_on_simplex() {
        let s = SearchSpace::new().simplex(2, 1.0);
        let o = maximize(|x| Some(x[0].min(x[1])), &s, &cfg()).unwrap();
        assert!((o.value - 0.5).abs() < 1e-9);
        assert!((o.point[0] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn infeasible_everywhere() {
        let s = SearchSpace::new().interval(0.0, 1.0);
        assert_eq!(maximize(|_| None, &s, &cfg()), Err(OptimizerError::NoFeasiblePoint));
        let s = s.with_predicate(|_| false);
        assert_eq!(maximize(|x| Some(x[0]), &s, &cfg()), Err(OptimizerError::NoFeasiblePoint));
    }

    #[test]
    fn predicate_restricts_search() {
        let s = SearchSpace::new().interval(0.0, 1.0).with_predicate(|x| x[0] <= 0.4);
        let o = maximize(|x| Some(x[0]), &s, &cfg()).unwrap();
        assert!(o.point[0] <= 0.4 && o.point[0] > 0.4 - 1e-5);
    }

    #[test]
    fn kinked_minimax_in_several_blocks() {
        let s = SearchSpace::new().simplex(3, 1.0).simplex(2, 2.0);
        let f = |x: &[f64]| Some((x[0] + x[3]).min(2.0 * x[1]).min(x[2] + 0.5 * x[4]));
        let o = maximize(f, &s, &cfg()).unwrap();
        let grid_best = grid_scan(f, &s, 9).unwrap().into_iter().filter_map(|(_, v)| v).fold(f64::MIN, f64::max);
        assert!(o.value >= grid_best);
        assert!(s.contains(&o.point, 1e-12));
    }

    #[test]
    fn deterministic_for_equal_seed() {
        let s = SearchSpace::new().simplex(4, 1.0).interval(-1.0, 1.0);
        let f = |x: &[f64]| Some((x[0] * x[1]).sqrt().min(x[2] + x[4]) - (x[3] - 0.1).abs());
        let a = maximize(f, &s, &cfg().with_seed(5)).unwrap();
        let b = maximize(f, &s, &cfg().with_seed(5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn seeds_are_used() {
        let s = SearchSpace::new().interval(0.0, 1.0);
        let spike = |x: &[f64]| Some(if (x[0] - 0.123_456).abs() < 1e-9 { 1.0 } else { 0.0 });
        let o = maximize_seeded(spike, &s, &cfg(), &[vec![0.123_456]]).unwrap();
        assert_eq!(o.value, 1.0);
        assert!(maximize_seeded(spike, &s, &cfg(), &[vec![0.1, 0.2]]).is_err());
    }
}
