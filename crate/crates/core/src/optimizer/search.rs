use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::grid::Lattice;
use super::ridge;
use super::space::{normalize_simplex, Block, SearchSpace};
use super::{Optimum, OptimizerError};
use crate::model::OptimizerConfig;

/// Lattice points scanned per parallel task; fixed so results never depend
/// on the thread count.
const CHUNK: u64 = 4096;

/// Poll rounds per pattern search. Converging runs need a few hundred; the
/// cap only bounds runs that creep along a ridge by tiny gains.
const MAX_POLLS: u64 = 5000;

/// What the search maximizes: either an opaque value or the minimum of a few
/// terms, which additionally enables ridge directions. Constraint slacks
/// follow the terms in the same buffer; a negative slack marks the point
/// infeasible.
pub(super) enum Objective<'a> {
    Value(&'a (dyn Fn(&[f64]) -> Option<f64> + Sync)),
    MinOf {
        terms: &'a (dyn Fn(&[f64], &mut [f64]) -> bool + Sync),
        count: usize,
        constraints: usize,
    },
}

pub(super) const MAX_TERMS: usize = 8;

struct Problem<'a> {
    objective: Objective<'a>,
    space: &'a SearchSpace,
    cfg: &'a OptimizerConfig,
}

impl Problem<'_> {
    fn eval(&self, x: &[f64]) -> f64 {
        if !self.space.admits(x) {
            return f64::NEG_INFINITY;
        }
        let v = match &self.objective {
            Objective::Value(f) => f(x),
            Objective::MinOf { terms, count, constraints } => {
                let mut buf = [0.0; MAX_TERMS];
                let all = &mut buf[..count + constraints];
                if !terms(x, all) || all[*count..].iter().any(|s| *s < 0.0) {
                    None
                } else {
                    Some(all[..*count].iter().copied().fold(f64::INFINITY, f64::min))
                }
            }
        };
        match v {
            Some(v) if !v.is_nan() => v,
            _ => f64::NEG_INFINITY,
        }
    }
}

/// Inserts `(value, index)` into a list kept sorted best first, ties by index.
fn push_top(top: &mut Vec<(f64, u64)>, k: usize, value: f64, index: u64) {
    if value == f64::NEG_INFINITY {
        return;
    }
    let better = |a: &(f64, u64), b: &(f64, u64)| a.0 > b.0 || (a.0 == b.0 && a.1 < b.1);
    if top.len() == k && !better(&(value, index), top.last().unwrap()) {
        return;
    }
    let pos = top.iter().position(|e| better(&(value, index), e)).unwrap_or(top.len());
    top.insert(pos, (value, index));
    top.truncate(k);
}

pub(super) fn run(
    objective: Objective<'_>,
    space: &SearchSpace,
    cfg: &OptimizerConfig,
    seeds: &[Vec<f64>],
) -> Result<Optimum, OptimizerError> {
    cfg.validate()?;
    space.validate()?;
    let problem = Problem { objective, space, cfg };
    let lattice = Lattice::new(space, cfg.grid_points_per_dim)?;
    let k = cfg.multistarts;

    let chunks = lattice.len().div_ceil(CHUNK);
    let partial: Vec<Vec<(f64, u64)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut top = Vec::with_capacity(k + 1);
            let mut x = Vec::new();
            for i in c * CHUNK..((c + 1) * CHUNK).min(lattice.len()) {
                lattice.point(i, &mut x);
                push_top(&mut top, k, problem.eval(&x), i);
            }
            top
        })
        .collect();
    let mut top = Vec::with_capacity(k + 1);
    for (v, i) in partial.into_iter().flatten() {
        push_top(&mut top, k, v, i);
    }
    let mut evaluations = lattice.len();

    let mut starts: Vec<(Vec<f64>, f64)> = top
        .iter()
        .map(|&(v, i)| {
            let mut x = Vec::new();
            lattice.point(i, &mut x);
            (x, v)
        })
        .collect();
    for seed in seeds {
        if seed.len() != space.dim() {
            return Err(OptimizerError::InvalidSpace(format!(
                "seed has {} coordinates, space has {}",
                seed.len(),
                space.dim()
            )));
        }
        let mut x = seed.clone();
        space.project(&mut x);
        let v = problem.eval(&x);
        evaluations += 1;
        if v > f64::NEG_INFINITY {
            starts.push((x, v));
        }
    }
    if starts.is_empty() {
        return Err(OptimizerError::NoFeasiblePoint);
    }

    let step0 = 1.0 / (cfg.grid_points_per_dim - 1) as f64;
    let refined: Vec<(Vec<f64>, f64, u64)> = starts
        .into_par_iter()
        .enumerate()
        .map(|(i, (x, v))| {
            let mut rng = stream(cfg.seed, i as u64);
            pattern_search(&problem, x, v, step0, &mut rng)
        })
        .collect();

    let mut best: Option<(Vec<f64>, f64)> = None;
    for (x, v, n) in refined {
        evaluations += n;
        if best.as_ref().map_or(true, |b| v > b.1) {
            best = Some((x, v));
        }
    }
    let (mut x, mut v) = best.expect("at least one start");
    for round in 0..cfg.refine_rounds {
        let mut rng = stream(cfg.seed, u64::MAX - round as u64);
        let (y, w, n) = pattern_search(&problem, x.clone(), v, step0 * 0.5, &mut rng);
        evaluations += n;
        if w > v {
            x = y;
            v = w;
        }
    }
    Ok(Optimum { point: x, value: v, evaluations })
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Compass/pattern search with randomized extra directions.
///
/// Polls pairwise transfers inside every simplex, ± moves on every box
/// coordinate and a few random directions, then moves to the best poll point.
/// A gain above `refine_tol_rate` doubles the step (up to its initial value)
/// and is followed by doubling pattern steps; a smaller gain (or none) halves
/// the step.
fn pattern_search(
    p: &Problem<'_>,
    mut x: Vec<f64>,
    mut fx: f64,
    step0: f64,
    rng: &mut ChaCha8Rng,
) -> (Vec<f64>, f64, u64) {
    let tol = p.cfg.refine_tol_rate;
    let space = p.space;
    let offsets = space.offsets();
    let n_random = space.free_dims().max(2);
    let scale = ridge::scales(space);
    let upper = ridge::upper_limits(space);
    let mut evals = 0u64;
    let mut step = step0;
    let mut y = vec![0.0; x.len()];
    let mut best_y = x.clone();

    let mut iters = 0u64;
    while step >= p.cfg.refine_tol_step && iters < MAX_POLLS {
        iters += 1;
        let mut best_f = fx;
        let mut found = false;
        let consider = |y: &[f64], best_y: &mut Vec<f64>, best_f: &mut f64, evals: &mut u64| {
            *evals += 1;
            let f = p.eval(y);
            if f > *best_f {
                *best_f = f;
                best_y.copy_from_slice(y);
                true
            } else {
                false
            }
        };

        for (b, &off) in space.blocks().iter().zip(&offsets) {
            match b {
                Block::Simplex { dim, mass } if *mass > 0.0 => {
                    for i in 0..*dim {
                        for j in 0..*dim {
                            if i == j || x[off + j] <= 0.0 {
                                continue;
                            }
                            let amt = (step * mass).min(x[off + j]);
                            y.copy_from_slice(&x);
                            y[off + j] -= amt;
                            y[off + i] += amt;
                            normalize_simplex(&mut y[off..off + dim], *mass);
                            found |= consider(&y, &mut best_y, &mut best_f, &mut evals);
                        }
                    }
                }
                Block::Simplex { .. } => {}
                Block::Box { lo, hi } => {
                    for c in 0..lo.len() {
                        let w = hi[c] - lo[c];
                        if w <= 0.0 {
                            continue;
                        }
                        for sign in [1.0, -1.0] {
                            let v = (x[off + c] + sign * step * w).clamp(lo[c], hi[c]);
                            if v == x[off + c] {
                                continue;
                            }
                            y.copy_from_slice(&x);
                            y[off + c] = v;
                            found |= consider(&y, &mut best_y, &mut best_f, &mut evals);
                        }
                    }
                }
            }
        }

        for _ in 0..n_random {
            y.copy_from_slice(&x);
            for (b, &off) in space.blocks().iter().zip(&offsets) {
                match b {
                    Block::Simplex { dim, mass } if *mass > 0.0 && *dim > 1 => {
                        let mut u: Vec<f64> = (0..*dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
                        let mean = u.iter().sum::<f64>() / *dim as f64;
                        u.iter_mut().for_each(|v| *v -= mean);
                        let scale = u.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                        if scale > 0.0 {
                            for (k, v) in u.iter().enumerate() {
                                y[off + k] += step * mass * v / scale;
                            }
                        }
                    }
                    Block::Simplex { .. } => {}
                    Block::Box { lo, hi } => {
                        for c in 0..lo.len() {
                            y[off + c] += step * (hi[c] - lo[c]) * rng.gen_range(-1.0..1.0);
                        }
                    }
                }
            }
            space.project(&mut y);
            found |= consider(&y, &mut best_y, &mut best_f, &mut evals);
        }

        if let Objective::MinOf { terms, count, constraints } = &p.objective {
            for d in ridge::displacements(space, &scale, &upper, &x, step, *count, *constraints, *terms, &mut evals) {
                for (j, yj) in y.iter_mut().enumerate() {
                    *yj = x[j] + d[j] * scale[j];
                }
                space.project(&mut y);
                found |= consider(&y, &mut best_y, &mut best_f, &mut evals);
            }
        }

        if !found {
            step *= 0.5;
            continue;
        }
        if best_f - fx <= tol {
            // Accept tiny gains but treat them as a failed poll.
            x.copy_from_slice(&best_y);
            fx = best_f;
            step *= 0.5;
            continue;
        }

        step = (2.0 * step).min(step0);

        // Pattern extension along the successful direction.
        let mut dir: Vec<f64> = best_y.iter().zip(&x).map(|(a, b)| a - b).collect();
        x.copy_from_slice(&best_y);
        fx = best_f;
        loop {
            for (yi, (xi, di)) in y.iter_mut().zip(x.iter().zip(&dir)) {
                *yi = xi + 2.0 * di;
            }
            space.project(&mut y);
            evals += 1;
            let f = p.eval(&y);
            if f > fx + tol {
                for (di, (yi, xi)) in dir.iter_mut().zip(y.iter().zip(&x)) {
                    *di = yi - xi;
                }
                x.copy_from_slice(&y);
                fx = f;
            } else {
                break;
            }
        }
    }
    (x, fx, evals)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_list_keeps_best_with_index_ties() {
        let mut top = Vec::new();
        for (i, v) in [1.0, 3.0, 2.0, 3.0, f64::NEG_INFINITY, 0.5].into_iter().enumerate() {
            push_top(&mut top, 3, v, i as u64);
        }
        assert_eq!(top, vec![(3.0, 1), (3.0, 3), (2.0, 2)]);
    }
}
