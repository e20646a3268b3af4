//! Ascent directions for objectives of the form `min_i c_i(x)`.
//!
//! At a kink several terms are nearly equal and coordinate polls all fail,
//! even though moving along the ridge still gains. The minimum-norm point of
//! the convex hull of the near-active gradients is the steepest ascent
//! direction of their minimum; offering it to the poll lets the search follow
//! the ridge.

use super::space::{Block, SearchSpace};

use super::search::MAX_TERMS;
const FD_STEP: f64 = 1e-7;
const BANDS: [f64; 6] = [0.0, 1e-9, 1e-7, 1e-5, 1e-3, 1e-1];

/// Largest search dimension that gets ridge directions. Everything here
/// lives on the stack because it runs once per poll round.
const MAX_DIM: usize = 16;
/// Unknowns of the largest dual system: one weight per row plus a multiplier.
const SYS: usize = MAX_TERMS + 1;

type Grad = [[f64; MAX_DIM]; MAX_TERMS];
type Gram = [[f64; MAX_TERMS]; MAX_TERMS];
type System = [[f64; SYS + 1]; SYS];

/// Per-coordinate scale: simplex mass or box width, 0 for frozen coordinates.
pub(crate) fn scales(space: &SearchSpace) -> Vec<f64> {
    let mut out = Vec::with_capacity(space.dim());
    for b in space.blocks() {
        match b {
            Block::Simplex { dim, mass } => out.extend(std::iter::repeat(*mass).take(*dim)),
            Block::Box { lo, hi } => out.extend(lo.iter().zip(hi).map(|(l, h)| h - l)),
        }
    }
    out
}

pub(crate) fn upper_limits(space: &SearchSpace) -> Vec<f64> {
    let mut out = Vec::with_capacity(space.dim());
    for b in space.blocks() {
        match b {
            Block::Simplex { dim, mass } => out.extend(std::iter::repeat(*mass).take(*dim)),
            Block::Box { hi, .. } => out.extend(hi.iter().copied()),
        }
    }
    out
}

/// Candidate displacements in scaled coordinates (`Δx_j = d_j·scale_j`) of
/// roughly `step` length. Empty if a finite-difference point is infeasible.
#[allow(clippy::too_many_arguments)]
pub(crate) fn displacements(
    space: &SearchSpace,
    scale: &[f64],
    upper: &[f64],
    x: &[f64],
    step: f64,
    n_terms: usize,
    n_constraints: usize,
    terms: &(dyn Fn(&[f64], &mut [f64]) -> bool + Sync),
    evals: &mut u64,
) -> Vec<Vec<f64>> {
    let n = x.len();
    let k = n_terms;
    let total = n_terms + n_constraints;
    if n > MAX_DIM {
        return Vec::new();
    }
    let mut c0 = [0.0; MAX_TERMS];
    *evals += 1;
    if !terms(x, &mut c0[..total]) {
        return Vec::new();
    }
    // grad[i][j]: derivative of term i along scaled coordinate j.
    let mut grad: Grad = [[0.0; MAX_DIM]; MAX_TERMS];
    let mut y = [0.0; MAX_DIM];
    y[..n].copy_from_slice(x);
    let mut c1 = [0.0; MAX_TERMS];
    for j in 0..n {
        if scale[j] <= 0.0 {
            continue;
        }
        let h = FD_STEP * scale[j];
        let sign = if x[j] + h <= upper[j] { 1.0 } else { -1.0 };
        y[j] = x[j] + sign * h;
        *evals += 1;
        let ok = terms(&y[..n], &mut c1[..total]);
        y[j] = x[j];
        if !ok {
            return Vec::new();
        }
        for i in 0..total {
            grad[i][j] = sign * (c1[i] - c0[i]) / FD_STEP;
        }
    }
    for g in grad[..total].iter_mut() {
        project_gradient(space, x, step, &mut g[..n]);
    }
    let gram = gram(&grad, total, n);

    let fmin = c0[..k].iter().copied().fold(f64::INFINITY, f64::min);
    let mut out: Vec<Vec<f64>> = Vec::new();
    let mut seen = [0u32; BANDS.len()];
    let mut n_seen = 0;
    for band in BANDS {
        let tol = band * fmin.abs();
        let mask = (0..k).filter(|&i| c0[i] <= fmin + tol).fold(0u32, |m, i| m | (1 << i));
        if seen[..n_seen].contains(&mask) {
            continue;
        }
        seen[n_seen] = mask;
        n_seen += 1;
        if let Some(d) = min_norm_combination(&grad, &gram, n, &members(mask, k)) {
            let d = &d[..n];
            let m = d.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            if m > 1e-12 {
                out.push(d.iter().map(|v| step * v / m).collect());
            }
        }
    }

    // Proximal steps: maximize the linearized minimum minus a quadratic
    // penalty; unlike the pure ridge direction these also close the gap
    // between terms that are not yet equal.
    let gnorm = (0..k).map(|i| gram[i][i].sqrt()).fold(0.0f64, f64::max);
    if gnorm > 0.0 {
        let reach = 4.0 * step * gnorm * (n as f64).sqrt();
        let cand = members((0..k).filter(|&i| c0[i] - fmin <= reach).fold(0u32, |m, i| m | (1 << i)), k);
        let cons = members((k..total).filter(|&j| c0[j] <= reach).fold(0u32, |m, j| m | (1 << j)), total);
        for mult in [0.25, 1.0, 4.0] {
            let mu = mult * step / gnorm;
            if let Some(d) = proximal_step(&grad, &gram, n, &c0[..total], &cand, &cons, mu) {
                if d.iter().any(|v| *v != 0.0) {
                    out.push(d);
                }
            }
        }
    }
    out
}

fn gram(grad: &Grad, rows: usize, n: usize) -> Gram {
    let mut g = [[0.0; MAX_TERMS]; MAX_TERMS];
    for i in 0..rows {
        for j in 0..rows {
            g[i][j] = dot(&grad[i][..n], &grad[j][..n]);
        }
    }
    g
}

/// Indices of the set bits of `mask` below `limit`, ascending.
fn members(mask: u32, limit: usize) -> Vec<usize> {
    (0..limit).filter(|i| mask & (1 << i) != 0).collect()
}

/// `Σ_r weights[r]·grad[rows[r]]` over the first `n` coordinates.
fn combine(grad: &Grad, n: usize, rows: &[usize], weights: &[f64]) -> [f64; MAX_DIM] {
    let mut d = [0.0; MAX_DIM];
    for (l, &i) in weights.iter().zip(rows) {
        for j in 0..n {
            d[j] += l * grad[i][j];
        }
    }
    d
}

/// Maximizer `d` of `min_{i∈terms} (c_i + g_i·d) − ‖d‖²/(2μ)` subject to
/// `c_j + g_j·d ≥ 0` for `j ∈ cons`, found through its dual: weights `λ` on
/// the terms (summing to one) and `ν ≥ 0` on the constraints minimize
/// `(μ/2)‖w‖² + Σλ_i c_i + Σν_j c_j` with `w = Σλ_i g_i + Σν_j g_j`, and
/// `d = μw`. Faces of the dual domain are enumerated.
fn proximal_step(
    grad: &Grad,
    gram: &Gram,
    n: usize,
    c: &[f64],
    terms: &[usize],
    cons: &[usize],
    mu: f64,
) -> Option<Vec<f64>> {
    let (mt, mc) = (terms.len(), cons.len());
    if mt == 0 || mt + mc > MAX_TERMS {
        return None;
    }
    let mut best: Option<(f64, [f64; MAX_DIM])> = None;
    let mut rows = [0usize; MAX_TERMS];
    for tmask in 1u32..(1 << mt) {
        for cmask in 0u32..(1 << mc) {
            let mut m = 0;
            for (b, &i) in terms.iter().enumerate() {
                if tmask & (1 << b) != 0 {
                    rows[m] = i;
                    m += 1;
                }
            }
            let n_terms = m;
            for (b, &j) in cons.iter().enumerate() {
                if cmask & (1 << b) != 0 {
                    rows[m] = j;
                    m += 1;
                }
            }
            let rows = &rows[..m];
            // Unknowns [λ; ν; η]; stationarity μ(G[λ; ν]) − η·[1; 0] = −c.
            let size = m + 1;
            let mut a: System = [[0.0; SYS + 1]; SYS];
            for (r, &i) in rows.iter().enumerate() {
                for (k, &j) in rows.iter().enumerate() {
                    a[r][k] = mu * gram[i][j];
                }
                if r < n_terms {
                    a[r][m] = -1.0;
                }
                a[r][size] = -c[i];
            }
            for k in 0..n_terms {
                a[m][k] = 1.0;
            }
            a[m][size] = 1.0;
            let Some(sol) = solve(&mut a, size) else { continue };
            if sol[..m].iter().any(|l| *l < -1e-12) {
                continue;
            }
            let w = combine(grad, n, rows, &sol[..m]);
            let obj = 0.5 * mu * dot(&w[..n], &w[..n]) + sol[..m].iter().zip(rows).map(|(l, &i)| l * c[i]).sum::<f64>();
            if best.as_ref().map_or(true, |(b, _)| obj < *b) {
                best = Some((obj, w));
            }
        }
    }
    best.map(|(_, w)| w[..n].iter().map(|v| mu * v).collect())
}

/// Projects a gradient onto the feasible directions at `x`: zero sum inside
/// each simplex, with coordinates near zero that would go negative held
/// fixed; box coordinates near a bound that would leave it are zeroed.
/// "Near" means within `eps` of the block's scale, so a step of that length
/// is not clipped by the projection afterwards.
fn project_gradient(space: &SearchSpace, x: &[f64], eps: f64, g: &mut [f64]) {
    let mut off = 0;
    for b in space.blocks() {
        let d = b.dim();
        let gs = &mut g[off..off + d];
        let xs = &x[off..off + d];
        match b {
            Block::Simplex { mass, .. } => {
                if *mass <= 0.0 {
                    gs.iter_mut().for_each(|v| *v = 0.0);
                } else {
                    let mut at_zero = [false; MAX_DIM];
                    let mut free = [false; MAX_DIM];
                    for i in 0..d {
                        at_zero[i] = xs[i] <= eps.max(1e-14) * mass;
                        free[i] = !at_zero[i];
                    }
                    let mut mean = 0.0;
                    for _ in 0..=d {
                        let cnt = free[..d].iter().filter(|f| **f).count();
                        if cnt == 0 {
                            break;
                        }
                        mean = gs.iter().zip(&free[..d]).filter(|(_, f)| **f).map(|(v, _)| v).sum::<f64>() / cnt as f64;
                        let mut changed = false;
                        for i in 0..d {
                            if at_zero[i] && !free[i] && gs[i] > mean {
                                free[i] = true;
                                changed = true;
                            }
                        }
                        if !changed {
                            break;
                        }
                    }
                    for i in 0..d {
                        gs[i] = if free[i] { gs[i] - mean } else { 0.0 };
                    }
                }
            }
            Block::Box { lo, hi } => {
                for i in 0..d {
                    let near = eps * (hi[i] - lo[i]);
                    if (xs[i] <= lo[i] + near && gs[i] < 0.0) || (xs[i] >= hi[i] - near && gs[i] > 0.0) || hi[i] <= lo[i] {
                        gs[i] = 0.0;
                    }
                }
            }
        }
        off += d;
    }
}

/// Minimum-norm point of the convex hull of `grad[i]`, `i ∈ set`.
///
/// Enumerates faces: on each face the affine minimizer solves a small Gram
/// system; the hull minimizer is the smallest one with non-negative weights.
fn min_norm_combination(grad: &Grad, gram: &Gram, n: usize, set: &[usize]) -> Option<[f64; MAX_DIM]> {
    let m = set.len();
    if m == 0 {
        return None;
    }
    let mut best: Option<(f64, [f64; MAX_DIM])> = None;
    let mut idx = [0usize; MAX_TERMS];
    for mask in 1u32..(1 << m) {
        let mut len = 0;
        for (b, &i) in set.iter().enumerate() {
            if mask & (1 << b) != 0 {
                idx[len] = i;
                len += 1;
            }
        }
        let idx = &idx[..len];
        let Some(lambda) = affine_min_norm(gram, idx) else { continue };
        let lambda = &lambda[..len];
        if lambda.iter().any(|l| *l < -1e-12) {
            continue;
        }
        let d = combine(grad, n, idx, lambda);
        let norm = d[..n].iter().map(|v| v * v).sum::<f64>();
        if best.as_ref().map_or(true, |(b, _)| norm < *b) {
            best = Some((norm, d));
        }
    }
    best.map(|(_, d)| d)
}

/// Weights `λ` with `Σλ = 1` minimizing `‖Σ λ_i g_i‖`, via `G λ = μ 1`.
fn affine_min_norm(gram: &Gram, idx: &[usize]) -> Option<[f64; SYS]> {
    let m = idx.len();
    if m == 1 {
        let mut one = [0.0; SYS];
        one[0] = 1.0;
        return Some(one);
    }
    // Bordered system [[G, -1], [1ᵀ, 0]] [λ; μ] = [0; 1].
    let size = m + 1;
    let mut a: System = [[0.0; SYS + 1]; SYS];
    let scale = idx.iter().map(|&i| gram[i][i]).fold(0.0f64, f64::max).max(1e-300);
    for r in 0..m {
        for c in 0..m {
            a[r][c] = gram[idx[r]][idx[c]] / scale;
        }
        a[r][m] = -1.0;
        a[r][size] = 0.0;
    }
    for c in 0..m {
        a[m][c] = 1.0;
    }
    a[m][size] = 1.0;
    solve(&mut a, size)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gaussian elimination with partial pivoting on the leading `n × (n + 1)`
/// block of an augmented matrix; the right-hand side sits in column `n`.
fn solve(a: &mut System, n: usize) -> Option<[f64; SYS]> {
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-13 {
            return None;
        }
        a.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                if f != 0.0 {
                    for c in col..=n {
                        a[r][c] -= f * a[col][c];
                    }
                }
            }
        }
    }
    let mut out = [0.0; SYS];
    for i in 0..n {
        out[i] = a[i][n] / a[i][i];
    }
    Some(out)
}
