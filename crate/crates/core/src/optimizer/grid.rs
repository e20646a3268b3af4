use super::space::{normalize_simplex, Block, SearchSpace};
use super::OptimizerError;

/// Evaluation cap for exhaustive lattice scans.
pub const GRID_BUDGET: u64 = 100_000_000;

/// Lattice of one block: compositions of `n - 1` for simplices, evenly spaced
/// points for boxes. Order is deterministic, first coordinate ascending.
pub(crate) fn block_lattice(block: &Block, n: usize) -> Vec<Vec<f64>> {
    match block {
        Block::Simplex { dim, mass } => {
            let mut out = Vec::new();
            if *mass <= 0.0 || *dim == 1 {
                let mut p = vec![0.0; *dim];
                p[dim - 1] = *mass;
                out.push(p);
                return out;
            }
            let steps = n - 1;
            let mut parts = vec![0usize; *dim];
            compositions(steps, 0, &mut parts, &mut |c| {
                let mut p: Vec<f64> = c.iter().map(|&k| mass * k as f64 / steps as f64).collect();
                normalize_simplex(&mut p, *mass);
                out.push(p);
            });
            out
        }
        Block::Box { lo, hi } => {
            let axes: Vec<Vec<f64>> = lo
                .iter()
                .zip(hi)
                .map(|(l, h)| {
                    if h > l {
                        (0..n).map(|k| l + (h - l) * k as f64 / (n - 1) as f64).collect()
                    } else {
                        vec![*l]
                    }
                })
                .collect();
            let mut out = vec![Vec::new()];
            for axis in &axes {
                out = out
                    .into_iter()
                    .flat_map(|p| {
                        axis.iter().map(move |v| {
                            let mut q = p.clone();
                            q.push(*v);
                            q
                        })
                    })
                    .collect();
            }
            out
        }
    }
}

fn compositions(remaining: usize, idx: usize, parts: &mut [usize], emit: &mut impl FnMut(&[usize])) {
    if idx == parts.len() - 1 {
        parts[idx] = remaining;
        emit(parts);
        return;
    }
    for k in 0..=remaining {
        parts[idx] = k;
        compositions(remaining - k, idx + 1, parts, emit);
    }
}

/// The full product lattice, indexable without materializing every point.
pub(crate) struct Lattice {
    per_block: Vec<Vec<Vec<f64>>>,
    dim: usize,
    len: u64,
}

impl Lattice {
    pub(crate) fn new(space: &SearchSpace, n: usize) -> Result<Self, OptimizerError> {
        if n < 2 {
            return Err(OptimizerError::InvalidSpace(format!("grid needs at least 2 points per dimension, got {n}")));
        }
        let mut len: u64 = 1;
        for b in space.blocks() {
            let c = block_count(b, n);
            len = len.checked_mul(c).filter(|l| *l <= GRID_BUDGET).ok_or(OptimizerError::Budget {
                limit: GRID_BUDGET,
            })?;
        }
        let per_block = space.blocks().iter().map(|b| block_lattice(b, n)).collect();
        Ok(Self { per_block, dim: space.dim(), len })
    }

    pub(crate) fn len(&self) -> u64 {
        self.len
    }

    /// Writes point `index` into `out`; the last block varies fastest.
    pub(crate) fn point(&self, mut index: u64, out: &mut Vec<f64>) {
        out.clear();
        out.resize(self.dim, 0.0);
        let mut end = self.dim;
        for pts in self.per_block.iter().rev() {
            let k = pts.len() as u64;
            let p = &pts[(index % k) as usize];
            index /= k;
            out[end - p.len()..end].copy_from_slice(p);
            end -= p.len();
        }
    }
}

/// Number of lattice points of a block, saturating on overflow.
fn block_count(block: &Block, n: usize) -> u64 {
    match block {
        Block::Simplex { dim, mass } => {
            if *mass <= 0.0 || *dim == 1 {
                1
            } else {
                binomial((n - 1 + dim - 1) as u64, (dim - 1) as u64)
            }
        }
        Block::Box { lo, hi } => lo
            .iter()
            .zip(hi)
            .map(|(l, h)| if h > l { n as u64 } else { 1 })
            .fold(1u64, |a, b| a.saturating_mul(b)),
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Evaluates `objective` at every lattice point, in lattice order.
///
/// Infeasible points (objective `None` or rejected by the space predicate)
/// are kept with a `None` value.
pub fn grid_scan<F>(
    objective: F,
    space: &SearchSpace,
    points_per_dim: usize,
) -> Result<Vec<(Vec<f64>, Option<f64>)>, OptimizerError>
where
    F: Fn(&[f64]) -> Option<f64>,
{
    space.validate()?;
    let lattice = Lattice::new(space, points_per_dim)?;
    let mut out = Vec::with_capacity(lattice.len() as usize);
    let mut x = Vec::new();
    for i in 0..lattice.len() {
        lattice.point(i, &mut x);
        let v = if space.admits(&x) { objective(&x) } else { None };
        out.push((x.clone(), v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_three_points() {
        let s = SearchSpace::new().interval(0.0, 1.0);
        let pts: Vec<_> = grid_scan(|x| Some(x[0]), &s, 3).unwrap().into_iter().map(|(p, _)| p[0]).collect();
        assert_eq!(pts, vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn simplex_three_points() {
        let s = SearchSpace::new().simplex(2, 1.0);
        let pts: Vec<_> = grid_scan(|_| Some(0.0), &s, 3).unwrap().into_iter().map(|(p, _)| p).collect();
        assert_eq!(pts, vec![vec![0.0, 1.0], vec![0.5, 0.5], vec![1.0, 0.0]]);
    }

    #[test]
    fn lattice_sizes() {
        let s = SearchSpace::new().simplex(4, 1.0).simplex(3, 2.0).interval(0.0, 1.0);
        let l = Lattice::new(&s, 5).unwrap();
        assert_eq!(l.len(), 35 * 15 * 5);
        let zero_mass = SearchSpace::new().simplex(3, 0.0);
        assert_eq!(Lattice::new(&zero_mass, 9).unwrap().len(), 1);
    }

    #[test]
    fn budget_guard() {
        let s = SearchSpace::new().boxed(vec![0.0; 9], vec![1.0; 9]);
        assert!(matches!(grid_scan(|_| Some(0.0), &s, 100), Err(OptimizerError::Budget { .. })));
    }

    #[test]
    fn every_lattice_point_is_in_the_space() {
        let s = SearchSpace::new().simplex(4, 3.7).simplex(2, 1e8).interval(-1.0, 2.0);
        for (p, _) in grid_scan(|_| Some(0.0), &s, 7).unwrap() {
            assert!(s.contains(&p, 1e-12), "{p:?}");
        }
    }
}
