use std::fmt;
use std::sync::Arc;

use super::OptimizerError;

/// One factor of a [`SearchSpace`].
#[derive(Debug, Clone, PartialEq)]
pub enum Block {
    /// `dim` non-negative coordinates summing to `mass`.
    Simplex { dim: usize, mass: f64 },
    /// Independent coordinates with `lo[i] <= x[i] <= hi[i]`.
    Box { lo: Vec<f64>, hi: Vec<f64> },
}

impl Block {
    pub fn dim(&self) -> usize {
        match self {
            Block::Simplex { dim, .. } => *dim,
            Block::Box { lo, .. } => lo.len(),
        }
    }

    /// Degrees of freedom inside the block.
    pub fn free_dims(&self) -> usize {
        match self {
            Block::Simplex { dim, mass } if *mass > 0.0 => dim - 1,
            Block::Simplex { .. } => 0,
            Block::Box { lo, hi } => lo.iter().zip(hi).filter(|(l, h)| h > l).count(),
        }
    }

    fn validate(&self) -> Result<(), OptimizerError> {
        let bad = |msg: String| Err(OptimizerError::InvalidSpace(msg));
        match self {
            Block::Simplex { dim, mass } => {
                if *dim == 0 {
                    return bad("simplex block of dimension 0".into());
                }
                if !(mass.is_finite() && *mass >= 0.0) {
                    return bad(format!("simplex mass {mass} must be finite and non-negative"));
                }
            }
            Block::Box { lo, hi } => {
                if lo.is_empty() || lo.len() != hi.len() {
                    return bad("box block needs matching, non-empty bounds".into());
                }
                for (l, h) in lo.iter().zip(hi) {
                    if !(l.is_finite() && h.is_finite() && l <= h) {
                        return bad(format!("box bounds [{l}, {h}] are not an interval"));
                    }
                }
            }
        }
        Ok(())
    }
}

pub type Predicate = Arc<dyn Fn(&[f64]) -> bool + Send + Sync>;

/// Product of simplex and box blocks, laid out back to back in one point vector.
#[derive(Clone, Default)]
pub struct SearchSpace {
    blocks: Vec<Block>,
    predicate: Option<Predicate>,
}

impl fmt::Debug for SearchSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SearchSpace")
            .field("blocks", &self.blocks)
            .field("predicate", &self.predicate.is_some())
            .finish()
    }
}

impl SearchSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn simplex(mut self, dim: usize, mass: f64) -> Self {
        self.blocks.push(Block::Simplex { dim, mass });
        self
    }

    pub fn interval(self, lo: f64, hi: f64) -> Self {
        self.boxed(vec![lo], vec![hi])
    }

    pub fn boxed(mut self, lo: Vec<f64>, hi: Vec<f64>) -> Self {
        self.blocks.push(Block::Box { lo, hi });
        self
    }

    /// Points failing `pred` are treated as infeasible.
    pub fn with_predicate(mut self, pred: impl Fn(&[f64]) -> bool + Send + Sync + 'static) -> Self {
        self.predicate = Some(Arc::new(pred));
        self
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Block::dim).sum()
    }

    pub fn free_dims(&self) -> usize {
        self.blocks.iter().map(Block::free_dims).sum()
    }

    pub fn validate(&self) -> Result<(), OptimizerError> {
        if self.blocks.is_empty() {
            return Err(OptimizerError::InvalidSpace("no blocks".into()));
        }
        self.blocks.iter().try_for_each(Block::validate)
    }

    pub(crate) fn admits(&self, x: &[f64]) -> bool {
        self.predicate.as_ref().map_or(true, |p| p(x))
    }

    /// Offsets of each block in the point vector.
    pub(crate) fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.blocks.len());
        let mut acc = 0;
        for b in &self.blocks {
            off.push(acc);
            acc += b.dim();
        }
        off
    }

    /// Euclidean projection onto every block, followed by exact renormalization
    /// of simplex sums.
    pub fn project(&self, x: &mut [f64]) {
        let mut off = 0;
        for b in &self.blocks {
            let d = b.dim();
            let seg = &mut x[off..off + d];
            match b {
                Block::Simplex { mass, .. } => {
                    project_simplex(seg, *mass);
                    normalize_simplex(seg, *mass);
                }
                Block::Box { lo, hi } => {
                    for ((v, l), h) in seg.iter_mut().zip(lo).zip(hi) {
                        *v = v.clamp(*l, *h);
                    }
                }
            }
            off += d;
        }
    }

    /// True when every block constraint holds within `tol` (relative to the
    /// simplex mass).
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        let mut off = 0;
        for b in &self.blocks {
            let d = b.dim();
            let seg = &x[off..off + d];
            let ok = match b {
                Block::Simplex { mass, .. } => {
                    let sum: f64 = seg.iter().sum();
                    seg.iter().all(|v| *v >= 0.0) && (sum - mass).abs() <= tol * mass.max(1.0)
                }
                Block::Box { lo, hi } => {
                    seg.iter().zip(lo).zip(hi).all(|((v, l), h)| *v >= *l && *v <= *h)
                }
            };
            if !ok {
                return false;
            }
            off += d;
        }
        true
    }
}

/// Euclidean projection onto `{y >= 0, Σy = mass}`.
pub(crate) fn project_simplex(x: &mut [f64], mass: f64) {
    if mass <= 0.0 {
        x.iter_mut().for_each(|v| *v = 0.0);
        return;
    }
    let mut sorted: Vec<f64> = x.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (i, v) in sorted.iter().enumerate() {
        cum += v;
        let cand = (cum - mass) / (i + 1) as f64;
        if *v - cand > 0.0 {
            theta = cand;
        }
    }
    x.iter_mut().for_each(|v| *v = (*v - theta).max(0.0));
}

/// Puts the rounding residual of a simplex block on its largest coordinate so
/// the sum equals `mass` to the last ulp where possible.
pub(crate) fn normalize_simplex(x: &mut [f64], mass: f64) {
    x.iter_mut().for_each(|v| *v = v.max(0.0));
    if mass <= 0.0 {
        x.iter_mut().for_each(|v| *v = 0.0);
        return;
    }
    let sum: f64 = x.iter().sum();
    if sum <= 0.0 {
        let n = x.len() as f64;
        x.iter_mut().for_each(|v| *v = mass / n);
    }
    let (imax, _) = x
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if *v > acc.1 { (i, *v) } else { acc });
    let rest: f64 = x.iter().enumerate().filter(|(i, _)| *i != imax).map(|(_, v)| v).sum();
    x[imax] = (mass - rest).max(0.0);
}
