use std::fmt;

use super::Allocation;
use crate::bounds::BoundKind;
use crate::schemes::SchemeId;

/// What produced a [`RateReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RateKind {
    Scheme(SchemeId),
    Bound(BoundKind),
}

impl RateKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Scheme(s) => s.name(),
            Self::Bound(b) => b.name(),
        }
    }

    pub fn is_bound(&self) -> bool {
        matches!(self, Self::Bound(_))
    }
}

impl fmt::Display for RateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An evaluated or optimized rate together with everything that explains it.
#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub kind: RateKind,
    /// Bits per channel use; always the minimum of `cut_values`.
    pub total_bpcu: f64,
    /// Named sub-rates, e.g. `R1`..`R9` or `Rp`, `Rc`.
    pub components: Vec<(&'static str, f64)>,
    /// Every term of the outer minimum.
    pub cut_values: Vec<f64>,
    pub allocation: Allocation,
}

impl RateReport {
    /// Builds a report whose total is the minimum of `cut_values` (0 if empty).
    pub fn from_cuts(
        kind: RateKind,
        cut_values: Vec<f64>,
        components: Vec<(&'static str, f64)>,
        allocation: Allocation,
    ) -> Self {
        let total_bpcu = min_of(&cut_values);
        Self { kind, total_bpcu, components, cut_values, allocation }
    }

    /// Re-minimizes the stored cut values.
    pub fn recomputed_total(&self) -> f64 {
        min_of(&self.cut_values)
    }

    pub fn component(&self, name: &str) -> Option<f64> {
        self.components.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }
}

fn min_of(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().copied().fold(f64::INFINITY, f64::min)
}
