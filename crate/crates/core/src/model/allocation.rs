//! Decision variables of every scheme and of the cut-set bound.
//!
//! Constructors validate against a [`PowerBudget`]: time fractions sum to one
//! and every node spends exactly its power budget across its slots, each
//! within a relative tolerance of 1e-12.

use super::{check_quantity, ModelError, PowerBudget};

const SUM_TOL: f64 = 1e-12;

fn check_sum(what: &str, parts: &[f64], total: f64) -> Result<(), ModelError> {
    let sum: f64 = parts.iter().sum();
    if (sum - total).abs() > SUM_TOL * total.max(1.0) {
        return Err(ModelError::Allocation(format!(
            "{what} sums to {sum}, expected {total}"
        )));
    }
    Ok(())
}

fn check_parts(names: &[&'static str], parts: &[f64]) -> Result<(), ModelError> {
    for (name, v) in names.iter().zip(parts) {
        check_quantity(name, *v).map_err(|e| ModelError::Allocation(e.to_string()))?;
    }
    Ok(())
}

fn check_fraction(name: &'static str, v: f64) -> Result<(), ModelError> {
    if v.is_finite() && (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(ModelError::Allocation(format!("{name} = {v} outside [0, 1]")))
    }
}

/// Durations of the four network states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeAllocation {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
}

impl TimeAllocation {
    pub fn new(t1: f64, t2: f64, t3: f64, t4: f64) -> Result<Self, ModelError> {
        let t = Self { t1, t2, t3, t4 };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let parts = self.as_array();
        for (name, v) in ["t1", "t2", "t3", "t4"].into_iter().zip(parts) {
            check_fraction(name, v)?;
        }
        check_sum("t1+t2+t3+t4", &parts, 1.0)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.t1, self.t2, self.t3, self.t4]
    }
}

/// Successive relaying with dirty-paper coding at the source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DpcAllocation {
    pub t1: f64,
    pub t2: f64,
    pub p0_1: f64,
    pub p0_2: f64,
}

impl DpcAllocation {
    pub fn new(t1: f64, t2: f64, p0_1: f64, p0_2: f64, budget: &PowerBudget) -> Result<Self, ModelError> {
        let a = Self { t1, t2, p0_1, p0_2 };
        a.validate(budget)?;
        Ok(a)
    }

    /// Equal slots and an even source split.
    pub fn symmetric(budget: &PowerBudget) -> Self {
        Self { t1: 0.5, t2: 0.5, p0_1: 0.5 * budget.p0, p0_2: 0.5 * budget.p0 }
    }

    pub fn validate(&self, budget: &PowerBudget) -> Result<(), ModelError> {
        check_fraction("t1", self.t1)?;
        check_fraction("t2", self.t2)?;
        check_sum("t1+t2", &[self.t1, self.t2], 1.0)?;
        check_parts(&["p0_1", "p0_2"], &[self.p0_1, self.p0_2])?;
        check_sum("source power", &[self.p0_1, self.p0_2], budget.p0)
    }
}

/// Block-Markov encoding with successive decoding at the destination.
///
/// `alpha_i` is the share of the source power in slot `i` carrying fresh
/// information; `theta_i` is the share of relay `i`'s power carrying the
/// forwarded message rather than the bin index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BmeSuccAllocation {
    pub t1: f64,
    pub t2: f64,
    pub p0_1: f64,
    pub p0_2: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub theta1: f64,
    pub theta2: f64,
}

impl BmeSuccAllocation {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        t1: f64,
        t2: f64,
        p0_1: f64,
        p0_2: f64,
        alpha1: f64,
        alpha2: f64,
        theta1: f64,
        theta2: f64,
        budget: &PowerBudget,
    ) -> Result<Self, ModelError> {
        let a = Self { t1, t2, p0_1, p0_2, alpha1, alpha2, theta1, theta2 };
        a.validate(budget)?;
        Ok(a)
    }

    pub fn validate(&self, budget: &PowerBudget) -> Result<(), ModelError> {
        DpcAllocation { t1: self.t1, t2: self.t2, p0_1: self.p0_1, p0_2: self.p0_2 }.validate(budget)?;
        check_fraction("alpha1", self.alpha1)?;
        check_fraction("alpha2", self.alpha2)?;
        check_fraction("theta1", self.theta1)?;
        check_fraction("theta2", self.theta2)
    }
}

/// Block-Markov encoding with backward decoding; `beta_i` is the fresh-information
/// share of the source power in slot `i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BmeBackAllocation {
    pub t1: f64,
    pub t2: f64,
    pub p0_1: f64,
    pub p0_2: f64,
    pub beta1: f64,
    pub beta2: f64,
}

impl BmeBackAllocation {
    pub fn new(
        t1: f64,
        t2: f64,
        p0_1: f64,
        p0_2: f64,
        beta1: f64,
        beta2: f64,
        budget: &PowerBudget,
    ) -> Result<Self, ModelError> {
        let a = Self { t1, t2, p0_1, p0_2, beta1, beta2 };
        a.validate(budget)?;
        Ok(a)
    }

    pub fn validate(&self, budget: &PowerBudget) -> Result<(), ModelError> {
        DpcAllocation { t1: self.t1, t2: self.t2, p0_1: self.p0_1, p0_2: self.p0_2 }.validate(budget)?;
        check_fraction("beta1", self.beta1)?;
        check_fraction("beta2", self.beta2)
    }
}

/// Which relay decodes the other relay's message and forwards its bin index
/// in the composite block-Markov / dirty-paper scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CooperatingRelay {
    /// Relay 1 listens to relay 2 in slot 1 (the printed orientation).
    First,
    /// Mirror image: relay 2 listens to relay 1 in slot 2.
    Second,
}

impl CooperatingRelay {
    pub fn index(self) -> u8 {
        match self {
            Self::First => 1,
            Self::Second => 2,
        }
    }
}

/// Composite scheme: block-Markov cooperation at one relay, dirty-paper coding
/// for the other.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BmeDpcAllocation {
    pub t1: f64,
    pub t2: f64,
    pub p0_1: f64,
    pub p0_2: f64,
    pub alpha: f64,
    pub cooperating: CooperatingRelay,
}

impl BmeDpcAllocation {
    pub fn new(
        t1: f64,
        t2: f64,
        p0_1: f64,
        p0_2: f64,
        alpha: f64,
        cooperating: CooperatingRelay,
        budget: &PowerBudget,
    ) -> Result<Self, ModelError> {
        let a = Self { t1, t2, p0_1, p0_2, alpha, cooperating };
        a.validate(budget)?;
        Ok(a)
    }

    pub fn validate(&self, budget: &PowerBudget) -> Result<(), ModelError> {
        DpcAllocation { t1: self.t1, t2: self.t2, p0_1: self.p0_1, p0_2: self.p0_2 }.validate(budget)?;
        check_fraction("alpha", self.alpha)
    }
}

/// Simultaneous relaying: broadcast in slot 3, coherent MAC in slot 4.
///
/// Relay 2 spends all of `P2` on the common message.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdfAllocation {
    pub t3: f64,
    pub t4: f64,
    pub p0p: f64,
    pub p0c: f64,
    pub p1p: f64,
    pub p1c: f64,
}

impl DdfAllocation {
    pub fn new(
        t3: f64,
        t4: f64,
        p0p: f64,
        p0c: f64,
        p1p: f64,
        p1c: f64,
        budget: &PowerBudget,
    ) -> Result<Self, ModelError> {
        let a = Self { t3, t4, p0p, p0c, p1p, p1c };
        a.validate(budget)?;
        Ok(a)
    }

    /// Equal slots with every node spending its whole budget on the common message.
    pub fn all_common(budget: &PowerBudget) -> Self {
        Self { t3: 0.5, t4: 0.5, p0p: 0.0, p0c: budget.p0, p1p: 0.0, p1c: budget.p1 }
    }

    pub fn validate(&self, budget: &PowerBudget) -> Result<(), ModelError> {
        check_fraction("t3", self.t3)?;
        check_fraction("t4", self.t4)?;
        check_sum("t3+t4", &[self.t3, self.t4], 1.0)?;
        check_parts(&["p0p", "p0c", "p1p", "p1c"], &[self.p0p, self.p0c, self.p1p, self.p1c])?;
        check_sum("source power", &[self.p0p, self.p0c], budget.p0)?;
        check_sum("relay 1 power", &[self.p1p, self.p1c], budget.p1)
    }
}

/// Four-slot simultaneous-successive schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SsrdAllocation {
    pub time: TimeAllocation,
    pub p0_1: f64,
    pub p0_2: f64,
    pub p0p3: f64,
    pub p0c3: f64,
    pub p1_2: f64,
    pub p1p4: f64,
    pub p1c4: f64,
    pub p2_1: f64,
    pub p2p4: f64,
    pub p2c4: f64,
}

impl SsrdAllocation {
    pub fn validate(&self, budget: &PowerBudget) -> Result<(), ModelError> {
        self.time.validate()?;
        check_parts(
            &["p0_1", "p0_2", "p0p3", "p0c3", "p1_2", "p1p4", "p1c4", "p2_1", "p2p4", "p2c4"],
            &[
                self.p0_1, self.p0_2, self.p0p3, self.p0c3, self.p1_2, self.p1p4, self.p1c4,
                self.p2_1, self.p2p4, self.p2c4,
            ],
        )?;
        check_sum("source power", &[self.p0_1, self.p0_2, self.p0p3, self.p0c3], budget.p0)?;
        check_sum("relay 1 power", &[self.p1_2, self.p1p4, self.p1c4], budget.p1)?;
        check_sum("relay 2 power", &[self.p2_1, self.p2p4, self.p2c4], budget.p2)
    }
}

/// Time and power split over the four network states for the cut-set bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundAllocation {
    pub time: TimeAllocation,
    pub p0_1: f64,
    pub p0_2: f64,
    pub p0_3: f64,
    pub p1_2: f64,
    pub p1_4: f64,
    pub p2_1: f64,
    pub p2_4: f64,
}

impl BoundAllocation {
    pub fn validate(&self, budget: &PowerBudget) -> Result<(), ModelError> {
        self.time.validate()?;
        check_parts(
            &["p0_1", "p0_2", "p0_3", "p1_2", "p1_4", "p2_1", "p2_4"],
            &[self.p0_1, self.p0_2, self.p0_3, self.p1_2, self.p1_4, self.p2_1, self.p2_4],
        )?;
        check_sum("source power", &[self.p0_1, self.p0_2, self.p0_3], budget.p0)?;
        check_sum("relay 1 power", &[self.p1_2, self.p1_4], budget.p1)?;
        check_sum("relay 2 power", &[self.p2_1, self.p2_4], budget.p2)
    }

    /// Successive schedule (`t3 = t4 = 0`) with each relay's full budget in
    /// its transmit slot.
    pub fn successive(t1: f64, p0_1: f64, budget: &PowerBudget) -> Self {
        Self {
            time: TimeAllocation { t1, t2: 1.0 - t1, t3: 0.0, t4: 0.0 },
            p0_1,
            p0_2: budget.p0 - p0_1,
            p0_3: 0.0,
            p1_2: budget.p1,
            p1_4: 0.0,
            p2_1: budget.p2,
            p2_4: 0.0,
        }
    }
}

/// The allocation stored in a [`RateReport`](super::RateReport).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Allocation {
    Dpc(DpcAllocation),
    BmeSucc(BmeSuccAllocation),
    BmeBack(BmeBackAllocation),
    BmeDpc(BmeDpcAllocation),
    Ddf(DdfAllocation),
    Ssrd(SsrdAllocation),
    Bound(BoundAllocation),
    /// Closed-form values that have no allocation.
    None,
}

impl Allocation {
    /// Slot durations `[t1, t2, t3, t4]`, zero for slots a scheme does not use.
    pub fn times(&self) -> [f64; 4] {
        match self {
            Self::Dpc(a) => [a.t1, a.t2, 0.0, 0.0],
            Self::BmeSucc(a) => [a.t1, a.t2, 0.0, 0.0],
            Self::BmeBack(a) => [a.t1, a.t2, 0.0, 0.0],
            Self::BmeDpc(a) => [a.t1, a.t2, 0.0, 0.0],
            Self::Ddf(a) => [0.0, 0.0, a.t3, a.t4],
            Self::Ssrd(a) => a.time.as_array(),
            Self::Bound(a) => a.time.as_array(),
            Self::None => [0.0; 4],
        }
    }

    /// Every non-time decision variable as `(name, value)` pairs.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match self {
            Self::Dpc(a) => vec![("p0_1", a.p0_1), ("p0_2", a.p0_2)],
            Self::BmeSucc(a) => vec![
                ("p0_1", a.p0_1),
                ("p0_2", a.p0_2),
                ("alpha1", a.alpha1),
                ("alpha2", a.alpha2),
                ("theta1", a.theta1),
                ("theta2", a.theta2),
            ],
            Self::BmeBack(a) => vec![
                ("p0_1", a.p0_1),
                ("p0_2", a.p0_2),
                ("beta1", a.beta1),
                ("beta2", a.beta2),
            ],
            Self::BmeDpc(a) => vec![
                ("p0_1", a.p0_1),
                ("p0_2", a.p0_2),
                ("alpha", a.alpha),
                ("cooperating_relay", f64::from(a.cooperating.index())),
            ],
            Self::Ddf(a) => vec![("p0p", a.p0p), ("p0c", a.p0c), ("p1p", a.p1p), ("p1c", a.p1c)],
            Self::Ssrd(a) => vec![
                ("p0_1", a.p0_1),
                ("p0_2", a.p0_2),
                ("p0p3", a.p0p3),
                ("p0c3", a.p0c3),
                ("p1_2", a.p1_2),
                ("p1p4", a.p1p4),
                ("p1c4", a.p1c4),
                ("p2_1", a.p2_1),
                ("p2p4", a.p2p4),
                ("p2c4", a.p2c4),
            ],
            Self::Bound(a) => vec![
                ("p0_1", a.p0_1),
                ("p0_2", a.p0_2),
                ("p0_3", a.p0_3),
                ("p1_2", a.p1_2),
                ("p1_4", a.p1_4),
                ("p2_1", a.p2_1),
                ("p2_4", a.p2_4),
            ],
            Self::None => Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> PowerBudget {
        PowerBudget { p0: 3.0, p1: 1.5, p2: 1.5 }
    }

    #[test]
    fn dpc_constructor_checks_sums() {
        assert!(DpcAllocation::new(0.5, 0.5, 1.5, 1.5, &budget()).is_ok());
        assert!(DpcAllocation::new(0.5, 0.6, 1.5, 1.5, &budget()).is_err());
        assert!(DpcAllocation::new(0.5, 0.5, 1.0, 1.5, &budget()).is_err());
        assert!(DpcAllocation::new(1.5, -0.5, 1.5, 1.5, &budget()).is_err());
    }

    #[test]
    fn sum_tolerance_is_relative_to_budget() {
        let big = PowerBudget { p0: 1e8, p1: 1e8, p2: 1e8 };
        let a = DpcAllocation { t1: 0.5, t2: 0.5, p0_1: 0.3e8 + 1e-5, p0_2: 0.7e8 };
        assert!(a.validate(&big).is_ok());
        let a = DpcAllocation { t1: 0.5, t2: 0.5, p0_1: 0.3e8 + 1.0, p0_2: 0.7e8 };
        assert!(a.validate(&big).is_err());
    }

    #[test]
    fn fractions_must_be_in_unit_interval() {
        let b = budget();
        assert!(BmeBackAllocation::new(0.5, 0.5, 1.5, 1.5, 1.2, 0.0, &b).is_err());
        assert!(BmeSuccAllocation::new(0.5, 0.5, 1.5, 1.5, 1.0, 1.0, 1.0, -0.1, &b).is_err());
        assert!(BmeDpcAllocation::new(0.5, 0.5, 1.5, 1.5, 0.3, CooperatingRelay::Second, &b).is_ok());
    }

    #[test]
    fn ddf_checks_relay_split() {
        let b = budget();
        assert!(DdfAllocation::new(0.5, 0.5, 1.0, 2.0, 0.5, 1.0, &b).is_ok());
        assert!(DdfAllocation::new(0.5, 0.5, 1.0, 2.0, 0.5, 0.5, &b).is_err());
        assert!(DdfAllocation::all_common(&b).validate(&b).is_ok());
    }

    #[test]
    fn four_slot_allocations_validate() {
        let b = budget();
        let bound = BoundAllocation::successive(0.5, 1.5, &b);
        assert!(bound.validate(&b).is_ok());
        let mut bad = bound;
        bad.time.t3 = 0.1;
        assert!(bad.validate(&b).is_err());
        assert!(TimeAllocation::new(0.25, 0.25, 0.25, 0.25).is_ok());
        assert!(TimeAllocation::new(0.25, 0.25, 0.25, 0.3).is_err());
    }

    #[test]
    fn params_cover_all_variables() {
        let a = Allocation::Dpc(DpcAllocation::symmetric(&budget()));
        assert_eq!(a.times(), [0.5, 0.5, 0.0, 0.0]);
        assert_eq!(a.params(), vec![("p0_1", 1.5), ("p0_2", 1.5)]);
    }
}
