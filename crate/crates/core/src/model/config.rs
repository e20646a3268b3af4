use serde::Deserialize;

use super::ModelError;

/// Search resolution and stopping rules for [`crate::optimizer::maximize`].
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerConfig {
    /// Lattice points per free dimension of the coarse grid.
    pub grid_points_per_dim: usize,
    /// Number of best grid points refined by pattern search.
    pub multistarts: usize,
    /// Smallest rate improvement (bits) accepted as progress.
    pub refine_tol_rate: f64,
    /// Step length at which pattern search stops.
    pub refine_tol_step: f64,
    pub seed: u64,
    /// Extra pattern-search restarts from the incumbent.
    pub refine_rounds: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self::for_schemes()
    }
}

impl OptimizerConfig {
    pub fn for_schemes() -> Self {
        Self {
            grid_points_per_dim: 9,
            multistarts: 8,
            refine_tol_rate: 1e-9,
            refine_tol_step: 1e-6,
            seed: 0,
            refine_rounds: 1,
        }
    }

    /// Coarser grid and more starts for the ten-dimensional SSRD space.
    pub fn for_ssrd() -> Self {
        Self { grid_points_per_dim: 5, multistarts: 32, ..Self::for_schemes() }
    }

    /// Upper bounds must not be under-maximized, so they get extra restarts.
    pub fn for_bounds() -> Self {
        Self { grid_points_per_dim: 9, refine_rounds: 3, ..Self::for_schemes() }
    }

    /// This configuration with at least the restarts of [`Self::for_bounds`],
    /// for callers that take one configuration for schemes and bounds alike.
    pub fn bound_variant(&self) -> Self {
        Self { refine_rounds: self.refine_rounds.max(Self::for_bounds().refine_rounds), ..*self }
    }

    /// Preset for one scheme: SSRD gets [`Self::for_ssrd`], the rest
    /// [`Self::for_schemes`].
    pub fn for_scheme(id: crate::schemes::SchemeId) -> Self {
        match id {
            crate::schemes::SchemeId::Ssrd => Self::for_ssrd(),
            _ => Self::for_schemes(),
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn with_grid(self, grid_points_per_dim: usize) -> Self {
        Self { grid_points_per_dim, ..self }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.grid_points_per_dim < 2 {
            return Err(ModelError::Config(format!(
                "grid_points_per_dim must be at least 2, got {}",
                self.grid_points_per_dim
            )));
        }
        if self.multistarts == 0 {
            return Err(ModelError::Config("multistarts must be positive".into()));
        }
        for (name, v) in [("refine_tol_rate", self.refine_tol_rate), ("refine_tol_step", self.refine_tol_step)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(ModelError::Config(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}
