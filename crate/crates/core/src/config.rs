//! Measure-space definitions read from TOML.
//!
//! ```toml
//! kind = "interval"        # or "abstract" (mass only, realized on [0, 1))
//! lower = 0.0
//! upper = 2.0
//! density = "ramp"         # uniform | ramp | bump
//! total_mass = 3.0         # or mass_scale = 1.5, not both
//! quadrature_points = 64
//! quadrature_panels = 16
//! cdf_cells = 4096
//! a = [0.0, 1.0]           # optional sets A and B used by registry ids
//! b = [1.0, 2.0]
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::{CompositeRule, Density, Interval, MeasureSpace};
use crate::process::RegistryContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConfigKind {
    #[default]
    Interval,
    Abstract,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    #[serde(default)]
    pub kind: ConfigKind,
    #[serde(default)]
    pub lower: f64,
    #[serde(default = "one")]
    pub upper: f64,
    #[serde(default = "uniform")]
    pub density: Density,
    pub total_mass: Option<f64>,
    pub mass_scale: Option<f64>,
    #[serde(default = "default_points")]
    pub quadrature_points: usize,
    #[serde(default = "default_panels")]
    pub quadrature_panels: usize,
    #[serde(default = "default_cells")]
    pub cdf_cells: usize,
    pub a: Option<[f64; 2]>,
    pub b: Option<[f64; 2]>,
}

fn one() -> f64 {
    1.0
}

fn uniform() -> Density {
    Density::Uniform
}

fn default_points() -> usize {
    CompositeRule::DEFAULT_ORDER
}

fn default_panels() -> usize {
    CompositeRule::DEFAULT_PANELS
}

fn default_cells() -> usize {
    MeasureSpace::DEFAULT_CDF_CELLS
}

impl Default for SpaceConfig {
    fn default() -> Self {
        Self {
            kind: ConfigKind::Interval,
            lower: 0.0,
            upper: 1.0,
            density: Density::Uniform,
            total_mass: None,
            mass_scale: None,
            quadrature_points: default_points(),
            quadrature_panels: default_panels(),
            cdf_cells: default_cells(),
            a: None,
            b: None,
        }
    }
}

impl SpaceConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: SpaceConfig =
            toml::from_str(text).map_err(|e| Error::Config(format!("invalid space config: {e}")))?;
        if config.total_mass.is_some() && config.mass_scale.is_some() {
            return Err(Error::Config("set at most one of total_mass and mass_scale".into()));
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// Replaces any mass setting by a total mass of `lambda`.
    pub fn with_total_mass(mut self, lambda: f64) -> Self {
        self.total_mass = Some(lambda);
        self.mass_scale = None;
        self
    }

    pub fn domain(&self) -> Result<Interval> {
        match self.kind {
            ConfigKind::Interval => Interval::new(self.lower, self.upper),
            ConfigKind::Abstract => Interval::new(0.0, 1.0),
        }
    }

    pub fn build(&self) -> Result<MeasureSpace> {
        let mut builder = MeasureSpace::builder(self.domain()?)
            .quadrature(self.quadrature_points, self.quadrature_panels)
            .cdf_cells(self.cdf_cells);
        if self.kind == ConfigKind::Abstract {
            builder = builder.abstract_kind();
        } else {
            builder = builder.density(self.density);
        }
        if let Some(total) = self.total_mass {
            builder = builder.total_mass(total);
        } else if let Some(scale) = self.mass_scale {
            builder = builder.mass_scale(scale);
        }
        builder.build()
    }

    pub fn registry_context(&self) -> Result<RegistryContext> {
        let mut ctx = RegistryContext::new(self.domain()?);
        if let Some([lo, hi]) = self.a {
            ctx = ctx.with_a(Interval::new(lo, hi)?);
        }
        if let Some([lo, hi]) = self.b {
            ctx = ctx.with_b(Interval::new(lo, hi)?);
        }
        Ok(ctx)
    }
}
