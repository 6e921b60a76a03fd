use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::{CompositeRule, GaussLegendre};

/// Half-open interval `[lo, hi)` of the real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Requires finite endpoints with `lo <= hi`.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x < self.hi
    }

    /// Intersection; an empty interval anchored at `max(lo)` when disjoint.
    pub fn intersect(&self, other: &Interval) -> Interval {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi).max(lo);
        Interval { lo, hi }
    }

    pub fn is_disjoint(&self, other: &Interval) -> bool {
        self.intersect(other).is_empty()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

/// Parses `"lo,hi"` (brackets optional).
impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        let (lo, hi) = trimmed
            .split_once(',')
            .ok_or_else(|| Error::Config(format!("interval must look like `lo,hi`: {s:?}")))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|e| Error::Config(format!("bad interval endpoint {v:?}: {e}")))
        };
        Interval::new(parse(lo)?, parse(hi)?)
    }
}

/// Shape of the density of `σ` with respect to Lebesgue measure, before
/// scaling. Identifiers are what configuration files use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Density {
    /// `ρ(x) = 1`
    Uniform,
    /// `ρ(x) = x - lo`, increasing from zero across the domain.
    Ramp,
    /// `ρ(x) = exp(-(x - mid)^2 / (2 w^2))` with `w` a sixth of the domain.
    Bump,
}

impl Density {
    pub const IDENTIFIERS: [&'static str; 3] = ["uniform", "ramp", "bump"];

    fn eval(self, x: f64, domain: &Interval) -> f64 {
        match self {
            Density::Uniform => 1.0,
            Density::Ramp => x - domain.lo,
            Density::Bump => {
                let mid = 0.5 * (domain.lo + domain.hi);
                let w = domain.len() / 6.0;
                (-(x - mid).powi(2) / (2.0 * w * w)).exp()
            }
        }
    }
}

impl FromStr for Density {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Density::Uniform),
            "ramp" => Ok(Density::Ramp),
            "bump" => Ok(Density::Bump),
            other => Err(Error::Config(format!(
                "unknown density {other:?}; expected one of {:?}",
                Density::IDENTIFIERS
            ))),
        }
    }
}

/// How the space was declared. Abstract spaces only carry a total mass; they
/// are realized as the uniform measure of that mass on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceKind {
    Interval,
    Abstract,
}

/// A deterministic function `f: X -> R`, zero outside its support.
pub trait DeterministicIntegrand: Send + Sync {
    fn eval(&self, x: f64) -> f64;

    /// Compact support; `None` means the whole space.
    fn support(&self) -> Option<Interval> {
        None
    }
}

impl<F: Fn(f64) -> f64 + Send + Sync> DeterministicIntegrand for F {
    fn eval(&self, x: f64) -> f64 {
        self(x)
    }
}

/// A closure restricted to an interval.
pub struct Supported<F> {
    pub f: F,
    pub support: Interval,
}

impl<F: Fn(f64) -> f64 + Send + Sync> DeterministicIntegrand for Supported<F> {
    fn eval(&self, x: f64) -> f64 {
        if self.support.contains(x) {
            (self.f)(x)
        } else {
            0.0
        }
    }

    fn support(&self) -> Option<Interval> {
        Some(self.support)
    }
}

/// The base space `(X, σ)`: an interval with `σ(dx) = scale * ρ(x) dx`.
#[derive(Debug, Clone)]
pub struct MeasureSpace {
    kind: SpaceKind,
    domain: Interval,
    density: Density,
    scale: f64,
    total_mass: f64,
    quadrature: CompositeRule,
    // cdf[j] = σ([lo, lo + j h)) / λ for j = 0..=cells
    cdf: Vec<f64>,
}

impl MeasureSpace {
    pub const DEFAULT_CDF_CELLS: usize = 4096;

    /// Uniform measure on `[lo, hi)` with total mass `total_mass`.
    pub fn uniform(lo: f64, hi: f64, total_mass: f64) -> Result<Self> {
        MeasureSpaceBuilder::new(Interval::new(lo, hi)?)
            .total_mass(total_mass)
            .build()
    }

    /// Lebesgue measure on `[0, 1)`.
    pub fn unit_lebesgue() -> Self {
        Self::uniform(0.0, 1.0, 1.0).expect("valid unit interval")
    }

    /// A space described only by its total mass.
    pub fn abstract_mass(total_mass: f64) -> Result<Self> {
        let mut space = Self::uniform(0.0, 1.0, total_mass)?;
        space.kind = SpaceKind::Abstract;
        Ok(space)
    }

    pub fn builder(domain: Interval) -> MeasureSpaceBuilder {
        MeasureSpaceBuilder::new(domain)
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn density(&self) -> Density {
        self.density
    }

    /// `λ = σ(X)`.
    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn quadrature(&self) -> &CompositeRule {
        &self.quadrature
    }

    pub fn cdf_cells(&self) -> usize {
        self.cdf.len().saturating_sub(1)
    }

    /// Density of `σ` at `x` (zero outside the domain).
    pub fn density_at(&self, x: f64) -> f64 {
        if self.domain.contains(x) {
            self.scale * self.density.eval(x, &self.domain)
        } else {
            0.0
        }
    }

    /// Same space with `σ` multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor >= 0.0) {
            return Err(Error::InvalidParameter(format!("bad mass factor {factor}")));
        }
        let mut out = self.clone();
        out.scale *= factor;
        out.total_mass *= factor;
        Ok(out)
    }

    /// `∫_region g dσ` by composite Gauss-Legendre; `region = None` is the
    /// whole domain.
    pub fn integrate_fn(&self, region: Option<Interval>, mut g: impl FnMut(f64) -> f64) -> f64 {
        let region = region.map_or(self.domain, |r| r.intersect(&self.domain));
        if region.is_empty() || self.scale == 0.0 {
            return 0.0;
        }
        let rho = |x: f64| self.scale * self.density.eval(x, &self.domain);
        self.quadrature
            .integrate(region.lo, region.hi, |x| g(x) * rho(x))
    }

    /// `∫ g dσ` over the support of `g`, failing on non-finite output.
    pub fn integrate(&self, g: &dyn DeterministicIntegrand) -> Result<f64> {
        let value = self.integrate_fn(g.support(), |x| g.eval(x));
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFinite(format!("integral evaluated to {value}")))
        }
    }

    /// `σ(A)`.
    pub fn measure_of(&self, region: &Interval) -> f64 {
        match self.density {
            Density::Uniform => self.scale * region.intersect(&self.domain).len(),
            _ => self.integrate_fn(Some(*region), |_| 1.0),
        }
    }

    /// `m_k = ∫ f^k dσ` for `k = 1..=n_max`.
    pub fn power_integrals(&self, f: &dyn DeterministicIntegrand, n_max: usize) -> Result<Vec<f64>> {
        if n_max == 0 {
            return Err(Error::InvalidParameter("n_max must be at least 1".into()));
        }
        let out: Vec<f64> = (1..=n_max)
            .map(|k| self.integrate_fn(f.support(), |x| f.eval(x).powi(k as i32)))
            .collect();
        if let Some(bad) = out.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("power integral evaluated to {bad}")));
        }
        Ok(out)
    }

    /// Draws a point from `σ / λ`.
    pub fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        if self.total_mass <= 0.0 {
            return Err(Error::ZeroMass);
        }
        Ok(self.invert_cdf(rng.random::<f64>()))
    }

    /// Draws a point from `σ` restricted to `region`, normalized.
    pub fn sample_point_in<R: Rng + ?Sized>(&self, region: &Interval, rng: &mut R) -> Result<f64> {
        let region = region.intersect(&self.domain);
        let lo = self.cdf_at(region.lo);
        let hi = self.cdf_at(region.hi);
        if self.total_mass <= 0.0 || hi <= lo {
            return Err(Error::ZeroMass);
        }
        let u = lo + (hi - lo) * rng.random::<f64>();
        Ok(self.invert_cdf(u).clamp(region.lo, region.hi))
    }

    fn cdf_at(&self, x: f64) -> f64 {
        let cells = self.cdf_cells();
        let h = self.domain.len() / cells as f64;
        let t = ((x - self.domain.lo) / h).clamp(0.0, cells as f64);
        let j = (t.floor() as usize).min(cells - 1);
        let frac = t - j as f64;
        self.cdf[j] + frac * (self.cdf[j + 1] - self.cdf[j])
    }

    fn invert_cdf(&self, u: f64) -> f64 {
        let cells = self.cdf_cells();
        // first j with cdf[j + 1] > u
        let j = self.cdf[1..].partition_point(|&c| c <= u).min(cells - 1);
        let width = self.cdf[j + 1] - self.cdf[j];
        let frac = if width > 0.0 { (u - self.cdf[j]) / width } else { 0.5 };
        let h = self.domain.len() / cells as f64;
        let x = self.domain.lo + (j as f64 + frac.clamp(0.0, 1.0)) * h;
        // stay inside the half-open domain
        if x >= self.domain.hi {
            self.domain.hi - h * f64::EPSILON
        } else {
            x
        }
    }
}

/// Builder for [`MeasureSpace`].
#[derive(Debug, Clone)]
pub struct MeasureSpaceBuilder {
    domain: Interval,
    density: Density,
    mass: MassSpec,
    quadrature_order: usize,
    quadrature_panels: usize,
    cdf_cells: usize,
    kind: SpaceKind,
}

#[derive(Debug, Clone, Copy)]
enum MassSpec {
    Scale(f64),
    Total(f64),
}

impl MeasureSpaceBuilder {
    pub fn new(domain: Interval) -> Self {
        Self {
            domain,
            density: Density::Uniform,
            mass: MassSpec::Scale(1.0),
            quadrature_order: CompositeRule::DEFAULT_ORDER,
            quadrature_panels: CompositeRule::DEFAULT_PANELS,
            cdf_cells: MeasureSpace::DEFAULT_CDF_CELLS,
            kind: SpaceKind::Interval,
        }
    }

    pub fn density(mut self, density: Density) -> Self {
        self.density = density;
        self
    }

    /// `σ(dx) = scale * ρ(x) dx`.
    pub fn mass_scale(mut self, scale: f64) -> Self {
        self.mass = MassSpec::Scale(scale);
        self
    }

    /// Rescales the density so that `σ(X)` equals `total`.
    pub fn total_mass(mut self, total: f64) -> Self {
        self.mass = MassSpec::Total(total);
        self
    }

    pub fn quadrature(mut self, order: usize, panels: usize) -> Self {
        self.quadrature_order = order;
        self.quadrature_panels = panels;
        self
    }

    pub fn cdf_cells(mut self, cells: usize) -> Self {
        self.cdf_cells = cells;
        self
    }

    pub fn abstract_kind(mut self) -> Self {
        self.kind = SpaceKind::Abstract;
        self
    }

    pub fn build(self) -> Result<MeasureSpace> {
        if self.domain.is_empty() {
            return Err(Error::InvalidInterval {
                lo: self.domain.lo,
                hi: self.domain.hi,
            });
        }
        if self.quadrature_order == 0 || self.quadrature_panels == 0 || self.cdf_cells == 0 {
            return Err(Error::InvalidParameter(
                "quadrature order, panels and cdf cells must be positive".into(),
            ));
        }
        let quadrature = CompositeRule::new(self.quadrature_order, self.quadrature_panels);
        let domain = self.domain;
        let density = self.density;
        let unit_mass = match density {
            Density::Uniform => domain.len(),
            _ => quadrature.integrate(domain.lo, domain.hi, |x| density.eval(x, &domain)),
        };
        let scale = match self.mass {
            MassSpec::Scale(s) => s,
            MassSpec::Total(t) => t / unit_mass,
        };
        if !(scale.is_finite() && scale >= 0.0) || !(unit_mass > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "mass must be finite and non-negative (scale {scale}, unit mass {unit_mass})"
            )));
        }
        let total_mass = match self.mass {
            MassSpec::Total(t) => t,
            MassSpec::Scale(s) => s * unit_mass,
        };

        // cell masses of the unscaled density, normalized
        let cells = self.cdf_cells;
        let h = domain.len() / cells as f64;
        let cell_rule = GaussLegendre::new(8);
        let mut cdf = Vec::with_capacity(cells + 1);
        cdf.push(0.0);
        let mut acc = 0.0;
        for j in 0..cells {
            let a = domain.lo + j as f64 * h;
            acc += match density {
                Density::Uniform => h,
                _ => cell_rule.integrate(a, a + h, |x| density.eval(x, &domain)),
            };
            cdf.push(acc);
        }
        let norm = acc;
        for c in &mut cdf {
            *c /= norm;
        }
        cdf[cells] = 1.0;

        Ok(MeasureSpace {
            kind: self.kind,
            domain,
            density,
            scale,
            total_mass,
            quadrature,
            cdf,
        })
    }
}
