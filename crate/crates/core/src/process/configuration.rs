use crate::error::{Error, Result};
use crate::measure::Interval;

/// A finite configuration `ω` of distinct points.
///
/// Points keep insertion order; [`Configuration::same_points`] compares as
/// sets.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Configuration {
    points: Vec<f64>,
}

impl Configuration {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if let Some(bad) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::NonFinite(format!("configuration point {bad}")));
        }
        let mut sorted = points.clone();
        sorted.sort_by(f64::total_cmp);
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0]));
        }
        Ok(Self { points })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// `ω(X)`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `ω(A)`.
    pub fn count_in(&self, region: &Interval) -> usize {
        self.points.iter().filter(|&&x| region.contains(x)).count()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.points.contains(&x)
    }

    /// `ω ∪ {s_1, ..., s_k}`; points already present are not duplicated.
    pub fn add_points(&self, extra: &[f64]) -> Configuration {
        let mut out = self.clone();
        for &s in extra {
            out.insert(s);
        }
        out
    }

    /// `ω \ {x}` where `x` is the `index`-th stored point.
    pub fn without_index(&self, index: usize) -> Configuration {
        let mut points = self.points.clone();
        points.remove(index);
        Configuration { points }
    }

    /// `ω \ {x}`; unchanged when `x` is not in `ω`.
    pub fn without_point(&self, x: f64) -> Configuration {
        match self.points.iter().position(|&p| p == x) {
            Some(i) => self.without_index(i),
            None => self.clone(),
        }
    }

    /// Equality as point sets.
    pub fn same_points(&self, other: &Configuration) -> bool {
        let mut a = self.points.clone();
        let mut b = other.points.clone();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        a == b
    }

    /// Adds `x` unless present; returns whether it was added.
    pub(crate) fn insert(&mut self, x: f64) -> bool {
        if self.contains(x) {
            false
        } else {
            self.points.push(x);
            true
        }
    }

    pub(crate) fn truncate(&mut self, len: usize) {
        self.points.truncate(len);
    }

    pub(crate) fn from_points_unchecked(points: Vec<f64>) -> Self {
        Self { points }
    }
}
