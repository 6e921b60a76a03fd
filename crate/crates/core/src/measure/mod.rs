//! The base space `(X, σ)`: finite-mass measures on intervals, quadrature
//! against them, and sampling from the normalized measure.

mod quadrature;
mod space;

pub use quadrature::{CompositeRule, GaussLegendre};
pub use space::{
    DeterministicIntegrand, Density, Interval, MeasureSpace, MeasureSpaceBuilder, SpaceKind,
    Supported,
};
