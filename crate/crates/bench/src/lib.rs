//! Fixtures shared by the benchmarks.

use poisson_moments::measure::{Interval, MeasureSpace};
use poisson_moments::process::IntegrandSpec;
use poisson_moments::MCParams;

/// Uniform σ on `[0, 2)` with total mass `lambda`.
pub fn split_space(lambda: f64) -> MeasureSpace {
    MeasureSpace::uniform(0.0, 2.0, lambda).expect("valid space")
}

/// `ω([1, 2)) 1_{[0, 1)}(x)`.
pub fn split_integrand() -> IntegrandSpec {
    IntegrandSpec::CountTimesIndicator {
        a: Interval::new(0.0, 1.0).expect("ordered"),
        b: Interval::new(1.0, 2.0).expect("ordered"),
    }
}

pub fn mc(replicates: usize) -> MCParams {
    MCParams::new(replicates, 7).expect("enough replicates")
}
