use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Rule with `order` nodes, exact for polynomials of degree `2 * order - 1`.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be positive");
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let n = order as f64;
        // Roots are symmetric; Newton on P_n from the Chebyshev-like guess.
        for i in 0..order.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(order, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(order, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[order - 1 - i] = x;
            weights[order - 1 - i] = w;
        }
        if order % 2 == 1 {
            nodes[order / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let sum: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum();
        half * sum
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A Gauss-Legendre rule applied on equal-width panels.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeRule {
    rule: GaussLegendre,
    panels: usize,
}

impl CompositeRule {
    pub const DEFAULT_ORDER: usize = 64;
    pub const DEFAULT_PANELS: usize = 16;

    pub fn new(order: usize, panels: usize) -> Self {
        assert!(panels >= 1, "at least one panel");
        Self {
            rule: GaussLegendre::new(order),
            panels,
        }
    }

    pub fn order(&self) -> usize {
        self.rule.order()
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        let width = (b - a) / self.panels as f64;
        (0..self.panels)
            .map(|i| {
                let lo = a + width * i as f64;
                let hi = if i + 1 == self.panels { b } else { lo + width };
                self.rule.integrate(lo, hi, &mut f)
            })
            .sum()
    }
}

impl Default for CompositeRule {
    fn default() -> Self {
        Self::new(Self::DEFAULT_ORDER, Self::DEFAULT_PANELS)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for order in [1, 2, 5, 16, 64] {
            let rule = GaussLegendre::new(order);
            let s: f64 = rule.weights().iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "order {order}: {s}");
        }
    }

    #[test]
    fn exact_for_high_degree_polynomials() {
        for order in [3, 8, 64] {
            let rule = GaussLegendre::new(order);
            let deg = 2 * order - 1;
            // odd degree integrates to zero on [-1, 1]; use [0, 1] instead
            let got = rule.integrate(0.0, 1.0, |x| x.powi(deg as i32 - 1));
            let want = 1.0 / deg as f64;
            assert!((got - want).abs() < 1e-14, "order {order}: {got} vs {want}");
        }
    }

    #[test]
    fn composite_integrates_smooth_functions() {
        let rule = CompositeRule::default();
        let got = rule.integrate(0.0, PI, f64::sin);
        assert!((got - 2.0).abs() < 1e-14);
        assert_eq!(rule.integrate(1.0, 1.0, |_| 1.0), 0.0);
    }
}
