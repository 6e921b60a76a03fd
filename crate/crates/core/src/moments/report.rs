use serde::Serialize;

use crate::combinatorics::IntegerPolynomial;
use crate::montecarlo::{Estimate, MCParams};

/// Version of the JSON layout of [`IdentityReport`].
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// One side of an identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Side {
    Exact {
        value: f64,
    },
    Estimate {
        mean: f64,
        stderr: f64,
        replicates: usize,
    },
}

impl Side {
    pub fn value(&self) -> f64 {
        match *self {
            Side::Exact { value } => value,
            Side::Estimate { mean, .. } => mean,
        }
    }

    pub fn stderr(&self) -> f64 {
        match *self {
            Side::Exact { .. } => 0.0,
            Side::Estimate { stderr, .. } => stderr,
        }
    }
}

impl From<Estimate> for Side {
    fn from(e: Estimate) -> Self {
        Side::Estimate {
            mean: e.mean,
            stderr: e.stderr,
            replicates: e.replicates,
        }
    }
}

/// One summand of a partition sum: `weight * mean` is its contribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermReport {
    pub label: String,
    pub weight: f64,
    pub mean: f64,
    pub stderr: f64,
}

/// Rule deciding whether two sides agree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Tolerance {
    /// `|lhs - rhs| <= multiplier * sqrt(se_lhs^2 + se_rhs^2)`
    Statistical { multiplier: f64 },
    /// `|lhs - rhs| <= tol * max(|lhs|, |rhs|)`
    Relative { tol: f64 },
    /// `|lhs - rhs| <= tol`
    Absolute { tol: f64 },
}

impl Tolerance {
    fn threshold(&self, lhs: &Side, rhs: &Side) -> f64 {
        match *self {
            Tolerance::Statistical { multiplier } => multiplier * lhs.stderr().hypot(rhs.stderr()),
            Tolerance::Relative { tol } => tol * lhs.value().abs().max(rhs.value().abs()),
            Tolerance::Absolute { tol } => tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Both sides of an identity evaluated as exact polynomials in `λ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactPolynomials {
    pub lhs: IntegerPolynomial,
    pub rhs: IntegerPolynomial,
    pub equal: bool,
}

impl ExactPolynomials {
    pub fn new(lhs: IntegerPolynomial, rhs: IntegerPolynomial) -> Self {
        let equal = lhs == rhs;
        Self { lhs, rhs, equal }
    }
}

/// Outcome of checking one identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub schema_version: u32,
    pub identity: String,
    pub n: usize,
    pub lambda: f64,
    pub seed: Option<u64>,
    pub lhs: Side,
    pub rhs: Side,
    pub difference: f64,
    pub threshold: f64,
    pub tolerance: Tolerance,
    pub verdict: Verdict,
    pub terms: Vec<TermReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactPolynomials>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl IdentityReport {
    pub fn new(
        identity: impl Into<String>,
        n: usize,
        lambda: f64,
        lhs: Side,
        rhs: Side,
        tolerance: Tolerance,
    ) -> Self {
        let mut report = Self {
            schema_version: REPORT_SCHEMA_VERSION,
            identity: identity.into(),
            n,
            lambda,
            seed: None,
            lhs,
            rhs,
            difference: 0.0,
            threshold: 0.0,
            tolerance,
            verdict: Verdict::Fail,
            terms: Vec::new(),
            exact: None,
            notes: Vec::new(),
        };
        report.refresh_verdict();
        report
    }

    fn refresh_verdict(&mut self) {
        self.difference = (self.lhs.value() - self.rhs.value()).abs();
        self.threshold = self.tolerance.threshold(&self.lhs, &self.rhs);
        let numeric_ok = self.difference <= self.threshold;
        let exact_ok = self.exact.as_ref().is_none_or(|e| e.equal);
        self.verdict = if numeric_ok && exact_ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
    }

    pub fn with_terms(mut self, terms: Vec<TermReport>) -> Self {
        self.terms = terms;
        self
    }

    pub fn with_mc(mut self, mc: &MCParams) -> Self {
        self.seed = Some(mc.seed);
        self
    }

    /// Attaches exact polynomial sides; unequal polynomials fail the report.
    pub fn with_exact(mut self, exact: ExactPolynomials) -> Self {
        self.exact = Some(exact);
        self.refresh_verdict();
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub const CSV_HEADER: [&'static str; 12] = [
        "identity",
        "n",
        "lambda",
        "lhs",
        "lhs_stderr",
        "rhs",
        "rhs_stderr",
        "difference",
        "threshold",
        "verdict",
        "seed",
        "schema_version",
    ];

    /// One CSV summary row matching [`IdentityReport::CSV_HEADER`].
    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.identity.clone(),
            self.n.to_string(),
            self.lambda.to_string(),
            self.lhs.value().to_string(),
            self.lhs.stderr().to_string(),
            self.rhs.value().to_string(),
            self.rhs.stderr().to_string(),
            self.difference.to_string(),
            self.threshold.to_string(),
            match self.verdict {
                Verdict::Pass => "pass".into(),
                Verdict::Fail => "fail".into(),
            },
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
            self.schema_version.to_string(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn est(mean: f64, stderr: f64) -> Side {
        Side::Estimate {
            mean,
            stderr,
            replicates: 1000,
        }
    }

    #[test]
    fn statistical_verdict_uses_combined_stderr() {
        let rule = Tolerance::Statistical { multiplier: 3.0 };
        // combined stderr 5, threshold 15
        let pass = IdentityReport::new("x", 1, 1.0, est(0.0, 3.0), est(14.9, 4.0), rule);
        assert!(pass.passed());
        assert!((pass.threshold - 15.0).abs() < 1e-12);
        let fail = IdentityReport::new("x", 1, 1.0, est(0.0, 3.0), est(15.1, 4.0), rule);
        assert!(!fail.passed());
    }

    #[test]
    fn exact_mismatch_fails_regardless_of_numbers() {
        let rule = Tolerance::Relative { tol: 1e-9 };
        let r = IdentityReport::new("x", 2, 1.0, Side::Exact { value: 2.0 }, Side::Exact { value: 2.0 }, rule);
        assert!(r.passed());
        let r = r.with_exact(ExactPolynomials::new(
            IntegerPolynomial::new([0, 1, 1]),
            IntegerPolynomial::new([0, 2]),
        ));
        assert!(!r.passed());
    }

    #[test]
    fn csv_row_matches_header() {
        let r = IdentityReport::new(
            "x",
            2,
            0.5,
            Side::Exact { value: 1.0 },
            Side::Exact { value: 1.0 },
            Tolerance::Absolute { tol: 1e-8 },
        );
        assert_eq!(r.csv_record().len(), IdentityReport::CSV_HEADER.len());
        assert_eq!(r.csv_record()[9], "pass");
    }
}
