use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::combinatorics::binomial;

/// Polynomial with arbitrary-precision integer coefficients.
///
/// `coefficients()[i]` is the coefficient of `x^i`. The zero polynomial has
/// no coefficients; otherwise the last coefficient is non-zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut p = Self {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new([c.into()])
    }

    /// `c * x^degree`.
    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree];
        coeffs.push(c.into());
        Self::new(coeffs)
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero above the degree).
    pub fn coefficient(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// `p(x + shift)`.
    pub fn shift(&self, shift: i64) -> Self {
        let shift = BigInt::from(shift);
        let mut out = vec![BigInt::zero(); self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // c (x + s)^i = c sum_j binom(i, j) s^(i - j) x^j
            let mut s_pow = BigInt::one();
            for j in (0..=i).rev() {
                out[j] += c * BigInt::from(binomial(i, j)) * &s_pow;
                s_pow *= &shift;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, exponent: usize) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor))
    }

    /// Human-readable form in the given variable name, highest degree last.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                out.push_str(&abs.to_string());
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => {
                    out.push_str(var);
                    out.push('^');
                    out.push_str(&i.to_string());
                }
            }
        }
        out
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

/// Serialized as the list of decimal coefficient strings (exact for any size).
impl Serialize for IntegerPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl Add for &IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn add(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntegerPolynomial::new((0..len).map(|i| self.coefficient(i) + rhs.coefficient(i)))
    }
}

impl Add for IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn add(self, rhs: IntegerPolynomial) -> IntegerPolynomial {
        &self + &rhs
    }
}

impl Neg for &IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn neg(self) -> IntegerPolynomial {
        IntegerPolynomial::new(self.coeffs.iter().map(|c| -c))
    }
}

impl Sub for &IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn sub(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        self + &(-rhs)
    }
}

impl Sub for IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn sub(self, rhs: IntegerPolynomial) -> IntegerPolynomial {
        &self - &rhs
    }
}

impl Mul for &IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn mul(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntegerPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntegerPolynomial::new(out)
    }
}

impl Mul for IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn mul(self, rhs: IntegerPolynomial) -> IntegerPolynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for IntegerPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| &acc + &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::new(c.iter().copied())
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(poly(&[1, 2, 0, 0]).coefficients().len(), 2);
        assert!(poly(&[0, 0]).is_zero());
        assert_eq!(poly(&[0, 0]).degree(), None);
        assert_eq!(poly(&[3, 0, 1]).degree(), Some(2));
    }

    #[test]
    fn arithmetic() {
        let a = poly(&[1, 1]);
        assert_eq!(&a * &a, poly(&[1, 2, 1]));
        assert_eq!(a.pow(3), poly(&[1, 3, 3, 1]));
        assert_eq!(&a - &a, IntegerPolynomial::zero());
        assert_eq!(IntegerPolynomial::x().shift(2), poly(&[2, 1]));
        assert_eq!(poly(&[0, 0, 1]).shift(-1), poly(&[1, -2, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[0, 1, 7, 6, 1]).display_in("λ"), "λ + 7λ^2 + 6λ^3 + λ^4");
        assert_eq!(poly(&[-1, 0, -2]).to_string(), "-1 - 2x^2");
        assert_eq!(IntegerPolynomial::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn shift_matches_evaluation(
            c in proptest::collection::vec(-20i64..20, 0..6),
            s in -5i64..5,
            x in -5i64..5,
        ) {
            let p = poly(&c);
            let shifted = p.shift(s);
            prop_assert_eq!(shifted.eval(&BigInt::from(x)), p.eval(&BigInt::from(x + s)));
        }

        #[test]
        fn product_evaluates_to_product(
            a in proptest::collection::vec(-20i64..20, 0..5),
            b in proptest::collection::vec(-20i64..20, 0..5),
            x in -6i64..6,
        ) {
            let (pa, pb) = (poly(&a), poly(&b));
            let x = BigInt::from(x);
            prop_assert_eq!((&pa * &pb).eval(&x), pa.eval(&x) * pb.eval(&x));
        }
    }
}
