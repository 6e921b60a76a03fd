use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::IntegerPolynomial;
use crate::error::{Error, Result};

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// `binom(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Rows `0..=n_max` of the Stirling triangle of the second kind;
/// `table[n][k] = S(n, k)` for `k <= n`.
pub fn stirling2_table(n_max: usize) -> Vec<Vec<BigUint>> {
    let mut table: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
    table.push(vec![BigUint::one()]);
    for n in 1..=n_max {
        let prev = &table[n - 1];
        let mut row = vec![BigUint::zero(); n + 1];
        for k in 1..=n {
            let stay = if k < n { &prev[k] * k } else { BigUint::zero() };
            row[k] = stay + &prev[k - 1];
        }
        table.push(row);
    }
    table
}

/// Stirling number of the second kind `S(n, k)`: partitions of an `n`-set
/// into `k` non-empty blocks. Returns zero for `k > n`.
pub fn stirling2(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    stirling2_table(n).swap_remove(n).swap_remove(k)
}

/// `S_2(n, k)`: partitions of an `n`-set into `k` blocks of size at least 2.
///
/// Uses `S_2(n, k) = k S_2(n-1, k) + (n-1) S_2(n-2, k-1)`.
pub fn stirling2_no_singletons(n: usize, k: usize) -> BigUint {
    // rows[m][j] = S_2(m, j)
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut row = vec![BigUint::zero(); k + 1];
        if m == 0 {
            row[0] = BigUint::one();
        } else if m >= 2 {
            for j in 1..=k {
                row[j] = &rows[m - 1][j] * j + &rows[m - 2][j - 1] * (m - 1);
            }
        }
        rows.push(row);
    }
    rows.swap_remove(n).swap_remove(k)
}

/// Bell number `B(n)`, the total number of partitions of an `n`-set.
pub fn bell_number(n: usize) -> BigUint {
    stirling2_table(n).swap_remove(n).into_iter().sum()
}

/// `B_n(x) = sum_k S(n, k) x^k`.
pub fn bell_polynomial(n: usize) -> IntegerPolynomial {
    IntegerPolynomial::new(
        stirling2_table(n)
            .swap_remove(n)
            .into_iter()
            .map(BigInt::from),
    )
}

/// Expectation of `p(Z)` for `Z ~ Poisson(x)`, as a polynomial in `x`.
///
/// Uses `E[Z^j] = B_j(x)`.
pub fn poisson_expectation(p: &IntegerPolynomial) -> IntegerPolynomial {
    let Some(degree) = p.degree() else {
        return IntegerPolynomial::zero();
    };
    let table = stirling2_table(degree);
    p.coefficients()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| {
            let bell = IntegerPolynomial::new(table[j].iter().cloned().map(BigInt::from));
            bell.scale(c)
        })
        .sum()
}

/// `S(n, k)` through the sum over multiplicity vectors `(r_1, ..., r_n)`
/// with `sum m r_m = n` and `sum r_m = k` of
/// `n! prod_m 1 / ((m!)^{r_m} r_m!)`, carried out in exact rationals.
pub fn stirling_from_compositions(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Ok(BigUint::zero());
    }
    if n == 0 {
        return Ok(BigUint::one());
    }
    if k == 0 {
        return Ok(BigUint::zero());
    }
    // A block cannot exceed n - k + 1 elements when there are k blocks.
    let max_size = n - k + 1;
    let mut total = BigRational::zero();
    accumulate_compositions(max_size, n, k, BigRational::one(), &mut total);
    let scaled = total * BigRational::from_integer(BigInt::from(factorial(n)));
    if !scaled.is_integer() {
        return Err(Error::Consistency {
            what: format!("composition sum for S({n}, {k}) is not an integer"),
            left: scaled.to_string(),
            right: "integer".into(),
        });
    }
    scaled
        .to_integer()
        .to_biguint()
        .ok_or_else(|| Error::Consistency {
            what: format!("composition sum for S({n}, {k}) is negative"),
            left: "negative".into(),
            right: "non-negative".into(),
        })
}

/// Chooses `r_m` for `m = size, size - 1, ..., 1` given the remaining weight
/// `sum m r_m` and the remaining block count `sum r_m`.
fn accumulate_compositions(
    size: usize,
    weight: usize,
    blocks: usize,
    product: BigRational,
    total: &mut BigRational,
) {
    if weight == 0 && blocks == 0 {
        *total += product;
        return;
    }
    if size == 0 || weight == 0 || blocks == 0 {
        return;
    }
    let size_factorial = BigRational::from_integer(BigInt::from(factorial(size)));
    let mut term = product;
    let mut r = 0usize;
    loop {
        accumulate_compositions(size - 1, weight - r * size, blocks - r, term.clone(), total);
        r += 1;
        if r * size > weight || r > blocks {
            break;
        }
        // multiply by 1 / (m! * r)
        term = term / (size_factorial.clone() * BigRational::from_integer(BigInt::from(r)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(x: BigUint) -> u64 {
        u64::try_from(x).unwrap()
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(u(stirling2(4, 2)), 7);
        assert_eq!(u(stirling2(6, 3)), 90);
        assert_eq!(u(stirling2(5, 3)), 25);
        for n in 0..10 {
            assert_eq!(u(stirling2(n, n)), 1);
        }
        assert_eq!(u(stirling2(3, 5)), 0);
        assert_eq!(u(stirling2(3, 0)), 0);
        assert_eq!(u(stirling2(0, 0)), 1);
    }

    #[test]
    fn no_singleton_examples() {
        assert_eq!(u(stirling2_no_singletons(2, 1)), 1);
        assert_eq!(u(stirling2_no_singletons(4, 2)), 3);
        assert_eq!(u(stirling2_no_singletons(3, 2)), 0);
        assert_eq!(u(stirling2_no_singletons(6, 3)), 15);
        assert_eq!(u(stirling2_no_singletons(0, 0)), 1);
        assert_eq!(u(stirling2_no_singletons(1, 0)), 0);
        assert_eq!(u(stirling2_no_singletons(1, 1)), 0);
    }

    #[test]
    fn bell_polynomials() {
        assert_eq!(bell_polynomial(0), IntegerPolynomial::one());
        assert_eq!(bell_polynomial(4), IntegerPolynomial::new([0, 1, 7, 6, 1]));
        assert_eq!(
            bell_polynomial(6),
            IntegerPolynomial::new([0, 1, 31, 90, 65, 15, 1])
        );
        assert_eq!(u(bell_number(10)), 115_975);
    }

    #[test]
    fn composition_form() {
        assert_eq!(u(stirling_from_compositions(4, 2).unwrap()), 7);
        assert_eq!(u(stirling_from_compositions(5, 3).unwrap()), 25);
        for n in 1..12 {
            assert_eq!(u(stirling_from_compositions(n, 1).unwrap()), 1);
        }
        assert_eq!(u(stirling_from_compositions(0, 0).unwrap()), 1);
        assert_eq!(u(stirling_from_compositions(2, 3).unwrap()), 0);
    }

    #[test]
    fn poisson_expectation_of_square() {
        // E[Z^2] = x + x^2, E[Z(Z-1)] = x^2
        let z2 = IntegerPolynomial::new([0, 0, 1]);
        assert_eq!(poisson_expectation(&z2), IntegerPolynomial::new([0, 1, 1]));
        let falling = IntegerPolynomial::new([0, -1, 1]);
        assert_eq!(poisson_expectation(&falling), IntegerPolynomial::new([0, 0, 1]));
    }
}
