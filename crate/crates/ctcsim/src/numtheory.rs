//! Plain trial-division number theory, used as an independent oracle.
//!
//! Nothing in this module touches the DSL or the interpreter. It exists so
//! that fixed-point sets computed by enumeration can be cross-checked against
//! divisor sets computed by ordinary arithmetic.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumTheoryError {
    #[error("invalid input {0}: expected an integer >= 2")]
    InvalidInput(i64),
}

/// Divisor structure of a single integer `n >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorView {
    pub n: i64,
    /// All divisors of `n` strictly greater than 1, ascending. Always
    /// contains `n` itself.
    pub divisors_gt1: Vec<i64>,
    /// Smallest d in [2, isqrt(n)] dividing n, or `n` when none exists.
    pub smallest_nontrivial: i64,
    pub is_prime: bool,
}

impl FactorView {
    /// Divisors d with 1 < d < n, ascending.
    pub fn proper_nontrivial_divisors(&self) -> Vec<i64> {
        self.divisors_gt1
            .iter()
            .copied()
            .filter(|&d| d < self.n)
            .collect()
    }
}

/// Largest k >= 0 with k*k <= n. Pure integer binary search.
pub fn isqrt(n: i64) -> i64 {
    assert!(n >= 0, "isqrt of negative number");
    let n = n as u128;
    let (mut lo, mut hi) = (0u128, 1u128 << 32);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if mid * mid <= n {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo as i64
}

/// Compute the divisor view of `n` by trial division up to isqrt(n),
/// pairing each small divisor d with n/d.
pub fn factor_view(n: i64) -> Result<FactorView, NumTheoryError> {
    if n < 2 {
        return Err(NumTheoryError::InvalidInput(n));
    }
    let root = isqrt(n);
    let mut divisors = Vec::new();
    let mut smallest_nontrivial = n;
    for d in 2..=root {
        if n % d == 0 {
            if smallest_nontrivial == n {
                smallest_nontrivial = d;
            }
            divisors.push(d);
            if d != n / d {
                divisors.push(n / d);
            }
        }
    }
    divisors.push(n);
    divisors.sort_unstable();
    divisors.dedup();
    let is_prime = divisors == [n];
    Ok(FactorView {
        n,
        divisors_gt1: divisors,
        smallest_nontrivial,
        is_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen() {
        let v = factor_view(15).unwrap();
        assert_eq!(v.divisors_gt1, vec![3, 5, 15]);
        assert_eq!(v.smallest_nontrivial, 3);
        assert!(!v.is_prime);
        assert_eq!(v.proper_nontrivial_divisors(), vec![3, 5]);
    }

    #[test]
    fn seven() {
        let v = factor_view(7).unwrap();
        assert_eq!(v.divisors_gt1, vec![7]);
        assert_eq!(v.smallest_nontrivial, 7);
        assert!(v.is_prime);
        assert!(v.proper_nontrivial_divisors().is_empty());
    }

    #[test]
    fn four() {
        let v = factor_view(4).unwrap();
        assert_eq!(v.divisors_gt1, vec![2, 4]);
        assert_eq!(v.smallest_nontrivial, 2);
        assert!(!v.is_prime);
    }

    #[test]
    fn rejects_small_inputs() {
        assert_eq!(factor_view(1), Err(NumTheoryError::InvalidInput(1)));
        assert_eq!(factor_view(0), Err(NumTheoryError::InvalidInput(0)));
        assert_eq!(factor_view(-6), Err(NumTheoryError::InvalidInput(-6)));
    }

    #[test]
    fn isqrt_exact_at_squares() {
        for k in 0..2000i64 {
            assert_eq!(isqrt(k * k), k);
            if k > 0 {
                assert_eq!(isqrt(k * k - 1), k - 1);
                assert_eq!(isqrt(k * k + 1), k);
            }
        }
        assert_eq!(isqrt(i64::MAX), 3037000499);
    }

    // Exhaustive divisor check: both inclusion directions, for every n up
    // to 10^4.
    #[test]
    fn divisor_sets_are_exact_up_to_ten_thousand() {
        for n in 2..=10_000i64 {
            let v = factor_view(n).unwrap();
            for &d in &v.divisors_gt1 {
                assert!(d > 1 && n % d == 0, "bogus divisor {d} of {n}");
            }
            for d in 2..=n {
                if n % d == 0 {
                    assert!(
                        v.divisors_gt1.binary_search(&d).is_ok(),
                        "{d} missing from divisors of {n}"
                    );
                }
            }
            assert_eq!(v.is_prime, v.divisors_gt1 == [n]);
            assert_eq!(v.smallest_nontrivial == n, v.is_prime);
        }
    }
}
