//! Exact arbitrary-precision arithmetic, integer factorization, GF(5) linear
//! algebra, and classes in Q*/Q*^5 supported on a finite prime set.

pub mod f5;
pub mod factor;
pub mod poly;
pub mod qs5;

pub use f5::F5Matrix;
pub use factor::{factorize, is_prime, small_primes, PrimeFactorization};
pub use qs5::{qs5_class, QS5Vector};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Arbitrary-precision rational with reduced, positive-denominator invariant
/// maintained by `num_rational`.
pub type BigRational = num_rational::BigRational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("factorize: input must be nonzero")]
    ZeroInput,
    #[error("class of {0} has a prime outside the support set with valuation not divisible by 5")]
    SupportViolation(String),
}

/// Truncated integer square root; `None` when `n < 0`.
pub fn sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact fifth root of `n` (sign-preserving), if one exists.
pub fn fifth_root_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    let r = n.nth_root(5);
    (r.pow(5) == *n).then_some(r)
}

/// True when `q` is a fifth power in Q* (sign is immaterial: -1 = (-1)^5).
pub fn is_fifth_power(q: &BigRational) -> bool {
    fifth_root_exact(&q.numer().abs()).is_some() && fifth_root_exact(&q.denom().abs()).is_some()
}

/// p-adic valuation of a nonzero rational.
pub fn rational_valuation(x: &BigRational, p: u64) -> i64 {
    int_valuation(x.numer(), p) - int_valuation(x.denom(), p)
}

/// p-adic valuation of a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, &p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn integer_roots() {
        assert_eq!(sqrt_exact(&BigInt::from(144)), Some(BigInt::from(12)));
        assert_eq!(sqrt_exact(&BigInt::from(145)), None);
        assert_eq!(sqrt_exact(&BigInt::from(-4)), None);
        assert_eq!(fifth_root_exact(&BigInt::from(-32)), Some(BigInt::from(-2)));
        assert_eq!(fifth_root_exact(&BigInt::from(33)), None);
    }

    #[test]
    fn fifth_powers_in_q() {
        assert!(is_fifth_power(&BigRational::new(BigInt::from(32), BigInt::from(-243))));
        assert!(is_fifth_power(&BigRational::one()));
        assert!(!is_fifth_power(&BigRational::new(BigInt::from(2), BigInt::one())));
    }

    #[test]
    fn valuations() {
        let x = BigRational::new(BigInt::from(8), BigInt::from(45));
        assert_eq!(rational_valuation(&x, 2), 3);
        assert_eq!(rational_valuation(&x, 3), -2);
        assert_eq!(rational_valuation(&x, 5), -1);
        assert_eq!(rational_valuation(&x, 7), 0);
    }
}
