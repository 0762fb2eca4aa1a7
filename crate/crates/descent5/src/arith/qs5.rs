//! Exponent vectors representing classes in Q*/Q*^5 with 5-divisible
//! valuations outside a fixed prime support set.

use super::{fifth_root_exact, rational_valuation, ArithError, BigRational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Class of a nonzero rational in Q*/Q*^5, recorded as valuations mod 5 at an
/// ordered support set of primes. The sign carries no information since
/// -1 = (-1)^5.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QS5Vector {
    support: Vec<u64>,
    exponents: Vec<u8>,
}

impl QS5Vector {
    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exponents
    }

    pub fn is_zero_class(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn zero(support: &[u64]) -> Self {
        QS5Vector {
            support: support.to_vec(),
            exponents: vec![0; support.len()],
        }
    }

    pub fn from_parts(support: Vec<u64>, exponents: Vec<u8>) -> Self {
        assert_eq!(support.len(), exponents.len());
        assert!(support.windows(2).all(|w| w[0] < w[1]), "support not sorted");
        QS5Vector {
            support,
            exponents: exponents.into_iter().map(|e| e % 5).collect(),
        }
    }

    /// Exponent at `p`, zero when `p` is outside the support.
    pub fn exponent_at(&self, p: u64) -> u8 {
        self.support
            .iter()
            .position(|&q| q == p)
            .map_or(0, |i| self.exponents[i])
    }

    /// Row of this class against an enclosing ordered prime set.
    pub fn row_over(&self, primes: &[u64]) -> Vec<u8> {
        primes.iter().map(|&p| self.exponent_at(p)).collect()
    }
}

/// Image of a nonzero rational in Q(S,5). The part of `x` supported outside
/// `support` must be a fifth power; this is verified by exact fifth-root
/// extraction of the stripped cofactor, so no factorization of large
/// cofactors ever happens.
pub fn qs5_class(x: &BigRational, support: &[u64]) -> Result<QS5Vector, ArithError> {
    assert!(!x.is_zero(), "qs5_class of zero");
    assert!(support.windows(2).all(|w| w[0] < w[1]), "support not sorted");
    let mut exponents = Vec::with_capacity(support.len());
    let mut numer = x.numer().abs();
    let mut denom = x.denom().abs();
    for &p in support {
        let v = rational_valuation(x, p);
        exponents.push(v.rem_euclid(5) as u8);
        let pb = BigInt::from(p);
        while (&numer % &pb).is_zero() {
            numer /= &pb;
        }
        while (&denom % &pb).is_zero() {
            denom /= &pb;
        }
    }
    if fifth_root_exact(&numer).is_none() || fifth_root_exact(&denom).is_none() {
        return Err(ArithError::SupportViolation(x.to_string()));
    }
    Ok(QS5Vector {
        support: support.to_vec(),
        exponents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn identity_class() {
        let v = qs5_class(&BigRational::one(), &[5, 11]).unwrap();
        assert_eq!(v.exponents(), &[0, 0]);
        assert!(v.is_zero_class());
    }

    #[test]
    fn fifth_power_is_trivial() {
        let v = qs5_class(&rat(32, 1), &[2]).unwrap();
        assert_eq!(v.exponents(), &[0]);
    }

    #[test]
    fn inverse_prime() {
        // v_7(1/7) = -1 = 4 mod 5
        let v = qs5_class(&rat(1, 7), &[5, 7]).unwrap();
        assert_eq!(v.exponents(), &[0, 4]);
    }

    #[test]
    fn support_violation_detected() {
        assert!(qs5_class(&rat(3, 1), &[5, 7]).is_err());
        // 3^5 is fine without 3 in the support
        assert!(qs5_class(&rat(243, 1), &[5, 7]).is_ok());
    }

    #[test]
    fn homomorphism_on_random_supported_rationals() {
        let support = [2u64, 3, 5, 7];
        let mut state = 0xD1B54A32D192ED03u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let make = |s: &mut dyn FnMut() -> u64| {
                let mut x = BigRational::one();
                for &p in &support {
                    let e = (s() % 11) as i64 - 5;
                    let pw = BigRational::from(BigInt::from(p)).pow(e as i32);
                    x *= pw;
                }
                if s() % 2 == 0 {
                    x = -x;
                }
                x
            };
            let a = make(&mut next);
            let b = make(&mut next);
            let ca = qs5_class(&a, &support).unwrap();
            let cb = qs5_class(&b, &support).unwrap();
            let cab = qs5_class(&(&a * &b), &support).unwrap();
            let sum: Vec<u8> = ca
                .exponents()
                .iter()
                .zip(cb.exponents())
                .map(|(&x, &y)| (x + y) % 5)
                .collect();
            assert_eq!(cab.exponents(), &sum[..]);
            let fifth = qs5_class(&(&a * &a * &a * &a * &a), &support).unwrap();
            assert!(fifth.is_zero_class());
        }
    }
}
