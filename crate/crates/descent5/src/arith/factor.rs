//! Integer factorization: trial division over a sieved prime table, then
//! Brent-cycle Pollard rho on composite cofactors, with Miller-Rabin (40
//! rounds) as the primality test.

use super::ArithError;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

const TRIAL_BOUND: u64 = 1_000_000;

/// Nonzero integer as an ordered list of `(prime, exponent)` pairs for its
/// absolute value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Product of `p^e`, equal to the absolute value of the factored input.
    pub fn reconstruct(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, &(p, e)| acc * BigInt::from(p).pow(e))
    }
}

/// Sieved primes up to one million, shared by factorization and point
/// counting.
pub fn small_primes() -> &'static [u32] {
    prime_table()
}

fn prime_table() -> &'static [u32] {
    static TABLE: OnceLock<Vec<u32>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = TRIAL_BOUND as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2usize;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (2..=n).filter(|&i| sieve[i]).map(|i| i as u32).collect()
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    // Deterministic witness set for u64.
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with 40 fixed-seed rounds (deterministic for u64 inputs).
pub fn is_prime(n: &BigInt) -> bool {
    let n = n.abs();
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigInt::one();
    let two = BigInt::from(2);
    let n_minus_1 = &n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d: BigInt = &n_minus_1 >> s;
    let mut base = BigInt::from(2);
    'round: for _ in 0..40 {
        let a = base.modpow(&one, &n);
        base = &base * BigInt::from(0x5DEECE66Du64) + BigInt::from(11);
        if a < two || a >= n_minus_1 {
            continue;
        }
        let mut x = a.modpow(&d, &n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, &n);
            if x == n_minus_1 {
                continue 'round;
            }
        }
        return false;
    }
    true
}

/// Brent-variant Pollard rho; returns a nontrivial factor of odd composite `n`.
fn brent_rho(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut d = BigInt::one();
        let mut saved = x.clone();
        let mut power = 1u64;
        let mut lam = 1u64;
        let mut count = 0u32;
        let mut q = BigInt::one();
        while d.is_one() {
            x = (&x * &x + &c) % n;
            lam += 1;
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break; // cycle without factor; restart with next c
            }
            q = (&q * &diff) % n;
            count += 1;
            if count == 64 {
                d = num_integer::Integer::gcd(&q, n);
                count = 0;
                saved = x.clone();
            }
            if lam == power * 2 {
                y = x.clone();
                power *= 2;
            }
        }
        if d.is_one() {
            c += &one;
            continue;
        }
        if d != *n {
            return d;
        }
        // Batch overshoot: redo from the last checkpoint one step at a time.
        let mut x = saved;
        loop {
            x = (&x * &x + &c) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            let d = num_integer::Integer::gcd(&diff, n);
            if d.is_one() {
                continue;
            }
            if d != *n {
                return d;
            }
            break;
        }
        c += &one;
    }
}

/// Factor a nonzero integer into primes of its absolute value.
pub fn factorize(n: &BigInt) -> Result<PrimeFactorization, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let mut m = n.abs();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for &p in prime_table() {
        let p = p as u64;
        if m.is_one() {
            break;
        }
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = num_integer::Integer::div_rem(&m, &pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    let mut pending = vec![m];
    let mut large: Vec<BigInt> = Vec::new();
    while let Some(m) = pending.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            large.push(m);
            continue;
        }
        let d = brent_rho(&m);
        let q = &m / &d;
        pending.push(d);
        pending.push(q);
    }
    for p in large {
        let p = p
            .to_u64()
            .expect("prime factor exceeds u64; outside supported input range");
        match factors.iter_mut().find(|(q, _)| *q == p) {
            Some((_, e)) => *e += 1,
            None => factors.push((p, 1)),
        }
    }
    factors.sort_unstable();
    Ok(PrimeFactorization { factors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_small() {
        let f = factorize(&BigInt::from(125)).unwrap();
        assert_eq!(f.factors(), &[(5, 3)]);
    }

    #[test]
    fn discriminant_factor_for_7_1() {
        // u^2 + 11uv - v^2 at (7, 1)
        let b = 7 * 7 + 11 * 7 - 1;
        assert_eq!(b, 125);
        let f = factorize(&BigInt::from(b)).unwrap();
        assert_eq!(f.factors(), &[(5, 3)]);
    }

    #[test]
    fn sign_ignored() {
        let f = factorize(&BigInt::from(-11)).unwrap();
        assert_eq!(f.factors(), &[(11, 1)]);
        assert_eq!(f.reconstruct(), BigInt::from(11));
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(factorize(&BigInt::zero()), Err(ArithError::ZeroInput));
    }

    #[test]
    fn semiprime_beyond_trial_range() {
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(1_000_033u64);
        let f = factorize(&(&p * &q)).unwrap();
        assert_eq!(f.factors(), &[(1_000_003, 1), (1_000_033, 1)]);
    }

    #[test]
    fn reconstruction_roundtrip_randomized() {
        // Deterministic LCG over inputs up to 1e12.
        let mut state = 0x2545F4914F6CDD1Du64;
        for _ in 0..2_000 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let n = (state >> 20) % 1_000_000_000_000 + 2;
            let f = factorize(&BigInt::from(n)).unwrap();
            assert_eq!(f.reconstruct(), BigInt::from(n), "n = {n}");
            for &(p, _) in f.factors() {
                assert!(is_prime_u64(p), "claimed factor {p} not prime");
            }
        }
    }
}
