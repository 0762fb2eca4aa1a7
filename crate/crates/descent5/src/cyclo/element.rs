//! Elements of Q(zeta_5) in the power basis 1, z, z^2, z^3 with
//! z^4 = -1 - z - z^2 - z^3.

use crate::arith::BigRational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct CycloElement {
    coeffs: [BigRational; 4],
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {}*z + {}*z^2 + {}*z^3)",
            self.coeffs[0], self.coeffs[1], self.coeffs[2], self.coeffs[3]
        )
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl CycloElement {
    pub fn new(coeffs: [BigRational; 4]) -> Self {
        CycloElement { coeffs }
    }

    pub fn from_int_coeffs(c: [i64; 4]) -> Self {
        CycloElement {
            coeffs: c.map(|x| BigRational::from(BigInt::from(x))),
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycloElement {
            coeffs: [q, BigRational::zero(), BigRational::zero(), BigRational::zero()],
        }
    }

    pub fn from_bigint_coeffs(c: [BigInt; 4]) -> Self {
        CycloElement {
            coeffs: c.map(BigRational::from),
        }
    }

    pub fn zeta() -> Self {
        Self::from_int_coeffs([0, 1, 0, 0])
    }

    /// sqrt(5) = 1 + 2(z + z^4) = -1 - 2z^2 - 2z^3.
    pub fn sqrt5() -> Self {
        Self::from_int_coeffs([-1, 0, -2, -2])
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn rational_part(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Image under the field automorphism sending z to z^k, k in 1..=4.
    pub fn conjugate(&self, k: usize) -> CycloElement {
        assert!((1..=4).contains(&k));
        // exponents of z^(j*k) reduced by z^4 = -(1 + z + z^2 + z^3)
        let mut out = [
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (j * k) % 5;
            if e == 4 {
                for slot in out.iter_mut() {
                    *slot -= c;
                }
            } else {
                out[e] += c;
            }
        }
        CycloElement { coeffs: out }
    }

    /// Field norm to Q: product of all four conjugates.
    pub fn norm(&self) -> BigRational {
        let prod = self.clone() * self.conjugate(2) * self.conjugate(3) * self.conjugate(4);
        prod.rational_part()
            .expect("norm of a field element must be rational")
    }

    pub fn inverse(&self) -> CycloElement {
        let cof = self.conjugate(2) * self.conjugate(3) * self.conjugate(4);
        let n = (self.clone() * cof.clone())
            .rational_part()
            .expect("norm must be rational");
        assert!(!n.is_zero(), "inverse of zero in Q(zeta_5)");
        cof.scale(&(BigRational::one() / n))
    }

    pub fn scale(&self, c: &BigRational) -> CycloElement {
        CycloElement {
            coeffs: self.coeffs.clone().map(|x| x * c),
        }
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()))
    }

    /// Decompose an element of the real quadratic subfield Q(sqrt 5) as
    /// (s, t) with value s + t*sqrt(5); `None` if outside that subfield.
    pub fn as_sqrt5_pair(&self) -> Option<(BigRational, BigRational)> {
        if !self.coeffs[1].is_zero() || self.coeffs[2] != self.coeffs[3] {
            return None;
        }
        // a + b(z^2 + z^3) with z^2 + z^3 = (-1 - sqrt5)/2
        let a = &self.coeffs[0];
        let b = &self.coeffs[2];
        let two = BigRational::from(BigInt::from(2));
        Some((a - b / &two, -b / &two))
    }

    pub fn from_sqrt5_pair(s: &BigRational, t: &BigRational) -> CycloElement {
        // write s + t*sqrt5 = a + b(z^2 + z^3); then a - b/2 = s and -b/2 = t
        let b = -t * BigRational::from(BigInt::from(2));
        let a = s - t;
        CycloElement::new([a, BigRational::zero(), b.clone(), b])
    }

    /// Exact square root when it exists in K; input and output may lie in the
    /// full field but the input must belong to the Q(sqrt5) subfield (the
    /// only case the codebase needs).
    pub fn sqrt(&self) -> Option<CycloElement> {
        if self.coeffs.iter().all(Zero::is_zero) {
            return Some(CycloElement::from_int_coeffs([0, 0, 0, 0]));
        }
        let (s, t) = self.as_sqrt5_pair()?;
        // Branch 1: square root inside Q(sqrt5).
        if let Some((p, q)) = sqrt_in_q_sqrt5(&s, &t) {
            return Some(CycloElement::from_sqrt5_pair(&p, &q));
        }
        // Branch 2: root of the form B*(z - beta/2) with beta = z + z^4;
        // then root^2 = B^2 (beta^2 - 4)/4, so B^2 = 4*self/(beta^2 - 4).
        // beta^2 - 4 = (-5 - sqrt5)/2.
        let num = CycloElement::from_rational(BigRational::from(BigInt::from(4))) * self.clone();
        let den = CycloElement::from_sqrt5_pair(
            &BigRational::new(BigInt::from(-5), BigInt::from(2)),
            &BigRational::new(BigInt::from(-1), BigInt::from(2)),
        );
        let b_sq = num * den.inverse();
        let (bs, bt) = b_sq.as_sqrt5_pair()?;
        let (p, q) = sqrt_in_q_sqrt5(&bs, &bt)?;
        let b = CycloElement::from_sqrt5_pair(&p, &q);
        // beta = z + z^4 = -1 - z^2 - z^3
        let beta = CycloElement::from_int_coeffs([-1, 0, -1, -1]);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let root = CycloElement::zeta() * b.clone() - beta.scale(&half) * b;
        debug_assert_eq!(root.clone() * root.clone(), *self);
        Some(root)
    }

    pub fn pow(&self, e: u32) -> CycloElement {
        let mut acc = CycloElement::from_rational(BigRational::one());
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

/// Square root of s + t*sqrt5 inside Q(sqrt5) itself, as a (p, q) pair.
fn sqrt_in_q_sqrt5(s: &BigRational, t: &BigRational) -> Option<(BigRational, BigRational)> {
    let five = BigRational::from(BigInt::from(5));
    let two = BigRational::from(BigInt::from(2));
    if t.is_zero() {
        if let Some(r) = rational_sqrt(s) {
            return Some((r, BigRational::zero()));
        }
        if let Some(r) = rational_sqrt(&(s / &five)) {
            return Some((BigRational::zero(), r));
        }
        return None;
    }
    // p^2 + 5 q^2 = s, 2 p q = t: p^2 solves X^2 - sX + 5t^2/4 = 0.
    let disc = s * s - &five * t * t;
    let delta = rational_sqrt(&disc)?;
    for sign in [1i64, -1] {
        let cand = (s + BigRational::from(BigInt::from(sign)) * &delta) / &two;
        if let Some(p) = rational_sqrt(&cand) {
            if p.is_zero() {
                continue;
            }
            let q = t / (&two * &p);
            // verify
            if &p * &p + &five * &q * &q == *s {
                return Some((p, q));
            }
        }
    }
    None
}

pub(super) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = crate::arith::sqrt_exact(q.numer())?;
    let d = crate::arith::sqrt_exact(q.denom())?;
    Some(BigRational::new(n, d))
}

impl Add for CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: CycloElement) -> CycloElement {
        let mut out = self.coeffs;
        for (a, b) in out.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        CycloElement { coeffs: out }
    }
}

impl Sub for CycloElement {
    type Output = CycloElement;
    fn sub(self, rhs: CycloElement) -> CycloElement {
        let mut out = self.coeffs;
        for (a, b) in out.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
        CycloElement { coeffs: out }
    }
}

impl Neg for CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement {
            coeffs: self.coeffs.map(|c| -c),
        }
    }
}

impl Mul for CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: CycloElement) -> CycloElement {
        let mut raw = [
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        // reduce z^4 = -(1+z+z^2+z^3), z^5 = 1, z^6 = z
        let mut out = [
            raw[0].clone(),
            raw[1].clone(),
            raw[2].clone(),
            raw[3].clone(),
        ];
        for slot in out.iter_mut() {
            *slot -= &raw[4];
        }
        out[0] += &raw[5];
        out[1] += &raw[6];
        CycloElement { coeffs: out }
    }
}

impl Div for CycloElement {
    type Output = CycloElement;
    fn div(self, rhs: CycloElement) -> CycloElement {
        self * rhs.inverse()
    }
}

impl Zero for CycloElement {
    fn zero() -> Self {
        CycloElement::from_int_coeffs([0, 0, 0, 0])
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for CycloElement {
    fn one() -> Self {
        CycloElement::from_int_coeffs([1, 0, 0, 0])
    }
}
