//! Reduction of curves, points, isomorphisms, and isogeny kernel data to
//! F_p, used to verify the dual-composite identity on many points cheaply.

use super::velu::VeluIsogeny;
use crate::arith::BigRational;
use crate::curve::model::{CurvePoint, WeierstrassIsomorphism, WeierstrassModel};
use crate::cyclo::CycloElement;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub fn mod_p_rat(q: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = num_integer::Integer::mod_floor(q.denom(), &pb).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = num_integer::Integer::mod_floor(q.numer(), &pb).to_u64()?;
    Some(num * pow_mod(den, p - 2, p) % p)
}

/// Reduce a cyclotomic element at the split prime (p, zeta - root).
pub fn mod_p_cyclo(z: &CycloElement, p: u64, root: u64) -> Option<u64> {
    let mut acc = 0u64;
    let mut pw = 1u64;
    for c in z.coeffs() {
        acc = (acc + mod_p_rat(c, p)? * pw) % p;
        pw = pw * root % p;
    }
    Some(acc)
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModCurve {
    pub p: u64,
    pub a: [u64; 5], // a1, a2, a3, a4, a6
}

pub type ModPoint = Option<(u64, u64)>; // None = infinity

impl ModCurve {
    pub fn from_rational(e: &WeierstrassModel<BigRational>, p: u64) -> Option<Self> {
        Some(ModCurve {
            p,
            a: [
                mod_p_rat(&e.a1, p)?,
                mod_p_rat(&e.a2, p)?,
                mod_p_rat(&e.a3, p)?,
                mod_p_rat(&e.a4, p)?,
                mod_p_rat(&e.a6, p)?,
            ],
        })
    }

    pub fn from_cyclo(e: &WeierstrassModel<CycloElement>, p: u64, root: u64) -> Option<Self> {
        Some(ModCurve {
            p,
            a: [
                mod_p_cyclo(&e.a1, p, root)?,
                mod_p_cyclo(&e.a2, p, root)?,
                mod_p_cyclo(&e.a3, p, root)?,
                mod_p_cyclo(&e.a4, p, root)?,
                mod_p_cyclo(&e.a6, p, root)?,
            ],
        })
    }

    pub fn discriminant_is_zero(&self) -> bool {
        let p = self.p as i128;
        let [a1, a2, a3, a4, a6] = self.a.map(|x| x as i128);
        let b2 = (a1 * a1 + 4 * a2) % p;
        let b4 = (2 * a4 + a1 * a3) % p;
        let b6 = (a3 * a3 + 4 * a6) % p;
        let b8 = (a1 * a1 % p * a6 + 4 * a2 * a6 % p - a1 * a3 % p * a4 + a2 * a3 % p * a3
            - a4 * a4)
            .rem_euclid(p);
        let disc = (-b2 * b2 % p * b8 - 8 * b4 * b4 % p * b4 - 27 * b6 * b6
            + 9 * b2 * b4 % p * b6)
            .rem_euclid(p);
        disc == 0
    }

    pub fn contains(&self, pt: ModPoint) -> bool {
        let Some((x, y)) = pt else { return true };
        let p = self.p;
        let [a1, a2, a3, a4, a6] = self.a;
        let lhs = (y * y % p + a1 * x % p * y % p + a3 * y % p) % p;
        let rhs = (((x * x % p + a2 * x % p) * x % p + a4 * x % p) + a6) % p;
        lhs == rhs
    }

    pub fn neg(&self, pt: ModPoint) -> ModPoint {
        let (x, y) = pt?;
        let p = self.p;
        Some((x, (2 * p - y - self.a[0] * x % p - self.a[2]) % p))
    }

    pub fn add(&self, pt1: ModPoint, pt2: ModPoint) -> ModPoint {
        let p = self.p;
        let [a1, a2, a3, a4, _] = self.a;
        let Some((x1, y1)) = pt1 else { return pt2 };
        let Some((x2, y2)) = pt2 else { return pt1 };
        let lambda = if x1 == x2 {
            if (y1 + y2 + a1 * x2 % p + a3) % p == 0 {
                return None;
            }
            let num = (3 * x1 % p * x1 % p + 2 * a2 * x1 % p + a4 + (p - a1) * y1 % p) % p;
            let den = (2 * y1 + a1 * x1 % p + a3) % p;
            num * inv(den, p) % p
        } else {
            (y2 + p - y1) % p * inv((x2 + p - x1) % p, p) % p
        };
        let nu = (y1 + p - lambda * x1 % p) % p;
        let x3 = (lambda * lambda % p + a1 * lambda % p + 2 * p - a2 % p + 2 * p - x1 + 2 * p - x2)
            .rem_euclid(p);
        let y3 = (p - (lambda + a1) * x3 % p % p + 2 * p - nu + 2 * p - a3).rem_euclid(p);
        Some((x3, y3))
    }

    pub fn mul(&self, n: u64, pt: ModPoint) -> ModPoint {
        let mut acc = None;
        let mut base = pt;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            n >>= 1;
        }
        acc
    }

    /// Some affine points, scanning x from a start offset.
    pub fn sample_points(&self, start: u64, count: usize) -> Vec<ModPoint> {
        let p = self.p;
        let [a1, a2, a3, a4, a6] = self.a;
        let mut out = Vec::new();
        let mut x = start % p;
        let mut tried = 0;
        while out.len() < count && tried < p {
            // y^2 + (a1x + a3) y = rhs
            let b = (a1 * x % p + a3) % p;
            let c = (((x * x % p + a2 * x % p) * x % p + a4 * x % p) + a6) % p;
            // (2y + b)^2 = b^2 + 4c
            let disc = (b * b % p + 4 * c) % p;
            if let Some(s) = sqrt_mod(disc, p) {
                let y = (s + p - b) % p * inv(2, p) % p;
                let pt = Some((x, y));
                debug_assert!(self.contains(pt));
                out.push(pt);
            }
            x = (x + 1) % p;
            tried += 1;
        }
        out
    }
}

pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) == 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    Some(r)
}

/// Reduce the kernel data of a rational 5-isogeny mod p and evaluate.
pub struct ModIsogeny {
    pub p: u64,
    pub source: ModCurve,
    pub target: ModCurve,
    terms: Vec<[u64; 6]>, // x, y, t, u, gx, gy
}

impl ModIsogeny {
    pub fn from_rational(iso: &VeluIsogeny<BigRational>, p: u64) -> Option<Self> {
        let source = ModCurve::from_rational(&iso.source, p)?;
        let target = ModCurve::from_rational(&iso.target, p)?;
        let terms = iso
            .kernel_terms()
            .iter()
            .map(|t| -> Option<[u64; 6]> {
                Some([
                    mod_p_rat(&t.0, p)?,
                    mod_p_rat(&t.1, p)?,
                    mod_p_rat(&t.2, p)?,
                    mod_p_rat(&t.3, p)?,
                    mod_p_rat(&t.4, p)?,
                    mod_p_rat(&t.5, p)?,
                ])
            })
            .collect::<Option<Vec<_>>>()?;
        Some(ModIsogeny {
            p,
            source,
            target,
            terms,
        })
    }

    pub fn from_cyclo(iso: &VeluIsogeny<CycloElement>, p: u64, root: u64) -> Option<Self> {
        let source = ModCurve::from_cyclo(&iso.source, p, root)?;
        let target = ModCurve::from_cyclo(&iso.target, p, root)?;
        let terms = iso
            .kernel_terms()
            .iter()
            .map(|t| -> Option<[u64; 6]> {
                Some([
                    mod_p_cyclo(&t.0, p, root)?,
                    mod_p_cyclo(&t.1, p, root)?,
                    mod_p_cyclo(&t.2, p, root)?,
                    mod_p_cyclo(&t.3, p, root)?,
                    mod_p_cyclo(&t.4, p, root)?,
                    mod_p_cyclo(&t.5, p, root)?,
                ])
            })
            .collect::<Option<Vec<_>>>()?;
        Some(ModIsogeny {
            p,
            source,
            target,
            terms,
        })
    }

    pub fn apply(&self, pt: ModPoint) -> ModPoint {
        let Some((x, y)) = pt else { return None };
        let p = self.p;
        if self.terms.iter().any(|t| t[0] == x) {
            return None;
        }
        let [a1, _, a3, _, _] = self.source.a;
        let mut xx = x;
        let mut yy = y;
        for t in &self.terms {
            let [xq, yq, tq, uq, gx, gy] = *t;
            let dxi = inv((x + p - xq) % p, p);
            let dxi2 = dxi * dxi % p;
            let dxi3 = dxi2 * dxi % p;
            xx = (xx + tq * dxi % p + uq * dxi2 % p) % p;
            let two_y = (2 * y + a1 * x % p + a3) % p;
            let dx = (x + p - xq) % p;
            let term = (uq * two_y % p * dxi3 % p
                + tq * ((a1 * dx % p + y + p - yq) % p) % p * dxi2 % p
                + ((a1 * uq % p + p - gx * gy % p % p) % p) * dxi2 % p)
                % p;
            yy = (yy + p - term) % p;
        }
        Some((xx, yy))
    }
}

/// Reduce a coordinate change mod p.
pub struct ModIso {
    pub p: u64,
    pub u: u64,
    pub r: u64,
    pub s: u64,
    pub t: u64,
}

impl ModIso {
    pub fn from_rational(iso: &WeierstrassIsomorphism<BigRational>, p: u64) -> Option<Self> {
        Some(ModIso {
            p,
            u: mod_p_rat(&iso.u, p)?,
            r: mod_p_rat(&iso.r, p)?,
            s: mod_p_rat(&iso.s, p)?,
            t: mod_p_rat(&iso.t, p)?,
        })
    }

    pub fn apply(&self, pt: ModPoint) -> ModPoint {
        let (x, y) = pt?;
        let p = self.p;
        let u2 = inv(self.u * self.u % p, p);
        let u3 = u2 * inv(self.u, p) % p;
        let dx = (x + p - self.r) % p;
        let xs = dx * u2 % p;
        let ys = (y + p - self.s * dx % p + p - self.t) % p * u3 % p;
        Some((xs, ys))
    }
}

/// Reduce a rational point mod p when its denominators allow it.
pub fn reduce_point(pt: &CurvePoint<BigRational>, p: u64) -> Option<ModPoint> {
    match pt {
        CurvePoint::Infinity => Some(None),
        CurvePoint::Affine(x, y) => Some(Some((mod_p_rat(x, p)?, mod_p_rat(y, p)?))),
    }
}
