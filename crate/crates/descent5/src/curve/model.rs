//! Long Weierstrass models, chord-tangent arithmetic, and coordinate
//! changes, generic over the base field.

use super::field::CurveField;

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a field F.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassModel<F: CurveField> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CurvePoint<F: CurveField> {
    Infinity,
    Affine(F, F),
}

impl<F: CurveField> CurvePoint<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(x, _) => Some(x),
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(_, y) => Some(y),
        }
    }
}

impl<F: CurveField> WeierstrassModel<F> {
    pub fn new(a1: F, a2: F, a3: F, a4: F, a6: F) -> Self {
        WeierstrassModel { a1, a2, a3, a4, a6 }
    }

    /// The parametrized family member with a 5-torsion point at the origin:
    /// y^2 + (d+1)xy + dy = x^3 + dx^2.
    pub fn five_torsion_family(d: F) -> Self {
        WeierstrassModel {
            a1: d.clone() + F::one(),
            a2: d.clone(),
            a3: d,
            a4: F::zero(),
            a6: F::zero(),
        }
    }

    pub fn b2(&self) -> F {
        self.a1.clone() * self.a1.clone() + F::from_i64(4) * self.a2.clone()
    }

    pub fn b4(&self) -> F {
        F::from_i64(2) * self.a4.clone() + self.a1.clone() * self.a3.clone()
    }

    pub fn b6(&self) -> F {
        self.a3.clone() * self.a3.clone() + F::from_i64(4) * self.a6.clone()
    }

    pub fn b8(&self) -> F {
        self.a1.clone() * self.a1.clone() * self.a6.clone()
            + F::from_i64(4) * self.a2.clone() * self.a6.clone()
            - self.a1.clone() * self.a3.clone() * self.a4.clone()
            + self.a2.clone() * self.a3.clone() * self.a3.clone()
            - self.a4.clone() * self.a4.clone()
    }

    pub fn c4(&self) -> F {
        let b2 = self.b2();
        b2.clone() * b2 - F::from_i64(24) * self.b4()
    }

    pub fn c6(&self) -> F {
        let b2 = self.b2();
        -(b2.clone() * b2.clone() * b2.clone())
            + F::from_i64(36) * b2 * self.b4()
            - F::from_i64(216) * self.b6()
    }

    pub fn discriminant(&self) -> F {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(b2.clone() * b2.clone() * b8.clone())
            - F::from_i64(8) * b4.clone() * b4.clone() * b4.clone()
            - F::from_i64(27) * b6.clone() * b6.clone()
            + F::from_i64(9) * b2 * b4 * b6
    }

    pub fn contains(&self, p: &CurvePoint<F>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => {
                let lhs = y.clone() * y.clone()
                    + self.a1.clone() * x.clone() * y.clone()
                    + self.a3.clone() * y.clone();
                let rhs = x.clone() * x.clone() * x.clone()
                    + self.a2.clone() * x.clone() * x.clone()
                    + self.a4.clone() * x.clone()
                    + self.a6.clone();
                lhs == rhs
            }
        }
    }

    pub fn negate(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(
                x.clone(),
                -y.clone() - self.a1.clone() * x.clone() - self.a3.clone(),
            ),
        }
    }

    pub fn add(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> CurvePoint<F> {
        let (x1, y1) = match p {
            CurvePoint::Infinity => return q.clone(),
            CurvePoint::Affine(x, y) => (x.clone(), y.clone()),
        };
        let (x2, y2) = match q {
            CurvePoint::Infinity => return p.clone(),
            CurvePoint::Affine(x, y) => (x.clone(), y.clone()),
        };
        let lambda = if x1 == x2 {
            let minus_y2 = -y2.clone() - self.a1.clone() * x2.clone() - self.a3.clone();
            if y1 == minus_y2 {
                return CurvePoint::Infinity;
            }
            // tangent slope
            let num = F::from_i64(3) * x1.clone() * x1.clone()
                + F::from_i64(2) * self.a2.clone() * x1.clone()
                + self.a4.clone()
                - self.a1.clone() * y1.clone();
            let den = F::from_i64(2) * y1.clone() + self.a1.clone() * x1.clone() + self.a3.clone();
            num / den
        } else {
            (y2.clone() - y1.clone()) / (x2.clone() - x1.clone())
        };
        let nu = y1.clone() - lambda.clone() * x1.clone();
        let x3 = lambda.clone() * lambda.clone() + self.a1.clone() * lambda.clone()
            - self.a2.clone()
            - x1
            - x2;
        let y3 = -(lambda + self.a1.clone()) * x3.clone() - nu - self.a3.clone();
        CurvePoint::Affine(x3, y3)
    }

    pub fn mul(&self, n: i64, p: &CurvePoint<F>) -> CurvePoint<F> {
        if n == 0 || p.is_infinity() {
            return CurvePoint::Infinity;
        }
        let (mut n, mut base) = if n < 0 {
            (-n as u64, self.negate(p))
        } else {
            (n as u64, p.clone())
        };
        let mut acc = CurvePoint::Infinity;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    /// Order of a point if it is at most `cap`, else None (infinite or large).
    pub fn order_up_to(&self, p: &CurvePoint<F>, cap: i64) -> Option<i64> {
        let mut acc = p.clone();
        for n in 1..=cap {
            if acc.is_infinity() {
                return Some(n);
            }
            acc = self.add(&acc, p);
        }
        None
    }

    /// Solve the curve equation for y at a given x; 0, 1, or 2 points.
    pub fn lift_x(&self, x: &F) -> Vec<CurvePoint<F>> {
        // y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0
        let b = self.a1.clone() * x.clone() + self.a3.clone();
        let c = -(x.clone() * x.clone() * x.clone()
            + self.a2.clone() * x.clone() * x.clone()
            + self.a4.clone() * x.clone()
            + self.a6.clone());
        let disc = b.clone() * b.clone() - F::from_i64(4) * c;
        let Some(root) = disc.try_sqrt() else {
            return Vec::new();
        };
        let half = F::one() / F::from_i64(2);
        let y1 = (root.clone() - b.clone()) * half.clone();
        if root.is_zero() {
            return vec![CurvePoint::Affine(x.clone(), y1)];
        }
        let y2 = (-root - b) * half;
        vec![
            CurvePoint::Affine(x.clone(), y1),
            CurvePoint::Affine(x.clone(), y2),
        ]
    }

    pub fn transform(&self, iso: &WeierstrassIsomorphism<F>) -> WeierstrassModel<F> {
        let (u, r, s, t) = (&iso.u, &iso.r, &iso.s, &iso.t);
        let u2 = u.clone() * u.clone();
        let u3 = u2.clone() * u.clone();
        let a1 = (self.a1.clone() + F::from_i64(2) * s.clone()) / u.clone();
        let a2 = (self.a2.clone() - s.clone() * self.a1.clone() + F::from_i64(3) * r.clone()
            - s.clone() * s.clone())
            / u2.clone();
        let a3 = (self.a3.clone() + r.clone() * self.a1.clone() + F::from_i64(2) * t.clone()) / u3.clone();
        let a4 = (self.a4.clone() - s.clone() * self.a3.clone()
            + F::from_i64(2) * r.clone() * self.a2.clone()
            - (t.clone() + r.clone() * s.clone()) * self.a1.clone()
            + F::from_i64(3) * r.clone() * r.clone()
            - F::from_i64(2) * s.clone() * t.clone())
            / (u2.clone() * u2.clone());
        let a6 = (self.a6.clone() + r.clone() * self.a4.clone()
            + r.clone() * r.clone() * self.a2.clone()
            + r.clone() * r.clone() * r.clone()
            - t.clone() * self.a3.clone()
            - t.clone() * t.clone()
            - r.clone() * t.clone() * self.a1.clone())
            / (u3.clone() * u3.clone());
        WeierstrassModel { a1, a2, a3, a4, a6 }
    }
}

/// Coordinate change x = u^2 x' + r, y = u^3 y' + s u^2 x' + t mapping a
/// model to the primed model; points map by the inverse substitution.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassIsomorphism<F: CurveField> {
    pub u: F,
    pub r: F,
    pub s: F,
    pub t: F,
}

impl<F: CurveField> WeierstrassIsomorphism<F> {
    pub fn identity() -> Self {
        WeierstrassIsomorphism {
            u: F::one(),
            r: F::zero(),
            s: F::zero(),
            t: F::zero(),
        }
    }

    pub fn translation(r: F, t: F) -> Self {
        WeierstrassIsomorphism {
            u: F::one(),
            r,
            s: F::zero(),
            t,
        }
    }

    pub fn shear(s: F) -> Self {
        WeierstrassIsomorphism {
            u: F::one(),
            r: F::zero(),
            s,
            t: F::zero(),
        }
    }

    pub fn scaling(u: F) -> Self {
        WeierstrassIsomorphism {
            u,
            r: F::zero(),
            s: F::zero(),
            t: F::zero(),
        }
    }

    /// Map a point of the source model to the target model.
    pub fn apply(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                let u2 = self.u.clone() * self.u.clone();
                let u3 = u2.clone() * self.u.clone();
                let xs = (x.clone() - self.r.clone()) / u2;
                let ys = (y.clone() - self.s.clone() * (x.clone() - self.r.clone()) - self.t.clone()) / u3;
                CurvePoint::Affine(xs, ys)
            }
        }
    }

    /// Inverse coordinate change.
    pub fn invert(&self) -> WeierstrassIsomorphism<F> {
        let u_inv = F::one() / self.u.clone();
        let u2 = self.u.clone() * self.u.clone();
        let u3 = u2.clone() * self.u.clone();
        WeierstrassIsomorphism {
            u: u_inv.clone(),
            r: -self.r.clone() / u2.clone(),
            s: -self.s.clone() / self.u.clone(),
            t: (self.r.clone() * self.s.clone() - self.t.clone()) / u3,
        }
    }

    /// `self` then `next` as a single coordinate change.
    pub fn compose(&self, next: &WeierstrassIsomorphism<F>) -> WeierstrassIsomorphism<F> {
        let u2 = self.u.clone() * self.u.clone();
        let u3 = u2.clone() * self.u.clone();
        WeierstrassIsomorphism {
            u: self.u.clone() * next.u.clone(),
            r: u2.clone() * next.r.clone() + self.r.clone(),
            s: self.u.clone() * next.s.clone() + self.s.clone(),
            t: u3 * next.t.clone() + self.s.clone() * u2 * next.r.clone() + self.t.clone(),
        }
    }
}

/// Find a coordinate change carrying `from` onto `to`, if the models are
/// isomorphic over the base field.
pub fn find_isomorphism<F: CurveField>(
    from: &WeierstrassModel<F>,
    to: &WeierstrassModel<F>,
) -> Option<WeierstrassIsomorphism<F>> {
    let c4a = from.c4();
    let c6a = from.c6();
    let c4b = to.c4();
    let c6b = to.c6();
    let mut u2_candidates = Vec::new();
    if !c4b.is_zero() && !c6b.is_zero() {
        u2_candidates.push(c6a * c4b / (c4a * c6b));
    } else if !c4b.is_zero() {
        // u^4 = c4a / c4b
        let u4 = c4a / c4b;
        if let Some(u2) = u4.try_sqrt() {
            u2_candidates.push(u2.clone());
            u2_candidates.push(-u2);
        }
    } else {
        return None; // c4 = 0 does not occur in this family
    }
    for u2 in u2_candidates {
        let Some(u) = u2.try_sqrt() else { continue };
        for u in [u.clone(), -u] {
            if u.is_zero() {
                continue;
            }
            let s = (u.clone() * to.a1.clone() - from.a1.clone()) / F::from_i64(2);
            let r = (u.clone() * u.clone() * to.a2.clone() - from.a2.clone()
                + s.clone() * from.a1.clone()
                + s.clone() * s.clone())
                / F::from_i64(3);
            let t = (u.clone() * u.clone() * u.clone() * to.a3.clone()
                - from.a3.clone()
                - r.clone() * from.a1.clone())
                / F::from_i64(2);
            let iso = WeierstrassIsomorphism { u, r, s, t };
            if &from.transform(&iso) == to {
                return Some(iso);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BigRational;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn family(d: i64) -> WeierstrassModel<BigRational> {
        WeierstrassModel::five_torsion_family(rat(d, 1))
    }

    #[test]
    fn family_discriminant() {
        // disc(E_d) = -d^5 (d^2 + 11d - 1)
        let e = family(1);
        assert_eq!(e.discriminant(), rat(-11, 1));
        let e = family(2);
        assert_eq!(e.discriminant(), rat(-800, 1));
    }

    #[test]
    fn origin_has_order_five() {
        for d in [1i64, 2, 3, 7, -3] {
            let e = family(d);
            let p = CurvePoint::Affine(rat(0, 1), rat(0, 1));
            assert!(e.contains(&p));
            assert_eq!(e.order_up_to(&p, 10), Some(5));
        }
    }

    #[test]
    fn five_torsion_orbit_matches_family() {
        // multiples of (0,0) on E_d: (0,0), (-d,d^2), (-d,0), (0,-d)
        let d = 7i64;
        let e = family(d);
        let p = CurvePoint::Affine(rat(0, 1), rat(0, 1));
        let p2 = e.mul(2, &p);
        assert_eq!(p2, CurvePoint::Affine(rat(-d, 1), rat(d * d, 1)));
        let p3 = e.mul(3, &p);
        assert_eq!(p3, CurvePoint::Affine(rat(-d, 1), rat(0, 1)));
        let p4 = e.mul(4, &p);
        assert_eq!(p4, CurvePoint::Affine(rat(0, 1), rat(-d, 1)));
        // inverse pair sums to O
        assert!(e.add(&p, &p4).is_infinity());
    }

    #[test]
    fn transform_roundtrip() {
        let e = family(3);
        let iso = WeierstrassIsomorphism {
            u: rat(2, 3),
            r: rat(1, 2),
            s: rat(-1, 1),
            t: rat(5, 7),
        };
        let e2 = e.transform(&iso);
        let p = CurvePoint::Affine(rat(0, 1), rat(0, 1));
        let q = iso.apply(&p);
        assert!(e2.contains(&q));
        let back = iso.invert();
        assert_eq!(e2.transform(&back), e);
        assert_eq!(back.apply(&q), p);
        // composition agrees with sequential application
        let iso2 = WeierstrassIsomorphism {
            u: rat(3, 1),
            r: rat(-2, 1),
            s: rat(0, 1),
            t: rat(1, 3),
        };
        let e3 = e2.transform(&iso2);
        let both = iso.compose(&iso2);
        assert_eq!(e.transform(&both), e3);
        assert_eq!(both.apply(&p), iso2.apply(&q));
    }

    #[test]
    fn group_law_associativity_spot_checks() {
        let e = family(2);
        let p = CurvePoint::Affine(rat(0, 1), rat(0, 1));
        let q = e.mul(2, &p);
        let r = e.mul(3, &p);
        let lhs = e.add(&e.add(&p, &q), &r);
        let rhs = e.add(&p, &e.add(&q, &r));
        assert_eq!(lhs, rhs);
        // 6P = P on a point of order 5
        assert_eq!(lhs, p);
        assert_eq!(e.add(&lhs, &p), e.mul(7, &p));
    }

    #[test]
    fn isomorphism_recovery() {
        let e = family(5);
        let iso = WeierstrassIsomorphism {
            u: rat(1, 2),
            r: rat(3, 1),
            s: rat(2, 1),
            t: rat(-1, 1),
        };
        let e2 = e.transform(&iso);
        let found = find_isomorphism(&e, &e2).expect("isomorphic by construction");
        assert_eq!(e.transform(&found), e2);
    }

    #[test]
    fn lift_x_finds_points() {
        let e = family(1);
        let pts = e.lift_x(&rat(0, 1));
        assert_eq!(pts.len(), 2);
        for p in pts {
            assert!(e.contains(&p));
        }
        assert!(e.lift_x(&rat(17, 1)).len() <= 2);
    }
}
