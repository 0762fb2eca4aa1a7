//! Rational torsion of family curves and their 5-isogeny quotients. With a
//! rational 5-torsion point present, the group is Z/5 or Z/10; quotient
//! curves can also have trivial or Z/2 torsion.

use super::divpoly::division_polynomials;
use super::model::{CurvePoint, WeierstrassModel};
use crate::arith::poly::{rational_roots, RatPoly};
use crate::arith::BigRational;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorsionStructure {
    Trivial,
    Z2,
    Z5,
    Z10,
}

#[derive(Debug, Clone)]
pub struct TorsionSubgroup {
    pub structure: TorsionStructure,
    /// Generator of the odd part (order 5), when present.
    pub five_part: Option<CurvePoint<BigRational>>,
    /// The rational 2-torsion point, when present.
    pub two_part: Option<CurvePoint<BigRational>>,
    /// Every torsion point, including the identity.
    pub points: Vec<CurvePoint<BigRational>>,
}

impl TorsionSubgroup {
    pub fn order(&self) -> usize {
        self.points.len()
    }

    /// A generating set: at most one order-5 and one order-2 point.
    pub fn generators(&self) -> Vec<CurvePoint<BigRational>> {
        self.five_part
            .iter()
            .chain(self.two_part.iter())
            .cloned()
            .collect()
    }
}

/// Rational 2-torsion: a rational root of 4x^3 + b2 x^2 + 2 b4 x + b6 gives
/// the point with 2y + a1 x + a3 = 0.
fn two_torsion_point(e: &WeierstrassModel<BigRational>) -> Option<CurvePoint<BigRational>> {
    let cubic = RatPoly::new(vec![
        e.b6(),
        BigRational::from(BigInt::from(2)) * e.b4(),
        e.b2(),
        BigRational::from(BigInt::from(4)),
    ]);
    let roots = rational_roots(&cubic);
    let x = roots.first()?.clone();
    let y = -(e.a1.clone() * x.clone() + e.a3.clone()) / BigRational::from(BigInt::from(2));
    let p = CurvePoint::Affine(x, y);
    debug_assert!(e.contains(&p));
    Some(p)
}

/// Rational 5-torsion: rational roots of the degree-12 5-division polynomial
/// that lift to rational points.
fn five_torsion_point(e: &WeierstrassModel<BigRational>) -> Option<CurvePoint<BigRational>> {
    let dp = division_polynomials(e);
    for x in rational_roots(&dp.psi5) {
        for p in e.lift_x(&x) {
            if e.order_up_to(&p, 5) == Some(5) {
                return Some(p);
            }
        }
    }
    None
}

/// Torsion of a curve known to have all its rational torsion of order
/// dividing 10 (the family and its 5-isogeny quotients).
pub fn torsion_subgroup(
    e: &WeierstrassModel<BigRational>,
    known_five: Option<CurvePoint<BigRational>>,
) -> TorsionSubgroup {
    let five = known_five.or_else(|| five_torsion_point(e));
    let two = two_torsion_point(e);
    let structure = match (&five, &two) {
        (Some(_), Some(_)) => TorsionStructure::Z10,
        (Some(_), None) => TorsionStructure::Z5,
        (None, Some(_)) => TorsionStructure::Z2,
        (None, None) => TorsionStructure::Trivial,
    };
    let mut points = vec![CurvePoint::Infinity];
    if let Some(t5) = &five {
        for k in 1..5 {
            points.push(e.mul(k, t5));
        }
    }
    if let Some(t2) = &two {
        let halves: Vec<_> = points.iter().map(|p| e.add(p, t2)).collect();
        points.extend(halves);
    }
    debug_assert!(points.iter().all(|p| e.contains(p)));
    TorsionSubgroup {
        structure,
        five_part: five,
        two_part: two,
        points,
    }
}

/// True when the point is torsion (order at most 10 in this family).
pub fn is_torsion(e: &WeierstrassModel<BigRational>, p: &CurvePoint<BigRational>) -> bool {
    e.order_up_to(p, 12).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::family::curve_from_uv;

    #[test]
    fn family_curves_have_z5_or_z10() {
        let c = curve_from_uv(1, 1).unwrap();
        let t = torsion_subgroup(&c.parametric, Some(c.five_torsion_parametric()));
        assert_eq!(t.structure, TorsionStructure::Z5);
        assert_eq!(t.order(), 5);
        // d = u/v with a rational 2-torsion point: the cubic
        // 4x^3 + b2x^2 + 2b4x + b6 needs a rational root; scan for one
        let mut found_z10 = false;
        for u in 1u64..30 {
            for v in 1u64..30 {
                if num_integer::Integer::gcd(&u, &v) != 1 {
                    continue;
                }
                let c = curve_from_uv(u, v).unwrap();
                let t = torsion_subgroup(&c.integral, Some(c.five_torsion_integral()));
                if t.structure == TorsionStructure::Z10 {
                    assert_eq!(t.order(), 10);
                    found_z10 = true;
                }
            }
        }
        // Z/10 occurs in this family (it is the X1(10) specialization locus);
        // if the scan finds none the search box was too small.
        assert!(found_z10, "expected at least one Z/10 fiber in the box");
    }

    #[test]
    fn five_torsion_detected_without_hint() {
        let c = curve_from_uv(2, 1).unwrap();
        let t = torsion_subgroup(&c.parametric, None);
        assert!(t.five_part.is_some());
        assert!(matches!(
            t.structure,
            TorsionStructure::Z5 | TorsionStructure::Z10
        ));
    }

    #[test]
    fn torsion_points_all_on_curve() {
        let c = curve_from_uv(3, 2).unwrap();
        let t = torsion_subgroup(&c.integral, Some(c.five_torsion_integral()));
        assert!(t.order() == 5 || t.order() == 10);
        for p in &t.points {
            assert!(c.integral.contains(p));
        }
    }
}
