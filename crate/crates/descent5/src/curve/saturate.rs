//! 5-saturation of Mordell-Weil sublattices: detect combinations of
//! generators divisible by 5 modulo torsion, divide using the degree-25
//! x-relation for multiplication by 5, and repeat until none divide.

use super::divpoly::division_polynomials;
use super::model::{CurvePoint, WeierstrassModel};
use crate::arith::poly::rational_roots;
use crate::arith::BigRational;

/// One point Q with [5]Q = P, if any exists over Q. `torsion` is unused
/// here; division modulo torsion happens in the caller.
pub fn divide_by_5(
    e: &WeierstrassModel<BigRational>,
    p: &CurvePoint<BigRational>,
) -> Option<CurvePoint<BigRational>> {
    let CurvePoint::Affine(xp, _) = p else {
        return Some(CurvePoint::Infinity);
    };
    let dp = division_polynomials(e);
    let f = dp.division_by_5_poly(xp);
    for x0 in rational_roots(&f) {
        for q in e.lift_x(&x0) {
            let five_q = e.mul(5, &q);
            if &five_q == p {
                return Some(q);
            }
            if five_q == e.negate(p) {
                return Some(e.negate(&q));
            }
        }
    }
    None
}

/// Result of saturating a tuple of independent points at 5.
pub struct Saturation {
    pub generators: Vec<CurvePoint<BigRational>>,
    /// How many successful index-5 refinements happened.
    pub divisions: u32,
}

/// Replace generators until no nontrivial GF(5)-combination is divisible by
/// 5 modulo torsion. The input points must be independent modulo torsion.
pub fn saturate_at_5(
    e: &WeierstrassModel<BigRational>,
    torsion: &[CurvePoint<BigRational>],
    mut generators: Vec<CurvePoint<BigRational>>,
) -> Saturation {
    let mut divisions = 0u32;
    if generators.is_empty() {
        return Saturation {
            generators,
            divisions,
        };
    }
    'restart: loop {
        assert!(divisions < 64, "saturation failed to terminate");
        for coeffs in f5_combinations(generators.len()) {
            let mut combo = CurvePoint::Infinity;
            for (c, g) in coeffs.iter().zip(&generators) {
                combo = e.add(&combo, &e.mul(*c as i64, g));
            }
            if combo.is_infinity() {
                panic!("input generators are dependent modulo torsion");
            }
            for t in torsion {
                let target = e.add(&combo, t);
                if target.is_infinity() {
                    panic!("input generators are dependent modulo torsion");
                }
                if let Some(q) = divide_by_5(e, &target) {
                    let slot = coeffs.iter().position(|&c| c != 0).unwrap();
                    generators[slot] = q;
                    divisions += 1;
                    continue 'restart;
                }
            }
        }
        break;
    }
    Saturation {
        generators,
        divisions,
    }
}

/// Nonzero vectors of GF(5)^n up to scalar: first nonzero entry is 1.
pub fn f5_combinations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let total = 5usize.pow(n as u32);
    for mut code in 1..total {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push((code % 5) as u8);
            code /= 5;
        }
        if v.iter().find(|&&c| c != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}
