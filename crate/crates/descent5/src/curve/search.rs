//! Rational point search on integral models: enumerate x = m/e^2 and test
//! the completed-square discriminant for squareness, with quadratic-residue
//! sieving over small moduli to discard almost all candidates cheaply.

use super::model::{CurvePoint, WeierstrassModel};
use crate::arith::BigRational;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

#[derive(Debug, Clone, Copy)]
pub struct SearchBounds {
    /// Largest |numerator| of x scanned.
    pub numerator_bound: i64,
    /// Largest denominator square root e (x = m/e^2).
    pub denominator_bound: i64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            numerator_bound: 200_000,
            denominator_bound: 12,
        }
    }
}

const SIEVE_MODULI: [i64; 4] = [64, 63, 65, 11];

/// All affine points with x = m/e^2, |m| <= numerator bound and
/// e <= denominator bound, up to inverses (one representative per x).
pub fn point_search(
    e_model: &WeierstrassModel<BigRational>,
    bounds: SearchBounds,
) -> Vec<CurvePoint<BigRational>> {
    let b2 = e_model.b2().to_integer();
    let b4 = e_model.b4().to_integer();
    let b6 = e_model.b6().to_integer();
    assert!(
        e_model.b2().denom().to_i64() == Some(1),
        "point search needs an integral model"
    );
    let (b2i, b4i, b6i) = (
        b2.to_i128().expect("model coefficients fit i128"),
        b4.to_i128().expect("model coefficients fit i128"),
        b6.to_i128().expect("model coefficients fit i128"),
    );
    let mut found = Vec::new();
    for e in 1..=bounds.denominator_bound {
        let e2 = (e * e) as i128;
        let e4 = e2 * e2;
        let e6 = e4 * e2;
        // W(m) = 4m^3 + b2 m^2 e^2 + 2 b4 m e^4 + b6 e^6 must be a square
        let sieve: Vec<Vec<bool>> = SIEVE_MODULI
            .iter()
            .map(|&md| {
                let md = md as i128;
                let squares: Vec<bool> = {
                    let mut sq = vec![false; md as usize];
                    for z in 0..md {
                        sq[((z * z) % md) as usize] = true;
                    }
                    sq
                };
                (0..md)
                    .map(|m| {
                        let w = (4 * m * m * m
                            + b2i.rem_euclid(md) * m * m % md * e2.rem_euclid(md)
                            + 2 * b4i.rem_euclid(md) * m % md * e4.rem_euclid(md)
                            + b6i.rem_euclid(md) * e6.rem_euclid(md))
                        .rem_euclid(md);
                        squares[w as usize]
                    })
                    .collect()
            })
            .collect();
        for m in -bounds.numerator_bound..=bounds.numerator_bound {
            if num_integer::Integer::gcd(&m, &e) != 1 {
                continue;
            }
            let mi = m as i128;
            let mut ok = true;
            for (sv, &md) in sieve.iter().zip(&SIEVE_MODULI) {
                if !sv[m.rem_euclid(md) as usize] {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let w = 4 * mi * mi * mi + b2i * mi * mi * e2 + 2 * b4i * mi * e4 + b6i * e6;
            if w < 0 {
                continue;
            }
            let ws = isqrt_i128(w);
            if ws * ws != w {
                continue;
            }
            // 2y + a1 x + a3 = ws / e^3
            let x = BigRational::new(BigInt::from(m), BigInt::from((e * e) as i64));
            let z = BigRational::new(BigInt::from(ws), BigInt::from(e as i128 * e as i128 * e as i128));
            let y = (z - e_model.a1.clone() * x.clone() - e_model.a3.clone())
                / BigRational::from(BigInt::from(2));
            let p = CurvePoint::Affine(x, y);
            debug_assert!(e_model.contains(&p));
            found.push(p);
        }
    }
    found
}

fn isqrt_i128(n: i128) -> i128 {
    if n < 0 {
        return -1;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r > 0 && r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Naive multiplicative height of x(P): log max(|numerator|, denominator).
pub fn naive_x_height(p: &CurvePoint<BigRational>) -> f64 {
    match p {
        CurvePoint::Infinity => 0.0,
        CurvePoint::Affine(x, _) => {
            let n = x.numer().abs();
            let d = x.denom().abs();
            let m = if n > d { n } else { d };
            bigint_log(&m)
        }
    }
}

pub fn bigint_log(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 52 {
        (n.to_f64().unwrap().abs()).max(1.0).ln()
    } else {
        let shifted: BigInt = n >> (bits - 52);
        shifted.to_f64().unwrap().abs().ln() + (bits - 52) as f64 * std::f64::consts::LN_2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::family::curve_from_uv;
    use crate::curve::torsion::is_torsion;
    use num_traits::One;

    #[test]
    fn rank_zero_curve_yields_only_torsion_x() {
        let c = curve_from_uv(1, 1).unwrap();
        let pts = point_search(
            &c.integral,
            SearchBounds {
                numerator_bound: 2_000,
                denominator_bound: 6,
            },
        );
        assert!(!pts.is_empty());
        for p in &pts {
            let x = p.x().unwrap();
            assert!(
                x == &BigRational::from(BigInt::from(0))
                    || x == &BigRational::from(BigInt::from(-1)),
                "unexpected x = {x}"
            );
            assert!(is_torsion(&c.integral, p));
        }
    }

    #[test]
    fn torsion_orbit_found_for_generic_member() {
        // the four 5-torsion points have integral-model x in {0, -uv}
        let c = curve_from_uv(3, 2).unwrap();
        let pts = point_search(
            &c.integral,
            SearchBounds {
                numerator_bound: 50,
                denominator_bound: 3,
            },
        );
        let xs: Vec<BigRational> = pts.iter().map(|p| p.x().unwrap().clone()).collect();
        assert!(xs.contains(&BigRational::from(BigInt::from(0))));
        assert!(xs.contains(&BigRational::from(BigInt::from(-6))));
    }

    #[test]
    fn finds_fractional_points() {
        // any curve with a small non-integral point: scan a few family
        // members and require at least one fractional x among found points
        let mut fractional = 0;
        for (u, v) in [(3u64, 1u64), (7, 2), (5, 4)] {
            let c = curve_from_uv(u, v).unwrap();
            let pts = point_search(
                &c.integral,
                SearchBounds {
                    numerator_bound: 5_000,
                    denominator_bound: 8,
                },
            );
            fractional += pts
                .iter()
                .filter(|p| !p.x().unwrap().denom().is_one())
                .count();
        }
        assert!(fractional > 0);
    }
}
