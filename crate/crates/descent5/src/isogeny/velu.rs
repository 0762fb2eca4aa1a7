//! Degree-5 quotient isogenies from an order-5 kernel point, with the
//! classical normalized formulas, generic over the base field.

use crate::curve::field::CurveField;
use crate::curve::model::{CurvePoint, WeierstrassModel};

/// Per-kernel-point quantities entering the isogeny formulas.
#[derive(Debug, Clone)]
struct KernelTerm<F: CurveField> {
    x: F,
    y: F,
    t: F,
    u: F,
    gx: F,
    gy: F,
}

/// A cyclic degree-5 isogeny presented by its kernel data; evaluation is
/// pointwise.
#[derive(Debug, Clone)]
pub struct VeluIsogeny<F: CurveField> {
    pub source: WeierstrassModel<F>,
    pub target: WeierstrassModel<F>,
    terms: [KernelTerm<F>; 2],
}

impl<F: CurveField> VeluIsogeny<F> {
    /// Quotient by the order-5 subgroup generated by `generator`.
    pub fn new(source: &WeierstrassModel<F>, generator: &CurvePoint<F>) -> Self {
        assert!(
            source.order_up_to(generator, 6) == Some(5),
            "kernel generator must have exact order 5"
        );
        let half1 = generator.clone();
        let half2 = source.mul(2, generator);
        let mut terms = Vec::with_capacity(2);
        let mut t_sum = F::zero();
        let mut w_sum = F::zero();
        for q in [half1, half2] {
            let CurvePoint::Affine(xq, yq) = q else {
                unreachable!()
            };
            let gx = F::from_i64(3) * xq.clone() * xq.clone()
                + F::from_i64(2) * source.a2.clone() * xq.clone()
                + source.a4.clone()
                - source.a1.clone() * yq.clone();
            let gy = -(F::from_i64(2) * yq.clone())
                - source.a1.clone() * xq.clone()
                - source.a3.clone();
            let t = F::from_i64(2) * gx.clone() - source.a1.clone() * gy.clone();
            let u = gy.clone() * gy.clone();
            t_sum = t_sum + t.clone();
            w_sum = w_sum + u.clone() + xq.clone() * t.clone();
            terms.push(KernelTerm {
                x: xq,
                y: yq,
                t,
                u,
                gx,
                gy,
            });
        }
        let b2 = source.b2();
        let target = WeierstrassModel::new(
            source.a1.clone(),
            source.a2.clone(),
            source.a3.clone(),
            source.a4.clone() - F::from_i64(5) * t_sum.clone(),
            source.a6.clone() - b2 * t_sum - F::from_i64(7) * w_sum,
        );
        let terms: [KernelTerm<F>; 2] = terms.try_into().map_err(|_| ()).unwrap();
        VeluIsogeny {
            source: source.clone(),
            target,
            terms,
        }
    }

    /// Kernel data (x, y, t, u, gx, gy) per summed kernel point.
    pub fn kernel_terms(&self) -> Vec<(F, F, F, F, F, F)> {
        self.terms
            .iter()
            .map(|k| {
                (
                    k.x.clone(),
                    k.y.clone(),
                    k.t.clone(),
                    k.u.clone(),
                    k.gx.clone(),
                    k.gy.clone(),
                )
            })
            .collect()
    }

    pub fn apply(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        let CurvePoint::Affine(x, y) = p else {
            return CurvePoint::Infinity;
        };
        if self.terms.iter().any(|k| &k.x == x) {
            return CurvePoint::Infinity;
        }
        let mut xx = x.clone();
        let mut yy = y.clone();
        for k in &self.terms {
            let dx = x.clone() - k.x.clone();
            let inv = F::one() / dx.clone();
            let inv2 = inv.clone() * inv.clone();
            let inv3 = inv2.clone() * inv.clone();
            xx = xx + k.t.clone() * inv.clone() + k.u.clone() * inv2.clone();
            let two_y = F::from_i64(2) * y.clone()
                + self.source.a1.clone() * x.clone()
                + self.source.a3.clone();
            yy = yy
                - (k.u.clone() * two_y * inv3
                    + k.t.clone()
                        * (self.source.a1.clone() * dx + y.clone() - k.y.clone())
                        * inv2.clone()
                    + (self.source.a1.clone() * k.u.clone() - k.gx.clone() * k.gy.clone())
                        * inv2);
        }
        let out = CurvePoint::Affine(xx, yy);
        debug_assert!(self.target.contains(&out), "isogeny image off the curve");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BigRational;
    use crate::curve::family::curve_from_uv;
    use crate::curve::search::{point_search, SearchBounds};
    use num_bigint::BigInt;

    #[test]
    fn kernel_maps_to_infinity() {
        let c = curve_from_uv(3, 2).unwrap();
        let eta = VeluIsogeny::new(&c.parametric, &c.five_torsion_parametric());
        let t = c.five_torsion_parametric();
        for k in 1..5 {
            assert!(eta.apply(&c.parametric.mul(k, &t)).is_infinity());
        }
        assert!(eta.apply(&CurvePoint::Infinity).is_infinity());
    }

    #[test]
    fn image_points_satisfy_target_and_addition() {
        let c = curve_from_uv(3, 1).unwrap();
        let to_param = &c.integral_to_parametric;
        let eta = VeluIsogeny::new(&c.parametric, &c.five_torsion_parametric());
        let pts: Vec<CurvePoint<BigRational>> = point_search(
            &c.integral,
            SearchBounds {
                numerator_bound: 2_000,
                denominator_bound: 4,
            },
        )
        .into_iter()
        .map(|p| to_param.apply(&p))
        .collect();
        assert!(pts.len() >= 3);
        for p in &pts {
            assert!(c.parametric.contains(p));
            assert!(eta.target.contains(&eta.apply(p)));
        }
        // homomorphism on sample pairs
        for p in &pts {
            for q in pts.iter().take(3) {
                let lhs = eta.apply(&c.parametric.add(p, q));
                let rhs = eta.target.add(&eta.apply(p), &eta.apply(q));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn quotient_discriminant_nonzero() {
        for (u, v) in [(1u64, 1u64), (2, 1), (5, 3), (7, 4)] {
            let c = curve_from_uv(u, v).unwrap();
            let eta = VeluIsogeny::new(&c.parametric, &c.five_torsion_parametric());
            assert!(eta.target.discriminant() != BigRational::from(BigInt::from(0)));
        }
    }
}
