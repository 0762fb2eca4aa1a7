//! The 5-isogeny to the quotient by the rational 5-torsion subgroup, its
//! dual, and the coordinate change onto the parametrized family over
//! Q(zeta_5) that the descent map evaluation needs.

pub mod modp;
pub mod velu;

pub use crate::curve::family::eta_prime_5val;
pub use velu::VeluIsogeny;

use crate::arith::poly::{rational_reconstruct, RatPoly};
use crate::arith::BigRational;
use crate::curve::divpoly::division_polynomials;
use crate::curve::family::FamilyCurve;
use crate::curve::model::{
    find_isomorphism, CurvePoint, WeierstrassIsomorphism, WeierstrassModel,
};
use crate::cyclo::CycloElement;
use modp::{ModIso, ModIsogeny};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, thiserror::Error)]
pub enum IsogenyError {
    #[error("no rational quadratic factor of the 5-division polynomial passes the dual-composite verification")]
    DualKernelNotFound,
    #[error("the dual-quotient model did not descend to the rationals")]
    DescentFailure,
}

/// Everything the descent needs about eta: E -> E' and its dual.
pub struct IsogenyBundle {
    /// eta on the parametric model.
    pub eta: VeluIsogeny<BigRational>,
    /// Monic quadratic whose roots are the kernel x-coordinates of the dual.
    pub kernel_poly: RatPoly,
    /// The dual isogeny computed over K from its kernel points.
    pub dual: VeluIsogeny<CycloElement>,
    /// The dual's codomain, descended to Q.
    pub dual_codomain: WeierstrassModel<BigRational>,
    /// Coordinate change from the dual codomain back onto the source.
    pub closing_iso: WeierstrassIsomorphism<BigRational>,
    /// The family parameter of the quotient over K.
    pub dtilde: CycloElement,
    /// Coordinate change E' -> E_{dtilde} sending the dual kernel generator
    /// to the origin.
    pub tau: WeierstrassIsomorphism<CycloElement>,
}

impl IsogenyBundle {
    pub fn quotient(&self) -> &WeierstrassModel<BigRational> {
        &self.eta.target
    }

    /// E' lifted to K.
    pub fn quotient_over_k(&self) -> WeierstrassModel<CycloElement> {
        lift_model(&self.eta.target)
    }

    /// The dual evaluated at a rational point (image is rational).
    pub fn dual_apply_rational(&self, p: &CurvePoint<BigRational>) -> CurvePoint<BigRational> {
        descend_point(&self.dual.apply(&lift_point(p)))
            .expect("dual image of a rational point is rational")
    }
}

pub fn lift_model(e: &WeierstrassModel<BigRational>) -> WeierstrassModel<CycloElement> {
    WeierstrassModel::new(
        CycloElement::from_rational(e.a1.clone()),
        CycloElement::from_rational(e.a2.clone()),
        CycloElement::from_rational(e.a3.clone()),
        CycloElement::from_rational(e.a4.clone()),
        CycloElement::from_rational(e.a6.clone()),
    )
}

pub fn lift_point(p: &CurvePoint<BigRational>) -> CurvePoint<CycloElement> {
    match p {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine(x, y) => CurvePoint::Affine(
            CycloElement::from_rational(x.clone()),
            CycloElement::from_rational(y.clone()),
        ),
    }
}

pub fn descend_point(p: &CurvePoint<CycloElement>) -> Option<CurvePoint<BigRational>> {
    match p {
        CurvePoint::Infinity => Some(CurvePoint::Infinity),
        CurvePoint::Affine(x, y) => Some(CurvePoint::Affine(
            x.rational_part()?,
            y.rational_part()?,
        )),
    }
}

fn descend_model(e: &WeierstrassModel<CycloElement>) -> Option<WeierstrassModel<BigRational>> {
    Some(WeierstrassModel::new(
        e.a1.rational_part()?,
        e.a2.rational_part()?,
        e.a3.rational_part()?,
        e.a4.rational_part()?,
        e.a6.rational_part()?,
    ))
}

/// Quotient of the parametric model by its rational 5-torsion.
pub fn velu_quotient(curve: &FamilyCurve) -> VeluIsogeny<BigRational> {
    VeluIsogeny::new(&curve.parametric, &curve.five_torsion_parametric())
}

const PAIRING_PRIMES: [u64; 8] = [10009, 10039, 10061, 10069, 10079, 10091, 10099, 10111];

/// Monic rational quadratic factors of the degree-12 5-division polynomial,
/// found by pairing Hensel-lifted roots mod a split prime and verifying by
/// exact division. Linear factors are excluded: the dual kernel has
/// irrational x-coordinates.
fn quadratic_factor_candidates(psi5: &RatPoly) -> Vec<RatPoly> {
    let ints = psi5.primitive_int();
    let dints: Vec<BigInt> = ints
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let lead = ints.last().unwrap().clone();
    let mut out: Vec<RatPoly> = Vec::new();
    for &p in &PAIRING_PRIMES {
        if p % 5 != 1 && p % 5 != 4 {
            continue; // need sqrt(5) in F_p so the kernel roots reduce
        }
        let pb = BigInt::from(p);
        if num_integer::Integer::mod_floor(&lead, &pb).is_zero() {
            continue;
        }
        let coeffs: Vec<u64> = ints
            .iter()
            .map(|c| num_integer::Integer::mod_floor(c, &pb).to_u64().unwrap())
            .collect();
        let roots: Vec<u64> = (0..p).filter(|&x| eval_mod(&coeffs, x, p) == 0).collect();
        // lift each simple root to high precision
        let mut lifted: Vec<(BigInt, BigInt)> = Vec::new();
        for &r in &roots {
            let dfr = eval_big_mod(&dints, &BigInt::from(r), &pb);
            if dfr.is_zero() {
                continue;
            }
            lifted.push(lift_root(&ints, &dints, r, p, 5));
        }
        for i in 0..lifted.len() {
            for j in (i + 1)..lifted.len() {
                let modulus = &lifted[i].1;
                let s = num_integer::Integer::mod_floor(&(&lifted[i].0 + &lifted[j].0), modulus);
                let m = num_integer::Integer::mod_floor(&(&lifted[i].0 * &lifted[j].0), modulus);
                let (Some(s), Some(m)) = (
                    rational_reconstruct(&s, modulus),
                    rational_reconstruct(&m, modulus),
                ) else {
                    continue;
                };
                let h = RatPoly::new(vec![m, -s, BigRational::one()]);
                // irreducible over Q (kernel x-coordinates are conjugate)
                let disc = h.coeffs()[1].clone() * h.coeffs()[1].clone()
                    - BigRational::from(BigInt::from(4)) * h.coeffs()[0].clone();
                if crate::cyclo::rational_sqrt_pub(&disc).is_some() {
                    continue;
                }
                if psi5.divisible_by(&h) && !out.contains(&h) {
                    out.push(h);
                }
            }
        }
        if !out.is_empty() {
            break;
        }
    }
    out
}

fn eval_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in coeffs.iter().rev() {
        acc = (acc as u128 * x as u128 % p as u128) as u64;
        acc = (acc + c) % p;
    }
    acc
}

fn eval_big_mod(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = num_integer::Integer::mod_floor(&(acc * x + c), m);
    }
    acc
}

fn lift_root(ints: &[BigInt], dints: &[BigInt], root: u64, p: u64, steps: u32) -> (BigInt, BigInt) {
    let mut modulus = BigInt::from(p);
    let mut r = BigInt::from(root);
    for _ in 0..steps {
        modulus = &modulus * &modulus;
        let fr = eval_big_mod(ints, &r, &modulus);
        let dfr = eval_big_mod(dints, &r, &modulus);
        let e = num_integer::Integer::extended_gcd(&dfr, &modulus);
        let inv = num_integer::Integer::mod_floor(&e.x, &modulus);
        r = num_integer::Integer::mod_floor(&(&r - fr * inv), &modulus);
    }
    (r, modulus)
}

/// A kernel point of the dual over K from the kernel quadratic: the larger
/// root x = (-h1 + sqrt(5 s^2))/2 under the real embedding, with the
/// lexicographically smaller y-coordinate (determinism only).
fn kernel_point_over_k(
    quotient: &WeierstrassModel<CycloElement>,
    h: &RatPoly,
) -> Option<CurvePoint<CycloElement>> {
    let h1 = CycloElement::from_rational(h.coeffs()[1].clone());
    let disc = h.coeffs()[1].clone() * h.coeffs()[1].clone()
        - BigRational::from(BigInt::from(4)) * h.coeffs()[0].clone();
    let root = CycloElement::from_rational(disc).sqrt()?;
    // pick the branch with positive real part under sqrt5 -> +sqrt(5)
    let (_, t) = root.as_sqrt5_pair()?;
    let root = if t.is_negative() { -root } else { root };
    let half = CycloElement::from_rational(BigRational::new(BigInt::one(), BigInt::from(2)));
    let x = (root - h1) * half;
    let lifts = quotient.lift_x(&x);
    lifts
        .into_iter()
        .min_by(|a, b| {
            let ka = a.y().unwrap().coeffs().clone();
            let kb = b.y().unwrap().coeffs().clone();
            ka.partial_cmp(&kb).unwrap()
        })
        .filter(|p| quotient.order_up_to(p, 6) == Some(5))
}

/// Bring (E', R) with R of exact order 5 to the family shape
/// y^2 + (d+1)xy + dy = x^3 + dx^2 with R at the origin.
pub fn tate_normal_form(
    model: &WeierstrassModel<CycloElement>,
    r_point: &CurvePoint<CycloElement>,
) -> (CycloElement, WeierstrassIsomorphism<CycloElement>) {
    let CurvePoint::Affine(xr, yr) = r_point else {
        panic!("normal form needs an affine point")
    };
    let translate = WeierstrassIsomorphism::translation(xr.clone(), yr.clone());
    let e1 = model.transform(&translate);
    debug_assert!(e1.a6.is_zero());
    assert!(!e1.a3.is_zero(), "point of order at most 3 cannot be normalized");
    let shear = WeierstrassIsomorphism::shear(e1.a4.clone() / e1.a3.clone());
    let e2 = e1.transform(&shear);
    debug_assert!(e2.a4.is_zero() && e2.a6.is_zero());
    let scale = WeierstrassIsomorphism::scaling(e2.a3.clone() / e2.a2.clone());
    let e3 = e2.transform(&scale);
    let dtilde = e3.a2.clone();
    debug_assert_eq!(e3.a3, dtilde);
    debug_assert_eq!(
        e3.a1,
        dtilde.clone() + CycloElement::from_rational(BigRational::one()),
        "order-5 normalization forces the family shape"
    );
    let tau = translate.compose(&shear).compose(&scale);
    debug_assert_eq!(model.transform(&tau), e3);
    debug_assert_eq!(
        tau.apply(r_point),
        CurvePoint::Affine(CycloElement::zero(), CycloElement::zero())
    );
    (dtilde, tau)
}

/// Check the composite identity dual(eta(P)) = [+-5] P on sample points of
/// the reduction mod a split prime.
fn composite_verifies(
    eta: &VeluIsogeny<BigRational>,
    dual: &VeluIsogeny<CycloElement>,
    closing: &WeierstrassIsomorphism<BigRational>,
) -> bool {
    let mut checked = 0;
    for p in [10091u64, 10111, 10141] {
        if p % 5 != 1 {
            continue;
        }
        // a fifth root of unity mod p to reduce zeta
        let root = {
            let mut base = 2;
            loop {
                let r = modp::pow_mod(base, (p - 1) / 5, p);
                if r != 1 {
                    break r;
                }
                base += 1;
            }
        };
        let Some(eta_p) = ModIsogeny::from_rational(eta, p) else {
            continue;
        };
        let Some(dual_p) = ModIsogeny::from_cyclo(dual, p, root) else {
            continue;
        };
        let Some(closing_p) = ModIso::from_rational(closing, p) else {
            continue;
        };
        if eta_p.source.discriminant_is_zero() || dual_p.source.discriminant_is_zero() {
            continue;
        }
        for pt in eta_p.source.sample_points(3, 20) {
            let image = closing_p.apply(dual_p.apply(eta_p.apply(pt)));
            let five = eta_p.source.mul(5, pt);
            let ok = image == five || image == eta_p.source.neg(five);
            if !ok {
                return false;
            }
            checked += 1;
        }
        if checked >= 20 {
            return true;
        }
    }
    checked > 0
}

/// Assemble the full isogeny bundle for a family member: the quotient
/// isogeny, the verified dual kernel, the dual computed over K with its
/// rational descent, and the normal-form data of the quotient.
pub fn isogeny_bundle(curve: &FamilyCurve) -> Result<IsogenyBundle, IsogenyError> {
    let eta = velu_quotient(curve);
    let psi5 = division_polynomials(&eta.target).psi5;
    let quotient_k = lift_model(&eta.target);
    for h in quadratic_factor_candidates(&psi5) {
        let Some(r_point) = kernel_point_over_k(&quotient_k, &h) else {
            continue;
        };
        let dual = VeluIsogeny::new(&quotient_k, &r_point);
        let Some(dual_codomain) = descend_model(&dual.target) else {
            continue;
        };
        let Some(closing_iso) = find_isomorphism(&dual_codomain, &curve.parametric) else {
            continue;
        };
        if !composite_verifies(&eta, &dual, &closing_iso) {
            continue;
        }
        let (dtilde, tau) = tate_normal_form(&quotient_k, &r_point);
        return Ok(IsogenyBundle {
            eta,
            kernel_poly: h,
            dual,
            dual_codomain,
            closing_iso,
            dtilde,
            tau,
        });
    }
    Err(IsogenyError::DualKernelNotFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::family::curve_from_uv;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn normal_form_fixed_point() {
        // applying the procedure to (E_d, (0,0)) returns d and the identity
        let c = curve_from_uv(3, 2).unwrap();
        let model = lift_model(&c.parametric);
        let origin = lift_point(&c.five_torsion_parametric());
        let (dt, tau) = tate_normal_form(&model, &origin);
        assert_eq!(dt.rational_part().unwrap(), rat(3, 2));
        assert_eq!(tau.apply(&origin), origin);
    }

    #[test]
    fn normal_form_orbit_translations() {
        // (0,-d) -> parameter d again; (-d, d^2) -> parameter -1/d
        let c = curve_from_uv(7, 2).unwrap();
        let d = rat(7, 2);
        let model = lift_model(&c.parametric);
        let p4 = lift_point(&CurvePoint::Affine(rat(0, 1), -d.clone()));
        let (dt, _) = tate_normal_form(&model, &p4);
        assert_eq!(dt.rational_part().unwrap(), d);
        let p2 = lift_point(&CurvePoint::Affine(-d.clone(), d.clone() * d.clone()));
        let (dt2, _) = tate_normal_form(&model, &p2);
        assert_eq!(dt2.rational_part().unwrap(), -rat(2, 7));
    }

    #[test]
    fn bundle_for_unit_curve() {
        let c = curve_from_uv(1, 1).unwrap();
        let b = isogeny_bundle(&c).unwrap();
        assert_eq!(b.kernel_poly.degree(), 2);
        // the quotient of E_1 by its 5-torsion is 11a-isogenous; its own
        // 5-division polynomial must vanish on the kernel quadratic roots
        assert!(division_polynomials(b.quotient()).psi5.divisible_by(&b.kernel_poly));
        // dtilde generates the same model shape over K
        let family = WeierstrassModel::five_torsion_family(b.dtilde.clone());
        assert_eq!(
            b.quotient_over_k().transform(&b.tau),
            family,
            "tau lands on the family model"
        );
    }

    #[test]
    fn bundles_across_curves() {
        for (u, v) in [(2u64, 1u64), (1, 2), (3, 1), (7, 1), (5, 4)] {
            let c = curve_from_uv(u, v).unwrap();
            let b = isogeny_bundle(&c).unwrap_or_else(|e| panic!("({u},{v}): {e}"));
            // the normal-form parameter keeps the origin at order 5
            let family = WeierstrassModel::five_torsion_family(b.dtilde.clone());
            let origin = CurvePoint::Affine(CycloElement::zero(), CycloElement::zero());
            assert_eq!(family.order_up_to(&origin, 6), Some(5), "({u},{v})");
        }
    }

    #[test]
    fn dual_composite_on_rational_points() {
        // (3,1) has rank > 0: verify the composite on an actual rational point
        let c = curve_from_uv(3, 1).unwrap();
        let b = isogeny_bundle(&c).unwrap();
        let pts = crate::curve::search::point_search(
            &c.integral,
            crate::curve::search::SearchBounds {
                numerator_bound: 2000,
                denominator_bound: 4,
            },
        );
        let mut tested = 0;
        for p in pts {
            let pp = c.integral_to_parametric.apply(&p);
            let im = b.eta.apply(&pp);
            if im.is_infinity() {
                continue;
            }
            let back = b.closing_iso.apply(&b.dual_apply_rational(&im));
            let five = c.parametric.mul(5, &pp);
            assert!(back == five || back == c.parametric.negate(&five));
            tested += 1;
        }
        assert!(tested >= 2);
    }
}
