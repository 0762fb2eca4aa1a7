//! The two-parameter curve family: integral models, reduction
//! classification, conductors, and the prime sets driving the local factor.

use super::model::{CurvePoint, WeierstrassIsomorphism, WeierstrassModel};
use crate::arith::{factorize, int_valuation, ArithError, BigRational};
use num_bigint::BigInt;
use num_traits::One;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionType {
    Good,
    SplitMultiplicative,
    NonSplitMultiplicative,
    Additive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeReduction {
    pub prime: u64,
    pub kind: ReductionType,
    /// Whether the distinguished 5-torsion point lies on the identity
    /// component of the Neron model.
    pub torsion_on_identity: bool,
    /// Valuation of the minimal discriminant.
    pub disc_valuation: u32,
}

/// Per-curve reduction bundle: bad-prime classification, conductor, and the
/// prime sets S (bad plus 5), T (dividing uv), and U (split-type divisors of
/// the quadratic form, plus 5 exactly when its 5-valuation is 3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionData {
    pub u: u64,
    pub v: u64,
    pub bad_primes: Vec<PrimeReduction>,
    pub conductor: BigInt,
    pub s_primes: Vec<u64>,
    pub t_primes: Vec<u64>,
    pub u_primes: Vec<u64>,
    /// 5-adic valuation of u^2 + 11uv - v^2 (always 0, 2, or 3).
    pub quad_5val: u32,
}

/// Integral model, the parameter-form model, the coordinate change between
/// them, and the reduction data, for the curve indexed by coprime positive
/// (u, v) with parameter d = u/v.
pub struct FamilyCurve {
    pub u: u64,
    pub v: u64,
    /// d = u/v.
    pub d: BigRational,
    /// y^2 + (u+v)xy + uv^2 y = x^3 + uv x^2 (global minimal).
    pub integral: WeierstrassModel<BigRational>,
    /// y^2 + (d+1)xy + dy = x^3 + dx^2.
    pub parametric: WeierstrassModel<BigRational>,
    /// Maps points of `integral` to points of `parametric`.
    pub integral_to_parametric: WeierstrassIsomorphism<BigRational>,
    pub reduction: ReductionData,
}

impl FamilyCurve {
    /// The distinguished 5-torsion point (0, 0) on the parametric model.
    pub fn five_torsion_parametric(&self) -> CurvePoint<BigRational> {
        CurvePoint::Affine(BigRational::from(BigInt::from(0)), BigRational::from(BigInt::from(0)))
    }

    /// The same point on the integral model.
    pub fn five_torsion_integral(&self) -> CurvePoint<BigRational> {
        self.integral_to_parametric
            .invert()
            .apply(&self.five_torsion_parametric())
    }
}

pub fn curve_from_uv(u: u64, v: u64) -> Result<FamilyCurve, ArithError> {
    assert!(u >= 1 && v >= 1, "parameters must be positive");
    if num_integer::Integer::gcd(&u, &v) != 1 {
        return Err(ArithError::SupportViolation(format!(
            "parameters ({u}, {v}) are not coprime"
        )));
    }
    let d = BigRational::new(BigInt::from(u), BigInt::from(v));
    let parametric = WeierstrassModel::five_torsion_family(d.clone());
    let uv = BigInt::from(u) * BigInt::from(v);
    let integral = WeierstrassModel::new(
        BigRational::from(BigInt::from(u) + BigInt::from(v)),
        BigRational::from(uv.clone()),
        BigRational::from(&uv * BigInt::from(v)),
        BigRational::from(BigInt::from(0)),
        BigRational::from(BigInt::from(0)),
    );
    // x = (1/v)^2 X + 0, y = (1/v)^3 Y: scaling with u-parameter v maps the
    // integral model onto the parametric one.
    let integral_to_parametric =
        WeierstrassIsomorphism::scaling(BigRational::from(BigInt::from(v)));
    debug_assert_eq!(integral.transform(&integral_to_parametric), parametric);

    // u^2 + 11uv - v^2; negative when v exceeds roughly 11.09 u.
    let quad = BigInt::from(u) * BigInt::from(u) + BigInt::from(11) * &uv
        - BigInt::from(v) * BigInt::from(v);
    let disc = -(uv.pow(5)) * &quad;
    debug_assert_eq!(integral.discriminant(), BigRational::from(disc.clone()));

    let uv_factors = factorize(&uv)?;
    let quad_factors = factorize(&quad)?;
    let quad_5val = quad_factors.exponent_of(5);
    debug_assert!(matches!(quad_5val, 0 | 2 | 3));

    let mut bad_primes = Vec::new();
    let mut t_primes = Vec::new();
    let mut u_primes = Vec::new();
    let mut conductor = BigInt::one();
    for &(p, e) in uv_factors.factors() {
        bad_primes.push(PrimeReduction {
            prime: p,
            kind: ReductionType::SplitMultiplicative,
            torsion_on_identity: false,
            disc_valuation: 5 * e,
        });
        t_primes.push(p);
        conductor *= BigInt::from(p);
    }
    for &(p, e) in quad_factors.factors() {
        let kind = match p % 5 {
            0 => ReductionType::Additive,
            1 => ReductionType::SplitMultiplicative,
            4 => ReductionType::NonSplitMultiplicative,
            _ => unreachable!("divisors of u^2+11uv-v^2 are 5 or +-1 mod 5"),
        };
        bad_primes.push(PrimeReduction {
            prime: p,
            kind,
            torsion_on_identity: true,
            disc_valuation: e,
        });
        if p % 5 == 1 {
            u_primes.push(p);
        }
        if p == 5 {
            conductor *= BigInt::from(25u32);
        } else {
            conductor *= BigInt::from(p);
        }
    }
    if quad_5val == 3 {
        u_primes.push(5);
    }
    bad_primes.sort_by_key(|r| r.prime);
    t_primes.sort_unstable();
    u_primes.sort_unstable();
    let mut s_primes: Vec<u64> = bad_primes.iter().map(|r| r.prime).collect();
    if !s_primes.contains(&5) {
        s_primes.push(5);
    }
    s_primes.sort_unstable();

    let reduction = ReductionData {
        u,
        v,
        bad_primes,
        conductor,
        s_primes,
        t_primes,
        u_primes,
        quad_5val,
    };
    Ok(FamilyCurve {
        u,
        v,
        d,
        integral,
        parametric,
        integral_to_parametric,
        reduction,
    })
}

/// The quadratic form u^2 + 11uv - v^2 as a bigint.
pub fn quad_form(u: u64, v: u64) -> BigInt {
    BigInt::from(u) * BigInt::from(u) + BigInt::from(11) * BigInt::from(u) * BigInt::from(v)
        - BigInt::from(v) * BigInt::from(v)
}

/// 5-adic absolute value classification of the isogeny's formal-group
/// leading coefficient, together with the 5-adic cokernel shape it forces:
/// the number of Z/5 factors in coker over Q_5 (0, 1, or 2).
pub fn eta_prime_5val(u: u64, v: u64) -> (BigRational, u32) {
    let one = BigRational::one();
    let fifth = BigRational::new(BigInt::one(), BigInt::from(5));
    if u % 5 == 0 || v % 5 == 0 {
        return (one, 0);
    }
    let v5 = int_valuation(&quad_form(u, v), 5);
    match v5 {
        0 => (one, 1),
        2 => (one, 1),
        3 => (fifth, 2),
        _ => unreachable!("5-valuation of the quadratic form is 0, 2, or 3"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_parameters() {
        let c = curve_from_uv(1, 1).unwrap();
        assert_eq!(c.reduction.conductor, BigInt::from(11));
        assert_eq!(c.reduction.t_primes, Vec::<u64>::new());
        assert_eq!(c.reduction.u_primes, vec![11]);
        assert_eq!(c.reduction.s_primes, vec![5, 11]);
        assert_eq!(
            c.integral.discriminant(),
            BigRational::from(BigInt::from(-11))
        );
        let bad = &c.reduction.bad_primes;
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].kind, ReductionType::SplitMultiplicative);
        assert!(bad[0].torsion_on_identity);
    }

    #[test]
    fn additive_at_five() {
        let c = curve_from_uv(7, 1).unwrap();
        assert_eq!(quad_form(7, 1), BigInt::from(125));
        assert_eq!(c.reduction.quad_5val, 3);
        assert_eq!(c.reduction.t_primes, vec![7]);
        assert_eq!(c.reduction.u_primes, vec![5]);
        assert_eq!(c.reduction.s_primes, vec![5, 7]);
        assert_eq!(c.reduction.conductor, BigInt::from(175));
        let at5 = c.reduction.bad_primes.iter().find(|r| r.prime == 5).unwrap();
        assert_eq!(at5.kind, ReductionType::Additive);
    }

    #[test]
    fn squared_five_divisor() {
        let c = curve_from_uv(2, 1).unwrap();
        assert_eq!(quad_form(2, 1), BigInt::from(25));
        assert_eq!(c.reduction.quad_5val, 2);
        assert!(c.reduction.u_primes.is_empty());
        assert_eq!(c.reduction.t_primes, vec![2]);
        assert_eq!(c.reduction.conductor, BigInt::from(50));
    }

    #[test]
    fn five_dividing_uv() {
        let c = curve_from_uv(1, 5).unwrap();
        assert!(c.reduction.t_primes.contains(&5));
        assert!(!c.reduction.u_primes.contains(&5));
        let at5 = c.reduction.bad_primes.iter().find(|r| r.prime == 5).unwrap();
        assert_eq!(at5.kind, ReductionType::SplitMultiplicative);
    }

    #[test]
    fn non_coprime_rejected() {
        assert!(curve_from_uv(2, 4).is_err());
    }

    #[test]
    fn discriminant_matches_formula_for_sample() {
        for (u, v) in [(1u64, 2u64), (3, 4), (19, 20), (5, 7), (9, 11)] {
            let c = curve_from_uv(u, v).unwrap();
            let uv = BigInt::from(u * v);
            let expected = -(uv.pow(5)) * quad_form(u, v);
            assert_eq!(c.integral.discriminant(), BigRational::from(expected));
        }
    }

    #[test]
    fn lemma_constraints_on_random_parameters() {
        let mut state = 0xC0FFEE123456u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut checked = 0;
        while checked < 200 {
            let u = next() % 200 + 1;
            let v = next() % 200 + 1;
            if num_integer::Integer::gcd(&u, &v) != 1 {
                continue;
            }
            checked += 1;
            let c = curve_from_uv(u, v).unwrap();
            assert!(matches!(c.reduction.quad_5val, 0 | 2 | 3), "({u},{v})");
            for r in &c.reduction.bad_primes {
                if !c.reduction.t_primes.contains(&r.prime) && r.prime != 5 {
                    assert!(
                        r.prime % 5 == 1 || r.prime % 5 == 4,
                        "bad prime {} at ({u},{v})",
                        r.prime
                    );
                }
            }
        }
    }

    #[test]
    fn eta_prime_five_classification() {
        assert_eq!(eta_prime_5val(2, 1).1, 1);
        assert_eq!(eta_prime_5val(7, 1).1, 2);
        assert_eq!(
            eta_prime_5val(7, 1).0,
            BigRational::new(BigInt::one(), BigInt::from(5))
        );
        assert_eq!(eta_prime_5val(1, 5).1, 0);
        assert_eq!(eta_prime_5val(1, 1).1, 1);
    }
}
