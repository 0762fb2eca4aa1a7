//! Classes in K(S,5): valuations mod 5 at a fixed set of prime ideals plus
//! a unit part resolved by quintic residue characters at auxiliary split
//! primes. No norm is ever factored, so elements with huge coordinates are
//! handled.

use super::element::CycloElement;
use super::ideal::{
    fifth_roots_of_unity, mul_mod as mod_mul, pow_mod as mod_pow, reduce_mod_split_prime,
    CycloError, PrimeIdealGen,
};
use crate::arith::{int_valuation, BigRational};
use num_traits::Zero;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Auxiliary split prime lambda = 1 mod 5 with the fixed fifth root of unity
/// its chosen prime ideal reduces zeta to, plus precomputed characters of
/// the unit generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxPrime {
    pub lambda: u64,
    pub root: u64,
    pub chi_zeta: u8,
    pub chi_one_plus_zeta: u8,
}

/// Discrete log in the order-5 subgroup of F_lambda* generated by `root`.
fn mu5_dlog(value: u64, root: u64, lambda: u64) -> u8 {
    let mut pw = 1u64;
    for k in 0..5u8 {
        if pw == value {
            return k;
        }
        pw = mod_mul(pw, root, lambda);
    }
    panic!("value {value} not in the order-5 subgroup mod {lambda}");
}

impl AuxPrime {
    pub fn new(lambda: u64) -> Self {
        let root = fifth_roots_of_unity(lambda)[0];
        let chi = |val: u64| mu5_dlog(mod_pow(val, (lambda - 1) / 5, lambda), root, lambda);
        AuxPrime {
            lambda,
            root,
            chi_zeta: chi(root),
            chi_one_plus_zeta: chi((1 + root) % lambda),
        }
    }

    /// Quintic character of an integral element; `None` when the reduction
    /// vanishes and this prime must be skipped.
    pub fn character(&self, z: &CycloElement) -> Option<u8> {
        let val = reduce_mod_split_prime(z, self.lambda, self.root)?;
        Some(mu5_dlog(
            mod_pow(val, (self.lambda - 1) / 5, self.lambda),
            self.root,
            self.lambda,
        ))
    }

    pub fn character_of_int(&self, m: &BigInt) -> Option<u64> {
        let mm = num_integer::Integer::mod_floor(m, &BigInt::from(self.lambda))
            .to_u64()
            .unwrap();
        (mm != 0).then_some(mm)
    }
}

/// The fixed pool: first eight primes above 10^6 congruent to 1 mod 5.
pub fn auxiliary_primes() -> Vec<AuxPrime> {
    aux_pool().to_vec()
}

pub(super) fn aux_pool() -> &'static [AuxPrime] {
    use std::sync::OnceLock;
    static POOL: OnceLock<Vec<AuxPrime>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::with_capacity(8);
        let mut n: u64 = 1_000_001;
        while out.len() < 8 {
            if n % 5 == 1 && crate::arith::is_prime(&BigInt::from(n)) {
                out.push(AuxPrime::new(n));
            }
            n += 2;
        }
        out
    })
}

/// Class of an element of K*/K*^5 supported on an ordered list of prime
/// ideals: exponents mod 5 per ideal plus exponents of zeta_5 and
/// (1 + zeta_5) for the unit part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KS5Vector {
    support: Vec<(u64, u32)>,
    exponents: Vec<u8>,
    unit_exponents: [u8; 2],
}

impl KS5Vector {
    pub fn support(&self) -> &[(u64, u32)] {
        &self.support
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exponents
    }

    pub fn unit_exponents(&self) -> [u8; 2] {
        self.unit_exponents
    }

    pub fn is_zero_class(&self) -> bool {
        self.unit_exponents == [0, 0] && self.exponents.iter().all(|&e| e == 0)
    }

    pub fn zero(support: &[(u64, u32)]) -> Self {
        KS5Vector {
            support: support.to_vec(),
            exponents: vec![0; support.len()],
            unit_exponents: [0, 0],
        }
    }

    pub fn from_parts(support: Vec<(u64, u32)>, exponents: Vec<u8>, unit_exponents: [u8; 2]) -> Self {
        assert_eq!(support.len(), exponents.len());
        KS5Vector {
            support,
            exponents: exponents.into_iter().map(|e| e % 5).collect(),
            unit_exponents: unit_exponents.map(|e| e % 5),
        }
    }

    pub fn exponent_at(&self, key: (u64, u32)) -> u8 {
        self.support
            .iter()
            .position(|&k| k == key)
            .map_or(0, |i| self.exponents[i])
    }

    /// Row over unit columns followed by the given ideal columns.
    pub fn row_over(&self, columns: &[(u64, u32)]) -> Vec<u8> {
        let mut row = Vec::with_capacity(2 + columns.len());
        row.push(self.unit_exponents[0]);
        row.push(self.unit_exponents[1]);
        row.extend(columns.iter().map(|&k| self.exponent_at(k)));
        row
    }
}

/// Unit-part exponents (a0, a1) with u = zeta^a0 (1+zeta)^a1 modulo fifth
/// powers, for `u` a unit times a fifth power. Resolved by solving the
/// 2-unknown linear system of quintic characters over at least two
/// independent auxiliary primes.
pub fn unit_class(u: &CycloElement, aux: &[AuxPrime]) -> Result<(u8, u8), CycloError> {
    class_from_characters(u, &[], aux)
}

fn class_from_characters(
    x: &CycloElement,
    stripped: &[(&PrimeIdealGen, i64)],
    aux: &[AuxPrime],
) -> Result<(u8, u8), CycloError> {
    let m = x.denominator_lcm();
    let z = x.scale(&BigRational::from(m.clone()));
    let mut rows: Vec<(u8, u8, u8)> = Vec::new();
    for a in aux {
        let Some(chi_z) = a.character(&z) else {
            continue;
        };
        let Some(m_red) = a.character_of_int(&m) else {
            continue;
        };
        let chi_m = mu5_dlog(mod_pow(m_red, (a.lambda - 1) / 5, a.lambda), a.root, a.lambda);
        let mut rhs = (5 + chi_z - chi_m) % 5;
        for &(gen, v) in stripped {
            let chi_t = a
                .character(&gen.generator)
                .expect("generator norm is coprime to the auxiliary prime");
            let vv = v.rem_euclid(5) as u8;
            rhs = (rhs + 25 - vv * chi_t % 5) % 5;
        }
        rows.push((a.chi_zeta, a.chi_one_plus_zeta, rhs));
    }
    // Solve a0 * chi(zeta) + a1 * chi(1+zeta) = rhs from two independent rows.
    for i in 0..rows.len() {
        for j in (i + 1)..rows.len() {
            let (c0, c1, r0) = rows[i];
            let (d0, d1, r1) = rows[j];
            let det = (5 + c0 * d1 % 5 - c1 * d0 % 5) % 5;
            if det == 0 {
                continue;
            }
            let det_inv = [0u8, 1, 3, 2, 4][det as usize];
            let a0 = (r0 * d1 % 5 + (5 - c1) * r1 % 5) % 5 * det_inv % 5;
            let a1 = (c0 * r1 % 5 + (5 - d0) * r0 % 5) % 5 * det_inv % 5;
            debug_assert!(
                rows.iter()
                    .all(|&(e0, e1, rr)| (a0 * e0 + a1 * e1) % 5 == rr % 5),
                "inconsistent character system"
            );
            return Ok((a0, a1));
        }
    }
    Err(CycloError::CharacterPool)
}

/// K(S,5) class of a nonzero element whose valuations outside the support
/// are divisible by 5 (guaranteed by the descent theory for all inputs).
/// Valuations at the support are exact divisions; the unit part is computed
/// by characters without ever forming the stripped element.
pub fn ks5_class(
    x: &CycloElement,
    support: &[PrimeIdealGen],
    aux: &[AuxPrime],
) -> Result<KS5Vector, CycloError> {
    assert!(!x.is_zero());
    let m = x.denominator_lcm();
    let z = x.scale(&BigRational::from(m.clone()));
    let mut vals: Vec<(&PrimeIdealGen, i64)> = Vec::with_capacity(support.len());
    for gen in support {
        let v = super::ideal::integral_valuation(&z, gen)
            - gen.ramification() * int_valuation(&m, gen.rational_prime);
        vals.push((gen, v));
    }
    let unit_exponents = class_from_characters(x, &vals, aux)?;
    Ok(KS5Vector {
        support: support.iter().map(PrimeIdealGen::key).collect(),
        exponents: vals.iter().map(|&(_, v)| v.rem_euclid(5) as u8).collect(),
        unit_exponents: [unit_exponents.0, unit_exponents.1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::prime_generators;
    use num_traits::Zero;

    fn aux() -> Vec<AuxPrime> {
        auxiliary_primes()
    }

    #[test]
    fn pool_is_deterministic_and_split() {
        let pool = aux();
        assert_eq!(pool.len(), 8);
        for a in &pool {
            assert!(a.lambda > 1_000_000);
            assert_eq!(a.lambda % 5, 1);
            assert_eq!(mod_pow(a.root, 5, a.lambda), 1);
        }
        assert_eq!(pool, aux());
    }

    #[test]
    fn unit_class_examples() {
        let pool = aux();
        let one = CycloElement::from_int_coeffs([1, 0, 0, 0]);
        assert_eq!(unit_class(&one, &pool).unwrap(), (0, 0));
        let minus_one = CycloElement::from_int_coeffs([-1, 0, 0, 0]);
        assert_eq!(unit_class(&minus_one, &pool).unwrap(), (0, 0));
        let u = CycloElement::from_int_coeffs([1, 1, 0, 0]).pow(7);
        assert_eq!(unit_class(&u, &pool).unwrap(), (0, 2));
        let z = CycloElement::zeta();
        assert_eq!(unit_class(&z, &pool).unwrap(), (1, 0));
    }

    #[test]
    fn unit_class_roundtrip_randomized() {
        let pool = aux();
        let mut state = 0x1234ABCD5678EFu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..40 {
            let a = (next() % 5) as u8;
            let b = (next() % 5) as u8;
            let y = CycloElement::from_int_coeffs([
                (next() % 7) as i64 - 3,
                (next() % 7) as i64 - 3,
                (next() % 7) as i64 - 3,
                (next() % 7) as i64 - 3,
            ]);
            if y.is_zero() {
                continue;
            }
            let u = CycloElement::zeta().pow(a as u32)
                * CycloElement::from_int_coeffs([1, 1, 0, 0]).pow(b as u32)
                * y.pow(5);
            assert_eq!(unit_class(&u, &pool).unwrap(), (a, b), "a={a} b={b}");
        }
    }

    #[test]
    fn ks5_trivial_and_generator_powers() {
        let pool = aux();
        let gens = prime_generators(11).unwrap();
        let one = CycloElement::from_int_coeffs([1, 0, 0, 0]);
        let v = ks5_class(&one, &gens, &pool).unwrap();
        assert!(v.is_zero_class());
        let t6 = gens[1].generator.pow(6);
        let v = ks5_class(&t6, &gens, &pool).unwrap();
        assert_eq!(v.unit_exponents(), [0, 0]);
        assert_eq!(v.exponent_at((11, 1)), 1);
        assert_eq!(v.exponent_at((11, 0)), 0);
    }

    #[test]
    fn ks5_of_eleven_times_unit() {
        // 11 * (1 + zeta): exponent 1 at each of the four primes over 11,
        // unit part (0, 1)
        let pool = aux();
        let mut support = prime_generators(5).unwrap();
        support.extend(prime_generators(11).unwrap());
        let x = CycloElement::from_rational(BigRational::from(BigInt::from(11)))
            * CycloElement::from_int_coeffs([1, 1, 0, 0]);
        let v = ks5_class(&x, &support, &pool).unwrap();
        assert_eq!(v.unit_exponents(), [0, 1]);
        assert_eq!(v.exponent_at((5, 0)), 0);
        for idx in 0..4 {
            assert_eq!(v.exponent_at((11, idx)), 1);
        }
    }

    #[test]
    fn ks5_homomorphism_randomized() {
        let pool = aux();
        let mut support = prime_generators(5).unwrap();
        support.extend(prime_generators(11).unwrap());
        support.extend(prime_generators(19).unwrap());
        let mut state = 0xFEEDFACE1234u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..20 {
            let pick = |s: &mut dyn FnMut() -> u64| {
                let mut x = CycloElement::from_int_coeffs([1, 0, 0, 0]);
                for g in &support {
                    let e = (s() % 4) as u32;
                    x = x * g.generator.pow(e);
                }
                let u = (s() % 5) as u32;
                x * CycloElement::zeta().pow(u)
            };
            let a = pick(&mut next);
            let b = pick(&mut next);
            let ca = ks5_class(&a, &support, &pool).unwrap();
            let cb = ks5_class(&b, &support, &pool).unwrap();
            let cab = ks5_class(&(a.clone() * b.clone()), &support, &pool).unwrap();
            let sum_exp: Vec<u8> = ca
                .exponents()
                .iter()
                .zip(cb.exponents())
                .map(|(&x, &y)| (x + y) % 5)
                .collect();
            assert_eq!(cab.exponents(), &sum_exp[..]);
            assert_eq!(
                cab.unit_exponents()[0],
                (ca.unit_exponents()[0] + cb.unit_exponents()[0]) % 5
            );
            assert_eq!(
                cab.unit_exponents()[1],
                (ca.unit_exponents()[1] + cb.unit_exponents()[1]) % 5
            );
        }
    }
}
