//! Division polynomials in x for long Weierstrass models over Q, up to the
//! degree-25 relation used to divide points by 5.

use super::model::WeierstrassModel;
use crate::arith::poly::RatPoly;
use crate::arith::BigRational;
use num_bigint::BigInt;

pub struct DivisionPolynomials {
    /// psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6 (square of the 2-division value).
    pub psi2_sq: RatPoly,
    /// psi_3.
    pub psi3: RatPoly,
    /// psi_4 / psi_2.
    pub f4: RatPoly,
    /// psi_5 (degree 12, leading coefficient 5).
    pub psi5: RatPoly,
    /// psi_6 / psi_2.
    pub f6: RatPoly,
}

fn rp(v: &[BigRational]) -> RatPoly {
    RatPoly::new(v.to_vec())
}

pub fn division_polynomials(e: &WeierstrassModel<BigRational>) -> DivisionPolynomials {
    let z = BigRational::from(BigInt::from(0));
    let c = |n: i64| BigRational::from(BigInt::from(n));
    let b2 = e.b2();
    let b4 = e.b4();
    let b6 = e.b6();
    let b8 = e.b8();
    let psi2_sq = rp(&[b6.clone(), c(2) * &b4, b2.clone(), c(4)]);
    let psi3 = rp(&[b8.clone(), c(3) * &b6, c(3) * &b4, b2.clone(), c(3)]);
    let f4 = rp(&[
        &b4 * &b8 - &b6 * &b6,
        &b2 * &b8 - &b4 * &b6,
        c(10) * &b8,
        c(10) * &b6,
        c(5) * &b4,
        b2.clone(),
        c(2),
    ]);
    let psi5 = f4.mul(&psi2_sq).mul(&psi2_sq).sub(&psi3.mul(&psi3).mul(&psi3));
    let f6 = psi3.mul(&psi5.sub(&f4.mul(&f4)));
    let _ = z;
    DivisionPolynomials {
        psi2_sq,
        psi3,
        f4,
        psi5,
        f6,
    }
}

impl DivisionPolynomials {
    /// x([5]P) = x - psi4 psi6 / psi5^2, with psi4 psi6 = psi2^2 f4 f6.
    /// Returns (numerator, denominator) with numerator monic of degree 25.
    pub fn mul5_x_fraction(&self) -> (RatPoly, RatPoly) {
        let den = self.psi5.mul(&self.psi5);
        let x = RatPoly::from_int_coeffs(&[0, 1]);
        let num = x.mul(&den).sub(&self.psi2_sq.mul(&self.f4).mul(&self.f6));
        (num, den)
    }

    /// The degree-25 polynomial whose rational roots are x-coordinates of
    /// points Q with x([5]Q) equal to the given value.
    pub fn division_by_5_poly(&self, target_x: &BigRational) -> RatPoly {
        let (num, den) = self.mul5_x_fraction();
        num.sub(&den.scale(target_x))
    }
}
