//! Dense univariate polynomials over Q with exact real-root isolation and
//! rational-root extraction.
//!
//! Root isolation is derivative-recursive: critical points of the squarefree
//! part isolate monotone stretches, interval endpoints are refined until each
//! block is certified root-free or a sign change pins a single root. Rational
//! roots are then reconstructed as the simplest rational inside a
//! sufficiently narrow isolating interval and verified by exact evaluation.

use super::BigRational;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial with rational coefficients, ascending degree order, normalized
/// so the leading coefficient is nonzero (empty = zero polynomial).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        RatPoly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn monomial(c: BigRational, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        coeffs[deg] = c;
        RatPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports -1.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from(BigInt::from(i as i64 + 1)))
                .collect(),
        )
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        RatPoly::new(out)
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dlen = divisor.coeffs.len();
        if rem.len() < dlen {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dlen + 1];
        let lead_inv = BigRational::one() / divisor.leading();
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dlen - 1] * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    let t = d * &c;
                    rem[i + j] -= t;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dlen - 1);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// True when `divisor` divides `self` exactly.
    pub fn divisible_by(&self, divisor: &RatPoly) -> bool {
        self.div_rem(divisor).1.is_zero()
    }

    /// Integer coefficient vector after clearing denominators and removing
    /// content; sign normalized to positive leading coefficient.
    pub fn primitive_int(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = num_integer::Integer::lcm(&lcm, c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = num_integer::Integer::gcd(&content, c);
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        for c in ints.iter_mut() {
            *c /= &content;
        }
        ints
    }

    pub fn from_ints(coeffs: Vec<BigInt>) -> RatPoly {
        RatPoly::new(coeffs.into_iter().map(BigRational::from).collect())
    }

    /// Squarefree part `self / gcd(self, self')`, primitive over Z.
    pub fn squarefree_part(&self) -> RatPoly {
        if self.degree() <= 1 {
            return RatPoly::from_ints(self.primitive_int());
        }
        let g = int_poly_gcd(self.primitive_int(), self.derivative().primitive_int());
        if g.len() <= 1 {
            return RatPoly::from_ints(self.primitive_int());
        }
        let (q, r) = RatPoly::from_ints(self.primitive_int()).div_rem(&RatPoly::from_ints(g));
        debug_assert!(r.is_zero());
        RatPoly::from_ints(q.primitive_int())
    }

    /// Cauchy bound: all real roots lie in (-b, b).
    pub fn root_bound(&self) -> BigRational {
        let lead = self.leading();
        assert!(!lead.is_zero());
        let mut m = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = (c / &lead).abs();
            if q > m {
                m = q;
            }
        }
        m + BigRational::one()
    }
}

fn int_content(p: &[BigInt]) -> BigInt {
    let mut c = BigInt::zero();
    for x in p {
        c = num_integer::Integer::gcd(&c, x);
    }
    c
}

fn strip_content(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        return p;
    }
    let mut c = int_content(&p);
    if p.last().unwrap().is_negative() {
        c = -c;
    }
    for x in p.iter_mut() {
        *x /= &c;
    }
    p
}

/// Pseudo-remainder of primitive integer polynomials.
fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    let lead_b = b.last().unwrap().clone();
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x *= &lead_b;
        }
        for (j, bj) in b.iter().enumerate() {
            let t = bj * &c;
            r[shift + j] -= t;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Gcd of integer polynomials via primitive PRS.
pub fn int_poly_gcd(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let mut a = strip_content(a);
    let mut b = strip_content(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = strip_content(int_prem(&a, &b));
        a = b;
        b = r;
    }
    a
}

/// A real root of a squarefree polynomial: either an exact rational or an
/// open isolating interval with a sign change.
#[derive(Debug, Clone)]
pub enum RealRoot {
    Exact(BigRational),
    Interval(BigRational, BigRational),
}

impl RealRoot {
    pub fn approx(&self) -> f64 {
        match self {
            RealRoot::Exact(q) => rational_to_f64(q),
            RealRoot::Interval(lo, hi) => {
                (rational_to_f64(lo) + rational_to_f64(hi)) / 2.0
            }
        }
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // Fall back through a scaled division for very large entries.
        let scaled = (q * BigRational::from(BigInt::from(1i64 << 40))).to_integer();
        scaled.to_f64().unwrap_or(f64::INFINITY) / (1i64 << 40) as f64
    })
}

fn sign(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Bisect a sign-change interval of `f` down to the requested width.
pub fn refine_root(f: &RatPoly, root: &mut RealRoot, width: &BigRational) {
    let RealRoot::Interval(lo, hi) = root else {
        return;
    };
    let mut slo = sign(&f.eval(lo));
    debug_assert_ne!(slo * sign(&f.eval(hi)), 1, "not a sign-change interval");
    let two = BigRational::from(BigInt::from(2));
    while &(&*hi - &*lo) > width {
        let mid = (&*lo + &*hi) / &two;
        let sm = sign(&f.eval(&mid));
        if sm == 0 {
            *root = RealRoot::Exact(mid);
            return;
        }
        if sm == slo {
            *lo = mid;
        } else {
            *hi = mid;
        }
        let _ = &mut slo;
    }
}

/// Bound for |f'| over [lo, hi], used to certify root-free blocks.
fn derivative_bound(df: &RatPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let m = if lo.abs() > hi.abs() { lo.abs() } else { hi.abs() };
    let mut acc = BigRational::zero();
    let mut pw = BigRational::one();
    for c in df.coeffs() {
        acc += c.abs() * &pw;
        pw *= &m;
    }
    acc
}

/// Isolate all real roots of `f` (any nonzero polynomial; a squarefree
/// reduction is applied internally). Returned roots are in increasing order.
pub fn isolate_real_roots(f: &RatPoly) -> Vec<RealRoot> {
    let f = f.squarefree_part();
    isolate_squarefree(&f)
}

fn isolate_squarefree(f: &RatPoly) -> Vec<RealRoot> {
    match f.degree() {
        d if d <= 0 => return Vec::new(),
        1 => {
            let root = -&f.coeffs()[0] / &f.coeffs()[1];
            return vec![RealRoot::Exact(root)];
        }
        _ => {}
    }
    let df = f.derivative();
    let crits = isolate_real_roots(&df);
    let bound = f.root_bound();
    let two = BigRational::from(BigInt::from(2));

    // Turn every critical point into a closed block [lo, hi] on which f is
    // certified to have no root, or an exact root of f discovered on the way.
    let mut exact_roots: Vec<BigRational> = Vec::new();
    let mut blocks: Vec<(BigRational, BigRational)> = Vec::new();
    for crit in crits {
        match crit {
            RealRoot::Exact(c) => {
                if f.eval(&c).is_zero() {
                    // Multiple root would contradict squarefreeness.
                    unreachable!("critical point is a root of the squarefree part");
                }
                blocks.push((c.clone(), c));
            }
            RealRoot::Interval(mut lo, mut hi) => {
                loop {
                    let flo = f.eval(&lo);
                    let fhi = f.eval(&hi);
                    if !flo.is_zero() && sign(&flo) == sign(&fhi) {
                        let mid = (&lo + &hi) / &two;
                        let radius = (&hi - &lo) / &two;
                        let db = derivative_bound(&df, &lo, &hi);
                        if f.eval(&mid).abs() > db * radius {
                            break;
                        }
                    }
                    let mut r = RealRoot::Interval(lo.clone(), hi.clone());
                    let target = (&hi - &lo) / &two;
                    refine_root(&df, &mut r, &target);
                    match r {
                        RealRoot::Exact(c) => {
                            if f.eval(&c).is_zero() {
                                unreachable!("critical point is a root of the squarefree part");
                            }
                            lo = c.clone();
                            hi = c;
                            break;
                        }
                        RealRoot::Interval(l, h) => {
                            lo = l;
                            hi = h;
                        }
                    }
                }
                blocks.push((lo, hi));
            }
        }
    }
    blocks.sort_by(|a, b| a.0.cmp(&b.0));

    // Breakpoints bracketing the monotone stretches.
    let mut points: Vec<BigRational> = vec![-bound.clone()];
    for (lo, hi) in &blocks {
        points.push(lo.clone());
        points.push(hi.clone());
    }
    points.push(bound);

    let mut roots: Vec<RealRoot> = exact_roots.drain(..).map(RealRoot::Exact).collect();
    for w in points.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a >= b {
            continue;
        }
        let fa = f.eval(a);
        let fb = f.eval(b);
        if fa.is_zero() {
            if !roots.iter().any(|r| matches!(r, RealRoot::Exact(q) if q == a)) {
                roots.push(RealRoot::Exact(a.clone()));
            }
            continue;
        }
        if fb.is_zero() {
            continue; // handled as the left endpoint of the next window
        }
        if sign(&fa) != sign(&fb) {
            roots.push(RealRoot::Interval(a.clone(), b.clone()));
        }
    }
    roots.sort_by(|x, y| {
        let key = |r: &RealRoot| match r {
            RealRoot::Exact(q) => q.clone(),
            RealRoot::Interval(lo, _) => lo.clone(),
        };
        key(x).cmp(&key(y))
    });
    roots
}

/// Simplest rational (smallest denominator, then smallest numerator) in the
/// open interval (a, b).
pub fn simplest_rational_between(a: &BigRational, b: &BigRational) -> BigRational {
    assert!(a < b);
    if a.is_negative() && b.is_positive() {
        return BigRational::zero();
    }
    if a.is_negative() || (a.is_zero() && !b.is_positive()) {
        return -simplest_nonneg(&-b.clone(), &-a.clone());
    }
    simplest_nonneg(a, b)
}

fn simplest_nonneg(a: &BigRational, b: &BigRational) -> BigRational {
    // 0 <= a < b
    if a.is_zero() {
        // smallest 1/n inside (0, b): any q with 0 < q < b; simplest is an
        // integer if b > 1 else 1/ceil(1/b + epsilon)
        if b > &BigRational::one() {
            return BigRational::one();
        }
        let inv = BigRational::one() / b;
        let mut n = inv.ceil();
        if n == inv {
            n += BigRational::one();
        }
        return BigRational::one() / n;
    }
    let fa = a.floor();
    if &(fa.clone() + BigRational::one()) < b {
        return fa + BigRational::one();
    }
    if a == &fa {
        // a integral, (a, b) within (a, a+1]
        let frac = simplest_nonneg(&BigRational::zero(), &(b - &fa));
        return fa + frac;
    }
    if b > &(fa.clone() + BigRational::one()) {
        // fa + 1 could equal b (excluded); fall through to fractional part
    }
    let ra = a - &fa;
    let rb = b - &fa;
    // recurse on reciprocals: simplest in (ra, rb) = 1 / simplest in (1/rb, 1/ra)
    let inv = simplest_pos_inclusive(&(BigRational::one() / rb), &(BigRational::one() / ra));
    fa + BigRational::one() / inv
}

fn simplest_pos_inclusive(a: &BigRational, b: &BigRational) -> BigRational {
    // simplest rational in the half-open interval [a-open?, b-open?]: we only
    // need open-interval semantics propagated from the caller, where both
    // endpoints were already excluded; treat as open.
    simplest_nonneg(a, b)
}

/// Primes used for modular root detection (away from typical content).
const ROOT_PRIMES: [u64; 12] = [
    10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079, 10091, 10093, 10099, 10103,
];

fn eval_mod_p(coeffs: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in coeffs.iter().rev() {
        acc = (acc as u128 * x as u128 % p as u128) as u64;
        acc = (acc + c) % p;
    }
    acc
}

fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = num_integer::Integer::extended_gcd(a, m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(num_integer::Integer::mod_floor(&e.x, m))
}

/// Rational number a/b from its residue mod M with |a|, b <= sqrt(M/2),
/// by the half-extended Euclidean algorithm.
pub fn rational_reconstruct(c: &BigInt, modulus: &BigInt) -> Option<BigRational> {
    let bound = (modulus / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), num_integer::Integer::mod_floor(c, modulus));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !num_integer::Integer::gcd(&r1, &t1).is_one() {
        return None;
    }
    if t1.is_negative() {
        Some(BigRational::new(-r1, -t1))
    } else {
        Some(BigRational::new(r1, t1))
    }
}

/// Hensel-lift a simple root of the integer polynomial from mod p to mod
/// p^(2^steps) by Newton iteration. Returns the lifted residue and modulus.
fn hensel_lift_root(ints: &[BigInt], dints: &[BigInt], root: u64, p: u64, steps: u32) -> (BigInt, BigInt) {
    let mut modulus = BigInt::from(p);
    let mut r = BigInt::from(root);
    for _ in 0..steps {
        modulus = &modulus * &modulus;
        let fr = eval_big_mod(ints, &r, &modulus);
        let dfr = eval_big_mod(dints, &r, &modulus);
        let inv = inv_mod(&dfr, &modulus).expect("simple root stays invertible");
        r = num_integer::Integer::mod_floor(&(&r - fr * inv), &modulus);
    }
    (r, modulus)
}

fn eval_big_mod(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = num_integer::Integer::mod_floor(&(acc * x + c), m);
    }
    acc
}

/// Residue-level root data of `f` at a good prime: roots and whether each
/// was simple there.
fn roots_mod_p(ints: &[BigInt], p: u64) -> Vec<u64> {
    let coeffs: Vec<u64> = ints
        .iter()
        .map(|c| {
            num_integer::Integer::mod_floor(c, &BigInt::from(p))
                .to_u64()
                .unwrap()
        })
        .collect();
    (0..p).filter(|&x| eval_mod_p(&coeffs, x, p) == 0).collect()
}

/// All rational roots of `f`. Roots are detected modulo moderate primes,
/// Hensel-lifted, reconstructed as rationals, and verified by exact
/// evaluation; a fallback through the exact squarefree part covers roots of
/// higher multiplicity.
pub fn rational_roots(f: &RatPoly) -> Vec<BigRational> {
    if f.is_zero() || f.degree() < 1 {
        return Vec::new();
    }
    let ints = f.primitive_int();
    let dints: Vec<BigInt> = ints
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let lead = ints.last().unwrap();
    let mut out: Vec<BigRational> = Vec::new();
    let mut saw_nonsimple = false;
    let mut good_primes = 0;
    for &p in &ROOT_PRIMES {
        let pb = BigInt::from(p);
        if num_integer::Integer::mod_floor(lead, &pb).is_zero() {
            continue;
        }
        good_primes += 1;
        for root in roots_mod_p(&ints, p) {
            let dfr = eval_big_mod(&dints, &BigInt::from(root), &pb);
            if dfr.is_zero() {
                saw_nonsimple = true;
                continue;
            }
            // lift far enough for large numerators (escalating precision)
            for steps in [3u32, 5, 7] {
                let (r, modulus) = hensel_lift_root(&ints, &dints, root, p, steps);
                if let Some(cand) = rational_reconstruct(&r, &modulus) {
                    if f.eval(&cand).is_zero() {
                        if !out.contains(&cand) {
                            out.push(cand);
                        }
                        break;
                    }
                }
            }
        }
        if good_primes >= 2 && !saw_nonsimple {
            break;
        }
        if good_primes >= 4 {
            break;
        }
    }
    if saw_nonsimple {
        // repeated roots never lift; retry on the exact squarefree part
        let sf = f.squarefree_part();
        if sf.degree() < f.degree() {
            for r in rational_roots(&sf) {
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_int_coeffs(coeffs)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn eval_and_arith() {
        let f = rp(&[1, 2, 3]); // 3x^2 + 2x + 1
        assert_eq!(f.eval(&rat(2, 1)), rat(17, 1));
        let g = rp(&[-1, 1]);
        assert_eq!(f.mul(&g).eval(&rat(2, 1)), rat(17, 1));
        let (q, r) = f.mul(&g).div_rem(&g);
        assert_eq!(q, f);
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = rp(&[-1, 1]).mul(&rp(&[2, 1])); // (x-1)(x+2)
        let b = rp(&[-1, 1]).mul(&rp(&[5, 1])); // (x-1)(x+5)
        let g = int_poly_gcd(a.primitive_int(), b.primitive_int());
        assert_eq!(RatPoly::from_ints(g), rp(&[-1, 1]));
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        let f = rp(&[-1, 1]).mul(&rp(&[-1, 1])).mul(&rp(&[3, 1]));
        let sf = f.squarefree_part();
        assert_eq!(sf.degree(), 2);
        assert!(sf.eval(&rat(1, 1)).is_zero());
        assert!(sf.eval(&rat(-3, 1)).is_zero());
    }

    #[test]
    fn simplest_rational_examples() {
        assert_eq!(simplest_rational_between(&rat(1, 3), &rat(2, 3)), rat(1, 2));
        assert_eq!(simplest_rational_between(&rat(-1, 2), &rat(1, 7)), rat(0, 1));
        assert_eq!(simplest_rational_between(&rat(5, 2), &rat(7, 2)), rat(3, 1));
        assert_eq!(
            simplest_rational_between(&rat(10, 7), &rat(16, 11)),
            rat(13, 9)
        );
        // tight interval around 22/7
        assert_eq!(
            simplest_rational_between(&rat(3141, 1000), &rat(3143, 1000)),
            rat(22, 7)
        );
    }

    #[test]
    fn isolates_quadratic_roots() {
        let f = rp(&[-2, 0, 1]); // x^2 - 2
        let mut roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 2);
        let w = rat(1, 1 << 30);
        for r in roots.iter_mut() {
            refine_root(&f, r, &w);
        }
        assert!((roots[0].approx() + std::f64::consts::SQRT_2).abs() < 1e-6);
        assert!((roots[1].approx() - std::f64::consts::SQRT_2).abs() < 1e-6);
    }

    #[test]
    fn rational_roots_mixed() {
        // (x - 1/2)(x + 3)(x^2 - 2) cleared: (2x - 1)(x + 3)(x^2 - 2)
        let f = rp(&[-1, 2]).mul(&rp(&[3, 1])).mul(&rp(&[-2, 0, 1]));
        let roots = rational_roots(&f);
        assert_eq!(roots, vec![rat(-3, 1), rat(1, 2)]);
    }

    #[test]
    fn rational_roots_with_multiplicity_and_scale() {
        let f = rp(&[-1, 2]).mul(&rp(&[-1, 2])).mul(&rp(&[7, 3]));
        let roots = rational_roots(&f);
        assert_eq!(roots, vec![rat(-7, 3), rat(1, 2)]);
    }

    #[test]
    fn no_rational_roots() {
        assert!(rational_roots(&rp(&[1, 0, 1])).is_empty()); // x^2 + 1
        assert!(rational_roots(&rp(&[-2, 0, 1])).is_empty()); // x^2 - 2
    }

    #[test]
    fn large_root_values() {
        // roots at 10^9 and -10^9 + 1
        let big = 1_000_000_000i64;
        let f = rp(&[-big, 1]).mul(&rp(&[big - 1, 1]));
        let roots = rational_roots(&f);
        assert_eq!(roots, vec![rat(-(big - 1), 1), rat(big, 1)]);
    }

    #[test]
    fn clustered_roots_separated() {
        // roots at 1/3, 1/3 + 1/1000, irrational pair
        let f = rp(&[-1, 3])
            .mul(&RatPoly::new(vec![rat(-1003, 3000), rat(1, 1)]))
            .mul(&rp(&[-3, 0, 1]));
        let roots = rational_roots(&f);
        assert_eq!(roots, vec![rat(1, 3), rat(1003, 3000)]);
    }

    #[test]
    fn degree_25_style_poly() {
        // (x - 4)(x^24 + ... ): multiply a known root into a dense high-degree poly
        let mut dense = rp(&[1]);
        for k in 1..=24i64 {
            dense = dense.mul(&rp(&[k % 7 + 1, 1]));
        }
        let f = dense.mul(&rp(&[-4, 1]));
        let roots = rational_roots(&f);
        assert!(roots.contains(&rat(4, 1)));
        assert!(roots.contains(&rat(-1, 1)));
    }
}
