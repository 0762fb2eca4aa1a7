//! Analytic ranks via point counting and the completed L-series: the theta
//! series fixes the root number through the Fricke relation, and derivatives
//! of the completed L-function at the center come from direct quadrature of
//! the theta integral.

use super::family::{FamilyCurve, ReductionType};
use crate::arith::small_primes;
use num_traits::ToPrimitive;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankTag {
    /// Analytic rank 0 or 1: rank and finiteness are unconditional.
    Certain01,
    /// Rank at least 2: correct under the usual conjectures.
    Heuristic,
    /// Supplied through the generator-ingestion interface.
    Ingested,
    /// The series did not resolve the rank.
    Unknown,
}

#[derive(Debug, Clone, Copy)]
pub struct RankPolicy {
    /// |L^(k)(1)| below this counts as zero.
    pub zero_threshold: f64,
    /// Series length multiplier (times sqrt of conductor).
    pub series_factor: f64,
}

impl Default for RankPolicy {
    fn default() -> Self {
        RankPolicy {
            zero_threshold: 1e-3,
            series_factor: 8.0,
        }
    }
}

/// Trace of Frobenius at a good odd prime by direct counting over F_p.
fn ap_good(curve: &FamilyCurve, p: u64) -> i64 {
    if p == 2 {
        // count points on the raw equation over F_2
        let m = |q: &crate::arith::BigRational| {
            (q.numer() % 2i32).to_i64().unwrap().rem_euclid(2)
        };
        let (a1, a2, a3, a4, a6) = (
            m(&curve.integral.a1),
            m(&curve.integral.a2),
            m(&curve.integral.a3),
            m(&curve.integral.a4),
            m(&curve.integral.a6),
        );
        let mut count = 1i64;
        for x in 0..2i64 {
            for y in 0..2i64 {
                if (y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6)
                    .rem_euclid(2)
                    == 0
                {
                    count += 1;
                }
            }
        }
        return 3 - count;
    }
    let pm = p as i64;
    let m = |q: &crate::arith::BigRational| {
        num_integer::Integer::mod_floor(q.numer(), &num_bigint::BigInt::from(p))
            .to_i64()
            .unwrap()
    };
    let b2 = m(&curve.integral.b2());
    let b4 = m(&curve.integral.b4());
    let b6 = m(&curve.integral.b6());
    let mut is_sq = vec![false; p as usize];
    let mut z = 0i64;
    while z < pm {
        is_sq[((z * z) % pm) as usize] = true;
        z += 1;
    }
    let mut sum = 0i64;
    for x in 0..pm {
        let q = (((4 * x + b2) % pm * x + 2 * b4) % pm * x + b6) % pm;
        let q = q.rem_euclid(pm);
        if q == 0 {
            continue;
        }
        sum += if is_sq[q as usize] { 1 } else { -1 };
    }
    -sum
}

/// Dirichlet coefficients a_1..a_n of the L-series.
pub fn coefficient_table(curve: &FamilyCurve, nmax: usize) -> Vec<f64> {
    let mut a = vec![0.0f64; nmax + 1];
    if nmax == 0 {
        return a;
    }
    a[1] = 1.0;
    let mut spf = vec![0u32; nmax + 1];
    for &p in small_primes() {
        let p = p as usize;
        if p > nmax {
            break;
        }
        let mut k = p;
        while k <= nmax {
            if spf[k] == 0 {
                spf[k] = p as u32;
            }
            k += p;
        }
    }
    for &p in small_primes() {
        let p = p as usize;
        if p > nmax {
            break;
        }
        let bad = curve
            .reduction
            .bad_primes
            .iter()
            .find(|r| r.prime == p as u64);
        let ap = match bad.map(|r| r.kind) {
            Some(ReductionType::SplitMultiplicative) => 1.0,
            Some(ReductionType::NonSplitMultiplicative) => -1.0,
            Some(ReductionType::Additive) => 0.0,
            _ => ap_good(curve, p as u64) as f64,
        };
        // prime powers
        let mut pk = p;
        let mut prev2 = 1.0f64; // a_{p^{k-2}}
        let mut prev1 = ap; // a_{p^{k-1}}
        a[p] = ap;
        while pk <= nmax / p {
            pk *= p;
            let next = if bad.is_some() {
                prev1 * ap
            } else {
                ap * prev1 - p as f64 * prev2
            };
            a[pk] = next;
            prev2 = prev1;
            prev1 = next;
        }
    }
    for n in 2..=nmax {
        let p = spf[n] as usize;
        let mut pk = 1usize;
        let mut m = n;
        while m % p == 0 {
            m /= p;
            pk *= p;
        }
        if m > 1 {
            a[n] = a[pk] * a[m];
        }
    }
    a
}

/// Theta series g(t) = sum a_n exp(-2 pi n t / sqrt(N)).
fn theta(a: &[f64], sqrt_n: f64, t: f64) -> f64 {
    let c = 2.0 * std::f64::consts::PI * t / sqrt_n;
    let cutoff = ((45.0 / c).floor() as usize).min(a.len() - 1);
    let mut sum = 0.0;
    for n in (1..=cutoff).rev() {
        sum += a[n] * (-c * n as f64).exp();
    }
    sum
}

/// Root number from the Fricke relation g(1/t) = w t^2 g(t).
fn root_number(a: &[f64], sqrt_n: f64) -> Option<i32> {
    for t0 in [1.25f64, 1.5, 1.75, 2.0] {
        let g = theta(a, sqrt_n, t0);
        if g.abs() < 1e-9 {
            continue;
        }
        let w = theta(a, sqrt_n, 1.0 / t0) / (t0 * t0 * g);
        if (w - 1.0).abs() < 0.05 {
            return Some(1);
        }
        if (w + 1.0).abs() < 0.05 {
            return Some(-1);
        }
    }
    None
}

const GL16_NODES: [f64; 8] = [
    0.09501250983763744,
    0.28160355077925891,
    0.45801677765722739,
    0.61787624440264375,
    0.75540440835500303,
    0.86563120238783174,
    0.94457502307323258,
    0.98940093499164993,
];
const GL16_WEIGHTS: [f64; 8] = [
    0.18945061045506850,
    0.18260341504492359,
    0.16915651939500254,
    0.14959598881657673,
    0.12462897125553387,
    0.09515851168249278,
    0.06225352393864789,
    0.02715245941175409,
];

fn gauss_legendre<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> f64 {
    let mid = (lo + hi) / 2.0;
    let half = (hi - lo) / 2.0;
    let mut acc = 0.0;
    for (x, w) in GL16_NODES.iter().zip(&GL16_WEIGHTS) {
        acc += w * (f(mid + half * x) + f(mid - half * x));
    }
    acc * half
}

/// k-th derivative of the completed L-function at the center:
/// 2 * integral over t >= 1 of g(t) log(t)^k dt (valid when the root number
/// is (-1)^k and all lower derivatives vanish).
fn lambda_derivative(a: &[f64], sqrt_n: f64, k: u32) -> f64 {
    let f = |t: f64| theta(a, sqrt_n, t) * t.ln().powi(k as i32);
    let t_max = (45.0 * sqrt_n / (2.0 * std::f64::consts::PI)).max(4.0);
    let mut acc = 0.0;
    let mut lo = 1.0f64;
    let mut width = 0.5f64;
    while lo < t_max {
        let hi = (lo + width).min(t_max);
        acc += gauss_legendre(&f, lo, hi);
        lo = hi;
        width *= 1.6;
    }
    2.0 * acc
}

/// Best-effort analytic rank with confidence tag.
pub fn analytic_rank(curve: &FamilyCurve, policy: &RankPolicy) -> (u32, RankTag) {
    let n = curve.reduction.conductor.to_f64().unwrap();
    let sqrt_n = n.sqrt();
    let nmax = (policy.series_factor * sqrt_n).ceil() as usize + 16;
    let a = coefficient_table(curve, nmax);
    let Some(w) = root_number(&a, sqrt_n) else {
        return (0, RankTag::Unknown);
    };
    let to_l = 2.0 * std::f64::consts::PI / sqrt_n;
    if w == 1 {
        if (lambda_derivative(&a, sqrt_n, 0) * to_l).abs() > policy.zero_threshold {
            (0, RankTag::Certain01)
        } else if (lambda_derivative(&a, sqrt_n, 2) * to_l).abs() > policy.zero_threshold {
            (2, RankTag::Heuristic)
        } else {
            (4, RankTag::Heuristic)
        }
    } else if (lambda_derivative(&a, sqrt_n, 1) * to_l).abs() > policy.zero_threshold {
        (1, RankTag::Certain01)
    } else {
        (3, RankTag::Heuristic)
    }
}

/// Central L-value by the classical exponential series (root number +1).
/// Used as an independent cross-check of the quadrature route.
pub fn central_value_series(curve: &FamilyCurve, policy: &RankPolicy) -> f64 {
    let n = curve.reduction.conductor.to_f64().unwrap();
    let sqrt_n = n.sqrt();
    let nmax = (policy.series_factor * sqrt_n).ceil() as usize + 16;
    let a = coefficient_table(curve, nmax);
    let c = 2.0 * std::f64::consts::PI / sqrt_n;
    let mut sum = 0.0;
    for m in (1..=nmax).rev() {
        sum += a[m] / m as f64 * (-c * m as f64).exp();
    }
    2.0 * sum
}
