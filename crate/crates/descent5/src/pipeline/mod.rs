//! Database construction over all coprime parameter pairs, pairwise
//! analysis, the unconditional local-only tally, and the aggregate tables.

pub mod io;
pub mod pair;
pub mod stats;

pub use pair::{pair_analysis, PairResult};

use crate::arith::factorize;
use crate::curve::family::quad_form;
use crate::cyclo::GeneratorTable;
use crate::descent::{build_curve_record, BuildPolicy, CurveRecord};
use io::IngestedGenerators;
use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

/// All coprime (u, v) with both at most `max_height`, sorted.
pub fn census(max_height: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for u in 1..=max_height {
        for v in 1..=max_height {
            if num_integer::Integer::gcd(&u, &v) == 1 {
                out.push((u, v));
            }
        }
    }
    out
}

/// Conductor of the curve indexed by (u, v) without building models.
pub fn conductor_of(u: u64, v: u64) -> BigInt {
    let uv = BigInt::from(u) * BigInt::from(v);
    let quad = quad_form(u, v);
    let mut c = BigInt::from(1u32);
    for p in factorize(&uv).expect("uv nonzero").primes() {
        c *= BigInt::from(p);
    }
    for p in factorize(&quad).expect("quadratic form nonzero").primes() {
        if p == 5 {
            c *= BigInt::from(25u32);
        } else {
            c *= BigInt::from(p);
        }
    }
    c
}

/// Census filtered by a conductor bound.
pub fn census_with_conductor(max_height: u64, max_conductor: &BigInt) -> Vec<(u64, u64)> {
    census(max_height)
        .into_par_iter()
        .filter(|&(u, v)| conductor_of(u, v) <= *max_conductor)
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Generator table covering every prime needed by the given parameter set.
pub fn table_for_parameters(params: &[(u64, u64)]) -> GeneratorTable {
    let mut primes: Vec<u64> = params
        .par_iter()
        .flat_map_iter(|&(u, v)| {
            let uv = BigInt::from(u) * BigInt::from(v);
            let mut ps: Vec<u64> = factorize(&uv).unwrap().primes().collect();
            ps.extend(factorize(&quad_form(u, v)).unwrap().primes());
            ps.push(5);
            ps
        })
        .collect();
    primes.sort_unstable();
    primes.dedup();
    GeneratorTable::build(primes).expect("generator search succeeds at desk scale")
}

pub struct Database {
    pub records: Vec<CurveRecord>,
    pub table: GeneratorTable,
}

impl Database {
    pub fn incomplete_count(&self) -> usize {
        self.records.iter().filter(|r| !r.complete).count()
    }
}

/// Step 1 over a parameter list: one record per curve, in parallel.
pub fn build_database(
    params: &[(u64, u64)],
    policy: &BuildPolicy,
    ingested: &IngestedGenerators,
) -> Database {
    let table = table_for_parameters(params);
    let mut records: Vec<CurveRecord> = params
        .par_iter()
        .map(|&(u, v)| {
            build_curve_record(u, v, &table, policy, ingested.get(&(u, v)))
                .unwrap_or_else(|e| panic!("curve ({u},{v}): {e}"))
        })
        .collect();
    records.sort_by_key(|r| (r.u, r.v));
    Database { records, table }
}

/// Step 2 over every unordered pair of distinct complete records.
pub fn analyze_pairs(db: &Database) -> Vec<PairResult> {
    let complete: Vec<&CurveRecord> = db.records.iter().filter(|r| r.complete).collect();
    let n = complete.len();
    let mut indices = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            indices.push((i, j));
        }
    }
    indices
        .par_iter()
        .map(|&(i, j)| pair_analysis(complete[i], complete[j], &db.table))
        .collect()
}

/// The unconditional local-only tally: parities of #(T1 u T2) and
/// #(U1 n U2) over all pairs, using no rank or generator data.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LocalTally {
    /// counts[t_parity][u_parity]
    pub counts: [[u64; 2]; 2],
}

impl LocalTally {
    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn local_square_count(&self) -> u64 {
        // L = -#T + #U is even iff the parities agree
        self.counts[0][0] + self.counts[1][1]
    }

    pub fn merge(self, other: LocalTally) -> LocalTally {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.counts[i][j] += other.counts[i][j];
            }
        }
        out
    }
}

/// T and U prime sets for one curve, cheaply (factorization only).
pub fn local_sets(u: u64, v: u64) -> (Vec<u64>, Vec<u64>) {
    let uv = BigInt::from(u) * BigInt::from(v);
    let t: Vec<u64> = factorize(&uv).unwrap().primes().collect();
    let quad = quad_form(u, v);
    let f = factorize(&quad).unwrap();
    let mut us: Vec<u64> = f.primes().filter(|&p| p % 5 == 1).collect();
    if f.exponent_of(5) == 3 {
        us.push(5);
    }
    us.sort_unstable();
    (t, us)
}

pub fn local_only(max_height: u64) -> LocalTally {
    let params = census(max_height);
    let sets: Vec<(Vec<u64>, Vec<u64>)> = params
        .par_iter()
        .map(|&(u, v)| local_sets(u, v))
        .collect();
    let n = sets.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut tally = LocalTally::default();
            let (t1, u1) = &sets[i];
            for (t2, u2) in sets.iter().skip(i + 1) {
                let t_union = t1.len() + t2.iter().filter(|p| !t1.contains(p)).count();
                let u_inter = u1.iter().filter(|p| u2.contains(p)).count();
                tally.counts[t_union % 2][u_inter % 2] += 1;
            }
            tally
        })
        .reduce(LocalTally::default, LocalTally::merge)
}

#[derive(Debug, Clone, Copy)]
pub struct BoundFilter {
    pub max_height: Option<u64>,
    pub max_conductor: Option<u64>,
}

impl PairResult {
    pub fn max_height(&self) -> u64 {
        self.u1.max(self.v1).max(self.u2).max(self.v2)
    }

    pub fn max_conductor(&self) -> BigInt {
        if self.conductor1.abs() > self.conductor2.abs() {
            self.conductor1.clone()
        } else {
            self.conductor2.clone()
        }
    }

    pub fn passes(&self, filter: &BoundFilter) -> bool {
        if let Some(n) = filter.max_height {
            if self.max_height() > n {
                return false;
            }
        }
        if let Some(c) = filter.max_conductor {
            if self.max_conductor() > BigInt::from(c) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euler_phi(n: u64) -> u64 {
        let mut result = n;
        let mut m = n;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                while m % p == 0 {
                    m /= p;
                }
                result -= result / p;
            }
            p += 1;
        }
        if m > 1 {
            result -= result / m;
        }
        result
    }

    #[test]
    fn census_matches_totient_formula() {
        // #curves(N) = 2 * sum of phi(k) for k <= N, minus 1
        for n in [1u64, 5, 10, 20, 35] {
            let expected: u64 = 2 * (1..=n).map(euler_phi).sum::<u64>() - 1;
            assert_eq!(census(n).len() as u64, expected, "N = {n}");
        }
        assert_eq!(census(10).len(), 63);
        assert_eq!(census(20).len(), 255);
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(conductor_of(1, 1), BigInt::from(11));
        assert_eq!(conductor_of(7, 1), BigInt::from(175));
        assert_eq!(conductor_of(2, 1), BigInt::from(50));
    }

    #[test]
    fn local_tally_small() {
        let tally = local_only(4);
        // census(4) = 2*(1+1+2+2)-1 = 11 curves, 55 pairs
        assert_eq!(tally.total(), 55);
        // determinism
        assert_eq!(local_only(4), tally);
    }

    #[test]
    fn local_sets_examples() {
        let (t, us) = local_sets(7, 1);
        assert_eq!(t, vec![7]);
        assert_eq!(us, vec![5]);
        let (t, us) = local_sets(1, 1);
        assert!(t.is_empty());
        assert_eq!(us, vec![11]);
    }
}
