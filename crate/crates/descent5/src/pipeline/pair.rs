//! Pairwise analysis: the local exponent from the bad-prime sets, the
//! global exponent from GF(5) ranks of the union matrices, the squareness
//! verdict, and the regulator-parity comparison.

use crate::arith::F5Matrix;
use crate::curve::rank::RankTag;
use crate::cyclo::GeneratorTable;
use crate::descent::CurveRecord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairResult {
    pub u1: u64,
    pub v1: u64,
    pub u2: u64,
    pub v2: u64,
    pub rank1: u32,
    pub rank2: u32,
    pub conductor1: num_bigint::BigInt,
    pub conductor2: num_bigint::BigInt,
    /// Local exponent: -#(T1 u T2) + #(U1 n U2).
    pub local_exponent: i64,
    pub dim_coker_phi_dual: u32,
    pub dim_coker_eta1: u32,
    pub dim_coker_eta2: u32,
    pub dim_coker_psi: u32,
    /// Global exponent.
    pub global_exponent: i64,
    pub sha_nonsquare: bool,
    pub rank_sum: u32,
    /// Parity of the 5-exponent of the regulator quotient.
    pub regulator_parity: u8,
    pub regulator_matches_rank: bool,
    /// True when both ranks are at most 1 with certain or ingested tags.
    pub unconditional: bool,
}

fn union_sorted(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn intersection_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

/// Analyze one unordered pair of complete records.
pub fn pair_analysis(
    rec1: &CurveRecord,
    rec2: &CurveRecord,
    table: &GeneratorTable,
) -> PairResult {
    assert!(rec1.complete && rec2.complete, "incomplete record in pair analysis");
    assert!(
        (rec1.u, rec1.v) != (rec2.u, rec2.v),
        "pairs of the same curve are omitted"
    );
    let t_union = union_sorted(&rec1.t_primes, &rec2.t_primes);
    let u_inter = intersection_count(&rec1.u_primes, &rec2.u_primes);
    let local_exponent = -(t_union.len() as i64) + u_inter as i64;

    let s_union = union_sorted(&rec1.s_primes, &rec2.s_primes);
    let k_columns: Vec<(u64, u32)> = s_union
        .iter()
        .flat_map(|&p| {
            table
                .generators(p)
                .iter()
                .map(|g| g.key())
                .collect::<Vec<_>>()
        })
        .collect();

    // ranks of the union matrices
    let p_rank = |tors: bool, free: bool| {
        let mut m = F5Matrix::empty();
        for rec in [rec1, rec2] {
            if tors {
                m.push_row(rec.p_torsion_row.row_over(&s_union));
            }
            if free {
                for r in &rec.p_free_rows {
                    m.push_row(r.row_over(&s_union));
                }
            }
        }
        m.rank()
    };
    let q_rank = |tors: bool, free: bool| {
        let mut m = F5Matrix::empty();
        for rec in [rec1, rec2] {
            if tors {
                if let Some(row) = &rec.q_torsion_row {
                    m.push_row(row.row_over(&k_columns));
                }
            }
            if free {
                for r in &rec.q_free_rows {
                    m.push_row(r.row_over(&k_columns));
                }
            }
        }
        m.rank()
    };

    let dim_coker_phi_dual = p_rank(true, true) as u32;
    let dim_coker_psi = q_rank(true, true) as u32;
    let dim_coker_eta1 = rec1.dim_coker_eta;
    let dim_coker_eta2 = rec2.dim_coker_eta;
    let global_exponent = dim_coker_phi_dual as i64 - dim_coker_eta1 as i64
        - dim_coker_eta2 as i64
        + dim_coker_psi as i64;
    let sha_nonsquare = (local_exponent + global_exponent).rem_euclid(2) == 1;

    // free parts (quotient by the torsion images) for the regulator parity
    let dim_free_phi_dual = p_rank(true, true) - p_rank(true, false);
    let dim_free_psi = q_rank(true, true) - q_rank(true, false);
    let dim_free_eta1 = rec1.dim_free_coker_eta(&k_columns);
    let dim_free_eta2 = rec2.dim_free_coker_eta(&k_columns);
    let dim_free_phi = dim_free_eta1 as i64 + dim_free_eta2 as i64 - dim_free_psi as i64;
    let regulator_parity = (dim_free_phi_dual as i64 - dim_free_phi).rem_euclid(2) as u8;
    let rank_sum = rec1.rank + rec2.rank;
    let regulator_matches_rank = regulator_parity == (rank_sum % 2) as u8;

    let certain =
        |t: RankTag| matches!(t, RankTag::Certain01 | RankTag::Ingested);
    let unconditional =
        rec1.rank <= 1 && rec2.rank <= 1 && certain(rec1.rank_tag) && certain(rec2.rank_tag);

    PairResult {
        u1: rec1.u,
        v1: rec1.v,
        u2: rec2.u,
        v2: rec2.v,
        rank1: rec1.rank,
        rank2: rec2.rank,
        conductor1: rec1.conductor.clone(),
        conductor2: rec2.conductor.clone(),
        local_exponent,
        dim_coker_phi_dual,
        dim_coker_eta1,
        dim_coker_eta2,
        dim_coker_psi,
        global_exponent,
        sha_nonsquare,
        rank_sum,
        regulator_parity,
        regulator_matches_rank,
        unconditional,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::GeneratorTable;
    use crate::descent::{build_curve_record, BuildPolicy};

    fn setup(pairs: &[(u64, u64)]) -> (Vec<CurveRecord>, GeneratorTable) {
        let mut primes: Vec<u64> = Vec::new();
        for &(u, v) in pairs {
            let c = crate::curve::curve_from_uv(u, v).unwrap();
            primes.extend(&c.reduction.s_primes);
        }
        primes.sort_unstable();
        primes.dedup();
        let table = GeneratorTable::build(primes).unwrap();
        let recs = pairs
            .iter()
            .map(|&(u, v)| build_curve_record(u, v, &table, &BuildPolicy::default(), None).unwrap())
            .collect();
        (recs, table)
    }

    #[test]
    fn local_exponent_example() {
        let (recs, table) = setup(&[(1, 1), (7, 1)]);
        let pr = pair_analysis(&recs[0], &recs[1], &table);
        // T1 u T2 = {7}, U1 n U2 = {11} n {5} = {}
        assert_eq!(pr.local_exponent, -1);
    }

    #[test]
    fn symmetry_in_all_fields() {
        let (recs, table) = setup(&[(2, 1), (3, 1)]);
        let ab = pair_analysis(&recs[0], &recs[1], &table);
        let ba = pair_analysis(&recs[1], &recs[0], &table);
        assert_eq!(ab.local_exponent, ba.local_exponent);
        assert_eq!(ab.global_exponent, ba.global_exponent);
        assert_eq!(ab.sha_nonsquare, ba.sha_nonsquare);
        assert_eq!(ab.dim_coker_phi_dual, ba.dim_coker_phi_dual);
        assert_eq!(ab.dim_coker_psi, ba.dim_coker_psi);
        assert_eq!(ab.regulator_parity, ba.regulator_parity);
    }

    #[test]
    fn rank_zero_pair_regulator_matches() {
        // both rank 0: the regulator quotient is trivially a square
        let (recs, table) = setup(&[(1, 1), (2, 1)]);
        assert_eq!(recs[0].rank, 0);
        assert_eq!(recs[1].rank, 0);
        let pr = pair_analysis(&recs[0], &recs[1], &table);
        assert_eq!(pr.regulator_parity, 0);
        assert!(pr.regulator_matches_rank);
        assert!(pr.unconditional);
    }

    #[test]
    fn global_exponent_consistency() {
        let (recs, table) = setup(&[(1, 1), (2, 1), (3, 1)]);
        for i in 0..recs.len() {
            for j in (i + 1)..recs.len() {
                let pr = pair_analysis(&recs[i], &recs[j], &table);
                assert_eq!(
                    pr.global_exponent,
                    pr.dim_coker_phi_dual as i64 - pr.dim_coker_eta1 as i64
                        - pr.dim_coker_eta2 as i64
                        + pr.dim_coker_psi as i64
                );
                assert_eq!(
                    pr.sha_nonsquare,
                    (pr.local_exponent + pr.global_exponent).rem_euclid(2) == 1
                );
            }
        }
    }
}
