//! Per-curve descent data: images of a 5-saturated Mordell-Weil sublattice
//! in Q(S,5), images of the pushed-forward lattice in K(S,5), and the
//! dimension of the quotient-side cokernel from lattice bookkeeping.

use crate::arith::{qs5_class, ArithError, BigRational, F5Matrix, QS5Vector};
use crate::curve::field::CurveField;
use crate::curve::height::{canonical_height, gram_determinant};
use crate::curve::model::{CurvePoint, WeierstrassIsomorphism, WeierstrassModel};
use crate::curve::rank::{analytic_rank, RankPolicy, RankTag};
use crate::curve::saturate::saturate_at_5;
use crate::curve::search::{point_search, SearchBounds};
use crate::curve::torsion::{is_torsion, torsion_subgroup};
use crate::curve::{curve_from_uv, FamilyCurve};
use crate::cyclo::{ks5_class, GeneratorTable, KS5Vector};
use crate::isogeny::{isogeny_bundle, lift_point, IsogenyBundle};
use num_bigint::BigInt;
use num_traits::One;

#[derive(Debug, thiserror::Error)]
pub enum DescentError {
    #[error("arithmetic inconsistency: {0}")]
    Arith(#[from] ArithError),
    #[error("isogeny construction failed: {0}")]
    Isogeny(#[from] crate::isogeny::IsogenyError),
    #[error("cyclotomic machinery failed: {0}")]
    Cyclo(#[from] crate::cyclo::CycloError),
}

/// The per-curve bundle assembled by the database-building step.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveRecord {
    pub u: u64,
    pub v: u64,
    pub rank: u32,
    pub rank_tag: RankTag,
    pub s_primes: Vec<u64>,
    pub t_primes: Vec<u64>,
    pub u_primes: Vec<u64>,
    pub conductor: BigInt,
    /// Image of the 5-torsion generator: the class of 1/d.
    pub p_torsion_row: QS5Vector,
    /// Images of the free generators of the saturated sublattice.
    pub p_free_rows: Vec<QS5Vector>,
    /// Image of the rational 5-torsion of the quotient curve, when present.
    pub q_torsion_row: Option<KS5Vector>,
    /// Images of the free generators of the pushed-forward saturated
    /// sublattice; entries for undivided images are zero classes.
    pub q_free_rows: Vec<KS5Vector>,
    /// dim coker of the quotient map over Q, from lattice bookkeeping.
    pub dim_coker_eta: u32,
    /// False when the rank or generators could not be established.
    pub complete: bool,
}

impl CurveRecord {
    /// Rank of the Q-side rows (torsion plus free) over the given columns.
    pub fn p_matrix_rank(&self, columns: &[u64], include_torsion: bool, include_free: bool) -> usize {
        let mut m = F5Matrix::empty();
        if include_torsion {
            m.push_row(self.p_torsion_row.row_over(columns));
        }
        if include_free {
            for r in &self.p_free_rows {
                m.push_row(r.row_over(columns));
            }
        }
        m.rank()
    }

    pub fn dim_coker_eta_dual(&self, columns: &[u64]) -> usize {
        self.p_matrix_rank(columns, true, true)
    }

    /// dim of the free part of coker eta over Q (quotient by torsion image).
    pub fn dim_free_coker_eta(&self, columns: &[(u64, u32)]) -> usize {
        let full = self.q_matrix_rank(columns, true, true);
        let tors = self.q_matrix_rank(columns, true, false);
        full - tors
    }

    pub fn dim_free_coker_eta_dual(&self, columns: &[u64]) -> usize {
        self.p_matrix_rank(columns, true, true) - self.p_matrix_rank(columns, true, false)
    }

    pub fn q_matrix_rank(
        &self,
        columns: &[(u64, u32)],
        include_torsion: bool,
        include_free: bool,
    ) -> usize {
        let mut m = F5Matrix::empty();
        if include_torsion {
            if let Some(row) = &self.q_torsion_row {
                m.push_row(row.row_over(columns));
            }
        }
        if include_free {
            for r in &self.q_free_rows {
                m.push_row(r.row_over(columns));
            }
        }
        m.rank()
    }
}

/// The descent map value: f = -x^2 + y + xy on the family model with
/// parameter d, extended by linearity to the excluded points
/// ((0,0) goes to 1/d and the origin of the group to 1).
pub fn descent_value<F: CurveField>(d: &F, p: &CurvePoint<F>) -> F {
    match p {
        CurvePoint::Infinity => F::one(),
        CurvePoint::Affine(x, y) if x.is_zero() && y.is_zero() => F::one() / d.clone(),
        CurvePoint::Affine(x, y) => {
            -(x.clone() * x.clone()) + y.clone() + x.clone() * y.clone()
        }
    }
}

/// Q(S,5) rows for the generators of the full Mordell-Weil group: the
/// 5-torsion image (class of 1/d) and one row per free generator evaluated
/// through the descent function on the parametric model.
pub fn coker_eta_dual_basis(
    curve: &FamilyCurve,
    free_generators_integral: &[CurvePoint<BigRational>],
) -> Result<(QS5Vector, Vec<QS5Vector>), ArithError> {
    let s = &curve.reduction.s_primes;
    let d_inv = BigRational::new(BigInt::from(curve.v), BigInt::from(curve.u));
    let torsion_row = qs5_class(&d_inv, s)?;
    let mut free_rows = Vec::with_capacity(free_generators_integral.len());
    for g in free_generators_integral {
        let gp = curve.integral_to_parametric.apply(g);
        let value = descent_value(&curve.d, &gp);
        free_rows.push(qs5_class(&value, s)?);
    }
    Ok((torsion_row, free_rows))
}

/// K(S,5) evaluation of a point of the quotient curve through the normal
/// form coordinate change.
fn q_side_class(
    bundle: &IsogenyBundle,
    table: &GeneratorTable,
    support: &[crate::cyclo::PrimeIdealGen],
    point: &CurvePoint<BigRational>,
) -> Result<KS5Vector, crate::cyclo::CycloError> {
    let moved = bundle.tau.apply(&lift_point(point));
    let value = descent_value(&bundle.dtilde, &moved);
    ks5_class(&value, support, table.aux())
}

pub struct QuotientSide {
    pub torsion_row: Option<KS5Vector>,
    pub free_rows: Vec<KS5Vector>,
    pub dim_coker_eta: u32,
    pub quotient_torsion_order: usize,
}

/// Push the saturated lattice through the quotient isogeny, re-saturate
/// there, and read off both the cokernel dimension (bookkeeping: rational
/// 5-torsion of the quotient plus successful divisions) and the K(S,5) rows.
pub fn coker_eta_basis(
    curve: &FamilyCurve,
    bundle: &IsogenyBundle,
    table: &GeneratorTable,
    free_generators_integral: &[CurvePoint<BigRational>],
) -> Result<QuotientSide, DescentError> {
    let quotient = bundle.quotient();
    let q_torsion = torsion_subgroup(quotient, None);
    let images: Vec<CurvePoint<BigRational>> = free_generators_integral
        .iter()
        .map(|g| bundle.eta.apply(&curve.integral_to_parametric.apply(g)))
        .collect();
    let sat = saturate_at_5(quotient, &q_torsion.points, images.clone());
    let has_five = q_torsion.five_part.is_some();
    let dim_coker_eta = u32::from(has_five) + sat.divisions;
    let support = table.support_for(&curve.reduction.s_primes);
    let mut torsion_row = None;
    let mut free_rows = Vec::with_capacity(sat.generators.len());
    if dim_coker_eta == 0 {
        // every generator image lies in the image of the isogeny, so all
        // classes are trivial and the evaluation is skipped outright
        free_rows = vec![KS5Vector::zero(&support.iter().map(|g| g.key()).collect::<Vec<_>>()); sat.generators.len()];
    } else {
        if let Some(t5) = &q_torsion.five_part {
            torsion_row = Some(q_side_class(bundle, table, &support, t5)?);
        }
        for (sat_gen, original) in sat.generators.iter().zip(&images) {
            if sat_gen == original {
                // undivided image: its class in the cokernel is trivial
                free_rows.push(KS5Vector::zero(
                    &support.iter().map(|g| g.key()).collect::<Vec<_>>(),
                ));
            } else {
                free_rows.push(q_side_class(bundle, table, &support, sat_gen)?);
            }
        }
    }
    Ok(QuotientSide {
        torsion_row,
        free_rows,
        dim_coker_eta,
        quotient_torsion_order: q_torsion.order(),
    })
}

#[derive(Debug, Clone)]
pub struct BuildPolicy {
    pub rank: RankPolicy,
    pub initial_bounds: SearchBounds,
    pub max_numerator: i64,
    /// Gram determinant threshold for accepting a new independent point.
    pub independence_eps: f64,
}

impl Default for BuildPolicy {
    fn default() -> Self {
        BuildPolicy {
            rank: RankPolicy::default(),
            initial_bounds: SearchBounds {
                numerator_bound: 20_000,
                denominator_bound: 8,
            },
            max_numerator: 6_000_000,
            independence_eps: 1e-6,
        }
    }
}

/// Pick `want` independent non-torsion points from candidates, greedily by
/// height.
fn select_independent(
    curve: &FamilyCurve,
    candidates: Vec<CurvePoint<BigRational>>,
    want: usize,
) -> Vec<CurvePoint<BigRational>> {
    let mut with_heights: Vec<(f64, CurvePoint<BigRational>)> = candidates
        .into_iter()
        .filter(|p| !is_torsion(&curve.integral, p))
        .map(|p| (canonical_height(curve, &p), p))
        .filter(|(h, _)| *h > 1e-8)
        .collect();
    with_heights.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut selected: Vec<CurvePoint<BigRational>> = Vec::new();
    for (_, p) in with_heights {
        if selected.len() == want {
            break;
        }
        let mut trial = selected.clone();
        trial.push(p.clone());
        let det = gram_determinant(curve, &trial);
        if det > 1e-6 {
            selected = trial;
        }
    }
    selected
}

/// Find `rank` independent generators by sieved search with escalating
/// bounds, falling back to a search on the quotient curve mapped back
/// through the dual isogeny.
fn find_generators(
    curve: &FamilyCurve,
    bundle: &IsogenyBundle,
    rank: u32,
    policy: &BuildPolicy,
) -> Option<Vec<CurvePoint<BigRational>>> {
    let want = rank as usize;
    if want == 0 {
        return Some(Vec::new());
    }
    let mut bounds = policy.initial_bounds;
    loop {
        let found = point_search(&curve.integral, bounds);
        let selected = select_independent(curve, found, want);
        if selected.len() == want {
            return Some(selected);
        }
        // quotient-side assist: small points on the quotient map back to
        // index-5 sublattice points here
        let quotient = bundle.quotient();
        let scale = integral_scaling(quotient);
        let q_int = quotient.transform(&scale);
        let mut pool = point_search(&curve.integral, bounds);
        for p in point_search(&q_int, bounds) {
            let on_quotient = scale.invert().apply(&p);
            let back = bundle
                .closing_iso
                .apply(&bundle.dual_apply_rational(&on_quotient));
            let on_integral = curve.integral_to_parametric.invert().apply(&back);
            debug_assert!(curve.integral.contains(&on_integral));
            pool.push(on_integral);
        }
        let selected = select_independent(curve, pool, want);
        if selected.len() == want {
            return Some(selected);
        }
        if bounds.numerator_bound >= policy.max_numerator {
            return None;
        }
        bounds = SearchBounds {
            numerator_bound: (bounds.numerator_bound * 8).min(policy.max_numerator),
            denominator_bound: bounds.denominator_bound + 4,
        };
    }
}

/// Coordinate change making a rational model integral (clearing coefficient
/// denominators by a scaling).
pub fn integral_scaling(e: &WeierstrassModel<BigRational>) -> WeierstrassIsomorphism<BigRational> {
    let mut m = BigInt::one();
    for c in [&e.a1, &e.a2, &e.a3, &e.a4, &e.a6] {
        m = num_integer::Integer::lcm(&m, c.denom());
    }
    WeierstrassIsomorphism::scaling(BigRational::new(BigInt::one(), m))
}

/// Assemble the full record for one curve. `ingested` supplies an external
/// rank and generator list (integral-model coordinates); generators are
/// still saturated locally.
pub fn build_curve_record(
    u: u64,
    v: u64,
    table: &GeneratorTable,
    policy: &BuildPolicy,
    ingested: Option<&(u32, Vec<(BigRational, BigRational)>)>,
) -> Result<CurveRecord, DescentError> {
    let curve = curve_from_uv(u, v)?;
    let bundle = isogeny_bundle(&curve)?;
    let (rank, rank_tag) = match ingested {
        Some((r, _)) => (*r, RankTag::Ingested),
        None => analytic_rank(&curve, &policy.rank),
    };
    let torsion = torsion_subgroup(&curve.integral, Some(curve.five_torsion_integral()));

    let generators = if let Some((_, points)) = ingested {
        let pts: Vec<CurvePoint<BigRational>> = points
            .iter()
            .map(|(x, y)| CurvePoint::Affine(x.clone(), y.clone()))
            .collect();
        for p in &pts {
            assert!(curve.integral.contains(p), "ingested point off the curve");
        }
        Some(select_independent(&curve, pts, rank as usize))
    } else if rank_tag == RankTag::Unknown {
        None
    } else {
        find_generators(&curve, &bundle, rank, policy)
    };
    let Some(generators) = generators.filter(|g| g.len() == rank as usize) else {
        return Ok(CurveRecord {
            u,
            v,
            rank,
            rank_tag,
            s_primes: curve.reduction.s_primes.clone(),
            t_primes: curve.reduction.t_primes.clone(),
            u_primes: curve.reduction.u_primes.clone(),
            conductor: curve.reduction.conductor.clone(),
            p_torsion_row: QS5Vector::zero(&curve.reduction.s_primes),
            p_free_rows: Vec::new(),
            q_torsion_row: None,
            q_free_rows: Vec::new(),
            dim_coker_eta: 0,
            complete: false,
        });
    };
    let saturated = saturate_at_5(&curve.integral, &torsion.points, generators);
    let (p_torsion_row, p_free_rows) = coker_eta_dual_basis(&curve, &saturated.generators)?;
    let quotient_side = coker_eta_basis(&curve, &bundle, table, &saturated.generators)?;

    // bookkeeping must agree with the rank of the K-side rows
    let support: Vec<(u64, u32)> = table
        .support_for(&curve.reduction.s_primes)
        .iter()
        .map(|g| g.key())
        .collect();
    let record = CurveRecord {
        u,
        v,
        rank,
        rank_tag,
        s_primes: curve.reduction.s_primes.clone(),
        t_primes: curve.reduction.t_primes.clone(),
        u_primes: curve.reduction.u_primes.clone(),
        conductor: curve.reduction.conductor.clone(),
        p_torsion_row,
        p_free_rows,
        q_torsion_row: quotient_side.torsion_row,
        q_free_rows: quotient_side.free_rows,
        dim_coker_eta: quotient_side.dim_coker_eta,
        complete: true,
    };
    assert_eq!(
        record.q_matrix_rank(&support, true, true),
        record.dim_coker_eta as usize,
        "({u},{v}): K-side row rank disagrees with lattice bookkeeping"
    );
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::GeneratorTable;

    fn table_for(records: &[(u64, u64)]) -> GeneratorTable {
        let mut primes: Vec<u64> = Vec::new();
        for &(u, v) in records {
            let c = curve_from_uv(u, v).unwrap();
            primes.extend(&c.reduction.s_primes);
        }
        primes.sort_unstable();
        primes.dedup();
        GeneratorTable::build(primes).unwrap()
    }

    #[test]
    fn descent_value_special_points() {
        let d = BigRational::new(BigInt::from(7), BigInt::one());
        assert_eq!(
            descent_value(&d, &CurvePoint::Infinity),
            BigRational::one()
        );
        let origin = CurvePoint::Affine(BigRational::zero(), BigRational::zero());
        assert_eq!(
            descent_value(&d, &origin),
            BigRational::new(BigInt::one(), BigInt::from(7))
        );
        // f(0, -d) = -d
        let p4 = CurvePoint::Affine(BigRational::zero(), -d.clone());
        assert_eq!(descent_value(&d, &p4), -d.clone());
    }

    #[test]
    fn unit_curve_record() {
        let table = table_for(&[(1, 1)]);
        let rec = build_curve_record(1, 1, &table, &BuildPolicy::default(), None).unwrap();
        assert!(rec.complete);
        assert_eq!(rec.rank, 0);
        assert_eq!(rec.s_primes, vec![5, 11]);
        assert!(rec.p_torsion_row.is_zero_class()); // class of 1 is trivial
        assert!(rec.p_free_rows.is_empty());
        assert_eq!(rec.dim_coker_eta, 1);
        assert!(rec.q_torsion_row.is_some());
        let cols: Vec<u64> = rec.s_primes.clone();
        assert_eq!(rec.dim_coker_eta_dual(&cols), 0);
    }

    #[test]
    fn seven_one_torsion_image() {
        let table = table_for(&[(7, 1)]);
        let rec = build_curve_record(7, 1, &table, &BuildPolicy::default(), None).unwrap();
        // d = 7: the 5-torsion image is the class of 1/7
        assert_eq!(rec.p_torsion_row.exponent_at(7), 4);
        assert_eq!(rec.p_torsion_row.exponent_at(5), 0);
        assert_eq!(rec.s_primes, vec![5, 7]);
        assert_eq!(rec.t_primes, vec![7]);
        assert_eq!(rec.u_primes, vec![5]);
    }

    #[test]
    fn rank_one_record_consistency() {
        let table = table_for(&[(3, 1)]);
        let rec = build_curve_record(3, 1, &table, &BuildPolicy::default(), None).unwrap();
        assert!(rec.complete);
        assert_eq!(rec.rank, 1);
        assert_eq!(rec.p_free_rows.len(), 1);
        assert_eq!(rec.q_free_rows.len(), 1);
        // duality: free-part dimensions of the two cokernels add to the rank
        let cols: Vec<u64> = rec.s_primes.clone();
        let table_cols: Vec<(u64, u32)> = table
            .support_for(&rec.s_primes)
            .iter()
            .map(|g| g.key())
            .collect();
        let dual_free = rec.dim_free_coker_eta_dual(&cols);
        let eta_free = rec.dim_free_coker_eta(&table_cols);
        assert_eq!(dual_free + eta_free, 1, "rank-1 duality");
    }

    #[test]
    fn injectivity_on_the_cokernel() {
        // distinct combinations map to distinct classes exactly 5^dim times
        let table = table_for(&[(3, 1)]);
        let rec = build_curve_record(3, 1, &table, &BuildPolicy::default(), None).unwrap();
        let cols: Vec<u64> = rec.s_primes.clone();
        let dim = rec.dim_coker_eta_dual(&cols);
        let mut classes: Vec<Vec<u8>> = Vec::new();
        for c0 in 0..5u8 {
            for c1 in 0..5u8 {
                let row: Vec<u8> = rec
                    .p_torsion_row
                    .row_over(&cols)
                    .iter()
                    .zip(rec.p_free_rows[0].row_over(&cols))
                    .map(|(&a, b)| (a * c0 + b * c1) % 5)
                    .collect();
                if !classes.contains(&row) {
                    classes.push(row);
                }
            }
        }
        assert_eq!(classes.len(), 5usize.pow(dim as u32));
    }
}
