//! Aggregate tables over pair results: counts by rank class, cumulative
//! tables by height or conductor bound, and the 2x2 cross-tabulations.

use super::pair::PairResult;
use super::BoundFilter;
use crate::descent::CurveRecord;
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt::Write;

/// Banker's rounding of a percentage to the given number of decimals.
pub fn round_half_even(x: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    let y = x * scale;
    let floor = y.floor();
    let frac = y - floor;
    let rounded = if (frac - 0.5).abs() < 1e-9 {
        if (floor as i64) % 2 == 0 {
            floor
        } else {
            floor + 1.0
        }
    } else {
        y.round()
    };
    rounded / scale
}

pub fn percent(part: u64, total: u64, decimals: u32) -> f64 {
    if total == 0 {
        return 0.0;
    }
    round_half_even(part as f64 / total as f64 * 100.0, decimals)
}

/// Curve counts by rank, optionally filtered (Tables 1 and 2 shape).
pub fn curve_count_table(
    records: &[CurveRecord],
    bounds: &[u64],
    max_conductor: Option<u64>,
) -> String {
    let mut out = String::new();
    writeln!(out, "{:>8} {:>8} {:>7} {:>7} {:>7} {:>7}", "N", "#curves", "r=0", "r=1", "r=2", "r=3").unwrap();
    for &n in bounds {
        let mut by_rank = [0u64; 5];
        let mut total = 0u64;
        for r in records {
            if r.u.max(r.v) > n {
                continue;
            }
            if let Some(c) = max_conductor {
                if r.conductor > BigInt::from(c) {
                    continue;
                }
            }
            total += 1;
            by_rank[(r.rank as usize).min(4)] += 1;
        }
        writeln!(
            out,
            "{:>8} {:>8} {:>7} {:>7} {:>7} {:>7}",
            n, total, by_rank[0], by_rank[1], by_rank[2], by_rank[3]
        )
        .unwrap();
    }
    out
}

pub struct ClassRow {
    pub label: String,
    pub pairs: u64,
    pub square: u64,
    pub regulator_matches: u64,
}

impl ClassRow {
    pub fn percent_square(&self) -> f64 {
        percent(self.square, self.pairs, 3)
    }

    pub fn percent_regulator(&self) -> f64 {
        percent(self.regulator_matches, self.pairs, 2)
    }
}

/// Rank-pair classification (Tables 3 and 4 shape).
pub fn rank_class_table(results: &[PairResult]) -> Vec<ClassRow> {
    let mut classes: BTreeMap<(u32, u32), (u64, u64, u64)> = BTreeMap::new();
    let mut low_rank = (0u64, 0u64, 0u64);
    for r in results {
        let key = (r.rank1.min(r.rank2), r.rank1.max(r.rank2));
        let e = classes.entry(key).or_default();
        e.0 += 1;
        e.1 += u64::from(!r.sha_nonsquare);
        e.2 += u64::from(r.regulator_matches_rank);
        if key.1 <= 1 {
            low_rank.0 += 1;
            low_rank.1 += u64::from(!r.sha_nonsquare);
            low_rank.2 += u64::from(r.regulator_matches_rank);
        }
    }
    let mut rows: Vec<ClassRow> = classes
        .into_iter()
        .map(|((a, b), (pairs, square, reg))| ClassRow {
            label: if a == b {
                format!("r={a}")
            } else {
                format!("r={a}, r={b}")
            },
            pairs,
            square,
            regulator_matches: reg,
        })
        .collect();
    rows.push(ClassRow {
        label: "r<=1".to_string(),
        pairs: low_rank.0,
        square: low_rank.1,
        regulator_matches: low_rank.2,
    });
    rows
}

pub fn render_rank_class_table(results: &[PairResult]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<12} {:>10} {:>10} {:>10}",
        "class", "#pairs", "%sha=sq", "%RE=rk"
    )
    .unwrap();
    for row in rank_class_table(results) {
        writeln!(
            out,
            "{:<12} {:>10} {:>10.3} {:>10.2}",
            row.label,
            row.pairs,
            row.percent_square(),
            row.percent_regulator()
        )
        .unwrap();
    }
    out
}

/// Cumulative rows by bound (Tables 5 and 6 shape). `by_conductor` picks
/// the conductor filter instead of the height filter.
pub fn cumulative_table(
    results: &[PairResult],
    bounds: &[u64],
    by_conductor: bool,
) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:>9} {:>12} {:>10} {:>10}",
        if by_conductor { "C" } else { "N" },
        "#pairs",
        "%sha=sq",
        "%RE=rk"
    )
    .unwrap();
    for &b in bounds {
        let filter = if by_conductor {
            BoundFilter {
                max_height: None,
                max_conductor: Some(b),
            }
        } else {
            BoundFilter {
                max_height: Some(b),
                max_conductor: None,
            }
        };
        let mut pairs = 0u64;
        let mut square = 0u64;
        let mut reg = 0u64;
        for r in results {
            if r.passes(&filter) {
                pairs += 1;
                square += u64::from(!r.sha_nonsquare);
                reg += u64::from(r.regulator_matches_rank);
            }
        }
        if pairs == 0 {
            continue;
        }
        writeln!(
            out,
            "{:>9} {:>12} {:>10.3} {:>10.2}",
            b,
            pairs,
            percent(square, pairs, 3),
            percent(reg, pairs, 2)
        )
        .unwrap();
    }
    out
}

/// The four 2x2 cross-tabulations, as percentages of all pairs.
pub struct CrossTabs {
    /// [local even][global even]
    pub local_global: [[u64; 2]; 2],
    /// [regulator square][rank even]
    pub regulator_rank: [[u64; 2]; 2],
    /// [local square][rank even]
    pub local_rank: [[u64; 2]; 2],
    pub total: u64,
}

pub fn cross_tabs(results: &[PairResult]) -> CrossTabs {
    let mut out = CrossTabs {
        local_global: [[0; 2]; 2],
        regulator_rank: [[0; 2]; 2],
        local_rank: [[0; 2]; 2],
        total: results.len() as u64,
    };
    for r in results {
        let local_sq = r.local_exponent.rem_euclid(2) == 0;
        let global_sq = r.global_exponent.rem_euclid(2) == 0;
        let rank_even = r.rank_sum % 2 == 0;
        let reg_sq = r.regulator_parity == 0;
        out.local_global[usize::from(!local_sq)][usize::from(!global_sq)] += 1;
        out.regulator_rank[usize::from(!reg_sq)][usize::from(!rank_even)] += 1;
        out.local_rank[usize::from(!local_sq)][usize::from(!rank_even)] += 1;
    }
    out
}

/// T-parity x U-parity cross-tab needs the raw sets; computed from the
/// local tally directly.
pub fn render_local_tally(tally: &super::LocalTally) -> String {
    let total = tally.total();
    let mut out = String::new();
    writeln!(out, "pairs: {total}").unwrap();
    writeln!(
        out,
        "{:<24} {:>12} {:>12}",
        "", "#U inter even", "#U inter odd"
    )
    .unwrap();
    for (i, label) in ["#T union even", "#T union odd"].iter().enumerate() {
        writeln!(
            out,
            "{:<24} {:>11.2}% {:>11.2}%",
            label,
            percent(tally.counts[i][0], total, 2),
            percent(tally.counts[i][1], total, 2)
        )
        .unwrap();
    }
    writeln!(
        out,
        "local factor square: {:.2}%",
        percent(tally.local_square_count(), total, 2)
    )
    .unwrap();
    out
}

pub fn render_cross_tabs(results: &[PairResult]) -> String {
    let ct = cross_tabs(results);
    let total = ct.total;
    let mut out = String::new();
    let mut grid = |title: &str, rows: [&str; 2], cols: [&str; 2], data: &[[u64; 2]; 2]| {
        writeln!(out, "{title}").unwrap();
        writeln!(out, "{:<24} {:>16} {:>16}", "", cols[0], cols[1]).unwrap();
        for i in 0..2 {
            writeln!(
                out,
                "{:<24} {:>15.2}% {:>15.2}%",
                rows[i],
                percent(data[i][0], total, 2),
                percent(data[i][1], total, 2)
            )
            .unwrap();
        }
        writeln!(out).unwrap();
    };
    grid(
        "local vs global squareness",
        ["local = sq", "local != sq"],
        ["global = sq", "global != sq"],
        &ct.local_global,
    );
    grid(
        "regulator squareness vs rank parity",
        ["regulator = sq", "regulator != sq"],
        ["rk even", "rk odd"],
        &ct.regulator_rank,
    );
    grid(
        "local squareness vs rank parity",
        ["local = sq", "local != sq"],
        ["rk even", "rk odd"],
        &ct.local_rank,
    );
    out
}
