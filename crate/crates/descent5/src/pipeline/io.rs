//! Plain-text persistence: the initialization table of prime-ideal
//! generators, the curve database, the pair-results file, and the
//! generator-ingestion format. All files are line-oriented, versioned by a
//! header, and byte-deterministic.

use crate::arith::{BigRational, QS5Vector};
use crate::curve::rank::RankTag;
use crate::cyclo::{GeneratorTable, KS5Vector};
use crate::descent::CurveRecord;
use crate::pipeline::pair::PairResult;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{file}:{line}: {message}")]
    Malformed {
        file: String,
        line: usize,
        message: String,
    },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

fn malformed(file: &str, line: usize, message: impl Into<String>) -> FileError {
    FileError::Malformed {
        file: file.to_string(),
        line,
        message: message.into(),
    }
}

pub const DB_HEADER: &str = "# descent5 db v1";
pub const RESULTS_HEADER: &str = "# descent5 results v1";
pub const STEP0_HEADER: &str = "# descent5 step0 v1";

// ---- step 0 table ----

pub fn write_step0(table: &GeneratorTable) -> String {
    let mut out = String::new();
    out.push_str(STEP0_HEADER);
    out.push('\n');
    for p in table.primes() {
        for g in table.generators(p) {
            let c = g.generator.coeffs();
            writeln!(
                out,
                "{} {} {} {} {} {} {}",
                p, g.residue_degree, g.index, c[0], c[1], c[2], c[3]
            )
            .unwrap();
        }
    }
    for a in table.aux() {
        writeln!(out, "aux {} {}", a.lambda, a.root).unwrap();
    }
    out
}

// ---- curve database ----

fn fmt_set(s: &[u64]) -> String {
    if s.is_empty() {
        "-".to_string()
    } else {
        s.iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn parse_set(s: &str, file: &str, line: usize) -> Result<Vec<u64>, FileError> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.parse::<u64>()
                .map_err(|_| malformed(file, line, format!("bad prime {x:?}")))
        })
        .collect()
}

fn fmt_qs5(v: &QS5Vector) -> String {
    v.support()
        .iter()
        .zip(v.exponents())
        .map(|(p, e)| format!("{p}:{e}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_qs5(s: &str, file: &str, line: usize) -> Result<QS5Vector, FileError> {
    let mut support = Vec::new();
    let mut exps = Vec::new();
    for item in s.split(',') {
        let (p, e) = item
            .split_once(':')
            .ok_or_else(|| malformed(file, line, format!("bad class entry {item:?}")))?;
        support.push(
            p.parse()
                .map_err(|_| malformed(file, line, format!("bad prime {p:?}")))?,
        );
        exps.push(
            e.parse()
                .map_err(|_| malformed(file, line, format!("bad exponent {e:?}")))?,
        );
    }
    Ok(QS5Vector::from_parts(support, exps))
}

fn fmt_ks5(v: &KS5Vector) -> String {
    let mut parts = vec![
        v.unit_exponents()[0].to_string(),
        v.unit_exponents()[1].to_string(),
    ];
    for ((p, i), e) in v.support().iter().zip(v.exponents()) {
        parts.push(format!("{p}.{i}:{e}"));
    }
    parts.join(",")
}

fn parse_ks5(s: &str, file: &str, line: usize) -> Result<KS5Vector, FileError> {
    let mut items = s.split(',');
    let a0: u8 = items
        .next()
        .and_then(|x| x.parse().ok())
        .ok_or_else(|| malformed(file, line, "missing unit exponent"))?;
    let a1: u8 = items
        .next()
        .and_then(|x| x.parse().ok())
        .ok_or_else(|| malformed(file, line, "missing unit exponent"))?;
    let mut support = Vec::new();
    let mut exps = Vec::new();
    for item in items {
        let (key, e) = item
            .split_once(':')
            .ok_or_else(|| malformed(file, line, format!("bad ideal entry {item:?}")))?;
        let (p, i) = key
            .split_once('.')
            .ok_or_else(|| malformed(file, line, format!("bad ideal key {key:?}")))?;
        support.push((
            p.parse()
                .map_err(|_| malformed(file, line, "bad prime"))?,
            i.parse()
                .map_err(|_| malformed(file, line, "bad ideal index"))?,
        ));
        exps.push(
            e.parse()
                .map_err(|_| malformed(file, line, "bad exponent"))?,
        );
    }
    Ok(KS5Vector::from_parts(support, exps, [a0, a1]))
}

fn fmt_rows<T, F: Fn(&T) -> String>(rows: &[T], f: F) -> String {
    if rows.is_empty() {
        "-".to_string()
    } else {
        rows.iter().map(f).collect::<Vec<_>>().join(";")
    }
}

fn tag_str(tag: RankTag) -> &'static str {
    match tag {
        RankTag::Certain01 => "certain",
        RankTag::Heuristic => "heuristic",
        RankTag::Ingested => "ingested",
        RankTag::Unknown => "unknown",
    }
}

fn parse_tag(s: &str, file: &str, line: usize) -> Result<RankTag, FileError> {
    Ok(match s {
        "certain" => RankTag::Certain01,
        "heuristic" => RankTag::Heuristic,
        "ingested" => RankTag::Ingested,
        "unknown" => RankTag::Unknown,
        _ => return Err(malformed(file, line, format!("bad rank tag {s:?}"))),
    })
}

pub fn record_to_line(rec: &CurveRecord) -> String {
    format!(
        "{} {} | {} {} {} | {} | {} | {} | {} | {} | {} | {} | {} | {}",
        rec.u,
        rec.v,
        rec.rank,
        tag_str(rec.rank_tag),
        u8::from(rec.complete),
        fmt_set(&rec.s_primes),
        fmt_set(&rec.t_primes),
        fmt_set(&rec.u_primes),
        rec.conductor,
        fmt_rows(&rec.p_free_rows, fmt_qs5),
        fmt_rows(&rec.q_free_rows, fmt_ks5),
        fmt_qs5(&rec.p_torsion_row),
        rec.q_torsion_row
            .as_ref()
            .map_or("-".to_string(), fmt_ks5),
        rec.dim_coker_eta
    )
}

pub fn record_from_line(s: &str, file: &str, line: usize) -> Result<CurveRecord, FileError> {
    let fields: Vec<&str> = s.split(" | ").collect();
    if fields.len() != 11 {
        return Err(malformed(
            file,
            line,
            format!("expected 11 fields, got {}", fields.len()),
        ));
    }
    let uv: Vec<&str> = fields[0].split_whitespace().collect();
    let (u, v) = (
        uv.first()
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| malformed(file, line, "bad u"))?,
        uv.get(1)
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| malformed(file, line, "bad v"))?,
    );
    let rk: Vec<&str> = fields[1].split_whitespace().collect();
    if rk.len() != 3 {
        return Err(malformed(file, line, "bad rank field"));
    }
    let rank = rk[0]
        .parse()
        .map_err(|_| malformed(file, line, "bad rank"))?;
    let rank_tag = parse_tag(rk[1], file, line)?;
    let complete = rk[2] == "1";
    let s_primes = parse_set(fields[2], file, line)?;
    let t_primes = parse_set(fields[3], file, line)?;
    let u_primes = parse_set(fields[4], file, line)?;
    let conductor = BigInt::from_str(fields[5])
        .map_err(|_| malformed(file, line, "bad conductor"))?;
    let p_free_rows = if fields[6] == "-" {
        Vec::new()
    } else {
        fields[6]
            .split(';')
            .map(|r| parse_qs5(r, file, line))
            .collect::<Result<_, _>>()?
    };
    let q_free_rows = if fields[7] == "-" {
        Vec::new()
    } else {
        fields[7]
            .split(';')
            .map(|r| parse_ks5(r, file, line))
            .collect::<Result<_, _>>()?
    };
    let p_torsion_row = parse_qs5(fields[8], file, line)?;
    let q_torsion_row = if fields[9] == "-" {
        None
    } else {
        Some(parse_ks5(fields[9], file, line)?)
    };
    let dim_coker_eta = fields[10]
        .trim()
        .parse()
        .map_err(|_| malformed(file, line, "bad cokernel dimension"))?;
    Ok(CurveRecord {
        u,
        v,
        rank,
        rank_tag,
        s_primes,
        t_primes,
        u_primes,
        conductor,
        p_torsion_row,
        p_free_rows,
        q_torsion_row,
        q_free_rows,
        dim_coker_eta,
        complete,
    })
}

pub fn write_database(records: &[CurveRecord]) -> String {
    let mut out = String::new();
    out.push_str(DB_HEADER);
    out.push('\n');
    for rec in records {
        out.push_str(&record_to_line(rec));
        out.push('\n');
    }
    out
}

pub fn read_database(text: &str, file: &str) -> Result<Vec<CurveRecord>, FileError> {
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(malformed(file, 1, "empty file"));
    };
    if header != DB_HEADER {
        return Err(malformed(file, 1, format!("bad header {header:?}")));
    }
    lines
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| record_from_line(l, file, i + 1))
        .collect()
}

// ---- results ----

pub fn result_to_line(r: &PairResult) -> String {
    format!(
        "{} {} {} {} {} {} {} {} {} {} {} {} {} {} {} {} {} {}",
        r.u1,
        r.v1,
        r.u2,
        r.v2,
        r.rank1,
        r.rank2,
        r.conductor1,
        r.conductor2,
        r.local_exponent,
        r.dim_coker_phi_dual,
        r.dim_coker_eta1,
        r.dim_coker_eta2,
        r.dim_coker_psi,
        r.global_exponent,
        u8::from(r.sha_nonsquare),
        r.regulator_parity,
        u8::from(r.regulator_matches_rank),
        u8::from(r.unconditional),
    )
}

pub fn result_from_line(s: &str, file: &str, line: usize) -> Result<PairResult, FileError> {
    let f: Vec<&str> = s.split_whitespace().collect();
    if f.len() != 18 {
        return Err(malformed(
            file,
            line,
            format!("expected 18 columns, got {}", f.len()),
        ));
    }
    let num = |i: usize| -> Result<i64, FileError> {
        f[i].parse()
            .map_err(|_| malformed(file, line, format!("bad number {:?}", f[i])))
    };
    Ok(PairResult {
        u1: num(0)? as u64,
        v1: num(1)? as u64,
        u2: num(2)? as u64,
        v2: num(3)? as u64,
        rank1: num(4)? as u32,
        rank2: num(5)? as u32,
        conductor1: BigInt::from_str(f[6]).map_err(|_| malformed(file, line, "bad conductor"))?,
        conductor2: BigInt::from_str(f[7]).map_err(|_| malformed(file, line, "bad conductor"))?,
        local_exponent: num(8)?,
        dim_coker_phi_dual: num(9)? as u32,
        dim_coker_eta1: num(10)? as u32,
        dim_coker_eta2: num(11)? as u32,
        dim_coker_psi: num(12)? as u32,
        global_exponent: num(13)?,
        sha_nonsquare: num(14)? == 1,
        rank_sum: (num(4)? + num(5)?) as u32,
        regulator_parity: num(15)? as u8,
        regulator_matches_rank: num(16)? == 1,
        unconditional: num(17)? == 1,
    })
}

pub fn write_results(results: &[PairResult]) -> String {
    let mut out = String::new();
    out.push_str(RESULTS_HEADER);
    out.push('\n');
    for r in results {
        out.push_str(&result_to_line(r));
        out.push('\n');
    }
    out
}

pub fn read_results(text: &str, file: &str) -> Result<Vec<PairResult>, FileError> {
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(malformed(file, 1, "empty file"));
    };
    if header != RESULTS_HEADER {
        return Err(malformed(file, 1, format!("bad header {header:?}")));
    }
    lines
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| result_from_line(l, file, i + 1))
        .collect()
}

// ---- generator ingestion ----

pub type IngestedGenerators = BTreeMap<(u64, u64), (u32, Vec<(BigRational, BigRational)>)>;

fn parse_rational(s: &str, file: &str, line: usize) -> Result<BigRational, FileError> {
    let parse_int = |x: &str| {
        BigInt::from_str(x).map_err(|_| malformed(file, line, format!("bad rational {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(malformed(file, line, "zero denominator"));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from(parse_int(s)?)),
    }
}

/// Lines `u v rank x1 y1 [x2 y2 ...]` with rational coordinates on the
/// integral model.
pub fn read_generators(text: &str, file: &str) -> Result<IngestedGenerators, FileError> {
    let mut out = IngestedGenerators::new();
    for (i, l) in text.lines().enumerate() {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() < 3 || f.len() % 2 == 0 {
            return Err(malformed(
                file,
                i + 1,
                "expected: u v rank x1 y1 [x2 y2 ...]",
            ));
        }
        let u: u64 = f[0]
            .parse()
            .map_err(|_| malformed(file, i + 1, "bad u"))?;
        let v: u64 = f[1]
            .parse()
            .map_err(|_| malformed(file, i + 1, "bad v"))?;
        let rank: u32 = f[2]
            .parse()
            .map_err(|_| malformed(file, i + 1, "bad rank"))?;
        let mut pts = Vec::new();
        for chunk in f[3..].chunks(2) {
            pts.push((
                parse_rational(chunk[0], file, i + 1)?,
                parse_rational(chunk[1], file, i + 1)?,
            ));
        }
        out.insert((u, v), (rank, pts));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero as _;

    #[test]
    fn qs5_roundtrip() {
        let v = QS5Vector::from_parts(vec![5, 7, 11], vec![0, 4, 2]);
        let s = fmt_qs5(&v);
        assert_eq!(s, "5:0,7:4,11:2");
        assert_eq!(parse_qs5(&s, "t", 1).unwrap(), v);
    }

    #[test]
    fn ks5_roundtrip() {
        let v = KS5Vector::from_parts(vec![(5, 0), (11, 0), (11, 3)], vec![1, 0, 4], [2, 3]);
        let s = fmt_ks5(&v);
        assert_eq!(s, "2,3,5.0:1,11.0:0,11.3:4");
        assert_eq!(parse_ks5(&s, "t", 1).unwrap(), v);
    }

    #[test]
    fn generator_file_parsing() {
        let text = "# comment\n3 1 1 -6 15\n5 2 2 1/4 -3/8 7 22\n";
        let g = read_generators(text, "gens").unwrap();
        assert_eq!(g[&(3, 1)].0, 1);
        assert_eq!(g[&(3, 1)].1.len(), 1);
        assert_eq!(g[&(5, 2)].1.len(), 2);
        assert!(read_generators("1 2\n", "gens").is_err());
    }

    #[test]
    fn malformed_lines_carry_position() {
        let err = read_generators("3 1 1 -6\n", "gens.txt").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("gens.txt:1"), "{msg}");
        let _ = BigRational::zero();
    }
}
