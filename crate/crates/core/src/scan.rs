//! Family scans over `x⁶ + a·xᵐ + b·x + c` with congruence-constrained
//! coefficient ranges.
//!
//! Instances are enumerated in a fixed order (`a` outermost, `c`
//! innermost) and results come back in that order whatever the pool size.

use std::fmt;

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engstrom::IndexValue;
use crate::quadrinomial::{QuadrinomialError, QuadrinomialInput};
use crate::report::{analyze, AnalysisReport};
use crate::zpoly::{Prime, ZpolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("modulus for {0} must be positive")]
    BadModulus(char),
    #[error("range for {name} is empty or reversed: min {min} > max {max}")]
    ReversedRange { name: char, min: i64, max: i64 },
    #[error("bad coefficient constraint {0:?}: expected residue:modulus:min:max")]
    BadConstraint(String),
    #[error("enumeration of {0} instances is too large")]
    TooLarge(u128),
    #[error(transparent)]
    Exponent(#[from] QuadrinomialError),
    #[error(transparent)]
    Prime(#[from] ZpolyError),
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Values `v` in `[min, max]` with `v ≡ residue (mod modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffRange {
    #[serde(default)]
    pub residue: i64,
    #[serde(default = "one")]
    pub modulus: i64,
    pub min: i64,
    pub max: i64,
}

fn one() -> i64 {
    1
}

impl CoeffRange {
    /// Parse `residue:modulus:min:max`, or a single integer for a fixed
    /// value.
    pub fn parse(s: &str) -> Result<Self, ScanError> {
        let bad = || ScanError::BadConstraint(s.to_string());
        let parts: Vec<i64> = s
            .split(':')
            .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match parts.as_slice() {
            [v] => Ok(CoeffRange {
                residue: 0,
                modulus: 1,
                min: *v,
                max: *v,
            }),
            [r, m, lo, hi] => Ok(CoeffRange {
                residue: *r,
                modulus: *m,
                min: *lo,
                max: *hi,
            }),
            _ => Err(bad()),
        }
    }

    fn first(&self) -> i128 {
        let m = i128::from(self.modulus);
        let lo = i128::from(self.min);
        lo + (i128::from(self.residue) - lo).rem_euclid(m)
    }

    pub fn count(&self) -> u128 {
        let first = self.first();
        let hi = i128::from(self.max);
        if first > hi {
            0
        } else {
            ((hi - first) / i128::from(self.modulus) + 1) as u128
        }
    }

    pub fn nth(&self, k: u128) -> BigInt {
        BigInt::from(self.first()) + BigInt::from(k) * BigInt::from(self.modulus)
    }

    fn validate(&self, name: char) -> Result<(), ScanError> {
        if self.modulus <= 0 {
            return Err(ScanError::BadModulus(name));
        }
        if self.min > self.max {
            return Err(ScanError::ReversedRange {
                name,
                min: self.min,
                max: self.max,
            });
        }
        Ok(())
    }
}

impl fmt::Display for CoeffRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} mod {} in [{}, {}]",
            self.residue, self.modulus, self.min, self.max
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    pub m: u32,
    pub a: CoeffRange,
    pub b: CoeffRange,
    pub c: CoeffRange,
    #[serde(default = "default_primes")]
    pub primes: Vec<u64>,
    /// Keep only the first `limit` instances.
    #[serde(default)]
    pub limit: Option<u64>,
    /// Draw `sample` instances uniformly (kept in enumeration order).
    #[serde(default)]
    pub sample: Option<u64>,
    #[serde(default)]
    pub seed: u64,
}

pub fn default_primes() -> Vec<u64> {
    vec![2, 3]
}

const MAX_INSTANCES: u128 = 1 << 40;

impl ScanSpec {
    pub fn validate(&self) -> Result<(), ScanError> {
        QuadrinomialInput::new(0, 0, 0, self.m)?;
        self.a.validate('a')?;
        self.b.validate('b')?;
        self.c.validate('c')?;
        for &p in &self.primes {
            Prime::new(p)?;
        }
        if self.total() > MAX_INSTANCES {
            return Err(ScanError::TooLarge(self.total()));
        }
        Ok(())
    }

    /// Size of the unrestricted enumeration.
    pub fn full_count(&self) -> u128 {
        self.a.count() * self.b.count() * self.c.count()
    }

    /// Enumeration positions that will be analyzed, in order.
    pub fn positions(&self) -> Box<dyn Iterator<Item = u128> + Send> {
        let full = self.full_count();
        let limit = self.limit.map_or(u128::MAX, u128::from);
        match self.sample {
            Some(k) if u128::from(k) < full => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let n = usize::try_from(full).unwrap_or(usize::MAX);
                let mut v: Vec<u128> = sample(&mut rng, n, k as usize).into_iter().map(|i| i as u128).collect();
                v.sort_unstable();
                v.truncate(usize::try_from(limit).unwrap_or(usize::MAX));
                Box::new(v.into_iter())
            }
            _ => Box::new(0..full.min(limit)),
        }
    }

    /// Number of instances a run will analyze.
    pub fn total(&self) -> u128 {
        let full = self.full_count();
        let n = match self.sample {
            Some(k) => full.min(u128::from(k)),
            None => full,
        };
        n.min(self.limit.map_or(u128::MAX, u128::from))
    }

    pub fn instance(&self, pos: u128) -> QuadrinomialInput {
        let (nb, nc) = (self.b.count(), self.c.count());
        let ic = pos % nc;
        let ib = (pos / nc) % nb;
        let ia = pos / (nc * nb);
        QuadrinomialInput {
            a: self.a.nth(ia),
            b: self.b.nth(ib),
            c: self.c.nth(ic),
            m: self.m,
        }
    }

    fn prime_list(&self) -> Vec<Prime> {
        self.primes.iter().map(|&p| Prime::new(p).expect("validated")).collect()
    }
}

/// Per-prime summary in a scan row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanPrime {
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitting: Option<Vec<(u64, u64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<IndexValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Whether the criteria's claims match the computed index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Agreement {
    /// No criterion applies.
    None,
    Agree,
    Disagree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub m: u32,
    pub irreducibility: String,
    pub primes: Vec<ScanPrime>,
    /// Criteria that apply, with their claims.
    pub criteria: Vec<String>,
    pub agreement: Agreement,
    pub monogenic: String,
}

impl ScanRow {
    fn from_report(q: &QuadrinomialInput, r: &AnalysisReport) -> Self {
        let primes = r
            .primes
            .iter()
            .map(|pr| ScanPrime {
                p: pr.p,
                splitting: pr.splitting.clone(),
                index: pr.index,
                error: pr.error.as_ref().map(|e| e.message.clone()),
            })
            .collect();
        let applied: Vec<_> = r.verdicts.iter().filter(|v| v.applies).collect();
        let criteria = applied
            .iter()
            .map(|v| {
                let cs: Vec<String> = v.claimed.iter().map(|(p, k)| format!("v{p}={k}")).collect();
                format!("{}:{}", v.theorem, cs.join("+"))
            })
            .collect();
        let agreement = if applied.is_empty() || r.is_reducible() {
            Agreement::None
        } else if applied.iter().all(|v| {
            v.claimed
                .iter()
                .all(|&(p, k)| r.prime(p).and_then(|pr| pr.index.as_ref()).and_then(IndexValue::known) == Some(k))
        }) {
            Agreement::Agree
        } else {
            Agreement::Disagree
        };
        ScanRow {
            a: q.a.clone(),
            b: q.b.clone(),
            c: q.c.clone(),
            m: q.m,
            irreducibility: r.irreducibility.status.clone(),
            primes,
            criteria,
            agreement,
            monogenic: r.monogenic.clone(),
        }
    }
}

/// Counts over a finished scan.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub total: usize,
    pub irreducible: usize,
    pub reducible: usize,
    pub unknown: usize,
    pub with_errors: usize,
    pub non_monogenic: usize,
    pub disagreements: usize,
}

impl ScanSummary {
    pub fn add(&mut self, row: &ScanRow) {
        self.total += 1;
        match row.irreducibility.as_str() {
            "irreducible" => self.irreducible += 1,
            "reducible" => self.reducible += 1,
            _ => self.unknown += 1,
        }
        if row.primes.iter().any(|p| p.error.is_some()) {
            self.with_errors += 1;
        }
        if row.monogenic == "non-monogenic" {
            self.non_monogenic += 1;
        }
        if row.agreement == Agreement::Disagree {
            self.disagreements += 1;
        }
    }
}

fn analyze_instance(q: &QuadrinomialInput, primes: &[Prime]) -> ScanRow {
    let report = analyze(&q.to_poly(), primes).expect("quadrinomials are monic sextics");
    ScanRow::from_report(q, &report)
}

const CHUNK: usize = 512;

/// Run the scan on a pool of `jobs` workers (`None`: all cores), handing
/// rows to `emit` in enumeration order, chunk by chunk.
pub fn run_scan<F>(spec: &ScanSpec, jobs: Option<usize>, mut emit: F) -> Result<ScanSummary, ScanError>
where
    F: FnMut(&ScanRow),
{
    spec.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().map_err(|e| ScanError::Pool(e.to_string()))?;
    let primes = spec.prime_list();
    let mut positions = spec.positions();
    let mut summary = ScanSummary::default();
    loop {
        let chunk: Vec<u128> = positions.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let rows: Vec<ScanRow> = pool.install(|| {
            chunk
                .par_iter()
                .map(|&pos| analyze_instance(&spec.instance(pos), &primes))
                .collect()
        });
        for row in &rows {
            summary.add(row);
            emit(row);
        }
    }
    Ok(summary)
}

/// Collect every row.
pub fn scan_rows(spec: &ScanSpec, jobs: Option<usize>) -> Result<(Vec<ScanRow>, ScanSummary), ScanError> {
    let mut rows = Vec::new();
    let summary = run_scan(spec, jobs, |r| rows.push(r.clone()))?;
    Ok((rows, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn range(s: &str) -> CoeffRange {
        CoeffRange::parse(s).unwrap()
    }

    fn spec(m: u32, a: &str, b: &str, c: &str) -> ScanSpec {
        ScanSpec {
            m,
            a: range(a),
            b: range(b),
            c: range(c),
            primes: vec![2, 3],
            limit: None,
            sample: None,
            seed: 0,
        }
    }

    #[test]
    fn ranges() {
        let r = range("8:16:-40:40");
        assert_eq!(r.count(), 6);
        let vals: Vec<BigInt> = (0..6).map(|k| r.nth(k)).collect();
        assert_eq!(vals, [-40, -24, -8, 8, 24, 40].map(BigInt::from));
        assert_eq!(range("7").count(), 1);
        assert_eq!(range("3:5:4:7").count(), 0);
        assert_eq!(range("-1:8:0:100").nth(0), BigInt::from(7));
        assert!(CoeffRange::parse("1:2:3").is_err());
        assert!(CoeffRange::parse("x").is_err());
    }

    #[test]
    fn enumeration_order() {
        let s = spec(2, "0:1:1:2", "0:1:10:11", "0:1:100:102");
        assert_eq!(s.full_count(), 12);
        assert_eq!(s.total(), 12);
        let q = s.instance(0);
        assert_eq!((q.a, q.b, q.c), (1.into(), 10.into(), 100.into()));
        let q = s.instance(4);
        assert_eq!((q.a, q.b, q.c), (1.into(), 11.into(), 101.into()));
        let q = s.instance(11);
        assert_eq!((q.a, q.b, q.c), (2.into(), 11.into(), 102.into()));
    }

    #[test]
    fn validation() {
        let mut s = spec(2, "0:0:1:2", "1", "1");
        assert_eq!(s.validate(), Err(ScanError::BadModulus('a')));
        s.a = range("0:1:5:1");
        assert!(matches!(s.validate(), Err(ScanError::ReversedRange { .. })));
        s.a = range("1");
        s.m = 7;
        assert!(matches!(s.validate(), Err(ScanError::Exponent(_))));
        s.m = 2;
        s.primes = vec![4];
        assert!(matches!(s.validate(), Err(ScanError::Prime(_))));
    }

    #[test]
    fn divisibility_family_rows() {
        let mut s = spec(2, "8:16:-200:200", "8:16:-200:200", "7:16:-200:200");
        s.limit = Some(40);
        let (rows, summary) = scan_rows(&s, Some(2)).unwrap();
        assert_eq!(rows.len(), 40);
        assert_eq!(summary.total, 40);
        for r in rows.iter().filter(|r| r.irreducibility == "irreducible") {
            let two = &r.primes[0];
            assert_eq!(two.index.as_ref().and_then(IndexValue::known), Some(2), "{r:?}");
            assert_eq!(r.agreement, Agreement::Agree);
        }
        assert_eq!(summary.disagreements, 0);
    }

    #[test]
    fn empty_scan() {
        let s = spec(2, "3:5:4:7", "1", "1");
        let (rows, summary) = scan_rows(&s, None).unwrap();
        assert!(rows.is_empty());
        assert_eq!(summary.total, 0);
    }

    #[test]
    fn order_independent_of_pool_size() {
        let mut s = spec(3, "1:8:-100:100", "0:8:-64:64", "0:8:-64:64");
        s.sample = Some(60);
        s.seed = 7;
        let (r1, _) = scan_rows(&s, Some(1)).unwrap();
        let (r4, _) = scan_rows(&s, Some(4)).unwrap();
        assert_eq!(r1, r4);
        assert_eq!(r1.len(), 60);
        assert_eq!(s.total(), 60);
        let mut t = s.clone();
        t.seed = 8;
        assert_ne!(scan_rows(&t, Some(2)).unwrap().0, r1);
    }

    #[test]
    fn spec_from_toml_shape() {
        let json = r#"{"m":2,"a":{"residue":8,"modulus":16,"min":0,"max":100},
                       "b":{"min":8,"max":8},"c":{"residue":7,"modulus":16,"min":0,"max":50}}"#;
        let s: ScanSpec = serde_json::from_str(json).unwrap();
        assert_eq!(s.primes, vec![2, 3]);
        assert_eq!(s.b.count(), 1);
        assert_eq!(s.full_count(), 6 * 3);
    }
}
