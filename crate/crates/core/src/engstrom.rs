//! `v_p(i(K))` for sextic fields at `p ∈ {2, 3}` from the splitting type,
//! using the six tabulated rows of Engstrom's degree-6 table.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ore::pairs_of;
use crate::zpoly::Prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngstromError {
    #[error("splitting type has degree {0}, expected 6")]
    WrongDegree(u64),
    #[error("index table covers p = 2 and p = 3 only, got {0}")]
    UnsupportedPrime(u64),
}

/// One printed row: residue degrees and ramification indices pair
/// positionally; a `None` cell is printed as a dash.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub number: u8,
    pub residue_degrees: &'static [u64],
    pub ramification: &'static [u64],
    pub v2: Option<u32>,
    pub v3: Option<u32>,
}

impl TableRow {
    /// `(e, f)` multiset of the row.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        let v: Vec<(u64, u64)> = self
            .ramification
            .iter()
            .zip(self.residue_degrees)
            .map(|(&e, &f)| (e, f))
            .collect();
        pairs_of(&v)
    }

    pub fn cell(&self, p: u64) -> Option<u32> {
        match p {
            2 => self.v2,
            3 => self.v3,
            _ => None,
        }
    }
}

pub const TABLE: [TableRow; 6] = [
    TableRow {
        number: 1,
        residue_degrees: &[2, 2, 1, 1],
        ramification: &[1, 1, 1, 1],
        v2: Some(2),
        v3: None,
    },
    TableRow {
        number: 2,
        residue_degrees: &[1, 1, 1, 1],
        ramification: &[2, 2, 1, 1],
        v2: Some(2),
        v3: Some(1),
    },
    TableRow {
        number: 3,
        residue_degrees: &[1, 1, 1, 1, 1],
        ramification: &[2, 1, 1, 1, 1],
        v2: Some(4),
        v3: None,
    },
    TableRow {
        number: 4,
        residue_degrees: &[2, 1, 1, 1],
        ramification: &[1, 2, 1, 1],
        v2: Some(1),
        v3: None,
    },
    TableRow {
        number: 5,
        residue_degrees: &[1, 1, 1, 1],
        ramification: &[3, 1, 1, 1],
        v2: Some(2),
        v3: Some(1),
    },
    TableRow {
        number: 6,
        residue_degrees: &[2, 1, 1, 1, 1],
        ramification: &[1, 1, 1, 1, 1],
        v2: Some(2),
        v3: Some(1),
    },
];

/// Why a valuation is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "reason")]
pub enum ZeroReason {
    /// Dash cell in a tabulated row, read as zero; the row passes the prime
    /// counting check at this `p`.
    TableDash { row: u8 },
    /// f̄ square-free, so `p` does not divide `ind θ`.
    SquarefreeReduction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum IndexValue {
    Known { value: u32, row: u8 },
    Zero(ZeroReason),
    NotTabulated,
}

impl IndexValue {
    pub fn known(&self) -> Option<u32> {
        match self {
            IndexValue::Known { value, .. } => Some(*value),
            _ => None,
        }
    }
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexValue::Known { value, row } => write!(f, "{value} (table row {row})"),
            IndexValue::Zero(ZeroReason::TableDash { row }) => {
                write!(f, "0 (table dash in row {row}, interpreted 0)")
            }
            IndexValue::Zero(ZeroReason::SquarefreeReduction) => f.write_str("0 (square-free reduction)"),
            IndexValue::NotTabulated => f.write_str("not tabulated"),
        }
    }
}

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducible polynomials of degree `k` over `F_p`.
pub fn irreducible_count(p: u64, k: u64) -> u128 {
    let total: i128 = (1..=k)
        .filter(|d| k.is_multiple_of(*d))
        .map(|d| mobius(d) as i128 * (p as i128).pow((k / d) as u32))
        .sum();
    (total / k as i128) as u128
}

/// True when, for some residue degree, more primes lie above `p` than
/// there are monic irreducibles of that degree over `F_p`. Such a splitting
/// forces `p | i(K)`.
pub fn exceeds_prime_count(pairs: &[(u64, u64)], p: u64) -> bool {
    let mut by_degree: BTreeMap<u64, u128> = BTreeMap::new();
    for &(_, f) in pairs {
        *by_degree.entry(f).or_default() += 1;
    }
    by_degree.iter().any(|(&f, &count)| count > irreducible_count(p, f))
}

/// Look up `v_p(i(K))` for a sextic splitting type.
///
/// `squarefree_reduction` attests that f̄ is square-free at this prime.
pub fn index_valuation(
    pairs: &[(u64, u64)],
    p: Prime,
    squarefree_reduction: bool,
) -> Result<IndexValue, EngstromError> {
    let degree: u64 = pairs.iter().map(|(e, f)| e * f).sum();
    if degree != 6 {
        return Err(EngstromError::WrongDegree(degree));
    }
    let p = p.get();
    if p != 2 && p != 3 {
        return Err(EngstromError::UnsupportedPrime(p));
    }
    let key = pairs_of(pairs);
    if let Some(row) = TABLE.iter().find(|r| r.pairs() == key) {
        return Ok(match row.cell(p) {
            Some(value) => IndexValue::Known { value, row: row.number },
            None if exceeds_prime_count(&key, p) => IndexValue::NotTabulated,
            None => IndexValue::Zero(ZeroReason::TableDash { row: row.number }),
        });
    }
    if squarefree_reduction {
        return Ok(IndexValue::Zero(ZeroReason::SquarefreeReduction));
    }
    Ok(IndexValue::NotTabulated)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum Verdict {
    /// Some prime divides `i(K)`; each certificate is `(p, v_p(i(K)))`.
    NonMonogenic {
        certificates: Vec<(u64, u32)>,
    },
    Inconclusive,
}

impl Verdict {
    pub fn is_non_monogenic(&self) -> bool {
        matches!(self, Verdict::NonMonogenic { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::NonMonogenic { .. } => "non-monogenic",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Non-monogenic iff some prime has a known positive index valuation.
/// Monogenity itself is never certified.
pub fn monogenity_verdict(results: &[(u64, IndexValue)]) -> Verdict {
    let certificates: Vec<(u64, u32)> = results
        .iter()
        .filter_map(|(p, v)| v.known().filter(|&k| k >= 1).map(|k| (*p, k)))
        .collect();
    if certificates.is_empty() {
        Verdict::Inconclusive
    } else {
        Verdict::NonMonogenic { certificates }
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// The table in its printed layout, one row per line.
pub fn table_text() -> String {
    let mut out = String::from("Sr. no. | f1,f2,f3,f4,f5 | e1,e2,e3,e4,e5 | v2(i(K)) | v3(i(K))\n");
    let cell = |v: Option<u32>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
    for r in &TABLE {
        out.push_str(&format!(
            "{} | {} | {} | {} | {}\n",
            r.number,
            join(r.residue_degrees),
            join(r.ramification),
            cell(r.v2),
            cell(r.v3)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn tabulated_lookups() {
        let v = index_valuation(&[(1, 2), (1, 2), (1, 1), (1, 1)], pr(2), false).unwrap();
        assert_eq!(v, IndexValue::Known { value: 2, row: 1 });
        let v = index_valuation(&[(2, 1), (2, 1), (1, 1), (1, 1)], pr(3), false).unwrap();
        assert_eq!(v, IndexValue::Known { value: 1, row: 2 });
        let v = index_valuation(&[(2, 1), (1, 1), (1, 1), (1, 1), (1, 1)], pr(2), false).unwrap();
        assert_eq!(v, IndexValue::Known { value: 4, row: 3 });
        assert_eq!(
            index_valuation(&[(1, 6)], pr(2), false).unwrap(),
            IndexValue::NotTabulated
        );
    }

    #[test]
    fn order_of_primes_is_irrelevant() {
        let a = index_valuation(&[(1, 1), (2, 1), (1, 2), (1, 1)], pr(2), false).unwrap();
        let b = index_valuation(&[(1, 2), (2, 1), (1, 1), (1, 1)], pr(2), false).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, IndexValue::Known { value: 1, row: 4 });
    }

    #[test]
    fn dash_cells() {
        // row 1 at 3: two quadratics, two linears -- fits in F_3
        assert_eq!(
            index_valuation(&[(1, 2), (1, 2), (1, 1), (1, 1)], pr(3), false).unwrap(),
            IndexValue::Zero(ZeroReason::TableDash { row: 1 })
        );
        // row 3 at 3: five degree-one primes but only three linear polynomials
        assert_eq!(
            index_valuation(&[(2, 1), (1, 1), (1, 1), (1, 1), (1, 1)], pr(3), false).unwrap(),
            IndexValue::NotTabulated
        );
        assert_eq!(
            index_valuation(&[(1, 2), (2, 1), (1, 1), (1, 1)], pr(3), false).unwrap(),
            IndexValue::Zero(ZeroReason::TableDash { row: 4 })
        );
    }

    #[test]
    fn squarefree_rule() {
        assert_eq!(
            index_valuation(&[(1, 3), (1, 3)], pr(3), true).unwrap(),
            IndexValue::Zero(ZeroReason::SquarefreeReduction)
        );
        assert_eq!(
            index_valuation(&[(1, 3), (1, 3)], pr(3), false).unwrap(),
            IndexValue::NotTabulated
        );
    }

    #[test]
    fn errors() {
        assert_eq!(
            index_valuation(&[(1, 2), (1, 1)], pr(2), false),
            Err(EngstromError::WrongDegree(3))
        );
        assert_eq!(
            index_valuation(&[(1, 6)], pr(5), false),
            Err(EngstromError::UnsupportedPrime(5))
        );
    }

    #[test]
    fn verdicts() {
        let v = monogenity_verdict(&[
            (2, IndexValue::Known { value: 2, row: 1 }),
            (3, IndexValue::Known { value: 1, row: 2 }),
        ]);
        assert_eq!(
            v,
            Verdict::NonMonogenic {
                certificates: vec![(2, 2), (3, 1)]
            }
        );
        let z = IndexValue::Zero(ZeroReason::SquarefreeReduction);
        assert_eq!(monogenity_verdict(&[(2, z), (3, z)]), Verdict::Inconclusive);
        assert_eq!(
            monogenity_verdict(&[(2, IndexValue::NotTabulated)]),
            Verdict::Inconclusive
        );
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(irreducible_count(2, 1), 2);
        assert_eq!(irreducible_count(2, 2), 1);
        assert_eq!(irreducible_count(3, 2), 3);
        assert_eq!(irreducible_count(2, 3), 2);
        assert_eq!(irreducible_count(2, 6), 9);
    }

    #[test]
    fn positive_cells_agree_with_prime_counting() {
        for r in &TABLE {
            for p in [2, 3] {
                if let Some(v) = r.cell(p) {
                    assert!(v >= 1);
                    assert!(exceeds_prime_count(&r.pairs(), p), "row {} p {p}", r.number);
                }
            }
        }
    }

    #[test]
    fn every_row_has_degree_six() {
        for r in &TABLE {
            assert_eq!(r.residue_degrees.len(), r.ramification.len());
            assert_eq!(r.pairs().iter().map(|(e, f)| e * f).sum::<u64>(), 6);
        }
    }
}
