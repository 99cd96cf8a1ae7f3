//! End-to-end analysis of one polynomial at a list of primes, as a
//! serializable report.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engstrom::{index_valuation, monogenity_verdict, IndexValue, Verdict};
use crate::ore::{analyze_prime, LocalAnalysis, OreError, PrimeIdeal};
use crate::quadrinomial::{
    all_verdicts, irreducibility, Irreducibility, IrreducibleProof, QuadrinomialInput, TheoremVerdict,
};
use crate::zpoly::{IntPoly, Prime};

use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("polynomial {0} is not monic")]
    NotMonic(IntPoly),
    #[error("polynomial {0} is constant")]
    Constant(IntPoly),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub phi: String,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeReport {
    /// Slope numerator.
    pub l: u64,
    /// Slope denominator (ramification index of the primes it yields).
    pub e: u64,
    pub length: usize,
    pub residual: String,
    pub residual_factors: Vec<FactorReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonReport {
    pub phi: String,
    pub vertices: Vec<[u64; 2]>,
    pub edges: Vec<EdgeReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    ZeroModP,
    NotRegular,
    Polygon,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFailure {
    pub kind: FailureKind,
    pub message: String,
}

impl From<&OreError> for PrimeFailure {
    fn from(e: &OreError) -> Self {
        let kind = match e {
            OreError::ZeroModP(_) => FailureKind::ZeroModP,
            OreError::NotRegular(_) => FailureKind::NotRegular,
            OreError::NotMonic(_) | OreError::Polygon(_) => FailureKind::Polygon,
        };
        PrimeFailure {
            kind,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeReport {
    pub p: u64,
    pub factors: Vec<FactorReport>,
    pub polygons: Vec<PolygonReport>,
    /// Sorted `(e, f)` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitting: Option<Vec<(u64, u64)>>,
    /// Prime ideals with the polygon edge and residual factor each came from.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ideals: Vec<PrimeIdeal>,
    /// Only for sextics at `p ∈ {2, 3}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<IndexValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<PrimeFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityReport {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proof: Option<IrreducibleProof>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<String>,
}

impl From<&Irreducibility> for IrreducibilityReport {
    fn from(i: &Irreducibility) -> Self {
        IrreducibilityReport {
            status: i.label().to_string(),
            proof: match i {
                Irreducibility::Irreducible(p) => Some(*p),
                _ => None,
            },
            factor: match i {
                Irreducibility::Reducible { factor } => Some(factor.to_string()),
                _ => None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: String,
    pub irreducibility: IrreducibilityReport,
    pub primes: Vec<PrimeReport>,
    pub verdicts: Vec<TheoremVerdict>,
    pub monogenic: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<(u64, u32)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub fn is_reducible(&self) -> bool {
        self.irreducibility.status == "reducible"
    }

    pub fn prime(&self, p: u64) -> Option<&PrimeReport> {
        self.primes.iter().find(|r| r.p == p)
    }

    /// First per-prime failure, in prime order.
    pub fn first_failure(&self) -> Option<&PrimeFailure> {
        self.primes.iter().find_map(|r| r.error.as_ref())
    }
}

/// Note attached to members of the family `x⁶ + ax² + bx + c` with
/// `a ≡ −7, b ≡ 56 (mod 112)`, `c ≡ 0 (mod 896)`, whose published claim
/// `v₂(i(K)) = 1` rests on a criterion whose gate `8 | a + 1` the family
/// does not meet.
pub const SLOPE_FAMILY_NOTE: &str = "this polynomial lies in the family a = -7 (mod 112), b = 56 (mod 112), \
c = 0 (mod 896) with m = 2, for which v2(i(K)) = 1 has been claimed via the two-adic slope criterion; \
that criterion needs 8 | a+1, but a = -7 (mod 112) gives v2(a+1) = 1, so the claim is not backed by it. \
The index reported here is the polygon computation's own result.";

pub fn in_slope_family(q: &QuadrinomialInput) -> bool {
    let r = |n: &BigInt, d: i64, t: i64| {
        let d = BigInt::from(d);
        ((n - t) % &d) == BigInt::from(0)
    };
    q.m == 2 && r(&q.a, 112, -7) && r(&q.b, 112, 56) && r(&q.c, 896, 0)
}

fn prime_report(f: &IntPoly, p: Prime, sextic: bool) -> PrimeReport {
    let mut rep = PrimeReport {
        p: p.get(),
        factors: Vec::new(),
        polygons: Vec::new(),
        splitting: None,
        ideals: Vec::new(),
        index: None,
        error: None,
    };
    let local: LocalAnalysis = match analyze_prime(f, p) {
        Ok(l) => l,
        Err(e) => {
            rep.error = Some((&e).into());
            return rep;
        }
    };
    rep.factors = local
        .factorization
        .iter()
        .map(|(g, m)| FactorReport {
            phi: g.to_string(),
            multiplicity: *m,
        })
        .collect();
    rep.polygons = local
        .components
        .iter()
        .map(|c| PolygonReport {
            phi: c.phi.to_string(),
            vertices: c.polygon.vertices().iter().map(|v| [v.x as u64, v.y]).collect(),
            edges: c
                .edges
                .iter()
                .map(|ea| EdgeReport {
                    l: ea.edge.slope_num,
                    e: ea.edge.slope_den,
                    length: ea.edge.length,
                    residual: ea.residual.to_string(),
                    residual_factors: ea
                        .factors
                        .factors
                        .iter()
                        .map(|(u, m)| FactorReport {
                            phi: u.to_string(),
                            multiplicity: *m,
                        })
                        .collect(),
                })
                .collect(),
        })
        .collect();
    match local.splitting() {
        Ok(st) => {
            let pairs = st.pairs();
            if sextic && matches!(p.get(), 2 | 3) {
                rep.index = index_valuation(&pairs, p, local.squarefree_reduction()).ok();
            }
            rep.splitting = Some(pairs);
            rep.ideals = st.primes;
        }
        Err(e) => rep.error = Some((&e).into()),
    }
    rep
}

/// Analyze `f` at each prime. Per-prime failures are recorded in the
/// report; a reducible `f` gets no per-prime analysis at all.
pub fn analyze(f: &IntPoly, primes: &[Prime]) -> Result<AnalysisReport, AnalysisError> {
    match f.degree() {
        None | Some(0) => return Err(AnalysisError::Constant(f.clone())),
        _ if !f.is_monic() => return Err(AnalysisError::NotMonic(f.clone())),
        _ => {}
    }
    let irr = irreducibility(f);
    analyze_with(f, primes, &irr)
}

/// As [`analyze`], with irreducibility already decided.
pub fn analyze_with(f: &IntPoly, primes: &[Prime], irr: &Irreducibility) -> Result<AnalysisReport, AnalysisError> {
    if !f.is_monic() {
        return Err(AnalysisError::NotMonic(f.clone()));
    }
    let sextic = f.degree() == Some(6);
    let mut notes = Vec::new();
    let reducible = matches!(irr, Irreducibility::Reducible { .. });
    let primes_out: Vec<PrimeReport> = if reducible {
        notes.push("reducible input defines no field; splitting and index are not computed".to_string());
        Vec::new()
    } else {
        let mut ps: Vec<Prime> = primes.to_vec();
        ps.sort();
        ps.dedup();
        ps.into_iter().map(|p| prime_report(f, p, sextic)).collect()
    };
    if matches!(irr, Irreducibility::Unknown) {
        notes.push("irreducibility could not be decided; results assume f is irreducible".to_string());
    }
    let quad = QuadrinomialInput::from_poly(f);
    let verdicts = quad.as_ref().map(all_verdicts).unwrap_or_default();
    if quad.as_ref().is_some_and(in_slope_family) {
        notes.push(SLOPE_FAMILY_NOTE.to_string());
    }
    let results: Vec<(u64, IndexValue)> = primes_out.iter().filter_map(|r| r.index.map(|v| (r.p, v))).collect();
    let verdict = monogenity_verdict(&results);
    let certificates = match &verdict {
        Verdict::NonMonogenic { certificates } => certificates.clone(),
        Verdict::Inconclusive => Vec::new(),
    };
    Ok(AnalysisReport {
        input: f.to_string(),
        irreducibility: irr.into(),
        primes: primes_out,
        verdicts,
        monogenic: verdict.label().to_string(),
        certificates,
        notes,
    })
}

fn pairs_text(pairs: &[(u64, u64)]) -> String {
    let inner: Vec<String> = pairs.iter().map(|(e, f)| format!("({e},{f})")).collect();
    format!("{{{}}}", inner.join(","))
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "f = {}", self.input)?;
        write!(f, "irreducibility: {}", self.irreducibility.status)?;
        match (&self.irreducibility.proof, &self.irreducibility.factor) {
            (Some(IrreducibleProof::Eisenstein { prime }), _) => write!(f, " (Eisenstein at {prime})")?,
            (Some(IrreducibleProof::DegreePatterns { primes }), _) => {
                write!(f, " (factor degree patterns mod {primes} primes)")?
            }
            (Some(IrreducibleProof::FactorSearch { prime }), _) => write!(f, " (factor search via p = {prime})")?,
            (None, Some(g)) => write!(f, " (factor {g})")?,
            _ => {}
        }
        writeln!(f)?;
        for r in &self.primes {
            writeln!(f, "\np = {}", r.p)?;
            if !r.factors.is_empty() {
                let fs: Vec<String> = r
                    .factors
                    .iter()
                    .map(|g| {
                        if g.multiplicity == 1 {
                            format!("({})", g.phi)
                        } else {
                            format!("({})^{}", g.phi, g.multiplicity)
                        }
                    })
                    .collect();
                writeln!(f, "  f mod {} = {}", r.p, fs.join(""))?;
            }
            for poly in &r.polygons {
                let vs: Vec<String> = poly.vertices.iter().map(|[x, y]| format!("({x},{y})")).collect();
                writeln!(f, "  phi = {}: vertices {}", poly.phi, vs.join(" "))?;
                for e in &poly.edges {
                    let fs: Vec<String> = e
                        .residual_factors
                        .iter()
                        .map(|u| {
                            if u.multiplicity == 1 {
                                format!("({})", u.phi)
                            } else {
                                format!("({})^{}", u.phi, u.multiplicity)
                            }
                        })
                        .collect();
                    writeln!(
                        f,
                        "    slope {}/{} length {}: residual {} = {}",
                        e.l,
                        e.e,
                        e.length,
                        e.residual,
                        fs.join("")
                    )?;
                }
            }
            if let Some(s) = &r.splitting {
                writeln!(f, "  splitting (e,f): {}", pairs_text(s))?;
            }
            if let Some(v) = &r.index {
                writeln!(f, "  v{}(i(K)): {}", r.p, v)?;
            }
            if let Some(e) = &r.error {
                writeln!(f, "  error: {}", e.message)?;
            }
        }
        if !self.verdicts.is_empty() {
            writeln!(f, "\ncriteria:")?;
            for v in &self.verdicts {
                let case = v.case.as_deref().map(|c| format!(" [{c}]")).unwrap_or_default();
                if v.applies {
                    let cs: Vec<String> = v.claimed.iter().map(|(p, k)| format!("v{p} = {k}")).collect();
                    writeln!(f, "  {}{}: applies, {}", v.theorem, case, cs.join(", "))?;
                } else {
                    writeln!(
                        f,
                        "  {}{}: not applicable ({})",
                        v.theorem,
                        case,
                        v.failed_conditions.join("; ")
                    )?;
                }
            }
        }
        writeln!(f, "\nmonogenity: {}", self.monogenic)?;
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn primes(ps: &[u64]) -> Vec<Prime> {
        ps.iter().map(|&p| Prime::new(p).unwrap()).collect()
    }

    #[test]
    fn divisibility_instance() {
        let f: IntPoly = "x^6+8x^2+16x+23".parse().unwrap();
        let r = analyze(&f, &primes(&[3, 2])).unwrap();
        assert_eq!(r.primes[0].p, 2);
        assert_eq!(
            r.prime(2).unwrap().splitting,
            Some(vec![(1, 1), (1, 1), (1, 2), (1, 2)])
        );
        assert_eq!(r.prime(2).unwrap().index, Some(IndexValue::Known { value: 2, row: 1 }));
        assert_eq!(r.monogenic, "non-monogenic");
        assert_eq!(r.certificates, vec![(2, 2)]);
        assert!(r.verdicts.iter().any(|v| v.applies && v.claim(2) == Some(2)));
    }

    #[test]
    fn reducible_input_skips_primes() {
        let f: IntPoly = "x^6+8x^2+8x+7".parse().unwrap();
        let r = analyze(&f, &primes(&[2])).unwrap();
        assert!(r.is_reducible());
        assert!(r.primes.is_empty());
        assert_eq!(r.monogenic, "inconclusive");
    }

    #[test]
    fn slope_family_note() {
        let f: IntPoly = "x^6+105x^2+56x+896".parse().unwrap();
        let r = analyze(&f, &primes(&[2])).unwrap();
        assert!(r.irreducibility.status == "irreducible");
        assert!(r.notes.iter().any(|n| n == SLOPE_FAMILY_NOTE));
        let s = r.prime(2).unwrap().splitting.clone().unwrap();
        assert_eq!(s.iter().map(|(e, f)| e * f).sum::<u64>(), 6);
    }

    #[test]
    fn not_regular_is_recorded() {
        let f: IntPoly = "x^2+4".parse().unwrap();
        let r = analyze(&f, &primes(&[2])).unwrap();
        assert_eq!(r.first_failure().unwrap().kind, FailureKind::NotRegular);
        assert!(r.prime(2).unwrap().index.is_none());
    }

    #[test]
    fn rejects_non_monic() {
        let f: IntPoly = "2x^2+1".parse().unwrap();
        assert!(matches!(analyze(&f, &primes(&[2])), Err(AnalysisError::NotMonic(_))));
        assert!(matches!(analyze(&IntPoly::one(), &[]), Err(AnalysisError::Constant(_))));
    }

    #[test]
    fn json_round_trip() {
        let f: IntPoly = "x^6+9x^2+18x+26".parse().unwrap();
        let r = analyze(&f, &primes(&[2, 3])).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: AnalysisReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["primes"][1]["index"]["status"], "known");
        assert_eq!(
            v["primes"][1]["splitting"],
            serde_json::json!([[1, 1], [1, 1], [2, 1], [2, 1]])
        );
        assert!(r.to_string().contains("splitting (e,f): {(1,1),(1,1),(2,1),(2,1)}"));
    }
}
