//! Splitting of `p` in `Q[x]/(f)` from φ-Newton polygons and residual
//! factorizations (Ore's theorem, p-regular case).
//!
//! For each irreducible factor φ̄ of f̄ and each principal edge of slope
//! `l/e` of the φ-polygon, every irreducible factor `U` of the edge's
//! residual polynomial gives one prime with ramification index `e` and
//! residue degree `deg φ · deg U`. When some residual polynomial has a
//! repeated factor the input is not p-regular and the method says nothing.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fq::{factor_mod_p, factor_over_fq, FactorList, FqError, FqPoly};
use crate::polygon::{build_polygon, Edge, NewtonPolygon, PolygonError};
use crate::zpoly::{IntPoly, Prime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OreError {
    #[error("polynomial is identically zero mod {0}")]
    ZeroModP(u64),
    #[error("polynomial {0} is not monic")]
    NotMonic(IntPoly),
    #[error("not {}-regular: {}", .0.p, .0)]
    NotRegular(RegularityReport),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}

/// Where a prime ideal came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrimeOrigin {
    /// f̄ irreducible: `p` stays prime (Dedekind).
    Inert,
    Edge {
        phi: String,
        slope_num: u64,
        slope_den: u64,
        residual_factor: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeIdeal {
    /// Ramification index.
    pub e: u64,
    /// Residue degree.
    pub f: u64,
    pub origin: PrimeOrigin,
}

/// The primes above `p`, in provenance order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingType {
    pub primes: Vec<PrimeIdeal>,
}

impl SplittingType {
    /// `(e, f)` pairs as a sorted multiset.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        let mut v: Vec<_> = self.primes.iter().map(|q| (q.e, q.f)).collect();
        v.sort_unstable();
        v
    }

    /// `Σ e·f`, which equals the field degree.
    pub fn degree(&self) -> u64 {
        self.primes.iter().map(|q| q.e * q.f).sum()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.pairs().iter().map(|(e, fd)| format!("({e},{fd})")).collect();
        write!(f, "{{{}}}", body.join(","))
    }
}

/// Sorted `(e, f)` multiset from a list of pairs.
pub fn pairs_of(list: &[(u64, u64)]) -> Vec<(u64, u64)> {
    let mut v = list.to_vec();
    v.sort_unstable();
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityWitness {
    pub phi: String,
    pub edge: Edge,
    pub residual: String,
    pub repeated_factor: String,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub p: u64,
    pub regular: bool,
    pub witnesses: Vec<RegularityWitness>,
}

impl fmt::Display for RegularityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.regular {
            return f.write_str("regular");
        }
        for (i, w) in self.witnesses.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(
                f,
                "phi={} slope {}/{}: residual {} has ({})^{}",
                w.phi, w.edge.slope_num, w.edge.slope_den, w.residual, w.repeated_factor, w.multiplicity
            )?;
        }
        Ok(())
    }
}

/// One principal edge with its residual polynomial and factorization.
#[derive(Debug, Clone)]
pub struct EdgeAnalysis {
    pub edge: Edge,
    pub residual: FqPoly,
    pub factors: FactorList,
}

/// The φ-polygon data for one irreducible factor of f̄.
#[derive(Debug, Clone)]
pub struct Component {
    pub phi: IntPoly,
    pub multiplicity: u32,
    pub polygon: NewtonPolygon,
    pub edges: Vec<EdgeAnalysis>,
}

/// Everything the local computation at `p` produced.
#[derive(Debug, Clone)]
pub struct LocalAnalysis {
    pub p: Prime,
    pub degree: usize,
    /// Irreducible factors of f̄ lifted to `[0, p)` coefficients.
    pub factorization: Vec<(IntPoly, u32)>,
    /// f̄ irreducible; no polygons are built.
    pub inert: bool,
    pub components: Vec<Component>,
}

impl LocalAnalysis {
    /// f̄ has no repeated factor, so `p ∤ ind θ`.
    pub fn squarefree_reduction(&self) -> bool {
        self.factorization.iter().all(|(_, m)| *m == 1)
    }

    pub fn regularity(&self) -> RegularityReport {
        let witnesses: Vec<RegularityWitness> = self
            .components
            .iter()
            .flat_map(|c| {
                c.edges.iter().flat_map(move |ea| {
                    ea.factors
                        .factors
                        .iter()
                        .filter(|(_, m)| *m > 1)
                        .map(move |(u, m)| RegularityWitness {
                            phi: c.phi.to_string(),
                            edge: ea.edge,
                            residual: ea.residual.to_string(),
                            repeated_factor: u.to_string(),
                            multiplicity: *m,
                        })
                })
            })
            .collect();
        RegularityReport {
            p: self.p.get(),
            regular: witnesses.is_empty(),
            witnesses,
        }
    }

    pub fn splitting(&self) -> Result<SplittingType, OreError> {
        if self.inert {
            return Ok(SplittingType {
                primes: vec![PrimeIdeal {
                    e: 1,
                    f: self.degree as u64,
                    origin: PrimeOrigin::Inert,
                }],
            });
        }
        let report = self.regularity();
        if !report.regular {
            return Err(OreError::NotRegular(report));
        }
        let mut primes = Vec::new();
        for c in &self.components {
            let deg_phi = c.phi.degree().unwrap_or(0) as u64;
            for ea in &c.edges {
                for (u, _) in &ea.factors.factors {
                    primes.push(PrimeIdeal {
                        e: ea.edge.slope_den,
                        f: deg_phi * u.degree().unwrap_or(0) as u64,
                        origin: PrimeOrigin::Edge {
                            phi: c.phi.to_string(),
                            slope_num: ea.edge.slope_num,
                            slope_den: ea.edge.slope_den,
                            residual_factor: u.to_string(),
                        },
                    });
                }
            }
        }
        let st = SplittingType { primes };
        debug_assert_eq!(st.degree(), self.degree as u64);
        Ok(st)
    }
}

/// Factor f̄, build every φ-polygon and factor every residual polynomial.
/// Does not require regularity; see [`LocalAnalysis::splitting`].
pub fn analyze_prime(f: &IntPoly, p: Prime) -> Result<LocalAnalysis, OreError> {
    if !f.is_monic() {
        return Err(OreError::NotMonic(f.clone()));
    }
    let degree = f.degree().unwrap_or(0);
    let list = factor_mod_p(f, p).map_err(|e| match e {
        FqError::ZeroPolynomial => OreError::ZeroModP(p.get()),
        other => OreError::Polygon(PolygonError::BadBase {
            phi: f.clone(),
            p: p.get(),
            source: other,
        }),
    })?;
    let factorization: Vec<(IntPoly, u32)> = list.factors.iter().map(|(g, m)| (g.lift_prime_field(), *m)).collect();
    let inert = degree >= 1 && factorization.len() == 1 && factorization[0].1 == 1;
    let mut components = Vec::new();
    if !inert && degree >= 1 {
        for (phi, mult) in &factorization {
            let polygon = build_polygon(f, phi, p)?;
            let edges = polygon
                .principal_edges()
                .map(|edge| {
                    let residual = polygon.residual_poly(edge)?;
                    let factors = factor_over_fq(&residual).expect("residual polynomials are monic and nonzero");
                    Ok(EdgeAnalysis {
                        edge: *edge,
                        residual,
                        factors,
                    })
                })
                .collect::<Result<Vec<_>, PolygonError>>()?;
            components.push(Component {
                phi: phi.clone(),
                multiplicity: *mult,
                polygon,
                edges,
            });
        }
    }
    Ok(LocalAnalysis {
        p,
        degree,
        factorization,
        inert,
        components,
    })
}

/// Splitting type of `p` for the field defined by monic irreducible `f`.
pub fn splitting_type(f: &IntPoly, p: Prime) -> Result<SplittingType, OreError> {
    analyze_prime(f, p)?.splitting()
}

/// Whether every residual polynomial is separable.
pub fn is_p_regular(f: &IntPoly, p: Prime) -> Result<RegularityReport, OreError> {
    Ok(analyze_prime(f, p)?.regularity())
}
