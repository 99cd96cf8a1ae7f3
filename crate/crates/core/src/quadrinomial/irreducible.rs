//! Irreducibility of monic integer polynomials over `Q`.
//!
//! Cheap certificates first (Eisenstein, incompatible factor-degree
//! patterns modulo small primes), then a Zassenhaus search: factor modulo a
//! prime where f̄ is square-free, Hensel-lift past the Mignotte bound and
//! try every combination of lifted factors of total degree at most `n/2`.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::fq::{factor_mod_p, fp};
use crate::zpoly::{primes_below, IntPoly, Prime, ZpolyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "by")]
pub enum IrreducibleProof {
    Eisenstein { prime: u64 },
    DegreePatterns { primes: usize },
    FactorSearch { prime: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible(IrreducibleProof),
    Reducible { factor: IntPoly },
    Unknown,
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Irreducibility::Irreducible(_) => "irreducible",
            Irreducibility::Reducible { .. } => "reducible",
            Irreducibility::Unknown => "unknown",
        }
    }
}

/// Eisenstein's criterion at `q` for a monic polynomial.
pub fn eisenstein(f: &IntPoly, q: u64) -> Result<bool, ZpolyError> {
    let q = Prime::new(q)?;
    Ok(eisenstein_at(f, &q.to_bigint()))
}

fn eisenstein_at(f: &IntPoly, q: &BigInt) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 || !f.is_monic() {
        return false;
    }
    let cs = f.coeffs();
    let q2 = q * q;
    cs[..n].iter().all(|c| (c % q).is_zero()) && !(&cs[0] % &q2).is_zero()
}

const EISENSTEIN_LIMIT: u64 = 10_000;
const PATTERN_PRIMES: usize = 25;
const MAX_LIFTED_FACTORS: usize = 16;

/// Decide irreducibility of a monic polynomial.
pub fn irreducibility(f: &IntPoly) -> Irreducibility {
    let Some(n) = f.degree() else {
        return Irreducibility::Unknown;
    };
    if !f.is_monic() || n == 0 {
        return Irreducibility::Unknown;
    }
    if n == 1 {
        return Irreducibility::Irreducible(IrreducibleProof::DegreePatterns { primes: 0 });
    }
    if f.coeff(0).is_zero() {
        return Irreducibility::Reducible {
            factor: IntPoly::linear(0),
        };
    }
    if let Some(q) = eisenstein_prime(f) {
        return Irreducibility::Irreducible(IrreducibleProof::Eisenstein { prime: q });
    }
    if degree_patterns_exclude_factors(f) {
        return Irreducibility::Irreducible(IrreducibleProof::DegreePatterns { primes: PATTERN_PRIMES });
    }
    factor_search(f)
}

/// Primes below the Eisenstein limit, sieved once.
fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_below(EISENSTEIN_LIMIT))
}

fn eisenstein_prime(f: &IntPoly) -> Option<u64> {
    let n = f.degree()?;
    let g = IntPoly::new(f.coeffs()[..n].to_vec()).content();
    if g.is_zero() || g.is_one() {
        return None;
    }
    small_primes().iter().copied().find(|&q| {
        let qb = BigInt::from(q);
        (&g % &qb).is_zero() && eisenstein_at(f, &qb)
    })
}

/// Degrees `d` in `1..n` that a factor of `f` could have, judging by the
/// factorization pattern of f̄.
fn possible_factor_degrees(f: &IntPoly, p: Prime) -> BTreeSet<usize> {
    let n = f.degree().unwrap_or(0);
    let list = factor_mod_p(f, p).expect("monic polynomial is nonzero mod p");
    let mut sums = BTreeSet::from([0usize]);
    for (g, m) in &list.factors {
        let d = g.degree().unwrap_or(0);
        for _ in 0..*m {
            let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
            sums.extend(next);
        }
    }
    sums.into_iter().filter(|&s| s > 0 && s < n).collect()
}

fn degree_patterns_exclude_factors(f: &IntPoly) -> bool {
    let mut candidates: Option<BTreeSet<usize>> = None;
    for &q in small_primes().iter().take(PATTERN_PRIMES) {
        let here = possible_factor_degrees(f, Prime::new(q).expect("sieved prime"));
        let next: BTreeSet<usize> = match candidates {
            None => here,
            Some(c) => c.intersection(&here).copied().collect(),
        };
        if next.is_empty() {
            return true;
        }
        candidates = Some(next);
    }
    false
}

fn lift_fp(a: &[u64]) -> IntPoly {
    IntPoly::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

fn reduce_fp(a: &IntPoly, p: Prime) -> Vec<u64> {
    a.reduce_mod(p)
}

/// Lift `target ≡ g·h (mod p)` to `target ≡ G·H (mod p^k)` with `G`, `H`
/// monic. `g` and `h` must be coprime mod `p`.
fn hensel_pair(target: &IntPoly, g: &[u64], h: &[u64], p: Prime, k: u32) -> (IntPoly, IntPoly) {
    let pv = p.get();
    let (one, _, t) = fp::ext_gcd(g, h, pv);
    debug_assert_eq!(one, vec![1]);
    let mut big_g = lift_fp(g);
    let mut big_h = lift_fp(h);
    let pb = p.to_bigint();
    let mut pk = pb.clone();
    for _ in 1..k {
        let err = target - &(&big_g * &big_h);
        let e = reduce_fp(&err.div_exact(&pk), p);
        let et = fp::mul(&e, &t, pv);
        let (_, dg) = fp::divrem(&et, g, pv);
        let rest = fp::sub(&e, &fp::mul(&dg, h, pv), pv);
        let (dh, zero) = fp::divrem(&rest, g, pv);
        debug_assert!(zero.is_empty());
        big_g = &big_g + &lift_fp(&dg).scale(&pk);
        big_h = &big_h + &lift_fp(&dh).scale(&pk);
        pk *= &pb;
    }
    (big_g, big_h)
}

/// Lift the square-free factorization `factors` of f̄ to `p^k`.
fn hensel_multi(f: &IntPoly, factors: &[Vec<u64>], p: Prime, k: u32) -> Vec<IntPoly> {
    let modulus = p.to_bigint().pow(k);
    let mut out = Vec::with_capacity(factors.len());
    let mut target = f.clone();
    for (i, g) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            out.push(target.symmetric_mod(&modulus));
            break;
        }
        let h = factors[i + 1..]
            .iter()
            .fold(vec![1u64], |acc, u| fp::mul(&acc, u, p.get()));
        let (big_g, big_h) = hensel_pair(&target, g, &h, p, k);
        out.push(big_g.symmetric_mod(&modulus));
        target = big_h.symmetric_mod(&modulus);
    }
    out
}

/// Mignotte-style bound on the coefficients of a monic factor of degree at
/// most `d`: `2^d · ‖f‖₂`, rounded up.
fn factor_coefficient_bound(f: &IntPoly, d: usize) -> BigInt {
    let norm_sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + BigInt::one();
    norm << d
}

fn factor_search(f: &IntPoly) -> Irreducibility {
    let n = f.degree().unwrap_or(0);
    // a square-free prime with the fewest modular factors
    let mut best: Option<(Prime, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for &q in small_primes().iter().take_while(|&&q| q < 2000) {
        let p = Prime::new(q).expect("sieved prime");
        let list = factor_mod_p(f, p).expect("monic polynomial is nonzero mod p");
        if !list.is_squarefree() {
            continue;
        }
        let facs: Vec<Vec<u64>> = list
            .factors
            .iter()
            .map(|(g, _)| reduce_fp(&g.lift_prime_field(), p))
            .collect();
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 8 {
            break;
        }
    }
    let Some((p, facs)) = best else {
        return Irreducibility::Unknown;
    };
    if facs.len() == 1 {
        return Irreducibility::Irreducible(IrreducibleProof::FactorSearch { prime: p.get() });
    }
    if facs.len() > MAX_LIFTED_FACTORS {
        return Irreducibility::Unknown;
    }
    let bound = factor_coefficient_bound(f, n / 2) * 2;
    let pb = p.to_bigint();
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_multi(f, &facs, p, k);
    debug_assert!(lifted.iter().all(|g| g.is_monic()));
    let r = lifted.len();
    // any proper factorization has a side of degree <= n/2
    let mut masks: Vec<u32> = (1u32..(1 << r) - 1)
        .filter(|&mask| {
            let d: usize = (0..r)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| lifted[i].degree().unwrap_or(0))
                .sum();
            d <= n / 2
        })
        .collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let g = (0..r)
            .filter(|i| mask & (1 << i) != 0)
            .fold(IntPoly::one(), |acc, i| (&acc * &lifted[i]).symmetric_mod(&modulus));
        if g.max_abs_coeff() > bound {
            continue;
        }
        if let Ok((_, rem)) = f.divmod(&g) {
            if rem.is_zero() {
                return Irreducibility::Reducible { factor: g };
            }
        }
    }
    Irreducibility::Irreducible(IrreducibleProof::FactorSearch { prime: p.get() })
}
