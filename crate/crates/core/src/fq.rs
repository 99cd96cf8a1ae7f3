//! Finite fields `F_q = F_p[x]/(φ)` and polynomial factorization over them.
//!
//! Field elements are canonical residues: `F_p` polynomials of degree below
//! `deg φ`. Factorization runs square-free, distinct-degree and
//! Cantor-Zassenhaus equal-degree splitting; results are sorted so output is
//! deterministic.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::zpoly::{IntPoly, Prime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FqError {
    #[error("modulus {0} is not monic of degree >= 1 modulo p")]
    NotMonic(String),
    #[error("modulus {modulus} is reducible mod {p}: {witness}")]
    Reducible { p: u64, modulus: String, witness: String },
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
}

/// Dense `F_p[x]` arithmetic on coefficient vectors (low to high, trimmed).
pub mod fp {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % p as u128) as u64
    }

    pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            p - (b - a)
        }
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
        pow_mod(a, p - 2, p)
    }

    pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(acc, base, p);
            }
            base = mul_mod(base, base, p);
            exp >>= 1;
        }
        acc
    }

    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| add_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
                .collect(),
        )
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
                .collect(),
        )
    }

    pub fn scale(a: &[u64], k: u64, p: u64) -> Vec<u64> {
        trim(a.iter().map(|&c| mul_mod(c, k, p)).collect())
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
            }
        }
        trim(out)
    }

    /// Division with remainder; `b` must be nonzero.
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let db = b.len().checked_sub(1).expect("division by zero polynomial");
        let mut rem = a.to_vec();
        if rem.len() <= db {
            return (Vec::new(), trim(rem));
        }
        let inv = inv_mod(b[db], p);
        let mut quot = vec![0u64; rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = mul_mod(rem[k + db], inv, p);
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                rem[k + j] = sub_mod(rem[k + j], mul_mod(c, bj, p), p);
            }
            quot[k] = c;
        }
        rem.truncate(db);
        (trim(quot), trim(rem))
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divrem(a, b, p).1
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        match a.last() {
            Some(&lc) => scale(a, inv_mod(lc, p), p),
            None => Vec::new(),
        }
    }

    /// Extended Euclid: `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    pub fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            let t = sub(&t0, &mul(&q, &t1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.last() {
            Some(&lc) => {
                let inv = inv_mod(lc, p);
                (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
            }
            None => (r0, s0, t0),
        }
    }
}

/// An element of `F_q`: residue of degree below the modulus degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FqElem(Vec<u64>);

impl FqElem {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    /// Value as an `F_p` constant, if the element lies in the prime field.
    pub fn as_prime_field(&self) -> Option<u64> {
        match self.0.as_slice() {
            [] => Some(0),
            [c] => Some(*c),
            _ => None,
        }
    }
}

impl fmt::Display for FqElem {
    /// Written as a polynomial in `a`, the class of the modulus variable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (i, *c));
        crate::zpoly::write_terms(f, "a", terms, |c| (false, c.to_string()))
    }
}

/// `F_p[x]/(modulus)` with the modulus verified irreducible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqField {
    p: Prime,
    modulus: Vec<u64>,
}

impl FqField {
    /// `F_p` itself, presented as `F_p[x]/(x)`.
    pub fn prime_field(p: Prime) -> Self {
        FqField { p, modulus: vec![0, 1] }
    }

    /// Build `F_p[x]/(modulus)`; the modulus must be monic mod `p` and
    /// irreducible over `F_p`.
    pub fn new(p: Prime, modulus: &IntPoly) -> Result<Self, FqError> {
        let m = modulus.reduce_mod(p);
        if m.len() < 2 || m.last() != Some(&1) || m.len() != modulus.coeffs().len() {
            return Err(FqError::NotMonic(modulus.to_string()));
        }
        if m.len() > 2 {
            let base = FqField::prime_field(p);
            let poly = FqPoly::from_prime_field(Arc::new(base), &m);
            let factors = factor_over_fq(&poly)?;
            if factors.factors.len() != 1 || factors.factors[0].1 != 1 {
                return Err(FqError::Reducible {
                    p: p.get(),
                    modulus: modulus.to_string(),
                    witness: factors.to_string_in('x'),
                });
            }
        }
        Ok(FqField { p, modulus: m })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn characteristic(&self) -> u64 {
        self.p.get()
    }

    /// Extension degree over `F_p`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Monic modulus reduced mod `p`, low to high.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn modulus_lift(&self) -> IntPoly {
        IntPoly::from_i64s(&self.modulus.iter().map(|&c| c as i64).collect::<Vec<_>>())
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p.get()).pow(self.degree() as u32)
    }

    pub fn zero(&self) -> FqElem {
        FqElem(Vec::new())
    }

    pub fn one(&self) -> FqElem {
        FqElem(vec![1])
    }

    pub fn from_u64(&self, c: u64) -> FqElem {
        FqElem(fp::trim(vec![c % self.characteristic()]))
    }

    /// Reduce an `F_p` coefficient vector into the field.
    pub fn reduce(&self, a: &[u64]) -> FqElem {
        let p = self.characteristic();
        let a = fp::trim(a.iter().map(|&c| c % p).collect());
        FqElem(fp::rem(&a, &self.modulus, p))
    }

    /// Image of an integer polynomial under `Z[x] -> F_p[x]/(modulus)`.
    pub fn from_int_poly(&self, a: &IntPoly) -> FqElem {
        self.reduce(&a.reduce_mod(self.p))
    }

    /// The class `a` of the modulus variable.
    pub fn generator(&self) -> FqElem {
        self.reduce(&[0, 1])
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(fp::add(&a.0, &b.0, self.characteristic()))
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(fp::sub(&a.0, &b.0, self.characteristic()))
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.characteristic();
        FqElem(fp::rem(&fp::mul(&a.0, &b.0, p), &self.modulus, p))
    }

    pub fn pow(&self, a: &FqElem, exp: &BigUint) -> FqElem {
        let mut acc = self.one();
        for i in (0..exp.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn inv(&self, a: &FqElem) -> FqElem {
        assert!(!a.is_zero(), "inverse of zero in F_q");
        let (g, s, _) = fp::ext_gcd(&a.0, &self.modulus, self.characteristic());
        debug_assert_eq!(g, vec![1]);
        FqElem(fp::rem(&s, &self.modulus, self.characteristic()))
    }

    /// The unique `b` with `b^p = a` (Frobenius is bijective).
    pub fn pth_root(&self, a: &FqElem) -> FqElem {
        let e = BigUint::from(self.characteristic()).pow(self.degree() as u32 - 1);
        self.pow(a, &e)
    }

    /// Every element, in increasing canonical order. Only sensible for
    /// small fields.
    pub fn elements(&self) -> Vec<FqElem> {
        let p = self.characteristic();
        let d = self.degree();
        let total = (p as usize).pow(d as u32);
        (0..total)
            .map(|mut k| {
                let digits: Vec<u64> = (0..d)
                    .map(|_| {
                        let c = (k % p as usize) as u64;
                        k /= p as usize;
                        c
                    })
                    .collect();
                FqElem(fp::trim(digits))
            })
            .collect()
    }
}

/// A univariate polynomial over `F_q`, coefficients low to high, trimmed.
#[derive(Debug, Clone)]
pub struct FqPoly {
    field: Arc<FqField>,
    coeffs: Vec<FqElem>,
}

impl PartialEq for FqPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.coeffs == other.coeffs
    }
}

impl Eq for FqPoly {}

impl FqPoly {
    pub fn new(field: Arc<FqField>, mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPoly { field, coeffs }
    }

    /// Polynomial over the prime field from `F_p` coefficients.
    pub fn from_prime_field(field: Arc<FqField>, coeffs: &[u64]) -> Self {
        let cs = coeffs.iter().map(|&c| field.from_u64(c)).collect();
        FqPoly::new(field, cs)
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&self.field.one())
    }

    pub fn leading(&self) -> Option<&FqElem> {
        self.coeffs.last()
    }

    /// Integer lift with coefficients in `[0, p)`. Only valid over the prime
    /// field; panics otherwise.
    pub fn lift_prime_field(&self) -> IntPoly {
        IntPoly::from_i64s(
            &self
                .coeffs
                .iter()
                .map(|c| c.as_prime_field().expect("prime-field coefficient") as i64)
                .collect::<Vec<_>>(),
        )
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        let k = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    pub fn mul(&self, other: &FqPoly) -> FqPoly {
        FqPoly::new(self.field.clone(), ring(&self.field).mul(&self.coeffs, &other.coeffs))
    }

    pub fn divrem(&self, other: &FqPoly) -> (FqPoly, FqPoly) {
        let (q, r) = ring(&self.field).divrem(&self.coeffs, &other.coeffs);
        (FqPoly::new(self.field.clone(), q), FqPoly::new(self.field.clone(), r))
    }

    pub fn derivative(&self) -> FqPoly {
        FqPoly::new(self.field.clone(), ring(&self.field).derivative(&self.coeffs))
    }

    pub fn gcd(&self, other: &FqPoly) -> FqPoly {
        FqPoly::new(self.field.clone(), ring(&self.field).gcd(&self.coeffs, &other.coeffs))
    }

    pub fn monic(&self) -> FqPoly {
        FqPoly::new(self.field.clone(), ring(&self.field).monic(&self.coeffs))
    }

    /// Render with the given indeterminate; coefficients outside `F_p` are
    /// parenthesised polynomials in `a`.
    pub fn to_string_in(&self, var: char) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            let cs = match c.as_prime_field() {
                Some(v) => v.to_string(),
                None => format!("({c})"),
            };
            match (i, cs.as_str()) {
                (0, _) => out.push_str(&cs),
                (1, "1") => out.push(var),
                (1, _) => out.push_str(&format!("{cs}{var}")),
                (_, "1") => out.push_str(&format!("{var}^{i}")),
                _ => out.push_str(&format!("{cs}{var}^{i}")),
            }
        }
        out
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in('Y'))
    }
}

/// Irreducible factors with multiplicities; `unit · Π factorᵐ` is the
/// factored polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorList {
    pub unit: FqElem,
    pub factors: Vec<(FqPoly, u32)>,
}

impl FactorList {
    pub fn to_string_in(&self, var: char) -> String {
        self.factors
            .iter()
            .map(|(g, m)| {
                if *m == 1 {
                    format!("({})", g.to_string_in(var))
                } else {
                    format!("({})^{m}", g.to_string_in(var))
                }
            })
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(g, m)| g.degree().unwrap_or(0) * *m as usize)
            .sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }
}

/// Factor `f mod p` over `F_p`.
pub fn factor_mod_p(f: &IntPoly, p: Prime) -> Result<FactorList, FqError> {
    let field = Arc::new(FqField::prime_field(p));
    let g = FqPoly::from_prime_field(field, &f.reduce_mod(p));
    factor_over_fq(&g)
}

/// Complete factorization over the coefficient field of `t`.
pub fn factor_over_fq(t: &FqPoly) -> Result<FactorList, FqError> {
    let lc = t.leading().ok_or(FqError::ZeroPolynomial)?.clone();
    let k = &t.field;
    let r = ring(k);
    let f = r.monic(&t.coeffs);
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    for (sq, mult) in r.squarefree(&f) {
        for (block, d) in r.distinct_degree(&sq) {
            let mut pieces = Vec::new();
            r.equal_degree(&block, d, &mut rng, &mut pieces);
            out.extend(pieces.into_iter().map(|g| (FqPoly::new(k.clone(), g), mult)));
        }
    }
    out.sort_by(|(a, ma), (b, mb)| {
        a.coeffs
            .len()
            .cmp(&b.coeffs.len())
            .then_with(|| a.coeffs.cmp(&b.coeffs))
            .then(ma.cmp(mb))
    });
    Ok(FactorList { unit: lc, factors: out })
}

/// True iff `t` has no repeated root in the algebraic closure.
pub fn is_separable(t: &FqPoly) -> Result<bool, FqError> {
    match t.degree() {
        None => Err(FqError::ZeroPolynomial),
        Some(0) => Err(FqError::ConstantPolynomial),
        Some(_) => Ok(t.gcd(&t.derivative()).degree() == Some(0)),
    }
}

fn ring(field: &FqField) -> PolyRing<'_> {
    PolyRing { k: field }
}

/// Arithmetic on raw coefficient vectors over a fixed field.
struct PolyRing<'a> {
    k: &'a FqField,
}

type Coeffs = Vec<FqElem>;

impl PolyRing<'_> {
    fn trim(&self, mut a: Coeffs) -> Coeffs {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    fn is_one(&self, a: &[FqElem]) -> bool {
        a.len() == 1 && a[0] == self.k.one()
    }

    fn sub(&self, a: &[FqElem], b: &[FqElem]) -> Coeffs {
        let n = a.len().max(b.len());
        let z = self.k.zero();
        self.trim(
            (0..n)
                .map(|i| self.k.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    fn add(&self, a: &[FqElem], b: &[FqElem]) -> Coeffs {
        let n = a.len().max(b.len());
        let z = self.k.zero();
        self.trim(
            (0..n)
                .map(|i| self.k.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    fn mul(&self, a: &[FqElem], b: &[FqElem]) -> Coeffs {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.k.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.k.add(&out[i + j], &self.k.mul(x, y));
            }
        }
        self.trim(out)
    }

    fn divrem(&self, a: &[FqElem], b: &[FqElem]) -> (Coeffs, Coeffs) {
        let db = b.len().checked_sub(1).expect("division by zero polynomial");
        let mut rem = a.to_vec();
        if rem.len() <= db {
            return (Vec::new(), self.trim(rem));
        }
        let inv = self.k.inv(&b[db]);
        let mut quot = vec![self.k.zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = self.k.mul(&rem[i + db], &inv);
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] = self.k.sub(&rem[i + j], &self.k.mul(&c, bj));
            }
            quot[i] = c;
        }
        rem.truncate(db);
        (self.trim(quot), self.trim(rem))
    }

    fn rem(&self, a: &[FqElem], b: &[FqElem]) -> Coeffs {
        self.divrem(a, b).1
    }

    fn monic(&self, a: &[FqElem]) -> Coeffs {
        match a.last() {
            None => Vec::new(),
            Some(lc) => {
                let inv = self.k.inv(lc);
                a.iter().map(|c| self.k.mul(c, &inv)).collect()
            }
        }
    }

    fn gcd(&self, a: &[FqElem], b: &[FqElem]) -> Coeffs {
        let (mut x, mut y) = (self.trim(a.to_vec()), self.trim(b.to_vec()));
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = std::mem::replace(&mut y, r);
        }
        self.monic(&x)
    }

    fn derivative(&self, a: &[FqElem]) -> Coeffs {
        self.trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.k.mul(c, &self.k.from_u64(i as u64)))
                .collect(),
        )
    }

    fn powmod(&self, base: &[FqElem], exp: &BigUint, m: &[FqElem]) -> Coeffs {
        let base = self.rem(base, m);
        let mut acc = self.rem(&[self.k.one()], m);
        for i in (0..exp.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if exp.bit(i) {
                acc = self.rem(&self.mul(&acc, &base), m);
            }
        }
        acc
    }

    /// Square-free decomposition of a monic polynomial: `(g, m)` pairs with
    /// `Π gᵐ = f` and each `g` square-free, nonconstant.
    fn squarefree(&self, f: &[FqElem]) -> Vec<(Coeffs, u32)> {
        let mut out = Vec::new();
        if f.len() <= 1 {
            return out;
        }
        let p = self.k.characteristic();
        let mut c = self.gcd(f, &self.derivative(f));
        let mut w = self.divrem(f, &c).0;
        let mut i = 1u32;
        while !self.is_one(&w) {
            let y = self.gcd(&w, &c);
            let fac = self.divrem(&w, &y).0;
            if fac.len() > 1 {
                out.push((fac, i));
            }
            c = self.divrem(&c, &y).0;
            w = y;
            i += 1;
        }
        if c.len() > 1 {
            // c is a polynomial in Y^p
            let root: Coeffs = c.iter().step_by(p as usize).map(|a| self.k.pth_root(a)).collect();
            for (g, m) in self.squarefree(&root) {
                out.push((g, m * p as u32));
            }
        }
        out
    }

    /// Split a square-free monic polynomial into products of irreducibles
    /// of equal degree: `(product, degree)`.
    fn distinct_degree(&self, f: &[FqElem]) -> Vec<(Coeffs, usize)> {
        let q = self.k.order();
        let x = vec![self.k.zero(), self.k.one()];
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let mut h = self.rem(&x, &rest);
        let mut d = 1;
        while rest.len() > 2 * d {
            h = self.powmod(&h, &q, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if !self.is_one(&g) {
                rest = self.divrem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
            d += 1;
        }
        if rest.len() > 1 {
            let deg = rest.len() - 1;
            out.push((rest, deg));
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of distinct irreducibles of
    /// degree `d`.
    fn equal_degree(&self, f: &[FqElem], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Coeffs>) {
        let n = f.len() - 1;
        if n == d {
            out.push(f.to_vec());
            return;
        }
        let p = self.k.characteristic();
        let q = self.k.order();
        let elements = self.k.degree();
        loop {
            let a: Coeffs = self.trim(
                (0..n)
                    .map(|_| {
                        let digits: Vec<u64> = (0..elements).map(|_| rng.gen_range(0..p)).collect();
                        self.k.reduce(&digits)
                    })
                    .collect(),
            );
            if a.len() <= 1 {
                continue;
            }
            let b = if p == 2 {
                // absolute trace down to F_2
                let rounds = elements * d;
                let mut acc = Vec::new();
                let mut t = self.rem(&a, f);
                for _ in 0..rounds {
                    acc = self.add(&acc, &t);
                    t = self.rem(&self.mul(&t, &t), f);
                }
                acc
            } else {
                let e = (q.pow(d as u32) - BigUint::one()) >> 1;
                self.sub(&self.powmod(&a, &e, f), &[self.k.one()])
            };
            let g = self.gcd(&b, f);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(f, &g).0;
                self.equal_degree(&g, d, rng, out);
                self.equal_degree(&self.monic(&h), d, rng, out);
                return;
            }
        }
    }
}

impl FqField {
    /// Monic polynomials of exactly `degree` over this field, enumerated.
    pub fn monic_polys(self: &Arc<Self>, degree: usize) -> Vec<FqPoly> {
        let elems = self.elements();
        let q = elems.len();
        let total = q.checked_pow(degree as u32).expect("enumeration too large");
        (0..total)
            .map(|mut k| {
                let mut cs: Vec<FqElem> = (0..degree)
                    .map(|_| {
                        let e = elems[k % q].clone();
                        k /= q;
                        e
                    })
                    .collect();
                cs.push(self.one());
                FqPoly::new(self.clone(), cs)
            })
            .collect()
    }
}
