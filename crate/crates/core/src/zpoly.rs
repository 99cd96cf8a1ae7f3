//! Dense integer polynomials, p-adic valuations and φ-adic expansions.
//!
//! Coefficients are stored low to high: `coeffs[i]` is the coefficient of
//! `x^i`. The zero polynomial is the empty vector.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZpolyError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("divisor must be monic of degree at least 1, got {0}")]
    NonMonicDivisor(IntPoly),
    #[error("cannot expand {f} in base {phi}: base must be monic with 1 <= deg <= deg f")]
    BadBase { f: IntPoly, phi: IntPoly },
}

/// A rational prime. Construction checks primality (deterministic
/// Miller-Rabin over `u64`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, ZpolyError> {
        if is_prime_u64(p) {
            Ok(Prime(p))
        } else {
            Err(ZpolyError::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }
}

impl TryFrom<u64> for Prime {
    type Error = ZpolyError;
    fn try_from(p: u64) -> Result<Self, Self::Error> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic for all `u64` with the first twelve prime bases.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &BASES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The primes below `bound`, by sieve.
pub fn primes_below(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    if n < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// A p-adic valuation; `Infinite` only for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Exponent of `p` in `n`.
pub fn vp_int(n: &BigInt, p: Prime) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let p = p.to_bigint();
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        n = q;
        v += 1;
    }
}

/// Minimum coefficient valuation (the Gauss valuation); `Infinite` for the
/// zero polynomial.
pub fn gauss_valuation(g: &IntPoly, p: Prime) -> Valuation {
    g.coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| vp_int(c, p))
        .min()
        .unwrap_or(Valuation::Infinite)
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly::new(coeffs)
    }

    /// `x + c`
    pub fn linear(c: i64) -> Self {
        IntPoly::from_i64s(&[c, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Exact division of every coefficient by `k`. Caller guarantees `k`
    /// divides the content.
    pub fn div_exact(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c / k).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        (0..k).fold(IntPoly::one(), |acc, _| &acc * self)
    }

    /// gcd of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Coefficients reduced into `[0, p)`, as machine words.
    pub fn reduce_mod(&self, p: Prime) -> Vec<u64> {
        let pb = p.to_bigint();
        let mut out: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits in u64"))
            .collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// Coefficients reduced into the symmetric range `(-m/2, m/2]`.
    pub fn symmetric_mod(&self, m: &BigInt) -> IntPoly {
        let half: BigInt = m / 2;
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let r = c.mod_floor(m);
                    if r > half {
                        r - m
                    } else {
                        r
                    }
                })
                .collect(),
        )
    }

    /// Division by a monic polynomial of degree ≥ 1; `f = q·g + r`,
    /// `deg r < deg g`.
    pub fn divmod(&self, g: &IntPoly) -> Result<(IntPoly, IntPoly), ZpolyError> {
        let dg = match g.degree() {
            Some(d) if d >= 1 && g.is_monic() => d,
            _ => return Err(ZpolyError::NonMonicDivisor(g.clone())),
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dg];
        for k in (0..quot.len()).rev() {
            let lead = std::mem::take(&mut rem[k + dg]);
            if lead.is_zero() {
                continue;
            }
            for (j, gc) in g.coeffs[..dg].iter().enumerate() {
                rem[k + j] -= &lead * gc;
            }
            quot[k] = lead;
        }
        rem.truncate(dg);
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Coefficient-wise absolute bound `max |c_i|`.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

/// `f = q·g + r` with `g` monic.
pub fn divmod(f: &IntPoly, g: &IntPoly) -> Result<(IntPoly, IntPoly), ZpolyError> {
    f.divmod(g)
}

/// Base-φ digits of a polynomial: `Σ digits[i]·baseⁱ`, every digit of
/// degree below `deg base`, leading digit nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiExpansion {
    base: IntPoly,
    digits: Vec<IntPoly>,
}

impl PhiExpansion {
    /// Assemble from known digits (used by closed-form expansions).
    /// Trailing zero digits are stripped.
    pub fn from_digits(base: IntPoly, mut digits: Vec<IntPoly>) -> Self {
        while digits.last().is_some_and(|d| d.is_zero()) {
            digits.pop();
        }
        PhiExpansion { base, digits }
    }

    pub fn base(&self) -> &IntPoly {
        &self.base
    }

    pub fn digits(&self) -> &[IntPoly] {
        &self.digits
    }

    /// φ-adic degree `n`: the index of the leading digit.
    pub fn phi_degree(&self) -> usize {
        self.digits.len().saturating_sub(1)
    }

    pub fn reconstruct(&self) -> IntPoly {
        self.digits
            .iter()
            .rev()
            .fold(IntPoly::zero(), |acc, d| &(&acc * &self.base) + d)
    }
}

/// Expand `f` in base `phi` by repeated division.
pub fn phi_expand(f: &IntPoly, phi: &IntPoly) -> Result<PhiExpansion, ZpolyError> {
    let bad = || ZpolyError::BadBase {
        f: f.clone(),
        phi: phi.clone(),
    };
    match (f.degree(), phi.degree()) {
        (Some(df), Some(dp)) if phi.is_monic() && dp >= 1 && dp <= df => {}
        _ => return Err(bad()),
    }
    let mut digits = Vec::new();
    let mut cur = f.clone();
    while !cur.is_zero() {
        let (q, r) = cur.divmod(phi)?;
        digits.push(r);
        cur = q;
    }
    Ok(PhiExpansion::from_digits(phi.clone(), digits))
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

/// Writes a single-variable term list in `x`, e.g. `x^6+15x^2-8x+128`. The
/// output is accepted by [`crate::parse::parse_poly`].
pub(crate) fn write_terms<T, F>(
    f: &mut fmt::Formatter<'_>,
    var: &str,
    terms: impl DoubleEndedIterator<Item = (usize, T)>,
    mut render: F,
) -> fmt::Result
where
    F: FnMut(&T) -> (bool, String),
{
    // `render` returns (negative, magnitude) with magnitude "1" meaning unit.
    let mut first = true;
    for (i, c) in terms.rev() {
        let (neg, mag) = render(&c);
        if neg {
            f.write_str("-")?;
        } else if !first {
            f.write_str("+")?;
        }
        first = false;
        let unit = mag == "1";
        match i {
            0 => f.write_str(&mag)?,
            1 if unit => f.write_str(var)?,
            1 => write!(f, "{mag}{var}")?,
            _ if unit => write!(f, "{var}^{i}")?,
            _ => write!(f, "{mag}{var}^{i}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        write_terms(f, "x", terms, |c| (c.is_negative(), c.abs().to_string()))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn prime_validation() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(3).is_ok());
        assert_eq!(Prime::new(1), Err(ZpolyError::NotPrime(1)));
        assert_eq!(Prime::new(0), Err(ZpolyError::NotPrime(0)));
        assert_eq!(Prime::new(9), Err(ZpolyError::NotPrime(9)));
        assert!(Prime::new(18446744073709551557).is_ok());
        assert!(Prime::new(3215031751).is_err());
        let small = primes_below(1000);
        for n in 0..1000u64 {
            assert_eq!(is_prime_u64(n), small.contains(&n), "{n}");
        }
    }

    #[test]
    fn integer_valuations() {
        assert_eq!(vp_int(&big(8), p(2)), Valuation::Finite(3));
        assert_eq!(vp_int(&big(0), p(5)), Valuation::Infinite);
        assert_eq!(vp_int(&big(896), p(2)), Valuation::Finite(7));
        assert_eq!(vp_int(&big(-243), p(3)), Valuation::Finite(5));
        assert_eq!(vp_int(&big(7), p(2)), Valuation::Finite(0));
    }

    #[test]
    fn gauss_valuation_examples() {
        assert_eq!(
            gauss_valuation(&IntPoly::from_i64s(&[6, 2]), p(2)),
            Valuation::Finite(1)
        );
        assert_eq!(gauss_valuation(&IntPoly::one(), p(3)), Valuation::Finite(0));
        assert_eq!(gauss_valuation(&IntPoly::zero(), p(2)), Valuation::Infinite);
        // (b-a)x + (1+c-a) for (a,b,c) = (8,8,7) and (8,16,23)
        let d = |a: i64, b: i64, c: i64| IntPoly::from_i64s(&[1 + c - a, b - a]);
        assert_eq!(gauss_valuation(&d(8, 8, 7), p(2)), Valuation::Infinite);
        assert_eq!(gauss_valuation(&d(8, 16, 23), p(2)), Valuation::Finite(3));
    }

    #[test]
    fn divmod_examples() {
        let x = IntPoly::linear(0);
        let (q, r) = IntPoly::from_i64s(&[1, 0, 1]).divmod(&x).unwrap();
        assert_eq!(q, x);
        assert_eq!(r, IntPoly::one());
        let phi = IntPoly::from_i64s(&[1, 1, 1]);
        let (q, r) = phi.divmod(&phi).unwrap();
        assert_eq!(q, IntPoly::one());
        assert!(r.is_zero());
        assert!(matches!(
            IntPoly::one().divmod(&IntPoly::from_i64s(&[1, 2])),
            Err(ZpolyError::NonMonicDivisor(_))
        ));
        assert!(IntPoly::one().divmod(&IntPoly::one()).is_err());
    }

    #[test]
    fn expansion_in_x2_x_1() {
        // x^6 + a x^2 + b x + c in base x^2+x+1:
        // [(b-a)x + 1+c-a, 2x + a-2, -3x, 1]
        for (a, b, c) in [(8i64, 16, 23), (-5, 3, 11), (0, 0, 0)] {
            let f = IntPoly::from_i64s(&[c, b, a, 0, 0, 0, 1]);
            let phi = IntPoly::from_i64s(&[1, 1, 1]);
            let e = phi_expand(&f, &phi).unwrap();
            assert_eq!(
                e.digits(),
                &[
                    IntPoly::from_i64s(&[1 + c - a, b - a]),
                    IntPoly::from_i64s(&[a - 2, 2]),
                    IntPoly::from_i64s(&[0, -3]),
                    IntPoly::one(),
                ]
            );
            assert_eq!(e.reconstruct(), f);
        }
    }

    #[test]
    fn expansion_of_base_itself() {
        let phi = IntPoly::from_i64s(&[1, 1, 1]);
        let e = phi_expand(&phi, &phi).unwrap();
        assert_eq!(e.digits(), &[IntPoly::zero(), IntPoly::one()]);
        assert_eq!(e.phi_degree(), 1);
    }

    #[test]
    fn expansion_rejects_bad_base() {
        let f = IntPoly::from_i64s(&[1, 1]);
        assert!(phi_expand(&f, &IntPoly::from_i64s(&[1, 0, 1])).is_err());
        assert!(phi_expand(&f, &IntPoly::from_i64s(&[1, 2])).is_err());
        assert!(phi_expand(&f, &IntPoly::one()).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(
            IntPoly::from_i64s(&[128, 8, 15, 0, 0, 0, 1]).to_string(),
            "x^6+15x^2+8x+128"
        );
        assert_eq!(IntPoly::from_i64s(&[-1, -1, 0, -2]).to_string(), "-2x^3-x-1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn symmetric_reduction() {
        let f = IntPoly::from_i64s(&[7, 8, 9]);
        assert_eq!(f.symmetric_mod(&big(16)), IntPoly::from_i64s(&[7, 8, -7]));
    }
}
