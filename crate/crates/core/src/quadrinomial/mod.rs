//! Sextic quadrinomials `x⁶ + a·xᵐ + b·x + c`: congruence checkers for the
//! known non-monogenity criteria, closed-form φ-expansions, and
//! irreducibility helpers.
//!
//! The checkers are pure arithmetic on `(a, b, c, m)`; they never run the
//! polygon pipeline. Agreement with the pipeline is a test-suite concern.

mod irreducible;

pub use irreducible::*;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::zpoly::{vp_int, IntPoly, PhiExpansion, Prime, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadrinomialError {
    #[error("exponent m = {0} is outside the supported range {1}")]
    ExponentOutOfRange(u32, &'static str),
    #[error("coefficient {0} must be nonzero")]
    ZeroCoefficient(&'static str),
}

/// `x⁶ + a·xᵐ + b·x + c` with `1 ≤ m ≤ 5`. For `m = 1` the linear
/// coefficient is `a + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadrinomialInput {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub m: u32,
}

impl QuadrinomialInput {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        m: u32,
    ) -> Result<Self, QuadrinomialError> {
        if !(1..=5).contains(&m) {
            return Err(QuadrinomialError::ExponentOutOfRange(m, "1..=5"));
        }
        Ok(QuadrinomialInput {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            m,
        })
    }

    pub fn to_poly(&self) -> IntPoly {
        let mut cs = vec![BigInt::zero(); 7];
        cs[6] = BigInt::one();
        cs[self.m as usize] += &self.a;
        cs[1] += &self.b;
        cs[0] += &self.c;
        IntPoly::new(cs)
    }

    /// Recognise the quadrinomial shape. A monic sextic with at most one
    /// nonzero coefficient among `x², …, x⁵` matches; with none, the result
    /// is the trinomial `x⁶ + a·x + c` (`m = 1`, `b = 0`).
    pub fn from_poly(f: &IntPoly) -> Option<Self> {
        if f.degree() != Some(6) || !f.is_monic() {
            return None;
        }
        let middle: Vec<u32> = (2..=5u32).filter(|&i| !f.coeff(i as usize).is_zero()).collect();
        match middle.as_slice() {
            [] => Some(QuadrinomialInput {
                a: f.coeff(1),
                b: BigInt::zero(),
                c: f.coeff(0),
                m: 1,
            }),
            [m] => Some(QuadrinomialInput {
                a: f.coeff(*m as usize),
                b: f.coeff(1),
                c: f.coeff(0),
                m: *m,
            }),
            _ => None,
        }
    }

    fn require_m(&self, range: std::ops::RangeInclusive<u32>, label: &'static str) -> Result<(), QuadrinomialError> {
        if range.contains(&self.m) {
            Ok(())
        } else {
            Err(QuadrinomialError::ExponentOutOfRange(self.m, label))
        }
    }

    fn require_nonzero_bc(&self) -> Result<(), QuadrinomialError> {
        if self.b.is_zero() {
            return Err(QuadrinomialError::ZeroCoefficient("b"));
        }
        if self.c.is_zero() {
            return Err(QuadrinomialError::ZeroCoefficient("c"));
        }
        Ok(())
    }

    /// `a + (−1)ᵐ`.
    fn a_plus_sign(&self) -> BigInt {
        if self.m.is_multiple_of(2) {
            &self.a + 1
        } else {
            &self.a - 1
        }
    }
}

impl fmt::Display for QuadrinomialInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={}, c={}, m={})", self.a, self.b, self.c, self.m)
    }
}

/// Which criterion a verdict refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// `8 | a, b, c+1` ⇒ `v₂ = 2`; `9 | a, b, c+1` ⇒ `v₃ = 1`.
    Divisibility,
    /// Slope condition at 2 with `8 | a+(−1)ᵐ, b, c`.
    TwoAdicSlope,
    /// Slope condition at 3 with `9 | a+(−1)ᵐ, b, c`.
    ThreeAdicSlope,
    /// The divisibility criterion specialised to trinomials `x⁶ + a·xᵐ + b`.
    TrinomialDivisibility,
    /// Slope condition with `gcd(v_p(b), 6) = 1` at both 2 and 3.
    CoprimeSlope,
}

impl TheoremId {
    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Divisibility => "divisibility",
            TheoremId::TwoAdicSlope => "two-adic-slope",
            TheoremId::ThreeAdicSlope => "three-adic-slope",
            TheoremId::TrinomialDivisibility => "trinomial-divisibility",
            TheoremId::CoprimeSlope => "coprime-slope",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub theorem: TheoremId,
    /// Sub-case that fired (or was examined), e.g. `"m2-high"`.
    pub case: Option<String>,
    pub applies: bool,
    /// `(p, v_p(i(K)))` claims; nonempty iff `applies`.
    pub claimed: Vec<(u64, u32)>,
    /// Conditions that did not hold.
    pub failed_conditions: Vec<String>,
}

impl TheoremVerdict {
    fn from_parts(theorem: TheoremId, case: Option<String>, claimed: Vec<(u64, u32)>, failed: Vec<String>) -> Self {
        TheoremVerdict {
            theorem,
            case,
            applies: !claimed.is_empty(),
            claimed,
            failed_conditions: failed,
        }
    }

    pub fn claim(&self, p: u64) -> Option<u32> {
        self.claimed.iter().find(|(q, _)| *q == p).map(|&(_, v)| v)
    }
}

fn divides(d: u32, n: &BigInt) -> bool {
    n.is_multiple_of(&BigInt::from(d))
}

fn vp(n: &BigInt, p: u64) -> Valuation {
    vp_int(n, Prime::new(p).expect("2 and 3 are prime"))
}

/// Finite valuation of a nonzero integer.
fn vp_finite(n: &BigInt, p: u64) -> u64 {
    vp(n, p).finite().expect("nonzero")
}

fn divisibility_claims(a: &BigInt, b: &BigInt, c: &BigInt) -> (Vec<(u64, u32)>, Vec<String>) {
    let c1 = c + 1;
    let mut claimed = Vec::new();
    let mut failed = Vec::new();
    for (d, p, v) in [(8u32, 2u64, 2u32), (9, 3, 1)] {
        let mut miss: Vec<&str> = Vec::new();
        if !divides(d, a) {
            miss.push("a");
        }
        if !divides(d, b) {
            miss.push("b");
        }
        if !divides(d, &c1) {
            miss.push("c+1");
        }
        if miss.is_empty() {
            claimed.push((p, v));
        } else {
            failed.extend(miss.into_iter().map(|s| format!("{d} | {s}")));
        }
    }
    (claimed, failed)
}

/// `8 | a, b, c+1` gives `v₂(i(K)) = 2`; `9 | a, b, c+1` gives
/// `v₃(i(K)) = 1`. Requires `2 ≤ m ≤ 5`.
pub fn check_th12(q: &QuadrinomialInput) -> Result<TheoremVerdict, QuadrinomialError> {
    q.require_m(2..=5, "2..=5")?;
    let (claimed, failed) = divisibility_claims(&q.a, &q.b, &q.c);
    Ok(TheoremVerdict::from_parts(
        TheoremId::Divisibility,
        None,
        claimed,
        failed,
    ))
}

/// Trinomial `x⁶ + a·xᵐ + b`: the divisibility criterion with the
/// quadrinomial embedding `(a, 0, b, m)`.
pub fn check_cor11(a: &BigInt, b: &BigInt, m: u32) -> Result<TheoremVerdict, QuadrinomialError> {
    let q = QuadrinomialInput::new(a.clone(), 0, b.clone(), m)?;
    let (claimed, failed) = divisibility_claims(&q.a, &q.b, &q.c);
    // the embedded constant is the trinomial's b
    let failed = failed.into_iter().map(|s| s.replace("c+1", "b+1")).collect();
    Ok(TheoremVerdict::from_parts(
        TheoremId::TrinomialDivisibility,
        None,
        claimed,
        failed,
    ))
}

/// Shared gate: `d | a+(−1)ᵐ, b, c` and `m·v_p(b) < (m−1)·v_p(c)`.
/// Returns the failed condition names. `b` and `c` must be nonzero.
fn slope_gate(q: &QuadrinomialInput, p: u64, d: u32) -> Vec<String> {
    let mut failed = Vec::new();
    let sign = if q.m.is_multiple_of(2) { "+1" } else { "-1" };
    if !divides(d, &q.a_plus_sign()) {
        failed.push(format!("{d} | a{sign}"));
    }
    if !divides(d, &q.b) {
        failed.push(format!("{d} | b"));
    }
    if !divides(d, &q.c) {
        failed.push(format!("{d} | c"));
    }
    let m = u64::from(q.m);
    if m * vp_finite(&q.b, p) >= (m - 1) * vp_finite(&q.c, p) {
        failed.push(format!("m*v{p}(b) < (m-1)*v{p}(c)"));
    }
    failed
}

/// Slope criterion at 2 (`2 ≤ m ≤ 4`, `b, c ≠ 0`):
/// * `m = 2`, `v₂(a+1−b+c) > 3` ⇒ `v₂ = 4`; `= 3` ⇒ `v₂ = 1`;
/// * `m = 3`, `v₂(b)` odd ⇒ `v₂ = 1`;
/// * `m = 4`, `3 ∤ v₂(b)` ⇒ `v₂ = 2`.
///
/// `m = 2` with `v₂(a+1−b+c) < 3` is reported as not applicable.
pub fn check_th13(q: &QuadrinomialInput) -> Result<TheoremVerdict, QuadrinomialError> {
    q.require_m(2..=4, "2..=4")?;
    q.require_nonzero_bc()?;
    let mut failed = slope_gate(q, 2, 8);
    let vb = vp_finite(&q.b, 2);
    let (case, claim) = match q.m {
        2 => {
            let s = &q.a + 1 - &q.b + &q.c;
            match vp(&s, 2) {
                v if v > Valuation::Finite(3) => ("m2-high", Some(4)),
                Valuation::Finite(3) => ("m2-exact", Some(1)),
                _ => {
                    failed.push("v2(a+1-b+c) >= 3".to_string());
                    ("m2", None)
                }
            }
        }
        3 => {
            if vb % 2 == 1 {
                ("m3", Some(1))
            } else {
                failed.push("v2(b) odd".to_string());
                ("m3", None)
            }
        }
        _ => {
            if !vb.is_multiple_of(3) {
                ("m4", Some(2))
            } else {
                failed.push("3 does not divide v2(b)".to_string());
                ("m4", None)
            }
        }
    };
    let claimed = match claim {
        Some(v) if failed.is_empty() => vec![(2, v)],
        _ => Vec::new(),
    };
    Ok(TheoremVerdict::from_parts(
        TheoremId::TwoAdicSlope,
        Some(case.to_string()),
        claimed,
        failed,
    ))
}

/// Slope criterion at 3 (`2 ≤ m ≤ 4`, `b, c ≠ 0`): `v₃ = 1` when
/// `m = 2`, or `m = 3` with `v₃(b)` odd, or `m = 4` with `3 ∤ v₃(b)`.
pub fn check_th14(q: &QuadrinomialInput) -> Result<TheoremVerdict, QuadrinomialError> {
    q.require_m(2..=4, "2..=4")?;
    q.require_nonzero_bc()?;
    let mut failed = slope_gate(q, 3, 9);
    let vb = vp_finite(&q.b, 3);
    match q.m {
        2 => {}
        3 if vb % 2 == 1 => {}
        3 => failed.push("v3(b) odd".to_string()),
        _ if !vb.is_multiple_of(3) => {}
        _ => failed.push("3 does not divide v3(b)".to_string()),
    }
    let claimed = if failed.is_empty() { vec![(3, 1)] } else { Vec::new() };
    Ok(TheoremVerdict::from_parts(
        TheoremId::ThreeAdicSlope,
        Some(format!("m{}", q.m)),
        claimed,
        failed,
    ))
}

/// For `m ∈ {3, 4}` and each `p ∈ {2, 3}` passing the slope gate with
/// `gcd(v_p(b), 6) = 1`: `v₂ = 1` (m = 3) or `2` (m = 4), and `v₃ = 1`.
pub fn check_cor15(q: &QuadrinomialInput) -> Result<TheoremVerdict, QuadrinomialError> {
    q.require_m(3..=4, "3..=4")?;
    q.require_nonzero_bc()?;
    let mut claimed = Vec::new();
    let mut failed = Vec::new();
    for (p, d) in [(2u64, 8u32), (3, 9)] {
        let mut miss = slope_gate(q, p, d);
        if vp_finite(&q.b, p).gcd(&6) != 1 {
            miss.push(format!("gcd(v{p}(b), 6) = 1"));
        }
        if miss.is_empty() {
            let v = match (p, q.m) {
                (2, 4) => 2,
                _ => 1,
            };
            claimed.push((p, v));
        } else {
            failed.extend(miss);
        }
    }
    Ok(TheoremVerdict::from_parts(
        TheoremId::CoprimeSlope,
        Some(format!("m{}", q.m)),
        claimed,
        failed,
    ))
}

/// Every checker whose preconditions the input meets, in a fixed order.
pub fn all_verdicts(q: &QuadrinomialInput) -> Vec<TheoremVerdict> {
    let mut out = Vec::new();
    if let Ok(v) = check_th12(q) {
        out.push(v);
    }
    if let Ok(v) = check_th13(q) {
        out.push(v);
    }
    if let Ok(v) = check_th14(q) {
        out.push(v);
    }
    if q.b.is_zero() || q.m == 1 {
        // trinomial x⁶ + a'·xᵐ + c
        let (a, m) = if q.m == 1 { (&q.a + &q.b, 1) } else { (q.a.clone(), q.m) };
        if let Ok(v) = check_cor11(&a, &q.c, m) {
            out.push(v);
        }
    }
    if let Ok(v) = check_cor15(q) {
        out.push(v);
    }
    out
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `x² + x + 1`.
pub fn phi1() -> IntPoly {
    IntPoly::from_i64s(&[1, 1, 1])
}

/// `x + 1`.
pub fn phi2() -> IntPoly {
    IntPoly::linear(1)
}

/// `x − 1`.
pub fn phi3() -> IntPoly {
    IntPoly::linear(-1)
}

fn constant_digits(ds: Vec<BigInt>, base: IntPoly) -> PhiExpansion {
    PhiExpansion::from_digits(base, ds.into_iter().map(IntPoly::constant).collect())
}

/// Closed-form `(x+1)`-expansion: digit `i ≥ 1` is
/// `(−1)ⁱ·C(6,i) + a·(−1)^(m−i)·C(m,i)` (plus `b` at `i = 1`), constant
/// digit `a·(−1)ᵐ − b + 1 + c`.
pub fn expansion_31(q: &QuadrinomialInput) -> PhiExpansion {
    let m = i64::from(q.m);
    let mut ds: Vec<BigInt> = (0..=6u32)
        .map(|i| {
            let i64_ = i64::from(i);
            BigInt::from(sign(i64_)) * binomial(6, i) + &q.a * sign(m - i64_) * binomial(q.m, i)
        })
        .collect();
    ds[1] += &q.b;
    ds[0] = &q.a * sign(m) - &q.b + 1 + &q.c;
    constant_digits(ds, phi2())
}

/// Closed-form `(x−1)`-expansion: digit `i ≥ 1` is `C(6,i) + a·C(m,i)`
/// (plus `b` at `i = 1`), constant digit `a + b + c + 1`.
pub fn expansion_32(q: &QuadrinomialInput) -> PhiExpansion {
    let mut ds: Vec<BigInt> = (0..=6u32).map(|i| binomial(6, i) + &q.a * binomial(q.m, i)).collect();
    ds[1] += &q.b;
    ds[0] = &q.a + &q.b + &q.c + 1;
    constant_digits(ds, phi3())
}

/// Constant digits of the three expansions that drive the polygons at 2
/// and 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantDigits {
    /// Constant digit of the `(x²+x+1)`-expansion: `1 + c + b·x + a·(xᵐ mod φ)`.
    pub d_m: IntPoly,
    /// Constant digit of the `(x+1)`-expansion.
    pub d_2: BigInt,
    /// Constant digit of the `(x−1)`-expansion.
    pub d_3: BigInt,
}

/// `d_m` is `(b−a)x + 1+c−a` for `m ≡ 2 (mod 3)`, `bx + 1+c+a` for
/// `m = 3`, and `(b+a)x + 1+c` for `m ≡ 1 (mod 3)`.
pub fn compute_dm(q: &QuadrinomialInput) -> ConstantDigits {
    let one_c = &q.c + 1;
    let d_m = match q.m % 3 {
        0 => IntPoly::new(vec![one_c + &q.a, q.b.clone()]),
        1 => IntPoly::new(vec![one_c, &q.b + &q.a]),
        _ => IntPoly::new(vec![one_c - &q.a, &q.b - &q.a]),
    };
    ConstantDigits {
        d_m,
        d_2: &q.a * sign(i64::from(q.m)) - &q.b + 1 + &q.c,
        d_3: &q.a + &q.b + &q.c + 1,
    }
}
