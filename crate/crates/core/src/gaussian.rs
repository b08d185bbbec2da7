//! Exact arithmetic in the Gaussian integers `Z[i]`.
//!
//! Values carry arbitrary-precision parts. Canonical associates have `re > 0`
//! and `im >= 0`; a split rational prime `p = π·π̄` is reported with `π` the
//! canonical prime of norm `p` whose imaginary part is below its real part.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::primes::{self, is_prime_u64, is_probable_prime, pow_mod};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaussianError {
    #[error("zero has no {0}")]
    Zero(&'static str),
    #[error("{0} is not a rational prime")]
    NotPrime(String),
    #[error("{0} is congruent to 3 mod 4 and is not a sum of two squares")]
    NotSumOfTwoSquares(String),
    #[error("norm has an unfactored composite core {0} above the trial-division limit")]
    UnfactoredCore(String),
    #[error("cannot parse Gaussian integer from {0:?}")]
    Parse(String),
}

/// Serializes as its display string, e.g. `"2-3i"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        GaussianInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `i·self`
    pub fn mul_i(&self) -> Self {
        GaussianInt {
            re: -&self.im,
            im: self.re.clone(),
        }
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &GaussianInt) -> Option<GaussianInt> {
        if divisor.is_zero() {
            return None;
        }
        let n = divisor.norm();
        let num = self * &divisor.conj();
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        (rr.is_zero() && ri.is_zero()).then_some(GaussianInt { re: qr, im: qi })
    }

    pub fn is_canonical(&self) -> bool {
        self.re.is_positive() && !self.im.is_negative()
    }

    /// The associate `u·self` with `re > 0, im >= 0`, together with `u`.
    pub fn canonical_with_unit(&self) -> Result<(GaussianInt, GaussianInt), GaussianError> {
        if self.is_zero() {
            return Err(GaussianError::Zero("canonical associate"));
        }
        let mut unit = GaussianInt::one();
        let mut cur = self.clone();
        while !cur.is_canonical() {
            cur = cur.mul_i();
            unit = unit.mul_i();
        }
        Ok((cur, unit))
    }

    pub fn canonical_associate(&self) -> Result<GaussianInt, GaussianError> {
        self.canonical_with_unit().map(|(c, _)| c)
    }

    /// Residue with both parts reduced into `0..modulus`.
    pub fn reduce_mod(&self, modulus: u64) -> (u64, u64) {
        let m = BigInt::from(modulus);
        let re = self.re.mod_floor(&m).to_u64().unwrap_or(0);
        let im = self.im.mod_floor(&m).to_u64().unwrap_or(0);
        (re, im)
    }

    pub fn pow(&self, exp: u32) -> GaussianInt {
        let mut acc = GaussianInt::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl From<i64> for GaussianInt {
    fn from(n: i64) -> Self {
        GaussianInt::new(n, 0)
    }
}

impl<'a> Add<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: GaussianInt) -> GaussianInt {
        &self + &rhs
    }
}

impl Sub for GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: GaussianInt) -> GaussianInt {
        &self - &rhs
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: GaussianInt) -> GaussianInt {
        &self * &rhs
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |f: &mut fmt::Formatter<'_>, im: &BigInt, lead: bool| -> fmt::Result {
            let mag = im.abs();
            let sign = if im.is_negative() {
                "-"
            } else if lead {
                ""
            } else {
                "+"
            };
            if mag.is_one() {
                write!(f, "{sign}i")
            } else {
                write!(f, "{sign}{mag}i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => im_part(f, &self.im, true),
            (false, false) => {
                write!(f, "{}", self.re)?;
                im_part(f, &self.im, false)
            }
        }
    }
}

impl From<GaussianInt> for String {
    fn from(z: GaussianInt) -> String {
        z.to_string()
    }
}

impl TryFrom<String> for GaussianInt {
    type Error = GaussianError;

    fn try_from(s: String) -> Result<Self, GaussianError> {
        s.parse()
    }
}

impl FromStr for GaussianInt {
    type Err = GaussianError;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi`, with `i` alone meaning `1i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || GaussianError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let parse_imag = |body: &str| -> Result<BigInt, GaussianError> {
            match body {
                "" | "+" => Ok(BigInt::one()),
                "-" => Ok(-BigInt::one()),
                other => other.parse::<BigInt>().map_err(|_| err()),
            }
        };
        if let Some(body) = t.strip_suffix('i') {
            // split at the last sign that is not leading
            let split = body
                .char_indices()
                .skip(1)
                .filter(|&(_, c)| c == '+' || c == '-')
                .map(|(i, _)| i)
                .last();
            match split {
                Some(idx) => {
                    let re = body[..idx].parse::<BigInt>().map_err(|_| err())?;
                    let im = parse_imag(&body[idx..])?;
                    Ok(GaussianInt { re, im })
                }
                None => Ok(GaussianInt {
                    re: BigInt::zero(),
                    im: parse_imag(body)?,
                }),
            }
        } else {
            let re = t.parse::<BigInt>().map_err(|_| err())?;
            Ok(GaussianInt {
                re,
                im: BigInt::zero(),
            })
        }
    }
}

/// How a rational prime decomposes in `Z[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplittingType {
    Inert,
    Ramified {
        pi: GaussianInt,
    },
    Split {
        pi: GaussianInt,
        pi_bar: GaussianInt,
    },
}

/// Splitting type without the prime elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeKind {
    Inert,
    Ramified,
    Split,
}

impl SplittingType {
    pub fn kind(&self) -> PrimeKind {
        match self {
            SplittingType::Inert => PrimeKind::Inert,
            SplittingType::Ramified { .. } => PrimeKind::Ramified,
            SplittingType::Split { .. } => PrimeKind::Split,
        }
    }
}

impl PrimeKind {
    /// From `p mod 4`, for a rational prime `p`.
    pub fn of_prime(p: u64) -> PrimeKind {
        match p % 4 {
            1 => PrimeKind::Split,
            3 => PrimeKind::Inert,
            _ => PrimeKind::Ramified,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            PrimeKind::Inert => "inert",
            PrimeKind::Ramified => "ramified",
            PrimeKind::Split => "split",
        }
    }
}

pub fn classify_prime(p: u64) -> Result<SplittingType, GaussianError> {
    if !is_prime_u64(p) {
        return Err(GaussianError::NotPrime(p.to_string()));
    }
    if p == 2 {
        return Ok(SplittingType::Ramified {
            pi: GaussianInt::new(1, 1),
        });
    }
    if p % 4 == 3 {
        return Ok(SplittingType::Inert);
    }
    let (a, b) = two_squares(p)?;
    Ok(SplittingType::Split {
        pi: GaussianInt::new(a, b),
        pi_bar: GaussianInt::new(b, a),
    })
}

/// `(a, b)` with `a² + b² = p` and `a >= b >= 0`, via Cornacchia.
pub fn two_squares(p: u64) -> Result<(u64, u64), GaussianError> {
    if !is_prime_u64(p) {
        return Err(GaussianError::NotPrime(p.to_string()));
    }
    if p == 2 {
        return Ok((1, 1));
    }
    if p % 4 != 1 {
        return Err(GaussianError::NotSumOfTwoSquares(p.to_string()));
    }
    // square root of -1 from a quadratic non-residue
    let mut c = 2;
    while pow_mod(c, (p - 1) / 2, p) != p - 1 {
        c += 1;
    }
    let root = pow_mod(c, (p - 1) / 4, p);
    let (mut a, mut b) = (p, root.min(p - root));
    while (b as u128) * (b as u128) > p as u128 {
        let r = a % b;
        a = b;
        b = r;
    }
    let rest = p - b * b;
    let other = primes::isqrt(rest);
    debug_assert_eq!(other * other, rest);
    Ok((other.max(b), other.min(b)))
}

fn two_squares_big(p: &BigInt) -> Result<(BigInt, BigInt), GaussianError> {
    if let Some(small) = p.to_u64() {
        let (a, b) = two_squares(small)?;
        return Ok((a.into(), b.into()));
    }
    let four = BigInt::from(4);
    if p.mod_floor(&four) != BigInt::one() {
        return Err(GaussianError::NotSumOfTwoSquares(p.to_string()));
    }
    let one = BigInt::one();
    let p_minus_1 = p - &one;
    let half = &p_minus_1 >> 1;
    let mut c = BigInt::from(2);
    while c.modpow(&half, p) != p_minus_1 {
        c += 1;
    }
    let root = c.modpow(&(&p_minus_1 >> 2), p);
    let (mut a, mut b) = (p.clone(), root);
    while &b * &b > *p {
        let r = &a % &b;
        a = b;
        b = r;
    }
    let rest = p - &b * &b;
    let other = rest.sqrt();
    if &other * &other != rest {
        return Err(GaussianError::NotPrime(p.to_string()));
    }
    Ok(if other >= b { (other, b) } else { (b, other) })
}

/// `unit · ∏ prime^exponent` with canonical primes sorted by `(norm, re, im)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: GaussianInt,
    pub primes: Vec<(GaussianInt, u32)>,
}

impl Factorization {
    pub fn product(&self) -> GaussianInt {
        self.primes
            .iter()
            .fold(self.unit.clone(), |acc, (p, e)| &acc * &p.pow(*e))
    }
}

/// Rational prime factorization of a positive norm: trial division up to
/// [`primes::TRIAL_LIMIT`], then a primality check on what remains.
fn factor_norm(n: &BigInt) -> Result<Vec<(BigInt, u32)>, GaussianError> {
    let mut out = Vec::new();
    let mut rest = n.clone();
    for &p in primes::trial_primes() {
        if let Some(small) = rest.to_u64() {
            // u64 fast path for the remainder of the scan
            let mut r = small;
            for &q in primes::trial_primes().iter().skip_while(|&&q| q < p) {
                if q.saturating_mul(q) > r {
                    break;
                }
                if r % q == 0 {
                    let mut e = 0;
                    while r % q == 0 {
                        r /= q;
                        e += 1;
                    }
                    out.push((BigInt::from(q), e));
                }
            }
            rest = BigInt::from(r);
            break;
        }
        let pb = BigInt::from(p);
        if (&pb * &pb) > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    if rest > BigInt::one() {
        if !is_probable_prime(&rest) {
            return Err(GaussianError::UnfactoredCore(rest.to_string()));
        }
        out.push((rest, 1));
    }
    Ok(out)
}

pub fn factor(alpha: &GaussianInt) -> Result<Factorization, GaussianError> {
    if alpha.is_zero() {
        return Err(GaussianError::Zero("factorization"));
    }
    let mut rest = alpha.clone();
    let mut found: Vec<(GaussianInt, u32)> = Vec::new();
    let four = BigInt::from(4);
    for (p, e) in factor_norm(&alpha.norm())? {
        if p == BigInt::from(2) {
            let pi = GaussianInt::new(1, 1);
            for _ in 0..e {
                rest = rest.div_exact(&pi).expect("norm bookkeeping");
            }
            found.push((pi, e));
        } else if p.mod_floor(&four) == BigInt::from(3) {
            let q = GaussianInt::new(p.clone(), 0);
            for _ in 0..e / 2 {
                rest = rest.div_exact(&q).expect("norm bookkeeping");
            }
            found.push((q, e / 2));
        } else {
            let (a, b) = two_squares_big(&p)?;
            for pi in [
                GaussianInt::new(a.clone(), b.clone()),
                GaussianInt::new(b, a),
            ] {
                let mut count = 0;
                while let Some(q) = rest.div_exact(&pi) {
                    rest = q;
                    count += 1;
                }
                if count > 0 {
                    found.push((pi, count));
                }
            }
        }
    }
    debug_assert!(rest.is_unit());
    // stable: the two conjugate primes over a split p keep the order (a+bi, b+ai)
    found.sort_by_key(|(x, _)| x.norm());
    Ok(Factorization {
        unit: rest,
        primes: found,
    })
}
