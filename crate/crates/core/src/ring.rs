//! Coefficient rings shared by series, local factors and identity checks:
//! complex floats, exact cyclotomic numbers, univariate polynomials in the
//! Euler variable, and multivariate polynomials over eigenvalue symbols.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::Cyclo;

/// Commutative ring operations, by reference.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_rational(q: &BigRational) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    fn from_bigint(n: &BigInt) -> Self {
        Self::from_rational(&BigRational::from_integer(n.clone()))
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            exp >>= 1;
        }
        acc
    }
}

/// A ring that holds character values and embeds into `C`.
pub trait Scalar: Ring {
    fn root_of_unity(order: u32, exponent: i64) -> Self;
    fn to_complex(&self) -> Complex64;
}

/// `p^e` for a possibly negative exponent, as an exact rational.
pub fn rational_power(p: u64, e: i64) -> BigRational {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::from(1), base)
    }
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(q: &BigRational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

impl Scalar for Complex64 {
    fn root_of_unity(order: u32, exponent: i64) -> Self {
        let e = exponent.rem_euclid(order as i64);
        // quarter turns exactly, so real characters stay real
        if (4 * e) % order as i64 == 0 {
            return match 4 * e / order as i64 {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
        }
        Complex64::from_polar(1.0, std::f64::consts::TAU * e as f64 / order as f64)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

impl Ring for Cyclo {
    fn zero() -> Self {
        Cyclo::zero()
    }
    fn one() -> Self {
        Cyclo::one()
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn from_rational(q: &BigRational) -> Self {
        Cyclo::from_rational(q.clone())
    }
}

impl Scalar for Cyclo {
    fn root_of_unity(order: u32, exponent: i64) -> Self {
        Cyclo::root_of_unity(order, exponent)
    }
    fn to_complex(&self) -> Complex64 {
        Cyclo::to_complex(self)
    }
}

/// Univariate polynomial, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    /// `1 + c·t^degree`
    pub fn one_plus_term(c: R, degree: usize) -> Self {
        let mut coeffs = vec![R::zero(); degree + 1];
        coeffs[0] = R::one();
        coeffs[degree] = coeffs[degree].plus(&c);
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> R {
        self.coeffs.get(j).cloned().unwrap_or_else(R::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|j| self.coeff(j).plus(&other.coeff(j)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(R::negated).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// `t ↦ c·t`
    pub fn substitute_scaled(&self, c: &R) -> Self {
        let mut power = R::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.times(&power));
            power = power.times(c);
        }
        Poly::new(out)
    }

    /// `t ↦ t^k`
    pub fn substitute_power(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); (self.coeffs.len() - 1) * k + 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            out[j * k] = a.clone();
        }
        Poly::new(out)
    }

    pub fn eval(&self, t: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, a| acc.times(t).plus(a))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Coefficients `b_0..=b_n` of `1/self` as a power series; the constant term must be one.
    pub fn inverse_series(&self, n: usize) -> Option<Vec<R>> {
        if self.coeff(0) != R::one() {
            return None;
        }
        let mut b: Vec<R> = Vec::with_capacity(n + 1);
        b.push(R::one());
        for k in 1..=n {
            let mut acc = R::zero();
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc = acc.plus(&a.times(&b[k - j]));
                }
            }
            b.push(acc.negated());
        }
        Some(b)
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn from_rational(q: &BigRational) -> Self {
        Poly::constant(R::from_rational(q))
    }
}

/// A monomial: variable name ↦ positive exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<String, u32>);

impl Monomial {
    pub fn var(name: &str, exp: u32) -> Monomial {
        let mut m = BTreeMap::new();
        if exp > 0 {
            m.insert(name.to_string(), exp);
        }
        Monomial(m)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (v, e) in &other.0 {
            *out.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(out)
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(v, e)| (v.as_str(), *e))
    }

    /// Rename variables; merged exponents add.
    pub fn rename(&self, f: &impl Fn(&str) -> String) -> Monomial {
        let mut out = BTreeMap::new();
        for (v, e) in &self.0 {
            *out.entry(f(v)).or_insert(0) += e;
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| {
                if *e == 1 {
                    v.clone()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Multivariate polynomial with exact cyclotomic coefficients.
#[derive(Clone, Default, PartialEq)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Cyclo>,
}

impl MultiPoly {
    pub fn var(name: &str) -> MultiPoly {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(name, 1), Cyclo::one());
        MultiPoly { terms }
    }

    pub fn constant(c: Cyclo) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::default(), c);
        }
        MultiPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cyclo)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(terms: &mut BTreeMap<Monomial, Cyclo>, m: Monomial, c: Cyclo) {
        match terms.remove(&m) {
            Some(old) => {
                let sum = old.add(&c);
                if !sum.is_zero() {
                    terms.insert(m, sum);
                }
            }
            None => {
                if !c.is_zero() {
                    terms.insert(m, c);
                }
            }
        }
    }

    pub fn degree_in(&self, var: &str) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    /// Coefficient of `var^exp`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, var: &str, exp: u32) -> MultiPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.exponent(var) == exp {
                let mut rest = m.0.clone();
                rest.remove(var);
                terms.insert(Monomial(rest), c.clone());
            }
        }
        MultiPoly { terms }
    }

    pub fn rename(&self, f: impl Fn(&str) -> String) -> MultiPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            Self::insert_add(&mut terms, m.rename(&f), c.clone());
        }
        MultiPoly { terms }
    }

    /// Numeric value with every variable assigned; `None` if one is missing.
    pub fn eval(&self, values: &HashMap<String, Complex64>) -> Option<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = c.to_complex();
            for (v, e) in m.vars() {
                term *= values.get(v)?.powu(e);
            }
            acc += term;
        }
        Some(acc)
    }

    /// Lowest-ordered term, used as a witness.
    pub fn leading_witness(&self) -> Option<String> {
        self.terms.iter().next().map(|(m, c)| format!("({c})*{m}"))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})*{m}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }
    fn one() -> Self {
        MultiPoly::constant(Cyclo::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_add(&mut terms, m.clone(), c.clone());
        }
        MultiPoly { terms }
    }
    fn times(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                Self::insert_add(&mut terms, ma.mul(mb), ca.mul(cb));
            }
        }
        MultiPoly { terms }
    }
    fn negated(&self) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }
    fn from_rational(q: &BigRational) -> Self {
        if q.is_zero() {
            return MultiPoly::default();
        }
        MultiPoly::constant(Cyclo::from_rational(q.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly<Cyclo> {
        Poly::new(v.iter().map(|&c| Cyclo::from_integer(c)).collect())
    }

    #[test]
    fn poly_basics() {
        let a = p(&[1, -1]);
        let b = p(&[1, 1]);
        assert_eq!(a.mul(&b), p(&[1, 0, -1]));
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(Poly::<Cyclo>::zero().degree(), None);
        assert_eq!(a.substitute_power(2), p(&[1, 0, -1]));
        assert_eq!(
            p(&[1, 1, 1]).substitute_scaled(&Cyclo::from_integer(2)),
            p(&[1, 2, 4])
        );
        assert_eq!(
            p(&[3, 0, 1]).eval(&Cyclo::from_integer(2)),
            Cyclo::from_integer(7)
        );
    }

    #[test]
    fn inverse_series_geometric() {
        let inv = p(&[1, -1]).inverse_series(5).unwrap();
        assert!(inv.iter().all(|c| c.is_one()));
        let inv2 = p(&[1, -1]).pow(2).inverse_series(4).unwrap();
        let expect: Vec<Cyclo> = (1..=5).map(Cyclo::from_integer).collect();
        assert_eq!(inv2, expect);
        assert!(p(&[2, 1]).inverse_series(3).is_none());
    }

    #[test]
    fn multipoly_arith() {
        let x = MultiPoly::var("x");
        let y = MultiPoly::var("y");
        let s = x.plus(&y);
        let sq = s.times(&s);
        assert_eq!(sq.len(), 3);
        let diff = sq.minus(&x.times(&x)).minus(&y.times(&y));
        assert_eq!(diff, x.times(&y).times(&MultiPoly::from_int(2)));
        assert!(s.minus(&s).is_zero());
        let mut vals = HashMap::new();
        vals.insert("x".to_string(), Complex64::new(2.0, 0.0));
        vals.insert("y".to_string(), Complex64::new(0.0, 1.0));
        let v = sq.eval(&vals).unwrap();
        assert!((v - Complex64::new(3.0, 4.0)).norm() < 1e-12);
        assert_eq!(sq.degree_in("x"), Some(2));
        assert_eq!(sq.coeff_of("x", 1), y.times(&MultiPoly::from_int(2)));
    }

    #[test]
    fn rename_merges() {
        let x = MultiPoly::var("a").times(&MultiPoly::var("b"));
        let r = x.rename(|v| if v == "b" { "a".into() } else { v.into() });
        assert_eq!(r, MultiPoly::var("a").pow(2));
    }
}

/// Serde adapter writing complex numbers as `{"re": .., "im": ..}`.
pub mod complex_json {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct ReIm {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        ReIm { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let ReIm { re, im } = ReIm::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}
