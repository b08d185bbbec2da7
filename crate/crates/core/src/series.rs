//! Truncated Dirichlet series `Σ_{n≤M} a(n) n^{-s}`.
//!
//! The bound `M` is explicit on every series and no operation extends it.
//! Coefficients live in any [`Scalar`] ring: exact [`Cyclo`] values for the
//! identity checks, `Complex64` for numerics.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::{value_to_scalar, CharacterZi, RationalCharacter};
use crate::cyclotomic::{Cyclo, ExactCyclo};
use crate::par;
use crate::primes::{isqrt, primes_up_to, smallest_prime_factors};
use crate::ring::{Poly, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("bound mismatch: {0} vs {1}")]
    BoundMismatch(usize, usize),
    #[error("series with a(1) != 1 cannot be inverted")]
    NotInvertible,
    #[error("Euler factor at p = {0} does not have constant term 1")]
    BadEulerFactor(u64),
    #[error("character is not invariant under the units of Z[i]; the quarter lattice sum is not defined on ideals")]
    NotUnitInvariant,
    #[error("Re(s) = {re} is below the declared abscissa {sigma0}")]
    OutsideRegion { re: f64, sigma0: f64 },
    #[error("declared abscissa {0} must exceed 1")]
    BadAbscissa(f64),
    #[error("bound must be positive")]
    ZeroBound,
}

/// Coefficients `a(1..=M)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncatedSeries<S> {
    pub fn from_coeffs(coeffs: Vec<S>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::ZeroBound);
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn from_fn(bound: usize, f: impl Fn(usize) -> S + Sync + Send) -> Self {
        assert!(bound > 0, "bound must be positive");
        TruncatedSeries {
            coeffs: par::map_range(1..bound + 1, f),
        }
    }

    /// `(1, 0, 0, …)`
    pub fn identity(bound: usize) -> Self {
        Self::from_fn(bound, |n| if n == 1 { S::one() } else { S::zero() })
    }

    /// Riemann zeta: all ones.
    pub fn zeta(bound: usize) -> Self {
        Self::from_fn(bound, |_| S::one())
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len()
    }

    /// `a(n)`, 1-based.
    pub fn coeff(&self, n: usize) -> &S {
        &self.coeffs[n - 1]
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Sync + Send) -> TruncatedSeries<T> {
        TruncatedSeries {
            coeffs: par::map_slice(&self.coeffs, f),
        }
    }

    pub fn to_complex(&self) -> TruncatedSeries<Complex64> {
        self.map(|a| a.to_complex())
    }

    /// Pointwise product `a(n)·b(n)`.
    pub fn pointwise(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_bound(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.times(b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_bound(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.plus(b))
                .collect(),
        })
    }

    fn check_bound(&self, other: &Self) -> Result<(), SeriesError> {
        if self.bound() != other.bound() {
            return Err(SeriesError::BoundMismatch(self.bound(), other.bound()));
        }
        Ok(())
    }

    /// Dirichlet convolution `c(n) = Σ_{d|n} a(d) b(n/d)`.
    ///
    /// Output blocks are computed independently; within a block every `c(n)`
    /// accumulates over `d` ascending, so the result is independent of the
    /// thread count.
    pub fn convolve(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_bound(other)?;
        let m = self.bound();
        let chunks = par::map_slice(&par::blocks(m), |&(lo, hi)| {
            let mut out = vec![S::zero(); hi - lo];
            for d in 1..hi {
                let a = &self.coeffs[d - 1];
                if a.is_zero() {
                    continue;
                }
                let first = lo.div_ceil(d).max(1);
                let last = (hi - 1) / d;
                for q in first..=last {
                    let b = &other.coeffs[q - 1];
                    if !b.is_zero() {
                        let slot = &mut out[d * q - lo];
                        *slot = slot.plus(&a.times(b));
                    }
                }
            }
            out
        });
        Ok(TruncatedSeries {
            coeffs: chunks.into_iter().flatten().collect(),
        })
    }

    /// Dirichlet inverse; requires `a(1) = 1`.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != S::one() {
            return Err(SeriesError::NotInvertible);
        }
        let m = self.bound();
        let mut acc = vec![S::zero(); m];
        let mut out = Vec::with_capacity(m);
        for n in 1..=m {
            let b = if n == 1 {
                S::one()
            } else {
                acc[n - 1].negated()
            };
            if !b.is_zero() {
                for d in 2..=m / n {
                    let a = &self.coeffs[d - 1];
                    if !a.is_zero() {
                        acc[n * d - 1] = acc[n * d - 1].plus(&a.times(&b));
                    }
                }
            }
            out.push(b);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// 1-based index of the first coefficient where the two series differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        if self.bound() != other.bound() {
            return Some(self.bound().min(other.bound()) + 1);
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
            .map(|i| i + 1)
    }

    /// First coprime pair `(m, n)` with `mn ≤ M` and `a(mn) ≠ a(m)a(n)`.
    pub fn multiplicativity_failure(&self) -> Option<(usize, usize)> {
        let m = self.bound();
        let fails = par::map_range(2..m + 1, |a| {
            for b in 2..=m / a {
                if b >= a && num_integer::gcd(a, b) == 1 {
                    let lhs = &self.coeffs[a * b - 1];
                    let rhs = self.coeffs[a - 1].times(&self.coeffs[b - 1]);
                    if *lhs != rhs {
                        return Some((a, b));
                    }
                }
            }
            None
        });
        fails.into_iter().flatten().next()
    }

    /// Partial sum at `s` with a tail bound, given `|a(n)| ≤ c_hint·d(n)` and
    /// a declared abscissa `sigma0 > 1` with `Re(s) ≥ sigma0`.
    pub fn evaluate(
        &self,
        s: Complex64,
        sigma0: f64,
        c_hint: f64,
    ) -> Result<Evaluation, SeriesError> {
        if sigma0.is_nan() || sigma0 <= 1.0 {
            return Err(SeriesError::BadAbscissa(sigma0));
        }
        if s.re.is_nan() || s.re < sigma0 {
            return Err(SeriesError::OutsideRegion { re: s.re, sigma0 });
        }
        let m = self.bound();
        let partials = par::map_slice(&par::blocks(m), |&(lo, hi)| {
            let mut sum = Complex64::new(0.0, 0.0);
            let mut abs = 0.0;
            for n in lo..hi {
                let a = &self.coeffs[n - 1];
                if a.is_zero() {
                    continue;
                }
                let term = a.to_complex() * n_pow_minus_s(n, s);
                abs += term.norm();
                sum += term;
            }
            (sum, abs)
        });
        let (value, abs_sum) = partials
            .into_iter()
            .fold((Complex64::new(0.0, 0.0), 0.0), |(v, a), (pv, pa)| {
                (v + pv, a + pa)
            });
        Ok(Evaluation {
            s,
            value,
            tail_bound: c_hint * divisor_tail_bound(m, s.re),
            rounding_bound: m as f64 * f64::EPSILON * abs_sum,
            bound: m,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,re,im\n");
        for (i, a) in self.coeffs.iter().enumerate() {
            let z = a.to_complex();
            let _ = writeln!(out, "{},{:e},{:e}", i + 1, z.re, z.im);
        }
        out
    }
}

impl TruncatedSeries<Cyclo> {
    pub fn to_exact(&self) -> ExactSeries {
        ExactSeries {
            bound: self.bound(),
            coefficients: self.coeffs.iter().map(Cyclo::to_exact).collect(),
        }
    }
}

/// JSON form of an exact series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactSeries {
    pub bound: usize,
    pub coefficients: Vec<ExactCyclo>,
}

/// Numeric value of a truncated series with its error budget.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    #[serde(with = "crate::ring::complex_json")]
    pub s: Complex64,
    #[serde(with = "crate::ring::complex_json")]
    pub value: Complex64,
    /// Bound on `|Σ_{n>M} a(n) n^{-s}|`.
    pub tail_bound: f64,
    /// Bound on floating-point error in the partial sum.
    pub rounding_bound: f64,
    pub bound: usize,
}

impl Evaluation {
    pub fn error_bound(&self) -> f64 {
        self.tail_bound + self.rounding_bound
    }
}

pub(crate) fn n_pow_minus_s(n: usize, s: Complex64) -> Complex64 {
    let ln = (n as f64).ln();
    Complex64::from_polar((-s.re * ln).exp(), -s.im * ln)
}

/// `σ ∫_M^∞ (log x + 1) x^{-σ} dx`, which bounds `Σ_{n>M} d(n) n^{-σ}` by
/// partial summation with `Σ_{n≤x} d(n) ≤ x(log x + 1)`.
pub fn divisor_tail_bound(m: usize, sigma: f64) -> f64 {
    let m = m as f64;
    let k = sigma - 1.0;
    sigma * m.powf(-k) * ((m.ln() + 1.0) / k + 1.0 / (k * k))
}

/// Euler factors `p ↦ f_p(x)` with `x` standing for `p^{-s}`; unlisted primes
/// have factor 1.
#[derive(Clone, Debug, Default)]
pub struct LocalFactorMap<S> {
    factors: BTreeMap<u64, Poly<S>>,
}

impl<S: Scalar> LocalFactorMap<S> {
    pub fn new() -> Self {
        LocalFactorMap {
            factors: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, p: u64, factor: Poly<S>) {
        self.factors.insert(p, factor);
    }

    /// Multiply the factor at `p` by `factor`.
    pub fn multiply(&mut self, p: u64, factor: &Poly<S>) {
        let cur = self.factors.remove(&p).unwrap_or_else(Poly::one);
        self.factors.insert(p, cur.mul(factor));
    }

    pub fn get(&self, p: u64) -> Option<&Poly<S>> {
        self.factors.get(&p)
    }

    pub fn get_mut(&mut self, p: u64) -> Option<&mut Poly<S>> {
        self.factors.get_mut(&p)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }
}

/// Expand `∏_p f_p(p^{-s})^{-1}` up to `n ≤ bound`.
///
/// Each `a(n)` is the product of the local inverse-series coefficients over
/// the prime powers exactly dividing `n`, so the output is multiplicative by
/// construction.
pub fn from_euler<S: Scalar>(
    factors: &LocalFactorMap<S>,
    bound: usize,
) -> Result<TruncatedSeries<S>, SeriesError> {
    if bound == 0 {
        return Err(SeriesError::ZeroBound);
    }
    let spf = smallest_prime_factors(bound);
    let primes = primes_up_to(bound as u64);
    let locals = par::map_slice(&primes, |&p| {
        let mut e_max = 0usize;
        let mut pe = 1usize;
        while pe <= bound / p as usize {
            pe *= p as usize;
            e_max += 1;
        }
        match factors.get(p) {
            Some(f) => f
                .inverse_series(e_max)
                .ok_or(SeriesError::BadEulerFactor(p)),
            None => {
                let mut v = vec![S::zero(); e_max + 1];
                v[0] = S::one();
                Ok(v)
            }
        }
    });
    let mut local_of = vec![None; bound + 1];
    for (&p, l) in primes.iter().zip(locals) {
        local_of[p as usize] = Some(l?);
    }
    let coeffs = par::map_range(1..bound + 1, |n| {
        let mut rest = n;
        let mut acc = S::one();
        while rest > 1 {
            let p = spf[rest] as usize;
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            let b = &local_of[p].as_ref().expect("prime table")[e];
            if b.is_zero() {
                return S::zero();
            }
            acc = acc.times(b);
        }
        acc
    });
    Ok(TruncatedSeries { coeffs })
}

/// `a(n) = ψ(n)`
pub fn l_series<S: Scalar>(psi: &RationalCharacter, bound: usize) -> TruncatedSeries<S> {
    TruncatedSeries::from_fn(bound, |n| value_to_scalar(&psi.eval_u64(n as u64)))
}

/// `a(n) = ¼ Σ_{N(λ)=n} ω(λ)`, by scanning lattice points with `re² + im² ≤ M`.
pub fn dedekind_lattice<S: Scalar>(
    omega: &CharacterZi,
    bound: usize,
) -> Result<TruncatedSeries<S>, SeriesError> {
    if bound == 0 {
        return Err(SeriesError::ZeroBound);
    }
    if !omega.is_trivial_on_units() {
        return Err(SeriesError::NotUnitInvariant);
    }
    let r = isqrt(bound as u64) as i64;
    let rows: Vec<i64> = (-r..=r).collect();
    let modulus = omega.modulus() as i64;
    let hits = par::map_slice(&rows, |&re| {
        let rem = bound as i64 - re * re;
        let h = isqrt(rem as u64) as i64;
        let mut out = Vec::new();
        for im in -h..=h {
            if re == 0 && im == 0 {
                continue;
            }
            let residue = (re.rem_euclid(modulus) as u64, im.rem_euclid(modulus) as u64);
            if let Some(e) = omega.exponent_at(residue) {
                out.push(((re * re + im * im) as usize, e));
            }
        }
        out
    });
    let mut counts: Vec<Vec<(u32, i64)>> = vec![Vec::new(); bound + 1];
    for (n, e) in hits.into_iter().flatten() {
        match counts[n].iter_mut().find(|(x, _)| *x == e) {
            Some((_, c)) => *c += 1,
            None => counts[n].push((e, 1)),
        }
    }
    let order = omega.order_root();
    let quarter = S::from_rational(&BigRational::new(1.into(), 4.into()));
    let coeffs = par::map_range(1..bound + 1, |n| {
        let mut entries = counts[n].clone();
        entries.sort_unstable();
        let sum = entries.iter().fold(S::zero(), |acc, &(e, c)| {
            acc.plus(&S::root_of_unity(order, e as i64).times(&S::from_int(c)))
        });
        sum.times(&quarter)
    });
    Ok(TruncatedSeries { coeffs })
}
