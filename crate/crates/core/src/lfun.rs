//! Numeric assembly of the twisted degree-6 L-function: the truncated Euler
//! product, the completion prefactors, complex Gamma and the reflection
//! `s ↦ 2k - 3 - s`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::ops::Neg;

use num_complex::{Complex, Complex64};
use num_traits::{FromPrimitive, Num};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::{value_to_scalar, CharacterError, CharacterZi, RationalCharacter};
use crate::gaussian::PrimeKind;
use crate::hecke::{full_local_factor, EigenRecord, EigenvalueTable, Eigenvalues, HeckeError};
use crate::par;
use crate::primes::primes_up_to;
use crate::series::{
    dedekind_lattice, l_series, n_pow_minus_s, Evaluation, SeriesError, TruncatedSeries,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LfunError {
    #[error("Gamma has a pole at s = {0}")]
    GammaPole(f64),
    #[error("{what}: Re = {re} is outside the declared region Re > {bound}")]
    OutsideRegion {
        what: &'static str,
        re: f64,
        bound: f64,
    },
    #[error("eigenvalues at p = {0} are symbolic; numeric values are required")]
    Symbolic(u64),
    #[error("no eigenvalues for p = {0} (prime cutoff covers it)")]
    MissingPrime(u64),
    #[error("local factor at p = {0} vanishes: the truncated product has a pole")]
    TruncatedPole(u64),
    #[error("weight must be non-negative, got {0}")]
    BadWeight(i64),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Character(#[from] CharacterError),
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Complex Gamma via the Lanczos approximation (g = 7, nine terms), with
/// the reflection formula for `Re(s) < 1/2`.
pub fn gamma(s: Complex64) -> Result<Complex64, LfunError> {
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        return Err(LfunError::GammaPole(s.re));
    }
    Ok(gamma_unchecked(s))
}

fn gamma_unchecked(s: Complex64) -> Complex64 {
    if s.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        return pi / ((pi * s).sin() * gamma_unchecked(1.0 - s));
    }
    let z = s - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * ((z + 0.5) * t.ln() - t).exp() * x
}

/// `s ↦ 2k - 3 - s`, the symmetry of the completed function. Generic so it
/// can be checked exactly over the rationals.
pub fn reflect<T>(s: &Complex<T>, k: i64) -> Complex<T>
where
    T: Clone + Num + Neg<Output = T> + FromPrimitive,
{
    let centre = T::from_i64(2 * k - 3).expect("representable");
    Complex::new(centre - s.re.clone(), -s.im.clone())
}

/// Truncation parameters: coefficient bound `M` and prime cutoff `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub bound: usize,
    pub prime_cutoff: u64,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            bound: 100_000,
            prime_cutoff: 10_000,
        }
    }
}

/// Weight, character and numeric eigenvalues for every prime up to `P`.
#[derive(Clone, Debug)]
pub struct LFunctionSpec {
    weight: i64,
    character: CharacterZi,
    eigenvalues: BTreeMap<u64, Eigenvalues<Complex64>>,
    prime_cutoff: u64,
}

impl LFunctionSpec {
    pub fn new(
        weight: i64,
        character: CharacterZi,
        table: &EigenvalueTable,
        prime_cutoff: u64,
    ) -> Result<Self, LfunError> {
        if weight < 0 {
            return Err(LfunError::BadWeight(weight));
        }
        let mut eigenvalues = BTreeMap::new();
        for p in primes_up_to(prime_cutoff) {
            match table.get(&p) {
                None => return Err(LfunError::MissingPrime(p)),
                Some(EigenRecord::Symbolic(_)) => return Err(LfunError::Symbolic(p)),
                Some(EigenRecord::Numeric(e)) => {
                    eigenvalues.insert(p, e.clone());
                }
            }
        }
        Ok(LFunctionSpec {
            weight,
            character,
            eigenvalues,
            prime_cutoff,
        })
    }

    /// Every eigenvalue zero, so every `Q_p = 1`.
    pub fn zero_eigenvalues(weight: i64, character: CharacterZi, prime_cutoff: u64) -> Self {
        let eigenvalues = primes_up_to(prime_cutoff)
            .into_iter()
            .map(|p| (p, Eigenvalues::zeros(PrimeKind::of_prime(p))))
            .collect();
        LFunctionSpec {
            weight,
            character,
            eigenvalues,
            prime_cutoff,
        }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn modulus(&self) -> u64 {
        self.character.modulus()
    }

    pub fn character(&self) -> &CharacterZi {
        &self.character
    }

    pub fn prime_cutoff(&self) -> u64 {
        self.prime_cutoff
    }

    /// Real part above which the truncated product is evaluated.
    pub fn declared_abscissa(&self) -> f64 {
        self.weight as f64 + 1.0
    }

    /// The only possible poles of the completed function, `k, k-1, k-2, k-3`,
    /// recorded when the character is principal.
    pub fn possible_poles(&self) -> Option<[i64; 4]> {
        let k = self.weight;
        self.character
            .is_principal()
            .then_some([k, k - 1, k - 2, k - 3])
    }
}

/// Heuristic convergence note for a truncated Euler product.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductReport {
    pub prime_cutoff: u64,
    /// `|f_p(p^{-s})^{-1} - 1|` at the largest prime used.
    pub last_factor_deviation: f64,
    /// Always true: no rigorous bound is available for the omitted primes.
    pub heuristic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZValue {
    #[serde(with = "crate::ring::complex_json")]
    pub value: Complex64,
    pub report: ProductReport,
}

const PRIME_CHUNK: usize = 256;

/// The truncated Euler product over primes `p ≤ P`.
pub fn z_value(spec: &LFunctionSpec, s: Complex64) -> Result<ZValue, LfunError> {
    let bound = spec.declared_abscissa();
    if s.re.is_nan() || s.re <= bound {
        return Err(LfunError::OutsideRegion {
            what: "truncated Euler product",
            re: s.re,
            bound,
        });
    }
    let primes: Vec<u64> = spec.eigenvalues.keys().copied().collect();
    let chunks: Vec<&[u64]> = primes.chunks(PRIME_CHUNK).collect();
    let partials = par::map_slice(&chunks, |chunk| -> Result<(Complex64, f64), LfunError> {
        let mut acc = Complex64::new(1.0, 0.0);
        let mut last = 0.0;
        for &p in chunk.iter() {
            let c: Complex64 = value_to_scalar(&spec.character.eval_int(p as i64));
            let f = full_local_factor(p, &spec.eigenvalues[&p], &c, spec.weight)?;
            let v = f.eval(&n_pow_minus_s(p as usize, s));
            if v.norm() == 0.0 {
                return Err(LfunError::TruncatedPole(p));
            }
            let inv = v.inv();
            last = (inv - 1.0).norm();
            acc *= inv;
        }
        Ok((acc, last))
    });
    let mut value = Complex64::new(1.0, 0.0);
    let mut last = 0.0;
    for part in partials {
        let (v, l) = part?;
        value *= v;
        last = l;
    }
    Ok(ZValue {
        value,
        report: ProductReport {
            prime_cutoff: spec.prime_cutoff,
            last_factor_deviation: last,
            heuristic: true,
        },
    })
}

/// The Dirichlet series entering the completion, built once per character
/// and bound.
#[derive(Clone, Debug)]
pub struct CompletionSeries {
    character: CharacterZi,
    zeta: TruncatedSeries<Complex64>,
    /// `ζ_K(·, χχ̃)`
    dedekind: TruncatedSeries<Complex64>,
    /// `L(·, θχ)`
    theta_twist: TruncatedSeries<Complex64>,
    /// `L(·, χ²)`
    square: TruncatedSeries<Complex64>,
    restricted: RationalCharacter,
}

impl CompletionSeries {
    pub fn new(character: &CharacterZi, bound: usize) -> Result<Self, LfunError> {
        let restricted = character.restrict_to_z();
        let norm_char = character.mul(&character.bar_twist())?;
        Ok(CompletionSeries {
            character: character.clone(),
            zeta: TruncatedSeries::zeta(bound),
            dedekind: dedekind_lattice(&norm_char, bound)?,
            theta_twist: l_series(&restricted.mul(&RationalCharacter::theta()), bound),
            square: l_series(&character.pow(2).restrict_to_z(), bound),
            restricted,
        })
    }

    pub fn bound(&self) -> usize {
        self.zeta.bound()
    }

    pub fn character(&self) -> &CharacterZi {
        &self.character
    }
}

/// A value with a relative error budget from the series tails.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounded {
    #[serde(with = "crate::ring::complex_json")]
    pub value: Complex64,
    /// Bound on `|error| / |value|` from truncating the Dirichlet series;
    /// Gamma's own error (about `1e-15` relative) is not included.
    pub relative_error: f64,
}

fn eval_in_region(
    series: &TruncatedSeries<Complex64>,
    arg: Complex64,
    what: &'static str,
) -> Result<Evaluation, LfunError> {
    if arg.re.is_nan() || arg.re <= 1.0 {
        return Err(LfunError::OutsideRegion {
            what,
            re: arg.re,
            bound: 1.0,
        });
    }
    Ok(series.evaluate(arg, arg.re, 1.0)?)
}

fn relative(e: &Evaluation) -> f64 {
    let abs = e.value.norm();
    if abs == 0.0 {
        f64::INFINITY
    } else {
        e.error_bound() / abs
    }
}

/// Relative error of `1/v` given relative error `r` of `v`.
fn inverse_relative(r: f64) -> f64 {
    if r < 1.0 {
        r / (1.0 - r)
    } else {
        f64::INFINITY
    }
}

fn combine(rels: &[f64]) -> f64 {
    rels.iter().fold(1.0, |acc, r| acc * (1.0 + r)) - 1.0
}

/// `N^{-4s} (4π³)^{-s} Γ(s) Γ(s-k+3) Γ(s-k+2) ζ(2s-2k+4)`, shared by both
/// completions.
pub fn common_factor(
    series: &CompletionSeries,
    k: i64,
    modulus: u64,
    s: Complex64,
) -> Result<Bounded, LfunError> {
    let kf = k as f64;
    let gammas = gamma(s)? * gamma(s - kf + 3.0)? * gamma(s - kf + 2.0)?;
    let z = eval_in_region(&series.zeta, 2.0 * s - 2.0 * kf + 4.0, "zeta(2s-2k+4)")?;
    let scale = (-4.0 * s * (modulus as f64).ln() - s * (4.0 * PI.powi(3)).ln()).exp();
    Ok(Bounded {
        value: scale * gammas * z.value,
        relative_error: relative(&z),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prefactor {
    pub common: Bounded,
    pub total: Bounded,
}

/// Everything multiplying the truncated L-function in its completion:
/// `common · ζ_K(s-k+2, χχ̃) / (L(s-k+2, θχ)² L(2s-2k+4, χ²))`.
pub fn star_prefactor(
    series: &CompletionSeries,
    k: i64,
    modulus: u64,
    s: Complex64,
) -> Result<Prefactor, LfunError> {
    let kf = k as f64;
    let common = common_factor(series, k, modulus, s)?;
    let shifted = s - kf + 2.0;
    let zk = eval_in_region(&series.dedekind, shifted, "zeta_K(s-k+2)")?;
    let lt = eval_in_region(&series.theta_twist, shifted, "L(s-k+2, theta chi)")?;
    let lsq = eval_in_region(
        &series.square,
        2.0 * s - 2.0 * kf + 4.0,
        "L(2s-2k+4, chi^2)",
    )?;
    let value = common.value * zk.value / (lt.value * lt.value * lsq.value);
    let rel_lt = inverse_relative(relative(&lt));
    let relative_error = combine(&[
        common.relative_error,
        relative(&zk),
        rel_lt,
        rel_lt,
        inverse_relative(relative(&lsq)),
    ]);
    Ok(Prefactor {
        common,
        total: Bounded {
            value,
            relative_error,
        },
    })
}

/// Opaque inner products `c(m)`, `m = 1..=M`.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerProductSequence {
    values: Vec<Complex64>,
}

impl InnerProductSequence {
    pub fn new(values: Vec<Complex64>) -> Self {
        InnerProductSequence { values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Parse `m,re,im` rows; a header line and blank lines are skipped and
    /// indices not listed are zero.
    pub fn from_csv(text: &str) -> Result<Self, String> {
        let mut entries = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || (lineno == 0 && line.starts_with('m')) {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(format!("line {}: expected m,re,im", lineno + 1));
            }
            let m: usize = fields[0]
                .parse()
                .map_err(|_| format!("line {}: bad index {:?}", lineno + 1, fields[0]))?;
            let num = |x: &str| {
                x.parse::<f64>()
                    .map_err(|_| format!("line {}: bad number {x:?}", lineno + 1))
            };
            if m == 0 {
                return Err(format!("line {}: indices start at 1", lineno + 1));
            }
            if entries
                .insert(m, Complex64::new(num(fields[1])?, num(fields[2])?))
                .is_some()
            {
                return Err(format!("line {}: duplicate index {m}", lineno + 1));
            }
        }
        let len = entries.keys().next_back().copied().unwrap_or(0);
        let mut values = vec![Complex64::new(0.0, 0.0); len];
        for (m, v) in entries {
            values[m - 1] = v;
        }
        Ok(InnerProductSequence { values })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,re,im\n");
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{},{:e},{:e}", i + 1, v.re, v.im);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DStarValue {
    pub common: Bounded,
    #[serde(with = "crate::ring::complex_json")]
    pub value: Complex64,
    /// Terms used from the inner-product sequence; the remaining tail is
    /// unbounded since the coefficients are opaque.
    pub terms: usize,
}

/// `common · ζ_K(s-k+3, χχ̃) · Σ_{m≤M} χ(m) c(m) m^{-s}`.
pub fn d_star_value(
    series: &CompletionSeries,
    k: i64,
    modulus: u64,
    c: &InnerProductSequence,
    s: Complex64,
) -> Result<DStarValue, LfunError> {
    let bound = k as f64 + 1.0;
    if s.re.is_nan() || s.re <= bound {
        return Err(LfunError::OutsideRegion {
            what: "completed Dirichlet series",
            re: s.re,
            bound,
        });
    }
    let common = common_factor(series, k, modulus, s)?;
    let zk = eval_in_region(&series.dedekind, s - k as f64 + 3.0, "zeta_K(s-k+3)")?;
    let m = c.len();
    let partials = par::map_slice(&par::blocks(m), |&(lo, hi)| {
        let mut acc = Complex64::new(0.0, 0.0);
        for n in lo..hi {
            let cn = c.values[n - 1];
            if cn.re == 0.0 && cn.im == 0.0 {
                continue;
            }
            let chi: Complex64 = value_to_scalar(&series.restricted.eval_u64(n as u64));
            acc += chi * cn * n_pow_minus_s(n, s);
        }
        acc
    });
    let sum = partials
        .into_iter()
        .fold(Complex64::new(0.0, 0.0), |a, b| a + b);
    Ok(DStarValue {
        common,
        value: common.value * zk.value * sum,
        terms: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::unit_group;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn principal(n: u64) -> CharacterZi {
        unit_group(n).unwrap().character(0).unwrap()
    }

    #[test]
    fn gamma_values() {
        assert!((gamma(c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-14);
        assert!((gamma(c(0.5, 0.0)).unwrap() - PI.sqrt()).norm() < 1e-14);
        assert!((gamma(c(5.0, 0.0)).unwrap() - 24.0).norm() < 1e-12);
        assert!((gamma(c(-0.5, 0.0)).unwrap() + 2.0 * PI.sqrt()).norm() < 1e-13);
        assert!(matches!(gamma(c(0.0, 0.0)), Err(LfunError::GammaPole(_))));
        assert!(matches!(gamma(c(-3.0, 0.0)), Err(LfunError::GammaPole(_))));
        assert!(gamma(c(-3.0, 1e-3)).is_ok());
    }

    #[test]
    fn gamma_recurrence() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let s = loop {
                let s = c(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
                if s.norm() <= 20.0 {
                    break s;
                }
            };
            let ratio = gamma(s + 1.0).unwrap() / (s * gamma(s).unwrap());
            worst = worst.max((ratio - 1.0).norm());
        }
        assert!(worst <= 1e-12, "worst {worst:e}");
    }

    #[test]
    fn reflection() {
        assert_eq!(reflect(&c(13.0, 0.0), 10), c(4.0, 0.0));
        let s = c(1.25, -3.5);
        assert_eq!(reflect(&reflect(&s, 7), 7), s);
        assert_eq!(reflect(&c(8.5, 0.0), 10), c(8.5, 0.0));
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let exact = Complex::new(q(17, 3), q(-5, 7));
        assert_eq!(reflect(&reflect(&exact, 12), 12), exact);
        assert_eq!(
            reflect(&Complex::new(q(21, 2), q(0, 1)), 12),
            Complex::new(q(21, 2), q(0, 1))
        );
    }

    #[test]
    fn z_value_zero_eigenvalues_matches_direct_product() {
        let (k, p_cut) = (10, 2000);
        let spec = LFunctionSpec::zero_eigenvalues(k, principal(1), p_cut);
        let s = c(12.5, 1.0);
        let z = z_value(&spec, s).unwrap();
        let mut direct = c(1.0, 0.0);
        for p in primes_up_to(p_cut).into_iter().filter(|p| p % 4 == 3) {
            let x = c(p as f64, 0.0).powc(c(k as f64 - 2.0, 0.0) - s);
            direct /= (1.0 + x) * (1.0 + x);
        }
        assert!((z.value - direct).norm() <= 1e-12 * direct.norm());
        assert!(z.report.heuristic);
        assert_eq!(z.report.prime_cutoff, p_cut);
    }

    #[test]
    fn z_value_degenerate_cases() {
        let spec = LFunctionSpec::zero_eigenvalues(6, principal(1), 1);
        assert_eq!(z_value(&spec, c(9.0, 0.0)).unwrap().value, c(1.0, 0.0));
        // modulus 210 kills every prime up to 7
        let spec = LFunctionSpec::zero_eigenvalues(6, principal(210), 7);
        assert_eq!(z_value(&spec, c(9.0, 0.0)).unwrap().value, c(1.0, 0.0));
        assert!(matches!(
            z_value(&spec, c(7.0, 0.0)),
            Err(LfunError::OutsideRegion { .. })
        ));
    }

    #[test]
    fn lfunction_spec_validation() {
        let table: EigenvalueTable = [(
            2,
            EigenRecord::Numeric(Eigenvalues::zeros(PrimeKind::Ramified)),
        )]
        .into_iter()
        .collect();
        assert!(LFunctionSpec::new(4, principal(1), &table, 2).is_ok());
        assert_eq!(
            LFunctionSpec::new(4, principal(1), &table, 3).unwrap_err(),
            LfunError::MissingPrime(3)
        );
        let sym: EigenvalueTable = [(
            2,
            EigenRecord::Symbolic(Eigenvalues::symbolic(PrimeKind::Ramified)),
        )]
        .into_iter()
        .collect();
        assert_eq!(
            LFunctionSpec::new(4, principal(1), &sym, 2).unwrap_err(),
            LfunError::Symbolic(2)
        );
        let spec = LFunctionSpec::new(9, principal(1), &table, 2).unwrap();
        assert_eq!(spec.possible_poles(), Some([9, 8, 7, 6]));
        let chi = unit_group(3).unwrap().character(1).unwrap();
        assert_eq!(
            LFunctionSpec::zero_eigenvalues(9, chi, 5).possible_poles(),
            None
        );
    }

    #[test]
    fn prefactor_examples() {
        let series = CompletionSeries::new(&principal(1), 20_000).unwrap();
        let pre = star_prefactor(&series, 10, 1, c(13.0, 0.0)).unwrap();
        assert!(pre.total.value.re > 0.0 && pre.total.value.im == 0.0);
        assert!(pre.total.relative_error < 1e-6);

        // growth towards the ζ_K pole at s - k + 2 = 1
        let mags: Vec<f64> = [0.5, 0.25, 0.125]
            .iter()
            .map(|eps| {
                star_prefactor(&series, 10, 1, c(9.0 + eps, 0.0))
                    .unwrap()
                    .total
                    .value
                    .norm()
            })
            .collect();
        assert!(mags[0] < mags[1] && mags[1] < mags[2], "{mags:?}");
        assert!(matches!(
            star_prefactor(&series, 10, 1, c(9.0, 0.0)),
            Err(LfunError::OutsideRegion { .. })
        ));

        // only N^{-4s} moves with the modulus
        let s = c(12.0, 0.5);
        let a = star_prefactor(&series, 10, 1, s).unwrap().total.value;
        let b = star_prefactor(&series, 10, 3, s).unwrap().total.value;
        let expected = (-4.0 * s * 3f64.ln()).exp();
        assert!((b / a - expected).norm() <= 1e-12 * expected.norm());
    }

    #[test]
    fn d_star_examples() {
        let chi = unit_group(5).unwrap().character(2).unwrap();
        let series = CompletionSeries::new(&chi, 5_000).unwrap();
        let s = c(8.5, 2.0);
        let zero = InnerProductSequence::new(vec![c(0.0, 0.0); 50]);
        assert_eq!(
            d_star_value(&series, 7, 5, &zero, s).unwrap().value,
            c(0.0, 0.0)
        );

        let mut unit = vec![c(0.0, 0.0); 50];
        unit[0] = c(1.0, 0.0);
        let d = d_star_value(&series, 7, 5, &InnerProductSequence::new(unit), s).unwrap();
        let zk = series
            .dedekind
            .evaluate(s - 4.0, (s - 4.0).re, 1.0)
            .unwrap()
            .value;
        assert_eq!(d.value, d.common.value * zk);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut rand_seq =
            || InnerProductSequence::new((0..80).map(|_| c(rng.gen(), rng.gen())).collect());
        let (x, y) = (rand_seq(), rand_seq());
        let sum = InnerProductSequence::new(
            x.values()
                .iter()
                .zip(y.values())
                .map(|(a, b)| a + b)
                .collect(),
        );
        let lhs = d_star_value(&series, 7, 5, &sum, s).unwrap().value;
        let rhs = d_star_value(&series, 7, 5, &x, s).unwrap().value
            + d_star_value(&series, 7, 5, &y, s).unwrap().value;
        assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
        assert!(matches!(
            d_star_value(&series, 7, 5, &x, c(8.0, 0.0)),
            Err(LfunError::OutsideRegion { .. })
        ));
    }

    #[test]
    fn shared_common_factor_is_bit_identical() {
        let chi = unit_group(4).unwrap().character(3).unwrap();
        let series = CompletionSeries::new(&chi, 3_000).unwrap();
        let s = c(11.5, -0.75);
        let pre = star_prefactor(&series, 9, 4, s).unwrap();
        let d = d_star_value(
            &series,
            9,
            4,
            &InnerProductSequence::new(vec![c(1.0, 0.0)]),
            s,
        )
        .unwrap();
        assert_eq!(pre.common.value.re.to_bits(), d.common.value.re.to_bits());
        assert_eq!(pre.common.value.im.to_bits(), d.common.value.im.to_bits());
    }

    #[test]
    fn inner_product_csv() {
        let seq = InnerProductSequence::from_csv("m,re,im\n1,1.5,0\n3,-2,0.25\n").unwrap();
        assert_eq!(seq.values(), &[c(1.5, 0.0), c(0.0, 0.0), c(-2.0, 0.25)]);
        assert_eq!(InnerProductSequence::from_csv(&seq.to_csv()).unwrap(), seq);
        assert!(InnerProductSequence::from_csv("0,1,1").is_err());
        assert!(InnerProductSequence::from_csv("1,1").is_err());
        assert!(InnerProductSequence::from_csv("1,1,0\n1,2,0").is_err());
    }
}
