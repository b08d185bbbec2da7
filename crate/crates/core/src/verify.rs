//! Exact checks of the Euler-product identities behind the local comparison:
//! three coefficient identities between Dirichlet series and one polynomial
//! identity per prime. A pass is a proof at the stated bound.

use serde::{Deserialize, Serialize};

use crate::characters::{value_to_scalar, CharacterError, CharacterZi};
use crate::cyclotomic::Cyclo;
use crate::gaussian::PrimeKind;
use crate::hecke::{case_factor, full_local_factor, local_q, Eigenvalues, HeckeError};
use crate::par;
use crate::primes::{is_prime_u64, primes_up_to};
use crate::ring::{rational_power, MultiPoly, Poly, Ring};
use crate::series::{
    dedekind_lattice, from_euler, l_series, LocalFactorMap, SeriesError, TruncatedSeries,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `L(s, θχ)` against its product over inert and split primes.
    ThetaFactorization,
    /// `L(s, χ²)` against `∏ (1 - χ²(p) p^{-s})^{-1}`.
    ChiSquared,
    /// The quarter lattice sum for `χχ̃` against its product over primes.
    ZetaKFactorization,
    /// The cleared-denominator local identity at one prime.
    LocalProposition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Where two sides first disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Dirichlet coefficient `n` with both sides.
    Coefficient { n: usize, lhs: String, rhs: String },
    /// Coefficient of `x^degree` in the difference, and one of its terms.
    Monomial { degree: usize, term: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: Identity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_p: Option<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl VerificationReport {
    fn new(identity: Identity, witness: Option<Witness>) -> Self {
        VerificationReport {
            identity,
            modulus: None,
            character: None,
            bound: None,
            prime: None,
            weight: None,
            chi_p: None,
            status: if witness.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error("corruption target: {0}")]
    BadCorruption(String),
}

/// Reading of the `p = 2` factor of the lattice series for `χχ̃`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoAdicReading {
    /// `(1 - χ(2) 2^{-s})^{-1}`, since `(χχ̃)(1+i) = χ(2)`.
    #[default]
    Corrected,
    /// `(1 - χ²(2) 2^{-s})^{-1}`, the alternative 2-adic factor.
    SquaredCharacter,
}

/// Test hook: perturb one Euler-factor coefficient before expanding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corruption {
    pub prime: u64,
    pub degree: usize,
}

impl Corruption {
    /// Negate the coefficient of `x^degree`, or set it to 1 if it is zero.
    pub fn apply(&self, map: &mut LocalFactorMap<Cyclo>) -> Result<(), VerifyError> {
        if self.degree == 0 {
            return Err(VerifyError::BadCorruption(
                "degree 0 would break the constant term".into(),
            ));
        }
        let poly = map.get(self.prime).cloned().unwrap_or_else(Poly::one);
        let mut coeffs = poly.coeffs().to_vec();
        if coeffs.len() <= self.degree {
            coeffs.resize(self.degree + 1, Cyclo::zero());
        }
        let c = &coeffs[self.degree];
        coeffs[self.degree] = if c.is_zero() { Cyclo::one() } else { c.neg() };
        map.insert(self.prime, Poly::new(coeffs));
        Ok(())
    }
}

fn chi_at(chi: &CharacterZi, p: u64) -> Cyclo {
    value_to_scalar(&chi.eval_int(p as i64))
}

fn linear(c: &Cyclo) -> Poly<Cyclo> {
    Poly::one_plus_term(c.clone(), 1)
}

/// Factors of `L(s, θχ)`: `1 + χ(p)x` at inert `p`, `1 - χ(p)x` at odd split
/// `p`, nothing at 2.
pub fn theta_factor_map(chi: &CharacterZi, bound: usize) -> LocalFactorMap<Cyclo> {
    let mut map = LocalFactorMap::new();
    for p in primes_up_to(bound as u64) {
        let c = chi_at(chi, p);
        let f = match PrimeKind::of_prime(p) {
            PrimeKind::Inert => linear(&c),
            PrimeKind::Split => linear(&c.neg()),
            PrimeKind::Ramified => Poly::one(),
        };
        map.insert(p, f);
    }
    map
}

/// Factors of `L(s, χ²)`: `1 - χ²(p)x` at every `p`.
pub fn chi_squared_factor_map(chi: &CharacterZi, bound: usize) -> LocalFactorMap<Cyclo> {
    let mut map = LocalFactorMap::new();
    for p in primes_up_to(bound as u64) {
        let c = chi_at(chi, p);
        map.insert(p, linear(&c.times(&c).neg()));
    }
    map
}

/// Factors of the lattice series for `χχ̃`, with `x = p^{-s}`: inert primes
/// have norm `p²` and contribute `1 - χ²(p)x²`; split primes give
/// `(1 - χ(p)x)²`; `p = 2` follows `reading`.
pub fn zeta_k_factor_map(
    chi: &CharacterZi,
    bound: usize,
    reading: TwoAdicReading,
) -> LocalFactorMap<Cyclo> {
    let mut map = LocalFactorMap::new();
    for p in primes_up_to(bound as u64) {
        let c = chi_at(chi, p);
        let f = match PrimeKind::of_prime(p) {
            PrimeKind::Inert => Poly::one_plus_term(c.times(&c).neg(), 2),
            PrimeKind::Split => linear(&c.neg()).pow(2),
            PrimeKind::Ramified => match reading {
                TwoAdicReading::Corrected => linear(&c.neg()),
                TwoAdicReading::SquaredCharacter => linear(&c.times(&c).neg()),
            },
        };
        map.insert(p, f);
    }
    map
}

/// Compare a directly built series with the expansion of a factor map.
pub fn compare_with_euler(
    identity: Identity,
    lhs: &TruncatedSeries<Cyclo>,
    factors: &LocalFactorMap<Cyclo>,
) -> Result<VerificationReport, VerifyError> {
    let rhs = from_euler(factors, lhs.bound())?;
    let witness = lhs.first_mismatch(&rhs).map(|n| Witness::Coefficient {
        n,
        lhs: lhs.coeff(n).to_string(),
        rhs: rhs.coeff(n).to_string(),
    });
    let mut report = VerificationReport::new(identity, witness);
    report.bound = Some(lhs.bound());
    Ok(report)
}

fn finish(mut report: VerificationReport, chi: &CharacterZi) -> VerificationReport {
    report.modulus = Some(chi.modulus());
    report
}

fn corrupted(
    mut map: LocalFactorMap<Cyclo>,
    corruption: Option<Corruption>,
) -> Result<LocalFactorMap<Cyclo>, VerifyError> {
    if let Some(c) = corruption {
        c.apply(&mut map)?;
    }
    Ok(map)
}

pub fn verify_theta_factorization(
    chi: &CharacterZi,
    bound: usize,
) -> Result<VerificationReport, VerifyError> {
    verify_theta_factorization_with(chi, bound, None)
}

pub fn verify_theta_factorization_with(
    chi: &CharacterZi,
    bound: usize,
    corruption: Option<Corruption>,
) -> Result<VerificationReport, VerifyError> {
    let psi = chi
        .restrict_to_z()
        .mul(&crate::characters::RationalCharacter::theta());
    let lhs = l_series(&psi, bound);
    let map = corrupted(theta_factor_map(chi, bound), corruption)?;
    Ok(finish(
        compare_with_euler(Identity::ThetaFactorization, &lhs, &map)?,
        chi,
    ))
}

pub fn verify_chi_squared(
    chi: &CharacterZi,
    bound: usize,
) -> Result<VerificationReport, VerifyError> {
    verify_chi_squared_with(chi, bound, None)
}

pub fn verify_chi_squared_with(
    chi: &CharacterZi,
    bound: usize,
    corruption: Option<Corruption>,
) -> Result<VerificationReport, VerifyError> {
    let lhs = l_series(&chi.pow(2).restrict_to_z(), bound);
    let map = corrupted(chi_squared_factor_map(chi, bound), corruption)?;
    Ok(finish(
        compare_with_euler(Identity::ChiSquared, &lhs, &map)?,
        chi,
    ))
}

pub fn verify_zeta_k_factorization(
    chi: &CharacterZi,
    bound: usize,
    reading: TwoAdicReading,
) -> Result<VerificationReport, VerifyError> {
    verify_zeta_k_factorization_with(chi, bound, reading, None)
}

pub fn verify_zeta_k_factorization_with(
    chi: &CharacterZi,
    bound: usize,
    reading: TwoAdicReading,
    corruption: Option<Corruption>,
) -> Result<VerificationReport, VerifyError> {
    let lhs = dedekind_lattice(&chi.mul(&chi.bar_twist())?, bound)?;
    let map = corrupted(zeta_k_factor_map(chi, bound, reading), corruption)?;
    Ok(finish(
        compare_with_euler(Identity::ZetaKFactorization, &lhs, &map)?,
        chi,
    ))
}

fn shifted_linear(c: &MultiPoly, p: u64, e: i64, sign: i64) -> Poly<MultiPoly> {
    let coeff = c
        .times(&MultiPoly::from_rational(&rational_power(p, e)))
        .times(&MultiPoly::from_int(sign));
    Poly::one_plus_term(coeff, 1)
}

/// Denominator polynomial of the `p`-factor of the lattice series for `χχ̃`
/// at `s - shift`, in `x = p^{-s}`.
fn zeta_k_local(p: u64, c: &MultiPoly, shift: i64) -> Poly<MultiPoly> {
    match PrimeKind::of_prime(p) {
        PrimeKind::Inert => Poly::one_plus_term(
            c.pow(2)
                .times(&MultiPoly::from_rational(&rational_power(p, 2 * shift)))
                .negated(),
            2,
        ),
        PrimeKind::Split => shifted_linear(c, p, shift, -1).pow(2),
        PrimeKind::Ramified => shifted_linear(c, p, shift, -1),
    }
}

/// Check, at one prime, that
/// `case · P_K(s-k+2) · F = Q(cx) · P_θ(s-k+2)² · P_{χ²}(2s-2k+4) · P_K(s-k+3)`,
/// where each `P` is the denominator polynomial of a local Euler factor and
/// `F` is the polynomial whose reciprocal is the twisted L-function's factor.
/// This is the local comparison with denominators cleared.
pub fn verify_local_proposition(
    p: u64,
    chi_p: &Cyclo,
    k: i64,
    eigenvalues: &Eigenvalues<MultiPoly>,
) -> Result<VerificationReport, VerifyError> {
    if !is_prime_u64(p) {
        return Err(HeckeError::NotPrime(p).into());
    }
    let c = MultiPoly::constant(chi_p.clone());
    let q = local_q(p, eigenvalues)?.substitute_scaled(&c);
    let full = full_local_factor(p, eigenvalues, &c, k)?;
    let case = case_factor(p, &c, k)?;
    let theta = match PrimeKind::of_prime(p) {
        PrimeKind::Inert => shifted_linear(&c, p, k - 2, 1),
        PrimeKind::Split => shifted_linear(&c, p, k - 2, -1),
        PrimeKind::Ramified => Poly::one(),
    };
    let square = Poly::one_plus_term(
        c.pow(2)
            .times(&MultiPoly::from_rational(&rational_power(p, 2 * k - 4)))
            .negated(),
        2,
    );
    let lhs = case.mul(&zeta_k_local(p, &c, k - 2)).mul(&full);
    let rhs = q
        .mul(&theta.pow(2))
        .mul(&square)
        .mul(&zeta_k_local(p, &c, k - 3));
    let diff = lhs.sub(&rhs);
    let witness = diff
        .coeffs()
        .iter()
        .enumerate()
        .find(|(_, d)| !d.is_zero())
        .map(|(degree, d)| Witness::Monomial {
            degree,
            term: d.leading_witness().unwrap_or_default(),
        });
    let mut report = VerificationReport::new(Identity::LocalProposition, witness);
    report.prime = Some(p);
    report.weight = Some(k);
    report.chi_p = Some(chi_p.to_string());
    Ok(report)
}

/// Options for the batch driver.
#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub reading: TwoAdicReading,
    /// Applied to every coefficient check of every character.
    pub corruption: Option<Corruption>,
}

/// Every check for every character mod `modulus`: the three coefficient
/// identities at `bound`, then the local identity for each weight and prime
/// with symbolic eigenvalues. Reports come in character-index order.
pub fn verify_all(
    modulus: u64,
    bound: usize,
    weights: &[i64],
    primes: &[u64],
    options: &VerifyOptions,
) -> Result<Vec<VerificationReport>, VerifyError> {
    let group = crate::characters::unit_group(modulus)?;
    let chars = group.characters();
    let indexed: Vec<(usize, &CharacterZi)> = chars.iter().enumerate().collect();
    let per_char = par::map_slice(
        &indexed,
        |&(index, chi)| -> Result<Vec<VerificationReport>, VerifyError> {
            let mut out = vec![
                verify_theta_factorization_with(chi, bound, options.corruption)?,
                verify_chi_squared_with(chi, bound, options.corruption)?,
                verify_zeta_k_factorization_with(chi, bound, options.reading, options.corruption)?,
            ];
            for &k in weights {
                for &p in primes {
                    let e = Eigenvalues::symbolic(PrimeKind::of_prime(p));
                    out.push(verify_local_proposition(p, &chi_at(chi, p), k, &e)?);
                }
            }
            for r in &mut out {
                r.modulus = Some(modulus);
                r.character = Some(index);
            }
            Ok(out)
        },
    );
    let mut reports = Vec::new();
    for r in per_char {
        reports.extend(r?);
    }
    Ok(reports)
}
