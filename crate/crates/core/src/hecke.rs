//! The local polynomials `Q_p(t)` of the degree-6 L-function, built over any
//! coefficient ring: `Complex64` for numeric eigenvalues, [`MultiPoly`] for
//! symbolic ones.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::gaussian::PrimeKind;
use crate::primes::is_prime_u64;
use crate::ring::{rational_power, MultiPoly, Poly, Ring};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeckeError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("eigenvalue record for p = {prime} has shape {found} but p is {expected}")]
    WrongSplitting {
        prime: u64,
        expected: &'static str,
        found: &'static str,
    },
    #[error("eigenvalue record for p = {0} mixes numeric and symbolic values")]
    Mixed(u64),
    #[error("eigenvalue record for p = {prime}: {msg}")]
    Field { prime: u64, msg: String },
    #[error("malformed eigenvalue JSON: {0}")]
    Json(String),
    #[error("duplicate eigenvalue record for p = {0}")]
    Duplicate(u64),
}

/// Hecke eigenvalues at one rational prime, shaped by its splitting type.
#[derive(Clone, Debug, PartialEq)]
pub enum Eigenvalues<R> {
    /// `(T_p, T_{1,p}, Δ_p)`
    Inert { t: R, t1: R, delta: R },
    /// `(T_2, T_{1+i}, Δ_{1+i})`
    Ramified { t2: R, t_pi: R, delta: R },
    /// `(T_p, T_π, T_π̄, Δ_p, Δ_π, Δ_π̄)`
    Split {
        t: R,
        t_pi: R,
        t_pibar: R,
        delta: R,
        delta_pi: R,
        delta_pibar: R,
    },
}

const INERT_NAMES: [&str; 3] = ["T_p", "T_1p", "Delta_p"];
const RAMIFIED_NAMES: [&str; 3] = ["T_2", "T_1+i", "Delta_1+i"];
const SPLIT_NAMES: [&str; 6] = [
    "T_p",
    "T_pi",
    "T_pibar",
    "Delta_p",
    "Delta_pi",
    "Delta_pibar",
];

impl<R: Ring> Eigenvalues<R> {
    pub fn kind(&self) -> PrimeKind {
        match self {
            Eigenvalues::Inert { .. } => PrimeKind::Inert,
            Eigenvalues::Ramified { .. } => PrimeKind::Ramified,
            Eigenvalues::Split { .. } => PrimeKind::Split,
        }
    }

    /// Field names in the order of [`Eigenvalues::values`].
    pub fn names(kind: PrimeKind) -> &'static [&'static str] {
        match kind {
            PrimeKind::Inert => &INERT_NAMES,
            PrimeKind::Ramified => &RAMIFIED_NAMES,
            PrimeKind::Split => &SPLIT_NAMES,
        }
    }

    pub fn values(&self) -> Vec<&R> {
        match self {
            Eigenvalues::Inert { t, t1, delta } => vec![t, t1, delta],
            Eigenvalues::Ramified { t2, t_pi, delta } => vec![t2, t_pi, delta],
            Eigenvalues::Split {
                t,
                t_pi,
                t_pibar,
                delta,
                delta_pi,
                delta_pibar,
            } => vec![t, t_pi, t_pibar, delta, delta_pi, delta_pibar],
        }
    }

    /// Build from values listed in the order of [`Eigenvalues::names`].
    pub fn from_values(kind: PrimeKind, mut v: Vec<R>) -> Self {
        assert_eq!(v.len(), Self::names(kind).len(), "eigenvalue count");
        let mut next = || v.remove(0);
        match kind {
            PrimeKind::Inert => Eigenvalues::Inert {
                t: next(),
                t1: next(),
                delta: next(),
            },
            PrimeKind::Ramified => Eigenvalues::Ramified {
                t2: next(),
                t_pi: next(),
                delta: next(),
            },
            PrimeKind::Split => Eigenvalues::Split {
                t: next(),
                t_pi: next(),
                t_pibar: next(),
                delta: next(),
                delta_pi: next(),
                delta_pibar: next(),
            },
        }
    }

    pub fn zeros(kind: PrimeKind) -> Self {
        Self::from_values(kind, vec![R::zero(); Self::names(kind).len()])
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Eigenvalues<S> {
        Eigenvalues::from_values(self.kind(), self.values().into_iter().map(f).collect())
    }

    /// Exchange the roles of `π` and `π̄` (split records only).
    pub fn swap_conjugates(&self) -> Self {
        match self {
            Eigenvalues::Split {
                t,
                t_pi,
                t_pibar,
                delta,
                delta_pi,
                delta_pibar,
            } => Eigenvalues::Split {
                t: t.clone(),
                t_pi: t_pibar.clone(),
                t_pibar: t_pi.clone(),
                delta: delta.clone(),
                delta_pi: delta_pibar.clone(),
                delta_pibar: delta_pi.clone(),
            },
            other => other.clone(),
        }
    }
}

impl Eigenvalues<MultiPoly> {
    /// Every eigenvalue an independent symbol named as in the JSON format.
    pub fn symbolic(kind: PrimeKind) -> Self {
        Self::from_values(
            kind,
            Self::names(kind)
                .iter()
                .map(|n| MultiPoly::var(n))
                .collect(),
        )
    }
}

fn power<R: Ring>(p: u64, e: i64) -> R {
    R::from_rational(&rational_power(p, e))
}

fn check_kind<R: Ring>(p: u64, e: &Eigenvalues<R>) -> Result<(), HeckeError> {
    if !is_prime_u64(p) {
        return Err(HeckeError::NotPrime(p));
    }
    let expected = PrimeKind::of_prime(p);
    if e.kind() != expected {
        return Err(HeckeError::WrongSplitting {
            prime: p,
            expected: expected.as_str(),
            found: e.kind().as_str(),
        });
    }
    Ok(())
}

/// Degree-4 polynomial at an inert prime.
pub fn q_inert<R: Ring>(p: u64, e: &Eigenvalues<R>) -> Result<Poly<R>, HeckeError> {
    check_kind(p, e)?;
    let Eigenvalues::Inert { t, t1, delta } = e else {
        unreachable!()
    };
    let pr = |k| power::<R>(p, k);
    let bracket = pr(4).plus(&pr(3)).minus(&pr(2)).plus(&pr(1));
    let middle = pr(1).times(t1).plus(&bracket.times(delta));
    Ok(Poly::new(vec![
        R::one(),
        t.negated(),
        middle,
        pr(4).times(delta).times(t).negated(),
        pr(8).times(&delta.pow(2)),
    ]))
}

/// Degree-4 polynomial at `p = 2`, with the listed coefficients.
pub fn q_ramified<R: Ring>(p: u64, e: &Eigenvalues<R>) -> Result<Poly<R>, HeckeError> {
    check_kind(p, e)?;
    let Eigenvalues::Ramified { t2, t_pi, delta } = e else {
        unreachable!()
    };
    let shifted = t2.minus(&R::from_int(3).times(delta));
    let four_delta = R::from_int(4).times(delta);
    let quad = R::from_int(2)
        .times(&t_pi.pow(2))
        .minus(&R::from_int(8).times(delta).times(&t2.plus(delta)));
    Ok(Poly::new(vec![
        R::one(),
        shifted.negated(),
        quad,
        four_delta.pow(2).times(&shifted).negated(),
        four_delta.pow(4),
    ]))
}

/// Degree-6 polynomial at a split prime.
pub fn q_split<R: Ring>(p: u64, e: &Eigenvalues<R>) -> Result<Poly<R>, HeckeError> {
    check_kind(p, e)?;
    let Eigenvalues::Split {
        t,
        t_pi,
        t_pibar,
        delta,
        delta_pi,
        delta_pibar,
    } = e
    else {
        unreachable!()
    };
    let pr = |k| power::<R>(p, k);
    let inner = pr(1).times(t_pi).times(t_pibar).minus(&pr(4).times(delta));
    let cubic = pr(3)
        .times(
            &t_pi
                .pow(2)
                .times(delta_pibar)
                .plus(&t_pibar.pow(2).times(delta_pi)),
        )
        .minus(&R::from_int(2).times(&pr(4)).times(delta).times(t));
    Ok(Poly::new(vec![
        R::one(),
        t.negated(),
        inner.clone(),
        cubic.negated(),
        pr(4).times(delta).times(&inner),
        pr(8).times(&delta.pow(2)).times(t).negated(),
        pr(12).times(&delta.pow(3)),
    ]))
}

/// `Q_p(t)` for whichever shape `e` has.
pub fn local_q<R: Ring>(p: u64, e: &Eigenvalues<R>) -> Result<Poly<R>, HeckeError> {
    match e {
        Eigenvalues::Inert { .. } => q_inert(p, e),
        Eigenvalues::Ramified { .. } => q_ramified(p, e),
        Eigenvalues::Split { .. } => q_split(p, e),
    }
}

/// The polynomial in `t = p^{-s}` whose reciprocal is the `p`-factor of the
/// twisted L-function: `(1 + c p^{k-2} t)^2 Q_p(c t)` at inert `p` and
/// `Q_p(c t)` otherwise, with `c = χ(p)`.
pub fn full_local_factor<R: Ring>(
    p: u64,
    e: &Eigenvalues<R>,
    chi_p: &R,
    k: i64,
) -> Result<Poly<R>, HeckeError> {
    let q = local_q(p, e)?.substitute_scaled(chi_p);
    Ok(match e {
        Eigenvalues::Inert { .. } => {
            let lin = Poly::new(vec![R::one(), chi_p.times(&power(p, k - 2))]);
            lin.pow(2).mul(&q)
        }
        _ => q,
    })
}

/// The extra per-prime factor from the local comparison, in `t = p^{-s}`:
/// `1 - c² p^{2k-6} t²` (inert), `(1 - c p^{k-3} t)²(1 - c² p^{2k-4} t²)`
/// (split), `(1 - c 2^{k-3} t)(1 + c 2^{k-2} t)` (p = 2).
pub fn case_factor<R: Ring>(p: u64, chi_p: &R, k: i64) -> Result<Poly<R>, HeckeError> {
    if !is_prime_u64(p) {
        return Err(HeckeError::NotPrime(p));
    }
    let c2 = chi_p.pow(2);
    let one_minus =
        |c: &R, e: i64, deg: usize| Poly::one_plus_term(c.times(&power(p, e)).negated(), deg);
    Ok(match PrimeKind::of_prime(p) {
        PrimeKind::Inert => one_minus(&c2, 2 * k - 6, 2),
        PrimeKind::Split => one_minus(chi_p, k - 3, 1)
            .pow(2)
            .mul(&one_minus(&c2, 2 * k - 4, 2)),
        PrimeKind::Ramified => {
            one_minus(chi_p, k - 3, 1).mul(&Poly::one_plus_term(chi_p.times(&power(p, k - 2)), 1))
        }
    })
}

/// One eigenvalue as given in the JSON input.
#[derive(Clone, Debug, PartialEq)]
pub enum EigenInput {
    Number(Complex64),
    Symbol(String),
}

/// A record read from the eigenvalue file: all numeric or all symbolic.
#[derive(Clone, Debug, PartialEq)]
pub enum EigenRecord {
    Numeric(Eigenvalues<Complex64>),
    Symbolic(Eigenvalues<MultiPoly>),
}

impl EigenRecord {
    pub fn kind(&self) -> PrimeKind {
        match self {
            EigenRecord::Numeric(e) => e.kind(),
            EigenRecord::Symbolic(e) => e.kind(),
        }
    }

    pub fn numeric(&self) -> Option<&Eigenvalues<Complex64>> {
        match self {
            EigenRecord::Numeric(e) => Some(e),
            EigenRecord::Symbolic(_) => None,
        }
    }
}

/// Eigenvalue records keyed by rational prime.
pub type EigenvalueTable = BTreeMap<u64, EigenRecord>;

fn parse_value(prime: u64, v: &Value) -> Result<EigenInput, HeckeError> {
    let field = |msg: String| HeckeError::Field { prime, msg };
    match v {
        Value::Number(n) => Ok(EigenInput::Number(Complex64::new(
            n.as_f64().ok_or_else(|| field(format!("bad number {n}")))?,
            0.0,
        ))),
        Value::String(s) => Ok(EigenInput::Symbol(s.clone())),
        Value::Object(o) => {
            let part = |key: &str| {
                o.get(key)
                    .and_then(Value::as_f64)
                    .ok_or_else(|| field(format!("complex value needs numeric `{key}`")))
            };
            Ok(EigenInput::Number(Complex64::new(part("re")?, part("im")?)))
        }
        other => Err(field(format!("unsupported value {other}"))),
    }
}

fn parse_record(v: &Value) -> Result<(u64, EigenRecord), HeckeError> {
    let obj = v
        .as_object()
        .ok_or_else(|| HeckeError::Json("record must be an object".into()))?;
    let prime = obj
        .get("prime")
        .and_then(Value::as_u64)
        .ok_or_else(|| HeckeError::Json("record needs an integer `prime`".into()))?;
    if !is_prime_u64(prime) {
        return Err(HeckeError::NotPrime(prime));
    }
    let expected = PrimeKind::of_prime(prime);
    if let Some(t) = obj.get("type") {
        let t = t.as_str().unwrap_or("");
        if t != expected.as_str() {
            return Err(HeckeError::WrongSplitting {
                prime,
                expected: expected.as_str(),
                found: match t {
                    "inert" => "inert",
                    "ramified" => "ramified",
                    "split" => "split",
                    _ => "unknown",
                },
            });
        }
    }
    let values = obj
        .get("eigenvalues")
        .and_then(Value::as_object)
        .ok_or_else(|| {
            HeckeError::Json(format!(
                "record for p = {prime} needs an `eigenvalues` object"
            ))
        })?;
    let names = Eigenvalues::<Complex64>::names(expected);
    if let Some(extra) = values.keys().find(|k| !names.contains(&k.as_str())) {
        return Err(HeckeError::Field {
            prime,
            msg: format!(
                "unexpected eigenvalue `{extra}` for a {} prime",
                expected.as_str()
            ),
        });
    }
    let inputs = names
        .iter()
        .map(|n| {
            values
                .get(*n)
                .ok_or_else(|| HeckeError::Field {
                    prime,
                    msg: format!("missing eigenvalue `{n}`"),
                })
                .and_then(|v| parse_value(prime, v))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let all_numeric = inputs.iter().all(|x| matches!(x, EigenInput::Number(_)));
    let all_symbolic = inputs.iter().all(|x| matches!(x, EigenInput::Symbol(_)));
    let record = if all_numeric {
        EigenRecord::Numeric(Eigenvalues::from_values(
            expected,
            inputs
                .into_iter()
                .map(|x| match x {
                    EigenInput::Number(z) => z,
                    EigenInput::Symbol(_) => unreachable!(),
                })
                .collect(),
        ))
    } else if all_symbolic {
        EigenRecord::Symbolic(Eigenvalues::from_values(
            expected,
            inputs
                .into_iter()
                .map(|x| match x {
                    EigenInput::Symbol(s) => MultiPoly::var(&s),
                    EigenInput::Number(_) => unreachable!(),
                })
                .collect(),
        ))
    } else {
        return Err(HeckeError::Mixed(prime));
    };
    Ok((prime, record))
}

/// Parse a JSON array of `{prime, type, eigenvalues: {name: value}}`, where
/// a value is a number, `{"re": .., "im": ..}`, or a symbol name string.
pub fn parse_eigenvalue_json(text: &str) -> Result<EigenvalueTable, HeckeError> {
    let root: Value = serde_json::from_str(text).map_err(|e| HeckeError::Json(e.to_string()))?;
    let items = root
        .as_array()
        .ok_or_else(|| HeckeError::Json("top level must be an array".into()))?;
    let mut table = BTreeMap::new();
    for item in items {
        let (p, rec) = parse_record(item)?;
        if table.insert(p, rec).is_some() {
            return Err(HeckeError::Duplicate(p));
        }
    }
    Ok(table)
}

fn complex_json(z: &Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

/// Serialize numeric records back into the ingestion format.
pub fn eigenvalues_to_json(table: &BTreeMap<u64, Eigenvalues<Complex64>>) -> Value {
    Value::Array(
        table
            .iter()
            .map(|(p, e)| {
                let mut vals = Map::new();
                for (n, v) in Eigenvalues::<Complex64>::names(e.kind())
                    .iter()
                    .zip(e.values())
                {
                    vals.insert((*n).to_string(), complex_json(v));
                }
                json!({"prime": p, "type": e.kind().as_str(), "eigenvalues": vals})
            })
            .collect(),
    )
}

/// Coefficient list of a numeric polynomial as `[{re, im}, …]`.
pub fn poly_to_json(poly: &Poly<Complex64>) -> Value {
    Value::Array(poly.coeffs().iter().map(complex_json).collect())
}

/// Coefficient list of a symbolic polynomial as strings.
pub fn symbolic_poly_to_json(poly: &Poly<MultiPoly>) -> Value {
    Value::Array(
        poly.coeffs()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}
