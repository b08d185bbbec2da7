//! Exact elements of the cyclotomic fields `Q(ζ_m)`.
//!
//! An element of order `m` is stored in the power basis `1, ζ, …, ζ^{φ(m)-1}`
//! reduced modulo the `m`-th cyclotomic polynomial, so equal values have
//! equal coefficient vectors. Elements of different orders are lifted to
//! the lcm order before combining.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Reduction data for one cyclotomic order.
#[derive(Debug)]
pub struct CycloField {
    order: u32,
    phi: usize,
    /// `x^j mod Φ_m` for `j < m`, each of length `φ(m)`.
    reduce: Vec<Vec<i64>>,
}

fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i128; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Integer coefficients of `Φ_m`, constant term first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i128> {
    let mut num = vec![0i128; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    let mut acc = num;
    for d in 1..m {
        if m.is_multiple_of(d) {
            acc = poly_div_exact(&acc, &cyclotomic_polynomial(d));
        }
    }
    acc
}

impl CycloField {
    fn build(order: u32) -> CycloField {
        let phi_poly = cyclotomic_polynomial(order);
        let phi = phi_poly.len() - 1;
        let mut reduce = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..order {
            reduce.push(cur.clone());
            // multiply by x, then fold the x^phi term back
            let top = cur[phi - 1];
            for k in (1..phi).rev() {
                cur[k] = cur[k - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for k in 0..phi {
                    cur[k] -= top * phi_poly[k] as i64;
                }
            }
        }
        CycloField { order, phi, reduce }
    }

    pub fn get(order: u32) -> Arc<CycloField> {
        assert!(order >= 1, "cyclotomic order must be positive");
        static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(f) = cache.read().expect("cyclotomic cache").get(&order) {
            return f.clone();
        }
        let mut w = cache.write().expect("cyclotomic cache");
        w.entry(order)
            .or_insert_with(|| Arc::new(CycloField::build(order)))
            .clone()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.phi
    }
}

/// An exact element of `Q(ζ_order)`.
#[derive(Clone)]
pub struct Cyclo {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
}

fn scale_i64(q: &BigRational, k: i64) -> BigRational {
    match k {
        1 => q.clone(),
        -1 => -q.clone(),
        _ => q * BigRational::from_integer(BigInt::from(k)),
    }
}

impl Cyclo {
    pub fn zero() -> Cyclo {
        Cyclo::from_rational(BigRational::zero())
    }

    pub fn one() -> Cyclo {
        Cyclo::from_integer(1)
    }

    pub fn from_rational(q: BigRational) -> Cyclo {
        Cyclo {
            field: CycloField::get(1),
            coeffs: vec![q],
        }
    }

    pub fn from_integer(n: i64) -> Cyclo {
        Cyclo::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Cyclo {
        Cyclo::from_rational(BigRational::from_integer(n))
    }

    /// `ζ_order^exponent`
    pub fn root_of_unity(order: u32, exponent: i64) -> Cyclo {
        let field = CycloField::get(order);
        let e = exponent.rem_euclid(order as i64) as usize;
        let coeffs = field.reduce[e]
            .iter()
            .map(|&k| BigRational::from_integer(k.into()))
            .collect();
        Cyclo { field, coeffs }
    }

    /// Build from raw coefficients of `ζ^0, ζ^1, …` (any length), reducing.
    pub fn from_power_coeffs(order: u32, raw: &[BigRational]) -> Cyclo {
        let field = CycloField::get(order);
        let coeffs = Self::reduce_raw(&field, raw.iter().enumerate());
        Cyclo { field, coeffs }
    }

    /// `Σ counts[j]·ζ^j / denom`, a fast path for lattice counts.
    pub fn from_exponent_counts(order: u32, counts: &[i64], denom: i64) -> Cyclo {
        let field = CycloField::get(order);
        let mut acc = vec![0i64; field.phi];
        for (j, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (a, r) in acc.iter_mut().zip(&field.reduce[j % order as usize]) {
                    *a += c * r;
                }
            }
        }
        let den = BigInt::from(denom);
        let coeffs = acc
            .into_iter()
            .map(|a| BigRational::new(BigInt::from(a), den.clone()))
            .collect();
        Cyclo { field, coeffs }
    }

    fn reduce_raw<'a>(
        field: &CycloField,
        raw: impl Iterator<Item = (usize, &'a BigRational)>,
    ) -> Vec<BigRational> {
        let m = field.order as usize;
        let mut out = vec![BigRational::zero(); field.phi];
        for (j, c) in raw {
            if c.is_zero() {
                continue;
            }
            let row = &field.reduce[j % m];
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o += scale_i64(c, r);
                }
            }
        }
        out
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    /// Power-basis coefficients (length `φ(order)`).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-express in `Q(ζ_target)`; `order` must divide `target`.
    pub fn lift(&self, target: u32) -> Cyclo {
        let m = self.order();
        if m == target {
            return self.clone();
        }
        assert!(
            target.is_multiple_of(m),
            "cannot lift order {m} to {target}"
        );
        let field = CycloField::get(target);
        let step = (target / m) as usize;
        let coeffs = Self::reduce_raw(
            &field,
            self.coeffs.iter().enumerate().map(|(j, c)| (j * step, c)),
        );
        Cyclo { field, coeffs }
    }

    fn aligned(&self, other: &Cyclo) -> (Cyclo, Cyclo) {
        let l = self.order().lcm(&other.order());
        (self.lift(l), other.lift(l))
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        if Arc::ptr_eq(&self.field, &other.field) {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect();
            return Cyclo {
                field: self.field.clone(),
                coeffs,
            };
        }
        let (a, b) = self.aligned(other);
        a.add(&b)
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &BigRational) -> Cyclo {
        Cyclo {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        if other.order() == 1 {
            return self.scale(&other.coeffs[0]);
        }
        if self.order() == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if !Arc::ptr_eq(&self.field, &other.field) {
            let (a, b) = self.aligned(other);
            return a.mul(&b);
        }
        let m = self.field.order as usize;
        let mut raw = vec![BigRational::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[(i + j) % m] += a * b;
                }
            }
        }
        let coeffs = Self::reduce_raw(&self.field, raw.iter().enumerate());
        Cyclo {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, mut exp: u32) -> Cyclo {
        let mut base = self.clone();
        let mut acc = Cyclo::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Complex conjugate (`ζ ↦ ζ^{-1}`).
    pub fn conj(&self) -> Cyclo {
        let m = self.order() as usize;
        let coeffs = Self::reduce_raw(
            &self.field,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| ((m - j) % m, c)),
        );
        Cyclo {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Embedding with `ζ = e^{2πi/order}`.
    pub fn to_complex(&self) -> Complex64 {
        let m = self.order() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let w = c.to_f64().unwrap_or(f64::NAN);
                Complex64::from_polar(w, std::f64::consts::TAU * j as f64 / m)
            })
            .sum()
    }

    /// Exact encoding `{order, terms: [(exponent, num, den)]}` with zero terms omitted.
    pub fn to_exact(&self) -> ExactCyclo {
        ExactCyclo {
            order: self.order(),
            terms: self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j as u32, c.numer().to_string(), c.denom().to_string()))
                .collect(),
        }
    }

    pub fn from_exact(e: &ExactCyclo) -> Result<Cyclo, String> {
        if e.order == 0 {
            return Err("order must be positive".into());
        }
        let mut raw = Vec::new();
        for (j, num, den) in &e.terms {
            let n: BigInt = num.parse().map_err(|_| format!("bad numerator {num:?}"))?;
            let d: BigInt = den
                .parse()
                .map_err(|_| format!("bad denominator {den:?}"))?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            let j = *j as usize;
            if raw.len() <= j {
                raw.resize(j + 1, BigRational::zero());
            }
            raw[j] += BigRational::new(n, d);
        }
        Ok(Cyclo::from_power_coeffs(e.order, &raw))
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Cyclo) -> bool {
        if self.order() == other.order() {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclo {}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.order();
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{m}^{j}")?,
                (_, false) => write!(f, "{mag}*z{m}^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Serialized cyclotomic value: coefficients as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactCyclo {
    pub order: u32,
    pub terms: Vec<(u32, String, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn phi(m: u32) -> usize {
        (1..=m).filter(|k| k.gcd(&m) == 1).count()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        for m in 1..60 {
            assert_eq!(cyclotomic_polynomial(m).len() - 1, phi(m));
        }
    }

    #[test]
    fn roots_of_unity_relations() {
        let i = Cyclo::root_of_unity(4, 1);
        assert_eq!(i.mul(&i), Cyclo::from_integer(-1));
        // 1 + ζ3 + ζ3² = 0
        let s = Cyclo::one()
            .add(&Cyclo::root_of_unity(3, 1))
            .add(&Cyclo::root_of_unity(3, 2));
        assert!(s.is_zero());
        // ζ8² = i across orders
        assert_eq!(Cyclo::root_of_unity(8, 2), i);
        assert_eq!(Cyclo::root_of_unity(8, 4), Cyclo::from_integer(-1));
        assert!(Cyclo::root_of_unity(12, 0).is_one());
    }

    #[test]
    fn embedding_matches_polar() {
        for m in [1u32, 2, 3, 4, 5, 8, 12, 15] {
            for e in 0..m as i64 {
                let z = Cyclo::root_of_unity(m, e).to_complex();
                let w = Complex64::from_polar(1.0, std::f64::consts::TAU * e as f64 / m as f64);
                assert!((z - w).norm() < 1e-12, "m={m} e={e}");
            }
        }
    }

    #[test]
    fn conj_is_inverse_on_roots() {
        for m in [3u32, 4, 7, 8, 12] {
            for e in 0..m as i64 {
                let z = Cyclo::root_of_unity(m, e);
                assert!(z.mul(&z.conj()).is_one());
            }
        }
    }

    #[test]
    fn exact_roundtrip_and_rational() {
        let x = Cyclo::root_of_unity(8, 3)
            .scale(&BigRational::new(3.into(), 4.into()))
            .add(&Cyclo::from_integer(2));
        assert_eq!(Cyclo::from_exact(&x.to_exact()).unwrap(), x);
        assert_eq!(
            Cyclo::root_of_unity(6, 3).as_rational(),
            Some(BigRational::from_integer((-1).into()))
        );
        assert_eq!(Cyclo::root_of_unity(6, 1).as_rational(), None);
    }

    #[test]
    fn counts_fast_path() {
        let a = Cyclo::from_exponent_counts(4, &[3, 0, 1, 2], 4);
        let slow = Cyclo::from_integer(3)
            .add(&Cyclo::root_of_unity(4, 2))
            .add(&Cyclo::root_of_unity(4, 3).scale(&BigRational::from_integer(2.into())))
            .scale(&BigRational::new(1.into(), 4.into()));
        assert_eq!(a, slow);
    }

    fn arb_cyclo() -> impl Strategy<Value = Cyclo> {
        (
            prop::sample::select(vec![1u32, 2, 3, 4, 6, 8, 12]),
            prop::collection::vec((-5i64..=5, 1i64..=4), 1..6),
        )
            .prop_map(|(m, terms)| {
                terms
                    .iter()
                    .enumerate()
                    .fold(Cyclo::zero(), |acc, (j, &(n, d))| {
                        acc.add(
                            &Cyclo::root_of_unity(m, j as i64)
                                .scale(&BigRational::new(n.into(), d.into())),
                        )
                    })
            })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
            let prod = a.mul(&b).to_complex();
            let prod_f = a.to_complex() * b.to_complex();
            prop_assert!((prod - prod_f).norm() < 1e-9 * (1.0 + prod_f.norm()));
        }
    }
}
