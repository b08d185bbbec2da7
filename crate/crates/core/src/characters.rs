//! The unit group `(Z[i]/N)^×` and its Dirichlet characters, stored exactly
//! as exponents of a fixed primitive root of unity.
//!
//! Characters are indexed by generator-exponent tuples in lexicographic order
//! (first generator most significant), so index 0 is always the principal
//! character and a given index names the same character on every run.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::Cyclo;
use crate::gaussian::GaussianInt;
use crate::ring::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("modulus {0} is too large for residue enumeration (limit {MAX_MODULUS})")]
    ModulusTooLarge(u64),
    #[error(
        "character index {index} out of range: the group mod {modulus} has {count} characters"
    )]
    IndexOutOfRange {
        modulus: u64,
        index: usize,
        count: usize,
    },
}

/// Residue tables hold `N²` entries.
pub const MAX_MODULUS: u64 = 2000;

/// `ζ_order^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootOfUnity {
    pub order: u32,
    pub exponent: u32,
}

impl RootOfUnity {
    pub fn one() -> Self {
        RootOfUnity {
            order: 1,
            exponent: 0,
        }
    }

    pub fn new(order: u32, exponent: i64) -> Self {
        RootOfUnity {
            order,
            exponent: exponent.rem_euclid(order as i64) as u32,
        }
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        let l = self.order.lcm(&other.order);
        let e = self.exponent as u64 * (l / self.order) as u64
            + other.exponent as u64 * (l / other.order) as u64;
        RootOfUnity::new(l, (e % l as u64) as i64)
    }

    pub fn pow(&self, k: i64) -> RootOfUnity {
        RootOfUnity::new(
            self.order,
            self.exponent as i64 * k.rem_euclid(self.order as i64),
        )
    }

    /// Multiplicative order.
    pub fn multiplicative_order(&self) -> u32 {
        self.order / self.order.gcd(&self.exponent)
    }

    pub fn to_scalar<S: Scalar>(&self) -> S {
        S::root_of_unity(self.order, self.exponent as i64)
    }

    pub fn to_cyclo(&self) -> Cyclo {
        Cyclo::root_of_unity(self.order, self.exponent as i64)
    }
}

/// A character value: a root of unity, or zero off the units.
pub type CharValue = Option<RootOfUnity>;

pub fn value_to_scalar<S: Scalar>(v: &CharValue) -> S {
    v.map_or_else(S::zero, |r| r.to_scalar())
}

pub fn value_mul(a: &CharValue, b: &CharValue) -> CharValue {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.mul(y)),
        _ => None,
    }
}

type Residue = (u64, u64);

fn residue_mul(a: Residue, b: Residue, n: u64) -> Residue {
    let (a0, a1, b0, b1) = (a.0 as u128, a.1 as u128, b.0 as u128, b.1 as u128);
    let n = n as u128;
    let re = (a0 * b0 + n * n - (a1 * b1) % n) % n;
    let im = (a0 * b1 + a1 * b0) % n;
    (re as u64, im as u64)
}

/// `(Z[i]/N)^×` with a direct-product basis of cyclic generators.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    modulus: u64,
    elements: Vec<Residue>,
    generators: Vec<(Residue, u32)>,
    exponent: u32,
    /// residue index `re*N + im` ↦ position in `elements`
    position: Vec<Option<usize>>,
    /// discrete logs w.r.t. `generators`, aligned with `elements`
    logs: Vec<Vec<u32>>,
}

impl UnitGroup {
    pub fn new(modulus: u64) -> Result<UnitGroup, CharacterError> {
        if modulus == 0 {
            return Err(CharacterError::ZeroModulus);
        }
        if modulus > MAX_MODULUS {
            return Err(CharacterError::ModulusTooLarge(modulus));
        }
        let n = modulus;
        let mut elements = Vec::new();
        let mut position = vec![None; (n * n) as usize];
        for re in 0..n {
            for im in 0..n {
                let norm = re * re + im * im;
                if norm.gcd(&n) == 1 {
                    position[(re * n + im) as usize] = Some(elements.len());
                    elements.push((re, im));
                }
            }
        }
        let one = (1 % n, 0);
        let idx = |r: Residue| (r.0 * n + r.1) as usize;
        let pow = |mut b: Residue, mut e: u64| {
            let mut acc = one;
            while e > 0 {
                if e & 1 == 1 {
                    acc = residue_mul(acc, b, n);
                }
                b = residue_mul(b, b, n);
                e >>= 1;
            }
            acc
        };
        let order_of = |g: Residue| {
            let mut k = 1u32;
            let mut cur = g;
            while cur != one {
                cur = residue_mul(cur, g, n);
                k += 1;
            }
            k
        };

        // Greedy basis: repeatedly take an element of maximal order modulo the
        // span so far, corrected by an element of the span so the new
        // generator's order equals its order in the quotient.
        let mut span = vec![false; (n * n) as usize];
        span[idx(one)] = true;
        let mut span_list = vec![one];
        let mut generators: Vec<(Residue, u32)> = Vec::new();
        while span_list.len() < elements.len() {
            let quotient_order = |h: Residue| {
                let mut d = 1u32;
                let mut cur = h;
                while !span[idx(cur)] {
                    cur = residue_mul(cur, h, n);
                    d += 1;
                }
                d
            };
            let mut best: Option<(Residue, u32)> = None;
            for &h in &elements {
                if span[idx(h)] {
                    continue;
                }
                let d = quotient_order(h);
                if best.is_none_or(|(_, bd)| d > bd) {
                    best = Some((h, d));
                }
            }
            let (h, d) = best.expect("span is a proper subgroup");
            let target = pow(h, d as u64);
            let mut sorted_span = span_list.clone();
            sorted_span.sort_unstable();
            let t = sorted_span
                .into_iter()
                .find(|&t| pow(t, d as u64) == target)
                .expect("a lift exists when the span is a direct summand");
            let t_inv = pow(t, order_of(t) as u64 - 1);
            let g = residue_mul(h, t_inv, n);
            debug_assert_eq!(order_of(g), d);
            let mut next = Vec::with_capacity(span_list.len() * d as usize);
            let mut gp = one;
            for _ in 0..d {
                for &s in &span_list {
                    next.push(residue_mul(s, gp, n));
                }
                gp = residue_mul(gp, g, n);
            }
            for &x in &next {
                span[idx(x)] = true;
            }
            span_list = next;
            generators.push((g, d));
        }

        let exponent = generators.iter().fold(1u32, |acc, &(_, d)| acc.lcm(&d));
        let mut logs = vec![Vec::new(); elements.len()];
        for tuple in mixed_radix(&generators.iter().map(|&(_, d)| d).collect::<Vec<_>>()) {
            let mut x = one;
            for (&(g, _), &a) in generators.iter().zip(&tuple) {
                x = residue_mul(x, pow(g, a as u64), n);
            }
            let p = position[idx(x)].expect("products of units are units");
            logs[p] = tuple;
        }
        Ok(UnitGroup {
            modulus,
            elements,
            generators,
            exponent,
            position,
            logs,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Unit residues `(re, im)` with `0 <= re, im < N`, sorted.
    pub fn elements(&self) -> &[(u64, u64)] {
        &self.elements
    }

    pub fn generators(&self) -> &[((u64, u64), u32)] {
        &self.generators
    }

    pub fn contains(&self, r: (u64, u64)) -> bool {
        self.position[(r.0 * self.modulus + r.1) as usize].is_some()
    }

    pub fn mul(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        residue_mul(a, b, self.modulus)
    }

    /// Exponent vector of a unit residue w.r.t. the generators.
    pub fn discrete_log(&self, r: (u64, u64)) -> Option<&[u32]> {
        self.position[(r.0 * self.modulus + r.1) as usize].map(|p| self.logs[p].as_slice())
    }

    pub fn character_count(&self) -> usize {
        self.order()
    }

    /// Exponent tuples in index order.
    pub fn character_labels(&self) -> Vec<Vec<u32>> {
        mixed_radix(&self.generators.iter().map(|&(_, d)| d).collect::<Vec<_>>())
    }

    /// The character sending generator `j` to `ζ_{d_j}^{e_j}`.
    pub fn character_from_exponents(&self, exps: &[u32]) -> CharacterZi {
        let m = self.exponent;
        let weights: Vec<u64> = self
            .generators
            .iter()
            .zip(exps)
            .map(|(&(_, d), &e)| (e as u64 % d as u64) * (m / d) as u64)
            .collect();
        let mut table = vec![None; (self.modulus * self.modulus) as usize];
        for (&r, log) in self.elements.iter().zip(&self.logs) {
            let e: u64 = log.iter().zip(&weights).map(|(&a, &w)| a as u64 * w).sum();
            table[(r.0 * self.modulus + r.1) as usize] = Some((e % m as u64) as u32);
        }
        CharacterZi {
            modulus: self.modulus,
            order_root: m,
            table: Arc::new(table),
        }
    }

    pub fn character(&self, index: usize) -> Result<CharacterZi, CharacterError> {
        let labels = self.character_labels();
        let exps = labels.get(index).ok_or(CharacterError::IndexOutOfRange {
            modulus: self.modulus,
            index,
            count: labels.len(),
        })?;
        Ok(self.character_from_exponents(exps))
    }

    pub fn characters(&self) -> Vec<CharacterZi> {
        self.character_labels()
            .iter()
            .map(|e| self.character_from_exponents(e))
            .collect()
    }
}

pub fn unit_group(modulus: u64) -> Result<UnitGroup, CharacterError> {
    UnitGroup::new(modulus)
}

pub fn enumerate_characters(group: &UnitGroup) -> Vec<CharacterZi> {
    group.characters()
}

/// All tuples `0 <= t_j < radix_j`, lexicographic with the first entry most significant.
fn mixed_radix(radix: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &r in radix {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..r).map(move |a| {
                    let mut t = prefix.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

/// A Dirichlet character on `(Z[i]/N)^×`, zero off the units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterZi {
    modulus: u64,
    order_root: u32,
    /// residue index ↦ exponent of `ζ_{order_root}`
    table: Arc<Vec<Option<u32>>>,
}

impl CharacterZi {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// All values are `order_root`-th roots of unity.
    pub fn order_root(&self) -> u32 {
        self.order_root
    }

    fn residue_index(&self, re: u64, im: u64) -> usize {
        (re * self.modulus + im) as usize
    }

    pub fn eval_residue(&self, r: (u64, u64)) -> CharValue {
        self.table[self.residue_index(r.0 % self.modulus, r.1 % self.modulus)]
            .map(|e| RootOfUnity::new(self.order_root, e as i64))
    }

    pub fn eval(&self, alpha: &GaussianInt) -> CharValue {
        self.eval_residue(alpha.reduce_mod(self.modulus))
    }

    pub fn eval_int(&self, n: i64) -> CharValue {
        let r = n.rem_euclid(self.modulus as i64) as u64;
        self.eval_residue((r, 0))
    }

    pub fn eval_bigint(&self, n: &BigInt) -> CharValue {
        let m = BigInt::from(self.modulus);
        let r = n.mod_floor(&m).to_u64().unwrap_or(0);
        self.eval_residue((r, 0))
    }

    /// Raw exponent at a residue (`None` off the units).
    pub fn exponent_at(&self, r: (u64, u64)) -> Option<u32> {
        self.table[self.residue_index(r.0 % self.modulus, r.1 % self.modulus)]
    }

    pub fn is_principal(&self) -> bool {
        self.table.iter().flatten().all(|&e| e == 0)
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u32 {
        let g = self
            .table
            .iter()
            .flatten()
            .fold(self.order_root, |acc, &e| acc.gcd(&e));
        self.order_root / g
    }

    /// `α ↦ χ(ᾱ)`
    pub fn bar_twist(&self) -> CharacterZi {
        let n = self.modulus;
        let mut table = vec![None; (n * n) as usize];
        for re in 0..n {
            for im in 0..n {
                let conj_im = (n - im) % n;
                table[(re * n + im) as usize] = self.table[(re * n + conj_im) as usize];
            }
        }
        CharacterZi {
            modulus: n,
            order_root: self.order_root,
            table: Arc::new(table),
        }
    }

    pub fn mul(&self, other: &CharacterZi) -> Result<CharacterZi, CharacterError> {
        if self.modulus != other.modulus {
            return Err(CharacterError::ModulusMismatch(self.modulus, other.modulus));
        }
        let l = self.order_root.lcm(&other.order_root);
        let (sa, sb) = (l / self.order_root, l / other.order_root);
        let table = self
            .table
            .iter()
            .zip(other.table.iter())
            .map(|(a, b)| match (a, b) {
                (Some(x), Some(y)) => Some(((x * sa + y * sb) as u64 % l as u64) as u32),
                _ => None,
            })
            .collect();
        Ok(CharacterZi {
            modulus: self.modulus,
            order_root: l,
            table: Arc::new(table),
        })
    }

    pub fn pow(&self, e: i64) -> CharacterZi {
        let m = self.order_root as i64;
        let k = e.rem_euclid(m);
        let table = self
            .table
            .iter()
            .map(|x| x.map(|x| ((x as i64 * k) % m) as u32))
            .collect();
        CharacterZi {
            modulus: self.modulus,
            order_root: self.order_root,
            table: Arc::new(table),
        }
    }

    /// True when `χ(uλ) = χ(λ)` for the units `u ∈ {±1, ±i}`.
    pub fn is_trivial_on_units(&self) -> bool {
        [GaussianInt::i(), GaussianInt::new(-1, 0)]
            .iter()
            .all(|u| self.eval(u).is_some_and(|v| v.exponent == 0))
    }

    pub fn restrict_to_z(&self) -> RationalCharacter {
        let table = (0..self.modulus)
            .map(|n| self.table[self.residue_index(n, 0)])
            .collect();
        RationalCharacter {
            modulus: self.modulus,
            order_root: self.order_root,
            table: Arc::new(table),
        }
    }

    pub fn to_table(&self) -> CharacterTable {
        let n = self.modulus;
        let mut entries = Vec::new();
        for re in 0..n {
            for im in 0..n {
                if let Some(e) = self.table[(re * n + im) as usize] {
                    entries.push(CharacterEntry {
                        re,
                        im,
                        exponent: e,
                    });
                }
            }
        }
        CharacterTable {
            modulus: n,
            order_root: self.order_root,
            entries,
        }
    }
}

/// JSON form: `{modulus, order_root, entries: [{re, im, exponent}]}`; residues
/// not listed are non-units.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub modulus: u64,
    pub order_root: u32,
    pub entries: Vec<CharacterEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterEntry {
    pub re: u64,
    pub im: u64,
    pub exponent: u32,
}

/// A Dirichlet character on `(Z/m)^×`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCharacter {
    modulus: u64,
    order_root: u32,
    table: Arc<Vec<Option<u32>>>,
}

impl RationalCharacter {
    pub fn from_table(modulus: u64, order_root: u32, table: Vec<Option<u32>>) -> Self {
        assert_eq!(table.len() as u64, modulus);
        RationalCharacter {
            modulus,
            order_root,
            table: Arc::new(table),
        }
    }

    pub fn principal(modulus: u64) -> Self {
        let table = (0..modulus)
            .map(|n| (n.gcd(&modulus) == 1).then_some(0))
            .collect();
        Self::from_table(modulus, 1, table)
    }

    /// The character mod 4 with `θ(3) = −1`.
    pub fn theta() -> Self {
        Self::from_table(4, 2, vec![None, Some(0), None, Some(1)])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order_root(&self) -> u32 {
        self.order_root
    }

    pub fn eval(&self, n: i64) -> CharValue {
        let r = n.rem_euclid(self.modulus as i64) as usize;
        self.table[r].map(|e| RootOfUnity::new(self.order_root, e as i64))
    }

    pub fn eval_u64(&self, n: u64) -> CharValue {
        self.table[(n % self.modulus) as usize].map(|e| RootOfUnity::new(self.order_root, e as i64))
    }

    pub fn is_principal(&self) -> bool {
        self.table.iter().flatten().all(|&e| e == 0)
    }

    /// Pointwise product on the lcm modulus.
    pub fn mul(&self, other: &RationalCharacter) -> RationalCharacter {
        let m = self.modulus.lcm(&other.modulus);
        let l = self.order_root.lcm(&other.order_root);
        let table = (0..m)
            .map(|n| match (self.eval_u64(n), other.eval_u64(n)) {
                (Some(a), Some(b)) => Some(a.mul(&b)),
                _ => None,
            })
            .map(|v| v.map(|r| r.exponent * (l / r.order)))
            .collect();
        Self::from_table(m, l, table)
    }

    pub fn pow(&self, e: i64) -> RationalCharacter {
        let m = self.order_root as i64;
        let k = e.rem_euclid(m);
        let table = self
            .table
            .iter()
            .map(|x| x.map(|x| ((x as i64 * k) % m) as u32))
            .collect();
        Self::from_table(self.modulus, self.order_root, table)
    }

    /// Same values as a function on `Z`.
    pub fn agrees_with(&self, other: &RationalCharacter) -> bool {
        let m = self.modulus.lcm(&other.modulus);
        (0..m).all(|n| {
            self.eval_u64(n).map(|r| r.to_cyclo()) == other.eval_u64(n).map(|r| r.to_cyclo())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{classify_prime, PrimeKind};
    use crate::primes::primes_up_to;

    fn brute_force_units(n: u64) -> Vec<(u64, u64)> {
        // invertible iff some residue is an inverse
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let inv = (0..n)
                    .flat_map(|c| (0..n).map(move |d| (c, d)))
                    .any(|f| residue_mul((a, b), f, n) == (1 % n, 0));
                if inv {
                    out.push((a, b));
                }
            }
        }
        out
    }

    #[test]
    fn unit_group_sizes() {
        assert_eq!(unit_group(1).unwrap().order(), 1);
        let g2 = unit_group(2).unwrap();
        assert_eq!(g2.elements(), &[(0, 1), (1, 0)]);
        assert_eq!(g2.generators().len(), 1);
        assert_eq!(g2.generators()[0].1, 2);
        assert_eq!(unit_group(3).unwrap().order(), 8);
        assert_eq!(unit_group(4).unwrap().order(), 8);
        assert_eq!(unit_group(5).unwrap().order(), 16);
        assert_eq!(unit_group(6).unwrap().order(), 16);
        assert!(unit_group(0).is_err());
    }

    #[test]
    fn units_match_inverse_search_and_generators_multiply_out() {
        for n in 1..=12 {
            let g = unit_group(n).unwrap();
            assert_eq!(g.elements(), brute_force_units(n).as_slice(), "N = {n}");
            let prod: usize = g.generators().iter().map(|&(_, d)| d as usize).product();
            assert_eq!(prod, g.order(), "N = {n}");
        }
    }

    #[test]
    fn characters_are_distinct_homomorphisms() {
        for n in 1..=8 {
            let g = unit_group(n).unwrap();
            let chars = enumerate_characters(&g);
            assert_eq!(chars.len(), g.order());
            assert!(chars[0].is_principal());
            for i in 0..chars.len() {
                for j in 0..i {
                    assert_ne!(chars[i], chars[j]);
                }
            }
            for chi in &chars {
                for &a in g.elements() {
                    for &b in g.elements() {
                        let lhs = chi.eval_residue(g.mul(a, b)).unwrap().to_cyclo();
                        let rhs = chi
                            .eval_residue(a)
                            .unwrap()
                            .to_cyclo()
                            .mul(&chi.eval_residue(b).unwrap().to_cyclo());
                        assert_eq!(lhs, rhs);
                    }
                }
                assert_eq!(chi.eval_int(1).unwrap().exponent, 0);
            }
        }
    }

    #[test]
    fn eval_examples() {
        let g1 = unit_group(1).unwrap();
        assert_eq!(
            g1.character(0).unwrap().eval(&GaussianInt::new(7, -3)),
            Some(RootOfUnity::one())
        );
        let g2 = unit_group(2).unwrap();
        let chi = g2.character(1).unwrap();
        assert_eq!(
            chi.eval(&GaussianInt::i()).unwrap().to_cyclo(),
            Cyclo::from_integer(-1)
        );
        for c in g2.characters() {
            assert_eq!(c.eval(&GaussianInt::new(1, 1)), None);
        }
        assert!(g2.character(2).is_err());
    }

    #[test]
    fn orthogonality() {
        for n in 1..=8 {
            let g = unit_group(n).unwrap();
            for chi in g.characters() {
                let sum = g.elements().iter().fold(Cyclo::zero(), |acc, &r| {
                    acc.add(&chi.eval_residue(r).unwrap().to_cyclo())
                });
                let expect = if chi.is_principal() {
                    g.order() as i64
                } else {
                    0
                };
                assert_eq!(sum, Cyclo::from_integer(expect), "N = {n}");
            }
        }
    }

    #[test]
    fn bar_twist_properties() {
        for n in 1..=8 {
            let g = unit_group(n).unwrap();
            for chi in g.characters() {
                let t = chi.bar_twist();
                assert_eq!(t.bar_twist(), chi);
                for m in -10..=10 {
                    assert_eq!(t.eval_int(m), chi.eval_int(m));
                }
                let prod = chi.mul(&t).unwrap();
                assert!(
                    prod.is_trivial_on_units(),
                    "χχ̃ not trivial on units mod {n}"
                );
                assert!(prod
                    .restrict_to_z()
                    .agrees_with(&chi.restrict_to_z().pow(2)));
                assert_eq!(
                    prod.eval(&GaussianInt::i()).map(|v| v.to_cyclo()),
                    Some(Cyclo::one())
                );
            }
            assert!(g.character(0).unwrap().bar_twist().is_principal());
        }
    }

    #[test]
    fn products_and_powers() {
        let g = unit_group(5).unwrap();
        let chars = g.characters();
        let principal = &chars[0];
        for chi in &chars {
            assert_eq!(&chi.mul(principal).unwrap(), chi);
            assert!(chi.pow(chi.order() as i64).is_principal());
        }
        let other = unit_group(3).unwrap().character(1).unwrap();
        assert!(matches!(
            chars[1].mul(&other),
            Err(CharacterError::ModulusMismatch(5, 3))
        ));
    }

    #[test]
    fn restriction_examples() {
        let r = unit_group(6).unwrap().character(0).unwrap().restrict_to_z();
        assert!(r.agrees_with(&RationalCharacter::principal(6)));
        let r = unit_group(2).unwrap().character(1).unwrap().restrict_to_z();
        assert!(r.agrees_with(&RationalCharacter::principal(2)));
    }

    #[test]
    fn theta_values() {
        let t = RationalCharacter::theta();
        assert_eq!(t.eval(3).unwrap().to_cyclo(), Cyclo::from_integer(-1));
        assert_eq!(t.eval(2), None);
        assert_eq!(t.eval(5).unwrap().to_cyclo(), Cyclo::one());
        for p in primes_up_to(10_000) {
            let v = t.eval(p as i64).map(|r| r.to_cyclo());
            let expect = match classify_prime(p).unwrap().kind() {
                PrimeKind::Inert => Some(Cyclo::from_integer(-1)),
                PrimeKind::Split => Some(Cyclo::one()),
                PrimeKind::Ramified => None,
            };
            assert_eq!(v, expect, "p = {p}");
        }
    }

    #[test]
    fn table_export() {
        let t = unit_group(2).unwrap().character(1).unwrap().to_table();
        assert_eq!(t.modulus, 2);
        assert_eq!(t.entries.len(), 2);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<CharacterTable>(&json).unwrap(), t);
    }
}
