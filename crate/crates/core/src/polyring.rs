//! Sparse univariate polynomials with arbitrary-precision exponents and
//! coefficients.
//!
//! The generating functions built in [`crate::genfun`] have exponents of
//! the form `Σ b_i base^i`, which leave machine words behind quickly, so
//! both exponents and coefficients are big integers. Terms are kept in a
//! `BTreeMap`, which gives the canonical ascending-exponent order for free;
//! zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    terms: BTreeMap<BigUint, BigInt>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(BigUint::zero(), c.into());
        p
    }

    /// `x^e`.
    pub fn monomial(e: impl Into<BigUint>) -> Self {
        Self::term(e, 1)
    }

    /// `x^e` for a signed exponent; negative exponents are rejected.
    pub fn monomial_signed(e: &BigInt) -> Result<Self> {
        match e.to_biguint() {
            Some(e) => Ok(Self::monomial(e)),
            None => Err(Error::NegativeExponent(e.to_string())),
        }
    }

    /// `c·x^e`.
    pub fn term(e: impl Into<BigUint>, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(e.into(), c.into());
        p
    }

    /// Builds a polynomial from arbitrary (exponent, coefficient) pairs,
    /// summing repeats.
    pub fn from_terms<E, C>(terms: impl IntoIterator<Item = (E, C)>) -> Self
    where
        E: Into<BigUint>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e.into(), c.into());
        }
        p
    }

    /// Adds `c·x^e` in place.
    pub fn add_term(&mut self, e: BigUint, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &BigUint) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn min_degree(&self) -> Result<&BigUint> {
        self.terms.keys().next().ok_or(Error::ZeroPolynomial)
    }

    pub fn max_degree(&self) -> Result<&BigUint> {
        self.terms.keys().next_back().ok_or(Error::ZeroPolynomial)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Golden-file form: `[["e0","c0"],["e1","c1"],...]`, ascending exponent.
    pub fn to_golden(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization cannot fail")
    }

    pub fn from_golden(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse {
            input: s.to_string(),
            reason: e.to_string(),
        })
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let (small, large) = if self.term_count() <= rhs.term_count() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Self::zero();
        for (ea, ca) in &small.terms {
            for (eb, cb) in &large.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Add<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;

    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Add for SparsePoly {
    type Output = SparsePoly;

    fn add(mut self, rhs: SparsePoly) -> SparsePoly {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Neg for SparsePoly {
    type Output = SparsePoly;

    fn neg(mut self) -> SparsePoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;

    fn neg(self) -> SparsePoly {
        -self.clone()
    }
}

impl Sub<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;

    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Sub for SparsePoly {
    type Output = SparsePoly;

    fn sub(self, rhs: SparsePoly) -> SparsePoly {
        &self - &rhs
    }
}

impl Mul<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;

    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.mul_ref(rhs)
    }
}

impl Mul for SparsePoly {
    type Output = SparsePoly;

    fn mul(self, rhs: SparsePoly) -> SparsePoly {
        self.mul_ref(&rhs)
    }
}

impl Zero for SparsePoly {
    fn zero() -> Self {
        SparsePoly::zero()
    }

    fn is_zero(&self) -> bool {
        SparsePoly::is_zero(self)
    }
}

impl One for SparsePoly {
    fn one() -> Self {
        SparsePoly::constant(1)
    }
}

impl fmt::Display for SparsePoly {
    /// Human-readable form, descending exponents: `x^6 + 2*x^4 + x^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.magnitude();
            match (k, c.sign()) {
                (0, Sign::Minus) => f.write_str("-")?,
                (0, _) => {}
                (_, Sign::Minus) => f.write_str(" - ")?,
                (_, _) => f.write_str(" + ")?,
            }
            let unit = magnitude.is_one();
            if e.is_zero() {
                write!(f, "{magnitude}")?;
                continue;
            }
            if !unit {
                write!(f, "{magnitude}*")?;
            }
            if e.is_one() {
                f.write_str("x")?;
            } else {
                write!(f, "x^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for SparsePoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&[e.to_string(), c.to_string()])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for SparsePoly {
    /// Accepts only the canonical form: strictly ascending exponents and no
    /// zero coefficients.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[String; 2]>::deserialize(deserializer)?;
        let mut terms = BTreeMap::new();
        let mut last: Option<BigUint> = None;
        for [e, c] in pairs {
            let e: BigUint = e
                .parse()
                .map_err(|err| D::Error::custom(format!("exponent `{e}`: {err}")))?;
            let c: BigInt = c
                .parse()
                .map_err(|err| D::Error::custom(format!("coefficient `{c}`: {err}")))?;
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficient"));
            }
            if last.as_ref().is_some_and(|l| l >= &e) {
                return Err(D::Error::custom("exponents must be strictly ascending"));
            }
            last = Some(e.clone());
            terms.insert(e, c);
        }
        Ok(Self { terms })
    }
}
