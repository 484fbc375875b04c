use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::PolyError;

/// Runtime descriptor of a coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
    Integers,
    IntegersMod(u64),
    Rationals,
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::IntegersMod(m) => write!(f, "Z/{m}"),
            CoefficientRing::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = PolyError;

    /// Accepts `Z`, `Q`, `Fp`-style `F7`, and `Z/7`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let modulus = |digits: &str| -> Result<Self, PolyError> {
            let m: u64 = digits
                .parse()
                .map_err(|_| PolyError::UnknownRing(s.to_string()))?;
            IntegersMod::new(m).map(|r| r.descriptor())
        };
        match t {
            "Z" | "ZZ" => Ok(CoefficientRing::Integers),
            "Q" | "QQ" => Ok(CoefficientRing::Rationals),
            _ => {
                if let Some(rest) = t.strip_prefix("Z/") {
                    modulus(rest)
                } else if let Some(rest) = t.strip_prefix('F') {
                    modulus(rest)
                } else {
                    Err(PolyError::UnknownRing(s.to_string()))
                }
            }
        }
    }
}

/// A commutative coefficient ring with exact arithmetic.
///
/// Ring values carry whatever runtime data the arithmetic needs (a modulus,
/// for instance), so every operation goes through `&self`.
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn descriptor(&self) -> CoefficientRing;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// Image of a rational number, when the ring contains it.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `a / b` when some `q` in the ring satisfies `q * b == a`.
    fn divide_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    /// Sign used when printing; residues are never negative.
    fn is_negative(&self, a: &Self::Elem) -> bool;
    fn to_text(&self, a: &Self::Elem) -> String;

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, k: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn descriptor(&self) -> CoefficientRing {
        CoefficientRing::Integers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigInt> {
        q.is_integer().then(|| q.to_integer())
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn divide_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn is_negative(&self, a: &BigInt) -> bool {
        a.is_negative()
    }
    fn to_text(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

/// Residues modulo `m >= 2`, stored in `[0, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntegersMod {
    modulus: u64,
}

impl IntegersMod {
    pub fn new(modulus: u64) -> Result<Self, PolyError> {
        if modulus < 2 {
            return Err(PolyError::InvalidModulus(modulus));
        }
        Ok(Self { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_field(&self) -> bool {
        is_prime(self.modulus)
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("residue fits in u64")
    }

    fn inverse(&self, a: u64) -> Option<u64> {
        let e = (a as i128).extended_gcd(&(self.modulus as i128));
        if e.gcd != 1 {
            return None;
        }
        Some(e.x.rem_euclid(self.modulus as i128) as u64)
    }
}

impl Ring for IntegersMod {
    type Elem = u64;

    fn descriptor(&self) -> CoefficientRing {
        CoefficientRing::IntegersMod(self.modulus)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        self.reduce_big(n)
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        let num = self.reduce_big(q.numer());
        let den = self.reduce_big(q.denom());
        self.inverse(den).map(|inv| self.mul(&num, &inv))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn divide_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        if let Some(inv) = self.inverse(*b) {
            return Some(self.mul(a, &inv));
        }
        // b is a zero divisor: search the (small) residue set for a quotient.
        if self.modulus > 1 << 20 {
            return None;
        }
        (0..self.modulus).find(|q| self.mul(q, b) == *a)
    }
    fn is_negative(&self, _a: &u64) -> bool {
        false
    }
    fn to_text(&self, a: &u64) -> String {
        a.to_string()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> CoefficientRing {
        CoefficientRing::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn divide_exact(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        (!b.is_zero()).then(|| a / b)
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
    fn to_text(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= m {
        if m.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}
