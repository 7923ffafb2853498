//! Exact coefficient fields: the rationals with arbitrary-precision
//! integers, and prime fields `F_p` with canonical representatives in
//! `0..p-1`.
//!
//! Every algebraic module in this crate is generic over the [`Field`]
//! trait. A field value is a lightweight object describing the
//! arithmetic; elements are plain data (`BigRational` for `Q`, a `u64`
//! residue for `F_p`). There is no floating point anywhere: all
//! operations are exact and all representatives canonical.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact field arithmetic on elements of type `Self::Elem`.
///
/// Implementations must keep elements in canonical form: reduced
/// fraction with positive denominator over `Q`, residue in `0..p-1`
/// over `F_p`. All operations are pure; field objects are cheap to
/// clone and safe to share between threads.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Image of a signed integer.
    fn from_int(&self, n: i64) -> Self::Elem;

    /// Image of an arbitrary-precision integer.
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    /// Image of the fraction `num/den`. Fails when `den` maps to zero
    /// (e.g. a denominator divisible by `p` over `F_p`).
    fn from_ratio(&self, num: i64, den: i64) -> Result<Self::Elem> {
        if den == 0 {
            return Err(Error::Scalar("zero denominator".into()));
        }
        let d = self.from_int(den);
        self.div(&self.from_int(num), &d).ok_or_else(|| {
            Error::Scalar(format!(
                "denominator {den} is zero in characteristic {}",
                self.characteristic()
            ))
        })
    }

    /// 0 for the rationals, `p` for `F_p`.
    fn characteristic(&self) -> u64;

    fn display(&self, a: &Self::Elem) -> String;
}

/// The field of rational numbers. Elements are `BigRational` values,
/// which `num-rational` keeps reduced with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
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

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn display(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// The prime field `F_p`. Elements are residues in `0..p-1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Scalar(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Extended Euclid on (a, p).
        let (mut t, mut new_t): (i128, i128) = (0, 1);
        let (mut r, mut new_r): (i128, i128) = (self.p as i128, *a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1, "modulus is prime");
        Some(t.rem_euclid(self.p as i128) as u64)
    }

    fn from_int(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }

    fn from_bigint(&self, n: &BigInt) -> u64 {
        use num_integer::Integer;
        let m = n.mod_floor(&BigInt::from(self.p));
        u64::try_from(m).expect("residue fits in u64")
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn display(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// Runtime description of a coefficient field, as it appears in CLI
/// flags and spec files: `Q` or `Fp:<p>`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn parse(text: &str) -> Result<FieldSpec> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = t
            .strip_prefix("fp:")
            .or_else(|| t.strip_prefix("Fp:"))
            .or_else(|| t.strip_prefix("FP:"))
        {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Scalar(format!("bad prime in field spec `{text}`")))?;
            PrimeField::new(p)?;
            return Ok(FieldSpec::Prime(p));
        }
        Err(Error::Scalar(format!(
            "unknown field `{text}` (expected `q` or `fp:<p>`)"
        )))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<FieldSpec> {
        FieldSpec::parse(&s)
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

/// An exact rational literal, used for run parameters such as `k`.
/// Parsed from `int` or `int/int` text.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RatLit {
    pub num: i64,
    pub den: i64,
}

impl RatLit {
    pub const ONE: RatLit = RatLit { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<RatLit> {
        if den == 0 {
            return Err(Error::Scalar("zero denominator".into()));
        }
        Ok(RatLit { num, den })
    }

    pub fn parse(text: &str) -> Result<RatLit> {
        let t = text.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: i64 = n
            .parse()
            .map_err(|_| Error::Scalar(format!("bad rational literal `{text}`")))?;
        let den: i64 = d
            .parse()
            .map_err(|_| Error::Scalar(format!("bad rational literal `{text}`")))?;
        RatLit::new(num, den)
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Image in the field `f`; fails when the denominator vanishes there.
    pub fn in_field<F: Field>(&self, f: &F) -> Result<F::Elem> {
        f.from_ratio(self.num, self.den)
    }
}

impl fmt::Display for RatLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// True when a rational is stored in canonical form. `num-rational`
/// guarantees this by construction; the check exists so tests can
/// assert the invariant on computed values.
pub fn rational_is_canonical(a: &BigRational) -> bool {
    use num_integer::Integer;
    if a.denom().is_negative() || a.denom().is_zero() {
        return false;
    }
    a.numer().gcd(a.denom()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_canonical_arithmetic() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.add(&3, &4), 2);
        assert_eq!(f5.neg(&2), 3);
        assert_eq!(f5.mul(&3, &4), 2);
        assert_eq!(f5.inv(&3), Some(2));
        assert_eq!(f5.from_int(-7), 3);
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(6).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn inverses_over_f2() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(f2.inv(&1), Some(1));
        assert_eq!(f2.inv(&0), None);
        assert_eq!(f2.add(&1, &1), 0);
    }

    #[test]
    fn rational_ops_stay_canonical() {
        let q = Rationals;
        let a = q.from_ratio(2, 4).unwrap();
        assert_eq!(q.display(&a), "1/2");
        assert!(rational_is_canonical(&a));
        let b = q.from_ratio(1, -3).unwrap();
        assert!(rational_is_canonical(&b));
        assert_eq!(q.display(&b), "-1/3");
        let c = q.add(&a, &a);
        assert!(q.is_one(&c));
    }

    #[test]
    fn ratio_with_denominator_divisible_by_p_is_rejected() {
        let f3 = PrimeField::new(3).unwrap();
        assert!(f3.from_ratio(1, 3).is_err());
        assert_eq!(f3.from_ratio(7, 2).unwrap(), f3.mul(&1, &f3.inv(&2).unwrap()));
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("fp:7").unwrap(), FieldSpec::Prime(7));
        assert!(FieldSpec::parse("fp:9").is_err());
        assert!(FieldSpec::parse("r").is_err());
        assert_eq!(FieldSpec::Prime(2).to_string(), "Fp:2");
    }

    #[test]
    fn rat_lit_parsing() {
        assert_eq!(RatLit::parse("7/2").unwrap(), RatLit { num: 7, den: 2 });
        assert_eq!(RatLit::parse("-3").unwrap(), RatLit { num: -3, den: 1 });
        assert!(RatLit::parse("1/0").is_err());
        assert!(RatLit::parse("x").is_err());
    }
}
