//! Exact scalar arithmetic and the small combinatorial kernel shared by
//! every other module: rationals, half-integer indices, falling
//! factorials, generalized binomials, the central correction
//! coefficients `Im`, and truncated power series in `q`.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarParseError {
    #[error("cannot parse `{0}` as a rational number")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// An exact rational number, always kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Scalar(BigRational::from_integer(v))
    }

    /// `p/q`; panics on `q == 0`, which is a programming error here.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// True when `2x` is an integer.
    pub fn is_half_integer_or_integer(&self) -> bool {
        (self * &Scalar::from_int(2)).is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn recip(&self) -> Self {
        Scalar(self.0.recip())
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

/// `(-1)^e` as a scalar.
pub fn sign_pow(e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let parse_int = |x: &str| {
            BigInt::from_str(x.trim()).map_err(|_| ScalarParseError::Malformed(s.to_string()))
        };
        match t.split_once('/') {
            None => Ok(Scalar::from_bigint(parse_int(t)?)),
            Some((p, q)) => {
                let p = parse_int(p)?;
                let q = parse_int(q)?;
                if q.is_zero() {
                    return Err(ScalarParseError::ZeroDenominator(s.to_string()));
                }
                Ok(Scalar(BigRational::new(p, q)))
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(de)? {
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(v) => Ok(Scalar::from_int(v)),
        }
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<i32> for Scalar {
    fn from(v: i32) -> Self {
        Scalar::from_int(v as i64)
    }
}

impl From<u32> for Scalar {
    fn from(v: u32) -> Self {
        Scalar::from_int(v as i64)
    }
}

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Scalar::from_bigint(v)
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((self.0).$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);
scalar_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        self.0 -= rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

/// An element of `Z ∪ (Z + 1/2)`, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt(doubled)
    }

    pub const fn from_int(v: i64) -> Self {
        HalfInt(2 * v)
    }

    /// The half-integer `v + 1/2`.
    pub const fn plus_half(v: i64) -> Self {
        HalfInt(2 * v + 1)
    }

    /// The half-integer `v - 1/2`.
    pub const fn minus_half(v: i64) -> Self {
        HalfInt(2 * v - 1)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    /// True for members of `Z + 1/2`.
    pub const fn is_half(self) -> bool {
        self.0.rem_euclid(2) == 1
    }

    pub const fn is_int(self) -> bool {
        self.0.rem_euclid(2) == 0
    }

    pub const fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub const fn is_negative(self) -> bool {
        self.0 < 0
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// For a member of `Z + 1/2`, the integer `self + 1/2`.
    pub fn up(self) -> i64 {
        debug_assert!(self.is_half());
        (self.0 + 1) / 2
    }

    /// For a member of `Z + 1/2`, the integer `self - 1/2`.
    pub fn down(self) -> i64 {
        debug_assert!(self.is_half());
        (self.0 - 1) / 2
    }

    /// Exact integer value when `self` is an integer.
    pub fn to_int(self) -> Option<i64> {
        self.is_int().then_some(self.0 / 2)
    }

    pub fn to_scalar(self) -> Scalar {
        Scalar::ratio(self.0, 2)
    }

    pub fn sign(self) -> i64 {
        self.0.signum()
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_int() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_i64(self.0)
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        Ok(HalfInt(i64::deserialize(de)?))
    }
}

/// The falling factorial `μ(μ-1)…(μ-m+1)`, equal to 1 for `m = 0`.
pub fn falling(mu: &Scalar, m: u32) -> Scalar {
    let mut acc = Scalar::one();
    let mut cur = mu.clone();
    let one = Scalar::one();
    for _ in 0..m {
        acc = &acc * &cur;
        cur = &cur - &one;
    }
    acc
}

/// Falling factorial at an integer argument.
pub fn falling_int(mu: i64, m: u32) -> Scalar {
    let mut acc = BigInt::one();
    for s in 0..m as i64 {
        acc *= BigInt::from(mu - s);
    }
    Scalar::from_bigint(acc)
}

pub fn factorial(m: u32) -> Scalar {
    falling_int(m as i64, m)
}

/// The binomial `⟨μ⟩_k / k!` for an arbitrary rational top.
pub fn binom(mu: &Scalar, k: u32) -> Scalar {
    falling(mu, k) / factorial(k)
}

/// The binomial `⟨m⟩_k / k!` for an integer top, possibly negative.
pub fn gbinom(m: i64, k: u32) -> Scalar {
    falling_int(m, k) / factorial(k)
}

/// The coefficient `Im_{r1,r2}` of `x^{r1} y^{r2} z^{-r1-r2-1}` in the
/// twisting correction, computed from its explicit double sum:
/// `Im_{r1,r2} = -Σ_{s=0}^{r1} C(ι, r1-s+r2+1) C(-ι, s)`.
pub fn im_coeff(iota: &Scalar, r1: u32, r2: u32) -> Scalar {
    let neg = -iota;
    let mut acc = Scalar::zero();
    for s in 0..=r1 {
        acc += binom(iota, r1 - s + r2 + 1) * binom(&neg, s);
    }
    -acc
}

/// A power series in `q` truncated after `q^order`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QSeries {
    pub order: usize,
    pub coeffs: Vec<Scalar>,
}

impl QSeries {
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); order + 1];
        coeffs[0] = Scalar::one();
        QSeries { order, coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series has at least its constant term"
        );
        QSeries {
            order: coeffs.len() - 1,
            coeffs,
        }
    }

    /// Truncated Cauchy product; the result has the smaller order.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let order = self.order.min(other.order);
        let mut coeffs = vec![Scalar::zero(); order + 1];
        for (a, ca) in self.coeffs.iter().enumerate().take(order + 1) {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate().take(order + 1 - a) {
                coeffs[a + b] += ca * cb;
            }
        }
        QSeries { order, coeffs }
    }

    /// `(1 - q^e)^{-d}` truncated at `order`, expanded as
    /// `Σ_k C(d+k-1, k) q^{ek}`.
    pub fn inverse_power(e: usize, d: u64, order: usize) -> QSeries {
        assert!(e >= 1, "exponent must be positive");
        let mut coeffs = vec![Scalar::zero(); order + 1];
        let mut k = 0usize;
        while e * k <= order {
            coeffs[e * k] = gbinom(d as i64 + k as i64 - 1, k as u32);
            k += 1;
        }
        QSeries { order, coeffs }
    }

    /// Integer coefficients when every coefficient is integral.
    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(Scalar::to_i64).collect()
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(Scalar::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `∏ (1 - q^e)^{-d}` over the given `(e, d)` factors, truncated at `order`.
/// Factors are multiplied one at a time using a division-free recurrence
/// for `(1 - q^e)^{-1}`, applied `d` times.
pub fn qseries_expand_product(factors: &[(usize, u64)], order: usize) -> QSeries {
    let mut coeffs = vec![Scalar::zero(); order + 1];
    coeffs[0] = Scalar::one();
    for &(e, d) in factors {
        assert!(e >= 1, "exponent must be positive");
        for _ in 0..d {
            for k in e..=order {
                let prev = coeffs[k - e].clone();
                coeffs[k] += prev;
            }
        }
    }
    QSeries { order, coeffs }
}

/// Generic finite linear combination over an ordered basis, with no
/// stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lin<K: Ord>(BTreeMap<K, Scalar>);

impl<K: Ord> Default for Lin<K> {
    fn default() -> Self {
        Lin(BTreeMap::new())
    }
}

impl<K: Ord + Clone> Lin<K> {
    pub fn new() -> Self {
        Lin(BTreeMap::new())
    }

    pub fn single(k: K, c: Scalar) -> Self {
        let mut out = Lin::new();
        out.add_term(k, c);
        out
    }

    pub fn add_term(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Lin<K>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add_assign(&mut self, other: &Lin<K>) {
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Lin<K>) {
        for (k, v) in other.iter() {
            self.add_term(k.clone(), -v);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Lin<K> {
        let mut out = Lin::new();
        out.add_scaled(self, c);
        out
    }

    pub fn plus(&self, other: &Lin<K>) -> Lin<K> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn minus(&self, other: &Lin<K>) -> Lin<K> {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn coeff(&self, k: &K) -> Scalar {
        self.0.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.0.keys()
    }

    pub fn map_keys<K2: Ord + Clone>(&self, f: impl Fn(&K) -> K2) -> Lin<K2> {
        let mut out = Lin::new();
        for (k, v) in self.iter() {
            out.add_term(f(k), v.clone());
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for Lin<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut out = Lin::new();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for Lin<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}
