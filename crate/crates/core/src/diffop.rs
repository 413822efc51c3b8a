//! Differential operators `Σ c t^m ∂^r` on the circle in normal form
//! (powers of `t` to the left), together with Laurent polynomials as the
//! space they act on.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::numkernel::{falling_int, gbinom, sign_pow, Lin, Scalar};

/// A normal-ordered differential operator, keyed by `(m, r)` for `t^m ∂^r`.
#[derive(Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct DiffOp(pub Lin<(i64, u32)>);

/// A Laurent polynomial in `t`, keyed by exponent.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct LaurentPoly(pub Lin<i64>);

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp(Lin::new())
    }

    pub fn one() -> Self {
        DiffOp::term(0, 0, Scalar::one())
    }

    pub fn term(m: i64, r: u32, c: Scalar) -> Self {
        DiffOp(Lin::single((m, r), c))
    }

    /// `t^m ∂^r` with coefficient 1.
    pub fn mono(m: i64, r: u32) -> Self {
        DiffOp::term(m, r, Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u32, &Scalar)> {
        self.0.iter().map(|(&(m, r), c)| (m, r, c))
    }

    pub fn coeff(&self, m: i64, r: u32) -> Scalar {
        self.0.coeff(&(m, r))
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        DiffOp(self.0.plus(&other.0))
    }

    pub fn sub(&self, other: &DiffOp) -> DiffOp {
        DiffOp(self.0.minus(&other.0))
    }

    pub fn scale(&self, c: &Scalar) -> DiffOp {
        DiffOp(self.0.scaled(c))
    }

    /// Largest `∂`-order, or `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms().map(|(_, r, _)| r).max()
    }

    /// Normal-ordered product: `t^{m1}∂^{r1} · t^{m2}∂^{r2}
    /// = Σ_s C(r1,s) ⟨m2⟩_s t^{m1+m2-s} ∂^{r1+r2-s}`.
    pub fn dmul(&self, other: &DiffOp) -> DiffOp {
        let mut out = Lin::new();
        for (m1, r1, c1) in self.terms() {
            for (m2, r2, c2) in other.terms() {
                let base = c1 * c2;
                for s in 0..=r1 {
                    let coef = gbinom(r1 as i64, s) * falling_int(m2, s);
                    if coef.is_zero() {
                        continue;
                    }
                    out.add_term((m1 + m2 - s as i64, r1 + r2 - s), &base * &coef);
                }
            }
        }
        DiffOp(out)
    }

    /// The formal adjoint, sending `t^m ∂^r` to the normal form of
    /// `(-∂)^r t^m = Σ_s C(r,s) (-1)^r ⟨m⟩_s t^{m-s} ∂^{r-s}`.
    pub fn adjoint(&self) -> DiffOp {
        let mut out = Lin::new();
        for (m, r, c) in self.terms() {
            let sgn = sign_pow(r as i64);
            for s in 0..=r {
                let coef = gbinom(r as i64, s) * falling_int(m, s);
                if coef.is_zero() {
                    continue;
                }
                out.add_term((m - s as i64, r - s), c * &sgn * coef);
            }
        }
        DiffOp(out)
    }

    /// Action on Laurent polynomials: `t^m ∂^r · t^k = ⟨k⟩_r t^{k-r+m}`.
    pub fn apply(&self, p: &LaurentPoly) -> LaurentPoly {
        let mut out = Lin::new();
        for (m, r, c) in self.terms() {
            for (&k, ck) in p.0.iter() {
                let f = falling_int(k, r);
                if f.is_zero() {
                    continue;
                }
                out.add_term(k - r as i64 + m, c * ck * f);
            }
        }
        LaurentPoly(out)
    }

    /// Membership in the left ideal `𝔸 ∂^ell`: every term has `r ≥ ell`.
    pub fn in_left_ideal(&self, ell: u32) -> bool {
        self.terms().all(|(_, r, _)| r >= ell)
    }

    /// All terms have `m ≥ 0` (the subalgebra `𝔸₊`).
    pub fn is_nonneg_t(&self) -> bool {
        self.terms().all(|(m, _, _)| m >= 0)
    }

    /// All terms have `m < 0` (the subalgebra `𝔸₋`).
    pub fn is_neg_t(&self) -> bool {
        self.terms().all(|(m, _, _)| m < 0)
    }
}

impl LaurentPoly {
    pub fn mono(k: i64) -> Self {
        LaurentPoly(Lin::single(k, Scalar::one()))
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, r, c)| format!("({c})t^{m}∂^{r}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    m: i64,
    r: u32,
    c: Scalar,
}

#[derive(Serialize, Deserialize)]
struct DiffOpJson {
    terms: Vec<TermJson>,
}

impl Serialize for DiffOp {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        DiffOpJson {
            terms: self
                .terms()
                .map(|(m, r, c)| TermJson { m, r, c: c.clone() })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for DiffOp {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = DiffOpJson::deserialize(de)?;
        Ok(DiffOp(
            raw.terms.into_iter().map(|t| ((t.m, t.r), t.c)).collect(),
        ))
    }
}
