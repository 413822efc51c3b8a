//! Matrices over the differential-operator algebra with the central
//! extension by `κ`, the subalgebras cut out by a column-wise left
//! ideal (`gl`) and by the skew involutions (`o`, `sp`), and generator
//! constructors.
//!
//! The bracket of basis elements `t^{m1}∂^{r1}E_{i1 j1}` and
//! `t^{m2}∂^{r2}E_{i2 j2}` is the matrix commutator plus
//! `(-1)^{r1} δ_{i1 j2} δ_{j1 i2} δ_{r1+r2, m1+m2} r1! r2! C(m1, r1+r2+1) κ`.
//!
//! The involution used for `o` and `sp` is aware of the left ideal:
//! for `X = A ∂^{ℓ_j} E_{ij}` it returns `adjoint(A) ∂^{ℓ_i} E_{j* i*}`
//! with `i* = n + 1 - i`, optionally signed by `(-1)^{p(i)+p(j)}`.
//! On products it satisfies `θ(XY) = (-1)^{ℓ_j} θ(Y) θ(X)`, where `j` is
//! the contracted index; for admissible configurations this is the
//! uniform sign `(-1)^ε`, so `φ = -(-1)^ε θ` is a Lie automorphism and
//! the skew subalgebras are its fixed points.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diffop::DiffOp;
use crate::numkernel::{factorial, gbinom, sign_pow, Lin, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix index ({i},{j}) outside 1..={n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("term t^{m}∂^{r}E_{{{i},{j}}} is not in the left ideal of order {ell}")]
    NotInLeftIdeal {
        i: usize,
        j: usize,
        m: i64,
        r: u32,
        ell: u32,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Gl,
    O,
    Sp,
}

impl FromStr for Variant {
    type Err = AlgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Variant::Gl),
            "o" => Ok(Variant::O),
            "sp" => Ok(Variant::Sp),
            other => Err(AlgError::InvalidConfig(format!(
                "unknown variant `{other}`"
            ))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Gl => "gl",
            Variant::O => "o",
            Variant::Sp => "sp",
        })
    }
}

/// Size, column orders `ℓ`, parity `ε`, and which subalgebra is meant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EllConfig {
    pub n: usize,
    pub ell: Vec<u32>,
    pub eps: u8,
    pub variant: Variant,
}

impl EllConfig {
    /// Validated configuration: for `o`/`sp` every `ℓ_i` has the parity of
    /// `ε` and `ℓ_i = ℓ_{i*}`; for `sp` the size is even.
    pub fn new(variant: Variant, n: usize, ell: Vec<u32>, eps: u8) -> Result<Self, AlgError> {
        let cfg = EllConfig::spanning(variant, n, ell, eps)?;
        if variant != Variant::Gl {
            if let Some(&bad) = cfg.ell.iter().find(|&&l| l % 2 != eps as u32) {
                return Err(AlgError::InvalidConfig(format!(
                    "ℓ entry {bad} does not have the parity of ε = {eps}"
                )));
            }
        }
        Ok(cfg)
    }

    /// Configuration without the parity condition tying `ℓ` to `ε`. The
    /// skew generators are still well defined and span a subalgebra; this
    /// is used for spanning-family computations such as `ℓ = 0` with `ε = 1`.
    pub fn spanning(variant: Variant, n: usize, ell: Vec<u32>, eps: u8) -> Result<Self, AlgError> {
        if n == 0 {
            return Err(AlgError::InvalidConfig("n must be positive".into()));
        }
        if ell.len() != n {
            return Err(AlgError::InvalidConfig(format!(
                "ℓ has {} entries, expected {n}",
                ell.len()
            )));
        }
        if eps > 1 {
            return Err(AlgError::InvalidConfig("ε must be 0 or 1".into()));
        }
        if variant != Variant::Gl {
            for i in 1..=n {
                if ell[i - 1] != ell[n - i] {
                    return Err(AlgError::InvalidConfig(format!(
                        "ℓ must satisfy ℓ_i = ℓ_(n+1-i); fails at i = {i}"
                    )));
                }
            }
        }
        if variant == Variant::Sp && !n.is_multiple_of(2) {
            return Err(AlgError::InvalidConfig("sp requires even n".into()));
        }
        Ok(EllConfig {
            n,
            ell,
            eps,
            variant,
        })
    }

    pub fn gl(n: usize, ell: Vec<u32>) -> Result<Self, AlgError> {
        EllConfig::new(Variant::Gl, n, ell, 0)
    }

    pub fn ell_of(&self, j: usize) -> u32 {
        self.ell[j - 1]
    }

    /// `i* = n + 1 - i`.
    pub fn star(&self, i: usize) -> usize {
        self.n + 1 - i
    }

    /// Parity `p(i)`: 0 on the first half, 1 on the second half (even `n`).
    pub fn parity(&self, i: usize) -> i64 {
        if self.n.is_multiple_of(2) && i > self.n / 2 {
            1
        } else {
            0
        }
    }

    /// Sign in `X - sign·θ(X)` for the generator with matrix unit `E_{ij}`.
    pub fn skew_sign(&self, i: usize, j: usize) -> Scalar {
        match self.variant {
            Variant::Sp => sign_pow(self.eps as i64 + self.parity(i) + self.parity(j)),
            _ => sign_pow(self.eps as i64),
        }
    }
}

/// An element of the centrally extended matrix algebra, keyed by
/// `(i, j, m, r)` for `t^m ∂^r E_{ij}`, plus a `κ` coordinate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlHatElem {
    pub n: usize,
    pub terms: Lin<(usize, usize, i64, u32)>,
    pub kappa: Scalar,
}

impl GlHatElem {
    pub fn zero(n: usize) -> Self {
        GlHatElem {
            n,
            terms: Lin::new(),
            kappa: Scalar::zero(),
        }
    }

    pub fn kappa_only(n: usize, c: Scalar) -> Self {
        GlHatElem {
            n,
            terms: Lin::new(),
            kappa: c,
        }
    }

    /// `c · t^m ∂^r E_{ij}`.
    pub fn term(n: usize, i: usize, j: usize, m: i64, r: u32, c: Scalar) -> Self {
        assert!(
            (1..=n).contains(&i) && (1..=n).contains(&j),
            "matrix index out of range"
        );
        GlHatElem {
            n,
            terms: Lin::single((i, j, m, r), c),
            kappa: Scalar::zero(),
        }
    }

    pub fn basis(n: usize, i: usize, j: usize, m: i64, r: u32) -> Self {
        GlHatElem::term(n, i, j, m, r, Scalar::one())
    }

    /// `a · E_{ij}` for a differential operator `a`.
    pub fn from_entry(n: usize, i: usize, j: usize, a: &DiffOp) -> Self {
        let mut out = GlHatElem::zero(n);
        for (m, r, c) in a.terms() {
            out.terms.add_term((i, j, m, r), c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero() && self.kappa.is_zero()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, i64, u32, &Scalar)> {
        self.terms.iter().map(|(&(i, j, m, r), c)| (i, j, m, r, c))
    }

    /// The `(i,j)` entry as a differential operator.
    pub fn entry(&self, i: usize, j: usize) -> DiffOp {
        let mut out = Lin::new();
        for (a, b, m, r, c) in self.iter() {
            if a == i && b == j {
                out.add_term((m, r), c.clone());
            }
        }
        DiffOp(out)
    }

    pub fn add(&self, other: &GlHatElem) -> GlHatElem {
        assert_eq!(self.n, other.n, "dimension mismatch");
        GlHatElem {
            n: self.n,
            terms: self.terms.plus(&other.terms),
            kappa: &self.kappa + &other.kappa,
        }
    }

    pub fn sub(&self, other: &GlHatElem) -> GlHatElem {
        assert_eq!(self.n, other.n, "dimension mismatch");
        GlHatElem {
            n: self.n,
            terms: self.terms.minus(&other.terms),
            kappa: &self.kappa - &other.kappa,
        }
    }

    pub fn scale(&self, c: &Scalar) -> GlHatElem {
        GlHatElem {
            n: self.n,
            terms: self.terms.scaled(c),
            kappa: &self.kappa * c,
        }
    }

    /// The matrix part without `κ`.
    pub fn matrix_part(&self) -> GlHatElem {
        GlHatElem {
            n: self.n,
            terms: self.terms.clone(),
            kappa: Scalar::zero(),
        }
    }

    pub fn check_indices(&self) -> Result<(), AlgError> {
        for (i, j, _, _, _) in self.iter() {
            if !(1..=self.n).contains(&i) || !(1..=self.n).contains(&j) {
                return Err(AlgError::IndexOutOfRange { i, j, n: self.n });
            }
        }
        Ok(())
    }

    /// Associative matrix product of the matrix parts.
    pub fn mat_mul(&self, other: &GlHatElem) -> GlHatElem {
        let mut out = GlHatElem::zero(self.n);
        for (i1, j1, m1, r1, c1) in self.iter() {
            for (i2, j2, m2, r2, c2) in other.iter() {
                if j1 != i2 {
                    continue;
                }
                let prod = DiffOp::mono(m1, r1).dmul(&DiffOp::mono(m2, r2));
                let c = c1 * c2;
                for (m, r, cp) in prod.terms() {
                    out.terms.add_term((i1, j2, m, r), cp * &c);
                }
            }
        }
        out
    }

    /// Cocycle value: the `κ` coefficient of the bracket of the matrix parts.
    pub fn cocycle(&self, other: &GlHatElem) -> Scalar {
        let mut acc = Scalar::zero();
        for (i1, j1, m1, r1, c1) in self.iter() {
            for (i2, j2, m2, r2, c2) in other.iter() {
                acc += c1 * c2 * basis_cocycle((i1, j1, m1, r1), (i2, j2, m2, r2));
            }
        }
        acc
    }

    /// Largest `|m|` and `r` among the terms (used to size windows).
    pub fn extent(&self) -> (i64, u32) {
        let mut mm = 0;
        let mut rr = 0;
        for (_, _, m, r, _) in self.iter() {
            mm = mm.max(m.abs());
            rr = rr.max(r);
        }
        (mm, rr)
    }
}

/// The `κ` coefficient of `[t^{m1}∂^{r1}E_{i1 j1}, t^{m2}∂^{r2}E_{i2 j2}]`.
pub fn basis_cocycle(a: (usize, usize, i64, u32), b: (usize, usize, i64, u32)) -> Scalar {
    let (i1, j1, m1, r1) = a;
    let (i2, j2, m2, r2) = b;
    if i1 != j2 || j1 != i2 || (r1 + r2) as i64 != m1 + m2 {
        return Scalar::zero();
    }
    sign_pow(r1 as i64) * factorial(r1) * factorial(r2) * gbinom(m1, r1 + r2 + 1)
}

/// Lie bracket with the central term; `κ` coordinates of the inputs are
/// ignored because `κ` is central.
pub fn ghbracket(x: &GlHatElem, y: &GlHatElem) -> Result<GlHatElem, AlgError> {
    if x.n != y.n {
        return Err(AlgError::DimensionMismatch(x.n, y.n));
    }
    x.check_indices()?;
    y.check_indices()?;
    let mut out = x.mat_mul(y).sub(&y.mat_mul(x));
    out.kappa = x.cocycle(y);
    Ok(out)
}

/// Whether the bracket of two elements with all `m ≥ 0` has zero central part.
pub fn cocycle_positive_vanishes(x: &GlHatElem, y: &GlHatElem) -> Result<bool, AlgError> {
    for z in [x, y] {
        if z.iter().any(|(_, _, m, _, _)| m < 0) {
            return Err(AlgError::Precondition(
                "inputs must have all t-powers nonnegative".into(),
            ));
        }
    }
    Ok(ghbracket(x, y)?.kappa.is_zero())
}

/// The ideal-aware involution, with the `sp` parity signs when `dagger`.
fn involution(x: &GlHatElem, cfg: &EllConfig, dagger: bool) -> Result<GlHatElem, AlgError> {
    if x.n != cfg.n {
        return Err(AlgError::DimensionMismatch(x.n, cfg.n));
    }
    x.check_indices()?;
    let mut out = GlHatElem::zero(x.n);
    for (i, j, m, r, c) in x.iter() {
        let lj = cfg.ell_of(j);
        if r < lj {
            return Err(AlgError::NotInLeftIdeal {
                i,
                j,
                m,
                r,
                ell: lj,
            });
        }
        let head = DiffOp::mono(m, r - lj).adjoint();
        let image = head.dmul(&DiffOp::mono(0, cfg.ell_of(i)));
        let sign = if dagger {
            sign_pow(cfg.parity(i) + cfg.parity(j))
        } else {
            Scalar::one()
        };
        let (a, b) = (cfg.star(j), cfg.star(i));
        for (mm, rr, cc) in image.terms() {
            out.terms.add_term((a, b, mm, rr), c * cc * &sign);
        }
    }
    Ok(out)
}

/// The involution built from `E_{ij} ↦ E_{j* i*}` and the formal adjoint.
pub fn tau_ast(x: &GlHatElem, cfg: &EllConfig) -> Result<GlHatElem, AlgError> {
    involution(x, cfg, false)
}

/// As [`tau_ast`] with the extra sign `(-1)^{p(i)+p(j)}`.
pub fn tau_dag(x: &GlHatElem, cfg: &EllConfig) -> Result<GlHatElem, AlgError> {
    involution(x, cfg, true)
}

/// The involution attached to the configuration's variant (`*` for `o`,
/// `†` for `sp`).
pub fn tau(x: &GlHatElem, cfg: &EllConfig) -> Result<GlHatElem, AlgError> {
    involution(x, cfg, cfg.variant == Variant::Sp)
}

/// Membership in the subalgebra selected by `cfg`.
pub fn in_subalgebra(x: &GlHatElem, cfg: &EllConfig) -> bool {
    if x.n != cfg.n || x.check_indices().is_err() {
        return false;
    }
    if x.iter().any(|(_, j, _, r, _)| r < cfg.ell_of(j)) {
        return false;
    }
    match cfg.variant {
        Variant::Gl => true,
        _ => match tau(&x.matrix_part(), cfg) {
            Ok(img) => x
                .matrix_part()
                .add(&img.scale(&sign_pow(cfg.eps as i64)))
                .is_zero(),
            Err(_) => false,
        },
    }
}

/// The spanning generator `t^m ∂^{r+ℓ_j} E_{ij} - sign · (-∂)^r t^m ∂^{ℓ_i} E_{j* i*}`.
pub fn gen_skew(
    i: usize,
    j: usize,
    m: i64,
    r: u32,
    cfg: &EllConfig,
) -> Result<GlHatElem, AlgError> {
    if cfg.variant == Variant::Gl {
        return Err(AlgError::Precondition(
            "gen_skew needs variant o or sp".into(),
        ));
    }
    if !(1..=cfg.n).contains(&i) || !(1..=cfg.n).contains(&j) {
        return Err(AlgError::IndexOutOfRange { i, j, n: cfg.n });
    }
    let x = GlHatElem::basis(cfg.n, i, j, m, r + cfg.ell_of(j));
    let partner = DiffOp::mono(m, r)
        .adjoint()
        .dmul(&DiffOp::mono(0, cfg.ell_of(i)));
    let y = GlHatElem::from_entry(cfg.n, cfg.star(j), cfg.star(i), &partner);
    Ok(x.sub(&y.scale(&cfg.skew_sign(i, j))))
}

/// Skew generator key `(i, j, M, r)` for `gen_skew(i, j, M, r)`.
pub type GenKey = (usize, usize, i64, u32);

/// Writes an element of the skew subalgebra as a combination of skew
/// generators plus a central part.
///
/// Pivots on a term of highest `∂`-order. The generator on that term has
/// leading coefficient `1 - sign (-1)^r` when `j = i*` and `1` otherwise.
pub fn decompose_skew(x: &GlHatElem, cfg: &EllConfig) -> Result<(Lin<GenKey>, Scalar), AlgError> {
    let mut rest = x.clone();
    let mut out = Lin::new();
    let cap = 4 * (x.terms.len() + 1) * (x.terms.len() + 1) + 64;
    for _ in 0..cap {
        let pivot = rest
            .iter()
            .map(|(i, j, m, s, c)| (s, i, j, m, c.clone()))
            .max_by_key(|t| (t.0, t.1, t.2, t.3));
        let Some((s, i, j, m, c)) = pivot else {
            return Ok((out, rest.kappa));
        };
        let lj = cfg.ell_of(j);
        if s < lj {
            return Err(AlgError::NotInLeftIdeal {
                i,
                j,
                m,
                r: s,
                ell: lj,
            });
        }
        let r = s - lj;
        let g = gen_skew(i, j, m, r, cfg)?;
        let lead = g.terms.coeff(&(i, j, m, s));
        if lead.is_zero() {
            return Err(AlgError::Precondition(format!(
                "term ({i},{j},{m},{s}) is outside the skew subalgebra"
            )));
        }
        let k = &c / &lead;
        rest = rest.sub(&g.scale(&k));
        out.add_term((i, j, m, r), k);
    }
    Err(AlgError::Precondition(
        "skew decomposition did not terminate".into(),
    ))
}

/// The `∂`-minus-`t` degree `r - m` of a basis term; additive under the
/// bracket and zero on the central term.
pub fn degree(m: i64, r: u32) -> i64 {
    r as i64 - m
}

/// The skew-family grade `r - ℓ_j - m` of a basis term in column `j`.
pub fn skew_grade(cfg: &EllConfig, j: usize, m: i64, r: u32) -> i64 {
    r as i64 - cfg.ell_of(j) as i64 - m
}

/// The common degree of all terms, when homogeneous.
pub fn homogeneous_degree(x: &GlHatElem, grade: impl Fn(usize, i64, u32) -> i64) -> Option<i64> {
    let mut deg = None;
    for (_, j, m, r, _) in x.iter() {
        let d = grade(j, m, r);
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => return None,
            _ => {}
        }
    }
    deg
}

impl fmt::Debug for GlHatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .iter()
            .map(|(i, j, m, r, c)| format!("({c})t^{m}∂^{r}E{i}{j}"))
            .collect();
        if !self.kappa.is_zero() {
            parts.push(format!("({})κ", self.kappa));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct ElemTermJson {
    i: usize,
    j: usize,
    m: i64,
    r: u32,
    c: Scalar,
}

/// JSON form `{"n":..,"kappa":"..","terms":[{"i","j","m","r","c"}]}`.
#[derive(Serialize, Deserialize)]
pub struct GlHatJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default = "Scalar::zero")]
    pub kappa: Scalar,
    terms: Vec<ElemTermJson>,
}

impl GlHatJson {
    /// Convert to an element; `n` falls back to `default_n`, then to the
    /// largest index that occurs.
    pub fn into_elem(self, default_n: Option<usize>) -> Result<GlHatElem, AlgError> {
        let inferred = self.terms.iter().map(|t| t.i.max(t.j)).max().unwrap_or(1);
        let n = self.n.or(default_n).unwrap_or(inferred);
        let mut out = GlHatElem::zero(n);
        for t in self.terms {
            if !(1..=n).contains(&t.i) || !(1..=n).contains(&t.j) {
                return Err(AlgError::IndexOutOfRange { i: t.i, j: t.j, n });
            }
            out.terms.add_term((t.i, t.j, t.m, t.r), t.c);
        }
        out.kappa = self.kappa;
        Ok(out)
    }

    pub fn from_elem(x: &GlHatElem, with_n: bool) -> Self {
        GlHatJson {
            n: with_n.then_some(x.n),
            kappa: x.kappa.clone(),
            terms: x
                .iter()
                .map(|(i, j, m, r, c)| ElemTermJson {
                    i,
                    j,
                    m,
                    r,
                    c: c.clone(),
                })
                .collect(),
        }
    }
}

impl Serialize for GlHatElem {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        GlHatJson::from_elem(self, true).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GlHatElem {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        GlHatJson::deserialize(de)?
            .into_elem(None)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn w_infinity_central_terms() {
        for k in 0..=5 {
            let x = GlHatElem::basis(1, 1, 1, k, 0);
            let y = GlHatElem::basis(1, 1, 1, -k, 0);
            assert_eq!(ghbracket(&x, &y).unwrap(), GlHatElem::kappa_only(1, s(k)));
        }
    }

    #[test]
    fn bracket_ignores_input_kappa() {
        let x = GlHatElem::basis(2, 1, 2, 1, 1).add(&GlHatElem::kappa_only(2, s(7)));
        let y = GlHatElem::basis(2, 2, 1, -1, 0);
        let plain = ghbracket(&x.matrix_part(), &y).unwrap();
        assert_eq!(ghbracket(&x, &y).unwrap(), plain);
        assert!(ghbracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let x = GlHatElem::basis(2, 1, 2, 1, 1);
        let y = GlHatElem::basis(3, 1, 2, 1, 1);
        assert_eq!(ghbracket(&x, &y), Err(AlgError::DimensionMismatch(2, 3)));
    }

    #[test]
    fn positive_part_has_no_central_term() {
        let x = GlHatElem::basis(2, 1, 2, 1, 1);
        let y = GlHatElem::basis(2, 2, 1, 2, 1);
        assert!(cocycle_positive_vanishes(&x, &y).unwrap());
        let e = GlHatElem::basis(2, 1, 1, 0, 0);
        assert!(cocycle_positive_vanishes(&e, &e).unwrap());
        let neg = GlHatElem::basis(2, 1, 1, -1, 0);
        assert!(cocycle_positive_vanishes(&neg, &e).is_err());
    }

    #[test]
    fn involution_examples() {
        let o2 = EllConfig::new(Variant::O, 2, vec![0, 0], 0).unwrap();
        let e12 = GlHatElem::basis(2, 1, 2, 0, 0);
        assert_eq!(tau_ast(&e12, &o2).unwrap(), e12);
        let sp2 = EllConfig::new(Variant::Sp, 2, vec![0, 0], 0).unwrap();
        let e11 = GlHatElem::basis(2, 1, 1, 0, 0);
        assert_eq!(
            tau_dag(&e11, &sp2).unwrap(),
            GlHatElem::basis(2, 2, 2, 0, 0)
        );
        let e12sp = tau_dag(&e12, &sp2).unwrap();
        assert_eq!(e12sp, GlHatElem::term(2, 1, 2, 0, 0, s(-1)));
    }

    #[test]
    fn generator_examples() {
        let cfg = EllConfig::spanning(Variant::O, 2, vec![0, 0], 1).unwrap();
        let g = gen_skew(2, 1, -1, 0, &cfg).unwrap();
        assert_eq!(g, GlHatElem::term(2, 2, 1, -1, 0, s(2)));
        let cfg1 = EllConfig::new(Variant::O, 1, vec![1], 1).unwrap();
        let g1 = gen_skew(1, 1, 0, 0, &cfg1).unwrap();
        assert_eq!(g1, GlHatElem::term(1, 1, 1, 0, 1, s(2)));
        assert!(in_subalgebra(&g1, &cfg1));
    }

    #[test]
    fn membership_examples() {
        let gl = EllConfig::gl(2, vec![0, 2]).unwrap();
        assert!(!in_subalgebra(&GlHatElem::basis(2, 1, 2, 1, 0), &gl));
        assert!(in_subalgebra(&GlHatElem::basis(2, 1, 2, 1, 2), &gl));
        let o = EllConfig::new(Variant::O, 2, vec![1, 1], 1).unwrap();
        assert!(in_subalgebra(&GlHatElem::kappa_only(2, s(3)), &o));
        assert!(!in_subalgebra(&GlHatElem::basis(2, 1, 1, 0, 1), &o));
    }

    #[test]
    fn strict_config_checks() {
        assert!(EllConfig::new(Variant::O, 2, vec![0, 0], 1).is_err());
        assert!(EllConfig::new(Variant::O, 2, vec![1, 3], 1).is_err());
        assert!(EllConfig::new(Variant::Sp, 3, vec![0, 0, 0], 0).is_err());
        assert!(EllConfig::new(Variant::Sp, 2, vec![2, 2], 0).is_ok());
        assert!(EllConfig::spanning(Variant::O, 1, vec![0], 1).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let x = GlHatElem::basis(2, 2, 1, -1, 0);
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(
            j,
            r#"{"n":2,"kappa":"0","terms":[{"i":2,"j":1,"m":-1,"r":0,"c":"1"}]}"#
        );
        let back: GlHatElem = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
    }

    fn elem(n: usize, ell: Vec<u32>, positive: bool) -> impl Strategy<Value = GlHatElem> {
        prop::collection::vec((1..=n, 1..=n, -3i64..=3, 0u32..=3, -2i64..=2), 1..4).prop_map(
            move |ts| {
                let mut x = GlHatElem::zero(n);
                for (i, j, m, r, c) in ts {
                    let m = if positive { m.abs() } else { m };
                    x.terms
                        .add_term((i, j, m, r + ell[j - 1]), Scalar::from_int(c));
                }
                x
            },
        )
    }

    fn configs() -> impl Strategy<Value = EllConfig> {
        prop_oneof![
            Just(EllConfig::new(Variant::O, 2, vec![0, 0], 0).unwrap()),
            Just(EllConfig::new(Variant::O, 2, vec![1, 1], 1).unwrap()),
            Just(EllConfig::new(Variant::O, 3, vec![1, 3, 1], 1).unwrap()),
            Just(EllConfig::new(Variant::Sp, 2, vec![0, 0], 0).unwrap()),
            Just(EllConfig::new(Variant::Sp, 2, vec![1, 1], 1).unwrap()),
            Just(EllConfig::new(Variant::Sp, 4, vec![2, 0, 0, 2], 0).unwrap()),
        ]
    }

    fn skew_elem() -> impl Strategy<Value = (EllConfig, GlHatElem)> {
        configs().prop_flat_map(|cfg| {
            let n = cfg.n;
            let c2 = cfg.clone();
            prop::collection::vec((1..=n, 1..=n, -3i64..=3, 0u32..=2, -2i64..=2), 1..3).prop_map(
                move |ts| {
                    let mut x = GlHatElem::zero(n);
                    for (i, j, m, r, c) in ts {
                        x = x.add(
                            &gen_skew(i, j, m, r, &c2)
                                .unwrap()
                                .scale(&Scalar::from_int(c)),
                        );
                    }
                    (c2.clone(), x)
                },
            )
        })
    }

    proptest! {
        #[test]
        fn bracket_is_antisymmetric_and_satisfies_jacobi(
            x in elem(2, vec![0, 0], false), y in elem(2, vec![0, 0], false), z in elem(2, vec![0, 0], false)
        ) {
            let xy = ghbracket(&x, &y).unwrap();
            let yx = ghbracket(&y, &x).unwrap();
            prop_assert!(xy.add(&yx).is_zero());
            let a = ghbracket(&x, &ghbracket(&y, &z).unwrap()).unwrap();
            let b = ghbracket(&y, &ghbracket(&z, &x).unwrap()).unwrap();
            let c = ghbracket(&z, &ghbracket(&x, &y).unwrap()).unwrap();
            prop_assert!(a.add(&b).add(&c).is_zero());
        }

        #[test]
        fn positive_brackets_are_central_free(x in elem(2, vec![0, 0], true), y in elem(2, vec![0, 0], true)) {
            prop_assert!(cocycle_positive_vanishes(&x, &y).unwrap());
        }

        #[test]
        fn gl_ell_is_closed(x in elem(2, vec![1, 2], false), y in elem(2, vec![1, 2], false)) {
            let cfg = EllConfig::gl(2, vec![1, 2]).unwrap();
            prop_assert!(in_subalgebra(&x, &cfg));
            prop_assert!(in_subalgebra(&ghbracket(&x, &y).unwrap(), &cfg));
        }

        #[test]
        fn skew_generators_are_members_and_close((cfg, x) in skew_elem(), seed in 0usize..1000) {
            prop_assert!(in_subalgebra(&x, &cfg));
            let mut y = GlHatElem::zero(cfg.n);
            let n = cfg.n;
            let (i, j) = (seed % n + 1, (seed / n) % n + 1);
            y = y.add(&gen_skew(i, j, (seed % 5) as i64 - 2, (seed % 3) as u32, &cfg).unwrap());
            prop_assert!(in_subalgebra(&ghbracket(&x, &y).unwrap(), &cfg));
        }

        #[test]
        fn involution_is_involutive((cfg, x) in skew_elem(), y in elem(2, vec![0, 0], false)) {
            let back = tau(&tau(&x, &cfg).unwrap(), &cfg).unwrap();
            prop_assert_eq!(back, x.matrix_part());
            let o = EllConfig::new(Variant::O, 2, vec![0, 0], 0).unwrap();
            prop_assert_eq!(tau_ast(&tau_ast(&y, &o).unwrap(), &o).unwrap(), y.clone());
        }

        #[test]
        fn involution_reverses_products((cfg, x) in skew_elem(), (_, y) in skew_elem()) {
            prop_assume!(x.n == cfg.n && y.n == cfg.n);
            prop_assume!(in_subalgebra(&y, &cfg));
            let lhs = tau(&x.mat_mul(&y), &cfg).unwrap();
            let rhs = tau(&y, &cfg).unwrap().mat_mul(&tau(&x, &cfg).unwrap());
            prop_assert_eq!(lhs, rhs.scale(&sign_pow(cfg.eps as i64)));
        }

        #[test]
        fn plain_transpose_adjoint_is_antiautomorphism(x in elem(2, vec![0, 0], false), y in elem(2, vec![0, 0], false)) {
            let o = EllConfig::new(Variant::O, 2, vec![0, 0], 0).unwrap();
            let lhs = tau_ast(&x.mat_mul(&y), &o).unwrap();
            let rhs = tau_ast(&y, &o).unwrap().mat_mul(&tau_ast(&x, &o).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn gl_degree_is_additive(x in elem(2, vec![0, 0], false), y in elem(2, vec![0, 0], false)) {
            // brackets of homogeneous basis terms are homogeneous of the summed degree,
            // and the central term only appears in total degree 0
            for (i1, j1, m1, r1, _) in x.iter() {
                for (i2, j2, m2, r2, _) in y.iter() {
                    let a = GlHatElem::basis(2, i1, j1, m1, r1);
                    let b = GlHatElem::basis(2, i2, j2, m2, r2);
                    let br = ghbracket(&a, &b).unwrap();
                    let want = degree(m1, r1) + degree(m2, r2);
                    if let Some(d) = homogeneous_degree(&br, |_, m, r| degree(m, r)) {
                        prop_assert_eq!(d, want);
                    }
                    if !br.kappa.is_zero() {
                        prop_assert_eq!(want, 0);
                    }
                }
            }
        }
    }
}
