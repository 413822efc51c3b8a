//! Infinite matrices `ℰ_{l,k}` indexed by half-integers, with finite
//! support and a central coordinate `κ₀`.
//!
//! The product is `ℰ_{a,b} ℰ_{c,d} = δ_{b+c,0} ℰ_{a,d}`. Every central
//! extension used here has the shape
//! `δ_{l1+k2,0} δ_{l2+k1,0} [F1(l1) F2(l2) - F1(k1) F2(k2)] κ₀`
//! for a pair of step functions `(F1, F2)`. The standard pair is
//! `F1 = F2 = H` with `H(l) = 1` for `l > 0` and `0` otherwise; the
//! parametric pairs differ from `H` at finitely many indices, so a
//! [`StepPair`] stores only those deviations. This keeps alternative
//! readings of a step function swappable as plain data.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numkernel::{HalfInt, Lin, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GlInfError {
    #[error("index {0} is not a half-odd integer")]
    NotHalfOdd(HalfInt),
    #[error("cocycle parameters missing or inconsistent: {0}")]
    BadCocycleParameters(String),
    #[error("element is not in the Cartan subalgebra: entry ({0}, {1})")]
    NonCartan(HalfInt, HalfInt),
}

/// `H(l) = 1` for `l > 0`, else 0.
pub fn step(l: HalfInt) -> i64 {
    i64::from(l.is_positive())
}

/// Division `l = l_Q n + l_R` with `l_R ∈ 1..=n`.
pub fn div_rem_one_based(l: i64, n: i64) -> (i64, i64) {
    let r = (l - 1).rem_euclid(n) + 1;
    ((l - r) / n, r)
}

/// A finite-support infinite matrix with a central coordinate.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct InfMat {
    pub terms: Lin<(HalfInt, HalfInt)>,
    pub kappa0: Scalar,
}

impl InfMat {
    pub fn zero() -> Self {
        InfMat::default()
    }

    /// `c · ℰ_{l,k}`; both indices must be half-odd.
    pub fn term(l: HalfInt, k: HalfInt, c: Scalar) -> Self {
        assert!(l.is_half() && k.is_half(), "ℰ indices must lie in Z + 1/2");
        InfMat {
            terms: Lin::single((l, k), c),
            kappa0: Scalar::zero(),
        }
    }

    /// `ℰ_{l,k}` given doubled indices.
    pub fn e(l2: i64, k2: i64) -> Self {
        InfMat::term(
            HalfInt::from_doubled(l2),
            HalfInt::from_doubled(k2),
            Scalar::one(),
        )
    }

    pub fn kappa(c: Scalar) -> Self {
        InfMat {
            terms: Lin::new(),
            kappa0: c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero() && self.kappa0.is_zero()
    }

    pub fn iter(&self) -> impl Iterator<Item = (HalfInt, HalfInt, &Scalar)> {
        self.terms.iter().map(|(&(l, k), c)| (l, k, c))
    }

    pub fn add(&self, o: &InfMat) -> InfMat {
        InfMat {
            terms: self.terms.plus(&o.terms),
            kappa0: &self.kappa0 + &o.kappa0,
        }
    }

    pub fn sub(&self, o: &InfMat) -> InfMat {
        InfMat {
            terms: self.terms.minus(&o.terms),
            kappa0: &self.kappa0 - &o.kappa0,
        }
    }

    pub fn scale(&self, c: &Scalar) -> InfMat {
        InfMat {
            terms: self.terms.scaled(c),
            kappa0: &self.kappa0 * c,
        }
    }

    pub fn matrix_part(&self) -> InfMat {
        InfMat {
            terms: self.terms.clone(),
            kappa0: Scalar::zero(),
        }
    }

    pub fn check(&self) -> Result<(), GlInfError> {
        for (l, k, _) in self.iter() {
            for x in [l, k] {
                if !x.is_half() {
                    return Err(GlInfError::NotHalfOdd(x));
                }
            }
        }
        Ok(())
    }
}

/// Associative product; `κ₀` coordinates are ignored.
pub fn imul(a: &InfMat, b: &InfMat) -> InfMat {
    let mut out = InfMat::zero();
    for (l1, l2, c1) in a.iter() {
        for (k1, k2, c2) in b.iter() {
            if l2 + k1 == HalfInt::from_int(0) {
                out.terms.add_term((l1, k2), c1 * c2);
            }
        }
    }
    out
}

/// A pair of step functions stored as finite deviations from `H`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StepPair {
    /// Indices (doubled) where `F1` differs from `H`, with the value of `F1`.
    pub f1: BTreeMap<i64, i64>,
    /// Indices (doubled) where `F2` differs from `H`, with the value of `F2`.
    pub f2: BTreeMap<i64, i64>,
}

impl StepPair {
    pub fn f1(&self, l: HalfInt) -> i64 {
        self.f1
            .get(&l.doubled())
            .copied()
            .unwrap_or_else(|| step(l))
    }

    pub fn f2(&self, l: HalfInt) -> i64 {
        self.f2
            .get(&l.doubled())
            .copied()
            .unwrap_or_else(|| step(l))
    }

    fn tabulate(bound: i64, f1: impl Fn(HalfInt) -> i64, f2: impl Fn(HalfInt) -> i64) -> StepPair {
        let mut out = StepPair::default();
        for d in (-2 * bound - 1..=2 * bound + 1).step_by(2) {
            let l = HalfInt::from_doubled(d);
            if f1(l) != step(l) {
                out.f1.insert(d, f1(l));
            }
            if f2(l) != step(l) {
                out.f2.insert(d, f2(l));
            }
        }
        out
    }

    /// Central value for the basis pair `(ℰ_{l1,l2}, ℰ_{k1,k2})`.
    pub fn value(&self, l1: HalfInt, l2: HalfInt, k1: HalfInt, k2: HalfInt) -> i64 {
        if (l1 + k2).doubled() != 0 || (l2 + k1).doubled() != 0 {
            return 0;
        }
        self.f1(l1) * self.f2(l2) - self.f1(k1) * self.f2(k2)
    }

    /// Whether `F2(b) = 1 - F1(-b)` on the stored deviations, the condition
    /// under which the functional equals `tr(diag(F1)[X, Y])`.
    pub fn is_complementary(&self) -> bool {
        let keys: BTreeSet<i64> = self
            .f1
            .keys()
            .map(|d| -d)
            .chain(self.f2.keys().copied())
            .collect();
        keys.into_iter().all(|d| {
            let b = HalfInt::from_doubled(d);
            self.f2(b) == 1 - self.f1(-b)
        })
    }

    /// The finite-support function `F1 - H`, as `(doubled index, value)`.
    pub fn diag_shift(&self) -> Vec<(HalfInt, i64)> {
        self.f1
            .iter()
            .map(|(&d, &v)| (HalfInt::from_doubled(d), v - step(HalfInt::from_doubled(d))))
            .filter(|(_, v)| *v != 0)
            .collect()
    }
}

/// Which central extension to use in [`ibracket`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CocycleKind {
    Standard,
    /// Shifted steps `H(l + (m_{(l+1/2)_R} - ι₀) n)` and
    /// `H(l + (ι₀ - m_{(-l+1/2)_R}) n)` with `n = m.len()`.
    Alpha {
        iota0: i64,
        m: Vec<i64>,
    },
    /// Steps `Ĥ₁`, `Ĥ₂` attached to an integer twist `ι` and orders `ℓ`.
    Beta {
        iota: i64,
        ell: Vec<i64>,
    },
    /// Explicit deviations from `H`.
    Table(StepPair),
}

impl CocycleKind {
    pub fn steps(&self) -> Result<StepPair, GlInfError> {
        match self {
            CocycleKind::Standard => Ok(StepPair::default()),
            CocycleKind::Table(t) => Ok(t.clone()),
            CocycleKind::Alpha { iota0, m } => {
                if m.is_empty() {
                    return Err(GlInfError::BadCocycleParameters(
                        "α needs a nonempty m".into(),
                    ));
                }
                Ok(alpha_steps(*iota0, m))
            }
            CocycleKind::Beta { iota, ell } => {
                if ell.is_empty() {
                    return Err(GlInfError::BadCocycleParameters(
                        "β needs a nonempty ℓ".into(),
                    ));
                }
                Ok(beta_steps(*iota, ell))
            }
        }
    }
}

/// The step pair of the `α` family.
pub fn alpha_steps(iota0: i64, m: &[i64]) -> StepPair {
    let n = m.len() as i64;
    let mi = |l: HalfInt, neg: bool| {
        let base = if neg { (-l).up() } else { l.up() };
        m[(div_rem_one_based(base, n).1 - 1) as usize]
    };
    let f1 = |l: HalfInt| step(l + HalfInt::from_int((mi(l, false) - iota0) * n));
    let f2 = |l: HalfInt| step(l + HalfInt::from_int((iota0 - mi(l, true)) * n));
    let bound = (m.iter().map(|x| x.abs()).max().unwrap_or(0) + iota0.abs() + 1) * n;
    StepPair::tabulate(bound, f1, f2)
}

/// `Ĥ₁(l) = 1` iff `nι < l < 0`, or `l > 0` and `l > (ι - ℓ_{(l+1/2)_R}) n`.
pub fn beta_h1(iota: i64, ell: &[i64], l: HalfInt) -> i64 {
    let n = ell.len() as i64;
    let x = l.to_scalar();
    let lr = ell[(div_rem_one_based(l.up(), n).1 - 1) as usize];
    let a = Scalar::from_int(n * iota) < x && x.is_negative();
    let b = l.is_positive() && x > Scalar::from_int((iota - lr) * n);
    i64::from(a || b)
}

/// `Ĥ₂(l) = 1` iff `l > 0` and `l > -ιn`, or `(ℓ_{(-l+1/2)_R} - ι) n < l < 0`.
pub fn beta_h2(iota: i64, ell: &[i64], l: HalfInt) -> i64 {
    let n = ell.len() as i64;
    let x = l.to_scalar();
    let lr = ell[(div_rem_one_based((-l).up(), n).1 - 1) as usize];
    let a = l.is_positive() && x > Scalar::from_int(-iota * n);
    let b = Scalar::from_int((lr - iota) * n) < x && x.is_negative();
    i64::from(a || b)
}

/// The step pair of the `β` family, read with the inequalities above.
pub fn beta_steps(iota: i64, ell: &[i64]) -> StepPair {
    let n = ell.len() as i64;
    let bound = (ell.iter().map(|x| x.abs()).max().unwrap_or(0) + iota.abs() + 1) * n;
    StepPair::tabulate(bound, |l| beta_h1(iota, ell, l), |l| beta_h2(iota, ell, l))
}

/// The `κ₀` coefficient contributed by the pair `(a, b)` under `steps`.
pub fn cocycle_value(a: &InfMat, b: &InfMat, steps: &StepPair) -> Scalar {
    let mut acc = Scalar::zero();
    for (l1, l2, c1) in a.iter() {
        for (k1, k2, c2) in b.iter() {
            let v = steps.value(l1, l2, k1, k2);
            if v != 0 {
                acc += c1 * c2 * Scalar::from_int(v);
            }
        }
    }
    acc
}

/// Commutator of the matrix parts plus the selected central term.
pub fn ibracket(a: &InfMat, b: &InfMat, kind: &CocycleKind) -> Result<InfMat, GlInfError> {
    a.check()?;
    b.check()?;
    let steps = kind.steps()?;
    let mut out = imul(a, b).sub(&imul(b, a));
    out.kappa0 = cocycle_value(a, b, &steps);
    Ok(out)
}

/// The three skew families of infinite matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkewKind {
    OD,
    OB,
    Sp,
}

fn sp_sign(l: HalfInt, k: HalfInt) -> i64 {
    if l.sign() * k.sign() < 0 {
        1
    } else {
        -1
    }
}

/// The index pair that `(l, k)` is tied to, and the factor `f` with
/// `c(l,k) = f · c(partner)`.
fn skew_partner(kind: SkewKind, l: HalfInt, k: HalfInt) -> ((HalfInt, HalfInt), i64) {
    let one = HalfInt::from_int(1);
    match kind {
        SkewKind::OD => ((k, l), -1),
        SkewKind::OB => ((k - one, l + one), -1),
        SkewKind::Sp => ((k, l), -sp_sign(l, k)),
    }
}

/// Whether the matrix part satisfies the linear symmetry of `kind`.
pub fn in_skew(a: &InfMat, kind: SkewKind) -> bool {
    let keys: BTreeSet<(HalfInt, HalfInt)> = a
        .terms
        .keys()
        .flat_map(|&(l, k)| [(l, k), skew_partner(kind, l, k).0])
        .collect();
    keys.into_iter().all(|(l, k)| {
        let (p, f) = skew_partner(kind, l, k);
        a.terms.coeff(&(l, k)) == a.terms.coeff(&p) * Scalar::from_int(f)
    })
}

/// The spanning element of `kind` attached to `(l, k)`.
pub fn skew_generator(kind: SkewKind, l: HalfInt, k: HalfInt) -> InfMat {
    let (p, f) = skew_partner(kind, l, k);
    if p == (l, k) {
        return if f == 1 {
            InfMat::term(l, k, Scalar::one())
        } else {
            InfMat::zero()
        };
    }
    InfMat::term(l, k, Scalar::one()).add(&InfMat::term(p.0, p.1, Scalar::from_int(f)))
}

/// A linear function on the Cartan subalgebra spanned by `ℰ_{l,-l}` and `κ₀`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct WeightFn {
    pub kappa0_val: Scalar,
    /// `l ↦ λ(ℰ_{l,-l})`, finite support.
    pub diag: BTreeMap<HalfInt, Scalar>,
}

impl WeightFn {
    pub fn new(kappa0_val: Scalar) -> Self {
        WeightFn {
            kappa0_val,
            diag: BTreeMap::new(),
        }
    }

    pub fn with(mut self, l: HalfInt, v: Scalar) -> Self {
        if v.is_zero() {
            self.diag.remove(&l);
        } else {
            self.diag.insert(l, v);
        }
        self
    }

    pub fn at(&self, l: HalfInt) -> Scalar {
        self.diag.get(&l).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn supp(&self) -> BTreeSet<HalfInt> {
        self.diag
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(l, _)| *l)
            .collect()
    }
}

/// `λ(h)` for `h` in the Cartan subalgebra.
pub fn weight_eval(lambda: &WeightFn, h: &InfMat) -> Result<Scalar, GlInfError> {
    let mut acc = &h.kappa0 * &lambda.kappa0_val;
    for (l, k, c) in h.iter() {
        if (l + k).doubled() != 0 {
            return Err(GlInfError::NonCartan(l, k));
        }
        acc += c * lambda.at(l);
    }
    Ok(acc)
}

/// Membership in the weight set used for level `-m` bosonic tensor powers:
/// `λ(κ₀) = -m`, `-sgn(s) λ(ℰ_{s,-s}) ∈ ℕ`, and the support lies in one of
/// the windows `{3/2 - r, …, m + 1/2 - r}` for `r ∈ 1..=m+1`.
pub fn in_gamma(lambda: &WeightFn, m: u32) -> bool {
    if lambda.kappa0_val != Scalar::from_int(-(m as i64)) {
        return false;
    }
    for (l, v) in &lambda.diag {
        let w = if l.is_positive() { -v } else { v.clone() };
        if !w.is_integer() || w.is_negative() {
            return false;
        }
    }
    let supp = lambda.supp();
    (1..=m as i64 + 1).any(|r| {
        let lo = HalfInt::from_doubled(3 - 2 * r);
        let hi = HalfInt::from_doubled(2 * m as i64 + 1 - 2 * r);
        supp.iter().all(|s| lo <= *s && *s <= hi)
    })
}

/// Transport of the loop-matrix basis element `E_{ij} t_1^{L} t_2^{K}`
/// (with `L, K ∈ Z + 1/2`) to `ℰ_{(L-1/2)n+i-1/2, (K+1/2)n-j+1/2}`.
pub fn loop_to_inf(
    n: usize,
    i: usize,
    j: usize,
    big_l: HalfInt,
    big_k: HalfInt,
) -> (HalfInt, HalfInt) {
    let n = n as i64;
    let a = HalfInt::minus_half(big_l.down() * n + i as i64);
    let b = HalfInt::plus_half(big_k.up() * n - j as i64);
    (a, b)
}

/// Inverse of [`loop_to_inf`]: returns `(i, j, L, K)`.
pub fn inf_to_loop(n: usize, a: HalfInt, b: HalfInt) -> (usize, usize, HalfInt, HalfInt) {
    let nn = n as i64;
    let (q, i) = div_rem_one_based(a.up(), nn);
    let (q2, j) = div_rem_one_based(-b.down(), nn);
    (
        i as usize,
        j as usize,
        HalfInt::plus_half(q),
        HalfInt::minus_half(-q2),
    )
}

/// An element of the loop-matrix algebra: `(i, j, L, K) ↦ coefficient`.
pub type LoopElem = Lin<(usize, usize, HalfInt, HalfInt)>;

/// Bracket of loop-matrix elements with the standard central term
/// `δ δ [H(L1)H(L2) - H(K1)H(K2)] tr(ab) κ₀`; returns `(matrix part, κ₀)`.
pub fn loop_bracket(x: &LoopElem, y: &LoopElem) -> (LoopElem, Scalar) {
    let zero = HalfInt::from_int(0);
    let mut out = LoopElem::new();
    let mut k0 = Scalar::zero();
    for (&(i1, j1, l1, l2), c1) in x.iter() {
        for (&(i2, j2, k1, k2), c2) in y.iter() {
            let c = c1 * c2;
            if l2 + k1 == zero && j1 == i2 {
                out.add_term((i1, j2, l1, k2), c.clone());
            }
            if l1 + k2 == zero && j2 == i1 {
                out.add_term((i2, j1, k1, l2), -c.clone());
            }
            if l1 + k2 == zero && l2 + k1 == zero && j1 == i2 && j2 == i1 {
                let h = step(l1) * step(l2) - step(k1) * step(k2);
                k0 += c * Scalar::from_int(h);
            }
        }
    }
    (out, k0)
}

impl fmt::Debug for InfMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .iter()
            .map(|(l, k, c)| format!("({c})E[{l},{k}]"))
            .collect();
        if !self.kappa0.is_zero() {
            parts.push(format!("({})κ0", self.kappa0));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct InfTermJson {
    l2: i64,
    k2: i64,
    c: Scalar,
}

#[derive(Serialize, Deserialize)]
struct InfMatJson {
    kappa0: Scalar,
    terms: Vec<InfTermJson>,
}

impl Serialize for InfMat {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        InfMatJson {
            kappa0: self.kappa0.clone(),
            terms: self
                .iter()
                .map(|(l, k, c)| InfTermJson {
                    l2: l.doubled(),
                    k2: k.doubled(),
                    c: c.clone(),
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for InfMat {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = InfMatJson::deserialize(de)?;
        let mut out = InfMat::kappa(raw.kappa0);
        for t in raw.terms {
            out.terms.add_term(
                (HalfInt::from_doubled(t.l2), HalfInt::from_doubled(t.k2)),
                t.c,
            );
        }
        out.check().map_err(serde::de::Error::custom)?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(d: i64) -> HalfInt {
        HalfInt::from_doubled(d)
    }

    #[test]
    fn products() {
        assert_eq!(imul(&InfMat::e(1, -1), &InfMat::e(1, -1)), InfMat::e(1, -1));
        assert!(imul(&InfMat::e(1, -1), &InfMat::e(-1, 1)).is_zero());
        assert_eq!(imul(&InfMat::e(5, -3), &InfMat::e(3, 7)), InfMat::e(5, 7));
    }

    #[test]
    fn simple_root_relations() {
        for ld in [-5, -3, 1, 3] {
            let l = h(ld);
            let one = HalfInt::from_int(1);
            let x = InfMat::term(l + one, -l, Scalar::one());
            let y = InfMat::term(l, -l - one, Scalar::one());
            let want = InfMat::term(l + one, -l - one, Scalar::one()).sub(&InfMat::term(
                l,
                -l,
                Scalar::one(),
            ));
            assert_eq!(ibracket(&x, &y, &CocycleKind::Standard).unwrap(), want);
        }
        let got = ibracket(&InfMat::e(1, 1), &InfMat::e(-1, -1), &CocycleKind::Standard).unwrap();
        let want = InfMat::e(1, -1)
            .sub(&InfMat::e(-1, 1))
            .add(&InfMat::kappa(Scalar::one()));
        assert_eq!(got, want);
    }

    #[test]
    fn division_helper() {
        assert_eq!(div_rem_one_based(5, 2), (2, 1));
        assert_eq!(div_rem_one_based(4, 2), (1, 2));
        assert_eq!(div_rem_one_based(0, 3), (-1, 3));
        assert_eq!(div_rem_one_based(-1, 3), (-1, 2));
    }

    #[test]
    fn parametric_families_reduce_to_standard() {
        assert_eq!(alpha_steps(0, &[0]), StepPair::default());
        assert_eq!(alpha_steps(0, &[0, 0, 0]), StepPair::default());
        assert_eq!(beta_steps(0, &[0, 1]), StepPair::default());
        assert_eq!(beta_steps(0, &[3]), StepPair::default());
    }

    #[test]
    fn parametric_families_are_complementary() {
        for (i0, m) in [(1, vec![1, 1]), (-1, vec![0, 2]), (2, vec![0, 1, 3])] {
            assert!(alpha_steps(i0, &m).is_complementary());
        }
        for (i, l) in [(1, vec![0, 0]), (-2, vec![1, 3]), (3, vec![2])] {
            assert!(beta_steps(i, &l).is_complementary());
        }
    }

    #[test]
    fn beta_table_spot_values() {
        // n = 1, ι = 1, ℓ = (0): Ĥ₁ = 1 exactly for l > 1, Ĥ₂ = 1 exactly for l > -1.
        let t = beta_steps(1, &[0]);
        assert_eq!(t.f1(h(1)), 0);
        assert_eq!(t.f1(h(3)), 1);
        assert_eq!(t.f2(h(1)), 1);
        assert_eq!(t.f2(h(-1)), 1);
        assert_eq!(t.f2(h(-3)), 0);
        // n = 1, ι = -1, ℓ = (0): Ĥ₁ adds -1/2, Ĥ₂ drops 1/2.
        let t = beta_steps(-1, &[0]);
        assert_eq!(t.f1(h(-1)), 1);
        assert_eq!(t.f2(h(1)), 0);
        assert_eq!(t.f2(h(3)), 1);
    }

    #[test]
    fn skew_predicates() {
        assert!(in_skew(
            &InfMat::e(3, 1).sub(&InfMat::e(1, 3)),
            SkewKind::OD
        ));
        assert!(in_skew(&InfMat::e(1, 1), SkewKind::Sp));
        assert!(!in_skew(&InfMat::e(1, -1), SkewKind::OD));
        assert!(in_skew(
            &skew_generator(SkewKind::OB, h(3), h(-5)),
            SkewKind::OB
        ));
        assert!(!in_skew(&InfMat::e(1, 1), SkewKind::OD));
    }

    #[test]
    fn weights_and_gamma() {
        let lam = WeightFn::new(Scalar::from_int(1)).with(h(1), Scalar::from_int(-1));
        assert_eq!(
            weight_eval(&lam, &InfMat::kappa(Scalar::one())).unwrap(),
            Scalar::one()
        );
        assert_eq!(
            weight_eval(&lam, &InfMat::e(1, -1)).unwrap(),
            Scalar::from_int(-1)
        );
        assert!(weight_eval(&lam, &InfMat::e(1, 1)).is_err());
        let bos = WeightFn::new(Scalar::from_int(-1)).with(h(1), Scalar::from_int(-3));
        assert!(in_gamma(&bos, 1));
        let wide = WeightFn::new(Scalar::from_int(-1))
            .with(h(3), Scalar::from_int(-1))
            .with(h(-3), Scalar::from_int(1));
        assert!(!in_gamma(&wide, 1));
        assert!(in_gamma(&WeightFn::new(Scalar::from_int(-2)), 2));
    }

    #[test]
    fn loop_index_round_trip() {
        for n in 1..4usize {
            for i in 1..=n {
                for j in 1..=n {
                    for ld in (-7..8).step_by(2) {
                        for kd in (-7..8).step_by(2) {
                            let (a, b) = loop_to_inf(n, i, j, h(ld), h(kd));
                            assert!(a.is_half() && b.is_half());
                            assert_eq!(inf_to_loop(n, a, b), (i, j, h(ld), h(kd)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let x = InfMat::e(1, -1);
        assert_eq!(
            serde_json::to_string(&x).unwrap(),
            r#"{"kappa0":"0","terms":[{"l2":1,"k2":-1,"c":"1"}]}"#
        );
        assert!(serde_json::from_str::<InfMat>(
            r#"{"kappa0":"0","terms":[{"l2":2,"k2":-1,"c":"1"}]}"#
        )
        .is_err());
    }

    fn halfodd(b: i64) -> impl Strategy<Value = HalfInt> {
        (-b..b).prop_map(HalfInt::plus_half)
    }

    fn infmat() -> impl Strategy<Value = InfMat> {
        prop::collection::vec((halfodd(4), halfodd(4), -2i64..=2), 1..5).prop_map(|ts| {
            let mut x = InfMat::zero();
            for (l, k, c) in ts {
                x = x.add(&InfMat::term(l, k, Scalar::from_int(c)));
            }
            x
        })
    }

    fn kinds() -> impl Strategy<Value = CocycleKind> {
        prop_oneof![
            Just(CocycleKind::Standard),
            Just(CocycleKind::Alpha {
                iota0: 0,
                m: vec![0]
            }),
            Just(CocycleKind::Alpha {
                iota0: 1,
                m: vec![1, 1]
            }),
            Just(CocycleKind::Alpha {
                iota0: -1,
                m: vec![0, 2]
            }),
            Just(CocycleKind::Beta {
                iota: 1,
                ell: vec![0, 1]
            }),
            Just(CocycleKind::Beta {
                iota: -1,
                ell: vec![2]
            }),
        ]
    }

    fn jacobi(x: &InfMat, y: &InfMat, z: &InfMat, k: &CocycleKind) -> InfMat {
        let a = ibracket(x, &ibracket(y, z, k).unwrap(), k).unwrap();
        let b = ibracket(y, &ibracket(z, x, k).unwrap(), k).unwrap();
        let c = ibracket(z, &ibracket(x, y, k).unwrap(), k).unwrap();
        a.add(&b).add(&c)
    }

    fn loop_elem(n: usize) -> impl Strategy<Value = LoopElem> {
        prop::collection::vec((1..=n, 1..=n, halfodd(3), halfodd(3), -2i64..=2), 1..4).prop_map(
            |ts| {
                ts.into_iter()
                    .map(|(i, j, l, k, c)| ((i, j, l, k), Scalar::from_int(c)))
                    .collect()
            },
        )
    }

    fn transport(n: usize, x: &LoopElem) -> InfMat {
        let mut out = InfMat::zero();
        for (&(i, j, l, k), c) in x.iter() {
            let (a, b) = loop_to_inf(n, i, j, l, k);
            out = out.add(&InfMat::term(a, b, c.clone()));
        }
        out
    }

    proptest! {
        #[test]
        fn every_kind_satisfies_jacobi(x in infmat(), y in infmat(), z in infmat(), k in kinds()) {
            prop_assert!(jacobi(&x, &y, &z, &k).is_zero());
        }

        #[test]
        fn product_is_associative(x in infmat(), y in infmat(), z in infmat()) {
            prop_assert_eq!(imul(&imul(&x, &y), &z), imul(&x, &imul(&y, &z)));
        }

        #[test]
        fn loop_bracket_transports((n, x, y) in (1usize..4).prop_flat_map(|n| (Just(n), loop_elem(n), loop_elem(n)))) {
            let (m, k0) = loop_bracket(&x, &y);
            let mut want = transport(n, &m);
            want.kappa0 = k0;
            let got = ibracket(&transport(n, &x), &transport(n, &y), &CocycleKind::Standard).unwrap();
            prop_assert_eq!(got, want);
        }

        #[test]
        fn skew_kinds_close(kind in prop_oneof![Just(SkewKind::OD), Just(SkewKind::OB), Just(SkewKind::Sp)],
                            a in prop::collection::vec((halfodd(3), halfodd(3)), 1..3),
                            b in prop::collection::vec((halfodd(3), halfodd(3)), 1..3)) {
            let build = |v: &Vec<(HalfInt, HalfInt)>| v.iter().fold(InfMat::zero(), |acc, &(l, k)| acc.add(&skew_generator(kind, l, k)));
            let x = build(&a);
            let y = build(&b);
            prop_assert!(in_skew(&x, kind) && in_skew(&y, kind));
            let br = ibracket(&x, &y, &CocycleKind::Standard).unwrap();
            prop_assert!(in_skew(&br, kind));
        }
    }
}
