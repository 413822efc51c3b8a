//! Fermionic and bosonic Fock spaces with their actions of the centrally
//! extended infinite-matrix algebra.
//!
//! Variables carry negative half-integer indices. Positive-index symbols
//! denote derivations: for `l > 0`, `θ_l = ∂/∂θ̄_{-l}` and
//! `θ̄_l = ∂/∂θ_{-l}`; on the bosonic side `x_l = ∂/∂x̄_{-l}` and
//! `x̄_l = -∂/∂x_{-l}`.
//!
//! A fermionic monomial is stored in canonical order: all `θ̄` factors
//! (increasing index) to the left of all `θ` factors (increasing index).
//! Odd derivations act from the left, picking up `(-1)` for every odd
//! factor they pass.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::glinf::{step, InfMat, StepPair, WeightFn};
use crate::numkernel::{HalfInt, Lin, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FockError {
    #[error("vector is not homogeneous in charge")]
    Inhomogeneous,
    #[error("tensor factors must be nonempty")]
    EmptyTensor,
    #[error("malformed monomial: {0}")]
    Malformed(String),
}

/// An odd generator of the exterior algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OddVar {
    Bar(HalfInt),
    Theta(HalfInt),
}

/// A square-free fermionic monomial in canonical order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FermMonomial(Vec<OddVar>);

impl FermMonomial {
    pub fn one() -> Self {
        FermMonomial(Vec::new())
    }

    /// Builds the canonical monomial from index lists, returning the sign
    /// relating `∏ θ̄ · ∏ θ` in the given order to canonical order, or
    /// `None` when a variable repeats.
    pub fn from_lists(
        bars: &[HalfInt],
        thetas: &[HalfInt],
    ) -> Result<Option<(Self, i64)>, FockError> {
        for x in bars.iter().chain(thetas) {
            if !x.is_negative() || !x.is_half() {
                return Err(FockError::Malformed(format!(
                    "index {x} must be negative and half-odd"
                )));
            }
        }
        let mut v = Lin::single(FermMonomial::one(), Scalar::one());
        for &t in thetas.iter().rev() {
            v = ferm_gen(OddVar::Theta(t), &v);
        }
        for &b in bars.iter().rev() {
            v = ferm_gen(OddVar::Bar(b), &v);
        }
        let first = v
            .iter()
            .next()
            .map(|(m, c)| (m.clone(), c.to_i64().unwrap_or(0)));
        Ok(first)
    }

    pub fn vars(&self) -> &[OddVar] {
        &self.0
    }

    pub fn bars(&self) -> Vec<HalfInt> {
        self.0
            .iter()
            .filter_map(|v| {
                if let OddVar::Bar(l) = v {
                    Some(*l)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn thetas(&self) -> Vec<HalfInt> {
        self.0
            .iter()
            .filter_map(|v| {
                if let OddVar::Theta(l) = v {
                    Some(*l)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn charge(&self) -> i64 {
        self.thetas().len() as i64 - self.bars().len() as i64
    }

    /// Largest `|index|`, doubled; 0 for the empty monomial.
    pub fn reach(&self) -> i64 {
        self.0
            .iter()
            .map(|v| match v {
                OddVar::Bar(l) | OddVar::Theta(l) => l.doubled().abs(),
            })
            .max()
            .unwrap_or(0)
    }

    /// Left multiplication by a variable, `None` if it is already present.
    fn mul_left(&self, x: OddVar) -> Option<(FermMonomial, i64)> {
        match self.0.binary_search(&x) {
            Ok(_) => None,
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, x);
                Some((FermMonomial(v), if pos % 2 == 0 { 1 } else { -1 }))
            }
        }
    }

    /// Left derivation by a variable.
    fn deriv_left(&self, x: OddVar) -> Option<(FermMonomial, i64)> {
        let pos = self.0.binary_search(&x).ok()?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some((FermMonomial(v), if pos % 2 == 0 { 1 } else { -1 }))
    }
}

impl fmt::Debug for FermMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for v in &self.0 {
            match v {
                OddVar::Bar(l) => write!(f, "θ̄[{l}]")?,
                OddVar::Theta(l) => write!(f, "θ[{l}]")?,
            }
        }
        Ok(())
    }
}

/// Apply the generator `θ_l` or `θ̄_l` (any sign of `l`) to a vector.
pub fn ferm_gen(x: OddVar, v: &Lin<FermMonomial>) -> Lin<FermMonomial> {
    let (neg, partner) = match x {
        OddVar::Bar(l) => (l.is_negative(), OddVar::Theta(-l)),
        OddVar::Theta(l) => (l.is_negative(), OddVar::Bar(-l)),
    };
    let mut out = Lin::new();
    for (m, c) in v.iter() {
        let r = if neg {
            m.mul_left(x)
        } else {
            m.deriv_left(partner)
        };
        if let Some((m2, s)) = r {
            out.add_term(m2, c * Scalar::from_int(s));
        }
    }
    out
}

/// `ℰ_{l,k}` on the fermionic Fock space: `θ̄_l θ_k`, except
/// `-θ_k θ̄_l` when `-k = l > 0`.
pub fn ferm_act(l: HalfInt, k: HalfInt, v: &Lin<FermMonomial>) -> Lin<FermMonomial> {
    if l.is_positive() && (l + k).doubled() == 0 {
        ferm_gen(OddVar::Theta(k), &ferm_gen(OddVar::Bar(l), v)).scaled(&Scalar::from_int(-1))
    } else {
        ferm_gen(OddVar::Bar(l), &ferm_gen(OddVar::Theta(k), v))
    }
}

/// A bosonic monomial: exponents of `x_l` and `x̄_l` for negative `l`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BoseMonomial {
    pub xs: BTreeMap<HalfInt, u32>,
    pub xbars: BTreeMap<HalfInt, u32>,
}

impl BoseMonomial {
    pub fn one() -> Self {
        BoseMonomial::default()
    }

    pub fn charge(&self) -> i64 {
        let s = |m: &BTreeMap<HalfInt, u32>| m.values().map(|&e| e as i64).sum::<i64>();
        s(&self.xs) - s(&self.xbars)
    }

    pub fn reach(&self) -> i64 {
        self.xs
            .keys()
            .chain(self.xbars.keys())
            .map(|l| l.doubled().abs())
            .max()
            .unwrap_or(0)
    }

    fn bump(map: &mut BTreeMap<HalfInt, u32>, l: HalfInt) {
        *map.entry(l).or_insert(0) += 1;
    }

    fn lower(map: &mut BTreeMap<HalfInt, u32>, l: HalfInt) -> Option<u32> {
        let e = *map.get(&l)?;
        if e == 1 {
            map.remove(&l);
        } else {
            map.insert(l, e - 1);
        }
        Some(e)
    }
}

impl fmt::Debug for BoseMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.xs.is_empty() && self.xbars.is_empty() {
            return write!(f, "1");
        }
        for (l, e) in &self.xbars {
            write!(f, "x̄[{l}]^{e}")?;
        }
        for (l, e) in &self.xs {
            write!(f, "x[{l}]^{e}")?;
        }
        Ok(())
    }
}

/// An even generator of the Weyl algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvenVar {
    X(HalfInt),
    XBar(HalfInt),
}

/// Apply `x_l` or `x̄_l` (any sign of `l`) to a vector.
pub fn bose_gen(g: EvenVar, v: &Lin<BoseMonomial>) -> Lin<BoseMonomial> {
    let mut out = Lin::new();
    for (m, c) in v.iter() {
        let mut m2 = m.clone();
        match g {
            EvenVar::X(l) if l.is_negative() => {
                BoseMonomial::bump(&mut m2.xs, l);
                out.add_term(m2, c.clone());
            }
            EvenVar::XBar(l) if l.is_negative() => {
                BoseMonomial::bump(&mut m2.xbars, l);
                out.add_term(m2, c.clone());
            }
            EvenVar::X(l) => {
                if let Some(e) = BoseMonomial::lower(&mut m2.xbars, -l) {
                    out.add_term(m2, c * Scalar::from_int(e as i64));
                }
            }
            EvenVar::XBar(l) => {
                if let Some(e) = BoseMonomial::lower(&mut m2.xs, -l) {
                    out.add_term(m2, c * Scalar::from_int(-(e as i64)));
                }
            }
        }
    }
    out
}

/// `ℰ_{l,k}` on the bosonic Fock space: `x̄_l x_k`, normal ordered so that
/// the creation operator stands to the left.
pub fn bose_act(l: HalfInt, k: HalfInt, v: &Lin<BoseMonomial>) -> Lin<BoseMonomial> {
    if l.is_positive() && k.is_negative() {
        bose_gen(EvenVar::X(k), &bose_gen(EvenVar::XBar(l), v))
    } else {
        bose_gen(EvenVar::XBar(l), &bose_gen(EvenVar::X(k), v))
    }
}

/// A module over the centrally extended infinite-matrix algebra whose
/// vectors are finite combinations of `Key`s.
pub trait GlInfModule {
    type Key: Ord + Clone + fmt::Debug;

    fn act_mono(&self, l: HalfInt, k: HalfInt, m: &Self::Key) -> Lin<Self::Key>;

    /// The scalar by which `κ₀` acts.
    fn kappa0(&self) -> Scalar;

    /// Doubled bound `M`: `ℰ_{a,b}` kills the monomial unless `a ≤ M` and
    /// `b ≤ M`, or `a + b = 0`. Returns 0 for the vacuum; callers that need
    /// a half-odd bound clamp to 1.
    fn reach(&self, m: &Self::Key) -> i64;

    fn vacuum(&self) -> Self::Key;

    fn act(&self, l: HalfInt, k: HalfInt, v: &Lin<Self::Key>) -> Lin<Self::Key> {
        let mut out = Lin::new();
        for (m, c) in v.iter() {
            out.add_scaled(&self.act_mono(l, k, m), c);
        }
        out
    }

    /// Action of a general element, including its `κ₀` part.
    fn act_inf(&self, x: &InfMat, v: &Lin<Self::Key>) -> Lin<Self::Key> {
        let mut out = v.scaled(&(&x.kappa0 * &self.kappa0()));
        for (l, k, c) in x.iter() {
            out.add_scaled(&self.act(l, k, v), c);
        }
        out
    }

    fn reach_vec(&self, v: &Lin<Self::Key>) -> i64 {
        v.keys().map(|m| self.reach(m)).max().unwrap_or(0)
    }

    /// `∂ = Σ_l l ℰ_{-1-l,l}`, summed over the indices that can act.
    fn translation(&self, v: &Lin<Self::Key>) -> Lin<Self::Key> {
        let mut out = Lin::new();
        for (m, c) in v.iter() {
            let r = self.reach(m).max(1);
            for d in (-2 - r..=r).step_by(2) {
                let l = HalfInt::from_doubled(d);
                let a = HalfInt::from_doubled(-2 - d);
                out.add_scaled(&self.act_mono(a, l, m), &(c * l.to_scalar()));
            }
        }
        out
    }
}

/// The fermionic Fock space, `κ₀ = 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Fermionic;

/// The bosonic Fock space, `κ₀ = -1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Bosonic;

impl GlInfModule for Fermionic {
    type Key = FermMonomial;
    fn act_mono(&self, l: HalfInt, k: HalfInt, m: &FermMonomial) -> Lin<FermMonomial> {
        ferm_act(l, k, &Lin::single(m.clone(), Scalar::one()))
    }
    fn kappa0(&self) -> Scalar {
        Scalar::one()
    }
    fn reach(&self, m: &FermMonomial) -> i64 {
        m.reach()
    }
    fn vacuum(&self) -> FermMonomial {
        FermMonomial::one()
    }
}

impl GlInfModule for Bosonic {
    type Key = BoseMonomial;
    fn act_mono(&self, l: HalfInt, k: HalfInt, m: &BoseMonomial) -> Lin<BoseMonomial> {
        bose_act(l, k, &Lin::single(m.clone(), Scalar::one()))
    }
    fn kappa0(&self) -> Scalar {
        Scalar::from_int(-1)
    }
    fn reach(&self, m: &BoseMonomial) -> i64 {
        m.reach()
    }
    fn vacuum(&self) -> BoseMonomial {
        BoseMonomial::one()
    }
}

/// The `χ`-fold tensor power with the diagonal action.
#[derive(Clone, Debug)]
pub struct TensorPower<M> {
    pub base: M,
    pub chi: usize,
}

impl<M: GlInfModule> TensorPower<M> {
    /// The pure tensor `w_1 ⊗ ⋯ ⊗ w_χ` expanded in the monomial basis.
    pub fn pure(&self, factors: &[Lin<M::Key>]) -> Result<Lin<Vec<M::Key>>, FockError> {
        if factors.is_empty() || factors.len() != self.chi {
            return Err(FockError::EmptyTensor);
        }
        let mut acc: Lin<Vec<M::Key>> = Lin::single(Vec::new(), Scalar::one());
        for f in factors {
            let mut next = Lin::new();
            for (w, c) in acc.iter() {
                for (m, d) in f.iter() {
                    let mut w2 = w.clone();
                    w2.push(m.clone());
                    next.add_term(w2, c * d);
                }
            }
            acc = next;
        }
        Ok(acc)
    }
}

impl<M: GlInfModule> GlInfModule for TensorPower<M> {
    type Key = Vec<M::Key>;
    fn act_mono(&self, l: HalfInt, k: HalfInt, w: &Vec<M::Key>) -> Lin<Vec<M::Key>> {
        let mut out = Lin::new();
        for (i, m) in w.iter().enumerate() {
            for (m2, c) in self.base.act_mono(l, k, m).iter() {
                let mut w2 = w.clone();
                w2[i] = m2.clone();
                out.add_term(w2, c.clone());
            }
        }
        out
    }
    fn kappa0(&self) -> Scalar {
        self.base.kappa0() * Scalar::from_int(self.chi as i64)
    }
    fn reach(&self, w: &Vec<M::Key>) -> i64 {
        w.iter().map(|m| self.base.reach(m)).max().unwrap_or(0)
    }
    fn vacuum(&self) -> Vec<M::Key> {
        vec![self.base.vacuum(); self.chi]
    }
}

/// A module with the action shifted on the diagonal,
/// `ℰ_{a,-a} ↦ ℰ_{a,-a} + shift(a) κ₀`, which trades the standard central
/// extension for another one in the same cohomology class.
#[derive(Clone, Debug)]
pub struct Twisted<M> {
    pub base: M,
    pub shift: BTreeMap<HalfInt, Scalar>,
}

impl<M: GlInfModule> Twisted<M> {
    /// Twist turning a module for the standard extension into one for the
    /// extension given by a complementary step pair `(F1, F2)`:
    /// `shift(a) = H(a) - F1(a)`.
    pub fn for_steps(base: M, steps: &StepPair) -> Self {
        let shift = steps
            .f1
            .iter()
            .map(|(&d, &v)| {
                let a = HalfInt::from_doubled(d);
                (a, Scalar::from_int(step(a) - v))
            })
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Twisted { base, shift }
    }
}

impl<M: GlInfModule> GlInfModule for Twisted<M> {
    type Key = M::Key;
    fn act_mono(&self, l: HalfInt, k: HalfInt, m: &M::Key) -> Lin<M::Key> {
        let mut out = self.base.act_mono(l, k, m);
        if (l + k).doubled() == 0 {
            if let Some(s) = self.shift.get(&l) {
                out.add_term(m.clone(), s * &self.base.kappa0());
            }
        }
        out
    }
    fn kappa0(&self) -> Scalar {
        self.base.kappa0()
    }
    fn reach(&self, m: &M::Key) -> i64 {
        let extra = self
            .shift
            .keys()
            .map(|a| a.doubled().abs())
            .max()
            .unwrap_or(0);
        self.base.reach(m).max(extra)
    }
    fn vacuum(&self) -> M::Key {
        self.base.vacuum()
    }
}

/// Which Fock space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Fermionic,
    Bosonic,
}

/// A vector in either Fock space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FockVector {
    Fermionic(Lin<FermMonomial>),
    Bosonic(Lin<BoseMonomial>),
}

impl FockVector {
    pub fn space(&self) -> Space {
        match self {
            FockVector::Fermionic(_) => Space::Fermionic,
            FockVector::Bosonic(_) => Space::Bosonic,
        }
    }

    pub fn vacuum(space: Space) -> Self {
        match space {
            Space::Fermionic => {
                FockVector::Fermionic(Lin::single(FermMonomial::one(), Scalar::one()))
            }
            Space::Bosonic => FockVector::Bosonic(Lin::single(BoseMonomial::one(), Scalar::one())),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FockVector::Fermionic(v) => v.is_zero(),
            FockVector::Bosonic(v) => v.is_zero(),
        }
    }

    /// `ℰ_{l,k}` applied with the rule of the vector's space.
    pub fn act(&self, l: HalfInt, k: HalfInt) -> FockVector {
        match self {
            FockVector::Fermionic(v) => FockVector::Fermionic(ferm_act(l, k, v)),
            FockVector::Bosonic(v) => FockVector::Bosonic(bose_act(l, k, v)),
        }
    }

    pub fn act_inf(&self, x: &InfMat) -> FockVector {
        match self {
            FockVector::Fermionic(v) => FockVector::Fermionic(Fermionic.act_inf(x, v)),
            FockVector::Bosonic(v) => FockVector::Bosonic(Bosonic.act_inf(x, v)),
        }
    }

    pub fn translation(&self) -> FockVector {
        match self {
            FockVector::Fermionic(v) => FockVector::Fermionic(Fermionic.translation(v)),
            FockVector::Bosonic(v) => FockVector::Bosonic(Bosonic.translation(v)),
        }
    }
}

/// `#θ - #θ̄` (or `#x - #x̄`) of a homogeneous vector; the zero vector has
/// charge 0.
pub fn charge(v: &FockVector) -> Result<i64, FockError> {
    let charges: Vec<i64> = match v {
        FockVector::Fermionic(v) => v.keys().map(FermMonomial::charge).collect(),
        FockVector::Bosonic(v) => v.keys().map(BoseMonomial::charge).collect(),
    };
    match charges.split_first() {
        None => Ok(0),
        Some((c, rest)) if rest.iter().all(|x| x == c) => Ok(*c),
        _ => Err(FockError::Inhomogeneous),
    }
}

/// The highest-weight vector of charge `k`.
pub fn hw_vector(space: Space, k: i64) -> FockVector {
    let n = k.unsigned_abs() as i64;
    match space {
        Space::Fermionic => {
            let mut v = Lin::single(FermMonomial::one(), Scalar::one());
            for j in (0..n).rev() {
                let idx = HalfInt::minus_half(-j);
                let var = if k > 0 {
                    OddVar::Theta(idx)
                } else {
                    OddVar::Bar(idx)
                };
                v = ferm_gen(var, &v);
            }
            FockVector::Fermionic(v)
        }
        Space::Bosonic => {
            let mut m = BoseMonomial::one();
            if n > 0 {
                let target = if k > 0 { &mut m.xs } else { &mut m.xbars };
                target.insert(HalfInt::from_doubled(-1), n as u32);
            }
            FockVector::Bosonic(Lin::single(m, Scalar::one()))
        }
    }
}

/// The weight of [`hw_vector`].
pub fn hw_weight(space: Space, k: i64) -> WeightFn {
    let n = k.unsigned_abs() as i64;
    match space {
        Space::Fermionic => {
            let mut w = WeightFn::new(Scalar::one());
            for r in 0..n {
                w = if k > 0 {
                    w.with(HalfInt::plus_half(r), Scalar::from_int(-1))
                } else {
                    w.with(HalfInt::minus_half(-r), Scalar::one())
                };
            }
            w
        }
        Space::Bosonic => {
            let w = WeightFn::new(Scalar::from_int(-1));
            if k > 0 {
                w.with(HalfInt::from_doubled(1), Scalar::from_int(-n))
            } else {
                w.with(HalfInt::from_doubled(-1), Scalar::from_int(n))
            }
        }
    }
}

/// Diagonal action on a pure tensor of Fock vectors sharing one space.
pub fn tensor_act(
    l: HalfInt,
    k: HalfInt,
    factors: &[FockVector],
) -> Result<TensorVector, FockError> {
    let v = TensorVector::pure(factors)?;
    Ok(match v {
        TensorVector::Fermionic(chi, v) => TensorVector::Fermionic(
            chi,
            TensorPower {
                base: Fermionic,
                chi,
            }
            .act(l, k, &v),
        ),
        TensorVector::Bosonic(chi, v) => {
            TensorVector::Bosonic(chi, TensorPower { base: Bosonic, chi }.act(l, k, &v))
        }
    })
}

/// A vector in a tensor power of one Fock space, tagged with `χ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TensorVector {
    Fermionic(usize, Lin<Vec<FermMonomial>>),
    Bosonic(usize, Lin<Vec<BoseMonomial>>),
}

impl TensorVector {
    pub fn pure(factors: &[FockVector]) -> Result<Self, FockError> {
        let chi = factors.len();
        match factors.first() {
            None => Err(FockError::EmptyTensor),
            Some(FockVector::Fermionic(_)) => {
                let fs: Option<Vec<_>> = factors
                    .iter()
                    .map(|f| {
                        if let FockVector::Fermionic(v) = f {
                            Some(v.clone())
                        } else {
                            None
                        }
                    })
                    .collect();
                let fs = fs.ok_or_else(|| FockError::Malformed("mixed spaces".into()))?;
                Ok(TensorVector::Fermionic(
                    chi,
                    TensorPower {
                        base: Fermionic,
                        chi,
                    }
                    .pure(&fs)?,
                ))
            }
            Some(FockVector::Bosonic(_)) => {
                let fs: Option<Vec<_>> = factors
                    .iter()
                    .map(|f| {
                        if let FockVector::Bosonic(v) = f {
                            Some(v.clone())
                        } else {
                            None
                        }
                    })
                    .collect();
                let fs = fs.ok_or_else(|| FockError::Malformed("mixed spaces".into()))?;
                Ok(TensorVector::Bosonic(
                    chi,
                    TensorPower { base: Bosonic, chi }.pure(&fs)?,
                ))
            }
        }
    }

    /// The scalar by which `κ₀` acts on this tensor power.
    pub fn kappa0(&self) -> Scalar {
        match self {
            TensorVector::Fermionic(chi, _) => TensorPower {
                base: Fermionic,
                chi: *chi,
            }
            .kappa0(),
            TensorVector::Bosonic(chi, _) => TensorPower {
                base: Bosonic,
                chi: *chi,
            }
            .kappa0(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FermTermJson {
    thetabars: Vec<i64>,
    thetas: Vec<i64>,
    c: Scalar,
}

#[derive(Serialize, Deserialize)]
struct BoseTermJson {
    xbars: Vec<(i64, u32)>,
    xs: Vec<(i64, u32)>,
    c: Scalar,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "lowercase")]
enum FockVectorJson {
    Fermionic { terms: Vec<FermTermJson> },
    Bosonic { terms: Vec<BoseTermJson> },
}

impl Serialize for FockVector {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let dbl = |v: Vec<HalfInt>| v.into_iter().map(HalfInt::doubled).collect::<Vec<_>>();
        let pairs = |m: &BTreeMap<HalfInt, u32>| {
            m.iter().map(|(l, e)| (l.doubled(), *e)).collect::<Vec<_>>()
        };
        match self {
            FockVector::Fermionic(v) => FockVectorJson::Fermionic {
                terms: v
                    .iter()
                    .map(|(m, c)| FermTermJson {
                        thetabars: dbl(m.bars()),
                        thetas: dbl(m.thetas()),
                        c: c.clone(),
                    })
                    .collect(),
            },
            FockVector::Bosonic(v) => FockVectorJson::Bosonic {
                terms: v
                    .iter()
                    .map(|(m, c)| BoseTermJson {
                        xbars: pairs(&m.xbars),
                        xs: pairs(&m.xs),
                        c: c.clone(),
                    })
                    .collect(),
            },
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FockVector {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let half = |d: i64| {
            let h = HalfInt::from_doubled(d);
            if h.is_half() && h.is_negative() {
                Ok(h)
            } else {
                Err(D::Error::custom(format!(
                    "index {h} must be negative and half-odd"
                )))
            }
        };
        match FockVectorJson::deserialize(de)? {
            FockVectorJson::Fermionic { terms } => {
                let mut out = Lin::new();
                for t in terms {
                    let bars = t
                        .thetabars
                        .iter()
                        .map(|&d| half(d))
                        .collect::<Result<Vec<_>, _>>()?;
                    let ths = t
                        .thetas
                        .iter()
                        .map(|&d| half(d))
                        .collect::<Result<Vec<_>, _>>()?;
                    if let Some((m, s)) =
                        FermMonomial::from_lists(&bars, &ths).map_err(D::Error::custom)?
                    {
                        out.add_term(m, t.c * Scalar::from_int(s));
                    }
                }
                Ok(FockVector::Fermionic(out))
            }
            FockVectorJson::Bosonic { terms } => {
                let mut out = Lin::new();
                for t in terms {
                    let mut m = BoseMonomial::one();
                    for (d, e) in t.xbars {
                        if e > 0 {
                            *m.xbars.entry(half(d)?).or_insert(0) += e;
                        }
                    }
                    for (d, e) in t.xs {
                        if e > 0 {
                            *m.xs.entry(half(d)?).or_insert(0) += e;
                        }
                    }
                    out.add_term(m, t.c);
                }
                Ok(FockVector::Bosonic(out))
            }
        }
    }
}
