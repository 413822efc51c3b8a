//! The conformal algebra `R̂` spanned by `a[m1, m2]` (matrix units times
//! `ς₁^{m1} ς₂^{m2}`) and a unit `𝟏`, with its derivation and `Y⁺`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::diffop::DiffOp;
use crate::matliealg::{ghbracket, AlgError, GlHatElem};
use crate::numkernel::{factorial, gbinom, sign_pow, Lin, Scalar};

/// `Σ c · E_{pq}[m1, m2] + unit · 𝟏`, keyed by `(p, q, m1, m2)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RHatElem {
    pub n: usize,
    pub terms: Lin<(usize, usize, u32, u32)>,
    pub unit: Scalar,
}

impl RHatElem {
    pub fn zero(n: usize) -> Self {
        RHatElem {
            n,
            terms: Lin::new(),
            unit: Scalar::zero(),
        }
    }

    pub fn basis(n: usize, p: usize, q: usize, m1: u32, m2: u32) -> Self {
        RHatElem {
            n,
            terms: Lin::single((p, q, m1, m2), Scalar::one()),
            unit: Scalar::zero(),
        }
    }

    pub fn unit(n: usize, c: Scalar) -> Self {
        RHatElem {
            n,
            terms: Lin::new(),
            unit: c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero() && self.unit.is_zero()
    }

    pub fn add(&self, o: &RHatElem) -> RHatElem {
        RHatElem {
            n: self.n,
            terms: self.terms.plus(&o.terms),
            unit: &self.unit + &o.unit,
        }
    }

    pub fn sub(&self, o: &RHatElem) -> RHatElem {
        RHatElem {
            n: self.n,
            terms: self.terms.minus(&o.terms),
            unit: &self.unit - &o.unit,
        }
    }

    pub fn scale(&self, c: &Scalar) -> RHatElem {
        RHatElem {
            n: self.n,
            terms: self.terms.scaled(c),
            unit: &self.unit * c,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize, u32, u32), &Scalar)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Total `ς`-degree of the highest term.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|&(_, _, a, b)| a + b)
            .max()
            .unwrap_or(0)
    }

    /// `∂(a[m1,m2]) = (m1+1) a[m1+1,m2] + (m2+1) a[m1,m2+1]`, `∂𝟏 = 0`.
    pub fn partial(&self) -> RHatElem {
        let mut out = RHatElem::zero(self.n);
        for ((p, q, m1, m2), c) in self.iter() {
            out.terms
                .add_term((p, q, m1 + 1, m2), c * Scalar::from(m1 + 1));
            out.terms
                .add_term((p, q, m1, m2 + 1), c * Scalar::from(m2 + 1));
        }
        out
    }

    pub fn partial_pow(&self, k: u32) -> RHatElem {
        (0..k).fold(self.clone(), |acc, _| acc.partial())
    }
}

impl fmt::Debug for RHatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .iter()
            .map(|((p, q, a, b), c)| format!("({c})E{p}{q}[{a},{b}]"))
            .collect();
        if !self.unit.is_zero() {
            parts.push(format!("({})1", self.unit));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Y⁺(u, z) v = Σ_k u_(k) v z^{-k-1}` as the map `k ↦ u_(k) v`.
pub fn yplus(u: &RHatElem, v: &RHatElem) -> BTreeMap<u32, RHatElem> {
    let n = u.n;
    let mut out: BTreeMap<u32, RHatElem> = BTreeMap::new();
    let mut put = |k: u32, key: Option<(usize, usize, u32, u32)>, c: Scalar| {
        if c.is_zero() {
            return;
        }
        let e = out.entry(k).or_insert_with(|| RHatElem::zero(n));
        match key {
            Some(key) => e.terms.add_term(key, c),
            None => e.unit += c,
        }
    };
    for ((p, q, m1, m2), cu) in u.iter() {
        for ((s, t, n1, n2), cv) in v.iter() {
            let c = cu * cv;
            let b1 = gbinom(-(n1 as i64) - 1, m2);
            let b2 = gbinom(-(n2 as i64) - 1, m1);
            if q == s {
                let top = m1 + m2 + n1;
                for pp in m1..=top {
                    put(
                        top - pp,
                        Some((p, t, pp, n2)),
                        &c * &b1 * gbinom(pp as i64, m1),
                    );
                }
            }
            if t == p {
                let top = m1 + m2 + n2;
                for qq in m2..=top {
                    put(
                        top - qq,
                        Some((s, q, n1, qq)),
                        -(&c * &b2 * gbinom(qq as i64, m2)),
                    );
                }
            }
            if q == s && p == t {
                put(m1 + m2 + n1 + n2 + 1, None, &c * &b1 * &b2);
            }
        }
    }
    out.retain(|_, e| !e.is_zero());
    out
}

/// The `k`-th product `u_(k) v`.
pub fn nprod(u: &RHatElem, v: &RHatElem, k: u32) -> RHatElem {
    yplus(u, v)
        .remove(&k)
        .unwrap_or_else(|| RHatElem::zero(u.n))
}

/// The mode `u_[i]` of `Y(u, z) = Σ_i u_[i] z^{-i-1}` in the centrally
/// extended matrix algebra: `a[m1,m2]_[i] = a ⊗ (-∂)^{m1} t^i ∂^{m2} / (m1! m2!)`
/// and `𝟏_[i] = δ_{i,-1} κ`.
pub fn w_mode(u: &RHatElem, i: i64) -> GlHatElem {
    let mut out = GlHatElem::zero(u.n);
    for ((p, q, m1, m2), c) in u.iter() {
        let op = DiffOp::mono(0, m1)
            .dmul(&DiffOp::mono(i, m2))
            .scale(&(sign_pow(m1 as i64) / (factorial(m1) * factorial(m2))));
        out = out.add(&GlHatElem::from_entry(u.n, p, q, &op).scale(c));
    }
    if i == -1 {
        out.kappa = &out.kappa + &u.unit;
    }
    out
}

/// Outcome of a window check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub check: String,
    pub checked: usize,
    pub pass: bool,
    pub counterexample: Option<String>,
}

impl WindowReport {
    pub fn new(check: &str) -> Self {
        WindowReport {
            check: check.into(),
            checked: 0,
            pass: true,
            counterexample: None,
        }
    }

    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.pass {
            self.pass = false;
            self.counterexample = Some(detail());
        }
    }

    pub fn merge(mut self, other: WindowReport) -> WindowReport {
        self.checked += other.checked;
        if self.pass && !other.pass {
            self.pass = false;
            self.counterexample = other.counterexample;
        }
        self
    }
}

/// Mode form of the commutator formula:
/// `[u_[a], v_[b]] = Σ_k C(a, k) (u_(k) v)_[a+b-k]`, checked in the matrix
/// algebra for all `(a, b)` in the window.
pub fn bracket_equiv(
    u: &RHatElem,
    v: &RHatElem,
    window: &[(i64, i64)],
) -> Result<WindowReport, AlgError> {
    let prods = yplus(u, v);
    let mut rep = WindowReport::new("bracket-equiv");
    for &(a, b) in window {
        let lhs = ghbracket(&w_mode(u, a), &w_mode(v, b))?;
        let mut rhs = GlHatElem::zero(u.n);
        for (&k, w) in &prods {
            rhs = rhs.add(&w_mode(w, a + b - k as i64).scale(&gbinom(a, k)));
        }
        rep.record(lhs == rhs, || {
            format!("modes ({a},{b}): lhs {lhs:?} rhs {rhs:?}")
        });
    }
    Ok(rep)
}

/// The three conformal-algebra axioms on `(u, v, w)`:
/// `(∂u)_(k) v = -k u_(k-1) v`; skew-symmetry
/// `u_(k) v = Σ_{j ≥ k} (-1)^{j+1} ∂^{j-k}/(j-k)! v_(j) u`; and the
/// commutator formula `u_(a)(v_(b) w) - v_(b)(u_(a) w) = Σ_s C(a,s) (u_(a-s) v)_(b+s) w`.
pub fn conformal_axioms(u: &RHatElem, v: &RHatElem, w: &RHatElem) -> WindowReport {
    let mut rep = WindowReport::new("conformal");
    let n = u.n;
    let du = u.partial();
    let uv = yplus(u, v);
    let duv = yplus(&du, v);
    let top = uv.keys().chain(duv.keys()).copied().max().unwrap_or(0) + 2;
    for k in 0..=top {
        let lhs = duv.get(&k).cloned().unwrap_or_else(|| RHatElem::zero(n));
        let rhs = if k == 0 {
            RHatElem::zero(n)
        } else {
            uv.get(&(k - 1))
                .cloned()
                .unwrap_or_else(|| RHatElem::zero(n))
                .scale(&Scalar::from_int(-(k as i64)))
        };
        rep.record(lhs == rhs, || {
            format!("translation at k={k}: {lhs:?} vs {rhs:?}")
        });
    }
    let vu = yplus(v, u);
    let top = uv.keys().chain(vu.keys()).copied().max().unwrap_or(0) + 1;
    for k in 0..=top {
        let lhs = uv.get(&k).cloned().unwrap_or_else(|| RHatElem::zero(n));
        let mut rhs = RHatElem::zero(n);
        for (&j, x) in vu.range(k..) {
            let c = sign_pow(j as i64 + 1) / factorial(j - k);
            rhs = rhs.add(&x.partial_pow(j - k).scale(&c));
        }
        rep.record(lhs == rhs, || {
            format!("skew-symmetry at k={k}: {lhs:?} vs {rhs:?}")
        });
    }
    let vw = yplus(v, w);
    let uw = yplus(u, w);
    let amax = uv.keys().chain(uw.keys()).copied().max().unwrap_or(0) + 1;
    let bmax = vw.keys().copied().max().unwrap_or(0) + amax + 1;
    // Products of each intermediate element, computed once per element.
    let u_on_vw: BTreeMap<u32, _> = vw.iter().map(|(&b, x)| (b, yplus(u, x))).collect();
    let v_on_uw: BTreeMap<u32, _> = uw.iter().map(|(&a, x)| (a, yplus(v, x))).collect();
    let uv_on_w: BTreeMap<u32, _> = uv.iter().map(|(&k, x)| (k, yplus(x, w))).collect();
    let zero = RHatElem::zero(n);
    let pick = |m: &BTreeMap<u32, BTreeMap<u32, RHatElem>>, i: u32, j: u32| {
        m.get(&i).and_then(|p| p.get(&j)).cloned()
    };
    for a in 0..=amax {
        for b in 0..=bmax {
            let lhs = pick(&u_on_vw, b, a)
                .unwrap_or_else(|| zero.clone())
                .sub(&pick(&v_on_uw, a, b).unwrap_or_else(|| zero.clone()));
            let mut rhs = zero.clone();
            for s in 0..=a {
                if let Some(x) = pick(&uv_on_w, a - s, b + s) {
                    rhs = rhs.add(&x.scale(&gbinom(a as i64, s)));
                }
            }
            rep.record(lhs == rhs, || {
                format!("commutator at ({a},{b}): {lhs:?} vs {rhs:?}")
            });
        }
    }
    rep
}
