//! Representations of the matrix differential-operator algebras on modules
//! of the infinite-matrix algebra.
//!
//! Every operator here is a finite combination of *line sums*
//! `Σ_l p(l) ℰ_{a0 - l n, b0 + l n}` (with `p` a polynomial in `l`) plus a
//! multiple of `κ₀`. On a monomial of reach `M` only indices with
//! `a ≤ M` and `b ≤ M` can act (see [`GlInfModule::reach`]), which cuts each
//! line sum to the exact finite range
//! `ceil((a0 - M)/n) ≤ l ≤ floor((M - b0)/n)`.

pub mod alternate;

use serde::Serialize;

use crate::fock::GlInfModule;
use crate::matliealg::{ghbracket, AlgError, EllConfig, GlHatElem, Variant};
use crate::numkernel::{factorial, im_coeff, HalfInt, Lin, Scalar};
use crate::vertexcalc::{yplus, RHatElem};

/// A polynomial in one integer variable, coefficients in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Scalar>);

impl Poly {
    pub fn constant(c: Scalar) -> Self {
        Poly(vec![c])
    }

    /// `⟨alpha + beta·l⟩_r`.
    pub fn falling(alpha: &Scalar, beta: i64, r: u32) -> Self {
        let mut p = Poly::constant(Scalar::one());
        for s in 0..r {
            let lin = Poly(vec![alpha - Scalar::from(s), Scalar::from_int(beta)]);
            p = p.mul(&lin);
        }
        p
    }

    /// `C(alpha + beta·l, r)`.
    pub fn binom(alpha: &Scalar, beta: i64, r: u32) -> Self {
        Poly::falling(alpha, beta, r).scale(&factorial(r).recip())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = vec![Scalar::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly(self.0.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, l: i64) -> Scalar {
        let x = Scalar::from_int(l);
        self.0
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, a| acc * &x + a)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }
}

/// `Σ_{lo ≤ l ≤ hi} coeff(l) ℰ_{a0 - l·step, b0 + l·step}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSum {
    pub a0: HalfInt,
    pub b0: HalfInt,
    pub step: i64,
    pub coeff: Poly,
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl LineSum {
    pub fn full(a0: HalfInt, b0: HalfInt, step: i64, coeff: Poly) -> Self {
        LineSum {
            a0,
            b0,
            step,
            coeff,
            lo: None,
            hi: None,
        }
    }

    /// The `l` range that can act on a monomial of doubled reach `reach2`.
    pub fn window(&self, reach2: i64) -> (i64, i64) {
        let m2 = reach2.max(1);
        // a0 - l n ≤ M  ⇔  l ≥ (a0 - M)/n ; b0 + l n ≤ M  ⇔  l ≤ (M - b0)/n.
        let lo_num = (self.a0.doubled() - m2) / 2;
        let hi_num = (m2 - self.b0.doubled()) / 2;
        let mut lo = div_ceil(lo_num, self.step);
        let mut hi = hi_num.div_euclid(self.step);
        if let Some(b) = self.lo {
            lo = lo.max(b);
        }
        if let Some(b) = self.hi {
            hi = hi.min(b);
        }
        (lo, hi)
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// A finitely-acting operator: line sums plus `central · κ₀`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModeOp {
    pub lines: Vec<LineSum>,
    pub central: Scalar,
}

impl ModeOp {
    pub fn zero() -> Self {
        ModeOp::default()
    }

    pub fn central(c: Scalar) -> Self {
        ModeOp {
            lines: Vec::new(),
            central: c,
        }
    }

    pub fn plus(mut self, o: ModeOp) -> ModeOp {
        self.lines.extend(o.lines);
        self.central += o.central;
        self
    }

    pub fn scale(&self, c: &Scalar) -> ModeOp {
        ModeOp {
            lines: self
                .lines
                .iter()
                .map(|ls| LineSum {
                    coeff: ls.coeff.scale(c),
                    ..ls.clone()
                })
                .collect(),
            central: &self.central * c,
        }
    }

    /// Evaluation on a vector, enlarging every computed window by `pad`
    /// (doubled units) on both sides.
    pub fn apply_padded<M: GlInfModule>(
        &self,
        module: &M,
        v: &Lin<M::Key>,
        pad: i64,
    ) -> Lin<M::Key> {
        let mut out = v.scaled(&(&self.central * &module.kappa0()));
        for (mono, c) in v.iter() {
            let reach = module.reach(mono) + pad;
            for ls in &self.lines {
                let (lo, hi) = ls.window(reach);
                for l in lo..=hi {
                    let k = ls.coeff.eval(l);
                    if k.is_zero() {
                        continue;
                    }
                    let a = ls.a0 - HalfInt::from_int(l * ls.step);
                    let b = ls.b0 + HalfInt::from_int(l * ls.step);
                    out.add_scaled(&module.act_mono(a, b, mono), &(c * &k));
                }
            }
        }
        out
    }

    pub fn apply<M: GlInfModule>(&self, module: &M, v: &Lin<M::Key>) -> Lin<M::Key> {
        self.apply_padded(module, v, 0)
    }
}

/// How `ι` selects formula variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IotaClass {
    Integer,
    HalfInteger,
    Generic,
}

pub fn iota_class(iota: &Scalar) -> IotaClass {
    if iota.is_integer() {
        IotaClass::Integer
    } else if iota.is_half_integer_or_integer() {
        IotaClass::HalfInteger
    } else {
        IotaClass::Generic
    }
}

/// `σ(t^m ∂^r E_{ij}) = Σ_l ⟨ι - l⟩_r ℰ_{(m-r-l)n+i-1/2, ln-j+1/2}
/// + r! δ_{ij} δ_{rm} Im_{0,r} κ₀`.
pub fn sigma_gl(n: usize, i: usize, j: usize, m: i64, r: u32, iota: &Scalar) -> ModeOp {
    let nn = n as i64;
    let line = LineSum::full(
        HalfInt::minus_half((m - r as i64) * nn + i as i64),
        HalfInt::plus_half(-(j as i64)),
        nn,
        Poly::falling(iota, -1, r),
    );
    let central = if i == j && m == r as i64 {
        factorial(r) * im_coeff(iota, 0, r)
    } else {
        Scalar::zero()
    };
    ModeOp {
        lines: vec![line],
        central,
    }
}

/// The integer-`ι` form: the same sum split into the families
/// `l = ι + k + 1` (`k ≥ 0`) and `l = ι - K` (`K ≥ ℓ_j`). Terms with
/// `0 ≤ K < ℓ_j` vanish because `r ≥ ℓ_j` on the `ℓ`-subalgebra.
pub fn sigma_gl_integer(
    cfg: &EllConfig,
    i: usize,
    j: usize,
    m: i64,
    r: u32,
    iota: i64,
) -> Result<ModeOp, AlgError> {
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
    let base = sigma_gl(cfg.n, i, j, m, r, &Scalar::from_int(iota));
    let line = base.lines[0].clone();
    let upper = LineSum {
        lo: Some(iota + 1),
        ..line.clone()
    };
    let lower = LineSum {
        hi: Some(iota - lj as i64),
        ..line
    };
    Ok(ModeOp {
        lines: vec![upper, lower],
        central: base.central,
    })
}

/// `σ` of a general element of the `ℓ`-algebra, choosing the integer form
/// when `ι ∈ ℤ` and `cfg` is given.
pub fn sigma_elem(
    x: &GlHatElem,
    iota: &Scalar,
    cfg: Option<&EllConfig>,
) -> Result<ModeOp, AlgError> {
    let mut out = ModeOp::central(x.kappa.clone());
    for (i, j, m, r, c) in x.iter() {
        let op = match (iota_class(iota), cfg) {
            (IotaClass::Integer, Some(cfg)) => {
                sigma_gl_integer(cfg, i, j, m, r, iota.to_i64().unwrap_or(0))?
            }
            _ => sigma_gl(x.n, i, j, m, r, iota),
        };
        out = out.plus(op.scale(c));
    }
    Ok(out)
}

/// Datum `(i, j, m, r)` of the skew generator
/// `t^{m+r} ∂^{r+ℓ_j} E_{ij} - sign (-∂)^r t^{m+r} ∂^{ℓ_i} E_{j*i*}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SkewGen {
    pub i: usize,
    pub j: usize,
    pub m: i64,
    pub r: u32,
}

impl SkewGen {
    /// The generator as an element of the matrix algebra.
    pub fn element(&self, cfg: &EllConfig) -> Result<GlHatElem, AlgError> {
        crate::matliealg::gen_skew(self.i, self.j, self.m + self.r as i64, self.r, cfg)
    }
}

/// The restricted representation on a skew generator, as a closed series:
/// `Σ_l [⟨l+ℓ_j+ι⟩_{r+ℓ_j} ℰ_{(m+l)n+i-1/2, (-l-ℓ_j)n-j+1/2}
///  - sign ⟨l-ι⟩_r ⟨-m-l+ℓ_i+ι-1⟩_{ℓ_i} ℰ_{-ln-j+1/2, (m+l-ℓ_i)n+i-1/2}]`
/// plus `[(r+ℓ_i)! Im_{0,r+ℓ_i} - sign r! ℓ_i! Im_{r,ℓ_i}] δ_{m,ℓ_i} δ_{ij} κ₀`.
pub fn sigma_skew(g: SkewGen, iota: &Scalar, cfg: &EllConfig) -> Result<ModeOp, AlgError> {
    if cfg.variant == Variant::Gl {
        return Err(AlgError::Precondition(
            "sigma_skew needs variant o or sp".into(),
        ));
    }
    let SkewGen { i, j, m, r } = g;
    if !(1..=cfg.n).contains(&i) || !(1..=cfg.n).contains(&j) {
        return Err(AlgError::IndexOutOfRange { i, j, n: cfg.n });
    }
    let nn = cfg.n as i64;
    let (li, lj) = (cfg.ell_of(i), cfg.ell_of(j));
    let sign = cfg.skew_sign(i, j);
    // First family after l ↦ -l: ℰ_{(m-l)n+i-1/2, (l-ℓ_j)n-j+1/2}.
    let first = LineSum::full(
        HalfInt::minus_half(m * nn + i as i64),
        HalfInt::plus_half(-(lj as i64) * nn - j as i64),
        nn,
        Poly::falling(&(iota + Scalar::from(lj)), -1, r + lj),
    );
    let coeff2 = Poly::falling(&-iota, 1, r)
        .mul(&Poly::falling(
            &(iota + Scalar::from_int(li as i64 - m - 1)),
            -1,
            li,
        ))
        .scale(&-&sign);
    let second = LineSum::full(
        HalfInt::plus_half(-(j as i64)),
        HalfInt::minus_half((m - li as i64) * nn + i as i64),
        nn,
        coeff2,
    );
    let central = if i == j && m == li as i64 {
        factorial(r + li) * im_coeff(iota, 0, r + li)
            - &sign * factorial(r) * factorial(li) * im_coeff(iota, r, li)
    } else {
        Scalar::zero()
    };
    Ok(ModeOp {
        lines: vec![first, second],
        central,
    })
}

/// The mode `u_[N]` of the twisted field attached to `u ∈ R̂`, i.e. the
/// coefficient of `z^{-N-1}` in
/// `Σ_{i,j} C(-i-ι-1/2, r1) C(-j+ι-1/2, r2) a(i,j) z^{-i-j-r1-r2-1}
///  + Im_{r1,r2} tr(a) κ₀ z^{-r1-r2-1}`, with `𝟏 ↦ κ₀`.
pub fn twisted_mode(u: &RHatElem, big_n: i64, iota: &Scalar) -> ModeOp {
    let nn = u.n as i64;
    let mut out = ModeOp::zero();
    if big_n == -1 {
        out.central += &u.unit;
    }
    for ((p, q, r1, r2), c) in u.iter() {
        let s = big_n - r1 as i64 - r2 as i64;
        let coeff = Poly::binom(&(-iota - Scalar::one()), 1, r1)
            .mul(&Poly::binom(&(iota - Scalar::from_int(s)), -1, r2))
            .scale(c);
        out.lines.push(LineSum::full(
            HalfInt::minus_half(p as i64),
            HalfInt::plus_half(s * nn - q as i64),
            nn,
            coeff,
        ));
        if s == 0 && p == q {
            out.central += c * im_coeff(iota, r1, r2);
        }
    }
    out
}

/// Outcome of a homomorphism or mode-identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub checked: usize,
    pub pass: bool,
    pub counterexample: Option<String>,
}

impl HomReport {
    pub fn new() -> Self {
        HomReport {
            checked: 0,
            pass: true,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.pass {
            self.pass = false;
            self.counterexample = Some(detail());
        }
    }

    pub fn merge(mut self, o: HomReport) -> HomReport {
        self.checked += o.checked;
        if self.pass && !o.pass {
            self.pass = false;
            self.counterexample = o.counterexample;
        }
        self
    }
}

impl Default for HomReport {
    fn default() -> Self {
        HomReport::new()
    }
}

/// `σ(z) v = σ(x)σ(y) v - σ(y)σ(x) v` for every probe, where `z` stands
/// for the bracket of `x` and `y`.
pub fn check_ops<M: GlInfModule>(
    module: &M,
    sx: &ModeOp,
    sy: &ModeOp,
    sbr: &ModeOp,
    probes: &[Lin<M::Key>],
) -> HomReport {
    let mut rep = HomReport::new();
    for (idx, v) in probes.iter().enumerate() {
        let lhs = sbr.apply(module, v);
        let rhs = sx
            .apply(module, &sy.apply(module, v))
            .minus(&sy.apply(module, &sx.apply(module, v)));
        rep.record(lhs == rhs, || {
            format!("probe {idx}: {v:?}: σ([x,y])v = {lhs:?} but [σx,σy]v = {rhs:?}")
        });
    }
    rep
}

/// Homomorphism check for general elements, each mapped term by term.
pub fn check_hom<M: GlInfModule>(
    x: &GlHatElem,
    y: &GlHatElem,
    iota: &Scalar,
    cfg: Option<&EllConfig>,
    module: &M,
    probes: &[Lin<M::Key>],
) -> Result<HomReport, AlgError> {
    let br = ghbracket(x, y)?;
    let sx = sigma_elem(x, iota, cfg)?;
    let sy = sigma_elem(y, iota, cfg)?;
    let sb = sigma_elem(&br, iota, cfg)?;
    Ok(check_ops(module, &sx, &sy, &sb, probes))
}

/// Homomorphism check on a pair of skew generators, using the closed
/// skew series for the generators and the general formula for their
/// bracket.
pub fn check_hom_skew<M: GlInfModule>(
    g: SkewGen,
    h: SkewGen,
    iota: &Scalar,
    cfg: &EllConfig,
    module: &M,
    probes: &[Lin<M::Key>],
) -> Result<HomReport, AlgError> {
    let br = ghbracket(&g.element(cfg)?, &h.element(cfg)?)?;
    let sx = sigma_skew(g, iota, cfg)?;
    let sy = sigma_skew(h, iota, cfg)?;
    let sb = sigma_elem(&br, iota, None)?;
    Ok(check_ops(module, &sx, &sy, &sb, probes))
}

/// Mode form of the twisted commutator formula,
/// `[u_[a], v_[b]] = Σ_k C(a,k) (u_(k) v)_[a+b-k]`, on a probe for every
/// `(a, b)` in the window.
pub fn theorem22_modes<M: GlInfModule>(
    u: &RHatElem,
    v: &RHatElem,
    iota: &Scalar,
    window: &[(i64, i64)],
    module: &M,
    probe: &Lin<M::Key>,
) -> HomReport {
    let prods = yplus(u, v);
    let mut rep = HomReport::new();
    for &(a, b) in window {
        let ua = twisted_mode(u, a, iota);
        let vb = twisted_mode(v, b, iota);
        let lhs = ua
            .apply(module, &vb.apply(module, probe))
            .minus(&vb.apply(module, &ua.apply(module, probe)));
        let mut rhs = Lin::new();
        for (&k, w) in &prods {
            let c = crate::numkernel::gbinom(a, k);
            rhs.add_scaled(
                &twisted_mode(w, a + b - k as i64, iota).apply(module, probe),
                &c,
            );
        }
        rep.record(lhs == rhs, || {
            format!("modes ({a},{b}): lhs {lhs:?} rhs {rhs:?}")
        });
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{Bosonic, FermMonomial, Fermionic, TensorPower};
    use crate::matliealg::gen_skew;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::ratio(p, d)
    }

    fn fvac() -> Lin<FermMonomial> {
        Lin::single(FermMonomial::one(), Scalar::one())
    }

    fn ferm_probe(bars: &[i64], thetas: &[i64]) -> Lin<FermMonomial> {
        let b: Vec<_> = bars.iter().map(|&d| HalfInt::from_doubled(d)).collect();
        let t: Vec<_> = thetas.iter().map(|&d| HalfInt::from_doubled(d)).collect();
        let (m, s) = FermMonomial::from_lists(&b, &t).unwrap().unwrap();
        Lin::single(m, Scalar::from_int(s))
    }

    fn probes() -> Vec<Lin<FermMonomial>> {
        vec![
            fvac(),
            ferm_probe(&[], &[-1]),
            ferm_probe(&[-1], &[]),
            ferm_probe(&[-3], &[-1, -5]),
            ferm_probe(&[-1, -3], &[-3]),
            fvac().plus(&ferm_probe(&[-5], &[-1])),
        ]
    }

    #[test]
    fn printed_examples() {
        let zero = sigma_gl(1, 1, 1, 0, 0, &Scalar::zero()).apply(&Fermionic, &fvac());
        assert!(zero.is_zero());
        for iota in [q(1, 3), q(7, 5), q(-2, 3)] {
            let got = sigma_gl(1, 1, 1, 0, 0, &iota).apply(&Fermionic, &fvac());
            assert_eq!(got, fvac().scaled(&-&iota));
        }
        // Central term of the skew series vanishes at ι = 0.
        let cfg = EllConfig::spanning(Variant::O, 2, vec![0, 0], 0).unwrap();
        let op = sigma_skew(
            SkewGen {
                i: 1,
                j: 1,
                m: 0,
                r: 0,
            },
            &Scalar::zero(),
            &cfg,
        )
        .unwrap();
        assert!(op.central.is_zero());
    }

    #[test]
    fn loop_algebra_central_charge() {
        // [t, t^{-1}] = κ for n = 1, ℓ = 0, and κ ↦ κ₀ = 1 on the fermionic space.
        let x = GlHatElem::basis(1, 1, 1, 1, 0);
        let y = GlHatElem::basis(1, 1, 1, -1, 0);
        let br = ghbracket(&x, &y).unwrap();
        assert_eq!(br, GlHatElem::kappa_only(1, Scalar::one()));
        let rep = check_hom(&x, &y, &Scalar::zero(), None, &Fermionic, &probes()).unwrap();
        assert!(rep.pass, "{:?}", rep.counterexample);
        let direct = sigma_elem(&br, &Scalar::zero(), None)
            .unwrap()
            .apply(&Fermionic, &fvac());
        assert_eq!(direct, fvac());
    }

    #[test]
    fn window_soundness() {
        for iota in [q(1, 3), q(5, 2)] {
            for (i, j, m, r) in [(1, 1, 0, 0), (1, 2, 2, 1), (2, 1, -3, 2), (2, 2, 1, 3)] {
                let op = sigma_gl(2, i, j, m, r, &iota);
                for v in probes() {
                    assert_eq!(op.apply(&Fermionic, &v), op.apply_padded(&Fermionic, &v, 4));
                }
            }
        }
    }

    #[test]
    fn integer_form_matches_generic() {
        let cfg = EllConfig::gl(2, vec![1, 0]).unwrap();
        for iota in [-1i64, 0, 2] {
            for (i, j, m, r) in [(1, 1, 0, 0), (1, 2, 1, 1), (2, 1, -2, 2), (1, 1, 1, 1)] {
                if r < cfg.ell_of(j) {
                    assert!(sigma_gl_integer(&cfg, i, j, m, r, iota).is_err());
                    continue;
                }
                let a = sigma_gl_integer(&cfg, i, j, m, r, iota).unwrap();
                let b = sigma_gl(2, i, j, m, r, &Scalar::from_int(iota));
                for v in probes() {
                    assert_eq!(a.apply(&Fermionic, &v), b.apply(&Fermionic, &v));
                }
            }
        }
    }

    #[test]
    fn twisted_mode_matches_sigma() {
        for iota in [q(1, 3), Scalar::zero()] {
            for (p, qq, m, r) in [(1, 1, 0, 0), (1, 2, 2, 1), (2, 2, 1, 1), (2, 1, -1, 2)] {
                let u = RHatElem::basis(2, p, qq, 0, r);
                let a = twisted_mode(&u, m, &iota).scale(&factorial(r));
                let b = sigma_gl(2, p, qq, m, r, &iota);
                for v in probes() {
                    assert_eq!(a.apply(&Fermionic, &v), b.apply(&Fermionic, &v));
                }
            }
        }
    }

    #[test]
    fn skew_series_is_restriction() {
        let cfgs = [
            EllConfig::spanning(Variant::O, 2, vec![0, 0], 0).unwrap(),
            EllConfig::spanning(Variant::O, 2, vec![1, 1], 1).unwrap(),
            EllConfig::spanning(Variant::O, 3, vec![1, 0, 1], 1).unwrap(),
            EllConfig::spanning(Variant::Sp, 2, vec![0, 0], 0).unwrap(),
            EllConfig::spanning(Variant::Sp, 2, vec![1, 1], 1).unwrap(),
        ];
        for cfg in &cfgs {
            for iota in [q(1, 3), q(2, 7)] {
                for i in 1..=cfg.n {
                    for j in 1..=cfg.n {
                        for (m, r) in [(0, 0), (1, 0), (1, 1), (-1, 2), (2, 1)] {
                            let g = SkewGen { i, j, m, r };
                            let direct = sigma_skew(g, &iota, cfg).unwrap();
                            let x = gen_skew(i, j, m + r as i64, r, cfg).unwrap();
                            let via = sigma_elem(&x, &iota, None).unwrap();
                            for v in probes() {
                                assert_eq!(
                                    direct.apply(&Fermionic, &v),
                                    via.apply(&Fermionic, &v),
                                    "{cfg:?} {g:?} ι={iota}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn skew_homomorphism_small() {
        let cfg = EllConfig::spanning(Variant::Sp, 2, vec![0, 0], 0).unwrap();
        let g = SkewGen {
            i: 1,
            j: 2,
            m: 1,
            r: 0,
        };
        let h = SkewGen {
            i: 2,
            j: 1,
            m: -1,
            r: 1,
        };
        let rep = check_hom_skew(g, h, &q(1, 3), &cfg, &Fermionic, &probes()).unwrap();
        assert!(rep.pass, "{:?}", rep.counterexample);
    }

    #[test]
    fn theorem22_on_basis_pairs() {
        let e11 = RHatElem::basis(2, 1, 1, 0, 0);
        let e12 = RHatElem::basis(2, 1, 2, 0, 0);
        let window: Vec<(i64, i64)> = (-2..=1)
            .flat_map(|a| (-2..=1).map(move |b| (a, b)))
            .collect();
        for iota in [q(1, 3), Scalar::zero()] {
            assert!(theorem22_modes(&e11, &e12, &iota, &window, &Fermionic, &fvac()).pass);
            assert!(theorem22_modes(&e11, &e11, &iota, &window, &Fermionic, &fvac()).pass);
            let u = RHatElem::basis(2, 2, 1, 1, 0);
            let v = RHatElem::basis(2, 1, 2, 1, 1);
            let rep = theorem22_modes(
                &u,
                &v,
                &iota,
                &window,
                &Fermionic,
                &ferm_probe(&[-1], &[-3]),
            );
            assert!(rep.pass, "{:?}", rep.counterexample);
        }
    }

    fn elem(n: usize) -> impl Strategy<Value = GlHatElem> {
        prop::collection::vec((1..=n, 1..=n, -2i64..=2, 0u32..=2, -2i64..=2), 1..3).prop_map(
            move |ts| {
                ts.into_iter()
                    .fold(GlHatElem::zero(n), |acc, (i, j, m, r, c)| {
                        acc.add(&GlHatElem::term(n, i, j, m, r, Scalar::from_int(c)))
                    })
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn homomorphism_fermionic(x in elem(2), y in elem(2), k in prop_oneof![Just(q(1, 3)), Just(q(7, 5))]) {
            let rep = check_hom(&x, &y, &k, None, &Fermionic, &probes()).unwrap();
            prop_assert!(rep.pass, "{:?}", rep.counterexample);
        }

        #[test]
        fn homomorphism_bosonic_tensor(x in elem(1), y in elem(1)) {
            let module = TensorPower { base: Bosonic, chi: 2 };
            let probe = module.pure(&vec![Lin::single(crate::fock::BoseMonomial::one(), Scalar::one()); 2]).unwrap();
            let rep = check_hom(&x, &y, &q(1, 3), None, &module, &[probe]).unwrap();
            prop_assert!(rep.pass, "{:?}", rep.counterexample);
        }

        #[test]
        fn homomorphism_integer_iota(x in elem(2), y in elem(2), iota in -1i64..=1) {
            let cfg = EllConfig::gl(2, vec![0, 0]).unwrap();
            let rep = check_hom(&x, &y, &Scalar::from_int(iota), Some(&cfg), &Fermionic, &probes()).unwrap();
            prop_assert!(rep.pass, "{:?}", rep.counterexample);
        }
    }
}
