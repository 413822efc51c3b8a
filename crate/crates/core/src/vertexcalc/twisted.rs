//! Twisted fields on the Fock spaces: the field `E^ι_ij(r, z)` built from
//! the representation `σ^ι`, the charged free fields, and the check that
//! `E^ι_ij(r, z)` is `r!` times the twisted normal-ordered product of
//! `θ̄(ι, i, z)` and `θ(ι, j, z)` (or their bosonic analogues).
//!
//! Fractional powers of `z` are never formed. A field term is addressed by
//! its exponent, a rational number whose fractional part is fixed by `ι`.

use crate::fock::{bose_gen, ferm_gen, Bosonic, EvenVar, Fermionic, GlInfModule, OddVar};
use crate::matliealg::{AlgError, EllConfig};
use crate::numkernel::{binom, factorial, gbinom, sign_pow, HalfInt, Lin, Scalar};
use crate::repmap::{iota_class, sigma_gl, sigma_gl_integer, IotaClass, ModeOp};

use super::WindowReport;

/// `θ(ι, i, z)` / `x(ι, i, z)` or their barred partners.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Plain,
    Bar,
}

/// A charged free field. For `ι ∉ ℤ`
/// `θ(ι, i, z) = Σ_l θ_{ln-i+1/2} z^{ι-l}` and
/// `θ̄(ι, i, z) = Σ_l θ̄_{ln+i-1/2} z^{-ι-l-1}`; for `ι ∈ ℤ` the two-family
/// form with the `ℓ_i` shift is used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeField {
    pub kind: FieldKind,
    pub iota: Scalar,
    pub n: usize,
    pub i: usize,
    pub ell_i: u32,
}

impl FreeField {
    pub fn new(kind: FieldKind, iota: Scalar, n: usize, i: usize, ell_i: u32) -> Self {
        FreeField {
            kind,
            iota,
            n,
            i,
            ell_i,
        }
    }

    /// Index of the variable multiplying `z^e`, if any.
    pub fn index_at(&self, e: &Scalar) -> Option<HalfInt> {
        let (n, i, li) = (self.n as i64, self.i as i64, self.ell_i as i64);
        match iota_class(&self.iota) {
            IotaClass::Integer => {
                let iota = self.iota.to_i64()?;
                let e = e.to_i64()?;
                match self.kind {
                    FieldKind::Plain if e >= li => {
                        Some(HalfInt::plus_half((iota - (e - li)) * n - i))
                    }
                    FieldKind::Plain if e <= -1 => Some(HalfInt::plus_half((-e + iota) * n - i)),
                    FieldKind::Bar if e < -li => {
                        Some(HalfInt::minus_half((-li - 1 - e - iota) * n + i))
                    }
                    FieldKind::Bar if e >= 0 => Some(HalfInt::minus_half(-(e + iota + 1) * n + i)),
                    _ => None,
                }
            }
            _ => {
                let l = match self.kind {
                    FieldKind::Plain => &self.iota - e,
                    FieldKind::Bar => &(-&self.iota) - &(e + &Scalar::one()),
                }
                .to_i64()?;
                Some(match self.kind {
                    FieldKind::Plain => HalfInt::plus_half(l * n - i),
                    FieldKind::Bar => HalfInt::minus_half(l * n + i),
                })
            }
        }
    }
}

/// A Fock space carrying charged free fields.
pub trait FreeFieldSpace: GlInfModule {
    /// Applies `θ_l` / `x_l` (plain) or `θ̄_l` / `x̄_l` (bar) for any sign of `l`.
    fn apply_var(&self, kind: FieldKind, l: HalfInt, v: &Lin<Self::Key>) -> Lin<Self::Key>;

    /// Sign from moving an annihilating barred variable to the right.
    fn reorder_sign(&self) -> Scalar;
}

impl FreeFieldSpace for Fermionic {
    fn apply_var(&self, kind: FieldKind, l: HalfInt, v: &Lin<Self::Key>) -> Lin<Self::Key> {
        match kind {
            FieldKind::Plain => ferm_gen(OddVar::Theta(l), v),
            FieldKind::Bar => ferm_gen(OddVar::Bar(l), v),
        }
    }
    fn reorder_sign(&self) -> Scalar {
        Scalar::from_int(-1)
    }
}

impl FreeFieldSpace for Bosonic {
    fn apply_var(&self, kind: FieldKind, l: HalfInt, v: &Lin<Self::Key>) -> Lin<Self::Key> {
        match kind {
            FieldKind::Plain => bose_gen(EvenVar::X(l), v),
            FieldKind::Bar => bose_gen(EvenVar::XBar(l), v),
        }
    }
    fn reorder_sign(&self) -> Scalar {
        Scalar::one()
    }
}

/// The field `E^ι_ij(r, z) = Σ_N σ^ι(t^N ∂^r E_ij) z^{-N-1}` on a Fock space
/// of an `n`-row configuration with `ℓ = 0`.
#[derive(Clone, Debug)]
pub struct IotaField {
    pub cfg: EllConfig,
    pub i: usize,
    pub j: usize,
    pub r: u32,
    pub iota: Scalar,
}

/// Constructor mirroring the field notation.
pub fn e_iota_field(cfg: &EllConfig, i: usize, j: usize, r: u32, iota: Scalar) -> IotaField {
    IotaField {
        cfg: cfg.clone(),
        i,
        j,
        r,
        iota,
    }
}

impl IotaField {
    /// The coefficient of `z^{-big_n-1}`, including the `Im` central term.
    pub fn mode(&self, big_n: i64) -> Result<ModeOp, AlgError> {
        match iota_class(&self.iota) {
            IotaClass::Integer => sigma_gl_integer(
                &self.cfg,
                self.i,
                self.j,
                big_n,
                self.r,
                self.iota.to_i64().unwrap_or(0),
            ),
            _ => Ok(sigma_gl(
                self.cfg.n, self.i, self.j, big_n, self.r, &self.iota,
            )),
        }
    }
}

/// Central term of the twisted product, from the residue of the
/// `θ̄`-insertion rule:
/// `c_r(ι) = Σ_{s=1}^{r+1} (-1)^s C(ι, s) Δ^{s-1}_q[C(ι-q-1, r)]`, where
/// `Δ^{p}_q f = Σ_{q=0}^{p} (-1)^q C(p, q) f(q)`.
pub fn twisted_central(iota: &Scalar, r: u32) -> Scalar {
    let mut acc = Scalar::zero();
    for s in 1..=r + 1 {
        let mut diff = Scalar::zero();
        for q in 0..s {
            let top = iota - &Scalar::from_int(q as i64 + 1);
            diff += sign_pow(q as i64) * gbinom((s - 1) as i64, q) * binom(&top, r);
        }
        acc += sign_pow(s as i64) * binom(iota, s) * diff;
    }
    acc
}

/// Mode `big_n` of the twisted normal-ordered product
/// `Y^ι(θ̄_{-n+i-1/2} θ_{-rn-j+1/2}, z)` applied to `v`: the product of
/// `z^{-ι}·(z^ι θ̄(ι, i, z))` split at the vacuum with `(1/r!) ∂^r θ(ι, j, z)`,
/// plus the central term.
pub fn quad_mode<M: FreeFieldSpace>(
    space: &M,
    n: usize,
    i: usize,
    j: usize,
    r: u32,
    iota: &Scalar,
    big_n: i64,
    v: &Lin<M::Key>,
) -> Lin<M::Key> {
    let bar = FreeField::new(FieldKind::Bar, iota.clone(), n, i, 0);
    let plain = FreeField::new(FieldKind::Plain, iota.clone(), n, j, 0);
    let total = ((big_n - r as i64) * n as i64 + i as i64 - j as i64).abs();
    let reach = space.reach_vec(v) / 2 + total + 2;
    let mut out = Lin::new();
    for k in -reach..=reach {
        let e = iota - &Scalar::from_int(k);
        let Some(b) = plain.index_at(&e) else {
            continue;
        };
        let coeff = binom(&e, r);
        if coeff.is_zero() {
            continue;
        }
        // The barred term must carry z^{-N-1-(e-r)}.
        let eb = &Scalar::from_int(-big_n - 1 + r as i64) - &e;
        let Some(a) = bar.index_at(&eb) else { continue };
        let w = if a.is_negative() {
            space.apply_var(FieldKind::Bar, a, &space.apply_var(FieldKind::Plain, b, v))
        } else {
            space
                .apply_var(FieldKind::Plain, b, &space.apply_var(FieldKind::Bar, a, v))
                .scaled(&space.reorder_sign())
        };
        out.add_scaled(&w, &coeff);
    }
    if i == j && big_n == r as i64 {
        out.add_scaled(v, &(twisted_central(iota, r) * space.kappa0()));
    }
    out
}

/// Checks `E^ι_ij(r, z) = r! Y^ι(θ̄_{-n+i-1/2} θ_{-rn-j+1/2}, z)` mode by
/// mode over the window, on every probe.
pub fn quad_identity_check<M: FreeFieldSpace>(
    space: &M,
    n: usize,
    (i, j, r): (usize, usize, u32),
    iota: &Scalar,
    window: &[i64],
    probes: &[Lin<M::Key>],
) -> Result<WindowReport, AlgError> {
    let cfg = EllConfig::gl(n, vec![0; n])?;
    let field = e_iota_field(&cfg, i, j, r, iota.clone());
    let mut rep = WindowReport::new("quad-identity");
    for &big_n in window {
        let op = field.mode(big_n)?;
        for v in probes {
            let lhs = op.apply(space, v);
            let rhs = quad_mode(space, n, i, j, r, iota, big_n, v).scaled(&factorial(r));
            rep.record(lhs == rhs, || {
                format!("E^ι_({i},{j})({r}) mode {big_n} at ι = {iota} on {v:?}")
            });
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{BoseMonomial, FermMonomial};
    use crate::numkernel::im_coeff;

    fn ferm(bars: &[i64], thetas: &[i64]) -> Lin<FermMonomial> {
        let h = |v: &[i64]| {
            v.iter()
                .map(|&d| HalfInt::from_doubled(d))
                .collect::<Vec<_>>()
        };
        let (m, s) = FermMonomial::from_lists(&h(bars), &h(thetas))
            .unwrap()
            .unwrap();
        Lin::single(m, Scalar::from_int(s))
    }

    fn ferm_probes() -> Vec<Lin<FermMonomial>> {
        vec![
            ferm(&[], &[]),
            ferm(&[-1], &[-3]),
            ferm(&[-3, -1], &[-1]),
            ferm(&[], &[-1, -5]),
        ]
    }

    fn bose_probes() -> Vec<Lin<BoseMonomial>> {
        let one = Lin::single(BoseMonomial::one(), Scalar::one());
        let a = bose_gen(EvenVar::X(HalfInt::from_doubled(-1)), &one);
        let b = bose_gen(EvenVar::XBar(HalfInt::from_doubled(-3)), &a);
        let c = bose_gen(EvenVar::X(HalfInt::from_doubled(-1)), &b);
        vec![one, a, b, c]
    }

    #[test]
    fn free_field_indices() {
        let third = Scalar::ratio(1, 3);
        let th = FreeField::new(FieldKind::Plain, third.clone(), 1, 1, 0);
        assert_eq!(th.index_at(&third), Some(HalfInt::from_doubled(-1)));
        assert_eq!(
            th.index_at(&(&third - &Scalar::one())),
            Some(HalfInt::from_doubled(1))
        );
        assert_eq!(th.index_at(&Scalar::zero()), None);
        let bar = FreeField::new(FieldKind::Bar, third.clone(), 2, 2, 0);
        // z^{-ι-1}: l = 0, index 2 - 1/2.
        assert_eq!(
            bar.index_at(&(&(-&third) - &Scalar::one())),
            Some(HalfInt::from_doubled(3))
        );
        // Integer ι with ℓ_i = 1 has no z⁰ term in θ.
        let shifted = FreeField::new(FieldKind::Plain, Scalar::zero(), 1, 1, 1);
        assert_eq!(shifted.index_at(&Scalar::zero()), None);
        assert_eq!(
            shifted.index_at(&Scalar::one()),
            Some(HalfInt::from_doubled(-1))
        );
        // With ℓ = 0 the integer families agree with the generic series.
        for kind in [FieldKind::Plain, FieldKind::Bar] {
            let int = FreeField::new(kind, Scalar::from_int(2), 2, 1, 0);
            for e in -4..=4 {
                let e = Scalar::from_int(e);
                let generic = match kind {
                    FieldKind::Plain => HalfInt::plus_half((2 - e.to_i64().unwrap()) * 2 - 1),
                    FieldKind::Bar => HalfInt::minus_half((-2 - 1 - e.to_i64().unwrap()) * 2 + 1),
                };
                assert_eq!(int.index_at(&e), Some(generic));
            }
        }
    }

    #[test]
    fn central_term_matches_im() {
        for iota in [
            Scalar::ratio(1, 3),
            Scalar::ratio(1, 2),
            Scalar::ratio(-7, 5),
            Scalar::from_int(2),
        ] {
            for r in 0..=4 {
                assert_eq!(
                    twisted_central(&iota, r),
                    im_coeff(&iota, 0, r),
                    "ι={iota} r={r}"
                );
            }
        }
    }

    #[test]
    fn diagonal_mode_on_vacuum() {
        let cfg = EllConfig::gl(1, vec![0]).unwrap();
        let one = ferm(&[], &[]);
        for iota in [Scalar::ratio(1, 3), Scalar::ratio(2, 7)] {
            let op = e_iota_field(&cfg, 1, 1, 0, iota.clone()).mode(0).unwrap();
            assert_eq!(op.apply(&Fermionic, &one), one.scaled(&(-&iota)));
        }
        let op = e_iota_field(&cfg, 1, 1, 0, Scalar::zero()).mode(0).unwrap();
        assert!(op.apply(&Fermionic, &one).is_zero());
    }

    #[test]
    fn quadratic_identity_holds() {
        let window: Vec<i64> = (-3..=3).collect();
        for iota in [Scalar::ratio(1, 3), Scalar::ratio(1, 2), Scalar::zero()] {
            for r in 0..=2 {
                let rep =
                    quad_identity_check(&Fermionic, 1, (1, 1, r), &iota, &window, &ferm_probes())
                        .unwrap();
                assert!(rep.pass, "{:?}", rep.counterexample);
                let rep =
                    quad_identity_check(&Bosonic, 1, (1, 1, r), &iota, &window, &bose_probes())
                        .unwrap();
                assert!(rep.pass, "{:?}", rep.counterexample);
            }
        }
        for (i, j) in [(1, 2), (2, 1), (2, 2)] {
            let rep = quad_identity_check(
                &Fermionic,
                2,
                (i, j, 1),
                &Scalar::ratio(1, 3),
                &window,
                &ferm_probes(),
            )
            .unwrap();
            assert!(rep.pass, "{:?}", rep.counterexample);
        }
    }

    #[test]
    fn identity_needs_the_factorial() {
        // Without the r! factor the two sides differ for r = 2.
        let cfg = EllConfig::gl(1, vec![0]).unwrap();
        let iota = Scalar::ratio(1, 3);
        let field = e_iota_field(&cfg, 1, 1, 2, iota.clone());
        let v = ferm(&[-1], &[-3]);
        let differs = (-3..=3).any(|big_n| {
            let lhs = field.mode(big_n).unwrap().apply(&Fermionic, &v);
            lhs != quad_mode(&Fermionic, 1, 1, 1, 2, &iota, big_n, &v) && !lhs.is_zero()
        });
        assert!(differs);
    }
}
