//! Alternate representation series of the skew subalgebras, realized on
//! modules of the infinite-matrix algebra with a shifted cocycle.
//!
//! Two families are provided. The half-integer family belongs to the
//! `α`-cocycle with `ι₀ = 0` and `ℓ_i = 2 m_i + ε`. The integer family is a
//! four-part `z`-series belonging to the `β`-cocycle. The formulas are
//! checked with [`check_hom_series`] on a [`Twisted`](crate::fock::Twisted)
//! module built from the matching step functions.

use crate::fock::GlInfModule;
use crate::matliealg::{
    decompose_skew, gen_skew, ghbracket, AlgError, EllConfig, GenKey, GlHatElem, Variant,
};
use crate::numkernel::{factorial, im_coeff, sign_pow, HalfInt, Lin, Scalar};

use super::{check_ops, HomReport, LineSum, ModeOp, Poly};

/// One summand family `Σ_{k} c Π⟨α + β k⟩_ord ℰ_{f(k), g(k)}` with
/// `f(k) = first0 ± k n` and `g(k) = second0 ∓ k n`, for `klo ≤ k ≤ khi`.
struct Family {
    c: Scalar,
    factors: Vec<(Scalar, i64, u32)>,
    first0: HalfInt,
    first_up: bool,
    second0: HalfInt,
    klo: i64,
    khi: Option<i64>,
}

impl Family {
    fn into_line(self, n: i64) -> Option<LineSum> {
        if let Some(h) = self.khi {
            if h < self.klo {
                return None;
            }
        }
        // λ = -k when the first index grows with k, else λ = k.
        let dir = if self.first_up { -1 } else { 1 };
        let coeff = self
            .factors
            .iter()
            .fold(Poly::constant(self.c.clone()), |p, (a, b, o)| {
                p.mul(&Poly::falling(a, b * dir, *o))
            });
        let (lo, hi) = if self.first_up {
            (self.khi.map(|h| -h), Some(-self.klo))
        } else {
            (Some(self.klo), self.khi)
        };
        Some(LineSum {
            a0: self.first0,
            b0: self.second0,
            step: n,
            coeff,
            lo,
            hi,
        })
    }
}

fn hi_at(n: i64, x: i64, i: usize) -> HalfInt {
    HalfInt::minus_half(x * n + i as i64)
}

fn lo_at(n: i64, x: i64, j: usize) -> HalfInt {
    HalfInt::plus_half(x * n - j as i64)
}

fn s(x: i64) -> Scalar {
    Scalar::from_int(x)
}

/// The half-integer series for the generator `gen_skew(i, j, M, r)` with
/// `M = k + m_i + m_j + r + ε`, `ℓ_i = 2 m_i + ε`, at `ι = 1/2`:
/// `Σ_l ⟨l - m_j - ε + 1/2⟩_r ((-1)^ε ⟨-l + m_j + ε - 3/2⟩_{ℓ_j} ℰ_{(k+l)n+i-1/2, -ln-j+1/2}
///  - p ⟨k + l + m_i + 1/2⟩_{ℓ_i} ℰ_{(-l+ε-1)n-j+1/2, (k+l+1-ε)n+i-1/2})`
/// plus `((r+ℓ_i)! Im_{0,r+ℓ_i} - r! ℓ_i! Im_{r,ℓ_i}) δ_{k+ε,0} δ_{ij} κ₀`, where `p` is
/// `1` for `o` and `(-1)^{p(i)+p(j)}` for `sp`.
pub fn sigma_half_series(key: GenKey, cfg: &EllConfig) -> Result<ModeOp, AlgError> {
    let (i, j, big_m, r) = key;
    let (li, lj) = (cfg.ell_of(i) as i64, cfg.ell_of(j) as i64);
    let eps = cfg.eps as i64;
    if (li - eps) % 2 != 0 || (lj - eps) % 2 != 0 || cfg.variant == Variant::Gl {
        return Err(AlgError::InvalidConfig(
            "half-integer series needs o/sp with ℓ_i ≡ ε mod 2".into(),
        ));
    }
    let (mi, mj) = ((li - eps) / 2, (lj - eps) / 2);
    let k = big_m - mi - mj - r as i64 - eps;
    let n = cfg.n as i64;
    let half = Scalar::ratio(1, 2);
    let p = match cfg.variant {
        Variant::Sp => sign_pow(cfg.parity(i) + cfg.parity(j)),
        _ => Scalar::one(),
    };
    // First part after l ↦ -l: ℰ_{(k-l)n+i-1/2, ln-j+1/2}.
    let first = LineSum::full(
        hi_at(n, k, i),
        lo_at(n, 0, j),
        n,
        Poly::falling(&(s(-mj - eps) + &half), -1, r)
            .mul(&Poly::falling(
                &(s(mj + eps) - Scalar::ratio(3, 2)),
                1,
                lj as u32,
            ))
            .scale(&sign_pow(eps)),
    );
    let second = LineSum::full(
        lo_at(n, eps - 1, j),
        hi_at(n, k + 1 - eps, i),
        n,
        Poly::falling(&(s(-mj - eps) + &half), 1, r)
            .mul(&Poly::falling(&(s(k + mi) + &half), 1, li as u32))
            .scale(&-p),
    );
    let central = if i == j && k + eps == 0 {
        central_pair(&half, r, li as u32, &Scalar::one())
    } else {
        Scalar::zero()
    };
    Ok(ModeOp {
        lines: vec![first, second],
        central,
    })
}

fn central_pair(iota: &Scalar, r: u32, li: u32, sign: &Scalar) -> Scalar {
    factorial(r + li) * im_coeff(iota, 0, r + li)
        - sign * factorial(r) * factorial(li) * im_coeff(iota, r, li)
}

/// The integer series: coefficient of `z^{-M-1}` in the four-part expansion
/// over `l, k ≥ 0` of the field attached to `E_{ij}` and `r`, with the
/// central term `[(r+ℓ_i)! Im_{0,r+ℓ_i} - (-1)^ε r! ℓ_i! Im_{r,ℓ_i}] δ_{ij}` at
/// `M = r + ℓ_i`.
pub fn sigma_int_series(key: GenKey, iota: &Scalar, cfg: &EllConfig) -> Result<ModeOp, AlgError> {
    let (i, j, big_m, r) = key;
    if cfg.variant == Variant::Gl {
        return Err(AlgError::InvalidConfig(
            "integer series needs o or sp".into(),
        ));
    }
    let (li, lj) = (cfg.ell_of(i) as i64, cfg.ell_of(j) as i64);
    let n = cfg.n as i64;
    let ri = r as i64;
    let e = sign_pow(cfg.eps as i64);
    let p = match cfg.variant {
        Variant::Sp => -sign_pow(cfg.parity(i) + cfg.parity(j)),
        _ => -Scalar::one(),
    };
    let kr = (s(0), 1, r);
    let mut fams = Vec::new();
    // z^{l+k-r}: l = r - 1 - M - k.
    let top = ri - 1 - big_m;
    fams.push(Family {
        c: e.clone(),
        factors: vec![kr.clone(), (s(-1), -1, lj as u32)],
        first0: hi_at(n, big_m - ri, i),
        first_up: true,
        second0: lo_at(n, 0, j),
        klo: 0,
        khi: Some(top),
    });
    fams.push(Family {
        c: p.clone(),
        factors: vec![kr.clone(), (s(big_m - ri), 1, li as u32)],
        first0: lo_at(n, 0, j),
        first_up: false,
        second0: hi_at(n, big_m - ri, i),
        klo: 0,
        khi: Some(top),
    });
    // z^{-l+k-ℓ_i-r-1}: l = D + k.
    let d = big_m - li - ri;
    fams.push(Family {
        c: e.clone(),
        factors: vec![kr.clone(), (s(-1), -1, lj as u32)],
        first0: hi_at(n, d, i),
        first_up: true,
        second0: lo_at(n, 0, j),
        klo: (-d).max(0),
        khi: None,
    });
    fams.push(Family {
        c: p.clone(),
        factors: vec![kr.clone(), (s(d + li), 1, li as u32)],
        first0: lo_at(n, 0, j),
        first_up: false,
        second0: hi_at(n, d, i),
        klo: (-d).max(0),
        khi: None,
    });
    // z^{l-k-ℓ_j-r-1}: l = k + G.
    let g = lj + ri - big_m;
    let kj = (s(-lj - 1), -1, r);
    fams.push(Family {
        c: e.clone(),
        factors: vec![kj.clone(), (s(lj), 1, lj as u32)],
        first0: hi_at(n, -g - 1, i),
        first_up: false,
        second0: lo_at(n, 1, j),
        klo: (-g).max(0),
        khi: None,
    });
    fams.push(Family {
        c: p.clone(),
        factors: vec![kj.clone(), (s(-g - 1), -1, li as u32)],
        first0: lo_at(n, 1, j),
        first_up: true,
        second0: hi_at(n, -g - 1, i),
        klo: (-g).max(0),
        khi: None,
    });
    // z^{-l-k-ℓ_i-ℓ_j-r-2}: l = P - k.
    let pp = big_m - li - lj - ri - 1;
    fams.push(Family {
        c: e.clone(),
        factors: vec![kj.clone(), (s(lj), 1, lj as u32)],
        first0: hi_at(n, pp, i),
        first_up: false,
        second0: lo_at(n, 1, j),
        klo: 0,
        khi: Some(pp),
    });
    fams.push(Family {
        c: p,
        factors: vec![kj, (s(pp + li), -1, li as u32)],
        first0: lo_at(n, 1, j),
        first_up: true,
        second0: hi_at(n, pp, i),
        klo: 0,
        khi: Some(pp),
    });
    let lines = fams.into_iter().filter_map(|f| f.into_line(n)).collect();
    let central = if i == j && big_m == ri + li {
        central_pair(iota, r, li as u32, &e)
    } else {
        Scalar::zero()
    };
    Ok(ModeOp { lines, central })
}

/// Image of a skew-subalgebra element under a generator-level series.
pub fn sigma_series(
    x: &GlHatElem,
    cfg: &EllConfig,
    series: &dyn Fn(GenKey) -> Result<ModeOp, AlgError>,
) -> Result<ModeOp, AlgError> {
    let (gens, kappa) = decompose_skew(x, cfg)?;
    let mut out = ModeOp::central(kappa);
    for (key, c) in gens.iter() {
        out = out.plus(series(*key)?.scale(c));
    }
    Ok(out)
}

/// Homomorphism check for a generator-level series on a pair of skew
/// generators.
pub fn check_hom_series<M: GlInfModule>(
    g: GenKey,
    h: GenKey,
    cfg: &EllConfig,
    series: &dyn Fn(GenKey) -> Result<ModeOp, AlgError>,
    module: &M,
    probes: &[Lin<M::Key>],
) -> Result<HomReport, AlgError> {
    let x = gen_skew(g.0, g.1, g.2, g.3, cfg)?;
    let y = gen_skew(h.0, h.1, h.2, h.3, cfg)?;
    let br = ghbracket(&x, &y)?;
    let sb = sigma_series(&br, cfg, series)?;
    Ok(check_ops(module, &series(g)?, &series(h)?, &sb, probes))
}
