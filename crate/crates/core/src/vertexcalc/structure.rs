//! The vertex-algebra structure map `Y` on a `gl` vacuum module, evaluated
//! one mode at a time.
//!
//! A generator `x = t^{-m-1} ∂^s E_ij` has `x_(a) = C(-a+m-1, m) t^{a-m} ∂^s E_ij`,
//! and a PBW monomial `x v` is handled by the normal-ordered rule
//! `(x v)_(a) = Σ_{b<0} x_(b) v_(a-b-1) + Σ_{b≥0} v_(a-b-1) x_(b)`.
//! Both sums are finite on a given vector because of the grading.

use std::cell::RefCell;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::matliealg::{GlHatElem, Variant};
use crate::numkernel::{factorial, gbinom, Lin, Scalar};
use crate::vacuum::{GenId, Monomial, VacError, VacVector, VacuumModule};

use super::WindowReport;

/// Mode evaluator for `Y(·, z)` on a `gl` vacuum module.
pub struct VertexStructure<'a> {
    module: &'a VacuumModule,
    cache: RefCell<BTreeMap<(Monomial, i64, Monomial), Lin<Monomial>>>,
}

fn max_degree(v: &Lin<Monomial>) -> i64 {
    v.keys()
        .map(|m| m.iter().map(|g| g.degree as i64).sum::<i64>())
        .max()
        .unwrap_or(0)
}

impl<'a> VertexStructure<'a> {
    pub fn new(module: &'a VacuumModule) -> Result<Self, VacError> {
        if module.cfg().variant != Variant::Gl {
            return Err(VacError::Unsupported(
                "the structure map is evaluated for gl vacuum modules only".into(),
            ));
        }
        Ok(VertexStructure {
            module,
            cache: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn module(&self) -> &VacuumModule {
        self.module
    }

    fn wrap(&self, terms: Lin<Monomial>) -> VacVector {
        VacVector {
            chi: self.module.chi().clone(),
            terms,
        }
    }

    /// `x_(b)` for the generator `g` as an element of the algebra.
    fn generator_mode(&self, g: GenId, b: i64) -> GlHatElem {
        let x = self.module.generator(g);
        let mut out = GlHatElem::zero(x.n);
        for (i, j, m, s, c) in x.iter() {
            let mm = -m - 1;
            let coeff = gbinom(-b + mm - 1, mm as u32);
            out = out.add(&GlHatElem::term(x.n, i, j, b - mm, s, c * &coeff));
        }
        out
    }

    fn act_lin(&self, x: &GlHatElem, w: &Lin<Monomial>) -> Result<Lin<Monomial>, VacError> {
        Ok(self.module.act(x, &self.wrap(w.clone()))?.terms)
    }

    fn mono_mode(&self, v: &[GenId], a: i64, w: &[GenId]) -> Result<Lin<Monomial>, VacError> {
        let Some((&g, rest)) = v.split_first() else {
            let unit = Lin::single(w.to_vec(), Scalar::one());
            return Ok(if a == -1 { unit } else { Lin::new() });
        };
        let key = (v.to_vec(), a, w.to_vec());
        if let Some(hit) = self.cache.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let single = Lin::single(w.to_vec(), Scalar::one());
        let dw = max_degree(&single);
        let drest: i64 = rest.iter().map(|g| g.degree as i64).sum();
        let dx = g.degree as i64;
        let mut out = Lin::new();
        // Creation half: x_(b) v_(a-b-1) w with b < 0.
        for b in (a - drest - dw)..0 {
            let inner = self.lin_mode(rest, a - b - 1, &single)?;
            if !inner.is_zero() {
                out.add_assign(&self.act_lin(&self.generator_mode(g, b), &inner)?);
            }
        }
        // Annihilation half: v_(a-b-1) x_(b) w with b ≥ 0.
        for b in 0..(dx + dw) {
            let inner = self.act_lin(&self.generator_mode(g, b), &single)?;
            if !inner.is_zero() {
                out.add_assign(&self.lin_mode(rest, a - b - 1, &inner)?);
            }
        }
        self.cache.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    fn lin_mode(&self, v: &[GenId], a: i64, w: &Lin<Monomial>) -> Result<Lin<Monomial>, VacError> {
        let mut out = Lin::new();
        for (mono, c) in w.iter() {
            out.add_scaled(&self.mono_mode(v, a, mono)?, c);
        }
        Ok(out)
    }

    /// `v_(a) w`, the coefficient of `z^{-a-1}` in `Y(v, z) w`.
    pub fn mode(&self, v: &VacVector, a: i64, w: &VacVector) -> Result<VacVector, VacError> {
        let mut out = Lin::new();
        for (mono, c) in v.terms.iter() {
            out.add_scaled(&self.lin_mode(mono, a, &w.terms)?, c);
        }
        Ok(self.wrap(out))
    }

    /// The derivation `∂`, with `∂(t^m ∂^s E_ij) = -m t^{m-1} ∂^s E_ij` on
    /// each PBW factor.
    pub fn translation(&self, v: &VacVector) -> Result<VacVector, VacError> {
        let mut out = Lin::new();
        for (mono, c) in v.terms.iter() {
            for pos in 0..mono.len() {
                let mut w = self.module.vacuum();
                for (k, &g) in mono.iter().enumerate().rev() {
                    let x = self.module.generator(g);
                    let x = if k == pos { derive(&x) } else { x };
                    w = self.module.act(&x, &w)?;
                }
                out.add_scaled(&w.terms, c);
            }
        }
        Ok(self.wrap(out))
    }
}

fn derive(x: &GlHatElem) -> GlHatElem {
    let mut out = GlHatElem::zero(x.n);
    for (i, j, m, s, c) in x.iter() {
        out = out.add(&GlHatElem::term(
            x.n,
            i,
            j,
            m - 1,
            s,
            c * &Scalar::from_int(-m),
        ));
    }
    out
}

/// Result of a locality search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalityReport {
    /// Least `m` with `(z₁ - z₂)^m [Y(u, z₁), Y(v, z₂)] = 0` on the window.
    pub order: Option<u32>,
    pub window: Vec<(i64, i64)>,
    pub checked: usize,
    pub counterexample: Option<String>,
}

/// Searches `m ≤ m_max` such that every window coefficient
/// `Σ_k (-1)^k C(m, k) [u_(a+m-k), v_(b+k)] w` vanishes.
pub fn locality(
    y: &VertexStructure<'_>,
    u: &VacVector,
    v: &VacVector,
    w: &VacVector,
    window: &[(i64, i64)],
    m_max: u32,
) -> Result<LocalityReport, VacError> {
    let mut comm: BTreeMap<(i64, i64), Lin<Monomial>> = BTreeMap::new();
    let mut bracket = |a: i64, b: i64| -> Result<Lin<Monomial>, VacError> {
        if let Some(hit) = comm.get(&(a, b)) {
            return Ok(hit.clone());
        }
        let uv = y.mode(u, a, &y.mode(v, b, w)?)?;
        let vu = y.mode(v, b, &y.mode(u, a, w)?)?;
        let c = uv.terms.minus(&vu.terms);
        comm.insert((a, b), c.clone());
        Ok(c)
    };
    let mut checked = 0;
    let mut last = None;
    for m in 0..=m_max {
        let mut bad = None;
        for &(a, b) in window {
            let mut acc = Lin::new();
            for k in 0..=m {
                let c = gbinom(m as i64, k) * crate::numkernel::sign_pow(k as i64);
                acc.add_scaled(&bracket(a + (m - k) as i64, b + k as i64)?, &c);
            }
            checked += 1;
            if !acc.is_zero() {
                bad = Some(format!(
                    "m = {m}, modes ({a},{b}) leave {} terms",
                    acc.len()
                ));
                break;
            }
        }
        match bad {
            None => {
                return Ok(LocalityReport {
                    order: Some(m),
                    window: window.to_vec(),
                    checked,
                    counterexample: None,
                })
            }
            Some(msg) => last = Some(msg),
        }
    }
    Ok(LocalityReport {
        order: None,
        window: window.to_vec(),
        checked,
        counterexample: last,
    })
}

/// `[∂, v_(a)] w = -a v_(a-1) w` over the window and probes, and
/// `Y(v, z)|0⟩ = e^{z∂} v` up to `z^order`.
pub fn translation_axiom(
    y: &VertexStructure<'_>,
    v: &VacVector,
    probes: &[VacVector],
    window: &[i64],
    order: u32,
) -> Result<WindowReport, VacError> {
    let mut rep = WindowReport::new("translation");
    for w in probes {
        let dw = y.translation(w)?;
        for &a in window {
            let lhs = y
                .translation(&y.mode(v, a, w)?)?
                .terms
                .minus(&y.mode(v, a, &dw)?.terms);
            let rhs = y.mode(v, a - 1, w)?.terms.scaled(&Scalar::from_int(-a));
            rep.record(lhs == rhs, || format!("[∂, v_({a})] on {:?}", w.terms));
        }
    }
    let vac = y.module().vacuum();
    let mut power = v.clone();
    for k in 0..=order {
        let lhs = y.mode(v, -(k as i64) - 1, &vac)?;
        let rhs = power.terms.scaled(&factorial(k).recip());
        rep.record(lhs.terms == rhs, || {
            format!("coefficient of z^{k} in Y(v, z)|0⟩")
        });
        let pos = y.mode(v, k as i64, &vac)?;
        rep.record(pos.is_zero(), || format!("v_({k})|0⟩ ≠ 0"));
        power = y.translation(&power)?;
    }
    Ok(rep)
}

/// Commutator check of the Virasoro candidate `ω = -t^{-1}∂ Σ_i E_ii |0⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VirasoroReport {
    /// The central scalar solved from the modes, if any mode pair fixes it.
    pub central_charge: Option<Scalar>,
    pub consistent: bool,
    pub checked: usize,
    pub counterexample: Option<String>,
}

/// The Virasoro candidate vector.
pub fn virasoro_vector(module: &VacuumModule) -> Result<VacVector, VacError> {
    let n = module.cfg().n;
    let mut x = GlHatElem::zero(n);
    for i in 1..=n {
        x = x.add(&GlHatElem::term(n, i, i, -1, 1, Scalar::from_int(-1)));
    }
    module.act(&x, &module.vacuum())
}

/// With `L_a = ω_(a+1)`, checks
/// `[L_a, L_b] = (a - b) L_{a+b} + δ_{a+b,0} c (a³ - a)/12` for
/// `|a|, |b| ≤ reach` on every probe, solving for `c`.
pub fn virasoro_check(
    y: &VertexStructure<'_>,
    reach: i64,
    probes: &[VacVector],
) -> Result<VirasoroReport, VacError> {
    let omega = virasoro_vector(y.module())?;
    let l = |a: i64, w: &VacVector| y.mode(&omega, a + 1, w);
    let mut rep = VirasoroReport {
        central_charge: None,
        consistent: true,
        checked: 0,
        counterexample: None,
    };
    let fail = |rep: &mut VirasoroReport, msg: String| {
        if rep.consistent {
            rep.consistent = false;
            rep.counterexample = Some(msg);
        }
    };
    for w in probes {
        for a in -reach..=reach {
            for b in -reach..=reach {
                let lhs = l(a, &l(b, w)?)?.terms.minus(&l(b, &l(a, w)?)?.terms);
                let resid = lhs.minus(&l(a + b, w)?.terms.scaled(&Scalar::from_int(a - b)));
                rep.checked += 1;
                let weight = Scalar::ratio(a * a * a - a, 12);
                if a + b != 0 || weight.is_zero() {
                    if !resid.is_zero() {
                        fail(
                            &mut rep,
                            format!("[L_{a}, L_{b}] has an unexpected remainder"),
                        );
                    }
                    continue;
                }
                // The remainder must be c·weight·w.
                let Some((mono, coeff)) = w.terms.iter().next() else {
                    continue;
                };
                let c = &(&resid.coeff(mono) / coeff) / &weight;
                if resid != w.terms.scaled(&(&c * &weight)) {
                    fail(
                        &mut rep,
                        format!("[L_{a}, L_{b}] remainder is not a multiple of the probe"),
                    );
                    continue;
                }
                match rep.central_charge.clone() {
                    None => rep.central_charge = Some(c),
                    Some(prev) if prev != c => {
                        fail(&mut rep, format!("c = {prev} and c = {c} from ({a},{b})"))
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(rep)
}
