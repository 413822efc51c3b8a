//! Vacuum modules `U(𝒢₋)|0⟩` for the `ℓ`-algebras and their skew
//! subalgebras.
//!
//! Elements are stored in PBW normal form: weakly increasing sequences of
//! negative-part basis generators applied to `|0⟩`. The positive part kills
//! `|0⟩` and `κ` acts by the level `χ`. Everything else is computed by
//! commuting through with the algebra bracket.
//!
//! Gradings: for `gl` a term `t^m ∂^s E_{ij}` has degree `s - m`; for the
//! skew subalgebras the grade is `s - ℓ_j - m`, which the involution
//! preserves, so each grade slice of `𝒢₋` has a basis obtained by row
//! reduction of the skew generators of that grade.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matliealg::{
    decompose_skew, gen_skew, ghbracket, in_subalgebra, AlgError, EllConfig, GlHatElem, Variant,
};
use crate::numkernel::{qseries_expand_product, Lin, QSeries, Scalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VacError {
    #[error("element is not in the algebra of this vacuum module: {0}")]
    NotInAlgebra(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

type Key = (usize, usize, i64, u32);

/// Identifier of a negative-part basis generator: its grade and its
/// position in the row-reduced basis of that grade.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenId {
    pub degree: u32,
    pub index: u32,
}

/// A negative-part basis generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwGen {
    pub id: GenId,
    /// The coordinate that is `1` here and `0` in every other generator of
    /// the same grade.
    pub pivot: Key,
    pub elem: GlHatElem,
}

/// A PBW monomial: weakly increasing generator ids.
pub type Monomial = Vec<GenId>;

/// A vector of a vacuum module in PBW normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VacVector {
    pub chi: Scalar,
    pub terms: Lin<Monomial>,
}

impl VacVector {
    pub fn vacuum(chi: Scalar) -> Self {
        VacVector {
            chi,
            terms: Lin::single(Vec::new(), Scalar::one()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// The common degree of all monomials, when homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self
            .terms
            .keys()
            .map(|m| m.iter().map(|g| g.degree).sum::<u32>());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

/// The grade of a basis term under the grading used for `cfg`.
pub fn term_grade(cfg: &EllConfig, j: usize, m: i64, s: u32) -> i64 {
    match cfg.variant {
        Variant::Gl => s as i64 - m,
        _ => s as i64 - cfg.ell_of(j) as i64 - m,
    }
}

/// A deterministic basis of the grade-`k` slice of `𝒢₋`.
///
/// For `gl` this is `t^{r-k'} ∂^{r+ℓ_j} E_{ij}` in the order `(i, j, m)`. For
/// the skew subalgebras the spanning family `gen_skew(i, j, r-k, r)`,
/// `0 ≤ r < k`, is brought to reduced row-echelon form with the smallest
/// nonzero coordinate as pivot.
pub fn neg_basis(cfg: &EllConfig, k: u32) -> Vec<PbwGen> {
    let n = cfg.n;
    let k64 = k as i64;
    let mut out = Vec::new();
    match cfg.variant {
        Variant::Gl => {
            for i in 1..=n {
                for j in 1..=n {
                    let lj = cfg.ell_of(j) as i64;
                    for m in (lj - k64)..=-1 {
                        let s = (k64 + m) as u32;
                        let key = (i, j, m, s);
                        out.push(PbwGen {
                            id: GenId {
                                degree: k,
                                index: out.len() as u32,
                            },
                            pivot: key,
                            elem: GlHatElem::basis(n, i, j, m, s),
                        });
                    }
                }
            }
        }
        _ => {
            let mut rows: Vec<(Key, Lin<Key>)> = Vec::new();
            for i in 1..=n {
                for j in 1..=n {
                    for r in 0..k {
                        let g = gen_skew(i, j, r as i64 - k64, r, cfg)
                            .expect("indices in range for a valid config");
                        let mut v = g.terms;
                        for (p, row) in &rows {
                            let c = v.coeff(p);
                            if !c.is_zero() {
                                v.sub_assign(&row.scaled(&c));
                            }
                        }
                        let Some((&p, c)) = v.iter().next() else {
                            continue;
                        };
                        let v = v.scaled(&c.recip());
                        for (_, row) in rows.iter_mut() {
                            let c = row.coeff(&p);
                            if !c.is_zero() {
                                row.sub_assign(&v.scaled(&c));
                            }
                        }
                        rows.push((p, v));
                    }
                }
            }
            rows.sort_by_key(|a| a.0);
            for (idx, (p, v)) in rows.into_iter().enumerate() {
                out.push(PbwGen {
                    id: GenId {
                        degree: k,
                        index: idx as u32,
                    },
                    pivot: p,
                    elem: GlHatElem {
                        n,
                        terms: v,
                        kappa: Scalar::zero(),
                    },
                });
            }
        }
    }
    out
}

/// Exact character `Σ_k dim V_(k) q^k` up to `q^order`, counting PBW
/// monomials over [`neg_basis`].
pub fn character(cfg: &EllConfig, order: usize) -> QSeries {
    let dims: Vec<(usize, u64)> = (1..=order as u32)
        .map(|k| (k as usize, neg_basis(cfg, k).len() as u64))
        .collect();
    qseries_expand_product(&dims, order)
}

/// The printed product formula for the character.
///
/// `gl`: `∏_i ∏_{r≥1} (1 - q^{ℓ_i + r})^{-rn}`.
/// `o`/`sp`: `∏_{r≥1} (1 - q^r)^{-n(r(n-1)/2 + rε + (-1)^ε ⌊r/2⌋)}`.
pub fn closed_character(cfg: &EllConfig, order: usize) -> QSeries {
    let n = cfg.n as i64;
    let mut factors = Vec::new();
    match cfg.variant {
        Variant::Gl => {
            for i in 1..=cfg.n {
                for r in 1..=order as i64 {
                    let e = cfg.ell_of(i) as i64 + r;
                    if e as usize <= order {
                        factors.push((e as usize, (r * n) as u64));
                    }
                }
            }
        }
        _ => {
            let eps = cfg.eps as i64;
            for r in 1..=order as i64 {
                let sign = if eps == 0 { 1 } else { -1 };
                let twice = n * (r * (n - 1) + 2 * r * eps + 2 * sign * (r / 2));
                factors.push((r as usize, (twice / 2) as u64));
            }
        }
    }
    qseries_expand_product(&factors, order)
}

/// Dimension of the grade-`k` span of `t^{r-k} ∂^r - (-1)^ε (-∂)^r t^{r-k}`,
/// `0 ≤ r < k`, as given by the closed formula `kε + (-1)^ε ⌊k/2⌋`.
pub fn slice_dim_formula(k: u32, eps: u8) -> i64 {
    let k = k as i64;
    if eps == 0 {
        k / 2
    } else {
        k - k / 2
    }
}

/// The vacuum module of level `χ` with memoized straightening.
pub struct VacuumModule {
    cfg: EllConfig,
    chi: Scalar,
    slices: RefCell<BTreeMap<u32, std::rc::Rc<Vec<PbwGen>>>>,
    neg_cache: RefCell<HashMap<(GenId, Monomial), Lin<Monomial>>>,
    pos_cache: RefCell<HashMap<(Key, Monomial), Lin<Monomial>>>,
}

impl VacuumModule {
    pub fn new(cfg: EllConfig, chi: Scalar) -> Self {
        VacuumModule {
            cfg,
            chi,
            slices: RefCell::new(BTreeMap::new()),
            neg_cache: RefCell::new(HashMap::new()),
            pos_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn cfg(&self) -> &EllConfig {
        &self.cfg
    }

    pub fn chi(&self) -> &Scalar {
        &self.chi
    }

    pub fn vacuum(&self) -> VacVector {
        VacVector::vacuum(self.chi.clone())
    }

    fn slice(&self, k: u32) -> std::rc::Rc<Vec<PbwGen>> {
        if let Some(s) = self.slices.borrow().get(&k) {
            return s.clone();
        }
        let s = std::rc::Rc::new(neg_basis(&self.cfg, k));
        self.slices.borrow_mut().insert(k, s.clone());
        s
    }

    pub fn generator(&self, id: GenId) -> GlHatElem {
        self.slice(id.degree)[id.index as usize].elem.clone()
    }

    /// Whether `x` lies in the algebra this module is built on.
    pub fn contains(&self, x: &GlHatElem) -> bool {
        if x.n != self.cfg.n {
            return false;
        }
        let ideal = x.iter().all(|(_, j, _, s, _)| s >= self.cfg.ell_of(j));
        ideal && (self.cfg.variant == Variant::Gl || in_subalgebra(x, &self.cfg))
    }

    /// Coordinates of a negative element in the PBW generators.
    fn decompose_negative(&self, y: &Lin<Key>) -> Lin<GenId> {
        let mut by_grade: BTreeMap<i64, Lin<Key>> = BTreeMap::new();
        for (&(i, j, m, s), c) in y.iter() {
            by_grade
                .entry(term_grade(&self.cfg, j, m, s))
                .or_default()
                .add_term((i, j, m, s), c.clone());
        }
        let mut out = Lin::new();
        for (k, part) in by_grade {
            let slice = self.slice(k as u32);
            let mut rest = part.clone();
            for g in slice.iter() {
                let c = part.coeff(&g.pivot);
                if !c.is_zero() {
                    rest.sub_assign(&g.elem.terms.scaled(&c));
                    out.add_term(g.id, c);
                }
            }
            assert!(
                rest.is_zero(),
                "negative part outside the row-reduced span in grade {k}"
            );
        }
        out
    }

    /// Positive part split into the keys the cache is indexed by: basis
    /// terms for `gl`, skew generator data otherwise.
    fn decompose_positive(&self, y: &GlHatElem) -> Lin<Key> {
        if y.terms.is_empty() {
            return Lin::new();
        }
        match self.cfg.variant {
            Variant::Gl => y.terms.clone(),
            _ => {
                decompose_skew(y, &self.cfg)
                    .expect("positive part of a skew element")
                    .0
            }
        }
    }

    fn positive_elem(&self, key: Key) -> GlHatElem {
        let (i, j, m, r) = key;
        match self.cfg.variant {
            Variant::Gl => GlHatElem::basis(self.cfg.n, i, j, m, r),
            _ => gen_skew(i, j, m, r, &self.cfg).expect("valid skew key"),
        }
    }

    /// `y · mono` for an element already known to be in the algebra.
    fn act_elem_mono(&self, y: &GlHatElem, mono: &[GenId]) -> Lin<Monomial> {
        let mut out = Lin::new();
        let target = Lin::single(mono.to_vec(), Scalar::one());
        if !y.kappa.is_zero() {
            out.add_scaled(&target, &(&y.kappa * &self.chi));
        }
        let mut neg = Lin::new();
        let mut pos = GlHatElem::zero(y.n);
        for (i, j, m, s, c) in y.iter() {
            if m < 0 {
                neg.add_term((i, j, m, s), c.clone());
            } else {
                pos = pos.add(&GlHatElem::term(y.n, i, j, m, s, c.clone()));
            }
        }
        for (g, c) in self.decompose_negative(&neg).iter() {
            out.add_scaled(&self.act_gen(*g, mono), c);
        }
        for (key, c) in self.decompose_positive(&pos).iter() {
            out.add_scaled(&self.act_pos(*key, mono), c);
        }
        out
    }

    fn act_elem_vec(&self, y: &GlHatElem, v: &Lin<Monomial>) -> Lin<Monomial> {
        let mut out = Lin::new();
        for (mono, c) in v.iter() {
            out.add_scaled(&self.act_elem_mono(y, mono), c);
        }
        out
    }

    fn act_gen_vec(&self, g: GenId, v: &Lin<Monomial>) -> Lin<Monomial> {
        let mut out = Lin::new();
        for (mono, c) in v.iter() {
            out.add_scaled(&self.act_gen(g, mono), c);
        }
        out
    }

    /// Negative generator times a normal-ordered monomial.
    fn act_gen(&self, g: GenId, mono: &[GenId]) -> Lin<Monomial> {
        if mono.first().is_none_or(|u| g <= *u) {
            let mut m = Vec::with_capacity(mono.len() + 1);
            m.push(g);
            m.extend_from_slice(mono);
            return Lin::single(m, Scalar::one());
        }
        let key = (g, mono.to_vec());
        if let Some(hit) = self.neg_cache.borrow().get(&key) {
            return hit.clone();
        }
        let u = mono[0];
        let rest = &mono[1..];
        let inner = self.act_gen(g, rest);
        let mut out = self.act_gen_vec(u, &inner);
        let br = ghbracket(&self.generator(g), &self.generator(u)).expect("same size");
        out.add_assign(&self.act_elem_mono(&br, rest));
        self.neg_cache.borrow_mut().insert(key, out.clone());
        out
    }

    /// Positive element (by cache key) times a normal-ordered monomial.
    fn act_pos(&self, key: Key, mono: &[GenId]) -> Lin<Monomial> {
        if mono.is_empty() {
            return Lin::new();
        }
        let ck = (key, mono.to_vec());
        if let Some(hit) = self.pos_cache.borrow().get(&ck) {
            return hit.clone();
        }
        let u = mono[0];
        let rest = &mono[1..];
        let x = self.positive_elem(key);
        let br = ghbracket(&x, &self.generator(u)).expect("same size");
        let mut out = self.act_elem_mono(&br, rest);
        let inner = self.act_pos(key, rest);
        out.add_assign(&self.act_gen_vec(u, &inner));
        self.pos_cache.borrow_mut().insert(ck, out.clone());
        out
    }

    /// `x · v`, with `x` checked for membership.
    pub fn act(&self, x: &GlHatElem, v: &VacVector) -> Result<VacVector, VacError> {
        if !self.contains(x) {
            return Err(VacError::NotInAlgebra(format!("{x:?}")));
        }
        Ok(VacVector {
            chi: v.chi.clone(),
            terms: self.act_elem_vec(x, &v.terms),
        })
    }

    /// `g₁ g₂ ⋯ g_k |0⟩` for generator ids in any order.
    pub fn pbw(&self, gens: &[GenId]) -> VacVector {
        let mut v = Lin::single(Vec::new(), Scalar::one());
        for &g in gens.iter().rev() {
            v = self.act_gen_vec(g, &v);
        }
        VacVector {
            chi: self.chi.clone(),
            terms: v,
        }
    }

    /// Negative-part basis of grade `k`.
    pub fn basis(&self, k: u32) -> Vec<PbwGen> {
        self.slice(k).as_ref().clone()
    }

    /// The element whose `(χ+1)`-st power on `|0⟩` generates the maximal
    /// submodule.
    pub fn singular_root(&self) -> Result<GlHatElem, VacError> {
        let cfg = &self.cfg;
        let n = cfg.n;
        let first = || GlHatElem::basis(n, n, 1, -1, cfg.ell_of(1));
        let second = || {
            GlHatElem::basis(n, n - 1, 1, -1, cfg.ell_of(1)).sub(&GlHatElem::basis(
                n,
                n,
                2,
                -1,
                cfg.ell_of(2),
            ))
        };
        let elem = match (cfg.variant, cfg.eps) {
            (Variant::Gl, _) if n > 1 => first(),
            (Variant::O, 1) | (Variant::Sp, 0) if n > 1 => gen_skew(n, 1, -1, 0, cfg)?,
            (Variant::O, 0) | (Variant::Sp, 1) if n > 3 => second(),
            _ => {
                return Err(VacError::Unsupported(format!(
                    "{:?} with n = {n}, ε = {}",
                    cfg.variant, cfg.eps
                )))
            }
        };
        // For the skew algebras with ε matching the first case the generator is
        // twice the printed element; rescale to the printed normalization.
        let elem = match (cfg.variant, cfg.eps) {
            (Variant::O, 1) | (Variant::Sp, 0) if n > 1 => {
                let c = elem.terms.coeff(&(n, 1, -1, cfg.ell_of(1)));
                elem.scale(&c.recip())
            }
            _ => elem,
        };
        if !self.contains(&elem) {
            return Err(VacError::NotInAlgebra(format!("{elem:?}")));
        }
        Ok(elem)
    }

    /// `x^{χ+1} |0⟩` with `x` from [`VacuumModule::singular_root`].
    pub fn singular_vector(&self) -> Result<VacVector, VacError> {
        let chi = self
            .chi
            .to_i64()
            .filter(|c| *c >= 0)
            .ok_or_else(|| VacError::Unsupported("χ must be a nonnegative integer".into()))?;
        let x = self.singular_root()?;
        let mut v = self.vacuum();
        for _ in 0..=chi {
            v = self.act(&x, &v)?;
        }
        Ok(v)
    }

    /// The positive elements probed by [`VacuumModule::check_singular`]:
    /// grade `-d` for `1 ≤ d ≤ depth`, degree-zero lower-triangular and
    /// degree-zero diagonal, each with `r ≤ depth`.
    pub fn probe_elements(&self, depth: u32) -> (Vec<GlHatElem>, Vec<GlHatElem>, Vec<GlHatElem>) {
        let cfg = &self.cfg;
        let n = cfg.n;
        let make = |i: usize, j: usize, m: i64, r: u32| match cfg.variant {
            Variant::Gl => Some(GlHatElem::basis(n, i, j, m, r + cfg.ell_of(j))),
            _ => gen_skew(i, j, m, r, cfg)
                .ok()
                .filter(|g| !g.terms.is_empty()),
        };
        // For `gl` the grade of t^m ∂^{r+ℓ_j} is r + ℓ_j - m; for the skew
        // algebras it is r - m.
        let shift = |j: usize| {
            if cfg.variant == Variant::Gl {
                cfg.ell_of(j) as i64
            } else {
                0
            }
        };
        let (mut neg, mut lower, mut diag) = (Vec::new(), Vec::new(), Vec::new());
        for i in 1..=n {
            for j in 1..=n {
                for r in 0..=depth {
                    for d in 1..=depth as i64 {
                        neg.extend(make(i, j, r as i64 + shift(j) + d, r));
                    }
                    let zero = make(i, j, r as i64 + shift(j), r);
                    if i > j {
                        lower.extend(zero);
                    } else if i == j {
                        diag.extend(zero);
                    }
                }
            }
        }
        (neg, lower, diag)
    }

    /// Singular-vector check on `v`: the probe families of
    /// [`VacuumModule::probe_elements`] annihilate `v` or (diagonal) act on
    /// it by scalars.
    pub fn check_singular(&self, v: &VacVector, depth: u32) -> Result<SingularReport, VacError> {
        let (neg, lower, diag) = self.probe_elements(depth);
        let mut rep = SingularReport {
            checked: 0,
            pass: true,
            counterexample: None,
        };
        for x in neg.iter().chain(lower.iter()) {
            let w = self.act(x, v)?;
            rep.checked += 1;
            if !w.is_zero() && rep.pass {
                rep.pass = false;
                rep.counterexample = Some(format!("{x:?} does not annihilate the vector"));
            }
        }
        for x in &diag {
            let w = self.act(x, v)?;
            rep.checked += 1;
            if !is_multiple(&w.terms, &v.terms) && rep.pass {
                rep.pass = false;
                rep.counterexample = Some(format!("{x:?} does not act by a scalar"));
            }
        }
        Ok(rep)
    }
}

fn is_multiple(w: &Lin<Monomial>, v: &Lin<Monomial>) -> bool {
    let Some((m, c)) = v.iter().next() else {
        return w.is_zero();
    };
    let k = &w.coeff(m) / c;
    w == &v.scaled(&k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularReport {
    pub checked: usize,
    pub pass: bool,
    pub counterexample: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{FermMonomial, Fermionic, GlInfModule, TensorPower};
    use crate::repmap::sigma_elem;
    use proptest::prelude::*;

    fn gl(n: usize, ell: Vec<u32>) -> EllConfig {
        EllConfig::gl(n, ell).unwrap()
    }

    fn ints(s: &QSeries) -> Vec<i64> {
        s.to_integers().unwrap()
    }

    /// Brute-force count of weakly increasing generator sequences.
    fn count_monomials(dims: &[usize], order: usize) -> Vec<i64> {
        let gens: Vec<usize> = dims
            .iter()
            .enumerate()
            .flat_map(|(k, &d)| std::iter::repeat_n(k + 1, d))
            .collect();
        let mut counts = vec![0i64; order + 1];
        fn go(gens: &[usize], start: usize, total: usize, order: usize, counts: &mut [i64]) {
            counts[total] += 1;
            for idx in start..gens.len() {
                if total + gens[idx] <= order {
                    go(gens, idx, total + gens[idx], order, counts);
                }
            }
        }
        go(&gens, 0, 0, order, &mut counts);
        counts
    }

    #[test]
    fn gl_basis_sizes() {
        let cfg = gl(1, vec![0]);
        let b = neg_basis(&cfg, 3);
        assert_eq!(b.len(), 3);
        let keys: Vec<Key> = b.iter().map(|g| g.pivot).collect();
        assert_eq!(keys, vec![(1, 1, -3, 0), (1, 1, -2, 1), (1, 1, -1, 2)]);
        let cfg = gl(2, vec![1, 0]);
        // Column 1 contributes k - 1 per row, column 2 contributes k.
        assert_eq!(neg_basis(&cfg, 3).len(), 2 * 2 + 2 * 3);
    }

    #[test]
    fn skew_slice_examples() {
        let o0 = EllConfig::spanning(Variant::O, 1, vec![0], 0).unwrap();
        assert!(neg_basis(&o0, 1).is_empty());
        let o1 = EllConfig::spanning(Variant::O, 1, vec![0], 1).unwrap();
        assert_eq!(neg_basis(&o1, 2).len(), 1);
        for k in 1..=10 {
            assert_eq!(
                neg_basis(&o0, k).len() as i64,
                slice_dim_formula(k, 0),
                "k={k}"
            );
            assert_eq!(
                neg_basis(&o1, k).len() as i64,
                slice_dim_formula(k, 1),
                "k={k}"
            );
        }
    }

    #[test]
    fn characters_against_enumeration() {
        assert_eq!(
            ints(&character(&gl(1, vec![0]), 5)),
            vec![1, 1, 3, 6, 13, 24]
        );
        assert_eq!(ints(&character(&gl(2, vec![0, 0]), 2)), vec![1, 4, 18]);
        assert_eq!(ints(&character(&gl(3, vec![0, 0, 0]), 0)), vec![1]);
        for cfg in [gl(1, vec![0]), gl(2, vec![1, 1]), gl(1, vec![2])] {
            let dims: Vec<usize> = (1..=6).map(|k| neg_basis(&cfg, k).len()).collect();
            assert_eq!(ints(&character(&cfg, 6)), count_monomials(&dims, 6));
        }
    }

    #[test]
    fn closed_forms_match_on_pinned_cases() {
        for (n, ell) in [(1, vec![0]), (2, vec![0, 0]), (2, vec![1, 1]), (1, vec![2])] {
            let cfg = gl(n, ell);
            assert_eq!(character(&cfg, 8), closed_character(&cfg, 8), "{cfg:?}");
        }
        assert_eq!(
            ints(&closed_character(&gl(1, vec![0]), 8)),
            vec![1, 1, 3, 6, 13, 24, 48, 86, 160]
        );
        for n in [1usize, 2] {
            for eps in [0u8, 1] {
                let cfg = EllConfig::new(Variant::O, n, vec![eps as u32; n], eps).unwrap();
                assert_eq!(character(&cfg, 6), closed_character(&cfg, 6), "{cfg:?}");
            }
        }
    }

    #[test]
    fn symplectic_character_uses_opposite_parity() {
        // The skew product formula with ε replaced by 1 - ε is what the
        // symplectic PBW basis produces; the formula taken as is does not.
        for eps in [0u8, 1] {
            let cfg = EllConfig::new(Variant::Sp, 2, vec![eps as u32; 2], eps).unwrap();
            let flipped =
                EllConfig::spanning(Variant::Sp, 2, vec![eps as u32; 2], 1 - eps).unwrap();
            assert_eq!(character(&cfg, 6), closed_character(&flipped, 6), "ε={eps}");
            assert_ne!(character(&cfg, 6), closed_character(&cfg, 6), "ε={eps}");
        }
        let sp = EllConfig::new(Variant::Sp, 2, vec![0, 0], 0).unwrap();
        assert_eq!(ints(&character(&sp, 6)), vec![1, 3, 10, 29, 78, 196, 475]);
        assert_eq!(
            ints(&closed_character(&sp, 6)),
            vec![1, 1, 5, 10, 28, 57, 136]
        );
    }

    #[test]
    fn orthogonal_character_with_nonconstant_ell() {
        for ell in [vec![0, 2, 0], vec![2, 0, 2]] {
            let cfg = EllConfig::new(Variant::O, 3, ell, 0).unwrap();
            assert_eq!(
                ints(&character(&cfg, 6)),
                vec![1, 3, 15, 49, 168, 501, 1480]
            );
            assert_eq!(character(&cfg, 6), closed_character(&cfg, 6));
        }
    }

    #[test]
    fn vacuum_axioms() {
        let m = VacuumModule::new(gl(2, vec![0, 1]), Scalar::from_int(3));
        let vac = m.vacuum();
        let pos = GlHatElem::basis(2, 1, 2, 0, 1).add(&GlHatElem::basis(2, 2, 2, 3, 4));
        assert!(m.act(&pos, &vac).unwrap().is_zero());
        let k = GlHatElem::kappa_only(2, Scalar::one());
        let v = m.act(&GlHatElem::basis(2, 2, 1, -1, 0), &vac).unwrap();
        assert_eq!(
            m.act(&k, &v).unwrap().terms,
            v.terms.scaled(&Scalar::from_int(3))
        );
        assert!(m.act(&GlHatElem::basis(2, 1, 2, -1, 0), &vac).is_err());
    }

    #[test]
    fn affine_sl2_oracle() {
        // tE₁₂ (t⁻¹E₂₁)^N |0⟩ = N(χ - N + 1) (t⁻¹E₂₁)^{N-1} |0⟩.
        for chi in [1i64, 2, 3] {
            let m = VacuumModule::new(gl(2, vec![0, 0]), Scalar::from_int(chi));
            let f = GlHatElem::basis(2, 2, 1, -1, 0);
            let e = GlHatElem::basis(2, 1, 2, 1, 0);
            let mut powers = vec![m.vacuum()];
            for _ in 0..=chi + 1 {
                let next = m.act(&f, powers.last().unwrap()).unwrap();
                powers.push(next);
            }
            for big_n in 1..=(chi + 2) as usize {
                let lhs = m.act(&e, &powers[big_n]).unwrap();
                let c = Scalar::from_int(big_n as i64 * (chi - big_n as i64 + 1));
                assert_eq!(
                    lhs.terms,
                    powers[big_n - 1].terms.scaled(&c),
                    "χ={chi} N={big_n}"
                );
            }
        }
    }

    #[test]
    fn singular_vectors() {
        for chi in [0i64, 1, 2] {
            let m = VacuumModule::new(gl(2, vec![0, 0]), Scalar::from_int(chi));
            let v = m.singular_vector().unwrap();
            assert_eq!(v.terms.len(), 1);
            assert_eq!(v.degree(), Some(chi as u32 + 1));
            let rep = m.check_singular(&v, v.degree().unwrap() + 1).unwrap();
            assert!(rep.pass, "χ={chi}: {:?}", rep.counterexample);
        }
        // One power short is not singular.
        let m = VacuumModule::new(gl(2, vec![0, 0]), Scalar::from_int(2));
        let f = m.singular_root().unwrap();
        let short = m.act(&f, &m.act(&f, &m.vacuum()).unwrap()).unwrap();
        assert!(!m.check_singular(&short, 3).unwrap().pass);
        assert!(m.check_singular(&m.vacuum(), 2).unwrap().pass);
        let gl1 = VacuumModule::new(gl(1, vec![0]), Scalar::one());
        assert!(matches!(
            gl1.singular_vector(),
            Err(VacError::Unsupported(_))
        ));
    }

    /// Smallest power of the singular root that passes the check.
    fn minimal_power(m: &VacuumModule, max: u32) -> Option<u32> {
        let x = m.singular_root().unwrap();
        let mut v = m.vacuum();
        for p in 1..=max {
            v = m.act(&x, &v).unwrap();
            if m.check_singular(&v, v.degree().unwrap() + 1).unwrap().pass {
                return Some(p);
            }
        }
        None
    }

    #[test]
    fn orthogonal_singular_power_follows_trace_level() {
        // The sl₂ spanned by E₁₃ - E₂₄ and E₃₁ - E₄₂ has trace form 2, so the
        // level is 2χ and the first singular power is 2χ + 1.
        let cfg = EllConfig::new(Variant::O, 4, vec![0; 4], 0).unwrap();
        for chi in [0i64, 1, 2] {
            let m = VacuumModule::new(cfg.clone(), Scalar::from_int(chi));
            assert_eq!(minimal_power(&m, 5), Some(2 * chi as u32 + 1), "χ={chi}");
        }
        let m = VacuumModule::new(cfg, Scalar::one());
        let v = m.singular_vector().unwrap();
        assert_eq!(v.degree(), Some(2));
        assert!(!m.check_singular(&v, 3).unwrap().pass);
        let sp = VacuumModule::new(
            EllConfig::new(Variant::Sp, 2, vec![0, 0], 0).unwrap(),
            Scalar::one(),
        );
        assert_eq!(minimal_power(&sp, 4), Some(2));
        assert!(
            sp.check_singular(&sp.singular_vector().unwrap(), 3)
                .unwrap()
                .pass
        );
    }

    #[test]
    fn shifted_root_is_not_singular() {
        // [tE₁₂, t⁻¹∂E₂₁] = ∂E₁₁ - ∂E₂₂ - t⁻¹E₂₂ (+ central), and t⁻¹E₂₂
        // creates, so with ℓ = (1, 0) the root vector is not annihilated.
        let m = VacuumModule::new(gl(2, vec![1, 0]), Scalar::zero());
        let x = m.singular_root().unwrap();
        assert_eq!(x, GlHatElem::basis(2, 2, 1, -1, 1));
        let v = m.act(&x, &m.vacuum()).unwrap();
        let w = m.act(&GlHatElem::basis(2, 1, 2, 1, 0), &v).unwrap();
        let expect = m
            .act(&GlHatElem::basis(2, 2, 2, -1, 0), &m.vacuum())
            .unwrap();
        assert_eq!(w.terms, expect.terms.scaled(&Scalar::from_int(-1)));
        assert_eq!(minimal_power(&m, 3), None);
    }

    fn neg_elem(n: usize) -> impl Strategy<Value = GlHatElem> {
        prop::collection::vec((1..=n, 1..=n, -3i64..=-1, 0u32..=2, -2i64..=2), 1..3).prop_map(
            move |ts| {
                ts.into_iter()
                    .fold(GlHatElem::zero(n), |acc, (i, j, m, s, c)| {
                        acc.add(&GlHatElem::term(n, i, j, m, s, Scalar::from_int(c)))
                    })
            },
        )
    }

    fn any_elem(n: usize) -> impl Strategy<Value = GlHatElem> {
        prop::collection::vec((1..=n, 1..=n, -2i64..=2, 0u32..=2, -2i64..=2), 1..3).prop_map(
            move |ts| {
                ts.into_iter()
                    .fold(GlHatElem::zero(n), |acc, (i, j, m, s, c)| {
                        acc.add(&GlHatElem::term(n, i, j, m, s, Scalar::from_int(c)))
                    })
            },
        )
    }

    /// Image of a PBW vector in the `χ`-fold fermionic tensor power: each
    /// monomial `g₁ ⋯ g_k |0⟩` goes to `σ(g₁) ⋯ σ(g_k) 1` at `ι = 0`.
    fn transport(
        m: &VacuumModule,
        fock: &TensorPower<Fermionic>,
        v: &VacVector,
    ) -> Lin<Vec<FermMonomial>> {
        let zero = Scalar::zero();
        let mut out = Lin::new();
        for (mono, c) in v.terms.iter() {
            let mut w = Lin::single(fock.vacuum(), Scalar::one());
            for g in mono.iter().rev() {
                w = sigma_elem(&m.generator(*g), &zero, Some(m.cfg()))
                    .unwrap()
                    .apply(fock, &w);
            }
            out.add_scaled(&w, c);
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn module_axiom_gl(x in any_elem(2), y in any_elem(2), w in neg_elem(2)) {
            let m = VacuumModule::new(gl(2, vec![0, 0]), Scalar::ratio(3, 2));
            let v = m.act(&w, &m.vacuum()).unwrap();
            let br = ghbracket(&x, &y).unwrap();
            let lhs = m.act(&br, &v).unwrap();
            let rhs = m.act(&x, &m.act(&y, &v).unwrap()).unwrap().terms.minus(&m.act(&y, &m.act(&x, &v).unwrap()).unwrap().terms);
            prop_assert_eq!(lhs.terms, rhs);
        }

        #[test]
        fn grading_is_respected(
            probes in prop::collection::vec((1usize..=2, 1usize..=2, -3i64..=3, 0u32..=3), 1..6),
            (a, b, m0, s0) in (1usize..=2, 1usize..=2, -3i64..=-1, 0u32..=2),
        ) {
            let cfg = gl(2, vec![0, 1]);
            let m = VacuumModule::new(cfg.clone(), Scalar::one());
            prop_assume!(s0 >= cfg.ell_of(b));
            let v = m.act(&GlHatElem::basis(2, a, b, m0, s0), &m.vacuum()).unwrap();
            let dv = s0 as i64 - m0;
            prop_assert_eq!(v.degree(), Some(dv as u32));
            for (i, j, mm, s) in probes {
                if s < cfg.ell_of(j) {
                    continue;
                }
                let w = m.act(&GlHatElem::basis(2, i, j, mm, s), &v).unwrap();
                if !w.is_zero() {
                    prop_assert_eq!(w.degree().map(|d| d as i64), Some(s as i64 - mm + dv));
                }
            }
        }

        #[test]
        fn fock_realization_intertwines(
            case in 0usize..3,
            x in prop::collection::vec((1usize..=2, 1usize..=2, -2i64..=2, 0u32..=2, -2i64..=2), 1..3),
            w in prop::collection::vec((1usize..=2, 1usize..=2, -2i64..=-1, 0u32..=2), 0..3),
        ) {
            let (cfg, chi) = [(gl(2, vec![0, 0]), 1usize), (gl(1, vec![1]), 1), (gl(2, vec![0, 1]), 2)][case].clone();
            let n = cfg.n;
            let ok = |j: usize, s: u32| j <= n && s >= cfg.ell_of(j);
            let m = VacuumModule::new(cfg.clone(), Scalar::from_int(chi as i64));
            let fock = TensorPower { base: Fermionic, chi };
            let mut v = m.vacuum();
            for &(i, j, mm, s) in w.iter().filter(|t| t.0 <= n && ok(t.1, t.3)) {
                v = m.act(&GlHatElem::basis(n, i, j, mm, s), &v).unwrap();
            }
            let x = x.iter().filter(|t| t.0 <= n && ok(t.1, t.3)).fold(GlHatElem::zero(n), |acc, &(i, j, mm, s, c)| {
                acc.add(&GlHatElem::term(n, i, j, mm, s, Scalar::from_int(c)))
            });
            let lhs = transport(&m, &fock, &m.act(&x, &v).unwrap());
            let rhs = sigma_elem(&x, &Scalar::zero(), Some(&cfg)).unwrap().apply(&fock, &transport(&m, &fock, &v));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn module_axiom_skew(a in 0usize..64, b in 0usize..64, c in 0usize..64) {
            let cfg = EllConfig::new(Variant::Sp, 2, vec![1, 1], 1).unwrap();
            let gens: Vec<GlHatElem> = (1..=2).flat_map(|i| (1..=2).flat_map(move |j| (-2i64..=1).flat_map(move |mm| (0u32..=1).map(move |r| (i, j, mm, r)))))
                .filter_map(|(i, j, mm, r)| gen_skew(i, j, mm, r, &cfg).ok())
                .filter(|g| !g.terms.is_empty())
                .collect();
            let m = VacuumModule::new(cfg, Scalar::from_int(2));
            let (x, y, w) = (&gens[a % gens.len()], &gens[b % gens.len()], &gens[c % gens.len()]);
            let v = m.act(w, &m.vacuum()).unwrap();
            let br = ghbracket(x, y).unwrap();
            let lhs = m.act(&br, &v).unwrap();
            let rhs = m.act(x, &m.act(y, &v).unwrap()).unwrap().terms.minus(&m.act(y, &m.act(x, &v).unwrap()).unwrap().terms);
            prop_assert_eq!(lhs.terms, rhs);
        }
    }
}
