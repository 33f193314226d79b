//! The spinorial (so) and metaplectic (sp) Yang–Baxter operator `Ř(u)` built
//! from (anti)symmetrized oscillator products, and the checks of its
//! defining relations.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::algebra::Metric;
use crate::exact_core::{embed, ExactError, Poly2, PolyMatrix, Scalar, ScalarMatrix};
use crate::representations::{spinor_rep, OscKind, OscillatorSet, Representation};
use crate::residual::Residual;

pub mod symbol;

pub use symbol::{check_symbol_rll, series_symbol, symbol_rll_residual, symbol_to_operator, SymbolPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpinorialError {
    #[error("coefficient r_{k} hits a pole at this value of u")]
    Pole { k: usize },
    #[error("oscillator sets act on different metrics or spaces")]
    Mismatch,
    #[error("representation acts on n = {rep} but oscillators on n = {osc}")]
    RepMismatch { rep: usize, osc: usize },
    #[error("the symbol calculus is implemented for bosonic oscillators only")]
    NeedsBosons,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `c^{[a₁⋯a_k)} = Σ_σ (−ε)^{p(σ)} c^{a_σ(1)} ⋯ c^{a_σ(k)}` for a sorted
/// multi-index (a set for fermions, a multiset for bosons).
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetrizedBasisElement {
    pub k: usize,
    pub indices: Vec<usize>,
    pub matrix: ScalarMatrix,
}

type BasisKey = (OscKind, usize, Option<usize>, usize);

fn basis_cache() -> &'static Mutex<HashMap<BasisKey, Arc<Vec<SymmetrizedBasisElement>>>> {
    static CACHE: OnceLock<Mutex<HashMap<BasisKey, Arc<Vec<SymmetrizedBasisElement>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn key(osc: &OscillatorSet, k: usize) -> BasisKey {
    (osc.kind, osc.n(), osc.cutoff, k)
}

/// Sorted index tuples of length `k`: strictly increasing when `strict`.
fn tuples(n: usize, k: usize, strict: bool) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, strict: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..n {
            cur.push(a);
            rec(n, k, if strict { a + 1 } else { a }, strict, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, strict, &mut Vec::new(), &mut out);
    out
}

/// All basis elements of orders `0..=k_max`, computed together and cached
/// per order.
pub fn symmetrized_basis_up_to(osc: &OscillatorSet, k_max: usize) -> Vec<Arc<Vec<SymmetrizedBasisElement>>> {
    {
        let cache = basis_cache().lock().expect("basis cache");
        let hits: Vec<_> = (0..=k_max).filter_map(|k| cache.get(&key(osc, k)).cloned()).collect();
        if hits.len() == k_max + 1 {
            return hits;
        }
    }
    let fermionic = osc.kind == OscKind::Fermionic;
    let n = osc.n();
    let big = osc.extended(k_max.saturating_sub(1));
    let keep: Vec<usize> = (0..osc.dim).collect();
    let minus_eps = -osc.metric.eps();

    let mut prev: BTreeMap<Vec<usize>, ScalarMatrix> = BTreeMap::new();
    prev.insert(Vec::new(), ScalarMatrix::identity(big.dim));
    let mut levels = vec![Arc::new(vec![SymmetrizedBasisElement {
        k: 0,
        indices: Vec::new(),
        matrix: ScalarMatrix::identity(osc.dim),
    }])];
    for k in 1..=k_max {
        let mut cur = BTreeMap::new();
        if !(fermionic && k > n) {
            for t in tuples(n, k, fermionic) {
                // peel off the first factor: S(a) = Σ_i (−ε)^i c^{a_i} S(a without a_i)
                let mut acc = ScalarMatrix::zeros(big.dim, big.dim);
                let mut sign = Scalar::one();
                let mut i = 0;
                while i < t.len() {
                    let x = t[i];
                    let mut weight = Scalar::zero();
                    let mut j = i;
                    while j < t.len() && t[j] == x {
                        weight += &sign;
                        sign = &sign * &minus_eps;
                        j += 1;
                    }
                    let mut rest = t.clone();
                    rest.remove(i);
                    if !weight.is_zero() {
                        let term = big.c[x].mul(&prev[&rest]).expect("square");
                        acc.add_assign(&term.scale(&weight)).expect("shape");
                    }
                    i = j;
                }
                cur.insert(t, acc);
            }
        }
        let elems: Vec<SymmetrizedBasisElement> = cur
            .iter()
            .map(|(t, m)| SymmetrizedBasisElement {
                k,
                indices: t.clone(),
                matrix: if big.dim == osc.dim { m.clone() } else { m.select(&keep, &keep) },
            })
            .collect();
        levels.push(Arc::new(elems));
        prev = cur;
    }
    let mut cache = basis_cache().lock().expect("basis cache");
    for (k, lvl) in levels.iter().enumerate() {
        cache.entry(key(osc, k)).or_insert_with(|| lvl.clone());
    }
    levels
}

pub fn symmetrized_basis(osc: &OscillatorSet, k: usize) -> Arc<Vec<SymmetrizedBasisElement>> {
    symmetrized_basis_up_to(osc, k).pop().expect("level k")
}

/// `r_{k+2} = 4(k + εu) / ((k+2) − ε(u+n)) · r_k` with `r₀ = r₁ = 1`.
pub fn r_coefficients(metric: &Metric, u: &Scalar, k_max: usize) -> Result<Vec<Scalar>, SpinorialError> {
    let eps = metric.eps();
    let n = Scalar::from_int(metric.n() as i64);
    let eu = &eps * u;
    let mut r = vec![Scalar::one(); (k_max + 1).min(2)];
    for k in 2..=k_max {
        let km = Scalar::from_int(k as i64 - 2);
        let num = &Scalar::from_int(4) * &(&km + &eu);
        let den = &Scalar::from_int(k as i64) - &(&eps * &(u + &n));
        if den.is_zero() {
            return Err(SpinorialError::Pole { k });
        }
        let next = &(&num / &den) * &r[k - 2];
        r.push(next);
    }
    Ok(r)
}

/// Coefficients of the series that solves RLL: `r_k · ε^{⌊k/2⌋}` with `r_k`
/// from [`r_coefficients`]. The two agree for `so`; for `sp` every step of the
/// recurrence changes sign.
pub fn rll_coefficients(metric: &Metric, u: &Scalar, k_max: usize) -> Result<Vec<Scalar>, SpinorialError> {
    let mut r = r_coefficients(metric, u, k_max)?;
    if metric.epsilon() == -1 {
        for (k, rk) in r.iter_mut().enumerate() {
            if (k / 2) % 2 == 1 {
                *rk = -rk.clone();
            }
        }
    }
    Ok(r)
}

/// Finite-product form of the even Γ-ratio:
/// `r_{2m}/r₀ = 2^{2m} Π_{j<m}(j + εu/2) / Π_{j=1..m}(j − ε(u+n)/2)`.
pub fn closed_form_even(metric: &Metric, u: &Scalar, m: usize) -> Option<Scalar> {
    let eps = metric.eps();
    let half = Scalar::frac(1, 2);
    let a = &(&eps * u) * &half;
    let b = &(&eps * &(u + &Scalar::from_int(metric.n() as i64))) * &half;
    let mut num = Scalar::from_int(4).pow(m as u32);
    let mut den = Scalar::one();
    for j in 0..m {
        num = &num * &(&Scalar::from_int(j as i64) + &a);
        den = &den * &(&Scalar::from_int(j as i64 + 1) - &b);
    }
    num.checked_div(&den).ok()
}

/// Finite-product form of the odd Γ-ratio `r_{2m+1}/r₁`. With
/// `printed = true` the denominator is `Γ(m + ½ − ε(u+n)/2)` as displayed
/// next to the recurrence; otherwise it is `Γ(m + 3/2 − ε(u+n)/2)`, which is
/// what the recurrence produces.
pub fn closed_form_odd(metric: &Metric, u: &Scalar, m: usize, printed: bool) -> Option<Scalar> {
    let eps = metric.eps();
    let half = Scalar::frac(1, 2);
    let a = &(&eps * u) * &half;
    let b = &(&eps * &(u + &Scalar::from_int(metric.n() as i64))) * &half;
    let offset = if printed { Scalar::frac(1, 2) } else { Scalar::frac(3, 2) };
    let mut num = Scalar::from_int(4).pow(m as u32);
    let mut den = Scalar::one();
    for j in 0..m {
        let jj = Scalar::from_int(j as i64);
        num = &num * &(&(&jj + &half) + &a);
        den = &den * &(&(&jj + &offset) - &b);
    }
    num.checked_div(&den).ok()
}

/// An assembled `Ř(u)` at a rational point `u`, as a matrix on
/// `Fock₁ ⊗ Fock₂`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpinorialRSeries {
    #[serde(skip)]
    pub metric: Metric,
    pub kind: OscKind,
    pub cutoff: Option<usize>,
    pub u: Scalar,
    pub k_max: usize,
    pub r: Vec<Scalar>,
    #[serde(skip)]
    pub matrix: ScalarMatrix,
    /// Total occupation of each `Fock₁ ⊗ Fock₂` basis state, per factor.
    #[serde(skip)]
    pub occupations: Vec<(usize, usize)>,
}

impl SpinorialRSeries {
    pub fn fock_dim(&self) -> usize {
        (self.matrix.rows() as f64).sqrt().round() as usize
    }

    /// `Fock₁ ⊗ Fock₂` states with both factor occupations `≤ bound`.
    pub fn states_within(&self, bound: usize) -> Vec<usize> {
        (0..self.occupations.len())
            .filter(|&i| self.occupations[i].0 <= bound && self.occupations[i].1 <= bound)
            .collect()
    }
}

/// `Ř = Σ_k (r_k/k!) Σ ε_{a₁b₁}⋯ε_{a_kb_k} ĉ₁^{[a₁⋯a_k)} ⊗ ĉ₂^{[b₁⋯b_k)}` for
/// given coefficients `r₀, …, r_{k_max}`, where `ĉ^{[a₁⋯a_k)}` is the
/// averaged product `c^{[a₁⋯a_k)}/k!` (the normalization produced by
/// `∂^{a₁}⋯∂^{a_k}(κ·c)^k = k! ĉ^{[a₁⋯a_k)}`).
pub fn assemble_with_coefficients(
    osc1: &OscillatorSet,
    osc2: &OscillatorSet,
    u: &Scalar,
    r: &[Scalar],
) -> Result<SpinorialRSeries, SpinorialError> {
    if osc1 != osc2 {
        return Err(SpinorialError::Mismatch);
    }
    let metric = &osc1.metric;
    let k_max = r.len().saturating_sub(1);
    let levels = symmetrized_basis_up_to(osc1, k_max);
    let d = osc1.dim;
    let fermionic = osc1.kind == OscKind::Fermionic;
    let mut out = ScalarMatrix::zeros(d * d, d * d);
    for (k, lvl) in levels.iter().enumerate() {
        if r[k].is_zero() {
            continue;
        }
        let lookup: HashMap<&[usize], &ScalarMatrix> = lvl.iter().map(|e| (e.indices.as_slice(), &e.matrix)).collect();
        for e in lvl.iter() {
            // Σ over orderings of the multiset collapses to 1/Π(m!) per sorted tuple
            let mut weight = &r[k] / &factorial(k).pow(2);
            let mut run = 1i64;
            for w in 1..=e.indices.len() {
                if w < e.indices.len() && e.indices[w] == e.indices[w - 1] {
                    run += 1;
                } else {
                    for f in 2..=run {
                        weight = &weight / &Scalar::from_int(f);
                    }
                    run = 1;
                }
            }
            let partners: Vec<usize> = e.indices.iter().map(|&a| metric.partner(a)).collect();
            for (&a, &b) in e.indices.iter().zip(&partners) {
                weight = &weight * metric.lower(a, b);
            }
            let (sorted, parity) = sort_with_parity(&partners);
            if fermionic && parity {
                weight = -weight;
            }
            let right = lookup[sorted.as_slice()];
            out.add_assign(&e.matrix.kron(right).scale(&weight))?;
        }
    }
    let occ = &osc1.occupation;
    let occupations = (0..d * d).map(|i| (occ[i / d], occ[i % d])).collect();
    Ok(SpinorialRSeries {
        metric: metric.clone(),
        kind: osc1.kind,
        cutoff: osc1.cutoff,
        u: u.clone(),
        k_max,
        r: r.to_vec(),
        matrix: out,
        occupations,
    })
}

fn factorial(k: usize) -> Scalar {
    (2..=k as i64).fold(Scalar::one(), |acc, f| &acc * &Scalar::from_int(f))
}

fn sort_with_parity(v: &[usize]) -> (Vec<usize>, bool) {
    let mut s = v.to_vec();
    let mut odd = false;
    for i in 0..s.len() {
        for j in 0..s.len() - 1 - i {
            if s[j] > s[j + 1] {
                s.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    (s, odd)
}

pub fn assemble_spinorial_r(
    osc1: &OscillatorSet,
    osc2: &OscillatorSet,
    u: &Scalar,
    k_max: usize,
) -> Result<SpinorialRSeries, SpinorialError> {
    let k_max = if osc1.kind == OscKind::Fermionic { k_max.min(osc1.n()) } else { k_max };
    let r = rll_coefficients(&osc1.metric, u, k_max)?;
    assemble_with_coefficients(osc1, osc2, u, &r)
}

/// A spinorial L-operator `L(x) = x·I + X` on `Fock ⊗ W`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorialL {
    pub fock_dim: usize,
    pub rep_dim: usize,
    pub x: ScalarMatrix,
}

impl SpinorialL {
    pub fn at(&self, value: &Scalar) -> ScalarMatrix {
        let mut out = self.x.clone();
        for i in 0..out.rows() {
            *out.get_mut(i, i) += value;
        }
        out
    }
}

/// `L(u) = u + ½ Σ F^a_b ⊗ G^b_a` and its partner
/// `L̃(u) = u − ½ Σ (F^a_b)^t ⊗ G^b_a`, with `F` the spinor (metaplectic)
/// generators built from `osc`.
pub fn spinorial_l(osc: &OscillatorSet, rep: &Representation) -> Result<(SpinorialL, SpinorialL), SpinorialError> {
    if rep.n() != osc.n() {
        return Err(SpinorialError::RepMismatch { rep: rep.n(), osc: osc.n() });
    }
    let f = spinor_rep(osc);
    let n = osc.n();
    let size = osc.dim * rep.dim;
    let mut x = ScalarMatrix::zeros(size, size);
    let mut xt = ScalarMatrix::zeros(size, size);
    let half = Scalar::frac(1, 2);
    for a in 0..n {
        for b in 0..n {
            let g = rep.gen(b, a);
            if g.is_zero() {
                continue;
            }
            let fab = f.gen(a, b);
            x.add_assign(&fab.kron(g).scale(&half))?;
            xt.add_assign(&fab.transpose().kron(g).scale(&-&half))?;
        }
    }
    let mk = |x| SpinorialL { fock_dim: osc.dim, rep_dim: rep.dim, x };
    Ok((mk(x), mk(xt)))
}

/// `Ř₁₂(u) L₁(u+v) L₂(v) − L₁(v) L₂(u+v) Ř₁₂(u)` on `Fock ⊗ Fock ⊗ W`, as a
/// polynomial in `v` (the `u²`, `v²` and `uv` parts cancel identically).
pub fn spinorial_rll_residual(series: &SpinorialRSeries, l: &SpinorialL) -> Result<PolyMatrix, SpinorialError> {
    let d = l.fock_dim;
    if series.matrix.rows() != d * d {
        return Err(SpinorialError::Mismatch);
    }
    let dims = [d, d, l.rep_dim];
    let r = embed(&series.matrix, &dims, &[0, 1])?;
    let x1 = embed(&l.x, &dims, &[0, 2])?;
    let x2 = embed(&l.x, &dims, &[1, 2])?;
    let u = &series.u;
    let sum = x1.add(&x2)?;
    // v¹: [Ř, X₁ + X₂]
    let c1 = r.mul(&sum)?.sub(&sum.mul(&r)?)?;
    // v⁰: Ř(u + X₁)X₂ − X₁(u + X₂)Ř
    let ux1 = shift_diag(&x1, u);
    let ux2 = shift_diag(&x2, u);
    let c0 = r.mul(&ux1)?.mul(&x2)?.sub(&x1.mul(&ux2)?.mul(&r)?)?;
    let s = c0.rows();
    Ok(PolyMatrix::from_fn(s, s, |i, j| {
        Poly2::from_terms([((0, 0), c0.get(i, j).clone()), ((0, 1), c1.get(i, j).clone())])
    }))
}

fn shift_diag(m: &ScalarMatrix, c: &Scalar) -> ScalarMatrix {
    let mut out = m.clone();
    for i in 0..out.rows() {
        *out.get_mut(i, i) += c;
    }
    out
}

/// Rows and columns of `Fock ⊗ Fock ⊗ W` with both Fock occupations
/// `≤ bound` (all states for fermions when `bound` is `None`).
fn triple_band(series: &SpinorialRSeries, rep_dim: usize, bound: Option<usize>) -> Vec<usize> {
    let pairs = match bound {
        Some(b) => series.states_within(b),
        None => (0..series.occupations.len()).collect(),
    };
    pairs.iter().flat_map(|&p| (0..rep_dim).map(move |w| p * rep_dim + w)).collect()
}

/// Spinorial RLL residual restricted to the given occupation band.
pub fn check_spinorial_rll(series: &SpinorialRSeries, l: &SpinorialL, band: Option<usize>) -> Result<Residual, SpinorialError> {
    let res = spinorial_rll_residual(series, l)?;
    let keep = triple_band(series, l.rep_dim, band);
    Ok(Residual::of_matrix(&res.select(&keep, &keep), None, &[]))
}

/// `[F₁^a_b + F₂^a_b, Ř]` for every `(a, b)`, restricted to the band.
pub fn check_symmetry(series: &SpinorialRSeries, osc: &OscillatorSet, band: Option<usize>) -> Result<Residual, SpinorialError> {
    let f = spinor_rep(osc);
    let n = osc.n();
    let d = osc.dim;
    let id = ScalarMatrix::identity(d);
    let keep = triple_band(series, 1, band);
    let mut total = Residual::zero();
    for a in 0..n {
        for b in 0..n {
            let g = f.gen(a, b);
            let s = g.kron(&id).add(&id.kron(g))?;
            let c = s.mul(&series.matrix)?.sub(&series.matrix.mul(&s)?)?;
            total.absorb(Residual::of_matrix(&c.select(&keep, &keep), None, &[a, b]));
        }
    }
    Ok(total)
}

/// Difference between the series truncated at `k_max` and at `k_max + 2`,
/// on states with both factor occupations `≤ bound`.
pub fn k_stability(osc: &OscillatorSet, u: &Scalar, k_max: usize, bound: usize) -> Result<Residual, SpinorialError> {
    let short = assemble_spinorial_r(osc, osc, u, k_max)?;
    let long = assemble_spinorial_r(osc, osc, u, k_max + 2)?;
    let keep = short.states_within(bound);
    let diff = long.matrix.sub(&short.matrix)?;
    Ok(Residual::of_matrix(&diff.select(&keep, &keep), None, &[]))
}
