//! Weyl symbols for the bosonic oscillator algebra.
//!
//! A symmetrized product `ĉ^{[a₁⋯a_k)}` of bosonic oscillators has Weyl
//! symbol `z^{a₁}⋯z^{a_k}`, and operator products become the Moyal product
//! `f ⋆ g = f exp(½ ε^{ab} ∂⃖_a ∂⃗_b) g`. On symbols the metaplectic `Ř`
//! series is `Σ_k (r_k/k!) (z₁·z₂)^k`, and RLL can be checked degree by
//! degree without any Fock-space truncation.

use std::collections::BTreeMap;

use crate::algebra::Metric;
use crate::exact_core::{Scalar, ScalarMatrix};
use crate::representations::{OscKind, OscillatorSet, Representation};
use crate::residual::Residual;

use super::{symmetrized_basis_up_to, SpinorialError};

/// Polynomial in `sites · n` commuting variables `z_s^a` (variable
/// `s·n + a`) with coefficients in `End(W)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolPoly {
    pub vars: usize,
    pub rep_dim: usize,
    pub terms: BTreeMap<Vec<u32>, ScalarMatrix>,
}

impl SymbolPoly {
    pub fn zero(vars: usize, rep_dim: usize) -> Self {
        SymbolPoly { vars, rep_dim, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, rep_dim: usize, c: &Scalar) -> Self {
        let mut p = Self::zero(vars, rep_dim);
        p.add_term(vec![0; vars], ScalarMatrix::identity(rep_dim).scale(c));
        p
    }

    fn add_term(&mut self, mono: Vec<u32>, coeff: ScalarMatrix) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(c) => {
                c.add_assign(&coeff).expect("coefficient shape");
                if c.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.vars, self.rep_dim);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.scale(c));
        }
        out
    }

    /// Ordinary (commutative) product of symbols.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.vars, self.rep_dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(m, ca.mul(cb).expect("coefficient shape"));
            }
        }
        out
    }

    /// Moyal product for the Poisson pairs `(v, w, c)`, meaning the bidifferential
    /// operator `Σ c ∂⃖_v ∂⃗_w` in the exponent.
    pub fn star(&self, rhs: &Self, pairs: &[(usize, usize, Scalar)]) -> Self {
        let mut out = Self::zero(self.vars, self.rep_dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let base = ca.mul(cb).expect("coefficient shape");
                let mut left = ma.clone();
                let mut right = mb.clone();
                star_terms(pairs, 0, &mut left, &mut right, Scalar::one(), &base, &mut out);
            }
        }
        out
    }

    pub fn degree_of(mono: &[u32]) -> usize {
        mono.iter().map(|&e| e as usize).sum()
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| Self::degree_of(m)).min()
    }
}

fn star_terms(
    pairs: &[(usize, usize, Scalar)],
    p: usize,
    left: &mut Vec<u32>,
    right: &mut Vec<u32>,
    weight: Scalar,
    base: &ScalarMatrix,
    out: &mut SymbolPoly,
) {
    if p == pairs.len() {
        let mono = left.iter().zip(right.iter()).map(|(x, y)| x + y).collect();
        out.add_term(mono, base.scale(&weight));
        return;
    }
    let (v, w, ref c) = pairs[p];
    let mut wgt = weight;
    let mut k = 0u32;
    loop {
        star_terms(pairs, p + 1, left, right, wgt.clone(), base, out);
        if left[v] == 0 || right[w] == 0 {
            break;
        }
        // ∂_v z^{e} = e z^{e−1}, and the exponential contributes c^k/k!
        let factor = &Scalar::from_int(left[v] as i64 * right[w] as i64) * c;
        k += 1;
        wgt = &(&wgt * &factor) / &Scalar::from_int(k as i64);
        left[v] -= 1;
        right[w] -= 1;
    }
    left[v] += k;
    right[w] += k;
}

/// Poisson pairs `½ ε^{ab}` on each of `sites` copies of the oscillators.
pub fn moyal_pairs(metric: &Metric, sites: usize) -> Vec<(usize, usize, Scalar)> {
    let n = metric.n();
    let half = Scalar::frac(1, 2);
    let mut pairs = Vec::new();
    for s in 0..sites {
        for a in 0..n {
            let b = metric.partner(a);
            pairs.push((s * n + a, s * n + b, metric.upper(a, b) * &half));
        }
    }
    pairs
}

fn unit(vars: usize, v: usize) -> Vec<u32> {
    let mut m = vec![0; vars];
    m[v] += 1;
    m
}

/// Symbol of `Σ_k (r_k/k!) (z₁·z₂)^k ⊗ I_W` with `z₁·z₂ = ε_{ab} z₁^a z₂^b`.
pub fn series_symbol(metric: &Metric, rep_dim: usize, r: &[Scalar]) -> SymbolPoly {
    let n = metric.n();
    let vars = 2 * n;
    let mut dot = SymbolPoly::zero(vars, rep_dim);
    for a in 0..n {
        let b = metric.partner(a);
        let mut m = unit(vars, a);
        m[n + b] += 1;
        dot.add_term(m, ScalarMatrix::identity(rep_dim).scale(metric.lower(a, b)));
    }
    let mut out = SymbolPoly::zero(vars, rep_dim);
    let mut power = SymbolPoly::constant(vars, rep_dim, &Scalar::one());
    let mut fact = Scalar::one();
    for (k, rk) in r.iter().enumerate() {
        if k > 0 {
            power = power.mul(&dot);
            fact = &fact * &Scalar::from_int(k as i64);
        }
        out = out.add(&power.scale(&(rk / &fact)));
    }
    out
}

/// Symbol of `X_s = ½ Σ F^a_b ⊗ G^b_a` on site `s`, where `F^a_b` has symbol
/// `ε_{bd} z^a z^d`.
pub fn l_symbol(rep: &Representation, site: usize) -> SymbolPoly {
    let metric = &rep.metric;
    let n = metric.n();
    let vars = 2 * n;
    let half = Scalar::frac(1, 2);
    let mut out = SymbolPoly::zero(vars, rep.dim);
    for a in 0..n {
        for b in 0..n {
            let g = rep.gen(b, a);
            if g.is_zero() {
                continue;
            }
            let d = metric.partner(b);
            let mut m = unit(vars, site * n + a);
            m[site * n + d] += 1;
            out.add_term(m, g.scale(&(metric.lower(b, d) * &half)));
        }
    }
    out
}

/// The `v⁰` and `v¹` coefficients of the RLL residual on symbols:
/// `Ř⋆(u + X₁)⋆X₂ − X₁⋆(u + X₂)⋆Ř` and `Ř⋆(X₁ + X₂) − (X₁ + X₂)⋆Ř`.
pub fn symbol_rll_residual(
    rep: &Representation,
    u: &Scalar,
    r: &[Scalar],
) -> Result<(SymbolPoly, SymbolPoly), SpinorialError> {
    let metric = &rep.metric;
    if metric.epsilon() != -1 {
        return Err(SpinorialError::NeedsBosons);
    }
    let pairs = moyal_pairs(metric, 2);
    let rr = series_symbol(metric, rep.dim, r);
    let x1 = l_symbol(rep, 0);
    let x2 = l_symbol(rep, 1);
    let vars = rr.vars;
    let ux1 = x1.add(&SymbolPoly::constant(vars, rep.dim, u));
    let ux2 = x2.add(&SymbolPoly::constant(vars, rep.dim, u));
    let v0 = rr.star(&ux1, &pairs).star(&x2, &pairs).sub(&x1.star(&ux2, &pairs).star(&rr, &pairs));
    let s = x1.add(&x2);
    let v1 = rr.star(&s, &pairs).sub(&s.star(&rr, &pairs));
    Ok((v0, v1))
}

/// Checks the symbol-level RLL residual of the series truncated at
/// `k_max = r.len() − 1`. Terms of order `k > k_max` have degree `≥ 2k_max + 2`
/// and two Moyal products with quadratic symbols lower the degree by at most
/// four, so every monomial of degree `< 2k_max − 2` must cancel exactly.
pub fn check_symbol_rll(rep: &Representation, u: &Scalar, r: &[Scalar]) -> Result<Residual, SpinorialError> {
    let k_max = r.len().saturating_sub(1);
    let (v0, v1) = symbol_rll_residual(rep, u, r)?;
    let mut out = Residual::zero();
    for (poly, bound) in [(&v0, 2 * k_max), (&v1, 2 * k_max + 2)] {
        for (mono, c) in &poly.terms {
            if SymbolPoly::degree_of(mono) + 2 < bound {
                let witness = mono.iter().map(|&e| e as usize).collect::<Vec<_>>();
                out.absorb(Residual::of_matrix(c, None, &witness));
            }
        }
    }
    Ok(out)
}

/// The operator on `Fock^{⊗sites} ⊗ W` with the given symbol: the monomial
/// `z^S` on one site is the averaged product `c^{[S)}/|S|!`.
pub fn symbol_to_operator(osc: &OscillatorSet, poly: &SymbolPoly) -> Result<ScalarMatrix, SpinorialError> {
    if osc.kind != OscKind::Bosonic {
        return Err(SpinorialError::NeedsBosons);
    }
    let n = osc.n();
    if poly.vars % n != 0 {
        return Err(SpinorialError::Mismatch);
    }
    let sites = poly.vars / n;
    let top = poly.terms.keys().flat_map(|m| m.chunks(n).map(|c| SymbolPoly::degree_of(c))).max().unwrap_or(0);
    let levels = symmetrized_basis_up_to(osc, top);
    let site_op = |exps: &[u32]| -> ScalarMatrix {
        let idx: Vec<usize> = exps.iter().enumerate().flat_map(|(a, &e)| std::iter::repeat(a).take(e as usize)).collect();
        let k = idx.len();
        let elem = levels[k].iter().find(|e| e.indices == idx).expect("basis element");
        let fact = (2..=k as i64).fold(Scalar::one(), |acc, f| &acc * &Scalar::from_int(f));
        elem.matrix.scale(&(&Scalar::one() / &fact))
    };
    let size = osc.dim.pow(sites as u32) * poly.rep_dim;
    let mut out = ScalarMatrix::zeros(size, size);
    for (mono, c) in &poly.terms {
        let mut op = ScalarMatrix::identity(1);
        for chunk in mono.chunks(n) {
            op = op.kron(&site_op(chunk));
        }
        out.add_assign(&op.kron(c))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_metric, AlgebraKind, Basis};

    #[test]
    fn moyal_commutator_is_the_metric() {
        let m = make_metric(AlgebraKind::SP, 2, Basis::Split).unwrap();
        let pairs = moyal_pairs(&m, 1);
        for a in 0..2 {
            for b in 0..2 {
                let mut za = SymbolPoly::zero(2, 1);
                za.add_term(unit(2, a), ScalarMatrix::identity(1));
                let mut zb = SymbolPoly::zero(2, 1);
                zb.add_term(unit(2, b), ScalarMatrix::identity(1));
                let comm = za.star(&zb, &pairs).sub(&zb.star(&za, &pairs));
                assert_eq!(comm, SymbolPoly::constant(2, 1, m.upper(a, b)));
            }
        }
    }

    #[test]
    fn star_is_associative_on_cubics() {
        let m = make_metric(AlgebraKind::SP, 2, Basis::Split).unwrap();
        let pairs = moyal_pairs(&m, 1);
        let mut f = SymbolPoly::zero(2, 1);
        f.add_term(vec![2, 1], ScalarMatrix::identity(1));
        f.add_term(vec![0, 1], ScalarMatrix::identity(1).scale(&Scalar::frac(3, 2)));
        let mut g = SymbolPoly::zero(2, 1);
        g.add_term(vec![1, 2], ScalarMatrix::identity(1));
        let mut h = SymbolPoly::zero(2, 1);
        h.add_term(vec![3, 0], ScalarMatrix::identity(1));
        h.add_term(vec![1, 1], ScalarMatrix::identity(1).scale(&Scalar::from_int(-2)));
        let lhs = f.star(&g, &pairs).star(&h, &pairs);
        let rhs = f.star(&g.star(&h, &pairs), &pairs);
        assert_eq!(lhs, rhs);
    }
}
