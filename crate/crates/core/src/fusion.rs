//! Gamma-trace calculus and fusion of two spinorial L-operators onto the
//! fundamental representation.
//!
//! Gamma matrices are `γ^a = √2 c^a` with `γ^a γ^b + ε γ^b γ^a = 2 ε^{ab}`.
//! Traces are computed symbolically in units of `C = tr 1`, so the same code
//! covers the finite spinor case and the (regularized) metaplectic one.

use std::collections::HashMap;
use std::sync::RwLock;

use serde::Serialize;

use crate::algebra::Metric;
use crate::exact_core::{ExactError, Poly2, PolyMatrix, Scalar, ScalarMatrix};
use crate::fundamental_r::fundamental_r;
use crate::yangian_l::{l_from_coeffs, LOperator};
use crate::representations::{check_defr5, fundamental_rep, oscillators, OscKind, Representation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GammaFactor {
    Single(usize),
    /// `γ^{ab} = ½(γ^a γ^b − ε γ^b γ^a)`.
    Pair(usize, usize),
}

/// A product of gamma factors with a scalar prefactor.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaWord {
    pub factors: Vec<GammaFactor>,
    pub coeff: Scalar,
}

impl GammaWord {
    pub fn singles(indices: &[usize]) -> GammaWord {
        GammaWord { factors: indices.iter().map(|&a| GammaFactor::Single(a)).collect(), coeff: Scalar::one() }
    }

    /// Expands pairs into plain products: a list of `(coefficient, indices)`.
    fn expand(&self, eps: &Scalar) -> Vec<(Scalar, Vec<usize>)> {
        let mut out = vec![(self.coeff.clone(), Vec::new())];
        let half = Scalar::frac(1, 2);
        for f in &self.factors {
            match *f {
                GammaFactor::Single(a) => out.iter_mut().for_each(|(_, w)| w.push(a)),
                GammaFactor::Pair(a, b) => {
                    let mut next = Vec::with_capacity(out.len() * 2);
                    for (c, w) in out {
                        let mut w1 = w.clone();
                        w1.extend([a, b]);
                        next.push((&c * &half, w1));
                        let mut w2 = w;
                        w2.extend([b, a]);
                        next.push((-&(&(&c * &half) * eps), w2));
                    }
                    out = next;
                }
            }
        }
        out
    }
}

/// Memoized Wick-type recursion
/// `tr(γ^{a₁}⋯γ^{a_k}) = Σ_j (−ε)^{j−2} ε^{a₁a_j} tr(⋯ without a₁, a_j ⋯)`.
#[derive(Debug)]
pub struct GammaTracer {
    metric: Metric,
    cache: RwLock<HashMap<Vec<usize>, Scalar>>,
}

impl GammaTracer {
    pub fn new(metric: &Metric) -> GammaTracer {
        GammaTracer { metric: metric.clone(), cache: RwLock::new(HashMap::new()) }
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    /// Trace of a plain product, as a multiple of `C`.
    pub fn trace(&self, word: &[usize]) -> Scalar {
        if word.is_empty() {
            return Scalar::one();
        }
        if word.len() % 2 == 1 {
            return Scalar::zero();
        }
        if let Some(x) = self.cache.read().expect("cache lock").get(word) {
            return x.clone();
        }
        let a = word[0];
        let target = self.metric.partner(a);
        let minus_eps = -self.metric.eps();
        let mut total = Scalar::zero();
        let mut sign = Scalar::one();
        for j in 1..word.len() {
            if word[j] == target {
                let rest: Vec<usize> = word[1..j].iter().chain(&word[j + 1..]).copied().collect();
                let t = self.trace(&rest);
                if !t.is_zero() {
                    total += &(&(&sign * self.metric.upper(a, target)) * &t);
                }
            }
            sign = &sign * &minus_eps;
        }
        self.cache.write().expect("cache lock").insert(word.to_vec(), total.clone());
        total
    }

    pub fn trace_word(&self, word: &GammaWord) -> Scalar {
        let eps = self.metric.eps();
        let mut total = Scalar::zero();
        for (c, w) in word.expand(&eps) {
            let t = self.trace(&w);
            if !t.is_zero() {
                total += &(&c * &t);
            }
        }
        total
    }
}

/// Convenience wrapper around a fresh tracer.
pub fn gamma_trace(metric: &Metric, word: &GammaWord) -> Scalar {
    GammaTracer::new(metric).trace_word(word)
}

/// Trace of a product of explicit gamma matrices `γ = √2 c`, in units of
/// `C`. Only even words are supported, so the powers of `√2` pair up.
pub fn explicit_gamma_trace(osc_c: &[ScalarMatrix], word: &[usize]) -> Scalar {
    if word.len() % 2 == 1 {
        return Scalar::zero();
    }
    let dim = osc_c.first().map(|c| c.rows()).unwrap_or(1);
    let mut acc = ScalarMatrix::identity(dim);
    for &a in word {
        acc = acc.mul(&osc_c[a]).expect("square");
    }
    let scale = Scalar::from_int(2).pow((word.len() / 2) as u32);
    &(&acc.trace() * &scale) / &Scalar::from_int(dim as i64)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FusionError {
    #[error("generators violate the defR5 anticommutator condition ({0} nonzero entries)")]
    DefR5Violated(usize),
    #[error("explicit fusion is available for orthogonal algebras in the split basis only")]
    NoExplicitSpinors,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Result of projecting `L(u−λ) L̃(u−μ)` onto the fundamental representation.
/// Block `(e, f)` of `matrix` is the operator `L^e_f(u)` on the representation
/// space, normalized by `1/C`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FusedOperator {
    #[serde(skip)]
    pub metric: Metric,
    pub dim: usize,
    pub lambda: Scalar,
    pub mu: Scalar,
    #[serde(skip)]
    pub matrix: PolyMatrix,
}

/// Coefficient matrices of `u⁰, u¹, u²` for the fused operator, with the
/// spinorial factors `L = (u−λ) − ¼ γ^a γ^b G_ab` and
/// `L̃ = (u−μ) + ¼ γ^c γ^d G_cd`. Block `(e, f)` is `tr(L γ_f L̃ γ^e)/C` with
/// `γ_f = ε_fg γ^g`.
fn fused_coefficients(tracer: &GammaTracer, rep: &Representation, lambda: &Scalar, mu: &Scalar) -> [ScalarMatrix; 3] {
    let metric = &rep.metric;
    let n = metric.n();
    let dim = rep.dim;
    let kappa = Scalar::frac(1, 4);
    let lower: Vec<ScalarMatrix> = (0..n * n).map(|i| rep.lower(i / n, i % n)).collect();
    let id = ScalarMatrix::identity(dim);

    // L^{eg} split by powers of u
    let upper_block = |e: usize, g: usize| -> [ScalarMatrix; 3] {
        let t2 = tracer.trace(&[e, g]);
        let mut k0 = id.scale(&(&t2 * &(lambda * mu)));
        let k1_scalar = -&(&t2 * &(lambda + mu));
        let mut k1 = id.scale(&k1_scalar);
        let k2 = id.scale(&t2);
        for a in 0..n {
            for b in 0..n {
                let g_ab = &lower[a * n + b];
                // −κ(u−μ) tr(γ^a γ^b γ^e γ^g) G_ab
                let t_left = tracer.trace(&[a, b, e, g]);
                // +κ(u−λ) tr(γ^e γ^a γ^b γ^g) G_ab
                let t_right = tracer.trace(&[e, a, b, g]);
                let lin = &(&t_right - &t_left) * &kappa;
                if !lin.is_zero() {
                    k1.add_assign(&g_ab.scale(&lin)).expect("shape");
                }
                let cst = &(&(&t_left * mu) - &(&t_right * lambda)) * &kappa;
                if !cst.is_zero() {
                    k0.add_assign(&g_ab.scale(&cst)).expect("shape");
                }
                // −κ² tr(γ^a γ^b γ^e γ^c γ^d γ^g) G_ab G_cd
                let mut inner = ScalarMatrix::zeros(dim, dim);
                for c in 0..n {
                    for d in 0..n {
                        let t6 = tracer.trace(&[a, b, e, c, d, g]);
                        if !t6.is_zero() {
                            inner.add_assign(&lower[c * n + d].scale(&t6)).expect("shape");
                        }
                    }
                }
                if !inner.is_zero() {
                    let prod = g_ab.mul(&inner).expect("shape");
                    k0.add_assign(&prod.scale(&-&(&kappa * &kappa))).expect("shape");
                }
            }
        }
        [k0, k1, k2]
    };

    let mut out = [ScalarMatrix::zeros(n * dim, n * dim), ScalarMatrix::zeros(n * dim, n * dim), ScalarMatrix::zeros(n * dim, n * dim)];
    for f in 0..n {
        let g = metric.partner(f);
        let w = metric.lower(f, g);
        for e in 0..n {
            let block = upper_block(g, e);
            for (p, o) in out.iter_mut().enumerate() {
                let blk = block[p].scale(w);
                for i in 0..dim {
                    for j in 0..dim {
                        let x = blk.get(i, j);
                        if !x.is_zero() {
                            o.set(e * dim + i, f * dim + j, x.clone());
                        }
                    }
                }
            }
        }
    }
    out
}

impl FusedOperator {
    /// The same operator as an L-operator over `rep`, which must be the
    /// representation it was fused over.
    pub fn to_l_operator(&self, rep: &Representation) -> LOperator {
        let s = self.matrix.rows();
        let coeffs = (0..3)
            .map(|p| ScalarMatrix::from_fn(s, s, |i, j| self.matrix.get(i, j).coeff(p, 0)))
            .collect();
        l_from_coeffs(rep, coeffs, 2)
    }
}

fn assemble(metric: &Metric, dim: usize, lambda: &Scalar, mu: &Scalar, coeffs: [ScalarMatrix; 3]) -> FusedOperator {
    let s = coeffs[0].rows();
    let matrix = PolyMatrix::from_fn(s, s, |i, j| {
        Poly2::from_terms((0..3).map(|p| ((p as u32, 0), coeffs[p].get(i, j).clone())))
    });
    FusedOperator { metric: metric.clone(), dim, lambda: lambda.clone(), mu: mu.clone(), matrix }
}

/// Fusion over an arbitrary representation in the auxiliary slot, without
/// checking its defR5 condition.
pub fn fuse_over(rep: &Representation, lambda: &Scalar, mu: &Scalar) -> FusedOperator {
    let tracer = GammaTracer::new(&rep.metric);
    let coeffs = fused_coefficients(&tracer, rep, lambda, mu);
    assemble(&rep.metric, rep.dim, lambda, mu, coeffs)
}

/// Spinor ⊗ spinor projected onto the fundamental representation, with the
/// fundamental representation in the auxiliary slot: an operator on `V ⊗ V`.
pub fn fuse_spinor_pair(metric: &Metric, lambda: &Scalar, mu: &Scalar) -> FusedOperator {
    fuse_over(&fundamental_rep(metric), lambda, mu)
}

/// Fusion over a representation obeying the defR5 condition.
pub fn fuse_js(rep: &Representation, lambda: &Scalar, mu: &Scalar) -> Result<FusedOperator, FusionError> {
    let report = check_defr5(rep);
    if !report.symmetrized.is_zero() {
        return Err(FusionError::DefR5Violated(report.symmetrized.nonzero_entries));
    }
    Ok(fuse_over(rep, lambda, mu))
}

/// The same fusion carried out with explicit spinor matrices: the partial
/// trace over the spinor space of `L γ_f L̃ γ^e`, divided by its dimension.
pub fn fuse_explicit(rep: &Representation, lambda: &Scalar, mu: &Scalar) -> Result<FusedOperator, FusionError> {
    let metric = &rep.metric;
    if !metric.kind().is_orthogonal() {
        return Err(FusionError::NoExplicitSpinors);
    }
    let osc = oscillators(metric, OscKind::Fermionic, 0).map_err(|_| FusionError::NoExplicitSpinors)?;
    let n = metric.n();
    let (sd, dim) = (osc.dim, rep.dim);
    let big = sd * dim;
    let two = Scalar::from_int(2);
    // γ^a γ^b = 2 c^a c^b, and the two projector γ's pair up the same way
    let mut gg = ScalarMatrix::zeros(big, big);
    for a in 0..n {
        for b in 0..n {
            let cc = osc.c[a].mul(&osc.c[b])?.scale(&two);
            gg.add_assign(&cc.kron(&rep.lower(a, b)))?;
        }
    }
    let quarter = Scalar::frac(1, 4);
    let id_big = ScalarMatrix::identity(big);
    let id_rep = ScalarMatrix::identity(dim);
    let lin = gg.scale(&quarter);
    let partial_trace = |m: &ScalarMatrix| -> ScalarMatrix {
        let mut out = ScalarMatrix::zeros(dim, dim);
        for s in 0..sd {
            for i in 0..dim {
                for j in 0..dim {
                    let x = m.get(s * dim + i, s * dim + j);
                    if !x.is_zero() {
                        *out.get_mut(i, j) += x;
                    }
                }
            }
        }
        out.scale(&Scalar::frac(1, sd as i64))
    };
    let mut coeffs = [ScalarMatrix::zeros(n * dim, n * dim), ScalarMatrix::zeros(n * dim, n * dim), ScalarMatrix::zeros(n * dim, n * dim)];
    for f in 0..n {
        let g = metric.partner(f);
        let left = osc.c[g].kron(&id_rep).scale(&(&two * metric.lower(f, g)));
        for e in 0..n {
            let right = osc.c[e].kron(&id_rep);
            // A = (u−λ) − lin, B = (u−μ) + lin
            let a0 = id_big.scale(&-lambda).sub(&lin)?;
            let b0 = id_big.scale(&-mu).add(&lin)?;
            let c2 = left.mul(&right)?;
            let c1 = left.mul(&b0)?.mul(&right)?.add(&a0.mul(&left)?.mul(&right)?)?;
            let c0 = a0.mul(&left)?.mul(&b0)?.mul(&right)?;
            for (p, m) in [c0, c1, c2].iter().enumerate() {
                let blk = partial_trace(m);
                for i in 0..dim {
                    for j in 0..dim {
                        coeffs[p].set(e * dim + i, f * dim + j, blk.get(i, j).clone());
                    }
                }
            }
        }
    }
    Ok(assemble(metric, dim, lambda, mu, coeffs))
}

/// The shift condition as it is usually quoted: `λ + μ = (2 − εn)/2`,
/// `λμ = (εn − 3)/4`. For `sp` the sum has the wrong sign; see
/// [`spinor_pair_shifts`].
pub fn quoted_shift_constraints(metric: &Metric) -> (Scalar, Scalar) {
    let en = &metric.eps() * &Scalar::from_int(metric.n() as i64);
    let sum = &(&Scalar::from_int(2) - &en) * &Scalar::frac(1, 2);
    let prod = &(&en - &Scalar::from_int(3)) * &Scalar::frac(1, 4);
    (sum, prod)
}

/// Shifts `(λ, μ)` for which the fused spinor pair is proportional to the
/// fundamental R-matrix: the roots of `x² + βx + (εn − 3)/4`, namely
/// `(−β ± (n/2 − 2ε))/2`. Both are rational for every `n`.
pub fn spinor_pair_shifts(metric: &Metric) -> (Scalar, Scalar) {
    let beta = metric.beta();
    let d = &Scalar::frac(metric.n() as i64, 2) - &(&metric.eps() * &Scalar::from_int(2));
    let half = Scalar::frac(1, 2);
    (&(&d - &beta) * &half, &(&(-&beta) - &d) * &half)
}

/// Shifts `(λ, −λ)` with `λ = (εn − 4)/4`, at which the fused operator over a
/// defR5 representation is the quadratic evaluation
/// [`crate::yangian_l::quadratic_evaluation_l`].
pub fn js_shifts(metric: &Metric) -> (Scalar, Scalar) {
    let en = &metric.eps() * &Scalar::from_int(metric.n() as i64);
    let lambda = &(&en - &Scalar::from_int(4)) * &Scalar::frac(1, 4);
    let mu = -&lambda;
    (lambda, mu)
}

/// The constant `c` with `fused = c · R(u)`, if there is one. Only meaningful
/// when the auxiliary representation is the fundamental one.
pub fn proportionality_factor(fused: &FusedOperator) -> Result<Option<Scalar>, FusionError> {
    let r = fundamental_r(&fused.metric).at(&Poly2::u());
    let Some((num, den)) = fused.matrix.proportional_to(&r)? else {
        return Ok(None);
    };
    if num.is_zero() || den != Poly2::one() || num.terms().iter().any(|(m, _)| *m != (0, 0)) {
        return Ok(None);
    }
    Ok(Some(num.coeff(0, 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_metric, AlgebraKind, Basis};

    #[test]
    fn two_point_trace_is_metric() {
        for (k, n) in [(AlgebraKind::SO, 4), (AlgebraKind::SP, 4)] {
            let m = make_metric(k, n, Basis::Split).unwrap();
            let t = GammaTracer::new(&m);
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(t.trace(&[a, b]), m.upper(a, b).clone());
                }
            }
        }
    }

    #[test]
    fn four_point_trace_formula() {
        for (k, n) in [(AlgebraKind::SO, 3), (AlgebraKind::SP, 4)] {
            let m = make_metric(k, n, Basis::Split).unwrap();
            let t = GammaTracer::new(&m);
            let e = |a: usize, b: usize| m.upper(a, b).clone();
            let eps = m.eps();
            for w in 0..n.pow(4) {
                let (a, b, c, d) = (w / n.pow(3), w / n / n % n, w / n % n, w % n);
                let expect = &(&(&e(a, b) * &e(c, d)) - &(&eps * &(&e(a, c) * &e(b, d)))) + &(&e(a, d) * &e(b, c));
                assert_eq!(t.trace(&[a, b, c, d]), expect);
            }
        }
    }

    #[test]
    fn pair_factor_is_antisymmetrized() {
        let m = make_metric(AlgebraKind::SO, 4, Basis::Split).unwrap();
        let (a, b) = (0, 3);
        let w = GammaWord { factors: vec![GammaFactor::Pair(a, b)], coeff: Scalar::one() };
        // tr γ^{ab} = ½(ε^{ab} − ε^{ba}) = 0 for symmetric ε
        assert!(gamma_trace(&m, &w).is_zero());
    }
}
