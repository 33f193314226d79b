//! Linear and quadratic evaluation L-operators and the RLL / Yangian
//! coefficient checks.
//!
//! An L-operator acts on `V ⊗ W` with `V` the fundamental space and `W` the
//! representation space; block `(a, b)` of every coefficient is the operator
//! `L^a_b` on `W`. Operators are stored with denominators cleared, as a
//! polynomial `Σ_k u^k · coeffs[k]`.

use serde::Serialize;

use crate::algebra::Metric;
use crate::exact_core::{embed, ExactError, Poly2, PolyMatrix, Scalar, ScalarMatrix};
use crate::fundamental_r::{build_ipk, FundamentalR};
use crate::representations::{casimir, fundamental_rep, Representation};
use crate::residual::Residual;

#[derive(Debug, Clone, PartialEq)]
pub struct LOperator {
    pub metric: Metric,
    pub rep: Representation,
    /// `coeffs[k]` multiplies `u^k`; each is `(n·dim) × (n·dim)`.
    pub coeffs: Vec<ScalarMatrix>,
    /// Highest power of generators appearing in any coefficient.
    pub gen_degree: usize,
}

impl LOperator {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn size(&self) -> usize {
        self.metric.n() * self.rep.dim
    }

    /// The polynomial matrix `L(arg)`, where `arg` is a polynomial in `u, v`.
    pub fn at(&self, arg: &Poly2) -> PolyMatrix {
        let s = self.size();
        let powers: Vec<Poly2> = (0..self.coeffs.len()).map(|k| arg.pow(k as u32)).collect();
        PolyMatrix::from_fn(s, s, |i, j| {
            let mut e = Poly2::zero();
            for (c, p) in self.coeffs.iter().zip(&powers) {
                let x = c.get(i, j);
                if !x.is_zero() {
                    e.add_assign_ref(&p.scale(x));
                }
            }
            e
        })
    }

    pub fn matrix(&self) -> PolyMatrix {
        self.at(&Poly2::u())
    }

    /// `(u − a) · L(u)`: the automorphism `L⁽ᵏ⁾ → L⁽ᵏ⁾ − a L⁽ᵏ⁻¹⁾` with
    /// denominators cleared once more.
    pub fn shifted(&self, a: &Scalar) -> LOperator {
        let s = self.size();
        let mut coeffs = vec![ScalarMatrix::zeros(s, s); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k + 1].add_assign(c).expect("shape");
            coeffs[k].add_assign(&c.scale(&-a)).expect("shape");
        }
        LOperator { coeffs, ..self.clone() }
    }
}

fn block_identity(rep: &Representation) -> ScalarMatrix {
    ScalarMatrix::identity(rep.n() * rep.dim)
}

fn casimir_block(rep: &Representation) -> ScalarMatrix {
    ScalarMatrix::identity(rep.n()).kron(&casimir(rep))
}

/// `L(u) = u − G`, i.e. `L^a_b(u) = u δ^a_b − G^a_b`.
pub fn linear_l(rep: &Representation) -> LOperator {
    let g = rep.block_matrix();
    LOperator { metric: rep.metric.clone(), rep: rep.clone(), coeffs: vec![g.neg(), block_identity(rep)], gen_degree: 1 }
}

/// `u² L(u)` with `L = I + (βI − G)/u + (G² − 2βG − I)/(2u²)` and `G` the
/// fundamental generators.
pub fn fundamental_quadratic_l(metric: &Metric) -> LOperator {
    let rep = fundamental_rep(metric);
    let g = rep.block_matrix();
    let id = block_identity(&rep);
    let beta = metric.beta();
    let g2 = g.mul(&g).expect("shape");
    let l1 = id.scale(&beta).sub(&g).expect("shape");
    let l2 = g2
        .sub(&g.scale(&(&beta * &Scalar::from_int(2))))
        .and_then(|x| x.sub(&id))
        .expect("shape")
        .scale(&Scalar::frac(1, 2));
    LOperator { metric: metric.clone(), rep, coeffs: vec![l2, l1, id], gen_degree: 2 }
}

/// `(u − λ)(u − μ) I + (u − σ) M + M²` with `M` the block matrix of
/// generators.
pub fn js_quadratic_l(rep: &Representation, lambda: &Scalar, mu: &Scalar, sigma: &Scalar) -> LOperator {
    ljs_l(rep, &(lambda + mu), &(lambda * mu), sigma, &Scalar::one())
}

/// `u² I + u(M − s) + p I − σ M + κ M²`, i.e. `(u−λ)(u−μ) I + (u−σ) M + κ M²`
/// written through `s = λ + μ` and `p = λμ` so that irrational roots never
/// appear.
pub fn ljs_l(rep: &Representation, s: &Scalar, p: &Scalar, sigma: &Scalar, kappa: &Scalar) -> LOperator {
    let m = rep.block_matrix();
    let id = block_identity(rep);
    let m2 = m.mul(&m).expect("shape");
    let c0 = id.scale(p).sub(&m.scale(sigma)).and_then(|x| x.add(&m2.scale(kappa))).expect("shape");
    let c1 = m.sub(&id.scale(s)).expect("shape");
    LOperator { metric: rep.metric.clone(), rep: rep.clone(), coeffs: vec![c0, c1, id], gen_degree: 2 }
}

/// The quadratic evaluation that solves RLL for the fundamental, JS and
/// spinor representations:
/// `u² I − u G + ½(G² − βG) − (ε m₂/8 + (εn − 4)²/16) I` with `m₂ = Tr G²`.
pub fn quadratic_evaluation_l(rep: &Representation) -> LOperator {
    let metric = &rep.metric;
    let g = rep.block_matrix();
    let id = block_identity(rep);
    let beta = metric.beta();
    let eps = metric.eps();
    let shift = &(&eps * &Scalar::from_int(metric.n() as i64)) - &Scalar::from_int(4);
    let c = &(&shift * &shift) / &Scalar::from_int(16);
    let g2 = g.mul(&g).expect("shape");
    let n_op = g2
        .sub(&g.scale(&beta))
        .expect("shape")
        .scale(&Scalar::frac(1, 2))
        .sub(&casimir_block(rep).scale(&(&eps / &Scalar::from_int(8))))
        .and_then(|x| x.sub(&id.scale(&c)))
        .expect("shape");
    LOperator { metric: metric.clone(), rep: rep.clone(), coeffs: vec![n_op, g.neg(), id], gen_degree: 2 }
}

/// `u² I + u G + N` with `N = ½(G² − βG) − ¼β² I − m₂/8`, where `m₂` is the
/// Casimir `Tr G²` taken as an operator.
pub fn lgn_l(rep: &Representation) -> LOperator {
    let g = rep.block_matrix();
    let id = block_identity(rep);
    let beta = rep.metric.beta();
    let g2 = g.mul(&g).expect("shape");
    let n_op = g2
        .sub(&g.scale(&beta))
        .expect("shape")
        .scale(&Scalar::frac(1, 2))
        .sub(&id.scale(&(&(&beta * &beta) * &Scalar::frac(1, 4))))
        .and_then(|x| x.sub(&casimir_block(rep).scale(&Scalar::frac(1, 8))))
        .expect("shape");
    LOperator { metric: rep.metric.clone(), rep: rep.clone(), coeffs: vec![n_op, g, id], gen_degree: 2 }
}

/// Builds an operator from explicit coefficients (lowest power first).
pub fn l_from_coeffs(rep: &Representation, coeffs: Vec<ScalarMatrix>, gen_degree: usize) -> LOperator {
    LOperator { metric: rep.metric.clone(), rep: rep.clone(), coeffs, gen_degree }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RllError {
    #[error("R acts on n = {r} but L on n = {l}")]
    Mismatch { r: usize, l: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Columns of `V ⊗ V ⊗ W` whose `W` component lies in `states`.
pub fn triple_cols(n: usize, dim: usize, states: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(n * n * states.len());
    for p in 0..n * n {
        for &s in states {
            out.push(p * dim + s);
        }
    }
    out
}

/// `R₁₂(u−v) L₁(u) L₂(v) − L₂(v) L₁(u) R₁₂(u−v)` on `V ⊗ V ⊗ W`.
pub fn rll_residual(r: &FundamentalR, l: &LOperator) -> Result<PolyMatrix, RllError> {
    let n = r.n();
    if l.metric.n() != n {
        return Err(RllError::Mismatch { r: n, l: l.metric.n() });
    }
    let dims = [n, n, l.rep.dim];
    let u = Poly2::u();
    let v = Poly2::v();
    let r12 = embed(&r.at(&(&u - &v)), &dims, &[0, 1])?;
    let l1 = embed(&l.at(&u), &dims, &[0, 2])?;
    let l2 = embed(&l.at(&v), &dims, &[1, 2])?;
    let lhs = r12.mul(&l1)?.mul(&l2)?;
    let rhs = l2.mul(&l1)?.mul(&r12)?;
    Ok(lhs.sub(&rhs)?)
}

/// The RLL residual restricted to the states on which the product is exact.
pub fn check_rll(r: &FundamentalR, l: &LOperator) -> Result<Residual, RllError> {
    let res = rll_residual(r, l)?;
    let states = l.rep.exact_states(2 * l.gen_degree);
    let cols = triple_cols(r.n(), l.rep.dim, &states);
    Ok(Residual::of_matrix(&res, Some(&cols), &[]))
}

/// One coefficient relation of the Yangian at `u^{-k} v^{-j}`, with
/// `L⁽⁰⁾ = I`, `L⁽¹⁾`, `L⁽²⁾` given and all higher coefficients zero.
pub fn yangian_coefficient_residual(
    metric: &Metric,
    dim: usize,
    l1_coeff: &ScalarMatrix,
    l2_coeff: &ScalarMatrix,
    j: i64,
    k: i64,
) -> Result<ScalarMatrix, ExactError> {
    let n = metric.n();
    let dims = [n, n, dim];
    let size = n * dim;
    let ipk = build_ipk(metric);
    let p = embed(&ipk.p_op, &dims, &[0, 1])?;
    let kk = embed(&ipk.k_op, &dims, &[0, 1])?;
    let beta = metric.beta();
    let eps = metric.eps();
    let coeff = |idx: i64| -> Option<ScalarMatrix> {
        match idx {
            0 => Some(ScalarMatrix::identity(size)),
            1 => Some(l1_coeff.clone()),
            2 => Some(l2_coeff.clone()),
            _ => None,
        }
    };
    let total = n * n * dim;
    let zero = ScalarMatrix::zeros(total, total);
    let site1 = |idx: i64| coeff(idx).map(|c| embed(&c, &dims, &[0, 2]).expect("layout")).unwrap_or_else(|| zero.clone());
    let site2 = |idx: i64| coeff(idx).map(|c| embed(&c, &dims, &[1, 2]).expect("layout")).unwrap_or_else(|| zero.clone());
    let comm = |a: i64, b: i64| site1(a).commutator(&site2(b), 1);
    let prod12 = |a: i64, b: i64| site1(a).mul(&site2(b));
    let prod21 = |b: i64, a: i64| site2(b).mul(&site1(a));

    let mut out = comm(k, j - 2)?;
    out = out.sub(&comm(k - 1, j - 1)?.scale(&Scalar::from_int(2)))?;
    out = out.add(&comm(k - 2, j)?)?;
    out = out.add(&comm(k - 1, j - 2)?.sub(&comm(k - 2, j - 1)?)?.scale(&beta))?;
    let left = prod12(k - 1, j - 2)?.sub(&prod12(k - 2, j - 1)?)?.add(&prod12(k - 2, j - 2)?.scale(&beta))?;
    out = out.add(&p.mul(&left)?)?;
    let right = prod21(j - 2, k - 1)?.sub(&prod21(j - 1, k - 2)?)?.add(&prod21(j - 2, k - 2)?.scale(&beta))?;
    out = out.sub(&right.mul(&p)?)?;
    let kl = kk.mul(&prod12(k - 2, j - 1)?.sub(&prod12(k - 1, j - 2)?)?)?;
    let kr = prod21(j - 1, k - 2)?.sub(&prod21(j - 2, k - 1)?)?.mul(&kk)?;
    out = out.add(&kl.sub(&kr)?.scale(&eps))?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientReport {
    pub j: i64,
    pub k: i64,
    pub residual: Residual,
}

pub fn check_yangian_coefficients(
    metric: &Metric,
    dim: usize,
    l1_coeff: &ScalarMatrix,
    l2_coeff: &ScalarMatrix,
    j: i64,
    k: i64,
) -> Result<CoefficientReport, ExactError> {
    let r = yangian_coefficient_residual(metric, dim, l1_coeff, l2_coeff, j, k)?;
    Ok(CoefficientReport { j, k, residual: Residual::of_matrix(&r, None, &[]) })
}

/// Monomials of the quadratic polynomials in `(s, p, σ)` produced by
/// [`ljs_constraints`].
pub const LJS_MONOMIALS: [&str; 10] = ["1", "s", "p", "σ", "s²", "p²", "σ²", "sp", "sσ", "pσ"];

fn ljs_monomials(s: &Scalar, p: &Scalar, q: &Scalar) -> [Scalar; 10] {
    [Scalar::one(), s.clone(), p.clone(), q.clone(), s * s, p * p, q * q, s * p, s * q, p * q]
}

/// Polynomial conditions on `(s, p, σ) = (λ+μ, λμ, σ)` for [`ljs_l`] to
/// satisfy RLL, in reduced row echelon form over [`LJS_MONOMIALS`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LjsConstraints {
    pub kappa: Scalar,
    pub rows: Vec<Vec<Scalar>>,
}

impl LjsConstraints {
    /// True when a nonzero constant lies in the span of the conditions, so
    /// no parameter values exist.
    pub fn inconsistent(&self) -> bool {
        self.rows.iter().any(|r| !r[0].is_zero() && r[1..].iter().all(Scalar::is_zero))
    }

    pub fn satisfied_by(&self, s: &Scalar, p: &Scalar, sigma: &Scalar) -> bool {
        let x = ljs_monomials(s, p, sigma);
        self.rows.iter().all(|r| r.iter().zip(&x).fold(Scalar::zero(), |acc, (c, m)| &acc + &(c * m)).is_zero())
    }
}

/// Solves for the admissible `(λ+μ, λμ, σ)` of [`ljs_l`] exactly. The
/// residual is quadratic in the parameters, so it is interpolated on the
/// ten lattice points with `s + p + σ ≤ 2` and row reduced.
pub fn ljs_constraints(r: &FundamentalR, rep: &Representation, kappa: &Scalar) -> Result<LjsConstraints, RllError> {
    let mut pts = Vec::new();
    for a in 0..3i64 {
        for b in 0..3 - a {
            for c in 0..3 - a - b {
                pts.push([a, b, c].map(Scalar::from_int));
            }
        }
    }
    let vand = ScalarMatrix::from_fn(10, 10, |i, j| ljs_monomials(&pts[i][0], &pts[i][1], &pts[i][2])[j].clone());
    let vinv = vand.inverse().expect("lattice points are unisolvent");
    let states = rep.exact_states(4);
    let cols = triple_cols(r.n(), rep.dim, &states);
    let mut samples = Vec::with_capacity(10);
    for x in &pts {
        let res = rll_residual(r, &ljs_l(rep, &x[0], &x[1], &x[2], kappa))?;
        let mut flat = Vec::new();
        for i in 0..res.rows() {
            for &j in &cols {
                let e = res.get(i, j);
                for du in 0..=4 {
                    for dv in 0..=4 {
                        flat.push(e.coeff(du, dv));
                    }
                }
            }
        }
        samples.push(flat);
    }
    let mut rows = Vec::new();
    for e in 0..samples[0].len() {
        let coeffs: Vec<Scalar> = (0..10)
            .map(|j| (0..10).fold(Scalar::zero(), |acc, i| &acc + &(vinv.get(j, i) * &samples[i][e])))
            .collect();
        if coeffs.iter().any(|c| !c.is_zero()) {
            rows.push(coeffs);
        }
    }
    // reduce with the highest monomials first so constants surface last
    let mat = ScalarMatrix::from_fn(rows.len(), 10, |i, j| rows[i][9 - j].clone());
    let (rref, pivots) = mat.rref();
    let rows = (0..pivots.len()).map(|i| (0..10).map(|j| rref.get(i, 9 - j).clone()).collect()).collect();
    Ok(LjsConstraints { kappa: kappa.clone(), rows })
}

/// `K₁₂(G₁G₂ + βG₂) − (G₂G₁ + βG₂)K₁₂`, the obstruction for a linear
/// evaluation.
pub fn linear_obstruction(rep: &Representation) -> Result<ScalarMatrix, ExactError> {
    let metric = &rep.metric;
    let n = metric.n();
    let dims = [n, n, rep.dim];
    let ipk = build_ipk(metric);
    let k = embed(&ipk.k_op, &dims, &[0, 1])?;
    let g = rep.block_matrix();
    let g1 = embed(&g, &dims, &[0, 2])?;
    let g2 = embed(&g, &dims, &[1, 2])?;
    let beta = metric.beta();
    let left = g1.mul(&g2)?.add(&g2.scale(&beta))?;
    let right = g2.mul(&g1)?.add(&g2.scale(&beta))?;
    k.mul(&left)?.sub(&right.mul(&k)?)
}
