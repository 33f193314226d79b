//! Jordan–Schwinger representations `M_ab = ε x_a ∂_b − x_b ∂_a`.
//!
//! For so the pairs `(x, ∂)` are bosonic and act on homogeneous polynomials
//! of a fixed degree; for sp they are fermionic and act on a fixed-degree
//! piece of the Grassmann algebra. Either way the generators preserve the
//! degree, so nothing is truncated.

use std::collections::HashMap;

use super::{RepError, Representation};
use crate::algebra::Metric;
use crate::exact_core::{Scalar, ScalarMatrix};

/// Basis monomials of one degree: exponent vectors for polynomials, 0/1
/// vectors (sorted subsets) for Grassmann monomials.
#[derive(Debug, Clone)]
struct Graded {
    states: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Graded {
    fn new(n: usize, degree: usize, fermionic: bool) -> Graded {
        let mut states = Vec::new();
        fn rec(n: usize, left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for k in (0..=left.min(max)).rev() {
                cur.push(k);
                rec(n, left - k, max, cur, out);
                cur.pop();
            }
        }
        rec(n, degree, if fermionic { 1 } else { degree }, &mut Vec::new(), &mut states);
        let index = states.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Graded { states, index }
    }

    fn len(&self) -> usize {
        self.states.len()
    }
}

/// Multiplication by the variable `y_b` from degree `d` to `d + 1`.
fn mult(n: usize, d: usize, b: usize, fermionic: bool) -> ScalarMatrix {
    let src = Graded::new(n, d, fermionic);
    let dst = Graded::new(n, d + 1, fermionic);
    let mut out = ScalarMatrix::zeros(dst.len(), src.len());
    for (i, s) in src.states.iter().enumerate() {
        let mut t = s.clone();
        t[b] += 1;
        if let Some(&j) = dst.index.get(&t) {
            let sign = if fermionic && s[..b].iter().sum::<usize>() % 2 == 1 { -1 } else { 1 };
            out.set(j, i, Scalar::from_int(sign));
        }
    }
    out
}

/// Plain (left) derivative `∂/∂y_b` from degree `d` to `d − 1`.
fn deriv(n: usize, d: usize, b: usize, fermionic: bool) -> ScalarMatrix {
    let src = Graded::new(n, d, fermionic);
    let dst = Graded::new(n, d - 1, fermionic);
    let mut out = ScalarMatrix::zeros(dst.len(), src.len());
    for (i, s) in src.states.iter().enumerate() {
        if s[b] == 0 {
            continue;
        }
        let mut t = s.clone();
        t[b] -= 1;
        let j = dst.index[&t];
        let coeff = if fermionic {
            if s[..b].iter().sum::<usize>() % 2 == 1 { -1 } else { 1 }
        } else {
            s[b] as i64
        };
        out.set(j, i, Scalar::from_int(coeff));
    }
    out
}

/// The metric derivative `∂_a = ε_ab ∂/∂y_b` from degree `d` to `d − 1`.
fn metric_deriv(metric: &Metric, d: usize, a: usize, fermionic: bool) -> ScalarMatrix {
    let b = metric.partner(a);
    deriv(metric.n(), d, b, fermionic).scale(metric.lower(a, b))
}

fn is_fermionic(metric: &Metric) -> bool {
    !metric.kind().is_orthogonal()
}

/// Jordan–Schwinger representation on the degree-`m` subspace, with
/// `G^a_b = ε^{ac} M_cb`. Degree 0 is the trivial one-dimensional
/// representation.
pub fn js_rep(metric: &Metric, m: usize) -> Result<Representation, RepError> {
    let n = metric.n();
    let fermionic = is_fermionic(metric);
    if fermionic && m > n {
        return Err(RepError::DegreeTooLarge { m, n });
    }
    let dim = Graded::new(n, m, fermionic).len();
    let label = format!("js{m}");
    if m == 0 {
        return Ok(Representation::new(metric.clone(), label, 1, |_, _| ScalarMatrix::zeros(1, 1)));
    }
    let x: Vec<ScalarMatrix> = (0..n).map(|a| mult(n, m - 1, a, fermionic)).collect();
    let dd: Vec<ScalarMatrix> = (0..n).map(|a| metric_deriv(metric, m, a, fermionic)).collect();
    let eps = metric.eps();
    // M_ab = ε x_a ∂_b − x_b ∂_a
    let m_low = |a: usize, b: usize| {
        let t1 = x[a].mul(&dd[b]).expect("shape").scale(&eps);
        let t2 = x[b].mul(&dd[a]).expect("shape");
        t1.sub(&t2).expect("shape")
    };
    Ok(Representation::new(metric.clone(), label, dim, |a, b| {
        let c = metric.partner(a);
        m_low(c, b).scale(metric.upper(a, c))
    }))
}

/// `∂² = ∂_d ε^{de} ∂_e` from degree `m` to `m − 2` (zero map when `m < 2`).
pub fn laplacian(metric: &Metric, m: usize) -> ScalarMatrix {
    let n = metric.n();
    let fermionic = is_fermionic(metric);
    let dim = Graded::new(n, m, fermionic).len();
    if m < 2 {
        return ScalarMatrix::zeros(0, dim);
    }
    let target = Graded::new(n, m - 2, fermionic).len();
    let mut out = ScalarMatrix::zeros(target, dim);
    for d in 0..n {
        let e = metric.partner(d);
        let inner = metric_deriv(metric, m, e, fermionic);
        let outer = metric_deriv(metric, m - 1, d, fermionic);
        let term = outer.mul(&inner).expect("shape").scale(metric.upper(d, e));
        out.add_assign(&term).expect("shape");
    }
    out
}

/// The kernel of `∂²` in degree `m` (harmonic polynomials for so, primitive
/// Grassmann elements for sp) and the restriction of the Jordan–Schwinger
/// representation to it. For sp the kernel is empty once `m > n/2`.
#[derive(Debug, Clone)]
pub struct HarmonicSubspace {
    /// Columns span `ker ∂²`; the rows listed in `free` form the identity.
    pub basis: ScalarMatrix,
    pub free: Vec<usize>,
    pub rep: Representation,
}

pub fn harmonic_subspace(rep: &Representation, m: usize) -> Result<HarmonicSubspace, RepError> {
    let metric = &rep.metric;
    if rep.label != format!("js{m}") {
        return Err(RepError::NotJs);
    }
    let lap = laplacian(metric, m);
    let (basis, free) = if lap.rows() == 0 {
        (ScalarMatrix::identity(rep.dim), (0..rep.dim).collect())
    } else {
        lap.nullspace()
    };
    let all: Vec<usize> = (0..basis.cols()).collect();
    let restricted = rep.map_gens(format!("harmonic{m}"), |g| g.mul(&basis).expect("shape").select(&free, &all));
    Ok(HarmonicSubspace { basis, free, rep: restricted })
}
