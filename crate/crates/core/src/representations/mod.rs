//! Concrete representations of so(n) / sp(n): fundamental, spinor
//! (fermionic Clifford or bosonic metaplectic) and Jordan–Schwinger, plus
//! the identity checks run on them.

mod checks;
mod js;
mod oscillators;

pub use checks::{
    casimir, casimir_scalar, check_characteristic, check_cubic_factorized, check_cubic_with_m2,
    check_defr5, check_lie_relations, CharacteristicKind, CharacteristicReport, DefR5Report, LieReport,
};
pub use js::{harmonic_subspace, js_rep, laplacian};
pub use oscillators::{oscillators, spinor_rep, OscKind, OscillatorSet};

use crate::algebra::Metric;
use crate::exact_core::{Scalar, ScalarMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("oscillators need the split basis")]
    NeedsSplitBasis,
    #[error("fermionic oscillators belong to so, bosonic ones to sp")]
    KindMismatch,
    #[error("cutoff must be at least 1")]
    BadCutoff,
    #[error("Grassmann degree {m} exceeds n = {n}")]
    DegreeTooLarge { m: usize, n: usize },
    #[error("harmonic projection needs the Jordan-Schwinger representation of that degree")]
    NotJs,
    #[error("representations act on different metrics")]
    MetricMismatch,
}

/// Bookkeeping for a representation living on a truncated Fock space.
///
/// Every generator matrix is the exact compression `P G P` of the true
/// operator to states of total occupation `≤ cutoff`, and each generator
/// changes the occupation by at most `step`. A product of `k` generators
/// then agrees with the compression of the true product on every input
/// state of occupation `≤ cutoff − (k−1)·step`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub cutoff: usize,
    pub step: usize,
    pub grading: Vec<usize>,
}

impl Truncation {
    /// Occupation bound on which products of `depth` generators are exact.
    pub fn band(&self, depth: usize) -> Option<usize> {
        self.cutoff.checked_sub(depth.saturating_sub(1) * self.step)
    }

    /// States inside the band for the given product depth.
    pub fn states(&self, depth: usize) -> Vec<usize> {
        match self.band(depth) {
            Some(b) => (0..self.grading.len()).filter(|&i| self.grading[i] <= b).collect(),
            None => Vec::new(),
        }
    }
}

/// A family of matrices `G^a_b` (internal indices) acting on a space of
/// dimension `dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub metric: Metric,
    pub dim: usize,
    pub label: String,
    gens: Vec<ScalarMatrix>,
    pub truncation: Option<Truncation>,
}

impl Representation {
    pub fn new(metric: Metric, label: impl Into<String>, dim: usize, mut f: impl FnMut(usize, usize) -> ScalarMatrix) -> Self {
        let n = metric.n();
        let mut gens = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let g = f(a, b);
                assert_eq!(g.shape(), (dim, dim), "generator ({a},{b}) has the wrong size");
                gens.push(g);
            }
        }
        Representation { metric, dim, label: label.into(), gens, truncation: None }
    }

    pub fn with_truncation(mut self, t: Truncation) -> Self {
        self.truncation = Some(t);
        self
    }

    pub fn n(&self) -> usize {
        self.metric.n()
    }

    /// `G^a_b`.
    pub fn gen(&self, a: usize, b: usize) -> &ScalarMatrix {
        &self.gens[a * self.n() + b]
    }

    /// `G_ab = ε_ad G^d_b`.
    pub fn lower(&self, a: usize, b: usize) -> ScalarMatrix {
        let d = self.metric.partner(a);
        self.gen(d, b).scale(self.metric.lower(a, d))
    }

    /// `G^{ab} = G^a_d ε^{db}`.
    pub fn upper(&self, a: usize, b: usize) -> ScalarMatrix {
        let d = self.metric.partner(b);
        self.gen(a, d).scale(self.metric.upper(d, b))
    }

    /// The `n·dim` block matrix whose block `(a, b)` is `G^a_b`.
    pub fn block_matrix(&self) -> ScalarMatrix {
        ScalarMatrix::from_blocks(self.n(), self.dim, |a, b| Some(self.gen(a, b).clone()))
    }

    /// Applies `f` to every generator.
    pub fn map_gens(&self, label: impl Into<String>, f: impl Fn(&ScalarMatrix) -> ScalarMatrix) -> Representation {
        let gens: Vec<ScalarMatrix> = self.gens.iter().map(f).collect();
        let dim = gens[0].rows();
        Representation { metric: self.metric.clone(), dim, label: label.into(), gens, truncation: None }
    }

    /// Multiplies every generator by `c`; with `c = −1` this is the usual
    /// sign-flipped negative control.
    pub fn scaled(&self, c: &Scalar) -> Representation {
        let mut out = self.map_gens(format!("{}*{}", c, self.label), |g| g.scale(c));
        out.truncation = self.truncation.clone();
        out
    }

    /// Basis states on which a product of `depth` generators is exact.
    pub fn exact_states(&self, depth: usize) -> Vec<usize> {
        match &self.truncation {
            Some(t) => t.states(depth),
            None => (0..self.dim).collect(),
        }
    }

    /// Block direct sum with another representation of the same algebra.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation, RepError> {
        if self.metric != other.metric {
            return Err(RepError::MetricMismatch);
        }
        let (d1, d2) = (self.dim, other.dim);
        let label = format!("{}+{}", self.label, other.label);
        Ok(Representation::new(self.metric.clone(), label, d1 + d2, |a, b| {
            let (x, y) = (self.gen(a, b), other.gen(a, b));
            ScalarMatrix::from_fn(d1 + d2, d1 + d2, |i, j| {
                if i < d1 && j < d1 {
                    x.get(i, j).clone()
                } else if i >= d1 && j >= d1 {
                    y.get(i - d1, j - d1).clone()
                } else {
                    Scalar::zero()
                }
            })
        }))
    }
}

/// `(G^a_b)^c_d = −(δ^a_d δ^c_b − ε ε^{ac} ε_{bd})`, i.e. the block matrix of
/// generators is `−(P − εK)`.
pub fn fundamental_rep(metric: &Metric) -> Representation {
    let n = metric.n();
    let eps = metric.eps();
    Representation::new(metric.clone(), "fundamental", n, |a, b| {
        ScalarMatrix::from_fn(n, n, |c, d| {
            let mut x = &(&eps * metric.upper(a, c)) * metric.lower(b, d);
            if a == d && c == b {
                x -= &Scalar::one();
            }
            x
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_metric, AlgebraKind, Basis};
    use crate::fundamental_r::build_ipk;

    #[test]
    fn fundamental_block_matrix_is_minus_p_plus_eps_k() {
        for (k, n, b) in [(AlgebraKind::SO, 3, Basis::Delta), (AlgebraKind::SP, 4, Basis::Split)] {
            let m = make_metric(k, n, b).unwrap();
            let ipk = build_ipk(&m);
            let g = fundamental_rep(&m).block_matrix();
            let expect = ipk.k_op.scale(&m.eps()).sub(&ipk.p_op).unwrap();
            assert_eq!(g, expect);
        }
    }

    #[test]
    fn direct_sum_dimensions() {
        let m = make_metric(AlgebraKind::SO, 3, Basis::Delta).unwrap();
        let f = fundamental_rep(&m);
        let s = f.direct_sum(&f).unwrap();
        assert_eq!(s.dim, 6);
        assert_eq!(s.gen(0, 1).select(&[0, 1, 2], &[0, 1, 2]), *f.gen(0, 1));
        assert!(s.gen(0, 1).select(&[0, 1, 2], &[3, 4, 5]).is_zero());
    }
}
