//! Choice of algebra (so / sp), the invariant metric and index bookkeeping.

use std::fmt;

use serde::Serialize;

use crate::exact_core::{Scalar, ScalarMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Orthogonal,
    Symplectic,
}

/// Algebra family together with its signature `ε` (`+1` for so, `-1` for sp).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AlgebraKind {
    pub family: Family,
}

impl AlgebraKind {
    pub const SO: AlgebraKind = AlgebraKind { family: Family::Orthogonal };
    pub const SP: AlgebraKind = AlgebraKind { family: Family::Symplectic };

    pub fn epsilon(self) -> i64 {
        match self.family {
            Family::Orthogonal => 1,
            Family::Symplectic => -1,
        }
    }

    pub fn eps(self) -> Scalar {
        Scalar::from_int(self.epsilon())
    }

    pub fn is_orthogonal(self) -> bool {
        self.family == Family::Orthogonal
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Orthogonal => write!(f, "so"),
            Family::Symplectic => write!(f, "sp"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// `ε^{ab} = δ^{ab}`, labels `1..n`; orthogonal only.
    Delta,
    /// Labels `-m..-1, (0), 1..m`, metric pairing `a` with `-a`.
    Split,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("symplectic algebra needs even n, got {0}")]
    OddSymplectic(usize),
    #[error("delta basis is only available for the orthogonal family")]
    DeltaSymplectic,
    #[error("n must be positive")]
    EmptyMetric,
    #[error("unknown index label {0}")]
    UnknownLabel(i64),
}

/// Invariant bilinear form `ε_ab` (and its inverse `ε^ab`) in a concrete
/// basis. Tensor code addresses indices internally as `0..n`; `labels`
/// carries the external names in the same order.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    kind: AlgebraKind,
    n: usize,
    basis: Basis,
    eps_lower: ScalarMatrix,
    eps_upper: ScalarMatrix,
    labels: Vec<i64>,
    partner: Vec<usize>,
}

impl Metric {
    pub fn new(kind: AlgebraKind, n: usize, basis: Basis) -> Result<Metric, AlgebraError> {
        make_metric(kind, n, basis)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn epsilon(&self) -> i64 {
        self.kind.epsilon()
    }

    pub fn eps(&self) -> Scalar {
        self.kind.eps()
    }

    /// `ε_ab`.
    pub fn lower(&self, a: usize, b: usize) -> &Scalar {
        self.eps_lower.get(a, b)
    }

    /// `ε^ab`.
    pub fn upper(&self, a: usize, b: usize) -> &Scalar {
        self.eps_upper.get(a, b)
    }

    pub fn eps_lower(&self) -> &ScalarMatrix {
        &self.eps_lower
    }

    pub fn eps_upper(&self) -> &ScalarMatrix {
        &self.eps_upper
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn label(&self, idx: usize) -> i64 {
        self.labels[idx]
    }

    pub fn index_of(&self, label: i64) -> Result<usize, AlgebraError> {
        self.labels.iter().position(|&l| l == label).ok_or(AlgebraError::UnknownLabel(label))
    }

    /// The unique `b` with `ε_ab ≠ 0` (both bases are monomial).
    pub fn partner(&self, a: usize) -> usize {
        self.partner[a]
    }

    /// `β = n/2 − ε`.
    pub fn beta(&self) -> Scalar {
        beta(self)
    }
}

pub fn make_metric(kind: AlgebraKind, n: usize, basis: Basis) -> Result<Metric, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::EmptyMetric);
    }
    if !kind.is_orthogonal() {
        if basis == Basis::Delta {
            return Err(AlgebraError::DeltaSymplectic);
        }
        if n % 2 == 1 {
            return Err(AlgebraError::OddSymplectic(n));
        }
    }
    let (labels, upper): (Vec<i64>, ScalarMatrix) = match basis {
        Basis::Delta => ((1..=n as i64).collect(), ScalarMatrix::identity(n)),
        Basis::Split => {
            let m = (n / 2) as i64;
            let mut labels: Vec<i64> = (-m..=-1).collect();
            if n % 2 == 1 {
                labels.push(0);
            }
            labels.extend(1..=m);
            let idx = |l: i64| labels.iter().position(|&x| x == l).expect("label");
            let mut up = ScalarMatrix::zeros(n, n);
            for &a in &labels {
                let val = if kind.is_orthogonal() { 1 } else { a.signum() };
                up.set(idx(a), idx(-a), Scalar::from_int(val));
            }
            (labels, up)
        }
    };
    let lower = upper.inverse().expect("canonical metrics are nondegenerate");
    let partner = (0..n)
        .map(|a| (0..n).find(|&b| !lower.get(a, b).is_zero()).expect("nondegenerate"))
        .collect();
    Ok(Metric { kind, n, basis, eps_lower: lower, eps_upper: upper, labels, partner })
}

pub fn beta(metric: &Metric) -> Scalar {
    &Scalar::frac(metric.n as i64, 2) - &metric.eps()
}
