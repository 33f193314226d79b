//! Summaries of identity residuals: exact zero, or a witness of where it fails.

use serde::Serialize;

use crate::exact_core::{Matrix, Ring, Poly2, Scalar};

/// Anything that can report how far it is from zero.
pub trait Weighted: Ring {
    fn weight(&self) -> usize;
}

impl Weighted for Scalar {
    fn weight(&self) -> usize {
        usize::from(!self.is_zero())
    }
}

impl Weighted for Poly2 {
    fn weight(&self) -> usize {
        self.num_terms()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct Residual {
    /// Number of nonzero entries that were inspected.
    pub nonzero_entries: usize,
    /// Number of nonzero scalar coefficients among those entries.
    pub nonzero_terms: usize,
    /// First failing location, in the caller's index convention.
    pub witness: Option<Vec<usize>>,
}

impl Residual {
    pub fn zero() -> Self {
        Residual::default()
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_entries == 0
    }

    /// Inspects `m` on the given columns (all columns when `cols` is `None`).
    /// The witness is `prefix ++ [row, col]`.
    pub fn of_matrix<T: Weighted>(m: &Matrix<T>, cols: Option<&[usize]>, prefix: &[usize]) -> Self {
        let mut out = Residual::zero();
        let all: Vec<usize>;
        let cols = match cols {
            Some(c) => c,
            None => {
                all = (0..m.cols()).collect();
                &all
            }
        };
        for r in 0..m.rows() {
            for &c in cols {
                let w = m.get(r, c).weight();
                if w > 0 {
                    out.nonzero_entries += 1;
                    out.nonzero_terms += w;
                    if out.witness.is_none() {
                        let mut wt = prefix.to_vec();
                        wt.extend([r, c]);
                        out.witness = Some(wt);
                    }
                }
            }
        }
        out
    }

    pub fn of_scalar(x: &Scalar, witness: &[usize]) -> Self {
        if x.is_zero() {
            Residual::zero()
        } else {
            Residual { nonzero_entries: 1, nonzero_terms: 1, witness: Some(witness.to_vec()) }
        }
    }

    /// Accumulates another residual; the first witness wins.
    pub fn absorb(&mut self, other: Residual) {
        self.nonzero_entries += other.nonzero_entries;
        self.nonzero_terms += other.nonzero_terms;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }

    pub fn merged(parts: impl IntoIterator<Item = Residual>) -> Self {
        let mut out = Residual::zero();
        for p in parts {
            out.absorb(p);
        }
        out
    }
}
