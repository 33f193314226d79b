//! Fermionic (Clifford) and bosonic (metaplectic) oscillators in the split
//! basis, and the spinor representation built from them.

use std::collections::HashMap;

use serde::Serialize;

use super::{RepError, Representation, Truncation};
use crate::algebra::{Basis, Metric};
use crate::exact_core::{Scalar, ScalarMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OscKind {
    Fermionic,
    Bosonic,
}

/// Oscillators `c^a` with `c^a c^b + ε c^b c^a = ε^{ab}`.
///
/// Fermionic sets use Jordan–Wigner strings over the modes `1..m`; for odd
/// `n` an auxiliary mode `g` carries `c^0 = g + ½ g†`, which squares to `½`
/// and anticommutes with every other generator. Bosonic sets live on the
/// occupation-number states of total occupation `≤ cutoff`, ordered by total
/// occupation and then lexicographically, with `b|k⟩ = k|k−1⟩` and
/// `b†|k⟩ = |k+1⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorSet {
    pub metric: Metric,
    pub kind: OscKind,
    pub cutoff: Option<usize>,
    pub dim: usize,
    /// `c^a` indexed by internal metric index.
    pub c: Vec<ScalarMatrix>,
    /// Total occupation of every basis state.
    pub occupation: Vec<usize>,
}

pub fn oscillators(metric: &Metric, kind: OscKind, cutoff: usize) -> Result<OscillatorSet, RepError> {
    if metric.basis() != Basis::Split {
        return Err(RepError::NeedsSplitBasis);
    }
    let expected = if metric.kind().is_orthogonal() { OscKind::Fermionic } else { OscKind::Bosonic };
    if kind != expected {
        return Err(RepError::KindMismatch);
    }
    match kind {
        OscKind::Fermionic => Ok(fermionic(metric)),
        OscKind::Bosonic => {
            if cutoff < 1 {
                return Err(RepError::BadCutoff);
            }
            Ok(bosonic(metric, cutoff))
        }
    }
}

fn fermionic(metric: &Metric) -> OscillatorSet {
    let n = metric.n();
    let m = n / 2;
    let modes = m + n % 2;
    let dim = 1usize << modes;
    let jw = |mode: usize, create: bool| {
        let mut op = ScalarMatrix::zeros(dim, dim);
        for s in 0..dim {
            let occupied = s >> mode & 1 == 1;
            if occupied == create {
                continue;
            }
            let sign = if (s & ((1 << mode) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            op.set(s ^ (1 << mode), s, Scalar::from_int(sign));
        }
        op
    };
    let mut c = vec![ScalarMatrix::zeros(dim, dim); n];
    for j in 1..=m {
        c[metric.index_of(j as i64).expect("label")] = jw(j - 1, false);
        c[metric.index_of(-(j as i64)).expect("label")] = jw(j - 1, true);
    }
    if n % 2 == 1 {
        let g = jw(m, false);
        let gd = jw(m, true);
        c[metric.index_of(0).expect("label")] = g.add(&gd.scale(&Scalar::frac(1, 2))).expect("shape");
    }
    let occupation = (0..dim).map(|s| s.count_ones() as usize).collect();
    OscillatorSet { metric: metric.clone(), kind: OscKind::Fermionic, cutoff: None, dim, c, occupation }
}

fn boson_states(m: usize, cutoff: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, left: usize, remaining: usize, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for k in (0..=remaining).rev() {
            prefix.push(k);
            rec(prefix, left - 1, remaining - k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=cutoff {
        rec(&mut Vec::new(), m, total, &mut out);
    }
    out
}

fn bosonic(metric: &Metric, cutoff: usize) -> OscillatorSet {
    let n = metric.n();
    let m = n / 2;
    let states = boson_states(m, cutoff);
    let dim = states.len();
    let index: HashMap<&[usize], usize> = states.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let mut c = vec![ScalarMatrix::zeros(dim, dim); n];
    for j in 1..=m {
        let mut ann = ScalarMatrix::zeros(dim, dim);
        let mut cre = ScalarMatrix::zeros(dim, dim);
        for (i, s) in states.iter().enumerate() {
            let mut t = s.clone();
            if s[j - 1] > 0 {
                t[j - 1] -= 1;
                ann.set(index[t.as_slice()], i, Scalar::from_int(s[j - 1] as i64));
                t[j - 1] += 1;
            }
            t[j - 1] += 1;
            if let Some(&k) = index.get(t.as_slice()) {
                cre.set(k, i, Scalar::one());
            }
        }
        c[metric.index_of(j as i64).expect("label")] = ann;
        c[metric.index_of(-(j as i64)).expect("label")] = cre;
    }
    let occupation = states.iter().map(|s| s.iter().sum()).collect();
    OscillatorSet { metric: metric.clone(), kind: OscKind::Bosonic, cutoff: Some(cutoff), dim, c, occupation }
}

impl OscillatorSet {
    pub fn n(&self) -> usize {
        self.metric.n()
    }

    /// `c_a = ε_ab c^b`.
    pub fn lower(&self, a: usize) -> ScalarMatrix {
        let p = self.metric.partner(a);
        self.c[p].scale(self.metric.lower(a, p))
    }

    /// The same oscillators with a larger cutoff (no-op for fermions).
    pub fn extended(&self, extra: usize) -> OscillatorSet {
        match self.cutoff {
            Some(k) if extra > 0 => bosonic(&self.metric, k + extra),
            _ => self.clone(),
        }
    }

    /// Product `c^{a_1} ⋯ c^{a_k}` compressed to this set's space: computed
    /// on a space large enough that no intermediate state is lost, then
    /// restricted to the states of occupation `≤ cutoff`.
    pub fn compressed_word(&self, word: &[usize]) -> ScalarMatrix {
        if word.is_empty() {
            return ScalarMatrix::identity(self.dim);
        }
        let big = self.extended(word.len() - 1);
        let mut acc = big.c[word[word.len() - 1]].clone();
        for &a in word[..word.len() - 1].iter().rev() {
            acc = big.c[a].mul(&acc).expect("square");
        }
        if big.dim == self.dim {
            acc
        } else {
            let keep: Vec<usize> = (0..self.dim).collect();
            acc.select(&keep, &keep)
        }
    }

    /// States with total occupation `≤ bound` (all states for fermions).
    pub fn states_up_to(&self, bound: usize) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.occupation[i] <= bound).collect()
    }
}

/// `F^a_b = c^a c_b − (ε/2) δ^a_b`.
pub fn spinor_rep(osc: &OscillatorSet) -> Representation {
    let metric = &osc.metric;
    let half_eps = &metric.eps() * &Scalar::frac(1, 2);
    let label = match osc.kind {
        OscKind::Fermionic => "spinor",
        OscKind::Bosonic => "metaplectic",
    };
    let rep = Representation::new(metric.clone(), label, osc.dim, |a, b| {
        let p = metric.partner(b);
        let mut f = osc.compressed_word(&[a, p]).scale(metric.lower(b, p));
        if a == b {
            for i in 0..osc.dim {
                *f.get_mut(i, i) -= &half_eps;
            }
        }
        f
    });
    match osc.cutoff {
        Some(cutoff) => rep.with_truncation(Truncation { cutoff, step: 2, grading: osc.occupation.clone() }),
        None => rep,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_metric, AlgebraKind};

    fn anticomm_residual(osc: &OscillatorSet, band: usize) -> bool {
        let n = osc.n();
        let eps = osc.metric.eps();
        let cols = osc.states_up_to(band);
        for a in 0..n {
            for b in 0..n {
                let ab = osc.c[a].mul(&osc.c[b]).unwrap();
                let ba = osc.c[b].mul(&osc.c[a]).unwrap();
                let lhs = ab.add(&ba.scale(&eps)).unwrap();
                let rhs = ScalarMatrix::identity(osc.dim).scale(osc.metric.upper(a, b));
                let d = lhs.sub(&rhs).unwrap();
                for r in 0..osc.dim {
                    for &c in &cols {
                        if !d.get(r, c).is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn clifford_relations() {
        for n in 1..=6 {
            let m = make_metric(AlgebraKind::SO, n, Basis::Split).unwrap();
            let osc = oscillators(&m, OscKind::Fermionic, 0).unwrap();
            assert!(anticomm_residual(&osc, usize::MAX), "n = {n}");
        }
        let m = make_metric(AlgebraKind::SO, 2, Basis::Split).unwrap();
        assert_eq!(oscillators(&m, OscKind::Fermionic, 0).unwrap().dim, 2);
    }

    #[test]
    fn heisenberg_band() {
        let m = make_metric(AlgebraKind::SP, 2, Basis::Split).unwrap();
        let osc = oscillators(&m, OscKind::Bosonic, 5).unwrap();
        assert_eq!(osc.dim, 6);
        assert!(anticomm_residual(&osc, 4));
        assert!(!anticomm_residual(&osc, 5));
    }

    #[test]
    fn compressed_word_matches_exact_entries() {
        // b b† on |k⟩ is (k+1)|k⟩ even at the top of the space
        let m = make_metric(AlgebraKind::SP, 2, Basis::Split).unwrap();
        let osc = oscillators(&m, OscKind::Bosonic, 3).unwrap();
        let (ann, cre) = (m.index_of(1).unwrap(), m.index_of(-1).unwrap());
        let w = osc.compressed_word(&[ann, cre]);
        for k in 0..=3 {
            assert_eq!(*w.get(k, k), Scalar::from_int(k as i64 + 1));
        }
    }

    #[test]
    fn rejects_mismatched_inputs() {
        let d = make_metric(AlgebraKind::SO, 4, Basis::Delta).unwrap();
        assert_eq!(oscillators(&d, OscKind::Fermionic, 1), Err(RepError::NeedsSplitBasis));
        let sp = make_metric(AlgebraKind::SP, 2, Basis::Split).unwrap();
        assert_eq!(oscillators(&sp, OscKind::Bosonic, 0), Err(RepError::BadCutoff));
    }
}
