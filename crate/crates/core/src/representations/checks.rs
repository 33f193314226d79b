//! Lie relations, Casimirs, characteristic identities and the three-index
//! anticommutator condition, evaluated exactly on a representation.

use rayon::prelude::*;
use serde::Serialize;

use super::Representation;
use crate::exact_core::{Scalar, ScalarMatrix};
use crate::residual::Residual;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieReport {
    pub relations: Residual,
    pub antisymmetry: Residual,
}

impl LieReport {
    pub fn is_zero(&self) -> bool {
        self.relations.is_zero() && self.antisymmetry.is_zero()
    }
}

fn lowered(rep: &Representation) -> Vec<ScalarMatrix> {
    let n = rep.n();
    (0..n * n).into_par_iter().map(|k| rep.lower(k / n, k % n)).collect()
}

/// Columns of the `n·dim` block space whose rep component lies in `states`.
fn block_cols(n: usize, dim: usize, states: &[usize]) -> Vec<usize> {
    (0..n).flat_map(|a| states.iter().map(move |&s| a * dim + s)).collect()
}

/// `[G_ab, G_cd] − (ε_cb G_ad + ε_db G_ca + ε_ca G_db + ε_da G_bc)` and
/// `G_ab + ε G_ba` over all index tuples.
pub fn check_lie_relations(rep: &Representation) -> LieReport {
    let n = rep.n();
    let m = &rep.metric;
    let eps = m.eps();
    let g = lowered(rep);
    let gl = |a: usize, b: usize| &g[a * n + b];
    let cols2 = rep.exact_states(2);
    let cols1 = rep.exact_states(1);

    let relations = Residual::merged(
        (0..n * n)
            .into_par_iter()
            .map(|ab| {
                let (a, b) = (ab / n, ab % n);
                let mut acc = Residual::zero();
                for c in 0..n {
                    for d in 0..n {
                        let mut r = gl(a, b).commutator(gl(c, d), 1).expect("shape");
                        for (coef, x) in [
                            (m.lower(c, b), gl(a, d)),
                            (m.lower(d, b), gl(c, a)),
                            (m.lower(c, a), gl(d, b)),
                            (m.lower(d, a), gl(b, c)),
                        ] {
                            if !coef.is_zero() {
                                r = r.sub(&x.scale(coef)).expect("shape");
                            }
                        }
                        acc.absorb(Residual::of_matrix(&r, Some(&cols2), &[a, b, c, d]));
                    }
                }
                acc
            })
            .collect::<Vec<_>>(),
    );
    let mut antisymmetry = Residual::zero();
    for a in 0..n {
        for b in 0..n {
            let r = gl(a, b).add(&gl(b, a).scale(&eps)).expect("shape");
            antisymmetry.absorb(Residual::of_matrix(&r, Some(&cols1), &[a, b]));
        }
    }
    LieReport { relations, antisymmetry }
}

/// The quadratic Casimir `Tr(G²) = Σ G^a_b G^b_a` as an operator.
pub fn casimir(rep: &Representation) -> ScalarMatrix {
    let n = rep.n();
    let terms: Vec<ScalarMatrix> = (0..n * n)
        .into_par_iter()
        .map(|k| rep.gen(k / n, k % n).mul(rep.gen(k % n, k / n)).expect("shape"))
        .collect();
    let mut out = ScalarMatrix::zeros(rep.dim, rep.dim);
    for t in &terms {
        out.add_assign(t).expect("shape");
    }
    out
}

/// The Casimir eigenvalue when `Tr(G²)` is a multiple of the identity on the
/// exact states.
pub fn casimir_scalar(rep: &Representation) -> Option<Scalar> {
    let c = casimir(rep);
    let states = rep.exact_states(2);
    let first = *states.first()?;
    let s = c.get(first, first).clone();
    let shifted = c.sub(&ScalarMatrix::identity(rep.dim).scale(&s)).expect("shape");
    Residual::of_matrix(&shifted, Some(&states), &[]).is_zero().then_some(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CharacteristicKind {
    Quadratic,
    Cubic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacteristicReport {
    pub kind: CharacteristicKind,
    pub residual: Residual,
    /// Quadratic only: `[G^a_c, G^c_b]₊ − (2/n) Tr(G²) δ^a_b`.
    pub anticommutator: Option<Residual>,
}

impl CharacteristicReport {
    pub fn is_zero(&self) -> bool {
        self.residual.is_zero() && self.anticommutator.as_ref().map_or(true, Residual::is_zero)
    }
}

fn id_kron(n: usize, op: &ScalarMatrix) -> ScalarMatrix {
    ScalarMatrix::identity(n).kron(op)
}

fn add_scaled(acc: &mut ScalarMatrix, m: &ScalarMatrix, c: Scalar) {
    if !c.is_zero() {
        acc.add_assign(&m.scale(&c)).expect("shape");
    }
}

/// Quadratic: `G² − βG − (1/n) Tr(G²)`; cubic:
/// `G³ + (ε−n)G² + (εn−2)G + ½ Tr(G²)(I − εG)`, both on the block matrix.
pub fn check_characteristic(rep: &Representation, kind: CharacteristicKind) -> CharacteristicReport {
    let n = rep.n();
    let nn = Scalar::from_int(n as i64);
    let eps = rep.metric.eps();
    let g = rep.block_matrix();
    let g2 = g.mul(&g).expect("shape");
    let c2 = id_kron(n, &casimir(rep));
    let big = n * rep.dim;
    match kind {
        CharacteristicKind::Quadratic => {
            let mut r = g2.clone();
            add_scaled(&mut r, &g, -rep.metric.beta());
            add_scaled(&mut r, &c2, -(Scalar::one() / nn.clone()));
            let cols = block_cols(n, rep.dim, &rep.exact_states(2));
            let residual = Residual::of_matrix(&r, Some(&cols), &[]);

            let mut anti = ScalarMatrix::zeros(big, big);
            for a in 0..n {
                for b in 0..n {
                    let mut blk = ScalarMatrix::zeros(rep.dim, rep.dim);
                    for c in 0..n {
                        blk.add_assign(&rep.gen(a, c).commutator(rep.gen(c, b), -1).expect("shape")).expect("shape");
                    }
                    for i in 0..rep.dim {
                        for j in 0..rep.dim {
                            anti.set(a * rep.dim + i, b * rep.dim + j, blk.get(i, j).clone());
                        }
                    }
                }
            }
            add_scaled(&mut anti, &c2, -(Scalar::from_int(2) / nn));
            let anticommutator = Some(Residual::of_matrix(&anti, Some(&cols), &[]));
            CharacteristicReport { kind, residual, anticommutator }
        }
        CharacteristicKind::Cubic => {
            let g3 = g2.mul(&g).expect("shape");
            let mut r = g3;
            add_scaled(&mut r, &g2, &eps - &nn);
            add_scaled(&mut r, &g, &(&eps * &nn) - &Scalar::from_int(2));
            let half = Scalar::frac(1, 2);
            let ieg = ScalarMatrix::identity(big).sub(&g.scale(&eps)).expect("shape");
            add_scaled(&mut r, &c2.mul(&ieg).expect("shape"), half);
            let cols = block_cols(n, rep.dim, &rep.exact_states(3));
            CharacteristicReport { kind, residual: Residual::of_matrix(&r, Some(&cols), &[]), anticommutator: None }
        }
    }
}

/// `G³ + (ε−n)G² + (εn−2)G + (m₂/2)(I − εG)` with a prescribed scalar `m₂`.
pub fn check_cubic_with_m2(rep: &Representation, m2: &Scalar) -> Residual {
    let n = rep.n();
    let nn = Scalar::from_int(n as i64);
    let eps = rep.metric.eps();
    let g = rep.block_matrix();
    let g2 = g.mul(&g).expect("shape");
    let mut r = g2.mul(&g).expect("shape");
    add_scaled(&mut r, &g2, &eps - &nn);
    add_scaled(&mut r, &g, &(&eps * &nn) - &Scalar::from_int(2));
    let half_m2 = m2 * &Scalar::frac(1, 2);
    let big = n * rep.dim;
    add_scaled(&mut r, &ScalarMatrix::identity(big), half_m2.clone());
    add_scaled(&mut r, &g, -(&half_m2 * &eps));
    let cols = block_cols(n, rep.dim, &rep.exact_states(3));
    Residual::of_matrix(&r, Some(&cols), &[])
}

/// `(G + εm)(G − εm − n + 2ε)(G − ε)`.
pub fn check_cubic_factorized(rep: &Representation, m: i64) -> Residual {
    let n = rep.n() as i64;
    let e = rep.metric.epsilon();
    let g = rep.block_matrix();
    let big = g.rows();
    let shift = |s: i64| g.add(&ScalarMatrix::identity(big).scale(&Scalar::from_int(s))).expect("shape");
    let r = shift(e * m)
        .mul(&shift(-e * m - n + 2 * e))
        .and_then(|x| x.mul(&shift(-e)))
        .expect("shape");
    let cols = block_cols(rep.n(), rep.dim, &rep.exact_states(3));
    Residual::of_matrix(&r, Some(&cols), &[])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefR5Report {
    /// `Σ_σ (−ε)^{p(σ)} [G_{σa σe}, G_{σf b}]₊` over permutations of `(a, e, f)`.
    pub symmetrized: Residual,
    /// The rewritten form
    /// `G_{a2a1}G_{c1c2} + G_{a1c1}G_{a2c2} + G_{c1a2}G_{a1c2}
    ///  − ε_{c2a1}G_{c1a2} − ε_{c2a2}G_{a1c1} − ε_{c2c1}G_{a2a1}`.
    pub cyclic: Residual,
}

impl DefR5Report {
    pub fn is_zero(&self) -> bool {
        self.symmetrized.is_zero() && self.cyclic.is_zero()
    }
}

const PERMS3: [([usize; 3], bool); 6] = [
    ([0, 1, 2], false),
    ([1, 2, 0], false),
    ([2, 0, 1], false),
    ([1, 0, 2], true),
    ([0, 2, 1], true),
    ([2, 1, 0], true),
];

pub fn check_defr5(rep: &Representation) -> DefR5Report {
    let n = rep.n();
    let m = &rep.metric;
    let eps = m.eps();
    let odd_weight = -&eps;
    let g = lowered(rep);
    let gl = |a: usize, b: usize| &g[a * n + b];
    let cols = rep.exact_states(2);
    let dim = rep.dim;

    let (symmetrized, cyclic): (Vec<Residual>, Vec<Residual>) = (0..n * n)
        .into_par_iter()
        .map(|ae| {
            let (a, e) = (ae / n, ae % n);
            let mut sym = Residual::zero();
            let mut cyc = Residual::zero();
            for f in 0..n {
                for b in 0..n {
                    let idx = [a, e, f];
                    let mut s = ScalarMatrix::zeros(dim, dim);
                    for (p, odd) in PERMS3 {
                        let t = gl(idx[p[0]], idx[p[1]]).commutator(gl(idx[p[2]], b), -1).expect("shape");
                        if odd {
                            add_scaled(&mut s, &t, odd_weight.clone());
                        } else {
                            s.add_assign(&t).expect("shape");
                        }
                    }
                    sym.absorb(Residual::of_matrix(&s, Some(&cols), &[a, e, f, b]));

                    // cyclic form with (a1, a2, c1, c2) = (a, e, f, b)
                    let (a1, a2, c1, c2) = (a, e, f, b);
                    let mut c = gl(a2, a1).mul(gl(c1, c2)).expect("shape");
                    c.add_assign(&gl(a1, c1).mul(gl(a2, c2)).expect("shape")).expect("shape");
                    c.add_assign(&gl(c1, a2).mul(gl(a1, c2)).expect("shape")).expect("shape");
                    add_scaled(&mut c, gl(c1, a2), -m.lower(c2, a1));
                    add_scaled(&mut c, gl(a1, c1), -m.lower(c2, a2));
                    add_scaled(&mut c, gl(a2, a1), -m.lower(c2, c1));
                    cyc.absorb(Residual::of_matrix(&c, Some(&cols), &[a1, a2, c1, c2]));
                }
            }
            (sym, cyc)
        })
        .unzip();
    DefR5Report { symmetrized: Residual::merged(symmetrized), cyclic: Residual::merged(cyclic) }
}
