//! The operators `I`, `P`, `K` on `V ⊗ V` and the fundamental R-matrix
//! `R(u) = u(u+β)I + (u+β)P − εuK`.

use crate::algebra::Metric;
use crate::exact_core::{embed, ExactError, Poly2, PolyMatrix, Scalar, ScalarMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct Ipk {
    pub i_op: ScalarMatrix,
    pub p_op: ScalarMatrix,
    pub k_op: ScalarMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalR {
    pub metric: Metric,
    pub matrix: PolyMatrix,
}

impl FundamentalR {
    pub fn n(&self) -> usize {
        self.metric.n()
    }

    /// `R(u)` with `u` replaced by the polynomial `arg`.
    pub fn at(&self, arg: &Poly2) -> PolyMatrix {
        self.matrix.substitute(arg, &Poly2::v())
    }
}

pub fn build_ipk(metric: &Metric) -> Ipk {
    let n = metric.n();
    let nn = n * n;
    let i_op = ScalarMatrix::identity(nn);
    let p_op = ScalarMatrix::from_fn(nn, nn, |r, c| {
        let (a1, a2) = (r / n, r % n);
        let (b1, b2) = (c / n, c % n);
        if a1 == b2 && a2 == b1 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let k_op = ScalarMatrix::from_fn(nn, nn, |r, c| {
        metric.upper(r / n, r % n) * metric.lower(c / n, c % n)
    });
    Ipk { i_op, p_op, k_op }
}

/// Assembles `x·I + y·P + z·K` with polynomial coefficients.
pub fn ipk_combination(ipk: &Ipk, x: &Poly2, y: &Poly2, z: &Poly2) -> PolyMatrix {
    let nn = ipk.i_op.rows();
    PolyMatrix::from_fn(nn, nn, |r, c| {
        let mut e = Poly2::zero();
        for (op, coeff) in [(&ipk.i_op, x), (&ipk.p_op, y), (&ipk.k_op, z)] {
            let s = op.get(r, c);
            if !s.is_zero() {
                e.add_assign_ref(&coeff.scale(s));
            }
        }
        e
    })
}

fn r_with_beta(metric: &Metric, beta: &Scalar) -> FundamentalR {
    let ipk = build_ipk(metric);
    let u = Poly2::u();
    let b = Poly2::constant(beta.clone());
    let ub = &u + &b;
    let x = &u * &ub;
    let z = u.scale(&-metric.eps());
    FundamentalR { metric: metric.clone(), matrix: ipk_combination(&ipk, &x, &ub, &z) }
}

pub fn fundamental_r(metric: &Metric) -> FundamentalR {
    r_with_beta(metric, &metric.beta())
}

/// Same formula with an arbitrary `β`; used as a negative control.
pub fn fundamental_r_with_beta(metric: &Metric, beta: &Scalar) -> FundamentalR {
    r_with_beta(metric, beta)
}

/// Yang's `gl(n)` solution `uI + P`.
pub fn yang_r(metric: &Metric) -> FundamentalR {
    let ipk = build_ipk(metric);
    let matrix = ipk_combination(&ipk, &Poly2::u(), &Poly2::one(), &Poly2::zero());
    FundamentalR { metric: metric.clone(), matrix }
}

/// `R12(u) R13(u+v) R23(v) − R23(v) R13(u+v) R12(u)` on `V⊗V⊗V`.
pub fn check_ybe(r: &FundamentalR) -> Result<PolyMatrix, ExactError> {
    let n = r.n();
    let dims = [n, n, n];
    let u = Poly2::u();
    let v = Poly2::v();
    let ru = r.matrix.clone();
    let ruv = r.matrix.substitute(&(&u + &v), &v);
    let rv = r.matrix.substitute(&v, &v);
    let r12 = embed(&ru, &dims, &[0, 1])?;
    let r13 = embed(&ruv, &dims, &[0, 2])?;
    let r23 = embed(&rv, &dims, &[1, 2])?;
    let lhs = r12.mul(&r13)?.mul(&r23)?;
    let rhs = r23.mul(&r13)?.mul(&r12)?;
    lhs.sub(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_metric, AlgebraKind, Basis};

    #[test]
    fn ipk_identities() {
        for (k, n, b) in [
            (AlgebraKind::SO, 3, Basis::Delta),
            (AlgebraKind::SO, 4, Basis::Split),
            (AlgebraKind::SP, 4, Basis::Split),
        ] {
            let m = make_metric(k, n, b).unwrap();
            let ipk = build_ipk(&m);
            let eps = m.eps();
            assert_eq!(ipk.p_op.mul(&ipk.p_op).unwrap(), ipk.i_op);
            let kk = ipk.k_op.mul(&ipk.k_op).unwrap();
            assert_eq!(kk, ipk.k_op.scale(&(&eps * &Scalar::from_int(n as i64))));
            let pk = ipk.p_op.mul(&ipk.k_op).unwrap();
            assert_eq!(pk, ipk.k_op.scale(&eps));
            assert_eq!(ipk.k_op.mul(&ipk.p_op).unwrap(), ipk.k_op.scale(&eps));
        }
    }

    #[test]
    fn r_at_zero_is_beta_p() {
        let m = make_metric(AlgebraKind::SO, 3, Basis::Delta).unwrap();
        let r = fundamental_r(&m);
        let ipk = build_ipk(&m);
        let z = Scalar::zero();
        assert_eq!(r.matrix.eval(&z, &z), ipk.p_op.scale(&m.beta()));
        // (11,11) entry: u² + u/2 + 1/2 (K contributes −u)
        let e = r.matrix.get(0, 0);
        assert_eq!(e.coeff(2, 0), Scalar::one());
        assert_eq!(e.coeff(1, 0), Scalar::frac(1, 2));
        assert_eq!(e.coeff(0, 0), Scalar::frac(1, 2));
    }

    #[test]
    fn small_ybe() {
        let m = make_metric(AlgebraKind::SO, 2, Basis::Delta).unwrap();
        assert!(check_ybe(&fundamental_r(&m)).unwrap().is_zero());
        assert!(check_ybe(&yang_r(&m)).unwrap().is_zero());
        let bad = fundamental_r_with_beta(&m, &Scalar::from_int(1));
        assert!(!check_ybe(&bad).unwrap().is_zero());
    }
}
