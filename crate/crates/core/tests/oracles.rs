//! Hand-built oracles for the derived values: each check recomputes a
//! quantity by a route that does not go through the library function under
//! test, or runs a negative control.

use ylab::algebra::{make_metric, AlgebraKind, Basis, Metric};
use ylab::exact_core::{embed, Poly2, Scalar, ScalarMatrix};
use ylab::fundamental_r::{build_ipk, check_ybe, fundamental_r, fundamental_r_with_beta};
use ylab::representations::{
    check_characteristic, check_defr5, check_lie_relations, fundamental_rep, js_rep, oscillators, spinor_rep,
    CharacteristicKind, OscKind, Representation,
};
use ylab::spinorial_r::{
    assemble_spinorial_r, assemble_with_coefficients, check_spinorial_rll, rll_coefficients, series_symbol,
    spinorial_l, symbol_to_operator,
};
use ylab::yangian_l::{
    check_rll, check_yangian_coefficients, fundamental_quadratic_l, linear_l, linear_obstruction, ljs_constraints,
    quadratic_evaluation_l, yangian_coefficient_residual,
};

fn metric(kind: AlgebraKind, n: usize, basis: Basis) -> Metric {
    make_metric(kind, n, basis).unwrap()
}

#[test]
fn r_matrix_entries_from_the_index_formula() {
    for m in [metric(AlgebraKind::SO, 3, Basis::Delta), metric(AlgebraKind::SP, 4, Basis::Split)] {
        let n = m.n();
        let beta = m.beta();
        let eps = m.eps();
        let r = fundamental_r(&m);
        let u = Poly2::u();
        let ub = &u + &Poly2::constant(beta.clone());
        for a1 in 0..n {
            for a2 in 0..n {
                for b1 in 0..n {
                    for b2 in 0..n {
                        let mut e = Poly2::zero();
                        if a1 == b1 && a2 == b2 {
                            e.add_assign_ref(&(&u * &ub));
                        }
                        if a1 == b2 && a2 == b1 {
                            e.add_assign_ref(&ub);
                        }
                        let k = &(&eps * m.upper(a1, a2)) * m.lower(b1, b2);
                        e.add_assign_ref(&u.scale(&-k));
                        assert_eq!(r.matrix.get(a1 * n + a2, b1 * n + b2), &e);
                    }
                }
            }
        }
    }
}

#[test]
fn symplectic_k_term_has_coefficient_plus_u() {
    let m = metric(AlgebraKind::SP, 4, Basis::Split);
    let ipk = build_ipk(&m);
    let r = fundamental_r(&m);
    let (row, col) = (0..16)
        .flat_map(|r| (0..16).map(move |c| (r, c)))
        .find(|&(r, c)| r != c && !ipk.k_op.get(r, c).is_zero() && ipk.p_op.get(r, c).is_zero())
        .unwrap();
    let k = ipk.k_op.get(row, col).clone();
    assert_eq!(r.matrix.get(row, col), &Poly2::monomial(k, 1, 0));
}

#[test]
fn k_identities() {
    let m = metric(AlgebraKind::SO, 3, Basis::Split);
    let k = build_ipk(&m).k_op;
    assert_eq!(k.mul(&k).unwrap(), k.scale(&Scalar::from_int(3)));

    let m = metric(AlgebraKind::SP, 4, Basis::Split);
    let k = build_ipk(&m).k_op;
    let nn = ScalarMatrix::from_fn(4, 4, |i, j| Scalar::frac((i * 7 + j * 3) as i64 % 5 - 2, (j + 1) as i64));
    let n1 = nn.kron(&ScalarMatrix::identity(4));
    let lhs = k.mul(&n1).unwrap().mul(&k).unwrap();
    assert_eq!(lhs, k.scale(&(&m.eps() * &nn.trace())));
}

#[test]
fn ybe_negative_control() {
    let m = metric(AlgebraKind::SO, 3, Basis::Delta);
    let wrong = fundamental_r_with_beta(&m, &(&m.beta() + &Scalar::one()));
    assert!(!check_ybe(&wrong).unwrap().is_zero());
}

fn zoo() -> Vec<Representation> {
    let mut out = Vec::new();
    for n in 3..=5 {
        let m = metric(AlgebraKind::SO, n, Basis::Split);
        out.push(fundamental_rep(&m));
        out.push(spinor_rep(&oscillators(&m, OscKind::Fermionic, 0).unwrap()));
        out.push(js_rep(&m, 1).unwrap());
        out.push(js_rep(&m, 2).unwrap());
    }
    let sp4 = metric(AlgebraKind::SP, 4, Basis::Split);
    out.push(fundamental_rep(&sp4));
    out.push(js_rep(&sp4, 2).unwrap());
    let sp2 = metric(AlgebraKind::SP, 2, Basis::Split);
    out.push(spinor_rep(&oscillators(&sp2, OscKind::Bosonic, 6).unwrap()));
    out.push(fundamental_rep(&sp2).scaled(&Scalar::from_int(-1)));
    out
}

#[test]
fn linear_evaluation_iff_lie_and_quadratic() {
    let mut seen = [false; 2];
    for rep in zoo() {
        let rll = check_rll(&fundamental_r(&rep.metric), &linear_l(&rep)).unwrap().is_zero();
        let lie = check_lie_relations(&rep).is_zero();
        let quad = check_characteristic(&rep, CharacteristicKind::Quadratic).is_zero();
        assert_eq!(rll, lie && quad, "{} n={}", rep.label, rep.n());
        seen[usize::from(rll)] = true;
    }
    assert_eq!(seen, [true, true]);
}

#[test]
fn generators_are_traceless() {
    for rep in zoo().into_iter().filter(|r| r.label.starts_with("spinor") || r.label.starts_with("js")) {
        let sum = (0..rep.n()).fold(ScalarMatrix::zeros(rep.dim, rep.dim), |acc, a| acc.add(rep.gen(a, a)).unwrap());
        assert!(sum.is_zero(), "{}", rep.label);
    }
}

#[test]
fn yangian_coefficients_of_a_linear_evaluation() {
    let m = metric(AlgebraKind::SO, 4, Basis::Split);
    let spinor = spinor_rep(&oscillators(&m, OscKind::Fermionic, 0).unwrap());
    let js2 = js_rep(&m, 2).unwrap();
    for rep in [&spinor, &js2] {
        let g = rep.block_matrix();
        let zero = ScalarMatrix::zeros(g.rows(), g.rows());
        // j = 3 gives the Lie algebra relations, which hold for both
        for k in 0..=4 {
            let r = check_yangian_coefficients(&m, rep.dim, &g.neg(), &zero, 3, k).unwrap();
            assert_eq!(r.residual.is_zero(), k != 2 || rep.label != "js2", "{} k={k}", rep.label);
        }
    }
    // (j, k) = (2, 3) is the obstruction itself
    let g = js2.block_matrix();
    let zero = ScalarMatrix::zeros(g.rows(), g.rows());
    let r = yangian_coefficient_residual(&m, js2.dim, &g.neg(), &zero, 2, 3).unwrap();
    let obstruction = linear_obstruction(&js2).unwrap();
    assert!(!obstruction.is_zero());
    assert_eq!(r, obstruction);
    assert!(linear_obstruction(&spinor).unwrap().is_zero());
}

#[test]
fn yangian_coefficients_of_the_fundamental_quadratic_evaluation() {
    for m in [metric(AlgebraKind::SO, 3, Basis::Delta), metric(AlgebraKind::SP, 2, Basis::Split)] {
        let l = fundamental_quadratic_l(&m);
        let n = m.n();
        for j in 0..=8 {
            for k in 0..=8 - j {
                let r = check_yangian_coefficients(&m, n, &l.coeffs[1], &l.coeffs[0], j, k).unwrap();
                assert!(r.residual.is_zero(), "j={j} k={k}");
            }
        }
    }
}

#[test]
fn traceless_generators_give_the_central_commutator() {
    let m = metric(AlgebraKind::SO, 4, Basis::Split);
    let rep = js_rep(&m, 2).unwrap();
    let n = 4;
    let dims = [n, n, rep.dim];
    let ipk = build_ipk(&m);
    let pk = embed(&ipk.p_op.sub(&ipk.k_op.scale(&m.eps())).unwrap(), &dims, &[0, 1]).unwrap();
    let l1 = rep.block_matrix().neg();
    let a = embed(&l1, &dims, &[0, 2]).unwrap();
    let b = embed(&l1, &dims, &[1, 2]).unwrap();
    let lhs = a.commutator(&b, 1).unwrap();
    let rhs = pk.commutator(&b, 1).unwrap().neg();
    assert_eq!(lhs, rhs);
}

#[test]
fn defr5_controls() {
    let m = metric(AlgebraKind::SO, 4, Basis::Split);
    let flipped = fundamental_rep(&m).scaled(&Scalar::from_int(-1));
    assert!(!check_defr5(&flipped).is_zero());
    // the identity acts summand by summand, so direct sums keep it
    let mixed = js_rep(&m, 1).unwrap().direct_sum(&js_rep(&m, 2).unwrap()).unwrap();
    assert!(check_lie_relations(&mixed).is_zero());
    assert!(check_defr5(&mixed).is_zero());
    assert!(!check_defr5(&mixed.direct_sum(&flipped).unwrap()).is_zero());
}

#[test]
fn quadratic_evaluation_family() {
    let m = metric(AlgebraKind::SO, 4, Basis::Split);
    let r = fundamental_r(&m);
    let rep = js_rep(&m, 1).unwrap();
    // written with generators G the family needs M² with weight ½
    assert!(ljs_constraints(&r, &rep, &Scalar::one()).unwrap().inconsistent());
    assert!(ljs_constraints(&r, &rep.scaled(&Scalar::from_int(-1)), &Scalar::one()).unwrap().inconsistent());
    let half = ljs_constraints(&r, &rep.scaled(&Scalar::from_int(-1)), &Scalar::frac(1, 2)).unwrap();
    assert!(!half.inconsistent());
    // s = 0, σ = −β/2 and p = −m₂/8 with m₂ = 6
    assert!(half.satisfied_by(&Scalar::zero(), &Scalar::frac(-3, 4), &Scalar::frac(-1, 2)));
    assert!(!half.satisfied_by(&Scalar::zero(), &Scalar::frac(-3, 4), &Scalar::zero()));
    // shifting u by a moves along the family: s = 2a, σ = a − β/2
    let a = Scalar::frac(2, 5);
    let p = &(&a * &a) - &Scalar::frac(3, 4);
    assert!(half.satisfied_by(&(&a + &a), &p, &(&a - &Scalar::frac(1, 2))));
    assert!(check_rll(&r, &quadratic_evaluation_l(&rep)).unwrap().is_zero());
}

#[test]
fn spinorial_rll_negative_control() {
    let m = metric(AlgebraKind::SO, 4, Basis::Split);
    let osc = oscillators(&m, OscKind::Fermionic, 0).unwrap();
    let rep = fundamental_rep(&m);
    let (l, _) = spinorial_l(&osc, &rep).unwrap();
    let u = Scalar::one();
    let good = assemble_spinorial_r(&osc, &osc, &u, 4).unwrap();
    assert!(check_spinorial_rll(&good, &l, None).unwrap().is_zero());
    let mut r = rll_coefficients(&m, &u, 4).unwrap();
    r[2] = &r[2] + &Scalar::one();
    let bad = assemble_with_coefficients(&osc, &osc, &u, &r).unwrap();
    assert!(!check_spinorial_rll(&bad, &l, None).unwrap().is_zero());
}

#[test]
fn weyl_symbols_reproduce_the_matrix_series() {
    let m = metric(AlgebraKind::SP, 2, Basis::Split);
    let osc = oscillators(&m, OscKind::Bosonic, 6).unwrap();
    let u = Scalar::frac(1, 7);
    let r = rll_coefficients(&m, &u, 4).unwrap();
    let series = assemble_with_coefficients(&osc, &osc, &u, &r).unwrap();
    let op = symbol_to_operator(&osc, &series_symbol(&m, 1, &r)).unwrap();
    let keep = series.states_within(2);
    assert_eq!(op.select(&keep, &keep), series.matrix.select(&keep, &keep));
}
