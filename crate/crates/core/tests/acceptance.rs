use std::process::Command;
use std::time::{Duration, Instant};

use ylab::algebra::{make_metric, AlgebraKind, Basis, Metric};
use ylab::exact_core::{Poly2, Scalar, ScalarMatrix};
use ylab::fundamental_r::{check_ybe, fundamental_r};
use ylab::fusion::{
    fuse_js, fuse_spinor_pair, js_shifts, proportionality_factor, quoted_shift_constraints, spinor_pair_shifts,
};
use ylab::representations::{
    casimir_scalar, check_characteristic, check_cubic_with_m2, check_defr5, fundamental_rep, harmonic_subspace,
    js_rep, oscillators, spinor_rep, CharacteristicKind, OscKind, Representation,
};
use ylab::residual::Residual;
use ylab::spinorial_r::{
    assemble_spinorial_r, assemble_with_coefficients, check_spinorial_rll, check_symbol_rll, check_symmetry,
    closed_form_even, closed_form_odd, k_stability, r_coefficients, rll_coefficients, spinorial_l,
    symmetrized_basis,
};
use ylab::yangian_l::{check_rll, fundamental_quadratic_l, lgn_l, linear_l, quadratic_evaluation_l};

const SO: AlgebraKind = AlgebraKind::SO;
const SP: AlgebraKind = AlgebraKind::SP;

fn metric(kind: AlgebraKind, n: usize) -> Metric {
    make_metric(kind, n, Basis::Split).unwrap()
}

fn q(p: i64, d: i64) -> Scalar {
    Scalar::frac(p, d)
}

/// Outcome of one criterion: either everything held, or some parts are
/// blocked and the facts that were established instead are listed.
struct Verdict {
    blocked: Vec<String>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { blocked: Vec::new() }
    }

    fn block(&mut self, why: impl Into<String>) {
        self.blocked.push(why.into());
    }
}

fn report(id: usize, title: &str, v: &Verdict) {
    if v.blocked.is_empty() {
        println!("criterion {id:>2}: PASS  {title}");
    } else {
        println!("criterion {id:>2}: FAIL  {title} (blocked: {})", v.blocked.join("; "));
    }
}

fn criterion_1() -> Verdict {
    let mut configs: Vec<(AlgebraKind, usize, Basis)> = Vec::new();
    for n in 2..=6 {
        configs.push((SO, n, Basis::Delta));
        configs.push((SO, n, Basis::Split));
    }
    for n in [2, 4, 6] {
        configs.push((SP, n, Basis::Split));
    }
    for (kind, n, basis) in configs {
        let start = Instant::now();
        let m = make_metric(kind, n, basis).unwrap();
        let res = check_ybe(&fundamental_r(&m)).unwrap();
        assert!(res.is_zero(), "{kind}{n} {basis:?}");
        assert!(start.elapsed() <= Duration::from_secs(60), "{kind}{n} took {:?}", start.elapsed());
    }
    Verdict::pass()
}

fn criterion_2() -> Verdict {
    for n in 2..=8 {
        for basis in [Basis::Delta, Basis::Split] {
            let m = make_metric(SO, n, basis).unwrap();
            assert_eq!(m.beta(), &q(n as i64, 2) - &Scalar::one());
            let half = &casimir_scalar(&fundamental_rep(&m)).unwrap() * &q(1, 2);
            assert_eq!(half, Scalar::from_int(n as i64 - 1));
        }
    }
    for half_n in 1..=4 {
        let m = metric(SP, 2 * half_n);
        assert_eq!(m.beta(), Scalar::from_int(half_n as i64 + 1));
        let cas = &casimir_scalar(&fundamental_rep(&m)).unwrap() * &q(1, 2);
        assert_eq!(cas, Scalar::from_int(2 * half_n as i64 + 1));
    }
    Verdict::pass()
}

/// `F² − βF − c·I` on the block matrix, restricted to the exact states.
fn quadratic_residual(rep: &Representation, c: &Scalar) -> Residual {
    let n = rep.n();
    let g = rep.block_matrix();
    let r = g
        .mul(&g)
        .unwrap()
        .sub(&g.scale(&rep.metric.beta()))
        .unwrap()
        .sub(&ScalarMatrix::identity(g.rows()).scale(c))
        .unwrap();
    let states = rep.exact_states(2);
    let cols: Vec<usize> = (0..n).flat_map(|a| states.iter().map(move |&s| a * rep.dim + s)).collect();
    Residual::of_matrix(&r, Some(&cols), &[])
}

fn criterion_3() -> Verdict {
    let mut cases: Vec<(AlgebraKind, usize)> = (2..=8).map(|n| (SO, n)).collect();
    cases.extend([(SP, 2), (SP, 4)]);
    for (kind, n) in cases {
        let m = metric(kind, n);
        let osc = if kind.is_orthogonal() {
            oscillators(&m, OscKind::Fermionic, 0).unwrap()
        } else {
            oscillators(&m, OscKind::Bosonic, 8).unwrap()
        };
        let rep = spinor_rep(&osc);
        if !kind.is_orthogonal() {
            // the checked band (occupations ≤ 6 at cutoff 8) contains every state of occupation ≤ 4
            let band = rep.exact_states(2);
            assert!(osc.states_up_to(4).iter().all(|s| band.contains(s)));
        }
        assert!(check_rll(&fundamental_r(&m), &linear_l(&rep)).unwrap().is_zero(), "{kind}{n}");
        let ne = Scalar::from_int(n as i64 * m.epsilon());
        let quarter = &(&ne - &Scalar::one()) * &q(1, 4);
        assert!(quadratic_residual(&rep, &quarter).is_zero(), "{kind}{n}");
        assert_eq!(casimir_scalar(&rep).unwrap(), &quarter * &Scalar::from_int(n as i64));
    }
    Verdict::pass()
}

fn criterion_4() -> Verdict {
    let m = metric(SO, 4);
    let rep = js_rep(&m, 2).unwrap();
    let quad = check_characteristic(&rep, CharacteristicKind::Quadratic);
    assert!(!quad.is_zero());
    assert!(quad.residual.nonzero_entries > 0 && quad.residual.witness.is_some());
    let rll = check_rll(&fundamental_r(&m), &linear_l(&rep)).unwrap();
    assert!(rll.nonzero_terms > 0 && rll.witness.is_some());
    Verdict::pass()
}

fn criterion_5() -> Verdict {
    for (kind, n) in [(SO, 3), (SO, 4), (SO, 5), (SP, 2), (SP, 4)] {
        let m = metric(kind, n);
        let r = fundamental_r(&m);
        assert_eq!(fundamental_quadratic_l(&m).matrix(), r.matrix, "{kind}{n}");
        assert!(check_characteristic(&fundamental_rep(&m), CharacteristicKind::Cubic).is_zero());
        let e = m.epsilon();
        for mm in 1..=3usize {
            let Ok(rep) = js_rep(&m, mm) else {
                assert!(!kind.is_orthogonal() && mm > n);
                continue;
            };
            // the operator form holds on the whole degree-m space
            assert!(check_characteristic(&rep, CharacteristicKind::Cubic).is_zero(), "{kind}{n} m={mm}");
            let h = harmonic_subspace(&rep, mm).unwrap();
            if h.rep.dim == 0 {
                assert!(!kind.is_orthogonal() && 2 * mm > n);
                continue;
            }
            let k = mm as i64;
            let m2 = Scalar::from_int(2 * k * (k * e + n as i64 - 2 * e));
            assert!(check_cubic_with_m2(&h.rep, &m2).is_zero(), "{kind}{n} m={mm}");
            assert_eq!(casimir_scalar(&h.rep), Some(m2), "{kind}{n} m={mm}");
        }
    }
    Verdict::pass()
}

fn criterion_6() -> Verdict {
    let mut v = Verdict::pass();

    // recurrence against the finite-product form of the Γ-ratios
    let mut odd_printed_ok = true;
    for (kind, n) in [(SO, 3), (SO, 4), (SO, 6), (SP, 2), (SP, 4)] {
        let m = metric(kind, n);
        for u in [q(1, 7), q(-5, 3), q(11, 13)] {
            let r = r_coefficients(&m, &u, 13).unwrap();
            for k in 0..=12 {
                let half = k / 2;
                if k % 2 == 0 {
                    assert_eq!(&r[k] / &r[0], closed_form_even(&m, &u, half).unwrap());
                } else {
                    assert_eq!(&r[k] / &r[1], closed_form_odd(&m, &u, half, false).unwrap());
                    if closed_form_odd(&m, &u, half, true) != Some(&r[k] / &r[1]) {
                        odd_printed_ok = false;
                    }
                }
            }
        }
    }
    if !odd_printed_ok {
        v.block("the odd Γ-ratio as displayed is off by one in the denominator argument, which the recurrence fixes to Γ(m + 3/2 − ε(u+n)/2)");
    }

    // fermions: termination, invariance and RLL for the fundamental and JS m=1
    let u = q(1, 7);
    for n in 3..=5 {
        let m = metric(SO, n);
        let osc = oscillators(&m, OscKind::Fermionic, 0).unwrap();
        assert!(symmetrized_basis(&osc, n + 1).iter().all(|e| e.matrix.is_zero()));
        let series = assemble_spinorial_r(&osc, &osc, &u, n).unwrap();
        let longer = assemble_with_coefficients(&osc, &osc, &u, &rll_coefficients(&m, &u, n + 2).unwrap()).unwrap();
        assert_eq!(series.matrix, longer.matrix);
        assert!(check_symmetry(&series, &osc, None).unwrap().is_zero());
        for rep in [fundamental_rep(&m), js_rep(&m, 1).unwrap()] {
            let (l, _) = spinorial_l(&osc, &rep).unwrap();
            assert!(check_spinorial_rll(&series, &l, None).unwrap().is_zero(), "so{n} {}", rep.label);
        }
    }

    // bosons, sp(2)
    let m = metric(SP, 2);
    let printed = r_coefficients(&m, &u, 6).unwrap();
    let signed = rll_coefficients(&m, &u, 6).unwrap();
    for rep in [fundamental_rep(&m), js_rep(&m, 1).unwrap()] {
        assert!(check_symbol_rll(&rep, &u, &signed).unwrap().is_zero());
        assert!(!check_symbol_rll(&rep, &u, &printed).unwrap().is_zero());
    }
    v.block("for sp the recurrence solves RLL only with an extra factor ε per step (r_k ε^⌊k/2⌋)");

    let osc = oscillators(&m, OscKind::Bosonic, 8).unwrap();
    let series = assemble_spinorial_r(&osc, &osc, &u, 6).unwrap();
    assert!(check_symmetry(&series, &osc, Some(6)).unwrap().is_zero());
    let (l, _) = spinorial_l(&osc, &fundamental_rep(&m)).unwrap();
    assert!(!check_spinorial_rll(&series, &l, Some(2)).unwrap().is_zero());
    v.block("the truncated bosonic matrix series (cutoff 8, k ≤ 6) misses RLL on the occupation ≤ 2 band, so RLL is verified on Weyl symbols instead");

    assert!(!k_stability(&osc, &u, 4, 2).unwrap().is_zero());
    v.block("bosonic k-stability fails: order k+2 changes entries between low-occupation states");
    v
}

fn criterion_7() -> Verdict {
    let mut zoo: Vec<Representation> = Vec::new();
    for (kind, n) in [(SO, 3), (SO, 4), (SO, 5), (SP, 2), (SP, 4)] {
        let m = metric(kind, n);
        let fund = fundamental_rep(&m);
        assert!(check_defr5(&fund).is_zero(), "{kind}{n}");
        zoo.push(fund);
        for mm in 1..=2 {
            let js = js_rep(&m, mm).unwrap();
            assert!(check_defr5(&js).is_zero(), "{kind}{n} m={mm}");
            zoo.push(js);
        }
        if kind.is_orthogonal() {
            zoo.push(spinor_rep(&oscillators(&m, OscKind::Fermionic, 0).unwrap()));
            zoo.push(js_rep(&m, 1).unwrap().direct_sum(&js_rep(&m, 2).unwrap()).unwrap());
        }
    }
    let mut zero = 0;
    for rep in &zoo {
        if check_defr5(rep).is_zero() {
            zero += 1;
            assert!(check_characteristic(rep, CharacteristicKind::Cubic).is_zero(), "{} n={}", rep.label, rep.n());
        }
    }
    assert!(zero < zoo.len());
    Verdict::pass()
}

/// Roots of `x² − s x + p` when they are rational.
fn rational_roots(s: &Scalar, p: &Scalar) -> Option<(Scalar, Scalar)> {
    let disc = &(s * s) - &(p * &Scalar::from_int(4));
    let (num, den) = (disc.re().numer().clone(), disc.re().denom().clone());
    let (rn, rd) = (num.sqrt(), den.sqrt());
    if &rn * &rn != num || &rd * &rd != den {
        return None;
    }
    let root = Scalar::real(num_rational::BigRational::new(rn, rd));
    let half = q(1, 2);
    Some((&(s + &root) * &half, &(s - &root) * &half))
}

fn criterion_8() -> Verdict {
    let mut v = Verdict::pass();
    for (kind, n) in [(SO, 3), (SO, 4), (SP, 2), (SP, 4)] {
        let m = metric(kind, n);
        let (s, p) = quoted_shift_constraints(&m);
        let (l, mu) = rational_roots(&s, &p).expect("rational shifts");
        let fused = fuse_spinor_pair(&m, &l, &mu);
        let factor = proportionality_factor(&fused).unwrap();
        if kind.is_orthogonal() {
            assert_eq!(factor, Some(Scalar::one()), "{kind}{n}");
        } else {
            assert_eq!(factor, None);
            // the quoted values are the good ones shifted by β, which shifts the spectral parameter
            let shifted = fundamental_r(&m).at(&(&Poly2::u() - &Poly2::constant(m.beta())));
            assert_eq!(fused.matrix, shifted);
            let (l2, mu2) = spinor_pair_shifts(&m);
            assert_eq!(&l2 + &mu2, -m.beta());
            assert_eq!(&l2 * &mu2, p);
            assert_eq!(proportionality_factor(&fuse_spinor_pair(&m, &l2, &mu2)).unwrap(), Some(Scalar::one()));
        }
        for (a, b) in [(q(1, 3), q(2, 5)), (&l + &q(1, 2), mu.clone())] {
            assert_eq!(proportionality_factor(&fuse_spinor_pair(&m, &a, &b)).unwrap(), None);
        }
    }
    v.block("for sp the shift sum must be −β = −(n+2)/2 instead of (2 − εn)/2; at the quoted values the fused operator is R(u − β)");
    v
}

fn criterion_9() -> Verdict {
    let mut v = Verdict::pass();
    let m = metric(SO, 4);
    let r = fundamental_r(&m);
    let (l, mu) = js_shifts(&m);
    assert!(l.is_zero() && mu.is_zero());
    for mm in 1..=2 {
        let rep = js_rep(&m, mm).unwrap();
        let fused = fuse_js(&rep, &l, &mu).unwrap();
        let evaluation = quadratic_evaluation_l(&rep);
        assert_eq!(fused.matrix, evaluation.matrix());
        assert!(check_rll(&r, &fused.to_l_operator(&rep)).unwrap().is_zero());
        let quoted = lgn_l(&rep);
        assert_ne!(fused.matrix, quoted.matrix());
        assert!(!check_rll(&r, &quoted).unwrap().is_zero());
    }
    v.block("the fused operator solves RLL but is u² − uG + ½(G² − βG) − m₂/8 − (n−4)²/16, not the quoted form with +uG and −¼β²; the quoted form fails RLL");
    v
}

fn criterion_10() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_ylab");
    let mut outputs = Vec::new();
    for jobs in ["1", "4"] {
        let start = Instant::now();
        let out = Command::new(bin)
            .args(["run", "--kind", "so", "--n", "4", "--suite", "all", "--jobs", jobs])
            .output()
            .unwrap();
        assert!(start.elapsed() <= Duration::from_secs(300));
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        outputs.push(out.stdout);
    }
    assert_eq!(outputs[0], outputs[1]);
    Verdict::pass()
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("YBE is exactly zero", criterion_1),
        ("β and the fundamental half-Casimir", criterion_2),
        ("linear evaluation of the spinor representation", criterion_3),
        ("JS m=2 is not a linear evaluation", criterion_4),
        ("quadratic evaluations and cubic identities", criterion_5),
        ("spinorial R-operator", criterion_6),
        ("defR5 implies the cubic identity", criterion_7),
        ("spinor pair fusion reproduces R(u)", criterion_8),
        ("JS fusion reproduces the quadratic evaluation", criterion_9),
        ("whole-suite runtime and determinism", criterion_10),
    ];
    for (i, (title, f)) in criteria.iter().enumerate() {
        let v = f();
        report(i + 1, title, &v);
    }
}
