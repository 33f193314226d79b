//! Verification suites behind the `ylab run` command and the JSON report
//! they produce.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{make_metric, AlgebraError, AlgebraKind, Basis, Metric};
use crate::exact_core::Scalar;
use crate::fundamental_r::{check_ybe, fundamental_r};
use crate::fusion::{
    fuse_explicit, fuse_js, fuse_spinor_pair, js_shifts, proportionality_factor, spinor_pair_shifts,
};
use crate::representations::{
    casimir_scalar, check_characteristic, check_cubic_with_m2, check_defr5, check_lie_relations, fundamental_rep,
    harmonic_subspace, js_rep, oscillators, spinor_rep, CharacteristicKind, OscKind, OscillatorSet, Representation,
};
use crate::residual::Residual;
use crate::spinorial_r::{
    assemble_spinorial_r, check_spinorial_rll, check_symbol_rll, check_symmetry, closed_form_even, closed_form_odd,
    r_coefficients, rll_coefficients, spinorial_l, symmetrized_basis,
};
use crate::yangian_l::{check_rll, fundamental_quadratic_l, linear_l, quadratic_evaluation_l};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Ybe,
    RllLinear,
    RllQuadratic,
    Characteristic,
    Casimir,
    SpinorR,
    SpinorRll,
    FuseProp8,
    FuseProp9,
    All,
}

impl Suite {
    pub const NAMES: [(&'static str, Suite); 10] = [
        ("ybe", Suite::Ybe),
        ("rll-linear", Suite::RllLinear),
        ("rll-quadratic", Suite::RllQuadratic),
        ("characteristic", Suite::Characteristic),
        ("casimir", Suite::Casimir),
        ("spinor-r", Suite::SpinorR),
        ("spinor-rll", Suite::SpinorRll),
        ("fuse-prop8", Suite::FuseProp8),
        ("fuse-prop9", Suite::FuseProp9),
        ("all", Suite::All),
    ];

    pub fn name(self) -> &'static str {
        Suite::NAMES.iter().find(|(_, s)| *s == self).map(|(n, _)| *n).expect("listed")
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::NAMES[..9].iter().map(|(_, s)| *s).collect(),
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::NAMES
            .iter()
            .find(|(n, _)| *n == s)
            .map(|(_, x)| *x)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(serialize_with = "serialize_display")]
    pub kind: AlgebraKind,
    pub n: usize,
    pub basis: Basis,
    /// Occupation cutoff of the bosonic Fock spaces.
    pub cutoff: usize,
    pub js_degree: usize,
    pub u: Scalar,
    /// Highest order of the spinorial series; `None` means `n` for fermions
    /// and 6 for bosons.
    pub k_max: Option<usize>,
    pub suite: Suite,
    pub lambda: Option<Scalar>,
    pub mu: Option<Scalar>,
    /// Record real wall times instead of zeros (reports are then no longer
    /// reproducible byte for byte).
    #[serde(skip)]
    pub timings: bool,
}

fn serialize_display<T: fmt::Display, S: serde::Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

impl RunConfig {
    pub fn new(kind: AlgebraKind, n: usize, suite: Suite) -> Self {
        RunConfig {
            kind,
            n,
            basis: Basis::Split,
            cutoff: 6,
            js_degree: 1,
            u: Scalar::frac(1, 7),
            k_max: None,
            suite,
            lambda: None,
            mu: None,
            timings: false,
        }
    }

    fn effective_k_max(&self) -> usize {
        match self.k_max {
            Some(k) => k,
            None if self.kind.is_orthogonal() => self.n,
            None => 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UsageError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("n must be at least 2")]
    TooSmall,
    #[error("cutoff must be at least 2")]
    Cutoff,
    #[error("--lambda and --mu must be given together")]
    LonelyShift,
    #[error("Jordan-Schwinger degree must be at least 1, and at most n/2 for sp")]
    JsDegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub paper_ref: &'static str,
    pub status: Status,
    pub residual_terms: usize,
    pub witness: Option<Vec<usize>>,
    pub detail: Option<String>,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// What a single check found.
#[derive(Debug, Clone, Default)]
struct Outcome {
    residual: Residual,
    detail: Option<String>,
    failed: bool,
}

impl Outcome {
    fn from_residual(residual: Residual) -> Self {
        Outcome { residual, ..Outcome::default() }
    }

    fn error(e: impl fmt::Display) -> Self {
        Outcome { failed: true, detail: Some(e.to_string()), ..Outcome::default() }
    }

    fn flag(ok: bool, detail: String) -> Self {
        Outcome { failed: !ok, detail: Some(detail), ..Outcome::default() }
    }

    fn passed(&self) -> bool {
        !self.failed && self.residual.is_zero()
    }
}

fn lift<E: fmt::Display>(r: Result<Residual, E>) -> Outcome {
    r.map_or_else(Outcome::error, Outcome::from_residual)
}

type CheckFn = Box<dyn Fn() -> Outcome + Send + Sync>;

struct Check {
    name: String,
    paper_ref: &'static str,
    run: CheckFn,
}

fn check(name: impl Into<String>, paper_ref: &'static str, run: impl Fn() -> Outcome + Send + Sync + 'static) -> Check {
    Check { name: name.into(), paper_ref, run: Box::new(run) }
}

/// Everything a suite needs, built once and shared between checks.
struct Context {
    config: RunConfig,
    metric: Metric,
    split: Metric,
    k_max: usize,
}

impl Context {
    fn osc(&self) -> Result<OscillatorSet, String> {
        let kind = if self.config.kind.is_orthogonal() { OscKind::Fermionic } else { OscKind::Bosonic };
        oscillators(&self.split, kind, self.config.cutoff).map_err(|e| e.to_string())
    }

    fn js(&self, metric: &Metric) -> Result<Representation, String> {
        js_rep(metric, self.config.js_degree).map_err(|e| e.to_string())
    }

    /// The states on which a product of `k` spinor generators is exact.
    fn band(&self, k: usize) -> Option<usize> {
        if self.config.kind.is_orthogonal() {
            None
        } else {
            self.config.cutoff.checked_sub(2 * k)
        }
    }
}

pub fn validate(config: &RunConfig) -> Result<Metric, UsageError> {
    let metric = make_metric(config.kind, config.n, config.basis)?;
    if config.n < 2 {
        return Err(UsageError::TooSmall);
    }
    if config.cutoff < 2 {
        return Err(UsageError::Cutoff);
    }
    if config.lambda.is_some() != config.mu.is_some() {
        return Err(UsageError::LonelyShift);
    }
    if config.js_degree == 0 || (!config.kind.is_orthogonal() && 2 * config.js_degree > config.n) {
        return Err(UsageError::JsDegree);
    }
    Ok(metric)
}

/// Runs the configured suite on a pool of `jobs` threads. Checks appear in
/// the report in suite order whatever order they finish in.
pub fn run(config: &RunConfig, jobs: usize) -> Result<Report, UsageError> {
    let metric = validate(config)?;
    let split = make_metric(config.kind, config.n, Basis::Split)?;
    let ctx = std::sync::Arc::new(Context { config: config.clone(), metric, split, k_max: config.effective_k_max() });
    let mut checks = Vec::new();
    for s in config.suite.members() {
        checks.extend(suite_checks(s, &ctx));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool");
    let timings = config.timings;
    let records = pool.install(|| {
        checks
            .par_iter()
            .map(|c| {
                let start = Instant::now();
                let out = (c.run)();
                let wall_ms = if timings { start.elapsed().as_millis() as u64 } else { 0 };
                CheckRecord {
                    name: c.name.clone(),
                    paper_ref: c.paper_ref,
                    status: if out.passed() { Status::Pass } else { Status::Fail },
                    residual_terms: out.residual.nonzero_terms,
                    witness: out.residual.witness.clone(),
                    detail: out.detail,
                    wall_ms,
                }
            })
            .collect()
    });
    Ok(Report { config: config.clone(), checks: records })
}

fn suite_checks(suite: Suite, ctx: &std::sync::Arc<Context>) -> Vec<Check> {
    let c = ctx.clone();
    let name = |s: &str| format!("{}/{}", suite.name(), s);
    let m = ctx.config.js_degree;
    match suite {
        Suite::Ybe => vec![check(name("fundamental"), "Eq. (ybe)", move || {
            lift(check_ybe(&fundamental_r(&c.metric)).map(|p| Residual::of_matrix(&p, None, &[])))
        })],
        Suite::RllLinear => vec![check(name("spinor"), "Prop 2", move || {
            lift(c.osc().map(|o| spinor_rep(&o)).and_then(|rep| {
                check_rll(&fundamental_r(&c.split), &linear_l(&rep)).map_err(|e| e.to_string())
            }))
        })],
        Suite::RllQuadratic => {
            let c2 = ctx.clone();
            let c3 = ctx.clone();
            vec![
                check(name("fundamental-equals-r"), "Prop 3", move || {
                    let r = fundamental_r(&c.metric);
                    let l = fundamental_quadratic_l(&c.metric).matrix();
                    lift(l.sub(&r.matrix).map(|d| Residual::of_matrix(&d, None, &[])))
                }),
                check(name("fundamental"), "Prop 3", move || {
                    let rep = fundamental_rep(&c2.metric);
                    lift(check_rll(&fundamental_r(&c2.metric), &quadratic_evaluation_l(&rep)))
                }),
                check(name(&format!("js-m{m}")), "Prop 6", move || {
                    lift(c3.js(&c3.metric).and_then(|rep| {
                        check_rll(&fundamental_r(&c3.metric), &quadratic_evaluation_l(&rep)).map_err(|e| e.to_string())
                    }))
                }),
            ]
        }
        Suite::Characteristic => characteristic_checks(ctx, &name),
        Suite::Casimir => casimir_checks(ctx, &name),
        Suite::SpinorR => spinor_r_checks(ctx, &name),
        Suite::SpinorRll => spinor_rll_checks(ctx, &name),
        Suite::FuseProp8 => prop8_checks(ctx, &name),
        Suite::FuseProp9 => prop9_checks(ctx, &name),
        Suite::All => Vec::new(),
    }
}

fn characteristic_checks(ctx: &std::sync::Arc<Context>, name: &dyn Fn(&str) -> String) -> Vec<Check> {
    let m = ctx.config.js_degree;
    let (c1, c2, c3, c4, c5) = (ctx.clone(), ctx.clone(), ctx.clone(), ctx.clone(), ctx.clone());
    vec![
        check(name("spinor-quadratic"), "Eq. (char-2)", move || {
            lift(c1.osc().map(|o| {
                let rep = spinor_rep(&o);
                let report = check_characteristic(&rep, CharacteristicKind::Quadratic);
                let mut r = report.residual;
                r.absorb(report.anticommutator.unwrap_or_default());
                r
            }))
        }),
        check(name("fundamental-cubic"), "Eq. (char-3)", move || {
            lift::<String>(Ok(check_characteristic(&fundamental_rep(&c2.metric), CharacteristicKind::Cubic).residual))
        }),
        check(name(&format!("js-m{m}-cubic")), "Eq. (char-3g)", move || {
            let mm = c3.config.js_degree as i64;
            let e = c3.metric.epsilon();
            let n = c3.metric.n() as i64;
            let m2 = Scalar::from_int(2 * mm * (mm * e + n - 2 * e));
            lift(c3.js(&c3.metric).and_then(|rep| {
                harmonic_subspace(&rep, c3.config.js_degree).map(|h| check_cubic_with_m2(&h.rep, &m2)).map_err(|e| e.to_string())
            }))
        }),
        check(name("fundamental-defr5"), "Prop 7", move || {
            lift::<String>(Ok(defr5_then_cubic(&fundamental_rep(&c4.metric))))
        }),
        check(name(&format!("js-m{m}-defr5")), "Prop 7", move || lift(c5.js(&c5.metric).map(|rep| defr5_then_cubic(&rep)))),
    ]
}

/// The defR5 residual, plus the cubic identity whenever defR5 holds.
fn defr5_then_cubic(rep: &Representation) -> Residual {
    let d = check_defr5(rep);
    if !d.is_zero() {
        return Residual::merged([d.symmetrized, d.cyclic]);
    }
    check_characteristic(rep, CharacteristicKind::Cubic).residual
}

fn scalar_outcome(found: Option<Scalar>, expected: Scalar) -> Outcome {
    match found {
        Some(x) => Outcome::flag(x == expected, format!("found {x}, expected {expected}")),
        None => Outcome::flag(false, "the Casimir is not a scalar".into()),
    }
}

fn casimir_checks(ctx: &std::sync::Arc<Context>, name: &dyn Fn(&str) -> String) -> Vec<Check> {
    let m = ctx.config.js_degree;
    let (c1, c2, c3, c4, c5) = (ctx.clone(), ctx.clone(), ctx.clone(), ctx.clone(), ctx.clone());
    vec![
        check(name("beta"), "Eq. (rz)", move || {
            let n = c1.metric.n() as i64;
            let expected = &Scalar::frac(n, 2) - &c1.metric.eps();
            Outcome::flag(c1.metric.beta() == expected, format!("beta = {}", c1.metric.beta()))
        }),
        check(name("lie-relations"), "Eq. (sospg)", move || {
            let mut r = Residual::zero();
            let mut reps = vec![fundamental_rep(&c2.metric)];
            match (c2.js(&c2.metric), c2.osc()) {
                (Ok(js), Ok(o)) => {
                    reps.push(js);
                    reps.push(spinor_rep(&o));
                }
                (Err(e), _) | (_, Err(e)) => return Outcome::error(e),
            }
            for rep in &reps {
                let l = check_lie_relations(rep);
                r.absorb(l.relations);
                r.absorb(l.antisymmetry);
            }
            Outcome::from_residual(r)
        }),
        check(name("fundamental"), "Eq. (fund-2)", move || {
            let half = casimir_scalar(&fundamental_rep(&c3.metric)).map(|x| &x * &Scalar::frac(1, 2));
            scalar_outcome(half, &Scalar::from_int(c3.metric.n() as i64) - &c3.metric.eps())
        }),
        check(name("spinor"), "Eq. (char-2)", move || match c4.osc() {
            Ok(o) => {
                let n = Scalar::from_int(c4.metric.n() as i64);
                let expected = &(&n * &(&(&n * &c4.metric.eps()) - &Scalar::one())) * &Scalar::frac(1, 4);
                scalar_outcome(casimir_scalar(&spinor_rep(&o)), expected)
            }
            Err(e) => Outcome::error(e),
        }),
        check(name(&format!("js-m{m}")), "Eq. (specM2)", move || {
            let rep = match c5.js(&c5.metric) {
                Ok(r) => r,
                Err(e) => return Outcome::error(e),
            };
            let target = match harmonic_subspace(&rep, c5.config.js_degree) {
                Ok(h) => h.rep,
                Err(e) => return Outcome::error(e),
            };
            let mm = Scalar::from_int(c5.config.js_degree as i64);
            let e = c5.metric.eps();
            let n = Scalar::from_int(c5.metric.n() as i64);
            let expected = &(&(&n - &(&e * &Scalar::from_int(2))) * &mm) + &(&e * &(&mm * &mm));
            scalar_outcome(casimir_scalar(&target).map(|x| &x * &Scalar::frac(1, 2)), expected)
        }),
    ]
}

fn spinor_r_checks(ctx: &std::sync::Arc<Context>, name: &dyn Fn(&str) -> String) -> Vec<Check> {
    let (c1, c2, c3) = (ctx.clone(), ctx.clone(), ctx.clone());
    let mut out = vec![
        check(name("closed-form-even"), "Eq. (Rdef8)", move || {
            closed_form_outcome(&c1.split, &c1.config.u, c1.k_max, |m| closed_form_even(&c1.split, &c1.config.u, m), 0)
        }),
        check(name("closed-form-odd"), "Eq. (Rdef8)", move || {
            closed_form_outcome(&c2.split, &c2.config.u, c2.k_max, |m| closed_form_odd(&c2.split, &c2.config.u, m, false), 1)
        }),
        check(name("invariance"), "Eq. (sym)", move || {
            let o = match c3.osc() {
                Ok(o) => o,
                Err(e) => return Outcome::error(e),
            };
            let band = c3.band(1);
            lift(assemble_spinorial_r(&o, &o, &c3.config.u, c3.k_max).and_then(|s| check_symmetry(&s, &o, band)))
        }),
    ];
    if ctx.config.kind.is_orthogonal() {
        let c4 = ctx.clone();
        out.push(check(name("termination"), "Eq. (Rdef7)", move || match c4.osc() {
            Ok(o) => {
                let beyond = symmetrized_basis(&o, o.n() + 1);
                let live = beyond.iter().filter(|e| !e.matrix.is_zero()).count();
                Outcome::flag(live == 0, format!("{live} nonzero elements at order {}", o.n() + 1))
            }
            Err(e) => Outcome::error(e),
        }));
    }
    out
}

/// Compares `r_{2m+parity}/r_parity` from the recurrence with a closed form.
fn closed_form_outcome(
    metric: &Metric,
    u: &Scalar,
    k_max: usize,
    closed: impl Fn(usize) -> Option<Scalar>,
    parity: usize,
) -> Outcome {
    let r = match r_coefficients(metric, u, k_max.max(parity)) {
        Ok(r) => r,
        Err(e) => return Outcome::error(e),
    };
    let mut res = Residual::zero();
    for k in (parity..=k_max).step_by(2) {
        let Some(c) = closed((k - parity) / 2) else {
            return Outcome::error(format!("closed form has a pole at k = {k}"));
        };
        let ratio = &r[k] / &r[parity];
        res.absorb(Residual::of_scalar(&(&ratio - &c), &[k]));
    }
    Outcome::from_residual(res)
}

fn spinor_rll_checks(ctx: &std::sync::Arc<Context>, name: &dyn Fn(&str) -> String) -> Vec<Check> {
    let m = ctx.config.js_degree;
    let reps: Vec<(String, bool)> = vec![("fundamental".into(), false), (format!("js-m{m}"), true)];
    reps.into_iter()
        .map(|(label, js)| {
            let c = ctx.clone();
            check(name(&label), "Eq. (rll-osc)", move || {
                let rep = if js {
                    match c.js(&c.split) {
                        Ok(r) => r,
                        Err(e) => return Outcome::error(e),
                    }
                } else {
                    fundamental_rep(&c.split)
                };
                if c.config.kind.is_orthogonal() {
                    let o = match c.osc() {
                        Ok(o) => o,
                        Err(e) => return Outcome::error(e),
                    };
                    lift(assemble_spinorial_r(&o, &o, &c.config.u, c.k_max).and_then(|s| {
                        let (l, _) = spinorial_l(&o, &rep)?;
                        check_spinorial_rll(&s, &l, None)
                    }))
                } else {
                    let mut out = lift(
                        rll_coefficients(&c.split, &c.config.u, c.k_max)
                            .and_then(|r| check_symbol_rll(&rep, &c.config.u, &r)),
                    );
                    out.detail = Some(format!("Weyl symbols, series truncated at k = {}", c.k_max));
                    out
                }
            })
        })
        .collect()
}

fn shifts(ctx: &Context, default: fn(&Metric) -> (Scalar, Scalar)) -> (Scalar, Scalar) {
    match (&ctx.config.lambda, &ctx.config.mu) {
        (Some(l), Some(m)) => (l.clone(), m.clone()),
        _ => default(&ctx.metric),
    }
}

fn prop8_checks(ctx: &std::sync::Arc<Context>, name: &dyn Fn(&str) -> String) -> Vec<Check> {
    let c1 = ctx.clone();
    let mut out = vec![check(name("proportional"), "Prop 8", move || {
        let (l, m) = shifts(&c1, spinor_pair_shifts);
        let fused = fuse_spinor_pair(&c1.metric, &l, &m);
        match proportionality_factor(&fused) {
            Ok(Some(f)) => Outcome::flag(true, format!("lambda = {l}, mu = {m}, factor {f}")),
            Ok(None) => Outcome::flag(false, format!("lambda = {l}, mu = {m}, not proportional to R(u)")),
            Err(e) => Outcome::error(e),
        }
    })];
    if ctx.config.kind.is_orthogonal() {
        let c2 = ctx.clone();
        out.push(check(name("explicit-traces"), "Eq. (Fgamma)", move || {
            let (l, m) = shifts(&c2, spinor_pair_shifts);
            let rep = fundamental_rep(&c2.metric);
            let symbolic = fuse_spinor_pair(&c2.metric, &l, &m);
            lift(
                fuse_explicit(&rep, &l, &m)
                    .map_err(|e| e.to_string())
                    .and_then(|x| x.matrix.sub(&symbolic.matrix).map_err(|e| e.to_string()))
                    .map(|d| Residual::of_matrix(&d, None, &[])),
            )
        }));
    }
    out
}

fn prop9_checks(ctx: &std::sync::Arc<Context>, name: &dyn Fn(&str) -> String) -> Vec<Check> {
    let m = ctx.config.js_degree;
    let (c1, c2) = (ctx.clone(), ctx.clone());
    vec![
        check(name(&format!("js-m{m}-evaluation")), "Prop 9", move || {
            let (l, mu) = shifts(&c1, js_shifts);
            let rep = match c1.js(&c1.metric) {
                Ok(r) => r,
                Err(e) => return Outcome::error(e),
            };
            let mut out = lift(
                fuse_js(&rep, &l, &mu)
                    .map_err(|e| e.to_string())
                    .and_then(|f| f.matrix.sub(&quadratic_evaluation_l(&rep).matrix()).map_err(|e| e.to_string()))
                    .map(|d| Residual::of_matrix(&d, None, &[])),
            );
            out.detail = Some(format!("lambda = {l}, mu = {mu}"));
            out
        }),
        check(name(&format!("js-m{m}-rll")), "Prop 9", move || {
            let (l, mu) = shifts(&c2, js_shifts);
            let rep = match c2.js(&c2.metric) {
                Ok(r) => r,
                Err(e) => return Outcome::error(e),
            };
            lift(
                fuse_js(&rep, &l, &mu)
                    .map_err(|e| e.to_string())
                    .and_then(|f| check_rll(&fundamental_r(&c2.metric), &f.to_l_operator(&rep)).map_err(|e| e.to_string())),
            )
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for (n, s) in Suite::NAMES {
            assert_eq!(n.parse::<Suite>().unwrap(), s);
            assert_eq!(s.to_string(), n);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn usage_errors() {
        let mut c = RunConfig::new(AlgebraKind::SP, 3, Suite::Ybe);
        assert_eq!(validate(&c), Err(UsageError::Algebra(AlgebraError::OddSymplectic(3))));
        c.n = 4;
        c.basis = Basis::Delta;
        assert_eq!(validate(&c), Err(UsageError::Algebra(AlgebraError::DeltaSymplectic)));
        let mut c = RunConfig::new(AlgebraKind::SO, 4, Suite::Ybe);
        c.lambda = Some(Scalar::one());
        assert_eq!(validate(&c), Err(UsageError::LonelyShift));
    }

    #[test]
    fn order_is_fixed() {
        let c = RunConfig::new(AlgebraKind::SO, 3, Suite::Casimir);
        let a = run(&c, 1).unwrap();
        let b = run(&c, 4).unwrap();
        assert_eq!(a, b);
        assert!(a.all_pass(), "{}", a.to_json());
    }
}
