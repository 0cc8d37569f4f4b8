//! The verification ledger: named checks grouped into suites, run in
//! parallel and reported in a fixed order.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diffpoly::{commutator_flows, DiffMonomial, DiffPoly, Flow, GradeKind, JetVariable, Ring, RingSpec};
use crate::error::{Error, Result};
use crate::evenop::{make_named, EvenOp, NamedOp};
use crate::expr::parse_expr;
use crate::genfun::{
    density_closed_form_v1, density_closed_form_v2, oriented_associativity_check, potential_extended_2spin,
    principal_density, series_relations_check,
};
use crate::hierarchy::{
    b_tilde_antisymmetry_residual, build_qcb, chart_map, dispersionless_dk2_coefficient, dkdv_flow, dr_checks,
    extended_flow, lambda_identity_residual, miura_transport, nogo_check, q_binomial_identity_residual, qcb_commutator_parts,
    qcb_explicit_parts, topological_flows, Chart, Qcb, Reconstruction,
};
use crate::scalar::{rat, Gauss};
use crate::shiftring::ShiftOp;

/// Truncation for the Lax, commutation and genus-zero checks.
pub const DEFAULT_ORDER: u32 = 6;
/// Truncation for the `Q, C, B` identities.
pub const QCB_ORDER: u32 = 8;
/// Truncation for the second extended flow and the DR checks.
pub const REDUCED_ORDER: u32 = 4;
/// Largest Lax index covered.
pub const MAX_LAX_INDEX: u32 = 3;
/// Randomized cases per infrastructure property.
pub const PROPERTY_CASES: usize = 100;
/// Largest `g` for the operator fixtures.
pub const OPERATOR_MAX_G: usize = 4;
/// Largest `g` for the series relations (`z^{2G}`).
pub const SERIES_MAX_G: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Lax,
    Commute,
    Qcb,
    Dr,
    Nogo,
    Fmanifold,
    Genfun,
    Props,
    All,
}

impl Suite {
    /// Suites run by `all`, in report order.
    pub const PARTS: [Suite; 8] =
        [Suite::Lax, Suite::Commute, Suite::Qcb, Suite::Dr, Suite::Nogo, Suite::Fmanifold, Suite::Genfun, Suite::Props];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lax => "lax",
            Suite::Commute => "commute",
            Suite::Qcb => "qcb",
            Suite::Dr => "dr",
            Suite::Nogo => "nogo",
            Suite::Fmanifold => "fmanifold",
            Suite::Genfun => "genfun",
            Suite::Props => "props",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::PARTS
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite `{s}`")))
    }
}

/// Outcome of one check; on failure both sides in canonical text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail { lhs: String, rhs: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub id: String,
    pub status: Status,
    pub elapsed_ms: u128,
}

impl LedgerEntry {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Check results in suite order, then declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationLedger {
    pub entries: Vec<LedgerEntry>,
}

impl VerificationLedger {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(LedgerEntry::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LedgerEntry> {
        self.entries.iter().filter(|e| !e.passed())
    }

    /// Entries whose id starts with `prefix`.
    pub fn matching<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a LedgerEntry> {
        self.entries.iter().filter(move |e| e.id.starts_with(prefix))
    }

    /// The report without timings; identical across runs.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match &e.status {
                Status::Pass => out.push_str(&format!("PASS {}\n", e.id)),
                Status::Fail { lhs, rhs } => {
                    out.push_str(&format!("FAIL {}\n  lhs: {lhs}\n  rhs: {rhs}\n", e.id));
                }
            }
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} passed, {failed} failed\n", self.entries.len() - failed));
        out
    }

    /// One `id elapsed` line per check.
    pub fn render_timings(&self) -> String {
        self.entries.iter().map(|e| format!("{} {} ms\n", e.id, e.elapsed_ms)).collect()
    }
}

fn equal(lhs: impl fmt::Display, rhs: impl fmt::Display) -> Status {
    let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
    if lhs == rhs {
        Status::Pass
    } else {
        Status::Fail { lhs, rhs }
    }
}

fn holds(ok: bool, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail { lhs: lhs.to_string(), rhs: rhs.to_string() }
    }
}

fn all_zero(ps: &[DiffPoly]) -> Status {
    match ps.iter().find(|p| !p.is_zero()) {
        None => Status::Pass,
        Some(p) => Status::Fail { lhs: p.to_string(), rhs: "0".into() },
    }
}

fn errored(e: &Error) -> Status {
    Status::Fail { lhs: "error".into(), rhs: e.to_string() }
}

fn flatten(r: Result<Status>) -> Status {
    r.unwrap_or_else(|e| errored(&e))
}

/// Expensive objects shared by several checks, each built once.
#[derive(Default)]
struct Context {
    tau: [OnceLock<Result<Flow>>; MAX_LAX_INDEX as usize + 1],
    tau_reduced: [OnceLock<Result<Flow>>; 2],
    first_extended: OnceLock<Result<(Flow, Reconstruction)>>,
    second_extended: OnceLock<Result<(Flow, Reconstruction)>>,
    qcb: OnceLock<Qcb>,
}

impl Context {
    fn tau(&self, d: u32) -> Result<&Flow> {
        self.tau[d as usize].get_or_init(|| dkdv_flow(d, DEFAULT_ORDER)).as_ref().map_err(Clone::clone)
    }

    fn tau_reduced(&self, d: u32) -> Result<&Flow> {
        self.tau_reduced[d as usize].get_or_init(|| dkdv_flow(d, REDUCED_ORDER)).as_ref().map_err(Clone::clone)
    }

    fn first_extended(&self) -> Result<&(Flow, Reconstruction)> {
        self.first_extended.get_or_init(|| extended_flow(1, DEFAULT_ORDER)).as_ref().map_err(Clone::clone)
    }

    fn second_extended(&self) -> Result<&(Flow, Reconstruction)> {
        self.second_extended.get_or_init(|| extended_flow(2, REDUCED_ORDER)).as_ref().map_err(Clone::clone)
    }

    fn qcb(&self) -> &Qcb {
        self.qcb.get_or_init(|| build_qcb(QCB_ORDER))
    }
}

type CheckFn = Box<dyn Fn(&Context) -> Status + Send + Sync>;

struct Check {
    id: String,
    run: CheckFn,
}

fn check(id: impl Into<String>, run: impl Fn(&Context) -> Status + Send + Sync + 'static) -> Check {
    Check { id: id.into(), run: Box::new(run) }
}

fn lax_checks() -> Vec<Check> {
    let mut out = vec![check("lax.tau0.closed_form", |cx| {
        flatten(cx.tau(0).and_then(|f| {
            let ring = RingSpec::uv();
            let expected = parse_expr("-1/4*v^2 + u", &ring, DEFAULT_ORDER)?;
            let expected = crate::hierarchy::apply_named(NamedOp::R, &expected);
            Ok(holds(
                f.rhs_of(0).is_zero() && f.potential(1) == Some(&expected),
                format!("[{}, {}]", f.rhs_of(0), f.potential(1).map_or(String::new(), ToString::to_string)),
                format!("[0, {expected}]"),
            ))
        }))
    })];
    for d in 0..=MAX_LAX_INDEX {
        out.push(check(format!("lax.tau{d}.shape"), move |cx| match cx.tau(d) {
            Ok(_) => Status::Pass,
            Err(e) => errored(&e),
        }));
        out.push(check(format!("lax.tau{d}.dispersionless"), move |cx| {
            flatten(cx.tau(d).map(|f| {
                let ring = RingSpec::uv();
                let lhs = f.potential(1).expect("tau flows carry potentials").at_eps_zero().set_var_zero(0);
                let v = DiffPoly::var(&ring, DEFAULT_ORDER, 1);
                let rhs = v.pow(2 * d + 2).scale_rat(&dispersionless_dk2_coefficient(d));
                equal(lhs, rhs)
            }))
        }));
    }
    out
}

fn commute_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for d2 in 1..=MAX_LAX_INDEX {
        for d1 in 0..d2 {
            out.push(check(format!("commute.tau{d1}.tau{d2}"), move |cx| {
                flatten(cx.tau(d1).and_then(|a| Ok(all_zero(&commutator_flows(a, cx.tau(d2)?)?))))
            }));
        }
    }
    out.push(check("commute.t1_1.closed_form", |cx| {
        flatten(cx.first_extended().and_then(|(flow, _)| {
            let (_, t11) = topological_flows(DEFAULT_ORDER)?;
            Ok(equal(
                format!("[{}]", flow.rhs().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")),
                format!("[{}]", t11.rhs().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")),
            ))
        }))
    }));
    out.push(check("commute.t1_1.unique", |cx| {
        flatten(cx.first_extended().map(|(_, rec)| {
            let kernels: Vec<String> = rec.certificates.iter().map(|c| c.kernel_dim.to_string()).collect();
            holds(rec.is_unique() && rec.certificates.len() == DEFAULT_ORDER as usize + 1, kernels.join(","), "0,...")
        }))
    }));
    for d in 0..=1 {
        out.push(check(format!("commute.t1_2.tau{d}"), move |cx| {
            flatten(
                cx.second_extended().and_then(|(f, _)| Ok(all_zero(&commutator_flows(f, cx.tau_reduced(d)?)?))),
            )
        }));
    }
    out
}

fn qcb_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for k in 0..3 {
        out.push(check(format!("qcb.P{}.commutator", k + 1), move |cx| {
            flatten(qcb_commutator_parts(cx.qcb()).map(|p| equal(&p[k], "0")))
        }));
        out.push(check(format!("qcb.P{}.explicit", k + 1), move |cx| {
            flatten(qcb_explicit_parts(cx.qcb()).map(|p| equal(&p[k], "0")))
        }));
    }
    out.push(check("qcb.b_tilde_antisymmetry", |cx| equal(b_tilde_antisymmetry_residual(cx.qcb()), "0")));
    out.push(check("qcb.lambda_identity", |_| equal(lambda_identity_residual(QCB_ORDER), "0")));
    out.push(check("qcb.q_binomial_identity", |cx| equal(q_binomial_identity_residual(cx.qcb()), "0")));
    out
}

fn dr_checks_list() -> Vec<Check> {
    let report = || dr_checks(REDUCED_ORDER);
    let mut out = vec![
        check("dr.T1", move |_| flatten(report().map(|r| equal(&r.t1, rat(1, 24))))),
        check("dr.P2200_eps2", move |_| flatten(report().map(|r| equal(&r.p2200_eps2, &r.p2200_eps2_expected)))),
    ];
    for alpha in 1..=2 {
        for beta in 1..=2 {
            out.push(check(format!("dr.dilaton.{alpha}.{beta}"), move |_| {
                flatten(report().map(|r| {
                    let case = r.dilaton.iter().find(|c| c.alpha == alpha && c.beta == beta).expect("all cases");
                    equal(&case.lhs, &case.rhs)
                }))
            }));
        }
    }
    out
}

fn nogo_checks() -> Vec<Check> {
    vec![check("nogo.no_alpha_commutes", |_| {
        flatten(nogo_check(DEFAULT_ORDER).map(|r| {
            holds(
                r.certified(),
                format!("obstruction {:?}, solution {:?}", r.obstruction, r.solution.map(|s| s.to_string())),
                "an obstruction and no solution",
            )
        }))
    })]
}

/// `ε = 0` parts of the two potentials of `flow` in the `(w¹, w²)` chart.
fn dispersionless_in_w(flow: &Flow) -> Result<[DiffPoly; 2]> {
    let in_w = miura_transport(flow, &chart_map(Chart::W, flow.truncation()))?;
    let pot = |a: usize| {
        in_w.potential(a).map(DiffPoly::at_eps_zero).ok_or_else(|| Error::MissingFlowComponent(a.to_string()))
    };
    Ok([pot(0)?, pot(1)?])
}

fn fmanifold_checks() -> Vec<Check> {
    let mut out = vec![check("fmanifold.oriented_associativity", |_| {
        let report = oriented_associativity_check(&potential_extended_2spin());
        holds(report.passed(), report.failures.join("; "), "no failures")
    })];
    for d in 0..=MAX_LAX_INDEX {
        out.push(check(format!("fmanifold.psi1_1_{d}.closed_form"), move |_| {
            flatten(
                principal_density(&potential_extended_2spin(), 0, d)
                    .map(|p| equal(&p.components[0], density_closed_form_v1(d))),
            )
        }));
        for beta in 1..=2u32 {
            out.push(check(format!("fmanifold.psi2_{beta}_{d}.closed_form"), move |_| {
                flatten(
                    principal_density(&potential_extended_2spin(), beta as usize - 1, d)
                        .map(|p| equal(p.components[1].restrict_zero(0), density_closed_form_v2(beta, d))),
                )
            }));
        }
    }
    let against = |flow: Result<&Flow>, beta: usize, d: u32| -> Status {
        flatten(flow.and_then(|f| {
            let lhs = dispersionless_in_w(f)?;
            let psi = principal_density(&potential_extended_2spin(), beta, d)?;
            let ring = RingSpec::w();
            let rhs = psi.components.map(|c| c.to_diffpoly(&ring, f.truncation()));
            Ok(equal(format!("[{}, {}]", lhs[0], lhs[1]), format!("[{}, {}]", rhs[0], rhs[1])))
        }))
    };
    for d in 0..=MAX_LAX_INDEX {
        out.push(check(format!("fmanifold.tau{d}.density"), move |cx| against(cx.tau(d), 1, d)));
    }
    out.push(check("fmanifold.t1_0.density", move |_| {
        let ring = RingSpec::uv();
        let vars = vec![DiffPoly::var(&ring, DEFAULT_ORDER, 0), DiffPoly::var(&ring, DEFAULT_ORDER, 1)];
        let flow = Flow::from_potentials(
            crate::diffpoly::FlowLabel::new(crate::diffpoly::Family::T1, 0),
            vars,
        );
        flatten(flow.map(|f| against(Ok(&f), 0, 0)))
    }));
    out.push(check("fmanifold.t1_1.density", move |cx| against(cx.first_extended().map(|p| &p.0), 0, 1)));
    out.push(check("fmanifold.t1_2.density", move |cx| against(cx.second_extended().map(|p| &p.0), 0, 2)));
    out
}

/// An operator, its name and its first three coefficients as `(p, q)`.
type OperatorFixture = (NamedOp, &'static str, [(i64, i64); 3]);

fn genfun_checks() -> Vec<Check> {
    let fixtures: [OperatorFixture; 4] = [
        (NamedOp::L, "L", [(1, 1), (1, 24), (7, 5760)]),
        (NamedOp::R, "R", [(1, 1), (1, 12), (1, 120)]),
        (NamedOp::X, "X", [(1, 1), (1, 12), (1, 120)]),
        (NamedOp::T, "T", [(1, 1), (1, 24), (19, 5760)]),
    ];
    let show = |op: &EvenOp| op.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    let mut out = Vec::new();
    for (op, name, coeffs) in fixtures {
        out.push(check(format!("genfun.op.{name}"), move |_| {
            let lhs = make_named(op, 2);
            let rhs = EvenOp::new(coeffs.iter().map(|&(p, q)| rat(p, q)).collect());
            equal(show(&lhs), show(&rhs))
        }));
    }
    let g = OPERATOR_MAX_G;
    out.push(check("genfun.op.R_equals_X", move |_| {
        equal(show(&make_named(NamedOp::R, g)), show(&make_named(NamedOp::X, g)))
    }));
    out.push(check("genfun.op.T_squared", move |_| {
        let t = make_named(NamedOp::T, g);
        equal(show(&t.compose(&t)), show(&make_named(NamedOp::R, g)))
    }));
    for (op, inv, name) in [(NamedOp::L, NamedOp::Linv, "L"), (NamedOp::R, NamedOp::Rinv, "R")] {
        out.push(check(format!("genfun.op.{name}_inverse"), move |_| {
            equal(show(&make_named(op, g).compose(&make_named(inv, g))), show(&EvenOp::identity(g)))
        }));
    }
    let relations = series_relations_check(SERIES_MAX_G);
    for (k, rel) in relations.iter().enumerate() {
        out.push(check(format!("genfun.series.{}", rel.id.replace(' ', "_")), move |_| {
            let rel = &series_relations_check(SERIES_MAX_G)[k];
            equal(&rel.lhs, &rel.rhs)
        }));
    }
    out
}

/// Random generators for the infrastructure properties, seeded per check.
struct Gen {
    rng: ChaCha8Rng,
    ring: Ring,
    trunc: u32,
}

impl Gen {
    fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), ring: RingSpec::uv(), trunc: 4 }
    }

    fn small_rational(&mut self) -> crate::scalar::Rational {
        rat(self.rng.gen_range(-9..=9), self.rng.gen_range(1..=5))
    }

    fn gauss(&mut self) -> Gauss {
        let re = self.small_rational();
        let im = if self.rng.gen_bool(0.5) { self.small_rational() } else { rat(0, 1) };
        Gauss::new(re, im)
    }

    fn monomial(&mut self) -> DiffMonomial {
        let eps = self.rng.gen_range(0..=2);
        let n = self.rng.gen_range(0..=2);
        let factors: Vec<(JetVariable, u32)> = (0..n)
            .map(|_| (JetVariable::new(self.rng.gen_range(0..2), self.rng.gen_range(0..=2)), self.rng.gen_range(1..=2)))
            .collect();
        DiffMonomial::from_factors(eps, factors)
    }

    fn poly(&mut self) -> DiffPoly {
        let n = self.rng.gen_range(0..=4);
        let terms: Vec<(DiffMonomial, Gauss)> = (0..n).map(|_| (self.monomial(), self.gauss())).collect();
        DiffPoly::from_terms(&self.ring, self.trunc, terms)
    }

    /// A polynomial homogeneous of `deg` equal to `deg`.
    fn homogeneous(&mut self, deg: i64) -> DiffPoly {
        let n = self.rng.gen_range(1..=3);
        let mut terms = Vec::new();
        for _ in 0..n {
            let m = self.monomial();
            let eps = m.jet_order() as i64 - deg;
            if (0..=self.trunc as i64).contains(&eps) {
                terms.push((m.with_eps(eps as u32), self.gauss()));
            }
        }
        DiffPoly::from_terms(&self.ring, self.trunc, terms)
    }

    fn shift_op(&mut self) -> ShiftOp {
        let coeffs: Vec<(i32, DiffPoly)> = (-1..=1).map(|n| (n, self.poly())).collect();
        ShiftOp::from_coeffs(&self.ring, self.trunc, coeffs)
    }
}

fn property(id: &str, seed: u64, case: impl Fn(&mut Gen) -> Status + Send + Sync + 'static) -> Check {
    check(format!("props.{id}"), move |_| {
        let mut g = Gen::new(seed);
        for _ in 0..PROPERTY_CASES {
            if let fail @ Status::Fail { .. } = case(&mut g) {
                return fail;
            }
        }
        Status::Pass
    })
}

fn shift_commutator(a: &ShiftOp, b: &ShiftOp) -> Result<ShiftOp> {
    a.mul(b)?.sub(&b.mul(a)?)
}

fn props_checks() -> Vec<Check> {
    vec![
        property("field_axioms", 1, |g| {
            let (a, b, c) = (g.gauss(), g.gauss(), g.gauss());
            let inverse_ok = a.is_zero() || (&a * &a.inv().expect("nonzero")).is_one();
            holds(
                (&(&a + &b) + &c) == (&a + &(&b + &c))
                    && &a * &b == &b * &a
                    && &(&a * &b) * &c == &a * &(&b * &c)
                    && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
                    && inverse_ok,
                format!("a = {a}, b = {b}, c = {c}"),
                "field axioms",
            )
        }),
        property("ring_axioms", 2, |g| {
            let (p, q, r) = (g.poly(), g.poly(), g.poly());
            let ok = &(&p * &q) * &r == &p * &(&q * &r)
                && &p * &q == &q * &p
                && &p * &(&q + &r) == &(&p * &q) + &(&p * &r)
                && (&p + &-p.clone()).is_zero();
            holds(ok, format!("p = {p}, q = {q}, r = {r}"), "ring axioms")
        }),
        property("leibniz", 3, |g| {
            let (p, q) = (g.poly(), g.poly());
            equal((&p * &q).dx(), &(&p.dx() * &q) + &(&p * &q.dx()))
        }),
        property("exp_shift_homomorphism", 4, |g| {
            let (p, q) = (g.poly(), g.poly());
            let m = g.rng.gen_range(-2..=2);
            let n = g.rng.gen_range(-2..=2);
            let prod = equal((&p * &q).exp_shift(m), &p.exp_shift(m) * &q.exp_shift(m));
            if prod != Status::Pass {
                return prod;
            }
            equal(p.exp_shift(m).exp_shift(n), p.exp_shift(m + n))
        }),
        property("shift_associativity", 5, |g| {
            let (a, b, c) = (g.shift_op(), g.shift_op(), g.shift_op());
            flatten((|| Ok(equal(a.mul(&b)?.mul(&c)?, a.mul(&b.mul(&c)?)?)))())
        }),
        property("shift_jacobi", 6, |g| {
            let (a, b, c) = (g.shift_op(), g.shift_op(), g.shift_op());
            flatten((|| {
                let sum = shift_commutator(&a, &shift_commutator(&b, &c)?)?
                    .add(&shift_commutator(&b, &shift_commutator(&c, &a)?)?)?
                    .add(&shift_commutator(&c, &shift_commutator(&a, &b)?)?)?;
                Ok(equal(sum, ShiftOp::zero(&g.ring, g.trunc)))
            })())
        }),
        property("grading", 7, |g| {
            let (i, j) = (g.rng.gen_range(-2..=2), g.rng.gen_range(-2..=2));
            let (p, q) = (g.homogeneous(i), g.homogeneous(j));
            let keys = |x: &DiffPoly, kind| x.grade(kind).into_keys().collect::<Vec<_>>();
            let expect = |x: &DiffPoly, k: i64| if x.is_zero() { vec![] } else { vec![k] };
            let prod = &p * &q;
            let ok = keys(&prod, GradeKind::Deg) == expect(&prod, i + j)
                && keys(&p.dx(), GradeKind::Deg) == expect(&p.dx(), i + 1)
                && keys(&p.exp_shift(1), GradeKind::Deg) == expect(&p, i);
            holds(ok, format!("p = {p}, q = {q}"), format!("degrees {i} and {j}"))
        }),
        property("parse_round_trip", 8, |g| {
            let p = g.poly();
            flatten(parse_expr(&p.to_string(), &g.ring, g.trunc).map(|q| equal(q, &p)))
        }),
    ]
}

fn checks_for(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Lax => lax_checks(),
        Suite::Commute => commute_checks(),
        Suite::Qcb => qcb_checks(),
        Suite::Dr => dr_checks_list(),
        Suite::Nogo => nogo_checks(),
        Suite::Fmanifold => fmanifold_checks(),
        Suite::Genfun => genfun_checks(),
        Suite::Props => props_checks(),
        Suite::All => Suite::PARTS.into_iter().flat_map(checks_for).collect(),
    }
}

/// Runs every check of `suite`; independent checks run in parallel.
pub fn run_suite(suite: Suite) -> VerificationLedger {
    let cx = Context::default();
    let checks = checks_for(suite);
    let entries = checks
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let status = (c.run)(&cx);
            LedgerEntry { id: c.id.clone(), status, elapsed_ms: start.elapsed().as_millis() }
        })
        .collect();
    VerificationLedger { entries }
}
