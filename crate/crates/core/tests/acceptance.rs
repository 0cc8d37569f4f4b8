//! The twelve acceptance criteria, each reported as one PASS/FAIL line.

use std::io::Write;
use std::time::{Duration, Instant};

use dkdv_core::diffpoly::commutator_flows;
use dkdv_core::hierarchy::{dkdv_flow, lax_flows};
use dkdv_core::verify::{run_suite, LedgerEntry, Status, Suite, VerificationLedger, DEFAULT_ORDER, MAX_LAX_INDEX};

struct Criterion {
    number: u32,
    title: &'static str,
    ids: fn(&str) -> bool,
    expected: usize,
    budget: Option<(Duration, fn() -> Duration)>,
}

fn time_tau0() -> Duration {
    let start = Instant::now();
    dkdv_flow(0, DEFAULT_ORDER).expect("tau_0 builds");
    start.elapsed()
}

fn time_lax_commutators() -> Duration {
    let start = Instant::now();
    let flows = lax_flows(MAX_LAX_INDEX, DEFAULT_ORDER).expect("lax flows build");
    for (i, a) in flows.iter().enumerate() {
        for b in &flows[i + 1..] {
            assert!(commutator_flows(a, b).expect("same ring").iter().all(|p| p.is_zero()));
        }
    }
    start.elapsed()
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            number: 1,
            title: "tau_0 flow closed form",
            ids: |id| id == "lax.tau0.closed_form",
            expected: 1,
            budget: Some((Duration::from_secs(1), time_tau0)),
        },
        Criterion {
            number: 2,
            title: "Lax flows commute for d1 < d2 <= 3",
            ids: |id| id.starts_with("commute.tau"),
            expected: 6,
            budget: Some((Duration::from_secs(20), time_lax_commutators)),
        },
        Criterion {
            number: 3,
            title: "Lax flow shapes and dispersionless potentials",
            ids: |id| id.starts_with("lax.tau") && (id.ends_with(".dispersionless") || id.ends_with(".shape")),
            expected: 8,
            budget: None,
        },
        Criterion {
            number: 4,
            title: "first extended flow: closed form and uniqueness",
            ids: |id| id.starts_with("commute.t1_1."),
            expected: 2,
            budget: None,
        },
        Criterion {
            number: 5,
            title: "second extended flow commutes with tau_0 and tau_1",
            ids: |id| id.starts_with("commute.t1_2."),
            expected: 2,
            budget: None,
        },
        Criterion {
            number: 6,
            title: "Q, C, B identities",
            ids: |id| id.starts_with("qcb."),
            expected: 9,
            budget: None,
        },
        Criterion {
            number: 7,
            title: "operator fixtures, roots and inverses",
            ids: |id| id.starts_with("genfun.op."),
            expected: 8,
            budget: None,
        },
        Criterion {
            number: 8,
            title: "generating series relations",
            ids: |id| id.starts_with("genfun.series."),
            expected: 7,
            budget: None,
        },
        Criterion {
            number: 9,
            title: "DR chart: genus-one values and dilaton identity",
            ids: |id| id.starts_with("dr."),
            expected: 6,
            budget: None,
        },
        Criterion {
            number: 10,
            title: "genus zero: associativity, densities, flows at ep = 0",
            ids: |id| id.starts_with("fmanifold."),
            expected: 20,
            budget: None,
        },
        Criterion {
            number: 11,
            title: "no value of alpha gives commuting flows",
            ids: |id| id.starts_with("nogo."),
            expected: 1,
            budget: None,
        },
        Criterion {
            number: 12,
            title: "randomized infrastructure properties",
            ids: |id| id.starts_with("props."),
            expected: 8,
            budget: None,
        },
    ]
}

fn evaluate(c: &Criterion, ledger: &VerificationLedger) -> (bool, Vec<String>) {
    let entries: Vec<&LedgerEntry> = ledger.entries.iter().filter(|e| (c.ids)(&e.id)).collect();
    let mut notes = Vec::new();
    if entries.len() != c.expected {
        notes.push(format!("expected {} checks, found {}", c.expected, entries.len()));
    }
    for e in &entries {
        if let Status::Fail { lhs, rhs } = &e.status {
            notes.push(format!("{}: {lhs} != {rhs}", e.id));
        }
    }
    if let Some((limit, measure)) = c.budget {
        let took = measure();
        if took > limit {
            notes.push(format!("took {took:?}, budget {limit:?}"));
        }
    }
    (notes.is_empty(), notes)
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let ledger = run_suite(Suite::All);
    let mut failed = Vec::new();
    let mut report = String::new();
    for c in criteria() {
        let (ok, notes) = evaluate(&c, &ledger);
        report.push_str(&format!("{} criterion {:>2}: {}\n", if ok { "PASS" } else { "FAIL" }, c.number, c.title));
        for n in &notes {
            report.push_str(&format!("      {n}\n"));
        }
        if !ok {
            failed.push(c.number);
        }
    }
    let total = start.elapsed();
    report.push_str(&format!("total {total:?}\n"));
    // Bypasses the harness capture.
    std::io::stdout().lock().write_all(report.as_bytes()).expect("stdout is writable");
    assert!(total < Duration::from_secs(60), "suite took {total:?}");
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn every_ledger_entry_belongs_to_one_criterion() {
    let ledger = run_suite(Suite::All);
    let all = criteria();
    for e in &ledger.entries {
        let owners = all.iter().filter(|c| (c.ids)(&e.id)).count();
        assert_eq!(owners, 1, "{} is claimed by {owners} criteria", e.id);
    }
}
