//! Runs every acceptance criterion and prints one line per criterion.
//!
//! A criterion listed in `KNOWN_FAILURES` must fail: its check is run for
//! real and the failing examples are printed, so a silent fix or a silent
//! regression both show up here.

use annotmc::lab::{criterion_name, run_criterion, CRITERIA, KNOWN_FAILURES};
use std::io::Write;
use std::time::Instant;

/// Writes past the test harness's output capture so the summary is always shown.
fn report(line: String) {
    let _ = writeln!(std::io::stderr(), "{line}");
}

#[test]
fn acceptance_criteria() {
    let mut unexpected = Vec::new();
    for (id, _) in CRITERIA {
        let start = Instant::now();
        let r = run_criterion(id).unwrap_or_else(|e| panic!("criterion {id} errored: {e}"));
        let expected = !KNOWN_FAILURES.contains(&id);
        let status = if r.passed { "PASS" } else { "FAIL" };
        let tag = if expected { "" } else { " (known failure)" };
        report(format!(
            "criterion {id:>2} {status}{tag}: {} [{} checked, {} failures, {:.1}s]",
            criterion_name(id),
            r.checked,
            r.failures,
            start.elapsed().as_secs_f64()
        ));
        for e in r.examples.iter().take(3) {
            report(format!("    example: {e}"));
        }
        for n in &r.notes {
            report(format!("    note: {n}"));
        }
        if r.passed != expected {
            unexpected.push(id);
        }
    }
    assert!(unexpected.is_empty(), "criteria with unexpected outcome: {unexpected:?}");
}
