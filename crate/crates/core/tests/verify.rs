use qhyper::verify::{run_suite, Suite, VerifyConfig};

#[test]
fn every_check_passes_at_default_tolerances() {
    let records = run_suite(Suite::All, &VerifyConfig::default());
    for r in &records {
        eprintln!(
            "{:32} dev {:10.3e} tol {:8.1e} {:6.2}s {} {}",
            r.check_id,
            r.max_deviation,
            r.tolerance,
            r.runtime_secs,
            if r.pass { "ok" } else { "FAIL" },
            r.note.as_deref().unwrap_or("")
        );
    }
    assert!(records.iter().all(|r| r.pass));
}

#[test]
fn suite_filter_selects_only_its_checks() {
    let records = run_suite(Suite::Oracles, &VerifyConfig { seed: 7, tolerance_factor: 1.0 });
    assert_eq!(records.len(), 3);
    assert!(records.iter().all(|r| r.check_id.starts_with("oracle.")));
}
