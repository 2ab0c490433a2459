use umrg::verify::{verify_all, Universe};

#[test]
fn aggregate_report_is_consistent_and_deterministic() {
    let u = Universe::build(None).unwrap();
    let first = verify_all(&u).without_timing();
    let second = verify_all(&u).without_timing();
    assert_eq!(serde_json::to_string(&first).unwrap(), serde_json::to_string(&second).unwrap());

    assert!(first.pass);
    assert!(first.consistency.iter().all(|c| c.pass));
    for report in &first.reports {
        assert_eq!(report.pass, report.witnesses.is_empty(), "{}", report.claim_id);
        for d in &report.discrepancies {
            assert_eq!(d.claim_id, report.claim_id);
            assert!(!d.location.is_empty());
            assert_ne!(d.printed_value, d.recomputed_value, "{}", d.location);
        }
    }
    let ids: Vec<&str> = first.reports.iter().map(|r| r.claim_id.as_str()).collect();
    assert_eq!(ids, ["k44", "regular", "lemma2", "lemma3", "biconnected"]);
}

#[test]
fn audit_flags_the_edge_term_table() {
    let u = Universe::build(None).unwrap();
    let report = umrg::verify::verify_lemma(&u, 3);
    let entry = report
        .discrepancies
        .iter()
        .find(|d| d.location == "edge term table, degrees (3, 4)")
        .expect("the (3, 4) entry is audited");
    assert_eq!((entry.printed_value, entry.recomputed_value), (168, 120));
}

#[test]
fn unsupported_stratum_is_rejected() {
    let u = Universe::build(None).unwrap();
    assert!(!umrg::verify::verify_lemma(&u, 4).pass);
}
