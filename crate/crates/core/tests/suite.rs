use fano_core::dsl::registry::{Status, SuiteConfig};
use fano_core::dsl::{run_suite, Registry};

#[test]
fn builtin_suite_passes() {
    let report = run_suite(&Registry::builtin(), None, &SuiteConfig::default()).unwrap();
    for r in &report.results {
        println!("{:<22} {:?} {}ms {}", r.name, r.status, r.millis, r.witness);
    }
    let bad: Vec<_> = report
        .results
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| &r.name)
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
    assert_eq!(report.exit_code(), 0);
}
