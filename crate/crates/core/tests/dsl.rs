use fano_core::dsl::gen::{random_expr, random_sort};
use fano_core::dsl::registry::{SuiteConfig, REPORT_SCHEMA};
use fano_core::dsl::{eval_str, parse, print, run_suite, ErrorKind, Registry};
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn round_trip_on_random_expressions() {
    let mut rng = StdRng::seed_from_u64(2024);
    for i in 0..1000 {
        let sort = random_sort(&mut rng);
        let e = random_expr(&mut rng, sort, 4);
        let text = print(&e);
        let back = parse(&text).unwrap_or_else(|err| panic!("case {i}: {text}: {err}"));
        assert_eq!(back, e, "case {i}: {text}");
        assert_eq!(print(&back), text);
    }
}

#[test]
fn worked_examples() {
    assert_eq!(eval_str("g^2 * g^2").unwrap().to_string(), "108*o");
    assert_eq!(eval_str("push(D, pt[l])").unwrap().to_string(), "pt[l]");
    assert_eq!(eval_str("((1/3)*(g^2 - c))^2").unwrap().to_string(), "5*o");
}

#[test]
fn unicode_and_ascii_agree() {
    assert_eq!(
        eval_str("φ_* * φ*").unwrap(),
        eval_str("phi_* * phi^*").unwrap()
    );
    assert_eq!(eval_str("D ∘ Iᵗ").unwrap(), eval_str("D @ tr(I)").unwrap());
}

#[test]
fn errors_carry_positions() {
    let e = parse("g +\n  foo").unwrap_err();
    assert_eq!(e.kind, ErrorKind::UnknownAtom);
    assert_eq!((e.line, e.column), (2, 3));
    let e = parse("g $ g").unwrap_err();
    assert_eq!(e.kind, ErrorKind::Lexical);
    assert_eq!(e.column, 3);
    let e = parse("g + c").unwrap_err();
    assert_eq!(e.kind, ErrorKind::Grading);
}

#[test]
fn filter_and_user_registry() {
    let cfg = SuiteConfig::default();
    let mut reg = Registry::builtin();
    let report = run_suite(&reg, Some("minpoly-*"), &cfg).unwrap();
    assert_eq!(report.results.len(), 4);
    assert!(run_suite(&reg, Some("no-such-*"), &cfg).is_err());

    reg.extend_from_toml(
        "[[identity]]\nname = \"user-g3\"\nanchor = \"user\"\nexpr = \"g * g^2\"\nexpected = \"g^3\"\n\
         [[identity]]\nname = \"user-wrong\"\nanchor = \"user\"\nexpr = \"g^4\"\nexpected = \"107*o\"\n\
         expected_status = \"fail\"\n",
    )
    .unwrap();
    let report = run_suite(&reg, Some("user-*"), &cfg).unwrap();
    assert_eq!(report.results.len(), 2);
    assert!(report.all_pass());
    assert!(reg
        .extend_from_toml("[[identity]]\nname = \"user-g3\"\nanchor = \"\"\nop = \"fourier\"\n")
        .is_err());
}

#[test]
fn report_validates_against_schema() {
    let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let report = run_suite(
        &Registry::builtin(),
        Some("taut-*"),
        &SuiteConfig::default(),
    )
    .unwrap();
    let json = serde_json::to_value(&report).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(&json)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "{errors:?}");
    let mut broken = json.clone();
    broken["results"][0]["status"] = "maybe".into();
    assert!(!validator.is_valid(&broken));
}

#[test]
fn ordering_is_stable() {
    let cfg = SuiteConfig::default();
    let reg = Registry::builtin();
    let a: Vec<_> = run_suite(&reg, Some("op-*"), &cfg)
        .unwrap()
        .results
        .into_iter()
        .map(|r| r.name)
        .collect();
    let b: Vec<_> = run_suite(&reg, Some("op-*"), &cfg)
        .unwrap()
        .results
        .into_iter()
        .map(|r| r.name)
        .collect();
    let mut sorted = a.clone();
    sorted.sort();
    assert_eq!(a, sorted);
    assert_eq!(a, b);
}
