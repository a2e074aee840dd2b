use std::process::Command;

use serde_json::Value;

fn fano(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fano"))
        .args(args)
        .output()
        .expect("run fano");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = fano(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).expect("json output")
}

#[test]
fn eval_examples() {
    assert_eq!(fano(&["eval", "g^2 * g^2"]).1.trim(), "108*o");
    assert_eq!(fano(&["eval", "push(D, pt[l])"]).1.trim(), "pt[l]");
    assert_eq!(fano(&["eval", "((1/3)*(g^2 - c))^2"]).1.trim(), "5*o");
    assert_eq!(fano(&["eval", "(phi_* - 4)*(phi_* + 8)"]).1.trim(), "0");
}

#[test]
fn parse_errors_exit_2_with_position() {
    let (code, _, err) = fano(&["eval", "g + foo"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1, column 5"), "{err}");
    let (code, _, err) = fano(&["eval", "g + c"]);
    assert_eq!(code, 2);
    assert!(err.contains("grading"), "{err}");
    assert_eq!(fano(&["frobnicate"]).0, 2);
    assert_eq!(fano(&["minpoly", "ch7"]).0, 2);
}

#[test]
fn verify_filter_runs_four_records() {
    let report = json(&[
        "verify",
        "--only",
        "minpoly-*",
        "--json",
        "-",
        "--seed",
        "3",
    ]);
    let results = report["results"].as_array().unwrap();
    assert_eq!(results.len(), 4);
    assert_eq!(report["seed"], 3);
    assert!(results.iter().all(|r| r["status"] == "pass"));
    let names: Vec<&str> = results
        .iter()
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "minpoly-ch0",
            "minpoly-ch1",
            "minpoly-ch2",
            "minpoly-ch2-push"
        ]
    );
    let (code, _, _) = fano(&["verify", "--only", "nothing-*"]);
    assert_eq!(code, 2);
}

#[test]
fn user_registry_failure_exits_1() {
    let dir = std::env::temp_dir().join(format!("fano-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("extra.toml");
    std::fs::write(
        &path,
        "[[identity]]\nname = \"wrong-g4\"\nanchor = \"x\"\nexpr = \"g^4\"\nexpected = \"100*o\"\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = fano(&["verify", "--registry", p, "--only", "wrong-*"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL"));
    let out_json = dir.join("r.json");
    let (code, _, _) = fano(&[
        "verify",
        "--registry",
        p,
        "--only",
        "taut-g4",
        "--json",
        out_json.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out_json).unwrap()).unwrap();
    assert_eq!(report["results"][0]["paper_ref"], "tautological ring: g^4");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn surface_outputs() {
    let part = json(&["surface", "--partition"]);
    assert_eq!(part.as_array().unwrap().len(), 9);
    let tri = json(&["surface", "--triangles"]);
    assert_eq!(tri.as_array().unwrap().len(), 45);
    let lines = json(&["surface", "--lines"]);
    let ls = lines["lines"].as_array().unwrap();
    assert_eq!(ls.len(), 27);
    assert!(ls
        .iter()
        .all(|l| l["meets"].as_array().unwrap().len() == 10));
    let pair = json(&["surface", "--pair", "E1", "E2"]);
    assert_eq!(pair["valid"], true);
    assert_eq!(pair["secants"].as_array().unwrap().len(), 5);
    assert_eq!(fano(&["surface", "--pair", "E1", "L12"]).0, 2);
}

#[test]
fn tables_and_minpoly() {
    let t = json(&["tables"]);
    assert_eq!(t["cylinder"].as_array().unwrap().len(), 16);
    assert!(t["cylinder"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["holds"] == true));
    let m = json(&["minpoly", "ch0", "--ranks", "1", "1", "1", "1"]);
    assert_eq!(m["minimal_polynomial"], "x^3 - 12*x^2 - 96*x + 512");
    let m = json(&["minpoly", "ch2", "--ranks", "1", "0", "1", "1"]);
    assert_eq!(m["minimal_polynomial"], "x + 2");
}
