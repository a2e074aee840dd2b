//! Identity registry and suite runner.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{int, GradedPoly};
use crate::check::Report;
use crate::chern::{derive_a, verify_chern};
use crate::corr::model::{build_model, ChowModel, Ranks};
use crate::corr::verify::{
    derive_i2_action, derive_operator_relations, verify_action16, verify_eigenprojectors,
    verify_fourier, verify_intertwining, verify_key_identity_on_model, verify_minpoly,
    verify_phi_of_o, verify_simple_terms, voisin_alpha, CharacterTable, MinpolyTarget,
};
use crate::motive::{
    assemble_ck, verify_ck, verify_murre, verify_pi_tr_relations, verify_random_lifts, CkParams,
};
use crate::surface::{
    all_lines, augmented_secant_cycle, combination_class, disjoint_pairs, enumerate_triangles,
    find_triangle_partition, golden_certificate, secant_lines, verify_pair_decomposition,
    SurfaceClass,
};
use crate::taut::cylinder_table;

use super::eval::Evaluator;

pub const BUILTIN_REGISTRY: &str = include_str!("../../identities.toml");

pub const REPORT_SCHEMA: &str = include_str!("../../schema/report.schema.json");

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub name: String,
    pub anchor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op: Option<String>,
    #[serde(default = "default_status")]
    pub expected_status: Status,
}

fn default_status() -> Status {
    Status::Pass
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegistryError {
    #[error("cannot read registry: {0}")]
    Toml(String),
    #[error("duplicate identity name {0}")]
    Duplicate(String),
    #[error("identity {0} needs either expr and expected, or op")]
    Malformed(String),
    #[error("identity {name} refers to unknown check {op}")]
    UnknownOp { name: String, op: String },
    #[error("identity name {0} is not kebab-case")]
    BadName(String),
    #[error("no identity matches {0}")]
    NoMatch(String),
    #[error("bad pattern {0}")]
    BadPattern(String),
}

#[derive(Debug, Deserialize)]
struct RegistryFile {
    #[serde(default)]
    identity: Vec<IdentityRecord>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Registry {
    pub records: Vec<IdentityRecord>,
}

fn is_kebab(s: &str) -> bool {
    !s.is_empty()
        && !s.starts_with('-')
        && !s.ends_with('-')
        && !s.contains("--")
        && s.chars()
            .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-')
}

impl Registry {
    pub fn builtin() -> Self {
        Self::from_toml(BUILTIN_REGISTRY).expect("built-in registry is valid")
    }

    pub fn from_toml(text: &str) -> Result<Self, RegistryError> {
        let file: RegistryFile =
            toml::from_str(text).map_err(|e| RegistryError::Toml(e.to_string()))?;
        let mut reg = Registry::default();
        for r in file.identity {
            reg.add(r)?;
        }
        Ok(reg)
    }

    /// Adds a record after validating it.
    pub fn add(&mut self, r: IdentityRecord) -> Result<(), RegistryError> {
        if !is_kebab(&r.name) {
            return Err(RegistryError::BadName(r.name));
        }
        if self.records.iter().any(|x| x.name == r.name) {
            return Err(RegistryError::Duplicate(r.name));
        }
        match (&r.expr, &r.expected, &r.op) {
            (Some(_), Some(_), None) => {}
            (None, None, Some(op)) => {
                if !OPS.contains(&op.as_str()) {
                    return Err(RegistryError::UnknownOp {
                        name: r.name,
                        op: op.clone(),
                    });
                }
            }
            _ => return Err(RegistryError::Malformed(r.name)),
        }
        self.records.push(r);
        self.records.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(())
    }

    pub fn extend_from_toml(&mut self, text: &str) -> Result<(), RegistryError> {
        for r in Self::from_toml(text)?.records {
            self.add(r)?;
        }
        Ok(())
    }

    /// Records whose name matches `pattern`, sorted by name.
    pub fn select(&self, pattern: Option<&str>) -> Result<Vec<&IdentityRecord>, RegistryError> {
        let Some(p) = pattern else {
            return Ok(self.records.iter().collect());
        };
        let glob = glob::Pattern::new(p).map_err(|e| RegistryError::BadPattern(e.to_string()))?;
        let out: Vec<_> = self
            .records
            .iter()
            .filter(|r| glob.matches(&r.name))
            .collect();
        if out.is_empty() {
            return Err(RegistryError::NoMatch(p.to_string()));
        }
        Ok(out)
    }
}

/// Settings shared by all checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// number of random rank tuples in sweeps
    pub sweep: usize,
    /// number of random matrices lifted
    pub lifts: usize,
    /// model used by single-model checks
    pub ranks: Ranks,
    pub ck: CkParams,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            sweep: 50,
            lifts: 100,
            ranks: Ranks::new(2, 1, 2, 1),
            ck: CkParams::default(),
        }
    }
}

/// Names of the built-in checks.
pub const OPS: &[&str] = &[
    "cylinder-table",
    "surface-lines",
    "surface-triangles",
    "surface-secants",
    "surface-partition",
    "surface-certificate",
    "surface-all-pairs",
    "chern-expansion",
    "chern-derive-a",
    "minpoly-ch0",
    "minpoly-ch1",
    "minpoly-ch2",
    "minpoly-ch2-push",
    "action16",
    "eigenprojectors",
    "fourier",
    "intertwining",
    "simple-terms",
    "key-identity-model",
    "i2-action",
    "phi-of-o",
    "voisin-alpha",
    "operator-derivation",
    "pi-tr-relations",
    "beilinson-lift",
    "ck-assembly",
    "murre-d",
];

/// Rank tuples with every block nonempty, then tuples that may have empty
/// blocks, drawn from `seed`.
pub fn rank_sweep(seed: u64, count: usize) -> Vec<Ranks> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..count {
        let r = |rng: &mut StdRng| rng.random_range(1..=4usize);
        out.push(Ranks::new(
            r(&mut rng),
            r(&mut rng),
            r(&mut rng),
            r(&mut rng),
        ));
    }
    for _ in 0..count / 2 {
        let r = |rng: &mut StdRng| rng.random_range(0..=3usize);
        out.push(Ranks::new(
            r(&mut rng),
            r(&mut rng),
            r(&mut rng),
            r(&mut rng),
        ));
    }
    out
}

/// Eigenvalues of a target when every block is present.
pub fn full_roots(target: MinpolyTarget) -> &'static [i64] {
    match target {
        MinpolyTarget::PullCh2 => &[4, -2],
        MinpolyTarget::PullCh1 => &[4, -14],
        MinpolyTarget::PullCh0 => &[16, -8, 4],
        MinpolyTarget::PushCh2 => &[4, -8],
    }
}

/// Literal minimal polynomial of a target when every block is present.
pub fn full_minpoly(target: MinpolyTarget) -> GradedPoly {
    GradedPoly::from_roots(
        "x",
        &full_roots(target)
            .iter()
            .map(|&r| int(r))
            .collect::<Vec<_>>(),
    )
}

fn minpoly_sweep(cfg: &SuiteConfig, target: MinpolyTarget) -> Result<Report, String> {
    let mut report = Report::new();
    let mut full = 0;
    let mut failures = Vec::new();
    for ranks in rank_sweep(cfg.seed, cfg.sweep) {
        let model = build_model(ranks);
        let r = verify_minpoly(&model, target).map_err(|e| e.to_string())?;
        let mut ok = r.all_hold();
        if target.all_blocks_present(&model) {
            full += 1;
            let found = crate::algebra::minimal_polynomial(&target.matrix(&model))
                .map_err(|e| e.to_string())?;
            ok &= found == full_minpoly(target);
        }
        if !ok {
            failures.push(format!("{ranks:?}: {}", r.summary()));
        }
    }
    report.check(
        format!("minimal polynomial of {target} over the sweep"),
        failures.is_empty() && full >= cfg.sweep,
        if failures.is_empty() {
            format!(
                "{} (roots {:?}) on {full} full tuples",
                full_minpoly(target),
                full_roots(target)
            )
        } else {
            failures.join("; ")
        },
    );
    Ok(report)
}

fn model_sweep(
    cfg: &SuiteConfig,
    f: impl Fn(&ChowModel) -> Result<Report, String>,
) -> Result<Report, String> {
    let mut report = Report::new();
    let mut models = vec![build_model(cfg.ranks)];
    models.extend(
        rank_sweep(cfg.seed, cfg.sweep.min(10))
            .into_iter()
            .map(build_model),
    );
    let mut notes = BTreeSet::new();
    let mut failures = Vec::new();
    for m in &models {
        let r = f(m)?;
        notes.extend(r.notes.iter().cloned());
        let first = r
            .failures()
            .next()
            .map(|c| format!("{:?}: {}: {}", m.ranks, c.name, c.witness));
        failures.extend(first);
    }
    report.check(
        format!("{} models", models.len()),
        failures.is_empty(),
        if failures.is_empty() {
            "all checks hold".to_string()
        } else {
            failures.join("; ")
        },
    );
    report.notes.extend(notes);
    Ok(report)
}

fn surface_lines() -> Report {
    let mut r = Report::new();
    let lines = all_lines();
    r.check_eq("number of lines", &lines.len(), &27);
    let degrees: BTreeSet<usize> = lines
        .iter()
        .map(|l| lines.iter().filter(|m| *m != l && l.meets(m)).count())
        .collect();
    r.check(
        "each line meets exactly 10 others",
        degrees == BTreeSet::from([10]),
        format!("{degrees:?}"),
    );
    let classes_ok = lines
        .iter()
        .all(|l| l.class().self_intersection() == -1 && l.class().degree() == 1);
    r.check("each line has L^2 = -1 and degree 1", classes_ok, "");
    r
}

fn surface_secants() -> Result<Report, String> {
    let mut r = Report::new();
    let pairs = disjoint_pairs();
    let three_h = 3 * SurfaceClass::hyperplane();
    let mut bad = Vec::new();
    for (x, y) in &pairs {
        let s = secant_lines(*x, *y).map_err(|e| e.to_string())?;
        let cyc = augmented_secant_cycle(*x, *y).map_err(|e| e.to_string())?;
        if s.len() != 5 || combination_class(&cyc) != three_h {
            bad.push(format!("({x}, {y})"));
        }
    }
    r.check(
        format!("{} disjoint pairs have 5 secants and class 3H", pairs.len()),
        bad.is_empty(),
        bad.join(", "),
    );
    Ok(r)
}

fn surface_partition() -> Report {
    let mut r = Report::new();
    let part = find_triangle_partition();
    let covered: BTreeSet<_> = part.iter().flat_map(|t| t.lines).collect();
    r.check(
        "nine triangles partition the 27 lines",
        part.len() == 9 && covered.len() == 27 && part.iter().all(|t| t.is_valid()),
        part.iter()
            .map(|t| format!("{}", t))
            .collect::<Vec<_>>()
            .join(" "),
    );
    r
}

fn surface_certificate() -> Report {
    let mut r = Report::new();
    let cert = golden_certificate();
    r.check_eq("number of triangles", &cert.terms.len(), &7);
    r.check(
        "triangles are valid",
        cert.terms.iter().all(|(t, _)| t.is_valid()),
        "",
    );
    r.check(
        "expansion equals 2x + 2y + secants symbol by symbol",
        cert.expand() == cert.target,
        "",
    );
    r
}

fn surface_all_pairs() -> Result<Report, String> {
    let mut r = Report::new();
    let pairs = disjoint_pairs();
    let results: Vec<_> = pairs
        .par_iter()
        .map(|(x, y)| (*x, *y, verify_pair_decomposition(*x, *y)))
        .collect();
    let mut bad = Vec::new();
    let mut searched = 0;
    for (x, y, res) in results {
        match res {
            Ok(c) if c.is_valid() => searched += usize::from(!c.from_fixture),
            Ok(_) => bad.push(format!("({x}, {y}) invalid certificate")),
            Err(e) => bad.push(format!("({x}, {y}): {e}")),
        }
    }
    r.check(
        format!("{} pairs decompose into triangles", pairs.len()),
        bad.is_empty(),
        if bad.is_empty() {
            format!("{searched} found by search")
        } else {
            bad.join("; ")
        },
    );
    Ok(r)
}

fn cylinder() -> Result<Report, String> {
    let mut r = Report::new();
    let table = cylinder_table().map_err(|e| e.to_string())?;
    r.check_eq("number of entries", &table.len(), &16);
    for e in table {
        r.check(
            e.label.clone(),
            e.holds(),
            format!("{} vs {}", e.computed, e.expected),
        );
    }
    Ok(r)
}

fn run_op(op: &str, cfg: &SuiteConfig) -> Result<Report, String> {
    let s = |e: &dyn std::fmt::Display| e.to_string();
    let model = build_model(cfg.ranks);
    match op {
        "cylinder-table" => cylinder(),
        "surface-lines" => Ok(surface_lines()),
        "surface-triangles" => {
            let mut r = Report::new();
            let t = enumerate_triangles();
            r.check_eq("number of triangles", &t.len(), &45);
            Ok(r)
        }
        "surface-secants" => surface_secants(),
        "surface-partition" => Ok(surface_partition()),
        "surface-certificate" => Ok(surface_certificate()),
        "surface-all-pairs" => surface_all_pairs(),
        "chern-expansion" => verify_chern().map_err(|e| s(&e)),
        "chern-derive-a" => {
            let d = derive_a().map_err(|e| s(&e))?;
            let mut r = Report::new();
            r.check_eq("a", &d.a, &int(-2));
            r.check_eq(
                "phi^* g coefficient",
                &d.coefficient.to_string(),
                &"-3*a + 1".to_string(),
            );
            Ok(r)
        }
        "minpoly-ch0" => minpoly_sweep(cfg, MinpolyTarget::PullCh0),
        "minpoly-ch1" => minpoly_sweep(cfg, MinpolyTarget::PullCh1),
        "minpoly-ch2" => minpoly_sweep(cfg, MinpolyTarget::PullCh2),
        "minpoly-ch2-push" => minpoly_sweep(cfg, MinpolyTarget::PushCh2),
        "action16" => model_sweep(cfg, |m| Ok(verify_action16(m))),
        "eigenprojectors" => model_sweep(cfg, |m| verify_eigenprojectors(m).map_err(|e| s(&e))),
        "fourier" => model_sweep(cfg, |m| Ok(verify_fourier(m))),
        "intertwining" => model_sweep(cfg, |m| Ok(verify_intertwining(m))),
        "simple-terms" => model_sweep(cfg, |m| verify_simple_terms(m).map_err(|e| s(&e))),
        "key-identity-model" => {
            model_sweep(cfg, |m| verify_key_identity_on_model(m).map_err(|e| s(&e)))
        }
        "i2-action" => {
            let (k, mut r) = derive_i2_action(&model).map_err(|e| s(&e))?;
            r.check_eq("(I_2)_* coefficient at a = -2", &k, &int(5));
            Ok(r)
        }
        "phi-of-o" => verify_phi_of_o().map(|(_, r)| r).map_err(|e| s(&e)),
        "voisin-alpha" => {
            let v = voisin_alpha(&CharacterTable::default()).map_err(|e| s(&e))?;
            let mut r = Report::new();
            r.check_eq("alpha", &v.alpha, &int(2));
            r.check_eq(
                "Gamma_1",
                &v.gamma1.to_string(),
                &"g1^2 + g1*g2 + g2^2".to_string(),
            );
            Ok(r)
        }
        "operator-derivation" => derive_operator_relations()
            .map(|d| d.report())
            .map_err(|e| s(&e)),
        "pi-tr-relations" => verify_pi_tr_relations().map_err(|e| s(&e)),
        "beilinson-lift" => verify_random_lifts(cfg.seed, cfg.lifts).map_err(|e| s(&e)),
        "ck-assembly" => model_sweep(cfg, |m| {
            let ck = assemble_ck(m, cfg.ck);
            verify_ck(m, &ck).map_err(|e| s(&e))
        }),
        "murre-d" => {
            let mut r = Report::new();
            for n in [0, 2] {
                let m = build_model(Ranks::new(cfg.ranks.m, n, cfg.ranks.p, cfg.ranks.q));
                r.extend(verify_murre(&m, cfg.ck).prefixed(&format!("n={n}")));
            }
            Ok(r)
        }
        other => Err(format!("unknown check {other}")),
    }
}

fn run_eval(ev: &Evaluator, expr: &str, expected: &str) -> Result<Report, String> {
    let mut r = Report::new();
    let got = ev.eval_str(expr).map_err(|e| e.to_string())?;
    let want = ev.eval_str(expected).map_err(|e| e.to_string())?;
    r.check(
        format!("{expr} = {expected}"),
        ev.values_equal(&got, &want),
        format!("{got}"),
    );
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub paper_ref: String,
    pub status: Status,
    pub witness: String,
    pub millis: u64,
    #[serde(skip)]
    pub expected_status: Status,
}

impl SuiteResult {
    pub fn as_expected(&self) -> bool {
        self.status == self.expected_status
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub version: String,
    pub seed: u64,
    pub results: Vec<SuiteResult>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.as_expected())
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }
}

pub fn run_record(rec: &IdentityRecord, cfg: &SuiteConfig, ev: &Evaluator) -> SuiteResult {
    let start = Instant::now();
    let outcome = match (&rec.expr, &rec.expected, &rec.op) {
        (Some(e), Some(x), _) => run_eval(ev, e, x),
        (_, _, Some(op)) => run_op(op, cfg),
        _ => Err("malformed record".to_string()),
    };
    let (status, witness) = match outcome {
        Ok(r) if r.all_hold() => (Status::Pass, r.summary()),
        Ok(r) => (Status::Fail, r.summary()),
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    SuiteResult {
        name: rec.name.clone(),
        paper_ref: rec.anchor.clone(),
        status,
        witness,
        millis: start.elapsed().as_millis() as u64,
        expected_status: rec.expected_status,
    }
}

/// Runs every record matching `filter` in parallel; results are sorted by
/// name.
pub fn run_suite(
    registry: &Registry,
    filter: Option<&str>,
    cfg: &SuiteConfig,
) -> Result<SuiteReport, RegistryError> {
    let selected = registry.select(filter)?;
    let mut results: Vec<SuiteResult> = selected
        .par_iter()
        .map_init(
            || Evaluator::new().expect("operator rules derive"),
            |ev, rec| run_record(rec, cfg, ev),
        )
        .collect();
    results.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(SuiteReport {
        version: REPORT_VERSION.to_string(),
        seed: cfg.seed,
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_loads_and_filters() {
        let reg = Registry::builtin();
        assert_eq!(reg.select(Some("minpoly-*")).unwrap().len(), 4);
        assert!(matches!(
            reg.select(Some("nope-*")),
            Err(RegistryError::NoMatch(_))
        ));
    }

    #[test]
    fn validation() {
        let bad = "[[identity]]\nname = \"x\"\nanchor = \"\"\nop = \"nothing\"\n";
        assert!(matches!(
            Registry::from_toml(bad),
            Err(RegistryError::UnknownOp { .. })
        ));
        let dup =
            "[[identity]]\nname = \"a\"\nanchor = \"\"\nexpr = \"g\"\nexpected = \"g\"\n".repeat(2);
        assert!(matches!(
            Registry::from_toml(&dup),
            Err(RegistryError::Duplicate(_))
        ));
        assert!(!is_kebab("Bad_Name"));
    }
}
