use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use fano_core::algebra::minimal_polynomial;
use fano_core::corr::model::{build_model, Ranks};
use fano_core::corr::verify::MinpolyTarget;
use fano_core::dsl::registry::{full_minpoly, SuiteConfig};
use fano_core::dsl::{run_suite, Evaluator, Registry};
use fano_core::surface::{
    all_lines, disjoint_pairs, enumerate_lines, enumerate_triangles, find_triangle_partition,
    secant_lines, verify_pair_decomposition, LineLabel,
};
use fano_core::taut::cylinder_table;

/// Exact verifier for the cycle identities on the Fano variety of lines.
#[derive(Parser)]
#[command(name = "fano", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity suite.
    Verify {
        /// only identities whose name matches this glob
        #[arg(long)]
        only: Option<String>,
        /// write the JSON report here (`-` for stdout)
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// extra identities, in the same TOML format as the built-in file
        #[arg(long)]
        registry: Option<PathBuf>,
    },
    /// Evaluate an expression.
    Eval { expr: String },
    /// Line, triangle and certificate data for the cubic surface, as JSON.
    Surface(SurfaceArgs),
    /// Tautological products and cylinder maps, as JSON.
    Tables,
    /// Minimal polynomial of phi on a grade of the block model.
    Minpoly {
        /// ch0, ch1, ch2 or ch2-push
        grade: String,
        /// block ranks m n p q
        #[arg(long, num_args = 4, value_names = ["M", "N", "P", "Q"])]
        ranks: Option<Vec<usize>>,
    },
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct SurfaceArgs {
    #[arg(long)]
    lines: bool,
    #[arg(long)]
    triangles: bool,
    #[arg(long)]
    partition: bool,
    /// two disjoint lines, by label (`E1`, `L12`, `C3`) or by index 0..27
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    pair: Option<Vec<String>>,
}

/// Failure kinds mapped to exit codes.
enum Failure {
    Verification(String),
    Usage(String),
}

fn print_json(v: &Json) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json"));
}

fn line_arg(s: &str) -> Result<LineLabel, Failure> {
    if let Ok(i) = s.parse::<usize>() {
        return all_lines()
            .get(i)
            .copied()
            .ok_or_else(|| Failure::Usage(format!("line index {i} out of range")));
    }
    s.parse().map_err(|e| Failure::Usage(format!("{e}")))
}

fn verify(
    only: Option<String>,
    json_out: Option<PathBuf>,
    seed: u64,
    extra: Option<PathBuf>,
) -> Result<(), Failure> {
    let mut registry = Registry::builtin();
    if let Some(path) = extra {
        let text = fs::read_to_string(&path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        registry
            .extend_from_toml(&text)
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let cfg = SuiteConfig {
        seed,
        ..SuiteConfig::default()
    };
    let report =
        run_suite(&registry, only.as_deref(), &cfg).map_err(|e| Failure::Usage(e.to_string()))?;
    let text = serde_json::to_string_pretty(&report).expect("json");
    let to_stdout = json_out.as_ref().is_some_and(|p| p.as_os_str() == "-");
    let mut out = std::io::stdout().lock();
    if !to_stdout {
        for r in &report.results {
            let mark = if r.as_expected() { "ok  " } else { "FAIL" };
            let _ = writeln!(
                out,
                "{mark} {:<22} {:>6}ms  {}",
                r.name, r.millis, r.witness
            );
        }
        let passed = report.results.iter().filter(|r| r.as_expected()).count();
        let _ = writeln!(
            out,
            "{passed}/{} identities as expected",
            report.results.len()
        );
    }
    match json_out {
        Some(_) if to_stdout => {
            let _ = writeln!(out, "{text}");
        }
        Some(p) => {
            fs::write(&p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?
        }
        None => {}
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::Verification("some identities failed".into()))
    }
}

fn surface(args: SurfaceArgs) -> Result<(), Failure> {
    let out = if args.triangles {
        json!(enumerate_triangles())
    } else if args.partition {
        json!(find_triangle_partition())
    } else if let Some(pair) = args.pair {
        let (x, y) = (line_arg(&pair[0])?, line_arg(&pair[1])?);
        let secants = secant_lines(x, y).map_err(|e| Failure::Usage(e.to_string()))?;
        let cert = verify_pair_decomposition(x, y).map_err(|e| Failure::Usage(e.to_string()))?;
        json!({ "secants": secants, "certificate": cert, "valid": cert.is_valid() })
    } else {
        let lines: Vec<Json> = enumerate_lines()
            .into_iter()
            .map(|(l, class)| {
                let meets: Vec<LineLabel> = all_lines()
                    .into_iter()
                    .filter(|m| *m != l && l.meets(m))
                    .collect();
                json!({ "label": l, "class": class, "meets": meets })
            })
            .collect();
        json!({ "lines": lines, "disjoint_pairs": disjoint_pairs().len() })
    };
    print_json(&out);
    Ok(())
}

const TABLE_EXPRS: &[&str] = &[
    "g^4",
    "c^2",
    "g^2 * c",
    "g * Cx",
    "((1/3)*(g^2 - c))^2",
    "push(I, o)",
    "push(Gphi, o)",
    "pull(Gphi, o)",
    "g^2 * S[l]",
    "Phi(h)",
    "Phi(h^4)",
];

fn tables() -> Result<(), Failure> {
    let ev = Evaluator::new().map_err(|e| Failure::Verification(e.to_string()))?;
    let mut products = Vec::new();
    for src in TABLE_EXPRS {
        let v = ev
            .eval_str(src)
            .map_err(|e| Failure::Verification(e.to_string()))?;
        products.push(json!({ "expr": src, "value": v.to_string() }));
    }
    let cylinder: Vec<Json> = cylinder_table()
        .map_err(|e| Failure::Verification(e.to_string()))?
        .into_iter()
        .map(|e| {
            json!({
                "entry": e.label,
                "computed": e.computed.to_string(),
                "expected": e.expected.to_string(),
                "holds": e.holds(),
            })
        })
        .collect();
    print_json(&json!({ "products": products, "cylinder": cylinder }));
    Ok(())
}

fn minpoly(grade: &str, ranks: Option<Vec<usize>>) -> Result<(), Failure> {
    let target = MinpolyTarget::from_name(grade).ok_or_else(|| {
        Failure::Usage(format!(
            "unknown grade {grade}; use ch0, ch1, ch2 or ch2-push"
        ))
    })?;
    let ranks = match ranks.as_deref() {
        Some([m, n, p, q]) => Ranks::new(*m, *n, *p, *q),
        _ => SuiteConfig::default().ranks,
    };
    let model = build_model(ranks);
    let found = minimal_polynomial(&target.matrix(&model))
        .map_err(|e| Failure::Verification(e.to_string()))?;
    let full = target.all_blocks_present(&model);
    print_json(&json!({
        "grade": target.name(),
        "ranks": [ranks.m, ranks.n, ranks.p, ranks.q],
        "minimal_polynomial": found.to_string(),
        "all_blocks_present": full,
    }));
    if full && found != full_minpoly(target) {
        return Err(Failure::Verification(format!(
            "expected {}",
            full_minpoly(target)
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify {
            only,
            json,
            seed,
            registry,
        } => verify(only, json, seed, registry),
        Command::Eval { expr } => {
            let v = Evaluator::new()
                .and_then(|ev| ev.eval_str(&expr))
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let _ = writeln!(std::io::stdout(), "{v}");
            Ok(())
        }
        Command::Surface(args) => surface(args),
        Command::Tables => tables(),
        Command::Minpoly { grade, ranks } => minpoly(&grade, ranks),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(m)) => {
            eprintln!("fano: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("fano: {m}");
            ExitCode::from(2)
        }
    }
}
