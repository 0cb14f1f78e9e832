//! `symp`: exact symplectic cohomology on invariant-form models.
//!
//! Verdict-style subcommands exit 0 and put the verdict in the output;
//! nonzero exits signal operational failures (2 for parse/usage
//! problems, 1 for everything else). `validate` additionally exits 1
//! when a model fails its invariants.

mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Zero;

use symp_core::checks::{
    canonical_map_report, check_dd_lambda_lemma, check_lefschetz_decomposition, check_pairing,
    check_strong_lefschetz, CheckReport,
};
use symp_core::engine::{Engine, Kind, OperatorId};
use symp_core::identity::{run_suite, SuiteBackend};
use symp_core::metric::LaplacianKind;
use symp_core::model::{parse_model, render_model, InvariantModel};
use symp_core::parse::parse_form;
use symp_core::scalar::Rat;

use report::{input_hash, CheckEntry, Report, ResultEntry};

#[derive(Parser)]
#[command(
    name = "symp",
    version,
    about = "Exact symplectic cohomology of invariant-form models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a model file and check its invariants.
    Validate {
        /// Model file in the `# symp-model v1` format.
        file: PathBuf,
    },
    /// Compute cohomology dimensions and class representatives.
    Cohomology {
        /// Model file; alternative to --builtin.
        file: Option<PathBuf>,
        /// Built-in model name (see `builtin --list`).
        #[arg(long)]
        builtin: Option<String>,
        /// Comma-separated kinds (d, dl, d+dl, ddl, dcapdl, ph:…) or `all`.
        #[arg(long, default_value = "all")]
        kinds: String,
        /// Replace each kind by its primitive counterpart.
        #[arg(long)]
        primitive: bool,
        /// Also emit harmonic bases (requires a compatible triple).
        #[arg(long)]
        harmonic: bool,
        /// Positive weight for the fourth-order Laplacians, as `p/q`.
        #[arg(long, default_value = "1")]
        lambda: String,
        /// `table` or `json`.
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Run a named theorem-level check.
    Check {
        file: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
        /// ddl-lemma | strong-lefschetz | lefschetz-decomp | canonical-map | pairing
        #[arg(long = "test")]
        test: String,
        /// Kind argument for strong-lefschetz / lefschetz-decomp.
        #[arg(long)]
        kind: Option<String>,
        /// Degree argument for pairing.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Lefschetz-decompose a form over the model's coframe.
    Decompose {
        file: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
        /// The form, e.g. "1 * e1^e2 + 1 * e3^e4".
        #[arg(long)]
        form: String,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Run the seeded operator-identity suites.
    #[command(name = "identity-suite")]
    IdentitySuite {
        /// poly | invariant
        #[arg(long)]
        backend: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
    /// Built-in model catalogue.
    Builtin {
        #[arg(long)]
        list: bool,
    },
}

/// Operational error with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn run(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    // Die quietly on closed pipes instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Cohomology {
            file,
            builtin,
            kinds,
            primitive,
            harmonic,
            lambda,
            format,
        } => cmd_cohomology(file, builtin, &kinds, primitive, harmonic, &lambda, &format),
        Command::Check {
            file,
            builtin,
            test,
            kind,
            degree,
            format,
        } => cmd_check(file, builtin, &test, kind.as_deref(), degree, &format),
        Command::Decompose {
            file,
            builtin,
            form,
            format,
        } => cmd_decompose(file, builtin, &form, &format),
        Command::IdentitySuite {
            backend,
            seed,
            cases,
        } => cmd_identity_suite(&backend, seed, cases),
        Command::Builtin { list } => cmd_builtin(list),
    }
}

/// Loads a model from exactly one of `file` / `--builtin`, returning it
/// with the canonical source text used for hashing.
fn load_model(
    file: Option<PathBuf>,
    builtin: Option<String>,
) -> Result<(InvariantModel, String), Failure> {
    match (file, builtin) {
        (Some(path), None) => {
            let src = fs::read_to_string(&path)
                .map_err(|e| Failure::run(format!("cannot read {}: {e}", path.display())))?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "model".into());
            let model = parse_model(&src, name).map_err(|e| Failure::usage(e.to_string()))?;
            Ok((model, src))
        }
        (None, Some(name)) => {
            let model =
                InvariantModel::builtin(&name).map_err(|e| Failure::usage(e.to_string()))?;
            let src = render_model(&model);
            Ok((model, src))
        }
        (Some(_), Some(_)) => Err(Failure::usage("give either a file or --builtin, not both")),
        (None, None) => Err(Failure::usage("a model file or --builtin is required")),
    }
}

fn parse_lambda(s: &str) -> Result<Rat, Failure> {
    let parse_int = |t: &str| -> Result<BigInt, Failure> {
        t.trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad rational '{s}' for --lambda")))
    };
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if Zero::is_zero(&den) {
                return Err(Failure::usage("--lambda denominator is zero"));
            }
            Rat::new(parse_int(num)?, den)
        }
        None => Rat::from_integer(parse_int(s)?),
    };
    if !num_traits::Signed::is_positive(&value) {
        return Err(Failure::usage("--lambda must be positive"));
    }
    Ok(value)
}

fn expand_kinds(spec: &str, primitive: bool) -> Result<Vec<Kind>, Failure> {
    let base: Vec<Kind> = if spec == "all" {
        Kind::FULL.to_vec()
    } else {
        spec.split(',')
            .map(str::trim)
            .map(|s| Kind::parse(s).ok_or_else(|| Failure::usage(format!("unknown kind '{s}'"))))
            .collect::<Result<_, _>>()?
    };
    if !primitive {
        return Ok(base);
    }
    let mut out = Vec::new();
    for kind in base {
        match kind.primitive_counterpart() {
            Some(p) => out.push(p),
            None if spec == "all" => {} // dl has no primitive counterpart
            None => {
                return Err(Failure::usage(format!(
                    "kind '{}' has no primitive counterpart",
                    kind.id()
                )))
            }
        }
    }
    Ok(out)
}

fn cmd_validate(path: &PathBuf) -> Result<u8, Failure> {
    let src = fs::read_to_string(path)
        .map_err(|e| Failure::run(format!("cannot read {}: {e}", path.display())))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "model".into());
    let model = match parse_model(&src, name) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("parse error: {e}");
            return Ok(2);
        }
    };
    let report = model.validate();
    println!("model: {} (dim {})", model.name(), model.dim());
    for entry in &report.entries {
        let status = if entry.passed { "ok " } else { "FAIL" };
        println!("  [{status}] {}", entry.name);
        if let Some(witness) = &entry.witness {
            println!("         witness: {witness}");
        }
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_cohomology(
    file: Option<PathBuf>,
    builtin: Option<String>,
    kinds_spec: &str,
    primitive: bool,
    harmonic: bool,
    lambda_spec: &str,
    format: &str,
) -> Result<u8, Failure> {
    let (model, src) = load_model(file, builtin)?;
    ensure_valid(&model)?;
    let kinds = expand_kinds(kinds_spec, primitive)?;
    let lambda = parse_lambda(lambda_spec)?;

    let engine = if harmonic {
        Engine::with_triple(&model).map_err(|e| Failure::run(e.to_string()))?
    } else {
        Engine::new(&model).map_err(|e| Failure::run(e.to_string()))?
    };

    let mut rep = Report::new(model.name(), model.dim(), input_hash(src.as_bytes()));
    for kind in &kinds {
        let max_k = if kind.is_primitive() {
            model.half_dim()
        } else {
            model.dim()
        };
        for k in 0..=max_k {
            let coh = engine
                .cohomology(*kind, k, harmonic && *kind != Kind::PhD)
                .map_err(|e| {
                    Failure::run(format!("cohomology {} at degree {k}: {e}", kind.id()))
                })?;
            if harmonic && !kind.is_primitive() {
                verify_laplacian_kernel(&engine, *kind, k, &lambda)?;
            }
            rep.results.push(ResultEntry {
                kind: kind.id().to_string(),
                degree: k,
                dim: coh.dim,
                basis: coh.representatives.iter().map(|f| f.to_string()).collect(),
                harmonic_basis: coh
                    .harmonic
                    .map(|hs| hs.iter().map(|f| f.to_string()).collect()),
            });
        }
    }

    match format {
        "json" => println!("{}", rep.to_json()),
        "table" => print_cohomology_table(&model, &kinds, &rep, harmonic),
        other => return Err(Failure::usage(format!("unknown format '{other}'"))),
    }
    Ok(0)
}

/// Cross-check that the λ-weighted Laplacian kernel equals the harmonic
/// space; the kernel must not depend on λ.
fn verify_laplacian_kernel(
    engine: &Engine,
    kind: Kind,
    k: usize,
    lambda: &Rat,
) -> Result<(), Failure> {
    let lap = match kind {
        Kind::D => LaplacianKind::D,
        Kind::DLambda => LaplacianKind::DLambda,
        Kind::DPlusDLambda => LaplacianKind::DPlusDLambda,
        Kind::DDLambda => LaplacianKind::DDLambda,
        Kind::DCapDLambda => LaplacianKind::DCapDLambda,
        _ => return Ok(()),
    };
    let kernel = engine
        .kernel(&OperatorId::Laplacian(lap, lambda.clone()), k)
        .map_err(|e| Failure::run(e.to_string()))?;
    let harmonic = engine
        .harmonic_space(kind, k)
        .map_err(|e| Failure::run(e.to_string()))?;
    if kernel != harmonic {
        return Err(Failure::run(format!(
            "internal inconsistency: ker Δ_{} at degree {k} with λ={lambda} differs from the harmonic space",
            kind.id()
        )));
    }
    Ok(())
}

fn ensure_valid(model: &InvariantModel) -> Result<(), Failure> {
    let report = model.validate();
    if report.passed() {
        return Ok(());
    }
    let failed: Vec<&str> = report
        .entries
        .iter()
        .filter(|e| !e.passed)
        .map(|e| e.name.as_str())
        .collect();
    Err(Failure::run(format!(
        "model failed validation: {}",
        failed.join("; ")
    )))
}

fn print_cohomology_table(model: &InvariantModel, kinds: &[Kind], rep: &Report, harmonic: bool) {
    println!("model: {} (dim {})", model.name(), model.dim());
    println!("input-hash: {}", rep.input_hash);
    println!();
    println!("dimensions");
    let max_k = model.dim();
    let header: Vec<String> = (0..=max_k).map(|k| format!("k={k}")).collect();
    println!("  {:<10} {}", "kind", header.join("  "));
    for kind in kinds {
        let cells: Vec<String> = (0..=max_k)
            .map(|k| {
                rep.results
                    .iter()
                    .find(|r| r.kind == kind.id() && r.degree == k)
                    .map(|r| format!("{:>3}", r.dim))
                    .unwrap_or_else(|| "  -".to_string())
            })
            .collect();
        println!("  {:<10} {}", kind.label(), cells.join("  "));
    }
    println!();
    println!("bases");
    for entry in &rep.results {
        let kind = Kind::parse(&entry.kind).expect("round-trips");
        let basis = if entry.basis.is_empty() {
            "(none)".to_string()
        } else {
            entry.basis.join("; ")
        };
        println!("  {} k={}: {}", kind.label(), entry.degree, basis);
        if harmonic {
            if let Some(hs) = &entry.harmonic_basis {
                let line = if hs.is_empty() {
                    "(none)".to_string()
                } else {
                    hs.join("; ")
                };
                println!("  {} k={} harmonic: {}", kind.label(), entry.degree, line);
            }
        }
    }
}

fn cmd_check(
    file: Option<PathBuf>,
    builtin: Option<String>,
    test: &str,
    kind: Option<&str>,
    degree: Option<usize>,
    format: &str,
) -> Result<u8, Failure> {
    let (model, src) = load_model(file, builtin)?;
    ensure_valid(&model)?;
    let engine = Engine::new(&model).map_err(|e| Failure::run(e.to_string()))?;

    let parse_kind = |k: Option<&str>| -> Result<Kind, Failure> {
        let spec = k.ok_or_else(|| Failure::usage("this test needs --kind"))?;
        Kind::parse(spec).ok_or_else(|| Failure::usage(format!("unknown kind '{spec}'")))
    };

    let reports: Vec<CheckReport> = match test {
        "ddl-lemma" => vec![check_dd_lambda_lemma(&engine).map_err(run_err)?],
        "strong-lefschetz" => match kind {
            Some(_) => vec![check_strong_lefschetz(&engine, parse_kind(kind)?).map_err(run_err)?],
            None => Kind::FULL
                .iter()
                .map(|k| check_strong_lefschetz(&engine, *k))
                .collect::<Result<_, _>>()
                .map_err(run_err)?,
        },
        "lefschetz-decomp" => {
            let kinds = match kind {
                Some(_) => vec![parse_kind(kind)?],
                None => vec![Kind::DPlusDLambda, Kind::DDLambda, Kind::DCapDLambda],
            };
            kinds
                .into_iter()
                .map(|k| check_lefschetz_decomposition(&engine, k))
                .collect::<Result<_, _>>()
                .map_err(run_err)?
        }
        "canonical-map" => vec![canonical_map_report(&engine).map_err(run_err)?],
        "pairing" => {
            let ks: Vec<usize> = match degree {
                Some(k) => vec![k],
                None => (0..=model.half_dim()).collect(),
            };
            ks.into_iter()
                .map(|k| check_pairing(&engine, k))
                .collect::<Result<_, _>>()
                .map_err(run_err)?
        }
        other => return Err(Failure::usage(format!("unknown test name '{other}'"))),
    };

    let mut rep = Report::new(model.name(), model.dim(), input_hash(src.as_bytes()));
    for r in &reports {
        rep.checks.push(CheckEntry {
            name: r.check_name.clone(),
            verdict: r.verdict.to_string(),
            witnesses: r
                .witnesses
                .iter()
                .map(|w| format!("{}: {}", w.role, w.form))
                .collect(),
            details: r
                .details
                .iter()
                .map(|d| {
                    format!(
                        "degree {}: {} [{}]",
                        d.degree,
                        d.note,
                        if d.passed { "ok" } else { "fail" }
                    )
                })
                .collect(),
        });
    }

    match format {
        "json" => println!("{}", rep.to_json()),
        "table" => {
            println!("model: {} (dim {})", model.name(), model.dim());
            for entry in &rep.checks {
                println!("check: {}", entry.name);
                println!("verdict: {}", entry.verdict);
                for w in &entry.witnesses {
                    println!("  witness {w}");
                }
                for d in &entry.details {
                    println!("  {d}");
                }
            }
            // Pairing matrices are printed in full for inspection.
            if test == "pairing" {
                for r in &reports {
                    if let Some(detail) = r.details.first() {
                        let k = detail.degree;
                        let pairing =
                            symp_core::checks::pairing_matrix(&engine, k).map_err(run_err)?;
                        println!("pairing matrix at degree {k}:");
                        print!("{}", pairing.matrix);
                    }
                }
            }
        }
        other => return Err(Failure::usage(format!("unknown format '{other}'"))),
    }
    Ok(0)
}

fn run_err(e: symp_core::engine::EngineError) -> Failure {
    Failure::run(e.to_string())
}

fn cmd_decompose(
    file: Option<PathBuf>,
    builtin: Option<String>,
    form_src: &str,
    format: &str,
) -> Result<u8, Failure> {
    let (model, src) = load_model(file, builtin)?;
    ensure_valid(&model)?;
    let engine = Engine::new(&model).map_err(|e| Failure::run(e.to_string()))?;
    let form = parse_form(form_src, model.dim()).map_err(|e| Failure::usage(e.to_string()))?;
    if !form.is_homogeneous() {
        return Err(Failure::usage("decompose requires a homogeneous form"));
    }
    let ctx = engine.ctx();
    let comps = ctx
        .lefschetz_decompose(&form)
        .map_err(|e| Failure::run(e.to_string()))?;
    let recomposed = ctx
        .lefschetz_recompose(&comps)
        .map_err(|e| Failure::run(e.to_string()))?;
    let exact = recomposed == form;

    #[derive(serde::Serialize)]
    struct ComponentOut {
        r: usize,
        degree: usize,
        form: String,
        primitive: bool,
    }
    #[derive(serde::Serialize)]
    struct DecomposeOut {
        model: report::ModelMeta,
        version: String,
        #[serde(rename = "inputHash")]
        input_hash: String,
        input: String,
        components: Vec<ComponentOut>,
        recomposes: bool,
    }

    let mut out = DecomposeOut {
        model: report::ModelMeta {
            name: model.name().to_string(),
            dim: model.dim(),
        },
        version: env!("CARGO_PKG_VERSION").to_string(),
        input_hash: input_hash(src.as_bytes()),
        input: form.to_string(),
        components: Vec::new(),
        recomposes: exact,
    };
    for (r, b) in comps.parts() {
        let primitive = ctx.is_primitive(b).unwrap_or(false);
        out.components.push(ComponentOut {
            r: *r,
            degree: comps.degree() - 2 * r,
            form: b.to_string(),
            primitive,
        });
    }

    match format {
        "json" => println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializes")
        ),
        "table" => {
            println!("model: {} (dim {})", model.name(), model.dim());
            println!("input: {} (degree {})", out.input, comps.degree());
            for c in &out.components {
                let tag = if c.primitive {
                    "primitive"
                } else {
                    "NOT PRIMITIVE"
                };
                println!("  r={}: B_{} = {}   [{}]", c.r, c.degree, c.form, tag);
            }
            println!(
                "recomposition: {}",
                if exact { "exact" } else { "MISMATCH" }
            );
        }
        other => return Err(Failure::usage(format!("unknown format '{other}'"))),
    }
    if !exact {
        return Err(Failure::run("recomposition mismatch (internal fault)"));
    }
    Ok(0)
}

fn cmd_identity_suite(backend: &str, seed: u64, cases: usize) -> Result<u8, Failure> {
    let backend = SuiteBackend::parse(backend)
        .ok_or_else(|| Failure::usage(format!("unknown backend '{backend}' (poly|invariant)")))?;
    let report = run_suite(backend, seed, cases);
    print!("{}", report.render());
    Ok(0)
}

fn cmd_builtin(list: bool) -> Result<u8, Failure> {
    if !list {
        return Err(Failure::usage("builtin requires --list"));
    }
    for name in InvariantModel::builtin_names() {
        let model = InvariantModel::builtin(name).expect("catalogue names resolve");
        let structure = if name == "kt" {
            "d e4 = e2^e3"
        } else {
            "abelian"
        };
        println!("{:<8} dim {:<3} {}", name, model.dim(), structure);
    }
    println!("(torusN is accepted for any N >= 1)");
    Ok(0)
}
