use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use sa_core::io::{self, parse_subset, to_json, CheckConfig, Structure};
use sa_core::lattice::{enumerate_sa, enumerate_sigma_sa, sa_between, SpineSource};
use sa_core::{
    halo, is_additive_spine, lattice_to_dot, run_checks, CheckReport, FiniteMonoid, Limits,
    MatrixSemiring, Module, MonoidSemiring, Semiring, Status, SuiteOptions,
};
use serde_json::json;

/// Finite semirings, halos, additive spines and SA-submodules.
#[derive(Parser)]
#[command(name = "sa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a built-in semiring as JSON.
    Builtin {
        #[command(subcommand)]
        kind: Builtin,
        /// Write to a file instead of stdout.
        #[arg(long, short, global = true)]
        output: Option<PathBuf>,
    },
    /// Load a semiring, module or monoid and run its axiom checks.
    Verify { file: PathBuf },
    /// Halo of a subset of a module (a semiring file means its regular module).
    Halo {
        module: PathBuf,
        #[arg(long, default_value = "")]
        set: String,
        #[arg(long)]
        witnesses: bool,
    },
    /// Whether a subset is an additive spine; exits 1 when it is not.
    SpineCheck {
        module: PathBuf,
        #[arg(long, default_value = "")]
        set: String,
    },
    /// Whether a subset is a monoid spine; exits 1 when it is not.
    MonoidSpineCheck {
        monoid: PathBuf,
        #[arg(long, default_value = "")]
        set: String,
    },
    /// SA-submodules generated from a spine, or from M·S.
    Lattice {
        module: PathBuf,
        #[arg(long)]
        spine: Option<String>,
        /// Generators S; used with --semiring-spine instead of --spine.
        #[arg(long)]
        gens: Option<String>,
        #[arg(long)]
        semiring_spine: Option<String>,
        /// Report sums of SA-submodules instead.
        #[arg(long)]
        sigma: bool,
        #[arg(long, value_enum, default_value_t = LatticeFormat::Json)]
        out: LatticeFormat,
    },
    /// SA-submodules W with W ∩ V0 = W0, against the bound 2^(|M||S|).
    Between {
        module: PathBuf,
        /// Generators of V0.
        #[arg(long, default_value = "")]
        v0: String,
        /// Generators of W0.
        #[arg(long, default_value = "")]
        w0: String,
        #[arg(long)]
        gens: String,
        /// Spine M of the semiring; defaults to {1}.
        #[arg(long)]
        semiring_spine: Option<String>,
        /// Spine used to enumerate SA(V); defaults to M·S.
        #[arg(long)]
        spine: Option<String>,
    },
    /// Run the theorem suite on the zoo, or on one module with --config.
    Check {
        module: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated theorem ids.
        #[arg(long)]
        theorems: Option<String>,
        /// Include per-theorem wall-clock times (reports stop being reproducible).
        #[arg(long)]
        timings: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        /// Print the theorem registry and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum Builtin {
    Boolean,
    /// {0, 1, ..., k} with sums and products capped at k.
    NatTrunc {
        k: usize,
    },
    /// {-inf, 0, ..., k} under (max, +) capped at k.
    MaxplusTrunc {
        k: usize,
    },
    /// n × n matrices over a semiring file.
    Matrix {
        n: usize,
        base: PathBuf,
    },
    MonoidSemiring {
        base: PathBuf,
        monoid: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let limits = Limits::from_env();
    match cli.command {
        Command::Builtin { kind, output } => {
            let r = builtin(kind, &limits)?;
            let text = io::emit_semiring(&r);
            match output {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { file } => {
            let s = io::load_structure(&file, &limits)?;
            let (size, verification) = match &s {
                Structure::Semiring(r) => (r.size(), Some(r.verification())),
                Structure::Module(v) => (v.size(), Some(v.verification())),
                Structure::Monoid(m) => (m.size(), None),
            };
            let mut out = json!({"kind": s.kind(), "size": size, "valid": true});
            if let Some(v) = verification {
                out["verification"] = serde_json::to_value(v)?;
            }
            print!("{}", to_json(&out));
            Ok(ExitCode::SUCCESS)
        }
        Command::Halo {
            module,
            set,
            witnesses,
        } => {
            let v = load_module(&module, &limits)?;
            let s = parse_subset(&set, v.size())?;
            let h = halo(&v, &s);
            let mut out = json!({"members": h.members});
            if witnesses {
                out["witnesses"] = serde_json::to_value(&h.witnesses)?;
            }
            print!("{}", to_json(&out));
            Ok(ExitCode::SUCCESS)
        }
        Command::SpineCheck { module, set } => {
            let v = load_module(&module, &limits)?;
            let s = parse_subset(&set, v.size())?;
            let check = is_additive_spine(&v, &s);
            let h = halo(&v, &s);
            print!(
                "{}",
                to_json(&json!({
                    "is_spine": check.is_spine,
                    "uncovered": check.uncovered,
                    "members": h.members,
                    "witnesses": h.witnesses,
                }))
            );
            Ok(exit_for(check.is_spine))
        }
        Command::MonoidSpineCheck { monoid, set } => {
            let m = io::load_monoid(&monoid)?;
            let s = parse_subset(&set, m.size())?;
            let violation = m.monoid_spine_violation(&s);
            print!(
                "{}",
                to_json(&json!({"is_monoid_spine": violation.is_none(), "violation": violation}))
            );
            Ok(exit_for(violation.is_none()))
        }
        Command::Lattice {
            module,
            spine,
            gens,
            semiring_spine,
            sigma,
            out,
        } => {
            let v = load_module(&module, &limits)?;
            let source = spine_source(
                &v,
                spine.as_deref(),
                gens.as_deref(),
                semiring_spine.as_deref(),
            )?;
            let mut lattice = enumerate_sa(&v, &source, &limits)?;
            if sigma {
                lattice = enumerate_sigma_sa(&v, &lattice);
            }
            match out {
                LatticeFormat::Dot => print!("{}", lattice_to_dot(&lattice)),
                LatticeFormat::Json => print!("{}", to_json(&lattice)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Between {
            module,
            v0,
            w0,
            gens,
            semiring_spine,
            spine,
        } => {
            let v = load_module(&module, &limits)?;
            let r = v.semiring();
            let s = parse_subset(&gens, v.size())?;
            let m = match &semiring_spine {
                Some(text) => parse_subset(text, r.size())?,
                None => sa_core::Subset::singleton(r.size(), r.one()),
            };
            let source = match &spine {
                Some(t) => SpineSource::Spine(parse_subset(t, v.size())?),
                None => SpineSource::Generators {
                    semiring_spine: m.clone(),
                    generators: full_generators(&v, &s),
                },
            };
            let sa = enumerate_sa(&v, &source, &limits)?;
            let v0 = v.generated_submodule(&parse_subset(&v0, v.size())?);
            let w0 = v.generated_submodule(&parse_subset(&w0, v.size())?);
            let report = sa_between(&v, &sa, &v0, &w0, &s, &m)?;
            let mut out = serde_json::to_value(&report)?;
            out["size_bound"] = json!(report.size_bound().to_string());
            out["chain_bound"] = json!(report.chain_bound());
            out["within_bounds"] = json!(report.within_bounds());
            print!("{}", to_json(&out));
            Ok(exit_for(report.within_bounds()))
        }
        Command::Check {
            module,
            config,
            theorems,
            timings,
            format,
            list,
        } => {
            if list {
                for id in sa_core::THEOREMS {
                    println!("{id}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let config = match &config {
                Some(path) => io::load_config(path)?,
                None => CheckConfig::default(),
            };
            let instances = match &module {
                Some(path) => {
                    if config.generators.is_none() {
                        bail!(
                            "checking a module needs --config with generators and semiring_spine"
                        );
                    }
                    vec![io::instance_from_config(
                        load_module(path, &limits)?,
                        &config,
                    )?]
                }
                None => select_instances(&config, &limits)?,
            };
            let filter = match theorems {
                Some(text) => Some(
                    text.split(',')
                        .map(|t| t.trim().to_string())
                        .filter(|t| !t.is_empty())
                        .collect(),
                ),
                None => config.theorems.clone(),
            };
            let options = SuiteOptions {
                limits,
                theorems: filter,
                timings,
            };
            let reports = run_checks(&instances, &options)?;
            match format {
                ReportFormat::Json => print!("{}", to_json(&reports)),
                ReportFormat::Text => print!("{}", render_text(&reports)),
            }
            Ok(exit_for(reports.iter().all(CheckReport::passed)))
        }
    }
}

fn exit_for(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn builtin(kind: Builtin, limits: &Limits) -> Result<Semiring> {
    Ok(match kind {
        Builtin::Boolean => Semiring::boolean(),
        Builtin::NatTrunc { k } => Semiring::truncated_naturals_with_limits(k, limits)?,
        Builtin::MaxplusTrunc { k } => Semiring::truncated_maxplus_with_limits(k, limits)?,
        Builtin::Matrix { n, base } => {
            let base = io::load_semiring_with(&base, limits)?;
            let m = MatrixSemiring::with_limits(Arc::new(base), n, limits)?;
            m.semiring().as_ref().clone()
        }
        Builtin::MonoidSemiring { base, monoid } => {
            let base = io::load_semiring_with(&base, limits)?;
            let monoid: FiniteMonoid = io::load_monoid(&monoid)?;
            let ms = MonoidSemiring::with_limits(Arc::new(base), Arc::new(monoid), limits)?;
            ms.semiring().as_ref().clone()
        }
    })
}

/// A module file, or the regular module of a semiring file.
fn load_module(path: &Path, limits: &Limits) -> Result<Module> {
    match io::load_structure(path, limits)? {
        Structure::Module(v) => Ok(v),
        Structure::Semiring(r) => Ok(Module::regular(Arc::new(r))),
        Structure::Monoid(_) => bail!("{} holds a monoid, not a module", path.display()),
    }
}

/// `S` when it generates `V` alone; `between` only needs `V0 + <S> = V`, so
/// fall back to all of `V` for the enumeration spine.
fn full_generators(v: &Module, s: &sa_core::Subset) -> sa_core::Subset {
    if v.generates(s) {
        s.clone()
    } else {
        sa_core::Subset::full(v.size())
    }
}

fn spine_source(
    v: &Module,
    spine: Option<&str>,
    gens: Option<&str>,
    semiring_spine: Option<&str>,
) -> Result<SpineSource> {
    match (spine, gens) {
        (Some(t), None) => Ok(SpineSource::Spine(parse_subset(t, v.size())?)),
        (None, Some(g)) => {
            let r = v.semiring();
            let m = match semiring_spine {
                Some(text) => parse_subset(text, r.size())?,
                None => sa_core::Subset::singleton(r.size(), r.one()),
            };
            Ok(SpineSource::Generators {
                semiring_spine: m,
                generators: parse_subset(g, v.size())?,
            })
        }
        _ => bail!("give exactly one of --spine or --gens"),
    }
}

fn select_instances(config: &CheckConfig, limits: &Limits) -> Result<Vec<sa_core::ZooInstance>> {
    let all = sa_core::zoo::zoo_with_limits(limits)?;
    let Some(names) = &config.instances else {
        return Ok(all);
    };
    let mut out = Vec::new();
    for name in names {
        match all.iter().find(|i| &i.name == name) {
            Some(inst) => out.push(inst.clone()),
            None => bail!("no zoo instance named {name}"),
        }
    }
    Ok(out)
}

/// One line per theorem, rebuilt from the JSON report.
fn render_text(reports: &[CheckReport]) -> String {
    let value = serde_json::to_value(reports).expect("serializable");
    let mut out = String::new();
    for report in value.as_array().into_iter().flatten() {
        writeln!(
            out,
            "{} (|R| = {}, |V| = {}, |SA| = {})",
            report["instance"].as_str().unwrap_or_default(),
            report["semiring_size"],
            report["module_size"],
            report["sa_size"]
        )
        .unwrap();
        for t in report["theorems"].as_array().into_iter().flatten() {
            let status = t["status"].as_str().unwrap_or_default();
            let mut line = format!(
                "  {:<10} {:<7} {:>9} checks",
                t["id"].as_str().unwrap_or_default(),
                status,
                t["checked"]
            );
            if let Some(reason) = t["reason"].as_str() {
                write!(line, "  {reason}").unwrap();
            }
            if let Some(w) = t["witness"].as_str() {
                write!(line, "  witness: {w}").unwrap();
            }
            if let Some(findings) = t["findings"].as_array() {
                write!(line, "  [{} finding(s)]", findings.len()).unwrap();
            }
            writeln!(out, "{line}").unwrap();
        }
    }
    let failed = reports
        .iter()
        .flat_map(|r| &r.theorems)
        .filter(|t| t.status == Status::Fail)
        .count();
    writeln!(out, "{} instance(s), {failed} failure(s)", reports.len()).unwrap();
    out
}
