use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rumin_core::field::parse_rational;
use rumin_core::report::{check_operator_names, to_latex};
use rumin_core::{
  catalog, run_suite, BuildOptions, ComplexReport, Level, Rational, ResolventRoute, RfAlgebra, RuminComplex, ScalarField,
  CATALOG,
};

#[derive(Parser)]
#[command(name = "rumin", version, about = "Exact Rumin complexes of graded nilpotent Lie algebras")]
struct Cli {
  #[command(subcommand)]
  command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
  Json,
  Latex,
  Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
  Spectral,
  Direct,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
  Fast,
  Full,
}

#[derive(clap::Args)]
struct GroupArgs {
  /// Catalog name or path to a group JSON file
  #[arg(long)]
  group: String,

  /// Parameter binding `name=value`; repeatable
  #[arg(long = "bind", value_name = "PARAM=VALUE")]
  bind: Vec<String>,

  /// Specialize the structure constants and rebuild over the rationals
  #[arg(long)]
  bind_early: bool,

  /// How the resolvent of Box0 is obtained
  #[arg(long, value_enum, default_value = "spectral")]
  resolvent: Route,
}

#[derive(Subcommand)]
enum Command {
  /// Check the Lie algebra axioms, grading and Jacobi identity
  Validate {
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
  },
  /// Build the complex and emit operators
  Compute {
    #[command(flatten)]
    group: GroupArgs,
    /// Operator to emit; repeatable, default all
    #[arg(long = "op")]
    ops: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Directory for the output file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
  },
  /// Build the complex and run the identity suite
  Verify {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, value_enum, default_value = "full")]
    level: LevelArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
  },
  /// List the built-in groups
  Catalog,
}

fn load_group(source: &str) -> Result<RfAlgebra> {
  if CATALOG.contains(&source) {
    return Ok(catalog(source)?);
  }
  let text = fs::read_to_string(source).with_context(|| format!("cannot read group file `{source}`"))?;
  RfAlgebra::from_json_str(&text).with_context(|| format!("cannot load `{source}`"))
}

fn parse_bindings(alg: &RfAlgebra, raw: &[String]) -> Result<BTreeMap<String, Rational>> {
  let mut out = BTreeMap::new();
  for b in raw {
    let Some((name, value)) = b.split_once('=') else { bail!("binding `{b}` is not of the form name=value") };
    let name = name.trim();
    if !alg.parameters().iter().any(|p| p == name) {
      bail!("group `{}` has no parameter `{name}`", alg.name());
    }
    let v = parse_rational(value.trim()).with_context(|| format!("`{value}` is not a rational number"))?;
    out.insert(name.to_string(), v);
  }
  Ok(out)
}

fn emit(out: Option<&Path>, file_name: &str, body: &str) -> Result<()> {
  match out {
    Some(dir) => {
      fs::create_dir_all(dir)?;
      let path = dir.join(file_name);
      fs::write(&path, body).with_context(|| format!("cannot write {}", path.display()))?;
      eprintln!("wrote {}", path.display());
    },
    None => print!("{body}"),
  }
  Ok(())
}

fn extension(format: Format) -> &'static str {
  match format {
    Format::Json => "json",
    Format::Latex => "tex",
    Format::Text => "txt",
  }
}

/// What to do once the complex is built.
enum Job<'a> {
  Compute { ops: &'a [String], format: Format, out: Option<&'a Path> },
  Verify { level: Level, format: Format, out: Option<&'a Path> },
}

fn run_job<F: ScalarField>(
  alg: &rumin_core::GradedLieAlgebra<F>,
  opts: BuildOptions,
  bindings: &BTreeMap<String, Rational>,
  job: &Job,
) -> Result<bool> {
  let cx = RuminComplex::build(alg, opts)?;
  match *job {
    Job::Compute { ops, format, out } => {
      let name = format!("{}.{}", alg.name(), extension(format));
      let body = match format {
        Format::Latex => to_latex(&cx, ops, bindings)?,
        Format::Json => ComplexReport::new(&cx, ops, bindings, Vec::new())?.to_json() + "\n",
        Format::Text => ComplexReport::new(&cx, ops, bindings, Vec::new())?.to_text(),
      };
      emit(out, &name, &body)?;
      Ok(true)
    },
    Job::Verify { level, format, out } => {
      let checks = run_suite(&cx, level);
      let passed = rumin_core::verify::all_passed(&checks);
      let failed = checks.iter().filter(|c| !c.passed).count();
      let body = match format {
        Format::Json => serde_json::to_string_pretty(&checks)? + "\n",
        _ => {
          let mut s: String = checks.iter().map(|c| format!("{c}\n")).collect();
          s.push_str(&format!("{}: {} checks, {failed} failed\n", alg.name(), checks.len()));
          s
        },
      };
      emit(out, &format!("{}-verify.{}", alg.name(), extension(format)), &body)?;
      Ok(passed)
    },
  }
}

fn run_on_group(args: &GroupArgs, job: Job) -> Result<bool> {
  let alg = load_group(&args.group)?;
  let report = alg.validate();
  if !report.valid {
    eprint!("{report}");
    if matches!(job, Job::Verify { .. }) {
      return Ok(false);
    }
    bail!("group `{}` is not a valid graded Lie algebra", alg.name());
  }
  let bindings = parse_bindings(&alg, &args.bind)?;
  let (alg, bindings) =
    if args.bind_early { (alg.specialize(&bindings)?, BTreeMap::new()) } else { (alg, bindings) };
  let opts = BuildOptions {
    resolvent: match args.resolvent {
      Route::Spectral => ResolventRoute::Spectral,
      Route::Direct => ResolventRoute::Direct,
    },
  };
  match alg.to_rational() {
    Some(q) if bindings.is_empty() => run_job(&q, opts, &bindings, &job),
    _ => run_job(&alg, opts, &bindings, &job),
  }
}

fn run(cli: Cli) -> Result<bool> {
  match cli.command {
    Command::Validate { group, format } => {
      let alg = load_group(&group)?;
      let report = alg.validate();
      match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        _ => print!("{report}"),
      }
      Ok(report.valid)
    },
    Command::Compute { group, ops, format, out } => {
      check_operator_names(&ops)?;
      run_on_group(&group, Job::Compute { ops: &ops, format, out: out.as_deref() })
    },
    Command::Verify { group, level, format, out } => {
      let level = match level {
        LevelArg::Fast => Level::Fast,
        LevelArg::Full => Level::Full,
      };
      run_on_group(&group, Job::Verify { level, format, out: out.as_deref() })
    },
    Command::Catalog => {
      for name in CATALOG {
        let alg = catalog(name)?;
        let weights: Vec<String> = alg.weights().iter().map(ToString::to_string).collect();
        let params = if alg.parameters().is_empty() { String::new() } else { format!(" [{}]", alg.parameters().join(", ")) };
        println!("{name:<12} n={} weights=({}){params}", alg.dim(), weights.join(","));
      }
      Ok(true)
    },
  }
}

fn main() -> ExitCode {
  match run(Cli::parse()) {
    Ok(true) => ExitCode::SUCCESS,
    Ok(false) => ExitCode::from(1),
    Err(e) => {
      eprintln!("error: {e:#}");
      ExitCode::from(2)
    },
  }
}
