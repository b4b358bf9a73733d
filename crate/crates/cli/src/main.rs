use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use mapspace::chains::{Field, FieldSpec, PrimeField, Rationals};
use mapspace::grepr::{theorem_checks_on, Check};
use mapspace::io::{parse_coefficients, parse_group, parse_sset, Params, Report};
use mapspace::kanop::{adjunction_check, CosimplicialSSet};
use mapspace::mapmodel::{Backend, CoefficientModel, MappingOptions};
use mapspace::sset::{build_standard, homology, BuildKind, FiniteSimplicialSet};
use mapspace::verify::{lambda_x3, run_acceptance, run_model, sphere3_simplicial};

/// Environment variable naming the directory that relative paths are resolved against.
const WORKDIR_VAR: &str = "MAPSPACE_WORKDIR";

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read or write `{path}`: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Lib(#[from] mapspace::Error),
    #[error("some checks failed")]
    ChecksFailed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use mapspace::Error as E;
        match self {
            CliError::ChecksFailed => 1,
            CliError::Lib(e) => match e {
                E::Parse(_) => 3,
                E::Malformed(_) | E::Coefficients(_) | E::Group(_) | E::CharacterTable(_) => 4,
                E::Hypothesis(_) => 5,
                E::Resource(_) => 6,
                E::Truncation(_) | E::InsufficientRange(_) => 7,
                E::NotRepresentation(_) | E::ActionNotChainMap(_) => 8,
                E::InvalidParameter(_) | E::DimensionMismatch(_) => 9,
            },
            CliError::Io { .. } => 10,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "mapspace", version, about = "Cohomology of mapping spaces from finite simplicial sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Homology of the source simplicial set.
    Homology(Common),
    /// Betti numbers of the mapping space.
    Mapspace(Common),
    /// Betti numbers and products of representative classes.
    Ring(Common),
    /// Isotypic decomposition under a group acting on the source.
    Isotypic(Common),
    /// Finite check of the tensor/mapping-object adjunction.
    AdjunctionCheck(Adjunction),
    /// Runs the acceptance suite.
    Verify(Output),
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Report file; standard output when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Tensor,
    Simplicial,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Source simplicial set: a JSON file or `builtin:KIND` (e.g. `builtin:sphere:1`).
    #[arg(long)]
    source: String,
    /// Coefficient file; defaults to the 3-sphere for the chosen backend.
    #[arg(long)]
    coeff: Option<PathBuf>,
    /// Q or Fp (e.g. F7); must agree with the coefficient file.
    #[arg(long)]
    field: Option<String>,
    #[arg(long, default_value_t = 6)]
    max_degree: usize,
    /// `auto` or an explicit number of columns.
    #[arg(long, default_value = "auto")]
    pmax: String,
    #[arg(long, value_enum)]
    backend: Option<BackendArg>,
    /// Group file with character table and action (isotypic only).
    #[arg(long)]
    group: Option<PathBuf>,
    /// Based maps; the source must be reduced.
    #[arg(long)]
    pointed: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CosimplicialArg {
    /// Z[p] = Δ[p].
    Yoneda,
    /// Z[p] = Δ[0].
    ConstantPoint,
}

#[derive(Args, Debug, Clone)]
struct Adjunction {
    #[arg(long, default_value = "builtin:simplex:0")]
    source: String,
    #[arg(long, value_enum, default_value = "constant-point")]
    cosimplicial: CosimplicialArg,
    #[arg(long, default_value = "builtin:simplex:1")]
    target: String,
    /// Highest stored level of the cosimplicial object.
    #[arg(long, default_value_t = 1)]
    trunc: usize,
    #[command(flatten)]
    out: Output,
}

fn workdir() -> PathBuf {
    std::env::var_os(WORKDIR_VAR).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."))
}

fn resolve(path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        workdir().join(path)
    }
}

fn read(path: &Path) -> Result<String> {
    let full = resolve(path);
    std::fs::read_to_string(&full).map_err(|source| CliError::Io { path: full, source })
}

fn load_source(spec: &str) -> Result<FiniteSimplicialSet> {
    match spec.strip_prefix("builtin:") {
        Some(kind) => Ok(build_standard(&BuildKind::parse(kind)?)?),
        None => Ok(parse_sset(&read(Path::new(spec))?)?),
    }
}

fn load_coefficients(c: &Common) -> Result<CoefficientModel> {
    let mut coeff = match (&c.coeff, c.backend) {
        (Some(path), _) => parse_coefficients(&read(path)?)?,
        (None, Some(BackendArg::Simplicial)) => sphere3_simplicial(),
        (None, _) => lambda_x3(FieldSpec::Rationals),
    };
    let wanted = match c.backend {
        Some(BackendArg::Tensor) => Some(Backend::Tensor),
        Some(BackendArg::Simplicial) => Some(Backend::Simplicial),
        None => None,
    };
    if let Some(b) = wanted {
        if b != coeff.backend() {
            return Err(mapspace::Error::InvalidParameter(format!(
                "the coefficient file describes the {:?} backend, not {b:?}",
                coeff.backend()
            ))
            .into());
        }
    }
    if let Some(f) = &c.field {
        let spec = FieldSpec::parse(f)?;
        if c.coeff.is_none() {
            coeff.field = spec;
            coeff.validate()?;
        } else if spec != coeff.field {
            return Err(mapspace::Error::InvalidParameter(format!(
                "--field {spec} disagrees with the coefficient field {}",
                coeff.field
            ))
            .into());
        }
    }
    Ok(coeff)
}

fn pmax_policy(s: &str) -> Result<Option<usize>> {
    if s == "auto" {
        return Ok(None);
    }
    s.parse()
        .map(Some)
        .map_err(|_| mapspace::Error::Parse(format!("--pmax expects `auto` or a number, got `{s}`")).into())
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> Check {
    Check::new(name, pass, detail)
}

fn homology_report(c: &Common) -> Result<Report> {
    let k = load_source(&c.source)?;
    let spec = FieldSpec::parse(c.field.as_deref().unwrap_or("Q"))?;
    let betti = match spec {
        FieldSpec::Rationals => homology(&Rationals, &k)?.dims,
        FieldSpec::PrimeField(p) => homology(&PrimeField::new(p)?, &k)?.dims,
    };
    let euler: i64 = k.cell_counts().iter().enumerate().map(|(n, c)| if n % 2 == 0 { *c as i64 } else { -(*c as i64) }).sum();
    let from_betti: i64 = betti.iter().enumerate().map(|(n, b)| if n % 2 == 0 { *b as i64 } else { -(*b as i64) }).sum();
    Ok(Report {
        params: Params {
            command: "homology".into(),
            source: Some(k.name().to_string()),
            field: Some(spec.to_string()),
            pointed: k.is_pointed(),
            ..Default::default()
        },
        betti,
        checks: vec![check("euler_characteristic", euler == from_betti, format!("cells give {euler}, homology gives {from_betti}"))],
        ..Default::default()
    })
}

fn mapping_report<F: Field>(field: &F, command: &str, c: &Common, k: &FiniteSimplicialSet, coeff: &CoefficientModel) -> Result<Report> {
    let options = MappingOptions { pointed: c.pointed, reversed: false, p_max: pmax_policy(&c.pmax)? };
    let (run, model) = run_model(field, k.name(), k, coeff, c.max_degree, options)?;
    let mut report = Report {
        params: Params {
            command: command.into(),
            source: Some(k.name().to_string()),
            coefficients: Some(coeff.name.clone()),
            field: Some(coeff.field.to_string()),
            backend: Some(format!("{:?}", coeff.backend()).to_lowercase()),
            max_degree: Some(c.max_degree),
            pmax_policy: Some(c.pmax.clone()),
            p_max: Some(run.p_max),
            pointed: c.pointed,
            group: None,
            model_dependent: coeff.model_dependent(),
        },
        betti: run.betti.clone(),
        stabilization: Some(run.stabilization.clone()),
        ..Default::default()
    };
    report.checks.push(match &run.invariants {
        Ok(d) => check("dga_laws", true, d.clone()),
        Err(e) => check("dga_laws", false, e.clone()),
    });
    report.checks.push(check(
        "stabilization",
        run.stabilization.stable,
        format!("betti at p_max {} equals betti at {}: {}", run.p_max, run.stabilization.p_max, run.stabilization.stable),
    ));
    if command == "ring" {
        report.ring = model.ring_table()?;
    }
    if command == "isotypic" {
        let path = c.group.as_ref().ok_or_else(|| mapspace::Error::InvalidParameter("isotypic needs --group".into()))?;
        let input = parse_group(&read(path)?)?.load(field, k)?;
        report.params.group = Some(path.display().to_string());
        let r = theorem_checks_on(&model, k, &input.action, &input.table, coeff.model_dependent())?;
        report.set_isotypic(&r.mapping);
        report.checks.extend(r.checks);
    }
    Ok(report)
}

fn model_command(command: &str, c: &Common) -> Result<Report> {
    let k = load_source(&c.source)?;
    let coeff = load_coefficients(c)?;
    match coeff.field {
        FieldSpec::Rationals => mapping_report(&Rationals, command, c, &k, &coeff),
        FieldSpec::PrimeField(p) => mapping_report(&PrimeField::new(p)?, command, c, &k, &coeff),
    }
}

fn adjunction_report(a: &Adjunction) -> Result<Report> {
    let k = load_source(&a.source)?;
    let x = load_source(&a.target)?;
    let z = match a.cosimplicial {
        CosimplicialArg::Yoneda => CosimplicialSSet::yoneda(a.trunc)?,
        CosimplicialArg::ConstantPoint => CosimplicialSSet::constant(&build_standard(&BuildKind::Simplex(0))?, a.trunc)?,
    };
    let r = adjunction_check(&k, &z, &x, a.trunc)?;
    Ok(Report {
        params: Params {
            command: "adjunction-check".into(),
            source: Some(r.source.clone()),
            coefficients: Some(r.cosimplicial.clone()),
            p_max: Some(r.trunc),
            pmax_policy: Some("truncation".into()),
            ..Default::default()
        },
        checks: vec![
            check("equal_cardinalities", r.left_count == r.right_count, format!("left_count={} right_count={}", r.left_count, r.right_count)),
            check("bijection", r.bijection_ok, format!("target {}, tensor cells {:?}", r.target, r.tensor_cells)),
        ],
        ..Default::default()
    })
}

fn verify_report() -> Report {
    let results = run_acceptance(|r| eprintln!("{}", r.line()));
    Report {
        params: Params { command: "verify".into(), ..Default::default() },
        checks: results.iter().map(|r| check(&format!("criterion {}: {}", r.id, r.title), r.pass, r.detail.clone())).collect(),
        ..Default::default()
    }
}

fn write(out: &Output, report: &Report) -> Result<()> {
    let text = report.to_json();
    match &out.output {
        Some(path) => {
            let full = resolve(path);
            std::fs::write(&full, text).map_err(|source| CliError::Io { path: full, source })
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let (report, out) = match &cli.command {
        Command::Homology(c) => (homology_report(c)?, &c.out),
        Command::Mapspace(c) => (model_command("mapspace", c)?, &c.out),
        Command::Ring(c) => (model_command("ring", c)?, &c.out),
        Command::Isotypic(c) => (model_command("isotypic", c)?, &c.out),
        Command::AdjunctionCheck(a) => (adjunction_report(a)?, &a.out),
        Command::Verify(o) => (verify_report(), o),
    };
    write(out, &report)?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::ChecksFailed)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
