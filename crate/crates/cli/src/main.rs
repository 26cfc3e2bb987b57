//! Command-line front end: load operators, sets and functions from JSON,
//! dispatch checks, and emit reports with certificates.
//!
//! Exit codes: 0 the verdict or conclusion is true, 1 input or format
//! error, 2 hypothesis or precondition failure, 3 conclusion false (a
//! certificate is printed). Given identical inputs, seed and options, the
//! output is byte-identical.

mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use monotope_core::checks::{self, CheckId, CheckReport};
use monotope_core::error::Error;
use monotope_core::json::{
    self, cycle_to_file, monotonicity_to_file, to_json_string, FunctionFile, OperatorFile,
    SetFile,
};
use monotope_core::operator::{CyclicVerdict, MonotoneVerdict};
use monotope_core::sample::InstanceSampler;
use monotope_core::scalar::Extended;
use monotope_core::selftest::{self, SelftestConfig};
use monotope_core::{FiniteOperator, MaxAffineFunction, Rat, RatVec, VPolyhedron};
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(
    name = "monotope",
    about = "Exact checks for monotone operators, normal cones, and polyhedral convex analysis",
    version
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide pairwise monotonicity of an operator graph.
    CheckMonotone { operator: PathBuf },
    /// Decide cyclic monotonicity; a failure prints the violating chain.
    CheckCyclic { operator: PathBuf },
    /// Construct the max-affine potential of a cyclically monotone graph.
    Potential {
        operator: PathBuf,
        /// Base pair index (shifts the potential by a constant only).
        #[arg(long, default_value_t = 0)]
        base: usize,
    },
    /// Subdifferential of a max-affine function at a point.
    Subdiff {
        function: PathBuf,
        #[arg(long, value_parser = parse_vector_arg)]
        at: RatVec,
    },
    /// Normal cone queries: generators at a point of a half-space set, or
    /// membership of a dual vector for either representation.
    NormalCone {
        set: PathBuf,
        #[arg(long, value_parser = parse_vector_arg)]
        at: RatVec,
        #[arg(long, value_parser = parse_vector_arg)]
        dual: Option<RatVec>,
    },
    /// Support value and supported face of a generator set.
    Support {
        set: PathBuf,
        #[arg(long, value_parser = parse_vector_arg)]
        dual: RatVec,
    },
    /// The three epigraph conditions for a generator set in X x R.
    EpiConditions { set: PathBuf },
    /// Dual slice of the epigraph normal cone at a point.
    LiftAx {
        function: PathBuf,
        #[arg(long, value_parser = parse_vector_arg)]
        at: RatVec,
    },
    /// Run one named check end to end.
    Verify(VerifyArgs),
    /// Rationalize price/supply observations by profit maximization.
    Rationalize { operator: PathBuf },
    /// Sampled surjectivity evidence for Id + N_C on a bounded set.
    Minty {
        set: PathBuf,
        #[arg(long, default_value_t = 50)]
        minty_samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Run the full randomized property suite.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Instances per suite; 0 is a vacuous pass.
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 50)]
        minty_samples: usize,
        #[arg(long, default_value_t = 3)]
        grid: i64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: Prop2.1, Cor2.2, Thm2.3, Thm2.5, Lem3.1, Lem3.2, Cor3.3,
    /// Prop3.4, Thm3.5, Rationalize, MintySample.
    #[arg(long)]
    result: String,
    #[arg(long)]
    operator: Option<PathBuf>,
    #[arg(long)]
    function: Option<PathBuf>,
    #[arg(long)]
    set: Option<PathBuf>,
    #[arg(long, value_parser = parse_vector_arg)]
    at: Option<RatVec>,
    #[arg(long, value_parser = parse_rat_arg)]
    lambda: Option<Rat>,
    #[arg(long, value_parser = parse_vector_arg)]
    dual: Option<RatVec>,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    grid: i64,
    #[arg(long, default_value_t = 50)]
    minty_samples: usize,
}

fn parse_rat_arg(text: &str) -> Result<Rat, String> {
    json::parse_rat(text, "argument").map_err(|e| e.to_string())
}

fn parse_vector_arg(text: &str) -> Result<RatVec, String> {
    let coords: Vec<String> = text.split(',').map(|p| p.trim().to_owned()).collect();
    json::parse_vec(&coords, "argument").map_err(|e| e.to_string())
}

/// Anything the front end can fail with before or during a computation.
enum CliFailure {
    /// Input or format problem: exit 1.
    Input(String),
    /// Precondition or hypothesis failure: exit 2.
    Precondition(String),
}

impl From<json::WireError> for CliFailure {
    fn from(e: json::WireError) -> Self {
        CliFailure::Input(e.to_string())
    }
}

impl From<Error<Rat>> for CliFailure {
    fn from(e: Error<Rat>) -> Self {
        CliFailure::Precondition(e.to_string())
    }
}

fn load_operator(path: &PathBuf) -> Result<FiniteOperator, CliFailure> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliFailure::Input(format!("{}: {e}", path.display())))?;
    let file: OperatorFile = serde_json::from_str(&text).map_err(|e| {
        CliFailure::Input(format!("{}: {}", path.display(), json::WireError::from(e)))
    })?;
    Ok(file.to_operator()?)
}

fn load_function(path: &PathBuf) -> Result<MaxAffineFunction, CliFailure> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliFailure::Input(format!("{}: {e}", path.display())))?;
    let file: FunctionFile = serde_json::from_str(&text).map_err(|e| {
        CliFailure::Input(format!("{}: {}", path.display(), json::WireError::from(e)))
    })?;
    Ok(file.to_function()?)
}

fn load_set_file(path: &PathBuf) -> Result<SetFile, CliFailure> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliFailure::Input(format!("{}: {e}", path.display())))?;
    let file: SetFile = serde_json::from_str(&text).map_err(|e| {
        CliFailure::Input(format!("{}: {}", path.display(), json::WireError::from(e)))
    })?;
    Ok(file)
}

/// Verdict output of the plain graph checks.
#[derive(Serialize, Deserialize)]
struct VerdictOutput {
    check: String,
    verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<json::WitnessFile>,
}

/// Output of the set/function query commands.
#[derive(Serialize, Deserialize)]
struct QueryOutput {
    query: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    member: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    set: Option<SetFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    function: Option<FunctionFile>,
}

impl QueryOutput {
    fn new(query: &str) -> Self {
        QueryOutput {
            query: query.to_owned(),
            value: None,
            member: None,
            set: None,
            generators: None,
            function: None,
        }
    }
}

fn emit_report(report: &CheckReport<Rat>, as_json: bool) -> ExitCode {
    let body = if as_json {
        to_json_string(&json::report_to_file(report))
    } else {
        render::render_report(report)
    };
    print!("{body}");
    ExitCode::from(report.exit_code())
}

fn emit_query(output: &QueryOutput, as_json: bool, text: String, code: u8) -> ExitCode {
    if as_json {
        print!("{}", to_json_string(output));
    } else {
        print!("{text}");
    }
    ExitCode::from(code)
}

fn run(cli: Cli) -> Result<ExitCode, CliFailure> {
    let as_json = cli.json;
    match cli.command {
        Command::CheckMonotone { operator } => {
            let t = load_operator(&operator)?;
            let (verdict, violation) = match t.is_monotone() {
                MonotoneVerdict::Monotone => (true, None),
                MonotoneVerdict::Violation(v) => (false, Some(monotonicity_to_file(&v))),
            };
            let out = VerdictOutput {
                check: "check-monotone".to_owned(),
                verdict,
                violation,
            };
            let text = match &out.violation {
                None => "monotone: true\n".to_owned(),
                Some(json::WitnessFile::MonotonicityViolation {
                    index1,
                    index2,
                    gap,
                    ..
                }) => format!(
                    "monotone: FALSE\nviolation: pairs #{index1} and #{index2} with gap {gap}\n"
                ),
                Some(_) => unreachable!("monotonicity check emits pair witnesses"),
            };
            if as_json {
                print!("{}", to_json_string(&out));
            } else {
                print!("{text}");
            }
            Ok(ExitCode::from(if verdict { 0 } else { 3 }))
        }
        Command::CheckCyclic { operator } => {
            let t = load_operator(&operator)?;
            let (verdict, violation) = match t.is_cyclically_monotone() {
                CyclicVerdict::CyclicallyMonotone => (true, None),
                CyclicVerdict::Violation(v) => (false, Some(cycle_to_file(&v))),
            };
            let out = VerdictOutput {
                check: "check-cyclic".to_owned(),
                verdict,
                violation,
            };
            let text = match &out.violation {
                None => "cyclically monotone: true\n".to_owned(),
                Some(json::WitnessFile::CycleViolation { indices, cycle_sum }) => format!(
                    "cyclically monotone: FALSE\nviolation: cycle {indices:?} with sum {cycle_sum}\n"
                ),
                Some(_) => unreachable!("cyclicity check emits cycle witnesses"),
            };
            if as_json {
                print!("{}", to_json_string(&out));
            } else {
                print!("{text}");
            }
            Ok(ExitCode::from(if verdict { 0 } else { 3 }))
        }
        Command::Potential { operator, base } => {
            let t = load_operator(&operator)?;
            if base >= t.len() {
                return Err(CliFailure::Precondition(format!(
                    "base index {base} out of range for {} pairs",
                    t.len()
                )));
            }
            match t.rockafellar_potential(base) {
                Ok(f) => {
                    let file = FunctionFile::from_function(&f);
                    let mut out = QueryOutput::new("potential");
                    out.function = Some(file.clone());
                    let text = format!("potential: {}", to_json_string(&file));
                    Ok(emit_query(&out, as_json, text, 0))
                }
                Err(Error::NotCyclicallyMonotone(v)) => Err(CliFailure::Precondition(format!(
                    "operator is not cyclically monotone: cycle {:?} with sum {}",
                    v.indices, v.cycle_sum
                ))),
                Err(e) => Err(e.into()),
            }
        }
        Command::Subdiff { function, at } => {
            let f = load_function(&function)?;
            let sd = f.subdifferential(&at)?;
            let mut out = QueryOutput::new("subdiff");
            out.set = Some(SetFile::from_vpolyhedron(&sd));
            let text = format!(
                "subdifferential at {at}: {}",
                to_json_string(out.set.as_ref().expect("set attached"))
            );
            Ok(emit_query(&out, as_json, text, 0))
        }
        Command::NormalCone { set, at, dual } => {
            let file = load_set_file(&set)?;
            match (&file, dual) {
                (SetFile::Generators { .. }, Some(dual)) => {
                    let c = file.to_vpolyhedron()?;
                    let member = monotope_core::cones::normal_cone_member(&c, &at, &dual)?;
                    let mut out = QueryOutput::new("normal-cone");
                    out.member = Some(member);
                    let text = format!("normal cone member at {at} for {dual}: {member}\n");
                    Ok(emit_query(&out, as_json, text, if member { 0 } else { 3 }))
                }
                (SetFile::HalfSpaces { .. }, Some(dual)) => {
                    let c = file.to_hpolyhedron()?;
                    let verdict = monotope_core::cones::normal_cone_member_h(&c, &at, &dual)?;
                    let member = verdict.is_member();
                    let mut out = QueryOutput::new("normal-cone");
                    out.member = Some(member);
                    let text = format!("normal cone member at {at} for {dual}: {member}\n");
                    Ok(emit_query(&out, as_json, text, if member { 0 } else { 3 }))
                }
                (SetFile::HalfSpaces { .. }, None) => {
                    let c = file.to_hpolyhedron()?;
                    let generators = monotope_core::cones::normal_cone_generators(&c, &at)?;
                    let mut out = QueryOutput::new("normal-cone");
                    out.generators = Some(generators.iter().map(json::format_vec).collect());
                    let text = format!(
                        "normal cone generators at {at}: {}\n",
                        generators
                            .iter()
                            .map(|g| g.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                    Ok(emit_query(&out, as_json, text, 0))
                }
                (SetFile::Generators { .. }, None) => Err(CliFailure::Input(
                    "generator sets need --dual for a membership query".to_owned(),
                )),
            }
        }
        Command::Support { set, dual } => {
            let c = load_set_file(&set)?.to_vpolyhedron()?;
            let value = c.support_value(&dual)?;
            let mut out = QueryOutput::new("support");
            out.value = Some(value.to_string());
            let text = match &value {
                Extended::Finite(_) => {
                    let face = monotope_core::cones::support_face(&c, &dual)?;
                    out.set = Some(SetFile::from_vpolyhedron(&face));
                    format!(
                        "support value: {value}\nface: {}",
                        to_json_string(out.set.as_ref().expect("face attached"))
                    )
                }
                Extended::PosInf => format!("support value: {value}\n"),
            };
            Ok(emit_query(&out, as_json, text, 0))
        }
        Command::EpiConditions { set } => {
            let c = load_set_file(&set)?.to_vpolyhedron()?;
            let report = checks::check_epigraph_conditions(&c)?;
            Ok(emit_report(&report, as_json))
        }
        Command::LiftAx { function, at } => {
            let f = load_function(&function)?;
            let slice = checks::lift_ax(&f, &at)?;
            let mut out = QueryOutput::new("lift-ax");
            out.set = Some(SetFile::from_vpolyhedron(&slice));
            let text = format!(
                "dual slice at {at}: {}",
                to_json_string(out.set.as_ref().expect("set attached"))
            );
            Ok(emit_query(&out, as_json, text, 0))
        }
        Command::Verify(args) => run_verify(args, as_json),
        Command::Rationalize { operator } => {
            let t = load_operator(&operator)?;
            let report = checks::rationalize_supply(&t);
            Ok(emit_report(&report, as_json))
        }
        Command::Minty {
            set,
            minty_samples,
            seed,
        } => {
            let c = load_set_file(&set)?.to_vpolyhedron()?;
            let zs = checks::sample_points_around(c.dim(), minty_samples, seed);
            let report = checks::minty_sample(&c, &zs, seed)?;
            Ok(emit_report(&report, as_json))
        }
        Command::Selftest {
            seed,
            instances,
            samples,
            minty_samples,
            grid,
        } => {
            let config = SelftestConfig {
                seed,
                instances,
                samples,
                minty_samples,
                grid_radius: grid,
            };
            let report = selftest::run(&config);
            if as_json {
                print!("{}", selftest::report_json(&report));
            } else {
                print!("{}", render::render_selftest(&report));
            }
            Ok(ExitCode::from(if report.all_passed { 0 } else { 3 }))
        }
    }
}

fn sampled_points(dim: usize, samples: usize, seed: u64) -> Vec<RatVec> {
    let mut sampler = InstanceSampler::new(seed);
    (0..samples).map(|_| sampler.vector(dim)).collect()
}

fn run_verify(args: VerifyArgs, as_json: bool) -> Result<ExitCode, CliFailure> {
    let Some(id) = CheckId::parse(&args.result) else {
        return Err(CliFailure::Input(format!(
            "unknown result '{}'; expected one of {}",
            args.result,
            CheckId::ALL
                .iter()
                .map(|id| id.label())
                .collect::<Vec<_>>()
                .join(", ")
        )));
    };
    let need_operator = |path: &Option<PathBuf>| -> Result<FiniteOperator, CliFailure> {
        match path {
            Some(p) => load_operator(p),
            None => Err(CliFailure::Input(format!(
                "--result {} requires --operator",
                id.label()
            ))),
        }
    };
    let need_function = |path: &Option<PathBuf>| -> Result<MaxAffineFunction, CliFailure> {
        match path {
            Some(p) => load_function(p),
            None => Err(CliFailure::Input(format!(
                "--result {} requires --function",
                id.label()
            ))),
        }
    };
    let need_set = |path: &Option<PathBuf>| -> Result<VPolyhedron, CliFailure> {
        match path {
            Some(p) => Ok(load_set_file(p)?.to_vpolyhedron()?),
            None => Err(CliFailure::Input(format!(
                "--result {} requires --set",
                id.label()
            ))),
        }
    };

    let report = match id {
        CheckId::Prop2_1 => checks::check_normal_cone_inclusion(&need_operator(&args.operator)?),
        CheckId::Cor2_2 => {
            checks::check_support_subdifferential_inclusion(&need_operator(&args.operator)?)
        }
        CheckId::Thm2_3 => checks::check_normal_cone_characterization(
            &need_operator(&args.operator)?,
            args.minty_samples,
            args.seed,
        ),
        CheckId::Thm2_5 => checks::check_sublinear_characterization(
            &need_operator(&args.operator)?,
            args.minty_samples,
            args.seed,
        ),
        CheckId::Lem3_1 => checks::check_epigraph_conditions(&need_set(&args.set)?)?,
        CheckId::Lem3_2 => {
            let f = need_function(&args.function)?;
            let (Some(at), Some(lambda), Some(dual)) = (&args.at, &args.lambda, &args.dual)
            else {
                return Err(CliFailure::Input(
                    "--result Lem3.2 requires --at, --lambda and --dual".to_owned(),
                ));
            };
            checks::check_vertical_normal_level(&f, at, lambda, dual)?
        }
        CheckId::Cor3_3 => {
            let f = need_function(&args.function)?;
            let xs = match &args.at {
                Some(x) => vec![x.clone()],
                None => sampled_points(f.dim(), args.samples, args.seed),
            };
            let mut report = checks::check_epi_slice_equals_subdifferential(&f, &xs)?;
            report.deterministic_seed = args.seed;
            report
        }
        CheckId::Prop3_4 => {
            checks::check_lifted_operator_subdifferential(&need_operator(&args.operator)?, args.grid)?
        }
        CheckId::Thm3_5 => {
            let f = need_function(&args.function)?;
            let xs = match &args.at {
                Some(x) => vec![x.clone()],
                None => sampled_points(f.dim(), args.samples, args.seed),
            };
            let mut report = checks::check_subdifferential_roundtrip(&f, &xs)?;
            report.deterministic_seed = args.seed;
            report
        }
        CheckId::Rationalize => checks::rationalize_supply(&need_operator(&args.operator)?),
        CheckId::MintySample => {
            let c = need_set(&args.set)?;
            let zs = checks::sample_points_around(c.dim(), args.minty_samples, args.seed);
            checks::minty_sample(&c, &zs, args.seed)?
        }
    };
    Ok(emit_report(&report, as_json))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliFailure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliFailure::Precondition(message)) => {
            eprintln!("precondition failed: {message}");
            ExitCode::from(2)
        }
    }
}
