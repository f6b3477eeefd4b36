//! File formats and command implementations behind the `marked-pcp` binary.

pub mod format;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use marked_pcp_core::density::{self, DensityKind, DensityParams};
use marked_pcp_core::oracle::{self, BallSpec};
use marked_pcp_core::stallings::{core_of_pair, StallingsGraph};
use marked_pcp_core::{group, monoid, EqualiserResult, Error as CoreError, ImmersionTest, Instance, Mode, Morphism};

use format::{InstanceFile, ParseError};

#[derive(Debug, Parser)]
#[command(name = "marked-pcp", version, about = "Equalisers of marked morphisms and free-group immersions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance and print a basis of its equaliser.
    Solve {
        file: PathBuf,
        /// Equalise every map in the file instead of exactly two.
        #[arg(long)]
        set: bool,
        /// Write every reduction step (and its core graph) into this directory.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Report whether each map is marked, and for groups each immersion test.
    Check { file: PathBuf },
    /// Apply the reduction `steps` times and print the result.
    Reduce {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Solve, then compare against brute-force enumeration on a ball.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        set: bool,
    },
    /// Density of marked morphisms or immersions, as a CSV row.
    Density {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
        /// 0 counts exactly.
        #[arg(long, default_value_t = 0)]
        samples: u64,
        #[arg(long, default_value_t = density::DEFAULT_SEED)]
        seed: u64,
    },
    /// Write a Stallings graph of a group instance as DOT.
    ExportDot {
        file: PathBuf,
        #[arg(long, value_enum)]
        graph: GraphArg,
        #[arg(short)]
        o: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    MarkedMonoid,
    ImmersionGroup,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GraphArg {
    G,
    H,
    Product,
    Core,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("map `{map}`: {source}")]
    Precondition { map: String, source: CoreError },
    #[error("{0}")]
    Solver(CoreError),
}

impl CliError {
    /// 2 for usage and input problems, 3 for maps that are not marked or not
    /// immersions, 4 for anything the solver itself reports.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Precondition { .. } => 3,
            CliError::Solver(_) => 4,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Solver(e)
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

pub fn read_file(path: &Path) -> Result<InstanceFile, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    format::parse(&text).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

/// The maps to solve: the first two, or all with `set`.
fn selected_maps(file: &InstanceFile, set: bool) -> Result<&[(String, Morphism)], CliError> {
    match (file.maps.len(), set) {
        (n, _) if n < 2 => Err(CliError::Usage(format!("solving needs at least two maps, the file has {n}"))),
        (2, _) => Ok(&file.maps),
        (n, false) => Err(CliError::Usage(format!("the file has {n} maps; pass --set to equalise all of them"))),
        (_, true) => Ok(&file.maps),
    }
}

/// Every map must be marked (monoid) or an immersion (group).
fn require_marked(maps: &[(String, Morphism)]) -> Result<(), CliError> {
    for (name, f) in maps {
        f.require_marked().map_err(|source| CliError::Precondition { map: name.clone(), source })?;
    }
    Ok(())
}

fn solve_maps(mode: Mode, maps: &[(String, Morphism)]) -> Result<EqualiserResult, CliError> {
    require_marked(maps)?;
    let morphisms: Vec<Morphism> = maps.iter().map(|(_, f)| f.clone()).collect();
    let result = match (mode, morphisms.len()) {
        (Mode::Monoid, 2) => monoid::solve_pair(&Instance::new(morphisms[0].clone(), morphisms[1].clone())?),
        (Mode::Group, 2) => group::solve_pair(&Instance::new(morphisms[0].clone(), morphisms[1].clone())?),
        (Mode::Monoid, _) => monoid::solve_set(&morphisms),
        (Mode::Group, _) => group::solve_set(&morphisms),
    };
    Ok(result?)
}

fn pair_instance(file: &InstanceFile) -> Result<Instance, CliError> {
    let maps = selected_maps(file, false)?;
    Ok(Instance::new(maps[0].1.clone(), maps[1].1.clone())?)
}

fn write_trace(dir: &Path, file: &InstanceFile, result: &EqualiserResult) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let names = [file.maps[0].0.as_str(), file.maps[1].0.as_str()];
    let mut instances: Vec<&Instance> = result.trail.iter().map(|s| &s.before).collect();
    if let Some(last) = result.trail.last() {
        instances.push(&last.after);
    }
    for (i, inst) in instances.iter().enumerate() {
        let path = dir.join(format!("step_{i:03}.pcp"));
        fs::write(&path, format::write_instance(&InstanceFile::from_instance(inst, names))).map_err(io_err(&path))?;
        if i < result.trail.len() && inst.mode() == Mode::Group {
            let path = dir.join(format!("step_{i:03}_core.dot"));
            let core = core_of_pair(inst.g(), inst.h())?.core;
            fs::write(&path, core.to_dot()).map_err(io_err(&path))?;
        }
    }
    Ok(())
}

fn prefix_complexity(instance: &Instance) -> usize {
    match instance.mode() {
        Mode::Monoid => monoid::prefix_complexity(instance),
        Mode::Group => group::prefix_complexity(instance),
    }
}

fn reduce_once(instance: &Instance) -> Result<Instance, CliError> {
    let step = match instance.mode() {
        Mode::Monoid => monoid::reduce_instance(instance)?,
        Mode::Group => group::reduce_instance(instance)?,
    };
    Ok(step.after)
}

/// Runs one command, writing results to `out`. Returns the exit status for
/// commands that report a verdict (`check`, `oracle`).
pub fn run(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    let stdout = |e| CliError::Io { path: PathBuf::from("<stdout>"), source: e };
    match command {
        Command::Solve { file: path, set, trace } => {
            let file = read_file(&path)?;
            let maps = selected_maps(&file, set)?;
            let result = solve_maps(file.mode, maps)?;
            if let Some(dir) = trace {
                write_trace(&dir, &file, &result)?;
            }
            out.write_all(format::write_result(&result).as_bytes()).map_err(stdout)?;
            Ok(0)
        }
        Command::Check { file: path } => {
            let file = read_file(&path)?;
            let mut ok = true;
            for (name, f) in &file.maps {
                let line = match file.mode {
                    Mode::Monoid => {
                        ok &= f.is_marked();
                        format!("{name} marked={}", f.is_marked())
                    }
                    Mode::Group => {
                        let [marked, folded, length] = f.immersion_characterizations()?;
                        let agree = f.is_immersion(ImmersionTest::All).is_ok();
                        ok &= marked && folded && length && agree;
                        format!("{name} marked={marked} folded={folded} length-identity={length} agree={agree}")
                    }
                };
                writeln!(out, "{line}").map_err(stdout)?;
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Reduce { file: path, steps } => {
            let file = read_file(&path)?;
            let mut instance = pair_instance(&file)?;
            require_marked(&file.maps[..2])?;
            let before = prefix_complexity(&instance);
            for _ in 0..steps {
                instance = reduce_once(&instance)?;
            }
            writeln!(out, "sigma-before {before}").map_err(stdout)?;
            writeln!(out, "sigma-after {}", prefix_complexity(&instance)).map_err(stdout)?;
            writeln!(out, "steps {steps}").map_err(stdout)?;
            let names = [file.maps[0].0.as_str(), file.maps[1].0.as_str()];
            out.write_all(format::write_instance(&InstanceFile::from_instance(&instance, names)).as_bytes())
                .map_err(stdout)?;
            Ok(0)
        }
        Command::Oracle { file: path, radius, set } => {
            let file = read_file(&path)?;
            let maps = selected_maps(&file, set)?;
            let result = solve_maps(file.mode, maps)?;
            let morphisms: Vec<Morphism> = maps.iter().map(|(_, f)| f.clone()).collect();
            let report = oracle::check_result(&morphisms, &result, BallSpec::new(radius, file.mode))?;
            write!(out, "{report}").map_err(stdout)?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Density { kind, k, m, n, samples, seed } => {
            let kind = match kind {
                KindArg::MarkedMonoid => DensityKind::MarkedMonoid,
                KindArg::ImmersionGroup => DensityKind::ImmersionGroup,
            };
            let d = density::measure_density(DensityParams { k, m, n, samples, seed }, kind)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            writeln!(out, "kind,k,m,n,samples,empirical,predicted").map_err(stdout)?;
            writeln!(
                out,
                "{},{k},{m},{n},{samples},{:.6},{:.6}",
                kind.as_str(),
                density::ratio_to_f64(d.empirical),
                density::ratio_to_f64(d.predicted)
            )
            .map_err(stdout)?;
            Ok(0)
        }
        Command::ExportDot { file: path, graph, o } => {
            let file = read_file(&path)?;
            if file.mode != Mode::Group {
                return Err(CliError::Usage("DOT export needs a group instance".into()));
            }
            let bouquet = |i: usize| -> Result<StallingsGraph, CliError> {
                let (name, f) = file.maps.get(i).ok_or_else(|| CliError::Usage("the file has too few maps".into()))?;
                StallingsGraph::bouquet(f).map_err(|source| CliError::Precondition { map: name.clone(), source })
            };
            let dot = match graph {
                GraphArg::G => bouquet(0)?.to_dot(),
                GraphArg::H => bouquet(1)?.to_dot(),
                GraphArg::Product => bouquet(0)?.product(&bouquet(1)?)?.graph.to_dot(),
                GraphArg::Core => {
                    let maps = selected_maps(&file, false)?;
                    require_marked(maps)?;
                    core_of_pair(&maps[0].1, &maps[1].1)?.core.to_dot()
                }
            };
            fs::write(&o, dot).map_err(io_err(&o))?;
            Ok(0)
        }
    }
}
