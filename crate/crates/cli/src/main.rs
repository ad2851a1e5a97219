use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ffgeom::congruence::Group;
use ffgeom::experiments::{
    charsum_table, counterexample_row, hinge_table, load_pointset, random_set, run_sweep, sphere_table, triangle_row,
    write_csv, ExperimentConfig, Mode, Table,
};
use ffgeom::geom_solver::build_counterexample;
use ffgeom::{PointSet, PrimeField};

const EXIT_BOUND_FAILED: u8 = 2;
const EXIT_ERROR: u8 = 1;

/// Exact distance-configuration experiments over finite planes.
#[derive(Parser)]
#[command(name = "ffgeom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sphere sizes and their Fourier transforms, closed form against direct.
    Spheres {
        #[command(flatten)]
        common: Common,
        /// Ambient dimension.
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Gauss sums, Kloosterman sums and circle sizes.
    Charsum {
        #[command(flatten)]
        common: Common,
    },
    /// Hinge counts with main term and remainder for every pair of radii.
    Hinges {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        source: Source,
    },
    /// Distinct distance triples and congruence orbits of triangles.
    Triangles {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        source: Source,
        /// Count orbits for this group only.
        #[arg(long, value_enum)]
        group: Option<GroupArg>,
    },
    /// The union-of-circles set whose midpoints avoid it.
    Counterexample {
        #[command(flatten)]
        common: Common,
        /// Sampled pairs for the midpoint check.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Check every pair instead of sampling (subject to --budget).
        #[arg(long)]
        exhaustive: bool,
    },
    /// Every statistic over a grid of (q, density, seed) cells.
    Sweep {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Prime modulus; a comma-separated list for `sweep`.
    #[arg(long, value_delimiter = ',')]
    q: Vec<u64>,
    /// Density in (0, 1]; a comma-separated list for `sweep`.
    #[arg(long, value_delimiter = ',')]
    density: Vec<f64>,
    /// RNG seed; a comma-separated list for `sweep`.
    #[arg(long, value_delimiter = ',')]
    seed: Vec<u64>,
    /// Output CSV path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Work budget for triple and pair enumerations.
    #[arg(long)]
    budget: Option<u128>,
    /// Flat TOML config supplying any flag not given on the command line.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct Source {
    /// Read the set from a point-set file instead of sampling it.
    #[arg(long, conflicts_with_all = ["density", "seed"])]
    points: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    So,
    O,
}

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

struct Settings {
    q: Vec<u64>,
    density: Vec<f64>,
    seed: Vec<u64>,
    budget: u128,
    out: Option<PathBuf>,
    group: Option<Group>,
}

impl Common {
    fn resolve(self, mode: Mode) -> CliResult<Settings> {
        let config = match &self.config {
            Some(path) => {
                let c = ExperimentConfig::load(path)?;
                if c.mode != mode {
                    return Err(format!("config mode {:?} does not match the subcommand", c.mode).into());
                }
                Some(c)
            }
            None => None,
        };
        let pick = |cli: Vec<_>, from_config: Option<Vec<_>>, default| {
            if !cli.is_empty() {
                cli
            } else {
                from_config.unwrap_or(default)
            }
        };
        let q = pick(self.q, config.as_ref().map(|c| c.q.clone()), vec![]);
        let seed = pick(self.seed, config.as_ref().map(|c| c.seed.clone()), vec![0]);
        let density = if self.density.is_empty() {
            config.as_ref().map_or_else(|| vec![1.0], |c| c.density.clone())
        } else {
            self.density
        };
        if q.is_empty() {
            return Err("--q is required".into());
        }
        let mut settings = ExperimentConfig::new(mode, q, density, seed)?;
        settings.budget = self
            .budget
            .or(config.as_ref().map(|c| c.budget))
            .unwrap_or(settings.budget);
        settings.validate()?;
        Ok(Settings {
            q: settings.q,
            density: settings.density,
            seed: settings.seed,
            budget: settings.budget,
            out: self.out.or(config.as_ref().and_then(|c| c.out.clone())),
            group: config.and_then(|c| c.group),
        })
    }
}

impl Settings {
    fn single_q(&self) -> CliResult<PrimeField> {
        match self.q.as_slice() {
            [q] => Ok(PrimeField::new(*q)?),
            _ => Err("this subcommand takes a single --q".into()),
        }
    }

    fn single<T: Copy>(values: &[T], flag: &str) -> CliResult<T> {
        match values {
            [v] => Ok(*v),
            _ => Err(format!("this subcommand takes a single {flag}").into()),
        }
    }

    fn set(&self, source: &Source) -> CliResult<(PointSet, Option<f64>)> {
        let field = self.single_q()?;
        match &source.points {
            Some(path) => {
                let set = load_pointset(path, Some(field))?;
                if set.dim() != 2 {
                    return Err(format!(
                        "{} holds a {}-dimensional set; the plane is required",
                        path.display(),
                        set.dim()
                    )
                    .into());
                }
                Ok((set, None))
            }
            None => {
                let rho = Self::single(&self.density, "--density")?;
                let seed = Self::single(&self.seed, "--seed")?;
                Ok((random_set(field, 2, rho, seed)?, Some(rho)))
            }
        }
    }
}

/// Writes the table and reports whether every row passed; failing rows go to
/// stderr.
fn emit<T: Table>(out: Option<&Path>, rows: &[T]) -> CliResult<bool> {
    match out {
        Some(path) => write_csv(BufWriter::new(File::create(path)?), rows)?,
        None => write_csv(io::stdout().lock(), rows)?,
    }
    let failing: Vec<&T> = rows.iter().filter(|r| !r.passes()).collect();
    if !failing.is_empty() {
        let mut err = io::stderr().lock();
        writeln!(err, "bound violated in {} row(s):", failing.len())?;
        writeln!(err, "{}", T::HEADER.join(","))?;
        for row in failing {
            writeln!(err, "{}", row.record().join(","))?;
        }
    }
    Ok(rows.iter().all(Table::passes))
}

fn run(command: Command) -> CliResult<bool> {
    match command {
        Command::Spheres { common, dim } => {
            let s = common.resolve(Mode::Spheres)?;
            emit(s.out.as_deref(), &sphere_table(s.single_q()?, dim)?)
        }
        Command::Charsum { common } => {
            let s = common.resolve(Mode::Charsum)?;
            emit(s.out.as_deref(), &charsum_table(s.single_q()?))
        }
        Command::Hinges { common, source } => {
            let s = common.resolve(Mode::Hinges)?;
            let (set, _) = s.set(&source)?;
            emit(s.out.as_deref(), &hinge_table(&set)?)
        }
        Command::Triangles { common, source, group } => {
            let s = common.resolve(Mode::Triangles)?;
            let (set, rho) = s.set(&source)?;
            let mut row = triangle_row(&set, rho, s.budget)?;
            let only = group
                .map(|g| match g {
                    GroupArg::So => Group::Special,
                    GroupArg::O => Group::Orthogonal,
                })
                .or(s.group);
            match only {
                Some(Group::Special) => row.orbits_o = None,
                Some(Group::Orthogonal) => row.orbits_so = None,
                None => {}
            }
            emit(s.out.as_deref(), &[row])
        }
        Command::Counterexample {
            common,
            samples,
            exhaustive,
        } => {
            let s = common.resolve(Mode::Counterexample)?;
            let ce = build_counterexample(s.single_q()?.modulus())?;
            let report = if exhaustive {
                ce.midpoint_exclusion_exhaustive(s.budget)?
            } else {
                ce.midpoint_exclusion(samples, Settings::single(&s.seed, "--seed")?)
            };
            emit(s.out.as_deref(), &[counterexample_row(&ce, report.violations)])
        }
        Command::Sweep { common } => {
            let s = common.resolve(Mode::Sweep)?;
            let mut config = ExperimentConfig::new(Mode::Sweep, s.q.clone(), s.density.clone(), s.seed.clone())?;
            config.budget = s.budget;
            for (q, rho) in config.below_density_floor() {
                eprintln!("note: density {rho} at q = {q} is below 4/sqrt(q)");
            }
            emit(s.out.as_deref(), &run_sweep(&config)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_BOUND_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
