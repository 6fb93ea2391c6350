//! Command-line front end: instance loading, size budget, task execution and
//! report emission.
//!
//! Exit codes: 0 when every verdict matches, 1 on a mismatch or a failed
//! computation, 2 on input errors (including violated hypotheses), 3 when the
//! projected problem size exceeds the budget and `--force` is absent.

pub mod instance;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::bimodule::Bimodule;
use crate::derived::{ext_dim, ext_via_hochschild, tor_dim, DerivedError};
use crate::hochschild::{complex_report, invariants, space_dim, ComplexSide, HochschildError};
use crate::theorems::{
    report_one_point_extension, trace_space, verify_cohomology_split, verify_homology_split, verify_off_diagonal_vanishing,
    verify_self_homology, verify_trace_split, verify_weak_amenability, Suite, TheoremError, Verdict,
};
use crate::triangular::TriangularData;

use instance::{Instance, Task};
use report::{render_table, schema, ComplexRecord, DerivedRecord, Record, TraceRecord};

pub const DEFAULT_BUDGET: usize = 20_000;
pub const DEFAULT_MAX_DEGREE: usize = 3;

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hochwerk", version, about = "Exact Hochschild (co)homology, Ext, Tor and trace spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Records,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Instance file; the bundled upper triangular 2x2 fixture when omitted.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    /// Highest degree to compute; overrides the task's own value.
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Cap on the projected cochain-space dimension.
    #[arg(long, env = "HOCHWERK_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Run even when the budget is exceeded.
    #[arg(long)]
    pub force: bool,
    /// Also write the records as JSON lines to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Include wall-clock timings (output is then no longer reproducible).
    #[arg(long)]
    pub timings: bool,
}

/// `--suite` value: one suite, or `None` for `all`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteSelection(pub Option<Suite>);

fn parse_suite(s: &str) -> Result<SuiteSelection, String> {
    if s == "all" {
        return Ok(SuiteSelection(None));
    }
    Suite::from_id(s)
        .map(|s| SuiteSelection(Some(s)))
        .ok_or_else(|| format!("unknown suite {s:?}; expected one of all, {}", Suite::ALL.map(Suite::id).join(", ")))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run theorem checks: the instance's verify tasks, or the default battery.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Suite id (thm3.1, cor3.2, ..) or `all`.
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: SuiteSelection,
    },
    /// Hochschild cohomology dimensions.
    Cohomology {
        #[command(flatten)]
        common: Common,
        /// Algebra name from the instance.
        #[arg(long)]
        algebra: String,
        /// Coefficient bimodule (`name`, `name*`, `T.m`, `T.nestedK`).
        #[arg(long)]
        coeff: String,
    },
    /// Hochschild homology dimensions.
    Homology {
        #[command(flatten)]
        common: Common,
        /// Algebra name from the instance.
        #[arg(long)]
        algebra: String,
        /// Coefficient bimodule (`name`, `name*`, `T.m`, `T.nestedK`).
        #[arg(long)]
        coeff: String,
    },
    /// Ext between two left modules, checked against Hochschild cohomology.
    Ext {
        #[command(flatten)]
        common: Common,
        /// Algebra name from the instance.
        #[arg(long)]
        algebra: String,
        /// Left module.
        #[arg(long)]
        m: String,
        /// Second left module.
        #[arg(long)]
        y: String,
    },
    /// Tor of a right module and a left module.
    Tor {
        #[command(flatten)]
        common: Common,
        /// Algebra name from the instance.
        #[arg(long)]
        algebra: String,
        /// Right module.
        #[arg(long)]
        x: String,
        /// Left module.
        #[arg(long)]
        m: String,
    },
    /// Dimension of the trace space.
    Trace {
        #[command(flatten)]
        common: Common,
        /// Algebra name from the instance.
        #[arg(long)]
        algebra: String,
    },
    /// Run every task in the instance.
    Run {
        #[command(flatten)]
        common: Common,
    },
    /// Parse and validate the instance only.
    Validate {
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Verify { common, .. }
            | Command::Cohomology { common, .. }
            | Command::Homology { common, .. }
            | Command::Ext { common, .. }
            | Command::Tor { common, .. }
            | Command::Trace { common, .. }
            | Command::Run { common }
            | Command::Validate { common } => common,
        }
    }
}

enum JobError {
    Input(String),
    Compute(String),
}

impl From<TheoremError> for JobError {
    fn from(e: TheoremError) -> Self {
        match e {
            TheoremError::HypothesisViolated { .. }
            | TheoremError::DegreeTooLow(_)
            | TheoremError::Hochschild(HochschildError::AlgebraMismatch) => JobError::Input(e.to_string()),
            _ => JobError::Compute(e.to_string()),
        }
    }
}

impl From<HochschildError> for JobError {
    fn from(e: HochschildError) -> Self {
        match e {
            HochschildError::AlgebraMismatch => JobError::Input(e.to_string()),
            _ => JobError::Compute(e.to_string()),
        }
    }
}

impl From<DerivedError> for JobError {
    fn from(e: DerivedError) -> Self {
        match e {
            DerivedError::AlgebraMismatch => JobError::Input(e.to_string()),
            _ => JobError::Compute(e.to_string()),
        }
    }
}

/// A task with every name resolved.
enum Job {
    Verify {
        suite: Suite,
        label: String,
        td: Box<TriangularData>,
        coeff: Option<Bimodule>,
        max_degree: usize,
        nesting: usize,
    },
    Complex {
        side: ComplexSide,
        algebra: (String, Arc<Algebra>),
        coeff: (String, Bimodule),
        max_degree: usize,
    },
    Ext {
        algebra: (String, Arc<Algebra>),
        m: (String, Bimodule),
        y: (String, Bimodule),
        max_degree: usize,
    },
    Tor {
        algebra: (String, Arc<Algebra>),
        x: (String, Bimodule),
        m: (String, Bimodule),
        max_degree: usize,
    },
    Trace {
        algebra: (String, Arc<Algebra>),
    },
}

fn nested_dim(td: &TriangularData, k: usize) -> usize {
    td.dim() + k * (td.a.dim() + td.b.dim())
}

impl Job {
    fn subject(&self) -> String {
        match self {
            Job::Verify { suite, label, .. } => format!("{} {label}", suite.id()),
            Job::Complex { side, algebra, coeff, .. } => {
                let side = match side {
                    ComplexSide::Cochain => "cohomology",
                    ComplexSide::Chain => "homology",
                };
                format!("{side} {}[{}]", algebra.0, coeff.0)
            }
            Job::Ext { algebra, m, y, .. } => format!("ext {}[{}, {}]", algebra.0, m.0, y.0),
            Job::Tor { algebra, x, m, .. } => format!("tor {}[{}, {}]", algebra.0, x.0, m.0),
            Job::Trace { algebra } => format!("trace {}", algebra.0),
        }
    }

    /// Largest vector space the job builds a matrix on.
    fn projected(&self) -> usize {
        match self {
            Job::Verify {
                suite,
                td,
                coeff,
                max_degree,
                nesting,
                ..
            } => {
                let dt = td.dim();
                match suite {
                    Suite::CohomologySplit | Suite::HomologySplit => {
                        space_dim(dt, coeff.as_ref().map_or(dt, Bimodule::dim), max_degree + 1)
                    }
                    Suite::WeakAmenability => space_dim(dt, dt, 2),
                    Suite::SelfHomology => space_dim(dt, dt, max_degree + 1),
                    Suite::OffDiagonalVanishing => space_dim(dt, nested_dim(td, *nesting), max_degree + 1),
                    Suite::TraceSplit => dt * dt,
                    Suite::OnePointExtension => space_dim(dt, dt, max_degree + 1)
                        .max(space_dim(td.a.dim(), td.m.dim() * td.m.dim(), max_degree + 1)),
                }
            }
            Job::Complex {
                algebra, coeff, max_degree, ..
            } => space_dim(algebra.1.dim(), coeff.1.dim(), max_degree + 1),
            Job::Ext { algebra, m, y, max_degree } => {
                let de = algebra.1.dim();
                let bar = (de + 1).saturating_mul(space_dim(de, m.1.dim(), max_degree + 1));
                bar.saturating_mul(y.1.dim())
                    .max(space_dim(de, m.1.dim() * y.1.dim(), max_degree + 1))
            }
            Job::Tor { algebra, x, m, max_degree } => {
                let de = algebra.1.dim();
                (de + 1).saturating_mul(space_dim(de, m.1.dim(), max_degree + 1)).saturating_mul(x.1.dim())
            }
            Job::Trace { algebra } => algebra.1.dim() * algebra.1.dim(),
        }
    }

    fn execute(&self, instance: &str) -> Result<Record, JobError> {
        Ok(match self {
            Job::Verify {
                suite,
                label,
                td,
                coeff,
                max_degree,
                nesting,
            } => {
                let name = format!("{instance}:{label}");
                let coeff = || coeff.clone().expect("coefficient resolved for split suites");
                Record::Verification(match suite {
                    Suite::CohomologySplit => verify_cohomology_split(&name, td, &coeff(), *max_degree)?,
                    Suite::WeakAmenability => verify_weak_amenability(&name, td)?,
                    Suite::HomologySplit => verify_homology_split(&name, td, &coeff(), *max_degree)?,
                    Suite::SelfHomology => verify_self_homology(&name, td, *max_degree)?,
                    Suite::OffDiagonalVanishing => verify_off_diagonal_vanishing(&name, td, *nesting, *max_degree)?,
                    Suite::TraceSplit => verify_trace_split(&name, td)?,
                    Suite::OnePointExtension => {
                        if td.b.as_ref() != &Algebra::field() {
                            return Err(JobError::Input(format!("{label}: the lower corner must be the ground field")));
                        }
                        report_one_point_extension(&name, &td.a, &td.m, *max_degree)?
                    }
                })
            }
            Job::Complex {
                side,
                algebra,
                coeff,
                max_degree,
            } => Record::Complex(ComplexRecord {
                schema: schema(),
                instance: instance.to_string(),
                algebra: algebra.0.clone(),
                coeff: coeff.0.clone(),
                report: complex_report(&algebra.1, &coeff.1, *side, *max_degree)?,
                elapsed_ms: None,
            }),
            Job::Ext { algebra, m, y, max_degree } => {
                let degrees: Vec<usize> = (0..=*max_degree).collect();
                let dims = degrees
                    .par_iter()
                    .map(|&n| ext_dim(&algebra.1, &m.1, &y.1, n))
                    .collect::<Result<Vec<_>, _>>()?;
                let oracle = degrees
                    .par_iter()
                    .map(|&n| ext_via_hochschild(&algebra.1, &m.1, &y.1, n))
                    .collect::<Result<Vec<_>, _>>()?;
                Record::Derived(DerivedRecord {
                    schema: schema(),
                    instance: instance.to_string(),
                    op: "ext".into(),
                    algebra: algebra.0.clone(),
                    arguments: vec![m.0.clone(), y.0.clone()],
                    verdict: Verdict::from_bool(dims == oracle),
                    dims,
                    oracle: Some(oracle),
                    elapsed_ms: None,
                })
            }
            Job::Tor { algebra, x, m, max_degree } => {
                let dims = (0..=*max_degree)
                    .into_par_iter()
                    .map(|n| tor_dim(&algebra.1, &x.1, &m.1, n))
                    .collect::<Result<Vec<_>, _>>()?;
                Record::Derived(DerivedRecord {
                    schema: schema(),
                    instance: instance.to_string(),
                    op: "tor".into(),
                    algebra: algebra.0.clone(),
                    arguments: vec![x.0.clone(), m.0.clone()],
                    dims,
                    oracle: None,
                    verdict: Verdict::Match,
                    elapsed_ms: None,
                })
            }
            Job::Trace { algebra } => {
                let dim = trace_space(&algebra.1).dim();
                let h0_dual_dim = invariants(&Bimodule::regular(algebra.1.clone()).dual())?.dim();
                Record::Trace(TraceRecord {
                    schema: schema(),
                    instance: instance.to_string(),
                    algebra: algebra.0.clone(),
                    dim,
                    h0_dual_dim,
                    verdict: Verdict::from_bool(dim == h0_dual_dim),
                    elapsed_ms: None,
                })
            }
        })
    }
}

struct Resolver<'a> {
    inst: &'a Instance,
    max_degree: Option<usize>,
}

impl Resolver<'_> {
    fn degree(&self, task: Option<usize>) -> usize {
        self.max_degree.or(task).unwrap_or(DEFAULT_MAX_DEGREE)
    }

    fn algebra(&self, name: &str) -> Result<(String, Arc<Algebra>), String> {
        self.inst
            .algebras
            .get(name)
            .map(|a| (name.to_string(), a.clone()))
            .ok_or_else(|| format!("unknown algebra {name:?}"))
    }

    fn bimodule(&self, name: &str) -> Result<(String, Bimodule), String> {
        self.inst
            .bimodule(name)
            .map(|b| (name.to_string(), b))
            .ok_or_else(|| format!("unknown bimodule {name:?}"))
    }

    fn verify(
        &self,
        suite: Suite,
        tri: &str,
        coeff: Option<&str>,
        max_degree: Option<usize>,
        nesting: Option<usize>,
    ) -> Result<Job, String> {
        let td = self
            .inst
            .triangular
            .get(tri)
            .ok_or_else(|| format!("unknown triangular algebra {tri:?}"))?;
        let default_coeff = match suite {
            Suite::CohomologySplit => Some(format!("{tri}*")),
            Suite::HomologySplit => Some(tri.to_string()),
            _ => None,
        };
        let coeff_name = coeff.map(str::to_string).or(default_coeff);
        let coeff = coeff_name.as_deref().map(|c| self.bimodule(c)).transpose()?.map(|c| c.1);
        let label = match &coeff_name {
            Some(c) => format!("{tri}[{c}]"),
            None => tri.to_string(),
        };
        Ok(Job::Verify {
            suite,
            label,
            td: Box::new(td.clone()),
            coeff,
            max_degree: self.degree(max_degree),
            nesting: nesting.unwrap_or(1),
        })
    }

    fn task(&self, task: &Task) -> Result<Job, String> {
        Ok(match task {
            Task::Verify {
                suite,
                triangular,
                coeff,
                max_degree,
                nesting,
            } => self.verify(*suite, triangular, coeff.as_deref(), *max_degree, *nesting)?,
            Task::Cohomology { algebra, coeff, max_degree } => Job::Complex {
                side: ComplexSide::Cochain,
                algebra: self.algebra(algebra)?,
                coeff: self.bimodule(coeff)?,
                max_degree: self.degree(*max_degree),
            },
            Task::Homology { algebra, coeff, max_degree } => Job::Complex {
                side: ComplexSide::Chain,
                algebra: self.algebra(algebra)?,
                coeff: self.bimodule(coeff)?,
                max_degree: self.degree(*max_degree),
            },
            Task::Ext { algebra, m, y, max_degree } => Job::Ext {
                algebra: self.algebra(algebra)?,
                m: self.bimodule(m)?,
                y: self.bimodule(y)?,
                max_degree: self.degree(*max_degree),
            },
            Task::Tor { algebra, x, m, max_degree } => Job::Tor {
                algebra: self.algebra(algebra)?,
                x: self.bimodule(x)?,
                m: self.bimodule(m)?,
                max_degree: self.degree(*max_degree),
            },
            Task::Trace { algebra } => Job::Trace {
                algebra: self.algebra(algebra)?,
            },
        })
    }

    /// Every suite on every triangular algebra of the instance.
    fn default_battery(&self, filter: Option<Suite>) -> Result<Vec<Job>, String> {
        let mut jobs = Vec::new();
        for (name, td) in &self.inst.triangular {
            for suite in Suite::ALL {
                if filter.is_some_and(|f| f != suite) {
                    continue;
                }
                if suite == Suite::OnePointExtension && td.b.as_ref() != &Algebra::field() {
                    continue;
                }
                jobs.push(self.verify(suite, name, None, None, None)?);
            }
        }
        Ok(jobs)
    }
}

fn jobs_for(command: &Command, inst: &Instance) -> Result<Vec<Job>, String> {
    let r = Resolver {
        inst,
        max_degree: command.common().max_degree,
    };
    let from_tasks = |tasks: Vec<&Task>| tasks.into_iter().map(|t| r.task(t)).collect::<Result<Vec<_>, _>>();
    match command {
        Command::Verify {
            suite: SuiteSelection(suite),
            ..
        } => {
            let verify_tasks: Vec<&Task> = inst.tasks.iter().filter(|t| matches!(t, Task::Verify { .. })).collect();
            if verify_tasks.is_empty() {
                return r.default_battery(*suite);
            }
            from_tasks(
                verify_tasks
                    .into_iter()
                    .filter(|t| match (t, suite) {
                        (Task::Verify { suite: s, .. }, Some(f)) => s == f,
                        _ => true,
                    })
                    .collect(),
            )
        }
        Command::Cohomology { algebra, coeff, .. } => Ok(vec![r.task(&Task::Cohomology {
            algebra: algebra.clone(),
            coeff: coeff.clone(),
            max_degree: None,
        })?]),
        Command::Homology { algebra, coeff, .. } => Ok(vec![r.task(&Task::Homology {
            algebra: algebra.clone(),
            coeff: coeff.clone(),
            max_degree: None,
        })?]),
        Command::Ext { algebra, m, y, .. } => Ok(vec![r.task(&Task::Ext {
            algebra: algebra.clone(),
            m: m.clone(),
            y: y.clone(),
            max_degree: None,
        })?]),
        Command::Tor { algebra, x, m, .. } => Ok(vec![r.task(&Task::Tor {
            algebra: algebra.clone(),
            x: x.clone(),
            m: m.clone(),
            max_degree: None,
        })?]),
        Command::Trace { algebra, .. } => Ok(vec![r.task(&Task::Trace { algebra: algebra.clone() })?]),
        Command::Run { .. } => from_tasks(inst.tasks.iter().collect()),
        Command::Validate { .. } => Ok(Vec::new()),
    }
}

/// Runs the command line `args` (including the program name), writing
/// reports to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return if code == 0 { 0 } else { EXIT_INPUT };
        }
    };
    let common = cli.command.common().clone();
    let inst = match &common.instance {
        Some(path) => match Instance::read(path) {
            Ok(inst) => inst,
            Err(e) => {
                let _ = writeln!(err, "error: {}: {e}", path.display());
                return EXIT_INPUT;
            }
        },
        None => Instance::bundled(),
    };
    if let Command::Validate { .. } = cli.command {
        let _ = writeln!(
            out,
            "ok: {} ({} algebras, {} bimodules, {} triangular, {} tasks)",
            inst.name,
            inst.algebras.len(),
            inst.bimodules.len(),
            inst.triangular.len(),
            inst.tasks.len()
        );
        return 0;
    }
    let jobs = match jobs_for(&cli.command, &inst) {
        Ok(jobs) => jobs,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let mut over = false;
    for job in &jobs {
        let projected = job.projected();
        let _ = writeln!(err, "projected dimension {projected:>8}  {}", job.subject());
        if projected > common.budget {
            over = true;
            let _ = writeln!(
                err,
                "budget exceeded: {} needs dimension {projected}, cap is {}{}",
                job.subject(),
                common.budget,
                if common.force { " (forced)" } else { "" }
            );
        }
    }
    if over && !common.force {
        return EXIT_BUDGET;
    }
    let results: Vec<Result<Record, JobError>> = jobs
        .par_iter()
        .map(|job| {
            let start = Instant::now();
            let mut rec = job.execute(&inst.name)?;
            if common.timings {
                rec.set_elapsed(start.elapsed().as_millis() as u64);
            }
            Ok(rec)
        })
        .collect();
    let mut code = 0;
    let mut records = Vec::new();
    for (job, res) in jobs.iter().zip(results) {
        match res {
            Ok(rec) => {
                if !rec.is_match() {
                    code = code.max(EXIT_MISMATCH);
                }
                records.push(rec);
            }
            Err(JobError::Input(msg)) => {
                let _ = writeln!(err, "error: {}: {msg}", job.subject());
                code = EXIT_INPUT;
            }
            Err(JobError::Compute(msg)) => {
                let _ = writeln!(err, "error: {}: {msg}", job.subject());
                code = code.max(EXIT_MISMATCH);
            }
        }
    }
    let lines: String = records.iter().map(|r| r.to_json_line() + "\n").collect();
    let _ = match common.format {
        Format::Table => write!(out, "{}", render_table(&records)),
        Format::Records => write!(out, "{lines}"),
    };
    if let Some(path) = &common.out {
        if let Err(e) = std::fs::write(path, &lines) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    code
}
