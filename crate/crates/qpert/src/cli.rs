//! Command-line front end.
//!
//! Subcommands: `check`, `reduce`, `eliminate`, `sweep`, `tf`, `catalog`.
//! Exit codes: 0 success (and "realizable" for `check`), 1 not realizable
//! (`check` only), 2 input error (bad arguments, unreadable or malformed
//! files, wrong file kind), 3 numeric failure inside a computation.
//!
//! The library functions do the work; this module parses arguments, moves
//! files around and formats reports, so every code path here is also
//! reachable in-process through [`run_with`].

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::adiabatic::{build_special, eliminate};
use crate::catalog;
use crate::error::{Error, Result};
use crate::fileio::{LoadedSystem, SystemFile};
use crate::linalg::Tolerances;
use crate::qsys::{
    find_commutation_matrix, frequency_response, lossless_bounded_real_check, minimality_check,
    mode_transform, unitarity_defect, FrequencyGrid, QuantumLinearSystem,
};
use crate::random;
use crate::singular::{assemble_full, convergence_study, reduce_slow};

#[derive(Parser, Debug)]
#[command(
    name = "qpert",
    about = "Passive linear quantum systems: realizability checks and singular-perturbation reduction",
    version
)]
struct Cli {
    /// Override the residual tolerance used by every check.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Seed for randomized diagnostics (enables the similarity diagnostic
    /// in `check`).
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GridArg {
    /// Frequency grid as lo,hi,count (log-spaced, mirrored, plus ω = 0).
    #[arg(long, value_name = "LO,HI,COUNT")]
    grid: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Realizability, lossless-bounded-real and minimality report.
    /// Exit 0 if realizable, 1 if not.
    Check {
        file: PathBuf,
        /// Assembly parameter for partitioned/special-class files.
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
    },
    /// Slow-subsystem reduction of a partitioned or special-class file;
    /// writes a plain system file.
    Reduce {
        file: PathBuf,
        /// Output path (prints the JSON to stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Adiabatic elimination of a special-class file; writes the reduced
    /// plain system file and prints the reduced physical parameters
    /// (Λ̃, S̃, M̃).
    Eliminate {
        file: PathBuf,
        /// Output path (prints the JSON to stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Frequency-domain convergence study of the reduction error over an
    /// ε sweep; writes CSV.
    Sweep {
        file: PathBuf,
        /// Comma-separated ε values (at least 3).
        #[arg(long, value_delimiter = ',', required = true)]
        epsilons: Vec<f64>,
        #[command(flatten)]
        grid: GridArg,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Frequency response on a grid; writes CSV.
    Tf {
        file: PathBuf,
        #[command(flatten)]
        grid: GridArg,
        /// Assembly parameter for partitioned/special-class files.
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// List built-in systems, or export one to a system file.
    Catalog {
        /// Entry name (`pathological`, `cavity`, `cavity-equal`).
        name: Option<String>,
        /// Export path for the entry.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Export the special-class parameters instead of the partitioned
        /// blocks.
        #[arg(long)]
        special: bool,
        /// First cavity coupling (only with `cavity`).
        #[arg(long)]
        k1: Option<f64>,
        /// Second cavity coupling (only with `cavity`).
        #[arg(long)]
        k2: Option<f64>,
    },
}

/// Run with explicit output streams; returns the exit code.
pub fn run_with<O: Write, E: Write>(
    args: impl IntoIterator<Item = String>,
    out: &mut O,
    err: &mut E,
) -> i32 {
    let argv: Vec<String> = std::iter::once("qpert".to_string()).chain(args).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };

    let tol = match cli.tol {
        None => Tolerances::default(),
        Some(t) => match Tolerances::default().with_residual_tol(t) {
            Ok(t) => t,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
        },
    };

    match dispatch(cli.command, cli.seed, &tol, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

/// Run with stdout/stderr (the binary entry point).
pub fn run(args: impl IntoIterator<Item = String>) -> i32 {
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    run_with(args, &mut out, &mut err)
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Io(_)
        | Error::Format(_)
        | Error::Dimension(_)
        | Error::NonFinite { .. }
        | Error::InvalidParameter(_) => 2,
        Error::Numeric(_)
        | Error::NoUniqueSolution { .. }
        | Error::SingularMatrix { .. }
        | Error::InconsistentWitness(_)
        | Error::PoleProximity { .. }
        | Error::ReductionUndefined { .. }
        | Error::EliminationUndefined { .. } => 3,
    }
}

fn parse_grid(arg: &GridArg) -> Result<FrequencyGrid> {
    match &arg.grid {
        None => Ok(FrequencyGrid::default_grid()),
        Some(text) => {
            let parts: Vec<&str> = text.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::InvalidParameter(format!(
                    "--grid expects lo,hi,count, got {text:?}"
                )));
            }
            let lo: f64 = parts[0]
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad grid lo {:?}", parts[0])))?;
            let hi: f64 = parts[1]
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad grid hi {:?}", parts[1])))?;
            let count: usize = parts[2]
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad grid count {:?}", parts[2])))?;
            FrequencyGrid::log_mirrored(lo, hi, count)
        }
    }
}

/// Load a file and, for family kinds, assemble at ε.
fn load_as_plain(
    path: &Path,
    epsilon: f64,
    tol: &Tolerances,
) -> Result<(QuantumLinearSystem, String)> {
    let file = SystemFile::read(path)?;
    match file.load(tol)? {
        LoadedSystem::Plain(sys) => Ok((sys, "plain".into())),
        LoadedSystem::Partitioned(p) => {
            let sys = assemble_full(&p, epsilon)?;
            Ok((
                sys,
                format!("partitioned, assembled at epsilon = {epsilon}"),
            ))
        }
        LoadedSystem::Special(params) => {
            let sys = assemble_full(&build_special(&params), epsilon)?;
            Ok((
                sys,
                format!("special_class, assembled at epsilon = {epsilon}"),
            ))
        }
    }
}

fn dispatch<O: Write>(
    command: Command,
    seed: Option<u64>,
    tol: &Tolerances,
    out: &mut O,
) -> Result<i32> {
    match command {
        Command::Check { file, epsilon } => check(&file, epsilon, seed, tol, out),
        Command::Reduce { file, output } => reduce(&file, output.as_deref(), tol, out),
        Command::Eliminate { file, output } => eliminate_cmd(&file, output.as_deref(), tol, out),
        Command::Sweep {
            file,
            epsilons,
            grid,
            output,
        } => sweep(&file, &epsilons, &grid, &output, tol, out),
        Command::Tf {
            file,
            grid,
            epsilon,
            output,
        } => tf(&file, &grid, epsilon, &output, tol, out),
        Command::Catalog {
            name,
            output,
            special,
            k1,
            k2,
        } => catalog_cmd(
            name.as_deref(),
            output.as_deref(),
            special,
            k1,
            k2,
            tol,
            out,
        ),
    }
}

fn check<O: Write>(
    path: &Path,
    epsilon: f64,
    seed: Option<u64>,
    tol: &Tolerances,
    out: &mut O,
) -> Result<i32> {
    let (sys, origin) = load_as_plain(path, epsilon, tol)?;
    writeln!(
        out,
        "system: {origin}; n = {}, m = {}",
        sys.modes(),
        sys.inputs()
    )?;

    let report = find_commutation_matrix(&sys, tol)?;
    writeln!(
        out,
        "physically realizable: {}",
        if report.realizable { "yes" } else { "no" }
    )?;
    writeln!(
        out,
        "  residuals: lyapunov {:.3e}, coupling {:.3e}, K unitarity {:.3e}",
        report.residuals.lyapunov, report.residuals.coupling, report.residuals.unitary_k
    )?;
    if let Some(w) = &report.witness {
        writeln!(out, "  commutation matrix Θ:")?;
        for line in format!("{}", w.theta()).lines() {
            writeln!(out, "    {line}")?;
        }
    }
    if let Some(reason) = &report.failure_reason {
        writeln!(out, "  reason: {reason}")?;
    }

    let grid = FrequencyGrid::default_grid();
    let lossless = lossless_bounded_real_check(&sys, &grid, tol)?;
    writeln!(
        out,
        "lossless bounded real: {} (max unitarity defect {:.3e}, max Re eigenvalue {:.3e}{})",
        lossless.verdict,
        lossless.max_unitarity_defect,
        lossless.max_re_eigenvalue,
        if lossless.skipped_omegas.is_empty() {
            String::new()
        } else {
            format!(
                ", {} grid points skipped near poles",
                lossless.skipped_omegas.len()
            )
        }
    )?;

    let minimal = minimality_check(&sys, tol)?;
    write!(out, "minimality: {}", minimal.verdict)?;
    if !minimal.uncontrollable_eigenvalues.is_empty() {
        write!(
            out,
            "; uncontrollable at {:?}",
            minimal
                .uncontrollable_eigenvalues
                .iter()
                .map(|l| format!("{l:.4}"))
                .collect::<Vec<_>>()
        )?;
    }
    if !minimal.unobservable_eigenvalues.is_empty() {
        write!(
            out,
            "; unobservable at {:?}",
            minimal
                .unobservable_eigenvalues
                .iter()
                .map(|l| format!("{l:.4}"))
                .collect::<Vec<_>>()
        )?;
    }
    writeln!(out)?;

    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let trials = 3;
        let mut stable = true;
        for _ in 0..trials {
            let u = random::unitary(&mut rng, sys.modes());
            let transformed = mode_transform(&sys, &u)?;
            let r2 = find_commutation_matrix(&transformed, tol)?;
            let m2 = minimality_check(&transformed, tol)?;
            if r2.realizable != report.realizable || m2.verdict != minimal.verdict {
                stable = false;
            }
        }
        writeln!(
            out,
            "similarity diagnostic (seed {seed}): verdicts {} across {trials} random unitary mode transformations",
            if stable { "stable" } else { "UNSTABLE" }
        )?;
    }

    Ok(if report.realizable { 0 } else { 1 })
}

fn write_or_print<O: Write>(
    file: &SystemFile,
    output: Option<&Path>,
    out: &mut O,
    label: &str,
) -> Result<()> {
    match output {
        Some(path) => {
            file.write(path)?;
            writeln!(out, "{label} written to {}", path.display())?;
        }
        None => {
            writeln!(out, "{}", file.to_json())?;
        }
    }
    Ok(())
}

fn reduce<O: Write>(
    path: &Path,
    output: Option<&Path>,
    tol: &Tolerances,
    out: &mut O,
) -> Result<i32> {
    let file = SystemFile::read(path)?;
    let partitioned = match file.load(tol)? {
        LoadedSystem::Partitioned(p) => p,
        LoadedSystem::Special(params) => build_special(&params),
        LoadedSystem::Plain(_) => {
            return Err(Error::Format(
                "reduce needs a partitioned or special_class file".into(),
            ))
        }
    };
    let reduced = reduce_slow(&partitioned, tol)?;
    write_or_print(
        &SystemFile::from_plain(&reduced),
        output,
        out,
        "reduced system",
    )?;
    Ok(0)
}

fn eliminate_cmd<O: Write>(
    path: &Path,
    output: Option<&Path>,
    tol: &Tolerances,
    out: &mut O,
) -> Result<i32> {
    let file = SystemFile::read(path)?;
    let params = match file.load(tol)? {
        LoadedSystem::Special(params) => params,
        _ => return Err(Error::Format("eliminate needs a special_class file".into())),
    };
    let result = eliminate(&params, tol)?;
    writeln!(out, "reduced coupling matrix Λ̃:")?;
    for line in format!("{}", result.lambda_t).lines() {
        writeln!(out, "  {line}")?;
    }
    writeln!(out, "reduced scattering matrix S̃:")?;
    for line in format!("{}", result.s_t).lines() {
        writeln!(out, "  {line}")?;
    }
    writeln!(
        out,
        "reduced Hamiltonian matrix M̃ (Hermitian defect before averaging {:.3e}):",
        result.m_asymmetry
    )?;
    for line in format!("{}", result.m_t).lines() {
        writeln!(out, "  {line}")?;
    }
    write_or_print(
        &SystemFile::from_plain(&result.reduced),
        output,
        out,
        "eliminated system",
    )?;
    Ok(0)
}

fn sweep<O: Write>(
    path: &Path,
    epsilons: &[f64],
    grid_arg: &GridArg,
    output: &Path,
    tol: &Tolerances,
    out: &mut O,
) -> Result<i32> {
    let file = SystemFile::read(path)?;
    let partitioned = match file.load(tol)? {
        LoadedSystem::Partitioned(p) => p,
        LoadedSystem::Special(params) => build_special(&params),
        LoadedSystem::Plain(_) => {
            return Err(Error::Format(
                "sweep needs a partitioned or special_class file".into(),
            ))
        }
    };
    let grid = match &grid_arg.grid {
        // convergence studies default to the band below the fast pole
        None => FrequencyGrid::convergence_band(),
        Some(_) => parse_grid(grid_arg)?,
    };
    let report = convergence_study(&partitioned, epsilons, &grid, tol)?;

    let mut csv = String::from("epsilon,sup_error,unitarity_defect\n");
    for (i, &eps) in report.epsilons.iter().enumerate() {
        let sys = assemble_full(&partitioned, eps)?;
        let defect = lossless_bounded_real_check(&sys, &grid, tol)?.max_unitarity_defect;
        csv.push_str(&format!("{eps},{},{}\n", report.sup_errors[i], defect));
    }
    match report.fitted_slope {
        Some(s) => csv.push_str(&format!("fitted_slope,{s}\n")),
        None => csv.push_str("fitted_slope,n/a\n"),
    }
    csv.push_str(&format!(
        "first_order_coefficient_norm,{}\n",
        report.first_order_coefficient_norm
    ));
    std::fs::write(output, csv)?;
    writeln!(
        out,
        "sweep over {} epsilons written to {} (fitted slope: {})",
        report.epsilons.len(),
        output.display(),
        report
            .fitted_slope
            .map_or("n/a".to_string(), |s| format!("{s:.4}"))
    )?;
    Ok(0)
}

fn tf<O: Write>(
    path: &Path,
    grid_arg: &GridArg,
    epsilon: f64,
    output: &Path,
    tol: &Tolerances,
    out: &mut O,
) -> Result<i32> {
    let (sys, _) = load_as_plain(path, epsilon, tol)?;
    let grid = parse_grid(grid_arg)?;
    let phis = frequency_response(&sys, &grid, tol)?;

    let m = sys.inputs();
    let mut header = String::from("omega");
    for i in 0..m {
        for j in 0..m {
            header.push_str(&format!(
                ",re_phi_{}_{},im_phi_{}_{}",
                i + 1,
                j + 1,
                i + 1,
                j + 1
            ));
        }
    }
    header.push_str(",unitarity_defect\n");
    let mut csv = header;
    for (phi, &w) in phis.iter().zip(grid.omegas()) {
        csv.push_str(&format!("{w}"));
        for i in 0..m {
            for j in 0..m {
                let z = phi.get(i, j);
                csv.push_str(&format!(",{},{}", z.re, z.im));
            }
        }
        csv.push_str(&format!(",{}\n", unitarity_defect(phi)));
    }
    std::fs::write(output, csv)?;
    writeln!(
        out,
        "frequency response on {} grid points written to {}",
        grid.len(),
        output.display()
    )?;
    Ok(0)
}

fn catalog_cmd<O: Write>(
    name: Option<&str>,
    output: Option<&Path>,
    special: bool,
    k1: Option<f64>,
    k2: Option<f64>,
    tol: &Tolerances,
    out: &mut O,
) -> Result<i32> {
    let _ = tol;
    let Some(name) = name else {
        writeln!(out, "built-in systems:")?;
        for entry in catalog::entries() {
            writeln!(out, "  {:<14} {}", entry.name, entry.summary)?;
        }
        writeln!(
            out,
            "export with: qpert catalog <name> -o <file> [--special] [--k1 X --k2 Y]"
        )?;
        return Ok(0);
    };

    if (k1.is_some() || k2.is_some()) && name != "cavity" {
        return Err(Error::InvalidParameter(
            "--k1/--k2 only apply to the cavity entry".into(),
        ));
    }
    let entry = if name == "cavity" && (k1.is_some() || k2.is_some()) {
        catalog::cavity_example(k1.unwrap_or(4.0), k2.unwrap_or(1.0))?
    } else {
        catalog::find(name)
            .ok_or_else(|| Error::InvalidParameter(format!("no catalog entry named {name:?}")))?
    };

    writeln!(out, "{}: {}", entry.name, entry.summary)?;
    writeln!(
        out,
        "dims: n1 = {}, n2 = {}, m = {}",
        entry.partitioned.n1(),
        entry.partitioned.n2(),
        entry.partitioned.inputs()
    )?;
    for (item, origin) in entry.expected.provenance {
        writeln!(out, "  {item}: {origin}")?;
    }

    if let Some(path) = output {
        let file = if special {
            let params = entry.special.as_ref().ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "entry {:?} has no special-class parameters",
                    entry.name
                ))
            })?;
            SystemFile::from_special(params)
        } else {
            SystemFile::from_partitioned(&entry.partitioned)
        };
        file.write(path)?;
        writeln!(out, "exported to {}", path.display())?;
    }
    Ok(0)
}
