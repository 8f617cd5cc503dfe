//! Command-line front end; all computation lives in the library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bandrg::harness::{
    compare_rg_pc, convergence_study, write_atomic, write_comparison_report, xi_flow_report,
    REFERENCE_CUTOFF,
};
use bandrg::{lowest_k, reduce, Error, Method, OscillatorParams, RgConfig};

#[derive(Parser)]
#[command(
    name = "bandrg",
    about = "Band-diagonal oscillator Hamiltonians: cutoff reduction by Gaussian elimination \
             and spectrum accuracy studies",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Spectrum-independent reduction at trial energy 0.
    Approx,
    /// Reduction preserving the supplied trial energy exactly.
    Exact,
}

#[derive(Subcommand)]
enum Command {
    /// Diagonalize the oscillator at a fixed cutoff and print the lowest levels.
    Spectrum {
        /// Coupling of the quartic term.
        #[arg(long, allow_negative_numbers = true)]
        g: f64,
        /// Basis cutoff (matrix dimension is cutoff + 1).
        #[arg(long)]
        cutoff: u32,
        /// Number of lowest eigenvalues to report.
        #[arg(long)]
        levels: u32,
        /// Write the spectrum as CSV (index,eigenvalue).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Reduce the Hamiltonian from one cutoff to a smaller one by eliminating
    /// states from the top.
    Reduce {
        #[arg(long, allow_negative_numbers = true)]
        g: f64,
        /// Cutoff to start from.
        #[arg(long)]
        big_n: u32,
        /// Cutoff to reduce to.
        #[arg(long)]
        small_n: u32,
        /// Elimination scheme.
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Trial energy kept in the denominators (exact mode only).
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        trial_e: f64,
        /// Write the reduced matrix entries as CSV (k,l,value).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Compare renormalized and plain-cutoff spectra against the reference
    /// over a range of reduced cutoffs.
    Compare {
        #[arg(long, allow_negative_numbers = true)]
        g: f64,
        /// Cutoff the reduction starts from.
        #[arg(long, default_value_t = 200)]
        big_n: u32,
        /// Smallest reduced cutoff.
        #[arg(long)]
        n_min: u32,
        /// Largest reduced cutoff.
        #[arg(long)]
        n_max: u32,
        /// Number of lowest eigenvalues to compare.
        #[arg(long, default_value_t = 3)]
        levels: u32,
        /// Comparison table destination.
        #[arg(long)]
        csv: PathBuf,
        /// Optional relative-error plot.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Flow the six corner coefficients down from the initial cutoff and
    /// write the trace.
    Xi {
        #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
        g: f64,
        /// Cutoff the flow starts from.
        #[arg(long, default_value_t = 200)]
        big_n: u32,
        /// Cutoff the flow stops at (must be at least 4).
        #[arg(long, default_value_t = 8)]
        n_min: u32,
        /// Trace destination.
        #[arg(long)]
        csv: PathBuf,
        /// Optional coefficient plot.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check that the lowest levels agree across a list of cutoffs; exits
    /// with status 4 when the spread exceeds the tolerance.
    Converge {
        #[arg(long, allow_negative_numbers = true)]
        g: f64,
        /// Comma-separated cutoff list, e.g. 200,400,1000.
        #[arg(long, value_delimiter = ',', required = true)]
        cutoffs: Vec<u32>,
        #[arg(long, default_value_t = 3)]
        levels: u32,
        /// Largest admissible per-level relative spread.
        #[arg(long, default_value_t = 1e-10, allow_negative_numbers = true)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::InvalidConfig(_)
                | Error::IndexOutOfRange { .. }
                | Error::TruncateBeyondDim { .. }
                | Error::DimMismatch { .. } => 2,
                Error::Io(_) => 1,
                _ => 3,
            };
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Spectrum {
            g,
            cutoff,
            levels,
            csv,
        } => {
            let params = OscillatorParams::new(g)?;
            let h = bandrg::oscillator::hamiltonian(&params, cutoff as usize)?;
            let spectrum = lowest_k(&h, levels as usize)?
                .with_method(Method::Direct)
                .with_coupling(g);
            println!("oscillator spectrum at g = {g}, cutoff = {cutoff}");
            for (i, ev) in spectrum.eigenvalues.iter().enumerate() {
                println!("E{i} = {ev:.12e}");
            }
            if let Some(path) = csv {
                let mut buf = Vec::new();
                spectrum.write_csv(&mut buf)?;
                write_atomic(&path, &buf)?;
                println!("wrote {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce {
            g,
            big_n,
            small_n,
            mode,
            trial_e,
            csv,
        } => {
            let config = match mode {
                ModeArg::Approx => RgConfig::approximate(g, big_n as usize, small_n as usize),
                ModeArg::Exact => RgConfig::exact_at(g, big_n as usize, small_n as usize, trial_e),
            };
            let reduced = reduce(&config)?;
            println!(
                "reduced cutoff {big_n} -> {small_n} at g = {g} ({} mode)",
                match mode {
                    ModeArg::Approx => "approximate",
                    ModeArg::Exact => "exact",
                }
            );
            println!(
                "dimension {}, half-bandwidth {}",
                reduced.dim(),
                reduced.half_bandwidth()
            );
            let k = reduced.dim().min(4);
            let spectrum = lowest_k(&reduced, k)?;
            for (i, ev) in spectrum.eigenvalues.iter().enumerate() {
                println!("E{i} = {ev:.12e}");
            }
            if let Some(path) = csv {
                let mut buf = Vec::new();
                reduced.write_csv(&mut buf)?;
                write_atomic(&path, &buf)?;
                println!("wrote {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare {
            g,
            big_n,
            n_min,
            n_max,
            levels,
            csv,
            svg,
        } => {
            if n_min > n_max {
                return Err(Error::InvalidConfig(format!(
                    "n-min {n_min} exceeds n-max {n_max}"
                )));
            }
            let grid: Vec<usize> = (n_min as usize..=n_max as usize).collect();
            let report = compare_rg_pc(g, big_n as usize, &grid, levels as usize)?;
            for note in &report.notes {
                println!("note: {note}");
            }
            println!(
                "relative errors vs reference (cutoff {}), g = {g}, from N = {big_n}:",
                REFERENCE_CUTOFF
            );
            for &n in &grid {
                let rg_errs: Vec<String> = report
                    .rows
                    .iter()
                    .filter(|r| r.n == n)
                    .map(|r| format!("{:.3e}", r.rg_rel_err))
                    .collect();
                let pc_errs: Vec<String> = report
                    .rows
                    .iter()
                    .filter(|r| r.n == n)
                    .map(|r| format!("{:.3e}", r.pc_rel_err))
                    .collect();
                println!(
                    "n = {n:>4}: rg [{}]  pc [{}]",
                    rg_errs.join(", "),
                    pc_errs.join(", ")
                );
            }
            write_comparison_report(&report, &csv, svg.as_deref())?;
            println!("wrote {}", csv.display());
            if let Some(svg) = svg {
                println!("wrote {}", svg.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Xi {
            g,
            big_n,
            n_min,
            csv,
            svg,
        } => {
            let trace = xi_flow_report(g, big_n as usize, n_min as usize, &csv, svg.as_deref())?;
            let first = &trace.steps[0];
            let last = &trace.steps[trace.steps.len() - 1];
            println!(
                "corner coefficient flow at g = {g}: cutoff {} down to {}",
                first.cutoff, last.cutoff
            );
            println!(
                "xi at n = {}: [{}]",
                last.cutoff,
                last.xi
                    .iter()
                    .map(|v| format!("{v:.6}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            println!("wrote {}", csv.display());
            if let Some(svg) = svg {
                println!("wrote {}", svg.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Converge {
            g,
            cutoffs,
            levels,
            tol,
        } => {
            let cutoffs: Vec<usize> = cutoffs.into_iter().map(|c| c as usize).collect();
            let report = convergence_study(g, &cutoffs, levels as usize, tol)?;
            println!(
                "convergence of the lowest {} levels at g = {g} across cutoffs {:?}:",
                report.levels, report.cutoffs
            );
            for (i, spectrum) in report.spectra.iter().enumerate() {
                let evs: Vec<String> = spectrum.iter().map(|v| format!("{v:.12e}")).collect();
                println!("cutoff {:>5}: [{}]", report.cutoffs[i], evs.join(", "));
            }
            for (level, spread) in report.max_spread.iter().enumerate() {
                println!("level {level}: max relative spread {spread:.3e}");
            }
            if report.passed {
                println!("PASS: all spreads within {tol:e}");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("FAIL: spread exceeds {tol:e}");
                Ok(ExitCode::from(4))
            }
        }
    }
}
