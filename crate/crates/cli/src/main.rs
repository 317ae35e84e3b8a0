//! `bisym`: generate, check and apply bivariate symmetric wavelet filters.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on bad
//! usage or unreadable input.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bisym_core::angle::parse_angle;
use bisym_core::cascade::{autocorrelation, cascade_iterate_with, CascadeSeed};
use bisym_core::dwt::{analyze_with, compare_filters, energy_compaction, synthesize, SubbandSet};
use bisym_core::lawton::{axis_cycle_check, lawton_spectrum, Axis, Verdict, DEFAULT_EIGEN_TOL};
use bisym_core::masks::{Case2aPart, Sign};
use bisym_core::moments8::{
    check_moment_equations8, check_qmf8, circle_relation_residuals, polyphase8_split, solve_moment_sums,
};
use bisym_core::shell::{
    bank_for, fmt_real, generate, read_mask, read_pgm, read_plane_csv, render_mask, scan_case1,
    write_cascade_csv, write_mask, write_pgm, write_plane_csv, write_scan_csv, MaskRecipe, Pgm, ScanOptions,
};
use bisym_core::verify::{verify_mask, DEFAULT_GRID, DEFAULT_TOL};
use bisym_core::{Error, Execution};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bisym", version, about = "Bivariate symmetric orthonormal wavelet filters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn angle_arg(s: &str) -> Result<f64, String> {
    parse_angle(s).ok_or_else(|| format!("{s:?} is not an angle (radians, or forms like pi/4, -3pi/4)"))
}

fn sign_arg(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "plus" | "+1" | "1" => Ok(Sign::Plus),
        "-" | "minus" | "-1" => Ok(Sign::Minus),
        _ => Err(format!("{s:?} is not a sign (+ or -)")),
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Case1,
    Case2a,
    Case4a,
    Haar,
    D4,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeedArg {
    Unit,
    Box2,
}

#[derive(Subcommand)]
enum Command {
    /// Write a mask from one of the closed-form families.
    Gen {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long, value_parser = angle_arg, allow_hyphen_values = true)]
        beta: Option<f64>,
        #[arg(long, value_parser = angle_arg, allow_hyphen_values = true)]
        gamma: Option<f64>,
        #[arg(long, value_parser = angle_arg, allow_hyphen_values = true)]
        alpha: Option<f64>,
        /// Case 2a part (1, 2, 3) or Case 4a solution (1 to 6).
        #[arg(long)]
        part: Option<usize>,
        #[arg(long, value_parser = sign_arg, allow_hyphen_values = true, default_value = "+")]
        sign: Sign,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check existence, symmetry, orthogonality, moments and the QMF identity.
    Verify {
        mask: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Transfer-matrix spectrum and the multiplicity of eigenvalue 1.
    Lawton {
        mask: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EIGEN_TOL)]
        tol: f64,
        /// Eigenvalues to list, nearest to 1 first.
        #[arg(long, default_value_t = 6)]
        show: usize,
    },
    /// Doubling-map cycles on the axes where the mask has modulus 1.
    Cycles {
        mask: PathBuf,
        #[arg(long, default_value_t = 64)]
        max_den: u64,
    },
    /// Cascade iteration; writes the sampled scaling function as CSV.
    Cascade {
        mask: PathBuf,
        #[arg(long)]
        levels: usize,
        #[arg(long, value_enum, default_value = "unit")]
        seed: SeedArg,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        sequential: bool,
    },
    /// One-level analysis of a PGM image; writes four subband CSV files.
    Dwt {
        #[arg(long)]
        mask: PathBuf,
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        out_prefix: String,
        #[arg(long)]
        sequential: bool,
    },
    /// Synthesis from the subband files written by `dwt`.
    Idwt {
        #[arg(long)]
        mask: PathBuf,
        #[arg(long)]
        in_prefix: String,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 255)]
        maxval: u16,
    },
    /// Energy compaction and reconstruction error of several filters on one image.
    Compare {
        #[arg(long)]
        image: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        masks: Vec<PathBuf>,
    },
    /// Case 1 over an N x N grid of (beta, gamma); writes CSV.
    Scan {
        #[arg(long)]
        grid: usize,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 6)]
        levels: usize,
        #[arg(long)]
        sequential: bool,
    },
    /// Polyphase equations and quad-sum relations of an 8x8 mask. A 6x6
    /// mask is embedded at offset (1, 1).
    Moments8 {
        #[arg(long)]
        mask: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

enum Failure {
    /// A check ran and did not pass.
    Check,
    Error(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Error(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn status(pass: bool) -> Outcome {
    if pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn mark(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn exec(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn max(v: &[f64]) -> f64 {
    v.iter().copied().fold(0.0, f64::max)
}

fn need(v: Option<f64>, flag: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for this case")))
}

fn gen(
    case: CaseArg,
    beta: Option<f64>,
    gamma: Option<f64>,
    alpha: Option<f64>,
    part: Option<usize>,
    sign: Sign,
    output: Option<&Path>,
) -> Outcome {
    let recipe = match case {
        CaseArg::Case1 => MaskRecipe::Case1 { beta: need(beta, "beta")?, gamma: need(gamma, "gamma")? },
        CaseArg::Case2a => {
            let part = match part {
                Some(1) => Case2aPart::P1 { gamma: need(gamma, "gamma")? },
                Some(2) => Case2aPart::P2 { alpha: need(alpha, "alpha")? },
                Some(3) => Case2aPart::P3,
                _ => return Err(Failure::Usage("case2a needs --part 1, 2 or 3".into())),
            };
            MaskRecipe::Case2a { part, sign }
        }
        CaseArg::Case4a => MaskRecipe::Case4a { index: part.unwrap_or(1) },
        CaseArg::Haar => MaskRecipe::Haar,
        CaseArg::D4 => MaskRecipe::D4,
    };
    let file = generate(recipe).map_err(|e| match e {
        Error::ConstructionInconsistent { .. } => Failure::Check,
        other => Failure::Error(other),
    })?;
    match output {
        Some(path) => write_mask(path, &file)?,
        None => print!("{}", render_mask(&file)),
    }
    Ok(())
}

fn verify(path: &Path, tol: f64, grid: usize) -> Outcome {
    let file = read_mask(path)?;
    let r = verify_mask(&file.mask, tol, grid);
    println!("mask {} ({}x{})", file.name, file.mask.rows(), file.mask.cols());
    println!("existence      {}  {:e}", mark(r.existence_pass()), r.existence_residual);
    println!("symmetry       {}  {:e}", mark(r.symmetry_pass()), r.symmetry_residual);
    match &r.orthogonality_residuals {
        Some(v) => println!("orthogonality  {}  {:e} ({} equations)", mark(r.orthogonality_pass()), max(v), v.len()),
        None => println!("orthogonality  skip (no polyphase form)"),
    }
    let lin = r.moment_residuals.as_deref().map_or(0.0, max);
    println!(
        "moments        {}  linear {:e}, derivative {:e}",
        mark(r.moments_pass()),
        lin,
        r.vanishing_moment_residual
    );
    println!("qmf grid {grid:<5} {}  {:e}", mark(r.qmf_pass()), r.qmf_grid_max_residual);
    println!("overall        {}", mark(r.pass()));
    status(r.pass())
}

fn lawton(path: &Path, tol: f64, show: usize) -> Outcome {
    let file = read_mask(path)?;
    let s = lawton_spectrum(&file.mask, tol)?;
    println!("unit multiplicity {}", s.unit_multiplicity);
    println!("spectral gap {}", fmt_real(s.spectral_gap));
    for e in s.eigenvalues.iter().take(show) {
        println!("  {} {}i", fmt_real(e.re), fmt_real(e.im));
    }
    println!("verdict {}", s.verdict);
    status(s.verdict == Verdict::Orthonormal)
}

fn cycles(path: &Path, max_den: u64) -> Outcome {
    let file = read_mask(path)?;
    let found = axis_cycle_check(&file.mask, max_den);
    if found.is_empty() {
        println!("no cycles with denominator <= {max_den}");
    }
    for c in &found {
        let axis = match c.axis {
            Axis::X => "x",
            Axis::Y => "y",
        };
        let nums: Vec<String> = c.numerators.iter().map(u64::to_string).collect();
        println!("{axis}-axis cycle 2pi*{{{}}}/{}", nums.join(","), c.denominator);
    }
    status(found.is_empty())
}

fn cascade(path: &Path, levels: usize, seed: SeedArg, output: &Path, sequential: bool) -> Outcome {
    let file = read_mask(path)?;
    let seed = match seed {
        SeedArg::Unit => CascadeSeed::UnitSquare,
        SeedArg::Box2 => CascadeSeed::Box2,
    };
    let grid = cascade_iterate_with(&file.mask, levels, seed, exec(sequential))?;
    write_cascade_csv(BufWriter::new(File::create(output)?), &grid)?;
    for (i, d) in grid.deltas.iter().enumerate() {
        println!("level {} change {}", i + 1, fmt_real(*d));
    }
    println!("integral {}", fmt_real(grid.integral()));
    println!("max |<phi, phi(.-l)> - delta| {}", fmt_real(autocorrelation(&grid).delta_distance()));
    Ok(())
}

fn band_path(prefix: &str, i: usize) -> String {
    format!("{prefix}_band{i}.csv")
}

fn dwt(mask: &Path, image: &Path, prefix: &str, sequential: bool) -> Outcome {
    let bank = bank_for(&read_mask(mask)?)?;
    let plane = read_pgm(image)?.to_plane();
    let bands = analyze_with(&plane, &bank, exec(sequential))?;
    for (i, b) in bands.bands.iter().enumerate() {
        write_plane_csv(band_path(prefix, i), b)?;
    }
    let e = energy_compaction(&bands);
    let fr: Vec<String> = e.fractions.iter().map(|f| format!("{f:.6}")).collect();
    println!("energy {} fractions {}", fmt_real(e.total), fr.join(" "));
    println!("coefficients for 99% {}", e.coeffs_for_99);
    let back = synthesize(&bands, &bank)?;
    println!("reconstruction error {:e}", plane.relative_error(&back));
    Ok(())
}

fn idwt(mask: &Path, prefix: &str, output: &Path, maxval: u16) -> Outcome {
    let bank = bank_for(&read_mask(mask)?)?;
    let mut planes = Vec::with_capacity(4);
    for i in 0..4 {
        planes.push(read_plane_csv(band_path(prefix, i))?);
    }
    let bands: [_; 4] = planes.try_into().map_err(|_| Failure::Usage("four bands expected".into()))?;
    let img = synthesize(&SubbandSet { bands }, &bank)?;
    write_pgm(output, &Pgm::from_plane(&img, maxval)?)?;
    println!("wrote {}x{} image", img.width, img.height);
    Ok(())
}

fn compare(image: &Path, masks: &[PathBuf]) -> Outcome {
    let plane = read_pgm(image)?.to_plane();
    let mut banks = Vec::with_capacity(masks.len());
    for m in masks {
        let f = read_mask(m)?;
        banks.push((f.name.clone(), bank_for(&f)?));
    }
    let rows = compare_filters(&plane, &banks)?;
    println!("{:<16} {:>10} {:>10} {:>10} {:>10} {:>8} {:>12}", "filter", "approx", "d1", "d2", "d3", "n99", "pr_error");
    let mut ok = true;
    for r in &rows {
        let f = r.energy.fractions;
        println!(
            "{:<16} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>8} {:>12.3e}",
            r.name, f[0], f[1], f[2], f[3], r.energy.coeffs_for_99, r.pr_residual
        );
        ok &= r.pr_residual < 1e-9;
    }
    status(ok)
}

fn scan(grid: usize, output: &Path, levels: usize, sequential: bool) -> Outcome {
    let opts = ScanOptions { exec: exec(sequential), levels, ..ScanOptions::default() };
    let records = scan_case1(grid, &opts)?;
    write_scan_csv(BufWriter::new(File::create(output)?), &records)?;
    let failed = records.iter().filter(|r| r.error.is_some()).count();
    let single = records.iter().filter(|r| r.unit_multiplicity == Some(1)).count();
    println!("{} points, {} with simple eigenvalue 1, {} with errors", records.len(), single, failed);
    Ok(())
}

fn moments8(path: &Path, tol: f64) -> Outcome {
    let file = read_mask(path)?;
    let mask = if (file.mask.rows(), file.mask.cols()) == (6, 6) {
        file.mask.embed(8, 8, (1, 1))?
    } else {
        file.mask
    };
    let p = polyphase8_split(&mask)?;
    let q = check_qmf8(&p)?;
    let lin = check_moment_equations8(&p)?;
    let circle = circle_relation_residuals(&p);
    let qmf_ok = max(&q.residuals) < tol && q.sum_residual < tol;
    let lin_ok = max(&lin) < tol;
    let circle_ok = max(&circle) < tol;
    println!("orthogonality {}  {:e} ({} equations), sum {:e}", mark(qmf_ok), max(&q.residuals), q.residuals.len(), q.sum_residual);
    println!("moments       {}  {:e}", mark(lin_ok), max(&lin));
    println!("circle        {}  {:e}", mark(circle_ok), max(&circle));
    let lemma_ok = match solve_moment_sums(&p) {
        Ok(m) => {
            println!("r0 {} s0 {} r1 {} s1 {}", m.r0, m.s0, m.r1, m.s1);
            println!("t0 {} u0 {} t1 {} u1 {}", m.t0, m.u0, m.t1, m.u1);
            println!("alpha {} beta {}", fmt_real(m.alpha8), fmt_real(m.beta8));
            true
        }
        Err(Error::LemmaViolated(msg)) => {
            println!("quad sums     FAIL  {msg}");
            false
        }
        Err(e) => return Err(e.into()),
    };
    status(qmf_ok && lin_ok && circle_ok && lemma_ok)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen { case, beta, gamma, alpha, part, sign, output } => {
            gen(case, beta, gamma, alpha, part, sign, output.as_deref())
        }
        Command::Verify { mask, tol, grid } => verify(&mask, tol, grid),
        Command::Lawton { mask, tol, show } => lawton(&mask, tol, show),
        Command::Cycles { mask, max_den } => cycles(&mask, max_den),
        Command::Cascade { mask, levels, seed, output, sequential } => {
            cascade(&mask, levels, seed, &output, sequential)
        }
        Command::Dwt { mask, image, out_prefix, sequential } => dwt(&mask, &image, &out_prefix, sequential),
        Command::Idwt { mask, in_prefix, output, maxval } => idwt(&mask, &in_prefix, &output, maxval),
        Command::Compare { image, masks } => compare(&image, &masks),
        Command::Scan { grid, output, levels, sequential } => scan(grid, &output, levels, sequential),
        Command::Moments8 { mask, tol } => moments8(&mask, tol),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage: {msg}");
            ExitCode::from(2)
        }
    }
}
