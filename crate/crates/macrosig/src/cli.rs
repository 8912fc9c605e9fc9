//! Command-line front end.
//!
//! Five subcommands cover the pipeline: `analyze` evaluates the witnesses
//! on sample files, `simulate` writes reproducible sample files from
//! models, `sweep` maps the certifiable separation against the
//! uncertainty product, `spin` tabulates the collective-spin witness on
//! the entangled lattice model, and `adversary-check` runs the null-model
//! soundness suites.
//!
//! Exit codes: 0 when a certifying violation was found (or the requested
//! work completed with nothing to flag), 1 when no violation was found
//! (or a soundness breach was observed), 2 on input errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::adversary::{suite_mixture, suite_spin_null};
use crate::criteria::{
    max_certified_separation, theorem1, theorem1_from_regions, theorem2, CriterionReport,
    ScanGrid,
};
use crate::error::{Error, Result};
use crate::io::{read_samples, write_samples, ParsedSamples};
use crate::report::{report_json, reports_csv, reports_json, scan_json, sweep_csv};
use crate::sampler::{sample_gaussian, sample_joint_p, sample_spin, Observable, Records};
use crate::states::{
    impure_gaussian, single_mode_squeezed, spin_entangled, spin_observables, two_mode_squeezed,
    GaussianModel,
};
use crate::stats::{inference_fit, EmpiricalDistribution, InferenceFit};

#[derive(Debug, Parser)]
#[command(
    name = "macrosig",
    version,
    about = "Certify macroscopic superpositions from outcome statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the quadrature witnesses on measured sample files.
    Analyze(AnalyzeArgs),
    /// Draw reproducible sample files from a model.
    Simulate(SimulateArgs),
    /// Map the largest certifiable separation against the uncertainty
    /// product, analytically.
    Sweep(SweepArgs),
    /// Tabulate the collective-spin witness on the entangled lattice
    /// model.
    Spin(SpinArgs),
    /// Run the null-model soundness suites.
    AdversaryCheck(AdversaryArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatKind {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Position sample file (header `x`).
    x_file: PathBuf,
    /// Momentum sample file: header `p` for direct spread, `p,p_b` for
    /// the inference channel.
    p_file: PathBuf,
    /// Evaluate a single separation instead of scanning.
    #[arg(long)]
    s: Option<f64>,
    /// Scan ceiling (default: four standard deviations of x).
    #[arg(long)]
    scan_max: Option<f64>,
    /// Number of scan grid points.
    #[arg(long)]
    scan_points: Option<usize>,
    /// Output format (default json).
    #[arg(long, value_enum)]
    format: Option<FormatKind>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    verbose: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelKind {
    /// Single-mode squeezed quadratures.
    Single,
    /// Two-mode squeezed quadratures with a `(p, p_B)` joint file.
    Two,
    /// Spin-entangled lattice outcomes.
    Spin,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Which model to draw from.
    #[arg(long, value_enum)]
    model: ModelKind,
    /// Squeezing parameter for the quadrature models.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Spin magnitude for the spin model.
    #[arg(long)]
    j: Option<f64>,
    /// Number of records per file.
    #[arg(long, default_value_t = 1000)]
    n: usize,
    /// RNG seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output directory for the sample files and the sidecar.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    verbose: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Uncertainty-product grid as start:stop:step.
    #[arg(long, default_value = "1.0:1.8:0.02")]
    product_grid: String,
    /// Output format (default csv).
    #[arg(long, value_enum)]
    format: Option<FormatKind>,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    verbose: bool,
}

#[derive(Debug, Args)]
struct SpinArgs {
    /// Spin magnitude (half-integer lattice).
    #[arg(long)]
    j: f64,
    /// Output format (default csv).
    #[arg(long, value_enum)]
    format: Option<FormatKind>,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    verbose: bool,
}

#[derive(Debug, Args)]
struct AdversaryArgs {
    /// Number of null models per suite.
    #[arg(long, default_value_t = 10000)]
    n: u64,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output format (default json).
    #[arg(long, value_enum)]
    format: Option<FormatKind>,
    /// Write the summary here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    verbose: bool,
}

/// Parse arguments from the process environment and run to an exit code.
pub fn run() -> u8 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(Outcome::Certified) => 0,
        Ok(Outcome::NoViolation) => 1,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

enum Outcome {
    Certified,
    NoViolation,
}

impl Outcome {
    fn from_flag(certified: bool) -> Self {
        if certified {
            Outcome::Certified
        } else {
            Outcome::NoViolation
        }
    }
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Analyze(args) => analyze(args),
        Command::Simulate(args) => simulate(args),
        Command::Sweep(args) => sweep(args),
        Command::Spin(args) => spin(args),
        Command::AdversaryCheck(args) => adversary_check(args),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn with_newline(mut text: String) -> String {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    text
}

fn warn_if_inapplicable(reports: &[CriterionReport], certified: bool) {
    if !certified && reports.iter().any(|r| r.violated && !r.region.flags.applicable()) {
        eprintln!(
            "warning: violations occurred only with an empty outer region; \
             certification requires both P+ > 0 and P- > 0"
        );
    }
}

/// The momentum side of an analysis: either a direct spread or an
/// inference fit from joint records.
enum Channel {
    Direct(f64),
    Inferred(InferenceFit),
}

fn scalar_records(parsed: &ParsedSamples, path: &Path) -> Result<Vec<f64>> {
    match &parsed.records {
        Records::Scalars(v) => Ok(v.clone()),
        Records::Pairs(_) => Err(Error::BadHeader {
            path: path.to_path_buf(),
            found: parsed.header.clone(),
        }),
    }
}

fn analyze(args: AnalyzeArgs) -> Result<Outcome> {
    let x_parsed = read_samples(&args.x_file)?;
    if x_parsed.header != "x" {
        return Err(Error::BadHeader {
            path: args.x_file.clone(),
            found: x_parsed.header,
        });
    }
    let xs = scalar_records(&x_parsed, &args.x_file)?;
    if xs.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: xs.len(),
        });
    }
    let x_dist = EmpiricalDistribution::from_samples(&xs)?;

    let p_parsed = read_samples(&args.p_file)?;
    let channel = match p_parsed.header.replace(' ', "").as_str() {
        "p" => {
            let ps = scalar_records(&p_parsed, &args.p_file)?;
            if ps.len() < 2 {
                return Err(Error::InsufficientData {
                    needed: 2,
                    got: ps.len(),
                });
            }
            let p_dist = EmpiricalDistribution::from_samples(&ps)?;
            Channel::Direct(p_dist.variance())
        }
        "p,p_b" => match &p_parsed.records {
            Records::Pairs(pairs) => Channel::Inferred(inference_fit(pairs, None)?),
            Records::Scalars(_) => {
                return Err(Error::BadHeader {
                    path: args.p_file.clone(),
                    found: p_parsed.header,
                })
            }
        },
        _ => {
            return Err(Error::BadHeader {
                path: args.p_file.clone(),
                found: p_parsed.header,
            })
        }
    };

    if args.verbose {
        match &channel {
            Channel::Direct(var_p) => eprintln!(
                "analyze: {} x records, direct momentum spread {var_p:.6}",
                xs.len()
            ),
            Channel::Inferred(fit) => eprintln!(
                "analyze: {} x records, inference gain {:.6} residual {:.6}",
                xs.len(),
                fit.g,
                fit.var_inf
            ),
        }
    }

    let mut evaluate = |s: f64| -> Result<CriterionReport> {
        match &channel {
            Channel::Direct(var_p) => theorem1(&x_dist, *var_p, s),
            Channel::Inferred(fit) => theorem2(&x_dist, fit, s),
        }
    };

    let format = args.format.unwrap_or(FormatKind::Json);
    if let Some(s) = args.s {
        let report = evaluate(s)?;
        let text = match format {
            FormatKind::Json => with_newline(report_json(&report)),
            FormatKind::Csv => reports_csv(std::slice::from_ref(&report)),
        };
        emit(&text, args.out.as_deref())?;
        let certified = report.certifies();
        warn_if_inapplicable(std::slice::from_ref(&report), certified);
        return Ok(Outcome::from_flag(certified));
    }

    let ceiling = match args.scan_max {
        Some(value) => value,
        None => 4.0 * x_dist.variance().sqrt(),
    };
    let grid = ScanGrid::new(ceiling, args.scan_points.unwrap_or(ScanGrid::DEFAULT_POINTS))?;
    let result = max_certified_separation(grid, &mut evaluate)?;
    if args.verbose {
        eprintln!(
            "analyze: scanned {} separations up to {:.6}, max certified {:.6}",
            result.scan.len(),
            grid.ceiling,
            result.max_s
        );
    }
    let text = match format {
        FormatKind::Json => with_newline(scan_json(&result)),
        FormatKind::Csv => reports_csv(&result.scan),
    };
    emit(&text, args.out.as_deref())?;
    let certified = result.at_max.is_some();
    warn_if_inapplicable(&result.scan, certified);
    Ok(Outcome::from_flag(certified))
}

fn simulate(args: SimulateArgs) -> Result<Outcome> {
    fs::create_dir_all(&args.out)?;
    let mut files = Vec::new();

    let parameters = match args.model {
        ModelKind::Single => {
            let model = single_mode_squeezed(args.r)?;
            let x = sample_gaussian(&model, Observable::X, args.n, args.seed)?;
            let p = sample_gaussian(&model, Observable::P, args.n, args.seed)?;
            for (name, batch) in [("x.csv", &x), ("p.csv", &p)] {
                let path = args.out.join(name);
                write_samples(&path, batch)?;
                files.push(name.to_string());
            }
            serde_json::json!({ "r": args.r })
        }
        ModelKind::Two => {
            let model = two_mode_squeezed(args.r)?;
            let marginal = GaussianModel::new(model.var_x, model.var_p)?;
            let x = sample_gaussian(&marginal, Observable::X, args.n, args.seed)?;
            let joint = sample_joint_p(&model, args.n, args.seed)?;
            for (name, batch) in [("x.csv", &x), ("joint.csv", &joint)] {
                let path = args.out.join(name);
                write_samples(&path, batch)?;
                files.push(name.to_string());
            }
            serde_json::json!({ "r": args.r })
        }
        ModelKind::Spin => {
            let j = args.j.ok_or(Error::MissingParameter("--j (spin model)"))?;
            let model = spin_entangled(j)?;
            let m = sample_spin(&model, Observable::M, args.n, args.seed)?;
            let path = args.out.join("m.csv");
            write_samples(&path, &m)?;
            files.push("m.csv".to_string());
            serde_json::json!({ "j": j })
        }
    };

    let sidecar = serde_json::json!({
        "model": match args.model {
            ModelKind::Single => "single",
            ModelKind::Two => "two",
            ModelKind::Spin => "spin",
        },
        "parameters": parameters,
        "n": args.n,
        "seed": args.seed,
        "files": files,
    });
    let sidecar_path = args.out.join("simulate.json");
    fs::write(
        &sidecar_path,
        with_newline(serde_json::to_string_pretty(&sidecar).expect("plain data serializes")),
    )?;
    if args.verbose {
        eprintln!(
            "simulate: wrote {} records per file into {}",
            args.n,
            args.out.display()
        );
    }
    Ok(Outcome::Certified)
}

/// Parse a `start:stop:step` grid specification into its values.
fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = |reason: &str| Error::BadGridSpec {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("expected start:stop:step"));
    }
    let mut values = [0.0; 3];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|_| bad("fields must be numbers"))?;
        if !slot.is_finite() {
            return Err(bad("fields must be finite"));
        }
    }
    let [start, stop, step] = values;
    if step <= 0.0 {
        return Err(bad("step must be positive"));
    }
    if stop < start {
        return Err(bad("stop must not precede start"));
    }
    let count = ((stop - start) / step + 0.5).floor() as usize + 1;
    Ok((0..count).map(|k| start + k as f64 * step).collect())
}

fn sweep(args: SweepArgs) -> Result<Outcome> {
    let products = parse_grid(&args.product_grid)?;
    if products.iter().any(|&c| c < 1.0 - 1e-12) {
        return Err(Error::BadGridSpec {
            spec: args.product_grid.clone(),
            reason: String::from("uncertainty products below 1 are not physical"),
        });
    }

    let rows: Result<Vec<(f64, f64)>> = products
        .par_iter()
        .map(|&product| {
            let model = impure_gaussian(1.0, product)?;
            let grid = ScanGrid::from_spread(1.0)?;
            let result = max_certified_separation(grid, |s| {
                theorem1_from_regions(&model.region_stats(s)?, model.var_p)
            })?;
            Ok((product, result.max_s))
        })
        .collect();
    let rows = rows?;

    if args.verbose {
        let certifying = rows.iter().filter(|&&(_, m)| m > 0.0).count();
        eprintln!(
            "sweep: {} grid points, {certifying} with a certifiable separation",
            rows.len()
        );
    }

    let text = match args.format.unwrap_or(FormatKind::Csv) {
        FormatKind::Csv => sweep_csv(&rows),
        FormatKind::Json => {
            let entries: Vec<serde_json::Value> = rows
                .iter()
                .map(|&(dxdp, ratio)| {
                    serde_json::json!({ "dxdp": dxdp, "max_s_over_dx": ratio })
                })
                .collect();
            with_newline(
                serde_json::to_string_pretty(&entries).expect("plain data serializes"),
            )
        }
    };
    emit(&text, args.out.as_deref())?;
    Ok(Outcome::from_flag(rows.iter().any(|&(_, m)| m > 0.0)))
}

fn spin(args: SpinArgs) -> Result<Outcome> {
    let model = spin_entangled(args.j)?;
    let obs = spin_observables(&model);
    let delta_inf_jy = obs.inference.var_inf.max(0.0).sqrt();

    // Separations on the outcome lattice, ascending: j, j−1, … down to
    // the smallest positive value.
    let mut separations = Vec::new();
    let mut s = args.j;
    while s > 1e-9 {
        separations.push(s);
        s -= 1.0;
    }
    separations.reverse();

    let reports: Result<Vec<CriterionReport>> = separations
        .iter()
        .map(|&s| crate::criteria::theorem3(&obs.jz_marginal, obs.delta_jx, delta_inf_jy, s))
        .collect();
    let reports = reports?;

    if args.verbose {
        eprintln!(
            "spin: j = {}, ΔJx = {:.12}, Δ_inf Jy = {:.3e}, {} separations",
            args.j,
            obs.delta_jx,
            delta_inf_jy,
            reports.len()
        );
    }

    let text = match args.format.unwrap_or(FormatKind::Csv) {
        FormatKind::Csv => reports_csv(&reports),
        FormatKind::Json => with_newline(reports_json(&reports)),
    };
    emit(&text, args.out.as_deref())?;
    let certified = reports.iter().any(CriterionReport::certifies);
    warn_if_inapplicable(&reports, certified);
    Ok(Outcome::from_flag(certified))
}

#[derive(Debug, Clone, Copy)]
struct SuiteAggregate {
    violations: u64,
    min_gap: f64,
    min_ratio: f64,
}

impl SuiteAggregate {
    fn identity() -> Self {
        Self {
            violations: 0,
            min_gap: f64::INFINITY,
            min_ratio: f64::INFINITY,
        }
    }

    fn absorb_report(mut self, report: &CriterionReport) -> Self {
        if report.violated {
            self.violations += 1;
        }
        self.min_gap = self.min_gap.min(report.lhs - report.bound);
        if report.bound > 0.0 {
            self.min_ratio = self.min_ratio.min(report.lhs / report.bound);
        }
        self
    }

    fn merge(self, other: Self) -> Self {
        Self {
            violations: self.violations + other.violations,
            min_gap: self.min_gap.min(other.min_gap),
            min_ratio: self.min_ratio.min(other.min_ratio),
        }
    }

    fn json(&self) -> serde_json::Value {
        serde_json::json!({
            "violations": self.violations,
            "min_gap": if self.min_gap.is_finite() { Some(self.min_gap) } else { None },
            "min_lhs_over_bound":
                if self.min_ratio.is_finite() { Some(self.min_ratio) } else { None },
        })
    }
}

fn adversary_check(args: AdversaryArgs) -> Result<Outcome> {
    let format = args.format.unwrap_or(FormatKind::Json);
    if args.n == 0 {
        let summary = serde_json::json!({ "count": 0, "seed": args.seed });
        let text = match format {
            FormatKind::Json => {
                with_newline(serde_json::to_string_pretty(&summary).expect("plain data"))
            }
            FormatKind::Csv => String::from("metric,value\ncount,0\n"),
        };
        emit(&text, args.out.as_deref())?;
        return Ok(Outcome::Certified);
    }

    let quad: Result<(SuiteAggregate, f64, f64)> = (0..args.n)
        .into_par_iter()
        .map(|index| {
            let model = suite_mixture(args.seed, index);
            let report = model.evaluate()?;
            let (chain_a, chain_b) = model.crossterm_margins();
            let own_left = model.left.truncation_margin(model.s)?;
            let own_right = model.right.truncation_margin(model.s)?;
            let (pooled_left, pooled_right) = model.pooled_truncation_margins()?;
            let truncation = own_left
                .min(own_right)
                .min(pooled_left)
                .min(pooled_right);
            Ok((
                SuiteAggregate::identity().absorb_report(&report),
                chain_a.min(chain_b),
                truncation,
            ))
        })
        .try_reduce(
            || (SuiteAggregate::identity(), f64::INFINITY, f64::INFINITY),
            |a, b| Ok((a.0.merge(b.0), a.1.min(b.1), a.2.min(b.2))),
        );
    let (quad_agg, min_chain, min_truncation) = quad?;

    let spin_agg: Result<SuiteAggregate> = (0..args.n)
        .into_par_iter()
        .map(|index| {
            let model = suite_spin_null(args.seed, index);
            let report = model.evaluate()?;
            Ok(SuiteAggregate::identity().absorb_report(&report))
        })
        .try_reduce(SuiteAggregate::identity, |a, b| Ok(a.merge(b)));
    let spin_agg = spin_agg?;

    let summary = serde_json::json!({
        "count": args.n,
        "seed": args.seed,
        "quadrature": {
            "violations": quad_agg.violations,
            "min_gap": quad_agg.min_gap,
            "min_lhs_over_bound": quad_agg.min_ratio,
            "min_product_chain_margin": min_chain,
            "min_truncation_margin": min_truncation,
        },
        "spin": spin_agg.json(),
    });

    let text = match format {
        FormatKind::Json => {
            with_newline(serde_json::to_string_pretty(&summary).expect("plain data"))
        }
        FormatKind::Csv => {
            let mut out = String::from("metric,value\n");
            out.push_str(&format!("count,{}\n", args.n));
            out.push_str(&format!("quadrature_violations,{}\n", quad_agg.violations));
            out.push_str(&format!("quadrature_min_gap,{}\n", quad_agg.min_gap));
            out.push_str(&format!("spin_violations,{}\n", spin_agg.violations));
            out.push_str(&format!("spin_min_gap,{}\n", spin_agg.min_gap));
            out
        }
    };
    emit(&text, args.out.as_deref())?;

    if args.verbose {
        eprintln!(
            "adversary-check: {} models per suite, {} + {} violations",
            args.n, quad_agg.violations, spin_agg.violations
        );
    }
    Ok(Outcome::from_flag(
        quad_agg.violations == 0 && spin_agg.violations == 0,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing_round_trips() {
        let grid = parse_grid("1.0:1.8:0.02").unwrap();
        assert_eq!(grid.len(), 41);
        assert!((grid[0] - 1.0).abs() < 1e-12);
        assert!((grid[40] - 1.8).abs() < 1e-12);

        let single = parse_grid("2.0:2.0:0.5").unwrap();
        assert_eq!(single, vec![2.0]);
    }

    #[test]
    fn bad_grids_are_rejected() {
        for spec in ["", "1.0:1.8", "a:b:c", "1.0:1.8:0", "1.8:1.0:0.1", "1:2:inf"] {
            assert!(parse_grid(spec).is_err(), "{spec:?} should not parse");
        }
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
