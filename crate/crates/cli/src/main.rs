//! Command-line interface: inspect polytope data, emit level-set figures,
//! enumerate orbit families, and run the verification suite.

// `!(x > 0.0)` rejects NaN along with nonpositive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use polyham::dynamics::{dynamical_support, family, PairChoice, SlopePair, SlopeSpec};
use polyham::input::load_spec;
use polyham::polytope::SectionPolytope;
use polyham::smoothing::{sample_level_set, BumpParams};
use polyham::verify;
use polyham::Error as CoreError;

use config::{parse_scalar_or_list, FileConfig, JobConfig, Overrides, ScalarOrList};
use output::{format_delta, write_json, write_levelset_csv, write_levelset_svg, InfoReport};

#[derive(Parser)]
#[command(name = "polyham", version, about = "Polyhedral Hamiltonians on the complex torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Fan or H-representation spec (JSON)
    #[arg(long)]
    spec: PathBuf,
    /// Optional TOML config with defaults; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// Smoothing width, scalar or one value per ray (comma separated)
    #[arg(long, value_parser = parse_epsilon)]
    epsilon: Option<ScalarOrList>,
    /// Level values (comma separated)
    #[arg(long, value_delimiter = ',')]
    delta: Option<Vec<f64>>,
    /// Wrapping radii (comma separated)
    #[arg(long, value_delimiter = ',')]
    radii: Option<Vec<f64>>,
    /// Sample count per check
    #[arg(long)]
    samples: Option<usize>,
    /// RNG seed recorded in every output
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance for identity checks
    #[arg(long)]
    tol_identity: Option<f64>,
    /// Tolerance for the small-radius wrapping limit
    #[arg(long)]
    tol_limit: Option<f64>,
    /// Number of level-set directions
    #[arg(long)]
    dirs: Option<usize>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_epsilon(text: &str) -> std::result::Result<ScalarOrList, String> {
    parse_scalar_or_list(text).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Summarize the input data: combinatorics, scale, lattice points
    Info(CommonArgs),
    /// Sample level sets of the smoothing function (CSV per level, SVG in 2D)
    Levelset(CommonArgs),
    /// Enumerate dynamical supports and orbit families per cone
    Orbits(CommonArgs),
    /// Run the verification suite and write a pass/fail report
    Verify(CommonArgs),
}

impl CommonArgs {
    fn job(&self, default_deltas: &[f64]) -> Result<JobConfig> {
        let file = FileConfig::load(self.config.as_deref())?;
        JobConfig::resolve(
            file,
            Overrides {
                epsilon: self.epsilon.clone(),
                delta: self.delta.clone(),
                radii: self.radii.clone(),
                samples: self.samples,
                seed: self.seed,
                tol_identity: self.tol_identity,
                tol_limit: self.tol_limit,
                dirs: self.dirs,
                out: self.out.clone(),
            },
            default_deltas,
        )
    }

    fn load_polytope(&self) -> Result<(SectionPolytope, Vec<String>)> {
        let (pl, warnings) = load_spec(&self.spec)
            .with_context(|| format!("loading {}", self.spec.display()))?;
        let warnings = warnings.iter().map(|w| format!("{w:?}")).collect();
        let p = pl.section_polytope()?;
        Ok((p, warnings))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Info(args) => cmd_info(&args),
        Command::Levelset(args) => cmd_levelset(&args),
        Command::Orbits(args) => cmd_orbits(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn cmd_info(args: &CommonArgs) -> Result<ExitCode> {
    let cfg = args.job(&[0.25, 0.5, 0.75, 1.0])?;
    let (p, warnings) = args.load_polytope()?;
    let report = InfoReport {
        schema: "polyham/info/v1",
        dim: p.dim(),
        n_rays: p.n_rays(),
        complete: p.fan().is_complete(),
        strictly_concave: true, // construction rejects anything else
        r: p.pl().scale_u64(),
        vertices: p
            .vertices()
            .iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .collect(),
        lattice_point_count: p.lattice_points().len(),
        average_lattice_point: p
            .average_lattice_point()
            .iter()
            .map(|x| x.to_string())
            .collect(),
        warnings,
    };
    std::fs::create_dir_all(&cfg.out)?;
    write_json(&cfg.out.join("info.json"), &report)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_levelset(args: &CommonArgs) -> Result<ExitCode> {
    let cfg = args.job(&[0.25, 0.5, 0.75, 1.0])?;
    let (p, _) = args.load_polytope()?;
    let eps = BumpParams::per_ray(cfg.epsilon.per_ray(p.n_rays())?)?;
    std::fs::create_dir_all(&cfg.out)?;
    let mut samples = Vec::new();
    for &delta in &cfg.delta {
        let sample = sample_level_set(&p, &eps, delta, cfg.dirs)?;
        let csv_path = cfg.out.join(format!("levelset_{}.csv", format_delta(delta)));
        write_levelset_csv(&csv_path, &sample)?;
        let solved = sample.radii.iter().filter(|r| r.is_some()).count();
        println!(
            "delta {}: {}/{} directions solved -> {}",
            format_delta(delta),
            solved,
            cfg.dirs,
            csv_path.display()
        );
        samples.push(sample);
    }
    if p.dim() == 2 {
        let svg_path = cfg.out.join("levelset.svg");
        write_levelset_svg(&svg_path, &p, &samples)?;
        println!("figure -> {}", svg_path.display());
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct PairEntry {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<f64>,
}

#[derive(Serialize)]
struct ComponentEntry {
    /// which pair solution each active ray takes, "a" (lower) or "b" (upper)
    choice: Vec<&'static str>,
    /// a moment-image point of the component
    witness: Vec<f64>,
    /// slack of the strict constraints at the witness
    margin: f64,
}

#[derive(Serialize)]
struct SupportEntry {
    lattice_point: Vec<i64>,
    slope: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    period: Option<String>,
    component_dim: usize,
    components: Vec<ComponentEntry>,
    pairs: Vec<PairEntry>,
}

#[derive(Serialize)]
struct ConeOrbits {
    cone_rays: Vec<usize>,
    cone_dim: usize,
    norm_bound: f64,
    support: Vec<SupportEntry>,
}

#[derive(Serialize)]
struct OrbitsReport {
    schema: &'static str,
    epsilon: Vec<f64>,
    cones: Vec<ConeOrbits>,
}

fn cmd_orbits(args: &CommonArgs) -> Result<ExitCode> {
    let cfg = args.job(&[0.25, 0.5, 0.75, 1.0])?;
    let (p, _) = args.load_polytope()?;
    let eps_values = cfg.epsilon.per_ray(p.n_rays())?;
    let eps = BumpParams::per_ray(eps_values.clone())?;
    let mut cones = Vec::new();
    for cone_idx in 0..p.fan().cones().len() {
        if p.fan().cone(cone_idx).is_trivial() {
            continue;
        }
        let ds = dynamical_support(&p, &eps, cone_idx)?;
        let mut support = Vec::new();
        for (v, d) in &ds.points {
            let fam = family(&p, &eps, cone_idx, &SlopeSpec::Exact(d.clone()))?;
            support.push(SupportEntry {
                lattice_point: v.coords().to_vec(),
                slope: d.iter().map(|x| x.to_string()).collect(),
                period: fam.period.as_ref().map(|t| t.to_string()),
                component_dim: fam.component_dim,
                components: fam
                    .components
                    .iter()
                    .map(|comp| ComponentEntry {
                        choice: comp
                            .choice
                            .iter()
                            .map(|ch| match ch {
                                PairChoice::Lower => "a",
                                PairChoice::Upper => "b",
                            })
                            .collect(),
                        witness: comp.witness.clone(),
                        margin: comp.margin,
                    })
                    .collect(),
                pairs: fam
                    .pairs
                    .iter()
                    .map(|pr| match pr {
                        SlopePair::Absent => PairEntry {
                            kind: "absent",
                            a: None,
                            b: None,
                        },
                        SlopePair::Double(x) => PairEntry {
                            kind: "double",
                            a: Some(*x),
                            b: Some(*x),
                        },
                        SlopePair::Pair { a, b } => PairEntry {
                            kind: "pair",
                            a: Some(*a),
                            b: Some(*b),
                        },
                    })
                    .collect(),
            });
        }
        cones.push(ConeOrbits {
            cone_rays: p
                .fan()
                .cone(cone_idx)
                .ray_indices()
                .iter()
                .copied()
                .collect(),
            cone_dim: p.fan().cone(cone_idx).dim(),
            norm_bound: ds.norm_bound,
            support,
        });
    }
    let report = OrbitsReport {
        schema: "polyham/orbits/v1",
        epsilon: eps_values,
        cones,
    };
    std::fs::create_dir_all(&cfg.out)?;
    let path = cfg.out.join("orbits.json");
    write_json(&path, &report)?;
    let total: usize = report.cones.iter().map(|c| c.support.len()).sum();
    println!(
        "{} cones, {} supported lattice points -> {}",
        report.cones.len(),
        total,
        path.display()
    );
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CheckEntry {
    name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    ray: Option<usize>,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    data: Option<Value>,
}

#[derive(Serialize)]
struct VerifyReport {
    schema: &'static str,
    seed: u64,
    epsilon: Vec<f64>,
    deltas: Vec<f64>,
    radii: Vec<f64>,
    samples: usize,
    tol_identity: f64,
    tol_limit: f64,
    checks: Vec<CheckEntry>,
    pass: bool,
}

fn check_outcome<T: Serialize>(
    name: &'static str,
    ray: Option<usize>,
    result: polyham::Result<T>,
) -> Result<CheckEntry> {
    match result {
        Ok(data) => Ok(CheckEntry {
            name,
            ray,
            status: "pass",
            message: None,
            data: Some(serde_json::to_value(data)?),
        }),
        Err(e @ (CoreError::ToleranceExceeded { .. } | CoreError::NonPositive { .. })) => {
            Ok(CheckEntry {
                name,
                ray,
                status: "fail",
                message: Some(e.to_string()),
                data: None,
            })
        }
        Err(other) => Err(other.into()),
    }
}

fn cmd_verify(args: &CommonArgs) -> Result<ExitCode> {
    let cfg = args.job(&[0.25, 0.5, 0.9])?;
    let (p, _) = args.load_polytope()?;
    let eps_values = cfg.epsilon.per_ray(p.n_rays())?;
    let eps = BumpParams::per_ray(eps_values.clone())?;
    let mut checks: Vec<CheckEntry> = Vec::new();

    for ray in 0..p.n_rays() {
        checks.push(check_outcome(
            "wrapping_averaging",
            Some(ray),
            verify::check_wrapping_average(&p, ray, &cfg.radii, cfg.tol_identity),
        )?);
        checks.push(check_outcome(
            "infinitesimal_wrapping",
            Some(ray),
            verify::infinitesimal_wrapping(&p, ray, 1e-3, cfg.tol_limit),
        )?);
        checks.push(check_outcome(
            "distortion_constant",
            Some(ray),
            verify::distortion_constant(&p, ray, cfg.samples, cfg.seed.wrapping_add(ray as u64)),
        )?);
    }

    // the contact check is gated on the admissibility hypothesis
    match verify::contact_check(&p, &eps, &cfg.delta, cfg.samples, cfg.seed) {
        Err(CoreError::InadmissibleEpsilon { ray, eps, bound }) => checks.push(CheckEntry {
            name: "contact_type",
            ray: Some(ray),
            status: "skipped",
            message: Some(format!(
                "inadmissible smoothing width at ray {ray}: ε = {eps}, requires 0 < ε < {bound}"
            )),
            data: None,
        }),
        other => checks.push(check_outcome("contact_type", None, other)?),
    }

    // central fiber: normalize the origin into the polytope if needed
    match verify::exact_torus_check(&p, 1e-10) {
        Err(CoreError::NotInterior) => {
            let q = p.normalized_to_origin(None)?;
            let mut entry =
                check_outcome("exact_torus", None, verify::exact_torus_check(&q, 1e-10))?;
            let t = q
                .translation()
                .map(|t| format!("{:?}", t.coords()))
                .unwrap_or_default();
            entry.message = Some(format!("after origin normalization by {t}"));
            checks.push(entry);
        }
        other => checks.push(check_outcome("exact_torus", None, other)?),
    }

    let pass = checks.iter().all(|c| c.status != "fail");
    let report = VerifyReport {
        schema: "polyham/verify/v1",
        seed: cfg.seed,
        epsilon: eps_values,
        deltas: cfg.delta.clone(),
        radii: cfg.radii.clone(),
        samples: cfg.samples,
        tol_identity: cfg.tol_identity,
        tol_limit: cfg.tol_limit,
        checks,
        pass,
    };
    std::fs::create_dir_all(&cfg.out)?;
    write_json(&cfg.out.join("verify.json"), &report)?;
    for check in &report.checks {
        let ray = check
            .ray
            .map(|r| format!(" [ray {r}]"))
            .unwrap_or_default();
        println!("{:<24}{ray}: {}", check.name, check.status);
    }
    if pass {
        println!("verify: PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verify: FAIL");
        Ok(ExitCode::from(2))
    }
}
