//! `ltheta`: theta series, theta-series ratios, flatness factors, and
//! smoothing parameters of unimodular and Construction A lattices.
//!
//! Data goes to stdout, diagnostics to stderr; identical invocations produce
//! byte-identical output.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::path::PathBuf;

use lattice_theta::codes::{
    builtin_catalog, load_catalog, weight_distribution, BinaryLinearCode, CodeCatalogEntry,
    WeightDistribution,
};
use lattice_theta::criteria::{
    global_min_check, necessary_condition, sufficient_condition, ushape_exact, Verdict,
};
use lattice_theta::ensemble::{
    ensemble_ratio_rational, ensemble_ushape_check, expected_weight_enumerator, EnsembleSpec,
};
use lattice_theta::numerics::Precision;
use lattice_theta::ratio::{
    decompose_h_basis, ratio_poly_from_code, LatticeSpec, RatioEvaluator,
};
use lattice_theta::secrecy::{
    figure1_sweep, flatness_factor, flatness_samples, smoothing_parameter, sweep_csv,
    tau_eps_solve, tau_lower_bound_solve,
};
use lattice_theta::util::parse_rational;

#[derive(Parser)]
#[command(
    name = "ltheta",
    about = "Theta series, flatness factors, and smoothing parameters of unimodular lattices",
    version
)]
struct Cli {
    /// Working precision in significant decimal digits (>= 15)
    #[arg(long, global = true, default_value_t = 50)]
    digits: u32,

    /// Evaluation tolerance (absolute), e.g. 1e-30
    #[arg(long, global = true, default_value = "1e-30")]
    tol: String,

    /// Directory (or file) with extra catalog entries
    #[arg(long, global = true, default_value = "./catalog")]
    catalog_path: PathBuf,

    /// Emit CSV instead of the human-readable table
    #[arg(long, global = true)]
    csv: bool,

    /// Grid size for sampled checks
    #[arg(long, global = true, default_value_t = 1001)]
    grid: usize,

    #[command(subcommand)]
    command: Command,
}

/// Lattice selection shared by the evaluation subcommands.
#[derive(Args, Clone)]
struct LatticeArgs {
    /// The integer lattice Z^N
    #[arg(long, value_name = "N")]
    zn: Option<usize>,

    /// Generator matrix file ('0'/'1' rows) for a Construction A lattice
    #[arg(long, value_name = "FILE")]
    code: Option<PathBuf>,

    /// Catalog entry name (built-in: rep2, ham8, dc16, golay24, rm32, cs32)
    #[arg(long, value_name = "NAME")]
    catalog: Option<String>,

    /// Explicit h-basis coefficients a_0,a_1,...,a_l (must sum to 1)
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    h_coeffs: Option<String>,

    /// Dimension accompanying --h-coeffs
    #[arg(long, value_name = "N")]
    n: Option<usize>,

    /// The average Construction A lattice of a random self-dual [N, N/2] code
    #[arg(long, value_name = "N")]
    ensemble: Option<usize>,

    /// Use the scaled integral lattice C + 2Z^n instead of the unimodular one
    #[arg(long)]
    scaled: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the theta series Θ_Λ(iτ)
    Theta {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long)]
        tau: String,
    },
    /// Evaluate the theta-series ratio Δ_Λ(τ)
    Ratio {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long)]
        tau: String,
    },
    /// Decompose a code's ratio polynomial in the h(t)-basis
    Decompose {
        #[command(flatten)]
        lattice: LatticeArgs,
    },
    /// Run the sufficient, necessary, and exact U-shape checks on a code
    Check {
        #[command(flatten)]
        lattice: LatticeArgs,
    },
    /// Evaluate the flatness factor ε_Λ(τ), or a (τ, ε) curve
    Flatness {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, conflicts_with = "curve")]
        tau: Option<String>,
        /// Sample a curve: LO:HI:POINTS (emits CSV `tau,epsilon`)
        #[arg(long, value_name = "LO:HI:POINTS")]
        curve: Option<String>,
    },
    /// Smoothing parameter η_ε(Λ)
    Smoothing {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long)]
        eps: String,
    },
    /// Largest τ with ε_Λ(τ) <= ε
    TauEps {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long)]
        eps: String,
    },
    /// The τ_ε table over n = 8..256 with ε_n = 1/n
    Table1,
    /// Smoothing parameters of all self-dual [12,6] pure double circulant
    /// lattices and Z^12 (CSV `code_id,n,tau_eps,eta_eps`)
    Figure1 {
        #[arg(long, default_value = "1/12")]
        eps: String,
    },
    /// Sample the ratio Δ_Λ(τ) over a τ range (CSV `tau,delta`)
    RatioCurve {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, default_value = "0.1")]
        tau_lo: String,
        #[arg(long, default_value = "10")]
        tau_hi: String,
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Ensemble quantities: expected enumerator, ratio, U-shape check
    Ensemble {
        #[arg(long)]
        n: usize,
        /// Evaluate E[Δ] at this t in [0,1]
        #[arg(long)]
        t: Option<String>,
        /// Run the sampled U-shape check on the configured grid
        #[arg(long)]
        ushape: bool,
        /// Print the expected weight enumerator coefficients
        #[arg(long)]
        enumerator: bool,
    },
}

struct Config {
    prec: Precision,
    tol: BigRational,
    catalog_path: PathBuf,
    csv: bool,
    grid: usize,
}

fn main() {
    // die quietly when a downstream pipe (head, grep) closes early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    if cli.digits < 15 {
        bail!("--digits must be at least 15");
    }
    let cfg = Config {
        prec: Precision::from_digits(cli.digits),
        tol: parse_rational(&cli.tol).context("parsing --tol")?,
        catalog_path: cli.catalog_path,
        csv: cli.csv,
        grid: cli.grid,
    };

    match cli.command {
        Command::Theta { lattice, tau } => {
            let spec = resolve_lattice(&lattice, &cfg)?;
            let tau = parse_rational(&tau).context("parsing --tau")?;
            let v = lattice_theta::ratio::theta_eval(&spec, &tau, &cfg.tol, cfg.prec)?;
            println!("theta = {} (err <= {:.3e})", v.to_decimal(30), v.err_to_f64());
        }
        Command::Ratio { lattice, tau } => {
            let spec = resolve_lattice(&lattice, &cfg)?;
            let tau = parse_rational(&tau).context("parsing --tau")?;
            let v = RatioEvaluator::new(&spec)?.eval(&tau, &cfg.tol, cfg.prec)?;
            println!("ratio = {} (err <= {:.3e})", v.to_decimal(30), v.err_to_f64());
        }
        Command::Decompose { lattice } => {
            let dist = resolve_distribution(&lattice, &cfg)?;
            let poly = ratio_poly_from_code(&dist)?;
            let dec = decompose_h_basis(&poly)?;
            let coeffs = dec.h_coeffs().expect("populated by decomposition");
            let parts: Vec<String> = coeffs
                .iter()
                .enumerate()
                .rev()
                .map(|(r, a)| format!("a{r}={a}"))
                .collect();
            println!("{}", parts.join(" "));
        }
        Command::Check { lattice } => {
            let dist = resolve_distribution(&lattice, &cfg)?;
            run_check(&dist, &cfg)?;
        }
        Command::Flatness { lattice, tau, curve } => {
            let spec = resolve_lattice(&lattice, &cfg)?;
            match (tau, curve) {
                (Some(tau), None) => {
                    let tau = parse_rational(&tau).context("parsing --tau")?;
                    let v = flatness_factor(&spec, &tau, &cfg.tol, cfg.prec)?;
                    println!(
                        "epsilon = {} (err <= {:.3e})",
                        v.to_decimal(30),
                        v.err_to_f64()
                    );
                }
                (None, Some(range)) => {
                    let (lo, hi, points) = parse_range(&range)?;
                    let samples =
                        flatness_samples(&spec, &lo, &hi, points, &cfg.tol, cfg.prec)?;
                    println!("tau,epsilon");
                    for (t, e) in samples {
                        println!("{t:.6},{e:.10e}");
                    }
                }
                _ => bail!("flatness needs exactly one of --tau or --curve"),
            }
        }
        Command::Smoothing { lattice, eps } => {
            let spec = resolve_lattice(&lattice, &cfg)?;
            let eps = parse_rational(&eps).context("parsing --eps")?;
            let eta = smoothing_parameter(&spec, &eps, &solver_tol(), cfg.prec)?;
            println!("eta = {eta:.6}");
        }
        Command::TauEps { lattice, eps } => {
            let spec = resolve_lattice(&lattice, &cfg)?;
            let eps = parse_rational(&eps).context("parsing --eps")?;
            let tau = tau_eps_solve(&spec, &eps, &solver_tol(), cfg.prec)?;
            println!("tau_eps = {tau:.6}");
        }
        Command::Table1 => run_table1(&cfg)?,
        Command::Figure1 { eps } => {
            let eps = parse_rational(&eps).context("parsing --eps")?;
            let entries = figure1_sweep(&eps, &solver_tol(), cfg.prec)?;
            print!("{}", sweep_csv(&entries));
        }
        Command::RatioCurve {
            lattice,
            tau_lo,
            tau_hi,
            points,
        } => {
            let spec = resolve_lattice(&lattice, &cfg)?;
            let lo = parse_rational(&tau_lo)?;
            let hi = parse_rational(&tau_hi)?;
            if points < 2 || lo >= hi {
                bail!("need tau_lo < tau_hi and at least 2 points");
            }
            let ev = RatioEvaluator::new(&spec)?;
            let step = (&hi - &lo) / BigRational::from(BigInt::from(points as u64 - 1));
            println!("tau,delta");
            for i in 0..points {
                let tau = &lo + &step * BigRational::from(BigInt::from(i as u64));
                let v = ev.eval(&tau, &cfg.tol, cfg.prec)?;
                println!("{:.6},{:.12}", rat_f64(&tau), v.to_f64());
            }
        }
        Command::Ensemble {
            n,
            t,
            ushape,
            enumerator,
        } => {
            let spec = EnsembleSpec::new(n)?;
            if enumerator {
                let coeffs = expected_weight_enumerator(&spec);
                for (w, c) in coeffs.iter().enumerate() {
                    if !num_traits::Zero::is_zero(c) {
                        println!("E[A_{w}] = {c}");
                    }
                }
            }
            if let Some(t) = &t {
                let t = parse_rational(t)?;
                let v = ensemble_ratio_rational(&spec, &t, &cfg.tol, cfg.prec)?;
                println!(
                    "ratio = {} (err <= {:.3e})",
                    v.to_decimal(30),
                    v.err_to_f64()
                );
            }
            if ushape {
                let margin = parse_rational("1e-8").unwrap();
                let cert = ensemble_ushape_check(&spec, cfg.grid, &margin, &cfg.tol, cfg.prec)?;
                println!("ushape = {}", verdict_str(cert.verdict));
            }
            if !enumerator && t.is_none() && !ushape {
                bail!("ensemble needs at least one of --t, --ushape, --enumerator");
            }
        }
    }
    Ok(())
}

/// Bisection tolerance for the τ solvers (reported to 3 decimals).
fn solver_tol() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(9))
}

fn rat_f64(r: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::UShaped => "u_shaped",
        Verdict::NotUShaped => "not_u_shaped",
        Verdict::Indeterminate => "indeterminate",
    }
}

fn parse_range(s: &str) -> Result<(BigRational, BigRational, usize)> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        bail!("range must be LO:HI:POINTS, got '{s}'");
    }
    Ok((
        parse_rational(parts[0])?,
        parse_rational(parts[1])?,
        parts[2].parse().context("parsing POINTS")?,
    ))
}

fn full_catalog(cfg: &Config) -> Vec<CodeCatalogEntry> {
    let mut cat = builtin_catalog();
    if cfg.catalog_path.exists() {
        match load_catalog(&cfg.catalog_path) {
            Ok(extra) => cat.extend(extra),
            Err(e) => eprintln!("warning: skipping catalog at {:?}: {e}", cfg.catalog_path),
        }
    }
    cat
}

fn distribution_from_args(lattice: &LatticeArgs, cfg: &Config) -> Result<Option<WeightDistribution>> {
    if let Some(path) = &lattice.code {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading generator matrix {path:?}"))?;
        let code = BinaryLinearCode::from_text(&text)?;
        return Ok(Some(weight_distribution(&code)?));
    }
    if let Some(name) = &lattice.catalog {
        let cat = full_catalog(cfg);
        let entry = cat
            .iter()
            .find(|e| &e.name == name)
            .ok_or_else(|| anyhow!("no catalog entry named '{name}'"))?;
        return Ok(Some(entry.distribution.clone()));
    }
    Ok(None)
}

fn resolve_distribution(lattice: &LatticeArgs, cfg: &Config) -> Result<WeightDistribution> {
    distribution_from_args(lattice, cfg)?
        .ok_or_else(|| anyhow!("this command needs a code source: --code FILE or --catalog NAME"))
}

fn resolve_lattice(lattice: &LatticeArgs, cfg: &Config) -> Result<LatticeSpec> {
    let mut given = 0;
    given += lattice.zn.is_some() as u8;
    given += lattice.code.is_some() as u8;
    given += lattice.catalog.is_some() as u8;
    given += lattice.h_coeffs.is_some() as u8;
    given += lattice.ensemble.is_some() as u8;
    if given != 1 {
        bail!("select exactly one lattice: --zn | --code | --catalog | --h-coeffs | --ensemble");
    }
    if let Some(n) = lattice.zn {
        return Ok(LatticeSpec::integer(n)?);
    }
    if let Some(n) = lattice.ensemble {
        return Ok(LatticeSpec::ensemble(n)?);
    }
    if let Some(list) = &lattice.h_coeffs {
        let coeffs: Vec<BigRational> = list
            .split(',')
            .map(|p| parse_rational(p.trim()))
            .collect::<lattice_theta::Result<_>>()?;
        let n = lattice
            .n
            .ok_or_else(|| anyhow!("--h-coeffs needs --n for the dimension"))?;
        return Ok(LatticeSpec::explicit_h(coeffs, n)?);
    }
    let dist = resolve_distribution(lattice, cfg)?;
    if lattice.scaled {
        Ok(LatticeSpec::scaled_construction_a(dist)?)
    } else {
        Ok(LatticeSpec::construction_a(dist)?)
    }
}

fn run_check(dist: &WeightDistribution, cfg: &Config) -> Result<()> {
    let poly = ratio_poly_from_code(dist)?;
    let dec = decompose_h_basis(&poly)?;
    let coeffs = dec.h_coeffs().expect("populated by decomposition");

    let suff = sufficient_condition(coeffs);
    for pair in &suff.per_j {
        println!(
            "sufficient j={}: alpha={} beta={} pass={}",
            pair.j, pair.alpha, pair.beta, pair.passes
        );
    }
    if suff.degenerate_rule {
        println!("sufficient: degenerate rule (l <= 1)");
    }
    println!("sufficient overall: {}", suff.overall);

    let (value, passes) = necessary_condition(dist)?;
    println!("necessary value: {value} pass={passes}");

    let cert = ushape_exact(coeffs)?;
    println!("ushape: {} (method=exact_sturm)", verdict_str(cert.verdict));
    if let Some(w) = &cert.witness {
        println!("ushape witness: t = {w}");
    }
    if cert.verdict == Verdict::UShaped {
        let gm = global_min_check(coeffs, &cert)?;
        println!("min at t = 1/sqrt(2): {}", gm.min_value);
    }
    let _ = cfg;
    Ok(())
}

fn run_table1(cfg: &Config) -> Result<()> {
    let cat = full_catalog(cfg);
    let builtin_for = |n: usize| -> Option<&str> {
        match n {
            8 => Some("ham8"),
            16 => Some("dc16"),
            24 => Some("golay24"),
            32 => Some("rm32"),
            _ => None,
        }
    };
    let rows = [8usize, 16, 24, 32, 72, 128, 168, 256];
    if cfg.csv {
        println!("n,tau_eps_zn,tau_lower_bound,code,tau_eps_code,tau_eps_ensemble");
    } else {
        println!(
            "{:>4} {:>12} {:>10} {:>10} {:>13} {:>17}",
            "n", "tau_eps(Z^n)", "tau_lower", "code", "tau_eps(code)", "tau_eps(ensemble)"
        );
    }
    for n in rows {
        let eps = BigRational::new(BigInt::one(), BigInt::from(n as u64));
        let zn = tau_eps_solve(&LatticeSpec::integer(n)?, &eps, &solver_tol(), cfg.prec)?;
        let lb = tau_lower_bound_solve(n, &solver_tol(), cfg.prec)?;
        let ens = tau_eps_solve(&LatticeSpec::ensemble(n)?, &eps, &solver_tol(), cfg.prec)?;
        let code_entry = builtin_for(n)
            .and_then(|name| cat.iter().find(|e| e.name == name))
            .or_else(|| cat.iter().find(|e| e.n == n && e.k == n / 2));
        let (code_name, code_tau) = match code_entry {
            Some(e) => {
                let spec = LatticeSpec::construction_a(e.distribution.clone())?;
                let t = tau_eps_solve(&spec, &eps, &solver_tol(), cfg.prec)?;
                (e.name.clone(), format!("{t:.3}"))
            }
            None => ("-".to_string(), "catalog-missing".to_string()),
        };
        if cfg.csv {
            println!("{n},{zn:.3},{lb:.3},{code_name},{code_tau},{ens:.3}");
        } else {
            println!(
                "{:>4} {:>12.3} {:>10.3} {:>10} {:>13} {:>17.3}",
                n, zn, lb, code_name, code_tau, ens
            );
        }
    }
    Ok(())
}
