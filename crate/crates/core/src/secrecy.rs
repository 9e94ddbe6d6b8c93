//! Flatness factor, smoothing parameter, and the τ_ε solvers.
//!
//! The flatness factor of a volume-V lattice is ε_Λ(τ) = V τ^{n/2} Θ_Λ(iτ) - 1;
//! τ_ε(Λ) is the largest τ with ε_Λ(τ) <= ε, found by bisection on the
//! (continuous, strictly increasing) map τ ↦ ε_Λ(τ), and the smoothing
//! parameter is η_ε(Λ) = 1/√(2π τ_ε(Λ)).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use std::cmp::Ordering;

use crate::codes::{pure_double_circulant, ub_distribution, weight_distribution, is_self_dual};
use crate::error::{Error, Result};
use crate::numerics::{exp_neg, pi, Precision, PrecisionReal};
use crate::ratio::{LatticeSpec, RatioEvaluator};

/// Per-lattice record of a τ_ε solve, with optional (τ, ε) samples.
#[derive(Debug, Clone)]
pub struct SecrecyReport {
    pub spec: LatticeSpec,
    pub eps: BigRational,
    pub tau_eps: f64,
    pub eta_eps: f64,
    pub samples: Vec<(f64, f64)>,
}

impl SecrecyReport {
    /// Solve τ_ε and η_ε for a lattice, optionally sampling the ε curve on
    /// `sample_points` points over [τ_ε/4, 2τ_ε].
    pub fn solve(
        spec: &LatticeSpec,
        eps: &BigRational,
        tol: &BigRational,
        prec: Precision,
        sample_points: usize,
    ) -> Result<Self> {
        let (tau_eps, tau_exact) = tau_eps_solve_exact(spec, eps, tol, prec)?;
        let eta_eps = 1.0 / (2.0 * std::f64::consts::PI * tau_eps).sqrt();
        let samples = if sample_points >= 2 {
            let lo = &tau_exact / BigRational::from(BigInt::from(4));
            let hi = &tau_exact * BigRational::from(BigInt::from(2));
            flatness_samples(spec, &lo, &hi, sample_points, &pow10(-20), prec)?
        } else {
            Vec::new()
        };
        Ok(SecrecyReport {
            spec: spec.clone(),
            eps: eps.clone(),
            tau_eps,
            eta_eps,
            samples,
        })
    }

    /// CSV lines `tau,epsilon` for the collected samples.
    pub fn samples_csv(&self) -> String {
        let mut out = String::from("tau,epsilon\n");
        for (t, e) in &self.samples {
            out.push_str(&format!("{t},{e}\n"));
        }
        out
    }
}

fn pow10(e: i32) -> BigRational {
    if e >= 0 {
        BigRational::from(BigInt::from(10).pow(e as u32))
    } else {
        BigRational::new(BigInt::one(), BigInt::from(10).pow((-e) as u32))
    }
}

/// ε_Λ(τ) = V(Λ) τ^{n/2} Θ_Λ(iτ) - 1 with error at most `tol`.
///
/// Computed as (√τ ϑ₃(iτ))ⁿ V Δ_Λ(τ) - 1: grouping √τ with ϑ₃ keeps every
/// factor near unit scale, where the raw τ^{n/2} would underflow the
/// fixed-point grid for large n.
pub fn flatness_factor(
    spec: &LatticeSpec,
    tau: &BigRational,
    tol: &BigRational,
    prec: Precision,
) -> Result<PrecisionReal> {
    FlatnessEvaluator::new(spec)?.eval(tau, tol, prec)
}

/// Largest τ with ε_Λ(τ) <= ε, to absolute accuracy `tol` in τ.
///
/// Bisection over an initial bracket [1e-6, 4]; the upper end doubles until
/// ε is exceeded (the lower end is far below every practical crossing).
pub fn tau_eps_solve(
    spec: &LatticeSpec,
    eps: &BigRational,
    tol: &BigRational,
    prec: Precision,
) -> Result<f64> {
    Ok(tau_eps_solve_exact(spec, eps, tol, prec)?.0)
}

/// As [`tau_eps_solve`], also returning the exact dyadic bracket midpoint.
pub fn tau_eps_solve_exact(
    spec: &LatticeSpec,
    eps: &BigRational,
    tol: &BigRational,
    prec: Precision,
) -> Result<(f64, BigRational)> {
    if !eps.is_positive() {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    if !tol.is_positive() {
        return Err(Error::Domain(format!("tol must be positive, got {tol}")));
    }
    // evaluation tolerance well below the solver tolerance
    let eval_tol = BigRational::new(BigInt::one(), BigInt::from(10).pow(30));
    let eval_tol = if *tol < eval_tol {
        tol / BigRational::from(BigInt::from(1000))
    } else {
        eval_tol
    };
    let evaluator = FlatnessEvaluator::new(spec)?;
    let mut lo = BigRational::new(BigInt::one(), BigInt::from(1_000_000));
    let mut hi = BigRational::from(BigInt::from(4));
    let cap = BigRational::from(BigInt::one() << 40);
    loop {
        match evaluator
            .eval(&hi, &eval_tol, prec)?
            .cmp_rational_definite(eps)
        {
            Ok(Ordering::Greater) => break,
            Ok(_) | Err(_) => {
                hi = &hi * BigRational::from(BigInt::from(2));
                if hi > cap {
                    return Err(Error::NotBracketed(format!(
                        "flatness never exceeds {eps} below tau = 2^40"
                    )));
                }
            }
        }
    }
    if evaluator
        .eval(&lo, &eval_tol, prec)?
        .cmp_rational_definite(eps)
        == Ok(Ordering::Greater)
    {
        return Err(Error::NotBracketed(format!(
            "flatness already exceeds {eps} at tau = {lo}"
        )));
    }
    let two = BigRational::from(BigInt::from(2));
    while (&hi - &lo) > *tol {
        let mid = (&lo + &hi) / &two;
        match evaluator
            .eval(&mid, &eval_tol, prec)?
            .cmp_rational_definite(eps)
        {
            Ok(Ordering::Greater) => hi = mid,
            Ok(_) => lo = mid,
            // the crossing is inside the evaluation interval: mid is the
            // root to far better than tol
            Err(_) => {
                lo = mid.clone();
                hi = mid;
            }
        }
    }
    let mid = (&lo + &hi) / &two;
    let approx = rat_to_f64(&mid);
    Ok((approx, mid))
}

/// Precomputed flatness evaluator (ratio polynomial built once).
struct FlatnessEvaluator {
    spec: LatticeSpec,
    ratio: RatioEvaluator,
}

impl FlatnessEvaluator {
    fn new(spec: &LatticeSpec) -> Result<Self> {
        Ok(FlatnessEvaluator {
            spec: spec.clone(),
            ratio: RatioEvaluator::new(spec)?,
        })
    }

    /// ε(τ) via the weight-enumerator/ratio path:
    /// (√τ ϑ₃(iτ))ⁿ V Δ(τ) - 1. Codeword enumeration never happens here, so
    /// large-n catalog entries evaluate in polynomial time.
    fn eval(
        &self,
        tau: &BigRational,
        tol: &BigRational,
        prec: Precision,
    ) -> Result<PrecisionReal> {
        if !tau.is_positive() {
            return Err(Error::Domain(format!("tau must be positive, got {tau}")));
        }
        let n = self.spec.n();
        let inner = tol / BigRational::from(BigInt::from(16));
        let t3 = crate::numerics::theta3(
            &crate::numerics::ThetaArgument::new(tau.clone())?,
            &inner,
            prec,
        )?;
        let ratio = self.ratio.eval(tau, &inner, prec)?;
        let base = PrecisionReal::from_rational(tau, prec).sqrt()?.mul(&t3);
        let one = PrecisionReal::one(prec);
        Ok(base
            .powi(n as u64)
            .mul(&ratio)
            .mul_rational(&self.spec.volume())
            .sub(&one))
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Smoothing parameter η_ε(Λ) = 1/√(2π τ_ε(Λ)).
pub fn smoothing_parameter(
    spec: &LatticeSpec,
    eps: &BigRational,
    tol: &BigRational,
    prec: Precision,
) -> Result<f64> {
    let tau = tau_eps_solve(spec, eps, tol, prec)?;
    Ok(1.0 / (2.0 * std::f64::consts::PI * tau).sqrt())
}

/// Root of τ^{1/2} e^{-(π-1)/τ} = (1+1/n)^{1/n} - 1 in (0,1): the
/// closed-form lower bound on τ_ε(ℤⁿ) built from the ϑ₃ upper bound.
///
/// The left side increases from 0 to e^{-(π-1)} ≈ 0.117 on (0,1), so the
/// root exists once the right side is below that (n >= 3).
pub fn tau_lower_bound_solve(n: usize, tol: &BigRational, prec: Precision) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    if !tol.is_positive() {
        return Err(Error::Domain(format!("tol must be positive, got {tol}")));
    }
    // c = (1 + 1/n)^{1/n} - 1, exactly bounded
    let base = BigRational::new(BigInt::from(n as u64 + 1), BigInt::from(n as u64));
    let c = PrecisionReal::from_rational(&base, prec)
        .nth_root(n as u32)?
        .sub(&PrecisionReal::one(prec));

    let g = |tau: &BigRational| -> Result<PrecisionReal> {
        let root = PrecisionReal::from_rational(tau, prec).sqrt()?;
        let pi_m1 = pi(prec).sub(&PrecisionReal::one(prec));
        let x = pi_m1.mul_rational(&tau.recip());
        Ok(root.mul(&exp_neg(&x)?))
    };

    let mut lo = BigRational::new(BigInt::one(), BigInt::from(1000));
    let mut hi = BigRational::new(BigInt::from(999), BigInt::from(1000));
    match g(&hi)?.cmp_definite(&c) {
        Ok(Ordering::Greater) => {}
        _ => {
            return Err(Error::NotBracketed(format!(
                "no root in (0,1) for n = {n}: the left side stays below the target"
            )))
        }
    }
    let two = BigRational::from(BigInt::from(2));
    while (&hi - &lo) > *tol {
        let mid = (&lo + &hi) / &two;
        match g(&mid)?.cmp_definite(&c) {
            Ok(Ordering::Greater) => hi = mid,
            Ok(_) => lo = mid,
            Err(_) => {
                lo = mid.clone();
                hi = mid;
            }
        }
    }
    Ok(rat_to_f64(&((&lo + &hi) / &two)))
}

/// One row of the 12-dimensional sweep.
#[derive(Debug, Clone)]
pub struct SweepEntry {
    pub code_id: String,
    pub n: usize,
    pub tau_eps: f64,
    pub eta_eps: f64,
    /// True when the class's ratio polynomial is identically 1, i.e. the
    /// lattice shares the theta series of ℤ¹² (it is ℤ¹² up to isometry).
    pub theta_trivial: bool,
}

/// Smoothing parameters of all self-dual [12,6] pure double circulant
/// Construction A lattices plus ℤ¹², one entry per distinct weight
/// distribution, sorted by code id.
pub fn figure1_sweep(
    eps: &BigRational,
    tol: &BigRational,
    prec: Precision,
) -> Result<Vec<SweepEntry>> {
    let mut classes: Vec<(String, crate::codes::WeightDistribution)> = Vec::new();
    for mask in 0u32..64 {
        let first: Vec<bool> = (0..6).map(|i| mask >> i & 1 == 1).collect();
        let code = pure_double_circulant(&first)?;
        if !is_self_dual(&code) {
            continue;
        }
        let dist = weight_distribution(&code)?;
        let id: String = (0..6)
            .map(|i| if mask >> i & 1 == 1 { '1' } else { '0' })
            .collect();
        match classes.iter_mut().find(|(_, d)| *d == dist) {
            Some((existing, _)) => {
                // keep the lexicographically smallest representative row
                if id < existing["pdc12-".len()..].to_string() {
                    *existing = format!("pdc12-{id}");
                }
            }
            None => classes.push((format!("pdc12-{id}"), dist)),
        }
    }
    if classes.is_empty() {
        return Err(Error::Domain(
            "no self-dual [12,6] pure double circulant code found".into(),
        ));
    }
    let ub = ub_distribution(12)?;
    let mut out = Vec::new();
    for (id, dist) in classes {
        let theta_trivial = dist == ub;
        let spec = LatticeSpec::construction_a(dist)?;
        let tau = tau_eps_solve(&spec, eps, tol, prec)?;
        out.push(SweepEntry {
            code_id: id,
            n: 12,
            tau_eps: tau,
            eta_eps: 1.0 / (2.0 * std::f64::consts::PI * tau).sqrt(),
            theta_trivial,
        });
    }
    let z12 = LatticeSpec::integer(12)?;
    let tau = tau_eps_solve(&z12, eps, tol, prec)?;
    out.push(SweepEntry {
        code_id: "z12".into(),
        n: 12,
        tau_eps: tau,
        eta_eps: 1.0 / (2.0 * std::f64::consts::PI * tau).sqrt(),
        theta_trivial: true,
    });
    out.sort_by(|a, b| a.code_id.cmp(&b.code_id));
    Ok(out)
}

/// CSV lines `code_id,n,tau_eps,eta_eps` for a sweep.
pub fn sweep_csv(entries: &[SweepEntry]) -> String {
    let mut out = String::from("code_id,n,tau_eps,eta_eps\n");
    for e in entries {
        out.push_str(&format!(
            "{},{},{:.6},{:.6}\n",
            e.code_id, e.n, e.tau_eps, e.eta_eps
        ));
    }
    out
}

/// Sample ε_Λ(τ) on a τ grid (inclusive endpoints).
pub fn flatness_samples(
    spec: &LatticeSpec,
    tau_lo: &BigRational,
    tau_hi: &BigRational,
    points: usize,
    tol: &BigRational,
    prec: Precision,
) -> Result<Vec<(f64, f64)>> {
    if points < 2 || tau_lo >= tau_hi || !tau_lo.is_positive() {
        return Err(Error::Domain("need 0 < tau_lo < tau_hi and >= 2 points".into()));
    }
    let evaluator = FlatnessEvaluator::new(spec)?;
    let step = (tau_hi - tau_lo) / BigRational::from(BigInt::from((points - 1) as u64));
    let mut out = Vec::with_capacity(points);
    for i in 0..points {
        let tau = tau_lo + &step * BigRational::from(BigInt::from(i as u64));
        let eps = evaluator.eval(&tau, tol, prec)?;
        out.push((rat_to_f64(&tau), eps.to_f64()));
    }
    Ok(out)
}
