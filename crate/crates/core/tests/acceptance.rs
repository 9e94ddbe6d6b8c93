//! Acceptance suite: one test per shipped guarantee, each printing a
//! PASS line with its measured runtime. Tolerances are pinned in code.
//!
//! Reference values for the τ_ε table rows are the published three-decimal
//! figures; every comparison is within ±0.001 as stated there.

mod common;

use common::random_code;
use lattice_theta::codes::{builtin_catalog, load_catalog, macwilliams_transform, ub_distribution, weight_distribution};
use lattice_theta::criteria::{
    global_min_check, necessary_condition, sufficient_condition, ushape_exact, Verdict,
};
use lattice_theta::ensemble::{
    ensemble_min_constant, ensemble_ratio_direct, ensemble_ratio_rational, EnsembleSpec,
};
use lattice_theta::numerics::{theta2, theta3, theta4, Precision, PrecisionReal, ThetaArgument};
use lattice_theta::ratio::{
    decompose_h_basis, ratio_poly_from_code, scaled_ratio_eval, LatticeSpec, RatioEvaluator,
};
use lattice_theta::secrecy::{figure1_sweep, flatness_factor, tau_eps_solve, tau_lower_bound_solve};
use lattice_theta::util::pow10_neg;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn prec() -> Precision {
    Precision::from_digits(50)
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn tol30() -> BigRational {
    pow10_neg(30)
}

fn tol9() -> BigRational {
    pow10_neg(9)
}

fn assert_close3(got: f64, expected: f64, what: &str) {
    assert!(
        (got - expected).abs() <= 1.0e-3 + 1e-12,
        "{what}: got {got:.6}, expected {expected:.3} +- 0.001"
    );
}

#[test]
fn criterion_1_decomposition_regression() {
    let start = Instant::now();
    let cat = builtin_catalog();
    let cs32 = cat.iter().find(|e| e.name == "cs32").unwrap();
    let poly = ratio_poly_from_code(&cs32.distribution).unwrap();
    let dec = decompose_h_basis(&poly).unwrap();
    // exact: (a_4, a_3, a_2, a_1, a_0) = (0, 1/2, 1, 1/2, -1)
    assert_eq!(
        dec.h_coeffs().unwrap(),
        &[rat(-1, 1), rat(1, 2), rat(1, 1), rat(1, 2), rat(0, 1)]
    );
    let report = sufficient_condition(dec.h_coeffs().unwrap());
    assert!(report.overall);
    let pairs: Vec<(usize, BigRational, BigRational)> = report
        .per_j
        .iter()
        .map(|p| (p.j, p.alpha.clone(), p.beta.clone()))
        .collect();
    assert_eq!(
        pairs,
        vec![
            (1, rat(91, 32), rat(4, 1)),
            (2, rat(17, 4), rat(5, 1)),
            (3, rat(3, 1), rat(3, 1)),
        ]
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("criterion 1 ([32,16,8] h-decomposition, exact): PASS in {elapsed:?}");
}

#[test]
fn criterion_2_table_small_rows() {
    let start = Instant::now();
    let p = prec();
    let cat = builtin_catalog();
    let code_for = |name: &str| {
        let e = cat.iter().find(|e| e.name == name).unwrap();
        LatticeSpec::construction_a(e.distribution.clone()).unwrap()
    };
    let rows = [
        (8usize, 0.641, 0.548, "ham8", 0.831, 0.668),
        (16, 0.501, 0.417, "dc16", 0.744, 0.675),
        (24, 0.444, 0.365, "golay24", 0.790, 0.723),
        (32, 0.411, 0.335, "rm32", 0.767, 0.747),
    ];
    for (n, zn_expect, lb_expect, code, code_expect, ens_expect) in rows {
        let eps = BigRational::new(BigInt::one(), BigInt::from(n as u64));
        let zn = tau_eps_solve(&LatticeSpec::integer(n).unwrap(), &eps, &tol9(), p).unwrap();
        assert_close3(zn, zn_expect, &format!("tau_eps(Z^{n})"));
        let lb = tau_lower_bound_solve(n, &tol9(), p).unwrap();
        assert_close3(lb, lb_expect, &format!("tau lower bound, n = {n}"));
        let c = tau_eps_solve(&code_for(code), &eps, &tol9(), p).unwrap();
        assert_close3(c, code_expect, &format!("tau_eps({code})"));
        let ens = tau_eps_solve(&LatticeSpec::ensemble(n).unwrap(), &eps, &tol9(), p).unwrap();
        assert_close3(ens, ens_expect, &format!("tau_eps(ensemble n = {n})"));
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30 s");
    println!("criterion 2 (table rows n = 8/16/24/32, +-0.001): PASS in {elapsed:?}");
}

#[test]
fn criterion_3_table_large_rows() {
    let start = Instant::now();
    let p = prec();
    let rows = [
        (72usize, 0.340, 0.679),
        (128, 0.302, 0.604),
        (168, 0.287, 0.574),
        (256, 0.267, 0.533),
    ];
    // offline part: Z^n and ensemble columns
    for (n, zn_expect, ens_expect) in rows {
        let eps = BigRational::new(BigInt::one(), BigInt::from(n as u64));
        let zn = tau_eps_solve(&LatticeSpec::integer(n).unwrap(), &eps, &tol9(), p).unwrap();
        assert_close3(zn, zn_expect, &format!("tau_eps(Z^{n})"));
        let ens = tau_eps_solve(&LatticeSpec::ensemble(n).unwrap(), &eps, &tol9(), p).unwrap();
        assert_close3(ens, ens_expect, &format!("tau_eps(ensemble n = {n})"));
    }
    // code column: conditional on ingested catalog files
    let catalog_dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog");
    let mut tested = Vec::new();
    if catalog_dir.is_dir() {
        let entries = load_catalog(&catalog_dir).unwrap();
        for (n, _, ens_expect) in rows {
            if let Some(e) = entries.iter().find(|e| e.n == n && e.k == n / 2) {
                let eps = BigRational::new(BigInt::one(), BigInt::from(n as u64));
                let spec = LatticeSpec::construction_a(e.distribution.clone()).unwrap();
                let tau = tau_eps_solve(&spec, &eps, &tol9(), p).unwrap();
                // the code column equals the ensemble column to 3 decimals
                assert!(
                    (tau - ens_expect).abs() <= 5.0e-4 + 1e-12,
                    "tau_eps({}) = {tau:.6} differs from ensemble {ens_expect:.3}",
                    e.name
                );
                tested.push(n);
            }
        }
    }
    let elapsed = start.elapsed();
    if tested.is_empty() {
        println!(
            "criterion 3 (table rows n = 72..256): PASS in {elapsed:?} \
             (Z^n and ensemble columns; code column skipped, no catalog files)"
        );
    } else {
        println!(
            "criterion 3 (table rows n = 72..256): PASS in {elapsed:?} \
             (code column verified for n = {tested:?})"
        );
    }
}

#[test]
fn criterion_4_theta_constant_and_flatness() {
    let start = Instant::now();
    let p = prec();
    let t3 = theta3(&ThetaArgument::from_int(1).unwrap(), &tol30(), p).unwrap();
    let diff = (t3.value_rational() - rat(10864, 10000)).abs();
    assert!(diff < rat(5, 10000), "theta3(i) = {}", t3.to_decimal(6));
    // ε_{Z^n}(1) = ϑ₃(i)^n - 1 for n in {8, 24}
    let bound = tol30() * BigRational::from(BigInt::from(10));
    for n in [8usize, 24] {
        let eps = flatness_factor(&LatticeSpec::integer(n).unwrap(), &rat(1, 1), &tol30(), p)
            .unwrap();
        let reference = t3.powi(n as u64).sub(&PrecisionReal::one(p));
        let diff = (eps.value_rational() - reference.value_rational()).abs();
        assert!(
            diff <= eps.err_bound() + reference.err_bound() + &bound,
            "flatness mismatch for n = {n}"
        );
    }
    let elapsed = start.elapsed();
    println!("criterion 4 (theta3(i) = 1.0864 +- 0.0005; flatness identity): PASS in {elapsed:?}");
}

#[test]
fn criterion_5_figure1_z12_strictly_maximal() {
    let start = Instant::now();
    let entries = figure1_sweep(&rat(1, 12), &tol9(), prec()).unwrap();
    let z12 = entries.iter().find(|e| e.code_id == "z12").unwrap();
    assert!(entries.iter().any(|e| e.code_id.starts_with("pdc12-")));
    for e in &entries {
        assert!(e.eta_eps.is_finite() && e.eta_eps > 0.0);
        assert!(
            z12.eta_eps >= e.eta_eps - 1e-12,
            "{} exceeds eta(Z^12)",
            e.code_id
        );
        // strict maximality over the distinct lattices: the only ties are
        // classes sharing the theta series of Z^12 itself
        if !e.theta_trivial {
            assert!(
                z12.eta_eps > e.eta_eps + 1e-9,
                "{} not strictly below eta(Z^12)",
                e.code_id
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, budget 10 s");
    println!("criterion 5 (eta(Z^12) strictly maximal at eps = 1/12): PASS in {elapsed:?}");
}

/// a + b√2 with exact rational parts.
#[derive(Debug, Clone, PartialEq)]
struct QSqrt2 {
    a: BigRational,
    b: BigRational,
}

impl QSqrt2 {
    fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt2 { a, b }
    }
    fn from_rat(a: BigRational) -> Self {
        QSqrt2::new(a, BigRational::zero())
    }
    fn add(&self, o: &Self) -> Self {
        QSqrt2::new(&self.a + &o.a, &self.b + &o.b)
    }
    fn mul(&self, o: &Self) -> Self {
        let two = BigRational::from(BigInt::from(2));
        QSqrt2::new(
            &self.a * &o.a + &self.b * &o.b * &two,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
    fn pow(&self, e: usize) -> Self {
        let mut acc = QSqrt2::from_rat(BigRational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
    fn div(&self, o: &Self) -> Self {
        let two = BigRational::from(BigInt::from(2));
        let norm = &o.a * &o.a - &o.b * &o.b * &two;
        assert!(!norm.is_zero());
        let conj = QSqrt2::new(o.a.clone(), -o.b.clone());
        let num = self.mul(&conj);
        QSqrt2::new(num.a / &norm, num.b / &norm)
    }
}

#[test]
fn criterion_6_property_suite() {
    let start = Instant::now();
    let p = prec();
    let bound10 = tol30() * BigRational::from(BigInt::from(10));

    // (a) MacWilliams involution on 100 random codes, n <= 20
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..100 {
        let n = rng.gen_range(2..=20usize);
        let k = rng.gen_range(1..=n);
        let code = random_code(&mut rng, n, k);
        let d = weight_distribution(&code).unwrap();
        let dual = macwilliams_transform(&d, k).unwrap();
        let back = macwilliams_transform(&dual, n - k).unwrap();
        assert_eq!(back, d, "involution failed at n={n} k={k}");
    }

    // (b) Jacobi quartic and modular identities within 10*tol on a τ grid
    for tau in [rat(1, 10), rat(1, 4), rat(1, 2), rat(1, 1), rat(2, 1), rat(5, 1)] {
        let arg = ThetaArgument::new(tau.clone()).unwrap();
        let t2 = theta2(&arg, &tol30(), p).unwrap().powi(4);
        let t3 = theta3(&arg, &tol30(), p).unwrap().powi(4);
        let t4 = theta4(&arg, &tol30(), p).unwrap().powi(4);
        let lhs = t2.add(&t4);
        let diff = (lhs.value_rational() - t3.value_rational()).abs();
        assert!(diff <= lhs.err_bound() + t3.err_bound() + &bound10);

        let inv = tau.recip();
        let lhs = theta3(&arg, &tol30(), p).unwrap();
        let rhs = PrecisionReal::from_rational(&inv, p)
            .sqrt()
            .unwrap()
            .mul(&theta3(&ThetaArgument::new(inv).unwrap(), &tol30(), p).unwrap());
        let diff = (lhs.value_rational() - rhs.value_rational()).abs();
        assert!(diff <= lhs.err_bound() + rhs.err_bound() + &bound10);
    }

    // (c) sandwich 2^{-(n-k)} <= ratio <= 1, interval-separated, on 50
    //     random codes x 20 τ values
    let tol40 = pow10_neg(40);
    for _ in 0..50 {
        let n = rng.gen_range(2..=24usize);
        let k = rng.gen_range(1..n);
        let code = random_code(&mut rng, n, k);
        let dist = weight_distribution(&code).unwrap();
        for i in 0..20 {
            // τ from 0.3 to 3.0
            let tau = rat(3, 10) + rat(27, 190) * rat(i, 1);
            let r = scaled_ratio_eval(&dist, k, &tau, &tol40, p).unwrap();
            assert!(
                r.lower_separated && r.upper_separated,
                "sandwich not separated at n={n} k={k} tau={tau}"
            );
        }
    }

    // (d) h-basis round-trip exactness on all built-in self-dual codes
    for entry in builtin_catalog() {
        let poly = ratio_poly_from_code(&entry.distribution).unwrap();
        let dec = decompose_h_basis(&poly).unwrap();
        let sum: BigRational = dec.h_coeffs().unwrap().iter().sum();
        assert!(sum.is_one(), "{}", entry.name);
        let rebuilt = lattice_theta::ratio::RatioPolynomial::from_h_coeffs(
            dec.h_coeffs().unwrap().to_vec(),
            entry.n,
        )
        .unwrap();
        assert_eq!(rebuilt.coeffs_t(), poly.coeffs_t(), "{}", entry.name);
    }

    // (e) sufficient-pass => exact-U-shaped over the corpus, and
    // (f) necessary condition >= 0 over the corpus
    let mut corpus: Vec<(String, lattice_theta::codes::WeightDistribution)> = builtin_catalog()
        .into_iter()
        .map(|e| (e.name, e.distribution))
        .collect();
    for n in [4usize, 8, 12, 16, 24] {
        corpus.push((format!("ub{n}"), ub_distribution(n).unwrap()));
    }
    for (name, dist) in &corpus {
        let poly = ratio_poly_from_code(dist).unwrap();
        let dec = decompose_h_basis(&poly).unwrap();
        let a = dec.h_coeffs().unwrap();
        let suff = sufficient_condition(a);
        let cert = ushape_exact(a).unwrap();
        if suff.overall {
            assert_eq!(
                cert.verdict,
                Verdict::UShaped,
                "{name}: sufficient condition passed but Sturm disagrees"
            );
        }
        // contrapositive evidence: certified-U-shaped distributions must
        // pass the necessary condition
        let (value, passes) = necessary_condition(dist).unwrap();
        assert!(passes, "{name}: necessary condition value {value}");
        if cert.verdict == Verdict::UShaped {
            let gm = global_min_check(a, &cert).unwrap();
            assert!(gm.min_value.is_positive() && gm.min_value <= BigRational::one());
            // min value matches the ratio at τ = 1 within 10·tol
            let spec = LatticeSpec::construction_a(dist.clone()).unwrap();
            let at_one = RatioEvaluator::new(&spec)
                .unwrap()
                .eval(&rat(1, 1), &tol30(), p)
                .unwrap();
            let diff = (at_one.value_rational() - &gm.min_value).abs();
            assert!(diff <= at_one.err_bound() + &bound10, "{name}");
        }
    }

    // (g) ensemble closed form vs direct expected-enumerator evaluation
    for k in [4usize, 8, 12, 16] {
        let spec = EnsembleSpec::new(2 * k).unwrap();
        for i in 0..=100 {
            let t = rat(i, 100);
            let a = ensemble_ratio_rational(&spec, &t, &tol30(), p).unwrap();
            let b = ensemble_ratio_direct(&spec, &t, p).unwrap();
            let diff = (a.value_rational() - b.value_rational()).abs();
            assert!(
                diff <= a.err_bound() + b.err_bound() + &bound10,
                "k={k} t={t}"
            );
        }
    }

    // (h) ensemble minimum at t = 1/√2: exact in ℚ(√2), and numerically
    for k in [4usize, 8, 12, 16] {
        let spec = EnsembleSpec::new(2 * k).unwrap();
        // closed form at t = 1/√2 = (0 + (1/2)√2): u = √(1-t²) = t
        let t = QSqrt2::new(BigRational::zero(), rat(1, 2));
        let one = QSqrt2::from_rat(BigRational::one());
        let term_plus = one.add(&t).pow(k);
        let term_minus = one.add(&QSqrt2::new(BigRational::zero(), rat(-1, 2))).pow(k);
        let ftilde = term_plus.add(&term_minus).mul(&QSqrt2::from_rat(rat(2, 1)));
        let pow_k1 = BigRational::from(BigInt::one() << (k - 1));
        let factor = &pow_k1 / ((&pow_k1 + BigRational::one()) * BigRational::from(BigInt::one() << k));
        let lhs = ftilde.mul(&QSqrt2::from_rat(factor));
        // ((√2-1)^k + (√2+1)^k) / (2^{k/2} (1 + 2^{k-1}))
        let sqrt2 = QSqrt2::new(BigRational::zero(), BigRational::one());
        let num = sqrt2
            .add(&QSqrt2::from_rat(-BigRational::one()))
            .pow(k)
            .add(&sqrt2.add(&QSqrt2::from_rat(BigRational::one())).pow(k));
        let half_power = if k % 2 == 0 {
            QSqrt2::from_rat(BigRational::from(BigInt::one() << (k / 2)))
        } else {
            sqrt2.mul(&QSqrt2::from_rat(BigRational::from(BigInt::one() << (k / 2))))
        };
        let den = half_power.mul(&QSqrt2::from_rat(&pow_k1 + BigRational::one()));
        let rhs = num.div(&den);
        assert_eq!(lhs, rhs, "symbolic ensemble minimum mismatch at k = {k}");
        // numeric: the closed-form constant matches the evaluated ratio
        let c = ensemble_min_constant(&spec, p).unwrap();
        let pivot = PrecisionReal::from_int(2, p).sqrt().unwrap().recip().unwrap();
        let v = lattice_theta::ensemble::ensemble_ratio(&spec, &pivot, &tol30(), p).unwrap();
        let diff = (c.value_rational() - v.value_rational()).abs();
        assert!(diff <= c.err_bound() + v.err_bound() + &bound10, "k = {k}");
    }

    let elapsed = start.elapsed();
    println!("criterion 6 (property suite): PASS in {elapsed:?}");
}

#[test]
fn criterion_7_conjecture_evidence() {
    let start = Instant::now();
    let p = prec();
    let one_plus = BigRational::one() + tol30() * BigRational::from(BigInt::from(10));
    let bound10 = tol30() * BigRational::from(BigInt::from(10));
    for entry in builtin_catalog() {
        let spec = LatticeSpec::construction_a(entry.distribution.clone()).unwrap();
        let ev = RatioEvaluator::new(&spec).unwrap();
        // 201 τ-points on [0.1, 10]
        let mut values = Vec::with_capacity(201);
        let mut nearest = (0usize, rat(100, 1));
        for i in 0..201u32 {
            let tau = rat(1, 10) + rat(99, 2000) * rat(i as i64, 1);
            let gap = (&tau - BigRational::one()).abs();
            if gap < nearest.1 {
                nearest = (i as usize, gap);
            }
            let v = ev.eval(&tau, &tol30(), p).unwrap();
            assert!(
                v.value_rational() + v.err_bound() <= one_plus,
                "{}: ratio exceeds 1 + 10 tol at tau = {tau}",
                entry.name
            );
            values.push(v.value_rational());
        }
        let at_nearest = &values[nearest.0];
        for (i, v) in values.iter().enumerate() {
            assert!(
                at_nearest <= &(v + &bound10),
                "{}: sampled minimum not at the grid point nearest tau = 1 (index {i})",
                entry.name
            );
        }
    }
    let elapsed = start.elapsed();
    println!("criterion 7 (ratio <= 1, sampled minimum at tau = 1): PASS in {elapsed:?}");
}
