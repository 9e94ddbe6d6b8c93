//! Exact and sampled verification of U-shapedness, the sufficient condition
//! on h-basis coefficients, and the necessary condition on weight
//! distributions.
//!
//! U-shapedness of f(t) = Σ_r a_r h(t)^r on [0,1] around 1/√2 reduces to
//! positivity of g(t) = Σ_r r a_r h(t)^{r-1} on (0,1), because
//! h'(t) = 2t(2t²-1) carries the required sign pattern. The exact route
//! isolates the real roots of g in (0,1) with Sturm sequences over the
//! integers, so the verdict is definite for every rational-coefficient
//! input. Sign conditions are checked on the open interval: h'(0) = 0, so a
//! literal endpoint-strict reading would reject h itself.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use crate::codes::{ub_distribution, WeightDistribution};
use crate::error::{Error, Result};
use crate::numerics::{cmp_inv_sqrt2, within_margin_of_inv_sqrt2, PrecisionReal};
use crate::poly::{IntPoly, RatPoly};
use crate::ratio::h_poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    UShaped,
    NotUShaped,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ExactSturm,
    Sampled,
}

/// Proof object accompanying an exact verdict: no roots of g in (0,1) plus
/// g(1/2) > 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmProof {
    pub variations_at_zero: usize,
    pub variations_at_one: usize,
    pub roots_in_open_interval: usize,
    pub g_at_half: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UShapeCertificate {
    pub verdict: Verdict,
    pub method: Method,
    /// A t-value where the sign condition fails, when one was certified.
    pub witness: Option<BigRational>,
    /// Whether g(t) = Σ_r r a_r h(t)^{r-1} was shown positive on (0,1)
    /// (exact route), or the full sampled sign pattern held (sampled route).
    pub g_positivity: bool,
    pub sturm: Option<SturmProof>,
}

/// Per-j outcome of the sufficient condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SufficientPair {
    pub j: usize,
    pub alpha: BigRational,
    pub beta: BigRational,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SufficientConditionReport {
    pub per_j: Vec<SufficientPair>,
    pub overall: bool,
    /// True when the degenerate l <= 1 rule decided the report: for l = 1
    /// the chain is empty and f = a_0 + a_1 h is U-shaped iff a_1 > 0.
    pub degenerate_rule: bool,
}

/// Sufficient condition on h-basis coefficients a_0..a_l:
/// min(α_j, β_j) > 0 for all j in [1 : l-1], with
/// α_j = Σ_{r=j}^{l} r!/(r-j)! a_r (3/4)^{r-j} and β_j the same sum
/// without the (3/4) powers.
pub fn sufficient_condition(h_coeffs: &[BigRational]) -> SufficientConditionReport {
    let ell = h_coeffs.len().saturating_sub(1);
    if ell == 0 {
        return SufficientConditionReport {
            per_j: vec![],
            overall: false,
            degenerate_rule: true,
        };
    }
    if ell == 1 {
        return SufficientConditionReport {
            per_j: vec![],
            overall: h_coeffs[1].is_positive(),
            degenerate_rule: true,
        };
    }
    let three_quarters = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut per_j = Vec::with_capacity(ell - 1);
    let mut overall = true;
    for j in 1..ell {
        let mut alpha = BigRational::zero();
        let mut beta = BigRational::zero();
        for (r, a) in h_coeffs.iter().enumerate().take(ell + 1).skip(j) {
            // falling factorial r!/(r-j)!
            let mut ff = BigInt::one();
            for i in (r - j + 1)..=r {
                ff *= BigInt::from(i);
            }
            let ff = BigRational::from(ff);
            alpha += &ff * a * pow_rat(&three_quarters, r - j);
            beta += &ff * a;
        }
        let passes = alpha.is_positive() && beta.is_positive();
        overall &= passes;
        per_j.push(SufficientPair {
            j,
            alpha,
            beta,
            passes,
        });
    }
    SufficientConditionReport {
        per_j,
        overall,
        degenerate_rule: false,
    }
}

fn pow_rat(x: &BigRational, e: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Necessary condition for a self-dual distribution:
/// Σ_w (A_w^UB - A_w)/(w+1) >= 0, exact.
pub fn necessary_condition(dist: &WeightDistribution) -> Result<(BigRational, bool)> {
    dist.check_self_dual_consistent()?;
    let n = dist.n();
    let ub = ub_distribution(n)?;
    let mut sum = BigRational::zero();
    for w in 0..=n {
        let diff = BigInt::from(ub.count(w).clone()) - BigInt::from(dist.count(w).clone());
        sum += BigRational::new(diff, BigInt::from(w + 1));
    }
    let passes = !sum.is_negative();
    Ok((sum, passes))
}

/// g(t) = Σ_{r>=1} r a_r h(t)^{r-1} as an exact rational polynomial.
fn g_polynomial(h_coeffs: &[BigRational]) -> RatPoly {
    let h = h_poly();
    let mut acc = RatPoly::zero();
    let mut hp = RatPoly::one();
    for (r, a) in h_coeffs.iter().enumerate().skip(1) {
        let c = a * BigRational::from(BigInt::from(r));
        acc = acc.add(&hp.scale(&c));
        hp = hp.mul(&h);
    }
    acc
}

/// Sturm chain with content normalization at every step.
fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone()];
    let d = p.derivative().primitive();
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let len = chain.len();
        let r = chain[len - 2].rem_normalized(&chain[len - 1]);
        if r.is_zero() {
            break;
        }
        let neg = r.neg();
        let done = neg.degree() == Some(0);
        chain.push(neg);
        if done {
            break;
        }
    }
    chain
}

fn sign_variations(chain: &[IntPoly], x: &BigRational) -> usize {
    let mut last = 0i32;
    let mut count = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Distinct real roots of p in the open interval (a, b); requires p(a) != 0
/// and p(b) != 0. Returns (count, V(a), V(b)).
fn roots_in_open(p: &IntPoly, a: &BigRational, b: &BigRational) -> (usize, usize, usize) {
    let chain = sturm_chain(p);
    let va = sign_variations(&chain, a);
    let vb = sign_variations(&chain, b);
    (va - vb, va, vb)
}

/// Exact U-shape certificate via Sturm root isolation.
///
/// Requires Σ a_r = 1 (a normalized ratio polynomial).
pub fn ushape_exact(h_coeffs: &[BigRational]) -> Result<UShapeCertificate> {
    let sum: BigRational = h_coeffs.iter().sum();
    if !sum.is_one() {
        return Err(Error::Precondition(format!(
            "h-basis coefficients must sum to 1, got {sum}"
        )));
    }
    let g = g_polynomial(h_coeffs);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let g_at_half = g.eval(&half);

    if g.is_zero() {
        // constant ratio: the derivative vanishes identically
        return Ok(UShapeCertificate {
            verdict: Verdict::NotUShaped,
            method: Method::ExactSturm,
            witness: Some(half),
            g_positivity: false,
            sturm: Some(SturmProof {
                variations_at_zero: 0,
                variations_at_one: 0,
                roots_in_open_interval: 0,
                g_at_half,
            }),
        });
    }

    // deflate roots at the endpoints so the Sturm count is over (0,1)
    let mut p = g.primitive_integer();
    while !p.is_zero() && p.coeff(0).is_zero() {
        p = p.deflate_rational_root(&BigRational::zero());
    }
    while !p.is_zero() && p.eval(&BigRational::one()).is_zero() {
        p = p.deflate_rational_root(&BigRational::one());
    }

    let (roots, va, vb) = if p.degree().map_or(true, |d| d == 0) {
        (0, 0, 0)
    } else {
        roots_in_open(&p, &BigRational::zero(), &BigRational::one())
    };
    let proof = SturmProof {
        variations_at_zero: va,
        variations_at_one: vb,
        roots_in_open_interval: roots,
        g_at_half: g_at_half.clone(),
    };

    if roots == 0 && g_at_half.is_positive() {
        return Ok(UShapeCertificate {
            verdict: Verdict::UShaped,
            method: Method::ExactSturm,
            witness: None,
            g_positivity: true,
            sturm: Some(proof),
        });
    }
    // witness: a dyadic point with g < 0 if one exists, otherwise the
    // midpoint of an isolating interval of the offending root
    let witness = if !g_at_half.is_positive() {
        Some(half)
    } else {
        find_negative_point(&g).or_else(|| {
            isolate_first_root(&p)
                .map(|(lo, hi)| (lo + hi) / BigRational::from(BigInt::from(2)))
        })
    };
    Ok(UShapeCertificate {
        verdict: Verdict::NotUShaped,
        method: Method::ExactSturm,
        witness,
        g_positivity: false,
        sturm: Some(proof),
    })
}

fn find_negative_point(g: &RatPoly) -> Option<BigRational> {
    for depth in 1..=8u32 {
        let den = BigInt::one() << depth;
        for num in (1..(1i64 << depth)).step_by(2) {
            let t = BigRational::new(BigInt::from(num), den.clone());
            if g.eval(&t).is_negative() {
                return Some(t);
            }
        }
    }
    None
}

/// Bisect (0,1) down to width 2^-26 around the leftmost root of p.
fn isolate_first_root(p: &IntPoly) -> Option<(BigRational, BigRational)> {
    let chain = sturm_chain(p);
    let mut lo = BigRational::zero();
    let mut hi = BigRational::one();
    let count =
        |a: &BigRational, b: &BigRational| sign_variations(&chain, a) - sign_variations(&chain, b);
    if count(&lo, &hi) == 0 {
        return None;
    }
    for _ in 0..26 {
        let mid = (&lo + &hi) / BigRational::from(BigInt::from(2));
        if p.eval(&mid).is_zero() {
            return Some((mid.clone(), mid));
        }
        if count(&lo, &mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some((lo, hi))
}

/// Sampled U-shape certificate from central finite differences on a uniform
/// grid, excluding the endpoints and the `margin`-neighborhood of 1/√2.
///
/// A certified wrong sign wins over tiny differences: the verdict is
/// `NotUShaped` with a witness whenever any difference definitely has the
/// wrong sign, `Indeterminate` when no failure is certified but some
/// |difference| < margin, and `UShaped` otherwise.
pub fn ushape_sampled<F>(f: F, grid_size: usize, margin: &BigRational) -> Result<UShapeCertificate>
where
    F: Fn(&BigRational) -> Result<PrecisionReal>,
{
    if grid_size < 101 {
        return Err(Error::Precondition(format!(
            "sampled U-shape check needs grid_size >= 101, got {grid_size}"
        )));
    }
    if !margin.is_positive() {
        return Err(Error::Precondition("margin must be positive".into()));
    }
    let m = grid_size - 1;
    let values: Vec<PrecisionReal> = (0..=m)
        .map(|i| f(&BigRational::new(BigInt::from(i), BigInt::from(m))))
        .collect::<Result<_>>()?;

    let mut failing: Vec<usize> = Vec::new();
    let mut tiny = false;
    for i in 1..m {
        let t = BigRational::new(BigInt::from(i), BigInt::from(m));
        if within_margin_of_inv_sqrt2(&t, margin) {
            continue;
        }
        let diff = values[i + 1].sub(&values[i - 1]);
        match diff.abs().cmp_rational_definite(margin) {
            Ok(Ordering::Greater) => {
                let sign_ok = match cmp_inv_sqrt2(&t) {
                    Ordering::Less => diff.value_rational().is_negative(),
                    _ => diff.value_rational().is_positive(),
                };
                if !sign_ok {
                    failing.push(i);
                }
            }
            _ => tiny = true,
        }
    }

    if !failing.is_empty() {
        // witness: middle of the longest contiguous failing run
        let mut best = (failing[0], failing[0]);
        let mut run = (failing[0], failing[0]);
        for &i in failing.iter().skip(1) {
            if i == run.1 + 1 {
                run.1 = i;
            } else {
                if run.1 - run.0 > best.1 - best.0 {
                    best = run;
                }
                run = (i, i);
            }
        }
        if run.1 - run.0 > best.1 - best.0 {
            best = run;
        }
        let mid = (best.0 + best.1) / 2;
        return Ok(UShapeCertificate {
            verdict: Verdict::NotUShaped,
            method: Method::Sampled,
            witness: Some(BigRational::new(BigInt::from(mid), BigInt::from(m))),
            g_positivity: false,
            sturm: None,
        });
    }
    if tiny {
        return Ok(UShapeCertificate {
            verdict: Verdict::Indeterminate,
            method: Method::Sampled,
            witness: None,
            g_positivity: false,
            sturm: None,
        });
    }
    Ok(UShapeCertificate {
        verdict: Verdict::UShaped,
        method: Method::Sampled,
        witness: None,
        g_positivity: true,
        sturm: None,
    })
}

/// The exact minimizer marker t = 1/√2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PivotLocation;

impl PivotLocation {
    pub fn approx(&self) -> f64 {
        std::f64::consts::FRAC_1_SQRT_2
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalMinimum {
    pub location: PivotLocation,
    /// Σ_r a_r (3/4)^r, the exact ratio value at τ = 1.
    pub min_value: BigRational,
}

/// Global minimum record for a certified U-shaped ratio: located at
/// t = 1/√2 with exact value Σ a_r (3/4)^r <= 1.
pub fn global_min_check(
    h_coeffs: &[BigRational],
    cert: &UShapeCertificate,
) -> Result<GlobalMinimum> {
    if cert.verdict != Verdict::UShaped {
        return Err(Error::Precondition(
            "global_min_check needs a u_shaped certificate".into(),
        ));
    }
    let three_quarters = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut min_value = BigRational::zero();
    for (r, a) in h_coeffs.iter().enumerate() {
        min_value += a * pow_rat(&three_quarters, r);
    }
    if min_value > BigRational::one() {
        return Err(Error::Domain(format!(
            "certified minimum exceeds 1: {min_value}"
        )));
    }
    Ok(GlobalMinimum {
        location: PivotLocation,
        min_value,
    })
}
