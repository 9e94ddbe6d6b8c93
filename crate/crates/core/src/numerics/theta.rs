//! Jacobi theta functions on the imaginary axis and the change-of-variable
//! maps s(τ) = ϑ₄/ϑ₃ and t(τ) = s²(τ).
//!
//! All series are summed in fixed-point ball arithmetic. Summation stops when
//! the next term drops below `tol/4` and the geometric tail bound is folded
//! into the error bound, so the returned `err_bound` is rigorous.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::numerics::real::{exp_neg, pi, Precision, PrecisionReal};

/// Purely imaginary theta argument z = iτ, τ > 0. The nome q = e^{-πτ} is
/// derived on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaArgument {
    tau: BigRational,
}

impl ThetaArgument {
    pub fn new(tau: BigRational) -> Result<Self> {
        if !tau.is_positive() {
            return Err(Error::Domain(format!(
                "theta argument requires tau > 0, got {tau}"
            )));
        }
        Ok(ThetaArgument { tau })
    }

    pub fn from_int(tau: i64) -> Result<Self> {
        Self::new(BigRational::from(BigInt::from(tau)))
    }

    pub fn tau(&self) -> &BigRational {
        &self.tau
    }

    /// The nome q = e^{-πτ}.
    pub fn nome(&self, prec: Precision) -> Result<PrecisionReal> {
        let pi_v = pi(prec);
        let x = pi_v.mul_rational(&self.tau);
        exp_neg(&x)
    }
}

fn check_tol(prec: Precision, tol: &BigRational) -> Result<()> {
    if !tol.is_positive() {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    // At least a few ulps of headroom must exist at the working precision.
    let min = BigRational::new(BigInt::from(8), BigInt::one() << prec.bits() as usize);
    if *tol < min {
        return Err(Error::ToleranceUnachievable {
            tol: tol.to_string(),
            bits: prec.bits(),
        });
    }
    Ok(())
}

fn ensure_within(v: PrecisionReal, tol: &BigRational, prec: Precision) -> Result<PrecisionReal> {
    if v.err_within(tol) {
        Ok(v)
    } else {
        Err(Error::ToleranceUnachievable {
            tol: tol.to_string(),
            bits: prec.bits(),
        })
    }
}

/// |x| is certainly below `threshold`.
fn below(x: &PrecisionReal, threshold: &BigRational) -> bool {
    (x.value_rational().abs() + x.err_bound()) < *threshold
}

const MAX_SERIES_TERMS: usize = 1 << 22;

/// Geometric tail bound `first_omitted / (1 - ratio)` in exact rationals,
/// rounded up into an error-bound rational.
fn geometric_tail(first_omitted: &PrecisionReal, ratio: &PrecisionReal) -> Result<BigRational> {
    let t = first_omitted.value_rational().abs() + first_omitted.err_bound();
    let r = ratio.value_rational() + ratio.err_bound();
    if r >= BigRational::one() {
        return Err(Error::Domain("theta series ratio bound >= 1".into()));
    }
    let denom = BigRational::one() - r;
    Ok(t / denom)
}

/// ϑ₂(iτ) = 2 e^{-πτ/4} Σ_{v≥0} q^{v(v+1)}.
pub fn theta2(arg: &ThetaArgument, tol: &BigRational, prec: Precision) -> Result<PrecisionReal> {
    check_tol(prec, tol)?;
    let q = arg.nome(prec)?;
    let q2 = q.mul(&q);
    let quarter = arg.tau() / BigRational::from(BigInt::from(4));
    let front = exp_neg(&pi(prec).mul_rational(&quarter))?;
    let threshold = tol / BigRational::from(BigInt::from(4));

    // terms: front * q^{v(v+1)}; consecutive ratio is q^{2(v+1)}
    let mut sum = front.clone();
    let mut term = front;
    let mut pow = PrecisionReal::one(prec); // q^{2v}
    let mut v = 0usize;
    loop {
        pow = pow.mul(&q2); // q^{2(v+1)}
        let next = term.mul(&pow);
        if below(&next, &threshold) {
            let tail = geometric_tail(&next, &pow)?;
            let out = sum
                .mul_int(&BigInt::from(2))
                .add(&PrecisionReal::zero_ball(
                    &(tail * BigRational::from(BigInt::from(2))),
                    prec,
                ));
            return ensure_within(out, tol, prec);
        }
        sum = sum.add(&next);
        term = next;
        v += 1;
        if v > MAX_SERIES_TERMS {
            return Err(Error::Domain("theta2 series too slow to converge".into()));
        }
    }
}

/// Direct sum 1 + 2 Σ_{v≥1} q^{v²} with geometric tail bound.
fn theta3_direct(q: &PrecisionReal, tol: &BigRational, prec: Precision) -> Result<PrecisionReal> {
    let threshold = tol / BigRational::from(BigInt::from(4));
    let q2 = q.mul(q);
    let mut sum = PrecisionReal::zero(prec); // Σ_{v>=1} q^{v²}
    let mut term = q.clone(); // q^{v²}
    let mut odd = q.clone(); // q^{2v-1}
    let mut v = 1usize;
    loop {
        sum = sum.add(&term);
        odd = odd.mul(&q2); // q^{2v+1}
        let next = term.mul(&odd); // q^{(v+1)²}
        if below(&next, &threshold) {
            // consecutive ratio beyond v+1 is at most q^{2v+3} = odd * q²
            let ratio = odd.mul(&q2);
            let tail = geometric_tail(&next, &ratio)?;
            return Ok(PrecisionReal::one(prec)
                .add(&sum.mul_int(&BigInt::from(2)))
                .add(&PrecisionReal::zero_ball(
                    &(tail * BigRational::from(BigInt::from(2))),
                    prec,
                )));
        }
        term = next;
        v += 1;
        if v > MAX_SERIES_TERMS {
            return Err(Error::Domain("theta3 series too slow to converge".into()));
        }
    }
}

/// ϑ₃(iτ). For τ < 1 the modular transformation
/// ϑ₃(iτ) = τ^{-1/2} ϑ₃(i/τ) is applied first so the series always
/// converges fast.
pub fn theta3(arg: &ThetaArgument, tol: &BigRational, prec: Precision) -> Result<PrecisionReal> {
    check_tol(prec, tol)?;
    let one = BigRational::one();
    if *arg.tau() < one {
        let inv = arg.tau().recip();
        let inner_arg = ThetaArgument::new(inv.clone())?;
        let inner_tol = tol / BigRational::from(BigInt::from(4));
        let inner = theta3_direct(&inner_arg.nome(prec)?, &inner_tol, prec)?;
        let root = PrecisionReal::from_rational(&inv, prec).sqrt()?;
        let v = root.mul(&inner);
        ensure_within(v, tol, prec)
    } else {
        let v = theta3_direct(&arg.nome(prec)?, tol, prec)?;
        ensure_within(v, tol, prec)
    }
}

/// ϑ₄(iτ) = 1 + 2 Σ_{v≥1} (-1)^v q^{v²}. Alternating, so the tail is
/// bounded by the first omitted term.
pub fn theta4(arg: &ThetaArgument, tol: &BigRational, prec: Precision) -> Result<PrecisionReal> {
    check_tol(prec, tol)?;
    let q = arg.nome(prec)?;
    let threshold = tol / BigRational::from(BigInt::from(4));
    let q2 = q.mul(&q);
    let mut sum = PrecisionReal::zero(prec);
    let mut term = q.clone();
    let mut odd = q.clone();
    let mut v = 1usize;
    loop {
        if v % 2 == 1 {
            sum = sum.sub(&term);
        } else {
            sum = sum.add(&term);
        }
        odd = odd.mul(&q2);
        let next = term.mul(&odd);
        if below(&next, &threshold) {
            // alternating series: the tail is bounded by the first omitted term
            let tail = next.value_rational().abs() + next.err_bound();
            let out = PrecisionReal::one(prec)
                .add(&sum.mul_int(&BigInt::from(2)))
                .add(&PrecisionReal::zero_ball(
                    &(tail * BigRational::from(BigInt::from(2))),
                    prec,
                ));
            return ensure_within(out, tol, prec);
        }
        term = next;
        v += 1;
        if v > MAX_SERIES_TERMS {
            return Err(Error::Domain("theta4 series too slow to converge".into()));
        }
    }
}

/// s(τ) = ϑ₄(iτ)/ϑ₃(iτ) ∈ [0, 1].
pub fn s_of_tau(tau: &BigRational, tol: &BigRational, prec: Precision) -> Result<PrecisionReal> {
    let arg = ThetaArgument::new(tau.clone())?;
    let inner_tol = tol / BigRational::from(BigInt::from(8));
    let t4 = theta4(&arg, &inner_tol, prec)?;
    let t3 = theta3(&arg, &inner_tol, prec)?;
    let v = t4.div(&t3)?;
    ensure_within(v, tol, prec)
}

/// t(τ) = s²(τ) = ϑ₄²(iτ)/ϑ₃²(iτ) ∈ [0, 1], strictly increasing in τ.
pub fn t_of_tau(tau: &BigRational, tol: &BigRational, prec: Precision) -> Result<PrecisionReal> {
    let s = s_of_tau(tau, &(tol / BigRational::from(BigInt::from(4))), prec)?;
    ensure_within(s.mul(&s), tol, prec)
}

/// h(t) = t⁴ - t² + 1 = (t² - 1/2)² + 3/4, exact on rationals in [0, 1].
pub fn h_eval(t: &BigRational) -> Result<BigRational> {
    if t.is_negative() || *t > BigRational::one() {
        return Err(Error::Domain(format!("h(t) domain is [0,1], got {t}")));
    }
    Ok(h_eval_unchecked(t))
}

/// h(t) without the domain restriction.
pub fn h_eval_unchecked(t: &BigRational) -> BigRational {
    let t2 = t * t;
    &t2 * &t2 - &t2 + BigRational::one()
}

/// h evaluated on a ball.
pub fn h_eval_real(t: &PrecisionReal) -> PrecisionReal {
    let prec = t.precision();
    let t2 = t.mul(t);
    t2.mul(&t2).sub(&t2).add(&PrecisionReal::one(prec))
}

/// Closed-form upper bound on ϑ₃(iτ) for τ ∈ (0,1):
/// τ^{-1/2} + e^{-(π-1)/τ}.
pub fn theta3_upper_bound(
    tau: &BigRational,
    tol: &BigRational,
    prec: Precision,
) -> Result<PrecisionReal> {
    check_tol(prec, tol)?;
    if !tau.is_positive() || *tau >= BigRational::one() {
        return Err(Error::Domain(format!(
            "theta3_upper_bound domain is (0,1), got {tau}"
        )));
    }
    let inv = tau.recip();
    let rsqrt = PrecisionReal::from_rational(&inv, prec).sqrt()?;
    let pi_m1 = pi(prec).sub(&PrecisionReal::one(prec));
    let x = pi_m1.mul_rational(&inv);
    let e = exp_neg(&x)?;
    ensure_within(rsqrt.add(&e), tol, prec)
}

/// Ordering of a rational t against the pivot 1/√2 (never equal, since the
/// pivot is irrational).
pub fn cmp_inv_sqrt2(t: &BigRational) -> Ordering {
    if t.is_negative() {
        return Ordering::Less;
    }
    let two_t2 = BigRational::from(BigInt::from(2)) * t * t;
    if two_t2 < BigRational::one() {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// |t - 1/√2| <= margin, decided exactly.
pub fn within_margin_of_inv_sqrt2(t: &BigRational, margin: &BigRational) -> bool {
    let lo = t - margin;
    let hi = t + margin;
    let le_pivot = |x: &BigRational| -> bool {
        // x <= 1/√2
        x.is_negative() || BigRational::from(BigInt::from(2)) * x * x <= BigRational::one()
    };
    let ge_pivot = |x: &BigRational| -> bool {
        !x.is_negative() && BigRational::from(BigInt::from(2)) * x * x >= BigRational::one()
    };
    le_pivot(&lo) && ge_pivot(&hi)
}
