//! The random self-dual code ensemble: expected weight enumerator, its
//! simplified closed form, and the ensemble theta-series ratio.
//!
//! The expected enumerator of a random binary [n, n/2] self-dual code is
//! xⁿ + yⁿ + (2^{k-1}+1)^{-1} Σ_{w'=1}^{k-1} C(n,2w') x^{n-2w'} y^{2w'},
//! and under the substitution (x,y) = (√(1+t), √(1-t)) it collapses to
//! (2^{k-1}/(2^{k-1}+1)) [ (1+t)^k + (1-t)^k + (1+√(1-t²))^k + (1-√(1-t²))^k ].

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::criteria::{ushape_sampled, UShapeCertificate};
use crate::error::{Error, Result};
use crate::numerics::{Precision, PrecisionReal};

/// Parameters of the length-n self-dual ensemble (n even, n >= 4; k = n/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnsembleSpec {
    n: usize,
}

impl EnsembleSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n % 2 != 0 || n < 4 {
            return Err(Error::Domain(format!(
                "ensemble needs even n >= 4, got {n}"
            )));
        }
        Ok(EnsembleSpec { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n / 2
    }
}

/// Expected weight enumerator coefficients E[A_0..A_n]. These are exact
/// rationals, not integers: expectations over the ensemble.
pub fn expected_weight_enumerator(spec: &EnsembleSpec) -> Vec<BigRational> {
    let n = spec.n;
    let k = spec.k();
    let denom = BigRational::from(BigInt::from((BigUint::one() << (k - 1)) + 1u32));
    let mut out = vec![BigRational::zero(); n + 1];
    out[0] = BigRational::one();
    out[n] = BigRational::one();
    let mut binom = BigUint::one(); // C(n, w), starting at w = 0
    for w in 1..=(n - 1) {
        binom = binom * BigUint::from(n - w + 1) / BigUint::from(w);
        if w % 2 == 0 && w / 2 <= k - 1 {
            out[w] = BigRational::from(BigInt::from(binom.clone())) / &denom;
        }
    }
    out
}

/// Expected theta-series ratio E[Δ](t) via the closed form, with the
/// cancellation-safe branch (1-√(1-t²)) = t²/(1+√(1-t²)) near t = 0.
pub fn ensemble_ratio(
    spec: &EnsembleSpec,
    t: &PrecisionReal,
    tol: &BigRational,
    prec: Precision,
) -> Result<PrecisionReal> {
    let k = spec.k() as u64;
    let one = PrecisionReal::one(prec);
    let t2 = t.mul(t);
    let u = one.sub(&t2).sqrt()?; // √(1-t²)
    let a = one.add(t).powi(k);
    let b = one.sub(t).powi(k);
    let c = one.add(&u).powi(k);
    // (1-u)^k, avoiding cancellation for small t
    let d = match t.cmp_rational_definite(&BigRational::new(BigInt::one(), BigInt::from(2))) {
        Ok(std::cmp::Ordering::Less) => t2.div(&one.add(&u))?.powi(k),
        _ => one.sub(&u).powi(k),
    };
    let sum = a.add(&b).add(&c).add(&d);
    let pow = BigInt::one() << (spec.k() - 1);
    let factor = BigRational::new(pow.clone(), (&pow + BigInt::one()) << spec.k());
    let v = sum.mul_rational(&factor);
    if !v.err_within(tol) {
        return Err(Error::ToleranceUnachievable {
            tol: tol.to_string(),
            bits: prec.bits(),
        });
    }
    Ok(v)
}

/// Expected ratio at an exact rational t.
pub fn ensemble_ratio_rational(
    spec: &EnsembleSpec,
    t: &BigRational,
    tol: &BigRational,
    prec: Precision,
) -> Result<PrecisionReal> {
    if t.is_negative() || *t > BigRational::one() {
        return Err(Error::Domain(format!("t must lie in [0,1], got {t}")));
    }
    ensemble_ratio(spec, &PrecisionReal::from_rational(t, prec), tol, prec)
}

/// E[Δ] by direct substitution into the expected enumerator:
/// Σ_w E[A_w] (1+t)^{(n-w)/2} (1-t)^{w/2} / 2^k. Cross-checks the closed
/// form.
pub fn ensemble_ratio_direct(
    spec: &EnsembleSpec,
    t: &BigRational,
    prec: Precision,
) -> Result<PrecisionReal> {
    if t.is_negative() || *t > BigRational::one() {
        return Err(Error::Domain(format!("t must lie in [0,1], got {t}")));
    }
    let coeffs = expected_weight_enumerator(spec);
    let n = spec.n;
    let tp = PrecisionReal::from_rational(t, prec);
    let one = PrecisionReal::one(prec);
    let xp = one.add(&tp);
    let xm = one.sub(&tp);
    let mut acc = PrecisionReal::zero(prec);
    for (w, ew) in coeffs.iter().enumerate() {
        if ew.is_zero() {
            continue;
        }
        debug_assert!(w % 2 == 0);
        let term = xp.powi(((n - w) / 2) as u64).mul(&xm.powi((w / 2) as u64));
        acc = acc.add(&term.mul_rational(ew));
    }
    Ok(acc.mul_rational(&BigRational::new(BigInt::one(), BigInt::one() << spec.k())))
}

/// The ensemble minimum ((√2-1)^k + (√2+1)^k) / (2^{k/2}(1+2^{k-1})),
/// evaluated numerically.
pub fn ensemble_min_constant(spec: &EnsembleSpec, prec: Precision) -> Result<PrecisionReal> {
    let k = spec.k() as u64;
    let sqrt2 = PrecisionReal::from_int(2, prec).sqrt()?;
    let one = PrecisionReal::one(prec);
    let num = sqrt2.sub(&one).powi(k).add(&sqrt2.add(&one).powi(k));
    // 2^{k/2} = 2^{⌊k/2⌋} · (√2 when k is odd)
    let mut denom = PrecisionReal::from_int(BigInt::one() << (spec.k() / 2), prec);
    if k % 2 == 1 {
        denom = denom.mul(&sqrt2);
    }
    let denom = denom.mul_int(&((BigInt::one() << (spec.k() - 1)) + BigInt::one()));
    num.div(&denom)
}

/// Sampled U-shape certificate for the ensemble ratio on a t-grid.
pub fn ensemble_ushape_check(
    spec: &EnsembleSpec,
    grid_size: usize,
    margin: &BigRational,
    tol: &BigRational,
    prec: Precision,
) -> Result<UShapeCertificate> {
    if grid_size < 1001 {
        return Err(Error::Precondition(format!(
            "ensemble U-shape check needs grid_size >= 1001, got {grid_size}"
        )));
    }
    let spec = *spec;
    let tol = tol.clone();
    ushape_sampled(
        |t| ensemble_ratio_rational(&spec, t, &tol, prec),
        grid_size,
        margin,
    )
}
