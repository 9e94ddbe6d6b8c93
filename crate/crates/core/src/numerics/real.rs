//! Fixed-point ball arithmetic: an extended-precision value together with a
//! guaranteed absolute error bound.
//!
//! A [`PrecisionReal`] stores `num * 2^-bits` as the midpoint and
//! `err * 2^-bits` as the radius. Every operation rounds the midpoint and
//! accounts for the rounding in the radius, so the true result is always
//! inside the ball. Comparisons between overlapping balls are refused with
//! [`Error::IndeterminateComparison`] instead of guessing a sign.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Working precision, measured in fractional bits of the fixed-point grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    bits: u32,
}

/// Guard bits added on top of the requested decimal digits.
const GUARD_BITS: u32 = 64;

impl Precision {
    /// Precision carrying at least `digits` significant decimal digits
    /// (plus a fixed guard margin).
    pub fn from_digits(digits: u32) -> Precision {
        // ceil(digits * log2(10)) = ceil(digits * 3.3219...)
        let bits = (digits as u64 * 3322 / 1000 + 1) as u32 + GUARD_BITS;
        Precision { bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// One unit in the last place, as an exact rational.
    pub fn ulp(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::one() << self.bits as usize)
    }
}

impl Default for Precision {
    /// 50 significant decimal digits.
    fn default() -> Self {
        Precision::from_digits(50)
    }
}

/// Extended-precision real with a guaranteed absolute error bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecisionReal {
    num: BigInt,
    err: BigUint,
    bits: u32,
}

/// Round `x / 2^k` to nearest (half up). Error at most 1/2 ulp.
fn shr_round(x: &BigInt, k: u32) -> BigInt {
    if k == 0 {
        return x.clone();
    }
    let half = BigInt::one() << (k - 1) as usize;
    (x + half) >> k as usize
}

/// Round `a / b` to nearest for `b > 0`. Error at most 1/2 ulp.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(b.is_positive());
    let num = (a << 1u32) + b;
    let den = b << 1u32;
    num.div_floor(&den)
}

fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    debug_assert!(!b.is_zero());
    (a + b - 1u32) / b
}

impl PrecisionReal {
    pub fn zero(prec: Precision) -> Self {
        PrecisionReal {
            num: BigInt::zero(),
            err: BigUint::zero(),
            bits: prec.bits,
        }
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int<T: Into<BigInt>>(v: T, prec: Precision) -> Self {
        PrecisionReal {
            num: v.into() << prec.bits as usize,
            err: BigUint::zero(),
            bits: prec.bits,
        }
    }

    /// Zero-centered ball of at least the given radius.
    pub fn zero_ball(radius: &BigRational, prec: Precision) -> Self {
        debug_assert!(!radius.is_negative());
        let scaled = radius.numer().magnitude() << prec.bits as usize;
        let err = ceil_div(&scaled, radius.denom().magnitude());
        PrecisionReal {
            num: BigInt::zero(),
            err,
            bits: prec.bits,
        }
    }

    /// Exact if `r` is dyadic at this precision, otherwise correct to 1 ulp.
    pub fn from_rational(r: &BigRational, prec: Precision) -> Self {
        let scaled = r.numer() << prec.bits as usize;
        let num = div_round(&scaled, r.denom());
        let err = if (&num * r.denom()) == scaled {
            BigUint::zero()
        } else {
            BigUint::one()
        };
        PrecisionReal {
            num,
            err,
            bits: prec.bits,
        }
    }

    pub fn precision(&self) -> Precision {
        Precision { bits: self.bits }
    }

    /// Midpoint as an exact rational.
    pub fn value_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.bits as usize)
    }

    /// Error bound as an exact rational (always >= 0).
    pub fn err_bound(&self) -> BigRational {
        BigRational::new(
            BigInt::from_biguint(Sign::Plus, self.err.clone()),
            BigInt::one() << self.bits as usize,
        )
    }

    pub fn is_exact(&self) -> bool {
        self.err.is_zero()
    }

    /// True when the error bound does not exceed `tol`.
    pub fn err_within(&self, tol: &BigRational) -> bool {
        // err / 2^bits <= p/q  <=>  err * q <= p * 2^bits
        if tol.is_negative() {
            return false;
        }
        let lhs = BigInt::from_biguint(Sign::Plus, self.err.clone()) * tol.denom();
        let rhs = tol.numer() << self.bits as usize;
        lhs <= rhs
    }

    pub fn to_f64(&self) -> f64 {
        big_to_f64(&self.num, self.bits)
    }

    pub fn err_to_f64(&self) -> f64 {
        big_to_f64(&BigInt::from_biguint(Sign::Plus, self.err.clone()), self.bits)
    }

    /// Decimal rendering of the midpoint with `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let neg = self.num.is_negative();
        let mag = self.num.magnitude().clone();
        let scaled = mag * BigUint::from(10u32).pow(digits as u32);
        // round(scaled / 2^bits)
        let half = BigUint::one() << (self.bits - 1) as usize;
        let q = (scaled + half) >> self.bits as usize;
        let s = q.to_string();
        let (int_part, frac_part) = if s.len() > digits {
            let (a, b) = s.split_at(s.len() - digits);
            (a.to_string(), b.to_string())
        } else {
            ("0".to_string(), format!("{:0>width$}", s, width = digits))
        };
        let sign = if neg && (int_part != "0" || frac_part.chars().any(|c| c != '0')) {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    fn align(&self, other: &Self) -> (Self, Self) {
        match self.bits.cmp(&other.bits) {
            Ordering::Equal => (self.clone(), other.clone()),
            Ordering::Less => (self.upscale(other.bits), other.clone()),
            Ordering::Greater => (self.clone(), other.upscale(self.bits)),
        }
    }

    fn upscale(&self, bits: u32) -> Self {
        debug_assert!(bits >= self.bits);
        let shift = (bits - self.bits) as usize;
        PrecisionReal {
            num: &self.num << shift,
            err: &self.err << shift,
            bits,
        }
    }

    pub fn neg(&self) -> Self {
        PrecisionReal {
            num: -&self.num,
            err: self.err.clone(),
            bits: self.bits,
        }
    }

    pub fn abs(&self) -> Self {
        PrecisionReal {
            num: self.num.abs(),
            err: self.err.clone(),
            bits: self.bits,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        PrecisionReal {
            num: a.num + b.num,
            err: a.err + b.err,
            bits: a.bits,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product rule for the radius: |a| eb + |b| ea + ea eb, plus rounding.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        let bits = a.bits;
        let num = shr_round(&(&a.num * &b.num), bits);
        let e = a.num.magnitude() * &b.err + b.num.magnitude() * &a.err + &a.err * &b.err;
        let err = (e >> bits as usize) + 2u32;
        PrecisionReal { num, err, bits }
    }

    /// Multiply by an exact integer; no rounding occurs.
    pub fn mul_int(&self, c: &BigInt) -> Self {
        PrecisionReal {
            num: &self.num * c,
            err: &self.err * c.magnitude(),
            bits: self.bits,
        }
    }

    /// Multiply by an exact rational: x·p/q with a single final rounding,
    /// so tiny factors do not inflate the bound of a large value.
    pub fn mul_rational(&self, r: &BigRational) -> Self {
        let p = r.numer();
        let q = r.denom(); // normalized positive
        let num = div_round(&(&self.num * p), q);
        let err = ceil_div(&(&self.err * p.magnitude()), q.magnitude()) + 1u32;
        PrecisionReal {
            num,
            err,
            bits: self.bits,
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other);
        let bits = a.bits;
        let bmag = b.num.magnitude();
        if bmag <= &b.err {
            return Err(Error::DivisionByZeroInterval);
        }
        let denom_lo = bmag - &b.err;
        let scaled = &a.num << bits as usize;
        let num = if b.num.is_positive() {
            div_round(&scaled, &b.num)
        } else {
            div_round(&(-&scaled), &(-&b.num))
        };
        let e_num = (&a.err << bits as usize) + (num.magnitude() + 1u32) * &b.err;
        let err = ceil_div(&e_num, &denom_lo) + 1u32;
        Ok(PrecisionReal { num, err, bits })
    }

    pub fn recip(&self) -> Result<Self> {
        PrecisionReal::one(self.precision()).div(self)
    }

    /// Square root. Domain error when the whole interval is negative;
    /// an interval straddling zero is clamped at zero from below.
    pub fn sqrt(&self) -> Result<Self> {
        let bits = self.bits;
        if (self.num.magnitude() > &self.err) && self.num.is_negative() {
            return Err(Error::Domain("sqrt of a negative value".into()));
        }
        let hi = self.num.magnitude() + &self.err;
        let lo = if self.num.is_negative() {
            BigUint::zero()
        } else {
            let m = self.num.magnitude();
            if m > &self.err {
                m - &self.err
            } else {
                BigUint::zero()
            }
        };
        let rlo = (lo << bits as usize).sqrt();
        let rhi = (hi << bits as usize).sqrt() + 1u32;
        let num = BigInt::from_biguint(Sign::Plus, (&rlo + &rhi) >> 1);
        let err = ((rhi - rlo) >> 1) + 1u32;
        Ok(PrecisionReal { num, err, bits })
    }

    /// Integer power by binary exponentiation.
    pub fn powi(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = PrecisionReal::one(self.precision());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `n`-th root of a non-negative value.
    pub fn nth_root(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("0th root".into()));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        if n == 2 {
            return self.sqrt();
        }
        let bits = self.bits;
        if self.num.is_negative() && self.num.magnitude() > &self.err {
            return Err(Error::Domain("nth_root of a negative value".into()));
        }
        let hi = self.num.magnitude() + &self.err;
        let lo = if self.num.is_negative() {
            BigUint::zero()
        } else {
            let m = self.num.magnitude();
            if m > &self.err {
                m - &self.err
            } else {
                BigUint::zero()
            }
        };
        // (m 2^-S)^{1/n} = (m 2^{S(n-1)})^{1/n} 2^-S
        let shift = (bits as usize) * (n as usize - 1);
        let rlo = (lo << shift).nth_root(n);
        let rhi = (hi << shift).nth_root(n) + 1u32;
        let num = BigInt::from_biguint(Sign::Plus, (&rlo + &rhi) >> 1);
        let err = ((rhi - rlo) >> 1) + 1u32;
        Ok(PrecisionReal { num, err, bits })
    }

    /// Sign-definite comparison. Overlapping intervals raise an error rather
    /// than silently picking a side.
    pub fn cmp_definite(&self, other: &Self) -> Result<Ordering> {
        let (a, b) = self.align(other);
        let diff = &a.num - &b.num;
        let tot = BigInt::from_biguint(Sign::Plus, &a.err + &b.err);
        if diff > tot {
            Ok(Ordering::Greater)
        } else if -&diff > tot {
            Ok(Ordering::Less)
        } else if diff.is_zero() && tot.is_zero() {
            Ok(Ordering::Equal)
        } else {
            Err(Error::IndeterminateComparison(
                a.brief(),
                b.brief(),
            ))
        }
    }

    /// Compare against an exact rational.
    pub fn cmp_rational_definite(&self, r: &BigRational) -> Result<Ordering> {
        // num/2^S vs p/q  <=>  num*q vs p*2^S   (q > 0 normalized)
        let lhs = &self.num * r.denom();
        let rhs = r.numer() << self.bits as usize;
        let diff = lhs - rhs;
        let tot = BigInt::from_biguint(Sign::Plus, &self.err * r.denom().magnitude());
        if diff > tot {
            Ok(Ordering::Greater)
        } else if -&diff > tot {
            Ok(Ordering::Less)
        } else if diff.is_zero() && tot.is_zero() {
            Ok(Ordering::Equal)
        } else {
            Err(Error::IndeterminateComparison(self.brief(), format!("{r}")))
        }
    }

    fn brief(&self) -> String {
        format!("{} ± {:.3e}", self.to_decimal(12), self.err_to_f64())
    }
}

fn big_to_f64(num: &BigInt, bits: u32) -> f64 {
    // Avoid overflow on huge mantissas: take the top 64 bits and rescale.
    let nbits = num.magnitude().bits();
    if nbits <= 1000 {
        num.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(bits as i32))
    } else {
        let shift = nbits - 64;
        let top = num >> shift as usize;
        top.to_f64().unwrap_or(f64::NAN) * 2f64.powf(shift as f64 - bits as f64)
    }
}

impl fmt::Display for PrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

/// π at the working precision, correct to 2 ulps (Machin's formula).
pub fn pi(prec: Precision) -> PrecisionReal {
    let guard = 32u32;
    let bits = prec.bits + guard;
    // pi = 16 atan(1/5) - 4 atan(1/239)
    let a5 = atan_inv_int(5u32.into(), bits);
    let a239 = atan_inv_int(239u32.into(), bits);
    let v = (a5 << 4u32) - (a239 << 2u32);
    PrecisionReal {
        num: shr_round(&v, guard),
        err: BigUint::from(2u32),
        bits: prec.bits,
    }
}

/// atan(1/m) * 2^bits, floor-accurate to a few ulps (for internal use with
/// guard bits).
fn atan_inv_int(m: BigUint, bits: u32) -> BigInt {
    let m2 = BigInt::from_biguint(Sign::Plus, &m * &m);
    let m = BigInt::from_biguint(Sign::Plus, m);
    let mut power = div_round(&(BigInt::one() << bits as usize), &m); // 1/m
    let mut sum = BigInt::zero();
    let mut j: u32 = 0;
    loop {
        let term = div_round(&power, &BigInt::from(2 * j + 1));
        if term.is_zero() {
            break;
        }
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power = div_round(&power, &m2);
        j += 1;
    }
    sum
}

/// e^{-x} for x >= 0, with full error propagation.
///
/// Argument reduction by halving until the reduced argument is at most 1/2,
/// then an alternating Taylor sum whose tail is bounded by its first omitted
/// term, then repeated squaring.
pub fn exp_neg(x: &PrecisionReal) -> Result<PrecisionReal> {
    let bits = x.bits;
    if x.num.is_negative() && x.num.magnitude() > &x.err {
        return Err(Error::Domain("exp_neg expects a non-negative argument".into()));
    }
    // the derivative bound below needs e^{err} <= 2, so the argument's own
    // uncertainty must stay well under 1
    if x.err.bits() as u32 + 2 > bits {
        return Err(Error::Domain(
            "exp_neg argument uncertainty too large".into(),
        ));
    }
    let v = if x.num.is_negative() {
        BigInt::zero()
    } else {
        x.num.clone()
    };
    // halve until u <= 1/2, i.e. u_num < 2^(bits-1)
    let vbits = v.magnitude().bits() as u32;
    let k = vbits.saturating_sub(bits - 1);
    let u = shr_round(&v, k); // error <= 1/2 ulp
    // Taylor: sum_{i>=0} (-u)^i / i!
    let mut sum = BigInt::one() << bits as usize;
    let mut term = BigInt::one() << bits as usize;
    let mut i: u64 = 1;
    let mut err_acc = BigUint::from(2u32); // u rounding + slack
    loop {
        term = shr_round(&(&term * &u), bits);
        term = div_round(&term, &BigInt::from(i));
        err_acc += 3u32;
        if term.is_zero() {
            // tail bounded by the accumulated per-term uncertainty
            err_acc += 6u32;
            break;
        }
        if i % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        if term.magnitude() <= &BigUint::from(1u32) {
            // alternating tail bounded by |T_{i+1}| <= u (|t_i| + err_i)
            err_acc += 6u32;
            break;
        }
        i += 1;
        if i > 1_000_000 {
            return Err(Error::Domain("exp_neg series did not converge".into()));
        }
    }
    let mut y = PrecisionReal {
        num: sum,
        err: err_acc,
        bits,
    };
    for _ in 0..k {
        y = y.mul(&y.clone());
    }
    // input uncertainty: |d e^{-x}/dx| <= e^{-(x - ex)} <= 2 for any
    // plausible ex, and <= 1 once x - ex >= 0
    y.err += &x.err * 2u32;
    Ok(y)
}
