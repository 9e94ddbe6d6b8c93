//! Exact rational theta-series ratio polynomials, their decomposition in
//! the h(t)-basis, and numerical ratio/theta evaluation for lattice inputs.
//!
//! For a self-dual code C the ratio is the polynomial
//! f_C(t)/2^k = 2^{-k} Σ_{w'} A_{2w'} (1+t)^{k-w'} (1-t)^{w'}, and it always
//! lies in the span of {h^0, .., h^l} with h(t) = t⁴ - t² + 1 and
//! l = ⌊n/8⌋. The decomposition is solved exactly by fraction-free Gaussian
//! elimination on the even-coefficient space.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::codes::WeightDistribution;
use crate::ensemble::{ensemble_ratio, EnsembleSpec};
use crate::error::{Error, Result};
use crate::numerics::{
    h_eval_real, t_of_tau, theta2, theta3, Precision, PrecisionReal, ThetaArgument,
};
use crate::poly::RatPoly;

/// A normalized ratio polynomial in t on [0,1]: value 1 at both endpoints.
/// When `h_coeffs` is present, Σ_r h_coeffs[r] · h(t)^r reproduces
/// `coeffs_t` exactly and the coefficients sum to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioPolynomial {
    coeffs_t: Vec<BigRational>,
    n: usize,
    k: usize,
    h_coeffs: Option<Vec<BigRational>>,
}

impl RatioPolynomial {
    /// Wrap raw coefficients (ascending powers of t). Endpoint values must
    /// be exactly 1.
    pub fn new(coeffs_t: Vec<BigRational>, n: usize) -> Result<Self> {
        let p = RatPoly::new(coeffs_t);
        let at0 = p.eval(&BigRational::zero());
        let at1 = p.eval(&BigRational::one());
        if !at0.is_one() || !at1.is_one() {
            return Err(Error::Domain(format!(
                "ratio polynomial must equal 1 at t = 0 and t = 1, got {at0} and {at1}"
            )));
        }
        Ok(RatioPolynomial {
            coeffs_t: p.coeffs().to_vec(),
            n,
            k: n / 2,
            h_coeffs: None,
        })
    }

    /// Build directly from h-basis coefficients a_0..a_l (must sum to 1).
    pub fn from_h_coeffs(h_coeffs: Vec<BigRational>, n: usize) -> Result<Self> {
        let sum: BigRational = h_coeffs.iter().sum();
        if !sum.is_one() {
            return Err(Error::Domain(format!(
                "h-basis coefficients must sum to 1, got {sum}"
            )));
        }
        let h = h_poly();
        let mut acc = RatPoly::zero();
        let mut hp = RatPoly::one();
        for a in &h_coeffs {
            acc = acc.add(&hp.scale(a));
            hp = hp.mul(&h);
        }
        Ok(RatioPolynomial {
            coeffs_t: acc.coeffs().to_vec(),
            n,
            k: n / 2,
            h_coeffs: Some(h_coeffs),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// ⌊n/8⌋, the h-basis degree bound.
    pub fn ell(&self) -> usize {
        self.n / 8
    }

    pub fn coeffs_t(&self) -> &[BigRational] {
        &self.coeffs_t
    }

    pub fn h_coeffs(&self) -> Option<&[BigRational]> {
        self.h_coeffs.as_deref()
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        RatPoly::new(self.coeffs_t.clone()).eval(t)
    }

    pub fn eval_real(&self, t: &PrecisionReal) -> PrecisionReal {
        horner(&self.coeffs_t, t)
    }
}

fn horner(coeffs: &[BigRational], x: &PrecisionReal) -> PrecisionReal {
    let prec = x.precision();
    let mut acc = PrecisionReal::zero(prec);
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(&PrecisionReal::from_rational(c, prec));
    }
    acc
}

/// h(t) = 1 - t² + t⁴ as a polynomial.
pub(crate) fn h_poly() -> RatPoly {
    RatPoly::new(
        [1i64, 0, -1, 0, 1]
            .iter()
            .map(|&c| BigRational::from(BigInt::from(c)))
            .collect(),
    )
}

/// Ratio polynomial f_C(t)/2^k of a Construction A lattice from a self-dual
/// weight distribution.
pub fn ratio_poly_from_code(dist: &WeightDistribution) -> Result<RatioPolynomial> {
    if let Some(w) = (0..=dist.n()).find(|&w| w % 2 == 1 && !dist.count(w).is_zero()) {
        return Err(Error::OddWeightPresent { w });
    }
    dist.check_self_dual_consistent()?;
    let n = dist.n();
    let k = n / 2;
    let one_plus = RatPoly::new(vec![BigRational::one(), BigRational::one()]);
    let one_minus = RatPoly::new(vec![BigRational::one(), -BigRational::one()]);

    let mut plus_pows = Vec::with_capacity(k + 1);
    let mut minus_pows = Vec::with_capacity(k + 1);
    plus_pows.push(RatPoly::one());
    minus_pows.push(RatPoly::one());
    for i in 1..=k {
        plus_pows.push(plus_pows[i - 1].mul(&one_plus));
        minus_pows.push(minus_pows[i - 1].mul(&one_minus));
    }

    let mut acc = RatPoly::zero();
    for wp in 0..=k {
        let a = dist.count(2 * wp);
        if a.is_zero() {
            continue;
        }
        let coeff = BigRational::from(BigInt::from_biguint(Sign::Plus, a.clone()));
        acc = acc.add(&plus_pows[k - wp].mul(&minus_pows[wp]).scale(&coeff));
    }
    let scale = BigRational::new(BigInt::one(), BigInt::one() << k);
    RatioPolynomial::new(acc.scale(&scale).coeffs().to_vec(), n)
}

/// Exact h-basis decomposition by fraction-free (Bareiss) elimination on the
/// (2l+1)-dimensional even-coefficient space.
///
/// Fails with [`Error::NotInSpan`] when the polynomial has odd powers,
/// degree above 4l, or the triangular system is inconsistent — all signals
/// of a non-self-dual input.
pub fn decompose_h_basis(poly: &RatioPolynomial) -> Result<RatioPolynomial> {
    let ell = poly.ell();
    let coeffs = &poly.coeffs_t;
    if coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
        return Err(Error::NotInSpan { l: ell });
    }
    if coeffs.len() > 4 * ell + 1 {
        return Err(Error::NotInSpan { l: ell });
    }
    // even-coefficient vector c_j = coefficient of t^{2j}, j = 0..2l
    let rows = 2 * ell + 1;
    let mut target = vec![BigRational::zero(); rows];
    for (j, t) in target.iter_mut().enumerate() {
        if 2 * j < coeffs.len() {
            *t = coeffs[2 * j].clone();
        }
    }
    // In u = t²: h = u² - u + 1; basis columns are coefficients of ĥ^r.
    let hu = RatPoly::new(
        [1i64, -1, 1]
            .iter()
            .map(|&c| BigRational::from(BigInt::from(c)))
            .collect(),
    );
    let mut cols = Vec::with_capacity(ell + 1);
    let mut hp = RatPoly::one();
    for _ in 0..=ell {
        cols.push(hp.clone());
        hp = hp.mul(&hu);
    }

    // clear denominators of the target for integer elimination
    let mut denom_lcm = BigInt::one();
    for t in &target {
        denom_lcm = num_integer::Integer::lcm(&denom_lcm, t.denom());
    }
    let ncols = ell + 2;
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
    for (j, t) in target.iter().enumerate() {
        let mut row: Vec<BigInt> = (0..=ell)
            .map(|r| {
                let c = cols[r].coeff(j);
                debug_assert!(c.denom().is_one());
                c.numer().clone()
            })
            .collect();
        row.push(t.numer() * (&denom_lcm / t.denom()));
        m.push(row);
    }

    // Bareiss fraction-free elimination with row pivoting
    let mut prev = BigInt::one();
    let mut rank_rows = 0usize;
    for col in 0..=ell {
        let Some(pivot) = (rank_rows..rows).find(|&r| !m[r][col].is_zero()) else {
            return Err(Error::NotInSpan { l: ell });
        };
        m.swap(rank_rows, pivot);
        for r in 0..rows {
            if r == rank_rows {
                continue;
            }
            for c in 0..ncols {
                if c == col {
                    continue;
                }
                let val = &m[rank_rows][col] * &m[r][c] - &m[r][col] * &m[rank_rows][c];
                m[r][c] = &val / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank_rows][col].clone();
        rank_rows += 1;
    }
    // consistency: eliminated rows must carry a zero right-hand side
    for row in m.iter().skip(rank_rows) {
        if !row[ncols - 1].is_zero() {
            return Err(Error::NotInSpan { l: ell });
        }
    }
    let lcm_rat = BigRational::from(denom_lcm);
    let mut a = Vec::with_capacity(ell + 1);
    for (r, row) in m.iter().enumerate().take(ell + 1) {
        let v = BigRational::new(row[ncols - 1].clone(), row[r].clone()) / &lcm_rat;
        a.push(v);
    }

    // exact round trip (also enforces Σ a_r = 1 via the endpoint value)
    let rebuilt = RatioPolynomial::from_h_coeffs(a.clone(), poly.n)?;
    if rebuilt.coeffs_t != poly.coeffs_t {
        return Err(Error::NotInSpan { l: ell });
    }
    Ok(RatioPolynomial {
        coeffs_t: poly.coeffs_t.clone(),
        n: poly.n,
        k: poly.k,
        h_coeffs: Some(a),
    })
}

/// Lattice inputs accepted by the evaluators.
#[derive(Debug, Clone)]
pub enum LatticeSpec {
    /// ℤⁿ.
    IntegerLattice { n: usize },
    /// Construction A from a self-dual weight distribution (unimodular).
    ConstructionA { dist: WeightDistribution },
    /// A unimodular lattice given directly by its h-basis coefficients.
    ExplicitHCoeffs { n: usize, coeffs: Vec<BigRational> },
    /// Scaled Construction A: C + 2ℤⁿ from any [n,k] code.
    ScaledConstructionA { dist: WeightDistribution, k: usize },
    /// The average Construction A lattice of a random self-dual code.
    Ensemble(EnsembleSpec),
}

impl LatticeSpec {
    pub fn integer(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("dimension must be positive".into()));
        }
        Ok(LatticeSpec::IntegerLattice { n })
    }

    pub fn construction_a(dist: WeightDistribution) -> Result<Self> {
        dist.check_self_dual_consistent()?;
        Ok(LatticeSpec::ConstructionA { dist })
    }

    pub fn explicit_h(coeffs: Vec<BigRational>, n: usize) -> Result<Self> {
        let sum: BigRational = coeffs.iter().sum();
        if !sum.is_one() {
            return Err(Error::Domain(format!(
                "h-basis coefficients must sum to 1, got {sum}"
            )));
        }
        Ok(LatticeSpec::ExplicitHCoeffs { n, coeffs })
    }

    pub fn scaled_construction_a(dist: WeightDistribution) -> Result<Self> {
        let k = dist
            .dimension()
            .ok_or_else(|| Error::Domain("count total is not a power of two".into()))?;
        Ok(LatticeSpec::ScaledConstructionA { dist, k })
    }

    pub fn ensemble(n: usize) -> Result<Self> {
        Ok(LatticeSpec::Ensemble(EnsembleSpec::new(n)?))
    }

    pub fn n(&self) -> usize {
        match self {
            LatticeSpec::IntegerLattice { n } => *n,
            LatticeSpec::ConstructionA { dist } => dist.n(),
            LatticeSpec::ExplicitHCoeffs { n, .. } => *n,
            LatticeSpec::ScaledConstructionA { dist, .. } => dist.n(),
            LatticeSpec::Ensemble(spec) => spec.n(),
        }
    }

    /// Lattice volume: 1 for the unimodular variants, 2^{n-k} for the
    /// scaled Construction A lattice C + 2ℤⁿ.
    pub fn volume(&self) -> BigRational {
        match self {
            LatticeSpec::ScaledConstructionA { dist, k } => {
                BigRational::from(BigInt::one() << (dist.n() - k))
            }
            _ => BigRational::one(),
        }
    }
}

/// Precomputed evaluator for Δ_Λ(τ); builds the exact polynomial once so
/// solvers can sweep τ cheaply.
#[derive(Debug, Clone)]
pub struct RatioEvaluator {
    spec: LatticeSpec,
    poly: Option<RatioPolynomial>,
}

impl RatioEvaluator {
    pub fn new(spec: &LatticeSpec) -> Result<Self> {
        let poly = match spec {
            LatticeSpec::ConstructionA { dist } => Some(ratio_poly_from_code(dist)?),
            LatticeSpec::ExplicitHCoeffs { n, coeffs } => {
                Some(RatioPolynomial::from_h_coeffs(coeffs.clone(), *n)?)
            }
            _ => None,
        };
        Ok(RatioEvaluator {
            spec: spec.clone(),
            poly,
        })
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    /// Δ_Λ(τ) with error at most `tol`.
    pub fn eval(
        &self,
        tau: &BigRational,
        tol: &BigRational,
        prec: Precision,
    ) -> Result<PrecisionReal> {
        if !tau.is_positive() {
            return Err(Error::Domain(format!("tau must be positive, got {tau}")));
        }
        match &self.spec {
            // exact 1 without evaluation: no spurious interval width
            LatticeSpec::IntegerLattice { .. } => Ok(PrecisionReal::one(prec)),
            LatticeSpec::ConstructionA { .. } => {
                let poly = self.poly.as_ref().expect("built in constructor");
                let t = t_of_tau(tau, &(tol / BigRational::from(BigInt::from(8))), prec)?;
                Ok(poly.eval_real(&t))
            }
            LatticeSpec::ExplicitHCoeffs { coeffs, .. } => {
                let t = t_of_tau(tau, &(tol / BigRational::from(BigInt::from(8))), prec)?;
                let h = h_eval_real(&t);
                Ok(horner(coeffs, &h))
            }
            LatticeSpec::ScaledConstructionA { dist, k } => {
                Ok(scaled_ratio_eval(dist, *k, tau, tol, prec)?.value)
            }
            LatticeSpec::Ensemble(spec) => {
                let t = t_of_tau(tau, &(tol / BigRational::from(BigInt::from(8))), prec)?;
                ensemble_ratio(spec, &t, tol, prec)
            }
        }
    }
}

/// Δ_Λ(τ) for any lattice spec (one-shot convenience wrapper).
pub fn ratio_eval(
    spec: &LatticeSpec,
    tau: &BigRational,
    tol: &BigRational,
    prec: Precision,
) -> Result<PrecisionReal> {
    RatioEvaluator::new(spec)?.eval(tau, tol, prec)
}

/// Result of a scaled-ratio evaluation with its sandwich-bound checks.
/// `lower_separated`/`upper_separated` report whether the value interval is
/// strictly inside (2^{-(n-k)}, 1); `false` flags an indeterminate
/// (touching) comparison, never a certified violation — that is an error.
#[derive(Debug, Clone)]
pub struct ScaledRatioValue {
    pub value: PrecisionReal,
    pub lower_separated: bool,
    pub upper_separated: bool,
}

/// Theta-series ratio of the scaled Construction A integral lattice
/// C + 2ℤⁿ: W_C(1+s(τ), 1-s(τ)) / 2ⁿ, guaranteed inside [2^{-(n-k)}, 1].
pub fn scaled_ratio_eval(
    dist: &WeightDistribution,
    k: usize,
    tau: &BigRational,
    tol: &BigRational,
    prec: Precision,
) -> Result<ScaledRatioValue> {
    if !tau.is_positive() {
        return Err(Error::Domain(format!("tau must be positive, got {tau}")));
    }
    if dist.dimension() != Some(k) {
        return Err(Error::Domain(format!("distribution total is not 2^{k}")));
    }
    let n = dist.n();
    let s = crate::numerics::s_of_tau(tau, &(tol / BigRational::from(BigInt::from(8))), prec)?;
    let one = PrecisionReal::one(prec);
    let xp = one.add(&s);
    let xm = one.sub(&s);
    let value = eval_enumerator(dist, &xp, &xm).mul_rational(&BigRational::new(
        BigInt::one(),
        BigInt::one() << n,
    ));
    let lower = BigRational::new(BigInt::one(), BigInt::one() << (n - k));
    let upper = BigRational::one();
    let lower_separated = match value.cmp_rational_definite(&lower) {
        Ok(std::cmp::Ordering::Greater) => true,
        Ok(_) => {
            return Err(Error::Domain(
                "scaled ratio certified below its lower bound".into(),
            ))
        }
        Err(_) => false,
    };
    let upper_separated = match value.cmp_rational_definite(&upper) {
        Ok(std::cmp::Ordering::Less) => true,
        Ok(_) => {
            return Err(Error::Domain(
                "scaled ratio certified above its upper bound".into(),
            ))
        }
        Err(_) => false,
    };
    Ok(ScaledRatioValue {
        value,
        lower_separated,
        upper_separated,
    })
}

/// W_C(x, y) = Σ_w A_w x^{n-w} y^w on balls, with exact integer counts.
fn eval_enumerator(
    dist: &WeightDistribution,
    x: &PrecisionReal,
    y: &PrecisionReal,
) -> PrecisionReal {
    let n = dist.n();
    let prec = x.precision();
    let mut xp = Vec::with_capacity(n + 1);
    let mut yp = Vec::with_capacity(n + 1);
    xp.push(PrecisionReal::one(prec));
    yp.push(PrecisionReal::one(prec));
    for i in 1..=n {
        xp.push(xp[i - 1].mul(x));
        yp.push(yp[i - 1].mul(y));
    }
    let mut acc = PrecisionReal::zero(prec);
    for w in 0..=n {
        let a = dist.count(w);
        if a.is_zero() {
            continue;
        }
        let c = BigInt::from_biguint(Sign::Plus, a.clone());
        acc = acc.add(&xp[n - w].mul(&yp[w]).mul_int(&c));
    }
    acc
}

/// Θ_Λ(iτ) with error at most `tol`.
///
/// ℤⁿ is ϑ₃ⁿ(iτ); Construction A evaluates W_C(ϑ₃(2iτ), ϑ₂(2iτ)); the
/// scaled lattice evaluates the enumerator at 4iτ.
pub fn theta_eval(
    spec: &LatticeSpec,
    tau: &BigRational,
    tol: &BigRational,
    prec: Precision,
) -> Result<PrecisionReal> {
    if !tau.is_positive() {
        return Err(Error::Domain(format!("tau must be positive, got {tau}")));
    }
    let inner = tol / BigRational::from(BigInt::from(16));
    match spec {
        LatticeSpec::IntegerLattice { n } => {
            let t3 = theta3(&ThetaArgument::new(tau.clone())?, &inner, prec)?;
            Ok(t3.powi(*n as u64))
        }
        LatticeSpec::ConstructionA { dist } => {
            let arg = ThetaArgument::new(tau * BigRational::from(BigInt::from(2)))?;
            let x = theta3(&arg, &inner, prec)?;
            let y = theta2(&arg, &inner, prec)?;
            Ok(eval_enumerator(dist, &x, &y))
        }
        LatticeSpec::ScaledConstructionA { dist, .. } => {
            let arg = ThetaArgument::new(tau * BigRational::from(BigInt::from(4)))?;
            let x = theta3(&arg, &inner, prec)?;
            let y = theta2(&arg, &inner, prec)?;
            Ok(eval_enumerator(dist, &x, &y))
        }
        LatticeSpec::ExplicitHCoeffs { n, .. } => {
            let t3 = theta3(&ThetaArgument::new(tau.clone())?, &inner, prec)?;
            let ratio = RatioEvaluator::new(spec)?.eval(tau, &inner, prec)?;
            Ok(t3.powi(*n as u64).mul(&ratio))
        }
        LatticeSpec::Ensemble(espec) => {
            let t3 = theta3(&ThetaArgument::new(tau.clone())?, &inner, prec)?;
            let ratio = RatioEvaluator::new(spec)?.eval(tau, &inner, prec)?;
            Ok(t3.powi(espec.n() as u64).mul(&ratio))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{
        builtin_catalog, extended_hamming8, golay24, ub_distribution, weight_distribution,
    };
    use crate::util::pow10_neg;
    use std::cmp::Ordering;

    fn prec() -> Precision {
        Precision::default()
    }

    fn tol() -> BigRational {
        pow10_neg(30)
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn ub_distribution_gives_constant_one() {
        let p = ratio_poly_from_code(&ub_distribution(16).unwrap()).unwrap();
        assert_eq!(p.coeffs_t(), &[BigRational::one()]);
        // a_0 = 1, rest 0 (l = 2 for n = 16)
        let d = decompose_h_basis(&p).unwrap();
        assert_eq!(
            d.h_coeffs().unwrap(),
            &[BigRational::one(), BigRational::zero(), BigRational::zero()]
        );
    }

    #[test]
    fn repetition_code_gives_constant_one() {
        let dist = weight_distribution(&crate::codes::repetition2()).unwrap();
        let p = ratio_poly_from_code(&dist).unwrap();
        assert_eq!(p.coeffs_t(), &[BigRational::one()]);
    }

    #[test]
    fn hamming_ratio_is_h() {
        let dist = weight_distribution(&extended_hamming8()).unwrap();
        let p = ratio_poly_from_code(&dist).unwrap();
        // f/2^4 = 1 - t² + t⁴ = h(t)
        assert_eq!(p.coeffs_t(), h_poly().coeffs());
        let d = decompose_h_basis(&p).unwrap();
        assert_eq!(
            d.h_coeffs().unwrap(),
            &[BigRational::zero(), BigRational::one()]
        );
    }

    #[test]
    fn example_32_16_8_decomposition() {
        let cat = builtin_catalog();
        let cs32 = cat.iter().find(|e| e.name == "cs32").unwrap();
        let p = ratio_poly_from_code(&cs32.distribution).unwrap();
        let d = decompose_h_basis(&p).unwrap();
        // (a_4, a_3, a_2, a_1, a_0) = (0, 1/2, 1, 1/2, -1)
        let expected = [rat(-1, 1), rat(1, 2), rat(1, 1), rat(1, 2), rat(0, 1)];
        assert_eq!(d.h_coeffs().unwrap(), &expected);
    }

    #[test]
    fn golay_decomposition_roundtrips() {
        let dist = weight_distribution(&golay24()).unwrap();
        let p = ratio_poly_from_code(&dist).unwrap();
        assert_eq!(p.coeffs_t().len() - 1, 12); // degree 12 in t
        let d = decompose_h_basis(&p).unwrap();
        let a = d.h_coeffs().unwrap();
        assert_eq!(a.len(), 4);
        // frozen exact values: (a_0..a_3) = (-21/8, 21/4, -21/8, 1)
        assert_eq!(a, &[rat(-21, 8), rat(21, 4), rat(-21, 8), rat(1, 1)]);
        let sum: BigRational = a.iter().sum();
        assert!(sum.is_one());
        let rebuilt = RatioPolynomial::from_h_coeffs(a.to_vec(), 24).unwrap();
        assert_eq!(rebuilt.coeffs_t(), p.coeffs_t());
    }

    #[test]
    fn decompose_rejects_out_of_span() {
        // odd power present: 1 - t + t⁴ has value 1 at both endpoints
        let bad = RatioPolynomial::new(
            vec![
                BigRational::one(),
                -BigRational::one(),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::one(),
            ],
            32,
        )
        .unwrap();
        assert!(matches!(decompose_h_basis(&bad), Err(Error::NotInSpan { .. })));
        // degree 6 beyond 4l = 4 for n = 8: 1 - 2t² + t⁴ + t⁶ is 1 at both ends
        let bad2 = RatioPolynomial::new(
            vec![
                rat(1, 1),
                rat(0, 1),
                rat(-2, 1),
                rat(0, 1),
                rat(1, 1),
                rat(0, 1),
                rat(1, 1),
            ],
            8,
        )
        .unwrap();
        assert!(matches!(decompose_h_basis(&bad2), Err(Error::NotInSpan { l: 1 })));
    }

    #[test]
    fn integer_lattice_ratio_is_exact_one() {
        let spec = LatticeSpec::integer(24).unwrap();
        let v = ratio_eval(&spec, &rat(7, 5), &tol(), prec()).unwrap();
        assert!(v.is_exact());
        assert_eq!(v.value_rational(), BigRational::one());
    }

    #[test]
    fn golay_ratio_matches_direct_theta_quotient() {
        // two independent evaluation paths must agree within 10·tol
        let dist = weight_distribution(&golay24()).unwrap();
        let spec = LatticeSpec::construction_a(dist).unwrap();
        let bound = tol() * BigRational::from(BigInt::from(10));
        for tau in [rat(3, 10), rat(1, 2), rat(1, 1), rat(2, 1), rat(3, 1)] {
            let via_poly = ratio_eval(&spec, &tau, &tol(), prec()).unwrap();
            let theta = theta_eval(&spec, &tau, &tol(), prec()).unwrap();
            let zn = theta_eval(&LatticeSpec::integer(24).unwrap(), &tau, &tol(), prec()).unwrap();
            let via_theta = theta.div(&zn).unwrap();
            let diff = (via_poly.value_rational() - via_theta.value_rational()).abs();
            assert!(
                diff <= via_poly.err_bound() + via_theta.err_bound() + &bound,
                "paths disagree at tau = {tau}"
            );
        }
    }

    #[test]
    fn explicit_h_coeffs_example_value_at_one() {
        // Σ a_r (3/4)^r = -1 + 3/8 + 9/16 + 27/128 = 19/128 at τ = 1
        let coeffs = vec![rat(-1, 1), rat(1, 2), rat(1, 1), rat(1, 2), rat(0, 1)];
        let spec = LatticeSpec::explicit_h(coeffs, 32).unwrap();
        let v = ratio_eval(&spec, &rat(1, 1), &tol(), prec()).unwrap();
        let expected = rat(19, 128);
        let diff = (v.value_rational() - expected).abs();
        assert!(diff <= v.err_bound() + pow10_neg(28));
    }

    #[test]
    fn scaled_ratio_limits_and_bounds() {
        let dist = weight_distribution(&extended_hamming8()).unwrap();
        // τ -> ∞: ratio -> 1; τ -> 0: ratio -> 2^{-(n-k)}
        let near_one = scaled_ratio_eval(&dist, 4, &rat(50, 1), &tol(), prec()).unwrap();
        let diff = (near_one.value.value_rational() - BigRational::one()).abs();
        assert!(diff < pow10_neg(10));
        let near_floor = scaled_ratio_eval(&dist, 4, &rat(1, 100), &tol(), prec()).unwrap();
        let diff = (near_floor.value.value_rational() - rat(1, 16)).abs();
        assert!(diff < pow10_neg(10));
        // at τ = 1 the value is strictly inside (2^-4, 1)
        let mid = scaled_ratio_eval(&dist, 4, &rat(1, 1), &tol(), prec()).unwrap();
        assert!(mid.lower_separated && mid.upper_separated);
        // and matches the direct theta-quotient evaluation
        let spec = LatticeSpec::scaled_construction_a(dist).unwrap();
        let theta = theta_eval(&spec, &rat(1, 1), &tol(), prec()).unwrap();
        let zn = theta_eval(&LatticeSpec::integer(8).unwrap(), &rat(1, 1), &tol(), prec()).unwrap();
        let via_theta = theta.div(&zn).unwrap();
        let diff = (mid.value.value_rational() - via_theta.value_rational()).abs();
        assert!(diff <= mid.value.err_bound() + via_theta.err_bound() + pow10_neg(28));
    }

    #[test]
    fn theta_eval_z1_at_one() {
        let spec = LatticeSpec::integer(1).unwrap();
        let v = theta_eval(&spec, &rat(1, 1), &tol(), prec()).unwrap();
        assert!(v.to_decimal(5).starts_with("1.08643"));
    }

    #[test]
    fn theta_eval_large_tau_tends_to_one() {
        let dist = weight_distribution(&golay24()).unwrap();
        let spec = LatticeSpec::construction_a(dist).unwrap();
        let v = theta_eval(&spec, &rat(60, 1), &tol(), prec()).unwrap();
        let diff = (v.value_rational() - BigRational::one()).abs();
        assert!(diff < pow10_neg(20));
    }

    #[test]
    fn jacobi_self_duality_for_golay_lattice() {
        // Θ(iτ) = τ^{-n/2} Θ(i/τ) for the unimodular Golay lattice
        let dist = weight_distribution(&golay24()).unwrap();
        let spec = LatticeSpec::construction_a(dist).unwrap();
        let bound = tol() * BigRational::from(BigInt::from(10));
        for tau in [rat(1, 2), rat(1, 1), rat(5, 4), rat(3, 1)] {
            let lhs = theta_eval(&spec, &tau, &tol(), prec()).unwrap();
            let inv = tau.recip();
            let rhs = theta_eval(&spec, &inv, &tol(), prec()).unwrap();
            // τ^{-n/2} = (1/τ)^{12} exactly
            let factor = PrecisionReal::from_rational(&inv.pow(12), prec());
            let rhs = factor.mul(&rhs);
            let diff = (lhs.value_rational() - rhs.value_rational()).abs();
            assert!(
                diff <= lhs.err_bound() + rhs.err_bound() + &bound,
                "Jacobi symmetry failed at tau = {tau}"
            );
        }
    }

    #[test]
    fn endpoint_normalization_for_all_builtin_codes() {
        for entry in builtin_catalog() {
            let p = ratio_poly_from_code(&entry.distribution).unwrap();
            assert!(p.eval(&BigRational::zero()).is_one(), "{}", entry.name);
            assert!(p.eval(&BigRational::one()).is_one(), "{}", entry.name);
        }
    }

    #[test]
    fn ratio_stays_below_one_for_golay() {
        let dist = weight_distribution(&golay24()).unwrap();
        let spec = LatticeSpec::construction_a(dist).unwrap();
        let ev = RatioEvaluator::new(&spec).unwrap();
        for tau in [rat(1, 10), rat(1, 1), rat(10, 1)] {
            let v = ev.eval(&tau, &tol(), prec()).unwrap();
            let cmp = v.cmp_rational_definite(&rat(101, 100)).unwrap();
            assert_eq!(cmp, Ordering::Less);
        }
    }
}
