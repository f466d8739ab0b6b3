//! Gamma-family functions and terminating hypergeometric series.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

/// Field elements the series code is generic over: `f64` for production,
/// `BigRational` for exact checks.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// `Some(k)` when the value equals `-k` for a nonnegative integer `k`.
    fn nonpositive_integer(&self) -> Option<u64>;

    /// Sum with compensation where rounding exists.
    fn sum_all<I: IntoIterator<Item = Self>>(terms: I) -> Self;

    fn magnitude(&self) -> f64;
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn nonpositive_integer(&self) -> Option<u64> {
        if *self <= 0.0 && self.fract() == 0.0 && self.is_finite() {
            Some((-*self) as u64)
        } else {
            None
        }
    }

    fn sum_all<I: IntoIterator<Item = Self>>(terms: I) -> Self {
        compensated_sum(terms)
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn nonpositive_integer(&self) -> Option<u64> {
        if self.is_integer() && !self.is_positive() {
            (-self.to_integer()).to_u64()
        } else {
            None
        }
    }

    fn sum_all<I: IntoIterator<Item = Self>>(terms: I) -> Self {
        terms.into_iter().fold(BigRational::zero(), |acc, t| acc + t)
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Shorthand for the rational `num/den`.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational image of a binary64 value.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::Domain(format!("{x} is not finite")))
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    correction: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.correction += (self.sum - t) + x;
        } else {
            self.correction += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.correction
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut acc = NeumaierSum::new();
    for t in terms {
        acc.add(t);
    }
    acc.value()
}

/// Rising factorial `(a)_n`.
pub fn pochhammer<T: Scalar>(a: &T, n: u64) -> T {
    let mut acc = T::one();
    let mut x = a.clone();
    for _ in 0..n {
        if x.is_zero() {
            return T::zero();
        }
        acc = acc * x.clone();
        x = x + T::one();
    }
    acc
}

pub fn factorial<T: Scalar>(n: u64) -> T {
    pochhammer(&T::one(), n)
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return domain(format!("ln_gamma needs x > 0, got {x}"));
    }
    Ok(libm::lgamma(x))
}

/// `Γ(x)`; infinite at the poles.
pub fn gamma(x: f64) -> f64 {
    if x.nonpositive_integer().is_some() {
        return f64::INFINITY;
    }
    if x > 171.0 {
        return f64::INFINITY;
    }
    libm::tgamma(x)
}

/// `1/Γ(x)`, zero at the poles.
pub fn recip_gamma(x: f64) -> f64 {
    if x.nonpositive_integer().is_some() {
        return 0.0;
    }
    if x > 170.0 {
        return (-libm::lgamma(x)).exp();
    }
    1.0 / libm::tgamma(x)
}

/// `Γ(a)/Γ(b)`. Integer differences go through a Pochhammer product, so
/// negative and pole arguments are fine as long as the ratio is finite.
pub fn gamma_ratio(a: f64, b: f64) -> f64 {
    let d = a - b;
    if d.fract() == 0.0 && d.abs() < 1e6 {
        if d >= 0.0 {
            pochhammer(&b, d as u64)
        } else {
            1.0 / pochhammer(&a, (-d) as u64)
        }
    } else {
        if a.nonpositive_integer().is_some() {
            return f64::INFINITY;
        }
        if b.nonpositive_integer().is_some() {
            return 0.0;
        }
        let (la, sa) = libm::lgamma_r(a);
        let (lb, sb) = libm::lgamma_r(b);
        (sa * sb) as f64 * (la - lb).exp()
    }
}

/// Parameters of `pFq(a_1..a_p; b_1..b_q; z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypSeriesSpec<T = f64> {
    pub numerator_params: Vec<T>,
    pub denominator_params: Vec<T>,
    pub argument: T,
}

impl<T: Scalar> HypSeriesSpec<T> {
    pub fn new(numerator_params: Vec<T>, denominator_params: Vec<T>, argument: T) -> Self {
        Self {
            numerator_params,
            denominator_params,
            argument,
        }
    }

    /// `pFq` at unit argument.
    pub fn unit(numerator_params: Vec<T>, denominator_params: Vec<T>) -> Self {
        Self::new(numerator_params, denominator_params, T::one())
    }

    /// Index of the last nonzero term.
    pub fn termination_index(&self) -> Option<u64> {
        self.numerator_params
            .iter()
            .filter_map(Scalar::nonpositive_integer)
            .min()
    }

    /// Terms `0..=N` of a terminating series.
    pub fn terms(&self) -> Result<Vec<T>> {
        let last = self
            .termination_index()
            .ok_or_else(|| Error::Domain("series does not terminate".into()))?;
        let mut out = Vec::with_capacity(last as usize + 1);
        let mut term = T::one();
        out.push(term.clone());
        for k in 0..last {
            let kk = T::from_i64(k as i64);
            let mut num = self.argument.clone();
            for a in &self.numerator_params {
                num = num * (a.clone() + kk.clone());
            }
            let mut den = T::from_i64(k as i64 + 1);
            for (j, b) in self.denominator_params.iter().enumerate() {
                let f = b.clone() + kk.clone();
                if f.is_zero() {
                    return Err(Error::DenominatorZero { param: j, index: k + 1 });
                }
                den = den * f;
            }
            term = term * num / den;
            out.push(term.clone());
        }
        Ok(out)
    }

    pub fn sum(&self) -> Result<T> {
        Ok(T::sum_all(self.terms()?))
    }

    /// Sum together with the largest term magnitude, for cancellation checks.
    pub fn sum_with_scale(&self) -> Result<(T, f64)> {
        let terms = self.terms()?;
        let scale = terms.iter().map(Scalar::magnitude).fold(0.0, f64::max);
        Ok((T::sum_all(terms), scale))
    }
}

pub fn hyp_terminating(spec: &HypSeriesSpec<f64>) -> Result<f64> {
    spec.sum()
}

pub fn hyp_terminating_exact(spec: &HypSeriesSpec<BigRational>) -> Result<BigRational> {
    spec.sum()
}

/// Gauss's sum `2F1(a, b; c; 1)`.
pub fn gauss_2f1_unit(a: f64, b: f64, c: f64) -> Result<f64> {
    if a.nonpositive_integer().is_some() || b.nonpositive_integer().is_some() {
        return HypSeriesSpec::unit(vec![a, b], vec![c]).sum();
    }
    if c.nonpositive_integer().is_some() {
        return domain(format!("2F1(1) with c = {c} a nonpositive integer"));
    }
    if !(c - a - b > 0.0) {
        return domain(format!("2F1(1) diverges: c - a - b = {} <= 0", c - a - b));
    }
    Ok(gamma(c) * gamma(c - a - b) * recip_gamma(c - a) * recip_gamma(c - b))
}

/// Thomae's relation for a terminating `3F2(-n, a, b; c, d; 1)`: the
/// prefactor `(d-b)_n/(d)_n` and the series `3F2(-n, c-a, b; c, b-d-n+1; 1)`.
pub fn thomae_image<T: Scalar>(
    n: u64,
    a: T,
    b: T,
    c: T,
    d: T,
) -> Result<(T, HypSeriesSpec<T>)> {
    let den = pochhammer(&d, n);
    if den.is_zero() {
        return domain("Thomae image needs (d)_n != 0");
    }
    let pref = pochhammer(&(d.clone() - b.clone()), n) / den;
    let nn = T::from_i64(n as i64);
    let image = HypSeriesSpec::unit(
        vec![-nn.clone(), c.clone() - a, b.clone()],
        vec![c, b - d - nn + T::one()],
    );
    Ok((pref, image))
}

const INC_GAMMA_EPS: f64 = 1e-16;
const INC_GAMMA_MAX_ITER: usize = 100_000;

/// `Γ(α, z) = ∫_z^∞ e^{-x} x^{α-1} dx`.
pub fn inc_gamma_upper(alpha: f64, z: f64) -> Result<f64> {
    check_inc_gamma_args(alpha, z)?;
    if z == 0.0 {
        return Ok(gamma(alpha));
    }
    if z < alpha + 1.0 {
        inc_gamma_upper_series(alpha, z)
    } else {
        inc_gamma_upper_cf(alpha, z)
    }
}

fn check_inc_gamma_args(alpha: f64, z: f64) -> Result<()> {
    if !(alpha > 0.0) {
        return domain(format!("incomplete gamma needs alpha > 0, got {alpha}"));
    }
    if !(z >= 0.0) {
        return domain(format!("incomplete gamma needs z >= 0, got {z}"));
    }
    Ok(())
}

/// Lower incomplete gamma `γ(α, z) = ∫_0^z t^{α-1} e^{-t} dt`.
pub fn inc_gamma_lower(alpha: f64, z: f64) -> Result<f64> {
    check_inc_gamma_args(alpha, z)?;
    if z == 0.0 {
        return Ok(0.0);
    }
    if z >= alpha + 1.0 {
        return Ok(gamma(alpha) - inc_gamma_upper_cf(alpha, z)?);
    }
    let mut term = 1.0 / alpha;
    let mut acc = NeumaierSum::new();
    acc.add(term);
    let mut denom = alpha;
    for _ in 0..INC_GAMMA_MAX_ITER {
        denom += 1.0;
        term *= z / denom;
        acc.add(term);
        if term.abs() < acc.value().abs() * INC_GAMMA_EPS {
            return Ok(acc.value() * (alpha * z.ln() - z).exp());
        }
    }
    Err(Error::NonConvergence {
        estimate: term.abs(),
        evaluations: INC_GAMMA_MAX_ITER as u64,
    })
}

/// `Γ(α) - γ(α, z)` with the lower function from its power series.
pub fn inc_gamma_upper_series(alpha: f64, z: f64) -> Result<f64> {
    check_inc_gamma_args(alpha, z)?;
    if z == 0.0 {
        return Ok(gamma(alpha));
    }
    let mut term = 1.0 / alpha;
    let mut acc = NeumaierSum::new();
    acc.add(term);
    let mut denom = alpha;
    for _ in 0..INC_GAMMA_MAX_ITER {
        denom += 1.0;
        term *= z / denom;
        acc.add(term);
        if term.abs() < acc.value().abs() * INC_GAMMA_EPS {
            let lower = acc.value() * (alpha * z.ln() - z).exp();
            return Ok(gamma(alpha) - lower);
        }
    }
    Err(Error::NonConvergence {
        estimate: term.abs(),
        evaluations: INC_GAMMA_MAX_ITER as u64,
    })
}

/// Modified Lentz evaluation of the continued fraction for `Γ(α, z)`.
pub fn inc_gamma_upper_cf(alpha: f64, z: f64) -> Result<f64> {
    check_inc_gamma_args(alpha, z)?;
    if z == 0.0 {
        return Ok(gamma(alpha));
    }
    const TINY: f64 = 1e-300;
    let mut b = z + 1.0 - alpha;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..INC_GAMMA_MAX_ITER {
        let an = -(i as f64) * (i as f64 - alpha);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < INC_GAMMA_EPS {
            return Ok((alpha * z.ln() - z).exp() * h);
        }
    }
    Err(Error::NonConvergence {
        estimate: f64::NAN,
        evaluations: INC_GAMMA_MAX_ITER as u64,
    })
}

/// `Γ(n+1, z) = n! e^{-z} Σ_{k≤n} z^k/k!`.
pub fn inc_gamma_upper_int(n: u64, z: f64) -> f64 {
    let mut term = 1.0;
    let mut acc = NeumaierSum::new();
    acc.add(term);
    for k in 1..=n {
        term *= z / k as f64;
        acc.add(term);
    }
    factorial::<f64>(n) * (-z).exp() * acc.value()
}
