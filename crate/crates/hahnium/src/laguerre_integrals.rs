//! Integrals of products of Laguerre polynomials against `x^{α+s} e^{-x}`.

use num_rational::BigRational;

use crate::error::{domain, Result};
use crate::orthopoly::{chebyshev_discrete, laguerre, LaguerreSpec};
use crate::specfun::{
    factorial, gamma, inc_gamma_lower, inc_gamma_upper, pochhammer, rational, HypSeriesSpec,
    NeumaierSum, Scalar,
};

/// `J_{nms}^{αβ} = ∫_0^∞ e^{-x} x^{α+s} L_n^α(x) L_m^β(x) dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct JSpec<T = f64> {
    pub n: u64,
    pub m: u64,
    pub s: T,
    pub alpha: T,
    pub beta: T,
}

impl<T: Scalar> JSpec<T> {
    pub fn new(n: u64, m: u64, s: T, alpha: T, beta: T) -> Self {
        Self {
            n,
            m,
            s,
            alpha,
            beta,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < self.m {
            return domain(format!("J integral needs n >= m, got n={} m={}", self.n, self.m));
        }
        let diff = self.alpha.clone() - self.beta.clone();
        let is_int =
            diff.nonpositive_integer().is_some() || (-diff).nonpositive_integer().is_some();
        if !is_int {
            return domain("J integral needs alpha - beta to be an integer");
        }
        Ok(())
    }
}

fn signed<T: Scalar>(v: T, negate: bool) -> T {
    if negate {
        -v
    } else {
        v
    }
}

/// `J / Γ(α+s+1)` from the Thomae-transformed `3F2`, with the gamma ratios
/// `Γ(s+1)/Γ(s-n+m+1)` and `Γ(β+m+1)/Γ(β+1)` as Pochhammer products.
pub fn j_reduced<T: Scalar>(spec: &JSpec<T>) -> Result<T> {
    spec.validate()?;
    let (n, m) = (spec.n, spec.m);
    let one = T::one();
    let d = n - m;
    let dd = T::from_i64(d as i64);
    let b1 = spec.beta.clone() + one.clone();
    let series = HypSeriesSpec::unit(
        vec![
            -T::from_i64(m as i64),
            spec.s.clone() + one.clone(),
            spec.beta.clone() - spec.alpha.clone() - spec.s.clone(),
        ],
        vec![b1.clone(), dd.clone() + one.clone()],
    );
    let pref = pochhammer(&b1, m) * pochhammer(&(spec.s.clone() - dd + one), d)
        / (factorial::<T>(m) * factorial::<T>(d));
    Ok(signed(pref * series.sum()?, d % 2 == 1))
}

/// `J / Γ(α+s+1)` from the untransformed sum
/// `(-1)^n (β+1)_m/(n! m!) Σ_k (-m)_k (α+s+1)_k (s-n+k+1)_n / (k! (β+1)_k)`.
pub fn j_reduced_direct<T: Scalar>(spec: &JSpec<T>) -> Result<T> {
    spec.validate()?;
    let coeffs = tail_coefficients(spec)?;
    let a1 = spec.alpha.clone() + spec.s.clone() + T::one();
    Ok(T::sum_all(
        coeffs
            .into_iter()
            .enumerate()
            .map(|(k, c)| c * pochhammer(&a1, k as u64)),
    ))
}

/// Coefficients `c_k` with `J(z) - boundary(z) = Σ_k c_k Γ(α+s+k+1, z)`.
pub fn tail_coefficients<T: Scalar>(spec: &JSpec<T>) -> Result<Vec<T>> {
    let (n, m) = (spec.n, spec.m);
    let one = T::one();
    let b1 = spec.beta.clone() + one.clone();
    let pref = signed(
        pochhammer(&b1, m) / (factorial::<T>(n) * factorial::<T>(m)),
        n % 2 == 1,
    );
    let mm = T::from_i64(m as i64);
    let nn = T::from_i64(n as i64);
    (0..=m)
        .map(|k| {
            let kk = T::from_i64(k as i64);
            let den = factorial::<T>(k) * pochhammer(&b1, k);
            if den.is_zero() {
                return domain("J integral: (beta+1)_k vanishes");
            }
            Ok(pref.clone()
                * pochhammer(&-mm.clone(), k)
                * pochhammer(&(spec.s.clone() - nn.clone() + kk + one.clone()), n)
                / den)
        })
        .collect()
}

fn check_convergence(spec: &JSpec<f64>) -> Result<()> {
    if !(spec.alpha + spec.s > -1.0) {
        return domain(format!(
            "J integral diverges: alpha + s = {} <= -1",
            spec.alpha + spec.s
        ));
    }
    Ok(())
}

/// `J_{nms}^{αβ}` in floating point.
pub fn j_integral(spec: &JSpec<f64>) -> Result<f64> {
    check_convergence(spec)?;
    Ok(gamma(spec.alpha + spec.s + 1.0) * j_reduced(spec)?)
}

/// The same integral from the untransformed series; kept as a cross-check.
pub fn j_integral_direct(spec: &JSpec<f64>) -> Result<f64> {
    check_convergence(spec)?;
    Ok(gamma(spec.alpha + spec.s + 1.0) * j_reduced_direct(spec)?)
}

/// `J_k = ∫ e^{-x} x^{α+k} (L_n^α)² dx = Γ(α+n+1)/n! · t_k(n, -α)`.
pub fn j_diag_positive(n: u64, alpha: f64, k: u64) -> Result<f64> {
    if !(alpha > -1.0) {
        return domain(format!("diagonal J needs alpha > -1, got {alpha}"));
    }
    let norm = gamma(alpha + n as f64 + 1.0) / factorial::<f64>(n);
    Ok(norm * chebyshev_discrete(k, &(n as f64), &-alpha)?)
}

/// `J_{-k-1} = Γ(α-k) Γ(α+n+1) / (n! Γ(α+k+1)) · t_k(n, -α)` for `0 ≤ k < α`.
pub fn j_diag_negative(n: u64, alpha: f64, k: u64) -> Result<f64> {
    if !((k as f64) < alpha) {
        return domain(format!("J_(-k-1) diverges unless k < alpha (k={k}, alpha={alpha})"));
    }
    let norm = gamma(alpha + n as f64 + 1.0) / factorial::<f64>(n);
    let ratio = 1.0 / pochhammer(&(alpha - k as f64), 2 * k + 1);
    Ok(norm * ratio * chebyshev_discrete(k, &(n as f64), &-alpha)?)
}

/// `d^j/dz^j (z^s L_m^β(z))` from the termwise expansion of `L_m^β`.
pub fn power_laguerre_derivative(s: f64, m: u64, beta: f64, j: u64, z: f64) -> f64 {
    let b1 = beta + 1.0;
    let pref = pochhammer(&b1, m) / factorial::<f64>(m);
    let mut acc = NeumaierSum::new();
    for i in 0..=m {
        let e = s + i as f64;
        let falling = pochhammer(&(e - j as f64 + 1.0), j);
        if falling == 0.0 {
            continue;
        }
        let c = pochhammer(&-(m as f64), i) / (factorial::<f64>(i) * pochhammer(&b1, i));
        acc.add(c * falling * z.powf(e - j as f64));
    }
    pref * acc.value()
}

/// Boundary terms `z^α e^{-z} Σ_k (-1)^k (n-k)!/n! z^k L_{n-k}^{α+k}(z) D^{k-1}(z^s L_m^β)`.
fn incomplete_boundary(spec: &JSpec<f64>, z: f64) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    let (n, alpha) = (spec.n, spec.alpha);
    let mut boundary = NeumaierSum::new();
    let nf = factorial::<f64>(n);
    for k in 1..=n {
        let lk = laguerre(&LaguerreSpec::new(n - k, alpha + k as f64), &z);
        let dk = power_laguerre_derivative(spec.s, spec.m, spec.beta, k - 1, z);
        let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
        boundary.add(sign * factorial::<f64>(n - k) / nf * z.powi(k as i32) * lk * dk);
    }
    (alpha * z.ln() - z).exp() * boundary.value()
}

fn check_incomplete(spec: &JSpec<f64>, z: f64) -> Result<()> {
    spec.validate()?;
    check_convergence(spec)?;
    if !(z >= 0.0) {
        return domain(format!("incomplete J needs z >= 0, got {z}"));
    }
    Ok(())
}

/// `∫_z^∞ e^{-x} x^{α+s} L_n^α(x) L_m^β(x) dx`: boundary terms from repeated
/// integration by parts plus a finite sum of upper incomplete gammas.
pub fn j_integral_incomplete(spec: &JSpec<f64>, z: f64) -> Result<f64> {
    check_incomplete(spec, z)?;
    let a1 = spec.alpha + spec.s + 1.0;
    let mut tail = NeumaierSum::new();
    for (k, c) in tail_coefficients(spec)?.into_iter().enumerate() {
        if c != 0.0 {
            tail.add(c * inc_gamma_upper(a1 + k as f64, z)?);
        }
    }
    Ok(incomplete_boundary(spec, z) + tail.value())
}

/// `∫_0^z e^{-x} x^{α+s} L_n^α(x) L_m^β(x) dx`, the complement of
/// [`j_integral_incomplete`] built from lower incomplete gammas.
pub fn j_integral_lower(spec: &JSpec<f64>, z: f64) -> Result<f64> {
    check_incomplete(spec, z)?;
    let a1 = spec.alpha + spec.s + 1.0;
    let mut acc = NeumaierSum::new();
    for (k, c) in tail_coefficients(spec)?.into_iter().enumerate() {
        if c != 0.0 {
            acc.add(c * inc_gamma_lower(a1 + k as f64, z)?);
        }
    }
    acc.add(-incomplete_boundary(spec, z));
    Ok(acc.value())
}

/// Exact value at `z = 0` of the incomplete form, divided by `Γ(α+s+1)`.
pub fn j_incomplete_reduced_at_zero(spec: &JSpec<BigRational>) -> Result<BigRational> {
    spec.validate()?;
    let a1 = spec.alpha.clone() + spec.s.clone() + rational(1, 1);
    let coeffs = tail_coefficients(spec)?;
    // Γ(α+s+k+1, 0) = Γ(α+s+1) (α+s+1)_k
    Ok(coeffs
        .into_iter()
        .enumerate()
        .fold(rational(0, 1), |acc, (k, c)| {
            acc + c * pochhammer(&a1, k as u64)
        }))
}

/// Coefficients of `L_n^α = Σ_m (α-β)_{n-m}/(n-m)! L_m^β`, indexed by `m`.
pub fn connection_coeffs<T: Scalar>(n: u64, alpha: &T, beta: &T) -> Vec<T> {
    let d = alpha.clone() - beta.clone();
    (0..=n)
        .map(|m| pochhammer(&d, n - m) / factorial::<T>(n - m))
        .collect()
}

/// Coefficients `c_{nmp}` of `L_n^α L_m^α = Σ_p c_{nmp} L_p^α`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearizationTriple<T = f64> {
    pub n: u64,
    pub m: u64,
    pub alpha: T,
    /// `coefficients[i]` belongs to `p = n - m + i`.
    pub coefficients: Vec<T>,
}

impl<T: Scalar> LinearizationTriple<T> {
    pub fn coefficient(&self, p: u64) -> T {
        if p < self.n - self.m || p > self.n + self.m {
            return T::zero();
        }
        self.coefficients[(p - (self.n - self.m)) as usize].clone()
    }
}

/// Single-sum linearization coefficient `c_{nmp}(α)`.
pub fn linearization_coeff<T: Scalar>(n: u64, m: u64, p: u64, alpha: &T) -> T {
    let (n, m) = if n >= m { (n, m) } else { (m, n) };
    if p + m < n || p > n + m {
        return T::zero();
    }
    let d = n - m;
    let a1 = alpha.clone() + T::one();
    let pp = T::from_i64(p as i64);
    let mm = T::from_i64(m as i64);
    let pref = signed(
        pochhammer(&-pp.clone(), d) * pochhammer(&a1, m) / (factorial::<T>(p) * factorial::<T>(m)),
        p % 2 == 1,
    );
    // p - n + m <= 2k <= min(2p, 2m)
    let lo = (p + m - n).div_ceil(2);
    let hi = p.min(m);
    let terms = (lo..=hi).map(|k| {
        pochhammer(&-pp.clone(), k) * pochhammer(&-mm.clone(), k) * factorial::<T>(2 * k)
            / (factorial::<T>(k) * pochhammer(&a1, k) * factorial::<T>(2 * k + n - m - p))
    });
    pref * T::sum_all(terms)
}

pub fn linearization_coeffs<T: Scalar>(n: u64, m: u64, alpha: T) -> LinearizationTriple<T> {
    let (n, m) = if n >= m { (n, m) } else { (m, n) };
    let coefficients = (n - m..=n + m)
        .map(|p| linearization_coeff(n, m, p, &alpha))
        .collect();
    LinearizationTriple {
        n,
        m,
        alpha,
        coefficients,
    }
}

/// `c_{nmp}` through a `4F3`-type sum, split by the parity of `p - n + m`.
/// The `4F3` carries a numerator and denominator parameter that cancel.
pub fn linearization_coeff_hyp(n: u64, m: u64, p: u64, alpha: &BigRational) -> Result<BigRational> {
    let (n, m) = if n >= m { (n, m) } else { (m, n) };
    if p + m < n || p > n + m {
        return Ok(rational(0, 1));
    }
    let q = |a: i64, b: i64| rational(a, b);
    let two_eps = (p + m - n) as i64;
    let pp = q(p as i64, 1);
    let mm = q(m as i64, 1);
    let a1 = alpha.clone() + q(1, 1);
    // first surviving k, and the shifts entering the 4F3 parameters
    let (k0, bottom, shift) = if two_eps % 2 == 0 {
        (two_eps / 2, q(1, 2), q(two_eps, 2))
    } else {
        ((two_eps + 1) / 2, q(3, 2), q(two_eps + 1, 2))
    };
    let k0 = k0 as u64;
    if k0 > p.min(m) {
        return Ok(rational(0, 1));
    }
    let kk0 = q(k0 as i64, 1);
    // Γ(2k0+1)/Γ(2k0-2ε+1) and k0! (α+1)_{k0} at the first term
    let first = pochhammer(&-pp.clone(), k0) * pochhammer(&-mm.clone(), k0)
        * factorial::<BigRational>(2 * k0)
        / (factorial::<BigRational>(k0)
            * pochhammer(&a1, k0)
            * factorial::<BigRational>(2 * k0 + n - m - p));
    let series = HypSeriesSpec::unit(
        vec![
            shift.clone() - pp.clone(),
            shift.clone() - mm.clone(),
            kk0.clone() + q(1, 2),
            kk0.clone() + q(1, 1),
        ],
        vec![bottom, a1.clone() + kk0.clone(), kk0.clone() + q(1, 1)],
    );
    let pref = signed(
        pochhammer(&-pp.clone(), n - m) * pochhammer(&a1, m)
            / (factorial::<BigRational>(p) * factorial::<BigRational>(m)),
        p % 2 == 1,
    );
    Ok(pref * first * series.sum()?)
}

/// `∫ L_n^α L_m^α L_p^α x^α e^{-x} dx = Γ(α+p+1)/p! · c_{nmp}`.
pub fn triple_product_integral(n: u64, m: u64, p: u64, alpha: f64) -> Result<f64> {
    if !(alpha > -1.0) {
        return domain(format!("triple product needs alpha > -1, got {alpha}"));
    }
    Ok(gamma(alpha + p as f64 + 1.0) / factorial::<f64>(p) * linearization_coeff(n, m, p, &alpha))
}
