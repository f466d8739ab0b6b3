//! Spherical harmonics, Clebsch–Gordan coefficients and spinor harmonics.
//!
//! Condon–Shortley phases throughout.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};
use crate::orthopoly::legendre;
use crate::specfun::{factorial, ln_gamma, rational, rational_to_f64};

/// A half-integer stored doubled, so `HalfInt::from_twice(3)` is 3/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };

    pub fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub fn from_int(v: i64) -> Self {
        HalfInt { twice: 2 * v }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_rational(self) -> BigRational {
        rational(self.twice, 2)
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + o.twice)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - o.twice)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// `(j, m)` must satisfy `j ≥ 0`, `|m| ≤ j`, `j - m` integral.
fn check_projection(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.twice < 0 || m.twice.abs() > j.twice || (j.twice - m.twice) % 2 != 0 {
        return domain(format!("invalid angular momentum pair j={j}, m={m}"));
    }
    Ok(())
}

/// `Y_lm(θ, φ)`, normalized on the unit sphere.
pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Result<Complex64> {
    if m.unsigned_abs() > l {
        return domain(format!("|m| > l in Y_lm (l={l}, m={m})"));
    }
    let ma = m.unsigned_abs();
    let p = assoc_legendre_normalized(l, ma, theta.cos(), theta.sin());
    let y = Complex64::from_polar(p, ma as f64 * phi);
    if m >= 0 {
        Ok(y)
    } else if ma % 2 == 0 {
        Ok(y.conj())
    } else {
        Ok(-y.conj())
    }
}

/// `Y_lm(θ, 0)` for `m ≥ 0`, including the Condon–Shortley sign.
fn assoc_legendre_normalized(l: u32, m: u32, x: f64, s: f64) -> f64 {
    let mut pmm = (0.25 / PI).sqrt();
    for k in 1..=m {
        let k = k as f64;
        pmm *= -((2.0 * k + 1.0) / (2.0 * k)).sqrt() * s;
    }
    if l == m {
        return pmm;
    }
    let mf = m as f64;
    let mut p_prev = pmm;
    let mut p = x * (2.0 * mf + 3.0).sqrt() * pmm;
    for ll in (m + 2)..=l {
        let lf = ll as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let lp = lf - 1.0;
        let a_prev = ((4.0 * lp * lp - 1.0) / (lp * lp - mf * mf)).sqrt();
        let next = a * (x * p - p_prev / a_prev);
        p_prev = p;
        p = next;
    }
    p
}

/// Racah-sum pieces shared by the float and exact evaluations. `None` when a
/// selection rule kills the coefficient.
struct RacahIndices {
    // integer arguments of the triangle and projection factorials
    triangle: [i64; 4],
    projections: [i64; 6],
    // bounds and offsets of the summation index
    k_min: i64,
    k_max: i64,
    denom: [(i64, i64); 5],
    two_j: i64,
}

fn racah_indices(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> Result<Option<RacahIndices>> {
    check_projection(j1, m1)?;
    check_projection(j2, m2)?;
    check_projection(j, m)?;
    if m1.twice + m2.twice != m.twice {
        return Ok(None);
    }
    if (j1.twice + j2.twice + j.twice) % 2 != 0 {
        return Ok(None);
    }
    let (a, b, c) = (j1.twice, j2.twice, j.twice);
    if c < (a - b).abs() || c > a + b {
        return Ok(None);
    }
    let h = |t: i64| t / 2;
    let triangle = [h(a + b - c), h(a - b + c), h(-a + b + c), h(a + b + c) + 1];
    let projections = [
        h(c + m.twice),
        h(c - m.twice),
        h(a - m1.twice),
        h(a + m1.twice),
        h(b - m2.twice),
        h(b + m2.twice),
    ];
    // k!, (j1+j2-j-k)!, (j1-m1-k)!, (j2+m2-k)!, (j-j2+m1+k)!, (j-j1-m2+k)!
    let denom = [
        (h(a + b - c), -1),
        (h(a - m1.twice), -1),
        (h(b + m2.twice), -1),
        (h(c - b + m1.twice), 1),
        (h(c - a - m2.twice), 1),
    ];
    let k_min = 0.max(-denom[3].0).max(-denom[4].0);
    let k_max = denom[0].0.min(denom[1].0).min(denom[2].0);
    Ok(Some(RacahIndices {
        triangle,
        projections,
        k_min,
        k_max,
        denom,
        two_j: c,
    }))
}

fn ln_fact(n: i64) -> f64 {
    ln_gamma(n as f64 + 1.0).unwrap_or(0.0)
}

/// `C^{jm}_{j1 m1, j2 m2}` in floating point (log-factorial Racah sum).
///
/// Returns 0 when the selection rules fail.
pub fn clebsch_gordan(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> Result<f64> {
    let Some(ix) = racah_indices(j1, m1, j2, m2, j, m)? else {
        return Ok(0.0);
    };
    let [t0, t1, t2, t3] = ix.triangle;
    let ln_pref = 0.5
        * (((ix.two_j + 1) as f64).ln() + ln_fact(t0) + ln_fact(t1) + ln_fact(t2) - ln_fact(t3)
            + ix.projections.iter().map(|&p| ln_fact(p)).sum::<f64>());
    let mut sum = 0.0;
    for k in ix.k_min..=ix.k_max {
        let mut ln_den = ln_fact(k);
        for &(base, sgn) in &ix.denom {
            ln_den += ln_fact(base + sgn * k);
        }
        let term = (ln_pref - ln_den).exp();
        sum += if k % 2 == 0 { term } else { -term };
    }
    Ok(sum)
}

/// A real number held as `sign · √square` with an exact rational square.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedSqrt {
    pub negative: bool,
    pub square: BigRational,
}

impl SignedSqrt {
    pub fn to_f64(&self) -> f64 {
        let v = rational_to_f64(&self.square).sqrt();
        if self.negative {
            -v
        } else {
            v
        }
    }

    pub fn is_zero(&self) -> bool {
        self.square.is_zero()
    }

    /// Exact product.
    pub fn mul(&self, o: &SignedSqrt) -> SignedSqrt {
        SignedSqrt {
            negative: self.negative != o.negative,
            square: self.square.clone() * o.square.clone(),
        }
    }
}

/// Exact Clebsch–Gordan coefficient as a signed square root.
pub fn clebsch_gordan_exact(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> Result<SignedSqrt> {
    let zero = SignedSqrt {
        negative: false,
        square: BigRational::zero(),
    };
    let Some(ix) = racah_indices(j1, m1, j2, m2, j, m)? else {
        return Ok(zero);
    };
    let fact = |n: i64| factorial::<BigRational>(n as u64);
    let [t0, t1, t2, t3] = ix.triangle;
    let mut pref = BigRational::from_integer(BigInt::from(ix.two_j + 1)) * fact(t0) * fact(t1)
        * fact(t2)
        / fact(t3);
    for &p in &ix.projections {
        pref = pref * fact(p);
    }
    let mut sum = BigRational::zero();
    for k in ix.k_min..=ix.k_max {
        let mut den = fact(k);
        for &(base, sgn) in &ix.denom {
            den = den * fact(base + sgn * k);
        }
        let term = BigRational::one() / den;
        sum = if k % 2 == 0 { sum + term } else { sum - term };
    }
    Ok(SignedSqrt {
        negative: sum.is_negative(),
        square: pref * sum.clone() * sum,
    })
}

/// Shorthand for integer angular momenta.
pub fn clebsch_gordan_int(l1: i64, m1: i64, l2: i64, m2: i64, l: i64, m: i64) -> Result<f64> {
    clebsch_gordan(
        HalfInt::from_int(l1),
        HalfInt::from_int(m1),
        HalfInt::from_int(l2),
        HalfInt::from_int(m2),
        HalfInt::from_int(l),
        HalfInt::from_int(m),
    )
}

/// Closed form of `C^{l0}_{l0, 2s 0}`.
pub fn cg_l0_2s0(l: u64, s: u64) -> Result<f64> {
    if s > l {
        return domain(format!("C^(l0)_(l0,2s0) needs s <= l (l={l}, s={s})"));
    }
    let f = |n: u64| factorial::<f64>(n);
    let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
    let ratio = f(l + s) * f(2 * s) / (f(l - s) * f(s) * f(s));
    let root = ((2 * l + 1) as f64 * f(2 * l - 2 * s) / f(2 * l + 2 * s + 1)).sqrt();
    Ok(sign * ratio * root)
}

/// `∫ Y*_{s0} Y*_{lm} Y_{lm} dω` through Clebsch–Gordan coefficients.
pub fn gaunt_diagonal(l: u64, m: i64, s: u64) -> Result<f64> {
    let (l, s) = (l as i64, s as i64);
    let c1 = clebsch_gordan_int(l, m, s, 0, l, m)?;
    let c2 = clebsch_gordan_int(l, 0, s, 0, l, 0)?;
    Ok(((2 * s + 1) as f64 / (4.0 * PI)).sqrt() * c1 * c2)
}

/// Two-component spinor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor2 {
    pub up: Complex64,
    pub down: Complex64,
}

impl Spinor2 {
    pub fn new(up: Complex64, down: Complex64) -> Self {
        Spinor2 { up, down }
    }

    /// `self† · other`.
    pub fn inner(&self, other: &Spinor2) -> Complex64 {
        self.up.conj() * other.up + self.down.conj() * other.down
    }

    pub fn norm_sqr(&self) -> f64 {
        self.up.norm_sqr() + self.down.norm_sqr()
    }

    /// Applies `σ·n` for the unit vector at `(θ, φ)`.
    pub fn sigma_dot_n(&self, theta: f64, phi: f64) -> Spinor2 {
        let (c, s) = (theta.cos(), theta.sin());
        let e_minus = Complex64::from_polar(s, -phi);
        let e_plus = Complex64::from_polar(s, phi);
        Spinor2 {
            up: self.up * c + self.down * e_minus,
            down: self.up * e_plus - self.down * c,
        }
    }

    pub fn max_abs_diff(&self, other: &Spinor2) -> f64 {
        (self.up - other.up).norm().max((self.down - other.down).norm())
    }
}

impl std::ops::Neg for Spinor2 {
    type Output = Spinor2;
    fn neg(self) -> Spinor2 {
        Spinor2::new(-self.up, -self.down)
    }
}

/// Which orbital momentum is coupled to spin 1/2: `Plus` is `l = j + 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn flip(self) -> Branch {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }

    /// Orbital momentum `l = j ± 1/2`.
    pub fn orbital(self, j: HalfInt) -> i64 {
        match self {
            Branch::Plus => (j.twice + 1) / 2,
            Branch::Minus => (j.twice - 1) / 2,
        }
    }

    /// `κ = ±(j + 1/2)`.
    pub fn kappa(self, j: HalfInt) -> i64 {
        let k = (j.twice + 1) / 2;
        match self {
            Branch::Plus => k,
            Branch::Minus => -k,
        }
    }

    /// Branch and `j` from a Dirac `κ`.
    pub fn from_kappa(kappa: i64) -> Result<(Branch, HalfInt)> {
        if kappa == 0 {
            return domain("kappa must be nonzero");
        }
        let j = HalfInt::from_twice(2 * kappa.abs() - 1);
        Ok((if kappa > 0 { Branch::Plus } else { Branch::Minus }, j))
    }
}

fn check_spinor(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.is_integer() || j.twice < 1 {
        return domain(format!("spinor harmonics need half-odd j, got {j}"));
    }
    check_projection(j, m)
}

fn ylm_or_zero(l: i64, m_twice: i64, theta: f64, phi: f64) -> Complex64 {
    let m = m_twice / 2;
    if l < 0 || m.abs() > l {
        Complex64::new(0.0, 0.0)
    } else {
        spherical_harmonic(l as u32, m as i32, theta, phi).unwrap_or_default()
    }
}

/// Spinor spherical harmonic `Y^±_{jm}(θ, φ)` from the explicit square-root weights.
pub fn spinor_harmonic(
    j: HalfInt,
    m: HalfInt,
    branch: Branch,
    theta: f64,
    phi: f64,
) -> Result<Spinor2> {
    check_spinor(j, m)?;
    let jh = j.value() + 0.5;
    let mv = m.value();
    let l = branch.orbital(j);
    let (sign, den) = match branch {
        Branch::Plus => (-1.0, 2.0 * j.value() + 2.0),
        Branch::Minus => (1.0, 2.0 * j.value()),
    };
    let pm = match branch {
        Branch::Plus => -1.0,
        Branch::Minus => 1.0,
    };
    let w_up = ((jh + pm * (mv - 0.5)) / den).max(0.0).sqrt();
    let w_down = ((jh - pm * (mv + 0.5)) / den).max(0.0).sqrt();
    let up = ylm_or_zero(l, m.twice - 1, theta, phi) * (sign * w_up);
    let down = ylm_or_zero(l, m.twice + 1, theta, phi) * w_down;
    Ok(Spinor2 { up, down })
}

/// Spinor harmonic assembled directly from Clebsch–Gordan coefficients.
pub fn spinor_harmonic_coupled(
    j: HalfInt,
    m: HalfInt,
    branch: Branch,
    theta: f64,
    phi: f64,
) -> Result<Spinor2> {
    check_spinor(j, m)?;
    let l = branch.orbital(j);
    let lh = HalfInt::from_int(l);
    let cg = |ml: HalfInt, ms: HalfInt| {
        if ml.twice.abs() > lh.twice {
            Ok(0.0)
        } else {
            clebsch_gordan(lh, ml, HalfInt::HALF, ms, j, m)
        }
    };
    let cg_up = cg(m - HalfInt::HALF, HalfInt::HALF)?;
    let cg_down = cg(m + HalfInt::HALF, -HalfInt::HALF)?;
    Ok(Spinor2 {
        up: ylm_or_zero(l, m.twice - 1, theta, phi) * cg_up,
        down: ylm_or_zero(l, m.twice + 1, theta, phi) * cg_down,
    })
}

/// Eigenvalue of `σ·l` on `Y^±_{jm}`: `j(j+1) - l(l+1) - 3/4`.
pub fn sigma_dot_l_eigenvalue(j: HalfInt, branch: Branch) -> BigRational {
    let jr = j.to_rational();
    let l = BigRational::from_integer(BigInt::from(branch.orbital(j)));
    jr.clone() * (jr + BigRational::one()) - l.clone() * (l + BigRational::one()) - rational(3, 4)
}

/// Angular density `Q_jm(θ)` from the `l = j - 1/2` components.
pub fn angular_density(j: HalfInt, m: HalfInt, theta: f64) -> Result<f64> {
    check_spinor(j, m)?;
    let (jv, mv) = (j.value(), m.value());
    let l = Branch::Minus.orbital(j);
    let a = ylm_or_zero(l, m.twice - 1, theta, 0.0).norm_sqr();
    let b = ylm_or_zero(l, m.twice + 1, theta, 0.0).norm_sqr();
    Ok(((jv + mv) * a + (jv - mv) * b) / (2.0 * jv))
}

/// Angular density from the `l = j + 1/2` components.
pub fn angular_density_upper(j: HalfInt, m: HalfInt, theta: f64) -> Result<f64> {
    check_spinor(j, m)?;
    let (jv, mv) = (j.value(), m.value());
    let l = Branch::Plus.orbital(j);
    let a = ylm_or_zero(l, m.twice + 1, theta, 0.0).norm_sqr();
    let b = ylm_or_zero(l, m.twice - 1, theta, 0.0).norm_sqr();
    Ok(((jv + mv + 1.0) * a + (jv - mv + 1.0) * b) / (2.0 * jv + 2.0))
}

/// Coefficients `a_s`, `s = 0..=j-1/2`, of `Q_jm(θ) = Σ a_s P_{2s}(cos θ)`.
pub fn angular_density_coeffs(j: HalfInt, m: HalfInt) -> Result<Vec<f64>> {
    check_spinor(j, m)?;
    let tj = j.twice as u64;
    let top = (tj - 1) / 2;
    let f = |n: u64| factorial::<f64>(n);
    let mut out = Vec::with_capacity(top as usize + 1);
    for s in 0..=top {
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        let root = ((tj + 2 * s + 1) as f64 * f(tj - 2 * s) / ((tj + 1) as f64 * f(tj + 2 * s))).sqrt();
        // (j+s-1/2)! and (j-s-1/2)! have integer arguments
        let ratio = f((tj - 1) / 2 + s) * f(2 * s) / (f((tj - 1) / 2 - s) * f(s) * f(s));
        let cg = clebsch_gordan(j, m, HalfInt::from_int(2 * s as i64), HalfInt::ZERO, j, m)?;
        out.push(sign * (4 * s + 1) as f64 / (4.0 * PI) * root * ratio * cg);
    }
    Ok(out)
}

/// `Σ a_s P_{2s}(cos θ)`.
pub fn angular_density_series(j: HalfInt, m: HalfInt, theta: f64) -> Result<f64> {
    let x = theta.cos();
    Ok(angular_density_coeffs(j, m)?
        .iter()
        .enumerate()
        .map(|(s, a)| a * legendre(2 * s as u64, x))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::sphere_quad;

    fn hi(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn low_order_harmonics() {
        let y00 = spherical_harmonic(0, 0, 0.3, 0.2).unwrap();
        assert!((y00.re - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-15);
        let t = 0.7;
        let y10 = spherical_harmonic(1, 0, t, 1.0).unwrap();
        assert!((y10.re - (3.0 / (4.0 * PI)).sqrt() * t.cos()).abs() < 1e-15);
        let y11 = spherical_harmonic(1, 1, PI / 2.0, 0.0).unwrap();
        assert!((y11.re + (3.0 / (8.0 * PI)).sqrt()).abs() < 1e-15);
        let y1m = spherical_harmonic(1, -1, PI / 2.0, 0.0).unwrap();
        assert!((y1m.re - (3.0 / (8.0 * PI)).sqrt()).abs() < 1e-15);
        assert!(spherical_harmonic(1, 2, 0.0, 0.0).is_err());
    }

    #[test]
    fn harmonic_recurrences() {
        for l in 1..=4i32 {
            for m in -l..=l {
                for &(t, p) in &[(0.3, 0.1), (1.2, 2.5), (2.7, -1.0)] {
                    let y = |ll: i32, mm: i32| {
                        if ll < 0 || mm.abs() > ll {
                            Complex64::default()
                        } else {
                            spherical_harmonic(ll as u32, mm, t, p).unwrap()
                        }
                    };
                    let (lf, mf) = (l as f64, m as f64);
                    let e = Complex64::from_polar(1.0, p);
                    let r = |a: f64, b: f64| (a / b).max(0.0).sqrt();
                    let d = (2.0 * lf + 1.0) * (2.0 * lf + 3.0);
                    let dm = (2.0 * lf + 1.0) * (2.0 * lf - 1.0);
                    let lhs = -y(l, m - 1) * e * t.sin();
                    let rhs = y(l + 1, m) * r((lf + mf) * (lf + mf + 1.0), d)
                        - y(l - 1, m) * r((lf - mf) * (lf - mf + 1.0), dm);
                    assert!((lhs - rhs).norm() < 1e-12, "raising l={l} m={m}");
                    let lhs = y(l, m + 1) * e.conj() * t.sin();
                    let rhs = y(l + 1, m) * r((lf - mf) * (lf - mf + 1.0), d)
                        - y(l - 1, m) * r((lf + mf) * (lf + mf + 1.0), dm);
                    assert!((lhs - rhs).norm() < 1e-12, "lowering l={l} m={m}");
                    let lhs = y(l, m) * t.cos();
                    let rhs = y(l + 1, m) * r((lf + 1.0).powi(2) - mf * mf, d)
                        + y(l - 1, m) * r(lf * lf - mf * mf, dm);
                    assert!((lhs - rhs).norm() < 1e-12, "cos l={l} m={m}");
                }
            }
        }
    }

    #[test]
    fn harmonic_orthonormality() {
        for l in 0..=4u32 {
            for m in -(l as i32)..=(l as i32) {
                let v = sphere_quad(
                    |t, p| {
                        let y = spherical_harmonic(l, m, t, p).unwrap();
                        y.conj() * y
                    },
                    2 * l as usize,
                );
                assert!((v.re - 1.0).abs() < 1e-13 && v.im.abs() < 1e-13);
            }
        }
        let v = sphere_quad(
            |t, p| spherical_harmonic(2, 1, t, p).unwrap().conj() * spherical_harmonic(1, 1, t, p).unwrap(),
            3,
        );
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn cg_examples() {
        assert_eq!(clebsch_gordan_int(0, 0, 0, 0, 0, 0).unwrap(), 1.0);
        let c = clebsch_gordan_int(1, 0, 2, 0, 1, 0).unwrap();
        assert!((c + 2.0 / 10f64.sqrt()).abs() < 1e-14);
        let a = clebsch_gordan_int(1, 1, 1, 0, 2, 1).unwrap();
        let b = clebsch_gordan_int(1, -1, 1, 0, 2, -1).unwrap();
        assert!((a - b).abs() < 1e-15);
        // j1 + j2 - j odd flips the sign
        let a = clebsch_gordan_int(1, 1, 1, 0, 1, 1).unwrap();
        let b = clebsch_gordan_int(1, -1, 1, 0, 1, -1).unwrap();
        assert!((a + b).abs() < 1e-15 && a.abs() > 0.1);
        assert_eq!(clebsch_gordan_int(1, 1, 1, 1, 1, 1).unwrap(), 0.0);
        assert_eq!(clebsch_gordan_int(1, 0, 1, 0, 3, 0).unwrap(), 0.0);
        assert!(clebsch_gordan(hi(1), hi(3), hi(1), hi(1), hi(2), hi(4)).is_err());
    }

    #[test]
    fn cg_exact_matches_float() {
        for tj1 in 0..=4 {
            for tj2 in 0..=4 {
                for tj in ((tj1 - tj2) as i64).abs()..=(tj1 + tj2) {
                    if (tj1 + tj2 + tj) % 2 != 0 {
                        continue;
                    }
                    for tm1 in (-tj1..=tj1).step_by(2) {
                        for tm2 in (-tj2..=tj2).step_by(2) {
                            let tm = tm1 + tm2;
                            if tm.abs() > tj {
                                continue;
                            }
                            let f = clebsch_gordan(hi(tj1), hi(tm1), hi(tj2), hi(tm2), hi(tj), hi(tm)).unwrap();
                            let e = clebsch_gordan_exact(hi(tj1), hi(tm1), hi(tj2), hi(tm2), hi(tj), hi(tm)).unwrap();
                            assert!((f - e.to_f64()).abs() < 1e-14);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn special_cg_closed_form() {
        for l in 0..=4u64 {
            for s in 0..=l {
                let c = clebsch_gordan_int(l as i64, 0, 2 * s as i64, 0, l as i64, 0).unwrap();
                assert!((c - cg_l0_2s0(l, s).unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn triple_product_against_quadrature() {
        for l in 0..=3u64 {
            for m in -(l as i64)..=(l as i64) {
                for s in 0..=2 * l {
                    let q = sphere_quad(
                        |t, p| {
                            let ys = spherical_harmonic(s as u32, 0, t, p).unwrap();
                            let y = spherical_harmonic(l as u32, m as i32, t, p).unwrap();
                            ys.conj() * y.conj() * y
                        },
                        (s + 2 * l) as usize,
                    );
                    assert!((q.re - gaunt_diagonal(l, m, s).unwrap()).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn spinor_examples() {
        let y = spinor_harmonic(hi(1), hi(1), Branch::Minus, 0.4, 0.9).unwrap();
        assert!((y.up.re - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-15);
        assert_eq!(y.down, Complex64::default());
        let (t, p) = (1.1, 0.6);
        for tj in (1..=5).step_by(2) {
            for tm in (-tj..=tj).step_by(2) {
                for b in [Branch::Plus, Branch::Minus] {
                    let y = spinor_harmonic(hi(tj), hi(tm), b, t, p).unwrap();
                    let yc = spinor_harmonic_coupled(hi(tj), hi(tm), b, t, p).unwrap();
                    assert!(y.max_abs_diff(&yc) < 1e-14, "j={tj}/2 m={tm}/2 {b:?}");
                    let flipped = y.sigma_dot_n(t, p);
                    let other = spinor_harmonic(hi(tj), hi(tm), b.flip(), t, p).unwrap();
                    assert!(flipped.max_abs_diff(&-other) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn spinor_orthonormality() {
        let mut states = Vec::new();
        for tj in (1..=5).step_by(2) {
            for tm in (-tj..=tj).step_by(2) {
                for b in [Branch::Plus, Branch::Minus] {
                    states.push((hi(tj), hi(tm), b));
                }
            }
        }
        for &(j, m, b) in &states {
            for &(j2, m2, b2) in &states {
                let v = sphere_quad(
                    |t, p| {
                        let a = spinor_harmonic(j, m, b, t, p).unwrap();
                        let c = spinor_harmonic(j2, m2, b2, t, p).unwrap();
                        a.inner(&c)
                    },
                    8,
                );
                let expect = if (j, m, b) == (j2, m2, b2) { 1.0 } else { 0.0 };
                assert!((v.re - expect).abs() < 1e-12 && v.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sigma_dot_l_eigenvalue_matches_kappa() {
        for tj in (1..=11).step_by(2) {
            for b in [Branch::Plus, Branch::Minus] {
                let j = hi(tj);
                let expect = -BigRational::from_integer(BigInt::from(1 + b.kappa(j)));
                assert_eq!(sigma_dot_l_eigenvalue(j, b), expect);
            }
        }
    }

    #[test]
    fn density_forms_agree() {
        for tj in (1..=7).step_by(2) {
            for tm in (-tj..=tj).step_by(2) {
                let (j, m) = (hi(tj), hi(tm));
                for k in 0..12 {
                    let t = 0.05 + 0.26 * k as f64;
                    let a = angular_density(j, m, t).unwrap();
                    let b = angular_density_upper(j, m, t).unwrap();
                    let c = angular_density_series(j, m, t).unwrap();
                    assert!((a - b).abs() < 1e-13 && (a - c).abs() < 1e-13, "j={j} m={m}");
                }
                let norm = sphere_quad(|t, _| Complex64::new(angular_density(j, m, t).unwrap(), 0.0), tj as usize + 1);
                assert!((norm.re - 1.0).abs() < 1e-13);
            }
        }
        let a = angular_density_coeffs(hi(1), hi(-1)).unwrap();
        assert_eq!(a.len(), 1);
        assert!((a[0] - 1.0 / (4.0 * PI)).abs() < 1e-16);
    }
}
