//! Nonrelativistic hydrogen-like atom. Lengths in `a₀`, energies in hartree.

use num_rational::BigRational;

use crate::angular::clebsch_gordan_int;
use crate::error::{domain, Result};
use crate::laguerre_integrals::{j_diag_positive, j_integral_incomplete, j_integral_lower, JSpec};
use crate::orthopoly::{chebyshev_discrete, laguerre, legendre, LaguerreSpec};
use crate::specfun::{factorial, Scalar};
pub use crate::units::{Expectation, LengthUnit, Method};

/// Quantum numbers `(Z, n, l, m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NrState {
    pub z: f64,
    pub n: u64,
    pub l: u64,
    pub m: i64,
}

impl NrState {
    pub fn new(z: f64, n: u64, l: u64, m: i64) -> Result<Self> {
        if !(z > 0.0) || !z.is_finite() {
            return domain(format!("Z must be positive, got {z}"));
        }
        if n == 0 {
            return domain("n must be at least 1");
        }
        if l >= n {
            return domain(format!("l <= n-1 violated (n={n}, l={l})"));
        }
        if m.unsigned_abs() > l {
            return domain(format!("|m| <= l violated (l={l}, m={m})"));
        }
        Ok(NrState { z, n, l, m })
    }

    /// Degree `n - l - 1` of the radial Laguerre polynomial.
    pub fn radial_degree(&self) -> u64 {
        self.n - self.l - 1
    }

    /// `η = 2Zr/n`.
    pub fn eta(&self, r: f64) -> f64 {
        2.0 * self.z * r / self.n as f64
    }
}

/// Bohr level `-Z²/(2n²)`.
pub fn energy_nr(state: &NrState) -> f64 {
    let n = state.n as f64;
    -state.z * state.z / (2.0 * n * n)
}

/// `(2/n²) Z^{3/2} √((n-l-1)!/(n+l)!)`, the normalization of `R_nl`.
fn radial_norm(state: &NrState) -> f64 {
    let n = state.n as f64;
    let ratio = factorial::<f64>(state.radial_degree()) / factorial::<f64>(state.n + state.l);
    2.0 / (n * n) * state.z.powf(1.5) * ratio.sqrt()
}

/// `R_nl(r)` in `a₀^{-3/2}`.
pub fn radial_nr(state: &NrState, r: f64) -> f64 {
    let eta = state.eta(r);
    let lag = laguerre(
        &LaguerreSpec::new(state.radial_degree(), 2.0 * state.l as f64 + 1.0),
        &eta,
    );
    radial_norm(state) * (-eta / 2.0).exp() * eta.powi(state.l as i32) * lag
}

fn powi<T: Scalar>(x: &T, p: i64) -> T {
    let mut acc = T::one();
    for _ in 0..p.unsigned_abs() {
        acc = acc * x.clone();
    }
    if p < 0 {
        T::one() / acc
    } else {
        acc
    }
}

fn check_power(l: u64, p: i64) -> Result<()> {
    let bound = -2 * l as i64 - 2;
    if p < bound {
        return domain(format!(
            "<r^{p}> diverges for l={l}: need p >= -2l-2 = {bound}"
        ));
    }
    Ok(())
}

/// `⟨r^{k-1}⟩ = (1/2n)(n/2Z)^{k-1} t_k(n-l-1, -2l-1)`, `k ≥ 0`, in `a₀^{k-1}`.
pub fn positive_route<T: Scalar>(z: &T, n: u64, l: u64, k: u64) -> Result<T> {
    let nn = T::from_i64(n as i64);
    let x = T::from_i64((n - l - 1) as i64);
    let big_n = T::from_i64(-2 * l as i64 - 1);
    let scale = nn.clone() / (T::from_i64(2) * z.clone());
    let t = chebyshev_discrete(k, &x, &big_n)?;
    Ok(powi(&scale, k as i64 - 1) * t / (T::from_i64(2) * nn))
}

/// `⟨1/r^{k+2}⟩ = (1/2n)(2Z/n)^{k+2} (2l-k)!/(2l+k+1)! t_k(n-l-1, -2l-1)`,
/// `0 ≤ k ≤ 2l`.
pub fn negative_route<T: Scalar>(z: &T, n: u64, l: u64, k: u64) -> Result<T> {
    if k > 2 * l {
        return domain(format!(
            "<1/r^{}> diverges for l={l}: need k <= 2l",
            k + 2
        ));
    }
    let nn = T::from_i64(n as i64);
    let x = T::from_i64((n - l - 1) as i64);
    let big_n = T::from_i64(-2 * l as i64 - 1);
    let inv_scale = T::from_i64(2) * z.clone() / nn.clone();
    let fact = factorial::<T>(2 * l - k) / factorial::<T>(2 * l + k + 1);
    let t = chebyshev_discrete(k, &x, &big_n)?;
    Ok(powi(&inv_scale, k as i64 + 2) * fact * t / (T::from_i64(2) * nn))
}

/// `⟨r^p⟩` in `a₀^p`, generic over the scalar.
pub fn r_power<T: Scalar>(z: &T, n: u64, l: u64, p: i64) -> Result<T> {
    check_power(l, p)?;
    if p >= -1 {
        positive_route(z, n, l, (p + 1) as u64)
    } else {
        negative_route(z, n, l, (-p - 2) as u64)
    }
}

/// Closed-form `⟨r^p⟩` in units of `a₀^p`.
pub fn expect_r_power_nr(state: &NrState, p: i32) -> Result<Expectation> {
    let v = r_power(&state.z, state.n, state.l, p as i64)?;
    Ok(Expectation::closed_form(v, p, LengthUnit::BohrRadius))
}

/// Exact `⟨r^p⟩` for rational `Z`, in units of `a₀^p`.
pub fn expect_r_power_nr_exact(z: &BigRational, n: u64, l: u64, p: i64) -> Result<BigRational> {
    if n == 0 || l >= n {
        return domain(format!("need 0 <= l < n, got n={n} l={l}"));
    }
    r_power(z, n, l, p)
}

/// `⟨r^k⟩` for `k = -1, 0, …, k_max` by the three-term recurrence from
/// `⟨1/r⟩ = Z/n²` and `⟨1⟩ = 1`.
pub fn recurrence_values<T: Scalar>(z: &T, n: u64, l: u64, k_max: u64) -> Vec<T> {
    let nn = T::from_i64(n as i64);
    let scale = nn.clone() / (T::from_i64(2) * z.clone());
    let two_l1 = T::from_i64(2 * l as i64 + 1);
    let mut out = vec![z.clone() / (nn.clone() * nn.clone()), T::one()];
    for k in 1..=k_max as i64 {
        let kk = T::from_i64(k);
        let k1 = T::from_i64(k + 1);
        let a = T::from_i64(2) * nn.clone() * T::from_i64(2 * k + 1) / k1.clone()
            * scale.clone();
        let b = kk.clone() * (two_l1.clone() * two_l1.clone() - kk.clone() * kk) / k1
            * scale.clone()
            * scale.clone();
        let len = out.len();
        let next = a * out[len - 1].clone() - b * out[len - 2].clone();
        out.push(next);
    }
    out
}

/// `⟨r^k⟩`, `k = -1..=k_max`, from the recurrence.
pub fn expect_recurrence_nr(state: &NrState, k_max: u64) -> Result<Vec<Expectation>> {
    if k_max < 1 {
        return domain("recurrence needs k_max >= 1");
    }
    Ok(recurrence_values(&state.z, state.n, state.l, k_max)
        .into_iter()
        .enumerate()
        .map(|(i, v)| Expectation::closed_form(v, i as i32 - 1, LengthUnit::BohrRadius))
        .collect())
}

/// Both sides of `⟨1/r^{k+2}⟩ = (2Z/n)^{2k+1} (2l-k)!/(2l+k+1)! ⟨r^{k-1}⟩`.
pub fn inversion_sides<T: Scalar>(z: &T, n: u64, l: u64, k: u64) -> Result<(T, T)> {
    if k > 2 * l {
        return domain(format!("inversion needs 0 <= k <= 2l (k={k}, l={l})"));
    }
    let lhs = negative_route(z, n, l, k)?;
    let inv_scale = T::from_i64(2) * z.clone() / T::from_i64(n as i64);
    let fact = factorial::<T>(2 * l - k) / factorial::<T>(2 * l + k + 1);
    let rhs = powi(&inv_scale, 2 * k as i64 + 1) * fact * positive_route(z, n, l, k)?;
    Ok((lhs, rhs))
}

pub fn inversion_check_nr(state: &NrState, k: u64) -> Result<(f64, f64)> {
    inversion_sides(&state.z, state.n, state.l, k)
}

/// Textbook forms of `⟨r^p⟩` for `p ∈ {2, 1, -1, -2, -3, -4}` (`a₀ = 1`).
pub fn textbook_value<T: Scalar>(z: &T, n: u64, l: u64, p: i64) -> Result<T> {
    let c = |v: i64| T::from_i64(v);
    let nn = c(n as i64);
    let ll = c(l as i64);
    let l_l1 = ll.clone() * (ll.clone() + c(1));
    let half = |v: i64| c(v) / c(2);
    let needs_l = |min: u64| -> Result<()> {
        if l < min {
            return domain(format!("<r^{p}> closed form needs l >= {min}"));
        }
        Ok(())
    };
    Ok(match p {
        1 => (c(3) * nn.clone() * nn.clone() - l_l1) / (c(2) * z.clone()),
        2 => {
            let s = nn.clone() / (c(2) * z.clone());
            c(2) * s.clone() * s * (c(5) * nn.clone() * nn.clone() + c(1) - c(3) * l_l1)
        }
        -1 => z.clone() / (nn.clone() * nn),
        -2 => {
            c(2) * z.clone() * z.clone()
                / (powi(&nn, 3) * (c(2) * ll + c(1)))
        }
        -3 => {
            needs_l(1)?;
            powi(z, 3)
                / (powi(&nn, 3) * (ll.clone() + c(1)) * (ll.clone() + half(1)) * ll)
        }
        -4 => {
            needs_l(1)?;
            powi(z, 4) * (c(3) * nn.clone() * nn.clone() - l_l1)
                / (c(2)
                    * powi(&nn, 5)
                    * (ll.clone() + half(3))
                    * (ll.clone() + c(1))
                    * (ll.clone() + half(1))
                    * ll.clone()
                    * (ll - half(1)))
        }
        _ => return domain(format!("no textbook form for p={p}")),
    })
}

/// `⟨r²⟩ - ⟨r⟩² = (1/2Z)²(n²(n²+2) - l²(l+1)²)`.
pub fn deviation_nr(state: &NrState) -> f64 {
    let n = state.n as f64;
    let l = state.l as f64;
    (n * n * (n * n + 2.0) - l * l * (l + 1.0) * (l + 1.0)) / (4.0 * state.z * state.z)
}

/// `(⟨U⟩, 2E)` with `⟨U⟩ = -Z⟨1/r⟩`, both in hartree.
pub fn virial_check_nr(state: &NrState) -> Result<(f64, f64)> {
    let inv_r = expect_r_power_nr(state, -1)?.value;
    Ok((-state.z * inv_r, 2.0 * energy_nr(state)))
}

/// `4/n⁴ Z³ (n-l-1)!/(n+l)! (n/2Z)^{k+3}`, turning `η`-integrals into `r`-integrals.
fn moment_prefactor(state: &NrState, k: i64) -> f64 {
    let n = state.n as f64;
    let ratio = factorial::<f64>(state.radial_degree()) / factorial::<f64>(state.n + state.l);
    4.0 / n.powi(4) * state.z.powi(3) * ratio * (n / (2.0 * state.z)).powi(k as i32 + 3)
}

fn moment_spec(state: &NrState, k: i64) -> JSpec<f64> {
    let alpha = 2.0 * state.l as f64 + 1.0;
    let deg = state.radial_degree();
    JSpec::new(deg, deg, k as f64 + 1.0, alpha, alpha)
}

/// `∫_r^∞ r'^{k+2} R² dr'`.
pub fn radial_moment_tail(state: &NrState, k: i64, r: f64) -> Result<f64> {
    Ok(moment_prefactor(state, k) * j_integral_incomplete(&moment_spec(state, k), state.eta(r))?)
}

/// `∫_0^r r'^{k+2} R² dr'`.
pub fn radial_moment_head(state: &NrState, k: i64, r: f64) -> Result<f64> {
    Ok(moment_prefactor(state, k) * j_integral_lower(&moment_spec(state, k), state.eta(r))?)
}

/// `∫_0^∞ r^{k+2} R² dr` for `k ≥ 0` through the diagonal Chebyshev form.
pub fn radial_moment_full(state: &NrState, k: u64) -> Result<f64> {
    let alpha = 2.0 * state.l as f64 + 1.0;
    Ok(moment_prefactor(state, k as i64) * j_diag_positive(state.radial_degree(), alpha, k + 1)?)
}

/// `J_{2s} - J_{2s}(r)`, switching to the direct lower integral once the
/// difference would lose more than one bit.
fn inner_moment(state: &NrState, k: u64, r: f64) -> Result<f64> {
    let full = radial_moment_full(state, k)?;
    let tail = radial_moment_tail(state, k as i64, r)?;
    if tail.abs() <= 0.5 * full.abs() {
        Ok(full - tail)
    } else {
        radial_moment_head(state, k as i64, r)
    }
}

/// `∫ r_<^{2s}/r_>^{2s+1} R² r'² dr'` split at `r`.
pub fn screening_radial_kernel(state: &NrState, s: u64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return domain(format!("screening needs r > 0, got {r}"));
    }
    let k = 2 * s;
    let inner = inner_moment(state, k, r)?;
    let outer = radial_moment_tail(state, -(k as i64) - 1, r)?;
    Ok(inner / r.powi(k as i32 + 1) + r.powi(k as i32) * outer)
}

fn multipole_weights(state: &NrState) -> Result<Vec<f64>> {
    let (l, m) = (state.l as i64, state.m);
    (0..=l)
        .map(|s| {
            let c1 = clebsch_gordan_int(l, m, 2 * s, 0, l, m)?;
            let c2 = clebsch_gordan_int(l, 0, 2 * s, 0, l, 0)?;
            Ok(c1 * c2)
        })
        .collect()
}

/// Potential of the electron cloud alone, `V_nucleus - V`, in `e/a₀`.
pub fn screening_cloud_nr(state: &NrState, r: f64, theta: f64) -> Result<f64> {
    if !(r > 0.0) {
        return domain(format!("screening needs r > 0, got {r}"));
    }
    let x = theta.cos();
    let mut acc = crate::specfun::NeumaierSum::new();
    for (s, w) in multipole_weights(state)?.into_iter().enumerate() {
        acc.add(w * legendre(2 * s as u64, x) * screening_radial_kernel(state, s as u64, r)?);
    }
    Ok(acc.value())
}

/// Electrostatic potential of nucleus plus electron cloud, in `e/a₀`.
///
/// The monopole part of the cloud is `1/r` minus the outside charge, so
/// `(Z-1)/r` is split off exactly and the rest is built from tail integrals.
pub fn screening_nr(state: &NrState, r: f64, theta: f64) -> Result<f64> {
    if !(r > 0.0) {
        return domain(format!("screening needs r > 0, got {r}"));
    }
    let x = theta.cos();
    let weights = multipole_weights(state)?;
    let mut acc = crate::specfun::NeumaierSum::new();
    acc.add((state.z - 1.0) / r);
    // s = 0: the electron charge outside r minus its potential
    acc.add(radial_moment_tail(state, 0, r)? / r - radial_moment_tail(state, -1, r)?);
    for (s, w) in weights.into_iter().enumerate().skip(1) {
        acc.add(-w * legendre(2 * s as u64, x) * screening_radial_kernel(state, s as u64, r)?);
    }
    Ok(acc.value())
}

/// Ground-state potential `(Z-1)/r + (1/r + Z) e^{-2Zr}`.
pub fn screening_ground_state(z: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return domain(format!("screening needs r > 0, got {r}"));
    }
    Ok((z - 1.0) / r + (1.0 / r + z) * (-2.0 * z * r).exp())
}
