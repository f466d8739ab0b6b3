//! Dirac–Coulomb bound states. Lengths in `ħ/mc`, energies in `mc²`, unless
//! a function says otherwise.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::angular::{angular_density_coeffs, Branch, HalfInt};
use crate::error::{domain, Error, Result};
use crate::hydrogen_nr::{expect_r_power_nr, radial_nr, NrState};
use crate::laguerre_integrals::{j_integral_incomplete, j_integral_lower, JSpec};
use crate::orthopoly::{hahn, laguerre, legendre, HahnParams, LaguerreSpec};
use crate::specfun::{
    gamma, inc_gamma_upper, ln_gamma, pochhammer, rational_from_f64, rational_to_f64,
    HypSeriesSpec, NeumaierSum, Scalar,
};
pub use crate::units::{Expectation, LengthUnit, Method};
use crate::units::FINE_STRUCTURE;

/// Below this ratio of result to largest term the float moment is flagged.
pub const CANCELLATION_THRESHOLD: f64 = 1e-6;

/// Radial quantum number, `κ`, and the charge, with the derived Sommerfeld
/// quantities. Small differences are kept separately so that `μ → 0` does
/// not cancel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelState {
    pub z: f64,
    pub nr: u64,
    pub kappa: i64,
    /// Fine-structure constant used for `μ = αZ` and for `ħ/mc = α a₀`.
    pub alpha: f64,
    pub mu: f64,
    pub nu: f64,
    /// `ε = E/mc²`
    pub eps: f64,
    pub eps_minus_one: f64,
    /// `√(1-ε²)`
    pub a: f64,
    pub kappa_minus_nu: f64,
    pub ek_minus_nu: f64,
    pub ek_plus_nu: f64,
}

impl RelState {
    pub fn new(z: f64, nr: u64, kappa: i64) -> Result<Self> {
        Self::with_alpha(z, FINE_STRUCTURE, nr, kappa)
    }

    /// A state with a non-physical `α`, for `c → ∞` studies.
    pub fn with_alpha(z: f64, alpha: f64, nr: u64, kappa: i64) -> Result<Self> {
        if !(z > 0.0) || !z.is_finite() {
            return domain(format!("Z must be positive, got {z}"));
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return domain(format!("alpha must be positive, got {alpha}"));
        }
        if kappa == 0 {
            return domain("kappa must be a nonzero integer");
        }
        let mu = alpha * z;
        let k = kappa as f64;
        let kabs = k.abs();
        if !(mu < kabs) {
            return domain(format!(
                "mu >= |kappa| (mu = {mu}, kappa = {kappa}): nu = sqrt(kappa^2 - mu^2) is not real"
            ));
        }
        if nr == 0 && kappa > 0 {
            return domain(format!("n_r = 0 needs kappa < 0, got kappa = {kappa}"));
        }
        let nu = ((kabs - mu) * (kabs + mu)).sqrt();
        let kabs_minus_nu = mu * mu / (kabs + nu);
        let big_n = nr as f64 + nu;
        let ratio = mu / big_n;
        let eps_minus_one = (-0.5 * (ratio * ratio).ln_1p()).exp_m1();
        let eps = 1.0 + eps_minus_one;
        let a = ratio * eps;
        let (kappa_minus_nu, kappa_plus_nu) = if kappa > 0 {
            (kabs_minus_nu, k + nu)
        } else {
            (k - nu, -kabs_minus_nu)
        };
        let ek_minus_nu = k * eps_minus_one + kappa_minus_nu;
        // n_r = 0 has ε = -ν/κ exactly
        let ek_plus_nu = if nr == 0 {
            0.0
        } else {
            k * eps_minus_one + kappa_plus_nu
        };
        Ok(RelState {
            z,
            nr,
            kappa,
            alpha,
            mu,
            nu,
            eps,
            eps_minus_one,
            a,
            kappa_minus_nu,
            ek_minus_nu,
            ek_plus_nu,
        })
    }

    /// State with a prescribed `μ`, keeping `Z` and adjusting `α`.
    pub fn with_mu(z: f64, mu: f64, nr: u64, kappa: i64) -> Result<Self> {
        Self::with_alpha(z, mu / z, nr, kappa)
    }

    /// From `(n_r, 2j, branch)`.
    pub fn from_two_j(z: f64, nr: u64, two_j: i64, branch: Branch) -> Result<Self> {
        if two_j < 1 || two_j % 2 == 0 {
            return domain(format!("2j must be a positive odd integer, got {two_j}"));
        }
        Self::new(z, nr, branch.kappa(HalfInt::from_twice(two_j)))
    }

    pub fn j(&self) -> HalfInt {
        HalfInt::from_twice(2 * self.kappa.abs() - 1)
    }

    pub fn branch(&self) -> Branch {
        if self.kappa > 0 {
            Branch::Plus
        } else {
            Branch::Minus
        }
    }

    /// Orbital `l` of the large component.
    pub fn orbital(&self) -> u64 {
        self.branch().orbital(self.j()) as u64
    }

    /// Nonrelativistic principal number `n_r + |κ|`.
    pub fn principal(&self) -> u64 {
        self.nr + self.kappa.unsigned_abs()
    }

    /// `ε²κ² - ν²` as a product of the two stable factors.
    pub fn ek2_minus_nu2(&self) -> f64 {
        self.ek_minus_nu * self.ek_plus_nu
    }

    /// `ξ = 2ar`, `r` in `ħ/mc`.
    pub fn xi(&self, r: f64) -> f64 {
        2.0 * self.a * r
    }

    /// Nonrelativistic partner `(Z, n_r + |κ|, l)`.
    pub fn nonrel_partner(&self) -> Result<NrState> {
        NrState::new(self.z, self.principal(), self.orbital(), 0)
    }
}

/// Sommerfeld level `ε = E/mc²`.
pub fn energy_rel(state: &RelState) -> f64 {
    state.eps
}

/// `(ε - 1) mc²` as a fraction of `mc²`, without cancellation.
pub fn binding_energy_rel(state: &RelState) -> f64 {
    state.eps_minus_one
}

/// `(c0, c2, c4)` in `ε ≈ c0 + c2 μ² + c4 μ⁴`.
pub fn fine_structure_expansion(state: &RelState) -> (f64, f64, f64) {
    let n = state.principal() as f64;
    let jh = state.kappa.unsigned_abs() as f64;
    (
        1.0,
        -1.0 / (2.0 * n * n),
        -(n / jh - 0.75) / (2.0 * n.powi(4)),
    )
}

/// `F(r)` and `G(r)` of the large and small components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialPair {
    pub f: f64,
    pub g: f64,
}

impl RadialPair {
    pub fn density(&self) -> f64 {
        self.f * self.f + self.g * self.g
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r >= 0.0) || !r.is_finite() {
        return domain(format!("radius must be finite and >= 0, got {r}"));
    }
    Ok(())
}

/// `ξ^{ν-1} e^{-ξ/2}` times `exp(ln_pref)`.
fn envelope(ln_pref: f64, nu: f64, xi: f64) -> f64 {
    if xi == 0.0 {
        return ln_pref.exp() * xi.powf(nu - 1.0);
    }
    (ln_pref + (nu - 1.0) * xi.ln() - 0.5 * xi).exp()
}

/// `(f₁, f₂, g₁, g₂)`.
pub fn transition_matrix(state: &RelState) -> (f64, f64, f64, f64) {
    let d = state.ek_minus_nu;
    (
        state.a * state.mu / d,
        state.kappa_minus_nu,
        state.a * state.kappa_minus_nu / d,
        state.mu,
    )
}

/// `ln` of `(a²/ν) √((εκ-ν) n!/(μ(κ-ν)Γ(n+2ν)))`.
fn ln_radial_norm(state: &RelState) -> Result<f64> {
    let n = state.nr as f64;
    let ln_fact = ln_gamma(n + 1.0)?;
    let ln_g = ln_gamma(n + 2.0 * state.nu)?;
    let ratio = state.ek_minus_nu / state.kappa_minus_nu;
    Ok(2.0 * state.a.ln() - state.nu.ln()
        + 0.5 * (ratio.ln() + ln_fact - state.mu.ln() - ln_g))
}

/// `(ξ L_{n-1}^{2ν+1}(ξ), L_n^{2ν-1}(ξ))`, the first zero when `n = 0`.
fn laguerre_pair(state: &RelState, xi: f64) -> (f64, f64) {
    let nu = state.nu;
    let lo = laguerre(&LaguerreSpec::new(state.nr, 2.0 * nu - 1.0), &xi);
    let hi = if state.nr == 0 {
        0.0
    } else {
        xi * laguerre(&LaguerreSpec::new(state.nr - 1, 2.0 * nu + 1.0), &xi)
    };
    (hi, lo)
}

/// `(F, G)` at `r` (in `ħ/mc`), in `(ħ/mc)^{-3/2}`.
pub fn radial_rel(state: &RelState, r: f64) -> Result<RadialPair> {
    check_radius(r)?;
    let xi = state.xi(r);
    let env = envelope(ln_radial_norm(state)?, state.nu, xi);
    let (f1, f2, g1, g2) = transition_matrix(state);
    let (hi, lo) = laguerre_pair(state, xi);
    Ok(RadialPair {
        f: env * (f1 * hi + f2 * lo),
        g: env * (g1 * hi + g2 * lo),
    })
}

/// The same functions through `L_{n-1}^{2ν}` and `L_n^{2ν}`, with the
/// normalization and coefficients of the traditional representation as
/// usually printed. For `κ < 0` this differs from [`radial_rel`] by an overall
/// sign.
pub fn radial_rel_traditional(state: &RelState, r: f64) -> Result<RadialPair> {
    check_radius(r)?;
    let xi = state.xi(r);
    let nu = state.nu;
    let n = state.nr as f64;
    let prod = state.kappa_minus_nu * state.ek_minus_nu;
    let ln_pref = 2.0 * state.a.ln()
        + 0.5 * (ln_gamma(n + 1.0)? - state.mu.ln() - prod.ln() - ln_gamma(n + 2.0 * nu)?);
    let env = envelope(ln_pref, nu, xi);
    let sp = (1.0 + state.eps).sqrt();
    let sm = (-state.eps_minus_one).sqrt();
    let plus = state.kappa_minus_nu * sp + state.mu * sm;
    let minus = state.kappa_minus_nu * sp - state.mu * sm;
    let (a1, a2) = (sp * plus, -sp * minus);
    let (b1, b2) = (sm * plus, sm * minus);
    let l1 = if state.nr == 0 {
        0.0
    } else {
        laguerre(&LaguerreSpec::new(state.nr - 1, 2.0 * nu), &xi)
    };
    let l0 = laguerre(&LaguerreSpec::new(state.nr, 2.0 * nu), &xi);
    Ok(RadialPair {
        f: env * (a1 * l1 + a2 * l0),
        g: env * (b1 * l1 + b2 * l0),
    })
}

/// `1S_{1/2}` closed form with `ξ = 2μr`, `r` in `ħ/mc`.
pub fn radial_1s(state: &RelState, r: f64) -> Result<RadialPair> {
    if state.nr != 0 || state.kappa != -1 {
        return domain("the 1S closed form needs n_r = 0, kappa = -1");
    }
    check_radius(r)?;
    let nu = state.nu;
    let xi = 2.0 * state.mu * r;
    let ln_pref =
        1.5 * (2.0 * state.mu).ln() + 0.5 * ((nu + 1.0).ln() - 2f64.ln() - ln_gamma(2.0 * nu + 1.0)?);
    let env = envelope(ln_pref, nu, xi);
    // (1-ν)/(1+ν) = μ²/(1+ν)²
    let small = state.mu / (1.0 + nu);
    Ok(RadialPair {
        f: -env,
        g: small * env,
    })
}

/// The scalars entering the moment formula, in any field.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentParams<T> {
    pub nr: u64,
    pub kappa: T,
    pub mu: T,
    pub nu: T,
    pub a: T,
    pub ek_minus_nu: T,
    pub ek_plus_nu: T,
}

impl RelState {
    pub fn moment_params(&self) -> MomentParams<f64> {
        MomentParams {
            nr: self.nr,
            kappa: self.kappa as f64,
            mu: self.mu,
            nu: self.nu,
            a: self.a,
            ek_minus_nu: self.ek_minus_nu,
            ek_plus_nu: self.ek_plus_nu,
        }
    }

    /// Exact rational images of the binary64 parameters.
    pub fn moment_params_exact(&self) -> Result<MomentParams<BigRational>> {
        Ok(MomentParams {
            nr: self.nr,
            kappa: BigRational::from_i64(self.kappa),
            mu: rational_from_f64(self.mu)?,
            nu: rational_from_f64(self.nu)?,
            a: rational_from_f64(self.a)?,
            ek_minus_nu: rational_from_f64(self.ek_minus_nu)?,
            ek_plus_nu: rational_from_f64(self.ek_plus_nu)?,
        })
    }
}

/// `Γ(x+d)/Γ(x)` for integer `d`.
fn gamma_shift<T: Scalar>(x: &T, d: i64) -> T {
    if d >= 0 {
        pochhammer(x, d as u64)
    } else {
        T::one() / pochhammer(&(x.clone() + T::from_i64(d)), (-d) as u64)
    }
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

fn check_moment_power(nu: f64, p: i64) -> Result<()> {
    if !(2.0 * nu + p as f64 + 1.0 > 0.0) {
        return domain(format!(
            "<r^{p}> diverges: need 2 nu + p + 1 > 0 (nu = {nu})"
        ));
    }
    Ok(())
}

/// The three terms of `4μν²(2a)^p ⟨r^p⟩` with their magnitudes, the latter
/// including the largest summand of each `3F2`.
pub fn moment_terms<T: Scalar>(m: &MomentParams<T>, p: i64) -> Result<([T; 3], [f64; 3])> {
    let c = |v: i64| T::from_i64(v);
    let two_nu = c(2) * m.nu.clone();
    let n = m.nr as i64;
    let mut terms = [T::zero(), T::zero(), T::zero()];
    let mut mags = [0.0; 3];
    if n > 0 {
        let (s1, sc1) = HypSeriesSpec::unit(
            vec![c(1 - n), c(p + 2), c(-p - 1)],
            vec![two_nu.clone() + c(2), c(1)],
        )
        .sum_with_scale()?;
        let k1 = m.a.clone() * m.kappa.clone() * m.ek_plus_nu.clone()
            * gamma_shift(&(two_nu.clone() + c(2)), p + 1);
        mags[0] = k1.magnitude() * sc1;
        terms[0] = k1 * s1;
        let (s2, sc2) = HypSeriesSpec::unit(
            vec![c(1 - n), c(p + 3), c(-p)],
            vec![two_nu.clone() + c(2), c(2)],
        )
        .sum_with_scale()?;
        let k2 = -(c(2) * c(p + 2))
            * m.mu.clone()
            * m.ek_minus_nu.clone()
            * m.ek_plus_nu.clone()
            * gamma_shift(&(two_nu.clone() + c(2)), p);
        mags[1] = k2.magnitude() * sc2;
        terms[1] = k2 * s2;
    }
    let (s3, sc3) = HypSeriesSpec::unit(vec![c(-n), c(p + 2), c(-p - 1)], vec![two_nu.clone(), c(1)])
        .sum_with_scale()?;
    let k3 = m.a.clone() * m.kappa.clone() * m.ek_minus_nu.clone() * gamma_shift(&two_nu, p + 1);
    mags[2] = k3.magnitude() * sc3;
    terms[2] = k3 * s3;
    Ok((terms, mags))
}

/// `⟨r^p⟩` from the three-term closed form, in `(ħ/mc)^p`.
pub fn moment_closed_form<T: Scalar>(m: &MomentParams<T>, p: i64) -> Result<T> {
    let (terms, _) = moment_terms(m, p)?;
    let lhs = c4_mu_nu2(m) * powi(&(T::from_i64(2) * m.a.clone()), p);
    Ok(T::sum_all(terms) / lhs)
}

fn c4_mu_nu2<T: Scalar>(m: &MomentParams<T>) -> T {
    T::from_i64(4) * m.mu.clone() * m.nu.clone() * m.nu.clone()
}

/// Float evaluation with a cancellation report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEvaluation {
    pub value: f64,
    /// Largest term magnitude relative to the result's scale.
    pub largest_term: f64,
    pub sum: f64,
    pub flagged: bool,
}

/// Float evaluation of the closed form; `flagged` when the terms cancel below
/// [`CANCELLATION_THRESHOLD`].
pub fn moment_evaluate(state: &RelState, p: i32) -> Result<MomentEvaluation> {
    check_moment_power(state.nu, p as i64)?;
    let m = state.moment_params();
    let (terms, mags) = moment_terms(&m, p as i64)?;
    let sum = f64::sum_all(terms);
    let largest = mags.iter().copied().fold(0.0, f64::max);
    let value = sum / (c4_mu_nu2(&m) * (2.0 * m.a).powi(p));
    Ok(MomentEvaluation {
        value,
        largest_term: largest,
        sum,
        flagged: sum.abs() < CANCELLATION_THRESHOLD * largest,
    })
}

/// `⟨r^p⟩` in `(ħ/mc)^p`; flagged float results are recomputed exactly from
/// the rational images of the state parameters.
pub fn expect_r_power_rel(state: &RelState, p: i32) -> Result<Expectation> {
    let ev = moment_evaluate(state, p)?;
    let value = if ev.flagged {
        rational_to_f64(&expect_r_power_rel_exact(state, p)?)
    } else {
        ev.value
    };
    Ok(Expectation::closed_form(value, p, LengthUnit::ComptonReduced))
}

/// The closed form evaluated in exact arithmetic at the state's binary64
/// parameters.
pub fn expect_r_power_rel_exact(state: &RelState, p: i32) -> Result<BigRational> {
    check_moment_power(state.nu, p as i64)?;
    moment_closed_form(&state.moment_params_exact()?, p as i64)
}

/// The explicit low-order moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialCase {
    R2,
    R1,
    One,
    Rm1,
    Rm2,
    Rm3,
}

impl SpecialCase {
    pub const ALL: [SpecialCase; 6] = [
        SpecialCase::R2,
        SpecialCase::R1,
        SpecialCase::One,
        SpecialCase::Rm1,
        SpecialCase::Rm2,
        SpecialCase::Rm3,
    ];

    pub fn power(self) -> i32 {
        match self {
            SpecialCase::R2 => 2,
            SpecialCase::R1 => 1,
            SpecialCase::One => 0,
            SpecialCase::Rm1 => -1,
            SpecialCase::Rm2 => -2,
            SpecialCase::Rm3 => -3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SpecialCase::R2 => "r2",
            SpecialCase::R1 => "r1",
            SpecialCase::One => "one",
            SpecialCase::Rm1 => "rm1",
            SpecialCase::Rm2 => "rm2",
            SpecialCase::Rm3 => "rm3",
        }
    }
}

impl fmt::Display for SpecialCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpecialCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SpecialCase::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown special case {s:?}")))
    }
}

/// Explicit forms of `⟨r²⟩ … ⟨r⁻³⟩`, in `(ħ/mc)^p`.
pub fn expect_special_rel(state: &RelState, case: SpecialCase) -> Result<Expectation> {
    let (n, nu, eps, a, mu) = (state.nr as f64, state.nu, state.eps, state.a, state.mu);
    let k = state.kappa as f64;
    let ek = eps * k;
    let value = match case {
        SpecialCase::R2 => {
            (5.0 * n * (n + 2.0 * nu) + 4.0 * nu * nu + 1.0 - ek * (2.0 * ek + 3.0)) / (2.0 * a * a)
        }
        SpecialCase::R1 => (3.0 * eps * n * (n + 2.0 * nu) + k * (2.0 * ek - 1.0)) / (2.0 * mu),
        SpecialCase::One => 1.0,
        SpecialCase::Rm1 => a * a * (eps * k * k - mu * a * n) / (mu * nu * nu),
        SpecialCase::Rm2 => {
            if !(nu > 0.5) {
                return domain(format!("<1/r^2> diverges: need nu > 1/2 (nu = {nu})"));
            }
            2.0 * a.powi(3) * k * (2.0 * ek - 1.0) / (mu * nu * (4.0 * nu * nu - 1.0))
        }
        SpecialCase::Rm3 => {
            if !(nu > 1.0) {
                return domain(format!("<1/r^3> diverges: need nu > 1 (nu = {nu})"));
            }
            2.0 * a.powi(3) * (3.0 * ek * ek - 3.0 * ek - nu * nu + 1.0)
                / (nu * (nu * nu - 1.0) * (4.0 * nu * nu - 1.0))
        }
    };
    Ok(Expectation::closed_form(
        value,
        case.power(),
        LengthUnit::ComptonReduced,
    ))
}

/// `⟨1/r⟩` in the `β(1-ε²)(εν + μ√(1-ε²))/(μν)` arrangement.
pub fn inverse_r_energy_form(state: &RelState) -> f64 {
    let a = state.a;
    a * a * (state.eps * state.nu + state.mu * a) / (state.mu * state.nu)
}

/// Which Hahn-polynomial representation to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HahnForm {
    /// `⟨r^p⟩`, `p ≥ 0`
    Positive,
    /// `⟨1/r^{p+3}⟩`, `p ≥ 0`
    Negative,
}

/// `h_{p+1}^{(0,0)}(n-1, -1-2ν)`, `h_p^{(1,1)}(n-1, -1-2ν)`, `h_{p+1}^{(0,0)}(n, 1-2ν)`.
fn hahn_triple(state: &RelState, p: u64) -> Result<(f64, f64, f64)> {
    let two_nu = 2.0 * state.nu;
    let n = state.nr as f64;
    let h3 = hahn(&HahnParams::chebyshev(p + 1, 1.0 - two_nu), &n)?;
    if state.nr == 0 {
        return Ok((0.0, 0.0, h3));
    }
    let h1 = hahn(&HahnParams::chebyshev(p + 1, -1.0 - two_nu), &(n - 1.0))?;
    let h2 = hahn(&HahnParams::new(p, 1.0, 1.0, -1.0 - two_nu), &(n - 1.0))?;
    Ok((h1, h2, h3))
}

/// Moments through Hahn polynomials at negative `N`.
pub fn expect_hahn_form_rel(state: &RelState, p: u64, which: HahnForm) -> Result<Expectation> {
    let (nu, a, mu) = (state.nu, state.a, state.mu);
    let k = state.kappa as f64;
    let (h1, h2, h3) = hahn_triple(state, p)?;
    let c1 = a * k * state.ek_plus_nu;
    let c2 = mu * state.ek2_minus_nu2();
    let c3 = a * k * state.ek_minus_nu;
    let pf = p as f64;
    let lhs = 4.0 * mu * nu * nu;
    match which {
        HahnForm::Positive => {
            let mut acc = NeumaierSum::new();
            acc.add(c1 * h1);
            acc.add(-2.0 * (pf + 2.0) / (pf + 1.0) * c2 * h2);
            acc.add(c3 * h3);
            Ok(Expectation::closed_form(
                acc.value() / (lhs * (2.0 * a).powi(p as i32)),
                p as i32,
                LengthUnit::ComptonReduced,
            ))
        }
        HahnForm::Negative => {
            let two_nu = 2.0 * nu;
            if !(two_nu - pf - 2.0 > 0.0) {
                return domain(format!(
                    "<1/r^{}> diverges: need 2 nu - p - 2 > 0 (nu = {nu})",
                    p + 3
                ));
            }
            let width = 2 * p + 3;
            let mut acc = NeumaierSum::new();
            acc.add(c1 * h1 / pochhammer(&(two_nu - pf), width));
            acc.add(2.0 * c2 * h2 / pochhammer(&(two_nu - pf - 1.0), width));
            acc.add(c3 * h3 / pochhammer(&(two_nu - pf - 2.0), width));
            let power = -(p as i32) - 3;
            Ok(Expectation::closed_form(
                acc.value() * (2.0 * a).powi(p as i32 + 3) / lhs,
                power,
                LengthUnit::ComptonReduced,
            ))
        }
    }
}

/// Both sides of `h_{p+1}^{(0,0)}(n,-2ν) - h_{p+1}^{(0,0)}(n-1,-2ν) = (p+2) h_p^{(1,1)}(n-1,-1-2ν)`.
pub fn difference_identity_sides<T: Scalar>(n: u64, p: u64, nu: &T) -> Result<(T, T)> {
    let two_nu = T::from_i64(2) * nu.clone();
    let x = T::from_i64(n as i64);
    let xm = x.clone() - T::one();
    let t = HahnParams::chebyshev(p + 1, -two_nu.clone());
    let lhs = hahn(&t, &x)? - hahn(&t, &xm)?;
    let h11 = HahnParams::new(p, T::one(), T::one(), -T::one() - two_nu);
    let rhs = T::from_i64(p as i64 + 2) * hahn(&h11, &xm)?;
    Ok((lhs, rhs))
}

/// Residuals of the quantization rule and of `a²n(2ν+n) = ε²κ²-ν²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    /// `|εμ - a(ν+n)|`
    pub quantization_residual: f64,
    pub product_lhs: f64,
    pub product_rhs: f64,
    /// Relative to the size of the factors on the right.
    pub product_residual: f64,
}

pub fn identity_checks_rel(state: &RelState) -> IdentityReport {
    let n = state.nr as f64;
    let quant = (state.eps * state.mu - state.a * (state.nu + n)).abs();
    let lhs = state.a * state.a * n * (2.0 * state.nu + n);
    let rhs = state.ek2_minus_nu2();
    let k = state.kappa as f64;
    let scale = lhs
        .abs()
        .max(rhs.abs())
        .max((k * state.eps_minus_one).abs() * state.ek_minus_nu.abs());
    let product_residual = if scale > 0.0 {
        (lhs - rhs).abs() / scale
    } else {
        0.0
    };
    IdentityReport {
        quantization_residual: quant,
        product_lhs: lhs,
        product_rhs: rhs,
        product_residual,
    }
}

/// Convergence of one quantity along a `μ` sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitRow {
    pub quantity: String,
    pub mu: Vec<f64>,
    pub errors: Vec<f64>,
    /// `errors[i] / errors[i+1]`
    pub ratios: Vec<f64>,
    /// Ratio per halving of `μ` for the expected power law.
    pub expected_ratio: f64,
}

impl LimitRow {
    fn new(quantity: String, mu: &[f64], errors: Vec<f64>, expected_ratio: f64) -> Self {
        let ratios = errors.windows(2).map(|w| w[0] / w[1]).collect();
        LimitRow {
            quantity,
            mu: mu.to_vec(),
            errors,
            ratios,
            expected_ratio,
        }
    }

    /// All ratios within `[lo, hi]` times the expected one over four.
    pub fn within(&self, lo: f64, hi: f64) -> bool {
        let s = self.expected_ratio / 4.0;
        self.ratios.iter().all(|r| *r >= lo * s && *r <= hi * s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitReport {
    pub rows: Vec<LimitRow>,
    /// `F` has the sign of `κ` times `R` at the sampled radius.
    pub sign_ok: bool,
}

impl LimitReport {
    /// Every row's ratios within `[3, 5]` scaled to its expected power.
    pub fn passes(&self) -> bool {
        self.sign_ok && self.rows.iter().all(|r| r.within(3.0, 5.0))
    }
}

fn check_mu_sequence(mus: &[f64]) -> Result<()> {
    if mus.len() < 2 || mus.windows(2).any(|w| !(w[1] < w[0])) || !(mus[mus.len() - 1] > 0.0) {
        return domain("the mu sequence must be positive and strictly decreasing");
    }
    Ok(())
}

/// `c → ∞` checks at fixed `(Z, n_r, κ)`: moments against the
/// nonrelativistic ones, `ν - |κ|` against `-μ²/2|κ|`, and `F → ±R`, `G → 0`.
pub fn nonrel_limit_suite(
    template: &RelState,
    mus: &[f64],
    powers: &[i32],
) -> Result<LimitReport> {
    check_mu_sequence(mus)?;
    let (z, nr, kappa) = (template.z, template.nr, template.kappa);
    let states: Vec<RelState> = mus
        .iter()
        .map(|&mu| RelState::with_mu(z, mu, nr, kappa))
        .collect::<Result<_>>()?;
    let nr_state = template.nonrel_partner()?;
    let mut rows = Vec::new();
    for &p in powers {
        let target = expect_r_power_nr(&nr_state, p)?.value;
        let errors = states
            .iter()
            .map(|s| {
                let v = expect_r_power_rel(s, p)?.value * s.alpha.powi(p);
                Ok((v - target).abs() / target.abs())
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(LimitRow::new(format!("r^{p}"), mus, errors, 4.0));
    }
    let kabs = kappa.unsigned_abs() as f64;
    let nu_err = states
        .iter()
        .map(|s| {
            let lead = -s.mu * s.mu / (2.0 * kabs);
            // ν - |κ| = -μ²/(|κ| + ν)
            let exact = -s.mu * s.mu / (kabs + s.nu);
            (exact / lead - 1.0).abs()
        })
        .collect();
    rows.push(LimitRow::new("nu".into(), mus, nu_err, 4.0));

    let n = nr_state.n as f64;
    let radii: Vec<f64> = (1..=12).map(|i| 0.25 * i as f64 * n * n / nr_state.z).collect();
    let r_max = radii
        .iter()
        .map(|&r| radial_nr(&nr_state, r).abs())
        .fold(0.0, f64::max);
    let sign = if kappa > 0 { 1.0 } else { -1.0 };
    let mut f_err = Vec::new();
    let mut g_err = Vec::new();
    for s in &states {
        let scale = s.alpha.powf(-1.5);
        let (mut fe, mut ge) = (0.0f64, 0.0f64);
        for &r in &radii {
            let pair = radial_rel(s, r / s.alpha)?;
            let rv = radial_nr(&nr_state, r);
            fe = fe.max((pair.f * scale - sign * rv).abs());
            ge = ge.max((pair.g * scale).abs());
        }
        f_err.push(fe / r_max);
        g_err.push(ge / r_max);
    }
    rows.push(LimitRow::new("F".into(), mus, f_err, 4.0));
    rows.push(LimitRow::new("G".into(), mus, g_err, 2.0));

    let probe = 0.5 / nr_state.z;
    let last = &states[states.len() - 1];
    let f = radial_rel(last, probe / last.alpha)?.f;
    let rv = radial_nr(&nr_state, probe);
    let sign_ok = f * rv * sign > 0.0;
    Ok(LimitReport { rows, sign_ok })
}

fn check_screening_radius(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return domain(format!("screening needs r > 0, got {r}"));
    }
    Ok(())
}

/// `1S_{1/2}` potential in `e/a₀`, `r` in `a₀`.
pub fn screening_rel_1s(z: f64, r: f64) -> Result<f64> {
    screening_rel_1s_with_alpha(z, FINE_STRUCTURE, r)
}

/// [`screening_rel_1s`] for a given `α`.
pub fn screening_rel_1s_with_alpha(z: f64, alpha: f64, r: f64) -> Result<f64> {
    check_screening_radius(r)?;
    let state = RelState::with_alpha(z, alpha, 0, -1)?;
    let nu = state.nu;
    let x = 2.0 * z * r;
    let g1 = gamma(2.0 * nu + 1.0);
    let near = ((2.0 * nu) * (2.0 * z).ln() + (2.0 * nu - 1.0) * r.ln() - x).exp() / g1;
    let outer = inc_gamma_upper(2.0 * nu, x)? / g1 * (2.0 * nu / r - 2.0 * z);
    Ok((z - 1.0) / r + near + outer)
}

/// `∫ (F² + G²) r^{q+2} dr` over `[r, ∞)` (or `[0, r]` when `lower`), `r` in `ħ/mc`.
pub fn rel_moment_piece(state: &RelState, q: i64, r: f64, lower: bool) -> Result<f64> {
    let nu = state.nu;
    let n = state.nr;
    let xi = state.xi(r);
    let (f1, f2, g1, g2) = transition_matrix(state);
    let eval = |spec: JSpec<f64>| {
        if lower {
            j_integral_lower(&spec, xi)
        } else {
            j_integral_incomplete(&spec, xi)
        }
    };
    let qf = q as f64;
    let mut acc = NeumaierSum::new();
    acc.add((f2 * f2 + g2 * g2) * eval(JSpec::new(n, n, qf + 1.0, 2.0 * nu - 1.0, 2.0 * nu - 1.0))?);
    if n > 0 {
        acc.add(
            2.0 * (f1 * f2 + g1 * g2)
                * eval(JSpec::new(n, n - 1, qf + 2.0, 2.0 * nu - 1.0, 2.0 * nu + 1.0))?,
        );
        acc.add(
            (f1 * f1 + g1 * g1)
                * eval(JSpec::new(n - 1, n - 1, qf + 1.0, 2.0 * nu + 1.0, 2.0 * nu + 1.0))?,
        );
    }
    let ln_norm = 2.0 * ln_radial_norm(state)? - (qf + 3.0) * (2.0 * state.a).ln();
    Ok(ln_norm.exp() * acc.value())
}

/// Potential `V(r, θ)` in `e/a₀` of a relativistic state with projection `m`,
/// `r` in `a₀`. The monopole is arranged as for the nonrelativistic case.
pub fn screening_rel(state: &RelState, m: HalfInt, r: f64, theta: f64) -> Result<f64> {
    check_screening_radius(r)?;
    let coeffs = angular_density_coeffs(state.j(), m)?;
    let rc = r / state.alpha;
    let x = theta.cos();
    let mut acc = NeumaierSum::new();
    acc.add((state.z - 1.0) / r);
    // e/(ħ/mc) = (1/α) e/a₀
    let tail0 = rel_moment_piece(state, 0, rc, false)?;
    let tail_m1 = rel_moment_piece(state, -1, rc, false)?;
    acc.add((tail0 / rc - tail_m1) / state.alpha);
    for (s, a_s) in coeffs.iter().enumerate().skip(1) {
        let k = 2 * s as i64;
        let weight = 4.0 * std::f64::consts::PI * a_s / (4 * s + 1) as f64;
        let full = expect_r_power_rel(state, k as i32)?.value;
        let tail = rel_moment_piece(state, k, rc, false)?;
        let inner = if tail.abs() <= 0.5 * full.abs() {
            full - tail
        } else {
            rel_moment_piece(state, k, rc, true)?
        };
        let outer = rel_moment_piece(state, -k - 1, rc, false)?;
        let kernel = inner / rc.powi(k as i32 + 1) + rc.powi(k as i32) * outer;
        acc.add(-weight * legendre(k as u64, x) * kernel / state.alpha);
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_expect_rel, quad_interval, quad_semi_infinite, DEFAULT_BUDGET};
    use crate::specfun::rational;

    const KAPPAS: [i64; 6] = [-1, 1, -2, 2, -3, 3];

    fn states(zs: &[f64], nr_max: u64) -> Vec<RelState> {
        let mut out = Vec::new();
        for &z in zs {
            for nr in 0..=nr_max {
                for k in KAPPAS {
                    if let Ok(s) = RelState::new(z, nr, k) {
                        out.push(s);
                    }
                }
            }
        }
        out
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs())
    }

    #[test]
    fn state_validation() {
        assert!(RelState::new(1.0, 0, 1).is_err());
        let e = RelState::new(200.0, 0, -1).unwrap_err().to_string();
        assert!(e.contains("mu >= |kappa|"), "{e}");
        assert!(RelState::new(1.0, 0, 0).is_err());
        let s = RelState::new(1.0, 2, -2).unwrap();
        assert_eq!(s.orbital(), 1);
        assert_eq!(s.principal(), 4);
        assert_eq!(s.j(), HalfInt::from_twice(3));
        assert_eq!(RelState::new(1.0, 1, 2).unwrap().orbital(), 2);
        let t = RelState::from_two_j(1.0, 1, 3, Branch::Plus).unwrap();
        assert_eq!(t.kappa, 2);
    }

    #[test]
    fn sommerfeld_levels() {
        let s = RelState::new(1.0, 0, -1).unwrap();
        assert!((energy_rel(&s) - (1.0 - s.mu * s.mu).sqrt()).abs() < 1e-15);
        assert!((energy_rel(&s) - 0.999_973_374).abs() < 1e-9);
        // fixed point of εμ = a(ν+n)
        for st in states(&[1.0, 40.0, 92.0], 4) {
            let r = identity_checks_rel(&st);
            assert!(r.quantization_residual <= 1e-14, "{st:?} {r:?}");
            assert!(r.product_residual <= 1e-13, "{st:?} {r:?}");
        }
        let tiny = RelState::with_mu(1.0, 1e-9, 0, -1).unwrap();
        assert!((energy_rel(&tiny) - 1.0).abs() < 1e-15);
        assert!(binding_energy_rel(&tiny) < 0.0);
    }

    #[test]
    fn identity_examples() {
        for (z, nr, k) in [(30.0, 3, 2), (92.0, 1, -1)] {
            let r = identity_checks_rel(&RelState::new(z, nr, k).unwrap());
            assert!(r.product_residual <= 1e-13, "{r:?}");
            assert!(r.product_lhs > 0.0);
        }
        let r = identity_checks_rel(&RelState::new(10.0, 0, -2).unwrap());
        assert_eq!(r.product_lhs, 0.0);
        assert_eq!(r.product_rhs, 0.0);
    }

    #[test]
    fn fine_structure_coefficients() {
        let s = RelState::new(1.0, 0, -1).unwrap();
        assert_eq!(fine_structure_expansion(&s), (1.0, -0.5, -0.125));
        let s = RelState::new(1.0, 1, -1).unwrap();
        assert_eq!(fine_structure_expansion(&s).1, -0.125);
        for nr in 0..3 {
            let mut prev: Option<f64> = None;
            for mu in [4e-3, 2e-3, 1e-3] {
                let st = RelState::with_mu(1.0, mu, nr, -1).unwrap();
                let (_, c2, c4) = fine_structure_expansion(&st);
                let err = (st.eps_minus_one - (c2 * mu * mu + c4 * mu.powi(4))).abs();
                if let Some(p) = prev {
                    let ratio = p / err;
                    assert!((55.0..=73.0).contains(&ratio), "nr={nr} ratio={ratio}");
                }
                prev = Some(err);
            }
        }
    }

    fn normalization(st: &RelState) -> f64 {
        let sigma = 2.0 * st.nu;
        let scale = 1.0 / (2.0 * st.a);
        // integrate in ξ
        let q = quad_semi_infinite(
            |xi| {
                let r = xi * scale;
                radial_rel(st, r).unwrap().density() * r * r * scale
            },
            sigma,
            1.0,
            1e-12,
        )
        .unwrap();
        q.value
    }

    #[test]
    fn radial_functions() {
        for z in [1.0, 20.0, 80.0] {
            for nr in 0..=4 {
                for k in [-1, 1, -2, 2, -3] {
                    let Ok(st) = RelState::new(z, nr, k) else { continue };
                    let norm = normalization(&st);
                    assert!((norm - 1.0).abs() < 1e-10, "{st:?} norm={norm}");
                }
            }
        }
        let st = RelState::new(80.0, 0, -1).unwrap();
        for r in [1e-4, 0.01, 0.3, 2.0] {
            let a = radial_rel(&st, r / st.a).unwrap();
            let b = radial_1s(&st, r / st.a).unwrap();
            assert!(rel(a.f, b.f) < 1e-12 && rel(a.g, b.g) < 1e-12, "{a:?} {b:?}");
            assert!(a.f < 0.0 && a.g > 0.0);
            let ratio = ((1.0 - st.nu) / (1.0 + st.nu)).sqrt();
            assert!(rel(-a.g / a.f, ratio) < 1e-12);
        }
    }

    #[test]
    fn traditional_form_matches_up_to_phase() {
        for st in states(&[1.0, 40.0, 92.0], 4) {
            let phase = if st.kappa > 0 { 1.0 } else { -1.0 };
            let mut xi = 1e-3;
            while xi <= 30.0 {
                let r = xi / (2.0 * st.a);
                let a = radial_rel(&st, r).unwrap();
                let b = radial_rel_traditional(&st, r).unwrap();
                let scale = a.f.abs().max(a.g.abs());
                assert!(
                    (phase * a.f - b.f).abs() <= 1e-11 * scale
                        && (phase * a.g - b.g).abs() <= 1e-11 * scale,
                    "{st:?} xi={xi} {a:?} {b:?}"
                );
                xi *= 1.7;
            }
        }
    }

    #[test]
    fn moments_against_quadrature() {
        for st in states(&[1.0, 40.0, 92.0], 3) {
            for p in -3..=4 {
                if !(2.0 * st.nu + p as f64 + 1.0 > 0.0) || (p == -3 && !(st.nu > 1.0)) {
                    continue;
                }
                let closed = expect_r_power_rel(&st, p).unwrap().value;
                let brute = brute_expect_rel(st.mu, st.nr, st.kappa, p, 1e-12).unwrap();
                assert!(rel(closed, brute) < 1e-9, "{st:?} p={p} {closed} {brute}");
            }
        }
    }

    #[test]
    fn normalization_from_closed_form() {
        for z in [1.0, 10.0, 40.0, 92.0] {
            for nr in 0..=8 {
                for k in -6..=6i64 {
                    let Ok(st) = RelState::new(z, nr, k) else { continue };
                    let v = expect_r_power_rel(&st, 0).unwrap().value;
                    assert!((v - 1.0).abs() < 1e-12, "{st:?} {v}");
                }
            }
        }
    }

    #[test]
    fn divergent_powers_rejected() {
        let st = RelState::new(92.0, 0, -1).unwrap();
        assert!(expect_r_power_rel(&st, -2).is_ok());
        assert!(expect_r_power_rel(&st, -3).is_err());
        assert!(expect_special_rel(&st, SpecialCase::Rm3).is_err());
    }

    #[test]
    fn special_cases_match_closed_form() {
        for st in states(&[1.0, 40.0, 92.0], 6) {
            for case in SpecialCase::ALL {
                let Ok(sp) = expect_special_rel(&st, case) else { continue };
                let cf = expect_r_power_rel(&st, case.power()).unwrap().value;
                assert!(rel(sp.value, cf) < 1e-11, "{st:?} {case} {} {cf}", sp.value);
            }
            let e = inverse_r_energy_form(&st);
            let c = expect_special_rel(&st, SpecialCase::Rm1).unwrap().value;
            assert!(rel(e, c) < 1e-13, "{st:?}");
        }
        assert_eq!("rm2".parse::<SpecialCase>().unwrap(), SpecialCase::Rm2);
        assert!("rm4".parse::<SpecialCase>().is_err());
    }

    #[test]
    fn ground_state_rm2() {
        let st = RelState::new(50.0, 0, -1).unwrap();
        let (a, nu) = (st.a, st.nu);
        let eps = nu;
        let v = 2.0 * a.powi(3) * -(-2.0 * eps - 1.0) / (st.mu * nu * (4.0 * nu * nu - 1.0));
        let cf = expect_r_power_rel(&st, -2).unwrap().value;
        assert!(rel(v, cf) < 1e-12);
    }

    #[test]
    fn nonrel_mean_radius() {
        for (nr, k) in [(0, -1), (1, -1), (1, 1), (0, -2), (1, 2)] {
            let st = RelState::with_mu(1.0, 1e-5, nr, k).unwrap();
            let nrs = st.nonrel_partner().unwrap();
            let (n, l) = (nrs.n as f64, nrs.l as f64);
            let r1 = expect_special_rel(&st, SpecialCase::R1).unwrap().value * st.alpha;
            assert!(rel(r1, (3.0 * n * n - l * (l + 1.0)) / 2.0) < 1e-8);
        }
    }

    #[test]
    fn hahn_forms() {
        for st in states(&[1.0, 40.0, 92.0], 5) {
            for p in 0..=4u64 {
                let h = expect_hahn_form_rel(&st, p, HahnForm::Positive).unwrap();
                let c = expect_r_power_rel(&st, p as i32).unwrap();
                assert!(rel(h.value, c.value) < 1e-10, "{st:?} p={p}");
                if 2.0 * st.nu - p as f64 - 2.0 > 0.0 {
                    let h = expect_hahn_form_rel(&st, p, HahnForm::Negative).unwrap();
                    let c = expect_r_power_rel(&st, -(p as i32) - 3).unwrap();
                    assert_eq!(h.length_power, -(p as i32) - 3);
                    assert!(rel(h.value, c.value) < 1e-10, "{st:?} p=-{}", p + 3);
                } else {
                    assert!(expect_hahn_form_rel(&st, p, HahnForm::Negative).is_err());
                }
            }
            let one = expect_hahn_form_rel(&st, 0, HahnForm::Positive).unwrap();
            assert!((one.value - 1.0).abs() < 1e-12);
            let r1 = expect_hahn_form_rel(&st, 1, HahnForm::Positive).unwrap().value;
            let sp = expect_special_rel(&st, SpecialCase::R1).unwrap().value;
            assert!(rel(r1, sp) < 1e-11);
        }
    }

    #[test]
    fn difference_identity_exact() {
        for nu in [rational(7, 10), rational(3, 2), rational(41, 17)] {
            for n in 0..=6 {
                for p in 0..=5 {
                    let (l, r) = difference_identity_sides(n, p, &nu).unwrap();
                    assert_eq!(l, r, "n={n} p={p} nu={nu}");
                }
            }
        }
    }

    #[test]
    fn exact_fallback_agrees() {
        for st in states(&[1.0, 92.0], 3) {
            for p in -1..=4 {
                let f = moment_evaluate(&st, p).unwrap();
                let e = rational_to_f64(&expect_r_power_rel_exact(&st, p).unwrap());
                assert!(rel(f.value, e) < 1e-12, "{st:?} p={p}");
            }
        }
    }

    #[test]
    fn nonrel_limits() {
        let mus = [0.02, 0.01, 0.005];
        for (nr, k) in [(0, -1), (1, -1), (1, 1), (0, -2), (1, 2), (2, -1)] {
            let st = RelState::new(1.0, nr, k).unwrap();
            let rep = nonrel_limit_suite(&st, &mus, &[-1, 1, 2]).unwrap();
            for row in &rep.rows {
                assert!(row.within(3.0, 5.0), "nr={nr} k={k} {row:?}");
            }
            assert!(rep.sign_ok, "nr={nr} k={k}");
        }
        let st = RelState::with_mu(1.0, 0.0, 0, -1);
        assert!(st.is_err());
        let st = RelState::with_mu(1.0, 1e-300, 0, -3).unwrap();
        assert_eq!(st.nu, 3.0);
    }

    #[test]
    fn inverse_radius_limit_rate() {
        let mut prev = None;
        for mu in [0.02, 0.01, 0.005] {
            let st = RelState::with_mu(1.0, mu, 0, -1).unwrap();
            let v = expect_r_power_rel(&st, -1).unwrap().value * st.alpha.powi(-1);
            let err = (v - 1.0).abs();
            if let Some(p) = prev {
                let ratio: f64 = p / err;
                assert!((3.0..=5.0).contains(&ratio), "{ratio}");
            }
            prev = Some(err);
        }
    }

    fn screening_quadrature(z: f64, r: f64) -> f64 {
        let st = RelState::new(z, 0, -1).unwrap();
        let alpha = st.alpha;
        // density per a₀³ at radius x a₀
        let rho = |x: f64| {
            if x <= 0.0 {
                return 0.0;
            }
            radial_rel(&st, x / alpha).unwrap().density() / alpha.powi(3)
        };
        let sigma = 2.0 * st.nu;
        let norm = quad_semi_infinite(|x| rho(x) * x * x, sigma, 2.0 * z, 1e-12)
            .unwrap()
            .value;
        let head = quad_interval(|x| rho(x) * x * x, 0.0, r, 1e-12, DEFAULT_BUDGET)
            .unwrap()
            .value;
        let tail = quad_semi_infinite(|t| rho(r + t) * (r + t), 0.0, 2.0 * z, 1e-12)
            .unwrap()
            .value;
        z / r - (head / r + tail) / norm
    }

    #[test]
    fn screening_1s() {
        let v = screening_rel_1s(80.0, 0.01).unwrap();
        let q = screening_quadrature(80.0, 0.01);
        assert!(rel(v, q) < 1e-8, "{v} {q}");
        for r in [0.05, 0.5, 3.0] {
            let v = screening_rel_1s(20.0, r).unwrap();
            assert!(rel(v, screening_quadrature(20.0, r)) < 1e-8);
        }
        let v = screening_rel_1s(3.0, 50.0).unwrap();
        assert!((50.0 * v - 2.0).abs() < 1e-6);
        let r = 1e-6;
        let v = screening_rel_1s(3.0, r).unwrap();
        assert!((r * v - 3.0).abs() < 1e-5, "{}", r * v);
        assert!(screening_rel_1s(1.0 / FINE_STRUCTURE, 1.0).is_err());
    }

    #[test]
    fn screening_1s_nonrel_limit() {
        let target = crate::hydrogen_nr::screening_ground_state(1.0, 1.0).unwrap();
        assert!((target - 2.0 * (-2.0f64).exp()).abs() < 1e-15);
        let mut prev = None;
        for alpha in [0.02, 0.01, 0.005] {
            let v = screening_rel_1s_with_alpha(1.0, alpha, 1.0).unwrap();
            let err = (v - target).abs();
            if let Some(p) = prev {
                let ratio: f64 = p / err;
                assert!((3.0..=5.0).contains(&ratio), "{ratio}");
            }
            prev = Some(err);
        }
    }

    #[test]
    fn general_screening_reduces_to_1s() {
        let st = RelState::new(40.0, 0, -1).unwrap();
        for r in [0.001, 0.02, 0.3, 2.0] {
            let a = screening_rel(&st, HalfInt::HALF, r, 0.4).unwrap();
            let b = screening_rel_1s(40.0, r).unwrap();
            assert!(rel(a, b) < 1e-11, "r={r} {a} {b}");
        }
    }

    #[test]
    fn general_screening_against_quadrature() {
        for (z, nr, k, tm) in [(20.0, 1, 1, 1), (30.0, 0, -2, 3), (30.0, 1, 2, -1), (10.0, 1, -3, 1)] {
            let st = RelState::new(z, nr, k).unwrap();
            let m = HalfInt::from_twice(tm);
            let alpha = st.alpha;
            let rho = |x: f64| {
                if x <= 0.0 {
                    return 0.0;
                }
                radial_rel(&st, x / alpha).unwrap().density() / alpha.powi(3)
            };
            let coeffs = angular_density_coeffs(st.j(), m).unwrap();
            let decay = 2.0 * st.a / alpha;
            for (r, theta) in [(0.05f64, 0.3f64), (0.4, 1.2)] {
                let mut v = z / r;
                for (s, a_s) in coeffs.iter().enumerate() {
                    let k2 = 2 * s as i32;
                    let head = quad_interval(
                        |x| rho(x) * x.powi(k2 + 2),
                        0.0,
                        r,
                        1e-12,
                        DEFAULT_BUDGET,
                    )
                    .unwrap()
                    .value;
                    let tail = quad_semi_infinite(
                        |t| rho(r + t) * (r + t).powi(1 - k2),
                        0.0,
                        decay,
                        1e-12,
                    )
                    .unwrap()
                    .value;
                    let w = 4.0 * std::f64::consts::PI * a_s / (4 * s + 1) as f64;
                    let kernel = head / r.powi(k2 + 1) + r.powi(k2) * tail;
                    v -= w * legendre(k2 as u64, theta.cos()) * kernel;
                }
                let c = screening_rel(&st, m, r, theta).unwrap();
                assert!(rel(c, v) < 1e-8, "{st:?} r={r} {c} {v}");
            }
        }
    }
}
