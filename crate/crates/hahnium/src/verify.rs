//! Self-checks: closed forms against the quadrature oracle, exact identities,
//! limits and convergence rates, grouped into named suites.

use std::fmt;
use std::str::FromStr;
use std::thread;

use num_traits::{Signed, Zero};

use crate::angular::{
    cg_l0_2s0, clebsch_gordan, clebsch_gordan_int, gaunt_diagonal, spherical_harmonic,
    spinor_harmonic, Branch, HalfInt,
};
use crate::error::{Error, Result};
use crate::hydrogen_nr::{
    expect_r_power_nr, expect_r_power_nr_exact, inversion_sides, recurrence_values,
    screening_cloud_nr, screening_ground_state, screening_nr, textbook_value, NrState,
};
use crate::hydrogen_rel::{
    binding_energy_rel, expect_r_power_rel, expect_special_rel, fine_structure_expansion,
    moment_evaluate, nonrel_limit_suite, screening_rel_1s_with_alpha, RelState, SpecialCase,
};
use crate::laguerre_integrals::{
    connection_coeffs, j_reduced, j_reduced_direct, linearization_coeff, linearization_coeff_hyp,
    linearization_coeffs, JSpec,
};
use crate::oracle::{brute_expect_nr, brute_expect_rel, sphere_quad};
use crate::orthopoly::{chebyshev_discrete, laguerre, LaguerreSpec};
use crate::specfun::{factorial, pochhammer, rational};
use crate::units::FINE_STRUCTURE;
use crate::BigRational;

/// Quadrature tolerance used for oracle columns.
pub const ORACLE_TOL: f64 = 1e-12;

/// Grid size for the suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Budget {
    Small,
    Full,
}

impl Budget {
    pub fn name(self) -> &'static str {
        match self {
            Budget::Small => "small",
            Budget::Full => "full",
        }
    }
}

impl FromStr for Budget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "small" => Ok(Budget::Small),
            "full" => Ok(Budget::Full),
            other => Err(Error::Domain(format!(
                "unknown budget {other:?} (expected small or full)"
            ))),
        }
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    NrOracle,
    NrExact,
    RelOracle,
    RelSpecialCases,
    Sommerfeld,
    NonrelLimit,
    Identities,
    Angular,
    Screening,
    All,
}

impl Suite {
    /// Every concrete suite, in run order.
    pub const ALL: [Suite; 9] = [
        Suite::NrOracle,
        Suite::NrExact,
        Suite::RelOracle,
        Suite::RelSpecialCases,
        Suite::Sommerfeld,
        Suite::NonrelLimit,
        Suite::Identities,
        Suite::Angular,
        Suite::Screening,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::NrOracle => "nr-oracle",
            Suite::NrExact => "nr-exact",
            Suite::RelOracle => "rel-oracle",
            Suite::RelSpecialCases => "rel-special-cases",
            Suite::Sommerfeld => "sommerfeld",
            Suite::NonrelLimit => "nonrel-limit",
            Suite::Identities => "identities",
            Suite::Angular => "angular",
            Suite::Screening => "screening",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "all" {
            return Ok(Suite::All);
        }
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One compared quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// The closed form hit the cancellation fallback.
    pub flagged: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            residual,
            tolerance,
            passed: residual <= tolerance,
            flagged: false,
        }
    }

    /// Exact comparison: residual 0 or 1.
    pub fn exact(name: impl Into<String>, ok: bool) -> Self {
        Check::new(name, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    fn flagged(mut self, flagged: bool) -> Self {
        self.flagged = flagged;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn flagged_count(&self) -> usize {
        self.checks.iter().filter(|c| c.flagged).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// Runs one suite, or all of them for [`Suite::All`].
///
/// Oracle non-convergence is an `Err`; ordinary mismatches are failed checks.
pub fn run_suite(suite: Suite, budget: Budget) -> Result<Vec<SuiteReport>> {
    if suite == Suite::All {
        return Suite::ALL.iter().map(|&s| run_one(s, budget)).collect();
    }
    Ok(vec![run_one(suite, budget)?])
}

fn run_one(suite: Suite, budget: Budget) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::NrOracle => nr_oracle(budget)?,
        Suite::NrExact => nr_exact(budget)?,
        Suite::RelOracle => rel_oracle(budget)?,
        Suite::RelSpecialCases => rel_special_cases(budget)?,
        Suite::Sommerfeld => sommerfeld()?,
        Suite::NonrelLimit => nonrel_limit()?,
        Suite::Identities => identities(budget)?,
        Suite::Angular => angular(budget)?,
        Suite::Screening => screening()?,
        Suite::All => unreachable!("expanded by run_suite"),
    };
    Ok(SuiteReport { suite, checks })
}

/// Order-preserving parallel map.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    if workers <= 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                scope.spawn(move || part.iter().map(f).collect::<Vec<R>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verify worker panicked"))
            .collect()
    })
}

fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn flatten(rows: Vec<Result<Vec<Check>>>) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for r in rows {
        out.extend(r?);
    }
    Ok(out)
}

/// Closed-form `⟨r^p⟩` against quadrature, `p ∈ [-2l-2, 6]`.
fn nr_oracle(budget: Budget) -> Result<Vec<Check>> {
    let (n_max, zs): (u64, &[f64]) = match budget {
        Budget::Small => (4, &[1.0]),
        Budget::Full => (10, &[1.0, 10.0]),
    };
    let mut states = Vec::new();
    for &z in zs {
        for n in 1..=n_max {
            for l in 0..n {
                states.push(NrState::new(z, n, l, 0)?);
            }
        }
    }
    flatten(par_map(&states, |s| {
        let mut out = Vec::new();
        for p in (-2 * s.l as i32 - 2)..=6 {
            let c = expect_r_power_nr(s, p)?.value;
            let o = brute_expect_nr(s.z, s.n, s.l, p, ORACLE_TOL)?;
            out.push(Check::new(
                format!("Z={} n={} l={} p={p}", s.z, s.n, s.l),
                rel_diff(c, o),
                1e-9,
            ));
        }
        Ok(out)
    }))
}

/// Rational-mode textbook values, the moment recurrence and the inversion relation.
fn nr_exact(budget: Budget) -> Result<Vec<Check>> {
    let n_max = match budget {
        Budget::Small => 5,
        Budget::Full => 8,
    };
    let mut out = Vec::new();
    for z in [rational(1, 1), rational(7, 2)] {
        for n in 1..=n_max {
            for l in 0..n {
                for p in [1i64, 2, -1, -2, -3, -4] {
                    if p <= -3 && l == 0 {
                        continue;
                    }
                    let ok = textbook_value(&z, n, l, p)? == expect_r_power_nr_exact(&z, n, l, p)?;
                    out.push(Check::exact(format!("textbook Z={z} n={n} l={l} p={p}"), ok));
                }
                let rec = recurrence_values(&z, n, l, 6);
                let mut ok = true;
                for (i, v) in rec.iter().enumerate() {
                    ok &= *v == expect_r_power_nr_exact(&z, n, l, i as i64 - 1)?;
                }
                out.push(Check::exact(format!("recurrence Z={z} n={n} l={l}"), ok));
                let mut ok = true;
                for k in 0..=2 * l {
                    let (a, b) = inversion_sides(&z, n, l, k)?;
                    ok &= a == b;
                }
                out.push(Check::exact(format!("inversion Z={z} n={n} l={l}"), ok));
            }
        }
    }
    Ok(out)
}

const KAPPAS: [i64; 6] = [-3, -2, -1, 1, 2, 3];

fn rel_states(budget: Budget) -> Vec<RelState> {
    let (nr_max, zs): (u64, &[f64]) = match budget {
        Budget::Small => (2, &[1.0, 92.0]),
        Budget::Full => (6, &[1.0, 40.0, 92.0]),
    };
    let mut out = Vec::new();
    for &z in zs {
        for nr in 0..=nr_max {
            for k in KAPPAS {
                // μ ≥ |κ| and n_r = 0 with κ > 0 are not states
                if let Ok(s) = RelState::new(z, nr, k) {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn rel_label(s: &RelState) -> String {
    format!("Z={} nr={} kappa={}", s.z, s.nr, s.kappa)
}

/// Powers checked against quadrature: `[-2, 4]` where convergent, plus `-3` when `ν > 1`.
fn rel_powers(s: &RelState) -> Vec<i32> {
    let mut ps = Vec::new();
    if s.nu > 1.0 {
        ps.push(-3);
    }
    ps.extend((-2..=4).filter(|&p| 2.0 * s.nu + p as f64 + 1.0 > 0.0));
    ps
}

fn rel_oracle(budget: Budget) -> Result<Vec<Check>> {
    let states = rel_states(budget);
    flatten(par_map(&states, |s| {
        let mut out = Vec::new();
        for p in rel_powers(s) {
            let flagged = moment_evaluate(s, p)?.flagged;
            let c = expect_r_power_rel(s, p)?.value;
            let o = brute_expect_rel(s.mu, s.nr, s.kappa, p, ORACLE_TOL)?;
            let tol = if flagged { 1e-7 } else { 1e-9 };
            out.push(
                Check::new(format!("{} p={p}", rel_label(s)), rel_diff(c, o), tol)
                    .flagged(flagged),
            );
        }
        Ok(out)
    }))
}

fn rel_special_cases(budget: Budget) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for s in rel_states(budget) {
        for case in SpecialCase::ALL {
            let Ok(sp) = expect_special_rel(&s, case) else {
                continue;
            };
            let cf = expect_r_power_rel(&s, case.power())?.value;
            out.push(Check::new(
                format!("{} {case}", rel_label(&s)),
                rel_diff(sp.value, cf),
                1e-11,
            ));
        }
        let norm = expect_r_power_rel(&s, 0)?.value;
        out.push(Check::new(
            format!("{} normalization", rel_label(&s)),
            (norm - 1.0).abs(),
            1e-12,
        ));
    }
    Ok(out)
}

/// Residual of a halving ratio against its window.
fn ratio_check(name: String, ratio: f64, lo: f64, hi: f64) -> Check {
    let mid = 0.5 * (lo + hi);
    let res = (ratio - mid).abs();
    let res = if res.is_nan() { f64::INFINITY } else { res };
    Check::new(name, res, 0.5 * (hi - lo))
}

/// `ε - 1` against the two-term expansion in `μ²`; the remainder is `O(μ⁶)`.
fn sommerfeld() -> Result<Vec<Check>> {
    let mus = [4e-3, 2e-3, 1e-3];
    let mut out = Vec::new();
    for nr in 0..=2 {
        let errs = mus
            .iter()
            .map(|&mu| {
                let s = RelState::with_mu(1.0, mu, nr, -1)?;
                let (_, c2, c4) = fine_structure_expansion(&s);
                let mu2 = mu * mu;
                Ok((binding_energy_rel(&s) - (c2 * mu2 + c4 * mu2 * mu2)).abs())
            })
            .collect::<Result<Vec<f64>>>()?;
        for (i, w) in errs.windows(2).enumerate() {
            out.push(ratio_check(
                format!("nr={nr} kappa=-1 mu={:e}->{:e}", mus[i], mus[i + 1]),
                w[0] / w[1],
                55.0,
                73.0,
            ));
        }
    }
    Ok(out)
}

/// States with principal quantum number at most 3, both branches.
const LIMIT_STATES: [(u64, i64); 9] = [
    (0, -1),
    (1, -1),
    (2, -1),
    (1, 1),
    (2, 1),
    (0, -2),
    (1, -2),
    (1, 2),
    (0, -3),
];

fn nonrel_limit() -> Result<Vec<Check>> {
    let mus = [0.02, 0.01, 0.005];
    let mut out = Vec::new();
    for (nr, k) in LIMIT_STATES {
        let template = RelState::with_mu(1.0, mus[0], nr, k)?;
        let report = nonrel_limit_suite(&template, &mus, &[-1, 1, 2])?;
        for row in &report.rows {
            let s = row.expected_ratio / 4.0;
            for (i, r) in row.ratios.iter().enumerate() {
                out.push(ratio_check(
                    format!("nr={nr} kappa={k} {} halving {}", row.quantity, i + 1),
                    r / s,
                    3.0,
                    5.0,
                ));
            }
        }
        out.push(Check::exact(format!("nr={nr} kappa={k} large-component sign"), report.sign_ok));
    }
    Ok(out)
}

fn identities(budget: Budget) -> Result<Vec<Check>> {
    let n_max: u64 = match budget {
        Budget::Small => 3,
        Budget::Full => 5,
    };
    let q = rational;
    let alphas = [q(0, 1), q(1, 2), q(3, 1), q(7, 3)];
    let mut out = Vec::new();

    // Thomae-transformed 3F2 against the direct sum
    let mut ok = true;
    for n in 0..=n_max {
        for m in 0..=n {
            for s in -2..=4i64 {
                for (a, b) in [(q(3, 1), q(3, 1)), (q(5, 2), q(1, 2)), (q(2, 1), q(4, 1))] {
                    let spec = JSpec::new(n, m, q(s, 1), a, b);
                    ok &= j_reduced(&spec)? == j_reduced_direct(&spec)?;
                }
            }
        }
    }
    out.push(Check::exact("J: Thomae form = direct sum", ok));

    let (mut norm_ok, mut first_ok, mut diag_pos, mut diag_neg, mut conn) =
        (true, true, true, true, true);
    for n in 0..=n_max {
        let nf = factorial::<BigRational>(n);
        for a in &alphas {
            let a1 = a.clone() + q(1, 1);
            let pn = pochhammer(&a1, n);
            // second moment of the weight
            let j1 = j_reduced(&JSpec::new(n, n, q(1, 1), a.clone(), a.clone()))?;
            norm_ok &= j1 * a1.clone() == (a.clone() + q(2 * n as i64 + 1, 1)) * pn.clone() / nf.clone();
            if n >= 1 {
                let aa = a.clone() + q(2, 1);
                let j = j_reduced(&JSpec::new(n, n - 1, q(2, 1), a.clone(), aa.clone()))?;
                let want = -q(2, 1) * pochhammer(&(aa + q(1, 1)), n - 1)
                    / factorial::<BigRational>(n - 1);
                first_ok &= j == want;
            }
            for k in 0..=n_max + 1 {
                let t = chebyshev_discrete(k, &q(n as i64, 1), &-a.clone())?;
                let rhs = pn.clone() / (nf.clone() * pochhammer(&a1, k)) * t;
                let jp = j_reduced(&JSpec::new(n, n, q(k as i64, 1), a.clone(), a.clone()))?;
                diag_pos &= jp == rhs;
                // J_{-k-1} needs k < α
                if q(k as i64, 1) < *a {
                    let s = q(-(k as i64) - 1, 1);
                    let jn = j_reduced(&JSpec::new(n, n, s, a.clone(), a.clone()))?;
                    diag_neg &= jn == rhs;
                }
            }
            let b = a.clone() - q(3, 2);
            let c = connection_coeffs(n, a, &b);
            for x in [q(0, 1), q(2, 3), q(5, 1)] {
                let lhs = laguerre(&LaguerreSpec::new(n, a.clone()), &x);
                let rhs = c
                    .iter()
                    .enumerate()
                    .fold(q(0, 1), |acc, (m, cm)| {
                        acc + cm.clone() * laguerre(&LaguerreSpec::new(m as u64, b.clone()), &x)
                    });
                conn &= lhs == rhs;
            }
        }
    }
    out.push(Check::exact("J: diagonal first moment", norm_ok));
    out.push(Check::exact("J: off-diagonal n, n-1 with shifted parameter", first_ok));
    out.push(Check::exact("J: positive diagonal moments via discrete Chebyshev", diag_pos));
    out.push(Check::exact("J: negative diagonal moments via discrete Chebyshev", diag_neg));
    out.push(Check::exact("Laguerre connection reconstruction", conn));

    let (mut hyp, mut edge, mut recon, mut sign) = (true, true, true, true);
    for a in [q(0, 1), q(1, 1), q(5, 2)] {
        for n in 0..=n_max {
            for m in 0..=n {
                for p in n - m..=n + m {
                    let c = linearization_coeff(n, m, p, &a);
                    hyp &= linearization_coeff_hyp(n, m, p, &a)? == c;
                    let parity_neg = (n + m + p) % 2 == 1;
                    sign &= if parity_neg { !c.is_positive() } else { !c.is_negative() };
                }
                let c = linearization_coeff(n, m, n - m, &a);
                edge &= c == pochhammer(&(a.clone() + q((n - m) as i64 + 1, 1)), m)
                    / factorial::<BigRational>(m);
                let t = linearization_coeffs(n, m, a.clone());
                for x in [q(0, 1), q(1, 2), q(3, 1)] {
                    let l = |k| laguerre(&LaguerreSpec::new(k, a.clone()), &x);
                    let lhs = (0..=n + m)
                        .map(|p| t.coefficient(p) * l(p))
                        .fold(BigRational::zero(), |s, v| s + v);
                    recon &= lhs == l(n) * l(m);
                }
            }
        }
    }
    out.push(Check::exact("linearization: single sum = 4F3 forms", hyp));
    out.push(Check::exact("linearization: lowest coefficient", edge));
    out.push(Check::exact("linearization: product reconstruction", recon));
    out.push(Check::exact("linearization: sign pattern", sign));
    Ok(out)
}

fn angular(budget: Budget) -> Result<Vec<Check>> {
    let (tj_max, l_max): (i64, u64) = match budget {
        Budget::Small => (3, 2),
        Budget::Full => (4, 3),
    };
    let h = HalfInt::from_twice;
    let mut out = Vec::new();

    // Σ_{m1} C^{JM}_{j1 m1, j2 M-m1} C^{J'M}_{j1 m1, j2 M-m1} = δ_{JJ'}
    let mut worst = 0.0f64;
    for tj1 in 0..=tj_max {
        for tj2 in 0..=tj_max {
            let lo = (tj1 - tj2).abs();
            for tj in (lo..=tj1 + tj2).step_by(2) {
                for tjp in (lo..=tj1 + tj2).step_by(2) {
                    for tm in (-tj.min(tjp)..=tj.min(tjp)).step_by(2) {
                        let mut s = 0.0;
                        for tm1 in (-tj1..=tj1).step_by(2) {
                            let tm2 = tm - tm1;
                            if tm2.abs() > tj2 {
                                continue;
                            }
                            s += clebsch_gordan(h(tj1), h(tm1), h(tj2), h(tm2), h(tj), h(tm))?
                                * clebsch_gordan(h(tj1), h(tm1), h(tj2), h(tm2), h(tjp), h(tm))?;
                        }
                        let want = if tj == tjp { 1.0 } else { 0.0 };
                        worst = worst.max((s - want).abs());
                    }
                }
            }
        }
    }
    out.push(Check::new("CG orthogonality", worst, 1e-12));

    let mut worst = 0.0f64;
    for l in 0..=2 * l_max {
        for s in 0..=l {
            let c = cg_l0_2s0(l, s)?;
            let r = clebsch_gordan_int(l as i64, 0, 2 * s as i64, 0, l as i64, 0)?;
            worst = worst.max((c - r).abs());
        }
    }
    out.push(Check::new("C(l0; l0, 2s 0) closed form", worst, 1e-12));

    let mut worst = 0.0f64;
    for l in 0..=l_max {
        for m in -(l as i64)..=(l as i64) {
            for s in 0..=2 * l {
                let q = sphere_quad(
                    |t, p| {
                        let ys = spherical_harmonic(s as u32, 0, t, p).unwrap_or_default();
                        let y = spherical_harmonic(l as u32, m as i32, t, p).unwrap_or_default();
                        ys.conj() * y.conj() * y
                    },
                    (s + 2 * l) as usize,
                );
                worst = worst.max((q.re - gaunt_diagonal(l, m, s)?).abs()).max(q.im.abs());
            }
        }
    }
    out.push(Check::new("triple products by sphere quadrature", worst, 1e-9));

    let mut states = Vec::new();
    for tj in (1..=2 * l_max as i64 - 1).step_by(2) {
        for tm in (-tj..=tj).step_by(2) {
            for b in [Branch::Plus, Branch::Minus] {
                states.push((h(tj), h(tm), b));
            }
        }
    }
    let mut worst = 0.0f64;
    for &(j, m, b) in &states {
        for &(j2, m2, b2) in &states {
            let v = sphere_quad(
                |t, p| {
                    match (spinor_harmonic(j, m, b, t, p), spinor_harmonic(j2, m2, b2, t, p)) {
                        (Ok(a), Ok(c)) => a.inner(&c),
                        _ => f64::NAN.into(),
                    }
                },
                8,
            );
            let want = if (j, m, b) == (j2, m2, b2) { 1.0 } else { 0.0 };
            worst = worst.max((v.re - want).abs()).max(v.im.abs());
        }
    }
    out.push(Check::new("spinor harmonic orthonormality", nan_inf(worst), 1e-12));

    let mut worst = 0.0f64;
    for &(j, m, b) in &states {
        for (t, p) in [(0.3, 0.1), (1.1, 0.6), (2.0, 4.0), (2.9, -1.2)] {
            let y = spinor_harmonic(j, m, b, t, p)?;
            let other = spinor_harmonic(j, m, b.flip(), t, p)?;
            worst = worst.max(y.sigma_dot_n(t, p).max_abs_diff(&-other));
        }
    }
    out.push(Check::new("sigma.n exchanges the branches", worst, 1e-12));
    Ok(out)
}

fn nan_inf(x: f64) -> f64 {
    if x.is_nan() {
        f64::INFINITY
    } else {
        x
    }
}

fn screening() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for z in [1.0, 3.0] {
        let s = NrState::new(z, 1, 0, 0)?;
        for r in [0.1, 1.0, 5.0, 20.0] {
            let g = screening_nr(&s, r, 0.4)?;
            let c = screening_ground_state(z, r)?;
            out.push(Check::new(
                format!("ground state multipole sum Z={z} r={r}"),
                rel_diff(g, c),
                1e-10,
            ));
        }
    }

    let target = 2.0 * (-2.0f64).exp();
    let errs = [0.02, 0.01, 0.005]
        .iter()
        .map(|&a| Ok((screening_rel_1s_with_alpha(1.0, a, 1.0)? - target).abs()))
        .collect::<Result<Vec<f64>>>()?;
    for (i, w) in errs.windows(2).enumerate() {
        out.push(ratio_check(
            format!("1S potential -> nonrelativistic, halving {}", i + 1),
            w[0] / w[1],
            3.0,
            5.0,
        ));
    }

    for z in [1.0, 3.0, 80.0] {
        let r = 50.0;
        let v = screening_rel_1s_with_alpha(z, FINE_STRUCTURE, r)?;
        out.push(Check::new(
            format!("1S far field Z={z} r={r}"),
            (r * v - (z - 1.0)).abs(),
            1e-6,
        ));
    }
    let r = 1e-7;
    let v = screening_rel_1s_with_alpha(1.0, FINE_STRUCTURE, r)?;
    out.push(Check::new(format!("1S near field Z=1 r={r:e}"), (r * v - 1.0).abs(), 1e-6));

    for (z, n) in [(1.0, 1), (3.0, 2), (10.0, 4)] {
        let s = NrState::new(z, n, 0, 0)?;
        let r = 40.0 / z * n as f64;
        let v = screening_nr(&s, r, 0.7)?;
        out.push(Check::new(
            format!("far field Z={z} n={n} l=0 r={r}"),
            (r * v - (z - 1.0)).abs(),
            1e-6,
        ));
    }
    // r V - Z = -r V_cloud
    for (z, n, l) in [(1.0, 1, 0), (1.0, 2, 1), (4.0, 2, 0), (3.0, 3, 2)] {
        let s = NrState::new(z, n, l, 0)?;
        let r = 1e-6;
        let dev = r * screening_cloud_nr(&s, r, 0.7)?;
        out.push(Check::new(
            format!("near field Z={z} n={n} l={l} r={r:e}"),
            dev.abs(),
            1e-6,
        ));
    }
    Ok(out)
}
