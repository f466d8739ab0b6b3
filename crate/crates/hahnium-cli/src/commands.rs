use std::io::Write;

use hahnium::angular::{Branch, HalfInt};
use hahnium::hydrogen_nr::{energy_nr, expect_r_power_nr, radial_nr, screening_nr, NrState};
use hahnium::hydrogen_rel::{
    binding_energy_rel, energy_rel, expect_r_power_rel, radial_rel, screening_rel, RelState,
};
use hahnium::oracle::{brute_expect_nr, brute_expect_rel, quad_semi_infinite};
use hahnium::units::{
    charge_esu, hartree_erg, rest_energy_erg, Expectation, LengthUnit, BOHR_RADIUS_CM,
    FINE_STRUCTURE,
};
use hahnium::verify::{run_suite, Suite};
use serde_json::Value;

use crate::config::{RunConfig, UnitSystem};
use crate::error::CliError;
use crate::output::{emit, num, Record};
use crate::{BranchArg, ExpectationArgs, ScreeningArgs, StateArgs, VerifyArgs};

fn input_err<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Input(msg.into()))
}

enum State {
    Nr(NrState),
    Rel(RelState),
}

impl State {
    fn parse(a: &StateArgs) -> Result<State, CliError> {
        if a.model.nr {
            for (set, flag) in [
                (a.nr_quantum.is_some(), "--nr-quantum"),
                (a.kappa.is_some(), "--kappa"),
                (a.two_j.is_some(), "--two-j"),
                (a.branch.is_some(), "--branch"),
                (a.two_m.is_some(), "--two-m"),
            ] {
                if set {
                    return input_err(format!("{flag} applies to --rel states"));
                }
            }
            let Some(n) = a.n else {
                return input_err("--nr needs -n");
            };
            return Ok(State::Nr(NrState::new(a.z, n, a.l.unwrap_or(0), a.m.unwrap_or(0))?));
        }
        for (set, flag) in [(a.l.is_some(), "-l"), (a.m.is_some(), "-m")] {
            if set {
                return input_err(format!("{flag} applies to --nr states"));
            }
        }
        let kappa = match (a.kappa, a.two_j, a.branch) {
            (Some(k), None, None) => k,
            (None, Some(tj), Some(b)) => {
                if tj < 1 || tj % 2 == 0 {
                    return input_err(format!("--two-j must be a positive odd integer, got {tj}"));
                }
                let branch = match b {
                    BranchArg::Plus => Branch::Plus,
                    BranchArg::Minus => Branch::Minus,
                };
                branch.kappa(HalfInt::from_twice(tj))
            }
            (None, Some(_), None) | (None, None, Some(_)) => {
                return input_err("--two-j and --branch go together")
            }
            (None, None, None) => return input_err("--rel needs --kappa or --two-j with --branch"),
            _ => return input_err("give either --kappa or --two-j with --branch"),
        };
        let nr = match (a.nr_quantum, a.n) {
            (Some(nr), None) => nr,
            (None, Some(n)) => {
                let k = kappa.unsigned_abs();
                if n < k {
                    return input_err(format!("n >= |kappa| violated (n={n}, kappa={kappa})"));
                }
                n - k
            }
            (None, None) => 0,
            (Some(_), Some(_)) => return input_err("give either --nr-quantum or -n"),
        };
        Ok(State::Rel(RelState::new(a.z, nr, kappa)?))
    }

    fn model(&self) -> &'static str {
        match self {
            State::Nr(_) => "nr",
            State::Rel(_) => "rel",
        }
    }

    fn units(&self, cfg: &RunConfig) -> UnitSystem {
        cfg.unit_system.unwrap_or(match self {
            State::Nr(_) => UnitSystem::HartreeBohr,
            State::Rel(_) => UnitSystem::NaturalCompton,
        })
    }

    fn record(&self, command: &'static str, unit: String, method: &str) -> Record {
        let r = Record::new(command, unit, method).input("model", self.model());
        match self {
            State::Nr(s) => r
                .input("Z", num(s.z))
                .input("n", s.n)
                .input("l", s.l)
                .input("m", s.m),
            State::Rel(s) => r
                .input("Z", num(s.z))
                .input("n", s.principal())
                .input("nr_quantum", s.nr)
                .input("kappa", s.kappa)
                .input("two_j", s.j().twice()),
        }
    }
}

fn length_unit(u: UnitSystem) -> LengthUnit {
    match u {
        UnitSystem::HartreeBohr => LengthUnit::BohrRadius,
        UnitSystem::NaturalCompton => LengthUnit::ComptonReduced,
        UnitSystem::Cgs => LengthUnit::Centimetre,
    }
}

/// Energy unit label and `mc²` expressed in it.
fn energy_unit(u: UnitSystem) -> (&'static str, f64) {
    match u {
        UnitSystem::HartreeBohr => ("hartree", 1.0 / (FINE_STRUCTURE * FINE_STRUCTURE)),
        UnitSystem::NaturalCompton => ("mc2", 1.0),
        UnitSystem::Cgs => ("erg", rest_energy_erg()),
    }
}

pub fn energy<W: Write>(a: &StateArgs, cfg: &RunConfig, out: W) -> Result<(), CliError> {
    let state = State::parse(a)?;
    let units = state.units(cfg);
    let (label, mc2) = energy_unit(units);
    let rec = match &state {
        State::Nr(s) => {
            let hartree = energy_nr(s);
            let v = match units {
                UnitSystem::HartreeBohr => hartree,
                UnitSystem::NaturalCompton => hartree * FINE_STRUCTURE * FINE_STRUCTURE,
                UnitSystem::Cgs => hartree * hartree_erg(),
            };
            state.record("energy", label.into(), "closed_form").value("energy", num(v))
        }
        State::Rel(s) => {
            let to = |x: f64| num(x * mc2);
            state
                .record("energy", label.into(), "closed_form")
                .value("epsilon", num(energy_rel(s)))
                .value("nu", num(s.nu))
                .value("binding_energy", to(binding_energy_rel(s)))
                .value("energy", to(energy_rel(s)))
        }
    };
    emit(out, cfg.output_format, &[rec])
}

fn parse_p_range(s: &str) -> Result<Vec<i32>, CliError> {
    let bad = || CliError::Input(format!("--p-range expects LO:HI with integers, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: i32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i32 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn unit_label(u: LengthUnit, p: i32) -> String {
    format!("{}^{p}", u.name())
}

pub fn expectation<W: Write>(a: &ExpectationArgs, cfg: &RunConfig, out: W) -> Result<(), CliError> {
    let state = State::parse(&a.state)?;
    let powers = match (&a.p, &a.p_range) {
        (Some(p), None) => vec![*p],
        (None, Some(r)) => parse_p_range(r)?,
        _ => return input_err("give -p or --p-range"),
    };
    let lu = length_unit(state.units(cfg));
    let mut rows = Vec::new();
    for p in powers {
        let (closed, oracle) = match &state {
            State::Nr(s) => {
                let c = expect_r_power_nr(s, p)?;
                let o = if a.with_oracle {
                    let v = brute_expect_nr(s.z, s.n, s.l, p, cfg.rel_tol)?;
                    Some(Expectation::oracle(v, p, LengthUnit::BohrRadius))
                } else {
                    None
                };
                (c, o)
            }
            State::Rel(s) => {
                let c = expect_r_power_rel(s, p)?;
                let o = if a.with_oracle {
                    let v = brute_expect_rel(s.mu, s.nr, s.kappa, p, cfg.rel_tol)?;
                    Some(Expectation::oracle(v, p, LengthUnit::ComptonReduced))
                } else {
                    None
                };
                (c, o)
            }
        };
        let c = closed.convert(lu);
        let mut rec = state
            .record("expectation", unit_label(lu, p), closed.method.name())
            .input("p", p)
            .value("value", num(c.value))
            .value("unit_power", p);
        if let Some(o) = oracle {
            let o = o.convert(lu);
            rec = rec
                .value("oracle", num(o.value))
                .value("rel_diff", num(c.rel_diff(&o)));
        }
        rows.push(rec);
    }
    emit(out, cfg.output_format, &rows)
}

/// Potential unit label, size of one length unit in `a₀` and of one potential
/// unit in `e/a₀`.
fn potential_unit(u: UnitSystem) -> (&'static str, f64, f64) {
    match u {
        UnitSystem::HartreeBohr => ("e/bohr_radius", 1.0, 1.0),
        UnitSystem::NaturalCompton => ("e/compton_reduced", FINE_STRUCTURE, 1.0 / FINE_STRUCTURE),
        UnitSystem::Cgs => ("statvolt", 1.0 / BOHR_RADIUS_CM, BOHR_RADIUS_CM / charge_esu()),
    }
}

/// The potential by quadrature over the tail `[r, ∞)` of a spherical density:
/// `(Z-1)/r + (1/r)∫_r^∞ ρx² - ∫_r^∞ ρx`. `rho(x)` is the radial density at `x a₀`.
fn screening_quadrature(
    z: f64,
    r: f64,
    rho: impl Fn(f64) -> f64,
    sigma: f64,
    decay: f64,
    tol: f64,
) -> Result<f64, CliError> {
    let norm = quad_semi_infinite(|x| rho(x) * x * x, sigma, decay, tol)?.value;
    let outside = quad_semi_infinite(|t| rho(r + t) * (r + t) * (r + t), 0.0, decay, tol)?.value;
    let tail = quad_semi_infinite(|t| rho(r + t) * (r + t), 0.0, decay, tol)?.value;
    Ok((z - 1.0) / r + (outside / r - tail) / norm)
}

pub fn screening<W: Write>(a: &ScreeningArgs, cfg: &RunConfig, out: W) -> Result<(), CliError> {
    let state = State::parse(&a.state)?;
    let units = state.units(cfg);
    let (label, len_bohr, pot_unit) = potential_unit(units);
    let two_m = match &state {
        State::Rel(s) => {
            let tm = a.state.two_m.unwrap_or(1);
            if tm % 2 == 0 || tm.abs() > s.j().twice() {
                return input_err(format!("|m_j| <= j violated (2m = {tm}, 2j = {})", s.j().twice()));
            }
            Some(tm)
        }
        State::Nr(_) => None,
    };
    if a.with_oracle {
        let spherical = match &state {
            State::Nr(s) => s.l == 0,
            State::Rel(s) => s.kappa.abs() == 1,
        };
        if !spherical {
            return input_err("the screening oracle needs a spherical state (l = 0 or j = 1/2)");
        }
    }
    let mut rows = Vec::new();
    for &r_in in &a.radii {
        if !(r_in > 0.0) {
            return input_err(format!("screening needs r > 0, got {r_in}"));
        }
        let r = r_in * len_bohr;
        let (v, oracle) = match &state {
            State::Nr(s) => {
                let v = screening_nr(s, r, a.theta)?;
                let o = if a.with_oracle {
                    let rho = |x: f64| {
                        let f = radial_nr(s, x);
                        f * f
                    };
                    let sigma = 2.0 * s.l as f64 + 2.0;
                    Some(screening_quadrature(s.z, r, rho, sigma, 2.0 * s.z / s.n as f64, cfg.rel_tol)?)
                } else {
                    None
                };
                (v, o)
            }
            State::Rel(s) => {
                let v = screening_rel(s, HalfInt::from_twice(two_m.unwrap_or(1)), r, a.theta)?;
                let o = if a.with_oracle {
                    let alpha = s.alpha;
                    let rho = |x: f64| {
                        if x <= 0.0 {
                            return 0.0;
                        }
                        radial_rel(s, x / alpha).map_or(f64::NAN, |p| p.density())
                    };
                    let decay = 2.0 * s.a / alpha;
                    Some(screening_quadrature(s.z, r, rho, 2.0 * s.nu, decay, cfg.rel_tol)?)
                } else {
                    None
                };
                (v, o)
            }
        };
        let mut rec = state
            .record("screening", label.into(), "closed_form")
            .input("theta", num(a.theta));
        if let Some(tm) = two_m {
            rec = rec.input("two_m", tm);
        }
        rec = rec
            .input("r", num(r_in))
            .value("potential", num(v * pot_unit))
            .value("r_times_potential", num(r_in * v * pot_unit));
        if let Some(o) = oracle {
            let diff = (v - o).abs() / v.abs().max(o.abs());
            rec = rec.value("oracle", num(o * pot_unit)).value("rel_diff", num(diff));
        }
        rows.push(rec);
    }
    emit(out, cfg.output_format, &rows)
}

pub fn verify<W: Write>(a: &VerifyArgs, cfg: &RunConfig, out: W) -> Result<(), CliError> {
    let suite: Suite = a.suite.parse()?;
    let budget = cfg.verify_budget;
    let reports = run_suite(suite, budget)?;
    let mut rows = Vec::new();
    let mut failed = 0usize;
    for rep in &reports {
        for c in &rep.checks {
            rows.push(
                Record::new("verify", "1", "check")
                    .input("suite", rep.suite.name())
                    .input("budget", budget.name())
                    .value("check", c.name.clone())
                    .value("residual", num(c.residual))
                    .value("tolerance", num(c.tolerance))
                    .value("passed", c.passed)
                    .value("flagged", c.flagged),
            );
        }
        let n_failed = rep.failures().count();
        failed += n_failed + usize::from(rep.checks.is_empty());
        rows.push(
            Record::new("verify", "1", "summary")
                .input("suite", rep.suite.name())
                .input("budget", budget.name())
                .value("check", format!("{} checks, {n_failed} failed", rep.checks.len()))
                .value("residual", num(rep.max_residual()))
                .value("tolerance", Value::Null)
                .value("passed", rep.passed())
                .value("flagged", rep.flagged_count()),
        );
    }
    emit(out, cfg.output_format, &rows)?;
    if failed > 0 {
        return Err(CliError::Numerical(format!("{failed} verification checks failed")));
    }
    Ok(())
}
