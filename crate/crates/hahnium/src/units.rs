//! Length units for expectation values and the cgs constants used for output.

use std::fmt;

/// Sommerfeld's fine-structure constant `e²/ħc`.
pub const FINE_STRUCTURE: f64 = 7.297_353_08e-3;
/// Speed of light, cm/s.
pub const SPEED_OF_LIGHT_CGS: f64 = 2.997_924_58e10;
/// Electron mass, g.
pub const ELECTRON_MASS_G: f64 = 9.109_389_7e-28;
/// Bohr radius `ħ²/me²`, cm.
pub const BOHR_RADIUS_CM: f64 = 0.529_177_249e-8;
/// Compton wavelength `h/mc`, cm.
pub const COMPTON_WAVELENGTH_CM: f64 = 2.426_310_58e-10;

/// `ħ/mc = α a₀` in cm.
pub fn reduced_compton_cm() -> f64 {
    FINE_STRUCTURE * BOHR_RADIUS_CM
}

/// Electron rest energy `mc²` in erg.
pub fn rest_energy_erg() -> f64 {
    ELECTRON_MASS_G * SPEED_OF_LIGHT_CGS * SPEED_OF_LIGHT_CGS
}

/// Hartree energy `e²/a₀ = α² mc²` in erg.
pub fn hartree_erg() -> f64 {
    FINE_STRUCTURE * FINE_STRUCTURE * rest_energy_erg()
}

/// Elementary charge in esu, from `e² = a₀ · (e²/a₀)`.
pub fn charge_esu() -> f64 {
    (BOHR_RADIUS_CM * hartree_erg()).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LengthUnit {
    /// `a₀`
    BohrRadius,
    /// `ħ/mc`
    ComptonReduced,
    Centimetre,
}

impl LengthUnit {
    pub fn name(self) -> &'static str {
        match self {
            LengthUnit::BohrRadius => "bohr_radius",
            LengthUnit::ComptonReduced => "compton_reduced",
            LengthUnit::Centimetre => "cm",
        }
    }

    /// Size of one unit in cm.
    pub fn in_cm(self) -> f64 {
        match self {
            LengthUnit::BohrRadius => BOHR_RADIUS_CM,
            LengthUnit::ComptonReduced => reduced_compton_cm(),
            LengthUnit::Centimetre => 1.0,
        }
    }

    /// Size of one unit in `a₀`, without rounding through cgs.
    fn in_bohr(self) -> f64 {
        match self {
            LengthUnit::BohrRadius => 1.0,
            LengthUnit::ComptonReduced => FINE_STRUCTURE,
            LengthUnit::Centimetre => 1.0 / BOHR_RADIUS_CM,
        }
    }
}

impl fmt::Display for LengthUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Oracle => "oracle",
        }
    }
}

/// `⟨r^p⟩` as `value · unit^length_power`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expectation {
    pub value: f64,
    pub length_power: i32,
    pub unit: LengthUnit,
    pub method: Method,
}

impl Expectation {
    pub fn closed_form(value: f64, length_power: i32, unit: LengthUnit) -> Self {
        Expectation {
            value,
            length_power,
            unit,
            method: Method::ClosedForm,
        }
    }

    pub fn oracle(value: f64, length_power: i32, unit: LengthUnit) -> Self {
        Expectation {
            value,
            length_power,
            unit,
            method: Method::Oracle,
        }
    }

    /// Same quantity expressed in another length unit.
    pub fn convert(&self, to: LengthUnit) -> Expectation {
        let ratio = if self.unit == LengthUnit::Centimetre || to == LengthUnit::Centimetre {
            self.unit.in_cm() / to.in_cm()
        } else {
            self.unit.in_bohr() / to.in_bohr()
        };
        Expectation {
            value: self.value * ratio.powi(self.length_power),
            unit: to,
            ..*self
        }
    }

    pub fn rel_diff(&self, other: &Expectation) -> f64 {
        let o = other.convert(self.unit).value;
        (self.value - o).abs() / self.value.abs().max(o.abs()).max(f64::MIN_POSITIVE)
    }
}
