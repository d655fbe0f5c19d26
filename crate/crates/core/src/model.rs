//! System parameters, validation and the physical helper conversions.
//!
//! All rates and detunings are angular (rad/s). Drive amplitudes are in s⁻¹
//! (square root of photon flux scaled by the cavity rate); configuration files
//! express them in units of [`AMPLITUDE_UNIT`].

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Real, HBAR, SPEED_OF_LIGHT};

/// Drive amplitudes quoted as "GHz" are plain 10⁹ s⁻¹, without a 2π.
pub const AMPLITUDE_UNIT: f64 = 1e9;

/// Parameters of the three-tone driven optomechanical system.
///
/// The second probe detuning is not stored; it is always `omega_b / n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de> + Default"))]
pub struct SystemParams<T> {
    pub omega_b: T,
    pub kappa: T,
    pub gamma: T,
    pub g: T,
    pub delta_a: T,
    pub eps_c: T,
    pub eps_p: T,
    pub eps_f: T,
    pub delta_p: T,
    pub n: u32,
    #[serde(default)]
    pub phase_c: T,
    #[serde(default)]
    pub phase_p: T,
    #[serde(default)]
    pub phase_f: T,
}

impl<T: Real> SystemParams<T> {
    /// Experimental baseline: ω_b/2π = 51.8 MHz, κ/2π = 15 MHz, γ/2π = 41 kHz,
    /// g/2π = 1 kHz, Δ_a = ω_b, ε_c = 3×10³ GHz, probes off, n = 1.
    pub fn baseline() -> Self {
        let two_pi = T::TAU();
        let omega_b = two_pi * T::lit(51.8e6);
        SystemParams {
            omega_b,
            kappa: two_pi * T::lit(15e6),
            gamma: two_pi * T::lit(41e3),
            g: two_pi * T::lit(1e3),
            delta_a: omega_b,
            eps_c: T::lit(3e3 * AMPLITUDE_UNIT),
            eps_p: T::zero(),
            eps_f: T::zero(),
            delta_p: omega_b,
            n: 1,
            phase_c: T::zero(),
            phase_p: T::zero(),
            phase_f: T::zero(),
        }
    }

    /// Sets both probe amplitudes given in GHz (10⁹ s⁻¹) and the fraction integer.
    pub fn with_probes_ghz(mut self, eps_p: f64, eps_f: f64, n: u32) -> Self {
        self.eps_p = T::lit(eps_p * AMPLITUDE_UNIT);
        self.eps_f = T::lit(eps_f * AMPLITUDE_UNIT);
        self.n = n;
        self
    }

    /// Detuning of the second probe, ω_b / n.
    pub fn delta_f(&self) -> T {
        self.omega_b / T::from_u32(self.n).unwrap()
    }

    /// Comb grid spacing; identical to [`Self::delta_f`].
    pub fn omega_fund(&self) -> T {
        self.delta_f()
    }

    /// Mechanical period 2π/ω_b.
    pub fn mechanical_period(&self) -> T {
        T::TAU() / self.omega_b
    }

    /// Common period of the three-tone drive, 2πn/ω_b.
    pub fn fundamental_period(&self) -> T {
        self.mechanical_period() * T::from_u32(self.n).unwrap()
    }

    /// Complex control amplitude ε_c·e^{iφ_c}.
    pub fn control(&self) -> Complex<T> {
        Complex::from_polar(self.eps_c, self.phase_c)
    }

    pub fn probe_p(&self) -> Complex<T> {
        Complex::from_polar(self.eps_p, self.phase_p)
    }

    pub fn probe_f(&self) -> Complex<T> {
        Complex::from_polar(self.eps_f, self.phase_f)
    }

    /// Copy with both probes switched off.
    pub fn probes_off(&self) -> Self {
        SystemParams {
            eps_p: T::zero(),
            eps_f: T::zero(),
            ..*self
        }
    }

    /// Checks every invariant, reporting the first one violated.
    pub fn validate(self) -> Result<Self> {
        positive("omega_b", self.omega_b)?;
        positive("kappa", self.kappa)?;
        positive("gamma", self.gamma)?;
        non_negative("g", self.g)?;
        if self.n == 0 {
            return Err(Error::param("n", "must be an integer >= 1"));
        }
        non_negative("eps_c", self.eps_c)?;
        non_negative("eps_p", self.eps_p)?;
        non_negative("eps_f", self.eps_f)?;
        finite("delta_a", self.delta_a)?;
        finite("delta_p", self.delta_p)?;
        finite("phase_c", self.phase_c)?;
        finite("phase_p", self.phase_p)?;
        finite("phase_f", self.phase_f)?;
        Ok(self)
    }
}

fn finite<T: Real>(name: &'static str, x: T) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be finite, got {x}")))
    }
}

fn positive<T: Real>(name: &'static str, x: T) -> Result<()> {
    finite(name, x)?;
    if x > T::zero() {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be > 0, got {x}")))
    }
}

fn non_negative<T: Real>(name: &'static str, x: T) -> Result<()> {
    finite(name, x)?;
    if x >= T::zero() {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be >= 0, got {x}")))
    }
}

/// Mechanical and optical geometry needed to derive the coupling strength.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalCavity<T> {
    /// Oscillator mass, kg.
    pub mass: T,
    /// Cavity length, m.
    pub length: T,
    /// Control wavelength, m.
    pub lambda_c: T,
}

impl<T: Real> PhysicalCavity<T> {
    pub fn validate(self) -> Result<Self> {
        positive("mass", self.mass)?;
        positive("length", self.length)?;
        positive("lambda_c", self.lambda_c)?;
        Ok(self)
    }

    /// Zero-point fluctuation √(ħ / 2Mω_b), m.
    pub fn x_zpf(&self, omega_b: T) -> T {
        (T::lit(HBAR) / (T::lit(2.0) * self.mass * omega_b)).sqrt()
    }

    /// Optical angular frequency 2πc/λ_c.
    pub fn omega_a(&self) -> T {
        angular_frequency_of_wavelength(self.lambda_c)
    }
}

pub fn angular_frequency_of_wavelength<T: Real>(lambda: T) -> T {
    T::TAU() * T::lit(SPEED_OF_LIGHT) / lambda
}

/// Single-photon coupling g = x_zpf·ω_a / L.
pub fn derive_coupling<T: Real>(cav: &PhysicalCavity<T>, omega_b: T) -> Result<T> {
    let cav = cav.validate()?;
    positive("omega_b", omega_b)?;
    Ok(cav.x_zpf(omega_b) * cav.omega_a() / cav.length)
}

/// Drive amplitude ε = √(2κP / ħω) for an input power `power` in watts.
pub fn power_to_amplitude<T: Real>(power: T, omega_y: T, kappa: T) -> Result<T> {
    non_negative("power", power)?;
    positive("omega_y", omega_y)?;
    positive("kappa", kappa)?;
    Ok((T::lit(2.0) * kappa * power / (T::lit(HBAR) * omega_y)).sqrt())
}
