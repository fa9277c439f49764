//! Physical constants, ion species registry, and the trapped two-ion
//! context with its derived geometry: equilibrium spacing, stretch-mode
//! frequency, ground-state extents and the Lamb-Dicke factor.

use serde::{Deserialize, Serialize};

use crate::beams::BeamGeometry;

/// CODATA 2018 constants (SI). Hard-coded to 12 significant digits so that
/// derived tables are reproducible bit-for-bit across builds.
pub mod constants {
    /// Speed of light in vacuum, m/s (exact).
    pub const SPEED_OF_LIGHT: f64 = 299792458.0;
    /// Planck constant over 2 pi, J s (from the exact h = 6.62607015e-34).
    pub const HBAR: f64 = 1.05457181765e-34;
    /// Elementary charge, C (exact).
    pub const ELEMENTARY_CHARGE: f64 = 1.602176634e-19;
    /// Vacuum permittivity, F/m.
    pub const VACUUM_PERMITTIVITY: f64 = 8.85418781280e-12;
    /// Atomic mass unit, kg.
    pub const ATOMIC_MASS_UNIT: f64 = 1.66053906660e-27;
    /// Bohr magneton, J/T.
    pub const BOHR_MAGNETON: f64 = 9.27401007830e-24;
}

/// Errors from species/trap construction and geometry queries.
#[derive(Debug, Clone, thiserror::Error)]
pub enum PhysicsError {
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("beam projection on the crystal axis vanishes (cos gamma = 0)")]
    ZeroProjection,
}

/// A qubit ion species: mass, hyperfine qubit splitting and the Raman
/// laser wavelength used to drive it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IonSpecies {
    pub name: String,
    /// Ion mass, kg.
    pub mass: f64,
    /// Qubit (hyperfine) splitting omega_0, rad/s.
    pub qubit_splitting: f64,
    /// Raman laser wavelength, m.
    pub raman_wavelength: f64,
}

impl IonSpecies {
    pub fn new(
        name: impl Into<String>,
        mass: f64,
        qubit_splitting: f64,
        raman_wavelength: f64,
    ) -> Result<Self, PhysicsError> {
        if !(mass > 0.0) {
            return Err(PhysicsError::NonPositive("ion mass"));
        }
        if !(qubit_splitting > 0.0) {
            return Err(PhysicsError::NonPositive("qubit splitting"));
        }
        if !(raman_wavelength > 0.0) {
            return Err(PhysicsError::NonPositive("Raman wavelength"));
        }
        Ok(IonSpecies { name: name.into(), mass, qubit_splitting, raman_wavelength })
    }

    /// 9Be+ : m = 9.0121831 u, 313 nm Raman light, omega_0 = 2 pi x 1.25 GHz.
    pub fn be9() -> Self {
        IonSpecies {
            name: "Be9".into(),
            mass: 9.0121831 * constants::ATOMIC_MASS_UNIT,
            qubit_splitting: 2.0 * std::f64::consts::PI * 1.25e9,
            raman_wavelength: 313e-9,
        }
    }

    /// Registry lookup by name.
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "Be9" | "9Be+" | "be9" => Some(Self::be9()),
            _ => None,
        }
    }

    /// Raman wavenumber k = 2 pi / lambda, rad/m.
    pub fn wavenumber(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.raman_wavelength
    }

    /// Wavelength of the qubit splitting, Lambda_0 = 2 pi c / omega_0, m.
    /// Sets the relative-phase pitch of co-propagating Raman beams along a
    /// beam path (~0.24 m for 9Be+).
    pub fn hyperfine_wavelength(&self) -> f64 {
        2.0 * std::f64::consts::PI * constants::SPEED_OF_LIGHT / self.qubit_splitting
    }
}

/// Axial normal modes of a two-ion crystal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxialMode {
    /// In-phase (center-of-mass) motion at omega_COM.
    Com,
    /// Out-of-phase motion at omega_str = sqrt(3) omega_COM.
    Stretch,
}

/// Number of ions sharing the potential well.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IonCount {
    One,
    Two,
}

/// A species held in a harmonic well at a given axial COM frequency.
/// Derived quantities (spacing, stretch frequency, mode extents) are
/// recomputed on demand, so serialized contexts round-trip exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrapContext {
    pub species: IonSpecies,
    /// Axial center-of-mass frequency, rad/s.
    pub omega_com: f64,
}

impl TrapContext {
    pub fn new(species: IonSpecies, omega_com: f64) -> Result<Self, PhysicsError> {
        if !(omega_com > 0.0) {
            return Err(PhysicsError::NonPositive("COM frequency"));
        }
        Ok(TrapContext { species, omega_com })
    }

    /// Stretch-mode frequency sqrt(3) omega_COM (equal-mass two-ion crystal).
    pub fn omega_stretch(&self) -> f64 {
        3.0_f64.sqrt() * self.omega_com
    }

    /// Equilibrium two-ion spacing d = [q^2 / (2 pi eps_0 m omega_COM^2)]^{1/3},
    /// set by the balance of Coulomb repulsion and the axial restoring force.
    pub fn equilibrium_distance(&self) -> f64 {
        let q = constants::ELEMENTARY_CHARGE;
        let num = q * q;
        let den = 2.0 * std::f64::consts::PI
            * constants::VACUUM_PERMITTIVITY
            * self.species.mass
            * self.omega_com
            * self.omega_com;
        (num / den).cbrt()
    }

    /// RMS ground-state extent of the selected axial mode, m.
    ///
    /// Single ion: sqrt(hbar / (2 m omega)). Two ions, COM mode: the moving
    /// mass is 2m, giving sqrt(hbar / (4 m omega_COM)). Two ions, stretch
    /// mode: the normal-coordinate convention z_str = (dz1 - dz2)/sqrt(2)
    /// gives sqrt(hbar / (2 m omega_str)).
    pub fn mode_ground_extent(&self, mode: AxialMode, ions: IonCount) -> f64 {
        let m = self.species.mass;
        let h = constants::HBAR;
        match (ions, mode) {
            (IonCount::One, _) => (h / (2.0 * m * self.omega_com)).sqrt(),
            (IonCount::Two, AxialMode::Com) => (h / (4.0 * m * self.omega_com)).sqrt(),
            (IonCount::Two, AxialMode::Stretch) => (h / (2.0 * m * self.omega_stretch())).sqrt(),
        }
    }

    /// Lamb-Dicke factor of the stretch mode for a counter-propagating
    /// Raman pair at angle gamma to the crystal axis:
    /// eta = 2 k cos(gamma) sqrt(hbar / (2 m omega_str)).
    ///
    /// Angles within 1e-9 rad of perpendicular count as zero projection.
    pub fn lamb_dicke(&self, beams: &BeamGeometry) -> Result<f64, PhysicsError> {
        let cos_gamma = beams.angle.cos();
        if cos_gamma.abs() <= 1e-9 {
            return Err(PhysicsError::ZeroProjection);
        }
        Ok(self.lamb_dicke_at(beams.wavenumber() * 2.0 * cos_gamma, self.omega_stretch()))
    }

    /// Lamb-Dicke factor for an arbitrary axial wavevector transfer and
    /// mode frequency: eta = dk_z sqrt(hbar / (2 m omega)).
    pub fn lamb_dicke_at(&self, delta_k_z: f64, omega_mode: f64) -> f64 {
        delta_k_z * (constants::HBAR / (2.0 * self.species.mass * omega_mode)).sqrt()
    }
}
