use crate::error::{Error, Result};
use crate::Real;

/// Temperature dependence of the Drude relaxation rate γ(T).
///
/// γ ∝ T above the phonon knee (T_D/4 by default), γ ∝ T⁵ between the
/// helium knee and the phonon knee, γ ∝ T² below the helium knee. The pieces
/// join continuously and γ(300 K) = γ₃₀₀. An optional residual rate models
/// impurity scattering; the phonon part is scaled so that γ(300 K) stays γ₃₀₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationLaw<T> {
    gamma_300: T,
    phonon_knee: T,
    helium_knee: T,
    residual: T,
}

impl<T: Real> RelaxationLaw<T> {
    /// Perfect-lattice law with the phonon knee at `debye_temperature / 4` and
    /// the helium knee at 10 K.
    pub fn new(gamma_300: T, debye_temperature: T) -> Result<Self> {
        Self::with_knees(gamma_300, debye_temperature / T::lit(4.0), T::lit(10.0), T::zero())
    }

    pub fn with_knees(gamma_300: T, phonon_knee: T, helium_knee: T, residual: T) -> Result<Self> {
        if !(gamma_300 >= T::zero()) {
            return Err(Error::InvalidParameter(format!("gamma_300 = {gamma_300} must be >= 0")));
        }
        if !(helium_knee > T::zero() && phonon_knee > helium_knee && phonon_knee < T::lit(300.0)) {
            return Err(Error::InvalidParameter(format!(
                "knees must satisfy 0 < helium ({helium_knee}) < phonon ({phonon_knee}) < 300 K"
            )));
        }
        if !(residual >= T::zero() && residual <= gamma_300) {
            return Err(Error::InvalidParameter(format!(
                "residual rate {residual} outside [0, gamma_300]"
            )));
        }
        Ok(Self {
            gamma_300,
            phonon_knee,
            helium_knee,
            residual,
        })
    }

    /// Temperature-independent rate (useful for γ = 0 degeneracy checks).
    pub fn constant(gamma: T) -> Self {
        Self {
            gamma_300: gamma,
            phonon_knee: T::lit(41.25),
            helium_knee: T::lit(10.0),
            residual: gamma,
        }
    }

    pub fn with_residual(self, residual: T) -> Result<Self> {
        Self::with_knees(self.gamma_300, self.phonon_knee, self.helium_knee, residual)
    }

    pub fn gamma_300(&self) -> T {
        self.gamma_300
    }

    pub fn residual(&self) -> T {
        self.residual
    }

    pub fn phonon_knee(&self) -> T {
        self.phonon_knee
    }

    pub fn helium_knee(&self) -> T {
        self.helium_knee
    }

    /// γ(T) in rad/s.
    pub fn rate(&self, temperature: T) -> T {
        let lattice = self.gamma_300 - self.residual;
        if lattice.is_zero() {
            return self.residual;
        }
        let t = temperature.max(T::zero());
        let linear = |t: T| lattice * t / T::lit(300.0);
        let shape = if t >= self.phonon_knee {
            linear(t)
        } else {
            let at_knee = linear(self.phonon_knee);
            if t >= self.helium_knee {
                at_knee * (t / self.phonon_knee).powi(5)
            } else {
                let at_helium = at_knee * (self.helium_knee / self.phonon_knee).powi(5);
                at_helium * (t / self.helium_knee).powi(2)
            }
        };
        self.residual + shape
    }
}
