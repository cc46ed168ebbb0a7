//! Closed-form impulse response of the gyroscopically coupled pair.
//!
//! With `x = (q, z)`, `p = (q', z')` and the skew matrix `J = [[0, n], [-n, 0]]`
//! the model is `x' = p`, `p' = -x - J p`, which conserves
//! `H = (|x|^2 + |p|^2) / 2`. Everything here evaluates the exact modal
//! solution; numerical integration lives in [`crate::oracle`].

use serde::Serialize;

use crate::error::{ensure_finite, Error, Result};

/// Coupling strength `n` together with its two positive modal frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModalSystem {
    pub n: f64,
    pub omega1: f64,
    pub omega2: f64,
}

impl ModalSystem {
    /// Builds the modal frequencies `((n^2 + 4)^{1/2} ± n) / 2`.
    ///
    /// The smaller frequency is taken as the reciprocal of the larger one,
    /// which is the same value without the cancellation at large `|n|`.
    pub fn new(n: f64) -> Result<Self> {
        ensure_finite("coupling n", n)?;
        let root = n.hypot(2.0);
        let (omega1, omega2) = if n >= 0.0 {
            let big = 0.5 * (root + n);
            (big, 1.0 / big)
        } else {
            let big = 0.5 * (root - n);
            (1.0 / big, big)
        };
        Ok(Self { n, omega1, omega2 })
    }

    /// `(n^2 + 4)^{1/2}`, equal to `omega1 + omega2`.
    pub fn frequency_sum(&self) -> f64 {
        self.n.hypot(2.0)
    }

    pub fn ratio(&self) -> f64 {
        self.omega1 / self.omega2
    }
}

/// Alias for [`ModalSystem::new`].
pub fn modal_system(n: f64) -> Result<ModalSystem> {
    ModalSystem::new(n)
}

/// One impulse response: initial state `(0, qdot0, 0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImpulseTrajectory {
    pub system: ModalSystem,
    pub qdot0: f64,
    pub rho0: f64,
}

impl ImpulseTrajectory {
    pub fn new(system: ModalSystem, qdot0: f64) -> Result<Self> {
        ensure_finite("qdot0", qdot0)?;
        let rho0 = qdot0 / system.frequency_sum();
        Ok(Self {
            system,
            qdot0,
            rho0,
        })
    }

    /// Total energy of the trajectory, `qdot0^2 / 2`.
    pub fn energy(&self) -> f64 {
        0.5 * self.qdot0 * self.qdot0
    }

    pub fn state_at(&self, t: f64) -> StateSample {
        let ModalSystem { omega1, omega2, .. } = self.system;
        let (s1, c1) = (omega1 * t).sin_cos();
        let (s2, c2) = (omega2 * t).sin_cos();
        let rho = self.rho0;
        StateSample::new(
            t,
            rho * (s1 + s2),
            rho * (omega1 * c1 + omega2 * c2),
            rho * (c2 - c1),
            rho * (omega1 * s1 - omega2 * s2),
        )
    }

    /// Samples at `t = 0, dt, 2 dt, ...` up to and including `t_end`.
    pub fn sample_trace(&self, t_end: f64, dt: f64) -> Result<Vec<StateSample>> {
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "t_end must be positive, got {t_end}"
            )));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "dt must be positive, got {dt}"
            )));
        }
        let steps = grid_steps(t_end, dt);
        Ok((0..=steps).map(|i| self.state_at(i as f64 * dt)).collect())
    }
}

/// Number of whole steps of `dt` that fit in `t_end`, forgiving the last
/// step a few ulps of rounding.
pub(crate) fn grid_steps(t_end: f64, dt: f64) -> usize {
    ((t_end / dt) * (1.0 + 4.0 * f64::EPSILON)).floor() as usize
}

/// Alias for [`ImpulseTrajectory::new`].
pub fn impulse_trajectory(system: ModalSystem, qdot0: f64) -> Result<ImpulseTrajectory> {
    ImpulseTrajectory::new(system, qdot0)
}

/// Full state at one instant plus the subsystem energies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateSample {
    pub t: f64,
    pub q: f64,
    pub qdot: f64,
    pub z: f64,
    pub zdot: f64,
    pub hq: f64,
    pub hz: f64,
    pub h: f64,
}

impl StateSample {
    pub fn new(t: f64, q: f64, qdot: f64, z: f64, zdot: f64) -> Self {
        let hq = 0.5 * (q * q + qdot * qdot);
        let hz = 0.5 * (z * z + zdot * zdot);
        Self {
            t,
            q,
            qdot,
            z,
            zdot,
            hq,
            hz,
            h: hq + hz,
        }
    }

    pub fn state(&self) -> [f64; 4] {
        [self.q, self.qdot, self.z, self.zdot]
    }
}
