//! Convex envelope of the projected `(q, q')` motion.
//!
//! The projection is `rho0 (C_{omega1} + C_{omega2})` where `C_w` is the
//! ellipse `(sin t, w cos t)`. Its convex hull is the Minkowski sum of the
//! two filled ellipses, so its support function is the sum of the ellipse
//! support functions and the exposed point in direction `phi` is the sum
//! of the two exposed points.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::dynamics::ModalSystem;
use crate::error::{ensure_finite, Error, Result};

fn ellipse_support(omega: f64, cos: f64, sin: f64) -> f64 {
    (cos * cos + omega * omega * sin * sin).sqrt()
}

/// Support value of the projected hull in direction `(cos phi, sin phi)`.
pub fn support(system: &ModalSystem, rho0: f64, phi: f64) -> f64 {
    let (sin, cos) = phi.sin_cos();
    rho0.abs()
        * (ellipse_support(system.omega1, cos, sin) + ellipse_support(system.omega2, cos, sin))
}

/// Exposed boundary point of the hull in direction `phi`.
pub fn boundary_point(system: &ModalSystem, rho0: f64, phi: f64) -> [f64; 2] {
    let (sin, cos) = phi.sin_cos();
    let mut point = [0.0; 2];
    for omega in [system.omega1, system.omega2] {
        let h = ellipse_support(omega, cos, sin);
        point[0] += cos / h;
        point[1] += omega * omega * sin / h;
    }
    let scale = rho0.abs();
    [scale * point[0], scale * point[1]]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvelopePoint {
    pub phi: f64,
    pub q: f64,
    pub qdot: f64,
}

impl EnvelopePoint {
    pub fn direction(&self) -> [f64; 2] {
        let (sin, cos) = self.phi.sin_cos();
        [cos, sin]
    }

    /// Support value carried by this sample, `<x(phi), u(phi)>`.
    pub fn support(&self) -> f64 {
        let [c, s] = self.direction();
        self.q * c + self.qdot * s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeCurve {
    pub samples: Vec<EnvelopePoint>,
    pub rho0: f64,
    pub omega1: f64,
    pub omega2: f64,
}

impl EnvelopeCurve {
    /// `count` exposed points at `phi = 2 pi j / count`.
    pub fn sample(system: &ModalSystem, qdot0: f64, count: usize) -> Result<Self> {
        ensure_finite("qdot0", qdot0)?;
        if count < 8 {
            return Err(Error::InvalidInput(format!(
                "envelope needs at least 8 directions, got {count}"
            )));
        }
        let rho0 = qdot0 / system.frequency_sum();
        let samples = (0..count)
            .map(|j| {
                let phi = TAU * j as f64 / count as f64;
                let [q, qdot] = boundary_point(system, rho0, phi);
                EnvelopePoint { phi, q, qdot }
            })
            .collect();
        Ok(Self {
            samples,
            rho0,
            omega1: system.omega1,
            omega2: system.omega2,
        })
    }

    /// `|qdot0|` recovered from the amplitude, the hull's extent along `q'`.
    pub fn max_radius(&self) -> f64 {
        self.rho0.abs() * (self.omega1 + self.omega2)
    }

    /// Largest violation of the sampled support inequalities by `point`
    /// (negative when strictly inside every supporting half-plane).
    pub fn max_violation(&self, point: [f64; 2]) -> f64 {
        self.samples
            .iter()
            .map(|s| {
                let [c, sn] = s.direction();
                point[0] * c + point[1] * sn - s.support()
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Whether consecutive edges of the closed polygon all turn the same way.
    pub fn is_convex(&self) -> bool {
        let pts = &self.samples;
        let m = pts.len();
        let mut sign = 0.0;
        for i in 0..m {
            let (a, b, c) = (&pts[i], &pts[(i + 1) % m], &pts[(i + 2) % m]);
            let e1 = (b.q - a.q, b.qdot - a.qdot);
            let e2 = (c.q - b.q, c.qdot - b.qdot);
            let cross = e1.0 * e2.1 - e1.1 * e2.0;
            if cross == 0.0 {
                continue;
            }
            if sign == 0.0 {
                sign = cross.signum();
            } else if cross.signum() != sign {
                return false;
            }
        }
        true
    }
}

/// Alias for [`EnvelopeCurve::sample`].
pub fn sample_envelope(system: &ModalSystem, qdot0: f64, count: usize) -> Result<EnvelopeCurve> {
    EnvelopeCurve::sample(system, qdot0, count)
}
