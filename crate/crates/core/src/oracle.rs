//! Brute-force cross-checks for the analytic results.
//!
//! Nothing here reuses the lobe/critical-phase machinery of
//! [`crate::inscribed`] or the modal closed form of [`crate::dynamics`]:
//! the radius oracle scans the resonant parametrisation directly, and the
//! integrator steps the original second-order model.

use std::f64::consts::TAU;

use nalgebra::{Matrix3, Vector3};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{grid_steps, StateSample};
use crate::envelope::EnvelopeCurve;
use crate::error::{ensure_finite, Error, Result};
use crate::inscribed::ResonantParam;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleConfig {
    /// Samples per `theta` period, at least `10^4`.
    pub grid_points: usize,
    /// Horizon, in slow periods `2 pi / |n|`, for non-resonant sweeps.
    pub horizon_periods: f64,
    pub integrator_dt: f64,
    /// Allowed relative energy drift of the integrator.
    pub energy_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            grid_points: 1 << 16,
            horizon_periods: 100.0,
            integrator_dt: 1e-3,
            energy_tol: 1e-7,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 10_000 {
            return Err(Error::InvalidInput(format!(
                "grid_points must be at least 10000, got {}",
                self.grid_points
            )));
        }
        if !(self.integrator_dt > 0.0 && self.integrator_dt.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "integrator_dt must be positive, got {}",
                self.integrator_dt
            )));
        }
        if !(self.horizon_periods > 0.0 && self.energy_tol > 0.0) {
            return Err(Error::InvalidInput(
                "horizon_periods and energy_tol must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > tol {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// `|(q, q')|` straight from the resonant parametrisation.
fn resonant_radius(param: &ResonantParam, theta: f64) -> f64 {
    let (t, s) = (param.pair.tau() as f64, param.pair.sigma() as f64);
    let q = (t * theta).sin() + (s * theta).sin();
    let qdot = (t / s).sqrt() * (t * theta).cos() + (s / t).sqrt() * (s * theta).cos();
    param.rho0.abs() * q.hypot(qdot)
}

/// Minimum of `|(q, q')|` over a uniform `theta` grid, polished by a
/// golden-section search on the two cells around the grid argmin.
///
/// Returns `(r_min, theta_at_min)`.
pub fn min_radius_dense(param: &ResonantParam, cfg: &OracleConfig) -> Result<(f64, f64)> {
    cfg.validate()?;
    let n = cfg.grid_points;
    let step = TAU / n as f64;
    let (r_grid, j) = (0..n)
        .into_par_iter()
        .map(|j| (resonant_radius(param, j as f64 * step), j))
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .expect("grid is non-empty");
    let centre = j as f64 * step;
    let (theta, r_refined) = golden_section(
        |th| resonant_radius(param, th),
        centre - step,
        centre + step,
        1e-10,
    );
    Ok(if r_refined < r_grid {
        (r_refined, theta.rem_euclid(TAU))
    } else {
        (r_grid, centre)
    })
}

/// Right-hand side of `q'' = -q - n z'`, `z'' = -z + n q'`.
fn model_rhs(n: f64, [q, qd, z, zd]: [f64; 4]) -> [f64; 4] {
    [qd, -q - n * zd, zd, -z + n * qd]
}

fn rk4_step(n: f64, y: [f64; 4], dt: f64) -> [f64; 4] {
    let add = |a: [f64; 4], b: [f64; 4], h: f64| std::array::from_fn(|i| a[i] + h * b[i]);
    let k1 = model_rhs(n, y);
    let k2 = model_rhs(n, add(y, k1, 0.5 * dt));
    let k3 = model_rhs(n, add(y, k2, 0.5 * dt));
    let k4 = model_rhs(n, add(y, k3, dt));
    std::array::from_fn(|i| y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

/// Fixed-step classical Runge-Kutta integration of the impulse response.
///
/// Fails with [`Error::EnergyDrift`] when the relative drift of `H` from
/// `qdot0^2 / 2` exceeds `energy_tol` anywhere on the trace.
pub fn integrate(
    n: f64,
    qdot0: f64,
    t_end: f64,
    dt: f64,
    energy_tol: f64,
) -> Result<Vec<StateSample>> {
    ensure_finite("coupling n", n)?;
    ensure_finite("qdot0", qdot0)?;
    if !(t_end > 0.0 && t_end.is_finite() && dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "need t_end > 0 and dt > 0, got {t_end} and {dt}"
        )));
    }
    let h0 = 0.5 * qdot0 * qdot0;
    let scale = if h0 > 0.0 { h0 } else { 1.0 };
    let steps = grid_steps(t_end, dt);
    let mut y = [0.0, qdot0, 0.0, 0.0];
    let mut out = Vec::with_capacity(steps + 1);
    let mut drift: f64 = 0.0;
    for i in 0..=steps {
        if i > 0 {
            y = rk4_step(n, y, dt);
        }
        let sample = StateSample::new(i as f64 * dt, y[0], y[1], y[2], y[3]);
        drift = drift.max((sample.h - h0).abs() / scale);
        out.push(sample);
    }
    if drift > energy_tol {
        return Err(Error::EnergyDrift {
            drift,
            tol: energy_tol,
        });
    }
    Ok(out)
}

/// Every `(q, q')` sample satisfies every sampled support inequality with
/// slack `1e-8 |qdot0|`.
pub fn hull_check(trace: &[StateSample], envelope: &EnvelopeCurve) -> bool {
    let slack = 1e-8 * envelope.max_radius();
    trace
        .par_iter()
        .all(|s| envelope.max_violation([s.q, s.qdot]) <= slack)
}

/// RMS residual of the best origin-centred conic `A x^2 + B xy + C y^2 = 1`
/// through the sampled envelope, relative to the unit right-hand side.
pub fn ellipse_fit_residual(envelope: &EnvelopeCurve) -> f64 {
    let scale = envelope.max_radius();
    let rows: Vec<Vector3<f64>> = envelope
        .samples
        .iter()
        .map(|p| {
            let (x, y) = (p.q / scale, p.qdot / scale);
            Vector3::new(x * x, x * y, y * y)
        })
        .collect();
    let normal: Matrix3<f64> = rows.iter().map(|r| r * r.transpose()).sum();
    let rhs: Vector3<f64> = rows.iter().sum();
    let Some(coef) = normal.lu().solve(&rhs) else {
        return f64::INFINITY;
    };
    let sq: f64 = rows.iter().map(|r| (r.dot(&coef) - 1.0).powi(2)).sum();
    (sq / rows.len() as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{ImpulseTrajectory, ModalSystem};
    use crate::resonance::ResonantPair;
    use std::f64::consts::PI;

    fn param(t: u64, s: u64) -> ResonantParam {
        ResonantParam::new(ResonantPair::new(t, s).unwrap(), 1.0)
    }

    #[test]
    fn config_validation() {
        assert!(OracleConfig::default().validate().is_ok());
        let small = OracleConfig {
            grid_points: 9_999,
            ..Default::default()
        };
        assert!(small.validate().is_err());
        let bad_dt = OracleConfig {
            integrator_dt: 0.0,
            ..Default::default()
        };
        assert!(bad_dt.validate().is_err());
    }

    #[test]
    fn golden_section_parabola() {
        let (x, fx) = golden_section(|x| (x - 0.3).powi(2) + 1.0, -1.0, 2.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 1.0).abs() < 1e-14);
        // a kink is located to the bracket width
        let (x, _) = golden_section(|x| (x - 0.3).abs(), -1.0, 2.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-10);
    }

    #[test]
    fn dense_minimum_reference_pairs() {
        let cfg = OracleConfig::default();
        assert!(min_radius_dense(&param(11, 9), &cfg).unwrap().0 <= 1e-6);
        assert!(min_radius_dense(&param(3, 1), &cfg).unwrap().0 <= 1e-6);
        let (r, theta) = min_radius_dense(&param(6, 5), &cfg).unwrap();
        assert!((r - 5.075e-2).abs() < 1e-4);
        assert!(theta > 0.0 && theta < TAU);
    }

    #[test]
    fn grid_doubling_is_stable() {
        let coarse = OracleConfig {
            grid_points: 20_000,
            ..Default::default()
        };
        let fine = OracleConfig {
            grid_points: 40_000,
            ..Default::default()
        };
        for (t, s) in [(6, 5), (4, 3), (13, 8), (17, 12)] {
            let a = min_radius_dense(&param(t, s), &coarse).unwrap().0;
            let b = min_radius_dense(&param(t, s), &fine).unwrap().0;
            assert!((a - b).abs() <= 1e-8, "({t},{s}): {a} vs {b}");
        }
    }

    #[test]
    fn uncoupled_integration_is_a_sine() {
        let trace = integrate(0.0, 1.0, 10.0, 1e-3, 1e-7).unwrap();
        assert_eq!(trace.len(), 10_001);
        for s in &trace {
            assert!((s.q - s.t.sin()).abs() < 1e-6);
        }
    }

    #[test]
    fn integration_matches_closed_form() {
        for n in [0.2, 1.0, 2.0, -3.0] {
            let traj = ImpulseTrajectory::new(ModalSystem::new(n).unwrap(), 1.0).unwrap();
            let trace = integrate(n, 1.0, 50.0, 1e-3, 1e-7).unwrap();
            for s in trace.iter().step_by(7) {
                let exact = traj.state_at(s.t).state();
                for (a, b) in s.state().iter().zip(exact) {
                    assert!((a - b).abs() <= 1e-5, "n = {n}, t = {}", s.t);
                }
            }
        }
    }

    #[test]
    fn integrator_drift_is_small() {
        let trace = integrate(1.0, 1.0, 100.0, 1e-3, 1e-7).unwrap();
        let last = trace.last().unwrap();
        assert!((last.h - 0.5).abs() / 0.5 <= 1e-7);
    }

    #[test]
    fn coarse_step_reports_drift() {
        let err = integrate(2.0, 1.0, 200.0, 0.5, 1e-7).unwrap_err();
        assert!(matches!(err, Error::EnergyDrift { .. }));
    }

    #[test]
    fn hull_check_cases() {
        for n in [2.0, 1.0 / 12f64.sqrt()] {
            let sys = ModalSystem::new(n).unwrap();
            let env = EnvelopeCurve::sample(&sys, 1.0, 256).unwrap();
            let traj = ImpulseTrajectory::new(sys, 1.0).unwrap();
            let trace = traj.sample_trace(200.0 * PI / n, 0.1).unwrap();
            assert!(hull_check(&trace, &env));
            let inflated: Vec<StateSample> = trace
                .iter()
                .map(|s| StateSample::new(s.t, 1.01 * s.q, 1.01 * s.qdot, s.z, s.zdot))
                .collect();
            assert!(!hull_check(&inflated, &env));
        }
    }

    #[test]
    fn ellipse_residual_separates_uncoupled() {
        let fit = |n: f64| {
            let env = EnvelopeCurve::sample(&ModalSystem::new(n).unwrap(), 1.0, 720).unwrap();
            ellipse_fit_residual(&env)
        };
        assert!(fit(0.0) <= 1e-10);
        for n in [0.1, -0.1, 0.3, 1.0, 2.0, -3.0] {
            assert!(fit(n) > 1e-6, "n = {n}: residual {}", fit(n));
        }
    }
}
