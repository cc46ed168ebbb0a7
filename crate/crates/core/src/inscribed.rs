//! Resonant inscribed radius.
//!
//! At a resonant pair the `(q, q')` projection is a closed Lissajous curve.
//! With `theta = t / (tau sigma)^{1/2}`,
//!
//! ```text
//! q(theta)  = rho0 (sin(tau theta) + sin(sigma theta))
//! q'(theta) = rho0 ((tau/sigma)^{1/2} cos(tau theta) + (sigma/tau)^{1/2} cos(sigma theta))
//! ```
//!
//! and `r_res = min |(q, q')|` over one period. Pairs with
//! `tau - sigma = 2 (mod 4)` pass through the origin. For every other pair
//! the minimum sits at a zero of `q'` inside a lobe (an arc between
//! consecutive zeros of `q`), which [`inscribed_radius_exact`] finds by
//! bracketed bisection in every lobe.
//!
//! Near the slow-mode nodes `theta = pi (1 + 2m) / delta` the critical phase
//! also has a first-order proxy from the scalar equation `u + tan u = s`
//! with a uniform error bound `pi^3 delta^2 / (tau + sigma)^3`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::Serialize;

use crate::dynamics::ImpulseTrajectory;
use crate::error::{ensure_finite, Error, Result};
use crate::numeric::bisect;
use crate::resonance::ResonantPair;

/// Bracket width at which critical phases are accepted.
pub const ROOT_TOL: f64 = 1e-13;
/// Sign-change probes per unit of order over one period.
pub const PROBES_PER_ORDER: usize = 64;
/// Two critical values closer than this (relative) tie for the global minimum.
const MIN_TIE_RTOL: f64 = 1e-9;

/// Resonant time scaling of one impulse response.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResonantParam {
    pub pair: ResonantPair,
    /// `1 / (tau sigma)^{1/2}`, so `(tau alpha, sigma alpha) = (omega1, omega2)`.
    pub alpha_scale: f64,
    pub rho0: f64,
}

impl ResonantParam {
    pub fn new(pair: ResonantPair, qdot0: f64) -> Self {
        let root = ((pair.tau() * pair.sigma()) as f64).sqrt();
        // (n^2 + 4)^{1/2} = (tau + sigma) / (tau sigma)^{1/2}
        Self {
            pair,
            alpha_scale: 1.0 / root,
            rho0: qdot0 * root / pair.order() as f64,
        }
    }

    pub fn q_of_theta(&self, theta: f64) -> (f64, f64) {
        let (q, qdot) = unit_shape(&self.pair, theta);
        (self.rho0 * q, self.rho0 * qdot)
    }

    /// `R(theta) = q^2 + q'^2`.
    pub fn radius_squared(&self, theta: f64) -> f64 {
        let (q, qdot) = self.q_of_theta(theta);
        q * q + qdot * qdot
    }

    pub fn qdot0(&self) -> f64 {
        self.rho0 * self.pair.order() as f64 * self.alpha_scale
    }
}

/// `(q, q') / rho0` at phase `theta`.
fn unit_shape(pair: &ResonantPair, theta: f64) -> (f64, f64) {
    let (tau, sigma) = (pair.tau() as f64, pair.sigma() as f64);
    let (st, ct) = (tau * theta).sin_cos();
    let (ss, cs) = (sigma * theta).sin_cos();
    let w = (tau / sigma).sqrt();
    (st + ss, w * ct + cs / w)
}

fn unit_qdot(pair: &ResonantPair, theta: f64) -> f64 {
    unit_shape(pair, theta).1
}

/// Zeros of `q` in `[0, 2 pi)`: `2 pi j / (tau + sigma)` together with
/// `pi (1 + 2m) / (tau - sigma)`, sorted and merged within `1e-12`.
pub fn lobe_boundaries(pair: &ResonantPair) -> Vec<f64> {
    let (a, b) = (pair.order(), pair.delta());
    let mut roots: Vec<f64> = (0..a).map(|j| TAU * j as f64 / a as f64).collect();
    roots.extend((0..b).map(|m| PI * (1 + 2 * m) as f64 / b as f64));
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|next, kept| *next - *kept <= 1e-12);
    roots
}

/// Consecutive lobe boundaries, closing the period at `2 pi`.
pub fn lobes(pair: &ResonantPair) -> Vec<(f64, f64)> {
    let mut edges = lobe_boundaries(pair);
    edges.push(TAU);
    edges.windows(2).map(|w| (w[0], w[1])).collect()
}

/// The zero of `q'` inside `lobe`.
///
/// Sign changes are counted on a probe grid sized for the pair's order; the
/// single bracketing cell is then bisected to [`ROOT_TOL`].
pub fn critical_phase_in_lobe(param: &ResonantParam, lobe: (f64, f64)) -> Result<f64> {
    critical_phase_unit(&param.pair, lobe)
}

fn critical_phase_unit(pair: &ResonantPair, (lo, hi): (f64, f64)) -> Result<f64> {
    let per_period = PROBES_PER_ORDER * pair.order() as usize;
    let probes = ((per_period as f64 * (hi - lo) / TAU).ceil() as usize).max(16);
    let grid: Vec<f64> = (0..=probes)
        .map(|j| lo + (hi - lo) * j as f64 / probes as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&t| unit_qdot(pair, t)).collect();
    let brackets: Vec<usize> = (0..probes)
        .filter(|&j| values[j] * values[j + 1] < 0.0 || (values[j + 1] == 0.0 && j + 1 < probes))
        .collect();
    match brackets.as_slice() {
        [j] => bisect(|t| unit_qdot(pair, t), grid[*j], grid[j + 1], ROOT_TOL).ok_or_else(|| {
            Error::NumericalStructure(format!("lost the bracket in lobe [{lo}, {hi}] of {pair}"))
        }),
        [] => Err(Error::NumericalStructure(format!(
            "q' has no sign change in lobe [{lo}, {hi}] of {pair}; degenerate pair?"
        ))),
        many => Err(Error::NumericalStructure(format!(
            "q' changes sign {} times in lobe [{lo}, {hi}] of {pair}",
            many.len()
        ))),
    }
}

/// Slow/fast phase bookkeeping of the asymptotic proxy at one slow node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticFrame {
    /// `tau + sigma`
    pub a: u64,
    /// `tau - sigma`
    pub b: u64,
    /// `b / a`
    pub x: f64,
    /// Slow node index `m`: the node is `theta_0 = pi (1 + 2m) / b`.
    pub node: u64,
    /// Nearest fast node, `round((1 + 2m) / (2x))` with halves rounded up.
    pub k: u64,
    /// Phase lag `pi/2 + m pi - k pi x` between fast and slow node.
    pub mu: f64,
    /// `mu / x`
    pub s: f64,
}

impl AsymptoticFrame {
    pub fn new(pair: &ResonantPair, node: u64) -> Result<Self> {
        if pair.is_degenerate() {
            return Err(Error::NotApplicable(format!(
                "{pair} is degenerate; the minimum is at pi/2 in closed form"
            )));
        }
        let (a, b) = (pair.order(), pair.delta());
        if node >= b {
            return Err(Error::InvalidInput(format!(
                "slow node {node} out of range for delta = {b}"
            )));
        }
        let x = b as f64 / a as f64;
        // round((1 + 2m) a / (2b)), half up, in integers
        let k = ((1 + 2 * node) * a + b) / (2 * b);
        let mu = FRAC_PI_2 + node as f64 * PI - k as f64 * PI * x;
        Ok(Self {
            a,
            b,
            x,
            node,
            k,
            mu,
            s: mu / x,
        })
    }

    /// `theta_0 = pi (1 + 2m) / b`
    pub fn slow_node(&self) -> f64 {
        PI * (1 + 2 * self.node) as f64 / self.b as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticPhase {
    pub theta_asy: f64,
    pub u_asy: f64,
    pub frame: AsymptoticFrame,
}

/// Unique root of `u + tan u = s` on `(-pi/2, pi/2)`.
pub fn solve_reduced(s: f64) -> f64 {
    // u + tan u runs from -inf to +inf monotonically on the open interval
    bisect(|u| u + u.tan() - s, -FRAC_PI_2, FRAC_PI_2, 1e-15).expect("monotone bracket")
}

/// First-order proxy for the critical phase near the first slow node `pi / delta`.
pub fn asymptotic_phase(pair: &ResonantPair) -> Result<AsymptoticPhase> {
    asymptotic_phase_at_node(pair, 0)
}

/// Proxy near slow node `pi (1 + 2 node) / delta`:
/// `theta_asy = theta_0 + (2/a) (u_asy - s)`.
pub fn asymptotic_phase_at_node(pair: &ResonantPair, node: u64) -> Result<AsymptoticPhase> {
    let frame = AsymptoticFrame::new(pair, node)?;
    let u_asy = solve_reduced(frame.s);
    let theta_asy = frame.slow_node() + 2.0 / frame.a as f64 * (u_asy - frame.s);
    Ok(AsymptoticPhase {
        theta_asy,
        u_asy,
        frame,
    })
}

/// Uniform bound `pi^3 (tau - sigma)^2 / (tau + sigma)^3` on
/// `|theta_c - theta_asy|`.
pub fn error_bound(pair: &ResonantPair) -> f64 {
    let (a, b) = (pair.order() as f64, pair.delta() as f64);
    PI.powi(3) * b * b / (a * a * a)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BeatTime {
    /// `pi / |n|`
    pub approx: f64,
    /// `(tau sigma)^{1/2} theta_min`
    pub exact: f64,
}

pub fn beat_time(pair: &ResonantPair, theta_min: f64) -> BeatTime {
    let root = ((pair.tau() * pair.sigma()) as f64).sqrt();
    BeatTime {
        approx: PI * root / pair.delta() as f64,
        exact: root * theta_min,
    }
}

/// Critical phases of one period at unit amplitude: `(theta_c, |q(theta_c)| / rho0)`.
pub fn critical_phases(pair: &ResonantPair) -> Result<Vec<(f64, f64)>> {
    lobes(pair)
        .into_iter()
        .map(|lobe| {
            let theta = critical_phase_unit(pair, lobe)?;
            Ok((theta, unit_shape(pair, theta).0.abs()))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InscribedReport {
    pub pair: ResonantPair,
    pub qdot0: f64,
    pub degenerate: bool,
    pub r_res: f64,
    pub theta_min: f64,
    /// Proxy at the slow node owning `theta_min`; `None` for degenerate pairs.
    pub theta_asy: Option<f64>,
    pub u_asy: Option<f64>,
    pub slow_node: Option<u64>,
    pub error_bound: Option<f64>,
    /// `|theta_min - theta_asy| <= error_bound`; trivially true when degenerate.
    pub certified: bool,
    pub t_min_exact: f64,
    pub t_min_approx: f64,
    pub h_q_min: f64,
}

/// Exact inscribed radius of a resonant impulse response.
///
/// Degenerate pairs short-circuit to `r_res = 0` at `theta = pi/2`. Otherwise
/// every lobe's critical phase is located and the smallest `|q|` wins. The
/// global minimum is attained at mirrored phases `theta` and `2 pi - theta`
/// (and possibly at several slow nodes); the reported minimiser is the one
/// closest to its slow-node proxy, which is what the error bound certifies.
pub fn inscribed_radius_exact(param: &ResonantParam) -> Result<InscribedReport> {
    let pair = param.pair;
    let scale = param.rho0.abs();
    let qdot0 = param.qdot0();
    if pair.is_degenerate() {
        let beat = beat_time(&pair, FRAC_PI_2);
        return Ok(InscribedReport {
            pair,
            qdot0,
            degenerate: true,
            r_res: 0.0,
            theta_min: FRAC_PI_2,
            theta_asy: None,
            u_asy: None,
            slow_node: None,
            error_bound: None,
            certified: true,
            t_min_exact: beat.exact,
            t_min_approx: beat.approx,
            h_q_min: 0.0,
        });
    }

    let crit = critical_phases(&pair)?;
    let global = crit.iter().map(|&(_, v)| v).fold(f64::INFINITY, f64::min);
    let attains = |v: f64| v <= global * (1.0 + MIN_TIE_RTOL);

    let mut chosen = None;
    for node in 0..pair.delta() {
        let proxy = asymptotic_phase_at_node(&pair, node)?;
        let nearest = crit
            .iter()
            .copied()
            .min_by(|x, y| {
                (x.0 - proxy.theta_asy)
                    .abs()
                    .total_cmp(&(y.0 - proxy.theta_asy).abs())
            })
            .expect("every pair has at least one lobe");
        if attains(nearest.1) {
            chosen = Some((nearest, proxy));
            break;
        }
    }
    let ((theta_min, unit_r), proxy) = match chosen {
        Some(found) => found,
        None => {
            let first = crit
                .iter()
                .copied()
                .find(|&(_, v)| attains(v))
                .expect("global minimum is attained");
            (first, asymptotic_phase(&pair)?)
        }
    };

    let bound = error_bound(&pair);
    let r_res = scale * unit_r;
    let beat = beat_time(&pair, theta_min);
    Ok(InscribedReport {
        pair,
        qdot0,
        degenerate: false,
        r_res,
        theta_min,
        theta_asy: Some(proxy.theta_asy),
        u_asy: Some(proxy.u_asy),
        slow_node: Some(proxy.frame.node),
        error_bound: Some(bound),
        certified: (theta_min - proxy.theta_asy).abs() <= bound,
        t_min_exact: beat.exact,
        t_min_approx: beat.approx,
        h_q_min: 0.5 * r_res * r_res,
    })
}

/// Smallest sampled radius of a non-resonant response, never certified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampledRadius {
    pub r_min: f64,
    pub t_at_min: f64,
    pub horizon: f64,
    pub samples: usize,
    pub certified: bool,
}

/// Dense time sampling of `|(q, q')|` over `[0, horizon]`.
///
/// Used when the coupling is not resonant, where the inscribed radius is
/// not defined and the sampled value only shrinks as the horizon grows.
pub fn sampled_inscribed_radius(
    traj: &ImpulseTrajectory,
    horizon: f64,
    samples: usize,
) -> Result<SampledRadius> {
    ensure_finite("horizon", horizon)?;
    if horizon <= 0.0 || samples < 2 {
        return Err(Error::InvalidInput(format!(
            "need horizon > 0 and at least 2 samples, got {horizon} and {samples}"
        )));
    }
    let mut best = (f64::INFINITY, 0.0);
    for j in 0..samples {
        let t = horizon * j as f64 / (samples - 1) as f64;
        let s = traj.state_at(t);
        let r = s.q.hypot(s.qdot);
        if r < best.0 {
            best = (r, t);
        }
    }
    Ok(SampledRadius {
        r_min: best.0,
        t_at_min: best.1,
        horizon,
        samples,
        certified: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resonance::enumerate_pairs;

    fn pair(t: u64, s: u64) -> ResonantPair {
        ResonantPair::new(t, s).unwrap()
    }

    /// Dense-grid minimum of |(q, q')| at unit qdot0, independent of the lobe logic.
    fn grid_min(p: &ResonantPair, points: usize) -> (f64, f64) {
        let param = ResonantParam::new(*p, 1.0);
        (0..points)
            .map(|j| {
                let th = TAU * j as f64 / points as f64;
                (param.radius_squared(th).sqrt(), th)
            })
            .fold((f64::INFINITY, 0.0), |a, b| if b.0 < a.0 { b } else { a })
    }

    #[test]
    fn param_matches_modal_frequencies() {
        for p in enumerate_pairs(40, 1.0) {
            let param = ResonantParam::new(p, 1.0);
            let sys = p.modal_system();
            assert!((p.tau() as f64 * param.alpha_scale - sys.omega1).abs() < 1e-12);
            assert!((p.sigma() as f64 * param.alpha_scale - sys.omega2).abs() < 1e-12);
            assert!((param.qdot0() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn initial_phase_is_the_impulse() {
        let param = ResonantParam::new(pair(7, 3), 1.7);
        let (q, qdot) = param.q_of_theta(0.0);
        assert_eq!(q, 0.0);
        assert!((qdot - 1.7).abs() < 1e-14);
        assert!((param.radius_squared(0.0) - 1.7 * 1.7).abs() < 1e-13);
    }

    #[test]
    fn three_one_passes_through_origin() {
        let param = ResonantParam::new(pair(3, 1), 1.0);
        let (q, qdot) = param.q_of_theta(FRAC_PI_2);
        assert!(q.abs() < 1e-15 && qdot.abs() < 1e-15);
    }

    #[test]
    fn six_five_dense_grid_minimum() {
        let (r, _) = grid_min(&pair(6, 5), 400_000);
        assert!((r - 5.075e-2).abs() < 1e-3);
    }

    #[test]
    fn two_one_lobes() {
        let roots = lobe_boundaries(&pair(2, 1));
        let expected = [0.0, TAU / 3.0, PI, 2.0 * TAU / 3.0];
        assert_eq!(roots.len(), expected.len());
        for (r, e) in roots.iter().zip(expected) {
            assert!((r - e).abs() < 1e-15);
            let param = ResonantParam::new(pair(2, 1), 1.0);
            assert!(param.q_of_theta(*r).0.abs() < 1e-12);
        }
    }

    #[test]
    fn lobe_roots_vanish_and_include_pi() {
        for p in enumerate_pairs(40, 1.0) {
            let roots = lobe_boundaries(&p);
            assert!(roots.len() >= 2);
            assert!(roots.windows(2).all(|w| w[1] - w[0] > 1e-12));
            let param = ResonantParam::new(p, 1.0);
            for r in &roots {
                assert!(param.q_of_theta(*r).0.abs() < 1e-12, "{p} at {r}");
            }
        }
        assert!(lobe_boundaries(&pair(4, 3))
            .iter()
            .any(|r| (r - PI).abs() < 1e-15));
    }

    #[test]
    fn six_five_critical_phase() {
        let p = pair(6, 5);
        let param = ResonantParam::new(p, 1.0);
        let lobe = lobes(&p)
            .into_iter()
            .find(|&(lo, hi)| lo < 3.29 && 3.29 < hi)
            .unwrap();
        let theta = critical_phase_in_lobe(&param, lobe).unwrap();
        assert!((theta - 3.298).abs() < 1e-3);
        assert!((theta - 3.30).abs() <= 0.01);
        let q = |t: f64| param.q_of_theta(t).1;
        assert!(q(theta - 1e-6).signum() != q(theta + 1e-6).signum());
    }

    #[test]
    fn two_one_first_lobe_critical_phase() {
        let p = pair(2, 1);
        let theta = critical_phase_in_lobe(&ResonantParam::new(p, 1.0), (0.0, TAU / 3.0)).unwrap();
        let residual = 2f64.sqrt() * (2.0 * theta).cos() + (theta).cos() / 2f64.sqrt();
        assert!(residual.abs() < 1e-12);
        assert!(theta > 0.0 && theta < TAU / 3.0);
    }

    #[test]
    fn degenerate_lobe_has_no_sign_change() {
        // (3,1): q' = sqrt(3) cos 3t + cos t / sqrt(3) vanishes at pi/2 together with q
        let p = pair(3, 1);
        let param = ResonantParam::new(p, 1.0);
        let lobe = (FRAC_PI_2 - 0.3, FRAC_PI_2 - 0.1);
        assert!(matches!(
            critical_phase_in_lobe(&param, lobe),
            Err(Error::NumericalStructure(_))
        ));
    }

    #[test]
    fn every_lobe_has_one_critical_phase() {
        for p in enumerate_pairs(60, 1.0)
            .into_iter()
            .filter(|p| !p.is_degenerate())
        {
            let crit = critical_phases(&p).unwrap();
            assert_eq!(crit.len(), lobes(&p).len());
        }
    }

    #[test]
    fn case_a_is_degenerate() {
        let report = inscribed_radius_exact(&ResonantParam::new(pair(11, 9), 1.0)).unwrap();
        assert!(report.degenerate);
        assert_eq!(report.r_res, 0.0);
        assert_eq!(report.theta_min, FRAC_PI_2);
        assert!((report.t_min_approx - 15.6).abs() < 0.1);
        assert!((report.t_min_exact - report.t_min_approx).abs() < 1e-12);
    }

    #[test]
    fn case_b_inscribed_radius() {
        let report = inscribed_radius_exact(&ResonantParam::new(pair(6, 5), 1.0)).unwrap();
        assert!(!report.degenerate);
        assert!((report.r_res - 5.075e-2).abs() < 1e-3);
        assert!((report.theta_min - 3.2979).abs() < 1e-4);
        assert!((report.t_min_approx - PI * 30f64.sqrt()).abs() < 1e-12);
        assert!((report.t_min_approx - 17.2).abs() < 0.1);
        assert!((report.t_min_exact - 18.1).abs() < 0.05);
        assert_eq!(report.slow_node, Some(0));
        assert!(report.certified);
        assert!((report.h_q_min - 0.5 * report.r_res.powi(2)).abs() < 1e-18);
    }

    #[test]
    fn case_b_asymptotic_phase() {
        let p = pair(6, 5);
        let proxy = asymptotic_phase(&p).unwrap();
        assert_eq!(proxy.frame.k, 6);
        assert!((proxy.theta_asy - 3.30).abs() <= 0.01);
        // u + tan u = -pi/2 has its root near -0.71
        assert!((proxy.frame.s + FRAC_PI_2).abs() < 1e-12);
        assert!((proxy.u_asy + 0.7105).abs() < 1e-3);
        let (_, qdot) = ResonantParam::new(p, 1.0).q_of_theta(proxy.theta_asy);
        assert!((qdot.abs() - 1.2e-4).abs() < 2e-5);
        assert!(qdot.abs() < 2.43e-4);
    }

    #[test]
    fn reduced_equation_is_odd() {
        assert_eq!(solve_reduced(0.0), 0.0);
        for s in [0.3, 1.0, 1.5, -0.8] {
            let u = solve_reduced(s);
            assert!((u + u.tan() - s).abs() < 1e-12);
            assert!((solve_reduced(-s) + u).abs() < 1e-14);
        }
    }

    #[test]
    fn asymptotic_phase_rejects_degenerate() {
        assert!(matches!(
            asymptotic_phase(&pair(11, 9)),
            Err(Error::NotApplicable(_))
        ));
        assert!(asymptotic_phase_at_node(&pair(6, 5), 1).is_err());
    }

    #[test]
    fn error_bound_values() {
        assert!((error_bound(&pair(6, 5)) - PI.powi(3) / 1331.0).abs() < 1e-15);
        assert!((error_bound(&pair(6, 5)) - 2.33e-2).abs() < 1e-4);
        assert!((error_bound(&pair(3, 2)) - PI.powi(3) / 125.0).abs() < 1e-15);
        assert!((error_bound(&pair(3, 2)) - 0.248).abs() < 1e-3);
        let along: Vec<f64> = (2..30).map(|t| error_bound(&pair(t, t - 1))).collect();
        assert!(along.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn beat_times() {
        assert!(
            (beat_time(&pair(11, 9), FRAC_PI_2).approx - PI * 99f64.sqrt() / 2.0).abs() < 1e-12
        );
        assert!((beat_time(&pair(11, 9), FRAC_PI_2).approx - 15.6).abs() < 0.1);
        assert!((beat_time(&pair(41, 35), FRAC_PI_2).approx - 19.8).abs() < 0.1);
        let b = beat_time(&pair(6, 5), 3.2979);
        assert!((b.approx - 17.2).abs() < 0.1);
        assert!((b.exact - 30f64.sqrt() * 3.2979).abs() < 1e-12);
    }

    #[test]
    fn exact_matches_dense_grid() {
        for p in enumerate_pairs(20, 1.0) {
            let report = inscribed_radius_exact(&ResonantParam::new(p, 1.0)).unwrap();
            let points = 200_000;
            let (grid, _) = grid_min(&p, points);
            assert!(report.r_res <= grid + 1e-12, "{p}: exact above grid");
            // half a grid step at the steepest slope of (q, q')
            let slack = (p.tau() as f64).powf(1.5) * TAU / points as f64;
            assert!(
                grid - report.r_res < slack,
                "{p}: {} vs {}",
                report.r_res,
                grid
            );
        }
    }

    #[test]
    fn minimiser_lobe_is_unimodal() {
        for p in enumerate_pairs(30, 1.0)
            .into_iter()
            .filter(|p| !p.is_degenerate())
        {
            let report = inscribed_radius_exact(&ResonantParam::new(p, 1.0)).unwrap();
            let (lo, hi) = lobes(&p)
                .into_iter()
                .find(|&(lo, hi)| lo < report.theta_min && report.theta_min < hi)
                .unwrap();
            let param = ResonantParam::new(p, 1.0);
            let steps = 400;
            let left: Vec<f64> = (0..=steps)
                .map(|j| {
                    param.radius_squared(lo + (report.theta_min - lo) * j as f64 / steps as f64)
                })
                .collect();
            let right: Vec<f64> = (0..=steps)
                .map(|j| {
                    param.radius_squared(
                        report.theta_min + (hi - report.theta_min) * j as f64 / steps as f64,
                    )
                })
                .collect();
            assert!(
                left.windows(2).all(|w| w[1] <= w[0] + 1e-15),
                "{p} not decreasing"
            );
            assert!(
                right.windows(2).all(|w| w[1] >= w[0] - 1e-15),
                "{p} not increasing"
            );
        }
    }

    #[test]
    fn certified_bracket_small_orders() {
        for p in enumerate_pairs(60, 1.0)
            .into_iter()
            .filter(|p| !p.is_degenerate() && p.delta() <= 5)
        {
            let report = inscribed_radius_exact(&ResonantParam::new(p, 1.0)).unwrap();
            assert!(report.certified, "{p} not certified");
        }
    }

    #[test]
    fn homogeneous_in_qdot0() {
        let unit = inscribed_radius_exact(&ResonantParam::new(pair(6, 5), 1.0)).unwrap();
        for qdot0 in [0.5, 2.0, 10.0, -3.0] {
            let scaled = inscribed_radius_exact(&ResonantParam::new(pair(6, 5), qdot0)).unwrap();
            assert!((scaled.r_res - qdot0.abs() * unit.r_res).abs() <= 1e-12 * scaled.r_res);
            assert_eq!(scaled.theta_min, unit.theta_min);
        }
        let zero = inscribed_radius_exact(&ResonantParam::new(pair(6, 5), 0.0)).unwrap();
        assert_eq!(zero.r_res, 0.0);
    }

    #[test]
    fn uncoupled_sampled_radius_is_full() {
        let sys = crate::dynamics::ModalSystem::new(0.0).unwrap();
        let traj = ImpulseTrajectory::new(sys, 1.0).unwrap();
        let s = sampled_inscribed_radius(&traj, 100.0, 10_000).unwrap();
        assert!((s.r_min - 1.0).abs() < 1e-12);
        assert!(!s.certified);
        assert!(sampled_inscribed_radius(&traj, 0.0, 10).is_err());
    }
}
