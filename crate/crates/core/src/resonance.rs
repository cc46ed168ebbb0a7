//! Resonant pair arithmetic.
//!
//! A resonant pair `(tau, sigma)` is a coprime pair with `tau > sigma` and
//! `omega1 / omega2 = tau / sigma`. It fixes the coupling through
//! `n^2 tau sigma = (tau - sigma)^2`.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::dynamics::ModalSystem;
use crate::error::{ensure_finite, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ResonantPair {
    tau: u64,
    sigma: u64,
}

impl ResonantPair {
    pub fn new(tau: u64, sigma: u64) -> Result<Self> {
        if sigma == 0 || tau <= sigma {
            return Err(Error::Ordering { tau, sigma });
        }
        let gcd = tau.gcd(&sigma);
        if gcd != 1 {
            return Err(Error::NotCoprime { tau, sigma, gcd });
        }
        Ok(Self { tau, sigma })
    }

    pub fn tau(&self) -> u64 {
        self.tau
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    /// `tau - sigma`
    pub fn delta(&self) -> u64 {
        self.tau - self.sigma
    }

    /// `tau + sigma`
    pub fn order(&self) -> u64 {
        self.tau + self.sigma
    }

    /// Beat ratio `(tau + sigma) / (tau - sigma)`: fast cycles per slow
    /// envelope period.
    pub fn beat_ratio(&self) -> f64 {
        self.order() as f64 / self.delta() as f64
    }

    pub fn satisfies_beat(&self, beat_min: f64) -> bool {
        // order >= beat_min * delta, kept exact for integral thresholds
        self.order() as f64 >= beat_min * self.delta() as f64
    }

    /// Positive coupling `(tau - sigma) / (tau sigma)^{1/2}`.
    pub fn coupling(&self) -> f64 {
        self.delta() as f64 / ((self.tau * self.sigma) as f64).sqrt()
    }

    pub fn modal_system(&self) -> ModalSystem {
        ModalSystem::new(self.coupling()).expect("pair coupling is finite")
    }

    /// `r_res = 0` exactly when `tau - sigma = 2 (mod 4)`.
    pub fn is_degenerate(&self) -> bool {
        self.delta() % 4 == 2
    }

    pub fn classify(&self, m_threshold: u64) -> ResonanceClass {
        let kind = if self.order() <= m_threshold {
            ResonanceKind::LowOrder
        } else {
            ResonanceKind::Generic
        };
        ResonanceClass {
            kind,
            m_threshold,
            order: self.order(),
            abs_n: self.coupling(),
        }
    }
}

impl fmt::Display for ResonantPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.tau, self.sigma)
    }
}

pub fn make_pair(tau: u64, sigma: u64) -> Result<ResonantPair> {
    ResonantPair::new(tau, sigma)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResonanceKind {
    /// `tau + sigma <= M`: strong phase locking.
    LowOrder,
    /// Outside the low-order set. Whether a family of such pairs is high
    /// order depends on how `order` and `abs_n` evolve along it.
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResonanceClass {
    pub kind: ResonanceKind,
    pub m_threshold: u64,
    pub order: u64,
    pub abs_n: f64,
}

/// Continued-fraction convergents `p / q` of `x >= 1` with `p + q <= max_order`.
fn convergents(x: f64, max_order: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let (mut h_prev, mut h) = (1u64, x.floor() as u64);
    let (mut k_prev, mut k) = (0u64, 1u64);
    let mut frac = x - x.floor();
    while h + k <= max_order {
        out.push((h, k));
        if frac < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        let a = a as u64;
        let (Some(h_next), Some(k_next)) = (
            a.checked_mul(h).and_then(|v| v.checked_add(h_prev)),
            a.checked_mul(k).and_then(|v| v.checked_add(k_prev)),
        ) else {
            break;
        };
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);
    }
    out
}

/// Smallest-order coprime pair whose coupling is within `tol` of `|n|`.
///
/// Convergents of the modal ratio give a fast first hit; the exhaustive
/// scan over lower orders then settles minimality. Ties go to the smaller
/// `delta`.
pub fn pair_from_coupling(n: f64, tol: f64, max_order: u64) -> Result<Option<ResonantPair>> {
    ensure_finite("coupling n", n)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if max_order < 3 {
        return Err(Error::InvalidInput(format!(
            "max_order must be at least 3, got {max_order}"
        )));
    }
    let target = n.abs();
    let matches = |p: &ResonantPair| (p.coupling() - target).abs() <= tol;

    let ratio = ModalSystem::new(target)?.ratio();
    let mut limit = max_order;
    let mut best = None;
    for (p, q) in convergents(ratio, max_order) {
        if let Ok(pair) = ResonantPair::new(p, q) {
            if matches(&pair) {
                limit = pair.order();
                best = Some(pair);
                break;
            }
        }
    }
    // every pair of order <= limit is checked, in (order, delta) order
    for order in 3..=limit {
        for delta in (1..order).filter(|d| (order - d) % 2 == 0) {
            let tau = (order + delta) / 2;
            let sigma = order - tau;
            if let Ok(pair) = ResonantPair::new(tau, sigma) {
                if matches(&pair) {
                    return Ok(Some(pair));
                }
            }
        }
    }
    Ok(best)
}

/// All coprime pairs with `tau + sigma <= max_order` and beat ratio at least
/// `beat_min`, sorted by `(order, delta)`.
pub fn enumerate_pairs(max_order: u64, beat_min: f64) -> Vec<ResonantPair> {
    let mut pairs = Vec::new();
    for order in 3..=max_order {
        for sigma in (1..=(order - 1) / 2).rev() {
            let tau = order - sigma;
            if let Ok(pair) = ResonantPair::new(tau, sigma) {
                if pair.satisfies_beat(beat_min) {
                    pairs.push(pair);
                }
            }
        }
    }
    pairs
}
