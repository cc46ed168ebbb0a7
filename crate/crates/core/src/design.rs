//! Interconnection shaping over resonant pairs.
//!
//! Each candidate pair is scored by its unit inscribed radius and its beat
//! time. Absorption minimises the radius, containment maximises it, both
//! subject to `T_min <= T_max` and a minimum beat ratio.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inscribed::{inscribed_radius_exact, InscribedReport, ResonantParam};
use crate::resonance::{enumerate_pairs, ResonantPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TMinMode {
    /// `pi / |n|`
    #[default]
    Approx,
    /// `(tau sigma)^{1/2} theta_min`
    Exact,
}

impl TMinMode {
    pub fn pick(&self, report: &InscribedReport) -> f64 {
        match self {
            TMinMode::Approx => report.t_min_approx,
            TMinMode::Exact => report.t_min_exact,
        }
    }
}

impl FromStr for TMinMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "approx" => Ok(TMinMode::Approx),
            "exact" => Ok(TMinMode::Exact),
            other => Err(Error::InvalidInput(format!("unknown t_min mode `{other}`"))),
        }
    }
}

impl fmt::Display for TMinMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TMinMode::Approx => "approx",
            TMinMode::Exact => "exact",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// Drain the host subsystem: smallest inscribed radius.
    Absorb,
    /// Keep energy in the host subsystem: largest inscribed radius.
    Contain,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignQuery {
    pub objective: Objective,
    pub t_max: f64,
    pub beat_min: f64,
    pub max_order: u64,
    /// Drop pairs with `tau + sigma <= M`.
    pub exclude_low_order: Option<u64>,
    /// Disturbance bound `D` on `|qdot0|`.
    pub d_bound: f64,
    pub t_min_mode: TMinMode,
    /// Only consider pairs with this `tau - sigma`.
    pub delta: Option<u64>,
}

impl DesignQuery {
    pub fn new(objective: Objective, t_max: f64) -> Self {
        Self {
            objective,
            t_max,
            beat_min: 10.0,
            max_order: 100,
            exclude_low_order: None,
            d_bound: 1.0,
            t_min_mode: TMinMode::Approx,
            delta: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.t_max.is_nan() || self.t_max <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "t_max must be positive, got {}",
                self.t_max
            )));
        }
        if !self.beat_min.is_finite() || self.beat_min < 1.0 {
            return Err(Error::InvalidInput(format!(
                "beat_min must be >= 1, got {}",
                self.beat_min
            )));
        }
        if self.max_order < 3 {
            return Err(Error::InvalidInput(format!(
                "max_order must be at least 3, got {}",
                self.max_order
            )));
        }
        if !self.d_bound.is_finite() || self.d_bound < 0.0 {
            return Err(Error::InvalidInput(format!(
                "d_bound must be >= 0, got {}",
                self.d_bound
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParetoPoint {
    pub pair: ResonantPair,
    pub n: f64,
    /// Inscribed radius at `qdot0 = 1`.
    pub r_res_unit: f64,
    pub t_min: f64,
    pub dominated: bool,
}

impl ParetoPoint {
    /// Lower-or-equal in both objectives and strictly lower in one.
    pub fn dominates(&self, other: &ParetoPoint) -> bool {
        self.r_res_unit <= other.r_res_unit
            && self.t_min <= other.t_min
            && (self.r_res_unit < other.r_res_unit || self.t_min < other.t_min)
    }
}

pub fn score_pair(pair: ResonantPair, mode: TMinMode) -> Result<ParetoPoint> {
    let report = inscribed_radius_exact(&ResonantParam::new(pair, 1.0))?;
    Ok(ParetoPoint {
        pair,
        n: pair.coupling(),
        r_res_unit: report.r_res,
        t_min: mode.pick(&report),
        dominated: false,
    })
}

/// Sets `dominated` on every point and sorts by `(t_min, r_res_unit, order, delta)`.
pub fn mark_dominance(points: &mut [ParetoPoint]) {
    points.sort_by(|a, b| {
        a.t_min
            .total_cmp(&b.t_min)
            .then(a.r_res_unit.total_cmp(&b.r_res_unit))
            .then((a.pair.order(), a.pair.delta()).cmp(&(b.pair.order(), b.pair.delta())))
    });
    // strictly faster points seen so far
    let mut best_faster = f64::INFINITY;
    let mut i = 0;
    while i < points.len() {
        let t = points[i].t_min;
        let end = i + points[i..].iter().take_while(|p| p.t_min == t).count();
        let group_best = points[i].r_res_unit;
        for p in &mut points[i..end] {
            p.dominated = best_faster <= p.r_res_unit || p.r_res_unit > group_best;
        }
        best_faster = best_faster.min(group_best);
        i = end;
    }
}

/// Every beat-admissible pair up to `max_order`, scored and flagged.
pub fn pareto_frontier(max_order: u64, beat_min: f64, mode: TMinMode) -> Result<Vec<ParetoPoint>> {
    if max_order < 3 {
        return Err(Error::InvalidInput(format!(
            "max_order must be at least 3, got {max_order}"
        )));
    }
    let mut points = enumerate_pairs(max_order, beat_min)
        .into_par_iter()
        .map(|p| score_pair(p, mode))
        .collect::<Result<Vec<_>>>()?;
    mark_dominance(&mut points);
    Ok(points)
}

/// Points with `dominated == false`.
pub fn non_dominated(points: &[ParetoPoint]) -> Vec<ParetoPoint> {
    points.iter().filter(|p| !p.dominated).copied().collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignOutcome {
    pub query: DesignQuery,
    pub feasible: bool,
    pub chosen: Option<ParetoPoint>,
    /// `D * r_res_unit` of the chosen pair.
    pub r_res: Option<f64>,
    pub h_q_min: Option<f64>,
    pub rationale: String,
    pub frontier: Vec<ParetoPoint>,
}

fn better(objective: Objective, a: &ParetoPoint, b: &ParetoPoint) -> bool {
    let radius = match objective {
        Objective::Absorb => a.r_res_unit.total_cmp(&b.r_res_unit),
        Objective::Contain => b.r_res_unit.total_cmp(&a.r_res_unit),
    };
    radius
        .then(a.t_min.total_cmp(&b.t_min))
        .then((a.pair.order(), a.pair.delta()).cmp(&(b.pair.order(), b.pair.delta())))
        .is_lt()
}

/// Solves the absorption or containment problem over the enumerated pairs.
///
/// An empty feasible set is reported as `feasible = false` with the
/// constraint that emptied it named in `rationale`.
pub fn solve(query: &DesignQuery) -> Result<DesignOutcome> {
    query.validate()?;
    let frontier = pareto_frontier(query.max_order, query.beat_min, query.t_min_mode)?;
    let infeasible = |why: String| DesignOutcome {
        query: *query,
        feasible: false,
        chosen: None,
        r_res: None,
        h_q_min: None,
        rationale: why,
        frontier: frontier.clone(),
    };

    if frontier.is_empty() {
        return Ok(infeasible(format!(
            "beat ratio >= {} admits no coprime pair with tau + sigma <= {}",
            query.beat_min, query.max_order
        )));
    }
    let mut pool: Vec<&ParetoPoint> = frontier.iter().collect();
    if let Some(delta) = query.delta {
        pool.retain(|p| p.pair.delta() == delta);
        if pool.is_empty() {
            return Ok(infeasible(format!(
                "no beat-admissible pair with tau - sigma = {delta} up to order {}",
                query.max_order
            )));
        }
    }
    if let Some(m) = query.exclude_low_order {
        pool.retain(|p| p.pair.order() > m);
        if pool.is_empty() {
            return Ok(infeasible(format!(
                "low-order exclusion (order <= {m}) removes every candidate"
            )));
        }
    }
    let fastest = pool
        .iter()
        .copied()
        .min_by(|a, b| a.t_min.total_cmp(&b.t_min))
        .copied()
        .expect("pool is non-empty");
    pool.retain(|p| p.t_min <= query.t_max);
    let Some(chosen) = pool.iter().copied().copied().reduce(|best, p| {
        if better(query.objective, &p, &best) {
            p
        } else {
            best
        }
    }) else {
        return Ok(infeasible(format!(
            "T_max = {} is below the fastest candidate {} with T_min = {:.4}",
            query.t_max, fastest.pair, fastest.t_min
        )));
    };

    let r_res = query.d_bound * chosen.r_res_unit;
    let goal = match query.objective {
        Objective::Absorb => "smallest",
        Objective::Contain => "largest",
    };
    let rationale = format!(
        "{} has the {goal} r_res among {} candidates with T_min <= {} and beat ratio >= {}; \
         T_min = {:.4}, beat ratio = {:.4}",
        chosen.pair,
        pool.len(),
        query.t_max,
        query.beat_min,
        chosen.t_min,
        chosen.pair.beat_ratio()
    );
    Ok(DesignOutcome {
        query: *query,
        feasible: true,
        chosen: Some(chosen),
        r_res: Some(r_res),
        h_q_min: Some(0.5 * r_res * r_res),
        rationale,
        frontier,
    })
}

/// Scales a unit-disturbance score to `qdot0`: `(r_res, h_q_min)`.
pub fn scale_disturbance(point: &ParetoPoint, qdot0: f64) -> (f64, f64) {
    let r = qdot0.abs() * point.r_res_unit;
    (r, 0.5 * r * r)
}
