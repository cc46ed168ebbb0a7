//! C ABI over `gyroshape`.
//!
//! Every entry point returns a [`GsStatus`] and writes results through out
//! pointers. On failure the message is kept per thread and can be read with
//! [`gs_last_error`]. Sequences (envelopes, traces, frontiers, design
//! outcomes) are handed out as opaque handles that must be released with the
//! matching `*_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gyroshape::design::{self, DesignOutcome, DesignQuery, Objective, ParetoPoint, TMinMode};
use gyroshape::dynamics::{ImpulseTrajectory, ModalSystem, StateSample};
use gyroshape::envelope::{EnvelopeCurve, EnvelopePoint};
use gyroshape::inscribed::{self, InscribedReport, ResonantParam};
use gyroshape::resonance::{self, ResonantPair};
use gyroshape::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    NotCoprime = 3,
    Ordering = 4,
    NotApplicable = 5,
    Numerical = 6,
    OutOfRange = 7,
    Panic = 99,
}

pub const GS_OBJECTIVE_ABSORB: i32 = 0;
pub const GS_OBJECTIVE_CONTAIN: i32 = 1;
pub const GS_TMIN_APPROX: i32 = 0;
pub const GS_TMIN_EXACT: i32 = 1;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> GsStatus {
    match err {
        Error::InvalidInput(_) => GsStatus::InvalidInput,
        Error::NotCoprime { .. } => GsStatus::NotCoprime,
        Error::Ordering { .. } => GsStatus::Ordering,
        Error::NotApplicable(_) => GsStatus::NotApplicable,
        Error::NumericalStructure(_) | Error::EnergyDrift { .. } => GsStatus::Numerical,
    }
}

enum Failure {
    Core(Error),
    Null(&'static str),
    Range(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> GsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GsStatus::Ok,
        Ok(Err(Failure::Core(e))) => {
            let status = status_of(&e);
            set_last_error(e.to_string());
            status
        }
        Ok(Err(Failure::Null(name))) => {
            set_last_error(format!("{name} is null"));
            GsStatus::NullPointer
        }
        Ok(Err(Failure::Range(msg))) => {
            set_last_error(msg);
            GsStatus::OutOfRange
        }
        Err(_) => {
            set_last_error("panic inside gyroshape".to_owned());
            GsStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, name: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(name))
}

unsafe fn handle<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(name))
}

fn item<T: Copy>(items: &[T], index: usize) -> Result<T, Failure> {
    items.get(index).copied().ok_or_else(|| {
        Failure::Range(format!(
            "index {index} out of range for length {}",
            items.len()
        ))
    })
}

fn mode(code: i32) -> Result<TMinMode, Failure> {
    match code {
        GS_TMIN_APPROX => Ok(TMinMode::Approx),
        GS_TMIN_EXACT => Ok(TMinMode::Exact),
        other => Err(Error::InvalidInput(format!("unknown t_min mode {other}")).into()),
    }
}

/// Message of the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gs_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GsModalSystem {
    pub n: f64,
    pub omega1: f64,
    pub omega2: f64,
}

impl From<ModalSystem> for GsModalSystem {
    fn from(s: ModalSystem) -> Self {
        Self {
            n: s.n,
            omega1: s.omega1,
            omega2: s.omega2,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GsPair {
    pub tau: u64,
    pub sigma: u64,
}

impl From<ResonantPair> for GsPair {
    fn from(p: ResonantPair) -> Self {
        Self {
            tau: p.tau(),
            sigma: p.sigma(),
        }
    }
}

impl GsPair {
    fn to_core(self) -> Result<ResonantPair, Error> {
        ResonantPair::new(self.tau, self.sigma)
    }
}

/// Missing optional values (degenerate pairs have no proxy) are NaN and
/// `has_asymptotics` is false.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GsInscribedReport {
    pub pair: GsPair,
    pub qdot0: f64,
    pub degenerate: bool,
    pub r_res: f64,
    pub theta_min: f64,
    pub has_asymptotics: bool,
    pub theta_asy: f64,
    pub u_asy: f64,
    pub slow_node: u64,
    pub error_bound: f64,
    pub certified: bool,
    pub t_min_exact: f64,
    pub t_min_approx: f64,
    pub h_q_min: f64,
}

impl From<InscribedReport> for GsInscribedReport {
    fn from(r: InscribedReport) -> Self {
        Self {
            pair: r.pair.into(),
            qdot0: r.qdot0,
            degenerate: r.degenerate,
            r_res: r.r_res,
            theta_min: r.theta_min,
            has_asymptotics: r.theta_asy.is_some(),
            theta_asy: r.theta_asy.unwrap_or(f64::NAN),
            u_asy: r.u_asy.unwrap_or(f64::NAN),
            slow_node: r.slow_node.unwrap_or(0),
            error_bound: r.error_bound.unwrap_or(f64::NAN),
            certified: r.certified,
            t_min_exact: r.t_min_exact,
            t_min_approx: r.t_min_approx,
            h_q_min: r.h_q_min,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GsBeatTime {
    pub approx: f64,
    pub exact: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GsEnvelopePoint {
    pub phi: f64,
    pub q: f64,
    pub qdot: f64,
}

impl From<EnvelopePoint> for GsEnvelopePoint {
    fn from(p: EnvelopePoint) -> Self {
        Self {
            phi: p.phi,
            q: p.q,
            qdot: p.qdot,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GsStateSample {
    pub t: f64,
    pub q: f64,
    pub qdot: f64,
    pub z: f64,
    pub zdot: f64,
    pub hq: f64,
    pub hz: f64,
    pub h: f64,
}

impl From<StateSample> for GsStateSample {
    fn from(s: StateSample) -> Self {
        Self {
            t: s.t,
            q: s.q,
            qdot: s.qdot,
            z: s.z,
            zdot: s.zdot,
            hq: s.hq,
            hz: s.hz,
            h: s.h,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GsParetoPoint {
    pub pair: GsPair,
    pub n: f64,
    pub r_res_unit: f64,
    pub t_min: f64,
    pub dominated: bool,
}

impl From<ParetoPoint> for GsParetoPoint {
    fn from(p: ParetoPoint) -> Self {
        Self {
            pair: p.pair.into(),
            n: p.n,
            r_res_unit: p.r_res_unit,
            t_min: p.t_min,
            dominated: p.dominated,
        }
    }
}

/// `exclude_low_order = 0` and `delta = 0` disable those filters.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GsDesignQuery {
    pub objective: i32,
    pub t_max: f64,
    pub beat_min: f64,
    pub max_order: u64,
    pub exclude_low_order: u64,
    pub d_bound: f64,
    pub t_min_mode: i32,
    pub delta: u64,
}

/// Defaults for a query: beat ratio 10, order 100, `D = 1`, approximate `T_min`.
#[no_mangle]
pub extern "C" fn gs_design_query_default(objective: i32, t_max: f64) -> GsDesignQuery {
    let q = DesignQuery::new(Objective::Absorb, t_max);
    GsDesignQuery {
        objective,
        t_max,
        beat_min: q.beat_min,
        max_order: q.max_order,
        exclude_low_order: 0,
        d_bound: q.d_bound,
        t_min_mode: GS_TMIN_APPROX,
        delta: 0,
    }
}

impl GsDesignQuery {
    fn to_core(self) -> Result<DesignQuery, Failure> {
        let objective = match self.objective {
            GS_OBJECTIVE_ABSORB => Objective::Absorb,
            GS_OBJECTIVE_CONTAIN => Objective::Contain,
            other => return Err(Error::InvalidInput(format!("unknown objective {other}")).into()),
        };
        let mut q = DesignQuery::new(objective, self.t_max);
        q.beat_min = self.beat_min;
        q.max_order = self.max_order;
        q.exclude_low_order = (self.exclude_low_order > 0).then_some(self.exclude_low_order);
        q.d_bound = self.d_bound;
        q.t_min_mode = mode(self.t_min_mode)?;
        q.delta = (self.delta > 0).then_some(self.delta);
        Ok(q)
    }
}

pub struct GsEnvelope(EnvelopeCurve);
pub struct GsTrace(Vec<StateSample>);
pub struct GsFrontier(Vec<ParetoPoint>);
pub struct GsDesignOutcome {
    outcome: DesignOutcome,
    rationale: CString,
}

#[no_mangle]
pub unsafe extern "C" fn gs_modal_system(n: f64, result: *mut GsModalSystem) -> GsStatus {
    guard(|| {
        *out(result, "result")? = ModalSystem::new(n)?.into();
        Ok(())
    })
}

/// Checks coprimality and ordering of `(tau, sigma)`.
#[no_mangle]
pub extern "C" fn gs_pair_validate(tau: u64, sigma: u64) -> GsStatus {
    guard(|| {
        ResonantPair::new(tau, sigma)?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_pair_coupling(pair: GsPair, n: *mut f64) -> GsStatus {
    guard(|| {
        *out(n, "n")? = pair.to_core()?.coupling();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_pair_is_degenerate(pair: GsPair, degenerate: *mut bool) -> GsStatus {
    guard(|| {
        *out(degenerate, "degenerate")? = pair.to_core()?.is_degenerate();
        Ok(())
    })
}

/// Resonant pair whose coupling matches `|n|` within `tol`; `found` is false
/// when none exists up to `max_order`.
#[no_mangle]
pub unsafe extern "C" fn gs_pair_from_coupling(
    n: f64,
    tol: f64,
    max_order: u64,
    pair: *mut GsPair,
    found: *mut bool,
) -> GsStatus {
    guard(|| {
        let pair = out(pair, "pair")?;
        let found = out(found, "found")?;
        match resonance::pair_from_coupling(n, tol, max_order)? {
            Some(p) => {
                *pair = p.into();
                *found = true;
            }
            None => {
                *pair = GsPair::default();
                *found = false;
            }
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_inscribed_exact(
    pair: GsPair,
    qdot0: f64,
    report: *mut GsInscribedReport,
) -> GsStatus {
    guard(|| {
        let report = out(report, "report")?;
        let param = ResonantParam::new(pair.to_core()?, qdot0);
        *report = inscribed::inscribed_radius_exact(&param)?.into();
        Ok(())
    })
}

/// Proxy at the first slow node. Degenerate pairs give `NotApplicable`.
#[no_mangle]
pub unsafe extern "C" fn gs_asymptotic_phase(
    pair: GsPair,
    theta_asy: *mut f64,
    u_asy: *mut f64,
) -> GsStatus {
    guard(|| {
        let theta_asy = out(theta_asy, "theta_asy")?;
        let u_asy = out(u_asy, "u_asy")?;
        let phase = inscribed::asymptotic_phase(&pair.to_core()?)?;
        *theta_asy = phase.theta_asy;
        *u_asy = phase.u_asy;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_error_bound(pair: GsPair, bound: *mut f64) -> GsStatus {
    guard(|| {
        *out(bound, "bound")? = inscribed::error_bound(&pair.to_core()?);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_beat_time(
    pair: GsPair,
    theta_min: f64,
    beat: *mut GsBeatTime,
) -> GsStatus {
    guard(|| {
        let b = inscribed::beat_time(&pair.to_core()?, theta_min);
        *out(beat, "beat")? = GsBeatTime {
            approx: b.approx,
            exact: b.exact,
        };
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_envelope_new(
    n: f64,
    qdot0: f64,
    count: usize,
    envelope: *mut *mut GsEnvelope,
) -> GsStatus {
    guard(|| {
        let slot = out(envelope, "envelope")?;
        let curve = EnvelopeCurve::sample(&ModalSystem::new(n)?, qdot0, count)?;
        *slot = Box::into_raw(Box::new(GsEnvelope(curve)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_envelope_len(envelope: *const GsEnvelope, len: *mut usize) -> GsStatus {
    guard(|| {
        *out(len, "len")? = handle(envelope, "envelope")?.0.samples.len();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_envelope_get(
    envelope: *const GsEnvelope,
    index: usize,
    point: *mut GsEnvelopePoint,
) -> GsStatus {
    guard(|| {
        let p = item(&handle(envelope, "envelope")?.0.samples, index)?;
        *out(point, "point")? = p.into();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_envelope_free(envelope: *mut GsEnvelope) {
    if !envelope.is_null() {
        drop(Box::from_raw(envelope));
    }
}

/// Closed-form impulse response sampled on `[0, t_end]` with step `dt`.
#[no_mangle]
pub unsafe extern "C" fn gs_trace_new(
    n: f64,
    qdot0: f64,
    t_end: f64,
    dt: f64,
    trace: *mut *mut GsTrace,
) -> GsStatus {
    guard(|| {
        let slot = out(trace, "trace")?;
        let samples =
            ImpulseTrajectory::new(ModalSystem::new(n)?, qdot0)?.sample_trace(t_end, dt)?;
        *slot = Box::into_raw(Box::new(GsTrace(samples)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_trace_len(trace: *const GsTrace, len: *mut usize) -> GsStatus {
    guard(|| {
        *out(len, "len")? = handle(trace, "trace")?.0.len();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_trace_get(
    trace: *const GsTrace,
    index: usize,
    sample: *mut GsStateSample,
) -> GsStatus {
    guard(|| {
        let s = item(&handle(trace, "trace")?.0, index)?;
        *out(sample, "sample")? = s.into();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_trace_free(trace: *mut GsTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}

/// Every admissible pair up to `max_order`, scored and marked for dominance.
#[no_mangle]
pub unsafe extern "C" fn gs_frontier_new(
    max_order: u64,
    beat_min: f64,
    t_min_mode: i32,
    frontier: *mut *mut GsFrontier,
) -> GsStatus {
    guard(|| {
        let slot = out(frontier, "frontier")?;
        let points = design::pareto_frontier(max_order, beat_min, mode(t_min_mode)?)?;
        *slot = Box::into_raw(Box::new(GsFrontier(points)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_frontier_len(frontier: *const GsFrontier, len: *mut usize) -> GsStatus {
    guard(|| {
        *out(len, "len")? = handle(frontier, "frontier")?.0.len();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_frontier_get(
    frontier: *const GsFrontier,
    index: usize,
    point: *mut GsParetoPoint,
) -> GsStatus {
    guard(|| {
        let p = item(&handle(frontier, "frontier")?.0, index)?;
        *out(point, "point")? = p.into();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_frontier_free(frontier: *mut GsFrontier) {
    if !frontier.is_null() {
        drop(Box::from_raw(frontier));
    }
}

/// Solves a design query. An infeasible query still succeeds; check
/// [`gs_design_feasible`].
#[no_mangle]
pub unsafe extern "C" fn gs_design_solve(
    query: *const GsDesignQuery,
    outcome: *mut *mut GsDesignOutcome,
) -> GsStatus {
    guard(|| {
        let query = handle(query, "query")?.to_core()?;
        let slot = out(outcome, "outcome")?;
        let solved = design::solve(&query)?;
        let rationale =
            CString::new(solved.rationale.replace('\0', " ")).expect("nul bytes removed");
        *slot = Box::into_raw(Box::new(GsDesignOutcome {
            outcome: solved,
            rationale,
        }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_design_feasible(
    outcome: *const GsDesignOutcome,
    feasible: *mut bool,
) -> GsStatus {
    guard(|| {
        *out(feasible, "feasible")? = handle(outcome, "outcome")?.outcome.feasible;
        Ok(())
    })
}

/// Chosen pair with `D`-scaled `r_res` and `h_q_min`. `NotApplicable` when
/// the query was infeasible.
#[no_mangle]
pub unsafe extern "C" fn gs_design_chosen(
    outcome: *const GsDesignOutcome,
    chosen: *mut GsParetoPoint,
    r_res: *mut f64,
    h_q_min: *mut f64,
) -> GsStatus {
    guard(|| {
        let o = &handle(outcome, "outcome")?.outcome;
        let (chosen, r_res, h_q_min) = (
            out(chosen, "chosen")?,
            out(r_res, "r_res")?,
            out(h_q_min, "h_q_min")?,
        );
        match (o.chosen, o.r_res, o.h_q_min) {
            (Some(c), Some(r), Some(h)) => {
                *chosen = c.into();
                *r_res = r;
                *h_q_min = h;
                Ok(())
            }
            _ => Err(Error::NotApplicable(o.rationale.clone()).into()),
        }
    })
}

/// Borrowed from the handle; valid until [`gs_design_free`].
#[no_mangle]
pub unsafe extern "C" fn gs_design_rationale(outcome: *const GsDesignOutcome) -> *const c_char {
    outcome
        .as_ref()
        .map_or(ptr::null(), |o| o.rationale.as_ptr())
}

#[no_mangle]
pub unsafe extern "C" fn gs_design_frontier_len(
    outcome: *const GsDesignOutcome,
    len: *mut usize,
) -> GsStatus {
    guard(|| {
        *out(len, "len")? = handle(outcome, "outcome")?.outcome.frontier.len();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_design_frontier_get(
    outcome: *const GsDesignOutcome,
    index: usize,
    point: *mut GsParetoPoint,
) -> GsStatus {
    guard(|| {
        let p = item(&handle(outcome, "outcome")?.outcome.frontier, index)?;
        *out(point, "point")? = p.into();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gs_design_free(outcome: *mut GsDesignOutcome) {
    if !outcome.is_null() {
        drop(Box::from_raw(outcome));
    }
}
