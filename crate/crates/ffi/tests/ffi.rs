use std::ffi::CStr;
use std::ptr;

use gyroshape_ffi::*;

fn last_error() -> String {
    let p = gs_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn modal_system_and_pairs() {
    let mut sys = GsModalSystem::default();
    assert_eq!(unsafe { gs_modal_system(1.0, &mut sys) }, GsStatus::Ok);
    assert!((sys.omega1 * sys.omega2 - 1.0).abs() < 1e-15);

    assert_eq!(gs_pair_validate(6, 5), GsStatus::Ok);
    assert_eq!(gs_pair_validate(6, 4), GsStatus::NotCoprime);
    assert!(last_error().contains("coprime"));
    assert_eq!(gs_pair_validate(5, 6), GsStatus::Ordering);
    assert_eq!(
        unsafe { gs_modal_system(f64::NAN, &mut sys) },
        GsStatus::InvalidInput
    );

    let mut n = 0.0;
    assert_eq!(
        unsafe { gs_pair_coupling(GsPair { tau: 11, sigma: 9 }, &mut n) },
        GsStatus::Ok
    );
    assert!((n - 0.2010).abs() < 5e-4);

    let (mut pair, mut found) = (GsPair::default(), false);
    assert_eq!(
        unsafe { gs_pair_from_coupling(n, 1e-9, 200, &mut pair, &mut found) },
        GsStatus::Ok
    );
    assert!(found);
    assert_eq!(pair, GsPair { tau: 11, sigma: 9 });
    assert_eq!(
        unsafe { gs_pair_from_coupling(0.3, 1e-12, 50, &mut pair, &mut found) },
        GsStatus::Ok
    );
    assert!(!found);

    let mut degenerate = false;
    assert_eq!(
        unsafe { gs_pair_is_degenerate(pair_of(11, 9), &mut degenerate) },
        GsStatus::Ok
    );
    assert!(degenerate);
}

fn pair_of(tau: u64, sigma: u64) -> GsPair {
    GsPair { tau, sigma }
}

#[test]
fn null_out_pointers_are_reported() {
    assert_eq!(
        unsafe { gs_modal_system(1.0, ptr::null_mut()) },
        GsStatus::NullPointer
    );
    assert!(last_error().contains("null"));
    assert_eq!(
        unsafe { gs_envelope_len(ptr::null(), &mut 0) },
        GsStatus::NullPointer
    );
    assert!(unsafe { gs_design_rationale(ptr::null()) }.is_null());
    unsafe {
        gs_envelope_free(ptr::null_mut());
        gs_trace_free(ptr::null_mut());
        gs_frontier_free(ptr::null_mut());
        gs_design_free(ptr::null_mut());
    }
}

#[test]
fn inscribed_reports() {
    let mut r = GsInscribedReport::default();
    assert_eq!(
        unsafe { gs_inscribed_exact(pair_of(6, 5), 1.0, &mut r) },
        GsStatus::Ok
    );
    assert!((r.r_res - 5.075e-2).abs() < 1e-3);
    assert!(r.has_asymptotics && r.certified);
    assert!((r.theta_asy - 3.30).abs() < 0.01);
    assert!((r.t_min_approx - 17.2).abs() < 0.1);

    assert_eq!(
        unsafe { gs_inscribed_exact(pair_of(11, 9), 2.0, &mut r) },
        GsStatus::Ok
    );
    assert!(r.degenerate && r.r_res == 0.0 && !r.has_asymptotics && r.theta_asy.is_nan());

    let (mut theta, mut u) = (0.0, 0.0);
    assert_eq!(
        unsafe { gs_asymptotic_phase(pair_of(6, 5), &mut theta, &mut u) },
        GsStatus::Ok
    );
    assert!((u + 0.7105).abs() < 1e-3);
    assert_eq!(
        unsafe { gs_asymptotic_phase(pair_of(11, 9), &mut theta, &mut u) },
        GsStatus::NotApplicable
    );

    let mut bound = 0.0;
    assert_eq!(
        unsafe { gs_error_bound(pair_of(6, 5), &mut bound) },
        GsStatus::Ok
    );
    assert!((bound - 2.33e-2).abs() < 1e-3);

    let mut beat = GsBeatTime::default();
    assert_eq!(
        unsafe { gs_beat_time(pair_of(41, 35), 1.0, &mut beat) },
        GsStatus::Ok
    );
    assert!((beat.approx - 19.8).abs() < 0.1);
}

#[test]
fn envelope_and_trace_handles() {
    unsafe {
        let mut env = ptr::null_mut();
        assert_eq!(gs_envelope_new(0.0, 2.0, 64, &mut env), GsStatus::Ok);
        let mut len = 0;
        assert_eq!(gs_envelope_len(env, &mut len), GsStatus::Ok);
        assert_eq!(len, 64);
        let mut p = GsEnvelopePoint::default();
        for i in 0..len {
            assert_eq!(gs_envelope_get(env, i, &mut p), GsStatus::Ok);
            assert!((p.q.hypot(p.qdot) - 2.0).abs() < 1e-12);
        }
        assert_eq!(gs_envelope_get(env, len, &mut p), GsStatus::OutOfRange);
        gs_envelope_free(env);

        let mut bad = ptr::null_mut();
        assert_eq!(
            gs_envelope_new(1.0, 1.0, 3, &mut bad),
            GsStatus::InvalidInput
        );
        assert!(bad.is_null());

        let mut trace = ptr::null_mut();
        assert_eq!(gs_trace_new(0.5, 1.0, 10.0, 0.5, &mut trace), GsStatus::Ok);
        assert_eq!(gs_trace_len(trace, &mut len), GsStatus::Ok);
        assert_eq!(len, 21);
        let mut s = GsStateSample::default();
        assert_eq!(gs_trace_get(trace, 0, &mut s), GsStatus::Ok);
        assert_eq!((s.t, s.q, s.qdot), (0.0, 0.0, 1.0));
        assert!((s.h - 0.5).abs() < 1e-15);
        gs_trace_free(trace);
    }
}

#[test]
fn frontier_handle_marks_dominance() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(
            gs_frontier_new(40, 10.0, GS_TMIN_APPROX, &mut f),
            GsStatus::Ok
        );
        let mut len = 0;
        gs_frontier_len(f, &mut len);
        let mut front = Vec::new();
        let mut p = GsParetoPoint::default();
        for i in 0..len {
            gs_frontier_get(f, i, &mut p);
            if !p.dominated {
                front.push(p.pair);
            }
        }
        assert_eq!(front, vec![pair_of(11, 9)]);
        gs_frontier_free(f);
        assert_eq!(gs_frontier_new(40, 10.0, 7, &mut f), GsStatus::InvalidInput);
    }
}

#[test]
fn design_outcomes() {
    unsafe {
        let query = gs_design_query_default(GS_OBJECTIVE_CONTAIN, 20.0);
        let mut o = ptr::null_mut();
        assert_eq!(gs_design_solve(&query, &mut o), GsStatus::Ok);
        let mut feasible = false;
        gs_design_feasible(o, &mut feasible);
        assert!(feasible);
        let (mut chosen, mut r, mut h) = (GsParetoPoint::default(), 0.0, 0.0);
        assert_eq!(
            gs_design_chosen(o, &mut chosen, &mut r, &mut h),
            GsStatus::Ok
        );
        assert_eq!(chosen.pair, pair_of(6, 5));
        assert!((h - 0.5 * r * r).abs() < 1e-18);
        let why = CStr::from_ptr(gs_design_rationale(o))
            .to_string_lossy()
            .into_owned();
        assert!(why.contains("(6, 5)"));
        let mut len = 0;
        gs_design_frontier_len(o, &mut len);
        assert!(len > 0);
        gs_design_free(o);

        let mut tight = gs_design_query_default(GS_OBJECTIVE_ABSORB, 5.0);
        tight.d_bound = 3.0;
        assert_eq!(gs_design_solve(&tight, &mut o), GsStatus::Ok);
        gs_design_feasible(o, &mut feasible);
        assert!(!feasible);
        assert_eq!(
            gs_design_chosen(o, &mut chosen, &mut r, &mut h),
            GsStatus::NotApplicable
        );
        gs_design_free(o);

        let bogus = gs_design_query_default(5, 20.0);
        assert_eq!(gs_design_solve(&bogus, &mut o), GsStatus::InvalidInput);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/gyroshape.h");
    let source = include_str!("../src/lib.rs");
    let exported: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exported.len() > 20);
    for name in exported {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
    assert!(header.contains("typedef struct GsEnvelope GsEnvelope;"));
}
