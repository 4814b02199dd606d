use nlie_envelope::envelope::{closed_form_basis, Envelope};
use nlie_envelope::freealg::{parse_polynomial, rat, Polynomial};
use nlie_envelope::nlie::{
    classified_algebra, envelope_generators, simple_algebra, sum_of_squares, AlgebraFile, AlgebraLabel,
};
use nlie_envelope::rewrite::{
    complete, find_compositions, is_normal, reduce, CapReason, Completion, CompletionOutcome, EngineConfig,
    SelfOverlapPolicy,
};

fn l4_outcome(cfg: EngineConfig) -> CompletionOutcome {
    complete(&envelope_generators(&simple_algebra(3).unwrap()), &cfg).unwrap()
}

#[test]
fn sum_of_squares_vanishes_once_n_is_adjoined() {
    let outcome = l4_outcome(EngineConfig { max_iterations: 4, ..EngineConfig::default() });
    let squares = sum_of_squares(4);
    let n = parse_polynomial("d^2 + c^2 + b^2 + a^2").unwrap();
    for round in outcome.log().iter().skip(1) {
        assert!(round.basis_after.contains(&n));
        assert!(reduce(&squares, &round.basis_after).is_zero(), "round {}", round.round);
    }
}

#[test]
fn rounds_keep_bases_self_reduced_and_adjoin_normal_forms() {
    let outcome = l4_outcome(EngineConfig { max_iterations: 3, ..EngineConfig::default() });
    let mut before = nlie_envelope::rewrite::GeneratorSet::new(envelope_generators(&simple_algebra(3).unwrap()).members().to_vec()).unwrap();
    for round in outcome.log() {
        assert!(round.basis_after.is_self_reduced());
        for record in &round.compositions {
            assert!(is_normal(&record.normal_form, &before));
        }
        before = round.basis_after.clone();
    }
}

#[test]
fn completion_is_deterministic() {
    let cfg = EngineConfig { max_iterations: 3, ..EngineConfig::default() };
    let notation = nlie_envelope::freealg::Notation::Letters;
    let first: Vec<_> = l4_outcome(cfg.clone()).log().iter().map(|r| r.to_json(notation)).collect();
    let second: Vec<_> = l4_outcome(cfg).log().iter().map(|r| r.to_json(notation)).collect();
    assert_eq!(first, second);
}

#[test]
fn eager_self_overlaps_change_the_trace_but_not_the_ideal() {
    let eager = l4_outcome(EngineConfig { max_iterations: 2, self_overlaps: SelfOverlapPolicy::Eager, ..EngineConfig::default() });
    let deferred = l4_outcome(EngineConfig { max_iterations: 2, ..EngineConfig::default() });
    assert_eq!(eager.log()[1].compositions.len(), 4);
    assert_eq!(deferred.log()[1].compositions.len(), 3);
    let q5 = parse_polynomial("dc^2 + db^2 + da^2 - c^2d - b^2d - a^2d").unwrap();
    assert!(eager.log()[1].adjoined.contains(&q5));
    assert!(reduce(&q5, eager.basis()).is_zero());
    // the Deferred basis does not yet reduce Q5 to zero, but the full check does
    assert!(!reduce(&q5, deferred.basis()).is_zero());
}

#[test]
fn degree_cap_reports_the_offending_degree() {
    let outcome = l4_outcome(EngineConfig { max_degree: 5, ..EngineConfig::default() });
    match outcome {
        CompletionOutcome::Capped { reason: CapReason::Degree { degree }, log, pending, .. } => {
            assert!(degree > 5);
            assert_eq!(log.len(), 2);
            assert_eq!(pending.len(), 5);
        }
        other => panic!("expected a degree cap, got {} rounds", other.log().len()),
    }
}

#[test]
fn pending_compositions_after_four_rounds() {
    let outcome = l4_outcome(EngineConfig { max_iterations: 4, ..EngineConfig::default() });
    let CompletionOutcome::Capped { pending, reason, .. } = outcome else { panic!("expected a cap") };
    assert_eq!(reason, CapReason::Iterations);
    assert!(!pending.is_empty());
    assert!(pending.iter().all(|p| p.composition_terms > 0));
}

#[test]
fn closed_forms_agree_with_engine_at_n_6() {
    for label in [AlgebraLabel::OneB, AlgebraLabel::TwoB { beta: rat(3, 2) }] {
        let algebra = classified_algebra(&label, 6).unwrap();
        let outcome = complete(&envelope_generators(&algebra), &EngineConfig::default()).unwrap();
        assert!(outcome.is_completed(), "{label}");
        assert!(outcome.basis().same_members(&closed_form_basis(&algebra).unwrap()), "{label}");
    }
}

#[test]
fn case_2b_single_composition_is_the_documented_one() {
    let algebra = classified_algebra(&AlgebraLabel::TwoB { beta: rat(1, 1) }, 6).unwrap();
    let basis = closed_form_basis(&algebra).unwrap();
    let tasks = find_compositions(&basis);
    assert_eq!(tasks.len(), 1);
    let n = parse_polynomial("x2*x1 - x1*x2").unwrap();
    assert_eq!(basis.get(tasks[0].h_index), &n);
    assert_eq!(tasks[0].v, nlie_envelope::freealg::Word::new([7, 6, 5, 4, 3]));
}

#[test]
fn algebra_files_drive_the_same_envelope() {
    let algebra = classified_algebra(&AlgebraLabel::TwoB { beta: rat(-2, 5) }, 4).unwrap();
    let text = AlgebraFile::to_json(&algebra);
    let loaded = AlgebraFile::from_json(&text).unwrap();
    assert_eq!(loaded, algebra);
    let a = Envelope::build(&algebra, &EngineConfig::default()).unwrap();
    let unlabeled = loaded.with_label(None);
    let b = Envelope::build(&unlabeled, &EngineConfig::default()).unwrap();
    assert!(b.is_completed());
    assert!(a.basis().same_members(b.basis()));
}

#[test]
fn step_by_step_matches_run() {
    let gens = envelope_generators(&simple_algebra(3).unwrap());
    let cfg = EngineConfig { max_iterations: 3, ..EngineConfig::default() };
    let mut stepper = Completion::new(&gens, cfg.clone()).unwrap();
    let stepped = loop {
        if let Some(done) = stepper.step() {
            break done;
        }
    };
    let ran = Completion::new(&gens, cfg).unwrap().run();
    assert!(stepped.basis().same_members(ran.basis()));
    let x: Polynomial = Polynomial::letter(1);
    assert_eq!(reduce(&x, stepped.basis()), x);
}
