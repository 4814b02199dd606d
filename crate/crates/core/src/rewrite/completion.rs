//! Compositions of overlapping leading monomials and the completion loop.
//!
//! Completion runs in batch rounds: every new composition of the round-start
//! set is reduced against that frozen set, the nonzero normal forms are
//! adjoined together, and the enlarged set is self-reduced before the next
//! round starts.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::reduce::reduce_by;
use super::{lm, self_reduce_tracked, GeneratorSet, RewriteError, Strategy};
use crate::freealg::{find_overlaps, format_word, Notation, Polynomial, Word};

/// When self-overlaps (a generator overlapping itself) are scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelfOverlapPolicy {
    /// Processed alongside every other composition.
    Eager,
    /// Processed only in rounds where no new composition between distinct
    /// generators exists. The final Gröbner check always includes them.
    Deferred,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Largest degree a new generator may have before the run stops.
    pub max_degree: usize,
    /// Number of rounds executed before the run stops.
    pub max_iterations: usize,
    pub strategy: Strategy,
    pub self_overlaps: SelfOverlapPolicy,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_degree: 8,
            max_iterations: 6,
            strategy: Strategy::GreatestLeftmost,
            self_overlaps: SelfOverlapPolicy::Deferred,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<(), RewriteError> {
        if self.max_degree == 0 {
            return Err(RewriteError::InvalidConfig("max_degree must be positive".into()));
        }
        if self.max_iterations == 0 {
            return Err(RewriteError::InvalidConfig("max_iterations must be positive".into()));
        }
        Ok(())
    }
}

/// A composition `g·u − v·h` where `LM(g)·u = v·LM(h)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompositionTask {
    pub g_index: usize,
    pub h_index: usize,
    pub u: Word,
    pub v: Word,
}

impl CompositionTask {
    pub fn overlap_word(&self, set: &GeneratorSet) -> Word {
        lm(set.get(self.g_index)).concat(&self.u)
    }

    pub fn is_self_overlap(&self) -> bool {
        self.g_index == self.h_index
    }
}

/// Every composition of `set`, self-overlaps included, in reverse deglex
/// order of the overlap word `LM(g)·u`.
pub fn find_compositions(set: &GeneratorSet) -> Vec<CompositionTask> {
    let lms = set.leading_monomials();
    let mut tasks = Vec::new();
    for (gi, p) in lms.iter().enumerate() {
        for (hi, q) in lms.iter().enumerate() {
            if gi != hi && (p.contains_factor(q) || q.contains_factor(p)) {
                continue;
            }
            for overlap in find_overlaps(p, q) {
                tasks.push(CompositionTask { g_index: gi, h_index: hi, u: overlap.u, v: overlap.v });
            }
        }
    }
    sort_tasks(&mut tasks, set);
    tasks
}

fn sort_tasks(tasks: &mut [CompositionTask], set: &GeneratorSet) {
    tasks.sort_by(|a, b| {
        b.overlap_word(set)
            .cmp(&a.overlap_word(set))
            .then(a.g_index.cmp(&b.g_index))
            .then(a.h_index.cmp(&b.h_index))
            .then(a.u.cmp(&b.u))
    });
}

/// `g·u − v·h`; the leading monomials cancel.
pub fn compose(task: &CompositionTask, set: &GeneratorSet) -> Polynomial {
    let g = set.get(task.g_index).mul_word(&Word::empty(), &task.u);
    let h = set.get(task.h_index).mul_word(&task.v, &Word::empty());
    g - h
}

#[derive(Clone, Debug)]
pub struct GroebnerCheck {
    pub is_groebner: bool,
    /// Compositions whose normal form is nonzero, with that normal form.
    pub witnesses: Vec<(CompositionTask, Polynomial)>,
}

/// Diamond-lemma test: a self-reduced set is a Gröbner basis iff every
/// composition reduces to zero.
pub fn is_groebner(set: &GeneratorSet) -> GroebnerCheck {
    let gens: Vec<&Polynomial> = set.members().iter().collect();
    let witnesses: Vec<(CompositionTask, Polynomial)> = find_compositions(set)
        .into_par_iter()
        .filter_map(|task| {
            let nf = reduce_by(&compose(&task, set), &gens, Strategy::GreatestLeftmost);
            (!nf.is_zero()).then_some((task, nf))
        })
        .collect();
    GroebnerCheck { is_groebner: witnesses.is_empty(), witnesses }
}

/// One composition processed in a round.
#[derive(Clone, Debug)]
pub struct CompositionRecord {
    pub task: CompositionTask,
    pub g_lm: Word,
    pub h_lm: Word,
    pub composition: Polynomial,
    pub normal_form: Polynomial,
}

impl CompositionRecord {
    pub fn composition_terms(&self) -> usize {
        self.composition.len()
    }

    pub fn normal_form_terms(&self) -> usize {
        self.normal_form.len()
    }
}

#[derive(Clone, Debug)]
pub struct RoundLog {
    pub round: usize,
    /// True when the round's tasks came from the closing Gröbner check
    /// rather than from new overlaps.
    pub from_final_check: bool,
    pub compositions: Vec<CompositionRecord>,
    /// Monic nonzero normal forms, in composition order, before self-reduction.
    pub adjoined: Vec<Polynomial>,
    /// Index in `basis_after` of each adjoined polynomial after
    /// self-reduction, `None` if it vanished.
    pub adjoined_fate: Vec<Option<usize>>,
    pub basis_after: GeneratorSet,
    pub dropped_by_self_reduction: usize,
}

impl RoundLog {
    pub fn to_json(&self, notation: Notation) -> Value {
        let word = |w: &Word| format_word(w, notation);
        let compositions: Vec<Value> = self
            .compositions
            .iter()
            .map(|c| {
                json!({
                    "g": c.task.g_index,
                    "h": c.task.h_index,
                    "g_lm": word(&c.g_lm),
                    "h_lm": word(&c.h_lm),
                    "u": word(&c.task.u),
                    "v": word(&c.task.v),
                    "terms_in": c.composition_terms(),
                    "terms_out": c.normal_form_terms(),
                    "new_generator_lm": match c.normal_form.leading_monomial() {
                        Ok(w) => word(w),
                        Err(_) => "zero".to_string(),
                    },
                })
            })
            .collect();
        json!({
            "round": self.round,
            "compositions": compositions,
            "basis_size_after": self.basis_after.len(),
            "dropped_by_self_reduction": self.dropped_by_self_reduction,
        })
    }
}

/// A composition found but not reduced because the run stopped.
#[derive(Clone, Debug)]
pub struct PendingComposition {
    pub task: CompositionTask,
    pub g_lm: Word,
    pub h_lm: Word,
    pub composition_terms: usize,
}

impl PendingComposition {
    pub fn to_json(&self, notation: Notation) -> Value {
        json!({
            "g": self.task.g_index,
            "h": self.task.h_index,
            "g_lm": format_word(&self.g_lm, notation),
            "h_lm": format_word(&self.h_lm, notation),
            "u": format_word(&self.task.u, notation),
            "v": format_word(&self.task.v, notation),
            "terms_in": self.composition_terms,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CapReason {
    Iterations,
    /// A normal form of this degree exceeded `max_degree`.
    Degree { degree: usize },
}

#[derive(Clone, Debug)]
pub enum CompletionOutcome {
    Completed {
        basis: GeneratorSet,
        log: Vec<RoundLog>,
    },
    Capped {
        basis: GeneratorSet,
        pending: Vec<PendingComposition>,
        log: Vec<RoundLog>,
        reason: CapReason,
    },
}

impl CompletionOutcome {
    pub fn basis(&self) -> &GeneratorSet {
        match self {
            CompletionOutcome::Completed { basis, .. } | CompletionOutcome::Capped { basis, .. } => basis,
        }
    }

    pub fn log(&self) -> &[RoundLog] {
        match self {
            CompletionOutcome::Completed { log, .. } | CompletionOutcome::Capped { log, .. } => log,
        }
    }

    pub fn is_completed(&self) -> bool {
        matches!(self, CompletionOutcome::Completed { .. })
    }
}

type TaskKey = (Polynomial, Polynomial, Word, Word);

/// Round-by-round completion driver.
#[derive(Clone, Debug)]
pub struct Completion {
    set: GeneratorSet,
    cfg: EngineConfig,
    processed: HashSet<TaskKey>,
    log: Vec<RoundLog>,
    initially_dropped: usize,
}

impl Completion {
    /// Self-reduces the initial set.
    pub fn new(initial: &GeneratorSet, cfg: EngineConfig) -> Result<Self, RewriteError> {
        cfg.validate()?;
        let reduced = self_reduce_tracked(initial);
        Ok(Completion {
            initially_dropped: reduced.dropped(),
            set: reduced.set,
            cfg,
            processed: HashSet::new(),
            log: Vec::new(),
        })
    }

    pub fn basis(&self) -> &GeneratorSet {
        &self.set
    }

    pub fn log(&self) -> &[RoundLog] {
        &self.log
    }

    pub fn config(&self) -> &EngineConfig {
        &self.cfg
    }

    /// Members removed by the self-reduction of the initial set.
    pub fn initially_dropped(&self) -> usize {
        self.initially_dropped
    }

    fn key(&self, task: &CompositionTask) -> TaskKey {
        (
            self.set.get(task.g_index).clone(),
            self.set.get(task.h_index).clone(),
            task.u.clone(),
            task.v.clone(),
        )
    }

    /// Compositions not processed in an earlier round, filtered by the
    /// self-overlap policy.
    pub fn new_tasks(&self) -> Vec<CompositionTask> {
        let fresh: Vec<CompositionTask> = find_compositions(&self.set)
            .into_iter()
            .filter(|t| !self.processed.contains(&self.key(t)))
            .collect();
        match self.cfg.self_overlaps {
            SelfOverlapPolicy::Eager => fresh,
            SelfOverlapPolicy::Deferred => {
                let (cross, own): (Vec<_>, Vec<_>) = fresh.into_iter().partition(|t| !t.is_self_overlap());
                if cross.is_empty() {
                    own
                } else {
                    cross
                }
            }
        }
    }

    fn pending(&self, tasks: Vec<CompositionTask>) -> Vec<PendingComposition> {
        tasks
            .into_iter()
            .map(|task| PendingComposition {
                g_lm: lm(self.set.get(task.g_index)).clone(),
                h_lm: lm(self.set.get(task.h_index)).clone(),
                composition_terms: compose(&task, &self.set).len(),
                task,
            })
            .collect()
    }

    fn capped(&self, tasks: Vec<CompositionTask>, reason: CapReason) -> CompletionOutcome {
        CompletionOutcome::Capped {
            basis: self.set.clone(),
            pending: self.pending(tasks),
            log: self.log.clone(),
            reason,
        }
    }

    /// Runs one round. Returns the outcome once the run has finished, `None`
    /// while more rounds remain.
    pub fn step(&mut self) -> Option<CompletionOutcome> {
        let mut tasks = self.new_tasks();
        let mut from_final_check = false;
        if tasks.is_empty() {
            let check = is_groebner(&self.set);
            if check.is_groebner {
                return Some(CompletionOutcome::Completed { basis: self.set.clone(), log: self.log.clone() });
            }
            tasks = check.witnesses.into_iter().map(|(t, _)| t).collect();
            from_final_check = true;
        }
        if self.log.len() >= self.cfg.max_iterations {
            return Some(self.capped(tasks, CapReason::Iterations));
        }

        let set = &self.set;
        let gens: Vec<&Polynomial> = set.members().iter().collect();
        let strategy = self.cfg.strategy;
        let records: Vec<CompositionRecord> = tasks
            .par_iter()
            .map(|task| {
                let composition = compose(task, set);
                let normal_form = reduce_by(&composition, &gens, strategy);
                CompositionRecord {
                    task: task.clone(),
                    g_lm: lm(set.get(task.g_index)).clone(),
                    h_lm: lm(set.get(task.h_index)).clone(),
                    composition,
                    normal_form,
                }
            })
            .collect();

        if let Some(degree) = records
            .iter()
            .filter_map(|r| r.normal_form.degree())
            .filter(|&d| d > self.cfg.max_degree)
            .max()
        {
            return Some(self.capped(tasks, CapReason::Degree { degree }));
        }

        for task in &tasks {
            let key = self.key(task);
            self.processed.insert(key);
        }
        let mut adjoined: Vec<Polynomial> = Vec::new();
        for record in &records {
            if let Ok(monic) = record.normal_form.make_monic() {
                if !adjoined.contains(&monic) {
                    adjoined.push(monic);
                }
            }
        }
        let old_len = self.set.len();
        let enlarged = GeneratorSet::new(self.set.members().iter().cloned().chain(adjoined.iter().cloned()))
            .expect("members and adjoined polynomials are nonzero");
        let reduced = self_reduce_tracked(&enlarged);
        // `GeneratorSet::new` re-sorts, so locate each adjoined polynomial
        // in the enlarged set before following it through self-reduction.
        let adjoined_fate = adjoined
            .iter()
            .map(|p| enlarged.position(p).and_then(|i| reduced.fate[i]))
            .collect();
        debug_assert_eq!(enlarged.len(), old_len + adjoined.len());
        self.set = reduced.set.clone();
        self.log.push(RoundLog {
            round: self.log.len() + 1,
            from_final_check,
            compositions: records,
            adjoined,
            adjoined_fate,
            basis_after: reduced.set,
            dropped_by_self_reduction: reduced.fate.iter().filter(|f| f.is_none()).count(),
        });
        None
    }

    pub fn run(mut self) -> CompletionOutcome {
        loop {
            if let Some(outcome) = self.step() {
                return outcome;
            }
        }
    }
}

/// Completes `initial` under `cfg`.
pub fn complete(initial: &GeneratorSet, cfg: &EngineConfig) -> Result<CompletionOutcome, RewriteError> {
    Ok(Completion::new(initial, cfg.clone())?.run())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn set(polys: &[&str]) -> GeneratorSet {
        GeneratorSet::new(polys.iter().map(|s| p(s))).unwrap()
    }

    #[test]
    fn commutator_has_no_compositions() {
        let g = set(&["x2*x1 - x1*x2"]);
        assert!(find_compositions(&g).is_empty());
        assert!(is_groebner(&g).is_groebner);
    }

    #[test]
    fn single_letter_completes_immediately() {
        let outcome = complete(&set(&["x1"]), &EngineConfig::default()).unwrap();
        assert!(outcome.is_completed());
        assert!(outcome.log().is_empty());
    }

    #[test]
    fn square_relation_needs_its_self_overlap() {
        // x1^2 - x2: the self-overlap x1^3 yields x2*x1 - x1*x2
        let g = set(&["x1*x1 - x2"]);
        let check = is_groebner(&g);
        assert!(!check.is_groebner);
        assert_eq!(check.witnesses.len(), 1);
        for policy in [SelfOverlapPolicy::Eager, SelfOverlapPolicy::Deferred] {
            let cfg = EngineConfig { self_overlaps: policy, ..EngineConfig::default() };
            let outcome = complete(&g, &cfg).unwrap();
            assert!(outcome.is_completed(), "{policy:?}");
            assert!(outcome.basis().contains(&p("x2*x1 - x1*x2")));
            assert!(is_groebner(outcome.basis()).is_groebner);
        }
    }

    #[test]
    fn compose_cancels_leading_monomials() {
        let g = set(&["x3*x2 - x1", "x2*x1 - x3"]);
        let tasks = find_compositions(&g);
        assert_eq!(tasks.len(), 1);
        let c = compose(&tasks[0], &g);
        assert_eq!(c, p("-x1*x1 + x3*x3"));
    }

    #[test]
    fn iteration_cap_reports_pending() {
        let g = set(&["x1*x1 - x2"]);
        let cfg = EngineConfig { max_iterations: 1, self_overlaps: SelfOverlapPolicy::Eager, ..EngineConfig::default() };
        let mut run = Completion::new(&g, cfg).unwrap();
        assert!(run.step().is_none());
        match run.step() {
            Some(CompletionOutcome::Capped { reason: CapReason::Iterations, log, .. }) => assert_eq!(log.len(), 1),
            Some(CompletionOutcome::Completed { .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degree_cap_preserves_state() {
        let g = set(&["x1*x1*x1 - x2*x2"]);
        let cfg = EngineConfig { max_degree: 3, self_overlaps: SelfOverlapPolicy::Eager, ..EngineConfig::default() };
        match complete(&g, &cfg).unwrap() {
            CompletionOutcome::Capped { reason: CapReason::Degree { degree }, basis, pending, .. } => {
                assert!(degree > 3);
                assert_eq!(basis, g);
                assert!(!pending.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invalid_config_rejected() {
        let cfg = EngineConfig { max_iterations: 0, ..EngineConfig::default() };
        assert!(matches!(complete(&set(&["x1"]), &cfg), Err(RewriteError::InvalidConfig(_))));
    }
}
