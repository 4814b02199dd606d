//! Replays the completion of the 4-dimensional simple 3-Lie algebra's
//! envelope ideal and compares each round with the embedded reference trace.

mod golden;

use serde::Serialize;
use serde_json::Value;

use crate::freealg::{format_polynomial_with, format_word, Notation, Polynomial, Word};
use crate::nlie::{envelope_generator_list, envelope_generators, simple_algebra};
use crate::rewrite::{reduce, Completion, CompletionOutcome, CompositionRecord, EngineConfig, GeneratorSet, RoundLog};

pub use golden::{
    load_golden, parse_golden, sha256_hex, GoldenComposition, GoldenData, GoldenError, GoldenRound, GOLDEN_SHA256,
    GOLDEN_TOML,
};

/// Reference normal forms whose exact shape depends on the reduction order;
/// a mismatch is tolerated when the ideals agree.
const ORDER_DEPENDENT: &[&str] = &["P1", "P2", "P3"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    /// Exact polynomials, leading monomials and vanishing.
    Hard,
    /// Term counts of intermediates.
    Soft,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// Mismatch tolerated because the computed and reference ideals agree.
    Warn,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checkpoint {
    pub id: String,
    pub round: usize,
    pub severity: Severity,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproReport {
    pub golden_sha256: String,
    pub rounds_run: usize,
    pub passed: bool,
    pub failures: usize,
    pub warnings: usize,
    pub checkpoints: Vec<Checkpoint>,
    pub rounds: Vec<Value>,
    pub pending: Vec<Value>,
}

impl ReproReport {
    pub fn checkpoint(&self, id: &str) -> Option<&Checkpoint> {
        self.checkpoints.iter().find(|c| c.id == id)
    }
}

/// Four rounds under the default strategy and self-overlap policy.
pub fn repro_config() -> EngineConfig {
    EngineConfig { max_iterations: 4, ..EngineConfig::default() }
}

const NOTATION: Notation = Notation::Letters;

fn word(w: &Word) -> String {
    format_word(w, NOTATION)
}

fn poly(p: &Polynomial) -> String {
    format_polynomial_with(p, NOTATION)
}

struct Recorder {
    checkpoints: Vec<Checkpoint>,
}

impl Recorder {
    fn check(&mut self, id: String, round: usize, severity: Severity, expected: String, actual: String) -> &mut Checkpoint {
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        self.checkpoints.push(Checkpoint { id, round, severity, status, expected, actual, note: None });
        self.checkpoints.last_mut().expect("just pushed")
    }

    fn fail(&mut self, id: String, round: usize, expected: String, note: &str) {
        self.checkpoints.push(Checkpoint {
            id,
            round,
            severity: Severity::Hard,
            status: Status::Fail,
            expected,
            actual: "missing".into(),
            note: Some(note.into()),
        });
    }
}

/// The reference generators after a round: named members resolved to their
/// full reference polynomial, or to the computed member with the named
/// leading monomial when only that is on record. Rounds without a listed
/// basis use the latest listed one plus the members adjoined in the round.
fn reference_set(round: usize, log: &RoundLog, golden: &GoldenData) -> Option<GeneratorSet> {
    let listed = golden.rounds.iter().filter(|g| g.round <= round).rev().find_map(|g| g.basis_after.as_ref().map(|b| (g.round, b)))?;
    let (listed_round, names) = listed;
    let by_lm = |lm: &Word| log.basis_after.members().iter().find(|m| m.leading_monomial().ok() == Some(lm));
    let mut members = Vec::new();
    for name in names {
        match golden.polynomial(name) {
            Some(p) => members.push(p.clone()),
            None => members.push(by_lm(golden.leading_monomial(name))?.clone()),
        }
    }
    if listed_round < round {
        members.extend(log.adjoined_fate.iter().flatten().map(|&k| log.basis_after.get(k).clone()));
    }
    GeneratorSet::new(members).ok()
}

/// Each side reduces to zero modulo the other, so both generate the same
/// ideal.
pub fn ideals_agree(computed: &GeneratorSet, reference: &GeneratorSet) -> bool {
    computed.members().iter().all(|g| reduce(g, reference).is_zero())
        && reference.members().iter().all(|g| reduce(g, computed).is_zero())
}

fn apply_fallback(cp: &mut Checkpoint, log: &RoundLog, golden: &GoldenData) {
    if cp.status != Status::Fail {
        return;
    }
    if reference_set(cp.round, log, golden).is_some_and(|reference| ideals_agree(&log.basis_after, &reference)) {
        cp.status = Status::Warn;
        cp.note = Some("differs from the reference, but the computed and reference generators span the same ideal".into());
    } else {
        cp.note = Some("differs from the reference and the ideals could not be shown equal".into());
    }
}

fn label(c: &GoldenComposition) -> String {
    format!("{}*{} - {}*{}", c.g, word(&c.u), word(&c.v), c.h)
}

fn find_record<'a>(log: &'a RoundLog, c: &GoldenComposition, golden: &GoldenData) -> Option<&'a CompositionRecord> {
    let g_lm = golden.leading_monomial(&c.g);
    let h_lm = golden.leading_monomial(&c.h);
    log.compositions
        .iter()
        .find(|r| &r.g_lm == g_lm && &r.h_lm == h_lm && r.task.u == c.u && r.task.v == c.v)
}

/// Where the adjoined polynomial from `record` ended up after self-reduction.
fn fate<'a>(log: &'a RoundLog, record: &CompositionRecord) -> Option<Option<&'a Polynomial>> {
    let monic = record.normal_form.make_monic().ok()?;
    let index = log.adjoined.iter().position(|p| p == &monic)?;
    Some(log.adjoined_fate[index].map(|k| log.basis_after.get(k)))
}

fn check_round(rec: &mut Recorder, expected: &GoldenRound, log: &RoundLog, golden: &GoldenData) {
    let r = expected.round;
    let mut named: Vec<(&str, &CompositionRecord)> = Vec::new();
    for c in &expected.compositions {
        let id = format!("round{r}.{}", label(c));
        let Some(record) = find_record(log, c, golden) else {
            rec.fail(format!("{id}.present"), r, label(c), "composition not produced by the engine");
            continue;
        };
        if let Some(terms) = c.terms {
            let cp = rec.check(format!("{id}.terms"), r, Severity::Soft, terms.to_string(), record.composition_terms().to_string());
            apply_fallback(cp, log, golden);
        }
        let Some(name) = &c.normal_form else { continue };
        named.push((name, record));
        let monic = record.normal_form.make_monic().ok();
        let actual_lm = monic.as_ref().map_or("0".to_string(), |p| word(p.leading_monomial().expect("nonzero")));
        match golden.polynomial(name) {
            Some(p) => {
                let actual = monic.as_ref().map_or("0".to_string(), poly);
                let cp = rec.check(format!("round{r}.{name}.exact"), r, Severity::Hard, poly(p), actual);
                if ORDER_DEPENDENT.contains(&name.as_str()) {
                    apply_fallback(cp, log, golden);
                }
            }
            None => {
                rec.check(format!("round{r}.{name}.lm"), r, Severity::Hard, word(golden.leading_monomial(name)), actual_lm);
            }
        }
        if let Some(terms) = c.normal_form_terms.or_else(|| golden.terms.get(name.as_str()).copied()) {
            let cp = rec.check(format!("round{r}.{name}.terms"), r, Severity::Soft, terms.to_string(), record.normal_form_terms().to_string());
            apply_fallback(cp, log, golden);
        }
    }

    let lookup = |name: &str| named.iter().find(|(n, _)| *n == name).map(|(_, rec)| *rec);
    for name in &expected.vanish {
        let actual = match lookup(name).and_then(|record| fate(log, record)) {
            Some(None) => "vanished".to_string(),
            Some(Some(p)) => format!("kept with leading monomial {}", word(p.leading_monomial().expect("nonzero"))),
            None => "missing".to_string(),
        };
        rec.check(format!("round{r}.{name}.vanishes"), r, Severity::Hard, "vanished".into(), actual);
    }
    for (from, to) in &expected.reduced {
        let survivor = lookup(from).and_then(|record| fate(log, record)).flatten();
        let actual_lm = survivor.map_or("missing".into(), |p| word(p.leading_monomial().expect("nonzero")));
        rec.check(format!("round{r}.{to}.lm"), r, Severity::Hard, word(golden.leading_monomial(to)), actual_lm);
        if let Some(&terms) = golden.terms.get(to.as_str()) {
            let actual = survivor.map_or("missing".into(), |p| p.len().to_string());
            let cp = rec.check(format!("round{r}.{to}.terms"), r, Severity::Soft, terms.to_string(), actual);
            apply_fallback(cp, log, golden);
        }
    }

    if let Some(names) = &expected.basis_after {
        let expected_lms: Vec<String> = names.iter().map(|n| word(golden.leading_monomial(n))).collect();
        let actual_lms: Vec<String> = log.basis_after.leading_monomials().into_iter().map(word).collect();
        rec.check(format!("round{r}.basis.leading_monomials"), r, Severity::Hard, expected_lms.join(", "), actual_lms.join(", "));
        for name in names {
            if let Some(p) = golden.polynomial(name) {
                let actual = if log.basis_after.contains(p) { "present" } else { "absent" };
                rec.check(format!("round{r}.basis.{name}"), r, Severity::Hard, "present".into(), actual.into());
            }
        }
    }

    if let Some(count) = expected.new_compositions {
        let cp = rec.check(format!("round{r}.composition_count"), r, Severity::Soft, count.to_string(), log.compositions.len().to_string());
        let extra: Vec<String> = log
            .compositions
            .iter()
            .filter(|record| !expected.compositions.iter().any(|c| find_record(log, c, golden).is_some_and(|m| std::ptr::eq(m, *record))))
            .map(|record| format!("{}*{} - {}*{}", word(&record.g_lm), word(&record.task.u), word(&record.task.v), word(&record.h_lm)))
            .collect();
        if !extra.is_empty() {
            cp.note = Some(format!("not itemized in the reference: {}", extra.join("; ")));
        }
        apply_fallback(cp, log, golden);
    }
}

/// Runs the completion and evaluates every checkpoint.
pub fn run_paper_repro(golden: &GoldenData, cfg: &EngineConfig) -> ReproReport {
    let mut rec = Recorder { checkpoints: Vec::new() };
    let algebra = simple_algebra(3).expect("arity 3 is valid");
    for (i, g) in envelope_generator_list(&algebra).iter().enumerate() {
        let name = format!("G{}", i + 1);
        let expected = golden.polynomial(&name).map_or("missing".into(), poly);
        rec.check(format!("generators.{name}"), 0, Severity::Hard, expected, poly(g));
    }

    let outcome = Completion::new(&envelope_generators(&algebra), cfg.clone())
        .expect("repro configuration is valid")
        .run();
    let logs = outcome.log();
    rec.check(
        "rounds.count".into(),
        0,
        Severity::Hard,
        golden.rounds.len().to_string(),
        logs.len().min(golden.rounds.len()).to_string(),
    );
    for expected in &golden.rounds {
        match logs.get(expected.round - 1) {
            Some(log) => check_round(&mut rec, expected, log, golden),
            None => rec.fail(format!("round{}.run", expected.round), expected.round, "executed".into(), "round was not executed"),
        }
    }

    let pending = match &outcome {
        CompletionOutcome::Capped { pending, .. } => pending.iter().map(|p| p.to_json(NOTATION)).collect(),
        CompletionOutcome::Completed { .. } => Vec::new(),
    };
    let failures = rec.checkpoints.iter().filter(|c| c.status == Status::Fail).count();
    let warnings = rec.checkpoints.iter().filter(|c| c.status == Status::Warn).count();
    ReproReport {
        golden_sha256: sha256_hex(GOLDEN_TOML),
        rounds_run: logs.len(),
        passed: failures == 0,
        failures,
        warnings,
        checkpoints: rec.checkpoints,
        rounds: logs.iter().map(|l| l.to_json(NOTATION)).collect(),
        pending,
    }
}
