use anyhow::{anyhow, bail, Context, Result};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use nlie_envelope::envelope::{
    closed_form_kind, count_normal_words, enumerate_normal_words, envelope_report, verify_closed_form, Envelope,
};
use nlie_envelope::freealg::{format_polynomial_with, format_scalar, format_word, Notation, Scalar, Word};
use nlie_envelope::nlie::{
    classified_algebra, envelope_generators, omit, parse_rational, simple_algebra, AlgebraFile, AlgebraLabel, NLieAlgebra,
};
use nlie_envelope::repro::{load_golden, repro_config, run_paper_repro, Severity, Status};
use nlie_envelope::rewrite::{complete, CapReason, CompletionOutcome, EngineConfig, SelfOverlapPolicy, Strategy};

use crate::args::{AlgebraArgs, CapArgs, Cli, Command, Format};

pub struct Outcome {
    pub text: String,
    pub checkpoints_failed: bool,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let (report, text, failed) = match &cli.command {
        Command::AlgebraInfo(a) => algebra_info(&load_algebra(a)?),
        Command::EnvelopeBuild { algebra, caps, degree } => envelope_build(&load_algebra(algebra)?, caps, *degree)?,
        Command::BasisEnumerate { algebra, degree, words } => basis_enumerate(&load_algebra(algebra)?, *degree, *words)?,
        Command::GroebnerRun { algebra, caps, seed, eager_self_overlaps, full_basis } => {
            let cfg = EngineConfig {
                max_degree: caps.max_degree,
                max_iterations: caps.max_iterations,
                strategy: seed.map_or(Strategy::GreatestLeftmost, |seed| Strategy::Randomized { seed }),
                self_overlaps: if *eager_self_overlaps { SelfOverlapPolicy::Eager } else { SelfOverlapPolicy::Deferred },
            };
            groebner_run(&load_algebra(algebra)?, cfg, *full_basis)?
        }
        Command::PaperRepro => paper_repro()?,
    };
    let text = match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report)?),
        Format::Text => text,
    };
    Ok(Outcome { text, checkpoints_failed: failed })
}

fn parse_label(case: &str, beta: Option<&str>, r: Option<usize>) -> Result<AlgebraLabel> {
    let case = case.to_ascii_lowercase();
    if beta.is_some() && case != "2b" {
        bail!("--beta only applies to case 2b");
    }
    if r.is_some() && case != "r" {
        bail!("--r only applies to case r");
    }
    Ok(match case.as_str() {
        "simple" => AlgebraLabel::Simple,
        "abelian" | "0" => AlgebraLabel::Abelian,
        "1a" => AlgebraLabel::OneA,
        "1b" => AlgebraLabel::OneB,
        "2a" => AlgebraLabel::TwoA,
        "2b" => {
            let text = beta.ok_or_else(|| anyhow!("case 2b needs --beta"))?;
            let beta = parse_rational(text).ok_or_else(|| anyhow!("--beta must be an integer or p/q, got {text:?}"))?;
            AlgebraLabel::TwoB { beta }
        }
        "r" => AlgebraLabel::R { r: r.ok_or_else(|| anyhow!("case r needs --r"))? },
        other => bail!("unknown case {other:?}; expected simple, abelian, 1a, 1b, 2a, 2b or r"),
    })
}

fn load_algebra(args: &AlgebraArgs) -> Result<NLieAlgebra> {
    if let Some(path) = &args.algebra {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(AlgebraFile::from_json(&text)?);
    }
    let case = args.case.as_deref().ok_or_else(|| anyhow!("--case is required"))?;
    let n = args.n.ok_or_else(|| anyhow!("--n is required"))?;
    let label = parse_label(case, args.beta.as_deref(), args.r)?;
    Ok(match label {
        AlgebraLabel::Simple => simple_algebra(n)?,
        other => classified_algebra(&other, n)?,
    })
}

/// Letters a, b, c, d for 4-dimensional algebras, indexed otherwise.
fn notation_for(algebra: &NLieAlgebra) -> Notation {
    if algebra.dimension() == 4 {
        Notation::Letters
    } else {
        Notation::Indexed
    }
}

fn label_of(algebra: &NLieAlgebra) -> String {
    algebra.label().map_or_else(|| "custom".to_string(), ToString::to_string)
}

/// Basis vector names matching the polynomial notation.
fn element(i: usize, notation: Notation) -> String {
    match notation {
        Notation::Letters => format_word(&Word::letter(i), notation),
        Notation::Indexed => format!("e{i}"),
    }
}

/// `Σ c_k e_k` in ascending basis order.
fn vector_text(v: &[Scalar], notation: Notation) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let magnitude = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if !magnitude.is_one() {
            out.push_str(&format!("{}*", format_scalar(&magnitude)));
        }
        out.push_str(&element(k + 1, notation));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn bracket_lines(algebra: &NLieAlgebra, notation: Notation) -> Vec<String> {
    let m = algebra.dimension();
    (1..=m)
        .map(|i| {
            let args: Vec<String> = omit(m, i).into_iter().map(|k| element(k, notation)).collect();
            format!("[{}] = {}", args.join(", "), vector_text(algebra.structure_vector(i), notation))
        })
        .collect()
}

fn algebra_info(algebra: &NLieAlgebra) -> (Value, String, bool) {
    let notation = notation_for(algebra);
    let brackets = bracket_lines(algebra, notation);
    let jacobi = algebra.check_generalized_jacobi();
    let violation = jacobi.violations.first().map(|v| {
        json!({
            "x": v.x,
            "y": v.y,
            "lhs": vector_text(&v.lhs, notation),
            "rhs": vector_text(&v.rhs, notation),
        })
    });
    let structure: Vec<Vec<String>> =
        algebra.structure().iter().map(|row| row.iter().map(format_scalar).collect()).collect();
    let report = json!({
        "algebra_label": label_of(algebra),
        "n": algebra.arity(),
        "dimension": algebra.dimension(),
        "brackets": brackets,
        "structure": structure,
        "derived_dimension": algebra.derived_dimension(),
        "jacobi": {
            "holds": jacobi.holds(),
            "checked": jacobi.checked,
            "violations": jacobi.violations.len(),
            "first_violation": violation,
        },
    });
    let mut text = format!("algebra {} (n = {}, dimension {})\n", label_of(algebra), algebra.arity(), algebra.dimension());
    for line in &brackets {
        text.push_str(&format!("  {line}\n"));
    }
    text.push_str(&format!("derived dimension: {}\n", algebra.derived_dimension()));
    text.push_str(&format!(
        "generalized Jacobi: {} ({} instances, {} violations)\n",
        if jacobi.holds() { "OK" } else { "FAILED" },
        jacobi.checked,
        jacobi.violations.len()
    ));
    (report, text, false)
}

fn engine_config(caps: &CapArgs) -> EngineConfig {
    EngineConfig { max_degree: caps.max_degree, max_iterations: caps.max_iterations, ..EngineConfig::default() }
}

fn cap_reason(reason: &CapReason) -> Value {
    match reason {
        CapReason::Iterations => json!({"kind": "iterations"}),
        CapReason::Degree { degree } => json!({"kind": "degree", "degree": degree}),
    }
}

fn round_summaries(outcome: &CompletionOutcome, notation: Notation) -> Vec<Value> {
    outcome.log().iter().map(|round| round.to_json(notation)).collect()
}

fn envelope_build(algebra: &NLieAlgebra, caps: &CapArgs, degree: usize) -> Result<(Value, String, bool)> {
    let notation = notation_for(algebra);
    let envelope = Envelope::build(algebra, &engine_config(caps))?;
    let report = envelope_report(&envelope, degree, notation)?;
    let mut value = serde_json::to_value(&report)?;
    let closed = closed_form_kind(algebra).ok();
    value["closed_form"] = closed.map_or(Value::Null, |k| json!(format!("{k:?}")));
    if closed.is_some() {
        value["closed_form_verified"] = json!(verify_closed_form(algebra)?);
    }
    let mut text = format!("envelope of {} (n = {})\n", report.algebra_label, report.n);
    match envelope.outcome() {
        CompletionOutcome::Completed { .. } => {
            value["status"] = json!("groebner");
            text.push_str(&format!("status: Gröbner basis with {} generators\n", report.basis.len()));
        }
        CompletionOutcome::Capped { pending, reason, .. } => {
            value["status"] = json!("capped");
            value["cap_reason"] = cap_reason(reason);
            value["pending"] = json!(pending.iter().map(|p| p.to_json(notation)).collect::<Vec<_>>());
            text.push_str(&format!(
                "status: capped after {} rounds ({:?}), {} compositions pending\n",
                envelope.outcome().log().len(),
                reason,
                pending.len()
            ));
        }
    }
    value["rounds"] = json!(round_summaries(envelope.outcome(), notation));
    for g in &report.basis {
        text.push_str(&format!("  {g}\n"));
    }
    let show = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
    text.push_str(&format!(
        "checks: groebner {}, envelope property {}, injectivity {}\n",
        report.checks.groebner,
        show(report.checks.envelope_property),
        show(report.checks.injectivity)
    ));
    if !report.normal_word_counts.is_empty() {
        text.push_str(&format!("normal words per degree: {:?}\n", report.normal_word_counts));
    }
    for round in envelope.outcome().log() {
        text.push_str(&format!(
            "round {}: {} compositions, {} adjoined, basis size {}\n",
            round.round,
            round.compositions.len(),
            round.adjoined.len(),
            round.basis_after.len()
        ));
    }
    Ok((value, text, false))
}

fn basis_enumerate(algebra: &NLieAlgebra, degree: usize, list_words: bool) -> Result<(Value, String, bool)> {
    if algebra.arity() % 2 == 1 {
        bail!("no complete Gröbner basis is available for odd n = {}; normal words are undefined", algebra.arity());
    }
    let notation = notation_for(algebra);
    let envelope = Envelope::build(algebra, &EngineConfig::default())?;
    let counts = count_normal_words(&envelope, degree)?;
    let forbidden: Vec<String> = envelope.leading_monomials().iter().map(|w| format_word(w, notation)).collect();
    let mut value = json!({
        "algebra_label": label_of(algebra),
        "n": algebra.arity(),
        "degree": degree,
        "counts": counts,
        "forbidden_factors": forbidden,
    });
    let mut text = format!("normal words per degree 0..={degree}: {counts:?}\nforbidden factors: {}\n", forbidden.join(", "));
    if list_words {
        let mut per_degree = Vec::new();
        for d in 0..=degree {
            let words: Vec<String> =
                enumerate_normal_words(&envelope, d)?.iter().map(|w| format_word(w, notation)).collect();
            text.push_str(&format!("degree {d}: {}\n", words.join(" ")));
            per_degree.push(words);
        }
        value["words"] = json!(per_degree);
    }
    Ok((value, text, false))
}

fn groebner_run(algebra: &NLieAlgebra, cfg: EngineConfig, full_basis: bool) -> Result<(Value, String, bool)> {
    let notation = notation_for(algebra);
    let outcome = complete(&envelope_generators(algebra), &cfg)?;
    let basis: Vec<Value> = outcome
        .basis()
        .members()
        .iter()
        .map(|g| {
            let lm = format_word(g.leading_monomial().expect("nonzero"), notation);
            if full_basis {
                json!({"leading_monomial": lm, "terms": g.len(), "polynomial": format_polynomial_with(g, notation)})
            } else {
                json!({"leading_monomial": lm, "terms": g.len()})
            }
        })
        .collect();
    let mut value = json!({
        "algebra_label": label_of(algebra),
        "n": algebra.arity(),
        "config": {
            "max_degree": cfg.max_degree,
            "max_iterations": cfg.max_iterations,
            "strategy": serde_json::to_value(cfg.strategy)?,
            "self_overlaps": format!("{:?}", cfg.self_overlaps).to_lowercase(),
        },
        "rounds": round_summaries(&outcome, notation),
        "basis": basis,
    });
    let mut text = format!("completion for {} (n = {})\n", label_of(algebra), algebra.arity());
    for round in outcome.log() {
        text.push_str(&format!("round {}\n", round.round));
        for c in &round.compositions {
            let lm = c.normal_form.leading_monomial().map_or("0".to_string(), |w| format_word(w, notation));
            text.push_str(&format!(
                "  {}*{} - {}*{}: {} terms -> {} terms, LM {}\n",
                format_word(&c.g_lm, notation),
                format_word(&c.task.u, notation),
                format_word(&c.task.v, notation),
                format_word(&c.h_lm, notation),
                c.composition_terms(),
                c.normal_form_terms(),
                lm
            ));
        }
        text.push_str(&format!(
            "  basis size {} ({} removed by self-reduction)\n",
            round.basis_after.len(),
            round.dropped_by_self_reduction
        ));
    }
    match &outcome {
        CompletionOutcome::Completed { basis, .. } => {
            value["status"] = json!("completed");
            text.push_str(&format!("completed: Gröbner basis with {} generators\n", basis.len()));
        }
        CompletionOutcome::Capped { pending, reason, .. } => {
            value["status"] = json!("capped");
            value["cap_reason"] = cap_reason(reason);
            value["pending"] = json!(pending.iter().map(|p| p.to_json(notation)).collect::<Vec<_>>());
            text.push_str(&format!("capped ({reason:?}); pending compositions:\n"));
            for p in pending {
                text.push_str(&format!(
                    "  {}*{} - {}*{}: {} terms\n",
                    format_word(&p.g_lm, notation),
                    format_word(&p.task.u, notation),
                    format_word(&p.task.v, notation),
                    format_word(&p.h_lm, notation),
                    p.composition_terms
                ));
            }
        }
    }
    if full_basis {
        text.push_str("basis:\n");
        for g in outcome.basis().members() {
            text.push_str(&format!("  {}\n", format_polynomial_with(g, notation)));
        }
    }
    Ok((value, text, false))
}

fn paper_repro() -> Result<(Value, String, bool)> {
    let golden = load_golden()?;
    let report = run_paper_repro(&golden, &repro_config());
    let mut text = String::new();
    for c in &report.checkpoints {
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
        };
        let severity = match c.severity {
            Severity::Hard => "hard",
            Severity::Soft => "soft",
        };
        text.push_str(&format!("{status} [{severity}] {}", c.id));
        if c.status != Status::Pass {
            text.push_str(&format!(": expected {}, got {}", c.expected, c.actual));
        }
        if let Some(note) = &c.note {
            text.push_str(&format!(" ({note})"));
        }
        text.push('\n');
    }
    text.push_str(&format!(
        "{} checkpoints, {} failed, {} warnings; {} rounds run\n",
        report.checkpoints.len(),
        report.failures,
        report.warnings,
        report.rounds_run
    ));
    let failed = !report.passed;
    Ok((serde_json::to_value(&report)?, text, failed))
}
