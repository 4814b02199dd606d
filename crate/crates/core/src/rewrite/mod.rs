//! Rewriting modulo a set of monic generators: normal forms, self-reduction,
//! compositions, and the round-based completion loop.

mod completion;
mod reduce;

use thiserror::Error;

use crate::freealg::{FreeAlgError, Polynomial, Word};

pub use completion::{
    complete, compose, find_compositions, is_groebner, CapReason, Completion, CompletionOutcome, CompositionRecord,
    CompositionTask, EngineConfig, GroebnerCheck, PendingComposition, RoundLog, SelfOverlapPolicy,
};
pub use reduce::{is_normal, normal_form, normal_form_with, reduce, ReductionStep, ReductionTrace, Strategy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("generator {index} is the zero polynomial")]
    ZeroGenerator { index: usize },
    #[error("invalid engine configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
}

/// Monic generators listed in reverse deglex order of their leading
/// monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorSet {
    members: Vec<Polynomial>,
}

impl GeneratorSet {
    /// Makes every polynomial monic and sorts by leading monomial. The sort is
    /// stable, so members with equal leading monomials keep their input order.
    pub fn new(polys: impl IntoIterator<Item = Polynomial>) -> Result<Self, RewriteError> {
        let members = polys
            .into_iter()
            .enumerate()
            .map(|(index, p)| p.make_monic().map_err(|_| RewriteError::ZeroGenerator { index }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_monic(members))
    }

    fn from_monic(mut members: Vec<Polynomial>) -> Self {
        debug_assert!(members.iter().all(Polynomial::is_monic));
        members.sort_by(|a, b| lm(b).cmp(lm(a)));
        GeneratorSet { members }
    }

    pub fn members(&self) -> &[Polynomial] {
        &self.members
    }

    pub fn get(&self, index: usize) -> &Polynomial {
        &self.members[index]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<&Word> {
        self.members.iter().map(lm).collect()
    }

    pub fn position(&self, poly: &Polynomial) -> Option<usize> {
        self.members.iter().position(|m| m == poly)
    }

    pub fn contains(&self, poly: &Polynomial) -> bool {
        self.position(poly).is_some()
    }

    /// Equality as sets of polynomials, ignoring listing order.
    pub fn same_members(&self, other: &GeneratorSet) -> bool {
        self.len() == other.len()
            && self.members.iter().all(|m| other.contains(m))
            && other.members.iter().all(|m| self.contains(m))
    }

    /// Largest degree of any member.
    pub fn max_degree(&self) -> usize {
        self.members.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<GeneratorSet, RewriteError> {
        GeneratorSet::new(self.members.iter().cloned().chain(extra))
    }

    /// Every member monic and in normal form modulo the other members.
    pub fn is_self_reduced(&self) -> bool {
        (0..self.len()).all(|i| {
            let g = &self.members[i];
            let others: Vec<&Polynomial> = self.others(i);
            g.is_monic() && g.support().all(|w| others.iter().all(|h| !w.contains_factor(lm(h))))
        })
    }

    fn others(&self, skip: usize) -> Vec<&Polynomial> {
        self.members
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != skip)
            .map(|(_, m)| m)
            .collect()
    }
}

pub(crate) fn lm(p: &Polynomial) -> &Word {
    p.leading_monomial().expect("generator set members are nonzero")
}

/// Outcome of [`self_reduce_tracked`]: the reduced set plus, for each input
/// member, the index of what it became (`None` when it reduced to zero).
#[derive(Clone, Debug)]
pub struct SelfReduction {
    pub set: GeneratorSet,
    pub fate: Vec<Option<usize>>,
}

impl SelfReduction {
    pub fn dropped(&self) -> usize {
        self.fate.iter().filter(|f| f.is_none()).count()
    }
}

/// Replaces each member by its normal form modulo the others until nothing
/// changes, dropping members that vanish.
pub fn self_reduce(set: &GeneratorSet) -> GeneratorSet {
    self_reduce_tracked(set).set
}

/// Members are visited from the smallest leading monomial upwards and
/// replaced immediately, so later members are reduced by already-reduced
/// smaller ones. Passes repeat until a fixed point.
pub fn self_reduce_tracked(set: &GeneratorSet) -> SelfReduction {
    let mut slots: Vec<Option<Polynomial>> = set.members.iter().cloned().map(Some).collect();
    loop {
        let mut changed = false;
        let mut order: Vec<usize> = (0..slots.len()).filter(|&i| slots[i].is_some()).collect();
        order.sort_by(|&a, &b| {
            lm(slots[a].as_ref().unwrap())
                .cmp(lm(slots[b].as_ref().unwrap()))
                .then(b.cmp(&a))
        });
        for i in order {
            let Some(g) = slots[i].as_ref() else { continue };
            let others: Vec<&Polynomial> = slots
                .iter()
                .enumerate()
                .filter_map(|(j, s)| if j == i { None } else { s.as_ref() })
                .collect();
            let nf = reduce::reduce_by(g, &others, Strategy::GreatestLeftmost);
            if &nf == g {
                continue;
            }
            changed = true;
            slots[i] = if nf.is_zero() { None } else { Some(nf.make_monic().expect("nonzero")) };
        }
        if !changed {
            break;
        }
    }
    let input_len = slots.len();
    let survivors: Vec<(usize, Polynomial)> =
        slots.into_iter().enumerate().filter_map(|(i, s)| s.map(|p| (i, p))).collect();
    let set = GeneratorSet::from_monic(survivors.iter().map(|(_, p)| p.clone()).collect());
    let mut fate = vec![None; input_len];
    for (orig, p) in &survivors {
        fate[*orig] = set.position(p);
    }
    SelfReduction { set, fate }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn new_makes_monic_and_sorts() {
        let set = GeneratorSet::new([p("x1"), p("-2*x2*x1 + 2*x1*x2")]).unwrap();
        assert_eq!(set.members(), &[p("x2*x1 - x1*x2"), p("x1")]);
        assert_eq!(
            GeneratorSet::new([p("x1"), Polynomial::zero()]),
            Err(RewriteError::ZeroGenerator { index: 1 })
        );
    }

    #[test]
    fn self_reduce_small() {
        let set = GeneratorSet::new([p("x1"), p("x1*x2 + x3")]).unwrap();
        let reduced = self_reduce(&set);
        assert!(reduced.same_members(&GeneratorSet::new([p("x1"), p("x3")]).unwrap()));
        assert!(reduced.is_self_reduced());
        assert!(!set.is_self_reduced());
    }

    #[test]
    fn self_reduce_drops_duplicates() {
        let set = GeneratorSet::new([p("x2 - x1"), p("2*x2 - 2*x1")]).unwrap();
        let out = self_reduce_tracked(&set);
        assert_eq!(out.set.len(), 1);
        assert_eq!(out.dropped(), 1);
    }
}
