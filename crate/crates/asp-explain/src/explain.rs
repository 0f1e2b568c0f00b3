//! Well-founded derivation, explaining derivations, assumption sets, and the
//! minimal assumption set search.
//!
//! An explaining derivation repeatedly adds atoms of the answer set that are
//! inferred true by support and removes atoms inferred false by lack of
//! support, constraint-like rules, or choice rules. An assumption set X is a
//! set of false atoms whose removal from the well-founded upper bound lets
//! the derivation reconstruct the whole answer set; the search prefers sets
//! that avoid the query atom, then smaller sets, then the lexicographically
//! least set.

use std::collections::BTreeSet;
use std::fmt;

use crate::ast::Atom;
use crate::ground::{AggId, GroundProgram, RuleId};
use crate::semantics::{
    eval_aggregate, find_unfounded_set, infer_false, infer_true_by_support, Falsity,
    Interpretation, ThreeValued, TruthValue,
};

/// The rule behind a support reason: a program rule, or the synthetic rule
/// of an aggregate (identified by the aggregate itself).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ReasonRule {
    Rule(RuleId),
    Aggregate(AggId),
}

impl fmt::Display for ReasonRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReasonRule::Rule(id) => write!(f, "{id}"),
            ReasonRule::Aggregate(id) => write!(f, "{id}"),
        }
    }
}

/// Why a subject is true or false in a derivation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Reason {
    Assumption,
    InitialWellFounded,
    Support(ReasonRule),
    LackOfSupport,
    RequiredToFalsifyBody(RuleId),
    ChoiceRule(RuleId),
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Assumption => write!(f, "assumption"),
            Reason::InitialWellFounded => write!(f, "initial_well_founded"),
            Reason::Support(rule) => write!(f, "(support, {rule})"),
            Reason::LackOfSupport => write!(f, "lack_of_support"),
            Reason::RequiredToFalsifyBody(rule) => {
                write!(f, "(required_to_falsify_body, {rule})")
            }
            Reason::ChoiceRule(rule) => write!(f, "(choice_rule, {rule})"),
        }
    }
}

/// A derivation subject: a ground atom or a ground aggregate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Subject {
    Atom(Atom),
    Aggregate(AggId),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Atom(a) => write!(f, "{a}"),
            Subject::Aggregate(id) => write!(f, "{id}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationRecord {
    /// 0 for subjects decided before the derivation starts (well-founded
    /// falsities and assumptions); 1, 2, ... for derived subjects, strictly
    /// increasing.
    pub index: usize,
    pub subject: Subject,
    pub truth: bool,
    pub reason: Reason,
}

impl fmt::Display for DerivationRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "explained_by({}, {}, {}).", self.index, self.subject, self.reason)
    }
}

/// An ordered sequence of derivation records; each subject appears once.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Derivation {
    pub records: Vec<DerivationRecord>,
    /// Number of operator applications until the fixpoint.
    pub steps: usize,
}

impl Derivation {
    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn find(&self, subject: &Subject) -> Option<&DerivationRecord> {
        self.records.iter().find(|r| &r.subject == subject)
    }

    /// One line per record, in index order.
    pub fn trace(&self) -> String {
        let mut out = String::new();
        for record in &self.records {
            out.push_str(&record.to_string());
            out.push('\n');
        }
        out
    }
}

/// An assumption set: false atoms assumed outright.
pub type AssumptionSet = Interpretation;

/// The well-founded derivation: from `(∅, base)`, iteratively add atoms of
/// `a` inferred true by support and remove the greatest unfounded set, to a
/// fixpoint. Computed once per (program, answer set) and shared by queries.
pub fn well_founded_derivation(ground: &GroundProgram, a: &Interpretation) -> ThreeValued {
    let mut tv = ThreeValued::new(Interpretation::new(), ground.base.clone());
    loop {
        let mut changed = false;
        for (atom, _) in infer_true_by_support(&tv, ground, a) {
            tv.lower.insert(atom);
            changed = true;
        }
        let unfounded = find_unfounded_set(&tv, ground);
        for atom in unfounded {
            tv.upper.remove(&atom);
            changed = true;
        }
        if !changed {
            return tv;
        }
    }
}

/// One application of the explaining derivation operator: add supported
/// atoms of `a`, remove atoms inferred false.
pub fn explaining_step(tv: &ThreeValued, ground: &GroundProgram, a: &Interpretation) -> ThreeValued {
    let mut next = tv.clone();
    for (atom, _) in infer_true_by_support(tv, ground, a) {
        next.lower.insert(atom);
    }
    for (atom, _) in infer_false(tv, ground) {
        next.upper.remove(&atom);
    }
    next
}

/// Ranks falsity reasons for deterministic selection: constraint-like
/// before choice-rule before lack-of-support, then smallest rule id.
fn falsity_rank(f: &Falsity) -> (u8, Option<&RuleId>) {
    match f {
        Falsity::RequiredToFalsifyBody(id) => (0, Some(id)),
        Falsity::ChoiceRule(id) => (1, Some(id)),
        Falsity::LackOfSupport => (2, None),
    }
}

fn falsity_reason(f: Falsity) -> Reason {
    match f {
        Falsity::LackOfSupport => Reason::LackOfSupport,
        Falsity::RequiredToFalsifyBody(id) => Reason::RequiredToFalsifyBody(id),
        Falsity::ChoiceRule(id) => Reason::ChoiceRule(id),
    }
}

/// The derivation loop shared by all entry points. Within a step, supported
/// atoms are recorded first, then falsified atoms, then aggregates whose
/// evaluation left undefined, each group in lexicographic order.
fn run_derivation(
    start: ThreeValued,
    ground: &GroundProgram,
    a: &Interpretation,
    mut on_record: Option<(&mut Vec<DerivationRecord>, &mut usize)>,
) -> (ThreeValued, usize) {
    let mut decided_aggs: BTreeSet<&AggId> = ground
        .aggregates
        .iter()
        .filter(|(_, agg)| eval_aggregate(agg, &start) != TruthValue::Undefined)
        .map(|(id, _)| id)
        .collect();
    let mut tv = start;
    let mut steps = 0;
    loop {
        let supported = infer_true_by_support(&tv, ground, a);
        let falsified = infer_false(&tv, ground);
        if supported.is_empty() && falsified.is_empty() {
            return (tv, steps);
        }
        steps += 1;

        let mut next = tv.clone();
        if let Some((records, next_index)) = on_record.as_mut() {
            // infer_true_by_support is sorted by (atom, rule id), so the
            // first pair per atom carries the smallest supporting rule.
            let mut last: Option<&Atom> = None;
            for (atom, rule) in &supported {
                if last == Some(atom) {
                    continue;
                }
                last = Some(atom);
                records.push(DerivationRecord {
                    index: **next_index,
                    subject: Subject::Atom(atom.clone()),
                    truth: true,
                    reason: Reason::Support(ReasonRule::Rule(rule.clone())),
                });
                **next_index += 1;
            }
            let mut i = 0;
            while i < falsified.len() {
                let atom = &falsified[i].0;
                let mut best = &falsified[i].1;
                let mut j = i + 1;
                while j < falsified.len() && &falsified[j].0 == atom {
                    if falsity_rank(&falsified[j].1) < falsity_rank(best) {
                        best = &falsified[j].1;
                    }
                    j += 1;
                }
                records.push(DerivationRecord {
                    index: **next_index,
                    subject: Subject::Atom(atom.clone()),
                    truth: false,
                    reason: falsity_reason(best.clone()),
                });
                **next_index += 1;
                i = j;
            }
        }
        for (atom, _) in &supported {
            next.lower.insert(atom.clone());
        }
        for (atom, _) in &falsified {
            next.upper.remove(atom);
        }

        for (id, agg) in &ground.aggregates {
            if decided_aggs.contains(id) {
                continue;
            }
            let value = eval_aggregate(agg, &next);
            if value == TruthValue::Undefined {
                continue;
            }
            decided_aggs.insert(id);
            if let Some((records, next_index)) = on_record.as_mut() {
                let truth = value == TruthValue::True;
                let reason = if truth {
                    Reason::Support(ReasonRule::Aggregate(id.clone()))
                } else {
                    Reason::LackOfSupport
                };
                records.push(DerivationRecord {
                    index: **next_index,
                    subject: Subject::Aggregate(id.clone()),
                    truth,
                    reason,
                });
                **next_index += 1;
            }
        }
        tv = next;
    }
}

/// The explaining derivation from an arbitrary start: iterate the operator
/// to its fixpoint, recording every newly decided subject. Subjects decided
/// before the start are not recorded; see [`assumption_derivation`] for the
/// full record including index-0 entries.
pub fn explaining_derivation(
    start: ThreeValued,
    ground: &GroundProgram,
    a: &Interpretation,
) -> (ThreeValued, Derivation) {
    let mut records = Vec::new();
    let mut next_index = 1;
    let (tv, steps) = run_derivation(start, ground, a, Some((&mut records, &mut next_index)));
    (tv, Derivation { records, steps })
}

/// The derivation used for explanations: starts from the well-founded upper
/// bound minus the assumption set, with index-0 records for atoms already
/// false in the well-founded derivation (`initial_well_founded`), for the
/// assumed atoms (`assumption`), and for aggregates decided at the start.
pub fn assumption_derivation(
    ground: &GroundProgram,
    a: &Interpretation,
    wf: &ThreeValued,
    assumptions: &AssumptionSet,
) -> (ThreeValued, Derivation) {
    let start_upper: Interpretation = wf.upper.difference(assumptions).cloned().collect();
    let start = ThreeValued::new(Interpretation::new(), start_upper);

    let mut records = Vec::new();
    for atom in &ground.base {
        if !wf.upper.contains(atom) {
            records.push(DerivationRecord {
                index: 0,
                subject: Subject::Atom(atom.clone()),
                truth: false,
                reason: Reason::InitialWellFounded,
            });
        } else if assumptions.contains(atom) {
            records.push(DerivationRecord {
                index: 0,
                subject: Subject::Atom(atom.clone()),
                truth: false,
                reason: Reason::Assumption,
            });
        }
    }
    for (id, agg) in &ground.aggregates {
        let value = eval_aggregate(agg, &start);
        if value != TruthValue::Undefined {
            records.push(DerivationRecord {
                index: 0,
                subject: Subject::Aggregate(id.clone()),
                truth: value == TruthValue::True,
                reason: Reason::InitialWellFounded,
            });
        }
    }

    let mut next_index = 1;
    let (tv, steps) = run_derivation(start, ground, a, Some((&mut records, &mut next_index)));
    (tv, Derivation { records, steps })
}

fn fixpoint(start: ThreeValued, ground: &GroundProgram, a: &Interpretation) -> ThreeValued {
    run_derivation(start, ground, a, None).0
}

/// True iff the explaining derivation from `(∅, wf_upper \ x)` terminates
/// with the answer set: every base atom decided, agreeing with `a`.
pub fn is_assumption_set(
    x: &AssumptionSet,
    ground: &GroundProgram,
    a: &Interpretation,
    wf: &ThreeValued,
) -> bool {
    let start_upper: Interpretation = wf.upper.difference(x).cloned().collect();
    let result = fixpoint(
        ThreeValued::new(Interpretation::new(), start_upper),
        ground,
        a,
    );
    result.lower == *a && result.upper == *a
}

/// Search state shared by [`minimal_assumption_set`] and
/// [`enumerate_assumption_sets`].
struct MasSearch<'g> {
    ground: &'g GroundProgram,
    a: &'g Interpretation,
    /// Fixpoint of the derivation with no assumptions; candidate checks
    /// resume from here instead of the well-founded state.
    empty_fixpoint: ThreeValued,
    /// Candidate atoms: false in `a`, undefined in the well-founded
    /// derivation, and still undefined after the empty-assumption fixpoint
    /// (anything the derivation already falsifies never helps).
    candidates: Vec<Atom>,
}

impl<'g> MasSearch<'g> {
    fn new(ground: &'g GroundProgram, a: &'g Interpretation, wf: &ThreeValued) -> Self {
        let empty_fixpoint = fixpoint(
            ThreeValued::new(Interpretation::new(), wf.upper.clone()),
            ground,
            a,
        );
        let candidates: Vec<Atom> = wf
            .upper
            .iter()
            .filter(|atom| !a.contains(*atom) && empty_fixpoint.is_undefined(atom))
            .cloned()
            .collect();
        MasSearch {
            ground,
            a,
            empty_fixpoint,
            candidates,
        }
    }

    fn solved_by_empty(&self) -> bool {
        self.empty_fixpoint.lower == *self.a && self.empty_fixpoint.upper == *self.a
    }

    fn check(&self, x: &[&Atom]) -> bool {
        let mut upper = self.empty_fixpoint.upper.clone();
        for atom in x {
            upper.remove(*atom);
        }
        let result = fixpoint(
            ThreeValued::new(self.empty_fixpoint.lower.clone(), upper),
            self.ground,
            self.a,
        );
        result.lower == *self.a && result.upper == *self.a
    }

    /// Visits candidate sets in optimality order: first sets avoiding
    /// `alpha` by increasing size, then sets containing `alpha`; within a
    /// size, lexicographic. Stops when `visit` returns false.
    fn search(&self, alpha: &Atom, mut visit: impl FnMut(Vec<Atom>) -> bool) {
        let avoid: Vec<Atom> = self
            .candidates
            .iter()
            .filter(|c| *c != alpha)
            .cloned()
            .collect();
        let has_alpha = self.candidates.iter().any(|c| c == alpha);
        for k in 0..=avoid.len() {
            if !for_each_combination(&avoid, k, &mut |combo| {
                if self.check(combo) {
                    visit(combo.iter().map(|a| (*a).clone()).collect())
                } else {
                    true
                }
            }) {
                return;
            }
        }
        if has_alpha {
            for k in 0..=avoid.len() {
                if !for_each_combination(&avoid, k, &mut |combo| {
                    let mut with_alpha: Vec<&Atom> = combo.to_vec();
                    with_alpha.push(alpha);
                    if self.check(&with_alpha) {
                        visit(with_alpha.iter().map(|a| (*a).clone()).collect())
                    } else {
                        true
                    }
                }) {
                    return;
                }
            }
        }
    }
}

/// Calls `f` on every k-combination of `items`, in lexicographic order of
/// positions. Returns false as soon as `f` does.
fn for_each_combination<'a, T, F>(items: &'a [T], k: usize, f: &mut F) -> bool
where
    F: FnMut(&[&'a T]) -> bool,
{
    fn go<'a, T, F>(items: &'a [T], k: usize, start: usize, acc: &mut Vec<&'a T>, f: &mut F) -> bool
    where
        F: FnMut(&[&'a T]) -> bool,
    {
        if acc.len() == k {
            return f(acc);
        }
        let remaining = k - acc.len();
        let mut i = start;
        while i + remaining <= items.len() {
            acc.push(&items[i]);
            if !go(items, k, i + 1, acc, f) {
                return false;
            }
            acc.pop();
            i += 1;
        }
        true
    }
    if k > items.len() {
        return true;
    }
    go(items, k, 0, &mut Vec::new(), f)
}

/// A cardinality-minimal assumption set for `(ground, a, alpha)`, preferring
/// sets that do not assume `alpha` itself; ties are broken by the
/// lexicographically least atom set.
pub fn minimal_assumption_set(
    ground: &GroundProgram,
    a: &Interpretation,
    alpha: &Atom,
    wf: &ThreeValued,
) -> AssumptionSet {
    let search = MasSearch::new(ground, a, wf);
    if search.solved_by_empty() {
        return AssumptionSet::new();
    }
    let mut found: Option<AssumptionSet> = None;
    search.search(alpha, |x| {
        found = Some(x.into_iter().collect());
        false
    });
    // The full candidate set is always an assumption set, so the search
    // cannot come back empty-handed.
    found.expect("assumption set search exhausted; the candidate set itself must qualify")
}

/// Up to `limit` distinct assumption sets of optimal cost, in deterministic
/// (lexicographic) order.
pub fn enumerate_assumption_sets(
    ground: &GroundProgram,
    a: &Interpretation,
    alpha: &Atom,
    wf: &ThreeValued,
    limit: usize,
) -> Vec<AssumptionSet> {
    let search = MasSearch::new(ground, a, wf);
    if search.solved_by_empty() {
        return vec![AssumptionSet::new()];
    }
    let mut best_cost: Option<(bool, usize)> = None;
    let mut found: Vec<AssumptionSet> = Vec::new();
    search.search(alpha, |x| {
        let cost = (x.contains(alpha), x.len());
        match best_cost {
            None => {
                best_cost = Some(cost);
                found.push(x.into_iter().collect());
                found.len() < limit
            }
            Some(best) if cost == best => {
                found.push(x.into_iter().collect());
                found.len() < limit
            }
            // The search order is the cost order, so a different cost means
            // all optima were seen.
            Some(_) => false,
        }
    });
    found
}
