//! Two-valued and three-valued semantics over ground programs: satisfaction,
//! reduct, answer-set checking, the evaluation function, the inference rules
//! used by explanations, unfounded sets, and a brute-force oracle.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::analysis::strongly_connected_components;
use crate::ast::Atom;
use crate::ground::{expand, GroundAggregate, GroundHead, GroundProgram, GroundRule, RuleId};

/// A two-valued interpretation: the set of true ground atoms.
pub type Interpretation = BTreeSet<Atom>;

/// A three-valued interpretation `(L, U)`: atoms in `L` are true, atoms in
/// `U \ L` are undefined, everything else is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeValued {
    pub lower: Interpretation,
    pub upper: Interpretation,
}

impl ThreeValued {
    pub fn new(lower: Interpretation, upper: Interpretation) -> Self {
        debug_assert!(lower.is_subset(&upper));
        ThreeValued { lower, upper }
    }

    pub fn is_undefined(&self, atom: &Atom) -> bool {
        self.upper.contains(atom) && !self.lower.contains(atom)
    }

    /// The refinement order: everything true here stays true there, and
    /// everything false here stays false there.
    pub fn refines_to(&self, finer: &ThreeValued) -> bool {
        self.lower.is_subset(&finer.lower) && finer.upper.is_subset(&self.upper)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruthValue {
    True,
    False,
    Undefined,
}

/// Sum of the distinct `(weight, tuple)` pairs whose condition instance is in
/// `interp`. Duplicate tuples count once: the aggregate set is a set.
fn aggregate_sum(agg: &GroundAggregate, interp: &Interpretation) -> i64 {
    let mut seen: BTreeSet<(i64, &[crate::ast::Term])> = BTreeSet::new();
    for inst in &agg.instances {
        if interp.contains(&inst.atom) {
            seen.insert((inst.weight, &inst.tuple));
        }
    }
    seen.iter().map(|(w, _)| w).sum()
}

pub fn satisfies_aggregate(interp: &Interpretation, agg: &GroundAggregate) -> bool {
    agg.op.compare_ints(aggregate_sum(agg, interp), agg.guard)
}

pub fn satisfies_choice(interp: &Interpretation, lower: i64, upper: i64, atoms: &[Atom]) -> bool {
    let n = atoms.iter().filter(|a| interp.contains(*a)).count() as i64;
    lower <= n && n <= upper
}

pub fn satisfies_head(interp: &Interpretation, head: &GroundHead) -> bool {
    match head {
        GroundHead::Atom(a) => interp.contains(a),
        GroundHead::Choice { lower, upper, atoms } => {
            satisfies_choice(interp, *lower, *upper, atoms)
        }
    }
}

pub fn satisfies_body(interp: &Interpretation, rule: &GroundRule, ground: &GroundProgram) -> bool {
    rule.pos_body.iter().all(|a| interp.contains(a))
        && rule.neg_body.iter().all(|a| !interp.contains(a))
        && rule
            .agg_body
            .iter()
            .all(|id| satisfies_aggregate(interp, ground.aggregate(id)))
}

pub fn satisfies_rule(interp: &Interpretation, rule: &GroundRule, ground: &GroundProgram) -> bool {
    !satisfies_body(interp, rule, ground) || satisfies_head(interp, &rule.head)
}

pub fn satisfies_program(interp: &Interpretation, ground: &GroundProgram) -> bool {
    ground.rules.iter().all(|r| satisfies_rule(interp, r, ground))
}

/// The reduct w.r.t. `interp`: the expanded rules of the instantiation whose
/// body is true in `interp`.
pub fn reduct(ground: &GroundProgram, interp: &Interpretation) -> Vec<GroundRule> {
    ground
        .rules
        .iter()
        .filter(|r| satisfies_body(interp, r, ground))
        .flat_map(|r| expand(r, interp))
        .collect()
}

/// Topological level of every predicate, following positive and aggregate
/// dependencies of the ground rules. Lower levels come first.
fn predicate_levels(ground: &GroundProgram) -> BTreeMap<String, usize> {
    let mut vertices: BTreeSet<String> = BTreeSet::new();
    let mut edges: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for rule in &ground.rules {
        for a in rule.head.atoms() {
            vertices.insert(a.predicate.clone());
        }
        for a in &rule.pos_body {
            vertices.insert(a.predicate.clone());
        }
        for a in &rule.neg_body {
            vertices.insert(a.predicate.clone());
        }
        for id in &rule.agg_body {
            vertices.insert(ground.aggregate(id).condition.predicate.clone());
        }
        for h in rule.head.atoms() {
            let entry = edges.entry(h.predicate.clone()).or_default();
            for a in &rule.pos_body {
                entry.insert(a.predicate.clone());
            }
            for id in &rule.agg_body {
                entry.insert(ground.aggregate(id).condition.predicate.clone());
            }
        }
    }
    for a in &ground.base {
        vertices.insert(a.predicate.clone());
    }
    let sccs = strongly_connected_components(&vertices, |v| {
        edges
            .get(v)
            .map(|s| s.iter().cloned().collect())
            .unwrap_or_default()
    });
    // Tarjan emits components callees-first, which is exactly evaluation
    // order.
    let mut levels = BTreeMap::new();
    for (i, scc) in sccs.iter().enumerate() {
        for v in scc {
            levels.insert(v.clone(), i);
        }
    }
    levels
}

/// Least model of a reduct, computed stratum by stratum. Negative body
/// literals of reduct rules were true in the candidate answer set and remain
/// true in every subset, so they are not re-checked; aggregates are evaluated
/// against the model built so far, which is exact because aggregates are
/// stratified.
fn reduct_least_model(reduct_rules: &[GroundRule], ground: &GroundProgram) -> Interpretation {
    let levels = predicate_levels(ground);
    let max_level = levels.values().copied().max().unwrap_or(0);
    let mut by_level: BTreeMap<usize, Vec<&GroundRule>> = BTreeMap::new();
    for rule in reduct_rules {
        let head = match &rule.head {
            GroundHead::Atom(a) => a,
            GroundHead::Choice { .. } => continue,
        };
        let level = levels.get(&head.predicate).copied().unwrap_or(max_level);
        by_level.entry(level).or_default().push(rule);
    }
    let mut model = Interpretation::new();
    for (_, rules) in by_level {
        loop {
            let mut changed = false;
            for rule in &rules {
                let head = match &rule.head {
                    GroundHead::Atom(a) => a,
                    GroundHead::Choice { .. } => unreachable!(),
                };
                if model.contains(head) {
                    continue;
                }
                let fires = rule.pos_body.iter().all(|a| model.contains(a))
                    && rule
                        .agg_body
                        .iter()
                        .all(|id| satisfies_aggregate(&model, ground.aggregate(id)));
                if fires {
                    model.insert(head.clone());
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }
    model
}

/// Answer-set check: `a` models the program, and no proper subset models the
/// reduct. Minimality is decided by the least-model computation of the
/// reduct, which is exact for stratified aggregates.
pub fn is_answer_set(ground: &GroundProgram, a: &Interpretation) -> bool {
    if !satisfies_program(a, ground) {
        return false;
    }
    let reduct_rules = reduct(ground, a);
    reduct_least_model(&reduct_rules, ground) == *a
}

/// The three-valued evaluation function on literals.
pub fn eval_literal(atom: &Atom, negated: bool, tv: &ThreeValued) -> TruthValue {
    if tv.is_undefined(atom) {
        return TruthValue::Undefined;
    }
    let holds = tv.lower.contains(atom) != negated;
    if holds {
        TruthValue::True
    } else {
        TruthValue::False
    }
}

/// The three-valued evaluation function on aggregates: undefined while any
/// condition instance is undefined, even when the bound is already decided.
pub fn eval_aggregate(agg: &GroundAggregate, tv: &ThreeValued) -> TruthValue {
    if agg.instances.iter().any(|i| tv.is_undefined(&i.atom)) {
        return TruthValue::Undefined;
    }
    if satisfies_aggregate(&tv.lower, agg) {
        TruthValue::True
    } else {
        TruthValue::False
    }
}

pub fn eval_choice(lower: i64, upper: i64, atoms: &[Atom], tv: &ThreeValued) -> TruthValue {
    if atoms.iter().any(|a| tv.is_undefined(a)) {
        return TruthValue::Undefined;
    }
    if satisfies_choice(&tv.lower, lower, upper, atoms) {
        TruthValue::True
    } else {
        TruthValue::False
    }
}

pub fn eval_head(head: &GroundHead, tv: &ThreeValued) -> TruthValue {
    match head {
        GroundHead::Atom(a) => eval_literal(a, false, tv),
        GroundHead::Choice { lower, upper, atoms } => eval_choice(*lower, *upper, atoms, tv),
    }
}

/// Rule bodies: false if any element is false, true if all are true,
/// undefined otherwise.
pub fn eval_body(rule: &GroundRule, ground: &GroundProgram, tv: &ThreeValued) -> TruthValue {
    eval_body_without(rule, ground, tv, None)
}

/// Body evaluation skipping one positive atom, as needed by the
/// constraint-like inference on `B(r) \ {alpha}`.
pub fn eval_body_without(
    rule: &GroundRule,
    ground: &GroundProgram,
    tv: &ThreeValued,
    skip_pos: Option<&Atom>,
) -> TruthValue {
    let mut saw_undefined = false;
    let fold = |v: TruthValue, saw: &mut bool| -> bool {
        match v {
            TruthValue::False => true,
            TruthValue::Undefined => {
                *saw = true;
                false
            }
            TruthValue::True => false,
        }
    };
    for a in &rule.pos_body {
        if skip_pos == Some(a) {
            continue;
        }
        if fold(eval_literal(a, false, tv), &mut saw_undefined) {
            return TruthValue::False;
        }
    }
    for a in &rule.neg_body {
        if fold(eval_literal(a, true, tv), &mut saw_undefined) {
            return TruthValue::False;
        }
    }
    for id in &rule.agg_body {
        if fold(eval_aggregate(ground.aggregate(id), tv), &mut saw_undefined) {
            return TruthValue::False;
        }
    }
    if saw_undefined {
        TruthValue::Undefined
    } else {
        TruthValue::True
    }
}

/// Atoms of `a` that are inferred true by support: undefined atoms occurring
/// in the head of a rule with a true body. All supporting rules are
/// returned; selection happens downstream.
pub fn infer_true_by_support(
    tv: &ThreeValued,
    ground: &GroundProgram,
    a: &Interpretation,
) -> Vec<(Atom, RuleId)> {
    let mut out = Vec::new();
    for rule in &ground.rules {
        if eval_body(rule, ground, tv) != TruthValue::True {
            continue;
        }
        for atom in rule.head.atoms() {
            if a.contains(atom) && eval_literal(atom, false, tv) == TruthValue::Undefined {
                out.push((atom.clone(), rule.id.clone()));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Why an undefined atom is inferred false.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Falsity {
    LackOfSupport,
    RequiredToFalsifyBody(RuleId),
    ChoiceRule(RuleId),
}

/// All pairs (atom, reason) of undefined atoms inferred false by lack of
/// support, by a constraint-like rule, or by a choice rule, at `tv`.
/// Aggregates participate only through body evaluation and are never
/// returned.
pub fn infer_false(tv: &ThreeValued, ground: &GroundProgram) -> Vec<(Atom, Falsity)> {
    let mut out = Vec::new();

    let mut head_rules: BTreeMap<&Atom, Vec<&GroundRule>> = BTreeMap::new();
    for rule in &ground.rules {
        for atom in rule.head.atoms() {
            head_rules.entry(atom).or_default().push(rule);
        }
    }

    // Lack of support: every rule with the atom in its head has a false body.
    for atom in &ground.base {
        if !tv.is_undefined(atom) {
            continue;
        }
        let all_false = head_rules
            .get(atom)
            .map(|rules| {
                rules
                    .iter()
                    .all(|r| eval_body(r, ground, tv) == TruthValue::False)
            })
            .unwrap_or(true);
        if all_false {
            out.push((atom.clone(), Falsity::LackOfSupport));
        }
    }

    for rule in &ground.rules {
        // Constraint-like: the head is false and the rest of the body true,
        // so an undefined positive body atom must be false.
        if eval_head(&rule.head, tv) == TruthValue::False {
            for atom in &rule.pos_body {
                if tv.is_undefined(atom)
                    && eval_body_without(rule, ground, tv, Some(atom)) == TruthValue::True
                {
                    out.push((atom.clone(), Falsity::RequiredToFalsifyBody(rule.id.clone())));
                }
            }
        }
        // Choice rule: the upper bound is already reached by true atoms and
        // the body is true, so the remaining head atoms must be false.
        if let GroundHead::Choice { upper, atoms, .. } = &rule.head {
            let true_heads = atoms.iter().filter(|a| tv.lower.contains(*a)).count() as i64;
            if true_heads >= *upper && eval_body(rule, ground, tv) == TruthValue::True {
                for atom in atoms {
                    if tv.is_undefined(atom) {
                        out.push((atom.clone(), Falsity::ChoiceRule(rule.id.clone())));
                    }
                }
            }
        }
    }

    out.sort();
    out.dedup();
    out
}

/// The greatest unfounded set among the undefined atoms: undefined atoms
/// minus the least fixpoint of external support (a rule whose body is not
/// false and whose positive body avoids the remaining candidates).
pub fn find_unfounded_set(tv: &ThreeValued, ground: &GroundProgram) -> Interpretation {
    let mut candidates: Interpretation = tv
        .upper
        .iter()
        .filter(|a| !tv.lower.contains(*a))
        .cloned()
        .collect();
    loop {
        let supported: Vec<Atom> = candidates
            .iter()
            .filter(|atom| {
                ground.rules.iter().any(|rule| {
                    rule.head.atoms().contains(atom)
                        && eval_body(rule, ground, tv) != TruthValue::False
                        && rule.pos_body.is_disjoint(&candidates)
                })
            })
            .cloned()
            .collect();
        if supported.is_empty() {
            return candidates;
        }
        for atom in supported {
            candidates.remove(&atom);
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle enumeration needs |base| <= {cap}, but the base has {size} atoms")]
    BaseTooLarge { cap: usize, size: usize },
}

/// Brute-force test oracle: all subsets of the base that are answer sets, in
/// lexicographic order.
pub fn oracle_answer_sets(
    ground: &GroundProgram,
    cap: usize,
) -> Result<Vec<Interpretation>, OracleError> {
    let atoms: Vec<Atom> = ground.base.iter().cloned().collect();
    if atoms.len() > cap {
        return Err(OracleError::BaseTooLarge {
            cap,
            size: atoms.len(),
        });
    }
    let mut result = Vec::new();
    for mask in 0u64..(1u64 << atoms.len()) {
        let subset: Interpretation = atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| a.clone())
            .collect();
        if is_answer_set(ground, &subset) {
            result.push(subset);
        }
    }
    result.sort();
    Ok(result)
}
